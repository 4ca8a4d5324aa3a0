//! Report bodies for each subcommand, in JSON and as a plain table.

use serde_json::{json, Value};

use finegrad::enumerate::{check_range, enumerate_fine_gradings, enumerate_series_a, spec_from_json, spec_to_json};
use finegrad::extension::type_ii_extension;
use finegrad::grading::{GradedMatrixAlgebra, GradingSpec, Series, UniversalGroup};
use finegrad::involution::{equivalent_involution, weakly_equivalent};
use finegrad::presentation::GroupStructure;
use finegrad::symplectic::AffineSymplectic;
use finegrad::weyl::{compare_weyl, weyl_closed_form};
use finegrad::{Error, Result, TorsionElement};

use crate::spec_args::SpecArgs;

pub struct Output {
    pub body: Value,
    pub table: String,
    /// Set when an exact cross-check disagreed; the report is still printed.
    pub mismatch: Option<String>,
}

fn element_text(x: &TorsionElement) -> String {
    x.to_string().replace(' ', "")
}

/// Short human-readable name of a spec.
fn describe(spec: &GradingSpec) -> String {
    match spec.series {
        Series::AI | Series::RawM => format!("{}(T={:?}, k={})", spec.series, spec.group.orders(), spec.k),
        _ => format!(
            "{}(r={}, q={}, s={}, tau=({}))",
            spec.series,
            spec.r(),
            spec.q,
            spec.s,
            spec.tau.iter().map(element_text).collect::<Vec<_>>().join(",")
        ),
    }
}

fn group_json(g: &GroupStructure) -> Value {
    json!({
        "Z2": g.rank_of(2),
        "Z4": g.rank_of(4),
        "Z": g.free,
        "invariant_factors": g.invariant_factors(),
        "text": g.to_string(),
    })
}

fn witness_json(spec: &GradingSpec, w: &AffineSymplectic) -> Value {
    let t = &spec.group;
    json!({
        "shift": element_text(&w.shift),
        "map": (0..t.dim()).map(|p| element_text(&w.map.apply(t, &t.basis(p)))).collect::<Vec<_>>(),
    })
}

pub fn enumerate(series: &str, n: usize, bound: u64) -> Result<Output> {
    let (name, specs) = if series.eq_ignore_ascii_case("A") {
        ("A".to_string(), enumerate_series_a(n, bound)?)
    } else {
        let s = Series::parse(series)?;
        if !matches!(s, Series::AI | Series::AII | Series::B | Series::C | Series::D) {
            return Err(Error::Domain(format!("series {s} is not a Lie series")));
        }
        (s.name().to_string(), enumerate_fine_gradings(s, n, bound)?)
    };
    let mut table = format!("series {name}, n = {n}: {} classes\n", specs.len());
    for spec in &specs {
        table.push_str(&format!("  {}\n", describe(spec)));
    }
    Ok(Output {
        body: json!({
            "series": name,
            "n": n,
            "count": specs.len(),
            "specs": specs.iter().map(spec_to_json).collect::<Vec<_>>(),
        }),
        table: table.trim_end().to_string(),
        mismatch: None,
    })
}

pub fn weyl(args: &SpecArgs, verify: bool, bound: u64) -> Result<Output> {
    let spec = args.to_spec()?;
    check_range(spec.series, spec.n())?;
    let (closed, verification, mismatch) = if verify {
        let cmp = compare_weyl(&spec, bound)?;
        let bf = &cmp.brute_force;
        let ok = cmp.agrees();
        let v = json!({
            "brute_force_order": bf.order.to_string(),
            "quotient_order": bf.quotient_order.to_string(),
            "kernel_rank": bf.kernel_rank,
            "generators": bf.generator_count,
            "points": bf.group.points.len(),
            "faithfulness_checks": bf.faithfulness_checks,
            "verdict": if ok { "equal" } else { "unequal" },
        });
        let mismatch = (!ok).then(|| format!("closed form {} vs brute force {}", cmp.closed_form.order, bf.order));
        (cmp.closed_form, v, mismatch)
    } else {
        (weyl_closed_form(&spec, bound)?, Value::Null, None)
    };
    let mut table = format!("{}\n  term:  {}\n  order: {}", describe(&spec), closed, closed.order);
    if let Some(n) = closed.find("N") {
        table.push_str(&format!("\n  N:     {} (order {})", n, n.order));
    }
    if verify {
        table.push_str(&format!(
            "\n  brute force: {} (kernel rank {}), {}",
            verification["brute_force_order"].as_str().unwrap_or_default(),
            verification["kernel_rank"],
            verification["verdict"].as_str().unwrap_or_default()
        ));
    }
    Ok(Output {
        body: json!({
            "spec": spec_to_json(&spec),
            "weyl": closed,
            "term": closed.to_string(),
            "order": closed.order.to_string(),
            "verification": verification,
        }),
        table,
        mismatch,
    })
}

pub fn equiv(texts: &[String], weak: bool, bound: u64) -> Result<Output> {
    if texts.len() != 2 {
        return Err(Error::Parse(format!("equiv takes exactly two --spec values, got {}", texts.len())));
    }
    let specs = texts
        .iter()
        .map(|t| {
            let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse(format!("--spec is not JSON: {e}")))?;
            spec_from_json(&v)
        })
        .collect::<Result<Vec<GradingSpec>>>()?;
    let (a, b) = (&specs[0], &specs[1]);
    let (relation, witness) = if a.series != b.series {
        ("series", None)
    } else if !a.series.has_phi() {
        ("grading", (a == b).then(|| AffineSymplectic::identity(&a.group)))
    } else if weak || a.series == Series::AII {
        ("weak", weakly_equivalent(a, b, bound)?)
    } else {
        ("involution", equivalent_involution(a, b, bound)?)
    };
    // AI specs are canonical, so equality decides equivalence.
    let equivalent = match relation {
        "series" => false,
        "grading" => a == b,
        _ => witness.is_some(),
    };
    let witness_value = match (&witness, a.series.has_phi()) {
        (Some(w), true) => witness_json(a, w),
        _ => Value::Null,
    };
    let mut table = format!("{}\n{}\n  {relation} equivalence: {equivalent}", describe(a), describe(b));
    if !witness_value.is_null() {
        table.push_str(&format!(
            "\n  witness: shift {}, basis images {}",
            witness_value["shift"].as_str().unwrap_or_default(),
            witness_value["map"]
        ));
    }
    Ok(Output {
        body: json!({
            "specs": specs.iter().map(spec_to_json).collect::<Vec<_>>(),
            "relation": relation,
            "equivalent": equivalent,
            "witness": witness_value,
        }),
        table,
        mismatch: None,
    })
}

pub fn universal(args: &SpecArgs) -> Result<Output> {
    let spec = args.to_spec()?;
    let u = UniversalGroup::new(&spec)?;
    let agrees = u.agrees();
    let extension = if spec.series == Series::AII {
        let ext = type_ii_extension(&spec, false)?;
        json!({
            "split": ext.split,
            "group": group_json(&ext.extended),
            "closed_form": group_json(&ext.closed_form),
        })
    } else {
        Value::Null
    };
    let mut table = format!(
        "{}\n  universal group: {}\n  closed form:     {}",
        describe(&spec),
        u.structure,
        u.closed_form
    );
    if !extension.is_null() {
        table.push_str(&format!(
            "\n  extended group:  {} ({})",
            extension["group"]["text"].as_str().unwrap_or_default(),
            if extension["split"] == json!(true) { "split" } else { "non-split" }
        ));
    }
    Ok(Output {
        body: json!({
            "spec": spec_to_json(&spec),
            "universal": group_json(&u.structure),
            "closed_form": group_json(&u.closed_form),
            "agrees": agrees,
            "extension": extension,
        }),
        table,
        mismatch: (!agrees).then(|| format!("reduction {} vs closed form {}", u.structure, u.closed_form)),
    })
}

pub fn support(args: &SpecArgs) -> Result<Output> {
    let spec = args.to_spec()?;
    let alg = GradedMatrixAlgebra::new(&spec)?;
    let rows: Vec<Value> = alg
        .support()
        .iter()
        .map(|z| json!({"i": z.i + 1, "j": z.j + 1, "t": element_text(&z.t), "dim": alg.dim(z)}))
        .collect();
    let mut table = format!("{}: {} components\n  {:>3} {:>3} {:>8} {:>4}", describe(&spec), rows.len(), "i", "j", "t", "dim");
    for r in &rows {
        table.push_str(&format!(
            "\n  {:>3} {:>3} {:>8} {:>4}",
            r["i"].as_u64().unwrap_or_default(),
            r["j"].as_u64().unwrap_or_default(),
            r["t"].as_str().unwrap_or_default(),
            r["dim"].as_u64().unwrap_or_default()
        ));
    }
    Ok(Output {
        body: json!({
            "spec": spec_to_json(&spec),
            "count": rows.len(),
            "support": rows,
        }),
        table,
        mismatch: None,
    })
}
