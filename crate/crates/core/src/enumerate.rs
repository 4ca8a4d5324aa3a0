//! Enumeration of fine gradings up to equivalence, canonical
//! representatives, and the canonical JSON form of a grading datum.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grading::{GradingSpec, Series};
use crate::symplectic::{canonical_sigma, ActionKind, MultisetSigma};
use crate::torsion::{TorsionElement, TorsionGroup, MAX_PAIRS};

/// Rejects `n` outside the range where the classification applies.
pub fn check_range(series: Series, n: usize) -> Result<()> {
    let bad = |msg: &str| Err(Error::Domain(format!("series {series}, n = {n}: {msg}")));
    match series {
        Series::AI | Series::AII if n < 2 => bad("sl_n needs n >= 2"),
        Series::AII if n == 2 => bad("Type II gradings need n >= 3"),
        Series::B if n < 5 || n.is_multiple_of(2) => bad("series B needs odd n >= 5"),
        Series::C if n < 4 || n % 2 == 1 => bad("series C needs even n >= 4"),
        Series::D if n == 8 => bad("D4 (n = 8) is excluded"),
        Series::D if n < 6 || n % 2 == 1 => bad("series D needs even n >= 6"),
        Series::RawM | Series::RawMPhi => bad("raw constructions are not classified"),
        _ => Ok(()),
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All `T ≅ A × A` with `|A| = d`, as sorted prime-power pair orders.
pub fn symmetric_groups_of_sqrt_order(d: u64) -> Vec<Vec<u8>> {
    let mut acc: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, e) in factorize(d) {
        let mut next = Vec::new();
        for prefix in &acc {
            for part in partitions(e, e) {
                let mut v = prefix.clone();
                v.extend(part.iter().map(|&x| p.pow(x)));
                next.push(v);
            }
        }
        acc = next;
    }
    let mut out: Vec<Vec<u8>> = acc
        .into_iter()
        .filter(|v| v.len() <= MAX_PAIRS && v.iter().all(|&x| x <= 36))
        .map(|mut v| {
            v.sort_unstable();
            v.into_iter().map(|x| x as u8).collect()
        })
        .collect();
    out.sort();
    out
}

/// Multisets of size `q` drawn from `pool`, as sorted vectors.
fn multisets(pool: &[TorsionElement], q: usize) -> Vec<Vec<TorsionElement>> {
    fn rec(pool: &[TorsionElement], start: usize, q: usize, cur: &mut Vec<TorsionElement>, out: &mut Vec<Vec<TorsionElement>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            rec(pool, i, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(pool, 0, q, &mut Vec::new(), &mut out);
    out
}

fn action_of(series: Series) -> ActionKind {
    if series == Series::AII {
        ActionKind::Natural
    } else {
        ActionKind::Twisted
    }
}

/// The spec with `τ` replaced by the least multiset in its orbit.
pub fn canonical_spec(spec: &GradingSpec, bound: u64) -> Result<GradingSpec> {
    spec.validate()?;
    if !matches!(spec.series, Series::AII | Series::C | Series::D) {
        return Ok(spec.clone());
    }
    let (rep, _) = canonical_sigma(&spec.group, &MultisetSigma::new(spec.tau.clone()), action_of(spec.series), bound)?;
    let mut out = spec.clone();
    out.tau = rep.entries().to_vec();
    Ok(out)
}

fn phi_spec(series: Series, t: &TorsionGroup, q: usize, s: usize, tau: Vec<TorsionElement>) -> Result<GradingSpec> {
    match series {
        Series::AII => GradingSpec::aii(t.clone(), q, s, tau),
        Series::B => GradingSpec::b(q, s),
        Series::C => GradingSpec::c(t.clone(), q, s, tau),
        Series::D => GradingSpec::d(t.clone(), q, s, tau),
        _ => unreachable!(),
    }
}

/// One canonical spec per equivalence class of fine gradings on the simple
/// Lie algebra of the given series and matrix size, ordered by
/// `(r, q, s, Σ)` (by `(T, k)` for AI).
pub fn enumerate_fine_gradings(series: Series, n: usize, bound: u64) -> Result<Vec<GradingSpec>> {
    check_range(series, n)?;
    let mut out = Vec::new();
    if series == Series::AI {
        for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
            for orders in symmetric_groups_of_sqrt_order(d as u64) {
                let t = TorsionGroup::new(orders)?;
                if let Ok(spec) = GradingSpec::ai(t, n / d) {
                    out.push(spec);
                }
            }
        }
        return Ok(out);
    }
    for r in 0..=MAX_PAIRS {
        let l = 1usize << r;
        if series == Series::B && r > 0 {
            break;
        }
        if !n.is_multiple_of(l) {
            continue;
        }
        let t = TorsionGroup::elementary(r);
        let pool: Vec<TorsionElement> = match series {
            Series::C => t.sign_class(-1)?,
            Series::D | Series::B => t.sign_class(1)?,
            _ => t.elements(),
        };
        let m = n / l;
        for s in 0..=m / 2 {
            let q = m - 2 * s;
            if series == Series::B && q.is_multiple_of(2) {
                continue;
            }
            let reps: Result<BTreeSet<Vec<TorsionElement>>> = multisets(&pool, q)
                .par_iter()
                .map(|tau| {
                    let (rep, _) = canonical_sigma(&t, &MultisetSigma::new(tau.clone()), action_of(series), bound)?;
                    Ok(rep.entries().to_vec())
                })
                .collect();
            for tau in reps? {
                match phi_spec(series, &t, q, s, tau) {
                    Ok(spec) => out.push(spec),
                    Err(Error::InvalidSpec(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    out.sort_by(|a, b| (a.r(), a.q, a.s, &a.tau).cmp(&(b.r(), b.q, b.s, &b.tau)));
    Ok(out)
}

/// Both types of series A.
pub fn enumerate_series_a(n: usize, bound: u64) -> Result<Vec<GradingSpec>> {
    let mut out = enumerate_fine_gradings(Series::AI, n, bound)?;
    if n >= 3 {
        out.extend(enumerate_fine_gradings(Series::AII, n, bound)?);
    }
    Ok(out)
}

fn element_text(x: &TorsionElement) -> String {
    x.to_string().replace(' ', "")
}

/// The canonical JSON form of a spec.
pub fn spec_to_json(spec: &GradingSpec) -> Value {
    match spec.series {
        Series::AI | Series::RawM => json!({
            "series": spec.series.name(),
            "T": spec.group.orders(),
            "k": spec.k,
        }),
        _ => {
            let delta = match spec.series {
                Series::C => json!(-1),
                Series::B | Series::D => json!(1),
                _ => Value::Null,
            };
            json!({
                "series": spec.series.name(),
                "r": spec.r(),
                "q": spec.q,
                "s": spec.s,
                "tau": spec.tau.iter().map(element_text).collect::<Vec<_>>(),
                "delta": delta,
            })
        }
    }
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| Error::Parse(format!("missing field '{name}'")))
}

fn usize_field(v: &Value, name: &str) -> Result<usize> {
    field(v, name)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("field '{name}' must be a non-negative integer")))
}

/// Parses the canonical JSON form.
pub fn spec_from_json(v: &Value) -> Result<GradingSpec> {
    let series = Series::parse(field(v, "series")?.as_str().ok_or_else(|| Error::Parse("series must be a string".into()))?)?;
    if matches!(series, Series::AI | Series::RawM) {
        let orders = field(v, "T")?
            .as_array()
            .ok_or_else(|| Error::Parse("T must be a list of pair orders".into()))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .filter(|&l| l <= u8::MAX as u64)
                    .map(|l| l as u8)
                    .ok_or_else(|| Error::Parse("bad pair order".into()))
            })
            .collect::<Result<Vec<u8>>>()?;
        let t = TorsionGroup::new(orders)?;
        let k = usize_field(v, "k")?;
        return if series == Series::AI {
            GradingSpec::ai(t, k)
        } else {
            GradingSpec::raw_m(t, k)
        };
    }
    let r = usize_field(v, "r")?;
    if r > MAX_PAIRS {
        return Err(Error::Domain(format!("r = {r} exceeds the supported {MAX_PAIRS}")));
    }
    let t = TorsionGroup::elementary(r);
    let q = usize_field(v, "q")?;
    let s = usize_field(v, "s")?;
    let tau = field(v, "tau")?
        .as_array()
        .ok_or_else(|| Error::Parse("tau must be a list".into()))?
        .iter()
        .map(|x| {
            let text = x.as_str().ok_or_else(|| Error::Parse("tau entries must be strings".into()))?;
            TorsionElement::parse(text, &t)
        })
        .collect::<Result<Vec<_>>>()?;
    let spec = match series {
        Series::B => {
            if r != 0 || tau.iter().any(|x| !x.is_identity()) {
                return Err(Error::InvalidSpec("series B needs r = 0".into()));
            }
            GradingSpec::b(q, s)?
        }
        Series::RawMPhi => return Err(Error::Domain("RAW_MPHI has no canonical JSON form".into())),
        _ => phi_spec(series, &t, q, s, tau)?,
    };
    if let Some(d) = v.get("delta").and_then(Value::as_i64) {
        let expected = match series {
            Series::C => Some(-1),
            Series::B | Series::D => Some(1),
            _ => None,
        };
        if expected.is_some_and(|e| e != d) {
            return Err(Error::InvalidSpec(format!("delta = {d} does not match series {series}")));
        }
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::DEFAULT_BOUND;

    #[test]
    fn class_counts() {
        assert_eq!(enumerate_fine_gradings(Series::B, 5, DEFAULT_BOUND).unwrap().len(), 3);
        assert_eq!(enumerate_fine_gradings(Series::C, 4, DEFAULT_BOUND).unwrap().len(), 3);
        assert_eq!(enumerate_series_a(3, DEFAULT_BOUND).unwrap().len(), 4);
    }

    #[test]
    fn c_four_classes() {
        let specs = enumerate_fine_gradings(Series::C, 4, DEFAULT_BOUND).unwrap();
        let shape: Vec<(usize, usize, usize)> = specs.iter().map(|s| (s.r(), s.q, s.s)).collect();
        assert_eq!(shape, vec![(0, 0, 2), (1, 0, 1), (2, 1, 0)]);
    }

    #[test]
    fn excluded_ranges() {
        for (series, n) in [(Series::D, 8), (Series::D, 4), (Series::B, 4), (Series::C, 3), (Series::AII, 2)] {
            assert!(matches!(enumerate_fine_gradings(series, n, DEFAULT_BOUND), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn symmetric_groups() {
        assert_eq!(symmetric_groups_of_sqrt_order(4), vec![vec![2, 2], vec![4]]);
        assert_eq!(symmetric_groups_of_sqrt_order(6), vec![vec![2, 3]]);
        assert_eq!(symmetric_groups_of_sqrt_order(1), vec![Vec::<u8>::new()]);
    }

    #[test]
    fn json_round_trip() {
        for series in [Series::AI, Series::AII, Series::B, Series::C, Series::D] {
            let n = match series {
                Series::B => 7,
                Series::D => 6,
                _ => 4,
            };
            for spec in enumerate_fine_gradings(series, n, DEFAULT_BOUND).unwrap() {
                let v = spec_to_json(&spec);
                assert_eq!(spec_from_json(&v).unwrap(), spec, "{v}");
            }
        }
    }

    #[test]
    fn canonical_is_idempotent() {
        let t = TorsionGroup::elementary(1);
        let spec = GradingSpec::d(t.clone(), 2, 0, vec![t.a(0), t.b(0)]).unwrap();
        let c = canonical_spec(&spec, DEFAULT_BOUND).unwrap();
        assert_eq!(canonical_spec(&c, DEFAULT_BOUND).unwrap(), c);
    }
}
