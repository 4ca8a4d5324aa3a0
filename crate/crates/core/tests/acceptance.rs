//! Acceptance suite: one pass/fail line per criterion, with wall-clock
//! budgets. Exits nonzero if any criterion fails.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use finegrad::division::GradedDivisionAlgebra;
use finegrad::enumerate::{enumerate_fine_gradings, enumerate_series_a};
use finegrad::error::DEFAULT_BOUND;
use finegrad::extension::{split_criterion, type_ii_extension};
use finegrad::grading::{GradedMatrixAlgebra, GradingSpec, Series, UniversalGroup};
use finegrad::involution::{build_phi, involution_criterion, involution_oracle};
use finegrad::presentation::GroupStructure;
use finegrad::symplectic::{act, sp2_order_closed_form, t_alpha, ActionKind, AffineSymplectic, AutGroup, SymplecticMap};
use finegrad::weyl::{compare_weyl, realize_generators, verify_generator};
use finegrad::{Cyclotomic, TorsionElement, TorsionGroup};

type Outcome = std::result::Result<String, String>;

fn fail(msg: impl Into<String>) -> Outcome {
    Err(msg.into())
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

macro_rules! tryf {
    ($e:expr) => {
        $e.map_err(|err| err.to_string())?
    };
}

/// Multisets of size `q` over `elems`, as sorted tuples.
fn multisets(elems: &[TorsionElement], q: usize) -> Vec<Vec<TorsionElement>> {
    fn rec(elems: &[TorsionElement], start: usize, q: usize, cur: &mut Vec<TorsionElement>, out: &mut Vec<Vec<TorsionElement>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..elems.len() {
            cur.push(elems[i]);
            rec(elems, i, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(elems, 0, q, &mut Vec::new(), &mut out);
    out
}

/// All tuples of length `q` over `elems`.
fn tuples(elems: &[TorsionElement], q: usize) -> Vec<Vec<TorsionElement>> {
    let mut out = vec![vec![]];
    for _ in 0..q {
        out = out
            .into_iter()
            .flat_map(|p: Vec<TorsionElement>| {
                elems.iter().map(move |x| {
                    let mut p = p.clone();
                    p.push(*x);
                    p
                })
            })
            .collect();
    }
    out
}

fn ac1() -> Outcome {
    let mut groups = Vec::new();
    for l in [2u8, 3, 4] {
        groups.push(vec![l]);
        for l2 in [2u8, 3, 4] {
            groups.push(vec![l, l2]);
        }
    }
    let mut pairs = 0usize;
    for orders in &groups {
        let t = tryf!(TorsionGroup::new(orders.clone()));
        let d = tryf!(GradedDivisionAlgebra::build_pauli(&t));
        let elems = t.elements();
        let n = elems.len();
        let bad = (0..n * n).into_par_iter().find_any(|&idx| {
            let (u, v) = (&elems[idx / n], &elems[idx % n]);
            let lhs = d.x(u) * d.x(v);
            let rhs = (d.x(v) * d.x(u)).scale(&t.beta(u, v));
            lhs != rhs
        });
        if let Some(idx) = bad {
            return fail(format!("T = {orders:?}: relation fails at {} , {}", elems[idx / n], elems[idx % n]));
        }
        pairs += n * n;
    }
    Ok(format!("{} groups, {pairs} ordered pairs", groups.len()))
}

fn ac2() -> Outcome {
    let expected = [6u128, 720, 1_451_520];
    for (r, &want) in (1..=3).zip(&expected) {
        let t = TorsionGroup::elementary(r);
        let g = tryf!(AutGroup::new(&t, DEFAULT_BOUND));
        let counted = g.count_by_enumeration();
        let closed = sp2_order_closed_form(r);
        ensure!(
            counted == want && closed == want && g.order() == want,
            "r = {r}: enumeration {counted}, closed form {closed}, handle {}, expected {want}",
            g.order()
        );
    }
    Ok("6, 720, 1451520 by enumeration and closed form".into())
}

fn ac3() -> Outcome {
    for r in 0..=2 {
        let t = TorsionGroup::elementary(r);
        let d = tryf!(GradedDivisionAlgebra::build_pauli(&t));
        let signs: HashMap<TorsionElement, i8> = tryf!(d.transpose_signs()).into_iter().collect();
        for x in t.elements() {
            let q = tryf!(t.quad_sign(&x));
            let m = d.x(&x);
            let oracle = if m.transpose() == *m {
                1
            } else if m.transpose() == m.scale(&m.zero_like().integer_like(-1)) {
                -1
            } else {
                return fail(format!("X_{x} is neither symmetric nor skew"));
            };
            ensure!(q == oracle && signs[&x] == oracle, "r = {r}, t = {x}: quad {q}, oracle {oracle}");
        }
        if r == 2 {
            let plus = tryf!(t.sign_class(1)).len();
            let minus = tryf!(t.sign_class(-1)).len();
            ensure!(plus == 10 && minus == 6, "|T+| = {plus}, |T-| = {minus}");
        }
    }
    Ok("r <= 2 agree with transposes; |T+| = 10, |T-| = 6".into())
}

fn mu_choices(m: u32, s: usize) -> Vec<Vec<Cyclotomic>> {
    let vals = [
        Cyclotomic::from_integer(m, 1),
        Cyclotomic::from_integer(m, -1),
        Cyclotomic::root_of_unity(m, (m / 4) as i64),
    ];
    let mut out = vec![vec![]];
    for _ in 0..s {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Cyclotomic>| {
                vals.iter().map(move |v| {
                    let mut p = p.clone();
                    p.push(v.clone());
                    p
                })
            })
            .collect();
    }
    out
}

fn compare_involution(spec: &GradingSpec) -> std::result::Result<(), String> {
    let crit = tryf!(involution_criterion(spec));
    let oracle = tryf!(involution_oracle(spec));
    ensure!(crit == oracle, "{spec:?}: criterion {crit:?}, oracle {oracle:?}");
    Ok(())
}

fn ac4() -> Outcome {
    let mut specs = Vec::new();
    for r in 0..=1 {
        let t = TorsionGroup::elementary(r);
        let m = finegrad::division::context_conductor(&t);
        for s in 0..=2 {
            for q in 0..=(4 - 2 * s) {
                if q + s == 0 {
                    continue;
                }
                for tau in tuples(&t.elements(), q) {
                    for mu in mu_choices(m, s) {
                        specs.push(tryf!(GradingSpec::raw_mphi(t.clone(), q, s, tau.clone(), mu)));
                    }
                }
            }
        }
    }
    let exhaustive = specs.len();
    let t = TorsionGroup::elementary(2);
    let m = finegrad::division::context_conductor(&t);
    let elems = t.elements();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..50 {
        let s = rng.gen_range(0..=1);
        let q = rng.gen_range(if s == 0 { 1 } else { 0 }..=(3 - 2 * s));
        let tau: Vec<TorsionElement> = (0..q).map(|_| elems[rng.gen_range(0..elems.len())]).collect();
        // μ ranges over ±1 and ζ₄.
        let mu = (0..s)
            .map(|_| match rng.gen_range(0..3) {
                0 => Cyclotomic::from_integer(m, 1),
                1 => Cyclotomic::from_integer(m, -1),
                _ => Cyclotomic::root_of_unity(m, (m / 4) as i64),
            })
            .collect();
        specs.push(tryf!(GradingSpec::raw_mphi(t.clone(), q, s, tau, mu)));
    }
    specs.par_iter().try_for_each(compare_involution)?;
    Ok(format!("{exhaustive} exhaustive specs and 50 random specs at r = 2"))
}

fn ac5() -> Outcome {
    let mut specs = Vec::new();
    for r in 0..=2 {
        let t = TorsionGroup::elementary(r);
        let m = finegrad::division::context_conductor(&t);
        for q in 0..=4 {
            for s in 0..=2 {
                if q + s == 0 {
                    continue;
                }
                for tau in multisets(&t.elements(), q) {
                    let mu = vec![Cyclotomic::from_integer(m, 1); s];
                    specs.push(tryf!(GradingSpec::raw_mphi(t.clone(), q, s, tau, mu)));
                }
            }
        }
    }
    let phi_count = specs.len();
    specs.par_iter().try_for_each(|spec| {
        let u = tryf!(UniversalGroup::new(spec));
        ensure!(u.agrees(), "{spec:?}: reduction {} vs closed form {}", u.structure, u.closed_form);
        Ok(())
    })?;
    let groups: [&[u8]; 6] = [&[], &[2], &[3], &[4], &[2, 2], &[2, 3]];
    let mut raw = 0;
    for orders in groups {
        let t = tryf!(TorsionGroup::new(orders.to_vec()));
        for k in 1..=5 {
            let spec = tryf!(GradingSpec::raw_m(t.clone(), k));
            let u = tryf!(UniversalGroup::new(&spec));
            let invariants: Vec<u64> = orders.iter().flat_map(|&l| [l as u64, l as u64]).collect();
            let expected = GroupStructure::from_invariants(&invariants, k - 1);
            ensure!(
                u.agrees() && u.structure == expected,
                "Γ_M(T = {orders:?}, k = {k}): reduction {}, expected {expected}",
                u.structure
            );
            raw += 1;
        }
    }
    Ok(format!("{phi_count} φ-specs and {raw} matrix specs"))
}

fn weyl_check(label: &str, spec: GradingSpec, order: Option<u128>) -> std::result::Result<String, String> {
    let cmp = tryf!(compare_weyl(&spec, DEFAULT_BOUND));
    let closed = cmp.closed_form.order_u128();
    let brute = cmp.brute_force.order;
    ensure!(cmp.agrees(), "{label}: closed form {closed:?}, brute force {brute}");
    if let Some(want) = order {
        ensure!(brute == want, "{label}: order {brute}, expected {want}");
    }
    Ok(format!("{label}={brute}"))
}

fn ac6() -> Outcome {
    let triv = TorsionGroup::trivial();
    let z2 = TorsionGroup::elementary(1);
    let z3 = tryf!(TorsionGroup::new(vec![3]));
    let mut lines = vec![
        weyl_check("B(5,0)", tryf!(GradingSpec::b(5, 0)), Some(120))?,
        weyl_check("B(3,1)", tryf!(GradingSpec::b(3, 1)), Some(12))?,
        weyl_check("B(1,2)", tryf!(GradingSpec::b(1, 2)), Some(8))?,
        weyl_check("C(r=1,q=0,s=1)", tryf!(GradingSpec::c(z2.clone(), 0, 1, vec![])), Some(12))?,
        weyl_check("D(triv,4,1)", tryf!(GradingSpec::d(triv.clone(), 4, 1, vec![triv.identity(); 4])), Some(48))?,
        weyl_check(
            "D(r=1,q=2,s=0,(e,a))",
            tryf!(GradingSpec::d(z2.clone(), 2, 0, vec![z2.identity(), z2.a(0)])),
            None,
        )?,
        weyl_check("AI(triv,4)", tryf!(GradingSpec::ai(triv.clone(), 4)), Some(48))?,
        weyl_check("AI(Z3^2,1)", tryf!(GradingSpec::ai(z3, 1)), Some(48))?,
        weyl_check("sl2 Pauli", tryf!(GradingSpec::ai(z2, 1)), Some(6))?,
    ];
    let spec = tryf!(GradingSpec::aii(triv.clone(), 3, 0, vec![triv.identity(); 3]));
    let cmp = tryf!(compare_weyl(&spec, DEFAULT_BOUND));
    let bf = &cmp.brute_force;
    ensure!(
        cmp.agrees() && bf.kernel_rank == 2,
        "AII(triv,3,0): kernel rank {}, quotient {}, closed form {:?}",
        bf.kernel_rank,
        bf.quotient_order,
        cmp.closed_form.order_u128()
    );
    lines.push(format!("AII(triv,3,0)={}x2^{}", bf.quotient_order, bf.kernel_rank));
    Ok(lines.join(" "))
}

fn ac7() -> Outcome {
    let b = tryf!(enumerate_fine_gradings(Series::B, 5, DEFAULT_BOUND)).len();
    let c = tryf!(enumerate_fine_gradings(Series::C, 4, DEFAULT_BOUND)).len();
    let a = tryf!(enumerate_series_a(3, DEFAULT_BOUND)).len();
    ensure!(b == 3 && c == 3 && a == 4, "B(5): {b}, C(4): {c}, A(3): {a}");
    Ok("B n=5: 3, C n=4: 3, A n=3: 4".into())
}

fn ac8() -> Outcome {
    for r in 1..=2 {
        let t = TorsionGroup::elementary(r);
        let elems = t.elements();
        let maps: Vec<SymplecticMap> = tryf!(tryf!(AutGroup::new(&t, DEFAULT_BOUND)).elements(DEFAULT_BOUND));
        let index: HashMap<SymplecticMap, usize> = maps.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut table: Vec<Vec<TorsionElement>> = Vec::with_capacity(maps.len());
        for a in &maps {
            let g = AffineSymplectic::linear(&t, a.clone());
            let ta = tryf!(t_alpha(&t, a));
            ensure!(tryf!(t.quad_sign(&ta)) == 1, "r = {r}: quad_sign(t_α) = -1 for {a:?}");
            let row: Vec<TorsionElement> = elems
                .iter()
                .map(|x| act(&t, ActionKind::Twisted, &g, x))
                .collect::<finegrad::Result<_>>()
                .map_err(|e| e.to_string())?;
            for (x, y) in elems.iter().zip(&row) {
                ensure!(
                    tryf!(t.quad_sign(x)) == tryf!(t.quad_sign(y)),
                    "r = {r}: twisted action changes the sign of {x}"
                );
            }
            table.push(row);
        }
        let id = index[&SymplecticMap::identity(&t)];
        ensure!(table[id] == elems, "r = {r}: identity does not act trivially");
        (0..maps.len()).into_par_iter().try_for_each(|i| {
            for j in 0..maps.len() {
                let k = index[&maps[i].compose(&t, &maps[j])];
                for x in 0..elems.len() {
                    let inner = t.index(&table[j][x]);
                    ensure!(table[k][x] == table[i][inner], "r = {r}: action law fails");
                }
            }
            Ok(())
        })?;
    }
    Ok("action law, quad_sign(t_α) = 1 and sign invariance over Sp2(2), Sp4(2)".into())
}

fn ac9() -> Outcome {
    let mut specs = Vec::new();
    for r in 0..=2 {
        let t = TorsionGroup::elementary(r);
        // q = 4 over Z2^2 adds the non-split cases.
        let qmax = if r == 1 { 4 } else { 3 };
        for q in 0..=qmax {
            for s in 0..=1 {
                for tau in multisets(&t.elements(), q) {
                    if let Ok(spec) = GradingSpec::aii(t.clone(), q, s, tau) {
                        specs.push(spec);
                    }
                }
            }
        }
    }
    let split = specs
        .par_iter()
        .map(|spec| -> std::result::Result<bool, String> {
            let ext = tryf!(type_ii_extension(spec, false));
            let flipped = tryf!(type_ii_extension(spec, true));
            let crit = tryf!(split_criterion(spec));
            ensure!(ext.split_lift == crit && ext.split == crit, "{spec:?}: criterion {crit}, lift {}", ext.split_lift);
            ensure!(tryf!(ext.check_cocycle(64)), "{spec:?}: ε is not a symmetric 2-cocycle");
            ensure!(tryf!(ext.cohomologous(&flipped, 64)), "{spec:?}: ε class depends on μ");
            Ok(crit)
        })
        .collect::<std::result::Result<Vec<bool>, String>>()?;
    let n_split = split.iter().filter(|&&b| b).count();
    Ok(format!("{} specs ({n_split} split, {} non-split)", split.len(), split.len() - n_split))
}

fn ac10() -> Outcome {
    let triv = TorsionGroup::trivial();
    let z2 = TorsionGroup::elementary(1);
    let z3 = tryf!(TorsionGroup::new(vec![3]));
    let mut specs = vec![
        tryf!(GradingSpec::c(z2.clone(), 0, 1, vec![])),
        tryf!(GradingSpec::d(triv.clone(), 4, 1, vec![triv.identity(); 4])),
        tryf!(GradingSpec::d(z2.clone(), 2, 0, vec![z2.identity(), z2.a(0)])),
        tryf!(GradingSpec::ai(triv.clone(), 4)),
        tryf!(GradingSpec::ai(z3, 1)),
        tryf!(GradingSpec::ai(z2, 1)),
    ];
    for (series, n) in [(Series::B, 5), (Series::C, 4), (Series::C, 6), (Series::D, 6)] {
        specs.extend(tryf!(enumerate_fine_gradings(series, n, DEFAULT_BOUND)));
    }
    specs.extend(tryf!(enumerate_series_a(3, DEFAULT_BOUND)));
    specs.extend(tryf!(enumerate_series_a(4, DEFAULT_BOUND)));
    let counts = specs
        .par_iter()
        .map(|spec| -> std::result::Result<usize, String> {
            let alg = tryf!(GradedMatrixAlgebra::new(spec));
            let phi = match spec.series.has_phi() {
                true => Some(tryf!(build_phi(spec)).form().clone()),
                false => None,
            };
            let gens = tryf!(realize_generators(&alg, DEFAULT_BOUND));
            for g in &gens {
                verify_generator(&alg, phi.as_ref(), g).map_err(|e| format!("{spec:?}, {}: {e}", g.label))?;
            }
            Ok(gens.len())
        })
        .collect::<std::result::Result<Vec<usize>, String>>()?;
    Ok(format!("{} generators over {} specs", counts.iter().sum::<usize>(), specs.len()))
}

/// Id, name, check and budget in seconds.
type Criterion = (&'static str, &'static str, fn() -> Outcome, u64);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1", "Pauli relations", ac1, 10),
        ("AC2", "symplectic group orders", ac2, 60),
        ("AC3", "quadratic signs", ac3, 5),
        ("AC4", "involution criterion", ac4, 60),
        ("AC5", "universal groups", ac5, 60),
        ("AC6", "Weyl cross-verification", ac6, 300),
        ("AC7", "classification counts", ac7, 30),
        ("AC8", "twisted action", ac8, 10),
        ("AC9", "Type II extensions", ac9, 60),
        ("AC10", "generator soundness", ac10, 60),
    ];
    let mut failures = 0;
    for (id, name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let (verdict, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        println!("{id} [{verdict}] {name} ({:.2} s): {detail}", elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failures} failed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
