//! The central extension `⟨h⟩ → G → Ḡ` attached to a Type II grading: `φ²`
//! acts on `Ḡ`-components by a character `λ`, square roots `μ` of `λ` give a
//! symmetric cocycle `ε`, and `G` is the extension it defines.

use serde::Serialize;

use crate::automorphism::BasisMap;
use crate::error::{Error, Result};
use crate::grading::{GradedMatrixAlgebra, GradingSpec, Series, UniversalGroup};
use crate::involution::build_phi;
use crate::presentation::{AbelianPresentation, GroupStructure};

/// The Type II extension data. Characters are stored as exponents:
/// `λ(e_k) = (−1)^{lambda[k]}` and `μ(e_k) = ζ₄^{mu[k]}` on the normal-form
/// generators `e_k` of `Ḡ`.
#[derive(Clone, Debug, Serialize)]
pub struct TypeIIExtension {
    pub base: GroupStructure,
    /// Order of each normal-form generator of `Ḡ`; zero for free ones.
    pub base_orders: Vec<u64>,
    pub lambda: Vec<u8>,
    pub mu: Vec<u8>,
    /// `d_k ê_k = relation_signs[k]·h` in `G`.
    pub relation_signs: Vec<u8>,
    pub extended: GroupStructure,
    pub extended_invariants: Vec<u64>,
    /// `χ(ê_k) = μ(e_k)`, `χ(h) = −1`; `h` is the last generator of `G`.
    pub h_order: u64,
    pub split_criterion: bool,
    pub split_lift: bool,
    pub split: bool,
    pub closed_form: GroupStructure,
}

/// Exponent of `ζ₄` in `μ(y)` for reduced coordinates `y`.
fn mu_exp(mu: &[u8], y: &[i64]) -> i64 {
    mu.iter().zip(y).map(|(&a, &b)| a as i64 * b).sum::<i64>().rem_euclid(4)
}

fn reduce(orders: &[u64], y: &[i64]) -> Vec<i64> {
    y.iter()
        .zip(orders)
        .map(|(&v, &d)| if d == 0 { v } else { v.rem_euclid(d as i64) })
        .collect()
}

/// `ε(x, y) ∈ {0, 1}` (additive notation for `±1`).
pub fn epsilon(orders: &[u64], mu: &[u8], x: &[i64], y: &[i64]) -> Result<u8> {
    let s: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
    let e = (mu_exp(mu, &reduce(orders, &s)) - mu_exp(mu, x) - mu_exp(mu, y)).rem_euclid(4);
    match e {
        0 => Ok(0),
        2 => Ok(1),
        _ => Err(Error::Verification("ε takes a value outside ±1".into())),
    }
}

/// The action of `φ²` on each support element, as a sign bit.
fn phi_squared_signs(alg: &GradedMatrixAlgebra, phi: &BasisMap) -> Result<Vec<(crate::grading::SupportElement, u8)>> {
    let sq = phi.compose(phi);
    if !sq.compose(&sq).is_identity() {
        return Err(Error::Verification("φ⁴ is not the identity".into()));
    }
    let vals = sq
        .eigenvalues()
        .ok_or_else(|| Error::Verification("φ² does not fix every basis element".into()))?;
    let mut out = Vec::new();
    for (z, basis) in alg.components() {
        let v = &vals[alg.basis_index(&basis[0])];
        if basis.iter().any(|b| &vals[alg.basis_index(b)] != v) {
            return Err(Error::Verification(format!("φ² is not scalar on {z}")));
        }
        let bit = if *v == v.integer_like(1) {
            0
        } else if *v == v.integer_like(-1) {
            1
        } else {
            return Err(Error::Verification(format!("φ² acts on {z} by a non-sign scalar")));
        };
        out.push((*z, bit));
    }
    Ok(out)
}

/// Solves `Σ_k y_k b_k ≡ rhs (mod 2)` for all rows; returns one solution.
fn solve_f2(rows: &[(Vec<i64>, u8)], n: usize) -> Option<Vec<u8>> {
    let mut eqs: Vec<(u64, u8)> = rows
        .iter()
        .map(|(y, r)| {
            let mask = y
                .iter()
                .enumerate()
                .filter(|(_, v)| v.rem_euclid(2) == 1)
                .fold(0u64, |m, (k, _)| m | 1 << k);
            (mask, *r)
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..n {
        let Some(p) = (row..eqs.len()).find(|&i| eqs[i].0 >> c & 1 == 1) else {
            continue;
        };
        eqs.swap(row, p);
        for i in 0..eqs.len() {
            if i != row && eqs[i].0 >> c & 1 == 1 {
                eqs[i].0 ^= eqs[row].0;
                eqs[i].1 ^= eqs[row].1;
            }
        }
        pivots.push(c);
        row += 1;
    }
    if eqs[row..].iter().any(|e| e.1 == 1) {
        return None;
    }
    let mut sol = vec![0u8; n];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = eqs[r].1;
    }
    Some(sol)
}

/// Split test on `T`: some `t` makes all `β(t_i t)` equal.
pub fn split_criterion(spec: &GradingSpec) -> Result<bool> {
    let t = &spec.group;
    for x in t.elements() {
        let signs: Vec<i8> = spec
            .tau
            .iter()
            .map(|ti| t.quad_sign(&t.mul(ti, &x)))
            .collect::<Result<_>>()?;
        if signs.windows(2).all(|w| w[0] == w[1]) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn group_of(ngens: usize, rels: &[Vec<i64>]) -> Result<(GroupStructure, Vec<u64>, AbelianPresentation)> {
    let p = AbelianPresentation::new(ngens, rels)?;
    Ok((p.structure(), p.invariant_factors(), p))
}

/// Builds the extension for an `AII` spec (or a raw spec with all `μ_j = 1`).
/// With `flip_mu` every square root `μ(e_k)` is replaced by `−μ(e_k)`.
pub fn type_ii_extension(spec: &GradingSpec, flip_mu: bool) -> Result<TypeIIExtension> {
    let raw_ok = spec.series == Series::RawMPhi && spec.mu.iter().all(|m| m.is_one());
    if spec.series != Series::AII && !raw_ok {
        return Err(Error::Domain("Type II extensions need series AII".into()));
    }
    let alg = GradedMatrixAlgebra::new(spec)?;
    let phi = build_phi(spec)?.to_basis_map(&alg)?;
    let signs = phi_squared_signs(&alg, &phi)?;
    let u = UniversalGroup::new(spec)?;
    let orders = u.presentation.coord_orders();
    let n = orders.len();

    // λ on the normal-form generators, from its values on the support.
    let mut rows: Vec<(Vec<i64>, u8)> = signs.iter().map(|(z, b)| (u.coords(z), *b)).collect();
    for (k, &d) in orders.iter().enumerate() {
        if d % 2 == 1 {
            let mut y = vec![0; n];
            y[k] = 1;
            rows.push((y, 0));
        }
    }
    let lambda = solve_f2(&rows, n)
        .ok_or_else(|| Error::Verification("φ² does not act through a character of Ḡ".into()))?;

    let mu: Vec<u8> = lambda
        .iter()
        .map(|&l| (l + if flip_mu { 2 } else { 0 }) % 4)
        .collect();
    let mut relation_signs = Vec::with_capacity(n);
    let mut rels = Vec::new();
    for (k, &d) in orders.iter().enumerate() {
        if d == 0 {
            relation_signs.push(0);
            continue;
        }
        let e = (mu[k] as u64 * d) % 4;
        if e % 2 == 1 {
            return Err(Error::Verification("μ(e_k)^{d_k} is not ±1".into()));
        }
        let c = (e / 2) as u8;
        relation_signs.push(c);
        let mut r = vec![0i64; n + 1];
        r[k] = d as i64;
        r[n] = -(c as i64);
        rels.push(r);
    }
    let mut hrel = vec![0i64; n + 1];
    hrel[n] = 2;
    rels.push(hrel);
    let (extended, extended_invariants, pres) = group_of(n + 1, &rels)?;

    // h has order two, and G/⟨h⟩ recovers Ḡ.
    let mut h = vec![0i64; n + 1];
    h[n] = 1;
    if pres.is_zero(&h) {
        return Err(Error::Verification("h is trivial in G".into()));
    }
    let mut quot = rels.clone();
    quot.push(h.clone());
    let (q_struct, _, _) = group_of(n + 1, &quot)?;
    if q_struct != u.structure {
        return Err(Error::Verification(format!("G/<h> = {q_struct}, expected {}", u.structure)));
    }

    // Splitting: a character ν of Ḡ with ν² = λ, searched per generator
    // among fourth roots of unity and checked on the whole support.
    let mut nu = Vec::with_capacity(n);
    for (k, &d) in orders.iter().enumerate() {
        let pick = (0u8..4).find(|&v| (2 * v) % 4 == 2 * lambda[k] % 4 && (d == 0 || (v as u64 * d).is_multiple_of(4)));
        match pick {
            Some(v) => nu.push(v),
            None => break,
        }
    }
    let split_lift = nu.len() == n
        && signs
            .iter()
            .all(|(z, b)| (2 * mu_exp(&nu, &u.coords(z))).rem_euclid(4) == 2 * *b as i64);
    let split_criterion = split_criterion(spec)?;
    if split_lift != split_criterion {
        return Err(Error::Verification(format!(
            "split criterion says {split_criterion}, character lift says {split_lift}"
        )));
    }
    let (a, b, s) = (
        u.closed_form.rank_of(2),
        u.closed_form.rank_of(4),
        u.closed_form.free,
    );
    // |G| = 2|Ḡ|: either a new Z₂ splits off or one Z₂ of Ḡ lifts to Z₄.
    let closed_form = if split_criterion {
        GroupStructure::two_four(a + 1, b, s)
    } else if a > 0 {
        GroupStructure::two_four(a - 1, b + 1, s)
    } else {
        return Err(Error::Verification("non-split extension of a group without Z2 factors".into()));
    };
    if closed_form != extended {
        return Err(Error::Verification(format!(
            "extension is {extended}, closed form gives {closed_form}"
        )));
    }
    Ok(TypeIIExtension {
        base: u.structure.clone(),
        base_orders: orders,
        lambda,
        mu,
        relation_signs,
        extended,
        extended_invariants,
        h_order: 2,
        split_criterion,
        split_lift,
        split: split_criterion,
        closed_form,
    })
}

impl TypeIIExtension {
    /// Sample points of `Ḡ` in reduced coordinates: each finite coordinate
    /// ranges over its residues (capped), each free one over `{−1, 0, 1}`.
    pub fn sample_points(&self, cap: usize) -> Vec<Vec<i64>> {
        let mut pts: Vec<Vec<i64>> = vec![vec![]];
        for &d in &self.base_orders {
            let range: Vec<i64> = if d == 0 { vec![-1, 0, 1] } else { (0..d as i64).collect() };
            pts = pts
                .into_iter()
                .flat_map(|p| {
                    range.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .take(cap)
                .collect();
        }
        pts
    }

    pub fn epsilon(&self, x: &[i64], y: &[i64]) -> Result<u8> {
        epsilon(&self.base_orders, &self.mu, x, y)
    }

    /// Normalized, symmetric and a 2-cocycle on the sample points.
    pub fn check_cocycle(&self, cap: usize) -> Result<bool> {
        let pts = self.sample_points(cap);
        let zero = vec![0i64; self.base_orders.len()];
        let add = |x: &[i64], y: &[i64]| -> Vec<i64> {
            reduce(&self.base_orders, &x.iter().zip(y).map(|(a, b)| a + b).collect::<Vec<_>>())
        };
        for x in &pts {
            if self.epsilon(x, &zero)? != 0 {
                return Ok(false);
            }
            for y in &pts {
                if self.epsilon(x, y)? != self.epsilon(y, x)? {
                    return Ok(false);
                }
            }
        }
        let step = (pts.len() / 12).max(1);
        for x in pts.iter().step_by(step) {
            for y in pts.iter().step_by(step) {
                for z in pts.iter().step_by(step) {
                    let lhs = self.epsilon(x, y)? ^ self.epsilon(&add(x, y), z)?;
                    let rhs = self.epsilon(y, z)? ^ self.epsilon(x, &add(y, z))?;
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `ε'/ε` is the coboundary of `f = μ'/μ` on the sample points.
    pub fn cohomologous(&self, other: &TypeIIExtension, cap: usize) -> Result<bool> {
        if self.base_orders != other.base_orders {
            return Ok(false);
        }
        let f = |y: &[i64]| -> i64 { (mu_exp(&other.mu, y) - mu_exp(&self.mu, y)).rem_euclid(4) };
        let pts = self.sample_points(cap);
        for x in &pts {
            for y in &pts {
                let s = reduce(&self.base_orders, &x.iter().zip(y).map(|(a, b)| a + b).collect::<Vec<_>>());
                let d = (f(&s) - f(x) - f(y)).rem_euclid(4);
                if d % 2 == 1 {
                    return Ok(false);
                }
                if (self.epsilon(x, y)? ^ other.epsilon(x, y)?) as i64 != d / 2 {
                    return Ok(false);
                }
            }
        }
        Ok(self.extended == other.extended)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsion::TorsionGroup;

    #[test]
    fn q_zero_splits() {
        for r in 0..=1 {
            let t = TorsionGroup::elementary(r);
            let spec = GradingSpec::aii(t.clone(), 0, 2, vec![]).unwrap();
            let ext = type_ii_extension(&spec, false).unwrap();
            assert!(ext.split);
            assert_eq!(ext.extended, GroupStructure::two_four(t.dim() + 1, 0, 2));
        }
    }

    #[test]
    fn plus_signs_split() {
        let t = TorsionGroup::elementary(1);
        let spec = GradingSpec::aii(t.clone(), 2, 0, vec![t.identity(), t.a(0)]).unwrap();
        assert!(type_ii_extension(&spec, false).unwrap().split);
    }

    #[test]
    fn non_split_example() {
        // β(t_i t) can never agree for τ = (e, a, b, ab) over Z₂².
        let t = TorsionGroup::elementary(1);
        let ab = t.mul(&t.a(0), &t.b(0));
        let spec = GradingSpec::aii(t.clone(), 4, 0, vec![t.identity(), t.a(0), t.b(0), ab]).unwrap();
        let ext = type_ii_extension(&spec, false).unwrap();
        assert!(!ext.split);
        assert_eq!(ext.extended.rank_of(4), ext.base.rank_of(4) + 1);
        let flipped = type_ii_extension(&spec, true).unwrap();
        assert!(ext.cohomologous(&flipped, 64).unwrap());
        assert!(ext.check_cocycle(64).unwrap());
    }
}
