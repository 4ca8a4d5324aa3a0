//! The anti-automorphisms `φ(X) = Φ⁻¹ X^T Φ` attached to `(τ, μ)`, their
//! typing, and the equivalence deciders for φ-gradings.

use crate::automorphism::BasisMap;
use crate::diag::diag_membership;
use crate::division::{GradedDivisionAlgebra, Homog, Pauli};
use crate::error::{Error, Result};
use crate::grading::{BasisElement, GradedMatrixAlgebra, GradingSpec};
use crate::matrix::Matrix;
use crate::scalar::Cyclotomic;
use crate::symplectic::{conjugating_element, ActionKind, AffineSymplectic, MultisetSigma};

/// A block-monomial matrix `Σ_a E_{a, cols[a]} ⊗ entries[a]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMatrix {
    pub cols: Vec<usize>,
    pub entries: Vec<Homog>,
}

impl FormMatrix {
    /// The block in position `(a, b)`, if nonzero.
    pub fn entry(&self, a: usize, b: usize) -> Option<&Homog> {
        (self.cols[a] == b).then(|| &self.entries[a])
    }

    pub fn blocks(&self) -> usize {
        self.cols.len()
    }

    /// `M · diag(d)⁻¹`.
    pub fn times_diag_inv(&self, p: &Pauli, d: &[Homog]) -> Result<FormMatrix> {
        let entries = self
            .entries
            .iter()
            .zip(&self.cols)
            .map(|(h, &c)| Ok(p.mul(h, &p.inv(&d[c])?)))
            .collect::<Result<_>>()?;
        Ok(FormMatrix {
            cols: self.cols.clone(),
            entries,
        })
    }

    pub fn to_matrix(&self, d: &GradedDivisionAlgebra) -> Matrix {
        let l = d.size();
        let mut m = Matrix::zero(self.blocks() * l, d.pauli().conductor());
        for (a, h) in self.entries.iter().enumerate() {
            m.put_block(a * l, self.cols[a] * l, &d.matrix_of(h));
        }
        m
    }

    /// The anti-automorphism `X ↦ M⁻¹ X^T M`:
    /// `E_ij ⊗ X_w ↦ E_{ρ(j)ρ(i)} ⊗ f_j⁻¹ φ₀(X_w) f_i` with `f_a = M_{a,ρ(a)}`.
    pub fn adjoint_map(&self, alg: &GradedMatrixAlgebra) -> Result<BasisMap> {
        let p = alg.pauli();
        let inv: Vec<Homog> = self.entries.iter().map(|h| p.inv(h)).collect::<Result<_>>()?;
        BasisMap::from_fn(alg, true, |b| {
            let x = p.transpose(&p.basis(b.t));
            let h = p.mul(&p.mul(&inv[b.j], &x), &self.entries[b.i]);
            Ok((
                h.coeff,
                BasisElement {
                    i: self.cols[b.j],
                    j: self.cols[b.i],
                    t: h.deg,
                },
            ))
        })
    }
}

/// `φ_{τ,μ}`, given by its block-diagonal matrix `Φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiMap {
    form: FormMatrix,
}

/// `Φ = diag(X_{t₁}, …, X_{t_q}, [[0, I], [μ₁I, 0]], …)`.
pub fn build_phi(spec: &GradingSpec) -> Result<PhiMap> {
    if !spec.series.has_phi() {
        return Err(Error::Domain(format!("series {} carries no anti-automorphism", spec.series)));
    }
    spec.validate_datum()?;
    let p = Pauli::new(&spec.group);
    let mut cols = Vec::new();
    let mut entries = Vec::new();
    for i in 0..spec.q {
        cols.push(i);
        entries.push(p.basis(spec.tau[i]));
    }
    for j in 0..spec.s {
        let a = spec.q + 2 * j;
        cols.extend([a + 1, a]);
        entries.push(p.scalar(p.one()));
        entries.push(p.scalar(spec.mu[j].clone()));
    }
    Ok(PhiMap {
        form: FormMatrix { cols, entries },
    })
}

impl PhiMap {
    pub fn form(&self) -> &FormMatrix {
        &self.form
    }

    pub fn matrix(&self, d: &GradedDivisionAlgebra) -> Matrix {
        self.form.to_matrix(d)
    }

    pub fn to_basis_map(&self, alg: &GradedMatrixAlgebra) -> Result<BasisMap> {
        self.form.adjoint_map(alg)
    }

    /// `Φ⁻¹ A^T Φ` by exact matrix arithmetic.
    pub fn apply_matrix(&self, d: &GradedDivisionAlgebra, a: &Matrix) -> Result<Matrix> {
        let phi = self.matrix(d);
        Ok(&(&phi.inverse()? * &a.transpose()) * &phi)
    }
}

/// Every component is φ-stable and `φ²` lies in `Diag(Γ)`.
pub fn check_phi_grading(alg: &GradedMatrixAlgebra, phi: &BasisMap) -> Result<bool> {
    if phi.len() != alg.basis_len() {
        return Err(Error::Domain("map and algebra sizes differ".into()));
    }
    let stable = match phi.support_permutation(alg) {
        Ok(perm) => perm.iter().all(|(z, w)| z == w),
        Err(_) => false,
    };
    Ok(stable && diag_membership(&phi.compose(phi), alg).is_some())
}

/// Checks a φ given as an arbitrary invertible matrix `M` (`X ↦ M⁻¹X^TM`)
/// by exact matrix arithmetic on the basis.
pub fn check_phi_grading_matrix(alg: &GradedMatrixAlgebra, d: &GradedDivisionAlgebra, m: &Matrix) -> Result<bool> {
    let minv = m.inverse()?;
    let l = d.size();
    for (z, basis) in alg.components() {
        for b in basis {
            let img = &(&minv * &alg.basis_matrix(d, b).transpose()) * m;
            // Decompose blockwise and require every term to have degree z.
            for bi in 0..alg.blocks() {
                for bj in 0..alg.blocks() {
                    let blk = img.block(bi * l, bj * l, l);
                    if blk.is_zero() {
                        continue;
                    }
                    for (t, _) in d.decompose(&blk)? {
                        if alg.spec().canonical(bi, bj, t) != *z {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvolutionType {
    NotInvolution,
    Orthogonal,
    Symplectic,
}

/// `φ² = id` iff `β(t₁) = … = β(t_q) = μ₁ = … = μ_s`; the common value is the sign.
pub fn involution_criterion(spec: &GradingSpec) -> Result<InvolutionType> {
    let mut vals: Vec<Cyclotomic> = Vec::new();
    let m = spec.conductor();
    for t in &spec.tau {
        vals.push(Cyclotomic::from_integer(m, spec.group.quad_sign(t)? as i64));
    }
    vals.extend(spec.mu.iter().cloned());
    let first = vals[0].clone();
    if vals.iter().any(|v| *v != first) {
        return Ok(InvolutionType::NotInvolution);
    }
    Ok(if first == first.integer_like(1) {
        InvolutionType::Orthogonal
    } else if first == first.integer_like(-1) {
        InvolutionType::Symplectic
    } else {
        InvolutionType::NotInvolution
    })
}

/// Decides the type from exact matrices: `φ²` applied to every matrix unit,
/// then the sign from `Φ^T = ±Φ`.
pub fn involution_oracle(spec: &GradingSpec) -> Result<InvolutionType> {
    let phi = build_phi(spec)?;
    let d = GradedDivisionAlgebra::build_pauli(&spec.group)?;
    let big = phi.matrix(&d);
    let inv = big.inverse()?;
    let apply = |x: &Matrix| &(&inv * &x.transpose()) * &big;
    let n = big.size();
    let m = lcm_conductor(&big, d.pauli().conductor());
    for a in 0..n {
        for b in 0..n {
            let mut e = Matrix::zero(n, m);
            e.set(a, b, Cyclotomic::one(m));
            let twice = apply(&apply(&e));
            if twice != e {
                return Ok(InvolutionType::NotInvolution);
            }
        }
    }
    let tr = big.transpose();
    if tr == big {
        Ok(InvolutionType::Orthogonal)
    } else if tr == big.scale(&Cyclotomic::from_integer(m, -1)) {
        Ok(InvolutionType::Symplectic)
    } else {
        Err(Error::Verification("φ² = id but Φ is neither symmetric nor skew".into()))
    }
}

fn lcm_conductor(a: &Matrix, base: u32) -> u32 {
    a.entries()
        .iter()
        .fold(base, |m, x| crate::scalar::lcm(m, x.conductor()))
}

/// Both deciders; disagreement is a verification failure.
pub fn involution_type(spec: &GradingSpec) -> Result<InvolutionType> {
    let c = involution_criterion(spec)?;
    let o = involution_oracle(spec)?;
    if c != o {
        return Err(Error::Verification(format!(
            "involution criterion gives {c:?}, matrix oracle gives {o:?}"
        )));
    }
    Ok(c)
}

/// Fineness of `Γ_M(T, q, s, τ)` as a φ-grading.
pub fn is_fine_phi(spec: &GradingSpec) -> bool {
    spec.is_fine_phi()
}

/// `B(x, φ(r)y) = B(rx, y)` with `B(x, y) = x^T Φ y`, for all matrix units
/// `r` and standard basis vectors `x, y`.
pub fn adjoint_identity_holds(spec: &GradingSpec) -> Result<bool> {
    let phi = build_phi(spec)?;
    let d = GradedDivisionAlgebra::build_pauli(&spec.group)?;
    let big = phi.matrix(&d);
    let inv = big.inverse()?;
    let n = big.size();
    let m = lcm_conductor(&big, d.pauli().conductor());
    for a in 0..n {
        for b in 0..n {
            let mut r = Matrix::zero(n, m);
            r.set(a, b, Cyclotomic::one(m));
            let pr = &(&inv * &r.transpose()) * &big;
            // B(e_x, φ(r) e_y) = (Φ φ(r))_{xy}; B(r e_x, e_y) = (r^T Φ)_{xy}.
            if &big * &pr != &r.transpose() * &big {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn same_shape(a: &GradingSpec, b: &GradingSpec) -> bool {
    a.series.has_phi() && b.series.has_phi() && a.r() == b.r() && a.q == b.q && a.s == b.s
}

/// Weak equivalence: equal `(r, q, s)` and `Σ(τ)` conjugate under the natural
/// action of `T ⋊ Aut(T, β)`. Returns the conjugating element.
pub fn weakly_equivalent(a: &GradingSpec, b: &GradingSpec, bound: u64) -> Result<Option<AffineSymplectic>> {
    if !same_shape(a, b) {
        return Ok(None);
    }
    conjugating_element(
        &a.group,
        &MultisetSigma::new(a.tau.clone()),
        &MultisetSigma::new(b.tau.clone()),
        ActionKind::Natural,
        bound,
    )
}

/// Equivalence of φ-gradings with involutions: equal `(r, q, s)`, equal
/// sign, and `Σ(τ)` conjugate under the twisted action of `Aut(T, β)`.
pub fn equivalent_involution(a: &GradingSpec, b: &GradingSpec, bound: u64) -> Result<Option<AffineSymplectic>> {
    if !same_shape(a, b) {
        return Ok(None);
    }
    let (ta, tb) = (involution_criterion(a)?, involution_criterion(b)?);
    if ta == InvolutionType::NotInvolution || ta != tb {
        return Ok(None);
    }
    conjugating_element(
        &a.group,
        &MultisetSigma::new(a.tau.clone()),
        &MultisetSigma::new(b.tau.clone()),
        ActionKind::Twisted,
        bound,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsion::TorsionGroup;

    fn raw(t: &TorsionGroup, tau: Vec<crate::TorsionElement>, mu: Vec<i64>) -> GradingSpec {
        let q = tau.len();
        let mu = mu.into_iter().map(|x| Cyclotomic::from_integer(4, x)).collect::<Vec<_>>();
        GradingSpec::raw_mphi(t.clone(), q, mu.len(), tau, mu).unwrap()
    }

    #[test]
    fn b_series_phi_matrix() {
        let spec = GradingSpec::b(1, 1).unwrap();
        let d = GradedDivisionAlgebra::build_pauli(&spec.group).unwrap();
        let m = build_phi(&spec).unwrap().matrix(&d);
        let one = Cyclotomic::one(4);
        assert_eq!(m.get(0, 0), &one);
        assert_eq!(m.get(1, 2), &one);
        assert_eq!(m.get(2, 1), &one);
        assert!(m.get(1, 1).is_zero());
        assert_eq!(involution_type(&spec).unwrap(), InvolutionType::Orthogonal);
    }

    #[test]
    fn c_series_carries_minus_one() {
        let t = TorsionGroup::trivial();
        let spec = GradingSpec::c(t, 0, 2, vec![]).unwrap();
        let d = GradedDivisionAlgebra::build_pauli(&spec.group).unwrap();
        let m = build_phi(&spec).unwrap().matrix(&d);
        assert_eq!(m.get(1, 0), &Cyclotomic::from_integer(4, -1));
        assert_eq!(involution_type(&spec).unwrap(), InvolutionType::Symplectic);
    }

    #[test]
    fn typing_examples() {
        let t = TorsionGroup::elementary(1);
        let ab = t.mul(&t.a(0), &t.b(0));
        assert_eq!(involution_type(&raw(&t, vec![ab], vec![])).unwrap(), InvolutionType::Symplectic);
        assert_eq!(
            involution_type(&raw(&t, vec![t.identity(), ab], vec![])).unwrap(),
            InvolutionType::NotInvolution
        );
    }

    #[test]
    fn symbolic_phi_matches_matrices() {
        let t = TorsionGroup::elementary(1);
        let spec = raw(&t, vec![t.a(0)], vec![-1]);
        let a = GradedMatrixAlgebra::new(&spec).unwrap();
        let d = GradedDivisionAlgebra::build_pauli(&t).unwrap();
        let phi = build_phi(&spec).unwrap();
        let f = phi.to_basis_map(&a).unwrap();
        f.check_multiplicative(&a).unwrap();
        for idx in 0..a.basis_len() {
            let e = a.basis_matrix(&d, &a.basis_element(idx));
            assert_eq!(phi.apply_matrix(&d, &e).unwrap(), f.image_matrix(&a, &d, idx));
        }
        assert!(check_phi_grading(&a, &f).unwrap());
        assert!(check_phi_grading_matrix(&a, &d, &phi.matrix(&d)).unwrap());
        assert!(adjoint_identity_holds(&spec).unwrap());
    }

    #[test]
    fn generic_matrix_breaks_phi_grading() {
        let t = TorsionGroup::trivial();
        let spec = GradingSpec::b(1, 1).unwrap();
        let a = GradedMatrixAlgebra::new(&spec).unwrap();
        let d = GradedDivisionAlgebra::build_pauli(&t).unwrap();
        let m = Matrix::from_fn(3, |i, j| Cyclotomic::from_integer(4, (1 + i + 2 * j + i * j * j + (i == j) as usize * 5) as i64));
        assert!(!check_phi_grading_matrix(&a, &d, &m).unwrap());
    }

    #[test]
    fn fineness_clause() {
        let t = TorsionGroup::elementary(1);
        assert!(!is_fine_phi(&raw(&t, vec![t.identity(), t.identity()], vec![])));
        assert!(is_fine_phi(&raw(&t, vec![t.identity(), t.a(0)], vec![])));
        assert!(is_fine_phi(&raw(&t, vec![t.identity(), t.identity()], vec![1])));
    }

    #[test]
    fn equivalence_examples() {
        let t = TorsionGroup::elementary(1);
        let ab = t.mul(&t.a(0), &t.b(0));
        let e = raw(&t, vec![t.identity()], vec![]);
        let a = raw(&t, vec![t.a(0)], vec![]);
        let s = raw(&t, vec![ab], vec![]);
        assert!(equivalent_involution(&e, &a, 1000).unwrap().is_some());
        assert!(equivalent_involution(&e, &s, 1000).unwrap().is_none());
        assert!(weakly_equivalent(&e, &s, 1000).unwrap().is_some());
        let two = raw(&t, vec![t.identity(), t.a(0)], vec![]);
        let shifted = raw(&t, vec![ab, t.b(0)], vec![]);
        assert!(weakly_equivalent(&two, &shifted, 1000).unwrap().is_some());
        let other_s = raw(&t, vec![t.identity()], vec![1]);
        assert!(weakly_equivalent(&e, &other_s, 1000).unwrap().is_none());
    }
}
