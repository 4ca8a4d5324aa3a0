//! `Diag(Γ)`: automorphisms acting by a scalar on every component, realized
//! as conjugation by `diag(λ₁, …, λ_k) ⊗ X_t`.

use crate::automorphism::{BasisMap, DivisionMap, SymbolicAutomorphism};
use crate::division::Homog;
use crate::grading::{BasisElement, GradedMatrixAlgebra, GradingSpec};
use crate::error::Result;
use crate::scalar::Cyclotomic;
use crate::torsion::TorsionElement;

/// Conjugation by `diag(λ₁, …, λ_k) ⊗ X_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagElement {
    pub lambdas: Vec<Cyclotomic>,
    pub twist: TorsionElement,
}

impl DiagElement {
    pub fn identity(alg: &GradedMatrixAlgebra) -> Self {
        DiagElement {
            lambdas: vec![alg.pauli().one(); alg.blocks()],
            twist: alg.group().identity(),
        }
    }

    pub fn as_automorphism(&self, alg: &GradedMatrixAlgebra) -> SymbolicAutomorphism {
        let p = alg.pauli();
        SymbolicAutomorphism {
            perm: (0..alg.blocks()).collect(),
            diag: self
                .lambdas
                .iter()
                .map(|l| Homog {
                    coeff: l.clone(),
                    deg: self.twist,
                })
                .collect(),
            division: DivisionMap::identity(p),
            flip: false,
        }
    }

    /// `E_ij ⊗ X_w ↦ λ_i λ_j⁻¹ β(t, w) E_ij ⊗ X_w`.
    pub fn to_basis_map(&self, alg: &GradedMatrixAlgebra) -> Result<BasisMap> {
        let p = alg.pauli();
        let inv: Vec<Cyclotomic> = self.lambdas.iter().map(Cyclotomic::inv).collect::<Result<_>>()?;
        BasisMap::from_fn(alg, false, |b| {
            let c = &(&self.lambdas[b.i] * &inv[b.j]) * &p.beta(&self.twist, &b.t);
            Ok((c, *b))
        })
    }

    /// The common value of `λ_i²β(t, t_i)` (`i ≤ q`) and `λ_p λ_{p'}` (pairs),
    /// if the relation family holds. Matrix types impose no relation.
    pub fn relation_value(&self, spec: &GradingSpec) -> Option<Option<Cyclotomic>> {
        if !spec.series.has_phi() {
            return Some(None);
        }
        let t = &spec.group;
        let l = &self.lambdas;
        let mut vals: Vec<Cyclotomic> = (0..spec.q)
            .map(|i| &(&l[i] * &l[i]) * &t.beta(&self.twist, &spec.tau[i]))
            .collect();
        for j in 0..spec.s {
            let p = spec.q + 2 * j;
            vals.push(&l[p] * &l[p + 1]);
        }
        let first = vals[0].clone();
        vals.iter().all(|v| *v == first).then_some(Some(first))
    }
}

/// Decides whether `map` lies in `Diag(Γ)`; on success returns `(λ, t)` with
/// `map` equal to conjugation by `diag(λ) ⊗ X_t` and the relation family
/// satisfied.
pub fn diag_membership(map: &BasisMap, alg: &GradedMatrixAlgebra) -> Option<DiagElement> {
    let witness = diagonal_part(map, alg)?;
    witness.relation_value(alg.spec())?;
    Some(witness)
}

/// Decides whether `map` is conjugation by some `diag(λ) ⊗ X_t`, without
/// asking for compatibility with an anti-automorphism.
pub fn diagonal_part(map: &BasisMap, alg: &GradedMatrixAlgebra) -> Option<DiagElement> {
    let values = map.eigenvalues()?;
    // Constant on every component.
    for basis in alg.components().values() {
        let v0 = &values[alg.basis_index(&basis[0])];
        if basis.iter().any(|b| &values[alg.basis_index(b)] != v0) {
            return None;
        }
    }
    let t = alg.group();
    let p = alg.pauli();
    let diag_value = |w: &TorsionElement| &values[alg.basis_index(&BasisElement { i: 0, j: 0, t: *w })];
    let elems = t.elements();
    let twist = elems
        .iter()
        .find(|x| elems.iter().all(|w| p.beta(x, w) == *diag_value(w)))?;
    let lambdas = (0..alg.blocks())
        .map(|i| {
            values[alg.basis_index(&BasisElement {
                i,
                j: 0,
                t: t.identity(),
            })]
            .clone()
        })
        .collect();
    let witness = DiagElement {
        lambdas,
        twist: *twist,
    };
    (witness.to_basis_map(alg).ok()? == *map).then_some(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::GradingSpec;
    use crate::torsion::TorsionGroup;

    #[test]
    fn identity_is_diagonal() {
        let t = TorsionGroup::elementary(1);
        let spec = GradingSpec::raw_mphi(t.clone(), 1, 1, vec![t.identity()], vec![Cyclotomic::one(4)]).unwrap();
        let a = GradedMatrixAlgebra::new(&spec).unwrap();
        let w = diag_membership(&crate::automorphism::BasisMap::identity(&a), &a).unwrap();
        assert_eq!(w, DiagElement::identity(&a));
    }

    #[test]
    fn twisted_conjugation_is_diagonal() {
        let t = TorsionGroup::elementary(1);
        let spec = GradingSpec::raw_mphi(t.clone(), 1, 1, vec![t.identity()], vec![Cyclotomic::one(4)]).unwrap();
        let a = GradedMatrixAlgebra::new(&spec).unwrap();
        let z4 = Cyclotomic::root_of_unity(4, 1);
        let d = DiagElement {
            lambdas: vec![Cyclotomic::one(4), z4.clone(), z4.inv().unwrap()],
            twist: t.a(0),
        };
        assert!(d.relation_value(&spec).is_some());
        let m = d.to_basis_map(&a).unwrap();
        m.check_multiplicative(&a).unwrap();
        assert_eq!(diag_membership(&m, &a), Some(d));
        // Breaking the relation splits a component.
        let bad = DiagElement {
            lambdas: vec![Cyclotomic::one(4), z4.clone(), Cyclotomic::one(4)],
            twist: t.a(0),
        };
        assert!(bad.relation_value(&spec).is_none());
        assert!(diag_membership(&bad.to_basis_map(&a).unwrap(), &a).is_none());
    }

    #[test]
    fn block_permutation_is_not_diagonal() {
        let spec = GradingSpec::raw_m(TorsionGroup::trivial(), 3).unwrap();
        let a = GradedMatrixAlgebra::new(&spec).unwrap();
        let mut psi = SymbolicAutomorphism::identity(&a);
        psi.perm = vec![1, 0, 2];
        let m = psi.to_basis_map(&a).unwrap();
        assert!(diag_membership(&m, &a).is_none());
    }
}
