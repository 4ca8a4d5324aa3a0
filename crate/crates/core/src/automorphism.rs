//! Linear maps on `M_k(D)` that send each basis element `E_ij ⊗ X_t` to a
//! multiple of another one, and the symbolic (anti)automorphisms
//! `X ↦ Ψ ψ₀(X) Ψ⁻¹` with `Ψ = PD` that produce them.

use std::collections::HashMap;

use crate::division::{GradedDivisionAlgebra, Homog, Pauli};
use crate::error::{Error, Result};
use crate::grading::{BasisElement, GradedMatrixAlgebra, SupportElement};
use crate::matrix::Matrix;
use crate::scalar::Cyclotomic;
use crate::symplectic::SymplecticMap;
use crate::torsion::{TorsionElement, TorsionGroup};

/// A scaled permutation of the basis `{E_ij ⊗ X_t}`.
///
/// With `anti` set the map is an anti-automorphism of `R`; the Lie
/// automorphism it stands for is its negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisMap {
    images: Vec<(Cyclotomic, usize)>,
    anti: bool,
}

impl BasisMap {
    pub fn identity(alg: &GradedMatrixAlgebra) -> Self {
        let one = alg.pauli().one();
        BasisMap {
            images: (0..alg.basis_len()).map(|i| (one.clone(), i)).collect(),
            anti: false,
        }
    }

    /// Builds the map from its action on basis elements.
    pub fn from_fn(
        alg: &GradedMatrixAlgebra,
        anti: bool,
        mut f: impl FnMut(&BasisElement) -> Result<(Cyclotomic, BasisElement)>,
    ) -> Result<Self> {
        let mut images = Vec::with_capacity(alg.basis_len());
        for idx in 0..alg.basis_len() {
            let (c, b) = f(&alg.basis_element(idx))?;
            if c.is_zero() {
                return Err(Error::Verification("basis element mapped to zero".into()));
            }
            images.push((c, alg.basis_index(&b)));
        }
        let mut hit = vec![false; images.len()];
        for (_, j) in &images {
            if std::mem::replace(&mut hit[*j], true) {
                return Err(Error::Verification("basis map is not bijective".into()));
            }
        }
        Ok(BasisMap { images, anti })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_anti(&self) -> bool {
        self.anti
    }

    /// `(c, j)` with `b_idx ↦ c·b_j`.
    pub fn image(&self, idx: usize) -> (&Cyclotomic, usize) {
        let (c, j) = &self.images[idx];
        (c, *j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BasisMap) -> BasisMap {
        BasisMap {
            images: other
                .images
                .iter()
                .map(|(c, j)| {
                    let (d, k) = &self.images[*j];
                    (c * d, *k)
                })
                .collect(),
            anti: self.anti ^ other.anti,
        }
    }

    pub fn inverse(&self) -> Result<BasisMap> {
        let mut images = vec![None; self.images.len()];
        for (i, (c, j)) in self.images.iter().enumerate() {
            images[*j] = Some((c.inv()?, i));
        }
        Ok(BasisMap {
            images: images.into_iter().map(Option::unwrap).collect(),
            anti: self.anti,
        })
    }

    pub fn pow(&self, n: u32) -> BasisMap {
        let mut acc = BasisMap {
            images: (0..self.len()).map(|i| (self.images[0].0.one_like(), i)).collect(),
            anti: false,
        };
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        !self.anti && self.images.iter().enumerate().all(|(i, (c, j))| i == *j && c.is_one())
    }

    /// If every basis element is an eigenvector, the eigenvalues.
    pub fn eigenvalues(&self) -> Option<Vec<Cyclotomic>> {
        if self.anti {
            return None;
        }
        self.images
            .iter()
            .enumerate()
            .map(|(i, (c, j))| (i == *j).then(|| c.clone()))
            .collect()
    }

    /// Checks `f(xy) = f(x)f(y)` (or `f(y)f(x)` for anti maps) on all pairs
    /// of basis elements.
    pub fn check_multiplicative(&self, alg: &GradedMatrixAlgebra) -> Result<()> {
        let k = alg.blocks();
        // Block coherence: E_ij ⊗ * lands in one block pair, given by a
        // permutation of rows and columns; zero products then stay zero.
        let mut row = vec![usize::MAX; k];
        let mut col = vec![usize::MAX; k];
        for idx in 0..self.len() {
            let b = alg.basis_element(idx);
            let img = alg.basis_element(self.images[idx].1);
            let (r, c) = if self.anti { (img.j, img.i) } else { (img.i, img.j) };
            for (slot, v) in [(&mut row[b.i], r), (&mut col[b.j], c)] {
                if *slot == usize::MAX {
                    *slot = v;
                } else if *slot != v {
                    return Err(Error::Verification("basis map is not block-monomial".into()));
                }
            }
        }
        if row != col {
            return Err(Error::Verification("row and column block maps differ".into()));
        }
        let elems = alg.group().elements();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    for u in &elems {
                        for v in &elems {
                            let x = BasisElement { i, j, t: *u };
                            let y = BasisElement { i: j, j: l, t: *v };
                            let (sxy, xy) = alg.basis_product(&x, &y).unwrap();
                            let (c1, b1) = self.images[alg.basis_index(&x)].clone();
                            let (c2, b2) = self.images[alg.basis_index(&y)].clone();
                            let (e1, e2) = (alg.basis_element(b1), alg.basis_element(b2));
                            let prod = if self.anti {
                                alg.basis_product(&e2, &e1)
                            } else {
                                alg.basis_product(&e1, &e2)
                            };
                            let (c3, b3) = &self.images[alg.basis_index(&xy)];
                            let ok = match prod {
                                Some((s, b)) => {
                                    alg.basis_index(&b) == *b3 && &(&c1 * &c2) * &s == &sxy * c3
                                }
                                None => false,
                            };
                            if !ok {
                                return Err(Error::Verification(format!(
                                    "map is not multiplicative at {x} * {y}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The permutation of the support induced by the map, read off the
    /// images of component bases. Fails if a component is split.
    pub fn support_permutation(&self, alg: &GradedMatrixAlgebra) -> Result<HashMap<SupportElement, SupportElement>> {
        let mut out = HashMap::new();
        for (z, basis) in alg.components() {
            let mut target = None;
            for b in basis {
                let w = alg.degree_of_index(self.images[alg.basis_index(b)].1);
                match target {
                    None => target = Some(w),
                    Some(t) if t != w => {
                        return Err(Error::Verification(format!("component {z} is split by the map")))
                    }
                    _ => {}
                }
            }
            out.insert(*z, target.unwrap());
        }
        Ok(out)
    }

    /// The matrix of the image of `b` as an `n × n` matrix.
    pub fn image_matrix(&self, alg: &GradedMatrixAlgebra, d: &GradedDivisionAlgebra, idx: usize) -> Matrix {
        let (c, j) = &self.images[idx];
        alg.basis_matrix(d, &alg.basis_element(*j)).scale(c)
    }
}

/// An `ℓ`-th root of `value` inside its own field, with the least exponent.
pub(crate) fn root_in_field(value: &Cyclotomic, l: u32) -> Option<Cyclotomic> {
    let (k, n) = value.as_root_of_unity()?;
    (0..n)
        .find(|e| (e * l) % n == k)
        .map(|e| value.root_like(n, e as i64))
}

/// An automorphism `ψ₀` of `D` with `ψ₀(X_t) = c_t X_{α(t)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionMap {
    alpha: SymplecticMap,
    /// `ψ₀(X_t)` indexed by `T::index(t)`.
    table: Vec<Homog>,
}

impl DivisionMap {
    pub fn identity(p: &Pauli) -> Self {
        let t = p.group();
        DivisionMap {
            alpha: SymplecticMap::identity(t),
            table: t.elements().into_iter().map(|x| p.basis(x)).collect(),
        }
    }

    /// The automorphism over `α` whose generator scalars `c_p` are the
    /// least roots of unity with `(c_p X_{α(p)})^{ℓ_p} = 1`.
    pub fn normalized(p: &Pauli, alpha: &SymplecticMap) -> Result<Self> {
        let t = p.group();
        let mut gens = Vec::with_capacity(t.dim());
        for q in 0..t.dim() {
            let img = alpha.apply(t, &t.basis(q));
            let l = t.basis_order(q) as u32;
            let s = p.pow(&p.basis(img), l);
            debug_assert!(s.deg.is_identity());
            let c = root_in_field(&s.coeff.inv()?, l).ok_or_else(|| {
                Error::Verification(format!("no {l}-th root of the generator scalar in the context field"))
            })?;
            gens.push(Homog { coeff: c, deg: img });
        }
        let table = t
            .elements()
            .into_iter()
            .map(|x| {
                let mut acc = p.scalar(p.one());
                for (q, &e) in x.exps().iter().enumerate() {
                    for _ in 0..e {
                        acc = p.mul(&acc, &gens[q]);
                    }
                }
                acc
            })
            .collect();
        let map = DivisionMap {
            alpha: alpha.clone(),
            table,
        };
        map.verify(p)?;
        Ok(map)
    }

    pub fn alpha(&self) -> &SymplecticMap {
        &self.alpha
    }

    /// `ψ₀(X_t)`.
    pub fn image(&self, t: &TorsionGroup, x: &TorsionElement) -> &Homog {
        &self.table[t.index(x)]
    }

    pub fn apply(&self, p: &Pauli, h: &Homog) -> Homog {
        let img = self.image(p.group(), &h.deg);
        Homog {
            coeff: &img.coeff * &h.coeff,
            deg: img.deg,
        }
    }

    /// `ψ₀(X_u)ψ₀(X_v) = σ(u,v)ψ₀(X_{uv})` for all `u, v`.
    pub fn verify(&self, p: &Pauli) -> Result<()> {
        let t = p.group();
        let elems = t.elements();
        for u in &elems {
            for v in &elems {
                let lhs = p.mul(self.image(t, u), self.image(t, v));
                let uv = p.mul(&p.basis(*u), &p.basis(*v));
                if lhs != self.apply(p, &uv) {
                    return Err(Error::Verification(format!("ψ₀ is not multiplicative at ({u}, {v})")));
                }
            }
        }
        Ok(())
    }

    pub fn compose(&self, p: &Pauli, other: &DivisionMap) -> DivisionMap {
        let t = p.group();
        DivisionMap {
            alpha: self.alpha.compose(t, &other.alpha),
            table: other.table.iter().map(|h| self.apply(p, h)).collect(),
        }
    }
}

/// `X ↦ Ψ ψ₀(X') Ψ⁻¹` with `Ψ = Σ_i E_{π(i),i} ⊗ d_i`, where `X'` is `X`
/// or its transpose when `flip` is set.
#[derive(Clone, Debug)]
pub struct SymbolicAutomorphism {
    pub perm: Vec<usize>,
    pub diag: Vec<Homog>,
    pub division: DivisionMap,
    pub flip: bool,
}

impl SymbolicAutomorphism {
    pub fn identity(alg: &GradedMatrixAlgebra) -> Self {
        let p = alg.pauli();
        SymbolicAutomorphism {
            perm: (0..alg.blocks()).collect(),
            diag: vec![p.scalar(p.one()); alg.blocks()],
            division: DivisionMap::identity(p),
            flip: false,
        }
    }

    /// Degrees `u_i` of the diagonal entries.
    pub fn degrees(&self) -> Vec<TorsionElement> {
        self.diag.iter().map(|h| h.deg).collect()
    }

    pub fn to_basis_map(&self, alg: &GradedMatrixAlgebra) -> Result<BasisMap> {
        let p = alg.pauli();
        let inv: Vec<Homog> = self.diag.iter().map(|d| p.inv(d)).collect::<Result<_>>()?;
        BasisMap::from_fn(alg, self.flip, |b| {
            let (i, j, x) = if self.flip {
                (b.j, b.i, p.transpose(&p.basis(b.t)))
            } else {
                (b.i, b.j, p.basis(b.t))
            };
            let h = p.mul(&p.mul(&self.diag[i], &self.division.apply(p, &x)), &inv[j]);
            Ok((
                h.coeff,
                BasisElement {
                    i: self.perm[i],
                    j: self.perm[j],
                    t: h.deg,
                },
            ))
        })
    }

    /// Image of a support element computed from degrees alone:
    /// `z_{i,j,t} ↦ z_{π(i),π(j),u_i α(t) u_j⁻¹}`, after `z_{i,j,t} ↦ z_{j,i,t'}`
    /// for the flip.
    pub fn map_support(&self, alg: &GradedMatrixAlgebra, z: &SupportElement) -> SupportElement {
        let t = alg.group();
        let (i, j, w) = if self.flip {
            (z.j, z.i, alg.pauli().transpose_basis(&z.t).1)
        } else {
            (z.i, z.j, z.t)
        };
        let u = self.degrees();
        let img = t.div(&t.mul(&u[i], &self.division.alpha().apply(t, &w)), &u[j]);
        alg.spec().canonical(self.perm[i], self.perm[j], img)
    }

    /// The exact `n × n` matrix `Ψ` (only meaningful when `ψ₀` is the identity).
    pub fn psi_matrix(&self, d: &GradedDivisionAlgebra) -> Matrix {
        let l = d.size();
        let k = self.perm.len();
        let mut m = Matrix::zero(k * l, d.pauli().conductor());
        for (i, h) in self.diag.iter().enumerate() {
            m.put_block(self.perm[i] * l, i * l, &d.matrix_of(h));
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::GradingSpec;
    use crate::symplectic::AutGroup;

    fn alg(spec: &GradingSpec) -> GradedMatrixAlgebra {
        GradedMatrixAlgebra::new(spec).unwrap()
    }

    #[test]
    fn identity_is_multiplicative() {
        let t = TorsionGroup::elementary(1);
        let a = alg(&GradingSpec::raw_m(t, 2).unwrap());
        let id = BasisMap::identity(&a);
        id.check_multiplicative(&a).unwrap();
        assert!(id.is_identity());
        assert!(id.compose(&id.inverse().unwrap()).is_identity());
    }

    #[test]
    fn division_maps_for_all_automorphisms() {
        for orders in [vec![2], vec![3], vec![4], vec![2, 2]] {
            let t = TorsionGroup::new(orders).unwrap();
            let p = Pauli::new(&t);
            let aut = AutGroup::new(&t, 1 << 20).unwrap();
            for alpha in aut.elements(1 << 20).unwrap().iter().step_by(7) {
                let m = DivisionMap::normalized(&p, alpha).unwrap();
                assert_eq!(m.alpha(), alpha);
            }
        }
    }

    #[test]
    fn psi_matches_matrix_conjugation() {
        let t = TorsionGroup::new(vec![3]).unwrap();
        let spec = GradingSpec::raw_m(t.clone(), 3).unwrap();
        let a = alg(&spec);
        let d = GradedDivisionAlgebra::build_pauli(&t).unwrap();
        let p = a.pauli();
        let psi = SymbolicAutomorphism {
            perm: vec![2, 0, 1],
            diag: vec![
                p.basis(t.a(0)),
                Homog { coeff: p.root(1), deg: t.b(0) },
                p.basis(t.mul(&t.a(0), &t.b(0))),
            ],
            division: DivisionMap::identity(p),
            flip: false,
        };
        let f = psi.to_basis_map(&a).unwrap();
        f.check_multiplicative(&a).unwrap();
        let big = psi.psi_matrix(&d);
        let big_inv = big.inverse().unwrap();
        for idx in (0..a.basis_len()).step_by(5) {
            let e = a.basis_matrix(&d, &a.basis_element(idx));
            assert_eq!(&(&big * &e) * &big_inv, f.image_matrix(&a, &d, idx));
        }
        let perm = f.support_permutation(&a).unwrap();
        for (z, w) in perm {
            assert_eq!(psi.map_support(&a, &z), w);
        }
    }

    #[test]
    fn flip_is_anti_multiplicative() {
        let t = TorsionGroup::new(vec![3]).unwrap();
        let a = alg(&GradingSpec::raw_m(t, 2).unwrap());
        let mut psi = SymbolicAutomorphism::identity(&a);
        psi.flip = true;
        let f = psi.to_basis_map(&a).unwrap();
        assert!(f.is_anti());
        f.check_multiplicative(&a).unwrap();
        assert!(f.compose(&f).is_identity());
        let perm = f.support_permutation(&a).unwrap();
        for (z, w) in perm {
            assert_eq!(psi.map_support(&a, &z), w);
        }
    }

    #[test]
    fn root_choice_is_least() {
        let minus = Cyclotomic::from_integer(8, -1);
        assert_eq!(root_in_field(&minus, 2).unwrap(), Cyclotomic::root_of_unity(4, 1));
        assert!(root_in_field(&Cyclotomic::from_integer(4, -1), 4).is_none());
    }
}
