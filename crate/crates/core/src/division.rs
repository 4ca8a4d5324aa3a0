//! The graded division algebra `D = F^σ T` realized by generalized Pauli
//! matrices, and the symbolic calculus of its homogeneous elements.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{lcm, Cyclotomic};
use crate::torsion::{TorsionElement, TorsionGroup};

/// Largest Pauli matrix size that [`GradedDivisionAlgebra::build_pauli`] accepts.
pub const MAX_PAULI_SIZE: usize = 64;

/// Conductor used for all scalars attached to `T`: `lcm(4, 2·exp T)`.
///
/// Roots of order `2ℓ` appear when normalizing images of `X_{a_k}` under
/// automorphisms of `D` whose `ℓ`-th power is `−1`.
pub fn context_conductor(t: &TorsionGroup) -> u32 {
    lcm(4, 2 * t.exponent())
}

/// A homogeneous element `c·X_t` of `D`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Homog {
    pub coeff: Cyclotomic,
    pub deg: TorsionElement,
}

/// Symbolic arithmetic in `F^σ T`.
#[derive(Clone, Debug)]
pub struct Pauli {
    group: TorsionGroup,
    m: u32,
}

impl Pauli {
    pub fn new(group: &TorsionGroup) -> Self {
        Pauli {
            group: group.clone(),
            m: context_conductor(group),
        }
    }

    pub fn group(&self) -> &TorsionGroup {
        &self.group
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// `ζ_E^k` in the context field, `E` the exponent of `T`.
    pub fn root(&self, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.m, k * (self.m / self.group.exponent()) as i64)
    }

    pub fn one(&self) -> Cyclotomic {
        Cyclotomic::one(self.m)
    }

    /// Exponent of `ζ_E` in `σ(u, v) = Π_k ε_k^{−j_k(u) i_k(v)}`.
    pub fn cocycle_exp(&self, u: &TorsionElement, v: &TorsionElement) -> u32 {
        let e = self.group.exponent() as i64;
        let mut acc = 0i64;
        for (k, &l) in self.group.orders().iter().enumerate() {
            acc -= u.j(k) as i64 * v.i(k) as i64 * (e / l as i64);
        }
        acc.rem_euclid(e) as u32
    }

    /// `σ(u, v)` with `X_u X_v = σ(u, v) X_{uv}`.
    pub fn cocycle(&self, u: &TorsionElement, v: &TorsionElement) -> Cyclotomic {
        self.root(self.cocycle_exp(u, v) as i64)
    }

    /// `β(u, v)` in the context field.
    pub fn beta(&self, u: &TorsionElement, v: &TorsionElement) -> Cyclotomic {
        self.root(self.group.beta_exp(u, v) as i64)
    }

    pub fn basis(&self, t: TorsionElement) -> Homog {
        Homog {
            coeff: self.one(),
            deg: t,
        }
    }

    pub fn scalar(&self, c: Cyclotomic) -> Homog {
        Homog {
            coeff: c,
            deg: self.group.identity(),
        }
    }

    pub fn mul(&self, x: &Homog, y: &Homog) -> Homog {
        Homog {
            coeff: &(&x.coeff * &y.coeff) * &self.cocycle(&x.deg, &y.deg),
            deg: self.group.mul(&x.deg, &y.deg),
        }
    }

    pub fn inv(&self, x: &Homog) -> Result<Homog> {
        let ti = self.group.inv(&x.deg);
        // X_t X_{t⁻¹} = σ(t, t⁻¹).
        let s = self.cocycle(&x.deg, &ti);
        Ok(Homog {
            coeff: (&x.coeff * &s).inv()?,
            deg: ti,
        })
    }

    pub fn pow(&self, x: &Homog, n: u32) -> Homog {
        let mut acc = self.scalar(self.one());
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Degree and scalar of the matrix transpose: `X_t^T = Π_k ε_k^{i_k j_k} X_{t'}`
    /// with `t' = (i_k, −j_k)`.
    pub fn transpose_basis(&self, t: &TorsionElement) -> (Cyclotomic, TorsionElement) {
        let e = self.group.exponent() as i64;
        let mut acc = 0i64;
        let mut exps = t.exps().to_vec();
        for (k, &l) in self.group.orders().iter().enumerate() {
            acc += t.i(k) as i64 * t.j(k) as i64 * (e / l as i64);
            exps[2 * k + 1] = (l - t.j(k)) % l;
        }
        (self.root(acc), TorsionElement::from_exps(&exps))
    }

    /// The transpose involution `φ₀` on a homogeneous element.
    pub fn transpose(&self, x: &Homog) -> Homog {
        let (c, d) = self.transpose_basis(&x.deg);
        Homog {
            coeff: &x.coeff * &c,
            deg: d,
        }
    }

    /// `β(t) = ±1` from the transpose, for an elementary 2-group.
    pub fn transpose_sign(&self, t: &TorsionElement) -> Result<i8> {
        self.group.require_elementary2("transpose sign")?;
        let (c, _) = self.transpose_basis(t);
        Ok(if c.is_one() { 1 } else { -1 })
    }
}

/// `D` together with its explicit Pauli matrices.
#[derive(Clone, Debug)]
pub struct GradedDivisionAlgebra {
    pauli: Pauli,
    mats: Vec<Matrix>,
}

impl GradedDivisionAlgebra {
    /// Builds every `X_t` as the ordered product `X_{a₁}^{i₁} X_{b₁}^{j₁} ⋯`
    /// of Kronecker-placed factors `X = diag(ε^{ℓ−1}, …, ε, 1)` and the
    /// cyclic shift `Y`.
    pub fn build_pauli(t: &TorsionGroup) -> Result<Self> {
        let size = t.sqrt_order();
        if size > MAX_PAULI_SIZE {
            return Err(Error::resource("Pauli matrix size", size, MAX_PAULI_SIZE as u64));
        }
        let pauli = Pauli::new(t);
        let m = pauli.conductor();
        let mut gens = Vec::with_capacity(t.dim());
        for (k, &l) in t.orders().iter().enumerate() {
            let l = l as usize;
            let eps_pow = |p: usize| Cyclotomic::root_of_unity(m, (p * m as usize / l) as i64);
            let x = Matrix::from_fn(l, |i, j| {
                if i == j {
                    eps_pow(l - 1 - i)
                } else {
                    Cyclotomic::zero(m)
                }
            });
            let y = Matrix::from_fn(l, |i, j| {
                Cyclotomic::from_integer(m, ((i + 1) % l == j) as i64)
            });
            for f in [x, y] {
                let mut acc = Matrix::identity(1, m);
                for (kk, &ll) in t.orders().iter().enumerate() {
                    let factor = if kk == k {
                        f.clone()
                    } else {
                        Matrix::identity(ll as usize, m)
                    };
                    acc = acc.kron(&factor);
                }
                gens.push(acc);
            }
        }
        let mats = t
            .elements()
            .iter()
            .map(|e| {
                let mut acc = Matrix::identity(size, m);
                for (p, &x) in e.exps().iter().enumerate() {
                    for _ in 0..x {
                        acc = &acc * &gens[p];
                    }
                }
                acc
            })
            .collect();
        Ok(GradedDivisionAlgebra { pauli, mats })
    }

    pub fn pauli(&self) -> &Pauli {
        &self.pauli
    }

    pub fn group(&self) -> &TorsionGroup {
        self.pauli.group()
    }

    pub fn size(&self) -> usize {
        self.group().sqrt_order()
    }

    pub fn x(&self, t: &TorsionElement) -> &Matrix {
        &self.mats[self.group().index(t)]
    }

    pub fn matrix_of(&self, h: &Homog) -> Matrix {
        self.x(&h.deg).scale(&h.coeff)
    }

    /// The coefficients `c_w` of a matrix in the basis `X_w`, computed as
    /// `tr(X_w⁻¹ A)/ℓ`.
    pub fn decompose(&self, a: &Matrix) -> Result<Vec<(TorsionElement, Cyclotomic)>> {
        let size = Cyclotomic::from_integer(self.pauli.conductor(), self.size() as i64).inv()?;
        let mut out = Vec::new();
        for t in self.group().elements() {
            let xi = self.pauli.inv(&self.pauli.basis(t))?;
            let c = (&self.matrix_of(&xi) * a).trace();
            if !c.is_zero() {
                out.push((t, &c * &size));
            }
        }
        Ok(out)
    }

    /// If the matrix is a multiple of a single `X_t`, returns it.
    pub fn as_homog(&self, a: &Matrix) -> Result<Option<Homog>> {
        let parts = self.decompose(a)?;
        Ok(match parts.as_slice() {
            [(t, c)] => Some(Homog { coeff: c.clone(), deg: *t }),
            _ => None,
        })
    }

    /// The map `t ↦ ±1` with `X_t^T = ±X_t`, read off the matrices.
    pub fn transpose_signs(&self) -> Result<Vec<(TorsionElement, i8)>> {
        self.group().require_elementary2("transpose signs")?;
        self.group()
            .elements()
            .into_iter()
            .map(|t| {
                let x = self.x(&t);
                let tr = x.transpose();
                if tr == *x {
                    Ok((t, 1))
                } else if tr.scale(&Cyclotomic::from_integer(2, -1)) == *x {
                    Ok((t, -1))
                } else {
                    Err(Error::Verification(format!("X_{t} is neither symmetric nor skew")))
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(m: u32, x: i64) -> Cyclotomic {
        Cyclotomic::from_integer(m, x)
    }

    #[test]
    fn z2_squared_matrices() {
        let t = TorsionGroup::elementary(1);
        let d = GradedDivisionAlgebra::build_pauli(&t).unwrap();
        let xa = Matrix::from_fn(2, |i, j| int(4, if i != j { 0 } else if i == 0 { -1 } else { 1 }));
        let xb = Matrix::from_fn(2, |i, j| int(4, (i != j) as i64));
        assert_eq!(d.x(&t.a(0)), &xa);
        assert_eq!(d.x(&t.b(0)), &xb);
        assert_eq!(d.x(&t.identity()), &Matrix::identity(2, 4));
        let ab = t.mul(&t.a(0), &t.b(0));
        let xab = Matrix::from_fn(2, |i, j| int(4, [[0, -1], [1, 0]][i][j]));
        assert_eq!(d.x(&ab), &xab);
    }

    #[test]
    fn cocycle_matches_matrices() {
        for orders in [vec![2, 2], vec![3], vec![4], vec![2, 3]] {
            let t = TorsionGroup::new(orders).unwrap();
            let d = GradedDivisionAlgebra::build_pauli(&t).unwrap();
            let p = d.pauli();
            for u in t.elements() {
                for v in t.elements() {
                    let lhs = d.x(&u) * d.x(&v);
                    let rhs = d.x(&t.mul(&u, &v)).scale(&p.cocycle(&u, &v));
                    assert_eq!(lhs, rhs);
                    let ratio = &p.cocycle(&u, &v) * &p.cocycle(&v, &u).inv().unwrap();
                    assert_eq!(ratio, t.beta(&u, &v));
                }
                assert!(p.cocycle(&u, &t.identity()).is_one());
                assert!(p.cocycle(&t.identity(), &u).is_one());
                let (c, w) = p.transpose_basis(&u);
                assert_eq!(d.x(&u).transpose(), d.x(&w).scale(&c));
            }
        }
    }

    #[test]
    fn transpose_signs_agree_with_quadratic_form() {
        for r in 1..=2 {
            let t = TorsionGroup::elementary(r);
            let d = GradedDivisionAlgebra::build_pauli(&t).unwrap();
            for (u, s) in d.transpose_signs().unwrap() {
                assert_eq!(s, t.quad_sign(&u).unwrap());
                assert_eq!(s, d.pauli().transpose_sign(&u).unwrap());
            }
        }
    }

    #[test]
    fn basis_is_independent() {
        let t = TorsionGroup::new(vec![3]).unwrap();
        let d = GradedDivisionAlgebra::build_pauli(&t).unwrap();
        let rows: Vec<Vec<Cyclotomic>> =
            t.elements().iter().map(|u| d.x(u).entries().to_vec()).collect();
        assert_eq!(Matrix::rank_of_rows(&rows), 9);
    }

    #[test]
    fn decomposition() {
        let t = TorsionGroup::new(vec![4]).unwrap();
        let d = GradedDivisionAlgebra::build_pauli(&t).unwrap();
        let u = TorsionElement::from_exps(&[3, 2]);
        let c = Cyclotomic::root_of_unity(8, 3);
        let h = d.as_homog(&d.x(&u).scale(&c)).unwrap().unwrap();
        assert_eq!((h.deg, h.coeff), (u, c));
        let inv = d.pauli().inv(&d.pauli().basis(u)).unwrap();
        assert_eq!(d.x(&u) * &d.matrix_of(&inv), Matrix::identity(4, 8));
    }
}
