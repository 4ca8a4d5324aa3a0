//! Finite abelian groups `T = (H₁'×H₁'')×…×(H_r'×H_r'')` with their
//! canonical symplectic basis `a₁, b₁, …, a_r, b_r` and the alternating
//! bicharacter `β`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Cyclotomic;

/// Largest supported number of symplectic pairs.
pub const MAX_PAIRS: usize = 4;

/// Exponent vector `(i₁, j₁, …, i_r, j_r)` with respect to the symplectic basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionElement {
    exps: [u8; 2 * MAX_PAIRS],
    len: u8,
}

impl TorsionElement {
    pub fn identity(rank: usize) -> Self {
        TorsionElement {
            exps: [0; 2 * MAX_PAIRS],
            len: (2 * rank) as u8,
        }
    }

    pub fn from_exps(exps: &[u8]) -> Self {
        assert!(exps.len() <= 2 * MAX_PAIRS && exps.len().is_multiple_of(2));
        let mut e = Self::identity(exps.len() / 2);
        e.exps[..exps.len()].copy_from_slice(exps);
        e
    }

    pub fn exps(&self) -> &[u8] {
        &self.exps[..self.len as usize]
    }

    pub fn rank(&self) -> usize {
        self.len as usize / 2
    }

    /// `i_k`, the exponent of `a_k`.
    pub fn i(&self, k: usize) -> u8 {
        self.exps[2 * k]
    }

    /// `j_k`, the exponent of `b_k`.
    pub fn j(&self, k: usize) -> u8 {
        self.exps[2 * k + 1]
    }

    pub fn is_identity(&self) -> bool {
        self.exps().iter().all(|&x| x == 0)
    }

    /// Packs an element of an elementary 2-group: bit `2k` is `i_k`, bit `2k+1` is `j_k`.
    pub fn to_bits(&self) -> u8 {
        self.exps()
            .iter()
            .enumerate()
            .fold(0u8, |acc, (p, &x)| acc | ((x & 1) << p))
    }

    pub fn from_bits(rank: usize, bits: u8) -> Self {
        let mut e = Self::identity(rank);
        for p in 0..2 * rank {
            e.exps[p] = (bits >> p) & 1;
        }
        e
    }

    /// Parses the textual form: one base-36 digit per coordinate, pairs
    /// separated by spaces (`"10 01"`); `"e"` names the identity.
    pub fn parse(s: &str, group: &TorsionGroup) -> Result<Self> {
        let s = s.trim();
        if s == "e" {
            return Ok(group.identity());
        }
        let digits: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if digits.len() != 2 * group.rank() {
            return Err(Error::Parse(format!(
                "element '{s}' needs {} digits for a group with {} pairs",
                2 * group.rank(),
                group.rank()
            )));
        }
        let mut e = group.identity();
        for (p, c) in digits.iter().enumerate() {
            let d = c
                .to_digit(36)
                .ok_or_else(|| Error::Parse(format!("bad digit '{c}' in '{s}'")))?;
            let l = group.orders[p / 2] as u32;
            if d >= l {
                return Err(Error::Parse(format!("exponent {d} in '{s}' is not reduced mod {l}")));
            }
            e.exps[p] = d as u8;
        }
        Ok(e)
    }
}

impl fmt::Display for TorsionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return write!(f, "e");
        }
        for k in 0..self.rank() {
            if k > 0 {
                write!(f, " ")?;
            }
            let d = |x: u8| std::char::from_digit(x as u32, 36).unwrap();
            write!(f, "{}{}", d(self.i(k)), d(self.j(k)))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TorsionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// `T` given by the cyclic orders `ℓ₁, …, ℓ_r` of its symplectic pairs.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorsionGroup {
    orders: Vec<u8>,
}

impl fmt::Debug for TorsionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{:?}", self.orders)
    }
}

fn is_prime_power(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|p| n.is_multiple_of(*p)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

impl TorsionGroup {
    pub fn new(orders: Vec<u8>) -> Result<Self> {
        if orders.len() > MAX_PAIRS {
            return Err(Error::Domain(format!(
                "at most {MAX_PAIRS} symplectic pairs are supported"
            )));
        }
        if let Some(&l) = orders.iter().find(|&&l| !is_prime_power(l as u32) || l > 36) {
            return Err(Error::Domain(format!(
                "pair order {l} is not a prime power below 37"
            )));
        }
        Ok(TorsionGroup { orders })
    }

    pub fn trivial() -> Self {
        TorsionGroup { orders: Vec::new() }
    }

    /// The elementary 2-group `Z₂^{2r}`.
    pub fn elementary(r: usize) -> Self {
        assert!(r <= MAX_PAIRS);
        TorsionGroup { orders: vec![2; r] }
    }

    pub fn orders(&self) -> &[u8] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().map(|&l| (l as u64).pow(2)).product()
    }

    /// `ℓ = √|T|`, the size of the Pauli matrices.
    pub fn sqrt_order(&self) -> usize {
        self.orders.iter().map(|&l| l as usize).product()
    }

    /// Least common multiple of the pair orders.
    pub fn exponent(&self) -> u32 {
        self.orders.iter().fold(1u32, |a, &l| a.lcm(&(l as u32)))
    }

    pub fn is_elementary2(&self) -> bool {
        self.orders.iter().all(|&l| l == 2)
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// Dimension over `F₂`; only meaningful for elementary 2-groups.
    pub fn dim(&self) -> usize {
        2 * self.rank()
    }

    pub fn identity(&self) -> TorsionElement {
        TorsionElement::identity(self.rank())
    }

    pub fn a(&self, k: usize) -> TorsionElement {
        let mut e = self.identity();
        e.exps[2 * k] = 1;
        e
    }

    pub fn b(&self, k: usize) -> TorsionElement {
        let mut e = self.identity();
        e.exps[2 * k + 1] = 1;
        e
    }

    /// Basis element number `p` in the order `a₁, b₁, a₂, …`.
    pub fn basis(&self, p: usize) -> TorsionElement {
        let mut e = self.identity();
        e.exps[p] = 1;
        e
    }

    /// Order of basis element number `p`.
    pub fn basis_order(&self, p: usize) -> u8 {
        self.orders[p / 2]
    }

    pub fn mul(&self, u: &TorsionElement, v: &TorsionElement) -> TorsionElement {
        let mut w = *u;
        for p in 0..2 * self.rank() {
            w.exps[p] = ((u.exps[p] as u16 + v.exps[p] as u16) % self.orders[p / 2] as u16) as u8;
        }
        w
    }

    pub fn inv(&self, u: &TorsionElement) -> TorsionElement {
        let mut w = *u;
        for p in 0..2 * self.rank() {
            let l = self.orders[p / 2];
            w.exps[p] = (l - u.exps[p]) % l;
        }
        w
    }

    pub fn div(&self, u: &TorsionElement, v: &TorsionElement) -> TorsionElement {
        self.mul(u, &self.inv(v))
    }

    pub fn pow(&self, u: &TorsionElement, n: i64) -> TorsionElement {
        let mut w = *u;
        for p in 0..2 * self.rank() {
            let l = self.orders[p / 2] as i64;
            w.exps[p] = ((u.exps[p] as i64 * n).rem_euclid(l)) as u8;
        }
        w
    }

    pub fn element_order(&self, u: &TorsionElement) -> u32 {
        (0..2 * self.rank()).fold(1u32, |acc, p| {
            let l = self.orders[p / 2] as u32;
            let x = u.exps[p] as u32;
            acc.lcm(&(l / l.gcd(&x)))
        })
    }

    /// All elements in lexicographic order of exponent vectors.
    pub fn elements(&self) -> Vec<TorsionElement> {
        let mut out = vec![self.identity()];
        for p in 0..2 * self.rank() {
            let l = self.orders[p / 2];
            let mut next = Vec::with_capacity(out.len() * l as usize);
            for e in &out {
                for x in 0..l {
                    let mut f = *e;
                    f.exps[p] = x;
                    next.push(f);
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Dense index in `0..|T|`, consistent with [`TorsionGroup::elements`].
    pub fn index(&self, u: &TorsionElement) -> usize {
        let mut idx = 0usize;
        for p in 0..2 * self.rank() {
            idx = idx * self.orders[p / 2] as usize + u.exps[p] as usize;
        }
        idx
    }

    /// `β(u, v)` as the exponent of `ζ_E`, `E` the group exponent.
    pub fn beta_exp(&self, u: &TorsionElement, v: &TorsionElement) -> u32 {
        let e = self.exponent() as i64;
        let mut acc = 0i64;
        for k in 0..self.rank() {
            let l = self.orders[k] as i64;
            let x = u.i(k) as i64 * v.j(k) as i64 - u.j(k) as i64 * v.i(k) as i64;
            acc += x * (e / l);
        }
        acc.rem_euclid(e) as u32
    }

    /// `β(u, v) = Π_k ε_k^{i_k(u) j_k(v) − j_k(u) i_k(v)}` with `ε_k = ζ_{ℓ_k}`.
    pub fn beta(&self, u: &TorsionElement, v: &TorsionElement) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.exponent(), self.beta_exp(u, v) as i64)
    }

    /// Symplectic form `ω(u, v) ∈ F₂` with `β(u, v) = (−1)^{ω(u, v)}` on an
    /// elementary 2-group.
    pub fn omega(&self, u: &TorsionElement, v: &TorsionElement) -> u8 {
        omega_bits(u.to_bits(), v.to_bits())
    }

    /// The quadratic form `Q(t) = Σ i_k j_k` with `β(t) = (−1)^{Q(t)}`.
    pub fn quad(&self, t: &TorsionElement) -> Result<u8> {
        self.require_elementary2("quadratic sign")?;
        Ok(quad_bits(t.to_bits()))
    }

    /// The transpose sign `β(t) = ±1` of `X_t`.
    pub fn quad_sign(&self, t: &TorsionElement) -> Result<i8> {
        Ok(if self.quad(t)? == 0 { 1 } else { -1 })
    }

    pub(crate) fn require_elementary2(&self, what: &str) -> Result<()> {
        if self.is_elementary2() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{what} needs an elementary 2-group, got {self:?}"
            )))
        }
    }

    /// `T₊` or `T₋`: the elements of the given transpose sign.
    pub fn sign_class(&self, sign: i8) -> Result<Vec<TorsionElement>> {
        self.require_elementary2("sign class")?;
        Ok(self
            .elements()
            .into_iter()
            .filter(|t| self.quad_sign(t).unwrap() == sign)
            .collect())
    }
}

/// `ω` on packed elements.
pub fn omega_bits(u: u8, v: u8) -> u8 {
    const A: u8 = 0b0101_0101;
    let x = (u & A) & ((v >> 1) & A);
    let y = ((u >> 1) & A) & (v & A);
    ((x.count_ones() + y.count_ones()) & 1) as u8
}

/// `Q` on packed elements.
pub fn quad_bits(t: u8) -> u8 {
    const A: u8 = 0b0101_0101;
    ((t & (t >> 1) & A).count_ones() & 1) as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_examples() {
        let t = TorsionGroup::elementary(1);
        assert_eq!(t.beta(&t.a(0), &t.b(0)), Cyclotomic::from_integer(2, -1));
        for u in t.elements() {
            assert!(t.beta(&t.identity(), &u).is_one());
            assert!(t.beta(&u, &u).is_one());
        }
        let t3 = TorsionGroup::new(vec![3]).unwrap();
        assert_eq!(t3.beta(&t3.a(0), &t3.b(0)), Cyclotomic::root_of_unity(3, 1));
        assert_eq!(t3.beta(&t3.b(0), &t3.a(0)), Cyclotomic::root_of_unity(3, 2));
    }

    #[test]
    fn quad_examples() {
        let t = TorsionGroup::elementary(1);
        let ab = t.mul(&t.a(0), &t.b(0));
        assert_eq!(t.quad_sign(&t.identity()).unwrap(), 1);
        assert_eq!(t.quad_sign(&t.a(0)).unwrap(), 1);
        assert_eq!(t.quad_sign(&t.b(0)).unwrap(), 1);
        assert_eq!(t.quad_sign(&ab).unwrap(), -1);
        let t2 = TorsionGroup::elementary(2);
        assert_eq!(t2.sign_class(1).unwrap().len(), 10);
        assert_eq!(t2.sign_class(-1).unwrap().len(), 6);
        assert!(TorsionGroup::new(vec![4]).unwrap().quad_sign(&t.identity()).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let t = TorsionGroup::new(vec![2, 3]).unwrap();
        for u in t.elements() {
            assert_eq!(TorsionElement::parse(&u.to_string(), &t).unwrap(), u);
        }
        assert_eq!(TorsionElement::parse("e", &t).unwrap(), t.identity());
        assert_eq!(TorsionElement::parse("10 01", &t).unwrap().exps(), &[1, 0, 0, 1]);
        assert!(TorsionElement::parse("20 00", &t).is_err());
        assert!(TorsionElement::parse("1", &t).is_err());
        assert_eq!(TorsionGroup::trivial().identity().to_string(), "e");
    }

    #[test]
    fn indexing_matches_order() {
        let t = TorsionGroup::new(vec![3, 2]).unwrap();
        for (n, u) in t.elements().iter().enumerate() {
            assert_eq!(t.index(u), n);
        }
        assert_eq!(t.elements().len() as u64, t.order());
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(TorsionGroup::new(vec![6]).is_err());
        assert!(TorsionGroup::new(vec![1]).is_err());
        assert!(TorsionGroup::new(vec![2; 5]).is_err());
    }
}
