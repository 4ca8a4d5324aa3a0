//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! A value is stored in the power basis `1, ζ, …, ζ^{φ(m)-1}` modulo the
//! `m`-th cyclotomic polynomial, as integer numerators over one positive
//! common denominator. Values of different conductors meet in the field of
//! the least common multiple.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arithmetic data shared by every value of one conductor.
pub struct CycloField {
    m: u32,
    degree: usize,
    /// Coefficients of the monic cyclotomic polynomial, constant term first.
    poly: Vec<BigInt>,
    /// `ζ_N^k` for `k < N` where `N = lcm(2, m)`, reduced and trimmed.
    roots: Vec<Vec<BigInt>>,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(ζ_{})", self.m)
    }
}

fn field_cache() -> &'static RwLock<HashMap<u32, Arc<CycloField>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn poly_cache() -> &'static RwLock<HashMap<u32, Vec<BigInt>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `m`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "conductor must be positive");
    if let Some(p) = poly_cache().read().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by every Φ_d with d a proper divisor of m.
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    poly_cache().write().unwrap().insert(m, num.clone());
    num
}

/// Exact quotient of integer polynomials by a monic divisor.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = rem.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

pub fn euler_phi(m: u32) -> u32 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u32
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

impl CycloField {
    pub fn get(m: u32) -> Arc<CycloField> {
        assert!(m >= 1, "conductor must be positive");
        if let Some(f) = field_cache().read().unwrap().get(&m) {
            return f.clone();
        }
        let poly = cyclotomic_polynomial(m);
        let degree = poly.len() - 1;
        let mut field = CycloField {
            m,
            degree,
            poly,
            roots: Vec::new(),
        };
        let n = field.root_order();
        let mut roots = Vec::with_capacity(n as usize);
        if m.is_multiple_of(2) {
            let mut cur = vec![BigInt::one()];
            for _ in 0..n {
                roots.push(cur.clone());
                let mut next = Vec::with_capacity(cur.len() + 1);
                next.push(BigInt::zero());
                next.extend(cur);
                cur = field.reduce(next);
            }
        } else {
            // ζ_{2m} = -ζ_m^{(m+1)/2}.
            let base = CycloField::get_unit_powers(&field);
            let h = (m as u64).div_ceil(2);
            for k in 0..n as u64 {
                let mut v = base[((k * h) % m as u64) as usize].clone();
                if k % 2 == 1 {
                    v.iter_mut().for_each(|c| *c = -&*c);
                }
                roots.push(v);
            }
        }
        field.roots = roots;
        let field = Arc::new(field);
        field_cache()
            .write()
            .unwrap()
            .entry(m)
            .or_insert(field)
            .clone()
    }

    fn get_unit_powers(field: &CycloField) -> Vec<Vec<BigInt>> {
        let mut out = Vec::with_capacity(field.m as usize);
        let mut cur = vec![BigInt::one()];
        for _ in 0..field.m {
            out.push(cur.clone());
            let mut next = Vec::with_capacity(cur.len() + 1);
            next.push(BigInt::zero());
            next.extend(cur);
            cur = field.reduce(next);
        }
        out
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Order of the full group of roots of unity in this field.
    pub fn root_order(&self) -> u32 {
        if self.m.is_multiple_of(2) {
            self.m
        } else {
            2 * self.m
        }
    }

    /// Reduces an integer polynomial modulo the cyclotomic polynomial.
    fn reduce(&self, mut p: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree;
        if p.len() > d {
            for top in (d..p.len()).rev() {
                if p[top].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut p[top]);
                for i in 0..d {
                    if !self.poly[i].is_zero() {
                        p[top - d + i] -= &c * &self.poly[i];
                    }
                }
            }
            p.truncate(d);
        }
        trim(&mut p);
        p
    }

    /// Power-basis numerators of `ζ_n^k`; `n` must divide the root order.
    fn root_coeffs(&self, n: u32, k: i64) -> &[BigInt] {
        let big = self.root_order();
        assert!(big.is_multiple_of(n), "ζ_{n} does not lie in Q(ζ_{})", self.m);
        let e = (k.rem_euclid(n as i64) as u64 * (big / n) as u64) % big as u64;
        &self.roots[e as usize]
    }
}

/// An element of the cyclotomic field `Q(ζ_m)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CycloField>,
    /// Trimmed numerators; empty for zero.
    num: Vec<BigInt>,
    /// Positive denominator, coprime to the content of `num`.
    den: BigInt,
}

/// The arithmetic operations of [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ArithOutcome {
    Value(Cyclotomic),
    Bool(bool),
}

/// Applies `op` to `a` (and `b` for binary operations).
pub fn arith(a: &Cyclotomic, b: &Cyclotomic, op: ArithOp) -> Result<ArithOutcome> {
    Ok(match op {
        ArithOp::Add => ArithOutcome::Value(a + b),
        ArithOp::Mul => ArithOutcome::Value(a * b),
        ArithOp::Neg => ArithOutcome::Value(-a),
        ArithOp::Inv => ArithOutcome::Value(a.inv()?),
        ArithOp::Eq => ArithOutcome::Bool(a == b),
    })
}

impl Cyclotomic {
    fn from_parts(field: Arc<CycloField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut v = Cyclotomic { field, num, den };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        trim(&mut self.num);
        if self.num.is_empty() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            self.num.iter_mut().for_each(|c| *c = -&*c);
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            self.num.iter_mut().for_each(|c| *c /= &g);
        }
    }

    pub fn zero(m: u32) -> Self {
        Self::zero_in(CycloField::get(m))
    }

    pub fn one(m: u32) -> Self {
        Self::from_integer(m, 1)
    }

    pub fn zero_in(field: Arc<CycloField>) -> Self {
        Cyclotomic {
            field,
            num: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn from_integer(m: u32, n: i64) -> Self {
        Self::from_parts(CycloField::get(m), vec![BigInt::from(n)], BigInt::one())
    }

    pub fn from_rational(m: u32, q: &BigRational) -> Self {
        Self::from_parts(CycloField::get(m), vec![q.numer().clone()], q.denom().clone())
    }

    /// `ζ_m^k`, with `k` reduced modulo `m`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        let field = CycloField::get(m);
        let num = field.root_coeffs(m, k).to_vec();
        Cyclotomic {
            field,
            num,
            den: BigInt::one(),
        }
    }

    /// `ζ_n^k` as an element of this value's field; `n` must divide the
    /// order of the roots of unity there.
    pub fn root_like(&self, n: u32, k: i64) -> Self {
        let num = self.field.root_coeffs(n, k).to_vec();
        Cyclotomic {
            field: self.field.clone(),
            num,
            den: BigInt::one(),
        }
    }

    pub fn zero_like(&self) -> Self {
        Self::zero_in(self.field.clone())
    }

    pub fn one_like(&self) -> Self {
        self.integer_like(1)
    }

    pub fn integer_like(&self, n: i64) -> Self {
        Self::from_parts(self.field.clone(), vec![BigInt::from(n)], BigInt::one())
    }

    pub fn conductor(&self) -> u32 {
        self.field.m
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// Power-basis coefficients, padded to length `φ(m)`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.field.degree)
            .map(|i| {
                let n = self.num.get(i).cloned().unwrap_or_default();
                BigRational::new(n, self.den.clone())
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.len() == 1 && self.num[0].is_one()
    }

    /// `Some(q)` when the value is rational.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self.num.len() {
            0 => Some(BigRational::zero()),
            1 => Some(BigRational::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    /// Re-expresses the value in `Q(ζ_big)`; `m` must divide `big`.
    pub fn embed(&self, big: u32) -> Result<Self> {
        if big == self.field.m {
            return Ok(self.clone());
        }
        if !big.is_multiple_of(self.field.m) {
            return Err(Error::Domain(format!(
                "cannot embed conductor {} into {}",
                self.field.m, big
            )));
        }
        let target = CycloField::get(big);
        let mut acc: Vec<BigInt> = Vec::new();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = target.root_coeffs(self.field.m, i as i64);
            if acc.len() < r.len() {
                acc.resize(r.len(), BigInt::zero());
            }
            for (a, x) in acc.iter_mut().zip(r) {
                if !x.is_zero() {
                    *a += c * x;
                }
            }
        }
        Ok(Self::from_parts(target, acc, self.den.clone()))
    }

    /// Re-expresses the value in `Q(ζ_small)` if it lies there.
    pub fn restrict(&self, small: u32) -> Option<Self> {
        if small == self.field.m {
            return Some(self.clone());
        }
        let common = lcm(small, self.field.m);
        let here = self.embed(common).ok()?;
        let sub = CycloField::get(small);
        let ambient = CycloField::get(common);
        let cols: Vec<Vec<BigRational>> = (0..sub.degree)
            .map(|i| {
                let r = ambient.root_coeffs(small, i as i64);
                pad_rational(r, &BigInt::one(), ambient.degree)
            })
            .collect();
        let rhs = pad_rational(&here.num, &here.den, ambient.degree);
        let sol = solve_rational(&cols, &rhs)?;
        let den = sol
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = sol
            .iter()
            .map(|q| q.numer() * (&den / q.denom()))
            .collect();
        Some(Self::from_parts(sub, num, den))
    }

    /// Brings two values into a common field.
    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.field.m, b.field.m);
        (a.embed(m).unwrap(), b.embed(m).unwrap())
    }

    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field.m == other.field.m
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if !self.same_field(other) {
            let (a, b) = Self::unify(self, other);
            return a.add_impl(&b, negate);
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let len = self.num.len().max(other.num.len());
        let mut num = Vec::with_capacity(len);
        let den;
        if self.den == other.den {
            den = self.den.clone();
            for i in 0..len {
                let a = self.num.get(i).cloned().unwrap_or_default();
                let b = other.num.get(i).cloned().unwrap_or_default();
                num.push(if negate { a - b } else { a + b });
            }
        } else {
            den = &self.den * &other.den;
            for i in 0..len {
                let a = self.num.get(i).map(|c| c * &other.den).unwrap_or_default();
                let b = other.num.get(i).map(|c| c * &self.den).unwrap_or_default();
                num.push(if negate { a - b } else { a + b });
            }
        }
        Self::from_parts(self.field.clone(), num, den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if !self.same_field(other) {
            let (a, b) = Self::unify(self, other);
            return a.mul_impl(&b);
        }
        if self.is_zero() || other.is_zero() {
            return self.zero_like();
        }
        let mut prod = vec![BigInt::zero(); self.num.len() + other.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let num = self.field.reduce(prod);
        Self::from_parts(self.field.clone(), num, &self.den * &other.den)
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        if let Some((k, n)) = self.as_root_of_unity() {
            return Ok(self.root_like(n, -(k as i64)));
        }
        if let Some(q) = self.to_rational() {
            let q = q.recip();
            return Ok(Self::from_parts(
                self.field.clone(),
                vec![q.numer().clone()],
                q.denom().clone(),
            ));
        }
        // Solve a·c = 1 through the multiplication matrix of a.
        let d = self.field.degree;
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.num.clone();
        for _ in 0..d {
            cols.push(pad_rational(&cur, &self.den, d));
            let mut next = Vec::with_capacity(cur.len() + 1);
            next.push(BigInt::zero());
            next.extend(cur);
            cur = self.field.reduce(next);
        }
        let mut rhs = vec![BigRational::zero(); d];
        rhs[0] = BigRational::one();
        let sol = solve_rational(&cols, &rhs)
            .ok_or_else(|| Error::Verification("singular multiplication matrix".into()))?;
        let den = sol
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = sol.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        Ok(Self::from_parts(self.field.clone(), num, den))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one_like();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// If the value is a root of unity `ζ_N^k` with `N` the order of the
    /// roots of unity in its field, returns `(k, N)`.
    pub fn as_root_of_unity(&self) -> Option<(u32, u32)> {
        if !self.den.is_one() || self.is_zero() {
            return None;
        }
        let n = self.field.root_order();
        self.field
            .roots
            .iter()
            .position(|r| *r == self.num)
            .map(|k| (k as u32, n))
    }

    /// Multiplicative order, if the value is a root of unity.
    pub fn multiplicative_order(&self) -> Option<u32> {
        self.as_root_of_unity().map(|(k, n)| n / k.gcd(&n))
    }

    /// A square root of a root of unity, in the smallest suitable extension
    /// of the current field.
    pub fn sqrt_root_of_unity(&self) -> Option<Self> {
        let (k, n) = self.as_root_of_unity()?;
        if k % 2 == 0 {
            Some(self.root_like(n, (k / 2) as i64))
        } else {
            let big = lcm(self.field.m, 2 * n);
            Some(Self::root_of_unity(2 * n, k as i64).embed(big).unwrap())
        }
    }
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

fn pad_rational(num: &[BigInt], den: &BigInt, len: usize) -> Vec<BigRational> {
    (0..len)
        .map(|i| BigRational::new(num.get(i).cloned().unwrap_or_default(), den.clone()))
        .collect()
}

/// Solves `Σ x_i cols[i] = rhs` over `Q` when a solution exists. The system
/// may be overdetermined; the columns are assumed independent.
pub(crate) fn solve_rational(cols: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = rhs.len();
    let ncols = cols.len();
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::with_capacity(ncols);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=ncols {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][ncols].clone();
    }
    Some(x)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.same_field(other) {
            self.num == other.num && self.den == other.den
        } else {
            let (a, b) = Self::unify(self, other);
            a.num == b.num && a.den == b.den
        }
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, q) in self.coeffs().into_iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let a = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " (m={})", self.field.m)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(mut self) -> Cyclotomic {
        self.num.iter_mut().for_each(|c| *c = -&*c);
        self
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                $body(self, rhs)
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                $body(&self, rhs)
            }
        }
        impl $tr<Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Cyclotomic, b: &Cyclotomic| a.add_impl(b, false));
binop!(Sub, sub, |a: &Cyclotomic, b: &Cyclotomic| a.add_impl(b, true));
binop!(Mul, mul, |a: &Cyclotomic, b: &Cyclotomic| a.mul_impl(b));
