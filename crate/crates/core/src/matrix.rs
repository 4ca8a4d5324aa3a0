//! Dense square matrices over [`Cyclotomic`].

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::scalar::Cyclotomic;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<Cyclotomic>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| {
                    let s = self.get(i, j).to_string();
                    s.rsplit_once(" (").map(|(a, _)| a.to_string()).unwrap_or(s)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(n: usize, m: u32) -> Self {
        let z = Cyclotomic::zero(m);
        Matrix {
            n,
            data: vec![z; n * n],
        }
    }

    pub fn identity(n: usize, m: u32) -> Self {
        Self::scalar(n, &Cyclotomic::one(m))
    }

    pub fn scalar(n: usize, c: &Cyclotomic) -> Self {
        let mut a = Matrix {
            n,
            data: vec![c.zero_like(); n * n],
        };
        for i in 0..n {
            a.data[i * n + i] = c.clone();
        }
        a
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Cyclotomic) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclotomic::is_zero)
    }

    pub fn zero_like(&self) -> Cyclotomic {
        self.data[0].zero_like()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .map(|x| if x.is_zero() { x.clone() } else { x * c })
                .collect(),
        }
    }

    pub fn trace(&self) -> Cyclotomic {
        (0..self.n).fold(self.zero_like(), |acc, i| acc + self.get(i, i))
    }

    /// Kronecker product with `self` as the outer factor.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (p, q) = (self.n, other.n);
        let z = self.zero_like();
        let mut out = Matrix {
            n: p * q,
            data: vec![z; p * q * p * q],
        };
        for i in 0..p {
            for j in 0..p {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..q {
                    for l in 0..q {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * q + k, j * q + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal matrix; every block must be square.
    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(Matrix::size).sum();
        let z = blocks[0].zero_like();
        let mut out = Matrix {
            n,
            data: vec![z; n * n],
        };
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    out.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.n;
        }
        out
    }

    /// Writes `block` with its top-left corner at `(r, c)`.
    pub fn put_block(&mut self, r: usize, c: usize, block: &Matrix) {
        for i in 0..block.n {
            for j in 0..block.n {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    /// The square block of size `size` at `(r, c)`.
    pub fn block(&self, r: usize, c: usize, size: usize) -> Matrix {
        Self::from_fn(size, |i, j| self.get(r + i, c + j).clone())
    }

    fn mul_impl(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "size mismatch");
        let n = self.n;
        let z = self.zero_like();
        let mut out = Matrix {
            n,
            data: vec![z.clone(); n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    let prod = a * b;
                    out.data[idx] = if out.data[idx].is_zero() {
                        prod
                    } else {
                        &out.data[idx] + &prod
                    };
                }
            }
        }
        out
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Matrix {
        assert_eq!(self.n, other.n, "size mismatch");
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Matrix::scalar(n, &self.zero_like().one_like());
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a.get(r, c).is_zero())
                .ok_or_else(|| Error::Domain("singular matrix".into()))?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let piv = a.get(c, c).inv()?;
            for j in 0..n {
                if !a.get(c, j).is_zero() {
                    a.data[c * n + j] = &a.data[c * n + j] * &piv;
                }
                if !inv.get(c, j).is_zero() {
                    inv.data[c * n + j] = &inv.data[c * n + j] * &piv;
                }
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for j in 0..n {
                    if !a.get(c, j).is_zero() {
                        let t = a.get(c, j) * &f;
                        a.data[r * n + j] = &a.data[r * n + j] - &t;
                    }
                    if !inv.get(c, j).is_zero() {
                        let t = inv.get(c, j) * &f;
                        inv.data[r * n + j] = &inv.data[r * n + j] - &t;
                    }
                }
            }
        }
        Ok(inv)
    }

    /// If the matrix equals `c·I`, returns `c`.
    pub fn as_scalar(&self) -> Option<Cyclotomic> {
        let c = self.get(0, 0).clone();
        for i in 0..self.n {
            for j in 0..self.n {
                let x = self.get(i, j);
                if (i == j && *x != c) || (i != j && !x.is_zero()) {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Rank over the field, by Gaussian elimination on a copy.
    pub fn rank_of_rows(rows: &[Vec<Cyclotomic>]) -> usize {
        let mut a: Vec<Vec<Cyclotomic>> = rows.to_vec();
        let cols = a.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let piv = a[r][c].inv().expect("nonzero pivot");
            let prow: Vec<Cyclotomic> = a[r].iter().map(|x| x * &piv).collect();
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in c..cols {
                    if !prow[j].is_zero() {
                        a[i][j] = &a[i][j] - &(&prow[j] * &f);
                    }
                }
            }
            r += 1;
        }
        r
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.data
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.mul_impl(rhs)
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.zip(rhs, |a, b| a - b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(x: i64) -> Cyclotomic {
        Cyclotomic::from_integer(4, x)
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Matrix::from_fn(3, |i, j| int(((i * 3 + j * 5) % 7) as i64 + (i == j) as i64));
        let b = a.inverse().unwrap();
        assert_eq!(&a * &b, Matrix::identity(3, 4));
        assert!(Matrix::zero(2, 4).inverse().is_err());
    }

    #[test]
    fn kron_and_blocks() {
        let x = Matrix::from_fn(2, |i, j| int((i == j) as i64 * if i == 0 { -1 } else { 1 }));
        let y = Matrix::from_fn(2, |i, j| int((i != j) as i64));
        let k = x.kron(&y);
        assert_eq!(k.get(0, 1), &int(-1));
        assert_eq!(k.get(2, 3), &int(1));
        let d = Matrix::block_diag(&[x.clone(), y.clone()]);
        assert_eq!(d.block(2, 2, 2), y);
        assert_eq!(d.block(0, 2, 2), Matrix::zero(2, 4));
    }

    #[test]
    fn rank() {
        let rows = vec![vec![int(1), int(2)], vec![int(2), int(4)], vec![int(0), int(1)]];
        assert_eq!(Matrix::rank_of_rows(&rows), 2);
    }
}
