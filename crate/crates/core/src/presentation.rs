//! Finitely generated abelian groups given by integer relations, reduced
//! with the Smith normal form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Z^n / (row space of the relation matrix)`, with the change of basis
/// that diagonalizes it.
#[derive(Clone, Debug)]
pub struct AbelianPresentation {
    ngens: usize,
    /// Diagonal of the normal form, one entry per generator; zero means free.
    diag: Vec<i128>,
    /// Column transform: coordinates `x` map to `x·V` in the diagonal basis.
    v: Vec<Vec<i128>>,
}

impl AbelianPresentation {
    /// Reduces the relations (rows, each of length `ngens`).
    pub fn new(ngens: usize, relations: &[Vec<i64>]) -> Result<Self> {
        if let Some(r) = relations.iter().find(|r| r.len() != ngens) {
            return Err(Error::Domain(format!(
                "relation of length {} for {} generators",
                r.len(),
                ngens
            )));
        }
        let mut a: Vec<Vec<i128>> = relations
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let (diag, v) = smith(&mut a, ngens)?;
        Ok(AbelianPresentation { ngens, diag, v })
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Invariant factors `d₁ | d₂ | …` greater than one.
    pub fn invariant_factors(&self) -> Vec<u64> {
        self.diag
            .iter()
            .filter(|&&d| d > 1)
            .map(|&d| d as u64)
            .collect()
    }

    pub fn free_rank(&self) -> usize {
        self.diag.iter().filter(|&&d| d == 0).count()
    }

    pub fn structure(&self) -> GroupStructure {
        GroupStructure::from_invariants(&self.invariant_factors(), self.free_rank())
    }

    /// Normal-form coordinates of the element with generator coefficients `x`:
    /// one entry per nontrivial cyclic factor (reduced) followed by the free part.
    pub fn coords(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.ngens);
        let mut out = Vec::new();
        for (c, &d) in self.diag.iter().enumerate() {
            if d == 1 {
                continue;
            }
            let y: i128 = x.iter().zip(&self.v).map(|(&xi, row)| xi as i128 * row[c]).sum();
            out.push(if d == 0 { y } else { y.rem_euclid(d) } as i64);
        }
        out
    }

    /// Order of each coordinate returned by [`coords`](Self::coords); zero for free.
    pub fn coord_orders(&self) -> Vec<u64> {
        self.diag
            .iter()
            .filter(|&&d| d != 1)
            .map(|&d| d as u64)
            .collect()
    }

    pub fn is_zero(&self, x: &[i64]) -> bool {
        self.coords(x).iter().all(|&c| c == 0)
    }
}

/// Diagonalizes `a` in place; returns the diagonal (padded with zeros to
/// `ncols`) and the accumulated column transform.
fn smith(a: &mut [Vec<i128>], ncols: usize) -> Result<(Vec<i128>, Vec<Vec<i128>>)> {
    let nrows = a.len();
    let mut v: Vec<Vec<i128>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| (i == j) as i128).collect())
        .collect();
    let col_op = |a: &mut [Vec<i128>], v: &mut [Vec<i128>], dst: usize, src: usize, f: i128| {
        for row in a.iter_mut() {
            row[dst] -= f * row[src];
        }
        for row in v.iter_mut() {
            row[dst] -= f * row[src];
        }
    };
    let col_swap = |a: &mut [Vec<i128>], v: &mut [Vec<i128>], x: usize, y: usize| {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
        for row in v.iter_mut() {
            row.swap(x, y);
        }
    };
    let bound = 1i128 << 100;
    let mut t = 0;
    while t < nrows.min(ncols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        col_swap(a, &mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..nrows {
                if a[i][t] != 0 {
                    let f = a[i][t].div_euclid(a[t][t]);
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in tail[0].iter_mut().zip(&head[t]) {
                        *x -= f * y;
                    }
                    if a[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..ncols {
                if a[t][j] != 0 {
                    let f = a[t][j].div_euclid(a[t][t]);
                    col_op(a, &mut v, j, t, f);
                    if a[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if a.iter().flatten().any(|x| x.abs() > bound) {
                return Err(Error::Verification("coefficient growth in normal form".into()));
            }
            if dirty {
                // Move the smallest remaining entry of row/column t to the pivot.
                let mut best = (t, t);
                for i in t..nrows {
                    if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..ncols {
                    if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                col_swap(a, &mut v, t, best.1);
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let p = a[t][t];
            let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in head[t].iter_mut().zip(&tail[0]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for row in a.iter_mut() {
                row[t] = -row[t];
            }
            for row in v.iter_mut() {
                row[t] = -row[t];
            }
        }
        t += 1;
    }
    let diag = (0..ncols)
        .map(|i| if i < nrows { a[i][i] } else { 0 })
        .collect();
    Ok((diag, v))
}

/// `Π Z_{p^e}^{m} × Z^f`, keyed by the prime-power orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct GroupStructure {
    pub cyclic: BTreeMap<u64, usize>,
    pub free: usize,
}

impl GroupStructure {
    pub fn from_invariants(invariants: &[u64], free: usize) -> Self {
        let mut cyclic = BTreeMap::new();
        for &d in invariants {
            for q in prime_power_factors(d) {
                *cyclic.entry(q).or_insert(0) += 1;
            }
        }
        GroupStructure { cyclic, free }
    }

    /// `Z₂^a × Z₄^b × Z^s`.
    pub fn two_four(a: usize, b: usize, s: usize) -> Self {
        let mut cyclic = BTreeMap::new();
        if a > 0 {
            cyclic.insert(2, a);
        }
        if b > 0 {
            cyclic.insert(4, b);
        }
        GroupStructure { cyclic, free: s }
    }

    /// Direct product.
    pub fn product(&self, other: &GroupStructure) -> Self {
        let mut out = self.clone();
        for (&q, &m) in &other.cyclic {
            *out.cyclic.entry(q).or_insert(0) += m;
        }
        out.free += other.free;
        out
    }

    pub fn rank_of(&self, q: u64) -> usize {
        self.cyclic.get(&q).copied().unwrap_or(0)
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> u128 {
        self.cyclic
            .iter()
            .map(|(&q, &m)| (q as u128).pow(m as u32))
            .product()
    }

    /// Invariant factors `d₁ | d₂ | …` of the torsion part.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for (&q, &m) in &self.cyclic {
            let p = smallest_prime_factor(q);
            by_prime.entry(p).or_default().extend(std::iter::repeat_n(q, m));
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![1u64; len];
        for mut qs in by_prime.into_values() {
            qs.sort_unstable_by(|a, b| b.cmp(a));
            for (i, q) in qs.into_iter().enumerate() {
                out[len - 1 - i] *= q;
            }
        }
        out
    }
}

impl std::fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self
            .cyclic
            .iter()
            .map(|(q, m)| if *m == 1 { format!("Z{q}") } else { format!("Z{q}^{m}") })
            .collect();
        match self.free {
            0 => {}
            1 => parts.push("Z".into()),
            n => parts.push(format!("Z^{n}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    (2..=n).find(|p| n.is_multiple_of(*p)).unwrap_or(n)
}

fn prime_power_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_relations() {
        let p = AbelianPresentation::new(3, &[vec![2, 0, 0], vec![0, 4, 0]]).unwrap();
        assert_eq!(p.invariant_factors(), vec![2, 4]);
        assert_eq!(p.free_rank(), 1);
        assert_eq!(p.structure(), GroupStructure::two_four(1, 1, 1));
    }

    #[test]
    fn mixed_relations() {
        // Z^2 / <(2,4),(6,8)>: determinant -8, gcd of entries 2: Z2 x Z4.
        let p = AbelianPresentation::new(2, &[vec![2, 4], vec![6, 8]]).unwrap();
        assert_eq!(p.invariant_factors(), vec![2, 4]);
        let p = AbelianPresentation::new(2, &[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(p.invariant_factors(), vec![6]);
        assert_eq!(p.structure().rank_of(2), 1);
        assert_eq!(p.structure().rank_of(3), 1);
    }

    #[test]
    fn coordinates_detect_relations() {
        let rels = vec![vec![2, 4, 0], vec![6, 8, 0], vec![1, 1, 1]];
        let p = AbelianPresentation::new(3, &rels).unwrap();
        for r in &rels {
            assert!(p.is_zero(r));
        }
        assert!(!p.is_zero(&[1, 0, 0]));
        let sum: Vec<i64> = (0..3).map(|i| 3 * rels[0][i] - 2 * rels[2][i]).collect();
        assert!(p.is_zero(&sum));
    }

    #[test]
    fn invariant_factor_roundtrip() {
        let g = GroupStructure::from_invariants(&[2, 12, 36], 1);
        assert_eq!(g.invariant_factors(), vec![2, 12, 36]);
        assert_eq!(g.to_string(), "Z2 x Z3 x Z4^2 x Z9 x Z");
    }
}
