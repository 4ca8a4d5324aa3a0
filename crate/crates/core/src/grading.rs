//! Grading data, the graded matrix algebras `M_k(D)` with their supports,
//! and their universal groups.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::division::{context_conductor, Pauli};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::presentation::{AbelianPresentation, GroupStructure};
use crate::scalar::Cyclotomic;
use crate::torsion::{TorsionElement, TorsionGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    AI,
    AII,
    B,
    C,
    D,
    #[serde(rename = "RAW_M")]
    RawM,
    #[serde(rename = "RAW_MPHI")]
    RawMPhi,
}

impl Series {
    pub fn has_phi(self) -> bool {
        !matches!(self, Series::AI | Series::RawM)
    }

    pub fn name(self) -> &'static str {
        match self {
            Series::AI => "AI",
            Series::AII => "AII",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::RawM => "RAW_M",
            Series::RawMPhi => "RAW_MPHI",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "AI" | "A-I" => Series::AI,
            "AII" | "A-II" => Series::AII,
            "B" => Series::B,
            "C" => Series::C,
            "D" => Series::D,
            "RAW_M" => Series::RawM,
            "RAW_MPHI" => Series::RawMPhi,
            _ => return Err(Error::Parse(format!("unknown series '{s}'"))),
        })
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The discrete datum naming one grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingSpec {
    pub series: Series,
    pub group: TorsionGroup,
    /// Number of blocks for `AI` and `RAW_M`.
    pub k: usize,
    pub q: usize,
    pub s: usize,
    pub tau: Vec<TorsionElement>,
    /// `μ₁, …, μ_s` of the anti-automorphism.
    pub mu: Vec<Cyclotomic>,
}

impl GradingSpec {
    fn matrix_type(series: Series, group: TorsionGroup, k: usize) -> Self {
        GradingSpec {
            series,
            group,
            k,
            q: 0,
            s: 0,
            tau: Vec::new(),
            mu: Vec::new(),
        }
    }

    fn phi_type(
        series: Series,
        group: TorsionGroup,
        q: usize,
        s: usize,
        tau: Vec<TorsionElement>,
        mu_value: i64,
    ) -> Self {
        let m = context_conductor(&group);
        GradingSpec {
            series,
            k: q + 2 * s,
            mu: vec![Cyclotomic::from_integer(m, mu_value); s],
            group,
            q,
            s,
            tau,
        }
    }

    pub fn raw_m(group: TorsionGroup, k: usize) -> Result<Self> {
        let spec = Self::matrix_type(Series::RawM, group, k);
        spec.validate()?;
        Ok(spec)
    }

    pub fn ai(group: TorsionGroup, k: usize) -> Result<Self> {
        let spec = Self::matrix_type(Series::AI, group, k);
        spec.validate()?;
        Ok(spec)
    }

    pub fn aii(group: TorsionGroup, q: usize, s: usize, tau: Vec<TorsionElement>) -> Result<Self> {
        let spec = Self::phi_type(Series::AII, group, q, s, tau, 1);
        spec.validate()?;
        Ok(spec)
    }

    pub fn b(q: usize, s: usize) -> Result<Self> {
        let g = TorsionGroup::trivial();
        let tau = vec![g.identity(); q];
        let spec = Self::phi_type(Series::B, g, q, s, tau, 1);
        spec.validate()?;
        Ok(spec)
    }

    pub fn c(group: TorsionGroup, q: usize, s: usize, tau: Vec<TorsionElement>) -> Result<Self> {
        let spec = Self::phi_type(Series::C, group, q, s, tau, -1);
        spec.validate()?;
        Ok(spec)
    }

    pub fn d(group: TorsionGroup, q: usize, s: usize, tau: Vec<TorsionElement>) -> Result<Self> {
        let spec = Self::phi_type(Series::D, group, q, s, tau, 1);
        spec.validate()?;
        Ok(spec)
    }

    /// `Γ_M(T, q, s, τ)` with the anti-automorphism given by `μ`. The
    /// fineness clause is not enforced here; see [`GradingSpec::is_fine_phi`].
    pub fn raw_mphi(
        group: TorsionGroup,
        q: usize,
        s: usize,
        tau: Vec<TorsionElement>,
        mu: Vec<Cyclotomic>,
    ) -> Result<Self> {
        let spec = GradingSpec {
            series: Series::RawMPhi,
            k: q + 2 * s,
            group,
            q,
            s,
            tau,
            mu,
        };
        spec.validate_datum()?;
        Ok(spec)
    }

    /// Number of blocks `k` (or `q + 2s`).
    pub fn blocks(&self) -> usize {
        if self.series.has_phi() {
            self.q + 2 * self.s
        } else {
            self.k
        }
    }

    /// Matrix size `n`.
    pub fn n(&self) -> usize {
        self.blocks() * self.group.sqrt_order()
    }

    pub fn r(&self) -> usize {
        self.group.rank()
    }

    /// `δ`: the sign of the involution for series B, C, D.
    pub fn delta(&self) -> Option<i8> {
        match self.series {
            Series::B | Series::D => Some(1),
            Series::C => Some(-1),
            _ => None,
        }
    }

    pub fn conductor(&self) -> u32 {
        let base = context_conductor(&self.group);
        self.mu
            .iter()
            .fold(base, |m, x| crate::scalar::lcm(m, x.conductor()))
    }

    /// Fineness of the φ-grading: fails exactly for `q = 2`, `s = 0`, `t₁ = t₂`.
    pub fn is_fine_phi(&self) -> bool {
        !(self.q == 2 && self.s == 0 && self.tau[0] == self.tau[1])
    }

    /// Every constraint except the fineness clause.
    pub fn validate_datum(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if !self.series.has_phi() {
            if self.k == 0 {
                return bad("k must be at least 1".into());
            }
            if self.series == Series::AI && self.group.is_elementary2() && self.k <= 2 {
                // sl₂ is the one place where k ≤ 2 gives a fine grading.
                let sl2 = self.n() == 2;
                if !sl2 {
                    return bad(format!(
                        "AI over an elementary 2-group needs k >= 3 (got k = {})",
                        self.k
                    ));
                }
            }
            return Ok(());
        }
        if !self.group.is_elementary2() {
            return bad(format!("series {} needs an elementary 2-group", self.series));
        }
        if self.tau.len() != self.q {
            return bad(format!("tau has {} entries, q = {}", self.tau.len(), self.q));
        }
        if self.tau.iter().any(|t| t.rank() != self.group.rank()) {
            return bad("tau entries do not belong to T".into());
        }
        if self.k != self.q + 2 * self.s {
            return bad("k must equal q + 2s".into());
        }
        if self.blocks() == 0 {
            return bad("q + 2s must be positive".into());
        }
        if self.mu.len() != self.s || self.mu.iter().any(Cyclotomic::is_zero) {
            return bad("mu must list s nonzero scalars".into());
        }
        let signs: Vec<i8> = self
            .tau
            .iter()
            .map(|t| self.group.quad_sign(t))
            .collect::<Result<_>>()?;
        let all_mu = |v: i64| self.mu.iter().all(|x| *x == x.integer_like(v));
        match self.series {
            Series::AII if !all_mu(1) => bad("AII normalizes mu to 1".into()),
            Series::B if !self.group.is_trivial() => bad("series B needs trivial T".into()),
            Series::B | Series::D if !all_mu(1) => bad("mu must equal delta = 1".into()),
            Series::D if signs.iter().any(|&x| x != 1) => {
                bad("series D needs every t_i in T+".into())
            }
            Series::C if signs.iter().any(|&x| x != -1) => {
                bad("series C needs every t_i in T-".into())
            }
            Series::C if !all_mu(-1) => bad("mu must equal delta = -1".into()),
            _ => Ok(()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_datum()?;
        if self.series.has_phi() && self.series != Series::RawMPhi && !self.is_fine_phi() {
            return Err(Error::InvalidSpec(
                "q = 2, s = 0 and t1 = t2 does not give a fine grading".into(),
            ));
        }
        Ok(())
    }

    /// `(i*, s_i)`: the partner block and shift with `g̃_i⁻¹ = g̃_{i*} s_i c⁻¹`.
    pub fn partner(&self, i: usize) -> (usize, TorsionElement) {
        if i < self.q {
            (i, self.tau[i])
        } else {
            let p = i - self.q;
            (self.q + (p ^ 1), self.group.identity())
        }
    }

    /// The involution `ι(i, j, w) = (j*, i*, s_i s_j w)` on symbols.
    pub fn iota(&self, z: &SupportElement) -> SupportElement {
        let (is, si) = self.partner(z.i);
        let (js, sj) = self.partner(z.j);
        SupportElement {
            i: js,
            j: is,
            t: self.group.mul(&self.group.mul(&si, &sj), &z.t),
        }
    }

    /// Canonical form of `z_{i,j,t}`.
    pub fn canonical(&self, i: usize, j: usize, t: TorsionElement) -> SupportElement {
        let z = SupportElement { i, j, t };
        if i == j {
            return SupportElement { i: 0, j: 0, t };
        }
        if self.series.has_phi() {
            let w = self.iota(&z);
            if w.i == w.j {
                return SupportElement { i: 0, j: 0, t: w.t };
            }
            return z.min(w);
        }
        z
    }
}

/// The symbol `z_{i,j,t} = g̃_i t g̃_j⁻¹` (0-based block indices).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportElement {
    pub i: usize,
    pub j: usize,
    pub t: TorsionElement,
}

impl SupportElement {
    pub fn is_diagonal(&self) -> bool {
        self.i == self.j
    }
}

impl fmt::Display for SupportElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z({},{},{})", self.i + 1, self.j + 1, self.t)
    }
}

impl fmt::Debug for SupportElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The basis element `E_ij ⊗ X_t`.
pub type BasisElement = SupportElement;

/// Largest number of basis elements a graded algebra may have.
pub const MAX_BASIS: usize = 1 << 16;

/// `M_k(D)` with its grading.
#[derive(Clone, Debug)]
pub struct GradedMatrixAlgebra {
    spec: GradingSpec,
    pauli: Pauli,
    elements: Vec<TorsionElement>,
    components: BTreeMap<SupportElement, Vec<BasisElement>>,
    degree: Vec<SupportElement>,
}

impl GradedMatrixAlgebra {
    pub fn new(spec: &GradingSpec) -> Result<Self> {
        spec.validate_datum()?;
        let k = spec.blocks();
        let t = &spec.group;
        let size = k * k * t.order() as usize;
        if size > MAX_BASIS {
            return Err(Error::resource("graded basis", size, MAX_BASIS as u64));
        }
        let elements = t.elements();
        let mut components: BTreeMap<SupportElement, Vec<BasisElement>> = BTreeMap::new();
        let mut degree = Vec::with_capacity(size);
        for i in 0..k {
            for j in 0..k {
                for w in &elements {
                    let z = spec.canonical(i, j, *w);
                    components
                        .entry(z)
                        .or_default()
                        .push(SupportElement { i, j, t: *w });
                    degree.push(z);
                }
            }
        }
        Ok(GradedMatrixAlgebra {
            spec: spec.clone(),
            pauli: Pauli::new(t),
            elements,
            components,
            degree,
        })
    }

    pub fn spec(&self) -> &GradingSpec {
        &self.spec
    }

    pub fn pauli(&self) -> &Pauli {
        &self.pauli
    }

    pub fn group(&self) -> &TorsionGroup {
        &self.spec.group
    }

    pub fn blocks(&self) -> usize {
        self.spec.blocks()
    }

    pub fn basis_len(&self) -> usize {
        self.degree.len()
    }

    pub fn basis_index(&self, b: &BasisElement) -> usize {
        let k = self.blocks();
        (b.i * k + b.j) * self.elements.len() + self.group().index(&b.t)
    }

    pub fn basis_element(&self, idx: usize) -> BasisElement {
        let nt = self.elements.len();
        let k = self.blocks();
        let ij = idx / nt;
        SupportElement {
            i: ij / k,
            j: ij % k,
            t: self.elements[idx % nt],
        }
    }

    pub fn degree(&self, b: &BasisElement) -> SupportElement {
        self.degree[self.basis_index(b)]
    }

    pub fn degree_of_index(&self, idx: usize) -> SupportElement {
        self.degree[idx]
    }

    /// Canonical support, sorted.
    pub fn support(&self) -> Vec<SupportElement> {
        self.components.keys().copied().collect()
    }

    pub fn components(&self) -> &BTreeMap<SupportElement, Vec<BasisElement>> {
        &self.components
    }

    pub fn component(&self, z: &SupportElement) -> &[BasisElement] {
        self.components.get(z).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, z: &SupportElement) -> usize {
        self.component(z).len()
    }

    /// The exact `n × n` matrix of `E_ij ⊗ X_t`.
    pub fn basis_matrix(&self, d: &crate::division::GradedDivisionAlgebra, b: &BasisElement) -> Matrix {
        let l = d.size();
        let mut m = Matrix::zero(self.blocks() * l, self.pauli.conductor());
        m.put_block(b.i * l, b.j * l, d.x(&b.t));
        m
    }

    /// Product of basis elements: `(E_ij⊗X_u)(E_jl⊗X_v) = σ(u,v) E_il⊗X_{uv}`.
    pub fn basis_product(&self, x: &BasisElement, y: &BasisElement) -> Option<(Cyclotomic, BasisElement)> {
        if x.j != y.i {
            return None;
        }
        Some((
            self.pauli.cocycle(&x.t, &y.t),
            SupportElement {
                i: x.i,
                j: y.j,
                t: self.group().mul(&x.t, &y.t),
            },
        ))
    }
}

/// The universal group of a grading, as a reduced presentation together
/// with the closed-form prediction.
#[derive(Clone, Debug)]
pub struct UniversalGroup {
    pub presentation: AbelianPresentation,
    pub structure: GroupStructure,
    pub closed_form: GroupStructure,
    /// `dim T₀` for φ-types.
    pub dim_t0: usize,
    group: TorsionGroup,
    blocks: usize,
}

/// Rank over `F₂` of packed vectors.
pub fn f2_rank(vectors: &[u8]) -> usize {
    let mut basis: Vec<u8> = Vec::new();
    for &v in vectors {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Relations of `G̃` on the generators `(T-basis, g̃₁, …, g̃_k)`.
pub fn ambient_relations(spec: &GradingSpec) -> Vec<Vec<i64>> {
    let t = &spec.group;
    let dt = t.dim();
    let k = spec.blocks();
    let width = dt + k;
    let mut rels = Vec::new();
    for p in 0..dt {
        let mut r = vec![0i64; width];
        r[p] = t.basis_order(p) as i64;
        rels.push(r);
    }
    if spec.series.has_phi() {
        // Each block contributes an expression equal to the common element c.
        let mut exprs: Vec<Vec<i64>> = Vec::new();
        for i in 0..spec.q {
            let mut e = vec![0i64; width];
            e[dt + i] = 2;
            for (p, &x) in spec.tau[i].exps().iter().enumerate() {
                e[p] = x as i64;
            }
            exprs.push(e);
        }
        for j in 0..spec.s {
            let mut e = vec![0i64; width];
            e[dt + spec.q + 2 * j] = 1;
            e[dt + spec.q + 2 * j + 1] = 1;
            exprs.push(e);
        }
        for w in exprs.windows(2) {
            rels.push(w[0].iter().zip(&w[1]).map(|(a, b)| a - b).collect());
        }
    }
    rels
}

impl UniversalGroup {
    /// Reduces the presentation of the subgroup of `G̃` generated by the
    /// support, i.e. by `T` and the differences `g̃_{m+1} − g̃_m`.
    pub fn new(spec: &GradingSpec) -> Result<Self> {
        let t = &spec.group;
        let dt = t.dim();
        let k = spec.blocks();
        // New basis (T, g̃₁, d₁, …, d_{k−1}) with g̃_m = g̃₁ + Σ_{m'<m} d_{m'}.
        let mut rows: Vec<Vec<i64>> = ambient_relations(spec)
            .into_iter()
            .map(|r| {
                let mut out = r[..dt].to_vec();
                out.push(r[dt..].iter().sum());
                for m in 0..k.saturating_sub(1) {
                    out.push(r[dt + m + 1..].iter().sum());
                }
                out
            })
            .collect();
        // Intersect with the sublattice where the g̃₁ coefficient vanishes.
        let col = dt;
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    rows.remove(i);
                }
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            for &i in &nz {
                if i != piv {
                    let f = rows[i][col] / rows[piv][col];
                    let prow = rows[piv].clone();
                    for (x, y) in rows[i].iter_mut().zip(&prow) {
                        *x -= f * y;
                    }
                }
            }
        }
        let rels: Vec<Vec<i64>> = rows
            .into_iter()
            .map(|mut r| {
                r.remove(col);
                r
            })
            .collect();
        let ngens = dt + k.saturating_sub(1);
        let presentation = AbelianPresentation::new(ngens, &rels)?;
        let structure = presentation.structure();
        let (closed_form, dim_t0) = Self::closed_form(spec);
        Ok(UniversalGroup {
            presentation,
            structure,
            closed_form,
            dim_t0,
            group: t.clone(),
            blocks: k,
        })
    }

    /// `Z₂^{dim T − 2 dim T₀ + max(0, q−1)} × Z₄^{dim T₀} × Z^s` for φ-types,
    /// `T × Z^{k−1}` otherwise.
    fn closed_form(spec: &GradingSpec) -> (GroupStructure, usize) {
        let t = &spec.group;
        if !spec.series.has_phi() {
            let mut g = GroupStructure::default();
            for &l in t.orders() {
                *g.cyclic.entry(l as u64).or_insert(0) += 2;
            }
            g.free = spec.k - 1;
            return (g, 0);
        }
        let diffs: Vec<u8> = spec
            .tau
            .windows(2)
            .map(|w| w[0].to_bits() ^ w[1].to_bits())
            .collect();
        let d0 = f2_rank(&diffs);
        let a = t.dim() + spec.q.saturating_sub(1) - 2 * d0;
        (GroupStructure::two_four(a, d0, spec.s), d0)
    }

    pub fn agrees(&self) -> bool {
        self.structure == self.closed_form
    }

    /// Coefficients of `z_{i,j,t}` on the generators `(T-basis, d₁, …)`.
    pub fn generator_coeffs(&self, z: &SupportElement) -> Vec<i64> {
        let dt = self.group.dim();
        let mut x = vec![0i64; dt + self.blocks.saturating_sub(1)];
        for (p, &e) in z.t.exps().iter().enumerate() {
            x[p] = e as i64;
        }
        // g̃_i − g̃_j = Σ_{m=j}^{i−1} d_m.
        let (lo, hi, sign) = if z.i >= z.j { (z.j, z.i, 1) } else { (z.i, z.j, -1) };
        for m in lo..hi {
            x[dt + m] += sign;
        }
        x
    }

    /// Normal-form coordinates of a support element.
    pub fn coords(&self, z: &SupportElement) -> Vec<i64> {
        self.presentation.coords(&self.generator_coeffs(z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn listing_count(spec: &GradingSpec) -> usize {
        let nt = spec.group.order() as usize;
        if !spec.series.has_phi() {
            let k = spec.k;
            return (k * k - k) * nt + nt;
        }
        let (q, s) = (spec.q, spec.s);
        q * (q.saturating_sub(1)) / 2 * nt
            + 2 * q * s * nt
            + 2 * s * s.saturating_sub(1) * nt
            + 2 * s * nt
            + nt
    }

    #[test]
    fn cartan_type_support() {
        let spec = GradingSpec::raw_mphi(TorsionGroup::trivial(), 0, 1, vec![], vec![Cyclotomic::one(4)]).unwrap();
        let a = GradedMatrixAlgebra::new(&spec).unwrap();
        let dims: Vec<usize> = a.support().iter().map(|z| a.dim(z)).collect();
        assert_eq!(dims, vec![2, 1, 1]);
        let u = UniversalGroup::new(&spec).unwrap();
        assert_eq!(u.structure, GroupStructure::two_four(0, 0, 1));
        let c: Vec<Vec<i64>> = a.support().iter().map(|z| u.coords(z)).collect();
        assert_eq!(c[0], vec![0]);
        assert_eq!(c[1][0], -c[2][0]);
    }

    #[test]
    fn raw_m_support() {
        for k in 1..=4 {
            let spec = GradingSpec::raw_m(TorsionGroup::trivial(), k).unwrap();
            let a = GradedMatrixAlgebra::new(&spec).unwrap();
            assert_eq!(a.support().len(), k * (k - 1) + 1);
            assert_eq!(a.dim(&a.support()[0]), k);
        }
        let t = TorsionGroup::elementary(1);
        let a = GradedMatrixAlgebra::new(&GradingSpec::raw_m(t.clone(), 1).unwrap()).unwrap();
        assert!(a.support().iter().all(|z| a.dim(z) == 1));
        assert_eq!(a.support().len(), 4);
    }

    #[test]
    fn support_counts_match_listing() {
        let t = TorsionGroup::elementary(1);
        let elems = t.elements();
        for q in 0..=3 {
            for s in 0..=1 {
                if q + 2 * s == 0 {
                    continue;
                }
                let tau: Vec<_> = (0..q).map(|i| elems[i % 4]).collect();
                let mu = vec![Cyclotomic::one(4); s];
                let spec = GradingSpec::raw_mphi(t.clone(), q, s, tau, mu).unwrap();
                let a = GradedMatrixAlgebra::new(&spec).unwrap();
                assert_eq!(a.support().len(), listing_count(&spec), "q={q} s={s}");
                let total: usize = a.support().iter().map(|z| a.dim(z)).sum();
                assert_eq!(total, spec.n() * spec.n());
            }
        }
    }

    #[test]
    fn universal_examples() {
        let t = TorsionGroup::elementary(1);
        let ab = t.mul(&t.a(0), &t.b(0));
        let spec = GradingSpec::raw_mphi(t.clone(), 2, 0, vec![t.identity(), ab], vec![]).unwrap();
        let u = UniversalGroup::new(&spec).unwrap();
        assert_eq!(u.structure, GroupStructure::two_four(1, 1, 0));
        assert!(u.agrees());
        let spec = GradingSpec::raw_m(TorsionGroup::new(vec![3]).unwrap(), 3).unwrap();
        let u = UniversalGroup::new(&spec).unwrap();
        assert_eq!(u.structure.rank_of(3), 2);
        assert_eq!(u.structure.free, 2);
    }

    #[test]
    fn validation() {
        let t = TorsionGroup::elementary(1);
        let ab = t.mul(&t.a(0), &t.b(0));
        assert!(GradingSpec::c(t.clone(), 1, 0, vec![ab]).is_ok());
        assert!(GradingSpec::c(t.clone(), 1, 0, vec![t.a(0)]).is_err());
        assert!(GradingSpec::d(t.clone(), 2, 0, vec![t.a(0), t.a(0)]).is_err());
        assert!(GradingSpec::ai(TorsionGroup::trivial(), 2).is_ok());
        assert!(GradingSpec::ai(TorsionGroup::trivial(), 1).is_err());
        assert!(GradingSpec::ai(t.clone(), 2).is_err());
        assert!(GradingSpec::ai(t, 1).is_ok());
    }
}
