//! `Aut(T, β)`, the affine group `T ⋊ Aut(T, β)`, the natural and twisted
//! actions on `T`, and orbits and stabilizers of multisets in `T`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::torsion::{quad_bits, TorsionElement, TorsionGroup};

/// An automorphism of `T` preserving `β`, given by the images of the basis
/// `a₁, b₁, …, a_r, b_r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticMap {
    images: Vec<TorsionElement>,
}

impl fmt::Debug for SymplecticMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.images.iter()).finish()
    }
}

impl SymplecticMap {
    pub fn identity(t: &TorsionGroup) -> Self {
        SymplecticMap {
            images: (0..t.dim()).map(|p| t.basis(p)).collect(),
        }
    }

    /// Builds a map from basis images, checking that it preserves `β`.
    pub fn from_images(t: &TorsionGroup, images: Vec<TorsionElement>) -> Result<Self> {
        if images.len() != t.dim() {
            return Err(Error::Domain(format!(
                "expected {} basis images, got {}",
                t.dim(),
                images.len()
            )));
        }
        for p in 0..t.dim() {
            let l = t.basis_order(p) as i64;
            if !t.pow(&images[p], l).is_identity() {
                return Err(Error::Domain("image order does not divide basis order".into()));
            }
            for q in 0..p {
                if t.beta_exp(&images[p], &images[q]) != t.beta_exp(&t.basis(p), &t.basis(q)) {
                    return Err(Error::Domain("map does not preserve the bicharacter".into()));
                }
            }
        }
        Ok(SymplecticMap { images })
    }

    pub fn images(&self) -> &[TorsionElement] {
        &self.images
    }

    pub fn apply(&self, t: &TorsionGroup, x: &TorsionElement) -> TorsionElement {
        let mut acc = t.identity();
        for (p, &e) in x.exps().iter().enumerate() {
            if e != 0 {
                acc = t.mul(&acc, &t.pow(&self.images[p], e as i64));
            }
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, t: &TorsionGroup, other: &SymplecticMap) -> SymplecticMap {
        SymplecticMap {
            images: other.images.iter().map(|x| self.apply(t, x)).collect(),
        }
    }

    /// The inverse, read off from `β`: `β(α⁻¹(x), b_k) = β(x, α(b_k))` and
    /// `β(α⁻¹(x), a_k) = β(x, α(a_k))`.
    pub fn inverse(&self, t: &TorsionGroup) -> SymplecticMap {
        let e = t.exponent();
        let images = (0..t.dim())
            .map(|p| {
                let x = t.basis(p);
                let mut exps = vec![0u8; t.dim()];
                for k in 0..t.rank() {
                    let l = t.orders()[k] as u32;
                    let scale = e / l;
                    // β(y, b_k) = ε^{i_k(y)}, β(y, a_k) = ε^{-j_k(y)}.
                    let i = t.beta_exp(&x, &self.images[2 * k + 1]) / scale;
                    let j = (l - t.beta_exp(&x, &self.images[2 * k]) / scale) % l;
                    exps[2 * k] = i as u8;
                    exps[2 * k + 1] = j as u8;
                }
                TorsionElement::from_exps(&exps)
            })
            .collect();
        SymplecticMap { images }
    }

    pub fn is_identity(&self, t: &TorsionGroup) -> bool {
        *self == SymplecticMap::identity(t)
    }

    /// The transvection `x ↦ x + ω(x, v)v` of an elementary 2-group.
    pub fn transvection(t: &TorsionGroup, v: &TorsionElement) -> SymplecticMap {
        let images = (0..t.dim())
            .map(|p| {
                let x = t.basis(p);
                if t.omega(&x, v) == 1 {
                    t.mul(&x, v)
                } else {
                    x
                }
            })
            .collect();
        SymplecticMap { images }
    }
}

/// Calls `f` with the basis images of every element of `Aut(T, β)`, by
/// backtracking over images that respect element orders and `β`.
pub fn for_each_automorphism(t: &TorsionGroup, mut f: impl FnMut(&[TorsionElement])) {
    let dim = t.dim();
    let elems = t.elements();
    let candidates: Vec<Vec<TorsionElement>> = (0..dim)
        .map(|p| {
            let l = t.basis_order(p) as i64;
            elems
                .iter()
                .filter(|x| t.pow(x, l).is_identity())
                .copied()
                .collect()
        })
        .collect();
    let targets: Vec<Vec<u32>> = (0..dim)
        .map(|p| (0..p).map(|q| t.beta_exp(&t.basis(p), &t.basis(q))).collect())
        .collect();
    let mut chosen: Vec<TorsionElement> = Vec::with_capacity(dim);
    fn rec(
        t: &TorsionGroup,
        candidates: &[Vec<TorsionElement>],
        targets: &[Vec<u32>],
        chosen: &mut Vec<TorsionElement>,
        f: &mut dyn FnMut(&[TorsionElement]),
    ) {
        let p = chosen.len();
        if p == candidates.len() {
            f(chosen);
            return;
        }
        for x in &candidates[p] {
            if (0..p).all(|q| t.beta_exp(x, &chosen[q]) == targets[p][q]) {
                chosen.push(*x);
                rec(t, candidates, targets, chosen, f);
                chosen.pop();
            }
        }
    }
    rec(t, &candidates, &targets, &mut chosen, &mut f);
}

/// `|Sp_{2r}(2)| = 2^{r²} Π_{i=1..r} (4^i − 1)`.
pub fn sp2_order_closed_form(r: usize) -> u128 {
    let mut n: u128 = 1 << (r * r);
    for i in 1..=r as u32 {
        n *= 4u128.pow(i) - 1;
    }
    n
}

/// Handle on `Aut(T, β)`.
#[derive(Clone, Debug)]
pub struct AutGroup {
    group: TorsionGroup,
    order: u128,
    generators: Vec<SymplecticMap>,
}

impl AutGroup {
    /// Builds the handle. For elementary 2-groups the order comes from the
    /// closed form and the generators are the transvections; otherwise the
    /// group is enumerated (within `bound`) and a generating set is
    /// extracted greedily.
    pub fn new(t: &TorsionGroup, bound: u64) -> Result<Self> {
        if t.is_elementary2() {
            let generators = t
                .elements()
                .into_iter()
                .filter(|v| !v.is_identity())
                .map(|v| SymplecticMap::transvection(t, &v))
                .collect();
            return Ok(AutGroup {
                group: t.clone(),
                order: sp2_order_closed_form(t.rank()),
                generators,
            });
        }
        let elems = Self::enumerate_raw(t, bound)?;
        let order = elems.len() as u128;
        let mut generators: Vec<SymplecticMap> = Vec::new();
        let mut closure: HashSet<SymplecticMap> = HashSet::from([SymplecticMap::identity(t)]);
        for g in elems {
            if closure.len() as u128 == order {
                break;
            }
            if closure.contains(&g) {
                continue;
            }
            generators.push(g);
            closure = close_maps(t, &generators);
        }
        Ok(AutGroup {
            group: t.clone(),
            order,
            generators,
        })
    }

    fn enumerate_raw(t: &TorsionGroup, bound: u64) -> Result<Vec<SymplecticMap>> {
        let mut out = Vec::new();
        let mut overflow = false;
        for_each_automorphism(t, |imgs| {
            if out.len() as u64 >= bound {
                overflow = true;
            } else {
                out.push(SymplecticMap {
                    images: imgs.to_vec(),
                });
            }
        });
        if overflow {
            return Err(Error::resource("Aut(T,β) enumeration", "more elements", bound));
        }
        Ok(out)
    }

    pub fn group(&self) -> &TorsionGroup {
        &self.group
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn generators(&self) -> &[SymplecticMap] {
        &self.generators
    }

    /// Counts the elements by exhaustive enumeration, without storing them.
    pub fn count_by_enumeration(&self) -> u128 {
        let mut n = 0u128;
        for_each_automorphism(&self.group, |_| n += 1);
        n
    }

    /// All elements, or a resource error when the order exceeds `bound`.
    pub fn elements(&self, bound: u64) -> Result<Vec<SymplecticMap>> {
        if self.order > bound as u128 {
            return Err(Error::resource("Aut(T,β) enumeration", self.order, bound));
        }
        Self::enumerate_raw(&self.group, bound)
    }
}

fn close_maps(t: &TorsionGroup, gens: &[SymplecticMap]) -> HashSet<SymplecticMap> {
    let id = SymplecticMap::identity(t);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(t, &x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// The unique `t_α` with `β(t_α, t) = β(α⁻¹(t))β(t)` for all `t`.
pub fn t_alpha(t: &TorsionGroup, alpha: &SymplecticMap) -> Result<TorsionElement> {
    t.require_elementary2("t_α")?;
    let inv = alpha.inverse(t);
    // χ(t) = Q(α⁻¹t) + Q(t) is additive; ω(x, a_k) = j_k(x), ω(x, b_k) = i_k(x).
    let chi = |x: &TorsionElement| quad_bits(inv.apply(t, x).to_bits()) ^ quad_bits(x.to_bits());
    let mut exps = vec![0u8; t.dim()];
    for k in 0..t.rank() {
        exps[2 * k] = chi(&t.b(k));
        exps[2 * k + 1] = chi(&t.a(k));
    }
    let ta = TorsionElement::from_exps(&exps);
    for x in t.elements() {
        if t.omega(&ta, &x) != chi(&x) {
            return Err(Error::Verification(format!(
                "t_α = {ta} fails the defining identity at {x}"
            )));
        }
    }
    Ok(ta)
}

/// An element `(u, α)` of `T ⋊ Aut(T, β)`, acting by `t ↦ α(t)u`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AffineSymplectic {
    pub shift: TorsionElement,
    pub map: SymplecticMap,
}

impl AffineSymplectic {
    pub fn identity(t: &TorsionGroup) -> Self {
        AffineSymplectic {
            shift: t.identity(),
            map: SymplecticMap::identity(t),
        }
    }

    pub fn linear(t: &TorsionGroup, map: SymplecticMap) -> Self {
        AffineSymplectic {
            shift: t.identity(),
            map,
        }
    }

    pub fn translation(t: &TorsionGroup, u: TorsionElement) -> Self {
        AffineSymplectic {
            shift: u,
            map: SymplecticMap::identity(t),
        }
    }

    /// `(u, α)(v, γ) = (α(v)u, αγ)`.
    pub fn compose(&self, t: &TorsionGroup, other: &Self) -> Self {
        AffineSymplectic {
            shift: t.mul(&self.map.apply(t, &other.shift), &self.shift),
            map: self.map.compose(t, &other.map),
        }
    }

    pub fn inverse(&self, t: &TorsionGroup) -> Self {
        let inv = self.map.inverse(t);
        AffineSymplectic {
            shift: inv.apply(t, &t.inv(&self.shift)),
            map: inv,
        }
    }

    pub fn is_identity(&self, t: &TorsionGroup) -> bool {
        self.shift.is_identity() && self.map.is_identity(t)
    }
}

/// How `Aut(T, β)` (or the affine group) acts on `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionKind {
    /// `(u, α)·t = α(t)u`.
    Natural,
    /// `α·t = α(t)t_α`; the shift is ignored.
    Twisted,
}

/// Applies `g` to `x` under the given action.
pub fn act(t: &TorsionGroup, kind: ActionKind, g: &AffineSymplectic, x: &TorsionElement) -> Result<TorsionElement> {
    Ok(match kind {
        ActionKind::Natural => t.mul(&g.map.apply(t, x), &g.shift),
        ActionKind::Twisted => t.mul(&g.map.apply(t, x), &t_alpha(t, &g.map)?),
    })
}

/// The multiset `Σ(τ)`, stored as a sorted list with repetitions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultisetSigma {
    entries: Vec<TorsionElement>,
}

impl MultisetSigma {
    pub fn new(mut entries: Vec<TorsionElement>) -> Self {
        entries.sort();
        MultisetSigma { entries }
    }

    pub fn entries(&self) -> &[TorsionElement] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(t, multiplicity)` in sorted order.
    pub fn blocks(&self) -> Vec<(TorsionElement, usize)> {
        let mut out: Vec<(TorsionElement, usize)> = Vec::new();
        for e in &self.entries {
            match out.last_mut() {
                Some((x, n)) if x == e => *n += 1,
                _ => out.push((*e, 1)),
            }
        }
        out
    }

    /// Applies a precomputed map on `T` to every entry.
    fn image(&self, f: impl Fn(&TorsionElement) -> TorsionElement) -> Self {
        MultisetSigma::new(self.entries.iter().map(f).collect())
    }
}

/// A group acting on `T`: generators, order and a cached `t_α` table.
struct ActingGroup<'a> {
    t: &'a TorsionGroup,
    kind: ActionKind,
    gens: Vec<AffineSymplectic>,
    order: u128,
}

impl<'a> ActingGroup<'a> {
    fn new(t: &'a TorsionGroup, kind: ActionKind) -> Result<Self> {
        t.require_elementary2("multiset action")?;
        let aut = AutGroup::new(t, u64::MAX)?;
        let mut gens: Vec<AffineSymplectic> = aut
            .generators()
            .iter()
            .map(|m| AffineSymplectic::linear(t, m.clone()))
            .collect();
        let mut order = aut.order();
        if kind == ActionKind::Natural {
            gens.extend((0..t.dim()).map(|p| AffineSymplectic::translation(t, t.basis(p))));
            order *= t.order() as u128;
        }
        Ok(ActingGroup { t, kind, gens, order })
    }

    fn pointwise(&self, g: &AffineSymplectic) -> Result<Vec<TorsionElement>> {
        let elems = self.t.elements();
        let extra = match self.kind {
            ActionKind::Natural => g.shift,
            ActionKind::Twisted => t_alpha(self.t, &g.map)?,
        };
        Ok(elems
            .iter()
            .map(|x| self.t.mul(&g.map.apply(self.t, x), &extra))
            .collect())
    }

    fn act_sigma(&self, g: &AffineSymplectic, s: &MultisetSigma) -> Result<MultisetSigma> {
        let table = self.pointwise(g)?;
        Ok(s.image(|x| table[self.t.index(x)]))
    }

    /// Breadth-first orbit of `s` with a transversal: `trans[σ]·s = σ`.
    fn orbit(&self, s: &MultisetSigma, bound: u64) -> Result<HashMap<MultisetSigma, AffineSymplectic>> {
        let tables: Vec<Vec<TorsionElement>> = self
            .gens
            .iter()
            .map(|g| self.pointwise(g))
            .collect::<Result<_>>()?;
        let mut trans = HashMap::from([(s.clone(), AffineSymplectic::identity(self.t))]);
        let mut queue = VecDeque::from([s.clone()]);
        while let Some(x) = queue.pop_front() {
            for (g, tab) in self.gens.iter().zip(&tables) {
                let y = x.image(|e| tab[self.t.index(e)]);
                if !trans.contains_key(&y) {
                    if trans.len() as u64 >= bound {
                        return Err(Error::resource("multiset orbit", "more points", bound));
                    }
                    let w = g.compose(self.t, &trans[&x]);
                    trans.insert(y.clone(), w);
                    queue.push_back(y);
                }
            }
        }
        Ok(trans)
    }
}

/// The result of [`sigma_stabilizer`].
#[derive(Clone, Debug)]
pub struct Stabilizer {
    pub order: u128,
    pub orbit_size: u64,
    pub group_order: u128,
    pub generators: Vec<AffineSymplectic>,
}

/// Stabilizer of `Σ` in `T ⋊ Aut(T, β)` (natural) or `Aut(T, β)` (twisted).
///
/// The orbit is explored breadth first with a transversal; Schreier
/// generators are then thinned to a small generating set whenever the
/// stabilizer itself fits within `bound`.
pub fn sigma_stabilizer(
    t: &TorsionGroup,
    sigma: &MultisetSigma,
    kind: ActionKind,
    bound: u64,
) -> Result<Stabilizer> {
    let g = ActingGroup::new(t, kind)?;
    let trans = g.orbit(sigma, bound)?;
    let orbit_size = trans.len() as u64;
    let order = g.order / orbit_size as u128;

    let mut points: Vec<&MultisetSigma> = trans.keys().collect();
    points.sort();
    let mut schreier: Vec<AffineSymplectic> = Vec::new();
    let mut seen: HashSet<AffineSymplectic> = HashSet::new();
    for p in points {
        let tp = &trans[p];
        for gen in &g.gens {
            let y = g.act_sigma(gen, p)?;
            let s = trans[&y].inverse(t).compose(t, &gen.compose(t, tp));
            let s = normalize(kind, t, s);
            if !s.is_identity(t) && seen.insert(s.clone()) {
                schreier.push(s);
            }
        }
    }
    for s in &schreier {
        debug_assert_eq!(&g.act_sigma(s, sigma)?, sigma);
    }
    let generators = if order <= bound as u128 {
        thin_generators(t, kind, schreier, order)
    } else {
        schreier
    };
    Ok(Stabilizer {
        order,
        orbit_size,
        group_order: g.order,
        generators,
    })
}

fn normalize(kind: ActionKind, t: &TorsionGroup, mut g: AffineSymplectic) -> AffineSymplectic {
    if kind == ActionKind::Twisted {
        g.shift = t.identity();
    }
    g
}

/// Keeps a generator only if it is not yet in the group generated by the
/// earlier ones; stops once the generated group reaches `order`.
fn thin_generators(
    t: &TorsionGroup,
    kind: ActionKind,
    candidates: Vec<AffineSymplectic>,
    order: u128,
) -> Vec<AffineSymplectic> {
    let id = AffineSymplectic::identity(t);
    let mut kept: Vec<AffineSymplectic> = Vec::new();
    let mut closure: HashSet<AffineSymplectic> = HashSet::from([id.clone()]);
    for c in candidates {
        if closure.len() as u128 >= order {
            break;
        }
        if closure.contains(&c) {
            continue;
        }
        kept.push(c);
        // Grow the closure by right multiplication with all kept generators.
        let mut queue: VecDeque<AffineSymplectic> = closure.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for g in &kept {
                let y = normalize(kind, t, x.compose(t, g));
                if closure.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    kept
}

/// The lexicographically least multiset in the orbit of `Σ`, with an
/// element `w` such that `w·Σ` is that representative.
pub fn canonical_sigma(
    t: &TorsionGroup,
    sigma: &MultisetSigma,
    kind: ActionKind,
    bound: u64,
) -> Result<(MultisetSigma, AffineSymplectic)> {
    if t.is_trivial() {
        return Ok((sigma.clone(), AffineSymplectic::identity(t)));
    }
    let g = ActingGroup::new(t, kind)?;
    let trans = g.orbit(sigma, bound)?;
    let (rep, w) = trans.into_iter().min_by(|a, b| a.0.cmp(&b.0)).unwrap();
    Ok((rep, w))
}

/// Some `w` with `w·Σ₁ = Σ₂`, if the two multisets lie in one orbit.
pub fn conjugating_element(
    t: &TorsionGroup,
    s1: &MultisetSigma,
    s2: &MultisetSigma,
    kind: ActionKind,
    bound: u64,
) -> Result<Option<AffineSymplectic>> {
    if s1.len() != s2.len() {
        return Ok(None);
    }
    let (c1, w1) = canonical_sigma(t, s1, kind, bound)?;
    let (c2, w2) = canonical_sigma(t, s2, kind, bound)?;
    if c1 != c2 {
        return Ok(None);
    }
    Ok(Some(normalize(kind, t, w2.inverse(t).compose(t, &w1))))
}

/// The permutation of `0..q` induced on the sorted tuple `τ` by an element
/// stabilizing `Σ(τ)`: the `m`-th occurrence of `t` goes to the `m`-th
/// occurrence of `g·t`.
pub fn restriction_to_sym(
    t: &TorsionGroup,
    kind: ActionKind,
    g: &AffineSymplectic,
    sorted_tau: &[TorsionElement],
) -> Result<Vec<usize>> {
    let mut first: HashMap<TorsionElement, usize> = HashMap::new();
    let mut count: HashMap<TorsionElement, usize> = HashMap::new();
    for (i, x) in sorted_tau.iter().enumerate() {
        first.entry(*x).or_insert(i);
        *count.entry(*x).or_insert(0) += 1;
    }
    let mut perm = Vec::with_capacity(sorted_tau.len());
    for (i, x) in sorted_tau.iter().enumerate() {
        let y = act(t, kind, g, x)?;
        match first.get(&y) {
            Some(&start) if count[&y] == count[x] => perm.push(start + (i - first[x])),
            _ => return Err(Error::Domain("element does not stabilize Σ".into())),
        }
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sp_orders_small() {
        for r in 0..=2 {
            let t = TorsionGroup::elementary(r);
            let aut = AutGroup::new(&t, 1 << 20).unwrap();
            assert_eq!(aut.count_by_enumeration(), sp2_order_closed_form(r));
        }
        assert_eq!(sp2_order_closed_form(1), 6);
        assert_eq!(sp2_order_closed_form(2), 720);
        assert_eq!(sp2_order_closed_form(3), 1_451_520);
    }

    #[test]
    fn aut_z3_squared() {
        let t = TorsionGroup::new(vec![3]).unwrap();
        let aut = AutGroup::new(&t, 1000).unwrap();
        assert_eq!(aut.order(), 24);
        assert_eq!(close_maps(&t, aut.generators()).len(), 24);
    }

    #[test]
    fn inverse_and_compose() {
        let t = TorsionGroup::new(vec![3, 2]).unwrap();
        let aut = AutGroup::new(&t, 100_000).unwrap();
        for g in aut.elements(100_000).unwrap().iter().step_by(37) {
            assert!(g.compose(&t, &g.inverse(&t)).is_identity(&t));
        }
    }

    #[test]
    fn t_alpha_examples() {
        let t = TorsionGroup::elementary(1);
        let id = SymplecticMap::identity(&t);
        assert_eq!(t_alpha(&t, &id).unwrap(), t.identity());
        let ab = t.mul(&t.a(0), &t.b(0));
        let alpha = SymplecticMap::from_images(&t, vec![t.a(0), ab]).unwrap();
        assert_eq!(t_alpha(&t, &alpha).unwrap(), t.a(0));
    }

    #[test]
    fn stabilizer_examples() {
        let t = TorsionGroup::elementary(1);
        let empty = MultisetSigma::new(vec![]);
        let st = sigma_stabilizer(&t, &empty, ActionKind::Natural, 1 << 20).unwrap();
        assert_eq!(st.order, 24);
        let sa = MultisetSigma::new(vec![t.a(0)]);
        let st = sigma_stabilizer(&t, &sa, ActionKind::Natural, 1 << 20).unwrap();
        assert_eq!((st.orbit_size, st.order), (4, 6));
        let sab = MultisetSigma::new(vec![t.mul(&t.a(0), &t.b(0))]);
        let st = sigma_stabilizer(&t, &sab, ActionKind::Twisted, 1 << 20).unwrap();
        assert_eq!((st.orbit_size, st.order), (1, 6));
    }

    #[test]
    fn twisted_orbits_split_by_sign() {
        let t = TorsionGroup::elementary(1);
        let e = MultisetSigma::new(vec![t.identity()]);
        let a = MultisetSigma::new(vec![t.a(0)]);
        let ab = MultisetSigma::new(vec![t.mul(&t.a(0), &t.b(0))]);
        let k = ActionKind::Twisted;
        let w = conjugating_element(&t, &e, &a, k, 1000).unwrap().unwrap();
        assert_eq!(act(&t, k, &w, &t.identity()).unwrap(), t.a(0));
        assert!(conjugating_element(&t, &e, &ab, k, 1000).unwrap().is_none());
    }

    #[test]
    fn restriction_respects_blocks() {
        let t = TorsionGroup::elementary(1);
        let tau = vec![t.identity(), t.identity(), t.a(0)];
        let g = AffineSymplectic::translation(&t, t.a(0));
        assert!(restriction_to_sym(&t, ActionKind::Natural, &g, &tau).is_err());
        let tau = vec![t.identity(), t.a(0)];
        let p = restriction_to_sym(&t, ActionKind::Natural, &g, &tau).unwrap();
        assert_eq!(p, vec![1, 0]);
    }
}
