//! Weyl groups of fine gradings on simple Lie algebras of series A, B, C, D:
//! closed-form descriptions, explicit generators realized as symbolic
//! automorphisms of `M_k(D)`, and a brute-force closure on the support.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::automorphism::{root_in_field, BasisMap, DivisionMap, SymbolicAutomorphism};
use crate::diag::{diag_membership, diagonal_part, DiagElement};
use crate::division::Homog;
use crate::error::{Error, Result};
use crate::grading::{GradedMatrixAlgebra, GradingSpec, Series, SupportElement};
use crate::involution::{build_phi, FormMatrix};
use crate::scalar::Cyclotomic;
use crate::symplectic::{sigma_stabilizer, t_alpha, ActionKind, AutGroup, MultisetSigma};
use crate::torsion::{TorsionElement, TorsionGroup};

/// Shape of a node in a [`WeylDescription`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TermOp {
    /// A named group with no further structure recorded.
    Group,
    Direct,
    /// `parts[0] ⋊ parts[1] ⋊ …`, each part normalized by the later ones.
    Semidirect,
    /// `Z₂^s ⋊ Sym(s)`, stored as its base and top groups.
    Wreath,
    /// An extension with kernel `parts[0]` and quotient `parts[1]`.
    Extension,
}

/// A group term together with its exact order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylDescription {
    pub op: TermOp,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<WeylDescription>,
    #[serde(serialize_with = "decimal")]
    pub order: BigUint,
}

fn decimal<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl WeylDescription {
    pub fn group(name: impl Into<String>, order: BigUint) -> Self {
        WeylDescription {
            op: TermOp::Group,
            name: Some(name.into()),
            parts: Vec::new(),
            order,
        }
    }

    pub fn node(op: TermOp, name: Option<&str>, parts: Vec<WeylDescription>) -> Self {
        let order = parts.iter().map(|p| p.order.clone()).product();
        WeylDescription {
            op,
            name: name.map(String::from),
            parts,
            order,
        }
    }

    /// Checks that every node's order is the product of its parts' orders.
    pub fn orders_consistent(&self) -> bool {
        self.parts.is_empty()
            || (self.parts.iter().map(|p| p.order.clone()).product::<BigUint>() == self.order
                && self.parts.iter().all(Self::orders_consistent))
    }

    /// The first node named `name`, or `name = …` for leaves.
    pub fn find(&self, name: &str) -> Option<&WeylDescription> {
        let hit = self
            .name
            .as_deref()
            .is_some_and(|n| n == name || n.strip_prefix(name).is_some_and(|r| r.starts_with(" = ")));
        if hit {
            return Some(self);
        }
        self.parts.iter().find_map(|p| p.find(name))
    }

    pub fn order_u128(&self) -> Option<u128> {
        u128::try_from(&self.order).ok()
    }
}

impl fmt::Display for WeylDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.op == TermOp::Group {
            return f.write_str(self.name.as_deref().unwrap_or("?"));
        }
        let sep = match self.op {
            TermOp::Direct => " x ",
            TermOp::Semidirect => " ⋊ ",
            TermOp::Wreath => " wr ",
            TermOp::Extension => " . ",
            TermOp::Group => unreachable!(),
        };
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

fn power(base: u64, e: usize) -> BigUint {
    BigUint::from(base).pow(e as u32)
}

fn elementary(name: &str, base: u64, e: usize) -> WeylDescription {
    WeylDescription::group(format!("{name}^{e}"), power(base, e))
}

/// `W(s) = Z₂^s ⋊ Sym(s)`.
fn w_of(s: usize) -> WeylDescription {
    WeylDescription::node(
        TermOp::Wreath,
        Some("W(s)"),
        vec![elementary("Z2", 2, s), WeylDescription::group(format!("Sym({s})"), factorial(s))],
    )
}

/// Multiplicities of the distinct entries of `τ`.
fn multiplicities(tau: &[TorsionElement]) -> Vec<usize> {
    MultisetSigma::new(tau.to_vec()).blocks().into_iter().map(|(_, m)| m).collect()
}

fn sym_sigma(tau: &[TorsionElement]) -> WeylDescription {
    let m = multiplicities(tau);
    let label = if m.is_empty() {
        "1".to_string()
    } else {
        m.iter().map(|x| format!("Sym({x})")).collect::<Vec<_>>().join(" x ")
    };
    let order = m.iter().map(|&x| factorial(x)).product();
    WeylDescription::group(format!("SymΣ = {label}"), order)
}

/// `(T^{q+s−1} × Z₂^s) ⋊ (SymΣ × Sym(s))`.
fn core_term(t: &TorsionGroup, q: usize, s: usize, tau: &[TorsionElement]) -> WeylDescription {
    let k = WeylDescription::node(
        TermOp::Direct,
        None,
        vec![elementary("T", t.order(), q + s - 1), elementary("Z2", 2, s)],
    );
    let top = WeylDescription::node(
        TermOp::Direct,
        None,
        vec![sym_sigma(tau), WeylDescription::group(format!("Sym({s})"), factorial(s))],
    );
    WeylDescription::node(TermOp::Semidirect, None, vec![k, top])
}

/// The Weyl group of the fine grading named by `spec`, as a structured term.
pub fn weyl_closed_form(spec: &GradingSpec, bound: u64) -> Result<WeylDescription> {
    spec.validate()?;
    let t = &spec.group;
    let (q, s) = (spec.q, spec.s);
    Ok(match spec.series {
        Series::AI => {
            if spec.n() < 2 {
                return Err(Error::Domain("sl_n needs n >= 2".into()));
            }
            if spec.n() == 2 {
                return Ok(if t.is_trivial() {
                    WeylDescription::group("Sym(2)", BigUint::from(2u8))
                } else {
                    WeylDescription::group("Sp2(2)", BigUint::from(6u8))
                });
            }
            let k = spec.k;
            let aut = AutGroup::new(t, bound)?;
            let bar = WeylDescription::node(
                TermOp::Semidirect,
                Some("⎺Aut(T,β)"),
                vec![
                    WeylDescription::group("Aut(T,β)", BigUint::from(aut.order())),
                    WeylDescription::group("flip_map σ", BigUint::from(2u8)),
                ],
            );
            let top = WeylDescription::node(
                TermOp::Direct,
                None,
                vec![WeylDescription::group(format!("Sym({k})"), factorial(k)), bar],
            );
            WeylDescription::node(TermOp::Semidirect, Some("W"), vec![elementary("T", t.order(), k - 1), top])
        }
        Series::B => WeylDescription::node(
            TermOp::Direct,
            Some("W"),
            vec![WeylDescription::group(format!("Sym({q})"), factorial(q)), w_of(s)],
        ),
        Series::C | Series::D => {
            let stab = sigma_stabilizer(t, &MultisetSigma::new(spec.tau.clone()), ActionKind::Twisted, bound)?;
            WeylDescription::node(
                TermOp::Semidirect,
                Some("W"),
                vec![
                    core_term(t, q, s, &spec.tau),
                    WeylDescription::group("AutΣ", BigUint::from(stab.order)),
                ],
            )
        }
        Series::AII => {
            let stab = sigma_stabilizer(t, &MultisetSigma::new(spec.tau.clone()), ActionKind::Natural, bound)?;
            let quotient = WeylDescription::node(
                TermOp::Semidirect,
                Some("Q"),
                vec![
                    core_term(t, q, s, &spec.tau),
                    WeylDescription::group("Aut*Σ", BigUint::from(stab.order)),
                ],
            );
            WeylDescription::node(
                TermOp::Extension,
                Some("W"),
                vec![
                    WeylDescription::group(format!("N = Z2^{}", q + s - 1), power(2, q + s - 1)),
                    quotient,
                ],
            )
        }
        Series::RawM | Series::RawMPhi => {
            return Err(Error::Domain(format!("no Weyl group is attached to series {}", spec.series)))
        }
    })
}

/// What a realized generator stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    /// Degree shift on one block group.
    BlockShift,
    /// Exchange of the two members of one pair.
    PairExchange,
    /// Exchange of two adjacent pairs.
    PairSwap,
    /// Transposition of two blocks with equal `t_i`.
    SymSigma,
    /// `ψ_α` for `α` in the twisted stabilizer of `Σ`.
    AutSigma,
    /// `ψ_{u,α}` for `(u, α)` in the natural stabilizer of `Σ`.
    AutStarSigma,
    /// Diagonal signs producing the kernel `N`.
    KernelSign,
    /// Negative transpose.
    Flip,
    /// Transposition of two blocks.
    Transposition,
    /// `ψ₀` lifting an element of `Aut(T, β)`.
    AutT,
}

/// A generator of the Weyl group, realized on `M_k(D)`.
#[derive(Clone, Debug)]
pub struct WeylGenerator {
    pub kind: GeneratorKind,
    pub label: String,
    pub psi: SymbolicAutomorphism,
    /// `ξ` with `ψφψ⁻¹ = ξφ`; `None` when `ψ` commutes with `φ`.
    pub xi: Option<DiagElement>,
    /// `d₀` of the transported form, for series with an anti-automorphism.
    pub d0: Option<Homog>,
}

/// How the free scalars `λ_i` are picked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootChoice {
    /// Least exponent of a root of unity.
    Least,
    /// The negative of the least choice on every block.
    Alternate,
}

fn xi_entries(xi: &DiagElement) -> Vec<Homog> {
    xi.lambdas
        .iter()
        .map(|l| Homog {
            coeff: l.clone(),
            deg: xi.twist,
        })
        .collect()
}

fn phi_prime(alg: &GradedMatrixAlgebra, phi: &FormMatrix, xi: Option<&DiagElement>) -> Result<FormMatrix> {
    match xi {
        Some(x) => phi.times_diag_inv(alg.pauli(), &xi_entries(x)),
        None => Ok(phi.clone()),
    }
}

/// Finds `λ_i` with `Ψ = Σ E_{π(i),i} ⊗ λ_i X_{u_i}` satisfying the
/// transported-form condition for some `d₀ = c X_g`. Returns `(d_i, d₀)`.
fn solve_lambdas(
    alg: &GradedMatrixAlgebra,
    phi: &FormMatrix,
    perm: &[usize],
    degrees: &[TorsionElement],
    division: &DivisionMap,
    xi: Option<&DiagElement>,
    choice: RootChoice,
) -> Result<(Vec<Homog>, Homog)> {
    let p = alg.pauli();
    let t = alg.group();
    let k = perm.len();
    let rho = &phi.cols;
    if (0..k).any(|a| perm[rho[a]] != rho[perm[a]]) {
        return Err(Error::Verification("block permutation does not commute with the form".into()));
    }
    let fp = phi_prime(alg, phi, xi)?;
    // Φ̂_a = d_a^T Φ'_{π(a)} d_{ρ(a)} with unit coefficients, and ψ₀(Φ_a).
    let lhs: Vec<Homog> = (0..k)
        .map(|a| {
            let da = p.transpose(&p.basis(degrees[a]));
            p.mul(&p.mul(&da, &fp.entries[perm[a]]), &p.basis(degrees[rho[a]]))
        })
        .collect();
    let rhs: Vec<Homog> = (0..k).map(|a| division.apply(p, &phi.entries[a])).collect();
    let g = t.div(&lhs[0].deg, &rhs[0].deg);
    let n = p.conductor();
    let minus = p.one().integer_like(-1);
    for e in 0..n as i64 {
        let d0 = Homog {
            coeff: Cyclotomic::root_of_unity(n, e),
            deg: g,
        };
        let mut ratios = Vec::with_capacity(k);
        for a in 0..k {
            let r = p.mul(&d0, &rhs[a]);
            if r.deg != lhs[a].deg {
                return Err(Error::Verification(format!("degree mismatch in the transported form at block {a}")));
            }
            ratios.push(&r.coeff * &lhs[a].coeff.inv()?);
        }
        let mut lambdas: Vec<Option<Cyclotomic>> = vec![None; k];
        let mut ok = true;
        for a in 0..k {
            if rho[a] == a {
                // Square roots of 4th roots of unity may leave the context field.
                match root_in_field(&ratios[a], 2).or_else(|| ratios[a].sqrt_root_of_unity()) {
                    Some(l) => lambdas[a] = Some(l),
                    None => {
                        ok = false;
                        break;
                    }
                }
            } else if a < rho[a] {
                lambdas[a] = Some(p.one());
                lambdas[rho[a]] = Some(ratios[a].clone());
            }
        }
        if !ok {
            continue;
        }
        let mut lambdas: Vec<Cyclotomic> = lambdas.into_iter().map(Option::unwrap).collect();
        if choice == RootChoice::Alternate {
            for l in &mut lambdas {
                *l = &*l * &minus;
            }
        }
        if (0..k).all(|a| &lambdas[a] * &lambdas[rho[a]] == ratios[a]) {
            let diag = lambdas
                .into_iter()
                .zip(degrees)
                .map(|(coeff, &deg)| Homog { coeff, deg })
                .collect();
            return Ok((diag, d0));
        }
    }
    Err(Error::Verification("no scalars satisfy the transported-form condition".into()))
}

/// Checks `Φ̂ = d₀ ψ₀(Φ)` with `Φ̂ = Ψ^T Φ' Ψ`, `Φ' = Φ D'⁻¹`, and returns `d₀`.
pub fn transported_form(
    alg: &GradedMatrixAlgebra,
    phi: &FormMatrix,
    psi: &SymbolicAutomorphism,
    xi: Option<&DiagElement>,
) -> Result<Homog> {
    let p = alg.pauli();
    let k = psi.perm.len();
    let fp = phi_prime(alg, phi, xi)?;
    let mut inv_perm = vec![0; k];
    for (i, &j) in psi.perm.iter().enumerate() {
        inv_perm[j] = i;
    }
    let mut hat = Vec::with_capacity(k);
    for a in 0..k {
        let b = inv_perm[fp.cols[psi.perm[a]]];
        if b != phi.cols[a] {
            return Err(Error::Verification(format!("transported form has the wrong shape at block {a}")));
        }
        let da = p.transpose(&psi.diag[a]);
        hat.push(p.mul(&p.mul(&da, &fp.entries[psi.perm[a]]), &psi.diag[b]));
    }
    let image: Vec<Homog> = phi.entries.iter().map(|f| psi.division.apply(p, f)).collect();
    let d0 = p.mul(&hat[0], &p.inv(&image[0])?);
    for a in 0..k {
        if hat[a] != p.mul(&d0, &image[a]) {
            return Err(Error::Verification(format!("transported-form condition fails at block {a}")));
        }
    }
    Ok(d0)
}

/// Exact checks on one generator: (anti)multiplicativity, the induced
/// support permutation against its symbolic prediction, and for φ-series
/// the transported form and `ψφψ⁻¹φ⁻¹ = ξ` on the basis.
pub fn verify_generator(alg: &GradedMatrixAlgebra, phi: Option<&FormMatrix>, gen: &WeylGenerator) -> Result<()> {
    let fail = |what: &str| Error::Verification(format!("generator {}: {what}", gen.label));
    let map = gen.psi.to_basis_map(alg)?;
    map.check_multiplicative(alg)?;
    let perm = map.support_permutation(alg)?;
    for (z, w) in &perm {
        if gen.psi.map_support(alg, z) != *w {
            return Err(fail("symbolic support image disagrees with the basis map"));
        }
    }
    if let Some(form) = phi {
        let d0 = transported_form(alg, form, &gen.psi, gen.xi.as_ref())?;
        if gen.d0.as_ref().is_some_and(|x| *x != d0) {
            return Err(fail("stored d0 differs from the transported form"));
        }
        let phi_map = form.adjoint_map(alg)?;
        let commutator = map
            .compose(&phi_map)
            .compose(&map.inverse()?)
            .compose(&phi_map.inverse()?);
        let expected = match &gen.xi {
            Some(x) => x.to_basis_map(alg)?,
            None => BasisMap::identity(alg),
        };
        if commutator != expected {
            return Err(fail("ψφψ⁻¹φ⁻¹ differs from ξ"));
        }
    }
    Ok(())
}

/// The permutation `π` with `targets[i] = τ[π(i)]`, matching repeated
/// values occurrence by occurrence.
fn matching_permutation(tau: &[TorsionElement], targets: &[TorsionElement]) -> Result<Vec<usize>> {
    let mut used = vec![false; tau.len()];
    targets
        .iter()
        .map(|x| {
            let j = (0..tau.len())
                .find(|&j| !used[j] && tau[j] == *x)
                .ok_or_else(|| Error::Verification("stabilizer element does not permute τ".into()))?;
            used[j] = true;
            Ok(j)
        })
        .collect()
}

struct Builder<'a> {
    alg: &'a GradedMatrixAlgebra,
    phi: Option<FormMatrix>,
    choice: RootChoice,
    out: Vec<WeylGenerator>,
}

impl Builder<'_> {
    fn identity_perm(&self) -> Vec<usize> {
        (0..self.alg.blocks()).collect()
    }

    fn trivial_degrees(&self) -> Vec<TorsionElement> {
        vec![self.alg.group().identity(); self.alg.blocks()]
    }

    /// Adds a φ-respecting generator, solving for the diagonal scalars.
    fn solved(
        &mut self,
        kind: GeneratorKind,
        label: String,
        perm: Vec<usize>,
        degrees: Vec<TorsionElement>,
        division: DivisionMap,
        xi: Option<DiagElement>,
    ) -> Result<()> {
        let form = self.phi.as_ref().expect("φ-series");
        let (diag, d0) = solve_lambdas(self.alg, form, &perm, &degrees, &division, xi.as_ref(), self.choice)?;
        let psi = SymbolicAutomorphism {
            perm,
            diag,
            division,
            flip: false,
        };
        self.push(WeylGenerator {
            kind,
            label,
            psi,
            xi,
            d0: Some(d0),
        })
    }

    fn push(&mut self, gen: WeylGenerator) -> Result<()> {
        verify_generator(self.alg, self.phi.as_ref(), &gen)?;
        self.out.push(gen);
        Ok(())
    }

    /// Block groups: each `τ` block alone, each pair as two blocks.
    fn block_groups(&self) -> Vec<Vec<usize>> {
        let spec = self.alg.spec();
        let mut g: Vec<Vec<usize>> = (0..spec.q).map(|i| vec![i]).collect();
        g.extend((0..spec.s).map(|j| vec![spec.q + 2 * j, spec.q + 2 * j + 1]));
        g
    }

    fn phi_common(&mut self) -> Result<()> {
        let spec = self.alg.spec().clone();
        let t = spec.group.clone();
        let p = self.alg.pauli().clone();
        for (m, group) in self.block_groups().into_iter().enumerate() {
            for b in 0..t.dim() {
                let mut deg = self.trivial_degrees();
                for &i in &group {
                    deg[i] = t.basis(b);
                }
                let label = format!("shift block group {} by {}", m + 1, t.basis(b));
                self.solved(GeneratorKind::BlockShift, label, self.identity_perm(), deg, DivisionMap::identity(&p), None)?;
            }
        }
        for j in 0..spec.s {
            let a = spec.q + 2 * j;
            let mut perm = self.identity_perm();
            perm.swap(a, a + 1);
            let label = format!("exchange within pair {}", j + 1);
            self.solved(GeneratorKind::PairExchange, label, perm, self.trivial_degrees(), DivisionMap::identity(&p), None)?;
        }
        for j in 0..spec.s.saturating_sub(1) {
            let a = spec.q + 2 * j;
            let mut perm = self.identity_perm();
            perm.swap(a, a + 2);
            perm.swap(a + 1, a + 3);
            let label = format!("swap pairs {} and {}", j + 1, j + 2);
            self.solved(GeneratorKind::PairSwap, label, perm, self.trivial_degrees(), DivisionMap::identity(&p), None)?;
        }
        for i in 0..spec.q {
            if let Some(j) = (i + 1..spec.q).find(|&j| spec.tau[j] == spec.tau[i]) {
                let mut perm = self.identity_perm();
                perm.swap(i, j);
                let label = format!("transpose blocks {} and {}", i + 1, j + 1);
                self.solved(GeneratorKind::SymSigma, label, perm, self.trivial_degrees(), DivisionMap::identity(&p), None)?;
            }
        }
        Ok(())
    }

    /// `ψ_α` for the twisted stabilizer of `Σ` (series B, C, D).
    fn aut_sigma(&mut self, bound: u64) -> Result<()> {
        let spec = self.alg.spec().clone();
        let t = spec.group.clone();
        let stab = sigma_stabilizer(&t, &MultisetSigma::new(spec.tau.clone()), ActionKind::Twisted, bound)?;
        for (n, g) in stab.generators.iter().enumerate() {
            let ta = t_alpha(&t, &g.map)?;
            let targets: Vec<TorsionElement> = spec.tau.iter().map(|x| t.mul(&g.map.apply(&t, x), &ta)).collect();
            let mut perm = matching_permutation(&spec.tau, &targets)?;
            let mut deg = self.trivial_degrees();
            for j in 0..spec.s {
                let a = spec.q + 2 * j;
                perm.extend([a, a + 1]);
                deg[a + 1] = ta;
            }
            let division = DivisionMap::normalized(self.alg.pauli(), &g.map)?;
            self.solved(GeneratorKind::AutSigma, format!("ψ_α #{}", n + 1), perm, deg, division, None)?;
        }
        Ok(())
    }

    /// `ψ_{u,α}` for the natural stabilizer of `Σ`, and the kernel signs (series AII).
    fn aut_star_sigma(&mut self, bound: u64) -> Result<()> {
        let spec = self.alg.spec().clone();
        let t = spec.group.clone();
        let p = self.alg.pauli().clone();
        let stab = sigma_stabilizer(&t, &MultisetSigma::new(spec.tau.clone()), ActionKind::Natural, bound)?;
        let sign = |x: i8| p.one().integer_like(x as i64);
        for (n, g) in stab.generators.iter().enumerate() {
            let v = g.shift;
            let ta = t_alpha(&t, &g.map)?;
            let u = t.mul(&v, &ta);
            let bu = sign(t.quad_sign(&u)?);
            let targets: Vec<TorsionElement> = spec.tau.iter().map(|x| t.mul(&g.map.apply(&t, x), &v)).collect();
            let mut perm = matching_permutation(&spec.tau, &targets)?;
            let mut deg = self.trivial_degrees();
            let mut nu = Vec::with_capacity(spec.k);
            for x in &spec.tau {
                let sq = &p.beta(&u, x) * &bu;
                nu.push(root_in_field(&sq, 2).ok_or_else(|| Error::Verification("ν has no square root".into()))?);
            }
            for j in 0..spec.s {
                let a = spec.q + 2 * j;
                perm.extend([a, a + 1]);
                deg[a + 1] = v;
                nu.extend([bu.clone(), p.one()]);
            }
            let xi = DiagElement { lambdas: nu, twist: u };
            let division = DivisionMap::normalized(&p, &g.map)?;
            self.solved(GeneratorKind::AutStarSigma, format!("ψ_(u,α) #{}", n + 1), perm, deg, division, Some(xi))?;
        }
        let z4 = Cyclotomic::root_of_unity(p.conductor(), p.conductor() as i64 / 4);
        for (m, group) in self.block_groups().into_iter().enumerate() {
            let mut lambdas = vec![p.one(); spec.k];
            let mut nu = vec![p.one(); spec.k];
            if group.len() == 1 {
                lambdas[group[0]] = z4.clone();
            } else {
                lambdas[group[0]] = sign(-1);
            }
            for &i in &group {
                nu[i] = sign(-1);
            }
            let diag = DiagElement {
                lambdas,
                twist: t.identity(),
            };
            let xi = DiagElement {
                lambdas: nu,
                twist: t.identity(),
            };
            self.push(WeylGenerator {
                kind: GeneratorKind::KernelSign,
                label: format!("sign on block group {}", m + 1),
                psi: diag.as_automorphism(self.alg),
                xi: Some(xi),
                d0: None,
            })?;
        }
        Ok(())
    }

    fn type_one(&mut self, bound: u64) -> Result<()> {
        let alg = self.alg;
        let t = alg.group().clone();
        let p = alg.pauli().clone();
        let k = alg.blocks();
        let mut flip = SymbolicAutomorphism::identity(alg);
        flip.flip = true;
        self.push(WeylGenerator {
            kind: GeneratorKind::Flip,
            label: "negative transpose".into(),
            psi: flip,
            xi: None,
            d0: None,
        })?;
        for i in 0..k.saturating_sub(1) {
            let mut psi = SymbolicAutomorphism::identity(alg);
            psi.perm.swap(i, i + 1);
            self.push(WeylGenerator {
                kind: GeneratorKind::Transposition,
                label: format!("transpose blocks {} and {}", i + 1, i + 2),
                psi,
                xi: None,
                d0: None,
            })?;
        }
        if k > 1 {
            for b in 0..t.dim() {
                let mut psi = SymbolicAutomorphism::identity(alg);
                psi.diag[0] = p.basis(t.basis(b));
                self.push(WeylGenerator {
                    kind: GeneratorKind::BlockShift,
                    label: format!("shift block 1 by {}", t.basis(b)),
                    psi,
                    xi: None,
                    d0: None,
                })?;
            }
        }
        let aut = AutGroup::new(&t, bound)?;
        for (n, alpha) in aut.generators().iter().enumerate() {
            let mut psi = SymbolicAutomorphism::identity(alg);
            psi.division = DivisionMap::normalized(&p, alpha)?;
            self.push(WeylGenerator {
                kind: GeneratorKind::AutT,
                label: format!("ψ₀ for Aut(T,β) generator #{}", n + 1),
                psi,
                xi: None,
                d0: None,
            })?;
        }
        Ok(())
    }
}

/// Generators of the Weyl group realized as verified symbolic
/// automorphisms of `M_k(D)`. Every generator is checked exactly before it
/// is returned.
pub fn realize_generators(alg: &GradedMatrixAlgebra, bound: u64) -> Result<Vec<WeylGenerator>> {
    realize_generators_with(alg, bound, RootChoice::Least)
}

pub fn realize_generators_with(alg: &GradedMatrixAlgebra, bound: u64, choice: RootChoice) -> Result<Vec<WeylGenerator>> {
    let spec = alg.spec();
    spec.validate()?;
    let phi = if spec.series.has_phi() {
        Some(build_phi(spec)?.form().clone())
    } else {
        None
    };
    let mut b = Builder {
        alg,
        phi,
        choice,
        out: Vec::new(),
    };
    match spec.series {
        Series::AI => b.type_one(bound)?,
        Series::B | Series::C | Series::D => {
            b.phi_common()?;
            b.aut_sigma(bound)?;
        }
        Series::AII => {
            b.phi_common()?;
            b.aut_star_sigma(bound)?;
        }
        Series::RawM | Series::RawMPhi => {
            return Err(Error::Domain(format!("no Weyl group is attached to series {}", spec.series)))
        }
    }
    Ok(b.out)
}

/// A component of the support. For series AII it is refined by the sign of
/// the φ-eigenspace, which labels a component of the Lie grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SupportPoint {
    pub element: SupportElement,
    pub eigen: Option<i8>,
}

/// A permutation group on the support, given by generators and its order.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    pub points: Vec<SupportPoint>,
    pub generators: Vec<Vec<u32>>,
    pub order: u128,
}

/// Result of [`brute_force_weyl`].
#[derive(Clone, Debug)]
pub struct BruteForceWeyl {
    /// Order of the group generated on the support.
    pub quotient_order: u128,
    /// Rank of the elementary abelian kernel (nonzero for series AII only).
    pub kernel_rank: usize,
    /// `2^kernel_rank · quotient_order`.
    pub order: u128,
    pub generator_count: usize,
    /// Number of support-trivial products confirmed to lie in `Diag(Γ)`.
    pub faithfulness_checks: usize,
    pub group: PermutationGroup,
}

/// Support permutation of a generator as a vector over `points`.
pub fn support_permutation_indices(
    alg: &GradedMatrixAlgebra,
    points: &[SupportElement],
    psi: &SymbolicAutomorphism,
) -> Result<Vec<u32>> {
    let index: HashMap<SupportElement, u32> = points.iter().enumerate().map(|(i, z)| (*z, i as u32)).collect();
    points
        .iter()
        .map(|z| {
            index
                .get(&psi.map_support(alg, z))
                .copied()
                .ok_or_else(|| Error::Verification(format!("image of {z} is not in the support")))
        })
        .collect()
}

struct Closure {
    elements: Vec<Vec<u32>>,
    /// `(parent, generator)` for every element but the identity.
    parent: Vec<Option<(usize, usize)>>,
    /// Products landing on an element reached another way.
    collisions: Vec<(usize, usize, usize)>,
}

/// Breadth-first closure of `gens` under composition.
fn close(gens: &[Vec<u32>], degree: usize, bound: u64, keep_collisions: usize) -> Result<Closure> {
    let id: Vec<u32> = (0..degree as u32).collect();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(id.clone(), 0)]);
    let mut c = Closure {
        elements: vec![id],
        parent: vec![None],
        collisions: Vec::new(),
    };
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let products: Vec<(usize, usize, Vec<u32>)> = frontier
            .par_iter()
            .flat_map_iter(|&x| {
                let e = &c.elements[x];
                gens.iter()
                    .enumerate()
                    .map(move |(g, perm)| (x, g, e.iter().map(|&i| perm[i as usize]).collect()))
            })
            .collect();
        let mut next = Vec::new();
        for (x, g, y) in products {
            match index.get(&y) {
                Some(&j) => {
                    if c.collisions.len() < keep_collisions && c.parent[j] != Some((x, g)) {
                        c.collisions.push((x, g, j));
                    }
                }
                None => {
                    if c.elements.len() as u64 >= bound {
                        return Err(Error::resource("Weyl group closure", format!("more than {bound} elements"), bound));
                    }
                    index.insert(y.clone(), c.elements.len());
                    next.push(c.elements.len());
                    c.elements.push(y);
                    c.parent.push(Some((x, g)));
                }
            }
        }
        frontier = next;
    }
    Ok(c)
}

fn word_map(
    alg: &GradedMatrixAlgebra,
    maps: &[BasisMap],
    closure: &Closure,
    memo: &mut HashMap<usize, BasisMap>,
    x: usize,
) -> BasisMap {
    if let Some(m) = memo.get(&x) {
        return m.clone();
    }
    let m = match closure.parent[x] {
        None => BasisMap::identity(alg),
        Some((y, g)) => maps[g].compose(&word_map(alg, maps, closure, memo, y)),
    };
    memo.insert(x, m.clone());
    m
}

/// Support-trivial products checked for membership in `Diag(Γ)`.
const FAITHFULNESS_SAMPLE: usize = 48;

/// The Weyl group as the closure of the generators' support permutations.
/// For series AII the kernel `N`, which acts trivially on the support, is
/// measured separately from the ξ classes of the sign generators.
pub fn brute_force_weyl(alg: &GradedMatrixAlgebra, bound: u64) -> Result<BruteForceWeyl> {
    let spec = alg.spec();
    let gens = realize_generators(alg, bound)?;
    let maps: Vec<BasisMap> = gens.iter().map(|g| g.psi.to_basis_map(alg)).collect::<Result<_>>()?;
    let phi_map = match spec.series.has_phi() {
        true => Some(build_phi(spec)?.to_basis_map(alg)?),
        false => None,
    };
    // For series AII the sign generators act trivially on the support of
    // M_k(D), and so can other elements of the Weyl group, so the group is
    // taken on the components of the Lie grading instead.
    let lie = match spec.series {
        Series::AII => Some(LieSupport::new(alg, phi_map.as_ref().expect("φ-series"))?),
        _ => None,
    };
    let (points, perms): (Vec<SupportPoint>, Vec<Vec<u32>>) = match &lie {
        Some(lie) => (
            lie.points.clone(),
            gens.iter().map(|g| lie.permutation(alg, g)).collect::<Result<_>>()?,
        ),
        None => {
            let support = alg.support();
            let perms = gens
                .iter()
                .map(|g| support_permutation_indices(alg, &support, &g.psi))
                .collect::<Result<_>>()?;
            (support.into_iter().map(|element| SupportPoint { element, eigen: None }).collect(), perms)
        }
    };
    let closure = close(&perms, points.len(), bound, FAITHFULNESS_SAMPLE)?;
    let kernel_rank = match &lie {
        Some(_) => {
            let signs: Vec<Vec<u32>> = gens
                .iter()
                .zip(&perms)
                .filter(|(g, _)| g.kind == GeneratorKind::KernelSign)
                .map(|(_, p)| p.clone())
                .collect();
            let n = close(&signs, points.len(), bound, 0)?.elements.len();
            if !n.is_power_of_two() {
                return Err(Error::Verification("the sign generators do not generate a 2-group".into()));
            }
            n.trailing_zeros() as usize
        }
        None => 0,
    };

    // Words acting trivially on the points must act trivially on the Lie
    // grading: diagonal for B, C, D and AI, and for AII a scalar on every
    // φ-eigenspace of every component.
    let mut memo = HashMap::new();
    let mut checks = 0;
    for &(x, g, y) in &closure.collisions {
        let wx = maps[g].compose(&word_map(alg, &maps, &closure, &mut memo, x));
        let wy = word_map(alg, &maps, &closure, &mut memo, y);
        let trivial = wy.inverse()?.compose(&wx);
        if trivial.is_anti() {
            // Only the sl₂ flip can act trivially; it lies in the stabilizer there.
            continue;
        }
        let member = match spec.series {
            Series::B | Series::C | Series::D => diag_membership(&trivial, alg).is_some(),
            Series::AII => polynomial_in_phi(&trivial, phi_map.as_ref().expect("φ-series"), alg),
            _ => diagonal_part(&trivial, alg).is_some(),
        };
        if !member {
            let word = |mut z: usize| {
                let mut w = Vec::new();
                while let Some((p, g)) = closure.parent[z] {
                    w.push(gens[g].label.clone());
                    z = p;
                }
                w
            };
            return Err(Error::Verification(format!(
                "a support-trivial automorphism is not diagonal: {:?} then {} vs {:?}",
                word(x),
                gens[g].label,
                word(y)
            )));
        }
        checks += 1;
    }

    let order = closure.elements.len() as u128;
    Ok(BruteForceWeyl {
        quotient_order: order >> kernel_rank,
        kernel_rank,
        order,
        generator_count: gens.len(),
        faithfulness_checks: checks,
        group: PermutationGroup {
            points,
            generators: perms,
            order,
        },
    })
}

/// Components of the Lie grading of series AII: pairs `(z, ε)` such that the
/// `ε c_z` eigenspace of φ on the component `z` is nonzero and not central,
/// where `c_z` is a fixed square root of the scalar by which φ² acts.
struct LieSupport {
    points: Vec<SupportPoint>,
    index: HashMap<(SupportElement, i8), u32>,
    roots: HashMap<SupportElement, Cyclotomic>,
}

impl LieSupport {
    fn new(alg: &GradedMatrixAlgebra, phi: &BasisMap) -> Result<Self> {
        let square = phi
            .compose(phi)
            .eigenvalues()
            .ok_or_else(|| Error::Verification("φ² is not diagonal".into()))?;
        let one = alg.pauli().one();
        let mut points = Vec::new();
        let mut roots = HashMap::new();
        for (z, basis) in alg.components() {
            let s = &square[alg.basis_index(&basis[0])];
            if basis.iter().any(|b| &square[alg.basis_index(b)] != s) {
                return Err(Error::Verification(format!("φ² is not scalar on {z}")));
            }
            let c = s
                .sqrt_root_of_unity()
                .ok_or_else(|| Error::Verification(format!("φ² acts on {z} by a non-root of unity")))?;
            // Dimensions of the +c and -c eigenspaces.
            let mut dims = [0usize; 2];
            for b in basis {
                let idx = alg.basis_index(b);
                let (v, w) = phi.image(idx);
                if w != idx {
                    dims[0] += 1;
                    dims[1] += 1;
                    continue;
                }
                let ratio = v * &c.inv()?;
                match sign_of(&ratio, &one) {
                    Some(1) => dims[0] += 2,
                    Some(_) => dims[1] += 2,
                    None => return Err(Error::Verification(format!("φ has an eigenvalue other than ±c on {z}"))),
                }
            }
            // Pairs swapped by φ were counted once from each side.
            let central = (z.is_diagonal() && z.t == alg.group().identity()).then(|| {
                let ratio = &one * &c.inv().expect("root of unity");
                sign_of(&ratio, &one).expect("φ fixes the identity")
            });
            for (slot, eps) in [(0, 1i8), (1, -1i8)] {
                let dim = dims[slot] / 2;
                if dim == 0 || (central == Some(eps) && dim == 1) {
                    continue;
                }
                points.push(SupportPoint { element: *z, eigen: Some(eps) });
            }
            roots.insert(*z, c);
        }
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| ((p.element, p.eigen.expect("Lie point")), i as u32))
            .collect();
        Ok(LieSupport { points, index, roots })
    }

    /// Action of a generator: if `ψφψ⁻¹ = ξφ` and `ξ` acts on the component
    /// `w = ψ(z)` by `ν_w`, the `ε c_z` eigenspace of `z` maps to the
    /// `ε c_z / ν_w` eigenspace of `w`.
    fn permutation(&self, alg: &GradedMatrixAlgebra, gen: &WeylGenerator) -> Result<Vec<u32>> {
        let one = alg.pauli().one();
        let xi = gen.xi.as_ref().map(|x| x.to_basis_map(alg)).transpose()?;
        let xi_values = match &xi {
            Some(x) => Some(x.eigenvalues().ok_or_else(|| Error::Verification("ξ is not diagonal".into()))?),
            None => None,
        };
        self.points
            .iter()
            .map(|p| {
                let w = gen.psi.map_support(alg, &p.element);
                let nu = match &xi_values {
                    Some(v) => v[alg.basis_index(&alg.component(&w)[0])].clone(),
                    None => one.clone(),
                };
                let ratio = &(&self.roots[&p.element] * &nu.inv()?) * &self.roots[&w].inv()?;
                let eps = sign_of(&ratio, &one)
                    .ok_or_else(|| Error::Verification(format!("{} does not preserve the φ-eigenspaces", gen.label)))?;
                self.index
                    .get(&(w, eps * p.eigen.expect("Lie point")))
                    .copied()
                    .ok_or_else(|| Error::Verification(format!("image of {} under {} is zero", p.element, gen.label)))
            })
            .collect()
    }
}

fn sign_of(x: &Cyclotomic, one: &Cyclotomic) -> Option<i8> {
    if x == one {
        Some(1)
    } else if *x == one.integer_like(-1) {
        Some(-1)
    } else {
        None
    }
}

/// Whether `map` agrees with `α_z + β_z φ` on every component `z`, for some
/// scalars `α_z`, `β_z`.
fn polynomial_in_phi(map: &BasisMap, phi: &BasisMap, alg: &GradedMatrixAlgebra) -> bool {
    if map.is_anti() {
        return false;
    }
    alg.components().values().all(|basis| {
        let mut alpha: Option<Cyclotomic> = None;
        let mut beta: Option<Cyclotomic> = None;
        // (c_b, d_b) for basis elements fixed by both maps: d_b = α + β c_b.
        let mut mixed: Vec<(Cyclotomic, Cyclotomic)> = Vec::new();
        let set = |slot: &mut Option<Cyclotomic>, v: Cyclotomic| match slot {
            Some(x) => *x == v,
            None => {
                *slot = Some(v);
                true
            }
        };
        for b in basis {
            let idx = alg.basis_index(b);
            let (d, w) = map.image(idx);
            let (c, f) = phi.image(idx);
            let ok = if w == idx && f == idx {
                mixed.push((c.clone(), d.clone()));
                true
            } else if w == idx {
                set(&mut alpha, d.clone()) && set(&mut beta, d.zero_like())
            } else if w == f {
                let q = c.inv().map(|ci| d * &ci);
                q.is_ok_and(|q| set(&mut beta, q)) && set(&mut alpha, d.zero_like())
            } else {
                false
            };
            if !ok {
                return false;
            }
        }
        if mixed.is_empty() {
            return true;
        }
        match (alpha, beta) {
            (Some(a), Some(b)) => mixed.iter().all(|(c, d)| *d == &a + &(&b * c)),
            (Some(a), None) => {
                let betas: Vec<Option<Cyclotomic>> = mixed.iter().map(|(c, d)| c.inv().ok().map(|ci| &(d - &a) * &ci)).collect();
                betas.iter().all(|x| x.is_some() && *x == betas[0])
            }
            (None, Some(b)) => {
                let alphas: Vec<Cyclotomic> = mixed.iter().map(|(c, d)| d - &(&b * c)).collect();
                alphas.iter().all(|x| *x == alphas[0])
            }
            // With α and β free, d_b must only depend on c_b.
            _ => mixed
                .iter()
                .all(|(c, d)| mixed.iter().all(|(c2, d2)| c != c2 || d == d2)),
        }
    })
}

/// Closed form and brute force side by side.
#[derive(Clone, Debug)]
pub struct WeylComparison {
    pub closed_form: WeylDescription,
    pub brute_force: BruteForceWeyl,
}

impl WeylComparison {
    /// Exact agreement of orders, and of the kernel rank for series AII.
    pub fn agrees(&self) -> bool {
        let order_ok = self.closed_form.order_u128() == Some(self.brute_force.order);
        let kernel_ok = match self.closed_form.find("N") {
            Some(n) => n.order == BigUint::one() << self.brute_force.kernel_rank,
            None => self.brute_force.kernel_rank == 0,
        };
        order_ok && kernel_ok
    }
}

pub fn compare_weyl(spec: &GradingSpec, bound: u64) -> Result<WeylComparison> {
    let closed_form = weyl_closed_form(spec, bound)?;
    let alg = GradedMatrixAlgebra::new(spec)?;
    let brute_force = brute_force_weyl(&alg, bound)?;
    Ok(WeylComparison {
        closed_form,
        brute_force,
    })
}
