//! Mutual actions of two groups on each other and their compatibility.
//!
//! `g^h` is always the right action of `h` on `g`; for an [`ActionPair`]
//! it is `alpha(h)` applied to `g`, and `h^g` is `beta(g)` applied to `h`.
//! Inside a single group `x^y` means `y^-1 x y`.
//!
//! The two compatibility equations are
//!
//! ```text
//! first:   g^(h^g1)  = ((g^(g1^-1))^h)^g1     for g, g1 in G, h in H
//! second:  h^(g^h1)  = ((h^(h1^-1))^g)^h1     for h, h1 in H, g in G
//! ```
//!
//! Triples are scanned in lexicographic element order, `(g, g1, h)` for the
//! first equation and then `(h, h1, g)` for the second; the first failure is
//! the witness.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::automorphism::{normalizer_contains_inn, AutGroup, NormalizerCheck};
use crate::catalog::{self, CatalogKey};
use crate::error::Error;
use crate::fp::reduce_word;
use crate::group::FiniteGroup;
use crate::hom::{enumerate_homs, Budget, GroupHom};
use crate::subgroup::{center, second_hypercenter, Subgroup};
use crate::Result;

/// Two groups acting on each other, one element at a time.
pub trait MutualAction {
    fn g(&self) -> &FiniteGroup;
    fn h(&self) -> &FiniteGroup;
    /// `g^h`.
    fn act_on_g(&self, g: usize, h: usize) -> usize;
    /// `h^g`.
    fn act_on_h(&self, h: usize, g: usize) -> usize;

    /// Whether both assignments are right actions: `g^(h1 h2) = (g^h1)^h2`
    /// and `h^(g1 g2) = (h^g1)^g2`.
    fn is_homomorphic(&self) -> bool {
        let (gg, hh) = (self.g(), self.h());
        let on_g = hh.elements().all(|h1| {
            hh.elements().all(|h2| {
                let h12 = hh.mul(h1, h2);
                gg.elements().all(|x| self.act_on_g(self.act_on_g(x, h1), h2) == self.act_on_g(x, h12))
            })
        });
        on_g && gg.elements().all(|g1| {
            gg.elements().all(|g2| {
                let g12 = gg.mul(g1, g2);
                hh.elements().all(|y| self.act_on_h(self.act_on_h(y, g1), g2) == self.act_on_h(y, g12))
            })
        })
    }
}

/// Actions given as homomorphisms into automorphism groups.
#[derive(Debug, Clone)]
pub struct ActionPair {
    aut_g: Arc<AutGroup>,
    aut_h: Arc<AutGroup>,
    alpha: GroupHom,
    beta: GroupHom,
}

impl ActionPair {
    /// `alpha: H -> Aut(G)` and `beta: G -> Aut(H)`, both as homomorphisms
    /// into the automorphism groups' Cayley tables.
    pub fn new(
        aut_g: Arc<AutGroup>,
        aut_h: Arc<AutGroup>,
        alpha: GroupHom,
        beta: GroupHom,
    ) -> Result<Self> {
        if alpha.source() != aut_h.base() || alpha.target() != aut_g.group() {
            return Err(Error::Malformed("alpha must map H into Aut(G)".into()));
        }
        if beta.source() != aut_g.base() || beta.target() != aut_h.group() {
            return Err(Error::Malformed("beta must map G into Aut(H)".into()));
        }
        Ok(ActionPair { aut_g, aut_h, alpha, beta })
    }

    /// Builds the pair from automorphism indices, validating both maps.
    pub fn from_indices(
        aut_g: Arc<AutGroup>,
        aut_h: Arc<AutGroup>,
        alpha: Vec<usize>,
        beta: Vec<usize>,
    ) -> Result<Self> {
        let alpha = GroupHom::new(aut_h.base(), aut_g.group(), alpha)?;
        let beta = GroupHom::new(aut_g.base(), aut_h.group(), beta)?;
        ActionPair::new(aut_g, aut_h, alpha, beta)
    }

    pub fn trivial(aut_g: Arc<AutGroup>, aut_h: Arc<AutGroup>) -> Self {
        let alpha = GroupHom::trivial(aut_h.base(), aut_g.group());
        let beta = GroupHom::trivial(aut_g.base(), aut_h.group());
        ActionPair { aut_g, aut_h, alpha, beta }
    }

    /// `G` acting on itself by conjugation on both sides.
    pub fn conjugation(aut: Arc<AutGroup>) -> Self {
        let g = aut.base();
        let map: Vec<usize> = g.elements().map(|x| aut.inner_index(x)).collect();
        let alpha = GroupHom::from_map_unchecked(g, aut.group(), map);
        let beta = alpha.clone();
        ActionPair { aut_g: aut.clone(), aut_h: aut, alpha, beta }
    }

    /// The same actions with the roles of `G` and `H` exchanged.
    pub fn swapped(&self) -> Self {
        ActionPair {
            aut_g: self.aut_h.clone(),
            aut_h: self.aut_g.clone(),
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    pub fn aut_g(&self) -> &Arc<AutGroup> {
        &self.aut_g
    }

    pub fn aut_h(&self) -> &Arc<AutGroup> {
        &self.aut_h
    }

    pub fn alpha(&self) -> &GroupHom {
        &self.alpha
    }

    pub fn beta(&self) -> &GroupHom {
        &self.beta
    }
}

impl MutualAction for ActionPair {
    fn g(&self) -> &FiniteGroup {
        self.aut_g.base()
    }

    fn h(&self) -> &FiniteGroup {
        self.aut_h.base()
    }

    #[inline]
    fn act_on_g(&self, g: usize, h: usize) -> usize {
        self.aut_g.apply(self.alpha.apply(h), g)
    }

    #[inline]
    fn act_on_h(&self, h: usize, g: usize) -> usize {
        self.aut_h.apply(self.beta.apply(g), h)
    }

    fn is_homomorphic(&self) -> bool {
        true
    }
}

/// Per-element action tables with no homomorphism requirement on
/// `h -> (g -> g^h)`. Each individual map must be an automorphism.
#[derive(Debug, Clone)]
pub struct RawActions {
    g: FiniteGroup,
    h: FiniteGroup,
    /// `on_g[h][g] = g^h`.
    on_g: Vec<Vec<usize>>,
    /// `on_h[g][h] = h^g`.
    on_h: Vec<Vec<usize>>,
}

impl RawActions {
    pub fn new(
        g: &FiniteGroup,
        h: &FiniteGroup,
        on_g: Vec<Vec<usize>>,
        on_h: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if on_g.len() != h.order() || on_h.len() != g.order() {
            return Err(Error::Malformed("one action map per acting element required".into()));
        }
        for m in &on_g {
            check_automorphism(g, m)?;
        }
        for m in &on_h {
            check_automorphism(h, m)?;
        }
        Ok(RawActions { g: g.clone(), h: h.clone(), on_g, on_h })
    }

    /// `Aut(G)` acting on `G` by evaluation; `G` acts trivially on `Aut(G)`.
    pub fn natural(aut: &AutGroup) -> Self {
        let on_g = aut.maps().to_vec();
        let trivial: Vec<usize> = aut.group().elements().collect();
        RawActions {
            g: aut.base().clone(),
            h: aut.group().clone(),
            on_g,
            on_h: vec![trivial; aut.base().order()],
        }
    }

    /// Whether `h -> (g -> g^h)` is a right action, i.e. `g^(h1 h2) = (g^h1)^h2`.
    pub fn action_on_g_is_homomorphic(&self) -> bool {
        right_action_holds(&self.h, &self.on_g)
    }

    pub fn action_on_h_is_homomorphic(&self) -> bool {
        right_action_holds(&self.g, &self.on_h)
    }
}

fn check_automorphism(g: &FiniteGroup, m: &[usize]) -> Result<()> {
    let hom = GroupHom::new(g, g, m.to_vec())?;
    if let Some((a, b)) = hom.injectivity_witness() {
        return Err(Error::Malformed(alloc::format!(
            "action map is not bijective: {a} and {b} share an image"
        )));
    }
    Ok(())
}

fn right_action_holds(acting: &FiniteGroup, maps: &[Vec<usize>]) -> bool {
    acting.elements().all(|a| {
        acting.elements().all(|b| {
            let ab = &maps[acting.mul(a, b)];
            maps[a].iter().enumerate().all(|(x, &xa)| maps[b][xa] == ab[x])
        })
    })
}

impl MutualAction for RawActions {
    fn g(&self) -> &FiniteGroup {
        &self.g
    }

    fn h(&self) -> &FiniteGroup {
        &self.h
    }

    #[inline]
    fn act_on_g(&self, g: usize, h: usize) -> usize {
        self.on_g[h][g]
    }

    #[inline]
    fn act_on_h(&self, h: usize, g: usize) -> usize {
        self.on_h[g][h]
    }
}

/// A group acting on itself by conjugation on both sides.
#[derive(Debug, Clone)]
pub struct SelfConjugation {
    g: FiniteGroup,
}

impl SelfConjugation {
    pub fn new(g: &FiniteGroup) -> Self {
        SelfConjugation { g: g.clone() }
    }
}

impl MutualAction for SelfConjugation {
    fn g(&self) -> &FiniteGroup {
        &self.g
    }

    fn h(&self) -> &FiniteGroup {
        &self.g
    }

    fn act_on_g(&self, g: usize, h: usize) -> usize {
        self.g.conj(g, h)
    }

    fn act_on_h(&self, h: usize, g: usize) -> usize {
        self.g.conj(h, g)
    }

    fn is_homomorphic(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Equation {
    First,
    Second,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Equation::First => "first",
            Equation::Second => "second",
        })
    }
}

/// A failing instance of one compatibility equation. For the first
/// equation `g1` is set and `lhs`, `rhs` are elements of `G`; for the
/// second `h1` is set and they are elements of `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CompatibilityWitness {
    pub equation: Equation,
    pub g: usize,
    pub h: usize,
    pub g1: Option<usize>,
    pub h1: Option<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

impl CompatibilityWitness {
    /// Recomputes `(lhs, rhs)` directly from the actions.
    pub fn replay<A: MutualAction + ?Sized>(&self, a: &A) -> (usize, usize) {
        match (self.equation, self.g1, self.h1) {
            (Equation::First, Some(g1), _) => first_sides(a, self.g, g1, self.h),
            (Equation::Second, _, Some(h1)) => second_sides(a, self.h, h1, self.g),
            _ => (self.lhs, self.lhs),
        }
    }
}

impl fmt::Display for CompatibilityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.equation {
            Equation::First => write!(
                f,
                "first equation fails at g={}, g1={}, h={}: lhs {} != rhs {}",
                self.g,
                self.g1.unwrap_or(0),
                self.h,
                self.lhs,
                self.rhs
            ),
            Equation::Second => write!(
                f,
                "second equation fails at h={}, h1={}, g={}: lhs {} != rhs {}",
                self.h,
                self.h1.unwrap_or(0),
                self.g,
                self.lhs,
                self.rhs
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub compatible: bool,
    pub witness: Option<CompatibilityWitness>,
}

fn first_sides<A: MutualAction + ?Sized>(a: &A, g: usize, g1: usize, h: usize) -> (usize, usize) {
    let gg = a.g();
    let lhs = a.act_on_g(g, a.act_on_h(h, g1));
    let inner = gg.conj(g, gg.inv(g1));
    let rhs = gg.conj(a.act_on_g(inner, h), g1);
    (lhs, rhs)
}

fn second_sides<A: MutualAction + ?Sized>(a: &A, h: usize, h1: usize, g: usize) -> (usize, usize) {
    let hh = a.h();
    let lhs = a.act_on_h(h, a.act_on_g(g, h1));
    let inner = hh.conj(h, hh.inv(h1));
    let rhs = hh.conj(a.act_on_h(inner, g), h1);
    (lhs, rhs)
}

/// Dense copies of both action tables and conjugation tables, so the
/// exhaustive scan is pure array lookups.
struct Tables {
    ng: usize,
    nh: usize,
    /// `on_g[g * nh + h] = g^h`.
    on_g: Vec<u32>,
    /// `on_h[h * ng + g] = h^g`.
    on_h: Vec<u32>,
    /// `conj_g[x * ng + y] = y^-1 x y`.
    conj_g: Vec<u32>,
    conj_h: Vec<u32>,
}

fn conj_table(g: &FiniteGroup) -> Vec<u32> {
    let n = g.order();
    let mut t = Vec::with_capacity(n * n);
    for x in g.elements() {
        for y in g.elements() {
            t.push(g.conj(x, y) as u32);
        }
    }
    t
}

impl Tables {
    fn new<A: MutualAction + ?Sized>(a: &A) -> Self {
        let (ng, nh) = (a.g().order(), a.h().order());
        let mut on_g = Vec::with_capacity(ng * nh);
        for g in 0..ng {
            for h in 0..nh {
                on_g.push(a.act_on_g(g, h) as u32);
            }
        }
        let mut on_h = Vec::with_capacity(ng * nh);
        for h in 0..nh {
            for g in 0..ng {
                on_h.push(a.act_on_h(h, g) as u32);
            }
        }
        Tables { ng, nh, on_g, on_h, conj_g: conj_table(a.g()), conj_h: conj_table(a.h()) }
    }

    fn first_failure(&self, inv_g: &[usize]) -> Option<(usize, usize, usize, usize, usize)> {
        let (ng, nh) = (self.ng, self.nh);
        for g in 0..ng {
            for g1 in 0..ng {
                let inner = self.conj_g[g * ng + inv_g[g1]] as usize;
                for h in 0..nh {
                    let hg1 = self.on_h[h * ng + g1] as usize;
                    let lhs = self.on_g[g * nh + hg1] as usize;
                    let acted = self.on_g[inner * nh + h] as usize;
                    let rhs = self.conj_g[acted * ng + g1] as usize;
                    if lhs != rhs {
                        return Some((g, g1, h, lhs, rhs));
                    }
                }
            }
        }
        None
    }

    fn second_failure(&self, inv_h: &[usize]) -> Option<(usize, usize, usize, usize, usize)> {
        let (ng, nh) = (self.ng, self.nh);
        for h in 0..nh {
            for h1 in 0..nh {
                let inner = self.conj_h[h * nh + inv_h[h1]] as usize;
                for g in 0..ng {
                    let gh1 = self.on_g[g * nh + h1] as usize;
                    let lhs = self.on_h[h * ng + gh1] as usize;
                    let acted = self.on_h[inner * ng + g] as usize;
                    let rhs = self.conj_h[acted * nh + h1] as usize;
                    if lhs != rhs {
                        return Some((h, h1, g, lhs, rhs));
                    }
                }
            }
        }
        None
    }
}

/// Checks both compatibility equations over every triple.
pub fn is_compatible<A: MutualAction + ?Sized>(a: &A) -> CompatibilityReport {
    let t = Tables::new(a);
    let inv_g: Vec<usize> = a.g().elements().map(|x| a.g().inv(x)).collect();
    let inv_h: Vec<usize> = a.h().elements().map(|x| a.h().inv(x)).collect();
    if let Some((g, g1, h, lhs, rhs)) = t.first_failure(&inv_g) {
        let w = CompatibilityWitness { equation: Equation::First, g, h, g1: Some(g1), h1: None, lhs, rhs };
        return CompatibilityReport { compatible: false, witness: Some(w) };
    }
    if let Some((h, h1, g, lhs, rhs)) = t.second_failure(&inv_h) {
        let w = CompatibilityWitness { equation: Equation::Second, g, h, g1: None, h1: Some(h1), lhs, rhs };
        return CompatibilityReport { compatible: false, witness: Some(w) };
    }
    CompatibilityReport { compatible: true, witness: None }
}

/// The same verdict as [`is_compatible`] for homomorphic actions, computed
/// in the automorphism groups: the first equation is
/// `alpha(h^g1) = inner(g1)^-1 alpha(h) inner(g1)` for all `g1`, `h`, and
/// symmetrically for the second. Costs `O(|G||H|)` table lookups.
pub fn is_compatible_via_automorphisms(pair: &ActionPair) -> bool {
    let side = |aut_g: &AutGroup, aut_h: &AutGroup, alpha: &GroupHom, beta: &GroupHom| {
        let a = aut_g.group();
        aut_g.base().elements().all(|g1| {
            let inner = aut_g.inner_index(g1);
            aut_h.base().elements().all(|h| {
                let hg1 = aut_h.apply(beta.apply(g1), h);
                alpha.apply(hg1) == a.conj(alpha.apply(h), inner)
            })
        })
    };
    side(&pair.aut_g, &pair.aut_h, &pair.alpha, &pair.beta)
        && side(&pair.aut_h, &pair.aut_g, &pair.beta, &pair.alpha)
}

/// Whether `Inn(G)` normalises `alpha(H)` and `Inn(H)` normalises `beta(G)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalizerFlags {
    pub g: NormalizerCheck,
    pub h: NormalizerCheck,
}

impl NormalizerFlags {
    pub fn both(&self) -> bool {
        self.g.holds && self.h.holds
    }
}

pub fn normalizer_conditions(pair: &ActionPair) -> NormalizerFlags {
    // Images of homomorphisms are subgroups, so neither check can fail.
    let g = normalizer_contains_inn(&pair.aut_g, &pair.alpha.image())
        .expect("homomorphic image is a subgroup");
    let h = normalizer_contains_inn(&pair.aut_h, &pair.beta.image())
        .expect("homomorphic image is a subgroup");
    NormalizerFlags { g, h }
}

/// The action of `G` on `H` induced by an embedding `alpha: H -> Aut(G)`
/// whose image `Inn(G)` normalises: `beta(g)` sends `h` to
/// `alpha^-1(inner(g)^-1 alpha(h) inner(g))`.
pub fn induced_beta(aut_g: &AutGroup, aut_h: &AutGroup, alpha: &GroupHom) -> Result<GroupHom> {
    if alpha.source() != aut_h.base() || alpha.target() != aut_g.group() {
        return Err(Error::Malformed("alpha must map H into Aut(G)".into()));
    }
    if let Some((h1, h2)) = alpha.injectivity_witness() {
        return Err(Error::AlphaNotInjective { h1, h2 });
    }
    let check = normalizer_contains_inn(aut_g, &alpha.image())?;
    if let Some((g, member)) = check.witness {
        return Err(Error::NormalizerConditionFails { g, member });
    }
    let a = aut_g.group();
    let mut preimage = vec![usize::MAX; a.order()];
    for y in aut_h.base().elements() {
        preimage[alpha.apply(y)] = y;
    }
    let gg = aut_g.base();
    let mut beta = Vec::with_capacity(gg.order());
    for g in gg.elements() {
        let ghat = aut_g.inner_index(g);
        let map: Vec<usize> = aut_h
            .base()
            .elements()
            .map(|y| preimage[a.conj(alpha.apply(y), ghat)])
            .collect();
        beta.push(aut_h.index_of(&map).ok_or(Error::Internal("induced map is not an automorphism"))?);
    }
    GroupHom::new(gg, aut_h.group(), beta)
}

/// [`induced_beta`] packaged with `alpha` as an [`ActionPair`].
pub fn induced_pair(aut_g: Arc<AutGroup>, aut_h: Arc<AutGroup>, alpha: GroupHom) -> Result<ActionPair> {
    let beta = induced_beta(&aut_g, &aut_h, &alpha)?;
    let pair = ActionPair::new(aut_g, aut_h, alpha, beta)?;
    debug_assert!(is_compatible(&pair).compatible);
    Ok(pair)
}

/// `phi: G -> H` and `psi: H -> G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomPair {
    pub phi: GroupHom,
    pub psi: GroupHom,
}

/// `H` acts on `G` by conjugation through `psi`, and `G` on `H` through
/// `phi`: `x^y = psi(y)^-1 x psi(y)`, `y^x = phi(x)^-1 y phi(x)`.
pub fn action_from_hom_pair(
    aut_g: Arc<AutGroup>,
    aut_h: Arc<AutGroup>,
    pair: &HomPair,
) -> Result<ActionPair> {
    let (g, h) = (aut_g.base(), aut_h.base());
    if pair.phi.source() != g || pair.phi.target() != h || pair.psi.source() != h || pair.psi.target() != g {
        return Err(Error::Malformed("hom pair does not match the groups".into()));
    }
    let alpha: Vec<usize> = h.elements().map(|y| aut_g.inner_index(pair.psi.apply(y))).collect();
    let beta: Vec<usize> = g.elements().map(|x| aut_h.inner_index(pair.phi.apply(x))).collect();
    let alpha = GroupHom::from_map_unchecked(h, aut_g.group(), alpha);
    let beta = GroupHom::from_map_unchecked(g, aut_h.group(), beta);
    ActionPair::new(aut_g, aut_h, alpha, beta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    G,
    H,
}

/// A failing element of the second-hypercentre congruence: on side `G`,
/// `defect = x^-1 psi(phi(x))` lies outside the second hypercentre of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zeta2Witness {
    pub side: Side,
    pub element: usize,
    pub defect: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zeta2Check {
    pub holds: bool,
    pub witness: Option<Zeta2Witness>,
}

/// Is `x = psi(phi(x))` modulo the second hypercentre of `G` for every `x`,
/// and `y = phi(psi(y))` modulo that of `H` for every `y`?
pub fn check_zeta2_congruence(pair: &HomPair) -> Zeta2Check {
    let z2g = second_hypercenter(pair.phi.source());
    let z2h = second_hypercenter(pair.psi.source());
    check_zeta2_congruence_in(&z2g, &z2h, pair)
}

/// [`check_zeta2_congruence`] with precomputed second hypercentres.
pub fn check_zeta2_congruence_in(z2g: &Subgroup, z2h: &Subgroup, pair: &HomPair) -> Zeta2Check {
    let side = |zeta: &Subgroup, there: &GroupHom, back: &GroupHom, label: Side| {
        let grp = there.source();
        grp.elements().find_map(|x| {
            let defect = grp.mul(grp.inv(x), back.apply(there.apply(x)));
            (!zeta.contains(defect)).then_some(Zeta2Witness { side: label, element: x, defect })
        })
    };
    let witness = side(z2g, &pair.phi, &pair.psi, Side::G)
        .or_else(|| side(z2h, &pair.psi, &pair.phi, Side::H));
    Zeta2Check { holds: witness.is_none(), witness }
}

/// First `g` whose `c(g) = g^-1 psi(g)` is not central or not inverted by
/// `psi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Z2Check {
    pub holds: bool,
    pub witness: Option<usize>,
}

/// Criterion for `Z_2` acting on `G` through an automorphism `psi` with
/// `psi^2 = 1` (and `G` acting trivially on `Z_2`): every `c(g) = g^-1 psi(g)`
/// must be central with `psi(c(g)) = c(g)^-1`.
pub fn z2_action_criterion(g: &FiniteGroup, psi: &[usize]) -> Result<Z2Check> {
    if psi.len() != g.order() || psi.iter().any(|&y| y >= g.order()) {
        return Err(Error::Malformed("psi must be a map on the elements of G".into()));
    }
    if let Some(x) = g.elements().find(|&x| psi[psi[x]] != x) {
        return Err(Error::PsiNotInvolution { element: x });
    }
    GroupHom::new(g, g, psi.to_vec())?;
    let z = center(g);
    let witness = g.elements().find(|&x| {
        let c = g.mul(g.inv(x), psi[x]);
        !z.contains(c) || psi[c] != g.inv(c)
    });
    Ok(Z2Check { holds: witness.is_none(), witness })
}

/// The pair `(alpha, 1)` with `alpha: Z_2 -> Aut(G)` sending the generator
/// to automorphism `psi_index`.
pub fn z2_pair(aut_g: Arc<AutGroup>, psi_index: usize) -> Result<ActionPair> {
    let z2 = catalog::make_cyclic(2);
    let aut_z2 = Arc::new(crate::automorphism::automorphism_group(&z2, Budget::default())?);
    if psi_index >= aut_g.order() {
        return Err(Error::Malformed("automorphism index out of range".into()));
    }
    let alpha = vec![aut_g.identity(), psi_index];
    let beta = vec![aut_z2.identity(); aut_g.base().order()];
    ActionPair::from_indices(aut_g, aut_z2, alpha, beta)
}

/// One cell of the `Hom(H, Aut G) x Hom(G, Aut H)` grid.
#[derive(Debug, Clone)]
pub struct PairRecord {
    pub alpha_index: usize,
    pub beta_index: usize,
    pub pair: ActionPair,
    pub report: CompatibilityReport,
    pub normalizer: NormalizerFlags,
}

/// Every homomorphism `H -> Aut(G)` and `G -> Aut(H)`, in the order of
/// [`enumerate_homs`]. Cells can be evaluated independently, so callers
/// may split the grid across workers.
#[derive(Debug, Clone)]
pub struct PairGrid {
    aut_g: Arc<AutGroup>,
    aut_h: Arc<AutGroup>,
    alphas: Vec<GroupHom>,
    betas: Vec<GroupHom>,
}

impl PairGrid {
    pub fn new(aut_g: Arc<AutGroup>, aut_h: Arc<AutGroup>, budget: Budget) -> Result<Self> {
        let alphas = enumerate_homs(aut_h.base(), aut_g.group(), budget)?;
        let betas = enumerate_homs(aut_g.base(), aut_h.group(), budget)?;
        let cells = (alphas.len() as u64).saturating_mul(betas.len() as u64);
        if cells > budget.max_pairs {
            return Err(Error::BudgetExceeded { what: "action pairs", limit: budget.max_pairs });
        }
        Ok(PairGrid { aut_g, aut_h, alphas, betas })
    }

    pub fn alphas(&self) -> &[GroupHom] {
        &self.alphas
    }

    pub fn betas(&self) -> &[GroupHom] {
        &self.betas
    }

    pub fn len(&self) -> usize {
        self.alphas.len() * self.betas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn pair(&self, alpha_index: usize, beta_index: usize) -> ActionPair {
        ActionPair {
            aut_g: self.aut_g.clone(),
            aut_h: self.aut_h.clone(),
            alpha: self.alphas[alpha_index].clone(),
            beta: self.betas[beta_index].clone(),
        }
    }

    pub fn record(&self, alpha_index: usize, beta_index: usize) -> PairRecord {
        let pair = self.pair(alpha_index, beta_index);
        let report = is_compatible(&pair);
        let normalizer = normalizer_conditions(&pair);
        PairRecord { alpha_index, beta_index, pair, report, normalizer }
    }

    /// All records with the given `alpha`, in `beta` order.
    pub fn row(&self, alpha_index: usize) -> Vec<PairRecord> {
        (0..self.betas.len()).map(|j| self.record(alpha_index, j)).collect()
    }
}

/// Every `(alpha, beta)` with its verdict, ordered by `(alpha, beta)` index.
pub fn enumerate_compatible_pairs(
    aut_g: Arc<AutGroup>,
    aut_h: Arc<AutGroup>,
    budget: Budget,
) -> Result<Vec<PairRecord>> {
    let grid = PairGrid::new(aut_g, aut_h, budget)?;
    Ok((0..grid.alphas.len()).flat_map(|i| grid.row(i)).collect())
}

/// One `(G, H, alpha, beta)` cell of a question-2 scan. The maps index
/// into the lexicographically ordered automorphism groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvidenceRecord {
    pub g: CatalogKey,
    pub h: CatalogKey,
    pub alpha_index: usize,
    pub beta_index: usize,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub compatible: bool,
    pub normalizer_g: bool,
    pub normalizer_h: bool,
    pub witness: Option<CompatibilityWitness>,
}

impl EvidenceRecord {
    /// Both normalizer inclusions hold but the actions are not compatible.
    pub fn is_counterexample(&self) -> bool {
        self.normalizer_g && self.normalizer_h && !self.compatible
    }
}

/// Evidence for one ordered pair of catalog groups.
pub fn question2_pair(
    gk: &CatalogKey,
    hk: &CatalogKey,
    aut_g: Arc<AutGroup>,
    aut_h: Arc<AutGroup>,
    budget: Budget,
) -> Result<Vec<EvidenceRecord>> {
    let grid = PairGrid::new(aut_g, aut_h, budget)?;
    let mut out = Vec::with_capacity(grid.len());
    for i in 0..grid.alphas.len() {
        for rec in grid.row(i) {
            out.push(evidence(gk, hk, &rec));
        }
    }
    Ok(out)
}

pub fn evidence(gk: &CatalogKey, hk: &CatalogKey, rec: &PairRecord) -> EvidenceRecord {
    EvidenceRecord {
        g: gk.clone(),
        h: hk.clone(),
        alpha_index: rec.alpha_index,
        beta_index: rec.beta_index,
        alpha: rec.pair.alpha.map().to_vec(),
        beta: rec.pair.beta.map().to_vec(),
        compatible: rec.report.compatible,
        normalizer_g: rec.normalizer.g.holds,
        normalizer_h: rec.normalizer.h.holds,
        witness: rec.report.witness,
    }
}

/// Every `(alpha, beta)` over all ordered pairs of standard catalog groups
/// of order at most `max_order`, in catalog order.
pub fn question2_scan(max_order: usize, budget: Budget) -> Result<Vec<EvidenceRecord>> {
    let keys = catalog::standard_keys_up_to(max_order);
    let auts = keys
        .iter()
        .map(|k| Ok(Arc::new(crate::automorphism::automorphism_group(&catalog::make(k)?, budget)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for (i, gk) in keys.iter().enumerate() {
        for (j, hk) in keys.iter().enumerate() {
            out.extend(question2_pair(gk, hk, auts[i].clone(), auts[j].clone(), budget)?);
        }
    }
    Ok(out)
}

/// Longest word the free-group replay is allowed to build.
const FREE_WORD_LIMIT: usize = 16;

/// Replays the free-group example: `G = <x1, x2>` and `H = <y1, y2>` free,
/// `phi(x_i) = y_i`, `psi` trivial, actions by conjugation through them.
/// Returns true when `y2^x1 = y1^-1 y2 y1` reduces to a word different from
/// `y2`, and the second compatibility equation visibly fails at
/// `h = y2, h1 = y2, g = x1`.
pub fn verify_free_counterexample() -> bool {
    // H acts on G trivially; G acts on H by conjugation through phi, which is
    // the identity on generator labels.
    let conj = |w: &[i32], by: &[i32]| -> Vec<i32> {
        let mut out = crate::fp::invert_word(by);
        out.extend_from_slice(w);
        out.extend_from_slice(by);
        reduce_word(&out)
    };
    let y2 = [2];
    let x1 = [1];
    let phi = |w: &[i32]| w.to_vec();
    let act_on_h = |h: &[i32], g: &[i32]| conj(h, &phi(g));
    let act_on_g = |g: &[i32], _h: &[i32]| g.to_vec();

    let twisted = act_on_h(&y2, &x1);
    if twisted.len() > FREE_WORD_LIMIT || twisted == y2 || twisted != [-1, 2, 1] {
        return false;
    }
    // h^(g^h1) against ((h^(h1^-1))^g)^h1.
    let (h, h1, g) = (&y2[..], &y2[..], &x1[..]);
    let lhs = act_on_h(h, &act_on_g(g, h1));
    let rhs = conj(&act_on_h(&conj(h, &crate::fp::invert_word(h1)), g), h1);
    lhs.len() <= FREE_WORD_LIMIT && rhs.len() <= FREE_WORD_LIMIT && lhs != rhs
}
