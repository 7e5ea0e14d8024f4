//! Homomorphisms: extension from generator images, exhaustive enumeration
//! and isomorphism search.
//!
//! Every search extends a partial map along the Cayley graph of
//! `<g_1, ..., g_j>` after each new generator image and prunes on the first
//! conflict, so a branch survives only while it is a homomorphism on the
//! subgroup generated so far.

use alloc::vec;
use alloc::vec::Vec;

use crate::abelian::abelian_invariants;
use crate::error::Error;
use crate::group::FiniteGroup;
use crate::subgroup::center;
use crate::Result;

/// Default cap on backtracking nodes for homomorphism and isomorphism search.
pub const DEFAULT_SEARCH_NODES: u64 = 1_000_000;

/// Limits for the exhaustive searches. Exceeding a limit is an error, never
/// a negative answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Backtracking nodes (candidate generator images tried).
    pub max_nodes: u64,
    /// Size of a product search space such as `|Hom(H, Aut G)| * |Hom(G, Aut H)|`.
    pub max_pairs: u64,
    /// Largest automorphism group materialised as a Cayley table.
    pub max_aut_order: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: DEFAULT_SEARCH_NODES, max_pairs: 1_000_000, max_aut_order: 2048 }
    }
}

impl Budget {
    /// Scales every limit by `factor`.
    pub fn scaled(self, factor: u64) -> Self {
        Budget {
            max_nodes: self.max_nodes.saturating_mul(factor),
            max_pairs: self.max_pairs.saturating_mul(factor),
            max_aut_order: self.max_aut_order.saturating_mul(factor as usize),
        }
    }
}

/// A total map `source -> target` respecting products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<usize>,
}

impl GroupHom {
    /// Validates the homomorphism property exhaustively.
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() || map.iter().any(|&y| y >= target.order()) {
            return Err(Error::Malformed("map length or entries out of range".into()));
        }
        for x in source.elements() {
            for y in source.elements() {
                let expected = target.mul(map[x], map[y]);
                let found = map[source.mul(x, y)];
                if expected != found {
                    return Err(Error::NotAHomomorphism { x, generator: y, expected, found });
                }
            }
        }
        Ok(GroupHom { source: source.clone(), target: target.clone(), map })
    }

    pub(crate) fn from_map_unchecked(
        source: &FiniteGroup,
        target: &FiniteGroup,
        map: Vec<usize>,
    ) -> Self {
        GroupHom { source: source.clone(), target: target.clone(), map }
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Self::from_map_unchecked(g, g, g.elements().collect())
    }

    pub fn trivial(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        Self::from_map_unchecked(source, target, vec![target.identity(); source.order()])
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        let map = self.map.iter().map(|&y| other.map[y]).collect();
        Self::from_map_unchecked(&self.source, &other.target, map)
    }

    /// First pair of distinct elements sharing an image.
    pub fn injectivity_witness(&self) -> Option<(usize, usize)> {
        let mut first = vec![usize::MAX; self.target.order()];
        for x in self.source.elements() {
            let y = self.map[x];
            if first[y] != usize::MAX {
                return Some((first[y], x));
            }
            first[y] = x;
        }
        None
    }

    pub fn is_injective(&self) -> bool {
        self.injectivity_witness().is_none()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_trivial(&self) -> bool {
        self.map.iter().all(|&y| y == self.target.identity())
    }

    /// Elements mapped to the identity, ascending.
    pub fn kernel(&self) -> Vec<usize> {
        self.source.elements().filter(|&x| self.map[x] == self.target.identity()).collect()
    }

    /// Distinct image elements, ascending.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }
}

const UNSET: usize = usize::MAX;

/// Extends `map` (defined on `<gens[..j]>`) to `<gens[..=j]>` by walking the
/// Cayley graph. Returns the conflict `(x, generator, expected, found)` on
/// failure. When `used` is given the extension must stay injective.
fn extend_partial(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
    map: &mut [usize],
    mut used: Option<&mut [bool]>,
) -> core::result::Result<(), (usize, usize, usize, usize)> {
    let mut queue: Vec<usize> = source.elements().filter(|&x| map[x] != UNSET).collect();
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (k, (&s, &t)) in gens.iter().zip(images).enumerate() {
            let y = source.mul(x, s);
            let expected = target.mul(map[x], t);
            if map[y] == UNSET {
                if let Some(used) = used.as_deref_mut() {
                    if used[expected] {
                        return Err((x, k, expected, expected));
                    }
                    used[expected] = true;
                }
                map[y] = expected;
                queue.push(y);
            } else if map[y] != expected {
                return Err((x, k, expected, map[y]));
            }
        }
    }
    Ok(())
}

/// The unique homomorphism sending `gens[i]` to `images[i]`.
pub fn hom_from_images(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Result<GroupHom> {
    if gens.len() != images.len() {
        return Err(Error::Malformed("generator and image lists differ in length".into()));
    }
    if gens.iter().any(|&g| g >= source.order()) || images.iter().any(|&h| h >= target.order()) {
        return Err(Error::Malformed("generator or image out of range".into()));
    }
    let mut map = vec![UNSET; source.order()];
    map[source.identity()] = target.identity();
    extend_partial(source, target, gens, images, &mut map, None).map_err(
        |(x, generator, expected, found)| Error::NotAHomomorphism {
            x,
            generator: gens[generator],
            expected,
            found,
        },
    )?;
    let generated = map.iter().filter(|&&y| y != UNSET).count();
    if generated != source.order() {
        return Err(Error::GensDoNotGenerate { generated, order: source.order() });
    }
    Ok(GroupHom::from_map_unchecked(source, target, map))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Any,
    Bijective,
}

struct Search<'a> {
    source: &'a FiniteGroup,
    target: &'a FiniteGroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    mode: Mode,
    nodes: u64,
    max_nodes: u64,
    stop_at_first: bool,
    found: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(source: &'a FiniteGroup, target: &'a FiniteGroup, mode: Mode, budget: Budget) -> Self {
        let gens = source.greedy_generators();
        let target_orders = target.element_orders();
        let candidates = gens
            .iter()
            .map(|&g| {
                let o = source.element_order(g);
                target
                    .elements()
                    .filter(|&t| match mode {
                        Mode::Any => o.is_multiple_of(target_orders[t]),
                        Mode::Bijective => target_orders[t] == o,
                    })
                    .collect()
            })
            .collect();
        Search {
            source,
            target,
            gens,
            candidates,
            mode,
            nodes: 0,
            max_nodes: budget.max_nodes,
            stop_at_first: false,
            found: Vec::new(),
        }
    }

    fn run(&mut self) -> Result<()> {
        let mut map = vec![UNSET; self.source.order()];
        map[self.source.identity()] = self.target.identity();
        let mut used = vec![false; self.target.order()];
        used[self.target.identity()] = true;
        let mut images = Vec::with_capacity(self.gens.len());
        self.descend(&mut images, &map, &used)
    }

    fn descend(&mut self, images: &mut Vec<usize>, map: &[usize], used: &[bool]) -> Result<()> {
        let depth = images.len();
        if depth == self.gens.len() {
            debug_assert!(map.iter().all(|&y| y != UNSET));
            self.found.push(map.to_vec());
            return Ok(());
        }
        for ci in 0..self.candidates[depth].len() {
            let t = self.candidates[depth][ci];
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::BudgetExceeded {
                    what: "backtracking nodes",
                    limit: self.max_nodes,
                });
            }
            let mut next = map.to_vec();
            let mut next_used = used.to_vec();
            images.push(t);
            let used_arg = match self.mode {
                Mode::Bijective => Some(&mut next_used[..]),
                Mode::Any => None,
            };
            let ok = extend_partial(
                self.source,
                self.target,
                &self.gens[..=depth],
                images,
                &mut next,
                used_arg,
            )
            .is_ok();
            if ok {
                self.descend(images, &next, &next_used)?;
            }
            images.pop();
            if self.stop_at_first && !self.found.is_empty() {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// All homomorphisms `source -> target`, sorted lexicographically by map.
pub fn enumerate_homs(
    source: &FiniteGroup,
    target: &FiniteGroup,
    budget: Budget,
) -> Result<Vec<GroupHom>> {
    let mut search = Search::new(source, target, Mode::Any, budget);
    search.run()?;
    let mut maps = search.found;
    maps.sort_unstable();
    Ok(maps.into_iter().map(|m| GroupHom::from_map_unchecked(source, target, m)).collect())
}

/// All automorphism maps of `g`, sorted lexicographically.
pub(crate) fn enumerate_automorphism_maps(g: &FiniteGroup, budget: Budget) -> Result<Vec<Vec<usize>>> {
    let mut search = Search::new(g, g, Mode::Bijective, budget);
    search.run()?;
    let mut maps = search.found;
    maps.sort_unstable();
    Ok(maps)
}

/// Cheap isomorphism invariants, compared before any search.
fn invariants_match(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    g.order() == h.order()
        && g.is_abelian() == h.is_abelian()
        && g.order_histogram() == h.order_histogram()
        && center(g).order() == center(h).order()
        && abelian_invariants(g) == abelian_invariants(h)
}

/// An isomorphism `g -> h` if one exists. Exceeding the budget is an error
/// and never reported as "not isomorphic".
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup, budget: Budget) -> Result<Option<GroupHom>> {
    if g == h {
        return Ok(Some(GroupHom::identity(g)));
    }
    if !invariants_match(g, h) {
        return Ok(None);
    }
    let mut search = Search::new(g, h, Mode::Bijective, budget);
    search.stop_at_first = true;
    search.run()?;
    Ok(search.found.into_iter().next().map(|m| GroupHom::from_map_unchecked(g, h, m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, CatalogKey};
    use proptest::prelude::*;

    fn cat(key: &str) -> FiniteGroup {
        catalog::make(&key.parse::<CatalogKey>().unwrap()).unwrap()
    }

    /// Oracle: every one of the |T|^|S| maps, tested exhaustively.
    fn brute_force_homs(s: &FiniteGroup, t: &FiniteGroup) -> Vec<Vec<usize>> {
        let (n, m) = (s.order(), t.order());
        let total = m.pow(n as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let map: Vec<usize> = (0..n)
                .map(|_| {
                    let d = c % m;
                    c /= m;
                    d
                })
                .collect();
            let ok = s
                .elements()
                .all(|x| s.elements().all(|y| map[s.mul(x, y)] == t.mul(map[x], map[y])));
            if ok {
                out.push(map);
            }
        }
        out.sort();
        out
    }

    /// Oracle: all bijections that are homomorphisms.
    fn brute_force_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
        if g.order() != h.order() {
            return false;
        }
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if g.elements()
                .all(|x| g.elements().all(|y| perm[g.mul(x, y)] == h.mul(perm[x], perm[y])))
            {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
        let n = p.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    const SMALL: &[&str] = &[
        "cyclic:1",
        "cyclic:2",
        "cyclic:3",
        "cyclic:4",
        "elemab:2:2",
        "cyclic:5",
        "cyclic:6",
        "symmetric:3",
    ];

    #[test]
    fn hom_counts_match_brute_force() {
        for s in SMALL {
            for t in SMALL {
                let (gs, gt) = (cat(s), cat(t));
                let fast: Vec<Vec<usize>> = enumerate_homs(&gs, &gt, Budget::default())
                    .unwrap()
                    .into_iter()
                    .map(|h| h.map().to_vec())
                    .collect();
                assert_eq!(fast, brute_force_homs(&gs, &gt), "Hom({s}, {t})");
            }
        }
    }

    #[test]
    fn named_hom_counts() {
        let z3 = cat("cyclic:3");
        let z2 = cat("cyclic:2");
        assert_eq!(enumerate_homs(&z3, &z3, Budget::default()).unwrap().len(), 3);
        assert_eq!(enumerate_homs(&z3, &z2, Budget::default()).unwrap().len(), 1);
        let v4 = cat("elemab:2:2");
        assert_eq!(enumerate_homs(&v4, &z2, Budget::default()).unwrap().len(), 4);
    }

    #[test]
    fn from_images() {
        let z3 = cat("cyclic:3");
        let z2 = cat("cyclic:2");
        let triv = hom_from_images(&z3, &z3, &[1], &[0]).unwrap();
        assert!(triv.is_trivial());
        let inversion = hom_from_images(&z3, &z3, &[1], &[2]).unwrap();
        assert_eq!(inversion.map(), &[0, 2, 1]);
        assert!(matches!(
            hom_from_images(&z3, &z2, &[1], &[1]),
            Err(Error::NotAHomomorphism { .. })
        ));
        let z6 = cat("cyclic:6");
        assert!(matches!(
            hom_from_images(&z6, &z3, &[2], &[1]),
            Err(Error::GensDoNotGenerate { generated: 3, order: 6 })
        ));
    }

    #[test]
    fn isomorphism_examples() {
        let s3 = cat("symmetric:3");
        let iso = are_isomorphic(&s3, &s3, Budget::default()).unwrap().unwrap();
        assert_eq!(iso.map(), &(0..6).collect::<Vec<_>>()[..]);
        assert!(are_isomorphic(&cat("cyclic:4"), &cat("elemab:2:2"), Budget::default())
            .unwrap()
            .is_none());
        assert!(are_isomorphic(&cat("dihedral:4"), &cat("quaternion:8"), Budget::default())
            .unwrap()
            .is_none());
        let iso = are_isomorphic(&cat("dihedral:3"), &s3, Budget::default()).unwrap().unwrap();
        assert!(GroupHom::new(iso.source(), iso.target(), iso.map().to_vec()).is_ok());
        assert!(iso.is_injective());
        assert!(are_isomorphic(&cat("heisenberg:2"), &cat("dihedral:4"), Budget::default())
            .unwrap()
            .is_some());
    }

    #[test]
    fn isomorphism_agrees_with_brute_force_up_to_8() {
        let keys = [
            "cyclic:4",
            "elemab:2:2",
            "cyclic:6",
            "symmetric:3",
            "cyclic:8",
            "product:cyclic:2,cyclic:4",
            "elemab:2:3",
            "dihedral:4",
            "quaternion:8",
        ];
        for a in keys {
            for b in keys {
                let (ga, gb) = (cat(a), cat(b));
                if ga.order() != gb.order() {
                    continue;
                }
                let fast = are_isomorphic(&ga, &gb, Budget::default()).unwrap();
                let back = are_isomorphic(&gb, &ga, Budget::default()).unwrap();
                assert_eq!(fast.is_some(), back.is_some(), "{a} vs {b} symmetry");
                // Skip the invariant screen so the oracle is a real search.
                assert_eq!(fast.is_some(), brute_force_isomorphic(&ga, &gb), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn budget_is_an_error_not_a_no() {
        let g = cat("heisenberg:3");
        let tiny = Budget { max_nodes: 3, ..Budget::default() };
        let err = enumerate_homs(&g, &g, tiny).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    proptest! {
        #[test]
        fn enumerated_maps_are_homomorphisms(i in 0usize..SMALL.len(), j in 0usize..SMALL.len()) {
            let (s, t) = (cat(SMALL[i]), cat(SMALL[j]));
            for h in enumerate_homs(&s, &t, Budget::default()).unwrap() {
                prop_assert!(GroupHom::new(&s, &t, h.map().to_vec()).is_ok());
            }
        }
    }
}
