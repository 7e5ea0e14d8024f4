//! `Aut(G)` and `Inn(G)` as explicit permutation groups.
//!
//! Composition convention, used everywhere in this crate: the product
//! `f * g` of two automorphisms applies `f` first, so `(f * g)(x) = g(f(x))`.
//! This matches right actions `x^(fg) = (x^f)^g`, and `g -> inner(g)` with
//! `inner(g)(x) = g^-1 x g` is then a homomorphism `G -> Aut(G)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::group::FiniteGroup;
use crate::hom::{enumerate_automorphism_maps, Budget};
use crate::Result;

/// Composes two automorphism maps, applying `first` first.
pub fn compose(first: &[usize], second: &[usize]) -> Vec<usize> {
    first.iter().map(|&y| second[y]).collect()
}

/// `x -> g^-1 x g`.
pub fn inner_automorphism(g: &FiniteGroup, conjugator: usize) -> Vec<usize> {
    g.elements().map(|x| g.conj(x, conjugator)).collect()
}

#[derive(Debug, Clone)]
pub struct AutGroup {
    base: FiniteGroup,
    maps: Vec<Vec<usize>>,
    group: FiniteGroup,
    inner_indices: Vec<usize>,
    inner_of: Vec<usize>,
}

/// Result of [`normalizer_contains_inn`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalizerCheck {
    pub holds: bool,
    /// `(g, member)`: conjugating `member` by `inner(g)` leaves the image.
    pub witness: Option<(usize, usize)>,
}

impl AutGroup {
    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    /// Automorphism maps in lexicographic order; index `i` is element `i`
    /// of [`AutGroup::group`].
    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    /// Sorted indices of the inner automorphisms.
    pub fn inner_indices(&self) -> &[usize] {
        &self.inner_indices
    }

    /// Index of `inner(g)`.
    #[inline]
    pub fn inner_index(&self, g: usize) -> usize {
        self.inner_of[g]
    }

    /// Applies automorphism `index` to `x`.
    #[inline]
    pub fn apply(&self, index: usize, x: usize) -> usize {
        self.maps[index][x]
    }

    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.maps.binary_search_by(|m| m.as_slice().cmp(map)).ok()
    }

    /// Index of the identity automorphism.
    pub fn identity(&self) -> usize {
        self.group.identity()
    }
}

/// All automorphisms of `g`, found by backtracking over images of the
/// greedy generating set with element-order pruning.
pub fn automorphism_group(g: &FiniteGroup, budget: Budget) -> Result<AutGroup> {
    let maps = enumerate_automorphism_maps(g, budget)?;
    if maps.len() > budget.max_aut_order {
        return Err(Error::BudgetExceeded {
            what: "automorphism group order",
            limit: budget.max_aut_order as u64,
        });
    }
    let index: BTreeMap<&[usize], usize> =
        maps.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let k = maps.len();
    let mut table = Vec::with_capacity(k * k);
    for f in &maps {
        for h in &maps {
            let c = compose(f, h);
            table.push(*index.get(c.as_slice()).ok_or(Error::Internal("Aut(G) not closed"))?);
        }
    }
    let mut inner_of = Vec::with_capacity(g.order());
    for x in g.elements() {
        let m = inner_automorphism(g, x);
        inner_of.push(*index.get(m.as_slice()).ok_or(Error::Internal("inner map missing"))?);
    }
    let mut inner_indices = inner_of.clone();
    inner_indices.sort_unstable();
    inner_indices.dedup();
    let group = FiniteGroup::from_table_unchecked(k, table, None);
    Ok(AutGroup { base: g.clone(), maps, group, inner_indices, inner_of })
}

/// Does every inner automorphism normalise `image` (a subgroup of
/// `aut.group()`)? On failure the witness is the first `(g, member)` in
/// element order with `inner(g)^-1 * member * inner(g)` outside `image`.
pub fn normalizer_contains_inn(aut: &AutGroup, image: &[usize]) -> Result<NormalizerCheck> {
    let a = aut.group();
    let mut inside = vec![false; a.order()];
    for &m in image {
        if m >= a.order() {
            return Err(Error::Malformed("image index out of range".into()));
        }
        inside[m] = true;
    }
    let mut members: Vec<usize> = image.to_vec();
    members.sort_unstable();
    members.dedup();
    if !inside[a.identity()] {
        return Err(Error::NotASubgroup { a: a.identity(), b: a.identity() });
    }
    for &x in &members {
        for &y in &members {
            if !inside[a.mul(x, y)] {
                return Err(Error::NotASubgroup { a: x, b: y });
            }
        }
    }
    for g in aut.base().elements() {
        let ghat = aut.inner_index(g);
        for &m in &members {
            if !inside[a.conj(m, ghat)] {
                return Ok(NormalizerCheck { holds: false, witness: Some((g, m)) });
            }
        }
    }
    Ok(NormalizerCheck { holds: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, CatalogKey};
    use crate::subgroup::{center, subgroup_generated};

    fn cat(key: &str) -> FiniteGroup {
        catalog::make(&key.parse::<CatalogKey>().unwrap()).unwrap()
    }

    fn aut(key: &str) -> AutGroup {
        automorphism_group(&cat(key), Budget::default()).unwrap()
    }

    /// Oracle: all permutations of the elements that respect the product.
    fn brute_force_automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
        let n = g.order();
        let mut p: Vec<usize> = (0..n).collect();
        let mut out = Vec::new();
        loop {
            if g.elements().all(|x| g.elements().all(|y| p[g.mul(x, y)] == g.mul(p[x], p[y]))) {
                out.push(p.clone());
            }
            if !next_perm(&mut p) {
                break;
            }
        }
        out
    }

    fn next_perm(p: &mut [usize]) -> bool {
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

    #[test]
    fn small_orders() {
        assert_eq!(aut("cyclic:3").order(), 2);
        assert_eq!(aut("elemab:2:2").order(), 6);
        assert_eq!(aut("cyclic:1").order(), 1);
        assert_eq!(aut("cyclic:2").order(), 1);
        assert_eq!(aut("symmetric:3").order(), 6);
        assert_eq!(aut("quaternion:8").order(), 24);
        assert_eq!(aut("heisenberg:2").order(), 8);
        assert_eq!(aut("elemab:2:3").order(), 168);
    }

    #[test]
    fn matches_brute_force_up_to_8() {
        for key in catalog::standard_keys_up_to(8) {
            let g = catalog::make(&key).unwrap();
            let a = automorphism_group(&g, Budget::default()).unwrap();
            assert_eq!(a.maps(), &brute_force_automorphisms(&g)[..], "{key}");
        }
    }

    /// Oracle for Aut(heisenberg(3)): an automorphism is fixed by the images
    /// of x1, x2; try all 27^2 image pairs and keep those that extend to a
    /// bijective homomorphism, checked on the full table.
    #[test]
    fn heisenberg3_has_432_automorphisms() {
        let g = cat("heisenberg:3");
        let (x1, x2) = catalog::heisenberg_generators(3);
        let mut count = 0;
        for a in g.elements() {
            for b in g.elements() {
                if let Ok(h) = crate::hom::hom_from_images(&g, &g, &[x1, x2], &[a, b]) {
                    let checked = crate::hom::GroupHom::new(&g, &g, h.map().to_vec());
                    if checked.is_ok() && h.is_injective() {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 432);
        let a = aut("heisenberg:3");
        assert_eq!(a.order(), 432);
        // Group axioms on the computed table.
        FiniteGroup::from_cayley_table(&a.group().table_rows(), None).unwrap();
    }

    #[test]
    fn closure_and_inner_bookkeeping() {
        for key in catalog::standard_keys_up_to(16) {
            let g = catalog::make(&key).unwrap();
            let a = automorphism_group(&g, Budget::default()).unwrap();
            assert_eq!(a.maps()[a.identity()], g.elements().collect::<Vec<_>>());
            for i in 0..a.order() {
                for j in 0..a.order() {
                    let c = compose(&a.maps()[i], &a.maps()[j]);
                    assert_eq!(a.maps()[a.group().mul(i, j)], c);
                }
            }
            assert_eq!(a.inner_indices().len(), g.order() / center(&g).order(), "{key}");
            for x in g.elements() {
                let idx = a.inner_index(x);
                assert_eq!(a.maps()[idx], inner_automorphism(&g, x));
                assert!(a.inner_indices().binary_search(&idx).is_ok());
            }
            // g -> inner(g) is a homomorphism under the composition convention.
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(
                        a.inner_index(g.mul(x, y)),
                        a.group().mul(a.inner_index(x), a.inner_index(y))
                    );
                }
            }
        }
    }

    #[test]
    fn inner_automorphism_examples() {
        let z5 = cat("cyclic:5");
        assert_eq!(inner_automorphism(&z5, 3), (0..5).collect::<Vec<_>>());
        let s3 = cat("symmetric:3");
        assert_eq!(inner_automorphism(&s3, s3.identity()), (0..6).collect::<Vec<_>>());
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let m = inner_automorphism(&s3, t);
        let fixed: Vec<usize> = s3.elements().filter(|&x| m[x] == x).collect();
        assert_eq!(fixed, vec![s3.identity(), t]);
        assert_eq!(compose(&m, &m), (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn normalizer_examples() {
        let a = aut("symmetric:3");
        let all: Vec<usize> = (0..a.order()).collect();
        assert!(normalizer_contains_inn(&a, &all).unwrap().holds);
        assert!(normalizer_contains_inn(&a, &[a.identity()]).unwrap().holds);

        let s3 = a.base().clone();
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let tau = a.inner_index(t);
        let image = subgroup_generated(a.group(), &[tau]);
        let check = normalizer_contains_inn(&a, image.members()).unwrap();
        assert!(!check.holds);
        let (g, member) = check.witness.unwrap();
        // Replay by brute force.
        let ghat = a.inner_index(g);
        assert!(!image.contains(a.group().conj(member, ghat)));
        // Conjugating by a 3-cycle also moves it.
        let c = s3.elements().find(|&x| s3.element_order(x) == 3).unwrap();
        assert!(!image.contains(a.group().conj(tau, a.inner_index(c))));
    }

    #[test]
    fn normalizer_rejects_non_subgroups() {
        let a = aut("symmetric:3");
        let t = a.inner_index(a.base().elements().find(|&x| a.base().element_order(x) == 2).unwrap());
        assert!(matches!(
            normalizer_contains_inn(&a, &[t]),
            Err(Error::NotASubgroup { .. })
        ));
    }
}
