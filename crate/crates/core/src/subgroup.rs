//! Subgroups, quotients and the central/lower central series.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::group::FiniteGroup;
use crate::hom::GroupHom;
use crate::Result;

/// A subgroup of `parent`, members sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    fn from_sorted(parent: &FiniteGroup, members: Vec<usize>) -> Self {
        let mut mask = vec![false; parent.order()];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup { parent: parent.clone(), members, mask }
    }

    /// Checks closure under products (inverses follow for finite sets).
    pub fn from_members(parent: &FiniteGroup, members: &[usize]) -> Result<Self> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.iter().any(|&m| m >= parent.order()) {
            return Err(Error::Malformed("subgroup member out of range".into()));
        }
        let sub = Self::from_sorted(parent, sorted);
        if !sub.contains(parent.identity()) {
            return Err(Error::NotASubgroup { a: parent.identity(), b: parent.identity() });
        }
        for &a in &sub.members {
            for &b in &sub.members {
                if !sub.contains(parent.mul(a, b)) {
                    return Err(Error::NotASubgroup { a, b });
                }
            }
        }
        Ok(sub)
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        Self::from_sorted(parent, parent.elements().collect())
    }

    pub fn trivial(parent: &FiniteGroup) -> Self {
        Self::from_sorted(parent, vec![parent.identity()])
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// First `(g, n)` with `g^-1 n g` outside the subgroup, if any.
    pub fn normality_witness(&self) -> Option<(usize, usize)> {
        let g = &self.parent;
        for x in g.elements() {
            for &n in &self.members {
                if !self.contains(g.conj(n, x)) {
                    return Some((x, n));
                }
            }
        }
        None
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    /// Every member commutes with every element of the parent.
    pub fn is_central(&self) -> bool {
        let g = &self.parent;
        self.members.iter().all(|&a| g.elements().all(|x| g.mul(a, x) == g.mul(x, a)))
    }
}

/// Members of the subgroup generated by `gens`, in discovery order.
pub(crate) fn closure(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    seen[g.identity()] = true;
    let mut members = vec![g.identity()];
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                members.push(y);
            }
        }
        i += 1;
    }
    members
}

/// Smallest subgroup containing `gens`.
pub fn subgroup_generated(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
    let mut members = closure(g, gens);
    members.sort_unstable();
    Subgroup::from_sorted(g, members)
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let members = g
        .elements()
        .filter(|&z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z)))
        .collect();
    Subgroup::from_sorted(g, members)
}

/// `ζ₂G`: the preimage of `Z(G / Z(G))` under the projection.
pub fn second_hypercenter(g: &FiniteGroup) -> Subgroup {
    let z = center(g);
    let (q, proj) = quotient(g, &z).expect("the center is normal");
    let zq = center(&q);
    let members = g.elements().filter(|&x| zq.contains(proj.apply(x))).collect();
    Subgroup::from_sorted(g, members)
}

/// `[A, B] = <[a, b] : a in A, b in B>`.
pub fn commutator_subgroup(a: &Subgroup, b: &Subgroup) -> Subgroup {
    let g = a.parent();
    let mut gens: Vec<usize> = Vec::new();
    let mut seen = vec![false; g.order()];
    for &x in a.members() {
        for &y in b.members() {
            let c = g.commutator(x, y);
            if !seen[c] {
                seen[c] = true;
                gens.push(c);
            }
        }
    }
    subgroup_generated(g, &gens)
}

/// `G' = [G, G]`.
pub fn derived_subgroup(g: &FiniteGroup) -> Subgroup {
    let whole = Subgroup::whole(g);
    commutator_subgroup(&whole, &whole)
}

/// `γ₁ = G, γ_{i+1} = [γ_i, G]`, stopping once the series stabilises.
pub fn lower_central_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let whole = Subgroup::whole(g);
    let mut series = vec![whole.clone()];
    loop {
        let last = series.last().expect("nonempty");
        if last.is_trivial() {
            break;
        }
        let next = commutator_subgroup(last, &whole);
        if next.order() == last.order() {
            break;
        }
        series.push(next);
    }
    series
}

/// Smallest `c` with `γ_{c+1}(G) = 1`; `None` when `G` is not nilpotent.
/// The trivial group has class 0.
pub fn nilpotency_class(g: &FiniteGroup) -> Option<usize> {
    let series = lower_central_series(g);
    if series.last().is_some_and(Subgroup::is_trivial) {
        Some(series.len() - 1)
    } else {
        None
    }
}

/// `G / N` on coset representatives. Each coset is represented by its
/// smallest member and cosets are ordered by representative.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
    if let Some((x, m)) = n.normality_witness() {
        return Err(Error::NotNormal { g: x, n: m });
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(x);
        for &m in n.members() {
            coset_of[g.mul(x, m)] = idx;
        }
    }
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(coset_of[g.mul(a, b)]);
        }
    }
    let q = FiniteGroup::from_table_unchecked(k, table, None);
    let proj = GroupHom::from_map_unchecked(g, &q, coset_of);
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, CatalogKey};

    fn cat(key: &str) -> FiniteGroup {
        catalog::make(&key.parse::<CatalogKey>().unwrap()).unwrap()
    }

    #[test]
    fn generated_subgroups() {
        let z6 = cat("cyclic:6");
        assert!(subgroup_generated(&z6, &[]).is_trivial());
        assert_eq!(subgroup_generated(&z6, &[2]).members(), &[0, 2, 4]);
        let s3 = cat("symmetric:3");
        let three_cycle = s3.elements().find(|&x| s3.element_order(x) == 3).unwrap();
        let transposition = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        assert!(subgroup_generated(&s3, &[three_cycle, transposition]).is_whole());
    }

    #[test]
    fn centers() {
        assert!(center(&cat("cyclic:5")).is_whole());
        assert!(center(&cat("symmetric:3")).is_trivial());
        let d4 = cat("dihedral:4");
        let z = center(&d4);
        assert_eq!(z.order(), 2);
        // {1, r^2}: the nontrivial central element is a square of an order-4 element.
        let nontrivial = z.members().iter().copied().find(|&x| x != d4.identity()).unwrap();
        let r = d4.elements().find(|&x| d4.element_order(x) == 4).unwrap();
        assert_eq!(d4.mul(r, r), nontrivial);
    }

    #[test]
    fn heisenberg_center_by_brute_force() {
        let h = cat("heisenberg:3");
        let brute: Vec<usize> = h
            .elements()
            .filter(|&z| h.elements().all(|x| h.mul(z, x) == h.mul(x, z)))
            .collect();
        assert_eq!(brute.len(), 3);
        assert_eq!(center(&h).members(), &brute[..]);
    }

    #[test]
    fn hypercenters() {
        assert!(second_hypercenter(&cat("cyclic:4")).is_whole());
        assert!(second_hypercenter(&cat("heisenberg:3")).is_whole());
        assert!(second_hypercenter(&cat("heisenberg:2")).is_whole());
        assert!(second_hypercenter(&cat("symmetric:3")).is_trivial());
    }

    #[test]
    fn derived_subgroups() {
        assert!(derived_subgroup(&cat("cyclic:6")).is_trivial());
        assert_eq!(derived_subgroup(&cat("symmetric:3")).order(), 3);
        let d4 = cat("dihedral:4");
        assert_eq!(derived_subgroup(&d4), center(&d4));
    }

    #[test]
    fn quotients() {
        let s3 = cat("symmetric:3");
        let (q, proj) = quotient(&s3, &Subgroup::trivial(&s3)).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(proj.map(), &(0..6).collect::<Vec<_>>()[..]);

        let (q, _) = quotient(&s3, &derived_subgroup(&s3)).unwrap();
        assert_eq!(q.order(), 2);

        let z6 = cat("cyclic:6");
        let n = Subgroup::from_members(&z6, &[0, 3]).unwrap();
        let (q, proj) = quotient(&z6, &n).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(q.element_order(proj.apply(1)), 3);
    }

    #[test]
    fn quotient_by_non_normal_fails() {
        let s3 = cat("symmetric:3");
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let sub = subgroup_generated(&s3, &[t]);
        match quotient(&s3, &sub) {
            Err(Error::NotNormal { g, n }) => assert!(!sub.contains(s3.conj(n, g))),
            other => panic!("expected NotNormal, got {other:?}"),
        }
    }

    #[test]
    fn classes() {
        assert_eq!(nilpotency_class(&cat("cyclic:1")), Some(0));
        assert_eq!(nilpotency_class(&cat("cyclic:7")), Some(1));
        assert_eq!(nilpotency_class(&cat("heisenberg:2")), Some(2));
        assert_eq!(nilpotency_class(&cat("heisenberg:3")), Some(2));
        assert_eq!(nilpotency_class(&cat("heisenberg:5")), Some(2));
        assert_eq!(nilpotency_class(&cat("symmetric:3")), None);
        assert_eq!(nilpotency_class(&cat("dihedral:8")), Some(3));
    }

    #[test]
    fn subgroup_validation() {
        let z4 = cat("cyclic:4");
        assert!(Subgroup::from_members(&z4, &[0, 1]).is_err());
        assert!(Subgroup::from_members(&z4, &[1, 3]).is_err());
        assert!(Subgroup::from_members(&z4, &[2, 0]).is_ok());
    }
}
