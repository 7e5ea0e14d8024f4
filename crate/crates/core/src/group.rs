//! Finite groups stored as dense Cayley tables.
//!
//! Elements are indices `0..order`. Cloning a [`FiniteGroup`] is cheap: the
//! table is shared behind an `Arc`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, NotAGroupReason};
use crate::Result;

/// Orders up to this bound get the exhaustive O(n³) associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_MAX: usize = 256;

/// Where a group's table came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Externally supplied and checked against every axiom.
    Validated,
    /// Built by this crate from verified groups (products, quotients,
    /// enumerated tables); associativity is not rechecked.
    Internal,
}

struct GroupData {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
    provenance: Provenance,
}

#[derive(Clone)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("identity", &self.identity())
            .field("provenance", &self.data.provenance)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.order == other.data.order && self.data.table == other.data.table)
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates a raw Cayley table: `raw[i][j]` is the index of `e_i * e_j`.
    pub fn from_cayley_table(raw: &[Vec<usize>], names: Option<Vec<String>>) -> Result<Self> {
        let n = raw.len();
        if n == 0 {
            return Err(Error::Malformed("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in raw.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::Malformed(format!("entry {x} in row {i} out of range")));
                }
                table.push(x);
            }
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(Error::Malformed(format!(
                    "{} names for {n} elements",
                    names.len()
                )));
            }
        }

        check_latin(&table, n)?;
        let identity = find_identity(&table, n)?;
        let inverses = find_inverses(&table, n, identity)?;
        check_associative(&table, n, identity)?;

        Ok(Self::assemble(n, table, identity, inverses, names, Provenance::Validated))
    }

    /// Builds a group from a table produced by this crate. Latin square,
    /// identity and inverses are still located (cheap); associativity is
    /// trusted.
    pub(crate) fn from_table_unchecked(
        order: usize,
        table: Vec<usize>,
        names: Option<Vec<String>>,
    ) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let identity = find_identity(&table, order).expect("internal table has an identity");
        let inverses =
            find_inverses(&table, order, identity).expect("internal table has inverses");
        Self::assemble(order, table, identity, inverses, names, Provenance::Internal)
    }

    fn assemble(
        order: usize,
        table: Vec<usize>,
        identity: usize,
        inverses: Vec<usize>,
        names: Option<Vec<String>>,
        provenance: Provenance,
    ) -> Self {
        FiniteGroup {
            data: Arc::new(GroupData { order, table, identity, inverses, names, provenance }),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.data.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.data.identity
    }

    pub fn provenance(&self) -> Provenance {
        self.data.provenance
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.data.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.data.table[a * self.data.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.data.inverses[a]
    }

    /// `y^-1 x y`, the right conjugate `x^y`.
    #[inline]
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(y), x), y)
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        self.elements().map(|a| self.element_order(a)).collect()
    }

    /// `histogram[k]` counts elements of order `k`.
    pub fn order_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.order() + 1];
        for a in self.elements() {
            hist[self.element_order(a)] += 1;
        }
        hist
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The row-major table as nested vectors.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        self.data.table.chunks(n).map(|r| r.to_vec()).collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.data.names.as_deref()
    }

    /// Display name of an element, falling back to its index.
    pub fn name(&self, a: usize) -> String {
        match &self.data.names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    /// Same table with new element names.
    pub fn with_names(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order() {
            return Err(Error::Malformed(format!(
                "{} names for {} elements",
                names.len(),
                self.order()
            )));
        }
        Ok(Self::assemble(
            self.order(),
            self.data.table.clone(),
            self.identity(),
            self.data.inverses.clone(),
            Some(names),
            self.provenance(),
        ))
    }

    /// Greedy generating set: walk elements in index order and keep each
    /// one that enlarges the subgroup generated so far.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order()];
        inside[self.identity()] = true;
        let mut size = 1;
        for a in self.elements() {
            if size == self.order() {
                break;
            }
            if !inside[a] {
                gens.push(a);
                let members = crate::subgroup::closure(self, &gens);
                for &m in &members {
                    inside[m] = true;
                }
                size = members.len();
            }
        }
        gens
    }

    /// Direct product with elements ordered `(a, b) -> a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            for y in 0..n {
                let (ya, yb) = (y / nb, y % nb);
                table.push(a.mul(xa, ya) * nb + b.mul(xb, yb));
            }
        }
        let names = match (a.names(), b.names()) {
            (Some(_), _) | (_, Some(_)) => Some(
                (0..n)
                    .map(|x| format!("({},{})", a.name(x / nb), b.name(x % nb)))
                    .collect(),
            ),
            _ => None,
        };
        FiniteGroup::from_table_unchecked(n, table, names)
    }
}

fn check_latin(table: &[usize], n: usize) -> Result<()> {
    let fail = |line, a, b| Error::NotAGroup {
        reason: NotAGroupReason::NotLatinSquare,
        witness: (line, a, b),
    };
    // Rows: witness is (row, col_a, col_b).
    let mut first = vec![usize::MAX; n];
    for i in 0..n {
        first.fill(usize::MAX);
        for j in 0..n {
            let x = table[i * n + j];
            if first[x] != usize::MAX {
                return Err(fail(i, first[x], j));
            }
            first[x] = j;
        }
    }
    // Columns: witness is (col, row_a, row_b).
    for j in 0..n {
        first.fill(usize::MAX);
        for i in 0..n {
            let x = table[i * n + j];
            if first[x] != usize::MAX {
                return Err(fail(j, first[x], i));
            }
            first[x] = i;
        }
    }
    Ok(())
}

fn find_identity(table: &[usize], n: usize) -> Result<usize> {
    (0..n)
        .find(|&e| (0..n).all(|j| table[e * n + j] == j && table[j * n + e] == j))
        .ok_or(Error::NotAGroup { reason: NotAGroupReason::NoIdentity, witness: (0, 0, 0) })
}

fn find_inverses(table: &[usize], n: usize, identity: usize) -> Result<Vec<usize>> {
    let mut inverses = Vec::with_capacity(n);
    for a in 0..n {
        match (0..n).find(|&b| table[a * n + b] == identity && table[b * n + a] == identity) {
            Some(b) => inverses.push(b),
            None => {
                return Err(Error::NotAGroup {
                    reason: NotAGroupReason::MissingInverse,
                    witness: (a, a, identity),
                })
            }
        }
    }
    Ok(inverses)
}

fn check_associative(table: &[usize], n: usize, identity: usize) -> Result<()> {
    let m = |a: usize, b: usize| table[a * n + b];
    let fail = |x, y, z| Error::NotAGroup {
        reason: NotAGroupReason::NotAssociative,
        witness: (x, y, z),
    };
    if n <= EXHAUSTIVE_ASSOCIATIVITY_MAX {
        for x in 0..n {
            for y in 0..n {
                let xy = m(x, y);
                for z in 0..n {
                    if m(xy, z) != m(x, m(y, z)) {
                        return Err(fail(x, y, z));
                    }
                }
            }
        }
        return Ok(());
    }
    // Light's test: associativity on a generating set of the magma
    // implies it everywhere.
    let mut gens: Vec<usize> = Vec::new();
    let mut reached = vec![false; n];
    reached[identity] = true;
    let mut frontier: Vec<usize> = vec![identity];
    for a in 0..n {
        if reached[a] {
            continue;
        }
        gens.push(a);
        frontier.clear();
        frontier.extend((0..n).filter(|&x| reached[x]));
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                for y in [m(x, g), m(g, x)] {
                    if !reached[y] {
                        reached[y] = true;
                        frontier.push(y);
                    }
                }
            }
        }
    }
    for &g in &gens {
        for x in 0..n {
            let xg = m(x, g);
            for y in 0..n {
                if m(xg, y) != m(x, m(g, y)) {
                    return Err(fail(x, g, y));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
    }

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_cayley_table(&[vec![0]], None).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.provenance(), Provenance::Validated);
    }

    #[test]
    fn addition_mod_3() {
        let g = FiniteGroup::from_cayley_table(&cyclic_table(3), None).unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 2);
        assert!(g.is_abelian());
    }

    #[test]
    fn identity_located_anywhere() {
        // Z2 with identity stored at index 1.
        let g = FiniteGroup::from_cayley_table(&[vec![1, 0], vec![0, 1]], None).unwrap();
        assert_eq!(g.identity(), 1);
    }

    #[test]
    fn rejects_non_latin() {
        let err = FiniteGroup::from_cayley_table(&[vec![0, 0], vec![1, 0]], None).unwrap_err();
        assert!(matches!(
            err,
            Error::NotAGroup { reason: NotAGroupReason::NotLatinSquare, .. }
        ));
    }

    #[test]
    fn rejects_latin_square_without_identity() {
        // x*y = -x-y mod 3 is a Latin square with no identity.
        let raw: Vec<Vec<usize>> =
            (0..3).map(|i| (0..3).map(|j| (6 - i - j) % 3).collect()).collect();
        let err = FiniteGroup::from_cayley_table(&raw, None).unwrap_err();
        assert!(matches!(err, Error::NotAGroup { reason: NotAGroupReason::NoIdentity, .. }));
    }

    /// Brute force over loops of order 5 (Latin squares with identity 0
    /// bordering) for a non-associative one; the constructor must reject it
    /// with a witness that really fails.
    #[test]
    fn rejects_non_associative_loop_found_by_search() {
        let n = 5;
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let found = search_loop(n, &mut rows).expect("a non-associative loop of order 5 exists");
        match FiniteGroup::from_cayley_table(&found, None) {
            Err(Error::NotAGroup { reason: NotAGroupReason::NotAssociative, witness }) => {
                let (x, y, z) = witness;
                assert_ne!(found[found[x][y]][z], found[x][found[y][z]]);
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    fn search_loop(n: usize, rows: &mut Vec<Vec<usize>>) -> Option<Vec<Vec<usize>>> {
        if rows.len() == n {
            let assoc = (0..n).all(|x| {
                (0..n).all(|y| (0..n).all(|z| rows[rows[x][y]][z] == rows[x][rows[y][z]]))
            });
            // Two-sided inverses, so associativity is the only failing axiom.
            let inverses = (0..n).all(|x| (0..n).all(|y| (rows[x][y] == 0) == (rows[y][x] == 0)));
            return if assoc || !inverses { None } else { Some(rows.clone()) };
        }
        let i = rows.len();
        if i == 0 {
            rows.push((0..n).collect());
            let r = search_loop(n, rows);
            rows.pop();
            return r;
        }
        // Enumerate permutations of row i starting with i, avoiding column clashes.
        let mut row = vec![i];
        permute_row(n, rows, &mut row)
    }

    fn permute_row(
        n: usize,
        rows: &mut Vec<Vec<usize>>,
        row: &mut Vec<usize>,
    ) -> Option<Vec<Vec<usize>>> {
        if row.len() == n {
            rows.push(row.clone());
            let r = search_loop(n, rows);
            rows.pop();
            return r;
        }
        let col = row.len();
        for v in 0..n {
            if row.contains(&v) || rows.iter().any(|r| r[col] == v) {
                continue;
            }
            row.push(v);
            let r = permute_row(n, rows, row);
            row.pop();
            if r.is_some() {
                return r;
            }
        }
        None
    }

    #[test]
    fn malformed_shapes() {
        assert!(matches!(
            FiniteGroup::from_cayley_table(&[vec![0, 1]], None),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            FiniteGroup::from_cayley_table(&[vec![0, 2], vec![1, 0]], None),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn light_test_on_large_cyclic() {
        let n = EXHAUSTIVE_ASSOCIATIVITY_MAX + 4;
        let g = FiniteGroup::from_cayley_table(&cyclic_table(n), None).unwrap();
        assert_eq!(g.order(), n);
    }

    #[test]
    fn direct_product_orders() {
        let a = FiniteGroup::from_cayley_table(&cyclic_table(2), None).unwrap();
        let b = FiniteGroup::from_cayley_table(&cyclic_table(4), None).unwrap();
        let p = FiniteGroup::direct_product(&a, &b);
        assert_eq!(p.order(), 8);
        assert_eq!(p.provenance(), Provenance::Internal);
        assert_eq!(p.element_orders().into_iter().max(), Some(4));
    }
}
