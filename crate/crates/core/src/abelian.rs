//! Invariant factors of finite abelian groups.
//!
//! `abelian_invariants` builds the relation lattice of `G^ab` on a greedy
//! generating set and reduces it to Smith normal form.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::FiniteGroup;
use crate::subgroup::{derived_subgroup, quotient};

/// Invariant factors `d_1 | d_2 | ... | d_k`, each at least 2. The trivial
/// group has no factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianInvariants {
    factors: Vec<u64>,
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "Z{d}")?;
        }
        Ok(())
    }
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { factors: Vec::new() }
    }

    /// Normalises an arbitrary direct sum of cyclic groups `Z_{n_1} + ...`
    /// into invariant-factor form. Orders 0 and 1 are ignored.
    pub fn from_cyclic_orders<I: IntoIterator<Item = u64>>(orders: I) -> Self {
        // prime -> exponents of its prime-power parts
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for n in orders {
            if n < 2 {
                continue;
            }
            for (p, e) in factorize(n) {
                primary.entry(p).or_default().push(e);
            }
        }
        let k = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; k];
        for (p, mut exps) in primary {
            exps.sort_unstable();
            // Largest powers go into the last factors.
            let offset = k - exps.len();
            for (i, e) in exps.into_iter().enumerate() {
                factors[offset + i] *= p.pow(e);
            }
        }
        AbelianInvariants { factors }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Invariant factors of `G / G'`.
pub fn abelian_invariants(g: &FiniteGroup) -> AbelianInvariants {
    if g.is_abelian() {
        invariants_of_abelian(g)
    } else {
        let (q, _) = quotient(g, &derived_subgroup(g)).expect("G' is normal");
        invariants_of_abelian(&q)
    }
}

fn invariants_of_abelian(a: &FiniteGroup) -> AbelianInvariants {
    let n = a.order();
    let gens = a.greedy_generators();
    let k = gens.len();
    if k == 0 {
        return AbelianInvariants::trivial();
    }

    // Exponent vector of every element along a BFS spanning tree.
    let mut coords: Vec<Option<Vec<i64>>> = vec![None; n];
    coords[a.identity()] = Some(vec![0; k]);
    let mut queue = vec![a.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (j, &s) in gens.iter().enumerate() {
            let y = a.mul(x, s);
            if coords[y].is_none() {
                let mut v = coords[x].clone().expect("visited");
                v[j] += 1;
                coords[y] = Some(v);
                queue.push(y);
            }
        }
    }

    // Fundamental cycles v(x) + e_j - v(x s_j) generate the relation lattice.
    // The lattice contains |A| * Z^k, so entries can be kept reduced mod |A|.
    let modulus = n as i64;
    let mut basis: Vec<Option<Vec<i64>>> = vec![None; k];
    for j in 0..k {
        let mut row = vec![0; k];
        row[j] = modulus;
        basis[j] = Some(row);
    }
    for x in a.elements() {
        let vx = coords[x].as_ref().expect("generators span A");
        for (j, &s) in gens.iter().enumerate() {
            let vy = coords[a.mul(x, s)].as_ref().expect("generators span A");
            let mut row: Vec<i64> = (0..k).map(|c| vx[c] - vy[c]).collect();
            row[j] += 1;
            insert_hermite(&mut basis, row, modulus);
        }
    }
    // Reduction mod |A| only preserves the lattice up to |A| * Z^k, so those
    // rows go back in before the Smith reduction.
    let mut matrix: Vec<Vec<i64>> = basis.into_iter().map(|r| r.expect("full rank")).collect();
    for j in 0..k {
        let mut row = vec![0; k];
        row[j] = modulus;
        matrix.push(row);
    }
    let diagonal = smith_diagonal(&mut matrix);
    let factors: Vec<u64> =
        diagonal.into_iter().map(|d| d.unsigned_abs()).filter(|&d| d > 1).collect();
    debug_assert_eq!(factors.iter().product::<u64>(), n as u64);
    debug_assert!(factors.windows(2).all(|w| w[1] % w[0] == 0));
    AbelianInvariants { factors }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

/// Adds `row` to an upper-triangular lattice basis (`basis[c]` has its pivot
/// in column `c`), keeping entries reduced modulo `modulus`.
fn insert_hermite(basis: &mut [Option<Vec<i64>>], mut row: Vec<i64>, modulus: i64) {
    let k = row.len();
    for v in row.iter_mut() {
        *v = v.rem_euclid(modulus);
    }
    for c in 0..k {
        if row[c] == 0 {
            continue;
        }
        match &mut basis[c] {
            None => {
                basis[c] = Some(row);
                return;
            }
            Some(pivot) => {
                let (g, s, t) = ext_gcd(pivot[c], row[c]);
                let (pa, rb) = (pivot[c] / g, row[c] / g);
                // Unimodular step: the new pivot entry is g, and g < modulus.
                let new_pivot: Vec<i64> = (0..k)
                    .map(|i| (s * pivot[i] + t * row[i]).rem_euclid(modulus))
                    .collect();
                let rest: Vec<i64> = (0..k)
                    .map(|i| (rb * pivot[i] - pa * row[i]).rem_euclid(modulus))
                    .collect();
                *pivot = new_pivot;
                row = rest;
            }
        }
    }
}

/// Diagonal of the Smith normal form of an integer matrix (`min(rows, cols)` entries).
pub(crate) fn smith_diagonal(m: &mut [Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let size = rows.min(cols);
    for t in 0..size {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (0..size).map(|i| m[i][i]).collect();
            };
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match offender {
                Some(i) => {
                    for j in t..cols {
                        m[t][j] += m[i][j];
                    }
                }
                None => break,
            }
        }
    }
    (0..size).map(|i| m[i][i]).collect()
}

/// Invariant factors of `A ⊗_Z B`: `Z_m ⊗ Z_n = Z_gcd(m, n)` summed over
/// all pairs of cyclic factors.
pub fn abelian_tensor(a: &AbelianInvariants, b: &AbelianInvariants) -> AbelianInvariants {
    AbelianInvariants::from_cyclic_orders(
        a.factors.iter().flat_map(|&m| b.factors.iter().map(move |&n| gcd(m, n))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, CatalogKey};
    use proptest::prelude::*;

    fn cat(key: &str) -> FiniteGroup {
        catalog::make(&key.parse::<CatalogKey>().unwrap()).unwrap()
    }

    fn inv(f: &[u64]) -> AbelianInvariants {
        AbelianInvariants { factors: f.to_vec() }
    }

    #[test]
    fn catalog_invariants() {
        assert_eq!(abelian_invariants(&cat("cyclic:6")), inv(&[6]));
        assert_eq!(abelian_invariants(&cat("product:cyclic:2,cyclic:4")), inv(&[2, 4]));
        assert_eq!(abelian_invariants(&cat("symmetric:3")), inv(&[2]));
        assert_eq!(abelian_invariants(&cat("cyclic:1")), AbelianInvariants::trivial());
        assert_eq!(abelian_invariants(&cat("elemab:2:3")), inv(&[2, 2, 2]));
        assert_eq!(abelian_invariants(&cat("quaternion:8")), inv(&[2, 2]));
        assert_eq!(abelian_invariants(&cat("heisenberg:3")), inv(&[3, 3]));
        assert_eq!(abelian_invariants(&cat("symmetric:4")), inv(&[2]));
        assert_eq!(abelian_invariants(&cat("product:cyclic:4,cyclic:6")), inv(&[2, 12]));
    }

    #[test]
    fn tensor_of_invariants() {
        assert_eq!(abelian_tensor(&inv(&[3]), &inv(&[3])), inv(&[3]));
        assert_eq!(abelian_tensor(&inv(&[4]), &inv(&[6])), inv(&[2]));
        assert_eq!(abelian_tensor(&inv(&[2, 4]), &inv(&[2])), inv(&[2, 2]));
        assert_eq!(abelian_tensor(&inv(&[5]), &inv(&[2])), AbelianInvariants::trivial());
    }

    #[test]
    fn normalisation() {
        assert_eq!(AbelianInvariants::from_cyclic_orders([2, 3]), inv(&[6]));
        assert_eq!(AbelianInvariants::from_cyclic_orders([4, 2, 3, 1]), inv(&[2, 12]));
        assert_eq!(AbelianInvariants::from_cyclic_orders([6, 10]), inv(&[2, 30]));
    }

    #[test]
    fn smith_small() {
        let mut m = vec![vec![2, 4], vec![6, 8]];
        let d = smith_diagonal(&mut m);
        assert_eq!(d.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![2, 4]);
        let mut m = vec![vec![2, 0], vec![0, 3]];
        let d = smith_diagonal(&mut m);
        assert_eq!(d.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 6]);
    }

    proptest! {
        /// Products of cyclic groups: the Smith route must agree with the
        /// primary-decomposition normaliser and satisfy the chain property.
        #[test]
        fn products_of_cyclics(a in 1u64..9, b in 1u64..9, c in 1u64..5) {
            let key = format!("product:cyclic:{a},product:cyclic:{b},cyclic:{c}");
            let g = cat(&key);
            let got = abelian_invariants(&g);
            prop_assert_eq!(got.order(), a * b * c);
            prop_assert!(got.factors().windows(2).all(|w| w[1] % w[0] == 0));
            prop_assert!(got.factors().iter().all(|&d| d >= 2));
            prop_assert_eq!(got, AbelianInvariants::from_cyclic_orders([a, b, c]));
        }

        #[test]
        fn tensor_order_is_product_of_gcds(a in 1u64..30, b in 1u64..30, c in 1u64..30) {
            let t = abelian_tensor(
                &AbelianInvariants::from_cyclic_orders([a, b]),
                &AbelianInvariants::from_cyclic_orders([c]),
            );
            prop_assert_eq!(t.order(), gcd(a, c) * gcd(b, c));
        }
    }
}
