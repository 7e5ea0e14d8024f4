//! Named small groups.
//!
//! Keys are exact strings such as `cyclic:3`, `dihedral:4`, `heisenberg:3`,
//! `symmetric:3`, `quaternion:8`, `elemab:2:2` and
//! `product:cyclic:2,cyclic:4`. A product splits at its first comma, so only
//! the right operand may itself be a product.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;
use crate::group::FiniteGroup;
use crate::Result;

/// Catalog groups are capped at this order.
pub const MAX_CATALOG_ORDER: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogKey {
    Cyclic(usize),
    /// Symmetries of the `n`-gon, order `2n`.
    Dihedral(usize),
    Quaternion8,
    Symmetric(usize),
    /// Upper unitriangular 3x3 matrices over `Z/p`.
    Heisenberg(usize),
    ElementaryAbelian { p: usize, rank: usize },
    Product(Box<CatalogKey>, Box<CatalogKey>),
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogKey::Cyclic(n) => write!(f, "cyclic:{n}"),
            CatalogKey::Dihedral(n) => write!(f, "dihedral:{n}"),
            CatalogKey::Quaternion8 => f.write_str("quaternion:8"),
            CatalogKey::Symmetric(n) => write!(f, "symmetric:{n}"),
            CatalogKey::Heisenberg(p) => write!(f, "heisenberg:{p}"),
            CatalogKey::ElementaryAbelian { p, rank } => write!(f, "elemab:{p}:{rank}"),
            CatalogKey::Product(a, b) => write!(f, "product:{a},{b}"),
        }
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl FromStr for CatalogKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownCatalogKey(s.to_string());
        let num = |t: &str| t.parse::<usize>().map_err(|_| unknown());
        let key = if let Some(rest) = s.strip_prefix("product:") {
            let (a, b) = rest.split_once(',').ok_or_else(unknown)?;
            CatalogKey::Product(Box::new(a.parse()?), Box::new(b.parse()?))
        } else {
            let parts: Vec<&str> = s.split(':').collect();
            match parts.as_slice() {
                ["cyclic", n] => CatalogKey::Cyclic(num(n)?),
                ["dihedral", n] => CatalogKey::Dihedral(num(n)?),
                ["quaternion", "8"] => CatalogKey::Quaternion8,
                ["symmetric", n] => CatalogKey::Symmetric(num(n)?),
                ["heisenberg", p] => CatalogKey::Heisenberg(num(p)?),
                ["elemab", p, k] => CatalogKey::ElementaryAbelian { p: num(p)?, rank: num(k)? },
                _ => return Err(unknown()),
            }
        };
        key.validate().map_err(|_| unknown())?;
        Ok(key)
    }
}

impl CatalogKey {
    pub fn order(&self) -> usize {
        match self {
            CatalogKey::Cyclic(n) => *n,
            CatalogKey::Dihedral(n) => 2 * n,
            CatalogKey::Quaternion8 => 8,
            CatalogKey::Symmetric(n) => (1..=*n).product(),
            CatalogKey::Heisenberg(p) => p * p * p,
            CatalogKey::ElementaryAbelian { p, rank } => p.saturating_pow(*rank as u32),
            CatalogKey::Product(a, b) => a.order().saturating_mul(b.order()),
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = || Error::UnknownCatalogKey(self.to_string());
        let ok = match self {
            CatalogKey::Cyclic(n) | CatalogKey::Dihedral(n) => *n >= 1,
            CatalogKey::Quaternion8 => true,
            CatalogKey::Symmetric(n) => (1..=4).contains(n),
            CatalogKey::Heisenberg(p) => is_prime(*p) && *p <= 5,
            CatalogKey::ElementaryAbelian { p, rank } => is_prime(*p) && *rank >= 1,
            CatalogKey::Product(a, b) => {
                a.validate()?;
                b.validate()?;
                !matches!(**a, CatalogKey::Product(..))
            }
        };
        if ok && self.order() <= MAX_CATALOG_ORDER {
            Ok(())
        } else {
            Err(bad())
        }
    }
}

/// Builds the group named by `key`.
pub fn make(key: &CatalogKey) -> Result<FiniteGroup> {
    key.validate()?;
    Ok(match key {
        CatalogKey::Cyclic(n) => make_cyclic(*n),
        CatalogKey::Dihedral(n) => dihedral(*n),
        CatalogKey::Quaternion8 => quaternion8(),
        CatalogKey::Symmetric(n) => symmetric(*n),
        CatalogKey::Heisenberg(p) => heisenberg(*p),
        CatalogKey::ElementaryAbelian { p, rank } => elementary_abelian(*p, *rank),
        CatalogKey::Product(a, b) => FiniteGroup::direct_product(&make(a)?, &make(b)?),
    })
}

/// Parses and builds in one step.
pub fn make_catalog_group(name: &str) -> Result<FiniteGroup> {
    make(&name.parse()?)
}

fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => base.into(),
        _ => format!("{base}^{k}"),
    }
}

/// `Z_n`, element `i` is `a^i`.
pub fn make_cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group of order 0");
    let table = (0..n * n).map(|x| (x / n + x % n) % n).collect();
    let names = (0..n).map(|i| power_name("a", i)).collect();
    FiniteGroup::from_table_unchecked(n, table, Some(names))
}

/// Element `j * n + i` is `r^i s^j`.
fn dihedral(n: usize) -> FiniteGroup {
    let order = 2 * n;
    let decode = |x: usize| (x % n, x / n);
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (i, j) = decode(x);
        for y in 0..order {
            let (k, l) = decode(y);
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            table.push(((j + l) % 2) * n + rot);
        }
    }
    let names = (0..order)
        .map(|x| {
            let (i, j) = decode(x);
            match (i, j) {
                (0, 0) => "1".into(),
                (_, 0) => power_name("r", i),
                (0, _) => "s".into(),
                _ => format!("{}s", power_name("r", i)),
            }
        })
        .collect();
    FiniteGroup::from_table_unchecked(order, table, Some(names))
}

/// Elements `1, -1, i, -i, j, -j, k, -k`.
fn quaternion8() -> FiniteGroup {
    // unit products: (unit, sign) for units 1, i, j, k
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let mut table = Vec::with_capacity(64);
    for x in 0..8 {
        for y in 0..8 {
            let (u, neg) = UNIT[x / 2][y / 2];
            let sign = (x % 2 == 1) ^ (y % 2 == 1) ^ neg;
            table.push(2 * u + sign as usize);
        }
    }
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
    FiniteGroup::from_table_unchecked(8, table, Some(names))
}

/// Permutations of `0..n` in lexicographic order; products apply the left
/// factor first.
fn symmetric(n: usize) -> FiniteGroup {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        perms.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    let order = perms.len();
    let index = |q: &[usize]| perms.binary_search_by(|x| x.as_slice().cmp(q)).expect("perm");
    let mut table = Vec::with_capacity(order * order);
    for a in &perms {
        for b in &perms {
            let c: Vec<usize> = (0..n).map(|x| b[a[x]]).collect();
            table.push(index(&c));
        }
    }
    let names = perms.iter().map(|q| cycle_notation(q)).collect();
    FiniteGroup::from_table_unchecked(order, table, Some(names))
}

fn next_permutation(p: &mut [usize]) -> bool {
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

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = alloc::vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Element `a * p^2 + b * p + c` is the matrix with `a` at (1,2), `b` at
/// (2,3) and `c` at (1,3). `x1 = (1,0,0)` and `x2 = (0,1,0)` generate it and
/// their commutator is the central `z = (0,0,1)`.
fn heisenberg(p: usize) -> FiniteGroup {
    let order = p * p * p;
    let decode = |x: usize| (x / (p * p), (x / p) % p, x % p);
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, b, c) = decode(x);
        for y in 0..order {
            let (a2, b2, c2) = decode(y);
            let na = (a + a2) % p;
            let nb = (b + b2) % p;
            let nc = (c + c2 + a * b2) % p;
            table.push(na * p * p + nb * p + nc);
        }
    }
    let names = (0..order)
        .map(|x| {
            let (a, b, c) = decode(x);
            format!("[{a},{b},{c}]")
        })
        .collect();
    FiniteGroup::from_table_unchecked(order, table, Some(names))
}

/// `x1` and `x2` of [`heisenberg`] as element indices.
pub fn heisenberg_generators(p: usize) -> (usize, usize) {
    (p * p, p)
}

/// `Z_p^rank`, element index read as base-`p` digits.
fn elementary_abelian(p: usize, rank: usize) -> FiniteGroup {
    let order = p.pow(rank as u32);
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        for y in 0..order {
            let (mut a, mut b, mut out, mut place) = (x, y, 0, 1);
            for _ in 0..rank {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            table.push(out);
        }
    }
    FiniteGroup::from_table_unchecked(order, table, None)
}

/// `Z_d1 x ... x Z_dk` for the given invariant factors.
pub fn make_abelian(inv: &crate::abelian::AbelianInvariants) -> FiniteGroup {
    inv.factors()
        .iter()
        .map(|&d| make_cyclic(d as usize))
        .reduce(|a, b| FiniteGroup::direct_product(&a, &b))
        .unwrap_or_else(|| make_cyclic(1))
}

/// The fixed catalog scanned by the exhaustive property suites and the
/// explore commands. It lists one key per isomorphism type (so the dihedral
/// group of order 8 appears as `heisenberg:2`), ordered by group order.
pub fn standard_keys() -> Vec<CatalogKey> {
    [
        "cyclic:1",
        "cyclic:2",
        "cyclic:3",
        "cyclic:4",
        "elemab:2:2",
        "cyclic:5",
        "cyclic:6",
        "symmetric:3",
        "cyclic:7",
        "cyclic:8",
        "product:cyclic:2,cyclic:4",
        "elemab:2:3",
        "heisenberg:2",
        "quaternion:8",
        "cyclic:9",
        "elemab:3:2",
        "cyclic:10",
        "dihedral:5",
        "cyclic:12",
        "product:cyclic:2,cyclic:6",
        "dihedral:6",
        "cyclic:16",
        "product:cyclic:4,cyclic:4",
        "dihedral:8",
        "product:cyclic:2,heisenberg:2",
        "symmetric:4",
        "heisenberg:3",
        "heisenberg:5",
    ]
    .iter()
    .map(|k| k.parse().expect("standard key parses"))
    .collect()
}

/// Standard keys with `order <= max_order`.
pub fn standard_keys_up_to(max_order: usize) -> Vec<CatalogKey> {
    standard_keys().into_iter().filter(|k| k.order() <= max_order).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::subgroup::{center, derived_subgroup, nilpotency_class};

    fn revalidate(g: &FiniteGroup) {
        FiniteGroup::from_cayley_table(&g.table_rows(), None).expect("catalog table is a group");
    }

    #[test]
    fn keys_round_trip() {
        for key in standard_keys() {
            let again: CatalogKey = key.to_string().parse().unwrap();
            assert_eq!(again, key);
            assert_eq!(make(&key).unwrap().order(), key.order());
        }
        for extra in ["dihedral:4", "elemab:2:2", "product:cyclic:2,cyclic:4"] {
            assert_eq!(extra.parse::<CatalogKey>().unwrap().to_string(), extra);
        }
    }

    #[test]
    fn every_standard_group_passes_full_validation() {
        for key in standard_keys() {
            revalidate(&make(&key).unwrap());
        }
        revalidate(&make_catalog_group("dihedral:4").unwrap());
        revalidate(&make_catalog_group("dihedral:1").unwrap());
    }

    #[test]
    fn rejects_bad_keys() {
        for bad in [
            "bogus:9",
            "cyclic:0",
            "symmetric:5",
            "heisenberg:4",
            "heisenberg:7",
            "quaternion:16",
            "elemab:4:2",
            "product:cyclic:2",
            "cyclic:x",
            "cyclic:600",
        ] {
            assert!(
                matches!(bad.parse::<CatalogKey>(), Err(Error::UnknownCatalogKey(_))),
                "{bad} should be rejected"
            );
        }
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(make_cyclic(1).order(), 1);
        let z3 = make_cyclic(3);
        assert_eq!(z3.names().unwrap(), &["1", "a", "a^2"]);
        let z6 = make_cyclic(6);
        assert!(z6.is_abelian());
        assert_eq!(z6.element_order(1), 6);
    }

    #[test]
    fn structural_facts() {
        let h3 = make_catalog_group("heisenberg:3").unwrap();
        assert_eq!(h3.order(), 27);
        assert_eq!(center(&h3).order(), 3);
        assert_eq!(nilpotency_class(&h3), Some(2));
        let (x1, x2) = heisenberg_generators(3);
        let z = h3.commutator(x1, x2);
        assert_eq!(center(&h3).members(), &[0, z, h3.mul(z, z)]);

        let s3 = make_catalog_group("symmetric:3").unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(derived_subgroup(&s3).order(), 3);

        let d4 = make_catalog_group("dihedral:4").unwrap();
        assert_eq!(center(&d4).order(), 2);

        let q8 = make_catalog_group("quaternion:8").unwrap();
        assert_eq!(q8.order_histogram()[2], 1);
        assert_eq!(d4.order_histogram()[2], 5);
        assert_eq!(make_catalog_group("symmetric:4").unwrap().order(), 24);
    }
}
