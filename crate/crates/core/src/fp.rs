//! Finitely presented groups and Todd–Coxeter coset enumeration over the
//! trivial subgroup.
//!
//! Words are sequences of signed generator numbers: `+k` is generator `k`
//! (1-based) and `-k` its inverse. The enumerator uses the HLT strategy:
//! every relator is scanned and filled from each live coset in turn, then
//! the coset's remaining row entries are defined. When the coset budget is
//! reached, a lookahead pass scans every relator from every live coset
//! without defining anything, and dead cosets are compacted away.
//! Cosets are numbered in order of definition and compaction preserves that
//! order, so identical inputs give bit-identical tables.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::group::FiniteGroup;
use crate::Result;

/// Freely reduces a word by cancelling adjacent inverse pairs.
pub fn reduce_word(word: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for &x in word {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn invert_word(word: &[i32]) -> Vec<i32> {
    word.iter().rev().map(|&x| -x).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    ngens: usize,
    relators: Vec<Vec<i32>>,
}

impl Presentation {
    /// Validates generator numbers, freely reduces every relator and drops
    /// the ones that reduce to the empty word.
    pub fn new(ngens: usize, relators: Vec<Vec<i32>>) -> Result<Self> {
        let mut reduced = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(&bad) = r.iter().find(|&&x| x == 0 || x.unsigned_abs() as usize > ngens) {
                return Err(Error::Malformed(alloc::format!(
                    "generator {bad} out of range 1..={ngens}"
                )));
            }
            let r = reduce_word(&r);
            if !r.is_empty() {
                reduced.push(r);
            }
        }
        Ok(Presentation { ngens, relators: reduced })
    }

    /// One generator per element (generator `k` is element `k - 1`) and the
    /// relators `x_i x_j x_(ij)^-1` for every pair.
    pub fn from_multiplication_table(g: &FiniteGroup) -> Self {
        let gen = |x: usize| x as i32 + 1;
        let relators = g
            .elements()
            .flat_map(|i| g.elements().map(move |j| (i, j)))
            .map(|(i, j)| vec![gen(i), gen(j), -gen(g.mul(i, j))])
            .collect();
        Presentation::new(g.order(), relators).expect("generators in range")
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relators(&self) -> &[Vec<i32>] {
        &self.relators
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumLimits {
    /// Cosets that may be allocated at once (live plus not yet compacted).
    pub max_cosets: usize,
    /// Total definitions plus deductions before giving up.
    pub max_deductions: u64,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits { max_cosets: 200_000, max_deductions: 50_000_000 }
    }
}

const NONE: u32 = u32::MAX;

/// Column of a signed generator: `+k -> 2(k-1)`, `-k -> 2(k-1) + 1`.
#[inline]
pub fn column(x: i32) -> usize {
    2 * (x.unsigned_abs() as usize - 1) + usize::from(x < 0)
}

/// A coset table over the trivial subgroup. Only completed tables are
/// handed out by [`coset_enumerate`]; coset 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    ngens: usize,
    rows: Vec<u32>,
    complete: bool,
}

impl CosetTable {
    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn columns(&self) -> usize {
        2 * self.ngens
    }

    /// Number of (live) cosets.
    pub fn len(&self) -> usize {
        if self.columns() == 0 {
            1
        } else {
            self.rows.len() / self.columns()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// `coset . x` for a signed generator, if defined.
    pub fn act(&self, coset: usize, x: i32) -> Option<usize> {
        self.entry(coset, column(x))
    }

    pub fn entry(&self, coset: usize, col: usize) -> Option<usize> {
        match self.rows[coset * self.columns() + col] {
            NONE => None,
            v => Some(v as usize),
        }
    }

    /// Row of a coset in column order `g1, g1^-1, g2, g2^-1, ...`.
    pub fn row(&self, coset: usize) -> Vec<Option<usize>> {
        (0..self.columns()).map(|c| self.entry(coset, c)).collect()
    }

    /// Follows `word` from `coset`.
    pub fn trace(&self, coset: usize, word: &[i32]) -> Option<usize> {
        word.iter().try_fold(coset, |c, &x| self.act(c, x))
    }
}

struct NeedRoom;

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    forward: Vec<u32>,
    live: usize,
    queue: Vec<u32>,
    relators: Vec<Vec<usize>>,
    limits: EnumLimits,
    steps: u64,
}

impl Enumerator {
    fn new(p: &Presentation, limits: EnumLimits) -> Self {
        let ncols = 2 * p.ngens;
        let relators = p.relators.iter().map(|r| r.iter().map(|&x| column(x)).collect()).collect();
        Enumerator {
            ncols,
            table: vec![NONE; ncols],
            forward: vec![0],
            live: 1,
            queue: Vec::new(),
            relators,
            limits,
            steps: 0,
        }
    }

    #[inline]
    fn allocated(&self) -> usize {
        self.forward.len()
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, v: u32) {
        self.table[c * self.ncols + x] = v;
    }

    #[inline]
    fn alive(&self, c: usize) -> bool {
        self.forward[c] as usize == c
    }

    fn limit_error(&self) -> Error {
        Error::LimitExceeded { cosets: self.allocated(), deductions: self.steps }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.limits.max_deductions {
            Err(self.limit_error())
        } else {
            Ok(())
        }
    }

    fn define(&mut self, c: usize, x: usize) -> core::result::Result<usize, NeedRoom> {
        if self.allocated() >= self.limits.max_cosets {
            return Err(NeedRoom);
        }
        let n = self.allocated();
        self.forward.push(n as u32);
        self.table.extend(core::iter::repeat_n(NONE, self.ncols));
        self.live += 1;
        self.set(c, x, n as u32);
        self.set(n, x ^ 1, c as u32);
        Ok(n)
    }

    fn rep(&mut self, k: usize) -> usize {
        let mut root = k;
        while self.forward[root] as usize != root {
            root = self.forward[root] as usize;
        }
        let mut cur = k;
        while self.forward[cur] as usize != root {
            let next = self.forward[cur] as usize;
            self.forward[cur] = root as u32;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.forward[hi] = lo as u32;
        self.live -= 1;
        self.queue.push(hi as u32);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i] as usize;
            i += 1;
            for x in 0..self.ncols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                let f = f as usize;
                self.set(f, x ^ 1, NONE);
                let c = self.rep(e);
                let d = self.rep(f);
                let cx = self.get(c, x);
                if cx != NONE {
                    self.merge(d, cx as usize);
                } else {
                    let dx = self.get(d, x ^ 1);
                    if dx != NONE {
                        self.merge(c, dx as usize);
                    } else {
                        self.set(c, x, d as u32);
                        self.set(d, x ^ 1, c as u32);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Scans relator `r` from coset `c`, defining cosets to close gaps when
    /// `fill` is set. Deductions and coincidences are processed immediately.
    fn scan(
        &mut self,
        c: usize,
        r: usize,
        fill: bool,
    ) -> core::result::Result<Result<()>, NeedRoom> {
        let len = self.relators[r].len();
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, len as isize - 1);
        loop {
            while (i as isize) <= j {
                let x = self.relators[r][i];
                let next = self.get(f, x);
                if next == NONE {
                    break;
                }
                f = next as usize;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    if let Err(e) = self.tick() {
                        return Ok(Err(e));
                    }
                    self.coincidence(f, b);
                }
                return Ok(Ok(()));
            }
            while j >= i as isize {
                let x = self.relators[r][j as usize];
                let prev = self.get(b, x ^ 1);
                if prev == NONE {
                    break;
                }
                b = prev as usize;
                j -= 1;
            }
            if j < i as isize {
                if let Err(e) = self.tick() {
                    return Ok(Err(e));
                }
                self.coincidence(f, b);
                return Ok(Ok(()));
            }
            if j == i as isize {
                // One gap left: deduction.
                let x = self.relators[r][i];
                if let Err(e) = self.tick() {
                    return Ok(Err(e));
                }
                self.set(f, x, b as u32);
                self.set(b, x ^ 1, f as u32);
                return Ok(Ok(()));
            }
            if !fill {
                return Ok(Ok(()));
            }
            if let Err(e) = self.tick() {
                return Ok(Err(e));
            }
            let x = self.relators[r][i];
            self.define(f, x)?;
        }
    }

    fn lookahead(&mut self) -> Result<()> {
        let mut c = 0;
        while c < self.allocated() {
            for r in 0..self.relators.len() {
                if !self.alive(c) {
                    break;
                }
                match self.scan(c, r, false) {
                    Ok(res) => res?,
                    Err(NeedRoom) => unreachable!("lookahead never defines cosets"),
                }
            }
            c += 1;
        }
        Ok(())
    }

    /// Renumbers live cosets in order. Returns the old -> new map.
    fn compact(&mut self) -> Vec<u32> {
        let n = self.allocated();
        let mut map = vec![NONE; n];
        let mut next = 0u32;
        for c in 0..n {
            if self.alive(c) {
                map[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.ncols);
        for c in 0..n {
            if !self.alive(c) {
                continue;
            }
            for x in 0..self.ncols {
                let v = self.get(c, x);
                table.push(if v == NONE {
                    NONE
                } else {
                    let r = self.rep(v as usize);
                    map[r]
                });
            }
        }
        self.table = table;
        self.forward = (0..next).collect();
        self.live = next as usize;
        map
    }

    fn run(mut self, ngens: usize) -> Result<CosetTable> {
        let mut c = 0;
        while c < self.allocated() {
            if !self.alive(c) {
                c += 1;
                continue;
            }
            match self.process(c) {
                Ok(res) => {
                    res?;
                    c += 1;
                }
                Err(NeedRoom) => {
                    self.lookahead()?;
                    // Find where `c` went (or the next live coset after it).
                    let map = self.compact();
                    c = (c..map.len())
                        .find(|&k| map[k] != NONE)
                        .map_or(self.allocated(), |k| map[k] as usize);
                    if self.allocated() >= self.limits.max_cosets {
                        return Err(self.limit_error());
                    }
                }
            }
        }
        self.compact();
        let table = CosetTable { ngens, rows: self.table, complete: true };
        if table.rows.contains(&NONE) {
            return Err(Error::Internal("HLT finished with undefined entries"));
        }
        Ok(table)
    }

    fn process(&mut self, c: usize) -> core::result::Result<Result<()>, NeedRoom> {
        for r in 0..self.relators.len() {
            if !self.alive(c) {
                return Ok(Ok(()));
            }
            if let Err(e) = self.scan(c, r, true)? {
                return Ok(Err(e));
            }
        }
        for x in 0..self.ncols {
            if !self.alive(c) {
                break;
            }
            if self.get(c, x) == NONE {
                if let Err(e) = self.tick() {
                    return Ok(Err(e));
                }
                self.define(c, x)?;
            }
        }
        Ok(Ok(()))
    }
}

/// Enumerates the cosets of the trivial subgroup. Success means the
/// presented group is finite of order `table.len()`; `LimitExceeded` only
/// means the budget ran out.
pub fn coset_enumerate(p: &Presentation, limits: EnumLimits) -> Result<CosetTable> {
    if limits.max_cosets == 0 || limits.max_deductions == 0 {
        return Err(Error::Malformed("enumeration limits must be positive".into()));
    }
    let table = Enumerator::new(p, limits).run(p.ngens)?;
    // Post-condition: every relator closes from every coset.
    for c in 0..table.len() {
        for r in &p.relators {
            if table.trace(c, r) != Some(c) {
                return Err(Error::Internal("relator does not close in completed table"));
            }
        }
    }
    Ok(table)
}

/// Reads off the group: elements are cosets, coset 0 is the identity, and
/// the product of `x` and `y` traces a word for `y` from `x`. Also returns
/// the element each generator stands for.
pub fn table_to_group(t: &CosetTable, p: &Presentation) -> Result<(FiniteGroup, Vec<usize>)> {
    if !t.is_complete() {
        return Err(Error::TableIncomplete);
    }
    if t.ngens() != p.ngens() {
        return Err(Error::Malformed("coset table and presentation disagree on generators".into()));
    }
    let n = t.len();
    let cols = t.columns();
    // BFS spanning tree from the identity coset.
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut order = vec![0usize];
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        i += 1;
        for x in 0..cols {
            let d = t.entry(c, x).ok_or(Error::TableIncomplete)?;
            if !seen[d] {
                seen[d] = true;
                parent[d] = Some((c, x));
                order.push(d);
            }
        }
    }
    if order.len() != n {
        return Err(Error::Internal("coset table is not connected"));
    }
    let mut table = vec![0usize; n * n];
    for a in 0..n {
        table[a * n] = a;
        for &c in &order[1..] {
            let (prev, x) = parent[c].expect("tree edge");
            let via = table[a * n + prev];
            table[a * n + c] = t.entry(via, x).ok_or(Error::TableIncomplete)?;
        }
    }
    let group = FiniteGroup::from_table_unchecked(n, table, None);
    let images = (1..=t.ngens() as i32)
        .map(|k| t.act(0, k).ok_or(Error::TableIncomplete))
        .collect::<Result<Vec<_>>>()?;
    Ok((group, images))
}
