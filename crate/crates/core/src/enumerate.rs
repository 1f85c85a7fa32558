//! All semisimple class descriptors of Sp(2m, p): streaming, counting and
//! representatives.
//!
//! A descriptor of dimension 2m is a choice of even multiplicities for the
//! eigenvalues ±1, multiplicities for self-reciprocal irreducibles, and
//! multiplicities for reciprocal pairs {g, g⁻}, with total dimension 2m. The
//! stream is a depth-first search over these atoms in canonical entry order.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::classify::{assemble_rep, ClassDescriptor, Entry, Sign, SymplecticPair};
use crate::error::{Error, Result};
use crate::ffield::Fp;
use crate::fpoly::{
    count_irreducibles, count_self_reciprocal_irreducibles, enumerate_irreducibles,
    enumerate_self_reciprocal_irreducibles, Poly,
};

/// Largest matrix size 2m for which descriptors and representatives stream.
pub const STREAM_DIM_CAP: usize = 16;
/// Largest matrix size 2m accepted by [`count_classes`].
pub const COUNT_DIM_CAP: usize = 24;
/// Tallies come from explicit enumeration while `p^d` stays below this.
pub const TALLY_ENUMERATION_LIMIT: u128 = 100_000;

/// Restricts which entry kinds appear. Meant for tests; the default allows all.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Filters {
    pub units: bool,
    pub self_reciprocal: bool,
    pub pairs: bool,
    /// Cap on `deg g` for self-reciprocal and paired entries.
    pub max_degree: Option<usize>,
}

impl Default for Filters {
    fn default() -> Self {
        Filters { units: true, self_reciprocal: true, pairs: true, max_degree: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumSpec {
    pub m: usize,
    pub field: Fp,
    pub filters: Filters,
}

impl EnumSpec {
    pub fn new(m: usize, p: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::PreconditionViolated("m must be at least 1".into()));
        }
        Ok(EnumSpec { m, field: Fp::new(p)?, filters: Filters::default() })
    }

    pub fn with_filters(mut self, filters: Filters) -> Self {
        self.filters = filters;
        self
    }

    pub fn dim(&self) -> usize {
        2 * self.m
    }

    fn degree_ok(&self, d: usize) -> bool {
        self.filters.max_degree.is_none_or(|cap| d <= cap)
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.dim() > cap {
            return Err(Error::DimensionCap { got: self.dim(), cap });
        }
        Ok(())
    }
}

const UNITS: u8 = 0;
const SELF: u8 = 1;
const PAIRS: u8 = 2;

/// Position in the atom sequence: kind, degree of g, index within that degree.
#[derive(Clone, Copy, Debug)]
struct Pos {
    kind: u8,
    deg: usize,
    idx: usize,
}

#[derive(Clone, Copy, Debug)]
struct Cursor {
    pos: Pos,
    mult: usize,
}

/// Streams every feasible descriptor of dimension 2m exactly once, with
/// entries in canonical order.
pub struct DescriptorIter {
    spec: EnumSpec,
    cache: HashMap<(u8, usize), Vec<Poly>>,
    stack: Vec<Cursor>,
    descending: bool,
    finished: bool,
}

pub fn enumerate_descriptors(spec: EnumSpec) -> Result<DescriptorIter> {
    spec.check_cap(STREAM_DIM_CAP)?;
    Ok(DescriptorIter { spec, cache: HashMap::new(), stack: Vec::new(), descending: true, finished: false })
}

impl DescriptorIter {
    fn polys(&mut self, kind: u8, deg: usize) -> &[Poly] {
        let field = self.spec.field;
        self.cache.entry((kind, deg)).or_insert_with(|| {
            let mut v: Vec<Poly> = if kind == SELF {
                enumerate_self_reciprocal_irreducibles(field, deg).collect()
            } else {
                enumerate_irreducibles(field, deg)
                    .filter(|g| g.coeff(0) != 0)
                    .filter(|g| g.reciprocal().map(|r| *g < r).unwrap_or(false))
                    .collect()
            };
            v.sort();
            v
        })
    }

    /// Dimension of one copy of the atom at `pos`.
    fn unit_size(pos: Pos) -> usize {
        match pos.kind {
            UNITS => 1,
            SELF => pos.deg,
            _ => 2 * pos.deg,
        }
    }

    fn step(pos: Pos) -> usize {
        if pos.kind == UNITS {
            2
        } else {
            1
        }
    }

    /// First existing atom at or after `pos` whose smallest block fits in `rem`.
    fn normalize(&mut self, mut pos: Pos, rem: usize) -> Option<Pos> {
        let f = self.spec.filters;
        loop {
            match pos.kind {
                UNITS => {
                    if f.units && pos.idx < 2 && 2 <= rem {
                        return Some(pos);
                    }
                    pos = Pos { kind: SELF, deg: 2, idx: 0 };
                }
                SELF => {
                    if !f.self_reciprocal || pos.deg > rem || !self.spec.degree_ok(pos.deg) {
                        pos = Pos { kind: PAIRS, deg: 1, idx: 0 };
                    } else if pos.idx < self.polys(SELF, pos.deg).len() {
                        return Some(pos);
                    } else {
                        pos = Pos { kind: SELF, deg: pos.deg + 2, idx: 0 };
                    }
                }
                _ => {
                    if !f.pairs || 2 * pos.deg > rem || !self.spec.degree_ok(pos.deg) {
                        return None;
                    } else if pos.idx < self.polys(PAIRS, pos.deg).len() {
                        return Some(pos);
                    } else {
                        pos = Pos { kind: PAIRS, deg: pos.deg + 1, idx: 0 };
                    }
                }
            }
        }
    }

    fn first_at(&mut self, pos: Pos, rem: usize) -> Option<Cursor> {
        let pos = self.normalize(pos, rem)?;
        Some(Cursor { pos, mult: Self::step(pos) })
    }

    fn after(pos: Pos) -> Pos {
        Pos { idx: pos.idx + 1, ..pos }
    }

    fn used(&self) -> usize {
        self.stack.iter().map(|c| c.mult * Self::unit_size(c.pos)).sum()
    }

    fn entry(&mut self, c: Cursor) -> Entry {
        match c.pos.kind {
            UNITS => Entry::Unit { sign: if c.pos.idx == 0 { Sign::Plus } else { Sign::Minus }, n: c.mult },
            SELF => Entry::SelfRecip { g: self.polys(SELF, c.pos.deg)[c.pos.idx].clone(), n: c.mult },
            _ => Entry::Pair { g: self.polys(PAIRS, c.pos.deg)[c.pos.idx].clone(), n: c.mult },
        }
    }

    fn build(&mut self) -> ClassDescriptor {
        let stack = self.stack.clone();
        let entries = stack.into_iter().map(|c| self.entry(c)).collect();
        ClassDescriptor::from_sorted_unchecked(self.spec.field, entries)
    }
}

impl Iterator for DescriptorIter {
    type Item = ClassDescriptor;

    fn next(&mut self) -> Option<ClassDescriptor> {
        let total = self.spec.dim();
        while !self.finished {
            if self.descending {
                let rem = total - self.used();
                if rem == 0 {
                    self.descending = false;
                    return Some(self.build());
                }
                let start = self.stack.last().map_or(Pos { kind: UNITS, deg: 1, idx: 0 }, |c| Self::after(c.pos));
                match self.first_at(start, rem) {
                    Some(c) => self.stack.push(c),
                    None => self.descending = false,
                }
            } else {
                let Some(top) = self.stack.pop() else {
                    self.finished = true;
                    break;
                };
                let rem = total - self.used();
                let bigger = top.mult + Self::step(top.pos);
                let next = if bigger * Self::unit_size(top.pos) <= rem {
                    Some(Cursor { mult: bigger, ..top })
                } else {
                    self.first_at(Self::after(top.pos), rem)
                };
                if let Some(c) = next {
                    self.stack.push(c);
                    self.descending = true;
                }
            }
        }
        None
    }
}

type TallyMemo = RwLock<HashMap<(u32, usize), (u128, u128)>>;

fn memo() -> &'static TallyMemo {
    static MEMO: OnceLock<TallyMemo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `(self-reciprocal irreducibles of degree d, canonical pairs of degree d)`,
/// excluding `t ± 1` from the degree-one self count.
///
/// Enumerated while `p^d` is small, closed form beyond that.
pub fn tallies(field: Fp, d: usize) -> Result<(u128, u128)> {
    let key = (field.p(), d);
    if let Some(v) = memo().read().expect("tally memo poisoned").get(&key) {
        return Ok(*v);
    }
    let small = (field.p() as u128).checked_pow(d as u32).is_some_and(|q| q <= TALLY_ENUMERATION_LIMIT);
    let v = if small {
        let selfs = enumerate_self_reciprocal_irreducibles(field, d).count() as u128;
        let pairs = enumerate_irreducibles(field, d)
            .filter(|g| g.coeff(0) != 0)
            .filter(|g| g.reciprocal().map(|r| *g < r).unwrap_or(false))
            .count() as u128;
        (selfs, pairs)
    } else {
        closed_form_tallies(field.p(), d)?
    };
    memo().write().expect("tally memo poisoned").insert(key, v);
    Ok(v)
}

/// The closed-form tallies; the degree-one pair count is `(p - 3) / 2`.
pub fn closed_form_tallies(p: u32, d: usize) -> Result<(u128, u128)> {
    if d == 1 {
        return Ok((0, (p as u128 - 3) / 2));
    }
    let selfs = count_self_reciprocal_irreducibles(p, d)?;
    let all = count_irreducibles(p, d)?;
    Ok((selfs, (all - selfs) / 2))
}

fn binomial(n: u128, k: u128) -> Result<u128> {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i).ok_or(Error::Overflow)? / (i + 1);
    }
    Ok(acc)
}

/// Multiplies `series` by `(1 - y^k)^(-count)` truncated at its length.
fn multiply_geometric(series: &mut [u128], k: usize, count: u128) -> Result<()> {
    if count == 0 {
        return Ok(());
    }
    let len = series.len();
    let weights: Vec<u128> = (0..=(len - 1) / k)
        .map(|j| binomial(count + j as u128 - 1, j as u128))
        .collect::<Result<_>>()?;
    let old = series.to_vec();
    for (i, slot) in series.iter_mut().enumerate() {
        let mut acc: u128 = 0;
        for (j, w) in weights.iter().enumerate().take(i / k + 1) {
            let term = w.checked_mul(old[i - j * k]).ok_or(Error::Overflow)?;
            acc = acc.checked_add(term).ok_or(Error::Overflow)?;
        }
        *slot = acc;
    }
    Ok(())
}

/// Number of descriptors [`enumerate_descriptors`] would stream, by a
/// generating-function product over half-dimension.
pub fn count_classes(spec: EnumSpec) -> Result<u128> {
    spec.check_cap(COUNT_DIM_CAP)?;
    let m = spec.m;
    let f = spec.filters;
    let mut series = vec![0u128; m + 1];
    series[0] = 1;
    if f.units {
        multiply_geometric(&mut series, 1, 2)?;
    }
    for d in 1..=2 * m {
        if !spec.degree_ok(d) {
            continue;
        }
        let (selfs, pairs) = tallies(spec.field, d)?;
        if f.self_reciprocal && d % 2 == 0 {
            multiply_geometric(&mut series, d / 2, selfs)?;
        }
        if f.pairs && d <= m {
            multiply_geometric(&mut series, d, pairs)?;
        }
    }
    Ok(series[m])
}

/// `assemble_rep` over [`enumerate_descriptors`]; every pair preserves the standard J.
pub fn emit_representatives(spec: EnumSpec) -> Result<impl Iterator<Item = Result<SymplecticPair>>> {
    Ok(enumerate_descriptors(spec)?.map(|d| assemble_rep(&d)))
}
