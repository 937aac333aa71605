//! ℓ0-sampling linear sketch.
//!
//! Each repetition hashes every coordinate to a level with `P(level ≥ ℓ) = 2^−ℓ`;
//! level `ℓ` accumulates the coordinates hashed at or above it. A cell is a
//! 1-sparse recovery structure `(count, index_sum, fingerprint)` where the
//! fingerprint is `Σ value · z^index` over GF(2^61 − 1).
//!
//! Cells above the deepest non-zero level of a repetition are not stored; every
//! mutating operation trims trailing zero cells so equal vectors give equal values.

use crate::error::{Error, Result};
use crate::seed::{derive, mix64};

/// Mersenne prime 2^61 − 1.
pub const FIELD_PRIME: u64 = (1 << 61) - 1;

/// Repetitions per `ln(1/δ)`.
pub const REPETITION_FACTOR: f64 = 4.0;

const MAGIC: &[u8; 4] = b"L0S1";
const CELL_BYTES: usize = 24;
const HEADER_BYTES: usize = 4 + 8 + 4 + 4 + 8;

#[inline]
fn mul_mod(a: u64, b: u64) -> u64 {
    let wide = a as u128 * b as u128;
    let folded = (wide & FIELD_PRIME as u128) + (wide >> 61);
    let r = (folded & FIELD_PRIME as u128) as u64 + (folded >> 61) as u64;
    if r >= FIELD_PRIME {
        r - FIELD_PRIME
    } else {
        r
    }
}

#[inline]
fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= FIELD_PRIME {
        s - FIELD_PRIME
    } else {
        s
    }
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// Signed integer as a field element.
#[inline]
fn to_field(v: i64) -> u64 {
    let r = v.rem_euclid(FIELD_PRIME as i64);
    r as u64
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
struct Cell {
    count: i64,
    index_sum: i64,
    fingerprint: u64,
}

impl Cell {
    fn is_zero(&self) -> bool {
        self.count == 0 && self.index_sum == 0 && self.fingerprint == 0
    }

    fn add(&mut self, other: &Cell) {
        self.count = self.count.wrapping_add(other.count);
        self.index_sum = self.index_sum.wrapping_add(other.index_sum);
        self.fingerprint = add_mod(self.fingerprint, other.fingerprint);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleOutcome {
    NonZeroIndex { index: u64, sign: i8 },
    Empty,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct L0Sketch {
    universe: u64,
    levels: u32,
    seed: u64,
    z: u64,
    reps: Vec<Vec<Cell>>,
}

/// `ceil(log2 x)` for `x ≥ 1`.
pub(crate) fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

impl L0Sketch {
    pub fn new(universe: u64, delta: f64, seed: u64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::BadDelta(delta));
        }
        if universe == 0 {
            return Err(Error::BadParam("sketch universe must be non-empty".into()));
        }
        let reps = (REPETITION_FACTOR * (1.0 / delta).ln()).ceil().max(1.0) as usize;
        let levels = 2 * ceil_log2(universe) + 2;
        let z = 1 + mix64(derive(seed, "z", 0)) % (FIELD_PRIME - 1);
        Ok(Self { universe, levels, seed, z, reps: vec![Vec::new(); reps] })
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn repetitions(&self) -> usize {
        self.reps.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `z^index`, shareable across sketches built from the same seed.
    pub fn power(&self, index: u64) -> u64 {
        pow_mod(self.z, index)
    }

    /// Deepest level holding `index` in repetition `rep`; `mixed` is `mix64(index)`.
    #[inline]
    fn level_of_mixed(&self, rep: usize, mixed: u64) -> usize {
        let rep_key = (rep as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let h = mix64(mixed ^ self.seed ^ rep_key);
        (h.leading_zeros() as usize).min(self.levels as usize - 1)
    }

    #[inline]
    fn level_of(&self, rep: usize, index: u64) -> usize {
        self.level_of_mixed(rep, mix64(index))
    }

    pub fn update(&mut self, index: u64, delta: i64) -> Result<()> {
        if index >= self.universe {
            return Err(Error::IndexOutOfRange { index, universe: self.universe });
        }
        let power = self.power(index);
        self.update_with_power(index, delta, power);
        Ok(())
    }

    /// Update with a precomputed `z^index`; the caller guarantees the range and power.
    pub(crate) fn update_with_power(&mut self, index: u64, delta: i64, power: u64) {
        if delta == 0 {
            return;
        }
        let step = Cell {
            count: delta,
            index_sum: delta.wrapping_mul(index as i64),
            fingerprint: mul_mod(to_field(delta), power),
        };
        let mixed = mix64(index);
        for rep in 0..self.reps.len() {
            let top = self.level_of_mixed(rep, mixed);
            let cells = &mut self.reps[rep];
            if cells.len() <= top {
                cells.resize(top + 1, Cell::default());
            }
            for cell in &mut cells[..=top] {
                cell.add(&step);
            }
            trim(cells);
        }
    }

    fn compatible(&self, other: &Self) -> bool {
        self.universe == other.universe
            && self.levels == other.levels
            && self.seed == other.seed
            && self.reps.len() == other.reps.len()
    }

    pub fn merge_from(&mut self, other: &Self) -> Result<()> {
        if !self.compatible(other) {
            return Err(Error::SeedMismatch);
        }
        for (mine, theirs) in self.reps.iter_mut().zip(&other.reps) {
            if mine.len() < theirs.len() {
                mine.resize(theirs.len(), Cell::default());
            }
            for (a, b) in mine.iter_mut().zip(theirs) {
                a.add(b);
            }
            trim(mine);
        }
        Ok(())
    }

    pub fn merge(a: &Self, b: &Self) -> Result<Self> {
        let mut out = a.clone();
        out.merge_from(b)?;
        Ok(out)
    }

    fn recover(&self, rep: usize, level: usize, cell: &Cell) -> Option<(u64, i8)> {
        if cell.count == 0 || cell.index_sum.checked_rem(cell.count) != Some(0) {
            return None;
        }
        let q = cell.index_sum.checked_div(cell.count)?;
        if q < 0 || q as u64 >= self.universe {
            return None;
        }
        let q = q as u64;
        if self.level_of(rep, q) < level {
            return None;
        }
        if mul_mod(to_field(cell.count), self.power(q)) != cell.fingerprint {
            return None;
        }
        Some((q, cell.count.signum() as i8))
    }

    pub fn sample(&self) -> SampleOutcome {
        if self.reps.iter().all(|cells| cells.first().is_none_or(Cell::is_zero)) {
            return SampleOutcome::Empty;
        }
        for (rep, cells) in self.reps.iter().enumerate() {
            for (level, cell) in cells.iter().enumerate().rev() {
                if let Some((index, sign)) = self.recover(rep, level, cell) {
                    return SampleOutcome::NonZeroIndex { index, sign };
                }
            }
        }
        SampleOutcome::Fail
    }

    pub fn is_zero(&self) -> bool {
        self.reps.iter().all(Vec::is_empty)
    }

    pub fn stored_cells(&self) -> usize {
        self.reps.iter().map(Vec::len).sum()
    }

    /// Size of [`Self::to_bytes`] without encoding.
    pub fn encoded_len(&self) -> usize {
        HEADER_BYTES + 4 * self.reps.len() + CELL_BYTES * self.stored_cells()
    }

    /// Little-endian encoding: magic, universe, levels, repetitions, seed, then per
    /// repetition a stored-level count followed by fixed-width cells.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.encoded_len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&self.universe.to_le_bytes());
        out.extend_from_slice(&self.levels.to_le_bytes());
        out.extend_from_slice(&(self.reps.len() as u32).to_le_bytes());
        out.extend_from_slice(&self.seed.to_le_bytes());
        for cells in &self.reps {
            out.extend_from_slice(&(cells.len() as u32).to_le_bytes());
            for c in cells {
                out.extend_from_slice(&c.count.to_le_bytes());
                out.extend_from_slice(&c.index_sum.to_le_bytes());
                out.extend_from_slice(&c.fingerprint.to_le_bytes());
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(4)? != MAGIC {
            return Err(Error::Decode("bad magic".into()));
        }
        let universe = r.u64()?;
        let levels = r.u32()?;
        let rep_count = r.u32()? as usize;
        let seed = r.u64()?;
        if universe == 0 || levels != 2 * ceil_log2(universe) + 2 {
            return Err(Error::Decode("inconsistent dimensions".into()));
        }
        let mut reps = Vec::with_capacity(rep_count.min(1 << 16));
        for _ in 0..rep_count {
            let len = r.u32()? as usize;
            if len > levels as usize {
                return Err(Error::Decode("too many levels".into()));
            }
            let mut cells = Vec::with_capacity(len);
            for _ in 0..len {
                let count = r.u64()? as i64;
                let index_sum = r.u64()? as i64;
                let fingerprint = r.u64()?;
                if fingerprint >= FIELD_PRIME {
                    return Err(Error::Decode("fingerprint outside field".into()));
                }
                cells.push(Cell { count, index_sum, fingerprint });
            }
            if cells.last().is_some_and(Cell::is_zero) {
                return Err(Error::Decode("untrimmed zero cell".into()));
            }
            reps.push(cells);
        }
        if r.pos != bytes.len() {
            return Err(Error::Decode("trailing bytes".into()));
        }
        let z = 1 + mix64(derive(seed, "z", 0)) % (FIELD_PRIME - 1);
        Ok(Self { universe, levels, seed, z, reps })
    }
}

fn trim(cells: &mut Vec<Cell>) {
    while cells.last().is_some_and(Cell::is_zero) {
        cells.pop();
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos + n;
        let s = self.bytes.get(self.pos..end).ok_or_else(|| Error::Decode("truncated".into()))?;
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}
