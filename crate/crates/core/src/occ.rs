//! Run-length encoded occurrence sets and counted access to them.
//!
//! An [`OccurrenceSet`] marks the transactions `0..universe` in which a
//! pattern occurs. It is stored as alternating run lengths of 0-bits and
//! 1-bits, always starting with a (possibly empty) 0-run, so `11100011`
//! becomes `[0, 3, 3, 2]`.
//!
//! Reads that go through an [`OccurrenceStore`] are tallied by its
//! [`AccessCounter`]: expanding a set into its members counts as a
//! decompression, and an intersection query counts once. Cardinality is
//! cached and free.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::sync::atomic::{AtomicUsize, Ordering};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OccError {
    LengthMismatch { left: u32, right: u32 },
    /// A run after the leading 0-run was empty.
    EmptyRun { position: usize },
    MemberOutOfRange { member: u32, universe: u32 },
    NotAscending { member: u32 },
    Parse(String),
    UnknownSlot(usize),
}

impl fmt::Display for OccError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OccError::LengthMismatch { left, right } => {
                write!(f, "occurrence universes differ ({left} vs {right})")
            }
            OccError::EmptyRun { position } => write!(f, "run {position} has length zero"),
            OccError::MemberOutOfRange { member, universe } => {
                write!(f, "transaction {member} outside universe of {universe}")
            }
            OccError::NotAscending { member } => write!(f, "members not strictly ascending at {member}"),
            OccError::Parse(msg) => write!(f, "bad occurrence string: {msg}"),
            OccError::UnknownSlot(slot) => write!(f, "no occurrence set in slot {slot}"),
        }
    }
}

impl core::error::Error for OccError {}

/// Compressed set of transaction indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OccurrenceSet {
    universe: u32,
    runs: Vec<u32>,
    count: u32,
}

impl OccurrenceSet {
    /// Builds a set from alternating 0/1 run lengths starting with 0-bits.
    pub fn from_runs(runs: Vec<u32>) -> Result<Self, OccError> {
        if runs.is_empty() {
            return Ok(Self::empty(0));
        }
        if let Some(position) = runs.iter().skip(1).position(|&r| r == 0) {
            return Err(OccError::EmptyRun { position: position + 1 });
        }
        let mut universe = 0u32;
        let mut count = 0u32;
        for (i, &r) in runs.iter().enumerate() {
            universe = universe.checked_add(r).ok_or_else(|| OccError::Parse("universe overflows u32".into()))?;
            if i % 2 == 1 {
                count += r;
            }
        }
        Ok(OccurrenceSet { universe, runs, count })
    }

    pub fn empty(universe: u32) -> Self {
        OccurrenceSet { universe, runs: alloc::vec![universe], count: 0 }
    }

    pub fn full(universe: u32) -> Self {
        if universe == 0 {
            return Self::empty(0);
        }
        OccurrenceSet { universe, runs: alloc::vec![0, universe], count: universe }
    }

    /// Builds a set from strictly ascending transaction indices.
    pub fn from_members<I: IntoIterator<Item = u32>>(universe: u32, members: I) -> Result<Self, OccError> {
        let mut runs = Vec::new();
        let mut cursor = 0u32; // end of the last emitted run
        let mut open: Option<(u32, u32)> = None; // current 1-run [start, end)
        let mut count = 0;
        for m in members {
            if m >= universe {
                return Err(OccError::MemberOutOfRange { member: m, universe });
            }
            match open {
                Some((_, end)) if m < end => return Err(OccError::NotAscending { member: m }),
                Some((start, end)) if m == end => open = Some((start, end + 1)),
                Some((start, end)) => {
                    runs.push(start - cursor);
                    runs.push(end - start);
                    cursor = end;
                    open = Some((m, m + 1));
                }
                None => open = Some((m, m + 1)),
            }
            count += 1;
        }
        if let Some((start, end)) = open {
            runs.push(start - cursor);
            runs.push(end - start);
            cursor = end;
        }
        if cursor < universe || runs.is_empty() {
            runs.push(universe - cursor);
        }
        Ok(OccurrenceSet { universe, runs, count })
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let members = bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u32);
        Self::from_members(bits.len() as u32, members).expect("indices ascend within range")
    }

    /// Parses a `0`/`1` bitstring such as `11100011`.
    pub fn from_bit_str(s: &str) -> Result<Self, OccError> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(OccError::Parse(alloc::format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_bits(&bits))
    }

    /// Parses the comma-separated run-length form, e.g. `0,3,3,2`.
    pub fn parse_rle(s: &str) -> Result<Self, OccError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty(0));
        }
        let runs = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| OccError::Parse(alloc::format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_runs(runs)
    }

    pub fn to_rle_string(&self) -> String {
        let mut out = String::new();
        for (i, r) in self.runs.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{r}");
        }
        out
    }

    pub fn to_bit_string(&self) -> String {
        let mut out = String::with_capacity(self.universe as usize);
        for (i, &r) in self.runs.iter().enumerate() {
            let c = if i % 2 == 1 { '1' } else { '0' };
            out.extend(core::iter::repeat_n(c, r as usize));
        }
        out
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    pub fn runs(&self) -> &[u32] {
        &self.runs
    }

    /// Number of transactions in the set (cached).
    pub fn support(&self) -> u32 {
        self.count
    }

    /// Half-open `[start, end)` intervals of 1-bits.
    pub fn intervals(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let mut pos = 0u32;
        self.runs.iter().enumerate().filter_map(move |(i, &r)| {
            let start = pos;
            pos += r;
            (i % 2 == 1).then_some((start, pos))
        })
    }

    /// Ascending member indices. Uncounted; use [`OccurrenceStore::members`]
    /// for metered access.
    pub fn members(&self) -> Vec<u32> {
        self.intervals().flat_map(|(a, b)| a..b).collect()
    }

    /// `|self ∩ other|` computed on the runs. Uncounted.
    pub fn intersection_count(&self, other: &OccurrenceSet) -> Result<u32, OccError> {
        self.check_universe(other)?;
        let mut left = self.intervals().peekable();
        let mut right = other.intervals().peekable();
        let mut total = 0;
        while let (Some(&(a0, a1)), Some(&(b0, b1))) = (left.peek(), right.peek()) {
            let lo = a0.max(b0);
            let hi = a1.min(b1);
            if lo < hi {
                total += hi - lo;
            }
            if a1 <= b1 {
                left.next();
            } else {
                right.next();
            }
        }
        Ok(total)
    }

    pub fn is_subset_of(&self, other: &OccurrenceSet) -> Result<bool, OccError> {
        Ok(self.intersection_count(other)? == self.count)
    }

    pub fn complement(&self) -> OccurrenceSet {
        if self.universe == 0 {
            return self.clone();
        }
        let mut runs = self.runs.clone();
        if runs[0] == 0 {
            runs.remove(0);
        } else {
            runs.insert(0, 0);
        }
        OccurrenceSet { universe: self.universe, runs, count: self.universe - self.count }
    }

    fn check_universe(&self, other: &OccurrenceSet) -> Result<(), OccError> {
        if self.universe != other.universe {
            return Err(OccError::LengthMismatch { left: self.universe, right: other.universe });
        }
        Ok(())
    }
}

/// Snapshot of an [`AccessCounter`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AccessCounts {
    pub decompressions: usize,
    pub intersections: usize,
}

/// Monotone counters of costly occurrence reads.
#[derive(Debug, Default)]
pub struct AccessCounter {
    decompressions: AtomicUsize,
    intersections: AtomicUsize,
}

impl AccessCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn snapshot(&self) -> AccessCounts {
        AccessCounts {
            decompressions: self.decompressions.load(Ordering::Relaxed),
            intersections: self.intersections.load(Ordering::Relaxed),
        }
    }

    pub fn reset(&self) {
        self.decompressions.store(0, Ordering::Relaxed);
        self.intersections.store(0, Ordering::Relaxed);
    }

    fn bump_decompressions(&self) {
        self.decompressions.fetch_add(1, Ordering::Relaxed);
    }

    fn bump_intersections(&self) {
        self.intersections.fetch_add(1, Ordering::Relaxed);
    }

    /// Counted `|a ∩ b|`.
    pub fn and_support(&self, a: &OccurrenceSet, b: &OccurrenceSet) -> Result<u32, OccError> {
        let n = a.intersection_count(b)?;
        self.bump_intersections();
        Ok(n)
    }

    /// Counted member expansion.
    pub fn members(&self, s: &OccurrenceSet) -> Vec<u32> {
        self.bump_decompressions();
        s.members()
    }
}

/// All occurrence sets of one lattice, addressed by slot, sharing one
/// universe and one access counter.
#[derive(Debug, Default)]
pub struct OccurrenceStore {
    universe: u32,
    sets: Vec<OccurrenceSet>,
    counter: AccessCounter,
}

impl Clone for OccurrenceStore {
    fn clone(&self) -> Self {
        OccurrenceStore { universe: self.universe, sets: self.sets.clone(), counter: AccessCounter::new() }
    }
}

impl PartialEq for OccurrenceStore {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.sets == other.sets
    }
}

impl OccurrenceStore {
    pub fn new(universe: u32, sets: Vec<OccurrenceSet>) -> Result<Self, OccError> {
        for s in &sets {
            if s.universe() != universe {
                return Err(OccError::LengthMismatch { left: universe, right: s.universe() });
            }
        }
        Ok(OccurrenceStore { universe, sets, counter: AccessCounter::new() })
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn counter(&self) -> &AccessCounter {
        &self.counter
    }

    /// Raw access to a stored set (uncounted).
    pub fn set(&self, slot: usize) -> Result<&OccurrenceSet, OccError> {
        self.sets.get(slot).ok_or(OccError::UnknownSlot(slot))
    }

    pub fn sets(&self) -> &[OccurrenceSet] {
        &self.sets
    }

    pub fn support(&self, slot: usize) -> Result<u32, OccError> {
        Ok(self.set(slot)?.support())
    }

    pub fn and_support(&self, a: usize, b: usize) -> Result<u32, OccError> {
        self.counter.and_support(self.set(a)?, self.set(b)?)
    }

    pub fn members(&self, slot: usize) -> Result<Vec<u32>, OccError> {
        Ok(self.counter.members(self.set(slot)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn bits(s: &str) -> OccurrenceSet {
        OccurrenceSet::from_bit_str(s).unwrap()
    }

    #[test]
    fn example_strings() {
        let a = bits("11100011");
        assert_eq!(a.runs(), &[0, 3, 3, 2]);
        assert_eq!(a.to_rle_string(), "0,3,3,2");
        assert_eq!(a.support(), 5);
        assert_eq!(a.members(), vec![0, 1, 2, 6, 7]);
        let b = bits("01111000");
        assert_eq!(a.intersection_count(&b).unwrap(), 2);
        assert_eq!(bits("11110011").intersection_count(&bits("11110000")).unwrap(), 4);
    }

    #[test]
    fn trivial_sets() {
        assert_eq!(OccurrenceSet::empty(6).support(), 0);
        assert_eq!(OccurrenceSet::empty(6).members(), Vec::<u32>::new());
        assert_eq!(OccurrenceSet::full(6).support(), 6);
        assert_eq!(bits("0000"), OccurrenceSet::empty(4));
        assert_eq!(bits("111"), OccurrenceSet::full(3));
        let a = bits("10110");
        assert_eq!(a.intersection_count(&a.complement()).unwrap(), 0);
        assert_eq!(a.complement().to_bit_string(), "01001");
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(OccurrenceSet::parse_rle("0,3,0,2"), Err(OccError::EmptyRun { position: 2 }));
        assert!(OccurrenceSet::parse_rle("0,x").is_err());
        assert_eq!(
            OccurrenceSet::from_members(4, [1, 1]),
            Err(OccError::NotAscending { member: 1 })
        );
        assert_eq!(
            OccurrenceSet::from_members(4, [4]),
            Err(OccError::MemberOutOfRange { member: 4, universe: 4 })
        );
        assert_eq!(
            bits("101").intersection_count(&bits("1010")),
            Err(OccError::LengthMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn store_counts_reads() {
        let store = OccurrenceStore::new(8, vec![bits("11100011"), bits("01111000")]).unwrap();
        assert_eq!(store.support(0).unwrap(), 5);
        assert_eq!(store.counter().snapshot(), AccessCounts::default());
        assert_eq!(store.and_support(0, 1).unwrap(), 2);
        assert_eq!(store.members(0).unwrap(), vec![0, 1, 2, 6, 7]);
        assert_eq!(store.members(1).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(store.counter().snapshot(), AccessCounts { decompressions: 2, intersections: 1 });
        store.counter().reset();
        assert_eq!(store.counter().snapshot(), AccessCounts::default());
        assert!(store.members(5).is_err());
    }
}
