//! Binary occurrence store: magic `L2SO`, a version byte, then LEB128
//! varints: universe size, pattern count, and per pattern its id, run count
//! and runs.

use latclust_core::occ::OccurrenceSet;
use latclust_core::{Lattice, PatternId};

use crate::FormatError;

pub const MAGIC: &[u8; 4] = b"L2SO";
pub const VERSION: u8 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct StoreFile {
    pub universe: u32,
    pub sets: Vec<(PatternId, OccurrenceSet)>,
}

impl StoreFile {
    pub fn from_lattice(l: &Lattice) -> Self {
        let sets = l.patterns().iter().enumerate().map(|(i, p)| (p.id, l.occurrences(i).clone())).collect();
        StoreFile { universe: l.universe(), sets }
    }

    /// Whether every pattern of `l` has exactly these occurrences.
    pub fn matches(&self, l: &Lattice) -> bool {
        self.universe == l.universe()
            && self.sets.len() == l.len()
            && self.sets.iter().all(|(id, s)| l.index_of(*id).is_some_and(|i| l.occurrences(i) == s))
    }
}

pub fn write(store: &StoreFile) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    let mut put = |v: u64| {
        leb128::write::unsigned(&mut out, v).expect("writing to a Vec cannot fail");
    };
    put(store.universe.into());
    put(store.sets.len() as u64);
    for (id, set) in &store.sets {
        put(id.0.into());
        put(set.runs().len() as u64);
        for &r in set.runs() {
            put(r.into());
        }
    }
    out
}

fn bad(msg: impl Into<String>) -> FormatError {
    FormatError::Binary(msg.into())
}

pub fn read(bytes: &[u8]) -> Result<StoreFile, FormatError> {
    let rest = bytes.strip_prefix(MAGIC.as_slice()).ok_or_else(|| bad("missing L2SO magic"))?;
    let (&version, mut rest) = rest.split_first().ok_or_else(|| bad("missing version byte"))?;
    if version != VERSION {
        return Err(bad(format!("unsupported version {version}")));
    }
    let mut get = |what: &str| -> Result<u32, FormatError> {
        let v = leb128::read::unsigned(&mut rest).map_err(|e| bad(format!("{what}: {e}")))?;
        u32::try_from(v).map_err(|_| bad(format!("{what} {v} exceeds u32")))
    };
    let universe = get("universe")?;
    let count = get("pattern count")?;
    let mut sets = Vec::new();
    for _ in 0..count {
        let id = PatternId(get("pattern id")?);
        let runs = (0..get("run count")?).map(|_| get("run")).collect::<Result<Vec<_>, _>>()?;
        let set = OccurrenceSet::from_runs(runs).map_err(|e| bad(format!("pattern {id}: {e}")))?;
        if set.universe() != universe {
            return Err(bad(format!("pattern {id}: runs cover {} transactions, expected {universe}", set.universe())));
        }
        sets.push((id, set));
    }
    if !rest.is_empty() {
        return Err(bad(format!("{} trailing bytes", rest.len())));
    }
    Ok(StoreFile { universe, sets })
}
