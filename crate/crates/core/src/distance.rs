//! Co-occurrence distances between patterns, clusters and groups.
//!
//! All values are exact [`Ratio`]s in `[0, 1]`. The base distance counts the
//! transactions holding exactly one of two patterns, normalized by the
//! transactions holding at least one:
//!
//! ```text
//! dist(a, b) = (sa + sb - 2·sab) / (sa + sb - sab)
//! ```
//!
//! Only `sab = |a ∩ b|` needs an occurrence query; the union size follows
//! from the supports. For a subgraph/supergraph pair `sab` is the
//! supergraph's support, so the distance comes from the lattice alone.

use core::fmt;

use crate::lattice::{Lattice, PatternId};
use crate::occ::{AccessCounter, OccError, OccurrenceSet};
use crate::pregroup::Group;
use crate::ratio::Ratio;

/// Value reported for an unrelated cluster pair in numeric outputs.
pub const UNRELATED: f64 = -1.0;

/// Exact distance in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Distance(Ratio);

impl Distance {
    pub const ZERO: Distance = Distance(Ratio::ZERO);
    pub const ONE: Distance = Distance(Ratio::ONE);

    pub fn new(num: u64, den: u64) -> Option<Distance> {
        Ratio::new(num, den).filter(|r| *r <= Ratio::ONE).map(Distance)
    }

    pub fn ratio(self) -> Ratio {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0.to_f64()
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Numeric form of a cluster distance, with `-1` for "no related pair".
pub fn cluster_dist_value(d: Option<Distance>) -> f64 {
    d.map_or(UNRELATED, Distance::to_f64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistanceError {
    /// Both patterns have empty occurrence sets.
    Undefined,
    ParentSupportZero,
    ChildExceedsParent { parent: u32, child: u32 },
    InconsistentCounts { sa: u32, sb: u32, sab: u32 },
    UnknownPattern(PatternId),
    OverlappingClusters(PatternId),
    EmptyCluster,
    Occurrences(OccError),
}

impl fmt::Display for DistanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceError::Undefined => f.write_str("distance undefined: both supports are zero"),
            DistanceError::ParentSupportZero => f.write_str("parent support is zero"),
            DistanceError::ChildExceedsParent { parent, child } => {
                write!(f, "child support {child} exceeds parent support {parent}")
            }
            DistanceError::InconsistentCounts { sa, sb, sab } => {
                write!(f, "intersection {sab} larger than a support ({sa}, {sb})")
            }
            DistanceError::UnknownPattern(id) => write!(f, "unknown pattern {id}"),
            DistanceError::OverlappingClusters(id) => write!(f, "pattern {id} in both clusters"),
            DistanceError::EmptyCluster => f.write_str("cluster is empty"),
            DistanceError::Occurrences(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for DistanceError {}

impl From<OccError> for DistanceError {
    fn from(e: OccError) -> Self {
        DistanceError::Occurrences(e)
    }
}

/// Distance from the two supports and the intersection support.
pub fn dist_from_counts(sa: u32, sb: u32, sab: u32) -> Result<Distance, DistanceError> {
    if sab > sa || sab > sb {
        return Err(DistanceError::InconsistentCounts { sa, sb, sab });
    }
    let (sa, sb, sab) = (sa as u64, sb as u64, sab as u64);
    let union = sa + sb - sab;
    if union == 0 {
        return Err(DistanceError::Undefined);
    }
    Ok(Distance(Ratio::new(sa + sb - 2 * sab, union).expect("non-zero denominator")))
}

/// Distance between two occurrence sets; exactly one counted intersection
/// query.
pub fn dist(counter: &AccessCounter, a: &OccurrenceSet, b: &OccurrenceSet) -> Result<Distance, DistanceError> {
    let sab = counter.and_support(a, b)?;
    dist_from_counts(a.support(), b.support(), sab)
}

/// Distance between a subgraph (`parent_support`) and one of its supergraphs
/// (`child_support`), from supports alone.
pub fn dist_parent_child(parent_support: u32, child_support: u32) -> Result<Distance, DistanceError> {
    if parent_support == 0 {
        return Err(DistanceError::ParentSupportZero);
    }
    if child_support > parent_support {
        return Err(DistanceError::ChildExceedsParent { parent: parent_support, child: child_support });
    }
    let d = Ratio::new((parent_support - child_support) as u64, parent_support as u64).expect("non-zero");
    Ok(Distance(d))
}

/// [`pregroup_dist`] on dense lattice indices.
pub fn pregroup_dist_by_index(lattice: &Lattice, i: usize, j: usize) -> Distance {
    let (si, sj) = (lattice.pattern(i).support, lattice.pattern(j).support);
    let related = if i == j || lattice.is_proper_ancestor(i, j) {
        Some((si, sj))
    } else if lattice.is_proper_ancestor(j, i) {
        Some((sj, si))
    } else {
        None
    };
    match related {
        // Validated lattices guarantee 0 < child <= parent.
        Some((parent, child)) => dist_parent_child(parent, child).expect("lattice invariants"),
        None => Distance::ONE,
    }
}

/// Parent-child distance when one pattern is a (transitive) supergraph of the
/// other in the lattice, 1 otherwise.
pub fn pregroup_dist(lattice: &Lattice, g1: PatternId, g2: PatternId) -> Result<Distance, DistanceError> {
    let i = lattice.index_of(g1).ok_or(DistanceError::UnknownPattern(g1))?;
    let j = lattice.index_of(g2).ok_or(DistanceError::UnknownPattern(g2))?;
    Ok(pregroup_dist_by_index(lattice, i, j))
}

/// [`cluster_dist`] on dense lattice indices; clusters must be disjoint.
pub fn cluster_dist_by_index(lattice: &Lattice, c1: &[usize], c2: &[usize]) -> Option<Distance> {
    c1.iter()
        .flat_map(|&g| c2.iter().map(move |&h| pregroup_dist_by_index(lattice, g, h)))
        .filter(|&d| d != Distance::ONE)
        .max()
}

/// Complete linkage over related pairs: the largest `pregroup_dist` below 1
/// between members of the two clusters, or `None` (numerically −1) when no
/// member of one is related to a member of the other.
pub fn cluster_dist(lattice: &Lattice, c1: &[PatternId], c2: &[PatternId]) -> Result<Option<Distance>, DistanceError> {
    if c1.is_empty() || c2.is_empty() {
        return Err(DistanceError::EmptyCluster);
    }
    if let Some(&shared) = c1.iter().find(|id| c2.contains(id)) {
        return Err(DistanceError::OverlappingClusters(shared));
    }
    let resolve = |ids: &[PatternId]| {
        ids.iter()
            .map(|&id| lattice.index_of(id).ok_or(DistanceError::UnknownPattern(id)))
            .collect::<Result<alloc::vec::Vec<_>, _>>()
    };
    Ok(cluster_dist_by_index(lattice, &resolve(c1)?, &resolve(c2)?))
}

/// Distance between the representatives of two groups.
pub fn group_dist(lattice: &Lattice, a: &Group, b: &Group) -> Result<Distance, DistanceError> {
    let ia = lattice.index_of(a.representative).ok_or(DistanceError::UnknownPattern(a.representative))?;
    let ib = lattice.index_of(b.representative).ok_or(DistanceError::UnknownPattern(b.representative))?;
    let store = lattice.store();
    dist(store.counter(), store.set(ia)?, store.set(ib)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> OccurrenceSet {
        OccurrenceSet::from_bit_str(s).unwrap()
    }

    #[test]
    fn example_distance_is_five_sevenths() {
        let counter = AccessCounter::new();
        let d = dist(&counter, &bits("11100011"), &bits("01111000")).unwrap();
        assert_eq!(d, Distance::new(5, 7).unwrap());
        assert_eq!(counter.snapshot().intersections, 1);
    }

    #[test]
    fn identity_and_disjoint() {
        let counter = AccessCounter::new();
        let a = bits("1011001");
        assert_eq!(dist(&counter, &a, &a).unwrap(), Distance::ZERO);
        assert_eq!(dist(&counter, &a, &a.complement()).unwrap(), Distance::ONE);
        assert_eq!(dist(&counter, &bits("000"), &bits("000")), Err(DistanceError::Undefined));
    }

    #[test]
    fn parent_child_shortcut() {
        // 11110011 ⊇ 11110000
        assert_eq!(dist_parent_child(6, 4).unwrap(), Distance::new(1, 3).unwrap());
        let counter = AccessCounter::new();
        assert_eq!(dist(&counter, &bits("11110011"), &bits("11110000")).unwrap(), Distance::new(1, 3).unwrap());
        assert_eq!(dist_parent_child(7, 7).unwrap(), Distance::ZERO);
        assert_eq!(dist_parent_child(8, 4).unwrap(), Distance::new(1, 2).unwrap());
        assert_eq!(dist_parent_child(0, 0), Err(DistanceError::ParentSupportZero));
        assert!(dist_parent_child(3, 4).is_err());
    }

    #[test]
    fn sentinel_value() {
        assert_eq!(cluster_dist_value(None), -1.0);
        assert_eq!(cluster_dist_value(Some(Distance::new(1, 4).unwrap())), 0.25);
    }
}
