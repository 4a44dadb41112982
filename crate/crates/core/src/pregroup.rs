//! Lattice-aware agglomerative grouping of near-duplicate patterns.
//!
//! Every pattern starts as its own cluster. Repeatedly the pair of clusters
//! with the smallest non-negative [`cluster_dist`](crate::distance::cluster_dist)
//! is merged, as long as that distance does not exceed `maxdist`. Clusters
//! with no subgraph/supergraph relation between their members are never
//! merged. Ties go to the lexicographically smallest pair of minimum member
//! ids.
//!
//! Only related pairs carry a finite cluster distance, so the candidate set
//! is kept sparse: after a merge, the union's distance to a neighbor is the
//! maximum of the two former distances that exist, which is exactly the
//! complete linkage over the union.

use alloc::collections::BinaryHeap;
use core::cmp::Reverse;
use alloc::vec::Vec;
use core::fmt;

use crate::distance::{pregroup_dist_by_index, Distance};
use crate::lattice::{Lattice, PatternId};

/// One merge step: clusters with minimum ids `a < b` joined at `dist`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Merge {
    pub a: PatternId,
    pub b: PatternId,
    pub dist: Distance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupId(pub u32);

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Group {
    pub id: GroupId,
    /// Ascending pattern ids.
    pub members: Vec<PatternId>,
    /// A member with the fewest vertices, lowest id first.
    pub representative: PatternId,
    /// Merges that built this group, in execution order.
    pub trace: Vec<Merge>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grouping {
    pub maxdist: f64,
    /// Ordered by smallest member id; `groups[i].id == GroupId(i)`.
    pub groups: Vec<Group>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GroupingError {
    MaxdistOutOfRange(f64),
    UnknownPattern(PatternId),
    /// Pattern missing from every group, or present in several.
    NotAPartition(PatternId),
    EmptyGroup(GroupId),
    GroupIdMismatch { position: usize, id: GroupId },
    BadRepresentative(GroupId),
    MergeAboveMaxdist(GroupId),
}

impl fmt::Display for GroupingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupingError::MaxdistOutOfRange(d) => write!(f, "maxdist {d} outside [0, 1]"),
            GroupingError::UnknownPattern(id) => write!(f, "grouping references unknown pattern {id}"),
            GroupingError::NotAPartition(id) => write!(f, "pattern {id} is not in exactly one group"),
            GroupingError::EmptyGroup(id) => write!(f, "group {id} is empty"),
            GroupingError::GroupIdMismatch { position, id } => write!(f, "group at position {position} has id {id}"),
            GroupingError::BadRepresentative(id) => write!(f, "group {id} has an invalid representative"),
            GroupingError::MergeAboveMaxdist(id) => write!(f, "group {id} records a merge above maxdist"),
        }
    }
}

impl core::error::Error for GroupingError {}

pub fn check_maxdist(maxdist: f64) -> Result<(), GroupingError> {
    if (0.0..=1.0).contains(&maxdist) {
        Ok(())
    } else {
        Err(GroupingError::MaxdistOutOfRange(maxdist))
    }
}

/// Smallest-vertex-count member, lowest id on ties.
pub fn representative_of(lattice: &Lattice, members: &[usize]) -> usize {
    *members
        .iter()
        .min_by_key(|&&i| {
            let p = lattice.pattern(i);
            (p.graph.vertex_count(), p.id)
        })
        .expect("non-empty group")
}

fn within(d: Distance, maxdist: f64) -> bool {
    d.to_f64() <= maxdist
}

/// Distance, then the two clusters' min ids for tie-breaks, then their indices.
type Candidate = (Distance, PatternId, PatternId, usize, usize);

/// Groups the lattice's patterns; see the module docs.
pub fn pregroup(lattice: &Lattice, maxdist: f64) -> Result<Grouping, GroupingError> {
    check_maxdist(maxdist)?;
    let n = lattice.len();
    let id = |i: usize| lattice.pattern(i).id;

    // Clusters live at the index of their smallest-id member. `links[c]`
    // holds the finite distances from cluster `c` to its neighbors; heap
    // entries are checked against it when popped, so superseded ones are
    // simply skipped.
    let mut members: Vec<Vec<usize>> = (0..n).map(|i| alloc::vec![i]).collect();
    let mut traces: Vec<Vec<(usize, Merge)>> = (0..n).map(|_| Vec::new()).collect();
    let mut links: Vec<Vec<(usize, Distance)>> = (0..n).map(|_| Vec::new()).collect();
    let mut heap: BinaryHeap<Reverse<Candidate>> = BinaryHeap::new();
    let push = |heap: &mut BinaryHeap<_>, d: Distance, a: usize, b: usize| {
        let (lo, hi) = if id(a) < id(b) { (a, b) } else { (b, a) };
        heap.push(Reverse((d, id(lo), id(hi), lo, hi)));
    };

    for i in 0..n {
        for j in lattice.descendants(i) {
            let d = pregroup_dist_by_index(lattice, i, j);
            if d == Distance::ONE {
                continue;
            }
            links[i].push((j, d));
            links[j].push((i, d));
            push(&mut heap, d, i, j);
        }
    }

    let mut step = 0;
    while let Some(Reverse((d, _, _, lo, hi))) = heap.pop() {
        if !within(d, maxdist) {
            break;
        }
        if !links[lo].iter().any(|&(o, dd)| o == hi && dd == d) {
            continue;
        }
        let lo_links = core::mem::take(&mut links[lo]);
        let hi_links = core::mem::take(&mut links[hi]);
        let mut merged: Vec<(usize, Distance)> = Vec::with_capacity(lo_links.len() + hi_links.len());
        for &(other, dd) in lo_links.iter().chain(&hi_links) {
            if other == lo || other == hi {
                continue;
            }
            match merged.iter_mut().find(|(o, _)| *o == other) {
                Some((_, cur)) => *cur = (*cur).max(dd),
                None => merged.push((other, dd)),
            }
        }
        for &(other, dd) in &merged {
            let l = &mut links[other];
            l.retain(|&(o, _)| o != lo && o != hi);
            l.push((lo, dd));
            push(&mut heap, dd, lo, other);
        }
        links[lo] = merged;

        let absorbed = core::mem::take(&mut members[hi]);
        members[lo].extend(absorbed);
        let absorbed = core::mem::take(&mut traces[hi]);
        traces[lo].extend(absorbed);
        traces[lo].push((step, Merge { a: id(lo), b: id(hi), dist: d }));
        step += 1;
    }

    let mut live: Vec<usize> = (0..n).filter(|&c| !members[c].is_empty()).collect();
    live.sort_by_key(|&c| id(c));
    let groups = live
        .into_iter()
        .enumerate()
        .map(|(g, c)| {
            let mut m = core::mem::take(&mut members[c]);
            let mut t = core::mem::take(&mut traces[c]);
            m.sort_by_key(|&i| id(i));
            t.sort_by_key(|&(s, _)| s);
            Group {
                id: GroupId(g as u32),
                representative: id(representative_of(lattice, &m)),
                members: m.into_iter().map(id).collect(),
                trace: t.into_iter().map(|(_, m)| m).collect(),
            }
        })
        .collect();
    Ok(Grouping { maxdist, groups })
}

/// Every pattern as its own group, in id order.
pub fn singleton_grouping(lattice: &Lattice) -> Grouping {
    let mut ids: Vec<PatternId> = lattice.patterns().iter().map(|p| p.id).collect();
    ids.sort();
    let groups = ids
        .into_iter()
        .enumerate()
        .map(|(g, id)| Group { id: GroupId(g as u32), members: alloc::vec![id], representative: id, trace: Vec::new() })
        .collect();
    Grouping { maxdist: 0.0, groups }
}

/// Unordered pair counts over patterns and over groups.
pub fn access_savings(lattice: &Lattice, grouping: &Grouping) -> (u64, u64) {
    (pair_count(lattice.len() as u64), pair_count(grouping.groups.len() as u64))
}

pub fn pair_count(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

impl Grouping {
    /// Checks that the grouping partitions `lattice` and that its recorded
    /// representatives and merges are consistent.
    pub fn validate(&self, lattice: &Lattice) -> Result<(), GroupingError> {
        check_maxdist(self.maxdist)?;
        let mut seen = alloc::vec![false; lattice.len()];
        for (pos, g) in self.groups.iter().enumerate() {
            if g.id != GroupId(pos as u32) {
                return Err(GroupingError::GroupIdMismatch { position: pos, id: g.id });
            }
            if g.members.is_empty() {
                return Err(GroupingError::EmptyGroup(g.id));
            }
            let mut idx = Vec::with_capacity(g.members.len());
            for &m in &g.members {
                let i = lattice.index_of(m).ok_or(GroupingError::UnknownPattern(m))?;
                if core::mem::replace(&mut seen[i], true) {
                    return Err(GroupingError::NotAPartition(m));
                }
                idx.push(i);
            }
            if !g.members.contains(&g.representative)
                || lattice.pattern(representative_of(lattice, &idx)).graph.vertex_count()
                    != lattice.get(g.representative).map_or(usize::MAX, |p| p.graph.vertex_count())
            {
                return Err(GroupingError::BadRepresentative(g.id));
            }
            if g.trace.iter().any(|m| !within(m.dist, self.maxdist)) {
                return Err(GroupingError::MergeAboveMaxdist(g.id));
            }
        }
        if let Some(i) = seen.iter().position(|&s| !s) {
            return Err(GroupingError::NotAPartition(lattice.pattern(i).id));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Group containing `pattern`.
    pub fn group_of(&self, pattern: PatternId) -> Option<&Group> {
        self.groups.iter().find(|g| g.members.binary_search(&pattern).is_ok())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, LabeledGraph};
    use crate::lattice::PatternRecord;
    use crate::occ::OccurrenceSet;
    use alloc::vec;

    fn path(n: u32, label: u32) -> LabeledGraph {
        LabeledGraph::new(vec![label; n as usize], (1..n).map(|i| Edge::new(i - 1, i, 0)).collect()).unwrap()
    }

    fn rec(id: u32, g: LabeledGraph, bits: &str) -> PatternRecord {
        let occurrences = OccurrenceSet::from_bit_str(bits).unwrap();
        PatternRecord { id: PatternId(id), graph: g, support: occurrences.support(), occurrences }
    }

    /// root(6) → child(4) → grandchild(3).
    fn chain() -> Lattice {
        let recs = vec![rec(0, path(1, 0), "111111"), rec(1, path(2, 0), "111100"), rec(2, path(3, 0), "111000")];
        Lattice::new(1, 6, recs, vec![(PatternId(0), PatternId(1)), (PatternId(1), PatternId(2))]).unwrap()
    }

    #[test]
    fn chain_collapses_at_maxdist_one() {
        let l = chain();
        let g = pregroup(&l, 1.0).unwrap();
        assert_eq!(g.groups.len(), 1);
        let group = &g.groups[0];
        assert_eq!(group.members, vec![PatternId(0), PatternId(1), PatternId(2)]);
        assert_eq!(group.representative, PatternId(0));
        // child–grandchild (1/4) first, then max(1/3, 1/2) for the root.
        let dists: Vec<_> = group.trace.iter().map(|m| m.dist).collect();
        assert_eq!(dists, vec![Distance::new(1, 4).unwrap(), Distance::new(1, 2).unwrap()]);
        g.validate(&l).unwrap();
    }

    #[test]
    fn threshold_between_steps() {
        let l = chain();
        let g = pregroup(&l, 0.4).unwrap();
        let sizes: Vec<_> = g.groups.iter().map(|g| g.members.len()).collect();
        assert_eq!(sizes, vec![1, 2]);
        assert_eq!(access_savings(&l, &g), (3, 1));
    }

    #[test]
    fn unrelated_patterns_never_merge() {
        let recs = vec![rec(0, path(1, 0), "1100"), rec(1, path(1, 1), "1100")];
        let l = Lattice::new(1, 4, recs, vec![]).unwrap();
        let g = pregroup(&l, 1.0).unwrap();
        assert_eq!(g.groups.len(), 2);
        assert_eq!(g, {
            let mut s = singleton_grouping(&l);
            s.maxdist = 1.0;
            s
        });
    }

    #[test]
    fn maxdist_range() {
        let l = chain();
        assert_eq!(pregroup(&l, 1.5), Err(GroupingError::MaxdistOutOfRange(1.5)));
        assert!(pregroup(&l, -0.1).is_err());
        assert!(pregroup(&l, f64::NAN).is_err());
    }

    #[test]
    fn validation_catches_broken_groupings() {
        let l = chain();
        let mut g = pregroup(&l, 0.4).unwrap();
        g.groups[1].members.push(PatternId(7));
        assert_eq!(g.validate(&l), Err(GroupingError::UnknownPattern(PatternId(7))));
        let mut g = pregroup(&l, 0.4).unwrap();
        g.groups.pop();
        assert!(matches!(g.validate(&l), Err(GroupingError::NotAPartition(_))));
        let mut g = pregroup(&l, 0.4).unwrap();
        g.groups[1].representative = PatternId(2);
        assert_eq!(g.validate(&l), Err(GroupingError::BadRepresentative(GroupId(1))));
    }

    #[test]
    fn savings_edge_cases() {
        let l = chain();
        let none = singleton_grouping(&l);
        assert_eq!(access_savings(&l, &none), (3, 3));
        assert_eq!(pair_count(1229), 754_606);
        assert_eq!(pair_count(1), 0);
        assert_eq!(pair_count(0), 0);
    }
}
