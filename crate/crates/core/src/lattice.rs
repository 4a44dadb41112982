//! The pattern lattice: frequent patterns, their supports and occurrence
//! sets, and parent → child one-edge-extension edges.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{canonical_code, subgraph_isomorphic, GraphError, LabeledGraph};
use crate::occ::{OccError, OccurrenceSet, OccurrenceStore};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternId(pub u32);

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub id: PatternId,
    pub graph: LabeledGraph,
    pub support: u32,
}

/// A pattern as supplied to [`Lattice::new`], carrying its occurrence set.
#[derive(Debug, Clone)]
pub struct PatternRecord {
    pub id: PatternId,
    pub graph: LabeledGraph,
    pub support: u32,
    pub occurrences: OccurrenceSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    ZeroMinsupp,
    DuplicateId(PatternId),
    DuplicatePattern { first: PatternId, second: PatternId },
    InvalidPattern { id: PatternId, source: GraphError },
    SupportMismatch { id: PatternId, support: u32, occurrences: u32 },
    BelowMinsupp { id: PatternId, support: u32, minsupp: u32 },
    Occurrences { id: PatternId, source: OccError },
    UnknownEdgeEndpoint(PatternId),
    DuplicateEdge { parent: PatternId, child: PatternId },
    SizeDelta { parent: PatternId, child: PatternId },
    NotSubgraph { parent: PatternId, child: PatternId },
    AntiMonotonicity { parent: PatternId, child: PatternId },
    OccurrenceNotSubset { parent: PatternId, child: PatternId },
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use LatticeError::*;
        match self {
            ZeroMinsupp => f.write_str("minsupp must be at least 1"),
            DuplicateId(id) => write!(f, "duplicate pattern id {id}"),
            DuplicatePattern { first, second } => write!(f, "patterns {first} and {second} are isomorphic"),
            InvalidPattern { id, source } => write!(f, "pattern {id}: {source}"),
            SupportMismatch { id, support, occurrences } => {
                write!(f, "pattern {id}: support {support} but {occurrences} occurrences")
            }
            BelowMinsupp { id, support, minsupp } => {
                write!(f, "pattern {id}: support {support} below minsupp {minsupp}")
            }
            Occurrences { id, source } => write!(f, "pattern {id}: {source}"),
            UnknownEdgeEndpoint(id) => write!(f, "edge references unknown pattern {id}"),
            DuplicateEdge { parent, child } => write!(f, "edge {parent}->{child} listed twice"),
            SizeDelta { parent, child } => {
                write!(f, "edge {parent}->{child}: child must have exactly one more edge than parent")
            }
            NotSubgraph { parent, child } => write!(f, "edge {parent}->{child}: parent is not a subgraph of child"),
            AntiMonotonicity { parent, child } => {
                write!(f, "edge {parent}->{child}: child support exceeds parent support")
            }
            OccurrenceNotSubset { parent, child } => {
                write!(f, "edge {parent}->{child}: child occurs outside the parent's transactions")
            }
        }
    }
}

impl core::error::Error for LatticeError {}

/// Fixed-size bitset over pattern indices.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
}

/// Validated pattern lattice. Patterns are addressed by a dense index
/// (`0..len()`, also the occurrence store slot) or by their [`PatternId`].
#[derive(Debug, Clone)]
pub struct Lattice {
    minsupp: u32,
    patterns: Vec<Pattern>,
    edges: Vec<(PatternId, PatternId)>,
    store: OccurrenceStore,
    index: BTreeMap<PatternId, usize>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    /// Proper descendants (transitive children) per pattern.
    descendants: Vec<BitSet>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.minsupp == other.minsupp
            && self.patterns == other.patterns
            && self.edges == other.edges
            && self.store == other.store
    }
}

impl Lattice {
    /// Validates and assembles a lattice. Every invariant breach is reported;
    /// nothing is repaired.
    pub fn new(
        minsupp: u32,
        universe: u32,
        records: Vec<PatternRecord>,
        edges: Vec<(PatternId, PatternId)>,
    ) -> Result<Self, LatticeError> {
        if minsupp == 0 {
            return Err(LatticeError::ZeroMinsupp);
        }
        let mut index = BTreeMap::new();
        let mut codes = BTreeMap::new();
        let mut patterns = Vec::with_capacity(records.len());
        let mut sets = Vec::with_capacity(records.len());
        for (i, r) in records.into_iter().enumerate() {
            let id = r.id;
            if index.insert(id, i).is_some() {
                return Err(LatticeError::DuplicateId(id));
            }
            let code = canonical_code(&r.graph).map_err(|source| LatticeError::InvalidPattern { id, source })?;
            if let Some(first) = codes.insert(code, id) {
                return Err(LatticeError::DuplicatePattern { first, second: id });
            }
            if r.occurrences.universe() != universe {
                let source = OccError::LengthMismatch { left: universe, right: r.occurrences.universe() };
                return Err(LatticeError::Occurrences { id, source });
            }
            if r.occurrences.support() != r.support {
                return Err(LatticeError::SupportMismatch { id, support: r.support, occurrences: r.occurrences.support() });
            }
            if r.support < minsupp {
                return Err(LatticeError::BelowMinsupp { id, support: r.support, minsupp });
            }
            patterns.push(Pattern { id, graph: r.graph, support: r.support });
            sets.push(r.occurrences);
        }
        let store = OccurrenceStore::new(universe, sets).expect("universes checked above");

        let n = patterns.len();
        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        for &(parent, child) in &edges {
            let p = *index.get(&parent).ok_or(LatticeError::UnknownEdgeEndpoint(parent))?;
            let c = *index.get(&child).ok_or(LatticeError::UnknownEdgeEndpoint(child))?;
            if children[p].contains(&c) {
                return Err(LatticeError::DuplicateEdge { parent, child });
            }
            let (pg, cg) = (&patterns[p].graph, &patterns[c].graph);
            if cg.edge_count() != pg.edge_count() + 1 {
                return Err(LatticeError::SizeDelta { parent, child });
            }
            if patterns[c].support > patterns[p].support {
                return Err(LatticeError::AntiMonotonicity { parent, child });
            }
            let subset = store.set(c).and_then(|cs| cs.is_subset_of(store.set(p)?));
            if !subset.map_err(|source| LatticeError::Occurrences { id: child, source })? {
                return Err(LatticeError::OccurrenceNotSubset { parent, child });
            }
            if !subgraph_isomorphic(pg, cg).map_err(|source| LatticeError::InvalidPattern { id: parent, source })? {
                return Err(LatticeError::NotSubgraph { parent, child });
            }
            parents[c].push(p);
            children[p].push(c);
        }

        // Children always have more edges, so visiting by decreasing edge
        // count finalizes every child before its parents.
        let mut by_size: Vec<usize> = (0..n).collect();
        by_size.sort_by_key(|&i| core::cmp::Reverse(patterns[i].graph.edge_count()));
        let mut descendants = vec![BitSet::new(n); n];
        for &p in &by_size {
            let mut acc = BitSet::new(n);
            for &c in &children[p] {
                acc.insert(c);
                acc.union_with(&descendants[c]);
            }
            descendants[p] = acc;
        }

        Ok(Lattice { minsupp, patterns, edges, store, index, parents, children, descendants })
    }

    pub fn minsupp(&self) -> u32 {
        self.minsupp
    }

    pub fn universe(&self) -> u32 {
        self.store.universe()
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn pattern(&self, idx: usize) -> &Pattern {
        &self.patterns[idx]
    }

    pub fn edges(&self) -> &[(PatternId, PatternId)] {
        &self.edges
    }

    pub fn store(&self) -> &OccurrenceStore {
        &self.store
    }

    pub fn occurrences(&self, idx: usize) -> &OccurrenceSet {
        &self.store.sets()[idx]
    }

    pub fn index_of(&self, id: PatternId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn get(&self, id: PatternId) -> Option<&Pattern> {
        self.index_of(id).map(|i| &self.patterns[i])
    }

    pub fn parents(&self, idx: usize) -> &[usize] {
        &self.parents[idx]
    }

    pub fn children(&self, idx: usize) -> &[usize] {
        &self.children[idx]
    }

    /// True iff `descendant` is reachable from `ancestor` along one or more
    /// lattice edges.
    pub fn is_proper_ancestor(&self, ancestor: usize, descendant: usize) -> bool {
        self.descendants[ancestor].contains(descendant)
    }

    /// All proper descendants of `idx`, ascending by index.
    pub fn descendants(&self, idx: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| self.descendants[idx].contains(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn path(n: u32) -> LabeledGraph {
        LabeledGraph::new(vec![0; n as usize], (1..n).map(|i| Edge::new(i - 1, i, 0)).collect()).unwrap()
    }

    fn rec(id: u32, g: LabeledGraph, bits: &str) -> PatternRecord {
        let occurrences = OccurrenceSet::from_bit_str(bits).unwrap();
        PatternRecord { id: PatternId(id), graph: g, support: occurrences.support(), occurrences }
    }

    fn chain() -> (Vec<PatternRecord>, Vec<(PatternId, PatternId)>) {
        let recs = vec![rec(0, path(1), "11111100"), rec(1, path(2), "11110000"), rec(2, path(3), "11100000")];
        (recs, vec![(PatternId(0), PatternId(1)), (PatternId(1), PatternId(2))])
    }

    #[test]
    fn reachability_is_transitive() {
        let (recs, edges) = chain();
        let l = Lattice::new(1, 8, recs, edges).unwrap();
        assert!(l.is_proper_ancestor(0, 2));
        assert!(l.is_proper_ancestor(0, 1));
        assert!(!l.is_proper_ancestor(2, 0));
        assert!(!l.is_proper_ancestor(1, 1));
        assert_eq!(l.descendants(0).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(l.parents(2), &[1]);
    }

    #[test]
    fn validation_errors() {
        let (mut recs, edges) = chain();
        recs[2].occurrences = OccurrenceSet::from_bit_str("11111110").unwrap();
        recs[2].support = 7;
        assert_eq!(
            Lattice::new(1, 8, recs, edges.clone()).unwrap_err(),
            LatticeError::AntiMonotonicity { parent: PatternId(1), child: PatternId(2) }
        );

        let (mut recs, _) = chain();
        recs[1].id = PatternId(0);
        assert_eq!(Lattice::new(1, 8, recs, vec![]).unwrap_err(), LatticeError::DuplicateId(PatternId(0)));

        let (recs, _) = chain();
        assert_eq!(
            Lattice::new(1, 8, recs, vec![(PatternId(0), PatternId(2))]).unwrap_err(),
            LatticeError::SizeDelta { parent: PatternId(0), child: PatternId(2) }
        );

        let (recs, edges) = chain();
        assert!(matches!(Lattice::new(5, 8, recs, edges).unwrap_err(), LatticeError::BelowMinsupp { .. }));

        let (mut recs, edges) = chain();
        recs[1].occurrences = OccurrenceSet::from_bit_str("00001111").unwrap();
        assert_eq!(
            Lattice::new(1, 8, recs, edges).unwrap_err(),
            LatticeError::OccurrenceNotSubset { parent: PatternId(0), child: PatternId(1) }
        );

        let (mut recs, edges) = chain();
        recs[2].graph = LabeledGraph::new(vec![0, 1, 0], vec![Edge::new(0, 1, 0), Edge::new(1, 2, 0)]).unwrap();
        assert_eq!(
            Lattice::new(1, 8, recs, edges).unwrap_err(),
            LatticeError::NotSubgraph { parent: PatternId(1), child: PatternId(2) }
        );

        let (mut recs, _) = chain();
        recs[2].graph = path(2);
        assert!(matches!(Lattice::new(1, 8, recs, vec![]).unwrap_err(), LatticeError::DuplicatePattern { .. }));

        let (recs, _) = chain();
        assert_eq!(
            Lattice::new(1, 8, recs, vec![(PatternId(0), PatternId(9))]).unwrap_err(),
            LatticeError::UnknownEdgeEndpoint(PatternId(9))
        );
        assert_eq!(Lattice::new(0, 8, vec![], vec![]).unwrap_err(), LatticeError::ZeroMinsupp);
    }
}
