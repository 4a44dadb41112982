//! Level-wise frequent connected subgraph mining.
//!
//! Single-vertex patterns form the roots. Each level extends every frequent
//! pattern by one edge at each of its embeddings in the transactions where it
//! occurs; extensions are deduplicated by canonical code and kept when they
//! occur in at least `minsupp` transactions. Lattice edges link every
//! pattern to all of its connected one-edge deletions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::ControlFlow;

use crate::graph::{canonical_code, for_each_embedding, CanonicalCode, Label, LabeledGraph};
use crate::lattice::{Lattice, LatticeError, PatternId, PatternRecord};
use crate::occ::OccurrenceSet;

/// Ordered transactions plus optional display names for labels.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GraphDatabase {
    pub transactions: Vec<LabeledGraph>,
    pub vertex_labels: BTreeMap<Label, String>,
    pub edge_labels: BTreeMap<Label, String>,
}

impl GraphDatabase {
    pub fn new(transactions: Vec<LabeledGraph>) -> Self {
        GraphDatabase { transactions, ..Default::default() }
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MineError {
    ZeroMinsupp,
    EmptyDatabase,
    Lattice(LatticeError),
}

impl fmt::Display for MineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MineError::ZeroMinsupp => f.write_str("minsupp must be at least 1"),
            MineError::EmptyDatabase => f.write_str("graph database is empty"),
            MineError::Lattice(e) => write!(f, "mined lattice failed validation: {e}"),
        }
    }
}

impl core::error::Error for MineError {}

/// Where a one-edge extension attaches, in parent-pattern coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Extension {
    /// Edge between two existing pattern vertices.
    Close { u: u32, v: u32, label: Label },
    /// Edge from `u` to a new vertex labeled `vertex_label`.
    Grow { u: u32, label: Label, vertex_label: Label },
}

struct Candidate {
    graph: LabeledGraph,
    transactions: BTreeSet<u32>,
}

/// Mines all connected subgraphs occurring in at least `minsupp`
/// transactions and links them into a lattice. Pattern ids follow
/// `(edge count, canonical code)` order.
pub fn mine(db: &GraphDatabase, minsupp: u32) -> Result<Lattice, MineError> {
    if minsupp == 0 {
        return Err(MineError::ZeroMinsupp);
    }
    if db.is_empty() {
        return Err(MineError::EmptyDatabase);
    }
    let universe = db.len() as u32;

    let mut frequent: BTreeMap<CanonicalCode, Candidate> = BTreeMap::new();
    let mut roots: BTreeMap<Label, BTreeSet<u32>> = BTreeMap::new();
    for (t, g) in db.transactions.iter().enumerate() {
        for &l in g.labels() {
            roots.entry(l).or_default().insert(t as u32);
        }
    }
    let mut level: Vec<CanonicalCode> = Vec::new();
    for (label, transactions) in roots {
        if transactions.len() as u32 >= minsupp {
            let graph = LabeledGraph::single_vertex(label);
            let code = canonical_code(&graph).expect("single vertex");
            level.push(code.clone());
            frequent.insert(code, Candidate { graph, transactions });
        }
    }

    while !level.is_empty() {
        let mut found: BTreeMap<CanonicalCode, Candidate> = BTreeMap::new();
        for code in &level {
            let parent = &frequent[code];
            extend(db, &parent.graph, &parent.transactions, &mut found);
        }
        level.clear();
        for (code, cand) in found {
            if cand.transactions.len() as u32 >= minsupp && !frequent.contains_key(&code) {
                level.push(code.clone());
                frequent.insert(code, cand);
            }
        }
    }

    let mut ordered: Vec<(CanonicalCode, Candidate)> = frequent.into_iter().collect();
    ordered.sort_by(|(ca, a), (cb, b)| (a.graph.edge_count(), ca).cmp(&(b.graph.edge_count(), cb)));
    let ids: BTreeMap<&CanonicalCode, PatternId> =
        ordered.iter().enumerate().map(|(i, (code, _))| (code, PatternId(i as u32))).collect();

    let mut edges = BTreeSet::new();
    for (i, (_, cand)) in ordered.iter().enumerate() {
        for sub in cand.graph.one_edge_deletions() {
            let code = canonical_code(&sub).expect("deletions stay connected");
            // Every connected subgraph of a frequent pattern is frequent.
            let parent = ids[&code];
            edges.insert((parent, PatternId(i as u32)));
        }
    }

    let records = ordered
        .iter()
        .enumerate()
        .map(|(i, (_, cand))| {
            let occurrences =
                OccurrenceSet::from_members(universe, cand.transactions.iter().copied()).expect("ascending in range");
            PatternRecord {
                id: PatternId(i as u32),
                graph: cand.graph.clone(),
                support: occurrences.support(),
                occurrences,
            }
        })
        .collect();
    Lattice::new(minsupp, universe, records, edges.into_iter().collect()).map_err(MineError::Lattice)
}

/// Adds every one-edge extension of `pattern` found in its supporting
/// transactions to `found`.
fn extend(
    db: &GraphDatabase,
    pattern: &LabeledGraph,
    transactions: &BTreeSet<u32>,
    found: &mut BTreeMap<CanonicalCode, Candidate>,
) {
    let mut codes: BTreeMap<Extension, CanonicalCode> = BTreeMap::new();
    for &t in transactions {
        let host = &db.transactions[t as usize];
        let mut here: BTreeSet<Extension> = BTreeSet::new();
        for_each_embedding(pattern, host, |map| {
            collect_extensions(pattern, host, map, &mut here);
            ControlFlow::Continue(())
        })
        .expect("frequent patterns are connected");
        for ext in here {
            let code = codes
                .entry(ext)
                .or_insert_with(|| {
                    let child = apply(pattern, ext);
                    let code = canonical_code(&child).expect("extension keeps the pattern connected");
                    found.entry(code.clone()).or_insert_with(|| Candidate { graph: child, transactions: BTreeSet::new() });
                    code
                })
                .clone();
            found.get_mut(&code).expect("inserted above").transactions.insert(t);
        }
    }
}

fn collect_extensions(pattern: &LabeledGraph, host: &LabeledGraph, map: &[usize], out: &mut BTreeSet<Extension>) {
    let mut image = alloc::vec![u32::MAX; host.vertex_count()];
    for (pv, &hv) in map.iter().enumerate() {
        image[hv] = pv as u32;
    }
    for (pv, &hv) in map.iter().enumerate() {
        for (hw, label) in host.neighbors(hv) {
            match image[hw] {
                u32::MAX => {
                    out.insert(Extension::Grow { u: pv as u32, label, vertex_label: host.label(hw) });
                }
                pw if (pv as u32) < pw && pattern.edge_label(pv, pw as usize).is_none() => {
                    out.insert(Extension::Close { u: pv as u32, v: pw, label });
                }
                _ => {}
            }
        }
    }
}

fn apply(pattern: &LabeledGraph, ext: Extension) -> LabeledGraph {
    let result = match ext {
        Extension::Close { u, v, label } => pattern.extended(u, v, label, None),
        Extension::Grow { u, label, vertex_label } => {
            pattern.extended(u, pattern.vertex_count() as u32, label, Some(vertex_label))
        }
    };
    result.expect("extension found in a simple host graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use alloc::vec;

    const C: Label = 6;
    const O: Label = 8;

    fn edge(a: Label, b: Label) -> LabeledGraph {
        LabeledGraph::new(vec![a, b], vec![Edge::new(0, 1, 1)]).unwrap()
    }

    #[test]
    fn tiny_database() {
        let db = GraphDatabase::new(vec![edge(C, C), edge(C, C), edge(C, O)]);
        let l = mine(&db, 2).unwrap();
        let got: Vec<_> = l.patterns().iter().map(|p| (p.graph.clone(), p.support)).collect();
        assert_eq!(got, vec![(LabeledGraph::single_vertex(C), 3), (edge(C, C), 2)]);
        assert_eq!(l.edges(), &[(PatternId(0), PatternId(1))]);
        assert_eq!(l.occurrences(1).to_bit_string(), "110");
    }

    #[test]
    fn errors() {
        let db = GraphDatabase::new(vec![edge(C, C)]);
        assert_eq!(mine(&db, 0).unwrap_err(), MineError::ZeroMinsupp);
        assert_eq!(mine(&GraphDatabase::default(), 1).unwrap_err(), MineError::EmptyDatabase);
    }

    #[test]
    fn triangle_all_subgraphs() {
        let tri = LabeledGraph::new(vec![C, C, O], vec![Edge::new(0, 1, 1), Edge::new(1, 2, 1), Edge::new(2, 0, 1)])
            .unwrap();
        let l = mine(&GraphDatabase::new(vec![tri]), 1).unwrap();
        // C, O, C-C, C-O, C-C-O, C-O-C, triangle
        assert_eq!(l.len(), 7);
        assert!(l.patterns().iter().all(|p| p.support == 1));
        let top = l.len() - 1;
        assert_eq!(l.pattern(top).graph.edge_count(), 3);
        assert_eq!(l.parents(top).len(), 2);
    }
}
