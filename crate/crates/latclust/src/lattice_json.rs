//! Lattice JSON:
//! `{minsupp, patterns:[{id, vertices, edges:[[u,v,label]], support, occurrences}], edges:[[parent,child]]}`
//! with occurrences as the run-length string (`"0,3,3,2"` for 11100011).

use latclust_core::{Edge, LabeledGraph, Lattice, PatternId, PatternRecord};
use latclust_core::occ::OccurrenceSet;
use serde::{Deserialize, Serialize};

use crate::FormatError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternDoc {
    pub id: u32,
    pub vertices: Vec<u32>,
    pub edges: Vec<[u32; 3]>,
    pub support: u32,
    pub occurrences: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub minsupp: u32,
    pub patterns: Vec<PatternDoc>,
    pub edges: Vec<[u32; 2]>,
}

pub fn graph_edges(g: &LabeledGraph) -> Vec<[u32; 3]> {
    g.edges().iter().map(|e| [e.u, e.v, e.label]).collect()
}

impl LatticeDoc {
    pub fn from_lattice(l: &Lattice) -> Self {
        let patterns = l
            .patterns()
            .iter()
            .enumerate()
            .map(|(i, p)| PatternDoc {
                id: p.id.0,
                vertices: p.graph.labels().to_vec(),
                edges: graph_edges(&p.graph),
                support: p.support,
                occurrences: l.occurrences(i).to_rle_string(),
            })
            .collect();
        let edges = l.edges().iter().map(|&(p, c)| [p.0, c.0]).collect();
        LatticeDoc { minsupp: l.minsupp(), patterns, edges }
    }

    /// Validates every lattice invariant; nothing is repaired.
    pub fn into_lattice(self) -> Result<Lattice, FormatError> {
        let mut universe = None;
        let mut records = Vec::with_capacity(self.patterns.len());
        for p in self.patterns {
            let id = PatternId(p.id);
            let occurrences = OccurrenceSet::parse_rle(&p.occurrences)
                .map_err(|e| FormatError::Invalid(format!("pattern {id}: occurrences: {e}")))?;
            let universe = *universe.get_or_insert(occurrences.universe());
            if occurrences.universe() != universe {
                return Err(FormatError::Invalid(format!(
                    "pattern {id}: occurrences cover {} transactions, expected {universe}",
                    occurrences.universe()
                )));
            }
            let edges = p.edges.iter().map(|&[u, v, l]| Edge::new(u, v, l)).collect();
            let graph = LabeledGraph::new(p.vertices, edges)
                .map_err(|e| FormatError::Invalid(format!("pattern {id}: {e}")))?;
            records.push(PatternRecord { id, graph, support: p.support, occurrences });
        }
        let edges = self.edges.iter().map(|&[p, c]| (PatternId(p), PatternId(c))).collect();
        Ok(Lattice::new(self.minsupp, universe.unwrap_or(0), records, edges)?)
    }
}

pub fn to_string(l: &Lattice) -> String {
    crate::to_json(&LatticeDoc::from_lattice(l))
}

pub fn parse(text: &str) -> Result<Lattice, FormatError> {
    serde_json::from_str::<LatticeDoc>(text)?.into_lattice()
}

#[cfg(test)]
mod tests {
    use super::*;
    use latclust_core::LatticeError;

    const CHAIN: &str = r#"{
      "minsupp": 2,
      "patterns": [
        {"id": 0, "vertices": [6], "edges": [], "support": 6, "occurrences": "0,4,2,2"},
        {"id": 1, "vertices": [6, 8], "edges": [[0, 1, 2]], "support": 4, "occurrences": "0,4,4"}
      ],
      "edges": [[0, 1]]
    }"#;

    #[test]
    fn round_trip() {
        let l = parse(CHAIN).unwrap();
        assert_eq!(l.universe(), 8);
        assert_eq!(l.occurrences(0).to_bit_string(), "11110011");
        let again = parse(&to_string(&l)).unwrap();
        assert_eq!(again, l);
        assert_eq!(to_string(&again), to_string(&l));
    }

    #[test]
    fn rejects_invariant_breaches() {
        let raised = CHAIN.replace(r#""support": 4, "occurrences": "0,4,4""#, r#""support": 7, "occurrences": "0,7,1""#);
        assert!(matches!(parse(&raised), Err(FormatError::Lattice(LatticeError::AntiMonotonicity { .. }))));
        let dup = CHAIN.replace(r#""id": 1"#, r#""id": 0"#);
        assert!(matches!(parse(&dup), Err(FormatError::Lattice(LatticeError::DuplicateId(_)))));
        let no_delta = CHAIN.replace(r#""edges": [[0, 1]]"#, r#""edges": [[1, 0]]"#);
        assert!(matches!(parse(&no_delta), Err(FormatError::Lattice(LatticeError::SizeDelta { .. }))));
        let short = CHAIN.replace("0,4,4", "0,4,3");
        assert!(matches!(parse(&short), Err(FormatError::Invalid(_))));
        assert!(matches!(parse("{\"minsupp\": 1"), Err(FormatError::Json(_))));
        assert!(matches!(parse(&CHAIN.replace("\"minsupp\"", "\"extra\": 1, \"minsupp\"")), Err(FormatError::Json(_))));
    }
}
