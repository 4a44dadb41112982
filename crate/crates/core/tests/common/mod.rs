//! Test-only oracles, independent of the library's matching and canonical
//! code machinery.
#![allow(dead_code)]

use latclust_core::graph::subgraph_isomorphic;
use latclust_core::{Edge, Label, LabeledGraph, Lattice};
use proptest::prelude::*;

pub fn graph(labels: &[Label], edges: &[(u32, u32, Label)]) -> LabeledGraph {
    LabeledGraph::new(labels.to_vec(), edges.iter().map(|&(u, v, l)| Edge::new(u, v, l)).collect()).unwrap()
}

fn edge_label(g: &LabeledGraph, u: usize, v: usize) -> Option<Label> {
    g.edges()
        .iter()
        .find(|e| (e.u as usize, e.v as usize) == (u, v) || (e.u as usize, e.v as usize) == (v, u))
        .map(|e| e.label)
}

/// Tries every injective map of pattern vertices into host vertices.
pub fn brute_force_embeds(pattern: &LabeledGraph, host: &LabeledGraph) -> bool {
    fn go(p: &LabeledGraph, h: &LabeledGraph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = map.len();
        if k == p.vertex_count() {
            return p.edges().iter().all(|e| edge_label(h, map[e.u as usize], map[e.v as usize]) == Some(e.label));
        }
        for hv in 0..h.vertex_count() {
            if !used[hv] && h.label(hv) == p.label(k) {
                used[hv] = true;
                map.push(hv);
                if go(p, h, map, used) {
                    return true;
                }
                map.pop();
                used[hv] = false;
            }
        }
        false
    }
    go(pattern, host, &mut Vec::new(), &mut vec![false; host.vertex_count()])
}

pub fn brute_force_isomorphic(a: &LabeledGraph, b: &LabeledGraph) -> bool {
    a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() && brute_force_embeds(a, b)
}

/// All connected subgraphs of `g` (single vertices and connected edge
/// subsets), with vertices renumbered.
pub fn connected_subgraphs(g: &LabeledGraph) -> Vec<LabeledGraph> {
    let mut out: Vec<LabeledGraph> = g.labels().iter().map(|&l| LabeledGraph::single_vertex(l)).collect();
    let m = g.edge_count();
    assert!(m <= 16, "oracle limited to small graphs");
    for mask in 1u32..(1 << m) {
        let chosen: Vec<Edge> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| g.edges()[i]).collect();
        let mut verts: Vec<u32> = chosen.iter().flat_map(|e| [e.u, e.v]).collect();
        verts.sort();
        verts.dedup();
        let pos = |v: u32| verts.iter().position(|&x| x == v).unwrap() as u32;
        let labels = verts.iter().map(|&v| g.label(v as usize)).collect();
        let edges = chosen.iter().map(|e| Edge::new(pos(e.u), pos(e.v), e.label)).collect();
        let sub = LabeledGraph::new(labels, edges).unwrap();
        if sub.is_connected() {
            out.push(sub);
        }
    }
    out
}

/// Isomorphism classes of connected subgraphs over a database, with their
/// supporting transactions.
pub fn brute_force_patterns(db: &[LabeledGraph]) -> Vec<(LabeledGraph, Vec<u32>)> {
    let mut classes: Vec<(LabeledGraph, Vec<u32>)> = Vec::new();
    for (t, g) in db.iter().enumerate() {
        for sub in connected_subgraphs(g) {
            match classes.iter_mut().find(|(rep, _)| brute_force_isomorphic(rep, &sub)) {
                Some((_, ts)) => {
                    if ts.last() != Some(&(t as u32)) {
                        ts.push(t as u32);
                    }
                }
                None => classes.push((sub, vec![t as u32])),
            }
        }
    }
    classes
}

/// Checks a mined lattice against brute-force enumeration and the lattice
/// invariants.
pub fn check_against_oracle(db: &[LabeledGraph], minsupp: u32, lattice: &Lattice) -> Result<(), String> {
    let expected: Vec<_> =
        brute_force_patterns(db).into_iter().filter(|(_, ts)| ts.len() as u32 >= minsupp).collect();
    if expected.len() != lattice.len() {
        return Err(format!("expected {} patterns, mined {}", expected.len(), lattice.len()));
    }
    for (rep, ts) in &expected {
        let hit = lattice.patterns().iter().position(|p| brute_force_isomorphic(&p.graph, rep));
        let Some(i) = hit else { return Err(format!("missing pattern {rep:?}")) };
        if lattice.occurrences(i).members() != *ts {
            return Err(format!("occurrences differ for {rep:?}"));
        }
        if lattice.pattern(i).support != ts.len() as u32 {
            return Err(format!("support differs for {rep:?}"));
        }
    }
    for i in 0..lattice.len() {
        let p = lattice.pattern(i);
        if p.graph.edge_count() > 0 && lattice.parents(i).is_empty() {
            return Err(format!("pattern {} has no parent", p.id));
        }
        if lattice.occurrences(i).support() != p.support {
            return Err(format!("pattern {} cardinality differs from support", p.id));
        }
    }
    for &(parent, child) in lattice.edges() {
        let (p, c) = (lattice.get(parent).unwrap(), lattice.get(child).unwrap());
        if c.support > p.support || c.graph.edge_count() != p.graph.edge_count() + 1 {
            return Err(format!("bad edge {parent}->{child}"));
        }
        if !subgraph_isomorphic(&p.graph, &c.graph).unwrap() {
            return Err(format!("parent {parent} not inside child {child}"));
        }
    }
    Ok(())
}

/// Phenylalanine as drawn in the working example: a Kekulé benzene ring
/// (C6) with a CH2–CH(NH2)–COOH side chain. Labels are atomic numbers,
/// edge labels bond orders.
pub fn phenylalanine() -> LabeledGraph {
    const C: Label = 6;
    const N: Label = 7;
    const O: Label = 8;
    graph(
        &[C, C, C, C, C, C, C, C, C, O, N, O],
        &[
            (0, 1, 1),
            (1, 2, 2),
            (2, 3, 1),
            (3, 4, 2),
            (4, 5, 1),
            (5, 0, 2),
            (3, 6, 1),
            (6, 7, 1),
            (7, 8, 1),
            (8, 9, 1),
            (7, 10, 1),
            (8, 11, 2),
        ],
    )
}

/// The two fragments drawn next to the molecule: C=O, and a carbon with one
/// double and two single C neighbours.
pub fn phenylalanine_fragments() -> [LabeledGraph; 2] {
    [graph(&[6, 8], &[(0, 1, 2)]), graph(&[6, 6, 6, 6], &[(0, 1, 2), (1, 2, 1), (1, 3, 1)])]
}

/// Random simple graph with up to `max_v` vertices, labels below `labels`,
/// and at most `max_e` edges.
pub fn arb_graph(max_v: usize, labels: u32, max_e: usize) -> impl Strategy<Value = LabeledGraph> {
    (1..=max_v)
        .prop_flat_map(move |n| {
            let pairs: Vec<(u32, u32)> = (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v))).collect();
            (
                proptest::collection::vec(0..labels, n),
                proptest::sample::subsequence(pairs.clone(), 0..=pairs.len().min(max_e)),
                proptest::collection::vec(0..2u32, pairs.len()),
            )
        })
        .prop_map(|(vl, chosen, el)| {
            let edges = chosen.iter().enumerate().map(|(i, &(u, v))| Edge::new(u, v, el[i])).collect();
            LabeledGraph::new(vl, edges).unwrap()
        })
}

/// Random connected graph: a random tree plus extra edges.
pub fn arb_connected(max_v: usize, labels: u32, extra: usize) -> impl Strategy<Value = LabeledGraph> {
    (1..=max_v)
        .prop_flat_map(move |n| {
            (
                proptest::collection::vec(0..labels, n),
                proptest::collection::vec(any::<prop::sample::Index>(), n.saturating_sub(1)),
                proptest::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>(), 0..2u32), 0..=extra),
                proptest::collection::vec(0..2u32, n),
            )
        })
        .prop_map(|(vl, parents, extras, tree_labels)| {
            let n = vl.len();
            let mut edges: Vec<Edge> = Vec::new();
            for v in 1..n {
                let p = parents[v - 1].index(v);
                edges.push(Edge::new(p as u32, v as u32, tree_labels[v]));
            }
            for (a, b, l) in extras {
                let (u, v) = (a.index(n), b.index(n));
                if u != v && !edges.iter().any(|e| (e.u as usize, e.v as usize) == (u, v) || (e.u as usize, e.v as usize) == (v, u)) {
                    edges.push(Edge::new(u as u32, v as u32, l));
                }
            }
            LabeledGraph::new(vl, edges).unwrap()
        })
}

/// The same graph with vertices renumbered by `perm` and edges shuffled.
pub fn relabel(g: &LabeledGraph, perm: &[usize], rotate: usize) -> LabeledGraph {
    let n = g.vertex_count();
    let mut labels = vec![0; n];
    for v in 0..n {
        labels[perm[v]] = g.label(v);
    }
    let mut edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|e| {
            let (u, v) = (perm[e.u as usize] as u32, perm[e.v as usize] as u32);
            if rotate.is_multiple_of(2) { Edge::new(u, v, e.label) } else { Edge::new(v, u, e.label) }
        })
        .collect();
    if !edges.is_empty() {
        let r = rotate % edges.len();
        edges.rotate_left(r);
    }
    LabeledGraph::new(labels, edges).unwrap()
}

/// Straight transcription of the grouping loop: recompute every cluster
/// distance from scratch each round, with reachability found by BFS over
/// parent links and fractions compared by cross-multiplication.
pub mod naive_pregroup {
    use latclust_core::{Lattice, PatternId};

    /// `(num, den)` of the parent-child distance, or `None` when unrelated.
    fn related_dist(l: &Lattice, a: usize, b: usize) -> Option<(u64, u64)> {
        let ancestor = |x: usize, y: usize| {
            // is x a (reflexive) ancestor of y?
            let mut stack = vec![y];
            let mut seen = vec![false; l.len()];
            while let Some(v) = stack.pop() {
                if v == x {
                    return true;
                }
                for &p in l.parents(v) {
                    if !seen[p] {
                        seen[p] = true;
                        stack.push(p);
                    }
                }
            }
            false
        };
        let (sa, sb) = (l.pattern(a).support as u64, l.pattern(b).support as u64);
        if ancestor(a, b) {
            Some((sa - sb, sa))
        } else if ancestor(b, a) {
            Some((sb - sa, sb))
        } else {
            None
        }
    }

    fn less(x: (u64, u64), y: (u64, u64)) -> bool {
        (x.0 as u128) * (y.1 as u128) < (y.0 as u128) * (x.1 as u128)
    }

    fn cluster_dist(l: &Lattice, c1: &[usize], c2: &[usize]) -> Option<(u64, u64)> {
        let mut best: Option<(u64, u64)> = None;
        for &g in c1 {
            for &h in c2 {
                if let Some(d) = related_dist(l, g, h) {
                    if d.0 == d.1 {
                        continue; // distance 1 is excluded
                    }
                    if best.is_none_or(|b| less(b, d)) {
                        best = Some(d);
                    }
                }
            }
        }
        best
    }

    /// Final partition as sorted id lists, ordered by smallest id.
    pub fn run(l: &Lattice, maxdist: f64) -> Vec<Vec<PatternId>> {
        let id = |i: usize| l.pattern(i).id;
        let mut clusters: Vec<Vec<usize>> = (0..l.len()).map(|i| vec![i]).collect();
        loop {
            clusters.sort_by_key(|c| c.iter().map(|&i| id(i)).min());
            let mut pick: Option<((u64, u64), usize, usize)> = None;
            for i in 0..clusters.len() {
                for j in i + 1..clusters.len() {
                    if let Some(d) = cluster_dist(l, &clusters[i], &clusters[j]) {
                        // clusters are sorted by min id, so the first hit
                        // among equals is the lexicographically smallest pair
                        if pick.is_none_or(|(b, _, _)| less(d, b)) {
                            pick = Some((d, i, j));
                        }
                    }
                }
            }
            let Some(((num, den), i, j)) = pick else { break };
            if num as f64 / den as f64 > maxdist {
                break;
            }
            let absorbed = clusters.remove(j);
            clusters[i].extend(absorbed);
        }
        let mut out: Vec<Vec<PatternId>> = clusters
            .into_iter()
            .map(|c| {
                let mut ids: Vec<PatternId> = c.into_iter().map(id).collect();
                ids.sort();
                ids
            })
            .collect();
        out.sort();
        out
    }
}

/// Random databases whose mined lattice has at most `max_patterns`
/// patterns.
pub fn arb_small_lattice(max_patterns: usize) -> impl Strategy<Value = latclust_core::Lattice> {
    (proptest::collection::vec(arb_graph(4, 2, 4), 2..=6), 1u32..=2)
        .prop_map(|(db, minsupp)| latclust_core::mine(&latclust_core::GraphDatabase::new(db), minsupp).unwrap())
        .prop_filter("lattice too large", move |l| l.len() <= max_patterns && l.len() >= 2)
}
