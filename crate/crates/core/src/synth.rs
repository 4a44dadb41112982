//! Seeded synthetic lattices for experiments and tests.

use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, LabeledGraph};
use crate::lattice::{Lattice, PatternId, PatternRecord};
use crate::occ::OccurrenceSet;

/// A batch of identical-shape chains. Each chain starts with a root of the
/// configured support; step `k` removes `drops[k]` random transactions from
/// the previous pattern's occurrences.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainFamily {
    pub chains: usize,
    pub drops: Vec<u32>,
}

fn path(vertices: u32, label: u32) -> LabeledGraph {
    let edges = (1..vertices).map(|i| Edge::new(i - 1, i, 0)).collect();
    LabeledGraph::new(alloc::vec![label; vertices as usize], edges).expect("path is simple")
}

/// Removes `k` random elements from `v` (order of the rest not preserved).
fn drop_random(rng: &mut ChaCha8Rng, v: &mut Vec<u32>, k: u32) {
    for _ in 0..k.min(v.len() as u32) {
        let i = rng.gen_range(0..v.len());
        v.swap_remove(i);
    }
}

fn random_subset(rng: &mut ChaCha8Rng, universe: u32, size: u32) -> Vec<u32> {
    let mut all: Vec<u32> = (0..universe).collect();
    let size = size.min(universe) as usize;
    for i in 0..size {
        let j = rng.gen_range(i..all.len());
        all.swap(i, j);
    }
    all.truncate(size);
    all
}

fn to_set(universe: u32, members: &[u32]) -> OccurrenceSet {
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    OccurrenceSet::from_members(universe, sorted).expect("distinct members in range")
}

/// Lattice made of independent chains of path patterns. Chain `c` uses vertex
/// label `c`, so patterns of different chains are never related; pattern `k`
/// of a chain is a path with `k` edges.
pub fn chain_lattice(universe: u32, root_support: u32, families: &[ChainFamily], seed: u64) -> Lattice {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::new();
    let mut edges = Vec::new();
    let mut chain = 0u32;
    for family in families {
        for _ in 0..family.chains {
            let mut members = random_subset(&mut rng, universe, root_support);
            for step in 0..=family.drops.len() {
                if step > 0 {
                    drop_random(&mut rng, &mut members, family.drops[step - 1]);
                }
                let id = PatternId(records.len() as u32);
                if step > 0 {
                    edges.push((PatternId(id.0 - 1), id));
                }
                let occurrences = to_set(universe, &members);
                records.push(PatternRecord {
                    id,
                    graph: path(step as u32 + 1, chain),
                    support: occurrences.support(),
                    occurrences,
                });
            }
            chain += 1;
        }
    }
    Lattice::new(1, universe, records, edges).expect("synthetic chains satisfy the lattice invariants")
}

/// 200 patterns: 50 chains of 4 near-duplicates. Every related pair within a
/// chain is at most 0.045 apart.
pub fn near_duplicate_chains(seed: u64) -> Lattice {
    chain_lattice(1000, 200, &[ChainFamily { chains: 50, drops: alloc::vec![3, 3, 3] }], seed)
}

/// Seven families of 10 four-pattern chains whose end-to-end distance grows
/// from 0 to 0.28 in steps of 0.05, so each `maxdist` step of 0.05 collapses
/// more chains.
pub fn graded_chains(universe: u32, root_support: u32, seed: u64) -> Lattice {
    let families: Vec<ChainFamily> = (0..7)
        .map(|k| {
            let total = if k == 0 { 0.0 } else { 0.05 * k as f64 - 0.02 };
            let drop = libm::round(total * root_support as f64) as u32;
            let first = drop / 3;
            ChainFamily { chains: 10, drops: alloc::vec![first, first, drop - 2 * first] }
        })
        .collect();
    chain_lattice(universe, root_support, &families, seed)
}

/// `groups` unrelated single-vertex patterns whose co-occurrence distances
/// come from a hidden planar layout: each pattern occurs in the transactions
/// whose random sample point lies within `radius` of the pattern's point.
pub fn planar_cooccurrence(groups: usize, universe: u32, radius: f64, seed: u64) -> Lattice {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<(f64, f64)> = (0..universe).map(|_| (rng.gen(), rng.gen())).collect();
    let mut records = Vec::with_capacity(groups);
    while records.len() < groups {
        let (cx, cy): (f64, f64) = (rng.gen(), rng.gen());
        let members: Vec<u32> = samples
            .iter()
            .enumerate()
            .filter(|(_, &(x, y))| libm::sqrt((x - cx) * (x - cx) + (y - cy) * (y - cy)) < radius)
            .map(|(t, _)| t as u32)
            .collect();
        if members.is_empty() {
            continue;
        }
        let occurrences = OccurrenceSet::from_members(universe, members).expect("ascending");
        let id = PatternId(records.len() as u32);
        records.push(PatternRecord {
            id,
            graph: LabeledGraph::single_vertex(id.0),
            support: occurrences.support(),
            occurrences,
        });
    }
    Lattice::new(1, universe, records, Vec::new()).expect("unrelated roots")
}
