//! Pipeline stages shared by the CLI, the service and the tests.

use std::collections::BTreeMap;

use latclust_core::distance::group_dist;
use latclust_core::embed::{layout_error, DistanceMatrix, Embedder, EmbeddingModel};
use latclust_core::pregroup::{access_savings, singleton_grouping};
use latclust_core::{AccessCounts, Distance, Grouping, Lattice, PatternId};
use serde::Serialize;

use crate::tables::{CurvePoint, DistanceRow};
use crate::FormatError;

/// Group-pair targets, taking representative-pair distances from `cache`
/// where present and querying the occurrence store otherwise. Also returns
/// the rows of a complete cache for this grouping.
pub fn group_targets(
    lattice: &Lattice,
    grouping: &Grouping,
    cache: &[DistanceRow],
) -> Result<(DistanceMatrix, Vec<DistanceRow>), FormatError> {
    let mut known: BTreeMap<(u32, u32), Distance> = BTreeMap::new();
    for row in cache {
        known.insert((row.id1.min(row.id2), row.id1.max(row.id2)), row.distance()?);
    }
    let groups = &grouping.groups;
    let mut rows = Vec::new();
    let mut values = BTreeMap::new();
    for a in 0..groups.len() {
        for b in a + 1..groups.len() {
            let (ra, rb) = (groups[a].representative, groups[b].representative);
            let key = (ra.0.min(rb.0), ra.0.max(rb.0));
            let d = match known.get(&key) {
                Some(&d) => d,
                None => group_dist(lattice, &groups[a], &groups[b])?,
            };
            rows.push(DistanceRow::new(PatternId(key.0), PatternId(key.1), d));
            values.insert((a, b), d.to_f64());
        }
    }
    let matrix = DistanceMatrix::from_fn(groups.len(), |a, b| values[&(a.min(b), a.max(b))]);
    Ok((matrix, rows))
}

/// Runs `iterations` updates, sampling the error before the first and after
/// every `every` iterations (and after the last).
pub fn embed_with_curve(
    model: EmbeddingModel,
    iterations: u64,
    every: u64,
    targets: &DistanceMatrix,
) -> (EmbeddingModel, Vec<CurvePoint>) {
    let every = every.max(1);
    let mut e = Embedder::new(model);
    let sample = |e: &Embedder| {
        let err = layout_error(e.model(), targets);
        CurvePoint { iteration: e.model().iterations, rse: err.rse, root_sum_sq: err.root_sum_sq }
    };
    let mut curve = vec![sample(&e)];
    let mut done = 0;
    while done < iterations {
        let step = every.min(iterations - done);
        e.run(step, targets);
        done += step;
        curve.push(sample(&e));
    }
    (e.into_model(), curve)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Stats {
    pub patterns: usize,
    pub groups: usize,
    pub pairs_before: u64,
    pub pairs_after: u64,
    /// Intersection queries to fill the distance matrix without grouping.
    pub intersections_before: u64,
    /// Intersection queries to fill it over group representatives.
    pub intersections_after: u64,
    pub decompressions: u64,
}

/// Fills the ungrouped and the grouped distance matrix from the occurrence
/// store and reports the access counters of each run.
pub fn access_stats(lattice: &Lattice, grouping: &Grouping) -> Result<Stats, FormatError> {
    let counter = lattice.store().counter();
    let measure = |g: &Grouping| -> Result<AccessCounts, FormatError> {
        counter.reset();
        DistanceMatrix::from_groups(lattice, g)?;
        Ok(counter.snapshot())
    };
    let before = measure(&singleton_grouping(lattice))?;
    let after = measure(grouping)?;
    counter.reset();
    let (pairs_before, pairs_after) = access_savings(lattice, grouping);
    Ok(Stats {
        patterns: lattice.len(),
        groups: grouping.len(),
        pairs_before,
        pairs_after,
        intersections_before: before.intersections as u64,
        intersections_after: after.intersections as u64,
        decompressions: (before.decompressions + after.decompressions) as u64,
    })
}
