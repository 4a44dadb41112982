//! Frequent-subgraph lattices and co-occurrence clustering.
//!
//! The pipeline is: [`miner::mine`] a lattice of frequent connected
//! subgraphs from a [`miner::GraphDatabase`] (or assemble one with
//! [`lattice::Lattice::new`]), collapse near-duplicate patterns with
//! [`pregroup::pregroup`], lay the groups out in the plane with
//! [`embed`], and pick out close or far pairs with
//! [`render::edges_at_threshold`].
//!
//! Occurrence sets are run-length encoded ([`occ::OccurrenceSet`]); reads
//! that would hit compressed storage are counted by an
//! [`occ::AccessCounter`].
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod distance;
pub mod embed;
pub mod graph;
pub mod lattice;
pub mod miner;
pub mod occ;
pub mod pregroup;
pub mod ratio;
pub mod render;
pub mod synth;

pub use distance::{Distance, DistanceError};
pub use embed::{EmbeddingModel, Point};
pub use graph::{Edge, Label, LabeledGraph};
pub use lattice::{Lattice, LatticeError, Pattern, PatternId, PatternRecord};
pub use miner::{mine, GraphDatabase, MineError};
pub use occ::{AccessCounter, AccessCounts, OccurrenceSet, OccurrenceStore};
pub use pregroup::{pregroup, Group, GroupId, Grouping};
pub use ratio::Ratio;
