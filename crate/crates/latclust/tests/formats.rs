use latclust::store::{self, StoreFile};
use latclust::{grouping_json, gspan, lattice_json, model_json};
use latclust_core::embed::{embed, init, DistanceMatrix};
use latclust_core::graph::subgraph_isomorphic;
use latclust_core::pregroup::pregroup;
use latclust_core::{mine, Edge, GraphDatabase, LabeledGraph, PatternId};
use proptest::prelude::*;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{FIXTURES}/{name}")).unwrap()
}

fn arb_db() -> impl Strategy<Value = GraphDatabase> {
    let graph = (1usize..=5).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> = (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v))).collect();
        (
            proptest::collection::vec(0u32..3, n),
            proptest::sample::subsequence(pairs.clone(), 0..=pairs.len()),
            proptest::collection::vec(1u32..3, pairs.len()),
        )
            .prop_map(|(labels, chosen, el)| {
                let edges = chosen.iter().enumerate().map(|(i, &(u, v))| Edge::new(u, v, el[i])).collect();
                LabeledGraph::new(labels, edges).unwrap()
            })
    });
    proptest::collection::vec(graph, 1..=6).prop_map(GraphDatabase::new)
}

#[test]
fn example_fixture_loads_with_supports_and_strings() {
    let l = lattice_json::parse(&fixture("example1.json")).unwrap();
    assert_eq!(l.universe(), 8);
    let a = l.index_of(PatternId(0)).unwrap();
    let b = l.index_of(PatternId(1)).unwrap();
    assert_eq!((l.pattern(a).support, l.pattern(b).support), (5, 4));
    assert_eq!(l.occurrences(a).to_bit_string(), "11100011");
    assert_eq!(l.occurrences(b).to_bit_string(), "01111000");
}

#[test]
fn example_graph_file_agrees_with_the_fixture_lattice() {
    let l = lattice_json::parse(&fixture("example1.json")).unwrap();
    let db = gspan::parse(&fixture("example1.g")).unwrap();
    assert_eq!(db.len(), 8);
    for (i, p) in l.patterns().iter().enumerate() {
        let found: Vec<u32> = (0..8).filter(|&t| subgraph_isomorphic(&p.graph, &db.transactions[t as usize]).unwrap()).collect();
        assert_eq!(found, l.occurrences(i).members(), "pattern {}", p.id);
    }
}

#[test]
fn toy_fixture_parses_with_label_names() {
    let db = gspan::parse(&fixture("toy30.g")).unwrap();
    assert_eq!(db.len(), 30);
    assert_eq!(db.vertex_labels.get(&8).map(String::as_str), Some("O"));
    assert_eq!(gspan::parse(&gspan::write(&db)).unwrap(), db);
}

#[test]
fn toy_lattice_survives_every_artifact_format() {
    let db = gspan::parse(&fixture("toy30.g")).unwrap();
    let l = mine(&db, 5).unwrap();
    let text = lattice_json::to_string(&l);
    let back = lattice_json::parse(&text).unwrap();
    assert_eq!(back, l);
    assert!(store::read(&store::write(&StoreFile::from_lattice(&l))).unwrap().matches(&back));

    let g = pregroup(&l, 0.1).unwrap();
    let g_back = grouping_json::parse(&grouping_json::to_string(&g)).unwrap();
    g_back.validate(&back).unwrap();
    assert_eq!(g_back, g);

    let targets = DistanceMatrix::from_groups(&l, &g).unwrap();
    let m = embed(init(g.len(), 11, 0.1, 0.1), 10_000, &targets);
    assert_eq!(model_json::parse(&model_json::to_string(&m)).unwrap(), m);
}

#[test]
fn empty_lattice_has_no_transaction_count() {
    // The universe is carried by the occurrence strings, so a lattice with
    // no patterns reads back over zero transactions.
    let l = mine(&GraphDatabase::new(vec![LabeledGraph::single_vertex(1)]), 2).unwrap();
    assert!(l.is_empty());
    let back = lattice_json::parse(&lattice_json::to_string(&l)).unwrap();
    assert_eq!((back.len(), back.universe(), back.minsupp()), (0, 0, 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn mined_lattices_round_trip(db in arb_db(), minsupp in 1u32..=2) {
        let l = mine(&db, minsupp).unwrap();
        prop_assume!(!l.is_empty());
        let text = lattice_json::to_string(&l);
        let back = lattice_json::parse(&text).unwrap();
        prop_assert_eq!(&back, &l);
        prop_assert_eq!(lattice_json::to_string(&back), text);
        let file = StoreFile::from_lattice(&l);
        prop_assert_eq!(store::read(&store::write(&file)).unwrap(), file);
    }

    #[test]
    fn graph_files_round_trip(db in arb_db()) {
        prop_assert_eq!(gspan::parse(&gspan::write(&db)).unwrap(), db);
    }
}
