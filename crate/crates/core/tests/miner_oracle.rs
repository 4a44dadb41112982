mod common;

use common::*;
use latclust_core::{mine, GraphDatabase};
use proptest::prelude::*;

#[test]
fn three_tiny_transactions() {
    let cc = graph(&[6, 6], &[(0, 1, 1)]);
    let co = graph(&[6, 8], &[(0, 1, 1)]);
    let db = vec![cc.clone(), cc.clone(), co];
    let l = mine(&GraphDatabase::new(db.clone()), 2).unwrap();
    assert_eq!(l.len(), 2);
    assert_eq!((l.pattern(0).graph.clone(), l.pattern(0).support), (graph(&[6], &[]), 3));
    assert_eq!((l.pattern(1).graph.clone(), l.pattern(1).support), (cc, 2));
    check_against_oracle(&db, 2, &l).unwrap();
}

#[test]
fn single_transaction_yields_every_connected_subgraph() {
    let g = graph(&[6, 6, 8, 7], &[(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 0, 1)]);
    let l = mine(&GraphDatabase::new(vec![g.clone()]), 1).unwrap();
    assert!(l.patterns().iter().all(|p| p.support == 1));
    check_against_oracle(&[g], 1, &l).unwrap();
}

#[test]
fn phenylalanine_lattice_contains_the_drawn_fragments() {
    let l = mine(&GraphDatabase::new(vec![phenylalanine()]), 1).unwrap();
    for f in phenylalanine_fragments() {
        assert!(l.patterns().iter().any(|p| brute_force_isomorphic(&p.graph, &f)), "missing {f:?}");
    }
    let top = l.patterns().iter().map(|p| p.graph.edge_count()).max().unwrap();
    assert_eq!(top, 12);
}

#[test]
fn ids_follow_size_then_code() {
    let db = vec![
        graph(&[6, 6, 8], &[(0, 1, 1), (1, 2, 2)]),
        graph(&[6, 8, 6], &[(0, 1, 2), (1, 2, 1)]),
        graph(&[6, 6, 6], &[(0, 1, 1), (1, 2, 1)]),
    ];
    let a = mine(&GraphDatabase::new(db.clone()), 1).unwrap();
    let b = mine(&GraphDatabase::new(db), 1).unwrap();
    assert_eq!(a, b);
    let sizes: Vec<_> = a.patterns().iter().map(|p| p.graph.edge_count()).collect();
    assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    assert!(a.patterns().iter().enumerate().all(|(i, p)| p.id.0 == i as u32));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn mined_lattice_matches_brute_force(
        db in proptest::collection::vec(arb_graph(6, 3, 7), 1..=8),
        minsupp in 1u32..=3,
    ) {
        let lattice = mine(&GraphDatabase::new(db.clone()), minsupp).unwrap();
        if let Err(e) = check_against_oracle(&db, minsupp, &lattice) {
            prop_assert!(false, "{}", e);
        }
    }
}
