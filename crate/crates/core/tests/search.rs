//! Exhaustive search: class counts, determinism, resumption, soundness.

mod common;

use common::assert_within_bounds;
use srdual::constructions::{build, Family};
use srdual::search::{enumerate_mu, SearchConfig, StopReason};
use srdual::{complex_diameter, is_s2, Distance};

fn config() -> SearchConfig {
    SearchConfig::default()
}

/// Every isomorphism class of d-uniform hypergraphs on n vertices is a
/// canonical node exactly once; these are the known class counts (graphs
/// on n vertices, 3-uniform hypergraphs on 5 vertices, and complements).
#[test]
fn canonical_nodes_match_class_counts() {
    let cases = [
        (2, 3, 4),
        (2, 4, 11),
        (2, 5, 34),
        (2, 6, 156),
        (3, 4, 5),
        (3, 5, 34),
        (4, 6, 156),
    ];
    for (d, n, classes) in cases {
        let r = enumerate_mu(d, n, &config()).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.nodes_explored, classes, "d={d} n={n}");
    }
}

#[test]
fn graphs_reach_n_minus_two() {
    for n in 3..=7 {
        let r = enumerate_mu(2, n, &config()).unwrap();
        assert_eq!(r.mu, n - 2, "n={n}");
        assert!(r.exhaustive && r.optimal);
    }
}

#[test]
fn witnesses_reverify_and_respect_bounds() {
    for (d, n) in [(2, 6), (3, 5), (3, 6), (4, 6)] {
        let r = enumerate_mu(d, n, &config()).unwrap();
        let w = r.witness.expect("a witness exists");
        assert_eq!(w.d(), Some(d));
        assert_eq!(w.n(), n);
        assert!(is_s2(&w).unwrap().holds);
        assert_eq!(complex_diameter(&w).unwrap(), Distance::Finite(r.mu));
        assert!(r.mu as u64 <= r.bound);
        assert_within_bounds(&w);
        assert_eq!(r.histogram.values().sum::<u64>(), r.s2_found);
        assert_eq!(r.histogram.keys().max().copied(), Some(r.mu));
    }
}

#[test]
fn search_dominates_small_table_witnesses() {
    for (d, n) in [(2, 5), (2, 6), (3, 6), (4, 6)] {
        let r = enumerate_mu(d, n, &config()).unwrap();
        let w = build(Family::Table1Witness { d, n }).unwrap();
        let x = complex_diameter(&w).unwrap().finite().unwrap();
        assert!(r.mu >= x, "d={d} n={n}");
    }
}

#[test]
fn thread_count_does_not_change_the_answer() {
    let run = |threads| {
        let r = enumerate_mu(
            3,
            6,
            &SearchConfig {
                threads: Some(threads),
                split_depth: 3,
                ..config()
            },
        )
        .unwrap();
        (
            r.mu,
            r.witness_key,
            r.histogram,
            r.s2_found,
            r.nodes_explored,
            r.exhaustive,
        )
    };
    let one = run(1);
    assert_eq!(one, run(2));
    assert_eq!(one, run(4));
}

#[test]
fn bound_pruning_keeps_the_lex_first_maximizer() {
    let plain = enumerate_mu(3, 6, &config()).unwrap();
    let pruned = enumerate_mu(
        3,
        6,
        &SearchConfig {
            prune_with_bounds: true,
            ..config()
        },
    )
    .unwrap();
    assert_eq!(pruned.mu, plain.mu);
    assert_eq!(pruned.witness_key, plain.witness_key);
    assert!(pruned.optimal);
    assert!(pruned.nodes_explored <= plain.nodes_explored);
}

#[test]
fn budgets_stop_early_without_claiming_optimality() {
    let r = enumerate_mu(
        3,
        6,
        &SearchConfig {
            max_nodes: Some(200),
            ..config()
        },
    )
    .unwrap();
    assert_eq!(r.stop, StopReason::NodeBudget);
    assert!(!r.exhaustive && !r.optimal);
    let t = enumerate_mu(
        3,
        6,
        &SearchConfig {
            max_time: Some(std::time::Duration::ZERO),
            ..config()
        },
    )
    .unwrap();
    assert!(matches!(
        t.stop,
        StopReason::TimeBudget | StopReason::Completed
    ));
}

#[test]
fn checkpoint_resume_matches_a_single_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mu.ckpt");
    let base = SearchConfig {
        threads: Some(2),
        split_depth: 7,
        checkpoint: Some(path.clone()),
        ..config()
    };
    let full = enumerate_mu(
        3,
        6,
        &SearchConfig {
            checkpoint: None,
            ..base.clone()
        },
    )
    .unwrap();

    let mut rounds = 0;
    let last = loop {
        rounds += 1;
        assert!(rounds < 200, "resumption makes no progress");
        let r = enumerate_mu(
            3,
            6,
            &SearchConfig {
                max_nodes: Some(700),
                ..base.clone()
            },
        )
        .unwrap();
        assert!(path.exists());
        if r.stop == StopReason::Completed {
            break r;
        }
    };
    assert!(rounds > 1);
    assert!(last.tasks_resumed > 0);
    assert_eq!(last.mu, full.mu);
    assert_eq!(last.witness_key, full.witness_key);
    assert_eq!(last.histogram, full.histogram);
    assert_eq!(last.s2_found, full.s2_found);
    assert_eq!(last.evaluated, full.evaluated);
    assert!(last.exhaustive);
}

#[test]
fn mismatched_checkpoint_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mu.ckpt");
    let cfg = SearchConfig {
        checkpoint: Some(path.clone()),
        ..config()
    };
    enumerate_mu(2, 5, &cfg).unwrap();
    assert!(enumerate_mu(2, 6, &cfg).is_err());
    std::fs::write(&path, "not a checkpoint").unwrap();
    assert!(enumerate_mu(2, 5, &cfg).is_err());
}

#[test]
fn parameters_outside_the_search_space_are_rejected() {
    assert!(enumerate_mu(1, 4, &config()).is_err());
    assert!(enumerate_mu(3, 3, &config()).is_err());
    assert!(enumerate_mu(4, 12, &config()).is_err());
}
