//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use srdual::search::verify_bounds;
use srdual::{letters, SimplicialComplex, VertexSet};

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// A drawn figure: its complex and the edges as drawn, each pair sorted.
pub struct Figure {
    pub complex: SimplicialComplex,
    pub edges: BTreeSet<(VertexSet, VertexSet)>,
}

/// Node labels in the drawn figures that contradict their own drawn edges,
/// with the label that agrees with both the edges and the construction.
pub const LABEL_CORRECTIONS: &[(&str, &str, &str)] = &[("glued_dim4_pair", "FGIK", "FHIK")];

/// A figure with [`LABEL_CORRECTIONS`] applied.
pub fn figure(name: &str) -> Figure {
    let mut text = raw_figure_text(name);
    for &(fig, wrong, right) in LABEL_CORRECTIONS {
        if fig == name {
            text = text
                .lines()
                .map(|l| {
                    l.split(' ')
                        .map(|t| if t == wrong { right } else { t })
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("\n");
        }
    }
    parse_figure(&text)
}

/// A figure exactly as drawn.
pub fn raw_figure(name: &str) -> Figure {
    parse_figure(&raw_figure_text(name))
}

fn raw_figure_text(name: &str) -> String {
    let path = golden_dir().join("figures").join(format!("{name}.txt"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path:?}: {e}"))
}

fn parse_figure(text: &str) -> Figure {
    let (facets, edges) = text
        .split_once("# edges")
        .expect("figure file has an edge section");
    let facets: Vec<&str> = facets
        .lines()
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let complex = cx(&facets);
    let edges = edges
        .lines()
        .filter_map(|l| l.split_once(' '))
        .map(|(a, b)| {
            let (a, b) = (letters(a), letters(b));
            (a.min(b), a.max(b))
        })
        .collect();
    Figure { complex, edges }
}

pub fn cx(facets: &[&str]) -> SimplicialComplex {
    SimplicialComplex::from_facets(facets.iter().map(|s| letters(s)), None).unwrap()
}

/// Panics when the complex beats the best proven upper bound.
pub fn assert_within_bounds(cx: &SimplicialComplex) {
    match verify_bounds(cx) {
        Ok(true) => {}
        Ok(false) => panic!("diameter above the best bound: {cx}"),
        Err(e) => panic!("bound check failed: {e}"),
    }
}

/// A random pure complex: `d`-subsets of `0..n` drawn without repetition,
/// relabeled so that every vertex is used. `None` if the draw misses a
/// vertex.
pub fn random_pure(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Option<SimplicialComplex> {
    let all: Vec<VertexSet> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == d)
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect();
    let count = rng.gen_range(1..=all.len().min(3 * n));
    let chosen: Vec<VertexSet> = all.choose_multiple(rng, count).copied().collect();
    let used = chosen.iter().fold(VertexSet::EMPTY, |u, f| u.union(*f));
    if used.len() != n {
        return None;
    }
    SimplicialComplex::from_facets(chosen, Some(n)).ok()
}

/// A random pure complex grown by adding facets that share a ridge with one
/// already present, which yields (S2) complexes far more often than
/// independent draws. `None` if the walk misses a vertex.
pub fn random_grown(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Option<SimplicialComplex> {
    let all: Vec<VertexSet> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == d)
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect();
    let target = rng.gen_range(1..=all.len().min(3 * n));
    let mut chosen = vec![*all.choose(rng).unwrap()];
    while chosen.len() < target {
        let frontier: Vec<VertexSet> = all
            .iter()
            .copied()
            .filter(|f| !chosen.contains(f))
            .filter(|f| chosen.iter().any(|g| f.intersection(*g).len() + 1 == d))
            .collect();
        match frontier.choose(rng) {
            Some(&f) => chosen.push(f),
            None => break,
        }
    }
    let used = chosen.iter().fold(VertexSet::EMPTY, |u, f| u.union(*f));
    if used.len() != n {
        return None;
    }
    SimplicialComplex::from_facets(chosen, Some(n)).ok()
}

/// Half independent draws, half grown complexes, all using every vertex.
pub fn random_mixed(
    rng: &mut ChaCha8Rng,
    count: usize,
    ns: std::ops::RangeInclusive<usize>,
    ds: &[usize],
) -> Vec<SimplicialComplex> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d = *ds.choose(rng).unwrap();
        let n = rng.gen_range(ns.clone());
        if n <= d {
            continue;
        }
        let c = if out.len() % 2 == 0 {
            random_pure(rng, n, d)
        } else {
            random_grown(rng, n, d)
        };
        if let Some(c) = c {
            out.push(c);
        }
    }
    out
}
