//! Serre's condition (S2) and related combinatorial tests.
//!
//! Two independent deciders are provided: local connectivity of the
//! facet-ridge graph, and the linear-syzygy path test on the Alexander dual
//! ideal. They must agree on every pure complex.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::dual_graph::DualGraph;
use crate::error::{Error, Result};
use crate::homology::{component_count, reduced_betti, BettiVector, Field};
use crate::ideal::MonomialIdeal;
use crate::vertex_set::VertexSet;

/// A pair of facets not joined by any path of facets containing their
/// intersection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct S2Witness {
    pub u: VertexSet,
    pub v: VertexSet,
    pub separator: VertexSet,
}

impl S2Witness {
    /// Recomputes the separation from scratch.
    pub fn verify(&self, cx: &SimplicialComplex) -> bool {
        let Ok(g) = DualGraph::build(cx) else {
            return false;
        };
        let (Some(a), Some(b)) = (g.node_of(self.u), g.node_of(self.v)) else {
            return false;
        };
        if self.u.intersection(self.v) != self.separator {
            return false;
        }
        let comp = g.components_within(self.separator);
        comp[a] != comp[b]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum S2Failure {
    NotPure,
    Separated(S2Witness),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct S2Verdict {
    pub holds: bool,
    pub failure: Option<S2Failure>,
}

impl S2Verdict {
    const HOLDS: S2Verdict = S2Verdict {
        holds: true,
        failure: None,
    };

    fn fails(f: S2Failure) -> Self {
        S2Verdict {
            holds: false,
            failure: Some(f),
        }
    }

    pub fn witness(&self) -> Option<S2Witness> {
        match self.failure {
            Some(S2Failure::Separated(w)) => Some(w),
            _ => None,
        }
    }
}

/// Checks that every two facets are joined by a path of ridge-adjacent
/// facets each containing their intersection. The reported witness is the
/// lexicographically first failing pair in facet order.
pub fn is_locally_connected(cx: &SimplicialComplex) -> Result<S2Verdict> {
    let g = DualGraph::build(cx)?;
    Ok(locally_connected_graph(&g))
}

pub(crate) fn locally_connected_graph(g: &DualGraph) -> S2Verdict {
    let facets = g.node_facets();
    let mut cache: HashMap<VertexSet, Vec<usize>> = HashMap::new();
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            if g.has_edge(i, j) {
                continue;
            }
            let s = facets[i].intersection(facets[j]);
            let comp = cache.entry(s).or_insert_with(|| g.components_within(s));
            if comp[i] != comp[j] {
                return S2Verdict::fails(S2Failure::Separated(S2Witness {
                    u: facets[i],
                    v: facets[j],
                    separator: s,
                }));
            }
        }
    }
    S2Verdict::HOLDS
}

/// (S2) for the Stanley-Reisner ring: pure and locally connected.
pub fn is_s2(cx: &SimplicialComplex) -> Result<S2Verdict> {
    let top = cx.facets().iter().map(|f| f.len()).max().unwrap_or(0);
    if top < 2 {
        return Err(Error::DimensionTooSmall { d: top });
    }
    if !cx.is_pure() {
        return Ok(S2Verdict::fails(S2Failure::NotPure));
    }
    is_locally_connected(cx)
}

/// Linear first syzygies of an equigenerated squarefree ideal, tested
/// combinatorially: every two generators `u`, `v` must be joined by a chain
/// of generators dividing `lcm(u, v)` whose consecutive lcms have degree
/// one more than the generators.
pub fn linear_syzygy_check(ideal: &MonomialIdeal) -> Result<bool> {
    let t = ideal.degree().ok_or(Error::NotEquigenerated)?;
    let gens = ideal.generators();
    let mut cache: HashMap<VertexSet, Vec<usize>> = HashMap::new();
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            let lcm = gens[a].union(gens[b]);
            if lcm.len() == t + 1 {
                continue;
            }
            let label = cache
                .entry(lcm)
                .or_insert_with(|| linear_components(gens, t, lcm));
            if label[a] != label[b] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Component labels of the "linear step" graph on the generators dividing
/// `lcm`; other generators get `usize::MAX`.
fn linear_components(gens: &[VertexSet], t: usize, lcm: VertexSet) -> Vec<usize> {
    let m = gens.len();
    let inside: Vec<bool> = gens.iter().map(|w| w.is_subset(lcm)).collect();
    let mut label = vec![usize::MAX; m];
    let mut next = 0;
    for root in 0..m {
        if !inside[root] || label[root] != usize::MAX {
            continue;
        }
        label[root] = next;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for y in 0..m {
                if inside[y] && label[y] == usize::MAX && gens[x].union(gens[y]).len() == t + 1 {
                    label[y] = next;
                    queue.push_back(y);
                }
            }
        }
        next += 1;
    }
    label
}

/// `(S_level)` where decidable: every complex satisfies `(S_1)` (and the
/// vacuous `(S_0)`); `(S_2)` is [`is_s2`], with complexes of dimension at
/// most 0 counted as satisfying it.
pub fn check_s_level(cx: &SimplicialComplex, level: usize) -> Result<bool> {
    match level {
        0 | 1 => Ok(true),
        2 => match cx.d() {
            Some(d) if d < 2 => Ok(true),
            _ => Ok(is_s2(cx)?.holds),
        },
        l => Err(Error::UnsupportedLevel(l)),
    }
}

/// Topological connectedness (at most one component).
pub fn is_connected(cx: &SimplicialComplex) -> bool {
    component_count(cx) <= 1
}

/// Pure, and every link of a nonempty face has vanishing reduced homology
/// below its top dimension.
pub fn is_buchsbaum(cx: &SimplicialComplex, field: Field) -> Result<bool> {
    Ok(buchsbaum_witness(cx, field)?.is_none())
}

/// Why a complex is not Buchsbaum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuchsbaumFailure {
    NotPure,
    /// The first face (ascending) whose link has homology below its top
    /// dimension, with that link's reduced Betti numbers.
    Link {
        face: VertexSet,
        betti: BettiVector,
    },
}

/// `None` when the complex is Buchsbaum over `field`.
pub fn buchsbaum_witness(cx: &SimplicialComplex, field: Field) -> Result<Option<BuchsbaumFailure>> {
    let d = match cx.d() {
        Some(d) => d,
        None => {
            let top = cx.facets().iter().map(|f| f.len()).max().unwrap_or(0);
            if top < 2 {
                return Err(Error::DimensionTooSmall { d: top });
            }
            return Ok(Some(BuchsbaumFailure::NotPure));
        }
    };
    if d < 2 {
        return Err(Error::DimensionTooSmall { d });
    }
    for face in proper_nonempty_faces(cx) {
        let link = cx.link(face)?;
        let link_dim = (d - face.len()) as isize - 1;
        let betti = reduced_betti(&link, field);
        if !betti.vanishes_below(link_dim) {
            return Ok(Some(BuchsbaumFailure::Link { face, betti }));
        }
    }
    Ok(None)
}

/// Buchsbaum verdicts over GF(2) and ℚ side by side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BuchsbaumReport {
    pub gf2: bool,
    pub rational: bool,
}

impl BuchsbaumReport {
    pub fn agree(&self) -> bool {
        self.gf2 == self.rational
    }
}

pub fn buchsbaum_report(cx: &SimplicialComplex) -> Result<BuchsbaumReport> {
    Ok(BuchsbaumReport {
        gf2: is_buchsbaum(cx, Field::GF2)?,
        rational: is_buchsbaum(cx, Field::Rational)?,
    })
}

/// Nonempty faces that are not facets, in ascending order.
fn proper_nonempty_faces(cx: &SimplicialComplex) -> Vec<VertexSet> {
    let mut faces = Vec::new();
    for &f in cx.facets() {
        let verts: Vec<usize> = f.iter().collect();
        let k = verts.len();
        for mask in 1u64..(1u64 << k) - 1 {
            faces.push(
                verts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect(),
            );
        }
    }
    faces.sort_unstable();
    faces.dedup();
    faces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex_set::letters;

    fn cx(facets: &[&str]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|s| letters(s)), None).unwrap()
    }

    #[test]
    fn two_triangles_on_a_vertex_fail() {
        let c = cx(&["ABC", "ADE"]);
        let v = is_s2(&c).unwrap();
        assert!(!v.holds);
        let w = v.witness().unwrap();
        assert_eq!(
            (w.u, w.v, w.separator),
            (letters("ABC"), letters("ADE"), letters("A"))
        );
        assert!(w.verify(&c));
    }

    #[test]
    fn disconnected_and_non_pure() {
        assert!(!is_s2(&cx(&["AB", "CD"])).unwrap().holds);
        let v = is_s2(&cx(&["ABC", "DE"])).unwrap();
        assert_eq!(v.failure, Some(S2Failure::NotPure));
        assert_eq!(
            is_s2(&cx(&["A", "B"])),
            Err(Error::DimensionTooSmall { d: 1 })
        );
    }

    #[test]
    fn oracles_agree_on_a_mixed_example() {
        let c = cx(&[
            "ABC", "BCD", "CEF", "CFG", "ABH", "BDH", "EFH", "FGH", "ADH", "EGH",
        ]);
        let v = is_s2(&c).unwrap();
        if let Some(w) = v.witness() {
            assert!(w.verify(&c));
        }
        let ideal = c.alexander_dual_ideal().unwrap();
        assert_eq!(v.holds, linear_syzygy_check(&ideal).unwrap());
    }

    #[test]
    fn syzygy_examples() {
        let set = |v: &[usize]| v.iter().copied().collect::<VertexSet>();
        let i = MonomialIdeal::new(6, [set(&[0, 1]), set(&[2, 3]), set(&[4, 5])]).unwrap();
        assert!(!linear_syzygy_check(&i).unwrap());
        let single = MonomialIdeal::new(3, [set(&[0, 1])]).unwrap();
        assert!(linear_syzygy_check(&single).unwrap());
        let mixed = MonomialIdeal::new(3, [set(&[0]), set(&[1, 2])]).unwrap();
        assert_eq!(linear_syzygy_check(&mixed), Err(Error::NotEquigenerated));
    }

    #[test]
    fn levels() {
        let c = cx(&["AB", "CD"]);
        assert!(check_s_level(&c, 1).unwrap());
        assert!(!check_s_level(&c, 2).unwrap());
        assert_eq!(check_s_level(&c, 3), Err(Error::UnsupportedLevel(3)));
        assert!(check_s_level(&cx(&["A", "B"]), 2).unwrap());
    }

    #[test]
    fn buchsbaum_small_cases() {
        let simplex = cx(&["ABC"]);
        assert!(is_buchsbaum(&simplex, Field::Rational).unwrap());
        // two triangles sharing only a vertex: link of A is two points
        let pinched = cx(&["ABC", "ADE"]);
        let r = buchsbaum_report(&pinched).unwrap();
        assert!(!r.gf2 && !r.rational && r.agree());
        assert!(is_connected(&pinched));
        assert!(!is_connected(&cx(&["AB", "CD"])));
    }
}
