//! Gluing two pure complexes along an identified subcomplex, and appending
//! chains of facets.

use crate::complex::{antichain_reduce, extend_fresh_names, SimplicialComplex};
use crate::error::{Error, Result};
use crate::serre::check_s_level;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Inputs to [`glue`].
#[derive(Clone, Debug)]
pub struct GlueSpec {
    pub left: SimplicialComplex,
    pub right: SimplicialComplex,
    /// Pairs `(right vertex, left vertex)` to identify.
    pub identify: Vec<(usize, usize)>,
    /// Target Serre level `ℓ ≥ 1`.
    pub level: usize,
}

impl GlueSpec {
    pub fn new(
        left: SimplicialComplex,
        right: SimplicialComplex,
        identify: Vec<(usize, usize)>,
        level: usize,
    ) -> Self {
        GlueSpec {
            left,
            right,
            identify,
            level,
        }
    }

    /// Identifies `right_facet` with `left_facet`, matching vertices in
    /// ascending order.
    pub fn along_facets(
        left: SimplicialComplex,
        left_facet: VertexSet,
        right: SimplicialComplex,
        right_facet: VertexSet,
        level: usize,
    ) -> Result<Self> {
        if left.facet_index(left_facet).is_none() {
            return Err(Error::NotAFacet(left.label(left_facet)));
        }
        if right.facet_index(right_facet).is_none() {
            return Err(Error::NotAFacet(right.label(right_facet)));
        }
        let identify = right_facet.iter().zip(left_facet.iter()).collect();
        Ok(GlueSpec::new(left, right, identify, level))
    }
}

/// A glued complex with the checks made along the way.
#[derive(Clone, Debug)]
pub struct Glued {
    pub complex: SimplicialComplex,
    /// Maximal faces of the overlap, in result labels.
    pub overlap: Vec<VertexSet>,
    /// Facets present in both inputs after relabeling.
    pub shared_facets: usize,
    /// Where the right complex's vertices went.
    pub right_map: Vec<usize>,
    /// Verdicts at `min(ℓ, 2)`, the highest level decidable here.
    pub left_holds: bool,
    pub right_holds: bool,
    pub result_holds: bool,
}

/// Unions `left` with a relabeled copy of `right`.
///
/// Identified right vertices take their partner's index; the others get
/// fresh indices `n_left, n_left + 1, …` in ascending order. The overlap must
/// be pure of dimension at least `d - 2` and satisfy `(S_{ℓ-1})`. When both
/// sides satisfy the target level (checked up to 2), so must the result.
pub fn glue(spec: &GlueSpec) -> Result<Glued> {
    let GlueSpec {
        left,
        right,
        identify,
        level,
    } = spec;
    let dl = left.d().ok_or(Error::NotPure)?;
    let dr = right.d().ok_or(Error::NotPure)?;
    if dl != dr {
        return Err(Error::DimensionMismatch {
            left: dl,
            right: dr,
        });
    }
    let d = dl;
    if *level == 0 {
        return Err(Error::BadParams("Serre level must be at least 1".into()));
    }
    let right_map = vertex_map(left.n(), right.n(), identify)?;
    let n = left.n() + right.n() - identify.len();
    if n > MAX_VERTICES {
        return Err(Error::UniverseTooLarge {
            requested: n,
            max: MAX_VERTICES,
        });
    }

    let moved: Vec<VertexSet> = right
        .facets()
        .iter()
        .map(|f| f.map(|v| right_map[v]))
        .collect();
    let meets: Vec<VertexSet> = left
        .facets()
        .iter()
        .flat_map(|&f| moved.iter().map(move |&g| f.intersection(g)))
        .collect();
    let (overlap, _) = antichain_reduce(meets);
    let size = overlap[0].len();
    if overlap.iter().any(|f| f.len() != size) {
        return Err(Error::OverlapNotPure);
    }
    let (dim, required) = (size as isize - 1, d as isize - 2);
    if dim < required {
        return Err(Error::OverlapTooSmall { dim, required });
    }

    let mut names = left.names().to_vec();
    extend_fresh_names(&mut names, n);
    if !check_s_level(&overlap_complex(&overlap, &names)?, level - 1)? {
        return Err(Error::OverlapSerreFailure { level: level - 1 });
    }

    let shared_facets = moved
        .iter()
        .filter(|g| left.facet_index(**g).is_some())
        .count();
    let all: Vec<VertexSet> = left.facets().iter().copied().chain(moved).collect();
    let complex = SimplicialComplex::from_named_facets(all, names)?;

    let checked = (*level).min(2);
    let left_holds = check_s_level(left, checked)?;
    let right_holds = check_s_level(right, checked)?;
    let result_holds = check_s_level(&complex, checked)?;
    if left_holds && right_holds && !result_holds {
        return Err(Error::LevelNotPreserved { level: checked });
    }
    Ok(Glued {
        complex,
        overlap,
        shared_facets,
        right_map,
        left_holds,
        right_holds,
        result_holds,
    })
}

fn vertex_map(n_left: usize, n_right: usize, identify: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut map = vec![usize::MAX; n_right];
    let mut hit = vec![false; n_left];
    for &(r, l) in identify {
        if r >= n_right || l >= n_left {
            return Err(Error::InvalidIdentification(format!(
                "pair {r}->{l} out of range"
            )));
        }
        if map[r] != usize::MAX || hit[l] {
            return Err(Error::InvalidIdentification(format!(
                "pair {r}->{l} is not injective"
            )));
        }
        map[r] = l;
        hit[l] = true;
    }
    let unmapped = map.iter_mut().filter(|s| **s == usize::MAX);
    for (fresh, slot) in (n_left..).zip(unmapped) {
        *slot = fresh;
    }
    Ok(map)
}

fn overlap_complex(faces: &[VertexSet], names: &[String]) -> Result<SimplicialComplex> {
    if faces.iter().all(|f| f.is_empty()) {
        return Ok(SimplicialComplex::empty_face_complex());
    }
    let used = faces.iter().fold(VertexSet::EMPTY, |a, &f| a.union(f));
    SimplicialComplex::from_facets(faces.iter().copied(), None)?
        .with_names(used.iter().map(|v| names[v].clone()).collect())
}

/// Appends `steps` facets after `start`: each new facet drops the oldest
/// vertex of the previous one and adds a fresh vertex. The vertices of
/// `start` count as added in ascending order.
pub fn append_facet_chain(
    cx: &SimplicialComplex,
    start: VertexSet,
    steps: usize,
) -> Result<SimplicialComplex> {
    let window: Vec<usize> = start.iter().collect();
    append_facet_chain_ordered(cx, &window, steps)
}

/// [`append_facet_chain`] with the age order of the start facet's vertices
/// given explicitly, oldest first.
pub fn append_facet_chain_ordered(
    cx: &SimplicialComplex,
    window: &[usize],
    steps: usize,
) -> Result<SimplicialComplex> {
    let start: VertexSet = window.iter().copied().collect();
    if start.len() != window.len() || cx.facet_index(start).is_none() {
        return Err(Error::NotAFacet(cx.label(start)));
    }
    if steps == 0 {
        return Ok(cx.clone());
    }
    let n = cx.n() + steps;
    if n > MAX_VERTICES {
        return Err(Error::UniverseTooLarge {
            requested: n,
            max: MAX_VERTICES,
        });
    }
    let mut window: std::collections::VecDeque<usize> = window.iter().copied().collect();
    let mut facets = cx.facets().to_vec();
    for fresh in cx.n()..n {
        window.pop_front();
        window.push_back(fresh);
        facets.push(window.iter().copied().collect());
    }
    let mut names = cx.names().to_vec();
    extend_fresh_names(&mut names, n);
    SimplicialComplex::from_named_facets(facets, names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::serre::is_s2;
    use crate::vertex_set::letters;

    fn cx(facets: &[&str]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|s| letters(s)), None).unwrap()
    }

    #[test]
    fn two_simplices_along_a_facet() {
        let s = cx(&["ABC"]);
        let spec = GlueSpec::new(s.clone(), s.clone(), vec![(0, 0), (1, 1)], 2);
        let g = glue(&spec).unwrap();
        assert_eq!(g.complex.to_string(), "[ABC, ABD]");
        assert!(g.result_holds);
        assert_eq!(g.overlap, vec![letters("AB")]);
    }

    #[test]
    fn full_identification_shares_the_facet() {
        let s = cx(&["ABC"]);
        let spec = GlueSpec::along_facets(s.clone(), letters("ABC"), s, letters("ABC"), 2).unwrap();
        let g = glue(&spec).unwrap();
        assert_eq!(g.complex.num_facets(), 1);
        assert_eq!(g.shared_facets, 1);
    }

    #[test]
    fn point_overlap_is_too_small() {
        let a = cx(&["ABC", "BCD"]);
        let b = cx(&["ABC", "ABD"]);
        let spec = GlueSpec::new(a, b, vec![(0, 0)], 2);
        assert_eq!(
            glue(&spec).unwrap_err(),
            Error::OverlapTooSmall {
                dim: 0,
                required: 1
            }
        );
    }

    #[test]
    fn bad_identifications() {
        let a = cx(&["ABC"]);
        let spec = GlueSpec::new(a.clone(), a.clone(), vec![(0, 0), (1, 0)], 2);
        assert!(matches!(glue(&spec), Err(Error::InvalidIdentification(_))));
        let spec = GlueSpec::new(a.clone(), a.clone(), vec![(5, 0)], 2);
        assert!(matches!(glue(&spec), Err(Error::InvalidIdentification(_))));
        let spec = GlueSpec::new(a.clone(), cx(&["AB"]), vec![], 2);
        assert_eq!(
            glue(&spec).unwrap_err(),
            Error::DimensionMismatch { left: 3, right: 2 }
        );
    }

    #[test]
    fn level_four_unsupported() {
        let s = cx(&["ABC"]);
        let spec = GlueSpec::new(s.clone(), s, vec![(0, 0), (1, 1)], 4);
        assert_eq!(glue(&spec).unwrap_err(), Error::UnsupportedLevel(3));
    }

    #[test]
    fn chain_rolls_the_window() {
        let c = cx(&["AB", "BC"]);
        let out = append_facet_chain(&c, letters("BC"), 2).unwrap();
        assert_eq!(out.to_string(), "[AB, BC, CD, DE]");
        assert!(is_s2(&out).unwrap().holds);
        assert_eq!(append_facet_chain(&c, letters("BC"), 0).unwrap(), c);
        assert!(matches!(
            append_facet_chain(&c, letters("AC"), 1),
            Err(Error::NotAFacet(_))
        ));
    }

    #[test]
    fn ordered_window() {
        let c = cx(&["ABC"]);
        let out = append_facet_chain_ordered(&c, &[1, 0, 2], 1).unwrap();
        assert_eq!(out.to_string(), "[ABC, ACD]");
    }
}
