//! Pure simplicial complexes given by their facets.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::vertex_set::{default_vertex_name, VertexSet, MAX_VERTICES};

/// A simplicial complex on the vertex universe `{0, …, n-1}`, stored as its
/// facets in ascending bitset order.
///
/// Every universe vertex lies in some facet. `d` is the common facet
/// cardinality when the complex is pure, so a pure complex has dimension
/// `d - 1` and its Stanley-Reisner ring has Krull dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    d: Option<usize>,
    facets: Vec<VertexSet>,
    names: Vec<String>,
}

impl SimplicialComplex {
    /// Builds a complex from a facet list.
    ///
    /// Non-maximal and repeated sets are dropped silently. Without an
    /// explicit universe the vertices actually used are renumbered
    /// `0, 1, …` in increasing order, keeping their original default names.
    pub fn from_facets<I>(facets: I, universe: Option<usize>) -> Result<Self>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        Self::from_facets_reporting(facets, universe).map(|(cx, _)| cx)
    }

    /// Like [`from_facets`](Self::from_facets), also returning the input sets
    /// that were dropped because another facet contains them.
    pub fn from_facets_reporting<I>(
        facets: I,
        universe: Option<usize>,
    ) -> Result<(Self, Vec<VertexSet>)>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        let input: Vec<VertexSet> = facets.into_iter().collect();
        if input.is_empty() || input.iter().any(|f| f.is_empty()) {
            return Err(Error::EmptyInput);
        }
        let (kept, dropped) = antichain_reduce(input);
        let used = kept.iter().fold(VertexSet::EMPTY, |a, &f| a.union(f));
        match universe {
            Some(n) => {
                if n > MAX_VERTICES {
                    return Err(Error::UniverseTooLarge {
                        requested: n,
                        max: MAX_VERTICES,
                    });
                }
                let top = used.max_vertex().expect("nonempty");
                if top >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: top,
                        universe: n,
                    });
                }
                if let Some(v) = VertexSet::full(n).difference(used).min_vertex() {
                    return Err(Error::IsolatedVertex { vertex: v });
                }
                let names = (0..n).map(default_vertex_name).collect();
                Ok((Self::from_parts(n, kept, names), dropped))
            }
            None => {
                let names: Vec<String> = used.iter().map(default_vertex_name).collect();
                Ok((compact(&kept, used, names), dropped))
            }
        }
    }

    /// Builds a complex whose universe is given by a name table.
    pub fn from_named_facets<I>(facets: I, names: Vec<String>) -> Result<Self>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        let cx = Self::from_facets(facets, Some(names.len()))?;
        cx.with_names(names)
    }

    /// The complex `{∅}` whose only face is the empty face (dimension -1).
    /// It arises as the link of a facet.
    pub fn empty_face_complex() -> Self {
        SimplicialComplex {
            n: 0,
            d: Some(0),
            facets: vec![VertexSet::EMPTY],
            names: Vec::new(),
        }
    }

    /// Assumes `facets` is a canonical antichain covering `0..n`.
    fn from_parts(n: usize, mut facets: Vec<VertexSet>, names: Vec<String>) -> Self {
        facets.sort_unstable();
        let d = facets[0].len();
        let d = facets.iter().all(|f| f.len() == d).then_some(d);
        SimplicialComplex {
            n,
            d,
            facets,
            names,
        }
    }

    /// Replaces the vertex name table.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::BadParams(format!(
                "{} names given for {} vertices",
                names.len(),
                self.n
            )));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::BadParams(format!("invalid vertex name {name:?}")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::BadParams(format!("duplicate vertex name {name:?}")));
            }
        }
        self.names = names;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Common facet cardinality, if pure.
    pub fn d(&self) -> Option<usize> {
        self.d
    }

    pub fn is_pure(&self) -> bool {
        self.d.is_some()
    }

    /// Dimension: largest facet cardinality minus one.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(0) as isize - 1
    }

    /// `n - d` for pure complexes.
    pub fn codim(&self) -> Option<usize> {
        self.d.map(|d| self.n - d)
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Parses a set written in this complex's vertex names, either as
    /// concatenated single-character names (`ABC`) or separated by commas
    /// or whitespace (`x1,x2,x3`).
    pub fn parse_set(&self, text: &str) -> Result<VertexSet> {
        let tokens: Vec<String> = if text.contains(',') || text.contains(char::is_whitespace) {
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(str::to_string)
                .collect()
        } else if self.vertex_by_name(text).is_some() {
            vec![text.to_string()]
        } else {
            text.chars().map(|c| c.to_string()).collect()
        };
        tokens
            .iter()
            .map(|t| {
                self.vertex_by_name(t)
                    .ok_or_else(|| Error::UnknownNode(format!("vertex {t:?}")))
            })
            .collect()
    }

    /// Writes a set with this complex's names: concatenated when every name is
    /// a single character, space-separated otherwise.
    pub fn label(&self, set: VertexSet) -> String {
        let single = self.names.iter().all(|n| n.chars().count() == 1);
        let parts: Vec<String> = set
            .iter()
            .map(|v| match self.names.get(v) {
                Some(name) => name.clone(),
                None => default_vertex_name(v),
            })
            .collect();
        if single {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    pub fn facet_index(&self, f: VertexSet) -> Option<usize> {
        self.facets.binary_search(&f).ok()
    }

    pub fn is_face(&self, s: VertexSet) -> bool {
        self.facets.iter().any(|f| s.is_subset(*f))
    }

    /// Checks the antichain and canonical-order invariants.
    pub fn is_canonical_antichain(&self) -> bool {
        self.facets.windows(2).all(|w| w[0] < w[1])
            && self
                .facets
                .iter()
                .all(|f| self.facets.iter().all(|g| f == g || !f.is_subset(*g)))
    }

    /// Link of a face: `{F \ face : face ⊆ F}`, on the vertices it uses.
    pub fn link(&self, face: VertexSet) -> Result<Self> {
        if !self.is_face(face) {
            return Err(Error::NotAFace(self.label(face)));
        }
        let rest: Vec<VertexSet> = self
            .facets
            .iter()
            .filter(|f| face.is_subset(**f))
            .map(|f| f.difference(face))
            .collect();
        if rest.iter().all(|f| f.is_empty()) {
            return Ok(Self::empty_face_complex());
        }
        let (kept, _) = antichain_reduce(rest);
        let used = kept.iter().fold(VertexSet::EMPTY, |a, &f| a.union(f));
        let names = used.iter().map(|v| self.names[v].clone()).collect();
        Ok(compact(&kept, used, names))
    }

    /// Adds `extra` new vertices to every facet.
    pub fn cone(&self, extra: usize) -> Result<Self> {
        if extra == 0 {
            return Err(Error::ZeroCone);
        }
        let n = self.n + extra;
        if n > MAX_VERTICES {
            return Err(Error::UniverseTooLarge {
                requested: n,
                max: MAX_VERTICES,
            });
        }
        let apex = VertexSet::full(n).difference(VertexSet::full(self.n));
        let facets = self.facets.iter().map(|f| f.union(apex)).collect();
        let mut names = self.names.clone();
        extend_fresh_names(&mut names, n);
        Ok(Self::from_parts(n, facets, names))
    }

    /// Renames vertex `v` to `perm[v]`; names travel with their vertices.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::NotABijection { n });
        }
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::NotABijection { n });
            }
        }
        let facets = self.facets.iter().map(|f| f.map(|v| perm[v])).collect();
        let mut names = vec![String::new(); n];
        for (v, &p) in perm.iter().enumerate() {
            names[p] = self.names[v].clone();
        }
        Ok(Self::from_parts(n, facets, names))
    }

    /// Alexander dual ideal: one generator per facet, the complement of that
    /// facet (the product of the variables generating its minimal prime).
    pub fn alexander_dual_ideal(&self) -> Result<MonomialIdeal> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let gens = self.facets.iter().map(|f| f.complement(self.n));
        MonomialIdeal::with_names(self.n, gens, self.names.clone())
    }

    /// Compares facet lists, ignoring names.
    pub fn same_facets(&self, other: &Self) -> bool {
        self.n == other.n && self.facets == other.facets
    }

    /// Vertex permutation turning `other` into `self` with matching names,
    /// when both use the same name set.
    pub fn same_by_names(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut perm = Vec::with_capacity(self.n);
        for name in &other.names {
            match self.vertex_by_name(name) {
                Some(v) => perm.push(v),
                None => return false,
            }
        }
        match other.relabel(&perm) {
            Ok(mapped) => mapped.facets == self.facets,
            Err(_) => false,
        }
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.facets.iter().map(|s| self.label(*s)).collect();
        write!(f, "[{}]", labels.join(", "))
    }
}

/// Sorted, duplicate-free maximal elements, plus the dropped inputs.
pub(crate) fn antichain_reduce(mut sets: Vec<VertexSet>) -> (Vec<VertexSet>, Vec<VertexSet>) {
    sets.sort_unstable();
    let mut dropped = Vec::new();
    let mut uniq: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if uniq.last() == Some(&s) {
            dropped.push(s);
        } else {
            uniq.push(s);
        }
    }
    let mut kept = Vec::with_capacity(uniq.len());
    for (i, &s) in uniq.iter().enumerate() {
        let covered = uniq
            .iter()
            .enumerate()
            .any(|(j, &t)| i != j && s.is_subset(t));
        if covered {
            dropped.push(s);
        } else {
            kept.push(s);
        }
    }
    (kept, dropped)
}

/// Renumbers the vertices of `used` to `0..|used|` preserving order.
fn compact(facets: &[VertexSet], used: VertexSet, names: Vec<String>) -> SimplicialComplex {
    let mut index = [usize::MAX; MAX_VERTICES];
    for (i, v) in used.iter().enumerate() {
        index[v] = i;
    }
    let facets = facets.iter().map(|f| f.map(|v| index[v])).collect();
    SimplicialComplex::from_parts(used.len(), facets, names)
}

/// Extends a name table to `n` entries with default names that do not clash.
pub(crate) fn extend_fresh_names(names: &mut Vec<String>, n: usize) {
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    while names.len() < n {
        let mut candidate = default_vertex_name(names.len());
        while taken.contains(&candidate) {
            candidate.push('\'');
        }
        taken.insert(candidate.clone());
        names.push(candidate);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex_set::letters;

    fn cx(facets: &[&str]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|s| letters(s)), None).unwrap()
    }

    #[test]
    fn path_of_edges() {
        let c = cx(&["AB", "BC", "CD", "DE"]);
        assert_eq!(c.n(), 5);
        assert_eq!(c.d(), Some(2));
        assert_eq!(c.num_facets(), 4);
        assert!(c.is_canonical_antichain());
    }

    #[test]
    fn antichain_reduction_is_silent() {
        let (c, dropped) =
            SimplicialComplex::from_facets_reporting([letters("ABC"), letters("AB")], None)
                .unwrap();
        assert_eq!(c.facets(), &[letters("ABC")]);
        assert_eq!(dropped, vec![letters("AB")]);
        let c = cx(&["ABC", "ABC", "BCD"]);
        assert_eq!(c.num_facets(), 2);
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(
            SimplicialComplex::from_facets(Vec::<VertexSet>::new(), None),
            Err(Error::EmptyInput)
        );
        assert_eq!(
            SimplicialComplex::from_facets([letters("AB"), VertexSet::EMPTY], None),
            Err(Error::EmptyInput)
        );
        assert_eq!(
            SimplicialComplex::from_facets([letters("AD")], Some(3)),
            Err(Error::VertexOutOfRange {
                vertex: 3,
                universe: 3
            })
        );
        assert_eq!(
            SimplicialComplex::from_facets([letters("AB")], Some(3)),
            Err(Error::IsolatedVertex { vertex: 2 })
        );
    }

    #[test]
    fn implicit_universe_compacts() {
        let c = SimplicialComplex::from_facets([letters("AC"), letters("CE")], None).unwrap();
        assert_eq!(c.n(), 3);
        assert_eq!(c.names(), &["A", "C", "E"]);
        assert_eq!(c.label(c.facets()[1]), "CE");
    }

    #[test]
    fn non_pure_has_no_d() {
        let c = cx(&["ABC", "DE"]);
        assert_eq!(c.d(), None);
        assert_eq!(c.dim(), 2);
    }

    #[test]
    fn link_examples() {
        let c = cx(&["ABC"]);
        assert_eq!(c.link(VertexSet::EMPTY).unwrap(), c);
        let void = c.link(letters("ABC")).unwrap();
        assert_eq!(void, SimplicialComplex::empty_face_complex());
        assert_eq!(void.dim(), -1);
        assert!(matches!(c.link(letters("D")), Err(Error::NotAFace(_))));
    }

    #[test]
    fn link_keeps_names() {
        let c = cx(&["ABC", "ABD", "BDE"]);
        let l = c.link(letters("B")).unwrap();
        assert_eq!(l.names(), &["A", "C", "D", "E"]);
        assert_eq!(l.to_string(), "[AC, AD, DE]");
    }

    #[test]
    fn cone_adds_apex_vertices() {
        let c = cx(&["AB", "BC", "CD", "DE"]);
        let k = c.cone(1).unwrap();
        assert_eq!((k.n(), k.d()), (6, Some(3)));
        assert_eq!(k.to_string(), "[ABF, BCF, CDF, DEF]");
        assert_eq!(c.cone(0), Err(Error::ZeroCone));
    }

    #[test]
    fn relabel_checks_bijection() {
        let c = cx(&["AB", "BC"]);
        assert_eq!(c.relabel(&[0, 1, 2]).unwrap(), c);
        assert_eq!(c.relabel(&[0, 0, 2]), Err(Error::NotABijection { n: 3 }));
        assert_eq!(c.relabel(&[0, 1]), Err(Error::NotABijection { n: 3 }));
        let t = c.relabel(&[1, 0, 2]).unwrap();
        assert_eq!(t.relabel(&[1, 0, 2]).unwrap(), c);
        assert!(t.same_by_names(&c));
    }

    #[test]
    fn parse_set_forms() {
        let c = cx(&["ABC", "BCD"]);
        assert_eq!(c.parse_set("ABC").unwrap(), letters("ABC"));
        assert_eq!(c.parse_set("A,B").unwrap(), letters("AB"));
        assert!(c.parse_set("AZ").is_err());
    }
}
