//! Squarefree monomial ideals, stored by generator supports.

use crate::complex::{antichain_reduce, SimplicialComplex};
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// A squarefree monomial ideal in `n` variables. Each generator is the
/// product of the variables in its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<VertexSet>,
    names: Vec<String>,
}

impl MonomialIdeal {
    /// Minimal generators of the ideal generated by the given supports.
    /// Supports are reduced to those not divisible by another generator.
    pub fn new<I>(n: usize, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        Self::with_names(n, generators, variable_names(n))
    }

    pub fn with_names<I>(n: usize, generators: I, names: Vec<String>) -> Result<Self>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        let gens: Vec<VertexSet> = generators.into_iter().collect();
        if gens.is_empty() {
            return Err(Error::EmptyInput);
        }
        if names.len() != n {
            return Err(Error::BadParams(format!(
                "{} names for {n} variables",
                names.len()
            )));
        }
        if let Some(top) = gens.iter().filter_map(|g| g.max_vertex()).max() {
            if top >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: top,
                    universe: n,
                });
            }
        }
        // divisibility of squarefree monomials is support inclusion; keep the minimal ones
        let mut sorted = gens;
        sorted.sort_unstable();
        sorted.dedup();
        let minimal: Vec<VertexSet> = sorted
            .iter()
            .copied()
            .filter(|&g| !sorted.iter().any(|&h| h != g && h.is_subset(g)))
            .collect();
        Ok(MonomialIdeal {
            n,
            generators: minimal,
            names,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[VertexSet] {
        &self.generators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Common degree of the generators, if equigenerated.
    pub fn degree(&self) -> Option<usize> {
        let t = self.generators[0].len();
        self.generators.iter().all(|g| g.len() == t).then_some(t)
    }

    /// True when `1` is a generator (the dual of the full simplex).
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.is_empty())
    }

    /// Writes a generator as a monomial (`x1x2`, `AB`, `1` for the unit).
    pub fn monomial(&self, g: VertexSet) -> String {
        if g.is_empty() {
            return "1".to_string();
        }
        let single = self.names.iter().all(|n| n.chars().count() == 1);
        let parts: Vec<&str> = g.iter().map(|v| self.names[v].as_str()).collect();
        if single {
            parts.concat()
        } else {
            parts.join("*")
        }
    }

    /// The complex whose facets are the generator complements; inverse of
    /// [`SimplicialComplex::alexander_dual_ideal`].
    pub fn dual_complex(&self) -> Result<SimplicialComplex> {
        let facets: Vec<VertexSet> = self
            .generators
            .iter()
            .map(|g| g.complement(self.n))
            .collect();
        let (kept, _) = antichain_reduce(facets);
        SimplicialComplex::from_named_facets(kept, self.names.clone())
    }
}

/// Names `x1 … xn`, the usual polynomial-ring variable names.
pub fn variable_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{}", i + 1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn three_disjoint_primes() {
        // facets x3x4x5x6, x1x2x5x6, x1x2x3x4 (0-based below)
        let cx = SimplicialComplex::from_named_facets(
            [set(&[2, 3, 4, 5]), set(&[0, 1, 4, 5]), set(&[0, 1, 2, 3])],
            variable_names(6),
        )
        .unwrap();
        let ideal = cx.alexander_dual_ideal().unwrap();
        let gens: Vec<String> = ideal
            .generators()
            .iter()
            .map(|&g| ideal.monomial(g))
            .collect();
        assert_eq!(gens, vec!["x1*x2", "x3*x4", "x5*x6"]);
        assert_eq!(ideal.degree(), Some(2));
        assert!(ideal.dual_complex().unwrap() == cx);
    }

    #[test]
    fn full_simplex_gives_unit_ideal() {
        let cx = SimplicialComplex::from_facets([set(&[0, 1, 2])], None).unwrap();
        let ideal = cx.alexander_dual_ideal().unwrap();
        assert_eq!(ideal.generators(), &[VertexSet::EMPTY]);
        assert!(ideal.is_unit());
        assert_eq!(ideal.monomial(VertexSet::EMPTY), "1");
    }

    #[test]
    fn non_pure_rejected() {
        let cx = SimplicialComplex::from_facets([set(&[0, 1, 2]), set(&[3, 4])], None).unwrap();
        assert_eq!(cx.alexander_dual_ideal(), Err(Error::NotPure));
    }

    #[test]
    fn minimal_generators() {
        let i = MonomialIdeal::new(3, [set(&[0]), set(&[0, 1]), set(&[1, 2])]).unwrap();
        assert_eq!(i.generators(), &[set(&[0]), set(&[1, 2])]);
        assert_eq!(i.degree(), None);
    }
}
