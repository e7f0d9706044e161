//! Facet-ridge (dual) graphs and distance queries.
//!
//! Nodes are the facets of a pure complex in canonical order; two facets are
//! adjacent exactly when they share `d - 1` vertices. The facet labels give
//! the graph usually written Ḡ(R); replacing every label by its complement
//! gives the dual graph G(R) of the Stanley-Reisner ring, whose nodes are the
//! generators of the minimal primes.

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Length of a shortest path, or `Unbounded` between different components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Unbounded,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(k) => Some(k),
            Distance::Unbounded => None,
        }
    }

    pub fn is_unbounded(self) -> bool {
        self == Distance::Unbounded
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(k) => write!(f, "{k}"),
            Distance::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// Which labelling to use when printing nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LabelForm {
    /// Facets themselves (facet-ridge graph).
    #[default]
    Facet,
    /// Complements of facets (supports of the minimal-prime generators).
    Complement,
}

/// The facet-ridge graph of a pure complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    n: usize,
    d: usize,
    node_facets: Vec<VertexSet>,
    adjacency: Vec<Vec<usize>>,
    names: Vec<String>,
}

impl DualGraph {
    /// Builds the graph; requires a pure complex with `d >= 2`.
    pub fn build(cx: &SimplicialComplex) -> Result<Self> {
        let d = cx.d().ok_or(Error::NotPure)?;
        if d < 2 {
            return Err(Error::DimensionTooSmall { d });
        }
        Ok(Self::from_nodes(
            cx.n(),
            d,
            cx.facets().to_vec(),
            cx.names().to_vec(),
        ))
    }

    /// Graph on the given nodes (all of cardinality `d`) with ridge adjacency.
    pub(crate) fn from_nodes(
        n: usize,
        d: usize,
        node_facets: Vec<VertexSet>,
        names: Vec<String>,
    ) -> Self {
        let m = node_facets.len();
        let mut adjacency = vec![Vec::new(); m];
        for i in 0..m {
            for j in i + 1..m {
                if node_facets[i].intersection(node_facets[j]).len() + 1 == d {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        DualGraph {
            n,
            d,
            node_facets,
            adjacency,
            names,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn node_count(&self) -> usize {
        self.node_facets.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn node_facets(&self) -> &[VertexSet] {
        &self.node_facets
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Neighbours of node `i` in ascending order.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, nbrs) in self.adjacency.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    pub fn node_of(&self, facet: VertexSet) -> Option<usize> {
        self.node_facets.binary_search(&facet).ok()
    }

    /// Label of node `i` in the requested form.
    pub fn node_label(&self, i: usize, form: LabelForm) -> VertexSet {
        match form {
            LabelForm::Facet => self.node_facets[i],
            LabelForm::Complement => self.node_facets[i].complement(self.n),
        }
    }

    /// Prints a vertex set with the graph's vertex names.
    pub fn format_set(&self, set: VertexSet) -> String {
        let single = self.names.iter().all(|n| n.chars().count() == 1);
        let parts: Vec<&str> = set.iter().map(|v| self.names[v].as_str()).collect();
        if single {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    /// BFS distances from `source`; `usize::MAX` marks unreachable nodes.
    pub fn bfs(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.node_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn eccentricity(&self, source: usize) -> Distance {
        let dist = self.bfs(source);
        if dist.contains(&usize::MAX) {
            Distance::Unbounded
        } else {
            Distance::Finite(dist.into_iter().max().unwrap_or(0))
        }
    }

    /// Largest distance over all node pairs.
    pub fn diameter(&self) -> Result<Distance> {
        let m = self.node_count();
        if m == 0 {
            return Err(Error::EmptyGraph);
        }
        let ecc = if m >= 128 {
            (0..m).into_par_iter().map(|s| self.eccentricity(s)).max()
        } else {
            (0..m).map(|s| self.eccentricity(s)).max()
        };
        Ok(ecc.expect("nonempty"))
    }

    /// Lexicographically first pair of nodes realising the diameter.
    pub fn diametral_pair(&self) -> Result<(usize, usize, Distance)> {
        let m = self.node_count();
        if m == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut best = (0, 0, Distance::Finite(0));
        for s in 0..m {
            let dist = self.bfs(s);
            for (t, &k) in dist.iter().enumerate().skip(s + 1) {
                let k = if k == usize::MAX {
                    Distance::Unbounded
                } else {
                    Distance::Finite(k)
                };
                if k > best.2 {
                    best = (s, t, k);
                }
            }
        }
        Ok(best)
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() == 0 || !self.bfs(0).contains(&usize::MAX)
    }

    /// Distance between the nodes labelled by two facets.
    pub fn distance_pair(&self, a: VertexSet, b: VertexSet) -> Result<Distance> {
        let (ia, ib) = self.lookup_pair(a, b)?;
        let k = self.bfs(ia)[ib];
        Ok(if k == usize::MAX {
            Distance::Unbounded
        } else {
            Distance::Finite(k)
        })
    }

    /// A shortest path between two nodes as a list of node indices. Each node
    /// keeps the first neighbour (in canonical order) that reached it, so the
    /// path is deterministic.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let m = self.node_count();
        let mut parent = vec![usize::MAX; m];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &w in &self.adjacency[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if parent[to] == usize::MAX {
            return None;
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    /// Shortest path between two facets, reported as labels.
    pub fn path_between(
        &self,
        a: VertexSet,
        b: VertexSet,
        form: LabelForm,
    ) -> Result<Option<Vec<VertexSet>>> {
        let (ia, ib) = self.lookup_pair(a, b)?;
        Ok(self
            .shortest_path(ia, ib)
            .map(|p| p.into_iter().map(|i| self.node_label(i, form)).collect()))
    }

    fn lookup_pair(&self, a: VertexSet, b: VertexSet) -> Result<(usize, usize)> {
        let find = |s: VertexSet| {
            self.node_of(s)
                .ok_or_else(|| Error::UnknownNode(self.format_set(s)))
        };
        Ok((find(a)?, find(b)?))
    }

    /// Indices of the nodes whose facet contains `s`.
    pub fn superfacet_nodes(&self, s: VertexSet) -> Vec<usize> {
        (0..self.node_count())
            .filter(|&i| s.is_subset(self.node_facets[i]))
            .collect()
    }

    /// Induced subgraph on the facets containing `s`.
    pub fn induced_on_superfacets(&self, s: VertexSet) -> DualGraph {
        let keep = self.superfacet_nodes(s);
        let mut index = vec![usize::MAX; self.node_count()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let adjacency = keep
            .iter()
            .map(|&old| {
                self.adjacency[old]
                    .iter()
                    .filter(|&&w| index[w] != usize::MAX)
                    .map(|&w| index[w])
                    .collect()
            })
            .collect();
        DualGraph {
            n: self.n,
            d: self.d,
            node_facets: keep.iter().map(|&i| self.node_facets[i]).collect(),
            adjacency,
            names: self.names.clone(),
        }
    }

    /// Connected-component id per node of the subgraph induced on the facets
    /// containing `s`; nodes outside it get `usize::MAX`.
    pub(crate) fn components_within(&self, s: VertexSet) -> Vec<usize> {
        let m = self.node_count();
        let mut comp = vec![usize::MAX; m];
        let inside = |i: usize| s.is_subset(self.node_facets[i]);
        let mut next = 0;
        let mut queue = VecDeque::new();
        for root in 0..m {
            if comp[root] != usize::MAX || !inside(root) {
                continue;
            }
            comp[root] = next;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if comp[w] == usize::MAX && inside(w) {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Rebuilds adjacency from the node labels alone and compares.
    pub fn satisfies_ridge_rule(&self) -> bool {
        let rebuilt =
            Self::from_nodes(self.n, self.d, self.node_facets.clone(), self.names.clone());
        rebuilt.adjacency == self.adjacency
    }

    /// Assembles a graph from explicit parts, checking that the adjacency is
    /// exactly the ridge relation.
    pub fn from_parts(
        n: usize,
        d: usize,
        mut node_facets: Vec<VertexSet>,
        edges: &[(usize, usize)],
        names: Vec<String>,
    ) -> Result<Self> {
        let m = node_facets.len();
        if node_facets.iter().any(|f| f.len() != d) {
            return Err(Error::NotPure);
        }
        if names.len() != n {
            return Err(Error::BadParams(format!(
                "{} names for {n} vertices",
                names.len()
            )));
        }
        let order: Vec<usize> = {
            let mut idx: Vec<usize> = (0..m).collect();
            idx.sort_by_key(|&i| node_facets[i]);
            idx
        };
        let mut position = vec![0; m];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        node_facets.sort_unstable();
        if node_facets.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadParams("duplicate node label".into()));
        }
        let mut adjacency = vec![Vec::new(); m];
        for &(a, b) in edges {
            if a >= m || b >= m || a == b {
                return Err(Error::BadParams(format!("bad edge ({a}, {b})")));
            }
            let (a, b) = (position[a], position[b]);
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let g = DualGraph {
            n,
            d,
            node_facets,
            adjacency,
            names,
        };
        if !g.satisfies_ridge_rule() {
            return Err(Error::BadParams(
                "edges do not match the ridge relation of the node labels".into(),
            ));
        }
        Ok(g)
    }
}

/// Shorthand for `DualGraph::build(cx)?.diameter()`.
pub fn complex_diameter(cx: &SimplicialComplex) -> Result<Distance> {
    DualGraph::build(cx)?.diameter()
}
