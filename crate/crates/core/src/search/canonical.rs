//! Canonical forms of facet lists under vertex permutations.
//!
//! The canonical key of a complex is the lexicographically smallest sorted
//! facet list over all relabelings. Labels are handed out in increasing
//! order; since facets are ordered numerically as bitsets, the facets whose
//! vertices already carry labels `0..a` form a prefix of the final sorted
//! list, so partial labelings can be compared and pruned as they grow.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::complex::SimplicialComplex;
use crate::vertex_set::VertexSet;

/// Largest universe handled by the exact orbit minimization.
pub const EXACT_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    /// Sorted facets after relabeling.
    pub facets: Vec<VertexSet>,
    /// `labeling[old] = new`.
    pub labeling: Vec<usize>,
    /// False when the key came from the invariant-ordering fallback, in
    /// which case equal keys still imply isomorphism but isomorphic
    /// complexes may get different keys.
    pub exact: bool,
}

/// Canonical key and labeling of a complex: exact for `n ≤ 12`, a
/// vertex-invariant ordering above that.
pub fn canonical_form(cx: &SimplicialComplex) -> CanonicalForm {
    if cx.n() <= EXACT_LIMIT {
        let mut lab = Labeler::new(cx.n(), cx.facets());
        lab.minimize();
        let best = lab.best.expect("at least one labeling");
        CanonicalForm {
            n: cx.n(),
            facets: best.0,
            labeling: best.1,
            exact: true,
        }
    } else {
        invariant_form(cx.n(), cx.facets())
    }
}

/// Whether `facets` (sorted) is already the smallest in its orbit.
pub(crate) fn is_canonical(n: usize, facets: &[VertexSet]) -> bool {
    let mut lab = Labeler::new(n, facets);
    lab.target = Some(facets.to_vec());
    lab.check_mode = true;
    lab.run();
    !lab.found_smaller
}

struct Labeler<'a> {
    n: usize,
    facets: &'a [VertexSet],
    by_vertex: Vec<Vec<usize>>,
    twin_class: Vec<usize>,
    label: Vec<usize>,
    image: Vec<VertexSet>,
    /// Current comparison target (best so far, or the input in check mode).
    target: Option<Vec<VertexSet>>,
    best: Option<(Vec<VertexSet>, Vec<usize>)>,
    check_mode: bool,
    found_smaller: bool,
}

impl<'a> Labeler<'a> {
    fn new(n: usize, facets: &'a [VertexSet]) -> Self {
        let mut by_vertex = vec![Vec::new(); n];
        for (i, f) in facets.iter().enumerate() {
            for v in f.iter() {
                by_vertex[v].push(i);
            }
        }
        Labeler {
            n,
            facets,
            twin_class: twin_classes(n, facets),
            by_vertex,
            label: vec![usize::MAX; n],
            image: Vec::with_capacity(facets.len()),
            target: None,
            best: None,
            check_mode: false,
            found_smaller: false,
        }
    }

    fn minimize(&mut self) {
        self.run();
    }

    fn run(&mut self) {
        self.descend(0, VertexSet::EMPTY);
    }

    /// Compares the partial image (labels `0..assigned` handed out) with
    /// the target.
    fn compare(&self, assigned: usize) -> Ordering {
        let Some(t) = &self.target else {
            return Ordering::Less;
        };
        for (x, y) in self.image.iter().zip(t) {
            match x.cmp(y) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        // the target has another facet inside the labels used so far that
        // the image cannot match at this position
        match t.get(self.image.len()) {
            Some(next) if next.is_subset(VertexSet::full(assigned)) => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }

    fn descend(&mut self, a: usize, assigned: VertexSet) {
        if a == self.n {
            if !self.check_mode && self.compare(a) == Ordering::Less {
                self.best = Some((self.image.clone(), self.label.clone()));
                self.target = Some(self.image.clone());
            }
            return;
        }
        let mut tried_classes: Vec<usize> = Vec::new();
        for u in 0..self.n {
            if assigned.contains(u) || tried_classes.contains(&self.twin_class[u]) {
                continue;
            }
            tried_classes.push(self.twin_class[u]);
            self.label[u] = a;
            let now = assigned.with(u);
            let before = self.image.len();
            let mut fresh: Vec<VertexSet> = self.by_vertex[u]
                .iter()
                .map(|&i| self.facets[i])
                .filter(|f| f.is_subset(now))
                .map(|f| f.map(|v| self.label[v]))
                .collect();
            fresh.sort_unstable();
            self.image.extend(fresh);
            match self.compare(a + 1) {
                Ordering::Greater => {}
                Ordering::Less if self.check_mode => {
                    self.found_smaller = true;
                }
                _ => self.descend(a + 1, now),
            }
            self.image.truncate(before);
            self.label[u] = usize::MAX;
            if self.found_smaller {
                return;
            }
        }
    }
}

/// Classes of the relation "the transposition `(u v)` maps the facet set to
/// itself", which is an equivalence relation.
fn twin_classes(n: usize, facets: &[VertexSet]) -> Vec<usize> {
    let mut class: Vec<usize> = (0..n).collect();
    // link-like signature: facets through u with u removed, excluding v
    let star = |u: usize, v: usize| -> Vec<VertexSet> {
        let mut s: Vec<VertexSet> = facets
            .iter()
            .filter(|f| f.contains(u) && !f.contains(v))
            .map(|f| f.without(u))
            .collect();
        s.sort_unstable();
        s
    };
    for u in 0..n {
        if class[u] != u {
            continue;
        }
        for (v, cv) in class.iter_mut().enumerate().skip(u + 1) {
            if *cv == v && star(u, v) == star(v, u) {
                *cv = u;
            }
        }
    }
    class
}

fn invariant_form(n: usize, facets: &[VertexSet]) -> CanonicalForm {
    let degree = |v: usize| facets.iter().filter(|f| f.contains(v)).count();
    let signature = |v: usize| {
        let mut around: Vec<usize> = facets
            .iter()
            .filter(|f| f.contains(v))
            .flat_map(|f| f.without(v).iter())
            .map(degree)
            .collect();
        around.sort_unstable();
        (degree(v), around)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_cached_key(|&v| (signature(v), v));
    let mut labeling = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        labeling[old] = new;
    }
    let mut image: Vec<VertexSet> = facets.iter().map(|f| f.map(|v| labeling[v])).collect();
    image.sort_unstable();
    CanonicalForm {
        n,
        facets: image,
        labeling,
        exact: false,
    }
}

/// A vertex map `perm` with `a.relabel(perm)` having the facets of `b`, if
/// one exists. Backtracking over degree-compatible images.
pub fn isomorphism(a: &SimplicialComplex, b: &SimplicialComplex) -> Option<Vec<usize>> {
    let n = a.n();
    if n != b.n() || a.num_facets() != b.num_facets() {
        return None;
    }
    let profile = |cx: &SimplicialComplex| {
        let mut sizes: Vec<usize> = cx.facets().iter().map(|f| f.len()).collect();
        sizes.sort_unstable();
        sizes
    };
    if profile(a) != profile(b) {
        return None;
    }
    let deg = |cx: &SimplicialComplex| -> Vec<usize> {
        (0..n)
            .map(|v| cx.facets().iter().filter(|f| f.contains(v)).count())
            .collect()
    };
    let (da, db) = (deg(a), deg(b));
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    // visit vertices of `a` outward from the highest degree one so facets
    // complete (and constrain) early
    let mut order = Vec::with_capacity(n);
    let mut placed = VertexSet::EMPTY;
    while order.len() < n {
        let root = (0..n)
            .filter(|&v| !placed.contains(v))
            .max_by_key(|&v| (da[v], std::cmp::Reverse(v)))
            .expect("vertex left");
        let mut queue = std::collections::VecDeque::from([root]);
        placed = placed.with(root);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for f in a.facets().iter().filter(|f| f.contains(v)) {
                for w in f.iter() {
                    if !placed.contains(w) {
                        placed = placed.with(w);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    let target: HashSet<VertexSet> = b.facets().iter().copied().collect();
    let mut state = IsoState {
        a,
        da: &da,
        db: &db,
        target: &target,
        order: &order,
        map: vec![usize::MAX; n],
        used: VertexSet::EMPTY,
        mapped: VertexSet::EMPTY,
    };
    state.extend(0).then_some(state.map)
}

struct IsoState<'a> {
    a: &'a SimplicialComplex,
    da: &'a [usize],
    db: &'a [usize],
    target: &'a HashSet<VertexSet>,
    order: &'a [usize],
    map: Vec<usize>,
    used: VertexSet,
    mapped: VertexSet,
}

impl IsoState<'_> {
    fn extend(&mut self, i: usize) -> bool {
        let Some(&v) = self.order.get(i) else {
            return true;
        };
        for w in 0..self.map.len() {
            if self.used.contains(w) || self.db[w] != self.da[v] {
                continue;
            }
            self.map[v] = w;
            self.used = self.used.with(w);
            self.mapped = self.mapped.with(v);
            let consistent = self
                .a
                .facets()
                .iter()
                .filter(|f| f.contains(v) && f.is_subset(self.mapped))
                .all(|f| self.target.contains(&f.map(|x| self.map[x])));
            if consistent && self.extend(i + 1) {
                return true;
            }
            self.mapped = self.mapped.without(v);
            self.used = self.used.without(w);
            self.map[v] = usize::MAX;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex_set::letters;

    fn cx(facets: &[&str], n: Option<usize>) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|s| letters(s)), n).unwrap()
    }

    #[test]
    fn paths_agree() {
        let a = canonical_form(&cx(&["AB", "BC"], None));
        let b = canonical_form(&cx(&["BC", "CA"], None));
        assert_eq!(a.facets, b.facets);
        assert_eq!(a.facets, vec![letters("AB"), letters("AC")]);
    }

    #[test]
    fn path_and_triangle_differ() {
        let path = canonical_form(&cx(&["AB", "BC", "CD"], None));
        let tri = canonical_form(&cx(&["AB", "BC", "AC"], None));
        assert_ne!(path.facets, tri.facets);
    }

    #[test]
    fn labeling_reproduces_key() {
        let c = cx(&["ABD", "BCE", "ACF", "DEF"], None);
        let form = canonical_form(&c);
        let relabeled = c.relabel(&form.labeling).unwrap();
        assert_eq!(relabeled.facets(), &form.facets[..]);
    }

    #[test]
    fn canonical_check() {
        assert!(is_canonical(3, &[letters("AB"), letters("AC")]));
        assert!(!is_canonical(3, &[letters("AB"), letters("BC")]));
        assert!(is_canonical(4, &[letters("AB")]));
        assert!(!is_canonical(4, &[letters("CD")]));
    }

    #[test]
    fn isomorphism_found_and_refused() {
        let a = cx(&["AB", "BC", "CD"], None);
        let b = cx(&["AC", "CB", "BD"], None);
        let perm = isomorphism(&a, &b).unwrap();
        assert_eq!(a.relabel(&perm).unwrap().facets(), b.facets());
        let star = cx(&["AB", "AC", "AD"], None);
        assert!(isomorphism(&a, &star).is_none());
    }
}
