//! Bitset versions of the (S2) and diameter checks for the search hot path.
//! Facet positions within a node (at most 128) index the bits.

use crate::vertex_set::VertexSet;

/// Dual-graph diameter when the facet set is pure of size `d` and (S2);
/// `None` otherwise.
pub(crate) fn s2_diameter(facets: &[VertexSet], d: usize) -> Option<usize> {
    let k = facets.len();
    debug_assert!(k <= 128);
    let all = if k == 128 {
        u128::MAX
    } else {
        (1u128 << k) - 1
    };
    let mut adj = vec![0u128; k];
    for i in 0..k {
        for j in i + 1..k {
            if facets[i].intersection(facets[j]).len() + 1 == d {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    let mut components: Vec<(VertexSet, Vec<u128>)> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if adj[i] >> j & 1 == 1 {
                continue;
            }
            let sep = facets[i].intersection(facets[j]);
            let pos = match components.iter().position(|(s, _)| *s == sep) {
                Some(p) => p,
                None => {
                    let mask = (0..k)
                        .filter(|&x| sep.is_subset(facets[x]))
                        .fold(0u128, |m, x| m | 1 << x);
                    components.push((sep, split_components(&adj, mask)));
                    components.len() - 1
                }
            };
            let comps = &components[pos].1;
            let ci = comps.iter().position(|c| c >> i & 1 == 1);
            if ci != comps.iter().position(|c| c >> j & 1 == 1) {
                return None;
            }
        }
    }
    let mut diameter = 0;
    for s in 0..k {
        let (mut seen, mut frontier, mut ecc) = (1u128 << s, 1u128 << s, 0);
        while seen != all {
            let mut next = 0u128;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[v];
            }
            next &= !seen;
            if next == 0 {
                return None;
            }
            seen |= next;
            frontier = next;
            ecc += 1;
        }
        diameter = diameter.max(ecc);
    }
    Some(diameter)
}

fn split_components(adj: &[u128], mask: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut left = mask;
    while left != 0 {
        let root = left.trailing_zeros() as usize;
        let (mut comp, mut frontier) = (1u128 << root, 1u128 << root);
        while frontier != 0 {
            let mut next = 0u128;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[v];
            }
            next &= mask & !comp;
            comp |= next;
            frontier = next;
        }
        out.push(comp);
        left &= !comp;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::dual_graph::{complex_diameter, Distance};
    use crate::serre::is_s2;
    use crate::vertex_set::letters;

    #[test]
    fn agrees_with_public_checkers() {
        let cases: &[&[&str]] = &[
            &["AB", "BC", "CD", "DE"],
            &["ABC", "ADE"],
            &["AB", "CD"],
            &["ABC", "ABD", "ACD", "BCD"],
            &[
                "CDG", "AEG", "CEG", "ADG", "ABD", "BCE", "ABC", "AEF", "CDF", "DEF",
            ],
        ];
        for facets in cases {
            let sets: Vec<VertexSet> = facets.iter().map(|s| letters(s)).collect();
            let cx = SimplicialComplex::from_facets(sets, None).unwrap();
            let d = cx.d().unwrap();
            let expected = if is_s2(&cx).unwrap().holds {
                match complex_diameter(&cx).unwrap() {
                    Distance::Finite(x) => Some(x),
                    Distance::Unbounded => None,
                }
            } else {
                None
            };
            assert_eq!(s2_diameter(cx.facets(), d), expected, "{facets:?}");
        }
    }
}
