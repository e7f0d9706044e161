//! Reduced simplicial homology over ℚ or a prime field.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub const GF2: Field = Field::Prime(2);

    /// Field of characteristic `p` (`0` means ℚ).
    pub fn with_characteristic(p: u32) -> Result<Field> {
        match p {
            0 => Ok(Field::Rational),
            p if is_prime(p) => Ok(Field::Prime(p)),
            p => Err(Error::NotPrime(p)),
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|k| k * k <= p)
            .all(|k| !p.is_multiple_of(k))
}

/// Reduced Betti numbers `β̃_{-1}, β̃_0, …, β̃_top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    reduced_betti: Vec<usize>,
    field: Field,
}

impl BettiVector {
    pub fn field(&self) -> Field {
        self.field
    }

    /// Entries starting at dimension -1.
    pub fn as_slice(&self) -> &[usize] {
        &self.reduced_betti
    }

    /// `β̃_i`; zero outside the stored range.
    pub fn get(&self, dim: isize) -> usize {
        usize::try_from(dim + 1)
            .ok()
            .and_then(|i| self.reduced_betti.get(i).copied())
            .unwrap_or(0)
    }

    /// True when `β̃_i = 0` for every `i < dim`.
    pub fn vanishes_below(&self, dim: isize) -> bool {
        (-1..dim).all(|i| self.get(i) == 0)
    }
}

/// All faces grouped by cardinality (index 0 holds the empty face).
fn faces_by_size(cx: &SimplicialComplex) -> Vec<Vec<VertexSet>> {
    let top = cx.facets().iter().map(|f| f.len()).max().unwrap_or(0);
    let mut seen: Vec<std::collections::HashSet<VertexSet>> = vec![Default::default(); top + 1];
    for &f in cx.facets() {
        let verts: Vec<usize> = f.iter().collect();
        assert!(verts.len() < 32, "facet too large for face enumeration");
        for mask in 0u32..(1 << verts.len()) {
            let face: VertexSet = verts
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            seen[face.len()].insert(face);
        }
    }
    seen.into_iter()
        .map(|s| {
            let mut v: Vec<VertexSet> = s.into_iter().collect();
            v.sort_unstable();
            v
        })
        .collect()
}

/// Computes reduced homology ranks from the simplicial boundary maps.
pub fn reduced_betti(cx: &SimplicialComplex, field: Field) -> BettiVector {
    let faces = faces_by_size(cx);
    // ranks[k] = rank of ∂ from size-k faces to size-(k-1) faces
    let mut ranks = vec![0usize; faces.len() + 1];
    for k in 1..faces.len() {
        let rows: HashMap<VertexSet, usize> = faces[k - 1]
            .iter()
            .enumerate()
            .map(|(i, &f)| (f, i))
            .collect();
        let mut matrix = vec![vec![0i64; faces[k].len()]; faces[k - 1].len()];
        for (col, &face) in faces[k].iter().enumerate() {
            for (pos, v) in face.iter().enumerate() {
                let row = rows[&face.without(v)];
                matrix[row][col] = if pos % 2 == 0 { 1 } else { -1 };
            }
        }
        ranks[k] = match field {
            Field::Rational => rank_rational(matrix),
            Field::Prime(p) => rank_mod_p(matrix, p),
        };
    }
    let reduced_betti = (0..faces.len())
        .map(|k| faces[k].len() - ranks[k] - ranks[k + 1])
        .collect();
    BettiVector {
        reduced_betti,
        field,
    }
}

/// Rank over GF(p) by Gaussian elimination.
pub(crate) fn rank_mod_p(matrix: Vec<Vec<i64>>, p: u32) -> usize {
    let p = p as i64;
    let mut a: Vec<Vec<i64>> = matrix
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = mod_pow(a[rank][c], p - 2, p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let factor = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x - factor * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_pow(mut base: i64, mut exp: i64, p: i64) -> i64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Exact rank over ℚ.
///
/// Eliminates on ±1 pivots while they exist, then finishes the remaining
/// block with fraction-free Bareiss elimination over big integers. If an
/// i64 entry would overflow, the whole matrix goes to Bareiss instead.
pub(crate) fn rank_rational(matrix: Vec<Vec<i64>>) -> usize {
    match unit_pivot_reduce(matrix.clone()) {
        Some((rank, rest)) if rest.is_empty() => rank,
        Some((rank, rest)) => rank + bareiss_rank(to_big(rest)),
        None => bareiss_rank(to_big(matrix)),
    }
}

fn to_big(a: Vec<Vec<i64>>) -> Vec<Vec<BigInt>> {
    a.into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect()
}

/// Repeatedly eliminates on a ±1 entry. Returns the number of pivots used
/// and the nonzero rows left over, or `None` on overflow.
fn unit_pivot_reduce(mut a: Vec<Vec<i64>>) -> Option<(usize, Vec<Vec<i64>>)> {
    let mut rank = 0;
    loop {
        a.retain(|row| row.iter().any(|&x| x != 0));
        let unit = a
            .iter()
            .enumerate()
            .find_map(|(r, row)| row.iter().position(|&x| x == 1 || x == -1).map(|c| (r, c)));
        let Some((pr, pc)) = unit else {
            return Some((rank, a));
        };
        let pivot_row = a.swap_remove(pr);
        let sign = pivot_row[pc];
        for row in a.iter_mut() {
            let factor = row[pc] * sign;
            if factor == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = factor.checked_mul(y).and_then(|t| x.checked_sub(t))?;
            }
        }
        rank += 1;
    }
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Number of connected components of the underlying topological space,
/// computed by union-find over facets sharing a vertex.
pub fn component_count(cx: &SimplicialComplex) -> usize {
    let facets = cx.facets();
    let m = facets.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..m {
        for j in i + 1..m {
            if !facets[i].intersection(facets[j]).is_empty() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    if facets.iter().all(|f| f.is_empty()) {
        return 0;
    }
    (0..m).filter(|&i| find(&mut parent, i) == i).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex_set::letters;

    fn cx(facets: &[&str]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|s| letters(s)), None).unwrap()
    }

    #[test]
    fn circle() {
        for field in [Field::Rational, Field::GF2, Field::Prime(3)] {
            let b = reduced_betti(&cx(&["AB", "BC", "AC"]), field);
            assert_eq!(b.as_slice(), &[0, 0, 1]);
        }
    }

    #[test]
    fn solid_triangle_is_acyclic() {
        let b = reduced_betti(&cx(&["ABC"]), Field::Rational);
        assert!(b.as_slice().iter().all(|&x| x == 0));
    }

    #[test]
    fn empty_face_complex() {
        let b = reduced_betti(&SimplicialComplex::empty_face_complex(), Field::GF2);
        assert_eq!(b.as_slice(), &[1]);
        assert!(b.vanishes_below(-1));
        assert!(!b.vanishes_below(0));
    }

    #[test]
    fn two_points() {
        let b = reduced_betti(&cx(&["A", "B"]), Field::Rational);
        assert_eq!(b.get(0), 1);
        assert_eq!(component_count(&cx(&["A", "B"])), 2);
    }

    #[test]
    fn projective_plane_depends_on_field() {
        // six-vertex triangulation of RP^2
        let rp2 = cx(&[
            "ABC", "ABD", "ACE", "ADF", "AEF", "BCF", "BDE", "BEF", "CDE", "CDF",
        ]);
        let q = reduced_betti(&rp2, Field::Rational);
        let f2 = reduced_betti(&rp2, Field::GF2);
        assert_eq!(q.as_slice(), &[0, 0, 0, 0]);
        assert_eq!(f2.as_slice(), &[0, 0, 1, 1]);
    }

    #[test]
    fn rational_rank_matches_bareiss_on_non_unit_blocks() {
        let m = vec![vec![2, 4], vec![4, 8], vec![0, 3]];
        assert_eq!(rank_rational(m.clone()), 2);
        assert_eq!(rank_mod_p(m, 2), 1);
    }

    #[test]
    fn characteristic_parsing() {
        assert_eq!(Field::with_characteristic(0).unwrap(), Field::Rational);
        assert_eq!(Field::with_characteristic(2).unwrap(), Field::GF2);
        assert_eq!(Field::with_characteristic(4), Err(Error::NotPrime(4)));
    }
}
