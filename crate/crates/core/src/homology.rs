//! Reduced simplicial homology with rational coefficients.
//!
//! Ranks come from fraction-free (Bareiss) elimination in `i128` with
//! overflow checks, redone in arbitrary precision if an entry overflows.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex};

/// `∂_k`: rows are the `(k-1)`-faces, columns the `k`-faces. For `k = 0`
/// the single row is the empty face (augmented chain complex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: Vec<Face>,
    pub cols: Vec<Face>,
    pub entries: Vec<Vec<i64>>,
}

impl BoundaryMatrix {
    pub fn rank(&self) -> usize {
        rank_rational(&self.entries)
    }

    pub fn rank_gf2(&self) -> usize {
        rank_gf2(&self.entries)
    }

    /// `self * other` as plain integer matrices.
    pub fn compose(&self, other: &BoundaryMatrix) -> Vec<Vec<i64>> {
        let inner = other.rows.len();
        assert_eq!(self.cols.len(), inner);
        let mut out = vec![vec![0i64; other.cols.len()]; self.rows.len()];
        for (i, row) in self.entries.iter().enumerate() {
            for (k, &a) in row.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in other.entries[k].iter().enumerate() {
                    out[i][j] += a * b;
                }
            }
        }
        out
    }
}

/// JSON shape attached to CLI reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub betti: Vec<usize>,
    pub euler: i64,
}

pub fn boundary_matrix(c: &SimplicialComplex, k: isize) -> BoundaryMatrix {
    let cols: Vec<Face> = c.faces_of_dim(k).collect();
    let rows: Vec<Face> = c.faces_of_dim(k - 1).collect();
    let index: HashMap<Face, usize> = rows.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut entries = vec![vec![0i64; cols.len()]; rows.len()];
    for (j, &f) in cols.iter().enumerate() {
        for (i, v) in f.vertices().enumerate() {
            let r = index[&f.without(v)];
            entries[r][j] = if i % 2 == 0 { 1 } else { -1 };
        }
    }
    BoundaryMatrix { rows, cols, entries }
}

/// `β̃_0 .. β̃_dim`. Empty for the complex `{∅}`, whose only nonzero
/// reduced Betti number sits in degree −1 (see [`reduced_betti`]).
pub fn reduced_betti_numbers(c: &SimplicialComplex) -> Vec<usize> {
    let d = c.dimension();
    if d < 0 {
        return Vec::new();
    }
    let ranks: Vec<usize> = (0..=d + 1).map(|k| boundary_matrix(c, k).rank()).collect();
    (0..=d as usize)
        .map(|i| c.faces_of_dim(i as isize).count() - ranks[i] - ranks[i + 1])
        .collect()
}

/// `β̃_i` for any `i ≥ −1`.
pub fn reduced_betti(c: &SimplicialComplex, i: isize) -> usize {
    if i == -1 {
        return usize::from(c.dimension() == -1);
    }
    reduced_betti_numbers(c).get(i as usize).copied().unwrap_or(0)
}

pub fn homology_summary(c: &SimplicialComplex) -> HomologySummary {
    HomologySummary {
        betti: reduced_betti_numbers(c),
        euler: c.euler_characteristic(),
    }
}

/// `β̃_i(lk σ) = 0` for `-1 ≤ i < dim c − |σ|`.
fn link_vanishes(c: &SimplicialComplex, face: Face) -> bool {
    let lk = c.link(face).expect("face comes from the complex");
    let top = c.dimension() - face.len() as isize;
    if top <= -1 {
        return true;
    }
    if lk.dimension() == -1 {
        return false;
    }
    let betti = reduced_betti_numbers(&lk);
    if lk.dimension() <= 1 {
        for k in 0..=lk.dimension() + 1 {
            let m = boundary_matrix(&lk, k);
            assert_eq!(m.rank(), m.rank_gf2(), "rational and GF(2) ranks differ on a graph");
        }
    }
    betti.iter().take(top.max(0) as usize).all(|&b| b == 0)
}

/// Pure, and every nonempty face has a link with vanishing reduced
/// homology below `dim − |σ|`.
pub fn is_buchsbaum_homological(c: &SimplicialComplex) -> bool {
    c.is_pure()
        && c
            .faces()
            .iter()
            .filter(|f| !f.is_empty())
            .all(|&f| link_vanishes(c, f))
}

/// The Buchsbaum condition extended to the empty face.
pub fn is_cm_homological(c: &SimplicialComplex) -> bool {
    is_buchsbaum_homological(c) && link_vanishes(c, Face::EMPTY)
}

/// Rank over `Q`.
pub fn rank_rational(m: &[Vec<i64>]) -> usize {
    let wide: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    match bareiss_i128(wide) {
        Some(r) => r,
        None => {
            log::debug!("i128 overflow in elimination, retrying with big integers");
            bareiss_big(m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
        }
    }
}

#[allow(clippy::needless_range_loop)]
fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r][col] != 0) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][col];
        for i in rank + 1..rows {
            let lead = a[i][col];
            for j in col + 1..cols {
                let x = pivot.checked_mul(a[i][j])?;
                let y = lead.checked_mul(a[rank][j])?;
                a[i][j] = x.checked_sub(y)? / prev;
            }
            a[i][col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

#[allow(clippy::needless_range_loop)]
fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let zero = BigInt::from(0);
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r][col] != zero) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for i in rank + 1..rows {
            let lead = a[i][col].clone();
            for j in col + 1..cols {
                a[i][j] = (&pivot * &a[i][j] - &lead * &a[rank][j]) / &prev;
            }
            a[i][col] = zero.clone();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank over `GF(2)`.
pub fn rank_gf2(m: &[Vec<i64>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let words = cols.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = m
        .iter()
        .map(|r| {
            let mut w = vec![0u64; words];
            for (j, &x) in r.iter().enumerate() {
                if x.rem_euclid(2) == 1 {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            w
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in rows.iter_mut().skip(rank + 1) {
            if r[w] & b != 0 {
                r.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::matching_complex;
    use crate::graph::{named, Graph};

    fn m(g: &Graph) -> SimplicialComplex {
        matching_complex(g).unwrap()
    }

    #[test]
    fn betti_spot_values() {
        assert_eq!(reduced_betti_numbers(&m(&named::cycle(7).unwrap())), vec![0, 1, 0]);
        assert_eq!(reduced_betti_numbers(&m(&named::cycle(4).unwrap())), vec![1, 0]);
        let triangle_boundary =
            SimplicialComplex::from_facets(vec!["a".into(), "b".into(), "c".into()], &[vec![0, 1], vec![1, 2], vec![0, 2]])
                .unwrap();
        assert_eq!(reduced_betti_numbers(&triangle_boundary), vec![0, 1]);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let c = m(&named::complete(7).unwrap());
        for k in 0..=c.dimension() {
            let prod = boundary_matrix(&c, k).compose(&boundary_matrix(&c, k + 1));
            assert!(prod.iter().flatten().all(|&x| x == 0), "k = {k}");
        }
    }

    #[test]
    fn verdicts() {
        assert!(is_cm_homological(&m(&named::complete_bipartite(2, 3).unwrap())));
        let c4 = m(&named::cycle(4).unwrap());
        assert!(!is_cm_homological(&c4));
        assert!(is_buchsbaum_homological(&c4));
        assert!(is_cm_homological(&m(&named::complete(2).unwrap())));
        assert!(is_buchsbaum_homological(&m(&named::cycle(7).unwrap())));
        let k4 = m(&named::complete(4).unwrap());
        assert!(is_buchsbaum_homological(&k4));
        assert!(!is_cm_homological(&k4));
        assert!(!is_buchsbaum_homological(&m(&named::path(4).unwrap())));
    }

    #[test]
    fn ranks_agree_and_big_path_works() {
        let a = vec![vec![2, 0, 4], vec![0, 1, 1], vec![2, 1, 5]];
        assert_eq!(rank_rational(&a), 2);
        assert_eq!(rank_gf2(&a), 1);
        let big: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(bareiss_big(big), 2);
        assert_eq!(rank_rational(&[]), 0);
    }

    #[test]
    fn euler_identity() {
        for g in [named::cycle(7).unwrap(), named::complete(6).unwrap(), named::bowtie()] {
            let c = m(&g);
            let alt: i64 = reduced_betti_numbers(&c)
                .iter()
                .enumerate()
                .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            assert_eq!(c.euler_characteristic(), 1 + alt);
        }
    }
}
