//! Brute-force ground truth for small grids.
//!
//! Nothing here shares code with the winding matrix or the detector: grid
//! states are enumerated exhaustively and winding numbers are recomputed by
//! casting a ray against the closed polygon traced by the knot.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::grid::{GridState, VertList};
use crate::winding::WindingMatrix;

/// Largest grid the oracle will enumerate (8! = 40320 states).
pub const ORACLE_LIMIT: usize = 8;

const WITNESS_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub size: usize,
    pub max_winding: i64,
    pub argmax_count: usize,
    /// `min(row number, column number)`, recomputed from scratch.
    pub bound: i64,
    /// States whose winding value equals `bound`.
    pub perfect_count: usize,
    /// Maximizers in lexicographic order, at most 64 of them.
    pub witness_states: Vec<GridState>,
}

impl OracleReport {
    pub fn perfect_states(&self) -> &[GridState] {
        if self.max_winding == self.bound {
            &self.witness_states
        } else {
            &[]
        }
    }
}

/// Evaluates the winding function on all `n!` grid states.
pub fn enumerate_states(m: &WindingMatrix) -> Result<OracleReport> {
    let n = m.size();
    if n > ORACLE_LIMIT {
        return Err(Error::OracleTooLarge {
            size: n,
            limit: ORACLE_LIMIT,
        });
    }
    let row_bound: i64 = -(0..n)
        .map(|i| (0..n).map(|j| m.get(i, j) as i64).min().unwrap_or(0))
        .sum::<i64>();
    let col_bound: i64 = -(0..n)
        .map(|j| (0..n).map(|i| m.get(i, j) as i64).min().unwrap_or(0))
        .sum::<i64>();
    let bound = row_bound.min(col_bound);

    let mut max_winding = i64::MIN;
    let mut argmax_count = 0;
    let mut perfect_count = 0;
    let mut witnesses = Vec::new();
    for perm in (0..n).permutations(n) {
        let value: i64 = -perm
            .iter()
            .enumerate()
            .map(|(col, &row)| m.get(row, col) as i64)
            .sum::<i64>();
        if value == bound {
            perfect_count += 1;
        }
        if value > max_winding {
            max_winding = value;
            argmax_count = 0;
            witnesses.clear();
        }
        if value == max_winding {
            argmax_count += 1;
            if witnesses.len() < WITNESS_CAP {
                witnesses.push(perm);
            }
        }
    }
    Ok(OracleReport {
        size: n,
        max_winding,
        argmax_count,
        bound,
        perfect_count,
        witness_states: witnesses
            .into_iter()
            .map(|p| GridState::new(p).expect("enumerated permutation"))
            .collect(),
    })
}

/// Polygon through the marker centres in doubled coordinates: the centre of
/// cell `(col, row)` is `(2 col + 1, 2 row + 1)` and lattice line `k` sits at
/// `2 k`. The y axis points down the page.
fn polygon(v: &VertList) -> Vec<(i64, i64)> {
    let n = v.size();
    let mut tail_col = vec![0; n];
    for c in 0..n {
        tail_col[v.segment(c).tail()] = c;
    }
    let mut pts = Vec::with_capacity(2 * n);
    let mut col = 0;
    for _ in 0..n {
        let s = v.segment(col);
        pts.push((2 * col as i64 + 1, 2 * s.tail() as i64 + 1));
        pts.push((2 * col as i64 + 1, 2 * s.head() as i64 + 1));
        col = tail_col[s.head()];
    }
    pts
}

/// Counterclockwise winding number of the knot projection around the lattice
/// point on horizontal line `line_row` and vertical line `line_col`, for the
/// planar realization `v`. Lines range over `0..=n`.
///
/// Casts a ray towards positive x and counts signed edge crossings.
pub fn ray_cast_winding(v: &VertList, line_row: usize, line_col: usize) -> i32 {
    let pts = polygon(v);
    // Flip to a y-up frame so counterclockwise has its usual meaning.
    let (px, py) = (2 * line_col as i64, -(2 * line_row as i64));
    let mut w = 0;
    for k in 0..pts.len() {
        let (x0, y0) = (pts[k].0, -pts[k].1);
        let (x1, y1) = (pts[(k + 1) % pts.len()].0, -pts[(k + 1) % pts.len()].1);
        let side = (x1 - x0) * (py - y0) - (px - x0) * (y1 - y0);
        if y0 <= py {
            if y1 > py && side > 0 {
                w += 1;
            }
        } else if y1 <= py && side < 0 {
            w -= 1;
        }
    }
    w
}

/// Alexander grading computed point by point from ray-cast winding numbers.
pub fn brute_alexander(v: &VertList, x: &GridState) -> Result<i64> {
    let n = v.size();
    if x.size() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: x.size(),
        });
    }
    let state_sum: i64 = (0..n)
        .map(|col| ray_cast_winding(v, x.row(col), col) as i64)
        .sum();
    let mut corner_sum = 0i64;
    for col in 0..n {
        let s = v.segment(col);
        for row in [s.tail(), s.head()] {
            for (dr, dc) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                corner_sum += ray_cast_winding(v, row + dr, col + dc) as i64;
            }
        }
    }
    // 8 A = -8 sum w(x) + sum w(p) - 4 (n - 1)
    let eight_a = -8 * state_sum + corner_sum - 4 * (n as i64 - 1);
    if eight_a % 8 != 0 {
        return Err(Error::Internal(format!(
            "brute-force Alexander grading of {x} on {v} is {eight_a}/8"
        )));
    }
    Ok(eight_a / 8)
}

/// Winding matrix assembled from [`ray_cast_winding`].
pub fn ray_cast_matrix(v: &VertList) -> WindingMatrix {
    let n = v.size();
    let rows: Vec<Vec<i32>> = (0..n)
        .map(|i| (0..n).map(|j| ray_cast_winding(v, i, j)).collect())
        .collect();
    WindingMatrix::from_rows(&rows).expect("square")
}

/// Random knot diagram of size `n >= 2`: X and O rows are drawn as two
/// permutations that disagree in every column, and samples whose markers form
/// a link with several components are rejected.
pub fn random_knot_diagram<R: Rng + ?Sized>(rng: &mut R, n: usize) -> VertList {
    assert!(n >= 2, "a knot grid has size at least 2");
    loop {
        let mut xs: Vec<usize> = (0..n).collect();
        let mut os: Vec<usize> = (0..n).collect();
        xs.shuffle(rng);
        os.shuffle(rng);
        if xs.iter().zip(&os).any(|(a, b)| a == b) {
            continue;
        }
        let pairs: Vec<(usize, usize)> = os.into_iter().zip(xs).collect();
        if let Ok(v) = VertList::new(&pairs) {
            return v;
        }
    }
}

/// Uniformly random grid state of size `n`.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, n: usize) -> GridState {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    GridState::new(p).expect("shuffled identity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::winding::w_matrix;

    fn m(rows: &[Vec<i32>]) -> WindingMatrix {
        WindingMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn unknot_report() {
        let r = enumerate_states(&m(&[vec![0, 0], vec![0, -1]])).unwrap();
        assert_eq!(r.max_winding, 1);
        assert_eq!(r.argmax_count, 1);
        assert_eq!(r.perfect_count, 1);
        assert_eq!(r.perfect_states(), &[GridState::identity(2)]);
    }

    #[test]
    fn example_matrix_has_three_perfect_states() {
        let r = enumerate_states(&m(&[
            vec![-1, 0, -1, 2, 0],
            vec![0, 1, 0, 0, 0],
            vec![-1, -2, 1, 1, -2],
            vec![-1, -2, -1, 3, -2],
            vec![1, -1, 3, 1, -3],
        ]))
        .unwrap();
        assert_eq!(r.bound, 7);
        assert_eq!(r.max_winding, 7);
        assert_eq!(r.perfect_count, 3);
        let got: Vec<String> = r.perfect_states().iter().map(|s| s.to_string()).collect();
        assert_eq!(got, vec!["(1,3,4,2,5)", "(3,4,1,2,5)", "(4,3,1,2,5)"]);
    }

    #[test]
    fn zero_matrix_ties_everywhere() {
        let r = enumerate_states(&WindingMatrix::zeros(3)).unwrap();
        assert_eq!(r.argmax_count, 6);
        assert_eq!(r.max_winding, 0);
        assert_eq!(r.perfect_count, 6);
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            enumerate_states(&WindingMatrix::zeros(9)),
            Err(Error::OracleTooLarge { size: 9, limit: 8 })
        ));
    }

    #[test]
    fn unknot_brute_gradings() {
        let v: VertList = "(2,1),(1,2)".parse().unwrap();
        let id = GridState::identity(2);
        let swap = GridState::from_one_based(&[2, 1]).unwrap();
        assert_eq!(brute_alexander(&v, &id).unwrap(), 0);
        assert_eq!(brute_alexander(&v, &swap).unwrap(), -1);
    }

    #[test]
    fn trefoil_brute_grading() {
        let v: VertList = "(3,1),(4,2),(5,3),(1,4),(2,5)".parse().unwrap();
        assert_eq!(brute_alexander(&v, &GridState::identity(5)).unwrap(), 1);
        assert_eq!(ray_cast_matrix(&v), w_matrix(&v));
    }

    #[test]
    fn boundary_points_wind_zero() {
        let v: VertList = "(3,1),(4,2),(5,3),(1,4),(2,5)".parse().unwrap();
        for k in 0..=5 {
            assert_eq!(ray_cast_winding(&v, 0, k), 0);
            assert_eq!(ray_cast_winding(&v, 5, k), 0);
            assert_eq!(ray_cast_winding(&v, k, 0), 0);
            assert_eq!(ray_cast_winding(&v, k, 5), 0);
        }
    }
}
