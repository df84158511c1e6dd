//! Winding matrices and the Alexander grading.
//!
//! For a planar realization of a grid diagram of size `n`, entry `(i, j)` of
//! the winding matrix is the winding number of the knot projection around the
//! lattice point where horizontal line `i` meets vertical line `j` (lines are
//! 0-based, line 0 being the top/left boundary). Winding numbers are counted
//! counterclockwise-positive; with a ray pointing west, a vertical segment to
//! the left of the point contributes `+1` when it runs downward.

use std::fmt;

use crate::error::{Error, Result};
use crate::grid::{GridState, VertList};

/// A square integer matrix, row index = horizontal line, column index =
/// vertical line.
///
/// Genuine winding matrices come from [`w_matrix`]; arbitrary integer matrices
/// are accepted as well so the perfect-state detector can be exercised on
/// hand-written examples.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WindingMatrix {
    n: usize,
    data: Vec<i32>,
}

impl WindingMatrix {
    pub fn zeros(n: usize) -> Self {
        WindingMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<i32>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(WindingMatrix { n, data })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> i32 {
        self.data[row * self.n + col]
    }

    #[inline]
    pub(crate) fn set(&mut self, row: usize, col: usize, value: i32) {
        self.data[row * self.n + col] = value;
    }

    pub fn row(&self, row: usize) -> &[i32] {
        &self.data[row * self.n..(row + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i32>> {
        self.data
            .chunks(self.n.max(1))
            .map(<[i32]>::to_vec)
            .collect()
    }

    pub fn transpose(&self) -> WindingMatrix {
        let n = self.n;
        let mut t = WindingMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn negated(&self) -> WindingMatrix {
        WindingMatrix {
            n: self.n,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn row_min(&self, row: usize) -> i32 {
        self.row(row).iter().copied().min().unwrap_or(0)
    }

    pub fn col_min(&self, col: usize) -> i32 {
        (0..self.n).map(|i| self.get(i, col)).min().unwrap_or(0)
    }

    /// Subtracts row `base` from every row.
    pub(crate) fn minus_row(&self, base: usize) -> WindingMatrix {
        let n = self.n;
        let base_row = self.row(base).to_vec();
        let mut out = self.clone();
        for row in out.data.chunks_mut(n) {
            for (x, b) in row.iter_mut().zip(&base_row) {
                *x -= b;
            }
        }
        out
    }

    /// Subtracts column `base` from every column.
    pub(crate) fn minus_col(&self, base: usize) -> WindingMatrix {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            let b = self.get(i, base);
            for j in 0..n {
                out.data[i * n + j] -= b;
            }
        }
        out
    }
}

impl fmt::Display for WindingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .data
            .iter()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{:>width$}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Row number and column number: negated sums of the row and column minima.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundPair {
    pub row_number: i64,
    pub col_number: i64,
}

impl BoundPair {
    /// Upper bound for the winding function of any grid state.
    pub fn bound(self) -> i64 {
        self.row_number.min(self.col_number)
    }
}

/// Direction of the ray used to count crossings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ray {
    West,
    East,
}

#[inline]
fn crossing_sign(v: &VertList, col: usize, line: usize) -> i32 {
    let s = v.segment(col);
    let (lo, hi) = s.span();
    if lo < line && line <= hi {
        if s.head() > s.tail() {
            1
        } else {
            -1
        }
    } else {
        0
    }
}

/// Winding matrix of the planar realization given by `v`.
pub fn w_matrix(v: &VertList) -> WindingMatrix {
    let n = v.size();
    let mut m = WindingMatrix::zeros(n);
    // Running prefix over columns: entry (i, j) sums the segments k < j.
    let mut running = vec![0i32; n];
    for j in 1..n {
        let s = v.segment(j - 1);
        let (lo, hi) = s.span();
        let sign = if s.head() > s.tail() { 1 } else { -1 };
        for r in running.iter_mut().take(hi + 1).skip(lo + 1) {
            *r += sign;
        }
        for (i, &r) in running.iter().enumerate() {
            m.set(i, j, r);
        }
    }
    m
}

/// Winding matrix computed with the chosen ray direction. Both directions give
/// the same matrix; the eastward variant exists to check that.
pub fn w_matrix_with(v: &VertList, ray: Ray) -> WindingMatrix {
    match ray {
        Ray::West => w_matrix(v),
        Ray::East => {
            let n = v.size();
            let mut m = WindingMatrix::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    let east: i32 = (j..n).map(|k| crossing_sign(v, k, i)).sum();
                    m.set(i, j, -east);
                }
            }
            m
        }
    }
}

pub fn bounds(m: &WindingMatrix) -> BoundPair {
    let n = m.size();
    BoundPair {
        row_number: -(0..n).map(|i| m.row_min(i) as i64).sum::<i64>(),
        col_number: -(0..n).map(|j| m.col_min(j) as i64).sum::<i64>(),
    }
}

/// The winding function `A'(x) = -sum of the winding numbers at the points of x`.
pub fn winding_value(m: &WindingMatrix, x: &GridState) -> Result<i64> {
    if m.size() != x.size() {
        return Err(Error::SizeMismatch {
            expected: m.size(),
            got: x.size(),
        });
    }
    Ok(-(0..m.size())
        .map(|col| m.get(x.row(col), col) as i64)
        .sum::<i64>())
}

/// The state-independent part of the Alexander grading: one eighth of the
/// winding numbers summed over the four corners of every marked square, minus
/// `(n - 1) / 2`.
pub fn alexander_constant(v: &VertList) -> Result<i64> {
    alexander_constant_from(v, &w_matrix(v))
}

pub(crate) fn alexander_constant_from(v: &VertList, m: &WindingMatrix) -> Result<i64> {
    let n = v.size();
    // Planar lattice is (n + 1) x (n + 1); the far boundary lines wind 0.
    let w = |i: usize, j: usize| -> i64 {
        if i == n || j == n {
            0
        } else {
            m.get(i, j) as i64
        }
    };
    let mut corners = 0i64;
    for col in 0..n {
        let s = v.segment(col);
        for row in [s.tail(), s.head()] {
            corners += w(row, col) + w(row, col + 1) + w(row + 1, col) + w(row + 1, col + 1);
        }
    }
    let eighths = corners - 4 * (n as i64 - 1);
    if eighths % 8 != 0 {
        return Err(Error::Internal(format!(
            "Alexander constant of {v} is not integral ({eighths}/8)"
        )));
    }
    Ok(eighths / 8)
}

/// Alexander grading of a grid state.
pub fn a_grading(v: &VertList, x: &GridState) -> Result<i64> {
    let m = w_matrix(v);
    Ok(winding_value(&m, x)? + alexander_constant_from(v, &m)?)
}
