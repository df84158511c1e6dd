//! Detection of unique perfect grid states.
//!
//! A grid state is column-perfect when it picks the minimum of every column of
//! the winding matrix, row-perfect when it picks the minimum of every row, and
//! perfect when its winding value reaches `min(row number, column number)`.
//!
//! [`reduce_pass`] decides in at most `n` minimum scans whether a unique
//! column-perfect (or row-perfect) state exists: a column whose original
//! minimum appears exactly once among the remaining rows forces that entry,
//! and forcing proceeds until either every column is fixed, some column has
//! lost all of its minimal entries, or no column has a unique minimal entry
//! left. In the last case [`new_perfect_state`] shows that the number of
//! such states is 0 or at least 2.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::grid::GridState;
use crate::winding::{bounds, BoundPair, WindingMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    Rows,
    Columns,
    Both,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Rows => "rows",
            Axis::Columns => "columns",
            Axis::Both => "both",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Unique(GridState),
    NoPerfect,
    Indeterminate,
}

impl Verdict {
    pub fn unique(&self) -> Option<&GridState> {
        match self {
            Verdict::Unique(x) => Some(x),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Unique(_) => "unique",
            Verdict::NoPerfect => "no-perfect",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PassOutcome {
    pub verdict: Verdict,
    pub min_detections: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetectionReport {
    pub verdict: Verdict,
    pub axis: Axis,
    pub min_detections: usize,
    pub bounds: BoundPair,
    /// `min(row number, column number)`.
    pub bound: i64,
}

static DETECTOR_CALLS: AtomicU64 = AtomicU64::new(0);
static DETECTION_BOUND_VIOLATIONS: AtomicU64 = AtomicU64::new(0);

/// Process-wide counters: `(detector invocations, invocations that needed more
/// than 2n minimum scans)`.
pub fn detector_counters() -> (u64, u64) {
    (
        DETECTOR_CALLS.load(Ordering::Relaxed),
        DETECTION_BOUND_VIOLATIONS.load(Ordering::Relaxed),
    )
}

/// Reduction for one axis. For [`Axis::Rows`] the matrix is read transposed
/// and the resulting row assignment is inverted back into a grid state.
///
/// # Panics
///
/// If called with [`Axis::Both`].
pub fn reduce_pass(m: &WindingMatrix, axis: Axis) -> PassOutcome {
    match axis {
        Axis::Columns => reduce_with(m.size(), |i, j| m.get(i, j)),
        Axis::Rows => {
            let out = reduce_with(m.size(), |i, j| m.get(j, i));
            PassOutcome {
                verdict: match out.verdict {
                    Verdict::Unique(x) => Verdict::Unique(x.inverse()),
                    other => other,
                },
                min_detections: out.min_detections,
            }
        }
        Axis::Both => panic!("reduce_pass runs on a single axis"),
    }
}

/// Column reduction over `get(row, col)`, forcing the lowest eligible column
/// first.
#[inline]
fn reduce_with(n: usize, get: impl Fn(usize, usize) -> i32) -> PassOutcome {
    reduce_ordered(n, get, |_| 0)
}

/// Column reduction where iteration `k` starts its search for a forced column
/// at column `start(k)` and proceeds cyclically.
#[inline]
fn reduce_ordered(
    n: usize,
    get: impl Fn(usize, usize) -> i32,
    mut start: impl FnMut(usize) -> usize,
) -> PassOutcome {
    let mins: Vec<i32> = (0..n)
        .map(|j| (0..n).map(|i| get(i, j)).min().unwrap_or(0))
        .collect();
    // Number of remaining rows holding the original minimum, per column.
    let mut count: Vec<usize> = (0..n)
        .map(|j| (0..n).filter(|&i| get(i, j) == mins[j]).count())
        .collect();
    let mut row_alive = vec![true; n];
    let mut col_alive = vec![true; n];
    let mut assign = vec![usize::MAX; n];
    let mut detections = 0;

    for k in 0..n {
        detections += 1;
        let mut pick = None;
        let first = start(k) % n;
        for j in (first..n).chain(0..first).filter(|&j| col_alive[j]) {
            match count[j] {
                0 => {
                    return PassOutcome {
                        verdict: Verdict::NoPerfect,
                        min_detections: detections,
                    }
                }
                1 if pick.is_none() => pick = Some(j),
                _ => {}
            }
        }
        let Some(j) = pick else {
            return PassOutcome {
                verdict: Verdict::Indeterminate,
                min_detections: detections,
            };
        };
        let i = (0..n)
            .find(|&i| row_alive[i] && get(i, j) == mins[j])
            .expect("count says one minimal entry remains");
        assign[j] = i;
        row_alive[i] = false;
        col_alive[j] = false;
        for k in 0..n {
            if col_alive[k] && get(i, k) == mins[k] {
                count[k] -= 1;
            }
        }
    }
    PassOutcome {
        verdict: Verdict::Unique(GridState::from_vec_unchecked(assign)),
        min_detections: detections,
    }
}

/// Decides whether the matrix has exactly one perfect grid state.
///
/// Only the axis with the smaller bound can carry perfect states; when the
/// row and column numbers agree, both passes run and must not contradict each
/// other.
pub fn detect_unique_perfect(m: &WindingMatrix) -> Result<DetectionReport> {
    let b = bounds(m);
    let n = m.size();
    let (verdict, axis, min_detections) = if b.row_number < b.col_number {
        let p = reduce_pass(m, Axis::Rows);
        (p.verdict, Axis::Rows, p.min_detections)
    } else if b.col_number < b.row_number {
        let p = reduce_pass(m, Axis::Columns);
        (p.verdict, Axis::Columns, p.min_detections)
    } else {
        let cols = reduce_pass(m, Axis::Columns);
        let rows = reduce_pass(m, Axis::Rows);
        let detections = cols.min_detections + rows.min_detections;
        let verdict = match (cols.verdict, rows.verdict) {
            (Verdict::Unique(a), Verdict::Unique(b)) => {
                if a != b {
                    return Err(Error::Internal(format!(
                        "column pass found {a}, row pass found {b}"
                    )));
                }
                Verdict::Unique(a)
            }
            // With equal bounds the perfect states are exactly the row-perfect
            // and exactly the column-perfect states, so the passes must agree.
            (Verdict::Unique(x), other) | (other, Verdict::Unique(x)) => {
                return Err(Error::Internal(format!(
                    "one pass found the unique perfect state {x}, the other reported {}",
                    other.name()
                )));
            }
            (Verdict::NoPerfect, _) | (_, Verdict::NoPerfect) => Verdict::NoPerfect,
            (Verdict::Indeterminate, Verdict::Indeterminate) => Verdict::Indeterminate,
        };
        (verdict, Axis::Both, detections)
    };
    DETECTOR_CALLS.fetch_add(1, Ordering::Relaxed);
    if min_detections > 2 * n {
        DETECTION_BOUND_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
    }
    Ok(DetectionReport {
        verdict,
        axis,
        min_detections,
        bounds: b,
        bound: b.bound(),
    })
}

/// A loop for `(M, sigma)`: columns `i_1, ..., i_k` and rows `j_1, ..., j_k`
/// with `M[j_r][i_r] == M[sigma(i_r)][i_r]`, `j_r = sigma(i_{r+1})` and
/// `j_k = sigma(i_1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixLoop {
    pub columns: Vec<usize>,
    pub rows: Vec<usize>,
}

impl MatrixLoop {
    /// The grid state that moves every loop column to its alternative row.
    pub fn swapped(&self, sigma: &GridState) -> GridState {
        let mut perm = sigma.as_slice().to_vec();
        for (&c, &r) in self.columns.iter().zip(&self.rows) {
            perm[c] = r;
        }
        GridState::from_vec_unchecked(perm)
    }
}

/// Finds a loop by depth-first search over columns, visiting successors in
/// increasing order; column `a` leads to column `b != a` when
/// `M[sigma(b)][a] == M[sigma(a)][a]`.
pub fn find_loop(m: &WindingMatrix, sigma: &GridState) -> Result<Option<MatrixLoop>> {
    let n = m.size();
    if sigma.size() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: sigma.size(),
        });
    }
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            let v = m.get(sigma.row(a), a);
            (0..n)
                .filter(|&b| b != a && m.get(sigma.row(b), a) == v)
                .collect()
        })
        .collect();

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        OnPath,
        Done,
    }
    let mut mark = vec![Mark::New; n];
    for start in 0..n {
        if mark[start] != Mark::New {
            continue;
        }
        // Explicit stack of (column, next successor index).
        let mut path: Vec<(usize, usize)> = vec![(start, 0)];
        mark[start] = Mark::OnPath;
        while let Some(top) = path.last_mut() {
            let node = top.0;
            if let Some(&b) = succ[node].get(top.1) {
                top.1 += 1;
                match mark[b] {
                    Mark::OnPath => {
                        let pos = path.iter().position(|&(c, _)| c == b).expect("on path");
                        let columns: Vec<usize> = path[pos..].iter().map(|&(c, _)| c).collect();
                        let rows = (0..columns.len())
                            .map(|r| sigma.row(columns[(r + 1) % columns.len()]))
                            .collect();
                        return Ok(Some(MatrixLoop { columns, rows }));
                    }
                    Mark::New => {
                        mark[b] = Mark::OnPath;
                        path.push((b, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                mark[node] = Mark::Done;
                path.pop();
            }
        }
    }
    Ok(None)
}

/// Alternative row choice per column, different from the state's row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TieChoice {
    rows: Vec<usize>,
}

impl TieChoice {
    pub fn new(sigma: &GridState, rows: Vec<usize>) -> Result<Self> {
        let n = sigma.size();
        if rows.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                got: rows.len(),
            });
        }
        for (i, &r) in rows.iter().enumerate() {
            if r >= n {
                return Err(Error::IndexOutOfRange { index: r, size: n });
            }
            if r == sigma.row(i) {
                return Err(Error::InvalidState(format!(
                    "tie choice for column {} equals the state's row",
                    i + 1
                )));
            }
        }
        Ok(TieChoice { rows })
    }

    pub fn from_one_based(sigma: &GridState, rows: &[usize]) -> Result<Self> {
        if rows.contains(&0) {
            return Err(Error::InvalidState("tie choices are 1-based".into()));
        }
        Self::new(sigma, rows.iter().map(|r| r - 1).collect())
    }

    pub fn row(&self, col: usize) -> usize {
        self.rows[col]
    }
}

/// Builds a permutation `tau != sigma` with `tau(i)` in `{sigma(i), J(i)}`.
///
/// Starting from column 1, each column is switched to its alternative row and
/// the column it collides with is switched next. Either the switched values
/// form a permutation, or a collision hits an already switched column, in
/// which case only the columns switched after it are kept.
pub fn new_perfect_state(sigma: &GridState, choice: &TieChoice) -> Result<GridState> {
    let n = sigma.size();
    if choice.rows.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: choice.rows.len(),
        });
    }
    if n == 0 {
        return Err(Error::InvalidState("empty permutation".into()));
    }
    let mut s = sigma.as_slice().to_vec();
    s[0] = choice.row(0);
    let mut current = 0;
    let mut changes = vec![0];
    loop {
        let clash = (0..n).find(|&t| t != current && s[t] == s[current]);
        let Some(t) = clash else {
            return GridState::new(s)
                .map_err(|e| Error::Internal(format!("new perfect state: {e}")));
        };
        if let Some(pos) = changes.iter().position(|&c| c == t) {
            let mut tau = sigma.as_slice().to_vec();
            for &k in &changes[pos + 1..] {
                tau[k] = choice.row(k);
            }
            return GridState::new(tau)
                .map_err(|e| Error::Internal(format!("new perfect state loop: {e}")));
        }
        s[t] = choice.row(t);
        current = t;
        changes.push(t);
    }
}
