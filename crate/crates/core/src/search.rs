//! Breadth-first searches for nice grid diagrams.
//!
//! Nodes are deduplicated up to cyclic shifts of rows and columns. Niceness is
//! a property of a planar realization, not of the toroidal class, so each
//! dequeued class is tested through all of its realizations (see
//! [`nice_realization`]).

use std::collections::{HashSet, VecDeque};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::detect::{detect_unique_perfect, reduce_pass, Axis, Verdict};
use crate::error::{Error, Result};
use crate::grid::{GridState, VertList};
use crate::moves::{canonical_key, for_each_commutation, x_nw, CanonicalKey};
use crate::winding::{alexander_constant_from, w_matrix, winding_value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Dequeued nodes per BFS stage.
    pub max_nodes: u64,
    /// Wall clock for the whole search, shared by all stages.
    pub max_seconds: Duration,
    /// Frontier length beyond which no further nodes are enqueued.
    pub max_queue: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_nodes: 1_000_000,
            max_seconds: Duration::from_secs(600),
            max_queue: 4_000_000,
        }
    }
}

impl SearchLimits {
    pub fn validate(&self) -> Result<()> {
        if self.max_nodes == 0 || self.max_seconds.is_zero() || self.max_queue == 0 {
            return Err(Error::Usage("search limits must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    NiceFound,
    Exhausted,
    BudgetHit,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::NiceFound => "nice_found",
            SearchStatus::Exhausted => "exhausted",
            SearchStatus::BudgetHit => "budget_hit",
        }
    }
}

impl std::str::FromStr for SearchStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nice_found" => Ok(SearchStatus::NiceFound),
            "exhausted" => Ok(SearchStatus::Exhausted),
            "budget_hit" => Ok(SearchStatus::BudgetHit),
            _ => Err(Error::Usage(format!("unknown search status {s:?}"))),
        }
    }
}

impl std::fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub diagram: VertList,
    pub state: GridState,
    pub alexander: i64,
    pub stabilizations: u8,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SearchStats {
    pub nodes_explored: u64,
    pub duplicates_skipped: u64,
    pub elapsed_seconds: f64,
    pub frontier_peak: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<Witness>,
    pub stats: SearchStats,
}

/// Runs the detector on `v` as given. On a unique perfect state returns it
/// with its Alexander grading.
pub fn try_permutations(v: &VertList) -> Result<Option<(GridState, i64)>> {
    let m = w_matrix(v);
    let report = detect_unique_perfect(&m)?;
    match report.verdict {
        Verdict::Unique(x) => {
            let a = winding_value(&m, &x)? + alexander_constant_from(v, &m)?;
            Ok(Some((x, a)))
        }
        _ => Ok(None),
    }
}

/// Looks for a nice planar realization among the `n^2` cyclic shifts of `v`.
///
/// Shifting columns so that column `c0` becomes the boundary turns the winding
/// matrix into a column permutation of `M - M[., c0]`; row shifts add
/// per-column constants, which do not affect which states are row-perfect.
/// Hence the row pass only has to be run once per row offset and the column
/// pass once per column offset. A unique row-perfect state is automatically
/// perfect, because no state can exceed either bound. Any hit is rebuilt as a
/// concrete shifted diagram and confirmed with [`try_permutations`].
pub fn nice_realization(v: &VertList) -> Result<Option<(VertList, GridState, i64)>> {
    if let Some((x, a)) = try_permutations(v)? {
        return Ok(Some((v.clone(), x, a)));
    }
    let n = v.size();
    let m = w_matrix(v);
    for r0 in 1..n {
        if reduce_pass(&m.minus_row(r0), Axis::Rows)
            .verdict
            .unique()
            .is_some()
        {
            return confirm(v.shifted(n - r0, 0)).map(Some);
        }
    }
    for c0 in 1..n {
        if reduce_pass(&m.minus_col(c0), Axis::Columns)
            .verdict
            .unique()
            .is_some()
        {
            return confirm(v.shifted(0, n - c0)).map(Some);
        }
    }
    Ok(None)
}

fn confirm(w: VertList) -> Result<(VertList, GridState, i64)> {
    match try_permutations(&w)? {
        Some((x, a)) => Ok((w, x, a)),
        None => Err(Error::Internal(format!(
            "shifted realization {w} lost its unique perfect state"
        ))),
    }
}

enum Stop {
    Found(VertList, GridState, i64),
    Exhausted,
    Budget,
}

struct Bfs<'a> {
    limits: &'a SearchLimits,
    started: Instant,
    stats: SearchStats,
    seen: HashSet<CanonicalKey>,
    queue: VecDeque<VertList>,
    truncated: bool,
    /// Every dequeued diagram, kept when a later stage needs the closure.
    closure: Option<Vec<VertList>>,
}

impl<'a> Bfs<'a> {
    fn new(limits: &'a SearchLimits, started: Instant, keep_closure: bool) -> Self {
        Bfs {
            limits,
            started,
            stats: SearchStats::default(),
            seen: HashSet::new(),
            queue: VecDeque::new(),
            truncated: false,
            closure: keep_closure.then(Vec::new),
        }
    }

    fn push(&mut self, v: VertList) {
        if !self.seen.insert(canonical_key(&v)) {
            self.stats.duplicates_skipped += 1;
            return;
        }
        if self.queue.len() >= self.limits.max_queue {
            self.truncated = true;
            return;
        }
        self.queue.push_back(v);
        self.stats.frontier_peak = self.stats.frontier_peak.max(self.queue.len());
    }

    fn out_of_time(&self) -> bool {
        self.started.elapsed() >= self.limits.max_seconds
    }

    /// Tests and expands one node.
    fn visit(&mut self, v: VertList) -> Result<Option<Stop>> {
        self.stats.nodes_explored += 1;
        if let Some((w, x, a)) = nice_realization(&v)? {
            return Ok(Some(Stop::Found(w, x, a)));
        }
        for_each_commutation(&v, |_, w| self.push(w));
        if let Some(c) = self.closure.as_mut() {
            c.push(v);
        }
        Ok(None)
    }

    fn budget_spent(&self) -> bool {
        self.stats.nodes_explored >= self.limits.max_nodes
            || (self.stats.nodes_explored.is_multiple_of(64) && self.out_of_time())
    }

    /// Drains `seeds` (all at depth 0) and then the queue in FIFO order.
    fn run(&mut self, seeds: impl IntoIterator<Item = VertList>) -> Result<Stop> {
        let mut seeds = seeds.into_iter();
        loop {
            let next = loop {
                match seeds.next() {
                    Some(s) => {
                        if self.seen.insert(canonical_key(&s)) {
                            break Some(s);
                        }
                        self.stats.duplicates_skipped += 1;
                    }
                    None => break self.queue.pop_front(),
                }
            };
            let Some(v) = next else {
                return Ok(if self.truncated {
                    Stop::Budget
                } else {
                    Stop::Exhausted
                });
            };
            if self.budget_spent() {
                return Ok(Stop::Budget);
            }
            if let Some(stop) = self.visit(v)? {
                return Ok(stop);
            }
        }
    }
}

fn outcome(stop: Stop, stabilizations: u8, stats: SearchStats, started: Instant) -> SearchOutcome {
    let stats = SearchStats {
        elapsed_seconds: started.elapsed().as_secs_f64(),
        ..stats
    };
    match stop {
        Stop::Found(diagram, state, alexander) => SearchOutcome {
            status: SearchStatus::NiceFound,
            witness: Some(Witness {
                diagram,
                state,
                alexander,
                stabilizations,
            }),
            stats,
        },
        Stop::Exhausted => SearchOutcome {
            status: SearchStatus::Exhausted,
            witness: None,
            stats,
        },
        Stop::Budget => SearchOutcome {
            status: SearchStatus::BudgetHit,
            witness: None,
            stats,
        },
    }
}

/// BFS over commutation moves from both orientations of `start`.
pub fn gridstate_finder_commute(start: &VertList, limits: &SearchLimits) -> Result<SearchOutcome> {
    let started = Instant::now();
    let mut bfs = Bfs::new(limits, started, false);
    let stop = bfs.run([start.clone(), start.reversed()])?;
    Ok(outcome(stop, 0, bfs.stats, started))
}

/// Commutation search, then one X-NW stabilization of every diagram in the
/// explored commutation closure followed by a commutation search at size
/// `n + 1`. Each stage has its own node budget; the clock is shared.
///
/// Statistics of the returned outcome add up both stages.
pub fn gridstate_finder_stab(start: &VertList, limits: &SearchLimits) -> Result<SearchOutcome> {
    let started = Instant::now();
    let mut first = Bfs::new(limits, started, true);
    let stop = first.run([start.clone(), start.reversed()])?;
    if let Stop::Found(..) = stop {
        return Ok(outcome(stop, 0, first.stats, started));
    }
    let first_stop_budget = matches!(stop, Stop::Budget);
    let closure = first.closure.take().unwrap_or_default();
    let stats1 = first.stats;
    drop(first);

    let n = start.size();
    let mut second = Bfs::new(limits, started, false);
    let mut seed_error = None;
    let seeds = closure
        .iter()
        .flat_map(|d| (0..n).map(move |s| (d, s)))
        .filter_map(|(d, s)| match x_nw(d, s) {
            Ok(w) => Some(w),
            Err(e) => {
                seed_error.get_or_insert(e);
                None
            }
        });
    let stop = second.run(seeds)?;
    if let Some(e) = seed_error {
        return Err(Error::Internal(format!("stabilization failed: {e}")));
    }
    let stop = match stop {
        // An incomplete first stage means the stabilized closure was partial too.
        Stop::Exhausted if first_stop_budget => Stop::Budget,
        other => other,
    };
    let stats = SearchStats {
        nodes_explored: stats1.nodes_explored + second.stats.nodes_explored,
        duplicates_skipped: stats1.duplicates_skipped + second.stats.duplicates_skipped,
        elapsed_seconds: 0.0,
        frontier_peak: stats1.frontier_peak.max(second.stats.frontier_peak),
    };
    Ok(outcome(stop, 1, stats, started))
}

/// Commutation search, falling back to one stabilization when `stabilize` is
/// set.
pub fn search_pipeline(
    start: &VertList,
    limits: &SearchLimits,
    stabilize: bool,
) -> Result<SearchOutcome> {
    if stabilize {
        gridstate_finder_stab(start, limits)
    } else {
        gridstate_finder_commute(start, limits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::winding::{alexander_constant, bounds};

    fn unknot() -> VertList {
        "(2,1),(1,2)".parse().unwrap()
    }

    fn trefoil() -> VertList {
        "(3,1),(4,2),(5,3),(1,4),(2,5)".parse().unwrap()
    }

    fn check_witness(o: &SearchOutcome) {
        let w = o.witness.as_ref().expect("witness");
        let m = w_matrix(&w.diagram);
        let report = detect_unique_perfect(&m).unwrap();
        assert_eq!(report.verdict, Verdict::Unique(w.state.clone()));
        assert_eq!(
            w.alexander,
            bounds(&m).bound() + alexander_constant(&w.diagram).unwrap()
        );
    }

    #[test]
    fn try_permutations_examples() {
        let (x, a) = try_permutations(&unknot()).unwrap().unwrap();
        assert_eq!(x, GridState::identity(2));
        assert_eq!(a, 0);
        let (x, a) = try_permutations(&trefoil()).unwrap().unwrap();
        assert_eq!(x, GridState::identity(5));
        assert_eq!(a, 1);
        let (x, a) = try_permutations(&unknot().shifted(0, 1)).unwrap().unwrap();
        assert_eq!((x.to_one_based(), a), (vec![2, 1], 0));
    }

    #[test]
    fn realization_sweep_finds_a_nice_shift() {
        let v: VertList = "(1,4),(3,5),(2,3),(5,1),(4,2)".parse().unwrap();
        assert_eq!(try_permutations(&v).unwrap(), None);
        let (w, x, a) = nice_realization(&v).unwrap().unwrap();
        assert_eq!(w.to_string(), "(5,3),(2,4),(1,2),(4,5),(3,1)");
        assert_eq!(x.to_string(), "(3,4,2,5,1)");
        assert_eq!(a, 0);
        assert_eq!(try_permutations(&w).unwrap(), Some((x, a)));
    }

    #[test]
    fn commute_search_on_small_knots() {
        let limits = SearchLimits::default();
        let o = gridstate_finder_commute(&unknot(), &limits).unwrap();
        assert_eq!(o.status, SearchStatus::NiceFound);
        assert_eq!(o.stats.nodes_explored, 1);
        assert_eq!(o.witness.as_ref().unwrap().alexander, 0);
        check_witness(&o);

        let o = gridstate_finder_commute(&trefoil(), &limits).unwrap();
        assert_eq!(o.status, SearchStatus::NiceFound);
        let w = o.witness.as_ref().unwrap();
        assert_eq!((w.alexander, w.stabilizations, w.diagram.size()), (1, 0, 5));
        check_witness(&o);
    }

    #[test]
    fn stab_search_short_circuits() {
        let o = gridstate_finder_stab(&unknot(), &SearchLimits::default()).unwrap();
        assert_eq!(o.status, SearchStatus::NiceFound);
        assert_eq!(o.witness.as_ref().unwrap().stabilizations, 0);
        check_witness(&o);
    }

    #[test]
    fn stabilized_unknot_is_solved() {
        let v = x_nw(&unknot(), 0).unwrap();
        let o = gridstate_finder_stab(&v, &SearchLimits::default()).unwrap();
        assert_eq!(o.status, SearchStatus::NiceFound);
        assert_eq!(o.witness.as_ref().unwrap().alexander, 0);
        check_witness(&o);
    }

    #[test]
    fn tiny_budget_is_reported() {
        // Not nice as given; the first nice class is four nodes away.
        let v: VertList = "(5,1),(4,2),(1,4),(2,3),(3,5)".parse().unwrap();
        assert_eq!(nice_realization(&v).unwrap(), None);
        let full = gridstate_finder_commute(&v, &SearchLimits::default()).unwrap();
        assert_eq!(full.status, SearchStatus::NiceFound);
        assert_eq!(full.stats.nodes_explored, 4);
        let limits = SearchLimits {
            max_nodes: 1,
            ..SearchLimits::default()
        };
        let o = gridstate_finder_commute(&v, &limits).unwrap();
        assert_eq!(o.status, SearchStatus::BudgetHit);
        assert_eq!(o.witness, None);
        assert!(SearchLimits {
            max_nodes: 0,
            ..limits
        }
        .validate()
        .is_err());
    }
}
