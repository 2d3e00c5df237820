//! The topmost-unstable-man scanning solver.
//!
//! The men `m_top..=m_n1` form the set of possibly unstable men; everyone above
//! `top` is stable. Each step scans `m_top`, finds the best woman in his
//! available window with a range-argmin query over his rank row, and either
//! skips him or lets him propose. A proposal that steals `w_first` from
//! `m_prev` sends the pointer back up to `m_prev`; any other proposal moves it
//! down by one.

mod invariants;
mod trace;

use std::collections::BTreeSet;
use std::fmt;

pub use invariants::{verify_run, TraceViolation};
pub use trace::{Action, Jump, Trace, TraceEvent};

use crate::error::SolverError;
use crate::instance::{Instance, Rank, RankTable};
use crate::rmq::RangeArgmin;
use crate::stability::Matching;

/// A branch the correctness argument proves unreachable was taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantViolation {
    /// Man `man` matched to `current` chose `woman` lying below her.
    DownwardSwitch { man: usize, current: usize, woman: usize },
    /// Man `man` chose `w_last` while `m_next` exists.
    ProposalToLast { man: usize, woman: usize, next: usize },
}

impl fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            InvariantViolation::DownwardSwitch { man, current, woman } => write!(
                f,
                "man {man} switched down from woman {current} to woman {woman}"
            ),
            InvariantViolation::ProposalToLast { man, woman, next } => write!(
                f,
                "man {man} proposed to woman {woman}, the partner of the next matched man {next}"
            ),
        }
    }
}

/// Boundaries of the window of women a scanned man can reach.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanContext {
    /// Closest matched man above.
    pub m_prev: Option<usize>,
    /// Closest matched man below.
    pub m_next: Option<usize>,
    /// Partner of `m_prev`, else woman 1.
    pub w_first: usize,
    /// Partner of `m_next`, else the last woman.
    pub w_last: usize,
    /// Available window; empty when `lo > hi`.
    pub lo: usize,
    pub hi: usize,
}

impl ScanContext {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }
}

/// Counters collected over one run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub scan_count: usize,
    pub proposal_count: usize,
    pub upward_jump_count: usize,
    pub upward_jump_size_sum: usize,
    /// Sum of upward jump sizes associated to each woman; index 0 is woman 1.
    pub upward_by_woman: Vec<usize>,
}

impl SolverStats {
    /// Total upward jump size associated to woman `j`.
    pub fn upward_for(&self, j: usize) -> usize {
        self.upward_by_woman[j - 1]
    }

    /// Explicit upper bound on the number of scans.
    pub fn scan_bound(n_men: usize, n_women: usize) -> usize {
        2 * n_men * n_women + n_men + n_women
    }
}

/// Mutable state of one run.
#[derive(Debug, Clone)]
pub struct SolverState {
    ranks: RankTable,
    rows: Vec<RangeArgmin<Rank>>,
    matching: Matching,
    matched_men: BTreeSet<usize>,
    top: usize,
    stats: SolverStats,
}

impl SolverState {
    /// Normalizes `inst` to mutual lists and builds one argmin structure per
    /// man. Expects a valid instance.
    pub fn new(inst: &Instance) -> Self {
        let inst = inst.normalize_mutual();
        let ranks = inst.rank_tables();
        let rows = if inst.n_women() == 0 {
            Vec::new()
        } else {
            (1..=inst.n_men())
                .map(|i| RangeArgmin::new(ranks.man_row(i)))
                .collect()
        };
        SolverState {
            matching: Matching::new(inst.n_men(), inst.n_women()),
            matched_men: BTreeSet::new(),
            top: 1,
            stats: SolverStats {
                upward_by_woman: vec![0; inst.n_women()],
                ..SolverStats::default()
            },
            ranks,
            rows,
        }
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    /// Index of the topmost possibly unstable man; `n_men + 1` once done.
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn stats(&self) -> &SolverStats {
        &self.stats
    }

    pub fn ranks(&self) -> &RankTable {
        &self.ranks
    }

    pub fn is_done(&self) -> bool {
        self.top > self.ranks.n_men()
    }

    fn available(&self, i: usize, j: usize) -> bool {
        let rank = self.ranks.woman_rank(j, i);
        rank.is_ranked()
            && match self.matching.partner_of_woman(j) {
                None => true,
                Some(k) => k == i || rank < self.ranks.woman_rank(j, k),
            }
    }

    /// Window of women available to man `i` under the current matching.
    pub fn scan_context(&self, i: usize) -> ScanContext {
        let n_women = self.ranks.n_women();
        let m_prev = self.matched_men.range(..i).next_back().copied();
        let m_next = self.matched_men.range(i + 1..).next().copied();
        let w_first = m_prev.and_then(|p| self.matching.partner_of_man(p)).unwrap_or(1);
        let w_last = m_next
            .and_then(|p| self.matching.partner_of_man(p))
            .unwrap_or(n_women);
        if n_women == 0 {
            return ScanContext { m_prev, m_next, w_first, w_last, lo: 1, hi: 0 };
        }
        let lo = if self.available(i, w_first) { w_first } else { w_first + 1 };
        let hi = if self.available(i, w_last) { w_last } else { w_last - 1 };
        ScanContext { m_prev, m_next, w_first, w_last, lo, hi }
    }

    /// Man `i`'s favourite woman in the window, if he ranks anyone there.
    pub fn best_available(&self, i: usize, ctx: &ScanContext) -> Option<usize> {
        if ctx.is_empty() {
            return None;
        }
        let row = &self.rows[i - 1];
        let j = row.query(ctx.lo, ctx.hi);
        row.value(j).is_ranked().then_some(j)
    }

    /// Scans `m_top` once. Panics if the run is already finished.
    pub fn step(&mut self) -> Result<TraceEvent, InvariantViolation> {
        assert!(!self.is_done(), "step on a finished run");
        let i = self.top;
        let ctx = self.scan_context(i);
        let current = self.matching.partner_of_man(i);
        self.stats.scan_count += 1;
        let step = self.stats.scan_count;

        let j = match self.best_available(i, &ctx) {
            Some(j) if Some(j) != current => j,
            _ => {
                self.top = i + 1;
                return Ok(TraceEvent { step, man: i, action: Action::Skip, top: self.top });
            }
        };

        let jump = match ctx.m_prev {
            Some(prev) if j == ctx.w_first => {
                // w_first leaves m_prev; everyone from m_prev down may now be unstable
                let size = i - prev;
                self.stats.upward_jump_count += 1;
                self.stats.upward_jump_size_sum += size;
                self.stats.upward_by_woman[j - 1] += size;
                self.top = prev;
                Jump::Up
            }
            _ => {
                if let Some(k) = current {
                    if j > k {
                        return Err(InvariantViolation::DownwardSwitch { man: i, current: k, woman: j });
                    }
                }
                if let Some(next) = ctx.m_next {
                    if j == ctx.w_last {
                        return Err(InvariantViolation::ProposalToLast { man: i, woman: j, next });
                    }
                }
                self.top = i + 1;
                Jump::Down
            }
        };

        let previous_woman = self.matching.remove_man(i);
        let previous_man = self.matching.remove_woman(j);
        if let Some(k) = previous_man {
            self.matched_men.remove(&k);
        }
        self.matching.insert(i, j);
        self.matched_men.insert(i);
        self.stats.proposal_count += 1;

        Ok(TraceEvent {
            step,
            man: i,
            action: Action::Propose { woman: j, previous_woman, previous_man, jump },
            top: self.top,
        })
    }
}

/// Result of [`solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub matching: Matching,
    pub trace: Trace,
    pub stats: SolverStats,
}

/// Runs the solver to completion, recording the full trace.
pub fn solve(inst: &Instance) -> Result<Solution, SolverError> {
    solve_with(inst, true)
}

/// Runs the solver; with `record_trace = false` the returned trace is empty.
pub fn solve_with(inst: &Instance, record_trace: bool) -> Result<Solution, SolverError> {
    let mut state = SolverState::new(inst);
    let mut trace = Trace::new(inst.n_men(), inst.n_women());
    while !state.is_done() {
        match state.step() {
            Ok(event) => {
                if record_trace {
                    trace.push(event);
                }
            }
            Err(violation) => {
                return Err(SolverError {
                    step: state.stats.scan_count,
                    violation,
                    trace,
                })
            }
        }
    }
    Ok(Solution {
        matching: state.matching,
        trace,
        stats: state.stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::is_wsnm;

    fn worked_example() -> Instance {
        Instance::new(
            vec![vec![3, 1, 2], vec![2, 3, 1], vec![2, 1, 3]],
            vec![vec![3, 2, 1], vec![3, 2, 1], vec![3, 2, 1]],
        )
    }

    fn no_ssnm() -> Instance {
        Instance::new(vec![vec![2, 1], vec![1, 2]], vec![vec![2, 1], vec![1, 2]])
    }

    fn pairs(m: &Matching) -> Vec<(usize, usize)> {
        m.pairs().collect()
    }

    #[test]
    fn first_scan_of_worked_example() {
        let mut state = SolverState::new(&worked_example());
        let ctx = state.scan_context(1);
        assert_eq!((ctx.m_prev, ctx.m_next, ctx.lo, ctx.hi), (None, None, 1, 3));
        assert_eq!(state.best_available(1, &ctx), Some(3));

        let ev = state.step().unwrap();
        assert_eq!(
            ev.action,
            Action::Propose { woman: 3, previous_woman: None, previous_man: None, jump: Jump::Down }
        );
        assert_eq!(state.top(), 2);

        let ctx = state.scan_context(2);
        assert_eq!(ctx.m_prev, Some(1));
        assert_eq!((ctx.w_first, ctx.w_last, ctx.lo, ctx.hi), (3, 3, 3, 3));
        let ev = state.step().unwrap();
        assert_eq!(
            ev.action,
            Action::Propose { woman: 3, previous_woman: None, previous_man: Some(1), jump: Jump::Up }
        );
        assert_eq!(state.top(), 1);
    }

    #[test]
    fn unavailable_boundary_closes_window() {
        let mut state = SolverState::new(&no_ssnm());
        state.step().unwrap();
        assert_eq!(pairs(state.matching()), vec![(1, 2)]);
        let ctx = state.scan_context(2);
        assert_eq!((ctx.w_first, ctx.w_last), (2, 2));
        assert!(ctx.is_empty());
        assert_eq!(state.best_available(2, &ctx), None);
    }

    #[test]
    fn unranked_window_yields_nobody() {
        let inst = Instance::new(vec![vec![], vec![1, 2, 3]], vec![vec![2], vec![2], vec![2]]);
        let state = SolverState::new(&inst);
        let ctx = state.scan_context(1);
        assert_eq!((ctx.lo, ctx.hi), (2, 2));
        assert_eq!(state.best_available(1, &ctx), None);
    }

    #[test]
    fn solves_known_instances() {
        let sol = solve(&worked_example()).unwrap();
        assert_eq!(pairs(&sol.matching), vec![(2, 1), (3, 2)]);
        assert_eq!(sol.stats.scan_count, 9);
        assert_eq!(sol.trace.len(), 9);

        let s4 = Instance::new(
            vec![vec![3, 1, 2], vec![1, 2, 3], vec![2, 3, 1]],
            vec![vec![2, 3, 1], vec![3, 1, 2], vec![1, 2, 3]],
        );
        assert_eq!(pairs(&solve(&s4).unwrap().matching), vec![(1, 3)]);

        let sol = solve(&no_ssnm()).unwrap();
        assert_eq!(pairs(&sol.matching), vec![(1, 2)]);
        assert!(is_wsnm(&no_ssnm().rank_tables(), &sol.matching));

        let looping = Instance::new(vec![vec![2, 1], vec![1, 2]], vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(pairs(&solve(&looping).unwrap().matching), vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn degenerate_shapes() {
        let empty_lists = Instance::new(vec![vec![]; 3], vec![vec![]; 2]);
        let sol = solve(&empty_lists).unwrap();
        assert!(sol.matching.is_empty());
        assert_eq!(sol.stats.scan_count, 3);

        let no_women = Instance::new(vec![vec![]; 2], vec![]);
        assert!(solve(&no_women).unwrap().matching.is_empty());
        let no_men = Instance::new(vec![], vec![vec![]; 2]);
        assert_eq!(solve(&no_men).unwrap().stats.scan_count, 0);
    }

    #[test]
    fn one_sided_lists_are_ignored() {
        let inst = Instance::new(vec![vec![1], vec![]], vec![vec![2], vec![]]);
        assert!(solve(&inst).unwrap().matching.is_empty());
    }

    #[test]
    fn untraced_run_matches_traced() {
        let inst = Instance::random(30, 25, 0.6, 4);
        let a = solve(&inst).unwrap();
        let b = solve_with(&inst, false).unwrap();
        assert_eq!(a.matching, b.matching);
        assert_eq!(a.stats, b.stats);
        assert!(b.trace.is_empty());
    }
}
