//! Replays a recorded run and checks the properties every trace must satisfy.
//!
//! The checks rebuild the matching from the trace alone and judge stability
//! with the definitional checkers in [`crate::stability`], so they share no
//! code with the scanning logic they audit.

use std::fmt;

use super::{Action, Jump, Solution, SolverStats};
use crate::instance::Instance;
use crate::stability::{is_man_stable, is_noncrossing, is_wsnm};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceViolation {
    /// The scanned man is not the pointer left by the previous step.
    WrongMan { step: usize, expected: usize, man: usize },
    /// A recorded dump does not match the replayed matching.
    InconsistentDump { step: usize },
    /// The pointer moved in a way the recorded action does not allow.
    BadPointer { step: usize },
    /// The matching crosses after this step.
    Crossing { step: usize },
    /// A matched man moved to a woman below his partner.
    DownwardSwitch { step: usize, from: usize, to: usize },
    /// A woman dumped a man below the proposer.
    UpwardSteal { step: usize, dumped: usize, proposer: usize },
    /// A woman was matched to a man not strictly below all her earlier partners.
    PartnerRose { step: usize, woman: usize, previous: usize, man: usize },
    /// A man the pointer moved past still had an available improvement.
    UnstableAfterAdvance { step: usize, man: usize },
    /// Upward jumps associated to one woman exceed `n_men - 1` in total.
    UpwardBudget { woman: usize, total: usize },
    /// More scans than `2·n1·n2 + n1 + n2`.
    ScanBound { scans: usize, bound: usize },
    /// Reported counters disagree with the trace.
    StatsMismatch,
    /// The run did not end with the pointer past the last man.
    Unfinished,
    /// The final matching differs from the replay or is not weakly stable.
    BadResult,
}

impl fmt::Display for TraceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Checks a recorded solution of `inst` against every trace property. The
/// instance is normalized first, as the solver does.
pub fn verify_run(inst: &Instance, sol: &Solution) -> Result<(), Vec<TraceViolation>> {
    let inst = inst.normalize_mutual();
    let ranks = inst.rank_tables();
    let (n_men, n_women) = (inst.n_men(), inst.n_women());
    let mut out = Vec::new();

    let mut expected_top = 1;
    let mut last_partner = vec![0usize; n_women];
    let mut recount = SolverStats {
        upward_by_woman: vec![0; n_women],
        ..SolverStats::default()
    };
    let mut downward = 0usize;
    let mut final_matching = None;

    sol.trace.replay(|ev, before, after| {
        let (step, i) = (ev.step, ev.man);
        recount.scan_count += 1;
        if i != expected_top {
            out.push(TraceViolation::WrongMan { step, expected: expected_top, man: i });
        }
        expected_top = ev.top;

        match ev.action {
            Action::Skip => {
                if ev.top != i + 1 {
                    out.push(TraceViolation::BadPointer { step });
                }
            }
            Action::Propose { woman, previous_woman, previous_man, jump } => {
                recount.proposal_count += 1;
                if before.partner_of_man(i) != previous_woman
                    || before.partner_of_woman(woman) != previous_man
                    || previous_woman == Some(woman)
                    || after.partner_of_man(i) != Some(woman)
                {
                    out.push(TraceViolation::InconsistentDump { step });
                }
                if let Some(from) = previous_woman {
                    if woman > from {
                        out.push(TraceViolation::DownwardSwitch { step, from, to: woman });
                    }
                }
                if let Some(dumped) = previous_man {
                    if dumped > i {
                        out.push(TraceViolation::UpwardSteal { step, dumped, proposer: i });
                    }
                }
                let prev = last_partner[woman - 1];
                if prev != 0 && i <= prev {
                    out.push(TraceViolation::PartnerRose { step, woman, previous: prev, man: i });
                }
                last_partner[woman - 1] = i;

                match jump {
                    Jump::Up => {
                        // an upward jump lands on the man she dumped
                        if previous_man != Some(ev.top) || ev.top >= i {
                            out.push(TraceViolation::BadPointer { step });
                        } else {
                            let size = i - ev.top;
                            recount.upward_jump_count += 1;
                            recount.upward_jump_size_sum += size;
                            recount.upward_by_woman[woman - 1] += size;
                        }
                    }
                    Jump::Down => {
                        if ev.top != i + 1 {
                            out.push(TraceViolation::BadPointer { step });
                        }
                    }
                }
            }
        }
        if ev.jump() == Jump::Down {
            downward += 1;
            if !is_man_stable(&ranks, after, i) {
                out.push(TraceViolation::UnstableAfterAdvance { step, man: i });
            }
        }
        if !is_noncrossing(after) {
            out.push(TraceViolation::Crossing { step });
        }
        final_matching = Some(after.clone());
    });

    let budget = n_men.saturating_sub(1);
    for (w, &total) in recount.upward_by_woman.iter().enumerate() {
        if total > budget {
            out.push(TraceViolation::UpwardBudget { woman: w + 1, total });
        }
    }
    let bound = SolverStats::scan_bound(n_men, n_women);
    if sol.stats.scan_count > bound {
        out.push(TraceViolation::ScanBound { scans: sol.stats.scan_count, bound });
    }
    // the pointer travels from 1 to n_men + 1
    if recount != sol.stats || downward != recount.upward_jump_size_sum + n_men {
        out.push(TraceViolation::StatsMismatch);
    }
    if expected_top != n_men + 1 {
        out.push(TraceViolation::Unfinished);
    }
    let replayed = final_matching.unwrap_or_else(|| crate::stability::Matching::new(n_men, n_women));
    if replayed != sol.matching || !is_wsnm(&ranks, &sol.matching) {
        out.push(TraceViolation::BadResult);
    }

    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{solve, TraceEvent};

    #[test]
    fn clean_run_verifies() {
        let inst = Instance::random(12, 9, 0.7, 5);
        let sol = solve(&inst).unwrap();
        assert_eq!(verify_run(&inst, &sol), Ok(()));
    }

    #[test]
    fn tampered_trace_is_caught() {
        let inst = Instance::new(
            vec![vec![3, 1, 2], vec![2, 3, 1], vec![2, 1, 3]],
            vec![vec![3, 2, 1], vec![3, 2, 1], vec![3, 2, 1]],
        );
        let sol = solve(&inst).unwrap();

        let mut skipped = sol.clone();
        skipped.stats.scan_count += 1;
        assert!(verify_run(&inst, &skipped).unwrap_err().contains(&TraceViolation::StatsMismatch));

        // claim the first man stopped at w1, which he does not prefer to w3
        let mut forged = crate::solver::Trace::new(3, 3);
        forged.push(TraceEvent {
            step: 1,
            man: 1,
            action: Action::Propose { woman: 1, previous_woman: None, previous_man: None, jump: Jump::Down },
            top: 2,
        });
        let bad = Solution { trace: forged, ..sol };
        let errs = verify_run(&inst, &bad).unwrap_err();
        assert!(errs.contains(&TraceViolation::UnstableAfterAdvance { step: 1, man: 1 }));
        assert!(errs.contains(&TraceViolation::Unfinished));
    }
}
