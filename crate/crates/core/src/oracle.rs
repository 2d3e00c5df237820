//! Brute-force references for small instances.
//!
//! Everything here enumerates or simulates directly from the definitions in
//! [`crate::stability`]. Instances are normalized to mutual lists first.

use crate::error::OracleError;
use crate::instance::{Instance, RankTable};
use crate::stability::{best_improvement, is_ssnm, is_wsnm, Matching, Pair};

/// Default per-side limit for the enumerators.
pub const SIZE_LIMIT: usize = 10;

/// Enumeration knobs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n_men` / `n_women` accepted; `None` lifts the guard.
    pub max_side: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_side: Some(SIZE_LIMIT) }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits { max_side: None }
    }

    fn check(&self, inst: &Instance) -> Result<(), OracleError> {
        match self.max_side {
            Some(limit) if inst.n_men() > limit || inst.n_women() > limit => {
                Err(OracleError::TooLarge { n_men: inst.n_men(), n_women: inst.n_women(), limit })
            }
            _ => Ok(()),
        }
    }
}

/// Every noncrossing matching over mutually acceptable pairs, ordered by
/// their ascending pair lists.
pub fn enumerate_noncrossing_matchings(inst: &Instance) -> Result<Vec<Matching>, OracleError> {
    enumerate_noncrossing_matchings_with(inst, Limits::default())
}

pub fn enumerate_noncrossing_matchings_with(
    inst: &Instance,
    limits: Limits,
) -> Result<Vec<Matching>, OracleError> {
    limits.check(inst)?;
    let ranks = inst.normalize_mutual().rank_tables();
    let mut lists = Vec::new();
    extend(&ranks, 1, 0, &mut Vec::new(), &mut lists);
    lists.sort();
    Ok(lists
        .into_iter()
        .map(|p| Matching::from_pairs(inst.n_men(), inst.n_women(), p).expect("disjoint by construction"))
        .collect())
}

// Men are decided in index order; a man either stays single or takes an
// acceptable woman strictly below the last woman used, so crossings never form.
fn extend(ranks: &RankTable, man: usize, last_woman: usize, cur: &mut Vec<Pair>, out: &mut Vec<Vec<Pair>>) {
    if man > ranks.n_men() {
        out.push(cur.clone());
        return;
    }
    extend(ranks, man + 1, last_woman, cur, out);
    for w in last_woman + 1..=ranks.n_women() {
        if ranks.is_mutually_acceptable(man, w) {
            cur.push((man, w));
            extend(ranks, man + 1, w, cur, out);
            cur.pop();
        }
    }
}

/// Every weakly stable noncrossing matching.
pub fn enumerate_wsnm(inst: &Instance) -> Result<Vec<Matching>, OracleError> {
    enumerate_wsnm_with(inst, Limits::default())
}

pub fn enumerate_wsnm_with(inst: &Instance, limits: Limits) -> Result<Vec<Matching>, OracleError> {
    let ranks = inst.normalize_mutual().rank_tables();
    Ok(enumerate_noncrossing_matchings_with(inst, limits)?
        .into_iter()
        .filter(|m| is_wsnm(&ranks, m))
        .collect())
}

/// The first strongly stable noncrossing matching in enumeration order, if
/// any exists.
pub fn exists_ssnm(inst: &Instance) -> Result<Option<Matching>, OracleError> {
    exists_ssnm_with(inst, Limits::default())
}

pub fn exists_ssnm_with(inst: &Instance, limits: Limits) -> Result<Option<Matching>, OracleError> {
    let ranks = inst.normalize_mutual().rank_tables();
    Ok(enumerate_noncrossing_matchings_with(inst, limits)?
        .into_iter()
        .find(|m| is_ssnm(&ranks, m)))
}

/// A largest weakly stable noncrossing matching; among equals, the one with
/// the lexicographically smallest pair list.
pub fn max_size_wsnm(inst: &Instance) -> Result<Matching, OracleError> {
    max_size_wsnm_with(inst, Limits::default())
}

pub fn max_size_wsnm_with(inst: &Instance, limits: Limits) -> Result<Matching, OracleError> {
    let all = enumerate_wsnm_with(inst, limits)?;
    // enumeration order is lexicographic, so the first maximum wins ties
    let mut best: Option<Matching> = None;
    for m in all {
        if best.as_ref().is_none_or(|b| m.len() > b.len()) {
            best = Some(m);
        }
    }
    Ok(best.expect("a weakly stable noncrossing matching always exists"))
}

/// Men to pick, in order, for [`run_arbitrary_order`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PickSequence {
    pub picks: Vec<usize>,
    /// Cap on consumed picks.
    pub max_steps: usize,
}

impl PickSequence {
    /// `pattern` repeated until `max_steps` picks.
    pub fn cycle(pattern: &[usize], max_steps: usize) -> Self {
        PickSequence {
            picks: pattern.iter().copied().cycle().take(max_steps).collect(),
            max_steps,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArbitraryRun {
    /// Every man was stable before the picks or the step cap ran out.
    pub terminated: bool,
    /// Picks consumed.
    pub steps_used: usize,
    /// Matching after each consumed pick.
    pub matchings: Vec<Matching>,
}

/// Runs the propose-and-dump operations on whichever man `picks` names. A pick
/// naming a stable man consumes the pick and changes nothing.
pub fn run_arbitrary_order(inst: &Instance, picks: &PickSequence) -> ArbitraryRun {
    let inst = inst.normalize_mutual();
    let ranks = inst.rank_tables();
    let mut m = Matching::new(inst.n_men(), inst.n_women());
    let mut matchings = Vec::new();
    let mut steps_used = 0;
    let mut next = picks.picks.iter();
    loop {
        if topmost_unstable(&ranks, &m).is_none() {
            return ArbitraryRun { terminated: true, steps_used, matchings };
        }
        if steps_used == picks.max_steps {
            break;
        }
        let Some(&man) = next.next() else { break };
        assert!((1..=inst.n_men()).contains(&man), "pick {man} names no man");
        steps_used += 1;
        if let Some(woman) = best_improvement(&ranks, &m, man) {
            m.remove_man(man);
            m.remove_woman(woman);
            m.insert(man, woman);
        }
        matchings.push(m.clone());
    }
    ArbitraryRun { terminated: false, steps_used, matchings }
}

/// The unstable man of least index, if any.
pub fn topmost_unstable(ranks: &RankTable, m: &Matching) -> Option<usize> {
    (1..=ranks.n_men()).find(|&i| best_improvement(ranks, m, i).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full(n1: usize, n2: usize) -> Instance {
        Instance::random(n1, n2, 1.0, 0)
    }

    #[test]
    fn counts_small_enumerations() {
        let one = Instance::new(vec![vec![1]], vec![vec![1]]);
        assert_eq!(enumerate_noncrossing_matchings(&one).unwrap().len(), 2);
        assert_eq!(enumerate_noncrossing_matchings(&full(2, 2)).unwrap().len(), 6);
        let none = Instance::new(vec![], vec![vec![]; 3]);
        let all = enumerate_noncrossing_matchings(&none).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
    }

    #[test]
    fn guard_refuses_large_instances() {
        let big = full(11, 2);
        assert_eq!(
            enumerate_wsnm(&big).unwrap_err(),
            OracleError::TooLarge { n_men: 11, n_women: 2, limit: SIZE_LIMIT }
        );
        assert!(enumerate_noncrossing_matchings_with(&Instance::random(11, 2, 0.3, 1), Limits::unlimited()).is_ok());
    }

    #[test]
    fn single_pair_instances() {
        let one = Instance::new(vec![vec![1]], vec![vec![1]]);
        let expected = Matching::from_pairs(1, 1, [(1, 1)]).unwrap();
        assert_eq!(exists_ssnm(&one).unwrap(), Some(expected.clone()));
        assert_eq!(max_size_wsnm(&one).unwrap(), expected);
        let empty = Instance::new(vec![vec![]; 2], vec![vec![]; 2]);
        assert!(max_size_wsnm(&empty).unwrap().is_empty());
    }

    #[test]
    fn empty_instance_terminates_at_once() {
        let empty = Instance::new(vec![vec![]; 2], vec![vec![]; 2]);
        let run = run_arbitrary_order(&empty, &PickSequence::cycle(&[1, 2], 10));
        assert!(run.terminated);
        assert_eq!(run.steps_used, 0);
    }
}
