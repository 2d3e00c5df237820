//! Matchings, the crossing predicate, and the stability checkers.
//!
//! The checkers take a [`Matching`] as plain data so they can judge matchings
//! produced anywhere, not just by the solver.

use std::fmt;

use crate::error::{MatchingError, ParseError};
use crate::instance::RankTable;

/// A `(man, woman)` edge, both 1-based.
pub type Pair = (usize, usize);

/// Set of disjoint man–woman pairs with inverse lookups.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    man_partner: Vec<Option<usize>>,
    woman_partner: Vec<Option<usize>>,
}

impl Matching {
    pub fn new(n_men: usize, n_women: usize) -> Self {
        Matching {
            man_partner: vec![None; n_men],
            woman_partner: vec![None; n_women],
        }
    }

    pub fn from_pairs(
        n_men: usize,
        n_women: usize,
        pairs: impl IntoIterator<Item = Pair>,
    ) -> Result<Self, MatchingError> {
        let mut m = Matching::new(n_men, n_women);
        for (man, woman) in pairs {
            if man == 0 || man > n_men || woman == 0 || woman > n_women {
                return Err(MatchingError::OutOfRange {
                    man,
                    woman,
                    n_men,
                    n_women,
                });
            }
            if m.man_partner[man - 1].is_some() {
                return Err(MatchingError::ManReused(man));
            }
            if m.woman_partner[woman - 1].is_some() {
                return Err(MatchingError::WomanReused(woman));
            }
            m.insert(man, woman);
        }
        Ok(m)
    }

    /// Parses one `i j` pair per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str, n_men: usize, n_women: usize) -> Result<Self, ParseError> {
        let mut pairs = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| ParseError::new(k + 1, format!("`{t}` is not an index")))
                })
                .collect::<Result<_, _>>()?;
            if nums.len() != 2 {
                return Err(ParseError::new(k + 1, "expected a pair `i j`"));
            }
            pairs.push((nums[0], nums[1]));
            Matching::from_pairs(n_men, n_women, pairs.iter().copied())
                .map_err(|e| ParseError::new(k + 1, e.to_string()))?;
        }
        Ok(Matching::from_pairs(n_men, n_women, pairs).expect("checked per line"))
    }

    /// `i j` lines in ascending man order.
    pub fn to_text(&self) -> String {
        self.pairs().map(|(i, j)| format!("{i} {j}\n")).collect()
    }

    pub fn n_men(&self) -> usize {
        self.man_partner.len()
    }

    pub fn n_women(&self) -> usize {
        self.woman_partner.len()
    }

    #[inline]
    pub fn partner_of_man(&self, i: usize) -> Option<usize> {
        self.man_partner[i - 1]
    }

    #[inline]
    pub fn partner_of_woman(&self, j: usize) -> Option<usize> {
        self.woman_partner[j - 1]
    }

    pub fn contains(&self, (i, j): Pair) -> bool {
        self.partner_of_man(i) == Some(j)
    }

    /// Pairs in ascending man order.
    pub fn pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        self.man_partner
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|j| (i + 1, j)))
    }

    pub fn len(&self) -> usize {
        self.pairs().count()
    }

    pub fn is_empty(&self) -> bool {
        self.man_partner.iter().all(Option::is_none)
    }

    /// Panics if either endpoint is already matched.
    pub fn insert(&mut self, i: usize, j: usize) {
        assert!(self.man_partner[i - 1].is_none(), "man {i} already matched");
        assert!(self.woman_partner[j - 1].is_none(), "woman {j} already matched");
        self.man_partner[i - 1] = Some(j);
        self.woman_partner[j - 1] = Some(i);
    }

    /// Unmatches man `i`, returning his former partner.
    pub fn remove_man(&mut self, i: usize) -> Option<usize> {
        let j = self.man_partner[i - 1].take()?;
        self.woman_partner[j - 1] = None;
        Some(j)
    }

    /// Unmatches woman `j`, returning her former partner.
    pub fn remove_woman(&mut self, j: usize) -> Option<usize> {
        let i = self.woman_partner[j - 1].take()?;
        self.man_partner[i - 1] = None;
        Some(i)
    }

    /// For man `i`, the closed range of women he can reach without crossing an
    /// edge of this matching: `(lo, hi)` with `lo > hi` meaning none.
    ///
    /// An edge `(a, b)` with `a < i` blocks every woman above `b`; one with
    /// `a > i` blocks every woman below `b`. This holds for crossing matchings
    /// too.
    pub fn accessible_range(&self, i: usize) -> (usize, usize) {
        let lo = self.man_partner[..i - 1]
            .iter()
            .flatten()
            .copied()
            .max()
            .unwrap_or(1);
        let hi = self.man_partner[i..]
            .iter()
            .flatten()
            .copied()
            .min()
            .unwrap_or(self.n_women());
        (lo, hi)
    }
}

impl fmt::Display for Matching {
    /// `{(1,3),(2,1)}`, or `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (i, j)) in self.pairs().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "({i},{j})")?;
        }
        f.write_str("}")
    }
}

/// Whether `(m_i, w_x)` and `(m_j, w_y)` cross: `(i - j)(x - y) < 0`.
///
/// Panics if the edges share an endpoint.
pub fn crosses(e1: Pair, e2: Pair) -> bool {
    assert!(
        e1.0 != e2.0 && e1.1 != e2.1,
        "edges {e1:?} and {e2:?} share an endpoint"
    );
    crosses_unchecked(e1, e2)
}

#[inline]
fn crosses_unchecked((i, x): Pair, (j, y): Pair) -> bool {
    (i < j && x > y) || (i > j && x < y)
}

/// No two pairs of `m` cross.
pub fn is_noncrossing(m: &Matching) -> bool {
    // pairs come out in ascending man order, so noncrossing means the women
    // ascend too
    let mut last = 0;
    for (_, j) in m.pairs() {
        if j < last {
            return false;
        }
        last = j;
    }
    true
}

/// `(m_i, w_j)` are not partners yet each strictly prefers the other to their
/// current partner. Being unmatched ranks as `UNRANKED`, so nobody prefers a
/// person missing from their list.
pub fn is_blocking_pair(ranks: &RankTable, m: &Matching, i: usize, j: usize) -> bool {
    if m.partner_of_man(i) == Some(j) {
        return false;
    }
    ranks.man_rank(i, j) < ranks.man_rank_of(i, m.partner_of_man(i))
        && ranks.woman_rank(j, i) < ranks.woman_rank_of(j, m.partner_of_woman(j))
}

/// A blocking pair whose edge crosses no pair of `m`.
pub fn is_noncrossing_blocking_pair(ranks: &RankTable, m: &Matching, i: usize, j: usize) -> bool {
    is_blocking_pair(ranks, m, i, j) && !m.pairs().any(|e| crosses_unchecked((i, j), e))
}

/// All noncrossing blocking pairs, sorted by `(i, j)`.
pub fn find_noncrossing_blocking_pairs(ranks: &RankTable, m: &Matching) -> Vec<Pair> {
    let mut out = Vec::new();
    for i in 1..=ranks.n_men() {
        let (lo, hi) = m.accessible_range(i);
        for j in lo..=hi {
            if is_blocking_pair(ranks, m, i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// All blocking pairs, crossing or not, sorted by `(i, j)`.
pub fn find_blocking_pairs(ranks: &RankTable, m: &Matching) -> Vec<Pair> {
    let mut out = Vec::new();
    for i in 1..=ranks.n_men() {
        for j in 1..=ranks.n_women() {
            if is_blocking_pair(ranks, m, i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Weakly stable noncrossing: noncrossing and no noncrossing blocking pair.
pub fn is_wsnm(ranks: &RankTable, m: &Matching) -> bool {
    is_noncrossing(m) && find_noncrossing_blocking_pairs(ranks, m).is_empty()
}

/// Strongly stable noncrossing: noncrossing and no blocking pair at all.
pub fn is_ssnm(ranks: &RankTable, m: &Matching) -> bool {
    is_noncrossing(m) && find_blocking_pairs(ranks, m).is_empty()
}

/// Woman `j` is accessible and available to man `i`: reachable without
/// crossing, she ranks him, and she is free, already his, or prefers him to
/// her partner.
pub fn is_available(ranks: &RankTable, m: &Matching, i: usize, j: usize) -> bool {
    let (lo, hi) = m.accessible_range(i);
    lo <= j && j <= hi && accepts(ranks, m, i, j)
}

/// Woman `j` would take man `i` if he proposed, ignoring geometry.
#[inline]
pub(crate) fn accepts(ranks: &RankTable, m: &Matching, i: usize, j: usize) -> bool {
    let rank = ranks.woman_rank(j, i);
    rank.is_ranked()
        && match m.partner_of_woman(j) {
            None => true,
            Some(k) if k == i => true,
            Some(k) => rank < ranks.woman_rank(j, k),
        }
}

/// The woman man `i` most prefers among those available to him and ranked
/// strictly above his current partner. `None` means he is stable.
pub fn best_improvement(ranks: &RankTable, m: &Matching, i: usize) -> Option<usize> {
    let (lo, hi) = m.accessible_range(i);
    let current = ranks.man_rank_of(i, m.partner_of_man(i));
    (lo..=hi)
        .filter(|&j| ranks.man_rank(i, j) < current && accepts(ranks, m, i, j))
        .min_by_key(|&j| ranks.man_rank(i, j))
}

/// Every entry before his partner in his list is inaccessible or unavailable.
pub fn is_man_stable(ranks: &RankTable, m: &Matching, i: usize) -> bool {
    best_improvement(ranks, m, i).is_none()
}
