//! Preference instances on two parallel lines.
//!
//! Men `1..=n_men` sit top to bottom on one line and women `1..=n_women` on the
//! other. Every index exposed by this crate is 1-based, so `men_prefs[0]` is the
//! list of man 1 and the entries it holds are woman indices starting at 1.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::ParseError;

/// Which line a person sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Men,
    Women,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Men => f.write_str("man"),
            Side::Women => f.write_str("woman"),
        }
    }
}

/// Two families of strict preference lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    n_men: usize,
    n_women: usize,
    men_prefs: Vec<Vec<usize>>,
    women_prefs: Vec<Vec<usize>>,
}

/// A broken [`Instance`] invariant, as reported by [`Instance::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `index` appears more than once in the list of `person`.
    Duplicate { side: Side, person: usize, index: usize },
    /// `index` is not a valid person on the opposite side.
    OutOfRange { side: Side, person: usize, index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Duplicate { side, person, index } => {
                write!(f, "{side} {person} lists {index} more than once")
            }
            Violation::OutOfRange { side, person, index } => {
                write!(f, "{side} {person} lists out-of-range index {index}")
            }
        }
    }
}

impl Instance {
    /// Builds an instance from raw lists. The lists are taken as given; call
    /// [`Instance::validate`] before relying on the invariants.
    pub fn new(men_prefs: Vec<Vec<usize>>, women_prefs: Vec<Vec<usize>>) -> Self {
        Instance {
            n_men: men_prefs.len(),
            n_women: women_prefs.len(),
            men_prefs,
            women_prefs,
        }
    }

    pub fn n_men(&self) -> usize {
        self.n_men
    }

    pub fn n_women(&self) -> usize {
        self.n_women
    }

    /// Preference list of man `i` (1-based), most preferred first.
    pub fn man_prefs(&self, i: usize) -> &[usize] {
        &self.men_prefs[i - 1]
    }

    /// Preference list of woman `j` (1-based), most preferred first.
    pub fn woman_prefs(&self, j: usize) -> &[usize] {
        &self.women_prefs[j - 1]
    }

    pub fn men_prefs(&self) -> &[Vec<usize>] {
        &self.men_prefs
    }

    pub fn women_prefs(&self) -> &[Vec<usize>] {
        &self.women_prefs
    }

    /// Returns every violated invariant: duplicate entries and indices outside
    /// the opposite side's range.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        check_side(Side::Men, &self.men_prefs, self.n_women, &mut violations);
        check_side(Side::Women, &self.women_prefs, self.n_men, &mut violations);
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// Deletes every entry that is not reciprocated, keeping the relative order
    /// of what remains. Expects a valid instance.
    pub fn normalize_mutual(&self) -> Instance {
        let mut men_accept = vec![false; self.n_men * self.n_women];
        for (i, list) in self.men_prefs.iter().enumerate() {
            for &j in list {
                men_accept[i * self.n_women + (j - 1)] = true;
            }
        }
        let mut women_accept = vec![false; self.n_men * self.n_women];
        for (j, list) in self.women_prefs.iter().enumerate() {
            for &i in list {
                women_accept[(i - 1) * self.n_women + j] = true;
            }
        }
        let mutual = |i: usize, j: usize| {
            let k = (i - 1) * self.n_women + (j - 1);
            men_accept[k] && women_accept[k]
        };

        let men_prefs = self
            .men_prefs
            .iter()
            .enumerate()
            .map(|(i, list)| list.iter().copied().filter(|&j| mutual(i + 1, j)).collect())
            .collect();
        let women_prefs = self
            .women_prefs
            .iter()
            .enumerate()
            .map(|(j, list)| list.iter().copied().filter(|&i| mutual(i, j + 1)).collect())
            .collect();
        Instance {
            n_men: self.n_men,
            n_women: self.n_women,
            men_prefs,
            women_prefs,
        }
    }

    /// True when `w ∈ P_m ⟺ m ∈ P_w` for every pair.
    pub fn is_mutual(&self) -> bool {
        self.normalize_mutual() == *self
    }

    pub fn rank_tables(&self) -> RankTable {
        RankTable::new(self)
    }

    /// Random instance where each pair is mutually acceptable with probability
    /// `density`, and each list is a uniform shuffle of the accepted partners.
    ///
    /// Panics unless `0.0 <= density <= 1.0`.
    pub fn random(n_men: usize, n_women: usize, density: f64, seed: u64) -> Instance {
        assert!(
            (0.0..=1.0).contains(&density),
            "density must lie in [0, 1], got {density}"
        );
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut men_prefs = vec![Vec::new(); n_men];
        let mut women_prefs = vec![Vec::new(); n_women];
        for i in 1..=n_men {
            for j in 1..=n_women {
                if rng.gen_bool(density) {
                    men_prefs[i - 1].push(j);
                    women_prefs[j - 1].push(i);
                }
            }
        }
        for list in men_prefs.iter_mut().chain(women_prefs.iter_mut()) {
            list.shuffle(&mut rng);
        }
        Instance {
            n_men,
            n_women,
            men_prefs,
            women_prefs,
        }
    }

    /// Parses the line-oriented instance format. See [`Instance::to_text`].
    pub fn parse(text: &str) -> Result<Instance, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, line)| (k + 1, line.trim()))
            .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));

        let (header_line, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(0, "missing header `n_men n_women`"))?;
        let counts: Vec<&str> = header.split_whitespace().collect();
        if counts.len() != 2 {
            return Err(ParseError::new(
                header_line,
                format!("header must hold exactly two counts, found {}", counts.len()),
            ));
        }
        let n_men = parse_count(counts[0], header_line)?;
        let n_women = parse_count(counts[1], header_line)?;

        let mut read_side = |count: usize, side: Side| -> Result<Vec<Vec<usize>>, ParseError> {
            (1..=count)
                .map(|person| {
                    let (line_no, line) = lines.next().ok_or_else(|| {
                        ParseError::new(
                            0,
                            format!("expected {n_men} + {n_women} list lines, missing {side} {person}"),
                        )
                    })?;
                    parse_list(line, line_no)
                })
                .collect()
        };
        let men_prefs = read_side(n_men, Side::Men)?;
        let women_prefs = read_side(n_women, Side::Women)?;

        if let Some((line_no, _)) = lines.next() {
            return Err(ParseError::new(
                line_no,
                format!("unexpected extra line after {n_men} + {n_women} list lines"),
            ));
        }
        Ok(Instance {
            n_men,
            n_women,
            men_prefs,
            women_prefs,
        })
    }

    /// Serializes in the format accepted by [`Instance::parse`]: a header line
    /// `n_men n_women`, one line per man, then one line per woman. Empty lists
    /// are written as `-`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n_men, self.n_women)?;
        for list in self.men_prefs.iter().chain(&self.women_prefs) {
            if list.is_empty() {
                writeln!(f, "-")?;
            } else {
                let mut first = true;
                for idx in list {
                    if !first {
                        f.write_str(" ")?;
                    }
                    write!(f, "{idx}")?;
                    first = false;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Instance {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Instance::parse(s)
    }
}

fn check_side(side: Side, lists: &[Vec<usize>], bound: usize, out: &mut Vec<Violation>) {
    for (p, list) in lists.iter().enumerate() {
        let person = p + 1;
        let mut seen = vec![false; bound + 1];
        for &index in list {
            if index == 0 || index > bound {
                out.push(Violation::OutOfRange { side, person, index });
            } else if seen[index] {
                out.push(Violation::Duplicate { side, person, index });
            } else {
                seen[index] = true;
            }
        }
    }
}

fn parse_count(token: &str, line: usize) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("`{token}` is not a count")))
}

fn parse_list(line: &str, line_no: usize) -> Result<Vec<usize>, ParseError> {
    if line == "-" {
        return Ok(Vec::new());
    }
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| ParseError::new(line_no, format!("`{tok}` is not an index")))
        })
        .collect()
}

/// Position of a person in someone's preference list; 1 is the favourite.
///
/// [`Rank::UNRANKED`] marks a person absent from the list and compares greater
/// than every finite rank, so "prefers `a` to `b`" is always `rank(a) < rank(b)`
/// even when `b` is nobody.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rank(u32);

impl Rank {
    pub const UNRANKED: Rank = Rank(u32::MAX);

    /// Panics on 0 or on a value colliding with the sentinel.
    pub fn new(position: u32) -> Rank {
        assert!(position > 0 && position < u32::MAX, "rank out of range: {position}");
        Rank(position)
    }

    pub fn is_ranked(self) -> bool {
        self != Rank::UNRANKED
    }

    /// Finite rank value, or `None` for the sentinel.
    pub fn get(self) -> Option<u32> {
        self.is_ranked().then_some(self.0)
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.get() {
            Some(r) => write!(f, "{r}"),
            None => f.write_str("inf"),
        }
    }
}

/// O(1) rank lookups for both sides of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    n_men: usize,
    n_women: usize,
    // row-major, n_men rows of n_women
    men: Vec<Rank>,
    // row-major, n_women rows of n_men
    women: Vec<Rank>,
}

impl RankTable {
    /// Expects a valid instance (no duplicates, indices in range).
    pub fn new(inst: &Instance) -> RankTable {
        let (n_men, n_women) = (inst.n_men, inst.n_women);
        let mut men = vec![Rank::UNRANKED; n_men * n_women];
        for (i, list) in inst.men_prefs.iter().enumerate() {
            for (pos, &j) in list.iter().enumerate() {
                men[i * n_women + (j - 1)] = Rank::new(pos as u32 + 1);
            }
        }
        let mut women = vec![Rank::UNRANKED; n_men * n_women];
        for (j, list) in inst.women_prefs.iter().enumerate() {
            for (pos, &i) in list.iter().enumerate() {
                women[j * n_men + (i - 1)] = Rank::new(pos as u32 + 1);
            }
        }
        RankTable {
            n_men,
            n_women,
            men,
            women,
        }
    }

    pub fn n_men(&self) -> usize {
        self.n_men
    }

    pub fn n_women(&self) -> usize {
        self.n_women
    }

    /// Rank of woman `j` in the list of man `i`.
    #[inline]
    pub fn man_rank(&self, i: usize, j: usize) -> Rank {
        self.men[(i - 1) * self.n_women + (j - 1)]
    }

    /// Rank of man `i` in the list of woman `j`.
    #[inline]
    pub fn woman_rank(&self, j: usize, i: usize) -> Rank {
        self.women[(j - 1) * self.n_men + (i - 1)]
    }

    /// Man `i`'s ranks of women `1..=n_women`, indexed from 0.
    pub fn man_row(&self, i: usize) -> &[Rank] {
        &self.men[(i - 1) * self.n_women..i * self.n_women]
    }

    /// Rank man `i` gives his partner, `UNRANKED` when he has none.
    #[inline]
    pub fn man_rank_of(&self, i: usize, partner: Option<usize>) -> Rank {
        partner.map_or(Rank::UNRANKED, |j| self.man_rank(i, j))
    }

    /// Rank woman `j` gives her partner, `UNRANKED` when she has none.
    #[inline]
    pub fn woman_rank_of(&self, j: usize, partner: Option<usize>) -> Rank {
        partner.map_or(Rank::UNRANKED, |i| self.woman_rank(j, i))
    }

    pub fn is_mutually_acceptable(&self, i: usize, j: usize) -> bool {
        self.man_rank(i, j).is_ranked() && self.woman_rank(j, i).is_ranked()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const WORKED_EXAMPLE: &str = "\
# three men, three women
3 3
3 1 2
2 3 1
2 1 3

3 2 1
3 2 1
3 2 1
";

    #[test]
    fn parses_worked_example() {
        let inst = Instance::parse(WORKED_EXAMPLE).unwrap();
        assert_eq!(inst.n_men(), 3);
        assert_eq!(inst.man_prefs(1), &[3, 1, 2]);
        assert_eq!(inst.man_prefs(3), &[2, 1, 3]);
        assert_eq!(inst.woman_prefs(2), &[3, 2, 1]);
        assert_eq!(inst.validate(), Ok(()));
    }

    #[test]
    fn dash_is_empty_list() {
        let inst = Instance::parse("1 1\n-\n-\n").unwrap();
        assert!(inst.man_prefs(1).is_empty());
        assert!(inst.woman_prefs(1).is_empty());
    }

    #[test]
    fn short_file_is_rejected() {
        let err = Instance::parse("2 3\n1\n2\n1\n2\n").unwrap_err();
        assert!(err.to_string().contains("missing woman 3"), "{err}");
    }

    #[test]
    fn bad_tokens_report_line_numbers() {
        let err = Instance::parse("# c\n1 1\nx\n1\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = Instance::parse("1\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = Instance::parse("1 1\n1\n1\n1\n").unwrap_err();
        assert_eq!(err.line, 4);
        assert!(Instance::parse("# only comments\n\n").is_err());
    }

    #[test]
    fn validate_reports_duplicates_and_range() {
        let dup = Instance::new(vec![vec![2, 2], vec![]], vec![vec![], vec![]]);
        assert_eq!(
            dup.validate(),
            Err(vec![Violation::Duplicate { side: Side::Men, person: 1, index: 2 }])
        );
        let range = Instance::new(vec![vec![], vec![]], vec![vec![5]]);
        assert_eq!(
            range.validate(),
            Err(vec![Violation::OutOfRange { side: Side::Women, person: 1, index: 5 }])
        );
    }

    #[test]
    fn normalization_drops_one_sided_entries() {
        let inst = Instance::new(vec![vec![1, 2], vec![1]], vec![vec![2], vec![1]]);
        let norm = inst.normalize_mutual();
        assert_eq!(norm.man_prefs(1), &[2]);
        assert_eq!(norm.man_prefs(2), &[1]);
        assert_eq!(norm.woman_prefs(1), &[2]);
        assert_eq!(norm.woman_prefs(2), &[1]);
        assert!(norm.is_mutual());

        let mutual = Instance::parse(WORKED_EXAMPLE).unwrap();
        assert_eq!(mutual.normalize_mutual(), mutual);

        let one_sided = Instance::new(vec![vec![1], vec![2]], vec![vec![], vec![]]);
        let norm = one_sided.normalize_mutual();
        assert!(norm.men_prefs().iter().chain(norm.women_prefs()).all(Vec::is_empty));
    }

    #[test]
    fn ranks_follow_list_order() {
        let ranks = Instance::parse(WORKED_EXAMPLE).unwrap().rank_tables();
        assert_eq!(ranks.man_rank(1, 3), Rank::new(1));
        assert_eq!(ranks.man_rank(1, 2), Rank::new(3));
        assert_eq!(ranks.woman_rank(1, 3), Rank::new(1));

        let sparse = Instance::new(vec![vec![1], vec![]], vec![vec![1]]).rank_tables();
        assert_eq!(sparse.man_rank(2, 1), Rank::UNRANKED);
        assert!(Rank::UNRANKED > Rank::new(u32::MAX - 1));
        assert_eq!(sparse.man_rank_of(1, None), Rank::UNRANKED);
    }

    #[test]
    fn full_lists_rank_as_permutations() {
        let inst = Instance::random(6, 6, 1.0, 3);
        let ranks = inst.rank_tables();
        for i in 1..=6 {
            let mut row: Vec<u32> = ranks.man_row(i).iter().map(|r| r.get().unwrap()).collect();
            row.sort_unstable();
            assert_eq!(row, (1..=6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn generator_is_deterministic_and_respects_density() {
        assert_eq!(Instance::random(5, 4, 0.5, 11), Instance::random(5, 4, 0.5, 11));
        let full = Instance::random(5, 4, 1.0, 2);
        assert!(full.men_prefs().iter().all(|l| l.len() == 4));
        assert!(full.women_prefs().iter().all(|l| l.len() == 5));
        let empty = Instance::random(5, 4, 0.0, 2);
        assert!(empty.men_prefs().iter().chain(empty.women_prefs()).all(Vec::is_empty));
        assert!(Instance::random(7, 3, 0.4, 9).is_mutual());
    }
}
