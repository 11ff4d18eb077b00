//! Predicted periods from the subtraction set alone.
//!
//! Games split on whether the largest subtrahend is the sum of the other
//! two. When it is (`s3 = s1 + s2`), the period follows a closed form
//! driven by `(s2 - s1) mod 2*s1`. When it is not, the period is pinned
//! down to a short candidate list built from gcds of the pairwise sums.
//! [`predict`] packages both; the verification layer compares predictions
//! against measured periods.

use crate::game::SubtractionSet;
use crate::num::{gcd, gcd_all};
use std::fmt;

/// Which arm of the period characterization applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum GameCase {
    /// `s3 = s1 + s2`: the period has a closed form.
    #[serde(rename = "I")]
    CaseI,
    /// `s3 != s1 + s2`: the period lies in a gcd-derived candidate set.
    #[serde(rename = "II")]
    CaseII,
}

impl fmt::Display for GameCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GameCase::CaseI => "I",
            GameCase::CaseII => "II",
        })
    }
}

/// Splits games on `s3 = s1 + s2`.
///
/// ```
/// use nimperiod::{classify, GameCase, SubtractionSet};
///
/// assert_eq!(classify(&SubtractionSet::new(2, 3, 5)?), GameCase::CaseI);
/// assert_eq!(classify(&SubtractionSet::new(1, 2, 4)?), GameCase::CaseII);
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn classify(game: &SubtractionSet) -> GameCase {
    if game.s1() + game.s2() == game.s3() {
        GameCase::CaseI
    } else {
        GameCase::CaseII
    }
}

/// Which branch of the closed form a `s3 = s1 + s2` game falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `j < s1`: period `s2 + s3 - j`.
    Low,
    /// `s1 <= j < 2*s1`: period `s1 * (s2 + s3 + j - 2*s1) / gcd(s1, 2*s1 - j)`.
    High,
}

/// The closed-form inputs of a `s3 = s1 + s2` game.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CaseIParams {
    /// `(s2 - s1) mod 2*s1`.
    pub j: u64,
    pub branch: Branch,
}

impl CaseIParams {
    pub fn for_game(game: &SubtractionSet) -> Result<Self, ConjectureError> {
        if classify(game) != GameCase::CaseI {
            return Err(ConjectureError::NotCaseI { game: *game });
        }
        let s1 = u64::from(game.s1());
        let s2 = u64::from(game.s2());
        let j = (s2 - s1) % (2 * s1);
        let branch = if j < s1 { Branch::Low } else { Branch::High };
        Ok(Self { j, branch })
    }
}

/// The game is in the other arm of the characterization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConjectureError {
    #[error("{game} has s3 != s1 + s2, so the closed form does not apply")]
    NotCaseI { game: SubtractionSet },
    #[error("{game} has s3 = s1 + s2, so the candidate-set arm does not apply")]
    NotCaseII { game: SubtractionSet },
}

fn case1_period_raw(game: &SubtractionSet) -> u64 {
    let s1 = u64::from(game.s1());
    let s2 = u64::from(game.s2());
    let s3 = u64::from(game.s3());
    let j = (s2 - s1) % (2 * s1);
    if j < s1 {
        s2 + s3 - j
    } else {
        // The gcd divides the product exactly; the division never truncates.
        let d = gcd(s1, 2 * s1 - j);
        debug_assert_eq!((s1 * (s2 + s3 + j - 2 * s1)) % d, 0);
        s1 * (s2 + s3 + j - 2 * s1) / d
    }
}

/// Closed-form period for a game with `s3 = s1 + s2`.
///
/// With `j = (s2 - s1) mod 2*s1`:
/// the period is `s2 + s3 - j` when `j < s1`, and
/// `s1 * (s2 + s3 + j - 2*s1) / gcd(s1, 2*s1 - j)` otherwise.
///
/// ```
/// use nimperiod::{case1_period, SubtractionSet};
///
/// assert_eq!(case1_period(&SubtractionSet::new(2, 3, 5)?)?, 7);
/// assert_eq!(case1_period(&SubtractionSet::new(2, 5, 7)?)?, 22);
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn case1_period(game: &SubtractionSet) -> Result<u64, ConjectureError> {
    CaseIParams::for_game(game)?;
    Ok(case1_period_raw(game))
}

/// The three pairwise sums of a subtraction set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairSums {
    pub sum12: u64,
    pub sum13: u64,
    pub sum23: u64,
}

impl PairSums {
    pub fn of(game: &SubtractionSet) -> Self {
        let [s1, s2, s3] = game.parts().map(u64::from);
        Self {
            sum12: s1 + s2,
            sum13: s1 + s3,
            sum23: s2 + s3,
        }
    }

    pub fn as_array(&self) -> [u64; 3] {
        [self.sum12, self.sum13, self.sum23]
    }

    /// Pairs `(i, j)` with `p | s_i + s_j`, as 1-based indices.
    pub fn divisible_pairs(&self, p: u64) -> Vec<(u8, u8)> {
        let mut pairs = Vec::with_capacity(3);
        if p != 0 {
            for (pair, sum) in [
                ((1, 2), self.sum12),
                ((1, 3), self.sum13),
                ((2, 3), self.sum23),
            ] {
                if sum % p == 0 {
                    pairs.push(pair);
                }
            }
        }
        pairs
    }

    /// Gcd of the pair sums divisible by `p`, or `None` if there are none.
    pub fn gcd_of_divisible(&self, p: u64) -> Option<u64> {
        let divisible: Vec<u64> = self
            .as_array()
            .into_iter()
            .filter(|sum| p != 0 && sum % p == 0)
            .collect();
        if divisible.is_empty() {
            None
        } else {
            Some(gcd_all(&divisible))
        }
    }
}

/// Does `p` satisfy the candidate-set condition for a `s3 != s1 + s2` game?
///
/// `p` qualifies when it divides at least one pairwise sum and equals the
/// gcd of all the pairwise sums it divides. The qualifying values are
/// exactly the entries of [`case2_candidates`].
///
/// ```
/// use nimperiod::{case2_check, SubtractionSet};
///
/// let game = SubtractionSet::new(1, 2, 4)?;
/// assert!(case2_check(&game, 3)?);
/// assert!(!case2_check(&game, 2)?);
/// assert!(case2_check(&game, 6)?);
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn case2_check(game: &SubtractionSet, p: u64) -> Result<bool, ConjectureError> {
    if classify(game) != GameCase::CaseII {
        return Err(ConjectureError::NotCaseII { game: *game });
    }
    Ok(PairSums::of(game).gcd_of_divisible(p) == Some(p))
}

/// All periods the characterization allows for a `s3 != s1 + s2` game.
///
/// Built by taking the gcd of every nonempty subset of the pairwise sums
/// and keeping the self-consistent ones (those equal to the gcd of all the
/// sums they divide). Sorted, deduplicated, never empty, at most seven
/// entries.
///
/// ```
/// use nimperiod::{case2_candidates, SubtractionSet};
///
/// let game = SubtractionSet::new(1, 2, 4)?;
/// assert_eq!(case2_candidates(&game)?, vec![1, 3, 5, 6]);
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn case2_candidates(game: &SubtractionSet) -> Result<Vec<u64>, ConjectureError> {
    if classify(game) != GameCase::CaseII {
        return Err(ConjectureError::NotCaseII { game: *game });
    }
    let sums = PairSums::of(game);
    let arr = sums.as_array();
    let mut candidates = Vec::with_capacity(7);
    for mask in 1u32..8 {
        let subset: Vec<u64> = (0..3)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| arr[i])
            .collect();
        let g = gcd_all(&subset);
        // Self-consistency: g must be the gcd of *all* sums it divides,
        // not just this subset's.
        if sums.gcd_of_divisible(g) == Some(g) {
            candidates.push(g);
        }
    }
    candidates.sort_unstable();
    candidates.dedup();
    Ok(candidates)
}

/// A period prediction made from the subtraction set alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Prediction {
    /// `s3 = s1 + s2`: the exact period.
    CaseI { period: u64 },
    /// `s3 != s1 + s2`: the period is claimed to be one of these.
    CaseII { candidates: Vec<u64> },
}

impl Prediction {
    pub fn case(&self) -> GameCase {
        match self {
            Prediction::CaseI { .. } => GameCase::CaseI,
            Prediction::CaseII { .. } => GameCase::CaseII,
        }
    }

    /// Is a measured period consistent with this prediction?
    pub fn admits(&self, period: u64) -> bool {
        match self {
            Prediction::CaseI { period: p } => *p == period,
            Prediction::CaseII { candidates } => candidates.binary_search(&period).is_ok(),
        }
    }
}

/// Predicted period (Case I) or candidate set (Case II) for any game.
pub fn predict(game: &SubtractionSet) -> Prediction {
    match classify(game) {
        GameCase::CaseI => Prediction::CaseI {
            period: case1_period_raw(game),
        },
        GameCase::CaseII => {
            let candidates = case2_candidates(game).expect("classify() said Case II");
            Prediction::CaseII { candidates }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn game(s1: u32, s2: u32, s3: u32) -> SubtractionSet {
        SubtractionSet::new(s1, s2, s3).unwrap()
    }

    #[test]
    fn classification_splits_on_the_pair_sum() {
        assert_eq!(classify(&game(1, 2, 3)), GameCase::CaseI);
        assert_eq!(classify(&game(5, 9, 14)), GameCase::CaseI);
        assert_eq!(classify(&game(1, 2, 4)), GameCase::CaseII);
        assert_eq!(classify(&game(3, 7, 9)), GameCase::CaseII);
        assert_eq!(GameCase::CaseI.to_string(), "I");
        assert_eq!(GameCase::CaseII.to_string(), "II");
    }

    #[test]
    fn closed_form_low_branch() {
        // j = (s2 - s1) mod 2*s1 < s1: period is s2 + s3 - j.
        for ((a, b, c), j, p) in [
            ((2, 3, 5), 1, 7),
            ((3, 5, 8), 2, 11),
            ((4, 6, 10), 2, 14),
            ((6, 10, 16), 4, 22),
        ] {
            let g = game(a, b, c);
            let params = CaseIParams::for_game(&g).unwrap();
            assert_eq!((params.j, params.branch), (j, Branch::Low), "{g}");
            assert_eq!(case1_period(&g).unwrap(), p, "{g}");
        }
    }

    #[test]
    fn closed_form_high_branch() {
        for ((a, b, c), j, p) in [
            ((1, 2, 3), 1, 4),     // 1 * (2 + 3 + 1 - 2) / gcd(1, 1)
            ((5, 13, 18), 8, 145), // 5 * (13 + 18 + 8 - 10) / gcd(5, 2)
            ((2, 5, 7), 3, 22),    // 2 * (5 + 7 + 3 - 4) / gcd(2, 1)
            ((2, 4, 6), 2, 8),     // 2 * (4 + 6 + 2 - 4) / gcd(2, 2)
        ] {
            let g = game(a, b, c);
            let params = CaseIParams::for_game(&g).unwrap();
            assert_eq!((params.j, params.branch), (j, Branch::High), "{g}");
            assert_eq!(case1_period(&g).unwrap(), p, "{g}");
        }
    }

    #[test]
    fn closed_form_rejects_other_games() {
        assert_eq!(
            case1_period(&game(1, 2, 4)),
            Err(ConjectureError::NotCaseI {
                game: game(1, 2, 4)
            })
        );
        assert_eq!(
            case2_candidates(&game(1, 2, 3)),
            Err(ConjectureError::NotCaseII {
                game: game(1, 2, 3)
            })
        );
        assert_eq!(
            case2_check(&game(1, 2, 3), 4),
            Err(ConjectureError::NotCaseII {
                game: game(1, 2, 3)
            })
        );
    }

    #[test]
    fn candidate_sets_match_hand_derived_values() {
        for ((a, b, c), expected) in [
            ((1, 2, 4), vec![1, 3, 5, 6]),
            ((1, 4, 10), vec![1, 5, 11, 14]),
            ((3, 4, 10), vec![1, 7, 13, 14]),
            ((2, 3, 10), vec![1, 5, 12, 13]),
            ((4, 6, 9), vec![1, 5, 10, 13, 15]),
        ] {
            assert_eq!(case2_candidates(&game(a, b, c)).unwrap(), expected);
        }
    }

    #[test]
    fn check_agrees_with_candidate_membership() {
        for (a, b, c) in [(1, 2, 4), (1, 4, 10), (4, 6, 9), (3, 7, 9), (7, 30, 55)] {
            let g = game(a, b, c);
            let candidates = case2_candidates(&g).unwrap();
            let max = *candidates.last().unwrap();
            for p in 0..=max + 3 {
                assert_eq!(
                    case2_check(&g, p).unwrap(),
                    candidates.binary_search(&p).is_ok(),
                    "{g} p={p}"
                );
            }
        }
    }

    #[test]
    fn pair_sum_helpers() {
        let sums = PairSums::of(&game(1, 2, 4));
        assert_eq!(sums.as_array(), [3, 5, 6]);
        assert_eq!(sums.divisible_pairs(3), vec![(1, 2), (2, 3)]);
        assert_eq!(sums.divisible_pairs(5), vec![(1, 3)]);
        assert_eq!(sums.divisible_pairs(7), vec![]);
        assert_eq!(sums.divisible_pairs(0), vec![]);
        assert_eq!(sums.gcd_of_divisible(3), Some(3));
        assert_eq!(sums.gcd_of_divisible(2), Some(6));
        assert_eq!(sums.gcd_of_divisible(7), None);
        assert_eq!(sums.gcd_of_divisible(0), None);
    }

    #[test]
    fn predictions_cover_both_cases() {
        assert_eq!(predict(&game(2, 3, 5)), Prediction::CaseI { period: 7 });
        let p = predict(&game(1, 2, 4));
        assert_eq!(
            p,
            Prediction::CaseII {
                candidates: vec![1, 3, 5, 6]
            }
        );
        assert!(p.admits(3));
        assert!(!p.admits(4));
        assert!(predict(&game(2, 3, 5)).admits(7));
        assert!(!predict(&game(2, 3, 5)).admits(14));
    }
}
