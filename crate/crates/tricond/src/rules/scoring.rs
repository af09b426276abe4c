//! Positional scoring rules with exact rational score vectors.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use super::argmax_by;
use crate::profile::{Candidate, ChoiceSet, Profile};

pub type Score = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Monotonicity {
    /// `s1 > s2 > s3`
    Strict,
    /// `s1 >= s2 >= s3` and `s1 > s3`
    Weak,
    Other,
}

/// Points `(s1, s2, s3)` for first, second and third place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ScoringVector {
    pub s1: Score,
    pub s2: Score,
    pub s3: Score,
}

impl ScoringVector {
    pub fn new(s1: Score, s2: Score, s3: Score) -> ScoringVector {
        ScoringVector { s1, s2, s3 }
    }

    pub fn integer(s1: i64, s2: i64, s3: i64) -> ScoringVector {
        ScoringVector::new(s1.into(), s2.into(), s3.into())
    }

    /// `(2, 0, -2)`, matching margin-based Borda scores.
    pub fn borda() -> ScoringVector {
        ScoringVector::integer(2, 0, -2)
    }

    pub fn plurality() -> ScoringVector {
        ScoringVector::integer(1, 0, 0)
    }

    pub fn monotonicity(&self) -> Monotonicity {
        if self.s1 > self.s2 && self.s2 > self.s3 {
            Monotonicity::Strict
        } else if self.s1 >= self.s2 && self.s2 >= self.s3 && self.s1 > self.s3 {
            Monotonicity::Weak
        } else {
            Monotonicity::Other
        }
    }

    /// Equal gaps `s1 - s2 = s2 - s3 > 0`: a positive affine image of Borda.
    pub fn is_borda_like(&self) -> bool {
        self.s1 - self.s2 == self.s2 - self.s3 && self.s1 > self.s2
    }
}

impl fmt::Display for ScoringVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.s1, self.s2, self.s3)
    }
}

impl FromStr for ScoringVector {
    type Err = String;

    /// Three comma-separated rationals, e.g. `2,1,0` or `1,1/2,0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<Score> = s
            .split(',')
            .map(|t| t.trim().parse::<Score>().map_err(|e| format!("`{t}`: {e}")))
            .collect::<Result<_, _>>()?;
        match parts[..] {
            [s1, s2, s3] => Ok(ScoringVector::new(s1, s2, s3)),
            _ => Err(format!("expected three scores, got `{s}`")),
        }
    }
}

fn total_score(profile: &Profile, v: &ScoringVector, c: Candidate) -> Score {
    let [first, second, third] = profile.rank_counts(c);
    v.s1 * first as i64 + v.s2 * second as i64 + v.s3 * third as i64
}

pub fn scoring_rule(profile: &Profile, v: &ScoringVector) -> ChoiceSet {
    argmax_by(ChoiceSet::ALL, |c| total_score(profile, v, c))
}

/// Whether `x` is the unique winner under every scoring vector of the given
/// class, decided from first-place and top-two counts.
///
/// A candidate's score is `(s1-s2)·first + (s2-s3)·top_two + s3·n`, so the
/// score difference against a rival is `(s1-s2)·Δf + (s2-s3)·Δfm`.
pub fn dominates_all_scoring(profile: &Profile, x: Candidate, mode: Monotonicity) -> bool {
    let top = |c: Candidate| {
        let [f, s, _] = profile.rank_counts(c);
        (f as i64, (f + s) as i64)
    };
    let (fx, fmx) = top(x);
    Candidate::ALL.into_iter().filter(|&y| y != x).all(|y| {
        let (fy, fmy) = top(y);
        let (df, dfm) = (fx - fy, fmx - fmy);
        match mode {
            Monotonicity::Weak => df > 0 && dfm > 0,
            Monotonicity::Strict => df >= 0 && dfm >= 0 && (df, dfm) != (0, 0),
            Monotonicity::Other => false,
        }
    })
}
