//! Rules computed directly from the margin graph.

use std::cmp::Ordering;

use super::argmax_by;
use crate::profile::{Candidate, ChoiceSet, MarginGraph};

/// Argmax over candidates of their worst margin.
pub fn maximin(m: &MarginGraph) -> ChoiceSet {
    argmax_by(ChoiceSet::ALL, |x| *m.margins_of(x).iter().min().unwrap())
}

/// A candidate's two margins in non-decreasing order, compared lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SortedMargins {
    pub worst: i64,
    pub second: i64,
}

impl Ord for SortedMargins {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.worst, self.second).cmp(&(other.worst, other.second))
    }
}

impl PartialOrd for SortedMargins {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn sorted_margins(m: &MarginGraph, x: Candidate) -> SortedMargins {
    let [p, q] = m.margins_of(x);
    SortedMargins {
        worst: p.min(q),
        second: p.max(q),
    }
}

/// Candidates whose sorted margin vector is lexicographically maximal.
pub fn leximin(m: &MarginGraph) -> ChoiceSet {
    argmax_by(ChoiceSet::ALL, |x| sorted_margins(m, x))
}

fn borda_among(m: &MarginGraph, remaining: ChoiceSet, x: Candidate) -> i64 {
    remaining.iter().map(|y| m.margin(x, y)).sum()
}

/// Nanson's elimination rule.
///
/// Non-strict: while some remaining candidate has positive Borda score
/// (restricted to the remaining candidates), drop every candidate whose
/// score is at most zero. Strict: drop only negative scores, and stop as
/// soon as a round would drop nobody.
pub fn nanson(m: &MarginGraph, strict: bool) -> ChoiceSet {
    let mut remaining = ChoiceSet::ALL;
    loop {
        let scores: Vec<(Candidate, i64)> = remaining
            .iter()
            .map(|x| (x, borda_among(m, remaining, x)))
            .collect();
        let keep = if strict {
            ChoiceSet::from_candidates(scores.iter().filter(|(_, s)| *s >= 0).map(|(c, _)| *c))
        } else {
            ChoiceSet::from_candidates(scores.iter().filter(|(_, s)| *s > 0).map(|(c, _)| *c))
        };
        match keep {
            Some(k) if k != remaining => remaining = k,
            _ => return remaining,
        }
    }
}

/// The Condorcet winner if there is one, otherwise the Borda winners.
pub fn black(m: &MarginGraph) -> ChoiceSet {
    match m.condorcet_winner() {
        Some(w) => ChoiceSet::singleton(w),
        None => borda(m),
    }
}

pub fn borda(m: &MarginGraph) -> ChoiceSet {
    let beta = m.borda_scores();
    argmax_by(ChoiceSet::ALL, |x| beta[x.index()])
}

/// Baldwin's rule with parallel-universe tie-breaking: every way of
/// eliminating a Borda loser is explored and the survivors are pooled.
pub fn baldwin(m: &MarginGraph) -> ChoiceSet {
    fn go(m: &MarginGraph, remaining: ChoiceSet) -> ChoiceSet {
        if remaining.is_singleton() {
            return remaining;
        }
        let scores: Vec<(Candidate, i64)> = remaining
            .iter()
            .map(|x| (x, borda_among(m, remaining, x)))
            .collect();
        let low = scores.iter().map(|(_, s)| *s).min().unwrap();
        if scores.iter().all(|(_, s)| *s == low) {
            return remaining;
        }
        scores
            .iter()
            .filter(|(_, s)| *s == low)
            .map(|(loser, _)| {
                let next = remaining
                    .difference(ChoiceSet::singleton(*loser))
                    .expect("a strict minimizer never exhausts the field");
                go(m, next)
            })
            .reduce(ChoiceSet::union)
            .unwrap()
    }
    go(m, ChoiceSet::ALL)
}

/// Argmax of pairwise wins minus pairwise losses.
pub fn copeland(m: &MarginGraph) -> ChoiceSet {
    argmax_by(ChoiceSet::ALL, |x| {
        m.margins_of(x).iter().map(|v| v.signum()).sum::<i64>()
    })
}

/// The smallest non-empty set whose members all strictly beat every outsider.
pub fn top_cycle_def(m: &MarginGraph) -> ChoiceSet {
    let mut sets: Vec<ChoiceSet> = ChoiceSet::every().collect();
    sets.sort_by_key(|s| s.len());
    sets.into_iter()
        .find(|s| {
            s.iter().all(|x| {
                Candidate::ALL
                    .into_iter()
                    .filter(|y| !s.contains(*y))
                    .all(|y| m.margin(x, y) > 0)
            })
        })
        .unwrap()
}

/// `x` is defensible if every `y` is matched by some `z` with `m_zy >= m_yx`.
pub fn defensible_set(m: &MarginGraph) -> ChoiceSet {
    ChoiceSet::from_candidates(Candidate::ALL.into_iter().filter(|&x| {
        Candidate::ALL.into_iter().all(|y| {
            Candidate::ALL
                .into_iter()
                .any(|z| m.margin(z, y) >= m.margin(y, x))
        })
    }))
    .expect("the defensible set of three candidates is never empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Profile;

    fn m(s: &str) -> MarginGraph {
        s.parse::<Profile>().unwrap().margins()
    }

    fn set(s: &str) -> ChoiceSet {
        s.parse().unwrap()
    }

    #[test]
    fn maximin_examples() {
        assert_eq!(maximin(&m("4abc+2bca+3cab")), set("a"));
        assert_eq!(maximin(&m("1abc+1bca+1cab")), set("abc"));
        assert_eq!(maximin(&m("3abc+3bca+2cab+1acb")), set("a"));
    }

    #[test]
    fn leximin_examples() {
        assert_eq!(leximin(&m("1acb+1cab")), set("ac"));
        assert_eq!(leximin(&m("1abc+1acb+2cab")), set("a"));
        assert_eq!(leximin(&m("2abc+1bca+2cab")), set("a"));
    }

    #[test]
    fn nanson_examples() {
        assert_eq!(nanson(&m("1abc+1acb+2cab"), false), set("ac"));
        assert_eq!(nanson(&m("2abc+1bca+2cab"), true), set("c"));
        assert_eq!(nanson(&m("2abc+1bca+2cab"), false), set("a"));
        // all tied: nobody is removed
        assert_eq!(nanson(&MarginGraph::ZERO, false), set("abc"));
        assert_eq!(nanson(&MarginGraph::ZERO, true), set("abc"));
    }

    #[test]
    fn black_examples() {
        assert_eq!(black(&m("3abc+1bca+4cab")), set("a"));
        assert_eq!(black(&m("4acb+5bac+3cab+5cba")), set("c"));
        assert_eq!(black(&m("2acb+1cab")), set("a"));
    }

    #[test]
    fn baldwin_examples() {
        assert_eq!(baldwin(&m("4acb+5bac+3cab+5cba")), set("a"));
        assert_eq!(baldwin(&m("1abc+3bca+4cab")), set("bc"));
        assert_eq!(baldwin(&m("1abc+1bca+1cab")), set("abc"));
    }

    #[test]
    fn copeland_examples() {
        assert_eq!(copeland(&m("1abc+1cab")), set("a"));
        assert_eq!(copeland(&m("1acb+1cab")), set("ac"));
        assert_eq!(copeland(&m("1abc+1bca+1cab")), set("abc"));
    }

    #[test]
    fn top_cycle_examples() {
        assert_eq!(top_cycle_def(&m("1acb+1cab")), set("ac"));
        assert_eq!(top_cycle_def(&m("3abc+1bca+2cab")), set("abc"));
        assert_eq!(top_cycle_def(&m("2acb+1cab")), set("a"));
    }

    #[test]
    fn defensible_examples() {
        assert_eq!(defensible_set(&m("4abc+2bca+3cab")), set("ac"));
        assert_eq!(defensible_set(&m("4abc+3bca+2cab")), set("a"));
        // Graph K with the candidates rotated
        assert_eq!(defensible_set(&m("3abc+2bca+4cab")), set("c"));
        assert_eq!(defensible_set(&m("1abc+1bca+1cab")), set("abc"));
    }

    #[test]
    fn sorted_margin_order_is_lexicographic() {
        let lo = SortedMargins { worst: -1, second: 5 };
        let hi = SortedMargins { worst: 0, second: 0 };
        assert!(hi > lo);
        assert!(SortedMargins { worst: 0, second: 2 } > hi);
    }
}
