//! A non-neutral refinement of maximin that breaks ties with fixed per-order
//! points for the top two positions.

use super::{argmax_by, maximin};
use crate::profile::{Candidate, ChoiceSet, Profile};

/// Points `(top, second)` per order; third place always gets 0.
/// `abc` has two variants, selected by electorate size.
const POINTS: [(u64, u64); 6] = [
    (18, 13), // abc, sizes outside {2,4,6,8}
    (10, 7),  // acb
    (18, 11), // bac
    (7, 0),   // bca
    (13, 5),  // cab
    (8, 0),   // cba
];
const ABC_SMALL_EVEN: (u64, u64) = (11, 8);

fn points(order: usize, voters: u64) -> (u64, u64) {
    if order == 0 && matches!(voters, 2 | 4 | 6 | 8) {
        ABC_SMALL_EVEN
    } else {
        POINTS[order]
    }
}

/// Tie-breaking scores of `a`, `b`, `c`.
pub fn artificial_scores(profile: &Profile) -> [u64; 3] {
    let n = profile.voters();
    let mut scores = [0u64; 3];
    for (order, count) in profile.support() {
        let (top, second) = points(order.index(), n);
        scores[order.top().index()] += top * count;
        scores[order.mid().index()] += second * count;
    }
    scores
}

/// The maximin winners with the highest tie-breaking score.
pub fn artificial_rule(profile: &Profile) -> ChoiceSet {
    let winners = maximin(&profile.margins());
    let scores = artificial_scores(profile);
    argmax_by(winners, |c: Candidate| scores[c.index()])
}
