//! Definitional implementations of rules that coincide with maximin on three
//! candidates. They share no code with [`super::maximin`] and serve as
//! independent cross-checks.

use super::{OracleRule, RuleError};
use crate::profile::{Candidate, ChoiceSet, LinearOrder, MarginGraph, Profile};

/// Largest electorate for the brute-force Dodgson and Young searches.
pub const BRUTE_FORCE_BOUND: u64 = 9;

const PAIRS: [(Candidate, Candidate); 3] = [
    (Candidate::A, Candidate::B),
    (Candidate::A, Candidate::C),
    (Candidate::B, Candidate::C),
];

/// Strict majority edges `(winner, loser, margin)`.
fn majority_edges(m: &MarginGraph) -> Vec<(Candidate, Candidate, i64)> {
    PAIRS
        .iter()
        .filter_map(|&(x, y)| match m.margin(x, y) {
            v if v > 0 => Some((x, y, v)),
            v if v < 0 => Some((y, x, -v)),
            _ => None,
        })
        .collect()
}

fn undefeated(edges: &[(Candidate, Candidate, i64)]) -> ChoiceSet {
    ChoiceSet::from_candidates(
        Candidate::ALL
            .into_iter()
            .filter(|c| edges.iter().all(|(_, loser, _)| loser != c)),
    )
    .unwrap()
}

/// Split cycle: the weakest edges of a majority cycle are not defeats.
pub fn split_cycle(m: &MarginGraph) -> ChoiceSet {
    let mut edges = majority_edges(m);
    // With three candidates the only possible cycle uses all three edges.
    let is_cycle =
        edges.len() == 3 && Candidate::ALL.iter().all(|c| edges.iter().any(|e| e.0 == *c));
    if is_cycle {
        let weakest = edges.iter().map(|e| e.2).min().unwrap();
        edges.retain(|e| e.2 > weakest);
    }
    undefeated(&edges)
}

/// Beat path (Schulze) with margins as link strengths.
pub fn beat_path(m: &MarginGraph) -> ChoiceSet {
    let mut p = [[0i64; 3]; 3];
    for (x, y, v) in majority_edges(m) {
        p[x.index()][y.index()] = v;
    }
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                if i != j && i != k && j != k {
                    p[i][j] = p[i][j].max(p[i][k].min(p[k][j]));
                }
            }
        }
    }
    ChoiceSet::from_candidates(
        (0..3)
            .filter(|&x| (0..3).all(|y| p[x][y] >= p[y][x]))
            .map(Candidate::from_index),
    )
    .unwrap()
}

/// Ranked pairs, pooling the winners over every order of equal-margin edges.
pub fn ranked_pairs(m: &MarginGraph) -> ChoiceSet {
    let mut edges = majority_edges(m);
    edges.sort_by_key(|e| std::cmp::Reverse(e.2));
    let mut winners: Option<ChoiceSet> = None;
    for order in tie_orders(&edges) {
        let mut locked: Vec<(Candidate, Candidate, i64)> = vec![];
        for e in order {
            if !reaches(&locked, e.1, e.0) {
                locked.push(e);
            }
        }
        let w = undefeated(&locked);
        winners = Some(winners.map_or(w, |acc| acc.union(w)));
    }
    winners.unwrap()
}

/// All orderings of `edges` that are non-increasing in margin.
fn tie_orders(
    edges: &[(Candidate, Candidate, i64)],
) -> Vec<Vec<(Candidate, Candidate, i64)>> {
    let mut out = vec![];
    permute(edges.to_vec(), 0, &mut out);
    out.retain(|o| o.windows(2).all(|w| w[0].2 >= w[1].2));
    out
}

fn permute<T: Clone>(mut items: Vec<T>, k: usize, out: &mut Vec<Vec<T>>) {
    if k == items.len() {
        out.push(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items.clone(), k + 1, out);
        items.swap(k, i);
    }
}

fn reaches(edges: &[(Candidate, Candidate, i64)], from: Candidate, to: Candidate) -> bool {
    let mut seen = [false; 3];
    let mut stack = vec![from];
    while let Some(c) = stack.pop() {
        if c == to {
            return true;
        }
        if std::mem::replace(&mut seen[c.index()], true) {
            continue;
        }
        stack.extend(edges.iter().filter(|e| e.0 == c).map(|e| e.1));
    }
    false
}

/// Tops of the rankings that maximize total pairwise agreement.
pub fn kemeny(m: &MarginGraph) -> ChoiceSet {
    let score = |o: LinearOrder| {
        let r = o.ranking();
        m.margin(r[0], r[1]) + m.margin(r[0], r[2]) + m.margin(r[1], r[2])
    };
    let best = LinearOrder::ALL.into_iter().map(score).max().unwrap();
    ChoiceSet::from_candidates(
        LinearOrder::ALL
            .into_iter()
            .filter(|&o| score(o) == best)
            .map(LinearOrder::top),
    )
    .unwrap()
}

fn check_bound(rule: OracleRule, profile: &Profile) -> Result<(), RuleError> {
    if profile.voters() > BRUTE_FORCE_BOUND {
        return Err(RuleError::BoundExceeded {
            rule,
            voters: profile.voters(),
            bound: BRUTE_FORCE_BOUND,
        });
    }
    Ok(())
}

/// Dodgson: fewest adjacent swaps in voters' rankings that make a candidate
/// the Condorcet winner. Only swaps lifting the candidate are searched, since
/// any other swap leaves its margins unchanged.
pub fn dodgson(profile: &Profile) -> Result<ChoiceSet, RuleError> {
    check_bound(OracleRule::Dodgson, profile)?;
    let scores = Candidate::ALL.map(|x| dodgson_score(profile, x));
    let best = *scores.iter().min().unwrap();
    Ok(ChoiceSet::from_candidates(
        Candidate::ALL
            .into_iter()
            .filter(|x| scores[x.index()] == best),
    )
    .unwrap())
}

/// A way of lifting `x` for some voters of one order type.
#[derive(Clone, Copy)]
struct Lift {
    order: LinearOrder,
    by_one: u64,
    by_two: u64,
}

fn dodgson_score(profile: &Profile, x: Candidate) -> u64 {
    let base = profile.margins();
    let groups: Vec<(LinearOrder, u64)> = profile
        .support()
        .filter(|(o, _)| o.position(x) > 0)
        .collect();
    let mut best = u64::MAX;
    let mut plan: Vec<Lift> = vec![];
    search_lifts(&groups, 0, x, base, &mut plan, &mut best);
    best
}

fn search_lifts(
    groups: &[(LinearOrder, u64)],
    i: usize,
    x: Candidate,
    base: MarginGraph,
    plan: &mut Vec<Lift>,
    best: &mut u64,
) {
    if i == groups.len() {
        let mut m = base;
        let mut cost = 0;
        for lift in plan.iter() {
            let r = lift.order.ranking();
            let pos = lift.order.position(x);
            // each swap past a candidate y moves m_xy up by 2
            let above_one = r[pos - 1];
            let moved_one = lift.by_one + lift.by_two;
            m.set_margin(x, above_one, m.margin(x, above_one) + 2 * moved_one as i64);
            cost += lift.by_one;
            if lift.by_two > 0 {
                let above_two = r[pos - 2];
                m.set_margin(x, above_two, m.margin(x, above_two) + 2 * lift.by_two as i64);
                cost += 2 * lift.by_two;
            }
        }
        if m.condorcet_winner() == Some(x) {
            *best = (*best).min(cost);
        }
        return;
    }
    let (order, count) = groups[i];
    let pos = order.position(x);
    for by_one in 0..=count {
        let max_two = if pos == 2 { count - by_one } else { 0 };
        for by_two in 0..=max_two {
            plan.push(Lift {
                order,
                by_one,
                by_two,
            });
            search_lifts(groups, i + 1, x, base, plan, best);
            plan.pop();
        }
    }
}

/// Young: the largest sub-electorate in which a candidate is the Condorcet
/// winner. Candidates that win no sub-electorate score below everybody.
pub fn young(profile: &Profile) -> Result<ChoiceSet, RuleError> {
    check_bound(OracleRule::Young, profile)?;
    let counts = profile.counts();
    let mut best: [Option<u64>; 3] = [None; 3];
    let mut sub = [0u64; 6];
    loop {
        let p = Profile::new(sub);
        if let Some(w) = p.margins().condorcet_winner() {
            let slot = &mut best[w.index()];
            *slot = Some(slot.map_or(p.voters(), |b| b.max(p.voters())));
        }
        // odometer over 0..=counts[i]
        let mut i = 0;
        while i < 6 && sub[i] == counts[i] {
            sub[i] = 0;
            i += 1;
        }
        if i == 6 {
            break;
        }
        sub[i] += 1;
    }
    let top = best.iter().max().unwrap();
    Ok(ChoiceSet::from_candidates(
        Candidate::ALL
            .into_iter()
            .filter(|x| best[x.index()] == *top),
    )
    .unwrap())
}

pub fn maximin_equivalent(rule: OracleRule, profile: &Profile) -> Result<ChoiceSet, RuleError> {
    if profile.is_empty() {
        return Err(RuleError::EmptyProfile);
    }
    let m = profile.margins();
    match rule {
        OracleRule::SplitCycle => Ok(split_cycle(&m)),
        OracleRule::BeatPath => Ok(beat_path(&m)),
        OracleRule::RankedPairs => Ok(ranked_pairs(&m)),
        OracleRule::Kemeny => Ok(kemeny(&m)),
        OracleRule::Dodgson => dodgson(profile),
        OracleRule::Young => young(profile),
    }
}
