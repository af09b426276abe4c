//! Exhaustive axiom checkers over all anonymous profiles up to a voter bound.
//!
//! Every checker returns an [`AxiomReport`] listing each violation as a
//! [`Witness`] in canonical profile order (size, then colex), independent of
//! how the work was scheduled.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::enumeration::profiles_up_to;
use crate::profile::{ChoiceSet, LinearOrder, Permutation, Profile};
use crate::rules::{evaluate, RuleError, RuleId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AxiomId {
    Reinforcement,
    SubsetReinforcement,
    SupersetReinforcement,
    OptimistParticipation,
    PositiveInvolvement,
    SingletonNegativeInvolvement,
    FishburnParticipation,
    /// Participation of the rule made resolute by a fixed tie-breaking order.
    ResoluteParticipation(LinearOrder),
    CondorcetConsistency,
    StrongCondorcet,
    Homogeneity,
    Monotonicity,
    PositiveResponsiveness,
    TiebreakPositiveResponsiveness,
    Neutrality,
    /// Refinement of the given rule.
    Refinement(RuleId),
    ContinuityProbe,
}

impl AxiomId {
    /// Every axiom without a parameter.
    pub const SIMPLE: [AxiomId; 15] = [
        AxiomId::Reinforcement,
        AxiomId::SubsetReinforcement,
        AxiomId::SupersetReinforcement,
        AxiomId::OptimistParticipation,
        AxiomId::PositiveInvolvement,
        AxiomId::SingletonNegativeInvolvement,
        AxiomId::FishburnParticipation,
        AxiomId::CondorcetConsistency,
        AxiomId::StrongCondorcet,
        AxiomId::Homogeneity,
        AxiomId::Monotonicity,
        AxiomId::PositiveResponsiveness,
        AxiomId::TiebreakPositiveResponsiveness,
        AxiomId::Neutrality,
        AxiomId::ContinuityProbe,
    ];

    fn name(&self) -> &'static str {
        match self {
            AxiomId::Reinforcement => "reinforcement",
            AxiomId::SubsetReinforcement => "subset_reinforcement",
            AxiomId::SupersetReinforcement => "superset_reinforcement",
            AxiomId::OptimistParticipation => "optimist_participation",
            AxiomId::PositiveInvolvement => "positive_involvement",
            AxiomId::SingletonNegativeInvolvement => "singleton_negative_involvement",
            AxiomId::FishburnParticipation => "fishburn_participation",
            AxiomId::ResoluteParticipation(_) => "resolute_participation",
            AxiomId::CondorcetConsistency => "condorcet_consistency",
            AxiomId::StrongCondorcet => "strong_condorcet",
            AxiomId::Homogeneity => "homogeneity",
            AxiomId::Monotonicity => "monotonicity",
            AxiomId::PositiveResponsiveness => "positive_responsiveness",
            AxiomId::TiebreakPositiveResponsiveness => "tiebreak_positive_responsiveness",
            AxiomId::Neutrality => "neutrality",
            AxiomId::Refinement(_) => "refinement",
            AxiomId::ContinuityProbe => "continuity_probe",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomId::ResoluteParticipation(o) => write!(f, "resolute_participation({o})"),
            AxiomId::Refinement(r) => write!(f, "refinement({r})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for AxiomId {
    type Err = String;

    /// Snake-case names; parameterized axioms take `name(arg)`, e.g.
    /// `resolute_participation(abc)` or `refinement(maximin)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        if let Some(simple) = AxiomId::SIMPLE.into_iter().find(|a| a.name() == key) {
            return Ok(simple);
        }
        let unknown = || format!("unknown axiom `{s}`");
        let (head, arg) = key
            .strip_suffix(')')
            .and_then(|k| k.split_once('('))
            .ok_or_else(unknown)?;
        match head {
            "resolute_participation" => arg
                .parse::<LinearOrder>()
                .map(AxiomId::ResoluteParticipation)
                .map_err(|e| e.to_string()),
            "refinement" => arg
                .parse::<RuleId>()
                .map(AxiomId::Refinement)
                .map_err(|e| e.to_string()),
            _ => Err(unknown()),
        }
    }
}

/// One rule evaluation recorded in a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub rule: RuleId,
    pub profile: Profile,
    pub output: ChoiceSet,
}

/// A violation: the profiles involved, the outputs observed and the failing clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub axiom: AxiomId,
    pub evaluations: Vec<Evaluation>,
    pub note: String,
}

impl Witness {
    pub fn profiles(&self) -> Vec<Profile> {
        self.evaluations.iter().map(|e| e.profile).collect()
    }

    pub fn outputs(&self) -> Vec<ChoiceSet> {
        self.evaluations.iter().map(|e| e.output).collect()
    }

    /// Whether re-evaluating every recorded profile reproduces its output.
    pub fn replays(&self) -> bool {
        self.evaluations
            .iter()
            .all(|e| evaluate(&e.rule, &e.profile) == Ok(e.output))
    }

    fn render(&self, report_rule: &RuleId) -> String {
        let parts: Vec<String> = self
            .evaluations
            .iter()
            .map(|e| {
                if e.rule == *report_rule {
                    format!("{} -> {}", e.profile, e.output)
                } else {
                    format!("{}: {} -> {}", e.rule, e.profile, e.output)
                }
            })
            .collect();
        format!("{}  [{}]", parts.join("; "), self.note)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    HoldsUpToBound,
    Violated,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::HoldsUpToBound => "holds",
            Verdict::Violated => "violated",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub rule: RuleId,
    pub axiom: AxiomId,
    pub bound: u64,
    pub witnesses: Vec<Witness>,
}

impl AxiomReport {
    pub fn verdict(&self) -> Verdict {
        if self.witnesses.is_empty() {
            Verdict::HoldsUpToBound
        } else {
            Verdict::Violated
        }
    }

    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} axiom={} bound={} verdict={}",
            self.rule,
            self.axiom,
            self.bound,
            self.verdict()
        )?;
        for w in &self.witnesses {
            writeln!(f, "  {}", w.render(&self.rule))?;
        }
        Ok(())
    }
}

/// Outputs of one rule on every non-empty profile up to a bound.
struct OutputTable {
    rule: RuleId,
    universe: Vec<Profile>,
    outputs: HashMap<Profile, ChoiceSet>,
}

impl OutputTable {
    fn build(rule: &RuleId, bound: u64) -> Result<OutputTable, RuleError> {
        let universe = profiles_up_to(bound);
        let evaluated: Vec<Result<(Profile, ChoiceSet), RuleError>> = universe
            .par_iter()
            .map(|p| Ok((*p, evaluate(rule, p)?)))
            .collect();
        let outputs = evaluated.into_iter().collect::<Result<_, _>>()?;
        Ok(OutputTable {
            rule: *rule,
            universe,
            outputs,
        })
    }

    fn get(&self, p: &Profile) -> ChoiceSet {
        self.outputs[p]
    }

    fn eval(&self, p: Profile) -> Evaluation {
        Evaluation {
            rule: self.rule,
            profile: p,
            output: self.get(&p),
        }
    }

    /// Runs `check` on every profile in parallel and gathers witnesses in order.
    fn scan<F>(&self, check: F) -> Vec<Witness>
    where
        F: Fn(usize, &Profile) -> Vec<Witness> + Sync,
    {
        let per: Vec<Vec<Witness>> = self
            .universe
            .par_iter()
            .enumerate()
            .map(|(i, p)| check(i, p))
            .collect();
        per.into_iter().flatten().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReinforcementVariant {
    Full,
    Subset,
    Superset,
}

impl ReinforcementVariant {
    pub fn axiom(self) -> AxiomId {
        match self {
            ReinforcementVariant::Full => AxiomId::Reinforcement,
            ReinforcementVariant::Subset => AxiomId::SubsetReinforcement,
            ReinforcementVariant::Superset => AxiomId::SupersetReinforcement,
        }
    }
}

/// Checks every unordered pair of non-empty profiles (a profile may be paired
/// with a copy of itself) whose sizes sum to at most `bound`.
pub fn check_reinforcement(
    rule: &RuleId,
    variant: ReinforcementVariant,
    bound: u64,
) -> Result<AxiomReport, RuleError> {
    let table = OutputTable::build(rule, bound)?;
    let axiom = variant.axiom();
    let witnesses = table.scan(|i, p1| {
        let mut found = vec![];
        for p2 in &table.universe[i..] {
            if p1.voters() + p2.voters() > bound {
                break;
            }
            let (x, y, z) = (table.get(p1), table.get(p2), table.get(&(*p1 + *p2)));
            let common = x.intersection(y);
            let failure = match (variant, common) {
                (ReinforcementVariant::Full, Some(c)) if z != c => {
                    Some("winners of the union differ from the common winners")
                }
                (ReinforcementVariant::Subset, Some(c)) if !c.is_subset(z) => {
                    Some("a common winner loses in the union")
                }
                (ReinforcementVariant::Superset, Some(c)) if !z.is_subset(c) => {
                    Some("the union elects a candidate that is not a common winner")
                }
                _ => None,
            };
            if let Some(note) = failure {
                found.push(Witness {
                    axiom,
                    evaluations: vec![
                        table.eval(*p1),
                        table.eval(*p2),
                        table.eval(*p1 + *p2),
                    ],
                    note: note.to_string(),
                });
            }
        }
        found
    });
    Ok(AxiomReport {
        rule: *rule,
        axiom,
        bound,
        witnesses,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParticipationVariant {
    Optimist,
    PositiveInvolvement,
    SingletonNegativeInvolvement,
    Fishburn,
}

impl ParticipationVariant {
    pub const ALL: [ParticipationVariant; 4] = [
        ParticipationVariant::Optimist,
        ParticipationVariant::PositiveInvolvement,
        ParticipationVariant::SingletonNegativeInvolvement,
        ParticipationVariant::Fishburn,
    ];

    pub fn axiom(self) -> AxiomId {
        match self {
            ParticipationVariant::Optimist => AxiomId::OptimistParticipation,
            ParticipationVariant::PositiveInvolvement => AxiomId::PositiveInvolvement,
            ParticipationVariant::SingletonNegativeInvolvement => {
                AxiomId::SingletonNegativeInvolvement
            }
            ParticipationVariant::Fishburn => AxiomId::FishburnParticipation,
        }
    }

    /// Whether a voter with order `voter` is content with `with` (the output
    /// once the voter joins) compared with `without`.
    pub fn satisfied(self, voter: LinearOrder, with: ChoiceSet, without: ChoiceSet) -> bool {
        match self {
            ParticipationVariant::Optimist => {
                voter.position(with.best_for(voter)) <= voter.position(without.best_for(voter))
            }
            ParticipationVariant::PositiveInvolvement => {
                let top = voter.top();
                !without.contains(top) || with.contains(top)
            }
            ParticipationVariant::SingletonNegativeInvolvement => {
                let bottom = ChoiceSet::singleton(voter.bottom());
                without == bottom || with != bottom
            }
            ParticipationVariant::Fishburn => fishburn_weakly_prefers(voter, with, without),
        }
    }
}

/// `X ≻ Y∖X` and `X∖Y ≻ Y` elementwise; comparisons with an empty side hold.
pub fn fishburn_weakly_prefers(voter: LinearOrder, x: ChoiceSet, y: ChoiceSet) -> bool {
    let beats = |lhs: Option<ChoiceSet>, rhs: Option<ChoiceSet>| match (lhs, rhs) {
        (Some(l), Some(r)) => l.iter().all(|a| r.iter().all(|b| voter.prefers(a, b))),
        _ => true,
    };
    beats(Some(x), y.difference(x)) && beats(x.difference(y), Some(y))
}

/// For each profile with `2..=bound` voters and each order present, compares
/// the output with and without one voter of that order.
pub fn check_participation(
    rule: &RuleId,
    variant: ParticipationVariant,
    bound: u64,
) -> Result<AxiomReport, RuleError> {
    let axiom = variant.axiom();
    check_removals(rule, axiom, bound, |voter, with, without| {
        variant.satisfied(voter, with, without)
    })
}

/// Participation for the resolute rule obtained by picking the winner ranked
/// highest in `tiebreak`.
pub fn check_resolute_participation(
    rule: &RuleId,
    tiebreak: LinearOrder,
    bound: u64,
) -> Result<AxiomReport, RuleError> {
    check_removals(
        rule,
        AxiomId::ResoluteParticipation(tiebreak),
        bound,
        |voter, with, without| {
            let x = with.best_for(tiebreak);
            let y = without.best_for(tiebreak);
            voter.position(x) <= voter.position(y)
        },
    )
}

fn check_removals<F>(rule: &RuleId, axiom: AxiomId, bound: u64, ok: F) -> Result<AxiomReport, RuleError>
where
    F: Fn(LinearOrder, ChoiceSet, ChoiceSet) -> bool + Sync,
{
    let table = OutputTable::build(rule, bound)?;
    let witnesses = table.scan(|_, p| {
        let mut found = vec![];
        if p.voters() < 2 {
            return found;
        }
        for (voter, _) in p.support() {
            let q = p.without_voter(voter).unwrap();
            if !ok(voter, table.get(p), table.get(&q)) {
                found.push(Witness {
                    axiom,
                    evaluations: vec![table.eval(q), table.eval(*p)],
                    note: format!("a {voter} voter joins"),
                });
            }
        }
        found
    });
    Ok(AxiomReport {
        rule: *rule,
        axiom,
        bound,
        witnesses,
    })
}

/// Per-instance verdicts of the participation conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParticipationInstance {
    pub optimist: bool,
    pub positive_involvement: bool,
    pub singleton_negative_involvement: bool,
    pub fishburn: bool,
}

impl ParticipationInstance {
    pub fn new(voter: LinearOrder, with: ChoiceSet, without: ChoiceSet) -> Self {
        let s = |v: ParticipationVariant| v.satisfied(voter, with, without);
        ParticipationInstance {
            optimist: s(ParticipationVariant::Optimist),
            positive_involvement: s(ParticipationVariant::PositiveInvolvement),
            singleton_negative_involvement: s(ParticipationVariant::SingletonNegativeInvolvement),
            fishburn: s(ParticipationVariant::Fishburn),
        }
    }

    /// Optimist participation on this instance iff positive involvement and
    /// singleton negative involvement both hold.
    pub fn equivalence_holds(&self) -> bool {
        self.optimist == (self.positive_involvement && self.singleton_negative_involvement)
    }
}

/// Instance-level comparison of optimist participation with the conjunction
/// of positive involvement and singleton negative involvement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub rule: RuleId,
    pub bound: u64,
    pub instances: u64,
    pub optimist_failures: u64,
    pub mismatches: Vec<Witness>,
}

pub fn verify_optimist_equivalence(rule: &RuleId, bound: u64) -> Result<EquivalenceReport, RuleError> {
    let table = OutputTable::build(rule, bound)?;
    let mut instances = 0;
    let mut optimist_failures = 0;
    let mut mismatches = vec![];
    for p in table.universe.iter().filter(|p| p.voters() >= 2) {
        for (voter, _) in p.support() {
            let q = p.without_voter(voter).unwrap();
            let inst = ParticipationInstance::new(voter, table.get(p), table.get(&q));
            instances += 1;
            optimist_failures += (!inst.optimist) as u64;
            if !inst.equivalence_holds() {
                mismatches.push(Witness {
                    axiom: AxiomId::OptimistParticipation,
                    evaluations: vec![table.eval(q), table.eval(*p)],
                    note: format!("{inst:?}"),
                });
            }
        }
    }
    Ok(EquivalenceReport {
        rule: *rule,
        bound,
        instances,
        optimist_failures,
        mismatches,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResponsivenessVariant {
    Monotonicity,
    Positive,
    TiebreakPositive,
}

impl ResponsivenessVariant {
    pub fn axiom(self) -> AxiomId {
        match self {
            ResponsivenessVariant::Monotonicity => AxiomId::Monotonicity,
            ResponsivenessVariant::Positive => AxiomId::PositiveResponsiveness,
            ResponsivenessVariant::TiebreakPositive => AxiomId::TiebreakPositiveResponsiveness,
        }
    }
}

/// One voter (or, for leximin, up to two voters) moving `x` directly above `y`.
pub fn check_responsiveness(
    rule: &RuleId,
    variant: ResponsivenessVariant,
    bound: u64,
) -> Result<AxiomReport, RuleError> {
    let table = OutputTable::build(rule, bound)?;
    let axiom = variant.axiom();
    let max_movers = if *rule == RuleId::Leximin { 2 } else { 1 };
    let witnesses = table.scan(|_, p| {
        let before = table.get(p);
        let mut found = vec![];
        for (improved, x, y, movers) in improvements(p, max_movers) {
            let after = table.get(&improved);
            let fine = match variant {
                ResponsivenessVariant::Monotonicity => !before.contains(x) || after.contains(x),
                ResponsivenessVariant::Positive => {
                    !before.contains(x) || after == ChoiceSet::singleton(x)
                }
                ResponsivenessVariant::TiebreakPositive => {
                    !(before.contains(x) && before.contains(y)) || after == ChoiceSet::singleton(x)
                }
            };
            if !fine {
                found.push(Witness {
                    axiom,
                    evaluations: vec![table.eval(*p), table.eval(improved)],
                    note: format!("{movers} voter(s) move {x} above {y}"),
                });
            }
        }
        found
    });
    Ok(AxiomReport {
        rule: *rule,
        axiom,
        bound,
        witnesses,
    })
}

type Improvement = (
    Profile,
    crate::profile::Candidate,
    crate::profile::Candidate,
    usize,
);

/// Profiles reached by `1..=max_movers` voters who rank some `y` directly
/// above `x` swapping the two, as `(profile, x, y, movers)`.
fn improvements(p: &Profile, max_movers: usize) -> Vec<Improvement> {
    let mut out = vec![];
    for o in LinearOrder::ALL {
        for pos in 0..2 {
            let r = o.ranking();
            let (y, x) = (r[pos], r[pos + 1]);
            // every order that can take part: y directly above x
            let takers: Vec<(LinearOrder, usize)> = LinearOrder::ALL
                .into_iter()
                .filter_map(|t| {
                    let tp = t.position(y);
                    (tp < 2 && t.ranking()[tp + 1] == x).then_some((t, tp))
                })
                .collect();
            // enumerate each (y, x) pair once, from its first taker
            if takers[0].0 != o {
                continue;
            }
            let mut chosen: Vec<usize> = vec![];
            collect_movers(p, &takers, 0, max_movers, &mut chosen, x, y, &mut out);
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn collect_movers(
    p: &Profile,
    takers: &[(LinearOrder, usize)],
    start: usize,
    left: usize,
    chosen: &mut Vec<usize>,
    x: crate::profile::Candidate,
    y: crate::profile::Candidate,
    out: &mut Vec<Improvement>,
) {
    if !chosen.is_empty() {
        let mut q = *p;
        let mut feasible = true;
        for &k in chosen.iter() {
            let (t, pos) = takers[k];
            match q.without_voter(t) {
                Some(r) => q = r.with_voter(t.swapped(pos)),
                None => feasible = false,
            }
        }
        if !feasible {
            return;
        }
        out.push((q, x, y, chosen.len()));
    }
    if left == 0 {
        return;
    }
    for k in start..takers.len() {
        chosen.push(k);
        collect_movers(p, takers, k, left - 1, chosen, x, y, out);
        chosen.pop();
    }
}

/// `f(P) = f(2P)` for every profile up to `bound`.
pub fn check_homogeneity(rule: &RuleId, bound: u64) -> Result<AxiomReport, RuleError> {
    let table = OutputTable::build(rule, bound)?;
    let per: Vec<Result<Option<Witness>, RuleError>> = table
        .universe
        .par_iter()
        .map(|p| {
            let doubled = p.t_fold(2).expect("positive factor");
            let out = evaluate(rule, &doubled)?;
            Ok((out != table.get(p)).then(|| Witness {
                axiom: AxiomId::Homogeneity,
                evaluations: vec![
                    table.eval(*p),
                    Evaluation {
                        rule: *rule,
                        profile: doubled,
                        output: out,
                    },
                ],
                note: "doubling changes the winners".to_string(),
            }))
        })
        .collect();
    let witnesses = per
        .into_iter()
        .filter_map(Result::transpose)
        .collect::<Result<_, _>>()?;
    Ok(AxiomReport {
        rule: *rule,
        axiom: AxiomId::Homogeneity,
        bound,
        witnesses,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CondorcetVariant {
    Standard,
    Strong,
}

pub fn check_condorcet(
    rule: &RuleId,
    variant: CondorcetVariant,
    bound: u64,
) -> Result<AxiomReport, RuleError> {
    let table = OutputTable::build(rule, bound)?;
    let axiom = match variant {
        CondorcetVariant::Standard => AxiomId::CondorcetConsistency,
        CondorcetVariant::Strong => AxiomId::StrongCondorcet,
    };
    let witnesses = table.scan(|_, p| {
        let m = p.margins();
        let required = match variant {
            CondorcetVariant::Standard => m.condorcet_winner().map(ChoiceSet::singleton),
            CondorcetVariant::Strong => m.intermediate_condorcet_winners(),
        };
        match required {
            Some(req) if table.get(p) != req => vec![Witness {
                axiom,
                evaluations: vec![table.eval(*p)],
                note: format!("expected {req}"),
            }],
            _ => vec![],
        }
    });
    Ok(AxiomReport {
        rule: *rule,
        axiom,
        bound,
        witnesses,
    })
}

/// `lower(P) ⊆ upper(P)` for every profile up to `bound`.
pub fn check_refinement(lower: &RuleId, upper: &RuleId, bound: u64) -> Result<AxiomReport, RuleError> {
    let lo = OutputTable::build(lower, bound)?;
    let hi = OutputTable::build(upper, bound)?;
    let axiom = AxiomId::Refinement(*upper);
    let witnesses = lo.scan(|_, p| {
        if lo.get(p).is_subset(hi.get(p)) {
            vec![]
        } else {
            vec![Witness {
                axiom,
                evaluations: vec![lo.eval(*p), hi.eval(*p)],
                note: format!("{lower} is not contained in {upper}"),
            }]
        }
    });
    Ok(AxiomReport {
        rule: *lower,
        axiom,
        bound,
        witnesses,
    })
}

/// `f(σP) = σ(f(P))` for every candidate permutation σ.
pub fn check_neutrality(rule: &RuleId, bound: u64) -> Result<AxiomReport, RuleError> {
    let table = OutputTable::build(rule, bound)?;
    let witnesses = table.scan(|_, p| {
        Permutation::ALL[1..]
            .iter()
            .filter_map(|&sigma| {
                let q = p.permuted(sigma);
                (table.get(&q) != table.get(p).permuted(sigma)).then(|| Witness {
                    axiom: AxiomId::Neutrality,
                    evaluations: vec![table.eval(*p), table.eval(q)],
                    note: format!("relabeling {sigma}"),
                })
            })
            .collect()
    });
    Ok(AxiomReport {
        rule: *rule,
        axiom: AxiomId::Neutrality,
        bound,
        witnesses,
    })
}

/// The least `n' <= horizon` with `f(nP + P2) ⊆ f(P)` for all `n` in
/// `n'..=horizon`, or `None` if even `n = horizon` fails. A finite probe: it
/// cannot certify the limit behaviour.
pub fn continuity_probe(
    rule: &RuleId,
    p: &Profile,
    p2: &Profile,
    horizon: u64,
) -> Result<Option<u64>, RuleError> {
    let base = evaluate(rule, p)?;
    let ok = |n: u64| -> Result<bool, RuleError> {
        let q = p.t_fold(n).expect("positive factor") + *p2;
        Ok(evaluate(rule, &q)?.is_subset(base))
    };
    let mut least = None;
    for n in (1..=horizon).rev() {
        if !ok(n)? {
            break;
        }
        least = Some(n);
    }
    Ok(least)
}

/// Runs [`continuity_probe`] on every pair of profiles with at most `bound`
/// voters each; pairs with no stable tail up to `horizon` are witnesses.
pub fn check_continuity(rule: &RuleId, bound: u64, horizon: u64) -> Result<AxiomReport, RuleError> {
    let universe = profiles_up_to(bound);
    let per: Vec<Result<Vec<Witness>, RuleError>> = universe
        .par_iter()
        .map(|p| {
            let mut found = vec![];
            let base = evaluate(rule, p)?;
            for p2 in &universe {
                if continuity_probe(rule, p, p2, horizon)?.is_none() {
                    let q = p.t_fold(horizon).expect("positive factor") + *p2;
                    found.push(Witness {
                        axiom: AxiomId::ContinuityProbe,
                        evaluations: vec![
                            Evaluation {
                                rule: *rule,
                                profile: *p,
                                output: base,
                            },
                            Evaluation {
                                rule: *rule,
                                profile: *p2,
                                output: evaluate(rule, p2)?,
                            },
                            Evaluation {
                                rule: *rule,
                                profile: q,
                                output: evaluate(rule, &q)?,
                            },
                        ],
                        note: format!("{horizon} copies of the first profile do not dominate"),
                    });
                }
            }
            Ok(found)
        })
        .collect();
    let mut witnesses = vec![];
    for w in per {
        witnesses.extend(w?);
    }
    Ok(AxiomReport {
        rule: *rule,
        axiom: AxiomId::ContinuityProbe,
        bound,
        witnesses,
    })
}

/// Horizon used by [`check`] for the continuity probe.
pub const CONTINUITY_HORIZON: u64 = 30;

/// Runs the checker for `axiom` with its default options.
pub fn check(rule: &RuleId, axiom: AxiomId, bound: u64) -> Result<AxiomReport, RuleError> {
    use ParticipationVariant as P;
    use ReinforcementVariant as R;
    use ResponsivenessVariant as S;
    match axiom {
        AxiomId::Reinforcement => check_reinforcement(rule, R::Full, bound),
        AxiomId::SubsetReinforcement => check_reinforcement(rule, R::Subset, bound),
        AxiomId::SupersetReinforcement => check_reinforcement(rule, R::Superset, bound),
        AxiomId::OptimistParticipation => check_participation(rule, P::Optimist, bound),
        AxiomId::PositiveInvolvement => check_participation(rule, P::PositiveInvolvement, bound),
        AxiomId::SingletonNegativeInvolvement => {
            check_participation(rule, P::SingletonNegativeInvolvement, bound)
        }
        AxiomId::FishburnParticipation => check_participation(rule, P::Fishburn, bound),
        AxiomId::ResoluteParticipation(t) => check_resolute_participation(rule, t, bound),
        AxiomId::CondorcetConsistency => check_condorcet(rule, CondorcetVariant::Standard, bound),
        AxiomId::StrongCondorcet => check_condorcet(rule, CondorcetVariant::Strong, bound),
        AxiomId::Homogeneity => check_homogeneity(rule, bound),
        AxiomId::Monotonicity => check_responsiveness(rule, S::Monotonicity, bound),
        AxiomId::PositiveResponsiveness => check_responsiveness(rule, S::Positive, bound),
        AxiomId::TiebreakPositiveResponsiveness => {
            check_responsiveness(rule, S::TiebreakPositive, bound)
        }
        AxiomId::Neutrality => check_neutrality(rule, bound),
        AxiomId::Refinement(upper) => check_refinement(rule, &upper, bound),
        AxiomId::ContinuityProbe => check_continuity(rule, bound, CONTINUITY_HORIZON),
    }
}
