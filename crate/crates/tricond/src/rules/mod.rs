//! Social choice functions for three candidates.
//!
//! Each [`RuleId`] is evaluated along exactly one path: a definitional
//! implementation working from margins or counts, a lookup in the table of
//! outputs on the twelve ordinal margin graphs, or an independent oracle
//! implementation of a rule that is known to coincide with maximin.

mod artificial;
mod definitional;
mod oracle;
mod scoring;
mod table;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::profile::{ChoiceSet, MarginGraph, Profile};

pub use artificial::{artificial_rule, artificial_scores};
pub use definitional::{
    baldwin, black, borda, copeland, defensible_set, leximin, maximin, nanson, sorted_margins,
    top_cycle_def, SortedMargins,
};
pub use oracle::{
    beat_path, dodgson, kemeny, maximin_equivalent, ranked_pairs, split_cycle, young,
    BRUTE_FORCE_BOUND,
};
pub use scoring::{dominates_all_scoring, scoring_rule, Monotonicity, ScoringVector};
pub use table::{table_cell, table_rule, TableRow};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuleError {
    #[error("rules are undefined on the empty profile")]
    EmptyProfile,
    #[error("{rule} is brute-forced only up to {bound} voters (got {voters})")]
    BoundExceeded {
        rule: OracleRule,
        voters: u64,
        bound: u64,
    },
    #[error("{0} has no row in the ordinal table")]
    NotATableRule(RuleId),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
}

/// Independent implementations of rules that coincide with maximin on three candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OracleRule {
    SplitCycle,
    BeatPath,
    RankedPairs,
    Kemeny,
    Dodgson,
    Young,
}

impl OracleRule {
    pub const ALL: [OracleRule; 6] = [
        OracleRule::SplitCycle,
        OracleRule::BeatPath,
        OracleRule::RankedPairs,
        OracleRule::Kemeny,
        OracleRule::Dodgson,
        OracleRule::Young,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OracleRule::SplitCycle => "split_cycle",
            OracleRule::BeatPath => "beat_path",
            OracleRule::RankedPairs => "ranked_pairs",
            OracleRule::Kemeny => "kemeny",
            OracleRule::Dodgson => "dodgson",
            OracleRule::Young => "young",
        }
    }

    /// Whether the rule only looks at the margin graph.
    pub fn is_pairwise(self) -> bool {
        !matches!(self, OracleRule::Dodgson | OracleRule::Young)
    }
}

impl fmt::Display for OracleRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleId {
    TopCycle,
    UcMcKelvey,
    /// Banks, equivalently the Bordes uncovered set.
    Banks,
    UcGillies,
    Defensible,
    /// Llull, equivalently Schwartz and the Fishburn uncovered set.
    Llull,
    Copeland,
    Maximin,
    StrictNanson,
    StableVoting,
    Nanson,
    Leximin,
    Black,
    Baldwin,
    Borda,
    Plurality,
    Artificial,
    Scoring(ScoringVector),
    Oracle(OracleRule),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvaluationPath {
    Definitional,
    TableDriven,
    Oracle,
}

impl RuleId {
    /// Every named rule (no custom scoring vectors).
    pub const NAMED: [RuleId; 23] = [
        RuleId::TopCycle,
        RuleId::UcMcKelvey,
        RuleId::Banks,
        RuleId::UcGillies,
        RuleId::Defensible,
        RuleId::Llull,
        RuleId::Copeland,
        RuleId::Maximin,
        RuleId::StrictNanson,
        RuleId::StableVoting,
        RuleId::Nanson,
        RuleId::Leximin,
        RuleId::Black,
        RuleId::Baldwin,
        RuleId::Borda,
        RuleId::Plurality,
        RuleId::Artificial,
        RuleId::Oracle(OracleRule::SplitCycle),
        RuleId::Oracle(OracleRule::BeatPath),
        RuleId::Oracle(OracleRule::RankedPairs),
        RuleId::Oracle(OracleRule::Kemeny),
        RuleId::Oracle(OracleRule::Dodgson),
        RuleId::Oracle(OracleRule::Young),
    ];

    /// The Condorcet extensions among [`RuleId::NAMED`].
    pub fn condorcet_extensions() -> impl Iterator<Item = RuleId> {
        RuleId::NAMED
            .into_iter()
            .filter(|r| !matches!(r, RuleId::Borda | RuleId::Plurality))
    }

    pub fn path(&self) -> EvaluationPath {
        match self {
            RuleId::TopCycle
            | RuleId::UcMcKelvey
            | RuleId::Banks
            | RuleId::UcGillies
            | RuleId::Llull
            | RuleId::StableVoting => EvaluationPath::TableDriven,
            RuleId::Oracle(_) => EvaluationPath::Oracle,
            _ => EvaluationPath::Definitional,
        }
    }

    /// Whether the output depends only on the margin graph.
    pub fn is_pairwise(&self) -> bool {
        match self {
            RuleId::Artificial | RuleId::Plurality => false,
            RuleId::Scoring(v) => v.is_borda_like(),
            RuleId::Oracle(o) => o.is_pairwise(),
            _ => true,
        }
    }

    pub fn is_neutral(&self) -> bool {
        !matches!(self, RuleId::Artificial)
    }

    pub fn is_condorcet_extension(&self) -> bool {
        !matches!(
            self,
            RuleId::Borda | RuleId::Plurality | RuleId::Scoring(_)
        )
    }

    pub fn evaluate(&self, profile: &Profile) -> Result<ChoiceSet, RuleError> {
        evaluate(self, profile)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RuleId::TopCycle => "top_cycle",
            RuleId::UcMcKelvey => "uc_mckelvey",
            RuleId::Banks => "banks",
            RuleId::UcGillies => "uc_gillies",
            RuleId::Defensible => "defensible",
            RuleId::Llull => "llull",
            RuleId::Copeland => "copeland",
            RuleId::Maximin => "maximin",
            RuleId::StrictNanson => "strict_nanson",
            RuleId::StableVoting => "stable_voting",
            RuleId::Nanson => "nanson",
            RuleId::Leximin => "leximin",
            RuleId::Black => "black",
            RuleId::Baldwin => "baldwin",
            RuleId::Borda => "borda",
            RuleId::Plurality => "plurality",
            RuleId::Artificial => "artificial",
            RuleId::Scoring(v) => return write!(f, "scoring({v})"),
            RuleId::Oracle(o) => o.name(),
        };
        f.write_str(name)
    }
}

impl FromStr for RuleId {
    type Err = RuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        let rule = match key.as_str() {
            "top_cycle" | "smith" => RuleId::TopCycle,
            "uc_mckelvey" => RuleId::UcMcKelvey,
            "banks" | "uc_bordes" => RuleId::Banks,
            "uc_gillies" => RuleId::UcGillies,
            "defensible" | "defensible_set" => RuleId::Defensible,
            "llull" | "schwartz" | "uc_fishburn" => RuleId::Llull,
            "copeland" => RuleId::Copeland,
            "maximin" | "minimax" | "simpson_kramer" => RuleId::Maximin,
            "strict_nanson" => RuleId::StrictNanson,
            "stable_voting" => RuleId::StableVoting,
            "nanson" => RuleId::Nanson,
            "leximin" => RuleId::Leximin,
            "black" => RuleId::Black,
            "baldwin" => RuleId::Baldwin,
            "borda" => RuleId::Borda,
            "plurality" => RuleId::Plurality,
            "artificial" => RuleId::Artificial,
            "split_cycle" => RuleId::Oracle(OracleRule::SplitCycle),
            "beat_path" | "schulze" => RuleId::Oracle(OracleRule::BeatPath),
            "ranked_pairs" => RuleId::Oracle(OracleRule::RankedPairs),
            "kemeny" => RuleId::Oracle(OracleRule::Kemeny),
            "dodgson" => RuleId::Oracle(OracleRule::Dodgson),
            "young" => RuleId::Oracle(OracleRule::Young),
            other => {
                let inner = other
                    .strip_prefix("scoring(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| RuleError::UnknownRule(s.to_string()))?;
                let v = inner
                    .parse::<ScoringVector>()
                    .map_err(|_| RuleError::UnknownRule(s.to_string()))?;
                RuleId::Scoring(v)
            }
        };
        Ok(rule)
    }
}

/// Evaluates `rule` on a non-empty profile.
pub fn evaluate(rule: &RuleId, profile: &Profile) -> Result<ChoiceSet, RuleError> {
    if profile.is_empty() {
        return Err(RuleError::EmptyProfile);
    }
    if let Some(out) = evaluate_margins(rule, &profile.margins()) {
        return Ok(out);
    }
    match rule {
        RuleId::Artificial => Ok(artificial_rule(profile)),
        RuleId::Plurality => Ok(scoring_rule(profile, &ScoringVector::plurality())),
        RuleId::Scoring(v) => Ok(scoring_rule(profile, v)),
        RuleId::Oracle(o) => maximin_equivalent(*o, profile),
        _ => unreachable!("{rule} is pairwise"),
    }
}

/// Evaluates `rule` from the margin graph alone; `None` for rules that need
/// the full profile. The graph must come from a non-empty profile.
pub fn evaluate_margins(rule: &RuleId, m: &MarginGraph) -> Option<ChoiceSet> {
    let out = match rule {
        RuleId::TopCycle
        | RuleId::UcMcKelvey
        | RuleId::Banks
        | RuleId::UcGillies
        | RuleId::Llull
        | RuleId::StableVoting => table::table_margins(TableRow::of(rule)?, m),
        RuleId::Defensible => defensible_set(m),
        RuleId::Copeland => copeland(m),
        RuleId::Maximin => maximin(m),
        RuleId::StrictNanson => nanson(m, true),
        RuleId::Nanson => nanson(m, false),
        RuleId::Leximin => leximin(m),
        RuleId::Black => black(m),
        RuleId::Baldwin => baldwin(m),
        RuleId::Borda => borda(m),
        RuleId::Scoring(v) if v.is_borda_like() => borda(m),
        RuleId::Oracle(OracleRule::SplitCycle) => split_cycle(m),
        RuleId::Oracle(OracleRule::BeatPath) => beat_path(m),
        RuleId::Oracle(OracleRule::RankedPairs) => ranked_pairs(m),
        RuleId::Oracle(OracleRule::Kemeny) => kemeny(m),
        _ => return None,
    };
    Some(out)
}

/// Candidates maximizing `key`.
pub(crate) fn argmax_by<K: Ord>(
    candidates: ChoiceSet,
    mut key: impl FnMut(crate::profile::Candidate) -> K,
) -> ChoiceSet {
    let keyed: Vec<_> = candidates.iter().map(|c| (c, key(c))).collect();
    let best = keyed.iter().map(|(_, k)| k).max().unwrap();
    ChoiceSet::from_candidates(keyed.iter().filter(|(_, k)| k == best).map(|(c, _)| *c))
        .unwrap()
}
