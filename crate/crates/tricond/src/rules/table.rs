//! Outputs of the ordinal rules on the twelve ordinal margin graphs without a
//! Condorcet winner. Cells are given in the canonical labeling of each graph
//! and mapped back through the inverse relabeling.

use super::{OracleRule, RuleError, RuleId};
use crate::profile::{ChoiceSet, GraphKind, MarginGraph, OrdinalKind, Profile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableRow {
    TopCycle,
    UcMcKelvey,
    Banks,
    UcGillies,
    Defensible,
    Llull,
    Copeland,
    Maximin,
    StrictNanson,
    StableVoting,
    Nanson,
    Leximin,
}

impl TableRow {
    pub const ALL: [TableRow; 12] = [
        TableRow::TopCycle,
        TableRow::UcMcKelvey,
        TableRow::Banks,
        TableRow::UcGillies,
        TableRow::Defensible,
        TableRow::Llull,
        TableRow::Copeland,
        TableRow::Maximin,
        TableRow::StrictNanson,
        TableRow::StableVoting,
        TableRow::Nanson,
        TableRow::Leximin,
    ];

    pub fn of(rule: &RuleId) -> Option<TableRow> {
        let row = match rule {
            RuleId::TopCycle => TableRow::TopCycle,
            RuleId::UcMcKelvey => TableRow::UcMcKelvey,
            RuleId::Banks => TableRow::Banks,
            RuleId::UcGillies => TableRow::UcGillies,
            RuleId::Defensible => TableRow::Defensible,
            RuleId::Llull => TableRow::Llull,
            RuleId::Copeland => TableRow::Copeland,
            RuleId::Maximin
            | RuleId::Oracle(OracleRule::SplitCycle)
            | RuleId::Oracle(OracleRule::BeatPath)
            | RuleId::Oracle(OracleRule::RankedPairs) => TableRow::Maximin,
            RuleId::StrictNanson => TableRow::StrictNanson,
            RuleId::StableVoting => TableRow::StableVoting,
            RuleId::Nanson => TableRow::Nanson,
            RuleId::Leximin => TableRow::Leximin,
            _ => return None,
        };
        Some(row)
    }

    /// The rule this row is named after.
    pub fn rule(self) -> RuleId {
        match self {
            TableRow::TopCycle => RuleId::TopCycle,
            TableRow::UcMcKelvey => RuleId::UcMcKelvey,
            TableRow::Banks => RuleId::Banks,
            TableRow::UcGillies => RuleId::UcGillies,
            TableRow::Defensible => RuleId::Defensible,
            TableRow::Llull => RuleId::Llull,
            TableRow::Copeland => RuleId::Copeland,
            TableRow::Maximin => RuleId::Maximin,
            TableRow::StrictNanson => RuleId::StrictNanson,
            TableRow::StableVoting => RuleId::StableVoting,
            TableRow::Nanson => RuleId::Nanson,
            TableRow::Leximin => RuleId::Leximin,
        }
    }
}

const ABC: u8 = 0b111;
const AB: u8 = 0b011;
const AC: u8 = 0b101;
const A: u8 = 0b001;
const C: u8 = 0b100;

// Columns are Graphs A through L.
const CELLS: [[u8; 12]; 12] = [
    [ABC, ABC, ABC, ABC, AC, AC, ABC, ABC, ABC, ABC, ABC, ABC],
    [ABC, ABC, ABC, AC, AC, AC, ABC, ABC, ABC, ABC, ABC, ABC],
    [ABC, ABC, ABC, AC, AC, AC, ABC, AB, ABC, AB, ABC, AB],
    [ABC, ABC, ABC, AC, AC, AC, ABC, AC, ABC, AC, ABC, AC],
    [ABC, ABC, AC, AC, AC, AC, AC, AC, AC, AC, A, A],
    [ABC, ABC, ABC, AC, AC, AC, ABC, A, ABC, A, ABC, A],
    [ABC, ABC, ABC, A, AC, AC, ABC, A, ABC, A, ABC, A],
    [ABC, ABC, AC, AC, AC, AC, A, A, A, A, A, A],
    [ABC, ABC, C, AC, AC, AC, A, A, A, A, A, A],
    [ABC, ABC, AC, A, AC, A, A, A, A, A, A, A],
    [ABC, ABC, A, A, AC, AC, A, A, A, A, A, A],
    [ABC, ABC, A, A, AC, A, A, A, A, A, A, A],
];

/// The table cell for `row` on `graph`, in the graph's canonical labeling.
pub fn table_cell(row: TableRow, graph: GraphKind) -> ChoiceSet {
    ChoiceSet::from_bits(CELLS[row as usize][graph.index()]).unwrap()
}

pub(crate) fn table_margins(row: TableRow, m: &MarginGraph) -> ChoiceSet {
    let class = m.classify();
    match class.kind {
        OrdinalKind::CondorcetWinner(w) => ChoiceSet::singleton(w),
        OrdinalKind::Graph(g) => table_cell(row, g).permuted(class.relabel.inverse()),
    }
}

/// Looks `rule` up in the ordinal table.
pub fn table_rule(rule: &RuleId, profile: &Profile) -> Result<ChoiceSet, RuleError> {
    let row = TableRow::of(rule).ok_or(RuleError::NotATableRule(*rule))?;
    if profile.is_empty() {
        return Err(RuleError::EmptyProfile);
    }
    Ok(table_margins(row, &profile.margins()))
}
