//! Acceptance checks. Prints one `PASS`/`FAIL` line per criterion.
//!
//! The process fails only when a criterion fails that is not listed in
//! `UNATTAINABLE`; those are still reported as `FAIL` together with the reason.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use tricond::axioms::{
    check_condorcet, check_participation, check_refinement, check_reinforcement,
    check_responsiveness, check_homogeneity, verify_optimist_equivalence, CondorcetVariant,
    ParticipationVariant, ReinforcementVariant, ResponsivenessVariant,
};
use tricond::enumeration::{count_profiles, irresoluteness, profiles_up_to, search, SearchMode, TieConvention};
use tricond::profile::{mcgarvey, Candidate, ChoiceSet, GraphKind, MarginGraph, OrdinalKind, Profile};
use tricond::rules::{
    dominates_all_scoring, evaluate, table_cell, Monotonicity, OracleRule, RuleId, TableRow,
};
use tricond::satgen::{
    build_instance, check_assignment, proof_replay, solve, EncodingOptions, ProofScript,
    SolveOutcome, DEFAULT_DECISION_BUDGET,
};

/// Criteria that cannot be met as stated, with the reason.
const UNATTAINABLE: &[(usize, &str)] = &[(
    4,
    "the artificial rule as published violates subset-reinforcement at 8 voters \
     (e.g. abc+bca+cab and 2abc+2bca+cab both give {a}, their union 3abc+3bca+2cab gives {b})",
)];

type Outcome = Result<Vec<String>, String>;

fn p(s: &str) -> Profile {
    s.parse().unwrap()
}

fn set(s: &str) -> ChoiceSet {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eval(rule: &RuleId, prof: &Profile) -> Result<ChoiceSet, String> {
    evaluate(rule, prof).map_err(|e| e.to_string())
}

const LINKED: [(GraphKind, &str); 12] = [
    (GraphKind::A, "1abc+1bca+1cab"),
    (GraphKind::B, "1abc+1acb+1bac+1bca+1cab+1cba"),
    (GraphKind::C, "2abc+1bca+2cab"),
    (GraphKind::D, "1abc+1cab"),
    (GraphKind::E, "1acb+1cab"),
    (GraphKind::F, "1abc+1acb+2cab"),
    (GraphKind::G, "4abc+2bca+3cab"),
    (GraphKind::H, "3abc+1bca+2cab"),
    (GraphKind::I, "3abc+2bca+2cab"),
    (GraphKind::J, "2abc+1bca+1cab"),
    (GraphKind::K, "3abc+2bca+4cab"),
    (GraphKind::L, "2abc+1bca+3cab"),
];

/// Rules evaluated against each table row (rows shared by equivalent rules
/// list all of them).
fn row_rules(row: TableRow) -> Vec<RuleId> {
    let mut rules = vec![row.rule()];
    if row == TableRow::Maximin {
        rules.extend([
            RuleId::Oracle(OracleRule::SplitCycle),
            RuleId::Oracle(OracleRule::BeatPath),
            RuleId::Oracle(OracleRule::RankedPairs),
        ]);
    }
    rules
}

fn table_fidelity() -> Outcome {
    let mut notes = vec![];
    let mut checked = 0;
    for (graph, text) in LINKED {
        let prof = p(text);
        let class = prof.margins().classify();
        ensure(class.kind == OrdinalKind::Graph(graph), || {
            format!("{text} classifies as {:?}, expected {graph}", class.kind)
        })?;
        if !class.relabel.is_identity() {
            notes.push(format!("{graph} profile {text} compared after relabeling {}", class.relabel));
        }
        for row in TableRow::ALL {
            let expected = table_cell(row, graph).permuted(class.relabel.inverse());
            for rule in row_rules(row) {
                let got = eval(&rule, &prof)?;
                ensure(got == expected, || {
                    format!("{rule} on {text}: {got}, table {expected}")
                })?;
                checked += 1;
            }
        }
    }
    notes.insert(0, format!("{checked} rule/profile cells match"));
    Ok(notes)
}

const HASSE_EDGES: [(RuleId, RuleId); 19] = [
    (RuleId::UcMcKelvey, RuleId::TopCycle),
    (RuleId::Banks, RuleId::UcMcKelvey),
    (RuleId::UcGillies, RuleId::UcMcKelvey),
    (RuleId::Defensible, RuleId::UcGillies),
    (RuleId::Llull, RuleId::Banks),
    (RuleId::Llull, RuleId::UcGillies),
    (RuleId::Copeland, RuleId::Llull),
    (RuleId::Maximin, RuleId::Llull),
    (RuleId::Maximin, RuleId::Defensible),
    (RuleId::StrictNanson, RuleId::Maximin),
    (RuleId::StableVoting, RuleId::Maximin),
    (RuleId::StableVoting, RuleId::Copeland),
    (RuleId::Nanson, RuleId::Maximin),
    (RuleId::Nanson, RuleId::Copeland),
    (RuleId::Leximin, RuleId::StableVoting),
    (RuleId::Leximin, RuleId::Nanson),
    (RuleId::Black, RuleId::Banks),
    (RuleId::Baldwin, RuleId::Defensible),
    (RuleId::UcGillies, RuleId::TopCycle),
];

fn hasse() -> Outcome {
    ensure(count_profiles(8) == 1287, || "wrong profile count at n=8".into())?;
    for (lower, upper) in HASSE_EDGES {
        let rep = check_refinement(&lower, &upper, 8).map_err(|e| e.to_string())?;
        ensure(rep.holds(), || format!("{rep}"))?;
    }
    let witnesses: [(&str, &[(RuleId, &str)]); 3] = [
        ("3abc+1bca+4cab", &[(RuleId::Black, "a"), (RuleId::UcGillies, "bc")]),
        (
            "4acb+5bac+3cab+5cba",
            &[
                (RuleId::Baldwin, "a"),
                (RuleId::Black, "c"),
                (RuleId::Leximin, "c"),
                (RuleId::StrictNanson, "c"),
            ],
        ),
        ("1abc+3bca+4cab", &[(RuleId::Baldwin, "bc"), (RuleId::Banks, "ac")]),
    ];
    for (text, expected) in witnesses {
        for (rule, out) in expected {
            let got = eval(rule, &p(text))?;
            ensure(got == set(out), || format!("{rule} on {text}: {got}"))?;
        }
    }
    Ok(vec![format!(
        "{} refinement edges hold up to 8 voters; 3 non-refinement witnesses reproduced",
        HASSE_EDGES.len()
    )])
}

fn cluster_equivalence() -> Outcome {
    let mut notes = vec![];
    let groups = [
        (
            vec![
                OracleRule::SplitCycle,
                OracleRule::BeatPath,
                OracleRule::RankedPairs,
                OracleRule::Kemeny,
            ],
            10,
        ),
        (vec![OracleRule::Dodgson, OracleRule::Young], 9),
    ];
    for (rules, bound) in groups {
        let universe = profiles_up_to(bound);
        for o in rules {
            let rule = RuleId::Oracle(o);
            let mut zero_margin = vec![];
            for prof in &universe {
                let (got, want) = (eval(&rule, prof)?, eval(&RuleId::Maximin, prof)?);
                if got != want {
                    ensure(prof.margins().has_zero_margin(), || {
                        format!("{rule} on {prof}: {got}, maximin {want}")
                    })?;
                    zero_margin.push(prof);
                }
            }
            if zero_margin.is_empty() {
                notes.push(format!("{rule} = maximin on all {} profiles up to {bound}", universe.len()));
            } else {
                notes.push(format!(
                    "{rule} differs from maximin on {} profiles up to {bound}, all with a zero margin (first: {})",
                    zero_margin.len(),
                    zero_margin[0]
                ));
            }
        }
    }
    Ok(notes)
}

fn reinforcement_bounds() -> Outcome {
    let art = RuleId::Artificial;
    let mut failures = vec![];
    let full7 = check_reinforcement(&art, ReinforcementVariant::Full, 7).map_err(|e| e.to_string())?;
    ensure(full7.holds(), || format!("{full7}"))?;
    let subset8 =
        check_reinforcement(&art, ReinforcementVariant::Subset, 8).map_err(|e| e.to_string())?;
    if !subset8.holds() {
        let w = &subset8.witnesses[0];
        failures.push(format!(
            "artificial subset-reinforcement at 8: {} violations, first {} -> {}, {} -> {}, union {} -> {}",
            subset8.witnesses.len(),
            w.evaluations[0].profile,
            w.evaluations[0].output,
            w.evaluations[1].profile,
            w.evaluations[1].output,
            w.evaluations[2].profile,
            w.evaluations[2].output
        ));
    }
    let full8 = check_reinforcement(&art, ReinforcementVariant::Full, 8).map_err(|e| e.to_string())?;
    ensure(
        full8
            .witnesses
            .iter()
            .any(|w| w.evaluations[2].profile.voters() == 8),
        || "artificial passes full reinforcement at 8".into(),
    )?;
    let hom = check_homogeneity(&art, 8).map_err(|e| e.to_string())?;
    ensure(
        hom.witnesses
            .iter()
            .any(|w| w.evaluations[0].profile.voters() == 8),
        || "no 8-voter homogeneity failure".into(),
    )?;
    let mono = check_responsiveness(&art, ResponsivenessVariant::Monotonicity, 7)
        .map_err(|e| e.to_string())?;
    ensure(mono.holds(), || format!("{mono}"))?;
    let opt = check_participation(&art, ParticipationVariant::Optimist, 7).map_err(|e| e.to_string())?;
    ensure(opt.holds(), || format!("{opt}"))?;

    let passing = [RuleId::Black, RuleId::StableVoting, RuleId::Leximin];
    let graph_d = (p("1acb"), p("1abc+1bca+1cab"));
    let copeland_nanson = (p("1abc+1bac"), p("1abc+1bca"));
    let mut table_rules: Vec<RuleId> = TableRow::ALL.iter().map(|r| r.rule()).collect();
    table_rules.extend([RuleId::Black, RuleId::Baldwin]);
    for rule in table_rules {
        let rep = check_reinforcement(&rule, ReinforcementVariant::Full, 4).map_err(|e| e.to_string())?;
        if passing.contains(&rule) {
            ensure(rep.holds(), || format!("{rep}"))?;
            continue;
        }
        let cited = if eval(&rule, &p("1abc+1cab"))? != set("a") {
            graph_d
        } else {
            copeland_nanson
        };
        ensure(
            rep.witnesses.iter().any(|w| {
                let (x, y) = (w.evaluations[0].profile, w.evaluations[1].profile);
                (x, y) == cited || (y, x) == cited
            }),
            || format!("{rule}: cited witness {} + {} not found", cited.0, cited.1),
        )?;
    }
    if failures.is_empty() {
        Ok(vec!["all reinforcement bounds reproduced".into()])
    } else {
        Err(failures.join("; "))
    }
}

fn proof_replays() -> Outcome {
    let mut notes = vec![];
    for id in ProofScript::ALL {
        let rep = proof_replay(id);
        ensure(rep.verified(), || format!("{rep}"))?;
        let steps: usize = rep.cases.iter().map(|c| c.steps.len()).sum();
        notes.push(format!("{id}: {} case(s), {steps} steps verified", rep.cases.len()));
    }
    Ok(notes)
}

fn sat_cross_validation() -> Outcome {
    let plain = EncodingOptions { neutrality: false };
    let i7 = build_instance(7, plain).map_err(|e| e.to_string())?;
    ensure(check_assignment(&i7, &RuleId::Artificial).map_err(|e| e.to_string())?, || {
        "artificial is not a model at bound 7".into()
    })?;
    let mut soundness = 0;
    for bound in 2..=6 {
        let inst = build_instance(bound, plain).map_err(|e| e.to_string())?;
        if bound == 4 {
            ensure(check_assignment(&inst, &RuleId::Leximin).map_err(|e| e.to_string())?, || {
                "leximin is not a model at bound 4".into()
            })?;
        }
        for rule in RuleId::condorcet_extensions() {
            let model = check_assignment(&inst, &rule).map_err(|e| e.to_string())?;
            let holds = check_reinforcement(&rule, ReinforcementVariant::Full, bound)
                .map_err(|e| e.to_string())?
                .holds();
            ensure(model == holds, || {
                format!("{rule} bound {bound}: model {model}, reinforcement {holds}")
            })?;
            soundness += 1;
        }
    }
    let neutral5 = build_instance(5, EncodingOptions { neutrality: true }).map_err(|e| e.to_string())?;
    let verdict = match solve(neutral5.num_vars(), &neutral5.clauses, DEFAULT_DECISION_BUDGET) {
        SolveOutcome::Unsat => "UNSAT".to_string(),
        SolveOutcome::Sat(_) => return Err("bound-5 neutral instance reported SAT".into()),
        SolveOutcome::Unknown => "undecided (export for an external solver)".to_string(),
    };
    Ok(vec![
        format!("encoding soundness: {soundness} rule/bound pairs agree"),
        format!(
            "bound-5 neutral instance ({} vars, {} clauses): {verdict}",
            neutral5.num_vars(),
            neutral5.clauses.len()
        ),
    ])
}

fn scoring_counterexamples() -> Outcome {
    use Candidate::{A, B};
    let cases = [
        ("30abc+1acb+10cab+29bac+10bca+1cba", Monotonicity::Strict),
        ("3abc+2bca+1bac+1cab", Monotonicity::Strict),
        ("6abc+3cab+4bac+4bca", Monotonicity::Weak),
        ("4abc+3bca+2bac+2cab", Monotonicity::Weak),
    ];
    for (text, mode) in cases {
        let prof = p(text);
        ensure(prof.margins().condorcet_winner() == Some(A), || format!("{text}: a is not the CW"))?;
        ensure(dominates_all_scoring(&prof, B, mode), || format!("{text}: b not dominant ({mode:?})"))?;
    }
    ensure(p("30abc+1acb+10cab+29bac+10bca+1cba").voters() == 81, || "81".into())?;
    let weak = search(
        |prof| match prof.margins().condorcet_winner() {
            Some(w) => Candidate::ALL
                .into_iter()
                .any(|x| x != w && dominates_all_scoring(prof, x, Monotonicity::Weak)),
            None => false,
        },
        10,
        SearchMode::First,
    );
    ensure(weak.is_empty(), || format!("weak-mode example with n <= 10: {}", weak[0]))?;
    let minimal = search(
        |prof| {
            prof.margins().condorcet_winner().is_some_and(|w| {
                Candidate::ALL
                    .into_iter()
                    .any(|x| x != w && dominates_all_scoring(prof, x, Monotonicity::Weak))
            })
        },
        11,
        SearchMode::First,
    );
    ensure(minimal.first().is_some_and(|m| m.voters() == 11), || {
        "no 11-voter weak-mode example found".into()
    })?;
    let g = p("2abc+1bac+1bca+1cab");
    ensure(g.margins().condorcet_winner() == Some(A), || "Grundbacher CW".into())?;
    ensure(g.rank_counts(A) == g.rank_counts(B), || "a, b distinguishable".into())?;
    Ok(vec![format!(
        "4 universal counterexamples verified; no weak-mode example up to 10 voters; first at 11: {}",
        minimal[0]
    )])
}

fn participation_suite() -> Outcome {
    for rule in [RuleId::Maximin, RuleId::Leximin, RuleId::Nanson, RuleId::StableVoting] {
        for v in [ParticipationVariant::Optimist, ParticipationVariant::Fishburn] {
            let rep = check_participation(&rule, v, 8).map_err(|e| e.to_string())?;
            ensure(rep.holds(), || format!("{rep}"))?;
        }
    }
    let pi = check_participation(&RuleId::StrictNanson, ParticipationVariant::PositiveInvolvement, 8)
        .map_err(|e| e.to_string())?;
    ensure(
        pi.witnesses.iter().any(|w| {
            w.profiles() == vec![p("2acb+2bac+2cba"), p("2acb+2bac+1cab+2cba")]
                && w.outputs() == vec![set("abc"), set("a")]
        }),
        || "strict Nanson 6 -> 7 voter witness missing".into(),
    )?;
    let mut instances = 0;
    for rule in RuleId::NAMED {
        let rep = verify_optimist_equivalence(&rule, 7).map_err(|e| e.to_string())?;
        ensure(rep.mismatches.is_empty(), || format!("{rule}: {:?}", rep.mismatches[0]))?;
        instances += rep.instances;
    }
    let mut pi_rules = vec![];
    for rule in RuleId::condorcet_extensions() {
        let rep = check_participation(&rule, ParticipationVariant::PositiveInvolvement, 8)
            .map_err(|e| e.to_string())?;
        if rep.holds() {
            let refine = check_refinement(&rule, &RuleId::Defensible, 8).map_err(|e| e.to_string())?;
            ensure(refine.holds(), || {
                format!("{rule} passes PI but is not contained in defensible: {}", refine.witnesses[0].profiles()[0])
            })?;
            pi_rules.push(rule.to_string());
        }
    }
    Ok(vec![
        format!("optimist equivalence holds on {instances} instances (all rules, bound 7)"),
        format!("Condorcet extensions with positive involvement up to 8 refine the defensible set: {}", pi_rules.join(", ")),
    ])
}

fn responsiveness() -> Outcome {
    let lex = check_responsiveness(&RuleId::Leximin, ResponsivenessVariant::Positive, 8)
        .map_err(|e| e.to_string())?;
    ensure(lex.holds(), || format!("{lex}"))?;
    let tb = check_responsiveness(&RuleId::Nanson, ResponsivenessVariant::TiebreakPositive, 8)
        .map_err(|e| e.to_string())?;
    ensure(tb.holds(), || format!("{tb}"))?;
    let pr = check_responsiveness(&RuleId::Nanson, ResponsivenessVariant::Positive, 8)
        .map_err(|e| e.to_string())?;
    ensure(!pr.holds() && pr.witnesses.iter().all(|w| w.replays()), || {
        "Nanson positive responsiveness witness missing".into()
    })?;
    let strong = check_condorcet(&RuleId::Nanson, CondorcetVariant::Strong, 8).map_err(|e| e.to_string())?;
    ensure(strong.holds(), || format!("{strong}"))?;
    let lex_strong =
        check_condorcet(&RuleId::Leximin, CondorcetVariant::Strong, 8).map_err(|e| e.to_string())?;
    ensure(
        lex_strong
            .witnesses
            .iter()
            .any(|w| w.profiles() == vec![p("1abc+1acb+2cab")] && w.outputs() == vec![set("a")]),
        || "leximin strong Condorcet witness missing".into(),
    )?;
    let w = &pr.witnesses[0];
    Ok(vec![format!(
        "Nanson positive responsiveness witness: {} -> {}, then {} -> {} ({})",
        w.evaluations[0].profile, w.evaluations[0].output, w.evaluations[1].profile, w.evaluations[1].output, w.note
    )])
}

/// Published irresoluteness curves for even n from 4 to 30.
const CURVES: [(RuleId, [f64; 14]); 4] = [
    (
        RuleId::Maximin,
        [
            0.333333, 0.264069, 0.219114, 0.18681, 0.16257, 0.14396, 0.12914, 0.11706, 0.10705,
            0.09862, 0.09141, 0.08519, 0.07976, 0.07497,
        ],
    ),
    (
        RuleId::Nanson,
        [
            0.142857, 0.134199, 0.121212, 0.10889, 0.09857, 0.08978, 0.08226, 0.07587, 0.07035,
            0.06555, 0.06135, 0.05764, 0.05435, 0.05141,
        ],
    ),
    (
        RuleId::Leximin,
        [
            0.09523, 0.06926, 0.05128, 0.0389, 0.0307, 0.0247, 0.0203, 0.017, 0.0144, 0.0124,
            0.0107, 0.0094, 0.0083, 0.0074,
        ],
    ),
    (
        RuleId::Black,
        [
            0.14285, 0.10389, 0.07692, 0.05794, 0.04686, 0.03869, 0.03228, 0.02775, 0.02416,
            0.02118, 0.01887, 0.01695, 0.01529, 0.01394,
        ],
    ),
];

fn figure4() -> Outcome {
    let mut worst = 0.0f64;
    let mut exact_notes = vec![];
    for (rule, values) in CURVES {
        let mut prev = f64::INFINITY;
        for (i, &published) in values.iter().enumerate() {
            let n = 4 + 2 * i as u64;
            let row = irresoluteness(&rule, n).map_err(|e| e.to_string())?;
            let plotted = row.fraction_f64(TieConvention::Plotted);
            let err = (plotted - published).abs();
            worst = worst.max(err);
            ensure(err < 1e-4, || {
                format!("{rule} n={n}: {plotted:.6} vs published {published}")
            })?;
            ensure(plotted < prev, || format!("{rule} not decreasing at n={n}"))?;
            prev = plotted;
            if n == 4 && row.all_tied > 0 && rule != RuleId::Black {
                exact_notes.push(format!(
                    "{rule} n=4 exact {}/{} (plotted curve omits {} all-tied profiles)",
                    row.irresolute, row.total, row.all_tied
                ));
            }
        }
    }
    let mut notes = vec![format!("56 points within 1e-4 (max deviation {worst:.2e}), all curves decreasing")];
    notes.extend(exact_notes);
    Ok(notes)
}

fn mcgarvey_round_trip() -> Outcome {
    let mut count = 0;
    for ab in -9i64..=9 {
        for ac in -9i64..=9 {
            for bc in -9i64..=9 {
                if (ab - ac) % 2 != 0 || (ab - bc) % 2 != 0 {
                    continue;
                }
                let target = MarginGraph::new(ab, ac, bc);
                let prof = mcgarvey(&target).map_err(|e| e.to_string())?;
                ensure(prof.margins() == target, || format!("{target:?} -> {prof}"))?;
                count += 1;
            }
        }
    }
    Ok(vec![format!("{count} targets recovered exactly")])
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("table fidelity", table_fidelity),
        ("refinement diagram", hasse),
        ("maximin cluster equivalence", cluster_equivalence),
        ("reinforcement bounds", reinforcement_bounds),
        ("proof replays", proof_replays),
        ("SAT cross-validation", sat_cross_validation),
        ("scoring counterexamples", scoring_counterexamples),
        ("participation suite", participation_suite),
        ("responsiveness", responsiveness),
        ("irresoluteness curves", figure4),
        ("McGarvey round-trip", mcgarvey_round_trip),
    ];
    let known: HashMap<usize, &str> = UNATTAINABLE.iter().copied().collect();
    let mut unexpected = 0;
    let mut passed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(notes) => {
                passed += 1;
                println!("PASS {id:>2} {name} ({secs:.2}s)");
                for n in notes {
                    println!("        {n}");
                }
                if known.contains_key(&id) {
                    println!("        note: listed as unattainable but passed");
                }
            }
            Err(why) => {
                println!("FAIL {id:>2} {name} ({secs:.2}s)");
                println!("        {why}");
                match known.get(&id) {
                    Some(reason) => println!("        known: {reason}"),
                    None => unexpected += 1,
                }
            }
        }
    }
    println!("{passed}/{} criteria passed", criteria.len());
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
