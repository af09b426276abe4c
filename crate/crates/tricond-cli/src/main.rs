//! `tricond`: evaluate three-candidate voting rules, check axioms, and
//! generate irresoluteness data and SAT instances.
//!
//! Exit codes: 0 success or property holds, 1 counterexample found, 2 usage
//! or parse error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tricond::axioms::{check, AxiomId};
use tricond::enumeration::{irresoluteness, search, FrequencyRow, SearchMode, TieConvention};
use tricond::profile::{GraphKind, Profile};
use tricond::rules::{evaluate, RuleId};
use tricond::satgen::{
    build_instance, emit_dimacs, proof_replay, solve, EncodingOptions, ProofScript, SolveOutcome,
    DEFAULT_DECISION_BUDGET,
};

#[derive(Parser)]
#[command(name = "tricond", version, about = "Condorcet-consistent voting rules for three candidates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the winners of one or all rules on a profile such as "3abc+1bca+4cab".
    Winners(WinnersArgs),
    /// Print every rule's output on each margin-graph shape without a Condorcet winner.
    Table,
    /// Check an axiom exhaustively over all profiles up to a voter bound.
    Verify(VerifyArgs),
    /// Irresoluteness counts as CSV for even electorates from 4 to --max-n.
    Figure4(Figure4Args),
    /// Emit the reinforcement CNF instance in DIMACS format.
    Satgen(SatgenArgs),
    /// Replay a proof script step by step.
    Replay(ReplayArgs),
    /// Search all profiles up to a bound for a counterexample.
    Search(SearchArgs),
}

#[derive(Args)]
struct WinnersArgs {
    profile: Profile,
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    rule: Option<RuleId>,
    /// Evaluate every named rule.
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    rule: RuleId,
    /// Axiom name, e.g. reinforcement, positive_involvement,
    /// resolute_participation(abc), refinement(maximin).
    #[arg(long)]
    axiom: AxiomId,
    #[arg(long)]
    bound: u64,
}

#[derive(Args)]
struct Figure4Args {
    /// Comma-separated rule names.
    #[arg(long, value_delimiter = ',', default_value = "maximin,nanson,leximin,black")]
    rules: Vec<RuleId>,
    #[arg(long)]
    max_n: u64,
    /// Count every irresolute profile, including those with all margins zero.
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct SatgenArgs {
    #[arg(long)]
    bound: u64,
    /// Identify variables of profiles related by a candidate relabeling.
    #[arg(long)]
    neutral: bool,
    /// Output file (standard output if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also run the built-in best-effort solver and report the result on standard error.
    #[arg(long)]
    solve: bool,
}

#[derive(Args)]
struct ReplayArgs {
    /// Script name or numeric alias (4.1, 4.3, 4.5).
    script: String,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "claim")]
struct SearchClaim {
    /// Profiles where the rule's output differs from this rule's.
    #[arg(long, group = "claim")]
    differs_from: Option<RuleId>,
    /// Profiles where the rule's output is not contained in this rule's.
    #[arg(long, group = "claim")]
    not_subset_of: Option<RuleId>,
    /// Profiles where the rule selects more than one candidate.
    #[arg(long, group = "claim")]
    irresolute: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    rule: RuleId,
    #[command(flatten)]
    claim: SearchClaim,
    #[arg(long)]
    bound: u64,
    /// List every match instead of the first.
    #[arg(long)]
    all: bool,
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match run(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => usage_error(e),
    };
    if out.flush().is_err() {
        return ExitCode::from(2);
    }
    code
}

type Outcome = Result<ExitCode, Box<dyn std::error::Error>>;

fn run(command: Command, out: &mut impl Write) -> Outcome {
    match command {
        Command::Winners(a) => winners(a, out),
        Command::Table => table(out),
        Command::Verify(a) => verify(a, out),
        Command::Figure4(a) => figure4(a, out),
        Command::Satgen(a) => satgen(a, out),
        Command::Replay(a) => replay(a, out),
        Command::Search(a) => search_cmd(a, out),
    }
}

fn winners(a: WinnersArgs, out: &mut impl Write) -> Outcome {
    if a.profile.is_empty() {
        return Ok(usage_error("the profile has no voters"));
    }
    let rules: Vec<RuleId> = match a.rule {
        Some(r) => vec![r],
        None => RuleId::NAMED.to_vec(),
    };
    for r in rules {
        match evaluate(&r, &a.profile) {
            Ok(set) => writeln!(out, "{r}: {set}")?,
            Err(e) if a.all => writeln!(out, "{r}: unavailable ({e})")?,
            Err(e) => return Ok(usage_error(e)),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn table(out: &mut impl Write) -> Outcome {
    let width = RuleId::NAMED
        .iter()
        .map(|r| r.to_string().len())
        .max()
        .unwrap_or(0);
    write!(out, "{:width$}", "rule")?;
    for g in GraphKind::ALL {
        write!(out, " {:>7}", g.to_string())?;
    }
    writeln!(out)?;
    for r in RuleId::NAMED {
        write!(out, "{:width$}", r.to_string())?;
        for g in GraphKind::ALL {
            let cell = evaluate(&r, &g.representative())?;
            write!(out, " {:>7}", cell.to_string())?;
        }
        writeln!(out)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(a: VerifyArgs, out: &mut impl Write) -> Outcome {
    let report = check(&a.rule, a.axiom, a.bound)?;
    write!(out, "{report}")?;
    Ok(if report.holds() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn figure4(a: Figure4Args, out: &mut impl Write) -> Outcome {
    if a.max_n < 4 || a.max_n % 2 != 0 {
        return Ok(usage_error("--max-n must be even and at least 4"));
    }
    let convention = if a.exact {
        TieConvention::Exact
    } else {
        TieConvention::Plotted
    };
    writeln!(out, "{}", FrequencyRow::CSV_HEADER)?;
    for rule in &a.rules {
        for n in (4..=a.max_n).step_by(2) {
            let row = irresoluteness(rule, n)?;
            writeln!(out, "{}", row.csv_line(convention))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn satgen(a: SatgenArgs, out: &mut impl Write) -> Outcome {
    let inst = build_instance(a.bound, EncodingOptions { neutrality: a.neutral })?;
    match &a.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            emit_dimacs(&inst, &mut file)?;
            file.flush()?;
            eprintln!(
                "wrote {} ({} variables, {} clauses)",
                path.display(),
                inst.num_vars(),
                inst.clauses.len()
            );
        }
        None => emit_dimacs(&inst, &mut *out)?,
    }
    if a.solve {
        let verdict = match solve(inst.num_vars(), &inst.clauses, DEFAULT_DECISION_BUDGET) {
            SolveOutcome::Sat(_) => "SATISFIABLE",
            SolveOutcome::Unsat => "UNSATISFIABLE",
            SolveOutcome::Unknown => "UNKNOWN (decision budget exhausted)",
        };
        eprintln!("s {verdict}");
    }
    Ok(ExitCode::SUCCESS)
}

fn replay(a: ReplayArgs, out: &mut impl Write) -> Outcome {
    let script: ProofScript = match a.script.parse() {
        Ok(s) => s,
        Err(e) => return Ok(usage_error(e)),
    };
    let report = proof_replay(script);
    write!(out, "{report}")?;
    Ok(if report.verified() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn search_cmd(a: SearchArgs, out: &mut impl Write) -> Outcome {
    let rule = a.rule;
    let claim = a.claim;
    // errors (e.g. brute-force rules past their bound) count as no match
    let predicate = |p: &Profile| {
        let Ok(x) = evaluate(&rule, p) else {
            return false;
        };
        if claim.irresolute {
            return x.len() >= 2;
        }
        let (other, subset) = match (claim.differs_from, claim.not_subset_of) {
            (Some(o), _) => (o, false),
            (_, Some(o)) => (o, true),
            _ => unreachable!("clap enforces one claim"),
        };
        match evaluate(&other, p) {
            Ok(y) if subset => !x.is_subset(y),
            Ok(y) => x != y,
            Err(_) => false,
        }
    };
    let mode = if a.all { SearchMode::All } else { SearchMode::First };
    let found = search(predicate, a.bound, mode);
    for p in &found {
        write!(out, "{p}: {rule} {}", evaluate(&rule, p)?)?;
        if let Some(o) = claim.differs_from.or(claim.not_subset_of) {
            write!(out, ", {o} {}", evaluate(&o, p)?)?;
        }
        writeln!(out)?;
    }
    if found.is_empty() {
        writeln!(out, "no match up to {} voters", a.bound)?;
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
