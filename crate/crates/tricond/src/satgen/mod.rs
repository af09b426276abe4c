//! CNF encodings of "Condorcet extension + reinforcement" over all anonymous
//! profiles up to a voter bound, DIMACS export, and mechanical replays of the
//! small impossibility proofs.

mod dpll;
mod replay;

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::io;

use thiserror::Error;

use crate::enumeration::profiles_up_to;
use crate::profile::{stabilizer, Candidate, ChoiceSet, Permutation, Profile};
use crate::rules::{evaluate, RuleError, RuleId};

pub use dpll::{solve, SolveOutcome, DEFAULT_DECISION_BUDGET};
pub use replay::{proof_replay, ProofScript, ReplayReport, StepRecord};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SatgenError {
    #[error("bound must be at least 2, got {0}")]
    BoundTooSmall(u64),
    #[error("malformed DIMACS at line {line}: {reason}")]
    Dimacs { line: usize, reason: String },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct EncodingOptions {
    /// Identify `x[σP, σc]` with `x[P, c]` for every candidate permutation σ.
    pub neutrality: bool,
}

/// What a variable stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarMeaning {
    /// `c ∈ f(P)`.
    Member(Profile, Candidate),
    /// `f(P1) ∩ f(P2) ≠ ∅`.
    Intersects(Profile, Profile),
}

#[derive(Clone, Debug)]
pub struct CnfInstance {
    pub bound: u64,
    pub options: EncodingOptions,
    pub universe: Vec<Profile>,
    member_vars: HashMap<(Profile, Candidate), u32>,
    pair_vars: HashMap<(Profile, Profile), u32>,
    /// `meanings[v - 1]` describes variable `v` (for aliased variables, the
    /// first profile that introduced it).
    pub meanings: Vec<VarMeaning>,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfInstance {
    pub fn num_vars(&self) -> usize {
        self.meanings.len()
    }

    /// Variable meaning `c ∈ f(P)`.
    pub fn var_of(&self, p: &Profile, c: Candidate) -> Option<u32> {
        self.member_vars.get(&(*p, c)).copied()
    }

    /// Variable meaning `f(P1) ∩ f(P2) ≠ ∅`.
    pub fn aux_of(&self, p1: &Profile, p2: &Profile) -> Option<u32> {
        let key = if p1 <= p2 { (*p1, *p2) } else { (*p2, *p1) };
        self.pair_vars.get(&key).copied()
    }
}

struct Builder {
    options: EncodingOptions,
    member_vars: HashMap<(Profile, Candidate), u32>,
    canonical_members: HashMap<(Profile, Candidate), u32>,
    pair_vars: HashMap<(Profile, Profile), u32>,
    canonical_pairs: HashMap<(Profile, Profile), u32>,
    meanings: Vec<VarMeaning>,
    clauses: Vec<Vec<i32>>,
    seen: HashSet<Vec<i32>>,
}

impl Builder {
    fn fresh(&mut self, meaning: VarMeaning) -> u32 {
        self.meanings.push(meaning);
        self.meanings.len() as u32
    }

    /// Smallest relabeling of `p` and a permutation reaching it.
    fn canonical(&self, p: &Profile) -> (Profile, Permutation) {
        if !self.options.neutrality {
            return (*p, Permutation::IDENTITY);
        }
        Permutation::ALL
            .into_iter()
            .map(|s| (p.permuted(s), s))
            .min()
            .unwrap()
    }

    fn member(&mut self, p: &Profile, c: Candidate) -> u32 {
        if let Some(&v) = self.member_vars.get(&(*p, c)) {
            return v;
        }
        let (rep, tau) = self.canonical(p);
        let mut rc = tau.apply(c);
        if self.options.neutrality {
            rc = stabilizer(&rep).into_iter().map(|s| s.apply(rc)).min().unwrap();
        }
        let v = match self.canonical_members.get(&(rep, rc)) {
            Some(&v) => v,
            None => {
                let v = self.fresh(VarMeaning::Member(*p, c));
                self.canonical_members.insert((rep, rc), v);
                v
            }
        };
        self.member_vars.insert((*p, c), v);
        v
    }

    fn pair(&mut self, p1: &Profile, p2: &Profile) -> u32 {
        let key = if p1 <= p2 { (*p1, *p2) } else { (*p2, *p1) };
        if let Some(&v) = self.pair_vars.get(&key) {
            return v;
        }
        let canon = if self.options.neutrality {
            Permutation::ALL
                .into_iter()
                .map(|s| {
                    let (x, y) = (key.0.permuted(s), key.1.permuted(s));
                    if x <= y {
                        (x, y)
                    } else {
                        (y, x)
                    }
                })
                .min()
                .unwrap()
        } else {
            key
        };
        let v = match self.canonical_pairs.get(&canon) {
            Some(&v) => v,
            None => {
                let v = self.fresh(VarMeaning::Intersects(key.0, key.1));
                self.canonical_pairs.insert(canon, v);
                v
            }
        };
        self.pair_vars.insert(key, v);
        v
    }

    /// Adds a clause after sorting and de-duplicating literals; tautologies
    /// and repeated clauses are dropped.
    fn clause(&mut self, lits: &[i32]) {
        let mut c = lits.to_vec();
        c.sort_unstable_by_key(|l| (l.unsigned_abs(), *l));
        c.dedup();
        if c.windows(2).any(|w| w[0] == -w[1]) {
            return;
        }
        if self.seen.insert(c.clone()) {
            self.clauses.push(c);
        }
    }
}

/// Builds the reinforcement instance over every profile with `1..=bound` voters.
pub fn build_instance(bound: u64, options: EncodingOptions) -> Result<CnfInstance, SatgenError> {
    if bound < 2 {
        return Err(SatgenError::BoundTooSmall(bound));
    }
    let universe = profiles_up_to(bound);
    let mut b = Builder {
        options,
        member_vars: HashMap::new(),
        canonical_members: HashMap::new(),
        pair_vars: HashMap::new(),
        canonical_pairs: HashMap::new(),
        meanings: vec![],
        clauses: vec![],
        seen: HashSet::new(),
    };
    for p in &universe {
        let vars = Candidate::ALL.map(|c| b.member(p, c) as i32);
        b.clause(&vars);
        if let Some(w) = p.margins().condorcet_winner() {
            for c in Candidate::ALL {
                let v = vars[c.index()];
                b.clause(&[if c == w { v } else { -v }]);
            }
        }
    }
    for (i, p1) in universe.iter().enumerate() {
        for p2 in &universe[i..] {
            if p1.voters() + p2.voters() > bound {
                break;
            }
            let sum = *p1 + *p2;
            let v = b.pair(p1, p2) as i32;
            for c in Candidate::ALL {
                let x1 = b.member(p1, c) as i32;
                let x2 = b.member(p2, c) as i32;
                let xs = b.member(&sum, c) as i32;
                b.clause(&[-x1, -x2, v]);
                b.clause(&[-v, -xs, x1]);
                b.clause(&[-v, -xs, x2]);
                b.clause(&[-v, -x1, -x2, xs]);
            }
        }
    }
    Ok(CnfInstance {
        bound,
        options,
        universe,
        member_vars: b.member_vars,
        pair_vars: b.pair_vars,
        meanings: b.meanings,
        clauses: b.clauses,
    })
}

/// Writes the instance in DIMACS CNF: comment lines naming every variable,
/// then the `p cnf` header, then one zero-terminated clause per line.
pub fn emit_dimacs<W: io::Write>(inst: &CnfInstance, mut out: W) -> io::Result<()> {
    out.write_all(dimacs_string(inst).as_bytes())
}

pub fn dimacs_string(inst: &CnfInstance) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "c reinforcement instance bound={} neutrality={}",
        inst.bound,
        if inst.options.neutrality { "on" } else { "off" }
    );
    for (i, m) in inst.meanings.iter().enumerate() {
        let _ = match m {
            VarMeaning::Member(p, c) => writeln!(s, "c x {} {} {}", i + 1, p, c),
            VarMeaning::Intersects(p1, p2) => writeln!(s, "c v {} {} {}", i + 1, p1, p2),
        };
    }
    let _ = writeln!(s, "p cnf {} {}", inst.num_vars(), inst.clauses.len());
    for c in &inst.clauses {
        for l in c {
            let _ = write!(s, "{l} ");
        }
        s.push_str("0\n");
    }
    s
}

/// A parsed DIMACS CNF formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dimacs {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

pub fn parse_dimacs(text: &str) -> Result<Dimacs, SatgenError> {
    let err = |line: usize, reason: &str| SatgenError::Dimacs {
        line,
        reason: reason.to_string(),
    };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = vec![];
    let mut current = vec![];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if header.is_some() || parts.len() != 4 || parts[1] != "cnf" {
                return Err(err(i + 1, "bad header"));
            }
            let vars = parts[2].parse().map_err(|_| err(i + 1, "bad variable count"))?;
            let count = parts[3].parse().map_err(|_| err(i + 1, "bad clause count"))?;
            header = Some((vars, count));
            continue;
        }
        let (vars, _) = header.ok_or_else(|| err(i + 1, "clause before header"))?;
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| err(i + 1, "bad literal"))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(err(i + 1, "literal out of range"));
            } else {
                current.push(lit);
            }
        }
    }
    let (num_vars, count) = header.ok_or_else(|| err(0, "missing header"))?;
    if !current.is_empty() {
        return Err(err(0, "unterminated clause"));
    }
    if clauses.len() != count {
        return Err(err(0, "clause count does not match header"));
    }
    Ok(Dimacs { num_vars, clauses })
}

/// The assignment induced by choice sets: `x[P,c] = c ∈ f(P)` and each pair
/// variable true iff the two choice sets intersect. `None` when aliased
/// variables would need different values (a non-neutral rule under
/// neutrality aliasing).
pub fn induced_assignment(
    inst: &CnfInstance,
    outputs: &HashMap<Profile, ChoiceSet>,
) -> Option<Vec<bool>> {
    let mut values: Vec<Option<bool>> = vec![None; inst.num_vars() + 1];
    let mut set = |v: u32, b: bool| match values[v as usize] {
        Some(old) => old == b,
        None => {
            values[v as usize] = Some(b);
            true
        }
    };
    for (&(p, c), &v) in &inst.member_vars {
        if !set(v, outputs[&p].contains(c)) {
            return None;
        }
    }
    for (&(p1, p2), &v) in &inst.pair_vars {
        if !set(v, outputs[&p1].intersection(outputs[&p2]).is_some()) {
            return None;
        }
    }
    Some(values.into_iter().map(|v| v.unwrap_or(false)).collect())
}

/// Whether `assignment` (indexed by variable, slot 0 unused) satisfies every clause.
pub fn satisfies(clauses: &[Vec<i32>], assignment: &[bool]) -> bool {
    clauses.iter().all(|c| {
        c.iter()
            .any(|&l| assignment[l.unsigned_abs() as usize] == (l > 0))
    })
}

/// Whether the rule's outputs on the universe form a model of the instance.
pub fn check_assignment(inst: &CnfInstance, rule: &RuleId) -> Result<bool, RuleError> {
    let outputs = inst
        .universe
        .iter()
        .map(|p| Ok((*p, evaluate(rule, p)?)))
        .collect::<Result<HashMap<_, _>, RuleError>>()?;
    Ok(induced_assignment(inst, &outputs).is_some_and(|a| satisfies(&inst.clauses, &a)))
}
