//! Step-by-step replays of the short reinforcement impossibility proofs.
//!
//! Each script names a few profiles and a chain of deductions about an
//! arbitrary Condorcet extension `f`. Every deduction is checked with margin
//! arithmetic and set logic only; no voting rule is evaluated.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::profile::{Candidate, ChoiceSet, Permutation, Profile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProofScript {
    /// Condorcet extensions violate subset-reinforcement with 9 voters.
    SubsetReinforcementNineVoters,
    /// Anonymous Condorcet extensions violate reinforcement with 8 voters.
    ReinforcementEightVoters,
    /// Anonymous neutral Condorcet extensions violate reinforcement with 5 voters.
    ReinforcementNeutralFiveVoters,
}

impl ProofScript {
    pub const ALL: [ProofScript; 3] = [
        ProofScript::SubsetReinforcementNineVoters,
        ProofScript::ReinforcementEightVoters,
        ProofScript::ReinforcementNeutralFiveVoters,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProofScript::SubsetReinforcementNineVoters => "subset_reinforcement_nine_voters",
            ProofScript::ReinforcementEightVoters => "reinforcement_eight_voters",
            ProofScript::ReinforcementNeutralFiveVoters => "reinforcement_neutral_five_voters",
        }
    }

    /// Short numeric alias accepted on the command line.
    pub fn alias(self) -> &'static str {
        match self {
            ProofScript::SubsetReinforcementNineVoters => "4.1",
            ProofScript::ReinforcementEightVoters => "4.3",
            ProofScript::ReinforcementNeutralFiveVoters => "4.5",
        }
    }
}

impl fmt::Display for ProofScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProofScript {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        ProofScript::ALL
            .into_iter()
            .find(|p| p.name() == key || p.alias() == key)
            .ok_or_else(|| format!("unknown proof script `{s}`"))
    }
}

type Label = &'static str;

/// One deduction in a script, stated for the unrelabeled case.
#[derive(Clone, Copy, Debug)]
enum Step {
    /// Without loss of generality `x ∈ f(P)`; justified by a relabeling of
    /// the candidates that fixes `P`, checked per case.
    Assume(Label, Candidate),
    /// `P` has Condorcet winner `w`, so `f(P) = {w}`.
    CondorcetWinner(Label, Candidate),
    /// `x ∈ f(present)` and `x ∉ f(sum)` with `sum = absent + present`, so
    /// by subset-reinforcement `x ∉ f(absent)`.
    Exclude {
        x: Candidate,
        absent: Label,
        present: Label,
        sum: Label,
    },
    /// `x ∈ f(P1) ∩ f(P2)` so `x ∈ f(P1 + P2)` (subset-reinforcement).
    Include {
        x: Candidate,
        left: Label,
        right: Label,
        sum: Label,
    },
    /// `f(P1)`, `f(P2)` known and intersecting, so `f(P1 + P2)` is their
    /// intersection (reinforcement).
    Intersect { left: Label, right: Label, sum: Label },
    /// `P` is fixed by the swap of two candidates, so `f(P)` is closed under
    /// it (anonymity and neutrality).
    Symmetric(Label, Candidate, Candidate),
    /// `P` is fixed by the cyclic relabeling a->b->c->a.
    Cyclic(Label),
    /// `f(P)` is the only non-empty set compatible with what is known.
    Determine(Label),
    /// `x ∈ f(P)` and `x ∉ f(P)`.
    Contradiction(Label, Candidate),
}

struct Script {
    profiles: Vec<(Label, Profile)>,
    /// Label fixed by the relabeling used for the case split, if any.
    wlog: Option<Label>,
    steps: Vec<Step>,
}

fn profile(s: &str) -> Profile {
    s.parse().expect("script profile")
}

fn script(id: ProofScript) -> Script {
    use Candidate::{A, B, C};
    use Step::*;
    match id {
        ProofScript::SubsetReinforcementNineVoters => Script {
            profiles: vec![
                ("P1", profile("2abc+2bca+2cab")),
                ("P2", profile("2acb+1cab")),
                ("P1+P2", profile("2abc+2acb+2bca+3cab")),
            ],
            wlog: Some("P1"),
            steps: vec![
                Assume("P1", A),
                CondorcetWinner("P2", A),
                Include {
                    x: A,
                    left: "P1",
                    right: "P2",
                    sum: "P1+P2",
                },
                CondorcetWinner("P1+P2", C),
                Contradiction("P1+P2", A),
            ],
        },
        ProofScript::ReinforcementEightVoters => Script {
            profiles: vec![
                ("P0", profile("bac")),
                ("P1", profile("abc+bca+cab")),
                ("P2", profile("abc+acb+2cab")),
                ("P3", profile("2acb+bca+cab")),
                ("P4", profile("abc+acb+bac+2cab")),
                ("P5", profile("3acb+2cab")),
                ("P6", profile("2acb+bac+bca+cab")),
                ("P7", profile("2abc+acb+bca+3cab")),
                ("P8", profile("abc+2acb+2bca+2cab")),
                ("P9", profile("abc+3acb+bca+3cab")),
            ],
            wlog: Some("P1"),
            steps: vec![
                Assume("P1", A),
                CondorcetWinner("P7", C),
                Exclude {
                    x: A,
                    absent: "P2",
                    present: "P1",
                    sum: "P7",
                },
                CondorcetWinner("P8", C),
                Exclude {
                    x: A,
                    absent: "P3",
                    present: "P1",
                    sum: "P8",
                },
                CondorcetWinner("P0", B),
                CondorcetWinner("P4", A),
                Exclude {
                    x: B,
                    absent: "P2",
                    present: "P0",
                    sum: "P4",
                },
                CondorcetWinner("P6", A),
                Exclude {
                    x: B,
                    absent: "P3",
                    present: "P0",
                    sum: "P6",
                },
                Determine("P2"),
                Determine("P3"),
                Intersect {
                    left: "P2",
                    right: "P3",
                    sum: "P9",
                },
                CondorcetWinner("P5", A),
                Include {
                    x: A,
                    left: "P1",
                    right: "P5",
                    sum: "P9",
                },
                Contradiction("P9", A),
            ],
        },
        ProofScript::ReinforcementNeutralFiveVoters => Script {
            profiles: vec![
                ("P1", profile("cab")),
                ("P2", profile("abc+bac")),
                ("P3", profile("abc+bca+cab")),
                ("P1+P2", profile("abc+bac+cab")),
                ("P2+P3", profile("2abc+bac+bca+cab")),
            ],
            wlog: None,
            steps: vec![
                CondorcetWinner("P1", C),
                CondorcetWinner("P1+P2", A),
                Exclude {
                    x: C,
                    absent: "P2",
                    present: "P1",
                    sum: "P1+P2",
                },
                Symmetric("P2", A, B),
                Determine("P2"),
                Cyclic("P3"),
                Determine("P3"),
                Intersect {
                    left: "P2",
                    right: "P3",
                    sum: "P2+P3",
                },
                CondorcetWinner("P2+P3", A),
                Contradiction("P2+P3", B),
            ],
        },
    }
}

/// The outcome of one checked step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub claim: String,
    pub justification: &'static str,
    pub failure: Option<String>,
}

impl StepRecord {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Steps of one case of the case split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseRecord {
    /// The candidate assumed in the first profile, when the proof splits cases.
    pub assumed: Option<Candidate>,
    pub steps: Vec<StepRecord>,
    /// Whether the final step derived a contradiction.
    pub contradiction: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayReport {
    pub script: ProofScript,
    pub profiles: Vec<(String, Profile)>,
    pub cases: Vec<CaseRecord>,
}

impl ReplayReport {
    /// Every step passed and every case ends in a contradiction.
    pub fn verified(&self) -> bool {
        self.cases
            .iter()
            .all(|c| c.contradiction && c.steps.iter().all(StepRecord::passed))
    }

    /// The first failing step, as `(case index, step index, reason)`.
    pub fn first_failure(&self) -> Option<(usize, usize, &str)> {
        self.cases.iter().enumerate().find_map(|(ci, c)| {
            c.steps
                .iter()
                .enumerate()
                .find_map(|(si, s)| s.failure.as_deref().map(|f| (ci, si, f)))
        })
    }
}

impl fmt::Display for ReplayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "replay {}", self.script)?;
        for (label, p) in &self.profiles {
            writeln!(f, "  {label} = {p}")?;
        }
        for case in &self.cases {
            match case.assumed {
                Some(x) => writeln!(f, "  case {x}:")?,
                None => writeln!(f, "  proof:")?,
            }
            for (i, s) in case.steps.iter().enumerate() {
                match &s.failure {
                    None => writeln!(f, "    {:>2}. {} [{}] ok", i + 1, s.claim, s.justification)?,
                    Some(why) => writeln!(
                        f,
                        "    {:>2}. {} [{}] FAILED: {}",
                        i + 1,
                        s.claim,
                        s.justification,
                        why
                    )?,
                }
            }
        }
        writeln!(
            f,
            "  result: {}",
            if self.verified() {
                "contradiction derived in every case"
            } else {
                "not verified"
            }
        )
    }
}

/// What has been established about `f(P)`.
#[derive(Clone, Copy, Debug, Default)]
struct Knowledge {
    contains: u8,
    excludes: u8,
    /// Candidate permutations under which `f(P)` is known to be closed.
    symmetries: [Option<Permutation>; 2],
}

impl Knowledge {
    fn exact(&self) -> Option<ChoiceSet> {
        (self.contains | self.excludes == 0b111)
            .then(|| ChoiceSet::from_bits(self.contains))
            .flatten()
    }

    fn set_exact(&mut self, s: ChoiceSet) {
        self.contains |= s.bits();
        self.excludes |= !s.bits() & 0b111;
    }
}

fn bit(c: Candidate) -> u8 {
    1 << c.index()
}

fn names(bits: u8) -> String {
    match ChoiceSet::from_bits(bits) {
        Some(s) => s.to_string(),
        None => "{}".to_string(),
    }
}

struct Checker<'a> {
    sigma: Permutation,
    profiles: &'a BTreeMap<Label, Profile>,
    known: BTreeMap<Label, Knowledge>,
}

impl Checker<'_> {
    fn p(&self, l: Label) -> Profile {
        self.profiles[l]
    }

    fn c(&self, c: Candidate) -> Candidate {
        self.sigma.apply(c)
    }

    fn k(&mut self, l: Label) -> &mut Knowledge {
        self.known.entry(l).or_default()
    }

    fn require_sum(&self, left: Label, right: Label, sum: Label) -> Result<(), String> {
        let combined = self.p(left) + self.p(right);
        if combined == self.p(sum) {
            Ok(())
        } else {
            Err(format!("{left} + {right} = {combined}, not {}", self.p(sum)))
        }
    }

    fn require_member(&self, l: Label, x: Candidate) -> Result<(), String> {
        match self.known.get(l) {
            Some(k) if k.contains & bit(x) != 0 => Ok(()),
            _ => Err(format!("{x} ∈ f({l}) not established")),
        }
    }

    fn require_exact(&self, l: Label) -> Result<ChoiceSet, String> {
        self.known
            .get(l)
            .and_then(Knowledge::exact)
            .ok_or_else(|| format!("f({l}) not determined"))
    }

    fn run(&mut self, step: Step) -> (String, &'static str, Result<(), String>) {
        match step {
            Step::Assume(l, x) => {
                let x = self.c(x);
                let fixed = self.p(l).permuted(self.sigma) == self.p(l);
                self.k(l).contains |= bit(x);
                let r = if fixed {
                    Ok(())
                } else {
                    Err(format!("the relabeling {} moves {l}", self.sigma))
                };
                (format!("{x} ∈ f({l})"), "case split", r)
            }
            Step::CondorcetWinner(l, w) => {
                let w = self.c(w);
                let m = self.p(l).margins();
                let claim = format!("{l} has Condorcet winner {w}, so f({l}) = {{{w}}}");
                let r = match m.condorcet_winner() {
                    Some(found) if found == w => {
                        self.k(l).set_exact(ChoiceSet::singleton(w));
                        Ok(())
                    }
                    _ => Err(format!(
                        "margins (ab, ac, bc) = {:?} do not make {w} the Condorcet winner",
                        m.as_array()
                    )),
                };
                (claim, "Condorcet extension", r)
            }
            Step::Exclude {
                x,
                absent,
                present,
                sum,
            } => {
                let x = self.c(x);
                let claim = format!("{x} ∉ f({absent}) since {sum} = {absent} + {present}");
                let r = self
                    .require_sum(absent, present, sum)
                    .and_then(|_| self.require_member(present, x))
                    .and_then(|_| match self.known.get(sum) {
                        Some(k) if k.excludes & bit(x) != 0 => Ok(()),
                        _ => Err(format!("{x} ∉ f({sum}) not established")),
                    });
                if r.is_ok() {
                    self.k(absent).excludes |= bit(x);
                }
                (claim, "reinforcement", r)
            }
            Step::Include { x, left, right, sum } => {
                let x = self.c(x);
                let claim = format!("{x} ∈ f({sum}) since {sum} = {left} + {right}");
                let r = self
                    .require_sum(left, right, sum)
                    .and_then(|_| self.require_member(left, x))
                    .and_then(|_| self.require_member(right, x));
                if r.is_ok() {
                    self.k(sum).contains |= bit(x);
                }
                (claim, "reinforcement", r)
            }
            Step::Intersect { left, right, sum } => {
                let claim = format!("f({sum}) = f({left}) ∩ f({right})");
                let r = self.require_sum(left, right, sum).and_then(|_| {
                    let (x, y) = (self.require_exact(left)?, self.require_exact(right)?);
                    x.intersection(y)
                        .ok_or_else(|| format!("f({left}) and f({right}) are disjoint"))
                });
                let out = r.map(|s| self.k(sum).set_exact(s));
                let claim = match self.known.get(sum) {
                    Some(k) if out.is_ok() => format!("{claim} = {}", names(k.contains)),
                    _ => claim,
                };
                (claim, "reinforcement", out)
            }
            Step::Symmetric(l, x, y) => {
                let (x, y) = (self.c(x), self.c(y));
                let z = x.third(y);
                let swap = Permutation::from_images({
                    let mut im = [Candidate::A; 3];
                    im[x.index()] = y;
                    im[y.index()] = x;
                    im[z.index()] = z;
                    im
                })
                .unwrap();
                let claim = format!("f({l}) is closed under swapping {x} and {y}");
                let r = self.add_symmetry(l, swap);
                (claim, "anonymity and neutrality", r)
            }
            Step::Cyclic(l) => {
                let rot = Permutation::from_images([Candidate::B, Candidate::C, Candidate::A])
                    .unwrap();
                let claim = format!("f({l}) is closed under rotating the candidates");
                let r = self.add_symmetry(l, rot);
                (claim, "anonymity and neutrality", r)
            }
            Step::Determine(l) => {
                let k = self.known.get(l).copied().unwrap_or_default();
                let options: Vec<ChoiceSet> = ChoiceSet::every()
                    .filter(|s| {
                        s.bits() & k.contains == k.contains
                            && s.bits() & k.excludes == 0
                            && k.symmetries.iter().flatten().all(|&g| s.permuted(g) == *s)
                    })
                    .collect();
                match options[..] {
                    [only] => {
                        self.k(l).set_exact(only);
                        (format!("f({l}) = {only}"), "non-emptiness", Ok(()))
                    }
                    _ => (
                        format!("f({l}) is determined"),
                        "non-emptiness",
                        Err(format!("{} candidate sets remain", options.len())),
                    ),
                }
            }
            Step::Contradiction(l, x) => {
                let x = self.c(x);
                let claim = format!("{x} ∈ f({l}) and {x} ∉ f({l})");
                let k = self.known.get(l).copied().unwrap_or_default();
                let r = if k.contains & k.excludes & bit(x) != 0 {
                    Ok(())
                } else {
                    Err(format!(
                        "known: f({l}) ⊇ {}, excludes {}",
                        names(k.contains),
                        names(k.excludes)
                    ))
                };
                (claim, "contradiction", r)
            }
        }
    }

    fn add_symmetry(&mut self, l: Label, g: Permutation) -> Result<(), String> {
        if self.p(l).permuted(g) != self.p(l) {
            return Err(format!("{} does not fix {l} = {}", g, self.p(l)));
        }
        let k = self.k(l);
        match k.symmetries.iter_mut().find(|s| s.is_none()) {
            Some(slot) => {
                *slot = Some(g);
                Ok(())
            }
            None => Err("too many symmetries recorded".to_string()),
        }
    }
}

/// Replays a proof script. When the proof assumes a candidate without loss
/// of generality, every choice of that candidate is replayed with the
/// script relabeled accordingly.
pub fn proof_replay(id: ProofScript) -> ReplayReport {
    let s = script(id);
    let rotations: Vec<(Option<Candidate>, Permutation)> = match s.wlog {
        Some(_) => Candidate::ALL
            .into_iter()
            .map(|x| {
                // the rotation taking a to x
                let shift = x.index();
                let images = [0, 1, 2].map(|i| Candidate::from_index((i + shift) % 3));
                (Some(x), Permutation::from_images(images).unwrap())
            })
            .collect(),
        None => vec![(None, Permutation::IDENTITY)],
    };
    let mut cases = vec![];
    for (assumed, sigma) in rotations {
        let relabeled: BTreeMap<Label, Profile> = s
            .profiles
            .iter()
            .map(|(l, p)| (*l, p.permuted(sigma)))
            .collect();
        let mut checker = Checker {
            sigma,
            profiles: &relabeled,
            known: BTreeMap::new(),
        };
        let mut steps = vec![];
        for step in &s.steps {
            let (claim, justification, r) = checker.run(*step);
            steps.push(StepRecord {
                claim,
                justification,
                failure: r.err(),
            });
        }
        let contradiction = matches!(s.steps.last(), Some(Step::Contradiction(..)))
            && steps.last().is_some_and(StepRecord::passed);
        cases.push(CaseRecord {
            assumed,
            steps,
            contradiction,
        });
    }
    ReplayReport {
        script: id,
        profiles: s
            .profiles
            .iter()
            .map(|(l, p)| (l.to_string(), *p))
            .collect(),
        cases,
    }
}
