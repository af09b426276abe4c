//! A small DPLL solver (two watched literals, chronological backtracking).
//! Best-effort: adequate for the neutral instances of a few voters, not for
//! the large anonymous ones.

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// A model, indexed by variable (slot 0 unused).
    Sat(Vec<bool>),
    Unsat,
    /// The decision budget ran out.
    Unknown,
}

pub const DEFAULT_DECISION_BUDGET: u64 = 10_000_000;

fn code(lit: i32) -> usize {
    2 * lit.unsigned_abs() as usize + (lit < 0) as usize
}

struct Solver<'a> {
    clauses: &'a [Vec<i32>],
    /// Watched literal positions per clause.
    watched: Vec<[usize; 2]>,
    watches: Vec<Vec<usize>>,
    value: Vec<i8>,
    trail: Vec<i32>,
    head: usize,
}

impl Solver<'_> {
    fn lit_value(&self, lit: i32) -> i8 {
        let v = self.value[lit.unsigned_abs() as usize];
        if lit > 0 {
            v
        } else {
            -v
        }
    }

    fn assign(&mut self, lit: i32) {
        self.value[lit.unsigned_abs() as usize] = if lit > 0 { 1 } else { -1 };
        self.trail.push(lit);
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let lit = self.trail.pop().unwrap();
            self.value[lit.unsigned_abs() as usize] = 0;
        }
        self.head = self.head.min(len);
    }

    /// Unit propagation; `false` on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let clauses = self.clauses;
            let falsified = -self.trail[self.head];
            self.head += 1;
            let mut list = std::mem::take(&mut self.watches[code(falsified)]);
            let mut i = 0;
            let mut ok = true;
            while i < list.len() {
                let ci = list[i];
                let clause = &clauses[ci];
                let [w0, w1] = self.watched[ci];
                let (mine, other) = if clause[w0] == falsified { (0, w1) } else { (1, w0) };
                if self.lit_value(clause[other]) == 1 {
                    i += 1;
                    continue;
                }
                let replacement = (0..clause.len())
                    .find(|&k| k != w0 && k != w1 && self.lit_value(clause[k]) != -1);
                if let Some(k) = replacement {
                    self.watched[ci][mine] = k;
                    self.watches[code(clause[k])].push(ci);
                    list.swap_remove(i);
                    continue;
                }
                match self.lit_value(clause[other]) {
                    0 => {
                        let unit = clause[other];
                        self.assign(unit);
                    }
                    _ => {
                        ok = false;
                        break;
                    }
                }
                i += 1;
            }
            self.watches[code(falsified)].extend(list.drain(..));
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Decides satisfiability of `clauses` over variables `1..=num_vars`.
pub fn solve(num_vars: usize, clauses: &[Vec<i32>], budget: u64) -> SolveOutcome {
    let mut s = Solver {
        clauses,
        watched: vec![[0, 0]; clauses.len()],
        watches: vec![vec![]; 2 * num_vars + 2],
        value: vec![0; num_vars + 1],
        trail: vec![],
        head: 0,
    };
    let mut occurrences = vec![0u64; num_vars + 1];
    let mut units = vec![];
    for (ci, c) in clauses.iter().enumerate() {
        for l in c {
            occurrences[l.unsigned_abs() as usize] += 1;
        }
        match c.len() {
            0 => return SolveOutcome::Unsat,
            1 => units.push(c[0]),
            _ => {
                s.watched[ci] = [0, 1];
                s.watches[code(c[0])].push(ci);
                s.watches[code(c[1])].push(ci);
            }
        }
    }
    for u in units {
        match s.lit_value(u) {
            0 => s.assign(u),
            -1 => return SolveOutcome::Unsat,
            _ => {}
        }
    }
    if !s.propagate() {
        return SolveOutcome::Unsat;
    }
    let mut order: Vec<usize> = (1..=num_vars).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(occurrences[v]));

    // (trail length before the decision, decision literal, already flipped)
    let mut decisions: Vec<(usize, i32, bool)> = vec![];
    let mut spent = 0u64;
    loop {
        let next = order.iter().copied().find(|&v| s.value[v] == 0);
        let Some(var) = next else {
            return SolveOutcome::Sat(s.value.iter().map(|&v| v == 1).collect());
        };
        spent += 1;
        if spent > budget {
            return SolveOutcome::Unknown;
        }
        let lit = var as i32;
        decisions.push((s.trail.len(), lit, false));
        s.assign(lit);
        while !s.propagate() {
            loop {
                match decisions.pop() {
                    None => return SolveOutcome::Unsat,
                    Some((_, _, true)) => continue,
                    Some((len, lit, false)) => {
                        s.undo_to(len);
                        decisions.push((len, -lit, true));
                        s.assign(-lit);
                        break;
                    }
                }
            }
        }
    }
}
