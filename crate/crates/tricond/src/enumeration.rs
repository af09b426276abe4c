//! Exhaustive iteration over anonymous profiles.
//!
//! Profiles with `n` voters are the compositions of `n` into six parts, visited
//! in colexicographic order: `(c5, c4, c3, c2, c1)` increases lexicographically
//! and `c0` takes the remainder. The first profile is `n·abc`, the last `n·cba`.

use std::fmt;
use std::ops::Range;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::profile::{Permutation, Profile, MarginGraph, ORDER_SIGNS};
use crate::rules::{evaluate, evaluate_margins, RuleError, RuleId};

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "TRICOND_WORKERS";

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of anonymous profiles with `n` voters, `C(n+5, 5)`.
pub fn count_profiles(n: u64) -> u64 {
    binomial(n + 5, 5)
}

/// Profiles with at most `budget` voters spread over `slots` orders.
fn count_bounded(slots: u64, budget: u64) -> u64 {
    binomial(budget + slots, slots)
}

/// The profile with colex rank `k` among those with `n` voters.
pub fn unrank(n: u64, mut k: u64) -> Profile {
    assert!(k < count_profiles(n), "rank {k} out of range for n = {n}");
    let mut counts = [0u64; 6];
    let mut budget = n;
    for j in (1..6).rev() {
        let mut v = 0;
        loop {
            let block = count_bounded(j as u64 - 1, budget - v);
            if k < block {
                break;
            }
            k -= block;
            v += 1;
        }
        counts[j] = v;
        budget -= v;
    }
    counts[0] = budget;
    Profile::new(counts)
}

/// Colex rank of `profile` among profiles with the same number of voters.
pub fn rank(profile: &Profile) -> u64 {
    let counts = profile.counts();
    let mut budget = profile.voters();
    let mut k = 0;
    for j in (1..6).rev() {
        for v in 0..counts[j] {
            k += count_bounded(j as u64 - 1, budget - v);
        }
        budget -= counts[j];
    }
    k
}

/// Walks the profiles of one electorate size, keeping the margins in step.
#[derive(Clone, Debug)]
pub struct ProfileCursor {
    counts: [u64; 6],
    margins: [i64; 3],
    remaining: u64,
}

impl ProfileCursor {
    /// All profiles with `n` voters.
    pub fn new(n: u64) -> ProfileCursor {
        ProfileCursor::range(n, 0..count_profiles(n))
    }

    /// The profiles with colex ranks in `ranks`.
    pub fn range(n: u64, ranks: Range<u64>) -> ProfileCursor {
        let len = ranks.end.saturating_sub(ranks.start);
        let start = if len == 0 {
            Profile::new([n, 0, 0, 0, 0, 0])
        } else {
            unrank(n, ranks.start)
        };
        ProfileCursor {
            counts: start.counts(),
            margins: start.margins().as_array(),
            remaining: len,
        }
    }

    /// Advances to the next profile and returns it with its margins.
    #[inline]
    pub fn next_with_margins(&mut self) -> Option<(Profile, MarginGraph)> {
        if self.remaining == 0 {
            return None;
        }
        let out = (
            Profile::new(self.counts),
            MarginGraph::new(self.margins[0], self.margins[1], self.margins[2]),
        );
        self.remaining -= 1;
        if self.remaining > 0 {
            self.step();
        }
        Some(out)
    }

    #[inline]
    fn step(&mut self) {
        let i = self.counts[..5]
            .iter()
            .position(|&c| c > 0)
            .expect("cursor stepped past the last profile");
        let t = self.counts[i];
        self.counts[i] = 0;
        self.counts[0] += t - 1;
        self.counts[i + 1] += 1;
        let t = t as i64;
        for e in 0..3 {
            self.margins[e] += (t - 1) * ORDER_SIGNS[0][e] - t * ORDER_SIGNS[i][e]
                + ORDER_SIGNS[i + 1][e];
        }
    }
}

impl Iterator for ProfileCursor {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        self.next_with_margins().map(|(p, _)| p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

/// All profiles with exactly `n` voters, in colex order.
pub fn enumerate(n: u64) -> ProfileCursor {
    ProfileCursor::new(n)
}

/// All non-empty profiles with at most `bound` voters, by size then colex order.
pub fn profiles_up_to(bound: u64) -> Vec<Profile> {
    (1..=bound).flat_map(enumerate).collect()
}

/// Splits `0..total` into `k` contiguous ranges of near-equal length.
pub fn ranges(total: u64, k: usize) -> Vec<Range<u64>> {
    let k = (k.max(1) as u64).min(total.max(1));
    (0..k)
        .map(|i| (total * i / k)..(total * (i + 1) / k))
        .collect()
}

/// Worker count from the environment, else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

fn with_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
        .install(job)
}

/// Number of profiles where a rule selects at least two candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrequencyRow {
    pub n: u64,
    pub rule: RuleId,
    /// Irresolute profiles, counting every profile.
    pub irresolute: u64,
    /// Irresolute profiles whose margins are all zero.
    pub all_tied: u64,
    pub total: u64,
}

/// How profiles with all margins zero enter the irresoluteness count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieConvention {
    /// Every profile counts.
    Exact,
    /// The convention of the published curves: all-tied profiles are left
    /// out of the count for every rule except Black's.
    Plotted,
}

impl FrequencyRow {
    pub fn count(&self, convention: TieConvention) -> u64 {
        match convention {
            TieConvention::Exact => self.irresolute,
            TieConvention::Plotted if self.rule == RuleId::Black => self.irresolute,
            TieConvention::Plotted => self.irresolute - self.all_tied,
        }
    }

    pub fn fraction(&self, convention: TieConvention) -> Ratio<u64> {
        Ratio::new(self.count(convention), self.total)
    }

    pub fn fraction_f64(&self, convention: TieConvention) -> f64 {
        self.count(convention) as f64 / self.total as f64
    }

    pub const CSV_HEADER: &'static str = "n,rule,irresolute,total,fraction";

    pub fn csv_line(&self, convention: TieConvention) -> String {
        let k = self.count(convention);
        format!(
            "{},{},{},{},{}",
            self.n,
            self.rule,
            k,
            self.total,
            decimal6(k, self.total)
        )
    }
}

impl fmt::Display for FrequencyRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.csv_line(TieConvention::Exact))
    }
}

/// `num / den` with six decimals, rounding half to even.
pub fn decimal6(num: u64, den: u64) -> String {
    let scaled = num as u128 * 1_000_000;
    let den = den as u128;
    let (mut q, r) = (scaled / den, scaled % den);
    if 2 * r > den || (2 * r == den && q % 2 == 1) {
        q += 1;
    }
    format!("{}.{:06}", q / 1_000_000, q % 1_000_000)
}

/// Exact irresoluteness count over all profiles with `n` voters.
pub fn irresoluteness(rule: &RuleId, n: u64) -> Result<FrequencyRow, RuleError> {
    irresoluteness_with_workers(rule, n, default_workers())
}

pub fn irresoluteness_with_workers(
    rule: &RuleId,
    n: u64,
    workers: usize,
) -> Result<FrequencyRow, RuleError> {
    if n == 0 {
        return Err(RuleError::EmptyProfile);
    }
    let total = count_profiles(n);
    let chunks = ranges(total, workers * 8);
    let pairwise = evaluate_margins(rule, &MarginGraph::ZERO).is_some();
    let counts: Vec<Result<(u64, u64), RuleError>> = with_pool(workers, || {
        chunks
            .into_par_iter()
            .map(|r| {
                let mut cursor = ProfileCursor::range(n, r);
                let (mut hits, mut tied) = (0, 0);
                while let Some((p, m)) = cursor.next_with_margins() {
                    let out = if pairwise {
                        evaluate_margins(rule, &m).unwrap()
                    } else {
                        evaluate(rule, &p)?
                    };
                    if out.len() >= 2 {
                        hits += 1;
                        tied += (m == MarginGraph::ZERO) as u64;
                    }
                }
                Ok((hits, tied))
            })
            .collect()
    });
    let (mut irresolute, mut all_tied) = (0, 0);
    for c in counts {
        let (h, t) = c?;
        irresolute += h;
        all_tied += t;
    }
    Ok(FrequencyRow {
        n,
        rule: *rule,
        irresolute,
        all_tied,
        total,
    })
}

/// Whether `profile` is the colex-smallest member of its orbit under
/// candidate permutations.
pub fn is_orbit_representative(profile: &Profile) -> bool {
    let r = rank(profile);
    Permutation::ALL
        .iter()
        .all(|&s| rank(&profile.permuted(s)) >= r)
}

/// Size of the orbit of `profile` under candidate permutations.
pub fn orbit_size(profile: &Profile) -> u64 {
    6 / crate::profile::stabilizer(profile).len() as u64
}

/// Irresoluteness counted on orbit representatives only and weighted by
/// orbit size. Agrees with [`irresoluteness`] for neutral rules.
pub fn irresoluteness_by_orbits(rule: &RuleId, n: u64) -> Result<FrequencyRow, RuleError> {
    if n == 0 {
        return Err(RuleError::EmptyProfile);
    }
    let reps: Vec<Profile> = enumerate(n).filter(is_orbit_representative).collect();
    let weights: Vec<Result<(u64, u64), RuleError>> = reps
        .par_iter()
        .map(|p| {
            let w = ((evaluate(rule, p)?.len() >= 2) as u64) * orbit_size(p);
            Ok((w, if p.margins() == MarginGraph::ZERO { w } else { 0 }))
        })
        .collect();
    let (mut irresolute, mut all_tied) = (0, 0);
    for w in weights {
        let (h, t) = w?;
        irresolute += h;
        all_tied += t;
    }
    Ok(FrequencyRow {
        n,
        rule: *rule,
        irresolute,
        all_tied,
        total: count_profiles(n),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    First,
    All,
}

/// Profiles with `1..=bound` voters satisfying `predicate`, in enumeration
/// order. `First` returns at most the earliest one.
pub fn search<F>(predicate: F, bound: u64, mode: SearchMode) -> Vec<Profile>
where
    F: Fn(&Profile) -> bool + Sync,
{
    let mut found = vec![];
    for n in 1..=bound {
        let total = count_profiles(n);
        let per_chunk: Vec<Vec<Profile>> = ranges(total, default_workers() * 4)
            .into_par_iter()
            .map(|r| {
                let mut hits = vec![];
                for p in ProfileCursor::range(n, r) {
                    if predicate(&p) {
                        hits.push(p);
                        if mode == SearchMode::First {
                            break;
                        }
                    }
                }
                hits
            })
            .collect();
        found.extend(per_chunk.into_iter().flatten());
        if mode == SearchMode::First && !found.is_empty() {
            found.truncate(1);
            break;
        }
    }
    found
}
