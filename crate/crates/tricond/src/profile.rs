//! Candidates, linear orders, anonymous profiles and their margin graphs.
//!
//! Everything here is specific to exactly three candidates `a`, `b`, `c`.
//! A profile is stored anonymously as six counts, one per linear order, in
//! the fixed index order `abc, acb, bac, bca, cab, cba`.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("empty profile string")]
    Empty,
    #[error("malformed term `{term}`: {reason}")]
    BadTerm { term: String, reason: &'static str },
    #[error("copy factor must be at least 1")]
    ZeroFold,
    #[error("margins ({ab}, {ac}, {bc}) do not share a parity")]
    MixedParity { ab: i64, ac: i64, bc: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Candidate {
    A = 0,
    B = 1,
    C = 2,
}

impl Candidate {
    pub const ALL: [Candidate; 3] = [Candidate::A, Candidate::B, Candidate::C];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Candidate {
        Candidate::ALL[i]
    }

    pub fn letter(self) -> char {
        (b'a' + self as u8) as char
    }

    pub fn from_letter(c: char) -> Option<Candidate> {
        match c.to_ascii_lowercase() {
            'a' => Some(Candidate::A),
            'b' => Some(Candidate::B),
            'c' => Some(Candidate::C),
            _ => None,
        }
    }

    /// The candidate that is neither `self` nor `other`.
    pub fn third(self, other: Candidate) -> Candidate {
        debug_assert_ne!(self, other);
        Candidate::from_index(3 - self.index() - other.index())
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A bijection on the candidates, stored as the images of `a`, `b`, `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation([Candidate; 3]);

impl Permutation {
    /// All six permutations, in lexicographic order of their image arrays.
    pub const ALL: [Permutation; 6] = {
        use Candidate::*;
        [
            Permutation([A, B, C]),
            Permutation([A, C, B]),
            Permutation([B, A, C]),
            Permutation([B, C, A]),
            Permutation([C, A, B]),
            Permutation([C, B, A]),
        ]
    };

    pub const IDENTITY: Permutation = Permutation::ALL[0];

    /// Builds the permutation `a -> images[0]`, `b -> images[1]`, `c -> images[2]`.
    pub fn from_images(images: [Candidate; 3]) -> Option<Permutation> {
        let mut seen = [false; 3];
        for c in images {
            if std::mem::replace(&mut seen[c.index()], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    pub fn images(self) -> [Candidate; 3] {
        self.0
    }

    #[inline]
    pub fn apply(self, c: Candidate) -> Candidate {
        self.0[c.index()]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Permutation) -> Permutation {
        Permutation(Candidate::ALL.map(|c| self.apply(other.apply(c))))
    }

    pub fn inverse(self) -> Permutation {
        let mut inv = [Candidate::A; 3];
        for c in Candidate::ALL {
            inv[self.apply(c).index()] = c;
        }
        Permutation(inv)
    }

    pub fn is_identity(self) -> bool {
        self == Permutation::IDENTITY
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a->{} b->{} c->{}", self.0[0], self.0[1], self.0[2])
    }
}

/// A strict ranking of the three candidates, identified by its canonical index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearOrder(u8);

const RANKINGS: [[Candidate; 3]; 6] = {
    use Candidate::*;
    [
        [A, B, C],
        [A, C, B],
        [B, A, C],
        [B, C, A],
        [C, A, B],
        [C, B, A],
    ]
};

/// Contribution of one voter with each order to `(m_ab, m_ac, m_bc)`.
pub(crate) const ORDER_SIGNS: [[i64; 3]; 6] = [
    [1, 1, 1],
    [1, 1, -1],
    [-1, 1, 1],
    [-1, -1, 1],
    [1, -1, -1],
    [-1, -1, -1],
];

impl LinearOrder {
    pub const ALL: [LinearOrder; 6] = [
        LinearOrder(0),
        LinearOrder(1),
        LinearOrder(2),
        LinearOrder(3),
        LinearOrder(4),
        LinearOrder(5),
    ];

    pub fn from_index(i: usize) -> LinearOrder {
        assert!(i < 6, "linear order index out of range: {i}");
        LinearOrder(i as u8)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_ranking(ranking: [Candidate; 3]) -> Option<LinearOrder> {
        RANKINGS
            .iter()
            .position(|r| *r == ranking)
            .map(|i| LinearOrder(i as u8))
    }

    #[inline]
    pub fn ranking(self) -> [Candidate; 3] {
        RANKINGS[self.index()]
    }

    pub fn top(self) -> Candidate {
        self.ranking()[0]
    }

    pub fn mid(self) -> Candidate {
        self.ranking()[1]
    }

    pub fn bottom(self) -> Candidate {
        self.ranking()[2]
    }

    /// Rank position of `c`, 0 for the top.
    pub fn position(self, c: Candidate) -> usize {
        self.ranking().iter().position(|&x| x == c).unwrap()
    }

    pub fn prefers(self, x: Candidate, y: Candidate) -> bool {
        self.position(x) < self.position(y)
    }

    pub fn permuted(self, sigma: Permutation) -> LinearOrder {
        LinearOrder::from_ranking(self.ranking().map(|c| sigma.apply(c))).unwrap()
    }

    /// The order obtained by swapping the candidates at positions `pos` and `pos + 1`.
    pub fn swapped(self, pos: usize) -> LinearOrder {
        let mut r = self.ranking();
        r.swap(pos, pos + 1);
        LinearOrder::from_ranking(r).unwrap()
    }
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.ranking() {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for LinearOrder {
    type Err = ProfileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_order(s.trim()).ok_or_else(|| ProfileError::BadTerm {
            term: s.to_string(),
            reason: "expected a permutation of the letters a, b, c",
        })
    }
}

fn parse_order(s: &str) -> Option<LinearOrder> {
    let letters: Vec<char> = s.chars().collect();
    if letters.len() != 3 {
        return None;
    }
    let mut ranking = [Candidate::A; 3];
    for (slot, ch) in ranking.iter_mut().zip(letters) {
        *slot = Candidate::from_letter(ch)?;
    }
    LinearOrder::from_ranking(ranking)
}

/// A non-empty subset of the candidates, stored as a bit mask (`a = 1`, `b = 2`, `c = 4`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChoiceSet(u8);

impl ChoiceSet {
    pub const ALL: ChoiceSet = ChoiceSet(0b111);

    /// Every non-empty subset, in increasing bit-mask order.
    pub fn every() -> impl Iterator<Item = ChoiceSet> {
        (1u8..8).map(ChoiceSet)
    }

    pub fn from_bits(bits: u8) -> Option<ChoiceSet> {
        (bits != 0 && bits < 8).then_some(ChoiceSet(bits))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn singleton(c: Candidate) -> ChoiceSet {
        ChoiceSet(1 << c.index())
    }

    pub fn from_candidates<I: IntoIterator<Item = Candidate>>(it: I) -> Option<ChoiceSet> {
        ChoiceSet::from_bits(it.into_iter().fold(0, |acc, c| acc | (1 << c.index())))
    }

    #[inline]
    pub fn contains(self, c: Candidate) -> bool {
        self.0 & (1 << c.index()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Always false; present for API symmetry with collections.
    pub fn is_empty(self) -> bool {
        false
    }

    pub fn is_singleton(self) -> bool {
        self.len() == 1
    }

    pub fn only(self) -> Option<Candidate> {
        self.is_singleton()
            .then(|| Candidate::from_index(self.0.trailing_zeros() as usize))
    }

    pub fn iter(self) -> impl Iterator<Item = Candidate> {
        Candidate::ALL.into_iter().filter(move |&c| self.contains(c))
    }

    pub fn is_subset(self, other: ChoiceSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: ChoiceSet) -> Option<ChoiceSet> {
        ChoiceSet::from_bits(self.0 & other.0)
    }

    pub fn union(self, other: ChoiceSet) -> ChoiceSet {
        ChoiceSet(self.0 | other.0)
    }

    pub fn difference(self, other: ChoiceSet) -> Option<ChoiceSet> {
        ChoiceSet::from_bits(self.0 & !other.0)
    }

    pub fn permuted(self, sigma: Permutation) -> ChoiceSet {
        ChoiceSet::from_candidates(self.iter().map(|c| sigma.apply(c))).unwrap()
    }

    /// The member ranked highest by `order`.
    pub fn best_for(self, order: LinearOrder) -> Candidate {
        order.ranking().into_iter().find(|&c| self.contains(c)).unwrap()
    }
}

impl fmt::Display for ChoiceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for ChoiceSet {
    type Err = ProfileError;

    /// Accepts `{a,c}`, `a,c` or `ac`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ProfileError::BadTerm {
            term: s.to_string(),
            reason: "expected a non-empty set of candidates",
        };
        let mut bits = 0u8;
        for ch in s.chars().filter(|c| !matches!(c, '{' | '}' | ',' | ' ')) {
            let c = Candidate::from_letter(ch).ok_or_else(bad)?;
            bits |= 1 << c.index();
        }
        ChoiceSet::from_bits(bits).ok_or_else(bad)
    }
}

/// An anonymous profile: the number of voters holding each linear order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile {
    counts: [u64; 6],
}

impl Profile {
    pub const fn new(counts: [u64; 6]) -> Profile {
        Profile { counts }
    }

    pub const fn empty() -> Profile {
        Profile { counts: [0; 6] }
    }

    pub fn single(order: LinearOrder) -> Profile {
        let mut p = Profile::empty();
        p.counts[order.index()] = 1;
        p
    }

    /// One voter holding each of the six orders.
    pub const fn full_block() -> Profile {
        Profile { counts: [1; 6] }
    }

    pub fn counts(&self) -> [u64; 6] {
        self.counts
    }

    pub fn count(&self, order: LinearOrder) -> u64 {
        self.counts[order.index()]
    }

    pub fn voters(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.voters() == 0
    }

    pub fn add_voters(&mut self, order: LinearOrder, k: u64) {
        self.counts[order.index()] += k;
    }

    pub fn with_voter(mut self, order: LinearOrder) -> Profile {
        self.add_voters(order, 1);
        self
    }

    /// Removes one voter with `order`, or returns `None` if there is none.
    pub fn without_voter(mut self, order: LinearOrder) -> Option<Profile> {
        let slot = &mut self.counts[order.index()];
        *slot = slot.checked_sub(1)?;
        Some(self)
    }

    /// Orders that occur at least once, with their counts.
    pub fn support(&self) -> impl Iterator<Item = (LinearOrder, u64)> + '_ {
        LinearOrder::ALL
            .into_iter()
            .map(|o| (o, self.count(o)))
            .filter(|&(_, k)| k > 0)
    }

    pub fn t_fold(&self, t: u64) -> Result<Profile, ProfileError> {
        if t == 0 {
            return Err(ProfileError::ZeroFold);
        }
        Ok(Profile {
            counts: self.counts.map(|k| k * t),
        })
    }

    pub fn permuted(&self, sigma: Permutation) -> Profile {
        let mut out = Profile::empty();
        for (o, k) in self.support() {
            out.add_voters(o.permuted(sigma), k);
        }
        out
    }

    pub fn margins(&self) -> MarginGraph {
        MarginGraph::of(self)
    }

    /// Voters ranking `c` first, second and third.
    pub fn rank_counts(&self, c: Candidate) -> [u64; 3] {
        let mut out = [0; 3];
        for (o, k) in self.support() {
            out[o.position(c)] += k;
        }
        out
    }
}

impl Add for Profile {
    type Output = Profile;

    fn add(mut self, rhs: Profile) -> Profile {
        self += rhs;
        self
    }
}

impl AddAssign for Profile {
    fn add_assign(&mut self, rhs: Profile) {
        for (x, y) in self.counts.iter_mut().zip(rhs.counts) {
            *x += y;
        }
    }
}

impl fmt::Display for Profile {
    /// Terms in canonical order with explicit counts; the empty profile prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        for (i, (o, k)) in self.support().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{k}{o}")?;
        }
        Ok(())
    }
}

impl FromStr for Profile {
    type Err = ProfileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_profile(s)
    }
}

/// Parses `term ('+' term)*` where a term is an optional positive count
/// followed by a permutation of `abc`. Case and whitespace are ignored.
pub fn parse_profile(text: &str) -> Result<Profile, ProfileError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(ProfileError::Empty);
    }
    let mut profile = Profile::empty();
    for term in compact.split('+') {
        let bad = |reason| ProfileError::BadTerm {
            term: term.to_string(),
            reason,
        };
        if term.is_empty() {
            return Err(bad("empty term"));
        }
        let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
        let (num, letters) = term.split_at(digits);
        let count = if num.is_empty() {
            1
        } else {
            num.parse::<u64>().map_err(|_| bad("count out of range"))?
        };
        if count == 0 {
            return Err(bad("count must be positive"));
        }
        let order =
            parse_order(letters).ok_or_else(|| bad("expected a permutation of the letters a, b, c"))?;
        profile.add_voters(order, count);
    }
    Ok(profile)
}

/// The three pairwise majority margins `m_ab`, `m_ac`, `m_bc`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct MarginGraph {
    pub ab: i64,
    pub ac: i64,
    pub bc: i64,
}

impl MarginGraph {
    pub const ZERO: MarginGraph = MarginGraph { ab: 0, ac: 0, bc: 0 };

    pub const fn new(ab: i64, ac: i64, bc: i64) -> MarginGraph {
        MarginGraph { ab, ac, bc }
    }

    /// Builds a graph from the cyclic margins `m_ab`, `m_bc`, `m_ca`.
    pub const fn cyclic(ab: i64, bc: i64, ca: i64) -> MarginGraph {
        MarginGraph { ab, ac: -ca, bc }
    }

    pub fn of(profile: &Profile) -> MarginGraph {
        let mut m = [0i64; 3];
        for (o, k) in profile.counts.iter().enumerate() {
            let k = *k as i64;
            for (acc, s) in m.iter_mut().zip(ORDER_SIGNS[o]) {
                *acc += s * k;
            }
        }
        MarginGraph::new(m[0], m[1], m[2])
    }

    /// `m_xy`.
    #[inline]
    pub fn margin(&self, x: Candidate, y: Candidate) -> i64 {
        use Candidate::*;
        match (x, y) {
            (A, B) => self.ab,
            (B, A) => -self.ab,
            (A, C) => self.ac,
            (C, A) => -self.ac,
            (B, C) => self.bc,
            (C, B) => -self.bc,
            _ => 0,
        }
    }

    /// Sets `m_xy` (and implicitly `m_yx`).
    pub fn set_margin(&mut self, x: Candidate, y: Candidate, value: i64) {
        use Candidate::*;
        match (x, y) {
            (A, B) => self.ab = value,
            (B, A) => self.ab = -value,
            (A, C) => self.ac = value,
            (C, A) => self.ac = -value,
            (B, C) => self.bc = value,
            (C, B) => self.bc = -value,
            _ => panic!("no margin between a candidate and itself"),
        }
    }

    pub fn as_array(&self) -> [i64; 3] {
        [self.ab, self.ac, self.bc]
    }

    /// The common parity of the margins, or `None` if they disagree.
    pub fn parity(&self) -> Option<i64> {
        let p = self.ab.rem_euclid(2);
        (self.ac.rem_euclid(2) == p && self.bc.rem_euclid(2) == p).then_some(p)
    }

    pub fn scaled(&self, t: i64) -> MarginGraph {
        MarginGraph::new(self.ab * t, self.ac * t, self.bc * t)
    }

    /// The graph with every candidate `x` renamed to `sigma(x)`.
    pub fn permuted(&self, sigma: Permutation) -> MarginGraph {
        let mut out = MarginGraph::ZERO;
        for (x, y) in [
            (Candidate::A, Candidate::B),
            (Candidate::A, Candidate::C),
            (Candidate::B, Candidate::C),
        ] {
            out.set_margin(sigma.apply(x), sigma.apply(y), self.margin(x, y));
        }
        out
    }

    /// `β_x = Σ_y m_xy` for each candidate.
    pub fn borda_scores(&self) -> [i64; 3] {
        [
            self.ab + self.ac,
            -self.ab + self.bc,
            -self.ac - self.bc,
        ]
    }

    /// The pair of margins of `x` against the other two candidates, in candidate order.
    pub fn margins_of(&self, x: Candidate) -> [i64; 2] {
        let mut it = Candidate::ALL.into_iter().filter(|&y| y != x);
        let (y, z) = (it.next().unwrap(), it.next().unwrap());
        [self.margin(x, y), self.margin(x, z)]
    }

    pub fn condorcet_winner(&self) -> Option<Candidate> {
        Candidate::ALL
            .into_iter()
            .find(|&x| self.margins_of(x).iter().all(|&m| m > 0))
    }

    /// Candidates that lose to nobody and beat somebody; `None` when there are none.
    pub fn intermediate_condorcet_winners(&self) -> Option<ChoiceSet> {
        ChoiceSet::from_candidates(Candidate::ALL.into_iter().filter(|&x| {
            let ms = self.margins_of(x);
            ms.iter().all(|&m| m >= 0) && ms.iter().any(|&m| m > 0)
        }))
    }

    pub fn has_zero_margin(&self) -> bool {
        self.ab == 0 || self.ac == 0 || self.bc == 0
    }

    pub fn classify(&self) -> OrdinalClass {
        classify(self)
    }
}

impl Add for MarginGraph {
    type Output = MarginGraph;

    fn add(self, rhs: MarginGraph) -> MarginGraph {
        MarginGraph::new(self.ab + rhs.ab, self.ac + rhs.ac, self.bc + rhs.bc)
    }
}

impl Sub for MarginGraph {
    type Output = MarginGraph;

    fn sub(self, rhs: MarginGraph) -> MarginGraph {
        self + (-rhs)
    }
}

impl Neg for MarginGraph {
    type Output = MarginGraph;

    fn neg(self) -> MarginGraph {
        self.scaled(-1)
    }
}

impl fmt::Display for MarginGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m_ab={} m_ac={} m_bc={}", self.ab, self.ac, self.bc)
    }
}

/// The twelve ordinal margin graphs without a Condorcet winner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphKind {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
    L,
}

impl GraphKind {
    pub const ALL: [GraphKind; 12] = [
        GraphKind::A,
        GraphKind::B,
        GraphKind::C,
        GraphKind::D,
        GraphKind::E,
        GraphKind::F,
        GraphKind::G,
        GraphKind::H,
        GraphKind::I,
        GraphKind::J,
        GraphKind::K,
        GraphKind::L,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        (b'A' + self as u8) as char
    }

    /// Whether `m` already has this kind's canonical margin-order pattern
    /// (no relabeling applied).
    pub fn matches(self, m: &MarginGraph) -> bool {
        let ab = m.ab;
        let bc = m.bc;
        let ca = -m.ac;
        let cb = -m.bc;
        match self {
            GraphKind::A => ab == bc && bc == ca && ca > 0,
            GraphKind::B => ab == 0 && bc == 0 && ca == 0,
            GraphKind::C => ab > bc && bc == ca && ca > 0,
            GraphKind::D => ab > 0 && bc == 0 && ca == 0,
            GraphKind::E => ab == cb && cb > 0 && ca == 0,
            GraphKind::F => ab > cb && cb > 0 && ca == 0,
            GraphKind::G => ab > bc && bc > ca && ca > 0,
            GraphKind::H => ab > bc && bc > 0 && ca == 0,
            GraphKind::I => ab == bc && bc > ca && ca > 0,
            GraphKind::J => ab == bc && bc > 0 && ca == 0,
            GraphKind::K => bc > ab && ab > ca && ca > 0,
            GraphKind::L => bc > ab && ab > 0 && ca == 0,
        }
    }

    /// A small profile inducing this graph with the identity relabeling.
    pub fn representative(self) -> Profile {
        let counts = match self {
            GraphKind::A => [1, 0, 0, 1, 1, 0],
            GraphKind::B => [1, 1, 1, 1, 1, 1],
            GraphKind::C => [2, 0, 0, 1, 2, 0],
            GraphKind::D => [1, 0, 0, 0, 1, 0],
            GraphKind::E => [0, 1, 0, 0, 1, 0],
            GraphKind::F => [1, 1, 0, 0, 2, 0],
            GraphKind::G => [4, 0, 0, 2, 3, 0],
            GraphKind::H => [3, 0, 0, 1, 2, 0],
            GraphKind::I => [3, 0, 0, 2, 2, 0],
            GraphKind::J => [2, 0, 0, 1, 1, 0],
            GraphKind::K => [4, 0, 0, 3, 2, 0],
            GraphKind::L => [3, 0, 0, 2, 1, 0],
        };
        Profile::new(counts)
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph {}", self.letter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrdinalKind {
    CondorcetWinner(Candidate),
    Graph(GraphKind),
}

/// Ordinal class of a margin graph together with the relabeling that maps
/// the graph onto the canonical pattern of its kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrdinalClass {
    pub kind: OrdinalKind,
    pub relabel: Permutation,
}

pub fn classify(m: &MarginGraph) -> OrdinalClass {
    if let Some(w) = m.condorcet_winner() {
        return OrdinalClass {
            kind: OrdinalKind::CondorcetWinner(w),
            relabel: Permutation::IDENTITY,
        };
    }
    for sigma in Permutation::ALL {
        let image = m.permuted(sigma);
        if let Some(kind) = GraphKind::ALL.into_iter().find(|k| k.matches(&image)) {
            return OrdinalClass {
                kind: OrdinalKind::Graph(kind),
                relabel: sigma,
            };
        }
    }
    unreachable!("every margin graph without a Condorcet winner has one of twelve shapes: {m}")
}

/// Builds a profile whose margins equal `target` exactly.
///
/// Odd targets are seeded with the single voter that agrees with the most
/// edge signs; every remaining (even) discrepancy on a pair `x, y` is then
/// repaired with copies of the two-voter gadget `xyz + zxy`, which moves
/// `m_xy` by 2 and leaves the other margins unchanged.
pub fn mcgarvey(target: &MarginGraph) -> Result<Profile, ProfileError> {
    let parity = target.parity().ok_or(ProfileError::MixedParity {
        ab: target.ab,
        ac: target.ac,
        bc: target.bc,
    })?;
    let mut profile = Profile::empty();
    if parity == 1 {
        let t = target.as_array();
        let seed = LinearOrder::ALL
            .into_iter()
            .max_by_key(|o| {
                let agree = ORDER_SIGNS[o.index()]
                    .iter()
                    .zip(t)
                    .filter(|(s, m)| **s * *m > 0)
                    .count();
                // prefer the lowest index on ties
                (agree, std::cmp::Reverse(o.index()))
            })
            .unwrap();
        profile.add_voters(seed, 1);
    }
    let residual = *target - profile.margins();
    for (x, y) in [
        (Candidate::A, Candidate::B),
        (Candidate::A, Candidate::C),
        (Candidate::B, Candidate::C),
    ] {
        let d = residual.margin(x, y);
        let (hi, lo) = if d >= 0 { (x, y) } else { (y, x) };
        let z = hi.third(lo);
        let copies = d.unsigned_abs() / 2;
        profile.add_voters(LinearOrder::from_ranking([hi, lo, z]).unwrap(), copies);
        profile.add_voters(LinearOrder::from_ranking([z, hi, lo]).unwrap(), copies);
    }
    debug_assert_eq!(profile.margins(), *target);
    Ok(profile)
}

/// Permutations fixing `profile`.
pub fn stabilizer(profile: &Profile) -> Vec<Permutation> {
    Permutation::ALL
        .into_iter()
        .filter(|&s| profile.permuted(s) == *profile)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Candidate::*;

    fn p(s: &str) -> Profile {
        s.parse().unwrap()
    }

    #[test]
    fn parses_counted_sum_notation() {
        let prof = p("3abc+2bca+1bac+1cab");
        assert_eq!(prof.counts(), [3, 0, 1, 2, 1, 0]);
        assert_eq!(prof.voters(), 7);
        assert_eq!(p("abc").counts(), [1, 0, 0, 0, 0, 0]);
        assert_eq!(p("1abc+1ABC").counts(), [2, 0, 0, 0, 0, 0]);
        assert_eq!(p(" 2 abc + bca ").counts(), [2, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn parse_errors_name_the_term() {
        assert_eq!("".parse::<Profile>(), Err(ProfileError::Empty));
        assert_eq!("  ".parse::<Profile>(), Err(ProfileError::Empty));
        for (input, term) in [
            ("abd", "abd"),
            ("2abc+aab", "aab"),
            ("0abc", "0abc"),
            ("-1abc", "-1abc"),
            ("abc+", ""),
            ("ab", "ab"),
            ("abcd", "abcd"),
        ] {
            match input.parse::<Profile>() {
                Err(ProfileError::BadTerm { term: t, .. }) => assert_eq!(t, term, "{input}"),
                other => panic!("{input}: {other:?}"),
            }
        }
    }

    #[test]
    fn formatter_prints_counts_in_canonical_order() {
        assert_eq!(p("cab+3abc+2bca+bac").to_string(), "3abc+1bac+2bca+1cab");
        assert_eq!(Profile::empty().to_string(), "0");
    }

    #[test]
    fn margins_match_drawn_graphs() {
        let m = p("2abc+1bca+2cab").margins();
        assert_eq!((m.ab, m.bc, -m.ac), (3, 1, 1));
        assert_eq!(Profile::full_block().margins(), MarginGraph::ZERO);
        let m = p("2acb+1cab").margins();
        assert_eq!((m.ab, m.ac, -m.bc), (3, 1, 3));
        assert_eq!(Profile::empty().margins(), MarginGraph::ZERO);
    }

    #[test]
    fn condorcet_winner_cases() {
        assert_eq!(MarginGraph::new(3, 1, -3).condorcet_winner(), Some(A));
        assert_eq!(MarginGraph::ZERO.condorcet_winner(), None);
        assert_eq!(MarginGraph::cyclic(3, 1, 1).condorcet_winner(), None);
    }

    #[test]
    fn intermediate_winners() {
        // Graph F: a->b (heavy), c->b, a~c
        let f = GraphKind::F.representative().margins();
        assert_eq!(
            f.intermediate_condorcet_winners(),
            ChoiceSet::from_candidates([A, C])
        );
        assert_eq!(MarginGraph::ZERO.intermediate_condorcet_winners(), None);
        let cw = MarginGraph::new(3, 1, -3);
        assert_eq!(
            cw.intermediate_condorcet_winners(),
            Some(ChoiceSet::singleton(A))
        );
    }

    #[test]
    fn borda_scores_from_margins() {
        assert_eq!(MarginGraph::cyclic(3, 1, 1).borda_scores(), [2, -2, 0]);
        assert_eq!(MarginGraph::ZERO.borda_scores(), [0, 0, 0]);
        let cw = MarginGraph::new(3, 1, -3);
        assert!(cw.borda_scores()[0] > 0);
    }

    #[test]
    fn classify_examples() {
        let a = MarginGraph::cyclic(2, 2, 2).classify();
        assert_eq!(a.kind, OrdinalKind::Graph(GraphKind::A));
        assert!(a.relabel.is_identity());
        assert_eq!(
            p("3abc+2bca+4cab").margins().classify().kind,
            OrdinalKind::Graph(GraphKind::K)
        );
        assert_eq!(
            p("2abc+1bca+2cab").margins().classify().kind,
            OrdinalKind::Graph(GraphKind::C)
        );
        assert_eq!(
            p("2acb+1cab").margins().classify().kind,
            OrdinalKind::CondorcetWinner(A)
        );
    }

    #[test]
    fn representatives_are_canonical() {
        for kind in GraphKind::ALL {
            let m = kind.representative().margins();
            assert!(kind.matches(&m), "{kind}");
            let class = m.classify();
            assert_eq!(class.kind, OrdinalKind::Graph(kind));
            assert!(class.relabel.is_identity(), "{kind}");
        }
    }

    #[test]
    fn relabel_maps_onto_pattern() {
        // Graph C with the roles of the candidates rotated.
        let prof = p("2bca+1cab+2abc").permuted(Permutation::ALL[3]);
        let m = prof.margins();
        let class = m.classify();
        let OrdinalKind::Graph(kind) = class.kind else {
            panic!()
        };
        assert!(kind.matches(&m.permuted(class.relabel)));
    }

    #[test]
    fn mcgarvey_examples() {
        let t = MarginGraph::new(2, 0, 0);
        let prof = mcgarvey(&t).unwrap();
        assert_eq!(prof.margins(), t);
        assert_eq!(prof, p("abc+cab"));
        assert_eq!(mcgarvey(&MarginGraph::ZERO).unwrap().margins(), MarginGraph::ZERO);
        let fig = MarginGraph::cyclic(3, 1, 1);
        assert_eq!(mcgarvey(&fig).unwrap().margins(), fig);
        assert!(matches!(
            mcgarvey(&MarginGraph::new(1, 0, 1)),
            Err(ProfileError::MixedParity { .. })
        ));
    }

    #[test]
    fn mcgarvey_round_trip_exhaustive() {
        let mut checked = 0;
        for ab in -9..=9i64 {
            for ac in -9..=9i64 {
                for bc in -9..=9i64 {
                    let t = MarginGraph::new(ab, ac, bc);
                    if t.parity().is_none() {
                        assert!(mcgarvey(&t).is_err());
                        continue;
                    }
                    assert_eq!(mcgarvey(&t).unwrap().margins(), t);
                    checked += 1;
                }
            }
        }
        // 10^3 odd targets plus 9^3 even ones
        assert_eq!(checked, 1000 + 729);
    }

    #[test]
    fn combine_and_fold() {
        assert_eq!(
            p("2abc+2bca+2cab") + p("2acb+1cab"),
            p("2abc+2acb+2bca+3cab")
        );
        assert_eq!(p("2abc+2acb+2bca+3cab").voters(), 9);
        assert_eq!(p("abc+bca") + Profile::empty(), p("abc+bca"));
        assert_eq!(p("abc+bac") + p("abc+bca"), p("2abc+bac+bca"));
        assert_eq!(p("abc").t_fold(3).unwrap(), p("3abc"));
        assert_eq!(p("abc+bca").t_fold(1).unwrap(), p("abc+bca"));
        assert_eq!(p("abc").t_fold(0), Err(ProfileError::ZeroFold));
        let m = p("2abc+1bca+2cab").t_fold(2).unwrap().margins();
        assert_eq!((m.ab, m.bc, -m.ac), (6, 2, 2));
    }

    #[test]
    fn permutation_group_laws() {
        for s in Permutation::ALL {
            assert!(s.compose(s.inverse()).is_identity());
            for t in Permutation::ALL {
                for o in LinearOrder::ALL {
                    assert_eq!(
                        o.permuted(t).permuted(s),
                        o.permuted(s.compose(t))
                    );
                }
            }
        }
    }

    #[test]
    fn choice_set_helpers() {
        let ac: ChoiceSet = "{a,c}".parse().unwrap();
        assert_eq!(ac.to_string(), "{a,c}");
        assert_eq!(ac.len(), 2);
        assert_eq!(ac.best_for("cba".parse().unwrap()), C);
        assert_eq!(ac.intersection(ChoiceSet::singleton(B)), None);
        assert_eq!(ChoiceSet::every().count(), 7);
        assert_eq!(stabilizer(&p("abc+bca+cab")).len(), 3);
        assert_eq!(stabilizer(&p("abc+bac")).len(), 2);
    }

    fn arb_profile() -> impl Strategy<Value = Profile> {
        proptest::array::uniform6(0u64..12).prop_map(Profile::new)
    }

    fn arb_graph() -> impl Strategy<Value = MarginGraph> {
        (0i64..2, -5i64..=5, -5i64..=5, -5i64..=5).prop_map(|(par, x, y, z)| {
            MarginGraph::new(2 * x + par, 2 * y + par, 2 * z + par)
        })
    }

    proptest! {
        #[test]
        fn parity_matches_electorate(prof in arb_profile()) {
            let m = prof.margins();
            prop_assert_eq!(m.parity(), Some((prof.voters() % 2) as i64));
        }

        #[test]
        fn margins_are_additive(x in arb_profile(), y in arb_profile()) {
            prop_assert_eq!((x + y).margins(), x.margins() + y.margins());
        }

        #[test]
        fn borda_scores_sum_to_zero(m in arb_graph()) {
            prop_assert_eq!(m.borda_scores().iter().sum::<i64>(), 0);
        }

        #[test]
        fn display_parse_round_trip(prof in arb_profile()) {
            prop_assume!(!prof.is_empty());
            prop_assert_eq!(prof.to_string().parse::<Profile>().unwrap(), prof);
        }

        #[test]
        fn permuting_profile_permutes_margins(prof in arb_profile(), i in 0usize..6) {
            let s = Permutation::ALL[i];
            prop_assert_eq!(prof.permuted(s).margins(), prof.margins().permuted(s));
        }
    }

    #[test]
    fn classification_total_and_neutral() {
        for ab in -9..=9i64 {
            for ac in -9..=9i64 {
                for bc in -9..=9i64 {
                    let m = MarginGraph::new(ab, ac, bc);
                    if m.parity().is_none() {
                        continue;
                    }
                    let class = m.classify();
                    if let OrdinalKind::Graph(kind) = class.kind {
                        assert!(kind.matches(&m.permuted(class.relabel)));
                    }
                    for s in Permutation::ALL {
                        let other = m.permuted(s).classify();
                        match (class.kind, other.kind) {
                            (OrdinalKind::CondorcetWinner(w), OrdinalKind::CondorcetWinner(v)) => {
                                assert_eq!(s.apply(w), v)
                            }
                            (k1, k2) => assert_eq!(k1, k2, "{m} under {s}"),
                        }
                    }
                }
            }
        }
    }
}
