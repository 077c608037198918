//! Eventually periodic bi-infinite sequences and the dyadic metric.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::presentation::gcd;

/// A bi-infinite sequence that is periodic to the left and to the right.
///
/// Coordinates below `origin` repeat `left` (whose last symbol sits at
/// `origin - 1`), `core` occupies `[origin, origin + |core|)`, and `right`
/// repeats from there on. Values are kept in a canonical form, so derived
/// equality is equality of points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiSeq {
    left: Word,
    core: Word,
    right: Word,
    origin: i64,
}

fn primitive_root(w: &[Symbol]) -> Word {
    let n = w.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (d..n).all(|i| w[i] == w[i - d]))
        .map(|d| w[..d].to_vec())
        .expect("d = n always works")
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn least_rotation(w: &[Symbol]) -> usize {
    (0..w.len())
        .min_by(|&i, &j| {
            let a = w[i..].iter().chain(&w[..i]);
            let b = w[j..].iter().chain(&w[..j]);
            a.cmp(b)
        })
        .unwrap_or(0)
}

impl BiSeq {
    pub fn new(left: Word, core: Word, right: Word, origin: i64) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::InvalidPoint("tail cycles must be non-empty".into()));
        }
        Ok(Self::canonical(left, core, right, origin))
    }

    /// The periodic point `... w w w ...` with `w[0]` at coordinate 0.
    pub fn periodic(w: &[Symbol]) -> Self {
        assert!(!w.is_empty(), "empty period");
        Self::canonical(w.to_vec(), Vec::new(), w.to_vec(), 0)
    }

    pub fn constant(s: Symbol) -> Self {
        Self::periodic(&[s])
    }

    /// `w` at coordinate `at`, surrounded by `fill` on both sides.
    pub fn spike(fill: Symbol, w: &[Symbol], at: i64) -> Self {
        Self::canonical(vec![fill], w.to_vec(), vec![fill], at)
    }

    fn raw_at(left: &[Symbol], core: &[Symbol], right: &[Symbol], origin: i64, i: i64) -> Symbol {
        if i < origin {
            left[(i - origin).rem_euclid(left.len() as i64) as usize]
        } else if i < origin + core.len() as i64 {
            core[(i - origin) as usize]
        } else {
            right[(i - origin - core.len() as i64).rem_euclid(right.len() as i64) as usize]
        }
    }

    fn canonical(left: Word, core: Word, right: Word, origin: i64) -> Self {
        let left = primitive_root(&left);
        let right = primitive_root(&right);
        let at = |i: i64| Self::raw_at(&left, &core, &right, origin, i);
        let (pl, pr) = (left.len() as i64, right.len() as i64);
        let end = origin + core.len() as i64;
        let right_pattern = |i: i64| right[(i - end).rem_euclid(pr) as usize];
        let left_pattern = |i: i64| left[(i - origin).rem_euclid(pl) as usize];
        let horizon = lcm(pl as u64, pr as u64) as i64;

        // Smallest b with x_i equal to the right pattern for all i >= b.
        let mut b = end;
        while b > origin - horizon && at(b - 1) == right_pattern(b - 1) {
            b -= 1;
        }
        if b == origin - horizon {
            // The left tail follows the right pattern over a full common period.
            let r = least_rotation(&right);
            let rot: Word = right[r..].iter().chain(&right[..r]).copied().collect();
            let o = (end + r as i64).rem_euclid(pr);
            return Self {
                left: rot.clone(),
                core: Vec::new(),
                right: rot,
                origin: o,
            };
        }
        // Largest a with x_i equal to the left pattern for all i < a.
        let mut a = origin;
        while a < end + horizon && at(a) == left_pattern(a) {
            a += 1;
        }
        let a = a.min(b);
        Self {
            left: (a - pl..a).map(at).collect(),
            core: (a..b).map(at).collect(),
            right: (b..b + pr).map(at).collect(),
            origin: a,
        }
    }

    pub fn at(&self, i: i64) -> Symbol {
        Self::raw_at(&self.left, &self.core, &self.right, self.origin, i)
    }

    pub fn left(&self) -> &[Symbol] {
        &self.left
    }

    pub fn core(&self) -> &[Symbol] {
        &self.core
    }

    pub fn right(&self) -> &[Symbol] {
        &self.right
    }

    pub fn origin(&self) -> i64 {
        self.origin
    }

    /// First coordinate of the right tail.
    pub fn core_end(&self) -> i64 {
        self.origin + self.core.len() as i64
    }

    pub fn left_period(&self) -> u64 {
        self.left.len() as u64
    }

    pub fn right_period(&self) -> u64 {
        self.right.len() as u64
    }

    pub fn is_periodic(&self) -> bool {
        self.core.is_empty() && self.left == self.right
    }

    /// Least period of a periodic point.
    pub fn period(&self) -> Option<u64> {
        self.is_periodic().then_some(self.right.len() as u64)
    }

    pub fn description_size(&self) -> usize {
        self.left.len() + self.core.len() + self.right.len()
    }

    /// `x_lo .. x_{hi-1}`.
    pub fn window(&self, lo: i64, hi: i64) -> Word {
        (lo..hi).map(|i| self.at(i)).collect()
    }

    /// `(shift_by(x, k))_i = x_{i+k}`.
    pub fn shift_by(&self, k: i64) -> BiSeq {
        Self::canonical(
            self.left.clone(),
            self.core.clone(),
            self.right.clone(),
            self.origin - k,
        )
    }

    /// `past` below `cut`, `future` from `cut` on.
    pub fn glue(past: &BiSeq, cut: i64, future: &BiSeq) -> BiSeq {
        let lo = past.origin.min(cut);
        let hi = future.core_end().max(cut);
        let left = past.window(lo - past.left.len() as i64, lo);
        let mut core = past.window(lo, cut);
        core.extend(future.window(cut, hi));
        let right = future.window(hi, hi + future.right.len() as i64);
        Self::canonical(left, core, right, lo)
    }

    /// Replaces coordinates in `[from, to)` by those of `with` (open ends for `None`).
    pub fn overwrite(&self, from: Option<i64>, to: Option<i64>, with: &BiSeq) -> BiSeq {
        match (from, to) {
            (None, None) => with.clone(),
            (None, Some(t)) => BiSeq::glue(with, t, self),
            (Some(f), None) => BiSeq::glue(self, f, with),
            (Some(f), Some(t)) if f >= t => self.clone(),
            (Some(f), Some(t)) => {
                let head = BiSeq::glue(self, f, with);
                BiSeq::glue(&head, t, self)
            }
        }
    }

    /// Length of a span that contains every feature of both points.
    fn horizon(&self, other: &BiSeq) -> (i64, i64) {
        let lp = lcm(self.left_period(), other.left_period()) as i64;
        let rp = lcm(self.right_period(), other.right_period()) as i64;
        (
            self.origin.min(other.origin) - lp,
            self.core_end().max(other.core_end()) + rp,
        )
    }

    /// Least `K` with `x_i = y_i` for all `i >= K`; `None` when the right tails differ.
    /// Equal points give `i64::MIN`.
    pub fn agree_from(&self, other: &BiSeq) -> Option<i64> {
        if self == other {
            return Some(i64::MIN);
        }
        let (lo, hi) = self.horizon(other);
        let rp = lcm(self.right_period(), other.right_period()) as i64;
        if (hi - rp..hi).any(|i| self.at(i) != other.at(i)) {
            return None;
        }
        let mut k = hi - rp;
        while k > lo && self.at(k - 1) == other.at(k - 1) {
            k -= 1;
        }
        Some(k)
    }

    /// Greatest `K` with `x_i = y_i` for all `i <= K`; `None` when the left tails differ.
    /// Equal points give `i64::MAX`.
    pub fn agree_until(&self, other: &BiSeq) -> Option<i64> {
        if self == other {
            return Some(i64::MAX);
        }
        let (lo, hi) = self.horizon(other);
        let lp = lcm(self.left_period(), other.left_period()) as i64;
        if (lo..lo + lp).any(|i| self.at(i) != other.at(i)) {
            return None;
        }
        let mut k = lo + lp - 1;
        while k + 1 < hi && self.at(k + 1) == other.at(k + 1) {
            k += 1;
        }
        Some(k)
    }

    /// Coordinate with the least `|i|` where the points differ (ties go to the negative side).
    pub fn first_disagreement(&self, other: &BiSeq) -> Option<i64> {
        if self == other {
            return None;
        }
        let (lo, hi) = self.horizon(other);
        let reach = lo.unsigned_abs().max(hi.unsigned_abs()) as i64 + 1;
        (0..=reach)
            .flat_map(|r| [-r, r])
            .find(|&i| self.at(i) != other.at(i))
    }

    /// Smallest interval containing every disagreement, if the points are homoclinic.
    pub fn disagreement_span(&self, other: &BiSeq) -> Option<(i64, i64)> {
        if self == other {
            return None;
        }
        let lo = self.agree_until(other)? + 1;
        let hi = self.agree_from(other)? - 1;
        Some((lo, hi))
    }

    pub fn distance(&self, other: &BiSeq) -> Dyadic {
        match self.first_disagreement(other) {
            None => Dyadic::Zero,
            Some(i) => Dyadic::Pow(i.unsigned_abs() as u32),
        }
    }

    /// `y_i = x_{-i}`.
    pub fn reversed(&self) -> BiSeq {
        let rev = |w: &[Symbol]| w.iter().rev().copied().collect::<Word>();
        Self::canonical(
            rev(&self.right),
            rev(&self.core),
            rev(&self.left),
            1 - self.core_end(),
        )
    }

    pub fn map_symbols(&self, f: impl Fn(Symbol) -> Symbol) -> BiSeq {
        let m = |w: &[Symbol]| w.iter().map(|&s| f(s)).collect::<Word>();
        Self::canonical(m(&self.left), m(&self.core), m(&self.right), self.origin)
    }

    /// The `(hi - lo)`-periodic point that agrees with `self` on `[lo, hi)`.
    pub fn periodization(&self, lo: i64, hi: i64) -> BiSeq {
        let w = self.window(lo, hi);
        BiSeq::periodic(&w).shift_by(-lo)
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<BiSeq> {
        let mut left = None;
        let mut core = Vec::new();
        let mut right = None;
        let mut origin = 0i64;
        for tok in text.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| Error::InvalidPoint(format!("expected KEY=VALUE, got `{tok}`")))?;
            match key {
                "L" => left = Some(alphabet.parse_word(val)?),
                "C" => core = alphabet.parse_word(val)?,
                "R" => right = Some(alphabet.parse_word(val)?),
                "O" => {
                    origin = val
                        .parse()
                        .map_err(|_| Error::InvalidPoint(format!("bad origin `{val}`")))?
                }
                _ => return Err(Error::InvalidPoint(format!("unknown field `{key}`"))),
            }
        }
        let left = left.ok_or_else(|| Error::InvalidPoint("missing L=".into()))?;
        let right = right.ok_or_else(|| Error::InvalidPoint("missing R=".into()))?;
        BiSeq::new(left, core, right, origin)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        PointDisplay { x: self, alphabet }
    }
}

/// Every point `L=l C=c O=0 R=r` over `alphabet` with `|l| + |c| + |r| <= max_size`,
/// canonicalized, deduplicated and sorted.
pub fn enumerate_points(alphabet: &Alphabet, max_size: usize) -> Vec<BiSeq> {
    let mut out = std::collections::BTreeSet::new();
    for l in 1..max_size {
        for r in 1..=max_size - l {
            for c in 0..=max_size - l - r {
                for lw in alphabet.all_words(l) {
                    for rw in alphabet.all_words(r) {
                        for cw in alphabet.all_words(c) {
                            out.insert(BiSeq::canonical(lw.clone(), cw, rw.clone(), 0));
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

struct PointDisplay<'a> {
    x: &'a BiSeq,
    alphabet: &'a Alphabet,
}

impl fmt::Display for PointDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "L={} C={} O={} R={}",
            self.alphabet.render(&self.x.left),
            self.alphabet.render(&self.x.core),
            self.x.origin,
            self.alphabet.render(&self.x.right)
        )
    }
}

impl fmt::Debug for BiSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BiSeq(L={:?} C={:?} O={} R={:?})",
            self.left, self.core, self.origin, self.right
        )
    }
}

/// `0` or `2^-k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Dyadic {
    Zero,
    Pow(u32),
}

impl Dyadic {
    pub fn to_f64(self) -> f64 {
        match self {
            Dyadic::Zero => 0.0,
            Dyadic::Pow(k) => 0.5f64.powi(k as i32),
        }
    }

    /// `2^-j * self`.
    pub fn scale_down(self, j: u32) -> Self {
        match self {
            Dyadic::Zero => Dyadic::Zero,
            Dyadic::Pow(k) => Dyadic::Pow(k + j),
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Dyadic::Zero, Dyadic::Zero) => Ordering::Equal,
            (Dyadic::Zero, _) => Ordering::Less,
            (_, Dyadic::Zero) => Ordering::Greater,
            (Dyadic::Pow(a), Dyadic::Pow(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dyadic::Zero => f.write_str("0"),
            Dyadic::Pow(k) => write!(f, "2^-{k}"),
        }
    }
}
