//! Periodic points: enumeration, density, and construction by bracket iteration.

use serde::Serialize;

use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};
use crate::local::{bracket, left_states, point_in_shift, right_states};
use crate::point::{BiSeq, Dyadic};
use crate::presentation::Presentation;
use crate::shift::{Shift, Verdict};
use crate::stateset::StateSet;
use crate::sync::{
    close_cycle, connecting_word, language_words, oracle_closure, witness_radius, DensityReport,
    ORACLE_SEARCH_DEPTH,
};

/// The points fixed by `shift_by(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicSet {
    pub n: u64,
    pub points: Vec<BiSeq>,
}

impl PeriodicSet {
    pub fn count(&self) -> usize {
        self.points.len()
    }
}

/// Whether the partial map `q -> δ(q, w)` has a periodic state.
fn has_periodic_state(p: &Presentation, w: &[Symbol]) -> bool {
    let n = p.num_states();
    let image: Vec<Option<usize>> = (0..n)
        .map(|q| p.run(&StateSet::singleton(n, q), w).first())
        .collect();
    (0..n).any(|q| {
        let mut cur = q;
        for _ in 0..n {
            match image[cur] {
                Some(next) if next == q => return true,
                Some(next) => cur = next,
                None => return false,
            }
        }
        false
    })
}

/// All `w^inf` with `|w| = n` in the shift, ordered by `w`.
pub fn enumerate_periodic(s: &Shift, n: usize) -> Result<PeriodicSet> {
    if n == 0 {
        return Err(Error::Unsupported("period 0".into()));
    }
    let d = s.deterministic_presentation()?;
    let mut points = Vec::new();
    let mut stack: Vec<(Word, StateSet)> = vec![(Vec::new(), d.all_states())];
    // Depth-first in reverse symbol order so words pop out lexicographically.
    while let Some((w, set)) = stack.pop() {
        if w.len() == n {
            if has_periodic_state(d, &w) {
                points.push(BiSeq::periodic(&w));
            }
            continue;
        }
        for a in d.alphabet().symbols().rev() {
            let next = d.step(&set, a);
            if !next.is_empty() {
                let mut v = w.clone();
                v.push(a);
                stack.push((v, next));
            }
        }
    }
    Ok(PeriodicSet {
        n: n as u64,
        points,
    })
}

/// For each word of length at most `max_len`, a periodic point carrying it at `[0, |w|)`.
pub fn periodic_density_check(s: &Shift, max_len: usize) -> Result<DensityReport> {
    let words = language_words(s, max_len)?;
    let mut report = DensityReport {
        words_checked: words.len(),
        witnesses: Vec::new(),
        failures: Vec::new(),
        status: Verdict::Yes,
    };
    if s.is_oracle() {
        for w in words {
            match oracle_closure(s, &w, ORACLE_SEARCH_DEPTH, |_| true) {
                Some(u) => report.witnesses.push((w, BiSeq::periodic(&u))),
                None => report.failures.push(w),
            }
        }
        report.status = if report.failures.is_empty() {
            Verdict::Unverified
        } else {
            Verdict::No
        };
        return Ok(report);
    }
    let d = s.deterministic_presentation()?;
    for w in words {
        let point = close_cycle(d, &w).map(|c| BiSeq::periodic(&c)).filter(|x| {
            x.is_periodic()
                && point_in_shift(s, x) == Verdict::Yes
                && x.window(0, w.len() as i64) == w
        });
        match point {
            Some(x) => report.witnesses.push((w, x)),
            None => report.failures.push(w),
        }
    }
    if !report.failures.is_empty() {
        report.status = Verdict::No;
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketIteration {
    pub point: BiSeq,
    /// Number of bracket iterates computed after `z_0`.
    pub steps: usize,
    pub minimal_period: u64,
}

fn within(x: &BiSeq, y: &BiSeq, n: u32) -> bool {
    x.distance(y) <= Dyadic::Pow(n)
}

/// Iterates `z_{m+1} = [σ^{-n} z_m, σ^n z_m]` from `z_0 = [y, σ^n y]` until the
/// `2n`-periodization of `z_m` is confirmed on `[-n(m+1), n(m+1)]`.
///
/// Requires the witness of `x` inside radius `window - 1` and both `y` and `σ^n y`
/// within `2^-window` of `x`.
pub fn find_periodic_by_bracket(
    s: &Shift,
    x: &BiSeq,
    y: &BiSeq,
    n: u64,
    window: u32,
) -> Result<BracketIteration> {
    let radius = witness_radius(s, x)?;
    if radius + 1 > window {
        return Err(Error::WindowTooSmall(window, radius + 1));
    }
    let n = n as i64;
    if n < 1 {
        return Err(Error::ContractViolation(
            "return time must be positive".into(),
        ));
    }
    let returned = y.shift_by(n);
    if !within(x, y, window) || !within(x, &returned, window) {
        return Err(Error::ContractViolation(format!(
            "y and its return must lie within 2^-{window} of x"
        )));
    }
    let states = s.fischer_cover()?.num_states();
    let cap = states * window as usize + 16;
    let mut z = bracket(s, y, &returned, window).map_err(|_| Error::BracketUndefined(0))?;
    for m in 0..cap {
        let p = z.periodization(-n, n);
        let next = bracket(s, &z.shift_by(-n), &z.shift_by(n), window)
            .map_err(|_| Error::BracketUndefined(m + 1))?;
        let k = n * (m as i64 + 1);
        if next.window(-k, k + 1) == p.window(-k, k + 1) && point_in_shift(s, &p) == Verdict::Yes {
            debug_assert_eq!(p.shift_by(2 * n), p);
            let minimal_period = p.period().expect("periodization is periodic");
            return Ok(BracketIteration {
                point: p,
                steps: m + 1,
                minimal_period,
            });
        }
        z = next;
    }
    Err(Error::NoConvergence(cap))
}

/// A point `y` and return time `n` such that `y` and `σ^n y` lie within `2^-window`
/// of `x`: `y` follows `x` up to `window - 1`, then a connecting word of length at
/// least `min_len`, then a copy of `x` translated by `n`.
pub fn return_point(s: &Shift, x: &BiSeq, window: u32, min_len: usize) -> Result<(BiSeq, u64)> {
    let p = s.require_presentation()?;
    let w = window as i64;
    let from = left_states(p, x, w);
    let to = right_states(p, x, 1 - w);
    let limit = min_len + (1usize << p.num_states().min(20)) + 1;
    let c = connecting_word(p, &from, &to, min_len, limit).ok_or(Error::SearchExhausted(limit))?;
    let n = 2 * w - 1 + c.len() as i64;
    let bridge = BiSeq::new(vec![0], c.clone(), vec![0], w)?;
    let head = BiSeq::glue(x, w, &bridge);
    let y = BiSeq::glue(&head, w + c.len() as i64, &x.shift_by(-n));
    debug_assert_eq!(point_in_shift(s, &y), Verdict::Yes);
    Ok((y, n as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::matrix::IntMatrix;

    fn pt(s: &Shift, lit: &str) -> BiSeq {
        BiSeq::parse(s.alphabet(), lit).unwrap()
    }

    /// Reference: every word of length n whose cyclic closure avoids the forbidden words.
    fn brute_force_count(forbidden: &[&[Symbol]], k: u16, n: usize) -> usize {
        let alphabet = crate::alphabet::Alphabet::new((0..k).map(|i| i.to_string())).unwrap();
        alphabet
            .all_words(n)
            .filter(|w| {
                let text: Word = w.iter().cycle().take(n + 8).copied().collect();
                !forbidden
                    .iter()
                    .any(|f| text.windows(f.len()).any(|win| win == *f))
            })
            .count()
    }

    #[test]
    fn golden_counts_match_traces() {
        let golden = builtins::golden_mean();
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]]);
        for n in 1..=8 {
            let count = enumerate_periodic(&golden, n).unwrap().count();
            assert_eq!(count as i64, a.pow(n as u32).trace());
            assert_eq!(count, brute_force_count(&[&[1, 1]], 2, n));
        }
    }

    #[test]
    fn even_counts() {
        let even = builtins::even();
        let one = enumerate_periodic(&even, 1).unwrap();
        assert_eq!(one.points, vec![BiSeq::constant(0), BiSeq::constant(1)]);
        let three = enumerate_periodic(&even, 3).unwrap();
        assert_eq!(three.count(), 5);
        assert!(!three.points.contains(&BiSeq::periodic(&[0, 1, 1])));
    }

    #[test]
    fn points_are_fixed_and_nested() {
        let even = builtins::even();
        for n in 1..=6 {
            let set = enumerate_periodic(&even, n).unwrap();
            for p in &set.points {
                assert_eq!(p.shift_by(n as i64), *p);
            }
            for m in (1..n).filter(|m| n % m == 0) {
                for p in enumerate_periodic(&even, m).unwrap().points {
                    assert!(set.points.contains(&p));
                }
            }
        }
    }

    #[test]
    fn golden_bracket_iteration() {
        let golden = builtins::golden_mean();
        let x = BiSeq::constant(0);
        let y = BiSeq::spike(0, &[1], 3);
        let r = find_periodic_by_bracket(&golden, &x, &y, 6, 3).unwrap();
        assert!(r.steps <= 8);
        assert_eq!(r.minimal_period, 6);
        assert_eq!(r.point, BiSeq::periodic(&[0, 0, 0, 1, 0, 0]));
        assert!(x.distance(&r.point) <= Dyadic::Pow(2));
    }

    #[test]
    fn periodic_input_returns_itself() {
        let golden = builtins::golden_mean();
        let x = BiSeq::constant(0);
        let y = BiSeq::periodic(&[0, 0, 0, 1, 0, 0]);
        let r = find_periodic_by_bracket(&golden, &x, &y, 6, 3).unwrap();
        assert_eq!(r.point, y);
    }

    #[test]
    fn even_bracket_iteration() {
        let even = builtins::even();
        let x = BiSeq::constant(1);
        let y = pt(&even, "L=1 C=00 O=2 R=1");
        let r = find_periodic_by_bracket(&even, &x, &y, 5, 2).unwrap();
        assert_eq!(r.point.shift_by(10), r.point);
        assert!(enumerate_periodic(&even, 10)
            .unwrap()
            .points
            .contains(&r.point));
    }

    #[test]
    fn constructed_returns_converge() {
        let even = builtins::even();
        for lit in ["L=1 C= O=0 R=1", "L=0 C=1 O=0 R=0", "L=1 C=001 O=-1 R=1"] {
            let x = pt(&even, lit);
            let window = witness_radius(&even, &x).unwrap() + 2;
            let (y, n) = return_point(&even, &x, window, 2).unwrap();
            let r = find_periodic_by_bracket(&even, &x, &y, n, window).unwrap();
            assert_eq!(r.point.shift_by(2 * n as i64), r.point);
            assert!(x.distance(&r.point) <= Dyadic::Pow(window - 1));
        }
    }

    #[test]
    fn bracket_iteration_errors() {
        let even = builtins::even();
        let zeros = BiSeq::constant(0);
        assert_eq!(
            find_periodic_by_bracket(&even, &zeros, &zeros, 1, 2),
            Err(Error::NotSynchronizing)
        );
        let golden = builtins::golden_mean();
        let y = BiSeq::spike(0, &[1], 1);
        assert!(matches!(
            find_periodic_by_bracket(&golden, &BiSeq::constant(0), &y, 6, 3),
            Err(Error::ContractViolation(_))
        ));
    }

    #[test]
    fn density() {
        for s in [builtins::golden_mean(), builtins::even(), builtins::full2()] {
            let r = periodic_density_check(&s, 6).unwrap();
            assert_eq!(r.status, Verdict::Yes, "{:?}", r.failures);
        }
        let r = periodic_density_check(&builtins::full2(), 4).unwrap();
        for (w, x) in &r.witnesses {
            assert_eq!(x, &BiSeq::periodic(w));
        }
    }
}
