//! Membership oracles for shifts without a finite presentation.

use std::fmt;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

pub const DEFAULT_WINDOW: usize = 16;

/// A factorial word predicate, trusted only up to `window_bound`.
#[derive(Clone, Copy)]
pub struct Oracle {
    pub name: &'static str,
    pub symbols: &'static [&'static str],
    pub admits: fn(&[Symbol]) -> bool,
    /// Intrinsic synchronizing-word test, when one is known.
    pub sync_word: Option<fn(&[Symbol]) -> bool>,
    pub window_bound: usize,
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Oracle")
            .field("name", &self.name)
            .field("window_bound", &self.window_bound)
            .finish()
    }
}

impl PartialEq for Oracle {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.window_bound == other.window_bound
    }
}

impl Eq for Oracle {}

impl Oracle {
    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.symbols.iter().copied()).expect("builtin alphabet")
    }

    pub fn with_window(mut self, bound: usize) -> Self {
        self.window_bound = bound;
        self
    }

    pub fn query(&self, word: &[Symbol]) -> Result<bool> {
        if word.len() > self.window_bound {
            return Err(Error::WindowExceeded {
                len: word.len(),
                bound: self.window_bound,
            });
        }
        Ok((self.admits)(word))
    }

    /// Exhaustive factoriality and extendability check on short words.
    pub fn validate(&self, max_len: usize) -> Result<()> {
        let alphabet = self.alphabet();
        let violation = |property: &'static str, w: &[Symbol]| Error::InvalidOracle {
            name: self.name.to_string(),
            property,
            word: alphabet.render(w),
        };
        if !(self.admits)(&[]) {
            return Err(violation("non-emptiness", &[]));
        }
        let limit = max_len.min(self.window_bound);
        for len in 1..=limit {
            for w in alphabet.all_words(len) {
                if !(self.admits)(&w) {
                    continue;
                }
                if !(self.admits)(&w[1..]) || !(self.admits)(&w[..len - 1]) {
                    return Err(violation("factoriality", &w));
                }
            }
        }
        for len in 0..limit {
            for w in alphabet.all_words(len) {
                if !(self.admits)(&w) {
                    continue;
                }
                let mut right = w.clone();
                right.push(0);
                let mut left = vec![0];
                left.extend_from_slice(&w);
                let can_right = alphabet.symbols().any(|a| {
                    *right.last_mut().unwrap() = a;
                    (self.admits)(&right)
                });
                let can_left = alphabet.symbols().any(|a| {
                    left[0] = a;
                    (self.admits)(&left)
                });
                if !can_right || !can_left {
                    return Err(violation("extendability", &w));
                }
            }
        }
        Ok(())
    }
}

const A: Symbol = 0;
const B: Symbol = 1;
const C: Symbol = 2;

/// Labels of paths on the half-line graph: `a` loops at height 0, `b` climbs, `c` descends.
fn ray_admits(w: &[Symbol]) -> bool {
    let mut height = 0i64;
    let mut first_a = None;
    let mut lowest = 0i64;
    for &s in w {
        match s {
            A => {
                if first_a.is_none() {
                    first_a = Some(height);
                }
            }
            B => height += 1,
            C => {
                height -= 1;
                lowest = lowest.min(height);
            }
            _ => return false,
        }
    }
    let Some(offset) = first_a else {
        return true;
    };
    // The first `a` pins the start height to `-offset`.
    let start = -offset;
    if start < 0 || start + lowest < 0 {
        return false;
    }
    let mut h = start;
    for &s in w {
        match s {
            A if h != 0 => return false,
            B => h += 1,
            C => h -= 1,
            _ => {}
        }
    }
    true
}

/// Forbids `a b^m c^k a` with `m != k`.
fn context_free_admits(w: &[Symbol]) -> bool {
    if w.iter().any(|&s| s > C) {
        return false;
    }
    let anchors: Vec<usize> = (0..w.len()).filter(|&i| w[i] == A).collect();
    anchors.windows(2).all(|pair| {
        let gap = &w[pair[0] + 1..pair[1]];
        let m = gap.iter().take_while(|&&s| s == B).count();
        let k = gap[m..].iter().take_while(|&&s| s == C).count();
        m + k != gap.len() || m == k
    })
}

fn contains_a(w: &[Symbol]) -> bool {
    w.contains(&A)
}

pub const NONSOFIC_RAY: Oracle = Oracle {
    name: "nonsofic-ray",
    symbols: &["a", "b", "c"],
    admits: ray_admits,
    sync_word: Some(contains_a),
    window_bound: DEFAULT_WINDOW,
};

pub const CONTEXT_FREE: Oracle = Oracle {
    name: "context-free",
    symbols: &["a", "b", "c"],
    admits: context_free_admits,
    sync_word: Some(contains_a),
    window_bound: DEFAULT_WINDOW,
};

pub fn builtin_oracle(name: &str) -> Option<Oracle> {
    [NONSOFIC_RAY, CONTEXT_FREE]
        .into_iter()
        .find(|o| o.name == name)
}
