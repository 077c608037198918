//! Point membership, the bracket map, and asymptotic relations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::point::{lcm, BiSeq};
use crate::presentation::Presentation;
use crate::shift::{Shift, ShiftKind, Verdict};
use crate::stateset::StateSet;

/// States at coordinate `k` reachable by a left-infinite path reading `x_{<k}`.
pub fn left_states(p: &Presentation, x: &BiSeq, k: i64) -> StateSet {
    let anchor = k.min(x.origin());
    let period = x.left_period() as i64;
    let cycle = x.window(anchor - period, anchor);
    let mut set = p.all_states();
    loop {
        let next = p.run(&set, &cycle);
        if next == set {
            break;
        }
        set = next;
    }
    p.run(&set, &x.window(anchor, k))
}

/// States at coordinate `k` that start a right-infinite path reading `x_{>=k}`.
pub fn right_states(p: &Presentation, x: &BiSeq, k: i64) -> StateSet {
    let anchor = k.max(x.core_end());
    let period = x.right_period() as i64;
    let cycle = x.window(anchor, anchor + period);
    let mut set = p.all_states();
    loop {
        let next = p.pre_run(&set, &cycle);
        if next == set {
            break;
        }
        set = next;
    }
    p.pre_run(&set, &x.window(k, anchor))
}

/// Exact membership for points of a presented shift.
pub fn in_presentation(p: &Presentation, x: &BiSeq) -> bool {
    let k = x.origin();
    left_states(p, x, k).intersects(&right_states(p, x, k))
}

/// Forbidden-factor scan across both tails and the core.
pub fn avoids_forbidden_point(s: &Shift, x: &BiSeq) -> Option<bool> {
    let ShiftKind::Sft { forbidden, .. } = s.kind() else {
        return None;
    };
    let m = forbidden.iter().map(Vec::len).max().unwrap_or(1) as i64;
    let lo = x.origin() - x.left_period() as i64 - m;
    let hi = x.core_end() + x.right_period() as i64 + m;
    s.avoids_forbidden(&x.window(lo, hi))
}

/// Oracle check of every factor of length `window_bound`.
fn oracle_membership(s: &Shift, x: &BiSeq) -> Verdict {
    let o = s.oracle_ref().expect("oracle shift");
    let w = o.window_bound as i64;
    let span = lcm(x.left_period(), x.right_period()) as i64;
    let lo = x.origin() - span - w;
    let hi = x.core_end() + span + w;
    let text = x.window(lo, hi);
    if text.windows(o.window_bound).any(|f| !(o.admits)(f)) {
        Verdict::No
    } else {
        Verdict::Unverified
    }
}

pub fn point_in_shift(s: &Shift, x: &BiSeq) -> Verdict {
    match s.presentation() {
        Some(p) => Verdict::from_bool(in_presentation(p, x)),
        None => oracle_membership(s, x),
    }
}

/// Splice with the future of `x` and the past of `y`.
///
/// Defined when `x` and `y` agree on `|i| <= n - 1` and the splice lies in the shift.
pub fn bracket(s: &Shift, x: &BiSeq, y: &BiSeq, n: u32) -> Result<BiSeq> {
    if n < 2 {
        return Err(Error::WindowTooSmall(n, 2));
    }
    let r = n as i64 - 1;
    if let Some(i) = (0..=r).flat_map(|d| [-d, d]).find(|&i| x.at(i) != y.at(i)) {
        return Err(Error::NotAgreeing(i));
    }
    let z = BiSeq::glue(y, 0, x);
    match point_in_shift(s, &z) {
        Verdict::Yes => {
            debug_assert!(in_stable_cylinder(&z, x, n) && in_unstable_cylinder(&z, y, n));
            Ok(z)
        }
        Verdict::No => Err(Error::NotInShift),
        Verdict::Unverified => Err(Error::Unverified),
    }
}

/// `y` in the local stable set of `x` at radius `2^-n`: `y_i = x_i` for `i >= 1 - n`.
pub fn in_stable_cylinder(y: &BiSeq, x: &BiSeq, n: u32) -> bool {
    match y.agree_from(x) {
        Some(k) => k <= 1 - n as i64,
        None => false,
    }
}

/// `y` in the local unstable set of `x` at radius `2^-n`: `y_i = x_i` for `i <= n - 1`.
pub fn in_unstable_cylinder(y: &BiSeq, x: &BiSeq, n: u32) -> bool {
    match y.agree_until(x) {
        Some(k) => k >= n as i64 - 1,
        None => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Stable,
    Unstable,
    Homoclinic,
}

pub fn decide_relation(x: &BiSeq, y: &BiSeq, rel: Relation) -> bool {
    match rel {
        Relation::Stable => x.agree_from(y).is_some(),
        Relation::Unstable => x.agree_until(y).is_some(),
        Relation::Homoclinic => x.agree_from(y).is_some() && x.agree_until(y).is_some(),
    }
}
