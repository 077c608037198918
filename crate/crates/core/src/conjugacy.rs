//! Local conjugacy germs, bridge constructions, and groupoid samples.
//!
//! A germ is a rewrite rule on a cylinder around its source point. The cylinder of
//! window `W` is `z_i = source_i` for `|i| <= W - 1` (two-sided germs), for
//! `i <= W - 1` (stable germs, defined on an unstable cylinder), or for `i >= 1 - W`
//! (unstable germs, defined on a stable cylinder).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::local::{bracket, decide_relation, left_states, point_in_shift, right_states, Relation};
use crate::point::{enumerate_points, BiSeq};
use crate::presentation::Presentation;
use crate::shift::{Shift, Verdict};
use crate::stateset::StateSet;
use crate::sync::{
    connecting_word, is_synchronizing, stable_representatives, unstable_representatives,
    witness_radius,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GermKind {
    Lc,
    Lcs,
    Lcu,
}

impl std::fmt::Display for GermKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GermKind::Lc => "lc",
            GermKind::Lcs => "lcs",
            GermKind::Lcu => "lcu",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Identity,
    /// Replace coordinates in `[from, to)` by those of `with`.
    Overwrite {
        from: Option<i64>,
        to: Option<i64>,
        with: BiSeq,
    },
    /// `z -> [unstable([z, x]), stable([x, z])]` with `x` the germ's source.
    Bracketed {
        unstable: Box<Germ>,
        stable: Box<Germ>,
    },
    /// `σ^by ∘ inner ∘ σ^-by`.
    Shifted {
        by: i64,
        inner: Box<Germ>,
    },
    /// `second ∘ first`.
    Then(Box<Germ>, Box<Germ>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    pub kind: GermKind,
    pub source: BiSeq,
    pub target: BiSeq,
    pub window: u32,
    pub rule: Rule,
}

/// Bracket radius used inside composite rules.
const INNER_BRACKET: u32 = 2;

impl Germ {
    pub fn identity(kind: GermKind, x: &BiSeq) -> Germ {
        Germ {
            kind,
            source: x.clone(),
            target: x.clone(),
            window: 1,
            rule: Rule::Identity,
        }
    }

    fn overwrite(
        kind: GermKind,
        x: &BiSeq,
        y: &BiSeq,
        window: u32,
        from: Option<i64>,
        to: Option<i64>,
    ) -> Germ {
        Germ {
            kind,
            source: x.clone(),
            target: y.clone(),
            window,
            rule: Rule::Overwrite {
                from,
                to,
                with: y.clone(),
            },
        }
    }

    /// Whether `z` lies in the cylinder of the germ (membership in the shift aside).
    pub fn contains(&self, z: &BiSeq) -> bool {
        let w = self.window as i64;
        match self.kind {
            GermKind::Lc => (1 - w..w).all(|i| z.at(i) == self.source.at(i)),
            GermKind::Lcs => z.agree_until(&self.source).is_some_and(|k| k >= w - 1),
            GermKind::Lcu => z.agree_from(&self.source).is_some_and(|k| k <= 1 - w),
        }
    }

    pub fn apply(&self, s: &Shift, z: &BiSeq) -> Result<BiSeq> {
        if !self.contains(z) {
            return Err(Error::OutsideDomain);
        }
        if point_in_shift(s, z) == Verdict::No {
            return Err(Error::NotInShift);
        }
        match &self.rule {
            Rule::Identity => Ok(z.clone()),
            Rule::Overwrite { from, to, with } => Ok(z.overwrite(*from, *to, with)),
            Rule::Bracketed { unstable, stable } => {
                let x = &self.source;
                let a = unstable.apply(s, &bracket(s, z, x, INNER_BRACKET)?)?;
                let b = stable.apply(s, &bracket(s, x, z, INNER_BRACKET)?)?;
                bracket(s, &a, &b, INNER_BRACKET)
            }
            Rule::Shifted { by, inner } => Ok(inner.apply(s, &z.shift_by(-by))?.shift_by(*by)),
            Rule::Then(first, second) => second.apply(s, &first.apply(s, z)?),
        }
    }

    pub fn inverse(&self) -> Germ {
        let rule = match &self.rule {
            Rule::Identity => Rule::Identity,
            Rule::Overwrite { from, to, .. } => Rule::Overwrite {
                from: *from,
                to: *to,
                with: self.source.clone(),
            },
            Rule::Bracketed { unstable, stable } => Rule::Bracketed {
                unstable: Box::new(unstable.inverse()),
                stable: Box::new(stable.inverse()),
            },
            Rule::Shifted { by, inner } => Rule::Shifted {
                by: *by,
                inner: Box::new(inner.inverse()),
            },
            Rule::Then(first, second) => {
                Rule::Then(Box::new(second.inverse()), Box::new(first.inverse()))
            }
        };
        Germ {
            kind: self.kind,
            source: self.target.clone(),
            target: self.source.clone(),
            window: self.window,
            rule,
        }
    }

    /// `next ∘ self`.
    pub fn compose(&self, next: &Germ) -> Result<Germ> {
        if self.target != next.source {
            return Err(Error::ContractViolation(
                "composed germs do not share an endpoint".into(),
            ));
        }
        if self.kind != next.kind {
            return Err(Error::ContractViolation(format!(
                "cannot compose {} with {}",
                self.kind, next.kind
            )));
        }
        Ok(Germ {
            kind: self.kind,
            source: self.source.clone(),
            target: next.target.clone(),
            window: self.window.max(next.window),
            rule: Rule::Then(Box::new(self.clone()), Box::new(next.clone())),
        })
    }

    /// The germ `σ^k ∘ self ∘ σ^-k` from `σ^k(source)` to `σ^k(target)`.
    pub fn conjugate(&self, k: i64) -> Germ {
        let rule = match &self.rule {
            Rule::Identity => Rule::Identity,
            Rule::Overwrite { from, to, with } => Rule::Overwrite {
                from: from.map(|f| f - k),
                to: to.map(|t| t - k),
                with: with.shift_by(k),
            },
            _ => Rule::Shifted {
                by: k,
                inner: Box::new(self.clone()),
            },
        };
        Germ {
            kind: self.kind,
            source: self.source.shift_by(k),
            target: self.target.shift_by(k),
            window: self.window + k.unsigned_abs() as u32,
            rule,
        }
    }

    /// Whether `z` and `image` agree where the germ's kind requires: beyond the window
    /// on both sides (lc), to the right (lcs) or to the left (lcu).
    pub fn defect_vanishes(&self, z: &BiSeq, image: &BiSeq) -> bool {
        let w = self.window as i64;
        let right = || z.agree_from(image).is_some_and(|k| k <= w);
        let left = || z.agree_until(image).is_some_and(|k| k >= -w);
        match self.kind {
            GermKind::Lc => right() && left(),
            GermKind::Lcs => right(),
            GermKind::Lcu => left(),
        }
    }
}

/// Members of the germ's cylinder: the source, its one-sided variations beyond the
/// window with tails of size at most `budget`, and a few two-sided combinations.
pub fn domain_samples(s: &Shift, g: &Germ, budget: usize) -> Vec<BiSeq> {
    let mut out = BTreeSet::from([g.source.clone()]);
    let Some(p) = s.presentation() else {
        return out.into_iter().collect();
    };
    let w = g.window as i64;
    let futures = || unstable_representatives(p, s, &g.source, w, budget);
    let pasts = || stable_representatives(p, s, &g.source, 1 - w, budget);
    match g.kind {
        GermKind::Lcs => out.extend(futures()),
        GermKind::Lcu => out.extend(pasts()),
        GermKind::Lc => {
            let (fs, ps) = (futures(), pasts());
            for f in fs.iter().take(5) {
                for q in ps.iter().take(5) {
                    let z = BiSeq::glue(q, 0, f);
                    if point_in_shift(s, &z) == Verdict::Yes {
                        out.insert(z);
                    }
                }
            }
            out.extend(fs);
            out.extend(ps);
        }
    }
    out.into_iter().collect()
}

/// Checks the germ on its samples: rule(source) = target, images in the shift,
/// injectivity, and the vanishing defect.
pub fn validate_germ(s: &Shift, g: &Germ, budget: usize) -> Result<()> {
    let fail = |what: &str| Err(Error::ContractViolation(format!("{} germ: {what}", g.kind)));
    if g.apply(s, &g.source)? != g.target {
        return fail("rule does not send source to target");
    }
    let mut images = BTreeSet::new();
    for z in domain_samples(s, g, budget) {
        let image = g.apply(s, &z)?;
        if point_in_shift(s, &image) == Verdict::No {
            return fail("image leaves the shift");
        }
        if !g.defect_vanishes(&z, &image) {
            return fail("defect beyond window");
        }
        if !images.insert(image) {
            return fail("not injective");
        }
    }
    Ok(())
}

const SEARCH_SPAN: i64 = 48;

/// Every `z` with `z_i = x_i` for `i <= w - 1` gives `glue(y, k, z)` in the shift.
fn past_swap_ok(p: &Presentation, x: &BiSeq, y: &BiSeq, k: i64, w: i64) -> bool {
    let lx = left_states(p, x, k);
    let reach = p.pre_run(&p.all_states(), &x.window(k, w));
    lx.intersection(&reach).is_subset(&left_states(p, y, k))
}

/// Every `z` with `z_i = x_i` for `i >= 1 - w` gives `glue(z, k, y)` in the shift.
fn future_swap_ok(p: &Presentation, x: &BiSeq, y: &BiSeq, k: i64, w: i64) -> bool {
    let rx = right_states(p, x, k);
    let reach = p.run(&p.all_states(), &x.window(1 - w, k));
    rx.intersection(&reach).is_subset(&right_states(p, y, k))
}

/// Every `z` agreeing with `x` on `[1 - w, w)` stays in the shift when `[a, b)` is
/// rewritten to `y`'s block.
fn block_swap_ok(p: &Presentation, x: &BiSeq, y: &BiSeq, a: i64, b: i64, w: i64) -> bool {
    let n = p.num_states();
    let entry = p.run(&p.all_states(), &x.window(1 - w, a));
    let exit = p.pre_run(&p.all_states(), &x.window(b, w));
    let (xb, yb) = (x.window(a, b), y.window(a, b));
    let ok = entry.iter().all(|s| {
        let start = StateSet::singleton(n, s);
        let via_x = p.run(&start, &xb).intersection(&exit);
        via_x.is_subset(&p.run(&start, &yb))
    });
    ok
}

fn to_window(w: i64) -> u32 {
    w.max(1) as u32
}

/// Stable germ `x -> y` for points agreeing in the future: rewrite `(-inf, k)` to `y`.
pub fn lcs_germ(s: &Shift, x: &BiSeq, y: &BiSeq) -> Result<Germ> {
    if x == y {
        return Ok(Germ::identity(GermKind::Lcs, x));
    }
    let kf = x
        .agree_from(y)
        .ok_or(Error::NotRelated("stably equivalent"))?;
    let p = s.require_presentation()?;
    for k in kf..kf + SEARCH_SPAN {
        for w in k.max(1)..k.max(1) + SEARCH_SPAN {
            if past_swap_ok(p, x, y, k, w) && past_swap_ok(p, y, x, k, w) {
                return Ok(Germ::overwrite(
                    GermKind::Lcs,
                    x,
                    y,
                    to_window(w),
                    None,
                    Some(k),
                ));
            }
        }
    }
    Err(Error::NotRelated("lcs-equivalent within the search span"))
}

/// Unstable germ `x -> y` for points agreeing in the past: rewrite `[k, inf)` to `y`.
pub fn lcu_germ(s: &Shift, x: &BiSeq, y: &BiSeq) -> Result<Germ> {
    if x == y {
        return Ok(Germ::identity(GermKind::Lcu, x));
    }
    let ku = x
        .agree_until(y)
        .ok_or(Error::NotRelated("unstably equivalent"))?
        + 1;
    let p = s.require_presentation()?;
    for k in (ku - SEARCH_SPAN..=ku).rev() {
        for w in (1 - k).max(1)..(1 - k).max(1) + SEARCH_SPAN {
            if future_swap_ok(p, x, y, k, w) && future_swap_ok(p, y, x, k, w) {
                return Ok(Germ::overwrite(
                    GermKind::Lcu,
                    x,
                    y,
                    to_window(w),
                    Some(k),
                    None,
                ));
            }
        }
    }
    Err(Error::NotRelated("lcu-equivalent within the search span"))
}

/// Two-sided germ `x -> y` for homoclinic points: rewrite the disagreement block.
pub fn lc_germ(s: &Shift, x: &BiSeq, y: &BiSeq) -> Result<Germ> {
    if x == y {
        return Ok(Germ::identity(GermKind::Lc, x));
    }
    let (lo, hi) = x
        .disagreement_span(y)
        .ok_or(Error::NotRelated("homoclinic"))?;
    let p = s.require_presentation()?;
    for extra in 0..SEARCH_SPAN {
        let (a, b) = (lo - extra, hi + 1 + extra);
        let w = b.max(1 - a);
        if block_swap_ok(p, x, y, a, b, w) && block_swap_ok(p, y, x, a, b, w) {
            return Ok(Germ::overwrite(
                GermKind::Lc,
                x,
                y,
                to_window(w),
                Some(a),
                Some(b),
            ));
        }
    }
    Err(Error::NotRelated("lc-equivalent within the search span"))
}

/// The germ of `z -> [φ^-M[φ^M[z,x], φ^M y], φ^M[φ^-M y, φ^-M[x,z]]]`, evaluated literally.
fn ruelle_formula(s: &Shift, x: &BiSeq, y: &BiSeq, z: &BiSeq, m: i64) -> Result<BiSeq> {
    let b = |u: &BiSeq, v: &BiSeq| bracket(s, u, v, INNER_BRACKET);
    let forward = b(&b(z, x)?.shift_by(m), &y.shift_by(m))?.shift_by(-m);
    let backward = b(&y.shift_by(-m), &b(x, z)?.shift_by(-m))?.shift_by(m);
    b(&forward, &backward)
}

/// Two-sided germ between homoclinic points of a shift of finite type.
///
/// With `x_i = y_i` for `|i| >= n`, the rule rewrites `[1 - n, n)` on the cylinder of
/// window `n + max(memory, 3)`; it is checked against the bracket formula on samples.
pub fn ruelle_germ(s: &Shift, x: &BiSeq, y: &BiSeq) -> Result<Germ> {
    let memory = s.memory().ok_or(Error::NotSft)? as i64;
    if !decide_relation(x, y, Relation::Homoclinic) {
        return Err(Error::NotRelated("homoclinic"));
    }
    for z in [x, y] {
        if point_in_shift(s, z) != Verdict::Yes {
            return Err(Error::NotInShift);
        }
    }
    if x == y {
        return Ok(Germ::identity(GermKind::Lc, x));
    }
    let (lo, hi) = x.disagreement_span(y).expect("distinct homoclinic points");
    let n = lo.abs().max(hi.abs()) + 1;
    let window = n + memory.max(3);
    let g = Germ::overwrite(GermKind::Lc, x, y, window as u32, Some(1 - n), Some(n));
    for z in domain_samples(s, &g, 2) {
        let by_rule = g.apply(s, &z)?;
        if ruelle_formula(s, x, y, &z, n + 1)? != by_rule {
            return Err(Error::ContractViolation(
                "rewrite rule disagrees with the bracket formula".into(),
            ));
        }
    }
    Ok(g)
}

/// For `y` in the rectangle of radius `2^-n` at a synchronizing `x`: the unstable
/// germ `y -> [x, y]` (`z -> [x, z]`) and the stable germ `[x, y] -> x` (`z -> [z, x]`).
pub fn rectangle_germs(s: &Shift, x: &BiSeq, y: &BiSeq, n: u32) -> Result<(Germ, Germ)> {
    let radius = witness_radius(s, x)?;
    if radius + 1 > n {
        return Err(Error::WindowTooSmall(n, radius + 1));
    }
    let r = n as i64 - 1;
    if (-r..=r).any(|i| x.at(i) != y.at(i)) || point_in_shift(s, y) != Verdict::Yes {
        return Err(Error::NotInRectangle);
    }
    let mid = bracket(s, x, y, n)?;
    let unstable = Germ::overwrite(GermKind::Lcu, y, &mid, n, Some(0), None);
    let unstable = Germ {
        rule: Rule::Overwrite {
            from: Some(0),
            to: None,
            with: x.clone(),
        },
        ..unstable
    };
    let stable = Germ {
        kind: GermKind::Lcs,
        source: mid.clone(),
        target: x.clone(),
        window: n,
        rule: Rule::Overwrite {
            from: None,
            to: Some(0),
            with: x.clone(),
        },
    };
    Ok((unstable, stable))
}

/// Two-sided germ `x -> y` from a stable germ and an unstable germ between
/// synchronizing points: `z -> [gu([z, x]), gs([x, z])]`.
pub fn compose_lcs_lcu(s: &Shift, gu: &Germ, gs: &Germ, x: &BiSeq, y: &BiSeq) -> Result<Germ> {
    if gu.kind != GermKind::Lcs || gs.kind != GermKind::Lcu {
        return Err(Error::ContractViolation(
            "expected a stable germ and an unstable germ".into(),
        ));
    }
    if gu.source != *x || gs.source != *x || gu.target != *y || gs.target != *y {
        return Err(Error::ContractViolation(
            "germ endpoints do not match".into(),
        ));
    }
    let rx = witness_radius(s, x)?;
    let ry = witness_radius(s, y)?;
    let window = gu
        .window
        .max(gs.window)
        .max(rx + 1)
        .max(ry + 1)
        .max(INNER_BRACKET);
    let g = Germ {
        kind: GermKind::Lc,
        source: x.clone(),
        target: y.clone(),
        window,
        rule: Rule::Bracketed {
            unstable: Box::new(gu.clone()),
            stable: Box::new(gs.clone()),
        },
    };
    if g.apply(s, x).map_err(|_| Error::BracketUndefined(0))? != *y {
        return Err(Error::ContractViolation(
            "composite does not reach y".into(),
        ));
    }
    Ok(g)
}

#[derive(Clone, Debug)]
pub struct Bridge {
    /// Asymptotic to `p` in the past, to `z` in the future.
    pub x: BiSeq,
    /// Asymptotic to `z` in the past, to `q` in the future.
    pub y: BiSeq,
    /// Stable germ `x -> z`.
    pub stable: Germ,
    /// Unstable germ `z -> y`.
    pub unstable: Germ,
}

const BRIDGE_DEPTH: usize = 24;

/// Points `x ~u p` and `y ~s q` with germs `x -> z` (stable) and `z -> y` (unstable).
pub fn heteroclinic_bridge(s: &Shift, z: &BiSeq, p: &BiSeq, q: &BiSeq) -> Result<Bridge> {
    let pres = s.require_presentation()?;
    let n = (witness_radius(s, z)? + 1) as i64;
    let mut x_found = None;
    for len in 0..=BRIDGE_DEPTH {
        let cut = 1 - n - len as i64;
        let x = if decide_relation(z, p, Relation::Unstable) && len == 0 {
            z.clone()
        } else {
            let from = left_states(pres, p, cut);
            let to = right_states(pres, z, 1 - n);
            let Some(c) = connecting_word(pres, &from, &to, len, len) else {
                continue;
            };
            splice(p, cut, &c, z)
        };
        if let Ok(g) = lcs_germ(s, &x, z) {
            x_found = Some((x, g));
            break;
        }
    }
    let (x, stable) = x_found.ok_or(Error::SearchExhausted(BRIDGE_DEPTH))?;
    let mut y_found = None;
    for len in 0..=BRIDGE_DEPTH {
        let y = if decide_relation(z, q, Relation::Stable) && len == 0 {
            z.clone()
        } else {
            let from = left_states(pres, z, n);
            let to = right_states(pres, q, n + len as i64);
            let Some(c) = connecting_word(pres, &from, &to, len, len) else {
                continue;
            };
            splice(z, n, &c, q)
        };
        if let Ok(g) = lcu_germ(s, z, &y) {
            y_found = Some((y, g));
            break;
        }
    }
    let (y, unstable) = y_found.ok_or(Error::SearchExhausted(BRIDGE_DEPTH))?;
    debug_assert!(decide_relation(&x, p, Relation::Unstable));
    debug_assert!(decide_relation(&y, q, Relation::Stable));
    Ok(Bridge {
        x,
        y,
        stable,
        unstable,
    })
}

/// `past` below `cut`, then `c`, then `future` from `cut + |c|`.
fn splice(past: &BiSeq, cut: i64, c: &[u16], future: &BiSeq) -> BiSeq {
    let end = cut + c.len() as i64;
    let block = BiSeq::new(vec![0], c.to_vec(), vec![0], cut).expect("non-empty tails");
    BiSeq::glue(&BiSeq::glue(past, cut, &block), end, future)
}

#[derive(Clone, Debug)]
pub struct SyncBridge {
    pub z: BiSeq,
    /// Stable germ `x -> z`.
    pub stable: Germ,
    /// Unstable germ `z -> y`.
    pub unstable: Germ,
}

/// A synchronizing `z` with the past of `y` and the future of `x`, joined by a word
/// containing a synchronizing word, together with germs `x -> z` and `z -> y`.
pub fn sync_bridge(s: &Shift, x: &BiSeq, y: &BiSeq) -> Result<SyncBridge> {
    let f = s.fischer_cover()?;
    let n = match witness_radius(s, y) {
        Ok(r) => r as i64 + 1,
        Err(_) => 1,
    };
    if x == y && is_synchronizing(s, x)? {
        return Ok(SyncBridge {
            z: x.clone(),
            stable: Germ::identity(GermKind::Lcs, x),
            unstable: Germ::identity(GermKind::Lcu, x),
        });
    }
    let start = left_states(f, y, n);
    // Layers of (states along y's past, states from anywhere) by exact word length.
    let mut layer: BTreeMap<(StateSet, StateSet), Word> =
        BTreeMap::from([((start, f.all_states()), Vec::new())]);
    for len in 0..=BRIDGE_DEPTH {
        let end = n + len as i64;
        let to = right_states(f, x, end);
        for ((from_y, from_all), c) in &layer {
            if from_all.len() != 1 || !from_y.intersects(&to) {
                continue;
            }
            let z = splice(y, n, c, x);
            if point_in_shift(s, &z) != Verdict::Yes || !is_synchronizing(s, &z)? {
                continue;
            }
            if let (Ok(stable), Ok(unstable)) = (lcs_germ(s, x, &z), lcu_germ(s, &z, y)) {
                return Ok(SyncBridge {
                    z,
                    stable,
                    unstable,
                });
            }
        }
        let mut next = BTreeMap::new();
        for ((from_y, from_all), c) in &layer {
            for a in f.alphabet().symbols() {
                let ny = f.step(from_y, a);
                if ny.is_empty() {
                    continue;
                }
                let na = f.step(from_all, a);
                let mut w = c.clone();
                w.push(a);
                next.entry((ny, na)).or_insert(w);
            }
        }
        layer = next;
    }
    Err(Error::SearchExhausted(BRIDGE_DEPTH))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupoidKind {
    Lc,
    LcSync,
    /// Arrows among points unstably equivalent to some point of the set.
    Lcs(Vec<BiSeq>),
    /// Arrows among points stably equivalent to some point of the set.
    Lcu(Vec<BiSeq>),
}

impl GroupoidKind {
    pub fn germ_kind(&self) -> GermKind {
        match self {
            GroupoidKind::Lc | GroupoidKind::LcSync => GermKind::Lc,
            GroupoidKind::Lcs(_) => GermKind::Lcs,
            GroupoidKind::Lcu(_) => GermKind::Lcu,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Arrow {
    pub source: BiSeq,
    pub target: BiSeq,
    pub germ: Germ,
}

#[derive(Clone, Debug, Default)]
pub struct GroupoidSample {
    pub units: Vec<BiSeq>,
    pub arrows: Vec<Arrow>,
    pub compositions_checked: usize,
    pub violations: Vec<String>,
}

/// Point with the left tail of `x` and nothing else.
fn left_key(x: &BiSeq) -> BiSeq {
    let l = x.left().to_vec();
    BiSeq::new(l.clone(), Vec::new(), l, x.origin()).expect("non-empty tail")
}

fn right_key(x: &BiSeq) -> BiSeq {
    let r = x.right().to_vec();
    BiSeq::new(r.clone(), Vec::new(), r, x.core_end()).expect("non-empty tail")
}

/// Germ for an arrow of the given kind, when one of the constructions applies.
pub fn construct_germ(s: &Shift, kind: GermKind, x: &BiSeq, y: &BiSeq) -> Result<Germ> {
    match kind {
        GermKind::Lcs => lcs_germ(s, x, y),
        GermKind::Lcu => lcu_germ(s, x, y),
        GermKind::Lc if s.is_sft() => ruelle_germ(s, x, y),
        GermKind::Lc => lc_germ(s, x, y).or_else(|e| {
            if is_synchronizing(s, x).unwrap_or(false) && is_synchronizing(s, y).unwrap_or(false) {
                compose_lcs_lcu(s, &lcs_germ(s, x, y)?, &lcu_germ(s, x, y)?, x, y)
            } else {
                Err(e)
            }
        }),
    }
}

const COMPOSITION_LIMIT: usize = 400;

/// Arrows between member points of description size at most `bound`, each carrying a
/// constructed germ, with the groupoid axioms checked on the sample.
pub fn groupoid_sample(s: &Shift, kind: &GroupoidKind, bound: usize) -> Result<GroupoidSample> {
    let germ_kind = kind.germ_kind();
    let mut units = Vec::new();
    for x in enumerate_points(s.alphabet(), bound) {
        if point_in_shift(s, &x) != Verdict::Yes {
            continue;
        }
        let keep = match kind {
            GroupoidKind::Lc => true,
            GroupoidKind::LcSync => is_synchronizing(s, &x)?,
            GroupoidKind::Lcs(ps) => ps
                .iter()
                .any(|p| decide_relation(&x, p, Relation::Unstable)),
            GroupoidKind::Lcu(ps) => ps.iter().any(|p| decide_relation(&x, p, Relation::Stable)),
        };
        if keep {
            units.push(x);
        }
    }
    let mut groups: BTreeMap<(Option<BiSeq>, Option<BiSeq>), Vec<usize>> = BTreeMap::new();
    for (i, x) in units.iter().enumerate() {
        let key = match germ_kind {
            GermKind::Lc => (Some(left_key(x)), Some(right_key(x))),
            GermKind::Lcs => (None, Some(right_key(x))),
            GermKind::Lcu => (Some(left_key(x)), None),
        };
        groups.entry(key).or_default().push(i);
    }
    let mut sample = GroupoidSample::default();
    for members in groups.values() {
        for &i in members {
            for &j in members {
                let (x, y) = (&units[i], &units[j]);
                if let Ok(germ) = construct_germ(s, germ_kind, x, y) {
                    sample.arrows.push(Arrow {
                        source: x.clone(),
                        target: y.clone(),
                        germ,
                    });
                }
            }
        }
    }
    sample.units = units;
    check_axioms(s, &mut sample);
    Ok(sample)
}

fn check_axioms(s: &Shift, sample: &mut GroupoidSample) {
    let mut index: HashMap<(&BiSeq, &BiSeq), usize> = HashMap::new();
    for (k, a) in sample.arrows.iter().enumerate() {
        index.insert((&a.source, &a.target), k);
    }
    let mut violations = Vec::new();
    for x in &sample.units {
        if !index.contains_key(&(x, x)) {
            violations.push(format!("missing identity at {x:?}"));
        }
    }
    for a in &sample.arrows {
        let inv = a.germ.inverse();
        if !index.contains_key(&(&a.target, &a.source)) {
            violations.push(format!(
                "missing inverse of {:?} -> {:?}",
                a.source, a.target
            ));
        }
        for z in domain_samples(s, &a.germ, 2).into_iter().take(6) {
            let back = a.germ.apply(s, &z).and_then(|w| inv.apply(s, &w));
            if back != Ok(z.clone()) {
                violations.push(format!("inverse fails at {z:?} for {:?}", a.source));
            }
        }
    }
    let mut checked = 0;
    'outer: for a in &sample.arrows {
        for b in &sample.arrows {
            if a.target != b.source || a.source == a.target || b.source == b.target {
                continue;
            }
            if checked >= COMPOSITION_LIMIT {
                break 'outer;
            }
            checked += 1;
            let Ok(c) = a.germ.compose(&b.germ) else {
                violations.push("composition rejected".into());
                continue;
            };
            if c.apply(s, &a.source) != Ok(b.target.clone()) {
                violations.push(format!("composite misses target {:?}", b.target));
            }
            let Some(&k) = index.get(&(&a.source, &b.target)) else {
                continue;
            };
            let direct = &sample.arrows[k].germ;
            let common = Germ {
                window: c.window.max(direct.window),
                ..direct.clone()
            };
            for z in domain_samples(s, &common, 2).into_iter().take(6) {
                if c.apply(s, &z) != direct.apply(s, &z) {
                    violations.push(format!("composite and direct germ differ at {z:?}"));
                }
            }
        }
    }
    sample.compositions_checked = checked;
    sample.violations = violations;
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct InvarianceReport {
    pub germs: usize,
    pub equivariance_checks: usize,
    pub sync_checks: usize,
    pub rigidity_checks: usize,
    pub composition_checks: usize,
    pub violations: Vec<String>,
}

/// Shift-equivariance, preservation of synchronization, rigidity of periodic points,
/// and composition of one-sided germs into two-sided ones, over the given arrows.
pub fn check_invariants(s: &Shift, arrows: &[Arrow], shifts: &[i64]) -> Result<InvarianceReport> {
    let mut r = InvarianceReport {
        germs: arrows.len(),
        ..Default::default()
    };
    for a in arrows {
        let g = &a.germ;
        for &k in shifts {
            r.equivariance_checks += 1;
            let h = g.conjugate(k);
            let ok = h.source == g.source.shift_by(k)
                && h.target == g.target.shift_by(k)
                && domain_samples(s, &h, 2).into_iter().take(4).all(|z| {
                    let direct = g.apply(s, &z.shift_by(-k)).map(|w| w.shift_by(k));
                    direct.is_ok() && h.apply(s, &z) == direct
                });
            if !ok {
                r.violations.push(format!(
                    "equivariance fails for shift {k} at {:?}",
                    g.source
                ));
            }
        }
        if g.kind == GermKind::Lc && is_synchronizing(s, &g.source)? {
            r.sync_checks += 1;
            if !is_synchronizing(s, &g.target)? {
                r.violations
                    .push(format!("synchronization lost at {:?}", g.target));
            }
        }
        if g.source.is_periodic() && g.target.is_periodic() {
            r.rigidity_checks += 1;
            if g.source != g.target {
                r.violations
                    .push(format!("distinct periodic endpoints {:?}", g.source));
            }
        }
        let (x, y) = (&g.source, &g.target);
        if g.kind == GermKind::Lc && x != y && is_synchronizing(s, x)? && is_synchronizing(s, y)? {
            if let (Ok(gu), Ok(gs)) = (lcs_germ(s, x, y), lcu_germ(s, x, y)) {
                r.composition_checks += 1;
                match compose_lcs_lcu(s, &gu, &gs, x, y).and_then(|c| {
                    validate_germ(s, &c, 2)?;
                    Ok(c)
                }) {
                    Ok(_) => {}
                    Err(e) => r.violations.push(format!("composite lc germ fails: {e}")),
                }
            }
        }
    }
    Ok(r)
}
