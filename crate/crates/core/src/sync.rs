//! Synchronizing words and points, rectangles, density, and the non-synchronizing set.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};
use crate::local::{bracket, left_states, point_in_shift, right_states};
use crate::point::{lcm, BiSeq};
use crate::presentation::{subset_automaton, Presentation, StateId};
use crate::shift::{Shift, Verdict};
use crate::stateset::StateSet;

/// Whether `w` focuses the Fischer cover onto a single state.
pub fn is_sync_word(s: &Shift, w: &[Symbol]) -> Result<bool> {
    if let Some(o) = s.oracle_ref() {
        let test = o
            .sync_word
            .ok_or_else(|| Error::Unsupported(format!("sync words of oracle `{}`", o.name)))?;
        if !o.query(w)? {
            return Err(Error::NotInLanguage);
        }
        return Ok(test(w));
    }
    let f = s.fischer_cover()?;
    let t = f.terminal_set(w);
    if t.is_empty() {
        return Err(Error::NotInLanguage);
    }
    Ok(t.len() == 1)
}

/// All synchronizing words of length at most `max_len`, shortest first.
pub fn sync_words(s: &Shift, max_len: usize) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for len in 0..=max_len {
        for w in s.alphabet().all_words(len) {
            if s.contains_word(&w)? && is_sync_word(s, &w)? {
                out.push(w);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum SyncStatus {
    Synchronizing,
    NonSynchronizing,
    Unverified,
}

impl std::fmt::Display for SyncStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SyncStatus::Synchronizing => "synchronizing",
            SyncStatus::NonSynchronizing => "nonSynchronizing",
            SyncStatus::Unverified => "unverified",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyncVerdict {
    pub status: SyncStatus,
    /// The central word `x_[-r, r]` that synchronizes.
    pub witness: Option<Word>,
    /// The radius `r` of the witness.
    pub radius: Option<u32>,
    /// Largest radius examined.
    pub window_used: u64,
}

/// Radius after which the cardinality of the central terminal set can no longer change.
///
/// Past the core, the left part of the central word runs through a nested chain of
/// subsets (at most `|Q|` strict steps per left period) and the right part through an
/// eventually periodic orbit of at most `2^|Q|` subsets per right period.
pub fn stabilization_bound(s: &Shift, x: &BiSeq) -> Result<u64> {
    let q = s.fischer_cover()?.num_states() as u32;
    let extent = x.origin().unsigned_abs().max(x.core_end().unsigned_abs());
    let period = lcm(x.left_period(), x.right_period());
    let subsets = 1u64.checked_shl(q).unwrap_or(u64::MAX);
    Ok(extent.saturating_add(subsets.saturating_add(q as u64 + 1).saturating_mul(period)))
}

pub fn classify_point(s: &Shift, x: &BiSeq) -> Result<SyncVerdict> {
    classify_point_with_bound(s, x, None)
}

/// As [`classify_point`], with an optional override of the search radius.
pub fn classify_point_with_bound(s: &Shift, x: &BiSeq, bound: Option<u64>) -> Result<SyncVerdict> {
    match point_in_shift(s, x) {
        Verdict::No => return Err(Error::NotInShift),
        Verdict::Yes | Verdict::Unverified => {}
    }
    if let Some(o) = s.oracle_ref() {
        let max_radius = bound.unwrap_or((o.window_bound.saturating_sub(1) / 2) as u64);
        let max_radius = max_radius.min((o.window_bound.saturating_sub(1) / 2) as u64);
        if let Some(test) = o.sync_word {
            for r in 0..=max_radius {
                let w = x.window(-(r as i64), r as i64 + 1);
                if test(&w) && (o.admits)(&w) {
                    return Ok(SyncVerdict {
                        status: SyncStatus::Synchronizing,
                        witness: Some(w),
                        radius: Some(r as u32),
                        window_used: r,
                    });
                }
            }
        }
        return Ok(SyncVerdict {
            status: SyncStatus::Unverified,
            witness: None,
            radius: None,
            window_used: max_radius,
        });
    }
    let f = s.fischer_cover()?;
    let limit = match bound {
        Some(b) => b,
        None => stabilization_bound(s, x)?,
    };
    for r in 0..=limit {
        let w = x.window(-(r as i64), r as i64 + 1);
        if f.terminal_set(&w).len() == 1 {
            return Ok(SyncVerdict {
                status: SyncStatus::Synchronizing,
                witness: Some(w),
                radius: Some(r as u32),
                window_used: r,
            });
        }
    }
    Ok(SyncVerdict {
        status: SyncStatus::NonSynchronizing,
        witness: None,
        radius: None,
        window_used: limit,
    })
}

pub fn is_synchronizing(s: &Shift, x: &BiSeq) -> Result<bool> {
    Ok(classify_point(s, x)?.status == SyncStatus::Synchronizing)
}

/// Radius of the synchronizing witness of `x`, or `NotSynchronizing`.
pub(crate) fn witness_radius(s: &Shift, x: &BiSeq) -> Result<u32> {
    let v = classify_point(s, x)?;
    match (v.status, v.radius) {
        (SyncStatus::Synchronizing, Some(r)) => Ok(r),
        _ => Err(Error::NotSynchronizing),
    }
}

/// Points `x_{<n} v r^inf` (unstable side) with `|v| + |r| <= budget`, members only.
pub(crate) fn unstable_representatives(
    p: &Presentation,
    s: &Shift,
    x: &BiSeq,
    n: i64,
    budget: usize,
) -> Vec<BiSeq> {
    let before = left_states(p, x, n);
    let mut out = BTreeSet::new();
    for total in 1..=budget {
        for r_len in 1..=total {
            for r in s.alphabet().all_words(r_len) {
                for v in s.alphabet().all_words(total - r_len) {
                    let future = BiSeq::new(r.clone(), v, r.clone(), n).expect("non-empty tails");
                    if before.intersects(&right_states(p, &future, n)) {
                        out.insert(BiSeq::glue(x, n, &future));
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Points `r^inf v x_{>=n}` (stable side) with `|v| + |r| <= budget`, members only.
pub(crate) fn stable_representatives(
    p: &Presentation,
    s: &Shift,
    x: &BiSeq,
    n: i64,
    budget: usize,
) -> Vec<BiSeq> {
    let after = right_states(p, x, n);
    let mut out = BTreeSet::new();
    for total in 1..=budget {
        for r_len in 1..=total {
            for r in s.alphabet().all_words(r_len) {
                for v in s.alphabet().all_words(total - r_len) {
                    let start = n - v.len() as i64;
                    let past = BiSeq::new(r.clone(), v, r.clone(), start).expect("non-empty tails");
                    if after.intersects(&left_states(p, &past, n)) {
                        out.insert(BiSeq::glue(&past, n, x));
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RectangleReport {
    /// Representatives of the local unstable set.
    pub unstable: usize,
    /// Representatives of the local stable set.
    pub stable: usize,
    /// Pairs whose splice was decided (all of them, through state sets).
    pub pairs_checked: usize,
    /// Pairs on which the bracket and `h_x` were evaluated explicitly.
    pub inverse_checked: usize,
    pub failures: Vec<(BiSeq, BiSeq)>,
}

impl RectangleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.unstable > 0 && self.stable > 0
    }
}

const FULL_PAIRING_LIMIT: usize = 4096;

/// Brute-force check of the local product structure at `x` with radius `2^-n`.
///
/// Every unstable representative `y` and stable representative `z` (tails fitting in
/// `budget` symbols) must bracket into the shift, and `h_x(w) = ([w, x], [x, w])` must
/// recover `(y, z)` from `w = [y, z]`.
pub fn rectangle_check(s: &Shift, x: &BiSeq, n: u32, budget: usize) -> Result<RectangleReport> {
    let radius = witness_radius(s, x)?;
    if radius + 1 > n {
        return Err(Error::WindowTooSmall(n, radius + 1));
    }
    if n < 2 {
        return Err(Error::WindowTooSmall(n, 2));
    }
    let p = s.require_presentation()?;
    let ni = n as i64;
    let ys = unstable_representatives(p, s, x, ni, budget);
    let zs = stable_representatives(p, s, x, 1 - ni, budget);
    let mut report = RectangleReport {
        unstable: ys.len(),
        stable: zs.len(),
        ..Default::default()
    };
    if ys.is_empty() || zs.is_empty() {
        return Err(Error::WindowTooSmall(n, radius + 1));
    }

    // The splice [y, z] is a member iff the states left of 0 along z meet those right of 0 along y.
    let mut futures: HashMap<StateSet, usize> = HashMap::new();
    for (i, y) in ys.iter().enumerate() {
        futures.entry(right_states(p, y, 0)).or_insert(i);
    }
    let mut pasts: HashMap<StateSet, usize> = HashMap::new();
    for (j, z) in zs.iter().enumerate() {
        pasts.entry(left_states(p, z, 0)).or_insert(j);
    }
    for (fs, &i) in &futures {
        for (ps, &j) in &pasts {
            if !fs.intersects(ps) {
                report.failures.push((ys[i].clone(), zs[j].clone()));
            }
        }
    }
    report.failures.sort();
    report.pairs_checked = ys.len() * zs.len();

    let pairs: Vec<(usize, usize)> = if ys.len() * zs.len() <= FULL_PAIRING_LIMIT {
        (0..ys.len())
            .flat_map(|i| (0..zs.len()).map(move |j| (i, j)))
            .collect()
    } else {
        let k = ys.len().max(zs.len());
        (0..k)
            .map(|t| (t % ys.len(), (t * 7 + 3) % zs.len()))
            .collect()
    };
    let mut images = BTreeSet::new();
    for (i, j) in pairs {
        let (y, z) = (&ys[i], &zs[j]);
        report.inverse_checked += 1;
        let ok = match bracket(s, y, z, n) {
            Ok(w) => {
                let back = (bracket(s, &w, x, n), bracket(s, x, &w, n));
                let fresh = images.insert(w);
                fresh && back == (Ok(y.clone()), Ok(z.clone()))
            }
            Err(_) => false,
        };
        if !ok {
            report.failures.push((y.clone(), z.clone()));
        }
    }
    report.failures.dedup();
    Ok(report)
}

/// A pair in the `2^-n` cylinder of `x` whose splice leaves the shift, if any.
///
/// Searches the same representatives as [`rectangle_check`], without requiring `x`
/// to be synchronizing.
pub fn splice_counterexample(
    s: &Shift,
    x: &BiSeq,
    n: u32,
    budget: usize,
) -> Result<Option<(BiSeq, BiSeq)>> {
    let p = s.require_presentation()?;
    let ni = n as i64;
    let ys = unstable_representatives(p, s, x, ni, budget);
    let zs = stable_representatives(p, s, x, 1 - ni, budget);
    let pasts: Vec<StateSet> = zs.iter().map(|z| left_states(p, z, 0)).collect();
    for y in &ys {
        let fs = right_states(p, y, 0);
        if let Some(j) = pasts.iter().position(|ps| !ps.intersects(&fs)) {
            return Ok(Some((y.clone(), zs[j].clone())));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finiteness {
    Finite(Vec<BiSeq>),
    Infinite,
}

#[derive(Clone, Debug)]
pub struct NonSyncReport {
    /// Subset graph whose bi-infinite paths read exactly the non-synchronizing points.
    pub presentation: Presentation,
    pub finiteness: Finiteness,
}

impl NonSyncReport {
    pub fn count(&self) -> Option<usize> {
        match &self.finiteness {
            Finiteness::Finite(points) => Some(points.len()),
            Finiteness::Infinite => None,
        }
    }

    pub fn points(&self) -> Option<&[BiSeq]> {
        match &self.finiteness {
            Finiteness::Finite(points) => Some(points),
            Finiteness::Infinite => None,
        }
    }
}

/// The subshift of points none of whose factors is synchronizing.
///
/// Built from subsets of Fischer-cover states of size at least two reachable from the
/// full set. The trimmed graph is deterministic, so it carries finitely many points
/// exactly when it is a disjoint union of cycles.
pub fn nonsync_subshift(s: &Shift) -> Result<NonSyncReport> {
    let f = s.fischer_cover()?;
    let (graph, _) = subset_automaton(f, |set| set.len() >= 2);
    let graph = graph.trimmed();
    let n = graph.num_states();
    let simple = (0..n).all(|q| graph.out_edges(q).count() == 1);
    if !simple {
        return Ok(NonSyncReport {
            presentation: graph,
            finiteness: Finiteness::Infinite,
        });
    }
    let mut seen = vec![false; n];
    let mut points = BTreeSet::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut label = Vec::new();
        let mut q = start;
        while !seen[q] {
            seen[q] = true;
            let (_, e) = graph.out_edges(q).next().expect("out-degree one");
            label.push(e.label);
            q = e.dst;
        }
        let base = BiSeq::periodic(&label);
        for j in 0..label.len() as i64 {
            points.insert(base.shift_by(j));
        }
    }
    Ok(NonSyncReport {
        presentation: graph,
        finiteness: Finiteness::Finite(points.into_iter().collect()),
    })
}

/// Outcome of a density check over all words of bounded length.
#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub words_checked: usize,
    /// Each word with the point found for it (the word sits at coordinates `[0, |w|)`).
    pub witnesses: Vec<(Word, BiSeq)>,
    /// Words for which no point was found.
    pub failures: Vec<Word>,
    /// `Yes` when every witness is verified exactly, `Unverified` when only up to an
    /// oracle window, `No` when some word has no witness.
    pub status: Verdict,
}

impl DensityReport {
    pub fn passed(&self) -> bool {
        self.status != Verdict::No
    }
}

/// Language words of length `1..=max_len` in lexicographic order within each length.
pub(crate) fn language_words(s: &Shift, max_len: usize) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for w in s.alphabet().all_words(len) {
            if s.contains_word(&w)? {
                out.push(w);
            }
        }
    }
    Ok(out)
}

/// Shortest word labeling a path from `from` to `to`.
pub(crate) fn shortest_path(p: &Presentation, from: StateId, to: StateId) -> Option<Word> {
    let mut prev: Vec<Option<(StateId, Symbol)>> = vec![None; p.num_states()];
    let mut seen = vec![false; p.num_states()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(q) = queue.pop_front() {
        if q == to {
            let mut word = Vec::new();
            let mut cur = to;
            while cur != from {
                let (parent, a) = prev[cur].expect("path recorded");
                word.push(a);
                cur = parent;
            }
            word.reverse();
            return Some(word);
        }
        for (_, e) in p.out_edges(q) {
            if !seen[e.dst] {
                seen[e.dst] = true;
                prev[e.dst] = Some((q, e.label));
                queue.push_back(e.dst);
            }
        }
    }
    None
}

/// Shortest word `c` with `min_len <= |c| <= max_len` such that some run from `from`
/// reading `c` ends in `to`.
pub(crate) fn connecting_word(
    p: &Presentation,
    from: &StateSet,
    to: &StateSet,
    min_len: usize,
    max_len: usize,
) -> Option<Word> {
    type Key = (StateSet, usize);
    let start: Key = (from.clone(), 0);
    let mut prev: HashMap<Key, Option<(Key, Symbol)>> = HashMap::new();
    prev.insert(start.clone(), None);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((key, len)) = queue.pop_front() {
        if len >= min_len && key.0.intersects(to) {
            let mut word = Vec::new();
            let mut cur = key;
            while let Some(Some((parent, a))) = prev.get(&cur).cloned() {
                word.push(a);
                cur = parent;
            }
            word.reverse();
            return Some(word);
        }
        if len == max_len {
            continue;
        }
        for a in p.alphabet().symbols() {
            let next = p.step(&key.0, a);
            if next.is_empty() {
                continue;
            }
            let k = (next, (len + 1).min(min_len));
            if !prev.contains_key(&k) {
                prev.insert(k.clone(), Some((key.clone(), a)));
                queue.push_back((k, len + 1));
            }
        }
    }
    None
}

/// Shortest word taking the subset `start` to a singleton.
fn focusing_word(p: &Presentation, start: &StateSet) -> Option<Word> {
    let mut prev: HashMap<StateSet, Option<(StateSet, Symbol)>> = HashMap::new();
    prev.insert(start.clone(), None);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(set) = queue.pop_front() {
        if set.len() == 1 {
            let mut word = Vec::new();
            let mut cur = set;
            while let Some(Some((parent, a))) = prev.get(&cur).cloned() {
                word.push(a);
                cur = parent;
            }
            word.reverse();
            return Some(word);
        }
        for a in p.alphabet().symbols() {
            let next = p.step(&set, a);
            if !next.is_empty() && !prev.contains_key(&next) {
                prev.insert(next.clone(), Some((set.clone(), a)));
                queue.push_back(next);
            }
        }
    }
    None
}

/// A cycle of `p` whose label starts with `w`, returned as its full label.
pub(crate) fn close_cycle(p: &Presentation, w: &[Symbol]) -> Option<Word> {
    (0..p.num_states())
        .filter_map(|s0| {
            let end = p.run(&StateSet::singleton(p.num_states(), s0), w).first()?;
            let back = shortest_path(p, end, s0)?;
            Some([w, &back[..]].concat())
        })
        .filter(|c| !c.is_empty())
        .min_by_key(|c| (c.len(), c.clone()))
}

/// Searches extensions `w e` whose periodic closure passes every oracle window check.
pub(crate) fn oracle_closure(
    s: &Shift,
    w: &[Symbol],
    max_ext: usize,
    accept: impl Fn(&[Symbol]) -> bool,
) -> Option<Word> {
    let o = s.oracle_ref()?;
    let admitted = |u: &[Symbol]| {
        let bound = o.window_bound;
        let reps = bound / u.len() + 2;
        let text: Word = u.iter().copied().cycle().take(u.len() * reps).collect();
        text.windows(bound.min(text.len())).all(|f| (o.admits)(f))
    };
    let mut layer = vec![w.to_vec()];
    for _ in 0..=max_ext {
        for u in &layer {
            if accept(u) && admitted(u) {
                return Some(u.clone());
            }
        }
        let mut next = Vec::new();
        for u in &layer {
            for a in s.alphabet().symbols() {
                let mut v = u.clone();
                v.push(a);
                if v.len() <= o.window_bound && (o.admits)(&v) {
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    None
}

/// Default extension depth for oracle witness searches.
pub const ORACLE_SEARCH_DEPTH: usize = 12;

/// For each word of length at most `max_len`, a synchronizing point whose central
/// block contains it.
pub fn sync_density_check(s: &Shift, max_len: usize) -> Result<DensityReport> {
    let words = language_words(s, max_len)?;
    let mut report = DensityReport {
        words_checked: words.len(),
        witnesses: Vec::new(),
        failures: Vec::new(),
        status: Verdict::Yes,
    };
    if s.is_oracle() {
        let sync = s
            .oracle_ref()
            .and_then(|o| o.sync_word)
            .ok_or_else(|| Error::Unsupported(format!("sync words of oracle `{}`", s.name())))?;
        for w in words {
            match oracle_closure(s, &w, ORACLE_SEARCH_DEPTH, sync) {
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
    let f = s.fischer_cover()?;
    for w in words {
        let found = focusing_word(f, &f.terminal_set(&w)).and_then(|v| {
            let wv = [&w[..], &v[..]].concat();
            close_cycle(f, &wv)
        });
        let point = found.map(|c| BiSeq::periodic(&c)).filter(|x| {
            point_in_shift(s, x) == Verdict::Yes
                && x.window(0, w.len() as i64) == w
                && is_synchronizing(s, x).unwrap_or(false)
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    fn pt(s: &Shift, lit: &str) -> BiSeq {
        BiSeq::parse(s.alphabet(), lit).unwrap()
    }

    #[test]
    fn sync_word_examples() {
        let even = builtins::even();
        assert!(is_sync_word(&even, &[1]).unwrap());
        assert!(!is_sync_word(&even, &[0, 0]).unwrap());
        assert!(!is_sync_word(&even, &[]).unwrap());
        let golden = builtins::golden_mean();
        assert!(is_sync_word(&golden, &[1]).unwrap());
        assert!(is_sync_word(&golden, &[0]).unwrap());
        assert_eq!(is_sync_word(&golden, &[1, 1]), Err(Error::NotInLanguage));
        let ray = builtins::nonsofic_ray();
        assert!(is_sync_word(&ray, &[2, 0, 1]).unwrap());
        assert!(!is_sync_word(&ray, &[1, 1]).unwrap());
    }

    #[test]
    fn classification_examples() {
        let even = builtins::even();
        let zeros = classify_point(&even, &BiSeq::constant(0)).unwrap();
        assert_eq!(zeros.status, SyncStatus::NonSynchronizing);
        let ones = classify_point(&even, &BiSeq::constant(1)).unwrap();
        assert_eq!(ones.status, SyncStatus::Synchronizing);
        assert_eq!(ones.witness, Some(vec![1]));
        // A 1 far out: the witness radius reaches it.
        let far = pt(&even, "L=0 C=1 O=-4 R=0");
        let v = classify_point(&even, &far).unwrap();
        assert_eq!(v.status, SyncStatus::Synchronizing);
        assert_eq!(v.radius, Some(4));
        assert_eq!(
            classify_point(&even, &pt(&even, "L=1 C=010 O=0 R=1")),
            Err(Error::NotInShift)
        );
        let golden = builtins::golden_mean();
        for lit in ["L=0 C= O=0 R=0", "L=01 C= O=0 R=01", "L=0 C=1 O=3 R=0"] {
            let v = classify_point(&golden, &pt(&golden, lit)).unwrap();
            assert_eq!(v.status, SyncStatus::Synchronizing, "{lit}");
        }
    }

    #[test]
    fn classification_is_shift_invariant() {
        let even = builtins::even();
        for lit in [
            "L=0 C= O=0 R=0",
            "L=0 C=1 O=5 R=0",
            "L=1 C=00 O=2 R=1",
            "L=0 C= O=0 R=1",
        ] {
            let x = pt(&even, lit);
            let base = classify_point(&even, &x).unwrap().status;
            for k in -7..7 {
                assert_eq!(classify_point(&even, &x.shift_by(k)).unwrap().status, base);
            }
        }
    }

    #[test]
    fn oracle_classification() {
        let ray = builtins::nonsofic_ray();
        let rest = BiSeq::constant(0);
        assert_eq!(
            classify_point(&ray, &rest).unwrap().status,
            SyncStatus::Synchronizing
        );
        let climb = pt(&ray, "L=b C= O=0 R=b");
        assert_eq!(
            classify_point(&ray, &climb).unwrap().status,
            SyncStatus::Unverified
        );
    }

    #[test]
    fn rectangles_at_synchronizing_points() {
        let golden = builtins::golden_mean();
        let r = rectangle_check(&golden, &BiSeq::constant(0), 2, 6).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.unstable > 1 && r.stable > 1);
        let even = builtins::even();
        let r = rectangle_check(&even, &BiSeq::constant(1), 2, 6).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(
            rectangle_check(&even, &BiSeq::constant(0), 2, 6).unwrap_err(),
            Error::NotSynchronizing
        );
        let far = pt(&even, "L=0 C=1 O=-2 R=0");
        assert_eq!(
            rectangle_check(&even, &far, 2, 4).unwrap_err(),
            Error::WindowTooSmall(2, 3)
        );
    }

    #[test]
    fn nonsynchronizing_points_have_bad_splices() {
        let even = builtins::even();
        for n in 1..=5 {
            let bad = splice_counterexample(&even, &BiSeq::constant(0), n, 4).unwrap();
            assert!(bad.is_some(), "n = {n}");
        }
        assert!(splice_counterexample(&even, &BiSeq::constant(1), 2, 4)
            .unwrap()
            .is_none());
    }

    #[test]
    fn nonsync_sets() {
        let even = builtins::even();
        let r = nonsync_subshift(&even).unwrap();
        assert_eq!(r.points(), Some(&[BiSeq::constant(0)][..]));
        let golden = builtins::golden_mean();
        assert_eq!(nonsync_subshift(&golden).unwrap().count(), Some(0));
        let full = builtins::full2();
        assert_eq!(nonsync_subshift(&full).unwrap().count(), Some(0));
        // (0^inf, anything) is non-synchronizing in the square of the even shift.
        let square = even.product(&even).unwrap();
        assert_eq!(
            nonsync_subshift(&square).unwrap().finiteness,
            Finiteness::Infinite
        );
    }

    #[test]
    fn nonsync_points_agree_with_classification() {
        let even = builtins::even();
        let listed = nonsync_subshift(&even).unwrap().points().unwrap().to_vec();
        for n in 1..=6 {
            for w in even.alphabet().all_words(n) {
                let x = BiSeq::periodic(&w);
                if point_in_shift(&even, &x) != Verdict::Yes {
                    continue;
                }
                let sync = is_synchronizing(&even, &x).unwrap();
                assert_eq!(sync, !listed.contains(&x), "{w:?}");
            }
        }
    }

    #[test]
    fn density() {
        for s in [builtins::golden_mean(), builtins::even()] {
            let r = sync_density_check(&s, 6).unwrap();
            assert_eq!(r.status, Verdict::Yes, "{:?}", r.failures);
            assert_eq!(r.witnesses.len(), r.words_checked);
        }
        let ray = builtins::nonsofic_ray();
        let r = sync_density_check(&ray, 3).unwrap();
        assert_eq!(r.status, Verdict::Unverified, "{:?}", r.failures);
    }

    #[test]
    fn openness_of_synchronizing_cylinders() {
        let even = builtins::even();
        let x = pt(&even, "L=0 C=1 O=1 R=0");
        let r = witness_radius(&even, &x).unwrap() as i64;
        let alphabet = even.alphabet().clone();
        for tail in 1..=3 {
            for w in alphabet.all_words(tail) {
                let y = BiSeq::glue(&x, r + 1, &BiSeq::periodic(&w));
                if point_in_shift(&even, &y) == Verdict::Yes {
                    assert!(is_synchronizing(&even, &y).unwrap());
                }
            }
        }
    }
}
