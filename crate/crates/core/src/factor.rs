//! Factor maps from edge shifts onto sofic shifts, read off a labeled graph.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::local::{left_states, point_in_shift, right_states};
use crate::periodic::enumerate_periodic;
use crate::point::{enumerate_points, BiSeq};
use crate::presentation::{Edge, Presentation, StateId};
use crate::shift::{Shift, Verdict};
use crate::stateset::StateSet;
use crate::sync::is_synchronizing;

/// The label map `π` from the edge shift of a graph onto the shift it presents.
#[derive(Clone, Debug)]
pub struct CoverMap {
    presentation: Presentation,
    source: Shift,
    target: Shift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ResolvingFlags {
    pub right_resolving: bool,
    pub left_resolving: bool,
}

fn edge_alphabet(count: usize) -> Result<Alphabet> {
    let width = count.saturating_sub(1).to_string().len();
    Alphabet::new((0..count).map(|i| format!("e{i:0width$}")))
}

impl CoverMap {
    pub fn new(name: &str, presentation: &Presentation) -> Result<Self> {
        let presentation = presentation.trimmed();
        let target = Shift::sofic(name, presentation.clone())?;
        let edges = presentation.edges();
        let alphabet = edge_alphabet(edges.len())?;
        let mut forbidden = Vec::new();
        for (i, e) in edges.iter().enumerate() {
            for (j, f) in edges.iter().enumerate() {
                if e.dst != f.src {
                    forbidden.push(vec![i as Symbol, j as Symbol]);
                }
            }
        }
        let source = Shift::sft(format!("edges({name})"), alphabet, forbidden)?;
        Ok(Self {
            presentation,
            source,
            target,
        })
    }

    /// The cover given by the defining presentation of a sofic shift or SFT.
    pub fn of_shift(s: &Shift) -> Result<Self> {
        Self::new(s.name(), s.require_presentation()?)
    }

    /// Relabels every edge by its own index, so `π` is a conjugacy onto the edge shift.
    pub fn identity_labeling(p: &Presentation) -> Result<Self> {
        let p = p.trimmed();
        let alphabet = edge_alphabet(p.edges().len())?;
        let edges = p
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| Edge {
                src: e.src,
                label: i as Symbol,
                dst: e.dst,
            })
            .collect();
        let relabeled = Presentation::new(alphabet, p.state_names().to_vec(), edges)?;
        Self::new("edges", &relabeled)
    }

    /// Product of two covers, onto the product of their targets.
    pub fn product(&self, other: &CoverMap) -> Result<Self> {
        let p = self.presentation.product(&other.presentation)?;
        Self::new(
            &format!("{}*{}", self.target.name(), other.target.name()),
            &p,
        )
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn source(&self) -> &Shift {
        &self.source
    }

    pub fn target(&self) -> &Shift {
        &self.target
    }

    pub fn label(&self, edge: Symbol) -> Symbol {
        self.presentation.edges()[edge as usize].label
    }

    /// `π(path)`: the labels read along an edge path.
    pub fn project(&self, path: &BiSeq) -> BiSeq {
        path.map_symbols(|e| self.label(e))
    }

    fn edge_index(&self, src: StateId, label: Symbol, dst: StateId) -> Symbol {
        let key = Edge { src, label, dst };
        self.presentation
            .edges()
            .binary_search(&key)
            .expect("edge on a path") as Symbol
    }
}

pub fn resolving_check(c: &CoverMap) -> ResolvingFlags {
    ResolvingFlags {
        right_resolving: c.presentation.is_deterministic(),
        left_resolving: c.presentation.is_left_resolving(),
    }
}

/// Upper bound on preimage counts of a resolving cover: its number of states.
pub fn degree_bound(c: &CoverMap) -> Result<usize> {
    let flags = resolving_check(c);
    if flags.right_resolving || flags.left_resolving {
        Ok(c.presentation.num_states())
    } else {
        Err(Error::NotResolving)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Preimages {
    pub count: usize,
    /// Edge paths reading the point, sorted.
    pub paths: Vec<BiSeq>,
}

/// States on bi-infinite paths reading `x`, at coordinate `k`.
fn live_states(p: &Presentation, x: &BiSeq, k: i64) -> StateSet {
    left_states(p, x, k).intersection(&right_states(p, x, k))
}

/// First repeat `(t1, t2)` in a sequence of states.
fn first_repeat(states: &[StateId]) -> (usize, usize) {
    for t2 in 1..states.len() {
        if let Some(t1) = states[..t2].iter().position(|&s| s == states[t2]) {
            return (t1, t2);
        }
    }
    unreachable!("sequence longer than the state count repeats")
}

/// Paths through a right-resolving graph, as state sequences read off coordinates.
fn right_resolving_preimages(c: &CoverMap, x: &BiSeq) -> Vec<BiSeq> {
    let p = &c.presentation;
    let q = p.num_states();
    let (pl, pr) = (x.left_period() as i64, x.right_period() as i64);
    // The live sets below the core are eventually periodic in steps of `pl`, with
    // non-decreasing size; past `2^|Q|` steps the size no longer changes.
    let deep = x.origin() - (1i64 << q.min(20)) * pl;
    let span = (q as i64 + 1) * pl.max(pr);
    let lo = deep - span;
    let hi = x.core_end() + span;
    let mut paths = Vec::new();
    for start in live_states(p, x, deep).iter() {
        // Forward: unique by right resolution.
        let mut fwd = vec![start];
        for i in deep..hi {
            let cur = *fwd.last().unwrap();
            let next = p.next_state(cur, x.at(i)).expect("live state extends");
            fwd.push(next);
        }
        // Backward: unique among live predecessors once the size has stabilized.
        let mut bwd = vec![start];
        for i in (lo..deep).rev() {
            let cur = *bwd.last().unwrap();
            let live = live_states(p, x, i);
            let prev = p
                .in_edges(cur)
                .map(|(_, e)| e)
                .find(|e| e.label == x.at(i) && live.contains(e.src))
                .expect("live state has a live predecessor")
                .src;
            bwd.push(prev);
        }
        let state_at = |i: i64| -> StateId {
            if i >= deep {
                fwd[(i - deep) as usize]
            } else {
                bwd[(deep - i) as usize]
            }
        };
        let edge_at = |i: i64| c.edge_index(state_at(i), x.at(i), state_at(i + 1));

        let right_marks: Vec<StateId> = (0..=q as i64)
            .map(|t| state_at(x.core_end() + t * pr))
            .collect();
        let (r1, r2) = first_repeat(&right_marks);
        let left_marks: Vec<StateId> = (0..=q as i64).map(|t| state_at(deep - t * pl)).collect();
        let (l1, l2) = first_repeat(&left_marks);
        let left_cut = deep - l1 as i64 * pl;
        let right_cut = x.core_end() + r1 as i64 * pr;
        let left: Word = (deep - l2 as i64 * pl..left_cut).map(edge_at).collect();
        let core: Word = (left_cut..right_cut).map(edge_at).collect();
        let right: Word = (right_cut..x.core_end() + r2 as i64 * pr)
            .map(edge_at)
            .collect();
        paths.push(BiSeq::new(left, core, right, left_cut).expect("non-empty cycles"));
    }
    paths
}

/// All edge paths reading `x`; exact for resolving covers.
pub fn preimage_count(c: &CoverMap, x: &BiSeq) -> Result<Preimages> {
    if point_in_shift(&c.target, x) != Verdict::Yes {
        return Err(Error::NotInShift);
    }
    let flags = resolving_check(c);
    let mut paths = if flags.right_resolving {
        right_resolving_preimages(c, x)
    } else if flags.left_resolving {
        let mirrored = CoverMap::new(c.target.name(), &c.presentation.reversed())?;
        right_resolving_preimages(&mirrored, &x.reversed())
            .into_iter()
            .map(|path| {
                path.reversed().map_symbols(|e| {
                    let edge = mirrored.presentation.edges()[e as usize];
                    c.edge_index(edge.dst, edge.label, edge.src)
                })
            })
            .collect()
    } else {
        return Err(Error::NotResolving);
    };
    paths.sort();
    paths.dedup();
    debug_assert!(paths.iter().all(|path| c.project(path) == *x));
    Ok(Preimages {
        count: paths.len(),
        paths,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub bound: usize,
    pub max_observed: usize,
    pub samples: usize,
    /// Points whose preimage count exceeds the bound.
    pub violations: Vec<BiSeq>,
}

/// Preimage counts of every target point with description size at most `max_size`.
pub fn degree_check(c: &CoverMap, max_size: usize) -> Result<DegreeReport> {
    let bound = degree_bound(c)?;
    let mut report = DegreeReport {
        bound,
        max_observed: 0,
        samples: 0,
        violations: Vec::new(),
    };
    for x in enumerate_points(c.target.alphabet(), max_size) {
        if point_in_shift(&c.target, &x) != Verdict::Yes {
            continue;
        }
        let count = preimage_count(c, &x)?.count;
        report.samples += 1;
        report.max_observed = report.max_observed.max(count);
        if count > bound {
            report.violations.push(x);
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExceptionalPoint {
    pub point: BiSeq,
    pub count: usize,
    pub synchronizing: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlmostOneToOneReport {
    pub periodic_checked: usize,
    /// Periodic points with more than one preimage.
    pub exceptional: Vec<ExceptionalPoint>,
}

impl AlmostOneToOneReport {
    /// Whether every synchronizing periodic point has a unique preimage.
    pub fn passed(&self) -> bool {
        self.exceptional.iter().all(|e| !e.synchronizing)
    }
}

pub fn almost_one_to_one_check(c: &CoverMap, max_period: usize) -> Result<AlmostOneToOneReport> {
    let mut points = BTreeSet::new();
    for n in 1..=max_period {
        points.extend(enumerate_periodic(&c.target, n)?.points);
    }
    let mut exceptional = Vec::new();
    for x in &points {
        let count = preimage_count(c, x)?.count;
        if count != 1 {
            exceptional.push(ExceptionalPoint {
                point: x.clone(),
                count,
                synchronizing: is_synchronizing(&c.target, x)?,
            });
        }
    }
    Ok(AlmostOneToOneReport {
        periodic_checked: points.len(),
        exceptional,
    })
}
