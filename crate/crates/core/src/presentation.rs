//! Labeled graphs presenting subshifts.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::stateset::StateSet;

pub type StateId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub src: StateId,
    pub label: Symbol,
    pub dst: StateId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructureFlags {
    pub irreducible: bool,
    pub mixing: bool,
    /// gcd of all cycle lengths; 0 for a graph without cycles.
    pub period: u64,
}

/// A finite labeled graph. Edge order is canonical: sorted by (src, label, dst).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    states: Vec<String>,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, states: Vec<String>, mut edges: Vec<Edge>) -> Result<Self> {
        for (i, s) in states.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::InvalidPresentation(format!("bad state name `{s}`")));
            }
            if states[..i].contains(s) {
                return Err(Error::InvalidPresentation(format!("duplicate state `{s}`")));
            }
        }
        for e in &edges {
            if e.src >= states.len() || e.dst >= states.len() {
                return Err(Error::InvalidPresentation(
                    "edge endpoint out of range".into(),
                ));
            }
            if e.label as usize >= alphabet.len() {
                return Err(Error::InvalidPresentation("edge label out of range".into()));
            }
        }
        edges.sort();
        let mut out = vec![Vec::new(); states.len()];
        let mut inc = vec![Vec::new(); states.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.src].push(i);
            inc[e.dst].push(i);
        }
        Ok(Self {
            alphabet,
            states,
            edges,
            out,
            inc,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q]
    }

    pub fn state_index(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, q: StateId) -> impl Iterator<Item = (usize, &Edge)> {
        self.out[q].iter().map(|&i| (i, &self.edges[i]))
    }

    pub fn in_edges(&self, q: StateId) -> impl Iterator<Item = (usize, &Edge)> {
        self.inc[q].iter().map(|&i| (i, &self.edges[i]))
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Removes states that do not lie on a bi-infinite path.
    pub fn trimmed(&self) -> Presentation {
        let n = self.num_states();
        let mut alive = vec![true; n];
        let mut indeg: Vec<usize> = self.inc.iter().map(Vec::len).collect();
        let mut outdeg: Vec<usize> = self.out.iter().map(Vec::len).collect();
        let mut queue: VecDeque<StateId> = (0..n)
            .filter(|&q| indeg[q] == 0 || outdeg[q] == 0)
            .collect();
        while let Some(q) = queue.pop_front() {
            if !alive[q] {
                continue;
            }
            alive[q] = false;
            for &i in &self.out[q] {
                let d = self.edges[i].dst;
                if alive[d] && d != q {
                    indeg[d] -= 1;
                    if indeg[d] == 0 {
                        queue.push_back(d);
                    }
                }
            }
            for &i in &self.inc[q] {
                let s = self.edges[i].src;
                if alive[s] && s != q {
                    outdeg[s] -= 1;
                    if outdeg[s] == 0 {
                        queue.push_back(s);
                    }
                }
            }
        }
        self.restrict(&alive)
    }

    pub fn is_trim(&self) -> bool {
        (0..self.num_states()).all(|q| !self.out[q].is_empty() && !self.inc[q].is_empty())
    }

    /// Subgraph induced by the states with `keep[q]`, order preserved.
    pub fn restrict(&self, keep: &[bool]) -> Presentation {
        let mut map = vec![usize::MAX; self.num_states()];
        let mut states = Vec::new();
        for (q, name) in self.states.iter().enumerate() {
            if keep[q] {
                map[q] = states.len();
                states.push(name.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep[e.src] && keep[e.dst])
            .map(|e| Edge {
                src: map[e.src],
                label: e.label,
                dst: map[e.dst],
            })
            .collect();
        Presentation::new(self.alphabet.clone(), states, edges).expect("restriction is valid")
    }

    /// Right-resolving: no state has two out-edges with the same label.
    pub fn is_deterministic(&self) -> bool {
        self.out.iter().all(|es| {
            es.windows(2)
                .all(|w| self.edges[w[0]].label != self.edges[w[1]].label)
        })
    }

    /// No state has two in-edges with the same label.
    pub fn is_left_resolving(&self) -> bool {
        self.inc.iter().all(|es| {
            let mut labels: Vec<Symbol> = es.iter().map(|&i| self.edges[i].label).collect();
            labels.sort_unstable();
            labels.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// First successor of `q` along `label`; the unique one when deterministic.
    pub fn next_state(&self, q: StateId, label: Symbol) -> Option<StateId> {
        self.out_edges(q)
            .find(|(_, e)| e.label == label)
            .map(|(_, e)| e.dst)
    }

    pub fn step(&self, set: &StateSet, label: Symbol) -> StateSet {
        let mut next = StateSet::empty(self.num_states());
        for q in set.iter() {
            for (_, e) in self.out_edges(q) {
                if e.label == label {
                    next.insert(e.dst);
                }
            }
        }
        next
    }

    pub fn pre_step(&self, set: &StateSet, label: Symbol) -> StateSet {
        let mut prev = StateSet::empty(self.num_states());
        for q in set.iter() {
            for (_, e) in self.in_edges(q) {
                if e.label == label {
                    prev.insert(e.src);
                }
            }
        }
        prev
    }

    pub fn run(&self, set: &StateSet, word: &[Symbol]) -> StateSet {
        let mut cur = set.clone();
        for &a in word {
            if cur.is_empty() {
                break;
            }
            cur = self.step(&cur, a);
        }
        cur
    }

    pub fn pre_run(&self, set: &StateSet, word: &[Symbol]) -> StateSet {
        let mut cur = set.clone();
        for &a in word.iter().rev() {
            if cur.is_empty() {
                break;
            }
            cur = self.pre_step(&cur, a);
        }
        cur
    }

    pub fn all_states(&self) -> StateSet {
        StateSet::full(self.num_states())
    }

    /// Terminal states of all runs of `word`.
    pub fn terminal_set(&self, word: &[Symbol]) -> StateSet {
        self.run(&self.all_states(), word)
    }

    /// Word acceptance; on a trimmed graph this is membership in the language.
    pub fn accepts(&self, word: &[Symbol]) -> bool {
        !self.terminal_set(word).is_empty()
    }

    pub fn adjacency(&self) -> IntMatrix {
        let n = self.num_states();
        let mut m = IntMatrix::zeros(n, n);
        for e in &self.edges {
            m[(e.src, e.dst)] += 1;
        }
        m
    }

    pub fn reversed(&self) -> Presentation {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                src: e.dst,
                label: e.label,
                dst: e.src,
            })
            .collect();
        Presentation::new(self.alphabet.clone(), self.states.clone(), edges).expect("valid")
    }

    /// Strongly connected components (Tarjan), each sorted, listed in order of first state.
    pub fn sccs(&self) -> Vec<Vec<StateId>> {
        let n = self.num_states();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut comps = Vec::new();
        let mut counter = 0;
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut call: Vec<(StateId, usize)> = vec![(root, 0)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                if let Some(&ei) = self.out[v].get(*pos) {
                    *pos += 1;
                    let w = self.edges[ei].dst;
                    if index[w] == usize::MAX {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("non-empty stack");
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comps.push(comp);
                    }
                }
            }
        }
        comps.sort();
        comps
    }

    /// Period of the strongly connected component `comp`; 0 if it carries no cycle.
    fn component_period(&self, comp: &[StateId]) -> u64 {
        let n = self.num_states();
        let mut member = vec![false; n];
        for &q in comp {
            member[q] = true;
        }
        let mut level = vec![i64::MIN; n];
        level[comp[0]] = 0;
        let mut queue = VecDeque::from([comp[0]]);
        let mut g = 0u64;
        while let Some(v) = queue.pop_front() {
            for (_, e) in self.out_edges(v) {
                if !member[e.dst] {
                    continue;
                }
                if level[e.dst] == i64::MIN {
                    level[e.dst] = level[v] + 1;
                    queue.push_back(e.dst);
                } else {
                    g = gcd(g, (level[v] + 1 - level[e.dst]).unsigned_abs());
                }
            }
        }
        g
    }

    pub fn structure_flags(&self) -> StructureFlags {
        let comps = self.sccs();
        let period = comps.iter().map(|c| self.component_period(c)).fold(0, gcd);
        let irreducible = comps.len() == 1 && period > 0;
        StructureFlags {
            irreducible,
            mixing: irreducible && period == 1,
            period,
        }
    }

    /// Exact labeled-graph isomorphism by backtracking over state bijections.
    pub fn is_isomorphic(&self, other: &Presentation) -> bool {
        if self.alphabet != other.alphabet
            || self.num_states() != other.num_states()
            || self.edges.len() != other.edges.len()
        {
            return false;
        }
        let n = self.num_states();
        let count = |p: &Presentation| {
            let mut m: HashMap<(StateId, Symbol, StateId), usize> = HashMap::new();
            for e in &p.edges {
                *m.entry((e.src, e.label, e.dst)).or_default() += 1;
            }
            m
        };
        let (ca, cb) = (count(self), count(other));
        let signature = |p: &Presentation, q: StateId| {
            let mut o: Vec<Symbol> = p.out_edges(q).map(|(_, e)| e.label).collect();
            let mut i: Vec<Symbol> = p.in_edges(q).map(|(_, e)| e.label).collect();
            o.sort_unstable();
            i.sort_unstable();
            (o, i)
        };
        let sa: Vec<_> = (0..n).map(|q| signature(self, q)).collect();
        let sb: Vec<_> = (0..n).map(|q| signature(other, q)).collect();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn extend(
            q: usize,
            n: usize,
            map: &mut [usize],
            used: &mut [bool],
            ok: &dyn Fn(&[usize], usize) -> bool,
            compatible: &dyn Fn(usize, usize) -> bool,
        ) -> bool {
            if q == n {
                return true;
            }
            for r in 0..n {
                if used[r] || !compatible(q, r) {
                    continue;
                }
                map[q] = r;
                used[r] = true;
                if ok(map, q) && extend(q + 1, n, map, used, ok, compatible) {
                    return true;
                }
                used[r] = false;
                map[q] = usize::MAX;
            }
            false
        }
        let ok = |map: &[usize], q: usize| {
            ca.iter().all(|(&(s, a, d), &c)| {
                if s > q || d > q || (s != q && d != q) {
                    return true;
                }
                cb.get(&(map[s], a, map[d])) == Some(&c)
            })
        };
        let compatible = |q: usize, r: usize| sa[q] == sb[r];
        extend(0, n, &mut map, &mut used, &ok, &compatible)
    }

    pub fn with_state_names(&self, names: Vec<String>) -> Result<Presentation> {
        if names.len() != self.num_states() {
            return Err(Error::InvalidPresentation(
                "state name count mismatch".into(),
            ));
        }
        Presentation::new(self.alphabet.clone(), names, self.edges.clone())
    }

    /// Text rendering in spec-file syntax (states and edges only).
    pub fn render(&self) -> String {
        let mut s = String::new();
        for q in &self.states {
            let _ = writeln!(s, "state: {q}");
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "edge: {} {} {}",
                self.states[e.src],
                self.alphabet.name(e.label),
                self.states[e.dst]
            );
        }
        s
    }

    /// Product graph on paired states and paired labels.
    pub fn product(&self, other: &Presentation) -> Result<Presentation> {
        let alphabet = self.alphabet.product(&other.alphabet)?;
        let m = other.num_states();
        let k = other.alphabet.len() as Symbol;
        let mut states = Vec::with_capacity(self.num_states() * m);
        for a in &self.states {
            for b in &other.states {
                states.push(format!("({a},{b})"));
            }
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            for f in &other.edges {
                edges.push(Edge {
                    src: e.src * m + f.src,
                    label: e.label * k + f.label,
                    dst: e.dst * m + f.dst,
                });
            }
        }
        Ok(Presentation::new(alphabet, states, edges)?.trimmed())
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn subset_name(p: &Presentation, set: &StateSet) -> String {
    let names: Vec<&str> = set.iter().map(|q| p.state_name(q)).collect();
    format!("{{{}}}", names.join(","))
}

/// Subset construction from the full state set, over non-empty subsets.
/// Returns the subset automaton (untrimmed) together with the subset of each state.
pub(crate) fn subset_automaton(
    p: &Presentation,
    keep: impl Fn(&StateSet) -> bool,
) -> (Presentation, Vec<StateSet>) {
    let start = p.all_states();
    let mut ids: HashMap<StateSet, usize> = HashMap::new();
    let mut sets = Vec::new();
    let mut edges = Vec::new();
    if keep(&start) && !start.is_empty() {
        ids.insert(start.clone(), 0);
        sets.push(start);
    }
    let mut i = 0;
    while i < sets.len() {
        for a in p.alphabet().symbols() {
            let next = p.step(&sets[i], a);
            if next.is_empty() || !keep(&next) {
                continue;
            }
            let id = *ids.entry(next.clone()).or_insert_with(|| {
                sets.push(next);
                sets.len() - 1
            });
            edges.push(Edge {
                src: i,
                label: a,
                dst: id,
            });
        }
        i += 1;
    }
    let names = sets.iter().map(|s| subset_name(p, s)).collect();
    let pres = Presentation::new(p.alphabet().clone(), names, edges).expect("valid subsets");
    (pres, sets)
}

/// Deterministic presentation of the same language.
pub fn determinize(p: &Presentation) -> Presentation {
    if p.is_deterministic() {
        return p.trimmed();
    }
    subset_automaton(&p.trimmed(), |_| true).0.trimmed()
}

/// Moore minimization of a deterministic graph: merges states with equal follower sets.
/// Returns the quotient graph and the class of every input state.
pub(crate) fn minimize(p: &Presentation) -> (Vec<usize>, usize) {
    debug_assert!(p.is_deterministic());
    let n = p.num_states();
    let labels = |q: StateId| -> Vec<Symbol> { p.out_edges(q).map(|(_, e)| e.label).collect() };
    let mut class = relabel(&(0..n).map(labels).collect::<Vec<_>>());
    loop {
        let keys: Vec<(usize, Vec<(Symbol, usize)>)> = (0..n)
            .map(|q| {
                let succ = p
                    .out_edges(q)
                    .map(|(_, e)| (e.label, class[e.dst]))
                    .collect();
                (class[q], succ)
            })
            .collect();
        let next = relabel(&keys);
        let before = class.iter().max().map_or(0, |m| m + 1);
        let after = next.iter().max().map_or(0, |m| m + 1);
        class = next;
        if after == before {
            return (class, after);
        }
    }
}

fn relabel<K: Eq + std::hash::Hash + Clone>(keys: &[K]) -> Vec<usize> {
    let mut ids: HashMap<K, usize> = HashMap::new();
    keys.iter()
        .map(|k| {
            let next = ids.len();
            *ids.entry(k.clone()).or_insert(next)
        })
        .collect()
}

/// Minimal right-resolving irreducible presentation of an irreducible sofic shift.
pub fn fischer_cover_of(p: &Presentation) -> Result<Presentation> {
    let base = p.trimmed();
    if base.is_empty() {
        return Err(Error::EmptyShift);
    }
    let (subsets, sets) = subset_automaton(&base, |_| true);
    let keep: Vec<bool> = {
        let t = subsets.trimmed();
        subsets
            .state_names()
            .iter()
            .map(|n| t.state_index(n).is_some())
            .collect()
    };
    let kept_sets: Vec<StateSet> = sets
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(s, _)| s.clone())
        .collect();
    let det = subsets.restrict(&keep);
    let (class, num_classes) = minimize(&det);

    // Quotient graph.
    let mut rep = vec![usize::MAX; num_classes];
    for (q, &c) in class.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = q;
        }
    }
    let mut edges = Vec::new();
    for (c, &q) in rep.iter().enumerate() {
        for (_, e) in det.out_edges(q) {
            edges.push(Edge {
                src: c,
                label: e.label,
                dst: class[e.dst],
            });
        }
    }
    let names: Vec<String> = (0..num_classes).map(|c| format!("c{c}")).collect();
    let quotient = Presentation::new(base.alphabet().clone(), names, edges)?;

    // The terminal component.
    let comps = quotient.sccs();
    let mut comp_of = vec![0; num_classes];
    for (i, comp) in comps.iter().enumerate() {
        for &q in comp {
            comp_of[q] = i;
        }
    }
    let terminal: Vec<usize> = (0..comps.len())
        .filter(|&i| {
            comps[i]
                .iter()
                .all(|&q| quotient.out_edges(q).all(|(_, e)| comp_of[e.dst] == i))
        })
        .collect();
    let [term] = terminal[..] else {
        return Err(Error::NotIrreducible);
    };
    let keep: Vec<bool> = (0..num_classes).map(|q| comp_of[q] == term).collect();
    let kept: Vec<usize> = (0..num_classes).filter(|&c| keep[c]).collect();
    let cover = quotient.restrict(&keep);

    // Name classes after original states whose singleton subset lies in the class.
    let names: Vec<String> = kept
        .iter()
        .map(|&c| {
            let singleton = (0..base.num_states()).find(|&s| {
                class
                    .iter()
                    .zip(&kept_sets)
                    .any(|(&k, set)| k == c && set.len() == 1 && set.contains(s))
            });
            match singleton {
                Some(s) => base.state_name(s).to_string(),
                None => det.state_name(rep[c]).to_string(),
            }
        })
        .collect();
    let cover = cover
        .with_state_names(names.clone())
        .or_else(|_| cover.with_state_names((0..names.len()).map(|i| format!("q{i}")).collect()))?;
    if cover.is_empty() || !cover.structure_flags().irreducible {
        return Err(Error::NotIrreducible);
    }
    if !language_included(&base, &cover) {
        return Err(Error::NotIrreducible);
    }
    Ok(cover)
}

/// Whether every word accepted by `a` is accepted by `b` (both trimmed).
pub fn language_included(a: &Presentation, b: &Presentation) -> bool {
    let start = (a.all_states(), b.all_states());
    let mut seen = std::collections::HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some((sa, sb)) = queue.pop_front() {
        for x in a.alphabet().symbols() {
            let na = a.step(&sa, x);
            if na.is_empty() {
                continue;
            }
            let nb = b.step(&sb, x);
            if nb.is_empty() {
                return false;
            }
            let pair = (na, nb);
            if seen.insert(pair.clone()) {
                queue.push_back(pair);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary() -> Alphabet {
        Alphabet::new(["0", "1"]).unwrap()
    }

    fn graph(states: &[&str], edges: &[(usize, Symbol, usize)]) -> Presentation {
        Presentation::new(
            binary(),
            states.iter().map(|s| s.to_string()).collect(),
            edges
                .iter()
                .map(|&(src, label, dst)| Edge { src, label, dst })
                .collect(),
        )
        .unwrap()
    }

    fn even() -> Presentation {
        graph(&["A", "B"], &[(0, 1, 0), (0, 0, 1), (1, 0, 0)])
    }

    #[test]
    fn trimming_removes_dead_ends() {
        let p = graph(&["A", "B", "C"], &[(0, 0, 0), (0, 1, 1), (2, 1, 0)]);
        let t = p.trimmed();
        assert_eq!(t.state_names(), &["A".to_string()]);
        assert!(t.is_trim());
    }

    #[test]
    fn structure_of_small_graphs() {
        let f = even().structure_flags();
        assert_eq!((f.irreducible, f.mixing, f.period), (true, true, 1));
        let two_cycle = graph(&["a", "b"], &[(0, 0, 1), (1, 1, 0)]);
        let f = two_cycle.structure_flags();
        assert_eq!((f.irreducible, f.mixing, f.period), (true, false, 2));
        let reducible = graph(&["a", "b"], &[(0, 0, 0), (0, 1, 1), (1, 1, 1)]);
        assert!(!reducible.structure_flags().irreducible);
    }

    #[test]
    fn determinize_deterministic_input_is_isomorphic() {
        let d = determinize(&even());
        assert!(d.is_isomorphic(&even()));
    }

    #[test]
    fn determinize_nondeterministic_input() {
        let p = graph(&["P", "R"], &[(0, 0, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1)]);
        assert!(!p.is_deterministic());
        let d = determinize(&p);
        assert!(d.is_deterministic());
        assert!(d.state_names().iter().all(|n| n.starts_with('{')));
        for len in 0..=8 {
            for w in binary().all_words(len) {
                assert_eq!(p.accepts(&w), d.accepts(&w), "{w:?}");
            }
        }
    }

    #[test]
    fn fischer_cover_of_even_shift() {
        let f = fischer_cover_of(&even()).unwrap();
        assert_eq!(f.state_names(), &["A".to_string(), "B".to_string()]);
        assert!(f.is_isomorphic(&even()));
    }

    #[test]
    fn fischer_cover_merges_equivalent_states() {
        // Two copies of the full shift loop collapse to one state.
        let p = graph(&["X", "Y"], &[(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)]);
        let f = fischer_cover_of(&p).unwrap();
        assert_eq!(f.num_states(), 1);
        assert_eq!(f.edges().len(), 2);
    }

    #[test]
    fn reducible_language_is_rejected() {
        // 0^a 1^b: two loops joined by a one-way edge.
        let p = graph(&["a", "b"], &[(0, 0, 0), (0, 1, 1), (1, 1, 1)]);
        assert_eq!(fischer_cover_of(&p), Err(Error::NotIrreducible));
    }

    #[test]
    fn isomorphism_detects_relabeling() {
        let a = even();
        let b = graph(&["B", "A"], &[(1, 1, 1), (1, 0, 0), (0, 0, 1)]);
        assert!(a.is_isomorphic(&b));
        let c = graph(&["A", "B"], &[(0, 0, 0), (0, 1, 1), (1, 0, 0)]);
        assert!(!a.is_isomorphic(&c));
    }

    #[test]
    fn sccs_are_found() {
        let p = graph(
            &["a", "b", "c"],
            &[(0, 0, 1), (1, 0, 0), (1, 1, 2), (2, 1, 2)],
        );
        assert_eq!(p.sccs(), vec![vec![0, 1], vec![2]]);
    }
}
