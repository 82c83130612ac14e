//! The index diagram `𝒢_P` of a sprout and everything read off its infinite
//! walks: address sets of boundary points, their cardinality class, and
//! admissibility.
//!
//! An arc `p → q` labeled `k` exists iff the sprout has an edge `(w_k, p)`
//! labeled `q`, i.e. `S_k(q) = p`. Infinite walks from `p` spell exactly the
//! addresses of `p`.
//!
//! Cardinality is decided on the SCC condensation instead of by enumerating
//! cycles. A strongly connected component with more internal arcs than
//! vertices carries two distinct cycles that are linked, so any vertex reaching
//! it has uncountably many walks. Otherwise every cyclic component is a single
//! cycle, and a cycle reaching a different cycle (`σ₁ ≺ σ₂`) yields countably
//! many walks. If neither happens, the walks are finite in number and each is a
//! path into an independent terminal cycle.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::address::{Address, Word};
use crate::error::AnalysisError;
use crate::sprout::{PointId, Sprout};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub from: PointId,
    pub to: PointId,
    /// 1-based white index.
    pub label: u32,
}

/// A finite walk given by its start vertex and arc sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub start: PointId,
    pub arcs: Vec<Arc>,
}

impl Walk {
    /// Builds a walk from a vertex sequence; fails if some step has no arc or
    /// is ambiguous because of parallel arcs.
    pub fn through(d: &IndexDiagram, vertices: &[PointId]) -> Result<Walk, AnalysisError> {
        let start = *vertices.first().ok_or(AnalysisError::BrokenWalk(0))?;
        let mut arcs = Vec::new();
        for (i, pair) in vertices.windows(2).enumerate() {
            let mut candidates = d.out_arcs(pair[0]).filter(|a| a.to == pair[1]);
            let arc = candidates.next().ok_or(AnalysisError::BrokenWalk(i))?;
            if candidates.next().is_some() {
                return Err(AnalysisError::BrokenWalk(i));
            }
            arcs.push(*arc);
        }
        Ok(Walk { start, arcs })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum AddressClass {
    Finite { count: usize },
    CountablyInfinite,
    Uncountable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AddressSetClass {
    #[serde(flatten)]
    pub class: AddressClass,
    pub witness: String,
}

impl AddressSetClass {
    pub fn is_finite(&self) -> bool {
        matches!(self.class, AddressClass::Finite { .. })
    }

    pub fn finite_count(&self) -> Option<usize> {
        match self.class {
            AddressClass::Finite { count } => Some(count),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    Inadmissible { p: PointId, q: PointId, shared: Address },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub vertices: Vec<PointId>,
    pub labels: Word,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CycleRelation {
    pub cycles: Vec<Cycle>,
    /// `(p, σ)` with `p ∉ σ` and `p ≺ σ`.
    pub vertex_precedes: Vec<(PointId, usize)>,
    /// `(σ₁, σ₂)` for disjoint cycles with `σ₁ ≺ σ₂`.
    pub precedes: Vec<(usize, usize)>,
    pub linked: Vec<(usize, usize)>,
    pub independent: Vec<(usize, usize)>,
}

pub const DEFAULT_CYCLE_CAP: usize = 10_000;

#[derive(Clone, Debug)]
pub struct IndexDiagram {
    names: Vec<String>,
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    comp: Vec<usize>,
    comps: Vec<Component>,
}

#[derive(Clone, Debug)]
struct Component {
    vertices: Vec<usize>,
    internal_arcs: usize,
    /// Components reachable from this one, itself included.
    reach: u64,
}

impl Component {
    fn is_cyclic(&self) -> bool {
        self.internal_arcs > 0
    }

    fn is_branching(&self) -> bool {
        self.internal_arcs > self.vertices.len()
    }
}

impl IndexDiagram {
    pub fn new(s: &Sprout) -> IndexDiagram {
        let mut arcs: Vec<Arc> = s
            .edges()
            .iter()
            .filter_map(|e| {
                s.point_of(e.black).map(|from| Arc {
                    from,
                    to: e.label,
                    label: e.white.index(),
                })
            })
            .collect();
        arcs.sort_by_key(|a| (a.from, a.label, a.to));
        let names = s.points().map(|p| s.point_name(p).to_string()).collect();
        Self::from_arcs(names, arcs)
    }

    fn from_arcs(names: Vec<String>, arcs: Vec<Arc>) -> IndexDiagram {
        let n = names.len();
        let mut out = vec![Vec::new(); n];
        for (i, a) in arcs.iter().enumerate() {
            out[a.from.0].push(i);
        }
        let succ: Vec<Vec<usize>> = out.iter().map(|v| v.iter().map(|&i| arcs[i].to.0).collect()).collect();
        let comp = tarjan(&succ);
        let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
        let mut comps: Vec<Component> = (0..ncomp)
            .map(|_| Component {
                vertices: Vec::new(),
                internal_arcs: 0,
                reach: 0,
            })
            .collect();
        for v in 0..n {
            comps[comp[v]].vertices.push(v);
        }
        for a in &arcs {
            if comp[a.from.0] == comp[a.to.0] {
                comps[comp[a.from.0]].internal_arcs += 1;
            }
        }
        // Tarjan numbers components in reverse topological order, so every
        // successor component has a smaller id.
        for c in 0..ncomp {
            let mut reach = 1u64 << c;
            for &v in &comps[c].vertices {
                for &u in &succ[v] {
                    if comp[u] != c {
                        reach |= comps[comp[u]].reach;
                    }
                }
            }
            comps[c].reach = reach;
        }
        IndexDiagram {
            names,
            arcs,
            out,
            comp,
            comps,
        }
    }

    pub fn num_points(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, p: PointId) -> &str {
        &self.names[p.0]
    }

    pub fn find(&self, name: &str) -> Option<PointId> {
        self.names.iter().position(|n| n == name).map(PointId)
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn out_arcs(&self, p: PointId) -> impl Iterator<Item = &Arc> {
        self.out[p.0].iter().map(move |&i| &self.arcs[i])
    }

    /// The arc leaving `p` with the given label, if any; unique by out-injectivity.
    pub fn step(&self, p: PointId, label: u32) -> Option<PointId> {
        self.out_arcs(p).find(|a| a.label == label).map(|a| a.to)
    }

    /// Graphviz rendering; arcs are labeled with the white index `k`.
    pub fn to_dot(&self) -> String {
        let mut dot = String::from("digraph index_diagram {\n");
        for name in &self.names {
            dot += &format!("  \"{name}\";\n");
        }
        for a in &self.arcs {
            dot += &format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                self.names[a.from.0], self.names[a.to.0], a.label
            );
        }
        dot.push_str("}\n");
        dot
    }

    /// Out-label injectivity and in-label injectivity of the labeling.
    pub fn labels_injective(&self) -> bool {
        let mut out = BTreeSet::new();
        let mut inc = BTreeSet::new();
        self.arcs
            .iter()
            .all(|a| out.insert((a.from, a.label)) && inc.insert((a.to, a.label)))
    }

    pub fn walk_to_multiindex(&self, walk: &Walk) -> Result<Word, AnalysisError> {
        let mut at = walk.start;
        let mut word = Vec::with_capacity(walk.arcs.len());
        for (i, arc) in walk.arcs.iter().enumerate() {
            if arc.from != at || !self.arcs.contains(arc) {
                return Err(AnalysisError::BrokenWalk(i));
            }
            word.push(arc.label);
            at = arc.to;
        }
        Ok(word)
    }

    /// Whether the infinite sequence `alpha` can be read from `p`.
    pub fn reads(&self, p: PointId, alpha: &Address) -> bool {
        let mut at = p;
        for &k in alpha.preperiod() {
            match self.step(at, k) {
                Some(next) => at = next,
                None => return false,
            }
        }
        // The state at period boundaries is deterministic, so it repeats
        // within `#P + 1` rounds.
        let mut seen = vec![false; self.num_points()];
        loop {
            if seen[at.0] {
                return true;
            }
            seen[at.0] = true;
            for &k in alpha.period() {
                match self.step(at, k) {
                    Some(next) => at = next,
                    None => return false,
                }
            }
        }
    }

    fn is_cyclic_vertex(&self, v: usize) -> bool {
        self.comps[self.comp[v]].is_cyclic()
    }

    pub fn classify(&self, p: PointId) -> AddressSetClass {
        let reach = self.comps[self.comp[p.0]].reach;
        let reachable = || (0..self.comps.len()).filter(move |c| reach >> c & 1 == 1);
        if let Some(c) = reachable().find(|&c| self.comps[c].is_branching()) {
            let v = self.comps[c].vertices[0];
            return AddressSetClass {
                class: AddressClass::Uncountable,
                witness: format!(
                    "`{}` reaches `{}`, which lies on two distinct linked cycles",
                    self.names[p.0], self.names[v]
                ),
            };
        }
        for c1 in reachable().filter(|&c| self.comps[c].is_cyclic()) {
            let r1 = self.comps[c1].reach;
            if let Some(c2) = (0..self.comps.len()).find(|&c2| c2 != c1 && r1 >> c2 & 1 == 1 && self.comps[c2].is_cyclic()) {
                return AddressSetClass {
                    class: AddressClass::CountablyInfinite,
                    witness: format!(
                        "the cycle through `{}` precedes the cycle through `{}`",
                        self.names[self.comps[c1].vertices[0]],
                        self.names[self.comps[c2].vertices[0]]
                    ),
                };
            }
        }
        let counts = self.walk_counts();
        let count = counts[p.0];
        let witness = if count == 0 {
            format!("`{}` has no infinite walk: combinatorially boundary-less", self.names[p.0])
        } else {
            let cycles: BTreeSet<&str> = reachable()
                .filter(|&c| self.comps[c].is_cyclic())
                .map(|c| self.names[self.comps[c].vertices[0]].as_str())
                .collect();
            format!(
                "walks end in independent cycles through {}",
                cycles.into_iter().map(|n| format!("`{n}`")).collect::<Vec<_>>().join(", ")
            )
        };
        AddressSetClass {
            class: AddressClass::Finite { count },
            witness,
        }
    }

    /// Number of infinite walks from each vertex, valid for vertices whose
    /// class is finite (every cyclic vertex counts once).
    fn walk_counts(&self) -> Vec<usize> {
        let n = self.num_points();
        let mut counts = vec![0usize; n];
        // Components in reverse topological order: successors first.
        for c in 0..self.comps.len() {
            for &v in &self.comps[c].vertices {
                counts[v] = if self.comps[c].is_cyclic() {
                    1
                } else {
                    self.out[v].iter().map(|&i| counts[self.arcs[i].to.0]).sum()
                };
            }
        }
        counts
    }

    /// Total number of simple paths, over all start vertices, that end at
    /// their first cyclic vertex. Bounds every finite per-point count.
    pub fn walk_bound(&self) -> usize {
        self.walk_counts().iter().sum()
    }

    /// All addresses of `p`, sorted lexicographically. Refuses infinite sets.
    pub fn enumerate_addresses(&self, p: PointId) -> Result<Vec<Address>, AnalysisError> {
        let class = self.classify(p);
        if !class.is_finite() {
            return Err(AnalysisError::InfiniteAddressSet {
                point: self.names[p.0].clone(),
                class,
            });
        }
        let counts = self.walk_counts();
        let mut found = Vec::new();
        let mut prefix = Vec::new();
        self.collect_walks(p.0, &counts, &mut prefix, &mut found);
        found.sort();
        found.dedup();
        Ok(found)
    }

    fn collect_walks(&self, v: usize, counts: &[usize], prefix: &mut Word, found: &mut Vec<Address>) {
        if self.is_cyclic_vertex(v) {
            let c = self.comp[v];
            let mut period = Vec::new();
            let mut at = v;
            loop {
                let arc = self.out[at]
                    .iter()
                    .map(|&i| &self.arcs[i])
                    .find(|a| self.comp[a.to.0] == c)
                    .expect("cyclic vertex has an internal arc");
                period.push(arc.label);
                at = arc.to.0;
                if at == v {
                    break;
                }
            }
            found.push(Address::new(prefix.clone(), period));
            return;
        }
        for &i in &self.out[v] {
            let arc = self.arcs[i];
            if counts[arc.to.0] > 0 {
                prefix.push(arc.label);
                self.collect_walks(arc.to.0, counts, prefix, found);
                prefix.pop();
            }
        }
    }

    /// Decides admissibility on the synchronized product of the diagram with
    /// itself: two points share an address iff their pair has an infinite walk.
    pub fn admissibility(&self) -> Admissibility {
        let n = self.num_points();
        let idx = |x: usize, y: usize| x * n + y;
        let mut succ: Vec<Vec<(u32, usize)>> = vec![Vec::new(); n * n];
        for x in 0..n {
            for y in 0..n {
                for a in self.out_arcs(PointId(x)) {
                    if let Some(b) = self.step(PointId(y), a.label) {
                        succ[idx(x, y)].push((a.label, idx(a.to.0, b.0)));
                    }
                }
            }
        }
        let live = live_nodes(&succ);
        for x in 0..n {
            for y in (x + 1)..n {
                if live[idx(x, y)] {
                    let shared = trace_shared(&succ, &live, idx(x, y));
                    return Admissibility::Inadmissible {
                        p: PointId(x),
                        q: PointId(y),
                        shared,
                    };
                }
            }
        }
        Admissibility::Admissible
    }

    pub fn cycle_relations(&self, cap: usize) -> Result<CycleRelation, AnalysisError> {
        let cycles = self.simple_cycles(cap)?;
        let n = self.num_points();
        let reach = |a: usize, b: usize| {
            let (ca, cb) = (self.comp[a], self.comp[b]);
            self.comps[ca].reach >> cb & 1 == 1
        };
        let precedes = |a: usize, b: usize| reach(a, b) && !reach(b, a);
        let mut rel = CycleRelation::default();
        for p in 0..n {
            for (i, c) in cycles.iter().enumerate() {
                if !c.vertices.contains(&PointId(p)) && c.vertices.iter().any(|q| precedes(p, q.0)) {
                    rel.vertex_precedes.push((PointId(p), i));
                }
            }
        }
        for i in 0..cycles.len() {
            for j in (i + 1)..cycles.len() {
                let (a, b) = (&cycles[i], &cycles[j]);
                let disjoint = a.vertices.iter().all(|v| !b.vertices.contains(v));
                let a_before_b = disjoint && a.vertices.iter().any(|x| b.vertices.iter().any(|y| precedes(x.0, y.0)));
                let b_before_a = disjoint && b.vertices.iter().any(|x| a.vertices.iter().any(|y| precedes(x.0, y.0)));
                let linked = a
                    .vertices
                    .iter()
                    .any(|x| b.vertices.iter().any(|y| reach(x.0, y.0) && reach(y.0, x.0)));
                if a_before_b {
                    rel.precedes.push((i, j));
                }
                if b_before_a {
                    rel.precedes.push((j, i));
                }
                if linked {
                    rel.linked.push((i, j));
                } else if !a_before_b && !b_before_a {
                    rel.independent.push((i, j));
                }
            }
        }
        rel.cycles = cycles;
        Ok(rel)
    }

    /// Simple cycles as arc sequences; parallel arcs give distinct cycles.
    /// Each cycle is reported once, starting at its smallest vertex.
    fn simple_cycles(&self, cap: usize) -> Result<Vec<Cycle>, AnalysisError> {
        let mut cycles = Vec::new();
        for start in 0..self.num_points() {
            let mut on_path = vec![false; self.num_points()];
            let mut path: Vec<Arc> = Vec::new();
            self.cycles_from(start, start, &mut on_path, &mut path, &mut cycles, cap)?;
        }
        Ok(cycles)
    }

    fn cycles_from(
        &self,
        start: usize,
        v: usize,
        on_path: &mut Vec<bool>,
        path: &mut Vec<Arc>,
        cycles: &mut Vec<Cycle>,
        cap: usize,
    ) -> Result<(), AnalysisError> {
        on_path[v] = true;
        for &i in &self.out[v] {
            let arc = self.arcs[i];
            let to = arc.to.0;
            if to < start || self.comp[to] != self.comp[start] {
                continue;
            }
            path.push(arc);
            if to == start {
                if cycles.len() == cap {
                    return Err(AnalysisError::TooManyCycles(cap));
                }
                cycles.push(Cycle {
                    vertices: path.iter().map(|a| a.from).collect(),
                    labels: path.iter().map(|a| a.label).collect(),
                });
            } else if !on_path[to] {
                self.cycles_from(start, to, on_path, path, cycles, cap)?;
            }
            path.pop();
        }
        on_path[v] = false;
        Ok(())
    }
}

pub fn index_diagram(s: &Sprout) -> IndexDiagram {
    let d = IndexDiagram::new(s);
    debug_assert!(
        !s.validate().structural_ok || d.labels_injective(),
        "index diagram of a valid sprout has injective labels"
    );
    d
}

/// Nodes with an infinite walk: repeatedly discard nodes without live successors.
pub(crate) fn live_nodes<T>(succ: &[Vec<(T, usize)>]) -> Vec<bool> {
    let n = succ.len();
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut outdeg = vec![0usize; n];
    for (u, list) in succ.iter().enumerate() {
        for &(_, v) in list {
            pred[v].push(u);
            outdeg[u] += 1;
        }
    }
    let mut live = vec![true; n];
    let mut stack: Vec<usize> = (0..n).filter(|&u| outdeg[u] == 0).collect();
    while let Some(v) = stack.pop() {
        if !live[v] {
            continue;
        }
        live[v] = false;
        for &u in &pred[v] {
            outdeg[u] -= 1;
            if outdeg[u] == 0 && live[u] {
                stack.push(u);
            }
        }
    }
    live
}

/// Follows the smallest live label until a node repeats.
fn trace_shared(succ: &[Vec<(u32, usize)>], live: &[bool], start: usize) -> Address {
    let mut seen = std::collections::HashMap::new();
    let mut word = Vec::new();
    let mut at = start;
    while !seen.contains_key(&at) {
        seen.insert(at, word.len());
        let &(label, next) = succ[at]
            .iter()
            .filter(|(_, v)| live[*v])
            .min()
            .expect("live node has a live successor");
        word.push(label);
        at = next;
    }
    let split = seen[&at];
    Address::new(word[..split].to_vec(), word[split..].to_vec())
}

/// Tarjan's SCC algorithm; component ids come out in reverse topological order.
pub(crate) fn tarjan(succ: &[Vec<usize>]) -> Vec<usize> {
    struct State<'a> {
        succ: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        comp: Vec<usize>,
        next_index: usize,
        next_comp: usize,
    }
    fn visit(s: &mut State, v: usize) {
        s.index[v] = Some(s.next_index);
        s.low[v] = s.next_index;
        s.next_index += 1;
        s.stack.push(v);
        s.on_stack[v] = true;
        for i in 0..s.succ[v].len() {
            let u = s.succ[v][i];
            match s.index[u] {
                None => {
                    visit(s, u);
                    s.low[v] = s.low[v].min(s.low[u]);
                }
                Some(iu) if s.on_stack[u] => s.low[v] = s.low[v].min(iu),
                _ => {}
            }
        }
        if Some(s.low[v]) == s.index[v] {
            loop {
                let u = s.stack.pop().expect("stack holds the component");
                s.on_stack[u] = false;
                s.comp[u] = s.next_comp;
                if u == v {
                    break;
                }
            }
            s.next_comp += 1;
        }
    }
    let n = succ.len();
    let mut s = State {
        succ,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        comp: vec![0; n],
        next_index: 0,
        next_comp: 0,
    };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(&mut s, v);
        }
    }
    s.comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn pid(d: &IndexDiagram, name: &str) -> PointId {
        d.find(name).unwrap()
    }

    #[test]
    fn interval2_has_two_self_loops() {
        let d = index_diagram(&fixtures::interval2());
        let arcs: Vec<_> = d.arcs().iter().map(|a| (d.name(a.from), d.name(a.to), a.label)).collect();
        assert_eq!(arcs, vec![("p1", "p1", 1), ("p2", "p2", 2)]);
        assert!(d.labels_injective());
    }

    #[test]
    fn dot_lists_points_and_arcs() {
        let d = index_diagram(&fixtures::interval2());
        assert_eq!(
            d.to_dot(),
            "digraph index_diagram {\n  \"p1\";\n  \"p2\";\n  \"p1\" -> \"p1\" [label=\"1\"];\n  \"p2\" -> \"p2\" [label=\"2\"];\n}\n"
        );
    }

    #[test]
    fn vicsek5_has_four_self_loops() {
        let d = index_diagram(&fixtures::vicsek5());
        assert_eq!(d.arcs().len(), 4);
        for (k, a) in d.arcs().iter().enumerate() {
            assert_eq!((a.from, a.to, a.label), (PointId(k), PointId(k), k as u32 + 1));
        }
    }

    #[test]
    fn fig1_predecessor_chain() {
        let d = index_diagram(&fixtures::fig1());
        let walk = Walk::through(&d, &[pid(&d, "p4"), pid(&d, "p1"), pid(&d, "p2"), pid(&d, "p1")]).unwrap();
        assert_eq!(d.walk_to_multiindex(&walk).unwrap(), vec![1, 1, 2]);
        let addrs = d.enumerate_addresses(pid(&d, "p4")).unwrap();
        assert_eq!(addrs, vec![Address::new(vec![1, 1], vec![2, 1])]);
        assert_eq!(addrs[0].expanded(9), "112121212…");
    }

    #[test]
    fn walk_errors() {
        let d = index_diagram(&fixtures::interval2());
        let bogus = Walk {
            start: PointId(0),
            arcs: vec![Arc {
                from: PointId(1),
                to: PointId(1),
                label: 2,
            }],
        };
        assert!(matches!(d.walk_to_multiindex(&bogus), Err(AnalysisError::BrokenWalk(0))));
        assert!(Walk::through(&d, &[PointId(0), PointId(1)]).is_err());
        let w = Walk::through(&d, &[PointId(0), PointId(0), PointId(0)]).unwrap();
        assert_eq!(d.walk_to_multiindex(&w).unwrap(), vec![1, 1]);
        let v = index_diagram(&fixtures::vicsek5());
        let w = Walk::through(&v, &[PointId(1), PointId(1)]).unwrap();
        assert_eq!(v.walk_to_multiindex(&w).unwrap(), vec![2]);
    }

    #[test]
    fn classification_of_fixtures() {
        let d = index_diagram(&fixtures::interval2());
        assert_eq!(d.classify(PointId(0)).class, AddressClass::Finite { count: 1 });
        let d = index_diagram(&fixtures::fig4());
        assert_eq!(d.classify(pid(&d, "p2")).class, AddressClass::Uncountable);
        assert_eq!(d.classify(pid(&d, "p1")).class, AddressClass::Finite { count: 1 });
        assert_eq!(d.classify(pid(&d, "p3")).class, AddressClass::Finite { count: 1 });
        assert!(matches!(
            d.enumerate_addresses(pid(&d, "p2")),
            Err(AnalysisError::InfiniteAddressSet { .. })
        ));
    }

    #[test]
    fn countable_and_empty_classes() {
        // p1 loops on itself and steps to p2, which loops too.
        let d = IndexDiagram::from_arcs(
            vec!["p1".into(), "p2".into(), "p3".into()],
            vec![
                Arc { from: PointId(0), to: PointId(0), label: 1 },
                Arc { from: PointId(0), to: PointId(1), label: 2 },
                Arc { from: PointId(1), to: PointId(1), label: 3 },
            ],
        );
        assert_eq!(d.classify(PointId(0)).class, AddressClass::CountablyInfinite);
        assert_eq!(d.classify(PointId(1)).class, AddressClass::Finite { count: 1 });
        let empty = d.classify(PointId(2));
        assert_eq!(empty.class, AddressClass::Finite { count: 0 });
        assert!(empty.witness.contains("boundary-less"));
    }

    #[test]
    fn enumerate_vicsek_and_interval() {
        let d = index_diagram(&fixtures::interval2());
        assert_eq!(d.enumerate_addresses(PointId(0)).unwrap(), vec![Address::periodic(vec![1])]);
        let d = index_diagram(&fixtures::vicsek5());
        assert_eq!(d.enumerate_addresses(PointId(2)).unwrap(), vec![Address::periodic(vec![3])]);
    }

    #[test]
    fn admissibility_of_fixtures() {
        assert_eq!(index_diagram(&fixtures::interval2()).admissibility(), Admissibility::Admissible);
        assert_eq!(index_diagram(&fixtures::vicsek5()).admissibility(), Admissibility::Admissible);
        let d = index_diagram(&fixtures::fig3());
        match d.admissibility() {
            Admissibility::Inadmissible { p, q, shared } => {
                assert_ne!(p, q);
                assert!(d.reads(p, &shared) && d.reads(q, &shared));
            }
            other => panic!("expected inadmissible, got {other:?}"),
        }
    }

    #[test]
    fn cycle_relations_of_fixtures() {
        let rel = index_diagram(&fixtures::interval2()).cycle_relations(DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(rel.cycles.len(), 2);
        assert_eq!(rel.independent, vec![(0, 1)]);
        assert!(rel.precedes.is_empty() && rel.vertex_precedes.is_empty());

        let rel = index_diagram(&fixtures::vicsek5()).cycle_relations(DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(rel.cycles.len(), 4);
        assert_eq!(rel.independent.len(), 6);

        let d = index_diagram(&fixtures::fig4());
        let rel = d.cycle_relations(DEFAULT_CYCLE_CAP).unwrap();
        let p2 = pid(&d, "p2");
        assert!(rel
            .linked
            .iter()
            .any(|&(i, j)| rel.cycles[i].vertices.contains(&p2) && rel.cycles[j].vertices.contains(&p2)));

        assert!(matches!(d.cycle_relations(1), Err(AnalysisError::TooManyCycles(1))));
    }

    #[test]
    fn reads_matches_enumeration() {
        let d = index_diagram(&fixtures::fig1());
        for p in (0..d.num_points()).map(PointId) {
            for a in d.enumerate_addresses(p).unwrap() {
                assert!(d.reads(p, &a));
                for q in (0..d.num_points()).map(PointId).filter(|&q| q != p) {
                    assert!(!d.reads(q, &a));
                }
            }
        }
    }
}
