//! Brute-force oracles shared by the property suites.
//!
//! Each oracle recomputes a quantity directly from the sprout's edges, without
//! going through the analysis it checks.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use sprout_core::{Address, Sprout, Vertex, WhiteId};

/// `q → k → r` whenever the edge `(w_k, q)` carries label `r`, by name.
pub fn index_arcs(s: &Sprout) -> BTreeMap<String, Vec<(u32, String)>> {
    let mut arcs: BTreeMap<String, Vec<(u32, String)>> = BTreeMap::new();
    for p in s.points() {
        arcs.entry(s.point_name(p).to_string()).or_default();
    }
    for e in s.edges() {
        let b = s.black_name(e.black).to_string();
        if s.find_point(&b).is_some() {
            arcs.entry(b).or_default().push((e.white.index(), s.point_name(e.label).to_string()));
        }
    }
    arcs
}

/// Number of walks of length `len` from `p` in the index diagram, as a float
/// so exponential growth does not overflow.
pub fn walk_count(s: &Sprout, p: &str, len: usize) -> f64 {
    let arcs = index_arcs(s);
    let names: Vec<&String> = arcs.keys().collect();
    let pos = |n: &str| names.iter().position(|m| m.as_str() == n).unwrap();
    let mut counts = vec![0.0f64; names.len()];
    counts[pos(p)] = 1.0;
    for _ in 0..len {
        let mut next = vec![0.0f64; names.len()];
        for (i, name) in names.iter().enumerate() {
            for (_, to) in &arcs[name.as_str()] {
                next[pos(to)] += counts[i];
            }
        }
        counts = next;
    }
    counts.iter().sum()
}

#[derive(Debug, PartialEq, Eq)]
pub enum GrowthClass {
    Finite(usize),
    Countable,
    Uncountable,
}

/// Classifies the address set of `p` from walk counts at lengths `2·#P²`
/// and `4·#P²`. Finite sets have stopped growing by then; polynomially many
/// walks grow by less than `2^(#P−1)` when the length doubles, exponentially
/// many by far more.
pub fn growth_class(s: &Sprout, p: &str) -> GrowthClass {
    let n = s.num_points();
    let l0 = 2 * n * n;
    let (w0, w1) = (walk_count(s, p, l0), walk_count(s, p, 2 * l0));
    if w0 == w1 {
        GrowthClass::Finite(w0 as usize)
    } else if w1 < 2f64.powi(n as i32) * w0 {
        GrowthClass::Countable
    } else {
        GrowthClass::Uncountable
    }
}

/// Whether two distinct boundary points can read a common word of length
/// `#P²`, by stepping sets of point pairs one symbol at a time.
pub fn shared_prefix_pair(s: &Sprout) -> Option<(String, String)> {
    let arcs = index_arcs(s);
    let names: Vec<String> = arcs.keys().cloned().collect();
    let n = names.len();
    for (i, p) in names.iter().enumerate() {
        for q in &names[i + 1..] {
            let mut layer: BTreeSet<(String, String)> = BTreeSet::from([(p.clone(), q.clone())]);
            for _ in 0..n * n {
                let mut next = BTreeSet::new();
                for (x, y) in &layer {
                    for (k, x2) in &arcs[x] {
                        for (k2, y2) in &arcs[y] {
                            if k == k2 {
                                next.insert((x2.clone(), y2.clone()));
                            }
                        }
                    }
                }
                layer = next;
            }
            if !layer.is_empty() {
                return Some((p.clone(), q.clone()));
            }
        }
    }
    None
}

/// `φ_i(p)`: the label on the edge at `w_i` whose side contains `p`, found
/// by walking the tree from `p` to `w_i`.
pub fn phi_by_path(s: &Sprout, i: u32, p: &str) -> String {
    let w = WhiteId::from_index(i);
    let start = Vertex::Black(s.find_black(p).expect("black exists"));
    let mut stack = vec![(start, None::<Vertex>)];
    while let Some((v, from)) = stack.pop() {
        let neighbours: Vec<Vertex> = match v {
            Vertex::White(x) => s.white_edges(x).map(|e| Vertex::Black(e.black)).collect(),
            Vertex::Black(b) => s.black_edges(b).map(|e| Vertex::White(e.white)).collect(),
        };
        for u in neighbours {
            if Some(u) == from {
                continue;
            }
            if u == Vertex::White(w) {
                let Vertex::Black(b) = v else { unreachable!("whites neighbour blacks") };
                let e = s.edge_between(w, b).expect("edge exists");
                return s.point_name(e.label).to_string();
            }
            stack.push((u, Some(v)));
        }
    }
    unreachable!("the tree is connected")
}

/// `#φ_{j_n} ∘ … ∘ φ_{j_1}(P)` along the first `n` symbols of `alpha`.
pub fn image_size(s: &Sprout, alpha: &Address, n: usize) -> usize {
    let mut q: BTreeSet<String> = s.points().map(|p| s.point_name(p).to_string()).collect();
    for k in 0..n {
        let i = alpha.symbol(k);
        q = q.iter().map(|p| phi_by_path(s, i, p)).collect();
    }
    q.len()
}

pub fn random_address(rng: &mut impl Rng, m: u32) -> Address {
    let pre = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(1..=m)).collect();
    let per = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(1..=m)).collect();
    Address::new(pre, per)
}

/// `s` with whites, boundary points and other blacks renamed by random
/// permutations within each kind, and every list of the document shuffled.
/// Shuffling the whites also permutes the map indices.
pub fn relabel(s: &Sprout, rng: &mut impl Rng) -> Sprout {
    let mut shuffled = |prefix: char, names: Vec<String>| {
        let mut targets: Vec<String> = (1..=names.len()).map(|i| format!("{prefix}{i}")).collect();
        targets.shuffle(rng);
        names.into_iter().zip(targets).collect::<BTreeMap<_, _>>()
    };
    let whites = shuffled('w', s.whites().map(|w| s.white_name(w).to_string()).collect());
    let points = shuffled('p', s.points().map(|p| s.point_name(p).to_string()).collect());
    let others: Vec<String> = s
        .blacks()
        .map(|b| s.black_name(b).to_string())
        .filter(|n| !points.contains_key(n))
        .collect();
    let others = shuffled('c', others);
    let renamed = s.renamed(
        |w| whites[w].clone(),
        |b| points.get(b).or_else(|| others.get(b)).cloned().expect("every black renamed"),
    );
    let mut doc = renamed.to_document();
    doc.whites.shuffle(rng);
    doc.blacks.shuffle(rng);
    doc.boundary.shuffle(rng);
    doc.edges.shuffle(rng);
    Sprout::from_document(&doc).expect("shuffling keeps the document consistent")
}
