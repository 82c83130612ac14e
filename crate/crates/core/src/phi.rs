//! Boundary self-maps `φ_i : P → P` and the subset dynamics they generate.
//!
//! `φ_i(p)` is the label on the last edge of the tree path from `p` to `w_i`.
//! Subtrees of the main tree are never built geometrically: a subtree is
//! represented by the full subset of `P` it spans, and the Steiner subtree of
//! that subset in the sprout answers every degree question about it.

use std::collections::{HashMap, VecDeque};
use std::sync::Mutex;

use serde::Serialize;

use crate::address::Address;
use crate::error::AnalysisError;
use crate::sprout::{PointId, Sprout, Vertex, WhiteId};

/// A subset of `P` as a bitmask over the canonical order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundarySubset(pub u64);

impl BoundarySubset {
    pub fn full(n: usize) -> Self {
        BoundarySubset(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn from_points(points: impl IntoIterator<Item = PointId>) -> Self {
        BoundarySubset(points.into_iter().fold(0, |m, p| m | 1 << p.0))
    }

    pub fn contains(self, p: PointId) -> bool {
        self.0 >> p.0 & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn points(self) -> impl Iterator<Item = PointId> {
        (0..64).filter(move |i| self.0 >> i & 1 == 1).map(PointId)
    }

    pub fn names(self, s: &Sprout) -> Vec<String> {
        self.points().map(|p| s.point_name(p).to_string()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryMap {
    table: Vec<PointId>,
}

impl BoundaryMap {
    pub fn identity(n: usize) -> Self {
        BoundaryMap {
            table: (0..n).map(PointId).collect(),
        }
    }

    pub fn apply(&self, p: PointId) -> PointId {
        self.table[p.0]
    }

    pub fn table(&self) -> &[PointId] {
        &self.table
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &BoundaryMap) -> BoundaryMap {
        BoundaryMap {
            table: first.table.iter().map(|&p| self.apply(p)).collect(),
        }
    }

    pub fn image(&self, q: BoundarySubset) -> BoundarySubset {
        BoundarySubset::from_points(q.points().map(|p| self.apply(p)))
    }

    pub fn image_all(&self) -> BoundarySubset {
        self.image(BoundarySubset::full(self.table.len()))
    }
}

/// `φ_i` for the white vertex with 1-based index `i`.
pub fn phi(s: &Sprout, i: u32) -> Result<BoundaryMap, AnalysisError> {
    if i == 0 || i as usize > s.num_whites() {
        return Err(AnalysisError::IndexOutOfRange(i));
    }
    let root = s.node(Vertex::White(WhiteId::from_index(i)));
    // For every node, the edge at w_i through which it is reached.
    let mut branch: Vec<Option<usize>> = vec![None; s.num_nodes()];
    let mut seen = vec![false; s.num_nodes()];
    seen[root] = true;
    let mut queue = VecDeque::new();
    for (v, e) in s.node_neighbors(root) {
        seen[v] = true;
        branch[v] = Some(e);
        queue.push_back(v);
    }
    while let Some(u) = queue.pop_front() {
        for (v, _) in s.node_neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                branch[v] = branch[u];
                queue.push_back(v);
            }
        }
    }
    let table = s
        .points()
        .map(|p| {
            let node = s.node(Vertex::Black(s.point_black(p)));
            let e = branch[node].ok_or_else(|| AnalysisError::Invalid(format!("`{}` is not connected to w{i}", s.point_name(p))))?;
            Ok(s.edges()[e].label)
        })
        .collect::<Result<_, AnalysisError>>()?;
    Ok(BoundaryMap { table })
}

/// `φ_𝐣 = φ_{j_k} ∘ … ∘ φ_{j_1}`; the empty word gives the identity.
pub fn phi_compose(s: &Sprout, word: &[u32]) -> Result<BoundaryMap, AnalysisError> {
    let mut map = BoundaryMap::identity(s.num_points());
    for &j in word {
        map = phi(s, j)?.after(&map);
    }
    Ok(map)
}

pub fn image_subset(m: &BoundaryMap, q: BoundarySubset) -> BoundarySubset {
    m.image(q)
}

/// The minimal subtree `Γ_Q` of the sprout containing `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerTree {
    inside: Vec<bool>,
    degree: Vec<usize>,
    edges: Vec<usize>,
    whites: usize,
}

impl SteinerTree {
    pub fn contains(&self, s: &Sprout, v: Vertex) -> bool {
        self.inside[s.node(v)]
    }

    pub fn degree(&self, s: &Sprout, v: Vertex) -> usize {
        self.degree[s.node(v)]
    }

    /// Edge ids (into `Sprout::edges`).
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn vertices<'a>(&'a self, s: &'a Sprout) -> impl Iterator<Item = Vertex> + 'a {
        (0..self.inside.len()).filter(|&n| self.inside[n]).map(|n| s.vertex(n))
    }

    pub fn num_vertices(&self) -> usize {
        self.inside.iter().filter(|&&b| b).count()
    }

    pub fn white_count(&self) -> usize {
        self.inside[..self.whites].iter().filter(|&&b| b).count()
    }
}

pub fn steiner_subtree(s: &Sprout, q: BoundarySubset) -> Result<SteinerTree, AnalysisError> {
    if q.is_empty() {
        return Err(AnalysisError::EmptySubset);
    }
    let n = s.num_nodes();
    let mut keep = vec![false; n];
    for p in q.points() {
        keep[s.node(Vertex::Black(s.point_black(p)))] = true;
    }
    let mut inside = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|u| s.node_neighbors(u).len()).collect();
    let mut leaves: Vec<usize> = (0..n).filter(|&u| degree[u] <= 1 && !keep[u]).collect();
    while let Some(u) = leaves.pop() {
        if !inside[u] {
            continue;
        }
        inside[u] = false;
        for (v, _) in s.node_neighbors(u) {
            if inside[v] {
                degree[v] -= 1;
                if degree[v] <= 1 && !keep[v] {
                    leaves.push(v);
                }
            }
        }
    }
    let mut edges = Vec::new();
    for (i, e) in s.edges().iter().enumerate() {
        if inside[s.node(Vertex::White(e.white))] && inside[s.node(Vertex::Black(e.black))] {
            edges.push(i);
        }
    }
    let mut degree = vec![0usize; n];
    for &i in &edges {
        let e = s.edges()[i];
        degree[s.node(Vertex::White(e.white))] += 1;
        degree[s.node(Vertex::Black(e.black))] += 1;
    }
    Ok(SteinerTree {
        inside,
        degree,
        edges,
        whites: s.num_whites(),
    })
}

/// `Γ_Q ∩ P = Q`.
pub fn is_full(s: &Sprout, q: BoundarySubset) -> Result<bool, AnalysisError> {
    let tree = steiner_subtree(s, q)?;
    Ok(s
        .points()
        .all(|p| q.contains(p) || !tree.contains(s, Vertex::Black(s.point_black(p)))))
}

/// `#φ_i(P) − #(K_i ∩ ∂K)`, the number of components of `K ∖ K_i`.
pub fn complement_components(s: &Sprout, i: u32) -> Result<usize, AnalysisError> {
    if !s.validate().is_regular {
        return Err(AnalysisError::NotRegular);
    }
    let image = phi(s, i)?.image_all().len();
    let w = WhiteId::from_index(i);
    let adjacent = s.white_edges(w).filter(|e| s.point_of(e.black).is_some()).count();
    Ok(image - adjacent)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiRow {
    pub index: u32,
    pub white: String,
    pub degree: usize,
    pub image_size: usize,
    pub complement_components: Option<usize>,
}

/// One row per white vertex: `deg(w_i)`, `#φ_i(P)` and the component count.
pub fn phi_table(s: &Sprout) -> Result<Vec<PhiRow>, AnalysisError> {
    let regular = s.validate().is_regular;
    s.whites()
        .map(|w| {
            let i = w.index();
            Ok(PhiRow {
                index: i,
                white: s.white_name(w).to_string(),
                degree: s.degree(Vertex::White(w)),
                image_size: phi(s, i)?.image_all().len(),
                complement_components: if regular { Some(complement_components(s, i)?) } else { None },
            })
        })
        .collect()
}

/// Precomputed `φ_i` tables with a memo of stabilized subset orbits.
#[derive(Debug)]
pub struct PhiDynamics {
    maps: Vec<BoundaryMap>,
    points: usize,
    orbits: Mutex<HashMap<(BoundarySubset, Vec<u32>), usize>>,
}

impl PhiDynamics {
    pub fn new(s: &Sprout) -> Result<Self, AnalysisError> {
        let maps = (1..=s.num_whites() as u32).map(|i| phi(s, i)).collect::<Result<_, _>>()?;
        Ok(PhiDynamics {
            maps,
            points: s.num_points(),
            orbits: Mutex::new(HashMap::new()),
        })
    }

    pub fn map(&self, i: u32) -> Result<&BoundaryMap, AnalysisError> {
        if i == 0 {
            return Err(AnalysisError::IndexOutOfRange(i));
        }
        self.maps.get(i as usize - 1).ok_or(AnalysisError::IndexOutOfRange(i))
    }

    pub fn num_maps(&self) -> usize {
        self.maps.len()
    }

    pub fn all(&self) -> BoundarySubset {
        BoundarySubset::full(self.points)
    }

    /// `φ_𝐣(Q)`.
    pub fn image(&self, word: &[u32], q: BoundarySubset) -> Result<BoundarySubset, AnalysisError> {
        word.iter().try_fold(q, |q, &j| Ok(self.map(j)?.image(q)))
    }

    /// `N_φ(α) = lim #φ_{α|n}(P)`.
    pub fn n_phi(&self, alpha: &Address) -> Result<usize, AnalysisError> {
        let start = self.image(alpha.preperiod(), self.all())?;
        let key = (start, alpha.period().to_vec());
        if let Some(&n) = self.orbits.lock().expect("orbit memo").get(&key) {
            return Ok(n);
        }
        // Cardinality is non-increasing; at period boundaries the orbit is
        // eventually periodic, and the cardinality is constant on the cycle.
        let mut seen = std::collections::HashSet::new();
        let mut q = start;
        while seen.insert(q) {
            q = self.image(alpha.period(), q)?;
        }
        let n = q.len();
        self.orbits.lock().expect("orbit memo").insert(key, n);
        Ok(n)
    }
}

pub fn n_phi(s: &Sprout, alpha: &Address) -> Result<usize, AnalysisError> {
    PhiDynamics::new(s)?.n_phi(alpha)
}
