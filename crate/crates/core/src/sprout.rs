//! P-sprouts: labeled bipartite trees whose white vertices are the first-level
//! copies of an attractor, black vertices are contact and boundary points, and
//! every edge `(w_k, b)` carries the boundary point `p` with `S_k(p) = b`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// Position of a white vertex; `WhiteId(k)` is the map with index `k + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WhiteId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BlackId(pub usize);

/// Position of a boundary point in the canonical order of `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PointId(pub usize);

impl WhiteId {
    /// The 1-based index of the corresponding map.
    pub fn index(self) -> u32 {
        self.0 as u32 + 1
    }

    pub fn from_index(index: u32) -> Self {
        WhiteId(index as usize - 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Vertex {
    White(WhiteId),
    Black(BlackId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub white: WhiteId,
    pub black: BlackId,
    pub label: PointId,
}

/// On-disk form of a sprout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SproutDocument {
    pub whites: Vec<String>,
    pub blacks: Vec<String>,
    pub boundary: Vec<String>,
    pub edges: Vec<EdgeDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub w: String,
    pub b: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sprout {
    whites: Vec<String>,
    blacks: Vec<String>,
    boundary: Vec<BlackId>,
    point_of: Vec<Option<PointId>>,
    edges: Vec<Edge>,
    white_edges: Vec<Vec<usize>>,
    black_edges: Vec<Vec<usize>>,
}

impl Sprout {
    /// Builds a sprout from names, checking referential integrity only.
    pub fn from_document(doc: &SproutDocument) -> Result<Self, ParseError> {
        let mut white_ids = HashMap::new();
        let mut black_ids = HashMap::new();
        for (i, w) in doc.whites.iter().enumerate() {
            if white_ids.insert(w.as_str(), WhiteId(i)).is_some() {
                return Err(ParseError::DuplicateId(w.clone()));
            }
        }
        for (i, b) in doc.blacks.iter().enumerate() {
            if white_ids.contains_key(b.as_str()) || black_ids.insert(b.as_str(), BlackId(i)).is_some() {
                return Err(ParseError::DuplicateId(b.clone()));
            }
        }
        if doc.boundary.len() > 64 {
            return Err(ParseError::TooManyBoundaryPoints(doc.boundary.len()));
        }
        let mut point_of = vec![None; doc.blacks.len()];
        let mut boundary = Vec::with_capacity(doc.boundary.len());
        for (i, p) in doc.boundary.iter().enumerate() {
            let b = *black_ids.get(p.as_str()).ok_or_else(|| ParseError::Dangling {
                kind: "black vertex",
                id: p.clone(),
            })?;
            if point_of[b.0].is_some() {
                return Err(ParseError::DuplicateId(p.clone()));
            }
            point_of[b.0] = Some(PointId(i));
            boundary.push(b);
        }
        let mut edges = Vec::with_capacity(doc.edges.len());
        let mut seen = BTreeSet::new();
        for e in &doc.edges {
            let white = *white_ids.get(e.w.as_str()).ok_or_else(|| ParseError::Dangling {
                kind: "white vertex",
                id: e.w.clone(),
            })?;
            let black = *black_ids.get(e.b.as_str()).ok_or_else(|| ParseError::Dangling {
                kind: "black vertex",
                id: e.b.clone(),
            })?;
            let label_black = *black_ids.get(e.label.as_str()).ok_or_else(|| ParseError::Dangling {
                kind: "label",
                id: e.label.clone(),
            })?;
            let label = point_of[label_black.0].ok_or_else(|| ParseError::LabelNotBoundary(e.label.clone()))?;
            if !seen.insert((white, black)) {
                return Err(ParseError::MultiEdge {
                    white: e.w.clone(),
                    black: e.b.clone(),
                });
            }
            edges.push(Edge { white, black, label });
        }
        Ok(Self::assemble(doc.whites.clone(), doc.blacks.clone(), boundary, point_of, edges))
    }

    fn assemble(
        whites: Vec<String>,
        blacks: Vec<String>,
        boundary: Vec<BlackId>,
        point_of: Vec<Option<PointId>>,
        edges: Vec<Edge>,
    ) -> Self {
        let mut white_edges = vec![Vec::new(); whites.len()];
        let mut black_edges = vec![Vec::new(); blacks.len()];
        for (i, e) in edges.iter().enumerate() {
            white_edges[e.white.0].push(i);
            black_edges[e.black.0].push(i);
        }
        Sprout {
            whites,
            blacks,
            boundary,
            point_of,
            edges,
            white_edges,
            black_edges,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let doc: SproutDocument = serde_json::from_str(text)?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> SproutDocument {
        SproutDocument {
            whites: self.whites.clone(),
            blacks: self.blacks.clone(),
            boundary: self.boundary.iter().map(|b| self.blacks[b.0].clone()).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDocument {
                    w: self.whites[e.white.0].clone(),
                    b: self.blacks[e.black.0].clone(),
                    label: self.point_name(e.label).to_string(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("sprout documents always serialize")
    }

    pub fn num_whites(&self) -> usize {
        self.whites.len()
    }

    pub fn num_blacks(&self) -> usize {
        self.blacks.len()
    }

    pub fn num_points(&self) -> usize {
        self.boundary.len()
    }

    pub fn whites(&self) -> impl Iterator<Item = WhiteId> {
        (0..self.whites.len()).map(WhiteId)
    }

    pub fn blacks(&self) -> impl Iterator<Item = BlackId> {
        (0..self.blacks.len()).map(BlackId)
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        (0..self.boundary.len()).map(PointId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn white_name(&self, w: WhiteId) -> &str {
        &self.whites[w.0]
    }

    pub fn black_name(&self, b: BlackId) -> &str {
        &self.blacks[b.0]
    }

    pub fn point_name(&self, p: PointId) -> &str {
        &self.blacks[self.boundary[p.0].0]
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        match v {
            Vertex::White(w) => self.white_name(w),
            Vertex::Black(b) => self.black_name(b),
        }
    }

    pub fn point_black(&self, p: PointId) -> BlackId {
        self.boundary[p.0]
    }

    pub fn point_of(&self, b: BlackId) -> Option<PointId> {
        self.point_of[b.0]
    }

    pub fn find_white(&self, name: &str) -> Option<WhiteId> {
        self.whites.iter().position(|w| w == name).map(WhiteId)
    }

    pub fn find_black(&self, name: &str) -> Option<BlackId> {
        self.blacks.iter().position(|b| b == name).map(BlackId)
    }

    pub fn find_point(&self, name: &str) -> Option<PointId> {
        self.find_black(name).and_then(|b| self.point_of(b))
    }

    /// Edge ids incident to a white vertex, in document order.
    pub fn white_edges(&self, w: WhiteId) -> impl Iterator<Item = &Edge> {
        self.white_edges[w.0].iter().map(move |&i| &self.edges[i])
    }

    pub fn black_edges(&self, b: BlackId) -> impl Iterator<Item = &Edge> {
        self.black_edges[b.0].iter().map(move |&i| &self.edges[i])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        match v {
            Vertex::White(w) => self.white_edges[w.0].len(),
            Vertex::Black(b) => self.black_edges[b.0].len(),
        }
    }

    pub fn edge_between(&self, w: WhiteId, b: BlackId) -> Option<&Edge> {
        self.white_edges(w).find(|e| e.black == b)
    }

    /// `φ̃(b)`: the labels on edges incident to `b`.
    pub fn label_set(&self, b: BlackId) -> BTreeSet<PointId> {
        self.black_edges(b).map(|e| e.label).collect()
    }

    /// Dense node numbering used by the tree algorithms: whites first, then blacks.
    pub(crate) fn node(&self, v: Vertex) -> usize {
        match v {
            Vertex::White(w) => w.0,
            Vertex::Black(b) => self.whites.len() + b.0,
        }
    }

    pub(crate) fn vertex(&self, node: usize) -> Vertex {
        if node < self.whites.len() {
            Vertex::White(WhiteId(node))
        } else {
            Vertex::Black(BlackId(node - self.whites.len()))
        }
    }

    pub(crate) fn num_nodes(&self) -> usize {
        self.whites.len() + self.blacks.len()
    }

    /// Neighbouring nodes with the connecting edge id.
    pub(crate) fn node_neighbors(&self, node: usize) -> Vec<(usize, usize)> {
        match self.vertex(node) {
            Vertex::White(w) => self.white_edges[w.0]
                .iter()
                .map(|&e| (self.node(Vertex::Black(self.edges[e].black)), e))
                .collect(),
            Vertex::Black(b) => self.black_edges[b.0]
                .iter()
                .map(|&e| (self.node(Vertex::White(self.edges[e].white)), e))
                .collect(),
        }
    }

    /// Connectivity and acyclicity of the underlying graph.
    pub fn is_tree(&self) -> bool {
        let n = self.num_nodes();
        if n == 0 || self.edges.len() + 1 != n {
            return false;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for (v, _) in self.node_neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == n
    }

    /// Renames every vertex; used for relabeling tests and isomorphism checks.
    pub fn renamed(&self, white: impl Fn(&str) -> String, black: impl Fn(&str) -> String) -> Sprout {
        let mut doc = self.to_document();
        doc.whites.iter_mut().for_each(|w| *w = white(w));
        doc.blacks.iter_mut().for_each(|b| *b = black(b));
        doc.boundary.iter_mut().for_each(|b| *b = black(b));
        for e in &mut doc.edges {
            e.w = white(&e.w);
            e.b = black(&e.b);
            e.label = black(&e.label);
        }
        Sprout::from_document(&doc).expect("renaming preserves referential integrity")
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    NotATree,
    LabelsNotInjective,
    LabelNotUsed,
    NotCorrectlyDefined,
    NotRegular,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::NotATree => "not-a-tree",
            Rule::LabelsNotInjective => "labels-not-injective",
            Rule::LabelNotUsed => "label-not-used",
            Rule::NotCorrectlyDefined => "not-correctly-defined",
            Rule::NotRegular => "not-regular",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub witness: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub structural_ok: bool,
    pub critical_set: Vec<String>,
    pub sprout_boundary: Vec<String>,
    pub is_correct: bool,
    pub is_regular: bool,
    pub violations: Vec<Violation>,
    /// Informational findings, such as boundary points touching a white vertex directly.
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.structural_ok && self.is_correct
    }
}

/// Least fixed point `⋃_{n≥1} φ̃ⁿ(C)` over the critical set `C`.
/// Serializes as its document.
impl Serialize for Sprout {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_document().serialize(serializer)
    }
}

pub fn sprout_boundary(s: &Sprout) -> BTreeSet<PointId> {
    let mut reached = BTreeSet::new();
    let mut frontier: Vec<BlackId> = critical_set(s);
    while let Some(b) = frontier.pop() {
        for p in s.label_set(b) {
            if reached.insert(p) {
                frontier.push(s.point_black(p));
            }
        }
    }
    reached
}

pub fn critical_set(s: &Sprout) -> Vec<BlackId> {
    s.blacks().filter(|&b| s.degree(Vertex::Black(b)) > 1).collect()
}

fn validate(s: &Sprout) -> ValidationReport {
    let mut violations = Vec::new();
    let mut notes = Vec::new();

    if !s.is_tree() {
        violations.push(Violation {
            rule: Rule::NotATree,
            witness: String::new(),
            message: format!(
                "{} edges on {} vertices do not form a connected acyclic graph",
                s.edges.len(),
                s.num_nodes()
            ),
        });
    }
    for w in s.whites() {
        let mut labels = BTreeSet::new();
        for e in s.white_edges(w) {
            if !labels.insert(e.label) {
                violations.push(Violation {
                    rule: Rule::LabelsNotInjective,
                    witness: s.white_name(w).to_string(),
                    message: format!("label `{}` repeats around `{}`", s.point_name(e.label), s.white_name(w)),
                });
            }
        }
    }
    let used: BTreeSet<PointId> = s.edges.iter().map(|e| e.label).collect();
    for p in s.points() {
        if !used.contains(&p) {
            violations.push(Violation {
                rule: Rule::LabelNotUsed,
                witness: s.point_name(p).to_string(),
                message: format!("`{}` labels no edge", s.point_name(p)),
            });
        }
    }
    let structural_ok = violations.is_empty();

    let boundary = sprout_boundary(s);
    let is_correct = boundary.len() == s.num_points();
    for p in s.points().filter(|p| !boundary.contains(p)) {
        violations.push(Violation {
            rule: Rule::NotCorrectlyDefined,
            witness: s.point_name(p).to_string(),
            message: format!(
                "not correctly defined: `{}` is not reached from the critical set",
                s.point_name(p)
            ),
        });
    }

    let mut is_regular = true;
    for b in s.blacks().filter(|&b| s.point_of(b).is_none()) {
        if s.degree(Vertex::Black(b)) <= 1 {
            is_regular = false;
            violations.push(Violation {
                rule: Rule::NotRegular,
                witness: s.black_name(b).to_string(),
                message: format!("non-boundary black vertex `{}` has degree ≤ 1", s.black_name(b)),
            });
        }
    }
    for w in s.whites() {
        if s.degree(Vertex::White(w)) <= 1 {
            is_regular = false;
            violations.push(Violation {
                rule: Rule::NotRegular,
                witness: s.white_name(w).to_string(),
                message: format!("white vertex `{}` has degree ≤ 1", s.white_name(w)),
            });
        }
    }

    for e in &s.edges {
        if let Some(p) = s.point_of(e.black) {
            notes.push(format!(
                "boundary point `{}` lies on copy `{}` with predecessor `{}`",
                s.point_name(p),
                s.white_name(e.white),
                s.point_name(e.label)
            ));
        }
    }

    ValidationReport {
        structural_ok,
        critical_set: critical_set(s).into_iter().map(|b| s.black_name(b).to_string()).collect(),
        sprout_boundary: boundary.into_iter().map(|p| s.point_name(p).to_string()).collect(),
        is_correct,
        is_regular,
        violations,
        notes,
    }
}
