//! The transformation graph `G_T` and its finitely many walks from `P`.
//!
//! Subset vertices are the images `φ_𝐢(P)` of size at least 3. Labeled arcs
//! follow `φ_i`; unlabeled arcs end a walk at a black vertex or a boundary
//! point where the Steiner subtree of the current subset branches.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::address::{Address, Word};
use crate::diagram::tarjan;
use crate::error::AnalysisError;
use crate::phi::{steiner_subtree, BoundarySubset, PhiDynamics};
use crate::sprout::{BlackId, PointId, Sprout, Vertex};

pub const DEFAULT_WALK_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SubsetArc {
    pub from: usize,
    pub to: usize,
    pub label: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformationGraph {
    /// Subset vertices in discovery order; `P` is vertex 0 whenever `#P ≥ 3`.
    pub subsets: Vec<BoundarySubset>,
    /// Black vertices of degree at least 3.
    pub blacks: Vec<BlackId>,
    /// Boundary points of degree at least 2.
    pub points: Vec<PointId>,
    pub subset_arcs: Vec<SubsetArc>,
    pub black_arcs: Vec<(usize, BlackId)>,
    pub point_arcs: Vec<(usize, PointId)>,
    cyclic: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GtWalk {
    /// An infinite walk: a simple path into a cycle, then around it forever.
    Infinite { vertices: Vec<usize>, address: Address },
    /// A finite walk ending with an arc to a black vertex.
    ToBlack { vertices: Vec<usize>, word: Word, black: BlackId },
    /// A finite walk ending with an arc to a boundary point.
    ToPoint { vertices: Vec<usize>, word: Word, point: PointId },
}

impl GtWalk {
    pub fn vertices(&self) -> &[usize] {
        match self {
            GtWalk::Infinite { vertices, .. } | GtWalk::ToBlack { vertices, .. } | GtWalk::ToPoint { vertices, .. } => vertices,
        }
    }
}

impl TransformationGraph {
    pub fn new(s: &Sprout, dynamics: &PhiDynamics) -> Result<Self, AnalysisError> {
        let report = s.validate();
        if !report.structural_ok || !report.is_correct {
            return Err(AnalysisError::Invalid(
                report.violations.first().map(|v| v.message.clone()).unwrap_or_default(),
            ));
        }
        if !report.is_regular {
            return Err(AnalysisError::NotRegular);
        }

        let blacks: Vec<BlackId> = s.blacks().filter(|&b| s.degree(Vertex::Black(b)) >= 3).collect();
        let points: Vec<PointId> = s
            .points()
            .filter(|&p| s.degree(Vertex::Black(s.point_black(p))) >= 2)
            .collect();

        let mut subsets = Vec::new();
        let mut index = BTreeMap::new();
        let mut subset_arcs = Vec::new();
        let all = dynamics.all();
        if all.len() >= 3 {
            subsets.push(all);
            index.insert(all, 0);
        }
        let mut queue: VecDeque<usize> = (0..subsets.len()).collect();
        while let Some(u) = queue.pop_front() {
            for i in 1..=dynamics.num_maps() as u32 {
                let image = dynamics.map(i)?.image(subsets[u]);
                if image.len() < 3 {
                    continue;
                }
                let v = *index.entry(image).or_insert_with(|| {
                    subsets.push(image);
                    queue.push_back(subsets.len() - 1);
                    subsets.len() - 1
                });
                subset_arcs.push(SubsetArc { from: u, to: v, label: i });
            }
        }
        subset_arcs.sort();

        let mut black_arcs = Vec::new();
        let mut point_arcs = Vec::new();
        for (u, &q) in subsets.iter().enumerate() {
            let tree = steiner_subtree(s, q)?;
            for &b in &blacks {
                let inside = s.point_of(b).is_some_and(|p| q.contains(p));
                if !inside && tree.degree(s, Vertex::Black(b)) >= 3 {
                    black_arcs.push((u, b));
                }
            }
            for &p in &points {
                if q.contains(p) && tree.degree(s, Vertex::Black(s.point_black(p))) >= 2 {
                    point_arcs.push((u, p));
                }
            }
        }

        let succ: Vec<Vec<usize>> = (0..subsets.len())
            .map(|u| subset_arcs.iter().filter(|a| a.from == u).map(|a| a.to).collect())
            .collect();
        let comp = tarjan(&succ);
        let mut size = vec![0usize; subsets.len()];
        for &c in &comp {
            size[c] += 1;
        }
        let cyclic = (0..subsets.len())
            .map(|u| size[comp[u]] > 1 || succ[u].contains(&u))
            .collect();

        let g = TransformationGraph {
            subsets,
            blacks,
            points,
            subset_arcs,
            black_arcs,
            point_arcs,
            cyclic,
        };
        for u in 0..g.subsets.len() {
            let out = g.out_degree(u);
            if out == 0 {
                return Err(AnalysisError::Invalid(format!("subset vertex {u} has no outgoing arc")));
            }
            if g.cyclic[u] && out != 1 {
                return Err(AnalysisError::Invalid(format!(
                    "cyclic subset vertex {u} has {out} outgoing arcs"
                )));
            }
        }
        Ok(g)
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn is_cyclic(&self, u: usize) -> bool {
        self.cyclic[u]
    }

    /// Arcs of all three kinds leaving subset vertex `u`.
    pub fn out_degree(&self, u: usize) -> usize {
        self.subset_arcs.iter().filter(|a| a.from == u).count()
            + self.black_arcs.iter().filter(|a| a.0 == u).count()
            + self.point_arcs.iter().filter(|a| a.0 == u).count()
    }

    pub fn subset_out(&self, u: usize) -> impl Iterator<Item = &SubsetArc> {
        self.subset_arcs.iter().filter(move |a| a.from == u)
    }

    /// Every walk from `P`, in a deterministic order.
    pub fn walks(&self, cap: usize) -> Result<Vec<GtWalk>, AnalysisError> {
        let mut out = Vec::new();
        if self.is_empty() {
            return Ok(out);
        }
        let mut path = vec![0usize];
        let mut word = Vec::new();
        self.extend_walks(&mut path, &mut word, &mut out, cap)?;
        out.sort();
        Ok(out)
    }

    fn extend_walks(
        &self,
        path: &mut Vec<usize>,
        word: &mut Word,
        out: &mut Vec<GtWalk>,
        cap: usize,
    ) -> Result<(), AnalysisError> {
        if out.len() > cap {
            return Err(AnalysisError::SizeCap(format!("more than {cap} walks in the transformation graph")));
        }
        let u = *path.last().expect("walks start at P");
        if self.cyclic[u] {
            let mut period = Vec::new();
            let mut v = u;
            loop {
                let arc = self.subset_out(v).next().expect("cyclic vertices have an arc");
                period.push(arc.label);
                v = arc.to;
                if v == u {
                    break;
                }
            }
            out.push(GtWalk::Infinite {
                vertices: path.clone(),
                address: Address::new(word.clone(), period),
            });
            return Ok(());
        }
        for &(_, b) in self.black_arcs.iter().filter(|a| a.0 == u) {
            out.push(GtWalk::ToBlack { vertices: path.clone(), word: word.clone(), black: b });
        }
        for &(_, p) in self.point_arcs.iter().filter(|a| a.0 == u) {
            out.push(GtWalk::ToPoint { vertices: path.clone(), word: word.clone(), point: p });
        }
        let arcs: Vec<SubsetArc> = self.subset_out(u).copied().collect();
        for arc in arcs {
            path.push(arc.to);
            word.push(arc.label);
            self.extend_walks(path, word, out, cap)?;
            path.pop();
            word.pop();
        }
        Ok(())
    }

    /// Graphviz rendering with subset contents in box labels.
    pub fn to_dot(&self, s: &Sprout) -> String {
        let mut dot = String::from("digraph transformation_graph {\n  rankdir=LR;\n");
        for (u, q) in self.subsets.iter().enumerate() {
            let label = if u == 0 && q.len() == s.num_points() { "P".to_string() } else { format!("Q{u}") };
            dot += &format!(
                "  \"Q{u}\" [shape=box, label=\"{label} = {{{}}}\"];\n",
                q.names(s).join(",")
            );
        }
        for &b in &self.blacks {
            dot += &format!("  \"b:{}\" [shape=circle, style=filled, fillcolor=black, fontcolor=white, label=\"{}\"];\n", s.black_name(b), s.black_name(b));
        }
        for &p in &self.points {
            dot += &format!("  \"p:{}\" [shape=doublecircle, label=\"{}\"];\n", s.point_name(p), s.point_name(p));
        }
        for a in &self.subset_arcs {
            dot += &format!("  \"Q{}\" -> \"Q{}\" [label=\"{}\"];\n", a.from, a.to, a.label);
        }
        for &(u, b) in &self.black_arcs {
            dot += &format!("  \"Q{u}\" -> \"b:{}\";\n", s.black_name(b));
        }
        for &(u, p) in &self.point_arcs {
            dot += &format!("  \"Q{u}\" -> \"p:{}\";\n", s.point_name(p));
        }
        dot.push_str("}\n");
        dot
    }
}

pub fn transformation_graph(s: &Sprout) -> Result<TransformationGraph, AnalysisError> {
    TransformationGraph::new(s, &PhiDynamics::new(s)?)
}

pub fn enumerate_gt_walks(g: &TransformationGraph) -> Result<Vec<GtWalk>, AnalysisError> {
    g.walks(DEFAULT_WALK_CAP)
}
