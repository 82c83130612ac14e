//! Canonical forms of sprouts and explicit isomorphisms between them.
//!
//! Isomorphisms may permute white vertices, black vertices and the boundary
//! set, as long as incidence and edge labels are carried along. The digest is
//! the smallest rooted code over the tree centroids and over every numbering
//! of `P` compatible with a colour refinement; the refinement only prunes
//! numberings that could never give the minimum.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::sprout::{Sprout, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm {
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    pub whites: BTreeMap<String, String>,
    pub blacks: BTreeMap<String, String>,
    /// The induced renaming of the boundary set.
    pub boundary: BTreeMap<String, String>,
}

struct Best {
    code: String,
    root: usize,
    numbering: Vec<usize>,
}

/// Colours of all nodes, refined until stable. Values are ranks of sorted
/// signatures, so they do not depend on the order of vertices in the input.
fn refined_colours(s: &Sprout) -> Vec<usize> {
    let n = s.num_nodes();
    let point_node: Vec<Option<usize>> = (0..n)
        .map(|u| match s.vertex(u) {
            Vertex::Black(b) => s.point_of(b).map(|p| p.0),
            Vertex::White(_) => None,
        })
        .collect();
    let label_node = |e: usize| s.node(Vertex::Black(s.point_black(s.edges()[e].label)));
    let mut colour: Vec<usize> = (0..n)
        .map(|u| match (s.vertex(u), point_node[u]) {
            (Vertex::White(_), _) => 0,
            (Vertex::Black(_), None) => 1,
            (Vertex::Black(_), Some(_)) => 2,
        })
        .collect();
    let mut classes = 0;
    loop {
        let signatures: Vec<(usize, Vec<(usize, usize)>, Vec<(usize, usize)>)> = (0..n)
            .map(|u| {
                let mut around: Vec<(usize, usize)> = s
                    .node_neighbors(u)
                    .into_iter()
                    .map(|(v, e)| (colour[v], colour[label_node(e)]))
                    .collect();
                around.sort();
                let mut labelled: Vec<(usize, usize)> = Vec::new();
                if let Some(p) = point_node[u] {
                    for e in s.edges().iter().filter(|e| e.label.0 == p) {
                        labelled.push((colour[s.node(Vertex::White(e.white))], colour[s.node(Vertex::Black(e.black))]));
                    }
                    labelled.sort();
                }
                (colour[u], around, labelled)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        colour = signatures.iter().map(|sig| distinct.binary_search(sig).expect("present")).collect();
        if distinct.len() == classes {
            return colour;
        }
        classes = distinct.len();
    }
}

fn centroids(s: &Sprout) -> Vec<usize> {
    let n = s.num_nodes();
    if n == 0 {
        return Vec::new();
    }
    let mut order = vec![0usize];
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for (v, _) in s.node_neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                parent[v] = u;
                order.push(v);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &u in order.iter().rev() {
        if parent[u] != usize::MAX {
            size[parent[u]] += size[u];
        }
    }
    let heaviest = |u: usize| {
        let mut m = n - size[u];
        for (v, _) in s.node_neighbors(u) {
            if parent[v] == u {
                m = m.max(size[v]);
            }
        }
        m
    };
    let best = (0..n).map(heaviest).min().expect("nonempty");
    (0..n).filter(|&u| heaviest(u) == best).collect()
}

/// Rooted code of `u` with boundary points numbered by `numbering`.
fn code(s: &Sprout, u: usize, parent: usize, numbering: &[usize]) -> String {
    let mut children: Vec<String> = s
        .node_neighbors(u)
        .into_iter()
        .filter(|&(v, _)| v != parent)
        .map(|(v, e)| format!("{}:{}", numbering[s.edges()[e].label.0], code(s, v, u, numbering)))
        .collect();
    children.sort();
    let head = match s.vertex(u) {
        Vertex::White(_) => "w".to_string(),
        Vertex::Black(b) => match s.point_of(b) {
            Some(p) => format!("p{};", numbering[p.0]),
            None => "b".to_string(),
        },
    };
    format!("({head}{})", children.concat())
}

/// Calls `f` with every numbering of `P` that orders colour classes by
/// colour and permutes freely inside each class.
fn for_each_numbering(s: &Sprout, colours: &[usize], mut f: impl FnMut(&[usize])) {
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in s.points() {
        classes.entry(colours[s.node(Vertex::Black(s.point_black(p)))]).or_default().push(p.0);
    }
    let groups: Vec<Vec<usize>> = classes.into_values().collect();
    let mut used: Vec<Vec<bool>> = groups.iter().map(|g| vec![false; g.len()]).collect();
    let mut numbering = vec![0usize; s.num_points()];
    assign(&groups, (0, 0, 0), &mut used, &mut numbering, &mut f);
}

/// Fills slot `offset + i` of group `g`, then moves on.
fn assign(
    groups: &[Vec<usize>],
    (g, i, offset): (usize, usize, usize),
    used: &mut [Vec<bool>],
    numbering: &mut [usize],
    f: &mut dyn FnMut(&[usize]),
) {
    if g == groups.len() {
        f(numbering);
        return;
    }
    if i == groups[g].len() {
        assign(groups, (g + 1, 0, offset + i), used, numbering, f);
        return;
    }
    for j in 0..groups[g].len() {
        if !used[g][j] {
            used[g][j] = true;
            numbering[groups[g][j]] = offset + i;
            assign(groups, (g, i + 1, offset), used, numbering, f);
            used[g][j] = false;
        }
    }
}

fn best(s: &Sprout) -> Option<Best> {
    let colours = refined_colours(s);
    let roots = centroids(s);
    let mut best: Option<Best> = None;
    for_each_numbering(s, &colours, |numbering| {
        for &r in &roots {
            let c = code(s, r, usize::MAX, numbering);
            if best.as_ref().is_none_or(|b| c < b.code) {
                best = Some(Best { code: c, root: r, numbering: numbering.to_vec() });
            }
        }
    });
    best
}

pub fn canonical_form(s: &Sprout) -> CanonicalForm {
    CanonicalForm {
        digest: best(s).map(|b| b.code).unwrap_or_default(),
    }
}

/// Pairs the nodes of two equally coded rooted trees.
fn align(
    a: &Sprout,
    b: &Sprout,
    (u, pu): (usize, usize),
    (v, pv): (usize, usize),
    (na, nb): (&[usize], &[usize]),
    pairs: &mut Vec<(usize, usize)>,
) {
    pairs.push((u, v));
    let children = |s: &Sprout, x: usize, px: usize, num: &[usize]| {
        let mut c: Vec<(String, usize)> = s
            .node_neighbors(x)
            .into_iter()
            .filter(|&(y, _)| y != px)
            .map(|(y, e)| (format!("{}:{}", num[s.edges()[e].label.0], code(s, y, x, num)), y))
            .collect();
        c.sort();
        c
    };
    let ca = children(a, u, pu, na);
    let cb = children(b, v, pv, nb);
    for ((_, x), (_, y)) in ca.into_iter().zip(cb) {
        align(a, b, (x, u), (y, v), (na, nb), pairs);
    }
}

fn verify(a: &Sprout, b: &Sprout, iso: &Isomorphism) -> bool {
    if a.num_whites() != b.num_whites() || a.num_blacks() != b.num_blacks() || a.edges().len() != b.edges().len() {
        return false;
    }
    let ok_points = a.points().all(|p| {
        let image = &iso.boundary[a.point_name(p)];
        iso.blacks.get(a.black_name(a.point_black(p))) == Some(image) && b.find_point(image).is_some()
    });
    ok_points
        && a.edges().iter().all(|e| {
            let w = b.find_white(&iso.whites[a.white_name(e.white)]);
            let k = b.find_black(&iso.blacks[a.black_name(e.black)]);
            match (w, k) {
                (Some(w), Some(k)) => b
                    .edge_between(w, k)
                    .is_some_and(|f| b.point_name(f.label) == iso.boundary[a.point_name(e.label)]),
                _ => false,
            }
        })
}

/// An explicit isomorphism `a → b`, checked edge by edge, or `None`.
///
/// # Panics
/// Panics if the canonical forms agree but the reconstructed mapping fails
/// verification.
pub fn isomorphic(a: &Sprout, b: &Sprout) -> Option<Isomorphism> {
    if (a.num_whites(), a.num_blacks(), a.num_points()) != (b.num_whites(), b.num_blacks(), b.num_points()) {
        return None;
    }
    let (ba, bb) = (best(a)?, best(b)?);
    if ba.code != bb.code {
        return None;
    }
    let mut pairs = Vec::new();
    align(a, b, (ba.root, usize::MAX), (bb.root, usize::MAX), (&ba.numbering, &bb.numbering), &mut pairs);
    let mut iso = Isomorphism {
        whites: BTreeMap::new(),
        blacks: BTreeMap::new(),
        boundary: BTreeMap::new(),
    };
    for (u, v) in pairs {
        match (a.vertex(u), b.vertex(v)) {
            (Vertex::White(x), Vertex::White(y)) => {
                iso.whites.insert(a.white_name(x).to_string(), b.white_name(y).to_string());
            }
            (Vertex::Black(x), Vertex::Black(y)) => {
                iso.blacks.insert(a.black_name(x).to_string(), b.black_name(y).to_string());
            }
            _ => panic!("canonical codes matched vertices of different kinds"),
        }
    }
    for p in a.points() {
        let q = b.points().find(|q| bb.numbering[q.0] == ba.numbering[p.0]).expect("numberings are bijective");
        iso.boundary.insert(a.point_name(p).to_string(), b.point_name(q).to_string());
    }
    assert!(verify(a, b, &iso), "equal canonical forms without a verifiable isomorphism");
    Some(iso)
}
