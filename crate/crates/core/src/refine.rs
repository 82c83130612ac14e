//! The sprout `Γ²` of the squared system `{S_i S_j}` and its iterates.

use std::collections::BTreeMap;

use crate::error::AnalysisError;
use crate::sprout::{EdgeDocument, Sprout, SproutDocument};

pub const DEFAULT_WHITE_CAP: usize = 100_000;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Whites of `Γ²` are pairs `w.w'` ordered so that index `(i−1)·m + j` is
/// the map `S_i S_j`. Blacks are the pairs `w×b` with `w×p` glued to `b₁`
/// whenever `(w, b₁)` is an edge labeled `p`; a class keeps the name of the
/// original black it contains, otherwise `w.b`.
pub fn square(s: &Sprout) -> Sprout {
    let m = s.num_whites();
    let nb = s.num_blacks();
    // Slots: `w×b` at `w·nb + b`, then the original blacks.
    let slot = |w: usize, b: usize| w * nb + b;
    let original = |b: usize| m * nb + b;
    let mut parent: Vec<usize> = (0..m * nb + nb).collect();
    for e in s.edges() {
        let p = s.point_black(e.label).0;
        let a = find(&mut parent, slot(e.white.0, p));
        let b = find(&mut parent, original(e.black.0));
        // Keep the original black as the representative.
        if a != b {
            if b >= m * nb {
                parent[a] = b;
            } else {
                parent[b] = a;
            }
        }
    }
    let mut names: BTreeMap<usize, String> = BTreeMap::new();
    for b in s.blacks() {
        let r = find(&mut parent, original(b.0));
        names.insert(r, s.black_name(b).to_string());
    }
    let mut blacks = Vec::new();
    let mut black_of = |parent: &mut Vec<usize>, w: usize, b: usize| -> String {
        let r = find(parent, slot(w, b));
        names
            .entry(r)
            .or_insert_with(|| format!("{}.{}", s.white_name(crate::WhiteId(w)), s.black_name(crate::BlackId(b))))
            .clone()
    };

    let mut whites = Vec::with_capacity(m * m);
    let mut edges = Vec::new();
    for w in s.whites() {
        for w2 in s.whites() {
            let name = format!("{}.{}", s.white_name(w), s.white_name(w2));
            for e in s.white_edges(w2) {
                edges.push(EdgeDocument {
                    w: name.clone(),
                    b: black_of(&mut parent, w.0, e.black.0),
                    label: s.point_name(e.label).to_string(),
                });
            }
            whites.push(name);
        }
    }
    for e in &edges {
        if !blacks.contains(&e.b) {
            blacks.push(e.b.clone());
        }
    }
    let boundary: Vec<String> = s.points().map(|p| s.point_name(p).to_string()).collect();
    for p in &boundary {
        if !blacks.contains(p) {
            blacks.push(p.clone());
        }
    }
    let doc = SproutDocument { whites, blacks, boundary, edges };
    Sprout::from_document(&doc).expect("the square of a sprout is well formed")
}

pub fn iterate_square(s: &Sprout, n: u32) -> Result<Sprout, AnalysisError> {
    iterate_square_capped(s, n, DEFAULT_WHITE_CAP)
}

pub fn iterate_square_capped(s: &Sprout, n: u32, cap: usize) -> Result<Sprout, AnalysisError> {
    let mut current = s.clone();
    for _ in 0..n {
        let next = current.num_whites().saturating_mul(current.num_whites());
        if next > cap {
            return Err(AnalysisError::SizeCap(format!("{next} white vertices exceed the cap of {cap}")));
        }
        current = square(&current);
    }
    Ok(current)
}
