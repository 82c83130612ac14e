//! Seeded random sprouts.
//!
//! A bipartite tree is grown node by node, leaf blacks become boundary
//! points (plus a few interior ones), and every white labels its edges
//! injectively. Candidates that are not correct, regular and
//! label-injective are rejected, so a returned sprout is always usable by
//! every analysis.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::IndexDiagram;
use crate::sprout::{EdgeDocument, Sprout, SproutDocument};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomConfig {
    pub min_whites: usize,
    pub max_whites: usize,
    pub max_points: usize,
    /// Candidates drawn before giving up.
    pub attempts: usize,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig {
            min_whites: 2,
            max_whites: 8,
            max_points: 6,
            attempts: 10_000,
        }
    }
}

/// One candidate; may be invalid.
pub fn candidate(rng: &mut impl Rng, cfg: &RandomConfig) -> Option<Sprout> {
    let m = rng.gen_range(cfg.min_whites..=cfg.max_whites);
    let extra = rng.gen_range(0..=cfg.max_points);
    let nb = (m - 1 + extra).max(1);

    // Node kinds: true = white.
    let mut white_left = m - 1;
    let mut black_left = nb;
    let mut kinds = vec![true];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    while white_left + black_left > 0 {
        let has_black = kinds.iter().any(|&k| !k);
        let add_white = if !has_black {
            false
        } else if black_left == 0 {
            true
        } else if white_left == 0 {
            false
        } else {
            rng.gen_bool(white_left as f64 / (white_left + black_left) as f64)
        };
        let parents: Vec<usize> = (0..kinds.len()).filter(|&u| kinds[u] != add_white).collect();
        let parent = *parents.choose(rng)?;
        let u = kinds.len();
        kinds.push(add_white);
        edges.push(if add_white { (u, parent) } else { (parent, u) });
        if add_white {
            white_left -= 1;
        } else {
            black_left -= 1;
        }
    }

    let degree = |u: usize| edges.iter().filter(|&&(w, b)| w == u || b == u).count();
    let whites: Vec<usize> = (0..kinds.len()).filter(|&u| kinds[u]).collect();
    let blacks: Vec<usize> = (0..kinds.len()).filter(|&u| !kinds[u]).collect();
    let mut boundary: Vec<usize> = blacks.iter().copied().filter(|&b| degree(b) == 1).collect();
    for &b in &blacks {
        if degree(b) > 1 && rng.gen_bool(0.2) {
            boundary.push(b);
        }
    }
    if boundary.len() < 2 || boundary.len() > cfg.max_points {
        return None;
    }
    boundary.shuffle(rng);

    let white_name = |u: usize| format!("w{}", whites.iter().position(|&w| w == u).expect("white") + 1);
    let black_name = |u: usize| match boundary.iter().position(|&b| b == u) {
        Some(i) => format!("p{}", i + 1),
        None => format!("c{}", blacks.iter().position(|&b| b == u).expect("black") + 1),
    };
    let mut doc_edges = Vec::new();
    for &w in &whites {
        let mine: Vec<usize> = edges.iter().filter(|e| e.0 == w).map(|e| e.1).collect();
        if mine.len() > boundary.len() {
            return None;
        }
        let mut labels = boundary.clone();
        labels.shuffle(rng);
        for (b, l) in mine.into_iter().zip(labels) {
            doc_edges.push(EdgeDocument {
                w: white_name(w),
                b: black_name(b),
                label: black_name(l),
            });
        }
    }
    doc_edges.sort_by(|a, b| (&a.w, &a.b).cmp(&(&b.w, &b.b)));
    let mut boundary_names: Vec<String> = boundary.iter().map(|&b| black_name(b)).collect();
    boundary_names.sort_by_key(|n| n[1..].parse::<usize>().unwrap_or(0));
    let mut black_names: Vec<String> = boundary_names.clone();
    black_names.extend(blacks.iter().filter(|b| !boundary.contains(b)).map(|&b| black_name(b)));
    let doc = SproutDocument {
        whites: (1..=m).map(|i| format!("w{i}")).collect(),
        blacks: black_names,
        boundary: boundary_names,
        edges: doc_edges,
    };
    Sprout::from_document(&doc).ok()
}

/// Whether `s` is a tree that is correct, regular and label-injective.
pub fn is_usable(s: &Sprout) -> bool {
    let report = s.validate();
    report.is_valid() && report.is_regular && IndexDiagram::new(s).labels_injective()
}

/// A usable random sprout drawn from `rng`, or `None` after `cfg.attempts`.
pub fn random_sprout_with(rng: &mut impl Rng, cfg: &RandomConfig) -> Option<Sprout> {
    (0..cfg.attempts).find_map(|_| candidate(rng, cfg).filter(is_usable))
}

pub fn random_sprout(seed: u64, cfg: &RandomConfig) -> Option<Sprout> {
    random_sprout_with(&mut ChaCha8Rng::seed_from_u64(seed), cfg)
}
