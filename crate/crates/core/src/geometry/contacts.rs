//! Pairwise contacts between first-level copies.

use std::collections::HashMap;

use serde::Serialize;

use super::{dist, AffineMap, PlanarIfs, Point};

/// Ball pairs kept per refinement level before the search gives up on a
/// pair of copies and declares the contact set large.
pub const PAIR_CAP: usize = 200_000;
const POLISH_LEVELS: usize = 200;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PairVerdict {
    Empty,
    Singleton { point: Point },
    /// Several separated clusters, or one cluster that does not shrink.
    SuspectedNonSingleton { clusters: Vec<Point>, spread: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairContact {
    /// 1-based map indices, `i < j`.
    pub i: usize,
    pub j: usize,
    #[serde(flatten)]
    pub verdict: PairVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContactTable {
    pub pairs: Vec<PairContact>,
    pub depth: u32,
    pub tol: f64,
    /// Largest ball radius at the survey depth.
    pub resolution: f64,
    /// Largest diameter of a polished singleton cluster.
    pub spread: f64,
}

impl ContactTable {
    /// `(i, j, x)` for every singleton contact.
    pub fn contacts(&self) -> impl Iterator<Item = (usize, usize, Point)> + '_ {
        self.pairs.iter().filter_map(|c| match c.verdict {
            PairVerdict::Singleton { point } => Some((c.i, c.j, point)),
            _ => None,
        })
    }

    pub fn sip_violation(&self) -> Option<(usize, usize)> {
        self.pairs
            .iter()
            .find(|c| matches!(c.verdict, PairVerdict::SuspectedNonSingleton { .. }))
            .map(|c| (c.i, c.j))
    }
}

#[derive(Clone, Copy)]
struct Ball {
    map: AffineMap,
    radius: f64,
}

struct Search<'a> {
    ifs: &'a PlanarIfs,
    centre: Point,
    tol: f64,
}

impl Search<'_> {
    fn centre_of(&self, b: &Ball) -> Point {
        b.map.apply(self.centre)
    }

    fn overlap(&self, u: &Ball, v: &Ball) -> bool {
        dist(self.centre_of(u), self.centre_of(v)) <= u.radius + v.radius + self.tol
    }

    fn children(&self, b: &Ball) -> impl Iterator<Item = Ball> + '_ {
        let b = *b;
        self.ifs.maps().iter().enumerate().map(move |(k, m)| Ball {
            map: b.map.compose(m),
            radius: b.radius * self.ifs.ratio(k),
        })
    }

    /// Refines every pair once; `None` when the cap is hit.
    fn refine(&self, pairs: &[(Ball, Ball)]) -> Option<Vec<(Ball, Ball)>> {
        let mut next = Vec::new();
        for (u, v) in pairs {
            // Split only the larger ball so radii stay comparable.
            if u.radius >= v.radius {
                for c in self.children(u) {
                    if self.overlap(&c, v) {
                        next.push((c, *v));
                    }
                }
            } else {
                for c in self.children(v) {
                    if self.overlap(u, &c) {
                        next.push((*u, c));
                    }
                }
            }
            if next.len() > PAIR_CAP {
                return None;
            }
        }
        Some(next)
    }

    fn midpoints(&self, pairs: &[(Ball, Ball)]) -> Vec<Point> {
        pairs
            .iter()
            .map(|(u, v)| {
                let (p, q) = (self.centre_of(u), self.centre_of(v));
                [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0]
            })
            .collect()
    }
}

fn radius_of(pairs: &[(Ball, Ball)]) -> f64 {
    pairs.iter().map(|(u, v)| u.radius.max(v.radius)).fold(0.0, f64::max)
}

/// Single-linkage clusters of `points` at distance `link`, each returned as
/// its centroid and bounding-box diameter, in a deterministic order.
fn clusters(points: &[Point], link: f64) -> Vec<(Point, f64)> {
    let cell = |p: &Point| ((p[0] / link).floor() as i64, (p[1] / link).floor() as i64);
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        grid.entry(cell(p)).or_default().push(i);
    }
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, p) in points.iter().enumerate() {
        let (cx, cy) = cell(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(near) = grid.get(&(cx + dx, cy + dy)) {
                    for &j in near {
                        if j < i && dist(*p, points[j]) <= link {
                            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                            parent[a.max(b)] = a.min(b);
                        }
                    }
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..points.len() {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => g.1.push(i),
            None => groups.push((r, vec![i])),
        }
    }
    groups
        .into_iter()
        .map(|(_, members)| {
            let n = members.len() as f64;
            let sx: f64 = members.iter().map(|&i| points[i][0]).sum();
            let sy: f64 = members.iter().map(|&i| points[i][1]).sum();
            let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
            for &i in &members {
                for k in 0..2 {
                    lo[k] = lo[k].min(points[i][k]);
                    hi[k] = hi[k].max(points[i][k]);
                }
            }
            ([sx / n, sy / n], dist(lo, hi))
        })
        .collect()
}

enum Outcome {
    Empty,
    Singleton(Point, f64),
    Spread(Vec<Point>, f64),
}

fn classify_pair(search: &Search, i: usize, j: usize, depth: u32) -> (Outcome, f64) {
    let (_, r) = search.ifs.invariant_ball();
    let root = |k: usize| Ball {
        map: search.ifs.maps()[k],
        radius: r * search.ifs.ratio(k),
    };
    let mut pairs = vec![(root(i), root(j))];
    if !search.overlap(&pairs[0].0, &pairs[0].1) {
        return (Outcome::Empty, 0.0);
    }
    // Each refinement splits one side, so survey by radius rather than
    // by step count.
    let target = r * search.ifs.max_ratio().powi(depth as i32);
    let mut capped = false;
    while radius_of(&pairs) > target {
        match search.refine(&pairs) {
            Some(next) => pairs = next,
            None => {
                capped = true;
                break;
            }
        }
        if pairs.is_empty() {
            return (Outcome::Empty, 0.0);
        }
    }
    let resolution = radius_of(&pairs);
    let judge = |pairs: &[(Ball, Ball)], resolution: f64| {
        let found = clusters(&search.midpoints(pairs), 4.0 * resolution + search.tol);
        let spread = found.iter().map(|c| c.1).fold(0.0, f64::max);
        (found, spread)
    };
    let (found, spread) = judge(&pairs, resolution);
    if capped || found.len() > 1 || spread > 10.0 * resolution {
        return (Outcome::Spread(found.into_iter().map(|c| c.0).collect(), spread), resolution);
    }
    // Polish the single cluster down to the tolerance.
    let mut level = 0;
    while radius_of(&pairs) > search.tol && level < POLISH_LEVELS {
        match search.refine(&pairs) {
            Some(next) if !next.is_empty() => pairs = next,
            Some(_) => return (Outcome::Empty, resolution),
            None => break,
        }
        level += 1;
    }
    let (found, spread) = judge(&pairs, radius_of(&pairs));
    if found.len() > 1 {
        return (Outcome::Spread(found.into_iter().map(|c| c.0).collect(), spread), resolution);
    }
    (Outcome::Singleton(found[0].0, spread), resolution)
}

/// Contacts between every pair of first-level copies, surveyed to `depth`
/// levels and polished to `tol`.
pub fn detect_intersections(ifs: &PlanarIfs, depth: u32, tol: f64) -> ContactTable {
    let (centre, _) = ifs.invariant_ball();
    let search = Search { ifs, centre, tol };
    let m = ifs.num_maps();
    let mut pairs = Vec::new();
    let (mut resolution, mut spread) = (0.0f64, 0.0f64);
    for i in 0..m {
        for j in i + 1..m {
            let (outcome, res) = classify_pair(&search, i, j, depth.max(1));
            resolution = resolution.max(res);
            let verdict = match outcome {
                Outcome::Empty => PairVerdict::Empty,
                Outcome::Singleton(point, s) => {
                    spread = spread.max(s);
                    PairVerdict::Singleton { point }
                }
                Outcome::Spread(clusters, spread) => PairVerdict::SuspectedNonSingleton { clusters, spread },
            };
            pairs.push(PairContact { i: i + 1, j: j + 1, verdict });
        }
    }
    ContactTable { pairs, depth, tol, resolution, spread }
}
