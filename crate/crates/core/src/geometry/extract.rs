//! The sprout induced by a planar system with the single intersection
//! property.
//!
//! Critical points come from the contact table. Boundary points are the
//! closure of their labels `S_k⁻¹(x)` over every copy `K_k` holding `x`.
//! Numerical points are finally replaced by the exact images of their
//! addresses.

use serde::Serialize;

use super::{detect_intersections, dist, ContactTable, PlanarIfs, Point};
use crate::address::Address;
use crate::error::GeometryError;
use crate::sprout::{EdgeDocument, Sprout, SproutDocument};

/// Largest boundary set extraction will build.
pub const MAX_POINTS: usize = 64;
const BALL_CAP: usize = 100_000;
/// Relative tolerance for treating two computed points as one.
const MERGE_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointRecord {
    pub name: String,
    pub boundary: bool,
    pub critical: bool,
    pub x: f64,
    pub y: f64,
    pub addresses: Vec<Address>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtractionDiagnostics {
    pub depth: u32,
    pub tol: f64,
    /// Ball radius at the survey depth.
    pub resolution: f64,
    /// `10·resolution` minus the widest contact cluster: how far the
    /// tightest singleton verdict is from being called non-singleton.
    pub sip_margin: f64,
    /// Largest move made when snapping a point to its address.
    pub snap_error: f64,
    pub contacts: ContactTable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtractionResult {
    pub sprout: Sprout,
    pub points: Vec<PointRecord>,
    pub diagnostics: ExtractionDiagnostics,
}

impl ExtractionResult {
    pub fn point(&self, name: &str) -> Option<&PointRecord> {
        self.points.iter().find(|p| p.name == name)
    }
}

struct Geometry<'a> {
    ifs: &'a PlanarIfs,
    eps: f64,
}

impl Geometry<'_> {
    /// Whether `x` lies in `K_k` up to `eps`, by descending through the
    /// balls that could contain it.
    fn contains(&self, k: usize, x: Point) -> Result<bool, GeometryError> {
        let (c, r) = self.ifs.invariant_ball();
        let mut balls = vec![(self.ifs.maps()[k], r * self.ifs.ratio(k))];
        loop {
            balls.retain(|(m, rad)| dist(m.apply(c), x) <= rad + self.eps);
            if balls.is_empty() {
                return Ok(false);
            }
            if balls.iter().all(|b| b.1 <= self.eps) {
                return Ok(true);
            }
            let mut next = Vec::new();
            for (m, rad) in &balls {
                if *rad <= self.eps {
                    next.push((*m, *rad));
                    continue;
                }
                for (i, s) in self.ifs.maps().iter().enumerate() {
                    next.push((m.compose(s), rad * self.ifs.ratio(i)));
                }
            }
            if next.len() > BALL_CAP {
                return Err(GeometryError::Extraction(format!("membership descent exceeded {BALL_CAP} balls")));
            }
            balls = next;
        }
    }

    fn copies_holding(&self, x: Point) -> Result<Vec<usize>, GeometryError> {
        let mut out = Vec::new();
        for k in 0..self.ifs.num_maps() {
            if self.contains(k, x)? {
                out.push(k);
            }
        }
        Ok(out)
    }
}

/// A black vertex under construction.
struct Black {
    at: Point,
    /// `(k, label index into the boundary list)` per copy holding the point.
    edges: Vec<(usize, usize)>,
}

fn find_near(points: &[Point], x: Point, eps: f64) -> Option<usize> {
    points.iter().position(|&p| dist(p, x) <= eps)
}

fn connected(m: usize, table: &ContactTable) -> bool {
    let mut seen = vec![false; m];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for (i, j, _) in table.contacts() {
            for (a, b) in [(i - 1, j - 1), (j - 1, i - 1)] {
                if a == u && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Extracts the sprout of `ifs`, surveying contacts to `depth` levels and
/// polishing them to `tol`.
pub fn extract_sprout(ifs: &PlanarIfs, depth: u32, tol: f64) -> Result<ExtractionResult, GeometryError> {
    if !(tol > 0.0) {
        return Err(GeometryError::InvalidSystem("tolerance must be positive".into()));
    }
    let table = detect_intersections(ifs, depth, tol);
    if let Some((i, j)) = table.sip_violation() {
        return Err(GeometryError::SipViolation { i, j });
    }
    let m = ifs.num_maps();
    if !connected(m, &table) {
        return Err(GeometryError::Disconnected);
    }
    let (_, radius) = ifs.invariant_ball();
    let geo = Geometry { ifs, eps: MERGE_TOL * radius.max(f64::MIN_POSITIVE) };

    // Distinct critical points, in contact-table order.
    let mut critical: Vec<Point> = Vec::new();
    for (_, _, x) in table.contacts() {
        if find_near(&critical, x, geo.eps).is_none() {
            critical.push(x);
        }
    }

    // Boundary closure, worklist in discovery order.
    let mut boundary: Vec<Point> = Vec::new();
    let mut blacks: Vec<Black> = Vec::new();
    let add_label = |boundary: &mut Vec<Point>, q: Point| -> Result<usize, GeometryError> {
        if let Some(i) = find_near(boundary, q, geo.eps) {
            return Ok(i);
        }
        if boundary.len() == MAX_POINTS {
            return Err(GeometryError::Cap(MAX_POINTS));
        }
        boundary.push(q);
        Ok(boundary.len() - 1)
    };
    for &x in &critical {
        let mut edges = Vec::new();
        for k in geo.copies_holding(x)? {
            let q = ifs.maps()[k].inverse().apply(x);
            edges.push((k, add_label(&mut boundary, q)?));
        }
        blacks.push(Black { at: x, edges });
    }
    let mut point_edges: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut next = 0;
    while next < boundary.len() {
        let p = boundary[next];
        let mut edges = Vec::new();
        for k in geo.copies_holding(p)? {
            let q = ifs.maps()[k].inverse().apply(p);
            edges.push((k, add_label(&mut boundary, q)?));
        }
        if edges.is_empty() {
            return Err(GeometryError::Extraction(format!("boundary point {} lies in no copy", next + 1)));
        }
        point_edges.push(edges);
        next += 1;
    }

    // Addresses: follow the first copy from each boundary point until a
    // point repeats.
    let n = boundary.len();
    let step_cap = 4 * n * n;
    let first = |p: usize| point_edges[p][0];
    let canonical = |p: usize| -> Result<Address, GeometryError> {
        let mut path = vec![p];
        let mut word = Vec::new();
        loop {
            let (k, q) = first(*path.last().expect("nonempty"));
            word.push(k as u32 + 1);
            if let Some(start) = path.iter().position(|&v| v == q) {
                return Ok(Address::new(word[..start].to_vec(), word[start..].to_vec()));
            }
            path.push(q);
            if word.len() > step_cap {
                return Err(GeometryError::Extraction("no preperiodic address within the step cap".into()));
            }
        }
    };
    let point_addresses: Vec<Address> = (0..n).map(canonical).collect::<Result<_, _>>()?;

    // Boundary points that are also critical share one vertex.
    let mut black_of_point: Vec<Option<usize>> = vec![None; n];
    for (p, &x) in boundary.iter().enumerate() {
        black_of_point[p] = blacks.iter().position(|b| dist(b.at, x) <= geo.eps);
    }

    let mut snap_error = 0.0f64;
    let mut records = Vec::new();
    let addresses_of = |edges: &[(usize, usize)]| -> Vec<Address> {
        let mut out: Vec<Address> = edges
            .iter()
            .map(|&(k, q)| point_addresses[q].prefixed(&[k as u32 + 1]))
            .collect();
        out.sort();
        out.dedup();
        out
    };
    let mut record = |name: String, boundary: bool, critical: bool, numeric: Point, addresses: Vec<Address>| {
        let exact = ifs.evaluate(&addresses[0]);
        snap_error = snap_error.max(dist(exact, numeric));
        records.push(PointRecord { name, boundary, critical, x: exact[0], y: exact[1], addresses });
    };
    let point_name = |p: usize| format!("p{}", p + 1);
    let mut crit_names = Vec::new();
    let mut next_c = 1;
    for c in 0..blacks.len() {
        let name = match black_of_point.iter().position(|&o| o == Some(c)) {
            Some(p) => point_name(p),
            None => {
                next_c += 1;
                format!("c{}", next_c - 1)
            }
        };
        crit_names.push(name);
    }
    for p in 0..n {
        let edges = match black_of_point[p] {
            Some(c) => &blacks[c].edges,
            None => &point_edges[p],
        };
        record(point_name(p), true, black_of_point[p].is_some(), boundary[p], addresses_of(edges));
    }
    for (c, b) in blacks.iter().enumerate() {
        if black_of_point.contains(&Some(c)) {
            continue;
        }
        record(crit_names[c].clone(), false, true, b.at, addresses_of(&b.edges));
    }

    let mut edges = Vec::new();
    for p in 0..n {
        if black_of_point[p].is_none() {
            for &(k, q) in &point_edges[p] {
                edges.push((k, point_name(p), point_name(q)));
            }
        }
    }
    for (c, b) in blacks.iter().enumerate() {
        for &(k, q) in &b.edges {
            edges.push((k, crit_names[c].clone(), point_name(q)));
        }
    }
    edges.sort_by(|a, b| a.0.cmp(&b.0));
    let mut black_names: Vec<String> = (0..n).map(point_name).collect();
    black_names.extend(crit_names.iter().filter(|s| s.starts_with('c')).cloned());
    let doc = SproutDocument {
        whites: (1..=m).map(|k| format!("w{k}")).collect(),
        blacks: black_names,
        boundary: (0..n).map(point_name).collect(),
        edges: edges
            .into_iter()
            .map(|(k, b, label)| EdgeDocument { w: format!("w{}", k + 1), b, label })
            .collect(),
    };
    let sprout = Sprout::from_document(&doc).map_err(|e| GeometryError::Extraction(e.to_string()))?;
    let report = sprout.validate();
    if !report.is_valid() {
        return Err(GeometryError::Extraction("the extracted sprout is not a correct tree".into()));
    }
    let sip_margin = 10.0 * table.resolution - table.spread;
    Ok(ExtractionResult {
        sprout,
        points: records,
        diagnostics: ExtractionDiagnostics {
            depth,
            tol,
            resolution: table.resolution,
            sip_margin,
            snap_error,
            contacts: table,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::isomorphic;
    use crate::fixtures;
    use crate::geometry::AffineMap;

    #[test]
    fn interval_round_trip() {
        let ifs = PlanarIfs::parse(fixtures::INTERVAL_IFS).unwrap();
        let result = extract_sprout(&ifs, 10, 1e-9).unwrap();
        assert!(isomorphic(&result.sprout, &fixtures::interval2()).is_some());
        let mid = result.points.iter().find(|p| p.critical).unwrap();
        assert_eq!((mid.x, mid.y), (0.5, 0.0));
        assert_eq!(mid.addresses.len(), 2);
    }

    #[test]
    fn vicsek_round_trip() {
        let ifs = PlanarIfs::parse(fixtures::VICSEK_IFS).unwrap();
        let result = extract_sprout(&ifs, 10, 1e-9).unwrap();
        assert!(isomorphic(&result.sprout, &fixtures::vicsek5()).is_some());
        assert_eq!(result.sprout.num_points(), 4);
        assert_eq!(result.points.iter().filter(|p| p.critical).count(), 4);
        assert!(result.diagnostics.snap_error < 1e-7);
        for p in &result.points {
            assert!(p.addresses.len() >= if p.critical { 2 } else { 1 });
            for a in &p.addresses {
                assert!(dist(ifs.evaluate(a), [p.x, p.y]) < 1e-12, "{} {a}", p.name);
            }
        }
    }

    #[test]
    fn refusals() {
        let m = |s: f64, e: f64| AffineMap { a: s, b: 0.0, c: 0.0, d: s, e, f: 0.0 };
        let overlapping = PlanarIfs::new(vec![m(0.6, 0.0), m(0.6, 0.4)]).unwrap();
        assert!(matches!(extract_sprout(&overlapping, 10, 1e-9), Err(GeometryError::SipViolation { i: 1, j: 2 })));
        let cantor = PlanarIfs::new(vec![m(1.0 / 3.0, 0.0), m(1.0 / 3.0, 2.0 / 3.0)]).unwrap();
        assert!(matches!(extract_sprout(&cantor, 10, 1e-9), Err(GeometryError::Disconnected)));
    }
}
