//! Planar affine systems: attractor approximation, contact detection,
//! sprout extraction and SVG rendering.
//!
//! Every copy `K_𝐮` is enclosed in the ball `S_𝐮(B)` where `B` is a ball
//! mapped into itself by every map; overlapping balls are refined level by
//! level. Extraction is numerical and heuristic; its output is checked with
//! the same validation as hand-written sprouts.

mod contacts;
mod extract;
mod svg;

pub use contacts::{detect_intersections, ContactTable, PairContact, PairVerdict};
pub use extract::{extract_sprout, ExtractionDiagnostics, ExtractionResult, PointRecord};
pub use svg::{render_svg, RenderOptions};

use serde::{Deserialize, Serialize};

use crate::address::Address;
use crate::error::GeometryError;

pub const MAX_MAPS: usize = 32;
/// Upper bound on the number of points `attractor_points` will produce.
pub const POINT_CAP: usize = 1 << 22;

pub type Point = [f64; 2];

/// `(x, y) ↦ (a x + b y + e, c x + d y + f)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineMap {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl AffineMap {
    pub fn apply(&self, [x, y]: Point) -> Point {
        [self.a * x + self.b * y + self.e, self.c * x + self.d * y + self.f]
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Operator 2-norm of the linear part.
    pub fn norm(&self) -> f64 {
        // Largest singular value from the eigenvalues of AᵀA.
        let p = self.a * self.a + self.c * self.c;
        let q = self.a * self.b + self.c * self.d;
        let r = self.b * self.b + self.d * self.d;
        let mean = (p + r) / 2.0;
        let spread = (((p - r) / 2.0).powi(2) + q * q).sqrt();
        (mean + spread).sqrt()
    }

    pub fn inverse(&self) -> AffineMap {
        let det = self.det();
        let (a, b, c, d) = (self.d / det, -self.b / det, -self.c / det, self.a / det);
        AffineMap {
            a,
            b,
            c,
            d,
            e: -(a * self.e + b * self.f),
            f: -(c * self.e + d * self.f),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap {
            a: self.a * inner.a + self.b * inner.c,
            b: self.a * inner.b + self.b * inner.d,
            c: self.c * inner.a + self.d * inner.c,
            d: self.c * inner.b + self.d * inner.d,
            e: self.a * inner.e + self.b * inner.f + self.e,
            f: self.c * inner.e + self.d * inner.f + self.f,
        }
    }

    pub fn identity() -> AffineMap {
        AffineMap { a: 1.0, b: 0.0, c: 0.0, d: 1.0, e: 0.0, f: 0.0 }
    }

    /// The unique fixed point of a contraction.
    pub fn fixed_point(&self) -> Point {
        // Solve (I − L) x = t.
        let (p, q, r, s) = (1.0 - self.a, -self.b, -self.c, 1.0 - self.d);
        let det = p * s - q * r;
        [(s * self.e - q * self.f) / det, (p * self.f - r * self.e) / det]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IfsDocument {
    pub maps: Vec<AffineMap>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanarIfs {
    maps: Vec<AffineMap>,
    ratios: Vec<f64>,
    centre: Point,
    radius: f64,
}

impl PlanarIfs {
    pub fn new(maps: Vec<AffineMap>) -> Result<Self, GeometryError> {
        if maps.is_empty() || maps.len() > MAX_MAPS {
            return Err(GeometryError::InvalidSystem(format!(
                "expected between 1 and {MAX_MAPS} maps, got {}",
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            let values = [m.a, m.b, m.c, m.d, m.e, m.f];
            if values.iter().any(|v| !v.is_finite()) {
                return Err(GeometryError::InvalidSystem(format!("map {} has a non-finite coefficient", i + 1)));
            }
            if m.norm() >= 1.0 {
                return Err(GeometryError::InvalidSystem(format!("map {} is not a contraction", i + 1)));
            }
            if m.det().abs() < 1e-300 {
                return Err(GeometryError::InvalidSystem(format!("map {} is not injective", i + 1)));
            }
        }
        let ratios: Vec<f64> = maps.iter().map(AffineMap::norm).collect();
        let centre = maps[0].fixed_point();
        let radius = maps
            .iter()
            .zip(&ratios)
            .map(|(m, r)| dist(m.apply(centre), centre) / (1.0 - r))
            .fold(0.0, f64::max);
        Ok(PlanarIfs { maps, ratios, centre, radius })
    }

    pub fn parse(text: &str) -> Result<Self, GeometryError> {
        let doc: IfsDocument = serde_json::from_str(text)?;
        Self::new(doc.maps)
    }

    pub fn to_document(&self) -> IfsDocument {
        IfsDocument { maps: self.maps.clone() }
    }

    pub fn maps(&self) -> &[AffineMap] {
        &self.maps
    }

    pub fn num_maps(&self) -> usize {
        self.maps.len()
    }

    /// Contraction ratio (operator norm) of map `i` (0-based).
    pub fn ratio(&self, i: usize) -> f64 {
        self.ratios[i]
    }

    pub fn max_ratio(&self) -> f64 {
        self.ratios.iter().copied().fold(0.0, f64::max)
    }

    /// A ball `B(centre, radius)` with `S_i(B) ⊆ B` for every map.
    pub fn invariant_ball(&self) -> (Point, f64) {
        (self.centre, self.radius)
    }

    /// `S_𝐮` for a 0-based word.
    pub fn word_map(&self, word: &[usize]) -> AffineMap {
        word.iter()
            .fold(AffineMap::identity(), |acc, &k| acc.compose(&self.maps[k]))
    }

    /// The point `π(α)` for a preperiodic address over 1-based indices.
    pub fn evaluate(&self, alpha: &Address) -> Point {
        let word = |w: &[u32]| w.iter().map(|&k| k as usize - 1).collect::<Vec<_>>();
        let periodic = self.word_map(&word(alpha.period())).fixed_point();
        self.word_map(&word(alpha.preperiod())).apply(periodic)
    }
}

pub fn dist(p: Point, q: Point) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

/// `{ S_𝐮(x₀) : |𝐮| = depth }` in lexicographic word order, where `x₀` is
/// the fixed point of the first map.
pub fn attractor_points(ifs: &PlanarIfs, depth: u32) -> Result<Vec<Point>, GeometryError> {
    let count = (ifs.num_maps() as u128).checked_pow(depth).unwrap_or(u128::MAX);
    if count > POINT_CAP as u128 {
        return Err(GeometryError::Cap(POINT_CAP));
    }
    let mut points = vec![ifs.maps[0].fixed_point()];
    // Applying maps outermost-last keeps the lexicographic order.
    for _ in 0..depth {
        points = ifs
            .maps
            .iter()
            .flat_map(|m| points.iter().map(move |&p| m.apply(p)))
            .collect();
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn affine_algebra() {
        let m = AffineMap { a: 0.5, b: 0.1, c: -0.2, d: 0.4, e: 1.0, f: -2.0 };
        let p = [0.3, 0.7];
        let back = m.inverse().apply(m.apply(p));
        assert!(dist(back, p) < 1e-12);
        let fp = m.fixed_point();
        assert!(dist(m.apply(fp), fp) < 1e-12);
        let twice = m.compose(&m).apply(p);
        assert!(dist(twice, m.apply(m.apply(p))) < 1e-12);
        let rot = AffineMap { a: 0.0, b: -0.5, c: 0.5, d: 0.0, e: 0.0, f: 0.0 };
        assert!((rot.norm() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn invalid_systems() {
        let expanding = AffineMap { a: 1.5, b: 0.0, c: 0.0, d: 0.5, e: 0.0, f: 0.0 };
        assert!(PlanarIfs::new(vec![expanding]).is_err());
        assert!(PlanarIfs::new(vec![]).is_err());
        assert!(PlanarIfs::parse("{\"maps\": [{\"a\": 1}]}").is_err());
    }

    #[test]
    fn interval_points_are_dyadic() {
        let ifs = PlanarIfs::parse(fixtures::INTERVAL_IFS).unwrap();
        let pts = attractor_points(&ifs, 3).unwrap();
        assert_eq!(pts.len(), 8);
        for (k, p) in pts.iter().enumerate() {
            assert_eq!(*p, [k as f64 / 8.0, 0.0]);
        }
    }

    #[test]
    fn vicsek_points_lie_in_the_square() {
        let ifs = PlanarIfs::parse(fixtures::VICSEK_IFS).unwrap();
        let pts = attractor_points(&ifs, 2).unwrap();
        assert_eq!(pts.len(), 25);
        assert!(pts.iter().all(|p| (0.0..=1.0).contains(&p[0]) && (0.0..=1.0).contains(&p[1])));
        assert!(attractor_points(&ifs, 12).is_err());
    }

    #[test]
    fn single_map_collapses_to_its_fixed_point() {
        let m = AffineMap { a: 0.5, b: 0.0, c: 0.0, d: 0.5, e: 0.25, f: 0.5 };
        let ifs = PlanarIfs::new(vec![m]).unwrap();
        for depth in [0, 1, 5] {
            assert_eq!(attractor_points(&ifs, depth).unwrap(), vec![m.fixed_point()]);
        }
    }

    #[test]
    fn balls_are_invariant() {
        for text in [fixtures::INTERVAL_IFS, fixtures::VICSEK_IFS] {
            let ifs = PlanarIfs::parse(text).unwrap();
            let (c, r) = ifs.invariant_ball();
            for (i, m) in ifs.maps().iter().enumerate() {
                assert!(dist(m.apply(c), c) + ifs.ratio(i) * r <= r + 1e-12);
            }
        }
    }

    #[test]
    fn evaluating_addresses() {
        let ifs = PlanarIfs::parse(fixtures::VICSEK_IFS).unwrap();
        let p = ifs.evaluate(&Address::new(vec![5], vec![1]));
        assert!(dist(p, [1.0 / 3.0, 1.0 / 3.0]) < 1e-12);
        let q = ifs.evaluate(&Address::periodic(vec![3]));
        assert!(dist(q, [1.0, 1.0]) < 1e-12);
    }
}
