//! Points of the main tree: their address sets, their orders in the main
//! tree and in the attractor, and the report that lists every boundary point
//! together with every point surfaced by a walk of the transformation graph.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::address::{render_word, Address, Word};
use crate::diagram::{Admissibility, IndexDiagram};
use crate::error::AnalysisError;
use crate::gt::{GtWalk, TransformationGraph, DEFAULT_WALK_CAP};
use crate::phi::{steiner_subtree, PhiDynamics};
use crate::sprout::{BlackId, PointId, Sprout, Vertex};

/// A point of the attractor named symbolically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Location {
    Point(PointId),
    Black(BlackId),
    /// `S_𝐣(b)` for a black vertex `b`.
    Image(Word, BlackId),
    /// The point with the given address.
    Address(Address),
}

impl Location {
    pub fn display(&self, s: &Sprout) -> String {
        match self {
            Location::Point(p) => s.point_name(*p).to_string(),
            Location::Black(b) => s.black_name(*b).to_string(),
            Location::Image(word, b) if word.is_empty() => s.black_name(*b).to_string(),
            Location::Image(word, b) => {
                format!("S_{}({})", render_word(word, word.iter().any(|&i| i > 9)), s.black_name(*b))
            }
            Location::Address(a) => format!("π({a})"),
        }
    }

    /// Parses a point name, a black name, `S_12(c)` or an address rendering.
    pub fn parse(s: &Sprout, text: &str) -> Option<Location> {
        let text = text.trim();
        if let Some(p) = s.find_point(text) {
            return Some(Location::Point(p));
        }
        if let Some(b) = s.find_black(text) {
            return Some(Location::Black(b));
        }
        if let Some(rest) = text.strip_prefix("S_") {
            let open = rest.find('(')?;
            let inner = rest[open + 1..].strip_suffix(')')?;
            let word_text = &rest[..open];
            let word: Word = if word_text.contains(',') {
                word_text.split(',').map(|t| t.trim().parse().ok()).collect::<Option<_>>()?
            } else {
                word_text.chars().map(|c| c.to_digit(10)).collect::<Option<_>>()?
            };
            return Some(Location::Image(word, s.find_black(inner)?));
        }
        let inner = text.strip_prefix("π(").and_then(|t| t.strip_suffix(')')).unwrap_or(text);
        Address::parse(inner).map(Location::Address)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderCase {
    /// Several addresses with `N_φ > 1`: the sum of `N_φ − 1`.
    Sum,
    /// One such address and a boundary point: `N_φ − 1`.
    BoundaryUnique,
    /// One such address and not a boundary point: `N_φ`.
    InteriorUnique,
    /// No address with `N_φ > 1`; recorded as order 0.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedAddress {
    pub address: Address,
    pub n_phi: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainTreeOrder {
    pub order: usize,
    pub case: OrderCase,
    pub boundary: bool,
    pub a_x: Vec<WeightedAddress>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum OrderInK {
    Exact(usize),
    /// At least this many components; exact values are known only on `∂K`.
    AtLeast(usize),
    Infinite,
}

impl fmt::Display for OrderInK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderInK::Exact(n) => write!(f, "{n}"),
            OrderInK::AtLeast(n) => write!(f, "≥{n}"),
            OrderInK::Infinite => write!(f, "∞"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    Endpoint,
    CutPoint,
    RamificationPoint,
}

impl PointClass {
    pub fn of_order(order: usize) -> PointClass {
        match order {
            0 | 1 => PointClass::Endpoint,
            2 => PointClass::CutPoint,
            _ => PointClass::RamificationPoint,
        }
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointClass::Endpoint => "endpoint",
            PointClass::CutPoint => "cut point",
            PointClass::RamificationPoint => "ramification point",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Boundary,
    InfiniteWalk,
    BlackWalk,
    PointWalk,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointReport {
    pub location: String,
    #[serde(skip)]
    pub loc: Location,
    pub boundary: bool,
    pub addresses: Vec<Address>,
    pub a_x: Vec<WeightedAddress>,
    pub ord_main_tree: usize,
    pub case: OrderCase,
    /// The order is a lower bound from the walk that surfaced the point.
    pub bound_only: bool,
    #[serde(rename = "ord_in_K")]
    pub ord_in_k: OrderInK,
    pub class: PointClass,
    pub sources: Vec<Source>,
}

/// Everything needed to resolve points and their orders for one sprout.
#[derive(Debug)]
pub struct MainTree<'a> {
    sprout: &'a Sprout,
    diagram: IndexDiagram,
    dynamics: PhiDynamics,
}

impl<'a> MainTree<'a> {
    pub fn new(s: &'a Sprout) -> Result<Self, AnalysisError> {
        Ok(MainTree {
            sprout: s,
            diagram: IndexDiagram::new(s),
            dynamics: PhiDynamics::new(s)?,
        })
    }

    pub fn diagram(&self) -> &IndexDiagram {
        &self.diagram
    }

    pub fn dynamics(&self) -> &PhiDynamics {
        &self.dynamics
    }

    pub fn boundary_addresses(&self, p: PointId) -> Result<Vec<Address>, AnalysisError> {
        self.diagram.enumerate_addresses(p)
    }

    /// `⋃ k·π⁻¹(q)` over the edges `(w_k, b)` labeled `q`.
    pub fn black_addresses(&self, b: BlackId) -> Result<Vec<Address>, AnalysisError> {
        let mut out = BTreeSet::new();
        for e in self.sprout.black_edges(b) {
            for a in self.boundary_addresses(e.label)? {
                out.insert(a.prefixed(&[e.white.index()]));
            }
        }
        Ok(out.into_iter().collect())
    }

    /// The boundary point with address `alpha`, if any.
    pub fn boundary_point_of(&self, alpha: &Address) -> Option<PointId> {
        self.sprout.points().find(|&p| self.diagram.reads(p, alpha))
    }

    /// The canonical location of `π(alpha)`: a boundary point, the image
    /// `S_𝐣(c)` of a critical point under the shortest possible word, or the
    /// address itself when the point has no other address.
    pub fn locate(&self, alpha: &Address) -> Location {
        if let Some(p) = self.boundary_point_of(alpha) {
            return Location::Point(p);
        }
        let s = self.sprout;
        let horizon = alpha.preperiod().len() + alpha.period().len();
        for n in 0..=horizon {
            let k = alpha.symbol(n);
            let rest = alpha.shift(n + 1);
            for c in s.blacks().filter(|&b| s.degree(Vertex::Black(b)) > 1) {
                let hit = s
                    .black_edges(c)
                    .any(|e| e.white.index() == k && self.diagram.reads(e.label, &rest));
                if hit {
                    let word = alpha.prefix(n);
                    return match (word.is_empty(), s.point_of(c)) {
                        (true, Some(p)) => Location::Point(p),
                        (true, None) => Location::Black(c),
                        _ => Location::Image(word, c),
                    };
                }
            }
        }
        Location::Address(alpha.clone())
    }

    /// The full address set `π⁻¹(x)`.
    pub fn addresses(&self, loc: &Location) -> Result<Vec<Address>, AnalysisError> {
        match loc {
            Location::Point(p) => self.boundary_addresses(*p),
            Location::Black(b) => self.black_addresses(*b),
            Location::Image(word, b) => Ok(self.black_addresses(*b)?.iter().map(|a| a.prefixed(word)).collect()),
            Location::Address(alpha) => match self.locate(alpha) {
                Location::Address(a) => Ok(vec![a]),
                other => self.addresses(&other),
            },
        }
    }

    pub fn is_boundary(&self, addresses: &[Address]) -> bool {
        addresses.iter().any(|a| self.boundary_point_of(a).is_some())
    }

    pub fn order_of_addresses(&self, addresses: &[Address]) -> Result<MainTreeOrder, AnalysisError> {
        let boundary = self.is_boundary(addresses);
        let mut a_x = Vec::new();
        for a in addresses {
            let n = self.dynamics.n_phi(a)?;
            if n > 1 {
                a_x.push(WeightedAddress { address: a.clone(), n_phi: n });
            }
        }
        let (order, case) = match a_x.len() {
            0 => (0, OrderCase::Degenerate),
            1 if boundary => (a_x[0].n_phi - 1, OrderCase::BoundaryUnique),
            1 => (a_x[0].n_phi, OrderCase::InteriorUnique),
            _ => (a_x.iter().map(|w| w.n_phi - 1).sum(), OrderCase::Sum),
        };
        Ok(MainTreeOrder { order, case, boundary, a_x })
    }

    pub fn order_in_main_tree(&self, loc: &Location) -> Result<MainTreeOrder, AnalysisError> {
        self.order_of_addresses(&self.addresses(loc)?)
    }

    pub fn order_in_k(&self, p: PointId) -> OrderInK {
        match self.diagram.classify(p).finite_count() {
            Some(n) => OrderInK::Exact(n),
            None => OrderInK::Infinite,
        }
    }

    fn row(&self, loc: Location, source: Source, bound: usize) -> Result<PointReport, AnalysisError> {
        let s = self.sprout;
        let addresses = self.addresses(&loc)?;
        let order = self.order_of_addresses(&addresses)?;
        let ord_in_k = match self.boundary_point_of(&addresses[0]) {
            Some(p) => self.order_in_k(p),
            None => OrderInK::AtLeast(addresses.len()),
        };
        let bound_only = order.order < bound;
        let ord_main_tree = order.order.max(bound);
        Ok(PointReport {
            location: loc.display(s),
            loc,
            boundary: order.boundary,
            addresses,
            a_x: order.a_x,
            ord_main_tree,
            case: order.case,
            bound_only,
            ord_in_k,
            class: PointClass::of_order(ord_main_tree),
            sources: vec![source],
        })
    }

    /// Boundary points first, then the points surfaced by walks of `G_T`;
    /// rows naming the same point are merged.
    pub fn report(&self) -> Result<Vec<PointReport>, AnalysisError> {
        let s = self.sprout;
        if let Admissibility::Inadmissible { p, q, shared } = self.diagram.admissibility() {
            return Err(AnalysisError::Inadmissible {
                p: s.point_name(p).to_string(),
                q: s.point_name(q).to_string(),
                shared: shared.to_string(),
            });
        }
        let graph = TransformationGraph::new(s, &self.dynamics)?;
        let walks = graph.walks(DEFAULT_WALK_CAP)?;

        let mut rows: Vec<PointReport> = Vec::new();
        for p in s.points() {
            let addresses = match self.boundary_addresses(p) {
                Ok(a) => a,
                Err(AnalysisError::InfiniteAddressSet { .. }) => {
                    rows.push(self.infinite_row(p));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let order = self.order_of_addresses(&addresses)?;
            rows.push(PointReport {
                location: s.point_name(p).to_string(),
                loc: Location::Point(p),
                boundary: true,
                addresses,
                a_x: order.a_x,
                ord_main_tree: order.order,
                case: order.case,
                bound_only: false,
                ord_in_k: self.order_in_k(p),
                class: PointClass::of_order(order.order),
                sources: vec![Source::Boundary],
            });
        }

        for walk in &walks {
            let row = match walk {
                GtWalk::Infinite { address, .. } => self.row(self.locate(address), Source::InfiniteWalk, 0),
                GtWalk::ToBlack { word, black, .. } => {
                    self.row(image_location(s, word, *black), Source::BlackWalk, 0)
                }
                GtWalk::ToPoint { vertices, word, point } => {
                    let q = graph.subsets[*vertices.last().expect("walks start at P")];
                    let l = steiner_subtree(s, q)?.degree(s, Vertex::Black(s.point_black(*point)));
                    let loc = image_location(s, word, s.point_black(*point));
                    let addresses = self.addresses(&loc)?;
                    let bound = if self.is_boundary(&addresses) { l } else { l + 1 };
                    self.row(loc, Source::PointWalk, bound)
                }
            };
            match row {
                Ok(r) => merge(&mut rows, r),
                Err(AnalysisError::InfiniteAddressSet { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        Ok(rows)
    }

    fn infinite_row(&self, p: PointId) -> PointReport {
        let s = self.sprout;
        PointReport {
            location: s.point_name(p).to_string(),
            loc: Location::Point(p),
            boundary: true,
            addresses: Vec::new(),
            a_x: Vec::new(),
            ord_main_tree: 0,
            case: OrderCase::Degenerate,
            bound_only: true,
            ord_in_k: OrderInK::Infinite,
            class: PointClass::Endpoint,
            sources: vec![Source::Boundary],
        }
    }
}

fn image_location(s: &Sprout, word: &[u32], b: BlackId) -> Location {
    match (word.is_empty(), s.point_of(b)) {
        (true, Some(p)) => Location::Point(p),
        (true, None) => Location::Black(b),
        _ => Location::Image(word.to_vec(), b),
    }
}

fn merge(rows: &mut Vec<PointReport>, row: PointReport) {
    let same = rows
        .iter_mut()
        .find(|r| r.addresses.iter().any(|a| row.addresses.contains(a)));
    match same {
        None => rows.push(row),
        Some(r) => {
            for a in row.addresses {
                if !r.addresses.contains(&a) {
                    r.addresses.push(a);
                }
            }
            r.addresses.sort();
            if row.ord_main_tree > r.ord_main_tree {
                r.ord_main_tree = row.ord_main_tree;
                r.bound_only = row.bound_only;
                r.class = row.class;
            }
            for src in row.sources {
                if !r.sources.contains(&src) {
                    r.sources.push(src);
                }
            }
            r.sources.sort();
        }
    }
}

pub fn point_addresses(s: &Sprout, loc: &Location) -> Result<Vec<Address>, AnalysisError> {
    MainTree::new(s)?.addresses(loc)
}

pub fn order_in_main_tree(s: &Sprout, loc: &Location) -> Result<MainTreeOrder, AnalysisError> {
    MainTree::new(s)?.order_in_main_tree(loc)
}

pub fn order_in_k(s: &Sprout, p: PointId) -> OrderInK {
    IndexDiagram::new(s).classify(p).finite_count().map_or(OrderInK::Infinite, OrderInK::Exact)
}

pub fn ramification_report(s: &Sprout) -> Result<Vec<PointReport>, AnalysisError> {
    MainTree::new(s)?.report()
}
