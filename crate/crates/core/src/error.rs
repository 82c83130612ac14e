use thiserror::Error;

use crate::diagram::AddressSetClass;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("dangling reference to {kind} `{id}`")]
    Dangling { kind: &'static str, id: String },
    #[error("edge label `{0}` is not a declared boundary point")]
    LabelNotBoundary(String),
    #[error("more than one edge joins `{white}` and `{black}`")]
    MultiEdge { white: String, black: String },
    #[error("boundary set has {0} points, at most 64 are supported")]
    TooManyBoundaryPoints(usize),
}

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("boundary point `{point}` has an infinite address set ({class:?})")]
    InfiniteAddressSet { point: String, class: AddressSetClass },
    #[error("index {0} is outside the index set")]
    IndexOutOfRange(u32),
    #[error("sprout is not structurally valid: {0}")]
    Invalid(String),
    #[error("sprout is not regular")]
    NotRegular,
    #[error("sprout is not admissible: `{p}` and `{q}` share the address {shared}")]
    Inadmissible { p: String, q: String, shared: String },
    #[error("empty boundary subset")]
    EmptySubset,
    #[error("cycle enumeration exceeded the cap of {0} cycles; use the SCC classifier")]
    TooManyCycles(usize),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("non-contiguous walk at arc {0}")]
    BrokenWalk(usize),
}

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("malformed IFS document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid IFS: {0}")]
    InvalidSystem(String),
    #[error("point cap exceeded: {0} points requested")]
    Cap(usize),
    #[error("copies {i} and {j} meet in more than one point")]
    SipViolation { i: usize, j: usize },
    #[error("first-level copies do not form a connected contact graph")]
    Disconnected,
    #[error("extraction failed: {0}")]
    Extraction(String),
}
