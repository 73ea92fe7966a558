use thiserror::Error;

use crate::label::VertexLabel;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed face: {0}")]
    MalformedFace(String),

    #[error("level {level} out of range (valid: {min}..={max})")]
    LevelOutOfRange { level: isize, min: isize, max: isize },

    #[error("dimension mismatch: expected a face of dimension {expected}, got {actual}")]
    DimensionMismatch { expected: isize, actual: isize },

    #[error("face {0} is not in the complex")]
    FaceNotInComplex(String),

    #[error("the empty face has no orientation")]
    EmptyFaceOrientation,

    #[error("invalid incidence sign: {0}")]
    InvalidIncidenceSign(String),

    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("no {level}-faces")]
    NoFaces { level: isize },

    #[error(
        "complex is not {}-path connected at level {level}; analyse each component separately",
        .level + 1
    )]
    NotPathConnected { level: isize },

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("size cap exceeded: {size} > {cap}")]
    SizeCapExceeded { size: usize, cap: usize },

    #[error("consecutive cycle vertices {0} and {1} are not adjacent")]
    NotAdjacent(String, String),

    #[error("vertex label {0} occurs in both complexes")]
    LabelOverlap(VertexLabel),

    #[error("invalid wedge: {0}")]
    InvalidWedge(String),

    #[error("vertex weights are incompatible: w1({u}) = {w1} but w2({v}) = {w2}")]
    WeightIncompatible {
        u: VertexLabel,
        v: VertexLabel,
        w1: f64,
        w2: f64,
    },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid motif: {0}")]
    InvalidMotif(String),

    #[error("invalid kind/level combination: {0}")]
    InvalidKind(String),
}

pub type Result<T> = std::result::Result<T, Error>;
