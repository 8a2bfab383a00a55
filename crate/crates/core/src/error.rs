use crate::hypergraph::{EdgeId, VertexId};
use thiserror::Error;

/// Errors raised by parsing, validation, and guarded rewrite operations.
///
/// Every guard of a minor operation has its own variant so that callers can
/// see exactly which precondition failed and on which element.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid label {0:?}: labels are nonempty strings over [A-Za-z0-9_@']")]
    InvalidLabel(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("duplicate id {0:?}")]
    DuplicateId(String),

    #[error("edge {edge} has a non-singleton source")]
    NonSingletonSource { edge: EdgeId },
    #[error("edge {edge} has a non-singleton range")]
    NonSingletonRange { edge: EdgeId },
    #[error("edge {edge} has an empty range")]
    EmptyRange { edge: EdgeId },
    #[error("edge {edge} has a nonempty range")]
    RangeNotEmpty { edge: EdgeId },
    #[error("edge {sibling} also starts from the source of {edge}")]
    SiblingStart { edge: EdgeId, sibling: EdgeId },
    #[error("edge {witness} ranges into the contraction vertex and overlaps edge {edge}")]
    RangeOverlap { edge: EdgeId, witness: EdgeId },
    #[error("vertex {vertex} is not in the source of edge {edge}")]
    VertexNotInSource { edge: EdgeId, vertex: VertexId },
    #[error("edge set for source separation at {vertex} is empty")]
    EmptySeparationSet { vertex: VertexId },
    #[error("edge set for source separation at {vertex} is not a strict subset of the edges starting there")]
    SeparationNotStrict { vertex: VertexId },
    #[error("edge {other} also starts from vertex {vertex}")]
    NotOnlyEdgeFrom { vertex: VertexId, other: EdgeId },

    #[error("path is empty")]
    EmptyPath,
    #[error("edges {first} and {second} are not consecutive in the host")]
    BrokenPath { first: EdgeId, second: EdgeId },
    #[error("path edge {edge} must have a singleton source")]
    PathSourceNotSingleton { edge: EdgeId },

    #[error("operation requires a normal hypergraph")]
    HostNotNormal,
    #[error("operation requires a reduced hypergraph")]
    HostNotReduced,
    #[error("hypergraph failed validation: {0}")]
    Invalid(String),

    #[error("replay step {step} recorded fresh id {recorded} but produced {produced}")]
    FreshMismatch {
        step: usize,
        recorded: String,
        produced: String,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("malformed trace line {line}: {message}")]
    TraceParse { line: usize, message: String },

    #[error("forbidden-minor dispatch failed: {0}")]
    Dispatch(String),
    #[error("structural step {step} of the restricted analysis failed: {reason}")]
    RestrictedAnalysis { step: u8, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
