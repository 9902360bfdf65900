//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong when constructing or transforming graphs,
/// complexes and certificates. Search-budget exhaustion is deliberately *not*
/// an error: it is a first-class outcome of the solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A constructor was handed parameters that violate its preconditions.
    InvalidParameter(String),
    /// An arc endpoint is outside `0..n`.
    VertexOutOfRange { vertex: u32, n: u32 },
    /// The same arc was listed twice.
    DuplicateArc { u: u32, v: u32 },
    /// A construction would exceed the configured size cap.
    CapExceeded {
        needed: u128,
        cap: u64,
        what: &'static str,
    },
    /// Integer overflow in exact arithmetic.
    Overflow(&'static str),
    /// A certificate failed validation; carries the violated arc.
    InvalidWitness {
        u: u32,
        v: u32,
        reason: &'static str,
    },
    /// A coloring is improper; carries the violated arc.
    ImproperColoring { u: u32, v: u32 },
    /// Two pipeline steps do not fit together.
    TemplateMismatch(String),
    /// A computed winding profile violates its structural invariants.
    ProfileInvariant(String),
    /// Input does not satisfy a structural requirement (symmetry, freeness, ...).
    Unsupported(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for graph on {n} vertices")
            }
            Error::DuplicateArc { u, v } => write!(f, "duplicate arc ({u}, {v})"),
            Error::CapExceeded { needed, cap, what } => {
                write!(f, "{what} needs {needed} vertices/faces, cap is {cap}")
            }
            Error::Overflow(what) => write!(f, "integer overflow in {what}"),
            Error::InvalidWitness { u, v, reason } => {
                write!(f, "invalid witness at arc ({u}, {v}): {reason}")
            }
            Error::ImproperColoring { u, v } => {
                write!(f, "coloring is improper on arc ({u}, {v})")
            }
            Error::TemplateMismatch(msg) => write!(f, "template mismatch: {msg}"),
            Error::ProfileInvariant(msg) => write!(f, "winding profile invariant violated: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported input: {msg}"),
        }
    }
}
