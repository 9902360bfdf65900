//! Exact computation with graph homomorphisms, adjoint graph functors, and
//! the topology of box complexes, at desk scale.
//!
//! The crate is organised around a small set of building blocks:
//!
//! - [`graph`]: finite digraphs with dense integer vertices, the named graph
//!   families (cliques, cycles, circular cliques, Kneser graphs, paths), and
//!   the tensor-product / exponential constructions.
//! - [`hom`]: an exact backtracking solver for homomorphism and colouring
//!   questions, with arc-consistency propagation, dominated-vertex folding
//!   and an explicit node budget ("unknown" is an outcome, never a guess).
//! - [`poly`]: polymorphisms (homomorphisms from tensor powers), minors and
//!   essential coordinates.
//! - [`functors`]: the arc digraph and its adjoints, symmetric closure and
//!   core, subdivision, walk powers, and the subset-tuple right adjoint of
//!   the walk power.
//! - [`reduce`]: instance-level reductions between promise problems built
//!   from those functors, with colouring transfers and replayable traces.
//! - [`topo`]: box and hom complexes with their two-element symmetry, exact
//!   integral homology via Smith normal form, and winding-number profiles of
//!   polymorphisms into circular cliques.
//!
//! Everything is deterministic: identical inputs produce identical witnesses,
//! vertex orders and serialised forms. The crate is `no_std` + `alloc`; all
//! IO, file formats and the command-line front end live in the companion
//! crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bits;
pub mod error;
pub mod functors;
pub mod graph;
pub mod hom;
pub mod poly;
pub mod reduce;
pub mod topo;

pub use error::{Error, Result};
pub use graph::{Graph, GraphFamilySpec, SizeCap};
pub use hom::{Budget, ChiOutcome, Coloring, HomOutcome, VertexMap};
pub use poly::{MinorMap, Polymorphism};
