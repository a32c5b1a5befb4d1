//! Cluster fans from decorated representations of simply-laced Dynkin quivers.
//!
//! Everything here is exact: representations are built over the rationals,
//! Hom/Ext dimensions come from Gaussian elimination, and the combinatorics
//! (clusters, fans, f-vectors, groupoid words) is enumerated rather than
//! sampled wherever the rank permits it.
//!
//! The main layers, bottom up:
//!
//! * [`graph`]: finite trees, ADE classification, orientations, root
//!   systems and the Euler form.
//! * [`linalg`]: dense exact-rational matrices with canonical
//!   kernel/cokernel bases.
//! * [`rep`]: quiver representations: Hom/Ext dimensions, construction of
//!   all indecomposables, classical reflection functors, Krull–Schmidt
//!   decomposition.
//! * [`decorated`]: decorated representations, signed dimension vectors,
//!   the pairing `E` behind the compatibility degree, extended reflection
//!   functors, duality and the piecewise-linear maps `σ_i`, `τ_±`.
//! * [`clusters`]: compatible sets, cluster enumeration, cluster
//!   expansion of lattice vectors and fan checks.
//! * [`groupoid`]: the reflection groupoid on orientations of a tree:
//!   word rewriting modulo the defining relations, reduced words, loop
//!   classification.
//! * [`census`]: Ext-free set counting: f-vectors, Möbius inversion,
//!   orientation invariance, the exponent product formula, complex
//!   isomorphism.
//! * [`verify`]: the one-shot verification suite run by the CLI.
//!
//! See the crate's `examples/` directory for one runnable walkthrough per
//! capability, and the `quiverfan` binary for the command-line surface.

pub mod census;
pub mod clusters;
pub mod decorated;
pub mod graph;
pub mod groupoid;
pub mod linalg;
pub mod rep;
pub mod verify;

/// Errors shared by the whole crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Not a valid (type, rank) pair, or a graph that fails to match its
    /// declared Dynkin shape.
    #[error("classification error: {0}")]
    Classification(String),
    /// A tree that is not a disjoint union of ADE diagrams where one is
    /// required.
    #[error("unsupported graph: {0}")]
    UnsupportedGraph(String),
    /// Mismatched vertex sets, roots outside the expected set, and similar
    /// argument errors.
    #[error("domain error: {0}")]
    Domain(String),
    /// A reflection was requested at a vertex that is neither a source nor
    /// a sink, or a word letter is inapplicable.
    #[error("admissibility error: {0}")]
    Admissibility(String),
    /// A structural fact that must hold for Dynkin quivers failed; this is
    /// a bug, not a user error.
    #[error("internal invariant violation: {0}")]
    Internal(String),
    /// Enumeration above the configured rank cap without the override flag.
    #[error("resource limit: {0}")]
    Resource(String),
    /// Malformed input file.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
