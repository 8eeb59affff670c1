//! Exact machine verification of the centrally extended conformal Galilei
//! symmetry of free higher-derivative mechanics.
//!
//! For odd `N` in three spatial dimensions and even `N` in two, the crate
//! constructs the phase-space Noether charges, the finite point
//! transformations on configuration space, the Ostrogradski/Noether
//! machinery for the free Lagrangian of order `(N+1)/2` (resp. `N/2 + 1`),
//! and the boundary functions certifying quasi-invariance. Everything runs
//! over exact big-rational arithmetic with symbolic group parameters, so
//! every check is an identity, not a numerical test. All values are
//! immutable and all operations are pure.
//!
//! Entry points:
//! - [`ModelConfig`] picks the family member `(N, d)`.
//! - [`phase`] builds charges and verifies the bracket algebra.
//! - [`group`] applies finite transformations and the conformal jet flow.
//! - [`noether`] runs the general higher-order Noether machinery.
//! - [`quasi`] certifies that the Lagrangian shifts by a total derivative.
//! - [`suites`] bundles everything into machine-readable reports.

// Half-orders like (N+1)/2 are written the way the formulas read.
#![allow(clippy::manual_div_ceil)]

pub mod frac;
pub mod group;
pub mod model;
pub mod noether;
pub mod phase;
pub mod poly;
pub mod quasi;
pub mod rational;
pub mod report;
pub mod suites;
pub mod var;

pub use frac::Frac;
pub use model::{Branch, Mass, ModelConfig};
pub use poly::{Monomial, Poly};
pub use rational::Rational;
pub use var::{Axis, ParamName, VarId};

/// Errors surfaced by the exact-algebra layer and the verification machinery.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A variable of the wrong kind reached an operation (e.g. a phase-space
    /// variable under the total time derivative).
    #[error("kind error: {0}")]
    Kind(String),

    /// Operation outside the supported fragment (e.g. inverting a sum).
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// Substitution bindings that chain through each other.
    #[error("cyclic bindings: {0}")]
    CyclicBindings(String),

    /// Invalid `(N, dim)` combination or malformed model data.
    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// Trajectory of degree above `N`; conformal images would not stay
    /// polynomial.
    #[error("off-shell trajectory: degree {degree} exceeds N = {max}")]
    OffShell { degree: u32, max: u32 },

    /// Malformed textual input (rationals, transform strings, files).
    #[error("parse error: {0}")]
    Parse(String),

    /// A claimed symmetry failed its defining condition.
    #[error("not a symmetry: residual {0}")]
    NotASymmetry(String),
}
