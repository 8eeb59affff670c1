//! Runs the guide's code snippets as doctests.
//!
//! mdbook renders `book/` but does not compile Rust snippets against the
//! workspace, so each chapter is included here as a doc comment and
//! `cargo test -p galconf-book --doc` keeps the book honest.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/phase-space.md")]
pub mod phase_space {}

#[doc = include_str!("../../../book/src/point-transformations.md")]
pub mod point_transformations {}

#[doc = include_str!("../../../book/src/noether-machinery.md")]
pub mod noether_machinery {}

#[doc = include_str!("../../../book/src/quasi-invariance.md")]
pub mod quasi_invariance {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
