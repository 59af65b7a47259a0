//! Iterated graph systems.
//!
//! An iterated graph system grows a sequence of graphs `Ξ⁰, Ξ¹, …` by
//! repeatedly replacing every coloured arc with a copy of a rule graph,
//! identifying the rule's two boundary nodes `A` and `B` with the arc's
//! endpoints. Deterministic systems use one rule per colour; random systems
//! draw the rule for each arc independently from a per-colour distribution.
//!
//! The crate computes two kinds of dimension for the resulting graph limits:
//!
//! * theoretical values — from the spectral radius of the arc-count matrix
//!   and the minimal spectral radius over the family of path matrices
//!   (deterministic case), or from Lyapunov exponents of random matrix
//!   products (random case);
//! * empirical values — by greedy ball covering of a generated level and a
//!   log-log regression of the covering numbers.
//!
//! The `igs` binary exposes the pipelines as subcommands (`theory`,
//! `lyapunov`, `generate`, `boxdim`, `selftest`).

pub mod boxcover;
pub mod fixtures;
pub mod graph;
pub mod lyapunov;
pub mod matrix;
pub mod report;
pub mod rng;
pub mod selftest;
pub mod spectral;
pub mod svg;
pub mod system;

pub use graph::{ChiVector, ColoredDigraph, GraphError, RuleGraph};
pub use matrix::IntMatrix;
pub use system::{GenerationTrace, SystemError, SystemSpec};
