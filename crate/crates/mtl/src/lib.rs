//! Exact-arithmetic metric temporal logic (MTL) over dense and discrete time.
//!
//! The crate provides, end to end:
//!
//! - formulas in negation normal form with rational (possibly negative or
//!   infinite) interval bounds on the temporal operators ([`formula`]);
//! - finitely-variable behaviors over the real line and eventually-constant
//!   behaviors over the integers, with canonical representations, transition
//!   analysis, slow-variability checks, sampling, and inverse sampling
//!   ([`behavior`]);
//! - evaluators for both time domains that compute exact satisfaction sets,
//!   not point samples ([`semantics`], backed by [`denseset`]);
//! - the granularity lattice of a formula and divisibility tests for sampling
//!   periods ([`granularity`]);
//! - structural adaptation maps between the two time domains and the
//!   under/over-approximating rescalings used for verification ([`transform`]);
//! - a discretization-based verification pipeline with a bounded
//!   integer-time validity backend ([`verify`]);
//! - a plain-text concrete syntax for formulas, behaviors, and verification
//!   problems ([`syntax`]).
//!
//! All arithmetic is exact (arbitrary-precision rationals); no floating point
//! is used anywhere.

pub mod behavior;
pub mod denseset;
pub mod formula;
pub mod granularity;
pub mod interval;
pub mod rat;
pub mod semantics;
pub mod syntax;
pub mod transform;
pub mod verify;

pub use behavior::{DenseBehavior, DiscreteBehavior, Piece, SamplingParams, TransitionKind};
pub use denseset::DenseSet;
pub use formula::{Formula, Letter};
pub use granularity::Granularity;
pub use interval::{Bound, TimeInterval};
pub use rat::Rat;
