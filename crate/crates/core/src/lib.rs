//! A generalized chase engine.
//!
//! The chase repairs an object until it satisfies a set of dependencies:
//! tgds add atoms, egds equate terms. Here the object is a
//! [`GeneralizedInstance`](model::GeneralizedInstance), which represents a
//! database instance or the frozen body of a conjunctive query, so the same
//! engine serves data exchange and semantic query optimisation.
//!
//! Modules:
//!
//! * [`model`]: terms, atoms, instances, dependencies, queries, substitutions.
//! * [`homomorphism`]: trigger search, activeness and instance homomorphisms.
//! * [`chase`]: chase steps, the chase loop and its step log.
//! * [`termination`]: constraint validation and five termination criteria.
//! * [`io`]: the plain-text problem format and result/log rendering.
//! * [`cli`]: the `genchase` command line.

pub mod chase;
pub mod cli;
pub mod error;
pub mod homomorphism;
pub mod io;
pub mod model;
pub mod termination;

pub use error::{Error, Result};
