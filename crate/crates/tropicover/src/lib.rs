//! Discrete admissible covers of marked graphs.
//!
//! The crate enumerates harmonic covers of stable graphs up to isomorphism,
//! computes their standard weights from local Hurwitz numbers, checks
//! balancing in distance-vector coordinates and evaluates the Catalan count of
//! covers contributing to the double-ramification pushforward.

pub mod canon;
pub mod catalan;
pub mod cover;
pub mod cycles;
pub mod dictionary;
pub mod enumerate;
pub mod error;
pub mod fans;
pub mod graph;
pub mod hurwitz;
pub mod linalg;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Q;
