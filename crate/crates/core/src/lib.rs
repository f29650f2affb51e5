//! Exact computation in Yokonuma–Hecke algebras `Y_{d,n}(u)`: normal forms on
//! the inductive basis, the Markov trace, solutions of the E-system, the
//! framed link invariant built from them, and finite-depth p-adic towers.

pub mod coeff_ring;
pub mod e_system;
pub mod error;
pub mod framed_braids;
pub mod invariants;
pub mod markov_trace;
pub mod padic;
pub mod report;
pub mod yokonuma;

pub use error::{Error, Result};
