//! Equi-partition parity observables over multi-qubit basis states, and an
//! exact single-query decidability analysis for the parity of Boolean
//! functions.
//!
//! The crate is split into three layers:
//!
//! - [`quantum`]: dense state vectors, operators, bit-string labels and exact
//!   integer arithmetic on ±1 sign vectors.
//! - [`partition`]: equi-partitions of basis labels, the spectral observables
//!   they induce, Born-rule queries and the two-qubit factorizability test.
//! - [`boolean`]: enumeration of all Boolean functions of `n` bits, functional
//!   parity, oracle unitaries, the Deutsch procedure and span analysis of the
//!   parity classes.

pub mod boolean;
pub mod error;
pub mod partition;
pub mod quantum;

pub use error::{Error, Result};

/// Tolerance for amplitude-level floating point checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
