//! Dense finite-dimensional state and operator arithmetic.
//!
//! Basis ordering throughout the crate: the leftmost tensor factor (the
//! leftmost character of a ket label such as `|01>`) is the most significant
//! bit of the basis index.

mod bits;
mod operator;
mod sign;
mod state;

pub use bits::BitString;
pub use operator::{projector_from_states, Operator, MAX_OPERATOR_QUBITS};
pub use sign::{exact_rank, first_nonorthogonal_pair, spans_orthogonal, SignVector};
pub use state::{apply, basis_state, tensor, StateVector, MAX_STATE_QUBITS};

use crate::{Error, Result};

/// Number of qubits for a dimension that must be a power of two (and at least 2).
pub(crate) fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}
