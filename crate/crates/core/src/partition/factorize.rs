use num_complex::Complex64;

use crate::quantum::StateVector;
use crate::{Error, Result};

/// `α00·α11 − α01·α10` for a two-qubit state in canonical basis order.
/// The state is a product of single-qubit states exactly when this vanishes.
pub fn factorizability_determinant(s: &StateVector) -> Result<Complex64> {
    if s.dim() != 4 {
        return Err(Error::WrongDimension(s.dim()));
    }
    let a = s.amplitudes();
    Ok(a[0] * a[3] - a[1] * a[2])
}

pub fn is_factorizable(s: &StateVector, tol: f64) -> Result<bool> {
    Ok(factorizability_determinant(s)?.norm() <= tol)
}
