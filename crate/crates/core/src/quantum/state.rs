use super::{qubits_for_dim, BitString, Operator};
use crate::{Error, Result, DEFAULT_TOLERANCE};
use num_complex::Complex64;

/// Largest register a dense state vector may describe (2^20 amplitudes).
pub const MAX_STATE_QUBITS: usize = 20;

/// Complex amplitudes over the 2^m computational basis in canonical order.
///
/// States built through [`StateVector::new`] are checked for unit norm.
/// Intermediates such as the image of a projector are built with
/// [`StateVector::unnormalized`] and carry `normalized == false`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    normalized: bool,
}

fn check_dim(len: usize) -> Result<usize> {
    let qubits = qubits_for_dim(len)?;
    if qubits > MAX_STATE_QUBITS {
        return Err(Error::SizeLimitExceeded {
            what: "state qubits",
            value: qubits,
            max: MAX_STATE_QUBITS,
        });
    }
    Ok(qubits)
}

impl StateVector {
    /// A normalized state; fails if `Σ|a|²` is off from 1 by more than 1e-9.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        let norm_sqr = norm_sqr(&amplitudes);
        if (norm_sqr - 1.0).abs() > DEFAULT_TOLERANCE {
            return Err(Error::UnnormalizedState { norm_sqr });
        }
        Ok(Self {
            amplitudes,
            normalized: true,
        })
    }

    pub fn unnormalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        Ok(Self {
            amplitudes,
            normalized: false,
        })
    }

    /// Convenience constructor from real amplitudes, checked for unit norm.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// Rescale to unit norm. Fails on the zero vector.
    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n == 0.0 {
            return Err(Error::UnnormalizedState { norm_sqr: n });
        }
        let scale = 1.0 / n.sqrt();
        Ok(Self {
            amplitudes: self.amplitudes.iter().map(|a| a * scale).collect(),
            normalized: true,
        })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    /// Whether the state was constructed as normalized.
    pub fn is_marked_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    /// `<self|other>`, conjugate-linear in the first argument.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Probability of finding `qubit` (0 = leftmost) in `value` on a
    /// computational basis measurement.
    pub fn qubit_probability(&self, qubit: usize, value: u8) -> f64 {
        let shift = self.qubits() - 1 - qubit;
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| ((i >> shift) & 1) as u8 == value)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn norm_sqr(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum()
}

/// `|label>`: amplitude 1 at the canonical index of `label`.
pub fn basis_state(label: &BitString) -> Result<StateVector> {
    if label.width() > MAX_STATE_QUBITS {
        return Err(Error::SizeLimitExceeded {
            what: "state qubits",
            value: label.width(),
            max: MAX_STATE_QUBITS,
        });
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << label.width()];
    amplitudes[label.index() as usize] = Complex64::new(1.0, 0.0);
    Ok(StateVector {
        amplitudes,
        normalized: true,
    })
}

/// Kronecker product `a ⊗ b`, with `a` as the most significant factor.
pub fn tensor(a: &StateVector, b: &StateVector) -> Result<StateVector> {
    let qubits = a.qubits() + b.qubits();
    if qubits > MAX_STATE_QUBITS {
        return Err(Error::SizeLimitExceeded {
            what: "state qubits",
            value: qubits,
            max: MAX_STATE_QUBITS,
        });
    }
    let amplitudes = a
        .amplitudes
        .iter()
        .flat_map(|x| b.amplitudes.iter().map(move |y| x * y))
        .collect();
    Ok(StateVector {
        amplitudes,
        normalized: a.normalized && b.normalized,
    })
}

/// Matrix-vector product. The result is not renormalized.
pub fn apply(op: &Operator, s: &StateVector) -> Result<StateVector> {
    if op.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            found: s.dim(),
        });
    }
    let amplitudes = (0..op.dim())
        .map(|r| {
            op.row(r)
                .iter()
                .zip(&s.amplitudes)
                .map(|(m, a)| m * a)
                .sum()
        })
        .collect();
    Ok(StateVector {
        amplitudes,
        normalized: false,
    })
}
