use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{EquiPartition, Universe};
use crate::quantum::{Operator, StateVector, MAX_OPERATOR_QUBITS};
use crate::{Error, Result, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralTerm {
    pub eigenvalue: f64,
    pub projector: Operator,
}

/// An observable in spectral form `Σ λ P_λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    terms: Vec<SpectralTerm>,
}

/// Worst-case deviations from the spectral-decomposition invariants,
/// each measured as a max-norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObservableDiagnostics {
    /// max over λ of `‖P_λ² − P_λ‖`
    pub idempotence: f64,
    /// max over λ of `‖P_λ − P_λ†‖`
    pub hermiticity: f64,
    /// max over λ ≠ μ of `‖P_λ P_μ‖`
    pub orthogonality: f64,
    /// `‖Σ P_λ − I‖`
    pub completeness: f64,
}

impl ObservableDiagnostics {
    pub fn within(&self, tol: f64) -> bool {
        [
            self.idempotence,
            self.hermiticity,
            self.orthogonality,
            self.completeness,
        ]
        .iter()
        .all(|&d| d <= tol)
    }
}

impl Observable {
    pub fn terms(&self) -> &[SpectralTerm] {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        self.terms[0].projector.dim()
    }

    pub fn projector(&self, eigenvalue: f64) -> Option<&Operator> {
        self.terms
            .iter()
            .find(|t| t.eigenvalue == eigenvalue)
            .map(|t| &t.projector)
    }

    /// The assembled matrix `Σ λ P_λ`.
    pub fn matrix(&self) -> Operator {
        self.terms
            .iter()
            .map(|t| t.projector.scale(Complex64::new(t.eigenvalue, 0.0)))
            .reduce(|a, b| a.add(&b).expect("terms share a dimension"))
            .expect("observable has at least one term")
    }

    pub fn diagnostics(&self) -> Result<ObservableDiagnostics> {
        let mut d = ObservableDiagnostics {
            idempotence: 0.0,
            hermiticity: 0.0,
            orthogonality: 0.0,
            completeness: 0.0,
        };
        let mut sum = Operator::zeros(self.dim())?;
        for (i, a) in self.terms.iter().enumerate() {
            let p = &a.projector;
            d.idempotence = d.idempotence.max(p.matmul(p)?.max_abs_diff(p)?);
            d.hermiticity = d.hermiticity.max(p.max_abs_diff(&p.adjoint())?);
            for b in &self.terms[i + 1..] {
                d.orthogonality = d.orthogonality.max(p.matmul(&b.projector)?.max_abs());
            }
            sum = sum.add(p)?;
        }
        d.completeness = sum.max_abs_diff(&Operator::identity(self.dim())?)?;
        Ok(d)
    }
}

/// Spectral observable with one diagonal projector per class of `p`,
/// paired with `eigenvalues` in class order.
pub fn observable_from_partition(p: &EquiPartition, eigenvalues: &[f64]) -> Result<Observable> {
    let Universe::BasisStates { width } = p.universe else {
        return Err(Error::NotBasisPartition);
    };
    if width > MAX_OPERATOR_QUBITS {
        return Err(Error::SizeLimitExceeded {
            what: "operator qubits",
            value: width,
            max: MAX_OPERATOR_QUBITS,
        });
    }
    p.validate()?;
    if eigenvalues.len() != p.classes.len() {
        return Err(Error::EigenvalueCount {
            expected: p.classes.len(),
            found: eigenvalues.len(),
        });
    }
    for (i, &a) in eigenvalues.iter().enumerate() {
        if eigenvalues[..i].contains(&a) {
            return Err(Error::DuplicateEigenvalue(a));
        }
    }

    let dim = p.universe.size();
    let terms = p
        .classes
        .iter()
        .zip(eigenvalues)
        .map(|(class, &eigenvalue)| {
            let mut diagonal = vec![Complex64::new(0.0, 0.0); dim];
            for &m in &class.members {
                diagonal[m as usize] = Complex64::new(1.0, 0.0);
            }
            Ok(SpectralTerm {
                eigenvalue,
                projector: Operator::from_diagonal(&diagonal)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Observable { terms })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutcomeProbability {
    pub eigenvalue: f64,
    pub probability: f64,
}

/// Born-rule distribution over the eigenvalues of an observable, in term order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub outcomes: Vec<OutcomeProbability>,
}

impl Distribution {
    pub fn probability(&self, eigenvalue: f64) -> Option<f64> {
        self.outcomes
            .iter()
            .find(|o| o.eigenvalue == eigenvalue)
            .map(|o| o.probability)
    }

    pub fn total(&self) -> f64 {
        self.outcomes.iter().map(|o| o.probability).sum()
    }

    /// The eigenvalue that occurs with probability 1 (within `tol`), if any.
    pub fn deterministic_outcome(&self, tol: f64) -> Option<f64> {
        self.outcomes
            .iter()
            .find(|o| (o.probability - 1.0).abs() <= tol)
            .map(|o| o.eigenvalue)
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.gen::<f64>() * self.total();
        let mut acc = 0.0;
        for o in &self.outcomes {
            acc += o.probability;
            if u < acc {
                return o.eigenvalue;
            }
        }
        // rounding can leave u == total; fall back to the last outcome with support
        self.outcomes
            .iter()
            .rev()
            .find(|o| o.probability > 0.0)
            .unwrap_or(&self.outcomes[self.outcomes.len() - 1])
            .eigenvalue
    }

    /// Reproducible single-shot sample.
    pub fn sample(&self, seed: u64) -> f64 {
        self.sample_with(&mut ChaCha8Rng::seed_from_u64(seed))
    }
}

/// Probability `<s|P_λ|s>` of every eigenvalue λ of `observable`.
pub fn query(observable: &Observable, s: &StateVector) -> Result<Distribution> {
    if observable.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: observable.dim(),
            found: s.dim(),
        });
    }
    if !s.is_normalized(DEFAULT_TOLERANCE) {
        return Err(Error::UnnormalizedState {
            norm_sqr: s.norm_sqr(),
        });
    }
    let outcomes = observable
        .terms
        .iter()
        .map(|t| {
            let projected = crate::quantum::apply(&t.projector, s)?;
            Ok(OutcomeProbability {
                eigenvalue: t.eigenvalue,
                probability: s.inner(&projected)?.re,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Distribution { outcomes })
}
