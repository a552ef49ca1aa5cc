use num_complex::Complex64;

use super::{qubits_for_dim, StateVector};
use crate::{Error, Result, DEFAULT_TOLERANCE};

/// Largest register a dense operator may act on (a 1024 x 1024 matrix).
pub const MAX_OPERATOR_QUBITS: usize = 10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense square complex matrix, row-major, dimension a power of two.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    entries: Vec<Complex64>,
}

fn check_dim(dim: usize) -> Result<()> {
    let qubits = qubits_for_dim(dim)?;
    if qubits > MAX_OPERATOR_QUBITS {
        return Err(Error::SizeLimitExceeded {
            what: "operator qubits",
            value: qubits,
            max: MAX_OPERATOR_QUBITS,
        });
    }
    Ok(())
}

impl Operator {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            entries: vec![ZERO; dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut op = Self::zeros(dim)?;
        for i in 0..dim {
            op.entries[i * dim + i] = ONE;
        }
        Ok(op)
    }

    pub fn from_diagonal(diagonal: &[Complex64]) -> Result<Self> {
        let mut op = Self::zeros(diagonal.len())?;
        for (i, &d) in diagonal.iter().enumerate() {
            op.entries[i * op.dim + i] = d;
        }
        Ok(op)
    }

    /// Row-major construction from `rows`; every row must have `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        check_dim(dim)?;
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { dim, entries })
    }

    /// The permutation matrix sending basis state `i` to basis state `perm[i]`.
    pub fn from_permutation(perm: &[usize]) -> Result<Self> {
        let dim = perm.len();
        let mut op = Self::zeros(dim)?;
        let mut seen = vec![false; dim];
        for (col, &row) in perm.iter().enumerate() {
            if row >= dim || std::mem::replace(&mut seen[row], true) {
                return Err(Error::NotAPartition(format!(
                    "index map is not a permutation at input {col}"
                )));
            }
            op.entries[row * dim + col] = ONE;
        }
        Ok(op)
    }

    /// Single-qubit Hadamard gate.
    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            dim: 2,
            entries: vec![h, h, h, -h],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// Kronecker product with `self` as the most significant factor.
    pub fn kron(&self, other: &Operator) -> Result<Operator> {
        let dim = self.dim * other.dim;
        let mut out = Self::zeros(dim)?;
        for r1 in 0..self.dim {
            for c1 in 0..self.dim {
                let a = self.get(r1, c1);
                if a == ZERO {
                    continue;
                }
                for r2 in 0..other.dim {
                    for c2 in 0..other.dim {
                        out.entries[(r1 * other.dim + r2) * dim + c1 * other.dim + c2] =
                            a * other.get(r2, c2);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &Operator) -> Result<Operator> {
        self.same_dim(other)?;
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.entries[k * n..(k + 1) * n];
                for (o, b) in out[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(Operator {
            dim: n,
            entries: out,
        })
    }

    pub fn add(&self, other: &Operator) -> Result<Operator> {
        self.same_dim(other)?;
        Ok(Operator {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: Complex64) -> Operator {
        Operator {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn adjoint(&self) -> Operator {
        let n = self.dim;
        let mut entries = vec![ZERO; n * n];
        for r in 0..n {
            for c in 0..n {
                entries[c * n + r] = self.entries[r * n + c].conj();
            }
        }
        Operator { dim: n, entries }
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Operator) -> Result<f64> {
        self.same_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()).is_ok_and(|d| d <= tol)
    }

    pub fn is_idempotent(&self, tol: f64) -> bool {
        self.matmul(self)
            .and_then(|sq| sq.max_abs_diff(self))
            .is_ok_and(|d| d <= tol)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.adjoint()
            .matmul(self)
            .and_then(|p| p.max_abs_diff(&Operator::identity(self.dim)?))
            .is_ok_and(|d| d <= tol)
    }

    /// Exactly one entry equal to 1 in every row and column, all others exactly 0.
    pub fn is_permutation(&self) -> bool {
        let n = self.dim;
        let mut col_hits = vec![0usize; n];
        for r in 0..n {
            let mut row_hits = 0;
            for (c, &a) in self.row(r).iter().enumerate() {
                if a == ONE {
                    row_hits += 1;
                    col_hits[c] += 1;
                } else if a != ZERO {
                    return false;
                }
            }
            if row_hits != 1 {
                return false;
            }
        }
        col_hits.iter().all(|&h| h == 1)
    }

    /// Exact comparison against the identity.
    pub fn is_exact_identity(&self) -> bool {
        (0..self.dim).all(|r| {
            self.row(r)
                .iter()
                .enumerate()
                .all(|(c, &a)| a == if r == c { ONE } else { ZERO })
        })
    }

    fn same_dim(&self, other: &Operator) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

/// `Σ |s><s|` over an orthonormal family of states of dimension `dim`.
///
/// `dim` fixes the size of the result when `states` is empty; otherwise every
/// state must have that dimension.
pub fn projector_from_states(states: &[StateVector], dim: usize) -> Result<Operator> {
    let mut out = Operator::zeros(dim)?;
    for s in states {
        if s.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: s.dim(),
            });
        }
    }
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate().skip(i) {
            let expected = if i == j { ONE } else { ZERO };
            let deviation = (a.inner(b)? - expected).norm();
            if deviation > DEFAULT_TOLERANCE {
                return Err(Error::NonOrthonormalInput { i, j, deviation });
            }
        }
    }
    for s in states {
        let amps = s.amplitudes();
        for (r, ar) in amps.iter().enumerate() {
            if *ar == ZERO {
                continue;
            }
            for (c, ac) in amps.iter().enumerate() {
                out.entries[r * dim + c] += ar * ac.conj();
            }
        }
    }
    Ok(out)
}
