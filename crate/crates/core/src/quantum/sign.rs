use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A vector with every entry exactly -1 or +1, held as integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if let Some(&e) = entries.iter().find(|&&e| e != 1 && e != -1) {
            return Err(Error::InvalidSign(e as i64));
        }
        Ok(Self(entries))
    }

    /// `2b - 1` entry-wise: bit 0 becomes -1, bit 1 becomes +1.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        bits.iter()
            .map(|&b| match b {
                0 => Ok(-1),
                1 => Ok(1),
                other => Err(Error::InvalidBitString(format!(
                    "entry {other} is not a bit"
                ))),
            })
            .collect::<Result<Vec<i8>>>()
            .map(Self)
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Product of all entries.
    pub fn product(&self) -> i8 {
        self.0.iter().product()
    }

    pub fn dot(&self, other: &SignVector) -> Result<i64> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| (a * b) as i64)
            .sum())
    }

    /// `self ⊗ other`, with `self` as the most significant factor.
    pub fn tensor(&self, other: &SignVector) -> SignVector {
        SignVector(
            self.0
                .iter()
                .flat_map(|&a| other.0.iter().map(move |&b| a * b))
                .collect(),
        )
    }
}

impl TryFrom<Vec<i8>> for SignVector {
    type Error = Error;

    fn try_from(entries: Vec<i8>) -> Result<Self> {
        Self::new(entries)
    }
}

impl From<SignVector> for Vec<i8> {
    fn from(v: SignVector) -> Self {
        v.0
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e:+}")?;
        }
        write!(f, ")")
    }
}

fn common_length<'a>(vectors: impl IntoIterator<Item = &'a SignVector>) -> Result<Option<usize>> {
    let mut len = None;
    for v in vectors {
        match len {
            None => len = Some(v.len()),
            Some(l) if l != v.len() => {
                return Err(Error::DimensionMismatch {
                    expected: l,
                    found: v.len(),
                })
            }
            _ => {}
        }
    }
    Ok(len)
}

/// Row echelon basis over the integers, kept primitive (gcd 1) after every
/// insertion so that entries stay small.
struct EchelonBasis {
    width: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl EchelonBasis {
    fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduce `v` against the basis and keep it if it is independent.
    fn insert(&mut self, v: &SignVector) -> bool {
        let mut v: Vec<BigInt> = v.entries().iter().map(|&e| BigInt::from(e)).collect();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let lead = &row[*pivot];
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = &*x * lead - &factor * r;
            }
            make_primitive(&mut v);
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pivot) => {
                self.rows.push((pivot, v));
                true
            }
            None => false,
        }
    }
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    debug_assert!(g.is_zero() || !g.is_negative());
}

/// Rank over the rationals of a family of sign vectors, computed exactly.
/// An empty family has rank 0.
pub fn exact_rank(vectors: &[SignVector]) -> Result<usize> {
    let Some(width) = common_length(vectors)? else {
        return Ok(0);
    };
    let mut basis = EchelonBasis::new(width);
    for v in vectors {
        basis.insert(v);
        if basis.is_full() {
            break;
        }
    }
    Ok(basis.rank())
}

/// First pair `(i, j)` in row-major order with `a[i]·b[j] != 0`, together
/// with that inner product.
pub fn first_nonorthogonal_pair(
    a: &[SignVector],
    b: &[SignVector],
) -> Result<Option<(usize, usize, i64)>> {
    common_length(a.iter().chain(b))?;
    for (i, u) in a.iter().enumerate() {
        for (j, v) in b.iter().enumerate() {
            let d = u.dot(v)?;
            if d != 0 {
                return Ok(Some((i, j, d)));
            }
        }
    }
    Ok(None)
}

/// Whether `span(a)` and `span(b)` are orthogonal.
///
/// By bilinearity this holds exactly when every cross inner product `a_i·b_j`
/// vanishes; it then also follows that `rank(a) + rank(b) = rank(a ∪ b)`.
pub fn spans_orthogonal(a: &[SignVector], b: &[SignVector]) -> Result<bool> {
    Ok(first_nonorthogonal_pair(a, b)?.is_none())
}
