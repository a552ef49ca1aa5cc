use serde::{Deserialize, Serialize};

use super::{functional_parity, iter_functions, BooleanFunction};
use crate::partition::{Universe, MAX_FUNCTION_ARITY};
use crate::quantum::{exact_rank, first_nonorthogonal_pair, spans_orthogonal, SignVector};
use crate::{Error, Result};

/// Largest arity accepted by the ancilla-extended analysis.
pub const MAX_ANCILLA_ARITY: usize = 3;
/// Largest ancilla count accepted by the ancilla-extended analysis.
pub const MAX_ANCILLAS: usize = 2;

/// A parity-0 and a parity-1 function whose (extended) sign vectors have a
/// nonzero inner product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanWitness {
    pub class0_function: u64,
    pub class1_function: u64,
    pub class0_vector: SignVector,
    pub class1_vector: SignVector,
    pub inner_product: i64,
}

/// Exact span comparison of the two functional-parity classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanReport {
    pub n: usize,
    pub ancillas: usize,
    /// Length of the (extended) sign vectors.
    pub dimension: usize,
    pub class_sizes: [usize; 2],
    pub ranks: [usize; 2],
    /// Rank of both classes together.
    pub combined_rank: usize,
    pub orthogonal: bool,
    pub witness: Option<SpanWitness>,
}

/// Whether a single projective measurement can tell the classes apart,
/// i.e. whether their spans are pairwise orthogonal.
pub fn single_query_separable(classes: &[Vec<SignVector>]) -> Result<bool> {
    if classes.is_empty() {
        return Err(Error::Empty("class list"));
    }
    if classes.iter().any(Vec::is_empty) {
        return Err(Error::Empty("class"));
    }
    let len = classes[0][0].len();
    if let Some(v) = classes.iter().flatten().find(|v| v.len() != len) {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: v.len(),
        });
    }
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            if !spans_orthogonal(a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn span_analysis(n: usize) -> Result<SpanReport> {
    Universe::boolean_functions(n)?;
    analyze(n, 0, None)
}

/// Span analysis with every sign vector tensored with the all-(+1) pattern
/// on `k` ancilla bits, the same for every function.
pub fn ancilla_extended_span_analysis(n: usize, k: usize) -> Result<SpanReport> {
    check_ancilla_limits(n, k)?;
    let pattern = SignVector::new(vec![1; 1 << k])?;
    analyze(n, k, Some(&pattern))
}

/// Span analysis with a caller-chosen fixed ancilla sign pattern of length
/// `2^k` appended (as the least significant tensor factor) to every function.
pub fn extended_span_analysis(n: usize, pattern: &SignVector) -> Result<SpanReport> {
    let len = pattern.len();
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    let k = len.trailing_zeros() as usize;
    check_ancilla_limits(n, k)?;
    analyze(n, k, Some(pattern))
}

fn check_ancilla_limits(n: usize, k: usize) -> Result<()> {
    Universe::boolean_functions(n)?;
    if n > MAX_ANCILLA_ARITY {
        return Err(Error::SizeLimitExceeded {
            what: "function arity with ancillas",
            value: n,
            max: MAX_ANCILLA_ARITY,
        });
    }
    if k > MAX_ANCILLAS {
        return Err(Error::SizeLimitExceeded {
            what: "ancilla count",
            value: k,
            max: MAX_ANCILLAS,
        });
    }
    Ok(())
}

fn analyze(n: usize, k: usize, pattern: Option<&SignVector>) -> Result<SpanReport> {
    debug_assert!(n <= MAX_FUNCTION_ARITY);
    let mut ids: [Vec<u64>; 2] = Default::default();
    let mut vectors: [Vec<SignVector>; 2] = Default::default();
    for f in iter_functions(n)? {
        let class = functional_parity(&f) as usize;
        ids[class].push(index_of(&f));
        let signs = f.sign_signature();
        vectors[class].push(match pattern {
            Some(p) => signs.tensor(p),
            None => signs,
        });
    }

    let ranks = [exact_rank(&vectors[0])?, exact_rank(&vectors[1])?];
    let all: Vec<SignVector> = vectors.iter().flatten().cloned().collect();
    let combined_rank = exact_rank(&all)?;
    let witness =
        first_nonorthogonal_pair(&vectors[0], &vectors[1])?.map(|(i, j, d)| SpanWitness {
            class0_function: ids[0][i],
            class1_function: ids[1][j],
            class0_vector: vectors[0][i].clone(),
            class1_vector: vectors[1][j].clone(),
            inner_product: d,
        });
    let orthogonal = witness.is_none();
    debug_assert!(!orthogonal || ranks[0] + ranks[1] == combined_rank);

    Ok(SpanReport {
        n,
        ancillas: k,
        dimension: 1 << (n + k),
        class_sizes: [vectors[0].len(), vectors[1].len()],
        ranks,
        combined_rank,
        orthogonal,
        witness,
    })
}

fn index_of(f: &BooleanFunction) -> u64 {
    f.canonical_index().expect("enumerable arity is indexable")
}
