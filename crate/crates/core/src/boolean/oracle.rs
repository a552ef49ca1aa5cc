use super::BooleanFunction;
use crate::quantum::{apply, basis_state, tensor, BitString, Operator, StateVector};
use crate::{Error, Result};

/// Index map of `|x⟩|y⟩ ↦ |x⟩|y ⊕ f(x)⟩` on `n + 1` qubits, with the ancilla
/// `y` as the least significant bit.
pub fn oracle_permutation(f: &BooleanFunction) -> Vec<usize> {
    let dim = 2usize << f.arity();
    (0..dim)
        .map(|i| {
            let x = i >> 1;
            i ^ f.eval(x) as usize
        })
        .collect()
}

/// Dense permutation matrix of the standard oracle. Limited to registers a
/// dense operator can hold; use [`oracle_permutation`] beyond that.
pub fn oracle_matrix(f: &BooleanFunction) -> Result<Operator> {
    Operator::from_permutation(&oracle_permutation(f))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeutschStage {
    pub label: &'static str,
    pub state: StateVector,
}

/// Full trace of one run of the Deutsch procedure.
#[derive(Debug, Clone, PartialEq)]
pub struct DeutschRun {
    pub stages: Vec<DeutschStage>,
    /// Measured value of the input qubit.
    pub outcome: u8,
    /// Probability of `outcome`.
    pub probability: f64,
}

/// Runs `|0⟩|−⟩ → H⊗I → U_f → H⊗I → measure input`, querying the oracle once.
pub fn deutsch_run(f: &BooleanFunction) -> Result<DeutschRun> {
    if f.arity() != 1 {
        return Err(Error::WrongArity {
            expected: 1,
            found: f.arity(),
        });
    }
    let zero = basis_state(&BitString::from_index(0, 1)?)?;
    let minus = StateVector::from_real(&[
        std::f64::consts::FRAC_1_SQRT_2,
        -std::f64::consts::FRAC_1_SQRT_2,
    ])?;

    let h_input = Operator::hadamard().kron(&Operator::identity(2)?)?;
    let oracle = oracle_matrix(f)?;

    let prepared = tensor(&zero, &minus)?;
    let spread = apply(&h_input, &prepared)?;
    let queried = apply(&oracle, &spread)?;
    let folded = apply(&h_input, &queried)?;

    let p1 = folded.qubit_probability(0, 1);
    let (outcome, probability) = if p1 > 0.5 { (1, p1) } else { (0, 1.0 - p1) };
    Ok(DeutschRun {
        stages: vec![
            DeutschStage {
                label: "prepare |0>|->",
                state: prepared,
            },
            DeutschStage {
                label: "H on input",
                state: spread,
            },
            DeutschStage {
                label: "oracle U_f",
                state: queried,
            },
            DeutschStage {
                label: "H on input",
                state: folded,
            },
        ],
        outcome,
        probability,
    })
}

/// Parity of a one-bit function from a single oracle query.
pub fn deutsch_single_query(f: &BooleanFunction) -> Result<u8> {
    deutsch_run(f).map(|run| run.outcome)
}
