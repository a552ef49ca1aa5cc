//! Boolean functions of `n` bits, their functional parity, oracle unitaries
//! and the single-query span analysis of the two parity classes.
//!
//! Function identifiers: the canonical index of `f` is `Σ_x f(x)·2^x`, where
//! `x` runs over canonical input indices (leftmost input bit most
//! significant). Truth tables list `f(0…0)` first.

mod oracle;
mod span;

pub use oracle::{
    deutsch_run, deutsch_single_query, oracle_matrix, oracle_permutation, DeutschRun, DeutschStage,
};
pub use span::{
    ancilla_extended_span_analysis, extended_span_analysis, single_query_separable, span_analysis,
    SpanReport, SpanWitness, MAX_ANCILLAS, MAX_ANCILLA_ARITY,
};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::partition::{EquiPartition, PartitionClass, Universe};
use crate::quantum::{SignVector, MAX_STATE_QUBITS};
use crate::{Error, Result};

/// Largest arity a single function may have; its oracle then acts on the
/// largest supported register.
pub const MAX_ARITY: usize = MAX_STATE_QUBITS - 1;

/// Largest arity for which the canonical index fits in a `u64`.
const MAX_INDEXED_ARITY: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BooleanFunction {
    arity: usize,
    truth_table: Vec<u8>,
}

fn check_arity(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroWidth("function arity"));
    }
    if n > MAX_ARITY {
        return Err(Error::SizeLimitExceeded {
            what: "function arity",
            value: n,
            max: MAX_ARITY,
        });
    }
    Ok(())
}

impl BooleanFunction {
    /// From the outputs `f(0…0), …, f(1…1)`; the length must be `2^n`, `n ≥ 1`.
    pub fn from_truth_table(truth_table: Vec<u8>) -> Result<Self> {
        let len = truth_table.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        let arity = len.trailing_zeros() as usize;
        check_arity(arity)?;
        if let Some(b) = truth_table.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidBitString(format!("output {b} is not a bit")));
        }
        Ok(Self { arity, truth_table })
    }

    /// The function of arity `n` with the given canonical index.
    pub fn from_index(n: usize, index: u64) -> Result<Self> {
        check_arity(n)?;
        if n > MAX_INDEXED_ARITY {
            return Err(Error::SizeLimitExceeded {
                what: "indexed function arity",
                value: n,
                max: MAX_INDEXED_ARITY,
            });
        }
        let len = 1usize << n;
        if len < 64 && index >> len != 0 {
            return Err(Error::InvalidBitString(format!(
                "index {index} is out of range for arity {n}"
            )));
        }
        Ok(Self {
            arity: n,
            truth_table: (0..len).map(|x| ((index >> x) & 1) as u8).collect(),
        })
    }

    pub fn constant(n: usize, value: u8) -> Result<Self> {
        check_arity(n)?;
        Self::from_truth_table(vec![value; 1 << n])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn truth_table(&self) -> &[u8] {
        &self.truth_table
    }

    /// `f(x)` for the canonical input index `x`.
    pub fn eval(&self, x: usize) -> u8 {
        self.truth_table[x]
    }

    /// `Σ_x f(x)·2^x`; `None` when the arity is too large for a `u64`.
    pub fn canonical_index(&self) -> Option<u64> {
        (self.arity <= MAX_INDEXED_ARITY).then(|| {
            self.truth_table
                .iter()
                .enumerate()
                .map(|(x, &b)| (b as u64) << x)
                .sum()
        })
    }

    /// Outputs recoded as `g(x) = 2·f(x) − 1`.
    pub fn sign_signature(&self) -> SignVector {
        SignVector::from_bits(&self.truth_table).expect("truth table holds bits")
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.truth_table {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BooleanFunction {
    type Err = Error;

    /// Parses a truth-table string: character `k` is `f` at canonical input `k`.
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidBitString(format!(
                    "unexpected character {other:?} in truth table {s:?}"
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::from_truth_table(bits)
    }
}

/// Product of the sign signature mapped to a bit: +1 gives 0, −1 gives 1.
pub fn functional_parity(f: &BooleanFunction) -> u8 {
    match f.sign_signature().product() {
        1 => 0,
        _ => 1,
    }
}

/// The outputs of a function as an ordered tuple and as a set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueSet {
    pub tuple: Vec<u8>,
    pub set: BTreeSet<u8>,
}

pub fn value_set(f: &BooleanFunction) -> ValueSet {
    ValueSet {
        tuple: f.truth_table.clone(),
        set: f.truth_table.iter().copied().collect(),
    }
}

fn check_enumerable(n: usize) -> Result<()> {
    Universe::boolean_functions(n).map(|_| ())
}

/// Every function of arity `n` in ascending canonical index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionUniverse {
    arity: usize,
    functions: Vec<BooleanFunction>,
}

impl FunctionUniverse {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn functions(&self) -> &[BooleanFunction] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BooleanFunction> {
        self.functions.iter()
    }

    /// Functions of the given parity, in canonical order.
    pub fn class(&self, parity: u8) -> Vec<&BooleanFunction> {
        self.functions
            .iter()
            .filter(|f| functional_parity(f) == parity)
            .collect()
    }
}

impl<'a> IntoIterator for &'a FunctionUniverse {
    type Item = &'a BooleanFunction;
    type IntoIter = std::slice::Iter<'a, BooleanFunction>;

    fn into_iter(self) -> Self::IntoIter {
        self.functions.iter()
    }
}

/// Streams all `2^(2^n)` functions of arity `n` in ascending canonical index.
pub fn iter_functions(n: usize) -> Result<impl Iterator<Item = BooleanFunction>> {
    check_enumerable(n)?;
    let count = 1u64 << (1 << n);
    Ok((0..count).map(move |i| BooleanFunction::from_index(n, i).expect("index in range")))
}

pub fn enumerate_functions(n: usize) -> Result<FunctionUniverse> {
    Ok(FunctionUniverse {
        arity: n,
        functions: iter_functions(n)?.collect(),
    })
}

/// Functions of arity `n` split by functional parity (class 0, then class 1),
/// members identified by canonical index.
pub fn parity_classes(n: usize) -> Result<EquiPartition> {
    let universe = Universe::boolean_functions(n)?;
    let mut classes = [0u32, 1].map(|outcome| PartitionClass {
        outcome,
        members: Vec::new(),
    });
    for f in iter_functions(n)? {
        let idx = f.canonical_index().expect("enumerable arity is indexable");
        classes[functional_parity(&f) as usize].members.push(idx);
    }
    Ok(EquiPartition::new(universe, classes.into()))
}

/// Display order used for function tables: parity first, then canonical index.
pub fn sort_parity_major(functions: &mut [BooleanFunction]) {
    functions.sort_by_cached_key(|f| (functional_parity(f), f.canonical_index()));
}

/// `2^(2^n − 1)`, the size of each parity class, for arities where it fits.
pub fn parity_class_size(n: usize) -> Option<u128> {
    let exp = 1u32.checked_shl(n as u32)?.checked_sub(1)?;
    1u128.checked_shl(exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::is_equi_partition;

    fn f(s: &str) -> BooleanFunction {
        s.parse().unwrap()
    }

    fn signs(f: &BooleanFunction) -> Vec<i8> {
        f.sign_signature().entries().to_vec()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_functions(1).unwrap().len(), 4);
        assert_eq!(enumerate_functions(2).unwrap().len(), 16);
        assert_eq!(enumerate_functions(3).unwrap().len(), 256);
        assert!(matches!(
            enumerate_functions(5),
            Err(Error::SizeLimitExceeded { .. })
        ));
        assert!(enumerate_functions(0).is_err());
    }

    #[test]
    fn enumeration_is_canonical_and_bijective() {
        for n in 1..=3 {
            let u = enumerate_functions(n).unwrap();
            for (i, g) in u.iter().enumerate() {
                assert_eq!(g.canonical_index(), Some(i as u64));
                assert_eq!(&BooleanFunction::from_index(n, i as u64).unwrap(), g);
                assert_eq!(
                    &BooleanFunction::from_truth_table(g.truth_table().to_vec()).unwrap(),
                    g
                );
            }
        }
    }

    #[test]
    fn parity_of_table_rows() {
        assert_eq!(functional_parity(&f("0011")), 0);
        assert_eq!(signs(&f("0011")), vec![-1, -1, 1, 1]);
        assert_eq!(functional_parity(&f("0001")), 1);
        assert_eq!(functional_parity(&f("10")), 1);
        assert_eq!(signs(&f("10")), vec![1, -1]);
    }

    #[test]
    fn parity_classes_one_bit() {
        let p = parity_classes(1).unwrap();
        let rows = |k: usize| -> Vec<Vec<i8>> {
            p.classes[k]
                .members
                .iter()
                .map(|&i| signs(&BooleanFunction::from_index(1, i).unwrap()))
                .collect()
        };
        assert_eq!(rows(0), vec![vec![-1, -1], vec![1, 1]]);
        assert_eq!(rows(1), vec![vec![1, -1], vec![-1, 1]]);
    }

    #[test]
    fn parity_class_sizes() {
        for n in 1..=3 {
            let p = parity_classes(n).unwrap();
            let half = parity_class_size(n).unwrap() as usize;
            assert_eq!(p.class_sizes(), vec![half, half]);
            assert!(is_equi_partition(&p).unwrap());
        }
        assert_eq!(parity_class_size(3), Some(128));
        assert_eq!(parity_class_size(6), Some(1 << 63));
        assert_eq!(parity_class_size(7), Some(1 << 127));
        assert_eq!(parity_class_size(8), None);
    }

    #[test]
    fn value_sets() {
        let c = value_set(&f("0000"));
        assert_eq!(c.tuple, vec![0, 0, 0, 0]);
        assert_eq!(c.set, BTreeSet::from([0]));
        let v = value_set(&f("01"));
        assert_eq!((v.tuple, v.set), (vec![0, 1], BTreeSet::from([0, 1])));
        let v = value_set(&f("0110"));
        assert_eq!((v.tuple, v.set), (vec![0, 1, 1, 0], BTreeSet::from([0, 1])));
    }

    #[test]
    fn parity_major_order_groups_by_parity() {
        let mut fs = enumerate_functions(2).unwrap().functions().to_vec();
        sort_parity_major(&mut fs);
        let parities: Vec<u8> = fs.iter().map(functional_parity).collect();
        assert_eq!(parities, [vec![0; 8], vec![1; 8]].concat());
        assert!(fs[..8]
            .windows(2)
            .all(|w| w[0].canonical_index() < w[1].canonical_index()));
    }

    #[test]
    fn truth_table_validation() {
        assert!("011".parse::<BooleanFunction>().is_err());
        assert!("0".parse::<BooleanFunction>().is_err());
        assert!("0a".parse::<BooleanFunction>().is_err());
        assert!(BooleanFunction::from_index(1, 4).is_err());
        assert!(BooleanFunction::from_index(7, 0).is_err());
        let wide = BooleanFunction::constant(8, 1).unwrap();
        assert_eq!(wide.canonical_index(), None);
        assert_eq!(functional_parity(&wide), 0);
    }
}
