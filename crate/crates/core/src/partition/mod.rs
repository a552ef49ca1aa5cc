//! Equi-partitions of basis labels and the observables they induce.

mod factorize;
mod observable;

pub use factorize::{factorizability_determinant, is_factorizable};
pub use observable::{
    observable_from_partition, query, Distribution, Observable, ObservableDiagnostics,
    OutcomeProbability, SpectralTerm,
};

use serde::{Deserialize, Serialize};

use crate::quantum::{BitString, MAX_STATE_QUBITS};
use crate::{Error, Result};

/// Largest arity whose function universe (2^(2^n) members) is materialized.
pub const MAX_FUNCTION_ARITY: usize = 4;

/// The set a partition is declared over. Members of either universe are
/// identified by their canonical integer index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Universe {
    /// All `2^width` computational basis labels of a `width`-qubit register.
    BasisStates { width: usize },
    /// All `2^(2^arity)` Boolean functions of `arity` bits.
    BooleanFunctions { arity: usize },
}

impl Universe {
    pub fn basis_states(width: usize) -> Result<Self> {
        if width == 0 {
            return Err(Error::ZeroWidth("register width"));
        }
        if width > MAX_STATE_QUBITS {
            return Err(Error::SizeLimitExceeded {
                what: "register width",
                value: width,
                max: MAX_STATE_QUBITS,
            });
        }
        Ok(Universe::BasisStates { width })
    }

    pub fn boolean_functions(arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ZeroWidth("function arity"));
        }
        if arity > MAX_FUNCTION_ARITY {
            return Err(Error::SizeLimitExceeded {
                what: "function arity",
                value: arity,
                max: MAX_FUNCTION_ARITY,
            });
        }
        Ok(Universe::BooleanFunctions { arity })
    }

    pub fn size(&self) -> usize {
        match *self {
            Universe::BasisStates { width } => 1 << width,
            Universe::BooleanFunctions { arity } => 1 << (1 << arity),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionClass {
    /// Outcome label reported when a query lands in this class.
    pub outcome: u32,
    /// Canonical indices of the members, in insertion order.
    pub members: Vec<u64>,
}

/// A family of classes over a declared universe.
///
/// Construction does not check disjointness or coverage; [`EquiPartition::validate`]
/// and [`is_equi_partition`] do, so malformed inputs can still be represented
/// and diagnosed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquiPartition {
    pub universe: Universe,
    pub classes: Vec<PartitionClass>,
}

impl EquiPartition {
    pub fn new(universe: Universe, classes: Vec<PartitionClass>) -> Self {
        Self { universe, classes }
    }

    /// Classes of basis labels, labelled with outcomes `0, 1, ...` in order.
    /// All labels must share one width.
    pub fn from_bitstrings(classes: &[Vec<BitString>]) -> Result<Self> {
        let width = classes
            .iter()
            .flatten()
            .next()
            .map(BitString::width)
            .ok_or(Error::Empty("partition"))?;
        let universe = Universe::basis_states(width)?;
        let classes = classes
            .iter()
            .enumerate()
            .map(|(k, class)| {
                let members = class
                    .iter()
                    .map(|b| {
                        if b.width() != width {
                            Err(Error::InvalidLabelWidth {
                                expected: width,
                                found: b.width(),
                            })
                        } else {
                            Ok(b.index())
                        }
                    })
                    .collect::<Result<Vec<u64>>>()?;
                Ok(PartitionClass {
                    outcome: k as u32,
                    members,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { universe, classes })
    }

    /// Checks that the classes are pairwise disjoint and cover the universe.
    pub fn validate(&self) -> Result<()> {
        let size = self.universe.size();
        let mut seen = vec![false; size];
        let mut count = 0usize;
        for class in &self.classes {
            for &m in &class.members {
                let slot = seen.get_mut(m as usize).ok_or_else(|| {
                    Error::NotAPartition(format!(
                        "member {m} lies outside a universe of size {size}"
                    ))
                })?;
                if std::mem::replace(slot, true) {
                    return Err(Error::NotAPartition(format!(
                        "member {m} appears in more than one place"
                    )));
                }
                count += 1;
            }
        }
        if count != size {
            let missing = seen.iter().position(|&s| !s).unwrap_or_default();
            return Err(Error::NotAPartition(format!(
                "{} of {size} members are not covered (first missing: {missing})",
                size - count
            )));
        }
        Ok(())
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.members.len()).collect()
    }

    /// The members of class `k` as bit strings, for basis-state partitions.
    pub fn class_labels(&self, k: usize) -> Option<Vec<BitString>> {
        let Universe::BasisStates { width } = self.universe else {
            return None;
        };
        self.classes.get(k).map(|c| {
            c.members
                .iter()
                .map(|&m| BitString::from_index(m, width).expect("member checked against width"))
                .collect()
        })
    }
}

/// Basis labels of `m` qubits split by popcount parity: outcome 0 collects
/// even-popcount labels, outcome 1 odd-popcount labels, each in ascending
/// canonical order.
pub fn parity_partition(m: usize) -> Result<EquiPartition> {
    let universe = Universe::basis_states(m)?;
    let (even, odd): (Vec<u64>, Vec<u64>) = (0..1u64 << m).partition(|i| i.count_ones() % 2 == 0);
    Ok(EquiPartition::new(
        universe,
        vec![
            PartitionClass {
                outcome: 0,
                members: even,
            },
            PartitionClass {
                outcome: 1,
                members: odd,
            },
        ],
    ))
}

/// Whether all classes have equal cardinality. Fails with `NotAPartition`
/// when the classes overlap or leave part of the universe uncovered.
pub fn is_equi_partition(p: &EquiPartition) -> Result<bool> {
    p.validate()?;
    let sizes = p.class_sizes();
    Ok(sizes.windows(2).all(|w| w[0] == w[1]))
}
