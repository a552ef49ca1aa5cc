use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    /// Parity 0 rows first, then parity 1; canonical index within each.
    Parity,
    /// Ascending canonical index.
    Canonical,
}

/// Parity observables over qubit registers and single-query analysis of
/// Boolean functional parity.
///
/// Conventions: basis labels read left to right, leftmost bit most
/// significant. A truth-table string lists f at canonical inputs 0, 1, ...,
/// so character k is f(k) and f(0...0) comes first. The canonical index of a
/// function is sum_x f(x) 2^x.
#[derive(Debug, Clone, Parser)]
#[command(name = "partiq", version)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Tolerance for floating point checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Parity observable P = 0*P_even + 1*P_odd with its projector diagonals.
    ParityObservable {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=10))]
        qubits: u32,
    },
    /// Split all basis labels of a register by popcount parity.
    ParityPartition {
        #[arg(long)]
        qubits: usize,
    },
    /// All Boolean functions of n bits with parity and sign signature.
    FunctionTable {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Order::Parity)]
        order: Order,
    },
    /// Exact ranks of the two parity classes and the single-query verdict.
    SpanAnalysis {
        #[arg(long)]
        n: usize,
        /// Uniform all-(+1) ancilla bits appended to every sign vector.
        #[arg(long, default_value_t = 0)]
        ancillas: usize,
    },
    /// The standard oracle |x>|y> -> |x>|y xor f(x)> of a truth table.
    Oracle {
        /// Truth table, f(0...0) first, e.g. 0110.
        truth_table: String,
    },
    /// Deutsch procedure on a one-bit function, with the state after each stage.
    Deutsch {
        /// Two characters: f(0) then f(1).
        truth_table: String,
    },
    /// Factorizability test a00*a11 - a01*a10 for a two-qubit state.
    Factorizable {
        /// Four comma-separated amplitudes in basis order 00,01,10,11; each
        /// real or of the form a+bi.
        #[arg(allow_hyphen_values = true)]
        amplitudes: String,
        /// Rescale the amplitudes to unit norm before testing.
        #[arg(long)]
        auto_normalize: bool,
    },
    /// Check whether classes of basis labels form an equi-partition.
    IsEquipartition {
        /// Classes separated by '|', labels by ',', e.g. "00,11|01,10".
        classes: String,
    },
}
