//! Acceptance criteria, one line per criterion.
//!
//! Run with `cargo test -p partiq-cli --test acceptance -- --nocapture` to
//! see the report.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeSet;
use std::f64::consts::FRAC_1_SQRT_2;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use partiq_cli::OutputDocument;
use partiq_core::boolean::{
    deutsch_run, enumerate_functions, functional_parity, oracle_matrix, parity_classes,
    span_analysis,
};
use partiq_core::partition::{
    factorizability_determinant, is_equi_partition, is_factorizable, observable_from_partition,
    parity_partition,
};
use partiq_core::quantum::{apply, basis_state, tensor, BitString, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const AMPLITUDE_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

fn partiq(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_partiq"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    Ok(out.stdout)
}

fn partiq_json(args: &[&str]) -> Result<OutputDocument, String> {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_slice(&partiq(&a)?).map_err(|e| e.to_string())
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    ensure!(elapsed < limit, "took {elapsed:?}, limit {limit:?}");
    Ok(elapsed)
}

fn class_sets(doc: &OutputDocument) -> Result<BTreeSet<BTreeSet<String>>, String> {
    doc.result["classes"]
        .as_array()
        .ok_or("missing classes")?
        .iter()
        .map(|c| {
            serde_json::from_value::<BTreeSet<String>>(c["labels"].clone())
                .map_err(|e| e.to_string())
        })
        .collect()
}

fn sets(classes: &[&[&str]]) -> BTreeSet<BTreeSet<String>> {
    classes
        .iter()
        .map(|c| c.iter().map(|s| s.to_string()).collect())
        .collect()
}

fn ac1_state_partitions() -> Outcome {
    let start = Instant::now();
    let two = class_sets(&partiq_json(&["parity-partition", "--qubits", "2"])?)?;
    ensure!(
        two == sets(&[&["00", "11"], &["01", "10"]]),
        "m=2 classes {two:?}"
    );
    let three = class_sets(&partiq_json(&["parity-partition", "--qubits", "3"])?)?;
    ensure!(
        three == sets(&[&["000", "011", "101", "110"], &["001", "010", "100", "111"]]),
        "m=3 classes {three:?}"
    );
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("m=2 and m=3 classes exact ({t:?})"))
}

type Row = (u8, Vec<i8>);

/// The one-bit table as printed: (P(f_i), f_i(0), f_i(1)).
fn one_bit_table() -> Vec<Row> {
    vec![
        (0, vec![-1, -1]),
        (0, vec![1, 1]),
        (1, vec![-1, 1]),
        (1, vec![1, -1]),
    ]
}

/// The two-bit table as printed: (P(f_i), f_i(00), f_i(01), f_i(10), f_i(11)).
fn two_bit_table() -> Vec<Row> {
    let rows: [(u8, [i8; 4]); 16] = [
        (0, [-1, -1, -1, -1]),
        (0, [-1, -1, 1, 1]),
        (0, [-1, 1, -1, 1]),
        (0, [-1, 1, 1, -1]),
        (0, [1, -1, -1, 1]),
        (0, [1, -1, 1, -1]),
        (0, [1, 1, -1, -1]),
        (0, [1, 1, 1, 1]),
        (1, [-1, -1, -1, 1]),
        (1, [-1, -1, 1, -1]),
        (1, [-1, 1, -1, -1]),
        (1, [-1, 1, 1, 1]),
        (1, [1, -1, -1, -1]),
        (1, [1, -1, 1, 1]),
        (1, [1, 1, -1, 1]),
        (1, [1, 1, 1, -1]),
    ];
    rows.iter().map(|(p, s)| (*p, s.to_vec())).collect()
}

fn table_rows(doc: &OutputDocument) -> Result<Vec<Row>, String> {
    doc.result["rows"]
        .as_array()
        .ok_or("missing rows")?
        .iter()
        .map(|r| {
            let parity = r["parity"].as_u64().ok_or("parity")? as u8;
            let signs: Vec<i8> =
                serde_json::from_value(r["signs"].clone()).map_err(|e| e.to_string())?;
            Ok((parity, signs))
        })
        .collect()
}

fn sorted(mut rows: Vec<Row>) -> Vec<Row> {
    rows.sort();
    rows
}

fn ac2_function_tables() -> Outcome {
    let start = Instant::now();
    let one = table_rows(&partiq_json(&["function-table", "--n", "1"])?)?;
    ensure!(one.len() == 4, "n=1 has {} rows", one.len());
    ensure!(
        sorted(one) == sorted(one_bit_table()),
        "n=1 multiset differs"
    );
    let two = table_rows(&partiq_json(&["function-table", "--n", "2"])?)?;
    ensure!(two.len() == 16, "n=2 has {} rows", two.len());
    ensure!(
        sorted(two.clone()) == sorted(two_bit_table()),
        "n=2 multiset differs"
    );
    ensure!(
        two.iter().map(|r| r.0).collect::<Vec<_>>() == [vec![0; 8], vec![1; 8]].concat(),
        "n=2 rows not parity-major"
    );
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("4-row and 16-row multisets bit-exact ({t:?})"))
}

#[allow(clippy::needless_range_loop)]
fn rational_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= m[col][col].clone();
        for r in col + 1..n {
            let factor = &m[r][col] / &m[col][col];
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

fn gram_det(vectors: &[&Vec<i8>]) -> BigRational {
    let gram = vectors
        .iter()
        .map(|a| {
            vectors
                .iter()
                .map(|b| {
                    let d: i64 = a.iter().zip(b.iter()).map(|(&x, &y)| (x * y) as i64).sum();
                    BigRational::from_integer(BigInt::from(d))
                })
                .collect()
        })
        .collect();
    rational_det(gram)
}

/// Rank by the Gram route, independent of the library's echelon elimination.
///
/// Full rank is certified by `det(AᵀA) != 0`, the Gram determinant of the
/// columns of the matrix whose rows are the vectors. Otherwise the rank is the
/// size of a maximal family with nonsingular Gram matrix, built greedily.
fn gram_rank(vectors: &[Vec<i8>]) -> usize {
    let dim = vectors.first().map_or(0, Vec::len);
    let columns: Vec<Vec<i8>> = (0..dim)
        .map(|c| vectors.iter().map(|v| v[c]).collect())
        .collect();
    if dim > 0 && !gram_det(&columns.iter().collect::<Vec<_>>()).is_zero() {
        return dim;
    }
    let mut chosen: Vec<&Vec<i8>> = Vec::new();
    for v in vectors {
        chosen.push(v);
        if gram_det(&chosen).is_zero() {
            chosen.pop();
        }
    }
    chosen.len()
}

fn ac3_span_verdicts() -> Outcome {
    let start = Instant::now();
    let r1 = span_analysis(1).map_err(|e| e.to_string())?;
    ensure!(r1.ranks == [1, 1] && r1.orthogonal, "n=1: {r1:?}");
    let r2 = span_analysis(2).map_err(|e| e.to_string())?;
    ensure!(r2.ranks == [4, 4] && !r2.orthogonal, "n=2: {r2:?}");
    for n in 1..=4usize {
        let report = span_analysis(n).map_err(|e| e.to_string())?;
        let universe = enumerate_functions(n).map_err(|e| e.to_string())?;
        let mut oracle_ranks = [0usize; 2];
        for parity in 0..=1u8 {
            let class: Vec<Vec<i8>> = universe
                .iter()
                .filter(|f| f.truth_table().iter().fold(0, |a, &b| a ^ b) == parity)
                .map(|f| f.truth_table().iter().map(|&b| 2 * b as i8 - 1).collect())
                .collect();
            oracle_ranks[parity as usize] = gram_rank(&class);
        }
        ensure!(
            report.ranks == oracle_ranks,
            "n={n}: ranks {:?} vs Gram oracle {oracle_ranks:?}",
            report.ranks
        );
        if n >= 2 {
            ensure!(
                report.ranks == [1 << n, 1 << n],
                "n={n}: ranks {:?}",
                report.ranks
            );
            ensure!(!report.orthogonal, "n={n} reported orthogonal");
        }
    }
    let cli1 = partiq_json(&["span-analysis", "--n", "1"])?;
    let cli2 = partiq_json(&["span-analysis", "--n", "2"])?;
    ensure!(cli1.result["verdict"] == "SEPARABLE", "cli n=1 verdict");
    ensure!(cli2.result["verdict"] == "NOT-SEPARABLE", "cli n=2 verdict");
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!(
        "n=1 separable, n=2..4 full rank and not separable, Gram oracle agrees ({t:?})"
    ))
}

fn ac4_projector_algebra() -> Outcome {
    for m in 1..=8 {
        let p = parity_partition(m).map_err(|e| e.to_string())?;
        let obs = observable_from_partition(&p, &[0.0, 1.0]).map_err(|e| e.to_string())?;
        let d = obs.diagnostics().map_err(|e| e.to_string())?;
        ensure!(d.within(AMPLITUDE_TOL), "m={m}: {d:?}");
    }
    Ok("m=1..8 idempotent, orthogonal, complete within 1e-9".into())
}

fn ac5_oracles() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in 1..=3 {
        for f in &enumerate_functions(n).map_err(|e| e.to_string())? {
            let u = oracle_matrix(f).map_err(|e| e.to_string())?;
            ensure!(u.is_permutation(), "f={f} not a permutation");
            ensure!(
                u.matmul(&u).map_err(|e| e.to_string())?.is_exact_identity(),
                "f={f}: U^2 != I"
            );
            for x in 0..1usize << n {
                for y in 0..2usize {
                    let input = BitString::from_index(((x << 1) | y) as u64, n + 1).unwrap();
                    let out =
                        apply(&u, &basis_state(&input).unwrap()).map_err(|e| e.to_string())?;
                    let expected = (x << 1) | (y ^ f.truth_table()[x] as usize);
                    let hit = out
                        .amplitudes()
                        .iter()
                        .enumerate()
                        .all(|(i, &a)| a == Complex64::new((i == expected) as u8 as f64, 0.0));
                    ensure!(hit, "f={f} x={x} y={y}");
                }
            }
            count += 1;
        }
    }
    let expected: usize = (1..=3).map(|n| 1usize << (1 << n)).sum();
    ensure!(count == expected, "checked {count} of {expected} functions");
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!(
        "{count} oracles are exact involutive permutations ({t:?})"
    ))
}

fn ac6_parity_equivalence() -> Outcome {
    let start = Instant::now();
    let mut count = 0usize;
    for n in 1..=4usize {
        for f in &enumerate_functions(n).map_err(|e| e.to_string())? {
            let xor = f.truth_table().iter().fold(0, |a, &b| a ^ b);
            ensure!(functional_parity(f) == xor, "f={f}");
            count += 1;
        }
        let p = parity_classes(n).map_err(|e| e.to_string())?;
        let half = 1usize << ((1 << n) - 1);
        ensure!(
            p.class_sizes() == vec![half, half],
            "n={n}: sizes {:?}",
            p.class_sizes()
        );
        ensure!(
            is_equi_partition(&p).map_err(|e| e.to_string())?,
            "n={n} not equi"
        );
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!(
        "{count} functions, parity = XOR, classes of 2^(2^n-1) ({t:?})"
    ))
}

fn ac7_deutsch() -> Outcome {
    for f in &enumerate_functions(1).map_err(|e| e.to_string())? {
        let run = deutsch_run(f).map_err(|e| e.to_string())?;
        ensure!(
            run.outcome == functional_parity(f),
            "f={f}: {} vs parity",
            run.outcome
        );
        ensure!(
            (run.probability - 1.0).abs() <= AMPLITUDE_TOL,
            "f={f}: p={}",
            run.probability
        );
    }
    Ok("4 one-bit functions, outcome = parity with probability 1".into())
}

fn random_qubit(rng: &mut ChaCha8Rng) -> StateVector {
    loop {
        let a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let b = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if a.norm_sqr() + b.norm_sqr() > 1e-6 {
            return StateVector::unnormalized(vec![a, b])
                .unwrap()
                .normalize()
                .unwrap();
        }
    }
}

fn ac8_factorizability() -> Outcome {
    let singlet = StateVector::from_real(&[0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0]).unwrap();
    ensure!(
        !is_factorizable(&singlet, AMPLITUDE_TOL).unwrap(),
        "singlet factorizable"
    );
    let det = factorizability_determinant(&singlet).unwrap().norm();
    ensure!((det - 0.5).abs() <= 1e-9, "singlet |det| = {det}");
    let cli = partiq_json(&["factorizable", "0,0.7071067812,-0.7071067812,0"])?;
    ensure!(
        cli.result["factorizable"] == Value::Bool(false),
        "cli singlet verdict"
    );
    let cli_det = cli.result["determinant_abs"].as_f64().unwrap_or(f64::NAN);
    ensure!(
        (cli_det - 0.5).abs() <= 1e-9,
        "cli singlet |det| = {cli_det}"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..1000 {
        let s = tensor(&random_qubit(&mut rng), &random_qubit(&mut rng)).unwrap();
        ensure!(
            is_factorizable(&s, AMPLITUDE_TOL).unwrap(),
            "product state {k} rejected"
        );
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut tested = 0;
    while tested < 1000 {
        let raw = random_qubit(&mut rng);
        let (a, b) = (raw.amplitude(0), raw.amplitude(1));
        if a.norm() <= 1e-3 || b.norm() <= 1e-3 {
            continue;
        }
        let s = StateVector::new(vec![zero, a, b, zero]).unwrap();
        ensure!(
            !is_factorizable(&s, AMPLITUDE_TOL).unwrap(),
            "odd-parity state {a} {b} accepted"
        );
        tested += 1;
    }
    Ok(
        "singlet |det| = 0.5; 1000 product states factorizable; 1000 odd-parity states entangled"
            .into(),
    )
}

fn ac9_determinism() -> Outcome {
    let invocations: [&[&str]; 10] = [
        &["parity-observable", "--qubits", "3"],
        &["parity-partition", "--qubits", "3"],
        &["function-table", "--n", "2"],
        &["span-analysis", "--n", "2"],
        &["span-analysis", "--n", "2", "--ancillas", "1"],
        &["oracle", "0110"],
        &["deutsch", "01"],
        &["factorizable", "0,0.7071067812,-0.7071067812,0"],
        &["factorizable", "0.3+0.4i,0.5,-0.5i,0.5", "--auto-normalize"],
        &["is-equipartition", "00,11|01,10"],
    ];
    let mut runs = 0;
    for args in invocations {
        for format in ["text", "csv", "json"] {
            let mut a = args.to_vec();
            a.extend(["--format", format]);
            let first = partiq(&a)?;
            let second = partiq(&a)?;
            ensure!(first == second, "{a:?} differs between runs");
            ensure!(!first.is_empty(), "{a:?} produced no output");
            runs += 1;
        }
    }
    Ok(format!(
        "{runs} subcommand/format pairs byte-identical across runs"
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("AC1 state equi-partitions (m=2, m=3)", ac1_state_partitions),
        ("AC2 function tables (n=1, n=2)", ac2_function_tables),
        ("AC3 span verdicts (n=1..4)", ac3_span_verdicts),
        ("AC4 projector algebra (m=1..8)", ac4_projector_algebra),
        ("AC5 oracle suite (n<=3)", ac5_oracles),
        ("AC6 parity equivalence (n<=4)", ac6_parity_equivalence),
        ("AC7 Deutsch suite", ac7_deutsch),
        ("AC8 factorizability suite", ac8_factorizability),
        ("AC9 CLI determinism", ac9_determinism),
    ];
    let mut failures = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                println!("[FAIL] {name}: {why}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
