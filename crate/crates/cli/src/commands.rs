use std::fmt::Write as _;

use num_complex::Complex64;
use partiq_core::boolean::{
    ancilla_extended_span_analysis, deutsch_run, enumerate_functions, functional_parity,
    oracle_permutation, sort_parity_major, span_analysis, BooleanFunction, SpanReport,
};
use partiq_core::partition::{
    factorizability_determinant, is_equi_partition, observable_from_partition, parity_partition,
    EquiPartition,
};
use partiq_core::quantum::{BitString, StateVector};
use serde_json::{json, Value};

use crate::args::{Cli, Command, Order};
use crate::error::CliError;
use crate::output::{fmt_complex, fmt_num, fmt_sign, json_num, OutputDocument, Report};

/// Normalization slack accepted for amplitudes typed on the command line.
const INPUT_NORM_TOLERANCE: f64 = 1e-6;

/// Largest oracle whose full matrix is included in JSON output.
const MAX_PRINTED_ORACLE_DIM: usize = 16;

pub fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::ParityObservable { qubits } => parity_observable(*qubits as usize, cli.tol),
        Command::ParityPartition { qubits } => parity_partition_cmd(*qubits),
        Command::FunctionTable { n, order } => function_table(*n, *order),
        Command::SpanAnalysis { n, ancillas } => span(*n, *ancillas),
        Command::Oracle { truth_table } => oracle(truth_table),
        Command::Deutsch { truth_table } => deutsch(truth_table, cli.tol),
        Command::Factorizable {
            amplitudes,
            auto_normalize,
        } => factorizable(amplitudes, *auto_normalize, cli.tol),
        Command::IsEquipartition { classes } => is_equipartition(classes),
    }
}

fn document(command: &str, params: Value, result: Value) -> OutputDocument {
    OutputDocument {
        command: command.to_owned(),
        params,
        result,
    }
}

fn class_name(outcome: u32) -> &'static str {
    if outcome == 0 {
        "even popcount"
    } else {
        "odd popcount"
    }
}

pub fn parity_observable(m: usize, tol: f64) -> Result<Report, CliError> {
    let partition = parity_partition(m)?;
    let observable = observable_from_partition(&partition, &[0.0, 1.0])?;
    let diagnostics = observable.diagnostics()?;
    let dim = 1usize << m;

    let mut classes = Vec::new();
    let mut text = format!("parity observable on {m} qubit(s): P = 0*P_even + 1*P_odd\n");
    let mut diagonals = Vec::new();
    for (k, (class, term)) in partition.classes.iter().zip(observable.terms()).enumerate() {
        let labels: Vec<String> = partition
            .class_labels(k)
            .expect("basis partition")
            .iter()
            .map(ToString::to_string)
            .collect();
        let diagonal: Vec<f64> = term.projector.diagonal().iter().map(|a| a.re).collect();
        let support: Vec<usize> = (0..dim).filter(|&i| diagonal[i] != 0.0).collect();
        let diag_text: Vec<String> = diagonal.iter().map(|&d| fmt_num(d)).collect();
        writeln!(
            text,
            "outcome {} ({}): {{{}}}\n  diagonal of P_{}: ({})",
            class.outcome,
            class_name(class.outcome),
            labels.join(", "),
            class.outcome,
            diag_text.join(",")
        )
        .unwrap();
        classes.push(json!({
            "outcome": class.outcome,
            "eigenvalue": json_num(term.eigenvalue),
            "labels": labels,
            "diagonal": diagonal.iter().map(|&d| json_num(d)).collect::<Vec<_>>(),
            "support": support,
        }));
        diagonals.push(diagonal);
    }
    let ok = diagnostics.within(tol);
    writeln!(
        text,
        "idempotence {} | orthogonality {} | completeness {} | {}",
        fmt_num(diagnostics.idempotence),
        fmt_num(diagnostics.orthogonality),
        fmt_num(diagnostics.completeness),
        if ok {
            "valid spectral decomposition"
        } else {
            "INVALID"
        }
    )
    .unwrap();

    let rows = (0..dim)
        .map(|i| {
            let label = BitString::from_index(i as u64, m).expect("index fits width");
            vec![
                i.to_string(),
                label.to_string(),
                label.parity().to_string(),
                fmt_num(diagonals[0][i]),
                fmt_num(diagonals[1][i]),
            ]
        })
        .collect();

    Ok(Report {
        document: document(
            "parity-observable",
            json!({ "qubits": m, "tol": json_num(tol) }),
            json!({
                "dimension": dim,
                "classes": classes,
                "diagnostics": {
                    "idempotence": json_num(diagnostics.idempotence),
                    "hermiticity": json_num(diagnostics.hermiticity),
                    "orthogonality": json_num(diagnostics.orthogonality),
                    "completeness": json_num(diagnostics.completeness),
                    "valid": ok,
                },
            }),
        ),
        text,
        header: ["index", "label", "outcome", "P_0", "P_1"]
            .map(String::from)
            .to_vec(),
        rows,
    })
}

pub fn parity_partition_cmd(m: usize) -> Result<Report, CliError> {
    let partition = parity_partition(m)?;
    partition_report("parity-partition", json!({ "qubits": m }), &partition, None)
}

fn partition_report(
    command: &str,
    params: Value,
    partition: &EquiPartition,
    equi: Option<bool>,
) -> Result<Report, CliError> {
    let mut text = String::new();
    let mut classes = Vec::new();
    let mut rows = Vec::new();
    let mut rendered = Vec::new();
    for (k, class) in partition.classes.iter().enumerate() {
        let labels: Vec<String> = partition
            .class_labels(k)
            .ok_or_else(|| CliError::Usage("expected basis labels".into()))?
            .iter()
            .map(ToString::to_string)
            .collect();
        writeln!(
            text,
            "class {} ({} member(s)): {{{}}}",
            class.outcome,
            labels.len(),
            labels.join(", ")
        )
        .unwrap();
        for (label, index) in labels.iter().zip(&class.members) {
            rows.push(vec![
                class.outcome.to_string(),
                label.clone(),
                index.to_string(),
            ]);
        }
        rendered.push(format!("{{{}}}", labels.join(",")));
        classes.push(json!({
            "outcome": class.outcome,
            "labels": labels,
            "indices": class.members,
        }));
    }
    text.insert_str(0, &format!("{{{}}}\n", rendered.join(",")));
    let mut result = json!({ "classes": classes });
    if let Some(equi) = equi {
        writeln!(
            text,
            "{}",
            if equi {
                "equi-partition: yes"
            } else {
                "equi-partition: no"
            }
        )
        .unwrap();
        result["equi_partition"] = json!(equi);
        result["class_sizes"] = json!(partition.class_sizes());
    }
    Ok(Report {
        document: document(command, params, result),
        text,
        header: ["outcome", "label", "index"].map(String::from).to_vec(),
        rows,
    })
}

fn input_labels(n: usize) -> Vec<String> {
    (0..1u64 << n)
        .map(|x| BitString::from_index(x, n).expect("fits").to_string())
        .collect()
}

pub fn function_table(n: usize, order: Order) -> Result<Report, CliError> {
    let universe = enumerate_functions(n)?;
    let mut functions = universe.functions().to_vec();
    if order == Order::Parity {
        sort_parity_major(&mut functions);
    }
    let inputs = input_labels(n);

    let mut header = vec!["index".to_string(), "parity".to_string()];
    header.extend(inputs.iter().map(|x| format!("f({x})")));

    let mut text = String::new();
    writeln!(text, "{}", header.join("\t")).unwrap();
    let mut rows = Vec::with_capacity(functions.len());
    let mut json_rows = Vec::with_capacity(functions.len());
    for f in &functions {
        let index = f.canonical_index().expect("enumerable arity");
        let parity = functional_parity(f);
        let signs: Vec<i8> = f.sign_signature().entries().to_vec();
        let mut row = vec![index.to_string(), parity.to_string()];
        row.extend(signs.iter().map(|&s| fmt_sign(s)));
        writeln!(text, "{}", row.join("\t")).unwrap();
        json_rows.push(json!({
            "index": index,
            "parity": parity,
            "truth_table": f.to_string(),
            "signs": signs,
        }));
        rows.push(row);
    }

    let order_name = match order {
        Order::Parity => "parity",
        Order::Canonical => "canonical",
    };
    Ok(Report {
        document: document(
            "function-table",
            json!({ "n": n, "order": order_name }),
            json!({ "count": functions.len(), "inputs": inputs, "rows": json_rows }),
        ),
        text,
        header,
        rows,
    })
}

fn verdict(report: &SpanReport) -> &'static str {
    if report.orthogonal {
        "SEPARABLE"
    } else {
        "NOT-SEPARABLE"
    }
}

pub fn span(n: usize, ancillas: usize) -> Result<Report, CliError> {
    let report = if ancillas == 0 {
        span_analysis(n)?
    } else {
        ancilla_extended_span_analysis(n, ancillas)?
    };

    let mut text = format!(
        "n = {n}, ancillas = {ancillas}, vector length {}\n\
         parity 0: {} functions, rank {}\n\
         parity 1: {} functions, rank {}\n\
         combined rank: {}\n\
         verdict: {}\n",
        report.dimension,
        report.class_sizes[0],
        report.ranks[0],
        report.class_sizes[1],
        report.ranks[1],
        report.combined_rank,
        verdict(&report),
    );
    let witness_cells = match &report.witness {
        Some(w) => {
            writeln!(
                text,
                "witness: f_{} {} . f_{} {} = {}",
                w.class0_function,
                w.class0_vector,
                w.class1_function,
                w.class1_vector,
                w.inner_product
            )
            .unwrap();
            vec![
                w.class0_function.to_string(),
                w.class0_vector.to_string(),
                w.class1_function.to_string(),
                w.class1_vector.to_string(),
                w.inner_product.to_string(),
            ]
        }
        None => vec![String::new(); 5],
    };
    let witness = report.witness.as_ref().map(|w| {
        json!({
            "class0_function": w.class0_function,
            "class0_vector": w.class0_vector.entries(),
            "class1_function": w.class1_function,
            "class1_vector": w.class1_vector.entries(),
            "inner_product": w.inner_product,
        })
    });

    let mut row = vec![
        n.to_string(),
        ancillas.to_string(),
        report.dimension.to_string(),
        report.class_sizes[0].to_string(),
        report.class_sizes[1].to_string(),
        report.ranks[0].to_string(),
        report.ranks[1].to_string(),
        report.combined_rank.to_string(),
        verdict(&report).to_string(),
    ];
    row.extend(witness_cells);

    Ok(Report {
        document: document(
            "span-analysis",
            json!({ "n": n, "ancillas": ancillas }),
            json!({
                "dimension": report.dimension,
                "class_sizes": report.class_sizes,
                "ranks": report.ranks,
                "combined_rank": report.combined_rank,
                "orthogonal": report.orthogonal,
                "verdict": verdict(&report),
                "witness": witness,
            }),
        ),
        text,
        header: [
            "n",
            "ancillas",
            "dimension",
            "class0_size",
            "class1_size",
            "rank0",
            "rank1",
            "combined_rank",
            "verdict",
            "witness0_index",
            "witness0_vector",
            "witness1_index",
            "witness1_vector",
            "inner_product",
        ]
        .map(String::from)
        .to_vec(),
        rows: vec![row],
    })
}

fn parse_function(s: &str) -> Result<BooleanFunction, CliError> {
    s.parse()
        .map_err(|e| CliError::Usage(format!("malformed truth table {s:?}: {e}")))
}

pub fn oracle(truth_table: &str) -> Result<Report, CliError> {
    let f = parse_function(truth_table)?;
    let n = f.arity();
    let perm = oracle_permutation(&f);
    let width = n + 1;
    let involution = perm.iter().enumerate().all(|(i, &j)| perm[j] == i);
    let fmt_ket = |i: usize| {
        let bits = BitString::from_index(i as u64, width)
            .expect("fits")
            .to_string();
        format!("|{},{}>", &bits[..n], &bits[n..])
    };

    let mut text = format!(
        "oracle U_f for f = {f} on {width} qubits (ancilla last): |x,y> -> |x, y xor f(x)>\n"
    );
    let mut rows = Vec::with_capacity(perm.len());
    for (i, &j) in perm.iter().enumerate() {
        writeln!(text, "{} -> {}", fmt_ket(i), fmt_ket(j)).unwrap();
        rows.push(vec![i.to_string(), fmt_ket(i), j.to_string(), fmt_ket(j)]);
    }
    writeln!(text, "U_f^2 = I: {}", if involution { "yes" } else { "no" }).unwrap();

    let mut result = json!({
        "arity": n,
        "dimension": perm.len(),
        "permutation": perm,
        "involution": involution,
    });
    if perm.len() <= MAX_PRINTED_ORACLE_DIM {
        let matrix: Vec<Vec<u8>> = (0..perm.len())
            .map(|r| (0..perm.len()).map(|c| (perm[c] == r) as u8).collect())
            .collect();
        result["matrix"] = json!(matrix);
    }
    Ok(Report {
        document: document("oracle", json!({ "truth_table": f.to_string() }), result),
        text,
        header: ["input_index", "input", "output_index", "output"]
            .map(String::from)
            .to_vec(),
        rows,
    })
}

pub fn deutsch(truth_table: &str, tol: f64) -> Result<Report, CliError> {
    if truth_table.trim().chars().count() != 2 {
        return Err(CliError::Usage(format!(
            "deutsch expects a two-character truth table f(0)f(1), got {truth_table:?}"
        )));
    }
    let f = parse_function(truth_table)?;
    let run = deutsch_run(&f)?;
    let parity = functional_parity(&f);
    let deterministic = (run.probability - 1.0).abs() <= tol;

    let mut text = format!("Deutsch procedure for f = {f} (one oracle query)\n");
    let mut rows = Vec::new();
    let mut stages = Vec::new();
    for (step, stage) in run.stages.iter().enumerate() {
        let amps: Vec<String> = stage
            .state
            .amplitudes()
            .iter()
            .map(|&a| fmt_complex(a))
            .collect();
        writeln!(text, "{}. {}: ({})", step + 1, stage.label, amps.join(", ")).unwrap();
        let mut row = vec![(step + 1).to_string(), stage.label.to_string()];
        row.extend(amps.iter().cloned());
        row.extend([String::new(), String::new()]);
        rows.push(row);
        stages.push(json!({ "stage": stage.label, "amplitudes": amps }));
    }
    writeln!(
        text,
        "measured input qubit: {} with probability {}\nfunctional parity: {}",
        run.outcome,
        fmt_num(run.probability),
        parity
    )
    .unwrap();
    let mut last = vec![
        (run.stages.len() + 1).to_string(),
        "measure input".to_string(),
    ];
    last.extend(vec![String::new(); 4]);
    last.extend([run.outcome.to_string(), fmt_num(run.probability)]);
    rows.push(last);

    Ok(Report {
        document: document(
            "deutsch",
            json!({ "truth_table": f.to_string(), "tol": json_num(tol) }),
            json!({
                "stages": stages,
                "outcome": run.outcome,
                "probability": json_num(run.probability),
                "deterministic": deterministic,
                "functional_parity": parity,
                "parity": run.outcome,
            }),
        ),
        text,
        header: [
            "step",
            "stage",
            "amp_00",
            "amp_01",
            "amp_10",
            "amp_11",
            "outcome",
            "probability",
        ]
        .map(String::from)
        .to_vec(),
        rows,
    })
}

/// Parses one amplitude token: `0.5`, `-1e-3`, `0.5i`, `-i`, `1+2i`, `1-2.5i`.
pub fn parse_amplitude(token: &str) -> Result<Complex64, CliError> {
    let t: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Usage(format!("malformed amplitude {token:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad());
    };
    // split at the last sign that is neither leading nor part of an exponent
    let split = body
        .char_indices()
        .filter(|&(k, c)| {
            (c == '+' || c == '-') && k > 0 && !matches!(body.as_bytes()[k - 1], b'e' | b'E')
        })
        .map(|(k, _)| k)
        .next_back();
    let imag = |s: &str| -> Result<f64, CliError> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            s => s.parse().map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => {
            let re: f64 = body[..k].parse().map_err(|_| bad())?;
            Ok(Complex64::new(re, imag(&body[k..])?))
        }
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

pub fn factorizable(list: &str, auto_normalize: bool, tol: f64) -> Result<Report, CliError> {
    let amps = list
        .split(',')
        .map(parse_amplitude)
        .collect::<Result<Vec<_>, _>>()?;
    if amps.len() != 4 {
        return Err(CliError::Usage(format!(
            "expected exactly 4 amplitudes, got {}",
            amps.len()
        )));
    }
    let raw = StateVector::unnormalized(amps)?;
    let state = if auto_normalize {
        raw.normalize()?
    } else if !raw.is_normalized(INPUT_NORM_TOLERANCE) {
        return Err(partiq_core::Error::UnnormalizedState {
            norm_sqr: raw.norm_sqr(),
        }
        .into());
    } else {
        raw
    };
    let det = factorizability_determinant(&state)?;
    let factorizable = det.norm() <= tol;
    let verdict = if factorizable {
        "FACTORIZABLE"
    } else {
        "NOT-FACTORIZABLE"
    };
    let amps: Vec<String> = state.amplitudes().iter().map(|&a| fmt_complex(a)).collect();
    let text = format!(
        "amplitudes (00,01,10,11): ({})\n\
         a00*a11 - a01*a10 = {}\n\
         |determinant| = {} (tol {})\n\
         verdict: {verdict}\n",
        amps.join(", "),
        fmt_complex(det),
        fmt_num(det.norm()),
        fmt_num(tol),
    );
    let row = vec![
        amps[0].clone(),
        amps[1].clone(),
        amps[2].clone(),
        amps[3].clone(),
        fmt_complex(det),
        fmt_num(det.norm()),
        verdict.to_string(),
    ];
    Ok(Report {
        document: document(
            "factorizable",
            json!({
                "amplitudes": list,
                "auto_normalize": auto_normalize,
                "tol": json_num(tol),
            }),
            json!({
                "amplitudes": amps,
                "determinant": { "re": json_num(det.re), "im": json_num(det.im) },
                "determinant_abs": json_num(det.norm()),
                "factorizable": factorizable,
                "verdict": verdict,
            }),
        ),
        text,
        header: [
            "a00",
            "a01",
            "a10",
            "a11",
            "determinant",
            "determinant_abs",
            "verdict",
        ]
        .map(String::from)
        .to_vec(),
        rows: vec![row],
    })
}

/// Parses `"00,11|01,10"` into classes of labels.
pub fn parse_classes(arg: &str) -> Result<Vec<Vec<BitString>>, CliError> {
    arg.split('|')
        .map(|class| {
            class
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<BitString>()
                        .map_err(|e| CliError::Usage(format!("bad label {s:?}: {e}")))
                })
                .collect()
        })
        .collect()
}

pub fn is_equipartition(arg: &str) -> Result<Report, CliError> {
    let classes = parse_classes(arg)?;
    let partition = EquiPartition::from_bitstrings(&classes)?;
    let equi = is_equi_partition(&partition)?;
    partition_report(
        "is-equipartition",
        json!({ "classes": arg }),
        &partition,
        Some(equi),
    )
}
