//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on domain errors (violated preconditions
//! such as missing strong connectivity or an exceeded search budget), 2 on
//! usage and parse errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::automaton::{format_word, Automaton, DEFAULT_SUBSET_BUDGET};
use crate::certify::{
    certify_totally_synchronizing, check_rt_bound, friedman_partition, synchronizing_ratio,
    SyncCertificate, TotalSyncVerdict, DEFAULT_ENUMERATION_BUDGET,
};
use crate::constructions::{birkhoff_nonsync_coloring, eulerian_lift, gen_cerny, gen_complete_weighted, gen_u};
use crate::dgf;
use crate::digraph::Digraph;
use crate::experiments::{run_experiment, ExperimentConfig, ExperimentMode};
use crate::partition::partition_uniqueness;
use crate::spectral::{
    integer_eigenvector, parse_rational, weighted_integer_eigenvector, Distribution, WeightVector,
};

#[derive(Parser)]
#[command(
    name = "eigensync",
    version,
    about = "Synchronization analysis of k-out-regular digraphs and DFAs via exact integer eigenvectors"
)]
struct Cli {
    /// Emit a stable machine-readable JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress normal output (errors still go to stderr).
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FileArg {
    /// Input file in DGF format.
    file: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Integer dominant eigenvector of a digraph (or of an automaton under
    /// a letter distribution).
    Eigenvector {
        #[command(flatten)]
        input: FileArg,
        /// Letter probabilities as exact rationals, e.g. 1/3,2/3.
        #[arg(long)]
        dist: Option<String>,
    },
    /// Decide whether an automaton is synchronizing (pair criterion).
    SyncCheck {
        #[command(flatten)]
        input: FileArg,
    },
    /// Exact reset threshold and a shortest witness word (subset BFS).
    ResetThreshold {
        #[command(flatten)]
        input: FileArg,
        /// State-count budget for the subset search.
        #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
        max_n: usize,
    },
    /// Partition of the states into maximal-weight synchronizing subsets.
    Friedman {
        #[command(flatten)]
        input: FileArg,
        #[arg(long)]
        dist: Option<String>,
    },
    /// Equal-sum block partitions of a weight vector (or of the eigenvector
    /// of a digraph).
    Partitions {
        #[command(flatten)]
        input: FileArg,
    },
    /// Certify or refute that every coloring of a digraph synchronizes.
    Certify {
        #[command(flatten)]
        input: FileArg,
        /// Cap on the number of transition functions enumerated.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
    },
    /// Exact synchronizing ratio of a digraph.
    Ratio {
        #[command(flatten)]
        input: FileArg,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
    },
    /// Check the reset threshold against the eigenvector-sum bound.
    RtBound {
        #[command(flatten)]
        input: FileArg,
        #[arg(long)]
        dist: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
        max_n: usize,
    },
    /// Generate a named family in DGF format.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Eulerian lift of an automaton.
    Lift {
        #[command(flatten)]
        input: FileArg,
    },
    /// Permutation coloring of an Eulerian digraph (non-synchronizing).
    RecolorEulerian {
        #[command(flatten)]
        input: FileArg,
    },
    /// Seeded randomized study over primitive digraphs.
    Experiment {
        #[arg(long)]
        mode: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Record digraphs with ratio strictly below this rational
        /// (default: (k-1)/k).
        #[arg(long)]
        threshold: Option<String>,
    },
    /// Graphviz DOT rendering.
    ExportDot {
        #[command(flatten)]
        input: FileArg,
        /// Interpret the file as an automaton and label edges by letters.
        #[arg(long)]
        automaton: bool,
    },
}

#[derive(Subcommand)]
enum Family {
    /// The n-state family with reset threshold (n-1)^2.
    Cerny { n: usize },
    /// The family with geometric eigenvector (k^(n-1), ..., k, 1).
    U { n: usize, k: usize },
    /// Complete digraph with per-target multiplicities w (normalized to
    /// coprime entries), e.g. 1,1,2.
    CompleteWeighted { weights: String },
}

struct Failure {
    code: i32,
    message: String,
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: 1,
        message: e.to_string(),
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: 2,
        message: e.to_string(),
    }
}

struct Output {
    text: String,
    json: Value,
}

/// Runs the CLI against explicit arguments and sinks; returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err_out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // help/version exit 0; real usage errors exit 2
            if e.use_stderr() {
                let _ = write!(err_out, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match dispatch(&cli.command) {
        Ok(output) => {
            if !cli.quiet {
                if cli.json {
                    let _ = writeln!(out, "{}", output.json);
                } else {
                    let _ = writeln!(out, "{}", output.text.trim_end_matches('\n'));
                }
            }
            0
        }
        Err(failure) => {
            let _ = writeln!(err_out, "error: {}", failure.message);
            failure.code
        }
    }
}

/// Entry point for the binary: process arguments, process exit code.
pub fn run_from_env() -> i32 {
    run(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    )
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_digraph(input: &FileArg) -> Result<Digraph, Failure> {
    dgf::parse_digraph(&read_file(&input.file)?).map_err(usage)
}

fn load_automaton(input: &FileArg) -> Result<Automaton, Failure> {
    dgf::parse_automaton(&read_file(&input.file)?).map_err(usage)
}

fn parse_distribution(text: &str) -> Result<Distribution, Failure> {
    let probs = text
        .split(',')
        .map(|t| parse_rational(t).map_err(usage))
        .collect::<Result<Vec<_>, _>>()?;
    Distribution::new(probs).map_err(usage)
}

fn envelope(
    command: &str,
    input: Value,
    result: Value,
    certificate: Option<Value>,
    witness: Option<Value>,
    budget: Option<u64>,
) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("command".into(), Value::String(command.into()));
    map.insert("input".into(), input);
    map.insert("result".into(), result);
    if let Some(c) = certificate {
        map.insert("certificate".into(), c);
    }
    if let Some(w) = witness {
        map.insert("witness".into(), w);
    }
    if let Some(b) = budget {
        map.insert("budget".into(), json!(b));
    }
    Value::Object(map)
}

fn path_value(input: &FileArg) -> Value {
    Value::String(input.file.display().to_string())
}

fn vector_strings(w: &WeightVector) -> Vec<String> {
    w.entries().iter().map(|e| e.to_string()).collect()
}

fn dispatch(command: &Command) -> Result<Output, Failure> {
    match command {
        Command::Eigenvector { input, dist } => {
            let w = match dist {
                None => integer_eigenvector(&load_digraph(input)?).map_err(domain)?,
                Some(text) => {
                    let d = parse_distribution(text)?;
                    weighted_integer_eigenvector(&load_automaton(input)?, &d).map_err(domain)?
                }
            };
            Ok(Output {
                text: w.to_string(),
                json: envelope(
                    "eigenvector",
                    path_value(input),
                    json!({ "eigenvector": vector_strings(&w), "sum": w.sum().to_string() }),
                    None,
                    None,
                    None,
                ),
            })
        }
        Command::SyncCheck { input } => {
            let a = load_automaton(input)?;
            let sync = a.is_synchronizing();
            Ok(Output {
                text: if sync { "SYNCHRONIZING" } else { "NOT_SYNCHRONIZING" }.into(),
                json: envelope(
                    "sync-check",
                    path_value(input),
                    json!({ "synchronizing": sync }),
                    None,
                    None,
                    None,
                ),
            })
        }
        Command::ResetThreshold { input, max_n } => {
            let a = load_automaton(input)?;
            let found = a.shortest_reset_word(*max_n).map_err(domain)?;
            let (text, result) = match found {
                Some((length, word)) => {
                    let rendered = format_word(&word, a.k());
                    (
                        format!("{length} {rendered}"),
                        json!({ "synchronizing": true, "length": length, "word": rendered }),
                    )
                }
                None => (
                    "NOT_SYNCHRONIZING".to_string(),
                    json!({ "synchronizing": false }),
                ),
            };
            Ok(Output {
                text,
                json: envelope(
                    "reset-threshold",
                    path_value(input),
                    result,
                    None,
                    None,
                    Some(*max_n as u64),
                ),
            })
        }
        Command::Friedman { input, dist } => {
            let a = load_automaton(input)?;
            let d = match dist {
                Some(text) => parse_distribution(text)?,
                None => Distribution::uniform(a.k()),
            };
            let fp = friedman_partition(&a, &d).map_err(domain)?;
            let word = format_word(&fp.witness_word, a.k());
            Ok(Output {
                text: format!(
                    "blocks {}\nweight {}\nwitness {}",
                    fp.partition, fp.weight, word
                ),
                json: envelope(
                    "friedman",
                    path_value(input),
                    json!({
                        "blocks": fp.partition.blocks(),
                        "weight": fp.weight.to_string(),
                        "witness": word,
                        "eigenvector": vector_strings(&fp.eigenvector),
                    }),
                    None,
                    None,
                    None,
                ),
            })
        }
        Command::Partitions { input } => {
            let text = read_file(&input.file)?;
            // A digraph document computes its eigenvector; a single-line
            // document is taken as a literal weight vector.
            let (w, source) = match dgf::parse_digraph(&text) {
                Ok(g) => (integer_eigenvector(&g).map_err(domain)?, "digraph"),
                Err(digraph_err) => {
                    let entries = dgf::parse_weight_entries(&text)
                        .map_err(|_| usage(digraph_err))?;
                    (WeightVector::new(entries).map_err(usage)?, "vector")
                }
            };
            let report = partition_uniqueness(&w).map_err(domain)?;
            let mut out = format!("vector {w}\ntotal {}\n", report.total);
            for (b, parts) in &report.per_b {
                out.push_str(&format!(
                    "b={b}: {} partition{}\n",
                    parts.len(),
                    if parts.len() == 1 { "" } else { "s" }
                ));
                for p in parts {
                    out.push_str(&format!("  {p}\n"));
                }
            }
            out.push_str(&format!("global count {}", report.global_count));
            let per_b: serde_json::Map<String, Value> = report
                .per_b
                .iter()
                .map(|(b, parts)| {
                    (
                        b.to_string(),
                        json!(parts.iter().map(|p| p.blocks().to_vec()).collect::<Vec<_>>()),
                    )
                })
                .collect();
            Ok(Output {
                text: out,
                json: envelope(
                    "partitions",
                    path_value(input),
                    json!({
                        "source": source,
                        "vector": vector_strings(&w),
                        "total": report.total.to_string(),
                        "per_b": per_b,
                        "global_count": report.global_count,
                        "partitionable": report.global_count >= 1,
                    }),
                    None,
                    None,
                    None,
                ),
            })
        }
        Command::Certify { input, budget } => {
            let g = load_digraph(input)?;
            let verdict = certify_totally_synchronizing(&g, *budget).map_err(domain)?;
            let (text, result, certificate, witness) = match verdict {
                TotalSyncVerdict::TotallySynchronizing(cert) => match cert {
                    SyncCertificate::NonPartitionableEigenvector(w) => (
                        format!("TOTALLY_SYNCHRONIZING non-partitionable eigenvector ({w})"),
                        json!({ "status": "TOTALLY_SYNCHRONIZING", "certificate_kind": "non-partitionable-eigenvector" }),
                        Some(json!({ "eigenvector": vector_strings(&w) })),
                        None,
                    ),
                    SyncCertificate::ExhaustiveEnumeration { functions, labelings } => (
                        format!(
                            "TOTALLY_SYNCHRONIZING exhaustive enumeration ({labelings} labelings, {functions} functions)"
                        ),
                        json!({ "status": "TOTALLY_SYNCHRONIZING", "certificate_kind": "exhaustive-enumeration" }),
                        Some(json!({
                            "functions": functions,
                            "labelings": labelings.to_string(),
                        })),
                        None,
                    ),
                },
                TotalSyncVerdict::NotTotallySynchronizing { witness } => {
                    let dgf_text = dgf::serialize_automaton(&witness);
                    (
                        format!("NOT_TOTALLY_SYNCHRONIZING\n{dgf_text}"),
                        json!({ "status": "NOT_TOTALLY_SYNCHRONIZING" }),
                        None,
                        Some(Value::String(dgf_text)),
                    )
                }
                TotalSyncVerdict::Unknown { budget } => (
                    format!("UNKNOWN (budget {budget} exceeded)"),
                    json!({ "status": "UNKNOWN" }),
                    None,
                    None,
                ),
            };
            Ok(Output {
                text,
                json: envelope(
                    "certify",
                    path_value(input),
                    result,
                    certificate,
                    witness,
                    Some(*budget),
                ),
            })
        }
        Command::Ratio { input, budget } => {
            let g = load_digraph(input)?;
            let ratio = synchronizing_ratio(&g, *budget).map_err(domain)?;
            Ok(Output {
                text: format!(
                    "{} ({}/{})",
                    ratio.value, ratio.numerator, ratio.denominator
                ),
                json: envelope(
                    "ratio",
                    path_value(input),
                    json!({
                        "value": ratio.value.to_string(),
                        "numerator": ratio.numerator.to_string(),
                        "denominator": ratio.denominator.to_string(),
                    }),
                    None,
                    None,
                    Some(*budget),
                ),
            })
        }
        Command::RtBound { input, dist, max_n } => {
            let a = load_automaton(input)?;
            let d = match dist {
                Some(text) => parse_distribution(text)?,
                None => Distribution::uniform(a.k()),
            };
            let report = check_rt_bound(&a, &d, *max_n).map_err(domain)?;
            Ok(Output {
                text: format!(
                    "rt={} W={} bound={} {}",
                    report.rt,
                    report.weight_sum,
                    report.bound,
                    if report.holds { "HOLDS" } else { "VIOLATED" }
                ),
                json: envelope(
                    "rt-bound",
                    path_value(input),
                    json!({
                        "holds": report.holds,
                        "rt": report.rt,
                        "weight_sum": report.weight_sum.to_string(),
                        "bound": report.bound.to_string(),
                    }),
                    None,
                    None,
                    Some(*max_n as u64),
                ),
            })
        }
        Command::Generate { family } => {
            let (desc, text) = match family {
                Family::Cerny { n } => (
                    format!("cerny {n}"),
                    dgf::serialize_automaton(&gen_cerny(*n).map_err(usage)?),
                ),
                Family::U { n, k } => (
                    format!("u {n} {k}"),
                    dgf::serialize_digraph(&gen_u(*n, *k).map_err(usage)?),
                ),
                Family::CompleteWeighted { weights } => {
                    let entries: Vec<BigUint> = weights
                        .split(',')
                        .map(|t| {
                            t.trim().parse::<BigUint>().map_err(|_| {
                                usage(format!("invalid weight `{t}`: expected a positive integer"))
                            })
                        })
                        .collect::<Result<_, _>>()?;
                    let w = WeightVector::new(entries).map_err(usage)?;
                    (
                        format!("complete-weighted {w}"),
                        dgf::serialize_digraph(&gen_complete_weighted(&w).map_err(usage)?),
                    )
                }
            };
            Ok(Output {
                json: envelope(
                    "generate",
                    Value::String(desc),
                    json!({ "dgf": text }),
                    None,
                    None,
                    None,
                ),
                text,
            })
        }
        Command::Lift { input } => {
            let a = load_automaton(input)?;
            let lift = eulerian_lift(&a).map_err(domain)?;
            let dgf_text = dgf::serialize_automaton(&lift.automaton);
            let text = format!(
                "# lifted states {} base letters {} extra letters {}..{}\n# state map {}\n{}",
                lift.state_count(),
                a.k(),
                lift.lambda_letters.first().unwrap_or(&a.k()),
                lift.lambda_letters.last().unwrap_or(&a.k()),
                lift.state_map
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
                dgf_text
            );
            Ok(Output {
                text,
                json: envelope(
                    "lift",
                    path_value(input),
                    json!({
                        "dgf": dgf_text,
                        "states": lift.state_count(),
                        "base_letters": a.k(),
                        "lambda_letters": lift.lambda_letters,
                        "state_map": lift.state_map,
                    }),
                    None,
                    None,
                    None,
                ),
            })
        }
        Command::RecolorEulerian { input } => {
            let g = load_digraph(input)?;
            let a = birkhoff_nonsync_coloring(&g).map_err(domain)?;
            let dgf_text = dgf::serialize_automaton(&a);
            Ok(Output {
                text: dgf_text.clone(),
                json: envelope(
                    "recolor-eulerian",
                    path_value(input),
                    json!({ "dgf": dgf_text }),
                    None,
                    None,
                    None,
                ),
            })
        }
        Command::Experiment {
            mode,
            n,
            k,
            samples,
            seed,
            budget,
            workers,
            threshold,
        } => {
            let mode: ExperimentMode = mode.parse().map_err(usage)?;
            let threshold = threshold
                .as_ref()
                .map(|t| parse_rational(t))
                .transpose()
                .map_err(usage)?;
            let cfg = ExperimentConfig {
                n: *n,
                k: *k,
                samples: *samples,
                seed: *seed,
                mode,
                enumeration_budget: *budget,
                ratio_witness_threshold: threshold,
            };
            let report = run_experiment(&cfg, *workers).map_err(domain)?;
            let mut text = format!(
                "mode {} n {} k {} samples {} seed {}\n",
                mode.as_str(),
                n,
                k,
                samples,
                seed
            );
            for (key, count) in &report.counts {
                text.push_str(&format!("count {key} {count}\n"));
            }
            for (key, value) in &report.estimates {
                text.push_str(&format!("estimate {key} {value}\n"));
            }
            if let Some(min) = &report.min_ratio {
                text.push_str(&format!("min ratio {}\n", min.ratio));
            }
            text.push_str(&format!(
                "below-threshold witnesses {}",
                report.below_threshold.len()
            ));
            let report_value =
                serde_json::to_value(&report).expect("report serialization cannot fail");
            Ok(Output {
                text,
                json: envelope(
                    "experiment",
                    Value::Null,
                    report_value,
                    None,
                    None,
                    Some(*budget),
                ),
            })
        }
        Command::ExportDot { input, automaton } => {
            let dot = if *automaton {
                dgf::automaton_to_dot(&load_automaton(input)?)
            } else {
                dgf::digraph_to_dot(&load_digraph(input)?)
            };
            Ok(Output {
                text: dot.clone(),
                json: envelope(
                    "export-dot",
                    path_value(input),
                    json!({ "dot": dot }),
                    None,
                    None,
                    None,
                ),
            })
        }
    }
}
