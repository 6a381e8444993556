//! Randomized and exhaustive studies of synchronizing properties of random
//! primitive digraphs: partitionability fractions, totally synchronizing
//! fractions, and synchronizing-ratio distributions.
//!
//! Reports are byte-identical across runs with the same configuration and
//! seed, regardless of the worker count: every sample draws from its own
//! derived RNG stream and aggregation merges results in sample order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::certify::{certify_totally_synchronizing, synchronizing_ratio, TotalSyncVerdict};
use crate::dgf;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::partition::is_partitionable;
use crate::spectral::{integer_eigenvector, Rational};

/// Cap on rejection resampling while waiting for a primitive digraph.
const RESAMPLE_CAP: u64 = 1_000_000;

/// What a single experiment measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentMode {
    /// Fraction of sampled primitive digraphs with a partitionable eigenvector.
    PartitionableFraction,
    /// Fraction certified totally synchronizing.
    TotalSyncFraction,
    /// Exact synchronizing ratio per sample, with extremal witnesses.
    RatioDistribution,
    /// Like ratio-distribution, but reporting only the extremes.
    MinRatioSearch,
}

impl ExperimentMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentMode::PartitionableFraction => "partitionable-fraction",
            ExperimentMode::TotalSyncFraction => "total-sync-fraction",
            ExperimentMode::RatioDistribution => "ratio-distribution",
            ExperimentMode::MinRatioSearch => "min-ratio-search",
        }
    }
}

impl std::str::FromStr for ExperimentMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "partitionable-fraction" => Ok(ExperimentMode::PartitionableFraction),
            "total-sync-fraction" => Ok(ExperimentMode::TotalSyncFraction),
            "ratio-distribution" => Ok(ExperimentMode::RatioDistribution),
            "min-ratio-search" => Ok(ExperimentMode::MinRatioSearch),
            other => Err(Error::InvalidParameter(format!(
                "unknown experiment mode `{other}`"
            ))),
        }
    }
}

impl Serialize for ExperimentMode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

fn serialize_opt_rational<S: Serializer>(
    value: &Option<Rational>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    match value {
        Some(r) => serializer.serialize_some(&r.to_string()),
        None => serializer.serialize_none(),
    }
}

/// Configuration of one experiment run. The worker count is deliberately not
/// part of the configuration: it must not influence the report.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub k: usize,
    pub samples: u64,
    pub seed: u64,
    pub mode: ExperimentMode,
    /// Budget for coloring enumeration (total-sync and ratio modes).
    pub enumeration_budget: u64,
    /// Ratios strictly below this threshold are preserved with their full
    /// digraph. Defaults to `(k-1)/k` when absent.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub ratio_witness_threshold: Option<Rational>,
}

/// An observed ratio together with the digraph attaining it, in DGF text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioWitness {
    pub ratio: String,
    pub dgf: String,
}

/// Aggregated outcome of an experiment. Estimates are exact rationals
/// (`count/samples`), never floats.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub counts: BTreeMap<String, u64>,
    pub estimates: BTreeMap<String, String>,
    pub min_ratio: Option<RatioWitness>,
    pub below_threshold: Vec<RatioWitness>,
}

impl ExperimentReport {
    /// Stable machine rendering; byte-identical for identical runs.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Derives the per-sample RNG stream: sample `idx` of a run is independent
/// of every other sample, so workers can process any subset.
fn sample_rng(seed: u64, idx: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(idx.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

/// Draws `k` destinations per vertex independently and uniformly, rejecting
/// until the digraph is primitive. Deterministic given the RNG state.
pub fn sample_digraph(n: usize, k: usize, rng: &mut impl Rng) -> Result<Digraph> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter(
            "sampling needs n >= 1 and k >= 1".into(),
        ));
    }
    for _ in 0..RESAMPLE_CAP {
        let rows = (0..n)
            .map(|_| (0..k).map(|_| rng.random_range(0..n)).collect())
            .collect();
        let g = Digraph::from_rows(rows).expect("sampled rows are valid");
        if g.is_primitive() {
            return Ok(g);
        }
    }
    Err(Error::SamplingBudgetExceeded {
        attempts: RESAMPLE_CAP,
    })
}

enum SampleOutcome {
    Partitionable(bool),
    Verdict(&'static str),
    Ratio { ratio: Rational, digraph: Digraph },
}

fn run_sample(cfg: &ExperimentConfig, idx: u64) -> Result<SampleOutcome> {
    let mut rng = sample_rng(cfg.seed, idx);
    let g = sample_digraph(cfg.n, cfg.k, &mut rng)?;
    match cfg.mode {
        ExperimentMode::PartitionableFraction => {
            let w = integer_eigenvector(&g)?;
            Ok(SampleOutcome::Partitionable(is_partitionable(&w)?))
        }
        ExperimentMode::TotalSyncFraction => {
            let verdict = certify_totally_synchronizing(&g, cfg.enumeration_budget)?;
            Ok(SampleOutcome::Verdict(match verdict {
                TotalSyncVerdict::TotallySynchronizing(_) => "totally-synchronizing",
                TotalSyncVerdict::NotTotallySynchronizing { .. } => "not-totally-synchronizing",
                TotalSyncVerdict::Unknown { .. } => "unknown",
            }))
        }
        ExperimentMode::RatioDistribution | ExperimentMode::MinRatioSearch => {
            let ratio = synchronizing_ratio(&g, cfg.enumeration_budget)?;
            Ok(SampleOutcome::Ratio {
                ratio: ratio.value,
                digraph: g,
            })
        }
    }
}

/// Runs all samples of an experiment, split across `workers` threads, and
/// aggregates the outcomes in sample order.
pub fn run_experiment(cfg: &ExperimentConfig, workers: usize) -> Result<ExperimentReport> {
    if cfg.samples == 0 {
        return Err(Error::InvalidParameter("samples must be >= 1".into()));
    }
    if cfg.n == 0 || cfg.k == 0 {
        return Err(Error::InvalidParameter("n and k must be >= 1".into()));
    }
    let workers = workers.max(1);

    let mut outcomes: Vec<(u64, Result<SampleOutcome>)> = if workers == 1 {
        (0..cfg.samples).map(|i| (i, run_sample(cfg, i))).collect()
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers as u64)
                .map(|w| {
                    let cfg = cfg.clone();
                    scope.spawn(move || {
                        (w..cfg.samples)
                            .step_by(workers)
                            .map(|i| (i, run_sample(&cfg, i)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    };
    outcomes.sort_by_key(|(idx, _)| *idx);

    let threshold = cfg.ratio_witness_threshold.clone().unwrap_or_else(|| {
        Rational::new(BigInt::from(cfg.k as u64 - 1), BigInt::from(cfg.k as u64))
    });

    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    let mut estimates: BTreeMap<String, String> = BTreeMap::new();
    let mut min_ratio: Option<(Rational, Digraph)> = None;
    let mut below_threshold: Vec<RatioWitness> = Vec::new();

    for (_, outcome) in outcomes.drain(..) {
        match outcome? {
            SampleOutcome::Partitionable(yes) => {
                let key = if yes { "partitionable" } else { "not-partitionable" };
                *counts.entry(key.to_string()).or_insert(0) += 1;
            }
            SampleOutcome::Verdict(kind) => {
                *counts.entry(kind.to_string()).or_insert(0) += 1;
            }
            SampleOutcome::Ratio { ratio, digraph } => {
                match cfg.mode {
                    ExperimentMode::RatioDistribution => {
                        *counts.entry(ratio.to_string()).or_insert(0) += 1;
                    }
                    _ => {
                        let key = if ratio < threshold {
                            "below-threshold"
                        } else {
                            "at-or-above-threshold"
                        };
                        *counts.entry(key.to_string()).or_insert(0) += 1;
                    }
                }
                if ratio < threshold {
                    below_threshold.push(RatioWitness {
                        ratio: ratio.to_string(),
                        dgf: dgf::serialize_digraph(&digraph),
                    });
                }
                if min_ratio.as_ref().is_none_or(|(best, _)| ratio < *best) {
                    min_ratio = Some((ratio, digraph));
                }
            }
        }
    }

    let fraction = |count: u64| {
        Rational::new(BigInt::from(count), BigInt::from(cfg.samples)).to_string()
    };
    match cfg.mode {
        ExperimentMode::PartitionableFraction => {
            let c = counts.get("partitionable").copied().unwrap_or(0);
            estimates.insert("partitionable-fraction".into(), fraction(c));
        }
        ExperimentMode::TotalSyncFraction => {
            let c = counts.get("totally-synchronizing").copied().unwrap_or(0);
            estimates.insert("totally-synchronizing-fraction".into(), fraction(c));
        }
        ExperimentMode::RatioDistribution | ExperimentMode::MinRatioSearch => {
            if let Some((ratio, _)) = &min_ratio {
                estimates.insert("min-ratio".into(), ratio.to_string());
            }
        }
    }

    Ok(ExperimentReport {
        config: cfg.clone(),
        counts,
        estimates,
        min_ratio: min_ratio.map(|(ratio, digraph)| RatioWitness {
            ratio: ratio.to_string(),
            dgf: dgf::serialize_digraph(&digraph),
        }),
        below_threshold,
    })
}
