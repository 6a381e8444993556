//! Exact synchronizing ratios and seeded randomized studies.
//!
//! Run with: cargo run --example ratio_experiments

use eigensync::certify::{synchronizing_ratio, DEFAULT_ENUMERATION_BUDGET};
use eigensync::digraph::Digraph;
use eigensync::experiments::{run_experiment, ExperimentConfig, ExperimentMode};
use eigensync::Automaton;

fn main() {
    // The smallest digraph attaining ratio 1/2: half of its four labelings
    // produce permutation automata.
    let f2 = Digraph::from_rows(vec![vec![0, 1], vec![0, 1]]).unwrap();
    let ratio = synchronizing_ratio(&f2, DEFAULT_ENUMERATION_BUDGET).unwrap();
    println!(
        "two-vertex Eulerian digraph: ratio {} ({}/{})",
        ratio.value, ratio.numerator, ratio.denominator
    );

    // A totally synchronizing digraph has ratio exactly 1.
    let b = Automaton::from_rows(vec![vec![0, 1], vec![3, 0], vec![1, 1], vec![2, 2]]).unwrap();
    let ratio = synchronizing_ratio(&b.underlying(), DEFAULT_ENUMERATION_BUDGET).unwrap();
    println!(
        "underlying(b):               ratio {} ({}/{})",
        ratio.value, ratio.numerator, ratio.denominator
    );

    // A reproducible study: ratio distribution over seeded random primitive
    // digraphs. The same config and seed give byte-identical reports at any
    // worker count.
    let cfg = ExperimentConfig {
        n: 4,
        k: 2,
        samples: 200,
        seed: 2024,
        mode: ExperimentMode::RatioDistribution,
        enumeration_budget: DEFAULT_ENUMERATION_BUDGET,
        ratio_witness_threshold: None,
    };
    let report = run_experiment(&cfg, 4).unwrap();
    println!("\nratio distribution over {} samples (n=4, k=2):", cfg.samples);
    for (ratio, count) in &report.counts {
        println!("  {ratio:>6}: {count}");
    }
    if let Some(min) = &report.min_ratio {
        println!("minimum observed ratio {} attained by:\n{}", min.ratio, min.dgf);
    }
    println!(
        "ratios below the (k-1)/k floor: {}",
        report.below_threshold.len()
    );
}
