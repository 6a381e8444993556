//! Enumerating equal-sum block partitions of weight vectors and reading off
//! uniqueness.
//!
//! Run with: cargo run --example equal_sum_partitions

use eigensync::partition::partition_uniqueness;
use eigensync::spectral::WeightVector;

fn main() {
    for entries in [
        vec![1u64, 1, 2, 2], // three partitions across two block sums
        vec![2, 2, 2, 1],    // odd total: never partitionable
        vec![1, 1, 1],       // globally unique (singletons)
        vec![1, 2, 3, 4, 5, 6, 7],
    ] {
        let w = WeightVector::from_u64s(&entries).unwrap();
        let report = partition_uniqueness(&w).unwrap();
        println!(
            "w = ({w})  total {}  partitions {}  globally unique: {}",
            report.total, report.global_count, report.global_count == 1
        );
        for (b, parts) in &report.per_b {
            for p in parts {
                println!("  b = {b}: {p}");
            }
        }
        println!();
    }
}
