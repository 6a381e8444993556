//! Constructing non-synchronizing colorings: permutation recolorings of
//! Eulerian digraphs, and block-respecting colorings of complete weighted
//! digraphs for any partitionable eigenvector.
//!
//! Run with: cargo run --example nonsync_colorings

use eigensync::constructions::{birkhoff_nonsync_coloring, nonsync_coloring_from_partition};
use eigensync::dgf;
use eigensync::digraph::Digraph;
use eigensync::partition::{partition_uniqueness, PartitionRelation};
use eigensync::spectral::WeightVector;

fn main() {
    // An Eulerian digraph decomposes into permutation letters, which can
    // never collapse two states.
    let g = Digraph::from_rows(vec![vec![1, 2], vec![0, 2], vec![0, 1]]).unwrap();
    let a = birkhoff_nonsync_coloring(&g).unwrap();
    println!("permutation recoloring (synchronizing = {}):", a.is_synchronizing());
    print!("{}", dgf::serialize_automaton(&a));

    // A partitionable eigenvector always admits a digraph with a
    // non-synchronizing coloring: color the complete weighted digraph so the
    // partition is a congruence and the factor is a permutation automaton.
    let w = WeightVector::from_u64s(&[1, 1, 2]).unwrap();
    let report = partition_uniqueness(&w).unwrap();
    println!("\nw = ({w}), partitions: {}", report.global_count);
    let p: &PartitionRelation = &report.per_b[&2][0];
    let (digraph, coloring) = nonsync_coloring_from_partition(&w, p).unwrap();
    println!(
        "blocks {p} as a congruence over the complete weighted digraph (out-degree {}):",
        digraph.k()
    );
    print!("{}", dgf::serialize_automaton(&coloring));
    println!(
        "synchronizing = {}, congruence = {}",
        coloring.is_synchronizing(),
        coloring.is_congruence(p).unwrap()
    );
    let factor = coloring.factor(p).unwrap();
    println!(
        "factor automaton on {} blocks synchronizing = {}",
        factor.n(),
        factor.is_synchronizing()
    );
}
