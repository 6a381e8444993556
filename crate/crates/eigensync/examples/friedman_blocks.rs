//! Partitioning the states of a non-synchronizing automaton into
//! synchronizing subsets of maximal weight, realized as a word kernel.
//!
//! Run with: cargo run --example friedman_blocks

use eigensync::automaton::{format_word, Automaton};
use eigensync::certify::friedman_partition;
use eigensync::spectral::Distribution;
use eigensync::state_set::StateSet;

fn show(name: &str, a: &Automaton) {
    let fp = friedman_partition(a, &Distribution::uniform(a.k())).unwrap();
    println!(
        "{name}: eigenvector ({}), blocks {} of weight {}, witness {}",
        fp.eigenvector,
        fp.partition,
        fp.weight,
        format_word(&fp.witness_word, a.k())
    );
    for block in fp.partition.blocks() {
        let set = StateSet::from_indices(a.n(), block.iter().copied());
        let image = a.apply_word(&set, &fp.witness_word).unwrap();
        println!("  {set} --witness--> {image}");
    }
}

fn main() {
    // Non-synchronizing: two blocks of weight 3 collapse under "bb".
    let d = Automaton::from_rows(vec![vec![0, 2], vec![2, 0], vec![1, 3], vec![3, 2]]).unwrap();
    show("d", &d);

    // Permutation letters force singleton blocks.
    let f = Automaton::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
    show("f", &f);

    // For a synchronizing automaton the partition is the whole state set.
    let b = Automaton::from_rows(vec![vec![0, 1], vec![3, 0], vec![1, 1], vec![2, 2]]).unwrap();
    show("b", &b);
}
