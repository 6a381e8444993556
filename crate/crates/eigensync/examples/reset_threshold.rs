//! Deciding synchronization and computing exact reset thresholds.
//!
//! Run with: cargo run --example reset_threshold

use eigensync::automaton::{format_word, Automaton, DEFAULT_SUBSET_BUDGET};
use eigensync::constructions::gen_cerny;
use eigensync::state_set::StateSet;

fn main() {
    // A four-state automaton that synchronizes in five letters.
    let b = Automaton::from_rows(vec![vec![0, 1], vec![3, 0], vec![1, 1], vec![2, 2]]).unwrap();
    println!("synchronizing: {}", b.is_synchronizing());
    let (length, witness) = b
        .shortest_reset_word(DEFAULT_SUBSET_BUDGET)
        .unwrap()
        .expect("b synchronizes");
    let target = b.apply_word(&StateSet::full(4), &witness).unwrap();
    println!(
        "reset threshold {length}, witness {} -> {target}",
        format_word(&witness, b.k())
    );

    // The slow family: reset threshold exactly (n-1)^2.
    for n in [3, 4, 5, 6] {
        let c = gen_cerny(n).unwrap();
        let (rt, word) = c
            .shortest_reset_word(DEFAULT_SUBSET_BUDGET)
            .unwrap()
            .unwrap();
        println!(
            "cerny {n}: rt = {rt} = ({n}-1)^2, witness {}",
            format_word(&word, c.k())
        );
        assert_eq!(rt, (n - 1) * (n - 1));
    }

    // Two permutation letters can never collapse states.
    let f = Automaton::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
    println!(
        "permutation automaton reset word: {:?}",
        f.shortest_reset_word(DEFAULT_SUBSET_BUDGET).unwrap()
    );
}
