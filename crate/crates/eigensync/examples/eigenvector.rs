//! Integer dominant eigenvectors of the named digraph families.
//!
//! Run with: cargo run --example eigenvector

use eigensync::constructions::{gen_cerny, gen_complete_weighted, gen_u};
use eigensync::spectral::{check_entry_bound, integer_eigenvector, satisfies_balance, WeightVector};

fn main() {
    // The n-state family with reset threshold (n-1)^2: its underlying
    // digraph always has the eigenvector (2, 2, ..., 2, 1).
    for n in [4, 6, 10] {
        let g = gen_cerny(n).unwrap().underlying();
        let w = integer_eigenvector(&g).unwrap();
        println!("cerny {n:>2}: w = ({w})  sum = {}", w.sum());
        assert!(satisfies_balance(&g, &w));
    }

    // The U family has a geometric eigenvector, so entries can grow
    // exponentially in n while staying inside the (2k^2)^((n-1)/2) bound.
    println!();
    for (n, k) in [(3, 2), (6, 2), (5, 3)] {
        let g = gen_u(n, k).unwrap();
        let w = integer_eigenvector(&g).unwrap();
        println!(
            "u {n} {k}:    w = ({w})  sum = {}  entry bound holds: {}",
            w.sum(),
            check_entry_bound(&g, &w)
        );
    }

    // The complete weighted digraph reproduces any coprime positive vector
    // as its eigenvector.
    println!();
    let w = WeightVector::from_u64s(&[1, 1, 2]).unwrap();
    let g = gen_complete_weighted(&w).unwrap();
    println!(
        "complete-weighted (1 1 2): out-degree {}, eigenvector ({})",
        g.k(),
        integer_eigenvector(&g).unwrap()
    );
}
