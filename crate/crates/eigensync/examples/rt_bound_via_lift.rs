//! The quadratic reset-threshold bound in the eigenvector sum, and the
//! Eulerian lift behind it: duplicate letters to make the distribution
//! uniform, lift each state into eigenvector-many copies, and apply the
//! n^2 - 3n + 3 bound for Eulerian automata to the lift.
//!
//! Run with: cargo run --example rt_bound_via_lift

use eigensync::automaton::{Automaton, DEFAULT_SUBSET_BUDGET};
use eigensync::certify::{check_rt_bound, rt_bound_from_sum};
use eigensync::constructions::{duplicate_letters, eulerian_lift};
use eigensync::spectral::{parse_rational, Distribution};

fn main() {
    let b = Automaton::from_rows(vec![vec![0, 1], vec![3, 0], vec![1, 1], vec![2, 2]]).unwrap();

    // Uniform distribution: W = 6, so rt <= 6^2 - 18 + 3 = 21.
    let report = check_rt_bound(&b, &Distribution::uniform(2), DEFAULT_SUBSET_BUDGET).unwrap();
    println!(
        "uniform:   rt = {}  W = {}  bound = {}  holds = {}",
        report.rt, report.weight_sum, report.bound, report.holds
    );

    // A skewed distribution changes the eigenvector and hence the bound.
    let skewed = Distribution::new(vec![
        parse_rational("1/3").unwrap(),
        parse_rational("2/3").unwrap(),
    ])
    .unwrap();
    let report = check_rt_bound(&b, &skewed, DEFAULT_SUBSET_BUDGET).unwrap();
    println!(
        "1/3, 2/3:  rt = {}  W = {}  bound = {}  holds = {}",
        report.rt, report.weight_sum, report.bound, report.holds
    );

    // Duplicating letters realizes the skewed distribution uniformly and
    // preserves the reset threshold exactly.
    let dup = duplicate_letters(&b, &skewed).unwrap();
    let (rt_dup, _) = dup.shortest_reset_word(DEFAULT_SUBSET_BUDGET).unwrap().unwrap();
    println!("duplicated alphabet {} letters: rt = {rt_dup}", dup.k());

    // The lift is Eulerian on W states and its threshold dominates the base.
    let lift = eulerian_lift(&b).unwrap();
    let (rt_base, _) = b.shortest_reset_word(DEFAULT_SUBSET_BUDGET).unwrap().unwrap();
    let (rt_lift, _) = lift
        .automaton
        .shortest_reset_word(DEFAULT_SUBSET_BUDGET)
        .unwrap()
        .unwrap();
    println!(
        "lift: {} states, Eulerian = {}, rt(base) = {rt_base} <= rt(lift) = {rt_lift} <= {}",
        lift.state_count(),
        lift.automaton.is_eulerian(),
        rt_bound_from_sum(&num_bigint::BigUint::from(lift.state_count()))
    );
}
