//! Certifying that every coloring of a digraph synchronizes, or refuting it
//! with a counterexample coloring.
//!
//! Run with: cargo run --example total_sync_certificates

use eigensync::certify::{
    certify_totally_synchronizing, SyncCertificate, TotalSyncVerdict, DEFAULT_ENUMERATION_BUDGET,
};
use eigensync::constructions::gen_cerny;
use eigensync::dgf;
use eigensync::digraph::Digraph;
use eigensync::Automaton;

fn report(name: &str, g: &Digraph) {
    match certify_totally_synchronizing(g, DEFAULT_ENUMERATION_BUDGET).unwrap() {
        TotalSyncVerdict::TotallySynchronizing(cert) => match cert {
            SyncCertificate::NonPartitionableEigenvector(w) => {
                println!("{name}: TOTALLY SYNCHRONIZING, eigenvector ({w}) has no equal-sum partition");
            }
            SyncCertificate::ExhaustiveEnumeration { functions, labelings } => {
                println!("{name}: TOTALLY SYNCHRONIZING, all {labelings} labelings checked ({functions} distinct functions)");
            }
        },
        TotalSyncVerdict::NotTotallySynchronizing { witness } => {
            println!("{name}: NOT totally synchronizing; witness coloring:");
            print!("{}", dgf::serialize_automaton(&witness));
        }
        TotalSyncVerdict::Unknown { budget } => {
            println!("{name}: unknown (budget {budget} exhausted)");
        }
    }
}

fn main() {
    // Odd total weight splits no partition: certified without enumeration.
    report("cerny 6", &gen_cerny(6).unwrap().underlying());

    // Partitionable eigenvector (2,2,1,1), yet all 16 colorings synchronize:
    // the fast path does not apply and enumeration certifies.
    let b = Automaton::from_rows(vec![vec![0, 1], vec![3, 0], vec![1, 1], vec![2, 2]]).unwrap();
    report("underlying(b)", &b.underlying());

    // Same eigenvector class, but this digraph has a bad coloring.
    let d = Automaton::from_rows(vec![vec![0, 2], vec![2, 0], vec![1, 3], vec![3, 2]]).unwrap();
    report("underlying(d)", &d.underlying());
}
