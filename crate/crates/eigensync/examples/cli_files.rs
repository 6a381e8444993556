//! The DGF file format and the library-level entry point behind the
//! `eigensync` binary: parse, analyze, re-serialize, and export DOT.
//!
//! Run with: cargo run --example cli_files

use eigensync::cli;
use eigensync::dgf;

fn main() {
    // One format serves digraphs and automata; the interpretation is chosen
    // by the operation. Comments start with '#'.
    let text = "# type: automaton\n4 2\n0 1\n3 0\n1 1\n2 2\n";
    let automaton = dgf::parse_automaton(text).unwrap();
    let digraph = dgf::parse_digraph(text).unwrap();
    println!(
        "parsed {} states over {} letters; synchronizing = {}",
        automaton.n(),
        automaton.k(),
        automaton.is_synchronizing()
    );
    assert_eq!(automaton.underlying(), digraph);

    // Parse errors carry the offending line number.
    let bad = "2 2\n0 2\n0 1\n";
    println!("parse error: {}", dgf::parse_digraph(bad).unwrap_err());

    // DOT export: letter labels for automata, bare multiplicity for digraphs.
    print!("{}", dgf::automaton_to_dot(&automaton));

    // The binary is a thin shell over `cli::run`; drive it in-process here.
    let dir = std::env::temp_dir().join("eigensync-example");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b.dgf");
    std::fs::write(&path, text).unwrap();
    let args = [
        "eigensync".to_string(),
        "reset-threshold".to_string(),
        path.display().to_string(),
        "--json".to_string(),
    ];
    let mut out = Vec::new();
    let code = cli::run(args, &mut out, &mut std::io::stderr());
    println!("exit {code}: {}", String::from_utf8(out).unwrap().trim());
}
