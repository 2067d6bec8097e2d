//! Prints the independence number of the diameter graph of `L(m, k, l)`.
//!
//! `cargo run --release --example lattice_alpha -- 1 5 2`

use std::time::Instant;

use diamfree::solver::{independence_number_with, SolverConfig};
use diamfree::{DiameterGraph, Signature};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let [m, k, l] = args[..] else {
        eprintln!("usage: lattice_alpha M K L");
        std::process::exit(2);
    };
    let g = DiameterGraph::of_lattice(Signature::new(m, k, l).expect("signature")).expect("graph");
    let config = SolverConfig { time_limit: None, ..SolverConfig::default() };
    let start = Instant::now();
    let r = independence_number_with(&g, &config).expect("solve");
    println!("L({m},{k},{l}): {} vertices, alpha {}, {} nodes, {:.2?}", g.len(), r.alpha, r.node_count, start.elapsed());
}
