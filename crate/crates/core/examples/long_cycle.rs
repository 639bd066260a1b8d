//! The general detector: a short-range search with unique colours, then
//! random vertex sets S and the subdivided graph G_S.
//!
//! cargo run --release --example long_cycle

use longcycle::graph::Graph;
use longcycle::oracle::oracle_longest_cycle_through;
use longcycle::reductions::{general_long_cycle, GeneralParams};

fn main() -> longcycle::Result<()> {
    // a 7-cycle through (1,2) plus a pendant path; no 8-cycle exists
    let mut edges: Vec<(usize, usize)> = (1..7).map(|i| (i, i + 1)).collect();
    edges.extend([(7, 1), (7, 8), (8, 9), (3, 8)]);
    let g = Graph::new(9, edges)?;
    let e = (1, 2);
    let params = GeneralParams::default();
    println!("longest cycle through {e:?}: {}", oracle_longest_cycle_through(&g, e)?);
    for k in [4, 6, 7, 8] {
        let out = general_long_cycle(&g, e, k, &params, 8, 32, 11)?;
        println!(
            "k={k}: found={} via {:?}, k'={} t in {:?}, outer trials used {}",
            out.found, out.component, out.k_prime, out.t_range, out.outer_trials_used
        );
    }
    Ok(())
}
