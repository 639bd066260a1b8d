//! Shortest cycle through a specified edge carrying a k-rainbow subset of
//! weight t, compared with the brute-force oracle.
//!
//! cargo run --release --example shortest_colourful

use longcycle::colourful::shortest_colourful_cycle;
use longcycle::graph::parse_graph;
use longcycle::oracle::oracle_shortest_colourful;

fn main() -> longcycle::Result<()> {
    let g = parse_graph(include_str!("data/weighted.json"))?;
    println!("n = {}, m = {}, colours = {}", g.n(), g.m(), g.s());
    for (k, t) in [(2, 0), (3, 0), (3, 2), (4, 3), (5, 0)] {
        let res = shortest_colourful_cycle(&g, k, t, 64, 2024)?;
        let exact = oracle_shortest_colourful(&g, k, t)?;
        let hits = res
            .per_trial_lengths
            .iter()
            .filter(|l| **l == exact && exact.is_some())
            .count();
        println!(
            "k={k} t={t}: solver {:?}, oracle {:?}, exact in {hits}/{} trials",
            res.length, exact, res.trials_used
        );
    }
    Ok(())
}
