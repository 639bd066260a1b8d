//! Long cycles in a bipartite graph: colour each edge by its V endpoint and
//! ask for a ceil(k/2)-colourful cycle.
//!
//! cargo run --release --example bipartite

use longcycle::graph::Graph;
use longcycle::oracle::oracle_longest_cycle_through;
use longcycle::reductions::bipartite_long_cycle;

fn main() -> longcycle::Result<()> {
    // 2 x 5 grid
    let mut edges = vec![];
    for i in 1..5 {
        edges.push((i, i + 1));
        edges.push((i + 5, i + 6));
    }
    edges.extend((1..=5).map(|i| (i, i + 5)));
    let g = Graph::new(10, edges)?;
    let e = (1, 2);
    println!("longest cycle through {e:?}: {}", oracle_longest_cycle_through(&g, e)?);
    for k in [4, 6, 8, 10, 12] {
        let out = bipartite_long_cycle(&g, e, k, None, 64, 7)?;
        println!(
            "k={k:2} (k'={}): found={} length={:?}",
            out.k_prime, out.found, out.length
        );
    }
    Ok(())
}
