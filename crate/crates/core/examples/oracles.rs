//! Brute-force ground truth: cycle enumeration, cycle-cover sums against the
//! permanent, and full-rank counts over GF(2).
//!
//! cargo run --example oracles

use longcycle::graph::parse_graph;
use longcycle::oracle::{
    count_full_rank, cycle_cover_label_sum, enumerate_cycles_through, full_rank_product, oracle_longest_cycle_through,
    permanent_bruteforce, LabelledArc, LabelledMultigraph,
};
use longcycle::FieldCtx;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> longcycle::Result<()> {
    let k4 = parse_graph(include_str!("data/k4.json"))?;
    let e = k4.specified();
    for c in enumerate_cycles_through(k4.graph(), e, 4)? {
        println!("cycle through {e:?}: {:?}", c.vertices);
    }
    println!("longest: {}", oracle_longest_cycle_through(k4.graph(), e)?);

    let ctx = FieldCtx::with_kappa(4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let arcs = (0..12)
        .map(|_| LabelledArc {
            init: rng.gen_range(0..4),
            ter: rng.gen_range(0..4),
            label: ctx.sample(&mut rng),
        })
        .collect();
    let d = LabelledMultigraph { n: 4, arcs };
    let covers = cycle_cover_label_sum(&ctx, &d)?;
    let perm = permanent_bruteforce(&ctx, &d.label_sum_matrix(&ctx))?;
    println!("cycle-cover sum {covers:?}, permanent of label sums {perm:?}");

    for k in 1..=4 {
        let count = count_full_rank(k)?;
        println!(
            "k={k}: {count} invertible of {} (product formula {}), Pr = {:.4}",
            1u64 << (k * k),
            full_rank_product(k),
            count as f64 / (1u64 << (k * k)) as f64
        );
    }
    Ok(())
}
