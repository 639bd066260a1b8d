//! Exact feasibility of the sampling parameters and the bases they imply.
//!
//! cargo run --example check_params

use longcycle::reductions::{check_params, GeneralParams, CLAIMED_BASE};

fn main() {
    let r = check_params(&GeneralParams::default(), None);
    println!(
        "lhs {:.5} rhs {:.5} margin {:.5} feasible {}",
        r.lhs, r.rhs, r.margin, r.feasible
    );
    println!(
        "bases: first {:.5}, second {:.5}, combined {:.5} vs claimed {CLAIMED_BASE}",
        r.first_component_base, r.second_component_base, r.combined_base
    );
    for k in 3..=16 {
        let at = check_params(&GeneralParams::default(), Some(k))
            .at_k
            .expect("defaults are in range");
        println!(
            "k={k:2}: k'={:2} t_low={:2} first component up to {:2}, ceiling form {}",
            at.k_prime, at.t_low, at.first_component_max_len, at.ceiling_feasible
        );
    }
    let other = check_params(
        &GeneralParams {
            alpha: 0.5,
            beta: 1.1,
            epsilon: 0.01,
        },
        None,
    );
    println!(
        "alpha=0.5 beta=1.1: feasible {} margin {:.5}",
        other.feasible, other.margin
    );
}
