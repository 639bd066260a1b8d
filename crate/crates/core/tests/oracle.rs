mod common;

use longcycle::graph::{ColouredEdge, ColouredGraph, Graph};
use longcycle::linalg::{berkowitz_det, SquareMatrix};
use longcycle::oracle::{
    count_full_rank, cycle_cover_label_sum, enumerate_cycles_through, full_rank_product, oracle_longest_cycle_through,
    oracle_shortest_colourful, oracle_shortest_colourful_by, permanent_bruteforce, rainbow_subset_exists, rank_gf2,
    verify_run_structure, LabelledArc, LabelledMultigraph, RainbowRule, SimpleCycle,
};
use longcycle::{Error, FieldCtx, FieldElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn coloured(n: usize, edges: &[(usize, usize, usize)]) -> ColouredGraph {
    let edges: Vec<ColouredEdge> = edges
        .iter()
        .map(|&(u, v, colour)| ColouredEdge {
            u,
            v,
            colour,
            weight: 0,
        })
        .collect();
    ColouredGraph::new(n, &edges, (1, 2)).unwrap()
}

#[test]
fn cycle_enumeration() {
    let tri = Graph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
    let cycles = enumerate_cycles_through(&tri, (1, 2), 3).unwrap();
    assert_eq!(cycles.len(), 1);
    assert_eq!(cycles[0].vertices[..2], [1, 2]);
    let tree = Graph::new(4, [(1, 2), (2, 3), (2, 4)]).unwrap();
    assert!(enumerate_cycles_through(&tree, (2, 3), 4).unwrap().is_empty());
    let big = Graph::new(17, (1..17).map(|i| (i, i + 1))).unwrap();
    assert!(matches!(
        enumerate_cycles_through(&big, (1, 2), 17),
        Err(Error::SizeRefused { .. })
    ));
}

#[test]
fn rainbow_subsets() {
    let edges = [(1, 1), (1, 0), (2, 0)];
    assert!(rainbow_subset_exists(&edges, 2, 1));
    assert!(!rainbow_subset_exists(&edges, 3, 0));
    assert!(!rainbow_subset_exists(&edges, 3, 1));
    assert!(rainbow_subset_exists(&[], 0, 0));
    assert!(!rainbow_subset_exists(&edges, 2, 2));
}

#[test]
fn shortest_colourful_examples() {
    let tri = coloured(3, &[(1, 2, 1), (2, 3, 2), (1, 3, 3)]);
    assert_eq!(oracle_shortest_colourful(&tri, 3, 0).unwrap(), Some(3));
    let mono = coloured(3, &[(1, 2, 1), (2, 3, 1), (1, 3, 1)]);
    assert_eq!(oracle_shortest_colourful(&mono, 2, 0).unwrap(), None);
    let k4 = coloured(4, &[(1, 2, 1), (1, 3, 2), (1, 4, 3), (2, 3, 4), (2, 4, 5), (3, 4, 6)]);
    assert_eq!(oracle_shortest_colourful(&k4, 4, 0).unwrap(), Some(4));
    assert_eq!(oracle_shortest_colourful(&k4, 3, 0).unwrap(), Some(3));
}

#[test]
fn specified_edge_rule_differs_from_any() {
    // {23, 34} is a rainbow pair of weight 2, but no such pair contains edge 12
    let g = ColouredGraph::new(
        4,
        &[
            ColouredEdge {
                u: 1,
                v: 2,
                colour: 1,
                weight: 0,
            },
            ColouredEdge {
                u: 2,
                v: 3,
                colour: 1,
                weight: 1,
            },
            ColouredEdge {
                u: 3,
                v: 4,
                colour: 2,
                weight: 1,
            },
            ColouredEdge {
                u: 4,
                v: 1,
                colour: 3,
                weight: 0,
            },
        ],
        (1, 2),
    )
    .unwrap();
    assert_eq!(
        oracle_shortest_colourful_by(&g, 2, 2, RainbowRule::Any).unwrap(),
        Some(4)
    );
    assert_eq!(
        oracle_shortest_colourful_by(&g, 2, 2, RainbowRule::ContainsSpecified).unwrap(),
        None
    );
}

#[test]
fn longest_cycle_examples() {
    let k4 = Graph::new(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
    assert_eq!(oracle_longest_cycle_through(&k4, (1, 2)).unwrap(), 4);
    let tri = Graph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
    assert_eq!(oracle_longest_cycle_through(&tri, (1, 2)).unwrap(), 3);
    let tree = Graph::new(4, [(1, 2), (2, 3), (2, 4)]).unwrap();
    assert_eq!(oracle_longest_cycle_through(&tree, (1, 2)).unwrap(), 0);
}

#[test]
fn oracle_is_monotone_in_k() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rng.gen_range(3..=7);
        let g = common::random_coloured(&mut rng, n, 14, 6, 0.4);
        let mut prev = 0;
        for k in 1..=5 {
            let cur = oracle_shortest_colourful(&g, k, 0).unwrap().unwrap_or(usize::MAX);
            assert!(cur >= prev, "k={k}");
            prev = cur;
        }
    }
}

#[test]
fn permanents() {
    let ctx = FieldCtx::with_kappa(3).unwrap();
    let id = SquareMatrix::from_fn(4, |i, j| if i == j { FieldElement::ONE } else { FieldElement::ZERO });
    assert_eq!(permanent_bruteforce(&ctx, &id).unwrap(), FieldElement::ONE);
    let gf2 = FieldCtx::with_kappa(1).unwrap();
    let ones = SquareMatrix::filled(3, FieldElement::ONE);
    assert_eq!(permanent_bruteforce(&gf2, &ones).unwrap(), FieldElement::ZERO);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let m = SquareMatrix::from_fn(4, |_, _| ctx.sample(&mut rng));
        assert_eq!(permanent_bruteforce(&ctx, &m).unwrap(), berkowitz_det(&ctx, &m));
    }
    let big = SquareMatrix::filled(9, FieldElement::ONE);
    assert!(permanent_bruteforce(&ctx, &big).is_err());
}

#[test]
fn cycle_covers() {
    let ctx = FieldCtx::with_kappa(4).unwrap();
    let lam = ctx.element(7).unwrap();
    let one = LabelledMultigraph {
        n: 1,
        arcs: vec![LabelledArc {
            init: 0,
            ter: 0,
            label: lam,
        }],
    };
    assert_eq!(cycle_cover_label_sum(&ctx, &one).unwrap(), lam);
    let [a, b, z1, z2] = [3, 5, 9, 11].map(|x| ctx.element(x).unwrap());
    let two = LabelledMultigraph {
        n: 2,
        arcs: vec![
            LabelledArc {
                init: 0,
                ter: 1,
                label: a,
            },
            LabelledArc {
                init: 1,
                ter: 0,
                label: b,
            },
            LabelledArc {
                init: 0,
                ter: 0,
                label: z1,
            },
            LabelledArc {
                init: 1,
                ter: 1,
                label: z2,
            },
        ],
    };
    let expected = ctx.add(ctx.mul(a, b), ctx.mul(z1, z2));
    assert_eq!(cycle_cover_label_sum(&ctx, &two).unwrap(), expected);
    // no covers at all
    let none = LabelledMultigraph {
        n: 2,
        arcs: vec![LabelledArc {
            init: 0,
            ter: 1,
            label: a,
        }],
    };
    assert_eq!(cycle_cover_label_sum(&ctx, &none).unwrap(), FieldElement::ZERO);
}

#[test]
fn full_rank_counts() {
    assert_eq!(count_full_rank(2).unwrap(), 6);
    for k in 1..=4 {
        assert_eq!(u128::from(count_full_rank(k).unwrap()), full_rank_product(k));
        assert!(4 * full_rank_product(k) > 1u128 << (k * k), "k={k}");
    }
    // prod (1 - 2^-i) meets (k+1)/(4k) exactly for k <= 2 and drops below it
    // at k = 3, 4, 5, since 2^i < i^2 at i = 3
    for k in 1..=6usize {
        let lhs = full_rank_product(k) * 4 * k as u128;
        let rhs = (k as u128 + 1) << (k * k);
        match k {
            1 | 2 => assert_eq!(lhs, rhs),
            3..=5 => assert!(lhs < rhs, "k={k}"),
            _ => assert!(lhs > rhs, "k={k}"),
        }
    }
    assert_eq!(rank_gf2(&[0b100, 0b010, 0b001]), 3);
    assert_eq!(rank_gf2(&[0b101, 0b101, 0b011]), 2);
    assert!(count_full_rank(5).is_err());
}

#[test]
fn run_structure() {
    let six = SimpleCycle {
        vertices: (1..=6).collect(),
    };
    let mut alt = vec![false; 7];
    for v in [2, 4, 6] {
        alt[v] = true;
    }
    let r = verify_run_structure(&six, &alt);
    assert_eq!((r.tau, r.x_left, r.s_runs), (6, 3, 3));
    assert_eq!(r.x_right, 0);
    let all = verify_run_structure(&six, &[true; 7]);
    assert_eq!((all.tau, all.x_left, all.x_right, all.s_runs), (0, 0, 0, 0));
    let none = verify_run_structure(&six, &[false; 7]);
    assert_eq!((none.tau, none.x_left, none.x_right, none.s_runs), (0, 0, 0, 0));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let len = rng.gen_range(3..=12);
        let cycle = SimpleCycle {
            vertices: (1..=len).collect(),
        };
        let in_s: Vec<bool> = (0..=len).map(|v| v > 0 && rng.gen_bool(0.5)).collect();
        let r = verify_run_structure(&cycle, &in_s);
        if r.tau > 0 {
            assert_eq!(r.tau, 2 * r.s_runs);
            assert_eq!(r.x_left, r.s_runs);
            assert!(r.x_right <= r.x_left);
        }
    }
}
