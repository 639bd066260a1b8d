#![allow(dead_code)]

use longcycle::graph::{ColouredEdge, ColouredGraph, Graph};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random simple graph on `n` vertices with at most `m_max` edges; the
/// specified edge is always `(1, 2)` oriented either way.
pub fn random_edges<R: Rng>(rng: &mut R, n: usize, m_max: usize) -> Vec<(usize, usize)> {
    let mut all: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .filter(|&e| e != (1, 2))
        .collect();
    all.shuffle(rng);
    let m = rng.gen_range(1..=m_max.min(all.len() + 1));
    let mut edges = vec![(1, 2)];
    edges.extend(all.into_iter().take(m - 1));
    edges.shuffle(rng);
    edges
}

pub fn random_coloured<R: Rng>(rng: &mut R, n: usize, m_max: usize, s_max: usize, p_weight: f64) -> ColouredGraph {
    let edges = random_edges(rng, n, m_max);
    let s = rng.gen_range(1..=s_max.min(edges.len()).max(1));
    let coloured: Vec<ColouredEdge> = edges
        .iter()
        .map(|&(u, v)| ColouredEdge {
            u,
            v,
            colour: rng.gen_range(1..=s),
            weight: u8::from(rng.gen_bool(p_weight)),
        })
        .collect();
    let spec = if rng.gen_bool(0.5) { (1, 2) } else { (2, 1) };
    ColouredGraph::new(n, &coloured, spec).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, m_max: usize) -> Graph {
    Graph::new(n, random_edges(rng, n, m_max)).unwrap()
}

/// Cycle `1 - 2 - ... - len - 1` with the remaining vertices on a path
/// hanging off vertex `len`.
pub fn cycle_graph(n: usize, len: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..len).map(|i| (i, i + 1)).collect();
    edges.push((len, 1));
    for v in len + 1..=n {
        edges.push((v - 1, v));
    }
    Graph::new(n, edges).unwrap()
}

pub fn show(len: Option<usize>) -> String {
    len.map_or_else(|| "inf".to_string(), |l| l.to_string())
}
