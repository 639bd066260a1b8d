//! Brute-force ground truth for small instances. Every routine here is
//! exponential and guarded by a hard size limit.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, Graph};
use crate::linalg::SquareMatrix;
use crate::ring::Char2Ring;

pub const MAX_CYCLE_VERTICES: usize = 16;
pub const MAX_PERMANENT_DIM: usize = 8;
pub const MAX_COVER_VERTICES: usize = 5;
pub const MAX_COVER_ARCS: usize = 20;

fn guard(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::SizeRefused { what, size, limit })
    } else {
        Ok(())
    }
}

/// A simple cycle listed from the specified arc: `vertices[0] = v1`,
/// `vertices[1] = v2`, closing back to `v1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleCycle {
    pub vertices: Vec<usize>,
}

impl SimpleCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive vertex pairs, including the closing one.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let l = self.vertices.len();
        (0..l).map(move |i| (self.vertices[i], self.vertices[(i + 1) % l]))
    }

    pub fn edge_indices(&self, g: &Graph) -> Vec<usize> {
        self.pairs()
            .map(|(a, b)| g.edge_index(a, b).expect("cycle edges belong to the graph"))
            .collect()
    }
}

/// All simple cycles through `e = (v1, v2)` of length at most `max_len`,
/// each once, oriented `v1 -> v2`.
pub fn enumerate_cycles_through(g: &Graph, e: (usize, usize), max_len: usize) -> Result<Vec<SimpleCycle>> {
    guard("cycle enumeration", g.n(), MAX_CYCLE_VERTICES)?;
    let (v1, v2) = e;
    if !g.has_edge(v1, v2) {
        return Err(Error::invalid(format!("({v1},{v2}) is not an edge")));
    }
    let adj = g.adjacency();
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n() + 1];
    let mut path = vec![v1, v2];
    on_path[v1] = true;
    on_path[v2] = true;
    extend(&adj, v1, max_len, &mut path, &mut on_path, &mut out);
    Ok(out)
}

fn extend(
    adj: &[Vec<(usize, usize)>],
    v1: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<SimpleCycle>,
) {
    let last = *path.last().expect("path is non-empty");
    for &(next, _) in &adj[last] {
        if next == v1 && path.len() >= 3 {
            out.push(SimpleCycle { vertices: path.clone() });
        } else if !on_path[next] && path.len() < max_len {
            on_path[next] = true;
            path.push(next);
            extend(adj, v1, max_len, path, on_path, out);
            path.pop();
            on_path[next] = false;
        }
    }
}

/// Is there a set of `k` edges with pairwise distinct colours and total
/// weight `t`? DP over colour classes on reachable `(count, weight)`.
pub fn rainbow_subset_exists(edges: &[(usize, u8)], k: usize, t: usize) -> bool {
    if t > k {
        return false;
    }
    let mut classes: BTreeMap<usize, [bool; 2]> = BTreeMap::new();
    for &(colour, weight) in edges {
        classes.entry(colour).or_default()[usize::from(weight.min(1))] = true;
    }
    // reach[c][w]: some choice over the classes so far picks c edges of weight w
    let mut reach = vec![vec![false; t + 1]; k + 1];
    reach[0][0] = true;
    for has in classes.values() {
        let prev = reach.clone();
        for c in 0..k {
            for w in 0..=t {
                if !prev[c][w] {
                    continue;
                }
                for (weight, &present) in has.iter().enumerate() {
                    if present && w + weight <= t {
                        reach[c + 1][w + weight] = true;
                    }
                }
            }
        }
    }
    reach[k][t]
}

/// Like [`rainbow_subset_exists`] but the subset must contain
/// `edges[required]`.
pub fn rainbow_subset_exists_including(edges: &[(usize, u8)], required: usize, k: usize, t: usize) -> bool {
    let (colour, weight) = edges[required];
    let weight = usize::from(weight.min(1));
    if k == 0 || t < weight {
        return false;
    }
    let rest: Vec<(usize, u8)> = edges.iter().copied().filter(|&(c, _)| c != colour).collect();
    rainbow_subset_exists(&rest, k - 1, t - weight)
}

/// Which rainbow subsets certify a cycle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RainbowRule {
    /// The subset must contain the specified edge. The specified edge has no
    /// extra arc, so this is what the sieve detects.
    #[default]
    ContainsSpecified,
    /// Any subset of the cycle's edges.
    Any,
}

/// Length of a shortest simple cycle through the specified edge with a
/// rainbow subset of size `k` and weight `t` whose rainbow set includes the
/// specified edge; `None` when there is none.
pub fn oracle_shortest_colourful(g: &ColouredGraph, k: usize, t: usize) -> Result<Option<usize>> {
    oracle_shortest_colourful_by(g, k, t, RainbowRule::ContainsSpecified)
}

pub fn oracle_shortest_colourful_by(g: &ColouredGraph, k: usize, t: usize, rule: RainbowRule) -> Result<Option<usize>> {
    let cycles = enumerate_cycles_through(g.graph(), g.specified(), g.n())?;
    Ok(cycles
        .iter()
        .filter(|c| {
            // the specified edge is the first pair of every enumerated cycle
            let labels: Vec<(usize, u8)> = c
                .edge_indices(g.graph())
                .into_iter()
                .map(|i| (g.colour(i), g.weight(i)))
                .collect();
            match rule {
                RainbowRule::ContainsSpecified => rainbow_subset_exists_including(&labels, 0, k, t),
                RainbowRule::Any => rainbow_subset_exists(&labels, k, t),
            }
        })
        .map(SimpleCycle::len)
        .min())
}

/// Longest simple cycle through `e`, or 0 when `e` lies on no cycle.
pub fn oracle_longest_cycle_through(g: &Graph, e: (usize, usize)) -> Result<usize> {
    Ok(enumerate_cycles_through(g, e, g.n())?
        .iter()
        .map(SimpleCycle::len)
        .max()
        .unwrap_or(0))
}

/// Sum over all permutations of the products `m[i][sigma(i)]`.
pub fn permanent_bruteforce<R: Char2Ring>(ring: &R, m: &SquareMatrix<R::Elem>) -> Result<R::Elem> {
    guard("permanent", m.dim(), MAX_PERMANENT_DIM)?;
    fn go<R: Char2Ring>(ring: &R, m: &SquareMatrix<R::Elem>, row: usize, used: u32, prefix: &R::Elem) -> R::Elem {
        if row == m.dim() {
            return prefix.clone();
        }
        let mut acc = ring.zero();
        for c in 0..m.dim() {
            if used & (1 << c) == 0 && !ring.is_zero(m.get(row, c)) {
                let next = ring.mul(prefix, m.get(row, c));
                acc = ring.add(&acc, &go(ring, m, row + 1, used | (1 << c), &next));
            }
        }
        acc
    }
    Ok(go(ring, m, 0, 0, &ring.one()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabelledArc<E> {
    pub init: usize,
    pub ter: usize,
    pub label: E,
}

/// Directed multigraph on vertices `0..n` with labelled arcs; loops and
/// parallel arcs are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct LabelledMultigraph<E> {
    pub n: usize,
    pub arcs: Vec<LabelledArc<E>>,
}

impl<E: Clone> LabelledMultigraph<E> {
    /// `m[i][j]` is the sum of the labels on arcs `i -> j`.
    pub fn label_sum_matrix<R: Char2Ring<Elem = E>>(&self, ring: &R) -> SquareMatrix<E> {
        let mut m = SquareMatrix::filled(self.n, ring.zero());
        for a in &self.arcs {
            let sum = ring.add(m.get(a.init, a.ter), &a.label);
            m.set(a.init, a.ter, sum);
        }
        m
    }
}

/// Sum over all cycle covers of the product of their arc labels.
pub fn cycle_cover_label_sum<R: Char2Ring>(ring: &R, d: &LabelledMultigraph<R::Elem>) -> Result<R::Elem> {
    guard("cycle cover enumeration (vertices)", d.n, MAX_COVER_VERTICES)?;
    guard("cycle cover enumeration (arcs)", d.arcs.len(), MAX_COVER_ARCS)?;
    if let Some(a) = d.arcs.iter().find(|a| a.init >= d.n || a.ter >= d.n) {
        return Err(Error::invalid(format!("arc ({},{}) leaves 0..{}", a.init, a.ter, d.n)));
    }
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); d.n];
    for (i, a) in d.arcs.iter().enumerate() {
        out_arcs[a.init].push(i);
    }
    // one outgoing arc per vertex with pairwise distinct heads is a cover
    fn go<R: Char2Ring>(
        ring: &R,
        d: &LabelledMultigraph<R::Elem>,
        out_arcs: &[Vec<usize>],
        v: usize,
        hit: u32,
        prefix: &R::Elem,
    ) -> R::Elem {
        if v == d.n {
            return prefix.clone();
        }
        let mut acc = ring.zero();
        for &i in &out_arcs[v] {
            let a = &d.arcs[i];
            if hit & (1 << a.ter) == 0 {
                let next = ring.mul(prefix, &a.label);
                acc = ring.add(&acc, &go(ring, d, out_arcs, v + 1, hit | (1 << a.ter), &next));
            }
        }
        acc
    }
    Ok(go(ring, d, &out_arcs, 0, 0, &ring.one()))
}

/// Rank over GF(2) of a bit matrix given as rows; bit `j` of a row is
/// column `j`.
pub fn rank_gf2(rows: &[u64]) -> usize {
    let mut rows = rows.to_vec();
    let mut rank = 0;
    for col in 0..64 {
        let bit = 1u64 << col;
        let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && *row & bit != 0 {
                *row ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Number of invertible `k x k` matrices over GF(2), by exhaustion.
pub fn count_full_rank(k: usize) -> Result<u64> {
    guard("full-rank count", k, 4)?;
    let cells = k * k;
    let mask = (1u64 << k) - 1;
    Ok((0..1u64 << cells)
        .filter(|&bits| {
            let rows: Vec<u64> = (0..k).map(|i| (bits >> (i * k)) & mask).collect();
            rank_gf2(&rows) == k
        })
        .count() as u64)
}

/// `prod_{i<k} (2^k - 2^i)`.
pub fn full_rank_product(k: usize) -> u128 {
    (0..k).map(|i| (1u128 << k) - (1u128 << i)).product()
}

/// Split-edge and run statistics of a cycle against a vertex set `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct RunStats {
    pub tau: usize,
    pub x_left: usize,
    pub x_right: usize,
    pub s_runs: usize,
}

/// `in_s[v]` marks membership of vertex `v` in `S`. Indices are cyclic:
/// `X_left` holds edges entering `S`, `X_right` edges leaving `S` after at
/// least two consecutive `S` vertices.
pub fn verify_run_structure(cycle: &SimpleCycle, in_s: &[bool]) -> RunStats {
    let s = &cycle.vertices;
    let l = s.len();
    let member = |i: usize| in_s[s[i % l]];
    let mut stats = RunStats::default();
    for i in 0..l {
        let (a, b) = (member(i), member(i + 1));
        if a != b {
            stats.tau += 1;
        }
        if !a && b {
            stats.x_left += 1;
        }
        if member(i + l - 1) && a && !b {
            stats.x_right += 1;
        }
    }
    stats.s_runs = stats.x_left;
    stats
}
