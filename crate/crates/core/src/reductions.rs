//! Long cycles through an edge via the colourful solver: the bipartite
//! colouring by V-side endpoint, and the general two-component reduction
//! (exact-range search, then random vertex sampling on a subdivided graph).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use serde::Serialize;

use crate::colourful::{
    detect_weights, shortest_colourful_cycle, shortest_colourful_cycle_with, trial_rng, SieveOptions, StopRule,
};
use crate::error::{Error, Result};
use crate::graph::{all_unique_colouring, bipartition, Bipartition, ColouredEdge, ColouredGraph, Graph};

/// Base the combined running time is claimed to stay below.
pub const CLAIMED_BASE: f64 = 1.7304;
/// Base of the exact k-cycle algorithm the first component stands in for.
pub const FIRST_COMPONENT_BASE: f64 = 1.657;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GeneralParams {
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
}

impl Default for GeneralParams {
    fn default() -> Self {
        GeneralParams {
            alpha: 0.5774,
            beta: 1.0856,
            epsilon: 0.01,
        }
    }
}

/// Exact value of a finite `f64` as written by its shortest round-trip
/// decimal form, so `0.5774` means 5774/10000.
pub fn decimal_rational(x: f64) -> Result<BigRational> {
    if !x.is_finite() {
        return Err(Error::invalid(format!("{x} is not a finite number")));
    }
    let text = x.to_string();
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.as_str()),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits: BigInt = format!("{int}{frac}")
        .parse()
        .map_err(|_| Error::invalid(format!("cannot read {text} as a decimal")))?;
    let value = BigRational::new(digits, num_traits::pow(BigInt::from(10), frac.len()));
    Ok(if neg { -value } else { value })
}

struct Exact {
    alpha: BigRational,
    beta: BigRational,
    epsilon: BigRational,
}

impl Exact {
    fn new(p: &GeneralParams) -> Result<Self> {
        Ok(Exact {
            alpha: decimal_rational(p.alpha)?,
            beta: decimal_rational(p.beta)?,
            epsilon: decimal_rational(p.epsilon)?,
        })
    }

    /// `(1-eps)(1-alpha)(alpha+alpha^2) beta`, the guaranteed split fraction.
    fn split_fraction(&self) -> BigRational {
        let one = BigRational::one();
        (&one - &self.epsilon) * (&one - &self.alpha) * (&self.alpha + &self.alpha * &self.alpha) * &self.beta
    }

    /// `(1 - (1+eps)(1-alpha) alpha) beta`, the guaranteed colourful fraction.
    fn colourful_fraction(&self) -> BigRational {
        let one = BigRational::one();
        (&one - (&one + &self.epsilon) * (&one - &self.alpha) * &self.alpha) * &self.beta
    }

    fn k_prime(&self, k: usize) -> usize {
        let ratio = BigRational::one() - self.split_fraction() / BigRational::from_integer(2.into());
        ceil_usize(&(ratio * BigRational::from_integer(k.into())))
    }

    fn t_low(&self, k: usize) -> usize {
        ceil_usize(&(self.split_fraction() * BigRational::from_integer(k.into())))
    }

    fn beta_floor(&self, k: usize) -> usize {
        (&self.beta * BigRational::from_integer(k.into()))
            .floor()
            .to_integer()
            .to_usize()
            .unwrap_or(usize::MAX)
    }
}

fn ceil_usize(x: &BigRational) -> usize {
    x.ceil().to_integer().to_usize().unwrap_or(0)
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Numbers behind the feasibility of `(alpha, beta, epsilon)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamReport {
    pub params: GeneralParams,
    pub in_range: bool,
    /// `epsilon >= 1/2`: the deviation allowed around each expected count is
    /// at least half of it.
    pub degenerate_epsilon: bool,
    pub split_fraction: f64,
    /// Left side `(1 - (1+eps)(1-alpha)alpha) beta`.
    pub lhs: f64,
    /// Right side `1 - split_fraction / 2`, the limit of `k'/k`.
    pub rhs: f64,
    pub margin: f64,
    /// `lhs >= rhs`, decided in exact rational arithmetic.
    pub feasible: bool,
    pub first_component_base: f64,
    pub second_component_base: f64,
    pub combined_base: f64,
    pub below_claimed_base: bool,
    pub at_k: Option<ParamsAtK>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamsAtK {
    pub k: usize,
    pub k_prime: usize,
    pub t_low: usize,
    pub first_component_max_len: usize,
    /// `lhs * k >= k'` with the ceiling kept.
    pub ceiling_feasible: bool,
    /// Smallest cycle length a second-component detection certifies.
    pub certified_len: usize,
}

/// Evaluates the detection condition exactly. Never fails; out-of-range
/// parameters are flagged in the report.
pub fn check_params(params: &GeneralParams, k: Option<usize>) -> ParamReport {
    let in_range = params.alpha > 0.0
        && params.alpha < 1.0
        && params.beta > 1.0
        && params.epsilon > 0.0
        && params.epsilon < 1.0
        && params.beta.is_finite();
    let exact = Exact::new(params).ok();
    let (split, lhs, rhs, feasible) = match &exact {
        Some(ex) => {
            let split = ex.split_fraction();
            let lhs = ex.colourful_fraction();
            let rhs = BigRational::one() - &split / BigRational::from_integer(2.into());
            let feasible = lhs >= rhs;
            (to_f64(&split), to_f64(&lhs), to_f64(&rhs), feasible)
        }
        None => (f64::NAN, f64::NAN, f64::NAN, false),
    };
    let first = FIRST_COMPONENT_BASE.powf(params.beta);
    let second = 2f64.powf(rhs);
    let combined = first.max(second);
    let at_k = match (&exact, k) {
        (Some(ex), Some(k)) if in_range => {
            let k_prime = ex.k_prime(k);
            let t_low = ex.t_low(k);
            let lhs_k = ex.colourful_fraction() * BigRational::from_integer(k.into());
            Some(ParamsAtK {
                k,
                k_prime,
                t_low,
                first_component_max_len: ex.beta_floor(k),
                ceiling_feasible: lhs_k >= BigRational::from_integer(k_prime.into()),
                certified_len: k_prime + t_low.div_ceil(2),
            })
        }
        _ => None,
    };
    ParamReport {
        params: *params,
        in_range,
        degenerate_epsilon: params.epsilon >= 0.5,
        split_fraction: split,
        lhs,
        rhs,
        margin: lhs - rhs,
        feasible: in_range && feasible,
        first_component_base: first,
        second_component_base: second,
        combined_base: combined,
        below_claimed_base: combined < CLAIMED_BASE,
        at_k,
    }
}

/// SplitMix64 mixing of a seed with a path of tags.
pub fn derive_seed(seed: u64, tags: &[u64]) -> u64 {
    let mut x = seed;
    for &tag in tags {
        x = splitmix(x ^ splitmix(tag.wrapping_add(0x632b_e59b_d9b4_e019)));
    }
    x
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteOutcome {
    pub found: bool,
    pub length: Option<usize>,
    pub k_prime: usize,
    pub trials_used: usize,
}

/// Colours every edge by its V-side endpoint and asks for a
/// `ceil(k/2)`-colourful cycle. The bipartition is inferred when absent.
pub fn bipartite_long_cycle(
    g: &Graph,
    e: (usize, usize),
    k: usize,
    parts: Option<&Bipartition>,
    trials: usize,
    seed: u64,
) -> Result<BipartiteOutcome> {
    if k < 1 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if !g.has_edge(e.0, e.1) || e.0 == e.1 {
        return Err(Error::invalid(format!("({},{}) is not an edge", e.0, e.1)));
    }
    let on_v = match parts {
        Some(bp) => {
            let mut side = vec![false; g.n() + 1];
            for &x in &bp.v {
                if x == 0 || x > g.n() {
                    return Err(Error::invalid(format!(
                        "bipartition names vertex {x} outside 1..={}",
                        g.n()
                    )));
                }
                side[x] = true;
            }
            if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| side[u] == side[v]) {
                return Err(Error::invalid(format!("edge ({u},{v}) does not cross the bipartition")));
            }
            side
        }
        None => bipartition(g)?,
    };
    let edges: Vec<ColouredEdge> = g
        .edges()
        .iter()
        .map(|&(u, v)| ColouredEdge {
            u,
            v,
            colour: if on_v[u] { u } else { v },
            weight: 0,
        })
        .collect();
    let coloured = ColouredGraph::new(g.n(), &edges, e)?;
    let k_prime = k.div_ceil(2);
    if k_prime > g.n() {
        return Ok(BipartiteOutcome {
            found: false,
            length: None,
            k_prime,
            trials_used: 0,
        });
    }
    let res = shortest_colourful_cycle(&coloured, k_prime, 0, trials, seed)?;
    Ok(BipartiteOutcome {
        found: res.length.is_some(),
        length: res.length,
        k_prime,
        trials_used: res.trials_used,
    })
}

/// Looks for a cycle through `e` with length in `k..=min(n, floor(beta k))`
/// using all-distinct colours. Stops at the first trial that lands in range.
pub fn first_component(
    g: &Graph,
    e: (usize, usize),
    k: usize,
    beta: f64,
    trials: usize,
    seed: u64,
) -> Result<Option<usize>> {
    let beta_exact = decimal_rational(beta)?;
    let upper = (beta_exact * BigRational::from_integer(k.into()))
        .floor()
        .to_integer()
        .to_usize()
        .unwrap_or(usize::MAX)
        .min(g.n());
    if k < 3 || k > upper {
        return Ok(None);
    }
    let coloured = all_unique_colouring(g, e)?;
    let res = shortest_colourful_cycle_with(
        &coloured,
        k,
        0,
        trials,
        seed,
        SieveOptions::default(),
        StopRule::AtOrBelow(upper),
    )?;
    Ok(res.length.filter(|&len| len <= upper))
}

/// `in_s[v]` for `v in 1..=n`; index 0 is unused and false.
pub fn sample_s<R: Rng + ?Sized>(n: usize, alpha: f64, rng: &mut R) -> Result<Vec<bool>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "alpha = {alpha} must lie strictly between 0 and 1"
        )));
    }
    Ok(std::iter::once(false)
        .chain((0..n).map(|_| rng.gen_bool(alpha)))
        .collect())
}

/// Where one edge of `G_S` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GsOrigin {
    /// Index of the originating edge of `G`.
    pub edge: usize,
    /// Raw colour of this copy: a vertex of `G`, or a fresh value above `n`.
    pub colour: usize,
    /// Subdivision vertex of this copy.
    pub middle: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdividedInstance {
    pub gs: ColouredGraph,
    pub origins: Vec<GsOrigin>,
    /// Colour options per edge of `G`.
    pub colour_sets: Vec<Vec<usize>>,
    /// One oriented half-edge `(v1, middle)` per copy of the specified edge.
    pub candidates: Vec<(usize, usize)>,
}

impl SubdividedInstance {
    pub fn with_candidate(&self, idx: usize) -> Result<ColouredGraph> {
        let arc = *self
            .candidates
            .get(idx)
            .ok_or_else(|| Error::invalid(format!("no specified-edge candidate #{idx}")))?;
        self.gs.with_specified(arc)
    }
}

/// Colour sets from `S`, one parallel copy per colour option, each copy
/// subdivided by a new vertex. Split edges weigh 1 on both halves.
pub fn build_gs(g: &Graph, e: (usize, usize), in_s: &[bool]) -> Result<SubdividedInstance> {
    if in_s.len() != g.n() + 1 {
        return Err(Error::invalid("membership vector must have n + 1 entries"));
    }
    let e_idx = g
        .edge_index(e.0, e.1)
        .ok_or_else(|| Error::invalid(format!("({},{}) is not an edge", e.0, e.1)))?;
    let n = g.n();
    let mut colour_sets = Vec::with_capacity(g.m());
    let mut edges = Vec::new();
    let mut origins = Vec::new();
    let mut candidates = Vec::new();
    let mut next_vertex = n;
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        let set = match (in_s[u], in_s[v]) {
            (true, true) => vec![u, v],
            (true, false) => vec![u],
            (false, true) => vec![v],
            (false, false) => vec![n + 1 + idx],
        };
        let weight = u8::from(in_s[u] != in_s[v]);
        for &colour in &set {
            next_vertex += 1;
            let middle = next_vertex;
            for (a, b) in [(u, middle), (middle, v)] {
                edges.push(ColouredEdge {
                    u: a,
                    v: b,
                    colour,
                    weight,
                });
                origins.push(GsOrigin {
                    edge: idx,
                    colour,
                    middle,
                });
            }
            if idx == e_idx {
                candidates.push((e.0, middle));
            }
        }
        colour_sets.push(set);
    }
    let gs = ColouredGraph::new(next_vertex, &edges, candidates[0])?;
    Ok(SubdividedInstance {
        gs,
        origins,
        colour_sets,
        candidates,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Component {
    First,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LongCycleOutcome {
    pub found: bool,
    pub component: Option<Component>,
    /// Cycle length reported by the first component.
    pub first_component_length: Option<usize>,
    pub k_prime: usize,
    pub t_range: (usize, usize),
    /// Lower bound on the length of the cycle a sampled detection certifies.
    pub certified_len: usize,
    pub outer_trials_used: usize,
    /// `(outer trial, candidate, inner trial)` of the successful detection.
    pub detection: Option<(usize, usize, usize)>,
}

/// Decides whether a simple cycle of length at least `k` passes through `e`.
/// `true` is always correct; `false` may be a miss.
pub fn general_long_cycle(
    g: &Graph,
    e: (usize, usize),
    k: usize,
    params: &GeneralParams,
    outer_trials: usize,
    inner_trials: usize,
    seed: u64,
) -> Result<LongCycleOutcome> {
    if k < 3 {
        return Err(Error::invalid(format!("k = {k} is below 3")));
    }
    if e.0 == e.1 || !g.has_edge(e.0, e.1) {
        return Err(Error::invalid(format!("({},{}) is not an edge", e.0, e.1)));
    }
    let report = check_params(params, Some(k));
    if !report.feasible {
        return Err(Error::invalid(format!(
            "parameters alpha={} beta={} epsilon={} are infeasible: {} < {} (in range: {})",
            params.alpha, params.beta, params.epsilon, report.lhs, report.rhs, report.in_range
        )));
    }
    if inner_trials == 0 {
        return Err(Error::invalid("at least one inner trial is required"));
    }
    let at_k = report.at_k.expect("in-range parameters yield a per-k report");
    let (k_prime, t_low) = (at_k.k_prime, at_k.t_low);
    debug_assert!(at_k.certified_len >= k);
    let mut outcome = LongCycleOutcome {
        found: false,
        component: None,
        first_component_length: None,
        k_prime,
        t_range: (t_low, k_prime),
        certified_len: at_k.certified_len,
        outer_trials_used: 0,
        detection: None,
    };
    // no simple cycle has more than n vertices
    if k > g.n() {
        return Ok(outcome);
    }

    if let Some(len) = first_component(g, e, k, params.beta, inner_trials, derive_seed(seed, &[0]))? {
        outcome.found = true;
        outcome.component = Some(Component::First);
        outcome.first_component_length = Some(len);
        return Ok(outcome);
    }
    if t_low > k_prime {
        return Ok(outcome);
    }

    for outer in 0..outer_trials {
        outcome.outer_trials_used = outer + 1;
        let mut rng = trial_rng(derive_seed(seed, &[1]), outer as u64);
        let in_s = sample_s(g.n(), params.alpha, &mut rng)?;
        let sub = build_gs(g, e, &in_s)?;
        for cand in 0..sub.candidates.len() {
            let gs = sub.with_candidate(cand)?;
            if k_prime > gs.n() {
                continue;
            }
            let stream_seed = derive_seed(seed, &[2, outer as u64, cand as u64]);
            for inner in 0..inner_trials {
                let mut rng = trial_rng(stream_seed, inner as u64);
                if detect_weights(&gs, k_prime, t_low..=k_prime, &mut rng, SieveOptions::default())? {
                    outcome.found = true;
                    outcome.component = Some(Component::Sampled);
                    outcome.detection = Some((outer, cand, inner));
                    return Ok(outcome);
                }
            }
        }
    }
    Ok(outcome)
}
