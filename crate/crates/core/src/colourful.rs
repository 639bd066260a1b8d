//! Shortest k-colourful cycle of weight t through a specified edge, as a sum
//! over filter vectors of determinants of randomly substituted matrices.
//!
//! Two interchangeable backends compute the same table of coefficients
//! `[W^t Y^(i-k) Z^(n-i)] h`:
//!
//! * [`Backend::Evaluation`] (default) fixes `Y = 1`, marks rainbow arcs with
//!   a fresh variable `T`, evaluates `W` and `Z` on a grid and extracts
//!   `[T^k]` from a matrix pencil. Interpolation recovers the table.
//! * [`Backend::Berkowitz`] builds the polynomial matrix and runs the
//!   division-free determinant over the truncated ring.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2k::{FieldCtx, FieldElement};
use crate::graph::ColouredGraph;
use crate::linalg::{berkowitz_det, gf2_rank, interpolate, pencil_det, SquareMatrix};
use crate::poly::{Caps, TriPoly};
use crate::ring::TriPolyRing;

/// Filter vectors and colour rows are packed into a `u64`.
pub const MAX_K: usize = 63;

pub type PolyMatrix = SquareMatrix<TriPoly>;

/// The randomness of one trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveConfig {
    pub k: usize,
    /// `a_rows[c - 1]` is the row of colour `c`, one bit per column.
    pub a_rows: Vec<u64>,
    /// One value per edge, in edge order.
    pub r: Vec<FieldElement>,
    /// One value per edge; the entry of the specified edge is unused and zero.
    pub x: Vec<FieldElement>,
}

impl SieveConfig {
    /// Draws `A`, then `r` in edge order, then `x` in edge order skipping the
    /// specified edge.
    pub fn sample<R: Rng + ?Sized>(g: &ColouredGraph, k: usize, ctx: &FieldCtx, rng: &mut R) -> Self {
        let mask = column_mask(k);
        let a_rows = (0..g.s()).map(|_| rng.gen::<u64>() & mask).collect();
        let r = (0..g.m()).map(|_| ctx.sample(rng)).collect();
        let x = (0..g.m())
            .map(|i| {
                if i == g.specified_index() {
                    FieldElement::ZERO
                } else {
                    ctx.sample(rng)
                }
            })
            .collect();
        SieveConfig { k, a_rows, r, x }
    }

    fn check(&self, g: &ColouredGraph) -> Result<()> {
        if self.a_rows.len() != g.s() || self.r.len() != g.m() || self.x.len() != g.m() {
            return Err(Error::invalid(format!(
                "sieve configuration has {} colour rows, {} r values and {} x values; the graph needs {}, {} and {}",
                self.a_rows.len(),
                self.r.len(),
                self.x.len(),
                g.s(),
                g.m(),
                g.m()
            )));
        }
        if self.k > MAX_K || self.a_rows.iter().any(|&row| row & !column_mask(self.k) != 0) {
            return Err(Error::invalid("colour rows must have exactly k columns"));
        }
        Ok(())
    }

    /// `a_c . b` over GF(2).
    pub fn dot(&self, colour: usize, b: u64) -> bool {
        (self.a_rows[colour - 1] & b).count_ones() % 2 == 1
    }

    pub fn rank(&self) -> usize {
        gf2_rank(&self.a_rows)
    }
}

fn column_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Per-arc coefficients of the rainbow term for filter vector `b`:
/// `(forward, backward)` for the edge stored as `(u, v)` with `u < v`.
fn rainbow_bits(g: &ColouredGraph, cfg: &SieveConfig, idx: usize, b: u64) -> (bool, bool) {
    let e = g.edge(idx);
    let dot = cfg.dot(e.colour, b);
    if idx == g.specified_index() {
        let (v1, _) = g.specified();
        // only the arc v1 -> v2 exists
        if v1 == e.u {
            (dot, false)
        } else {
            (false, dot)
        }
    } else {
        (dot, !dot)
    }
}

/// The substituted matrix `M_b` over `F[W, Y, Z]`, rows and columns indexed
/// by `vertex - 1`.
pub fn build_matrix(g: &ColouredGraph, cfg: &SieveConfig, b: u64, ctx: &FieldCtx, caps: Caps) -> Result<PolyMatrix> {
    cfg.check(g)?;
    let n = g.n();
    if caps.w < 1 || caps.y < 1 || caps.z < 1 {
        return Err(Error::invalid("matrix entries need caps of at least 1 per variable"));
    }
    let zero = TriPoly::zero(ctx, caps);
    let mut m = SquareMatrix::filled(n, zero.clone());
    let (v1, v2) = g.specified();
    for u in 1..=n {
        if u != v1 && u != v2 {
            m.set(u - 1, u - 1, TriPoly::monomial(ctx, caps, FieldElement::ONE, 0, 0, 1)?);
        }
    }
    for idx in 0..g.m() {
        let e = g.edge(idx);
        let (fwd, bwd) = rainbow_bits(g, cfg, idx, b);
        let extra = if idx == g.specified_index() {
            zero.clone()
        } else {
            TriPoly::monomial(ctx, caps, cfg.x[idx], 0, 1, 0)?
        };
        let rainbow = TriPoly::monomial(ctx, caps, cfg.r[idx], usize::from(e.weight), 0, 0)?;
        for (from, to, on) in [(e.u, e.v, fwd), (e.v, e.u, bwd)] {
            let is_reverse_specified = (from, to) == (v2, v1);
            let mut entry = if is_reverse_specified {
                zero.clone()
            } else {
                extra.clone()
            };
            if on {
                entry.add_assign(&rainbow)?;
            }
            m.set(from - 1, to - 1, entry);
        }
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    #[default]
    Evaluation,
    Berkowitz,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SieveOptions {
    pub backend: Backend,
    /// Skip the sum when `rank A < k`: every value of `A b` is then hit an
    /// even number of times, so the sum vanishes identically.
    pub rank_shortcut: bool,
}

impl Default for SieveOptions {
    fn default() -> Self {
        SieveOptions {
            backend: Backend::Evaluation,
            rank_shortcut: true,
        }
    }
}

/// `coeffs[t][i - k] = [W^t Y^(i-k) Z^(n-i)] h` for `t in 0..=k`, `i in k..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveTable {
    n: usize,
    k: usize,
    coeffs: Vec<Vec<FieldElement>>,
}

impl SieveTable {
    fn zero(n: usize, k: usize) -> Self {
        SieveTable {
            n,
            k,
            coeffs: vec![vec![FieldElement::ZERO; n.saturating_sub(k) + 1]; k + 1],
        }
    }

    pub fn coeff(&self, t: usize, i: usize) -> FieldElement {
        if t > self.k || i < self.k || i > self.n {
            return FieldElement::ZERO;
        }
        self.coeffs[t][i - self.k]
    }

    /// Smallest `i` with a nonzero coefficient at weight `t`.
    pub fn shortest(&self, t: usize) -> Option<usize> {
        (self.k..=self.n).find(|&i| !self.coeff(t, i).is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_zero())
    }
}

fn validate(g: &ColouredGraph, k: usize, t: usize) -> Result<()> {
    if k < 1 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if t > k {
        return Err(Error::invalid(format!("t = {t} exceeds k = {k}")));
    }
    if k > MAX_K {
        return Err(Error::invalid(format!("k = {k} exceeds the supported maximum {MAX_K}")));
    }
    if k > g.n() {
        return Err(Error::invalid(format!("k = {k} exceeds n = {}", g.n())));
    }
    Ok(())
}

/// `h` for one trial's randomness, as a coefficient table.
pub fn sieve_table(g: &ColouredGraph, cfg: &SieveConfig, ctx: &FieldCtx, opts: SieveOptions) -> Result<SieveTable> {
    cfg.check(g)?;
    validate(g, cfg.k, 0)?;
    let (n, k) = (g.n(), cfg.k);
    if opts.rank_shortcut && cfg.rank() < k {
        return Ok(SieveTable::zero(n, k));
    }
    match opts.backend {
        Backend::Berkowitz => berkowitz_table(g, cfg, ctx),
        Backend::Evaluation => {
            let ws = grid(w_degree(g, k));
            let zs = grid(n - 2);
            let values = evaluate_grid(g, cfg, ctx, &ws, &zs)?;
            let mut table = SieveTable::zero(n, k);
            // interpolate Z for each W node, then W for each Z power
            let mut by_w = Vec::with_capacity(ws.len());
            for row in values.chunks(zs.len()) {
                by_w.push(interpolate(ctx, &zs, row)?);
            }
            for d in 0..zs.len() {
                let column: Vec<FieldElement> = by_w.iter().map(|p| p[d]).collect();
                let in_w = interpolate(ctx, &ws, &column)?;
                if d > n - k {
                    continue;
                }
                for (t, c) in in_w.into_iter().enumerate() {
                    table.coeffs[t][n - d - k] = c;
                }
            }
            Ok(table)
        }
    }
}

// After the sum over b only covers with pairwise distinct rainbow colours
// survive, so the W-degree is bounded by the weighted colours.
fn w_degree(g: &ColouredGraph, k: usize) -> usize {
    k.min(g.weighted_colour_count())
}

fn grid(degree: usize) -> Vec<FieldElement> {
    (0..=degree as u64).map(FieldElement::new).collect()
}

fn berkowitz_table(g: &ColouredGraph, cfg: &SieveConfig, ctx: &FieldCtx) -> Result<SieveTable> {
    let (n, k) = (g.n(), cfg.k);
    let caps = Caps::uniform(n);
    let ring = TriPolyRing::new(ctx.clone(), caps);
    let h = (0..1u64 << k)
        .into_par_iter()
        .map(|b| build_matrix(g, cfg, b, ctx, caps).map(|m| berkowitz_det(&ring, &m)))
        .try_reduce(|| TriPoly::zero(ctx, caps), |a, b| a.add(&b))?;
    let mut table = SieveTable::zero(n, k);
    for t in 0..=k {
        for i in k..=n {
            table.coeffs[t][i - k] = h.coeff(t, i - k, n - i)?;
        }
    }
    Ok(table)
}

/// `sum_b [T^k] det(N_z + T R_{b,w})` at every grid node, W-major.
fn evaluate_grid(
    g: &ColouredGraph,
    cfg: &SieveConfig,
    ctx: &FieldCtx,
    ws: &[FieldElement],
    zs: &[FieldElement],
) -> Result<Vec<FieldElement>> {
    let n = g.n();
    let k = cfg.k;
    let (v1, v2) = g.specified();
    let base: Vec<SquareMatrix<FieldElement>> = zs
        .iter()
        .map(|&z| {
            let mut m = SquareMatrix::filled(n, FieldElement::ZERO);
            for u in 1..=n {
                if u != v1 && u != v2 {
                    m.set(u - 1, u - 1, z);
                }
            }
            for idx in 0..g.m() {
                if idx != g.specified_index() {
                    let e = g.edge(idx);
                    m.set(e.u - 1, e.v - 1, cfg.x[idx]);
                    m.set(e.v - 1, e.u - 1, cfg.x[idx]);
                }
            }
            m
        })
        .collect();
    let cells = ws.len() * zs.len();
    (0..1u64 << k)
        .into_par_iter()
        .map(|b| -> Result<Vec<FieldElement>> {
            let mut out = Vec::with_capacity(cells);
            for &w in ws {
                let mut rainbow = SquareMatrix::filled(n, FieldElement::ZERO);
                for idx in 0..g.m() {
                    let e = g.edge(idx);
                    let value = if e.weight == 1 {
                        ctx.mul(cfg.r[idx], w)
                    } else {
                        cfg.r[idx]
                    };
                    let (fwd, bwd) = rainbow_bits(g, cfg, idx, b);
                    if fwd {
                        rainbow.set(e.u - 1, e.v - 1, value);
                    }
                    if bwd {
                        rainbow.set(e.v - 1, e.u - 1, value);
                    }
                }
                for base_z in &base {
                    out.push(pencil_det(ctx, base_z, &rainbow)?[k]);
                }
            }
            Ok(out)
        })
        .try_reduce(
            || vec![FieldElement::ZERO; cells],
            |mut acc, part| {
                for (a, p) in acc.iter_mut().zip(part) {
                    *a = ctx.add(*a, p);
                }
                Ok(acc)
            },
        )
}

/// One run of the algorithm: `None` stands for infinity.
pub fn algorithm_a<R: Rng + ?Sized>(
    g: &ColouredGraph,
    k: usize,
    t: usize,
    rng: &mut R,
    opts: SieveOptions,
) -> Result<Option<usize>> {
    validate(g, k, t)?;
    let ctx = FieldCtx::for_order(g.n() as u64)?;
    let cfg = SieveConfig::sample(g, k, &ctx, rng);
    Ok(sieve_table(g, &cfg, &ctx, opts)?.shortest(t))
}

/// Randomness for trial `trial` under `seed`: one ChaCha stream per trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColourfulResult {
    pub length: Option<usize>,
    pub trials_used: usize,
    pub per_trial_lengths: Vec<Option<usize>>,
}

/// When to stop repeating trials before the budget runs out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StopRule {
    #[default]
    Never,
    /// Stop once some trial reports a length at most this value.
    AtOrBelow(usize),
}

pub fn shortest_colourful_cycle(
    g: &ColouredGraph,
    k: usize,
    t: usize,
    trials: usize,
    seed: u64,
) -> Result<ColourfulResult> {
    shortest_colourful_cycle_with(g, k, t, trials, seed, SieveOptions::default(), StopRule::Never)
}

/// Minimum finite answer over independent trials.
pub fn shortest_colourful_cycle_with(
    g: &ColouredGraph,
    k: usize,
    t: usize,
    trials: usize,
    seed: u64,
    opts: SieveOptions,
    stop: StopRule,
) -> Result<ColourfulResult> {
    if trials == 0 {
        return Err(Error::invalid("at least one trial is required"));
    }
    validate(g, k, t)?;
    let mut per_trial = Vec::with_capacity(trials);
    for trial in 0..trials {
        let answer = algorithm_a(g, k, t, &mut trial_rng(seed, trial as u64), opts)?;
        per_trial.push(answer);
        if let (StopRule::AtOrBelow(limit), Some(len)) = (stop, answer) {
            if len <= limit {
                break;
            }
        }
    }
    Ok(ColourfulResult {
        length: per_trial.iter().flatten().min().copied(),
        trials_used: per_trial.len(),
        per_trial_lengths: per_trial,
    })
}

/// One detection trial: is `[W^t Y^(i-k) Z^(n-i)] h` nonzero for some `t` in
/// `weights` and some `i`? `Z` is fixed at one random point instead of being
/// interpolated, so a `true` is always genuine while a `false` may be a miss.
pub fn detect_weights<R: Rng + ?Sized>(
    g: &ColouredGraph,
    k: usize,
    weights: RangeInclusive<usize>,
    rng: &mut R,
    opts: SieveOptions,
) -> Result<bool> {
    validate(g, k, *weights.end())?;
    let ctx = FieldCtx::for_order(g.n() as u64)?;
    let cfg = SieveConfig::sample(g, k, &ctx, rng);
    let z = ctx.sample(rng);
    if opts.rank_shortcut && cfg.rank() < k {
        return Ok(false);
    }
    let in_w = match opts.backend {
        Backend::Evaluation => {
            let ws = grid(w_degree(g, k));
            let values = evaluate_grid(g, &cfg, &ctx, &ws, &[z])?;
            interpolate(&ctx, &ws, &values)?
        }
        Backend::Berkowitz => {
            let table = berkowitz_table(g, &cfg, &ctx)?;
            (0..=k)
                .map(|t| {
                    (k..=g.n()).fold(FieldElement::ZERO, |acc, i| {
                        ctx.add(acc, ctx.mul(table.coeff(t, i), ctx.pow(z, (g.n() - i) as u128)))
                    })
                })
                .collect()
        }
    };
    Ok(weights.into_iter().any(|t| in_w.get(t).is_some_and(|c| !c.is_zero())))
}
