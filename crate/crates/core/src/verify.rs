//! Independent checks of the closed forms.
//!
//! Monte Carlo estimates are drawn in fixed-size blocks. Block `b` of a run
//! with seed `s` always reads ChaCha8 stream `b` keyed by `s`, and block
//! results are merged in block order, so a report depends only on
//! `(inputs, n_samples, seed)` and not on how rayon schedules the blocks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{
    best_attacker_response, cost, encoder_payoff, marked_power, AttackerParams, EncoderParams,
    GameConfig,
};
use crate::solver::{self, feasible_interval};

/// Samples per independently seeded block.
pub const BLOCK_SIZE: usize = 1 << 14;

/// Gate, in standard errors, for two-sided Monte Carlo agreement checks.
pub const Z_GATE: f64 = 4.0;

/// One-sided margin, in standard errors, for the worst-noise inequality.
pub const WORST_NOISE_MARGIN: f64 = 3.0;

/// Minimum average population of an occupied regression bin.
pub const MIN_SAMPLES_PER_BIN: f64 = 30.0;

/// Attack gain range searched by the attacker oracle. Any feasible attack
/// has `(κ - 1)² ≤ P_A/σu² < 1` when σu² > P_A, so `[-2, 2]` covers it.
pub const KAPPA_RANGE: (f64, f64) = (-2.0, 2.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecoderSpec {
    /// LMMSE coefficient `E(XY)/E(Y²)`.
    pub gain: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub n_samples: usize,
    pub empirical_j: f64,
    pub standard_error: f64,
    pub analytic_j: f64,
    pub z_score: f64,
}

impl MonteCarloReport {
    pub fn within(&self, gate: f64) -> bool {
        self.z_score.abs() <= gate
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthogonalityReport {
    pub n_samples: usize,
    /// `E[X - T(U)]²`, the error of estimating X from the clean marked signal.
    pub signal_term: f64,
    /// `E[T(U) - X̂(Y)]²`, the extra error caused by the attack.
    pub attack_term: f64,
    /// `E[(X - T)(T - X̂)]`, zero by orthogonality.
    pub cross_term: f64,
    pub cross_term_se: f64,
    pub cross_z: f64,
    pub empirical_j: f64,
    pub analytic_j: f64,
    /// `(signal_term + attack_term) - empirical_j`.
    pub decomposition_gap: f64,
    pub decomposition_z: f64,
    /// `signal_term + attack_term` against the analytic cost.
    pub sum_z: f64,
}

impl OrthogonalityReport {
    pub fn within(&self, gate: f64) -> bool {
        self.cross_z.abs() <= gate && self.decomposition_z.abs() <= gate
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridReport {
    /// Points per axis.
    pub grid_size: usize,
    pub best_value: f64,
    pub best_point: Vec<f64>,
    pub cell_widths: Vec<f64>,
    pub analytic_value: f64,
    pub analytic_point: Vec<f64>,
    /// `best_value - analytic_value`; positive means the grid beat the closed form.
    pub max_violation: f64,
    pub tolerance: f64,
}

impl GridReport {
    pub fn non_dominated(&self) -> bool {
        self.max_violation <= self.tolerance
    }

    /// Distance of the grid optimum from the closed-form point, per axis, in cells.
    pub fn cell_offsets(&self) -> Vec<f64> {
        self.best_point
            .iter()
            .zip(&self.analytic_point)
            .zip(&self.cell_widths)
            .map(|((b, a), w)| if *w > 0.0 { (b - a).abs() / w } else { 0.0 })
            .collect()
    }

    pub fn argmax_within_cells(&self, cells: f64) -> bool {
        self.cell_offsets().iter().all(|d| *d <= cells * (1.0 + 1e-9))
    }
}

/// Both encoder-side oracles: the univariate search over σu² and the
/// search over β with α recovered from the active encoder budget.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EncoderOracleReport {
    pub reduced: GridReport,
    pub parametric: GridReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonGaussianReport {
    pub n_samples: usize,
    pub attacker: AttackerParams,
    pub bin_width: f64,
    pub occupied_bins: usize,
    /// Binned conditional-mean MMSE with uniform attack noise.
    pub mmse_uniform: f64,
    pub se_uniform: f64,
    /// Same estimator with Gaussian attack noise of equal variance.
    pub mmse_gaussian: f64,
    pub se_gaussian: f64,
    pub analytic_j: f64,
    pub margin: f64,
}

impl NonGaussianReport {
    pub fn gaussian_is_worst(&self) -> bool {
        self.mmse_uniform <= self.analytic_j + self.margin
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NoiseShape {
    Gaussian,
    /// Zero-mean uniform with the same variance as the Gaussian it replaces.
    Uniform,
}

pub fn lmmse_decoder(
    enc: &EncoderParams,
    att: &AttackerParams,
    cfg: &GameConfig,
) -> Result<DecoderSpec> {
    if att.kappa == 0.0 {
        return Ok(DecoderSpec { gain: 0.0 });
    }
    let obs_power = att.kappa * att.kappa * marked_power(enc, cfg) + att.sigma_z2;
    if obs_power > 0.0 {
        return Ok(DecoderSpec {
            gain: att.kappa * enc.alpha * cfg.sigma_x2 / obs_power,
        });
    }
    if marked_power(enc, cfg) == 0.0 && att.sigma_z2 == 0.0 {
        return Ok(DecoderSpec { gain: 0.0 });
    }
    Err(Error::DegenerateObservation { kappa: att.kappa })
}

/// Running mean and sum of squared deviations, merged pairwise.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    pub n: f64,
    pub mean: f64,
    pub m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.n += 1.0;
        let d = x - self.mean;
        self.mean += d / self.n;
        self.m2 += d * (x - self.mean);
    }

    pub fn merge(self, other: Moments) -> Moments {
        if self.n == 0.0 {
            return other;
        }
        if other.n == 0.0 {
            return self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * other.n / n,
            m2: self.m2 + other.m2 + d * d * self.n * other.n / n,
        }
    }

    pub fn variance(&self) -> f64 {
        if self.n < 2.0 {
            0.0
        } else {
            self.m2 / (self.n - 1.0)
        }
    }

    pub fn standard_error(&self) -> f64 {
        if self.n < 2.0 {
            0.0
        } else {
            (self.variance() / self.n).sqrt()
        }
    }
}

fn z_score(diff: f64, se: f64) -> f64 {
    if se > 0.0 {
        diff / se
    } else if diff == 0.0 {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    }
}

/// Source of `(X, S, Z)` triples for one block.
struct BlockSampler {
    rng: ChaCha8Rng,
    sigma_x: f64,
    sigma_s: f64,
    sigma_z: f64,
    noise: NoiseShape,
}

impl BlockSampler {
    fn new(seed: u64, block: usize, cfg: &GameConfig, sigma_z2: f64, noise: NoiseShape) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(block as u64);
        BlockSampler {
            rng,
            sigma_x: cfg.sigma_x2.sqrt(),
            sigma_s: cfg.sigma_s2.sqrt(),
            sigma_z: sigma_z2.sqrt(),
            noise,
        }
    }

    fn draw(&mut self) -> (f64, f64, f64) {
        let x: f64 = self.rng.sample::<f64, _>(StandardNormal) * self.sigma_x;
        let s: f64 = self.rng.sample::<f64, _>(StandardNormal) * self.sigma_s;
        let z = match self.noise {
            NoiseShape::Gaussian => self.rng.sample::<f64, _>(StandardNormal) * self.sigma_z,
            NoiseShape::Uniform => {
                let half_width = 3f64.sqrt() * self.sigma_z;
                (2.0 * self.rng.random::<f64>() - 1.0) * half_width
            }
        };
        (x, s, z)
    }
}

/// Runs `per_block` over every block in parallel and returns the results in block order.
fn map_blocks<A, F>(n_samples: usize, per_block: F) -> Vec<A>
where
    A: Send,
    F: Fn(usize, usize) -> A + Sync,
{
    let blocks = n_samples.div_ceil(BLOCK_SIZE);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let len = BLOCK_SIZE.min(n_samples - b * BLOCK_SIZE);
            per_block(b, len)
        })
        .collect()
}

/// Draws `(X, Y)` pairs for a Gaussian-affine system, in block order.
pub fn sample_pairs(
    enc: &EncoderParams,
    att: &AttackerParams,
    cfg: &GameConfig,
    noise: NoiseShape,
    n_samples: usize,
    seed: u64,
) -> Vec<(f64, f64)> {
    map_blocks(n_samples, |b, len| {
        let mut sampler = BlockSampler::new(seed, b, cfg, att.sigma_z2, noise);
        (0..len)
            .map(|_| {
                let (x, s, z) = sampler.draw();
                let u = enc.alpha * x + enc.beta * s;
                (x, att.kappa * u + z)
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

fn check_samples(n_samples: usize) -> Result<()> {
    if n_samples < 2 {
        return Err(Error::InsufficientSamples {
            what: format!("need at least 2 samples, got {n_samples}"),
        });
    }
    Ok(())
}

/// Empirical cost of the LMMSE decoder against its closed-form value.
pub fn monte_carlo_cost(
    enc: &EncoderParams,
    att: &AttackerParams,
    cfg: &GameConfig,
    n_samples: usize,
    seed: u64,
) -> Result<MonteCarloReport> {
    check_samples(n_samples)?;
    let gain = lmmse_decoder(enc, att, cfg)?.gain;
    let analytic_j = cost(enc, att, cfg)?;
    let moments = map_blocks(n_samples, |b, len| {
        let mut sampler = BlockSampler::new(seed, b, cfg, att.sigma_z2, NoiseShape::Gaussian);
        let mut m = Moments::default();
        for _ in 0..len {
            let (x, s, z) = sampler.draw();
            let y = att.kappa * (enc.alpha * x + enc.beta * s) + z;
            let e = x - gain * y;
            m.push(e * e);
        }
        m
    })
    .into_iter()
    .fold(Moments::default(), Moments::merge);

    let standard_error = moments.standard_error();
    Ok(MonteCarloReport {
        n_samples,
        empirical_j: moments.mean,
        standard_error,
        analytic_j,
        z_score: z_score(moments.mean - analytic_j, standard_error),
    })
}

/// Second moments `E(X²), E(XY), E(Y²)` of one seeded sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleMoments {
    pub n_samples: usize,
    pub xx: f64,
    pub xy: f64,
    pub yy: f64,
}

impl SampleMoments {
    /// Empirical mean-squared error of the linear decoder `X̂ = gain · Y`.
    pub fn linear_decoder_cost(&self, gain: f64) -> f64 {
        self.xx - 2.0 * gain * self.xy + gain * gain * self.yy
    }
}

pub fn sample_moments(
    enc: &EncoderParams,
    att: &AttackerParams,
    cfg: &GameConfig,
    n_samples: usize,
    seed: u64,
) -> Result<SampleMoments> {
    check_samples(n_samples)?;
    let sums = map_blocks(n_samples, |b, len| {
        let mut sampler = BlockSampler::new(seed, b, cfg, att.sigma_z2, NoiseShape::Gaussian);
        let mut acc = [0.0f64; 3];
        for _ in 0..len {
            let (x, s, z) = sampler.draw();
            let y = att.kappa * (enc.alpha * x + enc.beta * s) + z;
            acc[0] += x * x;
            acc[1] += x * y;
            acc[2] += y * y;
        }
        acc
    })
    .into_iter()
    .fold([0.0f64; 3], |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2]]);
    let n = n_samples as f64;
    Ok(SampleMoments {
        n_samples,
        xx: sums[0] / n,
        xy: sums[1] / n,
        yy: sums[2] / n,
    })
}

/// Splits the cost into the clean-channel error and the attack-induced error
/// and checks the two pieces are orthogonal.
pub fn orthogonality_check(
    enc: &EncoderParams,
    att: &AttackerParams,
    cfg: &GameConfig,
    n_samples: usize,
    seed: u64,
) -> Result<OrthogonalityReport> {
    check_samples(n_samples)?;
    let gain = lmmse_decoder(enc, att, cfg)?.gain;
    let analytic_j = cost(enc, att, cfg)?;
    let sigma_u2 = marked_power(enc, cfg);
    let clean_gain = if sigma_u2 > 0.0 {
        enc.alpha * cfg.sigma_x2 / sigma_u2
    } else {
        0.0
    };

    let per_block = map_blocks(n_samples, |b, len| {
        let mut sampler = BlockSampler::new(seed, b, cfg, att.sigma_z2, NoiseShape::Gaussian);
        let mut m = [Moments::default(); 5];
        for _ in 0..len {
            let (x, s, z) = sampler.draw();
            let u = enc.alpha * x + enc.beta * s;
            let y = att.kappa * u + z;
            let t = clean_gain * u;
            let x_hat = gain * y;
            let e1 = x - t;
            let e2 = t - x_hat;
            let e = x - x_hat;
            m[0].push(e1 * e1);
            m[1].push(e2 * e2);
            m[2].push(e1 * e2);
            m[3].push(e * e);
            m[4].push(e1 * e1 + e2 * e2);
        }
        m
    });
    let m = per_block
        .into_iter()
        .fold([Moments::default(); 5], |acc, blk| {
            let mut out = acc;
            for (o, b) in out.iter_mut().zip(blk) {
                *o = o.merge(b);
            }
            out
        });

    let [signal, attack, cross, total, sum] = m;
    // (e1² + e2²) - e² = -2 e1 e2 holds per sample, so the gap's standard
    // error is twice that of the cross term.
    let gap = sum.mean - total.mean;
    Ok(OrthogonalityReport {
        n_samples,
        signal_term: signal.mean,
        attack_term: attack.mean,
        cross_term: cross.mean,
        cross_term_se: cross.standard_error(),
        cross_z: z_score(cross.mean, cross.standard_error()),
        empirical_j: total.mean,
        analytic_j,
        decomposition_gap: gap,
        decomposition_z: z_score(gap, 2.0 * cross.standard_error()),
        sum_z: z_score(sum.mean - analytic_j, sum.standard_error()),
    })
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
        .collect()
}

fn cell_width(lo: f64, hi: f64, n: usize) -> f64 {
    if n > 1 {
        (hi - lo) / (n - 1) as f64
    } else {
        0.0
    }
}

/// `(value, index)` maximum; ties go to the lower index so the reduction is
/// independent of evaluation order.
fn argmax(a: (f64, usize), b: (f64, usize)) -> (f64, usize) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

/// Resolution of a grid search: `max(1e-6, L·h)` with the Lipschitz bound
/// `L·h` read off as the largest change between neighbouring grid values.
fn grid_tolerance(max_step_change: f64) -> f64 {
    max_step_change.max(1e-6)
}

fn check_grid(grid_n: usize) -> Result<()> {
    if grid_n < 100 {
        return Err(Error::InvalidParameter {
            field: "grid_n",
            value: grid_n as f64,
        });
    }
    Ok(())
}

/// Brute-force maximum of the cost over the attacker's Gaussian-affine
/// family on a `grid_n × grid_n` grid of `κ ∈ [-2, 2]`, `σz² ∈ [0, P_A]`.
/// Points violating the attacker budget are skipped.
pub fn grid_attacker_oracle(
    enc: &EncoderParams,
    cfg: &GameConfig,
    grid_n: usize,
) -> Result<GridReport> {
    check_grid(grid_n)?;
    let sigma_u2 = marked_power(enc, cfg);
    let kappas = linspace(KAPPA_RANGE.0, KAPPA_RANGE.1, grid_n);
    let noises = linspace(0.0, cfg.p_a, grid_n);

    let feasible = |kappa: f64, sz: f64| (kappa - 1.0).powi(2) * sigma_u2 + sz <= cfg.p_a;
    let value = |kappa: f64, sz: f64| -> Option<f64> {
        if feasible(kappa, sz) {
            cost(enc, &AttackerParams::new(kappa, sz), cfg).ok()
        } else {
            None
        }
    };

    let rows: Vec<((f64, usize), f64)> = (0..grid_n)
        .into_par_iter()
        .map(|i| {
            let mut best = (f64::NEG_INFINITY, usize::MAX);
            let mut step = 0.0f64;
            for j in 0..grid_n {
                let Some(v) = value(kappas[i], noises[j]) else {
                    continue;
                };
                best = argmax(best, (v, i * grid_n + j));
                if j + 1 < grid_n {
                    if let Some(w) = value(kappas[i], noises[j + 1]) {
                        step = step.max((w - v).abs());
                    }
                }
                if i + 1 < grid_n {
                    if let Some(w) = value(kappas[i + 1], noises[j]) {
                        step = step.max((w - v).abs());
                    }
                }
            }
            (best, step)
        })
        .collect();

    let (best, step) = rows.into_iter().fold(
        ((f64::NEG_INFINITY, usize::MAX), 0.0f64),
        |(b, s), (rb, rs)| (argmax(b, rb), s.max(rs)),
    );
    if best.1 == usize::MAX {
        return Err(Error::InvalidParameter {
            field: "grid_n",
            value: grid_n as f64,
        });
    }
    let (bi, bj) = (best.1 / grid_n, best.1 % grid_n);

    let analytic = best_attacker_response(sigma_u2, cfg.p_a);
    let analytic_value = cost(enc, &analytic, cfg)?;
    Ok(GridReport {
        grid_size: grid_n,
        best_value: best.0,
        best_point: vec![kappas[bi], noises[bj]],
        cell_widths: vec![
            cell_width(KAPPA_RANGE.0, KAPPA_RANGE.1, grid_n),
            cell_width(0.0, cfg.p_a, grid_n),
        ],
        analytic_value,
        analytic_point: vec![analytic.kappa, analytic.sigma_z2],
        max_violation: best.0 - analytic_value,
        tolerance: grid_tolerance(step),
    })
}

fn grid_max_1d(points: &[f64], f: impl Fn(f64) -> f64 + Sync) -> ((f64, usize), f64) {
    let values: Vec<f64> = points.par_iter().map(|&p| f(p)).collect();
    let best = values
        .iter()
        .enumerate()
        .fold((f64::NEG_INFINITY, usize::MAX), |b, (i, &v)| argmax(b, (v, i)));
    let step = values
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .fold(0.0, f64::max);
    (best, step)
}

/// Brute-force maximum of the encoder's reduced objective over the feasible
/// σu² interval, cross-checked by a search over β with α set by the active
/// encoder budget and the attacker at its best response.
pub fn grid_encoder_oracle(cfg: &GameConfig, grid_n: usize) -> Result<EncoderOracleReport> {
    check_grid(grid_n)?;
    let (lo, hi) = feasible_interval(cfg)?;
    let solution = solver::solve(cfg)?;

    let powers = linspace(lo, hi, grid_n);
    let (best, step) = grid_max_1d(&powers, |su2| encoder_payoff(su2, cfg));
    let analytic_value = encoder_payoff(solution.sigma_u2, cfg);
    let reduced = GridReport {
        grid_size: grid_n,
        best_value: best.0,
        best_point: vec![powers[best.1]],
        cell_widths: vec![cell_width(lo, hi, grid_n)],
        analytic_value,
        analytic_point: vec![solution.sigma_u2],
        max_violation: best.0 - analytic_value,
        tolerance: grid_tolerance(step),
    };

    // β range where the active budget leaves α² ≥ 0, restricted to β ≥ 0.
    let reach = (cfg.p_e / cfg.sigma_s2).sqrt();
    let (b_lo, b_hi) = ((1.0 - reach).max(0.0), 1.0 + reach);
    let betas = linspace(b_lo, b_hi, grid_n);
    let payoff_via_cost = |beta: f64| {
        let a2 = ((cfg.p_e - (beta - 1.0).powi(2) * cfg.sigma_s2) / cfg.sigma_x2).max(0.0);
        let enc = EncoderParams::new(a2.sqrt(), beta);
        let att = best_attacker_response(marked_power(&enc, cfg), cfg.p_a);
        let j = cost(&enc, &att, cfg).unwrap_or(cfg.sigma_x2);
        (cfg.sigma_x2 - j) / (cfg.sigma_x2 * cfg.sigma_x2)
    };
    let (best, step) = grid_max_1d(&betas, payoff_via_cost);
    let analytic_value = payoff_via_cost(solution.encoder.beta);
    let parametric = GridReport {
        grid_size: grid_n,
        best_value: best.0,
        best_point: vec![betas[best.1]],
        cell_widths: vec![cell_width(b_lo, b_hi, grid_n)],
        analytic_value,
        analytic_point: vec![solution.encoder.beta],
        max_violation: best.0 - analytic_value,
        tolerance: grid_tolerance(step),
    };

    Ok(EncoderOracleReport {
        reduced,
        parametric,
    })
}

/// Binned conditional-mean estimate of `E[X - E(X|Y)]²` and its standard error.
///
/// Bins have the fixed width `3.49 · sd(Y) · n^(-1/3)`. Within-bin variances
/// are pooled with a per-bin degrees-of-freedom correction.
pub fn binned_mmse(pairs: &[(f64, f64)]) -> Result<(f64, f64, f64, usize)> {
    let n = pairs.len();
    check_samples(n)?;
    let mut ym = Moments::default();
    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(_, y) in pairs {
        ym.push(y);
        y_min = y_min.min(y);
        y_max = y_max.max(y);
    }
    let sd = ym.variance().sqrt();
    let width = 3.49 * sd * (n as f64).powf(-1.0 / 3.0);
    let bins = if width > 0.0 {
        (((y_max - y_min) / width).floor() as usize + 1).max(1)
    } else {
        1
    };
    let bin_of = |y: f64| -> usize {
        if width > 0.0 {
            (((y - y_min) / width) as usize).min(bins - 1)
        } else {
            0
        }
    };

    let mut per_bin = vec![Moments::default(); bins];
    for &(x, y) in pairs {
        per_bin[bin_of(y)].push(x);
    }
    let occupied = per_bin.iter().filter(|m| m.n > 0.0).count();
    if (n as f64) / (occupied as f64) < MIN_SAMPLES_PER_BIN {
        return Err(Error::InsufficientSamples {
            what: format!(
                "{n} samples over {occupied} occupied bins is fewer than {MIN_SAMPLES_PER_BIN} per bin"
            ),
        });
    }
    let dof: f64 = per_bin.iter().map(|m| (m.n - 1.0).max(0.0)).sum();
    let pooled: f64 = per_bin.iter().map(|m| m.m2).sum::<f64>() / dof;

    let mut residual = Moments::default();
    for &(x, y) in pairs {
        let d = x - per_bin[bin_of(y)].mean;
        residual.push(d * d);
    }
    Ok((pooled, residual.standard_error(), width, occupied))
}

/// Replaces the Gaussian attack noise by uniform noise of the same variance
/// and checks the resulting true MMSE does not exceed the Gaussian-attack cost.
pub fn non_gaussian_attack_check(
    enc: &EncoderParams,
    cfg: &GameConfig,
    n_samples: usize,
    seed: u64,
) -> Result<NonGaussianReport> {
    check_samples(n_samples)?;
    let attacker = best_attacker_response(marked_power(enc, cfg), cfg.p_a);
    let analytic_j = cost(enc, &attacker, cfg)?;

    let uniform = sample_pairs(enc, &attacker, cfg, NoiseShape::Uniform, n_samples, seed);
    let (mmse_uniform, se_uniform, bin_width, occupied_bins) = binned_mmse(&uniform)?;
    drop(uniform);
    let gaussian = sample_pairs(
        enc,
        &attacker,
        cfg,
        NoiseShape::Gaussian,
        n_samples,
        seed ^ 0x9e37_79b9_7f4a_7c15,
    );
    let (mmse_gaussian, se_gaussian, _, _) = binned_mmse(&gaussian)?;

    Ok(NonGaussianReport {
        n_samples,
        attacker,
        bin_width,
        occupied_bins,
        mmse_uniform,
        se_uniform,
        mmse_gaussian,
        se_gaussian,
        analytic_j,
        margin: WORST_NOISE_MARGIN * se_uniform,
    })
}
