//! Minimax solution of the game.
//!
//! The attacker's best response reduces the encoder's problem to a
//! univariate maximization over the marked-signal power σu² on
//! `[max(P_A, (σs - √P_E)²), (σs + √P_E)²]`. Its stationary point inside the
//! interval is the unique root there of a depressed cubic, located here by
//! bisection. Everything else follows in closed form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{
    best_attacker_response, cubic, AttackerParams, EncoderParams, GameConfig, Regime,
};

/// Relative tolerance on the bisected root.
pub const ROOT_REL_TOL: f64 = 1e-12;

pub const MAX_BISECTION_ITERATIONS: usize = 200;

/// Radicands of the watermark gain down to `-RADICAND_TOL · scale` are
/// treated as rounding noise and clamped to zero.
const RADICAND_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveDiagnostics {
    /// `cubic(σu²)` at the reported root; absent outside the interior case.
    pub cubic_residual: Option<f64>,
    pub feasible_lo: Option<f64>,
    pub feasible_hi: Option<f64>,
    pub bisection_iterations: usize,
    pub lower_bound_j: f64,
    pub upper_bound_j: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub regime: Regime,
    pub sigma_u2: f64,
    pub encoder: EncoderParams,
    pub attacker: AttackerParams,
    pub cost_j: f64,
    pub diagnostics: SolveDiagnostics,
}

/// Large-host approximation of the solution, valid for σs² ≫ P_E, P_A.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticSolution {
    pub sigma_u2: f64,
    pub alpha: f64,
    pub beta: f64,
    pub cost_j: f64,
}

/// Root of the cubic together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRoot {
    pub root: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// NonTrivial iff `P_A ≤ (√σs² + √P_E)²`; the boundary itself is NonTrivial.
pub fn classify_regime(cfg: &GameConfig) -> Regime {
    if cfg.p_a <= cfg.max_marked_power() {
        Regime::NonTrivial
    } else {
        Regime::Trivial
    }
}

/// Interval of marked powers the encoder can reach while keeping σu² ≥ P_A.
pub fn feasible_interval(cfg: &GameConfig) -> Result<(f64, f64)> {
    if classify_regime(cfg) == Regime::Trivial {
        return Err(Error::InfeasibleRegime);
    }
    let hi = cfg.max_marked_power();
    let lo = cfg.p_a.max(cfg.min_marked_power()).min(hi);
    Ok((lo, hi))
}

pub fn solve_cubic_root(cfg: &GameConfig, tol: f64) -> Result<f64> {
    bisect_cubic(cfg, tol).map(|r| r.root)
}

/// Bisection for the maximizer of the encoder payoff.
///
/// The payoff vanishes at both interval ends and is positive inside, so the
/// cubic is `≤ 0` at `lo` and `≥ 0` at `hi`. When P_A coincides with
/// `(σs - √P_E)²` the cubic has a second root exactly at `lo` (a payoff
/// minimum), so `lo` is always kept on the negative side and never returned.
pub fn bisect_cubic(cfg: &GameConfig, tol: f64) -> Result<CubicRoot> {
    let (lo, hi) = feasible_interval(cfg)?;
    if lo >= hi {
        return Ok(CubicRoot {
            root: hi,
            iterations: 0,
            residual: cubic(hi, cfg),
        });
    }

    let f_lo = cubic(lo, cfg);
    let f_hi = cubic(hi, cfg);
    let slack = tol * hi.max(1.0).powi(3);
    if f_lo > slack || f_hi < -slack {
        return Err(Error::BracketFailure { lo, hi, f_lo, f_hi });
    }

    let (mut a, mut b) = (lo, hi);
    for iteration in 1..=MAX_BISECTION_ITERATIONS {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return Ok(CubicRoot {
                root: mid,
                iterations: iteration,
                residual: cubic(mid, cfg),
            });
        }
        let f_mid = cubic(mid, cfg);
        if f_mid == 0.0 {
            return Ok(CubicRoot {
                root: mid,
                iterations: iteration,
                residual: 0.0,
            });
        }
        if f_mid < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
        if b - a <= tol * b {
            let root = 0.5 * (a + b);
            return Ok(CubicRoot {
                root,
                iterations: iteration,
                residual: cubic(root, cfg),
            });
        }
    }
    Err(Error::IterationLimit {
        iterations: MAX_BISECTION_ITERATIONS,
    })
}

/// `max(0, σx²(1 - P_E/(4P_A))) ≤ J ≤ σx²`, collapsing to `(σx², σx²)` in the
/// trivial regime.
pub fn performance_bounds(cfg: &GameConfig) -> (f64, f64) {
    let upper = cfg.sigma_x2;
    if classify_regime(cfg) == Regime::Trivial {
        return (upper, upper);
    }
    let lower = (cfg.sigma_x2 * (1.0 - cfg.p_e / (4.0 * cfg.p_a))).max(0.0);
    (lower, upper)
}

pub fn large_signal_approx(cfg: &GameConfig) -> AsymptoticSolution {
    AsymptoticSolution {
        sigma_u2: cfg.sigma_s2,
        alpha: (cfg.p_e / cfg.sigma_x2).sqrt(),
        beta: 1.0,
        cost_j: cfg.sigma_x2 * (1.0 - cfg.p_e / cfg.sigma_s2),
    }
}

/// Encoder that embeds nothing and spends its whole budget scaling the host,
/// `α = 0, β = 1 + √(P_E/σs²)`. Optimal in the trivial regime and the limit
/// of the nontrivial solution at the regime boundary.
pub fn canonical_trivial_encoder(cfg: &GameConfig) -> EncoderParams {
    EncoderParams::host_only(1.0 + (cfg.p_e / cfg.sigma_s2).sqrt())
}

pub fn solve(cfg: &GameConfig) -> Result<Solution> {
    cfg.validate()?;
    let (lower_bound_j, upper_bound_j) = performance_bounds(cfg);
    let regime = classify_regime(cfg);

    if regime == Regime::Trivial {
        let encoder = canonical_trivial_encoder(cfg);
        return Ok(Solution {
            regime,
            sigma_u2: cfg.max_marked_power(),
            encoder,
            attacker: AttackerParams::erase(),
            cost_j: cfg.sigma_x2,
            diagnostics: SolveDiagnostics {
                cubic_residual: None,
                feasible_lo: None,
                feasible_hi: None,
                bisection_iterations: 0,
                lower_bound_j,
                upper_bound_j,
            },
        });
    }

    let (lo, hi) = feasible_interval(cfg)?;
    if lo >= hi {
        // P_A sits on the regime boundary: the interval is the single point
        // σu² = P_A and the solution is the continuous limit from both sides.
        return Ok(Solution {
            regime,
            sigma_u2: hi,
            encoder: canonical_trivial_encoder(cfg),
            attacker: AttackerParams::erase(),
            cost_j: cfg.sigma_x2,
            diagnostics: SolveDiagnostics {
                cubic_residual: Some(cubic(hi, cfg)),
                feasible_lo: Some(lo),
                feasible_hi: Some(hi),
                bisection_iterations: 0,
                lower_bound_j,
                upper_bound_j,
            },
        });
    }

    let root = bisect_cubic(cfg, ROOT_REL_TOL)?;
    let sigma_u2 = root.root;
    let beta = (sigma_u2 + cfg.sigma_s2 - cfg.p_e) / (2.0 * cfg.sigma_s2);

    // α² = [(σs+√P_E)² - σu²][σu² - (σs-√P_E)²] / (4σs²σx²)
    let gain_numerator = (hi - sigma_u2) * (sigma_u2 - cfg.min_marked_power());
    if gain_numerator < -RADICAND_TOL * hi * hi {
        return Err(Error::NegativeRadicand {
            value: gain_numerator / (4.0 * cfg.sigma_s2 * cfg.sigma_x2),
        });
    }
    let gain_numerator = gain_numerator.max(0.0);
    let alpha2 = gain_numerator / (4.0 * cfg.sigma_s2 * cfg.sigma_x2);
    let alpha = alpha2.sqrt();

    let attacker = best_attacker_response(sigma_u2, cfg.p_a);

    // J = σx² - σx⁴α²(σu² - P_A)/σu⁴, with σx²α² taken from the σx²-free numerator.
    let leak = gain_numerator / (4.0 * cfg.sigma_s2) * (sigma_u2 - cfg.p_a)
        / (sigma_u2 * sigma_u2);
    let cost_j = cfg.sigma_x2 * (1.0 - leak);

    Ok(Solution {
        regime,
        sigma_u2,
        encoder: EncoderParams::new(alpha, beta),
        attacker,
        cost_j,
        diagnostics: SolveDiagnostics {
            cubic_residual: Some(root.residual),
            feasible_lo: Some(lo),
            feasible_hi: Some(hi),
            bisection_iterations: root.iterations,
            lower_bound_j,
            upper_bound_j,
        },
    })
}
