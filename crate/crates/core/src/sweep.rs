//! Parameter sweeps over one input of the game, written as CSV or JSON.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::format;
use crate::game::GameConfig;
use crate::solver::{large_signal_approx, solve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SweepField {
    SigmaS2,
    PA,
    PE,
}

impl FromStr for SweepField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sigma-s2" | "sigma_s2" => Ok(SweepField::SigmaS2),
            "pa" | "p_a" => Ok(SweepField::PA),
            "pe" | "p_e" => Ok(SweepField::PE),
            other => Err(Error::InvalidSweep(format!("unknown sweep field {other:?}"))),
        }
    }
}

impl fmt::Display for SweepField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepField::SigmaS2 => "sigma_s2",
            SweepField::PA => "p_a",
            SweepField::PE => "p_e",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scale {
    Linear,
    Log,
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Scale::Linear),
            "log" => Ok(Scale::Log),
            other => Err(Error::InvalidSweep(format!("unknown scale {other:?}"))),
        }
    }
}

/// One swept input with the other three held fixed. The swept field's own
/// slot in `fixed` is ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub fixed: GameConfig,
    pub field: SweepField,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub scale: Scale,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.min > 0.0) {
            return Err(Error::InvalidSweep(format!("min must be positive, got {}", self.min)));
        }
        if !(self.max.is_finite() && self.max > self.min) {
            return Err(Error::InvalidSweep(format!(
                "max must exceed min ({} <= {})",
                self.max, self.min
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidSweep(format!("steps must be at least 2, got {}", self.steps)));
        }
        self.config_at(self.min).validate()
    }

    /// Ascending grid of swept values with both endpoints exact.
    pub fn grid(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == last {
                    return self.max;
                }
                let t = i as f64 / last as f64;
                match self.scale {
                    Scale::Linear => self.min + t * (self.max - self.min),
                    Scale::Log => (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp(),
                }
            })
            .collect()
    }

    pub fn config_at(&self, value: f64) -> GameConfig {
        let mut cfg = self.fixed;
        match self.field {
            SweepField::SigmaS2 => cfg.sigma_s2 = value,
            SweepField::PA => cfg.p_a = value,
            SweepField::PE => cfg.p_e = value,
        }
        cfg
    }
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub swept_value: f64,
    pub regime: String,
    pub sigma_u2: f64,
    pub alpha: f64,
    pub beta: f64,
    pub kappa: f64,
    pub sigma_z2: f64,
    pub cost_j: f64,
    pub j_lower: f64,
    pub j_upper: f64,
    /// Large-host approximation of the cost.
    pub approx_cost_j: f64,
}

/// Exact solution against the large-host approximation at one σs².
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticRow {
    pub sigma_s2: f64,
    pub exact_sigma_u2: f64,
    pub exact_alpha: f64,
    pub exact_beta: f64,
    pub exact_cost_j: f64,
    pub approx_sigma_u2: f64,
    pub approx_alpha: f64,
    pub approx_beta: f64,
    pub approx_cost_j: f64,
    pub rel_err_sigma_u2: f64,
    pub rel_err_alpha: f64,
    pub rel_err_beta: f64,
    pub rel_err_cost_j: f64,
}

pub fn sweep_rows(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    spec.grid()
        .into_iter()
        .map(|value| {
            let cfg = spec.config_at(value);
            let s = solve(&cfg)?;
            Ok(SweepRow {
                swept_value: value,
                regime: s.regime.as_str().to_string(),
                sigma_u2: s.sigma_u2,
                alpha: s.encoder.alpha,
                beta: s.encoder.beta,
                kappa: s.attacker.kappa,
                sigma_z2: s.attacker.sigma_z2,
                cost_j: s.cost_j,
                j_lower: s.diagnostics.lower_bound_j,
                j_upper: s.diagnostics.upper_bound_j,
                approx_cost_j: large_signal_approx(&cfg).cost_j,
            })
        })
        .collect()
}

fn rel_err(approx: f64, exact: f64) -> f64 {
    if exact == 0.0 {
        approx.abs()
    } else {
        ((approx - exact) / exact).abs()
    }
}

/// Sweep over σs² comparing the exact solution with the large-host approximation.
pub fn compare_asymptotic(spec: &SweepSpec) -> Result<Vec<AsymptoticRow>> {
    if spec.field != SweepField::SigmaS2 {
        return Err(Error::InvalidSweep(
            "the asymptotic comparison sweeps sigma_s2".to_string(),
        ));
    }
    spec.validate()?;
    spec.grid()
        .into_iter()
        .map(|sigma_s2| {
            let cfg = spec.config_at(sigma_s2);
            let s = solve(&cfg)?;
            let a = large_signal_approx(&cfg);
            Ok(AsymptoticRow {
                sigma_s2,
                exact_sigma_u2: s.sigma_u2,
                exact_alpha: s.encoder.alpha,
                exact_beta: s.encoder.beta,
                exact_cost_j: s.cost_j,
                approx_sigma_u2: a.sigma_u2,
                approx_alpha: a.alpha,
                approx_beta: a.beta,
                approx_cost_j: a.cost_j,
                rel_err_sigma_u2: rel_err(a.sigma_u2, s.sigma_u2),
                rel_err_alpha: rel_err(a.alpha, s.encoder.alpha),
                rel_err_beta: rel_err(a.beta, s.encoder.beta),
                rel_err_cost_j: rel_err(a.cost_j, s.cost_j),
            })
        })
        .collect()
}

/// A record with a fixed column layout.
pub trait CsvRecord {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

impl CsvRecord for SweepRow {
    const HEADER: &'static [&'static str] = &[
        "swept_value",
        "regime",
        "sigma_u2",
        "alpha",
        "beta",
        "kappa",
        "sigma_z2",
        "cost_j",
        "j_lower",
        "j_upper",
        "approx_cost_j",
    ];

    fn fields(&self) -> Vec<String> {
        let n = format::number;
        vec![
            n(self.swept_value),
            self.regime.clone(),
            n(self.sigma_u2),
            n(self.alpha),
            n(self.beta),
            n(self.kappa),
            n(self.sigma_z2),
            n(self.cost_j),
            n(self.j_lower),
            n(self.j_upper),
            n(self.approx_cost_j),
        ]
    }
}

impl CsvRecord for AsymptoticRow {
    const HEADER: &'static [&'static str] = &[
        "sigma_s2",
        "exact_sigma_u2",
        "exact_alpha",
        "exact_beta",
        "exact_cost_j",
        "approx_sigma_u2",
        "approx_alpha",
        "approx_beta",
        "approx_cost_j",
        "rel_err_sigma_u2",
        "rel_err_alpha",
        "rel_err_beta",
        "rel_err_cost_j",
    ];

    fn fields(&self) -> Vec<String> {
        [
            self.sigma_s2,
            self.exact_sigma_u2,
            self.exact_alpha,
            self.exact_beta,
            self.exact_cost_j,
            self.approx_sigma_u2,
            self.approx_alpha,
            self.approx_beta,
            self.approx_cost_j,
            self.rel_err_sigma_u2,
            self.rel_err_alpha,
            self.rel_err_beta,
            self.rel_err_cost_j,
        ]
        .iter()
        .map(|&x| format::number(x))
        .collect()
    }
}

/// Comma-separated, header first, LF line endings.
pub fn to_csv<R: CsvRecord>(rows: &[R]) -> String {
    let mut out = R::HEADER.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.fields().join(","));
        out.push('\n');
    }
    out
}

/// JSON array of row objects with every number rounded to 12 significant digits.
pub fn to_json<R: Serialize>(rows: &[R]) -> Result<String> {
    let mut value = serde_json::to_value(rows)
        .map_err(|e| Error::InvalidSweep(format!("serialization failed: {e}")))?;
    format::round_json(&mut value);
    let mut out = serde_json::to_string_pretty(&value)
        .map_err(|e| Error::InvalidSweep(format!("serialization failed: {e}")))?;
    out.push('\n');
    Ok(out)
}
