//! Closed-form algebra of the game: powers, distortions, the LMMSE cost and
//! the attacker's best response against a fixed linear encoder.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The four exogenous scalars of a game instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameConfig {
    /// Watermark variance σx².
    pub sigma_x2: f64,
    /// Host-signal variance σs².
    pub sigma_s2: f64,
    /// Encoder distortion budget.
    pub p_e: f64,
    /// Attacker distortion budget.
    pub p_a: f64,
}

impl GameConfig {
    pub fn new(sigma_x2: f64, sigma_s2: f64, p_e: f64, p_a: f64) -> Result<Self> {
        let cfg = GameConfig {
            sigma_x2,
            sigma_s2,
            p_e,
            p_a,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (field, value) in [
            ("sigma_x2", self.sigma_x2),
            ("sigma_s2", self.sigma_s2),
            ("p_e", self.p_e),
            ("p_a", self.p_a),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidConfig { field, value });
            }
        }
        Ok(())
    }

    /// Upper end of the achievable marked-signal power, `(σs + √P_E)²`.
    pub fn max_marked_power(&self) -> f64 {
        let r = self.sigma_s2.sqrt() + self.p_e.sqrt();
        r * r
    }

    /// Lower root of the watermark-gain radicand, `(σs - √P_E)²`.
    pub fn min_marked_power(&self) -> f64 {
        let r = self.sigma_s2.sqrt() - self.p_e.sqrt();
        r * r
    }
}

/// Linear encoder `U = αX + βS`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EncoderParams {
    pub alpha: f64,
    pub beta: f64,
}

impl EncoderParams {
    pub fn new(alpha: f64, beta: f64) -> Self {
        EncoderParams { alpha, beta }
    }

    /// Encoder that leaves the host untouched except for a gain and embeds nothing.
    pub fn host_only(beta: f64) -> Self {
        EncoderParams { alpha: 0.0, beta }
    }
}

/// Gaussian-affine attack `Y = κU + Z`, `Z ~ N(0, σz²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttackerParams {
    pub kappa: f64,
    pub sigma_z2: f64,
}

impl AttackerParams {
    pub fn new(kappa: f64, sigma_z2: f64) -> Self {
        AttackerParams { kappa, sigma_z2 }
    }

    /// The attack that discards `U` and sends silence.
    pub fn erase() -> Self {
        AttackerParams {
            kappa: 0.0,
            sigma_z2: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// The attacker cannot afford to erase `U`; information about `X` survives.
    NonTrivial,
    /// The attacker erases `U` and the cost equals σx².
    Trivial,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::NonTrivial => "nontrivial",
            Regime::Trivial => "trivial",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Marked-signal power `σu² = α²σx² + β²σs²`.
pub fn marked_power(enc: &EncoderParams, cfg: &GameConfig) -> f64 {
    enc.alpha * enc.alpha * cfg.sigma_x2 + enc.beta * enc.beta * cfg.sigma_s2
}

/// `E(U - S)² = α²σx² + (β - 1)²σs²`.
pub fn encoder_distortion(enc: &EncoderParams, cfg: &GameConfig) -> f64 {
    let db = enc.beta - 1.0;
    enc.alpha * enc.alpha * cfg.sigma_x2 + db * db * cfg.sigma_s2
}

/// `E(Y - U)² = (κ - 1)²σu² + σz²`.
pub fn attacker_distortion(att: &AttackerParams, sigma_u2: f64) -> f64 {
    let dk = att.kappa - 1.0;
    dk * dk * sigma_u2 + att.sigma_z2
}

/// Mean-squared error of the LMMSE estimate of `X` from `Y`.
///
/// Evaluated as `σx² (κ²β²σs² + σz²) / (κ²σu² + σz²)`, which equals
/// `σx² - σx⁴κ²α² / (κ²σu² + σz²)` and cannot go negative through
/// cancellation. An observation that is identically zero carries no
/// information and yields σx², as does `κ = 0`.
pub fn cost(enc: &EncoderParams, att: &AttackerParams, cfg: &GameConfig) -> Result<f64> {
    if !att.kappa.is_finite() {
        return Err(Error::InvalidParameter {
            field: "kappa",
            value: att.kappa,
        });
    }
    if !(att.sigma_z2 >= 0.0 && att.sigma_z2.is_finite()) {
        return Err(Error::InvalidParameter {
            field: "sigma_z2",
            value: att.sigma_z2,
        });
    }
    if att.kappa == 0.0 {
        return Ok(cfg.sigma_x2);
    }
    let k2 = att.kappa * att.kappa;
    let sigma_u2 = marked_power(enc, cfg);
    let obs_power = k2 * sigma_u2 + att.sigma_z2;
    if obs_power == 0.0 {
        if sigma_u2 == 0.0 {
            // α = β = 0 and no noise: Y ≡ 0, same as erasing.
            return Ok(cfg.sigma_x2);
        }
        return Err(Error::DegenerateObservation { kappa: att.kappa });
    }
    let residual = k2 * enc.beta * enc.beta * cfg.sigma_s2 + att.sigma_z2;
    Ok(cfg.sigma_x2 * residual / obs_power)
}

/// Attacker's optimal Gaussian-affine response to a marked signal of power `sigma_u2`.
///
/// Above the budget the attacker scales by `κ = 1 - P_A/σu²` and adds noise
/// `σz² = P_A κ`, spending the budget exactly. At or below the budget it
/// erases `U`; any σz² in `[0, P_A - σu²]` is then optimal and 0 is reported.
pub fn best_attacker_response(sigma_u2: f64, p_a: f64) -> AttackerParams {
    if sigma_u2 <= p_a {
        return AttackerParams::erase();
    }
    let kappa = 1.0 - p_a / sigma_u2;
    AttackerParams {
        kappa,
        sigma_z2: p_a * kappa,
    }
}

/// Encoder's reduced objective `J_E(σu²)` with the encoder budget active and
/// the attacker at its best response; the cost is `σx² - σx⁴ J_E`.
pub fn encoder_payoff(sigma_u2: f64, cfg: &GameConfig) -> f64 {
    let centred = sigma_u2 - (cfg.sigma_s2 + cfg.p_e);
    let spread = centred * centred - 4.0 * cfg.p_e * cfg.sigma_s2;
    -spread * (sigma_u2 - cfg.p_a) / (4.0 * cfg.sigma_s2 * cfg.sigma_x2 * sigma_u2 * sigma_u2)
}

/// Depressed cubic whose in-interval root is the optimal marked power:
/// `x³ - x[(σs² - P_E)² + 2P_A(σs² + P_E)] + 2P_A(σs² - P_E)²`.
pub fn cubic(x: f64, cfg: &GameConfig) -> f64 {
    let d = cfg.sigma_s2 - cfg.p_e;
    let linear = d * d + 2.0 * cfg.p_a * (cfg.sigma_s2 + cfg.p_e);
    let constant = 2.0 * cfg.p_a * d * d;
    x * x * x - x * linear + constant
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg(sigma_x2: f64, sigma_s2: f64, p_e: f64, p_a: f64) -> GameConfig {
        GameConfig::new(sigma_x2, sigma_s2, p_e, p_a).unwrap()
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
    }

    /// Eq.-29 form of the cost, kept apart from the production expression.
    fn cost_direct(enc: &EncoderParams, att: &AttackerParams, c: &GameConfig) -> f64 {
        let su2 = enc.alpha.powi(2) * c.sigma_x2 + enc.beta.powi(2) * c.sigma_s2;
        let k2 = att.kappa.powi(2);
        c.sigma_x2 - c.sigma_x2.powi(2) * k2 * enc.alpha.powi(2) / (k2 * su2 + att.sigma_z2)
    }

    #[test]
    fn config_rejects_degenerate_values() {
        assert!(GameConfig::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(GameConfig::new(1.0, -1.0, 1.0, 1.0).is_err());
        assert!(GameConfig::new(1.0, 1.0, f64::NAN, 1.0).is_err());
        assert!(GameConfig::new(1.0, 1.0, 1.0, f64::INFINITY).is_err());
        assert!(GameConfig::new(1.0, 1.0, 1.0, 1.0).is_ok());
    }

    #[test]
    fn marked_power_examples() {
        let c = cfg(10.0, 1.0, 1.0, 1.0);
        assert_eq!(marked_power(&EncoderParams::new(0.0, 0.0), &c), 0.0);
        let golden = EncoderParams::new(1.0 / 10f64.sqrt(), 1.0);
        assert!(close(marked_power(&golden, &c), 2.0, 1e-15));
        assert_eq!(marked_power(&EncoderParams::new(1.0, 0.0), &cfg(4.0, 7.0, 1.0, 1.0)), 4.0);
    }

    #[test]
    fn encoder_distortion_examples() {
        let c = cfg(10.0, 1.0, 1.0, 1.0);
        assert_eq!(encoder_distortion(&EncoderParams::new(0.0, 1.0), &c), 0.0);
        let golden = EncoderParams::new(1.0 / 10f64.sqrt(), 1.0);
        assert!(close(encoder_distortion(&golden, &c), 1.0, 1e-15));

        let c = cfg(3.0, 2.5, 0.7, 1.0);
        let canonical = EncoderParams::host_only(1.0 + (c.p_e / c.sigma_s2).sqrt());
        assert!(close(encoder_distortion(&canonical, &c), c.p_e, 1e-14));
    }

    #[test]
    fn attacker_distortion_examples() {
        assert_eq!(attacker_distortion(&AttackerParams::new(1.0, 0.0), 2.0), 0.0);
        assert_eq!(attacker_distortion(&AttackerParams::new(0.5, 0.5), 2.0), 1.0);
        assert_eq!(attacker_distortion(&AttackerParams::new(0.0, 0.0), 3.0), 3.0);
    }

    #[test]
    fn cost_examples() {
        let c = cfg(10.0, 1.0, 1.0, 1.0);
        let any = EncoderParams::new(0.7, 1.3);
        assert_eq!(cost(&any, &AttackerParams::new(0.0, 1.0), &c).unwrap(), 10.0);

        let golden = EncoderParams::new(1.0 / 10f64.sqrt(), 1.0);
        let att = AttackerParams::new(0.5, 0.5);
        assert!(close(cost(&golden, &att, &c).unwrap(), 7.5, 1e-14));
        assert!(close(cost_direct(&golden, &att, &c), 7.5, 1e-14));

        let c = cfg(1.0, 1.0, 1.0, 1.0);
        let j = cost(&EncoderParams::new(1.0, 1.0), &AttackerParams::new(1.0, 0.0), &c).unwrap();
        assert!(close(j, 0.5, 1e-15));
    }

    #[test]
    fn cost_degenerate_observation() {
        let c = cfg(10.0, 1.0, 1.0, 1.0);
        // α = β = 0, κ ≠ 0, σz² = 0 behaves like an erased observation.
        let j = cost(&EncoderParams::new(0.0, 0.0), &AttackerParams::new(2.0, 0.0), &c).unwrap();
        assert_eq!(j, 10.0);
        assert!(cost(&EncoderParams::new(1.0, 1.0), &AttackerParams::new(1.0, -0.1), &c).is_err());
        assert!(cost(&EncoderParams::new(1.0, 1.0), &AttackerParams::new(f64::NAN, 0.1), &c).is_err());
    }

    #[test]
    fn best_response_examples() {
        let att = best_attacker_response(2.0, 1.0);
        assert_eq!(att, AttackerParams::new(0.5, 0.5));
        assert_eq!(best_attacker_response(1.0, 2.0), AttackerParams::erase());
        // σu² = P_A merges into the erasing branch.
        assert_eq!(best_attacker_response(1.0, 1.0), AttackerParams::erase());

        let tiny = best_attacker_response(5.0, 1e-12);
        assert!((tiny.kappa - 1.0).abs() < 1e-12);
        assert!(tiny.sigma_z2 < 1e-11 && tiny.sigma_z2 > 0.0);
    }

    #[test]
    fn best_response_beats_attacker_grid() {
        // Brute force over the budget boundary σz² = P_A - (κ-1)²σu².
        let c = cfg(4.0, 2.0, 0.5, 0.8);
        let enc = EncoderParams::new(0.4, 1.2);
        let su2 = marked_power(&enc, &c);
        let best = best_attacker_response(su2, c.p_a);
        let j_best = cost(&enc, &best, &c).unwrap();
        let k_lo = 1.0 - (c.p_a / su2).sqrt();
        let k_hi = 1.0 + (c.p_a / su2).sqrt();
        for i in 0..=2000 {
            let kappa = k_lo + (k_hi - k_lo) * i as f64 / 2000.0;
            let sz = (c.p_a - (kappa - 1.0).powi(2) * su2).max(0.0);
            let j = cost(&enc, &AttackerParams::new(kappa, sz), &c).unwrap();
            assert!(j <= j_best + 1e-12, "kappa {kappa}: {j} > {j_best}");
        }
    }

    #[test]
    fn encoder_payoff_examples() {
        let c = cfg(10.0, 1.0, 1.0, 1.0);
        assert_eq!(encoder_payoff(c.p_a, &c), 0.0);
        assert!(encoder_payoff(c.max_marked_power(), &c).abs() < 1e-15);
        assert!(close(encoder_payoff(2.0, &c), 0.025, 1e-15));
        assert!(close(c.sigma_x2 - c.sigma_x2.powi(2) * encoder_payoff(2.0, &c), 7.5, 1e-14));

        let c = cfg(3.0, 4.0, 1.0, 0.5);
        assert!(encoder_payoff(c.min_marked_power(), &c).abs() < 1e-15);
        assert!(encoder_payoff(c.max_marked_power(), &c).abs() < 1e-15);
    }

    #[test]
    fn cubic_examples() {
        let c = cfg(10.0, 1.0, 1.0, 1.0);
        assert_eq!(cubic(2.0, &c), 0.0);
        assert_eq!(cubic(0.0, &c), 0.0);
        assert_eq!(cubic(0.0, &cfg(10.0, 4.0, 1.0, 1.0)), 18.0);
    }

    #[test]
    fn cubic_is_scaled_derivative_of_encoder_payoff() {
        // (-4σs²σx²x³) dJ_E/dx = f(x), checked with central differences.
        let c = cfg(2.5, 3.0, 0.8, 1.7);
        for &x in &[0.5, 1.3, 2.0, 4.4, 7.9] {
            let h = 1e-5 * x;
            let d = (encoder_payoff(x + h, &c) - encoder_payoff(x - h, &c)) / (2.0 * h);
            let lhs = -4.0 * c.sigma_s2 * c.sigma_x2 * x.powi(3) * d;
            let rhs = cubic(x, &c);
            assert!((lhs - rhs).abs() <= 1e-6 * (1.0 + rhs.abs()), "x={x}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn budget_consistency_above_threshold() {
        for &(su2, pa) in &[(2.0, 1.0), (1e4, 3.0), (1.0001, 1.0), (50.0, 49.0)] {
            let att = best_attacker_response(su2, pa);
            assert!(close(attacker_distortion(&att, su2), pa, 1e-12));
            assert!(att.kappa > 0.0 && att.sigma_z2 > 0.0);
        }
    }

    fn positive() -> impl Strategy<Value = f64> {
        (-2.0f64..2.0).prop_map(|e| 10f64.powf(e))
    }

    proptest! {
        #[test]
        fn cost_within_zero_and_prior(
            sx in positive(), ss in positive(),
            alpha in -3.0f64..3.0, beta in -3.0f64..3.0,
            kappa in -2.0f64..2.0, sz in 0.0f64..5.0,
        ) {
            let c = GameConfig::new(sx, ss, 1.0, 1.0).unwrap();
            let j = cost(&EncoderParams::new(alpha, beta), &AttackerParams::new(kappa, sz), &c).unwrap();
            prop_assert!(j >= 0.0);
            prop_assert!(j <= sx * (1.0 + 1e-12));
        }

        #[test]
        fn cost_matches_direct_form(
            sx in positive(), ss in positive(),
            alpha in -3.0f64..3.0, beta in -3.0f64..3.0,
            kappa in 0.05f64..2.0, sz in 0.01f64..5.0,
        ) {
            let c = GameConfig::new(sx, ss, 1.0, 1.0).unwrap();
            let enc = EncoderParams::new(alpha, beta);
            let att = AttackerParams::new(kappa, sz);
            let j = cost(&enc, &att, &c).unwrap();
            prop_assert!((j - cost_direct(&enc, &att, &c)).abs() <= 1e-9 * sx);
        }

        #[test]
        fn erasing_attack_costs_prior(
            sx in positive(), alpha in -3.0f64..3.0, beta in -3.0f64..3.0, sz in 0.0f64..5.0,
        ) {
            let c = GameConfig::new(sx, 1.0, 1.0, 1.0).unwrap();
            let j = cost(&EncoderParams::new(alpha, beta), &AttackerParams::new(0.0, sz), &c).unwrap();
            prop_assert_eq!(j, sx);
        }

        #[test]
        fn even_in_alpha(
            sx in positive(), ss in positive(),
            alpha in -3.0f64..3.0, beta in -3.0f64..3.0,
            kappa in -2.0f64..2.0, sz in 0.0f64..5.0,
        ) {
            let c = GameConfig::new(sx, ss, 1.0, 1.0).unwrap();
            let att = AttackerParams::new(kappa, sz);
            let plus = EncoderParams::new(alpha, beta);
            let minus = EncoderParams::new(-alpha, beta);
            prop_assert_eq!(cost(&plus, &att, &c).unwrap(), cost(&minus, &att, &c).unwrap());
            prop_assert_eq!(encoder_distortion(&plus, &c), encoder_distortion(&minus, &c));
        }

        #[test]
        fn best_response_spends_budget(su2 in positive(), frac in 0.001f64..0.999) {
            let pa = su2 * frac;
            let att = best_attacker_response(su2, pa);
            prop_assert!(close(attacker_distortion(&att, su2), pa, 1e-12));
        }

        #[test]
        fn payoff_increasing_in_alpha_squared(
            sx in positive(), ss in positive(), pa in positive(), beta in 0.0f64..3.0,
        ) {
            // Fixed β, α² growing from the point where σu² clears P_A.
            let c = GameConfig::new(sx, ss, 1.0, pa).unwrap();
            let floor = ((pa - beta * beta * ss) / sx).max(0.0);
            let mut prev: Option<f64> = None;
            for i in 1..=50 {
                let a2 = floor + 0.1 * i as f64;
                let enc = EncoderParams::new(a2.sqrt(), beta);
                let su2 = marked_power(&enc, &c);
                prop_assume!(su2 > pa);
                let je = a2 * (su2 - pa) / (su2 * su2);
                if let Some(p) = prev {
                    prop_assert!(je > p, "alpha^2={a2}: {je} <= {p}");
                }
                prev = Some(je);
            }
        }

        #[test]
        fn cubic_changes_sign_on_feasible_interval(
            ss in positive(), pe in positive(), frac in 0.01f64..0.99,
        ) {
            let hi = (ss.sqrt() + pe.sqrt()).powi(2);
            let pa = frac * hi;
            let c = GameConfig::new(1.0, ss, pe, pa).unwrap();
            let lo = pa.max(c.min_marked_power());
            let scale = 1e-9 * hi.max(1.0).powi(3);
            let f_lo = cubic(lo, &c);
            let f_hi = cubic(hi, &c);
            prop_assert!(f_lo <= scale, "f(lo) = {f_lo}");
            prop_assert!(f_hi >= -scale, "f(hi) = {f_hi}");
        }
    }
}
