use softmark::suite::{golden_config, random_nontrivial_configs};
use softmark::verify::{
    grid_attacker_oracle, grid_encoder_oracle, lmmse_decoder, monte_carlo_cost,
    orthogonality_check, sample_moments, Z_GATE,
};
use softmark::{solve, GameConfig};

const SEED: u64 = 7;

#[test]
fn random_suite_monte_carlo_within_gate() {
    for (i, c) in random_nontrivial_configs(20, SEED).iter().enumerate() {
        let s = solve(c).unwrap();
        let mut r = monte_carlo_cost(&s.encoder, &s.attacker, c, 1_000_000, SEED + i as u64).unwrap();
        if !r.within(Z_GATE) {
            r = monte_carlo_cost(&s.encoder, &s.attacker, c, 1_000_000, SEED + 1000 + i as u64).unwrap();
        }
        assert!(r.within(Z_GATE), "config {i} {c:?}: {r:?}");
        assert!(r.standard_error > 0.0);
    }
}

#[test]
fn random_suite_decomposition_within_gate() {
    for (i, c) in random_nontrivial_configs(20, SEED).iter().enumerate() {
        let s = solve(c).unwrap();
        let r = orthogonality_check(&s.encoder, &s.attacker, c, 200_000, SEED + i as u64).unwrap();
        assert!(r.within(Z_GATE), "config {i}: {r:?}");
    }
}

#[test]
fn random_suite_grids_never_beat_closed_form() {
    for c in random_nontrivial_configs(20, SEED) {
        let s = solve(&c).unwrap();
        let a = grid_attacker_oracle(&s.encoder, &c, 400).unwrap();
        assert!(a.non_dominated(), "{c:?}: {a:?}");
        assert!(a.cell_offsets()[0] <= 1.0 + 1e-9, "{c:?}: {a:?}");
        let e = grid_encoder_oracle(&c, 10_000).unwrap();
        assert!(e.reduced.non_dominated() && e.parametric.non_dominated(), "{c:?}: {e:?}");
        assert!(e.reduced.argmax_within_cells(1.0) && e.parametric.argmax_within_cells(1.0));
    }
}

#[test]
fn attacker_grid_refines_toward_closed_form() {
    let c = golden_config();
    let s = solve(&c).unwrap();
    let dist = |n: usize| {
        let r = grid_attacker_oracle(&s.encoder, &c, n).unwrap();
        (r.best_point[0] - 0.5).hypot(r.best_point[1] - 0.5)
    };
    assert!(dist(1600) < dist(100));
    assert!(dist(1600) < 0.01);
}

#[test]
fn perturbed_decoder_gain_costs_more() {
    for c in [golden_config(), GameConfig::new(2.0, 5.0, 0.5, 1.5).unwrap()] {
        let s = solve(&c).unwrap();
        let g = lmmse_decoder(&s.encoder, &s.attacker, &c).unwrap().gain;
        let m = sample_moments(&s.encoder, &s.attacker, &c, 1_000_000, SEED).unwrap();
        let at_optimum = m.linear_decoder_cost(g);
        for delta in [0.05 * g, -0.05 * g] {
            assert!(m.linear_decoder_cost(g + delta) > at_optimum, "{c:?} delta {delta}");
        }
    }
}

#[test]
fn monte_carlo_is_seed_deterministic() {
    let c = golden_config();
    let s = solve(&c).unwrap();
    let a = monte_carlo_cost(&s.encoder, &s.attacker, &c, 100_000, 3).unwrap();
    let b = monte_carlo_cost(&s.encoder, &s.attacker, &c, 100_000, 3).unwrap();
    let other = monte_carlo_cost(&s.encoder, &s.attacker, &c, 100_000, 4).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.empirical_j, other.empirical_j);
}
