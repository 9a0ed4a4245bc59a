mod common;

use common::*;
use muxdyn::dynamics::{
    best_response, bound_value, calibrate_u, cost_at, simulate_against, step, BoundParameters, OpinionVector, SimConfig,
};
use muxdyn::markov::{
    analyze, canonical_form, contraction_factor, limit_matrix, predicted_fixed_point, two_step_matrix, ConsensusMode,
};
use muxdyn::network::{LayerId, Scope};
use muxdyn::stochastic::{
    layer_adjacency, multiplex_adjacency, spectral_radius, vector_norm, MatrixKind, MatrixNorm, VectorNorm,
};
use proptest::prelude::*;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg(256))]

    #[test]
    fn union_neighbors_and_leaders(seed in any::<u64>()) {
        let net = random_valid_network(&mut seeded(seed), 10);
        for i in 0..net.n() {
            let union = net.neighbor_set(i, Scope::Union).unwrap();
            let l1 = net.neighbor_set(i, Scope::Layer1).unwrap();
            let l2 = net.neighbor_set(i, Scope::Layer2).unwrap();
            prop_assert_eq!(union, l1.union(&l2).copied().collect());
        }
        let l1 = net.leaders(Scope::Layer1);
        let l2 = net.leaders(Scope::Layer2);
        for leader in net.leaders(Scope::Union) {
            prop_assert!(l1.contains(&leader) && l2.contains(&leader));
        }
    }

    #[test]
    fn symmetrize_keeps_leader_and_is_idempotent(seed in any::<u64>()) {
        let net = random_valid_network(&mut seeded(seed), 10);
        let sym = net.symmetrize();
        prop_assert_eq!(&sym.symmetrize(), &sym);
        if let [leader] = net.leaders(Scope::Union).as_slice() {
            prop_assert_eq!(
                sym.neighbor_set(*leader, Scope::Union).unwrap(),
                net.neighbor_set(*leader, Scope::Union).unwrap()
            );
            prop_assert_eq!(sym.leaders(Scope::Union), vec![*leader]);
        }
    }

    #[test]
    fn adjacency_rows_are_stochastic(seed in any::<u64>(), t in 1usize..20) {
        let net = random_valid_network(&mut seeded(seed), 12);
        for layer in [LayerId::Layer1, LayerId::Layer2] {
            let a = layer_adjacency(&net, layer).unwrap();
            prop_assert_eq!(a.kind(), MatrixKind::RowStochastic);
            for s in a.row_sums() {
                prop_assert!((s - 1.0).abs() < 1e-12);
            }
        }
        let at = multiplex_adjacency(&net, t).unwrap();
        prop_assert_eq!(at.kind(), MatrixKind::RowStochastic);
        if t % 2 == 1 {
            prop_assert_eq!(at, layer_adjacency(&net, LayerId::Layer1).unwrap());
        }
    }

    #[test]
    fn best_response_equals_dynamics_row(seed in any::<u64>(), t in 1usize..5) {
        let mut rng = seeded(seed);
        let net = random_valid_network(&mut rng, 10);
        let x = random_opinions(&mut rng, net.n());
        let next = step(&net, &x, t).unwrap();
        for i in 0..net.n() {
            let br = best_response(&net, &x, i, t).unwrap();
            prop_assert!((br - next.values()[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn hull_and_fixed_point(seed in any::<u64>(), t in 1usize..30, c in 0.0f64..=10.0) {
        let mut rng = seeded(seed);
        let net = random_valid_network(&mut rng, 10);
        let x = random_opinions(&mut rng, net.n());
        let y = step(&net, &x, t).unwrap();
        prop_assert!(y.min() >= x.min() - 1e-12 && y.max() <= x.max() + 1e-12);
        let flat = OpinionVector::constant(net.n(), c).unwrap();
        for (a, b) in step(&net, &flat, t).unwrap().values().iter().zip(flat.values()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }
}

/// Networks for which the analysis goes through (single aperiodic closed class).
fn analyzable(seed: u64) -> Option<(muxdyn::network::MultiplexNetwork, OpinionVector)> {
    let mut rng = seeded(seed);
    let net = random_valid_network(&mut rng, 10);
    let x0 = random_opinions(&mut rng, net.n());
    analyze(&net, x0.values()).ok().map(|_| (net, x0))
}

proptest! {
    #![proptest_config(cfg(128))]

    #[test]
    fn canonical_form_invariants(seed in any::<u64>()) {
        let Some((net, x0)) = analyzable(seed) else { return Ok(()); };
        let c = two_step_matrix(&net).unwrap();
        let cf = canonical_form(&c).unwrap();
        prop_assert_eq!(cf.reassemble(), c.clone());
        if cf.q.rows() > 0 {
            prop_assert!(spectral_radius(&cf.q).unwrap() < 1.0);
            prop_assert_eq!(cf.q.kind(), MatrixKind::Substochastic);
        }
        for i in 0..cf.r.rows() {
            let s: f64 = cf.r.row(i).iter().chain(cf.q.row(i)).sum();
            prop_assert!((s - 1.0).abs() < 1e-12);
        }
        let l = limit_matrix(&cf).unwrap();
        let first = l.row(0).to_vec();
        prop_assert!((first.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        prop_assert!(first.iter().all(|&w| w >= 0.0));
        for i in 1..l.rows() {
            prop_assert_eq!(l.row(i), first.as_slice());
        }

        // brute-force lim C^t x0
        let dense = dense_pow2(&c.to_rows(), 20);
        let fp = predicted_fixed_point(&cf, x0.values()).unwrap();
        for (i, row) in dense.iter().enumerate() {
            let v: f64 = row.iter().zip(x0.values()).map(|(a, b)| a * b).sum();
            prop_assert!((v - fp.x_bar[i]).abs() < 1e-8);
        }
        let lo = cf.closed_class.iter().map(|&i| x0.values()[i]).fold(f64::INFINITY, f64::min);
        let hi = cf.closed_class.iter().map(|&i| x0.values()[i]).fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(fp.consensus_value() >= lo - 1e-12 && fp.consensus_value() <= hi + 1e-12);
        if fp.mode == ConsensusMode::Leader {
            let leader = cf.closed_class[0];
            prop_assert!(fp.x_bar.iter().all(|&v| v == x0.values()[leader]));
        }
    }

    #[test]
    fn simulation_agrees_with_analysis_and_bound_dominates(seed in any::<u64>()) {
        let Some((net, x0)) = analyzable(seed) else { return Ok(()); };
        let report = analyze(&net, x0.values()).unwrap();
        let tol = 1e-9;
        let mut tr = simulate_against(&net, &x0, &SimConfig { t_max: 20_000, tol }, Some(&report.fixed_point)).unwrap();
        prop_assert!(tr.converged_at.is_some());
        for (a, b) in tr.last().values().iter().zip(&report.fixed_point) {
            prop_assert!((a - b).abs() < 10.0 * tol);
        }
        let err = tr.err_series.clone().unwrap();
        if report.q > 0.0 {
            let cal = calibrate_u(&x0, &report.fixed_point, &err, report.q, report.a1_norm1).unwrap();
            let norm = vector_norm(x0.values(), VectorNorm::Two);
            let bp = BoundParameters::new(cal.u_min_dominating, report.q, norm, report.a1_norm1).unwrap();
            tr.attach_bound(&bp);
            for (t, e) in err.iter().enumerate() {
                prop_assert!(*e <= bound_value(&bp, t) * (1.0 + 1e-12));
            }
        }
    }
}

#[test]
fn golden_section_oracle_agrees_with_best_response() {
    let mut rng = seeded(7);
    for _ in 0..50 {
        let net = random_valid_network(&mut rng, 8);
        let x = random_opinions(&mut rng, net.n());
        for t in [1, 2] {
            for i in 0..net.n() {
                let oracle = golden_section(|y| cost_at(&net, &x, i, t, y).unwrap(), 0.0, 10.0, 1e-10);
                assert!((oracle - best_response(&net, &x, i, t).unwrap()).abs() < 1e-6);
            }
        }
    }
}

#[test]
fn cycle_fixture_q_matches_characteristic_cubic() {
    // det(λI − C) = (λ − 1)(λ² + 0.625λ + 0.125): complex pair with |λ|² = 0.125
    let cf = canonical_form(&two_step_matrix(&cycle3()).unwrap()).unwrap();
    let coeffs = char_poly(&two_step_matrix(&cycle3()).unwrap().to_rows());
    let want = [1.0, -0.375, -0.5, -0.125];
    for (c, w) in coeffs.iter().zip(want) {
        assert!((c - w).abs() < 1e-12, "{coeffs:?}");
    }
    let q = contraction_factor(&cf).unwrap();
    assert!((q - 0.125f64.sqrt()).abs() < 1e-5, "{q}");
}

fn decay_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn powers_of_two_step_matrix_decay_at_rate_q() {
    for (name, net) in [
        ("cycle3", cycle3()),
        ("leader-net", load_fixture("leader-net.json").0),
        ("cycle-net", load_fixture("cycle-net.json").0),
    ] {
        let c = two_step_matrix(&net).unwrap();
        let cf = canonical_form(&c).unwrap();
        let q = contraction_factor(&cf).unwrap();
        let l = limit_matrix(&cf).unwrap();
        let mut pow = c.clone();
        let mut pts = Vec::new();
        for t in 1..200 {
            let gap = pow.sub(&l).unwrap().induced_norm(MatrixNorm::Inf);
            if gap < 1e-12 {
                break;
            }
            pts.push((t as f64, gap.ln()));
            pow = pow.matmul(&c).unwrap();
        }
        let tail = &pts[pts.len() / 2..];
        let slope = decay_slope(tail);
        assert!(slope <= q.ln() + 0.05, "{name}: slope {slope} vs log q {}", q.ln());
    }
}

#[test]
fn leader_fixture_bound_vanishes_after_two_steps() {
    let net = leader3();
    let x0 = OpinionVector::new(vec![4.0, 2.0, 0.0]).unwrap();
    let report = analyze(&net, x0.values()).unwrap();
    assert_eq!(report.q, 0.0);
    let tr = simulate_against(&net, &x0, &SimConfig::default(), Some(&report.fixed_point)).unwrap();
    let cal = calibrate_u(&x0, &report.fixed_point, tr.err_series.as_ref().unwrap(), 0.0, report.a1_norm1).unwrap();
    let bp = BoundParameters::new(cal.u_min_dominating, 0.0, vector_norm(x0.values(), VectorNorm::Two), report.a1_norm1)
        .unwrap();
    assert!(bound_value(&bp, 0) >= 4.0 && bound_value(&bp, 1) >= 2.0);
    assert!((2..10).all(|t| bound_value(&bp, t) == 0.0));
}
