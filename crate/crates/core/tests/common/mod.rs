//! Shared generators and independent oracles for the integration tests.
//! Oracles here use plain `Vec<Vec<f64>>` arithmetic and never call into
//! the crate's numeric kernel.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use muxdyn::dynamics::OpinionVector;
use muxdyn::io::NetworkFile;
use muxdyn::network::{validate_assumptions, LayerId, MultiplexNetwork, Scope};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn load_fixture(name: &str) -> (MultiplexNetwork, OpinionVector) {
    NetworkFile::load(&fixture_path(name)).unwrap().to_model().unwrap()
}

/// Agent 0 leads; layer 1: 0→1→2; layer 2 all self-loops.
pub fn leader3() -> MultiplexNetwork {
    MultiplexNetwork::from_edges(&["1", "2", "3"], &[(0, 0), (0, 1), (1, 2)], &[(0, 0), (1, 1), (2, 2)]).unwrap()
}

/// Layer 1: δ1={1,3}, δ2={1}, δ3={2}; layer 2 all self-loops.
pub fn cycle3() -> MultiplexNetwork {
    MultiplexNetwork::from_edges(&["1", "2", "3"], &[(0, 0), (2, 0), (0, 1), (1, 2)], &[(0, 0), (1, 1), (2, 2)]).unwrap()
}

/// Random network satisfying the structural assumptions, with `1..=max_n`
/// agents. Roughly half have a union leader.
pub fn random_valid_network(rng: &mut StdRng, max_n: usize) -> MultiplexNetwork {
    let n = rng.random_range(1..=max_n);
    let leader_case = n == 1 || rng.random_bool(0.5);
    let root = rng.random_range(0..n);
    let mut layers = [BTreeSet::new(), BTreeSet::new()];

    // spanning tree out of the root, each edge on a random layer
    let mut order: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    order.shuffle(rng);
    let mut reached = vec![root];
    for v in order {
        let parent = *reached.choose(rng).unwrap();
        layers[rng.random_range(0..2)].insert((parent, v));
        reached.push(v);
    }

    let density = rng.random_range(0.0..0.35);
    for s in 0..n {
        for t in 0..n {
            if s != t && !(leader_case && t == root) && rng.random_bool(density) {
                layers[rng.random_range(0..2)].insert((s, t));
            }
        }
    }
    if !leader_case {
        let other = *(0..n).filter(|&v| v != root).collect::<Vec<_>>().choose(rng).unwrap();
        layers[rng.random_range(0..2)].insert((other, root));
    }

    let loop_p = rng.random_range(0.0..0.6);
    for layer in layers.iter_mut() {
        for v in 0..n {
            if rng.random_bool(loop_p) {
                layer.insert((v, v));
            }
        }
    }
    if leader_case {
        layers[0].insert((root, root));
        layers[1].insert((root, root));
    }
    // every agent needs a non-empty neighbor set on each layer
    for layer in layers.iter_mut() {
        for v in 0..n {
            if !layer.iter().any(|&(_, t)| t == v) {
                layer.insert((v, v));
            }
        }
    }

    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let build = |layers: &[BTreeSet<(usize, usize)>; 2]| {
        MultiplexNetwork::new(
            labels.clone(),
            muxdyn::network::Layer::new(n, layers[0].iter().copied()).unwrap(),
            muxdyn::network::Layer::new(n, layers[1].iter().copied()).unwrap(),
            2,
        )
        .unwrap()
    };
    if !leader_case {
        let net = build(&layers);
        let g = net.influence_graph(Scope::Layer1);
        for class in muxdyn::network::strongly_connected_components(&g, muxdyn::network::ClosedAlong::Forward) {
            if !class.members.iter().any(|&v| net.layer(LayerId::Layer1).has_self_loop(v)) {
                let v = *class.members.choose(rng).unwrap();
                layers[0].insert((v, v));
            }
        }
    }
    let net = build(&layers);
    let report = validate_assumptions(&net);
    assert!(report.is_valid(), "generator produced an invalid network: {}", report.summary());
    net
}

pub fn random_opinions(rng: &mut StdRng, n: usize) -> OpinionVector {
    OpinionVector::new((0..n).map(|_| rng.random_range(0.0..=10.0)).collect()).unwrap()
}

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- oracles

pub type Dense = Vec<Vec<f64>>;

pub fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let p = b[0].len();
    let mut out = vec![vec![0.0; p]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            for j in 0..p {
                out[i][j] += a[i][k] * bk[j];
            }
        }
    }
    out
}

/// `a^(2^k)` by `k` plain squarings.
pub fn dense_pow2(a: &Dense, k: u32) -> Dense {
    let mut m = a.clone();
    for _ in 0..k {
        m = dense_mul(&m, &m);
    }
    m
}

/// Equal-weight layer matrix built straight from neighbor sets.
pub fn dense_layer(net: &MultiplexNetwork, layer: LayerId) -> Dense {
    let n = net.n();
    (0..n)
        .map(|i| {
            let nb = net.layer(layer).in_neighbors(i);
            (0..n).map(|j| if nb.contains(&j) { 1.0 / nb.len() as f64 } else { 0.0 }).collect()
        })
        .collect()
}

/// `½(A₁+A₂)·A₁` from neighbor sets.
pub fn dense_two_step(net: &MultiplexNetwork) -> Dense {
    let a1 = dense_layer(net, LayerId::Layer1);
    let a2 = dense_layer(net, LayerId::Layer2);
    let avg: Dense = a1.iter().zip(&a2).map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| 0.5 * (x + y)).collect()).collect();
    dense_mul(&avg, &a1)
}

pub fn max_abs_diff(a: &Dense, b: &[Vec<f64>]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max)
}

/// Golden-section search for the minimizer of a unimodal `f` on `[lo, hi]`.
pub fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > tol {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

/// Characteristic polynomial coefficients `[1, c1, ..., cn]` of `det(λI − A)`
/// by Faddeev–LeVerrier.
pub fn char_poly(a: &Dense) -> Vec<f64> {
    let n = a.len();
    let mut coeffs = vec![1.0];
    let mut m: Dense = vec![vec![0.0; n]; n];
    let mut c = 1.0;
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{k−1}·I
        let mut next = dense_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += c;
        }
        m = next;
        let am = dense_mul(a, &m);
        let trace: f64 = (0..n).map(|i| am[i][i]).sum();
        c = -trace / k as f64;
        coeffs.push(c);
    }
    coeffs
}

/// All roots of a monic polynomial by Durand–Kerner iteration.
pub fn poly_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let eval = |z: Complex64| coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..5000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

/// Second-largest eigenvalue modulus of a stochastic matrix, from the
/// roots of its characteristic polynomial.
pub fn second_eigen_modulus(a: &Dense) -> f64 {
    let mut moduli: Vec<f64> = poly_roots(&char_poly(a)).iter().map(|z| z.norm()).collect();
    moduli.sort_by(|x, y| y.total_cmp(x));
    moduli.get(1).copied().unwrap_or(0.0)
}
