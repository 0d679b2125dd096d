use std::io::Write;
use std::time::Instant;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use urg_subgraphs::census::DegreeWindow;
use urg_subgraphs::degree_model::{build_powerlaw_sequence, DegreeSequence, PowerLawSpec};
use urg_subgraphs::distinguisher::{
    algorithm1, attempt_success_probability, window_centre_profile, AlgorithmConfig, EdgeModel,
};
use urg_subgraphs::limit_constants::{a_monte_carlo, expected_count, expected_count_direct};
use urg_subgraphs::optimizer::{grid_value_from_partition_optimum, optimize_grid};
use urg_subgraphs::pattern::connected_patterns;
use urg_subgraphs::samplers::{default_swap_budget, sample_irg, switch_chain_sample, KernelKind, WeightVector};
use urg_subgraphs::{
    brute_force_count, count_induced_exact, count_induced_windowed, fit_scaling, optimize_partitions, Graph, Pattern,
    Rational,
};

fn report(id: u32, pass: bool, detail: String) {
    let line = format!("criterion {id:>2}: {} | {detail}\n", if pass { "PASS" } else { "FAIL" });
    // bypasses the test harness capture so every line is visible
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(pass, "criterion {id} failed: {detail}");
}

fn sequence(n: usize, tau: f64) -> DegreeSequence {
    build_powerlaw_sequence(&PowerLawSpec::new(n, tau, 1.0).unwrap()).unwrap()
}

fn urg_sample(seq: &DegreeSequence, seed: u64) -> Graph {
    switch_chain_sample(seq, default_swap_budget(seq.edge_count()), seed).unwrap()
}

fn k24() -> Pattern {
    Pattern::complete_bipartite(2, 4).unwrap()
}

#[test]
fn criterion_01_k24_exponent() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut all_unique = true;
    for tau in [Rational::new(21, 10), Rational::new(5, 2), Rational::new(29, 10)] {
        let res = optimize_partitions(&k24(), tau);
        all_unique &= res.unique;
        let t = tau.to_f64().unwrap();
        let expected = (4.0 - 1.0 / (t - 1.0)) * (3.0 - t);
        worst = worst.max((res.exponent.to_f64().unwrap() - expected).abs());
        let float = optimize_partitions(&k24(), t);
        all_unique &= float.unique;
        worst = worst.max((float.exponent - expected).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    report(1, all_unique && worst < 1e-9 && secs < 1.0, format!("unique={all_unique} max_err={worst:.2e} {secs:.3}s"));
}

#[test]
fn criterion_02_urg_irg_gap() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut positive = true;
    for i in 1..=20 {
        let tau = Rational::new(42 + i, 21);
        let exponent = optimize_partitions(&k24(), tau).exponent;
        let three = Rational::from_integer(3);
        let two = Rational::from_integer(2);
        let one = Rational::from_integer(1);
        let gap = exponent - three * (three - tau);
        let expected = (three - tau) * (tau - two) / (tau - one);
        positive &= gap > Rational::from_integer(0);
        worst = worst.max((gap - expected).to_f64().unwrap().abs());
    }
    let secs = start.elapsed().as_secs_f64();
    report(2, positive && worst < 1e-9 && secs < 1.0, format!("20 tau points, max_err={worst:.2e} {secs:.3}s"));
}

#[test]
fn criterion_03_grid_partition_duality() {
    let start = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    for tau in [Rational::new(21, 10), Rational::new(5, 2), Rational::new(29, 10)] {
        for p in (3..=5).flat_map(|k| connected_patterns(k).unwrap()) {
            let b = optimize_partitions(&p, tau).b;
            let grid = optimize_grid(&p, tau);
            if grid.value != grid_value_from_partition_optimum(&p, tau, b) {
                failures.push(format!("value {:?} tau={tau}", p.edges()));
            }
            for alphas in &grid.maximizers {
                for v in 0..p.k() {
                    if (alphas[v] == Rational::from_integer(0)) != (p.h_degree(v) == 1) {
                        failures.push(format!("leaf rule {:?} tau={tau} {alphas:?}", p.edges()));
                    }
                }
            }
            checked += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        3,
        failures.is_empty() && checked == 3 * 29 && secs < 60.0,
        format!("{checked} (pattern, tau) cases, failures={failures:?} {secs:.1}s"),
    );
}

#[test]
fn criterion_04_census_oracle() {
    let start = Instant::now();
    let patterns: Vec<Pattern> = (3..=5).flat_map(|k| connected_patterns(k).unwrap()).collect();
    let mut mismatches = 0;
    let mut comparisons = 0;
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(5..=9);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.4) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, &edges).unwrap();
        for p in &patterns {
            comparisons += 1;
            if count_induced_exact(&g, p).unwrap().labeled_count != brute_force_count(&g, p).unwrap() {
                mismatches += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(4, mismatches == 0 && secs < 60.0, format!("{comparisons} comparisons, {mismatches} mismatches {secs:.1}s"));
}

#[test]
fn criterion_05_edge_probability_of_hubs() {
    let start = Instant::now();
    let seq = sequence(2000, 2.5);
    let swaps = 10 * seq.edge_count() as u64;
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let mut hits = [0u32; 3];
    let samples = 400u64;
    for seed in 0..samples {
        let g = switch_chain_sample(&seq, swaps, seed).unwrap();
        for (slot, &(u, v)) in pairs.iter().enumerate() {
            hits[slot] += g.has_edge(u, v) as u32;
        }
    }
    let d = seq.degrees();
    let total = seq.total_degree() as f64;
    let mut pass = true;
    let mut detail = Vec::new();
    for (slot, &(u, v)) in pairs.iter().enumerate() {
        let prod = (d[u] * d[v]) as f64;
        let predicted = prod / (total + prod);
        let freq = hits[slot] as f64 / samples as f64;
        pass &= (freq - predicted).abs() <= 0.05;
        detail.push(format!("({u},{v}) emp={freq:.4} pred={predicted:.4}"));
    }
    let secs = start.elapsed().as_secs_f64();
    report(5, pass && secs <= 900.0, format!("{} {secs:.1}s", detail.join(" ")));
}

fn mean_triangle_counts(n: usize, samples: u64) -> (f64, f64, f64) {
    let seq = sequence(n, 2.5);
    let window = DegreeWindow::new(vec![0.5; 3], 0.25, seq.mean_degree()).unwrap();
    let t = Pattern::triangle();
    let (mut total, mut ratio) = (0.0, 0.0);
    for seed in 0..samples {
        let g = urg_sample(&seq, seed);
        let all = count_induced_exact(&g, &t).unwrap().labeled_count as f64;
        let inside = count_induced_windowed(&g, &t, &window).unwrap().labeled_count as f64;
        total += all;
        ratio += if all > 0.0 { inside / all } else { 0.0 };
    }
    (total / samples as f64, ratio / samples as f64, seq.mean_degree())
}

#[test]
fn criterion_06_triangle_scaling() {
    let start = Instant::now();
    let points: Vec<(f64, f64)> =
        [1000usize, 2000, 4000, 8000, 16000].iter().map(|&n| (n as f64, mean_triangle_counts(n, 10).0)).collect();
    let slope = fit_scaling(&points).unwrap();
    let secs = start.elapsed().as_secs_f64();
    report(6, (slope - 0.75).abs() <= 0.2 && secs <= 1800.0, format!("slope={slope:.4} points={points:?} {secs:.1}s"));
}

#[test]
fn criterion_07_triangle_limit_constant() {
    let start = Instant::now();
    let n = 16000;
    let (mean_count, _, mu) = mean_triangle_counts(n, 10);
    let t = Pattern::triangle();
    let a = a_monte_carlo(&t, 2.5, 1.0, mu, 10_000_000, 1).unwrap();
    let b = a_monte_carlo(&t, 2.5, 1.0, mu, 10_000_000, 2).unwrap();
    let rel = a.stderr / a.mean;
    let joint = (a.stderr.powi(2) + b.stderr.powi(2)).sqrt();
    let agree = (a.mean - b.mean).abs() <= 3.0 * joint;
    let empirical = mean_count / (n as f64).powf(0.75);
    let factor = (empirical / a.mean).max(a.mean / empirical);
    let secs = start.elapsed().as_secs_f64();
    report(
        7,
        rel < 0.01 && agree && factor <= 2.5 && secs <= 600.0,
        format!(
            "A={:.4}±{:.4} second seed {:.4}±{:.4} rel={rel:.4} empirical={empirical:.4} factor={factor:.3} {secs:.1}s",
            a.mean, a.stderr, b.mean, b.stderr
        ),
    );
}

#[test]
fn criterion_08_distinguisher_separation() {
    let start = Instant::now();
    let (n, tau) = (100_000usize, 2.6);
    let seq = sequence(n, tau);
    let weights = WeightVector::from_degrees(&seq);
    let trials = 20u64;
    let mut found = [0u32; 3];
    for seed in 0..trials {
        let cfg = AlgorithmConfig::new(tau, seed);
        let graphs = [
            urg_sample(&seq, seed),
            sample_irg(&weights, KernelKind::Exponential, seed),
            sample_irg(&weights, KernelKind::ChungLu, seed),
        ];
        for (slot, g) in graphs.iter().enumerate() {
            found[slot] += algorithm1(g, &cfg).unwrap().found() as u32;
        }
    }
    let profile = window_centre_profile(n, tau);
    let total = seq.total_degree() as f64;
    let urg = attempt_success_probability(EdgeModel::Urg, &profile, total).unwrap();
    let exp = attempt_success_probability(EdgeModel::Kernel(KernelKind::Exponential), &profile, total).unwrap();
    let ratio = urg / exp;
    let secs = start.elapsed().as_secs_f64();
    let pass = found[0] > found[1] && found[0] > found[2] && ratio >= 5.0 && secs <= 7200.0;
    report(
        8,
        pass,
        format!(
            "found URG={}/{trials} IRG-exp={}/{trials} IRG-CL={}/{trials} analytic ratio={ratio:.2} {secs:.1}s",
            found[0], found[1], found[2]
        ),
    );
}

#[test]
fn criterion_09_linear_runtime() {
    let start = Instant::now();
    let tau = 2.6;
    let median_time = |n: usize| {
        let seq = sequence(n, tau);
        let g = sample_irg(&WeightVector::from_degrees(&seq), KernelKind::Exponential, 3);
        let mut times: Vec<f64> = (0..5u64)
            .map(|seed| {
                let t = Instant::now();
                let verdict = algorithm1(&g, &AlgorithmConfig::new(tau, seed)).unwrap();
                std::hint::black_box(verdict);
                t.elapsed().as_secs_f64()
            })
            .collect();
        times.sort_by(f64::total_cmp);
        times[2]
    };
    let small = median_time(100_000);
    let large = median_time(200_000);
    let ratio = large / small;
    let secs = start.elapsed().as_secs_f64();
    report(9, ratio <= 2.6 && secs <= 1800.0, format!("t(1e5)={small:.4}s t(2e5)={large:.4}s ratio={ratio:.3} {secs:.1}s"));
}

#[test]
fn criterion_10_windowed_share_grows() {
    let start = Instant::now();
    let ratios: Vec<f64> = [4000usize, 8000, 16000].iter().map(|&n| mean_triangle_counts(n, 10).1).collect();
    let monotone = ratios.windows(2).all(|w| w[1] >= w[0]);
    let secs = start.elapsed().as_secs_f64();
    report(10, monotone && secs <= 1800.0, format!("windowed/total={ratios:?} {secs:.1}s"));
}

#[test]
fn criterion_11_expected_count_oracle() {
    let start = Instant::now();
    let patterns: Vec<Pattern> = (3..=5).flat_map(|k| connected_patterns(k).unwrap()).collect();
    let mut worst = 0.0f64;
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(10..=50);
        let seq = sequence(n, rng.gen_range(2.1..2.9));
        // the vertex-level reference costs n^k terms
        let max_k = if n <= 25 { 5 } else { 4 };
        for p in patterns.iter().filter(|p| p.k() <= max_k) {
            let fast: f64 = expected_count(&seq, p, None).unwrap();
            let slow: f64 = expected_count_direct(&seq, p, None).unwrap();
            worst = worst.max((fast - slow).abs() / slow.abs().max(1.0));
        }
    }
    let exact_ok = worst <= 1e-12;

    let seq = sequence(2000, 2.5);
    let t = Pattern::triangle();
    let predicted: f64 = expected_count(&seq, &t, None).unwrap();
    let counts: Vec<f64> =
        (0..200u64).map(|seed| count_induced_exact(&urg_sample(&seq, seed), &t).unwrap().labeled_count as f64).collect();
    let mean = counts.iter().sum::<f64>() / counts.len() as f64;
    let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (counts.len() - 1) as f64;
    let se = (var / counts.len() as f64).sqrt();
    let z = (mean - predicted) / se;
    let secs = start.elapsed().as_secs_f64();
    report(
        11,
        exact_ok && z.abs() <= 3.0 && secs <= 1200.0,
        format!("compressed vs direct max_rel={worst:.2e}; empirical={mean:.2}±{se:.2} expected={predicted:.2} z={z:.2} {secs:.1}s"),
    );
}
