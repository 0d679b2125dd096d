use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use urg_subgraphs::census::DegreeWindow;
use urg_subgraphs::degree_model::{build_powerlaw_sequence, DegreeSequence, PowerLawSpec};
use urg_subgraphs::limit_constants::{a_monte_carlo, expected_count, expected_count_direct};
use urg_subgraphs::optimizer::{grid_objective, grid_value_from_partition_optimum, optimize_grid};
use urg_subgraphs::pattern::connected_patterns;
use urg_subgraphs::samplers::{kernel_probability, sample_irg, KernelKind, WeightVector};
use urg_subgraphs::{
    brute_force_count, count_induced_exact, count_induced_windowed, optimize_partitions, Graph, Pattern,
    PartitionAssignment, Rational,
};

fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn relabel_graph(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::new(g.n(), &edges).unwrap()
}

fn small_patterns() -> Vec<Pattern> {
    (3..=5).flat_map(|k| connected_patterns(k).unwrap()).collect()
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn census_matches_brute_force(n in 5usize..=9, p in 0.2f64..0.8, seed in any::<u64>(), idx in 0usize..29) {
        let g = random_graph(n, p, seed);
        let pattern = &small_patterns()[idx];
        prop_assert_eq!(count_induced_exact(&g, pattern).unwrap().labeled_count, brute_force_count(&g, pattern).unwrap());
    }

    #[test]
    fn counts_invariant_under_graph_relabeling(seed in any::<u64>(), perm in perm_strategy(9), idx in 0usize..29) {
        let g = random_graph(9, 0.45, seed);
        let h = relabel_graph(&g, &perm);
        let pattern = &small_patterns()[idx];
        prop_assert_eq!(
            count_induced_exact(&g, pattern).unwrap().labeled_count,
            count_induced_exact(&h, pattern).unwrap().labeled_count
        );
    }

    #[test]
    fn counts_invariant_under_pattern_relabeling(seed in any::<u64>(), perm in perm_strategy(5), idx in 8usize..29) {
        let g = random_graph(10, 0.4, seed);
        let pattern = &small_patterns()[idx];
        let relabeled = pattern.relabel(&perm).unwrap();
        prop_assert_eq!(relabeled.automorphism_count(), pattern.automorphism_count());
        prop_assert_eq!(
            count_induced_exact(&g, pattern).unwrap().labeled_count,
            count_induced_exact(&g, &relabeled).unwrap().labeled_count
        );
    }

    #[test]
    fn labeled_count_is_automorphisms_times_occurrences(seed in any::<u64>(), idx in 0usize..29) {
        let g = random_graph(9, 0.5, seed);
        let pattern = &small_patterns()[idx];
        let res = count_induced_exact(&g, pattern).unwrap();
        prop_assert!(res.orbit_count.is_integer());
        prop_assert_eq!(res.orbit_count.to_integer() * pattern.automorphism_count(), res.labeled_count);
    }

    #[test]
    fn windowed_never_exceeds_total(seed in any::<u64>(), eps in 0.05f64..0.9, a in 0.0f64..0.7) {
        let g = random_graph(40, 0.2, seed);
        let t = Pattern::triangle();
        let w = DegreeWindow::new(vec![a, 0.5, 1.0 - a], eps, g.mean_degree()).unwrap();
        let windowed = count_induced_windowed(&g, &t, &w).unwrap().labeled_count;
        prop_assert!(windowed <= count_induced_exact(&g, &t).unwrap().labeled_count);
    }

    #[test]
    fn compressed_expected_count_matches_direct(seed in any::<u64>(), n in 6usize..=50, idx in 0usize..8) {
        let g = random_graph(n, 0.3, seed);
        let mut degrees = g.degrees();
        if degrees.iter().all(|&d| d == 0) {
            return Ok(());
        }
        for d in degrees.iter_mut() {
            *d = (*d).max(1);
        }
        if degrees.iter().sum::<usize>() % 2 == 1 {
            return Ok(());
        }
        let Ok(seq) = DegreeSequence::from_degrees(degrees) else { return Ok(()) };
        let pattern = &small_patterns()[idx];
        let a: f64 = expected_count(&seq, pattern, None).unwrap();
        let b: f64 = expected_count_direct(&seq, pattern, None).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{} vs {}", a, b);
    }
}

#[test]
fn duality_holds_on_catalog() {
    for tau in [Rational::new(21, 10), Rational::new(5, 2), Rational::new(29, 10), Rational::new(7, 3)] {
        for p in small_patterns() {
            let part = optimize_partitions(&p, tau);
            let grid = optimize_grid(&p, tau);
            assert_eq!(grid.value, grid_value_from_partition_optimum(&p, tau, part.b), "{:?}", p.edges());
        }
    }
}

#[test]
fn fine_grid_never_beats_four_value_grid() {
    for tau in [2.2f64, 2.5, 2.8] {
        let top = 1.0 / (tau - 1.0);
        let steps = (top / 0.02).floor() as usize;
        let mut fine: Vec<f64> = (0..=steps).map(|i| i as f64 * 0.02).collect();
        if *fine.last().unwrap() < top {
            fine.push(top);
        }
        for p in (3..=4).flat_map(|k| connected_patterns(k).unwrap()) {
            let best = optimize_grid(&p, tau).value;
            let k = p.k();
            let mut alphas = vec![0.0; k];
            let total = fine.len().pow(k as u32);
            for code in 0..total {
                let mut rest = code;
                for a in alphas.iter_mut() {
                    *a = fine[rest % fine.len()];
                    rest /= fine.len();
                }
                let v = grid_objective(&p, &alphas, tau).unwrap();
                assert!(v <= best + 1e-9, "{:?} {alphas:?}: {v} > {best}", p.edges());
            }
        }
    }
}

#[test]
fn ties_are_reported() {
    let tau = Rational::new(5, 2);
    let path = Pattern::path(4).unwrap();
    let res = optimize_partitions(&path, tau);
    assert!(!res.unique);
    assert_eq!(res.b, Rational::from_integer(0));
    for part in [
        PartitionAssignment::new(vec![2], vec![1], vec![]),
        PartitionAssignment::new(vec![1], vec![2], vec![]),
        PartitionAssignment::all_sqrt(&path),
    ] {
        assert!(res.maximizers.contains(&part), "{part:?}");
    }

    let diamond = Pattern::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
    let res = optimize_partitions(&diamond, tau);
    assert!(!res.unique);
    assert_eq!(res.maximizers.len(), 2);
    assert!(res.maximizers.contains(&PartitionAssignment::new(vec![2, 3], vec![0, 1], vec![])));
    assert!(res.maximizers.contains(&PartitionAssignment::all_sqrt(&diamond)));
}

#[test]
fn six_vertex_example_optimum() {
    // a..f = 0..5; edges a-b, c-a, d-b, c-e, c-f, b-f, c-d
    let p = Pattern::new(6, &[(0, 1), (2, 0), (3, 1), (2, 4), (2, 5), (1, 5), (2, 3)]).unwrap();
    assert_eq!((p.k1(), p.k2plus()), (1, 5));
    let expected = [
        (Rational::new(21, 10), Rational::new(1, 11), Rational::new(307, 110)),
        (Rational::new(5, 2), Rational::new(1, 3), Rational::new(11, 6)),
        (Rational::new(29, 10), Rational::new(9, 19), Rational::new(147, 190)),
    ];
    for (tau, b, exponent) in expected {
        let res = optimize_partitions(&p, tau);
        assert!(res.unique);
        assert_eq!(res.b, b);
        assert_eq!(res.exponent, exponent);
        assert_eq!(res.best(), &PartitionAssignment::new(vec![0, 3, 5], vec![1, 2], vec![]));
    }
}

#[test]
fn skip_sampler_matches_kernel_frequencies() {
    let n = 30;
    let weights: Vec<f64> = (1..=n).map(|i| 12.0 * (i as f64).powf(-0.6)).collect();
    let w = WeightVector::new(weights.clone()).unwrap();
    let trials = 10_000u64;
    for kind in KernelKind::ALL {
        let mut hits = vec![0u32; n * n];
        for seed in 0..trials {
            let g = sample_irg(&w, kind, seed);
            for (u, v) in g.edges() {
                hits[u * n + v] += 1;
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                let p: f64 = kernel_probability(kind, weights[u], weights[v], w.total()).unwrap();
                let freq = hits[u * n + v] as f64 / trials as f64;
                let sd = (p * (1.0 - p) / trials as f64).sqrt().max(1e-4);
                assert!((freq - p).abs() <= 4.0 * sd, "{kind} ({u},{v}): {freq} vs {p}");
            }
        }
    }
}

#[test]
fn monte_carlo_stderr_halves_when_samples_quadruple() {
    let t = Pattern::triangle();
    let small = a_monte_carlo(&t, 2.5, 1.0, 3.0, 250_000, 11).unwrap();
    let large = a_monte_carlo(&t, 2.5, 1.0, 3.0, 1_000_000, 12).unwrap();
    let ratio = large.stderr / small.stderr;
    assert!((ratio - 0.5).abs() <= 0.1, "{ratio}");
}

#[test]
fn mean_degree_converges() {
    let mu: Vec<f64> = [1_000usize, 2_000, 10_000, 20_000, 100_000, 200_000]
        .iter()
        .map(|&n| build_powerlaw_sequence(&PowerLawSpec::new(n, 2.5, 1.0).unwrap()).unwrap().mean_degree())
        .collect();
    let gaps: Vec<f64> = mu.chunks(2).map(|pair| (pair[1] - pair[0]).abs()).collect();
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
}

#[test]
fn expected_clique_count_grows_with_degree() {
    let base = vec![3, 3, 2, 2, 2, 2];
    let seq = DegreeSequence::from_degrees(base.clone()).unwrap();
    let before: f64 = expected_count(&seq, &Pattern::triangle(), None).unwrap();
    for v in 0..base.len() {
        for u in v + 1..base.len() {
            let mut bumped = base.clone();
            bumped[v] += 1;
            bumped[u] += 1;
            let Ok(seq) = DegreeSequence::from_degrees(bumped) else { continue };
            let after: f64 = expected_count(&seq, &Pattern::triangle(), None).unwrap();
            assert!(after > before, "bump ({v},{u}): {after} <= {before}");
        }
    }
}

#[test]
fn exact_and_float_exponents_agree_on_catalog() {
    for p in small_patterns() {
        let exact = optimize_partitions(&p, Rational::new(5, 2));
        let float = optimize_partitions(&p, 2.5f64);
        assert!((exact.exponent.to_f64().unwrap() - float.exponent).abs() < 1e-12);
        assert_eq!(exact.unique, float.unique);
    }
}
