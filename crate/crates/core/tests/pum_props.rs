mod common;

use common::*;
use gbf_pum::clustering::Partition;
use gbf_pum::gbf::{gbf_interpolate, GbfSpec, SampleSet};
use gbf_pum::graph::{Graph, LaplacianKind};
use gbf_pum::pum::{enlarge_cover, pou_weights, pum_interpolate, Cover, PartitionOfUnity};
use gbf_pum::spectral::eigendecompose;
use gbf_pum::Error;
use proptest::prelude::*;
use rand::Rng;

fn sharp() -> GbfSpec {
    GbfSpec::variational_spline(1e-3, 2.0)
}

fn cover_and_weights(g: &Graph, labels: &[usize], radius: usize) -> (Partition, Cover, PartitionOfUnity) {
    let p = Partition::from_labels(labels);
    let cover = enlarge_cover(g, &p, radius).unwrap();
    let pou = pou_weights(&cover);
    (p, cover, pou)
}

/// Graph, labels, samples and a radius for end-to-end runs.
fn arb_problem(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>, SampleSet, usize)> {
    (arb_seeded_graph(2, max_n, false), any::<u64>(), 0usize..=3).prop_map(|(g, seed, radius)| {
        let n = g.node_count();
        let mut r = rng(seed);
        let labels = random_labels(n, 6, &mut r);
        let count = r.random_range(1..=n);
        let nodes = random_nodes(n, count, &mut r);
        let values = nodes.iter().map(|_| r.random_range(-1.0..1.0)).collect();
        (g, labels, SampleSet::new(nodes, values, n).unwrap(), radius)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weights_form_a_partition_of_unity((g, labels) in arb_labeled_graph(1, 40, 6), radius in prop::sample::select(vec![0usize, 1, 2, 5])) {
        let n = g.node_count();
        let (p, cover, pou) = cover_and_weights(&g, &labels, radius);
        let fw = floyd_warshall(&g);
        let mut covered = vec![false; n];
        for j in 0..cover.len() {
            let core: Vec<usize> = (0..n).filter(|&v| p.label(v) == j).collect();
            let ball: Vec<usize> = (0..n)
                .filter(|&v| core.iter().any(|&c| fw[c][v].is_some_and(|d| d <= radius)))
                .collect();
            prop_assert_eq!(cover.subdomain(j), ball.as_slice());
            prop_assert!(core.iter().all(|&c| cover.contains(j, c)));
            for &v in cover.subdomain(j) {
                covered[v] = true;
            }
        }
        prop_assert!(covered.iter().all(|&c| c));
        for v in 0..n {
            let mut sum = 0.0;
            for j in 0..cover.len() {
                let phi = pou.weight(j)[v];
                prop_assert!(phi >= 0.0);
                prop_assert!(phi == 0.0 || cover.contains(j, v));
                sum += phi;
            }
            prop_assert!((sum - 1.0).abs() <= 1e-12);
        }
        if radius == 0 {
            for v in 0..n {
                for j in 0..cover.len() {
                    prop_assert_eq!(pou.weight(j)[v], if p.label(v) == j { 1.0 } else { 0.0 });
                }
            }
        }
    }

    #[test]
    fn blend_interpolates_every_sample((g, labels, samples, radius) in arb_problem(150)) {
        let (_, cover, pou) = cover_and_weights(&g, &labels, radius);
        let out = pum_interpolate(&g, &cover, &pou, sharp(), &samples).unwrap();
        let tol = 1e-8 * samples.max_abs_value().max(1.0);
        for (&w, &x) in samples.nodes().iter().zip(samples.values()) {
            prop_assert!((out.signal[w] - x).abs() <= tol);
        }
        prop_assert_eq!(out.max_jitter, 0.0);
    }

    #[test]
    fn one_subdomain_is_plain_interpolation((g, _labels, samples, radius) in arb_problem(100)) {
        let n = g.node_count();
        let (_, cover, pou) = cover_and_weights(&g, &vec![0; n], radius);
        let out = pum_interpolate(&g, &cover, &pou, sharp(), &samples).unwrap();
        let b = eigendecompose(&g.laplacian(LaplacianKind::Normalized)).unwrap();
        let direct = gbf_interpolate(&b, sharp(), &samples).unwrap();
        prop_assert!(max_abs_diff(&out.signal, &direct.signal) <= 1e-10);
    }

    #[test]
    fn changing_a_sample_stays_local((g, labels, samples, radius) in arb_problem(80), pick in any::<prop::sample::Index>()) {
        let (_, cover, pou) = cover_and_weights(&g, &labels, radius);
        let before = pum_interpolate(&g, &cover, &pou, sharp(), &samples).unwrap();
        let i = pick.index(samples.len());
        let w = samples.nodes()[i];
        let mut values = samples.values().to_vec();
        values[i] += 1.0;
        let moved = SampleSet::new(samples.nodes().to_vec(), values, g.node_count()).unwrap();
        let after = pum_interpolate(&g, &cover, &pou, sharp(), &moved).unwrap();
        for v in 0..g.node_count() {
            let reachable = (0..cover.len()).any(|j| pou.weight(j)[v] > 0.0 && cover.contains(j, w));
            if !reachable {
                prop_assert_eq!(before.signal[v], after.signal[v], "node {} moved", v);
            }
        }
    }

    #[test]
    fn thread_count_does_not_change_bits((g, labels, samples, radius) in arb_problem(80)) {
        let (_, cover, pou) = cover_and_weights(&g, &labels, radius);
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| pum_interpolate(&g, &cover, &pou, sharp(), &samples).unwrap())
        };
        let one = run(1);
        let many = run(4);
        let a: Vec<u64> = one.signal.iter().map(|x| x.to_bits()).collect();
        let b: Vec<u64> = many.signal.iter().map(|x| x.to_bits()).collect();
        prop_assert_eq!(a, b);
    }
}

fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

#[test]
fn six_node_path_matches_hand_blend() {
    let g = path(6);
    let (_, cover, pou) = cover_and_weights(&g, &[0, 0, 0, 1, 1, 1], 1);
    assert_eq!(cover.subdomain(0), &[0, 1, 2, 3]);
    assert_eq!(cover.subdomain(1), &[2, 3, 4, 5]);
    let phi1 = [1.0, 1.0, 2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0];
    for v in 0..6 {
        assert!((pou.weight(0)[v] - phi1[v]).abs() <= 1e-15);
        assert!((pou.weight(1)[v] - (1.0 - phi1[v])).abs() <= 1e-15);
    }

    let (x0, x3) = (1.0, -2.0);
    let samples = SampleSet::new(vec![0, 3], vec![x0, x3], 6).unwrap();
    let out = pum_interpolate(&g, &cover, &pou, GbfSpec::variational_spline(1.0, 1.0), &samples).unwrap();

    // Both subdomains induce a 4-node path. V_1 holds samples at its local
    // nodes 0 and 3, V_2 holds one sample at its local node 1.
    let k = spline_kernel_oracle(&path(4), 1.0, 1);
    let local1 = dense_kernel_interpolation(&k, &[0, 3], &[x0, x3]);
    let local2: Vec<f64> = (0..4).map(|v| x3 / k[1][1] * k[v][1]).collect();
    let mut expected = [0.0; 6];
    for (i, v) in [0, 1, 2, 3].into_iter().enumerate() {
        expected[v] += phi1[v] * local1[i];
    }
    for (i, v) in [2, 3, 4, 5].into_iter().enumerate() {
        expected[v] += (1.0 - phi1[v]) * local2[i];
    }
    assert!(max_abs_diff(&out.signal, &expected) <= 1e-12, "{:?} vs {expected:?}", &*out.signal);
    assert!((out.signal[0] - x0).abs() <= 1e-12);
    assert!((out.signal[3] - x3).abs() <= 1e-12);
}

#[test]
fn sample_free_subdomains_are_reported() {
    let g = path(6);
    let (_, cover, pou) = cover_and_weights(&g, &[0, 0, 0, 1, 1, 1], 0);
    let samples = SampleSet::new(vec![1], vec![1.0], 6).unwrap();
    let out = pum_interpolate(&g, &cover, &pou, sharp(), &samples).unwrap();
    assert_eq!(out.empty_subdomains, vec![1]);
    assert!(out.signal[3..].iter().all(|&x| x == 0.0));
}

#[test]
fn local_failures_name_their_subdomain() {
    let g = path(6);
    let (_, cover, pou) = cover_and_weights(&g, &[0, 0, 0, 1, 1, 1], 0);
    let samples = SampleSet::new(vec![1, 4], vec![1.0, 2.0], 6).unwrap();
    let err = pum_interpolate(&g, &cover, &pou, GbfSpec::variational_spline(0.0, 1.0), &samples).unwrap_err();
    assert!(matches!(err, Error::Subdomain { subdomain: 0, .. }), "{err}");
}

#[test]
fn full_radius_covers_everything() {
    let g = path(7);
    let (_, cover, _) = cover_and_weights(&g, &[0, 0, 1, 1, 2, 2, 2], 6);
    for j in 0..3 {
        assert_eq!(cover.subdomain(j), &[0, 1, 2, 3, 4, 5, 6]);
    }
}
