mod common;

use proptest::prelude::*;

use srgf_core::codec::labels::{decode_labels, encode_labels};
use srgf_core::codec::symbols::{decode_integers, encode_integers};
use srgf_core::codec::{assign_class, dequantize, quantize};
use srgf_core::graph::{build_superray_graph, eigendecompose, gft_forward, gft_inverse, laplacian};
use srgf_core::prediction::{predict_low_frequencies, reconstruct_complement, SeparableTransform};
use srgf_core::sampling::{centroid_seed, condition_number, select_sampling_set};
use srgf_core::segmentation::SegmentationMap;

fn edges_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..30).prop_flat_map(|n| {
        let pairs = prop::collection::vec((0..n, 0..n), 0..3 * n);
        (Just(n), pairs).prop_map(|(n, pairs)| {
            let mut edges: Vec<(usize, usize)> = pairs
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            edges.sort_unstable();
            edges.dedup();
            (n, edges)
        })
    })
}

fn rel_err(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let den: f64 = b.iter().map(|y| y * y).sum::<f64>().sqrt().max(1.0);
    num / den
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gft_is_orthonormal_eigenbasis((n, edges) in edges_strategy(), seed in any::<u64>()) {
        let l = laplacian(n, &edges);
        let b = eigendecompose(&l).unwrap();
        let u = &b.vectors;
        let lu = &l * u;
        for j in 0..n {
            for i in 0..n {
                prop_assert!((lu[(i, j)] - u[(i, j)] * b.values[j]).abs() < 1e-9);
            }
        }
        prop_assert!((u.transpose() * u - nalgebra::DMatrix::identity(n, n)).amax() < 1e-10);
        prop_assert!(b.values.windows(2).all(|w| w[0] <= w[1]));
        let x: Vec<f64> = (0..n).map(|i| ((seed >> (i % 60)) & 0xff) as f64 - 100.0).collect();
        let c = gft_forward(&b, &x).unwrap();
        let back = gft_inverse(&b, &c).unwrap();
        prop_assert!(rel_err(&back, &x) < 1e-12);
        let e0: f64 = x.iter().map(|v| v * v).sum();
        let e1: f64 = c.iter().map(|v| v * v).sum();
        prop_assert!((e0 - e1).abs() <= 1e-9 * e0.max(1.0));
    }

    #[test]
    fn both_predictions_are_exact_on_superrays(seed in 0u64..10_000) {
        let (lf, g) = common::random_geometry(seed);
        let dims = lf.dims();
        let rays = lf.rays();
        for sr in &g.superrays {
            let x: Vec<f64> = sr.rays.iter().map(|&r| rays[r] as f64).collect();
            let graph = build_superray_graph(sr, &g.srmap);
            let n_k = sr.reference_len;

            let basis = eigendecompose(&graph.laplacian()).unwrap();
            let set = select_sampling_set(&basis, n_k, centroid_seed(sr, dims)).unwrap();
            let y = gft_forward(&basis, &x).unwrap();
            let samples: Vec<f64> = set.selected.iter().map(|&v| x[v]).collect();
            let low = predict_low_frequencies(&basis, &set.selected, &samples, &y[n_k..]).unwrap();
            prop_assert!(rel_err(&low, &y[..n_k]) < 1e-6);
            let rest = reconstruct_complement(&basis, &set.complement, &low, &y[n_k..]);
            let expect: Vec<f64> = set.complement.iter().map(|&v| x[v]).collect();
            prop_assert!(rel_err(&rest, &expect) < 1e-6);

            let t = SeparableTransform::new(&graph, dims.view_len(), dims.cols).unwrap();
            let ys = t.forward(&x).unwrap();
            let mut zeroed = ys.clone();
            for p in t.predicted_positions() {
                zeroed[p] = 0.0;
            }
            let back = t.reconstruct(&zeroed, &x[..n_k]).unwrap();
            prop_assert!(rel_err(&back, &x) < 1e-6);
        }
    }

    /// `||dx|| <= cond(U(S,T)) Q sqrt(|T_c|)` for high frequencies perturbed by
    /// uniform noise in `[-Q/2, Q/2]`.
    #[test]
    fn quantization_error_is_bounded_by_conditioning(seed in 0u64..10_000, q in 0.1f64..4.0) {
        use rand::{Rng, SeedableRng};
        let (lf, g) = common::random_geometry(seed);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let rays = lf.rays();
        for sr in &g.superrays {
            let n_k = sr.reference_len;
            if n_k == sr.len() {
                continue;
            }
            let x: Vec<f64> = sr.rays.iter().map(|&r| rays[r] as f64).collect();
            let graph = build_superray_graph(sr, &g.srmap);
            let basis = eigendecompose(&graph.laplacian()).unwrap();
            let set = select_sampling_set(&basis, n_k, centroid_seed(sr, lf.dims())).unwrap();
            let y = gft_forward(&basis, &x).unwrap();
            let noisy: Vec<f64> = y[n_k..].iter().map(|c| c + rng.random_range(-q / 2.0..=q / 2.0)).collect();
            let samples: Vec<f64> = set.selected.iter().map(|&v| x[v]).collect();
            let low = predict_low_frequencies(&basis, &set.selected, &samples, &noisy).unwrap();
            let rest = reconstruct_complement(&basis, &set.complement, &low, &noisy);
            let err: f64 = set.complement.iter().zip(&rest).map(|(&v, r)| (x[v] - r).powi(2)).sum::<f64>().sqrt();
            let bound = condition_number(&basis, &set.selected) * q * ((sr.len() - n_k) as f64).sqrt();
            prop_assert!(err <= bound + 1e-9, "err {err} bound {bound}");
        }
    }

    #[test]
    fn quantization_error_at_most_half_step(c in -1e6f64..1e6, q in 1e-3f64..100.0) {
        let back = dequantize(quantize(c, q), q);
        prop_assert!((c - back).abs() <= q / 2.0 * (1.0 + 1e-12));
    }

    #[test]
    fn integer_streams_round_trip(values in prop::collection::vec(
        prop_oneof![-3i64..=3, -300i64..=300, any::<i64>()], 0..400)) {
        let bytes = encode_integers(&values);
        prop_assert_eq!(decode_integers(&bytes, values.len(), "p").unwrap(), values);
    }

    #[test]
    fn label_grids_round_trip(h in 1usize..12, w in 1usize..12, seed in any::<u64>(), k in 1u32..10) {
        let raw: Vec<u32> = (0..h * w).map(|p| ((seed.rotate_left(p as u32 % 64) ^ (p as u64 / 3)) % k as u64) as u32).collect();
        let seg = SegmentationMap::from_raw(h, w, &raw).unwrap();
        let bytes = encode_labels(&seg);
        prop_assert_eq!(decode_labels(&bytes, h, w, seg.count).unwrap(), seg);
    }

    #[test]
    fn classes_match_pass_by_pass_oracle(
        tail in prop::collection::vec(-3.0f64..3.0, 0..40),
        predicted in 0usize..20,
    ) {
        let n_k = tail.len() + predicted;
        prop_assume!(n_k > 0);
        // oracle: drop the predicted prefix, test cuts from the largest down
        let mut expected = 4;
        for i in 1..=3u8 {
            let want = ((n_k * (4 - i as usize)) as f64 / 4.0).round() as usize;
            let cut = want.min(tail.len());
            let mut sum = 0.0;
            for j in 0..cut {
                let c = tail[tail.len() - 1 - j];
                sum += c * c;
            }
            if cut == 0 || sum < cut as f64 {
                expected = i;
                break;
            }
        }
        prop_assert_eq!(assign_class(&tail, n_k), expected);
    }
}
