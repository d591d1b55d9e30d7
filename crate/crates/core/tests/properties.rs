// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{oracle_local_volume, random_input, random_matrix, rng};
use greyrank_core::normalize::{standardize_benefit, standardize_cost, standardize_interval};
use greyrank_core::{
    apply_weights, assess, classify, compute_extrema, grey_coefficients, incidence_family, local_volume,
    negative_ideal, objective_h, positive_ideal, render_report, run_assessment, standardize_all,
    superiority_degree, IndexExtrema, IndexOrientation, Matrix, OutputFormat, RunConfig, ZeroingMode,
};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    -1e3..1e3f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn standardized_values_in_unit_range(seed in any::<u64>()) {
        let input = random_input(seed, false);
        for b in standardize_all(&input) {
            prop_assert!(b.iter().all(|v| (0.0..=1.0).contains(v)), "{b}");
        }
    }

    #[test]
    fn cost_is_dual_to_benefit(a in finite(), lo in finite(), span in 1e-3..1e3f64) {
        let e = IndexExtrema::new("x", lo, lo + span);
        let a = a.clamp(lo, lo + span);
        prop_assert!((standardize_cost(a, &e) - (1.0 - standardize_benefit(a, &e))).abs() <= 1e-12);
    }

    #[test]
    fn benefit_and_cost_monotone(a in finite(), b in finite(), lo in -1e3..0.0f64, span in 1e-3..2e3f64) {
        let e = IndexExtrema::new("x", lo, lo + span);
        let (x, y) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(standardize_benefit(x, &e) <= standardize_benefit(y, &e));
        prop_assert!(standardize_cost(x, &e) >= standardize_cost(y, &e));
    }

    #[test]
    fn interval_peaks_on_its_range(
        low in 20.0..40.0f64, width in 0.0..20.0f64, a in 0.0..100.0f64, step in 0.0..30.0f64
    ) {
        let high = low + width;
        let e = IndexExtrema::new("x", 0.0, 100.0);
        let v = standardize_interval(a, &e, low, high);
        if (low..=high).contains(&a) {
            prop_assert_eq!(v, 1.0);
        } else {
            prop_assert!(v < 1.0);
            // moving further away never increases the score
            let further = if a < low { (a - step).max(0.0) } else { (a + step).min(100.0) };
            prop_assert!(standardize_interval(further, &e, low, high) <= v);
        }
    }

    #[test]
    fn extremes_are_attained(seed in any::<u64>()) {
        let input = random_input(seed, false);
        let extrema = compute_extrema(&input);
        let b = standardize_all(&input);
        for (j, index) in input.indices.iter().enumerate() {
            let degenerate = extrema[j].min_val == extrema[j].max_val;
            if degenerate || !matches!(index.orientation, IndexOrientation::Benefit | IndexOrientation::Cost) {
                continue;
            }
            let row: Vec<f64> = b.iter().flat_map(|m| m.row(j).iter().copied().collect::<Vec<_>>()).collect();
            prop_assert!(row.contains(&0.0) && row.contains(&1.0));
        }
    }

    #[test]
    fn benefit_standardization_ignores_affine_maps(seed in any::<u64>(), alpha in 0.01..100.0f64, beta in -500.0..500.0f64) {
        let input = random_input(seed, true);
        let mut moved = input.clone();
        for area in &mut moved.areas {
            area.values.apply(|v| *v = alpha * *v + beta);
        }
        for (b0, b1) in standardize_all(&input).iter().zip(standardize_all(&moved).iter()) {
            prop_assert!((b0 - b1).amax() <= 1e-12);
        }
    }

    #[test]
    fn ideals_dominate_and_are_tight(seed in any::<u64>()) {
        let input = random_input(seed, false);
        let lambda = input.index_weights();
        let weighted: Vec<Matrix> = standardize_all(&input)
            .iter()
            .map(|b| apply_weights(b, &lambda, &input.time_weights).unwrap())
            .collect();
        let hi = positive_ideal(&weighted).unwrap();
        let lo = negative_ideal(&weighted).unwrap();
        for c in &weighted {
            prop_assert!(c.zip_map(&hi, |a, b| (a <= b) as u8 as f64).min() == 1.0);
            prop_assert!(c.zip_map(&lo, |a, b| (a >= b) as u8 as f64).min() == 1.0);
            for j in 0..c.nrows() {
                for t in 0..c.ncols() {
                    prop_assert!(c[(j, t)] >= 0.0 && c[(j, t)] <= lambda[j] * input.time_weights[t] + 1e-15);
                }
            }
        }
        for (k, v) in hi.iter().enumerate() {
            prop_assert!(weighted.iter().any(|c| c.as_slice()[k] == *v));
        }
        for (k, v) in lo.iter().enumerate() {
            prop_assert!(weighted.iter().any(|c| c.as_slice()[k] == *v));
        }
    }

    #[test]
    fn weighting_is_linear(seed in any::<u64>(), alpha in 0.0..10.0f64) {
        let mut r = rng(seed);
        let b = random_matrix(&mut r, 4, 5, 0.0, 1.0);
        let l = [0.1, 0.2, 0.3, 0.4];
        let t = [0.2; 5];
        let lhs = apply_weights(&(&b * alpha), &l, &t).unwrap();
        let rhs = apply_weights(&b, &l, &t).unwrap() * alpha;
        prop_assert!((lhs - rhs).amax() <= 1e-12);
    }

    #[test]
    fn local_volume_matches_quadrature(seed in any::<u64>(), rows in 2usize..8, cols in 2usize..8) {
        let z = random_matrix(&mut rng(seed), rows, cols, -10.0, 10.0);
        prop_assert!((local_volume(&z) - oracle_local_volume(&z)).amax() <= 1e-9);
    }

    #[test]
    fn coefficients_span_unit_range(seed in any::<u64>(), k in 1usize..5) {
        let mut r = rng(seed);
        let diffs: Vec<Matrix> = (0..k).map(|_| random_matrix(&mut r, 3, 4, 0.0, 5.0)).collect();
        let g = grey_coefficients(&diffs).unwrap();
        let all: Vec<f64> = g.coefficients.iter().flat_map(|c| c.iter().copied()).collect();
        prop_assert!(all.iter().all(|v| (0.0..=1.0).contains(v)));
        prop_assert!(all.contains(&1.0));
        if g.d_max > g.d_min {
            prop_assert!(all.contains(&0.0));
        }
        prop_assert!(g.degrees.iter().all(|d| (0.0..=1.0).contains(d)));
    }

    #[test]
    fn self_incidence_is_one(seed in any::<u64>(), mode_ix in 0usize..3) {
        let mut r = rng(seed);
        let reference = random_matrix(&mut r, 4, 5, 0.0, 1.0);
        let other = random_matrix(&mut r, 4, 5, 0.0, 1.0);
        let fam = incidence_family("r", &reference, &[other, reference.clone()], ZeroingMode::ALL[mode_ix]).unwrap();
        prop_assert_eq!(fam.degrees[1], 1.0);
    }

    #[test]
    fn degrees_invariant_under_common_scaling(seed in any::<u64>(), alpha in 0.01..100.0f64, mode_ix in 0usize..3) {
        let mut r = rng(seed);
        let reference = random_matrix(&mut r, 4, 5, 0.0, 1.0);
        let factors: Vec<Matrix> = (0..3).map(|_| random_matrix(&mut r, 4, 5, 0.0, 1.0)).collect();
        let mode = ZeroingMode::ALL[mode_ix];
        let base = incidence_family("r", &reference, &factors, mode).unwrap();
        let scaled_factors: Vec<Matrix> = factors.iter().map(|f| f * alpha).collect();
        let scaled = incidence_family("r", &(&reference * alpha), &scaled_factors, mode).unwrap();
        for (a, b) in base.degrees.iter().zip(&scaled.degrees) {
            prop_assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn degrees_invariant_under_common_translation(seed in any::<u64>(), shift in -50.0..50.0f64, first_col in any::<bool>()) {
        let mut r = rng(seed);
        let reference = random_matrix(&mut r, 4, 5, 0.0, 1.0);
        let factors: Vec<Matrix> = (0..3).map(|_| random_matrix(&mut r, 4, 5, 0.0, 1.0)).collect();
        let mode = if first_col { ZeroingMode::FirstColumn } else { ZeroingMode::FirstElement };
        let base = incidence_family("r", &reference, &factors, mode).unwrap();
        let moved: Vec<Matrix> = factors.iter().map(|f| f.add_scalar(shift)).collect();
        let shifted = incidence_family("r", &reference.add_scalar(shift), &moved, mode).unwrap();
        for (a, b) in base.degrees.iter().zip(&shifted.degrees) {
            prop_assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn incidence_is_deterministic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let reference = random_matrix(&mut r, 5, 4, -1.0, 1.0);
        let factors: Vec<Matrix> = (0..3).map(|_| random_matrix(&mut r, 5, 4, -1.0, 1.0)).collect();
        let a = incidence_family("r", &reference, &factors, ZeroingMode::FirstColumn).unwrap();
        let b = incidence_family("r", &reference, &factors, ZeroingMode::FirstColumn).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn closed_form_minimizes_objective(gp in 1e-6..=1.0f64, gn in 1e-6..=1.0f64, other in 0.0..=1.0f64) {
        let s = superiority_degree(gp, gn).unwrap();
        let best = objective_h(&[s], &[gp], &[gn]).unwrap();
        prop_assert!(best <= objective_h(&[other], &[gp], &[gn]).unwrap() + 1e-15);
    }

    #[test]
    fn superiority_complement(gp in 1e-6..=1.0f64, gn in 1e-6..=1.0f64) {
        let s = superiority_degree(gp, gn).unwrap();
        prop_assert!((superiority_degree(gn, gp).unwrap() - (1.0 - s)).abs() <= 1e-12);
    }

    #[test]
    fn superiority_monotone(g in 1e-3..=1.0f64, a in 1e-3..=1.0f64, b in 1e-3..=1.0f64) {
        prop_assume!((a - b).abs() > 1e-9);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(superiority_degree(lo, g).unwrap() < superiority_degree(hi, g).unwrap());
        prop_assert!(superiority_degree(g, lo).unwrap() > superiority_degree(g, hi).unwrap());
    }

    #[test]
    fn classification_monotone(a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(classify(lo).unwrap() <= classify(hi).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pipeline_ignores_area_order(seed in any::<u64>(), rot in 1usize..5) {
        let input = random_input(seed, false);
        let config = RunConfig::default();
        let Ok(base) = assess(&input, &config) else { return Ok(()) };
        let mut permuted = input.clone();
        let len = permuted.areas.len();
        permuted.areas.rotate_left(rot % len);
        permuted.areas.swap(0, len - 1);
        let moved = assess(&permuted, &config).unwrap();
        for a in &base.areas {
            let b = moved.areas.iter().find(|b| b.name == a.name).unwrap();
            prop_assert_eq!(a.gamma_pos, b.gamma_pos);
            prop_assert_eq!(a.gamma_neg, b.gamma_neg);
            prop_assert_eq!(a.superiority, b.superiority);
            prop_assert_eq!(a.rank, b.rank);
            prop_assert_eq!(a.level, b.level);
        }
    }

    #[test]
    fn pipeline_ignores_per_index_affine_maps(seed in any::<u64>(), alpha in 0.1..10.0f64, beta in -100.0..100.0f64) {
        let input = random_input(seed, true);
        let config = RunConfig::default();
        let Ok(base) = assess(&input, &config) else { return Ok(()) };
        let mut moved = input.clone();
        let m = moved.index_count();
        for area in &mut moved.areas {
            for j in 0..m {
                let (a, b) = (alpha * (j + 1) as f64, beta - j as f64);
                area.values.row_mut(j).apply(|v| *v = a * *v + b);
            }
        }
        let after = assess(&moved, &config).unwrap();
        for (x, y) in base.areas.iter().zip(&after.areas) {
            prop_assert!((x.gamma_pos - y.gamma_pos).abs() <= 1e-9);
            prop_assert!((x.gamma_neg - y.gamma_neg).abs() <= 1e-9);
            prop_assert!((x.superiority - y.superiority).abs() <= 1e-9);
            prop_assert_eq!(x.rank, y.rank);
            prop_assert_eq!(x.level, y.level);
        }
    }

    #[test]
    fn json_report_is_reproducible(seed in any::<u64>()) {
        let input = random_input(seed, false);
        let config = RunConfig { emit_trace: true, ..RunConfig::default() };
        let (Ok(mut a), Ok(mut b)) = (run_assessment(&input, &config), run_assessment(&input, &config)) else {
            return Ok(());
        };
        a.duration_seconds = 0.0;
        b.duration_seconds = 0.0;
        prop_assert_eq!(render_report(&a, OutputFormat::Json, 2), render_report(&b, OutputFormat::Json, 2));
    }
}
