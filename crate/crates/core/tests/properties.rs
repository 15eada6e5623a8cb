use nogold::analysis::{gain_lower_at_prevalence_cap, round_down, round_up};
use nogold::bounds::approx_lower_diff;
use nogold::model::{JointDensity, LatentParams, TrinomialCounts};
use proptest::prelude::*;

fn simplex4() -> impl Strategy<Value = [f64; 4]> {
    [1e-6..1.0f64, 1e-6..1.0f64, 1e-6..1.0f64, 1e-6..1.0f64].prop_map(|raw| {
        let s: f64 = raw.iter().sum();
        raw.map(|x| x / s)
    })
}

proptest! {
    #[test]
    fn marginal_density_is_the_componentwise_mixture(
        pr in 0.0..=1.0f64,
        row0 in simplex4(),
        row1 in simplex4(),
    ) {
        let theta = LatentParams::new([1.0 - pr, pr], [row0, row1]).unwrap();
        let q = theta.marginal_density();
        let total: f64 = q.cells().iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        for j in 0..4 {
            let want = (1.0 - pr) * row0[j] + pr * row1[j];
            prop_assert!((q.cells()[j] - want).abs() <= 1e-12);
        }
    }

    #[test]
    fn ordering_score_stays_in_range(
        k1 in 0u64..400,
        k2 in 0u64..400,
        k3 in 0u64..400,
        beta in 0.0..=1.0f64,
    ) {
        let t = approx_lower_diff(&TrinomialCounts::new(k1, k2, k3), beta);
        prop_assert!((-1.0..=1.0).contains(&t), "score {t}");
    }

    #[test]
    fn directional_rounding_brackets_the_value(x in -2.0..2.0f64) {
        let lo = round_down(x, 4);
        let hi = round_up(x, 4);
        prop_assert!(lo <= x && x <= hi);
        prop_assert!(hi - lo <= 1e-4 + 1e-12);
    }

    #[test]
    fn prevalence_cap_is_monotone_for_nonnegative_bounds(
        x in 0.0..=1.0f64,
        a in 0.01..=1.0f64,
        b in 0.01..=1.0f64,
    ) {
        let (small, large) = if a <= b { (a, b) } else { (b, a) };
        let at_small = gain_lower_at_prevalence_cap(x, small).unwrap();
        let at_large = gain_lower_at_prevalence_cap(x, large).unwrap();
        prop_assert!(at_small >= at_large);
    }

    #[test]
    fn empirical_density_marginals_are_consistent(cells in simplex4()) {
        let q = JointDensity::new(cells).unwrap();
        prop_assert!((q.q0_plus() + q.q1_plus() - 1.0).abs() <= 1e-12);
        prop_assert!((q.q_plus0() + q.q_plus1() - 1.0).abs() <= 1e-12);
    }
}
