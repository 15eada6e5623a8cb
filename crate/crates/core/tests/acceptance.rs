//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Tolerances are pinned here, not configurable.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::time::Instant;

use nogold::analysis::{
    analyze, gain_lower_at_prevalence_cap, implied_se1_upper, AnalysisOptions,
};
use nogold::bounds::{approx_lower_diff, BoundConfig, ExactBoundEngine};
use nogold::model::{enumerate_trinomial_outcomes, PairedCounts, TrinomialCounts};
use nogold::verify::{brute_force_lower_diff, exact_coverage_diff, lemma_suite, mc_coverage_restricted};

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "acceptance[{criterion}]: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{criterion}: {detail}");
}

#[test]
fn criterion_1_golden_values() {
    let started = Instant::now();
    let table = PairedCounts::new(210, 20, 4, 22).unwrap();
    let options = AnalysisOptions {
        beta: 0.95,
        prevalence_max: Some(0.15),
        ..AnalysisOptions::default()
    };
    let r = analyze(&table, &options).unwrap();

    let gain_ok = (r.gain_product_lower - 0.0320).abs() <= 0.01;
    let cap = r.gain_lower_at_cap.unwrap();
    let cap_identity_ok =
        cap == gain_lower_at_prevalence_cap(r.gain_product_lower, 0.15).unwrap();
    let cap_value_ok = (cap - 0.0320 / 0.15).abs() <= 0.01 / 0.15;
    let se1_ok = (r.se1_upper - 0.83).abs() <= 0.01;

    let implied = r.se1_upper_from_gain.unwrap();
    let implied_identity_ok = implied == implied_se1_upper(cap);
    let implied_value_ok = (implied - 0.79).abs() <= 0.01 / 0.15;

    let oring = PairedCounts::new(209, 21, 4, 22).unwrap();
    let r2 = analyze(&oring, &options).unwrap();
    let oring_ok = (r2.se1_upper - 0.81).abs() <= 0.01;

    let elapsed = started.elapsed().as_secs_f64();
    let runtime_ok = elapsed <= 60.0;

    report(
        "1 golden-values",
        gain_ok
            && cap_identity_ok
            && cap_value_ok
            && se1_ok
            && implied_identity_ok
            && implied_value_ok
            && oring_ok
            && runtime_ok,
        &format!(
            "gain={:.4} (target 0.0320±0.01), gain@0.15={:.4} (target 0.2133±0.0667), \
             se1_upper={:.4} (target 0.83±0.01), se1_upper(oring)={:.4} (target 0.81±0.01), \
             implied_se1={:.4} (target 0.79±0.0667), elapsed={elapsed:.1}s (limit 60s)",
            r.gain_product_lower, cap, r.se1_upper, r2.se1_upper, implied
        ),
    );
}

#[test]
fn criterion_2_exact_coverage() {
    let started = Instant::now();
    let mut worst = f64::INFINITY;
    let mut worst_at = String::new();
    for n in 1..=8u64 {
        for beta in [0.5, 0.8, 0.95] {
            let c = exact_coverage_diff(n, beta, 21).unwrap();
            let slack = c.min_coverage - beta;
            if slack < worst {
                worst = slack;
                worst_at = format!(
                    "n={n} beta={beta}: min={:.6} at q=({:.2},{:.2},{:.2},{:.2})",
                    c.min_coverage, c.argmin_q[0], c.argmin_q[1], c.argmin_q[2], c.argmin_q[3]
                );
            }
            assert!(
                c.min_coverage >= beta - 1e-12,
                "coverage dips below level at n={n}, beta={beta}: {:?}",
                c
            );
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    report(
        "2 exact-coverage",
        worst >= -1e-12 && elapsed <= 300.0,
        &format!("worst slack={worst:.6} ({worst_at}), elapsed={elapsed:.1}s (limit 300s)"),
    );
}

#[test]
fn criterion_3_latent_model_mc_coverage() {
    let started = Instant::now();
    let reps = 2000;
    let beta = 0.9;
    let mc = mc_coverage_restricted(30, beta, reps, 20_240_501).unwrap();
    let threshold = beta - 3.0 * (beta * (1.0 - beta) / reps as f64).sqrt();
    let elapsed = started.elapsed().as_secs_f64();
    report(
        "3 latent-model-mc-coverage",
        mc.gain_coverage >= threshold && mc.se1_coverage >= threshold && elapsed <= 600.0,
        &format!(
            "gain coverage={:.4} (±{:.4}), se1 coverage={:.4} (±{:.4}), threshold={threshold:.4}, \
             reps={reps}, elapsed={elapsed:.1}s (limit 600s)",
            mc.gain_coverage, mc.gain_se, mc.se1_coverage, mc.se1_se
        ),
    );
}

#[test]
fn criterion_4_feasible_set_suite() {
    let started = Instant::now();
    // 1e5 forward samples per model; the suite derives 1e4 equivalence
    // pairs and 1e3 reverse-attainability points from it.
    let suite = lemma_suite(1_729, 100_000);
    let elapsed = started.elapsed().as_secs_f64();
    let pass = suite.all_passed() && elapsed <= 120.0;
    report(
        "4 feasible-set-suite",
        pass,
        &format!(
            "{} checks, all passed={}, elapsed={elapsed:.1}s (limit 120s)",
            suite.checks.len(),
            suite.all_passed()
        ),
    );
    if !pass {
        println!("{suite}");
    }
}

#[test]
fn criterion_5_structural_identities() {
    // Reflection: the upper difference bound is exactly the negated lower
    // bound of the swapped outcome, over full enumeration for m <= 10.
    for beta in [0.5, 0.95] {
        let engine = ExactBoundEngine::new(BoundConfig::with_beta(beta)).unwrap();
        for m in 0..=10u64 {
            for k in enumerate_trinomial_outcomes(m) {
                let u0 = engine.upper_diff(&k).unwrap().value;
                let l = engine.lower_diff(&k.swapped()).unwrap().value;
                assert_eq!(
                    u0.to_bits(),
                    (-l).to_bits(),
                    "reflection broken at beta={beta}, k={k:?}"
                );
            }
        }
    }

    // Monotonicity in the designated statistic, same enumeration.
    for beta in [0.5, 0.95] {
        let engine = ExactBoundEngine::new(BoundConfig::with_beta(beta)).unwrap();
        for m in 0..=10u64 {
            let mut scored: Vec<(f64, f64)> = enumerate_trinomial_outcomes(m)
                .iter()
                .map(|k| {
                    (
                        approx_lower_diff(k, beta),
                        engine.lower_diff(k).unwrap().value,
                    )
                })
                .collect();
            scored.sort_by(|a, b| a.0.total_cmp(&b.0));
            for w in scored.windows(2) {
                assert!(
                    w[0].1 <= w[1].1,
                    "monotonicity broken at beta={beta}, m={m}: {w:?}"
                );
            }
        }
    }

    // Determinism: fresh engines, bit-identical results.
    let inputs = [
        TrinomialCounts::new(20, 4, 22),
        TrinomialCounts::new(0, 7, 3),
        TrinomialCounts::new(5, 5, 0),
    ];
    for k in &inputs {
        let a = ExactBoundEngine::new(BoundConfig::with_beta(0.95))
            .unwrap()
            .lower_diff(k)
            .unwrap();
        let b = ExactBoundEngine::new(BoundConfig::with_beta(0.95))
            .unwrap()
            .lower_diff(k)
            .unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits(), "k={k:?}");
        assert_eq!(
            a.diagnostics.tail_prob_at_value.to_bits(),
            b.diagnostics.tail_prob_at_value.to_bits()
        );
    }

    report(
        "5 structural-identities",
        true,
        "reflection exact (m<=10), statistic-monotone (m<=10), deterministic across fresh engines",
    );
}

#[test]
fn criterion_6_brute_force_micro_equivalence() {
    let beta = 0.8;
    let engine = ExactBoundEngine::new(BoundConfig::with_beta(beta)).unwrap();
    let mut max_gap = 0.0f64;
    for k in enumerate_trinomial_outcomes(2) {
        let ours = engine.lower_diff(&k).unwrap().value;
        let brute = brute_force_lower_diff(&k, beta, 1000);
        let gap = (ours - brute).abs();
        max_gap = max_gap.max(gap);
        assert!(
            gap <= 2e-3,
            "k={k:?}: engine {ours} vs dense grid {brute} (gap {gap:.2e})"
        );
    }
    report(
        "6 brute-force-micro",
        true,
        &format!("m=2, beta=0.8: max |engine - grid| = {max_gap:.2e} (limit 2e-3)"),
    );
}
