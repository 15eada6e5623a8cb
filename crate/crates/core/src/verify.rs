//! Independent oracles: exact coverage of the difference bound by full
//! enumeration, Monte Carlo coverage under the latent class models, the
//! feasible-set validation suite, and micro-scale brute-force references
//! for the bound engine.
//!
//! Everything here is deterministic under a fixed seed: parallel loops give
//! each work item its own counter-mode stream and reduce in index order.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{approx_lower_diff, BoundConfig, ExactBoundEngine};
use crate::geometry::{
    complete_gain, complete_gain_restricted, complete_pr_se1, complete_pr_se2,
    complete_sens_triple, complete_sens_triple_restricted, construct_theta, is_feasible_gain,
    is_feasible_gain_restricted, is_feasible_pr_se1, is_feasible_pr_se2,
    is_feasible_quintuple, is_feasible_quintuple_alt, is_feasible_sens_triple,
    is_feasible_sens_triple_restricted, quintuple_of, restricted_se1_necessary, sample_latent,
    se1_upper_from_density, FeasibleQuintuple, GainPair, SensTriple, FEASIBILITY_TOL,
};
use crate::model::{
    enumerate_trinomial_outcomes, multinomial_log_pmf, trinomial_log_pmf, JointDensity,
    LatentParams, PairedCounts, TestId, TrinomialCounts,
};
use crate::{Error, Result};

/// Largest sample size accepted by [`exact_coverage_diff`].
pub const EXACT_COVERAGE_MAX_N: u64 = 12;

fn tables_of_size(n: u64) -> Vec<PairedCounts> {
    let mut out = Vec::new();
    for k00 in 0..=n {
        for k01 in 0..=(n - k00) {
            for k10 in 0..=(n - k00 - k01) {
                out.push(PairedCounts {
                    k00,
                    k01,
                    k10,
                    k11: n - k00 - k01 - k10,
                });
            }
        }
    }
    out
}

/// Result of an exact coverage computation.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactCoverage {
    pub min_coverage: f64,
    /// Grid density attaining the minimum.
    pub argmin_q: [f64; 4],
    pub tables: usize,
    pub grid_points: usize,
}

/// Exact minimum coverage of the gain lower bound over a simplex grid.
///
/// Precomputes the bound for every table of size `n`, then for each grid
/// density sums the multinomial mass of `{bound <= q01 - q10}` exactly. The
/// grid includes boundary densities, where coverage minima often sit.
pub fn exact_coverage_diff(n: u64, beta: f64, grid_per_axis: usize) -> Result<ExactCoverage> {
    if n > EXACT_COVERAGE_MAX_N {
        let required = ((n + 1) * (n + 2) * (n + 3) / 6) as usize;
        let budget = ((EXACT_COVERAGE_MAX_N + 1) * (EXACT_COVERAGE_MAX_N + 2)
            * (EXACT_COVERAGE_MAX_N + 3)
            / 6) as usize;
        return Err(Error::Resource { required, budget });
    }
    if grid_per_axis < 2 {
        return Err(Error::Validation(format!(
            "grid = {grid_per_axis} must be at least 2"
        )));
    }
    let engine = ExactBoundEngine::new(BoundConfig::with_beta(beta))?;
    let tables = tables_of_size(n);
    let bounds: Vec<f64> = tables
        .iter()
        .map(|k| {
            let collapsed = TrinomialCounts::new(k.k01, k.k10, k.k00 + k.k11);
            Ok(engine.lower_diff(&collapsed)?.value)
        })
        .collect::<Result<_>>()?;

    let g = grid_per_axis;
    let mut grid_qs: Vec<[f64; 4]> = Vec::new();
    for i in 0..g {
        for j in 0..g {
            for l in 0..g {
                let q00 = i as f64 / (g - 1) as f64;
                let q01 = j as f64 / (g - 1) as f64;
                let q10 = l as f64 / (g - 1) as f64;
                let s = q00 + q01 + q10;
                if s <= 1.0 + 1e-12 {
                    grid_qs.push([q00, q01, q10, (1.0 - s).max(0.0)]);
                }
            }
        }
    }

    let coverages: Vec<f64> = grid_qs
        .par_iter()
        .map(|cells| {
            let q = JointDensity::new(*cells).expect("grid point is a density");
            let target = q.q01() - q.q10();
            tables
                .iter()
                .zip(&bounds)
                .filter(|(_, &b)| b <= target)
                .map(|(k, _)| multinomial_log_pmf(&q, k).exp())
                .sum()
        })
        .collect();

    let (mut min_coverage, mut argmin) = (f64::INFINITY, [0.0; 4]);
    for (cov, cells) in coverages.iter().zip(&grid_qs) {
        if *cov < min_coverage {
            min_coverage = *cov;
            argmin = *cells;
        }
    }
    Ok(ExactCoverage {
        min_coverage,
        argmin_q: argmin,
        tables: tables.len(),
        grid_points: grid_qs.len(),
    })
}

/// Monte Carlo coverage estimates under the specificity-ordered model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McCoverage {
    pub reps: usize,
    /// Frequency of `{gain bound <= Pr (Se2 - Se1)}`.
    pub gain_coverage: f64,
    pub gain_se: f64,
    /// Frequency of `{Se1 <= sensitivity upper bound}`.
    pub se1_coverage: f64,
    pub se1_se: f64,
}

fn draw_table(rng: &mut ChaCha8Rng, n: u64, q: &JointDensity) -> PairedCounts {
    let cells = q.cells();
    let mut counts = [0u64; 4];
    for _ in 0..n {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut cell = 3;
        for (j, &p) in cells.iter().enumerate() {
            acc += p;
            if u < acc {
                cell = j;
                break;
            }
        }
        counts[cell] += 1;
    }
    PairedCounts {
        k00: counts[0],
        k01: counts[1],
        k10: counts[2],
        k11: counts[3],
    }
}

/// Samples parameters from the specificity-ordered model, simulates tables
/// of size `n`, and reports empirical coverage of the gain bound and of the
/// prevalence-free sensitivity upper bound. Deterministic given the seed.
pub fn mc_coverage_restricted(n: u64, beta: f64, reps: usize, seed: u64) -> Result<McCoverage> {
    if reps == 0 {
        return Err(Error::Validation("reps must be at least 1".into()));
    }
    let engine = ExactBoundEngine::new(BoundConfig::with_beta(beta))?;
    let hits: Vec<(bool, bool)> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(rep as u64 + 1);
            let theta = sample_latent(&mut rng, true);
            let q = theta.marginal_density();
            let k = draw_table(&mut rng, n, &q);

            let gain_bound = engine
                .lower_diff(&TrinomialCounts::new(k.k01, k.k10, k.k00 + k.k11))
                .expect("within budget")
                .value;
            let pr = theta.prevalence();
            let se1 = theta.characteristics(TestId::First).se;
            let se2 = theta.characteristics(TestId::Second).se;
            let gain_ok = gain_bound <= pr * (se2 - se1);

            let se1_bound = engine
                .upper_ratio_from_diff(&TrinomialCounts::new(k.k10, k.k01, k.k11))
                .expect("within budget")
                .value;
            let se1_ok = se1 <= se1_bound;
            (gain_ok, se1_ok)
        })
        .collect();

    let gain_hits = hits.iter().filter(|(g, _)| *g).count();
    let se1_hits = hits.iter().filter(|(_, s)| *s).count();
    let freq = |h: usize| h as f64 / reps as f64;
    let se = |p: f64| (p * (1.0 - p) / reps as f64).sqrt();
    let (gp, sp) = (freq(gain_hits), freq(se1_hits));
    Ok(McCoverage {
        reps,
        gain_coverage: gp,
        gain_se: se(gp),
        se1_coverage: sp,
        se1_se: se(sp),
    })
}

/// One check of the feasible-set suite.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaCheck {
    pub name: String,
    pub samples: usize,
    pub failures: usize,
    /// Zero requested samples: a vacuous pass, flagged rather than silent.
    pub skipped: bool,
    pub first_counterexample: Option<String>,
}

impl LemmaCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Aggregate result of [`lemma_suite`].
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaSuiteReport {
    pub checks: Vec<LemmaCheck>,
}

impl LemmaSuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(LemmaCheck::passed)
    }
}

impl std::fmt::Display for LemmaSuiteReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            let verdict = if c.skipped {
                "SKIP"
            } else if c.passed() {
                "PASS"
            } else {
                "FAIL"
            };
            write!(
                f,
                "{verdict} {} (samples={}, failures={})",
                c.name, c.samples, c.failures
            )?;
            if let Some(ce) = &c.first_counterexample {
                write!(f, " counterexample: {ce}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn stream_rng(seed: u64, check: u64, item: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((check << 40) | item);
    rng
}

fn sample_density(rng: &mut ChaCha8Rng) -> JointDensity {
    let mut cells: [f64; 4] = std::array::from_fn(|_| -(1.0 - rng.random::<f64>()).ln());
    let s: f64 = cells.iter().sum();
    for x in cells.iter_mut() {
        *x /= s;
    }
    JointDensity::new(cells).expect("normalized cells form a density")
}

fn describe(q: &JointDensity, detail: &str) -> String {
    let c = q.cells();
    format!(
        "q=({:.6},{:.6},{:.6},{:.6}) {detail}",
        c[0], c[1], c[2], c[3]
    )
}

/// Forward soundness of one predicate over sampled latent parameters: every
/// sampled parameter's projection must satisfy it. Exposed so a tampered
/// predicate can be shown to fail with a counterexample.
pub fn forward_check(
    name: &str,
    seed: u64,
    samples: usize,
    restricted: bool,
    predicate: impl Fn(&JointDensity, &FeasibleQuintuple) -> bool + Sync,
) -> LemmaCheck {
    if samples == 0 {
        return LemmaCheck {
            name: name.to_string(),
            samples: 0,
            failures: 0,
            skipped: true,
            first_counterexample: None,
        };
    }
    let outcomes: Vec<Option<String>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, fxhash(name), i as u64);
            let theta = sample_latent(&mut rng, restricted);
            let q = theta.marginal_density();
            let pt = quintuple_of(&theta);
            if predicate(&q, &pt) {
                None
            } else {
                Some(describe(
                    &q,
                    &format!(
                        "pt=({:.6},{:.6},{:.6},{:.6},{:.6})",
                        pt.pr, pt.sp1, pt.se1, pt.sp2, pt.se2
                    ),
                ))
            }
        })
        .collect();
    let failures = outcomes.iter().filter(|o| o.is_some()).count();
    LemmaCheck {
        name: name.to_string(),
        samples,
        failures,
        skipped: false,
        first_counterexample: outcomes.into_iter().flatten().next(),
    }
}

fn fxhash(s: &str) -> u64 {
    // Small stable string hash for per-check stream separation.
    s.bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ b as u64).wrapping_mul(0x1000_0000_01b3)
        })
        & 0xff
}

fn max_density_gap(theta: &LatentParams, q: &JointDensity) -> f64 {
    theta
        .marginal_density()
        .cells()
        .iter()
        .zip(q.cells())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// Reverse-attainability check: sample predicate-satisfying points, extend
/// them stage by stage to a full quintuple with the completion searches,
/// rebuild a latent parameter, and demand the stated residual.
fn reverse_check(
    name: &str,
    seed: u64,
    points: usize,
    residual_limit: f64,
    sample_and_complete: impl Fn(&mut ChaCha8Rng) -> Option<(JointDensity, FeasibleQuintuple, bool)>
        + Sync,
) -> LemmaCheck {
    if points == 0 {
        return LemmaCheck {
            name: name.to_string(),
            samples: 0,
            failures: 0,
            skipped: true,
            first_counterexample: None,
        };
    }
    let outcomes: Vec<Option<String>> = (0..points)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, fxhash(name), i as u64);
            // A handful of fresh densities in case a sampled one makes the
            // predicate region too thin to hit.
            for _ in 0..40 {
                let Some((q, pt, want_ordered)) = sample_and_complete(&mut rng) else {
                    continue;
                };
                let theta = match construct_theta(&q, &pt) {
                    Ok(t) => t,
                    Err(e) => return Some(describe(&q, &format!("reconstruction: {e}"))),
                };
                let gap = max_density_gap(&theta, &q);
                if gap >= residual_limit {
                    return Some(describe(&q, &format!("residual {gap:.3e}")));
                }
                if want_ordered && !theta.is_specificity_ordered() {
                    return Some(describe(&q, "reconstruction lost specificity order"));
                }
                return None;
            }
            Some("sampling exhausted: no predicate-satisfying point found".to_string())
        })
        .collect();
    let failures = outcomes.iter().filter(|o| o.is_some()).count();
    LemmaCheck {
        name: name.to_string(),
        samples: points,
        failures,
        skipped: false,
        first_counterexample: outcomes.into_iter().flatten().next(),
    }
}

fn rejection_sample<T>(
    rng: &mut ChaCha8Rng,
    tries: usize,
    propose: impl Fn(&mut ChaCha8Rng) -> T,
    accept: impl Fn(&T) -> bool,
) -> Option<T> {
    for _ in 0..tries {
        let cand = propose(rng);
        if accept(&cand) {
            return Some(cand);
        }
    }
    None
}

const POINT_TRIES: usize = 400;

/// Runs the whole feasible-set validation suite.
///
/// `samples` drives the forward-soundness checks; the pairwise equivalence
/// check uses a tenth of it and the reverse-attainability checks a
/// hundredth, mirroring their relative costs. Zero samples yields a report
/// of skipped (vacuously passing) checks.
pub fn lemma_suite(seed: u64, samples: usize) -> LemmaSuiteReport {
    let pairs = samples / 10;
    let points = samples / 100;
    let mut checks = Vec::new();

    checks.push(forward_check(
        "forward-full-model",
        seed,
        samples,
        false,
        |q, pt| {
            is_feasible_quintuple(q, pt)
                && is_feasible_quintuple_alt(q, pt)
                && is_feasible_sens_triple(q, &pt.sens_triple())
                && is_feasible_gain(q, &pt.gain_pair())
                && is_feasible_pr_se1(q, pt.pr, pt.se1)
                && is_feasible_pr_se2(q, pt.pr, pt.se2)
        },
    ));

    checks.push(forward_check(
        "forward-restricted-model",
        seed,
        samples,
        true,
        |q, pt| {
            is_feasible_sens_triple_restricted(q, &pt.sens_triple())
                && is_feasible_gain_restricted(q, &pt.gain_pair())
                && restricted_se1_necessary(q, pt.pr, pt.se1)
        },
    ));

    checks.push(forward_check(
        "se1-prevalence-free-limit",
        seed,
        samples,
        true,
        |q, pt| pt.se1 <= se1_upper_from_density(q) + FEASIBILITY_TOL,
    ));

    checks.push(equivalence_check(seed, pairs));
    checks.push(anchor_check(seed, pairs));

    // Reconstruction round trip from exactly feasible quintuples.
    checks.push(reverse_check(
        "reconstruction-round-trip",
        seed,
        points,
        1e-9,
        |rng| {
            let theta = sample_latent(rng, false);
            Some((theta.marginal_density(), quintuple_of(&theta), false))
        },
    ));

    checks.push(reverse_check("reverse-sens-triple", seed, points, 1e-6, |rng| {
        let q = sample_density(rng);
        let t = rejection_sample(
            rng,
            POINT_TRIES,
            |r| SensTriple {
                pr: r.random(),
                se1: r.random(),
                se2: r.random(),
            },
            |t| is_feasible_sens_triple(&q, t),
        )?;
        let full = complete_sens_triple(&q, &t)?;
        Some((q, full, false))
    }));

    checks.push(reverse_check("reverse-gain", seed, points, 1e-6, |rng| {
        let q = sample_density(rng);
        let g = rejection_sample(
            rng,
            POINT_TRIES,
            |r| GainPair {
                pr: r.random(),
                dse: 2.0 * r.random::<f64>() - 1.0,
            },
            |g| is_feasible_gain(&q, g),
        )?;
        let t = complete_gain(&q, &g)?;
        let full = complete_sens_triple(&q, &t)?;
        Some((q, full, false))
    }));

    checks.push(reverse_check("reverse-pr-se1", seed, points, 1e-6, |rng| {
        let q = sample_density(rng);
        let (pr, se1) = rejection_sample(
            rng,
            POINT_TRIES,
            |r| (r.random(), r.random()),
            |&(pr, se1)| is_feasible_pr_se1(&q, pr, se1),
        )?;
        let t = complete_pr_se1(&q, pr, se1)?;
        let full = complete_sens_triple(&q, &t)?;
        Some((q, full, false))
    }));

    checks.push(reverse_check("reverse-pr-se2", seed, points, 1e-6, |rng| {
        let q = sample_density(rng);
        let (pr, se2) = rejection_sample(
            rng,
            POINT_TRIES,
            |r| (r.random(), r.random()),
            |&(pr, se2)| is_feasible_pr_se2(&q, pr, se2),
        )?;
        let t = complete_pr_se2(&q, pr, se2)?;
        let full = complete_sens_triple(&q, &t)?;
        Some((q, full, false))
    }));

    checks.push(reverse_check(
        "reverse-sens-triple-restricted",
        seed,
        points,
        1e-6,
        |rng| {
            let q = sample_density(rng);
            let t = rejection_sample(
                rng,
                POINT_TRIES,
                |r| SensTriple {
                    pr: r.random(),
                    se1: r.random(),
                    se2: r.random(),
                },
                |t| is_feasible_sens_triple_restricted(&q, t),
            )?;
            let full = complete_sens_triple_restricted(&q, &t)?;
            Some((q, full, true))
        },
    ));

    checks.push(reverse_check(
        "reverse-gain-restricted",
        seed,
        points,
        1e-6,
        |rng| {
            let q = sample_density(rng);
            let g = rejection_sample(
                rng,
                POINT_TRIES,
                |r| GainPair {
                    pr: r.random(),
                    dse: 2.0 * r.random::<f64>() - 1.0,
                },
                |g| is_feasible_gain_restricted(&q, g),
            )?;
            let t = complete_gain_restricted(&q, &g)?;
            let full = complete_sens_triple_restricted(&q, &t)?;
            Some((q, full, true))
        },
    ));

    LemmaSuiteReport { checks }
}

fn equivalence_check(seed: u64, pairs: usize) -> LemmaCheck {
    let name = "quintuple-systems-equivalent";
    if pairs == 0 {
        return LemmaCheck {
            name: name.to_string(),
            samples: 0,
            failures: 0,
            skipped: true,
            first_counterexample: None,
        };
    }
    let outcomes: Vec<Option<String>> = (0..pairs)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, fxhash(name), i as u64);
            let q = sample_density(&mut rng);
            let pt = FeasibleQuintuple {
                pr: rng.random(),
                sp1: rng.random(),
                se1: rng.random(),
                sp2: rng.random(),
                se2: rng.random(),
            };
            let a = is_feasible_quintuple(&q, &pt);
            let b = is_feasible_quintuple_alt(&q, &pt);
            if a == b {
                None
            } else {
                Some(describe(&q, &format!("direct={a} alt={b}")))
            }
        })
        .collect();
    let failures = outcomes.iter().filter(|o| o.is_some()).count();
    LemmaCheck {
        name: name.to_string(),
        samples: pairs,
        failures,
        skipped: false,
        first_counterexample: outcomes.into_iter().flatten().next(),
    }
}

fn anchor_check(seed: u64, samples: usize) -> LemmaCheck {
    let name = "restricted-gain-anchor";
    if samples == 0 {
        return LemmaCheck {
            name: name.to_string(),
            samples: 0,
            failures: 0,
            skipped: true,
            first_counterexample: None,
        };
    }
    let outcomes: Vec<Option<String>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, fxhash(name), i as u64);
            let q = sample_density(&mut rng);
            let g = GainPair {
                pr: 1.0,
                dse: q.q01() - q.q10(),
            };
            if is_feasible_gain_restricted(&q, &g) {
                None
            } else {
                Some(describe(&q, "anchor (1, q01 - q10) rejected"))
            }
        })
        .collect();
    let failures = outcomes.iter().filter(|o| o.is_some()).count();
    LemmaCheck {
        name: name.to_string(),
        samples,
        failures,
        skipped: false,
        first_counterexample: outcomes.into_iter().flatten().next(),
    }
}

/// Brute-force reference for the lower difference bound: dense
/// `(delta, eta)` grid at resolution `1/resolution`, no search shortcuts.
/// Only sensible for tiny sample sizes.
pub fn brute_force_lower_diff(k: &TrinomialCounts, beta: f64, resolution: usize) -> f64 {
    let m = k.m();
    let outcomes = enumerate_trinomial_outcomes(m);
    let t_obs = approx_lower_diff(k, beta);
    let tail: Vec<&TrinomialCounts> = outcomes
        .iter()
        .filter(|x| approx_lower_diff(x, beta) >= t_obs)
        .collect();
    let threshold = 1.0 - beta;
    let r = resolution as i64;
    let mut best = f64::INFINITY;
    for di in -r..=r {
        let delta = di as f64 / r as f64;
        if delta >= best {
            break; // deltas ascend; nothing smaller can follow
        }
        let lo = ((delta.abs() * r as f64).ceil() as i64).min(r);
        for ei in lo..=r {
            let eta = ei as f64 / r as f64;
            let p = [
                (0.5 * (eta + delta)).max(0.0),
                (0.5 * (eta - delta)).max(0.0),
                (1.0 - eta).max(0.0),
            ];
            let prob: f64 = tail.iter().map(|x| trinomial_log_pmf(&p, x).exp()).sum();
            if prob > threshold {
                best = delta;
                break;
            }
        }
    }
    if best.is_finite() {
        best
    } else {
        -1.0
    }
}

/// Brute-force reference for the direct ratio upper bound: dense simplex
/// grid, with the ordering scores taken from the engine (they define the
/// bound being checked) but the optimization done by raw enumeration.
pub fn brute_force_upper_ratio(
    engine: &ExactBoundEngine,
    k: &TrinomialCounts,
    resolution: usize,
) -> Result<f64> {
    let m = k.m();
    let outcomes = enumerate_trinomial_outcomes(m);
    let scores: Vec<f64> = outcomes
        .iter()
        .map(|x| Ok(engine.upper_ratio_from_diff(x)?.value))
        .collect::<Result<_>>()?;
    let t_obs = engine.upper_ratio_from_diff(k)?.value;
    let head: Vec<&TrinomialCounts> = outcomes
        .iter()
        .zip(&scores)
        .filter(|(_, &s)| s <= t_obs)
        .map(|(x, _)| x)
        .collect();
    let threshold = 1.0 - engine.config().beta;
    let rho = |p1: f64, p2: f64| -> f64 {
        if p1 >= 1.0 {
            1.0
        } else {
            ((1.0 - p2) / (1.0 - p1)).min(1.0)
        }
    };
    let r = resolution;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=r {
        let p1 = i as f64 / r as f64;
        for j in 0..=(r - i) {
            let p2 = j as f64 / r as f64;
            let val = rho(p1, p2);
            if val <= best {
                continue;
            }
            let p = [p1, p2, (1.0 - p1 - p2).max(0.0)];
            let prob: f64 = head.iter().map(|x| trinomial_log_pmf(&p, x).exp()).sum();
            if prob > threshold {
                best = val;
            }
        }
    }
    Ok(if best.is_finite() { best } else { 1.0 })
}
