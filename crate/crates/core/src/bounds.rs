//! Buehler-type exact one-sided confidence bounds for the trinomial
//! coordinate difference `p1 - p2`.
//!
//! A Buehler bound orders the outcome space by a designated statistic and
//! then optimizes tail probabilities over the parameter space: the lower
//! bound at an observed outcome `k` is the smallest `p1 - p2` among
//! parameters giving the event `{T(X) >= T(k)}` probability strictly above
//! `1 - beta`. Coverage holds for any choice of ordering statistic; the
//! statistic only decides how sharp the bound is. Here the ordering is a
//! continuity-corrected Wald lower limit, which is cheap enough to evaluate
//! for all 33k outcomes at sample size 256.
//!
//! The trinomial parameter is searched as `(delta, eta)` with
//! `p = ((eta + delta)/2, (eta - delta)/2, 1 - eta)`, `eta in [|delta|, 1]`,
//! so the parameter of interest is an axis and `eta` is the nuisance. The
//! nuisance profile is maximized on a uniform grid followed by
//! golden-section refinement around the best grid point; the `delta` axis is
//! scanned coarsely to bracket the smallest qualifying value (guarding
//! against non-monotone profiles) and then bisected. The returned value is
//! the lower end of the final bracket, which errs on the conservative side.
//!
//! Upper bounds come from the `p1 <-> p2` reflection, and the upper bound
//! for the ratio parameter `(1 - p2)/(1 - p1) ∧ 1` either via the
//! difference (`1 + u0`, clamped) or directly with the via-difference bound
//! as the designated statistic.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use statrs::distribution::ContinuousCDF;

use crate::model::{enumerate_trinomial_outcomes, ln_factorial, TrinomialCounts};
use crate::{Error, Result, ENGINE_ID, STATISTIC_ID};

/// Search configuration for the bound engine.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundConfig {
    /// One-sided confidence level.
    pub beta: f64,
    /// Bisection tolerance on the parameter axis.
    pub delta_tol: f64,
    /// Uniform grid size for the nuisance maximization.
    pub nuisance_grid: usize,
    /// Golden-section evaluations after the grid stage.
    pub refine_iters: usize,
    /// Largest outcome count the engine will enumerate.
    pub max_outcomes: usize,
}

impl BoundConfig {
    pub fn with_beta(beta: f64) -> Self {
        Self {
            beta,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(Error::Validation(format!(
                "beta = {} outside [0, 1]",
                self.beta
            )));
        }
        if !self.delta_tol.is_finite() || self.delta_tol <= 0.0 {
            return Err(Error::Validation(format!(
                "delta_tol = {} must be positive",
                self.delta_tol
            )));
        }
        if self.nuisance_grid < 3 {
            return Err(Error::Validation(format!(
                "nuisance_grid = {} must be at least 3",
                self.nuisance_grid
            )));
        }
        Ok(())
    }
}

impl Default for BoundConfig {
    fn default() -> Self {
        Self {
            beta: 0.95,
            delta_tol: 1e-4,
            nuisance_grid: 201,
            refine_iters: 40,
            max_outcomes: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundSide {
    Lower,
    Upper,
}

/// Search diagnostics carried alongside a bound value.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BoundDiagnostics {
    /// Profile evaluations spent on the parameter axis.
    pub iterations: usize,
    /// Maximal tail probability at the returned parameter value.
    pub tail_prob_at_value: f64,
}

/// A one-sided confidence bound with its level and method identity.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BoundResult {
    pub value: f64,
    pub side: BoundSide,
    pub level: f64,
    pub method: String,
    pub diagnostics: BoundDiagnostics,
}

/// Standard normal quantile, with the closed endpoints mapped to infinities.
pub fn normal_quantile(beta: f64) -> f64 {
    if beta <= 0.0 {
        f64::NEG_INFINITY
    } else if beta >= 1.0 {
        f64::INFINITY
    } else {
        statrs::distribution::Normal::standard().inverse_cdf(beta)
    }
}

fn wald_cc_score(k: &TrinomialCounts, z: f64) -> f64 {
    let m = k.m();
    if m == 0 {
        return -1.0;
    }
    let mt = (m + 1) as f64;
    let diff = k.k1 as f64 - k.k2 as f64;
    let d_hat = diff / mt;
    // Continuity adjustment adds 0.5 to each of the first two cells, so the
    // variance term keeps a positive floor even at the simplex corners.
    let se = ((k.k1 + k.k2 + 1) as f64 - diff * diff / mt).sqrt() / mt;
    (d_hat - z * se).clamp(-1.0, 1.0)
}

/// Continuity-corrected Wald lower limit for `p1 - p2`, used only to order
/// outcomes inside the Buehler construction. Empty samples score -1.
pub fn approx_lower_diff(k: &TrinomialCounts, beta: f64) -> f64 {
    wald_cc_score(k, normal_quantile(beta))
}

/// All outcomes of one sample size, sorted ascending by the designated
/// statistic, with per-outcome log multinomial coefficients precomputed.
#[derive(Debug)]
pub struct OrderingTable {
    m: u64,
    outcomes: Vec<TrinomialCounts>,
    scores: Vec<f64>,
    cells: Vec<[f64; 3]>,
    ln_coef: Vec<f64>,
}

impl OrderingTable {
    fn build(m: u64, z: f64, max_outcomes: usize) -> Result<Self> {
        let required = (((m + 1) * (m + 2)) / 2) as usize;
        if required > max_outcomes {
            return Err(Error::Resource {
                required,
                budget: max_outcomes,
            });
        }
        let mut outcomes = enumerate_trinomial_outcomes(m);
        outcomes.sort_by(|a, b| {
            wald_cc_score(a, z)
                .total_cmp(&wald_cc_score(b, z))
                .then(a.k1.cmp(&b.k1))
                .then(a.k2.cmp(&b.k2))
        });
        let scores = outcomes.iter().map(|k| wald_cc_score(k, z)).collect();
        let cells = outcomes
            .iter()
            .map(|k| [k.k1 as f64, k.k2 as f64, k.k3 as f64])
            .collect();
        let ln_coef = outcomes
            .iter()
            .map(|k| {
                ln_factorial(m) - ln_factorial(k.k1) - ln_factorial(k.k2) - ln_factorial(k.k3)
            })
            .collect();
        Ok(Self {
            m,
            outcomes,
            scores,
            cells,
            ln_coef,
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn min_score(&self) -> f64 {
        self.scores[0]
    }

    /// Index of the first outcome scoring at least `t_obs`; outcomes tied
    /// with `t_obs` are part of the tail.
    pub fn tail_start(&self, t_obs: f64) -> usize {
        self.scores.partition_point(|&s| s < t_obs)
    }

    /// Tail probability `P(T >= t)` at the trinomial parameter
    /// `((eta + delta)/2, (eta - delta)/2, 1 - eta)`, where the tail is the
    /// sorted suffix beginning at `start`.
    ///
    /// Accumulates from the least extreme tail member towards the top, so a
    /// longer tail always sums to at least as much as any of its suffixes.
    pub fn tail_prob(&self, delta: f64, eta: f64, start: usize) -> f64 {
        let p1 = (0.5 * (eta + delta)).max(0.0);
        let p2 = (0.5 * (eta - delta)).max(0.0);
        let p3 = (1.0 - eta).max(0.0);
        let lnp = [p1.ln(), p2.ln(), p3.ln()];
        let mut acc = 0.0;
        if p1 > 0.0 && p2 > 0.0 && p3 > 0.0 {
            for i in (start..self.len()).rev() {
                let c = self.cells[i];
                acc += (self.ln_coef[i] + c[0] * lnp[0] + c[1] * lnp[1] + c[2] * lnp[2]).exp();
            }
        } else {
            for i in (start..self.len()).rev() {
                let c = self.cells[i];
                let mut s = self.ln_coef[i];
                let mut dead = false;
                for j in 0..3 {
                    if c[j] > 0.0 {
                        if lnp[j] == f64::NEG_INFINITY {
                            dead = true;
                            break;
                        }
                        s += c[j] * lnp[j];
                    }
                }
                if !dead {
                    acc += s.exp();
                }
            }
        }
        acc.clamp(0.0, 1.0)
    }
}

/// Tail probability of the event `{T >= t_obs}` under `(delta, eta)`,
/// against a prebuilt ordering table.
pub fn tail_prob(table: &OrderingTable, delta: f64, eta: f64, t_obs: f64) -> f64 {
    table.tail_prob(delta, eta, table.tail_start(t_obs))
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;
const DELTA_SCAN_STEPS: usize = 100; // step 0.02 over [-1, 1]

/// Exact bound engine: caches per-sample-size ordering tables and memoizes
/// computed lower bounds. All public operations are reentrant; results
/// depend only on the inputs and the configuration.
#[derive(Debug)]
pub struct ExactBoundEngine {
    config: BoundConfig,
    z_beta: f64,
    tables: Mutex<HashMap<u64, Arc<OrderingTable>>>,
    lower_memo: Mutex<HashMap<TrinomialCounts, (f64, usize, f64)>>,
}

impl ExactBoundEngine {
    pub fn new(config: BoundConfig) -> Result<Self> {
        config.validate()?;
        let z_beta = normal_quantile(config.beta);
        Ok(Self {
            config,
            z_beta,
            tables: Mutex::new(HashMap::new()),
            lower_memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn config(&self) -> &BoundConfig {
        &self.config
    }

    /// The ordering table for sample size `m`, built on first use.
    pub fn ordering_table(&self, m: u64) -> Result<Arc<OrderingTable>> {
        if let Some(t) = self.tables.lock().expect("table cache poisoned").get(&m) {
            return Ok(Arc::clone(t));
        }
        let built = Arc::new(OrderingTable::build(m, self.z_beta, self.config.max_outcomes)?);
        let mut cache = self.tables.lock().expect("table cache poisoned");
        Ok(Arc::clone(cache.entry(m).or_insert(built)))
    }

    /// Profile of the tail probability over the nuisance axis: uniform grid
    /// on `[|delta|, 1]` plus golden-section refinement around the best grid
    /// point. Returns the largest value seen.
    fn max_tail(&self, table: &OrderingTable, delta: f64, start: usize) -> f64 {
        let lo = delta.abs();
        let hi = 1.0;
        if hi - lo <= f64::EPSILON {
            return table.tail_prob(delta, hi, start);
        }
        let g = self.config.nuisance_grid;
        let mut best = f64::NEG_INFINITY;
        let mut best_idx = 0usize;
        for j in 0..g {
            let eta = lo + (hi - lo) * j as f64 / (g - 1) as f64;
            let v = table.tail_prob(delta, eta, start);
            if v > best {
                best = v;
                best_idx = j;
            }
        }
        let step = (hi - lo) / (g - 1) as f64;
        let mut a = lo + step * best_idx.saturating_sub(1) as f64;
        let mut b = (lo + step * (best_idx + 1) as f64).min(hi);
        let mut x1 = b - INV_PHI * (b - a);
        let mut x2 = a + INV_PHI * (b - a);
        let mut f1 = table.tail_prob(delta, x1, start);
        let mut f2 = table.tail_prob(delta, x2, start);
        best = best.max(f1).max(f2);
        for _ in 0..self.config.refine_iters {
            if f1 < f2 {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + INV_PHI * (b - a);
                f2 = table.tail_prob(delta, x2, start);
                best = best.max(f2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - INV_PHI * (b - a);
                f1 = table.tail_prob(delta, x1, start);
                best = best.max(f1);
            }
        }
        best
    }

    fn lower_diff_value(&self, k: &TrinomialCounts) -> Result<(f64, usize, f64)> {
        if let Some(&hit) = self
            .lower_memo
            .lock()
            .expect("bound memo poisoned")
            .get(k)
        {
            return Ok(hit);
        }
        let table = self.ordering_table(k.m())?;
        let threshold = 1.0 - self.config.beta;
        let out = if threshold >= 1.0 {
            // Tail probabilities never strictly exceed 1: nothing qualifies.
            (-1.0, 0, self.max_tail(&table, -1.0, 0))
        } else {
            let t_obs = wald_cc_score(k, self.z_beta);
            let start = table.tail_start(t_obs);
            self.smallest_qualifying_delta(&table, start, threshold)
        };
        self.lower_memo
            .lock()
            .expect("bound memo poisoned")
            .insert(*k, out);
        Ok(out)
    }

    /// Coarse scan for the first crossing of the profile above `threshold`,
    /// then bisection inside the bracketing cell. Returns the lower bracket
    /// end, the number of profile evaluations, and the profile value at the
    /// returned point.
    fn smallest_qualifying_delta(
        &self,
        table: &OrderingTable,
        start: usize,
        threshold: f64,
    ) -> (f64, usize, f64) {
        let mut iterations = 0usize;
        let mut bracket = None;
        let mut prev_delta = -1.0;
        for i in 0..=DELTA_SCAN_STEPS {
            let delta = -1.0 + 2.0 * i as f64 / DELTA_SCAN_STEPS as f64;
            let m_val = self.max_tail(table, delta, start);
            iterations += 1;
            if m_val > threshold {
                if i == 0 {
                    // The parameter minimum already qualifies.
                    return (-1.0, iterations, m_val);
                }
                bracket = Some((prev_delta, delta));
                break;
            }
            prev_delta = delta;
        }
        let Some((mut lo, mut hi)) = bracket else {
            let m_val = self.max_tail(table, -1.0, start);
            return (-1.0, iterations + 1, m_val);
        };
        while hi - lo > self.config.delta_tol {
            let mid = 0.5 * (lo + hi);
            let m_val = self.max_tail(table, mid, start);
            iterations += 1;
            if m_val > threshold {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let at_value = self.max_tail(table, lo, start);
        (lo, iterations + 1, at_value)
    }

    /// Exact lower confidence bound for `p1 - p2`.
    pub fn lower_diff(&self, k: &TrinomialCounts) -> Result<BoundResult> {
        let (value, iterations, tail) = self.lower_diff_value(k)?;
        Ok(BoundResult {
            value,
            side: BoundSide::Lower,
            level: self.config.beta,
            method: format!("{ENGINE_ID}/{STATISTIC_ID}/lower-diff"),
            diagnostics: BoundDiagnostics {
                iterations,
                tail_prob_at_value: tail,
            },
        })
    }

    /// Exact upper confidence bound for `p1 - p2`, via the reflection that
    /// swapping the first two cells negates the parameter.
    pub fn upper_diff(&self, k: &TrinomialCounts) -> Result<BoundResult> {
        let (value, iterations, tail) = self.lower_diff_value(&k.swapped())?;
        Ok(BoundResult {
            value: -value,
            side: BoundSide::Upper,
            level: self.config.beta,
            method: format!("{ENGINE_ID}/{STATISTIC_ID}/upper-diff"),
            diagnostics: BoundDiagnostics {
                iterations,
                tail_prob_at_value: tail,
            },
        })
    }

    /// Upper confidence bound for `(1 - p2)/(1 - p1) ∧ 1` obtained from the
    /// difference bound: the ratio never exceeds `1 + p1 - p2`, so
    /// `1 + u0` clamped into `[0, 1]` is valid.
    pub fn upper_ratio_from_diff(&self, k: &TrinomialCounts) -> Result<BoundResult> {
        let upper = self.upper_diff(k)?;
        Ok(BoundResult {
            value: (1.0 + upper.value).clamp(0.0, 1.0),
            side: BoundSide::Upper,
            level: self.config.beta,
            method: format!("{ENGINE_ID}/{STATISTIC_ID}/upper-ratio-via-diff"),
            diagnostics: upper.diagnostics,
        })
    }

    /// Direct Buehler upper bound for `(1 - p2)/(1 - p1) ∧ 1`, using the
    /// via-difference bound as designated statistic. Sharper than
    /// [`Self::upper_ratio_from_diff`] by construction; if numerics ever
    /// disagree the via-difference value is returned instead.
    ///
    /// Costs one difference-bound evaluation per outcome of the sample size,
    /// so it is far heavier than the via-difference route.
    pub fn upper_ratio_direct(&self, k: &TrinomialCounts) -> Result<BoundResult> {
        let fallback = self.upper_ratio_from_diff(k)?;
        let m = k.m();
        // Validates the outcome budget before the per-outcome sweep.
        let _ = self.ordering_table(m)?;
        let outcomes = enumerate_trinomial_outcomes(m);
        let score_of = |x: &TrinomialCounts| -> Result<f64> {
            Ok((1.0 - self.lower_diff_value(&x.swapped())?.0).clamp(0.0, 1.0))
        };
        let scores: Vec<f64> = outcomes.par_iter().map(&score_of).collect::<Result<_>>()?;
        let mut order: Vec<usize> = (0..outcomes.len()).collect();
        order.sort_by(|&a, &b| {
            scores[a]
                .total_cmp(&scores[b])
                .then(outcomes[a].k1.cmp(&outcomes[b].k1))
                .then(outcomes[a].k2.cmp(&outcomes[b].k2))
        });
        let sorted_scores: Vec<f64> = order.iter().map(|&i| scores[i]).collect();
        let sorted_cells: Vec<[f64; 3]> = order
            .iter()
            .map(|&i| {
                let o = outcomes[i];
                [o.k1 as f64, o.k2 as f64, o.k3 as f64]
            })
            .collect();
        let sorted_coef: Vec<f64> = order
            .iter()
            .map(|&i| {
                let o = outcomes[i];
                ln_factorial(m) - ln_factorial(o.k1) - ln_factorial(o.k2) - ln_factorial(o.k3)
            })
            .collect();

        let t_obs = score_of(k)?;
        // Outcomes scoring at or below the observed statistic form the tail.
        let end = sorted_scores.partition_point(|&s| s <= t_obs);
        let threshold = 1.0 - self.config.beta;

        let head_prob = |p: [f64; 3]| -> f64 {
            let lnp = [p[0].ln(), p[1].ln(), p[2].ln()];
            let mut acc = 0.0;
            for i in 0..end {
                let c = sorted_cells[i];
                let mut s = sorted_coef[i];
                let mut dead = false;
                for j in 0..3 {
                    if c[j] > 0.0 {
                        if lnp[j] == f64::NEG_INFINITY {
                            dead = true;
                            break;
                        }
                        s += c[j] * lnp[j];
                    }
                }
                if !dead {
                    acc += s.exp();
                }
            }
            acc.clamp(0.0, 1.0)
        };

        let mut iterations = 0usize;
        let mut profile = |r: f64| -> f64 {
            iterations += 1;
            self.max_head_over_ratio_nuisance(r, &head_prob)
        };

        let value = if threshold >= 1.0 {
            // Nothing qualifies; fall back to the vacuous upper end.
            1.0
        } else {
            // Largest qualifying ratio: scan downward-compatible grid, then
            // bisect the last qualify/non-qualify bracket from above.
            let steps = 50usize;
            let mut last_qualifying: Option<usize> = None;
            let grid: Vec<f64> = (0..=steps).map(|i| i as f64 / steps as f64).collect();
            let vals: Vec<f64> = grid.iter().map(|&r| profile(r)).collect();
            for (i, &v) in vals.iter().enumerate() {
                if v > threshold {
                    last_qualifying = Some(i);
                }
            }
            match last_qualifying {
                None => 1.0, // no ratio certified implausible-free; stay vacuous
                Some(i) if i == steps => 1.0,
                Some(i) => {
                    let (mut lo, mut hi) = (grid[i], grid[i + 1]);
                    while hi - lo > self.config.delta_tol {
                        let mid = 0.5 * (lo + hi);
                        if profile(mid) > threshold {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    hi
                }
            }
        };
        let tail_at = self.max_head_over_ratio_nuisance(value.min(1.0), &head_prob);

        if value > fallback.value + 1e-12 {
            return Ok(BoundResult {
                method: format!("{ENGINE_ID}/{STATISTIC_ID}/upper-ratio-via-diff(fallback)"),
                ..fallback
            });
        }
        Ok(BoundResult {
            value,
            side: BoundSide::Upper,
            level: self.config.beta,
            method: format!("{ENGINE_ID}/{STATISTIC_ID}/upper-ratio-direct"),
            diagnostics: BoundDiagnostics {
                iterations,
                tail_prob_at_value: tail_at,
            },
        })
    }

    /// Maximizes the head probability over all parameters whose ratio value
    /// is exactly `r`. For `r < 1` that set is the segment
    /// `p2 = 1 - r (1 - p1)` with `p1 in [0, r/(1+r)]`; for `r = 1` it is
    /// the two-dimensional region `p2 <= p1`.
    fn max_head_over_ratio_nuisance(&self, r: f64, head_prob: &dyn Fn([f64; 3]) -> f64) -> f64 {
        let clamp_simplex = |p1: f64, p2: f64| -> [f64; 3] {
            let p1 = p1.clamp(0.0, 1.0);
            let p2 = p2.clamp(0.0, 1.0 - p1);
            [p1, p2, (1.0 - p1 - p2).max(0.0)]
        };
        if r < 1.0 {
            let hi = r / (1.0 + r);
            let f = |p1: f64| head_prob(clamp_simplex(p1, 1.0 - r * (1.0 - p1)));
            self.max_on_segment(0.0, hi, &f)
        } else {
            // Coarse product grid over {p2 <= p1}, then golden passes on
            // each coordinate from the best cell.
            let g = 61usize;
            let mut best = f64::NEG_INFINITY;
            let mut best_pt = (0.0, 0.0);
            for i in 0..g {
                let p1 = i as f64 / (g - 1) as f64;
                let p2_max = p1.min(1.0 - p1);
                for j in 0..g {
                    let p2 = p2_max * j as f64 / (g - 1) as f64;
                    let v = head_prob(clamp_simplex(p1, p2));
                    if v > best {
                        best = v;
                        best_pt = (p1, p2);
                    }
                }
            }
            for _ in 0..2 {
                let (p1_fixed, p2_fixed) = best_pt;
                let v1 = self.max_on_segment(0.0, 1.0, &|p1: f64| {
                    head_prob(clamp_simplex(p1, p2_fixed.min(p1.min(1.0 - p1))))
                });
                best = best.max(v1);
                let cap = p1_fixed.min(1.0 - p1_fixed);
                let v2 = self.max_on_segment(0.0, cap, &|p2: f64| {
                    head_prob(clamp_simplex(p1_fixed, p2))
                });
                best = best.max(v2);
            }
            best
        }
    }

    fn max_on_segment(&self, lo: f64, hi: f64, f: &dyn Fn(f64) -> f64) -> f64 {
        if hi - lo <= f64::EPSILON {
            return f(lo);
        }
        let g = self.config.nuisance_grid;
        let mut best = f64::NEG_INFINITY;
        let mut best_idx = 0usize;
        for j in 0..g {
            let x = lo + (hi - lo) * j as f64 / (g - 1) as f64;
            let v = f(x);
            if v > best {
                best = v;
                best_idx = j;
            }
        }
        let step = (hi - lo) / (g - 1) as f64;
        let mut a = lo + step * best_idx.saturating_sub(1) as f64;
        let mut b = (lo + step * (best_idx + 1) as f64).min(hi);
        let mut x1 = b - INV_PHI * (b - a);
        let mut x2 = a + INV_PHI * (b - a);
        let mut f1 = f(x1);
        let mut f2 = f(x2);
        best = best.max(f1).max(f2);
        for _ in 0..self.config.refine_iters {
            if f1 < f2 {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + INV_PHI * (b - a);
                f2 = f(x2);
                best = best.max(f2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - INV_PHI * (b - a);
                f1 = f(x1);
                best = best.max(f1);
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::trinomial_log_pmf;

    fn engine(beta: f64) -> ExactBoundEngine {
        ExactBoundEngine::new(BoundConfig::with_beta(beta)).unwrap()
    }

    #[test]
    fn score_empty_sample_and_median() {
        assert_eq!(approx_lower_diff(&TrinomialCounts::new(0, 0, 0), 0.95), -1.0);
        // At beta = 0.5 the z term vanishes and the score is the adjusted
        // point estimate.
        let k = TrinomialCounts::new(3, 1, 6);
        let d_hat = (3.0 - 1.0) / 11.0;
        assert!((approx_lower_diff(&k, 0.5) - d_hat).abs() < 1e-12);
    }

    #[test]
    fn score_observed_table_closed_form() {
        let k = TrinomialCounts::new(20, 4, 232);
        let z = normal_quantile(0.95);
        let mt = 257.0f64;
        let want = 16.0 / mt - z * (25.0 - 256.0 / mt).sqrt() / mt;
        assert!((approx_lower_diff(&k, 0.95) - want).abs() < 1e-15);
        assert!((approx_lower_diff(&k, 0.95) - 0.030899).abs() < 1e-5);
    }

    #[test]
    fn vacuous_levels() {
        let e0 = engine(0.0);
        for k in [
            TrinomialCounts::new(0, 0, 0),
            TrinomialCounts::new(5, 1, 2),
            TrinomialCounts::new(3, 3, 0),
        ] {
            assert_eq!(e0.lower_diff(&k).unwrap().value, -1.0);
            assert_eq!(e0.upper_ratio_from_diff(&k).unwrap().value, 1.0);
        }
        let e1 = engine(1.0);
        for k in enumerate_trinomial_outcomes(4) {
            assert_eq!(e1.lower_diff(&k).unwrap().value, -1.0);
        }
    }

    #[test]
    fn tail_prob_edges() {
        let e = engine(0.8);
        let table = e.ordering_table(3).unwrap();
        // Threshold at the minimum score: the tail is everything.
        let all = tail_prob(&table, 0.1, 0.6, table.min_score());
        assert!((all - 1.0).abs() < 1e-12);
        // eta at the boundary |delta| still yields a finite probability.
        let v = tail_prob(&table, 0.4, 0.4, 0.0);
        assert!(v.is_finite() && (0.0..=1.0).contains(&v));
        // Hand-summed comparison for a generic parameter.
        let (delta, eta) = (0.2, 0.7);
        let p = [0.45, 0.25, 0.3];
        let t_obs = approx_lower_diff(&TrinomialCounts::new(2, 0, 1), 0.8);
        let by_hand: f64 = enumerate_trinomial_outcomes(3)
            .iter()
            .filter(|k| approx_lower_diff(k, 0.8) >= t_obs)
            .map(|k| trinomial_log_pmf(&p, k).exp())
            .sum();
        assert!((tail_prob(&table, delta, eta, t_obs) - by_hand).abs() < 1e-12);
    }

    #[test]
    fn reflection_identity_exact() {
        for beta in [0.5, 0.9] {
            let e = engine(beta);
            for m in 0..=6u64 {
                for k in enumerate_trinomial_outcomes(m) {
                    let u0 = e.upper_diff(&k).unwrap().value;
                    let l = e.lower_diff(&k.swapped()).unwrap().value;
                    assert_eq!(u0.to_bits(), (-l).to_bits(), "k = {k:?}");
                }
            }
        }
    }

    #[test]
    fn monotone_in_designated_statistic_small() {
        let e = engine(0.9);
        let mut pairs: Vec<(f64, f64)> = enumerate_trinomial_outcomes(5)
            .iter()
            .map(|k| {
                (
                    approx_lower_diff(k, 0.9),
                    e.lower_diff(k).unwrap().value,
                )
            })
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in pairs.windows(2) {
            assert!(w[0].1 <= w[1].1 + 1e-15, "{w:?}");
        }
    }

    #[test]
    fn corner_outcome_matches_brute_force() {
        // k = (m, 0, 0) at m = 2: exhaustive (delta, eta) grid at 1e-3.
        let beta = 0.8;
        let e = engine(beta);
        let k = TrinomialCounts::new(2, 0, 0);
        let ours = e.lower_diff(&k).unwrap().value;
        let brute = crate::verify::brute_force_lower_diff(&k, beta, 1000);
        assert!(ours <= 1.0);
        assert!(
            (ours - brute).abs() <= 2e-3,
            "engine {ours} vs brute force {brute}"
        );
    }

    #[test]
    fn budget_guard_reports_required_count() {
        let cfg = BoundConfig {
            max_outcomes: 10,
            ..BoundConfig::default()
        };
        let e = ExactBoundEngine::new(cfg).unwrap();
        match e.lower_diff(&TrinomialCounts::new(4, 4, 4)) {
            Err(Error::Resource { required, budget }) => {
                assert_eq!(required, 91);
                assert_eq!(budget, 10);
            }
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn ratio_clamps_at_one_for_nonnegative_upper_diff() {
        let e = engine(0.8);
        let k = TrinomialCounts::new(5, 0, 5);
        assert!(e.upper_diff(&k).unwrap().value >= 0.0);
        assert_eq!(e.upper_ratio_from_diff(&k).unwrap().value, 1.0);
    }

    #[test]
    fn ratio_direct_never_exceeds_via_diff() {
        let e = engine(0.8);
        for k in enumerate_trinomial_outcomes(4) {
            let via = e.upper_ratio_from_diff(&k).unwrap().value;
            let direct = e.upper_ratio_direct(&k).unwrap().value;
            assert!(direct <= via + 1e-12, "k = {k:?}: {direct} vs {via}");
        }
        // k2 = 0 does not force the direct bound to 1.
        let k = TrinomialCounts::new(3, 0, 1);
        let direct = e.upper_ratio_direct(&k).unwrap().value;
        assert!(direct <= e.upper_ratio_from_diff(&k).unwrap().value + 1e-12);
    }

    #[test]
    fn ratio_direct_matches_brute_force_micro() {
        let beta = 0.8;
        let e = engine(beta);
        for k in enumerate_trinomial_outcomes(2) {
            let direct = e.upper_ratio_direct(&k).unwrap().value;
            let brute = crate::verify::brute_force_upper_ratio(&e, &k, 1000).unwrap();
            assert!(
                (direct - brute).abs() <= 2e-3,
                "k = {k:?}: engine {direct} vs brute force {brute}"
            );
        }
    }

    // Heavy: one difference bound per outcome at m = 46. Run explicitly
    // with `cargo test -p nogold --lib -- --ignored`.
    #[test]
    #[ignore]
    fn ratio_direct_sharpens_reference_sensitivity_bound() {
        let e = engine(0.95);
        let k = TrinomialCounts::new(4, 20, 22);
        let via = e.upper_ratio_from_diff(&k).unwrap().value;
        let direct = e.upper_ratio_direct(&k).unwrap().value;
        assert!(direct <= via + 1e-12, "{direct} vs {via}");
        assert!(direct <= 0.83 + 1e-12, "{direct}");
    }

    #[test]
    fn deterministic_across_fresh_engines() {
        let k = TrinomialCounts::new(6, 2, 12);
        let a = engine(0.95).lower_diff(&k).unwrap();
        let b = engine(0.95).lower_diff(&k).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(
            a.diagnostics.tail_prob_at_value.to_bits(),
            b.diagnostics.tail_prob_at_value.to_bits()
        );
    }

    #[test]
    fn invalid_configs_rejected() {
        assert!(ExactBoundEngine::new(BoundConfig::with_beta(1.5)).is_err());
        let cfg = BoundConfig {
            nuisance_grid: 2,
            ..BoundConfig::default()
        };
        assert!(ExactBoundEngine::new(cfg).is_err());
        let cfg = BoundConfig {
            delta_tol: 0.0,
            ..BoundConfig::default()
        };
        assert!(ExactBoundEngine::new(cfg).is_err());
    }
}
