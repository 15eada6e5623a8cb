//! Exact feasible sets of accuracy/prevalence values compatible with an
//! observed result-pair density.
//!
//! For a fixed density `q` over the four result pairs, the set of latent
//! parameters mapping onto `q` projects onto various coordinate subsets:
//! the full quintuple `(Pr, Sp1, Se1, Sp2, Se2)`, the sensitivity triple
//! `(Pr, Se1, Se2)`, the gain pair `(Pr, Se2 - Se1)`, and the single-test
//! pairs. Each projection is an explicit system of linear (in)equalities;
//! this module provides the membership predicates for both the full and the
//! specificity-ordered (restricted) model, a constructive inverse that
//! rebuilds a latent parameter from a feasible quintuple, and a seeded
//! sampler used as a brute-force oracle by the verification suite.
//!
//! Membership comparisons use the absolute tolerance [`FEASIBILITY_TOL`] on
//! every equality and inequality: feasible points come from exact arithmetic
//! or from evaluating the marginal map, so a tight uniform slack is right.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::{JointDensity, LatentParams, TestId};
use crate::{Error, Result};

/// Absolute tolerance applied to each side of every membership condition.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Joint prevalence/accuracy point `(Pr, Sp1, Se1, Sp2, Se2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibleQuintuple {
    pub pr: f64,
    pub sp1: f64,
    pub se1: f64,
    pub sp2: f64,
    pub se2: f64,
}

impl FeasibleQuintuple {
    pub fn new(pr: f64, sp1: f64, se1: f64, sp2: f64, se2: f64) -> Result<Self> {
        for (name, v) in [
            ("pr", pr),
            ("sp1", sp1),
            ("se1", se1),
            ("sp2", sp2),
            ("se2", se2),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Validation(format!("{name} = {v} outside [0, 1]")));
            }
        }
        Ok(Self {
            pr,
            sp1,
            se1,
            sp2,
            se2,
        })
    }

    pub fn sens_triple(&self) -> SensTriple {
        SensTriple {
            pr: self.pr,
            se1: self.se1,
            se2: self.se2,
        }
    }

    pub fn gain_pair(&self) -> GainPair {
        GainPair {
            pr: self.pr,
            dse: self.se2 - self.se1,
        }
    }
}

/// Prevalence and the two sensitivities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensTriple {
    pub pr: f64,
    pub se1: f64,
    pub se2: f64,
}

impl SensTriple {
    pub fn new(pr: f64, se1: f64, se2: f64) -> Result<Self> {
        for (name, v) in [("pr", pr), ("se1", se1), ("se2", se2)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Validation(format!("{name} = {v} outside [0, 1]")));
            }
        }
        Ok(Self { pr, se1, se2 })
    }
}

/// Prevalence and the sensitivity gain `Se2 - Se1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainPair {
    pub pr: f64,
    pub dse: f64,
}

impl GainPair {
    pub fn new(pr: f64, dse: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&pr) {
            return Err(Error::Validation(format!("pr = {pr} outside [0, 1]")));
        }
        if !(-1.0..=1.0).contains(&dse) {
            return Err(Error::Validation(format!("dse = {dse} outside [-1, 1]")));
        }
        Ok(Self { pr, dse })
    }
}

/// The quintuple of a latent parameter: prevalence plus both tests'
/// marginal characteristics.
pub fn quintuple_of(theta: &LatentParams) -> FeasibleQuintuple {
    let c1 = theta.characteristics(TestId::First);
    let c2 = theta.characteristics(TestId::Second);
    FeasibleQuintuple {
        pr: theta.prevalence(),
        sp1: c1.sp,
        se1: c1.se,
        sp2: c2.sp,
        se2: c2.se,
    }
}

fn pos(x: f64) -> f64 {
    x.max(0.0)
}

fn interval_violation(x: f64, lo: f64, hi: f64) -> f64 {
    pos(lo - x).max(pos(x - hi))
}

/// Worst violation of the quintuple membership system: the two marginal
/// balance equations
///
/// ```text
/// (1 - Pr)(1 - Sp1) + Pr Se1 = P(test 1 positive)
/// (1 - Pr)(1 - Sp2) + Pr Se2 = P(test 2 positive)
/// ```
///
/// plus the two bounds sandwiching the both-negative cell between the
/// largest and smallest joint-agreement mass the marginals allow.
pub fn quintuple_residual(q: &JointDensity, pt: &FeasibleQuintuple) -> f64 {
    let FeasibleQuintuple {
        pr,
        sp1,
        se1,
        sp2,
        se2,
    } = *pt;
    let c1 = ((1.0 - pr) * (1.0 - sp1) + pr * se1 - q.q1_plus()).abs();
    let c2 = ((1.0 - pr) * (1.0 - sp2) + pr * se2 - q.q_plus1()).abs();
    let upper = (1.0 - pr) * sp1.min(sp2) + pr * (1.0 - se1.max(se2));
    let c3 = pos(q.q00() - upper);
    let lower = (1.0 - pr) * pos(sp1 + sp2 - 1.0) + pr * pos(1.0 - se1 - se2);
    let c4 = pos(lower - q.q00());
    c1.max(c2).max(c3).max(c4)
}

/// Residual of the equivalent difference/sum form of the quintuple system.
pub fn quintuple_residual_alt(q: &JointDensity, pt: &FeasibleQuintuple) -> f64 {
    let FeasibleQuintuple {
        pr,
        sp1,
        se1,
        sp2,
        se2,
    } = *pt;
    let diff = pr * (se2 - se1);
    let sum = pr * (se1 + se2 - 1.0);
    let c5 = (diff - ((1.0 - pr) * (sp2 - sp1) + q.q01() - q.q10())).abs();
    let c6 = (sum - ((1.0 - pr) * (sp1 + sp2 - 1.0) + q.q11() - q.q00())).abs();
    let c7 = interval_violation(diff, -q.q10(), q.q01());
    let c8 = interval_violation(sum, -q.q00(), q.q11());
    c5.max(c6).max(c7).max(c8)
}

/// Residual of the restricted (`Sp1 <= Sp2`) quintuple system.
pub fn quintuple_residual_restricted(q: &JointDensity, pt: &FeasibleQuintuple) -> f64 {
    quintuple_residual(q, pt).max(pos(pt.sp1 - pt.sp2))
}

/// Residual of the sensitivity-triple system: the gain and sum bounds plus
/// the per-test range constraints on `Pr Se_t`.
pub fn sens_triple_residual(q: &JointDensity, t: &SensTriple) -> f64 {
    let SensTriple { pr, se1, se2 } = *t;
    let diff = pr * (se2 - se1);
    let sum = pr * (se1 + se2 - 1.0);
    let c7 = interval_violation(diff, -q.q10(), q.q01());
    let c8 = interval_violation(sum, -q.q00(), q.q11());
    let c10 = interval_violation(pr * se1, pr - q.q0_plus(), q.q1_plus());
    let c11 = interval_violation(pr * se2, pr - q.q_plus0(), q.q_plus1());
    c7.max(c8).max(c10).max(c11)
}

/// Residual of the restricted sensitivity-triple system, where the gain
/// term is pinned to `[q01 - q10, q01]`.
pub fn sens_triple_residual_restricted(q: &JointDensity, t: &SensTriple) -> f64 {
    let SensTriple { pr, se1, se2 } = *t;
    let diff = pr * (se2 - se1);
    let sum = pr * (se1 + se2 - 1.0);
    let c8 = interval_violation(sum, -q.q00(), q.q11());
    let c10 = interval_violation(pr * se1, pr - q.q0_plus(), q.q1_plus());
    let c11 = interval_violation(pr * se2, pr - q.q_plus0(), q.q_plus1());
    let c12 = interval_violation(diff, q.q01() - q.q10(), q.q01());
    c8.max(c10).max(c11).max(c12)
}

fn gain_residual(q: &JointDensity, g: &GainPair) -> f64 {
    let x = g.pr * g.dse;
    let lo = (-q.q10()).max(q.q01() - q.q10() + g.pr - 1.0);
    let hi = q.q01().min(q.q01() - q.q10() + 1.0 - g.pr);
    interval_violation(x, lo, hi)
}

fn gain_residual_restricted(q: &JointDensity, g: &GainPair) -> f64 {
    let x = g.pr * g.dse;
    let lo = q.q01() - q.q10();
    let hi = q.q01().min(q.q01() - q.q10() + 1.0 - g.pr);
    interval_violation(x, lo, hi)
}

/// Membership in the full quintuple set.
pub fn is_feasible_quintuple(q: &JointDensity, pt: &FeasibleQuintuple) -> bool {
    quintuple_residual(q, pt) <= FEASIBILITY_TOL
}

/// Membership via the equivalent difference/sum system.
pub fn is_feasible_quintuple_alt(q: &JointDensity, pt: &FeasibleQuintuple) -> bool {
    quintuple_residual_alt(q, pt) <= FEASIBILITY_TOL
}

/// Membership in the restricted quintuple set (`Sp1 <= Sp2`).
pub fn is_feasible_quintuple_restricted(q: &JointDensity, pt: &FeasibleQuintuple) -> bool {
    quintuple_residual_restricted(q, pt) <= FEASIBILITY_TOL
}

/// Membership in the sensitivity-triple projection.
pub fn is_feasible_sens_triple(q: &JointDensity, t: &SensTriple) -> bool {
    sens_triple_residual(q, t) <= FEASIBILITY_TOL
}

/// Membership in the restricted sensitivity-triple projection.
pub fn is_feasible_sens_triple_restricted(q: &JointDensity, t: &SensTriple) -> bool {
    sens_triple_residual_restricted(q, t) <= FEASIBILITY_TOL
}

/// Membership in the gain projection.
pub fn is_feasible_gain(q: &JointDensity, g: &GainPair) -> bool {
    gain_residual(q, g) <= FEASIBILITY_TOL
}

/// Membership in the restricted gain projection. Contains
/// `(1, q01 - q10)` for every `q`.
pub fn is_feasible_gain_restricted(q: &JointDensity, g: &GainPair) -> bool {
    gain_residual_restricted(q, g) <= FEASIBILITY_TOL
}

/// Membership in the `(Pr, Se1)` projection of the full model.
pub fn is_feasible_pr_se1(q: &JointDensity, pr: f64, se1: f64) -> bool {
    interval_violation(pr * se1, pr - q.q0_plus(), q.q1_plus()) <= FEASIBILITY_TOL
}

/// Membership in the `(Pr, Se2)` projection of the full model.
pub fn is_feasible_pr_se2(q: &JointDensity, pr: f64, se2: f64) -> bool {
    interval_violation(pr * se2, pr - q.q_plus0(), q.q_plus1()) <= FEASIBILITY_TOL
}

/// Necessary condition for `(Pr, Se1)` under the restricted model. This is
/// an inclusion, not an equality: points failing it are certainly
/// infeasible, points passing it are not certified feasible.
pub fn restricted_se1_necessary(q: &JointDensity, pr: f64, se1: f64) -> bool {
    let hi = q.q1_plus().min(pr + q.q10() - q.q01());
    interval_violation(pr * se1, pr - q.q0_plus(), hi) <= FEASIBILITY_TOL
}

/// Prevalence-free upper limit for the first test's sensitivity under the
/// restricted model: `P(test 1 positive) / P(test 2 positive)`, capped at 1,
/// and read as 1 when the denominator vanishes.
pub fn se1_upper_from_density(q: &JointDensity) -> f64 {
    if q.q_plus1() <= 0.0 {
        return 1.0;
    }
    (q.q1_plus() / q.q_plus1()).min(1.0)
}

/// Rebuilds a latent parameter whose marginal density is `q` and whose
/// quintuple matches `pt`.
///
/// The both-negative conditional cells are the only freedom left once the
/// quintuple is fixed; they are chosen by linear interpolation between the
/// extreme admissible pairs so that the mixture meets the observed
/// both-negative mass, and the remaining six cells follow from the row
/// identities. When the interpolation is degenerate (the mixture is the
/// same at both extremes) the midpoint is used for the unconstrained cells.
pub fn construct_theta(q: &JointDensity, pt: &FeasibleQuintuple) -> Result<LatentParams> {
    if !is_feasible_quintuple(q, pt) {
        return Err(Error::Infeasible(format!(
            "quintuple residual {:.3e} exceeds tolerance {FEASIBILITY_TOL:e}",
            quintuple_residual(q, pt)
        )));
    }
    let FeasibleQuintuple {
        pr,
        sp1,
        se1,
        sp2,
        se2,
    } = *pt;

    let lo0 = pos(sp1 + sp2 - 1.0);
    let hi0 = sp1.min(sp2);
    let lo1 = pos(1.0 - se1 - se2);
    let hi1 = (1.0 - se1).min(1.0 - se2);

    let at_lo = (1.0 - pr) * lo0 + pr * lo1;
    let at_hi = (1.0 - pr) * hi0 + pr * hi1;
    let t = if at_hi - at_lo > 0.0 {
        ((q.q00() - at_lo) / (at_hi - at_lo)).clamp(0.0, 1.0)
    } else {
        0.5
    };
    let c0 = lo0 + t * (hi0 - lo0);
    let c1 = lo1 + t * (hi1 - lo1);

    let row0 = [c0, sp1 - c0, sp2 - c0, 1.0 - sp1 - sp2 + c0];
    let row1 = [c1, 1.0 - se1 - c1, 1.0 - se2 - c1, se1 + se2 - 1.0 + c1];
    LatentParams::new([1.0 - pr, pr], [row0, row1])
}

/// Draws one latent parameter uniformly: uniform prevalence and, per state,
/// a flat Dirichlet row over the four result pairs. With `restricted`,
/// rejects until the first test is at most as specific as the second.
pub fn sample_latent(rng: &mut ChaCha8Rng, restricted: bool) -> LatentParams {
    loop {
        let pr: f64 = rng.random();
        let rows: [[f64; 4]; 2] = std::array::from_fn(|_| {
            let mut row: [f64; 4] =
                std::array::from_fn(|_| -(1.0 - rng.random::<f64>()).ln());
            let s: f64 = row.iter().sum();
            for x in row.iter_mut() {
                *x /= s;
            }
            row
        });
        let theta = LatentParams::new([1.0 - pr, pr], rows)
            .expect("sampled parameter rows are valid");
        if !restricted || theta.is_specificity_ordered() {
            return theta;
        }
    }
}

/// Draws `count` independent `(density, quintuple)` pairs from the latent
/// parameter space. Deterministic given the seed.
pub fn sample_feasible_pairs(
    seed: u64,
    count: usize,
    restricted: bool,
) -> Vec<(JointDensity, FeasibleQuintuple)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let theta = sample_latent(&mut rng, restricted);
            (theta.marginal_density(), quintuple_of(&theta))
        })
        .collect()
}

const GRID_STEP: f64 = 0.01;
const REFINE_STARTS: usize = 5;
const TERNARY_ITERS: usize = 80;
const REFINE_SWEEPS: usize = 12;
const REFINE_TARGET: f64 = 1e-13;

fn ternary_min(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    for _ in 0..TERNARY_ITERS {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        let f1 = f(m1);
        let f2 = f(m2);
        if f1 < f2 {
            b = m2;
        } else if f1 > f2 {
            a = m1;
        } else {
            // Plateau of the max-type residual: contract towards its
            // center, where the dominated |...| terms are smallest.
            a = m1;
            b = m2;
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Minimizes `f` over an axis-aligned box: exhaustive grid at step
/// [`GRID_STEP`], then per-coordinate ternary refinement from the best grid
/// starts. The residuals minimized here are coordinatewise convex, so the
/// refinement converges; multiple starts guard against corner stalls.
fn minimize_box(ranges: &[(f64, f64)], f: impl Fn(&[f64]) -> f64) -> (Vec<f64>, f64) {
    let axes: Vec<Vec<f64>> = ranges
        .iter()
        .map(|&(lo, hi)| {
            if hi <= lo {
                return vec![lo];
            }
            let steps = ((hi - lo) / GRID_STEP).ceil() as usize;
            (0..=steps)
                .map(|i| (lo + i as f64 * (hi - lo) / steps as f64).min(hi))
                .collect()
        })
        .collect();

    let mut cands: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut idx = vec![0usize; axes.len()];
    loop {
        let point: Vec<f64> = idx.iter().zip(&axes).map(|(&i, ax)| ax[i]).collect();
        cands.push((f(&point), point));
        let mut dim = 0;
        loop {
            if dim == axes.len() {
                break;
            }
            idx[dim] += 1;
            if idx[dim] < axes[dim].len() {
                break;
            }
            idx[dim] = 0;
            dim += 1;
        }
        if dim == axes.len() {
            break;
        }
    }
    cands.sort_by(|a, b| a.0.total_cmp(&b.0));
    cands.truncate(REFINE_STARTS);

    let mut best = cands[0].clone();
    for (_, start) in &cands {
        let mut x = start.clone();
        let mut fx = f(&x);
        for _ in 0..REFINE_SWEEPS {
            let mut any_change = false;
            for (d, &(lo, hi)) in ranges.iter().enumerate() {
                if hi <= lo {
                    continue;
                }
                let (xd, fd) = ternary_min(lo, hi, |v| {
                    let mut y = x.clone();
                    y[d] = v;
                    f(&y)
                });
                // Equal-value moves still reposition within a plateau and
                // unlock the next coordinate's progress.
                if fd <= fx {
                    if fd < fx || (xd - x[d]).abs() > 1e-15 {
                        any_change = true;
                    }
                    x[d] = xd;
                    fx = fd;
                }
            }
            if fx <= REFINE_TARGET || !any_change {
                break;
            }
        }
        if fx < best.0 {
            best = (fx, x);
        }
    }
    (best.1, best.0)
}

/// How close a completion must get before it counts as a feasible witness.
/// Tight enough that the reconstruction gate accepts the completed point.
pub const COMPLETION_TOL: f64 = 1e-10;

/// Extends a feasible sensitivity triple to a full quintuple by searching
/// the two specificities.
pub fn complete_sens_triple(q: &JointDensity, t: &SensTriple) -> Option<FeasibleQuintuple> {
    let build = |sp: &[f64]| FeasibleQuintuple {
        pr: t.pr,
        sp1: sp[0],
        se1: t.se1,
        sp2: sp[1],
        se2: t.se2,
    };
    let (x, r) = minimize_box(&[(0.0, 1.0), (0.0, 1.0)], |sp| {
        quintuple_residual(q, &build(sp))
    });
    (r <= COMPLETION_TOL).then(|| build(&x))
}

/// Restricted-model variant of [`complete_sens_triple`].
pub fn complete_sens_triple_restricted(
    q: &JointDensity,
    t: &SensTriple,
) -> Option<FeasibleQuintuple> {
    let build = |sp: &[f64]| FeasibleQuintuple {
        pr: t.pr,
        sp1: sp[0],
        se1: t.se1,
        sp2: sp[1],
        se2: t.se2,
    };
    let (x, r) = minimize_box(&[(0.0, 1.0), (0.0, 1.0)], |sp| {
        quintuple_residual_restricted(q, &build(sp))
    });
    (r <= COMPLETION_TOL).then(|| build(&x))
}

fn se1_range_for_gain(dse: f64) -> (f64, f64) {
    (pos(-dse), (1.0 - dse).min(1.0))
}

/// Extends a feasible gain pair to a sensitivity triple by searching the
/// first sensitivity (the second is pinned by the gain).
pub fn complete_gain(q: &JointDensity, g: &GainPair) -> Option<SensTriple> {
    let build = |se1: f64| SensTriple {
        pr: g.pr,
        se1,
        se2: se1 + g.dse,
    };
    let (lo, hi) = se1_range_for_gain(g.dse);
    if hi < lo {
        return None;
    }
    let (x, r) = minimize_box(&[(lo, hi)], |v| sens_triple_residual(q, &build(v[0])));
    (r <= COMPLETION_TOL).then(|| build(x[0]))
}

/// Restricted-model variant of [`complete_gain`].
pub fn complete_gain_restricted(q: &JointDensity, g: &GainPair) -> Option<SensTriple> {
    let build = |se1: f64| SensTriple {
        pr: g.pr,
        se1,
        se2: se1 + g.dse,
    };
    let (lo, hi) = se1_range_for_gain(g.dse);
    if hi < lo {
        return None;
    }
    let (x, r) = minimize_box(&[(lo, hi)], |v| {
        sens_triple_residual_restricted(q, &build(v[0]))
    });
    (r <= COMPLETION_TOL).then(|| build(x[0]))
}

/// Extends a feasible `(Pr, Se1)` point to a sensitivity triple by
/// searching the second sensitivity.
pub fn complete_pr_se1(q: &JointDensity, pr: f64, se1: f64) -> Option<SensTriple> {
    let build = |se2: f64| SensTriple { pr, se1, se2 };
    let (x, r) = minimize_box(&[(0.0, 1.0)], |v| sens_triple_residual(q, &build(v[0])));
    (r <= COMPLETION_TOL).then(|| build(x[0]))
}

/// Extends a feasible `(Pr, Se2)` point to a sensitivity triple by
/// searching the first sensitivity.
pub fn complete_pr_se2(q: &JointDensity, pr: f64, se2: f64) -> Option<SensTriple> {
    let build = |se1: f64| SensTriple { pr, se1, se2 };
    let (x, r) = minimize_box(&[(0.0, 1.0)], |v| sens_triple_residual(q, &build(v[0])));
    (r <= COMPLETION_TOL).then(|| build(x[0]))
}
