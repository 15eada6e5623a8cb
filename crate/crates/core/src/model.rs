//! Probability primitives: the latent class parameter space for two paired
//! dichotomous tests, the marginal map onto observed result-pair densities,
//! and log-scale multinomial mass functions.
//!
//! An item has an unobserved state in {0, 1} (1 = positive). Both tests are
//! applied to every item; the observable is the result pair `(j1, j2)` in
//! {0, 1}^2 where `j1` is the first test's result. Conditional result-pair
//! probabilities are indexed `00, 01, 10, 11` in that order throughout.
//!
//! All mass functions work in log scale with a cached log-factorial table so
//! that tail sums over thousands of outcomes at sample size 256 stay stable.

use std::sync::{LazyLock, RwLock};

use crate::{Error, Result};

/// Tolerance for simplex constraints on input probability vectors. Inputs
/// within this tolerance are renormalized; anything worse is rejected.
pub const SIMPLEX_TOL: f64 = 1e-12;

static LN_FACTORIAL: LazyLock<RwLock<Vec<f64>>> =
    LazyLock::new(|| RwLock::new(vec![0.0, 0.0]));

/// `ln(k!)`, from a process-wide table grown to the largest argument seen.
///
/// Entries are filled from the log-gamma function rather than by recurrence,
/// so the table carries no accumulated rounding.
pub fn ln_factorial(k: u64) -> f64 {
    let k = k as usize;
    {
        let cache = LN_FACTORIAL.read().expect("ln_factorial cache poisoned");
        if let Some(&v) = cache.get(k) {
            return v;
        }
    }
    let mut cache = LN_FACTORIAL.write().expect("ln_factorial cache poisoned");
    while cache.len() <= k {
        let n = cache.len() as f64;
        cache.push(statrs::function::gamma::ln_gamma(n + 1.0));
    }
    cache[k]
}

fn check_simplex(name: &str, v: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for (i, &x) in v.iter().enumerate() {
        if !x.is_finite() || x < -SIMPLEX_TOL {
            return Err(Error::Validation(format!(
                "{name}[{i}] = {x} is not a probability"
            )));
        }
        sum += x;
    }
    if (sum - 1.0).abs() > SIMPLEX_TOL {
        return Err(Error::Validation(format!(
            "{name} sums to {sum}, not 1 (tolerance {SIMPLEX_TOL:e})"
        )));
    }
    Ok(sum)
}

fn renormalize(v: &mut [f64], sum: f64) {
    for x in v.iter_mut() {
        *x = (*x).max(0.0) / sum;
    }
}

/// Which of the two paired tests a marginal quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestId {
    First,
    Second,
}

/// Specificity/sensitivity pair of a single test.
///
/// Specificity is the probability that a negative item is diagnosed
/// negative; sensitivity the probability that a positive item is diagnosed
/// positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestCharacteristics {
    pub sp: f64,
    pub se: f64,
}

/// Latent class parameter for two paired tests: a prevalence vector over the
/// unobserved state and, per state, a conditional density over the four
/// result pairs.
///
/// `transition[i]` is the row for state `i`, ordered `[00, 01, 10, 11]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatentParams {
    prevalence: [f64; 2],
    transition: [[f64; 4]; 2],
}

impl LatentParams {
    /// Validates simplex constraints (tolerance [`SIMPLEX_TOL`]) and
    /// renormalizes inputs that are within tolerance.
    pub fn new(prevalence: [f64; 2], transition: [[f64; 4]; 2]) -> Result<Self> {
        let mut prevalence = prevalence;
        let mut transition = transition;
        let s = check_simplex("prevalence", &prevalence)?;
        renormalize(&mut prevalence, s);
        for (i, row) in transition.iter_mut().enumerate() {
            let s = check_simplex(&format!("transition[{i}]"), row)?;
            renormalize(row, s);
        }
        Ok(Self {
            prevalence,
            transition,
        })
    }

    /// Prevalence of the positive state.
    pub fn prevalence(&self) -> f64 {
        self.prevalence[1]
    }

    /// Conditional probability of result pair `j` (index `2*j1 + j2`) given
    /// state `i`.
    pub fn transition(&self, i: usize, j: usize) -> f64 {
        self.transition[i][j]
    }

    pub fn transition_row(&self, i: usize) -> &[f64; 4] {
        &self.transition[i]
    }

    /// The observable result-pair density: mixes the two conditional rows by
    /// prevalence.
    pub fn marginal_density(&self) -> JointDensity {
        let mut q = [0.0; 4];
        for (j, qj) in q.iter_mut().enumerate() {
            *qj = self.prevalence[0] * self.transition[0][j]
                + self.prevalence[1] * self.transition[1][j];
        }
        JointDensity::new(q).expect("mixture of valid rows is a valid density")
    }

    /// Marginal specificity and sensitivity of one test.
    ///
    /// The first test marginalizes over the second result bit and vice
    /// versa: `sp` is the conditional probability of that test reading 0 in
    /// state 0, `se` of reading 1 in state 1.
    pub fn characteristics(&self, test: TestId) -> TestCharacteristics {
        // Row indices with the given test's bit equal to 0 resp. 1.
        let (zero, one) = match test {
            TestId::First => ([0, 1], [2, 3]),
            TestId::Second => ([0, 2], [1, 3]),
        };
        let sp = self.transition[0][zero[0]] + self.transition[0][zero[1]];
        let se = self.transition[1][one[0]] + self.transition[1][one[1]];
        TestCharacteristics { sp, se }
    }

    /// Whether the first test is at most as specific as the second.
    pub fn is_specificity_ordered(&self) -> bool {
        self.characteristics(TestId::First).sp <= self.characteristics(TestId::Second).sp
    }
}

/// A probability density over the four result pairs, ordered
/// `[00, 01, 10, 11]` with the first test's bit leading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointDensity {
    q: [f64; 4],
}

impl JointDensity {
    pub fn new(q: [f64; 4]) -> Result<Self> {
        let mut q = q;
        let s = check_simplex("q", &q)?;
        renormalize(&mut q, s);
        Ok(Self { q })
    }

    /// Empirical density `k/n` of an observed table.
    pub fn from_counts(k: &PairedCounts) -> Self {
        let n = k.n() as f64;
        Self {
            q: [
                k.k00 as f64 / n,
                k.k01 as f64 / n,
                k.k10 as f64 / n,
                k.k11 as f64 / n,
            ],
        }
    }

    pub fn cells(&self) -> [f64; 4] {
        self.q
    }

    pub fn q00(&self) -> f64 {
        self.q[0]
    }
    pub fn q01(&self) -> f64 {
        self.q[1]
    }
    pub fn q10(&self) -> f64 {
        self.q[2]
    }
    pub fn q11(&self) -> f64 {
        self.q[3]
    }

    /// P(first test positive).
    pub fn q1_plus(&self) -> f64 {
        self.q[2] + self.q[3]
    }
    /// P(first test negative).
    pub fn q0_plus(&self) -> f64 {
        self.q[0] + self.q[1]
    }
    /// P(second test positive).
    pub fn q_plus1(&self) -> f64 {
        self.q[1] + self.q[3]
    }
    /// P(second test negative).
    pub fn q_plus0(&self) -> f64 {
        self.q[0] + self.q[2]
    }
}

/// Observed paired 2x2 table. `k01` counts items negative on the first test
/// and positive on the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct PairedCounts {
    pub k00: u64,
    pub k01: u64,
    pub k10: u64,
    pub k11: u64,
}

impl PairedCounts {
    pub fn new(k00: u64, k01: u64, k10: u64, k11: u64) -> Result<Self> {
        let k = Self { k00, k01, k10, k11 };
        if k.n() == 0 {
            return Err(Error::Validation("table is empty (n = 0)".into()));
        }
        Ok(k)
    }

    /// Total sample size.
    pub fn n(&self) -> u64 {
        self.k00 + self.k01 + self.k10 + self.k11
    }
}

/// Counts over three categories. The total `m` may be zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TrinomialCounts {
    pub k1: u64,
    pub k2: u64,
    pub k3: u64,
}

impl TrinomialCounts {
    pub fn new(k1: u64, k2: u64, k3: u64) -> Self {
        Self { k1, k2, k3 }
    }

    pub fn m(&self) -> u64 {
        self.k1 + self.k2 + self.k3
    }

    /// Swaps the first two categories.
    pub fn swapped(&self) -> Self {
        Self {
            k1: self.k2,
            k2: self.k1,
            k3: self.k3,
        }
    }
}

fn log_terms(counts: &[u64], probs: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (&k, &p) in counts.iter().zip(probs) {
        if k == 0 {
            continue; // 0 * ln 0 reads as 0
        }
        if p <= 0.0 {
            return f64::NEG_INFINITY;
        }
        acc += k as f64 * p.ln();
    }
    acc
}

/// Log multinomial mass of a 2x2 table under cell density `q`.
///
/// Positive counts in zero-probability cells give `-inf`, a valid log mass.
pub fn multinomial_log_pmf(q: &JointDensity, k: &PairedCounts) -> f64 {
    let counts = [k.k00, k.k01, k.k10, k.k11];
    let coef = ln_factorial(k.n()) - counts.iter().map(|&c| ln_factorial(c)).sum::<f64>();
    let terms = log_terms(&counts, &q.cells());
    if terms == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    coef + terms
}

/// Log trinomial mass. `p` is assumed to lie on the simplex.
pub fn trinomial_log_pmf(p: &[f64; 3], k: &TrinomialCounts) -> f64 {
    let counts = [k.k1, k.k2, k.k3];
    let coef = ln_factorial(k.m()) - counts.iter().map(|&c| ln_factorial(c)).sum::<f64>();
    let terms = log_terms(&counts, p);
    if terms == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    coef + terms
}

/// Log binomial mass of `x` successes in `n` trials.
pub fn binomial_log_pmf(n: u64, prob: f64, x: u64) -> f64 {
    assert!(x <= n, "binomial_log_pmf: x = {x} > n = {n}");
    let coef = ln_factorial(n) - ln_factorial(x) - ln_factorial(n - x);
    let terms = log_terms(&[x, n - x], &[prob, 1.0 - prob]);
    if terms == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    coef + terms
}

/// All trinomial outcomes of total `m`, in lexicographic `(k1, k2)` order.
/// There are exactly `(m + 1)(m + 2)/2` of them.
pub fn enumerate_trinomial_outcomes(m: u64) -> Vec<TrinomialCounts> {
    let mut out = Vec::with_capacity(((m + 1) * (m + 2) / 2) as usize);
    for k1 in 0..=m {
        for k2 in 0..=(m - k1) {
            out.push(TrinomialCounts::new(k1, k2, m - k1 - k2));
        }
    }
    out
}
