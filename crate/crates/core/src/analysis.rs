//! Analysis of a paired 2x2 table: lower confidence bound for the
//! prevalence-times-sensitivity-gain of the second test, an upper bound for
//! the first test's sensitivity that needs no prevalence assumption, and the
//! derived statements reported alongside.
//!
//! The gain bound consumes only the discordant cells and the agreement
//! total, never a model tag: the same number is a valid lower bound for the
//! discordant-cell difference in the plain multinomial model, for the
//! specificity-weighted contrast in the full latent class model, and for
//! `Pr (Se2 - Se1)` under the specificity-ordered model.

use crate::bounds::{BoundConfig, ExactBoundEngine};
use crate::model::{PairedCounts, TrinomialCounts};
use crate::{Error, Result, ENGINE_ID, STATISTIC_ID};

/// Options controlling [`analyze`].
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    /// One-sided confidence level for every reported bound.
    pub beta: f64,
    /// Assumed upper bound for the prevalence, in `(0, 1]`.
    pub prevalence_max: Option<f64>,
    /// Include the symbolic full-model statement in the report.
    pub include_full_model_statement: bool,
    /// Use the direct (sharper, much slower) ratio bound for the
    /// sensitivity limit instead of the via-difference bound.
    pub include_direct_ratio_bound: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            beta: 0.95,
            prevalence_max: None,
            include_full_model_statement: true,
            include_direct_ratio_bound: false,
        }
    }
}

impl AnalysisOptions {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(Error::Validation(format!(
                "beta = {} outside [0, 1]",
                self.beta
            )));
        }
        if let Some(cap) = self.prevalence_max {
            if !(cap > 0.0 && cap <= 1.0) {
                return Err(Error::Validation(format!(
                    "prevalence-max = {cap} outside (0, 1]"
                )));
            }
        }
        Ok(())
    }
}

/// Method identity echoed into reports so results stay auditable.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MethodInfo {
    pub engine: String,
    pub statistic: String,
    pub direct_ratio: bool,
}

impl MethodInfo {
    fn new(direct_ratio: bool) -> Self {
        Self {
            engine: ENGINE_ID.to_string(),
            statistic: STATISTIC_ID.to_string(),
            direct_ratio,
        }
    }
}

/// Full analysis result. `*_display` fields carry the directionally rounded
/// values (lower bounds rounded down, upper bounds up, four decimals); the
/// unsuffixed fields keep full precision.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Report {
    pub inputs: PairedCounts,
    pub beta: f64,
    pub prevalence_max: Option<f64>,
    /// Lower bound for `Pr (Se2 - Se1)` (equally for the discordant-cell
    /// difference of the observed density).
    pub gain_product_lower: f64,
    pub gain_product_lower_display: f64,
    /// Lower bound for the sensitivity gain itself under the prevalence cap.
    pub gain_lower_at_cap: Option<f64>,
    pub gain_lower_at_cap_display: Option<f64>,
    /// Upper bound for the first test's sensitivity, prevalence-free.
    pub se1_upper: f64,
    pub se1_upper_display: f64,
    /// Upper bound for the first test's sensitivity implied by the capped
    /// gain bound (`1 - gain`), when a cap is given.
    pub se1_upper_from_gain: Option<f64>,
    pub se1_upper_from_gain_display: Option<f64>,
    /// Symbolic statement valid in the full latent class model, with the
    /// numeric gain bound substituted.
    pub full_model_statement: Option<String>,
    pub method: MethodInfo,
}

/// Rounds towards minus infinity at `decimals` places (safe for displayed
/// lower bounds).
pub fn round_down(x: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    (x * scale).floor() / scale
}

/// Rounds towards plus infinity at `decimals` places (safe for displayed
/// upper bounds).
pub fn round_up(x: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    (x * scale).ceil() / scale
}

/// Collapses the table onto (negative-positive, positive-negative,
/// agreement) and returns the exact lower bound for the difference of the
/// two discordant probabilities.
pub fn sensitivity_gain_lower(k: &PairedCounts, engine: &ExactBoundEngine) -> Result<f64> {
    let collapsed = TrinomialCounts::new(k.k01, k.k10, k.k00 + k.k11);
    Ok(engine.lower_diff(&collapsed)?.value)
}

/// Turns the product bound into a bound on the gain itself under
/// `prevalence <= prevalence_max`.
///
/// A negative product bound is returned unchanged: dividing a negative
/// number by a cap below one would inflate it invalidly, and a negative
/// bound is already valid for every prevalence.
pub fn gain_lower_at_prevalence_cap(gain_product_lower: f64, prevalence_max: f64) -> Result<f64> {
    if !(prevalence_max > 0.0 && prevalence_max <= 1.0) {
        return Err(Error::Validation(format!(
            "prevalence-max = {prevalence_max} outside (0, 1]"
        )));
    }
    if gain_product_lower < 0.0 {
        Ok(gain_product_lower)
    } else {
        Ok(gain_product_lower / prevalence_max)
    }
}

/// Upper bound for the first test's sensitivity from the cells not counted
/// as double-negative. Valid under the specificity-ordered model with no
/// prevalence assumption.
pub fn se1_upper(k: &PairedCounts, engine: &ExactBoundEngine, direct: bool) -> Result<f64> {
    let collapsed = TrinomialCounts::new(k.k10, k.k01, k.k11);
    let bound = if direct {
        engine.upper_ratio_direct(&collapsed)?
    } else {
        engine.upper_ratio_from_diff(&collapsed)?
    };
    Ok(bound.value)
}

/// `1 - gain`, clamped into `[0, 1]`: a gain of at least `g` caps the first
/// sensitivity at `1 - g`.
pub fn implied_se1_upper(gain_lower_at_cap: f64) -> f64 {
    (1.0 - gain_lower_at_cap).clamp(0.0, 1.0)
}

/// Renders the confidence statement that stays valid in the full latent
/// class model, where the specificity difference enters explicitly. The
/// prevalence and the specificity difference remain symbolic.
pub fn full_model_statement(gain_product_lower: f64) -> String {
    format!(
        "Se₂ − Se₁ ≥ {:.4}/π₁ + ((1 − π₁)/π₁)·(Sp₂ − Sp₁)  (π₁ > 0; vacuous at π₁ = 0)",
        round_down(gain_product_lower, 4)
    )
}

/// Runs the full analysis of a paired table.
pub fn analyze(k: &PairedCounts, options: &AnalysisOptions) -> Result<Report> {
    options.validate()?;
    let engine = ExactBoundEngine::new(BoundConfig::with_beta(options.beta))?;

    let gain = sensitivity_gain_lower(k, &engine)?;
    let gain_at_cap = options
        .prevalence_max
        .map(|cap| gain_lower_at_prevalence_cap(gain, cap))
        .transpose()?;
    let se1 = se1_upper(k, &engine, options.include_direct_ratio_bound)?;
    let se1_from_gain = gain_at_cap.map(implied_se1_upper);

    Ok(Report {
        inputs: *k,
        beta: options.beta,
        prevalence_max: options.prevalence_max,
        gain_product_lower: gain,
        gain_product_lower_display: round_down(gain, 4),
        gain_lower_at_cap: gain_at_cap,
        gain_lower_at_cap_display: gain_at_cap.map(|g| round_down(g, 4)),
        se1_upper: se1,
        se1_upper_display: round_up(se1, 4),
        se1_upper_from_gain: se1_from_gain,
        se1_upper_from_gain_display: se1_from_gain.map(|s| round_up(s, 4)),
        full_model_statement: options
            .include_full_model_statement
            .then(|| full_model_statement(gain)),
        method: MethodInfo::new(options.include_direct_ratio_bound),
    })
}
