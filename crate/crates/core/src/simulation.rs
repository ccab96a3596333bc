//! Monte Carlo study of the plug-in MCCRI estimator.
//!
//! Each cell (one sample size) runs `replications` independent
//! sample → fit → estimate cycles and summarises them against the population
//! MCCRI of the truth models. Replication `r` of cell `c` draws X with seed
//! `derive_seed(master_seed, [c, r, 0])` and Y with `derive_seed(master_seed,
//! [c, r, 1])`. Replications run on rayon; results are gathered in
//! replication order, so reports are bit-identical across thread counts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::copula::{CopulaModel, Family};
use crate::error::{Error, Result};
use crate::estimation::{estimate_mccri_two_sample, DataMatrix};
use crate::measures::{reduced_mccri, validate_gamma};
use crate::quadrature::IntegrationConfig;
use crate::rng::derive_seed;

/// Largest tolerated share of failed replications per cell.
pub const MAX_EXCLUSION_RATE: f64 = 0.05;
pub const MIN_SAMPLE_SIZE: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    pub truth_x: CopulaModel,
    pub truth_y: CopulaModel,
    pub gamma: f64,
    #[serde(default = "default_sample_sizes")]
    pub sample_sizes: Vec<usize>,
    #[serde(default = "default_replications")]
    pub replications: usize,
    #[serde(default)]
    pub master_seed: u64,
    /// Quadrature shared by the reference value and every plug-in estimate.
    #[serde(default = "default_integration")]
    pub integration: IntegrationConfig,
}

fn default_sample_sizes() -> Vec<usize> {
    vec![100, 300, 500]
}

fn default_replications() -> usize {
    500
}

/// 32 smoothed nodes per axis, doubled once to 64.
pub fn default_integration() -> IntegrationConfig {
    IntegrationConfig {
        nodes_per_axis: 32,
        rel_tol: 1e-10,
        max_refinements: 1,
        ..Default::default()
    }
}

impl SimulationConfig {
    pub fn new(truth_x: CopulaModel, truth_y: CopulaModel, gamma: f64) -> Self {
        Self {
            truth_x,
            truth_y,
            gamma,
            sample_sizes: default_sample_sizes(),
            replications: default_replications(),
            master_seed: 0,
            integration: default_integration(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        validate_gamma(self.gamma)?;
        if self.truth_x.dim() != self.truth_y.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.truth_x.dim(),
                got: self.truth_y.dim(),
            });
        }
        if self.replications < 2 {
            return Err(Error::InvalidArgument(format!(
                "replications must be at least 2, got {}",
                self.replications
            )));
        }
        if self.sample_sizes.is_empty() {
            return Err(Error::InvalidArgument("sample_sizes is empty".into()));
        }
        if let Some(n) = self.sample_sizes.iter().find(|&&n| n < MIN_SAMPLE_SIZE) {
            return Err(Error::InvalidArgument(format!(
                "sample sizes must be at least {MIN_SAMPLE_SIZE}, got {n}"
            )));
        }
        self.integration.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationCell {
    pub sample_size: usize,
    pub family_x: Family,
    pub theta_x: f64,
    pub family_y: Family,
    pub theta_y: f64,
    pub gamma: f64,
    pub reference_value: f64,
    pub mean_estimate: f64,
    pub sd: f64,
    pub ab: f64,
    pub mse: f64,
    pub replications_used: usize,
    pub excluded: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub master_seed: u64,
    pub replications: usize,
    pub cells: Vec<SimulationCell>,
}

/// Summary statistics of estimates against a reference value. SD is the
/// population standard deviation, so `mse == sd² + ab²` up to rounding.
pub fn summarize(estimates: &[f64], reference: f64) -> (f64, f64, f64, f64) {
    let n = estimates.len() as f64;
    let errors: Vec<f64> = estimates.iter().map(|e| e - reference).collect();
    let bias = errors.iter().sum::<f64>() / n;
    let var = errors.iter().map(|e| (e - bias).powi(2)).sum::<f64>() / n;
    let mse = errors.iter().map(|e| e * e).sum::<f64>() / n;
    (reference + bias, var.sqrt(), bias.abs(), mse)
}

fn one_replication(cfg: &SimulationConfig, cell: usize, rep: usize, n: usize) -> Result<f64> {
    let sx = derive_seed(cfg.master_seed, &[cell as u64, rep as u64, 0]);
    let sy = derive_seed(cfg.master_seed, &[cell as u64, rep as u64, 1]);
    let x = DataMatrix::new(cfg.truth_x.sample(n, sx)?)?;
    let y = DataMatrix::new(cfg.truth_y.sample(n, sy)?)?;
    let est = estimate_mccri_two_sample(
        cfg.truth_x.family(),
        &x,
        cfg.truth_y.family(),
        &y,
        cfg.gamma,
        &cfg.integration,
    )?;
    if !est.fit_x.converged || !est.fit_y.converged {
        return Err(Error::Estimation(
            "pseudo-likelihood search did not converge".into(),
        ));
    }
    Ok(est.measure.value)
}

pub fn run_study(cfg: &SimulationConfig) -> Result<SimulationReport> {
    cfg.validate()?;
    let reference = reduced_mccri(&cfg.truth_x, &cfg.truth_y, cfg.gamma, &cfg.integration)?.value;
    let mut cells = Vec::with_capacity(cfg.sample_sizes.len());
    for (cell, &n) in cfg.sample_sizes.iter().enumerate() {
        let outcomes: Vec<Result<f64>> = (0..cfg.replications)
            .into_par_iter()
            .map(|rep| one_replication(cfg, cell, rep, n))
            .collect();
        let estimates: Vec<f64> = outcomes
            .iter()
            .filter_map(|r| r.as_ref().ok().copied())
            .collect();
        let excluded = cfg.replications - estimates.len();
        if excluded as f64 > MAX_EXCLUSION_RATE * cfg.replications as f64 || estimates.len() < 2 {
            let first = outcomes
                .iter()
                .find_map(|r| r.as_ref().err())
                .map(ToString::to_string);
            return Err(Error::Simulation(format!(
                "{excluded} of {} replications failed at n = {n}; first failure: {}",
                cfg.replications,
                first.unwrap_or_default()
            )));
        }
        let (mean_estimate, sd, ab, mse) = summarize(&estimates, reference);
        cells.push(SimulationCell {
            sample_size: n,
            family_x: cfg.truth_x.family(),
            theta_x: cfg.truth_x.theta(),
            family_y: cfg.truth_y.family(),
            theta_y: cfg.truth_y.theta(),
            gamma: cfg.gamma,
            reference_value: reference,
            mean_estimate,
            sd,
            ab,
            mse,
            replications_used: estimates.len(),
            excluded,
        });
    }
    Ok(SimulationReport {
        master_seed: cfg.master_seed,
        replications: cfg.replications,
        cells,
    })
}
