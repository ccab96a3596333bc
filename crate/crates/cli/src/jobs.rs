//! Typed job descriptions shared by command-line flags and run-config files,
//! and the code that executes them.

use std::path::{Path, PathBuf};

use coprenyi::bounds::{bound_report, BoundRequest, BoundTarget, Kernel};
use coprenyi::estimation::{fit_tau_inversion, FitMethod};
use coprenyi::marginals::build_distortion;
use coprenyi::quadrature::IntegrationConfig;
use coprenyi::simulation::{default_integration, run_study, SimulationConfig};
use coprenyi::{
    evaluate, fit_mpl, pseudo_observations, reduced_mccri, CopulaModel, DataMatrix,
    DistortionProfile, EstimationResult, Family, MarginalModel, MeasureKind, MeasureRequest,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureJob {
    pub kind: String,
    pub gamma: Option<f64>,
    pub copula_x: String,
    pub copula_y: Option<String>,
    pub marginals_x: Option<Vec<String>>,
    pub marginals_y: Option<Vec<String>>,
    pub powers: Option<Vec<f64>>,
    pub integration: Option<IntegrationConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsJob {
    pub gamma: f64,
    pub alpha: f64,
    pub beta: f64,
    #[serde(default = "default_target")]
    pub target: BoundTarget,
}

fn default_target() -> BoundTarget {
    BoundTarget::Mccri
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitJob {
    pub data: PathBuf,
    pub family: String,
    pub columns: Option<Vec<String>>,
    #[serde(default = "default_fit_method")]
    pub method: FitMethod,
}

fn default_fit_method() -> FitMethod {
    FitMethod::Mpl
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectJob {
    pub data: PathBuf,
    pub columns: Option<Vec<String>>,
    pub families: Option<Vec<String>>,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    pub baseline: Option<String>,
    pub integration: Option<IntegrationConfig>,
}

fn default_gamma() -> f64 {
    3.0
}

pub const DEFAULT_FAMILIES: [&str; 5] = ["frank", "gumbel", "joe", "clayton", "product"];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateJob {
    pub truth_x: String,
    pub truth_y: String,
    pub gamma: f64,
    pub sample_sizes: Option<Vec<usize>>,
    pub replications: Option<usize>,
    pub master_seed: Option<u64>,
    pub integration: Option<IntegrationConfig>,
}

/// Parse `uniform`, `exp:RATE` or `prhr:EXPONENT:BASE` (BASE is itself a
/// marginal spec).
pub fn parse_marginal(spec: &str) -> CliResult<MarginalModel> {
    let spec = spec.trim();
    let bad = || {
        CliError::usage(format!(
            "bad marginal '{spec}': expected uniform, exp:RATE or prhr:EXPONENT:BASE"
        ))
    };
    let mut parts = spec.splitn(3, ':');
    let model = match parts.next().unwrap_or_default() {
        "uniform" => MarginalModel::Uniform01,
        "exp" => {
            MarginalModel::exponential(parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?)?
        }
        "prhr" => {
            let exponent: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let base = parse_marginal(parts.next().ok_or_else(bad)?)?;
            MarginalModel::prhr(exponent, base)?
        }
        _ => return Err(bad()),
    };
    Ok(model)
}

pub fn parse_family(name: &str) -> CliResult<Family> {
    name.trim().parse::<Family>().map_err(CliError::from)
}

fn copula(spec: &str) -> CliResult<CopulaModel> {
    CopulaModel::parse_spec(spec).map_err(CliError::from)
}

fn family_json(m: &CopulaModel) -> Value {
    json!(m.to_string())
}

pub fn run_measure(job: &MeasureJob) -> CliResult<Value> {
    let kind: MeasureKind = job.kind.parse()?;
    let truth = copula(&job.copula_x)?;
    let reference = job.copula_y.as_deref().map(copula).transpose()?;
    let mut req = MeasureRequest::new(kind, job.gamma, truth, reference);
    match (&job.powers, &job.marginals_x, &job.marginals_y) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            return Err(CliError::usage(
                "--powers cannot be combined with --marginals-x/--marginals-y",
            ))
        }
        (Some(p), None, None) => {
            req = req.with_distortion(DistortionProfile::powers(kind.scale(), p)?)
        }
        (None, Some(fx), Some(fy)) => {
            let fx = fx
                .iter()
                .map(|s| parse_marginal(s))
                .collect::<CliResult<Vec<_>>>()?;
            let fy = fy
                .iter()
                .map(|s| parse_marginal(s))
                .collect::<CliResult<Vec<_>>>()?;
            req = req.with_distortion(build_distortion(&fx, &fy, kind.scale())?);
        }
        (None, Some(_), None) | (None, None, Some(_)) => {
            return Err(CliError::usage(
                "--marginals-x and --marginals-y must be given together",
            ))
        }
        (None, None, None) => {}
    }
    if let Some(cfg) = job.integration {
        req = req.with_integration(cfg);
    }
    let out = evaluate(&req)?;
    Ok(json!({
        "command": "measure",
        "kind": out.kind,
        "gamma": out.gamma,
        "value": out.value,
        "integral": out.integral.value,
        "truth": family_json(&out.truth),
        "reference": out.reference.as_ref().map(family_json),
        "distortion": req.distortion,
        "quadrature": out.integral,
        "config": req.integration,
    }))
}

pub fn run_bounds(job: &BoundsJob) -> CliResult<Value> {
    let req = BoundRequest::new(job.gamma, job.alpha, job.beta, job.target)?;
    let report = bound_report(&req)?;
    let lower_kernel = match report.numeric.upper_kernel {
        Kernel::W => Kernel::M,
        Kernel::M => Kernel::W,
    };
    let mut record = json!({
        "command": "bounds",
        "lower_kernel": lower_kernel,
        "upper_kernel": report.numeric.upper_kernel,
    });
    merge(
        &mut record,
        serde_json::to_value(&report).expect("bound report serializes"),
    );
    Ok(record)
}

/// Read the named numeric columns (all columns when `columns` is `None`).
pub fn load_data(path: &Path, columns: Option<&[String]>) -> CliResult<(Vec<String>, DataMatrix)> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    let names: Vec<String> = match columns {
        Some(c) => c.iter().map(|s| s.trim().to_string()).collect(),
        None => headers.clone(),
    };
    let index = names
        .iter()
        .map(|n| {
            headers.iter().position(|h| h == n).ok_or_else(|| {
                CliError::usage(format!("{}: column '{n}' not found", path.display()))
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        let row = index
            .iter()
            .zip(&names)
            .map(|(&j, name)| {
                let raw = record.get(j).unwrap_or("").trim();
                raw.parse::<f64>().map_err(|_| {
                    CliError::usage(format!(
                        "{}: row {}: column '{name}' is not numeric: '{raw}'",
                        path.display(),
                        line + 2
                    ))
                })
            })
            .collect::<CliResult<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok((names, DataMatrix::new(rows)?))
}

fn fit_json(fit: &EstimationResult) -> Value {
    json!({
        "family": fit.family,
        "theta_hat": fit.theta_hat,
        "log_pseudo_likelihood": fit.log_pseudo_likelihood,
        "method": fit.method,
        "iterations": fit.iterations,
        "converged": fit.converged,
    })
}

pub fn run_fit(job: &FitJob) -> CliResult<Value> {
    let family = parse_family(&job.family)?;
    let (names, data) = load_data(&job.data, job.columns.as_deref())?;
    let fit = match job.method {
        FitMethod::Mpl => fit_mpl(family, &pseudo_observations(&data)?, None)?,
        FitMethod::TauInversion => fit_tau_inversion(family, &data)?,
    };
    let mut record = json!({ "command": "fit", "columns": names, "n": data.nrows() });
    merge(&mut record, fit_json(&fit));
    Ok(record)
}

pub fn run_select(job: &SelectJob) -> CliResult<Value> {
    let families = match &job.families {
        Some(f) => f
            .iter()
            .map(|s| parse_family(s))
            .collect::<CliResult<Vec<_>>>()?,
        None => DEFAULT_FAMILIES
            .iter()
            .map(|s| parse_family(s))
            .collect::<CliResult<Vec<_>>>()?,
    };
    if families.is_empty() {
        return Err(CliError::usage("no candidate families given"));
    }
    let pinned = job.baseline.as_deref().map(parse_family).transpose()?;
    if let Some(b) = pinned {
        if !families.contains(&b) {
            return Err(CliError::usage(format!(
                "baseline {b} is not among the candidate families"
            )));
        }
    }
    let integration = job.integration.unwrap_or_default();
    let (names, data) = load_data(&job.data, job.columns.as_deref())?;
    let pseudo = pseudo_observations(&data)?;

    let mut fits: Vec<EstimationResult> = Vec::new();
    let mut dropped = Vec::new();
    for &family in &families {
        match fit_mpl(family, &pseudo, None) {
            Ok(fit) => fits.push(fit),
            Err(e) => dropped.push(json!({ "family": family, "reason": e.to_string() })),
        }
    }
    let baseline_index = match pinned {
        Some(b) => fits
            .iter()
            .position(|f| f.family == b)
            .ok_or_else(|| CliError::Numeric(format!("baseline {b} could not be fitted")))?,
        None => fits
            .iter()
            .enumerate()
            .max_by(|a, b| {
                a.1.log_pseudo_likelihood
                    .total_cmp(&b.1.log_pseudo_likelihood)
                    .then_with(|| b.1.family.name().cmp(a.1.family.name()))
            })
            .map(|(i, _)| i)
            .ok_or_else(|| CliError::Numeric("no candidate family could be fitted".into()))?,
    };
    let baseline = fits[baseline_index].model()?;

    let mut comparisons = Vec::new();
    for (i, fit) in fits.iter().enumerate() {
        if i == baseline_index {
            continue;
        }
        let candidate = fit.model()?;
        let forward = reduced_mccri(&candidate, &baseline, job.gamma, &integration)?;
        let reversed = reduced_mccri(&baseline, &candidate, job.gamma, &integration)?;
        comparisons.push((fit.family, forward.value, reversed.value));
    }
    if let Some((f, _, _)) = comparisons
        .iter()
        .find(|c| !c.1.is_finite() || !c.2.is_finite())
    {
        return Err(CliError::Numeric(format!(
            "MCCRI against {f} is not finite"
        )));
    }
    let mut order: Vec<usize> = (0..comparisons.len()).collect();
    order.sort_by(|&a, &b| {
        comparisons[a]
            .1
            .total_cmp(&comparisons[b].1)
            .then_with(|| comparisons[a].0.name().cmp(comparisons[b].0.name()))
    });
    Ok(json!({
        "command": "select",
        "columns": names,
        "n": data.nrows(),
        "gamma": job.gamma,
        "baseline": fits[baseline_index].family,
        "baseline_pinned": pinned.is_some(),
        "fits": fits.iter().map(fit_json).collect::<Vec<_>>(),
        "dropped": dropped,
        "comparisons": comparisons.iter().map(|(f, fwd, rev)| json!({
            "candidate": f,
            "mccri": fwd,
            "mccri_reversed": rev,
        })).collect::<Vec<_>>(),
        "ranking": order.iter().map(|&i| comparisons[i].0).collect::<Vec<_>>(),
        "config": integration,
    }))
}

pub fn simulation_config(
    job: &SimulateJob,
    default_seed: Option<u64>,
) -> CliResult<SimulationConfig> {
    let mut cfg = SimulationConfig::new(copula(&job.truth_x)?, copula(&job.truth_y)?, job.gamma);
    if let Some(s) = &job.sample_sizes {
        cfg.sample_sizes = s.clone();
    }
    if let Some(r) = job.replications {
        cfg.replications = r;
    }
    cfg.master_seed = job.master_seed.or(default_seed).unwrap_or(0);
    cfg.integration = job.integration.unwrap_or_else(default_integration);
    cfg.validate()?;
    Ok(cfg)
}

pub fn run_simulate(cfg: &SimulationConfig) -> CliResult<Value> {
    let report = run_study(cfg)?;
    let mut record = json!({
        "command": "simulate",
        "truth_x": family_json(&cfg.truth_x),
        "truth_y": family_json(&cfg.truth_y),
        "gamma": cfg.gamma,
    });
    merge(
        &mut record,
        serde_json::to_value(&report).expect("report serializes"),
    );
    Ok(record)
}

/// CSV of `n` draws with header `u1,…,ud`.
pub fn sample_csv(model: &CopulaModel, n: usize, seed: u64) -> CliResult<String> {
    let rows = model.sample(n, seed)?;
    let mut out = (1..=model.dim())
        .map(|i| format!("u{i}"))
        .collect::<Vec<_>>()
        .join(",");
    out.push('\n');
    for row in rows {
        out.push_str(
            &row.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push('\n');
    }
    Ok(out)
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        for (k, v) in b {
            a.entry(k).or_insert(v);
        }
    }
}

/// Everything a run-config file may declare.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigFile {
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub measure: Vec<MeasureJob>,
    #[serde(default)]
    pub bounds: Vec<BoundsJob>,
    #[serde(default)]
    pub fit: Vec<FitJob>,
    #[serde(default)]
    pub select: Vec<SelectJob>,
    #[serde(default)]
    pub simulate: Vec<SimulateJob>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct JobCounts {
    pub measure: usize,
    pub bounds: usize,
    pub fit: usize,
    pub select: usize,
    pub simulate: usize,
}

impl RunConfigFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        let mut cfg: RunConfigFile = toml::from_str(&text)
            .map_err(|e| CliError::usage(format!("{}: {}", path.display(), e.message())))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        for job in &mut cfg.fit {
            job.data = base.join(&job.data);
        }
        for job in &mut cfg.select {
            job.data = base.join(&job.data);
        }
        if let Some(out) = &cfg.output {
            cfg.output = Some(base.join(out));
        }
        Ok(cfg)
    }

    /// Check every job before any of them runs.
    pub fn validate(&self) -> CliResult<Vec<SimulationConfig>> {
        for job in &self.measure {
            let kind: MeasureKind = job.kind.parse()?;
            copula(&job.copula_x)?;
            job.copula_y.as_deref().map(copula).transpose()?;
            if let Some(cfg) = job.integration {
                cfg.validate()?;
            }
            if let Some(g) = job.gamma {
                if !kind.uses_gamma() {
                    return Err(CliError::usage(format!("gamma is not accepted for {kind}")));
                }
                coprenyi::measures::validate_gamma(g)?;
            }
        }
        for job in &self.bounds {
            BoundRequest::new(job.gamma, job.alpha, job.beta, job.target)?;
        }
        for job in &self.fit {
            parse_family(&job.family)?;
        }
        for job in &self.select {
            for f in job.families.iter().flatten() {
                parse_family(f)?;
            }
            if let Some(b) = &job.baseline {
                parse_family(b)?;
            }
            coprenyi::measures::validate_gamma(job.gamma)?;
        }
        self.simulate
            .iter()
            .map(|job| simulation_config(job, self.seed))
            .collect()
    }

    pub fn counts(&self) -> JobCounts {
        JobCounts {
            measure: self.measure.len(),
            bounds: self.bounds.len(),
            fit: self.fit.len(),
            select: self.select.len(),
            simulate: self.simulate.len(),
        }
    }
}

pub fn load_simulation_file(path: &Path) -> CliResult<SimulateJob> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| CliError::usage(format!("{}: {}", path.display(), e.message())))
}
