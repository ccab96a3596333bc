//! Semiparametric copula fitting and the plug-in MCCRI estimator.
//!
//! Marginals are replaced by rescaled ranks (pseudo-observations), then the
//! copula parameter is chosen by maximum pseudo-likelihood (MPL): a coarse
//! grid scan over a family-specific bracket followed by Brent's
//! golden-section/parabolic search. Kendall's tau inversion is available as a
//! cross-check.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::digamma;

use crate::copula::{CopulaModel, Family};
use crate::error::{Error, Result};
use crate::measures::{reduced_mccri, validate_gamma, MeasureValue};
use crate::quadrature::{gauss_legendre, IntegrationConfig};

/// Minimum number of observations accepted by [`DataMatrix`].
pub const MIN_ROWS: usize = 10;
/// Tolerance on θ for the MPL search and for tau inversion.
pub const THETA_TOL: f64 = 1e-8;

const GRID_POINTS: usize = 41;
const MAX_BRENT_ITER: usize = 200;

/// Observations in rows, variables in columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataMatrix {
    rows: Vec<Vec<f64>>,
}

impl DataMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.len() < MIN_ROWS {
            return Err(Error::DegenerateData(format!(
                "need at least {MIN_ROWS} observations, got {}",
                rows.len()
            )));
        }
        let width = rows[0].len();
        if width < 2 {
            return Err(Error::DegenerateData("need at least two columns".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::DimensionMismatch {
                    expected: width,
                    got: row.len(),
                });
            }
            if let Some(v) = row.iter().find(|v| !v.is_finite()) {
                return Err(Error::DegenerateData(format!(
                    "row {i} holds non-finite value {v}"
                )));
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[j]).collect()
    }
}

/// Average ranks of one column divided by `n + 1`.
pub fn rank_column(values: &[f64]) -> Result<Vec<f64>> {
    let n = values.len();
    if n == 0 {
        return Err(Error::DegenerateData("empty column".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    if values[order[0]] == values[order[n - 1]] {
        return Err(Error::DegenerateData(
            "constant column: pseudo-observations are undefined".into(),
        ));
    }
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start..end share ranks start+1 ..= end
        let avg = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = avg;
        }
        start = end;
    }
    let scale = (n + 1) as f64;
    Ok(ranks.into_iter().map(|r| r / scale).collect())
}

/// Column-wise pseudo-observations, returned row-major.
pub fn pseudo_observations(data: &DataMatrix) -> Result<Vec<Vec<f64>>> {
    let cols = (0..data.ncols())
        .map(|j| {
            rank_column(&data.column(j)).map_err(|e| match e {
                Error::DegenerateData(msg) => Error::DegenerateData(format!("column {j}: {msg}")),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((0..data.nrows())
        .map(|i| cols.iter().map(|c| c[i]).collect())
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitMethod {
    Mpl,
    TauInversion,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimationResult {
    pub family: Family,
    pub dim: usize,
    pub theta_hat: f64,
    pub log_pseudo_likelihood: f64,
    pub method: FitMethod,
    pub iterations: usize,
    pub converged: bool,
}

impl EstimationResult {
    pub fn model(&self) -> Result<CopulaModel> {
        CopulaModel::new(self.family, self.dim, self.theta_hat)
    }
}

/// Default MPL bracket for a family at a dimension.
pub fn default_bracket(family: Family, dim: usize) -> (f64, f64) {
    match family {
        Family::Gumbel | Family::Joe => (1.0, 30.0),
        Family::Clayton => (1e-6, 30.0),
        Family::Frank if dim == 2 => (-40.0, 40.0),
        Family::Frank => (1e-6, 40.0),
        Family::Fgm | Family::Amh => (-1.0, 1.0),
        Family::Product => (0.0, 0.0),
    }
}

/// Sum of log densities; non-finite totals count as `-∞`.
pub fn log_pseudo_likelihood(model: &CopulaModel, rows: &[Vec<f64>]) -> f64 {
    let mut total = 0.0;
    for row in rows {
        match model.density(row) {
            Ok(c) if c > 0.0 => total += c.ln(),
            _ => return f64::NEG_INFINITY,
        }
    }
    if total.is_finite() {
        total
    } else {
        f64::NEG_INFINITY
    }
}

fn loglik_at(family: Family, dim: usize, theta: f64, rows: &[Vec<f64>]) -> f64 {
    if family == Family::Frank && theta == 0.0 {
        return 0.0;
    }
    match CopulaModel::new(family, dim, theta) {
        Ok(m) => log_pseudo_likelihood(&m, rows),
        Err(_) => f64::NEG_INFINITY,
    }
}

fn check_rows(rows: &[Vec<f64>]) -> Result<usize> {
    let dim = rows.first().map(Vec::len).unwrap_or(0);
    if rows.len() < 2 || dim < 2 {
        return Err(Error::DegenerateData(
            "need at least two rows of dimension ≥ 2".into(),
        ));
    }
    for row in rows {
        if row.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: row.len(),
            });
        }
        if row.iter().any(|&x| !(x > 0.0 && x < 1.0)) {
            return Err(Error::DegenerateData(
                "pseudo-observations must lie in (0, 1)".into(),
            ));
        }
    }
    Ok(dim)
}

/// Maximum pseudo-likelihood fit over `search_interval` (or the family's
/// default bracket).
pub fn fit_mpl(
    family: Family,
    pseudo_obs: &[Vec<f64>],
    search_interval: Option<(f64, f64)>,
) -> Result<EstimationResult> {
    let dim = check_rows(pseudo_obs)?;
    if !family.supports_dimension(dim) {
        return Err(Error::UnsupportedDimension {
            family: family.name(),
            dim,
        });
    }
    if family == Family::Product {
        return Ok(EstimationResult {
            family,
            dim,
            theta_hat: 0.0,
            log_pseudo_likelihood: 0.0,
            method: FitMethod::Mpl,
            iterations: 0,
            converged: true,
        });
    }
    let (lo, hi) = search_interval.unwrap_or_else(|| default_bracket(family, dim));
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less)
        || CopulaModel::new(family, dim, lo).is_err()
        || CopulaModel::new(family, dim, hi).is_err()
    {
        return Err(Error::InvalidArgument(format!(
            "search interval [{lo}, {hi}] is not inside the {family} parameter range at dimension {dim}"
        )));
    }
    let geometric = lo > 0.0 && hi / lo > 20.0;
    let grid: Vec<f64> = (0..GRID_POINTS)
        .map(|k| {
            let s = k as f64 / (GRID_POINTS - 1) as f64;
            if geometric {
                lo * (hi / lo).powf(s)
            } else {
                lo + (hi - lo) * s
            }
        })
        .collect();
    let values: Vec<f64> = grid
        .iter()
        .map(|&t| loglik_at(family, dim, t, pseudo_obs))
        .collect();
    let (best, &best_val) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("grid is nonempty");
    if best_val == f64::NEG_INFINITY {
        return Err(Error::Estimation(format!(
            "{family} pseudo-likelihood is not finite anywhere on [{lo}, {hi}]"
        )));
    }
    let worst = values.iter().cloned().fold(f64::INFINITY, f64::min);
    if (best_val - worst).abs() < 1e-10 {
        return Ok(EstimationResult {
            family,
            dim,
            theta_hat: grid[best],
            log_pseudo_likelihood: best_val,
            method: FitMethod::Mpl,
            iterations: GRID_POINTS,
            converged: false,
        });
    }
    let a = grid[best.saturating_sub(1)];
    let b = grid[(best + 1).min(GRID_POINTS - 1)];
    let (theta, neg, iters, converged) =
        brent_minimize(|t| -loglik_at(family, dim, t, pseudo_obs), a, b, THETA_TOL);
    let (theta_hat, ll) = if -neg >= best_val {
        (theta, -neg)
    } else {
        (grid[best], best_val)
    };
    Ok(EstimationResult {
        family,
        dim,
        theta_hat,
        log_pseudo_likelihood: ll,
        method: FitMethod::Mpl,
        iterations: GRID_POINTS + iters,
        converged,
    })
}

/// Brent's minimiser on `[a, b]`. Returns `(x, f(x), iterations, converged)`.
fn brent_minimize(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64, usize, bool) {
    const GOLD: f64 = 0.381_966_011_250_105_1;
    let (mut a, mut b) = (a, b);
    let mut x = a + GOLD * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x);
    let (mut fw, mut fv) = (fx, fx);
    let (mut d, mut e) = (0.0f64, 0.0f64);
    for iter in 1..=MAX_BRENT_ITER {
        let m = 0.5 * (a + b);
        let tol1 = tol * 0.5 + 1e-12 * x.abs();
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            return (x, fx, iter, true);
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            if p.abs() < (0.5 * q * e).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if m >= x { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= m { a - x } else { b - x };
            d = GOLD * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else {
            x + tol1.copysign(d)
        };
        let fu = f(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    (x, fx, MAX_BRENT_ITER, false)
}

/// Sample Kendall's tau (tau-a) of two equally long columns.
pub fn kendall_tau(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::DegenerateData(
            "kendall tau needs two observations".into(),
        ));
    }
    let mut s: i64 = 0;
    for i in 0..n {
        for j in i + 1..n {
            let a = (x[i] - x[j]).partial_cmp(&0.0).map_or(0, |o| o as i64);
            let b = (y[i] - y[j]).partial_cmp(&0.0).map_or(0, |o| o as i64);
            s += a * b;
        }
    }
    Ok(2.0 * s as f64 / (n as f64 * (n as f64 - 1.0)))
}

/// Population Kendall's tau of a family at parameter θ.
pub fn population_tau(family: Family, theta: f64) -> Result<f64> {
    CopulaModel::new(family, 2, theta)?;
    Ok(match family {
        Family::Product => 0.0,
        Family::Gumbel => 1.0 - 1.0 / theta,
        Family::Clayton => theta / (theta + 2.0),
        Family::Fgm => 2.0 * theta / 9.0,
        Family::Joe => joe_tau(theta),
        Family::Frank => frank_tau(theta),
        Family::Amh => amh_tau(theta),
    })
}

/// `1 - 4 Σ_k 1 / (k (θk + 2)(θ(k-1) + 2))` with an integral tail estimate.
fn joe_tau(theta: f64) -> f64 {
    if theta == 1.0 {
        return 0.0;
    }
    const TERMS: usize = 20_000;
    let sum: f64 = (1..=TERMS)
        .rev()
        .map(|k| {
            let k = k as f64;
            1.0 / (k * (theta * k + 2.0) * (theta * (k - 1.0) + 2.0))
        })
        .sum();
    let edge = TERMS as f64 + 0.5;
    let tail = 1.0 / (2.0 * theta * theta * edge * edge);
    1.0 - 4.0 * (sum + tail)
}

/// Digamma form of the Joe tau, used to cross-check the series.
pub fn joe_tau_digamma(theta: f64) -> f64 {
    1.0 + 2.0 / (2.0 - theta) * (digamma(2.0) - digamma(2.0 / theta + 1.0))
}

fn frank_tau(theta: f64) -> f64 {
    if theta < 0.0 {
        return -frank_tau(-theta);
    }
    // Debye function D₁(θ) = (1/θ) ∫₀^θ t / (eᵗ - 1) dt
    let (nodes, weights) = gauss_legendre(64);
    let integral: f64 = nodes
        .iter()
        .zip(&weights)
        .map(|(&x, &w)| {
            let t = theta * x;
            w * t / t.exp_m1()
        })
        .sum::<f64>()
        * theta;
    let d1 = integral / theta;
    1.0 - 4.0 / theta * (1.0 - d1)
}

fn amh_tau(alpha: f64) -> f64 {
    if alpha.abs() < 1e-4 {
        return 2.0 * alpha / 9.0 + alpha * alpha / 18.0;
    }
    if alpha == 1.0 {
        return 1.0 / 3.0;
    }
    1.0 - 2.0 * (alpha + (1.0 - alpha).powi(2) * (-alpha).ln_1p()) / (3.0 * alpha * alpha)
}

/// Range of Kendall's tau attainable by a family at dimension `dim`.
fn tau_range(family: Family, dim: usize) -> (f64, f64) {
    match family {
        Family::Product => (0.0, 0.0),
        Family::Gumbel | Family::Joe | Family::Clayton => (0.0, 1.0),
        Family::Frank if dim == 2 => (-1.0, 1.0),
        Family::Frank => (0.0, 1.0),
        Family::Fgm => (-2.0 / 9.0, 2.0 / 9.0),
        Family::Amh => (amh_tau(-1.0), 1.0 / 3.0),
    }
}

/// Invert a target Kendall's tau into a parameter for `family`.
pub fn invert_tau(family: Family, tau: f64, dim: usize) -> Result<f64> {
    let (lo, hi) = tau_range(family, dim);
    let closed_range = matches!(family, Family::Fgm | Family::Amh | Family::Product);
    let inside = if closed_range {
        tau >= lo - 1e-15 && tau <= hi + 1e-15
    } else {
        tau >= lo && tau < hi
    };
    if !inside || !tau.is_finite() {
        return Err(Error::Estimation(format!(
            "kendall tau {tau} is outside the range attainable by {family} ({lo:.6}, {hi:.6})"
        )));
    }
    Ok(match family {
        Family::Product => 0.0,
        Family::Gumbel => 1.0 / (1.0 - tau),
        Family::Clayton => {
            if tau == 0.0 {
                return Err(Error::Estimation(
                    "clayton needs a positive kendall tau".into(),
                ));
            }
            2.0 * tau / (1.0 - tau)
        }
        Family::Fgm => (4.5 * tau).clamp(-1.0, 1.0),
        Family::Joe => bisect(|t| joe_tau(t) - tau, 1.0, 1e4),
        Family::Amh => bisect(|a| amh_tau(a) - tau, -1.0, 1.0),
        Family::Frank => {
            if tau == 0.0 {
                return Err(Error::Estimation(
                    "frank has no independence parameter; kendall tau is 0".into(),
                ));
            }
            let t = bisect(|t| frank_tau(t) - tau.abs(), 1e-10, 1e4);
            t.copysign(tau)
        }
    })
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) < THETA_TOL * 0.5 {
            break;
        }
        if (f(mid) > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Kendall's tau inversion: the average pairwise sample tau is mapped
/// through the family's tau link.
pub fn fit_tau_inversion(family: Family, data: &DataMatrix) -> Result<EstimationResult> {
    let dim = data.ncols();
    if !family.supports_dimension(dim) {
        return Err(Error::UnsupportedDimension {
            family: family.name(),
            dim,
        });
    }
    let cols: Vec<Vec<f64>> = (0..dim).map(|j| data.column(j)).collect();
    let mut taus = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            taus.push(kendall_tau(&cols[i], &cols[j])?);
        }
    }
    let tau = taus.iter().sum::<f64>() / taus.len() as f64;
    let theta_hat = invert_tau(family, tau, dim)?;
    let pseudo = pseudo_observations(data)?;
    let ll = loglik_at(family, dim, theta_hat, &pseudo);
    Ok(EstimationResult {
        family,
        dim,
        theta_hat,
        log_pseudo_likelihood: ll,
        method: FitMethod::TauInversion,
        iterations: 0,
        converged: true,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MccriEstimate {
    pub fit_x: EstimationResult,
    pub fit_y: EstimationResult,
    pub measure: MeasureValue,
}

/// Fit both families by MPL on the shared pseudo-observations of `data` and
/// plug the fitted copulas into the MCCRI with identical marginals.
pub fn estimate_mccri(
    family_x: Family,
    family_y: Family,
    data: &DataMatrix,
    gamma: f64,
    integration: &IntegrationConfig,
) -> Result<MccriEstimate> {
    validate_gamma(gamma)?;
    let pseudo = pseudo_observations(data)?;
    let fit_x = fit_mpl(family_x, &pseudo, None)?;
    let fit_y = fit_mpl(family_y, &pseudo, None)?;
    let measure = reduced_mccri(&fit_x.model()?, &fit_y.model()?, gamma, integration)?;
    Ok(MccriEstimate {
        fit_x,
        fit_y,
        measure,
    })
}

/// As [`estimate_mccri`], with each family fitted to its own sample.
pub fn estimate_mccri_two_sample(
    family_x: Family,
    data_x: &DataMatrix,
    family_y: Family,
    data_y: &DataMatrix,
    gamma: f64,
    integration: &IntegrationConfig,
) -> Result<MccriEstimate> {
    validate_gamma(gamma)?;
    if data_x.ncols() != data_y.ncols() {
        return Err(Error::DimensionMismatch {
            expected: data_x.ncols(),
            got: data_y.ncols(),
        });
    }
    let fit_x = fit_mpl(family_x, &pseudo_observations(data_x)?, None)?;
    let fit_y = fit_mpl(family_y, &pseudo_observations(data_y)?, None)?;
    let measure = reduced_mccri(&fit_x.model()?, &fit_y.model()?, gamma, integration)?;
    Ok(MccriEstimate {
        fit_x,
        fit_y,
        measure,
    })
}
