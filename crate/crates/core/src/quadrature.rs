//! Integration over the unit hypercube.
//!
//! [`Method::TensorGauss`] applies a tensor Gauss-Legendre rule mapped to
//! `(0,1)^d`, doubling the nodes per axis until two successive estimates agree
//! to `rel_tol`. Nodes are strictly interior, so integrands with integrable
//! singularities on the boundary are never evaluated there.
//! [`Method::MonteCarlo`] averages over ChaCha8 points and reports a standard
//! error.
//!
//! Work is split across rayon threads by fixed-size slices, and partial sums
//! are combined in slice order, so results are bit-identical for any thread
//! count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::rng::{derive_seed, Stream};

/// Largest tensor grid a single rule may evaluate (2^24 nodes).
pub const MAX_TENSOR_POINTS: usize = 1 << 24;
/// Largest dimension accepted by the tensor rule.
pub const MAX_TENSOR_DIM: usize = 4;

const MC_CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    TensorGauss,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IntegrationConfig {
    pub method: Method,
    pub nodes_per_axis: usize,
    pub mc_samples: usize,
    pub seed: u64,
    pub rel_tol: f64,
    pub max_refinements: u32,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        Self {
            method: Method::TensorGauss,
            nodes_per_axis: 64,
            mc_samples: 200_000,
            seed: 0,
            rel_tol: 1e-6,
            max_refinements: 4,
        }
    }
}

impl IntegrationConfig {
    pub fn tensor(nodes_per_axis: usize) -> Self {
        Self {
            nodes_per_axis,
            ..Self::default()
        }
    }

    pub fn monte_carlo(mc_samples: usize, seed: u64) -> Self {
        Self {
            method: Method::MonteCarlo,
            mc_samples,
            seed,
            ..Self::default()
        }
    }

    pub fn with_refinements(mut self, max_refinements: u32) -> Self {
        self.max_refinements = max_refinements;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_axis < 2 {
            return Err(Error::InvalidArgument(format!(
                "nodes_per_axis must be at least 2, got {}",
                self.nodes_per_axis
            )));
        }
        if self.mc_samples < 100 {
            return Err(Error::InvalidArgument(format!(
                "mc_samples must be at least 100, got {}",
                self.mc_samples
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralEstimate {
    pub value: f64,
    pub standard_error: f64,
    pub refinements_used: u32,
    /// Whether the refinement stopping rule was met. Always true for Monte
    /// Carlo; false for a tensor rule that ran out of refinements or budget.
    pub converged: bool,
    pub evaluations: u64,
}

/// Gauss-Legendre nodes and weights on (0, 1), in ascending node order.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 1.0 / ((1.0 - x * x) * dp * dp);
        // map [-1, 1] to [0, 1]: t = (1 ± x) / 2, weight halves
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integrate `f` over `(0,1)^d`.
pub fn integrate<F>(f: F, d: usize, cfg: &IntegrationConfig) -> Result<IntegralEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    cfg.validate()?;
    if d == 0 {
        return Err(Error::InvalidArgument(
            "dimension must be at least 1".into(),
        ));
    }
    match cfg.method {
        Method::TensorGauss => tensor_refined(&f, d, cfg),
        Method::MonteCarlo => monte_carlo(&f, d, cfg),
    }
}

/// Integrate `f` over `(0,1)^d` through `u = t²(3 - 2t)` on every axis.
///
/// The Jacobian `6t(1-t)` vanishes at both ends, which restores fast
/// convergence for integrands with algebraic endpoint behaviour such as
/// `u^{-1/2}` or `u log u`. Dimensions above 16 are rejected.
pub fn integrate_smoothed<F>(f: F, dim: usize, cfg: &IntegrationConfig) -> Result<IntegralEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if dim > 16 {
        return Err(Error::InvalidArgument(format!(
            "smoothed integration supports at most 16 dimensions, got {dim}"
        )));
    }
    integrate(
        |t: &[f64]| {
            let mut u = [0.0; 16];
            let u = &mut u[..dim];
            let mut jac = 1.0;
            for (ui, &ti) in u.iter_mut().zip(t) {
                *ui = ti * ti * (3.0 - 2.0 * ti);
                jac *= 6.0 * ti * (1.0 - ti);
            }
            if jac == 0.0 {
                return 0.0;
            }
            f(u) * jac
        },
        dim,
        cfg,
    )
}

fn tensor_refined<F>(f: &F, d: usize, cfg: &IntegrationConfig) -> Result<IntegralEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if d > MAX_TENSOR_DIM {
        return Err(Error::TensorDimensionTooLarge(d));
    }
    let points = |n: usize| n.checked_pow(d as u32).filter(|&p| p <= MAX_TENSOR_POINTS);
    let mut n = cfg.nodes_per_axis;
    let mut evaluations = points(n).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "{n}^{d} tensor nodes exceed the budget of {MAX_TENSOR_POINTS}"
        ))
    })? as u64;
    let mut value = tensor_rule(f, d, n)?;
    let mut refinements_used = 0;
    let mut converged = false;
    while refinements_used < cfg.max_refinements {
        let Some(next_points) = points(2 * n) else {
            break;
        };
        n *= 2;
        let next = tensor_rule(f, d, n)?;
        evaluations += next_points as u64;
        refinements_used += 1;
        let change = (next - value).abs();
        value = next;
        if change <= cfg.rel_tol * value.abs() || change == 0.0 {
            converged = true;
            break;
        }
    }
    Ok(IntegralEstimate {
        value,
        standard_error: 0.0,
        refinements_used,
        converged,
        evaluations,
    })
}

/// One tensor Gauss-Legendre rule with `n` nodes per axis.
pub fn tensor_rule<F>(f: &F, d: usize, n: usize) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let (nodes, weights) = gauss_legendre(n);
    let inner = n.pow(d as u32 - 1);
    let partials: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|first| -> Result<f64> {
            let mut point = vec![0.0; d];
            point[0] = nodes[first];
            let mut sum = 0.0;
            for flat in 0..inner {
                let mut rest = flat;
                let mut w = weights[first];
                for slot in point.iter_mut().skip(1) {
                    let k = rest % n;
                    rest /= n;
                    *slot = nodes[k];
                    w *= weights[k];
                }
                let v = f(&point);
                if !v.is_finite() {
                    return Err(Error::NonFiniteIntegrand {
                        value: v,
                        node: point,
                    });
                }
                sum += w * v;
            }
            Ok(sum)
        })
        .collect::<Result<_>>()?;
    Ok(partials.iter().sum())
}

fn monte_carlo<F>(f: &F, d: usize, cfg: &IntegrationConfig) -> Result<IntegralEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let total = cfg.mc_samples;
    let chunks = total.div_ceil(MC_CHUNK);
    let partials: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<(f64, f64)> {
            let mut rng = Stream::new(derive_seed(cfg.seed, &[c as u64]));
            let len = MC_CHUNK.min(total - c * MC_CHUNK);
            let mut point = vec![0.0; d];
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..len {
                point.iter_mut().for_each(|x| *x = rng.uniform());
                let v = f(&point);
                if !v.is_finite() {
                    return Err(Error::NonFiniteIntegrand {
                        value: v,
                        node: point,
                    });
                }
                s += v;
                s2 += v * v;
            }
            Ok((s, s2))
        })
        .collect::<Result<_>>()?;
    let (s, s2) = partials
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let n = total as f64;
    let mean = s / n;
    let var = ((s2 / n - mean * mean) * n / (n - 1.0)).max(0.0);
    Ok(IntegralEstimate {
        value: mean,
        standard_error: (var / n).sqrt(),
        refinements_used: 0,
        converged: true,
        evaluations: total as u64,
    })
}

/// Complete Beta function `B(a, b) = Γ(a)Γ(b)/Γ(a+b)`.
pub fn beta_function(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "beta function needs positive finite arguments, got ({a}, {b})"
        )));
    }
    Ok((ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp())
}
