//! Parametric copula families.
//!
//! Supported families are the bivariate FGM and Ali-Mikhail-Haq copulas and
//! the exchangeable Archimedean families (Joe, Gumbel-Hougaard, Frank,
//! Clayton) at any dimension, plus the independence (product) copula.
//!
//! Besides the distribution function every model exposes the survival copula
//! `Ĉ(u) = P(U₁ > 1-u₁, …, Uₙ > 1-uₙ)`, the co-copula `C*(u) = 1 - C(1-u)` and
//! the dual copula `C̃(u) = 1 - Ĉ(1-u)`. In two dimensions these reduce to
//! `u+v-1+C(1-u,1-v)`, `u+v-Ĉ(u,v)` and `u+v-C(u,v)`.
//!
//! Parameter values on the independence boundary (θ = 1 for Joe and Gumbel,
//! θ = 0 for FGM and AMH) evaluate as the product copula.

mod density;
mod generator;
mod sampling;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use generator::Generator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Fgm,
    Amh,
    Joe,
    Gumbel,
    Frank,
    Clayton,
    Product,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Fgm,
        Family::Amh,
        Family::Joe,
        Family::Gumbel,
        Family::Frank,
        Family::Clayton,
        Family::Product,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Fgm => "fgm",
            Family::Amh => "amh",
            Family::Joe => "joe",
            Family::Gumbel => "gumbel",
            Family::Frank => "frank",
            Family::Clayton => "clayton",
            Family::Product => "product",
        }
    }

    /// FGM and AMH are only available in their bivariate form.
    pub fn supports_dimension(self, dim: usize) -> bool {
        match self {
            Family::Fgm | Family::Amh => dim == 2,
            _ => dim >= 2,
        }
    }

    pub fn has_parameter(self) -> bool {
        self != Family::Product
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fgm" => Ok(Family::Fgm),
            "amh" | "ali-mikhail-haq" => Ok(Family::Amh),
            "joe" => Ok(Family::Joe),
            "gumbel" | "gumbel-hougaard" | "gh" => Ok(Family::Gumbel),
            "frank" => Ok(Family::Frank),
            "clayton" => Ok(Family::Clayton),
            "product" | "independence" | "pi" => Ok(Family::Product),
            other => Err(Error::InvalidArgument(format!(
                "unknown copula family '{other}'"
            ))),
        }
    }
}

/// A point of the closed unit hypercube.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitPoint(Vec<f64>);

impl UnitPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        check_unit(&coords)?;
        Ok(Self(coords))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl AsRef<[f64]> for UnitPoint {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

fn check_unit(u: &[f64]) -> Result<()> {
    for (index, &value) in u.iter().enumerate() {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::CoordinateOutOfRange { index, value });
        }
    }
    Ok(())
}

/// A copula family at a fixed dimension and parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CopulaModel {
    family: Family,
    dim: usize,
    theta: f64,
}

impl CopulaModel {
    pub fn new(family: Family, dim: usize, theta: f64) -> Result<Self> {
        if !family.supports_dimension(dim) {
            return Err(Error::UnsupportedDimension {
                family: family.name(),
                dim,
            });
        }
        let theta = if family == Family::Product {
            0.0
        } else {
            theta
        };
        let out_of_range = |bound| Error::ParameterOutOfRange {
            family: family.name(),
            value: theta,
            bound,
        };
        if !theta.is_finite() {
            return Err(out_of_range("parameter must be finite"));
        }
        match family {
            Family::Fgm if theta.abs() > 1.0 => return Err(out_of_range("|theta| <= 1")),
            Family::Amh if theta.abs() > 1.0 => return Err(out_of_range("|alpha| <= 1")),
            Family::Joe if theta < 1.0 => return Err(out_of_range("theta >= 1")),
            Family::Gumbel if theta < 1.0 => return Err(out_of_range("theta >= 1")),
            Family::Clayton if theta <= 0.0 => return Err(out_of_range("theta > 0")),
            Family::Frank if theta == 0.0 => return Err(out_of_range("theta != 0")),
            Family::Frank if dim >= 3 && theta < 0.0 => {
                return Err(out_of_range("theta > 0 when dimension >= 3"))
            }
            _ => {}
        }
        Ok(Self { family, dim, theta })
    }

    pub fn product(dim: usize) -> Self {
        Self {
            family: Family::Product,
            dim: dim.max(2),
            theta: 0.0,
        }
    }

    /// Parse `family:theta:dim`, e.g. `gumbel:1.1542:3` or `product::2`.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidArgument(format!(
                "copula spec '{spec}' must look like family:theta:dim"
            )));
        }
        let family: Family = parts[0].parse()?;
        let theta = match parts[1].trim() {
            "" | "-" if !family.has_parameter() => 0.0,
            "" | "-" => {
                return Err(Error::InvalidArgument(format!(
                    "copula spec '{spec}' is missing the {family} parameter"
                )))
            }
            t => t
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("bad parameter '{t}' in '{spec}'")))?,
        };
        let dim = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidArgument(format!("bad dimension in '{spec}'")))?;
        Self::new(family, dim, theta)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Same family and parameter at another dimension.
    pub fn with_dim(&self, dim: usize) -> Result<Self> {
        Self::new(self.family, dim, self.theta)
    }

    /// True when the parameter sits on the independence boundary.
    pub fn is_independence(&self) -> bool {
        match self.family {
            Family::Product => true,
            Family::Joe | Family::Gumbel => self.theta == 1.0,
            Family::Fgm | Family::Amh => self.theta == 0.0,
            _ => false,
        }
    }

    pub(crate) fn generator(&self) -> Option<Generator> {
        if self.is_independence() {
            return None;
        }
        match self.family {
            Family::Clayton => Some(Generator::Clayton(self.theta)),
            Family::Frank => Some(Generator::Frank(self.theta)),
            Family::Gumbel => Some(Generator::Gumbel(self.theta)),
            Family::Joe => Some(Generator::Joe(self.theta)),
            _ => None,
        }
    }

    fn check_point(&self, u: &[f64]) -> Result<()> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: u.len(),
            });
        }
        check_unit(u)
    }

    pub fn cdf(&self, u: &[f64]) -> Result<f64> {
        self.check_point(u)?;
        Ok(self.cdf_unchecked(u))
    }

    pub fn survival(&self, u: &[f64]) -> Result<f64> {
        self.check_point(u)?;
        Ok(self.survival_unchecked(u))
    }

    pub fn co_copula(&self, u: &[f64]) -> Result<f64> {
        self.check_point(u)?;
        Ok(self.co_copula_unchecked(u))
    }

    pub fn dual(&self, u: &[f64]) -> Result<f64> {
        self.check_point(u)?;
        Ok(self.dual_unchecked(u))
    }

    /// Copula density `∂ⁿC/∂u₁…∂uₙ` at an interior point.
    pub fn density(&self, u: &[f64]) -> Result<f64> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: u.len(),
            });
        }
        if u.iter().any(|&x| !(x > 0.0 && x < 1.0)) {
            return Err(Error::BoundaryPoint(u.to_vec()));
        }
        Ok(density::density(self, u))
    }

    /// `count` i.i.d. draws, one row per draw. Deterministic in `seed`.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
        sampling::sample(self, count, seed)
    }

    pub(crate) fn cdf_unchecked(&self, u: &[f64]) -> f64 {
        if u.iter().any(|&x| x <= 0.0) {
            return 0.0;
        }
        if self.is_independence() {
            return u.iter().product();
        }
        let t = self.theta;
        let value = match self.family {
            Family::Fgm => {
                let (a, b) = (u[0], u[1]);
                a * b * (1.0 + t * (1.0 - a) * (1.0 - b))
            }
            Family::Amh => {
                let (a, b) = (u[0], u[1]);
                a * b / (1.0 - t * (1.0 - a) * (1.0 - b))
            }
            Family::Joe => {
                // q = 1 - Π(1 - (1-uᵢ)^θ), kept accurate when every (1-uᵢ)^θ is tiny
                let log_inner: f64 = u.iter().map(|&x| (-(t * (-x).ln_1p()).exp()).ln_1p()).sum();
                let q = -log_inner.exp_m1();
                -(q.ln() / t).exp_m1()
            }
            Family::Gumbel => {
                let s: f64 = u.iter().map(|&x| (-x.ln()).powf(t)).sum();
                (-s.powf(1.0 / t)).exp()
            }
            Family::Frank if t > 0.0 => {
                // with sᵢ = 1 - (e^{-θuᵢ} - 1)/(e^{-θ} - 1) and R = Π(1 - sᵢ),
                // C = -ln((1 - R) + e^{-θ} R) / θ
                let b = -(-t).exp_m1();
                let log_r: f64 = u
                    .iter()
                    .map(|&x| (-((-t * x).exp() * -(-t * (1.0 - x)).exp_m1() / b)).ln_1p())
                    .sum();
                let one_minus_r = -log_r.exp_m1();
                -(one_minus_r + (-t).exp() * log_r.exp()).ln() / t
            }
            Family::Frank => {
                let num: f64 = u.iter().map(|&x| (-t * x).exp_m1()).product();
                let den = (-t).exp_m1().powi(self.dim as i32 - 1);
                -(num / den).ln_1p() / t
            }
            Family::Clayton => {
                let s: f64 = u.iter().map(|&x| x.powf(-t)).sum::<f64>() - (self.dim as f64 - 1.0);
                s.powf(-1.0 / t)
            }
            Family::Product => unreachable!(),
        };
        value.clamp(0.0, 1.0)
    }

    pub(crate) fn survival_unchecked(&self, u: &[f64]) -> f64 {
        if self.is_independence() {
            return u.iter().product();
        }
        let raw = match self.family {
            // radially symmetric
            Family::Fgm => return self.cdf_unchecked(u),
            Family::Amh => {
                let (a, b) = (u[0], u[1]);
                a * b * (1.0 - self.theta * (a + b - 1.0)) / (1.0 - self.theta * a * b)
            }
            _ if self.dim == 2 => {
                let (a, b) = (u[0], u[1]);
                a + b - 1.0 + self.cdf_unchecked(&[1.0 - a, 1.0 - b])
            }
            _ => self.inclusion_exclusion(u, |x| 1.0 - x),
        };
        clamp_frechet(u, raw)
    }

    pub(crate) fn co_copula_unchecked(&self, u: &[f64]) -> f64 {
        let reflected: Vec<f64> = u.iter().map(|&x| 1.0 - x).collect();
        1.0 - self.cdf_unchecked(&reflected)
    }

    pub(crate) fn dual_unchecked(&self, u: &[f64]) -> f64 {
        if self.dim == 2 {
            return (u[0] + u[1] - self.cdf_unchecked(u)).clamp(0.0, 1.0);
        }
        // 1 - Ĉ(1-u) = P(some Uᵢ ≤ uᵢ), the union probability
        let without = self.inclusion_exclusion(u, |x| x);
        (1.0 - without).clamp(0.0, 1.0)
    }

    /// `Σ_S (-1)^|S| C(w^S)` with `w^S_i = map(u_i)` for `i ∈ S` and 1
    /// elsewhere; setting a coordinate to 1 marginalises it out.
    fn inclusion_exclusion(&self, u: &[f64], map: impl Fn(f64) -> f64) -> f64 {
        let n = self.dim;
        let mut w = vec![1.0; n];
        let mut total = 0.0;
        for mask in 0u32..(1 << n) {
            for (i, wi) in w.iter_mut().enumerate() {
                *wi = if mask & (1 << i) != 0 { map(u[i]) } else { 1.0 };
            }
            let sign = if mask.count_ones() % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            total += sign * self.cdf_unchecked(&w);
        }
        total
    }
}

impl fmt::Display for CopulaModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.has_parameter() {
            write!(f, "{}:{}:{}", self.family, self.theta, self.dim)
        } else {
            write!(f, "{}::{}", self.family, self.dim)
        }
    }
}

fn clamp_frechet(u: &[f64], value: f64) -> f64 {
    let n = u.len() as f64;
    let lower = (u.iter().sum::<f64>() - n + 1.0).max(0.0);
    let upper = u.iter().cloned().fold(1.0, f64::min);
    value.clamp(lower.min(upper), upper)
}

/// Which surface a dominance check compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DominanceMode {
    /// Copula values: lower orthant order.
    Cdf,
    /// Survival copula values: upper orthant order.
    Survival,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ADominates,
    BDominates,
    /// Both dominate: the surfaces agree on the grid.
    Tie,
    Incomparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DominanceReport {
    pub verdict: Verdict,
    /// Largest `b - a` over the grid (how far `a ≥ b` fails).
    pub max_b_over_a: f64,
    /// Largest `a - b` over the grid.
    pub max_a_over_b: f64,
    /// Violation of the reported verdict; for `Incomparable` the smaller of
    /// the two one-sided violations.
    pub max_violation: f64,
}

const DOMINANCE_TOL: f64 = 1e-12;

/// Compare two copula surfaces pointwise on a uniform grid of
/// `grid_per_axis` points per coordinate (boundaries included).
pub fn check_pointwise_dominance(
    a: &CopulaModel,
    b: &CopulaModel,
    grid_per_axis: usize,
    mode: DominanceMode,
) -> Result<DominanceReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    if grid_per_axis < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid_per_axis must be at least 2, got {grid_per_axis}"
        )));
    }
    let dim = a.dim();
    let step = 1.0 / (grid_per_axis - 1) as f64;
    let total = grid_per_axis.pow(dim as u32);
    let mut point = vec![0.0; dim];
    let (mut max_b_over_a, mut max_a_over_b) = (0.0f64, 0.0f64);
    for flat in 0..total {
        let mut rest = flat;
        for x in point.iter_mut() {
            *x = (rest % grid_per_axis) as f64 * step;
            rest /= grid_per_axis;
        }
        let (va, vb) = match mode {
            DominanceMode::Cdf => (a.cdf_unchecked(&point), b.cdf_unchecked(&point)),
            DominanceMode::Survival => (a.survival_unchecked(&point), b.survival_unchecked(&point)),
        };
        max_b_over_a = max_b_over_a.max(vb - va);
        max_a_over_b = max_a_over_b.max(va - vb);
    }
    let a_dom = max_b_over_a <= DOMINANCE_TOL;
    let b_dom = max_a_over_b <= DOMINANCE_TOL;
    let (verdict, max_violation) = match (a_dom, b_dom) {
        (true, true) => (Verdict::Tie, max_b_over_a.max(max_a_over_b)),
        (true, false) => (Verdict::ADominates, max_b_over_a),
        (false, true) => (Verdict::BDominates, max_a_over_b),
        (false, false) => (Verdict::Incomparable, max_b_over_a.min(max_a_over_b)),
    };
    Ok(DominanceReport {
        verdict,
        max_b_over_a,
        max_a_over_b,
        max_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(f: Family, d: usize, t: f64) -> CopulaModel {
        CopulaModel::new(f, d, t).unwrap()
    }

    #[test]
    fn printed_examples() {
        assert!((model(Family::Product, 2, 0.0).cdf(&[0.3, 0.7]).unwrap() - 0.21).abs() < 1e-15);
        assert!((model(Family::Fgm, 2, 1.0).cdf(&[0.5, 0.5]).unwrap() - 0.3125).abs() < 1e-15);
        let g = model(Family::Gumbel, 3, 2.0).cdf(&[0.5, 0.5, 0.5]).unwrap();
        let expected = (-(3.0 * 2f64.ln().powi(2)).sqrt()).exp();
        assert!((g - expected).abs() < 1e-14);
        // hand value of the same expression
        assert!((g - 0.301_023_743_930_928).abs() < 1e-12);
    }

    #[test]
    fn parameter_ranges_are_enforced() {
        let cases = [
            (Family::Fgm, 2, 1.2),
            (Family::Amh, 2, -1.1),
            (Family::Joe, 3, 0.9),
            (Family::Gumbel, 2, 0.5),
            (Family::Frank, 2, 0.0),
            (Family::Frank, 3, -1.0),
            (Family::Clayton, 2, 0.0),
        ];
        for (f, d, t) in cases {
            match CopulaModel::new(f, d, t) {
                Err(Error::ParameterOutOfRange { bound, .. }) => assert!(!bound.is_empty()),
                other => panic!("{f} {t}: expected range error, got {other:?}"),
            }
        }
        assert!(CopulaModel::new(Family::Frank, 2, -3.0).is_ok());
        assert!(matches!(
            CopulaModel::new(Family::Fgm, 3, 0.2),
            Err(Error::UnsupportedDimension { .. })
        ));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let m = model(Family::Clayton, 3, 2.0);
        assert_eq!(
            m.cdf(&[0.2, 0.3]),
            Err(Error::DimensionMismatch {
                expected: 3,
                got: 2
            })
        );
        assert!(matches!(
            m.cdf(&[0.2, 1.3, 0.1]),
            Err(Error::CoordinateOutOfRange { index: 1, .. })
        ));
    }

    #[test]
    fn boundary_parameters_collapse_to_product() {
        let u = [0.35, 0.8];
        for m in [
            model(Family::Joe, 2, 1.0),
            model(Family::Gumbel, 2, 1.0),
            model(Family::Fgm, 2, 0.0),
            model(Family::Amh, 2, 0.0),
        ] {
            assert!(m.is_independence());
            assert_eq!(m.cdf(&u).unwrap(), 0.35 * 0.8);
            assert_eq!(m.density(&u).unwrap(), 1.0);
        }
    }

    #[test]
    fn co_and_dual_examples() {
        let p = CopulaModel::product(2);
        assert!((p.co_copula(&[0.3, 0.7]).unwrap() - 0.79).abs() < 1e-15);
        assert!((p.dual(&[0.3, 0.7]).unwrap() - 0.79).abs() < 1e-15);
        assert!((p.survival(&[0.3, 0.7]).unwrap() - 0.21).abs() < 1e-15);

        let joe = model(Family::Joe, 2, 2.0);
        // (1 - (1 - u^θ)(1 - v^θ))^{1/θ} at u = v = 0.5
        assert!((joe.co_copula(&[0.5, 0.5]).unwrap() - 0.4375f64.sqrt()).abs() < 1e-14);
        // printed Joe form evaluated by hand: 1 - (1 - 0.75²)^{1/2}
        let c = 1.0 - (1.0 - 0.75f64 * 0.75).sqrt();
        assert!((joe.dual(&[0.5, 0.5]).unwrap() - (1.0 - c)).abs() < 1e-14);

        for m in [
            joe,
            model(Family::Gumbel, 3, 1.7),
            model(Family::Frank, 2, -4.0),
        ] {
            let ones = vec![1.0; m.dim()];
            let zeros = vec![0.0; m.dim()];
            assert!((m.co_copula(&ones).unwrap() - 1.0).abs() < 1e-15);
            assert!(m.dual(&zeros).unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn fgm_survival_equals_cdf() {
        let m = model(Family::Fgm, 2, 0.8);
        let a = m.cdf(&[0.4, 0.6]).unwrap();
        let b = m.survival(&[0.4, 0.6]).unwrap();
        assert!((a - b).abs() < 1e-15);
        let printed = 0.4 + 0.6 - 1.0 + m.cdf(&[0.6, 0.4]).unwrap();
        assert!((printed - a).abs() < 1e-15);
    }

    #[test]
    fn trivariate_survival_matches_brute_force_sampling() {
        let m = model(Family::Gumbel, 3, 2.0);
        let s = m.survival(&[0.5, 0.5, 0.5]).unwrap();
        let draws = m.sample(1_000_000, 2024).unwrap();
        let hits = draws.iter().filter(|r| r.iter().all(|&x| x > 0.5)).count();
        let freq = hits as f64 / draws.len() as f64;
        // binomial standard error is below 5e-4 here
        assert!(
            (s - freq).abs() < 2.5e-3,
            "inclusion-exclusion {s} vs sampled {freq}"
        );
    }

    #[test]
    fn exchangeable_margins_drop_to_lower_dimension() {
        let m3 = model(Family::Clayton, 3, 1.5);
        let m2 = model(Family::Clayton, 2, 1.5);
        let a = m3.cdf(&[0.3, 1.0, 0.6]).unwrap();
        let b = m2.cdf(&[0.3, 0.6]).unwrap();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn dominance_examples() {
        let p = CopulaModel::product(2);
        let g = model(Family::Gumbel, 2, 2.0);
        let r = check_pointwise_dominance(&p, &g, 101, DominanceMode::Cdf).unwrap();
        assert_eq!(r.verdict, Verdict::BDominates);
        assert!(r.max_violation <= DOMINANCE_TOL);

        let f = model(Family::Fgm, 2, 0.3);
        let r = check_pointwise_dominance(&f, &f, 101, DominanceMode::Cdf).unwrap();
        assert_eq!(r.verdict, Verdict::Tie);
        assert_eq!(r.max_violation, 0.0);

        let lo = model(Family::Fgm, 2, -0.5);
        let hi = model(Family::Fgm, 2, 0.5);
        let r = check_pointwise_dominance(&lo, &hi, 51, DominanceMode::Cdf).unwrap();
        assert_eq!(r.verdict, Verdict::BDominates);

        let c = model(Family::Clayton, 2, 1.0);
        let r = check_pointwise_dominance(&g, &c, 41, DominanceMode::Cdf).unwrap();
        assert_eq!(r.verdict, Verdict::Incomparable);
        assert!(r.max_violation > 0.0);

        assert!(check_pointwise_dominance(&p, &g, 1, DominanceMode::Cdf).is_err());
        let p3 = CopulaModel::product(3);
        assert!(check_pointwise_dominance(&p, &p3, 5, DominanceMode::Cdf).is_err());
    }

    #[test]
    fn spec_parsing() {
        let m = CopulaModel::parse_spec("gumbel:1.1542:3").unwrap();
        assert_eq!(m.family(), Family::Gumbel);
        assert_eq!(m.dim(), 3);
        let p = CopulaModel::parse_spec("product::2").unwrap();
        assert_eq!(p, CopulaModel::product(2));
        assert!(CopulaModel::parse_spec("frank::3").is_err());
        assert!(CopulaModel::parse_spec("nope:1:2").is_err());
        assert_eq!(CopulaModel::parse_spec(&m.to_string()).unwrap(), m);
    }
}
