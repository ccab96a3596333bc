//! Marginal models and coordinate distortion maps.
//!
//! A distortion map composes a reference marginal `G` with the quantile
//! function of a truth marginal `F`: `d(u) = G(F⁻¹(u))` on the CDF scale and
//! `d̄(u) = Ḡ(F̄⁻¹(u)) = 1 - d(1 - u)` on the survival scale. Exponential and
//! proportional reversed hazard rate (PRHR) pairs reduce to power maps and are
//! stored in closed form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Grid size used to validate distortion maps.
pub const VALIDATION_GRID: usize = 1001;

/// A nonempty, sorted sample of finite reals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct EmpiricalSample(Vec<f64>);

impl EmpiricalSample {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("empirical sample is empty".into()));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "empirical sample holds non-finite value {bad}"
            )));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of sample points `≤ x`.
    fn count_le(&self, x: f64) -> usize {
        self.0.partition_point(|&v| v <= x)
    }
}

impl TryFrom<Vec<f64>> for EmpiricalSample {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<EmpiricalSample> for Vec<f64> {
    fn from(s: EmpiricalSample) -> Self {
        s.0
    }
}

/// Rescaled empirical distribution function `#{xᵢ ≤ x} / (n+1)`, clamped to
/// `[1/(n+1), n/(n+1)]` so values stay inside (0, 1).
pub fn empirical_cdf(sample: &EmpiricalSample, x: f64) -> f64 {
    let n = sample.len();
    sample.count_le(x).clamp(1, n) as f64 / (n + 1) as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MarginalModel {
    Uniform01,
    Exponential {
        rate: f64,
    },
    /// `F(x)^exponent` for the base distribution `F`.
    PrhrPower {
        exponent: f64,
        base: Box<MarginalModel>,
    },
    Empirical {
        sample: EmpiricalSample,
    },
}

impl MarginalModel {
    pub fn exponential(rate: f64) -> Result<Self> {
        let m = MarginalModel::Exponential { rate };
        m.validate()?;
        Ok(m)
    }

    pub fn prhr(exponent: f64, base: MarginalModel) -> Result<Self> {
        let m = MarginalModel::PrhrPower {
            exponent,
            base: Box::new(base),
        };
        m.validate()?;
        Ok(m)
    }

    pub fn empirical(values: Vec<f64>) -> Result<Self> {
        Ok(MarginalModel::Empirical {
            sample: EmpiricalSample::new(values)?,
        })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MarginalModel::Uniform01 | MarginalModel::Empirical { .. } => Ok(()),
            MarginalModel::Exponential { rate } if *rate > 0.0 && rate.is_finite() => Ok(()),
            MarginalModel::Exponential { rate } => Err(Error::InvalidArgument(format!(
                "exponential rate must be positive, got {rate}"
            ))),
            MarginalModel::PrhrPower { exponent, base }
                if *exponent > 0.0 && exponent.is_finite() =>
            {
                base.validate()
            }
            MarginalModel::PrhrPower { exponent, .. } => Err(Error::InvalidArgument(format!(
                "PRHR exponent must be positive, got {exponent}"
            ))),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            MarginalModel::Uniform01 => x.clamp(0.0, 1.0),
            MarginalModel::Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-rate * x).exp_m1()
                }
            }
            MarginalModel::PrhrPower { exponent, base } => base.cdf(x).powf(*exponent),
            MarginalModel::Empirical { sample } => sample.count_le(x) as f64 / sample.len() as f64,
        }
    }

    /// Left-continuous generalised inverse `inf{x : F(x) ≥ p}`.
    pub fn quantile(&self, p: f64) -> f64 {
        match self {
            MarginalModel::Uniform01 => p.clamp(0.0, 1.0),
            MarginalModel::Exponential { rate } => {
                if p >= 1.0 {
                    f64::INFINITY
                } else {
                    -(-p).ln_1p() / rate
                }
            }
            MarginalModel::PrhrPower { exponent, base } => {
                base.quantile(p.max(0.0).powf(1.0 / exponent))
            }
            MarginalModel::Empirical { sample } => {
                let v = sample.values();
                if p <= 0.0 {
                    return f64::NEG_INFINITY;
                }
                let k = (p * v.len() as f64).ceil() as usize;
                v[k.clamp(1, v.len()) - 1]
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Cdf,
    Survival,
}

/// One coordinate map `[0,1] → [0,1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "map")]
pub enum CoordinateMap {
    Identity,
    /// `u ↦ u^a`
    Power {
        a: f64,
    },
    /// `u ↦ 1 - (1-u)^a`
    ReflectedPower {
        a: f64,
    },
    /// `u ↦ G(F⁻¹(u))`
    Composite {
        truth: MarginalModel,
        reference: MarginalModel,
    },
    /// `u ↦ 1 - G(F⁻¹(1-u))`
    ReflectedComposite {
        truth: MarginalModel,
        reference: MarginalModel,
    },
}

impl CoordinateMap {
    pub fn apply(&self, u: f64) -> f64 {
        match self {
            CoordinateMap::Identity => u,
            CoordinateMap::Power { a } => u.powf(*a),
            CoordinateMap::ReflectedPower { a } => -(a * (-u).ln_1p()).exp_m1(),
            CoordinateMap::Composite { truth, reference } => reference.cdf(truth.quantile(u)),
            CoordinateMap::ReflectedComposite { truth, reference } => {
                1.0 - reference.cdf(truth.quantile(1.0 - u))
            }
        }
    }

    fn reflected(self) -> Self {
        match self {
            CoordinateMap::Identity => CoordinateMap::Identity,
            CoordinateMap::Power { a } => CoordinateMap::ReflectedPower { a },
            CoordinateMap::ReflectedPower { a } => CoordinateMap::Power { a },
            CoordinateMap::Composite { truth, reference } => {
                CoordinateMap::ReflectedComposite { truth, reference }
            }
            CoordinateMap::ReflectedComposite { truth, reference } => {
                CoordinateMap::Composite { truth, reference }
            }
        }
    }

    fn is_identity(&self) -> bool {
        match self {
            CoordinateMap::Identity => true,
            CoordinateMap::Power { a } | CoordinateMap::ReflectedPower { a } => *a == 1.0,
            _ => false,
        }
    }
}

/// Per-coordinate distortion maps on one scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistortionProfile {
    scale: Scale,
    maps: Vec<CoordinateMap>,
}

impl DistortionProfile {
    pub fn identity(scale: Scale, dim: usize) -> Self {
        Self {
            scale,
            maps: vec![CoordinateMap::Identity; dim],
        }
    }

    /// Validated profile from explicit maps: each map must fix 0 and 1 and be
    /// nondecreasing on the validation grid.
    pub fn from_maps(scale: Scale, maps: Vec<CoordinateMap>) -> Result<Self> {
        for (index, map) in maps.iter().enumerate() {
            validate_map(index, map)?;
        }
        Ok(Self { scale, maps })
    }

    /// Power maps `u ↦ u^{aᵢ}`, the PRHR distortion on the CDF scale.
    pub fn powers(scale: Scale, exponents: &[f64]) -> Result<Self> {
        let maps = exponents
            .iter()
            .enumerate()
            .map(|(index, &a)| {
                if a > 0.0 && a.is_finite() {
                    Ok(CoordinateMap::Power { a })
                } else {
                    Err(Error::Incomposable {
                        index,
                        reason: format!("power exponent must be positive, got {a}"),
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_maps(scale, maps)
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[CoordinateMap] {
        &self.maps
    }

    pub fn is_identity(&self) -> bool {
        self.maps.iter().all(CoordinateMap::is_identity)
    }

    pub fn apply(&self, index: usize, u: f64) -> f64 {
        self.maps[index].apply(u)
    }

    /// Write `d(u)` into `out`.
    pub fn apply_point(&self, u: &[f64], out: &mut [f64]) {
        for ((o, &x), m) in out.iter_mut().zip(u).zip(&self.maps) {
            *o = m.apply(x);
        }
    }
}

/// Build the profile `d_i = G_i ∘ F_i⁻¹` (CDF scale) or `Ḡ_i ∘ F̄_i⁻¹`
/// (survival scale) for paired truth and reference marginals.
pub fn build_distortion(
    truth: &[MarginalModel],
    reference: &[MarginalModel],
    scale: Scale,
) -> Result<DistortionProfile> {
    if truth.len() != reference.len() {
        return Err(Error::DimensionMismatch {
            expected: truth.len(),
            got: reference.len(),
        });
    }
    let maps = truth
        .iter()
        .zip(reference)
        .enumerate()
        .map(|(index, (f, g))| {
            f.validate()
                .and_then(|_| g.validate())
                .map_err(|e| Error::Incomposable {
                    index,
                    reason: e.to_string(),
                })?;
            let cdf_map = cdf_scale_map(f, g);
            Ok(match scale {
                Scale::Cdf => cdf_map,
                Scale::Survival => cdf_map.reflected(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    DistortionProfile::from_maps(scale, maps)
}

fn cdf_scale_map(f: &MarginalModel, g: &MarginalModel) -> CoordinateMap {
    use MarginalModel::*;
    if f == g {
        return CoordinateMap::Identity;
    }
    match (f, g) {
        (Exponential { rate: lf }, Exponential { rate: lg }) => {
            CoordinateMap::ReflectedPower { a: lg / lf }
        }
        (base, PrhrPower { exponent, base: gb }) if **gb == *base => {
            CoordinateMap::Power { a: *exponent }
        }
        (
            PrhrPower {
                exponent: a,
                base: fb,
            },
            PrhrPower {
                exponent: b,
                base: gb,
            },
        ) if fb == gb => CoordinateMap::Power { a: b / a },
        _ => CoordinateMap::Composite {
            truth: f.clone(),
            reference: g.clone(),
        },
    }
}

fn validate_map(index: usize, map: &CoordinateMap) -> Result<()> {
    let fail = |reason: String| Err(Error::Incomposable { index, reason });
    let at0 = map.apply(0.0);
    let at1 = map.apply(1.0);
    if at0.abs() > 1e-12 {
        return fail(format!("map sends 0 to {at0}"));
    }
    if (at1 - 1.0).abs() > 1e-12 {
        return fail(format!("map sends 1 to {at1}"));
    }
    let mut prev = at0;
    for k in 1..VALIDATION_GRID {
        let u = k as f64 / (VALIDATION_GRID - 1) as f64;
        let v = map.apply(u);
        if !(0.0..=1.0).contains(&v) || v.is_nan() {
            return fail(format!("map value {v} at {u} leaves [0, 1]"));
        }
        if v < prev - 1e-15 {
            return fail(format!("map decreases near {u}"));
        }
        prev = v;
    }
    Ok(())
}
