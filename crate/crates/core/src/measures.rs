//! Copula-based Rényi inaccuracy and entropy functionals.
//!
//! For order `γ > 0, γ ≠ 1` and `ψ(γ) = 1/(1-γ)` every Rényi kind evaluates
//!
//! ```text
//! ψ(γ) · log ∫_{(0,1)ⁿ} K_X(u) · K_Y(d(u))^{γ-1} du
//! ```
//!
//! where `K` is the copula (MCCRI), survival copula (MSCRI), co-copula
//! (MCoCRI) or dual copula (MDCRI) surface and `d` the distortion profile. The
//! first copula is the truth and the second the reference. The entropy kinds
//! (MCCRE, MSCRE) use the truth copula in both slots, and the Kerridge kinds
//! (CCI, SCI) evaluate `-∫ K_X(u) log K_Y(d(u)) du`.
//!
//! Products with a vanishing linear factor (`0 · log 0`, `0 · 0^{γ-1}`)
//! contribute zero.
//!
//! Integrals are taken after the per-axis substitution `u = t²(3 - 2t)`,
//! whose Jacobian `6t(1-t)` vanishes at both ends and smooths the algebraic
//! endpoint behaviour of `C^{γ-1}` and `log C`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::copula::CopulaModel;
use crate::error::{Error, Result};
use crate::marginals::{DistortionProfile, Scale};
use crate::quadrature::{integrate_smoothed, IntegralEstimate, IntegrationConfig};

/// Orders closer than this to 1 are rejected.
pub const GAMMA_EXCLUSION: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Mccri,
    Mscri,
    Mcocri,
    Mdcri,
    Cci,
    Sci,
    Mccre,
    Mscre,
}

#[derive(Clone, Copy)]
enum Surface {
    Cdf,
    Survival,
    Co,
    Dual,
}

impl Surface {
    fn eval(self, m: &CopulaModel, u: &[f64]) -> f64 {
        match self {
            Surface::Cdf => m.cdf_unchecked(u),
            Surface::Survival => m.survival_unchecked(u),
            Surface::Co => m.co_copula_unchecked(u),
            Surface::Dual => m.dual_unchecked(u),
        }
    }
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 8] = [
        MeasureKind::Mccri,
        MeasureKind::Mscri,
        MeasureKind::Mcocri,
        MeasureKind::Mdcri,
        MeasureKind::Cci,
        MeasureKind::Sci,
        MeasureKind::Mccre,
        MeasureKind::Mscre,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::Mccri => "mccri",
            MeasureKind::Mscri => "mscri",
            MeasureKind::Mcocri => "mcocri",
            MeasureKind::Mdcri => "mdcri",
            MeasureKind::Cci => "cci",
            MeasureKind::Sci => "sci",
            MeasureKind::Mccre => "mccre",
            MeasureKind::Mscre => "mscre",
        }
    }

    /// Distortion scale the kind is defined on.
    pub fn scale(self) -> Scale {
        match self {
            MeasureKind::Mscri | MeasureKind::Sci | MeasureKind::Mscre => Scale::Survival,
            _ => Scale::Cdf,
        }
    }

    pub fn uses_gamma(self) -> bool {
        !matches!(self, MeasureKind::Cci | MeasureKind::Sci)
    }

    pub fn is_entropy(self) -> bool {
        matches!(self, MeasureKind::Mccre | MeasureKind::Mscre)
    }

    fn surface(self) -> Surface {
        match self {
            MeasureKind::Mccri | MeasureKind::Cci | MeasureKind::Mccre => Surface::Cdf,
            MeasureKind::Mscri | MeasureKind::Sci | MeasureKind::Mscre => Surface::Survival,
            MeasureKind::Mcocri => Surface::Co,
            MeasureKind::Mdcri => Surface::Dual,
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let alias = match lower.as_str() {
            "ccri" => "mccri",
            "scri" => "mscri",
            "cocri" | "coccri" => "mcocri",
            "dcri" => "mdcri",
            other => other,
        };
        MeasureKind::ALL
            .into_iter()
            .find(|k| k.name() == alias)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown measure kind '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureRequest {
    pub kind: MeasureKind,
    pub gamma: Option<f64>,
    pub truth: CopulaModel,
    pub reference: Option<CopulaModel>,
    pub distortion: DistortionProfile,
    pub integration: IntegrationConfig,
}

impl MeasureRequest {
    /// Request with identity distortion on the kind's scale and default
    /// integration settings.
    pub fn new(
        kind: MeasureKind,
        gamma: Option<f64>,
        truth: CopulaModel,
        reference: Option<CopulaModel>,
    ) -> Self {
        Self {
            kind,
            gamma,
            distortion: DistortionProfile::identity(kind.scale(), truth.dim()),
            truth,
            reference,
            integration: IntegrationConfig::default(),
        }
    }

    pub fn with_distortion(mut self, distortion: DistortionProfile) -> Self {
        self.distortion = distortion;
        self
    }

    pub fn with_integration(mut self, integration: IntegrationConfig) -> Self {
        self.integration = integration;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let kind = self.kind;
        match (kind.uses_gamma(), self.gamma) {
            (true, None) => {
                return Err(Error::InvalidArgument(format!(
                    "{kind} requires an order gamma"
                )))
            }
            (false, Some(_)) => {
                return Err(Error::InvalidArgument(format!(
                    "gamma is not accepted for {kind}"
                )))
            }
            (true, Some(g)) => validate_gamma(g)?,
            (false, None) => {}
        }
        match (kind.is_entropy(), &self.reference) {
            (false, None) => {
                return Err(Error::InvalidArgument(format!(
                    "{kind} requires a reference copula"
                )))
            }
            (true, Some(_)) => {
                return Err(Error::InvalidArgument(format!(
                    "{kind} is a self-measure and takes no reference copula"
                )))
            }
            (false, Some(r)) if r.dim() != self.truth.dim() => {
                return Err(Error::DimensionMismatch {
                    expected: self.truth.dim(),
                    got: r.dim(),
                })
            }
            _ => {}
        }
        if self.distortion.dim() != self.truth.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.truth.dim(),
                got: self.distortion.dim(),
            });
        }
        if self.distortion.scale() != kind.scale() {
            return Err(Error::InvalidArgument(format!(
                "{kind} needs a {:?} scale distortion, got {:?}",
                kind.scale(),
                self.distortion.scale()
            )));
        }
        self.integration.validate()
    }
}

pub fn validate_gamma(gamma: f64) -> Result<()> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "gamma must be positive and finite, got {gamma}"
        )));
    }
    if (gamma - 1.0).abs() <= GAMMA_EXCLUSION {
        return Err(Error::InvalidArgument(format!(
            "gamma = {gamma} is too close to 1; use cci or sci for the limit"
        )));
    }
    Ok(())
}

/// `ψ(γ) = 1/(1-γ)`.
pub fn psi(gamma: f64) -> f64 {
    1.0 / (1.0 - gamma)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureValue {
    pub kind: MeasureKind,
    pub gamma: Option<f64>,
    pub value: f64,
    pub integral: IntegralEstimate,
    pub truth: CopulaModel,
    pub reference: Option<CopulaModel>,
}

/// Evaluate any measure kind.
pub fn evaluate(req: &MeasureRequest) -> Result<MeasureValue> {
    req.validate()?;
    let kind = req.kind;
    let surface = kind.surface();
    let truth = req.truth;
    let reference = req.reference.unwrap_or(truth);
    let dim = truth.dim();
    let distortion = &req.distortion;
    let identity = distortion.is_identity();

    let reference_value = |u: &[f64]| -> f64 {
        if identity {
            surface.eval(&reference, u)
        } else {
            let mut mapped = vec![0.0; dim];
            distortion.apply_point(u, &mut mapped);
            surface.eval(&reference, &mapped)
        }
    };

    let integral = match req.gamma {
        Some(gamma) => {
            let exponent = gamma - 1.0;
            integrate_smoothed(
                |u: &[f64]| {
                    let t = surface.eval(&truth, u);
                    if t == 0.0 {
                        return 0.0;
                    }
                    t * reference_value(u).powf(exponent)
                },
                dim,
                &req.integration,
            )?
        }
        None => integrate_smoothed(
            |u: &[f64]| {
                let t = surface.eval(&truth, u);
                if t == 0.0 {
                    return 0.0;
                }
                -t * reference_value(u).ln()
            },
            dim,
            &req.integration,
        )?,
    };

    let value = match req.gamma {
        Some(gamma) => {
            if !(integral.value > 0.0 && integral.value.is_finite()) {
                return Err(Error::DegenerateIntegral(integral.value));
            }
            psi(gamma) * integral.value.ln()
        }
        None => {
            if !integral.value.is_finite() {
                return Err(Error::DegenerateIntegral(integral.value));
            }
            integral.value
        }
    };
    Ok(MeasureValue {
        kind,
        gamma: req.gamma,
        value,
        integral,
        truth,
        reference: req.reference,
    })
}

fn expect_kind(req: &MeasureRequest, allowed: &[MeasureKind]) -> Result<()> {
    if allowed.contains(&req.kind) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "request kind {} does not match the called measure",
            req.kind
        )))
    }
}

pub fn mccri(req: &MeasureRequest) -> Result<MeasureValue> {
    expect_kind(req, &[MeasureKind::Mccri])?;
    evaluate(req)
}

pub fn mccre(req: &MeasureRequest) -> Result<MeasureValue> {
    expect_kind(req, &[MeasureKind::Mccre])?;
    evaluate(req)
}

pub fn mscri(req: &MeasureRequest) -> Result<MeasureValue> {
    expect_kind(req, &[MeasureKind::Mscri])?;
    evaluate(req)
}

pub fn mscre(req: &MeasureRequest) -> Result<MeasureValue> {
    expect_kind(req, &[MeasureKind::Mscre])?;
    evaluate(req)
}

pub fn cci(req: &MeasureRequest) -> Result<MeasureValue> {
    expect_kind(req, &[MeasureKind::Cci])?;
    evaluate(req)
}

pub fn sci(req: &MeasureRequest) -> Result<MeasureValue> {
    expect_kind(req, &[MeasureKind::Sci])?;
    evaluate(req)
}

pub fn cocri(req: &MeasureRequest) -> Result<MeasureValue> {
    expect_kind(req, &[MeasureKind::Mcocri])?;
    evaluate(req)
}

pub fn dcri(req: &MeasureRequest) -> Result<MeasureValue> {
    expect_kind(req, &[MeasureKind::Mdcri])?;
    evaluate(req)
}

/// MCCRI between two copulas with identical marginals (no distortion).
pub fn reduced_mccri(
    truth: &CopulaModel,
    reference: &CopulaModel,
    gamma: f64,
    integration: &IntegrationConfig,
) -> Result<MeasureValue> {
    evaluate(
        &MeasureRequest::new(MeasureKind::Mccri, Some(gamma), *truth, Some(*reference))
            .with_integration(*integration),
    )
}
