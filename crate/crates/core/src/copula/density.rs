use super::{CopulaModel, Family};

/// Evaluation points are pulled into `[EPS, 1 - EPS]` before the density
/// formulas are applied; Joe and Gumbel densities are unbounded at corners.
pub(crate) const EPS: f64 = 1e-12;

pub(crate) fn density(model: &CopulaModel, u: &[f64]) -> f64 {
    if model.is_independence() {
        return 1.0;
    }
    let clamped: Vec<f64> = u.iter().map(|&x| x.clamp(EPS, 1.0 - EPS)).collect();
    let t = model.theta();
    match model.family() {
        Family::Fgm => 1.0 + t * (1.0 - 2.0 * clamped[0]) * (1.0 - 2.0 * clamped[1]),
        Family::Amh => {
            let (a, b) = (clamped[0], clamped[1]);
            let q = (1.0 - a) * (1.0 - b);
            let num = t * t * q + t * (a * b + a + b - 2.0) + 1.0;
            num / (1.0 - t * q).powi(3)
        }
        _ => {
            let g = model
                .generator()
                .expect("parametric Archimedean family has a generator");
            let s: f64 = clamped.iter().map(|&x| g.phi(x)).sum();
            let jac: f64 = clamped.iter().map(|&x| g.dphi(x)).product();
            (g.psi_deriv(model.dim(), s) * jac).max(0.0)
        }
    }
}
