//! Samplers.
//!
//! Archimedean families use the Marshall-Olkin construction
//! `Uᵢ = ψ(Eᵢ / V)` with `Eᵢ ~ Exp(1)` and a frailty `V` whose Laplace
//! transform is `ψ`:
//!
//! | family  | frailty `V`                                          |
//! |---------|------------------------------------------------------|
//! | Clayton | Gamma(1/θ)                                           |
//! | Gumbel  | positive stable, index 1/θ (Kanter / Chambers-Mallows-Stuck) |
//! | Joe     | Sibuya(1/θ), drawn as Geometric(P) with P ~ Beta(1/θ, 1-1/θ) |
//! | Frank   | Logarithmic(1 - e^{-θ}) by Kemp's LK algorithm       |
//!
//! The bivariate FGM, AMH and negatively dependent Frank copulas are drawn by
//! conditional inversion: `U, W` uniform, `V = C⁻¹_{2|1}(W | U)`.

use std::f64::consts::PI;

use super::{CopulaModel, Family, Generator};
use crate::error::{Error, Result};
use crate::rng::Stream;

const TOP: f64 = 1.0 - f64::EPSILON / 2.0;

pub(crate) fn sample(model: &CopulaModel, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if count == 0 {
        return Err(Error::InvalidArgument(
            "sample count must be positive".into(),
        ));
    }
    let mut rng = Stream::new(seed);
    let dim = model.dim();
    if model.is_independence() {
        return Ok((0..count)
            .map(|_| (0..dim).map(|_| rng.uniform()).collect())
            .collect());
    }
    let t = model.theta();
    let rows = match (model.family(), model.generator()) {
        (Family::Fgm, _) => conditional(count, &mut rng, |u, w| fgm_inverse(t, u, w)),
        (Family::Amh, _) => conditional(count, &mut rng, |u, w| amh_inverse(t, u, w)),
        (Family::Frank, _) if t < 0.0 => {
            conditional(count, &mut rng, |u, w| frank_inverse(t, u, w))
        }
        (_, Some(g)) => (0..count)
            .map(|_| {
                let v = frailty(g, &mut rng);
                (0..dim)
                    .map(|_| g.psi(rng.exponential() / v).clamp(f64::MIN_POSITIVE, TOP))
                    .collect()
            })
            .collect(),
        (family, None) => {
            return Err(Error::UnsupportedDimension {
                family: family.name(),
                dim,
            })
        }
    };
    Ok(rows)
}

fn conditional(count: usize, rng: &mut Stream, inverse: impl Fn(f64, f64) -> f64) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| {
            let u = rng.uniform();
            let w = rng.uniform();
            vec![u, inverse(u, w).clamp(f64::MIN_POSITIVE, TOP)]
        })
        .collect()
}

/// Root of `v + a v (1 - v) = w` in [0, 1], `a = θ(1 - 2u)`.
fn fgm_inverse(theta: f64, u: f64, w: f64) -> f64 {
    let a = theta * (1.0 - 2.0 * u);
    let b = 1.0 + a;
    2.0 * w / (b + (b * b - 4.0 * a * w).max(0.0).sqrt())
}

/// Bisection on `∂C/∂u = v(1 - α(1-v)) / (1 - α(1-u)(1-v))²`.
fn amh_inverse(alpha: f64, u: f64, w: f64) -> f64 {
    let h = |v: f64| {
        let d = 1.0 - alpha * (1.0 - u) * (1.0 - v);
        v * (1.0 - alpha * (1.0 - v)) / (d * d)
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        if h(mid) < w {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn frank_inverse(theta: f64, u: f64, w: f64) -> f64 {
    let num = w * (-theta).exp_m1();
    let den = w + (1.0 - w) * (-theta * u).exp();
    -(num / den).ln_1p() / theta
}

fn frailty(g: Generator, rng: &mut Stream) -> f64 {
    match g {
        Generator::Clayton(t) => rng.gamma(1.0 / t),
        Generator::Gumbel(t) => positive_stable(1.0 / t, rng),
        Generator::Joe(t) => sibuya(1.0 / t, rng),
        Generator::Frank(t) => logarithmic(t, rng),
    }
}

/// Positive stable variate with Laplace transform `exp(-s^α)`, 0 < α < 1.
fn positive_stable(alpha: f64, rng: &mut Stream) -> f64 {
    let theta = PI * rng.uniform();
    let w = rng.exponential();
    let ln_v = (alpha * theta).sin().ln() - theta.sin().ln() / alpha
        + (1.0 - alpha) / alpha * (((1.0 - alpha) * theta).sin().ln() - w.ln());
    ln_v.exp()
}

/// Sibuya variate with Laplace transform `1 - (1 - e^{-s})^α`.
fn sibuya(alpha: f64, rng: &mut Stream) -> f64 {
    let g1 = rng.ln_gamma_variate(alpha);
    let g2 = rng.ln_gamma_variate(1.0 - alpha);
    let hi = g1.max(g2);
    let ln_total = hi + ((g1 - hi).exp() + (g2 - hi).exp()).ln();
    // P = G1 / (G1 + G2), so ln(1 - P) = ln G2 - ln(G1 + G2)
    let ln_fail = g2 - ln_total;
    if ln_fail == 0.0 {
        return f64::MAX;
    }
    (rng.uniform().ln() / ln_fail).ceil().max(1.0)
}

/// Logarithmic series variate with parameter `p = 1 - e^{-θ}`.
fn logarithmic(theta: f64, rng: &mut Stream) -> f64 {
    let p = -(-theta).exp_m1();
    let v = rng.uniform();
    if v >= p {
        return 1.0;
    }
    let q = -(-theta * rng.uniform()).exp_m1();
    if v >= q {
        1.0
    } else if v >= q * q {
        2.0
    } else {
        (1.0 + v.ln() / q.ln()).floor()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kendall_tau(x: &[f64], y: &[f64]) -> f64 {
        let n = x.len();
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += ((x[i] - x[j]) * (y[i] - y[j])).signum();
            }
        }
        2.0 * s / (n * (n - 1)) as f64
    }

    fn tau_of(m: &CopulaModel, n: usize, seed: u64) -> f64 {
        let rows = m.sample(n, seed).unwrap();
        let x: Vec<f64> = rows.iter().map(|r| r[0]).collect();
        let y: Vec<f64> = rows.iter().map(|r| r[1]).collect();
        kendall_tau(&x, &y)
    }

    #[test]
    fn product_sampling_is_reproducible() {
        let p = CopulaModel::product(2);
        let a = p.sample(4, 1).unwrap();
        assert_eq!(a, p.sample(4, 1).unwrap());
        assert_eq!(a.len(), 4);
        assert!(a.iter().flatten().all(|&x| x > 0.0 && x < 1.0));
    }

    #[test]
    fn printed_tau_examples() {
        let g = CopulaModel::new(Family::Gumbel, 2, 2.0).unwrap();
        assert!((tau_of(&g, 5000, 7) - 0.5).abs() < 0.03);
        let j = CopulaModel::new(Family::Joe, 2, 1.0).unwrap();
        assert!(tau_of(&j, 5000, 7).abs() < 0.03);
    }

    #[test]
    fn tau_matches_known_links() {
        let cases = [
            (Family::Clayton, 2.0, 0.5),
            (Family::Joe, 2.0, 0.355_065_933_151_774),
            (Family::Frank, 5.0, 0.456_700_958_160_117),
            (Family::Frank, -2.0, -0.213_894_569_219_620),
            (Family::Fgm, 0.9, 0.2),
            (Family::Amh, 0.9, 0.278_210_576_897_070),
            (Family::Amh, -0.5, -0.099_457_315_315_653),
        ];
        for (f, t, tau) in cases {
            let m = CopulaModel::new(f, 2, t).unwrap();
            let est = tau_of(&m, 4000, 99);
            assert!((est - tau).abs() < 0.03, "{f} {t}: {est} vs {tau}");
        }
    }

    #[test]
    fn frailty_moments() {
        let mut rng = Stream::new(3);
        let theta = 2.0;
        let n = 200_000;
        let mean: f64 = (0..n).map(|_| logarithmic(theta, &mut rng)).sum::<f64>() / n as f64;
        let p = 1.0 - (-theta).exp();
        let expected = -p / ((1.0 - p) * (1.0 - p).ln());
        assert!(
            (mean - expected).abs() < 0.02 * expected,
            "{mean} vs {expected}"
        );

        // P(Sibuya = 1) = α
        let alpha = 0.4;
        let ones = (0..n).filter(|_| sibuya(alpha, &mut rng) == 1.0).count();
        assert!((ones as f64 / n as f64 - alpha).abs() < 0.005);

        // E[exp(-V)] = exp(-1) for the positive stable law
        let lt: f64 = (0..n)
            .map(|_| (-positive_stable(0.6, &mut rng)).exp())
            .sum::<f64>()
            / n as f64;
        assert!((lt - (-1f64).exp()).abs() < 0.005);
    }

    #[test]
    fn trivariate_margins_are_uniform() {
        for (f, t) in [
            (Family::Gumbel, 1.1542),
            (Family::Joe, 1.5),
            (Family::Frank, 1.3776),
            (Family::Clayton, 3.0),
        ] {
            let m = CopulaModel::new(f, 3, t).unwrap();
            let rows = m.sample(20_000, 5).unwrap();
            for col in 0..3 {
                let below =
                    rows.iter().filter(|r| r[col] <= 0.3).count() as f64 / rows.len() as f64;
                assert!((below - 0.3).abs() < 0.015, "{f} col {col}: {below}");
            }
        }
    }
}
