//! Archimedean generators `φ`, their derivatives, and derivatives of the
//! inverse generator `ψ = φ⁻¹` of any order.

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Generator {
    Clayton(f64),
    Frank(f64),
    Gumbel(f64),
    Joe(f64),
}

impl Generator {
    pub(crate) fn phi(self, u: f64) -> f64 {
        match self {
            Generator::Clayton(t) => u.powf(-t) - 1.0,
            Generator::Frank(t) => -((-t * u).exp_m1() / (-t).exp_m1()).ln(),
            Generator::Gumbel(t) => (-u.ln()).powf(t),
            Generator::Joe(t) => -(-(t * (-u).ln_1p()).exp()).ln_1p(),
        }
    }

    pub(crate) fn dphi(self, u: f64) -> f64 {
        match self {
            Generator::Clayton(t) => -t * u.powf(-t - 1.0),
            Generator::Frank(t) => t * (-t * u).exp() / (-t * u).exp_m1(),
            Generator::Gumbel(t) => -t * (-u.ln()).powf(t - 1.0) / u,
            Generator::Joe(t) => {
                let lw = t * (-u).ln_1p();
                -t * lw.exp() / ((1.0 - u) * -lw.exp_m1())
            }
        }
    }

    pub(crate) fn psi(self, s: f64) -> f64 {
        match self {
            Generator::Clayton(t) => (1.0 + s).powf(-1.0 / t),
            Generator::Frank(t) => -((-s).exp() * (-t).exp_m1()).ln_1p() / t,
            Generator::Gumbel(t) => (-s.powf(1.0 / t)).exp(),
            Generator::Joe(t) => 1.0 - (-(-s).exp_m1()).powf(1.0 / t),
        }
    }

    /// k-th derivative of ψ at `s > 0`.
    pub(crate) fn psi_deriv(self, k: usize, s: f64) -> f64 {
        if k == 0 {
            return self.psi(s);
        }
        match self {
            Generator::Clayton(t) => {
                let a = 1.0 / t;
                let rising: f64 = (0..k).map(|j| a + j as f64).product();
                sign(k) * rising * (1.0 + s).powf(-a - k as f64)
            }
            Generator::Frank(t) => {
                let z = -(-t).exp_m1() * (-s).exp();
                let one_minus_z = -(-s).exp_m1() + (-t - s).exp();
                sign(k) / t * polylog_neg(k - 1, z, one_minus_z)
            }
            Generator::Gumbel(t) => gumbel_psi_deriv(1.0 / t, k, s),
            Generator::Joe(t) => joe_psi_deriv(1.0 / t, k, s),
        }
    }
}

fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `Li_{-m}(z)` through Eulerian numbers; `one_minus_z` is passed in so the
/// caller can form it without cancellation.
fn polylog_neg(m: usize, z: f64, one_minus_z: f64) -> f64 {
    if m == 0 {
        return z / one_minus_z;
    }
    let eulerian = eulerian_row(m);
    let poly = eulerian.iter().rev().fold(0.0, |acc, &a| acc * z + a);
    z * poly / one_minus_z.powi(m as i32 + 1)
}

fn eulerian_row(m: usize) -> Vec<f64> {
    let mut row = vec![1.0];
    for n in 2..=m {
        let mut next = vec![0.0; n];
        for (j, slot) in next.iter_mut().enumerate() {
            let keep = if j < row.len() {
                (j + 1) as f64 * row[j]
            } else {
                0.0
            };
            let shift = if j >= 1 {
                (n - j) as f64 * row[j - 1]
            } else {
                0.0
            };
            *slot = keep + shift;
        }
        row = next;
    }
    row
}

/// `dᵏ/dsᵏ exp(-s^α) = exp(-s^α) Σ_j c_j s^{jα-k}`.
fn gumbel_psi_deriv(alpha: f64, k: usize, s: f64) -> f64 {
    let mut coeffs = vec![1.0];
    for order in 0..k {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (j, &c) in coeffs.iter().enumerate() {
            next[j] += c * (j as f64 * alpha - order as f64);
            next[j + 1] -= alpha * c;
        }
        coeffs = next;
    }
    let sa = s.powf(alpha);
    let ln_s = s.ln();
    let sum: f64 = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, &c)| c * ((j as f64 * alpha - k as f64) * ln_s).exp())
        .sum();
    sum * (-sa).exp()
}

/// With `x = e^{-s}`, `ψ = 1 - (1-x)^α` and every derivative is a sum of
/// terms `c_a xᵃ (1-x)^{α-a}`.
fn joe_psi_deriv(alpha: f64, k: usize, s: f64) -> f64 {
    let mut coeffs = vec![-1.0];
    for _ in 0..k {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (a, &c) in coeffs.iter().enumerate() {
            next[a] -= a as f64 * c;
            next[a + 1] += (alpha - a as f64) * c;
        }
        coeffs = next;
    }
    let ln_x = -s;
    let ln_1mx = (-(-s).exp_m1()).ln();
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(a, &c)| c * (a as f64 * ln_x + (alpha - a as f64) * ln_1mx).exp())
        .sum()
}
