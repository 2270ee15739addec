//! Central values L(1/2 + it, χ_q) for real primitive quadratic characters,
//! computed by a Gaussian-smoothed approximate functional equation, plus the
//! moment/subconvexity experiments and empirical sieve constants built on
//! top of them.

pub mod afe;
pub mod budget;
pub mod hecke;
pub mod moments;
pub mod sieve;

pub use afe::v_weight;
pub use budget::{bound_budget, c_cap_cos, BudgetCase, BudgetInput, BudgetReport};
pub use hecke::hecke_relation_check;
pub use moments::{sixth_moment, SixthMoment};
pub use sieve::{bilinear_check, large_sieve_check, BilinearOutcome, BilinearParams, SieveOutcome};

use crate::arith::{Modulus, QuadraticCharacter};
use crate::oscillatory::chebyshev::ChebModel;
use crate::oscillatory::quadrature::GaussLegendre;
use crate::special::ln_gamma;
use crate::{Error, Result};
use num_complex::Complex64;

/// One computed central value.
#[derive(Clone, Debug)]
pub struct LValuePoint {
    pub q: u64,
    pub t: f64,
    pub value: Complex64,
    pub method_error: f64,
}

/// The two-sum engine behind `dirichlet_l`, reusable across a t-grid.
pub struct LEngine {
    modulus: Modulus,
    chi: Vec<i32>,
    /// 0 for even χ (q ≡ 1 mod 4), 1 for odd.
    parity: f64,
    nodes: Vec<Complex64>,
    gl_weights: Vec<f64>,
}

impl LEngine {
    pub fn new(q: u64) -> Result<Self> {
        let modulus = Modulus::new(q)?;
        if q < 3 {
            return Err(Error::InvalidParameter(format!(
                "q = {q} has no primitive quadratic character"
            )));
        }
        let chi = QuadraticCharacter::new(modulus.clone()).table();
        let parity = if q % 4 == 1 { 0.0 } else { 1.0 };
        // Contour u = 3/4 + iw; e^{u²} kills |w| ≥ 8.5.
        let rule = GaussLegendre::new(16);
        let panels = 14usize;
        let (w_lo, w_hi) = (-8.5f64, 8.5f64);
        let h = (w_hi - w_lo) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * 16);
        let mut gl_weights = Vec::with_capacity(panels * 16);
        for p in 0..panels {
            let mid = w_lo + (p as f64 + 0.5) * h;
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                nodes.push(Complex64::new(0.75, mid + 0.5 * h * x));
                gl_weights.push(w * 0.5 * h);
            }
        }
        Ok(LEngine { modulus, chi, parity, nodes, gl_weights })
    }

    pub fn q(&self) -> u64 {
        self.modulus.q()
    }

    /// log γ(z) with γ(z) = (q/π)^{(z+a)/2} Γ((z+a)/2).
    fn ln_gamma_factor(&self, z: Complex64) -> Complex64 {
        let qf = self.modulus.q() as f64 / std::f64::consts::PI;
        let za = z + self.parity;
        za / 2.0 * qf.ln() + ln_gamma(za / 2.0)
    }

    /// Root factor γ(1-s)/γ(s); unimodular on the critical line.
    pub fn root_factor(&self, s: Complex64) -> Complex64 {
        (self.ln_gamma_factor(Complex64::new(1.0, 0.0) - s) - self.ln_gamma_factor(s)).exp()
    }

    /// Per-node coefficients of one smoothed sum: w_j e^{u²} γ(σ+u)/γ(σ) / (2π u).
    fn node_coeffs(&self, sigma: Complex64) -> Vec<Complex64> {
        let ln_g_sigma = self.ln_gamma_factor(sigma);
        self.nodes
            .iter()
            .zip(&self.gl_weights)
            .map(|(&u, &w)| {
                let g = (self.ln_gamma_factor(sigma + u) - ln_g_sigma).exp();
                (u * u).exp() * g / u * (w / (2.0 * std::f64::consts::PI))
            })
            .collect()
    }

    /// Smooth cutoff V_σ(n) = Σ_j A_j n^{-u_j}, cached as a Chebyshev model
    /// in λ = ln n (bandwidth |Im u| ≤ 8.5 per unit λ).
    fn cutoff_model(&self, coeffs: Vec<Complex64>, lambda_max: f64) -> ChebModel {
        let nodes = self.nodes.clone();
        let panels = ((lambda_max * 8.5 / 8.0).ceil() as usize).max(4);
        ChebModel::build(0.0, lambda_max, panels, move |lambda| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, &u) in coeffs.iter().zip(&nodes) {
                acc += a * (-u * lambda).exp();
            }
            acc
        })
    }

    /// L(s, χ_q) on the critical line s = 1/2 + it by two smoothed sums:
    /// L = Σ χ(n) n^{-s} V_s(n) + (γ(1-s)/γ(s)) Σ χ(n) n^{s-1} V_{1-s}(n).
    pub fn evaluate(&self, t: f64) -> LValuePoint {
        let s = Complex64::new(0.5, t);
        let one_minus_s = Complex64::new(0.5, -t);
        let lambda_max = 14.5f64;
        let v1_model = self.cutoff_model(self.node_coeffs(s), lambda_max);
        let v2_model = self.cutoff_model(self.node_coeffs(one_minus_s), lambda_max);
        let root = self.root_factor(s);
        let q = self.modulus.q();

        let mut sum1 = Complex64::new(0.0, 0.0);
        let mut sum2 = Complex64::new(0.0, 0.0);
        let mut tail = 0.0f64;
        let mut quiet = 0u32;
        let n_cap = (lambda_max.exp() - 3.0) as u64;
        let mut n = 0u64;
        loop {
            n += 1;
            if n > n_cap {
                break;
            }
            let nf = n as f64;
            let ln_n = nf.ln();
            let v1 = v1_model.eval(ln_n);
            let v2 = v2_model.eval(ln_n);
            let size = v1.norm().max(v2.norm());
            let chi = self.chi[(n % q) as usize];
            if chi != 0 {
                let term1 = (-s * ln_n).exp() * v1;
                let term2 = ((s - 1.0) * ln_n).exp() * v2;
                sum1 += term1 * chi as f64;
                sum2 += term2 * chi as f64;
            }
            if size * nf.sqrt() < 1e-11 {
                quiet += 1;
                if quiet >= 3 {
                    tail = size * nf.sqrt();
                    break;
                }
            } else {
                quiet = 0;
            }
        }

        let value = sum1 + root * sum2;
        LValuePoint {
            q,
            t,
            value,
            method_error: 10.0 * tail + 1e-13 * value.norm().max(1.0),
        }
    }

    /// Completed value Λ(s) = γ(s) L(s); symmetric under s → 1-s.
    pub fn completed(&self, t: f64) -> Complex64 {
        let s = Complex64::new(0.5, t);
        self.ln_gamma_factor(s).exp() * self.evaluate(t).value
    }

    /// |Λ(1/2+it) - Λ(1/2-it)| / |Λ(1/2+it)|, both sides computed
    /// independently through their own smoothed sums.
    pub fn functional_equation_residual(&self, t: f64) -> f64 {
        let plus = self.completed(t);
        let minus = self.completed(-t);
        (plus - minus).norm() / plus.norm().max(1e-300)
    }
}

/// One-shot L(1/2 + it, χ_q).
pub fn dirichlet_l(q: u64, t: f64) -> Result<LValuePoint> {
    Ok(LEngine::new(q)?.evaluate(t))
}

/// |L(1/2+it, χ_q)| / ((1+|t|) q)^{1/6}.
pub fn subconvexity_ratio(q: u64, t: f64) -> Result<f64> {
    let v = dirichlet_l(q, t)?;
    Ok(v.value.norm() / ((1.0 + t.abs()) * q as f64).powf(1.0 / 6.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::FE_RESIDUAL_REL;

    #[test]
    fn rejects_trivial_modulus() {
        assert!(LEngine::new(1).is_err());
        assert!(LEngine::new(9).is_err());
    }

    #[test]
    fn brute_force_series_oracle_q5() {
        // Smoothed Dirichlet series with Gaussian cutoff at X = 1e5:
        // Σ χ(n) n^{-1/2} e^{-(n/X)²} = L(1/2) + O(X^{-2}).
        let x_cut = 1e5f64;
        let mut brute = 0.0f64;
        for n in 1..=1_000_000u64 {
            let chi = crate::arith::jacobi(n as i64, 5).unwrap();
            if chi != 0 {
                let nf = n as f64;
                brute += chi as f64 / nf.sqrt() * (-(nf / x_cut).powi(2)).exp();
            }
        }
        let l = dirichlet_l(5, 0.0).unwrap();
        assert!(l.value.im.abs() < 1e-10, "central value of a real even character is real");
        assert!(
            (l.value.re - brute).abs() < 1e-6,
            "AFE {} vs series {brute}",
            l.value.re
        );
    }

    #[test]
    fn conjugate_symmetry() {
        let engine = LEngine::new(13).unwrap();
        for t in [0.5, 3.0, 17.0] {
            let plus = engine.evaluate(t).value;
            let minus = engine.evaluate(-t).value;
            assert!(
                (plus.norm() - minus.norm()).abs() < 1e-8 * plus.norm().max(1.0),
                "t = {t}"
            );
            assert!((plus - minus.conj()).norm() < 1e-8 * plus.norm().max(1.0));
        }
    }

    #[test]
    fn functional_equation_residual_small() {
        for q in [5u64, 13] {
            let engine = LEngine::new(q).unwrap();
            for t in [0.0, 10.0] {
                let r = engine.functional_equation_residual(t);
                assert!(r <= FE_RESIDUAL_REL, "q={q} t={t}: residual {r}");
            }
        }
    }

    #[test]
    fn subconvexity_ratio_definition() {
        let r = subconvexity_ratio(5, 0.0).unwrap();
        let l = dirichlet_l(5, 0.0).unwrap();
        assert!((r - l.value.norm() / 5f64.powf(1.0 / 6.0)).abs() < 1e-12);
    }
}
