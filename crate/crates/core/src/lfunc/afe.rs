//! The approximate-functional-equation weight
//!
//!   V_r(y) = (1/2πi) ∫_(1) [Γ((1/2+s+ir)/2) Γ((1/2+s-ir)/2)
//!            / (Γ((1/2+ir)/2) Γ((1/2-ir)/2))] e^{s²} (πy)^{-s} ds/s,
//!
//! with the Gaussian choice G(s) = e^{s²} (even, G(0) = 1), and its
//! leading large-r simplification where the Gamma ratio is replaced by
//! (r/2)^s.

use crate::oscillatory::quadrature::GaussLegendre;
use crate::special::ln_gamma;
use crate::Result;
use num_complex::Complex64;

fn contour_nodes(freq: f64) -> (Vec<Complex64>, Vec<f64>) {
    // s = 1 + iw, |w| ≤ 30 (e^{s²} has modulus e^{1-w²}); panels resolve
    // the vertical oscillation rate of the integrand.
    let rule = GaussLegendre::new(16);
    let panels = ((60.0 * freq / 10.0).ceil() as usize).max(24);
    let (lo, hi) = (-30.0f64, 30.0f64);
    let h = (hi - lo) / panels as f64;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * h;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            nodes.push(Complex64::new(1.0, mid + 0.5 * h * x));
            weights.push(w * 0.5 * h);
        }
    }
    (nodes, weights)
}

/// V_r(y) with the exact Gamma-ratio integrand, in log space.
pub fn v_weight(r: f64, y: f64) -> Result<Complex64> {
    assert!(r > 0.0 && y > 0.0);
    let freq = (std::f64::consts::PI * y).ln().abs() + (0.5 * r).max(1.0).ln();
    let (nodes, weights) = contour_nodes(freq);
    let half_ir = Complex64::new(0.0, r / 2.0);
    let base = ln_gamma(Complex64::new(0.25, 0.0) + half_ir)
        + ln_gamma(Complex64::new(0.25, 0.0) - half_ir);
    let ln_py = (std::f64::consts::PI * y).ln();
    let mut acc = Complex64::new(0.0, 0.0);
    for (&s, &w) in nodes.iter().zip(&weights) {
        let ratio = (ln_gamma((Complex64::new(0.5, 0.0) + s + 2.0 * half_ir) / 2.0)
            + ln_gamma((Complex64::new(0.5, 0.0) + s - 2.0 * half_ir) / 2.0)
            - base)
            .exp();
        acc += ratio * (s * s - s * ln_py).exp() / s * w;
    }
    Ok(acc / (2.0 * std::f64::consts::PI))
}

/// Leading term of the large-r expansion: the same contour integral with
/// the Gamma ratio replaced by (r/2)^s, i.e. ∫ e^{s²} (r/(2πy))^s ds/(2πi s).
pub fn v_weight_leading(r: f64, y: f64) -> Complex64 {
    let ln_arg = (r / (2.0 * std::f64::consts::PI * y)).ln();
    let (nodes, weights) = contour_nodes(ln_arg.abs() + 1.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (&s, &w) in nodes.iter().zip(&weights) {
        acc += (s * s + s * ln_arg).exp() / s * w;
    }
    acc / (2.0 * std::f64::consts::PI)
}
