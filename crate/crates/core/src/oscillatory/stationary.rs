//! Stationary-phase oracles: the 1-d integral ∫ w(t) e^{iφ(t)} dt against
//! its leading-order prediction, and the 2-d integral with phase
//! -α/(t₁t₂) - βt₁ - γt₂ against its predicted magnitude and phase
//! e(-3(αβγ)^{1/3}).

use super::quadrature::{integrate_complex, panels_for_phase};
use super::window::SmoothWeight;
use crate::special::cis;
use crate::Result;
use num_complex::Complex64;

/// A phase function with two derivatives.
pub trait Phase {
    fn phi(&self, t: f64) -> f64;
    fn dphi(&self, t: f64) -> f64;
    fn d2phi(&self, t: f64) -> f64;
}

/// Linear phase λt.
pub struct LinearPhase(pub f64);

impl Phase for LinearPhase {
    fn phi(&self, t: f64) -> f64 {
        self.0 * t
    }
    fn dphi(&self, _: f64) -> f64 {
        self.0
    }
    fn d2phi(&self, _: f64) -> f64 {
        0.0
    }
}

/// Quadratic phase Y (t/X - center)².
pub struct QuadraticPhase {
    pub y: f64,
    pub x: f64,
    pub center: f64,
}

impl Phase for QuadraticPhase {
    fn phi(&self, t: f64) -> f64 {
        self.y * (t / self.x - self.center).powi(2)
    }
    fn dphi(&self, t: f64) -> f64 {
        2.0 * self.y * (t / self.x - self.center) / self.x
    }
    fn d2phi(&self, _: f64) -> f64 {
        2.0 * self.y / (self.x * self.x)
    }
}

/// What the critical-point scan found on the support.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Stationarity {
    None,
    Unique { t0: f64 },
    Multiple { count: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct SpOutcome {
    pub quadrature: Complex64,
    pub prediction: Complex64,
    pub rel_err: f64,
    pub stationarity: Stationarity,
}

/// Adaptive quadrature of ∫ w e^{iφ} next to the first-order prediction
/// w(t₀) √(2π/|φ''(t₀)|) e^{i(φ(t₀) ± π/4)} at the unique critical point.
/// Zero or multiple critical points are reported, with prediction 0.
pub fn stationary_phase_1d(weight: &SmoothWeight, phase: &dyn Phase) -> Result<SpOutcome> {
    let (a, b) = weight.support();

    // Scan for zeros of φ' and accumulate a phase budget.  Exact zeros at
    // grid points are taken as-is; a minimum separation keeps one root from
    // being counted twice.
    let grid = 1024usize;
    let min_sep = 1.5 * (b - a) / grid as f64;
    let mut roots: Vec<f64> = Vec::new();
    let push_root = |roots: &mut Vec<f64>, t: f64| {
        if roots.last().is_none_or(|&r| (t - r).abs() > min_sep) {
            roots.push(t);
        }
    };
    let mut budget = 0.0f64;
    let mut prev_t = a;
    let mut prev_d = phase.dphi(a);
    if prev_d == 0.0 {
        push_root(&mut roots, a);
    }
    for i in 1..=grid {
        let t = a + (b - a) * i as f64 / grid as f64;
        let d = phase.dphi(t);
        budget += 0.5 * (d.abs() + prev_d.abs()) * (t - prev_t);
        if d == 0.0 {
            push_root(&mut roots, t);
        } else if prev_d != 0.0 && (prev_d < 0.0) != (d < 0.0) {
            let (mut lo, mut hi) = (prev_t, t);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let dm = phase.dphi(mid);
                if dm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (phase.dphi(lo) < 0.0) != (dm < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            push_root(&mut roots, 0.5 * (lo + hi));
        }
        prev_t = t;
        prev_d = d;
    }

    let stationarity = match roots.len() {
        0 => Stationarity::None,
        1 => Stationarity::Unique { t0: roots[0] },
        n => Stationarity::Multiple { count: n },
    };

    let quadrature = integrate_complex(
        |t| cis(phase.phi(t)) * weight.eval(t),
        a,
        b,
        panels_for_phase(budget + 40.0),
        1e-11 * weight.scale(),
    )?;

    let prediction = match stationarity {
        Stationarity::Unique { t0 } => {
            let d2 = phase.d2phi(t0);
            if d2 == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                let amp = weight.eval(t0) * (2.0 * std::f64::consts::PI / d2.abs()).sqrt();
                cis(phase.phi(t0) + d2.signum() * std::f64::consts::FRAC_PI_4) * amp
            }
        }
        _ => Complex64::new(0.0, 0.0),
    };

    let rel_err = if prediction.norm() > 0.0 {
        (quadrature - prediction).norm() / prediction.norm()
    } else {
        f64::NAN
    };

    Ok(SpOutcome { quadrature, prediction, rel_err, stationarity })
}

/// Parameters of the double oscillatory integral
/// ∬ f₁(t₁) f₂(t₂) e(-α/(t₁t₂) - βt₁ - γt₂) dt₁ dt₂.
#[derive(Clone, Copy, Debug)]
pub struct DoubleOscParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub x1: f64,
    pub x2: f64,
    /// Oscillation scale X in the size hypotheses.
    pub x: f64,
}

impl DoubleOscParams {
    /// The three size hypotheses |α|/(X₁X₂) ≫ X, |β|X₁ ≫ X, |γ|X₂ ≫ X,
    /// with "≫" read as ≥.
    pub fn size_hypotheses(&self) -> [bool; 3] {
        [
            self.alpha.abs() / (self.x1 * self.x2) >= self.x,
            self.beta.abs() * self.x1 >= self.x,
            self.gamma.abs() * self.x2 >= self.x,
        ]
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DoubleOscOutcome {
    pub quadrature: Complex64,
    /// √(X₁X₂ / |βγ|).
    pub predicted_mag: f64,
    /// Total variation of arg(I · e(3(αβγ)^{1/3})) over a ±5% sweep of α.
    pub phase_residual: f64,
}

fn e_tau(y: f64) -> Complex64 {
    cis(2.0 * std::f64::consts::PI * y)
}

/// Fixed tensor-product grid: composite GL-24 panels holding ≤ 28 rad of
/// worst-case phase per axis, summed in parallel over t₁ lines, validated
/// by one 1.3× refinement.
fn double_integral(p: &DoubleOscParams, f1: &SmoothWeight, f2: &SmoothWeight) -> Result<Complex64> {
    use rayon::prelude::*;
    let (a1, b1) = f1.support();
    let (a2, b2) = f2.support();
    let two_pi = 2.0 * std::f64::consts::PI;
    let budget1 = two_pi * (p.alpha.abs() / (a1 * a1 * a2) + p.beta.abs()) * (b1 - a1);
    let budget2 = two_pi * (p.alpha.abs() / (a2 * a2 * a1) + p.gamma.abs()) * (b2 - a2);
    let scale = p.x1 * p.x2;

    let rule = super::quadrature::GaussLegendre::new(24);
    let grid = |refine: f64| -> Complex64 {
        let make = |a: f64, b: f64, budget: f64, w: &SmoothWeight| {
            let panels = (((budget + 40.0) / 28.0).ceil() * refine).ceil().max(2.0) as usize;
            let h = (b - a) / panels as f64;
            let mut nodes = Vec::with_capacity(panels * 24);
            let mut weights = Vec::with_capacity(panels * 24);
            for pnl in 0..panels {
                let mid = a + (pnl as f64 + 0.5) * h;
                for (x, gw) in rule.nodes.iter().zip(&rule.weights) {
                    let t = mid + 0.5 * h * x;
                    nodes.push(t);
                    weights.push(gw * 0.5 * h * w.eval(t));
                }
            }
            (nodes, weights)
        };
        let (t1s, w1s) = make(a1, b1, budget1, f1);
        let (t2s, w2s) = make(a2, b2, budget2, f2);
        t1s.par_iter()
            .zip(&w1s)
            .map(|(&t1, &w1)| {
                if w1 == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let carrier = e_tau(-p.beta * t1);
                let mut acc = Complex64::new(0.0, 0.0);
                for (&t2, &w2) in t2s.iter().zip(&w2s) {
                    if w2 != 0.0 {
                        acc += e_tau(-p.alpha / (t1 * t2) - p.gamma * t2) * w2;
                    }
                }
                acc * carrier * w1
            })
            .reduce(|| Complex64::new(0.0, 0.0), |a, b| a + b)
    };

    let coarse = grid(1.0);
    let fine = grid(1.3);
    if (coarse - fine).norm() > 1e-7 * scale / p.x.max(1.0) {
        let finer = grid(1.7);
        if (fine - finer).norm() > 1e-7 * scale / p.x.max(1.0) {
            return Err(crate::Error::QuadratureNonConvergence(format!(
                "2-d grid drift {:.3e}",
                (fine - finer).norm()
            )));
        }
        return Ok(finer);
    }
    Ok(fine)
}

/// Quadrature, predicted magnitude, and phase residual for the double
/// oscillatory integral; the residual sweeps α over ±5% and accumulates
/// the drift of the corrected phase arg(I · e(3(αβγ)^{1/3})).
pub fn double_oscillatory(
    p: &DoubleOscParams,
    f1: &SmoothWeight,
    f2: &SmoothWeight,
) -> Result<DoubleOscOutcome> {
    let quadrature = double_integral(p, f1, f2)?;
    let predicted_mag = (p.x1 * p.x2 / (p.beta * p.gamma).abs()).sqrt();

    let mut args = Vec::new();
    for step in -2..=2 {
        let alpha = p.alpha * (1.0 + 0.025 * step as f64);
        let sweep = DoubleOscParams { alpha, ..*p };
        let val = if step == 0 { quadrature } else { double_integral(&sweep, f1, f2)? };
        let corrected = val * e_tau(3.0 * (alpha * p.beta * p.gamma).cbrt());
        args.push(corrected.arg());
    }
    let mut residual = 0.0;
    for pair in args.windows(2) {
        let mut d = pair[1] - pair[0];
        while d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        }
        while d < -std::f64::consts::PI {
            d += 2.0 * std::f64::consts::PI;
        }
        residual += d.abs();
    }

    Ok(DoubleOscOutcome { quadrature, predicted_mag, phase_residual: residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::{SP_NONSTATIONARY_OVER_X, SP_RELERR_FACTOR};

    #[test]
    fn linear_phase_is_negligible() {
        // |λ| X = Y = 10³ with X = 10.
        let x = 10.0;
        let w = SmoothWeight::new(x).unwrap();
        let out = stationary_phase_1d(&w, &LinearPhase(100.0)).unwrap();
        assert_eq!(out.stationarity, Stationarity::None);
        assert!(
            out.quadrature.norm() <= SP_NONSTATIONARY_OVER_X * x,
            "|I| = {}",
            out.quadrature.norm()
        );
    }

    #[test]
    fn quadratic_phase_first_order_rate() {
        let x = 10.0;
        let w = SmoothWeight::new(x).unwrap();
        let mut errs = Vec::new();
        for y in [1e2, 1e3, 1e4] {
            let phase = QuadraticPhase { y, x, center: 1.5 };
            let out = stationary_phase_1d(&w, &phase).unwrap();
            assert!(matches!(out.stationarity, Stationarity::Unique { .. }));
            assert!(
                out.rel_err <= SP_RELERR_FACTOR / y,
                "Y = {y}: rel_err = {}",
                out.rel_err
            );
            errs.push(out.rel_err);
        }
        // Y growing by 10² (10² → 10⁴) shrinks rel_err by ≈ 10² (within 3×).
        let ratio = errs[0] / errs[2];
        assert!((100.0 / 3.0..=300.0).contains(&ratio), "rate ratio {ratio}");
    }

    #[test]
    fn multiple_critical_points_are_reported() {
        struct Wiggle;
        impl Phase for Wiggle {
            fn phi(&self, t: f64) -> f64 {
                (t).sin() * 50.0
            }
            fn dphi(&self, t: f64) -> f64 {
                t.cos() * 50.0
            }
            fn d2phi(&self, t: f64) -> f64 {
                -t.sin() * 50.0
            }
        }
        let w = SmoothWeight::new(4.0).unwrap();
        let out = stationary_phase_1d(&w, &Wiggle).unwrap();
        assert!(matches!(out.stationarity, Stationarity::Multiple { .. }));
        assert_eq!(out.prediction, Complex64::new(0.0, 0.0));
    }

    /// Admissible same-sign configuration: stationary point centered in
    /// both supports, with α large enough that all three size hypotheses
    /// hold (β X₁ = α X₁/(t₂t₁²) needs α ≥ 3.05 X X₁X₂).
    fn admissible(x: f64) -> DoubleOscParams {
        let x1 = 8.0 * x;
        let x2 = 8.0 * x;
        let t1 = 1.45 * x1;
        let t2 = 1.45 * x2;
        let alpha = 4.0 * x * x1 * x2;
        DoubleOscParams {
            alpha,
            beta: alpha / (t2 * t1 * t1),
            gamma: alpha / (t1 * t2 * t2),
            x1,
            x2,
            x,
        }
    }

    #[test]
    fn double_oscillatory_admissible_magnitude_and_phase() {
        let p = admissible(250.0);
        assert_eq!(p.size_hypotheses(), [true, true, true]);
        let f1 = SmoothWeight::new(p.x1).unwrap();
        let f2 = SmoothWeight::new(p.x2).unwrap();
        let out = double_oscillatory(&p, &f1, &f2).unwrap();
        let ratio = out.quadrature.norm() / out.predicted_mag;
        assert!(
            (0.02..=50.0).contains(&ratio),
            "|I|/pred = {ratio}, |I| = {}",
            out.quadrature.norm()
        );
        assert!(out.phase_residual <= 0.2, "phase residual {}", out.phase_residual);
    }

    #[test]
    fn double_oscillatory_mixed_sign_is_small() {
        let mut p = admissible(250.0);
        p.gamma = -p.gamma;
        let f1 = SmoothWeight::new(p.x1).unwrap();
        let f2 = SmoothWeight::new(p.x2).unwrap();
        let out = double_integral(&p, &f1, &f2).unwrap();
        assert!(
            out.norm() <= 1e-6 * p.x1 * p.x2 / p.x,
            "mixed-sign |I| = {}",
            out.norm()
        );
    }

    #[test]
    fn double_oscillatory_support_violation_is_small() {
        // α/β far from X₁²X₂ pushes the t₁ critical point off the support.
        let mut p = admissible(250.0);
        p.beta *= 30.0;
        let f1 = SmoothWeight::new(p.x1).unwrap();
        let f2 = SmoothWeight::new(p.x2).unwrap();
        let out = double_integral(&p, &f1, &f2).unwrap();
        assert!(
            out.norm() <= 1e-6 * p.x1 * p.x2 / p.x,
            "off-support |I| = {}",
            out.norm()
        );
    }
}
