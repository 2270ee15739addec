//! The spectral kernel transforms.
//!
//! B⁺ and B⁻ are defined here by their hyperbolic integral representations
//!
//!   B⁺(x) = ∫ cos(x cosh v) ρ(v) dv,    B⁻(x) = ∫ cos(x sinh v) ρ(v) dv,
//!
//! where ρ(v) = (4/π²) ∫₀^∞ r h(r) tanh(πr) e(rv/π) dr is the Fourier
//! profile of the window; this route avoids Bessel functions of complex
//! order entirely.  B₀ is the unified one-phase model
//!
//!   B₀(x) = ∫ e^{i x φ(v)} ρ(v) dv,   φ ∈ ±{cos, cosh, sin, sinh},
//!
//! with ρ either derived from h (faithful) or a Gaussian model (fast).
//! B^holo is a short sum of integer-order Bessel J over one weight window,
//! with an independent oscillatory-integral evaluation path.

use super::chebyshev::ChebModel;
use super::quadrature::{integrate_complex, panels_for_phase};
use super::window::{plateau_bump, sech, SpectralWindow};
use crate::special::{bessel_j_upto, cis};
use crate::tolerances::KERNEL_ABS_TOL_OVER_DT;
use crate::Result;
use num_complex::Complex64;

/// Shape of the unified phase φ(v).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiKind {
    Cos,
    Cosh,
    Sin,
    Sinh,
}

impl PhiKind {
    #[inline]
    pub fn eval(self, v: f64) -> f64 {
        match self {
            PhiKind::Cos => v.cos(),
            PhiKind::Cosh => v.cosh(),
            PhiKind::Sin => v.sin(),
            PhiKind::Sinh => v.sinh(),
        }
    }

    /// max φ - min φ over [-v_cut, v_cut].
    fn span(self, v_cut: f64) -> f64 {
        match self {
            PhiKind::Cos | PhiKind::Sin => 2.0,
            PhiKind::Cosh => v_cut.cosh() - 1.0,
            PhiKind::Sinh => 2.0 * v_cut.sinh(),
        }
    }

    /// Hyperbolic/circular family switch for the envelope scales.
    pub fn is_cosine_family(self) -> bool {
        matches!(self, PhiKind::Cos | PhiKind::Cosh)
    }
}

/// Which profile backs ρ(v).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// ρ from the numerically evaluated r-integral of the window.
    DerivedFromH,
    /// ρ(v) = ΔT e^{2iTv} e^{-(Δv)²}.
    GaussianModel,
}

/// Which transform a caller wants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelKind {
    BPlus,
    BMinus,
    BHolo,
    B0,
}

/// Full kernel selection: transform, phase (with sign), profile, and the
/// holomorphic parity class a mod 4.
#[derive(Clone, Copy, Debug)]
pub struct KernelSpec {
    pub kind: KernelKind,
    pub phi: PhiKind,
    pub phi_sign: f64,
    pub profile: Profile,
    pub parity: u8,
}

impl KernelSpec {
    pub fn b0(phi: PhiKind, phi_sign: f64, profile: Profile) -> Self {
        KernelSpec { kind: KernelKind::B0, phi, phi_sign, profile, parity: 0 }
    }
}

/// Evaluator for B⁺, B⁻, B₀ at one window/profile; the derived profile is
/// cached as a piecewise-Chebyshev model of the slow factor
/// ĝ(v) = e^{-2iTv} ρ(v).
pub struct KernelEvaluator {
    window: SpectralWindow,
    profile: Profile,
    v_cut: f64,
    model: Option<ChebModel>,
    abs_tol: f64,
}

impl KernelEvaluator {
    pub fn new(window: SpectralWindow, profile: Profile) -> Result<Self> {
        let delta = window.delta();
        let v_cut = match profile {
            // sech(πΔv) and e^{-(Δv)²} tails below ~1e-17 of peak.
            Profile::DerivedFromH => 14.0 / delta,
            Profile::GaussianModel => 6.5 / delta,
        }
        .min(40.0 / delta);
        let abs_tol = KERNEL_ABS_TOL_OVER_DT * window.scale();
        let model = match profile {
            Profile::GaussianModel => None,
            Profile::DerivedFromH => {
                // Bandwidth of ĝ is 2Δ·u_max ≈ 80Δ rad per unit v; panels of
                // 0.1/Δ keep ≤ 8 rad each.
                let panels = (v_cut * delta / 0.1).ceil() as usize;
                Some(ChebModel::build(0.0, v_cut, panels, |v| {
                    g_hat_direct(&window, v)
                }))
            }
        };
        Ok(KernelEvaluator { window, profile, v_cut, model, abs_tol })
    }

    pub fn window(&self) -> &SpectralWindow {
        &self.window
    }

    pub fn v_cut(&self) -> f64 {
        self.v_cut
    }

    /// ρ(v) = e^{2iTv} ĝ(v).
    pub fn rho(&self, v: f64) -> Complex64 {
        let t = self.window.t_center();
        let carrier = cis(2.0 * t * v);
        match self.profile {
            Profile::GaussianModel => {
                let y = self.window.delta() * v;
                carrier * self.window.scale() * (-y * y).exp()
            }
            Profile::DerivedFromH => {
                let model = self.model.as_ref().expect("derived profile has a model");
                let g = model.eval(v.abs());
                carrier * if v >= 0.0 { g } else { g.conj() }
            }
        }
    }

    fn phase_budget(&self, x: f64, phi: PhiKind) -> f64 {
        x.abs() * phi.span(self.v_cut) + 4.0 * self.window.t_center() * self.v_cut + 40.0
    }

    /// B₀(x) = ∫ e^{i x s φ(v)} ρ(v) dv over |v| ≤ v_cut.
    pub fn b0(&self, x: f64, phi: PhiKind, phi_sign: f64) -> Result<Complex64> {
        let panels = panels_for_phase(self.phase_budget(x, phi));
        integrate_complex(
            |v| cis(x * phi_sign * phi.eval(v)) * self.rho(v),
            -self.v_cut,
            self.v_cut,
            panels,
            self.abs_tol,
        )
    }

    /// B⁺(x) = ∫ cos(x cosh v) ρ(v) dv; real for x > 0.
    pub fn bplus(&self, x: f64) -> Result<f64> {
        let panels = panels_for_phase(self.phase_budget(x, PhiKind::Cosh));
        let z = integrate_complex(
            |v| self.rho(v) * (x * v.cosh()).cos(),
            -self.v_cut,
            self.v_cut,
            panels,
            self.abs_tol,
        )?;
        debug_assert!(z.im.abs() <= 100.0 * self.abs_tol, "B⁺ imaginary residue {}", z.im);
        Ok(z.re)
    }

    /// B⁻(x) = ∫ cos(x sinh v) ρ(v) dv; real.
    pub fn bminus(&self, x: f64) -> Result<f64> {
        let panels = panels_for_phase(self.phase_budget(x, PhiKind::Sinh));
        let z = integrate_complex(
            |v| self.rho(v) * (x * v.sinh()).cos(),
            -self.v_cut,
            self.v_cut,
            panels,
            self.abs_tol,
        )?;
        debug_assert!(z.im.abs() <= 100.0 * self.abs_tol, "B⁻ imaginary residue {}", z.im);
        Ok(z.re)
    }
}

/// ĝ(v) by direct quadrature of the window transform with r = T + Δu:
/// (4Δ/π²) ∫ (T+Δu)(sech u + sech(u + 2T/Δ)) tanh(π(T+Δu)) e^{2iΔuv} du.
fn g_hat_direct(window: &SpectralWindow, v: f64) -> Complex64 {
    let t = window.t_center();
    let delta = window.delta();
    let u_lo = (-t / delta).max(-40.0);
    let u_hi = 40.0;
    let freq = 2.0 * delta * v;
    let panels = panels_for_phase(freq.abs() * (u_hi - u_lo) + 20.0);
    let val = integrate_complex(
        |u| {
            let r = t + delta * u;
            let weight = (sech(u) + sech(u + 2.0 * t / delta)) * r * (std::f64::consts::PI * r).tanh();
            cis(freq * u) * weight
        },
        u_lo,
        u_hi,
        panels,
        1e-13 * window.scale(),
    )
    .expect("profile integrand is Schwartz-tailed");
    val * 4.0 * delta / (std::f64::consts::PI * std::f64::consts::PI)
}

/// B^holo(x) = Σ_{k ≡ a (4)} k h(k) J_{k-1}(x) with h(k) = plateau
/// bump((k-T)/Δ); direct Bessel-sum path.
pub fn bholo_bessel(x: f64, window: &SpectralWindow, parity: u8) -> f64 {
    if x == 0.0 {
        return 0.0; // J_{k-1}(0) = 0 for every k ≥ 2 in the window
    }
    let (t, delta) = (window.t_center(), window.delta());
    let k_lo = (t + delta / 2.0).ceil() as u64;
    let k_hi = (t + 3.0 * delta).floor() as u64;
    let j = bessel_j_upto((k_hi as usize).saturating_sub(1), x);
    let mut total = 0.0;
    for k in k_lo..=k_hi {
        if k % 4 != parity as u64 % 4 {
            continue;
        }
        let h = plateau_bump((k as f64 - t) / delta);
        if h != 0.0 {
            total += k as f64 * h * j[(k - 1) as usize];
        }
    }
    total
}

/// Independent path: the same sum through the integral representation
/// J_{k-1}(x) = (1/2π) ∫ e^{i(x sin θ - (k-1)θ)} dθ, evaluated as one
/// oscillatory θ-integral against the finite exponential sum over k.
/// The trapezoid rule is spectrally exact for this periodic integrand.
pub fn bholo_integral(x: f64, window: &SpectralWindow, parity: u8) -> Complex64 {
    let (t, delta) = (window.t_center(), window.delta());
    let k_lo = (t + delta / 2.0).ceil() as u64;
    let k_hi = (t + 3.0 * delta).floor() as u64;
    let terms: Vec<(f64, f64)> = (k_lo..=k_hi)
        .filter(|k| k % 4 == parity as u64 % 4)
        .map(|k| (k as f64, k as f64 * plateau_bump((k as f64 - t) / delta)))
        .filter(|&(_, w)| w != 0.0)
        .collect();
    let n = (2.0 * (x.abs() + t + 3.0 * delta)).ceil() as usize + 64;
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let theta = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * j as f64 / n as f64;
        let mut d = Complex64::new(0.0, 0.0);
        for &(k, w) in &terms {
            d += cis(-(k - 1.0) * theta) * w;
        }
        total += cis(x * theta.sin()) * d;
    }
    total / n as f64
}

/// |Φ(x)| for the stationary-phase envelope of the K-transform:
///
///   Φ(x) = ∫ e(vT/π) g(Δv) e(x(±1 - φ(v)⁻²)) w₆(v) dv,
///
/// with g Gaussian, + for the cos/cosh family and - for sin/sinh, and w₆
/// equal to 1 (cos/cosh) or a dyadic bump around the stationary scale
/// v₀ = (x/T)^{1/3} (sin/sinh, where v = 0 is singular).
pub fn phi_envelope(x: f64, phi: PhiKind, window: &SpectralWindow) -> Result<f64> {
    let t = window.t_center();
    let delta = window.delta();
    let v_cut = 6.5 / delta;
    let two_pi = 2.0 * std::f64::consts::PI;
    let sign = if phi.is_cosine_family() { 1.0 } else { -1.0 };
    let (v_lo, v_hi, bump_center): (f64, f64, Option<f64>) = if phi.is_cosine_family() {
        (-v_cut, v_cut, None)
    } else {
        let v0 = (x / t).powf(1.0 / 3.0);
        (v0 / 2.0, (2.0 * v0).min(v_cut), Some(v0))
    };
    let weight = |v: f64| -> f64 {
        match bump_center {
            None => 1.0,
            Some(v0) => {
                // Smooth bump on [v0/2, 2v0] peaking at v0.
                let z = (v.abs() - v0) / (0.75 * v0);
                if z.abs() >= 1.0 {
                    0.0
                } else {
                    (1.0 - 1.0 / (1.0 - z * z)).exp()
                }
            }
        }
    };
    let integrand = |v: f64| -> Complex64 {
        let w6 = weight(v);
        if w6 == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let p = phi.eval(v);
        let y = delta * v;
        cis(2.0 * t * v) * (-y * y).exp() * cis(two_pi * x * (sign - 1.0 / (p * p))) * w6
    };
    let min_v = bump_center.map(|v0| v0 / 2.0).unwrap_or(1e-2);
    let budget = two_pi * x.abs() * (1.0 + 1.0 / (min_v * min_v)) + 4.0 * t * v_cut + 40.0;
    let one_side = integrate_complex(
        integrand,
        v_lo,
        v_hi,
        panels_for_phase(budget),
        KERNEL_ABS_TOL_OVER_DT * window.scale(),
    )?;
    let total = if phi.is_cosine_family() {
        one_side
    } else {
        // Mirror side v < 0 contributes the conjugate structure.
        let other = integrate_complex(
            integrand,
            -v_hi,
            -v_lo,
            panels_for_phase(budget),
            KERNEL_ABS_TOL_OVER_DT * window.scale(),
        )?;
        one_side + other
    };
    Ok(total.norm())
}

/// The Mellin length U of the envelope: T²/X for cos/cosh and X^{1/3}T^{2/3}
/// for sin/sinh.
pub fn envelope_mellin_length(x: f64, phi: PhiKind, window: &SpectralWindow) -> f64 {
    let t = window.t_center();
    if phi.is_cosine_family() {
        t * t / x
    } else {
        x.powf(1.0 / 3.0) * t.powf(2.0 / 3.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillatory::quadrature::integrate_complex as raw_integrate;

    fn window() -> SpectralWindow {
        SpectralWindow::new(200.0, 4.0).unwrap()
    }

    #[test]
    fn derived_profile_matches_direct_quadrature() {
        let w = window();
        let ev = KernelEvaluator::new(w, Profile::DerivedFromH).unwrap();
        for v in [0.0, 0.37, 1.2, 2.9, -1.7] {
            let cached = ev.rho(v);
            let direct = g_hat_direct(&w, v) * cis(2.0 * w.t_center() * v);
            assert!(
                (cached - direct).norm() < 1e-9 * w.scale(),
                "v = {v}: {cached} vs {direct}"
            );
        }
    }

    #[test]
    fn profile_peak_scale() {
        // ρ(0) ≈ (4/π) ΔT for the derived profile (the sech transform has
        // mass π Δ and the r weight contributes T).
        let w = window();
        let ev = KernelEvaluator::new(w, Profile::DerivedFromH).unwrap();
        let expect = 4.0 / std::f64::consts::PI * w.scale();
        let got = ev.rho(0.0).re;
        assert!((got - expect).abs() < 0.01 * expect, "{got} vs {expect}");
    }

    #[test]
    fn bplus_small_argument_region_is_tiny() {
        // Support starts near x ≍ ΔT; x = ΔT/20 sits far below it.
        let w = window();
        let ev = KernelEvaluator::new(w, Profile::DerivedFromH).unwrap();
        let x = w.scale() / 20.0;
        let v = ev.bplus(x).unwrap();
        assert!(v.abs() <= 1e-6 * w.scale(), "B⁺({x}) = {v}");
    }

    #[test]
    fn bminus_support_concentration() {
        let w = window();
        let ev = KernelEvaluator::new(w, Profile::DerivedFromH).unwrap();
        let t = w.t_center();
        for x in [t / 100.0, 100.0 * t] {
            let v = ev.bminus(x).unwrap();
            assert!(v.abs() <= 1e-6 * w.scale(), "B⁻({x}) = {v}");
        }
        // And it is alive somewhere on x ≍ T.
        let mid = ev.bminus(1.8 * t).unwrap();
        assert!(mid.abs() > 1e-4 * w.scale(), "B⁻ near 2T = {mid}");
    }

    #[test]
    fn b0_cosh_halves_average_to_bplus() {
        // cos(x cosh v) = (e^{ix cosh v} + e^{-ix cosh v})/2 pointwise, so
        // the two signed B₀ evaluations must average to B⁺.
        let w = window();
        let ev = KernelEvaluator::new(w, Profile::DerivedFromH).unwrap();
        for x in [0.6 * w.scale(), 1.3 * w.scale()] {
            let plus = ev.b0(x, PhiKind::Cosh, 1.0).unwrap();
            let minus = ev.b0(x, PhiKind::Cosh, -1.0).unwrap();
            let avg = 0.5 * (plus + minus);
            let direct = ev.bplus(x).unwrap();
            assert!(
                (avg.re - direct).abs() < 1e-6 * w.scale(),
                "x={x}: {} vs {direct}",
                avg.re
            );
            assert!(avg.im.abs() < 1e-6 * w.scale());
        }
    }

    #[test]
    fn b0_gaussian_at_zero_argument() {
        // ΔT ∫ e^{2iTv} e^{-(Δv)²} dv = ΔT (√π/Δ) e^{-T²/Δ²}, negligible
        // for T/Δ ≥ 50.
        let w = window();
        let ev = KernelEvaluator::new(w, Profile::GaussianModel).unwrap();
        let v = ev.b0(0.0, PhiKind::Cosh, 1.0).unwrap();
        assert!(v.norm() <= 1e-10 * w.scale(), "|B₀(0)| = {}", v.norm());
    }

    #[test]
    fn bholo_two_paths_agree() {
        let w = SpectralWindow::unchecked(40.0, 4.0);
        let dt = 160.0;
        for a in [0u8, 1, 2, 3] {
            for x in [20.0, 55.0, 90.0, 147.0, 200.0] {
                let p1 = bholo_bessel(x, &w, a);
                let p2 = bholo_integral(x, &w, a);
                assert!(p2.im.abs() < 1e-10 * dt, "imaginary part {}", p2.im);
                let denom = p1.abs().max(1e-8 * dt);
                assert!(
                    (p1 - p2.re).abs() / denom < 1e-6,
                    "a={a} x={x}: {p1} vs {}",
                    p2.re
                );
            }
        }
        assert_eq!(bholo_bessel(0.0, &w, 0), 0.0);
    }

    #[test]
    fn rho_tail_below_cut_is_negligible() {
        // Extending the integral beyond v_cut changes nothing at tolerance.
        let w = window();
        let ev = KernelEvaluator::new(w, Profile::DerivedFromH).unwrap();
        let x = w.scale();
        let inner = ev.bplus(x).unwrap();
        let outer = raw_integrate(
            |v| ev.rho(v.clamp(-ev.v_cut(), ev.v_cut())) * (x * v.cosh()).cos(),
            -ev.v_cut(),
            ev.v_cut(),
            panels_for_phase(x * (ev.v_cut().cosh() - 1.0) + 4.0 * 200.0 * ev.v_cut()),
            1e-10 * w.scale(),
        )
        .unwrap();
        assert!((inner - outer.re).abs() < 1e-7 * w.scale());
    }
}
