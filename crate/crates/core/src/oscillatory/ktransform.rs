//! The three-fold kernel transform
//!
//!   K(m₁,m₂,m₃,c) = ∭ w₁(t₁)w₂(t₂)w₃(t₃) B₀(4π√(t₁t₂t₃)/c)
//!                    e_c(-m₁t₁ - m₂t₂ - m₃t₃) dt,
//!
//! evaluated through the change of variables t₃ = u/(t₁t₂) as an outer
//! u-integral of B₀(4π√u/c) against the 2-d inner integral
//!
//!   I(u) = ∬ w₃(u/(t₁t₂)) w₁(t₁) w₂(t₂)
//!          e_c(-m₃u/(t₁t₂) - m₁t₁ - m₂t₂) dt₁dt₂/(t₁t₂).
//!
//! B₀ along the u-line is cached as a piecewise-Chebyshev model so the
//! m-sweeps pay for the kernel only once per configuration.

use super::chebyshev::ChebModel;
use super::kernels::{KernelEvaluator, KernelSpec, PhiKind};
use super::quadrature::{integrate_complex, integrate_real, panels_for_phase, GaussLegendre};
use super::window::{SmoothWeight, SpectralWindow};
use crate::special::cis;
use crate::{Error, Result};
use num_complex::Complex64;

const DEFAULT_N_CAP: f64 = 100.0;
const DEFAULT_C_CAP: u64 = 50;

#[derive(Clone, Copy, Debug)]
pub struct KTransformParams {
    pub m: [i64; 3],
    pub c: u64,
    pub weights: [SmoothWeight; 3],
    pub spec: KernelSpec,
    pub window: SpectralWindow,
}

impl KTransformParams {
    pub fn validate(&self) -> Result<()> {
        if self.c == 0 || self.c > DEFAULT_C_CAP {
            return Err(Error::BudgetExceeded(format!("c = {} outside (0, {DEFAULT_C_CAP}]", self.c)));
        }
        for w in &self.weights {
            if w.scale() > DEFAULT_N_CAP {
                return Err(Error::BudgetExceeded(format!(
                    "weight scale {} above {DEFAULT_N_CAP}",
                    w.scale()
                )));
            }
        }
        Ok(())
    }

    fn n_product(&self) -> f64 {
        self.weights.iter().map(|w| w.scale()).product()
    }

    /// M_i = √(N₁N₂N₃)/N_i, the predicted support box of K in m.
    pub fn m_box(&self) -> [f64; 3] {
        let s = self.n_product().sqrt();
        [s / self.weights[0].scale(), s / self.weights[1].scale(), s / self.weights[2].scale()]
    }

    /// U = T²C/√(N₁N₂N₃).
    pub fn mellin_length(&self) -> f64 {
        let t = self.window.t_center();
        t * t * self.c as f64 / self.n_product().sqrt()
    }

    /// X = M₁M₂M₃/C.
    pub fn x_scale(&self) -> f64 {
        let mb = self.m_box();
        mb[0] * mb[1] * mb[2] / self.c as f64
    }

    fn u_range(&self) -> (f64, f64) {
        let p = self.n_product();
        (p, 8.0 * p)
    }

    fn x_of_u(&self, u: f64) -> f64 {
        4.0 * std::f64::consts::PI * u.sqrt() / self.c as f64
    }
}

/// Cached B₀ along the u-line of one configuration.
pub struct B0Table {
    model: ChebModel,
}

/// Builds the Chebyshev cache of x ↦ B₀(x) over the x-range swept by
/// u ∈ [N₁N₂N₃, 8N₁N₂N₃]; panel width respects the kernel bandwidth
/// max|φ| on the profile support.
pub fn b0_table(p: &KTransformParams) -> Result<B0Table> {
    p.validate()?;
    let ev = KernelEvaluator::new(p.window, p.spec.profile)?;
    let (u_lo, u_hi) = p.u_range();
    let x_lo = p.x_of_u(u_lo) * 0.999;
    let x_hi = p.x_of_u(u_hi) * 1.001;
    let bandwidth = match p.spec.phi {
        PhiKind::Cosh => ev.v_cut().cosh(),
        PhiKind::Sinh => ev.v_cut().sinh(),
        _ => 1.0,
    };
    let panels = (((x_hi - x_lo) * bandwidth / 8.0).ceil() as usize).max(4);
    let model = ChebModel::build_par(x_lo, x_hi, panels, |x| {
        ev.b0(x, p.spec.phi, p.spec.phi_sign)
            .expect("kernel quadrature sized by phase budget")
    });
    Ok(B0Table { model })
}

struct Axis {
    nodes: Vec<f64>,
    /// GL weight × bump value at the node.
    weights: Vec<f64>,
}

/// Composite GL-24 grid with ≤ 28 rad of worst-case phase per panel.
fn axis(w: &SmoothWeight, rad_budget: f64, refine: f64, rule: &GaussLegendre) -> Axis {
    let (a, b) = w.support();
    let panels = (((rad_budget + 40.0) / 28.0).ceil() * refine).ceil().max(2.0) as usize;
    let h = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * rule.nodes.len());
    let mut weights = Vec::with_capacity(nodes.capacity());
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        for (x, gw) in rule.nodes.iter().zip(&rule.weights) {
            let t = mid + half * x;
            nodes.push(t);
            weights.push(gw * half * w.eval(t));
        }
    }
    Axis { nodes, weights }
}

fn inner_integral(
    p: &KTransformParams,
    u: f64,
    ax1: &Axis,
    ax2: &Axis,
    e1: &[Complex64],
    e2: &[Complex64],
) -> Complex64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let cf = p.c as f64;
    let w3 = &p.weights[2];
    let (n3_lo, n3_hi) = w3.support();
    let mut total = Complex64::new(0.0, 0.0);
    for (i, (&t1, &w1)) in ax1.nodes.iter().zip(&ax1.weights).enumerate() {
        if w1 == 0.0 {
            continue;
        }
        // t₃ = u/(t₁t₂) ∈ [N₃, 2N₃] restricts t₂ to a contiguous band.
        let t2_lo = u / (n3_hi * t1);
        let t2_hi = u / (n3_lo * t1);
        let lo_idx = ax2.nodes.partition_point(|&t| t < t2_lo);
        let hi_idx = ax2.nodes.partition_point(|&t| t <= t2_hi);
        let mut row = Complex64::new(0.0, 0.0);
        for j in lo_idx..hi_idx {
            let t2 = ax2.nodes[j];
            let w2 = ax2.weights[j];
            if w2 == 0.0 {
                continue;
            }
            let t3 = u / (t1 * t2);
            let w3v = w3.eval(t3);
            if w3v == 0.0 {
                continue;
            }
            let phase = -two_pi * p.m[2] as f64 * t3 / cf;
            row += cis(phase) * (w2 * w3v / (t1 * t2)) * e2[j];
        }
        total += row * w1 * e1[i];
    }
    total
}

fn phase_weights(m: i64, c: u64, ax: &Axis) -> Vec<Complex64> {
    let f = -2.0 * std::f64::consts::PI * m as f64 / c as f64;
    ax.nodes.iter().map(|&t| cis(f * t)).collect()
}

/// Largest |φ(v)| on the effective profile support; the kernel bandwidth
/// along the u-line.
fn kernel_bandwidth(p: &KTransformParams) -> f64 {
    let v_cut = match p.spec.profile {
        super::kernels::Profile::DerivedFromH => 14.0 / p.window.delta(),
        super::kernels::Profile::GaussianModel => 6.5 / p.window.delta(),
    };
    match p.spec.phi {
        PhiKind::Cosh => v_cut.cosh(),
        PhiKind::Sinh => v_cut.sinh(),
        _ => 1.0,
    }
}

fn k_transform_at_resolution(
    p: &KTransformParams,
    table: &B0Table,
    refine: f64,
) -> Result<Complex64> {
    let rule = GaussLegendre::new(24);
    let two_pi = 2.0 * std::f64::consts::PI;
    let cf = p.c as f64;
    let (u_lo, u_hi) = p.u_range();
    let n = [p.weights[0].scale(), p.weights[1].scale(), p.weights[2].scale()];

    // Per-axis phase budgets: the m_i carrier plus the m₃ cross term —
    // on the support t₃ = u/(t₁t₂) ≤ 2N₃ bounds its t-rate by 4π|m₃|N₃/c.
    let cross = 2.0 * two_pi * p.m[2].unsigned_abs() as f64 * n[2] / cf;
    let b1 = two_pi * p.m[0].unsigned_abs() as f64 * n[0] / cf + cross;
    let b2 = two_pi * p.m[1].unsigned_abs() as f64 * n[1] / cf + cross;
    let ax1 = axis(&p.weights[0], b1, refine, &rule);
    let ax2 = axis(&p.weights[1], b2, refine, &rule);
    let e1 = phase_weights(p.m[0], p.c, &ax1);
    let e2 = phase_weights(p.m[1], p.c, &ax2);

    let budget_u = (p.x_of_u(u_hi) - p.x_of_u(u_lo)) * kernel_bandwidth(p)
        + two_pi * p.m[2].unsigned_abs() as f64 * (u_hi - u_lo) / (cf * n[0] * n[1]);
    // GL-12 panels hold ~12 rad each.
    let u_panels = (((budget_u + 60.0) / 12.0).ceil() * refine).ceil() as usize;
    integrate_complex(
        |u| table.model.eval(p.x_of_u(u)) * inner_integral(p, u, &ax1, &ax2, &e1, &e2),
        u_lo,
        u_hi,
        u_panels,
        1e-10 * p.n_product(),
    )
}

/// K via the u-route, with an internal t-grid refinement check against
/// `abs_tol`.
pub fn k_transform_with_table(
    p: &KTransformParams,
    table: &B0Table,
    abs_tol: f64,
) -> Result<Complex64> {
    p.validate()?;
    let base = k_transform_at_resolution(p, table, 1.0)?;
    let fine = k_transform_at_resolution(p, table, 1.3)?;
    if (base - fine).norm() > abs_tol {
        let finer = k_transform_at_resolution(p, table, 1.7)?;
        if (fine - finer).norm() > abs_tol {
            return Err(Error::QuadratureNonConvergence(format!(
                "K grid refinement stalled at {:.3e}",
                (fine - finer).norm()
            )));
        }
        return Ok(finer);
    }
    Ok(fine)
}

/// One-shot evaluation (builds its own B₀ cache).
pub fn k_transform(p: &KTransformParams, abs_tol: f64) -> Result<Complex64> {
    let table = b0_table(p)?;
    k_transform_with_table(p, &table, abs_tol)
}

/// m = (0,0,0) oracle: the same quantity through nested adaptive 1-d
/// quadratures of the multiplicative convolution
/// I₀(u) = ∫ w₁(t₁)/t₁ ∫ w₂(t₂) w₃(u/(t₁t₂))/t₂ dt₂ dt₁.
pub fn k_transform_zero_nested(p: &KTransformParams, table: &B0Table) -> Result<Complex64> {
    p.validate()?;
    if p.m != [0, 0, 0] {
        return Err(Error::InvalidParameter("nested oracle is for m = 0".into()));
    }
    let (u_lo, u_hi) = p.u_range();
    let (a1, b1) = p.weights[0].support();
    let (a2, b2) = p.weights[1].support();
    let scale = p.n_product();
    let inner0 = |u: f64| -> f64 {
        integrate_real(
            |t1| {
                let w1 = p.weights[0].eval(t1);
                if w1 == 0.0 {
                    return 0.0;
                }
                let inner = integrate_real(
                    |t2| {
                        let t3 = u / (t1 * t2);
                        p.weights[1].eval(t2) * p.weights[2].eval(t3) / t2
                    },
                    a2,
                    b2,
                    16,
                    1e-12,
                )
                .expect("smooth inner axis");
                w1 * inner / t1
            },
            a1,
            b1,
            16,
            1e-11,
        )
        .expect("smooth outer axis")
    };
    // I₀ is a smooth multiplicative convolution of three bumps; a modest
    // Chebyshev model makes the outer oscillatory pass cheap.
    let i0_model = ChebModel::build_par(u_lo, u_hi, 64, |u| Complex64::new(inner0(u), 0.0));
    let budget = (p.x_of_u(u_hi) - p.x_of_u(u_lo)) * kernel_bandwidth(p);
    integrate_complex(
        |u| table.model.eval(p.x_of_u(u)) * i0_model.eval(u).re,
        u_lo,
        u_hi,
        panels_for_phase(budget + 40.0),
        1e-9 * scale,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillatory::kernels::Profile;

    fn small_params(m: [i64; 3]) -> KTransformParams {
        // x = 4π√u ranges over [658, 1861], comfortably above ΔT = 500, so
        // the kernel is alive on the whole u-line.  The -cosh branch is the
        // one whose phase -x cosh v + 2Tv has a critical point.
        KTransformParams {
            m,
            c: 1,
            weights: [
                SmoothWeight::new(14.0).unwrap(),
                SmoothWeight::new(14.0).unwrap(),
                SmoothWeight::new(14.0).unwrap(),
            ],
            spec: KernelSpec::b0(PhiKind::Cosh, -1.0, Profile::GaussianModel),
            window: SpectralWindow::new(100.0, 5.0).unwrap(),
        }
    }

    #[test]
    fn zero_m_matches_nested_oracle() {
        // The kernel phase is monotone along the u-line, so K(0) is a
        // near-zero oscillatory integral; the two paths must agree to the
        // combined absolute quadrature tolerance.
        let p = small_params([0, 0, 0]);
        let table = b0_table(&p).unwrap();
        let a = k_transform_with_table(&p, &table, 1e-7 * p.n_product()).unwrap();
        let b = k_transform_zero_nested(&p, &table).unwrap();
        assert!((a - b).norm() < 1e-5 * p.n_product(), "{a} vs {b}");
    }

    #[test]
    fn budget_guard() {
        let mut p = small_params([0, 0, 0]);
        p.c = 99;
        assert!(matches!(p.validate(), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn derived_scales() {
        let p = small_params([1, 2, 3]);
        let mb = p.m_box();
        let s = (14.0f64 * 14.0 * 14.0).sqrt();
        let c = p.c as f64;
        assert!((mb[0] - s / 14.0).abs() < 1e-12);
        assert!((p.mellin_length() - 100.0 * 100.0 * c / s).abs() < 1e-9);
        assert!((p.x_scale() - mb[0] * mb[1] * mb[2] / c).abs() < 1e-12);
    }
}
