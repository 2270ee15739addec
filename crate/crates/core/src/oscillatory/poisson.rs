//! Poisson summation cross-check: for any smooth kernel f and c = qr,
//!
//!   Σ_{n₁,n₂,n₃} χ_q(n₁n₂n₃) S(n₁n₂, ±n₃;c) w₁(n₁)w₂(n₂)w₃(n₃)
//!                f(4π√(n₁n₂n₃)/c)
//!     = Σ_{m ∈ ℤ³} G±(m₁,m₂,m₃;c) K_f(m₁,m₂,m₃,c),
//!
//! an exact identity between a finite arithmetic sum and an m-sum of
//! oscillatory integrals.  The two sides share no computation: the left is
//! integer arithmetic over the lattice, the right pairs the complete-sum
//! grid G with tensor-quadrature transforms K.
//!
//! K is computed for the whole m-box at once by contracting one fixed
//! tensor grid axis-by-axis against e_c(-m t), streaming over t₃-slabs so
//! memory stays flat; real weights give K(-m) = conj K(m), which halves
//! the m₁ range.

use super::quadrature::GaussLegendre;
use super::window::SmoothWeight;
use crate::arith::{kloosterman_table, Modulus, QuadraticCharacter};
use crate::charsums::{Sign, TripleContext};
use crate::special::cis;
use crate::sumutil::{CompensatedComplex, CompensatedSum};
use crate::tolerances::POISSON_TAIL_OVER_PEAK;
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;

const N_CAP: f64 = 50.0;
const C_CAP: u64 = 35;
const M_CUT_CAP: i64 = 44;

/// Smooth rapidly-evaluable test kernel for the identity.
#[derive(Clone, Copy, Debug)]
pub enum TestKernel {
    /// cos(freq·x) e^{-(x/scale)²}
    GaussianCosine { freq: f64, scale: f64 },
    Zero,
}

impl TestKernel {
    fn eval(&self, x: f64) -> f64 {
        match *self {
            TestKernel::GaussianCosine { freq, scale } => {
                (freq * x).cos() * (-(x / scale).powi(2)).exp()
            }
            TestKernel::Zero => 0.0,
        }
    }

    /// Bound on the kernel's own phase rate, for grid budgets.
    fn freq_bound(&self) -> f64 {
        match *self {
            TestKernel::GaussianCosine { freq, scale } => freq.abs() + 2.0 / scale.abs(),
            TestKernel::Zero => 0.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PoissonParams {
    pub modulus: Modulus,
    pub r: u64,
    pub sign: Sign,
    pub weights: [SmoothWeight; 3],
    pub kernel: TestKernel,
    /// Initial half-width of the m-box; enlarged until the K tail falls
    /// under tolerance.
    pub m_cut: i64,
}

#[derive(Clone, Copy, Debug)]
pub struct PoissonOutcome {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_diff: f64,
    pub m_cut: i64,
}

fn c_of(p: &PoissonParams) -> u64 {
    p.modulus.q() * p.r
}

fn x_of(p: &PoissonParams, u: f64) -> f64 {
    4.0 * std::f64::consts::PI * u.sqrt() / c_of(p) as f64
}

/// Left side: finite lattice sum over the weight supports.
fn lhs_sum(p: &PoissonParams) -> f64 {
    let c = c_of(p);
    let q = p.modulus.q();
    let chi = QuadraticCharacter::new(p.modulus.clone()).table();
    let kl = kloosterman_table(c);
    let mut acc = CompensatedSum::new();
    let range = |w: &SmoothWeight| {
        let (a, b) = w.support();
        (a.ceil() as i64)..=(b.floor() as i64)
    };
    for n1 in range(&p.weights[0]) {
        let w1 = p.weights[0].eval(n1 as f64);
        let chi1 = chi[(n1 as u64 % q) as usize];
        if w1 == 0.0 || chi1 == 0 {
            continue;
        }
        for n2 in range(&p.weights[1]) {
            let w2 = p.weights[1].eval(n2 as f64);
            let chi12 = chi1 * chi[(n2 as u64 % q) as usize];
            if w2 == 0.0 || chi12 == 0 {
                continue;
            }
            let n12 = (n1 as u64 * n2 as u64) % c;
            for n3 in range(&p.weights[2]) {
                let w3 = p.weights[2].eval(n3 as f64);
                let ch = chi12 * chi[(n3 as u64 % q) as usize];
                if w3 == 0.0 || ch == 0 {
                    continue;
                }
                let b3 = match p.sign {
                    Sign::Plus => n3 as u64 % c,
                    Sign::Minus => (c - n3 as u64 % c) % c,
                };
                let s = kl[(n12 * c + b3) as usize];
                if s == 0.0 {
                    continue;
                }
                let x = x_of(p, (n1 * n2 * n3) as f64);
                acc.add(ch as f64 * s * w1 * w2 * w3 * p.kernel.eval(x));
            }
        }
    }
    acc.value()
}

struct Axis {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Composite GL-24 grid over the bump support; panels sized so each holds
/// at most ~28 radians of worst-case phase.
fn axis(w: &SmoothWeight, rad: f64, refine: f64, rule: &GaussLegendre) -> Axis {
    let (a, b) = w.support();
    let panels = (((rad + 40.0) / 28.0).ceil() * refine).ceil().max(2.0) as usize;
    let h = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * rule.nodes.len());
    let mut weights = Vec::with_capacity(nodes.capacity());
    for pnl in 0..panels {
        let mid = a + (pnl as f64 + 0.5) * h;
        for (x, gw) in rule.nodes.iter().zip(&rule.weights) {
            let t = mid + 0.5 * h * x;
            nodes.push(t);
            weights.push(gw * 0.5 * h * w.eval(t));
        }
    }
    Axis { nodes, weights }
}

/// K_f(m) on m₁ ∈ [0, M], m₂, m₃ ∈ [-M, M]; the m₁ < 0 half follows from
/// K(-m) = conj K(m).
struct KHalfGrid {
    m_cut: i64,
    data: Vec<Complex64>,
}

impl KHalfGrid {
    #[inline]
    fn index(&self, m1: i64, m2: i64, m3: i64) -> Complex64 {
        let m = self.m_cut;
        let side = (2 * m + 1) as usize;
        let (m1, m2, m3, conj) = if m1 >= 0 { (m1, m2, m3, false) } else { (-m1, -m2, -m3, true) };
        let v = self.data
            [(m1 as usize * side + (m2 + m) as usize) * side + (m3 + m) as usize];
        if conj {
            v.conj()
        } else {
            v
        }
    }
}

/// Initial m-box half-width heuristic: the bump spectrum clears 1e-9 of
/// its peak near Ω* ≈ 140 radians of frequency-support mismatch (for the
/// sharpened template), i.e. m ≈ Ω* c / (π N_min).
pub fn suggested_m_cut(c: u64, n_min: f64) -> i64 {
    (46.0 * c as f64 / n_min).ceil() as i64 + 6
}

fn k_grid(p: &PoissonParams, m_cut: i64, refine: f64) -> KHalfGrid {
    let side = (2 * m_cut + 1) as usize;
    let half = (m_cut + 1) as usize;
    if matches!(p.kernel, TestKernel::Zero) {
        return KHalfGrid { m_cut, data: vec![Complex64::new(0.0, 0.0); half * side * side] };
    }
    let c = c_of(p) as f64;
    let two_pi = 2.0 * std::f64::consts::PI;
    let rule = GaussLegendre::new(24);
    let u_hi: f64 = p.weights.iter().map(|w| 2.0 * w.scale()).product();
    let x_hi = 4.0 * std::f64::consts::PI * u_hi.sqrt() / c;

    let axes: Vec<Axis> = p
        .weights
        .iter()
        .map(|w| {
            let rad = two_pi * m_cut as f64 * w.scale() / c + p.kernel.freq_bound() * x_hi;
            axis(w, rad, refine, &rule)
        })
        .collect();
    let (n1, n2, n3) = (axes[0].nodes.len(), axes[1].nodes.len(), axes[2].nodes.len());

    // Phase tables: e_c(-m t) per axis.
    let e_axis = |ax: &Axis, lo: i64, hi: i64| -> Vec<Complex64> {
        let mut t = Vec::with_capacity(((hi - lo + 1) as usize) * ax.nodes.len());
        for m in lo..=hi {
            for &x in &ax.nodes {
                t.push(cis(-two_pi * m as f64 * x / c));
            }
        }
        t
    };
    let e1 = e_axis(&axes[0], 0, m_cut);
    let e2 = e_axis(&axes[1], -m_cut, m_cut);
    let e3 = e_axis(&axes[2], -m_cut, m_cut);

    // Stream over t₃ slabs; one shared half-grid, parallel over m₁ rows.
    let mut data = vec![Complex64::new(0.0, 0.0); half * side * side];
    let mut slab = vec![0.0f64; n1 * n2];
    for j3 in 0..n3 {
        let t3 = axes[2].nodes[j3];
        let w3 = axes[2].weights[j3];
        if w3 == 0.0 {
            continue;
        }
        // Slab values A[j1, j2] = W₁W₂W₃ f(x(t₁t₂t₃)).
        slab
            .par_chunks_mut(n2)
            .enumerate()
            .for_each(|(j1, row)| {
                let w1 = axes[0].weights[j1];
                if w1 == 0.0 {
                    row.fill(0.0);
                    return;
                }
                let t1 = axes[0].nodes[j1];
                for (j2, out) in row.iter_mut().enumerate() {
                    let w12 = w1 * axes[1].weights[j2];
                    let u = t1 * axes[1].nodes[j2] * t3;
                    *out = w12 * w3 * p.kernel.eval(x_of(p, u));
                }
            });
        data
            .par_chunks_mut(side * side)
            .enumerate()
            .for_each(|(m1, block)| {
                // Contract t₁ at this m₁.
                let row1 = &e1[m1 * n1..(m1 + 1) * n1];
                let mut s1 = vec![Complex64::new(0.0, 0.0); n2];
                for (j1, &ej) in row1.iter().enumerate() {
                    let src = &slab[j1 * n2..(j1 + 1) * n2];
                    for (d, &a) in s1.iter_mut().zip(src) {
                        d.re += ej.re * a;
                        d.im += ej.im * a;
                    }
                }
                // Contract t₂, scatter over m₃ with the slab phase.
                for m2 in 0..side {
                    let row2 = &e2[m2 * n2..(m2 + 1) * n2];
                    let mut v = Complex64::new(0.0, 0.0);
                    for (ej, &sv) in row2.iter().zip(&s1) {
                        v += *ej * sv;
                    }
                    let dst = &mut block[m2 * side..(m2 + 1) * side];
                    for (m3, out) in dst.iter_mut().enumerate() {
                        *out += v * e3[m3 * n3 + j3];
                    }
                }
            });
    }

    KHalfGrid { m_cut, data }
}

fn pair_with_g(p: &PoissonParams, k: &KHalfGrid) -> Result<(Complex64, f64, f64)> {
    let ctx = TripleContext::with_cap(p.modulus.clone(), p.r, p.sign, C_CAP)?;
    let grid = ctx.g_grid();
    let m = k.m_cut;
    let mut acc = CompensatedComplex::new();
    let mut peak = 0.0f64;
    let mut shell_max = 0.0f64;
    for m1 in -m..=m {
        for m2 in -m..=m {
            for m3 in -m..=m {
                let kv = k.index(m1, m2, m3);
                let mag = kv.norm();
                peak = peak.max(mag);
                if m1.abs() == m || m2.abs() == m || m3.abs() == m {
                    shell_max = shell_max.max(mag);
                }
                acc.add(grid.value(m1, m2, m3) * kv);
            }
        }
    }
    Ok((acc.value(), peak, shell_max))
}

/// Runs the identity check, enlarging the m-box until the K tail is below
/// `POISSON_TAIL_OVER_PEAK` of the grid peak, then validating the
/// quadrature by grid refinement.
pub fn poisson_check(p: &PoissonParams) -> Result<PoissonOutcome> {
    for w in &p.weights {
        if w.scale() > N_CAP {
            return Err(Error::BudgetExceeded(format!("N = {} above {N_CAP}", w.scale())));
        }
    }
    if c_of(p) > C_CAP {
        return Err(Error::BudgetExceeded(format!("c = {} above {C_CAP}", c_of(p))));
    }

    let lhs = lhs_sum(p);
    let mut m_cut = p.m_cut.max(4);
    loop {
        let k = k_grid(p, m_cut, 1.0);
        let (rhs, peak, shell) = pair_with_g(p, &k)?;
        if peak > 0.0 && shell > POISSON_TAIL_OVER_PEAK * peak {
            m_cut += 8;
            if m_cut > M_CUT_CAP {
                return Err(Error::TailBound { cutoff: m_cut, ratio: shell / peak });
            }
            continue;
        }
        // Quadrature self-check at 1.3× node density.
        let k_fine = k_grid(p, m_cut, 1.3);
        let (rhs_fine, _, _) = pair_with_g(p, &k_fine)?;
        let scale = lhs.abs().max(rhs_fine.norm()).max(1e-9);
        if (rhs - rhs_fine).norm() > 1e-8 * scale {
            return Err(Error::QuadratureNonConvergence(format!(
                "K grid drift {:.3e} at m_cut = {m_cut}",
                (rhs - rhs_fine).norm()
            )));
        }
        let rhs_re = rhs_fine.re;
        debug_assert!(
            rhs_fine.im.abs() <= 1e-7 * scale,
            "Poisson dual side should be real, got imaginary {:.3e}",
            rhs_fine.im
        );
        let denom = lhs.abs().max(rhs_re.abs());
        let rel_diff = if denom == 0.0 { 0.0 } else { (lhs - rhs_re).abs() / denom };
        return Ok(PoissonOutcome { lhs, rhs: rhs_re, rel_diff, m_cut });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::POISSON_REL_DIFF;

    fn params(q: u64, r: u64, sign: Sign, n: [f64; 3]) -> PoissonParams {
        let c = (q * r) as f64;
        let u_mid: f64 = n.iter().map(|s| 1.5 * s).product();
        let x_mid = 4.0 * std::f64::consts::PI * u_mid.sqrt() / c;
        let n_min = n.iter().cloned().fold(f64::INFINITY, f64::min);
        PoissonParams {
            modulus: Modulus::new(q).unwrap(),
            r,
            sign,
            weights: [
                SmoothWeight::new(n[0]).unwrap(),
                SmoothWeight::new(n[1]).unwrap(),
                SmoothWeight::new(n[2]).unwrap(),
            ],
            kernel: TestKernel::GaussianCosine { freq: 0.03, scale: 1.5 * x_mid },
            m_cut: suggested_m_cut(q * r, n_min),
        }
    }

    #[test]
    fn identity_holds_q5() {
        let p = params(5, 1, Sign::Plus, [20.0, 20.0, 30.0]);
        let out = poisson_check(&p).unwrap();
        assert!(
            out.rel_diff <= POISSON_REL_DIFF,
            "lhs {} rhs {} rel {}",
            out.lhs,
            out.rhs,
            out.rel_diff
        );
    }

    #[test]
    fn identity_holds_minus_sign() {
        let p = params(5, 1, Sign::Minus, [16.0, 16.0, 24.0]);
        let out = poisson_check(&p).unwrap();
        assert!(out.rel_diff <= POISSON_REL_DIFF, "rel {}", out.rel_diff);
    }

    #[test]
    fn zero_kernel_gives_zero() {
        let mut p = params(5, 1, Sign::Plus, [10.0, 10.0, 10.0]);
        p.kernel = TestKernel::Zero;
        let out = poisson_check(&p).unwrap();
        assert_eq!(out.lhs, 0.0);
        assert!(out.rhs.abs() < 1e-14);
        assert_eq!(out.rel_diff, 0.0);
    }

    #[test]
    fn budget_guards() {
        let mut p = params(5, 1, Sign::Plus, [10.0, 10.0, 10.0]);
        p.r = 8; // c = 40 > 35
        assert!(matches!(poisson_check(&p), Err(Error::BudgetExceeded(_))));
    }
}
