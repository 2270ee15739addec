//! Piecewise-Chebyshev models of expensive 1-d functions.  Panels are sized
//! by the caller from a bandwidth bound so that a fixed degree reaches
//! near machine accuracy; evaluation is a Clenshaw recurrence.

use num_complex::Complex64;
use rayon::prelude::*;

const DEGREE: usize = 24;

/// Complex-valued piecewise Chebyshev interpolant on [a, b].
pub struct ChebModel {
    a: f64,
    b: f64,
    panel_width: f64,
    coeffs: Vec<[Complex64; DEGREE]>,
}

impl ChebModel {
    /// Builds a model with `panels` equal panels from samples of `f`.
    pub fn build<F: Fn(f64) -> Complex64>(a: f64, b: f64, panels: usize, f: F) -> Self {
        let panels = panels.max(1);
        let width = (b - a) / panels as f64;
        let mut coeffs = Vec::with_capacity(panels);
        let mut values = [Complex64::new(0.0, 0.0); DEGREE];
        for p in 0..panels {
            let lo = a + p as f64 * width;
            let mid = lo + 0.5 * width;
            let half = 0.5 * width;
            for (j, v) in values.iter_mut().enumerate() {
                let theta = std::f64::consts::PI * (j as f64 + 0.5) / DEGREE as f64;
                *v = f(mid + half * theta.cos());
            }
            let mut c = [Complex64::new(0.0, 0.0); DEGREE];
            for (k, ck) in c.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, v) in values.iter().enumerate() {
                    let theta = std::f64::consts::PI * (j as f64 + 0.5) / DEGREE as f64;
                    acc += *v * (k as f64 * theta).cos();
                }
                *ck = acc * (2.0 / DEGREE as f64);
            }
            coeffs.push(c);
        }
        ChebModel { a, b, panel_width: width, coeffs }
    }

    /// Parallel build for expensive sample functions.
    pub fn build_par<F: Fn(f64) -> Complex64 + Sync>(a: f64, b: f64, panels: usize, f: F) -> Self {
        let panels = panels.max(1);
        let width = (b - a) / panels as f64;
        let coeffs: Vec<[Complex64; DEGREE]> = (0..panels)
            .into_par_iter()
            .map(|p| {
                let lo = a + p as f64 * width;
                let mid = lo + 0.5 * width;
                let half = 0.5 * width;
                let mut values = [Complex64::new(0.0, 0.0); DEGREE];
                for (j, v) in values.iter_mut().enumerate() {
                    let theta = std::f64::consts::PI * (j as f64 + 0.5) / DEGREE as f64;
                    *v = f(mid + half * theta.cos());
                }
                let mut c = [Complex64::new(0.0, 0.0); DEGREE];
                for (k, ck) in c.iter_mut().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (j, v) in values.iter().enumerate() {
                        let theta = std::f64::consts::PI * (j as f64 + 0.5) / DEGREE as f64;
                        acc += *v * (k as f64 * theta).cos();
                    }
                    *ck = acc * (2.0 / DEGREE as f64);
                }
                c
            })
            .collect();
        ChebModel { a, b, panel_width: width, coeffs }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        debug_assert!(x >= self.a - 1e-9 && x <= self.b + 1e-9, "x = {x} outside model range");
        let idx = (((x - self.a) / self.panel_width) as usize).min(self.coeffs.len() - 1);
        let lo = self.a + idx as f64 * self.panel_width;
        let z = 2.0 * (x - lo) / self.panel_width - 1.0;
        let c = &self.coeffs[idx];
        // Clenshaw with the 2/n normalization (c₀ counted half).
        let mut b1 = Complex64::new(0.0, 0.0);
        let mut b2 = Complex64::new(0.0, 0.0);
        for k in (1..DEGREE).rev() {
            let b0 = c[k] + 2.0 * z * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        c[0] * 0.5 + z * b1 - b2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_oscillatory_function() {
        // 40 rad of phase over [0,1]; 8 panels keep ≤ 5 rad per panel.
        let f = |x: f64| Complex64::new((40.0 * x).cos(), (40.0 * x).sin()) * (1.0 + x);
        let model = ChebModel::build(0.0, 1.0, 8, f);
        for i in 0..=100 {
            let x = i as f64 / 100.0;
            assert!((model.eval(x) - f(x)).norm() < 1e-12, "x = {x}");
        }
    }
}
