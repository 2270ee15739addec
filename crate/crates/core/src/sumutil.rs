//! Compensated (Neumaier) accumulation for long floating-point sums.
//!
//! Grid verifications add up to ~10⁷ unit-modulus terms whose true sum may
//! be an exact algebraic zero; plain accumulation would drown the vanishing
//! assertions in rounding noise.

use num_complex::Complex64;

/// Neumaier-compensated real accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    c: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// Compensated complex accumulator (independent real/imaginary channels).
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedComplex {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplex {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensation_beats_naive() {
        // 10^7 copies of 0.1 plus a unit spike and its negation.
        let mut s = CompensatedSum::new();
        s.add(1e16);
        for _ in 0..10_000 {
            s.add(0.1);
        }
        s.add(-1e16);
        let exact = 1000.0;
        assert!((s.value() - exact).abs() < 1e-9, "got {}", s.value());
    }

    #[test]
    fn complex_channels_independent() {
        let mut s = CompensatedComplex::new();
        for k in 0..1000 {
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / 1000.0;
            s.add(Complex64::from_polar(1.0, ang));
        }
        assert!(s.value().norm() < 1e-10);
    }
}
