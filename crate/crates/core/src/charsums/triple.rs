//! The triple exponential sum
//!
//!   G±(m₁,m₂,m₃;c) = c⁻³ Σ_{a₁,a₂,a₃ mod c} χ_q(a₁a₂a₃) S(a₁a₂, ±a₃;c)
//!                     · e_c(a₁m₁ + a₂m₂ + a₃m₃),     c = qr,
//!
//! evaluated two independent ways: brute force (pointwise, or a full grid of
//! all m mod c via a three-axis discrete Fourier transform), and the closed
//! form
//!
//!   G₊ = e_c(m₁m₂m₃) · h χ_{kl}(-1) / (r q² φ(k))
//!        · R_k(m₁) R_k(m₂) R_k(m₃) · H(r̄h̄k̄ m₁m₂m₃; l),
//!
//! with h = (r,q), k = (m₁m₂m₃,q), l = q/(hk), valid when (m₃,r) = 1 and
//! (m₁m₂,q,r) = 1, with G₊ = 0 otherwise.  The minus sign reduces to the
//! plus sign through G₋(m₁,m₂,m₃;c) = χ_q(-1) G₊(m₁,m₂,-m₃;c).

use super::h_sum_all;
use crate::arith::{
    gcd_i64, gcd_u64, jacobi, kloosterman_table, mod_inv, ramanujan, Modulus, QuadraticCharacter,
};
use crate::sumutil::CompensatedComplex;
use crate::{Error, Result};
use num_complex::Complex64;
use std::collections::HashMap;

/// Default cost guard on the modulus of the triple sum.
pub const DEFAULT_C_CAP: u64 = 150;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn label(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// One evaluation point of G±.
#[derive(Clone, Copy, Debug)]
pub struct TripleIndex {
    pub m1: i64,
    pub m2: i64,
    pub m3: i64,
    /// Modulus of the complete sum; c = q r.
    pub c: u64,
    /// Cofactor r = c / q.
    pub r: u64,
    pub sign: Sign,
}

/// The factorization data (h, k, l) entering the closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GFactorization {
    /// h = (r, q)
    pub h: u64,
    /// k = (m₁m₂m₃, q)
    pub k: u64,
    /// l = q / (hk)
    pub l: u64,
}

impl GFactorization {
    /// Computes (h,k,l) when the admissibility conditions (m₃,r) = 1 and
    /// (m₁m₂,q,r) = 1 hold; returns None on an inadmissible triple.
    pub fn new(modulus: &Modulus, r: u64, m1: i64, m2: i64, m3: i64) -> Option<Self> {
        let q = modulus.q();
        if gcd_i64(m3, r as i64) != 1 {
            return None;
        }
        let m12_q = gcd_i64(m1.checked_mul(m2).expect("m1*m2 overflow"), q as i64) as u64;
        if gcd_u64(m12_q, r) != 1 {
            return None;
        }
        let h = gcd_u64(r, q);
        let m123 = m1
            .checked_mul(m2)
            .and_then(|p| p.checked_mul(m3))
            .expect("m1*m2*m3 overflow");
        let k = gcd_i64(m123, q as i64) as u64;
        debug_assert_eq!(gcd_u64(h, k), 1, "h and k are coprime under admissibility");
        Some(GFactorization { h, k, l: q / (h * k) })
    }
}

/// Shared tables for evaluating G± at one (q, r, sign): the χ_q period, the
/// Kloosterman table mod c, e_c roots, and per-divisor Ramanujan and H
/// tables for the closed form.
pub struct TripleContext {
    modulus: Modulus,
    r: u64,
    c: u64,
    sign: Sign,
    chi: Vec<i32>,
    kl: Vec<f64>,
    roots: Vec<Complex64>,
    ramanujan_tables: HashMap<u64, Vec<i64>>,
    h_tables: HashMap<u64, Vec<Complex64>>,
    chi_q_minus1: f64,
}

impl TripleContext {
    pub fn new(modulus: Modulus, r: u64, sign: Sign) -> Result<Self> {
        Self::with_cap(modulus, r, sign, DEFAULT_C_CAP)
    }

    pub fn with_cap(modulus: Modulus, r: u64, sign: Sign, cap: u64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("r must be positive".into()));
        }
        let c = modulus.q() * r;
        if c > cap {
            return Err(Error::BudgetExceeded(format!("c = {c} above cap {cap}")));
        }
        let q = modulus.q();
        let chi_full = QuadraticCharacter::new(modulus.clone());
        let chi: Vec<i32> = (0..c).map(|a| chi_full.eval(a as i64)).collect();
        let kl = kloosterman_table(c);
        let roots = (0..c)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / c as f64;
                Complex64::new(t.cos(), t.sin())
            })
            .collect();
        let mut ramanujan_tables = HashMap::new();
        let mut h_tables = HashMap::new();
        for d in modulus.divisors() {
            let table: Vec<i64> = (0..d).map(|m| ramanujan(d, m as i64)).collect::<Result<_>>()?;
            ramanujan_tables.insert(d, table);
            h_tables.insert(d, h_sum_all(&Modulus::new(d)?));
        }
        let chi_q_minus1 = jacobi(-1, q)? as f64;
        Ok(TripleContext {
            modulus,
            r,
            c,
            sign,
            chi,
            kl,
            roots,
            ramanujan_tables,
            h_tables,
            chi_q_minus1,
        })
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    #[inline]
    fn e_c(&self, k: i64) -> Complex64 {
        self.roots[k.rem_euclid(self.c as i64) as usize]
    }

    /// S(a₁a₂, ±a₃; c) from the table.
    #[inline]
    fn s_term(&self, a12: u64, a3: u64) -> f64 {
        let b3 = match self.sign {
            Sign::Plus => a3,
            Sign::Minus => (self.c - a3) % self.c,
        };
        self.kl[(a12 * self.c + b3) as usize]
    }

    /// Pointwise brute-force triple sum with compensated accumulation,
    /// O(c³) per call.
    pub fn g_brute(&self, m1: i64, m2: i64, m3: i64) -> Complex64 {
        let c = self.c;
        let mut acc = CompensatedComplex::new();
        for a1 in 0..c {
            if self.chi[a1 as usize] == 0 {
                continue;
            }
            for a2 in 0..c {
                let c12 = self.chi[a1 as usize] * self.chi[a2 as usize];
                if c12 == 0 {
                    continue;
                }
                let a12 = a1 * a2 % c;
                let e12 = self.e_c(a1 as i64 * m1 + a2 as i64 * m2);
                for a3 in 0..c {
                    let ch = c12 * self.chi[a3 as usize];
                    if ch == 0 {
                        continue;
                    }
                    let s = self.s_term(a12, a3);
                    if s == 0.0 {
                        continue;
                    }
                    acc.add(e12 * self.e_c(a3 as i64 * m3) * (ch as f64 * s));
                }
            }
        }
        acc.value() / (c as f64).powi(3)
    }

    /// Full grid of G± over all (m₁,m₂,m₃) mod c, via a discrete Fourier
    /// transform along each axis of the array χ_q(a₁a₂a₃) S(a₁a₂, ±a₃;c).
    pub fn g_grid(&self) -> GGrid {
        let c = self.c as usize;
        let mut data = vec![Complex64::new(0.0, 0.0); c * c * c];
        for a1 in 0..c {
            let c1 = self.chi[a1];
            if c1 == 0 {
                continue;
            }
            for a2 in 0..c {
                let c12 = c1 * self.chi[a2];
                if c12 == 0 {
                    continue;
                }
                let a12 = (a1 * a2) % c;
                let base = (a1 * c + a2) * c;
                for a3 in 0..c {
                    let ch = c12 * self.chi[a3];
                    if ch != 0 {
                        data[base + a3] =
                            Complex64::new(ch as f64 * self.s_term(a12 as u64, a3 as u64), 0.0);
                    }
                }
            }
        }

        // E[m][a] = e_c(m a); one axis at a time, compensated line sums.
        let e: Vec<Complex64> = (0..c * c)
            .map(|i| self.roots[(i / c) * (i % c) % c])
            .collect();
        let mut scratch = vec![Complex64::new(0.0, 0.0); c];
        for axis in 0..3 {
            let (stride, offsets): (usize, Vec<usize>) = match axis {
                0 => (c * c, (0..c * c).collect()),
                1 => (c, (0..c).flat_map(|i| (0..c).map(move |k| i * c * c + k)).collect()),
                _ => (1, (0..c * c).map(|fl| fl * c).collect()),
            };
            for offset in offsets {
                for (t, slot) in scratch.iter_mut().enumerate() {
                    *slot = data[offset + t * stride];
                }
                for m in 0..c {
                    let row = &e[m * c..(m + 1) * c];
                    let mut acc = CompensatedComplex::new();
                    for (t, &v) in scratch.iter().enumerate() {
                        if v.re != 0.0 || v.im != 0.0 {
                            acc.add(v * row[t]);
                        }
                    }
                    data[offset + m * stride] = acc.value();
                }
            }
        }

        let norm = (self.c as f64).powi(3);
        for v in data.iter_mut() {
            *v /= norm;
        }
        GGrid { c: self.c, data }
    }

    /// Closed-form evaluation; exact zero on inadmissible triples.
    pub fn g_closed_form(&self, m1: i64, m2: i64, m3: i64) -> Result<Complex64> {
        match self.sign {
            Sign::Plus => self.closed_plus(m1, m2, m3),
            Sign::Minus => Ok(self.closed_plus(m1, m2, -m3)? * self.chi_q_minus1),
        }
    }

    fn closed_plus(&self, m1: i64, m2: i64, m3: i64) -> Result<Complex64> {
        let q = self.modulus.q();
        let r = self.r;
        let fac = match GFactorization::new(&self.modulus, r, m1, m2, m3) {
            Some(f) => f,
            None => return Ok(Complex64::new(0.0, 0.0)),
        };
        let GFactorization { h, k, l } = fac;
        let phi_k: u64 = self.modulus.primes().iter().filter(|&&p| k % p == 0).map(|p| p - 1).product();
        let chi_kl = jacobi(-1, k * l)? as f64;
        let rk = &self.ramanujan_tables[&k];
        let rk_val = |m: i64| rk[m.rem_euclid(k as i64) as usize] as f64;
        let m123 = m1 * m2 * m3;
        let h_val = if l == 1 {
            Complex64::new(1.0, 0.0)
        } else {
            let rhk = ((r % l) * (h % l) % l * (k % l)) % l;
            let inv = mod_inv(rhk as i64, l).ok_or(Error::NoInverse(rhk as i64, l))?;
            let w = (inv as i64 * m123).rem_euclid(l as i64);
            self.h_tables[&l][w as usize]
        };
        let prefactor = h as f64 * chi_kl / (r as f64 * (q as f64).powi(2) * phi_k as f64);
        Ok(self.e_c(m123) * prefactor * rk_val(m1) * rk_val(m2) * rk_val(m3) * h_val)
    }

    /// Whether the triple satisfies the admissibility conditions.
    pub fn admissible(&self, m1: i64, m2: i64, m3: i64) -> bool {
        let m3s = match self.sign {
            Sign::Plus => m3,
            Sign::Minus => -m3,
        };
        GFactorization::new(&self.modulus, self.r, m1, m2, m3s).is_some()
    }
}

/// Evaluate G± through a TripleIndex, brute-force path.
pub fn g_triple_brute(modulus: &Modulus, t: &TripleIndex) -> Result<Complex64> {
    if t.c != modulus.q() * t.r {
        return Err(Error::InvalidParameter(format!(
            "c = {} is not q r = {} * {}",
            t.c,
            modulus.q(),
            t.r
        )));
    }
    let ctx = TripleContext::new(modulus.clone(), t.r, t.sign)?;
    Ok(ctx.g_brute(t.m1, t.m2, t.m3))
}

/// Evaluate G± through a TripleIndex, closed-form path.
pub fn g_closed_form(modulus: &Modulus, t: &TripleIndex) -> Result<Complex64> {
    if t.c != modulus.q() * t.r {
        return Err(Error::InvalidParameter(format!(
            "c = {} is not q r = {} * {}",
            t.c,
            modulus.q(),
            t.r
        )));
    }
    let ctx = TripleContext::new(modulus.clone(), t.r, t.sign)?;
    ctx.g_closed_form(t.m1, t.m2, t.m3)
}

/// Periodic grid of G± values over all residues mod c.
pub struct GGrid {
    c: u64,
    data: Vec<Complex64>,
}

impl GGrid {
    pub fn c(&self) -> u64 {
        self.c
    }

    /// G±(m₁,m₂,m₃;c), using periodicity mod c in each coordinate.
    pub fn value(&self, m1: i64, m2: i64, m3: i64) -> Complex64 {
        let c = self.c as i64;
        let (i, j, k) = (
            m1.rem_euclid(c) as usize,
            m2.rem_euclid(c) as usize,
            m3.rem_euclid(c) as usize,
        );
        self.data[(i * self.c as usize + j) * self.c as usize + k]
    }
}

/// Result of checking the closed form against the grid on every triple
/// mod c for one (q, r, sign).
#[derive(Clone, Debug)]
pub struct GhReport {
    pub q: u64,
    pub r: u64,
    pub sign: Sign,
    pub triples_checked: u64,
    pub max_abs_err: f64,
    /// Inadmissible triples where |G| exceeded the vanishing tolerance.
    pub vanishing_violations: u64,
    pub max_vanishing_mag: f64,
}

/// Exhaustive comparison of the two evaluation paths over all m mod c.
pub fn verify_gh(modulus: &Modulus, r: u64, sign: Sign, cap: u64) -> Result<GhReport> {
    let ctx = TripleContext::with_cap(modulus.clone(), r, sign, cap)?;
    let grid = ctx.g_grid();
    let c = ctx.c() as i64;
    let vanish_tol = crate::tolerances::G_VANISH_OVER_C / ctx.c() as f64;
    let mut max_abs_err = 0.0f64;
    let mut violations = 0u64;
    let mut max_vanishing = 0.0f64;
    for m1 in 0..c {
        for m2 in 0..c {
            for m3 in 0..c {
                let brute = grid.value(m1, m2, m3);
                if ctx.admissible(m1, m2, m3) {
                    let closed = ctx.g_closed_form(m1, m2, m3)?;
                    max_abs_err = max_abs_err.max((brute - closed).norm());
                } else {
                    let mag = brute.norm();
                    max_vanishing = max_vanishing.max(mag);
                    if mag > vanish_tol {
                        violations += 1;
                    }
                }
            }
        }
    }
    Ok(GhReport {
        q: modulus.q(),
        r,
        sign,
        triples_checked: (c * c * c) as u64,
        max_abs_err,
        vanishing_violations: violations,
        max_vanishing_mag: max_vanishing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::{GH_ABS_ERR, G_PATHS_ABS_ERR, G_VANISH_OVER_C};

    #[test]
    fn grid_matches_pointwise_on_samples() {
        let m = Modulus::new(5).unwrap();
        let ctx = TripleContext::new(m, 2, Sign::Plus).unwrap();
        let grid = ctx.g_grid();
        // Deterministic pseudo-random walk over the grid.
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..12 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            let c = ctx.c() as i64;
            let m1 = (state >> 5) as i64 % c;
            let m2 = (state >> 23) as i64 % c;
            let m3 = (state >> 41) as i64 % c;
            let a = grid.value(m1, m2, m3);
            let b = ctx.g_brute(m1, m2, m3);
            assert!((a - b).norm() < G_PATHS_ABS_ERR, "({m1},{m2},{m3}): {a} vs {b}");
        }
    }

    #[test]
    fn closed_form_matches_brute_q5_r2() {
        let m = Modulus::new(5).unwrap();
        let report = verify_gh(&m, 2, Sign::Plus, DEFAULT_C_CAP).unwrap();
        assert_eq!(report.vanishing_violations, 0);
        assert!(report.max_abs_err < GH_ABS_ERR, "max err {}", report.max_abs_err);
    }

    #[test]
    fn minus_sign_reduction() {
        let m = Modulus::new(5).unwrap();
        let plus = TripleContext::new(m.clone(), 2, Sign::Plus).unwrap();
        let minus = TripleContext::new(m.clone(), 2, Sign::Minus).unwrap();
        let chi_m1 = jacobi(-1, 5).unwrap() as f64;
        for (m1, m2, m3) in [(1i64, 2i64, 3i64), (0, 4, 7), (3, 3, 9)] {
            let lhs = minus.g_brute(m1, m2, m3);
            let rhs = plus.g_brute(m1, m2, -m3) * chi_m1;
            assert!((lhs - rhs).norm() < 1e-10);
        }
    }

    #[test]
    fn trivial_modulus_reduces_to_kloosterman_dual() {
        // q = 1: the closed form must equal brute force for c = r ≤ 12.
        let m = Modulus::new(1).unwrap();
        for r in 1..=12u64 {
            let ctx = TripleContext::new(m.clone(), r, Sign::Plus).unwrap();
            let grid = ctx.g_grid();
            for m1 in 0..r as i64 {
                for m3 in 0..r as i64 {
                    let closed = ctx.g_closed_form(m1, 1, m3).unwrap();
                    let brute = grid.value(m1, 1, m3);
                    assert!(
                        (closed - brute).norm() < GH_ABS_ERR,
                        "r={r} m=({m1},1,{m3}): {closed} vs {brute}"
                    );
                }
            }
        }
    }

    #[test]
    fn k_equals_q_specialization() {
        // q | m₁m₂m₃ with (r,q)=1 forces h = l = 1, k = q, H(·;1) = 1.
        let m = Modulus::new(5).unwrap();
        let ctx = TripleContext::new(m.clone(), 3, Sign::Plus).unwrap();
        let (m1, m2, m3) = (5i64, 2i64, 1i64);
        let fac = GFactorization::new(&m, 3, m1, m2, m3).unwrap();
        assert_eq!(fac, GFactorization { h: 1, k: 5, l: 1 });
        let expect = ctx.e_c(m1 * m2 * m3)
            * (ramanujan(5, m1).unwrap() * ramanujan(5, m2).unwrap() * ramanujan(5, m3).unwrap())
                as f64
            / (3.0 * 25.0 * 4.0);
        let got = ctx.g_closed_form(m1, m2, m3).unwrap();
        assert!((got - expect).norm() < 1e-12);
        let brute = ctx.g_brute(m1, m2, m3);
        assert!((got - brute).norm() < GH_ABS_ERR);
    }

    #[test]
    fn vanishing_on_inadmissible_triples() {
        let m = Modulus::new(5).unwrap();
        let ctx = TripleContext::new(m, 2, Sign::Plus).unwrap();
        // (m₃, r) = 2 > 1.
        assert!(!ctx.admissible(1, 1, 2));
        let v = ctx.g_brute(1, 1, 2);
        assert!(v.norm() < G_VANISH_OVER_C / ctx.c() as f64, "|G| = {}", v.norm());
    }

    #[test]
    fn cost_guard() {
        let m = Modulus::new(105).unwrap();
        assert!(matches!(
            TripleContext::new(m, 2, Sign::Plus),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
