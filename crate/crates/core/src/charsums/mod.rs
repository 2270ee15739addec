//! The two-variable complete character sums H(w;q) and H*(w;q), their Möbius
//! factorization, and the Fourier coefficients g(χ, ψ) that separate H* into
//! multiplicative characters:
//!
//!   H(w;q)  = Σ_{u,v mod q} χ_q(uv(u+1)(v+1)) e_q((uv-1)w)
//!   H*(w;q) = same sum restricted to (uv-1, q) = 1
//!   H*(w;q) = (1/φ(q)) Σ_ψ τ(ψ̄) g(χ, ψ) ψ(w)
//!
//! g is recovered by Fourier inversion on the unit group; for squarefree q
//! every τ(ψ̄) is nonzero, so the inversion is always defined here.

mod triple;

pub use triple::{g_closed_form, g_triple_brute, verify_gh, GFactorization, GGrid,
    GhReport, Sign, TripleContext, TripleIndex};

use crate::arith::{gcd_u64, gauss_sum, mod_inv, DirichletCharacter, Modulus, QuadraticCharacter};
use crate::arith::enumerate_characters;
use crate::sumutil::CompensatedComplex;
use crate::{Error, Result};
use num_complex::Complex64;

/// Table of e^{2πik/q}, k = 0..q.
fn roots(q: u64) -> Vec<Complex64> {
    (0..q)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / q as f64;
            Complex64::new(t.cos(), t.sin())
        })
        .collect()
}

/// Character-weighted counts of the fiber uv - 1 ≡ s (mod q); H and H* are
/// their Fourier transforms in s.  `restricted` keeps only (uv-1, q) = 1.
fn fiber_weights(modulus: &Modulus, restricted: bool) -> Vec<f64> {
    let q = modulus.q();
    let chi = QuadraticCharacter::new(modulus.clone()).table();
    let mut coef = vec![0.0f64; q as usize];
    for u in 0..q {
        let cu = chi[(u % q) as usize] * chi[((u + 1) % q) as usize];
        if cu == 0 {
            continue;
        }
        for v in 0..q {
            let cv = chi[(v % q) as usize] * chi[((v + 1) % q) as usize];
            if cv == 0 {
                continue;
            }
            let s = (u * v + q - 1) % q;
            if restricted && gcd_u64(s, q) != 1 {
                continue;
            }
            coef[s as usize] += (cu * cv) as f64;
        }
    }
    coef
}

fn transform(coef: &[f64], q: u64) -> Vec<Complex64> {
    let e = roots(q);
    (0..q)
        .map(|w| {
            let mut acc = CompensatedComplex::new();
            for (s, &c) in coef.iter().enumerate() {
                if c != 0.0 {
                    acc.add(e[(s as u64 * w % q) as usize] * c);
                }
            }
            acc.value()
        })
        .collect()
}

/// H(w;q) for a single w.
pub fn h_sum(w: i64, modulus: &Modulus) -> Complex64 {
    let q = modulus.q();
    h_sum_all(modulus)[w.rem_euclid(q as i64) as usize]
}

/// H*(w;q) for a single w.
pub fn h_star_sum(w: i64, modulus: &Modulus) -> Complex64 {
    let q = modulus.q();
    h_star_all(modulus)[w.rem_euclid(q as i64) as usize]
}

/// H(w;q) over a full period of w.
pub fn h_sum_all(modulus: &Modulus) -> Vec<Complex64> {
    if modulus.q() == 1 {
        return vec![Complex64::new(1.0, 0.0)];
    }
    transform(&fiber_weights(modulus, false), modulus.q())
}

/// H*(w;q) over a full period of w.
pub fn h_star_all(modulus: &Modulus) -> Vec<Complex64> {
    if modulus.q() == 1 {
        return vec![Complex64::new(1.0, 0.0)];
    }
    transform(&fiber_weights(modulus, true), modulus.q())
}

/// Right-hand side of the Möbius factorization
/// Σ_{q₁q₂ = q} μ(q₁) χ_{q₁}(-1) H*(q̄₁ w; q₂), assembled from H* tables.
pub fn h_from_h_star(w: i64, modulus: &Modulus) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for q1 in modulus.divisors() {
        let q2 = modulus.codivisor(q1);
        let m2 = Modulus::new(q2)?;
        let mu = modulus.moebius_of_divisor(q1) as f64;
        let chi_m1 = crate::arith::jacobi(-1, q1)? as f64;
        let q1_inv = mod_inv(q1 as i64, q2).ok_or(Error::NoInverse(q1 as i64, q2))?;
        let arg = (q1_inv as i64 * w).rem_euclid(q2 as i64);
        total += h_star_all(&m2)[arg as usize] * mu * chi_m1;
    }
    Ok(total)
}

/// g(χ, ψ) by Fourier inversion of H* over the unit group:
/// g = τ(ψ̄)⁻¹ Σ_{(w,q)=1} H*(w;q) ψ̄(w).
pub fn g_coeff(modulus: &Modulus, psi: &DirichletCharacter) -> Result<Complex64> {
    if modulus.q() == 1 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let tau_bar = gauss_sum(&psi.conjugate());
    if tau_bar.norm() < 1e-12 {
        return Err(Error::GaussSumVanishes);
    }
    let table = h_star_all(modulus);
    let q = modulus.q();
    let mut acc = CompensatedComplex::new();
    for w in 0..q {
        if gcd_u64(w, q) == 1 {
            acc.add(table[w as usize] * psi.eval(w as i64).conj());
        }
    }
    Ok(acc.value() / tau_bar)
}

/// All coefficients g(χ, ψ) paired with their characters.
pub fn g_coeff_table(modulus: &Modulus) -> Result<Vec<(DirichletCharacter, Complex64)>> {
    let table = h_star_all(modulus);
    let q = modulus.q();
    enumerate_characters(modulus)
        .into_iter()
        .map(|psi| {
            let g = if q == 1 {
                Complex64::new(1.0, 0.0)
            } else {
                let tau_bar = gauss_sum(&psi.conjugate());
                if tau_bar.norm() < 1e-12 {
                    return Err(Error::GaussSumVanishes);
                }
                let mut acc = CompensatedComplex::new();
                for w in 0..q {
                    if gcd_u64(w, q) == 1 {
                        acc.add(table[w as usize] * psi.eval(w as i64).conj());
                    }
                }
                acc.value() / tau_bar
            };
            Ok((psi, g))
        })
        .collect()
}

/// (1/φ(q)) Σ_ψ τ(ψ̄) g(χ,ψ) ψ(w) for every w mod q.  Agrees with H* on
/// units; vanishes identically on non-units, where H* need not.
pub fn reconstruct_h_star(modulus: &Modulus) -> Result<Vec<Complex64>> {
    let q = modulus.q();
    let phi = modulus.unit_count() as f64;
    let coeffs = g_coeff_table(modulus)?;
    let taus: Vec<Complex64> = coeffs.iter().map(|(psi, _)| gauss_sum(&psi.conjugate())).collect();
    Ok((0..q)
        .map(|w| {
            let mut acc = CompensatedComplex::new();
            for ((psi, g), tau) in coeffs.iter().zip(&taus) {
                acc.add(*tau * *g * psi.eval(w as i64));
            }
            acc.value() / phi
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::{HHSTAR_ABS_ERR, HSTAR_RECON_OVER_Q};

    fn direct_h(w: i64, q: u64, restricted: bool) -> Complex64 {
        // Independent O(q²) oracle, no fiber grouping.
        let m = Modulus::new(q).unwrap();
        let chi = QuadraticCharacter::new(m).table();
        let e = roots(q);
        let mut total = Complex64::new(0.0, 0.0);
        for u in 0..q as i64 {
            for v in 0..q as i64 {
                if restricted && gcd_u64((u * v - 1).rem_euclid(q as i64) as u64, q) != 1 {
                    continue;
                }
                let c = chi[(u.rem_euclid(q as i64)) as usize]
                    * chi[((u + 1).rem_euclid(q as i64)) as usize]
                    * chi[(v.rem_euclid(q as i64)) as usize]
                    * chi[((v + 1).rem_euclid(q as i64)) as usize];
                if c == 0 {
                    continue;
                }
                let idx = ((u * v - 1) * w).rem_euclid(q as i64) as usize;
                total += e[idx] * c as f64;
            }
        }
        total
    }

    #[test]
    fn h_trivial_modulus() {
        let m = Modulus::new(1).unwrap();
        for w in [0i64, 3, -5] {
            assert_eq!(h_sum(w, &m), Complex64::new(1.0, 0.0));
            assert_eq!(h_star_sum(w, &m), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn h_periodicity_and_direct_oracle() {
        for q in [3u64, 5, 15, 21] {
            let m = Modulus::new(q).unwrap();
            for w in 0..q as i64 {
                let hv = h_sum(w, &m);
                assert!((hv - h_sum(w + q as i64, &m)).norm() < 1e-12);
                assert!((hv - direct_h(w, q, false)).norm() < 1e-9, "H({w};{q})");
                let hs = h_star_sum(w, &m);
                assert!((hs - direct_h(w, q, true)).norm() < 1e-9, "H*({w};{q})");
            }
        }
    }

    #[test]
    fn h_zero_values_mod_3() {
        let m = Modulus::new(3).unwrap();
        // Direct 3×3 double sums.
        assert!((h_sum(0, &m) - direct_h(0, 3, false)).norm() < 1e-12);
        assert!(h_star_sum(0, &m).norm() < 1e-12, "every surviving term hits χ₃(0)");
    }

    #[test]
    fn moebius_factorization_mod_15() {
        let m = Modulus::new(15).unwrap();
        for w in 0..15 {
            let lhs = h_sum(w, &m);
            let rhs = h_from_h_star(w, &m).unwrap();
            assert!((lhs - rhs).norm() < HHSTAR_ABS_ERR, "w={w}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn h_star_reconstruction_on_units() {
        for q in [5u64, 15, 21] {
            let m = Modulus::new(q).unwrap();
            let table = h_star_all(&m);
            let recon = reconstruct_h_star(&m).unwrap();
            for w in 0..q {
                if gcd_u64(w, q) == 1 {
                    assert!(
                        (table[w as usize] - recon[w as usize]).norm()
                            < HSTAR_RECON_OVER_Q * q as f64,
                        "q={q} w={w}"
                    );
                } else {
                    // Off the units the character side vanishes identically.
                    assert!(recon[w as usize].norm() < 1e-8 * q as f64);
                }
            }
        }
    }

    #[test]
    fn g_magnitude_table_is_finite() {
        // For 3 | q the mod-3 local factor of H* is empty, so H* and hence
        // every g(χ,ψ) vanish; the table is still finite and well-defined.
        for q in [5u64, 13, 15, 21, 33] {
            let m = Modulus::new(q).unwrap();
            let max_ratio = g_coeff_table(&m)
                .unwrap()
                .iter()
                .map(|(_, g)| g.norm() / q as f64)
                .fold(0.0f64, f64::max);
            assert!(max_ratio.is_finite());
            if q % 3 != 0 {
                assert!(max_ratio > 0.0);
            } else {
                assert!(max_ratio < 1e-12);
            }
        }
    }
}
