//! Multiplicativity of the divisor-symbol coefficients η_t(n) = Σ_{ab=n}
//! (a/b)^{it}: the Hecke relation η(n₁)η(n₂) = Σ_{d | (n₁,n₂)} η(n₁n₂/d²).

use crate::arith::gcd_u64;
use num_complex::Complex64;

/// η_t(n) = Σ_{ab = n} (a/b)^{it}.
pub fn eta(t: f64, n: u64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 1..=n {
        if n % a == 0 {
            let b = n / a;
            let ratio = a as f64 / b as f64;
            acc += Complex64::new(0.0, t * ratio.ln()).exp();
        }
    }
    acc
}

/// |η(n₁)η(n₂) - Σ_{d | (n₁,n₂)} η(n₁n₂/d²)|.
pub fn hecke_relation_check(t: f64, n1: u64, n2: u64) -> f64 {
    let lhs = eta(t, n1) * eta(t, n2);
    let g = gcd_u64(n1, n2);
    let mut rhs = Complex64::new(0.0, 0.0);
    for d in 1..=g {
        if g % d == 0 {
            rhs += eta(t, n1 * n2 / (d * d));
        }
    }
    (lhs - rhs).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::HECKE_RESIDUAL;

    #[test]
    fn unit_and_coprime_cases() {
        assert_eq!(hecke_relation_check(0.7, 1, 1), 0.0);
        // Coprime arguments reduce to plain multiplicativity.
        assert!(hecke_relation_check(1.3, 4, 9) < HECKE_RESIDUAL);
    }

    #[test]
    fn shared_factor_case() {
        assert!(hecke_relation_check(1.0, 2, 2) < HECKE_RESIDUAL);
        assert!(hecke_relation_check(10.0, 12, 18) < HECKE_RESIDUAL);
    }

    #[test]
    fn full_small_grid() {
        for t in [0.0, 1.0, 10.0] {
            for n1 in 1..=30u64 {
                for n2 in 1..=30u64 {
                    let r = hecke_relation_check(t, n1, n2);
                    assert!(r < HECKE_RESIDUAL, "t={t} n1={n1} n2={n2}: {r}");
                }
            }
        }
    }
}
