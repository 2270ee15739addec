//! The classical complete exponential sums: Kloosterman S(m,n;c), Ramanujan
//! R_k(m) = S(0,m;k), and Gauss sums τ(ψ).

use super::{gcd_i64, gcd_u64, mod_inv, DirichletCharacter, Modulus};
use crate::sumutil::{CompensatedComplex, CompensatedSum};
use crate::tolerances::{KLOOSTERMAN_IM_OVER_SQRT_C, RAMANUJAN_ROUND};
use crate::{Error, Result};
use num_complex::Complex64;

const KLOOSTERMAN_C_CAP: u64 = 100_000;

/// Table of e^{2πik/c} for k = 0..c.
pub(crate) fn root_table(c: u64) -> Vec<Complex64> {
    (0..c)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / c as f64;
            Complex64::new(theta.cos(), theta.sin())
        })
        .collect()
}

/// S(m,n;c) = Σ_{x mod c, (x,c)=1} e((mx + n x̄)/c).
///
/// The sum is real by the substitution x → -x; the imaginary residue is
/// asserted below `1e-9 √c` and dropped.
pub fn kloosterman(m: i64, n: i64, c: u64) -> Result<f64> {
    if c == 0 {
        return Err(Error::NonPositiveModulus(0));
    }
    if c > KLOOSTERMAN_C_CAP {
        return Err(Error::BudgetExceeded(format!(
            "kloosterman modulus {c} above cap {KLOOSTERMAN_C_CAP}"
        )));
    }
    if c == 1 {
        return Ok(1.0);
    }
    let roots = root_table(c);
    let m = m.rem_euclid(c as i64) as u64;
    let n = n.rem_euclid(c as i64) as u64;
    let mut acc = CompensatedComplex::new();
    for x in 1..c {
        if gcd_u64(x, c) != 1 {
            continue;
        }
        let xbar = mod_inv(x as i64, c).expect("x is a unit");
        let idx = ((m * x + n * xbar) % c) as usize;
        acc.add(roots[idx]);
    }
    let s = acc.value();
    let tol = KLOOSTERMAN_IM_OVER_SQRT_C * (c as f64).sqrt();
    if s.im.abs() > tol {
        return Err(Error::ImaginaryResidue { c, residue: s.im.abs(), tolerance: tol });
    }
    Ok(s.re)
}

/// S(m,n;c) for all residues m,n mod c, as a row-major c×c table.
pub fn kloosterman_table(c: u64) -> Vec<f64> {
    let cu = c as usize;
    if c == 1 {
        return vec![1.0];
    }
    let roots = root_table(c);
    let units: Vec<(u64, u64)> = (1..c)
        .filter(|&x| gcd_u64(x, c) == 1)
        .map(|x| (x, mod_inv(x as i64, c).expect("unit")))
        .collect();
    let mut out = vec![0.0f64; cu * cu];
    for m in 0..c {
        for n in 0..c {
            let mut acc = CompensatedSum::new();
            for &(x, xbar) in &units {
                acc.add(roots[((m * x + n * xbar) % c) as usize].re);
            }
            out[(m * c + n) as usize] = acc.value();
        }
    }
    out
}

/// Ramanujan sum R_k(m) = S(0,m;k), evaluated by direct trigonometric
/// accumulation over the units and rounded to the nearest integer.
pub fn ramanujan(k: u64, m: i64) -> Result<i64> {
    if k == 0 {
        return Err(Error::NonPositiveModulus(0));
    }
    if k == 1 {
        return Ok(1);
    }
    let roots = root_table(k);
    let m = m.rem_euclid(k as i64) as u64;
    let mut acc = CompensatedSum::new();
    for x in 1..k {
        if gcd_u64(x, k) == 1 {
            acc.add(roots[(m * x % k) as usize].re);
        }
    }
    let r = acc.value();
    let rounded = r.round();
    if (r - rounded).abs() > RAMANUJAN_ROUND {
        return Err(Error::InvalidParameter(format!(
            "ramanujan({k},{m}) = {r} is not near an integer"
        )));
    }
    Ok(rounded as i64)
}

/// Independent evaluation of R_k(m) by the divisor formula
/// Σ_{d | (k,m)} d μ(k/d); used as the exact oracle in tests and suites.
pub fn ramanujan_mobius(k: u64, m: i64) -> i64 {
    let g = if m == 0 { k } else { gcd_i64(m, k as i64) as u64 };
    let mut total = 0i64;
    for d in 1..=g {
        if g % d == 0 && k % d == 0 {
            total += d as i64 * moebius(k / d);
        }
    }
    total
}

fn moebius(mut n: u64) -> i64 {
    let mut omega = 0u32;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            omega += 1;
        }
        p += 1;
    }
    if n > 1 {
        omega += 1;
    }
    if omega % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Gauss sum τ(ψ) = Σ_{a mod q} ψ(a) e(a/q).  |τ(ψ)| = √q for primitive ψ.
pub fn gauss_sum(psi: &DirichletCharacter) -> Complex64 {
    let q = psi.modulus().q();
    if q == 1 {
        return Complex64::new(1.0, 0.0);
    }
    let roots = root_table(q);
    let mut acc = CompensatedComplex::new();
    for a in 0..q {
        let v = psi.values()[a as usize];
        if v.norm_sqr() > 0.0 {
            acc.add(v * roots[a as usize]);
        }
    }
    acc.value()
}

/// Gauss sum of the quadratic character via its per-prime table; avoids
/// materializing a DirichletCharacter when only χ_q is needed.
pub fn gauss_sum_quadratic(modulus: &Modulus) -> Complex64 {
    let q = modulus.q();
    if q == 1 {
        return Complex64::new(1.0, 0.0);
    }
    let chi = super::QuadraticCharacter::new(modulus.clone());
    let roots = root_table(q);
    let mut acc = CompensatedComplex::new();
    for a in 0..q {
        let v = chi.eval(a as i64);
        if v != 0 {
            acc.add(roots[a as usize] * v as f64);
        }
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{divisor_count, enumerate_characters, jacobi};

    #[test]
    fn kloosterman_trivial_cases() {
        // Single empty residue class mod 1.
        assert_eq!(kloosterman(3, 7, 1).unwrap(), 1.0);
        // Unique unit x = 1 mod 2: e((1+1)/2) = e(1) = 1.
        assert!((kloosterman(1, 1, 2).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kloosterman_reduces_to_ramanujan_at_m_zero() {
        for k in [2u64, 6, 12, 35] {
            for m in [0i64, 1, 2, 5, -3] {
                let s = kloosterman(0, m, k).unwrap();
                let r = ramanujan(k, m).unwrap();
                assert!((s - r as f64).abs() < 1e-9, "k={k} m={m}");
            }
        }
    }

    #[test]
    fn ramanujan_examples() {
        // R_k(0) = φ(k).
        assert_eq!(ramanujan(12, 0).unwrap(), 4);
        assert_eq!(ramanujan(1, 17).unwrap(), 1);
        // Direct sum over units mod 6: e(2/6)+e(10/6) = 2cos(2π/3) = -1.
        assert_eq!(ramanujan(6, 2).unwrap(), -1);
    }

    #[test]
    fn ramanujan_matches_mobius_formula() {
        for k in 1..=60u64 {
            for m in -5..=60i64 {
                assert_eq!(
                    ramanujan(k, m).unwrap(),
                    ramanujan_mobius(k, m),
                    "k={k} m={m}"
                );
            }
        }
    }

    #[test]
    fn ramanujan_bounded_by_gcd() {
        for k in 1..=40u64 {
            for m in 1..=40i64 {
                assert!(ramanujan(k, m).unwrap().abs() <= gcd_i64(m, k as i64));
            }
        }
    }

    #[test]
    fn weil_bound_small_moduli() {
        for c in 1..=60u64 {
            let table = kloosterman_table(c);
            let d = divisor_count(c) as f64;
            for m in 0..c {
                for n in 0..c {
                    let s = table[(m * c + n) as usize];
                    let g = gcd_u64(gcd_u64(m, n), c).max(1) as f64;
                    assert!(
                        s.abs() <= d * g.sqrt() * (c as f64).sqrt() + 1e-9,
                        "c={c} m={m} n={n}: |{s}|"
                    );
                }
            }
        }
    }

    #[test]
    fn twisted_multiplicativity() {
        // S(m,n;c₁c₂) = S(m c̄₂², n; c₁) S(m c̄₁², n; c₂) for coprime parts.
        for (c1, c2) in [(3u64, 4u64), (5, 8), (7, 9), (11, 13)] {
            let c = c1 * c2;
            let c1b = mod_inv(c1 as i64, c2).unwrap() as i64;
            let c2b = mod_inv(c2 as i64, c1).unwrap() as i64;
            for m in 0..4i64 {
                for n in 0..4i64 {
                    let lhs = kloosterman(m, n, c).unwrap();
                    let rhs = kloosterman(m * c2b * c2b, n, c1).unwrap()
                        * kloosterman(m * c1b * c1b, n, c2).unwrap();
                    assert!((lhs - rhs).abs() < 1e-8, "c1={c1} c2={c2} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn gauss_sum_magnitudes_and_principal() {
        for q in [5u64, 13, 15, 21, 33] {
            let m = Modulus::new(q).unwrap();
            for psi in enumerate_characters(&m) {
                let tau = gauss_sum(&psi);
                if psi.is_primitive() {
                    assert!(
                        (tau.norm() - (q as f64).sqrt()).abs() < 1e-9,
                        "q={q} exponents {:?}",
                        psi.exponents()
                    );
                }
                if psi.is_principal() {
                    // τ(ψ₀) = μ(q) = R_q(1).
                    let r = ramanujan(q, 1).unwrap() as f64;
                    assert!((tau - Complex64::new(r, 0.0)).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn quadratic_gauss_sum_mod_5() {
        // q ≡ 1 mod 4: τ(χ_q) = +√q, real.  Direct 5-term oracle.
        let m = Modulus::new(5).unwrap();
        let tau = gauss_sum_quadratic(&m);
        let direct: Complex64 = (0..5)
            .map(|a| {
                let chi = jacobi(a, 5).unwrap() as f64;
                let theta = 2.0 * std::f64::consts::PI * a as f64 / 5.0;
                Complex64::new(theta.cos(), theta.sin()) * chi
            })
            .sum();
        assert!((tau - direct).norm() < 1e-12);
        assert!((tau - Complex64::new(5f64.sqrt(), 0.0)).norm() < 1e-10);
    }
}
