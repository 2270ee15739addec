//! Empirical constants for the hybrid large-sieve inequality
//!
//!   ∫_{-U}^{U} Σ_ψ |Σ_{n≤N} a_n ψ(n) n^{iu}|² du ≤ C (qU + N) Σ |a_n|²,
//!
//! and for the bilinear inequality bounding u-integrals of quadrilinear
//! sums against H*(b̄₁r b₂ m₁m₂m₃; q) (m₁m₂m₃/(ar))^{iu}.

use crate::arith::{enumerate_characters, gcd_u64, mod_inv, Modulus};
use crate::charsums::h_star_all;
use crate::oscillatory::quadrature::{integrate_real, panels_for_phase};
use crate::special::cis;
use crate::tolerances::EPSILON_EXPONENT;
use crate::{Error, Result};
use num_complex::Complex64;

#[derive(Clone, Copy, Debug)]
pub struct SieveOutcome {
    pub lhs: f64,
    /// (qU + N) Σ |a_n|²
    pub rhs_scale: f64,
    pub ratio: f64,
}

/// Mean square of character-twisted Dirichlet polynomials over the family
/// (all ψ mod q) × (|u| ≤ U), against the large-sieve scale.
pub fn large_sieve_check(q: u64, u_max: f64, coeffs: &[Complex64]) -> Result<SieveOutcome> {
    if u_max < 1.0 {
        return Err(Error::InvalidParameter("need U ≥ 1".into()));
    }
    let modulus = Modulus::new(q)?;
    let chars = enumerate_characters(&modulus);
    let n_len = coeffs.len();
    let norm_sq: f64 = coeffs.iter().map(|a| a.norm_sqr()).sum();
    if norm_sq == 0.0 {
        return Ok(SieveOutcome { lhs: 0.0, rhs_scale: 0.0, ratio: 0.0 });
    }

    // Precompute ψ(n) a_n per character; the u-integrand is then a short
    // trigonometric-polynomial mean square.
    let twisted: Vec<Vec<Complex64>> = chars
        .iter()
        .map(|psi| {
            coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| a * psi.eval(i as i64 + 1))
                .collect()
        })
        .collect();
    let log_n: Vec<f64> = (1..=n_len).map(|n| (n as f64).ln()).collect();

    let integrand = |u: f64| -> f64 {
        twisted
            .iter()
            .map(|row| {
                let mut s = Complex64::new(0.0, 0.0);
                for (a, &ln) in row.iter().zip(&log_n) {
                    s += a * cis(u * ln);
                }
                s.norm_sqr()
            })
            .sum()
    };

    let budget = 2.0 * u_max * (n_len as f64 + 1.0).ln();
    let lhs = integrate_real(
        integrand,
        -u_max,
        u_max,
        panels_for_phase(budget + 10.0),
        1e-9 * (q as f64 * u_max + n_len as f64) * norm_sq,
    )?;
    let rhs_scale = (q as f64 * u_max + n_len as f64) * norm_sq;
    Ok(SieveOutcome { lhs, rhs_scale, ratio: lhs / rhs_scale })
}

/// Parameters of the bilinear check: dyadic blocks m_i ∈ [M_i, 2M_i),
/// r ≤ R with (r, q) = 1, twist residues (b₁, b₂), and the archimedean
/// scale a > 0.
#[derive(Clone, Debug)]
pub struct BilinearParams {
    pub q: u64,
    pub u_max: f64,
    pub m_blocks: [u64; 3],
    pub r_max: u64,
    pub b1: u64,
    pub b2: u64,
    pub a_scale: f64,
    /// Restrict to (m₃, r) = 1 and use the d-weighted norm.
    pub coprime: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct BilinearOutcome {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

const BILINEAR_Q_CAP: u64 = 33;
const BILINEAR_M_CAP: u64 = 12;

/// LHS of the bilinear inequality by direct evaluation (H* from its
/// definition), RHS with the ε-factor instantiated as q^0.1.
pub fn bilinear_check(
    p: &BilinearParams,
    alpha: &[Complex64],
    beta: &[Complex64],
    gamma: &[Complex64],
    delta: &[Complex64],
) -> Result<BilinearOutcome> {
    if p.q > BILINEAR_Q_CAP || p.m_blocks.iter().any(|&m| m > BILINEAR_M_CAP) || p.r_max > BILINEAR_M_CAP
    {
        return Err(Error::BudgetExceeded(format!(
            "bilinear sizes q={} m={:?} R={} above caps",
            p.q, p.m_blocks, p.r_max
        )));
    }
    if p.a_scale <= 0.0 {
        return Err(Error::InvalidParameter("a must be positive".into()));
    }
    let modulus = Modulus::new(p.q)?;
    if gcd_u64(p.b1 * p.b2 % p.q.max(1), p.q) != 1 {
        return Err(Error::InvalidParameter("(b1 b2, q) must be 1".into()));
    }
    let hstar = h_star_all(&modulus);
    let q = p.q;

    // Index ranges: m_i ∈ [M_i, 2M_i), r ∈ [1, R] with (r, q) = 1.
    let m_range = |mi: u64| mi..(2 * mi);
    let mut terms: Vec<(Complex64, f64)> = Vec::new(); // (coefficient · H*, log(m₁m₂m₃/(a r)))
    for (i1, m1) in m_range(p.m_blocks[0]).enumerate() {
        for (i2, m2) in m_range(p.m_blocks[1]).enumerate() {
            for (i3, m3) in m_range(p.m_blocks[2]).enumerate() {
                for r in 1..=p.r_max {
                    if gcd_u64(r, q) != 1 {
                        continue;
                    }
                    if p.coprime && gcd_u64(m3, r) != 1 {
                        continue;
                    }
                    let c = alpha[i1] * beta[i2] * gamma[i3] * delta[(r - 1) as usize];
                    if c.norm_sqr() == 0.0 {
                        continue;
                    }
                    let b1r_inv =
                        mod_inv((p.b1 * r % q) as i64, q).ok_or(Error::NoInverse(r as i64, q))?;
                    let arg =
                        (b1r_inv as u128 * (p.b2 as u128) * (m1 as u128) % q as u128 * (m2 as u128)
                            % q as u128
                            * (m3 as u128)
                            % q as u128) as usize;
                    let h = hstar[arg];
                    let log_ratio = ((m1 * m2 * m3) as f64 / (p.a_scale * r as f64)).ln();
                    terms.push((c * h, log_ratio));
                }
            }
        }
    }

    let integrand = |u: f64| -> f64 {
        let mut s = Complex64::new(0.0, 0.0);
        for &(c, lr) in &terms {
            s += c * cis(u * lr);
        }
        s.norm()
    };
    let max_log = terms.iter().map(|&(_, lr)| lr.abs()).fold(0.0f64, f64::max);
    let lhs = integrate_real(
        integrand,
        -p.u_max,
        p.u_max,
        panels_for_phase(2.0 * p.u_max * max_log + 10.0),
        1e-9 * terms.iter().map(|(c, _)| c.norm()).sum::<f64>().max(1.0),
    )?;

    let mf = [p.m_blocks[0] as f64, p.m_blocks[1] as f64, p.m_blocks[2] as f64];
    let qf = q as f64;
    let norm_sq = if !p.coprime {
        let na: f64 = alpha.iter().map(|x| x.norm_sqr()).sum();
        let nb: f64 = beta.iter().map(|x| x.norm_sqr()).sum();
        let ng: f64 = gamma.iter().map(|x| x.norm_sqr()).sum();
        let nd: f64 = delta.iter().map(|x| x.norm_sqr()).sum();
        na * nb * ng * nd
    } else {
        // Σ_d d^{1+ε} |α β γ_{dm₃} δ_{dr}|² over indices that stay in range.
        let na: f64 = alpha.iter().map(|x| x.norm_sqr()).sum();
        let nb: f64 = beta.iter().map(|x| x.norm_sqr()).sum();
        let mut tail = 0.0;
        for d in 1..=p.r_max {
            let dw = (d as f64).powf(1.0 + EPSILON_EXPONENT);
            for m3 in m_range(p.m_blocks[2]) {
                for r in 1..=p.r_max {
                    let (dm3, dr) = (d * m3, d * r);
                    if m_range(p.m_blocks[2]).contains(&dm3) && dr <= p.r_max {
                        tail += dw
                            * (gamma[(dm3 - p.m_blocks[2]) as usize]
                                * delta[(dr - 1) as usize])
                                .norm_sqr();
                    }
                }
            }
        }
        na * nb * tail
    };
    let rhs = qf.powf(0.5 + EPSILON_EXPONENT)
        * (qf * p.u_max + mf[0] * mf[1]).sqrt()
        * (qf * p.u_max + mf[2] * p.r_max as f64).sqrt()
        * norm_sq.sqrt();
    let ratio = if rhs > 0.0 { lhs / rhs } else { 0.0 };
    Ok(BilinearOutcome { lhs, rhs, ratio })
}
