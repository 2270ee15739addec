//! Binary quadratic forms ax² + bxy + cy² of odd fundamental discriminant
//! -D, their Heegner points τ = (-b + i√D)/(2a) in the standard fundamental
//! domain, and class numbers checked two independent ways.

mod regions;

pub use regions::{count_region, equidistribution_report, EquidistRow, Region};

use crate::arith::kronecker;
use crate::special::erfc;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A positive-definite integral form (a, b, c) with b² - 4ac = -D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// |b| ≤ a ≤ c, with b ≥ 0 whenever |b| = a or a = c.
    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }
}

/// The Heegner point of a form: x = -b/(2a), y = √D/(2a).
#[derive(Clone, Copy, Debug)]
pub struct HeegnerPoint {
    pub x: f64,
    pub y: f64,
    pub source: QuadForm,
}

/// All Heegner points of discriminant -D with the class number attached.
#[derive(Clone, Debug)]
pub struct HeegnerSet {
    pub d: u64,
    pub points: Vec<HeegnerPoint>,
    pub class_number: u64,
}

/// Validates that -D is an odd fundamental discriminant: D ≡ 3 (mod 4)
/// and squarefree.
pub fn check_fundamental(d: u64) -> Result<()> {
    if d == 0 || d % 4 != 3 {
        return Err(Error::NotFundamental(d, "need D ≡ 3 (mod 4)".into()));
    }
    let mut p = 2u64;
    while p * p <= d {
        if d % (p * p) == 0 {
            return Err(Error::NotFundamental(d, format!("divisible by {p}²")));
        }
        p += 1;
    }
    Ok(())
}

/// All reduced forms of discriminant -D, sorted lexicographically.
/// b runs over odd |b| ≤ √(D/3); for each b, divisors a of (b² + D)/4 in
/// [|b|, √((b²+D)/4)] complete to a reduced triple.
pub fn reduced_forms(d: u64) -> Result<Vec<QuadForm>> {
    check_fundamental(d)?;
    let di = d as i64;
    let bmax = (d as f64 / 3.0).sqrt().floor() as i64;
    let mut forms = Vec::new();
    let mut b = -bmax;
    if b % 2 == 0 {
        b += 1;
    }
    while b <= bmax {
        let m = (b * b + di) / 4;
        debug_assert_eq!((b * b + di) % 4, 0, "odd b forces 4 | b² + D");
        let mut a = b.abs().max(1);
        while a * a <= m {
            if m % a == 0 {
                let f = QuadForm { a, b, c: m / a };
                if f.is_reduced() {
                    forms.push(f);
                }
            }
            a += 1;
        }
        b += 2;
    }
    forms.sort();
    Ok(forms)
}

/// Class number by exhaustive reduced-form enumeration.
pub fn class_number(d: u64) -> Result<u64> {
    Ok(reduced_forms(d)?.len() as u64)
}

/// Smoothed series for L(1, χ_{-D}), with χ_{-D}(n) = (-D|n) the odd real
/// primitive character of conductor D:
///
///   L(1,χ) = Σ_{n≥1} χ(n) [ e^{-πn²/D}/n + (π/√D) erfc(n√(π/D)) ],
///
/// from the incomplete-gamma split of the completed L-function at s = 1.
/// Terms decay like e^{-πn²/D}; the cutoff keeps relative error ≤ 1e-6.
pub fn l_one_chi(d: u64) -> f64 {
    let df = d as f64;
    let nmax = (3.7 * df.sqrt()).ceil() as u64 + 8;
    let pref = std::f64::consts::PI / df.sqrt();
    let mut total = 0.0f64;
    for n in 1..=nmax {
        let chi = kronecker(-(d as i64), n);
        if chi == 0 {
            continue;
        }
        let nf = n as f64;
        let gauss = (-std::f64::consts::PI * nf * nf / df).exp() / nf;
        let tail = pref * erfc(nf * (std::f64::consts::PI / df).sqrt());
        total += chi as f64 * (gauss + tail);
    }
    total
}

/// Class number two ways: exhaustive enumeration, and the Dirichlet formula
/// h = w √D L(1, χ_{-D}) / (2π) with w = 6 for D = 3 and w = 2 otherwise.
pub fn class_number_check(d: u64) -> Result<(u64, f64)> {
    let h_enum = class_number(d)?;
    let w = if d == 3 { 6.0 } else { 2.0 };
    let h_analytic = w * (d as f64).sqrt() * l_one_chi(d) / (2.0 * std::f64::consts::PI);
    Ok((h_enum, h_analytic))
}

/// One Heegner point per reduced form; all lie in the fundamental domain
/// |x| ≤ 1/2, x² + y² ≥ 1 with the left/lower boundary convention.
pub fn heegner_points(d: u64) -> Result<HeegnerSet> {
    let forms = reduced_forms(d)?;
    let sd = (d as f64).sqrt();
    let points = forms
        .iter()
        .map(|&f| HeegnerPoint {
            x: -(f.b as f64) / (2.0 * f.a as f64),
            y: sd / (2.0 * f.a as f64),
            source: f,
        })
        .collect::<Vec<_>>();
    let class_number = points.len() as u64;
    Ok(HeegnerSet { d, points, class_number })
}

/// Which coefficient of (a, b) carries the D^η size constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CongruenceMode {
    AScale,
    BScale,
}

/// Count of reduced representatives (a, b) of b² ≡ -D (mod 4a) with the
/// designated coefficient in [D^η/4, D^η/2] — the window induced by the
/// dyadic region families (y ∈ [V, 2V] with V = D^{1/2-η} for a-scaling).
pub fn congruence_count(d: u64, eta: f64, mode: CongruenceMode) -> Result<u64> {
    if !(eta > 4.0 / 9.0 && eta <= 0.5) {
        return Err(Error::InvalidParameter(format!("eta = {eta} outside (4/9, 1/2]")));
    }
    let scale = (d as f64).powf(eta);
    let (lo, hi) = (scale / 4.0, scale / 2.0);
    let forms = reduced_forms(d)?;
    let count = forms
        .iter()
        .filter(|f| {
            let v = match mode {
                CongruenceMode::AScale => f.a as f64,
                CongruenceMode::BScale => f.b.abs() as f64,
            };
            (lo..=hi).contains(&v)
        })
        .count();
    Ok(count as u64)
}

/// Deterministic sample of odd fundamental discriminants in [lo, hi].
pub fn sample_fundamental(lo: u64, hi: u64, count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut guard = 0u32;
    while out.len() < count && guard < 1_000_000 {
        guard += 1;
        let d = rng.random_range(lo..=hi) | 3; // force ≡ 3 (mod 4)
        if d <= hi && check_fundamental(d).is_ok() && !out.contains(&d) {
            out.push(d);
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::FUNDAMENTAL_DOMAIN_TOL;

    /// Exhaustive oracle: scan all |b| ≤ a ≤ c with 4ac - b² = D.
    fn brute_reduced(d: u64) -> Vec<QuadForm> {
        let di = d as i64;
        let mut out = Vec::new();
        let amax = (d as f64 / 3.0).sqrt() as i64 + 1;
        for a in 1..=amax {
            for b in -a..=a {
                let num = b * b + di;
                if num % (4 * a) != 0 {
                    continue;
                }
                let f = QuadForm { a, b, c: num / (4 * a) };
                if f.discriminant() == -di && f.is_reduced() {
                    out.push(f);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn small_discriminants() {
        assert_eq!(reduced_forms(3).unwrap(), vec![QuadForm { a: 1, b: 1, c: 1 }]);
        assert_eq!(reduced_forms(7).unwrap(), vec![QuadForm { a: 1, b: 1, c: 2 }]);
        let f23 = reduced_forms(23).unwrap();
        assert_eq!(
            f23,
            vec![
                QuadForm { a: 1, b: 1, c: 6 },
                QuadForm { a: 2, b: -1, c: 3 },
                QuadForm { a: 2, b: 1, c: 3 },
            ]
        );
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for d in [3u64, 7, 11, 15, 23, 31, 47, 71, 103, 479, 1003, 2047] {
            if check_fundamental(d).is_err() {
                continue;
            }
            assert_eq!(reduced_forms(d).unwrap(), brute_reduced(d), "D = {d}");
        }
    }

    #[test]
    fn rejects_non_fundamental() {
        assert!(reduced_forms(4).is_err());
        assert!(reduced_forms(27).is_err()); // 3³, not squarefree
        assert!(reduced_forms(21).is_err()); // ≡ 1 (mod 4)
    }

    #[test]
    fn class_number_two_methods() {
        // Known h(-D): includes the D = 3 exceptional-unit case (w = 6).
        for (d, h) in [(3u64, 1u64), (7, 1), (23, 3), (47, 5), (71, 7), (479, 25)] {
            let (he, ha) = class_number_check(d).unwrap();
            assert_eq!(he, h, "enumeration D={d}");
            assert_eq!(ha.round() as u64, h, "analytic D={d} got {ha}");
            assert!((ha - h as f64).abs() < 1e-3, "analytic precision D={d}: {ha}");
        }
    }

    #[test]
    fn class_number_agreement_sampled() {
        for d in sample_fundamental(10_000, 1_000_000, 12, 7) {
            let (he, ha) = class_number_check(d).unwrap();
            assert_eq!(he, ha.round() as u64, "D={d}: enum {he} vs analytic {ha}");
        }
    }

    #[test]
    fn heegner_points_in_fundamental_domain() {
        for d in [3u64, 7, 23, 71, 1003, 9587] {
            if check_fundamental(d).is_err() {
                continue;
            }
            let set = heegner_points(d).unwrap();
            assert_eq!(set.class_number, set.points.len() as u64);
            for p in &set.points {
                assert!(p.x.abs() <= 0.5 + FUNDAMENTAL_DOMAIN_TOL);
                assert!(p.x * p.x + p.y * p.y >= 1.0 - FUNDAMENTAL_DOMAIN_TOL);
            }
        }
        // The minimal discriminants pin the boundary points.
        let s3 = heegner_points(3).unwrap();
        assert!((s3.points[0].x + 0.5).abs() < 1e-15);
        assert!((s3.points[0].y - 3f64.sqrt() / 2.0).abs() < 1e-15);
        let s7 = heegner_points(7).unwrap();
        assert!((s7.points[0].x + 0.5).abs() < 1e-15);
        assert!((s7.points[0].y - 7f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn congruence_windows_nonempty_for_large_d() {
        for d in sample_fundamental(100_000, 900_000, 6, 11) {
            assert!(
                congruence_count(d, 0.5, CongruenceMode::AScale).unwrap() >= 1,
                "a-window D={d}"
            );
            assert!(
                congruence_count(d, 0.5, CongruenceMode::BScale).unwrap() >= 1,
                "b-window D={d}"
            );
        }
    }

    #[test]
    fn congruence_rejects_bad_eta() {
        assert!(congruence_count(10007, 0.3, CongruenceMode::AScale).is_err());
    }
}
