//! The verification suites: each acceptance criterion as a function from
//! options to check rows, shared by the CLI and the acceptance test target.

use crate::arith::{
    divisor_count, enumerate_characters, gauss_sum, gcd_u64, kloosterman_table, ramanujan,
    ramanujan_mobius, Modulus,
};
use crate::charsums::{h_from_h_star, h_sum_all, reconstruct_h_star, verify_gh, Sign};
use crate::lfunc::{
    bilinear_check, bound_budget, c_cap_cos, hecke_relation_check, large_sieve_check,
    sixth_moment, BilinearParams, BudgetCase, BudgetInput, LEngine,
};
use crate::oscillatory::poisson::suggested_m_cut;
use crate::oscillatory::{
    b0_table, bholo_bessel, bholo_integral, double_oscillatory, envelope_mellin_length,
    k_transform_with_table, k_transform_zero_nested, phi_envelope, poisson_check,
    stationary_phase_1d, DoubleOscParams, KTransformParams, KernelEvaluator, KernelSpec,
    LinearPhase, PhiKind, PoissonParams, Profile, QuadraticPhase, SmoothWeight, SpectralWindow,
    Stationarity, TestKernel,
};
use crate::quadforms::{
    class_number_check, congruence_count, count_region, heegner_points, sample_fundamental,
    CongruenceMode, Region,
};
use crate::report::{CheckRow, RunReport};
use crate::tolerances as tol;
use crate::{Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub quick: bool,
    pub seed: u64,
    pub tolerance_scale: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { quick: false, seed: 1, tolerance_scale: 1.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Arith,
    Charsums,
    Heegner,
    Kernels,
    Poisson,
    Lfunc,
    All,
}

impl SuiteName {
    pub fn parse(s: &str) -> Option<SuiteName> {
        Some(match s {
            "arith" => SuiteName::Arith,
            "charsums" => SuiteName::Charsums,
            "heegner" => SuiteName::Heegner,
            "kernels" => SuiteName::Kernels,
            "poisson" => SuiteName::Poisson,
            "lfunc" => SuiteName::Lfunc,
            "all" => SuiteName::All,
            _ => return None,
        })
    }
}

fn rng_for(opts: &SuiteOptions, label: &str) -> ChaCha8Rng {
    // Stream-split: one seeded generator per named check.
    let mut h = opts.seed;
    for b in label.bytes() {
        h = h.wrapping_mul(0x100000001b3).wrapping_add(b as u64);
    }
    ChaCha8Rng::seed_from_u64(h)
}

fn odd_squarefree_up_to(max: u64) -> Vec<u64> {
    (1..=max)
        .step_by(2)
        .filter(|&q| Modulus::new(q).is_ok())
        .collect()
}

/// max over the large-conductor half divided by max over the small half.
fn doubling_trend(mut keyed: Vec<(f64, f64)>) -> f64 {
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mid = keyed.len() / 2;
    let small = keyed[..mid].iter().map(|p| p.1).fold(0.0f64, f64::max);
    let large = keyed[mid..].iter().map(|p| p.1).fold(0.0f64, f64::max);
    large / small.max(1e-300)
}

// ---------------------------------------------------------------- criterion 1

/// Brute-force G (grid path) equals the closed form on every admissible
/// triple; |G| ≤ 1e-10/c on every inadmissible one.
pub fn criterion_g_identity(opts: &SuiteOptions) -> Result<Vec<CheckRow>> {
    let (qs, rs): (Vec<u64>, Vec<u64>) = if opts.quick {
        (vec![5, 15], vec![1, 2])
    } else {
        (vec![5, 13, 15, 21, 33], vec![1, 2, 3, 4])
    };
    let mut tasks = Vec::new();
    for &q in &qs {
        for &r in &rs {
            for sign in [Sign::Plus, Sign::Minus] {
                tasks.push((q, r, sign));
            }
        }
    }
    let reports: Vec<_> = tasks
        .par_iter()
        .map(|&(q, r, sign)| verify_gh(&Modulus::new(q)?, r, sign, 150))
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for rep in reports {
        let label = format!("gh q={} r={} sign={}", rep.q, rep.r, rep.sign.label());
        rows.push(CheckRow::bounded(
            format!("{label} max-abs-err"),
            rep.max_abs_err,
            tol::GH_ABS_ERR * opts.tolerance_scale,
        ));
        rows.push(CheckRow::bounded(
            format!("{label} vanishing-violations"),
            rep.vanishing_violations as f64,
            0.0,
        ));
    }
    Ok(rows)
}

// ---------------------------------------------------------------- criterion 2

/// Möbius factorization of H through H* for all w and all odd squarefree
/// q ≤ 105, and Fourier reconstruction of H* from g(χ,ψ) on units.
pub fn criterion_h_identities(opts: &SuiteOptions) -> Result<Vec<CheckRow>> {
    let cap = if opts.quick { 45 } else { 105 };
    let qs = odd_squarefree_up_to(cap);
    let per_q: Vec<(f64, f64, f64)> = qs
        .par_iter()
        .map(|&q| {
            let m = Modulus::new(q)?;
            let table = h_sum_all(&m);
            let mut max_hh = 0.0f64;
            for (w, &hv) in table.iter().enumerate() {
                let rhs = h_from_h_star(w as i64, &m)?;
                max_hh = max_hh.max((hv - rhs).norm());
            }
            let star = crate::charsums::h_star_all(&m);
            let recon = reconstruct_h_star(&m)?;
            let mut max_recon = 0.0f64;
            let mut h_over_q = 0.0f64;
            for w in 0..q {
                if gcd_u64(w, q) == 1 {
                    max_recon =
                        max_recon.max((star[w as usize] - recon[w as usize]).norm() / q as f64);
                    h_over_q = h_over_q.max(table[w as usize].norm() / q as f64);
                }
            }
            Ok((max_hh, max_recon, h_over_q))
        })
        .collect::<Result<_>>()?;
    let max_hh = per_q.iter().map(|t| t.0).fold(0.0f64, f64::max);
    let max_recon = per_q.iter().map(|t| t.1).fold(0.0f64, f64::max);
    let big_h = per_q.iter().map(|t| t.2).fold(0.0f64, f64::max);
    Ok(vec![
        CheckRow::bounded(
            format!("h-moebius-factorization max-err (q ≤ {cap})"),
            max_hh,
            tol::HHSTAR_ABS_ERR * opts.tolerance_scale,
        ),
        CheckRow::bounded(
            "h-star reconstruction on units max-err/q",
            max_recon,
            tol::HSTAR_RECON_OVER_Q * opts.tolerance_scale,
        ),
        CheckRow::recorded("empirical max |H(w;q)|/q on units", big_h),
    ])
}

// ---------------------------------------------------------------- criterion 3

/// Weil bound for all c ≤ 300 and all (m,n); |τ(ψ)| = √q for primitive ψ,
/// q ≤ 200; Ramanujan sums equal their divisor-formula values, k,m ≤ 200.
pub fn criterion_classical_sums(opts: &SuiteOptions) -> Result<Vec<CheckRow>> {
    let (c_max, q_max, km_max) = if opts.quick { (100, 60, 60) } else { (300, 200, 200) };

    let weil_excess = (1..=c_max)
        .into_par_iter()
        .map(|c| {
            let table = kloosterman_table(c);
            let d = divisor_count(c) as f64;
            let mut excess = f64::NEG_INFINITY;
            for m in 0..c {
                for n in 0..c {
                    let bound = d * (gcd_u64(gcd_u64(m, n), c).max(1) as f64).sqrt()
                        * (c as f64).sqrt();
                    excess = excess.max(table[(m * c + n) as usize].abs() - bound);
                }
            }
            excess
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);

    let gauss_err = odd_squarefree_up_to(q_max)
        .par_iter()
        .map(|&q| {
            let m = Modulus::new(q).expect("squarefree by construction");
            enumerate_characters(&m)
                .iter()
                .filter(|psi| psi.is_primitive())
                .map(|psi| (gauss_sum(psi).norm() - (q as f64).sqrt()).abs())
                .fold(0.0f64, f64::max)
        })
        .reduce(|| 0.0, f64::max);

    let mut ramanujan_mismatch = 0u64;
    for k in 1..=km_max {
        for m in 0..=km_max as i64 {
            if ramanujan(k, m)? != ramanujan_mobius(k, m) {
                ramanujan_mismatch += 1;
            }
        }
    }

    Ok(vec![
        CheckRow::bounded(
            format!("weil-bound max excess (c ≤ {c_max})"),
            weil_excess,
            1e-7 * opts.tolerance_scale,
        ),
        CheckRow::bounded(
            format!("gauss-sum | |τ| - √q | (primitive ψ, q ≤ {q_max})"),
            gauss_err,
            tol::GAUSS_MAGNITUDE_ERR * opts.tolerance_scale,
        ),
        CheckRow::bounded(
            format!("ramanujan divisor-formula mismatches (k,m ≤ {km_max})"),
            ramanujan_mismatch as f64,
            0.0,
        ),
    ])
}

// ---------------------------------------------------------------- criterion 4

/// Enumeration vs. analytic class-number oracle on sampled odd fundamental
/// discriminants up to 10⁶.
pub fn criterion_class_numbers(opts: &SuiteOptions) -> Result<Vec<CheckRow>> {
    let count = if opts.quick { 40 } else { 220 };
    let ds = sample_fundamental(3, 1_000_000, count, opts.seed ^ 0xc1a55);
    let results: Vec<(u64, f64)> = ds
        .par_iter()
        .map(|&d| class_number_check(d))
        .collect::<Result<_>>()?;
    let mismatches = results
        .iter()
        .filter(|(he, ha)| *he != ha.round() as u64)
        .count();
    let max_dev = results
        .iter()
        .map(|(he, ha)| (*he as f64 - ha).abs())
        .fold(0.0f64, f64::max);
    Ok(vec![
        CheckRow::bounded(
            format!("class-number agreement mismatches ({} samples)", results.len()),
            mismatches as f64,
            0.0,
        ),
        CheckRow::bounded("class-number max |enum - analytic|", max_dev, 0.45),
        CheckRow::at_least("class-number samples checked", results.len() as f64, count as f64 * 0.9),
    ])
}

// ---------------------------------------------------------------- criterion 5

/// Shrinking-set counts at η = 0.48 over dyadic blocks of D, with the
/// lower-bound trend ratio and the disk upper bound.
pub fn criterion_heegner_shrinking(opts: &SuiteOptions) -> Result<Vec<CheckRow>> {
    let eta = 0.48f64;
    let per_block = if opts.quick { 4 } else { 12 };
    let blocks: Vec<(u64, u64)> = (0..6)
        .map(|k| (10_000u64 << k, (10_000u64 << (k + 1)).min(1_000_000)))
        .collect();
    let mut rows = Vec::new();
    let mut all_ok = 0u64;
    let mut total = 0u64;
    let mut block_min_ratio = f64::INFINITY;
    let mut disk_violations = 0u64;
    for (i, &(lo, hi)) in blocks.iter().enumerate() {
        let ds = sample_fundamental(lo, hi, per_block, opts.seed ^ (0xb10c << i));
        let mut min_ratio = f64::INFINITY;
        for &d in &ds {
            total += 1;
            let set = heegner_points(d)?;
            let h = set.class_number as f64;
            let v = (d as f64).powf(0.5 - eta);
            let ca = congruence_count(d, eta, CongruenceMode::AScale)?;
            let cb = congruence_count(d, eta, CongruenceMode::BScale)?;
            if ca >= 1 && cb >= 1 {
                all_ok += 1;
            }
            min_ratio = min_ratio.min(ca as f64 * v / h).min(cb as f64 * v / h);
            // Disk upper bound: count ≤ 4 (h/V² + D^{5/12 + ε}).
            let disk = Region::Disk { v: v.max(1.001), x0: 0.0, y0: 1.8 };
            let (count, _) = count_region(d, &disk)?;
            let cap = 4.0 * (h / (v * v) + (d as f64).powf(5.0 / 12.0 + tol::EPSILON_EXPONENT));
            if count as f64 > cap {
                disk_violations += 1;
            }
        }
        block_min_ratio = block_min_ratio.min(min_ratio);
        rows.push(CheckRow::recorded(
            format!("shrinking-set block [{lo},{hi}) min count·D^(1/2-η)/h"),
            min_ratio,
        ));
    }
    rows.push(CheckRow::bounded(
        "shrinking-set configurations with empty window",
        (total - all_ok) as f64,
        0.0,
    ));
    rows.push(CheckRow::at_least(
        "shrinking-set lower-bound constant across blocks",
        block_min_ratio,
        1e-6,
    ));
    rows.push(CheckRow::bounded("disk upper-bound violations", disk_violations as f64, 0.0));
    Ok(rows)
}

// ---------------------------------------------------------------- criterion 6

/// Poisson summation identity over the acceptance matrix.
pub fn criterion_poisson(opts: &SuiteOptions) -> Result<Vec<CheckRow>> {
    let matrix: Vec<(u64, u64)> = if opts.quick {
        vec![(1, 1), (5, 1)]
    } else {
        vec![(1, 1), (1, 2), (5, 1), (5, 2), (15, 1), (15, 2)]
    };
    let n = [20.0f64, 20.0, 30.0];
    let mut tasks = Vec::new();
    for &(q, r) in &matrix {
        for sign in [Sign::Plus, Sign::Minus] {
            tasks.push((q, r, sign));
        }
    }
    let outcomes: Vec<_> = tasks
        .iter()
        .map(|&(q, r, sign)| {
            let c = (q * r) as f64;
            let u_mid: f64 = n.iter().map(|s| 1.5 * s).product();
            let x_mid = 4.0 * std::f64::consts::PI * u_mid.sqrt() / c;
            let p = PoissonParams {
                modulus: Modulus::new(q)?,
                r,
                sign,
                weights: [
                    SmoothWeight::new(n[0])?,
                    SmoothWeight::new(n[1])?,
                    SmoothWeight::new(n[2])?,
                ],
                kernel: TestKernel::GaussianCosine { freq: 0.03, scale: 1.5 * x_mid },
                m_cut: suggested_m_cut(q * r, n[0].min(n[1]).min(n[2])),
            };
            Ok((q, r, sign, poisson_check(&p)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for (q, r, sign, out) in outcomes {
        rows.push(CheckRow::bounded(
            format!("poisson q={q} r={r} sign={} rel-diff (m_cut={})", sign.label(), out.m_cut),
            out.rel_diff,
            tol::POISSON_REL_DIFF * opts.tolerance_scale,
        ));
    }
    Ok(rows)
}

// ---------------------------------------------------------------- criterion 7

/// Stationary phase: first-order rate, nonstationary smallness, and the
/// double-integral magnitude/phase/support behavior.
pub fn criterion_stationary_phase(opts: &SuiteOptions) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    let x = 10.0;
    let w = SmoothWeight::new(x)?;

    let mut errs = Vec::new();
    for y in [1e2, 1e3, 1e4] {
        let out = stationary_phase_1d(&w, &QuadraticPhase { y, x, center: 1.5 })?;
        if !matches!(out.stationarity, Stationarity::Unique { .. }) {
            return Err(Error::InvalidParameter("quadratic phase must have one critical point".into()));
        }
        rows.push(CheckRow::bounded(
            format!("stationary-phase rel-err at Y=1e{}", (y.log10()) as i32),
            out.rel_err,
            tol::SP_RELERR_FACTOR / y * opts.tolerance_scale,
        ));
        errs.push(out.rel_err);
    }
    let rate = errs[0] / errs[2];
    rows.push(CheckRow::bounded(
        "stationary-phase first-order rate deviation (Y 1e2→1e4)",
        (rate / 100.0).max(100.0 / rate),
        3.0,
    ));

    let lin = stationary_phase_1d(&w, &LinearPhase(100.0))?;
    rows.push(CheckRow::bounded(
        "nonstationary linear phase |I|/X",
        lin.quadrature.norm() / x,
        tol::SP_NONSTATIONARY_OVER_X * opts.tolerance_scale,
    ));

    // Double integral at X = 10³.
    let xo = 1e3;
    let (x1, x2) = (8.0 * xo, 8.0 * xo);
    let (t1, t2) = (1.45 * x1, 1.45 * x2);
    let alpha = 4.0 * xo * x1 * x2;
    let base = DoubleOscParams {
        alpha,
        beta: alpha / (t2 * t1 * t1),
        gamma: alpha / (t1 * t2 * t2),
        x1,
        x2,
        x: xo,
    };
    let f1 = SmoothWeight::new(x1)?;
    let f2 = SmoothWeight::new(x2)?;
    let adm = double_oscillatory(&base, &f1, &f2)?;
    let ratio = adm.quadrature.norm() / adm.predicted_mag;
    rows.push(CheckRow::recorded("double-oscillatory magnitude ratio |I|/pred", ratio));
    rows.push(CheckRow::bounded(
        "double-oscillatory magnitude ratio deviation",
        ratio.max(1.0 / ratio),
        50.0,
    ));
    rows.push(CheckRow::bounded(
        "double-oscillatory phase residual (rad)",
        adm.phase_residual,
        0.2 * opts.tolerance_scale,
    ));

    let mut mixed = base;
    mixed.gamma = -mixed.gamma;
    let mixed_out = double_oscillatory(&mixed, &f1, &f2)?;
    rows.push(CheckRow::bounded(
        "double-oscillatory mixed-sign |I| / (X₁X₂/X)",
        mixed_out.quadrature.norm() / (x1 * x2 / xo),
        tol::SMALLNESS_EPS * opts.tolerance_scale,
    ));
    let mut off = base;
    off.beta *= 30.0;
    let off_out = double_oscillatory(&off, &f1, &f2)?;
    rows.push(CheckRow::bounded(
        "double-oscillatory support-violation |I| / (X₁X₂/X)",
        off_out.quadrature.norm() / (x1 * x2 / xo),
        tol::SMALLNESS_EPS * opts.tolerance_scale,
    ));
    Ok(rows)
}

// ---------------------------------------------------------------- criterion 8

/// Kernel checks: holomorphic two-path agreement, B± support and size, the
/// K-transform m-box decay with slowly-varying phase, and the Φ envelope.
pub fn criterion_kernels(opts: &SuiteOptions) -> Result<Vec<CheckRow>> {
    let ts = opts.tolerance_scale;
    let mut rows = Vec::new();

    // Holomorphic kernel, both paths, T = 40 below the window validation
    // threshold (kept cheap on purpose).
    {
        let w = SpectralWindow::unchecked(40.0, 4.0);
        let dt = 160.0;
        let mut worst = 0.0f64;
        for parity in 0..4u8 {
            for i in 0..=9 {
                let x = 20.0 + 180.0 * i as f64 / 9.0;
                let p1 = bholo_bessel(x, &w, parity);
                let p2 = bholo_integral(x, &w, parity);
                let denom = p1.abs().max(tol::BHOLO_FLOOR_OVER_DT * dt);
                worst = worst.max((p1 - p2.re).abs() / denom);
            }
        }
        rows.push(CheckRow::bounded("bholo two-path rel agreement", worst, tol::BHOLO_REL * ts));
    }

    let window = SpectralWindow::new(200.0, 4.0)?;
    let dt = window.scale();
    let ev = KernelEvaluator::new(window, Profile::DerivedFromH)?;

    rows.push(CheckRow::bounded(
        "bplus truncation |B⁺(ΔT/20)|/ΔT",
        ev.bplus(dt / 20.0)?.abs() / dt,
        tol::SMALLNESS_EPS * ts,
    ));
    for x in [window.t_center() / 100.0, 100.0 * window.t_center()] {
        rows.push(CheckRow::bounded(
            format!("bminus support |B⁻({x})|/ΔT"),
            ev.bminus(x)?.abs() / dt,
            tol::SMALLNESS_EPS * ts,
        ));
    }
    // Small-argument bound constant for B⁺.
    let mut c_small = 0.0f64;
    for i in 1..=10 {
        let x = window.t_center() * i as f64 / 10.0;
        c_small = c_small.max(ev.bplus(x)?.abs() / (window.delta() * x));
    }
    rows.push(CheckRow::recorded("bplus small-x constant |B⁺|/(Δx)", c_small));
    rows.push(CheckRow::bounded("bplus small-x constant cap", c_small, 10.0));

    // Oscillatory-regime envelope |B⁺(x)| √x / ΔT on [10ΔT, 100ΔT].
    let n_env = if opts.quick { 4 } else { 8 };
    let env: Vec<f64> = (0..n_env)
        .into_par_iter()
        .map(|i| {
            let x = 10.0 * dt * (10f64).powf(i as f64 / (n_env - 1) as f64);
            Ok(ev.bplus(x)?.abs() * x.sqrt() / dt)
        })
        .collect::<Result<_>>()?;
    let env_max = env.iter().fold(0.0f64, |a, &b| a.max(b));
    rows.push(CheckRow::recorded("bplus oscillatory envelope max |B⁺|√x/ΔT", env_max));
    rows.push(CheckRow::bounded("bplus oscillatory envelope cap", env_max, 20.0));

    // K-transform box decay and phase extraction.
    rows.extend(k_transform_rows(opts)?);

    // Φ envelope constants.
    {
        let w = SpectralWindow::new(200.0, 4.0)?;
        let t = w.t_center();
        let x_cosh = t;
        let c_cosh = phi_envelope(x_cosh, PhiKind::Cosh, &w)?
            / (envelope_mellin_length(x_cosh, PhiKind::Cosh, &w) / t);
        rows.push(CheckRow::recorded("phi-envelope cosh C at X=T", c_cosh));
        rows.push(CheckRow::bounded("phi-envelope cosh cap", c_cosh, 10.0));
        let x_sinh = t.sqrt();
        let c_sinh = phi_envelope(x_sinh, PhiKind::Sinh, &w)?
            / (envelope_mellin_length(x_sinh, PhiKind::Sinh, &w) / t);
        rows.push(CheckRow::recorded("phi-envelope sinh C at X=√T", c_sinh));
        rows.push(CheckRow::bounded("phi-envelope sinh cap", c_sinh, 10.0));
        // The cosh-family bound U/T = T/X is exactly linear in 1/X.
        let b1 = envelope_mellin_length(x_cosh, PhiKind::Cosh, &w) / t;
        let b10 = envelope_mellin_length(10.0 * x_cosh, PhiKind::Cosh, &w) / t;
        rows.push(CheckRow::bounded(
            "phi-envelope cosh bound scaling residual",
            (10.0 * b10 - b1).abs() / b1,
            1e-12,
        ));
    }
    Ok(rows)
}

fn k_transform_rows(opts: &SuiteOptions) -> Result<Vec<CheckRow>> {
    let ts = opts.tolerance_scale;
    let window = SpectralWindow::new(100.0, 5.0)?;
    let weights = [SmoothWeight::new(96.0)?, SmoothWeight::new(96.0)?, SmoothWeight::new(96.0)?];
    let spec = KernelSpec::b0(PhiKind::Cosh, -1.0, Profile::GaussianModel);
    let base = KTransformParams { m: [0, 0, 0], c: 17, weights, spec, window };
    let table = b0_table(&base)?;
    let scale = 96.0f64.powi(3);
    let k_at = |m: [i64; 3]| -> Result<Complex64> {
        let p = KTransformParams { m, ..base };
        k_transform_with_table(&p, &table, 1e-8 * scale)
    };

    let mut rows = Vec::new();
    // m-box scale: M_i = √(N₁N₂N₃)/N_i ≈ 9.8; the -cosh branch localizes
    // at negative m.
    let peak = k_at([-10, -10, -10])?.norm();
    rows.push(CheckRow::recorded("k-transform |K| at the m-box center", peak / scale));
    let decay_points: Vec<[i64; 3]> = if opts.quick {
        vec![[-40, -10, -10]]
    } else {
        vec![[-40, -10, -10], [-10, -40, -10], [-10, -10, -40]]
    };
    let decays: Vec<(usize, f64)> = decay_points
        .par_iter()
        .enumerate()
        .map(|(i, &m)| Ok((i, k_at(m)?.norm())))
        .collect::<Result<_>>()?;
    for (i, mag) in decays {
        rows.push(CheckRow::bounded(
            format!("k-transform decay 4× outside box (axis {})", i + 1),
            mag / peak,
            tol::SMALLNESS_EPS * ts,
        ));
    }

    // Phase extraction: arg(K e_c(m₁m₂m₃)) drifts slowly in unit m-steps
    // near the top of the box.
    let steps: Vec<i64> = if opts.quick { vec![-20, -19, -18] } else { vec![-21, -20, -19, -18, -17] };
    let vals: Vec<Complex64> = steps
        .par_iter()
        .map(|&m1| k_at([m1, -19, -19]))
        .collect::<Result<_>>()?;
    let mut max_step = 0.0f64;
    for (i, pair) in vals.windows(2).enumerate() {
        let correct = |v: Complex64, m1: i64| {
            let prod = (m1 * -19 * -19) as f64 / 17.0;
            v * crate::special::cis(2.0 * std::f64::consts::PI * prod)
        };
        let a = correct(pair[0], steps[i]).arg();
        let b = correct(pair[1], steps[i + 1]).arg();
        let mut d = b - a;
        while d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        }
        while d < -std::f64::consts::PI {
            d += 2.0 * std::f64::consts::PI;
        }
        max_step = max_step.max(d.abs());
    }
    rows.push(CheckRow::bounded(
        "k-transform corrected phase step (rad per unit m₁)",
        max_step,
        0.3 * ts,
    ));

    // m = 0 cross-check against nested separable quadratures (c = 1 keeps
    // the kernel alive on the whole u-line).
    let zero = KTransformParams {
        m: [0, 0, 0],
        c: 1,
        weights: [SmoothWeight::new(14.0)?, SmoothWeight::new(14.0)?, SmoothWeight::new(14.0)?],
        spec,
        window,
    };
    let ztable = b0_table(&zero)?;
    let a = k_transform_with_table(&zero, &ztable, 1e-7 * 14.0f64.powi(3))?;
    let b = k_transform_zero_nested(&zero, &ztable)?;
    // K(0) is a near-zero oscillatory integral (no stationary point in u),
    // so the two paths are compared absolutely at quadrature tolerance.
    rows.push(CheckRow::bounded(
        "k-transform m=0 two-path agreement / N₁N₂N₃",
        (a - b).norm() / 14.0f64.powi(3),
        tol::SMALLNESS_EPS * ts,
    ));
    Ok(rows)
}

// ---------------------------------------------------------------- criterion 9

/// L-function checks: functional-equation residuals, subconvexity-ratio
/// doubling trend, sixth-moment normalized trend, Hecke relation, and the
/// bound-budget audit points.
pub fn criterion_lfunctions(opts: &SuiteOptions) -> Result<Vec<CheckRow>> {
    let ts = opts.tolerance_scale;
    let mut rows = Vec::new();

    let fe_qs: Vec<u64> = if opts.quick { vec![5, 13] } else { vec![5, 13, 17, 29] };
    let fe_worst = fe_qs
        .par_iter()
        .map(|&q| {
            let engine = LEngine::new(q)?;
            Ok([0.0f64, 10.0, 50.0]
                .iter()
                .map(|&t| engine.functional_equation_residual(t))
                .fold(0.0f64, f64::max))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0f64, f64::max);
    rows.push(CheckRow::bounded(
        "functional-equation residual max",
        fe_worst,
        tol::FE_RESIDUAL_REL * ts,
    ));

    // Subconvexity ratio trend over q ≤ 101, t ≤ 100.
    let qs: Vec<u64> = odd_squarefree_up_to(101).into_iter().filter(|&q| q >= 5).collect();
    let qs = if opts.quick { qs.into_iter().step_by(4).collect::<Vec<_>>() } else { qs };
    let t_grid: Vec<f64> = (0..=10).map(|i| 10.0 * i as f64).collect();
    let keyed: Vec<(f64, f64)> = qs
        .par_iter()
        .flat_map_iter(|&q| {
            let engine = LEngine::new(q).expect("odd squarefree");
            t_grid
                .iter()
                .map(|&t| {
                    let ratio = engine.evaluate(t).value.norm()
                        / ((1.0 + t) * q as f64).powf(1.0 / 6.0);
                    (((1.0 + t) * q as f64), ratio)
                })
                .collect::<Vec<_>>()
                .into_iter()
        })
        .collect();
    let max_ratio = keyed.iter().map(|p| p.1).fold(0.0f64, f64::max);
    rows.push(CheckRow::recorded("subconvexity ratio max over grid", max_ratio));
    rows.push(CheckRow::bounded(
        "subconvexity doubling trend (large-half / small-half)",
        doubling_trend(keyed.clone()),
        tol::DOUBLING_TREND_FACTOR * ts,
    ));
    // Convexity comparison along the diagonal: ratio·((1+t)q)^{1/6-1/4} → 0.
    let mut diag: Vec<(f64, f64)> = keyed
        .iter()
        .map(|&(cond, ratio)| (cond, ratio * cond.powf(1.0 / 6.0 - 0.25)))
        .collect();
    diag.sort_by(|a, b| a.0.total_cmp(&b.0));
    let head = diag[..diag.len() / 4].iter().map(|p| p.1).fold(0.0f64, f64::max);
    let tail = diag[3 * diag.len() / 4..].iter().map(|p| p.1).fold(0.0f64, f64::max);
    rows.push(CheckRow::bounded("convexity-gap trend tail/head", tail / head.max(1e-300), 1.0));

    // Sixth moments.
    let moment_qs: Vec<u64> = if opts.quick { vec![5, 13] } else { vec![5, 13, 17, 29] };
    let moment_ts: Vec<f64> = if opts.quick { vec![10.0, 30.0] } else { vec![10.0, 30.0, 100.0] };
    let mut tasks = Vec::new();
    for &q in &moment_qs {
        for &t in &moment_ts {
            tasks.push((q, t));
        }
    }
    let moments: Vec<(f64, f64)> = tasks
        .par_iter()
        .map(|&(q, t)| {
            let m = sixth_moment(q, t, 5.0)?;
            Ok((q as f64 * t, m.normalized))
        })
        .collect::<Result<_>>()?;
    let max_norm = moments.iter().map(|p| p.1).fold(0.0f64, f64::max);
    rows.push(CheckRow::recorded("sixth-moment normalized max", max_norm));
    rows.push(CheckRow::bounded(
        "sixth-moment doubling trend (large-half / small-half)",
        doubling_trend(moments),
        tol::DOUBLING_TREND_FACTOR * ts,
    ));
    // Monotone sanity at one configuration.
    let half = sixth_moment(5, 10.0, 2.5)?;
    let whole = sixth_moment(5, 10.0, 5.0)?;
    rows.push(CheckRow::bounded(
        "sixth-moment interval monotonicity",
        (half.moment - whole.moment).max(0.0),
        1e-9 * whole.moment.max(1.0),
    ));

    // Hecke relation residual.
    let mut hecke_worst = 0.0f64;
    for t in [0.0, 1.0, 10.0] {
        for n1 in 1..=50u64 {
            for n2 in 1..=50u64 {
                hecke_worst = hecke_worst.max(hecke_relation_check(t, n1, n2));
            }
        }
    }
    rows.push(CheckRow::bounded(
        "hecke-relation residual max (n ≤ 50)",
        hecke_worst,
        tol::HECKE_RESIDUAL * ts,
    ));

    // Bound-budget audit points.
    let (q, t, delta) = (7.0, 1000.0, 10.0);
    let n = [q * t, q * t, q * t];
    for (case, label) in [
        (BudgetCase::CosCosh, "cos-cosh"),
        (BudgetCase::SinSinhOsc, "sin-sinh oscillatory"),
        (BudgetCase::SinSinhFlat, "sin-sinh flat"),
    ] {
        let c = match case {
            BudgetCase::CosCosh => c_cap_cos(n, t, delta),
            _ => 0.0,
        };
        let rep = bound_budget(&BudgetInput { n, c, q, t, delta, case });
        rows.push(CheckRow::bounded(
            format!("bound-budget {label} bracket/cap"),
            rep.bracket / rep.cap,
            1.0,
        ));
    }
    Ok(rows)
}

// --------------------------------------------------------------- criterion 10

/// Large sieve and bilinear forms: exact homogeneity, the N = 1 closed
/// form, and stability of the recorded constants.
pub fn criterion_sieve_bilinear(opts: &SuiteOptions) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();

    // N = 1 closed form.
    let one = [Complex64::new(1.0, 0.0)];
    let out = large_sieve_check(15, 10.0, &one)?;
    let expect = 2.0 * 10.0 * 8.0 / (15.0 * 10.0 + 1.0);
    rows.push(CheckRow::bounded(
        "large-sieve N=1 closed-form residual",
        (out.ratio - expect).abs(),
        1e-8,
    ));

    // Exact degree-0 homogeneity.
    let mut rng = rng_for(opts, "sieve-homogeneity");
    let coeffs: Vec<Complex64> = (0..50)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let scaled: Vec<Complex64> = coeffs.iter().map(|c| c * 13.7).collect();
    let a = large_sieve_check(15, 10.0, &coeffs)?;
    let b = large_sieve_check(15, 10.0, &scaled)?;
    rows.push(CheckRow::bounded(
        "large-sieve homogeneity residual",
        (a.ratio - b.ratio).abs() / a.ratio.max(1e-300),
        1e-10,
    ));

    // Draw-to-draw stability at (q,U,N) = (15,10,50).
    let draws = if opts.quick { 20 } else { 100 };
    let mut rng = rng_for(opts, "sieve-draws");
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for _ in 0..draws {
        let coeffs: Vec<Complex64> = (0..50)
            .map(|_| Complex64::new(if rng.random_bool(0.5) { 1.0 } else { -1.0 }, 0.0))
            .collect();
        let out = large_sieve_check(15, 10.0, &coeffs)?;
        lo = lo.min(out.ratio);
        hi = hi.max(out.ratio);
    }
    rows.push(CheckRow::recorded("large-sieve ratio range (15,10,50) low", lo));
    rows.push(CheckRow::recorded("large-sieve ratio range (15,10,50) high", hi));
    rows.push(CheckRow::bounded(
        format!("large-sieve ratio drift across {draws} draws"),
        hi / lo.max(1e-300),
        tol::DOUBLING_TREND_FACTOR,
    ));

    // Stability across a parameter grid (cells picked with comparable
    // orthogonality mass 2Uφ(q)/(qU+N)).
    let cells: [(u64, f64, usize); 4] = [(5, 10.0, 25), (13, 10.0, 40), (21, 10.0, 40), (33, 10.0, 50)];
    let mut means = Vec::new();
    for (q, u, nn) in cells {
        let mut rng = rng_for(opts, &format!("sieve-cell-{q}-{nn}"));
        let reps = if opts.quick { 5 } else { 25 };
        let mut acc = 0.0;
        for _ in 0..reps {
            let coeffs: Vec<Complex64> = (0..nn)
                .map(|_| Complex64::new(if rng.random_bool(0.5) { 1.0 } else { -1.0 }, 0.0))
                .collect();
            acc += large_sieve_check(q, u, &coeffs)?.ratio;
        }
        means.push(acc / reps as f64);
    }
    let cell_lo = means.iter().cloned().fold(f64::INFINITY, f64::min);
    let cell_hi = means.iter().cloned().fold(0.0f64, f64::max);
    rows.push(CheckRow::bounded(
        "large-sieve constant drift across parameter grid",
        cell_hi / cell_lo.max(1e-300),
        tol::DOUBLING_TREND_FACTOR,
    ));

    // Bilinear form: all-ones reference cell plus drift cells.
    let ones = |n: usize| vec![Complex64::new(1.0, 0.0); n];
    let ref_cell = BilinearParams {
        q: 15,
        u_max: 5.0,
        m_blocks: [4, 4, 4],
        r_max: 3,
        b1: 1,
        b2: 1,
        a_scale: 1.0,
        coprime: false,
    };
    let ref_out = bilinear_check(&ref_cell, &ones(4), &ones(4), &ones(4), &ones(3))?;
    rows.push(CheckRow::recorded("bilinear all-ones ratio (q=15)", ref_out.ratio));
    rows.push(CheckRow::bounded("bilinear all-ones ratio cap", ref_out.ratio, 5.0));

    let mut bl_means = Vec::new();
    for q in [5u64, 13, 29] {
        let p = BilinearParams { q, ..ref_cell.clone() };
        let mut rng = rng_for(opts, &format!("bilinear-{q}"));
        let reps = if opts.quick { 3 } else { 10 };
        let mut acc = 0.0;
        for _ in 0..reps {
            let draw = |n: usize, rng: &mut ChaCha8Rng| -> Vec<Complex64> {
                (0..n)
                    .map(|_| Complex64::new(if rng.random_bool(0.5) { 1.0 } else { -1.0 }, 0.0))
                    .collect()
            };
            let (a, b, g, d) =
                (draw(4, &mut rng), draw(4, &mut rng), draw(4, &mut rng), draw(3, &mut rng));
            acc += bilinear_check(&p, &a, &b, &g, &d)?.ratio;
        }
        bl_means.push(acc / reps as f64);
    }
    let bl_lo = bl_means.iter().cloned().fold(f64::INFINITY, f64::min);
    let bl_hi = bl_means.iter().cloned().fold(0.0f64, f64::max);
    rows.push(CheckRow::recorded("bilinear mean ratio low cell", bl_lo));
    rows.push(CheckRow::recorded("bilinear mean ratio high cell", bl_hi));
    rows.push(CheckRow::bounded(
        "bilinear constant drift across parameter grid",
        bl_hi / bl_lo.max(1e-300),
        tol::DOUBLING_TREND_FACTOR,
    ));

    // Coprime-restricted variant runs and stays bounded.
    let cop = BilinearParams { coprime: true, q: 13, ..ref_cell };
    let cop_out = bilinear_check(&cop, &ones(4), &ones(4), &ones(4), &ones(3))?;
    rows.push(CheckRow::bounded("bilinear coprime-variant ratio cap", cop_out.ratio, 5.0));

    Ok(rows)
}

// ------------------------------------------------------------------- assembly

pub fn criterion_rows(index: u8, opts: &SuiteOptions) -> Result<Vec<CheckRow>> {
    match index {
        1 => criterion_g_identity(opts),
        2 => criterion_h_identities(opts),
        3 => criterion_classical_sums(opts),
        4 => criterion_class_numbers(opts),
        5 => criterion_heegner_shrinking(opts),
        6 => criterion_poisson(opts),
        7 => criterion_stationary_phase(opts),
        8 => criterion_kernels(opts),
        9 => criterion_lfunctions(opts),
        10 => criterion_sieve_bilinear(opts),
        _ => Err(Error::InvalidParameter(format!("no criterion {index}"))),
    }
}

pub fn run_suite(name: SuiteName, opts: &SuiteOptions) -> Result<RunReport> {
    let start = std::time::Instant::now();
    let indices: Vec<u8> = match name {
        SuiteName::Arith => vec![3],
        SuiteName::Charsums => vec![1, 2],
        SuiteName::Heegner => vec![4, 5],
        SuiteName::Kernels => vec![7, 8],
        SuiteName::Poisson => vec![6],
        SuiteName::Lfunc => vec![9, 10],
        SuiteName::All => (1..=10).collect(),
    };
    let mut rows = Vec::new();
    for i in indices {
        rows.extend(criterion_rows(i, opts)?);
    }
    let config = serde_json::json!({
        "suite": format!("{name:?}").to_lowercase(),
        "quick": opts.quick,
        "seed": opts.seed,
        "tolerance_scale": opts.tolerance_scale,
    });
    Ok(RunReport::new(config, rows, start.elapsed().as_millis()))
}
