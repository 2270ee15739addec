//! Command-line entry point: every experiment and verification suite with
//! reproducible configuration, CSV/JSON output written atomically, and a
//! nonzero exit status whenever an asserted check fails.

mod config;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use config::ExperimentConfig;
use sixmoment::arith::Modulus;
use sixmoment::charsums::{verify_gh, Sign};
use sixmoment::lfunc::{
    bound_budget, c_cap_cos, dirichlet_l, large_sieve_check, sixth_moment, BudgetCase,
    BudgetInput,
};
use sixmoment::oscillatory::poisson::suggested_m_cut;
use sixmoment::oscillatory::{
    bholo_bessel, poisson_check, KernelEvaluator, PhiKind, PoissonParams, Profile, SmoothWeight,
    SpectralWindow, TestKernel,
};
use sixmoment::quadforms::{count_region, equidistribution_report, sample_fundamental, Region};
use sixmoment::report::{csv_document, fmt_f64, write_atomic, CheckRow, RunReport};
use sixmoment::suites::{run_suite, SuiteName, SuiteOptions};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "sixmoment", version, about = "Verification workbench for complete character sums, Heegner point counting, oscillatory kernel transforms, and quadratic Dirichlet L-function experiments")]
struct Cli {
    /// Seed for every randomized check in this run.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Multiplies every assertion threshold.
    #[arg(long, global = true, default_value_t = 1.0)]
    tolerance_scale: f64,
    /// Write the primary artifact (CSV or JSON) here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Run reduced matrices.
    #[arg(long, global = true)]
    quick: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One central value L(1/2 + it, χ_q).
    Lvalue(LvalueArgs),
    /// Sixth-moment integral over [T, T+Δ].
    Moment(MomentArgs),
    /// Hybrid large-sieve ratio over random coefficient draws.
    SieveCheck(SieveArgs),
    /// Bound-budget audit of one parameter point.
    Budget(BudgetArgs),
    /// Kernel transform values over an x-grid.
    Kernel(KernelArgs),
    /// Poisson summation cross-check at one (q, r, sign).
    PoissonCheck(PoissonArgs),
    /// Heegner point counting.
    #[command(subcommand)]
    Heegner(HeegnerCmd),
    /// Exhaustive closed-form verification of the triple sum at one (q, r).
    VerifyGh(VerifyGhArgs),
    /// Run a named verification suite.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct LvalueArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    t: f64,
}

#[derive(Args)]
struct MomentArgs {
    #[arg(long)]
    q: u64,
    #[arg(long = "T")]
    t_lo: f64,
    #[arg(long)]
    delta: f64,
}

#[derive(Args)]
struct SieveArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    u: f64,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 20)]
    trials: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum BudgetCaseArg {
    CosCosh,
    SinSinhOsc,
    SinSinhFlat,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, value_enum)]
    case: BudgetCaseArg,
    #[arg(long)]
    q: f64,
    #[arg(long = "T")]
    t: f64,
    #[arg(long)]
    delta: f64,
    #[arg(long)]
    n1: f64,
    #[arg(long)]
    n2: f64,
    #[arg(long)]
    n3: f64,
    /// Modulus scale C; defaults to the kernel-support cap for cos-cosh.
    #[arg(long)]
    c: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelKindArg {
    Bplus,
    Bminus,
    Bholo,
    B0,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    DerivedFromH,
    GaussianModel,
}

#[derive(Clone, Copy, ValueEnum)]
enum PhiArg {
    Cos,
    Cosh,
    Sin,
    Sinh,
}

#[derive(Args)]
struct KernelArgs {
    #[arg(long, value_enum)]
    kind: KernelKindArg,
    #[arg(long = "T")]
    t: f64,
    #[arg(long)]
    delta: f64,
    /// lo:hi:n
    #[arg(long)]
    x_grid: String,
    #[arg(long, value_enum, default_value = "derived-from-h")]
    profile: ProfileArg,
    #[arg(long, value_enum, default_value = "cosh")]
    phi: PhiArg,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    phi_sign: f64,
    /// Parity class a mod 4 for the holomorphic kernel.
    #[arg(long, default_value_t = 0)]
    parity: u8,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Args)]
struct PoissonArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    r: u64,
    #[arg(long)]
    n1: f64,
    #[arg(long)]
    n2: f64,
    #[arg(long)]
    n3: f64,
    #[arg(long, value_enum, default_value = "plus")]
    sign: SignArg,
}

#[derive(Subcommand)]
enum HeegnerCmd {
    /// Count points of one discriminant in a region.
    Count(HeegnerCountArgs),
    /// Equidistribution table over sampled discriminants.
    Report(HeegnerReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionArg {
    Full,
    BoxNearY1,
    HighCuspBox,
    Disk,
}

#[derive(Args)]
struct HeegnerCountArgs {
    #[arg(long)]
    d: u64,
    #[arg(long, value_enum)]
    region: RegionArg,
    #[arg(long, default_value_t = 4.0)]
    v: f64,
    #[arg(long, default_value_t = 0.0)]
    x0: f64,
    #[arg(long, default_value_t = 1.6)]
    y0: f64,
}

#[derive(Args)]
struct HeegnerReportArgs {
    #[arg(long)]
    d_lo: u64,
    #[arg(long)]
    d_hi: u64,
    #[arg(long, default_value_t = 24)]
    samples: usize,
    #[arg(long, value_enum)]
    region: RegionArg,
    #[arg(long, default_value_t = 4.0)]
    v: f64,
    #[arg(long, default_value_t = 0.0)]
    x0: f64,
    #[arg(long, default_value_t = 1.6)]
    y0: f64,
}

#[derive(Args)]
struct VerifyGhArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    r: u64,
    /// plus, minus, or both.
    #[arg(long, default_value = "both")]
    sign: String,
    #[arg(long, default_value_t = 150)]
    cap: u64,
}

#[derive(Args)]
struct SuiteArgs {
    /// arith, charsums, heegner, kernels, poisson, lfunc, or all.
    name: String,
}

fn region_from(arg: RegionArg, v: f64, x0: f64, y0: f64) -> Region {
    match arg {
        RegionArg::Full => Region::Full,
        RegionArg::BoxNearY1 => Region::BoxNearY1 { v },
        RegionArg::HighCuspBox => Region::HighCuspBox { v },
        RegionArg::Disk => Region::Disk { v, x0, y0 },
    }
}

fn emit(output: &Option<PathBuf>, contents: &str) -> Result<()> {
    match output {
        Some(path) => {
            write_atomic(path, contents).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{contents}"),
    }
    Ok(())
}

fn finish(report: &RunReport, output: &Option<PathBuf>) -> Result<i32> {
    emit(output, &format!("{}\n", report.to_json()))?;
    for row in report.failures() {
        eprintln!("FAIL {}: measured {:.6e} threshold {:?}", row.name, row.measured, row.threshold);
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let code = dispatch(cli)?;
    std::process::exit(code);
}

fn dispatch(cli: Cli) -> Result<i32> {
    let start = Instant::now();
    let base_cfg = |name: &str| {
        ExperimentConfig::new(name, cli.seed, cli.tolerance_scale, cli.output.clone())
    };
    match cli.command {
        Command::Lvalue(a) => {
            let cfg = base_cfg("lvalue").with_int("q", a.q as i64).with_real("t", a.t);
            let v = dirichlet_l(a.q, a.t)?;
            let doc = csv_document(
                &["q", "t", "re", "im", "method_error"],
                &[vec![
                    a.q.to_string(),
                    fmt_f64(a.t),
                    fmt_f64(v.value.re),
                    fmt_f64(v.value.im),
                    fmt_f64(v.method_error),
                ]],
            );
            emit(&cli.output, &doc)?;
            eprintln!("config: {}", serde_json::to_string(&cfg.to_json_value())?);
            Ok(0)
        }
        Command::Moment(a) => {
            let cfg = base_cfg("moment")
                .with_int("q", a.q as i64)
                .with_real("T", a.t_lo)
                .with_real("delta", a.delta);
            let m = sixth_moment(a.q, a.t_lo, a.delta)?;
            let doc = csv_document(
                &["q", "T", "delta", "moment", "normalized"],
                &[vec![
                    a.q.to_string(),
                    fmt_f64(a.t_lo),
                    fmt_f64(a.delta),
                    fmt_f64(m.moment),
                    fmt_f64(m.normalized),
                ]],
            );
            emit(&cli.output, &doc)?;
            eprintln!("config: {}", serde_json::to_string(&cfg.to_json_value())?);
            Ok(0)
        }
        Command::SieveCheck(a) => {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
            let mut rows = Vec::new();
            for trial in 0..a.trials {
                let coeffs: Vec<num_complex::Complex64> = (0..a.n)
                    .map(|_| {
                        num_complex::Complex64::new(
                            if rng.random_bool(0.5) { 1.0 } else { -1.0 },
                            0.0,
                        )
                    })
                    .collect();
                let out = large_sieve_check(a.q, a.u, &coeffs)?;
                rows.push(vec![
                    trial.to_string(),
                    fmt_f64(out.lhs),
                    fmt_f64(out.rhs_scale),
                    fmt_f64(out.ratio),
                ]);
            }
            let doc = csv_document(&["trial", "lhs", "rhs_scale", "ratio"], &rows);
            emit(&cli.output, &doc)?;
            Ok(0)
        }
        Command::Budget(a) => {
            let case = match a.case {
                BudgetCaseArg::CosCosh => BudgetCase::CosCosh,
                BudgetCaseArg::SinSinhOsc => BudgetCase::SinSinhOsc,
                BudgetCaseArg::SinSinhFlat => BudgetCase::SinSinhFlat,
            };
            let n = [a.n1, a.n2, a.n3];
            let c = a.c.unwrap_or_else(|| c_cap_cos(n, a.t, a.delta));
            let rep = bound_budget(&BudgetInput { n, c, q: a.q, t: a.t, delta: a.delta, case });
            let doc = csv_document(
                &["case", "m1", "m2", "m3", "c", "u", "v", "x", "bracket", "cap", "within"],
                &[vec![
                    format!("{:?}", rep.case),
                    fmt_f64(rep.m[0]),
                    fmt_f64(rep.m[1]),
                    fmt_f64(rep.m[2]),
                    fmt_f64(rep.c),
                    fmt_f64(rep.u),
                    fmt_f64(rep.v),
                    fmt_f64(rep.x),
                    fmt_f64(rep.bracket),
                    fmt_f64(rep.cap),
                    rep.within.to_string(),
                ]],
            );
            emit(&cli.output, &doc)?;
            Ok(if rep.within { 0 } else { 1 })
        }
        Command::Kernel(a) => {
            let (lo, hi, n) = parse_grid(&a.x_grid)?;
            let window = SpectralWindow::new(a.t, a.delta).or_else(|_| {
                if a.t > 0.0 && a.delta > 0.0 {
                    Ok(SpectralWindow::unchecked(a.t, a.delta))
                } else {
                    Err(anyhow!("invalid window"))
                }
            })?;
            let profile = match a.profile {
                ProfileArg::DerivedFromH => Profile::DerivedFromH,
                ProfileArg::GaussianModel => Profile::GaussianModel,
            };
            let phi = match a.phi {
                PhiArg::Cos => PhiKind::Cos,
                PhiArg::Cosh => PhiKind::Cosh,
                PhiArg::Sin => PhiKind::Sin,
                PhiArg::Sinh => PhiKind::Sinh,
            };
            let ev = KernelEvaluator::new(window, profile)?;
            let dt = window.scale();
            let mut rows = Vec::new();
            for i in 0..n {
                let x = if n == 1 { lo } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 };
                let value = match a.kind {
                    KernelKindArg::Bplus => ev.bplus(x)?,
                    KernelKindArg::Bminus => ev.bminus(x)?,
                    KernelKindArg::Bholo => bholo_bessel(x, &window, a.parity),
                    KernelKindArg::B0 => ev.b0(x, phi, a.phi_sign)?.norm(),
                };
                let envelope = value.abs() * x.abs().sqrt() / dt;
                rows.push(vec![fmt_f64(x), fmt_f64(value), fmt_f64(envelope)]);
            }
            let doc = csv_document(&["x", "value", "envelope"], &rows);
            emit(&cli.output, &doc)?;
            Ok(0)
        }
        Command::PoissonCheck(a) => {
            let sign = match a.sign {
                SignArg::Plus => Sign::Plus,
                SignArg::Minus => Sign::Minus,
            };
            let c = a.q * a.r;
            let n_min = a.n1.min(a.n2).min(a.n3);
            let u_mid: f64 = 1.5f64.powi(3) * a.n1 * a.n2 * a.n3;
            let x_mid = 4.0 * std::f64::consts::PI * u_mid.sqrt() / c as f64;
            let p = PoissonParams {
                modulus: Modulus::new(a.q)?,
                r: a.r,
                sign,
                weights: [
                    SmoothWeight::new(a.n1)?,
                    SmoothWeight::new(a.n2)?,
                    SmoothWeight::new(a.n3)?,
                ],
                kernel: TestKernel::GaussianCosine { freq: 0.03, scale: 1.5 * x_mid },
                m_cut: suggested_m_cut(c, n_min),
            };
            let out = poisson_check(&p)?;
            let doc = csv_document(
                &["lhs", "rhs", "rel_diff"],
                &[vec![fmt_f64(out.lhs), fmt_f64(out.rhs), fmt_f64(out.rel_diff)]],
            );
            emit(&cli.output, &doc)?;
            let ok = out.rel_diff <= sixmoment::tolerances::POISSON_REL_DIFF * cli.tolerance_scale;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Heegner(h) => match h {
            HeegnerCmd::Count(a) => {
                let region = region_from(a.region, a.v, a.x0, a.y0);
                let (count, expected) = count_region(a.d, &region)?;
                let h_val = sixmoment::quadforms::class_number(a.d)?;
                let doc = csv_document(
                    &["D", "h", "count", "expected", "discrepancy"],
                    &[vec![
                        a.d.to_string(),
                        h_val.to_string(),
                        count.to_string(),
                        fmt_f64(expected),
                        fmt_f64((count as f64 - expected).abs() / expected.max(1.0)),
                    ]],
                );
                emit(&cli.output, &doc)?;
                Ok(0)
            }
            HeegnerCmd::Report(a) => {
                let region = region_from(a.region, a.v, a.x0, a.y0);
                let ds = sample_fundamental(a.d_lo, a.d_hi, a.samples, cli.seed);
                let rows = equidistribution_report(&ds, &region)?
                    .into_iter()
                    .map(|r| {
                        vec![
                            r.d.to_string(),
                            r.class_number.to_string(),
                            r.count.to_string(),
                            fmt_f64(r.expected),
                            fmt_f64(r.normalized_discrepancy),
                        ]
                    })
                    .collect::<Vec<_>>();
                let doc = csv_document(&["D", "h", "count", "expected", "discrepancy"], &rows);
                emit(&cli.output, &doc)?;
                Ok(0)
            }
        },
        Command::VerifyGh(a) => {
            let signs: Vec<Sign> = match a.sign.as_str() {
                "plus" => vec![Sign::Plus],
                "minus" => vec![Sign::Minus],
                "both" => vec![Sign::Plus, Sign::Minus],
                other => bail!("unknown sign {other:?} (field: sign)"),
            };
            let modulus = Modulus::new(a.q)?;
            let mut rows = Vec::new();
            let mut ok = true;
            for sign in signs {
                let rep = verify_gh(&modulus, a.r, sign, a.cap)?;
                ok &= rep.vanishing_violations == 0
                    && rep.max_abs_err
                        <= sixmoment::tolerances::GH_ABS_ERR * cli.tolerance_scale;
                rows.push(vec![
                    rep.q.to_string(),
                    rep.r.to_string(),
                    rep.sign.label().to_string(),
                    rep.triples_checked.to_string(),
                    fmt_f64(rep.max_abs_err),
                    rep.vanishing_violations.to_string(),
                ]);
            }
            let doc = csv_document(
                &["q", "r", "sign", "triples_checked", "max_abs_err", "vanishing_violations"],
                &rows,
            );
            emit(&cli.output, &doc)?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Suite(a) => {
            let name = SuiteName::parse(&a.name)
                .ok_or_else(|| anyhow!("unknown suite {:?} (field: name)", a.name))?;
            let opts = SuiteOptions {
                quick: cli.quick,
                seed: cli.seed,
                tolerance_scale: cli.tolerance_scale,
            };
            let report = run_suite(name, &opts)?;
            for row in &report.rows {
                let status = match row.status {
                    sixmoment::report::CheckStatus::Pass => "pass",
                    sixmoment::report::CheckStatus::Fail => "FAIL",
                    sixmoment::report::CheckStatus::ReportOnly => "info",
                };
                eprintln!(
                    "[{status}] {} = {:.6e}{}",
                    row.name,
                    row.measured,
                    row.threshold.map(|t| format!(" (threshold {t:.3e})")).unwrap_or_default()
                );
            }
            eprintln!(
                "suite {} finished in {:.1}s: {}",
                a.name,
                start.elapsed().as_secs_f64(),
                if report.all_passed() { "all checks passed" } else { "FAILURES present" }
            );
            finish(&report, &cli.output)
        }
    }
}

fn parse_grid(s: &str) -> Result<(f64, f64, usize)> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        bail!("x-grid must be lo:hi:n (field: x_grid)");
    }
    let lo: f64 = parts[0].parse().context("x-grid lo")?;
    let hi: f64 = parts[1].parse().context("x-grid hi")?;
    let n: usize = parts[2].parse().context("x-grid n")?;
    if n == 0 || hi < lo {
        bail!("x-grid must satisfy n ≥ 1 and hi ≥ lo (field: x_grid)");
    }
    Ok((lo, hi, n))
}

#[allow(dead_code)]
fn unused_row_helper() -> CheckRow {
    CheckRow::recorded("placeholder", 0.0)
}
