//! Every numeric threshold used by the verification suites, in one place.
//!
//! Asymptotic statements ("≪", "very small", "negligible") need a concrete
//! policy before they can be tested; these constants are that policy.  Any
//! suite row that asserts carries one of these names as its threshold.

/// Generic smallness policy: a quantity asserted "very small" must be below
/// this multiple of its natural scale.
pub const SMALLNESS_EPS: f64 = 1e-6;

/// Absolute error allowed between the brute-force triple sum G and its
/// closed-form evaluation, per triple.
pub const GH_ABS_ERR: f64 = 1e-8;

/// |G| below `G_VANISH_OVER_C / c` counts as an exact algebraic zero.
pub const G_VANISH_OVER_C: f64 = 1e-10;

/// The Möbius factorization of H through H* must hold to this absolute error.
pub const HHSTAR_ABS_ERR: f64 = 1e-9;

/// Fourier reconstruction of H* from the coefficients g(χ, ψ) on units,
/// per value, relative to q.
pub const HSTAR_RECON_OVER_Q: f64 = 1e-8;

/// Pointwise vs. grid evaluation of the triple sum must agree to this.
pub const G_PATHS_ABS_ERR: f64 = 1e-9;

/// A Kloosterman sum's imaginary part must vanish to this multiple of √c.
pub const KLOOSTERMAN_IM_OVER_SQRT_C: f64 = 1e-9;

/// A Ramanujan sum evaluated by trigonometric accumulation must land within
/// this distance of an integer.
pub const RAMANUJAN_ROUND: f64 = 1e-6;

/// |τ(ψ)| must equal √q to this absolute error for primitive ψ.
pub const GAUSS_MAGNITUDE_ERR: f64 = 1e-9;

/// Character orthogonality sums must hit their exact value to this error.
pub const ORTHOGONALITY_ERR: f64 = 1e-9;

/// Heegner points must satisfy the fundamental-domain inequalities to this.
pub const FUNDAMENTAL_DOMAIN_TOL: f64 = 1e-12;

/// Region measures are integrated to this absolute/relative target.
pub const REGION_QUAD_TOL: f64 = 1e-8;

/// Relative error target for the smoothed L(1, χ_{-D}) series in the
/// analytic class-number oracle.
pub const CLASS_NUMBER_L1_REL: f64 = 1e-6;

/// Relative difference allowed between the two sides of the Poisson
/// summation identity.
pub const POISSON_REL_DIFF: f64 = 1e-6;

/// K-transform tail must fall below this fraction of the grid peak before
/// the Poisson m-sum is truncated.
pub const POISSON_TAIL_OVER_PEAK: f64 = 1e-9;

/// Kernel quadratures target this absolute tolerance, as a multiple of ΔT.
pub const KERNEL_ABS_TOL_OVER_DT: f64 = 1e-9;

/// Two-path agreement for the holomorphic kernel, relative with a small
/// absolute floor (the kernel is exponentially small left of its support,
/// where pointwise relative comparison is ill-posed).
pub const BHOLO_REL: f64 = 1e-6;
pub const BHOLO_FLOOR_OVER_DT: f64 = 1e-8;

/// Stationary phase: rel_err must be below SP_RELERR_FACTOR / Y.
pub const SP_RELERR_FACTOR: f64 = 10.0;

/// Non-stationary 1-d integrals must be below this multiple of the support
/// scale X.
pub const SP_NONSTATIONARY_OVER_X: f64 = 1e-8;

/// Functional-equation residual for completed L-values, relative.
pub const FE_RESIDUAL_REL: f64 = 1e-7;

/// Absolute residual for the Hecke relation on divisor-symbol coefficients.
pub const HECKE_RESIDUAL: f64 = 1e-10;

/// Default per-L-value method error budget.
pub const LVALUE_METHOD_ERR: f64 = 1e-8;

/// Every (qT)^ε appearing in an asserted inequality is instantiated with
/// this exponent.
pub const EPSILON_EXPONENT: f64 = 0.1;

/// Doubling-trend criterion: max over the large half of a grid may exceed
/// the max over the small half by at most this factor.
pub const DOUBLING_TREND_FACTOR: f64 = 2.0;
