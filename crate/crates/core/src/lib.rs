//! Verification workbench for the arithmetic and analytic machinery behind
//! Weyl-strength moment bounds for quadratic Dirichlet L-functions:
//!
//! * exact complete character sums (Kloosterman, Ramanujan, Gauss) and the
//!   two-variable sums H, H* with their factorization identities,
//! * binary quadratic forms, class numbers, and Heegner points in the
//!   fundamental domain, with shrinking-set counting experiments,
//! * oscillatory Bessel-type kernel transforms B⁺, B⁻, B^holo, B₀, the
//!   three-fold K-transform, stationary-phase oracles, and a Poisson
//!   summation cross-check,
//! * central values L(1/2 + it, χ_q) on the critical line, sixth-moment and
//!   subconvexity-ratio experiments, hybrid large-sieve and bilinear-form
//!   constants, and a final bound-budget audit.
//!
//! Everything is pure and deterministic; wide sweeps are data-parallel.

pub mod arith;
pub mod charsums;
pub mod lfunc;
pub mod oscillatory;
pub mod quadforms;
pub mod report;
pub mod special;
pub mod suites;
pub mod sumutil;
pub mod tolerances;

use thiserror::Error;

/// Errors shared across the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} must be odd")]
    EvenModulus(u64),
    #[error("modulus {0} must be positive")]
    NonPositiveModulus(i64),
    #[error("modulus {0} is not squarefree (repeated prime {1})")]
    NotSquarefree(u64, u64),
    #[error("-{0} is not an odd fundamental discriminant: {1}")]
    NotFundamental(u64, String),
    #[error("Gauss sum numerically vanishes for the supplied character; inversion undefined")]
    GaussSumVanishes,
    #[error("imaginary residue {residue:.3e} exceeds tolerance {tolerance:.3e} for c = {c}")]
    ImaginaryResidue { c: u64, residue: f64, tolerance: f64 },
    #[error("quadrature failed to converge: {0}")]
    QuadratureNonConvergence(String),
    #[error("parameter budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("modular inverse of {0} mod {1} does not exist")]
    NoInverse(i64, u64),
    #[error("Poisson tail bound not met at cutoff {cutoff}: shell ratio {ratio:.3e}")]
    TailBound { cutoff: i64, ratio: f64 },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
