//! Numerical quadrature engines, spectral windows, the kernel transforms
//! B⁺/B⁻/B^holo/B₀, stationary-phase oracles, the three-fold K-transform
//! with its envelope, and the Poisson summation cross-check.

pub mod chebyshev;
pub mod kernels;
pub mod ktransform;
pub mod poisson;
pub mod quadrature;
pub mod stationary;
pub mod window;

pub use kernels::{
    bholo_bessel, bholo_integral, envelope_mellin_length, phi_envelope, KernelEvaluator,
    KernelKind, KernelSpec, PhiKind, Profile,
};
pub use ktransform::{
    b0_table, k_transform, k_transform_with_table, k_transform_zero_nested, B0Table,
    KTransformParams,
};
pub use poisson::{poisson_check, PoissonOutcome, PoissonParams, TestKernel};
pub use stationary::{
    double_oscillatory, stationary_phase_1d, DoubleOscOutcome, DoubleOscParams, LinearPhase,
    Phase, QuadraticPhase, SpOutcome, Stationarity,
};
pub use window::{plateau_bump, SmoothWeight, SpectralWindow};
