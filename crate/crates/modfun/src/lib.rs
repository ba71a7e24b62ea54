//! Weak-form estimation of sources and coefficients in 1D PDEs.
//!
//! The method: multiply the PDE at a fixed measurement time by a family of
//! modulating functions (test functions whose derivatives vanish at both
//! endpoints), integrate over the spatial domain, and shift every spatial
//! derivative off the measured data onto the analytically known test
//! functions by repeated integration by parts. Expanding the unknown source
//! or coefficient in a small spatial basis turns each inverse problem into a
//! dense M×P linear least-squares system — no regularization, no numerical
//! differentiation of noisy measurements.
//!
//! Supported problems, all on [0, L]:
//!
//! * wave equation u_tt − c·u_xx = f: recover the source f (known c), the
//!   squared speed c (known f, including the constant-c closed form), or both
//!   jointly from u and u_tt at one or more time slices;
//! * Kawahara equation u_t + α₁·u·u_x + α₂·u_xxx − α₃·u_xxxxx = 0: recover
//!   (α₁, α₂, α₃) from u and u_t at a time slice of the exact soliton.
//!
//! Start with [`experiment::ExperimentConfig`] and [`experiment::run_experiment`]
//! for end-to-end studies, or assemble systems directly:
//!
//! * [`grid`]: uniform grids, sampled fields, CSV I/O
//! * [`noise`]: calibrated Gaussian measurement noise, percent error metric
//! * [`interp`]: natural cubic spline (space), Lagrange slices (time)
//! * [`modulating`]: test-function families with analytic derivatives
//! * [`basis`]: monomial and Hermite expansions for the unknowns
//! * [`forward`]: finite-difference wave solver, exact Kawahara soliton
//! * [`quad`]: composite Simpson quadrature
//! * [`assemble`]: weak-form linear systems for every supported problem
//! * [`lsq`]: SVD least squares with conditioning diagnostics
//! * [`error_analysis`]: noise error vector and its a-priori bound
//! * [`experiment`]: configs, runners, sweeps, summary emission
//!
//! Each `examples/*.rs` reproduces one study end to end; `cargo run --example`
//! with no name lists them.

pub mod assemble;
pub mod basis;
pub mod error;
pub mod error_analysis;
pub mod experiment;
pub mod forward;
pub mod grid;
pub mod interp;
pub mod lsq;
pub mod modulating;
pub mod noise;
pub mod quad;

pub use error::{Error, Result};
pub use grid::{Field1D, Field2D, Grid1D};
pub use modulating::{FamilyKind, ModulatingFamily};
pub use noise::NoiseSpec;
