//! Weak-form assembly of the estimation systems.
//!
//! Each row multiplies the governing equation by one modulating function
//! and integrates over the space interval. Integration by parts moves every
//! derivative off the measured fields and onto the analytically known test
//! and basis functions, so measured data is only ever multiplied and
//! integrated, never differentiated. Boundary terms vanish because the
//! family's derivatives vanish at both endpoints.

use crate::basis::BasisSet;
use crate::error::{Error, Result};
use crate::grid::{Field1D, Grid1D};
use crate::lsq::LinearSystem;
use crate::modulating::ModulatingFamily;
use crate::quad;
use nalgebra::{DMatrix, DVector};

/// A known velocity-squared coefficient, with analytic derivatives when it
/// varies in space. Assembly never differentiates sampled data.
#[derive(Clone, Debug)]
pub enum KnownVelocity {
    Constant(f64),
    Profile { c: Field1D, c_x: Field1D, c_xx: Field1D },
}

fn check_domain(fam: &ModulatingFamily, grid: &Grid1D) -> Result<()> {
    let tol = 1e-9 * grid.length().max(1.0);
    if (fam.length() - grid.length()).abs() > tol {
        return Err(Error::GridMismatch(format!(
            "family lives on [0, {}] but the data grid spans [0, {}]",
            fam.length(),
            grid.length()
        )));
    }
    Ok(())
}

fn check_basis_domain(basis: &BasisSet, grid: &Grid1D) -> Result<()> {
    let tol = 1e-9 * grid.length().max(1.0);
    if (basis.length() - grid.length()).abs() > tol {
        return Err(Error::GridMismatch(format!(
            "basis lives on [0, {}] but the data grid spans [0, {}]",
            basis.length(),
            grid.length()
        )));
    }
    Ok(())
}

fn check_order(fam: &ModulatingFamily, needed: usize) -> Result<()> {
    if fam.order() < needed {
        return Err(Error::OrderTooLow(format!(
            "family order {} cannot absorb {needed} integrations by parts",
            fam.order()
        )));
    }
    Ok(())
}

fn check_shape(m: usize, unknowns: usize) -> Result<()> {
    if m < unknowns {
        return Err(Error::UnderdeterminedShape(format!(
            "{m} modulating functions for {unknowns} unknowns"
        )));
    }
    Ok(())
}

fn scales(fam: &ModulatingFamily) -> Result<Vec<f64>> {
    (1..=fam.count()).map(|m| fam.scale(m)).collect()
}

/// Weighted basis samples ξ_i^(p) pre-multiplied by quadrature weights are
/// not stored; instead plain samples are built once per function.
fn basis_samples(basis: &BasisSet, grid: &Grid1D, max_p: usize) -> Result<Vec<Vec<Vec<f64>>>> {
    let mut out = Vec::with_capacity(basis.count());
    for i in 1..=basis.count() {
        let mut per_p = Vec::with_capacity(max_p + 1);
        for p in 0..=max_p {
            per_p.push(basis.sample(i, p, grid)?);
        }
        out.push(per_p);
    }
    Ok(out)
}

fn triple(w: &[f64], a: &[f64], b: &[f64]) -> f64 {
    w.iter().zip(a).zip(b).map(|((w, a), b)| w * a * b).sum()
}

/// System for the unknown source: A_mi = ∫φ_m ξ_i and
/// K_m = ∫φ_m u_tt − ∫u·(c″φ_m + 2c′φ_m′ + cφ_m″), where the velocity term
/// collapses to c·∫φ_m″u for constant c.
pub fn assemble_ip1(
    u: &Field1D,
    u_tt: &Field1D,
    velocity: &KnownVelocity,
    fam: &ModulatingFamily,
    basis: &BasisSet,
) -> Result<LinearSystem> {
    let grid = u.grid();
    if u_tt.grid() != grid {
        return Err(Error::GridMismatch("displacement and acceleration grids differ".into()));
    }
    check_domain(fam, &grid)?;
    check_basis_domain(basis, &grid)?;
    check_order(fam, 2)?;
    check_shape(fam.count(), basis.count())?;
    if let KnownVelocity::Profile { c, c_x, c_xx } = velocity {
        if c.grid() != grid || c_x.grid() != grid || c_xx.grid() != grid {
            return Err(Error::GridMismatch("velocity profile grids differ from the data grid".into()));
        }
    }

    let w = quad::weights(grid.n(), grid.spacing())?;
    let xi = basis_samples(basis, &grid, 0)?;
    let (big_m, big_i) = (fam.count(), basis.count());
    let mut a = DMatrix::zeros(big_m, big_i);
    let mut k = DVector::zeros(big_m);
    for m in 1..=big_m {
        let phi0 = fam.sample(m, 0, &grid)?;
        let phi2 = fam.sample(m, 2, &grid)?;
        for i in 0..big_i {
            a[(m - 1, i)] = triple(&w, &phi0, &xi[i][0]);
        }
        let inertial = triple(&w, &phi0, u_tt.values());
        let transferred = match velocity {
            KnownVelocity::Constant(c) => c * triple(&w, &phi2, u.values()),
            KnownVelocity::Profile { c, c_x, c_xx } => {
                let phi1 = fam.sample(m, 1, &grid)?;
                w.iter()
                    .enumerate()
                    .map(|(j, w)| {
                        w * u.values()[j]
                            * (c_xx.values()[j] * phi0[j]
                                + 2.0 * c_x.values()[j] * phi1[j]
                                + c.values()[j] * phi2[j])
                    })
                    .sum()
            }
        };
        k[m - 1] = inertial - transferred;
    }
    LinearSystem::new(a, k, (1..=big_i).map(|i| format!("source[{i}]")).collect(), scales(fam)?)
}

/// System for the unknown velocity coefficient:
/// A_mj = ∫u·(υ_j″φ_m + 2υ_j′φ_m′ + υ_jφ_m″) and K_m = ∫(u_tt − f)·φ_m.
pub fn assemble_ip2(
    u: &Field1D,
    u_tt: &Field1D,
    f_known: &Field1D,
    fam: &ModulatingFamily,
    basis: &BasisSet,
) -> Result<LinearSystem> {
    let grid = u.grid();
    if u_tt.grid() != grid || f_known.grid() != grid {
        return Err(Error::GridMismatch("measurement and source grids differ".into()));
    }
    check_domain(fam, &grid)?;
    check_basis_domain(basis, &grid)?;
    check_order(fam, 2)?;
    check_shape(fam.count(), basis.count())?;
    if u.norm_max() == 0.0 {
        return Err(Error::ZeroMeasurement("displacement slice is identically zero".into()));
    }

    let w = quad::weights(grid.n(), grid.spacing())?;
    let ups = basis_samples(basis, &grid, 2)?;
    let (big_m, big_j) = (fam.count(), basis.count());
    let mut a = DMatrix::zeros(big_m, big_j);
    let mut k = DVector::zeros(big_m);
    for m in 1..=big_m {
        let phi0 = fam.sample(m, 0, &grid)?;
        let phi1 = fam.sample(m, 1, &grid)?;
        let phi2 = fam.sample(m, 2, &grid)?;
        for j in 0..big_j {
            a[(m - 1, j)] = w
                .iter()
                .enumerate()
                .map(|(n, w)| {
                    w * u.values()[n]
                        * (ups[j][2][n] * phi0[n]
                            + 2.0 * ups[j][1][n] * phi1[n]
                            + ups[j][0][n] * phi2[n])
                })
                .sum();
        }
        k[m - 1] = w
            .iter()
            .enumerate()
            .map(|(n, w)| w * (u_tt.values()[n] - f_known.values()[n]) * phi0[n])
            .sum();
    }
    LinearSystem::new(a, k, (1..=big_j).map(|j| format!("velocity[{j}]")).collect(), scales(fam)?)
}

/// Scalar constant-velocity estimate ĉ = (𝒜ᵀK)/(𝒜ᵀ𝒜) with
/// 𝒜_m = ∫φ_m″u and K_m = ∫φ_m(u_tt − f): the rank-one least squares.
pub fn estimate_constant_c(
    u: &Field1D,
    u_tt: &Field1D,
    f_known: &Field1D,
    fam: &ModulatingFamily,
) -> Result<f64> {
    let grid = u.grid();
    if u_tt.grid() != grid || f_known.grid() != grid {
        return Err(Error::GridMismatch("measurement and source grids differ".into()));
    }
    check_domain(fam, &grid)?;
    check_order(fam, 2)?;

    let w = quad::weights(grid.n(), grid.spacing())?;
    let (mut numer, mut denom) = (0.0, 0.0);
    for m in 1..=fam.count() {
        let phi0 = fam.sample(m, 0, &grid)?;
        let phi2 = fam.sample(m, 2, &grid)?;
        let a_m = triple(&w, &phi2, u.values());
        let k_m = w
            .iter()
            .enumerate()
            .map(|(n, w)| w * (u_tt.values()[n] - f_known.values()[n]) * phi0[n])
            .sum::<f64>();
        numer += a_m * k_m;
        denom += a_m * a_m;
    }
    if denom <= 1e-30 {
        return Err(Error::DegenerateDenominator(format!(
            "curvature moments have vanishing energy {denom:e}"
        )));
    }
    Ok(numer / denom)
}

/// Joint system for source and velocity: block matrix [Ξ Υ] with
/// Ξ_mi = ∫φ_m ξ_i, Υ_mj = ∫u·(υ_j″φ_m + 2υ_j′φ_m′ + υ_jφ_m″), and
/// Q_m = ∫u_tt φ_m. The unknown vector stacks the source coefficients
/// before the velocity coefficients.
pub fn assemble_ip3(
    u: &Field1D,
    u_tt: &Field1D,
    fam: &ModulatingFamily,
    basis_f: &BasisSet,
    basis_c: &BasisSet,
) -> Result<LinearSystem> {
    let grid = u.grid();
    if u_tt.grid() != grid {
        return Err(Error::GridMismatch("displacement and acceleration grids differ".into()));
    }
    check_domain(fam, &grid)?;
    check_basis_domain(basis_f, &grid)?;
    check_basis_domain(basis_c, &grid)?;
    check_order(fam, 2)?;
    check_shape(fam.count(), basis_f.count() + basis_c.count())?;
    if u.norm_max() == 0.0 {
        return Err(Error::ZeroMeasurement("displacement slice is identically zero".into()));
    }

    let w = quad::weights(grid.n(), grid.spacing())?;
    let xi = basis_samples(basis_f, &grid, 0)?;
    let ups = basis_samples(basis_c, &grid, 2)?;
    let (big_m, big_i, big_j) = (fam.count(), basis_f.count(), basis_c.count());
    let mut b = DMatrix::zeros(big_m, big_i + big_j);
    let mut q = DVector::zeros(big_m);
    for m in 1..=big_m {
        let phi0 = fam.sample(m, 0, &grid)?;
        let phi1 = fam.sample(m, 1, &grid)?;
        let phi2 = fam.sample(m, 2, &grid)?;
        for i in 0..big_i {
            b[(m - 1, i)] = triple(&w, &phi0, &xi[i][0]);
        }
        for j in 0..big_j {
            b[(m - 1, big_i + j)] = w
                .iter()
                .enumerate()
                .map(|(n, w)| {
                    w * u.values()[n]
                        * (ups[j][2][n] * phi0[n]
                            + 2.0 * ups[j][1][n] * phi1[n]
                            + ups[j][0][n] * phi2[n])
                })
                .sum();
        }
        q[m - 1] = triple(&w, &phi0, u_tt.values());
    }
    let labels = (1..=big_i)
        .map(|i| format!("source[{i}]"))
        .chain((1..=big_j).map(|j| format!("velocity[{j}]")))
        .collect();
    LinearSystem::new(b, q, labels, scales(fam)?)
}

/// System for the three Kawahara coefficients: row m is
/// [−½∫u²φ_m′, −∫uφ_m‴, ∫uφ_m⁽⁵⁾] and the right-hand side is −∫u_t φ_m.
pub fn assemble_kawahara(
    u: &Field1D,
    u_t: &Field1D,
    fam: &ModulatingFamily,
) -> Result<LinearSystem> {
    let grid = u.grid();
    if u_t.grid() != grid {
        return Err(Error::GridMismatch("displacement and velocity grids differ".into()));
    }
    check_domain(fam, &grid)?;
    check_order(fam, 5)?;
    check_shape(fam.count(), 3)?;

    let w = quad::weights(grid.n(), grid.spacing())?;
    let u_sq: Vec<f64> = u.values().iter().map(|v| v * v).collect();
    let big_m = fam.count();
    let mut a = DMatrix::zeros(big_m, 3);
    let mut k = DVector::zeros(big_m);
    let gauge = |a: &[f64], b: &[f64]| -> f64 {
        w.iter().zip(a).zip(b).map(|((w, a), b)| (w * a * b).abs()).sum()
    };
    let mut informative = false;
    for m in 1..=big_m {
        let phi0 = fam.sample(m, 0, &grid)?;
        let phi1 = fam.sample(m, 1, &grid)?;
        let phi3 = fam.sample(m, 3, &grid)?;
        let phi5 = fam.sample(m, 5, &grid)?;
        a[(m - 1, 0)] = -0.5 * triple(&w, &u_sq, &phi1);
        a[(m - 1, 1)] = -triple(&w, u.values(), &phi3);
        a[(m - 1, 2)] = triple(&w, u.values(), &phi5);
        k[m - 1] = -triple(&w, u_t.values(), &phi0);
        informative = informative
            || a[(m - 1, 0)].abs() > 1e-8 * 0.5 * gauge(&u_sq, &phi1)
            || a[(m - 1, 1)].abs() > 1e-8 * gauge(u.values(), &phi3)
            || a[(m - 1, 2)].abs() > 1e-8 * gauge(u.values(), &phi5);
    }
    // Every entry below quadrature resolution of its absolute-value integral
    // means complete cancellation (spatially constant data); snap to zero so
    // the solve reports rank deficiency instead of fitting roundoff.
    if !informative {
        a.fill(0.0);
    }
    let labels = vec!["alpha1".into(), "alpha2".into(), "alpha3".into()];
    LinearSystem::new(a, k, labels, scales(fam)?)
}
