//! Synthetic measurement generators.
//!
//! A finite-difference solver for the 1D wave equation
//! u_tt = c(x,t)·u_xx + f(x,t) produces displacement and acceleration
//! surfaces; the acceleration is obtained by time-differencing the solved
//! displacement, as a measured quantity would be, rather than substituted
//! from the identity being estimated. Analytic evaluators supply data for
//! the Kawahara equation u_t + u·u_x + u_xxx − u_xxxxx = 0, whose
//! traveling sech⁴ solution needs no numerical solve.

use crate::error::{Error, Result};
use crate::grid::{Field1D, Field2D, Grid1D};
use std::collections::BTreeMap;

/// The known velocity-squared coefficient, in whichever generality a run
/// needs.
#[derive(Clone, Debug, PartialEq)]
pub enum Velocity {
    Constant(f64),
    Spatial(Field1D),
    SpaceTime(Field2D),
}

impl Velocity {
    fn validate(&self, grid_x: &Grid1D, grid_t: &Grid1D) -> Result<()> {
        let check_range = |vals: &[f64]| -> Result<()> {
            if let Some(v) = vals.iter().find(|v| !v.is_finite() || **v < 0.0) {
                return Err(Error::InvalidDomain(format!("velocity coefficient {v} is not admissible")));
            }
            Ok(())
        };
        match self {
            Velocity::Constant(v) => check_range(std::slice::from_ref(v)),
            Velocity::Spatial(f) => {
                if f.grid() != *grid_x {
                    return Err(Error::GridMismatch("velocity profile is sampled on a different spatial grid".into()));
                }
                check_range(f.values())
            }
            Velocity::SpaceTime(f) => {
                if f.grid_x() != *grid_x || f.grid_t() != *grid_t {
                    return Err(Error::GridMismatch("velocity surface is sampled on a different grid".into()));
                }
                check_range(f.values())
            }
        }
    }

    fn at(&self, it: usize, ix: usize) -> f64 {
        match self {
            Velocity::Constant(v) => *v,
            Velocity::Spatial(f) => f.values()[ix],
            Velocity::SpaceTime(f) => f.at(it, ix),
        }
    }

    /// Largest coefficient value; sets the stable time step.
    pub fn max_value(&self) -> f64 {
        match self {
            Velocity::Constant(v) => *v,
            Velocity::Spatial(f) => f.values().iter().cloned().fold(0.0, f64::max),
            Velocity::SpaceTime(f) => f.values().iter().cloned().fold(0.0, f64::max),
        }
    }
}

/// Complete data for one wave-equation solve.
#[derive(Clone, Debug)]
pub struct WaveProblem {
    pub grid_x: Grid1D,
    pub grid_t: Grid1D,
    pub velocity: Velocity,
    /// Source term sampled on the full space-time grid.
    pub source: Field2D,
    /// Initial displacement.
    pub initial_value: Field1D,
    /// Initial velocity.
    pub initial_velocity: Field1D,
    /// Dirichlet value at x = 0 per time node.
    pub left_boundary: Vec<f64>,
    /// Dirichlet value at x = L per time node.
    pub right_boundary: Vec<f64>,
}

/// Displacement and measured acceleration on the problem grid.
#[derive(Clone, Debug)]
pub struct WaveSolution {
    pub u: Field2D,
    pub u_tt: Field2D,
}

/// Explicit central-difference solve of u_tt = c·u_xx + f.
///
/// The first step comes from the Taylor expansion
/// u¹ = r₁ + Δt·r₂ + (Δt²/2)(c·r₁″ + f⁰) with r₁″ by central differences.
/// The returned acceleration is the central second time difference of u at
/// interior time levels and a one-sided second-order stencil at both ends.
pub fn solve_wave(p: &WaveProblem) -> Result<WaveSolution> {
    let nx = p.grid_x.n();
    let nt = p.grid_t.n();
    if nt < 4 {
        return Err(Error::GridTooSmall(format!("time grid has {nt} nodes, need at least 4")));
    }
    if p.initial_value.grid() != p.grid_x || p.initial_velocity.grid() != p.grid_x {
        return Err(Error::GridMismatch("initial data is sampled on a different spatial grid".into()));
    }
    if p.source.grid_x() != p.grid_x || p.source.grid_t() != p.grid_t {
        return Err(Error::GridMismatch("source is sampled on a different grid".into()));
    }
    if p.left_boundary.len() != nt || p.right_boundary.len() != nt {
        return Err(Error::GridMismatch(format!(
            "boundary sequences have {} and {} entries for {nt} time nodes",
            p.left_boundary.len(),
            p.right_boundary.len()
        )));
    }
    p.velocity.validate(&p.grid_x, &p.grid_t)?;
    let dx = p.grid_x.spacing();
    let dt = p.grid_t.spacing();
    let cfl = p.velocity.max_value().sqrt() * dt / dx;
    if cfl > 1.0 {
        return Err(Error::CflViolation(format!("stability number {cfl:.6} exceeds 1")));
    }

    let mut u = vec![0.0; nt * nx];
    let r1 = p.initial_value.values();
    let r2 = p.initial_velocity.values();
    let inv_dx2 = 1.0 / (dx * dx);
    let dt2 = dt * dt;

    u[..nx].copy_from_slice(r1);
    u[0] = p.left_boundary[0];
    u[nx - 1] = p.right_boundary[0];
    for i in 1..nx - 1 {
        let r1_xx = (r1[i + 1] - 2.0 * r1[i] + r1[i - 1]) * inv_dx2;
        u[nx + i] = r1[i]
            + dt * r2[i]
            + 0.5 * dt2 * (p.velocity.at(0, i) * r1_xx + p.source.at(0, i));
    }
    u[nx] = p.left_boundary[1];
    u[2 * nx - 1] = p.right_boundary[1];

    for n in 1..nt - 1 {
        let (prev_rows, rest) = u.split_at_mut(n * nx + nx);
        let prev = &prev_rows[(n - 1) * nx..n * nx];
        let cur = &prev_rows[n * nx..];
        let next = &mut rest[..nx];
        for i in 1..nx - 1 {
            let u_xx = (cur[i + 1] - 2.0 * cur[i] + cur[i - 1]) * inv_dx2;
            next[i] = 2.0 * cur[i] - prev[i]
                + dt2 * (p.velocity.at(n, i) * u_xx + p.source.at(n, i));
        }
        next[0] = p.left_boundary[n + 1];
        next[nx - 1] = p.right_boundary[n + 1];
    }

    let inv_dt2 = 1.0 / dt2;
    let mut u_tt = vec![0.0; nt * nx];
    for i in 0..nx {
        u_tt[i] = (2.0 * u[i] - 5.0 * u[nx + i] + 4.0 * u[2 * nx + i] - u[3 * nx + i]) * inv_dt2;
        let last = (nt - 1) * nx;
        u_tt[last + i] = (2.0 * u[last + i] - 5.0 * u[last - nx + i] + 4.0 * u[last - 2 * nx + i]
            - u[last - 3 * nx + i])
            * inv_dt2;
    }
    for n in 1..nt - 1 {
        for i in 0..nx {
            u_tt[n * nx + i] =
                (u[(n + 1) * nx + i] - 2.0 * u[n * nx + i] + u[(n - 1) * nx + i]) * inv_dt2;
        }
    }

    Ok(WaveSolution {
        u: Field2D::new(p.grid_x, p.grid_t, u)?,
        u_tt: Field2D::new(p.grid_x, p.grid_t, u_tt)?,
    })
}

const PEAK: f64 = 105.0 / 169.0;
const SPEED: f64 = 36.0 / 169.0;

fn phase(x: f64, t: f64) -> f64 {
    (x - SPEED * t) / (2.0 * 13.0f64.sqrt())
}

/// Traveling-wave solution value (105/169)·sech⁴[(x − 36t/169)/(2√13)].
pub fn kawahara_value(x: f64, t: f64) -> f64 {
    let s = 1.0 / phase(x, t).cosh();
    PEAK * s.powi(4)
}

/// Analytic time derivative of the traveling wave.
pub fn kawahara_time_derivative(x: f64, t: f64) -> f64 {
    let z = phase(x, t);
    let s = 1.0 / z.cosh();
    PEAK * 4.0 * s.powi(4) * z.tanh() * SPEED / (2.0 * 13.0f64.sqrt())
}

/// p-th spatial derivative of the traveling wave, p ≤ 5.
///
/// sech⁴ derivatives stay in the span of sech^a·tanh^b terms; the term map
/// is built symbolically and evaluated with the phase chain factor.
pub fn kawahara_space_derivative(x: f64, t: f64, p: usize) -> Result<f64> {
    if p > 5 {
        return Err(Error::OrderUnsupported(format!("spatial derivative order {p} > 5")));
    }
    let mut terms: BTreeMap<(u32, u32), f64> = BTreeMap::new();
    terms.insert((4, 0), 1.0);
    for _ in 0..p {
        let mut next: BTreeMap<(u32, u32), f64> = BTreeMap::new();
        for (&(a, b), &coeff) in &terms {
            // d/dz sech^a tanh^b = −a sech^a tanh^(b+1) + b sech^(a+2) tanh^(b−1)
            *next.entry((a, b + 1)).or_insert(0.0) -= a as f64 * coeff;
            if b > 0 {
                *next.entry((a + 2, b - 1)).or_insert(0.0) += b as f64 * coeff;
            }
        }
        terms = next;
    }
    let z = phase(x, t);
    let (s, th) = (1.0 / z.cosh(), z.tanh());
    let chain = (2.0 * 13.0f64.sqrt()).recip().powi(p as i32);
    let sum: f64 = terms
        .iter()
        .map(|(&(a, b), &coeff)| coeff * s.powi(a as i32) * th.powi(b as i32))
        .sum();
    Ok(PEAK * sum * chain)
}

/// Traveling-wave displacement sampled at time t.
pub fn kawahara_u(grid: &Grid1D, t: f64) -> Result<Field1D> {
    Field1D::from_fn(*grid, |x| kawahara_value(x, t))
}

/// Traveling-wave velocity sampled at time t.
pub fn kawahara_ut(grid: &Grid1D, t: f64) -> Result<Field1D> {
    Field1D::from_fn(*grid, |x| kawahara_time_derivative(x, t))
}
