//! Interpolation of sparse measurements.
//!
//! Spatial: natural cubic spline through scattered points, evaluated on a
//! target grid. Temporal: Lagrange polynomial through a few time slices,
//! evaluated in barycentric form for numerical safety.

use crate::error::{Error, Result};
use crate::grid::{Field1D, Field2D, Grid1D};

/// Natural cubic spline through `points`, sampled on `target`.
///
/// Points must be strictly increasing in x and span [0, L] of the target grid.
pub fn interpolate_spatial(points: &[(f64, f64)], target: Grid1D) -> Result<Field1D> {
    if points.len() < 4 {
        return Err(Error::TooFewPoints(format!(
            "spline needs at least 4 points, got {}",
            points.len()
        )));
    }
    if points.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(Error::UnsortedPoints("spline abscissae must be strictly increasing".into()));
    }
    let tol = 1e-9 * target.length().max(1.0);
    let (x0, xn) = (points[0].0, points[points.len() - 1].0);
    if x0.abs() > tol || (xn - target.length()).abs() > tol {
        return Err(Error::DomainNotCovered(format!(
            "points span [{x0}, {xn}] but the target grid covers [0, {}]",
            target.length()
        )));
    }

    let n = points.len();
    // Second derivatives at the knots; natural boundary pins both ends to zero.
    let mut sigma = vec![0.0; n];
    let mut diag = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    let mut upper = vec![0.0; n];
    for i in 1..n - 1 {
        let h0 = points[i].0 - points[i - 1].0;
        let h1 = points[i + 1].0 - points[i].0;
        diag[i] = 2.0 * (h0 + h1);
        upper[i] = h1;
        rhs[i] = 6.0
            * ((points[i + 1].1 - points[i].1) / h1 - (points[i].1 - points[i - 1].1) / h0);
    }
    // Thomas sweep over the interior unknowns.
    for i in 2..n - 1 {
        let h0 = points[i].0 - points[i - 1].0;
        let w = h0 / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    for i in (1..n - 1).rev() {
        sigma[i] = (rhs[i] - upper[i] * sigma[i + 1]) / diag[i];
    }

    let mut values = Vec::with_capacity(target.n());
    let mut seg = 0usize;
    for k in 0..target.n() {
        let x = target.node(k).clamp(points[0].0, points[n - 1].0);
        while seg + 2 < n && points[seg + 1].0 < x {
            seg += 1;
        }
        let (xa, ya) = points[seg];
        let (xb, yb) = points[seg + 1];
        let h = xb - xa;
        let a = (xb - x) / h;
        let b = (x - xa) / h;
        let v = a * ya
            + b * yb
            + ((a * a * a - a) * sigma[seg] + (b * b * b - b) * sigma[seg + 1]) * h * h / 6.0;
        values.push(v);
    }
    Field1D::new(target, values)
}

/// Lagrange interpolation in time through slices on a common spatial grid.
pub fn interpolate_time(slices: &[(f64, Field1D)], target_t: Grid1D) -> Result<Field2D> {
    if slices.len() < 2 {
        return Err(Error::TooFewSlices(format!(
            "time interpolation needs at least 2 slices, got {}",
            slices.len()
        )));
    }
    let grid_x = slices[0].1.grid();
    for (_, s) in slices {
        if s.grid() != grid_x {
            return Err(Error::GridMismatch("slices must share a spatial grid".into()));
        }
    }
    let times: Vec<f64> = slices.iter().map(|(t, _)| *t).collect();
    for i in 0..times.len() {
        for j in i + 1..times.len() {
            if times[i] == times[j] {
                return Err(Error::DuplicateTimes(format!("t = {}", times[i])));
            }
        }
    }
    // Barycentric weights w_j = 1/∏(t_j − t_k).
    let mut w = vec![1.0; times.len()];
    for j in 0..times.len() {
        for k in 0..times.len() {
            if k != j {
                w[j] /= times[j] - times[k];
            }
        }
    }

    let nx = grid_x.n();
    let mut values = Vec::with_capacity(nx * target_t.n());
    for it in 0..target_t.n() {
        let t = target_t.node(it);
        if let Some(j) = times.iter().position(|&tj| tj == t) {
            values.extend_from_slice(slices[j].1.values());
            continue;
        }
        let coef: Vec<f64> = times.iter().zip(&w).map(|(&tj, &wj)| wj / (t - tj)).collect();
        let denom: f64 = coef.iter().sum();
        for ix in 0..nx {
            let num: f64 = coef
                .iter()
                .zip(slices)
                .map(|(c, (_, s))| c * s.values()[ix])
                .sum();
            values.push(num / denom);
        }
    }
    Field2D::new(grid_x, target_t, values)
}

/// Rebuild a space-time surface from per-instant estimates: the inverse
/// step of slicing. Estimated profiles at a handful of fixed times are
/// interpolated across the whole target time grid.
pub fn reconstruct_spacetime(
    estimates: &[(f64, Field1D)],
    grid_t: &Grid1D,
) -> Result<Field2D> {
    interpolate_time(estimates, *grid_t)
}
