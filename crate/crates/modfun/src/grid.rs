//! Uniform 1D grids and sampled fields.
//!
//! A [`Grid1D`] covers [0, L] with N equispaced nodes; the same type serves the
//! time axis (L is then the duration T). [`Field1D`] and [`Field2D`] carry
//! samples of u, u_t, u_tt, c, f on such grids. Fields are immutable after
//! construction and validated to be finite, so downstream numerics never see
//! NaN or infinity.

use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::path::Path;

/// Uniform grid on [0, L] with N ≥ 3 nodes, x_k = k·Δ, Δ = L/(N−1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    n: usize,
    length: f64,
}

impl Grid1D {
    pub fn new(n: usize, length: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSize(format!("grid needs at least 3 nodes, got {n}")));
        }
        if !length.is_finite() || length <= 0.0 {
            return Err(Error::InvalidDomain(format!("grid length must be positive and finite, got {length}")));
        }
        Ok(Self { n, length })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn spacing(&self) -> f64 {
        self.length / (self.n - 1) as f64
    }

    /// k-th node; k = N−1 returns exactly L.
    pub fn node(&self, k: usize) -> f64 {
        self.length * (k as f64 / (self.n - 1) as f64)
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.node(k)).collect()
    }
}

/// Samples of a scalar function on a [`Grid1D`].
#[derive(Clone, Debug, PartialEq)]
pub struct Field1D {
    grid: Grid1D,
    values: Vec<f64>,
}

impl Field1D {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::InvalidSize(format!(
                "field has {} values for a {}-node grid",
                values.len(),
                grid.n()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("field value {v}")));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..grid.n()).map(|k| f(grid.node(k))).collect();
        Self::new(grid, values)
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self { grid, values: vec![0.0; grid.n()] }
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Euclidean norm of the sample vector (the percent-error metric's norm).
    pub fn norm_l2(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn norm_max(&self) -> f64 {
        self.values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    /// CSV with header `x,value`, one row per node.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,value\n");
        for k in 0..self.grid.n() {
            let _ = writeln!(out, "{},{}", self.grid.node(k), self.values[k]);
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(h) if h.trim() == "x,value" => {}
            other => {
                return Err(Error::InvalidSize(format!("expected header 'x,value', got {other:?}")));
            }
        }
        let mut xs = Vec::new();
        let mut vs = Vec::new();
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.splitn(2, ',');
            let x: f64 = parse_float(parts.next())?;
            let v: f64 = parse_float(parts.next())?;
            xs.push(x);
            vs.push(v);
        }
        let grid = infer_grid(&xs)?;
        Self::new(grid, vs)
    }
}

/// Samples of a scalar function on a space-time grid, row-major with t outer.
#[derive(Clone, Debug, PartialEq)]
pub struct Field2D {
    grid_x: Grid1D,
    grid_t: Grid1D,
    values: Vec<f64>,
}

impl Field2D {
    pub fn new(grid_x: Grid1D, grid_t: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid_x.n() * grid_t.n() {
            return Err(Error::InvalidSize(format!(
                "field has {} values for a {}x{} grid",
                values.len(),
                grid_t.n(),
                grid_x.n()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("field value {v}")));
        }
        Ok(Self { grid_x, grid_t, values })
    }

    pub fn from_fn(grid_x: Grid1D, grid_t: Grid1D, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(grid_x.n() * grid_t.n());
        for it in 0..grid_t.n() {
            let t = grid_t.node(it);
            for ix in 0..grid_x.n() {
                values.push(f(grid_x.node(ix), t));
            }
        }
        Self::new(grid_x, grid_t, values)
    }

    pub fn grid_x(&self) -> Grid1D {
        self.grid_x
    }

    pub fn grid_t(&self) -> Grid1D {
        self.grid_t
    }

    pub fn at(&self, it: usize, ix: usize) -> f64 {
        self.values[it * self.grid_x.n() + ix]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Spatial slice at time index `it`.
    pub fn slice_t(&self, it: usize) -> Result<Field1D> {
        if it >= self.grid_t.n() {
            return Err(Error::IndexOutOfRange(format!(
                "time index {it} on a {}-node time grid",
                self.grid_t.n()
            )));
        }
        let nx = self.grid_x.n();
        Field1D::new(self.grid_x, self.values[it * nx..(it + 1) * nx].to_vec())
    }

    pub fn norm_l2(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// CSV with header `t,x,value`, t outer.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x,value\n");
        for it in 0..self.grid_t.n() {
            let t = self.grid_t.node(it);
            for ix in 0..self.grid_x.n() {
                let _ = writeln!(out, "{},{},{}", t, self.grid_x.node(ix), self.at(it, ix));
            }
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

fn parse_float(part: Option<&str>) -> Result<f64> {
    let s = part.ok_or_else(|| Error::InvalidSize("missing CSV column".into()))?;
    s.trim()
        .parse::<f64>()
        .map_err(|e| Error::InvalidSize(format!("bad CSV number {s:?}: {e}")))
}

/// Recover the uniform grid from node abscissae, validating uniformity.
fn infer_grid(xs: &[f64]) -> Result<Grid1D> {
    if xs.len() < 3 {
        return Err(Error::GridTooSmall(format!("{} nodes in CSV", xs.len())));
    }
    let n = xs.len();
    if xs[0] != 0.0 {
        return Err(Error::InvalidDomain(format!("first node {} is not 0", xs[0])));
    }
    let length = xs[n - 1];
    let grid = Grid1D::new(n, length)?;
    let tol = 1e-9 * length.max(1.0);
    for (k, &x) in xs.iter().enumerate() {
        if (x - grid.node(k)).abs() > tol {
            return Err(Error::GridMismatch(format!("node {k} at {x} is not uniform")));
        }
    }
    Ok(grid)
}
