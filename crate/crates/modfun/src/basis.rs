//! Spatial basis expansions for the unknown functions.
//!
//! The unknown source or coefficient is written as Σ γ_i ξ_i(x); estimation
//! then targets the coefficient vector. Monomials are scaled per power,
//! ξ_i(x) = (x/L)^(i−1), to keep Vandermonde-style columns O(1) on wide
//! domains; Hermite functions are physicists' polynomials on the affinely
//! mapped domain, ξ_i(x) = H_(i−1)(2x/L − 1). Both carry analytic first and
//! second derivatives.

use crate::error::{Error, Result};
use crate::grid::{Field1D, Grid1D};
use crate::quad;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Monomial,
    Hermite,
}

/// I linearly independent functions on [0, L] with derivatives up to order 2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasisSet {
    kind: BasisKind,
    count: usize,
    length: f64,
}

impl BasisSet {
    pub fn monomial(count: usize, length: f64) -> Result<Self> {
        Self::new(BasisKind::Monomial, count, length)
    }

    pub fn hermite(count: usize, length: f64) -> Result<Self> {
        Self::new(BasisKind::Hermite, count, length)
    }

    fn new(kind: BasisKind, count: usize, length: f64) -> Result<Self> {
        if count < 1 {
            return Err(Error::InvalidCount("basis needs at least one function".into()));
        }
        if !length.is_finite() || length <= 0.0 {
            return Err(Error::InvalidDomain(format!("domain length must be positive, got {length}")));
        }
        Ok(Self { kind, count, length })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// p-th derivative of ξ_i at x; i is 1-based, p ≤ 2.
    pub fn eval(&self, i: usize, p: usize, x: f64) -> Result<f64> {
        if i < 1 || i > self.count {
            return Err(Error::IndexOutOfRange(format!("i={i} outside 1..={}", self.count)));
        }
        if p > 2 {
            return Err(Error::OrderUnsupported(format!("basis derivative order {p} > 2")));
        }
        let k = i - 1;
        Ok(match self.kind {
            BasisKind::Monomial => {
                let inv = 1.0 / self.length;
                let y = x * inv;
                match p {
                    0 => powi0(y, k),
                    1 => k as f64 * inv * powi0(y, k.wrapping_sub(1)),
                    _ => (k * k.saturating_sub(1)) as f64 * inv * inv * powi0(y, k.wrapping_sub(2)),
                }
            }
            BasisKind::Hermite => {
                let s = 2.0 / self.length;
                let y = s * x - 1.0;
                // H_k' = 2k·H_(k−1), applied p times with the chain factor s.
                match p {
                    0 => hermite(k, y),
                    1 => 2.0 * k as f64 * s * hermite(k.wrapping_sub(1), y),
                    _ => {
                        4.0 * (k * k.saturating_sub(1)) as f64
                            * s
                            * s
                            * hermite(k.wrapping_sub(2), y)
                    }
                }
            }
        })
    }

    /// ξ_i^(p) at every node of `grid`.
    pub fn sample(&self, i: usize, p: usize, grid: &Grid1D) -> Result<Vec<f64>> {
        (0..grid.n()).map(|k| self.eval(i, p, grid.node(k))).collect()
    }

    /// Condition number of the quadrature-weighted sampled basis matrix
    /// W^(1/2)·V on `grid` (the Gram matrix's factor; cond(Gram) is its
    /// square). A large value signals near-dependence of the basis columns.
    pub fn linear_independence_condition(&self, grid: &Grid1D) -> Result<f64> {
        let w = quad::weights(grid.n(), grid.spacing())?;
        let sqrt_w: Vec<f64> = w.iter().map(|v| v.sqrt()).collect();
        let mut cols = Vec::with_capacity(self.count);
        for i in 1..=self.count {
            let mut col = self.sample(i, 0, grid)?;
            for (c, s) in col.iter_mut().zip(&sqrt_w) {
                *c *= s;
            }
            cols.push(col);
        }
        let mat = nalgebra::DMatrix::from_fn(grid.n(), self.count, |r, c| cols[c][r]);
        let sv = mat.singular_values();
        let max = sv.iter().cloned().fold(0.0f64, f64::max);
        let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        Ok(if min > 0.0 { max / min } else { f64::INFINITY })
    }
}

/// y^k with the 0^0 = 1 convention; k that underflowed usize stays 0 via the
/// zero multiplier in the caller.
fn powi0(y: f64, k: usize) -> f64 {
    if k > i32::MAX as usize {
        // Only reachable through the wrapped k−1 of the k=0 derivative
        // branches, whose coefficient is already zero.
        return 0.0;
    }
    y.powi(k as i32)
}

/// Physicists' Hermite polynomial H_k(y) by the three-term recurrence.
fn hermite(k: usize, y: f64) -> f64 {
    if k > i32::MAX as usize {
        return 0.0; // same wrapped-index convention as powi0
    }
    let (mut prev, mut cur) = (1.0, 2.0 * y);
    match k {
        0 => 1.0,
        1 => cur,
        _ => {
            for j in 1..k {
                let next = 2.0 * y * cur - 2.0 * j as f64 * prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// A basis with its coefficient vector: the reconstructed unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    pub basis: BasisSet,
    pub coeffs: Vec<f64>,
}

impl Expansion {
    pub fn new(basis: BasisSet, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != basis.count() {
            return Err(Error::InvalidCount(format!(
                "{} coefficients for a {}-function basis",
                coeffs.len(),
                basis.count()
            )));
        }
        if let Some(c) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::NonFinite(format!("coefficient {c}")));
        }
        Ok(Self { basis, coeffs })
    }

    /// Σ γ_i ξ_i^(p) sampled on `grid`; p ≤ 2.
    pub fn sample(&self, grid: &Grid1D, p: usize) -> Result<Field1D> {
        let mut values = vec![0.0; grid.n()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let col = self.basis.sample(i + 1, p, grid)?;
            for (v, b) in values.iter_mut().zip(col) {
                *v += c * b;
            }
        }
        Field1D::new(*grid, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_values_and_derivatives() {
        let b = BasisSet::monomial(4, 1.0).unwrap();
        assert_eq!(b.eval(1, 0, 0.7).unwrap(), 1.0);
        assert_eq!(b.eval(1, 1, 0.7).unwrap(), 0.0);
        assert_eq!(b.eval(1, 2, 0.7).unwrap(), 0.0);
        assert_eq!(b.eval(3, 0, 0.5).unwrap(), 0.25);
        assert_eq!(b.eval(3, 2, 0.9).unwrap(), 2.0);
        let b3 = BasisSet::monomial(4, 3.0).unwrap();
        assert_eq!(b3.eval(4, 0, 3.0).unwrap(), 1.0, "unit value at the right endpoint");
        assert!((b3.eval(2, 1, 1.7).unwrap() - 1.0 / 3.0).abs() <= 1e-15);
    }

    #[test]
    fn hermite_values_match_closed_forms() {
        let b = BasisSet::hermite(3, 1.0).unwrap();
        // H1(2x−1) = 2(2x−1) vanishes at the domain midpoint.
        assert_eq!(b.eval(2, 0, 0.5).unwrap(), 0.0);
        assert_eq!(b.eval(3, 0, 0.5).unwrap(), -2.0, "H2(0) = −2");
        assert_eq!(b.eval(2, 0, 1.0).unwrap(), 2.0);
        assert_eq!(b.eval(3, 0, 1.0).unwrap(), 2.0, "H2(1) = 4−2");
    }

    /// Order-6 central difference, the derivative oracle.
    fn fd6(g: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (45.0 * (g(x + h) - g(x - h)) - 9.0 * (g(x + 2.0 * h) - g(x - 2.0 * h))
            + (g(x + 3.0 * h) - g(x - 3.0 * h)))
            / (60.0 * h)
    }

    #[test]
    fn derivatives_match_finite_difference_oracle() {
        for basis in [BasisSet::monomial(6, 3.0).unwrap(), BasisSet::hermite(6, 3.0).unwrap()] {
            for i in 1..=6usize {
                for p in 1..=2usize {
                    for &x in &[0.4, 1.5, 2.6] {
                        let lower = |y: f64| basis.eval(i, p - 1, y).unwrap();
                        let expect = fd6(lower, x, 1e-3);
                        let got = basis.eval(i, p, x).unwrap();
                        assert!(
                            (got - expect).abs() <= 1e-7 * expect.abs().max(1.0),
                            "{:?} i={i} p={p} x={x}: got {got}, fd {expect}",
                            basis.kind()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn bases_stay_independent_on_the_standard_grid() {
        let grid = Grid1D::new(601, 3.0).unwrap();
        for count in [2usize, 6, 10] {
            for basis in [
                BasisSet::monomial(count, 3.0).unwrap(),
                BasisSet::hermite(count, 3.0).unwrap(),
            ] {
                let cond = basis.linear_independence_condition(&grid).unwrap();
                assert!(
                    cond < 1e12,
                    "{:?} I={count}: condition {cond:e}",
                    basis.kind()
                );
            }
        }
    }

    #[test]
    fn expansion_sampling_and_linearity() {
        let grid = Grid1D::new(101, 2.0).unwrap();
        let basis = BasisSet::monomial(4, 2.0).unwrap();
        let constant = Expansion::new(basis, vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(constant.sample(&grid, 0).unwrap().values().iter().all(|&v| v == 1.0));
        let zero = Expansion::new(basis, vec![0.0; 4]).unwrap();
        assert!(zero.sample(&grid, 0).unwrap().values().iter().all(|&v| v == 0.0));

        let c1 = vec![0.3, -1.0, 2.0, 0.7];
        let c2 = vec![1.1, 0.4, -0.6, 0.2];
        let (a, b) = (2.0, -0.5);
        let combined: Vec<f64> = c1.iter().zip(&c2).map(|(x, y)| a * x + b * y).collect();
        let lhs = Expansion::new(basis, combined).unwrap().sample(&grid, 0).unwrap();
        let e1 = Expansion::new(basis, c1).unwrap().sample(&grid, 0).unwrap();
        let e2 = Expansion::new(basis, c2).unwrap().sample(&grid, 0).unwrap();
        for k in 0..grid.n() {
            let rhs = a * e1.values()[k] + b * e2.values()[k];
            assert!((lhs.values()[k] - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
        }
    }

    #[test]
    fn expansion_approximates_sine_with_taylor_coefficients() {
        // sin(x) ≈ x − x³/6 + x⁵/120 on [0,1]; remainder ≤ 1/5040.
        let grid = Grid1D::new(201, 1.0).unwrap();
        let basis = BasisSet::monomial(6, 1.0).unwrap();
        let e = Expansion::new(basis, vec![0.0, 1.0, 0.0, -1.0 / 6.0, 0.0, 1.0 / 120.0]).unwrap();
        let approx = e.sample(&grid, 0).unwrap();
        let max_err = approx
            .values()
            .iter()
            .enumerate()
            .map(|(k, v)| (v - grid.node(k).sin()).abs())
            .fold(0.0f64, f64::max);
        assert!(max_err <= 1.0 / 5040.0 + 1e-12, "max err {max_err}");
        assert!(max_err >= 1e-6, "the degree-5 Taylor residual is genuinely visible");
    }

    #[test]
    fn derivative_consistency_with_central_differences() {
        let grid = Grid1D::new(2001, 3.0).unwrap();
        let basis = BasisSet::hermite(5, 3.0).unwrap();
        let e = Expansion::new(basis, vec![0.5, -0.2, 0.1, 0.3, -0.05]).unwrap();
        let f0 = e.sample(&grid, 0).unwrap();
        let f1 = e.sample(&grid, 1).unwrap();
        let h = grid.spacing();
        for k in 1..grid.n() - 1 {
            let fd = (f0.values()[k + 1] - f0.values()[k - 1]) / (2.0 * h);
            assert!(
                (f1.values()[k] - fd).abs() <= 10.0 * h * h,
                "node {k}: analytic {} vs central {fd}",
                f1.values()[k]
            );
        }
    }

    #[test]
    fn argument_validation() {
        assert!(matches!(BasisSet::monomial(0, 1.0), Err(Error::InvalidCount(_))));
        assert!(matches!(BasisSet::hermite(2, -1.0), Err(Error::InvalidDomain(_))));
        let b = BasisSet::monomial(2, 1.0).unwrap();
        assert!(matches!(b.eval(0, 0, 0.5), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(b.eval(3, 0, 0.5), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(b.eval(1, 3, 0.5), Err(Error::OrderUnsupported(_))));
        assert!(matches!(Expansion::new(b, vec![1.0]), Err(Error::InvalidCount(_))));
        assert!(matches!(Expansion::new(b, vec![1.0, f64::NAN]), Err(Error::NonFinite(_))));
    }
}
