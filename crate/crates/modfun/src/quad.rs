//! Composite quadrature on uniform grids.
//!
//! Composite Simpson for odd node counts (even panel count); for even node
//! counts Simpson covers all but the last panel, which gets the trapezoid
//! rule. Simpson weights are positive, which the noise-error bound relies on.

use crate::error::{Error, Result};
use crate::grid::Field1D;

/// Quadrature weights for an N-node uniform grid with spacing `dx`.
pub fn weights(n: usize, dx: f64) -> Result<Vec<f64>> {
    if n < 3 {
        return Err(Error::GridTooSmall(format!("quadrature needs at least 3 nodes, got {n}")));
    }
    // Simpson over the leading odd-count section; trapezoid on a leftover panel.
    let simpson_nodes = if n % 2 == 1 { n } else { n - 1 };
    let mut w = vec![0.0; n];
    let h3 = dx / 3.0;
    w[0] = h3;
    w[simpson_nodes - 1] += h3;
    for k in 1..simpson_nodes - 1 {
        w[k] = if k % 2 == 1 { 4.0 * h3 } else { 2.0 * h3 };
    }
    if n % 2 == 0 {
        w[n - 2] += dx / 2.0;
        w[n - 1] += dx / 2.0;
    }
    Ok(w)
}

/// ∫ f over [0, L] from the field's samples.
pub fn integrate(f: &Field1D) -> Result<f64> {
    let w = weights(f.grid().n(), f.grid().spacing())?;
    Ok(dot(&w, f.values()))
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;

    #[test]
    fn constant_integrates_to_domain_length() {
        let g = Grid1D::new(301, 3.0).unwrap();
        let f = Field1D::from_fn(g, |_| 1.0).unwrap();
        assert!((integrate(&f).unwrap() - 3.0).abs() <= 1e-13);
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        let g = Grid1D::new(101, 1.0).unwrap();
        let f = Field1D::from_fn(g, |x| x * x * x).unwrap();
        assert!((integrate(&f).unwrap() - 0.25).abs() <= 1e-12);
    }

    #[test]
    fn matches_beta_integral_oracle() {
        // Oracle: ∫0..1 (1−x)^4 x^4 dx = B(5,5) = 4!·4!/9!, computed from factorials.
        let fact = |k: u64| -> f64 { (1..=k).product::<u64>() as f64 };
        let beta = fact(4) * fact(4) / fact(9);
        let g = Grid1D::new(3001, 1.0).unwrap();
        let f = Field1D::from_fn(g, |x| (1.0 - x).powi(4) * x.powi(4)).unwrap();
        let got = integrate(&f).unwrap();
        assert!(
            (got - beta).abs() <= 1e-9,
            "got {got}, oracle {beta}"
        );
        assert!((beta - 1.0 / 630.0).abs() <= 1e-18);
    }

    #[test]
    fn even_node_count_uses_trapezoid_tail() {
        // Quadratic on an even-count grid: Simpson part exact, trapezoid panel
        // carries the only error, h^3/12·f'' on the last panel.
        let g = Grid1D::new(100, 1.0).unwrap();
        let f = Field1D::from_fn(g, |x| x * x).unwrap();
        let h = g.spacing();
        let expected_err = h.powi(3) / 6.0; // trapezoid error for f''=2: h^3·f''/12
        let got = integrate(&f).unwrap();
        assert!(((got - 1.0 / 3.0) - expected_err).abs() <= 1e-12, "err {}", got - 1.0 / 3.0);
    }

    #[test]
    fn rejects_tiny_grids() {
        assert!(matches!(weights(2, 0.5), Err(Error::GridTooSmall(_))));
    }

    #[test]
    fn weights_are_positive() {
        for n in [3usize, 4, 5, 6, 601, 602] {
            let w = weights(n, 0.1).unwrap();
            assert!(w.iter().all(|&x| x > 0.0), "n={n}");
            let total: f64 = w.iter().sum();
            assert!((total - 0.1 * (n - 1) as f64).abs() <= 1e-12, "weights sum to L, n={n}");
        }
    }
}
