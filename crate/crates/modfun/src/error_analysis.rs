//! How measurement noise propagates into the assembled right-hand side.
//!
//! Additive noise h₁ on the displacement and h₂ on the acceleration
//! perturbs each load entry by e_m = ∫(φ_m h₂ − c φ_m″ h₁)dx. Because the
//! quadrature weights are positive and sum to the interval length, the
//! closed-form bound ‖e‖₁ ≤ M·ν·δ·(1+c)·L holds for the discrete integrals
//! exactly, with ν the largest modulating-function amplitude (value or
//! second derivative) and δ the largest pointwise noise amplitude.

use crate::error::{Error, Result};
use crate::grid::{Field1D, Grid1D};
use crate::modulating::ModulatingFamily;
use crate::quad;

/// Perturbation e_m = ∫(φ_m h₂ − c φ_m″ h₁)dx per modulating function.
pub fn noise_error_vector(
    h1: &Field1D,
    h2: &Field1D,
    c: f64,
    fam: &ModulatingFamily,
) -> Result<Vec<f64>> {
    let grid = h1.grid();
    if h2.grid() != grid {
        return Err(Error::GridMismatch("noise fields live on different grids".into()));
    }
    let tol = 1e-9 * grid.length().max(1.0);
    if (fam.length() - grid.length()).abs() > tol {
        return Err(Error::GridMismatch(format!(
            "family lives on [0, {}] but the noise grid spans [0, {}]",
            fam.length(),
            grid.length()
        )));
    }
    let w = quad::weights(grid.n(), grid.spacing())?;
    let mut e = Vec::with_capacity(fam.count());
    for m in 1..=fam.count() {
        let phi0 = fam.sample(m, 0, &grid)?;
        let phi2 = fam.sample(m, 2, &grid)?;
        let val: f64 = w
            .iter()
            .enumerate()
            .map(|(k, w)| w * (phi0[k] * h2.values()[k] - c * phi2[k] * h1.values()[k]))
            .sum();
        e.push(val);
    }
    Ok(e)
}

/// Closed-form load-perturbation bound M·ν·δ·(1+c)·L.
///
/// All arguments are magnitudes and must be nonnegative.
pub fn error_bound(count: usize, nu: f64, delta: f64, c: f64, length: f64) -> f64 {
    count as f64 * nu * delta * (1.0 + c) * length
}

/// ν for a family on a grid: the largest nodal amplitude among values and
/// second derivatives of all members.
pub fn family_amplitude(fam: &ModulatingFamily, grid: &Grid1D) -> Result<f64> {
    Ok(fam.max_abs_derivative(0, grid)?.max(fam.max_abs_derivative(2, grid)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    #[test]
    fn silent_channels_produce_no_perturbation() {
        let grid = Grid1D::new(501, 3.0).unwrap();
        let fam = ModulatingFamily::polynomial(6, 3.0, 3.0).unwrap();
        let zero = Field1D::zeros(grid);
        let e = noise_error_vector(&zero, &zero, 0.5, &fam).unwrap();
        assert_eq!(e.len(), 6);
        assert!(e.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn acceleration_noise_orthogonal_to_the_first_function_vanishes_there() {
        let grid = Grid1D::new(801, 3.0).unwrap();
        let fam = ModulatingFamily::polynomial(4, 3.0, 3.0).unwrap();
        let w = quad::weights(grid.n(), grid.spacing()).unwrap();
        let phi1 = fam.sample(1, 0, &grid).unwrap();
        // project an arbitrary profile against φ₁ under the quadrature
        // inner product, then remove that component
        let v: Vec<f64> = grid.nodes().iter().map(|x| (1.7 * x).cos() + 0.3 * x).collect();
        let inner: f64 = w.iter().enumerate().map(|(k, w)| w * v[k] * phi1[k]).sum();
        let norm: f64 = w.iter().enumerate().map(|(k, w)| w * phi1[k] * phi1[k]).sum();
        let h2_vals: Vec<f64> =
            v.iter().zip(&phi1).map(|(v, p)| v - inner / norm * p).collect();
        let h2 = Field1D::new(grid, h2_vals).unwrap();
        let e = noise_error_vector(&Field1D::zeros(grid), &h2, 2.0, &fam).unwrap();
        assert!(e[0].abs() <= 1e-12, "projected-out component left {}", e[0]);
        assert!(e[1].abs() > 1e-6, "other components still see the noise");
    }

    #[test]
    fn every_component_respects_the_amplitude_bound() {
        let grid = Grid1D::new(601, 3.0).unwrap();
        let fam = ModulatingFamily::polynomial(8, 3.0, 3.0).unwrap();
        let nu = family_amplitude(&fam, &grid).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for c in [0.0, 0.5, 2.0] {
            for _ in 0..20 {
                let amp = rng.random_range(0.01..2.0);
                let h1 = Field1D::new(
                    grid,
                    (0..grid.n()).map(|_| rng.random_range(-amp..amp)).collect(),
                )
                .unwrap();
                let h2 = Field1D::new(
                    grid,
                    (0..grid.n()).map(|_| rng.random_range(-amp..amp)).collect(),
                )
                .unwrap();
                let delta = h1.norm_max().max(h2.norm_max());
                let e = noise_error_vector(&h1, &h2, c, &fam).unwrap();
                let per_component = error_bound(1, nu, delta, c, grid.length());
                for (m, v) in e.iter().enumerate() {
                    assert!(
                        v.abs() <= per_component,
                        "m={} |e|={} bound={per_component}",
                        m + 1,
                        v.abs()
                    );
                }
                let l1: f64 = e.iter().map(|v| v.abs()).sum();
                assert!(l1 <= error_bound(8, nu, delta, c, grid.length()));
            }
        }
    }

    #[test]
    fn bound_formula_basics() {
        assert_eq!(error_bound(12, 3.0, 0.0, 1.0, 3.0), 0.0);
        assert_eq!(error_bound(1, 1.0, 1.0, 0.0, 1.0), 1.0);
        let base = error_bound(9, 1.3, 0.05, 0.5, 3.0);
        assert!((error_bound(9, 1.3, 0.05, 0.5, 6.0) - 2.0 * base).abs() <= 1e-12);
        assert!((error_bound(18, 1.3, 0.05, 0.5, 3.0) - 2.0 * base).abs() <= 1e-12);
        assert!((error_bound(9, 1.3, 0.10, 0.5, 3.0) - 2.0 * base).abs() <= 1e-12);
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let fam = ModulatingFamily::polynomial(3, 3.0, 3.0).unwrap();
        let a = Field1D::zeros(Grid1D::new(101, 3.0).unwrap());
        let b = Field1D::zeros(Grid1D::new(51, 3.0).unwrap());
        assert!(matches!(noise_error_vector(&a, &b, 0.5, &fam), Err(Error::GridMismatch(_))));
        let short = Field1D::zeros(Grid1D::new(101, 2.0).unwrap());
        assert!(matches!(
            noise_error_vector(&short, &short, 0.5, &fam),
            Err(Error::GridMismatch(_))
        ));
    }
}
