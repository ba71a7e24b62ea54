//! Linear systems produced by weak-form assembly and their least-squares
//! solution.
//!
//! Systems are solved through a singular value decomposition rather than
//! normal equations, which would square the condition number. The solver
//! always returns the minimum-norm minimizer and reports a condition
//! estimate; callers decide what to do with a rank-deficiency flag.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Condition estimate above which a system is flagged rank deficient.
pub const RANK_DEFICIENCY_THRESHOLD: f64 = 1e12;

/// An M×P system A·Γ = rhs with provenance for each unknown column.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem {
    pub matrix: DMatrix<f64>,
    pub rhs: DVector<f64>,
    /// Which basis function or parameter each column estimates.
    pub column_labels: Vec<String>,
    /// Normalization already applied to each row.
    pub row_scale: Vec<f64>,
}

impl LinearSystem {
    pub fn new(
        matrix: DMatrix<f64>,
        rhs: DVector<f64>,
        column_labels: Vec<String>,
        row_scale: Vec<f64>,
    ) -> Result<Self> {
        let (m, p) = matrix.shape();
        if p < 1 {
            return Err(Error::InvalidSize("system has no unknowns".into()));
        }
        if m < p {
            return Err(Error::UnderdeterminedShape(format!("{m} equations for {p} unknowns")));
        }
        if rhs.len() != m {
            return Err(Error::InvalidSize(format!(
                "right-hand side has {} entries for {m} equations",
                rhs.len()
            )));
        }
        if column_labels.len() != p {
            return Err(Error::InvalidSize(format!(
                "{} column labels for {p} unknowns",
                column_labels.len()
            )));
        }
        if row_scale.len() != m {
            return Err(Error::InvalidSize(format!("{} row scales for {m} equations", row_scale.len())));
        }
        if matrix.iter().any(|v| !v.is_finite()) || rhs.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("system entries must be finite".into()));
        }
        Ok(Self { matrix, rhs, column_labels, row_scale })
    }

    pub fn shape(&self) -> (usize, usize) {
        self.matrix.shape()
    }
}

/// Minimum-norm least-squares minimizer with its diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct LeastSquaresSolution {
    pub coeffs: Vec<f64>,
    pub residual_norm: f64,
    pub condition_estimate: f64,
    /// Condition estimate exceeded the rank-deficiency threshold.
    pub rank_deficient: bool,
}

/// Minimize ‖A·Γ − rhs‖₂ by SVD, truncating singular values at
/// σ_max·ε·max(M,P).
pub fn solve_least_squares(sys: &LinearSystem) -> Result<LeastSquaresSolution> {
    let (m, p) = sys.shape();
    let svd = sys.matrix.clone().svd(true, true);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let sigma_min = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    let condition_estimate = if sigma_min > 0.0 { sigma_max / sigma_min } else { f64::INFINITY };
    let eps = sigma_max * f64::EPSILON * m.max(p) as f64;
    let solution = svd
        .solve(&sys.rhs, eps)
        .map_err(|e| Error::SolveFailure(format!("singular value solve failed: {e}")))?;
    let coeffs: Vec<f64> = solution.iter().cloned().collect();
    if coeffs.iter().any(|v| !v.is_finite()) {
        return Err(Error::SolveFailure("solution has non-finite entries".into()));
    }
    let residual_norm = (&sys.matrix * &solution - &sys.rhs).norm();
    Ok(LeastSquaresSolution {
        coeffs,
        residual_norm,
        condition_estimate,
        rank_deficient: !(condition_estimate <= RANK_DEFICIENCY_THRESHOLD),
    })
}
