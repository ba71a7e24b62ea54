//! Modulating-function families with analytic derivatives.
//!
//! A family of M test functions on [0, L] whose derivatives up to order l−1
//! vanish at both endpoints, so repeated integration by parts against them
//! drops all boundary terms. Two kinds:
//!
//! * polynomial: φ_m(x) = (L−x)^(q+m) · x^(q+M+1−m), vanishing order floor(q)+1
//! * sinusoidal: φ_m(x) = sin^n(mπx/L), vanishing order n
//!
//! Every function is normalized to unit max-norm by its scale s_m: the raw
//! polynomial values overflow all usefulness for L = 60 and q = 8 (factors
//! like 30^26), and scaling a row of a consistent linear system together with
//! its right-hand side leaves the solution unchanged. Derivatives are always
//! evaluated analytically; measured data is never differentiated.

use crate::error::{Error, Result};
use crate::grid::Grid1D;

const MAX_DERIVATIVE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FamilyKind {
    /// Freedom degree q ≥ 0.
    Polynomial { q: f64 },
    /// Power n ≥ 2.
    Sinusoidal { n: u32 },
}

/// An immutable family of M modulating functions on [0, L].
#[derive(Clone, Debug)]
pub struct ModulatingFamily {
    kind: FamilyKind,
    count: usize,
    length: f64,
    order: usize,
    scale: Vec<f64>,
    /// Sinusoidal kind only: per derivative order p, the expansion of
    /// d^p/dy^p sin^n(y) as Σ coeff·sin^a(y)cos^b(y).
    trig_terms: Vec<Vec<(u32, u32, f64)>>,
}

impl ModulatingFamily {
    /// Polynomial family (L−x)^(q+m)·x^(q+M+1−m), m = 1..M.
    pub fn polynomial(count: usize, q: f64, length: f64) -> Result<Self> {
        if count < 1 {
            return Err(Error::InvalidSize("family needs at least one function".into()));
        }
        if !length.is_finite() || length <= 0.0 {
            return Err(Error::InvalidDomain(format!("domain length must be positive, got {length}")));
        }
        if !q.is_finite() || q < 0.0 {
            return Err(Error::InvalidDomain(format!("freedom degree must be nonnegative, got {q}")));
        }
        let mut scale = Vec::with_capacity(count);
        for m in 1..=count {
            let a = q + m as f64;
            let b = q + (count + 1 - m) as f64;
            // The raw function is nonnegative with a single interior maximum.
            let x_star = b * length / (a + b);
            let s = (length - x_star).powf(a) * x_star.powf(b);
            if !s.is_finite() || s <= 0.0 {
                return Err(Error::NonFinite(format!("normalization scale for m={m} is {s}")));
            }
            scale.push(s);
        }
        Ok(Self {
            kind: FamilyKind::Polynomial { q },
            count,
            length,
            order: q.floor() as usize + 1,
            scale,
            trig_terms: Vec::new(),
        })
    }

    /// Sinusoidal family sin^n(mπx/L), m = 1..M.
    pub fn sinusoidal(count: usize, n: u32, length: f64) -> Result<Self> {
        if count < 1 {
            return Err(Error::InvalidSize("family needs at least one function".into()));
        }
        if !length.is_finite() || length <= 0.0 {
            return Err(Error::InvalidDomain(format!("domain length must be positive, got {length}")));
        }
        if n < 2 {
            return Err(Error::OrderTooLow(format!("sinusoidal power must be at least 2, got {n}")));
        }
        let trig_terms = (0..=MAX_DERIVATIVE).map(|p| sine_power_derivative_terms(n, p)).collect();
        Ok(Self {
            kind: FamilyKind::Sinusoidal { n },
            count,
            length,
            order: n as usize,
            scale: vec![1.0; count],
            trig_terms,
        })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Verified vanishing order l: derivatives 0..l−1 vanish at both endpoints.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Normalization factor s_m (max of the raw function), m 1-based.
    pub fn scale(&self, m: usize) -> Result<f64> {
        self.check_m(m)?;
        Ok(self.scale[m - 1])
    }

    fn check_m(&self, m: usize) -> Result<()> {
        if m < 1 || m > self.count {
            return Err(Error::IndexOutOfRange(format!("m={m} outside 1..={}", self.count)));
        }
        Ok(())
    }

    /// p-th derivative of the normalized φ_m at x, analytically.
    pub fn eval_derivative(&self, m: usize, p: usize, x: f64) -> Result<f64> {
        self.check_m(m)?;
        if p > MAX_DERIVATIVE {
            return Err(Error::OrderUnsupported(format!("derivative order {p} > {MAX_DERIVATIVE}")));
        }
        if !(0.0..=self.length).contains(&x) {
            return Err(Error::PointOutsideDomain(format!("x={x} outside [0, {}]", self.length)));
        }
        let raw = match self.kind {
            FamilyKind::Polynomial { q } => {
                let a = q + m as f64;
                let b = q + (self.count + 1 - m) as f64;
                // Leibniz over the two power factors.
                let mut sum = 0.0;
                for j in 0..=p {
                    let cl = falling(a, j);
                    let cr = falling(b, p - j);
                    if cl == 0.0 || cr == 0.0 {
                        continue;
                    }
                    let sign = if j % 2 == 1 { -1.0 } else { 1.0 };
                    sum += binomial(p, j)
                        * sign
                        * cl
                        * (self.length - x).powf(a - j as f64)
                        * cr
                        * x.powf(b - (p - j) as f64);
                }
                sum
            }
            FamilyKind::Sinusoidal { .. } => {
                let k = m as f64 * std::f64::consts::PI / self.length;
                let (s, c) = (k * x).sin_cos();
                let sum: f64 = self.trig_terms[p]
                    .iter()
                    .map(|&(a, b, coeff)| coeff * s.powi(a as i32) * c.powi(b as i32))
                    .sum();
                k.powi(p as i32) * sum
            }
        };
        Ok(raw / self.scale[m - 1])
    }

    /// Normalized φ_m^(p) sampled at every node of `grid`.
    pub fn sample(&self, m: usize, p: usize, grid: &Grid1D) -> Result<Vec<f64>> {
        (0..grid.n()).map(|k| self.eval_derivative(m, p, grid.node(k))).collect()
    }

    /// max over the family and the grid of |φ_m^(p)|.
    pub fn max_abs_derivative(&self, p: usize, grid: &Grid1D) -> Result<f64> {
        let mut best = 0.0f64;
        for m in 1..=self.count {
            for v in self.sample(m, p, grid)? {
                best = best.max(v.abs());
            }
        }
        Ok(best)
    }

    /// Boundary-vanishing diagnostic for a required order `l`.
    ///
    /// Checks |φ_m^(p)| at both endpoints for all m and p < l, relative to the
    /// function's max over `grid`; passes iff the worst residual is ≤ 1e−10.
    pub fn verify_order(&self, l: usize, grid: &Grid1D) -> Result<OrderCheck> {
        if l < 1 {
            return Err(Error::InvalidCount("required order must be at least 1".into()));
        }
        if l > MAX_DERIVATIVE + 1 {
            return Err(Error::OrderUnsupported(format!(
                "order check needs derivative {} > {MAX_DERIVATIVE}",
                l - 1
            )));
        }
        let mut worst = OrderCheck { pass: true, max_residual: 0.0, worst_m: 1, worst_p: 0 };
        for m in 1..=self.count {
            for p in 0..l {
                let denom = self
                    .sample(m, p, grid)?
                    .iter()
                    .fold(0.0f64, |acc, v| acc.max(v.abs()))
                    .max(f64::MIN_POSITIVE);
                let end = self.eval_derivative(m, p, 0.0)?.abs().max(self.eval_derivative(m, p, self.length)?.abs());
                let residual = end / denom;
                if residual > worst.max_residual {
                    worst.max_residual = residual;
                    worst.worst_m = m;
                    worst.worst_p = p;
                }
            }
        }
        worst.pass = worst.max_residual <= 1e-10;
        Ok(worst)
    }
}

/// Result of the boundary-vanishing check.
#[derive(Clone, Copy, Debug)]
pub struct OrderCheck {
    pub pass: bool,
    /// max over m, p < l of |φ_m^(p)(endpoint)| / max_x|φ_m^(p)(x)|
    pub max_residual: f64,
    pub worst_m: usize,
    pub worst_p: usize,
}

/// a·(a−1)···(a−j+1); empty product for j = 0.
fn falling(a: f64, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (a - i as f64))
}

fn binomial(p: usize, j: usize) -> f64 {
    (falling(p as f64, j) / (1..=j).product::<usize>() as f64).round()
}

/// Expansion of d^p/dy^p sin^n(y) as Σ coeff·sin^a·cos^b, built by
/// differentiating the term list symbolically.
fn sine_power_derivative_terms(n: u32, p: usize) -> Vec<(u32, u32, f64)> {
    use std::collections::BTreeMap;
    let mut terms: BTreeMap<(u32, u32), f64> = BTreeMap::new();
    terms.insert((n, 0), 1.0);
    for _ in 0..p {
        let mut next: BTreeMap<(u32, u32), f64> = BTreeMap::new();
        for (&(a, b), &coeff) in &terms {
            if a > 0 {
                *next.entry((a - 1, b + 1)).or_insert(0.0) += coeff * a as f64;
            }
            if b > 0 {
                *next.entry((a + 1, b - 1)).or_insert(0.0) -= coeff * b as f64;
            }
        }
        terms = next;
    }
    terms.into_iter().filter(|&(_, c)| c != 0.0).map(|((a, b), c)| (a, b, c)).collect()
}
