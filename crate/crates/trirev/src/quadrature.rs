//! Composite quadrature for vector-valued integrals ∫_a^b f(t) dt.
//!
//! Default rule: composite Gauss–Legendre of order 8 on 16 panels, refined by panel
//! doubling until the result stabilises (up to 6 doublings). Gauss–Legendre nodes are
//! produced by Newton iteration on the Legendre polynomials. Panel sums run strictly
//! left to right so results do not depend on evaluation order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{Scalar, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadRule {
    GaussLegendre(usize),
    Simpson,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rule: QuadRule,
    pub panels: usize,
    /// Maximum number of panel doublings in the convergence check.
    pub refinement: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rule: QuadRule::GaussLegendre(8),
            panels: 16,
            refinement: 6,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if let QuadRule::GaussLegendre(order) = self.rule {
            if order < 2 {
                return Err(Error::InvalidConfig("gauss_legendre order must be >= 2".into()));
            }
        }
        if self.panels == 0 {
            return Err(Error::InvalidConfig("panels must be >= 1".into()));
        }
        Ok(())
    }

    /// (node, weight) pairs covering the given contiguous segments, with
    /// `panels · 2^level` panels per segment. Panel boundaries land exactly on
    /// segment endpoints.
    pub fn nodes(&self, segments: &[(f64, f64)], level: usize) -> Result<Vec<(f64, f64)>> {
        self.validate()?;
        let panels = self.panels << level;
        let base: Vec<(f64, f64)> = match self.rule {
            QuadRule::GaussLegendre(order) => gauss_legendre(order),
            QuadRule::Simpson => vec![(-1.0, 1.0 / 3.0), (0.0, 4.0 / 3.0), (1.0, 1.0 / 3.0)],
        };
        let mut out = Vec::with_capacity(segments.len() * panels * base.len());
        for &(a, b) in segments {
            if !(b > a) {
                return Err(Error::InvalidConfig(format!(
                    "segment [{a}, {b}] must have a < b"
                )));
            }
            let h = (b - a) / panels as f64;
            for i in 0..panels {
                let lo = a + i as f64 * h;
                let mid = lo + 0.5 * h;
                for &(x, w) in &base {
                    out.push((mid + 0.5 * h * x, 0.5 * h * w));
                }
            }
        }
        Ok(out)
    }
}

/// Nodes and weights of the order-n Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev-flavoured initial guess, then Newton on P_n
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite nodes"));
    out
}

/// P_n(x) and P_n'(x) via the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Weighted sum Σ w_i·g(t_i), left to right.
pub fn weighted_sum(nodes: &[(f64, f64)], mut g: impl FnMut(f64) -> f64) -> f64 {
    let mut acc = 0.0;
    for &(t, w) in nodes {
        acc += w * g(t);
    }
    acc
}

/// Componentwise weighted sum of a vector-valued map.
pub fn weighted_sum_vec(
    nodes: &[(f64, f64)],
    dim: usize,
    mut f: impl FnMut(f64) -> Vector,
) -> Vector {
    let mut acc = vec![Scalar::new(0.0, 0.0); dim];
    for &(t, w) in nodes {
        let v = f(t);
        for (a, z) in acc.iter_mut().zip(v.entries()) {
            *a += z * w;
        }
    }
    Vector::new(acc).expect("finite accumulation")
}
