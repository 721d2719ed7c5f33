//! Scale-aware tolerance policy.
//!
//! An inequality `lhs ≤ rhs` passes iff `lhs ≤ rhs + abs + rel·max(|lhs|,|rhs|)`;
//! equality diagnosis applies the same slack to `|lhs − rhs|`. One policy object is
//! threaded through every check so suite-level overrides apply uniformly.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

pub const DEFAULT_TOL_ABS: f64 = 1e-9;
pub const DEFAULT_TOL_REL: f64 = 1e-7;

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: DEFAULT_TOL_ABS,
            rel: DEFAULT_TOL_REL,
        }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel }
    }

    /// Slack allowed when comparing two quantities of the given magnitudes.
    pub fn slack(&self, a: f64, b: f64) -> f64 {
        self.abs + self.rel * a.abs().max(b.abs())
    }

    /// `lhs ≤ rhs` within tolerance.
    pub fn le(&self, lhs: f64, rhs: f64) -> bool {
        lhs <= rhs + self.slack(lhs, rhs)
    }

    /// `a = b` within tolerance.
    pub fn eq(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.slack(a, b)
    }
}
