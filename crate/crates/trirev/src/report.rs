//! Structured verification reports.
//!
//! One JSON document with stable field ordering: an envelope (environment, seed,
//! tolerances; the timestamp lives here and nowhere else, so reports from identical
//! runs differ in exactly that field), per-theorem records, and a summary. Violation
//! witnesses embed vectors as arrays of [re, im] pairs and re-load into instances
//! that re-check to the same verdict.

use serde::{Deserialize, Serialize};

use crate::discrete::{
    run_check, CheckResult, DiscreteInstance, Hypothesis, TheoremId,
};
use crate::error::{Error, Result};
use crate::functional::{Functional, FunctionalFamily, SearchConfig};
use crate::space::{PExp, Scalar, SpaceSpec, Vector};
use crate::tol::Tolerance;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Envelope {
    pub tool: String,
    pub version: String,
    /// Isolated here so that determinism comparisons can strip it.
    pub timestamp_unix: u64,
    pub seed: u64,
    pub trials: usize,
    pub tol_abs: f64,
    pub tol_rel: f64,
    pub suites: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub trial: usize,
    pub lhs: f64,
    pub rhs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessInstance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoremRecord {
    pub suite: String,
    pub theorem_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub space: Option<String>,
    pub trials: usize,
    pub hypothesis_rejections: usize,
    pub violations: Vec<ViolationRecord>,
    /// max over trials of lhs − rhs − slack(lhs, rhs): nonpositive exactly when the
    /// violations list is empty.
    pub max_violation: f64,
    pub equality_cases_checked: usize,
    pub equality_max_gap: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl TheoremRecord {
    pub fn new(suite: &str, theorem_id: impl Into<String>) -> Self {
        TheoremRecord {
            suite: suite.to_string(),
            theorem_id: theorem_id.into(),
            p: None,
            space: None,
            trials: 0,
            hypothesis_rejections: 0,
            violations: Vec::new(),
            max_violation: f64::MIN,
            equality_cases_checked: 0,
            equality_max_gap: 0.0,
            notes: Vec::new(),
        }
    }

    /// Fold one check outcome into the record.
    pub fn absorb(
        &mut self,
        trial: usize,
        res: &CheckResult,
        tol: &Tolerance,
        witness: Option<WitnessInstance>,
    ) {
        self.trials += 1;
        if !res.hypothesis_clean() {
            self.hypothesis_rejections += 1;
        }
        let excess = res.lhs - res.rhs - tol.slack(res.lhs, res.rhs);
        if excess > self.max_violation {
            self.max_violation = excess;
        }
        if res.hypothesis_clean() && !res.passed {
            self.violations.push(ViolationRecord {
                trial,
                lhs: res.lhs,
                rhs: res.rhs,
                witness,
                note: None,
            });
        }
    }

    pub fn absorb_equality(&mut self, res: &CheckResult) {
        self.equality_cases_checked += 1;
        if res.equality.gap > self.equality_max_gap {
            self.equality_max_gap = res.equality.gap;
        }
    }

    pub fn finalize(&mut self) {
        if self.max_violation == f64::MIN {
            self.max_violation = 0.0;
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub records: usize,
    pub total_trials: usize,
    pub total_violations: usize,
    pub total_hypothesis_rejections: usize,
    pub all_passed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub envelope: Envelope,
    pub records: Vec<TheoremRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn assemble(envelope: Envelope, mut records: Vec<TheoremRecord>) -> Self {
        for r in &mut records {
            r.finalize();
        }
        let summary = Summary {
            records: records.len(),
            total_trials: records.iter().map(|r| r.trials).sum(),
            total_violations: records.iter().map(|r| r.violations.len()).sum(),
            total_hypothesis_rejections: records
                .iter()
                .map(|r| r.hypothesis_rejections)
                .sum(),
            all_passed: records.iter().all(|r| r.violations.is_empty()),
        };
        Report {
            envelope,
            records,
            summary,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)
            .map_err(|e| Error::InvalidConfig(format!("report serialisation: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidConfig(format!("report parse: {e}")))
    }

    /// Serialisation with the timestamp forced to zero, for determinism comparisons.
    pub fn to_json_without_timestamp(&self) -> Result<String> {
        let mut clone = self.clone();
        clone.envelope.timestamp_unix = 0;
        clone.to_json()
    }
}

fn vector_to_pairs(v: &Vector) -> Vec<[f64; 2]> {
    v.entries().iter().map(|z| [z.re, z.im]).collect()
}

fn pairs_to_vector(pairs: &[[f64; 2]]) -> Result<Vector> {
    Vector::new(pairs.iter().map(|p| Scalar::new(p[0], p[1])).collect())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisDto {
    Margin(Vec<f64>),
    Slack(Vec<Vec<f64>>),
}

/// A fully serialised discrete instance: enough to re-run its check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessInstance {
    pub theorem_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    pub space: SpaceSpec,
    pub vectors: Vec<Vec<[f64; 2]>>,
    pub representers: Vec<Vec<[f64; 2]>>,
    pub hypothesis: HypothesisDto,
}

impl WitnessInstance {
    pub fn from_instance(inst: &DiscreteInstance, theorem: TheoremId, p: Option<PExp>) -> Self {
        WitnessInstance {
            theorem_id: theorem.to_string(),
            p: p.map(|p| p.to_string()),
            space: inst.space,
            vectors: inst.vectors.iter().map(vector_to_pairs).collect(),
            representers: inst
                .family
                .members()
                .iter()
                .map(|f| vector_to_pairs(f.representer()))
                .collect(),
            hypothesis: match &inst.hypothesis {
                Hypothesis::Margin(r) => HypothesisDto::Margin(r.clone()),
                Hypothesis::Slack(m) => HypothesisDto::Slack(m.clone()),
            },
        }
    }

    pub fn to_instance(&self) -> Result<DiscreteInstance> {
        let space = self.space;
        let vectors = self
            .vectors
            .iter()
            .map(|v| pairs_to_vector(v))
            .collect::<Result<Vec<_>>>()?;
        let members = self
            .representers
            .iter()
            .map(|r| Functional::new(space, pairs_to_vector(r)?))
            .collect::<Result<Vec<_>>>()?;
        let family = FunctionalFamily::new(members)?;
        let hypothesis = match &self.hypothesis {
            HypothesisDto::Margin(r) => Hypothesis::Margin(r.clone()),
            HypothesisDto::Slack(m) => Hypothesis::Slack(m.clone()),
        };
        DiscreteInstance::new(space, vectors, family, hypothesis)
    }

    /// Re-load and re-run the original check.
    pub fn recheck(&self, tol: &Tolerance, search: &SearchConfig) -> Result<CheckResult> {
        let theorem: TheoremId = self.theorem_id.parse()?;
        let p = match &self.p {
            Some(s) => Some(s.parse::<PExp>()?),
            None => None,
        };
        run_check(&self.to_instance()?, theorem, p, tol, search)
    }
}
