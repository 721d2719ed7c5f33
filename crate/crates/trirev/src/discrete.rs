//! Checkers for the discrete (finite-sum) reverse triangle inequalities, with
//! equality-condition diagnostics and equality-case constructors.
//!
//! Multiplicative bounds control Σ‖x_i‖ by a multiple of ‖Σx_i‖ under margin
//! hypotheses Re F_k(x_i) ≥ r_k‖x_i‖; additive bounds control the deficit
//! Σ‖x_i‖ − ‖Σx_i‖ by slack sums under ‖x_i‖ − Re F_k(x_i) ≤ M_ik. Hypothesis
//! checks always run and are reported; a bound verdict is only meaningful on
//! hypothesis-clean instances.

use crate::error::{Error, Result};
use crate::functional::{family_constant, FunctionalFamily, SearchConfig};
use crate::space::{aggregate, inner, norm, sip, unit_l2, PExp, Scalar, SpaceSpec, Vector};
use crate::tol::Tolerance;

/// Stable keys for reports, the CLI, and the sharpness search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[allow(non_camel_case_types)]
pub enum TheoremId {
    DM_SINGLE,
    DM_FAMILY,
    MULT_SUMFUNC,
    MULT_CINF,
    MULT_CP,
    ADD_SINGLE,
    ADD_FAMILY,
    ADD_CINF,
    ADD_CP,
    CONT_MULT_SINGLE,
    CONT_MULT_FAMILY,
    CONT_MULT_CINF,
    CONT_MULT_CP,
    CONT_MULT_BALL,
    CONT_MULT_BAND,
    CONT_ADD_SINGLE,
    CONT_ADD_FAMILY,
    CONT_ADD_CINF,
    CONT_ADD_CP,
    CONT_ADD_BALL,
    CONT_ADD_BAND,
}

impl TheoremId {
    pub const DISCRETE: [TheoremId; 9] = [
        TheoremId::DM_SINGLE,
        TheoremId::DM_FAMILY,
        TheoremId::MULT_SUMFUNC,
        TheoremId::MULT_CINF,
        TheoremId::MULT_CP,
        TheoremId::ADD_SINGLE,
        TheoremId::ADD_FAMILY,
        TheoremId::ADD_CINF,
        TheoremId::ADD_CP,
    ];

    pub fn is_discrete(&self) -> bool {
        Self::DISCRETE.contains(self)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::DM_SINGLE => "DM_SINGLE",
            TheoremId::DM_FAMILY => "DM_FAMILY",
            TheoremId::MULT_SUMFUNC => "MULT_SUMFUNC",
            TheoremId::MULT_CINF => "MULT_CINF",
            TheoremId::MULT_CP => "MULT_CP",
            TheoremId::ADD_SINGLE => "ADD_SINGLE",
            TheoremId::ADD_FAMILY => "ADD_FAMILY",
            TheoremId::ADD_CINF => "ADD_CINF",
            TheoremId::ADD_CP => "ADD_CP",
            TheoremId::CONT_MULT_SINGLE => "CONT_MULT_SINGLE",
            TheoremId::CONT_MULT_FAMILY => "CONT_MULT_FAMILY",
            TheoremId::CONT_MULT_CINF => "CONT_MULT_CINF",
            TheoremId::CONT_MULT_CP => "CONT_MULT_CP",
            TheoremId::CONT_MULT_BALL => "CONT_MULT_BALL",
            TheoremId::CONT_MULT_BAND => "CONT_MULT_BAND",
            TheoremId::CONT_ADD_SINGLE => "CONT_ADD_SINGLE",
            TheoremId::CONT_ADD_FAMILY => "CONT_ADD_FAMILY",
            TheoremId::CONT_ADD_CINF => "CONT_ADD_CINF",
            TheoremId::CONT_ADD_CP => "CONT_ADD_CP",
            TheoremId::CONT_ADD_BALL => "CONT_ADD_BALL",
            TheoremId::CONT_ADD_BAND => "CONT_ADD_BAND",
        }
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let all = [
            TheoremId::DM_SINGLE,
            TheoremId::DM_FAMILY,
            TheoremId::MULT_SUMFUNC,
            TheoremId::MULT_CINF,
            TheoremId::MULT_CP,
            TheoremId::ADD_SINGLE,
            TheoremId::ADD_FAMILY,
            TheoremId::ADD_CINF,
            TheoremId::ADD_CP,
            TheoremId::CONT_MULT_SINGLE,
            TheoremId::CONT_MULT_FAMILY,
            TheoremId::CONT_MULT_CINF,
            TheoremId::CONT_MULT_CP,
            TheoremId::CONT_MULT_BALL,
            TheoremId::CONT_MULT_BAND,
            TheoremId::CONT_ADD_SINGLE,
            TheoremId::CONT_ADD_FAMILY,
            TheoremId::CONT_ADD_CINF,
            TheoremId::CONT_ADD_CP,
            TheoremId::CONT_ADD_BALL,
            TheoremId::CONT_ADD_BAND,
        ];
        let up = s.trim().to_ascii_uppercase();
        all.into_iter()
            .find(|t| t.as_str() == up)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown theorem id {s:?}")))
    }
}

/// Per-theorem precondition data.
#[derive(Debug, Clone, PartialEq)]
pub enum Hypothesis {
    /// r_k per functional: Re F_k(x_i) ≥ r_k‖x_i‖.
    Margin(Vec<f64>),
    /// M\[i\]\[k\]: ‖x_i‖ − Re F_k(x_i) ≤ M\[i\]\[k\].
    Slack(Vec<Vec<f64>>),
}

#[derive(Debug, Clone)]
pub struct DiscreteInstance {
    pub space: SpaceSpec,
    pub vectors: Vec<Vector>,
    pub family: FunctionalFamily,
    pub hypothesis: Hypothesis,
}

impl DiscreteInstance {
    pub fn new(
        space: SpaceSpec,
        vectors: Vec<Vector>,
        family: FunctionalFamily,
        hypothesis: Hypothesis,
    ) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::InvalidConfig("instance needs at least one vector".into()));
        }
        for v in &vectors {
            space.check_dim(v)?;
        }
        if *family.space() != space {
            return Err(Error::InvalidConfig(
                "family space differs from instance space".into(),
            ));
        }
        match &hypothesis {
            Hypothesis::Margin(r) => {
                if r.len() != family.len() {
                    return Err(Error::InvalidConfig(
                        "margin vector length must match the family size".into(),
                    ));
                }
                if r.iter().any(|&rk| !(rk >= 0.0) || !rk.is_finite()) {
                    return Err(Error::InvalidConfig("margins must be finite and >= 0".into()));
                }
            }
            Hypothesis::Slack(m) => {
                if m.len() != vectors.len() || m.iter().any(|row| row.len() != family.len()) {
                    return Err(Error::InvalidConfig(
                        "slack matrix must be n x m for n vectors and m functionals".into(),
                    ));
                }
                if m.iter().flatten().any(|&v| !(v >= 0.0) || !v.is_finite()) {
                    return Err(Error::InvalidConfig("slacks must be finite and >= 0".into()));
                }
            }
        }
        Ok(DiscreteInstance {
            space,
            vectors,
            family,
            hypothesis,
        })
    }

    pub fn margins(&self) -> Result<&[f64]> {
        match &self.hypothesis {
            Hypothesis::Margin(r) => Ok(r),
            Hypothesis::Slack(_) => Err(Error::HypothesisViolation(
                "operation requires a margin hypothesis".into(),
            )),
        }
    }

    pub fn slacks(&self) -> Result<&Vec<Vec<f64>>> {
        match &self.hypothesis {
            Hypothesis::Slack(m) => Ok(m),
            Hypothesis::Margin(_) => Err(Error::HypothesisViolation(
                "operation requires a slack hypothesis".into(),
            )),
        }
    }

    pub fn sum_vector(&self) -> Vector {
        Vector::sum(&self.vectors)
    }

    pub fn sum_norms(&self) -> Result<f64> {
        let mut acc = 0.0;
        for v in &self.vectors {
            acc += norm(&self.space, v)?;
        }
        Ok(acc)
    }

    /// Instance with all vectors replaced by λ·x_i; exact-deficit slacks scale along.
    pub fn scaled(&self, lambda: f64, scale_slacks: bool) -> Result<DiscreteInstance> {
        let vectors = self.vectors.iter().map(|v| v.scale(lambda)).collect();
        let hypothesis = match &self.hypothesis {
            Hypothesis::Margin(r) => Hypothesis::Margin(r.clone()),
            Hypothesis::Slack(m) => Hypothesis::Slack(if scale_slacks {
                m.iter()
                    .map(|row| row.iter().map(|&v| v * lambda).collect())
                    .collect()
            } else {
                m.clone()
            }),
        };
        DiscreteInstance::new(self.space, vectors, self.family.clone(), hypothesis)
    }
}

/// One failed hypothesis check. `item` is the vector index (or quadrature node index
/// for continuous checks, with `at` carrying the node abscissa); an `item` equal to
/// the vector count refers to the aggregate Σx_i.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub item: usize,
    pub functional: usize,
    pub excess: f64,
    pub at: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct EqualityCondition {
    pub id: &'static str,
    pub holds: bool,
    pub residual: f64,
}

/// Structured evaluation of the per-theorem equality conditions plus the achieved
/// |lhs − rhs|. When every condition holds the gap must be within tolerance.
/// `quadrature_limited` marks continuous diagnoses, whose conditions are certified
/// only up to quadrature accuracy.
#[derive(Debug, Clone)]
pub struct EqualityDiagnosis {
    pub conditions: Vec<EqualityCondition>,
    pub gap: f64,
    pub attained: bool,
    pub quadrature_limited: bool,
}

impl EqualityDiagnosis {
    pub fn all_conditions_hold(&self) -> bool {
        !self.conditions.is_empty() && self.conditions.iter().all(|c| c.holds)
    }
}

/// A specialised bound reported alongside the main one (orthogonal/orthonormal
/// center variants).
#[derive(Debug, Clone)]
pub struct SpecialBound {
    pub label: &'static str,
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub theorem: TheoremId,
    pub lhs: f64,
    pub rhs: f64,
    pub passed: bool,
    /// The coarser companion bound, where the theorem states one.
    pub coarse_rhs: Option<f64>,
    pub special_rhs: Option<SpecialBound>,
    pub violations: Vec<Violation>,
    pub equality: EqualityDiagnosis,
    /// Node count for continuous checks.
    pub nodes: Option<usize>,
    /// Worst hypothesis excess over the quadrature nodes for continuous checks
    /// (positive = violated; negative = headroom).
    pub worst_margin: Option<f64>,
}

impl CheckResult {
    pub fn hypothesis_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Spaces with inner-product geometry: ℓ² over ℝ or ℂ, and (ℂ, |·|₂), which is the
/// real Hilbert space ℝ² in disguise (real inner product Re(z·conj(w))).
fn hilbert_like(space: &SpaceSpec) -> bool {
    space.is_lp2()
        || matches!(space.norm, crate::space::NormKind::CMod(PExp::Finite(p)) if p == 2.0)
}

fn base_diagnosis(tol: &Tolerance, lhs: f64, rhs: f64) -> EqualityDiagnosis {
    EqualityDiagnosis {
        conditions: Vec::new(),
        gap: (lhs - rhs).abs(),
        attained: tol.eq(lhs, rhs),
        quadrature_limited: false,
    }
}

/// Condition of the form "complex value equals real target".
fn cond_eq_scalar(id: &'static str, tol: &Tolerance, value: Scalar, target: f64) -> EqualityCondition {
    let residual = (value - Scalar::new(target, 0.0)).norm();
    EqualityCondition {
        id,
        holds: residual <= tol.slack(value.norm(), target),
        residual,
    }
}

fn cond_eq_real(id: &'static str, tol: &Tolerance, value: f64, target: f64) -> EqualityCondition {
    EqualityCondition {
        id,
        holds: tol.eq(value, target),
        residual: (value - target).abs(),
    }
}

/// Condition of the form "vector equals target vector", scaled against the larger norm.
fn cond_eq_vector(
    id: &'static str,
    tol: &Tolerance,
    space: &SpaceSpec,
    value: &Vector,
    target: &Vector,
) -> Result<EqualityCondition> {
    let residual = norm(space, &value.sub(target))?;
    let scale = norm(space, value)?.max(norm(space, target)?);
    Ok(EqualityCondition {
        id,
        holds: residual <= tol.slack(scale, scale),
        residual,
    })
}

/// All (i,k) with Re F_k(x_i) < r_k‖x_i‖ − tol.
pub fn check_margin(inst: &DiscreteInstance, tol: &Tolerance) -> Result<Vec<Violation>> {
    let r = inst.margins()?;
    let mut out = Vec::new();
    for (i, x) in inst.vectors.iter().enumerate() {
        let nx = norm(&inst.space, x)?;
        for (k, f) in inst.family.members().iter().enumerate() {
            let re = f.re_apply(x)?;
            if !tol.le(r[k] * nx, re) {
                out.push(Violation {
                    item: i,
                    functional: k,
                    excess: r[k] * nx - re,
                    at: None,
                });
            }
        }
    }
    Ok(out)
}

/// All (i,k) with ‖x_i‖ − Re F_k(x_i) > M_ik + tol.
pub fn check_slack(inst: &DiscreteInstance, tol: &Tolerance) -> Result<Vec<Violation>> {
    let m = inst.slacks()?;
    let mut out = Vec::new();
    for (i, x) in inst.vectors.iter().enumerate() {
        let nx = norm(&inst.space, x)?;
        for (k, f) in inst.family.members().iter().enumerate() {
            let deficit = nx - f.re_apply(x)?;
            if !tol.le(deficit, m[i][k]) {
                out.push(Violation {
                    item: i,
                    functional: k,
                    excess: deficit - m[i][k],
                    at: None,
                });
            }
        }
    }
    Ok(out)
}

/// Form selector for the single-functional Diaz-Metcalf check: the plain normed-space
/// statement, or the semi-inner-product corollary with its strict-convexity equality
/// condition on lp(p), 1 < p < ∞.
#[derive(Debug, Clone)]
pub enum DmForm {
    Norm,
    Sip { direction: Vector },
}

fn require_single_unit(inst: &DiscreteInstance, tol: &Tolerance) -> Result<()> {
    if inst.family.len() != 1 {
        return Err(Error::HypothesisViolation(
            "check requires a single functional".into(),
        ));
    }
    let n = inst.family.members()[0].op_norm().value;
    if !tol.eq(n, 1.0) {
        return Err(Error::HypothesisViolation(format!(
            "functional norm must be 1, got {n}"
        )));
    }
    Ok(())
}

/// r·Σ‖x_i‖ ≤ ‖Σx_i‖ for one unit-norm functional with margin r.
pub fn dm_single(inst: &DiscreteInstance, form: &DmForm, tol: &Tolerance) -> Result<CheckResult> {
    require_single_unit(inst, tol)?;
    let r = inst.margins()?[0];
    let f = &inst.family.members()[0];
    if let DmForm::Sip { direction } = form {
        let rep = crate::space::sip_representer(&inst.space, direction)?;
        let dist = norm(&inst.space, &rep.sub(f.representer()))?;
        if !tol.le(dist, 0.0) {
            return Err(Error::HypothesisViolation(
                "functional is not induced by the given semi-inner-product direction".into(),
            ));
        }
    }
    let violations = check_margin(inst, tol)?;
    let sum = inst.sum_vector();
    let lhs = r * inst.sum_norms()?;
    let rhs = norm(&inst.space, &sum)?;
    let fs = f.apply(&sum)?;

    let mut equality = base_diagnosis(tol, lhs, rhs);
    equality.conditions.push(cond_eq_scalar(
        "functional_attains_margin_total",
        tol,
        fs,
        lhs,
    ));
    equality
        .conditions
        .push(cond_eq_scalar("functional_attains_sum_norm", tol, fs, rhs));
    match form {
        DmForm::Norm => {
            if hilbert_like(&inst.space) {
                let e = f.hilbert_direction();
                let target = e.scale(r * inst.sum_norms()?);
                equality.conditions.push(cond_eq_vector(
                    "sum_collinear_with_direction",
                    tol,
                    &inst.space,
                    &sum,
                    &target,
                )?);
            }
        }
        DmForm::Sip { direction } => {
            // strictly convex for 1 < p < ∞, where the collinearity form is exact
            let target = direction.scale(r * inst.sum_norms()?);
            equality.conditions.push(cond_eq_vector(
                "sum_collinear_with_direction",
                tol,
                &inst.space,
                &sum,
                &target,
            )?);
            // cross-check the functional value against the semi-inner product itself
            let sip_val = sip(&inst.space, &sum, direction)?;
            equality.conditions.push(cond_eq_scalar(
                "sip_attains_sum_norm",
                tol,
                sip_val,
                rhs,
            ));
        }
    }

    Ok(CheckResult {
        theorem: TheoremId::DM_SINGLE,
        lhs,
        rhs,
        passed: tol.le(lhs, rhs),
        coarse_rhs: None,
        special_rhs: None,
        violations,
        equality,
        nodes: None,
        worst_margin: None,
    })
}

/// (Σ r_k²/c)^{1/2}·Σ‖x_i‖ ≤ ‖Σx_i‖ for a family of unit-norm functionals, where
/// c = c₂² is the family constant at exponent 2.
pub fn dm_family(
    inst: &DiscreteInstance,
    tol: &Tolerance,
    search: &SearchConfig,
) -> Result<CheckResult> {
    let r = inst.margins()?.to_vec();
    if !inst.family.is_unit_norm(tol) {
        return Err(Error::HypothesisViolation(
            "family members must have unit norm".into(),
        ));
    }
    let violations = check_margin(inst, tol)?;
    let sum = inst.sum_vector();
    let c2 = family_constant(&inst.family, PExp::Finite(2.0), search, std::slice::from_ref(&sum))?;
    let c = c2.value * c2.value;
    let sum_norms = inst.sum_norms()?;
    let lhs = if c > 0.0 {
        (r.iter().map(|rk| rk * rk).sum::<f64>() / c).sqrt() * sum_norms
    } else {
        0.0
    };
    let rhs = norm(&inst.space, &sum)?;

    let mut equality = base_diagnosis(tol, lhs, rhs);
    let mut margins_attained = true;
    let mut worst = 0.0_f64;
    for (k, f) in inst.family.members().iter().enumerate() {
        let v = f.apply(&sum)?;
        let resid = (v - Scalar::new(r[k] * sum_norms, 0.0)).norm();
        worst = worst.max(resid);
        if resid > tol.slack(v.norm(), r[k] * sum_norms) {
            margins_attained = false;
        }
    }
    equality.conditions.push(EqualityCondition {
        id: "margins_attained_by_sum",
        holds: margins_attained,
        residual: worst,
    });
    let agg: f64 = {
        let mut acc = 0.0;
        for f in inst.family.members() {
            let re = f.re_apply(&sum)?;
            acc += re * re;
        }
        acc
    };
    equality.conditions.push(cond_eq_real(
        "aggregate_attains_sup",
        tol,
        agg,
        c * rhs * rhs,
    ));
    if inst.space.is_lp2() && inst.family.is_orthonormal() {
        let mut target = Vector::zero(inst.space.dim);
        for (k, f) in inst.family.members().iter().enumerate() {
            target = target.add(&f.hilbert_direction().scale(r[k]));
        }
        equality.conditions.push(cond_eq_vector(
            "sum_collinear_with_margin_combination",
            tol,
            &inst.space,
            &sum,
            &target.scale(sum_norms),
        )?);
    }

    Ok(CheckResult {
        theorem: TheoremId::DM_FAMILY,
        lhs,
        rhs,
        passed: tol.le(lhs, rhs),
        coarse_rhs: None,
        special_rhs: None,
        violations,
        equality,
        nodes: None,
        worst_margin: None,
    })
}

/// Σ‖x_i‖ ≤ (‖Σ_k F_k‖ / Σ_k r_k)·‖Σx_i‖, with the coarser Σ‖F_k‖ variant reported.
pub fn mult_sumfunc(inst: &DiscreteInstance, tol: &Tolerance) -> Result<CheckResult> {
    let r = inst.margins()?.to_vec();
    let sum_r: f64 = r.iter().sum();
    if !(sum_r > 0.0) {
        return Err(Error::HypothesisViolation(
            "multiplicative reverse requires sum of margins > 0".into(),
        ));
    }
    let violations = check_margin(inst, tol)?;
    let sum = inst.sum_vector();
    let sum_norm = norm(&inst.space, &sum)?;
    let sum_norms = inst.sum_norms()?;
    let sum_f = inst.family.sum_functional();
    let sum_f_norm = sum_f.op_norm().value;
    let lhs = sum_norms;
    let rhs = sum_f_norm / sum_r * sum_norm;
    let coarse = inst
        .family
        .members()
        .iter()
        .map(|f| f.op_norm().value)
        .sum::<f64>()
        / sum_r
        * sum_norm;

    let fs = sum_f.apply(&sum)?;
    let mut equality = base_diagnosis(tol, lhs, rhs);
    equality.conditions.push(cond_eq_scalar(
        "aggregate_attains_margin_total",
        tol,
        fs,
        sum_r * sum_norms,
    ));
    equality.conditions.push(cond_eq_scalar(
        "aggregate_attains_operator_norm",
        tol,
        fs,
        sum_f_norm * sum_norm,
    ));
    if hilbert_like(&inst.space) {
        let centers = sum_f.hilbert_direction();
        let nc = norm(&inst.space, &centers)?;
        if nc > 0.0 {
            let target = centers.scale(sum_r / (nc * nc) * sum_norms);
            equality.conditions.push(cond_eq_vector(
                "sum_collinear_with_centers",
                tol,
                &inst.space,
                &sum,
                &target,
            )?);
        } else {
            equality.conditions.push(EqualityCondition {
                id: "sum_collinear_with_centers",
                holds: false,
                residual: sum_norms,
            });
        }
    }

    Ok(CheckResult {
        theorem: TheoremId::MULT_SUMFUNC,
        lhs,
        rhs,
        passed: tol.le(lhs, rhs),
        coarse_rhs: Some(coarse),
        special_rhs: None,
        violations,
        equality,
        nodes: None,
        worst_margin: None,
    })
}

/// Ratio form: Σ‖x_i‖/‖Σx_i‖ ≤ c_∞ / max_k r_k (p = ∞) or c_p/(Σ r_k^p)^{1/p}.
pub fn mult_cp(
    inst: &DiscreteInstance,
    p: PExp,
    tol: &Tolerance,
    search: &SearchConfig,
) -> Result<CheckResult> {
    let r = inst.margins()?.to_vec();
    if r.iter().all(|&rk| rk == 0.0) {
        return Err(Error::HypothesisViolation(
            "ratio-form reverse requires some margin > 0".into(),
        ));
    }
    let violations = check_margin(inst, tol)?;
    let sum = inst.sum_vector();
    let sum_norm = norm(&inst.space, &sum)?;
    let sum_norms = inst.sum_norms()?;
    if sum_norm <= 1e-14 * sum_norms.max(1e-300) {
        return Err(Error::DegenerateInstance(
            "sum of vectors is numerically zero; ratio bound undefined".into(),
        ));
    }
    let denom = aggregate(r.iter().copied(), p);
    let c = family_constant(&inst.family, p, search, std::slice::from_ref(&sum))?;
    let lhs = sum_norms / sum_norm;
    let rhs = c.value / denom;
    let coarse = inst.family.constant_cap(p) / denom;

    let mut equality = base_diagnosis(tol, lhs, rhs);
    let mut margins_tight = true;
    let mut worst = 0.0_f64;
    let mut res: Vec<f64> = Vec::with_capacity(inst.family.len());
    for (k, f) in inst.family.members().iter().enumerate() {
        let re = f.re_apply(&sum)?;
        res.push(re);
        let resid = (re - r[k] * sum_norms).abs();
        worst = worst.max(resid);
        if !tol.eq(re, r[k] * sum_norms) {
            margins_tight = false;
        }
    }
    equality.conditions.push(EqualityCondition {
        id: "margins_tight_at_sum",
        holds: margins_tight,
        residual: worst,
    });
    match p {
        PExp::Infinity => {
            let max_re = res.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            equality.conditions.push(cond_eq_real(
                "max_margin_attains_sup",
                tol,
                max_re,
                c.value * sum_norm,
            ));
        }
        PExp::Finite(pf) => {
            let neg = res.iter().any(|&v| v < -tol.slack(v.abs(), 0.0));
            let agg: f64 = res.iter().map(|&v| v.max(0.0).powf(pf)).sum();
            let target = c.value.powf(pf) * sum_norm.powf(pf);
            equality.conditions.push(EqualityCondition {
                id: "aggregate_attains_sup",
                holds: !neg && tol.eq(agg, target),
                residual: (agg - target).abs(),
            });
        }
    }

    Ok(CheckResult {
        theorem: if p.is_finite() {
            TheoremId::MULT_CP
        } else {
            TheoremId::MULT_CINF
        },
        lhs,
        rhs,
        passed: tol.le(lhs, rhs),
        coarse_rhs: Some(coarse),
        special_rhs: None,
        violations,
        equality,
        nodes: None,
        worst_margin: None,
    })
}

/// Σ‖x_i‖ − ‖Σx_i‖ ≤ Σ k_i for a single functional with |F| ≤ ‖·‖ on the instance.
pub fn add_single(inst: &DiscreteInstance, tol: &Tolerance) -> Result<CheckResult> {
    if inst.family.len() != 1 {
        return Err(Error::HypothesisViolation(
            "check requires a single functional".into(),
        ));
    }
    let slacks = inst.slacks()?;
    let f = &inst.family.members()[0];
    let mut violations = check_slack(inst, tol)?;
    // |F(x)| ≤ ‖x‖ on the instance vectors and on their sum (where the proof uses it)
    for (i, x) in inst.vectors.iter().enumerate() {
        let fv = f.apply(x)?.norm();
        let nx = norm(&inst.space, x)?;
        if !tol.le(fv, nx) {
            violations.push(Violation {
                item: i,
                functional: 0,
                excess: fv - nx,
                at: None,
            });
        }
    }
    let sum = inst.sum_vector();
    let sum_norm = norm(&inst.space, &sum)?;
    let fs = f.apply(&sum)?;
    if !tol.le(fs.norm(), sum_norm) {
        violations.push(Violation {
            item: inst.vectors.len(),
            functional: 0,
            excess: fs.norm() - sum_norm,
            at: None,
        });
    }

    let sum_norms = inst.sum_norms()?;
    let total_slack: f64 = slacks.iter().map(|row| row[0]).sum();
    let lhs = sum_norms - sum_norm;
    let rhs = total_slack;

    let mut equality = base_diagnosis(tol, lhs, rhs);
    equality.conditions.push(cond_eq_scalar(
        "functional_attains_sum_norm",
        tol,
        fs,
        sum_norm,
    ));
    equality.conditions.push(cond_eq_scalar(
        "slack_exhausted_at_sum",
        tol,
        fs,
        sum_norms - total_slack,
    ));
    if hilbert_like(&inst.space) && tol.eq(f.op_norm().value, 1.0) {
        equality.conditions.push(EqualityCondition {
            id: "sum_norm_dominates_slack",
            holds: tol.le(total_slack, sum_norms),
            residual: (total_slack - sum_norms).max(0.0),
        });
        let e = f.hilbert_direction();
        equality.conditions.push(cond_eq_vector(
            "sum_collinear_scaled",
            tol,
            &inst.space,
            &sum,
            &e.scale(sum_norms - total_slack),
        )?);
    }

    Ok(CheckResult {
        theorem: TheoremId::ADD_SINGLE,
        lhs,
        rhs,
        passed: tol.le(lhs, rhs),
        coarse_rhs: None,
        special_rhs: None,
        violations,
        equality,
        nodes: None,
        worst_margin: None,
    })
}

/// Σ‖x_i‖ ≤ ‖(1/m)Σ_k F_k‖·‖Σx_i‖ + (1/m)Σ_k Σ_i M_ik.
pub fn add_family(inst: &DiscreteInstance, tol: &Tolerance) -> Result<CheckResult> {
    let slacks = inst.slacks()?;
    let violations = check_slack(inst, tol)?;
    let m = inst.family.len() as f64;
    let sum = inst.sum_vector();
    let sum_norm = norm(&inst.space, &sum)?;
    let sum_norms = inst.sum_norms()?;
    let slack_total: f64 = slacks.iter().flatten().sum();
    let avg_slack = slack_total / m;
    let sum_f = inst.family.sum_functional();
    let avg_norm = sum_f.op_norm().value / m;
    let lhs = sum_norms;
    let rhs = avg_norm * sum_norm + avg_slack;

    let special_rhs = if inst.space.is_lp2() && inst.family.is_orthogonal() {
        let sq: f64 = inst
            .family
            .members()
            .iter()
            .map(|f| {
                let e = f.hilbert_direction();
                norm(&inst.space, &e).map(|n| n * n)
            })
            .collect::<Result<Vec<_>>>()?
            .iter()
            .sum();
        if inst.family.is_orthonormal() {
            Some(SpecialBound {
                label: "orthonormal_centers",
                value: sum_norm / m.sqrt() + avg_slack,
            })
        } else {
            Some(SpecialBound {
                label: "orthogonal_centers",
                value: sq.sqrt() / m * sum_norm + avg_slack,
            })
        }
    } else {
        None
    };

    let favg = sum_f.apply(&sum)? / m;
    let mut equality = base_diagnosis(tol, lhs, rhs);
    equality.conditions.push(cond_eq_scalar(
        "average_attains_operator_norm",
        tol,
        favg,
        avg_norm * sum_norm,
    ));
    equality.conditions.push(cond_eq_scalar(
        "average_exhausts_slack",
        tol,
        favg,
        sum_norms - avg_slack,
    ));
    if hilbert_like(&inst.space) {
        equality.conditions.push(EqualityCondition {
            id: "sum_norm_dominates_slack",
            holds: tol.le(avg_slack, sum_norms),
            residual: (avg_slack - sum_norms).max(0.0),
        });
        let centers = sum_f.hilbert_direction();
        let nc = norm(&inst.space, &centers)?;
        if nc > 0.0 {
            let target = centers.scale(m * (sum_norms - avg_slack) / (nc * nc));
            equality.conditions.push(cond_eq_vector(
                "sum_collinear_scaled",
                tol,
                &inst.space,
                &sum,
                &target,
            )?);
        } else {
            equality.conditions.push(EqualityCondition {
                id: "sum_collinear_scaled",
                holds: false,
                residual: sum_norms,
            });
        }
    }

    Ok(CheckResult {
        theorem: TheoremId::ADD_FAMILY,
        lhs,
        rhs,
        passed: tol.le(lhs, rhs),
        coarse_rhs: None,
        special_rhs,
        violations,
        equality,
        nodes: None,
        worst_margin: None,
    })
}

/// Σ‖x_i‖ ≤ c_∞·‖Σx_i‖ + (1/m)ΣΣM_ik (p = ∞) or m^{−1/p}·c_p·‖Σx_i‖ + (1/m)ΣΣM_ik,
/// each with its operator-norm-capped coarser companion.
pub fn add_cp(
    inst: &DiscreteInstance,
    p: PExp,
    tol: &Tolerance,
    search: &SearchConfig,
) -> Result<CheckResult> {
    let slacks = inst.slacks()?;
    let violations = check_slack(inst, tol)?;
    let m = inst.family.len() as f64;
    let sum = inst.sum_vector();
    let sum_norm = norm(&inst.space, &sum)?;
    let sum_norms = inst.sum_norms()?;
    let avg_slack: f64 = slacks.iter().flatten().sum::<f64>() / m;
    let c = family_constant(&inst.family, p, search, std::slice::from_ref(&sum))?;
    let cap = inst.family.constant_cap(p);
    let factor = match p {
        PExp::Infinity => 1.0,
        PExp::Finite(pf) => m.powf(-1.0 / pf),
    };
    let lhs = sum_norms;
    let rhs = factor * c.value * sum_norm + avg_slack;
    let coarse = factor * cap * sum_norm + avg_slack;

    let equality = base_diagnosis(tol, lhs, rhs);

    Ok(CheckResult {
        theorem: if p.is_finite() {
            TheoremId::ADD_CP
        } else {
            TheoremId::ADD_CINF
        },
        lhs,
        rhs,
        passed: tol.le(lhs, rhs),
        coarse_rhs: Some(coarse),
        special_rhs: None,
        violations,
        equality,
        nodes: None,
        worst_margin: None,
    })
}

/// Dispatch a discrete instance to its theorem's checker.
pub fn run_check(
    inst: &DiscreteInstance,
    theorem: TheoremId,
    p: Option<PExp>,
    tol: &Tolerance,
    search: &SearchConfig,
) -> Result<CheckResult> {
    let need_p = || {
        p.ok_or_else(|| Error::InvalidConfig(format!("{theorem} requires an exponent p")))
    };
    match theorem {
        TheoremId::DM_SINGLE => dm_single(inst, &DmForm::Norm, tol),
        TheoremId::DM_FAMILY => dm_family(inst, tol, search),
        TheoremId::MULT_SUMFUNC => mult_sumfunc(inst, tol),
        TheoremId::MULT_CINF => mult_cp(inst, PExp::Infinity, tol, search),
        TheoremId::MULT_CP => mult_cp(inst, need_p()?, tol, search),
        TheoremId::ADD_SINGLE => add_single(inst, tol),
        TheoremId::ADD_FAMILY => add_family(inst, tol),
        TheoremId::ADD_CINF => add_cp(inst, PExp::Infinity, tol, search),
        TheoremId::ADD_CP => add_cp(inst, need_p()?, tol, search),
        other => Err(Error::InvalidConfig(format!(
            "{other} is not a discrete check"
        ))),
    }
}

/// Parameters for the equality-case constructors: the functional family, per-vector
/// (or per-mirrored-pair) positive scales, the margin r for single-functional forms,
/// and the exponent for the c_p forms.
#[derive(Debug, Clone)]
pub struct EqualityParams {
    pub family: FunctionalFamily,
    pub scales: Vec<f64>,
    pub margin: Option<f64>,
    pub p: Option<PExp>,
    pub seed: u64,
}

impl EqualityParams {
    pub fn new(family: FunctionalFamily, scales: Vec<f64>) -> Self {
        EqualityParams {
            family,
            scales,
            margin: None,
            p: None,
            seed: 0,
        }
    }

    pub fn with_margin(mut self, r: f64) -> Self {
        self.margin = Some(r);
        self
    }

    pub fn with_p(mut self, p: PExp) -> Self {
        self.p = Some(p);
        self
    }
}

fn check_scales(scales: &[f64]) -> Result<()> {
    if scales.is_empty() || scales.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
        return Err(Error::ConstructionFailure(
            "scales must be a nonempty list of positive reals".into(),
        ));
    }
    Ok(())
}

/// Deterministic unit vector orthogonal to e. On (ℂ, |·|₂) the real-orthogonal
/// direction is i·e; on ℓ² spaces it is Gram-Schmidt against a basis vector.
fn orthogonal_unit(space: &SpaceSpec, e: &Vector) -> Result<Vector> {
    if matches!(space.norm, crate::space::NormKind::CMod(_)) {
        return Ok(e.scale_scalar(Scalar::new(0.0, 1.0)));
    }
    if space.dim < 2 {
        return Err(Error::ConstructionFailure(
            "mirrored-pair construction needs dimension >= 2".into(),
        ));
    }
    // start from the basis vector least aligned with e
    let mut jbest = 0;
    let mut best = f64::INFINITY;
    for (j, z) in e.entries().iter().enumerate() {
        if z.norm() < best {
            best = z.norm();
            jbest = j;
        }
    }
    let b = Vector::basis(space.dim, jbest);
    let ip = inner(space, &b, e)?;
    let w = b.sub(&e.scale_scalar(ip));
    unit_l2(&w).map_err(|_| {
        Error::ConstructionFailure("could not build an orthogonal direction".into())
    })
}

/// Mirrored pair of unit vectors around e with margin r: x± = s(r·e ± √(1−r²)·w).
fn mirrored_pairs(
    space: &SpaceSpec,
    e: &Vector,
    r: f64,
    pair_scales: &[f64],
) -> Result<Vec<Vector>> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::ConstructionFailure(format!(
            "margin must lie in [0,1], got {r}"
        )));
    }
    if r == 1.0 {
        return Ok(pair_scales.iter().flat_map(|&s| [e.scale(s), e.scale(s)]).collect());
    }
    let w = orthogonal_unit(space, e)?;
    let sigma = (1.0 - r * r).sqrt();
    let mut out = Vec::with_capacity(2 * pair_scales.len());
    for &s in pair_scales {
        out.push(e.scale(r * s).add(&w.scale(sigma * s)));
        out.push(e.scale(r * s).sub(&w.scale(sigma * s)));
    }
    Ok(out)
}

fn exact_deficit_slacks(
    space: &SpaceSpec,
    family: &FunctionalFamily,
    vectors: &[Vector],
) -> Result<Vec<Vec<f64>>> {
    let mut slacks = Vec::with_capacity(vectors.len());
    for x in vectors {
        let nx = norm(space, x)?;
        let mut row = Vec::with_capacity(family.len());
        for f in family.members() {
            let deficit = nx - f.re_apply(x)?;
            if deficit < -1e-9 * nx.max(1.0) {
                return Err(Error::ConstructionFailure(format!(
                    "negative deficit {deficit}; slack hypothesis admits no equality here"
                )));
            }
            row.push(deficit.max(0.0));
        }
        slacks.push(row);
    }
    Ok(slacks)
}

/// Construct an instance on which the named theorem attains equality, by placing the
/// vector sum along the theorem's required direction and deriving margins or slacks
/// as exact values at that configuration.
pub fn equality_instance(theorem: TheoremId, params: &EqualityParams) -> Result<DiscreteInstance> {
    check_scales(&params.scales)?;
    let family = params.family.clone();
    let space = *family.space();
    match theorem {
        TheoremId::DM_SINGLE | TheoremId::ADD_SINGLE => {
            if family.len() != 1 {
                return Err(Error::ConstructionFailure(
                    "single-functional construction needs a one-member family".into(),
                ));
            }
            let tol = Tolerance::default();
            let f = &family.members()[0];
            if !tol.eq(f.op_norm().value, 1.0) {
                return Err(Error::ConstructionFailure(
                    "single-functional construction needs a unit-norm functional".into(),
                ));
            }
            if !hilbert_like(&space) {
                return Err(Error::ConstructionFailure(
                    "mirrored-pair construction is an inner-product construction".into(),
                ));
            }
            let r = params.margin.unwrap_or(0.6);
            let e = f.hilbert_direction();
            let vectors = mirrored_pairs(&space, &e, r, &params.scales)?;
            let hypothesis = match theorem {
                TheoremId::DM_SINGLE => Hypothesis::Margin(vec![r]),
                _ => Hypothesis::Slack(exact_deficit_slacks(&space, &family, &vectors)?),
            };
            DiscreteInstance::new(space, vectors, family, hypothesis)
        }
        TheoremId::DM_FAMILY => {
            if !space.is_lp2() || !family.is_orthonormal() {
                return Err(Error::ConstructionFailure(
                    "family construction needs an orthonormal family on lp(2)".into(),
                ));
            }
            // weights with Σr² = 1 make v = Σ r_k e_k a unit vector with tight margins
            let m = family.len();
            let raw: Vec<f64> = (1..=m).map(|k| k as f64).collect();
            let nr = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
            let r: Vec<f64> = raw.iter().map(|v| v / nr).collect();
            let mut v = Vector::zero(space.dim);
            for (k, f) in family.members().iter().enumerate() {
                v = v.add(&f.hilbert_direction().scale(r[k]));
            }
            let vectors: Vec<Vector> = params.scales.iter().map(|&s| v.scale(s)).collect();
            DiscreteInstance::new(space, vectors, family, Hypothesis::Margin(r))
        }
        TheoremId::MULT_SUMFUNC => {
            if !hilbert_like(&space) {
                return Err(Error::ConstructionFailure(
                    "sum-direction construction is an inner-product construction".into(),
                ));
            }
            let centers = family.sum_functional().hilbert_direction();
            let nc = norm(&space, &centers)?;
            if nc == 0.0 {
                return Err(Error::ConstructionFailure(
                    "centers sum to zero; no equality direction exists".into(),
                ));
            }
            let u = centers.scale(1.0 / nc);
            let mut r = Vec::with_capacity(family.len());
            for f in family.members() {
                let rk = f.re_apply(&u)?;
                if rk < 0.0 {
                    return Err(Error::ConstructionFailure(format!(
                        "derived margin {rk} < 0; these centers admit no equality instance"
                    )));
                }
                r.push(rk);
            }
            let vectors: Vec<Vector> = params.scales.iter().map(|&s| u.scale(s)).collect();
            DiscreteInstance::new(space, vectors, family, Hypothesis::Margin(r))
        }
        TheoremId::MULT_CINF | TheoremId::MULT_CP => {
            let p = match theorem {
                TheoremId::MULT_CINF => PExp::Infinity,
                _ => params.p.ok_or_else(|| {
                    Error::ConstructionFailure("construction requires the exponent p".into())
                })?,
            };
            let u = if space.is_lp2() && family.is_orthonormal() {
                // the sup is attained in closed form: uniform mix for p ≤ 2,
                // a single center for p > 2 and p = ∞
                let uniform = matches!(p, PExp::Finite(pf) if pf <= 2.0);
                if uniform {
                    let centers = family.sum_functional().hilbert_direction();
                    unit_l2(&centers)?
                } else {
                    family.members()[0].hilbert_direction()
                }
            } else {
                let sc = SearchConfig {
                    seed: params.seed,
                    ..SearchConfig::default()
                };
                let est = family_constant(&family, p, &sc, &[])?;
                let r: Vec<f64> = family
                    .members()
                    .iter()
                    .map(|f| f.re_apply(&est.certificate).map(|v| v.max(0.0)))
                    .collect::<Result<Vec<_>>>()?;
                let attained = aggregate(r.iter().copied(), p);
                if attained < est.value * (1.0 - 1e-9) {
                    return Err(Error::ConstructionFailure(
                        "sup is not attained with real nonnegative functional values; \
                         no equality instance through the margin characterisation"
                            .into(),
                    ));
                }
                est.certificate
            };
            let mut r = Vec::with_capacity(family.len());
            for f in family.members() {
                let rk = f.re_apply(&u)?;
                if rk < 0.0 {
                    return Err(Error::ConstructionFailure(format!(
                        "derived margin {rk} < 0; no equality instance"
                    )));
                }
                r.push(rk);
            }
            let vectors: Vec<Vector> = params.scales.iter().map(|&s| u.scale(s)).collect();
            DiscreteInstance::new(space, vectors, family, Hypothesis::Margin(r))
        }
        TheoremId::ADD_FAMILY => {
            if !hilbert_like(&space) {
                return Err(Error::ConstructionFailure(
                    "sum-direction construction is an inner-product construction".into(),
                ));
            }
            let centers = family.sum_functional().hilbert_direction();
            let nc = norm(&space, &centers)?;
            if nc == 0.0 {
                return Err(Error::ConstructionFailure(
                    "centers sum to zero; no equality direction exists".into(),
                ));
            }
            let u = centers.scale(1.0 / nc);
            let vectors: Vec<Vector> = params.scales.iter().map(|&s| u.scale(s)).collect();
            let slacks = exact_deficit_slacks(&space, &family, &vectors)?;
            DiscreteInstance::new(space, vectors, family, Hypothesis::Slack(slacks))
        }
        TheoremId::ADD_CINF | TheoremId::ADD_CP => {
            let p = match theorem {
                TheoremId::ADD_CINF => PExp::Infinity,
                _ => params.p.ok_or_else(|| {
                    Error::ConstructionFailure("construction requires the exponent p".into())
                })?,
            };
            if family.len() == 1 {
                // collinear with the maximiser of |F|; zero slack, c = ‖F‖
                let tol = Tolerance::default();
                if !tol.eq(family.members()[0].op_norm().value, 1.0) {
                    return Err(Error::ConstructionFailure(
                        "one-member construction needs a unit-norm functional".into(),
                    ));
                }
                let u = family.members()[0].op_norm().certificate;
                let vectors: Vec<Vector> = params.scales.iter().map(|&s| u.scale(s)).collect();
                let slacks = exact_deficit_slacks(&space, &family, &vectors)?;
                return DiscreteInstance::new(space, vectors, family, Hypothesis::Slack(slacks));
            }
            let uniform_ok = space.is_lp2()
                && family.is_orthonormal()
                && matches!(p, PExp::Finite(pf) if pf <= 2.0);
            if !uniform_ok {
                return Err(Error::ConstructionFailure(
                    "the c_p additive bound attains equality only for orthonormal \
                     families with p <= 2 (or a single functional)"
                        .into(),
                ));
            }
            let centers = family.sum_functional().hilbert_direction();
            let u = unit_l2(&centers)?;
            let vectors: Vec<Vector> = params.scales.iter().map(|&s| u.scale(s)).collect();
            let slacks = exact_deficit_slacks(&space, &family, &vectors)?;
            DiscreteInstance::new(space, vectors, family, Hypothesis::Slack(slacks))
        }
        other => Err(Error::ConstructionFailure(format!(
            "{other} has no discrete equality constructor"
        ))),
    }
}
