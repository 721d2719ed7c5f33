//! Quadrature-based evaluation of the integral reverse inequalities.
//!
//! Integrals are composite quadratures over the path's segments; "a.e." hypotheses
//! are checked at the quadrature nodes, and every report records the node count.
//! Equality diagnoses are certified only up to quadrature accuracy and carry the
//! `quadrature_limited` flag.

use crate::discrete::{
    CheckResult, EqualityCondition, EqualityDiagnosis, SpecialBound, TheoremId, Violation,
};
use crate::error::{Error, Result};
use crate::functional::{family_constant, Functional, FunctionalFamily, SearchConfig};
use crate::path::{PathFunction, SlackFunction};
use crate::quadrature::{weighted_sum, weighted_sum_vec, QuadratureSpec};
use crate::space::{aggregate, norm, PExp, Scalar, SpaceSpec, Vector};
use crate::tol::Tolerance;
use crate::transform::{ball_to_margin, band_to_margin, BallHypothesis, BandHypothesis};

/// Converged node set plus the two integrals every check needs.
pub struct QuadEvaluation {
    pub nodes: Vec<(f64, f64)>,
    pub level: usize,
    pub integral: Vector,
    pub norm_integral: f64,
}

/// Integrate the path componentwise, refining panels until stable.
pub fn integrate_vec(f: &PathFunction, q: &QuadratureSpec, tol: &Tolerance) -> Result<Vector> {
    Ok(evaluate(f, q, tol)?.integral)
}

/// Shared evaluation rig: converges ∫f and ∫‖f‖ jointly (refining panels by
/// doubling) and keeps the node set so that every further integral in a check uses
/// consistent abscissae.
pub fn evaluate(f: &PathFunction, q: &QuadratureSpec, tol: &Tolerance) -> Result<QuadEvaluation> {
    let space = f.space;
    let compute = |level: usize| -> Result<(Vec<(f64, f64)>, Vector, f64)> {
        let nodes = f.quad_nodes(q, level)?;
        let integral = weighted_sum_vec(&nodes, space.dim, |t| f.eval(t));
        let norm_integral =
            weighted_sum(&nodes, |t| norm(&space, &f.eval(t)).unwrap_or(f64::NAN));
        Ok((nodes, integral, norm_integral))
    };
    let (mut nodes, mut integral, mut norm_integral) = compute(0)?;
    let mut converged = None;
    for level in 1..=q.refinement {
        let (n2, i2, s2) = compute(level)?;
        let scale = i2
            .entries()
            .iter()
            .map(|z| z.norm())
            .fold(s2.abs(), f64::max);
        let delta = integral
            .entries()
            .iter()
            .zip(i2.entries())
            .map(|(a, b)| (a - b).norm())
            .fold((norm_integral - s2).abs(), f64::max);
        nodes = n2;
        integral = i2;
        norm_integral = s2;
        if delta <= tol.slack(scale, scale) {
            converged = Some(level);
            break;
        }
    }
    let level = converged.ok_or_else(|| {
        Error::ConvergenceFailure(format!(
            "quadrature did not stabilise after {} doublings",
            q.refinement
        ))
    })?;
    if integral.entries().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("path integral".into()));
    }
    if !norm_integral.is_finite() {
        return Err(Error::NonFinite("norm integral".into()));
    }
    Ok(QuadEvaluation {
        nodes,
        level,
        integral,
        norm_integral,
    })
}

fn hilbert_like(space: &SpaceSpec) -> bool {
    space.is_lp2()
        || matches!(space.norm, crate::space::NormKind::CMod(PExp::Finite(p)) if p == 2.0)
}

/// Margin violations r_k‖f(t)‖ ≤ Re F_k(f(t)) at the quadrature nodes.
pub fn cont_margin_check(
    f: &PathFunction,
    family: &FunctionalFamily,
    margins: &[f64],
    nodes: &[(f64, f64)],
    tol: &Tolerance,
) -> Result<Vec<Violation>> {
    Ok(margin_audit(f, family, margins, nodes, tol)?.0)
}

/// Violations plus the worst excess over all nodes (negative when clean).
fn margin_audit(
    f: &PathFunction,
    family: &FunctionalFamily,
    margins: &[f64],
    nodes: &[(f64, f64)],
    tol: &Tolerance,
) -> Result<(Vec<Violation>, f64)> {
    let mut out = Vec::new();
    let mut worst = f64::NEG_INFINITY;
    for (idx, &(t, _)) in nodes.iter().enumerate() {
        let x = f.eval(t);
        let nx = norm(&f.space, &x)?;
        for (k, func) in family.members().iter().enumerate() {
            let re = func.re_apply(&x)?;
            let excess = margins[k] * nx - re;
            worst = worst.max(excess);
            if !tol.le(margins[k] * nx, re) {
                out.push(Violation {
                    item: idx,
                    functional: k,
                    excess,
                    at: Some(t),
                });
            }
        }
    }
    Ok((out, worst))
}

/// Slack violations ‖f(t)‖ − Re F_k(f(t)) ≤ M_k(t) at the quadrature nodes, plus
/// nodes where the slack profile itself is negative.
pub fn cont_slack_check(
    f: &PathFunction,
    family: &FunctionalFamily,
    slack: &SlackFunction,
    nodes: &[(f64, f64)],
    tol: &Tolerance,
) -> Result<Vec<Violation>> {
    Ok(slack_audit(f, family, slack, nodes, tol)?.0)
}

fn slack_audit(
    f: &PathFunction,
    family: &FunctionalFamily,
    slack: &SlackFunction,
    nodes: &[(f64, f64)],
    tol: &Tolerance,
) -> Result<(Vec<Violation>, f64)> {
    let mut out = Vec::new();
    let mut worst = f64::NEG_INFINITY;
    for (idx, &(t, _)) in nodes.iter().enumerate() {
        let x = f.eval(t);
        let nx = norm(&f.space, &x)?;
        for (k, func) in family.members().iter().enumerate() {
            let bound = slack.eval(k, t);
            if !tol.le(0.0, bound) {
                worst = worst.max(-bound);
                out.push(Violation {
                    item: idx,
                    functional: k,
                    excess: -bound,
                    at: Some(t),
                });
                continue;
            }
            let deficit = nx - func.re_apply(&x)?;
            let excess = deficit - bound;
            worst = worst.max(excess);
            if !tol.le(deficit, bound) {
                out.push(Violation {
                    item: idx,
                    functional: k,
                    excess,
                    at: Some(t),
                });
            }
        }
    }
    Ok((out, worst))
}

fn cond_eq_scalar(id: &'static str, tol: &Tolerance, value: Scalar, target: f64) -> EqualityCondition {
    let residual = (value - Scalar::new(target, 0.0)).norm();
    EqualityCondition {
        id,
        holds: residual <= tol.slack(value.norm(), target),
        residual,
    }
}

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

fn diagnosis(tol: &Tolerance, lhs: f64, rhs: f64) -> EqualityDiagnosis {
    EqualityDiagnosis {
        conditions: Vec::new(),
        gap: (lhs - rhs).abs(),
        attained: tol.eq(lhs, rhs),
        quadrature_limited: true,
    }
}

/// r·∫‖f‖ ≤ ‖∫f‖ for one unit-norm functional.
pub fn cont_mult_single(
    f: &PathFunction,
    func: &Functional,
    r: f64,
    q: &QuadratureSpec,
    tol: &Tolerance,
) -> Result<CheckResult> {
    if !tol.eq(func.op_norm().value, 1.0) {
        return Err(Error::HypothesisViolation(
            "functional norm must be 1".into(),
        ));
    }
    if !(r >= 0.0) {
        return Err(Error::HypothesisViolation("margin must be >= 0".into()));
    }
    let fam = FunctionalFamily::new(vec![func.clone()])?;
    let ev = evaluate(f, q, tol)?;
    let (violations, worst_margin) = margin_audit(f, &fam, &[r], &ev.nodes, tol)?;
    let lhs = r * ev.norm_integral;
    let rhs = norm(&f.space, &ev.integral)?;
    let fv = func.apply(&ev.integral)?;

    let mut equality = diagnosis(tol, lhs, rhs);
    equality.conditions.push(cond_eq_scalar(
        "functional_attains_margin_total",
        tol,
        fv,
        lhs,
    ));
    equality
        .conditions
        .push(cond_eq_scalar("functional_attains_integral_norm", tol, fv, rhs));
    if hilbert_like(&f.space) {
        let e = func.hilbert_direction();
        equality.conditions.push(cond_eq_vector(
            "integral_collinear_with_direction",
            tol,
            &f.space,
            &ev.integral,
            &e.scale(r * ev.norm_integral),
        )?);
    }

    Ok(CheckResult {
        theorem: TheoremId::CONT_MULT_SINGLE,
        lhs,
        rhs,
        passed: tol.le(lhs, rhs),
        coarse_rhs: None,
        special_rhs: None,
        violations,
        equality,
        nodes: Some(ev.nodes.len()),
        worst_margin: Some(worst_margin),
    })
}

/// ∫‖f‖ ≤ (‖ΣF_k‖/Σr_k)·‖∫f‖, or with `p` supplied the ratio forms
/// ∫‖f‖/‖∫f‖ ≤ c_∞/max r_k resp. c_p/(Σ r_k^p)^{1/p}.
pub fn cont_mult_family(
    f: &PathFunction,
    fam: &FunctionalFamily,
    margins: &[f64],
    q: &QuadratureSpec,
    tol: &Tolerance,
    p: Option<PExp>,
    search: &SearchConfig,
) -> Result<CheckResult> {
    if margins.len() != fam.len() {
        return Err(Error::InvalidConfig(
            "margin count must match the family size".into(),
        ));
    }
    if margins.iter().any(|&r| !(r >= 0.0)) {
        return Err(Error::HypothesisViolation("margins must be >= 0".into()));
    }
    let ev = evaluate(f, q, tol)?;
    let (violations, worst_margin) = margin_audit(f, fam, margins, &ev.nodes, tol)?;
    let int_norm = norm(&f.space, &ev.integral)?;

    match p {
        None => {
            let sum_r: f64 = margins.iter().sum();
            if !(sum_r > 0.0) {
                return Err(Error::HypothesisViolation(
                    "multiplicative reverse requires sum of margins > 0".into(),
                ));
            }
            let sum_f = fam.sum_functional();
            let sum_f_norm = sum_f.op_norm().value;
            let lhs = ev.norm_integral;
            let rhs = sum_f_norm / sum_r * int_norm;
            let coarse = fam
                .members()
                .iter()
                .map(|g| g.op_norm().value)
                .sum::<f64>()
                / sum_r
                * int_norm;
            let fv = sum_f.apply(&ev.integral)?;
            let mut equality = diagnosis(tol, lhs, rhs);
            equality.conditions.push(cond_eq_scalar(
                "aggregate_attains_margin_total",
                tol,
                fv,
                sum_r * ev.norm_integral,
            ));
            equality.conditions.push(cond_eq_scalar(
                "aggregate_attains_operator_norm",
                tol,
                fv,
                sum_f_norm * int_norm,
            ));
            if hilbert_like(&f.space) {
                let centers = sum_f.hilbert_direction();
                let nc = norm(&f.space, &centers)?;
                if nc > 0.0 {
                    equality.conditions.push(cond_eq_vector(
                        "integral_collinear_with_centers",
                        tol,
                        &f.space,
                        &ev.integral,
                        &centers.scale(sum_r / (nc * nc) * ev.norm_integral),
                    )?);
                }
            }
            Ok(CheckResult {
                theorem: TheoremId::CONT_MULT_FAMILY,
                lhs,
                rhs,
                passed: tol.le(lhs, rhs),
                coarse_rhs: Some(coarse),
                special_rhs: None,
                violations,
                equality,
                nodes: Some(ev.nodes.len()),
                worst_margin: Some(worst_margin),
            })
        }
        Some(p) => {
            if margins.iter().all(|&r| r == 0.0) {
                return Err(Error::HypothesisViolation(
                    "ratio-form reverse requires some margin > 0".into(),
                ));
            }
            if int_norm <= 1e-14 * ev.norm_integral.max(1e-300) {
                return Err(Error::DegenerateInstance(
                    "path integral is numerically zero; ratio bound undefined".into(),
                ));
            }
            let denom = aggregate(margins.iter().copied(), p);
            let c = family_constant(fam, p, search, std::slice::from_ref(&ev.integral))?;
            let lhs = ev.norm_integral / int_norm;
            let rhs = c.value / denom;
            let coarse = fam.constant_cap(p) / denom;
            let mut equality = diagnosis(tol, lhs, rhs);
            let mut tight = true;
            let mut worst = 0.0_f64;
            let mut res = Vec::with_capacity(fam.len());
            for (k, g) in fam.members().iter().enumerate() {
                let re = g.re_apply(&ev.integral)?;
                res.push(re);
                let resid = (re - margins[k] * ev.norm_integral).abs();
                worst = worst.max(resid);
                if !tol.eq(re, margins[k] * ev.norm_integral) {
                    tight = false;
                }
            }
            equality.conditions.push(EqualityCondition {
                id: "margins_tight_at_integral",
                holds: tight,
                residual: worst,
            });
            match p {
                PExp::Infinity => {
                    let max_re = res.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    equality.conditions.push(EqualityCondition {
                        id: "max_margin_attains_sup",
                        holds: tol.eq(max_re, c.value * int_norm),
                        residual: (max_re - c.value * int_norm).abs(),
                    });
                }
                PExp::Finite(pf) => {
                    let agg: f64 = res.iter().map(|&v| v.max(0.0).powf(pf)).sum();
                    let target = c.value.powf(pf) * int_norm.powf(pf);
                    equality.conditions.push(EqualityCondition {
                        id: "aggregate_attains_sup",
                        holds: tol.eq(agg, target),
                        residual: (agg - target).abs(),
                    });
                }
            }
            Ok(CheckResult {
                theorem: if p.is_finite() {
                    TheoremId::CONT_MULT_CP
                } else {
                    TheoremId::CONT_MULT_CINF
                },
                lhs,
                rhs,
                passed: tol.le(lhs, rhs),
                coarse_rhs: Some(coarse),
                special_rhs: None,
                violations,
                equality,
                nodes: Some(ev.nodes.len()),
                worst_margin: Some(worst_margin),
            })
        }
    }
}

/// Geometric hypothesis for the transformed multiplicative corollaries.
#[derive(Debug, Clone)]
pub enum GeoHypothesis {
    Ball { radii: Vec<f64> },
    Band { lower: Vec<f64>, upper: Vec<f64> },
}

/// Composes ball/band margins and delegates to the family bound: the hypothesis is
/// checked geometrically at the nodes, margins come from the transformer lemmas.
pub fn cont_mult_transformed(
    f: &PathFunction,
    centers: &[Vector],
    hyp: &GeoHypothesis,
    q: &QuadratureSpec,
    tol: &Tolerance,
    search: &SearchConfig,
) -> Result<CheckResult> {
    let space = f.space;
    let m = centers.len();
    if m == 0 {
        return Err(Error::InvalidConfig("need at least one center".into()));
    }
    let (margins, theorem, ball_forms) = match hyp {
        GeoHypothesis::Ball { radii } => {
            if radii.len() != m {
                return Err(Error::InvalidConfig("radius count mismatch".into()));
            }
            let mut margins = Vec::with_capacity(m);
            let mut balls = Vec::with_capacity(m);
            for (e, &rho) in centers.iter().zip(radii) {
                let ball = BallHypothesis::new(e.clone(), rho)?;
                margins.push(ball_to_margin(&space, &ball)?);
                balls.push(ball);
            }
            (margins, TheoremId::CONT_MULT_BALL, balls)
        }
        GeoHypothesis::Band { lower, upper } => {
            if lower.len() != m || upper.len() != m {
                return Err(Error::InvalidConfig("band bound count mismatch".into()));
            }
            let mut margins = Vec::with_capacity(m);
            let mut balls = Vec::with_capacity(m);
            for ((e, &lo), &hi) in centers.iter().zip(lower).zip(upper) {
                let band = BandHypothesis::new(e.clone(), lo, hi)?;
                margins.push(band_to_margin(&space, &band)?);
                balls.push(band.to_ball(&space)?);
            }
            (margins, TheoremId::CONT_MULT_BAND, balls)
        }
    };

    let fam = FunctionalFamily::from_directions(space, centers)?;
    let mut result = cont_mult_family(f, &fam, &margins, q, tol, None, search)?;
    result.theorem = theorem;
    // present the reverse in its normalised form r_total/‖Σe_k‖·∫‖f‖ ≤ ‖∫f‖
    // (for one unit center: √(1−ρ²)·∫‖f‖ ≤ ‖∫f‖)
    let sum_f_norm = fam.sum_functional().op_norm().value;
    if sum_f_norm > 0.0 {
        let factor = margins.iter().sum::<f64>() / sum_f_norm;
        result.lhs *= factor;
        result.rhs *= factor;
        result.coarse_rhs = result.coarse_rhs.map(|c| c * factor);
        result.passed = tol.le(result.lhs, result.rhs);
        result.equality.gap = (result.lhs - result.rhs).abs();
        result.equality.attained = tol.eq(result.lhs, result.rhs);
    }

    // geometric hypothesis at the nodes (the equivalent ball forms)
    let ev_nodes = f.quad_nodes(q, 0)?;
    let mut geo = Vec::new();
    for (idx, &(t, _)) in ev_nodes.iter().enumerate() {
        let x = f.eval(t);
        for (k, ball) in ball_forms.iter().enumerate() {
            let d = norm(&space, &x.sub(&ball.center))?;
            if !tol.le(d, ball.radius) {
                geo.push(Violation {
                    item: idx,
                    functional: k,
                    excess: d - ball.radius,
                    at: Some(t),
                });
            }
        }
    }
    result.violations.extend(geo);
    Ok(result)
}

/// ∫‖f‖ − ‖∫f‖ ≤ ∫k for a unit-norm functional with pointwise slack profile k(t).
pub fn cont_add_single(
    f: &PathFunction,
    func: &Functional,
    k: &SlackFunction,
    q: &QuadratureSpec,
    tol: &Tolerance,
) -> Result<CheckResult> {
    if !tol.eq(func.op_norm().value, 1.0) {
        return Err(Error::HypothesisViolation(
            "functional norm must be 1".into(),
        ));
    }
    if k.len() != 1 {
        return Err(Error::InvalidConfig(
            "single-functional check takes one slack profile".into(),
        ));
    }
    let fam = FunctionalFamily::new(vec![func.clone()])?;
    let ev = evaluate(f, q, tol)?;
    let (violations, worst_margin) = slack_audit(f, &fam, k, &ev.nodes, tol)?;
    let int_norm = norm(&f.space, &ev.integral)?;
    let slack_integral = weighted_sum(&ev.nodes, |t| k.eval(0, t));
    let lhs = ev.norm_integral - int_norm;
    let rhs = slack_integral;
    let fv = func.apply(&ev.integral)?;

    let mut equality = diagnosis(tol, lhs, rhs);
    equality.conditions.push(cond_eq_scalar(
        "functional_attains_integral_norm",
        tol,
        fv,
        int_norm,
    ));
    equality.conditions.push(cond_eq_scalar(
        "slack_exhausted_at_integral",
        tol,
        fv,
        ev.norm_integral - slack_integral,
    ));
    if hilbert_like(&f.space) {
        equality.conditions.push(EqualityCondition {
            id: "integral_norm_dominates_slack",
            holds: tol.le(slack_integral, ev.norm_integral),
            residual: (slack_integral - ev.norm_integral).max(0.0),
        });
        let e = func.hilbert_direction();
        equality.conditions.push(cond_eq_vector(
            "integral_collinear_scaled",
            tol,
            &f.space,
            &ev.integral,
            &e.scale(ev.norm_integral - slack_integral),
        )?);
    }

    Ok(CheckResult {
        theorem: TheoremId::CONT_ADD_SINGLE,
        lhs,
        rhs,
        passed: tol.le(lhs, rhs),
        coarse_rhs: None,
        special_rhs: None,
        violations,
        equality,
        nodes: Some(ev.nodes.len()),
        worst_margin: Some(worst_margin),
    })
}

/// ∫‖f‖ ≤ ‖(1/m)ΣF_k‖·‖∫f‖ + (1/m)Σ_k∫M_k, or with `p` supplied the c_∞ / c_p
/// aggregate forms.
pub fn cont_add_family(
    f: &PathFunction,
    fam: &FunctionalFamily,
    slack: &SlackFunction,
    q: &QuadratureSpec,
    tol: &Tolerance,
    p: Option<PExp>,
    search: &SearchConfig,
) -> Result<CheckResult> {
    if slack.len() != fam.len() {
        return Err(Error::InvalidConfig(
            "slack profile count must match the family size".into(),
        ));
    }
    let ev = evaluate(f, q, tol)?;
    let (violations, worst_margin) = slack_audit(f, fam, slack, &ev.nodes, tol)?;
    let int_norm = norm(&f.space, &ev.integral)?;
    let m = fam.len() as f64;
    let slack_integrals: Vec<f64> = (0..fam.len())
        .map(|k| weighted_sum(&ev.nodes, |t| slack.eval(k, t)))
        .collect();
    let avg_slack = slack_integrals.iter().sum::<f64>() / m;
    let lhs = ev.norm_integral;

    match p {
        None => {
            let sum_f = fam.sum_functional();
            let avg_norm = sum_f.op_norm().value / m;
            let rhs = avg_norm * int_norm + avg_slack;
            let special_rhs = if f.space.is_lp2() && fam.is_orthogonal() {
                let sq: f64 = fam
                    .members()
                    .iter()
                    .map(|g| {
                        let e = g.hilbert_direction();
                        norm(&f.space, &e).map(|n| n * n)
                    })
                    .collect::<Result<Vec<_>>>()?
                    .iter()
                    .sum();
                Some(if fam.is_orthonormal() {
                    SpecialBound {
                        label: "orthonormal_centers",
                        value: int_norm / m.sqrt() + avg_slack,
                    }
                } else {
                    SpecialBound {
                        label: "orthogonal_centers",
                        value: sq.sqrt() / m * int_norm + avg_slack,
                    }
                })
            } else {
                None
            };
            let favg = sum_f.apply(&ev.integral)? / m;
            let mut equality = diagnosis(tol, lhs, rhs);
            equality.conditions.push(cond_eq_scalar(
                "average_attains_operator_norm",
                tol,
                favg,
                avg_norm * int_norm,
            ));
            equality.conditions.push(cond_eq_scalar(
                "average_exhausts_slack",
                tol,
                favg,
                ev.norm_integral - avg_slack,
            ));
            if hilbert_like(&f.space) {
                equality.conditions.push(EqualityCondition {
                    id: "integral_norm_dominates_slack",
                    holds: tol.le(avg_slack, ev.norm_integral),
                    residual: (avg_slack - ev.norm_integral).max(0.0),
                });
                let centers = sum_f.hilbert_direction();
                let nc = norm(&f.space, &centers)?;
                if nc > 0.0 {
                    equality.conditions.push(cond_eq_vector(
                        "integral_collinear_scaled",
                        tol,
                        &f.space,
                        &ev.integral,
                        &centers.scale(m * (ev.norm_integral - avg_slack) / (nc * nc)),
                    )?);
                }
            }
            Ok(CheckResult {
                theorem: TheoremId::CONT_ADD_FAMILY,
                lhs,
                rhs,
                passed: tol.le(lhs, rhs),
                coarse_rhs: None,
                special_rhs,
                violations,
                equality,
                nodes: Some(ev.nodes.len()),
                worst_margin: Some(worst_margin),
            })
        }
        Some(p) => {
            let c = family_constant(fam, p, search, std::slice::from_ref(&ev.integral))?;
            let cap = fam.constant_cap(p);
            let factor = match p {
                PExp::Infinity => 1.0,
                PExp::Finite(pf) => m.powf(-1.0 / pf),
            };
            let rhs = factor * c.value * int_norm + avg_slack;
            let coarse = factor * cap * int_norm + avg_slack;
            Ok(CheckResult {
                theorem: if p.is_finite() {
                    TheoremId::CONT_ADD_CP
                } else {
                    TheoremId::CONT_ADD_CINF
                },
                lhs,
                rhs,
                passed: tol.le(lhs, rhs),
                coarse_rhs: Some(coarse),
                special_rhs: None,
                violations,
                equality: diagnosis(tol, lhs, rhs),
                nodes: Some(ev.nodes.len()),
                worst_margin: Some(worst_margin),
            })
        }
    }
}

/// Time-varying geometric hypotheses for the transformed additive corollaries:
/// per-center radius profiles r_k(t), or band profiles (μ_k(t), M_k(t)).
#[derive(Clone)]
pub enum TimeVaryingHypothesis {
    Ball { radii: SlackFunction },
    Band { lower: SlackFunction, upper: SlackFunction },
}

/// Evaluates the slack transformer pointwise at the nodes (½r_k²(t), resp.
/// ¼(M_k−μ_k)²/(M_k+μ_k)) and delegates to the additive family bound. The lemma
/// chain consumes ‖f‖ − Re⟨f, e_k⟩, so centers must have unit norm.
pub fn cont_add_transformed(
    f: &PathFunction,
    centers: &[Vector],
    hyp: &TimeVaryingHypothesis,
    q: &QuadratureSpec,
    tol: &Tolerance,
    search: &SearchConfig,
) -> Result<CheckResult> {
    let space = f.space;
    if !space.is_lp2() {
        return Err(Error::UnsupportedStructure(
            "ball/band transformers operate on lp(2) spaces only".into(),
        ));
    }
    let m = centers.len();
    if m == 0 {
        return Err(Error::InvalidConfig("need at least one center".into()));
    }
    for e in centers {
        let ne = norm(&space, e)?;
        if !tol.eq(ne, 1.0) {
            return Err(Error::HypothesisViolation(format!(
                "additive transformer centers must have unit norm, got {ne}"
            )));
        }
    }
    let (slack, theorem, geo_check): (SlackFunction, TheoremId, Box<dyn Fn(f64, usize, &Vector) -> Result<f64>>) =
        match hyp {
            TimeVaryingHypothesis::Ball { radii } => {
                if radii.len() != m {
                    return Err(Error::InvalidConfig("radius profile count mismatch".into()));
                }
                let radii_for_slack = radii.clone();
                let mut fns: Vec<std::sync::Arc<dyn Fn(f64) -> f64 + Send + Sync>> = Vec::new();
                for k in 0..m {
                    let radii = radii_for_slack.clone();
                    fns.push(std::sync::Arc::new(move |t: f64| {
                        let r = radii.eval(k, t);
                        0.5 * r * r
                    }));
                }
                let radii_for_geo = radii.clone();
                let centers_geo = centers.to_vec();
                (
                    SlackFunction::new(fns)?,
                    TheoremId::CONT_ADD_BALL,
                    Box::new(move |t, k, x| {
                        let d = norm(&space, &x.sub(&centers_geo[k]))?;
                        Ok(d - radii_for_geo.eval(k, t))
                    }),
                )
            }
            TimeVaryingHypothesis::Band { lower, upper } => {
                if lower.len() != m || upper.len() != m {
                    return Err(Error::InvalidConfig("band profile count mismatch".into()));
                }
                let (lo_s, hi_s) = (lower.clone(), upper.clone());
                let mut fns: Vec<std::sync::Arc<dyn Fn(f64) -> f64 + Send + Sync>> = Vec::new();
                for k in 0..m {
                    let (lo, hi) = (lo_s.clone(), hi_s.clone());
                    fns.push(std::sync::Arc::new(move |t: f64| {
                        let (a, b) = (lo.eval(k, t), hi.eval(k, t));
                        if !(a > 0.0 && b >= a) {
                            return f64::NAN; // surfaces as a violation at the node
                        }
                        0.25 * (b - a) * (b - a) / (a + b)
                    }));
                }
                let (lo_g, hi_g) = (lower.clone(), upper.clone());
                let centers_geo = centers.to_vec();
                (
                    SlackFunction::new(fns)?,
                    TheoremId::CONT_ADD_BAND,
                    Box::new(move |t, k, x| {
                        let (a, b) = (lo_g.eval(k, t), hi_g.eval(k, t));
                        if !(a > 0.0 && b >= a) {
                            return Ok(f64::INFINITY);
                        }
                        let center = centers_geo[k].scale(0.5 * (a + b));
                        let d = norm(&space, &x.sub(&center))?;
                        Ok(d - 0.5 * (b - a))
                    }),
                )
            }
        };

    let fam = FunctionalFamily::from_directions(space, centers)?;
    let mut result = cont_add_family(f, &fam, &slack, q, tol, None, search)?;
    result.theorem = theorem;

    let nodes = f.quad_nodes(q, 0)?;
    for (idx, &(t, _)) in nodes.iter().enumerate() {
        let x = f.eval(t);
        for k in 0..m {
            let excess = geo_check(t, k, &x)?;
            if !tol.le(excess, 0.0) {
                result.violations.push(Violation {
                    item: idx,
                    functional: k,
                    excess,
                    at: Some(t),
                });
            }
        }
    }
    Ok(result)
}
