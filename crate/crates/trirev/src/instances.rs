//! Seeded generation of hypothesis-satisfying instances and the adversarial
//! sharpness search.
//!
//! Each item draws from its own ChaCha stream keyed by (seed, item index), so
//! generation is reproducible independent of evaluation order. Margins and
//! geometric memberships are enforced with raw comparisons at generation time,
//! which keeps every generated instance clean under the tolerance-based checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::discrete::{run_check, DiscreteInstance, Hypothesis, TheoremId};
use crate::error::{Error, Result};
use crate::functional::{FunctionalFamily, SearchConfig};
use crate::space::{norm, unit, Field, PExp, Scalar, SpaceSpec, Vector};
use crate::tol::Tolerance;

#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    pub seed: u64,
    /// Number of vectors to generate.
    pub n: usize,
    pub space: SpaceSpec,
    /// Positive scale range [s_min, s_max].
    pub scale: (f64, f64),
}

impl GenConfig {
    pub fn new(seed: u64, n: usize, space: SpaceSpec) -> Self {
        GenConfig {
            seed,
            n,
            space,
            scale: (0.5, 2.0),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig("need n >= 1 vectors".into()));
        }
        let (lo, hi) = self.scale;
        if !(lo > 0.0 && hi >= lo) {
            return Err(Error::InvalidConfig(
                "scale range must satisfy 0 < s_min <= s_max".into(),
            ));
        }
        Ok(())
    }

    fn stream(&self, item: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(item);
        rng
    }
}

pub(crate) fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub(crate) fn gaussian_vector(space: &SpaceSpec, rng: &mut ChaCha8Rng) -> Vector {
    Vector::new(
        (0..space.dim)
            .map(|_| {
                Scalar::new(
                    gauss(rng),
                    if space.field == Field::Complex {
                        gauss(rng)
                    } else {
                        0.0
                    },
                )
            })
            .collect(),
    )
    .expect("finite")
}

/// Real inner product Re Σ a_j conj(b_j): the geometry the margin constraints live in.
fn re_dot(a: &Vector, b: &Vector) -> f64 {
    a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| (x * y.conj()).re)
        .sum()
}

fn margins_hold(family: &FunctionalFamily, r: &[f64], space: &SpaceSpec, x: &Vector) -> bool {
    let nx = match norm(space, x) {
        Ok(n) => n,
        Err(_) => return false,
    };
    family
        .members()
        .iter()
        .zip(r)
        .all(|(f, &rk)| f.re_apply(x).map(|re| re >= rk * nx).unwrap_or(false))
}

/// Feasible axis for the margin cone: the normalised sum of the ℓ²-unit representers.
/// Its feasibility certifies the cone is nonempty; infeasibility of the certificate is
/// a construction failure.
pub(crate) fn margin_axis(family: &FunctionalFamily, r: &[f64]) -> Result<Vector> {
    let space = family.space();
    let mut acc = Vector::zero(space.dim);
    for f in family.members() {
        let h = f.hilbert_direction();
        let hn = h.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if hn > 0.0 {
            acc = acc.add(&h.scale(1.0 / hn));
        }
    }
    let axis = unit(space, &acc).map_err(|_| {
        Error::ConstructionFailure("margin cone certificate vanished (representers cancel)".into())
    })?;
    if !margins_hold(family, r, space, &axis) {
        return Err(Error::ConstructionFailure(
            "margin cone certificate violates the margins; parameters infeasible".into(),
        ));
    }
    Ok(axis)
}

/// Generate n vectors satisfying Re F_k(x_i) ≥ r_k‖x_i‖ for all i, k. Each vector is
/// s·(cos α·axis + sin α·w) with w a random unit direction real-orthogonal to the
/// axis and α shrunk geometrically until the margins hold.
pub fn gen_margin(
    cfg: &GenConfig,
    family: &FunctionalFamily,
    r: &[f64],
) -> Result<DiscreteInstance> {
    cfg.validate()?;
    if r.len() != family.len() {
        return Err(Error::InvalidConfig(
            "margin count must match the family size".into(),
        ));
    }
    let space = *family.space();
    if space != cfg.space {
        return Err(Error::InvalidConfig("config space differs from family space".into()));
    }
    let axis = margin_axis(family, r)?;
    let mut vectors = Vec::with_capacity(cfg.n);
    for i in 0..cfg.n {
        let mut rng = cfg.stream(i as u64);
        let s = rng.gen_range(cfg.scale.0..=cfg.scale.1);
        // random direction with the axis component removed (real-linear geometry)
        let mut w = gaussian_vector(&space, &mut rng);
        let axis_sq = re_dot(&axis, &axis);
        w = w.sub(&axis.scale(re_dot(&w, &axis) / axis_sq));
        let wn = w.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let x = if wn < 1e-12 {
            axis.scale(s)
        } else {
            let w = w.scale(1.0 / wn);
            let mut alpha = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
            let mut chosen = axis.scale(s);
            for _ in 0..100 {
                let cand = axis.scale(alpha.cos()).add(&w.scale(alpha.sin()));
                let cand = match unit(&space, &cand) {
                    Ok(u) => u.scale(s),
                    Err(_) => break,
                };
                if margins_hold(family, r, &space, &cand) {
                    chosen = cand;
                    break;
                }
                alpha *= 0.5;
            }
            chosen
        };
        vectors.push(x);
    }
    DiscreteInstance::new(space, vectors, family.clone(), Hypothesis::Margin(r.to_vec()))
}

/// Points inside every ball ‖x − e_k‖ ≤ ρ_k, by rejection sampling from the smallest
/// ball. Ball intersection is certified by the centers' average; 10^5 attempts per
/// point before construction failure.
pub fn gen_ball_points(
    cfg: &GenConfig,
    centers: &[Vector],
    radii: &[f64],
) -> Result<Vec<Vector>> {
    cfg.validate()?;
    if centers.is_empty() || centers.len() != radii.len() {
        return Err(Error::InvalidConfig(
            "need equally many centers and radii".into(),
        ));
    }
    let space = cfg.space;
    for (e, &rho) in centers.iter().zip(radii) {
        space.check_dim(e)?;
        if !(rho >= 0.0) {
            return Err(Error::InvalidConfig("radii must be >= 0".into()));
        }
    }
    let m = centers.len() as f64;
    let mut midpoint = Vector::zero(space.dim);
    for e in centers {
        midpoint = midpoint.add(e);
    }
    let midpoint = midpoint.scale(1.0 / m);
    let inside = |x: &Vector| -> Result<bool> {
        for (e, &rho) in centers.iter().zip(radii) {
            if norm(&space, &x.sub(e))? > rho {
                return Ok(false);
            }
        }
        Ok(true)
    };
    if !inside(&midpoint)? {
        return Err(Error::ConstructionFailure(
            "centers' average lies outside some ball; intersection not certified".into(),
        ));
    }
    let (kmin, _) = radii
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |(bk, br), (k, &r)| {
            if r < br {
                (k, r)
            } else {
                (bk, br)
            }
        });
    let real_dim = space.dim * if space.field == Field::Complex { 2 } else { 1 };
    let mut out = Vec::with_capacity(cfg.n);
    for i in 0..cfg.n {
        let mut rng = cfg.stream(i as u64);
        let mut found = None;
        for _ in 0..100_000 {
            let x = if radii[kmin] == 0.0 {
                centers[kmin].clone()
            } else {
                let dir = gaussian_vector(&space, &mut rng);
                let dn = dir.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if dn == 0.0 {
                    continue;
                }
                let u: f64 = rng.gen_range(0.0..1.0);
                let rad = radii[kmin] * u.powf(1.0 / real_dim as f64);
                centers[kmin].add(&dir.scale(rad / dn))
            };
            if inside(&x)? {
                found = Some(x);
                break;
            }
        }
        out.push(found.ok_or_else(|| {
            Error::ConstructionFailure(format!(
                "rejection sampling exhausted its budget for point {i}"
            ))
        })?);
    }
    Ok(out)
}

/// Ball-generated margin instance: margins (‖e_k‖² − ρ_k²)^{1/2} from the ball lemma,
/// family ⟨·, e_k⟩. Requires ρ_k < ‖e_k‖ and an ℓ² space.
pub fn gen_ball(cfg: &GenConfig, centers: &[Vector], radii: &[f64]) -> Result<DiscreteInstance> {
    let space = cfg.space;
    let mut margins = Vec::with_capacity(centers.len());
    for (e, &rho) in centers.iter().zip(radii) {
        let ball = crate::transform::BallHypothesis::new(e.clone(), rho)?;
        margins.push(crate::transform::ball_to_margin(&space, &ball)?);
    }
    let vectors = gen_ball_points(cfg, centers, radii)?;
    let family = FunctionalFamily::from_directions(space, centers)?;
    DiscreteInstance::new(space, vectors, family, Hypothesis::Margin(margins))
}

/// Band-generated margin instance via the equivalent ball form with center
/// (m_k+M_k)/2·e_k and radius ½(M_k−m_k)‖e_k‖.
pub fn gen_band(
    cfg: &GenConfig,
    directions: &[Vector],
    lower: &[f64],
    upper: &[f64],
) -> Result<DiscreteInstance> {
    let space = cfg.space;
    if directions.len() != lower.len() || directions.len() != upper.len() {
        return Err(Error::InvalidConfig("band parameter count mismatch".into()));
    }
    let mut centers = Vec::with_capacity(directions.len());
    let mut radii = Vec::with_capacity(directions.len());
    let mut margins = Vec::with_capacity(directions.len());
    for ((e, &lo), &hi) in directions.iter().zip(lower).zip(upper) {
        let band = crate::transform::BandHypothesis::new(e.clone(), lo, hi)?;
        margins.push(crate::transform::band_to_margin(&space, &band)?);
        let ball = band.to_ball(&space)?;
        centers.push(ball.center);
        radii.push(ball.radius);
    }
    let vectors = gen_ball_points(cfg, &centers, &radii)?;
    let family = FunctionalFamily::from_directions(space, directions)?;
    DiscreteInstance::new(space, vectors, family, Hypothesis::Margin(margins))
}

/// Smooth path confined to the intersection of the balls: a trigonometric bundle
/// around the centers' average, with total amplitude inside the tightest slack
/// min_k(ρ_k − ‖midpoint − e_k‖). Seeded and deterministic.
pub fn gen_ball_path(
    cfg: &GenConfig,
    centers: &[Vector],
    radii: &[f64],
    domain: (f64, f64),
) -> Result<crate::path::PathFunction> {
    let space = cfg.space;
    if centers.is_empty() || centers.len() != radii.len() {
        return Err(Error::InvalidConfig(
            "need equally many centers and radii".into(),
        ));
    }
    let mut midpoint = Vector::zero(space.dim);
    for e in centers {
        space.check_dim(e)?;
        midpoint = midpoint.add(e);
    }
    let midpoint = midpoint.scale(1.0 / centers.len() as f64);
    let mut budget = f64::INFINITY;
    for (e, &rho) in centers.iter().zip(radii) {
        budget = budget.min(rho - norm(&space, &midpoint.sub(e))?);
    }
    if !(budget > 0.0) {
        return Err(Error::ConstructionFailure(
            "centers' average has no interior slack; no smooth in-ball path".into(),
        ));
    }
    let mut rng = cfg.stream(u64::MAX);
    let terms = 2usize;
    let amp_each = 0.9 * budget / terms as f64;
    let bundle = (0..terms)
        .map(|_| {
            let dir = crate::space::unit_l2(&gaussian_vector(&space, &mut rng))?;
            Ok(crate::path::TrigTerm {
                amplitude: dir.scale(amp_each),
                omega: rng.gen_range(0.5..4.0),
                phase: rng.gen_range(0.0..std::f64::consts::TAU),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    crate::path::PathFunction::trig(space, domain.0, domain.1, midpoint, bundle)
}

/// Random instance with slacks set to the exact deficits plus a nonnegative pad,
/// hypothesis-clean by construction. `pad` scales uniform per-entry padding.
pub fn gen_slack(cfg: &GenConfig, family: &FunctionalFamily, pad: f64) -> Result<DiscreteInstance> {
    cfg.validate()?;
    let space = *family.space();
    if space != cfg.space {
        return Err(Error::InvalidConfig("config space differs from family space".into()));
    }
    if !(pad >= 0.0) {
        return Err(Error::InvalidConfig("pad must be >= 0".into()));
    }
    let mut vectors = Vec::with_capacity(cfg.n);
    let mut slacks = Vec::with_capacity(cfg.n);
    for i in 0..cfg.n {
        let mut rng = cfg.stream(i as u64);
        let s = rng.gen_range(cfg.scale.0..=cfg.scale.1);
        let g = gaussian_vector(&space, &mut rng);
        let x = match unit(&space, &g) {
            Ok(u) => u.scale(s),
            Err(_) => Vector::basis(space.dim, 0).scale(s),
        };
        let nx = norm(&space, &x)?;
        let mut row = Vec::with_capacity(family.len());
        for f in family.members() {
            let deficit = (nx - f.re_apply(&x)?).max(0.0);
            let extra: f64 = rng.gen_range(0.0..=1.0);
            row.push(deficit + pad * extra);
        }
        vectors.push(x);
        slacks.push(row);
    }
    DiscreteInstance::new(space, vectors, family.clone(), Hypothesis::Slack(slacks))
}

#[derive(Debug, Clone)]
pub struct SharpnessResult {
    pub best_ratio: f64,
    /// The proven bound for lhs/rhs; exceeding it flags a counterexample.
    pub bound: f64,
    pub witness: DiscreteInstance,
    pub evaluations: u64,
}

/// Parameters of a sharpness probe: the functional family, margins for the
/// multiplicative theorems (additive ones use exact-deficit slacks), and the
/// exponent where the theorem takes one.
#[derive(Debug, Clone)]
pub struct SharpnessParams {
    pub family: FunctionalFamily,
    pub margins: Vec<f64>,
    pub p: Option<PExp>,
    pub n: usize,
    pub seed: u64,
    pub scale: (f64, f64),
}

impl SharpnessParams {
    pub fn new(family: FunctionalFamily, margins: Vec<f64>, n: usize, seed: u64) -> Self {
        SharpnessParams {
            family,
            margins,
            p: None,
            n,
            seed,
            scale: (0.5, 2.0),
        }
    }
}

fn is_margin_theorem(theorem: TheoremId) -> bool {
    matches!(
        theorem,
        TheoremId::DM_SINGLE
            | TheoremId::DM_FAMILY
            | TheoremId::MULT_SUMFUNC
            | TheoremId::MULT_CINF
            | TheoremId::MULT_CP
    )
}

/// Rebuild the hypothesis for a candidate vector set: margins stay fixed, slacks are
/// recomputed as exact deficits (the tightest admissible choice).
fn instance_for(
    theorem: TheoremId,
    family: &FunctionalFamily,
    margins: &[f64],
    vectors: Vec<Vector>,
) -> Result<DiscreteInstance> {
    let space = *family.space();
    if is_margin_theorem(theorem) {
        DiscreteInstance::new(
            space,
            vectors,
            family.clone(),
            Hypothesis::Margin(margins.to_vec()),
        )
    } else {
        let mut slacks = Vec::with_capacity(vectors.len());
        for x in &vectors {
            let nx = norm(&space, x)?;
            let mut row = Vec::with_capacity(family.len());
            for f in family.members() {
                row.push((nx - f.re_apply(x)?).max(0.0));
            }
            slacks.push(row);
        }
        DiscreteInstance::new(space, vectors, family.clone(), Hypothesis::Slack(slacks))
    }
}

/// Multistart coordinate-perturbation hill climb maximising lhs/rhs over
/// hypothesis-satisfying instances. Proposals that leave the margin cone are
/// retracted by blending toward the feasible axis. Budget counts check
/// evaluations; budget 0 reports the seed instance's ratio.
pub fn sharpness_search(
    theorem: TheoremId,
    params: &SharpnessParams,
    budget: u64,
) -> Result<SharpnessResult> {
    if !theorem.is_discrete() {
        return Err(Error::InvalidConfig(format!(
            "{theorem} is not in the discrete theorem enumeration"
        )));
    }
    let family = &params.family;
    let space = *family.space();
    let tol = Tolerance::default();
    let search = SearchConfig::light(params.seed);
    let margin_based = is_margin_theorem(theorem);
    if margin_based && params.margins.len() != family.len() {
        return Err(Error::InvalidConfig(
            "margin count must match the family size".into(),
        ));
    }
    let axis = if margin_based {
        Some(margin_axis(family, &params.margins)?)
    } else {
        None
    };

    let mut evaluations: u64 = 0;
    let evaluate = |vectors: Vec<Vector>| -> Result<Option<(f64, DiscreteInstance)>> {
        let inst = instance_for(theorem, family, &params.margins, vectors)?;
        let res = match run_check(&inst, theorem, params.p, &tol, &search) {
            Ok(r) => r,
            Err(Error::DegenerateInstance(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        if !res.hypothesis_clean() {
            return Ok(None);
        }
        if res.rhs.abs() < 1e-300 {
            return Ok(None);
        }
        Ok(Some((res.lhs / res.rhs, inst)))
    };

    // seed instance
    let cfg = GenConfig {
        seed: params.seed,
        n: params.n,
        space,
        scale: params.scale,
    };
    let seed_inst = if margin_based {
        gen_margin(&cfg, family, &params.margins)?
    } else {
        gen_slack(&cfg, family, 0.0)?
    };
    let mut best = evaluate(seed_inst.vectors.clone())?
        .unwrap_or((0.0, seed_inst.clone()));

    if budget == 0 {
        return Ok(SharpnessResult {
            best_ratio: best.0,
            bound: 1.0,
            witness: best.1,
            evaluations,
        });
    }

    let starts = 8u64.min(budget.max(1));
    let per_start = budget / starts;
    let real_components = space.dim * if space.field == Field::Complex { 2 } else { 1 };
    for start in 0..starts {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0x9e37_79b9_7f4a_7c15);
        rng.set_stream(start);
        let start_cfg = GenConfig {
            seed: params.seed.wrapping_add(start + 1),
            n: params.n,
            space,
            scale: params.scale,
        };
        let start_inst = if margin_based {
            gen_margin(&start_cfg, family, &params.margins)?
        } else {
            gen_slack(&start_cfg, family, 0.0)?
        };
        let mut current = match evaluate(start_inst.vectors.clone())? {
            Some((r, inst)) => {
                evaluations += 1;
                (r, inst)
            }
            None => continue,
        };
        if current.0 > best.0 {
            best = current.clone();
        }
        let mut spent = 1u64;
        while spent < per_start {
            let i = rng.gen_range(0..current.1.vectors.len());
            let coord = rng.gen_range(0..real_components);
            // multi-scale proposals: log-uniform magnitude avoids step-size collapse
            // on ridge-shaped objectives
            let magnitude = 10.0_f64.powf(rng.gen_range(-6.0..0.0));
            let scale = norm(&space, &current.1.vectors[i]).unwrap_or(1.0).max(1e-6);
            let delta = gauss(&mut rng) * magnitude * scale;
            let mut vectors = current.1.vectors.clone();
            let mut entries: Vec<Scalar> = vectors[i].entries().to_vec();
            if space.field == Field::Complex {
                let j = coord / 2;
                if coord % 2 == 1 {
                    entries[j].im += delta;
                } else {
                    entries[j].re += delta;
                }
            } else {
                entries[coord].re += delta;
            }
            let mut cand = match Vector::new(entries) {
                Ok(v) => v,
                Err(_) => {
                    spent += 1;
                    continue;
                }
            };
            if let Some(axis) = &axis {
                cand = retract_to_cone(family, &params.margins, &space, cand, axis);
            }
            vectors[i] = cand;
            spent += 1;
            if let Some((ratio, inst)) = evaluate(vectors)? {
                evaluations += 1;
                if ratio > current.0 {
                    current = (ratio, inst);
                    if current.0 > best.0 {
                        best = current.clone();
                    }
                }
            }
        }
    }

    Ok(SharpnessResult {
        best_ratio: best.0,
        bound: 1.0,
        witness: best.1,
        evaluations,
    })
}

/// Retract an infeasible candidate onto the margin cone: bisect the blend toward
/// the feasible axis for the smallest feasible mix, which keeps retracted points
/// close to the cone boundary where the extremal instances live.
fn retract_to_cone(
    family: &FunctionalFamily,
    margins: &[f64],
    space: &SpaceSpec,
    cand: Vector,
    axis: &Vector,
) -> Vector {
    if margins_hold(family, margins, space, &cand) {
        return cand;
    }
    let scale = norm(space, &cand).unwrap_or(1.0).max(1e-12);
    let blend = |lambda: f64| cand.scale(1.0 - lambda).add(&axis.scale(lambda * scale));
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    if !margins_hold(family, margins, space, &blend(hi)) {
        return axis.scale(scale);
    }
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if margins_hold(family, margins, space, &blend(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    blend(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::check_margin;

    #[test]
    fn gen_margin_respects_margins() {
        // (e = (1,0), r = 0.8, n = 3, seed = 7): all margins clean
        let s = SpaceSpec::euclidean(2);
        let fam = FunctionalFamily::from_directions(s, &[Vector::real(&[1.0, 0.0]).unwrap()])
            .unwrap();
        let cfg = GenConfig::new(7, 3, s);
        let inst = gen_margin(&cfg, &fam, &[0.8]).unwrap();
        assert_eq!(inst.vectors.len(), 3);
        assert!(check_margin(&inst, &Tolerance::default()).unwrap().is_empty());
    }

    #[test]
    fn gen_margin_r1_collapses_to_ray() {
        let s = SpaceSpec::euclidean(2);
        let e = Vector::real(&[1.0, 0.0]).unwrap();
        let fam = FunctionalFamily::from_directions(s, std::slice::from_ref(&e)).unwrap();
        let cfg = GenConfig::new(3, 4, s);
        let inst = gen_margin(&cfg, &fam, &[1.0]).unwrap();
        assert!(check_margin(&inst, &Tolerance::default()).unwrap().is_empty());
        for x in &inst.vectors {
            // r = 1 with a unit direction degenerates the cone to the ray along e,
            // up to the f64 width of the margin comparison
            assert!(x.entry(1).norm() < 1e-6 * x.entry(0).re, "{x:?}");
            assert!(x.entry(0).re > 0.0);
        }
    }

    #[test]
    fn gen_margin_zero_margins_feasible() {
        let s = SpaceSpec::euclidean(3);
        let fam = FunctionalFamily::from_directions(
            s,
            &[Vector::basis(3, 0), Vector::basis(3, 1)],
        )
        .unwrap();
        let cfg = GenConfig::new(9, 5, s);
        let inst = gen_margin(&cfg, &fam, &[0.0, 0.0]).unwrap();
        assert!(check_margin(&inst, &Tolerance::default()).unwrap().is_empty());
    }

    #[test]
    fn gen_margin_deterministic() {
        let s = SpaceSpec::hermitian(3);
        let fam = FunctionalFamily::from_directions(
            s,
            &[Vector::complex(&[(1.0, 0.2), (0.0, 0.0), (0.3, -0.1)]).unwrap()],
        )
        .unwrap();
        let cfg = GenConfig::new(1234, 6, s);
        let a = gen_margin(&cfg, &fam, &[0.5]).unwrap();
        let b = gen_margin(&cfg, &fam, &[0.5]).unwrap();
        for (x, y) in a.vectors.iter().zip(&b.vectors) {
            for (p, q) in x.entries().iter().zip(y.entries()) {
                assert_eq!(p.re.to_bits(), q.re.to_bits());
                assert_eq!(p.im.to_bits(), q.im.to_bits());
            }
        }
    }

    #[test]
    fn gen_ball_examples() {
        let s = SpaceSpec::euclidean(2);
        let e = Vector::real(&[1.0, 0.0]).unwrap();
        let cfg = GenConfig::new(1, 5, s);
        let pts = gen_ball_points(&cfg, std::slice::from_ref(&e), &[0.3]).unwrap();
        for x in &pts {
            assert!(norm(&s, &x.sub(&e)).unwrap() <= 0.3);
        }
        // zero radius pins the points to the center
        let pts = gen_ball_points(&cfg, std::slice::from_ref(&e), &[0.0]).unwrap();
        for x in &pts {
            assert_eq!(x, &e);
        }
        // disjoint balls fail the certificate
        let e2 = Vector::real(&[-1.0, 0.0]).unwrap();
        assert!(matches!(
            gen_ball_points(&cfg, &[e.clone(), e2], &[0.3, 0.3]),
            Err(Error::ConstructionFailure(_))
        ));
    }

    #[test]
    fn gen_band_examples() {
        let s = SpaceSpec::euclidean(2);
        let e = Vector::real(&[1.0, 0.0]).unwrap();
        let cfg = GenConfig::new(2, 4, s);
        let inst = gen_band(&cfg, std::slice::from_ref(&e), &[1.0], &[3.0]).unwrap();
        let center = e.scale(2.0);
        for x in &inst.vectors {
            assert!(norm(&s, &x.sub(&center)).unwrap() <= 1.0 + 1e-12);
        }
        assert!(check_margin(&inst, &Tolerance::default()).unwrap().is_empty());
        // m = M pins x to m·e
        let inst = gen_band(&cfg, std::slice::from_ref(&e), &[2.0], &[2.0]).unwrap();
        for x in &inst.vectors {
            assert!(norm(&s, &x.sub(&e.scale(2.0))).unwrap() < 1e-12);
        }
        assert!(gen_band(&cfg, &[e], &[3.0], &[1.0]).is_err());
    }

    #[test]
    fn ball_path_stays_inside_every_ball() {
        let s = SpaceSpec::euclidean(3);
        let c1 = Vector::real(&[1.0, 0.0, 0.0]).unwrap();
        let c2 = Vector::real(&[1.1, 0.1, 0.0]).unwrap();
        let radii = [0.4, 0.5];
        let cfg = GenConfig::new(77, 1, s);
        let path = gen_ball_path(&cfg, &[c1.clone(), c2.clone()], &radii, (0.0, 2.0)).unwrap();
        for i in 0..=500 {
            let t = 2.0 * i as f64 / 500.0;
            let x = path.eval(t);
            assert!(norm(&s, &x.sub(&c1)).unwrap() <= radii[0] + 1e-12);
            assert!(norm(&s, &x.sub(&c2)).unwrap() <= radii[1] + 1e-12);
        }
        // empty interior rejected
        let far = Vector::real(&[-1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            gen_ball_path(&cfg, &[c1, far], &[0.4, 0.4], (0.0, 1.0)),
            Err(Error::ConstructionFailure(_))
        ));
    }

    #[test]
    fn sharpness_budget_zero_returns_seed_ratio() {
        let s = SpaceSpec::euclidean(2);
        let fam = FunctionalFamily::from_directions(s, &[Vector::real(&[1.0, 0.0]).unwrap()])
            .unwrap();
        let params = SharpnessParams::new(fam, vec![0.6], 2, 11);
        let res = sharpness_search(TheoremId::DM_SINGLE, &params, 0).unwrap();
        assert!(res.best_ratio > 0.0 && res.best_ratio <= 1.0 + 1e-9);
        assert_eq!(res.evaluations, 0);
    }

    #[test]
    fn continuous_ids_rejected() {
        let s = SpaceSpec::euclidean(2);
        let fam = FunctionalFamily::from_directions(s, &[Vector::basis(2, 0)]).unwrap();
        let params = SharpnessParams::new(fam, vec![0.5], 2, 1);
        assert!(sharpness_search(TheoremId::CONT_MULT_SINGLE, &params, 10).is_err());
    }
}
