//! Suite orchestration: the discrete, continuous, complex-scalar, constants, and
//! sharpness suites, assembled into one deterministic report.
//!
//! All randomness derives from the config seed through per-(record, trial) splitmix
//! streams, so identical configs produce identical reports (up to the envelope
//! timestamp) regardless of scheduling.

use std::path::PathBuf;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::continuous::{
    cont_add_family, cont_add_single, cont_add_transformed, cont_mult_family, cont_mult_single,
    cont_mult_transformed, GeoHypothesis, TimeVaryingHypothesis,
};
use crate::discrete::{
    add_family, add_single, dm_single, equality_instance, mult_sumfunc, run_check,
    CheckResult, DiscreteInstance, DmForm, EqualityParams, Hypothesis, TheoremId,
};
use crate::error::{Error, Result};
use crate::functional::{
    family_constant, gram_eigen_constant, sphere_search_constant, Functional, FunctionalFamily,
    SearchConfig,
};
use crate::instances::{
    gaussian_vector, gen_margin, gen_slack, margin_axis, sharpness_search, GenConfig,
    SharpnessParams,
};
use crate::path::{PathFunction, SlackFunction, TrigTerm};
use crate::quadrature::QuadratureSpec;
use crate::report::{Envelope, Report, TheoremRecord, ViolationRecord, WitnessInstance};
use crate::space::{norm, unit, unit_l2, Field, NormKind, PExp, SpaceSpec, Vector};
use crate::tol::Tolerance;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Discrete,
    Continuous,
    ComplexScalars,
    Constants,
    Sharpness,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Discrete,
        Suite::Continuous,
        Suite::ComplexScalars,
        Suite::Constants,
        Suite::Sharpness,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Discrete => "discrete",
            Suite::Continuous => "continuous",
            Suite::ComplexScalars => "complex_scalars",
            Suite::Constants => "constants",
            Suite::Sharpness => "sharpness",
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "discrete" => Ok(Suite::Discrete),
            "continuous" => Ok(Suite::Continuous),
            "complex_scalars" => Ok(Suite::ComplexScalars),
            "constants" => Ok(Suite::Constants),
            "sharpness" => Ok(Suite::Sharpness),
            other => Err(Error::InvalidConfig(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    pub trials: usize,
    pub seed: u64,
    pub tol: Tolerance,
    pub quad: QuadratureSpec,
    pub out: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: Suite::ALL.to_vec(),
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            tol: Tolerance::default(),
            quad: QuadratureSpec::default(),
            out: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be >= 1".into()));
        }
        if !(self.tol.abs > 0.0 && self.tol.rel > 0.0) {
            return Err(Error::InvalidConfig("tolerances must be positive".into()));
        }
        self.quad.validate()
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-(record, trial) seed derivation.
fn trial_seed(seed: u64, record: u64, trial: u64) -> u64 {
    splitmix(splitmix(seed ^ splitmix(record)) ^ trial)
}

fn trial_rng(seed: u64, record: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(seed, record, trial))
}

/// Random functional on the space, optionally normalised to unit operator norm.
fn random_functional(
    space: SpaceSpec,
    rng: &mut ChaCha8Rng,
    unit_norm: bool,
    cluster: Option<&Vector>,
    cluster_weight: f64,
) -> Result<Functional> {
    let mut rep = gaussian_vector(&space, rng);
    if let Some(c) = cluster {
        rep = unit_l2(&rep)?.add(&c.scale(cluster_weight));
    }
    let f = Functional::new(space, rep)?;
    let n = f.op_norm().value;
    if n == 0.0 {
        return Err(Error::ConstructionFailure("zero functional drawn".into()));
    }
    let scale = if unit_norm {
        1.0 / n
    } else {
        rng.gen_range(0.5..2.0) / n
    };
    Functional::new(space, f.representer().scale(scale))
}

/// Family plus feasible margins: retries with growing clustering until the feasible
/// axis has strictly positive functional values, then draws r_k below them.
fn random_margin_setup(
    space: SpaceSpec,
    rng: &mut ChaCha8Rng,
    m: usize,
    unit_norm: bool,
) -> Result<(FunctionalFamily, Vec<f64>)> {
    for attempt in 0..200 {
        let weight = attempt as f64 / 25.0;
        let anchor = unit_l2(&gaussian_vector(&space, rng))?;
        let members = (0..m)
            .map(|k| {
                let cluster = if k == 0 { None } else { Some(&anchor) };
                random_functional(space, rng, unit_norm, cluster, weight)
            })
            .collect::<Result<Vec<_>>>()?;
        let family = FunctionalFamily::new(members)?;
        let zeros = vec![0.0; m];
        let axis = match margin_axis(&family, &zeros) {
            Ok(a) => a,
            Err(_) => continue,
        };
        let floors = family
            .members()
            .iter()
            .map(|f| f.re_apply(&axis))
            .collect::<Result<Vec<_>>>()?;
        if floors.iter().any(|&v| v < 1e-3) {
            continue;
        }
        let margins = floors
            .iter()
            .map(|&v| v * rng.gen_range(0.05..0.95))
            .collect();
        return Ok((family, margins));
    }
    Err(Error::ConstructionFailure(
        "could not draw a feasible margin family".into(),
    ))
}

fn space_for_trial(t: usize) -> SpaceSpec {
    let dims = [2usize, 3, 5];
    let dim = dims[t % 3];
    let field = if (t / 3).is_multiple_of(2) { Field::Real } else { Field::Complex };
    let p = match (t / 6) % 3 {
        0 | 1 => PExp::Finite(2.0),
        _ => PExp::Finite(3.0),
    };
    SpaceSpec::lp(dim, field, p).expect("valid")
}

struct DiscreteVariant {
    theorem: TheoremId,
    p: Option<PExp>,
}

fn discrete_variants() -> Vec<DiscreteVariant> {
    let mut v = vec![
        DiscreteVariant { theorem: TheoremId::DM_SINGLE, p: None },
        DiscreteVariant { theorem: TheoremId::DM_FAMILY, p: None },
        DiscreteVariant { theorem: TheoremId::MULT_SUMFUNC, p: None },
        DiscreteVariant { theorem: TheoremId::MULT_CINF, p: None },
    ];
    for p in [1.0, 2.0, 3.0] {
        v.push(DiscreteVariant {
            theorem: TheoremId::MULT_CP,
            p: Some(PExp::Finite(p)),
        });
    }
    v.push(DiscreteVariant { theorem: TheoremId::ADD_SINGLE, p: None });
    v.push(DiscreteVariant { theorem: TheoremId::ADD_FAMILY, p: None });
    v.push(DiscreteVariant { theorem: TheoremId::ADD_CINF, p: None });
    for p in [1.0, 2.0, 3.0] {
        v.push(DiscreteVariant {
            theorem: TheoremId::ADD_CP,
            p: Some(PExp::Finite(p)),
        });
    }
    v
}

fn needs_unit_norm(theorem: TheoremId) -> bool {
    matches!(
        theorem,
        TheoremId::DM_SINGLE | TheoremId::DM_FAMILY | TheoremId::ADD_SINGLE
    )
}

fn single_functional(theorem: TheoremId) -> bool {
    matches!(theorem, TheoremId::DM_SINGLE | TheoremId::ADD_SINGLE)
}

fn margin_theorem(theorem: TheoremId) -> bool {
    matches!(
        theorem,
        TheoremId::DM_SINGLE
            | TheoremId::DM_FAMILY
            | TheoremId::MULT_SUMFUNC
            | TheoremId::MULT_CINF
            | TheoremId::MULT_CP
    )
}

/// One generated trial of a discrete variant.
fn discrete_trial(
    variant: &DiscreteVariant,
    space: SpaceSpec,
    rng: &mut ChaCha8Rng,
    seed: u64,
    n: usize,
    tol: &Tolerance,
    search: &SearchConfig,
) -> Result<(DiscreteInstance, CheckResult)> {
    let m = if single_functional(variant.theorem) {
        1
    } else {
        1 + (rng.gen_range(0..3) as usize)
    };
    let unit_norm = needs_unit_norm(variant.theorem);
    let sip_form = single_functional(variant.theorem)
        && !space.is_lp2()
        && matches!(space.norm, NormKind::Lp(PExp::Finite(p)) if p > 1.0);

    let (family, sip_direction) = if sip_form {
        // functional induced by the semi-inner product at a unit direction
        let y = unit(&space, &gaussian_vector(&space, rng))?;
        (
            FunctionalFamily::new(vec![Functional::from_sip_direction(space, &y)?])?,
            Some(y),
        )
    } else {
        let (fam, _) = random_margin_setup(space, rng, m, unit_norm)?;
        (fam, None)
    };

    let inst = if margin_theorem(variant.theorem) {
        // feasible margins under the family's axis certificate
        let zeros = vec![0.0; family.len()];
        let axis = margin_axis(&family, &zeros)?;
        let mut margins = Vec::with_capacity(family.len());
        for f in family.members() {
            let floor = f.re_apply(&axis)?;
            if floor <= 0.0 {
                return Err(Error::ConstructionFailure("infeasible axis".into()));
            }
            margins.push(floor * rng.gen_range(0.05..0.95));
        }
        let cfg = GenConfig::new(splitmix(seed), n, space);
        gen_margin(&cfg, &family, &margins)?
    } else {
        let cfg = GenConfig::new(splitmix(seed), n, space);
        gen_slack(&cfg, &family, 0.3)?
    };

    let res = match (&sip_direction, variant.theorem) {
        (Some(y), TheoremId::DM_SINGLE) => {
            dm_single(&inst, &DmForm::Sip { direction: y.clone() }, tol)?
        }
        _ => run_check(&inst, variant.theorem, variant.p, tol, search)?,
    };
    Ok((inst, res))
}

fn equality_for_variant(
    variant: &DiscreteVariant,
    tol: &Tolerance,
    search: &SearchConfig,
) -> Result<Option<CheckResult>> {
    let s2 = SpaceSpec::euclidean(2);
    let basis2 = [Vector::basis(2, 0), Vector::basis(2, 1)];
    let fam2 = FunctionalFamily::from_directions(s2, &basis2)?;
    let single = FunctionalFamily::from_directions(s2, &[Vector::basis(2, 0)])?;
    let build = |theorem, params: &EqualityParams| -> Result<CheckResult> {
        let inst = equality_instance(theorem, params)?;
        run_check(&inst, theorem, params.p, tol, search)
    };
    let res = match variant.theorem {
        TheoremId::DM_SINGLE | TheoremId::ADD_SINGLE => {
            let params = EqualityParams::new(single, vec![1.0]).with_margin(0.6);
            Some(build(variant.theorem, &params)?)
        }
        TheoremId::DM_FAMILY => {
            let params = EqualityParams::new(fam2, vec![1.0, 0.5]);
            Some(build(variant.theorem, &params)?)
        }
        TheoremId::MULT_SUMFUNC | TheoremId::ADD_FAMILY => {
            let params = EqualityParams::new(fam2, vec![std::f64::consts::SQRT_2]);
            Some(build(variant.theorem, &params)?)
        }
        TheoremId::MULT_CINF => {
            let params = EqualityParams::new(fam2, vec![1.0]);
            Some(build(variant.theorem, &params)?)
        }
        TheoremId::MULT_CP => {
            let params = EqualityParams::new(fam2, vec![1.0]).with_p(variant.p.expect("set"));
            Some(build(variant.theorem, &params)?)
        }
        TheoremId::ADD_CINF => {
            let params = EqualityParams::new(single, vec![1.0, 2.0]);
            Some(build(variant.theorem, &params)?)
        }
        TheoremId::ADD_CP => {
            let p = variant.p.expect("set");
            let params = EqualityParams::new(fam2, vec![1.0]).with_p(p);
            match equality_instance(TheoremId::ADD_CP, &params) {
                Ok(inst) => Some(run_check(&inst, TheoremId::ADD_CP, Some(p), tol, search)?),
                // no equality characterisation is attained for p > 2
                Err(Error::ConstructionFailure(_)) => None,
                Err(e) => return Err(e),
            }
        }
        _ => None,
    };
    Ok(res)
}

fn discrete_suite(cfg: &SuiteConfig) -> Result<Vec<TheoremRecord>> {
    let mut records = Vec::new();
    let search = SearchConfig::light(cfg.seed);
    for (vi, variant) in discrete_variants().iter().enumerate() {
        let mut rec = TheoremRecord::new("discrete", variant.theorem.to_string());
        rec.p = variant.p.map(|p| p.to_string());
        for t in 0..cfg.trials {
            let seed = trial_seed(cfg.seed, vi as u64, t as u64);
            let mut rng = trial_rng(cfg.seed, vi as u64, t as u64);
            let space = space_for_trial(t);
            let n = 1 + t % 5;
            let (inst, res) =
                discrete_trial(variant, space, &mut rng, seed, n, &cfg.tol, &search)?;
            let witness = if res.hypothesis_clean() && !res.passed {
                Some(WitnessInstance::from_instance(
                    &inst,
                    variant.theorem,
                    variant.p,
                ))
            } else {
                None
            };
            rec.absorb(t, &res, &cfg.tol, witness);
        }
        if let Some(eq) = equality_for_variant(variant, &cfg.tol, &search)? {
            if !eq.equality.attained || !(eq.equality.conditions.is_empty() || eq.equality.all_conditions_hold()) {
                rec.notes.push(format!(
                    "equality case not attained: gap={:.3e}",
                    eq.equality.gap
                ));
            }
            rec.absorb_equality(&eq);
        } else {
            rec.notes
                .push("no attainable equality characterisation for this variant".into());
        }
        records.push(rec);
    }
    Ok(records)
}

// --- continuous suite -------------------------------------------------------------

struct ContItem {
    label: &'static str,
    run: Box<dyn Fn(&QuadratureSpec, &Tolerance, &SearchConfig) -> Result<CheckResult>>,
}

fn orthogonal_direction(space: &SpaceSpec, e: &Vector) -> Result<Vector> {
    let mut best = (0usize, f64::INFINITY);
    for (j, z) in e.entries().iter().enumerate() {
        if z.norm() < best.1 {
            best = (j, z.norm());
        }
    }
    let b = Vector::basis(space.dim, best.0);
    let ip = crate::space::inner(space, &b, e)?;
    let ne = crate::space::inner(space, e, e)?.re;
    unit_l2(&b.sub(&e.scale_scalar(ip / ne)))
}

/// Catalog battery for one ℓ² space. Margins are derived from analytic enclosures
/// (min of Re F over max of ‖f‖), so the node checks are clean by construction.
fn continuous_items(space: SpaceSpec) -> Result<Vec<ContItem>> {
    let mut items: Vec<ContItem> = Vec::new();
    let e = unit_l2(&Vector::basis(space.dim, 0))?;
    let w = orthogonal_direction(&space, &e)?;
    let func_e = Functional::inner_with(space, &e)?;
    let fam_basis = FunctionalFamily::from_directions(
        space,
        &[Vector::basis(space.dim, 0), Vector::basis(space.dim, 1)],
    )?;

    // constant path along e: multiplicative equality at r = 1
    {
        let (space, e, func_e) = (space, e.clone(), func_e.clone());
        items.push(ContItem {
            label: "constant_aligned",
            run: Box::new(move |q, tol, _s| {
                let f = PathFunction::constant(space, 0.0, 2.5, e.clone())?;
                cont_mult_single(&f, &func_e, 1.0, q, tol)
            }),
        });
    }
    // polynomial drift e + 0.2t·w on [0,1]: exact margin 1/√(1+0.04)
    {
        let (space, e, w, func_e) = (space, e.clone(), w.clone(), func_e.clone());
        items.push(ContItem {
            label: "polynomial_drift",
            run: Box::new(move |q, tol, _s| {
                let f = PathFunction::polynomial(
                    space,
                    0.0,
                    1.0,
                    vec![e.clone(), w.scale(0.2)],
                )?;
                let r = 1.0 / (1.0 + 0.04_f64).sqrt();
                cont_mult_single(&f, &func_e, r, q, tol)
            }),
        });
    }
    // trig wiggle with enclosure margins for the basis family
    {
        let (space, e, w) = (space, e.clone(), w.clone());
        let fam = fam_basis.clone();
        items.push(ContItem {
            label: "trig_family",
            run: Box::new(move |q, tol, s| {
                let base = e.add(&Vector::basis(space.dim, 1)).scale(0.8);
                let f = PathFunction::trig(
                    space,
                    0.0,
                    2.0,
                    base.clone(),
                    vec![TrigTerm {
                        amplitude: w.scale(0.15),
                        omega: 3.0,
                        phase: 0.7,
                    }],
                )?;
                // Re⟨f, e_k⟩ ≥ base_k − 0.15, ‖f‖ ≤ ‖base‖ + 0.15
                let hi = norm(&space, &base)? + 0.15;
                let margins: Vec<f64> = fam
                    .members()
                    .iter()
                    .map(|g| {
                        let lo = g.re_apply(&base).map(|v| (v - 0.15).max(0.0))?;
                        Ok(lo / hi)
                    })
                    .collect::<Result<Vec<_>>>()?;
                cont_mult_family(&f, &fam, &margins, q, tol, None, s)
            }),
        });
    }
    // ratio forms on the same data
    for p in [None, Some(PExp::Finite(2.0)), Some(PExp::Finite(3.0)), Some(PExp::Infinity)] {
        let (space, e) = (space, e.clone());
        let fam = fam_basis.clone();
        let label = match p {
            None => "constant_family",
            Some(PExp::Infinity) => "constant_family_cinf",
            Some(PExp::Finite(pf)) if pf == 2.0 => "constant_family_c2",
            Some(_) => "constant_family_c3",
        };
        items.push(ContItem {
            label,
            run: Box::new(move |q, tol, s| {
                let dir = unit_l2(&e.add(&Vector::basis(space.dim, 1)))?;
                let f = PathFunction::constant(space, 0.0, 1.0, dir.scale(1.3))?;
                let margins: Vec<f64> = fam
                    .members()
                    .iter()
                    .map(|g| g.re_apply(&dir))
                    .collect::<Result<Vec<_>>>()?;
                cont_mult_family(&f, &fam, &margins, q, tol, p, s)
            }),
        });
    }
    // piecewise: constant then polynomial, margins enclosed over both pieces
    {
        let (space, e, w, func_e) = (space, e.clone(), w.clone(), func_e.clone());
        items.push(ContItem {
            label: "piecewise_mixed",
            run: Box::new(move |q, tol, _s| {
                let seg1 = PathFunction::constant(space, 0.0, 1.0, e.clone())?;
                let seg2 = PathFunction::polynomial(
                    space,
                    1.0,
                    2.0,
                    vec![e.clone(), w.scale(0.1)],
                )?;
                let f = PathFunction::piecewise(vec![seg1, seg2])?;
                // on both pieces Re⟨f,e⟩ = 1 and ‖f‖ ≤ √(1 + 0.04)
                let r = 1.0 / (1.0 + 0.04_f64).sqrt();
                cont_mult_single(&f, &func_e, r, q, tol)
            }),
        });
    }
    // ball-transformed: wiggle held inside two balls
    {
        let (space, e, w) = (space, e.clone(), w.clone());
        items.push(ContItem {
            label: "ball_transformed",
            run: Box::new(move |q, tol, s| {
                let base = e.scale(1.05);
                let f = PathFunction::trig(
                    space,
                    0.0,
                    1.5,
                    base,
                    vec![TrigTerm {
                        amplitude: w.scale(0.08),
                        omega: 2.0,
                        phase: 0.0,
                    }],
                )?;
                // ‖f − e‖ ≤ 0.05 + 0.08 < 0.2 < ‖e‖; second center slightly off-axis
                let c2 = e.scale(1.1).add(&w.scale(0.05));
                let hyp = GeoHypothesis::Ball {
                    radii: vec![0.2, 0.3],
                };
                cont_mult_transformed(&f, &[e.clone(), c2], &hyp, q, tol, s)
            }),
        });
    }
    // band-transformed: 2.5·e with a wiggle inside the [1,4] band around e
    {
        let (space, e, w) = (space, e.clone(), w.clone());
        items.push(ContItem {
            label: "band_transformed",
            run: Box::new(move |q, tol, s| {
                let f = PathFunction::trig(
                    space,
                    0.0,
                    2.0,
                    e.scale(2.5),
                    vec![TrigTerm {
                        amplitude: w.scale(0.5),
                        omega: 3.0,
                        phase: 0.4,
                    }],
                )?;
                let hyp = GeoHypothesis::Band {
                    lower: vec![1.0],
                    upper: vec![4.0],
                };
                cont_mult_transformed(&f, std::slice::from_ref(&e), &hyp, q, tol, s)
            }),
        });
    }
    // additive: exact-deficit slack always passes
    {
        let (space, e, w, func_e) = (space, e.clone(), w.clone(), func_e.clone());
        items.push(ContItem {
            label: "add_single_exact_deficit",
            run: Box::new(move |q, tol, _s| {
                let f = PathFunction::trig(
                    space,
                    0.0,
                    2.0,
                    e.scale(1.2),
                    vec![TrigTerm {
                        amplitude: w.scale(0.4),
                        omega: 1.5,
                        phase: 0.2,
                    }],
                )?;
                let fam = FunctionalFamily::new(vec![func_e.clone()])?;
                let k = SlackFunction::exact_deficit(&f, &fam)?;
                cont_add_single(&f, &func_e, &k, q, tol)
            }),
        });
    }
    for p in [None, Some(PExp::Finite(2.0)), Some(PExp::Infinity)] {
        let space = space;
        let fam = fam_basis.clone();
        let e = e.clone();
        let label = match p {
            None => "add_family_exact_deficit",
            Some(PExp::Infinity) => "add_family_cinf",
            Some(_) => "add_family_c2",
        };
        items.push(ContItem {
            label,
            run: Box::new(move |q, tol, s| {
                let dir = unit_l2(&e.add(&Vector::basis(space.dim, 1)).add(&e.scale(0.3)))?;
                let f = PathFunction::polynomial(
                    space,
                    0.0,
                    1.0,
                    vec![dir.scale(1.1), dir.scale(0.4)],
                )?;
                let slack = SlackFunction::exact_deficit(&f, &fam)?;
                cont_add_family(&f, &fam, &slack, q, tol, p, s)
            }),
        });
    }
    // additive ball transform with the tight time-varying radius profile
    {
        let space = space;
        let e = e.clone();
        items.push(ContItem {
            label: "add_ball_tight_radius",
            run: Box::new(move |q, tol, s| {
                if space == SpaceSpec::euclidean(2) {
                    // circular arc with the tight radius profile r(t) = |f(t) − e|
                    let f = PathFunction::circular(
                        space,
                        -std::f64::consts::FRAC_PI_4,
                        std::f64::consts::FRAC_PI_4,
                        1.0,
                    )?;
                    let radii = SlackFunction::single(|t: f64| 2.0 * (t / 2.0).sin().abs());
                    return cont_add_transformed(
                        &f,
                        &[Vector::basis(2, 0)],
                        &TimeVaryingHypothesis::Ball { radii },
                        q,
                        tol,
                        s,
                    );
                }
                // other spaces: a constant path pinned to the center (zero radius)
                let g = PathFunction::constant(space, 0.0, 1.0, e.clone())?;
                let radii = SlackFunction::single(|_t| 0.0);
                cont_add_transformed(
                    &g,
                    std::slice::from_ref(&e),
                    &TimeVaryingHypothesis::Ball { radii },
                    q,
                    tol,
                    s,
                )
            }),
        });
    }
    // additive band transform with time-varying band profiles around a unit center
    {
        let space = space;
        let e = e.clone();
        items.push(ContItem {
            label: "add_band_time_varying",
            run: Box::new(move |q, tol, s| {
                let path_e = e.clone();
                let f = PathFunction::custom(
                    space,
                    0.0,
                    2.0,
                    std::sync::Arc::new(move |t: f64| {
                        path_e.scale(2.5 + (2.0 * t).sin())
                    }),
                )?;
                let lower = SlackFunction::single(|t: f64| 1.0 + 0.2 * t.sin() * t.sin());
                let upper = SlackFunction::single(|t: f64| 4.0 - 0.3 * t.sin() * t.sin());
                cont_add_transformed(
                    &f,
                    std::slice::from_ref(&e),
                    &TimeVaryingHypothesis::Band { lower, upper },
                    q,
                    tol,
                    s,
                )
            }),
        });
    }
    Ok(items)
}

/// Known useful identities: circular arc items on ℝ² and the Karamata arc on ℂ.
fn continuous_special_items() -> Vec<ContItem> {
    let mut items: Vec<ContItem> = Vec::new();
    items.push(ContItem {
        label: "circular_arc_margin",
        run: Box::new(|q, tol, _s| {
            let s2 = SpaceSpec::euclidean(2);
            let f = PathFunction::circular(
                s2,
                -std::f64::consts::FRAC_PI_4,
                std::f64::consts::FRAC_PI_4,
                1.0,
            )?;
            let func = Functional::inner_with(s2, &Vector::basis(2, 0))?;
            cont_mult_single(&f, &func, std::f64::consts::FRAC_PI_4.cos(), q, tol)
        }),
    });
    items.push(ContItem {
        label: "karamata_arc",
        run: Box::new(|q, tol, _s| {
            let cm = SpaceSpec::cmod(PExp::Finite(2.0));
            let f = PathFunction::complex_phase(
                cm,
                -std::f64::consts::FRAC_PI_3,
                std::f64::consts::FRAC_PI_3,
                1.0,
            )?;
            let func = Functional::new(cm, Vector::complex(&[(1.0, 0.0)])?)?;
            cont_mult_single(&f, &func, 0.5, q, tol)
        }),
    });
    items.push(ContItem {
        label: "karamata_additive_arc",
        run: Box::new(|q, tol, _s| {
            let s2 = SpaceSpec::euclidean(2);
            let f = PathFunction::circular(
                s2,
                -std::f64::consts::FRAC_PI_3,
                std::f64::consts::FRAC_PI_3,
                1.0,
            )?;
            let func = Functional::inner_with(s2, &Vector::basis(2, 0))?;
            let k = SlackFunction::single(|t: f64| 1.0 - t.cos());
            cont_add_single(&f, &func, &k, q, tol)
        }),
    });
    items
}

fn continuous_suite(cfg: &SuiteConfig) -> Result<Vec<TheoremRecord>> {
    let search = SearchConfig::light(cfg.seed);
    let spaces = [
        SpaceSpec::euclidean(2),
        SpaceSpec::euclidean(3),
        SpaceSpec::hermitian(2),
    ];
    let mut by_theorem: std::collections::BTreeMap<String, TheoremRecord> =
        std::collections::BTreeMap::new();
    let mut run_item = |item: &ContItem, trial: usize| -> Result<()> {
        let res = (item.run)(&cfg.quad, &cfg.tol, &search)?;
        let finer = QuadratureSpec {
            panels: cfg.quad.panels * 2,
            ..cfg.quad
        };
        let res2 = (item.run)(&finer, &cfg.tol, &search)?;
        let delta = (res.lhs - res2.lhs).abs().max((res.rhs - res2.rhs).abs());
        let rec = by_theorem
            .entry(res.theorem.to_string())
            .or_insert_with(|| TheoremRecord::new("continuous", res.theorem.to_string()));
        rec.absorb(trial, &res, &cfg.tol, None);
        let note = format!(
            "{}:nodes={} worst_margin={:+.3e} refinement_delta={:.3e}",
            item.label,
            res.nodes.unwrap_or(0),
            res.worst_margin.unwrap_or(f64::NEG_INFINITY),
            delta
        );
        rec.notes.push(note);
        if !res.hypothesis_clean() {
            rec.notes
                .push(format!("{}:hypothesis_violations={}", item.label, res.violations.len()));
        }
        Ok(())
    };

    let mut trial = 0usize;
    for space in spaces {
        for item in continuous_items(space)? {
            run_item(&item, trial)?;
            trial += 1;
        }
    }
    for item in continuous_special_items() {
        run_item(&item, trial)?;
        trial += 1;
    }

    // equality cases certified through quadrature
    {
        let s2 = SpaceSpec::euclidean(2);
        let fam = FunctionalFamily::from_directions(
            s2,
            &[Vector::basis(2, 0), Vector::basis(2, 1)],
        )?;
        let dir = unit_l2(&Vector::real(&[1.0, 1.0])?)?;
        let f = PathFunction::constant(s2, 0.0, 1.0, dir.scale(std::f64::consts::SQRT_2))?;
        let margins: Vec<f64> = fam
            .members()
            .iter()
            .map(|g| g.re_apply(&dir))
            .collect::<Result<Vec<_>>>()?;
        let res = cont_mult_family(&f, &fam, &margins, &cfg.quad, &cfg.tol, None, &search)?;
        by_theorem
            .entry(res.theorem.to_string())
            .or_insert_with(|| TheoremRecord::new("continuous", res.theorem.to_string()))
            .absorb_equality(&res);

        let slack = SlackFunction::exact_deficit(&f, &fam)?;
        let res = cont_add_family(&f, &fam, &slack, &cfg.quad, &cfg.tol, None, &search)?;
        by_theorem
            .entry(res.theorem.to_string())
            .or_insert_with(|| TheoremRecord::new("continuous", res.theorem.to_string()))
            .absorb_equality(&res);

        let func = Functional::inner_with(s2, &Vector::basis(2, 0))?;
        let arc = PathFunction::circular(
            s2,
            -std::f64::consts::FRAC_PI_3,
            std::f64::consts::FRAC_PI_3,
            1.0,
        )?;
        let k = SlackFunction::single(|t: f64| 1.0 - t.cos());
        let res = cont_add_single(&arc, &func, &k, &cfg.quad, &cfg.tol)?;
        by_theorem
            .entry(res.theorem.to_string())
            .or_insert_with(|| TheoremRecord::new("continuous", res.theorem.to_string()))
            .absorb_equality(&res);

        let cst = PathFunction::constant(s2, 0.0, 2.0, Vector::basis(2, 0))?;
        let res = cont_mult_single(&cst, &func, 1.0, &cfg.quad, &cfg.tol)?;
        by_theorem
            .entry(res.theorem.to_string())
            .or_insert_with(|| TheoremRecord::new("continuous", res.theorem.to_string()))
            .absorb_equality(&res);
    }

    let mut records: Vec<TheoremRecord> = by_theorem.into_values().collect();
    records.push(piecewise_consistency_record(cfg)?);
    Ok(records)
}

/// Criterion: piecewise-constant paths reproduce the discrete lhs/rhs.
fn piecewise_consistency_record(cfg: &SuiteConfig) -> Result<TheoremRecord> {
    let mut rec = TheoremRecord::new("continuous", "PIECEWISE_CONSISTENCY");
    let search = SearchConfig::light(cfg.seed);
    let mut max_diff = 0.0_f64;
    let trials = 50usize;
    for t in 0..trials {
        let mut rng = trial_rng(cfg.seed, 0x7070, t as u64);
        let dim = 2 + t % 3;
        let field = if t % 2 == 0 { Field::Real } else { Field::Complex };
        let space = SpaceSpec::lp(dim, field, PExp::Finite(2.0))?;
        let n = 1 + t % 4;
        let kind = t % 4;
        let seed = trial_seed(cfg.seed, 0x7071, t as u64);
        let (inst, disc, cont): (DiscreteInstance, CheckResult, CheckResult) = match kind {
            0 | 1 => {
                let m = 1 + t % 2;
                let (family, margins) = random_margin_setup(space, &mut rng, m, kind == 0)?;
                let gen = GenConfig::new(seed, n, space);
                let inst = gen_margin(&gen, &family, &margins)?;
                let path = PathFunction::piecewise_constant(space, &inst.vectors)?;
                if kind == 0 && m == 1 {
                    let disc = dm_single(&inst, &DmForm::Norm, &cfg.tol)?;
                    let func = inst.family.members()[0].clone();
                    let cont = cont_mult_single(&path, &func, margins[0], &cfg.quad, &cfg.tol)?;
                    (inst, disc, cont)
                } else {
                    let disc = mult_sumfunc(&inst, &cfg.tol)?;
                    let cont = cont_mult_family(
                        &path, &family, &margins, &cfg.quad, &cfg.tol, None, &search,
                    )?;
                    (inst, disc, cont)
                }
            }
            2 => {
                let (family, _) = random_margin_setup(space, &mut rng, 1, true)?;
                let gen = GenConfig::new(seed, n, space);
                let inst = gen_slack(&gen, &family, 0.2)?;
                let disc = add_single(&inst, &cfg.tol)?;
                let path = PathFunction::piecewise_constant(space, &inst.vectors)?;
                let slacks = match &inst.hypothesis {
                    Hypothesis::Slack(m) => m.clone(),
                    _ => unreachable!(),
                };
                let k = SlackFunction::single(move |t: f64| {
                    let i = (t.floor() as usize).min(slacks.len() - 1);
                    slacks[i][0]
                });
                let func = inst.family.members()[0].clone();
                let cont = cont_add_single(&path, &func, &k, &cfg.quad, &cfg.tol)?;
                (inst, disc, cont)
            }
            _ => {
                let m = 1 + t % 3;
                let (family, _) = random_margin_setup(space, &mut rng, m, false)?;
                let gen = GenConfig::new(seed, n, space);
                let inst = gen_slack(&gen, &family, 0.4)?;
                let disc = add_family(&inst, &cfg.tol)?;
                let path = PathFunction::piecewise_constant(space, &inst.vectors)?;
                let slacks = match &inst.hypothesis {
                    Hypothesis::Slack(mm) => mm.clone(),
                    _ => unreachable!(),
                };
                let mut fns: Vec<std::sync::Arc<dyn Fn(f64) -> f64 + Send + Sync>> = Vec::new();
                for k in 0..m {
                    let slacks = slacks.clone();
                    fns.push(std::sync::Arc::new(move |t: f64| {
                        let i = (t.floor() as usize).min(slacks.len() - 1);
                        slacks[i][k]
                    }));
                }
                let slack = SlackFunction::new(fns)?;
                let cont =
                    cont_add_family(&path, &family, &slack, &cfg.quad, &cfg.tol, None, &search)?;
                (inst, disc, cont)
            }
        };
        let scale = disc.lhs.abs().max(disc.rhs.abs()).max(1.0);
        let diff = ((disc.lhs - cont.lhs).abs()).max((disc.rhs - cont.rhs).abs()) / scale;
        max_diff = max_diff.max(diff);
        rec.trials += 1;
        if diff > 1e-12 {
            rec.violations.push(ViolationRecord {
                trial: t,
                lhs: disc.lhs,
                rhs: cont.lhs,
                witness: Some(WitnessInstance::from_instance(&inst, disc.theorem, None)),
                note: Some(format!("discrete/continuous relative gap {diff:.3e}")),
            });
        }
    }
    rec.max_violation = max_diff - 1e-12;
    rec.notes.push(format!("max_relative_gap={max_diff:.3e}"));
    Ok(rec)
}

// --- complex scalar suite ----------------------------------------------------------

fn cmod_spaces() -> Vec<SpaceSpec> {
    vec![
        SpaceSpec::cmod(PExp::Finite(1.0)),
        SpaceSpec::cmod(PExp::Finite(2.0)),
        SpaceSpec::cmod(PExp::Finite(4.0)),
        SpaceSpec::cmod(PExp::Infinity),
    ]
}

fn space_label(space: &SpaceSpec) -> String {
    match space.norm {
        NormKind::Lp(p) => format!("lp({p})"),
        NormKind::CMod(p) => format!("cmod({p})"),
    }
}

/// Unit-norm multiplier on a p-modulus space: |a| = 1/(norm multiplier).
fn unit_cmod_functional(space: SpaceSpec, phase: f64) -> Result<Functional> {
    let probe = Functional::new(space, Vector::complex(&[(phase.cos(), phase.sin())])?)?;
    let n = probe.op_norm().value;
    Functional::new(space, probe.representer().scale(1.0 / n))
}

/// Arc margin for F on an arc of half-angle θ: the ratio Re F(e^{it})/|e^{it}|_q is
/// even and minimal at the endpoints for θ ≤ π/4 (checked by test), so the endpoint
/// value is a sound pointwise margin.
fn arc_margin(space: &SpaceSpec, func: &Functional, theta: f64) -> Result<f64> {
    let z = Vector::complex(&[(theta.cos(), theta.sin())])?;
    let re = func.re_apply(&z)?;
    let nz = norm(space, &z)?;
    Ok((re / nz).max(0.0))
}

fn complex_scalar_suite(cfg: &SuiteConfig) -> Result<Vec<TheoremRecord>> {
    let mut records = Vec::new();
    for (si, space) in cmod_spaces().into_iter().enumerate() {
        let label = space_label(&space);

        // sector margins, single unit-norm functional (the cos θ reverse when q = 2):
        // Re F(z) = |a|·s·cos ψ on the sector, and |z|_q ≤ s·max_α|e^{iα}|_q, so
        // r = |a|·cos θ / max_α|e^{iα}|_q is sound for every multiplier phase
        let phase_cap = match space.norm {
            NormKind::CMod(PExp::Finite(q)) if q < 2.0 => 2.0_f64.powf(1.0 / q - 0.5),
            _ => 1.0,
        };
        let mut rec = TheoremRecord::new("complex_scalars", "DM_SINGLE");
        rec.space = Some(label.clone());
        for t in 0..cfg.trials {
            let mut rng = trial_rng(cfg.seed, (0x100 + si) as u64, t as u64);
            let theta: f64 = rng.gen_range(0.05..std::f64::consts::FRAC_PI_4);
            let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let func = unit_cmod_functional(space, phase)?;
            let abs_a = func.representer().entry(0).norm();
            let r = abs_a * theta.cos() / phase_cap;
            // vectors on the feasible arc: conj(phase direction)·e^{iψ}, |ψ| ≤ θ
            let n = 1 + t % 4;
            let a = func.representer().entry(0);
            let dir = (a / a.norm()).conj();
            let vectors: Vec<Vector> = (0..n)
                .map(|_| {
                    let psi: f64 = rng.gen_range(-theta..=theta);
                    let s: f64 = rng.gen_range(0.5..2.0);
                    let z = dir * crate::space::Scalar::new(psi.cos(), psi.sin()) * s;
                    Vector::new(vec![z])
                })
                .collect::<Result<Vec<_>>>()?;
            let fam = FunctionalFamily::new(vec![func.clone()])?;
            let inst = DiscreteInstance::new(space, vectors, fam, Hypothesis::Margin(vec![r]))?;
            let res = dm_single(&inst, &DmForm::Norm, &cfg.tol)?;
            let witness = (!res.passed && res.hypothesis_clean())
                .then(|| WitnessInstance::from_instance(&inst, TheoremId::DM_SINGLE, None));
            rec.absorb(t, &res, &cfg.tol, witness);
        }
        // the mirrored-pair equality case on the usual modulus
        if matches!(space.norm, NormKind::CMod(PExp::Finite(p)) if p == 2.0) {
            let func = unit_cmod_functional(space, 0.0)?;
            let fam = FunctionalFamily::new(vec![func])?;
            let params = EqualityParams::new(fam, vec![1.0]).with_margin(0.5);
            let inst = equality_instance(TheoremId::DM_SINGLE, &params)?;
            let res = dm_single(&inst, &DmForm::Norm, &cfg.tol)?;
            rec.absorb_equality(&res);
        }
        records.push(rec);

        // sum-functional multiplicative reverse with several multipliers
        let mut rec = TheoremRecord::new("complex_scalars", "MULT_SUMFUNC");
        rec.space = Some(label.clone());
        for t in 0..cfg.trials {
            let mut rng = trial_rng(cfg.seed, (0x200 + si) as u64, t as u64);
            let m = 1 + t % 3;
            let setup = random_margin_setup(space, &mut rng, m, false)?;
            let gen = GenConfig::new(trial_seed(cfg.seed, (0x201 + si) as u64, t as u64), 1 + t % 4, space);
            let inst = gen_margin(&gen, &setup.0, &setup.1)?;
            let res = mult_sumfunc(&inst, &cfg.tol)?;
            let witness = (!res.passed && res.hypothesis_clean())
                .then(|| WitnessInstance::from_instance(&inst, TheoremId::MULT_SUMFUNC, None));
            rec.absorb(t, &res, &cfg.tol, witness);
        }
        records.push(rec);

        // additive reverse with the slack matrix
        let mut rec = TheoremRecord::new("complex_scalars", "ADD_FAMILY");
        rec.space = Some(label.clone());
        for t in 0..cfg.trials {
            let mut rng = trial_rng(cfg.seed, (0x300 + si) as u64, t as u64);
            let m = 1 + t % 3;
            let members = (0..m)
                .map(|_| random_functional(space, &mut rng, false, None, 0.0))
                .collect::<Result<Vec<_>>>()?;
            let family = FunctionalFamily::new(members)?;
            let gen = GenConfig::new(trial_seed(cfg.seed, (0x301 + si) as u64, t as u64), 1 + t % 4, space);
            let inst = gen_slack(&gen, &family, 0.3)?;
            let res = add_family(&inst, &cfg.tol)?;
            let witness = (!res.passed && res.hypothesis_clean())
                .then(|| WitnessInstance::from_instance(&inst, TheoremId::ADD_FAMILY, None));
            rec.absorb(t, &res, &cfg.tol, witness);
        }
        records.push(rec);

        // continuous: arcs under the p-modulus norms
        let mut rec = TheoremRecord::new("complex_scalars", "CONT_MULT_SINGLE");
        rec.space = Some(label.clone());
        let arcs = 1 + cfg.trials / 40;
        for t in 0..arcs {
            let mut rng = trial_rng(cfg.seed, (0x400 + si) as u64, t as u64);
            let theta: f64 = rng.gen_range(0.2..std::f64::consts::FRAC_PI_4);
            let func = unit_cmod_functional(space, 0.0)?;
            let r = arc_margin(&space, &func, theta)?;
            let f = PathFunction::complex_phase(space, -theta, theta, 1.0)?;
            let res = cont_mult_single(&f, &func, r, &cfg.quad, &cfg.tol)?;
            rec.absorb(t, &res, &cfg.tol, None);
        }
        records.push(rec);

        let mut rec = TheoremRecord::new("complex_scalars", "CONT_ADD_SINGLE");
        rec.space = Some(label.clone());
        for t in 0..arcs {
            let mut rng = trial_rng(cfg.seed, (0x500 + si) as u64, t as u64);
            let theta: f64 = rng.gen_range(0.2..std::f64::consts::FRAC_PI_4);
            let func = unit_cmod_functional(space, 0.0)?;
            let f = PathFunction::complex_phase(space, -theta, theta, 1.0)?;
            let fam = FunctionalFamily::new(vec![func.clone()])?;
            let k = SlackFunction::exact_deficit(&f, &fam)?;
            let res = cont_add_single(&f, &func, &k, &cfg.quad, &cfg.tol)?;
            rec.absorb(t, &res, &cfg.tol, None);
        }
        // additive arc equality on the usual modulus (1 − cos slack)
        if matches!(space.norm, NormKind::CMod(PExp::Finite(p)) if p == 2.0) {
            let func = unit_cmod_functional(space, 0.0)?;
            let f = PathFunction::complex_phase(
                space,
                -std::f64::consts::FRAC_PI_3,
                std::f64::consts::FRAC_PI_3,
                1.0,
            )?;
            let k = SlackFunction::single(|t: f64| 1.0 - t.cos());
            let res = cont_add_single(&f, &func, &k, &cfg.quad, &cfg.tol)?;
            rec.absorb_equality(&res);
        }
        records.push(rec);
    }
    Ok(records)
}

// --- constants suite ----------------------------------------------------------------

fn constants_suite(cfg: &SuiteConfig) -> Result<Vec<TheoremRecord>> {
    let mut agreement = TheoremRecord::new("constants", "C2_AGREEMENT");
    let mut caps = TheoremRecord::new("constants", "CP_CAPS");
    let mut range = TheoremRecord::new("constants", "UNIT_NORM_RANGE");
    let mut max_rel_gap = 0.0_f64;
    let mut max_cap_excess = f64::MIN;
    let mut max_range_excess = f64::MIN;
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, 0xC0, t as u64);
        let dim = 1 + t % 8;
        let m = 1 + (t / 8) % 8;
        let field = if t % 2 == 0 { Field::Real } else { Field::Complex };
        let space = SpaceSpec::lp(dim, field, PExp::Finite(2.0))?;
        let members = (0..m)
            .map(|_| random_functional(space, &mut rng, false, None, 0.0))
            .collect::<Result<Vec<_>>>()?;
        let family = FunctionalFamily::new(members)?;

        let g = gram_eigen_constant(&family)?;
        let s = sphere_search_constant(
            &family,
            PExp::Finite(2.0),
            &SearchConfig::with_seed(trial_seed(cfg.seed, 0xC1, t as u64)),
            &[],
        )?;
        let rel = (g.value - s.value).abs() / g.value.max(1e-12);
        max_rel_gap = max_rel_gap.max(rel);
        agreement.trials += 1;
        if rel > 1e-6 {
            agreement.violations.push(ViolationRecord {
                trial: t,
                lhs: s.value,
                rhs: g.value,
                witness: None,
                note: Some(format!("relative disagreement {rel:.3e}")),
            });
        }

        for p in [PExp::Finite(1.0), PExp::Finite(2.0), PExp::Finite(3.0), PExp::Infinity] {
            let est = family_constant(
                &family,
                p,
                &SearchConfig::light(trial_seed(cfg.seed, 0xC2, t as u64)),
                &[],
            )?;
            let cap = family.constant_cap(p);
            let excess = est.value - cap - 1e-9;
            max_cap_excess = max_cap_excess.max(excess);
            caps.trials += 1;
            if excess > 0.0 {
                caps.violations.push(ViolationRecord {
                    trial: t,
                    lhs: est.value,
                    rhs: cap,
                    witness: None,
                    note: Some(format!("cap exceeded at p={p}")),
                });
            }
        }

        // unit-norm family: 1 ≤ c = c₂² ≤ m
        let unit_members = family
            .members()
            .iter()
            .map(|f| {
                let n = f.op_norm().value;
                Functional::new(space, f.representer().scale(1.0 / n))
            })
            .collect::<Result<Vec<_>>>()?;
        let unit_family = FunctionalFamily::new(unit_members)?;
        let c = gram_eigen_constant(&unit_family)?.value.powi(2);
        let excess = (1.0 - c - 1e-9).max(c - m as f64 - 1e-9);
        max_range_excess = max_range_excess.max(excess);
        range.trials += 1;
        if excess > 0.0 {
            range.violations.push(ViolationRecord {
                trial: t,
                lhs: c,
                rhs: m as f64,
                witness: None,
                note: Some("c outside [1, m]".into()),
            });
        }
    }
    agreement.max_violation = max_rel_gap - 1e-6;
    agreement
        .notes
        .push(format!("max_relative_gap={max_rel_gap:.3e}"));
    caps.max_violation = max_cap_excess;
    range.max_violation = max_range_excess;
    Ok(vec![agreement, caps, range])
}

// --- sharpness suite ----------------------------------------------------------------

/// Default probe parameters for the CLI and the sharpness suite.
pub fn default_sharpness_params(theorem: TheoremId, seed: u64) -> Result<SharpnessParams> {
    let s2 = SpaceSpec::euclidean(2);
    let e1 = Vector::basis(2, 0);
    let e2 = Vector::basis(2, 1);
    let single = FunctionalFamily::from_directions(s2, std::slice::from_ref(&e1))?;
    let pair = FunctionalFamily::from_directions(s2, &[e1, e2])?;
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let params = match theorem {
        TheoremId::DM_SINGLE => SharpnessParams::new(single, vec![0.6], 2, seed),
        // uniform margins 1/√2 pin the feasible cone to the diagonal ray, where the
        // family bound is attained; smaller uniform margins leave it unattainable
        TheoremId::DM_FAMILY => {
            SharpnessParams::new(pair, vec![inv_sqrt2, inv_sqrt2], 2, seed)
        }
        TheoremId::MULT_SUMFUNC => {
            SharpnessParams::new(pair, vec![inv_sqrt2, inv_sqrt2], 2, seed)
        }
        // the sup-form bound attains equality along a single center's direction
        TheoremId::MULT_CINF => SharpnessParams::new(single, vec![0.8], 2, seed),
        TheoremId::MULT_CP => {
            let mut p = SharpnessParams::new(pair, vec![inv_sqrt2, inv_sqrt2], 2, seed);
            p.p = Some(PExp::Finite(2.0));
            p
        }
        TheoremId::ADD_SINGLE => SharpnessParams::new(single, vec![], 2, seed),
        TheoremId::ADD_FAMILY => SharpnessParams::new(pair, vec![], 2, seed),
        TheoremId::ADD_CINF => SharpnessParams::new(single, vec![], 2, seed),
        TheoremId::ADD_CP => {
            let mut p = SharpnessParams::new(pair, vec![], 2, seed);
            p.p = Some(PExp::Finite(2.0));
            p
        }
        other => {
            return Err(Error::InvalidConfig(format!(
                "{other} is not a discrete theorem"
            )))
        }
    };
    Ok(params)
}

fn sharpness_suite(cfg: &SuiteConfig) -> Result<Vec<TheoremRecord>> {
    let budget = 10_000u64;
    let mut records = Vec::new();
    for theorem in [TheoremId::MULT_SUMFUNC, TheoremId::DM_SINGLE] {
        let params = default_sharpness_params(theorem, cfg.seed)?;
        let res = sharpness_search(theorem, &params, budget)?;
        let mut rec = TheoremRecord::new("sharpness", theorem.to_string());
        rec.trials = 1;
        rec.max_violation = res.best_ratio - res.bound - cfg.tol.slack(res.best_ratio, res.bound);
        rec.equality_max_gap = (res.bound - res.best_ratio).max(0.0);
        rec.notes.push(format!(
            "best_ratio={:.12} bound={} evaluations={}",
            res.best_ratio, res.bound, res.evaluations
        ));
        if rec.max_violation > 0.0 {
            // a genuine counterexample: serialise the witness and fail the suite
            rec.violations.push(ViolationRecord {
                trial: 0,
                lhs: res.best_ratio,
                rhs: res.bound,
                witness: Some(WitnessInstance::from_instance(
                    &res.witness,
                    theorem,
                    params.p,
                )),
                note: Some("bound exceeded".into()),
            });
        }
        records.push(rec);
    }
    Ok(records)
}

// --- entry points --------------------------------------------------------------------

pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let mut records = Vec::new();
    for suite in &cfg.suites {
        let mut batch = match suite {
            Suite::Discrete => discrete_suite(cfg)?,
            Suite::Continuous => continuous_suite(cfg)?,
            Suite::ComplexScalars => complex_scalar_suite(cfg)?,
            Suite::Constants => constants_suite(cfg)?,
            Suite::Sharpness => sharpness_suite(cfg)?,
        };
        records.append(&mut batch);
    }
    let envelope = Envelope {
        tool: "trirev".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        timestamp_unix: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        seed: cfg.seed,
        trials: cfg.trials,
        tol_abs: cfg.tol.abs,
        tol_rel: cfg.tol.rel,
        suites: cfg.suites.iter().map(|s| s.to_string()).collect(),
    };
    Ok(Report::assemble(envelope, records))
}

/// One-shot estimate for the `constants` CLI subcommand.
pub fn constants_report(
    space: SpaceSpec,
    p: PExp,
    members: usize,
    search: &SearchConfig,
) -> Result<serde_json::Value> {
    if members == 0 {
        return Err(Error::InvalidConfig("need at least one functional".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let fams = (0..members)
        .map(|_| random_functional(space, &mut rng, false, None, 0.0))
        .collect::<Result<Vec<_>>>()?;
    let family = FunctionalFamily::new(fams)?;
    let est = family_constant(&family, p, search, &[])?;
    let cap = family.constant_cap(p);
    let mut doc = serde_json::json!({
        "space": space_label(&space),
        "dim": space.dim,
        "members": members,
        "p": p.to_string(),
        "seed": search.seed,
        "estimate": est.value,
        "method": est.method,
        "cap": cap,
        "certificate": est.certificate.entries().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
    });
    if space.is_lp2() && matches!(p, PExp::Finite(pf) if pf == 2.0) {
        let sphere = sphere_search_constant(&family, p, search, &[])?;
        doc["sphere_search"] = serde_json::json!(sphere.value);
        doc["agreement_rel"] = serde_json::json!(
            (est.value - sphere.value).abs() / est.value.max(1e-12)
        );
    }
    Ok(doc)
}

/// One-shot probe for the `sharpness` CLI subcommand. Returns the JSON document and
/// whether the bound was exceeded.
pub fn sharpness_report(
    theorem: TheoremId,
    budget: u64,
    seed: u64,
) -> Result<(serde_json::Value, bool)> {
    let params = default_sharpness_params(theorem, seed)?;
    let res = sharpness_search(theorem, &params, budget)?;
    let tol = Tolerance::default();
    let exceeded = res.best_ratio > res.bound + tol.slack(res.best_ratio, res.bound);
    let witness = WitnessInstance::from_instance(&res.witness, theorem, params.p);
    let doc = serde_json::json!({
        "theorem": theorem.to_string(),
        "budget": budget,
        "seed": seed,
        "best_ratio": res.best_ratio,
        "bound": res.bound,
        "evaluations": res.evaluations,
        "bound_exceeded": exceeded,
        "witness": witness,
    });
    Ok((doc, exceeded))
}
