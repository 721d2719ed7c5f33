//! Continuous linear functionals, operator norms, and the family sup-constants.
//!
//! A functional is stored through its representer r: F(x) = Σ_j r_j·x_j, linear
//! (not sesquilinear) in x. On ℓ^p spaces the operator norm is the Hölder-dual norm
//! ‖r‖_q, 1/p + 1/q = 1; on the p-modulus spaces F(z) = a·z and
//!
//!   ‖F‖_1 = |a|,   ‖F‖_∞ = √2·|a|,   ‖F‖_q = 2^{1/2−1/q}·|a|  (q ≥ 2),
//!
//! all with explicit maximising certificates.
//!
//! For a family F_1,…,F_m the constants
//!
//!   c_p = sup_{x≠0} [Σ_k |F_k(x)|^p / ‖x‖^p]^{1/p},   c_∞ = sup_{x≠0} max_k |F_k(x)|/‖x‖
//!
//! are estimated from below with a certificate: exactly (power iteration on the
//! representer Gram matrix) when the space is ℓ² and p = 2, otherwise by multistart
//! projected ascent over the unit sphere of the space's norm. Estimates never exceed
//! the analytic caps (Σ‖F_k‖^p)^{1/p} resp. max_k ‖F_k‖.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::space::{aggregate, norm, sip_representer, unit, Field, NormKind, PExp, Scalar, SpaceSpec, Vector};
use crate::tol::Tolerance;

#[derive(Debug, Clone, PartialEq)]
pub struct Functional {
    space: SpaceSpec,
    representer: Vector,
}

impl Functional {
    pub fn new(space: SpaceSpec, representer: Vector) -> Result<Self> {
        space.check_dim(&representer)?;
        if space.field == Field::Real
            && representer.entries().iter().any(|z| z.im != 0.0) {
                return Err(Error::InvalidConfig(
                    "real-field functional has complex representer".into(),
                ));
            }
        Ok(Functional { space, representer })
    }

    /// The Hilbert functional ⟨·, e⟩ on an ℓ² space (representer = conj(e)).
    pub fn inner_with(space: SpaceSpec, e: &Vector) -> Result<Self> {
        if !space.is_lp2() {
            return Err(Error::UnsupportedStructure(
                "inner-product functionals require lp(2)".into(),
            ));
        }
        Functional::new(space, e.conj())
    }

    /// The functional [·, y] induced by the semi-inner product on lp(p), 1 < p < ∞.
    /// Its operator norm is ‖y‖.
    pub fn from_sip_direction(space: SpaceSpec, y: &Vector) -> Result<Self> {
        Functional::new(space, sip_representer(&space, y)?)
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn representer(&self) -> &Vector {
        &self.representer
    }

    /// Direction e with F = ⟨·, e⟩, valid on ℓ² spaces.
    pub fn hilbert_direction(&self) -> Vector {
        self.representer.conj()
    }

    pub fn apply(&self, x: &Vector) -> Result<Scalar> {
        self.space.check_dim(x)?;
        Ok(self
            .representer
            .entries()
            .iter()
            .zip(x.entries())
            .map(|(r, xj)| r * xj)
            .sum())
    }

    pub fn re_apply(&self, x: &Vector) -> Result<f64> {
        Ok(self.apply(x)?.re)
    }

    /// Operator norm with a maximising certificate (closed form).
    pub fn op_norm(&self) -> ConstantEstimate {
        match self.space.norm {
            NormKind::Lp(p) => self.op_norm_lp(p),
            NormKind::CMod(p) => self.op_norm_cmod(p),
        }
    }

    fn op_norm_lp(&self, p: PExp) -> ConstantEstimate {
        let moduli: Vec<f64> = self.representer.entries().iter().map(|z| z.norm()).collect();
        if moduli.iter().all(|&m| m == 0.0) {
            return ConstantEstimate {
                value: 0.0,
                method: EstimateMethod::ClosedForm,
                certificate: Vector::basis(self.space.dim, 0),
            };
        }
        let q = dual_exponent(p);
        let value = aggregate(moduli.iter().copied(), q);
        let dim = self.space.dim;
        let certificate = match p {
            // q = ∞: put unit mass on the largest representer entry, phase-aligned
            PExp::Finite(pf) if pf == 1.0 => {
                let (jmax, _) = moduli
                    .iter()
                    .enumerate()
                    .fold((0, -1.0), |(bj, bm), (j, &m)| if m > bm { (j, m) } else { (bj, bm) });
                let mut entries = vec![Scalar::new(0.0, 0.0); dim];
                entries[jmax] = self.representer.entry(jmax).conj() / moduli[jmax];
                Vector::new(entries).expect("finite")
            }
            // q = 1: align the phase of every entry
            PExp::Infinity => {
                let entries = self
                    .representer
                    .entries()
                    .iter()
                    .map(|r| {
                        let m = r.norm();
                        if m > 0.0 {
                            r.conj() / m
                        } else {
                            Scalar::new(1.0, 0.0)
                        }
                    })
                    .collect();
                Vector::new(entries).expect("finite")
            }
            // 1 < p < ∞: x_j ∝ conj(r_j)·|r_j|^{q−2}, normalised in ℓ^p
            PExp::Finite(_) => {
                let qf = match q {
                    PExp::Finite(qf) => qf,
                    PExp::Infinity => unreachable!("p = 1 handled above"),
                };
                let entries: Vec<Scalar> = self
                    .representer
                    .entries()
                    .iter()
                    .zip(&moduli)
                    .map(|(r, &m)| {
                        if m > 0.0 {
                            r.conj() * m.powf(qf - 2.0) / value.powf(qf - 1.0)
                        } else {
                            Scalar::new(0.0, 0.0)
                        }
                    })
                    .collect();
                Vector::new(entries).expect("finite")
            }
        };
        // pin tiny rounding: as real-field certificates must stay real
        ConstantEstimate {
            value,
            method: EstimateMethod::ClosedForm,
            certificate,
        }
    }

    fn op_norm_cmod(&self, q: PExp) -> ConstantEstimate {
        let a = self.representer.entry(0);
        let abs_a = a.norm();
        // sup |z|_2 / |z|_q is 1 for q ≤ 2 (axis vector) and 2^{1/2−1/q} for q ≥ 2
        // (the diagonal z = 1 + i)
        let (mult, cert) = match q {
            PExp::Finite(qf) if qf <= 2.0 => (1.0, Scalar::new(1.0, 0.0)),
            PExp::Finite(qf) => {
                let scale = 2.0_f64.powf(-1.0 / qf);
                (
                    2.0_f64.powf(0.5 - 1.0 / qf),
                    Scalar::new(scale, scale),
                )
            }
            PExp::Infinity => (std::f64::consts::SQRT_2, Scalar::new(1.0, 1.0)),
        };
        ConstantEstimate {
            value: mult * abs_a,
            method: EstimateMethod::ClosedForm,
            certificate: Vector::new(vec![cert]).expect("finite"),
        }
    }
}

/// Hölder conjugate exponent.
pub fn dual_exponent(p: PExp) -> PExp {
    match p {
        PExp::Infinity => PExp::Finite(1.0),
        PExp::Finite(pf) if pf == 1.0 => PExp::Infinity,
        PExp::Finite(pf) => PExp::Finite(pf / (pf - 1.0)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateMethod {
    ClosedForm,
    GramEigen,
    SphereSearch,
}

/// A lower-bound estimate of a sup-type constant together with the witness that
/// attains it. Re-evaluating the witness reproduces `value`.
#[derive(Debug, Clone)]
pub struct ConstantEstimate {
    pub value: f64,
    pub method: EstimateMethod,
    pub certificate: Vector,
}

/// Family of functionals over a common space. Orthogonality flags are auto-detected
/// on ℓ² spaces and drive the specialised bound variants.
#[derive(Debug, Clone)]
pub struct FunctionalFamily {
    members: Vec<Functional>,
    orthogonal: bool,
    orthonormal: bool,
}

impl FunctionalFamily {
    pub fn new(members: Vec<Functional>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidConfig("functional family is empty".into()));
        }
        let space = *members[0].space();
        for f in &members {
            if *f.space() != space {
                return Err(Error::InvalidConfig(
                    "family members must share one space".into(),
                ));
            }
        }
        let (orthogonal, orthonormal) = detect_orthogonality(&space, &members);
        Ok(FunctionalFamily {
            members,
            orthogonal,
            orthonormal,
        })
    }

    /// Family of Hilbert functionals ⟨·, e_k⟩ on an ℓ² space.
    pub fn from_directions(space: SpaceSpec, directions: &[Vector]) -> Result<Self> {
        let members = directions
            .iter()
            .map(|e| Functional::inner_with(space, e))
            .collect::<Result<Vec<_>>>()?;
        FunctionalFamily::new(members)
    }

    pub fn members(&self) -> &[Functional] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn space(&self) -> &SpaceSpec {
        self.members[0].space()
    }

    pub fn is_orthogonal(&self) -> bool {
        self.orthogonal
    }

    pub fn is_orthonormal(&self) -> bool {
        self.orthonormal
    }

    pub fn is_unit_norm(&self, tol: &Tolerance) -> bool {
        self.members
            .iter()
            .all(|f| tol.eq(f.op_norm().value, 1.0))
    }

    /// Representer of Σ_k F_k as one functional.
    pub fn sum_functional(&self) -> Functional {
        let rep = Vector::sum(
            &self
                .members
                .iter()
                .map(|f| f.representer().clone())
                .collect::<Vec<_>>(),
        );
        Functional::new(*self.space(), rep).expect("same space")
    }

    /// The aggregation the c_p sup ranges over, evaluated at x:
    /// (Σ_k |F_k(x)|^p)^{1/p} / ‖x‖ (max_k at p = ∞).
    pub fn aggregate_ratio(&self, p: PExp, x: &Vector) -> Result<f64> {
        let n = norm(self.space(), x)?;
        if n == 0.0 {
            return Err(Error::DegenerateInstance(
                "sup ratio undefined at the zero vector".into(),
            ));
        }
        let vals = self
            .members
            .iter()
            .map(|f| f.apply(x).map(|z| z.norm()))
            .collect::<Result<Vec<_>>>()?;
        Ok(aggregate(vals.into_iter(), p) / n)
    }

    /// Analytic cap: (Σ‖F_k‖^p)^{1/p}, resp. max_k ‖F_k‖ at p = ∞.
    pub fn constant_cap(&self, p: PExp) -> f64 {
        aggregate(self.members.iter().map(|f| f.op_norm().value), p)
    }
}

fn detect_orthogonality(space: &SpaceSpec, members: &[Functional]) -> (bool, bool) {
    if !space.is_lp2() || members.is_empty() {
        return (false, false);
    }
    let tol = Tolerance::default();
    let dirs: Vec<Vector> = members.iter().map(|f| f.hilbert_direction()).collect();
    let norms: Vec<f64> = dirs
        .iter()
        .map(|e| norm(space, e).expect("dim checked"))
        .collect();
    if norms.contains(&0.0) {
        return (false, false);
    }
    let mut orthogonal = true;
    'outer: for k in 0..dirs.len() {
        for l in (k + 1)..dirs.len() {
            let ip = crate::space::inner(space, &dirs[k], &dirs[l]).expect("lp2");
            if ip.norm() > tol.slack(norms[k] * norms[l], 0.0) {
                orthogonal = false;
                break 'outer;
            }
        }
    }
    let orthonormal = orthogonal && norms.iter().all(|&n| tol.eq(n, 1.0));
    (orthogonal, orthonormal)
}

/// Multistart configuration for the sphere searches. Sub-seeds derive from
/// (seed, start index) through separate ChaCha streams, so results are independent
/// of evaluation order.
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub starts: usize,
    pub iters: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            starts: 64,
            iters: 500,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        SearchConfig {
            seed,
            ..Default::default()
        }
    }

    /// Cheaper settings for bulk trial checking; the full defaults stay in place for
    /// constant-estimation entry points.
    pub fn light(seed: u64) -> Self {
        SearchConfig {
            starts: 8,
            iters: 120,
            seed,
        }
    }
}

/// Estimate of c_p (p finite) or c_∞ with certificate.
///
/// Single member: the sup collapses to the operator norm. ℓ² space and p = 2:
/// power iteration on the representer Gram matrix (exact). Otherwise: multistart
/// projected ascent; `warm_starts` are evaluated alongside the random starts so a
/// caller can anchor the estimate at directions it must dominate.
pub fn family_constant(
    fam: &FunctionalFamily,
    p: PExp,
    search: &SearchConfig,
    warm_starts: &[Vector],
) -> Result<ConstantEstimate> {
    p.validate()?;
    if fam.len() == 1 {
        let mut est = fam.members()[0].op_norm();
        refine_with_warm_starts(fam, p, warm_starts, &mut est)?;
        return Ok(est);
    }
    if fam.space().is_lp2() && matches!(p, PExp::Finite(pf) if pf == 2.0) {
        let mut est = gram_eigen_constant(fam)?;
        refine_with_warm_starts(fam, p, warm_starts, &mut est)?;
        return Ok(est);
    }
    sphere_search_constant(fam, p, search, warm_starts)
}

fn refine_with_warm_starts(
    fam: &FunctionalFamily,
    p: PExp,
    warm_starts: &[Vector],
    est: &mut ConstantEstimate,
) -> Result<()> {
    for w in warm_starts {
        if norm(fam.space(), w)? == 0.0 {
            continue;
        }
        let r = fam.aggregate_ratio(p, w)?;
        if r > est.value {
            est.value = r;
            est.certificate = unit(fam.space(), w)?;
        }
    }
    Ok(())
}

/// c_2 on an ℓ² space: the square root of the largest eigenvalue of the m×m Gram
/// matrix G_{kl} = Σ_j r_{kj}·conj(r_{lj}) of the representers, by power iteration
/// (all-ones start, 1000 iterations or relative change < 1e−13).
pub fn gram_eigen_constant(fam: &FunctionalFamily) -> Result<ConstantEstimate> {
    if !fam.space().is_lp2() {
        return Err(Error::UnsupportedStructure(
            "gram_eigen requires an lp(2) space".into(),
        ));
    }
    let m = fam.len();
    let reps: Vec<&Vector> = fam.members().iter().map(|f| f.representer()).collect();
    let mut gram = vec![vec![Scalar::new(0.0, 0.0); m]; m];
    for k in 0..m {
        for l in 0..m {
            gram[k][l] = reps[k]
                .entries()
                .iter()
                .zip(reps[l].entries())
                .map(|(a, b)| a * b.conj())
                .sum();
        }
    }
    if gram.iter().flatten().all(|z| z.norm() == 0.0) {
        return Ok(ConstantEstimate {
            value: 0.0,
            method: EstimateMethod::GramEigen,
            certificate: Vector::basis(fam.space().dim, 0),
        });
    }
    let (lambda, v) = power_iteration(&gram);
    // eigenvector of Σ h_k h_k^H (h_k = conj representer) lifted from the Gram space
    let mut x = Vector::zero(fam.space().dim);
    for (l, rep) in reps.iter().enumerate() {
        x = x.add(&rep.conj().scale_scalar(v[l]));
    }
    let certificate = if x.is_zero() {
        Vector::basis(fam.space().dim, 0)
    } else {
        unit(fam.space(), &x)?
    };
    Ok(ConstantEstimate {
        value: lambda.max(0.0).sqrt(),
        method: EstimateMethod::GramEigen,
        certificate,
    })
}

/// Largest eigenvalue and eigenvector of a Hermitian PSD matrix.
///
/// The primary start is the normalised all-ones vector; since that start can sit in
/// a minor eigenspace (representers summing to ~0 leave it with no component on the
/// dominant one), a second deterministic perturbed start runs as well and the larger
/// Rayleigh quotient wins.
fn power_iteration(g: &[Vec<Scalar>]) -> (f64, Vec<Scalar>) {
    let m = g.len();
    let ones: Vec<Scalar> = vec![Scalar::new(1.0, 0.0); m];
    let perturbed: Vec<Scalar> = (0..m)
        .map(|k| Scalar::new(1.0 + 0.5 * ((k + 1) as f64).sin(), 0.0))
        .collect();
    let a = power_iteration_from(g, ones);
    let b = power_iteration_from(g, perturbed);
    if a.0 >= b.0 {
        a
    } else {
        b
    }
}

fn power_iteration_from(g: &[Vec<Scalar>], start: Vec<Scalar>) -> (f64, Vec<Scalar>) {
    let m = g.len();
    let normalize = |v: &mut Vec<Scalar>| -> f64 {
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 0.0 {
            for z in v.iter_mut() {
                *z /= n;
            }
        }
        n
    };
    let matvec = |v: &[Scalar]| -> Vec<Scalar> {
        (0..m)
            .map(|k| (0..m).map(|l| g[k][l] * v[l]).sum())
            .collect()
    };
    let mut v = start;
    normalize(&mut v);
    let mut lambda = 0.0_f64;
    for iter in 0..1000 {
        let mut w = matvec(&v);
        let wn = normalize(&mut w);
        if wn == 0.0 {
            // iterate fell into the kernel: the Rayleigh quotient stays 0
            break;
        }
        // Rayleigh quotient of the normalised iterate (real for Hermitian g)
        let gv = matvec(&w);
        let new_lambda: f64 = w
            .iter()
            .zip(&gv)
            .map(|(a, b)| (a.conj() * b).re)
            .sum();
        let done = iter > 0 && (new_lambda - lambda).abs() <= 1e-13 * new_lambda.abs().max(1.0);
        v = w;
        lambda = new_lambda;
        if done {
            break;
        }
    }
    (lambda, v)
}

/// Multistart projected ascent over the unit sphere of the space's norm, maximising
/// (Σ_k |F_k(x)|^p)^{1/p} (max_k at p = ∞). The p = ∞ objective uses the active
/// index's gradient with random tie-breaking among indices within 1e−12 of the max.
pub fn sphere_search_constant(
    fam: &FunctionalFamily,
    p: PExp,
    cfg: &SearchConfig,
    warm_starts: &[Vector],
) -> Result<ConstantEstimate> {
    let space = *fam.space();
    let mut best_value = f64::NEG_INFINITY;
    let mut best_x: Option<Vector> = None;

    let consider = |x: &Vector, val: f64, best_value: &mut f64, best_x: &mut Option<Vector>| {
        if val > *best_value {
            *best_value = val;
            *best_x = Some(x.clone());
        }
    };

    for start in 0..cfg.starts + warm_starts.len() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(start as u64);
        let x0 = if start < warm_starts.len() {
            let w = &warm_starts[start];
            if norm(&space, w)? == 0.0 {
                continue;
            }
            unit(&space, w)?
        } else {
            match random_unit(&space, &mut rng) {
                Some(x) => x,
                None => continue,
            }
        };
        let (x, val) = ascend(fam, p, x0, cfg.iters, &mut rng)?;
        consider(&x, val, &mut best_value, &mut best_x);
    }

    let certificate = best_x.unwrap_or_else(|| Vector::basis(space.dim, 0));
    let value = if best_value.is_finite() {
        best_value
    } else {
        fam.aggregate_ratio(p, &certificate)?
    };
    Ok(ConstantEstimate {
        value,
        method: EstimateMethod::SphereSearch,
        certificate,
    })
}

fn random_unit(space: &SpaceSpec, rng: &mut ChaCha8Rng) -> Option<Vector> {
    let gauss = |rng: &mut ChaCha8Rng| -> f64 {
        // Box-Muller from two uniforms
        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
        let u2: f64 = rng.gen_range(0.0..1.0);
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    };
    let entries: Vec<Scalar> = (0..space.dim)
        .map(|_| {
            let re = gauss(rng);
            let im = if space.field == Field::Complex {
                gauss(rng)
            } else {
                0.0
            };
            Scalar::new(re, im)
        })
        .collect();
    let v = Vector::new(entries).ok()?;
    unit(space, &v).ok()
}

fn ascend(
    fam: &FunctionalFamily,
    p: PExp,
    mut x: Vector,
    iters: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(Vector, f64)> {
    let space = *fam.space();
    let mut value = fam.aggregate_ratio(p, &x)?;
    let mut step = 0.5_f64;
    for _ in 0..iters {
        // gradient of the scale-invariant ratio A(x)/‖x‖ at the unit sphere: the
        // norm term removes the sphere normal, so objectives whose own gradient is
        // radial (all F_k proportional to one ℓ² form) still move tangentially
        let ga = aggregate_gradient(fam, p, &x, rng)?;
        let gn = norm_gradient(&space, &x)?;
        let g = ga.sub(&gn.scale(value));
        let gmag = g.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if gmag < 1e-300 {
            break;
        }
        let candidate = x.add(&g.scale(step / gmag));
        let candidate = match unit(&space, &candidate) {
            Ok(c) => c,
            Err(_) => {
                step *= 0.5;
                continue;
            }
        };
        let cval = fam.aggregate_ratio(p, &candidate)?;
        if cval > value {
            x = candidate;
            value = cval;
            step = (step * 1.25).min(0.5);
        } else {
            step *= 0.5;
            if step < 1e-14 {
                break;
            }
        }
    }
    Ok((x, value))
}

/// Euclidean gradient (real parametrisation; ∂/∂re in .re, ∂/∂im in .im) of the
/// 1-homogeneous aggregate A(x) = (Σ_k |F_k(x)|^p)^{1/p}, the active |F_k(x)| at
/// p = ∞ with random tie-breaking among indices within 1e−12 of the max.
fn aggregate_gradient(
    fam: &FunctionalFamily,
    p: PExp,
    x: &Vector,
    rng: &mut ChaCha8Rng,
) -> Result<Vector> {
    let space = fam.space();
    let vals: Vec<Scalar> = fam
        .members()
        .iter()
        .map(|f| f.apply(x))
        .collect::<Result<Vec<_>>>()?;
    let mut grad = vec![Scalar::new(0.0, 0.0); space.dim];
    let mut add_term = |k: usize, weight: f64| {
        let w = vals[k];
        let rep = fam.members()[k].representer();
        for (j, gj) in grad.iter_mut().enumerate() {
            // d|w| in direction of x_j: conj(w)/|w| · rep_j, split into re/im parts
            let t = w.conj() * rep.entry(j);
            gj.re += weight * t.re;
            if space.field == Field::Complex {
                gj.im -= weight * t.im;
            }
        }
    };
    match p {
        PExp::Infinity => {
            let peak = vals.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if peak == 0.0 {
                return Ok(Vector::zero(space.dim));
            }
            let active: Vec<usize> = (0..vals.len())
                .filter(|&k| vals[k].norm() >= peak - 1e-12)
                .collect();
            let k = active[rng.gen_range(0..active.len())];
            let m = vals[k].norm();
            add_term(k, 1.0 / m);
        }
        PExp::Finite(pf) => {
            let agg = aggregate(vals.iter().map(|z| z.norm()), p);
            if agg == 0.0 {
                return Ok(Vector::zero(space.dim));
            }
            for k in 0..vals.len() {
                let m = vals[k].norm();
                if m > 1e-300 {
                    add_term(k, agg.powf(1.0 - pf) * m.powf(pf - 2.0));
                }
            }
        }
    }
    Vector::new(grad)
}

/// Euclidean gradient of the space norm (same component convention). Nonsmooth
/// points take a fixed subgradient selection.
fn norm_gradient(space: &SpaceSpec, x: &Vector) -> Result<Vector> {
    let n = norm(space, x)?;
    let mut grad = vec![Scalar::new(0.0, 0.0); space.dim];
    if n == 0.0 {
        return Vector::new(grad);
    }
    match space.norm {
        NormKind::Lp(PExp::Finite(pf)) => {
            for (j, z) in x.entries().iter().enumerate() {
                let m = z.norm();
                if m > 0.0 {
                    let factor = n.powf(1.0 - pf) * m.powf(pf - 2.0);
                    grad[j] = Scalar::new(factor * z.re, factor * z.im);
                }
            }
        }
        NormKind::Lp(PExp::Infinity) => {
            let (jmax, m) = x
                .entries()
                .iter()
                .enumerate()
                .fold((0, -1.0), |(bj, bm), (j, z)| {
                    if z.norm() > bm {
                        (j, z.norm())
                    } else {
                        (bj, bm)
                    }
                });
            let z = x.entry(jmax);
            grad[jmax] = Scalar::new(z.re / m, z.im / m);
        }
        NormKind::CMod(PExp::Finite(qf)) => {
            let z = x.entry(0);
            let d = |c: f64| {
                if c == 0.0 {
                    0.0
                } else {
                    n.powf(1.0 - qf) * c.abs().powf(qf - 2.0) * c
                }
            };
            grad[0] = Scalar::new(d(z.re), d(z.im));
        }
        NormKind::CMod(PExp::Infinity) => {
            let z = x.entry(0);
            grad[0] = if z.re.abs() >= z.im.abs() {
                Scalar::new(z.re.signum(), 0.0)
            } else {
                Scalar::new(0.0, z.im.signum())
            };
        }
    }
    Vector::new(grad)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn apply_examples() {
        let s = SpaceSpec::euclidean(2);
        let f = Functional::new(s, Vector::real(&[1.0, 0.0]).unwrap()).unwrap();
        let x = Vector::real(&[0.6, 0.8]).unwrap();
        assert_eq!(f.apply(&x).unwrap(), Scalar::new(0.6, 0.0));

        let cm = SpaceSpec::cmod(PExp::Finite(2.0));
        let f = Functional::new(cm, Vector::complex(&[(2.0, 0.0)]).unwrap()).unwrap();
        let z = Vector::complex(&[(1.0, 1.0)]).unwrap();
        assert_eq!(f.apply(&z).unwrap(), Scalar::new(2.0, 2.0));

        let zero = Functional::new(s, Vector::zero(2)).unwrap();
        assert_eq!(zero.apply(&x).unwrap(), Scalar::new(0.0, 0.0));
    }

    #[test]
    fn cmod_closed_form_norms() {
        // ‖F‖_1 = |a|
        let f = Functional::new(
            SpaceSpec::cmod(PExp::Finite(1.0)),
            Vector::complex(&[(0.0, 3.0)]).unwrap(),
        )
        .unwrap();
        assert!((f.op_norm().value - 3.0).abs() < 1e-15);

        // ‖F‖_∞ = √2·|d|
        let f = Functional::new(
            SpaceSpec::cmod(PExp::Infinity),
            Vector::complex(&[(0.6, 0.8)]).unwrap(),
        )
        .unwrap();
        assert!((f.op_norm().value - SQRT_2).abs() < 1e-15);

        // ‖F‖_{2p} = 2^{1/2−1/2p}·|c| with p = 2 and |c| = 1
        let f = Functional::new(
            SpaceSpec::cmod(PExp::Finite(4.0)),
            Vector::complex(&[(1.0, 0.0)]).unwrap(),
        )
        .unwrap();
        assert!((f.op_norm().value - 2.0_f64.powf(0.25)).abs() < 1e-15);
    }

    #[test]
    fn lp_dual_norm() {
        let s = SpaceSpec::euclidean(2);
        let f = Functional::new(s, Vector::real(&[3.0, 4.0]).unwrap()).unwrap();
        assert!((f.op_norm().value - 5.0).abs() < 1e-15);
    }

    #[test]
    fn op_norm_certificates_attain_value() {
        let cases = [
            (NormKind::Lp(PExp::Finite(1.0)), Field::Complex),
            (NormKind::Lp(PExp::Finite(1.5)), Field::Complex),
            (NormKind::Lp(PExp::Finite(2.0)), Field::Real),
            (NormKind::Lp(PExp::Finite(3.0)), Field::Complex),
            (NormKind::Lp(PExp::Infinity), Field::Complex),
        ];
        for (nk, field) in cases {
            let s = SpaceSpec::new(3, field, nk).unwrap();
            let rep = match field {
                Field::Real => Vector::real(&[0.3, -1.2, 0.0]).unwrap(),
                Field::Complex => {
                    Vector::complex(&[(0.3, -0.4), (0.0, 0.0), (1.1, 0.9)]).unwrap()
                }
            };
            let f = Functional::new(s, rep).unwrap();
            let est = f.op_norm();
            let cn = norm(&s, &est.certificate).unwrap();
            assert!((cn - 1.0).abs() < 1e-12, "{nk:?}: certificate norm {cn}");
            let attained = f.apply(&est.certificate).unwrap().norm();
            assert!(
                (attained - est.value).abs() <= 1e-12 * est.value.max(1.0),
                "{nk:?}: attained {attained} vs value {}",
                est.value
            );
        }
        // cmod certificates
        for q in [PExp::Finite(1.0), PExp::Finite(1.7), PExp::Finite(4.0), PExp::Infinity] {
            let s = SpaceSpec::cmod(q);
            let f = Functional::new(s, Vector::complex(&[(0.5, -1.3)]).unwrap()).unwrap();
            let est = f.op_norm();
            let ratio = f.apply(&est.certificate).unwrap().norm()
                / norm(&s, &est.certificate).unwrap();
            assert!((ratio - est.value).abs() < 1e-13, "{q:?}");
        }
    }

    #[test]
    fn lp2_dual_norm_matches_independent_search() {
        // grid/multistart maximisation of |F(x)| over the unit sphere agrees with
        // the closed form (oracle for the Hölder route)
        let s = SpaceSpec::euclidean(2);
        let f = Functional::new(s, Vector::real(&[3.0, 4.0]).unwrap()).unwrap();
        let mut best = 0.0_f64;
        let n = 20000;
        for i in 0..n {
            let t = 2.0 * std::f64::consts::PI * (i as f64) / (n as f64);
            let x = Vector::real(&[t.cos(), t.sin()]).unwrap();
            best = best.max(f.apply(&x).unwrap().norm());
        }
        assert!((best - 5.0).abs() < 1e-6);

        let fam = FunctionalFamily::new(vec![f]).unwrap();
        let est = sphere_search_constant(&fam, PExp::Finite(2.0), &SearchConfig::default(), &[])
            .unwrap();
        assert!((est.value - 5.0).abs() < 1e-6 * 5.0, "search got {}", est.value);
    }

    #[test]
    fn family_constant_gram_examples() {
        let s = SpaceSpec::euclidean(2);
        let e1 = Vector::real(&[1.0, 0.0]).unwrap();
        let e2 = Vector::real(&[0.0, 1.0]).unwrap();
        let fam = FunctionalFamily::from_directions(s, &[e1.clone(), e2]).unwrap();
        let est = family_constant(&fam, PExp::Finite(2.0), &SearchConfig::default(), &[]).unwrap();
        assert_eq!(est.method, EstimateMethod::GramEigen);
        assert!((est.value - 1.0).abs() < 1e-12);

        let fam2 = FunctionalFamily::from_directions(s, &[e1.clone(), e1]).unwrap();
        let est2 = family_constant(&fam2, PExp::Finite(2.0), &SearchConfig::default(), &[]).unwrap();
        assert!((est2.value - SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn family_constant_cinf_grid_oracle() {
        // c_∞ for ⟨·,(1,0)⟩, ⟨·,(0,1)⟩ on ℓ²(ℝ²): fine grid over the unit circle
        let s = SpaceSpec::euclidean(2);
        let fam = FunctionalFamily::from_directions(
            s,
            &[Vector::real(&[1.0, 0.0]).unwrap(), Vector::real(&[0.0, 1.0]).unwrap()],
        )
        .unwrap();
        let mut grid_best = 0.0_f64;
        let n = 40000;
        for i in 0..n {
            let t = 2.0 * std::f64::consts::PI * (i as f64) / (n as f64);
            grid_best = grid_best.max(t.cos().abs().max(t.sin().abs()));
        }
        assert!((grid_best - 1.0).abs() < 1e-8);
        let est = family_constant(&fam, PExp::Infinity, &SearchConfig::default(), &[]).unwrap();
        assert_eq!(est.method, EstimateMethod::SphereSearch);
        assert!((est.value - 1.0).abs() < 1e-7, "got {}", est.value);
    }

    #[test]
    fn single_member_family_returns_op_norm() {
        let s = SpaceSpec::lp(3, Field::Real, PExp::Finite(3.0)).unwrap();
        let f = Functional::new(s, Vector::real(&[1.0, -2.0, 0.5]).unwrap()).unwrap();
        let want = f.op_norm().value;
        let fam = FunctionalFamily::new(vec![f]).unwrap();
        for p in [PExp::Finite(1.0), PExp::Finite(2.0), PExp::Infinity] {
            let est = family_constant(&fam, p, &SearchConfig::default(), &[]).unwrap();
            assert_eq!(est.value, want);
        }
    }

    #[test]
    fn power_iteration_handles_all_ones_kernel_start() {
        // representers (1,0) and (−1,0): Gram = [[1,−1],[−1,1]], all-ones start maps
        // to zero; the collapse guard must still find λ = 2
        let s = SpaceSpec::euclidean(2);
        let f1 = Functional::new(s, Vector::real(&[1.0, 0.0]).unwrap()).unwrap();
        let f2 = Functional::new(s, Vector::real(&[-1.0, 0.0]).unwrap()).unwrap();
        let fam = FunctionalFamily::new(vec![f1, f2]).unwrap();
        let est = gram_eigen_constant(&fam).unwrap();
        assert!((est.value - SQRT_2).abs() < 1e-10, "got {}", est.value);
    }

    #[test]
    fn orthogonality_detection() {
        let s = SpaceSpec::euclidean(3);
        let on = FunctionalFamily::from_directions(
            s,
            &[Vector::basis(3, 0), Vector::basis(3, 1)],
        )
        .unwrap();
        assert!(on.is_orthogonal() && on.is_orthonormal());

        let og = FunctionalFamily::from_directions(
            s,
            &[Vector::real(&[2.0, 0.0, 0.0]).unwrap(), Vector::basis(3, 1)],
        )
        .unwrap();
        assert!(og.is_orthogonal() && !og.is_orthonormal());

        let skew = FunctionalFamily::from_directions(
            s,
            &[Vector::real(&[1.0, 1.0, 0.0]).unwrap(), Vector::basis(3, 1)],
        )
        .unwrap();
        assert!(!skew.is_orthogonal());
    }

    #[test]
    fn search_is_deterministic_for_fixed_seed() {
        let s = SpaceSpec::lp(3, Field::Complex, PExp::Finite(1.5)).unwrap();
        let fam = FunctionalFamily::new(vec![
            Functional::new(s, Vector::complex(&[(1.0, 0.2), (0.0, -1.0), (0.3, 0.0)]).unwrap())
                .unwrap(),
            Functional::new(s, Vector::complex(&[(0.5, 0.0), (1.0, 1.0), (0.0, 0.0)]).unwrap())
                .unwrap(),
        ])
        .unwrap();
        let cfg = SearchConfig {
            starts: 8,
            iters: 80,
            seed: 7,
        };
        let a = sphere_search_constant(&fam, PExp::Finite(3.0), &cfg, &[]).unwrap();
        let b = sphere_search_constant(&fam, PExp::Finite(3.0), &cfg, &[]).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.certificate, b.certificate);
    }
}
