//! Evaluable paths t → Vector on a compact interval, standing in for the Bochner
//! integrable functions of the integral bounds. Built-in catalog paths cover the
//! suites (and serialise into reports); `custom` accepts arbitrary closures.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::{Field, NormKind, Scalar, SpaceSpec, Vector};

#[derive(Clone)]
pub struct TrigTerm {
    pub amplitude: Vector,
    pub omega: f64,
    pub phase: f64,
}

#[derive(Clone)]
pub enum PathKind {
    Constant(Vector),
    /// (cos ωt, sin ωt) on a two-dimensional space.
    Circular { omega: f64 },
    /// e^{iωt} on a one-dimensional complex space.
    ComplexPhase { omega: f64 },
    /// Σ_k coeff_k·t^k.
    Polynomial(Vec<Vector>),
    /// base + Σ_j sin(ω_j t + φ_j)·amplitude_j.
    Trig { base: Vector, terms: Vec<TrigTerm> },
    Piecewise(Vec<PathFunction>),
    Custom(Arc<dyn Fn(f64) -> Vector + Send + Sync>),
}

#[derive(Clone)]
pub struct PathFunction {
    pub space: SpaceSpec,
    pub a: f64,
    pub b: f64,
    kind: PathKind,
}

impl std::fmt::Debug for PathFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PathFunction")
            .field("space", &self.space)
            .field("a", &self.a)
            .field("b", &self.b)
            .field("kind", &self.catalog_id().unwrap_or("custom"))
            .finish()
    }
}

impl PathFunction {
    fn check_domain(a: f64, b: f64) -> Result<()> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidConfig(format!(
                "path domain [{a}, {b}] must be a finite interval with a < b"
            )));
        }
        Ok(())
    }

    pub fn constant(space: SpaceSpec, a: f64, b: f64, value: Vector) -> Result<Self> {
        Self::check_domain(a, b)?;
        space.check_dim(&value)?;
        Ok(PathFunction {
            space,
            a,
            b,
            kind: PathKind::Constant(value),
        })
    }

    pub fn circular(space: SpaceSpec, a: f64, b: f64, omega: f64) -> Result<Self> {
        Self::check_domain(a, b)?;
        if space.dim != 2 {
            return Err(Error::InvalidConfig(
                "circular path requires a two-dimensional space".into(),
            ));
        }
        Ok(PathFunction {
            space,
            a,
            b,
            kind: PathKind::Circular { omega },
        })
    }

    pub fn complex_phase(space: SpaceSpec, a: f64, b: f64, omega: f64) -> Result<Self> {
        Self::check_domain(a, b)?;
        if space.dim != 1 || space.field != Field::Complex {
            return Err(Error::InvalidConfig(
                "complex_phase path requires a one-dimensional complex space".into(),
            ));
        }
        Ok(PathFunction {
            space,
            a,
            b,
            kind: PathKind::ComplexPhase { omega },
        })
    }

    pub fn polynomial(space: SpaceSpec, a: f64, b: f64, coeffs: Vec<Vector>) -> Result<Self> {
        Self::check_domain(a, b)?;
        if coeffs.is_empty() {
            return Err(Error::InvalidConfig("polynomial needs coefficients".into()));
        }
        for c in &coeffs {
            space.check_dim(c)?;
        }
        Ok(PathFunction {
            space,
            a,
            b,
            kind: PathKind::Polynomial(coeffs),
        })
    }

    pub fn trig(space: SpaceSpec, a: f64, b: f64, base: Vector, terms: Vec<TrigTerm>) -> Result<Self> {
        Self::check_domain(a, b)?;
        space.check_dim(&base)?;
        for t in &terms {
            space.check_dim(&t.amplitude)?;
        }
        Ok(PathFunction {
            space,
            a,
            b,
            kind: PathKind::Trig { base, terms },
        })
    }

    /// Contiguous segments; the pieces must tile an interval without gaps.
    pub fn piecewise(segments: Vec<PathFunction>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidConfig("piecewise path needs segments".into()));
        }
        let space = segments[0].space;
        for w in segments.windows(2) {
            if (w[0].b - w[1].a).abs() > 1e-12 {
                return Err(Error::InvalidConfig(
                    "piecewise segments must be contiguous".into(),
                ));
            }
            if w[1].space != space {
                return Err(Error::InvalidConfig(
                    "piecewise segments must share one space".into(),
                ));
            }
        }
        let (a, b) = (segments[0].a, segments[segments.len() - 1].b);
        Self::check_domain(a, b)?;
        Ok(PathFunction {
            space,
            a,
            b,
            kind: PathKind::Piecewise(segments),
        })
    }

    /// Step path taking value x_i on [i, i+1); reproduces discrete instances since
    /// each unit segment integrates to exactly x_i.
    pub fn piecewise_constant(space: SpaceSpec, values: &[Vector]) -> Result<Self> {
        let segments = values
            .iter()
            .enumerate()
            .map(|(i, v)| PathFunction::constant(space, i as f64, (i + 1) as f64, v.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::piecewise(segments)
    }

    pub fn custom(
        space: SpaceSpec,
        a: f64,
        b: f64,
        eval: Arc<dyn Fn(f64) -> Vector + Send + Sync>,
    ) -> Result<Self> {
        Self::check_domain(a, b)?;
        Ok(PathFunction {
            space,
            a,
            b,
            kind: PathKind::Custom(eval),
        })
    }

    pub fn kind(&self) -> &PathKind {
        &self.kind
    }

    pub fn catalog_id(&self) -> Option<&'static str> {
        match self.kind {
            PathKind::Constant(_) => Some("constant"),
            PathKind::Circular { .. } => Some("circular"),
            PathKind::ComplexPhase { .. } => Some("complex_phase"),
            PathKind::Polynomial(_) => Some("polynomial"),
            PathKind::Trig { .. } => Some("trig"),
            PathKind::Piecewise(_) => Some("piecewise"),
            PathKind::Custom(_) => None,
        }
    }

    /// Quadrature segments: piecewise breakpoints, otherwise the whole domain.
    pub fn segments(&self) -> Vec<(f64, f64)> {
        match &self.kind {
            PathKind::Piecewise(parts) => parts.iter().flat_map(|p| p.segments()).collect(),
            _ => vec![(self.a, self.b)],
        }
    }

    /// Quadrature nodes over the path's segments with `panels · 2^level` panels per
    /// segment. Nodes that fall exactly on a segment endpoint (endpoint-including
    /// rules) are pulled inside by a relative 1e−12, so piecewise paths — which may
    /// jump at breakpoints — are always sampled strictly within one smooth piece.
    /// The abscissa shift is far below integration error; weights are untouched.
    pub fn quad_nodes(
        &self,
        q: &crate::quadrature::QuadratureSpec,
        level: usize,
    ) -> crate::error::Result<Vec<(f64, f64)>> {
        let mut out = Vec::new();
        for (a, b) in self.segments() {
            let delta = (b - a) * 1e-12;
            let nodes = q.nodes(&[(a, b)], level)?;
            out.extend(
                nodes
                    .into_iter()
                    .map(|(t, w)| (t.clamp(a + delta, b - delta), w)),
            );
        }
        Ok(out)
    }

    pub fn eval(&self, t: f64) -> Vector {
        match &self.kind {
            PathKind::Constant(v) => v.clone(),
            PathKind::Circular { omega } => {
                let (s, c) = (omega * t).sin_cos();
                Vector::new(vec![Scalar::new(c, 0.0), Scalar::new(s, 0.0)]).expect("finite")
            }
            PathKind::ComplexPhase { omega } => {
                let (s, c) = (omega * t).sin_cos();
                Vector::new(vec![Scalar::new(c, s)]).expect("finite")
            }
            PathKind::Polynomial(coeffs) => {
                let mut acc = Vector::zero(self.space.dim);
                for c in coeffs.iter().rev() {
                    acc = acc.scale(t).add(c);
                }
                acc
            }
            PathKind::Trig { base, terms } => {
                let mut acc = base.clone();
                for term in terms {
                    acc = acc.add(&term.amplitude.scale((term.omega * t + term.phase).sin()));
                }
                acc
            }
            PathKind::Piecewise(parts) => {
                let idx = parts
                    .iter()
                    .position(|p| t < p.b)
                    .unwrap_or(parts.len() - 1);
                parts[idx].eval(t)
            }
            PathKind::Custom(f) => f(t),
        }
    }
}

/// Nonnegative slack profiles M_k(t), one per functional.
#[derive(Clone)]
pub struct SlackFunction {
    fns: Vec<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
}

impl SlackFunction {
    pub fn new(fns: Vec<Arc<dyn Fn(f64) -> f64 + Send + Sync>>) -> Result<Self> {
        if fns.is_empty() {
            return Err(Error::InvalidConfig("slack function list is empty".into()));
        }
        Ok(SlackFunction { fns })
    }

    pub fn constant(values: &[f64]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&v| Arc::new(move |_t: f64| v) as Arc<dyn Fn(f64) -> f64 + Send + Sync>)
                .collect(),
        )
    }

    pub fn single(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        SlackFunction {
            fns: vec![Arc::new(f)],
        }
    }

    /// Pointwise exact deficits k_k(t) = ‖f(t)‖ − Re F_k(f(t)): the tightest slack
    /// profile that satisfies the hypothesis everywhere.
    pub fn exact_deficit(
        path: &PathFunction,
        family: &crate::functional::FunctionalFamily,
    ) -> Result<Self> {
        let mut fns: Vec<Arc<dyn Fn(f64) -> f64 + Send + Sync>> = Vec::new();
        for f in family.members() {
            let f = f.clone();
            let path = path.clone();
            fns.push(Arc::new(move |t: f64| {
                let x = path.eval(t);
                let n = crate::space::norm(&path.space, &x).unwrap_or(f64::NAN);
                let re = f.re_apply(&x).unwrap_or(f64::NAN);
                (n - re).max(0.0)
            }));
        }
        SlackFunction::new(fns)
    }

    pub fn len(&self) -> usize {
        self.fns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fns.is_empty()
    }

    pub fn eval(&self, k: usize, t: f64) -> f64 {
        (self.fns[k])(t)
    }
}

/// True when the space is ℂ with the usual modulus (dim-1 ℓ² or 2-modulus), where
/// circular-arc paths live.
pub fn is_complex_modulus_space(space: &SpaceSpec) -> bool {
    space.dim == 1
        && space.field == Field::Complex
        && matches!(
            space.norm,
            NormKind::CMod(crate::space::PExp::Finite(p)) | NormKind::Lp(crate::space::PExp::Finite(p)) if p == 2.0
        )
}
