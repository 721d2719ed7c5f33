//! Concrete scalar fields, vectors, and norms.
//!
//! Everything is realised on K^n with K = ℝ or ℂ. Two norm families are supported:
//! the ℓ^p norms for p ∈ [1,∞], and the p-modulus norms |z|_p = (|Re z|^p + |Im z|^p)^{1/p}
//! (max of the two at p = ∞) that make ℂ a real Banach space — the latter only on
//! one-dimensional complex spaces. The p = 2 case additionally carries the Hermitian
//! inner product, and 1 < p < ∞ carries the semi-inner product that generates the norm.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Scalar = Complex64;

/// Scalar field of the ambient space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// Norm exponent. Infinity is an explicit variant, never a sentinel float.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PExp {
    Finite(f64),
    Infinity,
}

impl PExp {
    pub fn is_finite(&self) -> bool {
        matches!(self, PExp::Finite(_))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            PExp::Finite(p) if !(p.is_finite() && *p >= 1.0) => Err(Error::InvalidConfig(
                format!("norm exponent must satisfy p >= 1, got {p}"),
            )),
            _ => Ok(()),
        }
    }
}

impl std::fmt::Display for PExp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PExp::Finite(p) => write!(f, "{p}"),
            PExp::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for PExp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let p = match s.trim() {
            "inf" | "infinity" | "oo" => PExp::Infinity,
            other => PExp::Finite(other.parse::<f64>().map_err(|_| {
                Error::InvalidConfig(format!("cannot parse norm exponent {other:?}"))
            })?),
        };
        p.validate()?;
        Ok(p)
    }
}

/// Norm selector: ℓ^p on K^n, or the p-modulus family on ℂ (dim 1, complex field).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    Lp(PExp),
    CMod(PExp),
}

/// Dimension + field + norm; fixes ‖·‖ and, at p = 2, ⟨·,·⟩.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub dim: usize,
    pub field: Field,
    pub norm: NormKind,
}

impl SpaceSpec {
    pub fn new(dim: usize, field: Field, norm: NormKind) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidConfig("dimension must be positive".into()));
        }
        match norm {
            NormKind::Lp(p) => p.validate()?,
            NormKind::CMod(p) => {
                p.validate()?;
                if dim != 1 || field != Field::Complex {
                    return Err(Error::InvalidConfig(
                        "p-modulus norms require dim = 1 over the complex field".into(),
                    ));
                }
            }
        }
        Ok(SpaceSpec { dim, field, norm })
    }

    pub fn lp(dim: usize, field: Field, p: PExp) -> Result<Self> {
        Self::new(dim, field, NormKind::Lp(p))
    }

    /// Real Euclidean space (ℝ^dim, ℓ²).
    pub fn euclidean(dim: usize) -> Self {
        Self::lp(dim, Field::Real, PExp::Finite(2.0)).expect("dim > 0")
    }

    /// Complex Hilbert space (ℂ^dim, ℓ²).
    pub fn hermitian(dim: usize) -> Self {
        Self::lp(dim, Field::Complex, PExp::Finite(2.0)).expect("dim > 0")
    }

    /// ℂ as a real Banach space under the p-modulus.
    pub fn cmod(p: PExp) -> Self {
        Self::new(1, Field::Complex, NormKind::CMod(p)).expect("valid by construction")
    }

    pub fn is_lp2(&self) -> bool {
        matches!(self.norm, NormKind::Lp(PExp::Finite(p)) if p == 2.0)
    }

    pub fn check_dim(&self, v: &Vector) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }
}

/// Element of K^n. Entries are validated finite at construction, and in real-field
/// spaces the imaginary parts are pinned to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidConfig("vector must be nonempty".into()));
        }
        for (j, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite(format!("vector entry {j} = {z}")));
            }
        }
        Ok(Vector { entries })
    }

    pub fn real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| Scalar::new(x, 0.0)).collect())
    }

    pub fn complex(entries: &[(f64, f64)]) -> Result<Self> {
        Self::new(entries.iter().map(|&(re, im)| Scalar::new(re, im)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Vector {
            entries: vec![Scalar::new(0.0, 0.0); dim.max(1)],
        }
    }

    /// Standard basis vector.
    pub fn basis(dim: usize, j: usize) -> Self {
        let mut v = Self::zero(dim);
        v.entries[j] = Scalar::new(1.0, 0.0);
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn entry(&self, j: usize) -> Scalar {
        self.entries[j]
    }

    pub fn conj(&self) -> Self {
        Vector {
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.len(), other.len());
        Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.len(), other.len());
        Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: f64) -> Vector {
        Vector {
            entries: self.entries.iter().map(|z| z * c).collect(),
        }
    }

    pub fn scale_scalar(&self, c: Scalar) -> Vector {
        Vector {
            entries: self.entries.iter().map(|z| z * c).collect(),
        }
    }

    /// Sum of a nonempty slice of equal-length vectors.
    pub fn sum(vectors: &[Vector]) -> Vector {
        let mut acc = Vector::zero(vectors[0].len());
        for v in vectors {
            acc = acc.add(v);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }
}

/// Norm of `x` in the given space.
///
/// ℓ^p acts on entry moduli; the p-modulus acts on the real/imaginary parts of the
/// single complex entry. Zero exactly on the zero vector.
pub fn norm(space: &SpaceSpec, x: &Vector) -> Result<f64> {
    space.check_dim(x)?;
    let value = match space.norm {
        NormKind::Lp(p) => aggregate(x.entries.iter().map(|z| z.norm()), p),
        NormKind::CMod(p) => {
            let z = x.entries[0];
            aggregate([z.re.abs(), z.im.abs()].into_iter(), p)
        }
    };
    Ok(value)
}

/// (Σ a_j^p)^{1/p} over nonnegative values, max at p = ∞.
/// p = 1 and p = 2 avoid the powf round trip.
pub fn aggregate(values: impl Iterator<Item = f64>, p: PExp) -> f64 {
    match p {
        PExp::Infinity => values.fold(0.0, f64::max),
        PExp::Finite(p) if p == 1.0 => values.sum(),
        PExp::Finite(p) if p == 2.0 => values.map(|a| a * a).sum::<f64>().sqrt(),
        PExp::Finite(p) => {
            // factor out the max so powf stays in a safe range
            let vals: Vec<f64> = values.collect();
            let peak = vals.iter().fold(0.0_f64, |m, &a| m.max(a));
            if peak == 0.0 {
                return 0.0;
            }
            let sum: f64 = vals.iter().map(|&a| (a / peak).powf(p)).sum();
            peak * sum.powf(1.0 / p)
        }
    }
}

/// Hermitian inner product Σ x_j·conj(y_j). Requires the ℓ² norm.
pub fn inner(space: &SpaceSpec, x: &Vector, y: &Vector) -> Result<Scalar> {
    if !space.is_lp2() {
        return Err(Error::UnsupportedStructure(
            "inner product exists only on lp(2) spaces".into(),
        ));
    }
    space.check_dim(x)?;
    space.check_dim(y)?;
    Ok(x
        .entries
        .iter()
        .zip(&y.entries)
        .map(|(a, b)| a * b.conj())
        .sum())
}

/// Semi-inner product generating the ℓ^p norm for 1 < p < ∞:
///
/// [x, y] = ‖y‖^{2−p} Σ_j x_j |y_j|^{p−2} conj(y_j)
///
/// Coincides with the inner product at p = 2, satisfies \[x,x\] = ‖x‖², and is linear in
/// the first argument. Terms with y_j = 0 are defined as 0 (the limit value). Returns 0
/// when y = 0. At p ∈ {1, ∞} the norm-generating semi-inner product is not unique and
/// the operation is rejected.
pub fn sip(space: &SpaceSpec, x: &Vector, y: &Vector) -> Result<Scalar> {
    let p = match space.norm {
        NormKind::Lp(PExp::Finite(p)) if p > 1.0 => p,
        _ => {
            return Err(Error::UnsupportedStructure(
                "semi-inner product requires lp(p) with 1 < p < infinity".into(),
            ))
        }
    };
    space.check_dim(x)?;
    space.check_dim(y)?;
    if p == 2.0 {
        return inner(space, x, y);
    }
    let ny = norm(space, y)?;
    if ny == 0.0 {
        return Ok(Scalar::new(0.0, 0.0));
    }
    let mut acc = Scalar::new(0.0, 0.0);
    for (xj, yj) in x.entries.iter().zip(&y.entries) {
        let m = yj.norm();
        if m > 0.0 {
            acc += xj * yj.conj() * m.powf(p - 2.0);
        }
    }
    Ok(acc * ny.powf(2.0 - p))
}

/// Representer of the continuous linear functional φ_y = [·, y] on lp(p), 1 < p < ∞,
/// i.e. the vector r with φ_y(x) = Σ r_j x_j. Its operator norm equals ‖y‖.
pub fn sip_representer(space: &SpaceSpec, y: &Vector) -> Result<Vector> {
    let p = match space.norm {
        NormKind::Lp(PExp::Finite(p)) if p > 1.0 => p,
        _ => {
            return Err(Error::UnsupportedStructure(
                "semi-inner product requires lp(p) with 1 < p < infinity".into(),
            ))
        }
    };
    space.check_dim(y)?;
    let ny = norm(space, y)?;
    if ny == 0.0 {
        return Ok(Vector::zero(space.dim));
    }
    let scale = ny.powf(2.0 - p);
    let entries = y
        .entries
        .iter()
        .map(|yj| {
            let m = yj.norm();
            if m > 0.0 {
                yj.conj() * m.powf(p - 2.0) * scale
            } else {
                Scalar::new(0.0, 0.0)
            }
        })
        .collect();
    Vector::new(entries)
}

/// ℓ²-normalised copy of a nonzero vector.
pub fn unit_l2(x: &Vector) -> Result<Vector> {
    let n = x.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n == 0.0 {
        return Err(Error::DegenerateInstance("cannot normalise zero vector".into()));
    }
    Ok(x.scale(1.0 / n))
}

/// Copy of a nonzero vector normalised in the space's own norm.
pub fn unit(space: &SpaceSpec, x: &Vector) -> Result<Vector> {
    let n = norm(space, x)?;
    if n == 0.0 {
        return Err(Error::DegenerateInstance("cannot normalise zero vector".into()));
    }
    Ok(x.scale(1.0 / n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol::Tolerance;

    fn cplx(re: f64, im: f64) -> Scalar {
        Scalar::new(re, im)
    }

    #[test]
    fn cmod_infinity_of_one_plus_i_is_one() {
        let s = SpaceSpec::cmod(PExp::Infinity);
        let z = Vector::complex(&[(1.0, 1.0)]).unwrap();
        assert_eq!(norm(&s, &z).unwrap(), 1.0);
    }

    #[test]
    fn cmod_2p_of_one_plus_i() {
        for p in [1.0_f64, 1.5, 2.0, 3.0, 7.5] {
            let s = SpaceSpec::cmod(PExp::Finite(2.0 * p));
            let z = Vector::complex(&[(1.0, 1.0)]).unwrap();
            let got = norm(&s, &z).unwrap();
            let want = 2.0_f64.powf(1.0 / (2.0 * p));
            assert!((got - want).abs() < 1e-14, "p={p}: {got} vs {want}");
        }
    }

    #[test]
    fn zero_vector_has_zero_norm_everywhere() {
        for nk in [
            NormKind::Lp(PExp::Finite(1.0)),
            NormKind::Lp(PExp::Finite(2.7)),
            NormKind::Lp(PExp::Infinity),
        ] {
            let s = SpaceSpec::new(3, Field::Real, nk).unwrap();
            assert_eq!(norm(&s, &Vector::zero(3)).unwrap(), 0.0);
        }
    }

    #[test]
    fn l1_norm_sums_absolute_values() {
        let s = SpaceSpec::lp(2, Field::Real, PExp::Finite(1.0)).unwrap();
        let x = Vector::real(&[3.0, -4.0]).unwrap();
        assert_eq!(norm(&s, &x).unwrap(), 7.0);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let s = SpaceSpec::euclidean(3);
        let x = Vector::real(&[1.0, 2.0]).unwrap();
        assert!(matches!(
            norm(&s, &x),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn inner_orthogonal_and_unit() {
        let s = SpaceSpec::euclidean(2);
        let e1 = Vector::real(&[1.0, 0.0]).unwrap();
        let e2 = Vector::real(&[0.0, 1.0]).unwrap();
        assert_eq!(inner(&s, &e1, &e2).unwrap(), cplx(0.0, 0.0));
        let u = Vector::real(&[0.6, 0.8]).unwrap();
        let ip = inner(&s, &u, &u).unwrap();
        assert!((ip.re - 1.0).abs() < 1e-15 && ip.im == 0.0);
    }

    #[test]
    fn inner_conjugates_second_argument() {
        let s = SpaceSpec::hermitian(1);
        let x = Vector::complex(&[(0.0, 1.0)]).unwrap();
        let y = Vector::complex(&[(1.0, 0.0)]).unwrap();
        assert_eq!(inner(&s, &x, &y).unwrap(), cplx(0.0, 1.0));
    }

    #[test]
    fn inner_rejected_off_lp2() {
        let s = SpaceSpec::lp(2, Field::Real, PExp::Finite(3.0)).unwrap();
        let x = Vector::real(&[1.0, 0.0]).unwrap();
        assert!(matches!(
            inner(&s, &x, &x),
            Err(Error::UnsupportedStructure(_))
        ));
    }

    #[test]
    fn sip_reduces_to_inner_at_p2() {
        let s = SpaceSpec::hermitian(2);
        let x = Vector::complex(&[(1.0, 2.0), (0.5, -0.25)]).unwrap();
        let y = Vector::complex(&[(-1.0, 0.5), (2.0, 1.0)]).unwrap();
        assert_eq!(sip(&s, &x, &y).unwrap(), inner(&s, &x, &y).unwrap());
    }

    #[test]
    fn sip_generates_norm_squared() {
        // p = 3, x = (1, -2): [x,x] must equal ‖x‖₃², independently computed
        let s = SpaceSpec::lp(2, Field::Real, PExp::Finite(3.0)).unwrap();
        let x = Vector::real(&[1.0, -2.0]).unwrap();
        let n3 = 9.0_f64.powf(1.0 / 3.0); // (1 + 8)^{1/3}
        let v = sip(&s, &x, &x).unwrap();
        assert!((v.re - n3 * n3).abs() < 1e-13 && v.im.abs() < 1e-15);
    }

    #[test]
    fn sip_zero_cases() {
        let s = SpaceSpec::lp(2, Field::Real, PExp::Finite(1.5)).unwrap();
        let x = Vector::real(&[1.0, 1.0]).unwrap();
        assert_eq!(sip(&s, &Vector::zero(2), &x).unwrap(), cplx(0.0, 0.0));
        assert_eq!(sip(&s, &x, &Vector::zero(2)).unwrap(), cplx(0.0, 0.0));
        // entries of y equal to zero contribute zero terms even for p < 2
        let y = Vector::real(&[1.0, 0.0]).unwrap();
        let v = sip(&s, &x, &y).unwrap();
        assert!((v.re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sip_rejected_at_p_one_and_infinity() {
        for p in [PExp::Finite(1.0), PExp::Infinity] {
            let s = SpaceSpec::lp(2, Field::Real, p).unwrap();
            let x = Vector::real(&[1.0, 1.0]).unwrap();
            assert!(matches!(
                sip(&s, &x, &x),
                Err(Error::UnsupportedStructure(_))
            ));
        }
    }

    #[test]
    fn sip_representer_matches_sip() {
        let s = SpaceSpec::lp(3, Field::Complex, PExp::Finite(2.5)).unwrap();
        let y = Vector::complex(&[(1.0, -0.5), (0.0, 0.0), (0.25, 2.0)]).unwrap();
        let x = Vector::complex(&[(0.1, 0.2), (-1.0, 0.4), (0.7, -0.3)]).unwrap();
        let rep = sip_representer(&s, &y).unwrap();
        let via_rep: Scalar = rep
            .entries()
            .iter()
            .zip(x.entries())
            .map(|(r, xj)| r * xj)
            .sum();
        let direct = sip(&s, &x, &y).unwrap();
        assert!((via_rep - direct).norm() < 1e-13);
    }

    #[test]
    fn nan_rejected_at_construction() {
        assert!(matches!(
            Vector::real(&[f64::NAN]),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            Vector::complex(&[(0.0, f64::INFINITY)]),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn cmod_requires_dim1_complex() {
        assert!(SpaceSpec::new(2, Field::Complex, NormKind::CMod(PExp::Finite(2.0))).is_err());
        assert!(SpaceSpec::new(1, Field::Real, NormKind::CMod(PExp::Finite(2.0))).is_err());
    }

    #[test]
    fn inner_product_identity_examples() {
        // ‖u − ⟨u,v⟩v/‖v‖²‖² = (‖u‖²‖v‖² − |⟨u,v⟩|²)/‖v‖²
        let s = SpaceSpec::hermitian(3);
        let tol = Tolerance::default();
        let u = Vector::complex(&[(1.0, 0.5), (-0.3, 2.0), (0.0, -1.0)]).unwrap();
        let v = Vector::complex(&[(0.4, -0.2), (1.5, 0.0), (2.0, 1.0)]).unwrap();
        let uv = inner(&s, &u, &v).unwrap();
        let nv2 = norm(&s, &v).unwrap().powi(2);
        let proj = v.scale_scalar(uv / nv2);
        let lhs = norm(&s, &u.sub(&proj)).unwrap().powi(2);
        let nu2 = norm(&s, &u).unwrap().powi(2);
        let rhs = (nu2 * nv2 - uv.norm_sqr()) / nv2;
        assert!(tol.eq(lhs, rhs), "{lhs} vs {rhs}");
    }
}
