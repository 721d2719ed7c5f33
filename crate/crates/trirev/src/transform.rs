//! Converters from geometric hypotheses (balls, bands) to the margin and slack
//! constants consumed by the bound theorems.
//!
//! All four lemmas are inner-product statements, so the transformers accept ℓ² spaces
//! only; composing them with checks on other norms is rejected up front.

use crate::error::{Error, Result};
use crate::space::{norm, SpaceSpec, Vector};

/// ‖x − center‖ ≤ radius, with radius < ‖center‖ for the margin form.
#[derive(Debug, Clone)]
pub struct BallHypothesis {
    pub center: Vector,
    pub radius: f64,
}

impl BallHypothesis {
    pub fn new(center: Vector, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) {
            return Err(Error::InvalidConfig("ball radius must be >= 0".into()));
        }
        Ok(BallHypothesis { center, radius })
    }
}

/// Re⟨M·direction − x, x − m·direction⟩ ≥ 0, equivalently
/// ‖x − (m+M)/2·direction‖ ≤ ½(M−m)‖direction‖, with 0 < m = lower ≤ M = upper.
#[derive(Debug, Clone)]
pub struct BandHypothesis {
    pub direction: Vector,
    pub lower: f64,
    pub upper: f64,
}

impl BandHypothesis {
    pub fn new(direction: Vector, lower: f64, upper: f64) -> Result<Self> {
        if !(lower > 0.0) {
            return Err(Error::HypothesisViolation(
                "band requires 0 < lower bound".into(),
            ));
        }
        if !(upper >= lower) {
            return Err(Error::HypothesisViolation(
                "band requires lower <= upper".into(),
            ));
        }
        Ok(BandHypothesis {
            direction,
            lower,
            upper,
        })
    }

    /// Equivalent ball form: center (m+M)/2·direction, radius ½(M−m)‖direction‖.
    pub fn to_ball(&self, space: &SpaceSpec) -> Result<BallHypothesis> {
        let nd = require_lp2(space, &self.direction)?;
        BallHypothesis::new(
            self.direction.scale(0.5 * (self.lower + self.upper)),
            0.5 * (self.upper - self.lower) * nd,
        )
    }
}

fn require_lp2(space: &SpaceSpec, v: &Vector) -> Result<f64> {
    if !space.is_lp2() {
        return Err(Error::UnsupportedStructure(
            "ball/band transformers operate on lp(2) spaces only".into(),
        ));
    }
    norm(space, v)
}

/// Margin from a ball: every x with ‖x − center‖ ≤ radius < ‖center‖ satisfies
/// Re⟨x, center⟩ ≥ r‖x‖ with r = (‖center‖² − radius²)^{1/2}.
pub fn ball_to_margin(space: &SpaceSpec, h: &BallHypothesis) -> Result<f64> {
    let nc = require_lp2(space, &h.center)?;
    if !(h.radius < nc) {
        return Err(Error::HypothesisViolation(format!(
            "ball-to-margin requires radius < ||center|| (radius {}, ||center|| {nc})",
            h.radius
        )));
    }
    Ok((nc * nc - h.radius * h.radius).sqrt())
}

/// Margin from a band: the band condition implies
/// Re⟨x, direction⟩ ≥ r‖x‖ with r = 2√(m·M)/(m+M)·‖direction‖.
pub fn band_to_margin(space: &SpaceSpec, h: &BandHypothesis) -> Result<f64> {
    let nd = require_lp2(space, &h.direction)?;
    let (m, big_m) = (h.lower, h.upper);
    Ok(2.0 * (m * big_m).sqrt() / (m + big_m) * nd)
}

/// Slack from a ball around a unit-norm center: ‖x − a‖ ≤ radius with ‖a‖ = 1 gives
/// ‖x‖ − Re⟨x, a⟩ ≤ ½·radius².
pub fn ball_to_slack(radius: f64) -> Result<f64> {
    if !(radius >= 0.0) {
        return Err(Error::InvalidConfig("ball radius must be >= 0".into()));
    }
    Ok(0.5 * radius * radius)
}

/// Slack from a band: the band condition gives
/// ‖x‖‖direction‖ − Re⟨x, direction⟩ ≤ ¼(M−m)²/(m+M)·‖direction‖².
pub fn band_to_slack(space: &SpaceSpec, h: &BandHypothesis) -> Result<f64> {
    let nd = require_lp2(space, &h.direction)?;
    let (m, big_m) = (h.lower, h.upper);
    Ok(0.25 * (big_m - m).powi(2) / (m + big_m) * nd * nd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{inner, unit_l2};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sample_in_ball(
        space: &SpaceSpec,
        center: &Vector,
        radius: f64,
        rng: &mut ChaCha8Rng,
    ) -> Vector {
        // Gaussian direction, radius scaled by u^{1/d}
        let d = space.dim * if space.field == crate::space::Field::Complex { 2 } else { 1 };
        let gauss = |rng: &mut ChaCha8Rng| -> f64 {
            let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
        };
        let dir = Vector::new(
            (0..space.dim)
                .map(|_| {
                    crate::space::Scalar::new(
                        gauss(rng),
                        if space.field == crate::space::Field::Complex {
                            gauss(rng)
                        } else {
                            0.0
                        },
                    )
                })
                .collect(),
        )
        .unwrap();
        let dir = unit_l2(&dir).unwrap();
        let u: f64 = rng.gen_range(0.0..1.0);
        let r = radius * u.powf(1.0 / d as f64);
        center.add(&dir.scale(r))
    }

    #[test]
    fn ball_margin_examples() {
        let s = SpaceSpec::euclidean(2);
        let c = Vector::real(&[1.0, 0.0]).unwrap();
        let h = BallHypothesis::new(c.clone(), 0.6).unwrap();
        assert!((ball_to_margin(&s, &h).unwrap() - 0.8).abs() < 1e-15);

        let h0 = BallHypothesis::new(c.clone(), 0.0).unwrap();
        assert_eq!(ball_to_margin(&s, &h0).unwrap(), 1.0);

        let hb = BallHypothesis::new(c, 1.0).unwrap();
        assert!(matches!(
            ball_to_margin(&s, &hb),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn ball_margin_sampling_oracle() {
        // 10^4 points in the ball must satisfy Re⟨x, center⟩ ≥ r‖x‖
        let s = SpaceSpec::euclidean(3);
        let center = Vector::real(&[0.4, -0.8, 0.2]).unwrap();
        let radius = 0.5;
        let h = BallHypothesis::new(center.clone(), radius).unwrap();
        let r = ball_to_margin(&s, &h).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let x = sample_in_ball(&s, &center, radius, &mut rng);
            let lhs = r * norm(&s, &x).unwrap();
            let rhs = inner(&s, &x, &center).unwrap().re;
            assert!(lhs <= rhs + 1e-12, "margin violated: {lhs} > {rhs}");
        }
    }

    #[test]
    fn band_margin_examples() {
        let s = SpaceSpec::euclidean(2);
        let e = Vector::real(&[1.0, 0.0]).unwrap();
        let h = BandHypothesis::new(e.clone(), 2.0, 2.0).unwrap();
        assert!((band_to_margin(&s, &h).unwrap() - 1.0).abs() < 1e-15);
        let h = BandHypothesis::new(e.clone(), 1.0, 4.0).unwrap();
        assert!((band_to_margin(&s, &h).unwrap() - 0.8).abs() < 1e-15);
        let h = BandHypothesis::new(e, 1.0, 9.0).unwrap();
        assert!((band_to_margin(&s, &h).unwrap() - 0.6).abs() < 1e-15);
        assert!(BandHypothesis::new(Vector::basis(2, 0), 0.0, 1.0).is_err());
    }

    #[test]
    fn band_margin_sampling_oracle() {
        let s = SpaceSpec::euclidean(2);
        let e = Vector::real(&[1.0, 0.0]).unwrap();
        let h = BandHypothesis::new(e.clone(), 1.0, 4.0).unwrap();
        let r = band_to_margin(&s, &h).unwrap();
        let ball = h.to_ball(&s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let x = sample_in_ball(&s, &ball.center, ball.radius, &mut rng);
            let lhs = r * norm(&s, &x).unwrap();
            let rhs = inner(&s, &x, &e).unwrap().re;
            assert!(lhs <= rhs + 1e-12);
        }
    }

    #[test]
    fn ball_slack_examples_and_oracle() {
        assert!((ball_to_slack(0.5).unwrap() - 0.125).abs() < 1e-15);
        assert_eq!(ball_to_slack(0.0).unwrap(), 0.0);
        assert!((ball_to_slack(1.0).unwrap() - 0.5).abs() < 1e-15);

        // unit center: sampled ball points obey ‖x‖ − Re⟨x,a⟩ ≤ ½r²
        let s = SpaceSpec::euclidean(2);
        let a = Vector::real(&[0.6, 0.8]).unwrap();
        for radius in [0.5, 1.0] {
            let k = ball_to_slack(radius).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(17);
            for _ in 0..10_000 {
                let x = sample_in_ball(&s, &a, radius, &mut rng);
                let deficit = norm(&s, &x).unwrap() - inner(&s, &x, &a).unwrap().re;
                assert!(deficit <= k + 1e-12, "deficit {deficit} > {k}");
            }
        }
    }

    #[test]
    fn band_slack_examples_and_oracle() {
        let s = SpaceSpec::euclidean(2);
        let e = Vector::real(&[1.0, 0.0]).unwrap();
        let h = BandHypothesis::new(e.clone(), 3.0, 3.0).unwrap();
        assert_eq!(band_to_slack(&s, &h).unwrap(), 0.0);
        let h = BandHypothesis::new(e.clone(), 1.0, 3.0).unwrap();
        assert!((band_to_slack(&s, &h).unwrap() - 0.25).abs() < 1e-15);
        let e2 = Vector::real(&[2.0, 0.0]).unwrap();
        let h2 = BandHypothesis::new(e2, 1.0, 2.0).unwrap();
        assert!((band_to_slack(&s, &h2).unwrap() - 1.0 / 3.0).abs() < 1e-15);

        let bound = band_to_slack(&s, &h).unwrap();
        let ball = h.to_ball(&s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10_000 {
            let x = sample_in_ball(&s, &ball.center, ball.radius, &mut rng);
            let deficit =
                norm(&s, &x).unwrap() * norm(&s, &e).unwrap() - inner(&s, &x, &e).unwrap().re;
            assert!(deficit <= bound + 1e-12);
        }
    }

    #[test]
    fn ball_margin_equality_witness() {
        // unit a, radius r: x with ‖x‖ = √(1−r²) and ‖x−a‖ = r attains the margin;
        // construct by intersecting the sphere of radius √(1−r²) with the ball boundary
        let s = SpaceSpec::euclidean(2);
        let a = Vector::real(&[1.0, 0.0]).unwrap();
        let r = 0.6;
        let x = Vector::real(&[0.64, 0.48]).unwrap();
        assert!((norm(&s, &x.sub(&a)).unwrap() - r).abs() < 1e-12);
        assert!((norm(&s, &x).unwrap().powi(2) + r * r - 1.0).abs() < 1e-12);
        let margin = ball_to_margin(&s, &BallHypothesis::new(a.clone(), r).unwrap()).unwrap();
        let lhs = norm(&s, &x).unwrap() * margin;
        let rhs = inner(&s, &x, &a).unwrap().re;
        assert!((lhs - rhs).abs() < 1e-12, "{lhs} vs {rhs}");
    }

    #[test]
    fn monotonicity() {
        let s = SpaceSpec::euclidean(2);
        let c = Vector::real(&[1.0, 0.0]).unwrap();
        let mut prev = f64::INFINITY;
        for radius in [0.0, 0.2, 0.5, 0.9, 0.99] {
            let m = ball_to_margin(&s, &BallHypothesis::new(c.clone(), radius).unwrap()).unwrap();
            assert!(m < prev);
            prev = m;
        }
        // band margin ≤ ‖direction‖ with equality iff m = M
        for (lo, hi) in [(1.0, 1.0), (1.0, 1.5), (0.5, 4.0)] {
            let h = BandHypothesis::new(c.clone(), lo, hi).unwrap();
            let m = band_to_margin(&s, &h).unwrap();
            assert!(m <= 1.0 + 1e-15);
            if lo == hi {
                assert!((m - 1.0).abs() < 1e-15);
            } else {
                assert!(m < 1.0);
            }
        }
    }

    #[test]
    fn non_lp2_rejected() {
        use crate::space::{Field, PExp};
        let s = SpaceSpec::lp(2, Field::Real, PExp::Finite(1.0)).unwrap();
        let h = BallHypothesis::new(Vector::basis(2, 0), 0.1).unwrap();
        assert!(matches!(
            ball_to_margin(&s, &h),
            Err(Error::UnsupportedStructure(_))
        ));
    }
}
