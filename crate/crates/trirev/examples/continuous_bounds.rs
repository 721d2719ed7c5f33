//! Integral reverses on catalog paths: componentwise Gauss–Legendre quadrature for
//! ∫f(t)dt, node-level hypothesis audits, the multiplicative and additive integral
//! bounds, and the ball/band corollaries.
//!
//! Run with: cargo run --release --example continuous_bounds

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

use trirev::continuous::{
    cont_add_single, cont_add_transformed, cont_mult_single, cont_mult_transformed, integrate_vec,
    GeoHypothesis, TimeVaryingHypothesis,
};
use trirev::functional::{Functional, SearchConfig};
use trirev::path::{PathFunction, SlackFunction};
use trirev::quadrature::QuadratureSpec;
use trirev::space::{PExp, SpaceSpec, Vector};
use trirev::tol::Tolerance;

fn main() -> trirev::Result<()> {
    let tol = Tolerance::default();
    let quad = QuadratureSpec::default();
    let search = SearchConfig::with_seed(5);
    let s2 = SpaceSpec::euclidean(2);

    // ∫_0^1 (t, t²) dt = (1/2, 1/3)
    let poly = PathFunction::polynomial(
        s2,
        0.0,
        1.0,
        vec![
            Vector::zero(2),
            Vector::real(&[1.0, 0.0])?,
            Vector::real(&[0.0, 1.0])?,
        ],
    )?;
    let v = integrate_vec(&poly, &quad, &tol)?;
    println!("integral of (t, t^2) on [0,1] = ({}, {})", v.entry(0).re, v.entry(1).re);

    // circular arc on [−π/4, π/4] against the direction (1,0): margin cos(π/4)
    let arc = PathFunction::circular(s2, -FRAC_PI_4, FRAC_PI_4, 1.0)?;
    let func = Functional::inner_with(s2, &Vector::basis(2, 0))?;
    let res = cont_mult_single(&arc, &func, FRAC_PI_4.cos(), &quad, &tol)?;
    println!(
        "circular arc:  {:.12} <= {:.12} over {} nodes (clean: {})",
        res.lhs,
        res.rhs,
        res.nodes.unwrap(),
        res.hypothesis_clean()
    );

    // additive form with the exact slack profile k(t) = 1 − cos t: equality
    let arc3 = PathFunction::circular(s2, -FRAC_PI_3, FRAC_PI_3, 1.0)?;
    let k = SlackFunction::single(|t: f64| 1.0 - t.cos());
    let res = cont_add_single(&arc3, &func, &k, &quad, &tol)?;
    println!(
        "additive arc:  {:.12} <= {:.12} (gap {:.2e}, conditions all hold: {})",
        res.lhs,
        res.rhs,
        res.equality.gap,
        res.equality.all_conditions_hold()
    );

    // ball corollary: constant path inside a ball of radius 0.5 around (1,0)
    let f = PathFunction::constant(s2, 0.0, 1.0, Vector::real(&[1.0, 0.5])?)?;
    let res = cont_mult_transformed(
        &f,
        &[Vector::basis(2, 0)],
        &GeoHypothesis::Ball { radii: vec![0.5] },
        &quad,
        &tol,
        &search,
    )?;
    println!("ball corollary: {:.12} <= {:.12}", res.lhs, res.rhs);

    // time-varying radius: the tight profile r(t) = ‖f(t) − e‖ gives equality in the
    // additive ball corollary
    let radii = SlackFunction::single(|t: f64| 2.0 * (t / 2.0).sin().abs());
    let res = cont_add_transformed(
        &arc,
        &[Vector::basis(2, 0)],
        &TimeVaryingHypothesis::Ball { radii },
        &quad,
        &tol,
        &search,
    )?;
    println!(
        "additive ball corollary: {:.12} <= {:.12} (gap {:.2e})",
        res.lhs, res.rhs, res.equality.gap
    );

    // Karamata on ℂ: e^{it} on [−π/3, π/3] with r = cos(π/3)
    let cm = SpaceSpec::cmod(PExp::Finite(2.0));
    let phase = PathFunction::complex_phase(cm, -FRAC_PI_3, FRAC_PI_3, 1.0)?;
    let fz = Functional::new(cm, Vector::complex(&[(1.0, 0.0)])?)?;
    let res = cont_mult_single(&phase, &fz, 0.5, &quad, &tol)?;
    println!(
        "Karamata arc:  {:.12} <= {:.12}  (π/3 = {:.12}, √3 = {:.12})",
        res.lhs,
        res.rhs,
        FRAC_PI_3,
        3.0_f64.sqrt()
    );
    Ok(())
}
