//! Reverses for complex numbers under the p-modulus norms: the classical sector
//! reverse cos θ·Σ|z_k| ≤ |Σ z_k|, its analogues on (ℂ, |·|_1) and (ℂ, |·|_inf)
//! through the closed-form multiplier norms, and the continuous arc version.
//!
//! Run with: cargo run --example complex_scalars

use std::f64::consts::FRAC_PI_3;

use trirev::discrete::{dm_single, DiscreteInstance, DmForm, Hypothesis};
use trirev::continuous::cont_mult_single;
use trirev::functional::{Functional, FunctionalFamily};
use trirev::path::PathFunction;
use trirev::quadrature::QuadratureSpec;
use trirev::space::{PExp, Scalar, SpaceSpec, Vector};
use trirev::tol::Tolerance;

fn main() -> trirev::Result<()> {
    let tol = Tolerance::default();

    // sector reverse on the usual modulus: z_k = e^{±iπ/3}, 1 with r = cos(π/3)
    let cm2 = SpaceSpec::cmod(PExp::Finite(2.0));
    let theta = FRAC_PI_3;
    let vectors = vec![
        Vector::new(vec![Scalar::new(theta.cos(), theta.sin())])?,
        Vector::new(vec![Scalar::new(theta.cos(), -theta.sin())])?,
        Vector::new(vec![Scalar::new(1.0, 0.0)])?,
    ];
    let fam = FunctionalFamily::new(vec![Functional::new(cm2, Vector::complex(&[(1.0, 0.0)])?)?])?;
    let inst = DiscreteInstance::new(cm2, vectors, fam, Hypothesis::Margin(vec![theta.cos()]))?;
    let res = dm_single(&inst, &DmForm::Norm, &tol)?;
    println!(
        "sector reverse on |·|_2:  cos(π/3)·Σ|z| = {:.12} <= |Σz| = {:.12}",
        res.lhs, res.rhs
    );

    // the |·|_1 version needs a unit multiplier: |F|_1 = |a| = 1
    let cm1 = SpaceSpec::cmod(PExp::Finite(1.0));
    let f1 = Functional::new(cm1, Vector::complex(&[(1.0, 0.0)])?)?;
    println!("|F|_1 for a = 1:          {}", f1.op_norm().value);
    let z = vec![
        Vector::new(vec![Scalar::new(1.0, 0.4)])?,
        Vector::new(vec![Scalar::new(0.8, -0.3)])?,
    ];
    // the one-norm margin: Re z ≥ r·(|Re z| + |Im z|) holds here with r = 0.6
    let fam1 = FunctionalFamily::new(vec![f1])?;
    let inst = DiscreteInstance::new(cm1, z, fam1, Hypothesis::Margin(vec![0.6]))?;
    let res = dm_single(&inst, &DmForm::Norm, &tol)?;
    println!(
        "one-norm reverse:         {:.12} <= {:.12} (hypothesis clean: {})",
        res.lhs,
        res.rhs,
        res.hypothesis_clean()
    );

    // the sup-norm multiplier norm is √2·|d|; with |d| = 1/√2 it is unit
    let cminf = SpaceSpec::cmod(PExp::Infinity);
    let d = Vector::complex(&[(std::f64::consts::FRAC_1_SQRT_2, 0.0)])?;
    let finf = Functional::new(cminf, d)?;
    println!("|F|_inf for |d| = 1/√2:   {}", finf.op_norm().value);

    // continuous arc on the usual modulus (the integral sector reverse):
    // lhs = cos θ·∫|e^{it}| = 2θcos θ, rhs = |∫ e^{it}| = 2 sin θ
    let path = PathFunction::complex_phase(cm2, -theta, theta, 1.0)?;
    let fz = Functional::new(cm2, Vector::complex(&[(1.0, 0.0)])?)?;
    let res = cont_mult_single(&path, &fz, theta.cos(), &QuadratureSpec::default(), &tol)?;
    println!(
        "integral sector reverse:  {:.12} <= {:.12}  (2θcosθ = {:.12}, 2sinθ = {:.12})",
        res.lhs,
        res.rhs,
        2.0 * theta * theta.cos(),
        2.0 * theta.sin()
    );
    Ok(())
}
