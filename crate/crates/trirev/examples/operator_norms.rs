//! Operator norms of linear functionals F(x) = Σ r_j·x_j: Hölder duality on ℓ^p,
//! and the closed forms on the p-modulus spaces
//!
//!   |F|_1 = |a|,   |F|_inf = √2·|a|,   |F|_{2p} = 2^{1/2 − 1/2p}·|a|,
//!
//! each certified by a maximising unit vector and cross-checked by projected
//! sphere search.
//!
//! Run with: cargo run --release --example operator_norms

use trirev::functional::{sphere_search_constant, Functional, FunctionalFamily, SearchConfig};
use trirev::space::{norm, PExp, SpaceSpec, Vector};

fn main() -> trirev::Result<()> {
    // Hölder dual on ℓ²: representer (3, 4) has norm 5
    let l2 = SpaceSpec::euclidean(2);
    let f = Functional::new(l2, Vector::real(&[3.0, 4.0])?)?;
    let est = f.op_norm();
    println!("lp(2), representer (3,4):");
    println!("  closed form   {}", est.value);
    let cert_val = f.apply(&est.certificate)?.norm() / norm(&l2, &est.certificate)?;
    println!("  certificate attains {cert_val}");

    // the p-modulus closed forms
    let a = Vector::complex(&[(0.0, 3.0)])?; // |a| = 3
    for (label, space, expect) in [
        ("cmod(1)  ", SpaceSpec::cmod(PExp::Finite(1.0)), 3.0),
        ("cmod(inf)", SpaceSpec::cmod(PExp::Infinity), 3.0 * std::f64::consts::SQRT_2),
        ("cmod(4)  ", SpaceSpec::cmod(PExp::Finite(4.0)), 3.0 * 2.0_f64.powf(0.25)),
    ] {
        let f = Functional::new(space, a.clone())?;
        let est = f.op_norm();
        println!("{label} |a| = 3:  closed form {:.15} (expected {expect:.15})", est.value);

        // independent route: multistart ascent over the unit sphere
        let fam = FunctionalFamily::new(vec![f])?;
        let search = sphere_search_constant(
            &fam,
            PExp::Finite(2.0),
            &SearchConfig::with_seed(1),
            &[],
        )?;
        println!("          sphere search agrees to {:.2e}", (search.value - est.value).abs() / est.value);
    }
    Ok(())
}
