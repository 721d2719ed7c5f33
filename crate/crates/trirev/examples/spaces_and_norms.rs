//! Concrete spaces: ℓ^p norms on K^n, the p-modulus norms on ℂ, the Hermitian inner
//! product at p = 2, and the semi-inner product that generates the norm for
//! 1 < p < ∞.
//!
//! Run with: cargo run --example spaces_and_norms

use trirev::space::{inner, norm, sip, Field, PExp, SpaceSpec, Vector};

fn main() -> trirev::Result<()> {
    // ℓ¹ on ℝ²
    let l1 = SpaceSpec::lp(2, Field::Real, PExp::Finite(1.0))?;
    let x = Vector::real(&[3.0, -4.0])?;
    println!("|(3, -4)|_1      = {}", norm(&l1, &x)?);

    // ℓ² picks up the inner product
    let l2 = SpaceSpec::euclidean(2);
    let u = Vector::real(&[0.6, 0.8])?;
    println!("|(0.6, 0.8)|_2   = {}", norm(&l2, &u)?);
    println!("<u, u>           = {}", inner(&l2, &u, &u)?.re);

    // the p-modulus family on ℂ: |z|_p = (|Re z|^p + |Im z|^p)^{1/p}
    let z = Vector::complex(&[(1.0, 1.0)])?;
    for p in [1.0, 2.0, 4.0] {
        let s = SpaceSpec::cmod(PExp::Finite(p));
        println!("|1+i|_{p}         = {}", norm(&s, &z)?);
    }
    let sinf = SpaceSpec::cmod(PExp::Infinity);
    println!("|1+i|_inf        = {}", norm(&sinf, &z)?);

    // the semi-inner product on ℓ³ generates the norm: [x, x] = |x|²
    let l3 = SpaceSpec::lp(2, Field::Real, PExp::Finite(3.0))?;
    let w = Vector::real(&[1.0, -2.0])?;
    let n3 = norm(&l3, &w)?;
    let sq = sip(&l3, &w, &w)?;
    println!("|(1, -2)|_3      = {n3}");
    println!("[(1,-2),(1,-2)]  = {} (norm squared {})", sq.re, n3 * n3);

    // and is rejected where the norm-generating choice is not unique
    let linf = SpaceSpec::lp(2, Field::Real, PExp::Infinity)?;
    match sip(&linf, &w, &w) {
        Err(e) => println!("sip on l_inf     -> {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
