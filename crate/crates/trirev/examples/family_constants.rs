//! The family constants
//!
//!   c_p = sup_{x≠0} [Σ_k |F_k(x)|^p]^{1/p} / |x|,    c_inf with max_k instead,
//!
//! estimated exactly by power iteration on the representer Gram matrix when the
//! space is ℓ² and p = 2, and by multistart projected ascent otherwise. Every
//! estimate carries a certificate and respects the cap (Σ|F_k|^p)^{1/p}.
//!
//! Run with: cargo run --release --example family_constants

use trirev::functional::{family_constant, FunctionalFamily, SearchConfig};
use trirev::space::{PExp, SpaceSpec, Vector};

fn main() -> trirev::Result<()> {
    let s = SpaceSpec::euclidean(2);

    // orthonormal directions: Gram = I, c₂ = 1
    let fam = FunctionalFamily::from_directions(s, &[Vector::basis(2, 0), Vector::basis(2, 1)])?;
    let search = SearchConfig::with_seed(42);
    let est = family_constant(&fam, PExp::Finite(2.0), &search, &[])?;
    println!("orthonormal pair: c2 = {} via {:?}", est.value, est.method);

    // repeated direction: Gram = [[1,1],[1,1]], c₂ = √2
    let e1 = Vector::basis(2, 0);
    let fam2 = FunctionalFamily::from_directions(s, &[e1.clone(), e1])?;
    let est2 = family_constant(&fam2, PExp::Finite(2.0), &search, &[])?;
    println!("repeated direction: c2 = {} (√2 = {})", est2.value, std::f64::consts::SQRT_2);

    // other aggregation exponents go through the sphere search, capped by
    // (Σ|F_k|^p)^{1/p} resp. max_k |F_k|
    let fam3 = FunctionalFamily::from_directions(
        s,
        &[Vector::real(&[1.0, 0.3])?, Vector::real(&[-0.2, 0.9])?],
    )?;
    for p in [PExp::Finite(1.0), PExp::Finite(2.0), PExp::Finite(3.0), PExp::Infinity] {
        let est = family_constant(&fam3, p, &search, &[])?;
        let cap = fam3.constant_cap(p);
        let attained = fam3.aggregate_ratio(p, &est.certificate)?;
        println!(
            "p = {p}: estimate {:.12} (cap {:.12}, certificate attains {:.12}, {:?})",
            est.value, cap, attained, est.method
        );
    }
    Ok(())
}
