//! Equality-case constructors: for each theorem with an equality characterisation,
//! build an instance that attains the bound and show the per-condition diagnosis.
//!
//! Run with: cargo run --example equality_cases

use trirev::discrete::{equality_instance, run_check, EqualityParams, TheoremId};
use trirev::functional::{FunctionalFamily, SearchConfig};
use trirev::space::{PExp, SpaceSpec, Vector};
use trirev::tol::Tolerance;

fn main() -> trirev::Result<()> {
    let s = SpaceSpec::euclidean(2);
    let tol = Tolerance::default();
    let search = SearchConfig::default();
    let single = FunctionalFamily::from_directions(s, &[Vector::basis(2, 0)])?;
    let pair = FunctionalFamily::from_directions(s, &[Vector::basis(2, 0), Vector::basis(2, 1)])?;

    let cases: Vec<(TheoremId, EqualityParams)> = vec![
        // the mirrored pair (0.6, ±0.8): both sides land on 1.2
        (
            TheoremId::DM_SINGLE,
            EqualityParams::new(single.clone(), vec![1.0]).with_margin(0.6),
        ),
        (TheoremId::DM_FAMILY, EqualityParams::new(pair.clone(), vec![1.0, 0.5])),
        // sum direction (1,1)/√2 with margins 1/√2: both sides land on √2
        (
            TheoremId::MULT_SUMFUNC,
            EqualityParams::new(pair.clone(), vec![std::f64::consts::SQRT_2]),
        ),
        (TheoremId::MULT_CINF, EqualityParams::new(pair.clone(), vec![1.0])),
        (
            TheoremId::MULT_CP,
            EqualityParams::new(pair.clone(), vec![1.0]).with_p(PExp::Finite(2.0)),
        ),
        // mirrored pair again, with the exact deficits 0.4 as slacks
        (
            TheoremId::ADD_SINGLE,
            EqualityParams::new(single.clone(), vec![1.0]).with_margin(0.6),
        ),
        (TheoremId::ADD_FAMILY, EqualityParams::new(pair.clone(), vec![std::f64::consts::SQRT_2])),
        (TheoremId::ADD_CINF, EqualityParams::new(single, vec![1.0, 2.0])),
        (
            TheoremId::ADD_CP,
            EqualityParams::new(pair, vec![1.0]).with_p(PExp::Finite(2.0)),
        ),
    ];

    for (theorem, params) in cases {
        let inst = equality_instance(theorem, &params)?;
        let res = run_check(&inst, theorem, params.p, &tol, &search)?;
        println!(
            "{:<14} lhs = {:<20.15} rhs = {:<20.15} gap = {:.2e}",
            theorem.to_string(),
            res.lhs,
            res.rhs,
            res.equality.gap
        );
        for c in &res.equality.conditions {
            println!("    [{}] {} (residual {:.2e})", if c.holds { "ok" } else { "  " }, c.id, c.residual);
        }
    }
    Ok(())
}
