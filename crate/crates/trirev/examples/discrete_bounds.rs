//! The discrete reverse inequalities end to end: generate hypothesis-satisfying
//! instances, then run every checker in the enumeration
//!
//!   DM_SINGLE, DM_FAMILY, MULT_SUMFUNC, MULT_CINF, MULT_CP,
//!   ADD_SINGLE, ADD_FAMILY, ADD_CINF, ADD_CP
//!
//! and print lhs ≤ rhs with the hypothesis audit.
//!
//! Run with: cargo run --release --example discrete_bounds

use trirev::discrete::{run_check, TheoremId};
use trirev::functional::{FunctionalFamily, SearchConfig};
use trirev::instances::{gen_margin, gen_slack, GenConfig};
use trirev::space::{PExp, SpaceSpec, Vector};
use trirev::tol::Tolerance;

fn main() -> trirev::Result<()> {
    let space = SpaceSpec::euclidean(3);
    let tol = Tolerance::default();
    let search = SearchConfig::with_seed(7);

    // a unit-norm single functional and a two-member family
    let single = FunctionalFamily::from_directions(space, &[Vector::basis(3, 0)])?;
    let pair = FunctionalFamily::from_directions(
        space,
        &[Vector::basis(3, 0), Vector::basis(3, 1)],
    )?;

    let cfg = GenConfig::new(2024, 4, space);
    let margin_single = gen_margin(&cfg, &single, &[0.7])?;
    let margin_pair = gen_margin(&cfg, &pair, &[0.5, 0.4])?;
    let slack_single = gen_slack(&cfg, &single, 0.2)?;
    let slack_pair = gen_slack(&cfg, &pair, 0.2)?;

    let cases: Vec<(TheoremId, &trirev::discrete::DiscreteInstance, Option<PExp>)> = vec![
        (TheoremId::DM_SINGLE, &margin_single, None),
        (TheoremId::DM_FAMILY, &margin_pair, None),
        (TheoremId::MULT_SUMFUNC, &margin_pair, None),
        (TheoremId::MULT_CINF, &margin_pair, None),
        (TheoremId::MULT_CP, &margin_pair, Some(PExp::Finite(2.0))),
        (TheoremId::ADD_SINGLE, &slack_single, None),
        (TheoremId::ADD_FAMILY, &slack_pair, None),
        (TheoremId::ADD_CINF, &slack_pair, None),
        (TheoremId::ADD_CP, &slack_pair, Some(PExp::Finite(2.0))),
    ];

    for (theorem, inst, p) in cases {
        let res = run_check(inst, theorem, p, &tol, &search)?;
        println!(
            "{:<14} lhs = {:<22.15} rhs = {:<22.15} passed = {} hypothesis clean = {}",
            theorem.to_string(),
            res.lhs,
            res.rhs,
            res.passed,
            res.hypothesis_clean(),
        );
        if let Some(coarse) = res.coarse_rhs {
            println!("{:<14} coarser companion bound = {coarse:.15}", "");
        }
    }
    Ok(())
}
