//! Adversarial tightness probes: hill-climb over hypothesis-satisfying instances to
//! push lhs/rhs toward the proven bound. Reaching 1 up to search precision shows
//! the inequality is sharp; exceeding 1 + tolerance would be a counterexample and
//! fails the run.
//!
//! Run with: cargo run --release --example sharpness_probe

use trirev::discrete::TheoremId;
use trirev::harness::default_sharpness_params;
use trirev::instances::sharpness_search;

fn main() -> trirev::Result<()> {
    for theorem in [TheoremId::DM_SINGLE, TheoremId::MULT_SUMFUNC, TheoremId::ADD_FAMILY] {
        let params = default_sharpness_params(theorem, 42)?;
        for budget in [0u64, 100, 10_000] {
            let res = sharpness_search(theorem, &params, budget)?;
            println!(
                "{:<13} budget {:>6}: best ratio {:.12} of bound {} ({} evaluations)",
                theorem.to_string(),
                budget,
                res.best_ratio,
                res.bound,
                res.evaluations
            );
        }
        let res = sharpness_search(theorem, &params, 10_000)?;
        let witness_sum = res.witness.sum_vector();
        println!(
            "{:<13} witness sum direction: ({:.6}, {:.6})\n",
            "",
            witness_sum.entry(0).re,
            witness_sum.entry(1).re
        );
    }
    Ok(())
}
