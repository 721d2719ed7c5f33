//! Programmatic suite runs: configure, execute, inspect the structured report, and
//! round-trip a serialised witness back into a re-checkable instance.
//!
//! Run with: cargo run --release --example verify_report

use trirev::discrete::TheoremId;
use trirev::functional::SearchConfig;
use trirev::harness::{run_suite, Suite, SuiteConfig};
use trirev::instances::{gen_margin, GenConfig};
use trirev::functional::FunctionalFamily;
use trirev::report::WitnessInstance;
use trirev::space::{SpaceSpec, Vector};
use trirev::tol::Tolerance;

fn main() -> trirev::Result<()> {
    let cfg = SuiteConfig {
        suites: vec![Suite::Discrete, Suite::Constants],
        trials: 25,
        seed: 42,
        ..Default::default()
    };
    let report = run_suite(&cfg)?;
    println!(
        "{} records, {} trials, violations: {}, all passed: {}",
        report.summary.records,
        report.summary.total_trials,
        report.summary.total_violations,
        report.summary.all_passed
    );
    for rec in report.records.iter().take(4) {
        println!(
            "  {:<22} trials {:>4}  worst excess {:+.3e}  equality gap {:.3e}",
            rec.theorem_id, rec.trials, rec.max_violation, rec.equality_max_gap
        );
    }

    // deterministic: the same config reproduces the same report (timestamp aside)
    let again = run_suite(&cfg)?;
    println!(
        "deterministic: {}",
        report.to_json_without_timestamp()? == again.to_json_without_timestamp()?
    );

    // witnesses serialise as arrays of (re, im) pairs and re-check identically
    let space = SpaceSpec::euclidean(2);
    let fam = FunctionalFamily::from_directions(space, &[Vector::basis(2, 0)])?;
    let inst = gen_margin(&GenConfig::new(1, 2, space), &fam, &[0.5])?;
    let witness = WitnessInstance::from_instance(&inst, TheoremId::DM_SINGLE, None);
    let json = serde_json::to_string_pretty(&witness).expect("serialises");
    println!("witness excerpt:\n{}", &json[..json.len().min(400)]);
    let back: WitnessInstance = serde_json::from_str(&json).expect("parses");
    let re = back.recheck(&Tolerance::default(), &SearchConfig::default())?;
    println!("re-checked witness: lhs {} <= rhs {} ({})", re.lhs, re.rhs, re.passed);
    Ok(())
}
