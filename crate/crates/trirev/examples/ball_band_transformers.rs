//! Geometric hypotheses into theorem-ready constants: points confined to a ball
//! ‖x − a‖ ≤ ρ < ‖a‖ acquire the margin (‖a‖² − ρ²)^{1/2}; points in the band
//! Re⟨My − x, x − my⟩ ≥ 0 acquire 2√(mM)/(m+M)·‖y‖; the additive counterparts
//! yield the slacks ½ρ² and ¼(M−m)²/(M+m)·‖y‖².
//!
//! Run with: cargo run --example ball_band_transformers

use trirev::space::{SpaceSpec, Vector};
use trirev::transform::{
    ball_to_margin, ball_to_slack, band_to_margin, band_to_slack, BallHypothesis, BandHypothesis,
};

fn main() -> trirev::Result<()> {
    let s = SpaceSpec::euclidean(2);
    let e = Vector::real(&[1.0, 0.0])?;

    let ball = BallHypothesis::new(e.clone(), 0.6)?;
    println!("ball radius 0.6 around unit center:");
    println!("  margin r = {}", ball_to_margin(&s, &ball)?);
    println!("  slack    = {}", ball_to_slack(0.6)?);

    let band = BandHypothesis::new(e.clone(), 1.0, 4.0)?;
    println!("band [1, 4] along a unit direction:");
    println!("  margin r = {}", band_to_margin(&s, &band)?);
    println!("  slack    = {}", band_to_slack(&s, &band)?);
    let eq = band.to_ball(&s)?;
    println!(
        "  equivalent ball: center scale {}, radius {}",
        eq.center.entry(0).re,
        eq.radius
    );

    // the margin lemma's equality witness: ‖x − a‖ = r and ‖x‖² + r² = ‖a‖²
    let x = Vector::real(&[0.64, 0.48])?;
    let r = 0.6;
    let margin = ball_to_margin(&s, &BallHypothesis::new(e.clone(), r)?)?;
    let attained = trirev::space::inner(&s, &x, &e)?.re;
    let nx = trirev::space::norm(&s, &x)?;
    println!("equality witness x = (0.64, 0.48):");
    println!("  margin·|x| = {}   Re<x,a> = {attained}", margin * nx);

    // degenerate radius pins the margin at the center norm; radius >= |center| is
    // rejected because the lemma needs r < |a|
    println!("  radius 0 margin = {}", ball_to_margin(&s, &BallHypothesis::new(e.clone(), 0.0)?)?);
    match ball_to_margin(&s, &BallHypothesis::new(e, 1.0)?) {
        Err(err) => println!("  radius 1 -> {err}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
