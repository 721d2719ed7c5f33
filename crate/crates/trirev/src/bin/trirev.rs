//! Thin command-line front end over the library suites.
//!
//! Exit codes: 0 all pass, 2 bound violation, 3 construction/convergence failure,
//! 4 bad configuration.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use trirev::discrete::TheoremId;
use trirev::error::Error;
use trirev::functional::SearchConfig;
use trirev::harness::{
    constants_report, run_suite, sharpness_report, Suite, SuiteConfig, DEFAULT_SEED,
};
use trirev::quadrature::QuadRule;
use trirev::space::{Field, NormKind, PExp, SpaceSpec};

#[derive(Parser)]
#[command(name = "trirev", about = "Reverse triangle inequality verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and emit a structured report.
    Verify(VerifyArgs),
    /// Estimate a family constant c_p / c_inf with certificate.
    Constants(ConstantsArgs),
    /// Probe the tightness of a discrete bound.
    Sharpness(SharpnessArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run (repeatable): discrete|continuous|complex_scalars|constants|sharpness|all.
    #[arg(long = "suite")]
    suites: Vec<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "tol-abs")]
    tol_abs: Option<f64>,
    #[arg(long = "tol-rel")]
    tol_rel: Option<f64>,
    /// Report output path (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value config file; CLI flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "quad-order")]
    quad_order: Option<usize>,
    #[arg(long = "quad-panels")]
    quad_panels: Option<usize>,
    /// Quadrature rule: gauss (default) or simpson.
    #[arg(long = "quad-rule")]
    quad_rule: Option<String>,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Space family: lp or cmod.
    #[arg(long, default_value = "lp")]
    space: String,
    /// Aggregation exponent of the family constant (number or "inf").
    #[arg(long, default_value = "2")]
    p: String,
    /// Norm exponent of the space itself (number or "inf").
    #[arg(long = "space-p", default_value = "2")]
    space_p: String,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 2)]
    members: usize,
    #[arg(long, default_value_t = 64)]
    starts: usize,
    #[arg(long, default_value_t = 500)]
    iters: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct SharpnessArgs {
    /// Discrete theorem id (e.g. DM_SINGLE, MULT_SUMFUNC).
    #[arg(long)]
    theorem: String,
    #[arg(long, default_value_t = 10_000)]
    budget: u64,
    #[arg(long)]
    seed: Option<u64>,
}

fn env_seed() -> Option<u64> {
    std::env::var("TRIREV_SEED").ok()?.trim().parse().ok()
}

/// Plain key=value lines; '#' starts a comment.
fn apply_config_file(path: &PathBuf, cfg: &mut SuiteConfig) -> Result<(), Error> {
    let text = std::fs::read_to_string(path)?;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidConfig(format!("line {}: expected key=value", lineno + 1))
        })?;
        let (key, value) = (key.trim(), value.trim());
        let parse_err =
            |e: String| Error::InvalidConfig(format!("line {}: {e}", lineno + 1));
        match key {
            "suite" | "suites" => {
                cfg.suites = parse_suites(&value.split(',').map(str::to_string).collect::<Vec<_>>())?;
            }
            "trials" => {
                cfg.trials = value
                    .parse()
                    .map_err(|e| parse_err(format!("trials: {e}")))?;
            }
            "seed" => {
                cfg.seed = value.parse().map_err(|e| parse_err(format!("seed: {e}")))?;
            }
            "tol_abs" => {
                cfg.tol.abs = value
                    .parse()
                    .map_err(|e| parse_err(format!("tol_abs: {e}")))?;
            }
            "tol_rel" => {
                cfg.tol.rel = value
                    .parse()
                    .map_err(|e| parse_err(format!("tol_rel: {e}")))?;
            }
            "out" => cfg.out = Some(PathBuf::from(value)),
            "quad_order" => {
                let order = value
                    .parse()
                    .map_err(|e| parse_err(format!("quad_order: {e}")))?;
                cfg.quad.rule = QuadRule::GaussLegendre(order);
            }
            "quad_panels" => {
                cfg.quad.panels = value
                    .parse()
                    .map_err(|e| parse_err(format!("quad_panels: {e}")))?;
            }
            "quad_rule" => {
                cfg.quad.rule = parse_quad_rule(value, None)?;
            }
            other => {
                return Err(Error::InvalidConfig(format!(
                    "line {}: unknown key {other:?}",
                    lineno + 1
                )))
            }
        }
    }
    Ok(())
}

fn parse_quad_rule(rule: &str, order: Option<usize>) -> Result<QuadRule, Error> {
    match rule.trim().to_ascii_lowercase().as_str() {
        "simpson" => Ok(QuadRule::Simpson),
        "gauss" | "gauss_legendre" => Ok(QuadRule::GaussLegendre(order.unwrap_or(8))),
        other => Err(Error::InvalidConfig(format!(
            "unknown quadrature rule {other:?}; expected gauss or simpson"
        ))),
    }
}

fn parse_suites(names: &[String]) -> Result<Vec<Suite>, Error> {
    let mut out = Vec::new();
    for name in names {
        for piece in name.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            if piece.eq_ignore_ascii_case("all") {
                for s in Suite::ALL {
                    if !out.contains(&s) {
                        out.push(s);
                    }
                }
            } else {
                let s: Suite = piece.parse()?;
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    Ok(out)
}

fn verify(args: &VerifyArgs) -> Result<u8, Error> {
    let mut cfg = SuiteConfig::default();
    if let Some(path) = &args.config {
        apply_config_file(path, &mut cfg)?;
    }
    if !args.suites.is_empty() {
        cfg.suites = parse_suites(&args.suites)?;
    }
    if cfg.suites.is_empty() {
        cfg.suites = Suite::ALL.to_vec();
    }
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    if let Some(s) = args.seed.or_else(env_seed) {
        cfg.seed = s;
    }
    if let Some(a) = args.tol_abs {
        cfg.tol.abs = a;
    }
    if let Some(r) = args.tol_rel {
        cfg.tol.rel = r;
    }
    if let Some(rule) = &args.quad_rule {
        cfg.quad.rule = parse_quad_rule(rule, args.quad_order)?;
    } else if let Some(order) = args.quad_order {
        cfg.quad.rule = QuadRule::GaussLegendre(order);
    }
    if let Some(panels) = args.quad_panels {
        cfg.quad.panels = panels;
    }
    if let Some(out) = &args.out {
        cfg.out = Some(out.clone());
    }
    cfg.validate()?;

    let report = run_suite(&cfg)?;
    let json = report.to_json()?;
    match &cfg.out {
        Some(path) => std::fs::write(path, json)?,
        None => {
            std::io::stdout().write_all(json.as_bytes())?;
        }
    }
    Ok(if report.summary.all_passed { 0 } else { 2 })
}

fn constants(args: &ConstantsArgs) -> Result<u8, Error> {
    let p: PExp = args.p.parse()?;
    let space_p: PExp = args.space_p.parse()?;
    let space = match args.space.trim().to_ascii_lowercase().as_str() {
        "lp" => SpaceSpec::new(args.dim, Field::Real, NormKind::Lp(space_p))?,
        "cmod" => SpaceSpec::cmod(space_p),
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown space {other:?}; expected lp or cmod"
            )))
        }
    };
    let search = SearchConfig {
        starts: args.starts,
        iters: args.iters,
        seed: args.seed.or_else(env_seed).unwrap_or(DEFAULT_SEED),
    };
    let doc = constants_report(space, p, args.members, &search)?;
    println!("{}", serde_json::to_string_pretty(&doc).map_err(|e| {
        Error::InvalidConfig(format!("serialisation: {e}"))
    })?);
    Ok(0)
}

fn sharpness(args: &SharpnessArgs) -> Result<u8, Error> {
    let theorem: TheoremId = args.theorem.parse()?;
    let seed = args.seed.or_else(env_seed).unwrap_or(DEFAULT_SEED);
    let (doc, exceeded) = sharpness_report(theorem, args.budget, seed)?;
    println!("{}", serde_json::to_string_pretty(&doc).map_err(|e| {
        Error::InvalidConfig(format!("serialisation: {e}"))
    })?);
    Ok(if exceeded { 2 } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify(args) => verify(args),
        Command::Constants(args) => constants(args),
        Command::Sharpness(args) => sharpness(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("trirev: {e}");
            let code = match e {
                Error::InvalidConfig(_) | Error::Io(_) => 4,
                Error::ConstructionFailure(_) | Error::ConvergenceFailure(_) => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
