mod error;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use cai_core::approx_roots::approx_roots_for_curve;
use cai_core::atlas::{emit_atlas, AtlasFormat};
use cai_core::moduli::{
    build_positive_braid_curve, solve_for_x_with_retries, solve_random_y, FreePolicy, ModuliSolveReport,
    DEFAULT_MAX_RETRIES,
};
use cai_core::recognize::{
    defining_terms, expand_at_infinity, expand_at_infinity_with_order, recognize, PuiseuxExpansion, Recognition,
};
use cai_core::semigroup::SemigroupTower;
use cai_core::{parse_unipoly, ParamCurve, PuiseuxChain};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use error::CliError;

#[derive(Parser)]
#[command(name = "cai", version, about = "Links at infinity of polynomially parametrised plane curves")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the document here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct ChainArg {
    /// Chain as JSON: `{"pairs": [[2,3],[5,2]]}` or `[[2,3],[5,2]]`.
    #[arg(long)]
    chain: String,
}

#[derive(Args)]
struct CurveArgs {
    /// x(t), e.g. "t^12 + t".
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// y(t), e.g. "t^8 + t^2".
    #[arg(long, allow_hyphen_values = true)]
    y: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Free {
    Zero,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Check the three realisability conditions of a chain.
    Validate(ChainArg),
    /// Genus, d_k, self-linking numbers and flags of a valid chain.
    Invariants(ChainArg),
    /// Recover the chain and defining polynomial of a parametrised curve.
    Recognize {
        #[command(flatten)]
        curve: CurveArgs,
        /// Include the defining polynomial as (i, j, c) terms of c x^i y^j.
        #[arg(long)]
        emit_defining: bool,
        /// Include the generators y_2, ..., y_n.
        #[arg(long)]
        emit_tower: bool,
        /// Also expand at infinity to this truncation order.
        #[arg(long, value_name = "ORDER")]
        expand: Option<i64>,
    },
    /// Semigroup tower of a chain: generators, conductor bounds, gap sizes.
    Semigroup {
        #[command(flatten)]
        chain: ChainArg,
        /// List the gaps of the top level.
        #[arg(long)]
        gaps: bool,
        /// Normal form of this value.
        #[arg(long, value_name = "V")]
        normal_form: Option<u64>,
        /// Level for --normal-form (default: top).
        #[arg(long, value_name = "K", requires = "normal_form")]
        level: Option<usize>,
    },
    /// Approximate roots of the defining polynomial and their pole orders.
    ApproxRoots(CurveArgs),
    /// Puiseux expansion of y in powers of x^(-1/N) at infinity.
    Expand {
        #[command(flatten)]
        curve: CurveArgs,
        /// Truncation order (default: chosen and retried automatically).
        #[arg(long)]
        order: Option<i64>,
    },
    /// Solve for x(t) realising a chain with y(t) given or random.
    Solve {
        #[command(flatten)]
        chain: ChainArg,
        /// y(t), monic of degree p_1 q_2...q_n; random when omitted.
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        /// How unconstrained coefficients of x are chosen.
        #[arg(long, value_enum, default_value_t = Free::Zero)]
        free: Free,
        #[arg(long)]
        seed: Option<u64>,
        /// Retry budget for degenerate outcomes.
        #[arg(long, env = "CAI_MAX_RETRIES")]
        max_retries: Option<u32>,
    },
    /// Build a curve whose knot at infinity is a given positive braid.
    Build {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Enumerate every valid chain of a degree.
    Enumerate {
        #[arg(long)]
        degree: u64,
        /// Keep positive braids (the default).
        #[arg(long)]
        include_positive_braids: bool,
        /// Drop positive braids.
        #[arg(long, conflicts_with = "include_positive_braids")]
        exclude_positive_braids: bool,
    },
}

/// A document to print, and the failure to report after printing it.
struct Outcome {
    doc: Value,
    failure: Option<CliError>,
}

impl From<Value> for Outcome {
    fn from(doc: Value) -> Self {
        Self { doc, failure: None }
    }
}

fn parse_chain(src: &str) -> Result<PuiseuxChain, CliError> {
    Ok(PuiseuxChain::from_json(src)?)
}

fn parse_curve(args: &CurveArgs) -> Result<ParamCurve, CliError> {
    Ok(ParamCurve::new(parse_unipoly(&args.x)?, parse_unipoly(&args.y)?))
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

fn defining_json(p: &cai_core::TowerPoly) -> Value {
    defining_terms(p)
        .into_iter()
        .map(|(i, j, c)| json!([i, j, c.to_string()]))
        .collect()
}

fn expansion_json(e: &PuiseuxExpansion) -> Value {
    json!({
        "degree": e.degree,
        "jump_positions": e.jump_positions,
        "denominators": e.denominators,
        "exponent_jumps": e.exponent_jumps,
        "truncation_order": e.truncation_order,
        "chain": e.chain().ok(),
        "series": e.series.to_string(),
    })
}

fn validate(chain: &str) -> Result<Outcome, CliError> {
    let chain = parse_chain(chain)?;
    let report = chain.validate();
    let doc = json!({ "chain": chain, "valid": report.is_valid(), "conditions": report.conditions });
    let failure = (!report.is_valid()).then(|| CliError::domain("INVALID_CHAIN", &report));
    Ok(Outcome { doc, failure })
}

fn invariants(chain: &str) -> Result<Outcome, CliError> {
    let chain = parse_chain(chain)?;
    let inv = chain.invariants()?;
    let mut doc = serde_json::to_value(&inv).expect("serialisable");
    let deltas: Vec<i64> = (1..=chain.len()).map(|k| chain.delta(k)).collect();
    doc["chain"] = json!(chain);
    doc["deltas"] = json!(deltas);
    doc["pole_orders"] = json!(chain.pole_orders());
    Ok(doc.into())
}

fn recognize_cmd(args: &CurveArgs, emit_defining: bool, emit_tower: bool, expand: Option<i64>) -> Result<Outcome, CliError> {
    let curve = parse_curve(args)?;
    let mut doc = match recognize(&curve)? {
        Recognition::Line { defining, preprocessing } => json!({
            "line": true,
            "chain": null,
            "preprocessing": preprocessing.log,
            "defining": defining_json(&defining),
        }),
        Recognition::Curve(r) => {
            let mut doc = json!({
                "line": false,
                "chain": r.chain,
                "pole_orders": r.pole_orders,
                "stages": r.stages,
                "preprocessing": r.preprocessing.log,
            });
            if emit_defining {
                doc["defining"] = defining_json(&r.defining);
            }
            if emit_tower {
                doc["tower"] = json!(strings(&r.tower));
            }
            doc
        }
    };
    if let Some(order) = expand {
        doc["expansion"] = expansion_json(&expand_at_infinity_with_order(&curve, order)?);
    }
    Ok(doc.into())
}

fn semigroup(chain: &str, gaps: bool, normal_form: Option<u64>, level: Option<usize>) -> Result<Outcome, CliError> {
    let chain = parse_chain(chain)?;
    let tower = SemigroupTower::new(&chain)?;
    let mut doc = serde_json::to_value(&tower).expect("serialisable");
    doc["chain"] = json!(chain);
    if gaps {
        doc["gaps"] = json!(tower.gaps(chain.len())?);
    }
    if let Some(v) = normal_form {
        let k = level.unwrap_or(chain.len());
        doc["normal_form"] = json!({ "level": k, "value": v, "form": tower.normal_form(k, v)? });
    }
    Ok(doc.into())
}

fn approx_roots(args: &CurveArgs) -> Result<Outcome, CliError> {
    let curve = parse_curve(args)?;
    let (set, report) = approx_roots_for_curve(&curve)?;
    let failure = (!report.all_match()).then(|| CliError::domain("POLE_ORDER_MISMATCH", format!("{:?}", report.rows)));
    let doc = json!({
        "chain": set.chain,
        "target": set.target.to_string(),
        "roots": strings(&set.roots),
        "pole_orders": report.rows,
        "all_match": report.all_match(),
    });
    Ok(Outcome { doc, failure })
}

fn expand(args: &CurveArgs, order: Option<i64>) -> Result<Outcome, CliError> {
    let curve = parse_curve(args)?;
    let e = match order {
        Some(o) => expand_at_infinity_with_order(&curve, o)?,
        None => expand_at_infinity(&curve)?,
    };
    Ok(expansion_json(&e).into())
}

fn report_json(r: &ModuliSolveReport, policy: &str) -> Value {
    json!({
        "chain": r.chain,
        "x": r.x.to_string(),
        "y": r.y.to_string(),
        "free_policy": policy,
        "free_parameters": r.free_parameters,
        "solved": r.solved,
        "stage_leading_coeffs": strings(&r.stage_leading_coeffs),
        "degenerate": r.degenerate,
        "expected_dimension": r.expected_dimension,
        "seed": r.seed,
        "attempts": r.attempts,
    })
}

fn solve(chain: &str, y: Option<&str>, free: Free, seed: Option<u64>, max_retries: Option<u32>) -> Result<Outcome, CliError> {
    let chain = parse_chain(chain)?;
    let retries = max_retries.unwrap_or(DEFAULT_MAX_RETRIES);
    let policy = match free {
        Free::Zero => FreePolicy::Zero,
        Free::Random => FreePolicy::Random { seed: seed.unwrap_or(0) },
    };
    let (report, policy_name) = match y {
        Some(y) => {
            let y = parse_unipoly(y)?;
            let name = if free == Free::Zero { "zero" } else { "random" };
            (solve_for_x_with_retries(&chain, &y, policy, retries)?, name)
        }
        None => (solve_random_y(&chain, seed.unwrap_or(0), Some(retries))?, "random"),
    };
    Ok(report_json(&report, policy_name).into())
}

fn build(chain: &str, seed: u64) -> Result<Outcome, CliError> {
    let chain = parse_chain(chain)?;
    let curve = build_positive_braid_curve(&chain, seed)?;
    let verified = recognize(&curve)?.chain() == Some(&chain);
    let doc = json!({
        "chain": chain,
        "x": curve.x.to_string(),
        "y": curve.y.to_string(),
        "seed": seed,
        "verified": verified,
    });
    let failure = (!verified).then(|| CliError::domain("ROUND_TRIP", "built curve does not recognise as the chain"));
    Ok(Outcome { doc, failure })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Validate(c) => validate(&c.chain),
        Command::Invariants(c) => invariants(&c.chain),
        Command::Recognize {
            curve,
            emit_defining,
            emit_tower,
            expand,
        } => recognize_cmd(curve, *emit_defining, *emit_tower, *expand),
        Command::Semigroup {
            chain,
            gaps,
            normal_form,
            level,
        } => semigroup(&chain.chain, *gaps, *normal_form, *level),
        Command::ApproxRoots(curve) => approx_roots(curve),
        Command::Expand { curve, order } => expand(curve, *order),
        Command::Solve {
            chain,
            y,
            free,
            seed,
            max_retries,
        } => solve(&chain.chain, y.as_deref(), *free, *seed, *max_retries),
        Command::Build { chain, seed } => build(&chain.chain, *seed),
        Command::Enumerate {
            degree,
            exclude_positive_braids,
            ..
        } => {
            if *degree < 2 {
                return Err(CliError::usage("BAD_DEGREE", "degree must be at least 2"));
            }
            let doc = emit_atlas(*degree, !exclude_positive_braids, AtlasFormat::Json);
            Ok(serde_json::from_str::<Value>(&doc).expect("atlas emits JSON").into())
        }
    }
}

fn render(cli: &Cli, doc: &Value) -> String {
    match (cli.format, &cli.command) {
        (Format::Json, _) => render::json(doc),
        (
            Format::Table,
            Command::Enumerate {
                degree,
                exclude_positive_braids,
                ..
            },
        ) => emit_atlas(*degree, !exclude_positive_braids, AtlasFormat::Table),
        (Format::Table, _) => render::table(doc),
    }
}

fn report_error(cli: &Cli, e: &CliError) -> ExitCode {
    match cli.format {
        Format::Json => eprint!("{}", render::json(&e.to_json())),
        Format::Table => eprintln!("error[{}]: {}", e.code, e.detail),
    }
    ExitCode::from(e.exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => return report_error(&cli, &e),
    };
    let text = render(&cli, &outcome.doc);
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::domain("IO_ERROR", format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    match (written, outcome.failure) {
        (Err(e), _) | (Ok(()), Some(e)) => report_error(&cli, &e),
        (Ok(()), None) => ExitCode::SUCCESS,
    }
}
