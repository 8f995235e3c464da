//! Thin CLI over the library: slope inspection, word generation,
//! period queries, the verification scenarios, and sweeps.
//!
//! Exit codes: 0 pass, 1 assertion failure, 2 usage or parse error,
//! 3 inconclusive (precision or horizon exhausted).

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sturmian_periods::abelian;
use sturmian_periods::bounds;
use sturmian_periods::contfrac::{SlopeContext, SlopeSpec, DEFAULT_DEPTH};
use sturmian_periods::error::Error;
use sturmian_periods::harness::{self, Overrides, Report, Status, SweepKind};
use sturmian_periods::kabelian::{self, Sense};
use sturmian_periods::language;
use sturmian_periods::rotation::EndpointConvention;
use sturmian_periods::BinaryWord;

#[derive(Parser)]
#[command(name = "sturmian-periods")]
#[command(about = "Exact verification of abelian and k-abelian periods of Sturmian factors")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Certification depth: continued-fraction terms available to the
    /// bracket refinement.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH)]
    depth: usize,

    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Write the JSON report here.
    #[arg(long, global = true)]
    json: Option<std::path::PathBuf>,

    /// Write a CSV report here.
    #[arg(long, global = true)]
    csv: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Convergents, semiconvergents, and denominator sets of a slope.
    SlopeInfo {
        #[arg(long)]
        slope: String,
        /// Horizon for the denominator listing.
        #[arg(long, default_value_t = 100)]
        length: u64,
    },
    /// Generate a prefix of a Sturmian word of the slope.
    Gen {
        #[arg(long)]
        slope: String,
        #[arg(long)]
        length: usize,
        /// Intercept: "alpha" (characteristic word) or "zero".
        #[arg(long, default_value = "alpha")]
        intercept: String,
        /// Endpoint convention: "zero-in" (0 in I0) or "zero-out".
        #[arg(long, default_value = "zero-in")]
        convention: String,
    },
    /// All factors of one length.
    Factors {
        #[arg(long)]
        slope: String,
        #[arg(long)]
        length: usize,
    },
    /// The singular factor of length q_k with its structure.
    Singular {
        #[arg(long)]
        slope: String,
        #[arg(long)]
        k: usize,
    },
    /// Minimum abelian and ordinary periods of a word.
    MinPeriod {
        #[arg(long)]
        word: String,
    },
    /// Period-set sweep over all factors up to a length.
    PeriodSet {
        #[arg(long)]
        slope: String,
        #[arg(long)]
        length: usize,
        /// "abelian" or "ordinary".
        #[arg(long, default_value = "abelian")]
        kind: String,
    },
    /// k-abelian periods of a word, or class counts for a slope.
    Kab {
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        slope: Option<String>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Period sense: 1 (power cover) or 2 (decomposition).
        #[arg(long, default_value_t = 1)]
        sense: u8,
        /// With --slope: count classes among factors of this length.
        #[arg(long)]
        length: Option<usize>,
    },
    /// Admissibility pre-filter and exponent lemmas for a candidate m.
    Bounds {
        #[arg(long)]
        slope: String,
        #[arg(long)]
        m: u64,
    },
    /// Run one named verification scenario, or all of them.
    Verify {
        /// Scenario name, or "all"; use "list" to print the registry.
        scenario: String,
    },
    /// Generalized period-set sweep with a machine-readable report.
    Sweep {
        #[arg(long)]
        slope: String,
        #[arg(long)]
        length: usize,
        /// "abelian", "ordinary", or "kabelian".
        #[arg(long, default_value = "abelian")]
        kind: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        sense: u8,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::SlopeParse { .. }
                | Error::WordParse { .. }
                | Error::UnnormalizedSlope
                | Error::UnknownScenario { .. }
                | Error::PreconditionFailed { .. } => 2,
                ref other if other.is_inconclusive() => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> sturmian_periods::Result<ExitCode> {
    let overrides = Overrides { depth: Some(cli.common.depth), workers: cli.common.workers };
    match cli.command {
        Command::SlopeInfo { slope, length } => {
            let ctx = context(&slope, &cli.common)?;
            let pairs = ctx.convergents_up_to(length)?;
            let sets = ctx.denominator_sets(length)?;
            println!("slope {slope}");
            println!("  k   p_k / q_k");
            for (k, (p, q)) in pairs.iter().enumerate() {
                println!("  {k:<3} {p} / {q}");
            }
            let semis: Vec<u64> =
                sets.with_semiconvergents.difference(&sets.convergents).copied().collect();
            println!("  semiconvergent denominators <= {length}: {semis:?}");
            println!(
                "  admitted multiples <= {length}: {:?}",
                sets.multiples.iter().collect::<Vec<_>>()
            );
            let observed = json!({
                "numerators": pairs.iter().map(|(p, _)| p.to_string()).collect::<Vec<_>>(),
                "denominators": pairs.iter().map(|(_, q)| q.to_string()).collect::<Vec<_>>(),
                "semiconvergents": semis,
                "multiples": sets.multiples.iter().collect::<Vec<_>>(),
            });
            finish_info(&cli.common, "slope-info", &slope, observed, ctx.depth_used())
        }
        Command::Gen { slope, length, intercept, convention } => {
            let ctx = context(&slope, &cli.common)?;
            let conv = parse_convention(&convention)?;
            let word = match intercept.as_str() {
                "alpha" => language::characteristic_prefix(&ctx, length)?,
                "zero" => sturmian_periods::rotation::code_orbit(
                    &ctx,
                    &sturmian_periods::rotation::TPoint::zero(),
                    length,
                    conv,
                )?,
                other => {
                    return Err(Error::PreconditionFailed {
                        what: format!("unknown intercept {other:?} (use alpha or zero)"),
                    })
                }
            };
            println!("{word}");
            let observed = json!({ "word": word.to_string() });
            finish_info(&cli.common, "gen", &slope, observed, ctx.depth_used())
        }
        Command::Factors { slope, length } => {
            let ctx = context(&slope, &cli.common)?;
            let factors = language::factors_of_length(&ctx, length)?;
            for f in &factors {
                println!("{f}");
            }
            let observed =
                json!({ "factors": factors.iter().map(|f| f.to_string()).collect::<Vec<_>>() });
            finish_info(&cli.common, "factors", &slope, observed, ctx.depth_used())
        }
        Command::Singular { slope, k } => {
            let ctx = context(&slope, &cli.common)?;
            let s = language::singular_factor(&ctx, k)?;
            let q = ctx.q_u64(k)?;
            let analysis = language::same_phase_return_analysis(&ctx, k, None)?;
            let q_next = ctx.q_u64(k + 1)? as usize;
            let returns = language::return_structure(
                &ctx,
                &s,
                (16 * (q_next + q as usize)).max(512),
            )?;
            let formula = ctx.abelian_exponent(q)?;
            println!("singular factor of length q_{k} = {q}: {s}");
            println!("  palindrome: {}", s.is_palindrome());
            println!("  returns: {returns:?}");
            println!(
                "  covering power exponent {} (formula value {formula})",
                analysis.exponent_of_core
            );
            let observed = json!({
                "singular": s.to_string(),
                "q": q,
                "palindrome": s.is_palindrome(),
                "returns": returns.iter().collect::<Vec<_>>(),
                "core_exponent": analysis.exponent_of_core,
                "lambda_bound": analysis.lambda_bound,
            });
            finish_info(&cli.common, "singular", &slope, observed, ctx.depth_used())
        }
        Command::MinPeriod { word } => {
            let w: BinaryWord = word.parse()?;
            if w.is_empty() {
                return Err(Error::PreconditionFailed { what: "word must be nonempty".into() });
            }
            let mu = abelian::min_abelian_period(&w);
            let p = abelian::min_period(&w);
            println!("word {w}");
            println!("  minimum abelian period: {mu}");
            println!("  minimum period: {p}");
            let observed = json!({ "abelian": mu, "ordinary": p });
            finish_info(&cli.common, "min-period", "", observed, 0)
        }
        Command::PeriodSet { slope, length, kind } => {
            let sweep_kind = match kind.as_str() {
                "abelian" => SweepKind::Abelian,
                "ordinary" => SweepKind::Ordinary,
                other => {
                    return Err(Error::PreconditionFailed {
                        what: format!("unknown kind {other:?} (use abelian or ordinary)"),
                    })
                }
            };
            let report = harness::sweep(&slope, length, sweep_kind, overrides)?;
            println!(
                "{} period set of factors up to {length}: {}",
                kind, report.observed["period_set"]
            );
            emit(&cli.common, &report)
        }
        Command::Kab { word, slope, k, sense, length } => match (word, slope) {
            (Some(word), slope) => {
                let w: BinaryWord = word.parse()?;
                let mu_ab = abelian::min_abelian_period(&w);
                let period = match sense {
                    1 => kabelian::sense1_min_period(&w, k)?,
                    2 => kabelian::sense2_min_period(&w, k),
                    _ => {
                        return Err(Error::PreconditionFailed {
                            what: "sense must be 1 or 2".into(),
                        })
                    }
                };
                println!("word {w}");
                println!("  minimum abelian period: {mu_ab}");
                println!("  minimum {k}-abelian period (sense {sense}): {period}");
                let observed = json!({ "abelian": mu_ab, "k": k, "sense": sense, "period": period });
                finish_info(&cli.common, "kab", slope.as_deref().unwrap_or(""), observed, 0)
            }
            (None, Some(slope)) => {
                let n = length.ok_or_else(|| Error::PreconditionFailed {
                    what: "--length is required for class counting".into(),
                })?;
                let ctx = context(&slope, &cli.common)?;
                let classes = kabelian::count_k_classes(&ctx, n, k)?;
                println!("{classes} {k}-abelian classes among factors of length {n}");
                let observed = json!({ "n": n, "k": k, "classes": classes });
                finish_info(&cli.common, "kab", &slope, observed, ctx.depth_used())
            }
            (None, None) => Err(Error::PreconditionFailed {
                what: "kab needs --word or --slope".into(),
            }),
        },
        Command::Bounds { slope, m } => {
            let ctx = context(&slope, &cli.common)?;
            let location = bounds::locate(&ctx, m)?;
            let inequality = bounds::main_inequality(&ctx, m)?;
            let lemmas = bounds::exponent_bounds(&ctx, m)?;
            let verdicts = bounds::admissible_periods(&ctx, m)?;
            let verdict = verdicts[&m];
            println!("m = {m}: k = {}, t = {} (q_k = {})", location.k, location.t, ctx.q_u64(location.k)?);
            println!("  abelian exponent: {}", inequality.exponent);
            println!(
                "  inequality: lhs {} {} rhs {}",
                inequality.lhs,
                if inequality.holds { "<=" } else { ">" },
                inequality.rhs
            );
            println!("  verdict: {verdict:?}");
            let observed = json!({
                "k": location.k,
                "t": location.t,
                "exponent": inequality.exponent,
                "lhs": inequality.lhs.to_string(),
                "rhs": inequality.rhs.to_string(),
                "holds": inequality.holds,
                "verdict": verdict,
                "lemmas_consistent": lemmas.all_consistent(),
            });
            finish_info(&cli.common, "bounds", &slope, observed, ctx.depth_used())
        }
        Command::Verify { scenario } => match scenario.as_str() {
            "list" => {
                for name in harness::scenario_names() {
                    println!("{name}");
                }
                Ok(ExitCode::SUCCESS)
            }
            "all" => {
                let reports = harness::run_all(overrides);
                let mut worst = Status::Pass;
                for report in &reports {
                    print_report_line(report);
                    worst = match (worst, report.status) {
                        (_, Status::Fail) | (Status::Fail, _) => Status::Fail,
                        (_, Status::Inconclusive) | (Status::Inconclusive, _) => Status::Inconclusive,
                        _ => Status::Pass,
                    };
                }
                write_outputs(&cli.common, &reports)?;
                Ok(ExitCode::from(match worst {
                    Status::Pass => 0,
                    Status::Fail => 1,
                    Status::Inconclusive => 3,
                }))
            }
            name => {
                let report = harness::run_scenario(name, overrides)?;
                print_report_line(&report);
                emit(&cli.common, &report)
            }
        },
        Command::Sweep { slope, length, kind, k, sense } => {
            let sweep_kind = match kind.as_str() {
                "abelian" => SweepKind::Abelian,
                "ordinary" => SweepKind::Ordinary,
                "kabelian" => SweepKind::KAbelian {
                    k,
                    sense: match sense {
                        1 => Sense::First,
                        2 => Sense::Second,
                        _ => {
                            return Err(Error::PreconditionFailed {
                                what: "sense must be 1 or 2".into(),
                            })
                        }
                    },
                },
                other => {
                    return Err(Error::PreconditionFailed {
                        what: format!("unknown kind {other:?} (use abelian, ordinary, or kabelian)"),
                    })
                }
            };
            let report = harness::sweep(&slope, length, sweep_kind, overrides)?;
            println!("period set: {}", report.observed["period_set"]);
            emit(&cli.common, &report)
        }
    }
}

fn context(slope: &str, common: &Common) -> sturmian_periods::Result<SlopeContext> {
    let spec: SlopeSpec = slope.parse()?;
    Ok(SlopeContext::with_depth(spec, common.depth))
}

fn parse_convention(text: &str) -> sturmian_periods::Result<EndpointConvention> {
    match text {
        "zero-in" => Ok(EndpointConvention::ZeroInI0),
        "zero-out" => Ok(EndpointConvention::ZeroNotInI0),
        other => Err(Error::PreconditionFailed {
            what: format!("unknown convention {other:?} (use zero-in or zero-out)"),
        }),
    }
}

fn print_report_line(report: &Report) {
    let tag = match report.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Inconclusive => "INCONCLUSIVE",
    };
    println!("[{tag}] {} ({:.0} ms)", report.scenario, report.ms);
}

/// Writes an informational (always-pass) report for query commands.
fn finish_info(
    common: &Common,
    what: &str,
    slope: &str,
    observed: Value,
    depth: usize,
) -> sturmian_periods::Result<ExitCode> {
    let report = Report {
        scenario: what.to_string(),
        slope: slope.to_string(),
        params: Value::Null,
        observed,
        expected: Value::Null,
        status: Status::Pass,
        depth,
        ms: 0.0,
    };
    write_outputs(common, std::slice::from_ref(&report))?;
    Ok(ExitCode::SUCCESS)
}

fn emit(common: &Common, report: &Report) -> sturmian_periods::Result<ExitCode> {
    write_outputs(common, std::slice::from_ref(report))?;
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn write_outputs(common: &Common, reports: &[Report]) -> sturmian_periods::Result<()> {
    let io_err = |e: std::io::Error| Error::PreconditionFailed { what: format!("io: {e}") };
    if let Some(path) = &common.json {
        let value = if reports.len() == 1 {
            reports[0].to_json()
        } else {
            Value::Array(reports.iter().map(Report::to_json).collect())
        };
        std::fs::write(path, serde_json::to_string_pretty(&value).unwrap()).map_err(io_err)?;
    }
    if let Some(path) = &common.csv {
        let mut out = String::from(Report::csv_header());
        out.push('\n');
        for report in reports {
            out.push_str(&report.to_csv_row());
            out.push('\n');
        }
        let mut file = std::fs::File::create(path).map_err(io_err)?;
        file.write_all(out.as_bytes()).map_err(io_err)?;
    }
    Ok(())
}
