//! bp2: pair partitions, broken-pair-partition diagrams, weight functions,
//! Wick calculus and exact GNS positivity certification on the command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 computed mathematical negative
//! (e.g. a Gram matrix certified NOT positive, or a failed check suite).

mod checks;
mod parse;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bp2_core::gns::report::{GramReportJson, ThetaReportJson};
use bp2_core::gns::{fock_model, gram_model, theta_matrix, GnsError};
use bp2_core::kernel::{symmetric_eigs, PsdCertificate, Scalar};
use bp2_core::partitions::PairPartition;
use bp2_core::semigroup::{standard_form, Token};
use bp2_core::weights::Weight;
use bp2_core::wick::{
    fock_moment, gaussian_moment, moments_from_wick, wick_from_moments, wick_inner_product,
    CAPattern,
};

use parse::{parse_field_word, parse_pattern, parse_wick_monomial, ParseFail};

#[derive(Parser)]
#[command(
    name = "bp2",
    version,
    about = "generalized Brownian motion toolkit",
    disable_help_subcommand = true
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct WeightArg {
    /// Weight spec: bosonic | free | fermionic | q:<rational> | qcr:<rational>.
    #[arg(long)]
    weight: String,
}

impl WeightArg {
    fn parse(&self) -> Result<Weight, ParseFail> {
        self.weight
            .parse::<Weight>()
            .map_err(|e| ParseFail(e.to_string()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// List all pair partitions of {1..n}.
    Enumerate {
        n_points: u32,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Crossing and block statistics of a pair partition literal.
    Stats { partition: String },
    /// Evaluate a weight on a pair partition.
    Eval {
        #[command(flatten)]
        weight: WeightArg,
        partition: String,
    },
    /// Gaussian moment of a field word or Fock moment of a c/a pattern.
    Moment {
        #[command(flatten)]
        weight: WeightArg,
        /// Field word, e.g. "w:e1 w:e1 w:e1 w:e1".
        #[arg(long, conflicts_with = "pattern")]
        word: Option<String>,
        /// Creation/annihilation pattern, e.g. "a:e1 a:e2 c:e2 c:e1".
        #[arg(long)]
        pattern: Option<String>,
    },
    /// Wick transform and inner products.
    #[command(subcommand)]
    Wick(WickCmd),
    /// Gram matrix of a diagram sector with rank and PSD certificate.
    Gram {
        #[command(flatten)]
        weight: WeightArg,
        #[arg(long)]
        legs: usize,
        #[arg(long)]
        max_pairs: usize,
    },
    /// Exact PSD certificate for a sector Gram matrix (exit 2 if indefinite).
    Psd {
        #[command(flatten)]
        weight: WeightArg,
        #[arg(long)]
        legs: usize,
        #[arg(long)]
        max_pairs: usize,
        /// Exact certification is always performed; this flag additionally
        /// suppresses the advisory float spectrum.
        #[arg(long)]
        exact: bool,
    },
    /// Spectral report for the embracing-pair operator theta.
    Theta {
        #[command(flatten)]
        weight: WeightArg,
        #[arg(long, default_value_t = 2)]
        max_legs: usize,
        #[arg(long, default_value_t = 2)]
        max_pairs: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Print a truncation-convergence table over max_pairs = 0..=max_pairs.
        #[arg(long)]
        table: bool,
    },
    /// Factor a pair partition into a hook/cohook/permutation word.
    StandardForm { partition: String },
    /// Evaluate a monomial in the truncated Fock matrix model and compare
    /// with the direct pairing-sum moment.
    FockSim {
        #[command(flatten)]
        weight: WeightArg,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        levels: usize,
        #[arg(long, default_value_t = 4)]
        len_cap: usize,
        #[arg(long)]
        pattern: String,
    },
    /// Run a bundled property suite (exit 2 on any counterexample).
    Check {
        /// One of: partitions, semigroup, weights, wick, gns, all.
        suite: String,
    },
}

#[derive(Subcommand)]
enum WickCmd {
    /// Expand a Wick product in moment monomials.
    ToMoments { monomial: String },
    /// Expand a moment monomial in Wick products.
    ToWick { monomial: String },
    /// Inner product of two Wick-product vacuum vectors.
    Inner {
        #[command(flatten)]
        weight: WeightArg,
        left: String,
        right: String,
    },
}

fn max_points_cap() -> u32 {
    std::env::var("BP2_MAX_POINTS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(12)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap's help/version are successes; everything else is usage.
            use clap::error::ErrorKind;
            let kind = e.kind();
            let _ = e.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(fail) => {
            eprintln!("error: {}", fail.0);
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, ParseFail> {
    match &cli.command {
        Command::Enumerate { n_points, count } => enumerate_cmd(cli, *n_points, *count),
        Command::Stats { partition } => stats_cmd(cli, partition),
        Command::Eval { weight, partition } => {
            let w = weight.parse()?;
            // A pair-partition literal is evaluated as t(V); a diagram
            // literal goes through the hat extension (0 on open legs).
            let (literal, value) = if partition.trim_start().starts_with("BP{") {
                let d: bp2_core::semigroup::Diagram =
                    partition.parse().map_err(ParseFail::from_err)?;
                cap_check(d.ground_size())?;
                (d.to_string(), w.evaluate_hat(&d))
            } else {
                let v: PairPartition = partition.parse().map_err(ParseFail::from_err)?;
                cap_check(v.n_points())?;
                (v.to_string(), w.evaluate(&v))
            };
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({"weight": w.to_string(), "input": literal, "value": value.to_string()})
                ),
                _ => println!("{value}"),
            }
            Ok(0)
        }
        Command::Moment {
            weight,
            word,
            pattern,
        } => {
            let w = weight.parse()?;
            let value = match (word, pattern) {
                (Some(word), None) => {
                    let labels = parse_field_word(word)?;
                    cap_check(labels.len() as u32)?;
                    gaussian_moment(&w, &labels)
                }
                (None, Some(pat)) => {
                    let pattern = parse_pattern(pat)?;
                    cap_check(pattern.len() as u32)?;
                    fock_moment(&w, &pattern)
                }
                _ => {
                    return Err(ParseFail(
                        "provide exactly one of --word or --pattern".into(),
                    ))
                }
            };
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({"weight": w.to_string(), "value": value.to_string()})
                ),
                _ => println!("{value}"),
            }
            Ok(0)
        }
        Command::Wick(sub) => wick_cmd(cli, sub),
        Command::Gram {
            weight,
            legs,
            max_pairs,
        } => {
            cap_check((2 * max_pairs + legs) as u32)?;
            let w = weight.parse()?;
            let model = gram_model(&w, &w.to_string(), *legs, *max_pairs);
            let report = GramReportJson::from_model(&model);
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string(&report).unwrap()),
                _ => {
                    println!(
                        "weight={} sector={} max_pairs={} dim={} rank={}",
                        report.weight,
                        report.sector,
                        report.truncation.max_pairs,
                        report.gram_dim,
                        report
                            .gram_rank
                            .map(|r| r.to_string())
                            .unwrap_or_else(|| "-".into())
                    );
                    for i in 0..model.gram.dim() {
                        let row: Vec<String> =
                            model.gram.row(i).iter().map(|s| s.to_string()).collect();
                        println!("[{}]", row.join(", "));
                    }
                    println!("{}", psd_line(&model.certificate));
                }
            }
            Ok(if model.certificate.is_psd() { 0 } else { 2 })
        }
        Command::Psd {
            weight,
            legs,
            max_pairs,
            exact,
        } => {
            cap_check((2 * max_pairs + legs) as u32)?;
            let w = weight.parse()?;
            let model = gram_model(&w, &w.to_string(), *legs, *max_pairs);
            let report = GramReportJson::from_model(&model);
            let spectrum = if *exact {
                None
            } else {
                Some(symmetric_eigs(&model.gram, 1e-9).expect("positive tolerance"))
            };
            #[derive(Serialize)]
            struct PsdOut {
                #[serde(flatten)]
                report: GramReportJson,
                #[serde(skip_serializing_if = "Option::is_none")]
                advisory_spectrum: Option<Vec<f64>>,
            }
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string(&PsdOut {
                        report,
                        advisory_spectrum: spectrum
                    })
                    .unwrap()
                ),
                _ => {
                    println!("{}", psd_line(&model.certificate));
                    if let Some(s) = spectrum {
                        println!(
                            "advisory spectrum: [{}]",
                            s.iter()
                                .map(|x| format!("{x:.6e}"))
                                .collect::<Vec<_>>()
                                .join(", ")
                        );
                    }
                }
            }
            Ok(if model.certificate.is_psd() { 0 } else { 2 })
        }
        Command::Theta {
            weight,
            max_legs,
            max_pairs,
            tol,
            table,
        } => theta_cmd(cli, weight, *max_legs, *max_pairs, *tol, *table),
        Command::StandardForm { partition } => {
            let v: PairPartition = partition.parse().map_err(ParseFail::from_err)?;
            cap_check(v.n_points())?;
            let word = standard_form(&v);
            let tokens: Vec<String> = word
                .tokens()
                .iter()
                .map(|t| match t {
                    Token::Hook => "HOOK".to_string(),
                    Token::Cohook => "COHOOK".to_string(),
                    Token::Perm(p) => format!("PERM{p}"),
                })
                .collect();
            let evaluated = word.evaluate().map_err(ParseFail::from_err)?;
            let roundtrip = evaluated
                .as_pair_partition()
                .map(|u| u == v)
                .unwrap_or(false);
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "partition": v.to_string(),
                        "word": tokens,
                        "hooks": word.hook_count(),
                        "cohooks": word.cohook_count(),
                        "roundtrip": roundtrip,
                    })
                ),
                _ => {
                    println!("{}", tokens.join(" "));
                    println!("roundtrip: {}", if roundtrip { "ok" } else { "FAILED" });
                }
            }
            Ok(if roundtrip { 0 } else { 2 })
        }
        Command::FockSim {
            weight,
            dim,
            levels,
            len_cap,
            pattern,
        } => {
            let w = weight.parse()?;
            let pat = parse_pattern(pattern)?;
            if pat.0.iter().any(|(_, l)| l.dim() > *dim) {
                return Err(ParseFail(format!("pattern uses colors beyond dim {dim}")));
            }
            cap_check(pat.len() as u32)?;
            let ops: Vec<_> = pat
                .0
                .iter()
                .map(|(k, l)| {
                    let c = l.0.iter().position(|x| !x.is_zero()).unwrap_or(0);
                    (*k, c)
                })
                .collect();
            cap_check(*len_cap as u32)?;
            if *levels > *len_cap {
                return Err(ParseFail(format!(
                    "--levels {levels} exceeds --len-cap {len_cap}: levels above the length cap are empty"
                )));
            }
            let model = fock_model(&w, &w.to_string(), *dim, *levels, *len_cap)
                .map_err(ParseFail::from_err)?;
            let padded = CAPattern(pat.0.iter().map(|(k, l)| (*k, l.pad_to(*dim))).collect());
            let direct = fock_moment(&w, &padded);
            let model_value = model.vacuum_expectation(&ops);
            match model_value {
                Ok(v) => {
                    let agree = v == direct;
                    match cli.format {
                        Format::Json => println!(
                            "{}",
                            serde_json::json!({
                                "weight": w.to_string(),
                                "model_value": v.to_string(),
                                "direct_value": direct.to_string(),
                                "agree": agree,
                            })
                        ),
                        _ => {
                            println!("model:  {v}");
                            println!("direct: {direct}");
                            println!("agree: {agree}");
                        }
                    }
                    Ok(if agree { 0 } else { 2 })
                }
                Err(GnsError::CapOverflow {
                    monomial,
                    level_cap,
                    len_cap,
                }) => Err(ParseFail(format!(
                    "cap overflow on {monomial:?} (levels {level_cap}, length {len_cap})"
                ))),
                Err(e) => Err(ParseFail(e.to_string())),
            }
        }
        Command::Check { suite } => checks::run_suite(suite, cli.format == Format::Json),
    }
}

fn enumerate_cmd(cli: &Cli, n_points: u32, count_only: bool) -> Result<u8, ParseFail> {
    cap_check(n_points)?;
    let all = PairPartition::enumerate(n_points);
    match cli.format {
        Format::Json => {
            if count_only {
                println!(
                    "{}",
                    serde_json::json!({"n_points": n_points, "count": all.len()})
                );
            } else {
                let literals: Vec<String> = all.iter().map(|v| v.to_string()).collect();
                println!(
                    "{}",
                    serde_json::json!({"n_points": n_points, "count": literals.len(), "partitions": literals})
                );
            }
        }
        _ => {
            if count_only {
                println!("{}", all.len());
            } else {
                for v in &all {
                    println!("{v}");
                }
            }
        }
    }
    Ok(0)
}

fn stats_cmd(cli: &Cli, literal: &str) -> Result<u8, ParseFail> {
    let v: PairPartition = literal.parse().map_err(ParseFail::from_err)?;
    cap_check(v.n_points())?;
    let crossings = v.crossings();
    let blocks = v.blocks();
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "partition": v.to_string(),
                "n_points": v.n_points(),
                "pairs": v.n_pairs(),
                "crossings": crossings,
                "blocks": blocks.len(),
                "block_members": blocks.blocks(),
            })
        ),
        Format::Csv => {
            println!("partition,pairs,crossings,blocks");
            println!("{},{},{},{}", v, v.n_pairs(), crossings, blocks.len());
        }
        Format::Text => {
            println!("crossings={} blocks={}", crossings, blocks.len());
        }
    }
    Ok(0)
}

fn wick_cmd(cli: &Cli, sub: &WickCmd) -> Result<u8, ParseFail> {
    match sub {
        WickCmd::ToMoments { monomial } | WickCmd::ToWick { monomial } => {
            let m = parse_wick_monomial(monomial)?;
            cap_check(m.n_points())?;
            let (expr, into) = match sub {
                WickCmd::ToMoments { .. } => (wick_from_moments(&m), "moments"),
                _ => (moments_from_wick(&m), "wick"),
            };
            match cli.format {
                Format::Json => {
                    let terms: Vec<serde_json::Value> = expr
                        .terms()
                        .iter()
                        .map(|(mono, coeff)| {
                            serde_json::json!({
                                "coefficient": coeff.to_string(),
                                "monomial": parse::display_monomial(mono),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::json!({"basis": into, "terms": terms}));
                }
                _ => {
                    for (mono, coeff) in expr.terms() {
                        println!("{}  *  {}", coeff, parse::display_monomial(mono));
                    }
                }
            }
            Ok(0)
        }
        WickCmd::Inner {
            weight,
            left,
            right,
        } => {
            let w = weight.parse()?;
            let a = parse_wick_monomial(left)?;
            let b = parse_wick_monomial(right)?;
            cap_check(a.n_points().max(b.n_points()))?;
            let value = wick_inner_product(&w, &a, &b);
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({"weight": w.to_string(), "value": value.to_string()})
                ),
                _ => println!("{value}"),
            }
            Ok(0)
        }
    }
}

fn theta_cmd(
    cli: &Cli,
    weight: &WeightArg,
    max_legs: usize,
    max_pairs: usize,
    tol: f64,
    table: bool,
) -> Result<u8, ParseFail> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(ParseFail(format!(
            "tolerance must be strictly positive, got {tol}"
        )));
    }
    cap_check((2 * max_pairs + max_legs) as u32)?;
    let w = weight.parse()?;
    let caps: Vec<usize> = if table {
        (0..=max_pairs).collect()
    } else {
        vec![max_pairs]
    };
    let mut rows = Vec::new();
    for cap in caps {
        match theta_matrix(&w, &w.to_string(), max_legs, cap, tol) {
            Ok((model, report)) => rows.push(ThetaReportJson::from_parts(&model, &report)),
            Err(GnsError::NonTracialWeight {
                partition,
                value,
                rotated,
            }) => {
                eprintln!(
                    "refused: weight is not tracial; t({partition}) = {value} but rotation gives {rotated}"
                );
                return Ok(2);
            }
            Err(GnsError::NotPositive) => {
                eprintln!("refused: Gram matrix is not positive semidefinite at this truncation");
                return Ok(2);
            }
            Err(e) => return Err(ParseFail(e.to_string())),
        }
    }
    match cli.format {
        Format::Json => {
            if rows.len() == 1 {
                println!("{}", serde_json::to_string(&rows[0]).unwrap());
            } else {
                println!("{}", serde_json::to_string(&rows).unwrap());
            }
        }
        Format::Csv => {
            println!("max_pairs,gram_rank,norm_perp,eig1_multiplicity");
            for r in &rows {
                println!(
                    "{},{},{},{}",
                    r.truncation.max_pairs,
                    r.gram_rank,
                    r.theta.norm_perp,
                    r.theta.eig1_multiplicity
                );
            }
        }
        Format::Text => {
            for r in &rows {
                println!(
                    "max_pairs={} rank={} eig1_multiplicity={} norm_perp={:.9}",
                    r.truncation.max_pairs,
                    r.gram_rank,
                    r.theta.eig1_multiplicity,
                    r.theta.norm_perp
                );
                println!(
                    "spectrum: [{}]",
                    r.theta
                        .spectrum
                        .iter()
                        .map(|x| format!("{x:.9}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                );
                for (name, outcome) in &r.checks {
                    println!("check {name}: {outcome}");
                }
            }
        }
    }
    Ok(0)
}

fn psd_line(cert: &PsdCertificate) -> String {
    match cert {
        PsdCertificate::Psd { rank } => format!("PSD rank={rank}"),
        PsdCertificate::Indefinite { witness } => {
            let ws: Vec<String> = witness.iter().map(Scalar::to_string).collect();
            format!("NOT-POSITIVE witness=({})", ws.join(", "))
        }
    }
}

fn cap_check(n: u32) -> Result<(), ParseFail> {
    let cap = max_points_cap();
    if n > cap {
        return Err(ParseFail(format!(
            "size {n} exceeds BP2_MAX_POINTS cap {cap}; raise the env var to proceed"
        )));
    }
    Ok(())
}
