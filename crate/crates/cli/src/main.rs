//! `polyspace`: command-line access to membership tests, map degrees, winding
//! invariants, censuses, stabilization and sweeps.
//!
//! Exit status: 0 on success, 1 when the input is well formed but the operation
//! fails (not a member, precondition, numeric failure), 2 on usage errors and
//! malformed input.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use polyspace::case12::{census_12, electric_degree};
use polyspace::case21::{census_21, Census};
use polyspace::case31::{i_d_loop, phi, pi1_winding_sampled, r_d, r_tilde, r_tilde_exact};
use polyspace::exactalg::parse_rational;
use polyspace::harness::{invariant_sweep, Case};
use polyspace::json::{
    any_poly_to_json, complex_to_json, points_from_json, poly_to_json, tuple_from_json, tuple_from_str, tuple_to_json,
    JsonCoeff,
};
use polyspace::mapdeg::{map_degree_report, random_covector, rp1_degree_report};
use polyspace::nonres::{common_gcd, is_member, jet, max_common_multiplicity, stability_dimension, SystemTuple, TupleData};
use polyspace::stab::{stabilize, StabCase};
use polyspace::Error;

#[derive(Parser)]
#[command(name = "polyspace", version, about = "Spaces of non-resultant polynomial systems")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CensusCase {
    #[value(name = "21")]
    C21,
    #[value(name = "12")]
    C12,
}

#[derive(Clone, Copy, ValueEnum)]
enum StabArg {
    #[value(name = "31")]
    C31,
    #[value(name = "12")]
    C12,
    #[value(name = "mult")]
    Mult,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Report,
    Tuple,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership of a tuple; prints the verdict and the common gcd.
    Member {
        /// Tuple JSON file (standard input when absent or `-`).
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Jets `(f, f + f', ..., f + f^(n-1))` of every polynomial of a tuple.
    Jet {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Degree of the natural map of a member.
    Degree {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Seed for the random covector.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Real-axis degree `j` of a (2,1) pair.
    #[command(name = "rp1-degree")]
    Rp1Degree {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Splitting map of a (3,1) member of odd degree.
    #[command(name = "r-d")]
    RD {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Winding of `r_tilde` along a sampled loop of (3,1) tuples.
    Pi1 {
        /// JSON `{"loop": [tuple, ...]}`; the last tuple joins the first.
        #[arg(long, conflicts_with = "generator")]
        input: Option<PathBuf>,
        /// Use the loop `i_d` of this degree instead of an input file.
        #[arg(long)]
        generator: Option<usize>,
        /// Number of samples of the generated loop.
        #[arg(long, default_value_t = 256)]
        samples: usize,
        /// Times the generated loop runs around.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        turns: i64,
    },
    /// Label census of random members.
    Census {
        #[arg(long, value_enum)]
        case: CensusCase,
        #[arg(long)]
        d: usize,
        #[arg(long, alias = "trials")]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Degree of the electric-field map of a configuration (`[[re, im], ...]`).
    #[command(name = "electric-degree")]
    ElectricDegree {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Add a root from infinity.
    Stabilize {
        #[arg(long, value_enum)]
        case: StabArg,
        /// The added root, `p/q`; defaults to the root bound plus one.
        #[arg(long = "T", allow_hyphen_values = true)]
        big_t: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Emit the full report or only the stabilized tuple.
        #[arg(long, value_enum, default_value = "report")]
        emit: Emit,
    },
    /// Invariant sweep over seeded random members.
    Sweep {
        #[arg(long)]
        case: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The stability dimension `(mn - 2)(floor(d/n) + 1) - 1`.
    #[command(name = "stability-dim")]
    StabilityDim {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::InvalidInput(_)) { 2 } else { 1 };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type CmdResult = std::result::Result<String, Failure>;

fn read_input(path: &Option<PathBuf>) -> std::result::Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| usage(format!("input: cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("input: {e}")))?;
            Ok(s)
        }
    }
}

fn read_json(path: &Option<PathBuf>) -> std::result::Result<Value, Failure> {
    serde_json::from_str(&read_input(path)?).map_err(|e| usage(format!("input: malformed JSON: {e}")))
}

fn read_tuple(path: &Option<PathBuf>) -> std::result::Result<SystemTuple, Failure> {
    Ok(tuple_from_str(&read_input(path)?)?)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn csv(header: &str, rows: &[String]) -> String {
    let mut out = String::from(header);
    for r in rows {
        out.push('\n');
        out.push_str(r);
    }
    out
}

fn census_output(census: &Census, format: Format, header: Value) -> String {
    match format {
        Format::Csv => {
            let rows: Vec<String> = census.counts.iter().map(|(j, c)| format!("{j},{c}")).collect();
            // seed and sizes go in a comment line so the run can be reproduced from the file
            let meta = format!(
                "# case={} d={} samples={} seed={} rejected={} failed={}",
                header["case"].as_str().unwrap_or(""),
                header["d"],
                header["samples"],
                header["seed"],
                census.rejected,
                census.failed
            );
            format!("{meta}\n{}", csv("j,count", &rows))
        }
        Format::Json => {
            let mut v = header;
            v["counts"] = census.counts.iter().map(|(j, c)| json!({"j": j, "count": c})).collect();
            v["rejected"] = json!(census.rejected);
            v["failed"] = json!(census.failed);
            pretty(&v)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let format = cli.format;
    let fmt = format.unwrap_or(Format::Json);
    match cli.command {
        Command::Member { input } => {
            let t = read_tuple(&input)?;
            let member = is_member(&t);
            let k = max_common_multiplicity(&t);
            let g = common_gcd(&t);
            Ok(match fmt {
                Format::Csv => csv(
                    "member,max_common_multiplicity,gcd_degree",
                    &[format!("{member},{k},{}", g.degree().unwrap_or(0))],
                ),
                Format::Json => {
                    pretty(&json!({"member": member, "max_common_multiplicity": k, "gcd": any_poly_to_json(&g)}))
                }
            })
        }
        Command::Jet { input } => {
            let t = read_tuple(&input)?;
            fn jets<C: JsonCoeff>(p: &[polyspace::exactalg::Poly<C>], n: usize) -> Vec<Value> {
                p.iter().map(|f| Value::Array(jet(f, n).components.iter().map(poly_to_json).collect())).collect()
            }
            let j = match t.data() {
                TupleData::Real(p) => jets(p, t.n()),
                TupleData::Complex(p) => jets(p, t.n()),
            };
            Ok(pretty(&json!({"n": t.n(), "jets": j})))
        }
        Command::Degree { input, seed } => {
            let t = read_tuple(&input)?;
            let mut rng = polyspace::harness::random::trial_rng(seed, 0);
            let lambda = random_covector(t.m() * t.n(), &mut rng);
            let r = map_degree_report(&t, &lambda)?;
            Ok(match fmt {
                Format::Csv => csv("degree,samples,seed", &[format!("{},{},{seed}", r.degree, r.samples)]),
                Format::Json => pretty(&json!({"degree": r.degree, "samples": r.samples, "attempts": r.attempts,
                    "radius": polyspace::json::round_sig(r.radius), "seed": seed})),
            })
        }
        Command::Rp1Degree { input } => {
            let t = read_tuple(&input)?;
            let p = match (t.m(), t.n(), t.real_polys()) {
                (2, 1, Some(p)) => p,
                _ => return Err(Error::Precondition("rp1-degree needs a real tuple with (m, n) = (2, 1)".into()).into()),
            };
            let r = rp1_degree_report(&p[0], &p[1])?;
            Ok(match fmt {
                Format::Csv => csv("j,samples", &[format!("{},{}", r.j, r.samples)]),
                Format::Json => pretty(&json!({"j": r.j, "samples": r.samples})),
            })
        }
        Command::RD { input } => {
            let t = read_tuple(&input)?;
            let m = phi(&t)?;
            let unit = r_d(&m)?;
            let rt = r_tilde(&m)?;
            let exact = r_tilde_exact(&m)?;
            Ok(match fmt {
                Format::Csv => csv(
                    "r_d_re,r_d_im,r_tilde_re,r_tilde_im",
                    &[format!(
                        "{},{},{},{}",
                        polyspace::json::round_sig(unit.re),
                        polyspace::json::round_sig(unit.im),
                        polyspace::json::round_sig(rt.re),
                        polyspace::json::round_sig(rt.im)
                    )],
                ),
                Format::Json => pretty(&json!({
                    "r_d": complex_to_json(unit),
                    "r_tilde": complex_to_json(rt),
                    "r_tilde_exact": exact.map(|g| g.to_json()),
                })),
            })
        }
        Command::Pi1 { input, generator, samples, turns } => {
            let models = match generator {
                Some(d) => {
                    if samples < 4 {
                        return Err(usage("samples: need at least 4"));
                    }
                    (0..samples)
                        .map(|k| i_d_loop(d, turns as f64 * std::f64::consts::TAU * k as f64 / samples as f64))
                        .collect::<polyspace::Result<Vec<_>>>()?
                }
                None => {
                    let v = read_json(&input)?;
                    let arr = v.get("loop").and_then(Value::as_array).ok_or_else(|| usage("loop: expected an array of tuples"))?;
                    let mut out = Vec::new();
                    for (k, item) in arr.iter().enumerate() {
                        let t = tuple_from_json(item).map_err(|e| usage(format!("loop[{k}]: {e}")))?;
                        out.push(phi(&t)?);
                    }
                    out
                }
            };
            let w = pi1_winding_sampled(&models)?;
            Ok(match fmt {
                Format::Csv => csv("winding,samples", &[format!("{w},{}", models.len())]),
                Format::Json => pretty(&json!({"winding": w, "samples": models.len()})),
            })
        }
        Command::Census { case, d, samples, seed } => {
            let (census, tag) = match case {
                CensusCase::C21 => (census_21(d, samples, seed)?, "21"),
                CensusCase::C12 => (census_12(d, samples, seed)?, "12"),
            };
            let header = json!({"case": tag, "d": d, "samples": samples, "seed": seed});
            Ok(census_output(&census, format.unwrap_or(Format::Csv), header))
        }
        Command::ElectricDegree { input } => {
            let v = read_json(&input)?;
            let pts_val = match &v {
                Value::Object(o) => o.get("points").ok_or_else(|| usage("points: missing"))?,
                other => other,
            };
            let pts: Vec<Complex64> = points_from_json(pts_val, "points")?;
            let k = electric_degree(&pts)?;
            Ok(match fmt {
                Format::Csv => csv("degree,points", &[format!("{k},{}", pts.len())]),
                Format::Json => pretty(&json!({"degree": k, "points": pts.len()})),
            })
        }
        Command::Stabilize { case, big_t, input, emit } => {
            let t = read_tuple(&input)?;
            let big_t = big_t.map(|s| parse_rational(&s).map_err(|e| usage(format!("T: {e}")))).transpose()?;
            let case = match case {
                StabArg::C31 => StabCase::Case31,
                StabArg::C12 => StabCase::Case12,
                StabArg::Mult => StabCase::Mult,
            };
            let report = stabilize(case, &t, big_t)?;
            Ok(match emit {
                Emit::Tuple => pretty(&tuple_to_json(&report.output)),
                Emit::Report => {
                    let mut v = serde_json::to_value(&report).expect("serializable");
                    v["output"] = tuple_to_json(&report.output);
                    pretty(&v)
                }
            })
        }
        Command::Sweep { case, d, trials, seed, out } => {
            let case: Case = case.parse()?;
            let report = invariant_sweep(case, d, trials, seed)?;
            let text = serde_json::to_string_pretty(&report).expect("serializable");
            match out {
                Some(p) => {
                    fs::write(&p, format!("{text}\n")).map_err(|e| Failure { code: 1, message: format!("out: {e}") })?;
                    Ok(format!("failures {} of {} trials, report written to {}", report.failures, trials, p.display()))
                }
                None => Ok(text),
            }
        }
        Command::StabilityDim { d, m, n } => Ok(stability_dimension(d, m, n)?.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(text) => {
            let mut out = io::stdout().lock();
            let _ = writeln!(out, "{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
