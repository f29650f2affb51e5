//! `yh`: traces, invariants, E-system solutions and verification suites for
//! Yokonuma–Hecke algebras from the command line.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage,
//! parse or domain errors.

mod suites;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use yh_core::coeff_ring::{parse_complex, ComplexVal};
use yh_core::e_system::{cyclic_solution, delta_solution, solve_all, ESolution};
use yh_core::framed_braids::{parse_braid, BraidLetter, FramedBraidWord};
use yh_core::invariants::{gamma, InvariantParams, SqrtBranch};
use yh_core::markov_trace::trace;
use yh_core::padic::{commute_check, gamma_stabilization, tau_prefix, PAdicAlgebraApprox, DEFAULT_DEPTH};
use yh_core::report::Report;
use yh_core::yokonuma::embed_word;
use yh_core::Error;

#[derive(Parser, Debug)]
#[command(name = "yh", version, about = "Yokonuma–Hecke algebra traces and framed link invariants")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Config {
    /// Framing modulus d.
    #[arg(long, global = true, conflicts_with = "p")]
    d: Option<u32>,
    /// Prime for p-adic towers.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Number of levels p, p^2, ..., p^depth.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Number of strands; inferred from the braid when omitted.
    #[arg(long, global = true)]
    strands: Option<usize>,
    /// Complex literal "re,im" or "re".
    #[arg(long, global = true, default_value = "2", allow_hyphen_values = true)]
    u: String,
    #[arg(long, global = true, default_value = "0.5", allow_hyphen_values = true)]
    z: String,
    /// Subset bitmask "0b101" (bit k = residue k), "delta" or "cyclic:a".
    #[arg(long, global = true)]
    solution: Option<String>,
    /// Square root of omega: principal or negated.
    #[arg(long, global = true, default_value = "principal")]
    branch: String,
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample size for randomized suites.
    #[arg(long, global = true, default_value_t = 20)]
    sample: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Symbolic trace of a framed braid word.
    Trace { braid: String },
    /// Numeric invariant of the closure of a framed braid word.
    Invariant { braid: String },
    /// All solutions of the E-system for order d.
    Esolve,
    /// Run a verification suite.
    Check {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// p-adic tower reports.
    Padic {
        #[command(subcommand)]
        action: PadicAction,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Trace,
    Esystem,
    Invariant,
    Skein,
    Padic,
}

#[derive(Subcommand, Debug)]
enum PadicAction {
    /// Invariant at every level, checked for eventual constancy.
    Stabilize { braid: String },
    /// Trace commutes with the level maps.
    Commute,
    /// Levelwise traces of a braid.
    Trace { braid: String },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Usage(msg.into()))
}

impl Config {
    fn tol(&self) -> CliResult<f64> {
        if self.tol > 0.0 && self.tol.is_finite() {
            Ok(self.tol)
        } else {
            usage("--tol must be positive")
        }
    }

    fn d(&self) -> CliResult<u32> {
        match (self.d, self.p) {
            (Some(0), _) => usage("--d must be at least 1"),
            (Some(d), None) => Ok(d),
            (None, Some(_)) => usage("this command takes --d, not --p"),
            _ => usage("--d is required"),
        }
    }

    fn p_depth(&self) -> CliResult<(u64, usize)> {
        match (self.p, self.d) {
            (Some(p), None) => Ok((p, self.depth.unwrap_or(DEFAULT_DEPTH))),
            (None, Some(_)) => usage("this command takes --p/--depth, not --d"),
            _ => usage("--p is required"),
        }
    }

    fn u(&self) -> CliResult<ComplexVal> {
        Ok(parse_complex(&self.u)?)
    }

    fn z(&self) -> CliResult<ComplexVal> {
        Ok(parse_complex(&self.z)?)
    }

    fn branch(&self) -> CliResult<SqrtBranch> {
        Ok(self.branch.parse()?)
    }

    /// Selected solution; defaults to delta for d >= 2 and the only solution for d = 1.
    fn solution(&self, d: usize) -> CliResult<ESolution> {
        let text = match &self.solution {
            Some(s) => s.as_str(),
            None if d == 1 => "0b1",
            None => "delta",
        };
        Ok(parse_solution(text, d)?)
    }

    fn params(&self, d: usize) -> CliResult<InvariantParams> {
        Ok(InvariantParams::new(self.solution(d)?, self.u()?, self.z()?, self.branch()?)?)
    }

    fn braid(&self, text: &str) -> CliResult<FramedBraidWord> {
        Ok(read_braid(text, self.strands)?)
    }
}

pub fn parse_solution(text: &str, d: usize) -> yh_core::Result<ESolution> {
    if text == "delta" {
        return delta_solution(d);
    }
    if let Some(a) = text.strip_prefix("cyclic:") {
        let a: i64 = a.parse().map_err(|_| Error::Invalid(format!("bad residue in {text:?}")))?;
        return cyclic_solution(d, a);
    }
    if let Some(bits) = text.strip_prefix("0b") {
        let mask = u64::from_str_radix(bits, 2).map_err(|_| Error::Invalid(format!("bad bitmask {text:?}")))?;
        return ESolution::from_mask(d, mask);
    }
    Err(Error::Invalid(format!("solution must be 0b<bits>, delta or cyclic:<a>, got {text:?}")))
}

/// Parses a braid; without `strands`, uses the fewest strands the letters need.
pub fn read_braid(text: &str, strands: Option<usize>) -> yh_core::Result<FramedBraidWord> {
    if let Some(n) = strands {
        return parse_braid(text, n);
    }
    let wide = parse_braid(text, usize::MAX / 2)?;
    let n = wide
        .letters()
        .iter()
        .map(|l| match *l {
            BraidLetter::Sigma { i, .. } => i + 1,
            BraidLetter::Frame { j, .. } => j,
        })
        .max()
        .unwrap_or(1);
    FramedBraidWord::new(n, wide.letters().to_vec())
}

fn pair(v: ComplexVal) -> [f64; 2] {
    [v.re, v.im]
}

fn emit_report(report: &Report, format: Format) -> CliResult<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).expect("report serializes")),
        Format::Table => print!("{report}"),
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let cfg = &cli.config;
    cfg.tol()?;
    match &cli.command {
        Command::Trace { braid } => {
            let d = cfg.d()?;
            let w = cfg.braid(braid)?;
            let tr = trace(&embed_word(&w, d)?)?;
            match cfg.format {
                Format::Json => println!(
                    "{}",
                    json!({"braid": w.to_string(), "d": d, "strands": w.n(), "trace": tr, "text": tr.to_string()})
                ),
                Format::Table => println!("{tr}"),
            }
        }
        Command::Invariant { braid } => {
            let d = cfg.d()?;
            let w = cfg.braid(braid)?;
            let params = cfg.params(d as usize)?;
            let g = gamma(&w, &params)?;
            let out = json!({
                "braid": w.to_string(),
                "d": d,
                "support": params.solution().support(),
                "u": pair(params.u()),
                "z": pair(params.z()),
                "branch": params.branch(),
                "gamma": pair(g),
                "epsilon": w.exponent(),
                "strands": w.n(),
            });
            match cfg.format {
                Format::Json => println!("{out}"),
                Format::Table => {
                    println!("braid    {}", w);
                    println!("d        {d}");
                    println!("support  {:?}", params.solution().support());
                    println!("branch   {}", params.branch());
                    println!("epsilon  {}", w.exponent());
                    println!("gamma    {:.12} {:+.12}i", g.re, g.im);
                }
            }
        }
        Command::Esolve => {
            let d = cfg.d()? as usize;
            let sols = solve_all(d)?;
            match cfg.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&sols).expect("solutions serialize")),
                Format::Table => {
                    println!("{} solutions for d = {d}", sols.len());
                    for s in &sols {
                        let vals: Vec<String> = s.values().values().iter().map(|v| format!("{v:.6}")).collect();
                        println!(
                            "  S = {:?}  E = {:.6}  residual = {:.1e}  x = ({})",
                            s.support(),
                            s.e_d().re,
                            s.residual(),
                            vals.join(", ")
                        );
                    }
                }
            }
        }
        Command::Check { suite } => {
            let report = suites::run_suite(*suite, cfg)?;
            emit_report(&report, cfg.format)?;
        }
        Command::Padic { action } => {
            let (p, depth) = cfg.p_depth()?;
            match action {
                PadicAction::Stabilize { braid } => {
                    let w = cfg.braid(braid)?;
                    let base = cfg.solution(p as usize)?;
                    let rep = gamma_stabilization(&w, p, depth, &base, cfg.u()?, cfg.z()?, cfg.branch()?, cfg.tol)?;
                    match cfg.format {
                        Format::Json => println!("{}", serde_json::to_string_pretty(&rep).expect("report serializes")),
                        Format::Table => {
                            for (r, v) in rep.entries.iter().enumerate() {
                                println!(
                                    "  r = {}  p^r = {:<6} gamma = {:.12} {:+.12}i",
                                    r + 1,
                                    p.pow(r as u32 + 1),
                                    v[0],
                                    v[1]
                                );
                            }
                            let verdict = match (rep.verified, rep.stable) {
                                (false, _) => format!("not verified: r0 = {} exceeds depth {depth}", rep.r0),
                                (true, true) => format!("stabilizes at r = {}", rep.r0),
                                (true, false) => {
                                    format!("NOT constant beyond r = {} (deviation {:.3e})", rep.r0, rep.max_deviation)
                                }
                            };
                            println!("{verdict}");
                        }
                    }
                    if rep.verified && !rep.stable {
                        return Err(Failure::Verification);
                    }
                }
                PadicAction::Commute => {
                    let n = cfg.strands.unwrap_or(2);
                    let report = commute_check(p, depth, n, cfg.sample, cfg.seed)?;
                    emit_report(&report, cfg.format)?;
                }
                PadicAction::Trace { braid } => {
                    let w = cfg.braid(braid)?;
                    let tower = PAdicAlgebraApprox::from_braid(p, depth, &w)?;
                    let taus = tau_prefix(&tower)?;
                    let coherent = taus.is_coherent();
                    match cfg.format {
                        Format::Json => {
                            let mut v = serde_json::to_value(&taus).expect("tower serializes");
                            v["coherent"] = json!(coherent);
                            println!("{}", serde_json::to_string_pretty(&v).expect("value serializes"));
                        }
                        Format::Table => {
                            for (r, t) in taus.entries().iter().enumerate() {
                                println!("  r = {}: {t}", r + 1);
                            }
                            println!("coherent: {coherent}");
                        }
                    }
                    if !coherent {
                        return Err(Failure::Verification);
                    }
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
