use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncloop::algebra::AlgElem;
use ncloop::bracket::{ad_e, kappa_bracket};
use ncloop::divergence::{delta_map, div, modular, phi, tdiv};
use ncloop::error::Error;
use ncloop::forms::nabla_c;
use ncloop::io::{alg_json, parse_derivation_table, parse_theta_table, tensor_json, trace_tensor_json, triple_json};
use ncloop::mu::MuEngine;
use ncloop::parse::{parse_elem, parse_trace};
use ncloop::surface::{make_surface, Presentation, SurfaceSignature};
use ncloop::tensoralg::{delta_tensor, pairing_double_bracket, phi_tensor, PairingMatrix};
use ncloop::verify::{run_suite, SuiteConfig, SuiteReport, SUITES};

#[derive(Parser)]
#[command(name = "ncloop", version, about = "Double brackets, divergences and the framed loop operation on surface groupoids")]
struct Cli {
    /// Genus g of Σ_{g,n+1}.
    #[arg(long, global = true, default_value_t = 1)]
    genus: u32,
    /// Number n of extra boundary components (objects 0..=n).
    #[arg(long, global = true, default_value_t = 1)]
    boundaries: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 6)]
    max_len: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// κ(P1, P2) in A⊗A.
    Kappa { left: String, right: String },
    /// μ^fr(P).
    Mu { path: String },
    /// φ_{κ,∇_C}(P).
    Phi { path: String },
    /// TDiv^{∇_C}(Θ) for a table {generator: [[p, q, coeff], …]} (file, `-` for stdin, or inline JSON).
    Tdiv { table: String },
    /// Div^{∇_C}(f) for a table {generator: "element"} (file, `-`, or inline JSON).
    Div { table: String },
    /// δ^{σ,∇_C}(|P|).
    Delta { trace: String },
    /// m_{κ,∇_C,ad_e}(P).
    Modular { path: String },
    /// σ(T)(P) = mult κ(T, P).
    Ham { trace: String, path: String },
    /// The tensor algebra T(W) with a pairing.
    Tensor {
        #[command(subcommand)]
        op: TensorOp,
    },
    /// Runs a verification suite (or `all`).
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Also write the JSON report to this file.
        #[arg(long)]
        report: Option<String>,
    },
}

#[derive(Subcommand)]
enum TensorOp {
    /// ⟨U, W⟩ for the pairing-induced double bracket.
    Bracket {
        #[arg(long)]
        pairing: String,
        left: String,
        right: String,
    },
    /// φ_{⟨·,·⟩,∇_W}(P).
    Phi {
        #[arg(long)]
        pairing: String,
        path: String,
    },
    /// δ(|T|) on T(W).
    Delta {
        #[arg(long)]
        pairing: String,
        trace: String,
    },
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

fn read_source(arg: &str) -> Result<String, Failure> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("reading {arg}: {e}")))
}

fn emit(format: Format, text: String, value: Value) -> String {
    match format {
        Format::Text => text,
        Format::Json => json!({ "result": value, "text": text }).to_string(),
    }
}

fn verify_text(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = if r.ok() { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status} {} {}/{}\n", r.suite, r.passed(), r.cases.len()));
        for c in r.failures() {
            out.push_str(&format!("  case {}: {} => {}\n", c.id, c.inputs, c.residual));
        }
    }
    let ok = reports.iter().filter(|r| r.ok()).count();
    out.push_str(&format!(
        "{ok}/{} suites passed (seed {}, samples {})",
        reports.len(),
        reports.first().map_or(0, |r| r.seed),
        reports.first().map_or(0, |r| r.samples)
    ));
    out
}

fn reports_json(reports: &[SuiteReport]) -> Value {
    match reports {
        [one] => serde_json::to_value(one).expect("reports serialize"),
        many => serde_json::to_value(many).expect("reports serialize"),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let fmt = cli.format;
    let sig = || -> Result<SurfaceSignature, Failure> { Ok(make_surface(cli.genus, cli.boundaries)?) };
    match &cli.command {
        Command::Kappa { left, right } => {
            let sig = sig()?;
            let pres = Presentation::from(sig);
            let (a, b) = (parse_elem(left, &pres)?, parse_elem(right, &pres)?);
            let v = kappa_bracket(&sig).eval(&a, &b);
            Ok(emit(fmt, v.to_string(), tensor_json(&v)))
        }
        Command::Mu { path } => {
            let sig = sig()?;
            let a = parse_elem(path, &sig.into())?;
            let v = MuEngine::new(&sig).eval(&a);
            Ok(emit(fmt, v.to_string(), triple_json(&v)))
        }
        Command::Phi { path } => {
            let sig = sig()?;
            let pres = Presentation::from(sig);
            let v = phi(&kappa_bracket(&sig), &nabla_c(&sig), &parse_elem(path, &pres)?, &pres)?;
            Ok(emit(fmt, v.to_string(), triple_json(&v)))
        }
        Command::Tdiv { table } => {
            let sig = sig()?;
            let pres = Presentation::from(sig);
            let theta = parse_theta_table(&read_source(table)?, &pres)?;
            let v = tdiv(&theta, &nabla_c(&sig), &pres)?;
            Ok(emit(fmt, v.to_string(), triple_json(&v)))
        }
        Command::Div { table } => {
            let sig = sig()?;
            let pres = Presentation::from(sig);
            let f = parse_derivation_table(&read_source(table)?, &pres)?;
            let v = div(&f, &nabla_c(&sig), &pres)?;
            Ok(emit(fmt, v.to_string(), trace_tensor_json(&v)))
        }
        Command::Delta { trace } => {
            let sig = sig()?;
            let pres = Presentation::from(sig);
            let v = delta_map(&kappa_bracket(&sig), &nabla_c(&sig), &parse_trace(trace, &pres)?, &pres)?;
            Ok(emit(fmt, v.to_string(), trace_tensor_json(&v)))
        }
        Command::Modular { path } => {
            let sig = sig()?;
            let pres = Presentation::from(sig);
            let a = parse_elem(path, &pres)?;
            let v = modular(&kappa_bracket(&sig), &nabla_c(&sig), &ad_e(&pres), &a, &pres)?;
            Ok(emit(fmt, v.to_string(), triple_json(&v)))
        }
        Command::Ham { trace, path } => {
            let sig = sig()?;
            let pres = Presentation::from(sig);
            let f = kappa_bracket(&sig).ham(&parse_trace(trace, &pres)?, &pres.generators())?;
            let v: AlgElem = f.eval(&parse_elem(path, &pres)?);
            Ok(emit(fmt, v.to_string(), alg_json(&v)))
        }
        Command::Tensor { op } => {
            let pairing = match op {
                TensorOp::Bracket { pairing, .. } | TensorOp::Phi { pairing, .. } | TensorOp::Delta { pairing, .. } => pairing,
            };
            let p = PairingMatrix::from_json(&read_source(pairing)?)?;
            let pres = p.presentation();
            match op {
                TensorOp::Bracket { left, right, .. } => {
                    let v = pairing_double_bracket(&p).eval(&parse_elem(left, &pres)?, &parse_elem(right, &pres)?);
                    Ok(emit(fmt, v.to_string(), tensor_json(&v)))
                }
                TensorOp::Phi { path, .. } => {
                    let v = phi_tensor(&p, &parse_elem(path, &pres)?)?;
                    Ok(emit(fmt, v.to_string(), triple_json(&v)))
                }
                TensorOp::Delta { trace, .. } => {
                    let v = delta_tensor(&p, &parse_trace(trace, &pres)?)?;
                    Ok(emit(fmt, v.to_string(), trace_tensor_json(&v)))
                }
            }
        }
        Command::Verify { suite, report } => {
            if suite != "all" && !SUITES.contains(&suite.as_str()) {
                return Err(Failure::Usage(format!(
                    "unknown suite `{suite}`; expected one of: all, {}",
                    SUITES.join(", ")
                )));
            }
            let cfg = SuiteConfig {
                sig: sig()?,
                seed: cli.seed,
                samples: cli.samples,
                max_len: cli.max_len,
            };
            let reports = run_suite(suite, &cfg)?;
            let js = reports_json(&reports);
            if let Some(path) = report {
                fs::write(path, format!("{js}\n")).map_err(|e| Failure::Usage(format!("writing {path}: {e}")))?;
            }
            let out = match fmt {
                Format::Text => verify_text(&reports),
                Format::Json => js.to_string(),
            };
            if reports.iter().all(|r| r.ok()) {
                Ok(out)
            } else {
                println!("{out}");
                Err(Failure::Verification)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = writeln!(stdout, "{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
