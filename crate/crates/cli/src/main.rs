//! Command-line surface over the tropcurve library.
//!
//! Exit codes: 0 on success, 1 when a balance check ran and found an
//! unbalanced input, 2 for parse or validation problems.

mod plot;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num::{BigInt, BigRational};
use serde_json::Value;

use tropcurve::balance::{bundle_balance, local_balance, solve_weights};
use tropcurve::fanbundle::reduce;
use tropcurve::json;
use tropcurve::newton::{conical_tropicalization, dual_tropicalization};

#[derive(Parser)]
#[command(name = "tropcurve", version, about = "Tropical curves from Puiseux data", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tropicalize a Laurent polynomial over the Puiseux field.
    Tropicalize {
        /// Input polynomial (JSON).
        #[arg(long)]
        poly: PathBuf,
        /// Use the conical recipe (requires equal coefficient valuations).
        #[arg(long, conflicts_with = "dual")]
        conical: bool,
        /// Use the dual-subdivision recipe (the default).
        #[arg(long)]
        dual: bool,
        /// Output curve file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the classical balancing condition at every vertex of a curve.
    Balance {
        /// Input curve (JSON).
        curve: PathBuf,
    },
    /// Check the bundle balancing condition for a weighted fan.
    BundleBalance {
        /// Bundle descriptor (JSON).
        #[arg(long)]
        bundle: PathBuf,
        /// Fan rays (JSON).
        #[arg(long)]
        fan: PathBuf,
        /// Weight function on the rays (JSON).
        #[arg(long)]
        weights: PathBuf,
        /// Pushforward curve class, e.g. "[1]".
        #[arg(long)]
        beta: String,
    },
    /// Enumerate all weight functions within a box that balance.
    SolveWeights {
        /// Bundle descriptor (JSON).
        #[arg(long)]
        bundle: PathBuf,
        /// Fan rays (JSON).
        #[arg(long)]
        fan: PathBuf,
        /// Pushforward curve class, e.g. "[1]".
        #[arg(long)]
        beta: String,
        /// Largest weight to try on each ray.
        #[arg(long)]
        bound: u64,
    },
    /// Rewrite a divisor class in normal form modulo the bundle relations.
    Reduce {
        /// Bundle descriptor (JSON).
        #[arg(long)]
        bundle: PathBuf,
        /// Fan rays (JSON).
        #[arg(long)]
        fan: PathBuf,
        /// Divisor class to reduce (JSON).
        #[arg(long)]
        divisor: PathBuf,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render a planar curve as a deterministic SVG.
    Plot {
        /// Input curve (JSON).
        curve: PathBuf,
        /// Output SVG file.
        #[arg(short, long)]
        output: PathBuf,
        /// Clipping window "[xmin,xmax,ymin,ymax]"; entries may be "p/q" strings.
        #[arg(long = "box", value_name = "WINDOW")]
        window: Option<String>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Tropicalize {
            poly,
            conical,
            dual: _,
            output,
        } => {
            let f = json::laurent_from_value(&read_json(&poly)?)
                .map_err(|e| format!("{}: {e}", poly.display()))?;
            let curve = if conical {
                conical_tropicalization(&f)
            } else {
                dual_tropicalization(&f)
            }
            .map_err(|e| e.to_string())?;
            emit(&json::curve_to_value(&curve), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Balance { curve } => {
            let c = json::curve_from_value(&read_json(&curve)?)
                .map_err(|e| format!("{}: {e}", curve.display()))?;
            let defects = local_balance(&c);
            let mut all_balanced = true;
            for (index, defect) in &defects {
                let at = join_rationals(&c.vertices()[*index]);
                let coords: Vec<String> =
                    defect.coords().iter().map(|x| x.to_string()).collect();
                let verdict = if defect.balanced() {
                    "balanced"
                } else {
                    all_balanced = false;
                    "unbalanced"
                };
                println!(
                    "vertex {index} at ({at}): defect ({}) {verdict}",
                    coords.join(", ")
                );
            }
            Ok(exit_balanced(all_balanced))
        }
        Command::BundleBalance {
            bundle,
            fan,
            weights,
            beta,
        } => {
            let b = json::bundle_from_value(&read_json(&bundle)?)
                .map_err(|e| format!("{}: {e}", bundle.display()))?;
            let f = json::fan_from_value(&read_json(&fan)?)
                .map_err(|e| format!("{}: {e}", fan.display()))?;
            let w = json::weights_from_value(&read_json(&weights)?)
                .map_err(|e| format!("{}: {e}", weights.display()))?;
            let beta = parse_beta(&beta)?;
            let defect = bundle_balance(&w, &b, &f, &beta).map_err(|e| e.to_string())?;
            println!("{}", json::defect_to_value(&defect));
            Ok(exit_balanced(defect.balanced()))
        }
        Command::SolveWeights {
            bundle,
            fan,
            beta,
            bound,
        } => {
            let b = json::bundle_from_value(&read_json(&bundle)?)
                .map_err(|e| format!("{}: {e}", bundle.display()))?;
            let f = json::fan_from_value(&read_json(&fan)?)
                .map_err(|e| format!("{}: {e}", fan.display()))?;
            let beta = parse_beta(&beta)?;
            let solutions = solve_weights(&b, &f, &beta, bound).map_err(|e| e.to_string())?;
            for w in &solutions {
                println!("{}", json::weights_to_value(w));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce {
            bundle,
            fan,
            divisor,
            output,
        } => {
            let b = json::bundle_from_value(&read_json(&bundle)?)
                .map_err(|e| format!("{}: {e}", bundle.display()))?;
            let f = json::fan_from_value(&read_json(&fan)?)
                .map_err(|e| format!("{}: {e}", fan.display()))?;
            let d = json::divisor_from_value(&read_json(&divisor)?)
                .map_err(|e| format!("{}: {e}", divisor.display()))?;
            let normal = reduce(&d, &b, &f).map_err(|e| e.to_string())?;
            emit(&json::divisor_to_value(&normal), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Plot {
            curve,
            output,
            window,
        } => {
            let c = json::curve_from_value(&read_json(&curve)?)
                .map_err(|e| format!("{}: {e}", curve.display()))?;
            let window = match window {
                Some(text) => parse_window(&text)?,
                None => default_window(),
            };
            let svg = plot::render(&c, &window)?;
            fs::write(&output, svg).map_err(|e| format!("{}: {e}", output.display()))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_balanced(balanced: bool) -> ExitCode {
    if balanced {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: invalid JSON: {e}", path.display()))
}

fn emit(value: &Value, output: Option<&Path>) -> Result<(), String> {
    let text = format!("{value}\n");
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_beta(text: &str) -> Result<tropcurve::fanbundle::CurveClassData, String> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| format!("beta: invalid JSON: {e}"))?;
    json::beta_from_value(&value).map_err(|e| e.to_string())
}

fn join_rationals(coords: &[BigRational]) -> String {
    coords
        .iter()
        .map(json::rational_to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn default_window() -> [BigRational; 4] {
    let five = BigRational::from_integer(BigInt::from(5));
    [-five.clone(), five.clone(), -five.clone(), five]
}

fn parse_window(text: &str) -> Result<[BigRational; 4], String> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| format!("box: invalid JSON: {e}"))?;
    let entries = value
        .as_array()
        .filter(|a| a.len() == 4)
        .ok_or_else(|| "box: expected [xmin, xmax, ymin, ymax]".to_string())?;
    let mut window = Vec::with_capacity(4);
    for entry in entries {
        let rational = match entry {
            Value::Number(n) => n
                .as_i64()
                .map(|k| BigRational::from_integer(BigInt::from(k)))
                .ok_or_else(|| "box: entries must be integers or \"p/q\" strings".to_string())?,
            Value::String(s) => {
                json::parse_rational(s).map_err(|_| format!("box: bad rational {s:?}"))?
            }
            _ => return Err("box: entries must be integers or \"p/q\" strings".to_string()),
        };
        window.push(rational);
    }
    let window: [BigRational; 4] = window.try_into().unwrap();
    if window[0] >= window[1] || window[2] >= window[3] {
        return Err("box: window must satisfy xmin < xmax and ymin < ymax".to_string());
    }
    Ok(window)
}
