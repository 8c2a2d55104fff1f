//! `tdo`: parse, measure, build, rewrite, verify and certify Clifford+T
//! circuits.
//!
//! Circuit text goes to stdout. Metrics, verification and obstruction
//! results go to stdout as JSON. With `--json` a report object
//! `{command, status, payload | error}` is also written to stderr.
//! Exit codes: 0 success, 1 invalid input or failed check, 2 I/O error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use tdo_core::constructions::{ConstructionId, ConstructionName};
use tdo_core::obstruction::tht;
use tdo_core::sim::{equivalence_phase, SimError};
use tdo_core::{
    build, emit, obstruction_verdict, parse, rewrite_budgeted, Circuit, ObstructionError,
    RewriteError, SimConfig, SourceError,
};

#[derive(Parser)]
#[command(
    name = "tdo",
    version,
    about = "Exact Clifford+T circuit tools focused on T-depth"
)]
struct Cli {
    /// Also write a JSON report to stderr.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a circuit file and print it in canonical form.
    Parse { file: PathBuf },
    /// Print T-count, T-depth and depth metrics.
    Metrics { file: PathBuf },
    /// Print a built-in construction.
    Emit {
        name: String,
        /// Number of controls (multi-controlled-x only).
        #[arg(long)]
        controls: Option<usize>,
        /// Use the ancilla-free variant where one exists.
        #[arg(long)]
        no_ancilla: bool,
    },
    /// Rewrite an almost-classical+T circuit to low T-depth using ancillas.
    Rewrite {
        file: PathBuf,
        /// Number of T-stages; more stages need fewer ancillas.
        #[arg(long, default_value_t = 1)]
        stages: usize,
    },
    /// Check two circuits for exact equivalence.
    Verify {
        file1: PathBuf,
        file2: PathBuf,
        /// Accept a global phase of the form w^j.
        #[arg(long)]
        up_to_global_phase: bool,
    },
    /// Test whether a one-qubit circuit provably has no T-depth-1 form.
    #[command(group(ArgGroup::new("input").required(true).args(["file", "builtin"])))]
    Obstruct {
        file: Option<PathBuf>,
        #[arg(long, value_parser = ["tht"])]
        builtin: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Parse { .. } => "parse",
            Command::Metrics { .. } => "metrics",
            Command::Emit { .. } => "emit",
            Command::Rewrite { .. } => "rewrite",
            Command::Verify { .. } => "verify",
            Command::Obstruct { .. } => "obstruct",
        }
    }
}

enum Failure {
    /// Bad input or a domain error: exit 1.
    Domain(Value),
    /// Unreadable file: exit 2.
    Io(Value),
}

impl Failure {
    fn domain(message: impl ToString) -> Self {
        Failure::Domain(json!({ "message": message.to_string() }))
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        match e {
            SimError::AncillaContractViolated { input } => {
                Failure::Domain(json!({ "message": e.to_string(), "input": input }))
            }
            e => Failure::domain(e),
        }
    }
}

impl From<RewriteError> for Failure {
    fn from(e: RewriteError) -> Self {
        match &e {
            RewriteError::NotAlmostClassical { position, .. } => {
                Failure::Domain(json!({ "message": e.to_string(), "position": position }))
            }
            _ => Failure::domain(e),
        }
    }
}

impl From<ObstructionError> for Failure {
    fn from(e: ObstructionError) -> Self {
        Failure::domain(e)
    }
}

/// What a command produced.
struct Output {
    /// Printed on stdout.
    stdout: String,
    payload: Value,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn read_circuit(path: &Path) -> Result<Circuit, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Failure::Io(json!({ "message": e.to_string(), "file": path.display().to_string() }))
    })?;
    parse(&text).map_err(|e: SourceError| {
        let mut v = to_value(&e);
        v["file"] = json!(path.display().to_string());
        Failure::Domain(v)
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn run(command: &Command, cfg: &SimConfig) -> Result<Output, Failure> {
    match command {
        Command::Parse { file } => {
            let c = read_circuit(file)?;
            Ok(Output {
                stdout: emit(&c),
                payload: json!({ "n_main": c.n_main(), "n_anc": c.n_anc(), "gate_count": c.gate_count() }),
            })
        }
        Command::Metrics { file } => {
            let m = to_value(&read_circuit(file)?.metrics());
            Ok(Output {
                stdout: pretty(&m),
                payload: m,
            })
        }
        Command::Emit {
            name,
            controls,
            no_ancilla,
        } => {
            let parsed: ConstructionName = name.parse().map_err(Failure::domain)?;
            let mut id = ConstructionId::new(parsed);
            id.controls = *controls;
            id.use_ancilla = !no_ancilla;
            let c = build(&id).map_err(Failure::domain)?;
            Ok(Output {
                stdout: emit(&c),
                payload: json!({ "name": parsed.as_str(), "metrics": to_value(&c.metrics()) }),
            })
        }
        Command::Rewrite { file, stages } => {
            let c = read_circuit(file)?;
            let out = rewrite_budgeted(&c, *stages)?;
            Ok(Output {
                stdout: emit(&out),
                payload: json!({
                    "stages": stages,
                    "ancillas_added": out.n_anc() - c.n_anc(),
                    "t_count": out.t_count(),
                    "t_depth": out.t_depth_scheduled(),
                    "metrics": to_value(&out.metrics()),
                }),
            })
        }
        Command::Verify {
            file1,
            file2,
            up_to_global_phase,
        } => {
            let (a, b) = (read_circuit(file1)?, read_circuit(file2)?);
            let phase = equivalence_phase(&a, &b, cfg)?;
            let equivalent = match phase {
                Some(0) => true,
                Some(_) => *up_to_global_phase,
                None => false,
            };
            let mut v = json!({ "equivalent": equivalent });
            if let (true, Some(j)) = (*up_to_global_phase, phase) {
                v["phase"] = json!(format!("w^{j}"));
            }
            Ok(Output {
                stdout: pretty(&v),
                payload: v,
            })
        }
        Command::Obstruct { file, builtin } => {
            let c = match (file, builtin) {
                (Some(f), _) => read_circuit(f)?,
                (None, _) => tht(),
            };
            let v = to_value(&obstruction_verdict(&c, cfg)?);
            Ok(Output {
                stdout: pretty(&v),
                payload: v,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = SimConfig::from_env();
    let name = cli.command.name();
    match run(&cli.command, &cfg) {
        Ok(out) => {
            print!("{}", out.stdout);
            if cli.json {
                eprintln!(
                    "{}",
                    json!({ "command": name, "status": "ok", "payload": out.payload })
                );
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (code, err) = match f {
                Failure::Domain(v) => (1, v),
                Failure::Io(v) => (2, v),
            };
            if cli.json {
                eprintln!(
                    "{}",
                    json!({ "command": name, "status": "error", "error": err })
                );
            } else {
                let pos = match (err.get("line"), err.get("column")) {
                    (Some(l), Some(c)) => format!("line {l}, column {c}: "),
                    _ => String::new(),
                };
                let file = err
                    .get("file")
                    .and_then(Value::as_str)
                    .map(|f| format!("{f}: "))
                    .unwrap_or_default();
                let msg = err["message"].as_str().unwrap_or_default();
                eprintln!("tdo {name}: {file}{pos}{msg}");
            }
            ExitCode::from(code)
        }
    }
}
