//! Command-line front end. Subcommands map one-to-one onto library
//! operations; outputs are stable and machine-parseable.
//!
//! Exit codes: 0 for SAT/VALID/accepted outcomes, 1 for UNSAT/NOT_VALID/
//! rejected outcomes, 2 for any error (bad syntax, bad files, resource
//! limits). Errors are a single diagnostic line on stderr.

use std::fmt::Write;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bpdl::decide::{self, SatLimits, Validity, Verdict};
use bpdl::eval;
use bpdl::filtration;
use bpdl::model::Model;
use bpdl::proof;
use bpdl::syntax::{parse_formula, Formula};

#[derive(Parser)]
#[command(name = "bpdl", about = "Four-valued dynamic logic toolkit", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FormulaInput {
    /// Formula in concrete syntax.
    #[arg(long, conflicts_with = "formula_file")]
    formula: Option<String>,
    /// File containing the formula.
    #[arg(long)]
    formula_file: Option<PathBuf>,
}

#[derive(Args)]
struct LimitInput {
    /// Ceiling on the decision procedure's candidate-type count.
    #[arg(long, default_value_t = 1 << 20)]
    type_limit: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Per-state values of a formula in a model, plus model validity.
    Check {
        /// Model file (JSON).
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        formula: FormulaInput,
    },
    /// Decide satisfiability; print a witness model on SAT.
    Sat {
        #[command(flatten)]
        formula: FormulaInput,
        #[command(flatten)]
        limit: LimitInput,
    },
    /// Decide validity; print a countermodel on NOT_VALID.
    Valid {
        #[command(flatten)]
        formula: FormulaInput,
        #[command(flatten)]
        limit: LimitInput,
    },
    /// Decide global consequence of a goal from premises (one formula per
    /// line; blank lines ignored).
    Global {
        /// Premises file.
        #[arg(long)]
        premises: PathBuf,
        #[command(flatten)]
        formula: FormulaInput,
        #[command(flatten)]
        limit: LimitInput,
    },
    /// Print the closure members of a formula, one per line.
    Fl {
        #[command(flatten)]
        formula: FormulaInput,
    },
    /// Quotient a model through the closure of a formula; print the
    /// quotient model and the class map as one JSON object.
    Filtrate {
        /// Model file (JSON).
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        formula: FormulaInput,
    },
    /// Print the truth and falsity translations of a formula.
    Translate {
        #[command(flatten)]
        formula: FormulaInput,
    },
    /// Check a proof file.
    Prove {
        /// Proof file (JSON).
        #[arg(long)]
        proof: PathBuf,
    },
    /// Exhaustively search small models for a state supporting the
    /// formula.
    Search {
        #[command(flatten)]
        formula: FormulaInput,
        /// Largest state count to enumerate.
        #[arg(long, default_value_t = 3)]
        max_states: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((text, code)) => {
            // A closed pipe downstream is not our error; drop the output.
            let _ = io::Write::write_all(&mut io::stdout(), text.as_bytes());
            ExitCode::from(code)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read_formula(input: &FormulaInput) -> Result<Formula, String> {
    let text = match (&input.formula, &input.formula_file) {
        (Some(text), None) => text.clone(),
        (None, Some(path)) => read_file(path)?,
        _ => return Err("provide exactly one of --formula or --formula-file".into()),
    };
    parse_formula(text.trim()).map_err(|e| e.to_string())
}

fn read_file(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_model(path: &PathBuf) -> Result<Model, String> {
    Model::from_json(&read_file(path)?).map_err(|e| e.to_string())
}

fn witness_block(model: &Model, state: usize) -> String {
    format!("{}\nstate: {}\n", model.to_json(), model.state_name(state))
}

fn run(command: Command) -> Result<(String, u8), String> {
    match command {
        Command::Check { model, formula } => {
            let m = read_model(&model)?;
            let f = read_formula(&formula)?;
            let mut session = eval::Session::new(&m);
            let mut out = String::new();
            for x in 0..m.n_states() {
                let _ = writeln!(out, "state {}: {}", m.state_name(x), session.belnap_value(x, &f));
            }
            let _ = writeln!(out, "valid: {}", session.valid_in_model(&f));
            Ok((out, 0))
        }
        Command::Sat { formula, limit } => {
            let f = read_formula(&formula)?;
            let limits = SatLimits { max_types: limit.type_limit };
            match decide::sat(&f, &limits).map_err(|e| e.to_string())? {
                Verdict::Sat { model, state } => {
                    Ok((format!("SAT\n{}", witness_block(&model, state)), 0))
                }
                Verdict::Unsat => Ok(("UNSAT\n".into(), 1)),
            }
        }
        Command::Valid { formula, limit } => {
            let f = read_formula(&formula)?;
            let limits = SatLimits { max_types: limit.type_limit };
            report_validity(decide::validity(&f, &limits).map_err(|e| e.to_string())?)
        }
        Command::Global { premises, formula, limit } => {
            let goal = read_formula(&formula)?;
            let mut parsed = Vec::new();
            for (i, line) in read_file(&premises)?.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                parsed.push(
                    parse_formula(line)
                        .map_err(|e| format!("premise on line {}: {e}", i + 1))?,
                );
            }
            let limits = SatLimits { max_types: limit.type_limit };
            let reduction = decide::global_consequence_reduction(&parsed, &goal);
            report_validity(decide::validity(&reduction, &limits).map_err(|e| e.to_string())?)
        }
        Command::Fl { formula } => {
            let f = read_formula(&formula)?;
            let mut out = String::new();
            for member in bpdl::closure::fl_closure(&f).iter() {
                let _ = writeln!(out, "{member}");
            }
            Ok((out, 0))
        }
        Command::Filtrate { model, formula } => {
            let m = read_model(&model)?;
            let f = read_formula(&formula)?;
            let closure = bpdl::closure::fl_closure(&f);
            let result = filtration::filtrate(&m, &closure);
            let quotient: serde_json::Value =
                serde_json::from_str(&result.quotient.to_json()).expect("model JSON is valid");
            let classes: serde_json::Map<String, serde_json::Value> = (0..m.n_states())
                .map(|x| {
                    (
                        m.state_name(x).to_string(),
                        serde_json::Value::String(
                            result.quotient.state_name(result.class_of[x]).to_string(),
                        ),
                    )
                })
                .collect();
            let output = serde_json::json!({ "model": quotient, "classes": classes });
            let text = serde_json::to_string_pretty(&output).expect("valid JSON");
            Ok((format!("{text}\n"), 0))
        }
        Command::Translate { formula } => {
            let f = read_formula(&formula)?;
            let (truth, falsity) = decide::translate(&f);
            Ok((format!("t: {truth}\nf: {falsity}\n"), 0))
        }
        Command::Prove { proof } => {
            let doc = proof::load_proof(&read_file(&proof)?).map_err(|e| e.to_string())?;
            let result = proof::check_proof(&doc);
            let code = if result.is_accepted() { 0 } else { 1 };
            Ok((format!("{result}\n"), code))
        }
        Command::Search { formula, max_states } => {
            if max_states == 0 {
                return Err("--max-states must be at least 1".into());
            }
            let f = read_formula(&formula)?;
            match decide::bounded_countermodel_search(&f, max_states) {
                Some((model, state)) => {
                    Ok((format!("SAT\n{}", witness_block(&model, state)), 0))
                }
                None => Ok(("NO_WITNESS\n".into(), 1)),
            }
        }
    }
}

fn report_validity(outcome: Validity) -> Result<(String, u8), String> {
    match outcome {
        Validity::Valid => Ok(("VALID\n".into(), 0)),
        Validity::NotValid { countermodel, state } => {
            Ok((format!("NOT_VALID\n{}", witness_block(&countermodel, state)), 1))
        }
    }
}
