//! Command-line front-end.
//!
//! Exit codes: 0 for success or a positive verdict, 1 for a negative
//! verdict, 2 for usage, parse and verification errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::calculus::{prove_with, Ax2Variant, SearchConfig, SearchOutcome, SplitSequent};
use crate::formula::Formula;
use crate::interpolation::{craig_interpolant_with, Status};
use crate::normalize::{body_normalize, push_negations, to_cnf, to_nh_nnf};
use crate::parser::parse;
use crate::semantics::{
    entails, eval, render_truth_table, truth_table_json, truth_table_with_cap, Assignment,
};

const SUCCESS: u8 = 0;
const NEGATIVE: u8 = 1;
const FAILURE: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "htcraig",
    version,
    about = "Craig interpolation and entailment checking for the logic of here-and-there"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Close `p^L, ~p^R` leaves with interpolant `~~p` instead of `p`.
    #[arg(long, global = true)]
    ax2_prime: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a formula under an assignment.
    Eval {
        formula: String,
        /// Assignment such as "p=T,q=NF".
        #[arg(long)]
        assign: String,
    },
    /// Decide whether A entails B.
    Entails { a: String, b: String },
    /// Search a proof of the split-sequent A^L => B^R.
    Prove {
        a: String,
        b: String,
        /// Write the proof as JSON to this file.
        #[arg(long)]
        proof_out: Option<PathBuf>,
    },
    /// Compute a Craig interpolant of A and B.
    Interpolate {
        a: String,
        b: String,
        /// Also print the nh-NNF interpolant read off the proof.
        #[arg(long)]
        stage1: bool,
        /// Write the proof as JSON to this file.
        #[arg(long)]
        proof_out: Option<PathBuf>,
        /// Fail with exit code 2 unless the oracle confirms the interpolant.
        #[arg(long)]
        verify: bool,
    },
    /// Print a normal form of a formula.
    Normalize {
        formula: String,
        #[command(flatten)]
        form: NormalForm,
    },
    /// Print the truth table of a formula.
    Truthtable {
        formula: String,
        /// Refuse formulas with more atoms than this.
        #[arg(long, default_value_t = 12)]
        max_atoms: usize,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct NormalForm {
    /// Negation normal form; nh-NNF for formulas containing nh.
    #[arg(long)]
    nnf: bool,
    /// Body-normalized form.
    #[arg(long)]
    body: bool,
    /// Clause form over nh-NNF.
    #[arg(long)]
    cnf: bool,
}

/// Failure that ends a command with exit code 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

type Outcome = Result<u8, Fatal>;

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { FAILURE } else { SUCCESS };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Fatal(message)) => {
            let _ = writeln!(err, "error: {message}");
            FAILURE
        }
    }
}

fn formula(text: &str) -> Result<Formula, Fatal> {
    parse(text).map_err(|e| {
        let caret = format!("{:width$}^", "", width = e.position);
        Fatal(format!("{e}\n  {text}\n  {caret}"))
    })
}

fn emit(
    out: &mut dyn Write,
    format: Format,
    text: &str,
    value: serde_json::Value,
) -> Result<(), Fatal> {
    match format {
        Format::Text => write!(out, "{text}")?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?,
    }
    Ok(())
}

fn write_json_file(path: &Path, value: &impl serde::Serialize) -> Result<(), Fatal> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n")
        .map_err(|e| Fatal(format!("cannot write {}: {e}", path.display())))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let config = SearchConfig {
        ax2: if cli.ax2_prime {
            Ax2Variant::DoubleNegation
        } else {
            Ax2Variant::Atom
        },
        ..SearchConfig::default()
    };
    let format = cli.format;
    match &cli.command {
        Command::Eval {
            formula: text,
            assign,
        } => {
            let f = formula(text)?;
            let v = Assignment::parse(assign)?;
            let value = eval(&f, &v)?;
            emit(
                out,
                format,
                &format!("{value}\n"),
                json!({ "formula": f, "assignment": v, "value": value }),
            )?;
            Ok(SUCCESS)
        }
        Command::Entails { a, b } => {
            let (a, b) = (formula(a)?, formula(b)?);
            let verdict = entails(&a, &b);
            let text = match &verdict.countermodel {
                None => "entails\n".to_string(),
                Some(v) => format!("does not entail\ncountermodel: {v}\n"),
            };
            emit(
                out,
                format,
                &text,
                json!({ "holds": verdict.holds, "countermodel": verdict.countermodel }),
            )?;
            Ok(if verdict.holds { SUCCESS } else { NEGATIVE })
        }
        Command::Prove { a, b, proof_out } => {
            let (a, b) = (formula(a)?, formula(b)?);
            for (which, f) in [("left", &a), ("right", &b)] {
                if !f.is_ht() {
                    return Err(Fatal(format!(
                        "the {which} argument is not an HT formula: {f}"
                    )));
                }
            }
            let root = SplitSequent::root(a, body_normalize(&b)?);
            match prove_with(&root, &config)? {
                SearchOutcome::Proof(proof) => {
                    if let Some(path) = proof_out {
                        write_json_file(path, &proof)?;
                    }
                    let text = format!("{}interpolant: {}\n", proof.render(), proof.interpolant);
                    emit(
                        out,
                        format,
                        &text,
                        json!({ "status": "proved", "proof": proof }),
                    )?;
                    Ok(SUCCESS)
                }
                SearchOutcome::Failure(failure) => {
                    let text = format!(
                        "unprovable leaf: {}\ncountermodel: {}\n",
                        failure.leaf, failure.countermodel
                    );
                    emit(
                        out,
                        format,
                        &text,
                        json!({
                            "status": "failed",
                            "leaf": failure.leaf,
                            "countermodel": failure.countermodel,
                        }),
                    )?;
                    Ok(NEGATIVE)
                }
            }
        }
        Command::Interpolate {
            a,
            b,
            stage1,
            proof_out,
            verify,
        } => {
            let (a, b) = (formula(a)?, formula(b)?);
            let result = craig_interpolant_with(&a, &b, &config)?;
            if let (Some(path), Some(proof)) = (proof_out, &result.proof) {
                write_json_file(path, proof)?;
            }
            let text = match (&result.interpolant, &result.countermodel) {
                (Some(c), _) => {
                    let mut text = format!("{c}\n");
                    if *stage1 {
                        if let Some(cprime) = &result.stage1 {
                            text.push_str(&format!("stage1: {cprime}\n"));
                        }
                    }
                    text
                }
                (None, Some(v)) => format!("does not entail\ncountermodel: {v}\n"),
                (None, None) => unreachable!("a result carries an interpolant or a countermodel"),
            };
            emit(out, format, &text, serde_json::to_value(&result)?)?;
            if *verify {
                if let Some(report) = &result.verification {
                    if !report.all() {
                        return Err(Fatal(format!(
                            "interpolant failed verification: {report:?}"
                        )));
                    }
                }
            }
            Ok(match result.status {
                Status::Entails => SUCCESS,
                Status::NotEntails => NEGATIVE,
            })
        }
        Command::Normalize {
            formula: text,
            form,
        } => {
            let f = formula(text)?;
            let (name, result, clauses) = if form.nnf {
                let g = if f.contains_nh() {
                    to_nh_nnf(&f)?
                } else {
                    push_negations(&f)?
                };
                ("nnf", g, None)
            } else if form.body {
                ("body", body_normalize(&f)?, None)
            } else {
                let clauses = to_cnf(&to_nh_nnf(&f)?)?;
                let g = Formula::conj(clauses.iter().map(|c| c.to_formula()));
                let shown: Vec<String> = clauses.iter().map(ToString::to_string).collect();
                ("cnf", g, Some(shown))
            };
            let mut value = json!({ "formula": f, "normal_form": name, "result": result });
            if let Some(clauses) = clauses {
                value["clauses"] = json!(clauses);
            }
            emit(out, format, &format!("{result}\n"), value)?;
            Ok(SUCCESS)
        }
        Command::Truthtable {
            formula: text,
            max_atoms,
        } => {
            let f = formula(text)?;
            let rows = truth_table_with_cap(&f, *max_atoms)?;
            emit(
                out,
                format,
                &render_truth_table(&f, &rows),
                json!({ "formula": f, "rows": truth_table_json(&rows) }),
            )?;
            Ok(SUCCESS)
        }
    }
}
