use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use milnor_core::atlas::{family_ring, family_text, FamilyId};
use milnor_core::field::{CoefficientField, DEFAULT_PRIME};
use milnor_core::report::{parse_input, run_analysis, run_corpus, Options, Report};
use milnor_core::Error;

#[derive(Parser)]
#[command(name = "milnor", version, about = "Milnor algebras, mixed multiplicities and polar degrees of projective hypersurfaces")]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Flags {
    /// Prime field for modular computations.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u32,
    /// Compute over the rationals instead of a prime field.
    #[arg(long, global = true)]
    rational: bool,
    /// Independent seeds per randomized invariant; all must agree.
    #[arg(long, global = true, default_value_t = 2)]
    trials: u32,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Restrict the corpus to one module.
    #[arg(long, global = true)]
    only: Option<String>,
    /// Emit one JSON document instead of `key: value` lines.
    #[arg(long, global = true)]
    machine: bool,
    /// Add wall-clock timings to reports (breaks byte-for-byte reproducibility).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the homogeneous polynomial in a file.
    Analyze { file: PathBuf },
    /// Analyze a hyperplane arrangement, one linear form per line.
    Arrangement { file: PathBuf },
    /// Print the equation of a named polynomial or family member.
    Family { id: String, d: Option<u32> },
    /// Run the regression corpus.
    Corpus,
}

impl Flags {
    fn field(&self) -> CoefficientField {
        if self.rational {
            CoefficientField::ExactRational
        } else {
            CoefficientField::PrimeField(self.prime)
        }
    }

    fn options(&self) -> Options {
        Options { field: self.field(), seed: self.seed, trials: self.trials, timings: self.timings }
    }

    fn emit(&self, report: &Report) {
        if self.machine {
            out(&format!("{}\n", report.to_machine()));
        } else {
            out(&report.to_text());
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Syntax { pos: 0, msg: format!("{}: {e}", path.display()) })
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let flags = &cli.flags;
    match &cli.command {
        Command::Analyze { file } => {
            let input = parse_input(&read(file)?)?;
            flags.emit(&run_analysis(&input, &flags.options(), false)?);
        }
        Command::Arrangement { file } => {
            let input = parse_input(&read(file)?)?;
            flags.emit(&run_analysis(&input, &flags.options(), true)?);
        }
        Command::Family { id, d } => {
            let id = match d {
                Some(_) => FamilyId::from_parts(id, *d)?,
                None => id.parse::<FamilyId>()?,
            };
            let text = family_text(id)?;
            if flags.machine {
                let mut r = Report::default();
                r.push("family", id.to_string());
                r.push("degree", id.degree());
                r.push("vars", family_ring(id).names().join(","));
                r.push("polynomial", text);
                flags.emit(&r);
            } else {
                out(&format!("vars: {}\n{text}\n", family_ring(id).names().join(", ")));
            }
        }
        Command::Corpus => {
            let rows = run_corpus(flags.field(), flags.seed, flags.only.as_deref())?;
            let failed = rows.iter().filter(|r| !r.pass).count();
            if flags.machine {
                let value: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "module": r.module, "name": r.name, "expected": r.expected,
                            "computed": r.computed, "pass": r.pass,
                        })
                    })
                    .collect();
                out(&format!("{}\n", serde_json::to_string_pretty(&value).expect("rows serialize")));
            } else {
                let mut text = String::new();
                for r in &rows {
                    let tag = if r.pass { "PASS" } else { "FAIL" };
                    text += &format!("{tag} [{}] {}: expected {}, computed {}\n", r.module, r.name, r.expected, r.computed);
                }
                text += &format!("{} of {} corpus checks passed over {}\n", rows.len() - failed, rows.len(), flags.field());
                out(&text);
            }
            if failed > 0 {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
