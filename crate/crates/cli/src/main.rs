//! `intform`: lattice invariants, surface invariants and the bounded
//! verification run from the command line.
//!
//! Exit codes: 0 when a result was computed (including "inconsistent" and
//! "NotDiagonalizable" answers), 1 when verification found counterexamples,
//! 2 on bad input.

mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, Subcommand};
use intform::classes::{blow_up, TABLE};
use intform::classify::{
    classify, enumerate_vectors_of_norm, is_characteristic_vector, Classification,
};
use intform::surface::consistency_report;
use intform::verdict::{definite_verdict_with, verify_main_theorems};
use intform::{Bounds, IntegralLattice, LatticeClass, SurfaceError};
use num::BigInt;
use serde::Serialize;

use input::{LatticeSource, LatticeSources, SurfaceSource};

pub enum Failure {
    Input(String),
    Counterexamples(usize),
}

#[derive(Parser)]
#[command(
    name = "intform",
    version,
    about = "Unimodular lattices and definite surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants and classification of integral lattices
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// Consistency, classification and blow-ups of surface invariants
    Surface {
        #[command(subcommand)]
        command: SurfaceCommand,
    },
    /// Bounded exhaustive check of the definite-surface classification
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Signature (pos,neg,null)
    Signature {
        #[command(flatten)]
        source: LatticeSource,
        #[arg(long)]
        json: bool,
    },
    /// even or odd
    Parity {
        #[command(flatten)]
        source: LatticeSource,
        #[arg(long)]
        json: bool,
    },
    /// Determinant of the Gram matrix
    Det {
        #[command(flatten)]
        source: LatticeSource,
        #[arg(long)]
        json: bool,
    },
    /// Orthogonal direct sum of the given lattices, in order
    Sum {
        #[command(flatten)]
        sources: LatticeSources,
        #[arg(long)]
        json: bool,
    },
    /// Isometry class of a unimodular lattice
    Classify {
        #[command(flatten)]
        source: LatticeSource,
        #[arg(long)]
        json: bool,
    },
    /// Vectors of a given norm in a definite lattice, one per ± pair
    Vectors {
        #[command(flatten)]
        source: LatticeSource,
        #[arg(long, allow_hyphen_values = true)]
        norm: BigInt,
        #[arg(long)]
        json: bool,
    },
    /// Whether a vector is characteristic
    Characteristic {
        #[command(flatten)]
        source: LatticeSource,
        /// Coordinates as a JSON array, e.g. "[1,1]"
        #[arg(long)]
        vector: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum SurfaceCommand {
    /// Report violated relations between the invariants
    Check {
        #[command(flatten)]
        source: SurfaceSource,
        #[arg(long)]
        json: bool,
    },
    /// Definiteness, allowed classes and intersection form
    Classify {
        #[command(flatten)]
        source: SurfaceSource,
        #[arg(long)]
        json: bool,
    },
    /// Invariants after k blow-ups (always printed as JSON)
    Blowup {
        #[command(flatten)]
        source: SurfaceSource,
        #[arg(short, long)]
        k: u32,
    },
    /// The classification table
    Table {
        #[arg(long)]
        json: bool,
    },
    /// List catalog entries
    Catalog {
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = Bounds::default().q_max)]
    qmax: i64,
    #[arg(long, default_value_t = Bounds::default().pg_max)]
    pgmax: i64,
    #[arg(long, default_value_t = Bounds::default().b2_max)]
    b2max: i64,
    #[arg(long, default_value_t = Bounds::default().k_max)]
    kmax: u32,
    /// Only enumerate Kähler surfaces
    #[arg(long)]
    kahler_only: bool,
    /// Write the JSON report here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report to standard output
    #[arg(long)]
    json: bool,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable output")
}

fn vector_json(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(BigInt::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn input_error(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

#[derive(Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
enum ClassifyJson<'a> {
    Class {
        class: &'a LatticeClass,
    },
    NotDiagonalizable {
        units: &'a LatticeClass,
        remainder: &'a IntegralLattice,
    },
    NotUnimodular,
}

fn run_lattice(command: LatticeCommand, matches: &ArgMatches) -> Result<(), Failure> {
    match command {
        LatticeCommand::Signature { source, json } => {
            let sig = source.read()?.signature();
            println!("{}", if json { to_json(&sig) } else { sig.to_string() });
        }
        LatticeCommand::Parity { source, json } => {
            let parity = source.read()?.parity().map_err(input_error)?;
            if json {
                println!("{{\"parity\":{}}}", to_json(&parity));
            } else {
                println!("{parity}");
            }
        }
        LatticeCommand::Det { source, json } => {
            let det = source.read()?.determinant();
            if json {
                println!("{{\"det\":{det}}}");
            } else {
                println!("{det}");
            }
        }
        LatticeCommand::Sum { json, .. } => {
            let sum_matches = matches
                .subcommand_matches("lattice")
                .and_then(|m| m.subcommand_matches("sum"))
                .expect("dispatched on sum");
            let total = LatticeSources::read_ordered(sum_matches)?
                .into_iter()
                .reduce(|a, b| a.direct_sum(&b))
                .expect("at least one summand");
            println!(
                "{}",
                if json {
                    to_json(&total)
                } else {
                    total.to_string()
                }
            );
        }
        LatticeCommand::Classify { source, json } => {
            let result = classify(&source.read()?);
            let shape = match &result {
                Classification::Class(class) => ClassifyJson::Class { class },
                Classification::NotDiagonalizable { units, remainder } => {
                    ClassifyJson::NotDiagonalizable { units, remainder }
                }
                Classification::NotUnimodular => ClassifyJson::NotUnimodular,
            };
            if json {
                println!("{}", to_json(&shape));
            } else {
                match &result {
                    Classification::Class(class) => println!("{class}"),
                    Classification::NotDiagonalizable { units, remainder } => {
                        println!(
                            "NotDiagonalizable: split off {units}; remainder of rank {} has no vector of norm ±1",
                            remainder.rank()
                        );
                        println!("remainder: {remainder}");
                    }
                    Classification::NotUnimodular => println!("NotUnimodular"),
                }
            }
        }
        LatticeCommand::Vectors { source, norm, json } => {
            let vectors = enumerate_vectors_of_norm(&source.read()?, &norm).map_err(input_error)?;
            let lines: Vec<String> = vectors.iter().map(|v| vector_json(v)).collect();
            if json {
                println!("[{}]", lines.join(","));
            } else {
                for line in lines {
                    println!("{line}");
                }
            }
        }
        LatticeCommand::Characteristic {
            source,
            vector,
            json,
        } => {
            let lattice = source.read()?;
            let coords: Vec<serde_json::Number> = serde_json::from_str(&vector)
                .map_err(|e| Failure::Input(format!("bad vector: {e}")))?;
            let w = coords
                .iter()
                .map(|n| n.to_string().parse::<BigInt>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Input(format!("bad vector: {e}")))?;
            let answer = is_characteristic_vector(&lattice, &w).map_err(input_error)?;
            if json {
                println!("{{\"characteristic\":{answer}}}");
            } else {
                println!("{answer}");
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckJson {
    consistent: bool,
    violations: Vec<intform::Violation>,
}

fn print_inconsistent(violations: &[intform::Violation], json: bool) {
    if json {
        println!(
            "{}",
            to_json(&CheckJson {
                consistent: false,
                violations: violations.to_vec(),
            })
        );
    } else {
        let names: Vec<String> = violations.iter().map(ToString::to_string).collect();
        println!("inconsistent: {}", names.join(", "));
    }
}

fn run_surface(command: SurfaceCommand) -> Result<(), Failure> {
    match command {
        SurfaceCommand::Check { source, json } => {
            let s = source.read()?.invariants;
            let violations = consistency_report(&s);
            if violations.is_empty() {
                if json {
                    println!(
                        "{}",
                        to_json(&CheckJson {
                            consistent: true,
                            violations,
                        })
                    );
                } else {
                    println!("consistent");
                }
            } else {
                print_inconsistent(&violations, json);
            }
        }
        SurfaceCommand::Classify { source, json } => {
            let surface = source.read()?;
            match definite_verdict_with(&surface.invariants, surface.parity_hint()) {
                Ok(v) => println!("{}", if json { to_json(&v) } else { v.to_string() }),
                Err(SurfaceError::Inconsistent(_)) => {
                    let mut violations = consistency_report(&surface.invariants);
                    if violations.is_empty() {
                        violations.push(intform::Violation::B1);
                    }
                    print_inconsistent(&violations, json);
                }
                Err(e) => return Err(input_error(e)),
            }
        }
        SurfaceCommand::Blowup { source, k } => {
            let s = source.read()?.invariants;
            match blow_up(&s, k) {
                Ok(b) => println!("{}", to_json(&b)),
                Err(SurfaceError::Inconsistent(_)) => {
                    print_inconsistent(&consistency_report(&s), false)
                }
                Err(e) => return Err(input_error(e)),
            }
        }
        SurfaceCommand::Table { json } => {
            if json {
                println!("{}", to_json(&TABLE));
            } else {
                for row in TABLE.iter() {
                    println!("{row}");
                }
            }
        }
        SurfaceCommand::Catalog { catalog, json } => {
            let source = SurfaceSource::with_catalog(catalog);
            let catalog = source.catalog()?;
            if json {
                println!("{}", to_json(&catalog));
            } else {
                for e in &catalog.entries {
                    let lattice = e
                        .known_lattice
                        .map(|l| l.to_string())
                        .unwrap_or_else(|| "Undetermined".into());
                    println!(
                        "{:<32} {}(k={})  {}",
                        e.name, e.class_label, e.blowups, lattice
                    );
                }
            }
        }
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<(), Failure> {
    let bounds = Bounds {
        q_max: args.qmax,
        pg_max: args.pgmax,
        b2_max: args.b2max,
        k_max: args.kmax,
        kahler_only: args.kahler_only,
    };
    let report = verify_main_theorems(&bounds).map_err(Failure::Input)?;
    if let Some(path) = &args.out {
        let text = serde_json::to_string_pretty(&report).expect("serializable report") + "\n";
        std::fs::write(path, text)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    if args.json {
        println!("{}", to_json(&report));
    } else {
        println!("checked: {}", report.checked);
        println!("definite kahler: {}", report.definite_kahler.len());
        println!("definite non-kahler: {}", report.definite_nonkahler.len());
        println!("counterexamples: {}", report.counterexamples.len());
        for c in &report.counterexamples {
            println!("  {} {}: {}", to_json(&c.invariants), c.generator, c.reason);
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Counterexamples(report.counterexamples.len()))
    }
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = match cli.command {
        Command::Lattice { command } => run_lattice(command, &matches),
        Command::Surface { command } => run_surface(command),
        Command::Verify(args) => run_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Counterexamples(n)) => {
            eprintln!("verification failed: {n} counterexamples");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
