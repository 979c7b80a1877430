//! Command-line surface.
//!
//! Exit codes: 0 on success, 1 when an analysis finds a violation or a
//! negative answer, 2 on input errors (bad files, bad flags), 3 when a
//! resource limit stops the computation. The environment variable
//! `FUSIONSCOPE_SEED` overrides the default solver seed; an explicit
//! `--seed` overrides both.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::catalog;
use crate::format::RingDocument;
use crate::iso;
use crate::recovery;
use crate::report::{self, AnalyzeOptions};
use crate::ring::FusionRing;
use crate::solver::{self, SolverConfig, SolverError};
use crate::su2::{self, SpinIndex, Su2Character, Su2Error};
use crate::subrings::{self, SubringError, DEFAULT_MAX_RANK};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

const DEFAULT_INTEGER_BOUND: i64 = 10;

#[derive(Parser)]
#[command(
    name = "fusionscope",
    about = "Recover group structure from fusion rules",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a ring document against the fusion ring axioms.
    Validate { file: PathBuf },
    /// Run every analysis on a ring document and print the report.
    Analyze {
        file: PathBuf,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Solver seed (default 17, or FUSIONSCOPE_SEED).
        #[arg(long)]
        seed: Option<u64>,
        /// Solver residual tolerance (default 1e-9).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Print the chain group of a ring document.
    ChainGroup { file: PathBuf },
    /// Enumerate the representation subrings of a ring document.
    Subrings {
        file: PathBuf,
        /// Refuse rings with more than this many basis elements.
        #[arg(long, default_value_t = DEFAULT_MAX_RANK)]
        max_rank: usize,
    },
    /// Solve the character system of a ring document.
    CharTable {
        file: PathBuf,
        /// Also search for positive-integer solutions.
        #[arg(long)]
        integer_solutions: bool,
        /// Upper bound per component for the integer search.
        #[arg(long, default_value_t = DEFAULT_INTEGER_BOUND)]
        bound: i64,
        /// Solver seed (default 17, or FUSIONSCOPE_SEED).
        #[arg(long)]
        seed: Option<u64>,
        /// Solver residual tolerance (default 1e-9).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Search for an order isomorphism between two ring documents.
    Isomorphic { file_a: PathBuf, file_b: PathBuf },
    /// Closed-form SU(2) engine.
    Su2 {
        #[command(subcommand)]
        command: Su2Command,
    },
    /// Built-in example documents.
    Examples {
        #[command(subcommand)]
        command: ExamplesCommand,
    },
}

#[derive(Subcommand)]
enum Su2Command {
    /// Re-derive the half-spin tensor rows from dimension data.
    Derive {
        /// Largest spin, as an integer or half-integer such as 5/2.
        #[arg(long)]
        jmax: String,
        /// Also write the truncated ring document to this path.
        #[arg(long)]
        emit_ring: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExamplesCommand {
    /// List the catalog entries.
    List,
    /// Write one catalog document to the current directory.
    Emit { name: String },
}

/// Entry point for the binary.
pub fn run_from_env() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    run(&args, &mut std::io::stdout(), &mut std::io::stderr())
}

/// Runs one command; output goes to the given writers.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                say(out, &rendered);
                EXIT_OK
            } else {
                say(err, &rendered);
                EXIT_INPUT
            };
        }
    };
    match cli.command {
        Command::Validate { file } => cmd_validate(&file, out, err),
        Command::Analyze { file, json, seed, tol } => {
            cmd_analyze(&file, json, seed, tol, out, err)
        }
        Command::ChainGroup { file } => cmd_chain_group(&file, out, err),
        Command::Subrings { file, max_rank } => cmd_subrings(&file, max_rank, out, err),
        Command::CharTable { file, integer_solutions, bound, seed, tol } => {
            cmd_char_table(&file, integer_solutions, bound, seed, tol, out, err)
        }
        Command::Isomorphic { file_a, file_b } => cmd_isomorphic(&file_a, &file_b, out, err),
        Command::Su2 { command: Su2Command::Derive { jmax, emit_ring } } => {
            cmd_su2_derive(&jmax, emit_ring.as_deref(), out, err)
        }
        Command::Examples { command } => cmd_examples(command, out, err),
    }
}

fn say(w: &mut dyn Write, text: &str) {
    let _ = writeln!(w, "{text}");
}

fn load(path: &Path, err: &mut dyn Write) -> Result<(RingDocument, Arc<FusionRing>), i32> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => {
            say(err, &format!("cannot read {}: {e}", path.display()));
            return Err(EXIT_INPUT);
        }
    };
    let doc = match RingDocument::parse(&text) {
        Ok(doc) => doc,
        Err(e) => {
            say(err, &format!("{}: {e}", path.display()));
            return Err(EXIT_INPUT);
        }
    };
    let ring = doc.to_ring().expect("parse already built this ring");
    Ok((doc, Arc::new(ring)))
}

fn resolve_seed(flag: Option<u64>, err: &mut dyn Write) -> Result<u64, i32> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("FUSIONSCOPE_SEED") {
        Ok(value) => value.parse().map_err(|_| {
            say(err, &format!("FUSIONSCOPE_SEED `{value}` is not an unsigned integer"));
            EXIT_INPUT
        }),
        Err(_) => Ok(solver::DEFAULT_SEED),
    }
}

fn cmd_validate(file: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (_, ring) = match load(file, err) {
        Ok(loaded) => loaded,
        Err(code) => return code,
    };
    let outcome = ring.validate();
    if outcome.is_valid() {
        let scope = if ring.is_truncated() { " on its trusted products" } else { "" };
        say(out, &format!("ok: {} satisfies the fusion ring axioms{scope}", ring.name()));
        EXIT_OK
    } else {
        for violation in outcome.violations() {
            say(out, &format!("violation: {violation}"));
        }
        EXIT_NEGATIVE
    }
}

fn cmd_analyze(
    file: &Path,
    json: bool,
    seed: Option<u64>,
    tol: Option<f64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let (doc, _) = match load(file, err) {
        Ok(loaded) => loaded,
        Err(code) => return code,
    };
    let seed = match resolve_seed(seed, err) {
        Ok(seed) => seed,
        Err(code) => return code,
    };
    let options = AnalyzeOptions {
        seed,
        tol: tol.unwrap_or(solver::DEFAULT_TOL),
        ..AnalyzeOptions::default()
    };
    match report::analyze(&doc, &options) {
        Ok(report) => {
            if json {
                let _ = write!(out, "{}", report.to_json());
            } else {
                let _ = write!(out, "{}", report.render_text());
            }
            if report.is_clean() { EXIT_OK } else { EXIT_NEGATIVE }
        }
        Err(e) => {
            say(err, &format!("{}: {e}", file.display()));
            EXIT_INPUT
        }
    }
}

fn cmd_chain_group(file: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (_, ring) = match load(file, err) {
        Ok(loaded) => loaded,
        Err(code) => return code,
    };
    match recovery::chain_group(&ring) {
        Ok(result) => {
            say(out, &format!("chain group: {}", result.group().describe()));
            for class in result.classes() {
                let labels: Vec<&str> = class.iter().map(|&p| ring.label(p)).collect();
                say(out, &format!("  class: {}", labels.join(" ")));
            }
            EXIT_OK
        }
        Err(e) => {
            say(out, &format!("chain group undetermined: {e}"));
            EXIT_NEGATIVE
        }
    }
}

fn cmd_subrings(file: &Path, max_rank: usize, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (_, ring) = match load(file, err) {
        Ok(loaded) => loaded,
        Err(code) => return code,
    };
    match subrings::enumerate_subrings(&ring, max_rank) {
        Ok(lattice) => {
            say(out, &format!("{} representation subrings", lattice.len()));
            for sub in lattice.iter() {
                say(out, &format!("  rank {}: {}", sub.rank(), sub.labels().join(" ")));
            }
            EXIT_OK
        }
        Err(e @ SubringError::RankOverBound { .. }) => {
            say(err, &e.to_string());
            EXIT_RESOURCE
        }
        Err(e) => {
            say(err, &e.to_string());
            EXIT_INPUT
        }
    }
}

fn cmd_char_table(
    file: &Path,
    integer_solutions: bool,
    bound: i64,
    seed: Option<u64>,
    tol: Option<f64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let (_, ring) = match load(file, err) {
        Ok(loaded) => loaded,
        Err(code) => return code,
    };
    let seed = match resolve_seed(seed, err) {
        Ok(seed) => seed,
        Err(code) => return code,
    };
    let config = SolverConfig {
        seed,
        tol: tol.unwrap_or(solver::DEFAULT_TOL),
        ..SolverConfig::default()
    };
    match solver::solve_character_system(&ring, &config) {
        Ok(solutions) => {
            say(out, &format!("{} character solutions", solutions.len()));
            for solution in &solutions {
                let values: Vec<String> =
                    solution.values.iter().map(|z| report::format_complex_rounded(*z)).collect();
                say(
                    out,
                    &format!("  ({})  residual {:.1e}", values.join(", "), solution.residual),
                );
            }
            if integer_solutions {
                match solver::integer_positive_solutions(&ring, bound, solver::DEFAULT_NODE_LIMIT)
                {
                    Ok(found) => {
                        say(out, &format!("{} positive integer solutions (bound {bound})", found.len()));
                        for vector in &found {
                            let rendered: Vec<String> =
                                vector.iter().map(i64::to_string).collect();
                            say(out, &format!("  ({})", rendered.join(", ")));
                        }
                    }
                    Err(e @ SolverError::ResourceLimit { .. }) => {
                        say(err, &e.to_string());
                        return EXIT_RESOURCE;
                    }
                    Err(e @ SolverError::BadBound { .. }) => {
                        say(err, &e.to_string());
                        return EXIT_INPUT;
                    }
                    Err(e) => {
                        say(err, &e.to_string());
                        return EXIT_NEGATIVE;
                    }
                }
            }
            EXIT_OK
        }
        Err(e @ SolverError::ResourceLimit { .. }) => {
            say(err, &e.to_string());
            EXIT_RESOURCE
        }
        Err(e) => {
            say(err, &format!("character system unsolved: {e}"));
            EXIT_NEGATIVE
        }
    }
}

fn cmd_isomorphic(file_a: &Path, file_b: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (_, ring_a) = match load(file_a, err) {
        Ok(loaded) => loaded,
        Err(code) => return code,
    };
    let (_, ring_b) = match load(file_b, err) {
        Ok(loaded) => loaded,
        Err(code) => return code,
    };
    match iso::find_order_isomorphism(&ring_a, &ring_b, DEFAULT_MAX_RANK) {
        Ok(Some(found)) => {
            say(
                out,
                &format!("order isomorphism: {} ~ {}", ring_a.name(), ring_b.name()),
            );
            for (p, &q) in found.perm().iter().enumerate() {
                say(out, &format!("  {} -> {}", ring_a.label(p), ring_b.label(q)));
            }
            EXIT_OK
        }
        Ok(None) => {
            say(out, "no order isomorphism exists");
            EXIT_NEGATIVE
        }
        Err(e @ SubringError::RankOverBound { .. }) => {
            say(err, &e.to_string());
            EXIT_RESOURCE
        }
        Err(e) => {
            say(err, &e.to_string());
            EXIT_INPUT
        }
    }
}

fn parse_jmax(text: &str) -> Result<u32, String> {
    let parsed = if let Some(head) = text.strip_suffix("/2") {
        head.parse::<u32>().ok()
    } else {
        text.parse::<u32>().ok().and_then(|n| n.checked_mul(2))
    };
    parsed.ok_or_else(|| format!("jmax `{text}` is not a spin like 3 or 7/2"))
}

fn render_su2_character(character: &Su2Character) -> String {
    let terms: Vec<String> = character
        .terms()
        .map(|(spin, coeff)| {
            if coeff == 1 {
                format!("chi({spin})")
            } else {
                format!("{coeff} chi({spin})")
            }
        })
        .collect();
    if terms.is_empty() { "0".to_string() } else { terms.join(" + ") }
}

fn cmd_su2_derive(
    jmax: &str,
    emit_ring: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let max_twice = match parse_jmax(jmax) {
        Ok(value) => value,
        Err(message) => {
            say(err, &message);
            return EXIT_INPUT;
        }
    };
    let table = match su2::derive_half_tensor(max_twice) {
        Ok(table) => table,
        Err(e @ Su2Error::Overflow) => {
            say(err, &e.to_string());
            return EXIT_RESOURCE;
        }
        Err(e) => {
            say(err, &e.to_string());
            return EXIT_NEGATIVE;
        }
    };
    say(out, &format!("derived tensor rows up to jmax = {}", SpinIndex::from_twice(max_twice)));
    for twice_k in 1..=table.max_twice() {
        let spin = SpinIndex::from_twice(twice_k);
        say(
            out,
            &format!("  chi(1/2) x chi({spin}) = {}", render_su2_character(table.row(twice_k))),
        );
    }
    if let Some(path) = emit_ring {
        let doc = match catalog::su2_truncation_document(max_twice) {
            Ok(doc) => doc,
            Err(e @ Su2Error::Overflow) => {
                say(err, &e.to_string());
                return EXIT_RESOURCE;
            }
            Err(e) => {
                say(err, &e.to_string());
                return EXIT_NEGATIVE;
            }
        };
        if let Err(e) = fs::write(path, doc.serialize()) {
            say(err, &format!("cannot write {}: {e}", path.display()));
            return EXIT_INPUT;
        }
        say(out, &format!("wrote {}", path.display()));
    }
    EXIT_OK
}

fn cmd_examples(command: ExamplesCommand, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match command {
        ExamplesCommand::List => {
            for name in catalog::names() {
                say(out, &name);
            }
            EXIT_OK
        }
        ExamplesCommand::Emit { name } => match catalog::document(&name) {
            Some(doc) => {
                let path = PathBuf::from(format!("{name}.json"));
                if let Err(e) = fs::write(&path, doc.serialize()) {
                    say(err, &format!("cannot write {}: {e}", path.display()));
                    return EXIT_INPUT;
                }
                say(out, &format!("wrote {}", path.display()));
                EXIT_OK
            }
            None => {
                say(err, &format!("unknown example `{name}`; see `examples list`"));
                EXIT_INPUT
            }
        },
    }
}
