//! Command-line front end: extract, check, synth, roundtrip, compose.
//!
//! Exit codes: 0 = success / all checks pass, 1 = checks failed, UNSAT, or
//! not isomorphic, 2 = input error.

use clap::{Parser, Subcommand};
use labelalg::algebra::LabelAlgebra;
use labelalg::doc;
use labelalg::synth::{self, SynthOutcome};
use labelalg::{extract_algebra, FiniteStructure};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "labelalg", version, about = "Pair-orbit label algebras: extraction, law checking, model synthesis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract the label algebra of a structure document
    Extract {
        /// Structure document (JSON)
        model: PathBuf,
        /// Write the algebra document here
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a DOT rendering here
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check the complement/classification/finiteness laws of an algebra document
    Check {
        algebra: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Synthesize a finite model from a label specification
    Synth {
        spec: PathBuf,
        /// Per-type carrier size, e.g. --size p=5 (repeatable)
        #[arg(long = "size", value_parser = parse_size)]
        sizes: Vec<(String, usize)>,
        #[arg(long = "ext-level", default_value_t = 1)]
        ext_level: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Search node limit
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract, re-synthesize, verify, and compare algebras
    Roundtrip {
        model: PathBuf,
        #[arg(long = "ext-level", default_value_t = 1)]
        ext_level: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Compose labels or close a type's Boolean algebra under composition
    Compose {
        algebra: PathBuf,
        /// Closure of the (t,t) label family under composition
        #[arg(long, value_name = "TYPE")]
        closure: Option<String>,
        /// Two labels as comma-separated atom ids, e.g. --pair 1 1,2
        #[arg(long, num_args = 2, value_names = ["U", "W"])]
        pair: Option<Vec<String>>,
    },
}

fn parse_size(s: &str) -> Result<(String, usize), String> {
    let (name, k) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=SIZE, got {s:?}"))?;
    let k: usize = k.parse().map_err(|e| format!("bad size in {s:?}: {e}"))?;
    Ok((name.to_string(), k))
}

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn input_err(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT)
}

fn read_structure(path: &PathBuf) -> Result<FiniteStructure, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    FiniteStructure::parse(&text).map_err(input_err)
}

fn read_algebra(path: &PathBuf) -> Result<LabelAlgebra, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    doc::parse_algebra(&text).map_err(input_err)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(code) => code,
    }
}

fn run(command: Command) -> Result<ExitCode, ExitCode> {
    match command {
        Command::Extract { model, out, dot, json } => {
            let m = read_structure(&model)?;
            let ex = extract_algebra(&m).map_err(input_err)?;
            if let Some(path) = out {
                std::fs::write(&path, doc::algebra_to_json(&ex.algebra)).map_err(input_err)?;
            }
            if let Some(path) = dot {
                std::fs::write(&path, doc::extraction_to_dot(&ex)).map_err(input_err)?;
            }
            let report = ex.algebra.check_proposition(Some((&ex.table, &ex.orbits)));
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!("types: {}", ex.algebra.types().len());
                for split in ex.orbits.split_colors() {
                    println!("note: color {split:?} splits into several types");
                }
                println!("atoms: {}", ex.algebra.atoms().len());
                for summary in &report.pairs {
                    println!(
                        "  ({},{}): {} atoms, {} labels",
                        summary.src, summary.dst, summary.atom_count, summary.label_count
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { algebra, json } => {
            let alg = read_algebra(&algebra)?;
            let report = alg.check_proposition(None);
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                for finding in &report.findings {
                    println!("{finding}");
                }
                for summary in &report.pairs {
                    println!(
                        "({},{}): {} atoms, {} labels, {} zero, {} positive",
                        summary.src,
                        summary.dst,
                        summary.atom_count,
                        summary.label_count,
                        summary.zero_labels,
                        summary.positive_labels
                    );
                }
                println!("{}", if report.is_ok() { "all checks passed" } else { "checks FAILED" });
            }
            Ok(if report.is_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            })
        }
        Command::Synth { spec, sizes, ext_level, seed, budget, out } => {
            let alg = read_algebra(&spec)?;
            let report = synth::validate_spec(&alg);
            if !report.is_ok() {
                return Err(input_err(format!("invalid spec:\n{report}")));
            }
            let sizes: BTreeMap<String, usize> = sizes.into_iter().collect();
            let result = synth::synthesize(&alg, &sizes, ext_level, seed, budget).map_err(input_err)?;
            match result.outcome {
                SynthOutcome::Model => {
                    let model = result.model.expect("model present on success");
                    let verify = synth::verify_model(&model, &alg, ext_level);
                    let structure = model.to_structure(&alg).map_err(input_err)?;
                    if let Some(path) = out {
                        std::fs::write(&path, structure.to_json()).map_err(input_err)?;
                    }
                    println!(
                        "model: {} elements, {} nodes searched, seed {}",
                        structure.universe_size(),
                        result.nodes,
                        seed
                    );
                    if let Some(cov) = verify.coverage_level1 {
                        println!("level-1 coverage: {cov}");
                    }
                    Ok(if verify.is_ok() {
                        ExitCode::SUCCESS
                    } else {
                        // synthesize guarantees this does not happen; belt for corrupt specs
                        ExitCode::from(EXIT_FAIL)
                    })
                }
                SynthOutcome::Unsat => {
                    println!("UNSAT: search space exhausted after {} nodes", result.nodes);
                    Ok(ExitCode::from(EXIT_FAIL))
                }
                SynthOutcome::Budget => {
                    println!("BUDGET: node limit {budget} exceeded");
                    Ok(ExitCode::from(EXIT_FAIL))
                }
            }
        }
        Command::Roundtrip { model, ext_level, seed, budget, json } => {
            let m = read_structure(&model)?;
            let report = synth::roundtrip(&m, ext_level, seed, budget).map_err(input_err)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                match report.outcome {
                    SynthOutcome::Model => println!(
                        "model: found; verified: {}; algebras isomorphic: {}",
                        report.verified == Some(true),
                        report.isomorphic == Some(true)
                    ),
                    SynthOutcome::Unsat => println!("model: UNSAT at the structure's own sizes"),
                    SynthOutcome::Budget => println!("model: budget exhausted"),
                }
                if report.verified == Some(true) && report.isomorphic == Some(false) {
                    println!("verified-not-isomorphic: finite approximation is rigid");
                }
            }
            Ok(if report.success() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            })
        }
        Command::Compose { algebra, closure, pair } => {
            let alg = read_algebra(&algebra)?;
            match (closure, pair) {
                (Some(type_id), None) => {
                    let t = alg
                        .type_index(&type_id)
                        .ok_or_else(|| input_err(format!("unknown type {type_id:?}")))?;
                    let labels = alg.monoid_closure(t).map_err(input_err)?;
                    println!("{} elements, closed", labels.len());
                    Ok(ExitCode::SUCCESS)
                }
                (None, Some(specs)) => {
                    let u = parse_label(&alg, &specs[0])?;
                    let w = parse_label(&alg, &specs[1])?;
                    let result = alg.compose(&u, &w).map_err(input_err)?;
                    let ids: Vec<String> = result
                        .atoms
                        .iter()
                        .map(|&a| alg.atoms()[a].doc_id.to_string())
                        .collect();
                    println!("{{{}}}", ids.join(","));
                    Ok(ExitCode::SUCCESS)
                }
                _ => Err(input_err("exactly one of --closure or --pair is required")),
            }
        }
    }
}

/// A label given as comma-separated atom doc ids; src/dst inferred and
/// required to agree across the atoms.
fn parse_label(alg: &LabelAlgebra, text: &str) -> Result<labelalg::Label, ExitCode> {
    let mut atoms = Vec::new();
    for part in text.split(',') {
        let doc_id: usize = part
            .trim()
            .parse()
            .map_err(|e| input_err(format!("bad atom id {part:?}: {e}")))?;
        let idx = alg
            .atom_by_doc_id(doc_id)
            .ok_or_else(|| input_err(format!("unknown atom id {doc_id}")))?;
        atoms.push(idx);
    }
    if atoms.is_empty() {
        return Err(input_err("empty label"));
    }
    let src = alg.atoms()[atoms[0]].src;
    let dst = alg.atoms()[atoms[0]].dst;
    for &a in &atoms[1..] {
        if alg.atoms()[a].src != src || alg.atoms()[a].dst != dst {
            return Err(input_err("atoms of a label must share one (src,dst) pair"));
        }
    }
    Ok(alg.label(src, dst, atoms))
}
