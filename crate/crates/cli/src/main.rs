//! `dim`: find dominating induced matchings from the command line.
//!
//! Exit codes: 0 success (a d.i.m. exists / the check passed), 1 negative
//! answer, 2 usage or input error, 3 the input is outside the supported
//! graph class.

mod compare;
mod format;
mod report;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use dim_core::gen::{default_filters, generate, GenMode, GenSpec};
use dim_core::oracle::{oracle_solve_capped, OracleMode, DEFAULT_ENUMERATION_CAP};
use dim_core::pattern::{self, PatternKind, PatternWitness};
use dim_core::solver::{Solver, SolverOptions, Verdict};
use serde::Serialize;

use crate::report::{pairs, RunReport, WitnessReport, SCHEMA};

#[derive(Parser)]
#[command(name = "dim", version, about = "Dominating induced matchings on S_{1,2,4}-free graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a d.i.m. of a graph or show that none exists.
    Solve {
        graph: PathBuf,
        /// Return a minimum-weight d.i.m.
        #[arg(long)]
        min_weight: bool,
        /// Reject inputs with an induced S_{1,2,4}.
        #[arg(long)]
        verify_class: bool,
        /// Try every anchor edge even after a solution is found.
        #[arg(long)]
        all_anchors: bool,
        /// Count violations of the structural properties the solver relies on.
        #[arg(long)]
        checks: bool,
        #[arg(long)]
        json: bool,
        /// Include the full rule trace in the JSON report.
        #[arg(long)]
        trace: bool,
    },
    /// Check whether a matching is a d.i.m. of a graph.
    Check {
        graph: PathBuf,
        /// File with `m u v` lines, or a JSON report from `solve`.
        matching: PathBuf,
    },
    /// Look for an induced pattern: k4, diamond, butterfly, gem, c4, claw,
    /// or `s I J K`.
    Detect {
        graph: PathBuf,
        #[arg(required = true, num_args = 1..)]
        pattern: Vec<String>,
    },
    /// Solve exactly by exhaustive search.
    Oracle {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Exists)]
        mode: Mode,
        /// Stop enumerating after this many matchings.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Write a generated instance in edge-list format.
    Generate {
        #[arg(long, value_enum, default_value_t = GenKind::Planted)]
        mode: GenKind,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 3.0)]
        avg_degree: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Gadget name for `--mode gadget`, e.g. diamond, C6, P7, S_{1,2,4}.
        #[arg(long)]
        gadget: Option<String>,
        /// Random integer edge weights, `LO:HI`.
        #[arg(long, value_parser = parse_range)]
        weights: Option<(u32, u32)>,
        /// Keep graphs with induced S_{1,2,4} or K4.
        #[arg(long)]
        no_filter: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Also write the planted matching as `m u v` lines.
        #[arg(long)]
        matching_output: Option<PathBuf>,
    },
    /// Run the solver and the exact oracle side by side.
    Compare {
        /// Every file in this directory.
        #[arg(long)]
        dir: Option<PathBuf>,
        /// All connected S_{1,2,4}-free, K4-free graphs up to this order.
        #[arg(long)]
        exhaustive: Option<usize>,
        /// This many planted instances.
        #[arg(long)]
        planted: Option<usize>,
        /// This many filtered random instances.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 3.0)]
        avg_degree: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_range)]
        weights: Option<(u32, u32)>,
        #[arg(long)]
        min_weight: bool,
        /// Where to write graphs the two disagree on.
        #[arg(long, default_value = "reproducers")]
        reproducers: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exists,
    MinWeight,
    Enumerate,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Planted,
    Rejection,
    Gadget,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo = lo.parse().map_err(|_| format!("bad bound {lo:?}"))?;
    let hi = hi.parse().map_err(|_| format!("bad bound {hi:?}"))?;
    if lo > hi {
        return Err("LO must not exceed HI".into());
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("DIM_SOLVER_THREADS") {
        if let Ok(t) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn print_json(value: &impl Serialize) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Solve { graph, min_weight, verify_class, all_anchors, checks, json, trace } => {
            let g = format::read_graph(&graph)?;
            let options = SolverOptions { minimize: min_weight, all_anchors, verify_class, structural_checks: checks };
            let start = Instant::now();
            let out = Solver::new(options).solve(&g);
            let report = RunReport::new(graph.display().to_string(), &out, verify_class, trace, start.elapsed());
            if json {
                print_json(&report)?;
            } else {
                match &out.verdict {
                    Verdict::Found { matching, weight } => {
                        println!("c found: {} edges, weight {weight}", matching.len());
                        print!("{}", format::write_matching(matching));
                    }
                    _ => println!("c {}: {}", report.verdict, report.reason.as_deref().unwrap_or("")),
                }
                if checks && out.stats.violations() > 0 {
                    println!("c structural violations: {}", out.stats.violations());
                }
            }
            Ok(match out.verdict {
                Verdict::Found { .. } => 0,
                Verdict::NoDim { .. } | Verdict::NoDimWithXy { .. } => 1,
                Verdict::ClassViolation { .. } => 3,
            })
        }
        Command::Check { graph, matching } => {
            let g = format::read_graph(&graph)?;
            let m = format::read_matching(&matching)?;
            if let Some(e) = m.iter().find(|&&e| !g.contains_edge(e)) {
                bail!("{} is not an edge of the graph", report::pair_text(*e));
            }
            if g.is_dim(&m) {
                println!("c valid d.i.m. with {} edges", m.len());
                Ok(0)
            } else {
                println!("c not a d.i.m.");
                Ok(1)
            }
        }
        Command::Detect { graph, pattern } => {
            let g = format::read_graph(&graph)?;
            let kind = parse_pattern(&pattern)?;
            let witnesses: Vec<PatternWitness> = match kind {
                PatternKind::Diamond => pattern::find_all_diamonds(&g),
                PatternKind::Butterfly => pattern::find_all_butterflies(&g),
                PatternKind::K4 => pattern::find_k4(&g).into_iter().collect(),
                PatternKind::Gem => pattern::find_gem(&g).into_iter().collect(),
                PatternKind::C4 => pattern::find_c4(&g).into_iter().collect(),
                PatternKind::Spider(i, j, k) => pattern::find_induced_sijk(&g, i, j, k).into_iter().collect(),
            };
            #[derive(Serialize)]
            struct DetectReport {
                schema: u32,
                pattern: String,
                witnesses: Vec<WitnessReport>,
            }
            print_json(&DetectReport {
                schema: SCHEMA,
                pattern: kind.to_string(),
                witnesses: witnesses.iter().map(WitnessReport::from).collect(),
            })?;
            Ok(0)
        }
        Command::Oracle { graph, mode, cap, json } => {
            let g = format::read_graph(&graph)?;
            let mode = match mode {
                Mode::Exists => OracleMode::Exists,
                Mode::MinWeight => OracleMode::MinWeight,
                Mode::Enumerate => OracleMode::Enumerate,
            };
            let res = oracle_solve_capped(&g, None, mode, cap);
            if json {
                #[derive(Serialize)]
                struct Best {
                    matching: Vec<[usize; 2]>,
                    weight: f64,
                }
                #[derive(Serialize)]
                struct OracleReport {
                    schema: u32,
                    feasible: bool,
                    best: Option<Best>,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    count: Option<usize>,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    dims: Option<Vec<Vec<[usize; 2]>>>,
                    truncated: bool,
                }
                print_json(&OracleReport {
                    schema: SCHEMA,
                    feasible: res.feasible,
                    best: res.best.as_ref().map(|(m, w)| Best { matching: pairs(m), weight: *w }),
                    count: res.all_dims.as_ref().map(Vec::len),
                    dims: res.all_dims.as_ref().map(|all| all.iter().map(|m| pairs(m)).collect()),
                    truncated: res.truncated,
                })?;
            } else {
                match &res.best {
                    Some((m, w)) => {
                        println!("c feasible: weight {w}");
                        print!("{}", format::write_matching(m));
                    }
                    None => println!("c infeasible"),
                }
                if let Some(all) = &res.all_dims {
                    println!("c {} d.i.m.s{}", all.len(), if res.truncated { " (truncated)" } else { "" });
                }
            }
            Ok(if res.feasible { 0 } else { 1 })
        }
        Command::Generate { mode, n, avg_degree, seed, gadget, weights, no_filter, output, matching_output } => {
            let mode = match mode {
                GenKind::Planted => GenMode::Planted,
                GenKind::Rejection => GenMode::Rejection,
                GenKind::Gadget => GenMode::Gadget(gadget.context("--mode gadget needs --gadget NAME")?),
            };
            let spec = GenSpec {
                class_filters: if no_filter { Vec::new() } else { default_filters() },
                weights,
                ..GenSpec::new(n, avg_degree, seed, mode)
            };
            let inst = generate(&spec)?;
            let comments = vec![format!("generated {}", serde_json::to_string(&spec)?)];
            let text = format::write_graph(&inst.graph, &comments);
            write_or_print(output.as_deref(), &text)?;
            if let Some(path) = matching_output {
                let m = inst.planted.context("only planted instances come with a matching")?;
                std::fs::write(&path, format::write_matching(&m)).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(0)
        }
        Command::Compare {
            dir,
            exhaustive,
            planted,
            random,
            n,
            avg_degree,
            seed,
            weights,
            min_weight,
            reproducers,
            json,
        } => {
            let mut cases = Vec::new();
            if let Some(dir) = dir {
                cases.extend(compare::cases_from_dir(&dir)?);
            }
            if let Some(max_n) = exhaustive {
                cases.extend(compare::cases_exhaustive(max_n)?);
            }
            for (count, mode) in [(planted, GenMode::Planted), (random, GenMode::Rejection)] {
                if let Some(count) = count {
                    let spec = GenSpec { weights, ..GenSpec::new(n, avg_degree, seed, mode) };
                    cases.extend(compare::cases_generated(count, &spec)?);
                }
            }
            if cases.is_empty() {
                eprintln!("warning: empty corpus, nothing to compare");
            }
            let report = compare::compare(&cases, min_weight, Some(&reproducers))?;
            if json {
                print_json(&report)?;
            } else {
                println!(
                    "c {} instances, {} agree, {} disagree, max weight delta {}",
                    report.instances, report.agreements, report.disagreements, report.max_weight_delta
                );
                for (cell, count) in &report.matrix {
                    println!("c   {cell}: {count}");
                }
                for path in &report.reproducers {
                    println!("c reproducer written to {path}");
                }
            }
            Ok(if report.disagreements == 0 { 0 } else { 1 })
        }
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_pattern(tokens: &[String]) -> Result<PatternKind> {
    let joined = tokens.join(" ");
    let words: Vec<&str> = joined.split_whitespace().collect();
    Ok(match words.as_slice() {
        [w] if w.eq_ignore_ascii_case("k4") => PatternKind::K4,
        [w] if w.eq_ignore_ascii_case("diamond") => PatternKind::Diamond,
        [w] if w.eq_ignore_ascii_case("butterfly") => PatternKind::Butterfly,
        [w] if w.eq_ignore_ascii_case("gem") => PatternKind::Gem,
        [w] if w.eq_ignore_ascii_case("c4") => PatternKind::C4,
        [w] if w.eq_ignore_ascii_case("claw") => PatternKind::Spider(1, 1, 1),
        [s, i, j, k] if s.eq_ignore_ascii_case("s") => {
            let leg = |t: &str| t.parse::<usize>().with_context(|| format!("bad leg length {t:?}"));
            PatternKind::Spider(leg(i)?, leg(j)?, leg(k)?)
        }
        _ => bail!("unknown pattern {joined:?}"),
    })
}
