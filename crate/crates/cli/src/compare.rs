//! Differential runs of the solver against the exact oracle.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use dim_core::gen::{generate, GenMode, GenSpec};
use dim_core::oracle::{enumerate_all_graphs, oracle_solve, OracleMode};
use dim_core::pattern::{find_induced_sijk, find_k4};
use dim_core::solver::{Solver, SolverOptions, Verdict};
use dim_core::Graph;
use rayon::prelude::*;
use serde::Serialize;

use crate::format::{read_graph, write_graph};
use crate::report::{ms, verdict_name, SCHEMA};

pub struct Case {
    pub name: String,
    pub graph: Graph,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub solver: &'static str,
    pub oracle_feasible: bool,
    pub solver_weight: Option<f64>,
    pub oracle_weight: Option<f64>,
    pub agree: bool,
    #[serde(skip)]
    pub solver_ms: f64,
    #[serde(skip)]
    pub oracle_ms: f64,
}

#[derive(Debug, Default, Serialize)]
pub struct Percentiles {
    pub p50: f64,
    pub p90: f64,
    pub p99: f64,
    pub max: f64,
}

impl Percentiles {
    fn of(mut xs: Vec<f64>) -> Self {
        if xs.is_empty() {
            return Percentiles::default();
        }
        xs.sort_by(f64::total_cmp);
        let at = |q: f64| xs[((xs.len() - 1) as f64 * q).round() as usize];
        Percentiles { p50: at(0.5), p90: at(0.9), p99: at(0.99), max: *xs.last().unwrap() }
    }
}

#[derive(Debug, Default, Serialize)]
pub struct CompareTimings {
    pub solver_ms: Percentiles,
    pub oracle_ms: Percentiles,
}

#[derive(Debug, Default, Serialize)]
pub struct CompareReport {
    pub schema: u32,
    pub instances: usize,
    pub agreements: usize,
    pub disagreements: usize,
    /// Counts per `solver verdict / oracle verdict` pair.
    pub matrix: BTreeMap<String, usize>,
    pub max_weight_delta: f64,
    pub failures: Vec<CaseResult>,
    pub reproducers: Vec<String>,
    pub timings: CompareTimings,
}

pub fn run_case(case: &Case, minimize: bool) -> CaseResult {
    let solver = Solver::new(SolverOptions { minimize, ..Default::default() });
    let start = Instant::now();
    let out = solver.solve(&case.graph);
    let solver_ms = ms(start.elapsed());
    let start = Instant::now();
    let mode = if minimize { OracleMode::MinWeight } else { OracleMode::Exists };
    let oracle = oracle_solve(&case.graph, None, mode);
    let oracle_ms = ms(start.elapsed());
    let solver_weight = match &out.verdict {
        Verdict::Found { weight, .. } => Some(*weight),
        _ => None,
    };
    let oracle_weight = oracle.best.as_ref().map(|b| b.1);
    let agree = match &out.verdict {
        Verdict::Found { matching, .. } => {
            oracle.feasible && case.graph.is_dim(matching) && (!minimize || solver_weight == oracle_weight)
        }
        Verdict::NoDim { .. } | Verdict::NoDimWithXy { .. } => !oracle.feasible,
        // Only legitimate on inputs outside the class; the oracle cannot
        // contradict it.
        Verdict::ClassViolation { .. } => true,
    };
    CaseResult {
        name: case.name.clone(),
        solver: verdict_name(&out.verdict),
        oracle_feasible: oracle.feasible,
        solver_weight,
        oracle_weight,
        agree,
        solver_ms,
        oracle_ms,
    }
}

pub fn compare(cases: &[Case], minimize: bool, reproducer_dir: Option<&Path>) -> Result<CompareReport> {
    let results: Vec<CaseResult> = cases.par_iter().map(|c| run_case(c, minimize)).collect();
    let mut report = CompareReport { schema: SCHEMA, instances: cases.len(), ..Default::default() };
    for (case, r) in cases.iter().zip(&results) {
        let key = format!("{}/{}", r.solver, if r.oracle_feasible { "feasible" } else { "infeasible" });
        *report.matrix.entry(key).or_default() += 1;
        if let (Some(a), Some(b)) = (r.solver_weight, r.oracle_weight) {
            report.max_weight_delta = report.max_weight_delta.max((a - b).abs());
        }
        if r.agree {
            report.agreements += 1;
            continue;
        }
        report.disagreements += 1;
        report.failures.push(r.clone());
        if let Some(dir) = reproducer_dir {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let path = dir.join(format!("reproducer-{}.txt", report.disagreements));
            let comments = vec![
                format!("instance {}", r.name),
                format!("solver {} oracle {}", r.solver, if r.oracle_feasible { "feasible" } else { "infeasible" }),
            ];
            std::fs::write(&path, write_graph(&case.graph, &comments))?;
            report.reproducers.push(path.display().to_string());
        }
    }
    report.timings = CompareTimings {
        solver_ms: Percentiles::of(results.iter().map(|r| r.solver_ms).collect()),
        oracle_ms: Percentiles::of(results.iter().map(|r| r.oracle_ms).collect()),
    };
    Ok(report)
}

/// Every file in `dir`, in name order.
pub fn cases_from_dir(dir: &Path) -> Result<Vec<Case>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    paths.into_iter().map(|p| Ok(Case { name: p.display().to_string(), graph: read_graph(&p)? })).collect()
}

/// Connected graphs on up to `max_n` vertices, one per isomorphism class,
/// without induced `S_{1,2,4}` or `K4`.
pub fn cases_exhaustive(max_n: usize) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let graphs = enumerate_all_graphs(n, |g| find_k4(g).is_none() && find_induced_sijk(g, 1, 2, 4).is_none())?;
        out.extend(graphs.into_iter().enumerate().map(|(i, graph)| Case { name: format!("n{n}-{i}"), graph }));
    }
    Ok(out)
}

pub fn cases_generated(count: usize, template: &GenSpec) -> Result<Vec<Case>> {
    (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let spec = GenSpec { seed: template.seed.wrapping_add(i), ..template.clone() };
            let inst = generate(&spec)?;
            let kind = match spec.mode {
                GenMode::Planted => "planted",
                GenMode::Rejection => "random",
                GenMode::Gadget(_) => "gadget",
            };
            Ok(Case { name: format!("{kind}-n{}-seed{}", spec.n, spec.seed), graph: inst.graph })
        })
        .collect()
}
