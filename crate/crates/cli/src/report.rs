//! JSON reports. Vertices are reported 1-based, as in input files.

use std::collections::BTreeMap;
use std::time::Duration;

use dim_core::pattern::{PatternKind, PatternWitness};
use dim_core::solver::{Rule, SolveOutcome, SolveStats, TraceEvent, Verdict};
use dim_core::Edge;
use serde::Serialize;

pub const SCHEMA: u32 = 1;

pub fn pair(e: Edge) -> [usize; 2] {
    [e.u() + 1, e.v() + 1]
}

pub fn pairs(es: &[Edge]) -> Vec<[usize; 2]> {
    es.iter().map(|&e| pair(e)).collect()
}

#[derive(Serialize)]
pub struct WitnessReport {
    pub pattern: String,
    pub vertices: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mid_edge: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peripheral_edges: Option<[[usize; 2]; 2]>,
}

impl From<&PatternWitness> for WitnessReport {
    fn from(w: &PatternWitness) -> Self {
        WitnessReport {
            pattern: w.pattern.to_string(),
            vertices: w.vertices.iter().map(|v| v + 1).collect(),
            mid_edge: w.mid_edge().map(pair),
            peripheral_edges: w.peripheral_edges().map(|[a, b]| [pair(a), pair(b)]),
        }
    }
}

#[derive(Serialize)]
pub struct TraceReport {
    pub rule: Rule,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchor: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<usize>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl From<&TraceEvent> for TraceReport {
    fn from(t: &TraceEvent) -> Self {
        TraceReport {
            rule: t.rule,
            anchor: t.anchor.map(pair),
            edges: pairs(&t.detail.edges),
            vertices: t.detail.vertices.iter().map(|v| v + 1).collect(),
            note: t.detail.note.clone(),
        }
    }
}

#[derive(Serialize, Default)]
pub struct Timings {
    pub closure_ms: f64,
    pub decomposition_ms: f64,
    pub x_enumeration_ms: f64,
    pub y_solve_ms: f64,
    pub total_ms: f64,
}

pub fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

#[derive(Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub instance: String,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<[usize; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    pub class_check: &'static str,
    pub rules: BTreeMap<Rule, usize>,
    pub stats: SolveStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceReport>>,
    pub timings: Timings,
}

impl RunReport {
    pub fn new(instance: String, out: &SolveOutcome, verified_class: bool, with_trace: bool, total: Duration) -> Self {
        let mut report = RunReport {
            schema: SCHEMA,
            instance,
            verdict: verdict_name(&out.verdict),
            reason: None,
            matching: None,
            weight: None,
            witness: None,
            class_check: if verified_class { "passed" } else { "skipped" },
            rules: BTreeMap::new(),
            stats: out.stats.clone(),
            trace: with_trace.then(|| out.trace.iter().map(TraceReport::from).collect()),
            timings: Timings {
                closure_ms: ms(out.stats.timings.closure),
                decomposition_ms: ms(out.stats.timings.decomposition),
                x_enumeration_ms: ms(out.stats.timings.x_enumeration),
                y_solve_ms: ms(out.stats.timings.y_solve),
                total_ms: ms(total),
            },
        };
        for t in &out.trace {
            *report.rules.entry(t.rule).or_default() += 1;
        }
        match &out.verdict {
            Verdict::Found { matching, weight } => {
                report.matching = Some(pairs(matching));
                report.weight = Some(*weight);
            }
            Verdict::NoDim { reason } => report.reason = Some(reason.clone()),
            Verdict::NoDimWithXy { anchor } => report.reason = Some(format!("no d.i.m. contains {}", pair_text(*anchor))),
            Verdict::ClassViolation { witness } => {
                if verified_class && matches!(witness.pattern, PatternKind::Spider(..)) {
                    report.class_check = "violated";
                }
                report.reason = Some(format!("induced {} found", witness.pattern));
                report.witness = Some(WitnessReport::from(witness));
            }
        }
        if verified_class && out.trace.iter().any(|t| t.rule == Rule::ClassCheck) {
            report.class_check = "violated";
        }
        report
    }
}

pub fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Found { .. } => "found",
        Verdict::NoDim { .. } => "no-dim",
        Verdict::NoDimWithXy { .. } => "no-dim-with-xy",
        Verdict::ClassViolation { .. } => "class-violation",
    }
}

pub fn pair_text(e: Edge) -> String {
    format!("{}-{}", e.u() + 1, e.v() + 1)
}
