//! Polynomial d.i.m. solver for `S_{1,2,4}`-free graphs.
//!
//! [`Solver::solve`] rejects graphs with a `K4`, commits all edges forced by
//! diamonds and butterflies, and then handles each residual component: a
//! single-edge solution if one exists, otherwise one anchored search
//! ([`Solver::dim_with_xy`]) per edge `xy` that lies on an induced `P3`.
//!
//! The anchored search colors `{x, y} ∪ N_1 ∪ N_2 ∪ N_3` with a bounded
//! number of alternatives and hands the rest of the graph, precolored, to a
//! [`PrecoloredDimSolver`].

pub mod decomposition;
mod procedure;
pub(crate) mod rules;
pub mod xcolor;

use std::time::Duration;

use serde::Serialize;

use crate::coloring::{forced_edge_closure, Color, Coloring, Reduced};
use crate::graph::{Edge, Graph, Vertex};
use crate::oracle::{oracle_solve, OracleMode};
use crate::pattern::{self, PatternWitness};

pub use decomposition::{decompose, p3_anchor_edges, LevelDecomposition};
pub use xcolor::{color_component, component_tasks, propagate_component, ComponentColoring, ComponentColoringTask};

/// Solves d.i.m. on a precolored instance: Black vertices must be matched,
/// White ones unmatched, excluded edges unused. Returns the matching (in the
/// instance's ids) and its weight, or `None` if there is none.
pub trait PrecoloredDimSolver: Send + Sync {
    fn solve(&self, graph: &Graph, coloring: &Coloring, minimize: bool) -> Option<(Vec<Edge>, f64)>;
}

/// The exact search from [`crate::oracle`].
#[derive(Clone, Copy, Debug, Default)]
pub struct OracleSubSolver;

impl PrecoloredDimSolver for OracleSubSolver {
    fn solve(&self, graph: &Graph, coloring: &Coloring, minimize: bool) -> Option<(Vec<Edge>, f64)> {
        let mode = if minimize { OracleMode::MinWeight } else { OracleMode::Exists };
        oracle_solve(graph, Some(coloring), mode).best
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverOptions {
    /// Return a minimum-weight d.i.m. instead of the first one found.
    pub minimize: bool,
    /// Run every anchor even after a solution is known.
    pub all_anchors: bool,
    /// Refuse inputs containing an induced `S_{1,2,4}`.
    pub verify_class: bool,
    /// Check the structural properties the algorithm relies on and count
    /// violations in [`SolveStats`].
    pub structural_checks: bool,
}

/// What a rule did, in the order it happened.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    K4Found,
    ClassCheck,
    ForcedClosure,
    SingleEdge,
    Anchor,
    /// Edges inside `N_2` are matched.
    LevelMatching,
    /// An `N_4` edge closing a triangle with `N_3` is matched.
    LevelTriangle,
    /// A `T_i` vertex seeing two vertices of another `T_j` is the mate of `u_i`.
    DoubleContact,
    /// A `T_i` vertex adjacent to `S_3` is the mate of `u_i`.
    S3Contact,
    /// `S_3` is White and removed.
    S3White,
    /// `T_i` vertices on a 4-cycle through `u_i` are White.
    C4White,
    /// A Black `T_i` vertex is the mate of `u_i`.
    TBlack,
    /// The only candidate of `T_i` is the mate of `u_i`.
    SingletonT,
    /// Interchangeable pendant vertices of `T_i` are reduced to one.
    InVertexPrune,
    /// `N_4` vertices without neighbors in `Y` force their contacts.
    IsolatedN4,
    /// Components of `G[S_2 ∪ N_3]` colored by propagation.
    ComponentColoring,
    /// Components touching `N_4` that are enumerated jointly.
    InteractingFamily,
    /// Precolored remainder handed to the sub-solver.
    YSolve,
    /// No d.i.m. contains the anchor.
    AnchorFailed,
}

/// What a trace event refers to, in input ids.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Detail {
    pub edges: Vec<Edge>,
    pub vertices: Vec<Vertex>,
    pub note: String,
}

impl Detail {
    pub fn edges(edges: Vec<Edge>) -> Self {
        Detail { edges, ..Default::default() }
    }

    pub fn vertices(vertices: Vec<Vertex>) -> Self {
        Detail { vertices, ..Default::default() }
    }
}

impl From<String> for Detail {
    fn from(note: String) -> Self {
        Detail { note, ..Default::default() }
    }
}

impl From<&str> for Detail {
    fn from(note: &str) -> Self {
        Detail::from(note.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceEvent {
    pub rule: Rule,
    pub anchor: Option<Edge>,
    pub detail: Detail,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PhaseTimings {
    pub closure: Duration,
    pub decomposition: Duration,
    pub x_enumeration: Duration,
    pub y_solve: Duration,
}

/// Counters collected while solving. The `*_violations` counters stay zero
/// on inputs without an induced `S_{1,2,4}`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SolveStats {
    pub anchors_tried: usize,
    pub x_colorings: usize,
    pub y_calls: usize,
    pub y_cache_hits: usize,
    /// Component seeds whose coloring needed branching after propagation.
    pub unforced_branches: usize,
    pub max_interacting: usize,
    /// More than three interacting components, without a witness.
    pub interacting_bound_violations: usize,
    /// `G[Y]` contained an induced `S_{1,2,2}`.
    pub y_s122_violations: usize,
    /// `G[Y]` contained a claw although the input is `S_{1,1,4}`-free.
    pub y_claw_violations: usize,
    /// A vertex of `N_i`, `i ≥ 3`, ends no induced `P5` into lower levels.
    pub p5_endpoint_violations: usize,
    /// `G[N_3]` was not bipartite for an anchor that led to a solution.
    pub n3_bipartite_violations: usize,
    /// A returned matching used an edge inside `N_3` or between `N_3` and `N_4`.
    pub level_edge_violations: usize,
    /// More joint colorings than `max|T_i|^3`.
    pub enumeration_bound_violations: usize,
    /// Wall-clock time per phase; left out of serialized stats so that
    /// reports of equal runs are equal.
    #[serde(skip)]
    pub timings: PhaseTimings,
}

impl SolveStats {
    pub fn violations(&self) -> usize {
        self.interacting_bound_violations
            + self.y_s122_violations
            + self.y_claw_violations
            + self.p5_endpoint_violations
            + self.n3_bipartite_violations
            + self.level_edge_violations
            + self.enumeration_bound_violations
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    Found { matching: Vec<Edge>, weight: f64 },
    NoDim { reason: String },
    NoDimWithXy { anchor: Edge },
    ClassViolation { witness: PatternWitness },
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    pub trace: Vec<TraceEvent>,
    pub stats: SolveStats,
}

impl SolveOutcome {
    pub fn matching(&self) -> Option<&[Edge]> {
        match &self.verdict {
            Verdict::Found { matching, .. } => Some(matching),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self.verdict, Verdict::Found { .. })
    }
}

pub struct Solver {
    pub options: SolverOptions,
    sub_solver: Box<dyn PrecoloredDimSolver>,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new(SolverOptions::default())
    }
}

/// Mutable state shared by every stage of one solve.
pub(crate) struct Context {
    pub trace: Vec<TraceEvent>,
    pub stats: SolveStats,
    pub input_s124_free: bool,
    pub input_s114_free: bool,
}

impl Context {
    pub fn log(&mut self, rule: Rule, anchor: Option<Edge>, detail: impl Into<Detail>) {
        self.trace.push(TraceEvent { rule, anchor, detail: detail.into() });
    }
}

/// Result of the search restricted to one anchor.
pub(crate) enum AnchorResult {
    Found(Vec<Edge>, f64),
    Failed,
    Violation(PatternWitness),
}

impl Solver {
    pub fn new(options: SolverOptions) -> Self {
        Solver { options, sub_solver: Box::new(OracleSubSolver) }
    }

    pub fn with_sub_solver(options: SolverOptions, sub_solver: Box<dyn PrecoloredDimSolver>) -> Self {
        Solver { options, sub_solver }
    }

    fn context(&self, g: &Graph) -> Context {
        let checks = self.options.structural_checks;
        Context {
            trace: Vec::new(),
            stats: SolveStats::default(),
            input_s124_free: checks && pattern::find_induced_sijk(g, 1, 2, 4).is_none(),
            input_s114_free: checks && pattern::find_induced_sijk(g, 1, 1, 4).is_none(),
        }
    }

    /// Decides whether `g` has a d.i.m. and returns one if so.
    pub fn solve(&self, g: &Graph) -> SolveOutcome {
        let mut ctx = self.context(g);
        let verdict = self.solve_inner(g, &mut ctx);
        if let Verdict::Found { matching, .. } = &verdict {
            assert!(g.is_dim(matching), "solver returned a matching that is not a d.i.m.");
        }
        SolveOutcome { verdict, trace: ctx.trace, stats: ctx.stats }
    }

    fn solve_inner(&self, g: &Graph, ctx: &mut Context) -> Verdict {
        if let Some(w) = pattern::find_k4(g) {
            ctx.log(Rule::K4Found, None, Detail::vertices(w.vertices));
            return Verdict::NoDim { reason: "K4 found".into() };
        }
        if self.options.verify_class {
            if let Some(w) = pattern::find_induced_sijk(g, 1, 2, 4) {
                ctx.log(Rule::ClassCheck, None, Detail::vertices(w.vertices.clone()));
                return Verdict::ClassViolation { witness: w };
            }
        }
        let start = std::time::Instant::now();
        let forced = pattern::forced_edges_initial(g);
        if !g.is_induced_matching(&forced) {
            ctx.log(Rule::ForcedClosure, None, "forced edges clash");
            return Verdict::NoDim { reason: "forced edges are not an induced matching".into() };
        }
        if !forced.is_empty() && g.is_dim(&forced) {
            ctx.log(Rule::ForcedClosure, None, "forced edges dominate");
            let weight = g.matching_weight(&forced);
            return Verdict::Found { matching: forced, weight };
        }
        let closure = forced_edge_closure(g, &forced);
        ctx.stats.timings.closure += start.elapsed();
        let residual = match closure {
            Ok(r) => r,
            Err(c) => {
                ctx.log(Rule::ForcedClosure, None, c.reason.to_string());
                return Verdict::NoDim { reason: format!("forced edges contradict: {}", c.reason) };
            }
        };
        if !residual.committed.is_empty() {
            ctx.log(Rule::ForcedClosure, None, Detail::edges(residual.committed.clone()));
        }
        let mut matching = residual.committed.clone();
        for comp in residual.graph.connected_components() {
            let sub = residual.graph.induced_subgraph(&comp);
            let part = Reduced {
                coloring: residual.coloring.restrict(&sub.origin),
                origin: sub.origin.iter().map(|&v| residual.origin[v]).collect(),
                graph: sub.graph,
                committed: Vec::new(),
                committed_weight: 0.0,
            };
            match self.solve_component(&part, ctx) {
                AnchorResult::Found(m, _) => matching.extend(m),
                AnchorResult::Failed => {
                    return Verdict::NoDim { reason: "a connected component has no d.i.m.".into() };
                }
                AnchorResult::Violation(witness) => return Verdict::ClassViolation { witness },
            }
        }
        matching.sort_unstable();
        let weight = g.matching_weight(&matching);
        Verdict::Found { matching, weight }
    }

    /// One connected residual component with its coloring. Ids in the result
    /// are base ids of `part`.
    fn solve_component(&self, part: &Reduced, ctx: &mut Context) -> AnchorResult {
        let g = &part.graph;
        let c = &part.coloring;
        if g.m() == 0 {
            return if c.color(0) == Color::Black { AnchorResult::Failed } else { AnchorResult::Found(Vec::new(), 0.0) };
        }
        let mut singles = g.edges().filter(|&e| {
            !c.is_excluded(e)
                && e.ends().iter().all(|&v| c.color(v) != Color::White)
                && g.vertices().all(|v| e.contains(v) || c.color(v) != Color::Black)
                && g.is_dim(&[e])
        });
        let single = if self.options.minimize {
            singles.min_by(|a, b| g.weight(*a).total_cmp(&g.weight(*b)).then(a.cmp(b)))
        } else {
            singles.next()
        };
        if let Some(e) = single {
            let w = g.weight(e);
            let e = part.base_edge(e);
            ctx.log(Rule::SingleEdge, None, Detail::edges(vec![e]));
            return AnchorResult::Found(vec![e], w);
        }
        let mut best: Option<(Vec<Edge>, f64)> = None;
        for (xy, r) in p3_anchor_edges(g) {
            if c.is_excluded(xy) || xy.ends().iter().any(|&v| c.color(v) == Color::White) {
                continue;
            }
            match self.anchor(part, xy, r, ctx) {
                AnchorResult::Found(m, w) => {
                    let better = best.as_ref().is_none_or(|(bm, bw)| w < *bw || (w == *bw && m < *bm));
                    if self.options.minimize {
                        if better {
                            best = Some((m, w));
                        }
                    } else if best.is_none() {
                        best = Some((m, w));
                    }
                    if !self.options.minimize && !self.options.all_anchors {
                        break;
                    }
                }
                AnchorResult::Failed => {}
                AnchorResult::Violation(w) => return AnchorResult::Violation(w),
            }
        }
        match best {
            Some((m, w)) => AnchorResult::Found(m, w),
            None => AnchorResult::Failed,
        }
    }

    /// Searches for a d.i.m. of `g` containing `xy`, where `r` sees exactly
    /// one endpoint of `xy`. The graph should be connected and free of
    /// `K4`, diamonds, butterflies and `S_{1,2,4}`.
    pub fn dim_with_xy(&self, g: &Graph, xy: Edge, r: Vertex) -> SolveOutcome {
        let mut ctx = self.context(g);
        let verdict = match self.anchor(&Reduced::new(g), xy, r, &mut ctx) {
            AnchorResult::Found(mut matching, weight) => {
                matching.sort_unstable();
                assert!(g.is_dim(&matching), "anchored search returned a matching that is not a d.i.m.");
                Verdict::Found { matching, weight }
            }
            AnchorResult::Failed => Verdict::NoDimWithXy { anchor: xy },
            AnchorResult::Violation(witness) => Verdict::ClassViolation { witness },
        };
        SolveOutcome { verdict, trace: ctx.trace, stats: ctx.stats }
    }

    pub(crate) fn sub_solver(&self) -> &dyn PrecoloredDimSolver {
        self.sub_solver.as_ref()
    }
}
