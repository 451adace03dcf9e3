//! Test instance generators: graphs with a planted d.i.m., filtered random
//! graphs, and small named graphs.
//!
//! All randomness comes from ChaCha8 seeded with [`GenSpec::seed`], so a
//! spec always yields the same graph.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};
use crate::pattern::{self, PatternKind};

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("unknown gadget {0:?}")]
    UnknownGadget(String),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("no graph passed the filters after {0} attempts")]
    RetryBudget(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenMode {
    Planted,
    Rejection,
    Gadget(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    /// Target average degree; the edge target is `n * avg_degree / 2`.
    pub avg_degree: f64,
    pub seed: u64,
    pub mode: GenMode,
    /// Patterns that must not occur as induced subgraphs.
    pub class_filters: Vec<PatternKind>,
    /// Integer edge weights drawn uniformly from this inclusive range.
    pub weights: Option<(u32, u32)>,
    /// Whole-graph attempts for rejection sampling.
    pub retries: usize,
}

impl GenSpec {
    pub fn new(n: usize, avg_degree: f64, seed: u64, mode: GenMode) -> Self {
        GenSpec {
            n,
            avg_degree,
            seed,
            mode,
            class_filters: default_filters(),
            weights: None,
            retries: 1000,
        }
    }

    fn edge_target(&self) -> usize {
        (self.n as f64 * self.avg_degree / 2.0).round() as usize
    }
}

/// `S_{1,2,4}` and `K4`.
pub fn default_filters() -> Vec<PatternKind> {
    vec![PatternKind::Spider(1, 2, 4), PatternKind::K4]
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub graph: Graph,
    /// The d.i.m. built into a planted instance.
    pub planted: Option<Vec<Edge>>,
}

pub fn generate(spec: &GenSpec) -> Result<Instance, GenError> {
    match &spec.mode {
        GenMode::Planted => generate_planted(spec).map(|(graph, m)| Instance { graph, planted: Some(m) }),
        GenMode::Rejection => generate_rejection(spec).map(|graph| Instance { graph, planted: None }),
        GenMode::Gadget(name) => gadget(name).map(|graph| Instance { graph, planted: None }),
    }
}

/// Whether `g` contains the pattern as an induced subgraph.
pub fn contains_pattern(g: &Graph, kind: PatternKind) -> bool {
    match kind {
        PatternKind::K4 => pattern::find_k4(g).is_some(),
        PatternKind::Diamond => !pattern::find_all_diamonds(g).is_empty(),
        PatternKind::Butterfly => !pattern::find_all_butterflies(g).is_empty(),
        PatternKind::Gem => pattern::find_gem(g).is_some(),
        PatternKind::C4 => pattern::find_c4(g).is_some(),
        PatternKind::Spider(i, j, k) => pattern::find_induced_sijk(g, i, j, k).is_some(),
    }
}

/// Vertex placements allowed per spider search through a new edge. An edge
/// whose search runs out is treated as creating the pattern, which keeps
/// the output filtered and bounds the cost around hubs.
const THROUGH_EDGE_BUDGET: usize = 20_000;

/// Whether the edge `e` of `g` lies on an induced copy of the pattern.
/// Only these copies can appear when `e` is added to a graph without one.
fn created_by(g: &Graph, kind: PatternKind, e: Edge) -> bool {
    match kind {
        PatternKind::K4 => {
            let nv = g.neighbors(e.v());
            let common: Vec<Vertex> = g.neighbors(e.u()).iter().copied().filter(|w| nv.binary_search(w).is_ok()).collect();
            common.iter().any(|&a| common.iter().any(|&b| a < b && g.has_edge(a, b)))
        }
        PatternKind::Spider(i, j, k) => {
            !matches!(pattern::find_induced_sijk_through_edge_within(g, i, j, k, e, THROUGH_EDGE_BUDGET), Ok(None))
        }
        other => contains_pattern(g, other),
    }
}

fn passes(g: &Graph, filters: &[PatternKind]) -> bool {
    filters.iter().all(|&f| !contains_pattern(g, f))
}

/// Adds `uv` unless it creates a filtered pattern.
fn try_add(g: &mut Graph, u: Vertex, v: Vertex, filters: &[PatternKind]) -> bool {
    let Ok(e) = g.add_edge(u, v) else { return false };
    if filters.iter().any(|&f| created_by(g, f, e)) {
        g.remove_edge(e).expect("edge was just added");
        return false;
    }
    true
}

fn attach_weights(g: Graph, spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<Graph, GenError> {
    let Some((lo, hi)) = spec.weights else { return Ok(g) };
    if lo > hi {
        return Err(GenError::BadParameter(format!("weight range {lo}..={hi} is empty")));
    }
    let weights: BTreeMap<Edge, f64> = g.edges().map(|e| (e, rng.gen_range(lo..=hi) as f64)).collect();
    g.with_weights(weights).map_err(|e| GenError::BadParameter(e.to_string()))
}

/// A graph whose vertices split into matched pairs and an independent set,
/// with edges only inside pairs and between the two sides, so the pairs
/// form a d.i.m. Edges are added one at a time and skipped when they would
/// create a filtered pattern. Pieces (pairs and single vertices) are joined
/// into one component where the filters allow it, attaching preferentially
/// to high-degree vertices; pieces that cannot be joined stay separate.
pub fn generate_planted(spec: &GenSpec) -> Result<(Graph, Vec<Edge>), GenError> {
    let n = spec.n;
    if n < 2 {
        return Err(GenError::BadParameter("a planted instance needs n >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut labels: Vec<Vertex> = (0..n).collect();
    labels.shuffle(&mut rng);
    let pairs = ((n as f64 * 0.3).round() as usize).clamp(1, n / 2);
    let mut matching: Vec<Edge> = (0..pairs).map(|i| Edge::new(labels[2 * i], labels[2 * i + 1])).collect();
    let white: Vec<Vertex> = labels[2 * pairs..].to_vec();
    let mut g = Graph::empty(n);
    for e in &matching {
        g.add_edge(e.u(), e.v()).expect("pairs are disjoint");
    }
    let mut b = Builder { g, filters: &spec.class_filters, white_pool: Vec::new(), black_pool: Vec::new() };

    let mut pieces: Vec<Result<Edge, Vertex>> = matching.iter().map(|&e| Ok(e)).chain(white.iter().map(|&w| Err(w))).collect();
    pieces[1..].shuffle(&mut rng);
    for attempts in [16, 64] {
        let mut left = Vec::new();
        for piece in pieces {
            let joined = match piece {
                Ok(_) if b.black_pool.is_empty() && b.white_pool.is_empty() => true,
                Ok(e) => (0..attempts).any(|_| {
                    let f = e.ends()[rng.gen_range(0..2)];
                    b.try_pool(&mut rng, f, false)
                }),
                Err(w) => (0..attempts).any(|_| b.try_pool(&mut rng, w, true)),
            };
            if joined {
                b.place(piece);
            } else {
                left.push(piece);
            }
        }
        pieces = left;
    }
    for piece in pieces {
        b.place(piece);
    }

    let target = spec.edge_target().max(b.g.m());
    let mut budget = 3 * (target - b.g.m());
    while b.g.m() < target && budget > 0 && !white.is_empty() {
        budget -= 1;
        let w = white[rng.gen_range(0..white.len())];
        b.try_pool(&mut rng, w, true);
    }
    let g = attach_weights(b.g, spec, &mut rng)?;
    matching.sort_unstable();
    debug_assert!(g.is_dim(&matching));
    Ok((g, matching))
}

/// Incremental planted construction. Each pool lists a placed vertex once
/// per incident edge plus once, so uniform draws favor high degrees.
struct Builder<'f> {
    g: Graph,
    filters: &'f [PatternKind],
    white_pool: Vec<Vertex>,
    black_pool: Vec<Vertex>,
}

impl Builder<'_> {
    fn place(&mut self, piece: Result<Edge, Vertex>) {
        match piece {
            Ok(e) => self.black_pool.extend(e.ends()),
            Err(w) => self.white_pool.push(w),
        }
    }

    /// Tries an edge from `v` to a pool vertex of the other color.
    fn try_pool(&mut self, rng: &mut ChaCha8Rng, v: Vertex, to_black: bool) -> bool {
        let pool = if to_black { &self.black_pool } else { &self.white_pool };
        if pool.is_empty() {
            return false;
        }
        let t = pool[rng.gen_range(0..pool.len())];
        if !try_add(&mut self.g, v, t, self.filters) {
            return false;
        }
        let (w, bl) = if to_black { (v, t) } else { (t, v) };
        self.white_pool.push(w);
        self.black_pool.push(bl);
        true
    }
}

/// `G(n, p)` with `p` matched to the target average degree, resampled until
/// it avoids every filtered pattern.
pub fn generate_rejection(spec: &GenSpec) -> Result<Graph, GenError> {
    let n = spec.n;
    let p = if n > 1 { (spec.avg_degree / (n - 1) as f64).clamp(0.0, 1.0) } else { 0.0 };
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..spec.retries.max(1) {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges).expect("pairs are distinct");
        if passes(&g, &spec.class_filters) {
            return attach_weights(g, spec, &mut rng);
        }
    }
    Err(GenError::RetryBudget(spec.retries.max(1)))
}

/// Named small graphs: `diamond`, `butterfly`, `gem`, `claw`, `K4`, `C<k>`
/// (3 ≤ k ≤ 12), `P<k>` (1 ≤ k ≤ 12) and `S_{i,j,k}` (i + j + k ≤ 8).
/// Vertex order follows the role order of [`PatternKind::template`]; cycles
/// and paths are numbered along the graph.
pub fn gadget(name: &str) -> Result<Graph, GenError> {
    let unknown = || GenError::UnknownGadget(name.to_string());
    let from_kind = |kind: PatternKind| Graph::from_edges(kind.vertex_count(), kind.template()).map_err(|_| unknown());
    match name.to_ascii_lowercase().as_str() {
        "diamond" => return from_kind(PatternKind::Diamond),
        "butterfly" => return from_kind(PatternKind::Butterfly),
        "gem" => return from_kind(PatternKind::Gem),
        "claw" => return from_kind(PatternKind::Spider(1, 1, 1)),
        "k4" => return from_kind(PatternKind::K4),
        _ => {}
    }
    if let Some(legs) = name.strip_prefix("S_{").and_then(|s| s.strip_suffix('}')) {
        let legs: Vec<usize> = legs.split(',').map(|s| s.trim().parse().map_err(|_| unknown())).collect::<Result<_, _>>()?;
        let [i, j, k] = legs[..] else { return Err(unknown()) };
        if i + j + k > 8 {
            return Err(unknown());
        }
        return from_kind(PatternKind::Spider(i, j, k));
    }
    let (head, tail) = name.split_at(1.min(name.len()));
    let k: usize = tail.parse().map_err(|_| unknown())?;
    match head {
        "C" | "c" if (3..=12).contains(&k) => Ok(Graph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k))).unwrap()),
        "P" | "p" if (1..=12).contains(&k) => Ok(Graph::from_edges(k, (1..k).map(|i| (i - 1, i))).unwrap()),
        _ => Err(unknown()),
    }
}
