//! Exact d.i.m. search used as ground truth and as the default solver for
//! precolored residual instances.
//!
//! The search branches on the lowest undecided edge `uv`: either `uv` is a
//! matching edge, or exactly one of `u`, `v` is matched elsewhere. Every
//! branch is pruned by [`Propagator`](crate::coloring::Propagator).

mod enumerate;

pub use enumerate::{canonical_code, enumerate_all_graphs, labeled_graphs, EnumerateError, MAX_ENUMERATION_N};

use crate::coloring::{Color, Coloring, Propagator};
use crate::graph::{Edge, Graph, Vertex};

pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    Exists,
    MinWeight,
    Enumerate,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct OracleResult {
    pub feasible: bool,
    /// Some d.i.m. with its weight; of minimum weight unless in `Exists` mode.
    pub best: Option<(Vec<Edge>, f64)>,
    /// Every d.i.m., in `Enumerate` mode.
    pub all_dims: Option<Vec<Vec<Edge>>>,
    /// The enumeration hit its cap and `all_dims` is incomplete.
    pub truncated: bool,
}

/// Exact solver. Restricts to matchings consistent with `precoloring`:
/// Black vertices matched, White vertices unmatched, excluded edges unused.
pub fn oracle_solve(g: &Graph, precoloring: Option<&Coloring>, mode: OracleMode) -> OracleResult {
    oracle_solve_capped(g, precoloring, mode, DEFAULT_ENUMERATION_CAP)
}

pub fn oracle_solve_capped(g: &Graph, precoloring: Option<&Coloring>, mode: OracleMode, cap: usize) -> OracleResult {
    let fresh;
    let coloring = match precoloring {
        Some(c) => c,
        None => {
            fresh = Coloring::new(g.n());
            &fresh
        }
    };
    if mode == OracleMode::Enumerate {
        let mut search = Search::new(g, coloring, mode, cap);
        search.run(coloring.state.clone());
        let mut all = search.all;
        all.sort();
        let best = all
            .iter()
            .map(|m| (m.clone(), g.matching_weight(m)))
            .min_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        return OracleResult { feasible: !all.is_empty(), best, all_dims: Some(all), truncated: search.truncated };
    }
    // components are independent, so solve them one at a time
    let mut matching = Vec::new();
    let mut weight = 0.0;
    for comp in g.connected_components() {
        let sub = g.induced_subgraph(&comp);
        let local = coloring.restrict(&sub.origin);
        let mut search = Search::new(&sub.graph, &local, mode, cap);
        search.run(local.state.clone());
        let Some(state) = search.best else {
            return OracleResult::default();
        };
        for e in black_edges(&sub.graph, &state) {
            matching.push(e.map(|v| sub.origin[v]));
        }
        weight += search.best_weight;
    }
    matching.sort_unstable();
    OracleResult { feasible: true, best: Some((matching, weight)), all_dims: None, truncated: false }
}

/// Edges contained in every d.i.m. of `g`; empty when `g` has none.
pub fn oracle_forced_edges(g: &Graph) -> Vec<Edge> {
    let Some((some, _)) = oracle_solve(g, None, OracleMode::Exists).best else {
        return Vec::new();
    };
    some.into_iter()
        .filter(|&e| {
            let mut c = Coloring::new(g.n());
            c.excluded.insert(e);
            !oracle_solve(g, Some(&c), OracleMode::Exists).feasible
        })
        .collect()
}

/// Every d.i.m. of `g` by plain enumeration of induced matchings. Shares no
/// code with the branching search and is meant for small graphs only.
pub fn brute_force_dims(g: &Graph) -> Vec<Vec<Edge>> {
    fn grow(g: &Graph, edges: &[Edge], next: usize, chosen: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        if next == edges.len() {
            if g.is_dim(chosen) {
                out.push(chosen.clone());
            }
            return;
        }
        grow(g, edges, next + 1, chosen, out);
        let e = edges[next];
        let compatible = chosen.iter().all(|f| {
            !e.meets(*f) && e.ends().iter().all(|&a| f.ends().iter().all(|&b| !g.has_edge(a, b)))
        });
        if compatible {
            chosen.push(e);
            grow(g, edges, next + 1, chosen, out);
            chosen.pop();
        }
    }
    let edges: Vec<Edge> = g.edges().collect();
    let mut out = Vec::new();
    grow(g, &edges, 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn black_edges(g: &Graph, state: &[Color]) -> Vec<Edge> {
    g.edges().filter(|e| state[e.u()] == Color::Black && state[e.v()] == Color::Black).collect()
}

struct Search<'a> {
    prop: Propagator<'a>,
    mode: OracleMode,
    cap: usize,
    best: Option<Vec<Color>>,
    best_weight: f64,
    all: Vec<Vec<Edge>>,
    truncated: bool,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, coloring: &Coloring, mode: OracleMode, cap: usize) -> Self {
        Search {
            prop: Propagator::new(g, &coloring.excluded),
            mode,
            cap,
            best: None,
            best_weight: f64::INFINITY,
            all: Vec::new(),
            truncated: false,
        }
    }

    fn run(&mut self, mut state: Vec<Color>) {
        let g = self.prop.g;
        if self.prop.propagate(&mut state, g.vertices()).is_ok() {
            self.dfs(state);
        }
    }

    fn weight_so_far(&self, state: &[Color]) -> f64 {
        let g = self.prop.g;
        g.edges().filter(|e| state[e.u()] == Color::Black && state[e.v()] == Color::Black).map(|e| g.weight(e)).sum()
    }

    /// Returns true when the search should stop.
    fn dfs(&mut self, state: Vec<Color>) -> bool {
        if self.mode == OracleMode::MinWeight && self.weight_so_far(&state) >= self.best_weight {
            return false;
        }
        let Some((u, v)) = self.branch_edge(&state) else {
            return self.leaf(state);
        };
        let mut options = Vec::with_capacity(3);
        if self.prop.allowed(u, v) {
            options.push((Color::Black, Color::Black));
        }
        options.push((Color::Black, Color::White));
        options.push((Color::White, Color::Black));
        for (cu, cv) in options {
            if !fits(state[u], cu) || !fits(state[v], cv) {
                continue;
            }
            let mut next = state.clone();
            next[u] = cu;
            next[v] = cv;
            if cu == Color::Black && cv == Color::Black {
                // u and v are each other's mates
                let g = self.prop.g;
                let mut bad = false;
                for &w in g.neighbors(u).iter().chain(g.neighbors(v)) {
                    if w != u && w != v {
                        if next[w] == Color::Black {
                            bad = true;
                            break;
                        }
                        next[w] = Color::White;
                    }
                }
                if bad {
                    continue;
                }
            }
            let g = self.prop.g;
            let seeds = [u, v].into_iter().chain(g.neighbors(u).iter().copied()).chain(g.neighbors(v).iter().copied());
            let seeds: Vec<Vertex> = seeds.flat_map(|w| std::iter::once(w).chain(g.neighbors(w).iter().copied())).collect();
            if self.prop.propagate(&mut next, seeds).is_ok() && self.dfs(next) {
                return true;
            }
        }
        false
    }

    fn leaf(&mut self, state: Vec<Color>) -> bool {
        let g = self.prop.g;
        debug_assert!(g.is_dim(&black_edges(g, &state)));
        match self.mode {
            OracleMode::Exists => {
                self.best_weight = self.weight_so_far(&state);
                self.best = Some(state);
                true
            }
            OracleMode::MinWeight => {
                let w = self.weight_so_far(&state);
                if w < self.best_weight {
                    self.best_weight = w;
                    self.best = Some(state);
                }
                false
            }
            OracleMode::Enumerate => {
                if self.all.len() >= self.cap {
                    self.truncated = true;
                    return true;
                }
                self.all.push(black_edges(g, &state));
                false
            }
        }
    }

    /// The lowest edge with an uncolored endpoint, preferring edges that
    /// touch an already colored vertex.
    fn branch_edge(&self, state: &[Color]) -> Option<(Vertex, Vertex)> {
        let g = self.prop.g;
        let mut fallback = None;
        for v in g.vertices() {
            if state[v] != Color::Unset {
                continue;
            }
            let nb = g.neighbors(v);
            if let Some(&w) = nb.iter().find(|&&w| state[w] != Color::Unset) {
                return Some((v.min(w), v.max(w)));
            }
            if fallback.is_none() {
                if let Some(&w) = nb.first() {
                    fallback = Some((v.min(w), v.max(w)));
                }
            }
        }
        fallback
    }
}

fn fits(current: Color, wanted: Color) -> bool {
    current == Color::Unset || current == wanted
}
