//! Colorings of `G[S_2 ∪ N_3]`, one component at a time.
//!
//! Inside a component every `u_i` is Black, exactly one vertex of each
//! `T_i` is Black (its mate), and no edge inside `N_3` is a matching edge.
//! Components only interact through `N_4`.

use crate::coloring::{Color, Coloring, Contradiction, Propagator};
use crate::graph::{Edge, Graph, Vertex};
use crate::oracle::{oracle_solve, OracleMode};

use super::decomposition::LevelDecomposition;

/// A connected component of `G[S_2 ∪ T_one]` and how it will be colored.
#[derive(Clone, Debug)]
pub struct ComponentColoringTask {
    /// All vertices, ascending.
    pub vertices: Vec<Vertex>,
    /// Indices `i` of the `u_i` / `T_i` in the component, ascending.
    pub members: Vec<usize>,
    /// Some vertex of the component has a neighbor in `N_4`.
    pub contacts_n4: bool,
}

impl ComponentColoringTask {
    /// A single `T_i` without edges to any other `T_j`.
    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// The `T`-set coloring starts from.
    pub fn first(&self) -> usize {
        self.members[0]
    }
}

/// A complete feasible coloring of one component.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentColoring {
    /// The Black vertex of each `T_i`, in member order.
    pub black: Vec<Vertex>,
    /// The matching edges `u_i t_i`.
    pub edges: Vec<Edge>,
    pub weight: f64,
}

/// Components of `G[S_2 ∪ T_one]`, ordered by their smallest `u_i`.
pub fn component_tasks(g: &Graph, d: &LevelDecomposition) -> Vec<ComponentColoringTask> {
    let mut inside = vec![false; g.n()];
    for (i, ti) in d.t.iter().enumerate() {
        inside[d.s2[i]] = true;
        for &t in ti {
            inside[t] = true;
        }
    }
    let mut seen = vec![false; g.n()];
    let mut tasks = Vec::new();
    for &start in &d.s2 {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut vertices = Vec::new();
        while let Some(v) = stack.pop() {
            vertices.push(v);
            for &w in g.neighbors(v) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        vertices.sort_unstable();
        let mut members: Vec<usize> = vertices.iter().filter_map(|&v| d.s2.iter().position(|&u| u == v)).collect();
        members.sort_unstable();
        let contacts_n4 = vertices.iter().any(|&v| g.neighbors(v).iter().any(|&w| d.in_level(w, 4)));
        tasks.push(ComponentColoringTask { vertices, members, contacts_n4 });
    }
    tasks
}

/// Colors the component with `seed` as the Black vertex of its first
/// `T`-set and propagates. Returns every complete coloring reachable from
/// there and whether propagation alone decided all colors.
pub fn propagate_component(
    g: &Graph,
    coloring: &Coloring,
    d: &LevelDecomposition,
    task: &ComponentColoringTask,
    seed: Vertex,
) -> Result<(Vec<ComponentColoring>, bool), Contradiction> {
    let sub = g.induced_subgraph(&task.vertices);
    let mut local = coloring.restrict(&sub.origin);
    let is_u: Vec<bool> = sub.origin.iter().map(|&v| d.t_index[v].is_none()).collect();
    for (v, &u) in is_u.iter().enumerate() {
        if u {
            local.assign(v, Color::Black)?;
        }
    }
    let seed_local = sub.origin.binary_search(&seed).expect("seed lies in the component");
    local.assign(seed_local, Color::Black)?;
    for e in sub.graph.edges() {
        if !is_u[e.u()] && !is_u[e.v()] {
            local.excluded.insert(e);
        }
    }
    let prop = Propagator::new(&sub.graph, &local.excluded);
    let mut state = local.state.clone();
    prop.propagate(&mut state, sub.graph.vertices())?;
    let finish = |state: &[Color]| -> ComponentColoring {
        let mut edges: Vec<Edge> = sub
            .graph
            .edges()
            .filter(|e| state[e.u()] == Color::Black && state[e.v()] == Color::Black)
            .map(|e| e.map(|v| sub.origin[v]))
            .collect();
        edges.sort_unstable();
        let mut black: Vec<(usize, Vertex)> = edges
            .iter()
            .flat_map(|e| e.ends())
            .filter_map(|v| d.t_index[v].map(|i| (i, v)))
            .collect();
        black.sort_unstable();
        let weight = edges.iter().map(|&e| g.weight(e)).sum();
        ComponentColoring { black: black.into_iter().map(|(_, v)| v).collect(), edges, weight }
    };
    if state.iter().all(|&c| c != Color::Unset) {
        return Ok((vec![finish(&state)], true));
    }
    local.state = state;
    let all = oracle_solve(&sub.graph, Some(&local), OracleMode::Enumerate).all_dims.unwrap_or_default();
    let out = all
        .iter()
        .map(|m| {
            let full = Coloring::from_matching(sub.graph.n(), m);
            finish(&full.state)
        })
        .collect();
    Ok((out, false))
}

/// Every complete coloring of the component, trying the vertices of its
/// first `T`-set that are not White as seeds in ascending order. The count
/// of seeds that needed branching is returned alongside.
pub fn color_component(
    g: &Graph,
    coloring: &Coloring,
    d: &LevelDecomposition,
    task: &ComponentColoringTask,
) -> (Vec<ComponentColoring>, usize) {
    let first = &d.t[task.first()];
    let black: Vec<Vertex> = first.iter().copied().filter(|&t| coloring.color(t) == Color::Black).collect();
    let seeds: Vec<Vertex> = if black.is_empty() {
        first.iter().copied().filter(|&t| coloring.color(t) != Color::White).collect()
    } else {
        black
    };
    let mut out = Vec::new();
    let mut unforced = 0;
    for seed in seeds {
        if let Ok((colorings, forced)) = propagate_component(g, coloring, d, task, seed) {
            if !forced {
                unforced += 1;
            }
            out.extend(colorings);
        }
    }
    (out, unforced)
}
