//! Immutable simple undirected graphs and the queries the solver is built on.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

/// An undirected edge, stored with its smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Panics on a loop; graphs here never contain one.
    pub fn new(u: Vertex, v: Vertex) -> Self {
        assert_ne!(u, v, "an edge needs two distinct endpoints");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn u(self) -> Vertex {
        self.0
    }

    pub fn v(self) -> Vertex {
        self.1
    }

    pub fn ends(self) -> [Vertex; 2] {
        [self.0, self.1]
    }

    pub fn contains(self, x: Vertex) -> bool {
        self.0 == x || self.1 == x
    }

    pub fn other(self, x: Vertex) -> Vertex {
        if self.0 == x {
            self.1
        } else {
            debug_assert_eq!(self.1, x);
            self.0
        }
    }

    pub fn meets(self, f: Edge) -> bool {
        self.contains(f.0) || self.contains(f.1)
    }

    pub fn map(self, f: impl Fn(Vertex) -> Vertex) -> Edge {
        Edge::new(f(self.0), f(self.1))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("vertex {0} is not in the graph (n = {1})")]
    UnknownVertex(Vertex, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("{0} is not an edge of the graph")]
    NotAnEdge(Edge),
    #[error("invalid weight {1} on edge {0}")]
    BadWeight(Edge, f64),
}

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
///
/// Edge weights are only stored when supplied; an unweighted graph behaves
/// as if every edge had weight 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
    weights: Option<BTreeMap<Edge, f64>>,
}

/// An induced subgraph together with the map from its vertices back to the
/// vertices of the graph it was taken from.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    pub origin: Vec<Vertex>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0, weights: None }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::UnknownVertex(u, n));
            }
            if v >= n {
                return Err(GraphError::UnknownVertex(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(Edge::new(u, w[0])));
            }
        }
        Ok(Graph { adj, m, weights: None })
    }

    pub fn from_weighted_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, f64)>,
    {
        let edges: Vec<_> = edges.into_iter().collect();
        let mut g = Graph::from_edges(n, edges.iter().map(|&(u, v, _)| (u, v)))?;
        let mut weights = BTreeMap::new();
        for (u, v, w) in edges {
            let e = Edge::new(u, v);
            if !w.is_finite() || w < 0.0 {
                return Err(GraphError::BadWeight(e, w));
            }
            weights.insert(e, w);
        }
        g.weights = Some(weights);
        Ok(g)
    }

    /// Same graph with the given weights attached; missing edges keep weight 1.
    pub fn with_weights(mut self, weights: BTreeMap<Edge, f64>) -> Result<Self, GraphError> {
        for (&e, &w) in &weights {
            if !self.has_edge(e.u(), e.v()) {
                return Err(GraphError::NotAnEdge(e));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(GraphError::BadWeight(e, w));
            }
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<Edge, GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::UnknownVertex(x, n));
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let e = Edge::new(u, v);
        match self.adj[u].binary_search(&v) {
            Ok(_) => return Err(GraphError::DuplicateEdge(e)),
            Err(i) => self.adj[u].insert(i, v),
        }
        let i = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(i, u);
        self.m += 1;
        Ok(e)
    }

    pub fn remove_edge(&mut self, e: Edge) -> Result<(), GraphError> {
        let (u, v) = (e.u(), e.v());
        let Ok(i) = self.adj.get(u).ok_or(GraphError::NotAnEdge(e))?.binary_search(&v) else {
            return Err(GraphError::NotAnEdge(e));
        };
        self.adj[u].remove(i);
        let j = self.adj[v].binary_search(&u).unwrap();
        self.adj[v].remove(j);
        self.m -= 1;
        if let Some(w) = self.weights.as_mut() {
            w.remove(&e);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    /// All edges in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| Edge(u, v)))
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn try_neighbors(&self, v: Vertex) -> Result<&[Vertex], GraphError> {
        self.adj.get(v).map(Vec::as_slice).ok_or(GraphError::UnknownVertex(v, self.n()))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        e.v() < self.n() && self.has_edge(e.u(), e.v())
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn weight(&self, e: Edge) -> f64 {
        self.weights.as_ref().and_then(|w| w.get(&e).copied()).unwrap_or(1.0)
    }

    pub fn weights(&self) -> Option<&BTreeMap<Edge, f64>> {
        self.weights.as_ref()
    }

    pub fn matching_weight(&self, m: &[Edge]) -> f64 {
        m.iter().map(|&e| self.weight(e)).sum()
    }

    /// Breadth-first distances from a set of sources; `None` marks unreachable vertices.
    pub fn bfs(&self, sources: &[Vertex]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap() + 1;
            for &w in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Length of a shortest path between the two edges, `None` when they lie
    /// in different components.
    pub fn edge_distance(&self, e: Edge, f: Edge) -> Option<usize> {
        let dist = self.bfs(&e.ends());
        f.ends().iter().filter_map(|&v| dist[v]).min()
    }

    /// Distance levels of the edge `xy`: entry `i` holds the vertices at
    /// distance exactly `i` from `{x, y}`. Only `xy`'s component is covered.
    pub fn distance_levels(&self, xy: Edge) -> Result<Vec<Vec<Vertex>>, GraphError> {
        if !self.contains_edge(xy) {
            return Err(GraphError::NotAnEdge(xy));
        }
        let dist = self.bfs(&xy.ends());
        let mut levels: Vec<Vec<Vertex>> = Vec::new();
        for (v, d) in dist.into_iter().enumerate() {
            if let Some(d) = d {
                if levels.len() <= d {
                    levels.resize(d + 1, Vec::new());
                }
                levels[d].push(v);
            }
        }
        Ok(levels)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut comps = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.connected_components().len() == 1
    }

    /// Subgraph induced by `vertices`. New ids follow ascending old ids.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Subgraph {
        let mut origin: Vec<Vertex> = vertices.to_vec();
        origin.sort_unstable();
        origin.dedup();
        let mut index = vec![usize::MAX; self.n()];
        for (new, &old) in origin.iter().enumerate() {
            index[old] = new;
        }
        let mut adj = vec![Vec::new(); origin.len()];
        let mut m = 0;
        for (new, &old) in origin.iter().enumerate() {
            for &w in &self.adj[old] {
                let w = index[w];
                if w != usize::MAX {
                    adj[new].push(w);
                    if w > new {
                        m += 1;
                    }
                }
            }
        }
        let weights = self.weights.as_ref().map(|ws| {
            ws.iter()
                .filter(|(e, _)| index[e.u()] != usize::MAX && index[e.v()] != usize::MAX)
                .map(|(e, &w)| (Edge::new(index[e.u()], index[e.v()]), w))
                .collect()
        });
        Subgraph { graph: Graph { adj, m, weights }, origin }
    }

    /// Every member of `m` is an edge and no two members share a vertex.
    pub fn is_matching(&self, m: &[Edge]) -> bool {
        let mut used = vec![false; self.n()];
        for &e in m {
            if !self.contains_edge(e) {
                return false;
            }
            for x in e.ends() {
                if used[x] {
                    return false;
                }
                used[x] = true;
            }
        }
        true
    }

    /// A matching with no graph edge joining two of its members.
    pub fn is_induced_matching(&self, m: &[Edge]) -> bool {
        if !self.is_matching(m) {
            return false;
        }
        let mut owner = vec![usize::MAX; self.n()];
        for (i, e) in m.iter().enumerate() {
            owner[e.u()] = i;
            owner[e.v()] = i;
        }
        m.iter().enumerate().all(|(i, e)| {
            e.ends().iter().all(|&x| self.adj[x].iter().all(|&w| owner[w] == usize::MAX || owner[w] == i))
        })
    }

    /// Whether every edge of the graph intersects exactly one member of `m`.
    pub fn is_dim(&self, m: &[Edge]) -> bool {
        if !self.is_matching(m) {
            return false;
        }
        let mut mate = vec![usize::MAX; self.n()];
        for e in m {
            mate[e.u()] = e.v();
            mate[e.v()] = e.u();
        }
        self.edges().all(|e| {
            let (a, b) = (e.u(), e.v());
            let hits = (mate[a] != usize::MAX) as usize + (mate[b] != usize::MAX) as usize;
            let hits = if mate[a] == b { hits - 1 } else { hits };
            hits == 1
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(k: usize) -> Graph {
        Graph::from_edges(k, (1..k).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(k: usize) -> Graph {
        Graph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k))).unwrap()
    }

    fn diamond() -> Graph {
        // v1 = 0, v2 = 1, v3 = 2, u = 3
        Graph::from_edges(4, [(0, 1), (1, 2), (3, 0), (3, 1), (3, 2)]).unwrap()
    }

    #[test]
    fn neighbors_examples() {
        let c4 = cycle(4);
        assert_eq!(c4.neighbors(0), &[1, 3]);
        assert!(Graph::empty(1).neighbors(0).is_empty());
        assert_eq!(diamond().neighbors(3), &[0, 1, 2]);
        assert_eq!(c4.try_neighbors(4), Err(GraphError::UnknownVertex(4, 4)));
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::from_edges(2, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(Edge::new(0, 1))));
        assert_eq!(Graph::from_edges(2, [(0, 2)]), Err(GraphError::UnknownVertex(2, 2)));
        assert!(Graph::from_weighted_edges(2, [(0, 1, -1.0)]).is_err());
    }

    #[test]
    fn edge_distance_examples() {
        let p4 = path(4);
        assert_eq!(p4.edge_distance(Edge::new(0, 1), Edge::new(2, 3)), Some(1));
        assert_eq!(p4.edge_distance(Edge::new(1, 2), Edge::new(1, 2)), Some(0));
        let c6 = cycle(6);
        assert_eq!(c6.edge_distance(Edge::new(0, 1), Edge::new(3, 4)), Some(2));
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.edge_distance(Edge::new(0, 1), Edge::new(2, 3)), None);
    }

    #[test]
    fn distance_level_examples() {
        let p4 = path(4);
        assert_eq!(p4.distance_levels(Edge::new(1, 2)).unwrap(), vec![vec![1, 2], vec![0, 3]]);
        let p6 = path(6);
        assert_eq!(
            p6.distance_levels(Edge::new(1, 2)).unwrap(),
            vec![vec![1, 2], vec![0, 3], vec![4], vec![5]]
        );
        let c4 = cycle(4);
        assert_eq!(c4.distance_levels(Edge::new(0, 1)).unwrap(), vec![vec![0, 1], vec![2, 3]]);
        assert!(c4.distance_levels(Edge::new(0, 2)).is_err());
    }

    #[test]
    fn dim_examples() {
        let p3 = path(3);
        assert!(p3.is_dim(&[Edge::new(0, 1)]));
        assert!(!cycle(4).is_dim(&[Edge::new(0, 1)]));
        assert!(cycle(6).is_dim(&[Edge::new(0, 1), Edge::new(3, 4)]));
        assert!(!cycle(6).is_dim(&[Edge::new(0, 1)]));
        // an absent edge is never part of a d.i.m.
        assert!(!p3.is_dim(&[Edge::new(0, 2)]));
        assert!(Graph::empty(3).is_dim(&[]));
    }

    #[test]
    fn component_examples() {
        let two_p2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_p2.connected_components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(cycle(5).connected_components().len(), 1);
        let p3_k1 = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        let sizes: Vec<_> = p3_k1.connected_components().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![3, 1]);
    }

    #[test]
    fn induced_subgraph_examples() {
        let sub = cycle(4).induced_subgraph(&[0, 1, 2]);
        assert_eq!(sub.graph, path(3));
        assert_eq!(sub.origin, vec![0, 1, 2]);
        let sub = diamond().induced_subgraph(&[0, 2, 3]);
        // v1 - u - v3
        assert_eq!(sub.graph.edges().collect::<Vec<_>>(), vec![Edge::new(0, 2), Edge::new(1, 2)]);
        let g = diamond();
        assert_eq!(g.induced_subgraph(&[0, 1, 2, 3]).graph, g);
    }

    #[test]
    fn weights_follow_induced_subgraphs() {
        let g = Graph::from_weighted_edges(3, [(0, 1, 2.5), (1, 2, 4.0)]).unwrap();
        let sub = g.induced_subgraph(&[1, 2]);
        assert_eq!(sub.graph.weight(Edge::new(0, 1)), 4.0);
        assert_eq!(path(3).weight(Edge::new(0, 1)), 1.0);
    }
}
