//! Black/white colorings of partially solved instances and the reductions
//! that shrink them.
//!
//! A d.i.m. `M` corresponds to the complete coloring in which the vertices of
//! `M` are Black and every other vertex is White. A partial coloring is
//! feasible when the White vertices are independent and no Black vertex has
//! two Black neighbors.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};
use crate::pattern;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Color {
    #[default]
    Unset,
    Black,
    White,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContradictionReason {
    /// Two edges that must both be matched share a vertex.
    SharedVertex,
    /// Two edges that must both be matched are joined by an edge.
    DistanceOne,
    WhiteAdjacentWhite,
    BlackTwoBlackNeighbors,
    /// A Black vertex has no neighbor left that could be its mate.
    BlackWithoutMate,
    /// An edge that was ruled out is required.
    ExcludedEdge,
    /// A vertex must be both Black and White.
    ColorClash,
    /// A referenced vertex or edge is no longer part of the instance.
    Missing,
    N1NotIndependent,
    N2Malformed,
    /// A private neighborhood has no vertex left that could be Black.
    EmptyT,
    /// An `N_4` vertex sees two vertices of one private neighborhood.
    DoubleContact,
}

impl fmt::Display for ContradictionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ContradictionReason::SharedVertex => "shared-vertex",
            ContradictionReason::DistanceOne => "distance-one",
            ContradictionReason::WhiteAdjacentWhite => "white-adjacent-white",
            ContradictionReason::BlackTwoBlackNeighbors => "black-two-black-neighbors",
            ContradictionReason::BlackWithoutMate => "black-without-mate",
            ContradictionReason::ExcludedEdge => "excluded-edge",
            ContradictionReason::ColorClash => "color-clash",
            ContradictionReason::Missing => "missing",
            ContradictionReason::N1NotIndependent => "n1-not-independent",
            ContradictionReason::N2Malformed => "n2-malformed",
            ContradictionReason::EmptyT => "empty-t",
            ContradictionReason::DoubleContact => "double-contact",
        };
        f.write_str(s)
    }
}

/// Proof that the current commitments admit no d.i.m., with the vertices
/// that exhibit it.
#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
#[error("{reason} at {vertices:?}")]
pub struct Contradiction {
    pub reason: ContradictionReason,
    pub vertices: Vec<Vertex>,
}

impl Contradiction {
    pub fn new(reason: ContradictionReason, vertices: impl Into<Vec<Vertex>>) -> Self {
        Contradiction { reason, vertices: vertices.into() }
    }
}

/// Per-vertex colors plus edges barred from the matching.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coloring {
    pub state: Vec<Color>,
    pub excluded: BTreeSet<Edge>,
}

impl Coloring {
    pub fn new(n: usize) -> Self {
        Coloring { state: vec![Color::Unset; n], excluded: BTreeSet::new() }
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.state[v]
    }

    pub fn is_excluded(&self, e: Edge) -> bool {
        self.excluded.contains(&e)
    }

    pub fn is_complete(&self) -> bool {
        self.state.iter().all(|&c| c != Color::Unset)
    }

    pub fn count(&self, c: Color) -> usize {
        self.state.iter().filter(|&&s| s == c).count()
    }

    /// Sets `v` to `c`, failing if it already carries the other color.
    pub fn assign(&mut self, v: Vertex, c: Color) -> Result<bool, Contradiction> {
        match self.state[v] {
            Color::Unset => {
                self.state[v] = c;
                Ok(c != Color::Unset)
            }
            old if old == c || c == Color::Unset => Ok(false),
            _ => Err(Contradiction::new(ContradictionReason::ColorClash, [v])),
        }
    }

    /// The coloring seen by an induced subgraph with the given origin map.
    pub fn restrict(&self, origin: &[Vertex]) -> Coloring {
        let mut index = vec![usize::MAX; self.state.len()];
        for (new, &old) in origin.iter().enumerate() {
            index[old] = new;
        }
        let excluded = self
            .excluded
            .iter()
            .filter(|e| index[e.u()] != usize::MAX && index[e.v()] != usize::MAX)
            .map(|e| Edge::new(index[e.u()], index[e.v()]))
            .collect();
        Coloring { state: origin.iter().map(|&v| self.state[v]).collect(), excluded }
    }

    /// Feasibility of a partial coloring: White independent, no Black vertex
    /// with two Black neighbors, no Black pair joined by an excluded edge.
    pub fn check_partial(&self, g: &Graph) -> Result<(), Contradiction> {
        for v in g.vertices() {
            match self.state[v] {
                Color::White => {
                    if let Some(&w) = g.neighbors(v).iter().find(|&&w| self.state[w] == Color::White) {
                        return Err(Contradiction::new(ContradictionReason::WhiteAdjacentWhite, [v, w]));
                    }
                }
                Color::Black => {
                    let black: Vec<Vertex> =
                        g.neighbors(v).iter().copied().filter(|&w| self.state[w] == Color::Black).collect();
                    if black.len() >= 2 {
                        return Err(Contradiction::new(ContradictionReason::BlackTwoBlackNeighbors, [v, black[0], black[1]]));
                    }
                    if let Some(&w) = black.first() {
                        if self.is_excluded(Edge::new(v, w)) {
                            return Err(Contradiction::new(ContradictionReason::ExcludedEdge, [v, w]));
                        }
                    }
                }
                Color::Unset => {}
            }
        }
        Ok(())
    }

    /// Feasibility of a complete coloring: additionally every Black vertex
    /// has exactly one Black neighbor.
    pub fn check_complete(&self, g: &Graph) -> Result<(), Contradiction> {
        self.check_partial(g)?;
        for v in g.vertices() {
            match self.state[v] {
                Color::Unset => return Err(Contradiction::new(ContradictionReason::Missing, [v])),
                Color::Black if !g.neighbors(v).iter().any(|&w| self.state[w] == Color::Black) => {
                    return Err(Contradiction::new(ContradictionReason::BlackWithoutMate, [v]));
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Edges joining two Black vertices.
    pub fn black_edges(&self, g: &Graph) -> Vec<Edge> {
        g.edges().filter(|e| self.state[e.u()] == Color::Black && self.state[e.v()] == Color::Black).collect()
    }

    /// The complete coloring induced by a matching.
    pub fn from_matching(n: usize, m: &[Edge]) -> Coloring {
        let mut c = Coloring { state: vec![Color::White; n], excluded: BTreeSet::new() };
        for e in m {
            c.state[e.u()] = Color::Black;
            c.state[e.v()] = Color::Black;
        }
        c
    }

    /// Whether a matching respects this coloring: Black vertices matched,
    /// White vertices unmatched, no excluded edge used.
    pub fn admits(&self, n: usize, m: &[Edge]) -> bool {
        let full = Coloring::from_matching(n, m);
        m.iter().all(|e| !self.is_excluded(*e))
            && self.state.iter().zip(&full.state).all(|(&want, &got)| want == Color::Unset || want == got)
    }
}

/// An instance after some reductions: the surviving graph, where each of its
/// vertices came from in the base graph, the coloring of the survivors, and
/// the matching edges committed so far (in base ids).
#[derive(Clone, Debug)]
pub struct Reduced {
    pub graph: Graph,
    pub origin: Vec<Vertex>,
    pub coloring: Coloring,
    pub committed: Vec<Edge>,
    pub committed_weight: f64,
}

pub type ReductionOutcome = Result<Reduced, Contradiction>;

impl Reduced {
    pub fn new(g: &Graph) -> Self {
        Reduced::with_coloring(g.clone(), Coloring::new(g.n()))
    }

    pub fn with_coloring(graph: Graph, coloring: Coloring) -> Self {
        let origin = graph.vertices().collect();
        Reduced { graph, origin, coloring, committed: Vec::new(), committed_weight: 0.0 }
    }

    pub fn base(&self, v: Vertex) -> Vertex {
        self.origin[v]
    }

    pub fn base_edge(&self, e: Edge) -> Edge {
        e.map(|v| self.origin[v])
    }

    /// Current id of a base vertex, if it survived.
    pub fn current(&self, base: Vertex) -> Option<Vertex> {
        self.origin.binary_search(&base).ok()
    }

    fn keep(&self, removed: &[bool], coloring: Coloring, committed: Vec<Edge>, committed_weight: f64) -> Reduced {
        let survivors: Vec<Vertex> = self.graph.vertices().filter(|&v| !removed[v]).collect();
        let sub = self.graph.induced_subgraph(&survivors);
        Reduced {
            coloring: coloring.restrict(&sub.origin),
            origin: sub.origin.iter().map(|&v| self.origin[v]).collect(),
            graph: sub.graph,
            committed,
            committed_weight,
        }
    }

    /// Colors vertices without removing anything; the result must stay
    /// feasible.
    pub fn paint(&self, assignments: &[(Vertex, Color)]) -> ReductionOutcome {
        let mut coloring = self.coloring.clone();
        for &(v, c) in assignments {
            coloring.assign(v, c)?;
        }
        coloring.check_partial(&self.graph)?;
        let mut out = self.clone();
        out.coloring = coloring;
        Ok(out)
    }

    /// Edge C-Reduction on a batch: every edge joins the matching, its
    /// endpoints are deleted and their other neighbors turn White. The batch
    /// must be an induced matching compatible with the current coloring.
    pub fn commit_edges(&self, edges: &[Edge]) -> ReductionOutcome {
        let g = &self.graph;
        let mut mate = vec![usize::MAX; g.n()];
        for &e in edges {
            if e.v() >= g.n() || !g.contains_edge(e) {
                return Err(Contradiction::new(ContradictionReason::Missing, e.ends()));
            }
            if self.coloring.is_excluded(e) {
                return Err(Contradiction::new(ContradictionReason::ExcludedEdge, e.ends()));
            }
            for x in e.ends() {
                if mate[x] != usize::MAX && mate[x] != e.other(x) {
                    return Err(Contradiction::new(ContradictionReason::SharedVertex, [x]));
                }
                if self.coloring.color(x) == Color::White {
                    return Err(Contradiction::new(ContradictionReason::ColorClash, [x]));
                }
                mate[x] = e.other(x);
            }
        }
        let mut coloring = self.coloring.clone();
        for &e in edges {
            for x in e.ends() {
                for &w in g.neighbors(x) {
                    if w == mate[x] {
                        continue;
                    }
                    if mate[w] != usize::MAX {
                        return Err(Contradiction::new(ContradictionReason::DistanceOne, [x, w]));
                    }
                    if coloring.color(w) == Color::Black {
                        return Err(Contradiction::new(ContradictionReason::BlackTwoBlackNeighbors, [x, w]));
                    }
                    coloring.state[w] = Color::White;
                }
            }
        }
        // every edge at a new White vertex is now at distance 1 from the batch
        for v in g.vertices() {
            if coloring.color(v) == Color::White && self.coloring.color(v) != Color::White {
                for &w in g.neighbors(v) {
                    if mate[w] == usize::MAX {
                        coloring.excluded.insert(Edge::new(v, w));
                    }
                }
            }
        }
        let removed: Vec<bool> = mate.iter().map(|&m| m != usize::MAX).collect();
        let mut committed = self.committed.clone();
        let mut weight = self.committed_weight;
        for &e in edges {
            committed.push(self.base_edge(e));
            weight += g.weight(e);
        }
        let out = self.keep(&removed, coloring, committed, weight);
        out.coloring.check_partial(&out.graph)?;
        Ok(out)
    }

    /// Vertex C-Reduction on a batch: the vertices become White, all their
    /// neighbors Black, and the vertices are deleted.
    pub fn remove_whites(&self, vertices: &[Vertex]) -> ReductionOutcome {
        let g = &self.graph;
        let mut coloring = self.coloring.clone();
        let mut removed = vec![false; g.n()];
        for &v in vertices {
            if v >= g.n() {
                return Err(Contradiction::new(ContradictionReason::Missing, [v]));
            }
            coloring.assign(v, Color::White)?;
            removed[v] = true;
        }
        for &v in vertices {
            for &w in g.neighbors(v) {
                if coloring.color(w) == Color::White {
                    return Err(Contradiction::new(ContradictionReason::WhiteAdjacentWhite, [v, w]));
                }
                coloring.state[w] = Color::Black;
            }
        }
        coloring.check_partial(g)?;
        let out = self.keep(&removed, coloring, self.committed.clone(), self.committed_weight);
        Ok(out)
    }
}

/// Reduction-Step: `vw` joins the committed matching `m`, all their vertices
/// are deleted and every surviving edge at distance 1 is excluded.
pub fn reduction_step(g: &Graph, m: &[Edge], vw: Edge) -> ReductionOutcome {
    let mut all = m.to_vec();
    all.push(vw);
    for (i, e) in all.iter().enumerate() {
        if !g.contains_edge(*e) {
            return Err(Contradiction::new(ContradictionReason::Missing, e.ends()));
        }
        for f in &all[..i] {
            if e.meets(*f) {
                return Err(Contradiction::new(ContradictionReason::SharedVertex, e.ends()));
            }
            if e.ends().iter().any(|&a| f.ends().iter().any(|&b| g.has_edge(a, b))) {
                return Err(Contradiction::new(ContradictionReason::DistanceOne, [e.u(), e.v(), f.u(), f.v()]));
            }
        }
    }
    Reduced::new(g).commit_edges(&all)
}

/// Edge C-Reduction of `uw` with `u` and `w` Black.
pub fn edge_c_reduction(r: &Reduced, uw: Edge) -> ReductionOutcome {
    r.paint(&[(uw.u(), Color::Black), (uw.v(), Color::Black)])?.commit_edges(&[uw])
}

/// Vertex C-Reduction of the White vertex `u`.
pub fn vertex_c_reduction(r: &Reduced, u: Vertex) -> ReductionOutcome {
    r.remove_whites(&[u])
}

/// Commits the seed edges (base ids, ascending) one by one, then keeps
/// committing diamond mid-edges and butterfly peripheral edges of the
/// residual graph until none is left.
pub fn forced_edge_closure(g: &Graph, seed: &[Edge]) -> ReductionOutcome {
    forced_edge_closure_from(Reduced::new(g), seed)
}

/// As [`forced_edge_closure`], starting from an already reduced instance.
pub fn forced_edge_closure_from(start: Reduced, seed: &[Edge]) -> ReductionOutcome {
    let mut seed = seed.to_vec();
    seed.sort_unstable();
    seed.dedup();
    let mut r = start;
    for e in seed {
        let (Some(u), Some(v)) = (r.current(e.u()), r.current(e.v())) else {
            return Err(Contradiction::new(ContradictionReason::SharedVertex, e.ends()));
        };
        r = r.commit_edges(&[Edge::new(u, v)])?;
    }
    loop {
        let forced = pattern::forced_edges_initial(&r.graph);
        if forced.is_empty() {
            return Ok(r);
        }
        r = r.commit_edges(&forced)?;
    }
}

/// Constraint propagation for feasible colorings.
///
/// `allowed` marks, per adjacency slot, whether the edge may be a matching
/// edge. The rules only ever fix colors that every complete feasible
/// extension shares.
pub(crate) struct Propagator<'g> {
    pub g: &'g Graph,
    allowed: Vec<Vec<bool>>,
}

impl<'g> Propagator<'g> {
    pub fn new(g: &'g Graph, excluded: &BTreeSet<Edge>) -> Self {
        Self::with_filter(g, |e| !excluded.contains(&e))
    }

    pub fn with_filter(g: &'g Graph, ok: impl Fn(Edge) -> bool) -> Self {
        let allowed = g.vertices().map(|v| g.neighbors(v).iter().map(|&w| ok(Edge::new(v, w))).collect()).collect();
        Propagator { g, allowed }
    }

    pub fn allowed(&self, u: Vertex, v: Vertex) -> bool {
        match self.g.neighbors(u).binary_search(&v) {
            Ok(i) => self.allowed[u][i],
            Err(_) => false,
        }
    }

    /// Runs all rules to a fixpoint, starting from the queued vertices.
    pub fn propagate(&self, state: &mut [Color], seeds: impl IntoIterator<Item = Vertex>) -> Result<(), Contradiction> {
        let g = self.g;
        let mut queued = vec![false; g.n()];
        let mut queue = VecDeque::new();
        for v in seeds {
            if !queued[v] {
                queued[v] = true;
                queue.push_back(v);
            }
        }
        let mut changed: Vec<Vertex> = Vec::new();
        while let Some(v) = queue.pop_front() {
            queued[v] = false;
            changed.clear();
            self.visit(state, v, &mut changed)?;
            for &c in &changed {
                for &w in std::iter::once(&c).chain(g.neighbors(c)) {
                    if !queued[w] {
                        queued[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        Ok(())
    }

    fn set(state: &mut [Color], v: Vertex, c: Color, changed: &mut Vec<Vertex>) -> Result<(), Contradiction> {
        match state[v] {
            Color::Unset => {
                state[v] = c;
                changed.push(v);
                Ok(())
            }
            old if old == c => Ok(()),
            _ => Err(Contradiction::new(ContradictionReason::ColorClash, [v])),
        }
    }

    fn visit(&self, state: &mut [Color], v: Vertex, changed: &mut Vec<Vertex>) -> Result<(), Contradiction> {
        let g = self.g;
        let nb = g.neighbors(v);
        match state[v] {
            Color::White => {
                for &w in nb {
                    if state[w] == Color::White {
                        return Err(Contradiction::new(ContradictionReason::WhiteAdjacentWhite, [v, w]));
                    }
                    Self::set(state, w, Color::Black, changed)?;
                }
            }
            Color::Black => {
                let mut black = None;
                let mut count = 0;
                for &w in nb {
                    if state[w] == Color::Black {
                        count += 1;
                        black = Some(w);
                    }
                }
                if count >= 2 {
                    return Err(Contradiction::new(ContradictionReason::BlackTwoBlackNeighbors, [v]));
                }
                if let Some(b) = black {
                    if !self.allowed(v, b) {
                        return Err(Contradiction::new(ContradictionReason::ExcludedEdge, [v, b]));
                    }
                    for &w in nb {
                        if w != b && state[w] == Color::Unset {
                            Self::set(state, w, Color::White, changed)?;
                        }
                    }
                } else {
                    let mut candidate = None;
                    let mut candidates = 0;
                    for (i, &w) in nb.iter().enumerate() {
                        if state[w] != Color::Unset {
                            continue;
                        }
                        if self.allowed[v][i] && self.can_take_mate(state, w, v) {
                            candidates += 1;
                            candidate = Some(w);
                        } else {
                            Self::set(state, w, Color::White, changed)?;
                        }
                    }
                    match (candidates, candidate) {
                        (0, _) => return Err(Contradiction::new(ContradictionReason::BlackWithoutMate, [v])),
                        (1, Some(w)) => Self::set(state, w, Color::Black, changed)?,
                        _ => {}
                    }
                }
            }
            Color::Unset => {
                let mut black = 0;
                let mut white = false;
                for &w in nb {
                    match state[w] {
                        Color::Black => black += 1,
                        Color::White => white = true,
                        Color::Unset => {}
                    }
                }
                if white {
                    return Self::set(state, v, Color::Black, changed);
                }
                if black >= 2 {
                    return Self::set(state, v, Color::White, changed);
                }
                let has_mate = nb
                    .iter()
                    .enumerate()
                    .any(|(i, &w)| self.allowed[v][i] && state[w] != Color::White && self.can_take_mate(state, w, v));
                if !has_mate {
                    return Self::set(state, v, Color::White, changed);
                }
            }
        }
        Ok(())
    }

    /// Whether `w` could still be matched to `v`: it has no Black neighbor
    /// other than `v`.
    fn can_take_mate(&self, state: &[Color], w: Vertex, v: Vertex) -> bool {
        self.g.neighbors(w).iter().all(|&z| z == v || state[z] != Color::Black)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::PatternKind;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn reduction_step_examples() {
        let r = reduction_step(&path(5), &[], Edge::new(1, 2)).unwrap();
        assert_eq!(r.origin, vec![0, 3, 4]);
        assert_eq!(r.graph.m(), 1);
        assert!(r.coloring.is_excluded(Edge::new(1, 2)));
        assert_eq!(r.committed, vec![Edge::new(1, 2)]);

        let err = reduction_step(&path(3), &[Edge::new(0, 1)], Edge::new(1, 2)).unwrap_err();
        assert_eq!(err.reason, ContradictionReason::SharedVertex);

        let two_p2 = graph(4, &[(0, 1), (2, 3)]);
        let r = reduction_step(&two_p2, &[Edge::new(0, 1)], Edge::new(2, 3)).unwrap();
        assert_eq!(r.graph.n(), 0);
        assert_eq!(r.committed.len(), 2);
    }

    #[test]
    fn reduction_step_rejects_distance_one() {
        let err = reduction_step(&path(4), &[Edge::new(0, 1)], Edge::new(2, 3)).unwrap_err();
        assert_eq!(err.reason, ContradictionReason::DistanceOne);
    }

    #[test]
    fn vertex_c_reduction_examples() {
        let p3 = Reduced::new(&path(3)).paint(&[(0, Color::White)]).unwrap();
        let r = vertex_c_reduction(&p3, 0).unwrap();
        assert_eq!(r.origin, vec![1, 2]);
        assert_eq!(r.coloring.color(0), Color::Black);

        // star: the leaves all turn Black and none can find a mate
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let r = vertex_c_reduction(&Reduced::new(&star), 0).unwrap();
        assert_eq!(r.coloring.count(Color::Black), 3);
        let p = Propagator::new(&r.graph, &r.coloring.excluded);
        let mut state = r.coloring.state.clone();
        assert!(p.propagate(&mut state, r.graph.vertices()).is_err());

        // C4 with a White vertex: the opposite vertex is left without a mate
        let r = vertex_c_reduction(&Reduced::new(&cycle(4)), 0).unwrap();
        let p = Propagator::new(&r.graph, &r.coloring.excluded);
        let mut state = r.coloring.state.clone();
        assert!(p.propagate(&mut state, r.graph.vertices()).is_err());
    }

    #[test]
    fn edge_c_reduction_examples() {
        let r = edge_c_reduction(&Reduced::new(&path(4)), Edge::new(1, 2)).unwrap();
        assert_eq!(r.origin, vec![0, 3]);
        assert_eq!(r.coloring.state, vec![Color::White, Color::White]);
        assert_eq!(r.committed, vec![Edge::new(1, 2)]);
        assert_eq!(r.graph.m(), 0);

        let diamond = graph(4, &PatternKind::Diamond.template());
        let r = edge_c_reduction(&Reduced::new(&diamond), Edge::new(1, 3)).unwrap();
        assert_eq!(r.origin, vec![0, 2]);
        assert_eq!(r.coloring.count(Color::White), 2);

        let tri = Reduced::new(&cycle(3)).paint(&[(2, Color::Black)]).unwrap();
        let err = edge_c_reduction(&tri, Edge::new(0, 1)).unwrap_err();
        assert_eq!(err.reason, ContradictionReason::BlackTwoBlackNeighbors);
    }

    #[test]
    fn closure_examples() {
        let diamond = graph(4, &PatternKind::Diamond.template());
        let r = forced_edge_closure(&diamond, &pattern::forced_edges_initial(&diamond)).unwrap();
        assert_eq!(r.committed, vec![Edge::new(1, 3)]);
        assert_eq!((r.graph.n(), r.graph.m()), (2, 0));

        let butterfly = graph(5, &PatternKind::Butterfly.template());
        let r = forced_edge_closure(&butterfly, &pattern::forced_edges_initial(&butterfly)).unwrap();
        assert_eq!(r.committed, vec![Edge::new(0, 1), Edge::new(2, 3)]);
        assert_eq!(r.origin, vec![4]);
        assert_eq!(r.graph.m(), 0);

        let k4 = graph(4, &PatternKind::K4.template());
        let r = forced_edge_closure(&k4, &pattern::forced_edges_initial(&k4)).unwrap();
        assert!(r.committed.is_empty());
    }

    #[test]
    fn closure_reports_clashing_forced_edges() {
        // two diamonds whose mid-edges share a vertex
        let g = graph(7, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (1, 4), (1, 5), (4, 5), (1, 6), (4, 6)]);
        let forced = pattern::forced_edges_initial(&g);
        assert!(forced_edge_closure(&g, &forced).is_err());
    }

    #[test]
    fn propagation_completes_forced_instances() {
        // P4 with its middle vertices Black propagates to the ends being White
        let g = path(4);
        let p = Propagator::new(&g, &BTreeSet::new());
        let mut state = vec![Color::Unset, Color::Black, Color::Black, Color::Unset];
        p.propagate(&mut state, g.vertices()).unwrap();
        assert_eq!(state, vec![Color::White, Color::Black, Color::Black, Color::White]);

        // an end of a path can never be White when its neighbor is White
        let mut state = vec![Color::White, Color::Unset, Color::Unset, Color::Unset];
        p.propagate(&mut state, g.vertices()).unwrap();
        assert_eq!(state, vec![Color::White, Color::Black, Color::Black, Color::White]);
    }

    #[test]
    fn feasibility_checks() {
        let g = path(3);
        let c = Coloring { state: vec![Color::White, Color::White, Color::Unset], excluded: BTreeSet::new() };
        assert_eq!(c.check_partial(&g).unwrap_err().reason, ContradictionReason::WhiteAdjacentWhite);
        let c = Coloring { state: vec![Color::Black, Color::Black, Color::Black], excluded: BTreeSet::new() };
        assert_eq!(c.check_partial(&g).unwrap_err().reason, ContradictionReason::BlackTwoBlackNeighbors);
        let c = Coloring::from_matching(3, &[Edge::new(0, 1)]);
        assert!(c.check_complete(&g).is_ok());
        assert!(c.admits(3, &[Edge::new(0, 1)]));
        assert!(!c.admits(3, &[Edge::new(1, 2)]));
    }
}
