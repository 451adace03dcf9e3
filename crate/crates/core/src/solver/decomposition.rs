//! Distance levels of an anchor edge and the sets derived from them.

use crate::coloring::{Color, Coloring, Contradiction, ContradictionReason};
use crate::graph::{Edge, Graph, Vertex};

/// Distance levels `N_0, N_1, ...` of an anchor edge `xy`, where `r` sees
/// `x` but not `y`, together with the private-neighbor structure of `N_2`
/// and `N_3`.
#[derive(Clone, Debug)]
pub struct LevelDecomposition {
    pub x: Vertex,
    pub y: Vertex,
    pub r: Vertex,
    pub levels: Vec<Vec<Vertex>>,
    pub level_of: Vec<Option<usize>>,
    /// Edges inside `N_2`.
    pub m2: Vec<Edge>,
    /// Vertices of `N_2` without a neighbor in `N_2`.
    pub s2: Vec<Vertex>,
    /// `t[i]`: vertices of `N_3` whose only `N_2` neighbor is `s2[i]`.
    pub t: Vec<Vec<Vertex>>,
    /// Index `i` with `v ∈ t[i]`, for every such `v`.
    pub t_index: Vec<Option<usize>>,
    /// Vertices of `N_3` with several `N_2` neighbors (or none in `s2`).
    pub s3: Vec<Vertex>,
    /// Vertices unreachable from the anchor.
    pub detached: Vec<Vertex>,
}

impl LevelDecomposition {
    pub fn anchor(&self) -> Edge {
        Edge::new(self.x, self.y)
    }

    pub fn level(&self, i: usize) -> &[Vertex] {
        self.levels.get(i).map_or(&[], |l| l.as_slice())
    }

    pub fn in_level(&self, v: Vertex, i: usize) -> bool {
        self.level_of[v] == Some(i)
    }

    /// `{x, y} ∪ N_1 ∪ N_2 ∪ N_3`.
    pub fn x_part(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.levels.iter().take(4).flatten().copied().collect();
        out.sort_unstable();
        out
    }

    /// Every level from `N_4` on.
    pub fn y_part(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.levels.iter().skip(4).flatten().copied().collect();
        out.sort_unstable();
        out
    }

    pub fn u_of(&self, t: Vertex) -> Option<Vertex> {
        self.t_index[t].map(|i| self.s2[i])
    }

    pub fn max_t(&self) -> usize {
        self.t.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Every edge `xy` with a vertex seeing exactly one of its endpoints, with
/// the smallest such vertex. Edges come in ascending order.
pub fn p3_anchor_edges(g: &Graph) -> Vec<(Edge, Vertex)> {
    g.edges()
        .filter_map(|e| {
            let (a, b) = (e.u(), e.v());
            let mut best: Option<Vertex> = None;
            for (p, q) in [(a, b), (b, a)] {
                if let Some(&r) = g.neighbors(p).iter().find(|&&r| r != q && !g.has_edge(r, q)) {
                    best = Some(best.map_or(r, |s: Vertex| s.min(r)));
                }
            }
            best.map(|r| (e, r))
        })
        .collect()
}

/// Levels of `xy` and the derived sets; fails when `N_1` is not independent,
/// `G[N_2]` is not a matching plus isolated vertices, or the anchor
/// colors clash with `coloring`.
pub fn decompose(g: &Graph, coloring: &Coloring, xy: Edge, r: Vertex) -> Result<LevelDecomposition, Contradiction> {
    let (x, y) = if g.has_edge(r, xy.u()) && !g.has_edge(r, xy.v()) {
        (xy.u(), xy.v())
    } else if g.has_edge(r, xy.v()) && !g.has_edge(r, xy.u()) {
        (xy.v(), xy.u())
    } else {
        return Err(Contradiction::new(ContradictionReason::Missing, [xy.u(), xy.v(), r]));
    };
    if coloring.is_excluded(xy) {
        return Err(Contradiction::new(ContradictionReason::ExcludedEdge, [x, y]));
    }
    for v in [x, y] {
        if coloring.color(v) == Color::White {
            return Err(Contradiction::new(ContradictionReason::ColorClash, [v]));
        }
    }
    let dist = g.bfs(&[x, y]);
    let mut levels: Vec<Vec<Vertex>> = Vec::new();
    let mut detached = Vec::new();
    for v in g.vertices() {
        match dist[v] {
            Some(d) => {
                if levels.len() <= d {
                    levels.resize(d + 1, Vec::new());
                }
                levels[d].push(v);
            }
            None => detached.push(v),
        }
    }
    let level_of = dist;
    let n1 = levels.get(1).cloned().unwrap_or_default();
    for &a in &n1 {
        if coloring.color(a) == Color::Black {
            return Err(Contradiction::new(ContradictionReason::ColorClash, [a]));
        }
        if let Some(&b) = g.neighbors(a).iter().find(|&&b| level_of[b] == Some(1)) {
            return Err(Contradiction::new(ContradictionReason::N1NotIndependent, [a, b]));
        }
    }
    let n2 = levels.get(2).cloned().unwrap_or_default();
    let mut m2 = Vec::new();
    let mut s2 = Vec::new();
    let mut s2_index = vec![usize::MAX; g.n()];
    for &u in &n2 {
        if coloring.color(u) == Color::White {
            return Err(Contradiction::new(ContradictionReason::ColorClash, [u]));
        }
        let inner: Vec<Vertex> = g.neighbors(u).iter().copied().filter(|&w| level_of[w] == Some(2)).collect();
        match inner.len() {
            0 => {
                s2_index[u] = s2.len();
                s2.push(u);
            }
            1 => {
                if g.neighbors(inner[0]).iter().filter(|&&w| level_of[w] == Some(2)).count() != 1 {
                    return Err(Contradiction::new(ContradictionReason::N2Malformed, [u, inner[0]]));
                }
                if u < inner[0] {
                    m2.push(Edge::new(u, inner[0]));
                }
            }
            _ => return Err(Contradiction::new(ContradictionReason::N2Malformed, [u, inner[0], inner[1]])),
        }
    }
    let mut t = vec![Vec::new(); s2.len()];
    let mut t_index = vec![None; g.n()];
    let mut s3 = Vec::new();
    for &v in levels.get(3).map_or(&[][..], |l| l.as_slice()) {
        let ups: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| level_of[w] == Some(2)).collect();
        if ups.len() == 1 && s2_index[ups[0]] != usize::MAX {
            let i = s2_index[ups[0]];
            t[i].push(v);
            t_index[v] = Some(i);
        } else {
            s3.push(v);
        }
    }
    Ok(LevelDecomposition { x, y, r, levels, level_of, m2, s2, t, t_index, s3, detached })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn anchor_examples() {
        let p3 = p3_anchor_edges(&path(3));
        assert_eq!(p3, vec![(Edge::new(0, 1), 2), (Edge::new(1, 2), 0)]);
        let k3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(p3_anchor_edges(&k3).is_empty());
        assert_eq!(p3_anchor_edges(&path(4)).len(), 3);
    }

    #[test]
    fn p6_decomposition() {
        let g = path(6);
        let d = decompose(&g, &Coloring::new(6), Edge::new(1, 2), 3).unwrap();
        assert_eq!((d.x, d.y), (2, 1));
        assert_eq!(d.level(1), &[0, 3]);
        assert_eq!(d.s2, vec![4]);
        assert!(d.m2.is_empty());
        assert_eq!(d.t, vec![vec![5]]);
        assert!(d.s3.is_empty());
        assert!(d.y_part().is_empty());
    }

    #[test]
    fn c4_fails_independence() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let err = decompose(&c4, &Coloring::new(4), Edge::new(0, 1), 3).unwrap_err();
        assert_eq!(err.reason, ContradictionReason::N1NotIndependent);
    }

    #[test]
    fn p3_inside_n2_is_malformed() {
        // x=0, y=1, r=2; N_1 = {2}; N_2 = {3,4,5} inducing the path 3-4-5
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (2, 3), (2, 4), (2, 5), (3, 4), (4, 5)]).unwrap();
        let err = decompose(&g, &Coloring::new(6), Edge::new(0, 1), 2).unwrap_err();
        assert_eq!(err.reason, ContradictionReason::N2Malformed);
    }

    #[test]
    fn s3_and_m2_are_split_out() {
        // x=0,y=1; N_1={2,3}; N_2={4,5,6} with edge 5-6; N_3={7 (sees 4 and 5), 8 (sees 4)}
        let g = Graph::from_edges(
            9,
            [(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (3, 6), (5, 6), (4, 7), (5, 7), (4, 8)],
        )
        .unwrap();
        let d = decompose(&g, &Coloring::new(9), Edge::new(0, 1), 2).unwrap();
        assert_eq!(d.m2, vec![Edge::new(5, 6)]);
        assert_eq!(d.s2, vec![4]);
        assert_eq!(d.t, vec![vec![8]]);
        assert_eq!(d.s3, vec![7]);
    }
}
