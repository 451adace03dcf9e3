//! Forcing rules that hold for every d.i.m. containing the anchor edge.
//!
//! Each rule looks at the current decomposition and either leaves the
//! instance alone, reduces it, or proves that no d.i.m. contains the anchor.

use crate::coloring::{Color, Contradiction, ContradictionReason, Reduced};
use crate::graph::{Edge, Graph, Vertex};

use super::decomposition::LevelDecomposition;
use super::{Detail, Rule};

pub(crate) type RuleResult = Result<Option<(Reduced, Rule, Detail)>, Contradiction>;

fn commit(r: &Reduced, mut edges: Vec<Edge>, rule: Rule) -> RuleResult {
    if edges.is_empty() {
        return Ok(None);
    }
    edges.sort_unstable();
    edges.dedup();
    let detail = Detail::edges(edges.iter().map(|&e| r.base_edge(e)).collect());
    Ok(Some((r.commit_edges(&edges)?, rule, detail)))
}

fn describe(r: &Reduced, vertices: &[Vertex]) -> Detail {
    Detail::vertices(vertices.iter().map(|&v| r.base(v)).collect())
}

/// Edges inside `N_2`.
pub(crate) fn level_matching(r: &Reduced, d: &LevelDecomposition) -> RuleResult {
    commit(r, d.m2.clone(), Rule::LevelMatching)
}

/// An edge inside `N_4` whose endpoints share a neighbor in `N_3`.
pub(crate) fn level_triangle(r: &Reduced, d: &LevelDecomposition) -> RuleResult {
    let g = &r.graph;
    let mut edges = Vec::new();
    for &b in d.level(4) {
        for &c in g.neighbors(b) {
            if c > b && d.in_level(c, 4) && common(g, b, c).any(|a| d.in_level(a, 3)) {
                edges.push(Edge::new(b, c));
            }
        }
    }
    commit(r, edges, Rule::LevelTriangle)
}

/// A vertex of `T_i` that sees two vertices of some other `T_j` is the mate
/// of `u_i`.
pub(crate) fn double_contact(r: &Reduced, d: &LevelDecomposition) -> RuleResult {
    let g = &r.graph;
    let mut edges = Vec::new();
    for (i, ti) in d.t.iter().enumerate() {
        for &t in ti {
            let mut seen: Vec<usize> = g.neighbors(t).iter().filter_map(|&w| d.t_index[w]).filter(|&j| j != i).collect();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                edges.push(Edge::new(d.s2[i], t));
            }
        }
    }
    commit(r, edges, Rule::DoubleContact)
}

/// A vertex of `T_i` adjacent to `S_3` is the mate of `u_i`.
pub(crate) fn s3_contact(r: &Reduced, d: &LevelDecomposition) -> RuleResult {
    let g = &r.graph;
    let mut edges = Vec::new();
    for &s in &d.s3 {
        for &t in g.neighbors(s) {
            if let Some(u) = d.u_of(t) {
                edges.push(Edge::new(u, t));
            }
        }
    }
    commit(r, edges, Rule::S3Contact)
}

/// `S_3` is White: remove it and turn its neighbors Black.
pub(crate) fn s3_white(r: &Reduced, d: &LevelDecomposition) -> RuleResult {
    if d.s3.is_empty() {
        return Ok(None);
    }
    let detail = describe(r, &d.s3);
    Ok(Some((r.remove_whites(&d.s3)?, Rule::S3White, detail)))
}

/// Vertices of `T_i` on an induced C4 through `u_i` (or joined to `u_i` by
/// an excluded edge) cannot be the mate of `u_i`, so they are White.
pub(crate) fn c4_white(r: &Reduced, d: &LevelDecomposition) -> RuleResult {
    let g = &r.graph;
    let mut whites = Vec::new();
    for (i, ti) in d.t.iter().enumerate() {
        let u = d.s2[i];
        for &t in ti {
            if r.coloring.color(t) == Color::Unset
                && (r.coloring.is_excluded(Edge::new(u, t)) || on_induced_c4(g, u, t))
            {
                whites.push(t);
            }
        }
    }
    if whites.is_empty() {
        return Ok(None);
    }
    let detail = describe(r, &whites);
    let paint: Vec<(Vertex, Color)> = whites.iter().map(|&v| (v, Color::White)).collect();
    Ok(Some((r.paint(&paint)?, Rule::C4White, detail)))
}

/// Whether the edge `ut` lies on an induced 4-cycle `u a b t`.
pub(crate) fn on_induced_c4(g: &Graph, u: Vertex, t: Vertex) -> bool {
    g.neighbors(u).iter().any(|&a| {
        a != t
            && !g.has_edge(a, t)
            && g.neighbors(a).iter().any(|&b| b != u && b != t && g.has_edge(b, t) && !g.has_edge(b, u))
    })
}

/// Exactly one vertex of every `T_i` is Black. A Black member, or a single
/// member that is not White, is the mate of `u_i`; no candidate at all is a
/// contradiction.
pub(crate) fn t_mates(r: &Reduced, d: &LevelDecomposition) -> RuleResult {
    let mut black = Vec::new();
    let mut single = Vec::new();
    for (i, ti) in d.t.iter().enumerate() {
        let u = d.s2[i];
        let open: Vec<Vertex> = ti.iter().copied().filter(|&t| r.coloring.color(t) != Color::White).collect();
        if open.is_empty() {
            return Err(Contradiction::new(ContradictionReason::EmptyT, [r.base(u)]));
        }
        let blacks: Vec<Vertex> = open.iter().copied().filter(|&t| r.coloring.color(t) == Color::Black).collect();
        if !blacks.is_empty() {
            black.extend(blacks.iter().map(|&t| Edge::new(u, t)));
        } else if open.len() == 1 {
            single.push(Edge::new(u, open[0]));
        }
    }
    if !black.is_empty() {
        return commit(r, black, Rule::TBlack);
    }
    commit(r, single, Rule::SingletonT)
}

/// Unset vertices of `T_i` whose only neighbor is `u_i` are interchangeable;
/// keep the one with the lightest edge to `u_i` (lowest id on ties) and
/// turn the others White.
pub(crate) fn prune_in_vertices(r: &Reduced, d: &LevelDecomposition) -> RuleResult {
    let g = &r.graph;
    let mut whites = Vec::new();
    for (i, ti) in d.t.iter().enumerate() {
        let u = d.s2[i];
        let pendant: Vec<Vertex> =
            ti.iter().copied().filter(|&t| g.degree(t) == 1 && r.coloring.color(t) == Color::Unset).collect();
        if pendant.len() < 2 {
            continue;
        }
        let keep = *pendant
            .iter()
            .min_by(|&&a, &&b| g.weight(Edge::new(u, a)).total_cmp(&g.weight(Edge::new(u, b))).then(a.cmp(&b)))
            .unwrap();
        whites.extend(pendant.into_iter().filter(|&t| t != keep));
    }
    if whites.is_empty() {
        return Ok(None);
    }
    let detail = describe(r, &whites);
    let paint: Vec<(Vertex, Color)> = whites.iter().map(|&v| (v, Color::White)).collect();
    Ok(Some((r.paint(&paint)?, Rule::InVertexPrune, detail)))
}

/// A vertex `z ∈ N_4` without neighbors in `Y` must be White, so each of its
/// `T_i` neighbors is the mate of `u_i`; two neighbors in one `T_i` are a
/// contradiction.
pub(crate) fn isolated_n4(r: &Reduced, d: &LevelDecomposition) -> RuleResult {
    let g = &r.graph;
    let mut edges = Vec::new();
    for &z in d.level(4) {
        if g.neighbors(z).iter().any(|&w| d.level_of[w].is_some_and(|l| l >= 4)) {
            continue;
        }
        if r.coloring.color(z) == Color::Black {
            return Err(Contradiction::new(ContradictionReason::BlackWithoutMate, [r.base(z)]));
        }
        let mut contacts: Vec<(usize, Vertex)> =
            g.neighbors(z).iter().filter_map(|&t| d.t_index[t].map(|i| (i, t))).collect();
        contacts.sort_unstable();
        if let Some(w) = contacts.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Contradiction::new(
                ContradictionReason::DoubleContact,
                [r.base(z), r.base(w[0].1), r.base(w[1].1)],
            ));
        }
        edges.extend(contacts.iter().map(|&(i, t)| Edge::new(d.s2[i], t)));
    }
    commit(r, edges, Rule::IsolatedN4)
}

fn common<'g>(g: &'g Graph, a: Vertex, b: Vertex) -> impl Iterator<Item = Vertex> + 'g {
    let nb = g.neighbors(b);
    g.neighbors(a).iter().copied().filter(move |w| nb.binary_search(w).is_ok())
}

/// The rules in the order they are tried; the first one that changes the
/// instance wins and the decomposition is recomputed.
pub(crate) const RULES: [fn(&Reduced, &LevelDecomposition) -> RuleResult; 10] = [
    level_matching,
    level_triangle,
    double_contact,
    s3_contact,
    s3_white,
    c4_white,
    t_mates,
    prune_in_vertices,
    isolated_n4,
    full_contact,
];

/// A vertex of `N_4` adjacent to all of some `T_i` with `|T_i| ≥ 2` leaves
/// `u_i` without a mate.
pub(crate) fn full_contact(r: &Reduced, d: &LevelDecomposition) -> RuleResult {
    let g = &r.graph;
    for &z in d.level(4) {
        let mut counts: Vec<(usize, usize)> = Vec::new();
        for &t in g.neighbors(z) {
            if let Some(i) = d.t_index[t] {
                match counts.iter_mut().find(|(j, _)| *j == i) {
                    Some((_, c)) => *c += 1,
                    None => counts.push((i, 1)),
                }
            }
        }
        if let Some(&(i, _)) = counts.iter().find(|&&(i, c)| c == d.t[i].len() && c >= 2) {
            return Err(Contradiction::new(ContradictionReason::EmptyT, [r.base(z), r.base(d.s2[i])]));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::decomposition::decompose;

    /// Anchor `0-1` with `r = 2`; `N_1 = {2, 3}` where `2 ~ 0` and `3 ~ 1`.
    fn setup(n: usize, extra: &[(usize, usize)]) -> (Reduced, LevelDecomposition) {
        let mut edges = vec![(0, 1), (0, 2), (1, 3)];
        edges.extend_from_slice(extra);
        let g = Graph::from_edges(n, edges).unwrap();
        let r = Reduced::new(&g);
        let d = decompose(&r.graph, &r.coloring, Edge::new(0, 1), 2).unwrap();
        (r, d)
    }

    fn committed(res: RuleResult) -> (Rule, Vec<Edge>) {
        let (r, rule, _) = res.unwrap().expect("rule fires");
        (rule, r.committed)
    }

    #[test]
    fn n2_edges_are_matched() {
        let (r, d) = setup(6, &[(2, 4), (3, 5), (4, 5)]);
        assert_eq!(committed(level_matching(&r, &d)), (Rule::LevelMatching, vec![Edge::new(4, 5)]));
        let (r, d) = setup(6, &[(2, 4), (3, 5)]);
        assert!(level_matching(&r, &d).unwrap().is_none());
    }

    #[test]
    fn triangle_into_n4() {
        let (r, d) = setup(8, &[(2, 4), (4, 5), (5, 6), (5, 7), (6, 7)]);
        assert_eq!(committed(level_triangle(&r, &d)), (Rule::LevelTriangle, vec![Edge::new(6, 7)]));
    }

    #[test]
    fn double_contact_forces_mate() {
        let (r, d) = setup(9, &[(2, 4), (3, 5), (4, 6), (5, 7), (5, 8), (6, 7), (6, 8)]);
        assert_eq!(committed(double_contact(&r, &d)), (Rule::DoubleContact, vec![Edge::new(4, 6)]));
    }

    #[test]
    fn s3_neighbor_forces_mate_then_s3_is_white() {
        let (r, d) = setup(8, &[(2, 4), (3, 5), (4, 6), (5, 6), (4, 7), (6, 7)]);
        assert_eq!(d.s3, vec![6]);
        assert_eq!(committed(s3_contact(&r, &d)), (Rule::S3Contact, vec![Edge::new(4, 7)]));
        let (after, rule, _) = s3_white(&r, &d).unwrap().unwrap();
        assert_eq!(rule, Rule::S3White);
        assert_eq!(after.graph.n(), 7);
        assert_eq!(after.coloring.color(after.current(7).unwrap()), Color::Black);
    }

    #[test]
    fn c4_through_u_whitens_then_t_is_empty() {
        let (r, d) = setup(8, &[(2, 4), (4, 5), (4, 6), (5, 7), (6, 7)]);
        let (r, rule, _) = c4_white(&r, &d).unwrap().unwrap();
        assert_eq!(rule, Rule::C4White);
        let d = decompose(&r.graph, &r.coloring, Edge::new(0, 1), 2).unwrap();
        assert_eq!(t_mates(&r, &d).unwrap_err().reason, ContradictionReason::EmptyT);
    }

    #[test]
    fn singleton_t_is_matched() {
        let g = Graph::from_edges(6, (1..6).map(|i| (i - 1, i))).unwrap();
        let r = Reduced::new(&g);
        let d = decompose(&g, &r.coloring, Edge::new(1, 2), 3).unwrap();
        assert_eq!(committed(t_mates(&r, &d)), (Rule::SingletonT, vec![Edge::new(4, 5)]));
    }

    #[test]
    fn pendant_t_vertices_keep_lowest() {
        let (r, d) = setup(8, &[(2, 4), (4, 5), (4, 6), (4, 7)]);
        let (r, rule, detail) = prune_in_vertices(&r, &d).unwrap().unwrap();
        assert_eq!(rule, Rule::InVertexPrune);
        assert_eq!(detail.vertices, vec![6, 7]);
        assert_eq!(r.coloring.color(5), Color::Unset);
    }

    #[test]
    fn isolated_n4_vertex() {
        let (r, d) = setup(8, &[(2, 4), (4, 5), (4, 6), (5, 7)]);
        assert_eq!(committed(isolated_n4(&r, &d)), (Rule::IsolatedN4, vec![Edge::new(4, 5)]));
        let (r, d) = setup(8, &[(2, 4), (4, 5), (4, 6), (5, 7), (6, 7)]);
        assert_eq!(isolated_n4(&r, &d).unwrap_err().reason, ContradictionReason::DoubleContact);
        assert_eq!(full_contact(&r, &d).unwrap_err().reason, ContradictionReason::EmptyT);
    }
}
