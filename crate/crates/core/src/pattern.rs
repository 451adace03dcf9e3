//! Induced-subgraph detectors for the small patterns the solver cares about,
//! each returning witnesses in a fixed role order.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternKind {
    K4,
    Diamond,
    Butterfly,
    Gem,
    C4,
    /// Subdivided claw with legs of the given lengths.
    Spider(usize, usize, usize),
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternKind::K4 => write!(f, "K4"),
            PatternKind::Diamond => write!(f, "diamond"),
            PatternKind::Butterfly => write!(f, "butterfly"),
            PatternKind::Gem => write!(f, "gem"),
            PatternKind::C4 => write!(f, "C4"),
            PatternKind::Spider(i, j, k) => write!(f, "S_{{{i},{j},{k}}}"),
        }
    }
}

impl PatternKind {
    pub fn vertex_count(self) -> usize {
        match self {
            PatternKind::K4 | PatternKind::Diamond | PatternKind::C4 => 4,
            PatternKind::Butterfly | PatternKind::Gem => 5,
            PatternKind::Spider(i, j, k) => 1 + i + j + k,
        }
    }

    /// Edges of the pattern over role positions `0..vertex_count()`.
    ///
    /// Role orders: diamond `(v1, v2, v3, u)`, butterfly `(v1, v2, v3, v4, u)`,
    /// gem `(v1, v2, v3, v4, u)`, C4 in cyclic order, spider as center then
    /// the three legs outward.
    pub fn template(self) -> Vec<(usize, usize)> {
        match self {
            PatternKind::K4 => vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            PatternKind::Diamond => vec![(0, 1), (1, 2), (3, 0), (3, 1), (3, 2)],
            PatternKind::Butterfly => vec![(0, 1), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)],
            PatternKind::Gem => vec![(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)],
            PatternKind::C4 => vec![(0, 1), (1, 2), (2, 3), (3, 0)],
            PatternKind::Spider(i, j, k) => spider_parents(i, j, k)
                .iter()
                .enumerate()
                .filter_map(|(t, p)| p.map(|p| (p, t)))
                .collect(),
        }
    }
}

/// An occurrence of a pattern as an induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PatternWitness {
    pub pattern: PatternKind,
    pub vertices: Vec<Vertex>,
}

impl PatternWitness {
    /// Exact check that the tuple induces the pattern in `g`, role for role.
    pub fn verify(&self, g: &Graph) -> bool {
        let k = self.pattern.vertex_count();
        if self.vertices.len() != k || self.vertices.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let mut want = vec![vec![false; k]; k];
        for (a, b) in self.pattern.template() {
            want[a][b] = true;
            want[b][a] = true;
        }
        for a in 0..k {
            for b in a + 1..k {
                let (x, y) = (self.vertices[a], self.vertices[b]);
                if x == y || g.has_edge(x, y) != want[a][b] {
                    return false;
                }
            }
        }
        true
    }

    /// The mid-edge `u v2` of a diamond.
    pub fn mid_edge(&self) -> Option<Edge> {
        match self.pattern {
            PatternKind::Diamond => Some(Edge::new(self.vertices[3], self.vertices[1])),
            _ => None,
        }
    }

    /// The two edges of a butterfly that avoid its center.
    pub fn peripheral_edges(&self) -> Option<[Edge; 2]> {
        match self.pattern {
            PatternKind::Butterfly => Some([
                Edge::new(self.vertices[0], self.vertices[1]),
                Edge::new(self.vertices[2], self.vertices[3]),
            ]),
            _ => None,
        }
    }

    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> PatternWitness {
        PatternWitness { pattern: self.pattern, vertices: self.vertices.iter().map(|&v| f(v)).collect() }
    }
}

pub fn find_k4(g: &Graph) -> Option<PatternWitness> {
    for e in g.edges() {
        let (a, b) = (e.u(), e.v());
        let common = common_neighbors(g, a, b);
        for (i, &c) in common.iter().enumerate() {
            if c < b {
                continue;
            }
            if let Some(&d) = common[i + 1..].iter().find(|&&d| g.has_edge(c, d)) {
                return Some(PatternWitness { pattern: PatternKind::K4, vertices: vec![a, b, c, d] });
            }
        }
    }
    None
}

/// All induced diamonds, one witness per vertex set, `v2 < u` on the mid-edge
/// and `v1 < v3`.
pub fn find_all_diamonds(g: &Graph) -> Vec<PatternWitness> {
    let mut out = Vec::new();
    for e in g.edges() {
        let common = common_neighbors(g, e.u(), e.v());
        for (i, &c) in common.iter().enumerate() {
            for &d in &common[i + 1..] {
                if !g.has_edge(c, d) {
                    out.push(PatternWitness { pattern: PatternKind::Diamond, vertices: vec![c, e.u(), d, e.v()] });
                }
            }
        }
    }
    out
}

/// All induced butterflies, one witness per vertex set.
pub fn find_all_butterflies(g: &Graph) -> Vec<PatternWitness> {
    let mut out = Vec::new();
    for u in g.vertices() {
        let nb = g.neighbors(u);
        let inner: Vec<Edge> = nb
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| nb[i + 1..].iter().filter(move |&&b| g.has_edge(a, b)).map(move |&b| Edge::new(a, b)))
            .collect();
        for (i, &e) in inner.iter().enumerate() {
            for &f in &inner[i + 1..] {
                if e.meets(f) || e.ends().iter().any(|&a| f.ends().iter().any(|&b| g.has_edge(a, b))) {
                    continue;
                }
                out.push(PatternWitness {
                    pattern: PatternKind::Butterfly,
                    vertices: vec![e.u(), e.v(), f.u(), f.v(), u],
                });
            }
        }
    }
    out
}

pub fn find_gem(g: &Graph) -> Option<PatternWitness> {
    for u in g.vertices() {
        let nb = g.neighbors(u);
        let sub = g.induced_subgraph(nb);
        if let Some(w) = find_induced_sijk(&sub.graph, 3, 0, 0) {
            let mut vertices: Vec<Vertex> = w.vertices.iter().map(|&v| sub.origin[v]).collect();
            vertices.push(u);
            return Some(PatternWitness { pattern: PatternKind::Gem, vertices });
        }
    }
    None
}

fn for_each_induced_c4(g: &Graph, mut visit: impl FnMut([Vertex; 4]) -> bool) {
    for a in g.vertices() {
        for c in a + 1..g.n() {
            if g.has_edge(a, c) {
                continue;
            }
            let common = common_neighbors(g, a, c);
            for (i, &b) in common.iter().enumerate() {
                for &d in &common[i + 1..] {
                    if !g.has_edge(b, d) && !visit([a, b, c, d]) {
                        return;
                    }
                }
            }
        }
    }
}

pub fn find_c4(g: &Graph) -> Option<PatternWitness> {
    let mut found = None;
    for_each_induced_c4(g, |c| {
        found = Some(PatternWitness { pattern: PatternKind::C4, vertices: c.to_vec() });
        false
    });
    found
}

/// Edges lying on at least one induced C4; none of them can be in a d.i.m.
pub fn c4_edges(g: &Graph) -> Vec<Edge> {
    let mut out = Vec::new();
    for_each_induced_c4(g, |[a, b, c, d]| {
        out.extend([Edge::new(a, b), Edge::new(b, c), Edge::new(c, d), Edge::new(d, a)]);
        true
    });
    out.sort_unstable();
    out.dedup();
    out
}

/// Mid-edges of all diamonds together with the peripheral edges of all
/// butterflies. Each of them lies in every d.i.m. of `g`.
pub fn forced_edges_initial(g: &Graph) -> Vec<Edge> {
    let mut out: Vec<Edge> = find_all_diamonds(g).iter().filter_map(PatternWitness::mid_edge).collect();
    for b in find_all_butterflies(g) {
        out.extend(b.peripheral_edges().unwrap());
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn common_neighbors(g: &Graph, a: Vertex, b: Vertex) -> Vec<Vertex> {
    let (na, nb) = (g.neighbors(a), g.neighbors(b));
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < na.len() && j < nb.len() {
        match na[i].cmp(&nb[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(na[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Parent of every role position in the spider `S_{i,j,k}`; the center has none.
fn spider_parents(i: usize, j: usize, k: usize) -> Vec<Option<usize>> {
    let mut parent = vec![None];
    for len in [i, j, k] {
        for step in 0..len {
            let p = if step == 0 { 0 } else { parent.len() - 1 };
            parent.push(Some(p));
        }
    }
    parent
}

fn tree_degrees(parent: &[Option<usize>]) -> Vec<usize> {
    let mut deg = vec![0; parent.len()];
    for (t, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            deg[t] += 1;
            deg[p] += 1;
        }
    }
    deg
}

/// Backtracking embedding of a small tree as an induced subgraph.
struct TreeEmbedder<'a> {
    g: &'a Graph,
    parent: Vec<Option<usize>>,
    order: Vec<usize>,
    /// Pairs of role positions (a, b): image of b must exceed image of a.
    symmetry: Vec<(usize, usize)>,
    image: Vec<Option<Vertex>>,
    /// Tree degree of each role; smaller graph degrees cannot host it.
    min_degree: Vec<usize>,
    /// Placements left before the search gives up.
    budget: usize,
    exhausted: bool,
}

impl<'a> TreeEmbedder<'a> {
    fn fits(&self, w: Vertex, role: usize) -> bool {
        if self.g.degree(w) < self.min_degree[role] {
            return false;
        }
        let parent = self.parent[role].and_then(|p| self.image[p]);
        for (r, img) in self.image.iter().enumerate() {
            let Some(x) = *img else { continue };
            if x == w {
                return false;
            }
            if Some(x) != parent && self.g.has_edge(x, w) {
                return false;
            }
            if self.symmetry.iter().any(|&(a, b)| b == role && a == r && w < x) {
                return false;
            }
        }
        true
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let role = self.order[depth];
        if self.image[role].is_some() {
            return self.extend(depth + 1);
        }
        let g = self.g;
        match self.parent[role].and_then(|p| self.image[p]) {
            Some(p) => {
                for &w in g.neighbors(p) {
                    if self.try_place(w, role, depth) {
                        return true;
                    }
                }
            }
            None => {
                for w in g.vertices() {
                    if self.try_place(w, role, depth) {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn try_place(&mut self, w: Vertex, role: usize, depth: usize) -> bool {
        if self.budget == 0 {
            self.exhausted = true;
            return true;
        }
        self.budget -= 1;
        if !self.fits(w, role) {
            return false;
        }
        self.image[role] = Some(w);
        if self.extend(depth + 1) {
            return true;
        }
        self.image[role] = None;
        false
    }

    fn result(&self) -> Vec<Vertex> {
        self.image.iter().map(|v| v.unwrap()).collect()
    }
}

/// Some induced `S_{i,j,k}` in `g`: center first, then the legs of length
/// `i`, `j`, `k`, each listed outward from the center.
pub fn find_induced_sijk(g: &Graph, i: usize, j: usize, k: usize) -> Option<PatternWitness> {
    let parent = spider_parents(i, j, k);
    let legs = [i, j, k];
    let starts: Vec<usize> = (0..3).map(|l| 1 + legs[..l].iter().sum::<usize>()).collect();
    let needed = legs.iter().filter(|&&l| l > 0).count();
    // Longest leg first; equal legs are interchangeable, so their first
    // vertices are taken in increasing order.
    let mut leg_order: Vec<usize> = (0..3).filter(|&l| legs[l] > 0).collect();
    leg_order.sort_by_key(|&l| std::cmp::Reverse(legs[l]));
    let mut order = vec![0];
    for &l in &leg_order {
        order.extend(starts[l]..starts[l] + legs[l]);
    }
    let mut symmetry = Vec::new();
    for (a, &la) in leg_order.iter().enumerate() {
        for &lb in &leg_order[a + 1..] {
            if legs[la] == legs[lb] {
                symmetry.push((starts[la], starts[lb]));
            }
        }
    }
    let min_degree = tree_degrees(&parent);
    let mut emb = TreeEmbedder {
        g,
        parent,
        order,
        symmetry,
        image: vec![None; 1 + i + j + k],
        min_degree,
        budget: usize::MAX,
        exhausted: false,
    };
    for center in g.vertices() {
        if g.degree(center) < needed {
            continue;
        }
        emb.image.iter_mut().for_each(|v| *v = None);
        emb.image[0] = Some(center);
        if emb.extend(1) {
            return Some(PatternWitness { pattern: PatternKind::Spider(i, j, k), vertices: emb.result() });
        }
    }
    None
}

/// Some induced `S_{i,j,k}` using the edge `uv` as one of its own edges.
/// Used to keep a graph free of the pattern while edges are added one by one.
pub fn find_induced_sijk_through_edge(g: &Graph, i: usize, j: usize, k: usize, uv: Edge) -> Option<PatternWitness> {
    find_induced_sijk_through_edge_within(g, i, j, k, uv, usize::MAX).expect("unbounded search")
}

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("search budget exhausted")]
pub struct BudgetExhausted;

/// [`find_induced_sijk_through_edge`] that gives up after `budget` vertex
/// placements.
pub fn find_induced_sijk_through_edge_within(
    g: &Graph,
    i: usize,
    j: usize,
    k: usize,
    uv: Edge,
    mut budget: usize,
) -> Result<Option<PatternWitness>, BudgetExhausted> {
    if !g.contains_edge(uv) {
        return Ok(None);
    }
    let parent = spider_parents(i, j, k);
    let size = parent.len();
    let legs = [i, j, k];
    let mut leg_roles: Vec<Vec<usize>> = Vec::new();
    let mut next = 1;
    for len in legs {
        leg_roles.push((next..next + len).collect());
        next += len;
    }
    leg_roles.sort_by_key(|l| std::cmp::Reverse(l.len()));
    for (t, p) in parent.iter().enumerate() {
        let Some(p) = *p else { continue };
        for (pu, tu) in [(uv.u(), uv.v()), (uv.v(), uv.u())] {
            // Walk from the fixed edge to the center, then grow the legs
            // outward, longest first.
            let mut tree_parent = parent.clone();
            let mut order = vec![p, t];
            let mut below = p;
            let mut up = parent[p];
            tree_parent[p] = None;
            tree_parent[t] = None;
            while let Some(q) = up {
                tree_parent[q] = Some(below);
                order.push(q);
                below = q;
                up = parent[q];
            }
            for &r in leg_roles.iter().flatten() {
                if !order.contains(&r) {
                    order.push(r);
                }
            }
            let mut image = vec![None; size];
            image[p] = Some(pu);
            image[t] = Some(tu);
            let min_degree = tree_degrees(&parent);
            let mut emb = TreeEmbedder {
                g,
                parent: tree_parent,
                order,
                symmetry: Vec::new(),
                image,
                min_degree,
                budget,
                exhausted: false,
            };
            let found = emb.extend(2);
            if emb.exhausted {
                return Err(BudgetExhausted);
            }
            if found {
                return Ok(Some(PatternWitness { pattern: PatternKind::Spider(i, j, k), vertices: emb.result() }));
            }
            budget = emb.budget;
        }
    }
    Ok(None)
}
