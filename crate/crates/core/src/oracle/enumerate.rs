//! Exhaustive small-graph generation: labeled graphs by edge bitmask and
//! connected isomorphism classes by canonical augmentation.

use std::collections::HashSet;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Largest vertex count accepted by [`enumerate_all_graphs`] by default.
pub const MAX_ENUMERATION_N: usize = 9;
/// Largest vertex count whose adjacency code fits in a `u64`.
const CODE_LIMIT: usize = 11;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// Every graph on vertices `0..n`, one per subset of the possible edges.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    assert!(pairs.len() < 64, "too many vertices for labeled enumeration");
    (0u64..1u64 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p);
        Graph::from_edges(n, edges).expect("pairs are distinct")
    })
}

/// One representative, in canonical labeling, of every isomorphism class of
/// connected graphs on `n` vertices that satisfies `predicate`.
pub fn enumerate_all_graphs(n: usize, predicate: impl Fn(&Graph) -> bool) -> Result<Vec<Graph>, EnumerateError> {
    enumerate_all_graphs_capped(n, MAX_ENUMERATION_N, predicate)
}

pub fn enumerate_all_graphs_capped(
    n: usize,
    cap: usize,
    predicate: impl Fn(&Graph) -> bool,
) -> Result<Vec<Graph>, EnumerateError> {
    if n > cap.min(CODE_LIMIT) {
        return Err(EnumerateError::CapExceeded { n, cap: cap.min(CODE_LIMIT) });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    // every connected graph has a vertex whose removal keeps it connected
    let mut classes: Vec<Vec<u32>> = vec![vec![0]];
    for k in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for adj in &classes {
            for subset in 1u32..1 << (k - 1) {
                let mut grown = adj.clone();
                grown.push(subset);
                for (v, row) in grown.iter_mut().enumerate().take(k - 1) {
                    if subset >> v & 1 == 1 {
                        *row |= 1 << (k - 1);
                    }
                }
                let code = code_of(&grown);
                if seen.insert(code) {
                    next.push(decode(k, code));
                }
            }
        }
        classes = next;
    }
    let mut out: Vec<(u64, Graph)> = classes
        .iter()
        .map(|adj| (code_of(adj), to_graph(adj)))
        .filter(|(_, g)| predicate(g))
        .collect();
    out.sort_by_key(|(code, _)| *code);
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

/// Isomorphism-invariant code of a graph with at most 11 vertices: equal
/// codes on equal vertex counts mean isomorphic graphs.
pub fn canonical_code(g: &Graph) -> u64 {
    assert!(g.n() <= CODE_LIMIT, "canonical codes support at most {CODE_LIMIT} vertices");
    let adj: Vec<u32> = g.vertices().map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
    code_of(&adj)
}

fn to_graph(adj: &[u32]) -> Graph {
    let n = adj.len();
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).filter(move |&v| adj[u] >> v & 1 == 1).map(move |v| (u, v))))
        .expect("adjacency is symmetric")
}

fn decode(n: usize, code: u64) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if code >> bit & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            bit += 1;
        }
    }
    adj
}

fn code_of(adj: &[u32]) -> u64 {
    let n = adj.len();
    let cells = refine(adj, vec![(0..n).collect()]);
    let mut best = 0u64;
    let mut found = false;
    search(adj, cells, &mut best, &mut found);
    best
}

fn search(adj: &[u32], cells: Vec<Vec<Vertex>>, best: &mut u64, found: &mut bool) {
    let Some(pos) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<Vertex> = cells.iter().map(|c| c[0]).collect();
        let code = code_for_order(adj, &order);
        if !*found || code > *best {
            *best = code;
            *found = true;
        }
        return;
    };
    for &v in &cells[pos] {
        let mut split = cells.clone();
        let rest: Vec<Vertex> = cells[pos].iter().copied().filter(|&w| w != v).collect();
        split.splice(pos..=pos, [vec![v], rest]);
        search(adj, refine(adj, split), best, found);
    }
}

fn code_for_order(adj: &[u32], order: &[Vertex]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if adj[order[i]] >> order[j] & 1 == 1 {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

/// Equitable refinement: split cells by neighbor counts into every cell
/// until stable. The cell order depends only on the graph structure.
fn refine(adj: &[u32], mut cells: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    loop {
        let masks: Vec<u32> = cells.iter().map(|c| c.iter().fold(0u32, |m, &v| m | 1 << v)).collect();
        let mut next = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, Vertex)> =
                cell.iter().map(|&v| (masks.iter().map(|m| (adj[v] & m).count_ones()).collect(), v)).collect();
            keyed.sort();
            let mut group: Vec<Vertex> = Vec::new();
            for i in 0..keyed.len() {
                if i > 0 && keyed[i].0 != keyed[i - 1].0 {
                    next.push(std::mem::take(&mut group));
                    changed = true;
                }
                group.push(keyed[i].1);
            }
            next.push(group);
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}
