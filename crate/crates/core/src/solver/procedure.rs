//! The anchored search behind [`Solver::dim_with_xy`].

use std::collections::HashMap;
use std::time::Instant;

use crate::coloring::{Color, Coloring, Contradiction, Reduced};
use crate::graph::{Edge, Graph, Vertex};
use crate::pattern;

use super::decomposition::{decompose, LevelDecomposition};
use super::rules::RULES;
use super::xcolor::{color_component, component_tasks, ComponentColoring};
use super::{AnchorResult, Context, Detail, Rule, Solver};

/// Interacting components beyond this count only occur when the graph
/// contains an induced `S_{1,2,4}`.
const MAX_INTERACTING: usize = 3;

impl Solver {
    /// Ids of `xy` and `r` are ids of `part.graph`; the returned matching is
    /// in base ids of `part` and includes everything `part` committed.
    pub(crate) fn anchor(&self, part: &Reduced, xy: Edge, r: Vertex, ctx: &mut Context) -> AnchorResult {
        ctx.stats.anchors_tried += 1;
        let anchor = part.base_edge(xy);
        ctx.log(Rule::Anchor, Some(anchor), Detail::vertices(vec![part.base(r)]));
        let start = Instant::now();
        let reduced = self.reduce(part, xy, r, anchor, ctx);
        ctx.stats.timings.decomposition += start.elapsed();
        let Some((cur, d)) = reduced else {
            return AnchorResult::Failed;
        };
        self.finish(&cur, &d, anchor, ctx)
    }

    /// Colors the anchor neighborhood and applies forcing rules until none
    /// fires. Returns the reduced instance with its decomposition.
    fn reduce(
        &self,
        part: &Reduced,
        xy: Edge,
        r: Vertex,
        anchor: Edge,
        ctx: &mut Context,
    ) -> Option<(Reduced, LevelDecomposition)> {
        let fail = |ctx: &mut Context, c: Contradiction| {
            ctx.log(Rule::AnchorFailed, Some(anchor), c.reason.to_string());
            None
        };
        let d = match decompose(&part.graph, &part.coloring, xy, r) {
            Ok(d) => d,
            Err(c) => return fail(ctx, c),
        };
        let mut paint = vec![(d.x, Color::Black), (d.y, Color::Black)];
        paint.extend(d.level(1).iter().map(|&v| (v, Color::White)));
        paint.extend(d.level(2).iter().map(|&v| (v, Color::Black)));
        let mut cur = match part.paint(&paint) {
            Ok(c) => c,
            Err(c) => return fail(ctx, c),
        };
        let (xb, yb, rb) = (anchor.u(), anchor.v(), part.base(r));
        'rounds: loop {
            let id = |b: Vertex| cur.current(b).expect("anchor vertices are never removed");
            let d = match decompose(&cur.graph, &cur.coloring, Edge::new(id(xb), id(yb)), id(rb)) {
                Ok(d) => d,
                Err(c) => return fail(ctx, c),
            };
            for rule in RULES {
                match rule(&cur, &d) {
                    Ok(Some((next, applied, detail))) => {
                        ctx.log(applied, Some(anchor), detail);
                        cur = next;
                        continue 'rounds;
                    }
                    Ok(None) => {}
                    Err(c) => return fail(ctx, c),
                }
            }
            return Some((cur, d));
        }
    }

    fn finish(&self, cur: &Reduced, d: &LevelDecomposition, anchor: Edge, ctx: &mut Context) -> AnchorResult {
        let g = &cur.graph;
        let checks = self.options.structural_checks;
        let start = Instant::now();
        let tasks = component_tasks(g, d);
        let mut fixed: Vec<ComponentColoring> = Vec::new();
        let mut family: Vec<Vec<ComponentColoring>> = Vec::new();
        for task in &tasks {
            let (colorings, unforced) = color_component(g, &cur.coloring, d, task);
            ctx.stats.unforced_branches += unforced;
            ctx.stats.x_colorings += colorings.len();
            if colorings.is_empty() {
                let at = cur.base(d.s2[task.first()]);
                let detail = Detail { vertices: vec![at], note: "component has no coloring".into(), ..Default::default() };
                ctx.log(Rule::AnchorFailed, Some(anchor), detail);
                return AnchorResult::Failed;
            }
            if !task.is_trivial() {
                let detail = Detail {
                    vertices: vec![cur.base(d.s2[task.first()])],
                    note: format!("{} colorings", colorings.len()),
                    ..Default::default()
                };
                ctx.log(Rule::ComponentColoring, Some(anchor), detail);
            }
            if task.contacts_n4 && colorings.len() > 1 {
                family.push(colorings);
            } else if self.options.minimize {
                let best = colorings.into_iter().min_by(|a, b| a.weight.total_cmp(&b.weight)).unwrap();
                fixed.push(best);
            } else {
                fixed.push(colorings.into_iter().next().unwrap());
            }
        }
        ctx.stats.max_interacting = ctx.stats.max_interacting.max(family.len());
        if family.len() > MAX_INTERACTING {
            if let Some(w) = pattern::find_induced_sijk(g, 1, 2, 4) {
                ctx.log(Rule::InteractingFamily, Some(anchor), format!("{} components", family.len()));
                return AnchorResult::Violation(w.map(|v| cur.base(v)));
            }
            ctx.stats.interacting_bound_violations += 1;
        }
        let combos: usize = family.iter().map(Vec::len).fold(1, usize::saturating_mul);
        if checks && combos > d.max_t().max(1).saturating_pow(MAX_INTERACTING as u32) {
            ctx.stats.enumeration_bound_violations += 1;
        }
        if !family.is_empty() {
            ctx.log(Rule::InteractingFamily, Some(anchor), format!("{} components, {combos} combinations", family.len()));
        }
        ctx.stats.timings.x_enumeration += start.elapsed();

        let start = Instant::now();
        let result = self.solve_y(cur, d, &fixed, &family, anchor, ctx);
        ctx.stats.timings.y_solve += start.elapsed();
        let Some((mut matching, weight)) = result else {
            ctx.log(Rule::AnchorFailed, Some(anchor), "no completion of the levels beyond N_3");
            return AnchorResult::Failed;
        };
        if checks {
            self.structural_checks(cur, d, &matching, ctx);
        }
        let weight = weight + cur.committed_weight + g.weight(d.anchor());
        let mut out = cur.committed.clone();
        out.push(anchor);
        out.extend(matching.drain(..).map(|e| cur.base_edge(e)));
        out.sort_unstable();
        AnchorResult::Found(out, weight)
    }

    /// Tries the joint colorings of the interacting components and solves
    /// the rest of the graph for each. Returned edges are in current ids and
    /// exclude the anchor and committed edges.
    fn solve_y(
        &self,
        cur: &Reduced,
        d: &LevelDecomposition,
        fixed: &[ComponentColoring],
        family: &[Vec<ComponentColoring>],
        anchor: Edge,
        ctx: &mut Context,
    ) -> Option<(Vec<Edge>, f64)> {
        let g = &cur.graph;
        let minimize = self.options.minimize;
        let sub = self.sub_solver();

        let mut base_edges: Vec<Edge> = fixed.iter().flat_map(|c| c.edges.iter().copied()).collect();
        let mut base_weight: f64 = fixed.iter().map(|c| c.weight).sum();

        let detached = g.induced_subgraph(&d.detached);
        for comp in detached.graph.connected_components() {
            let piece = detached.graph.induced_subgraph(&comp);
            let origin: Vec<Vertex> = piece.origin.iter().map(|&v| detached.origin[v]).collect();
            let coloring = cur.coloring.restrict(&origin);
            ctx.stats.y_calls += 1;
            let (edges, w) = sub.solve(&piece.graph, &coloring, minimize)?;
            base_edges.extend(edges.iter().map(|e| e.map(|v| origin[v])));
            base_weight += w;
        }
        if !d.detached.is_empty() {
            ctx.log(Rule::YSolve, Some(anchor), format!("{} detached vertices", d.detached.len()));
        }

        let y = d.y_part();
        let y_sub = g.induced_subgraph(&y);
        let pieces: Vec<(Graph, Vec<Vertex>)> = y_sub
            .graph
            .connected_components()
            .into_iter()
            .map(|comp| {
                let piece = y_sub.graph.induced_subgraph(&comp);
                let origin = piece.origin.iter().map(|&v| y_sub.origin[v]).collect();
                (piece.graph, origin)
            })
            .collect();

        // Black vertices of N_3 fixed by the components outside the family.
        let mut n3_color: Vec<Color> = vec![Color::Unset; g.n()];
        for ti in &d.t {
            for &t in ti {
                n3_color[t] = Color::White;
            }
        }
        for c in fixed {
            for &t in &c.black {
                n3_color[t] = Color::Black;
            }
        }

        let mut memo: HashMap<(usize, Vec<Color>), Option<(Vec<Edge>, f64)>> = HashMap::new();
        let mut best: Option<(Vec<Edge>, f64)> = None;
        let mut pick = vec![0usize; family.len()];
        'combos: loop {
            let mut colors = n3_color.clone();
            let mut edges = base_edges.clone();
            let mut weight = base_weight;
            for (k, &p) in pick.iter().enumerate() {
                let c = &family[k][p];
                for &t in &c.black {
                    colors[t] = Color::Black;
                }
                edges.extend(c.edges.iter().copied());
                weight += c.weight;
            }
            let mut ok = true;
            for (idx, (piece, origin)) in pieces.iter().enumerate() {
                let Some(local) = derive_n4(g, d, &cur.coloring, &colors, origin) else {
                    ok = false;
                    break;
                };
                let key = (idx, local.state.clone());
                let solved = match memo.get(&key) {
                    Some(hit) => {
                        ctx.stats.y_cache_hits += 1;
                        hit.clone()
                    }
                    None => {
                        ctx.stats.y_calls += 1;
                        let s = sub.solve(piece, &local, minimize);
                        memo.insert(key, s.clone());
                        s
                    }
                };
                match solved {
                    Some((es, w)) => {
                        edges.extend(es.iter().map(|e| e.map(|v| origin[v])));
                        weight += w;
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let better = best.as_ref().is_none_or(|(_, bw)| weight < *bw);
                if better {
                    best = Some((edges, weight));
                }
                if !minimize {
                    break 'combos;
                }
            }
            // next combination
            let mut k = 0;
            loop {
                if k == pick.len() {
                    break 'combos;
                }
                pick[k] += 1;
                if pick[k] < family[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
        if !pieces.is_empty() {
            ctx.log(Rule::YSolve, Some(anchor), format!("{} components beyond N_3", pieces.len()));
        }
        best
    }

    fn structural_checks(&self, cur: &Reduced, d: &LevelDecomposition, matching: &[Edge], ctx: &mut Context) {
        let g = &cur.graph;
        let y = d.y_part();
        if ctx.input_s124_free || ctx.input_s114_free {
            let gy = g.induced_subgraph(&y).graph;
            if ctx.input_s124_free && pattern::find_induced_sijk(&gy, 1, 2, 2).is_some() {
                ctx.stats.y_s122_violations += 1;
            }
            if ctx.input_s114_free && pattern::find_induced_sijk(&gy, 1, 1, 1).is_some() {
                ctx.stats.y_claw_violations += 1;
            }
        }
        for &v in d.levels.iter().skip(3).flatten() {
            if !ends_descending_p5(g, d, v) {
                ctx.stats.p5_endpoint_violations += 1;
            }
        }
        if !is_bipartite(&g.induced_subgraph(d.level(3)).graph) {
            ctx.stats.n3_bipartite_violations += 1;
        }
        for e in matching {
            let (a, b) = (d.level_of[e.u()], d.level_of[e.v()]);
            if matches!((a, b), (Some(3), Some(3)) | (Some(3), Some(4)) | (Some(4), Some(3))) {
                ctx.stats.level_edge_violations += 1;
            }
        }
    }
}

/// Coloring of one component of `G[Y]` with the `N_4` colors implied by
/// the `N_3` colors: a Black `N_3` neighbor makes a vertex White, a White one
/// makes it Black. `None` if both apply or a precolor disagrees.
fn derive_n4(g: &Graph, d: &LevelDecomposition, coloring: &Coloring, n3: &[Color], origin: &[Vertex]) -> Option<Coloring> {
    let mut local = coloring.restrict(origin);
    for (i, &z) in origin.iter().enumerate() {
        if !d.in_level(z, 4) {
            continue;
        }
        for &t in g.neighbors(z) {
            if !d.in_level(t, 3) {
                continue;
            }
            let want = match n3[t] {
                Color::Black => Color::White,
                Color::White => Color::Black,
                Color::Unset => continue,
            };
            local.assign(i, want).ok()?;
        }
    }
    Some(local)
}

/// `v` starts an induced `P5` whose other vertices all lie in lower levels.
fn ends_descending_p5(g: &Graph, d: &LevelDecomposition, v: Vertex) -> bool {
    fn extend(g: &Graph, d: &LevelDecomposition, top: usize, path: &mut Vec<Vertex>) -> bool {
        if path.len() == 5 {
            return true;
        }
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if d.level_of[w].is_none_or(|l| l >= top)
                || path[..path.len() - 1].iter().any(|&p| p == w || g.has_edge(p, w))
            {
                continue;
            }
            path.push(w);
            if extend(g, d, top, path) {
                return true;
            }
            path.pop();
        }
        false
    }
    let top = d.level_of[v].unwrap_or(0);
    extend(g, d, top, &mut vec![v])
}

fn is_bipartite(g: &Graph) -> bool {
    let mut side: Vec<Option<bool>> = vec![None; g.n()];
    for s in g.vertices() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let here = side[v].unwrap();
            for &w in g.neighbors(v) {
                match side[w] {
                    None => {
                        side[w] = Some(!here);
                        stack.push(w);
                    }
                    Some(sw) if sw == here => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n4_colors_follow_n3() {
        // x=0, y=1; 2 in N_1, 3 in N_2, 4 and 5 in N_3, 6 in N_4 seeing both, 7 in N_5
        let g = Graph::from_edges(8, [(0, 1), (0, 2), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6), (6, 7)]).unwrap();
        let c = Coloring::new(8);
        let d = decompose(&g, &c, Edge::new(0, 1), 2).unwrap();
        let origin = [6, 7];
        let mut n3 = vec![Color::Unset; 8];
        n3[4] = Color::White;
        n3[5] = Color::White;
        assert_eq!(derive_n4(&g, &d, &c, &n3, &origin).unwrap().state, vec![Color::Black, Color::Unset]);
        n3[5] = Color::Black;
        assert!(derive_n4(&g, &d, &c, &n3, &origin).is_none());
    }

    #[test]
    fn bipartite_check() {
        assert!(is_bipartite(&Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()));
        assert!(!is_bipartite(&Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap()));
    }
}
