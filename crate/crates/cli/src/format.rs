//! Edge-list text format.
//!
//! ```text
//! c comment
//! p edge <n> <m>
//! e <u> <v> [weight]
//! m <u> <v>
//! ```
//!
//! Vertices are numbered from 1 in files and from 0 in memory. `m` lines
//! list matching edges and appear in matching files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use dim_core::{Edge, Graph};

#[derive(Debug, Default)]
pub struct Parsed {
    pub graph: Option<Graph>,
    pub matching: Vec<Edge>,
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text)
        .with_context(|| format!("parsing {}", path.display()))?
        .graph
        .with_context(|| format!("{} has no `p edge` header", path.display()))
}

fn vertex(tok: Option<&str>, n: usize, line: usize) -> Result<usize> {
    let tok = tok.with_context(|| format!("line {line}: missing vertex"))?;
    let v: usize = tok.parse().with_context(|| format!("line {line}: bad vertex {tok:?}"))?;
    if v == 0 || v > n {
        bail!("line {line}: vertex {v} outside 1..={n}");
    }
    Ok(v - 1)
}

pub fn parse(text: &str) -> Result<Parsed> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize, Option<f64>)> = Vec::new();
    let mut matching = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    bail!("line {line}: second `p` line");
                }
                if toks.next() != Some("edge") {
                    bail!("line {line}: expected `p edge <n> <m>`");
                }
                let n = toks.next().and_then(|t| t.parse().ok()).with_context(|| format!("line {line}: bad n"))?;
                let m = toks.next().and_then(|t| t.parse().ok()).with_context(|| format!("line {line}: bad m"))?;
                header = Some((n, m));
            }
            "e" | "m" => {
                let (n, _) = header.with_context(|| format!("line {line}: `{kind}` before `p edge` header"))?;
                let u = vertex(toks.next(), n, line)?;
                let v = vertex(toks.next(), n, line)?;
                if u == v {
                    bail!("line {line}: self-loop at {}", u + 1);
                }
                if kind == "m" {
                    matching.push(Edge::new(u, v));
                } else {
                    let w = match toks.next() {
                        Some(t) => Some(t.parse::<f64>().with_context(|| format!("line {line}: bad weight {t:?}"))?),
                        None => None,
                    };
                    edges.push((u, v, w));
                }
            }
            other => bail!("line {line}: unknown line type {other:?}"),
        }
        if let Some(extra) = toks.next() {
            bail!("line {line}: unexpected token {extra:?}");
        }
    }
    let graph = match header {
        None => None,
        Some((n, m)) => {
            if edges.len() != m {
                bail!("header declares {m} edges but {} were given", edges.len());
            }
            let g = Graph::from_edges(n, edges.iter().map(|&(u, v, _)| (u, v)))?;
            if edges.iter().any(|e| e.2.is_some()) {
                let weights: BTreeMap<Edge, f64> =
                    edges.iter().map(|&(u, v, w)| (Edge::new(u, v), w.unwrap_or(1.0))).collect();
                Some(g.with_weights(weights)?)
            } else {
                Some(g)
            }
        }
    };
    Ok(Parsed { graph, matching })
}

/// Matching edges from a file of `m` lines, or from the `matching` field of
/// a JSON report.
pub fn read_matching(path: &Path) -> Result<Vec<Edge>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.trim_start().starts_with('{') {
        let report: serde_json::Value = serde_json::from_str(&text).context("parsing JSON report")?;
        let list = report.get("matching").and_then(|m| m.as_array()).context("report has no matching")?;
        return list
            .iter()
            .map(|pair| {
                let ends: Vec<usize> = pair
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .and_then(|a| a.iter().map(|x| x.as_u64().map(|x| x as usize)).collect())
                    .context("matching entries must be [u, v] pairs")?;
                if ends.contains(&0) || ends[0] == ends[1] {
                    bail!("bad matching entry {pair}");
                }
                Ok(Edge::new(ends[0] - 1, ends[1] - 1))
            })
            .collect();
    }
    if text.lines().any(|l| l.split_whitespace().next() == Some("p")) {
        return Ok(parse(&text).with_context(|| format!("parsing {}", path.display()))?.matching);
    }
    let mut matching = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("m") => {
                let u = vertex(toks.next(), usize::MAX, idx + 1)?;
                let v = vertex(toks.next(), usize::MAX, idx + 1)?;
                if u == v {
                    bail!("line {}: self-loop", idx + 1);
                }
                matching.push(Edge::new(u, v));
            }
            Some(other) => bail!("line {}: unknown line type {other:?}", idx + 1),
        }
    }
    Ok(matching)
}

pub fn write_graph(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "c {c}").unwrap();
    }
    writeln!(out, "p edge {} {}", g.n(), g.m()).unwrap();
    for e in g.edges() {
        if g.is_weighted() {
            writeln!(out, "e {} {} {}", e.u() + 1, e.v() + 1, g.weight(e)).unwrap();
        } else {
            writeln!(out, "e {} {}", e.u() + 1, e.v() + 1).unwrap();
        }
    }
    out
}

pub fn write_matching(m: &[Edge]) -> String {
    m.iter().map(|e| format!("m {} {}\n", e.u() + 1, e.v() + 1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "c diamond\np edge 4 5\ne 1 2\ne 2 3\ne 4 1\ne 4 2 2.5\ne 4 3\n";
        let g = parse(text).unwrap().graph.unwrap();
        assert_eq!((g.n(), g.m()), (4, 5));
        assert_eq!(g.weight(Edge::new(1, 3)), 2.5);
        assert_eq!(g.weight(Edge::new(0, 1)), 1.0);
        let again = parse(&write_graph(&g, &[])).unwrap().graph.unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "e 1 2\n",
            "p edge 2 1\ne 1 3\n",
            "p edge 2 1\ne 1 1\n",
            "p edge 2 2\ne 1 2\n",
            "p edge 2 1\ne 1 2 x\n",
            "p edge 2 1\nq 1 2\n",
            "p edge 3 2\ne 1 2\ne 2 1\n",
            "p edge 2 1\ne 1 2 1 9\n",
        ] {
            assert!(parse(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn matching_lines() {
        let p = parse("p edge 3 2\ne 1 2\ne 2 3\nm 1 2\n").unwrap();
        assert_eq!(p.matching, vec![Edge::new(0, 1)]);
        assert_eq!(write_matching(&p.matching), "m 1 2\n");
    }
}
