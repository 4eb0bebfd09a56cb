//! Named pattern graphs and textual graph input.
//!
//! Builtins: `path_k`, `star_k` (k leaves), `cycle_k`, `clique_k`, `k2t_t`,
//! `k2rpq_p_q_r`, `spider_l_len` (l legs of len edges), `empty_k`,
//! `multipartite_a_b_...`, `petersen`. Anything else is read as graph6, or
//! as an edge-list file when prefixed with `@`.

use std::fs;
use std::path::Path;

use crate::constructions::build_k2rpq;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

fn numbers(parts: &[&str], name: &str) -> Result<Vec<usize>> {
    parts
        .iter()
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad parameter {p:?} in {name:?}")))
        })
        .collect()
}

/// Spider with `legs` legs of `len` edges each; the center is vertex 0.
pub fn spider(legs: usize, len: usize) -> Graph {
    let mut edges = Vec::with_capacity(legs * len);
    let mut next = 1;
    for _ in 0..legs {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::new(next, edges).expect("spider edges are valid")
}

pub fn builtin(name: &str) -> Result<Option<Graph>> {
    let parts: Vec<&str> = name.split('_').collect();
    let (head, rest) = parts.split_first().expect("split yields one part");
    let args = || numbers(rest, name);
    let arity = |k: usize| -> Result<Vec<usize>> {
        let a = args()?;
        if a.len() != k {
            return Err(Error::InvalidArgument(format!(
                "{head} takes {k} parameter(s), got {name:?}"
            )));
        }
        Ok(a)
    };
    let g = match *head {
        "path" => Graph::path(arity(1)?[0]),
        "star" => Graph::star(arity(1)?[0]),
        "cycle" => Graph::cycle(arity(1)?[0])?,
        "clique" => Graph::complete(arity(1)?[0]),
        "empty" => Graph::empty(arity(1)?[0]),
        "k2t" => Graph::complete_multipartite(&[2, arity(1)?[0]])?,
        "k2rpq" => {
            let a = arity(3)?;
            build_k2rpq(a[0], a[1], a[2])?
        }
        "spider" => {
            let a = arity(2)?;
            spider(a[0], a[1])
        }
        "multipartite" => Graph::complete_multipartite(&args()?)?,
        "petersen" if rest.is_empty() => Graph::petersen(),
        _ => return Ok(None),
    };
    Ok(Some(g))
}

/// Edge list text: one `u v` pair per line, zero-based. Blank lines and
/// `#` comments are skipped, except `# order N` which fixes the order
/// (otherwise it is one more than the largest endpoint).
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut order = None;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(comment) = line.strip_prefix('#') {
            let words: Vec<&str> = comment.split_whitespace().collect();
            if let ["order", n] = words.as_slice() {
                order = Some(n.parse::<usize>().map_err(|_| {
                    Error::InvalidArgument(format!("line {}: bad order {n:?}", lineno + 1))
                })?);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let pair = match fields.as_slice() {
            [u, v] => u.parse::<usize>().ok().zip(v.parse::<usize>().ok()),
            _ => None,
        };
        let (u, v) = pair.ok_or_else(|| {
            Error::InvalidArgument(format!("line {}: expected \"u v\", got {line:?}", lineno + 1))
        })?;
        edges.push((u, v));
    }
    let inferred = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Graph::new(order.unwrap_or(inferred), edges)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("# order {}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Resolves a command-line graph argument: builtin name, `@file` edge list,
/// or graph6 string.
pub fn resolve(spec: &str) -> Result<Graph> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = fs::read_to_string(Path::new(path))?;
        return parse_edge_list(&text);
    }
    if let Some(g) = builtin(spec)? {
        return Ok(g);
    }
    graph6::decode(spec.trim_end())
}
