//! Plain-text edge lists.
//!
//! ```text
//! # optional comment lines
//! n m
//! u v        (m lines, 0 <= u < v < n)
//! ```

use std::fs;
use std::io::Write;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

pub fn to_edge_list_string(g: &Graph) -> String {
    let mut s = String::with_capacity(16 + g.m() * 12);
    s.push_str(&format!("{} {}\n", g.n(), g.m()));
    for &(u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn write_edge_list(g: &Graph, path: &Path) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(to_edge_list_string(g).as_bytes())
        .map_err(|e| Error::io(path, e))
}

pub fn read_edge_list(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text, &path.display().to_string())
}

/// Parses the edge-list format; `origin` only labels error messages.
pub fn parse_edge_list(text: &str, origin: &str) -> Result<Graph> {
    let err = |line: usize, message: String| Error::Parse {
        path: origin.to_string(),
        line,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hl, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing `n m` header".into()))?;
    let (n, m) = parse_pair(header).ok_or_else(|| err(hl, format!("bad header `{header}`")))?;

    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        let (u, v) =
            parse_pair(line).ok_or_else(|| err(ln, format!("expected `u v`, found `{line}`")))?;
        if u >= v {
            return Err(err(ln, format!("edge `{u} {v}` must satisfy u < v")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(err(
            hl,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n, &edges)
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_ascii_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}
