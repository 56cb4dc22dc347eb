//! Line-oriented text formats.
//!
//! * graph: `v <label>`, `e <label> <label>`, at most one `base <label>`
//! * map: `<src> -> <dst>` per line
//! * path: optional `start=<int>`, then whitespace-separated labels
//! * square: `start=(<int>,<int>)`, then one grid row per line
//! * chains: blocks of the above separated by `---` lines
//!
//! Lines starting with `#` and blank lines are ignored everywhere. Writers
//! emit normalized objects, so `write(read(x))` is stable under a second
//! round trip.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{resolve_label_map, Graph, GraphHom};
use crate::homotopy::{MapHomotopyChain, StableSquare};
use crate::path::{RawPath, StablePath};
use crate::space::Space;

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut vertices: Vec<&str> = Vec::new();
    let mut declared: BTreeSet<&str> = BTreeSet::new();
    let mut edges: Vec<(usize, &str, &str)> = Vec::new();
    let mut base: Option<(usize, &str)> = None;
    for (n, line) in content_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["v", label] => {
                if !declared.insert(label) {
                    return Err(Error::parse(n, format!("vertex {label} declared twice")));
                }
                vertices.push(label);
            }
            ["e", a, b] => {
                if a == b {
                    return Err(Error::parse(n, format!("self-loop at {a}")));
                }
                edges.push((n, a, b));
            }
            ["base", label] => {
                if base.is_some() {
                    return Err(Error::parse(n, "more than one base line"));
                }
                base = Some((n, label));
            }
            _ => return Err(Error::parse(n, format!("unrecognised line {line:?}"))),
        }
    }
    for &(n, a, b) in &edges {
        for x in [a, b] {
            if !declared.contains(x) {
                return Err(Error::parse(
                    n,
                    format!("edge endpoint {x} is not a declared vertex"),
                ));
            }
        }
    }
    if let Some((n, b)) = base {
        if !declared.contains(b) {
            return Err(Error::parse(
                n,
                format!("base {b} is not a declared vertex"),
            ));
        }
    }
    Graph::new(
        vertices,
        edges.iter().map(|&(_, a, b)| (a, b)),
        base.map(|(_, b)| b),
    )
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        out.push_str(&format!("v {}\n", g.label(v)));
    }
    let mut edges: Vec<(&str, &str)> = g.edges().map(|(a, b)| (g.label(a), g.label(b))).collect();
    edges.sort();
    for (a, b) in edges {
        out.push_str(&format!("e {a} {b}\n"));
    }
    if let Some(b) = g.base() {
        out.push_str(&format!("base {}\n", g.label(b)));
    }
    out
}

/// Reads a map file as a raw label table, without checking it against any
/// graph.
pub fn parse_label_map(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (n, line) in content_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [src, "->", dst] = tokens.as_slice() else {
            return Err(Error::parse(
                n,
                format!("expected `<src> -> <dst>`, got {line:?}"),
            ));
        };
        if map.insert(src.to_string(), dst.to_string()).is_some() {
            return Err(Error::parse(n, format!("{src} is mapped twice")));
        }
    }
    Ok(map)
}

pub fn parse_map(
    text: &str,
    source: &Arc<Graph>,
    target: &Arc<Graph>,
    based: bool,
) -> Result<GraphHom> {
    let table = parse_label_map(text)?;
    let map = resolve_label_map(&table, source, target)?;
    GraphHom::new(source.clone(), target.clone(), map, based)
}

pub fn write_map(f: &GraphHom) -> String {
    f.to_label_map()
        .iter()
        .map(|(a, b)| format!("{a} -> {b}\n"))
        .collect()
}

fn parse_start(line: &str, n: usize) -> Result<Option<i64>> {
    match line.strip_prefix("start=") {
        Some(rest) => rest
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::parse(n, format!("bad start value {rest:?}"))),
        None => Ok(None),
    }
}

fn parse_token<S: Space>(space: &S, token: &str, n: usize) -> Result<S::Vertex> {
    space
        .parse_vertex(token)
        .ok_or_else(|| Error::parse(n, format!("unknown vertex {token}")))
}

/// Reads a path file without normalizing it.
pub fn parse_raw_path<S: Space>(space: &S, text: &str) -> Result<RawPath<S::Vertex>> {
    let mut offset = 0;
    let mut seq = Vec::new();
    for (idx, (n, line)) in content_lines(text).enumerate() {
        if idx == 0 {
            if let Some(start) = parse_start(line, n)? {
                offset = start;
                continue;
            }
        } else if line.starts_with("start=") {
            return Err(Error::parse(n, "start= must be the first line"));
        }
        for token in line.split_whitespace() {
            seq.push(parse_token(space, token, n)?);
        }
    }
    if seq.is_empty() {
        return Err(Error::parse(1, "path has no vertices"));
    }
    RawPath::new(space, offset, seq)
}

pub fn parse_path<S: Space>(space: &S, text: &str) -> Result<StablePath<S::Vertex>> {
    Ok(parse_raw_path(space, text)?.normalize())
}

pub fn write_raw_path<S: Space>(space: &S, p: &RawPath<S::Vertex>) -> String {
    let labels: Vec<String> = p.seq().iter().map(|v| space.label_of(v)).collect();
    format!("start={}\n{}\n", p.offset(), labels.join(" "))
}

pub fn write_path<S: Space>(space: &S, p: &StablePath<S::Vertex>) -> String {
    write_raw_path(space, &p.to_raw())
}

pub fn parse_square<S: Space>(space: &S, text: &str) -> Result<StableSquare<S::Vertex>> {
    let mut lines = content_lines(text);
    let Some((n, header)) = lines.next() else {
        return Err(Error::parse(1, "empty square file"));
    };
    let coords = header
        .strip_prefix("start=(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|r| r.split_once(','))
        .and_then(|(a, b)| Some((a.trim().parse::<i64>().ok()?, b.trim().parse::<i64>().ok()?)));
    let Some((o1, o2)) = coords else {
        return Err(Error::parse(
            n,
            format!("expected `start=(<int>,<int>)`, got {header:?}"),
        ));
    };
    let mut grid: Vec<Vec<S::Vertex>> = Vec::new();
    for (n, line) in lines {
        let row = line
            .split_whitespace()
            .map(|t| parse_token(space, t, n))
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = grid.first() {
            if first.len() != row.len() {
                return Err(Error::parse(
                    n,
                    format!("row has {} entries, expected {}", row.len(), first.len()),
                ));
            }
        }
        grid.push(row);
    }
    if grid.is_empty() {
        return Err(Error::parse(n, "square has no rows"));
    }
    StableSquare::new(space, o1, o2, grid)
}

pub fn write_square<S: Space>(space: &S, h: &StableSquare<S::Vertex>) -> String {
    let mut out = format!("start=({},{})\n", h.offset1(), h.offset2());
    for row in h.grid() {
        let labels: Vec<String> = row.iter().map(|v| space.label_of(v)).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

/// Splits on `---` lines, keeping the 1-based line number where each block
/// starts so nested parse errors can be rebased.
fn blocks(text: &str) -> Vec<(usize, String)> {
    let mut out = vec![(0usize, String::new())];
    for (i, line) in text.lines().enumerate() {
        if line.trim() == "---" {
            out.push((i + 1, String::new()));
        } else {
            let block = &mut out.last_mut().unwrap().1;
            block.push_str(line);
            block.push('\n');
        }
    }
    out
}

fn rebase(e: Error, first_line: usize) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse {
            line: line + first_line,
            message,
        },
        other => other,
    }
}

pub fn parse_square_chain<S: Space>(space: &S, text: &str) -> Result<Vec<StableSquare<S::Vertex>>> {
    blocks(text)
        .into_iter()
        .map(|(first, block)| parse_square(space, &block).map_err(|e| rebase(e, first)))
        .collect()
}

pub fn write_square_chain<S: Space>(space: &S, squares: &[StableSquare<S::Vertex>]) -> String {
    squares
        .iter()
        .map(|h| write_square(space, h))
        .collect::<Vec<_>>()
        .join("---\n")
}

pub fn parse_map_chain(
    text: &str,
    source: &Arc<Graph>,
    target: &Arc<Graph>,
    based: bool,
) -> Result<MapHomotopyChain> {
    let frames = blocks(text)
        .into_iter()
        .map(|(first, block)| {
            parse_map(&block, source, target, based).map_err(|e| rebase(e, first))
        })
        .collect::<Result<Vec<_>>>()?;
    let chain = MapHomotopyChain { frames, based };
    if !chain.validate()? {
        return Err(Error::validation(
            "consecutive frames are not one-step homotopic",
        ));
    }
    Ok(chain)
}

pub fn write_map_chain(chain: &MapHomotopyChain) -> String {
    chain
        .frames
        .iter()
        .map(write_map)
        .collect::<Vec<_>>()
        .join("---\n")
}
