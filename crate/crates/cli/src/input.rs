use std::fs;
use std::path::Path;
use std::sync::Arc;

use ahtk_core::covering::{check_local_isomorphism, CyclicCover, FiniteCover};
use ahtk_core::graph::{build_cycle, build_path, is_graph_hom};
use ahtk_core::io::{parse_graph, parse_label_map, parse_map};
use ahtk_core::{Error, Graph};

pub const USAGE: u8 = 2;
pub const INVALID: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            code: INVALID,
            message: e.to_string(),
        }
    }
}

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: INVALID,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

pub fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure {
        code: INVALID,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn parse_int(text: &str, what: &str) -> Result<i64, Failure> {
    text.parse()
        .map_err(|_| Failure::usage(format!("{what}: expected an integer, got {text:?}")))
}

/// `cycle:<k>`, `path:<n>`, or a graph file.
pub fn load_graph(spec: &str) -> Result<Arc<Graph>, Failure> {
    let graph = if let Some(k) = spec.strip_prefix("cycle:") {
        build_cycle(parse_int(k, "cycle length")?)?
    } else if let Some(n) = spec.strip_prefix("path:") {
        build_path(parse_int(n, "path length")?)?
    } else {
        parse_graph(&read(Path::new(spec))?)?
    };
    Ok(Arc::new(graph))
}

pub enum SpaceSpec {
    Graph(Arc<Graph>),
    Line,
}

pub fn load_space(spec: &str) -> Result<SpaceSpec, Failure> {
    if spec == "line" {
        Ok(SpaceSpec::Line)
    } else {
        Ok(SpaceSpec::Graph(load_graph(spec)?))
    }
}

pub enum CoverSpec {
    Cyclic(CyclicCover),
    Finite(FiniteCover),
}

/// A cover description that may fail the local isomorphism test; `cover
/// check` reports that as a negative answer rather than an error.
pub enum CoverCandidate {
    Cyclic(CyclicCover),
    Finite(FiniteCover),
    NotACover(String),
}

pub fn load_cover_candidate(spec: &str) -> Result<CoverCandidate, Failure> {
    if let Some(k) = spec.strip_prefix("cyclic:") {
        return Ok(CoverCandidate::Cyclic(CyclicCover::new(parse_int(
            k,
            "cycle length",
        )?)?));
    }
    if let Some(rest) = spec.strip_prefix("mod:") {
        let Some((n, k)) = rest.split_once(':') else {
            return Err(Failure::usage("expected mod:<n>:<k>"));
        };
        let (n, k) = (parse_int(n, "cover length")?, parse_int(k, "base length")?);
        return Ok(CoverCandidate::Finite(FiniteCover::modular(n, k)?));
    }
    if let Some(rest) = spec.strip_prefix("map:") {
        let parts: Vec<&str> = rest.split(',').collect();
        let [total, base, map] = parts.as_slice() else {
            return Err(Failure::usage("expected map:<total>,<base>,<map-file>"));
        };
        let (total, base) = (load_graph(total)?, load_graph(base)?);
        let text = read(Path::new(map))?;
        if !is_graph_hom(&parse_label_map(&text)?, &total, &base, false)? {
            return Ok(CoverCandidate::NotACover(
                "the map is not a graph homomorphism".into(),
            ));
        }
        let p = parse_map(&text, &total, &base, false)?;
        if !check_local_isomorphism(&p) {
            return Ok(CoverCandidate::NotACover(
                "the map is not a local isomorphism".into(),
            ));
        }
        return Ok(CoverCandidate::Finite(FiniteCover::new(p)?));
    }
    Err(Failure::usage(format!(
        "unknown cover {spec:?}: expected cyclic:<k>, mod:<n>:<k> or map:<total>,<base>,<map-file>"
    )))
}

pub fn load_cover(spec: &str) -> Result<CoverSpec, Failure> {
    match load_cover_candidate(spec)? {
        CoverCandidate::Cyclic(c) => Ok(CoverSpec::Cyclic(c)),
        CoverCandidate::Finite(c) => Ok(CoverSpec::Finite(c)),
        CoverCandidate::NotACover(why) => {
            Err(Error::Validation(format!("not a covering map: {why}")).into())
        }
    }
}
