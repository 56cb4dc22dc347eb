//! Finite simple graphs and graph homomorphisms.
//!
//! Vertices are stored in lexicographic order of their labels, so a
//! [`VertexId`] compares the same way its label does. Homomorphisms use the
//! reflexive edge condition: adjacent vertices map to adjacent or equal
//! vertices.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::Space;

/// Index of a vertex inside one [`Graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(i: usize) -> Self {
        VertexId(u32::try_from(i).expect("vertex count exceeds u32"))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    lookup: HashMap<String, VertexId>,
    adjacency: Vec<Vec<VertexId>>,
    edge_count: usize,
    base: Option<VertexId>,
}

pub(crate) fn check_label(label: &str) -> Result<()> {
    if label.is_empty() {
        return Err(Error::validation("vertex label must be non-empty"));
    }
    if label.chars().any(|c| c.is_whitespace() || c.is_control()) {
        return Err(Error::validation(format!(
            "vertex label {label:?} contains whitespace or control characters"
        )));
    }
    Ok(())
}

impl Graph {
    /// Builds a graph from labelled vertices and edges.
    ///
    /// Duplicate edges collapse; self-loops, duplicate labels and dangling
    /// endpoints are rejected.
    pub fn new<V, E, S>(vertices: V, edges: E, base: Option<&str>) -> Result<Graph>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut labels: Vec<String> = Vec::new();
        for v in vertices {
            let v = v.as_ref();
            check_label(v)?;
            labels.push(v.to_owned());
        }
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::validation(format!(
                "duplicate vertex label {}",
                w[0]
            )));
        }
        let lookup: HashMap<String, VertexId> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), VertexId::from_index(i)))
            .collect();

        let mut adjacency: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); labels.len()];
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *lookup
                .get(a)
                .ok_or_else(|| Error::validation(format!("edge endpoint {a} is not a vertex")))?;
            let ib = *lookup
                .get(b)
                .ok_or_else(|| Error::validation(format!("edge endpoint {b} is not a vertex")))?;
            if ia == ib {
                return Err(Error::validation(format!("self-loop at {a}")));
            }
            adjacency[ia.index()].insert(ib);
            adjacency[ib.index()].insert(ia);
        }
        let base = match base {
            Some(b) => Some(
                *lookup
                    .get(b)
                    .ok_or_else(|| Error::validation(format!("base {b} is not a vertex")))?,
            ),
            None => None,
        };
        let adjacency: Vec<Vec<VertexId>> = adjacency
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph {
            labels,
            lookup,
            adjacency,
            edge_count,
            base,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + Clone {
        (0..self.labels.len()).map(VertexId::from_index)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| {
            self.adjacency[u.index()]
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| (u, v))
        })
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.index()]
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.lookup.get(label).copied()
    }

    pub fn require_vertex(&self, label: &str) -> Result<VertexId> {
        self.vertex(label)
            .ok_or_else(|| Error::validation(format!("unknown vertex {label}")))
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        v.index() < self.labels.len()
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::validation(format!(
                "unknown vertex id {}",
                v.index()
            )))
        }
    }

    /// Open neighbourhood, sorted.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.index()].len()
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u.index()].binary_search(&v).is_ok()
    }

    pub fn base(&self) -> Option<VertexId> {
        self.base
    }

    pub fn require_base(&self) -> Result<VertexId> {
        self.base
            .ok_or_else(|| Error::validation("graph has no base vertex"))
    }

    pub fn with_base(&self, base: Option<VertexId>) -> Result<Graph> {
        if let Some(b) = base {
            self.check_vertex(b)?;
        }
        Ok(Graph {
            base,
            ..self.clone()
        })
    }

    /// Breadth-first distances from `v`; `None` for unreachable vertices.
    pub fn distances_from(&self, v: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[v.index()] = Some(0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u.index()].unwrap();
            for &w in self.neighbors(u) {
                if dist[w.index()].is_none() {
                    dist[w.index()] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<(&str, &str)> = self
            .edges()
            .map(|(u, v)| (self.label(u), self.label(v)))
            .collect();
        f.debug_struct("Graph")
            .field("vertices", &self.labels)
            .field("edges", &edges)
            .field("base", &self.base.map(|b| self.label(b)))
            .finish()
    }
}

impl Space for Graph {
    type Vertex = VertexId;

    fn contains(&self, v: &VertexId) -> bool {
        self.has_vertex(*v)
    }

    fn is_adjacent(&self, a: &VertexId, b: &VertexId) -> bool {
        self.adjacent(*a, *b)
    }

    fn label_of(&self, v: &VertexId) -> String {
        self.label(*v).to_owned()
    }

    fn parse_vertex(&self, token: &str) -> Option<VertexId> {
        self.vertex(token)
    }
}

/// Label of vertex `i` of a cycle.
pub fn cycle_label(i: u64) -> String {
    format!("[{i}]")
}

/// The cycle `C_k` on `[0] .. [k-1]`, based at `[0]`.
pub fn build_cycle(k: i64) -> Result<Graph> {
    if k < 3 {
        return Err(Error::validation(format!(
            "cycle length must be at least 3, got {k}"
        )));
    }
    let k = k as u64;
    let vertices: Vec<String> = (0..k).map(cycle_label).collect();
    let edges: Vec<(String, String)> = (0..k)
        .map(|i| (cycle_label(i), cycle_label((i + 1) % k)))
        .collect();
    Graph::new(vertices, edges, Some("[0]"))
}

/// The path `I_n` on `0 .. n`, based at `0`.
pub fn build_path(n: i64) -> Result<Graph> {
    if n < 0 {
        return Err(Error::validation(format!(
            "path length must be non-negative, got {n}"
        )));
    }
    let vertices: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let edges: Vec<(String, String)> = (0..n)
        .map(|i| (i.to_string(), (i + 1).to_string()))
        .collect();
    Graph::new(vertices, edges, Some("0"))
}

/// Label of the product vertex `(a, b)`.
pub fn pair_label(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// Cartesian (box) product `g1 □ g2`.
pub fn cartesian_product(g1: &Graph, g2: &Graph) -> Graph {
    let mut vertices = Vec::with_capacity(g1.vertex_count() * g2.vertex_count());
    for a in g1.vertices() {
        for b in g2.vertices() {
            vertices.push(pair_label(g1.label(a), g2.label(b)));
        }
    }
    let mut edges = Vec::new();
    for a in g1.vertices() {
        for (u, v) in g2.edges() {
            edges.push((
                pair_label(g1.label(a), g2.label(u)),
                pair_label(g1.label(a), g2.label(v)),
            ));
        }
    }
    for (u, v) in g1.edges() {
        for b in g2.vertices() {
            edges.push((
                pair_label(g1.label(u), g2.label(b)),
                pair_label(g1.label(v), g2.label(b)),
            ));
        }
    }
    let base = match (g1.base(), g2.base()) {
        (Some(a), Some(b)) => Some(pair_label(g1.label(a), g2.label(b))),
        _ => None,
    };
    Graph::new(vertices, edges, base.as_deref()).expect("product of valid graphs is valid")
}

/// `N[v]`: the neighbours of `v` together with `v`.
pub fn closed_neighborhood(g: &Graph, v: VertexId) -> Result<BTreeSet<VertexId>> {
    g.check_vertex(v)?;
    let mut out: BTreeSet<VertexId> = g.neighbors(v).iter().copied().collect();
    out.insert(v);
    Ok(out)
}

/// The star `N_x`: vertex set `N[x]`, keeping only the edges at `x`.
pub fn star_subgraph(g: &Graph, x: VertexId) -> Result<Graph> {
    let hood = closed_neighborhood(g, x)?;
    let vertices: Vec<&str> = hood.iter().map(|&v| g.label(v)).collect();
    let edges: Vec<(&str, &str)> = g
        .neighbors(x)
        .iter()
        .map(|&v| (g.label(x), g.label(v)))
        .collect();
    Graph::new(vertices, edges, Some(g.label(x)))
}

/// Checks a label-level candidate map against the homomorphism conditions.
///
/// Errors when the candidate is not total on `g1`, names a vertex outside
/// `g1`, or maps to a label `g2` does not have.
pub fn is_graph_hom(
    candidate: &BTreeMap<String, String>,
    g1: &Graph,
    g2: &Graph,
    based: bool,
) -> Result<bool> {
    let map = resolve_label_map(candidate, g1, g2)?;
    Ok(hom_condition_holds(&map, g1, g2, based))
}

pub(crate) fn resolve_label_map(
    candidate: &BTreeMap<String, String>,
    g1: &Graph,
    g2: &Graph,
) -> Result<Vec<VertexId>> {
    for src in candidate.keys() {
        g1.require_vertex(src)?;
    }
    g1.vertices()
        .map(|v| {
            let dst = candidate.get(g1.label(v)).ok_or_else(|| {
                Error::validation(format!("map is not defined on vertex {}", g1.label(v)))
            })?;
            g2.require_vertex(dst)
        })
        .collect()
}

fn hom_condition_holds(map: &[VertexId], g1: &Graph, g2: &Graph, based: bool) -> bool {
    let edges_ok = g1
        .edges()
        .all(|(u, v)| g2.equal_or_adjacent(&map[u.index()], &map[v.index()]));
    let base_ok = !based
        || match (g1.base(), g2.base()) {
            (Some(b1), Some(b2)) => map[b1.index()] == b2,
            _ => false,
        };
    edges_ok && base_ok
}

/// A validated graph homomorphism.
#[derive(Clone, PartialEq, Eq)]
pub struct GraphHom {
    source: Arc<Graph>,
    target: Arc<Graph>,
    map: Vec<VertexId>,
    based: bool,
}

impl GraphHom {
    pub fn new(
        source: Arc<Graph>,
        target: Arc<Graph>,
        map: Vec<VertexId>,
        based: bool,
    ) -> Result<GraphHom> {
        if map.len() != source.vertex_count() {
            return Err(Error::validation(format!(
                "map has {} images for {} source vertices",
                map.len(),
                source.vertex_count()
            )));
        }
        for &w in &map {
            target.check_vertex(w)?;
        }
        if based && (source.base().is_none() || target.base().is_none()) {
            return Err(Error::validation(
                "based map requires base vertices on both graphs",
            ));
        }
        if !hom_condition_holds(&map, &source, &target, based) {
            return Err(Error::validation(if based {
                "map is not a based graph homomorphism"
            } else {
                "map is not a graph homomorphism"
            }));
        }
        Ok(GraphHom {
            source,
            target,
            map,
            based,
        })
    }

    pub fn from_labels(
        source: Arc<Graph>,
        target: Arc<Graph>,
        candidate: &BTreeMap<String, String>,
        based: bool,
    ) -> Result<GraphHom> {
        let map = resolve_label_map(candidate, &source, &target)?;
        GraphHom::new(source, target, map, based)
    }

    pub fn identity(g: Arc<Graph>) -> GraphHom {
        let map = g.vertices().collect();
        let based = g.base().is_some();
        GraphHom {
            source: g.clone(),
            target: g,
            map,
            based,
        }
    }

    /// The constant map at `v`; based exactly when `v` is the target base
    /// and the source has a base.
    pub fn constant(source: Arc<Graph>, target: Arc<Graph>, v: VertexId) -> Result<GraphHom> {
        target.check_vertex(v)?;
        let based = source.base().is_some() && target.base() == Some(v);
        let map = vec![v; source.vertex_count()];
        Ok(GraphHom {
            source,
            target,
            map,
            based,
        })
    }

    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Graph> {
        &self.target
    }

    pub fn is_based(&self) -> bool {
        self.based
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.map[v.index()]
    }

    pub fn images(&self) -> &[VertexId] {
        &self.map
    }

    pub fn image_size(&self) -> usize {
        self.map.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn is_constant(&self) -> bool {
        self.map.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_onto(&self) -> bool {
        self.image_size() == self.target.vertex_count()
    }

    /// Drops the base-point requirement.
    pub fn unbased(&self) -> GraphHom {
        GraphHom {
            based: false,
            ..self.clone()
        }
    }

    /// Label-level view, keyed by source label.
    pub fn to_label_map(&self) -> BTreeMap<String, String> {
        self.source
            .vertices()
            .map(|v| {
                (
                    self.source.label(v).to_owned(),
                    self.target.label(self.apply(v)).to_owned(),
                )
            })
            .collect()
    }
}

impl fmt::Debug for GraphHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphHom")
            .field("map", &self.to_label_map())
            .field("based", &self.based)
            .finish()
    }
}

pub(crate) fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// `g ∘ f`: apply `f`, then `g`. Based iff both are.
pub fn compose_hom(f: &GraphHom, g: &GraphHom) -> Result<GraphHom> {
    if !same_graph(&f.target, &g.source) {
        return Err(Error::validation(
            "cannot compose: target of the first map is not the source of the second",
        ));
    }
    let map = f.map.iter().map(|&v| g.apply(v)).collect();
    Ok(GraphHom {
        source: f.source.clone(),
        target: g.target.clone(),
        map,
        based: f.based && g.based,
    })
}

pub fn is_connected(g: &Graph) -> bool {
    match g.vertices().next() {
        None => true,
        Some(v) => g.distances_from(v).iter().all(Option::is_some),
    }
}

/// Whether some 3-cycle or 4-cycle occurs as a (not necessarily induced)
/// subgraph.
pub fn has_short_cycle(g: &Graph) -> bool {
    // A 4-cycle exists iff two distinct vertices share two neighbours; a
    // triangle iff an edge has a common neighbour.
    let n = g.vertex_count();
    let mut common = vec![0u32; n];
    for u in g.vertices() {
        common.iter_mut().for_each(|c| *c = 0);
        for &x in g.neighbors(u) {
            for &w in g.neighbors(x) {
                if w == u {
                    continue;
                }
                if g.adjacent(u, w) {
                    return true;
                }
                common[w.index()] += 1;
                if common[w.index()] >= 2 {
                    return true;
                }
            }
        }
    }
    false
}
