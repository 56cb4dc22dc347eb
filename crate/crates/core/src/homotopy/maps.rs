//! Homotopies between graph homomorphisms `G₁ → G₂`.
//!
//! A homotopy `G₁ □ I_n → G₂` is a chain of homomorphisms in which
//! consecutive frames are pointwise equal or adjacent. Between finite
//! graphs the set of homomorphisms is finite, so reachability under the
//! one-step relation is decided exhaustively.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{is_connected, same_graph, Graph, GraphHom, VertexId};

/// Frames `f = H(·, 0), H(·, 1), ..., H(·, n) = g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapHomotopyChain {
    pub frames: Vec<GraphHom>,
    pub based: bool,
}

impl MapHomotopyChain {
    pub fn first(&self) -> &GraphHom {
        &self.frames[0]
    }

    pub fn last(&self) -> &GraphHom {
        &self.frames[self.frames.len() - 1]
    }

    /// Re-checks every frame and every consecutive pair.
    pub fn validate(&self) -> Result<bool> {
        if self.frames.is_empty() {
            return Ok(false);
        }
        let base_ok = |h: &GraphHom| -> bool {
            !self.based
                || match (h.source().base(), h.target().base()) {
                    (Some(b1), Some(b2)) => h.apply(b1) == b2,
                    _ => false,
                }
        };
        for h in &self.frames {
            let rebuilt = GraphHom::new(
                h.source().clone(),
                h.target().clone(),
                h.images().to_vec(),
                false,
            );
            if rebuilt.is_err() || !base_ok(h) {
                return Ok(false);
            }
        }
        for w in self.frames.windows(2) {
            if !map_one_step(&w[0], &w[1])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn reversed(&self) -> MapHomotopyChain {
        let mut frames = self.frames.clone();
        frames.reverse();
        MapHomotopyChain {
            frames,
            based: self.based,
        }
    }

    /// `self` followed by `other`; the last frame of `self` must be the first
    /// frame of `other`.
    pub fn then(&self, other: &MapHomotopyChain) -> Result<MapHomotopyChain> {
        if self.last().images() != other.first().images() {
            return Err(Error::validation("chains do not meet"));
        }
        let mut frames = self.frames.clone();
        frames.extend(other.frames.iter().skip(1).cloned());
        Ok(MapHomotopyChain {
            frames,
            based: self.based && other.based,
        })
    }
}

fn check_same_ends(f: &GraphHom, g: &GraphHom) -> Result<()> {
    if !same_graph(f.source(), g.source()) || !same_graph(f.target(), g.target()) {
        return Err(Error::validation(
            "homomorphisms have different sources or targets",
        ));
    }
    Ok(())
}

/// Whether `f` and `g` are joined by a homotopy `G₁ □ I₁ → G₂`.
///
/// When both maps are based, every frame must fix the base; that holds for
/// the two frames by construction.
pub fn map_one_step(f: &GraphHom, g: &GraphHom) -> Result<bool> {
    check_same_ends(f, g)?;
    let target = f.target();
    Ok(f.images()
        .iter()
        .zip(g.images())
        .all(|(&a, &b)| a == b || target.adjacent(a, b)))
}

/// Every homomorphism `source → target` (based ones only when `based`).
///
/// Backtracking over vertices in breadth-first order from the first vertex
/// of each component, so edge constraints prune early.
pub fn enumerate_homs(
    source: &Arc<Graph>,
    target: &Arc<Graph>,
    based: bool,
) -> Result<Vec<GraphHom>> {
    let candidates: Vec<Vec<VertexId>> = source
        .vertices()
        .map(|v| {
            if based && Some(v) == source.base() {
                target.base().into_iter().collect()
            } else {
                target.vertices().collect()
            }
        })
        .collect();
    if based && (source.base().is_none() || target.base().is_none()) {
        return Err(Error::validation("based enumeration needs base vertices"));
    }
    let maps = constrained_homs(source, target, &candidates);
    Ok(maps
        .into_iter()
        .map(|m| GraphHom::new(source.clone(), target.clone(), m, based).expect("valid by search"))
        .collect())
}

fn search_order(source: &Graph) -> Vec<VertexId> {
    let mut order = Vec::with_capacity(source.vertex_count());
    let mut seen = vec![false; source.vertex_count()];
    for root in source.vertices() {
        if seen[root.index()] {
            continue;
        }
        seen[root.index()] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in source.neighbors(u) {
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// All maps with `map[v] ∈ candidates[v]` satisfying the edge condition, in
/// lexicographic order of the image vector.
fn constrained_homs(
    source: &Graph,
    target: &Graph,
    candidates: &[Vec<VertexId>],
) -> Vec<Vec<VertexId>> {
    let order = search_order(source);
    let mut position = vec![0usize; source.vertex_count()];
    for (i, v) in order.iter().enumerate() {
        position[v.index()] = i;
    }
    let mut assignment: Vec<Option<VertexId>> = vec![None; source.vertex_count()];
    let mut out = Vec::new();

    fn go(
        k: usize,
        order: &[VertexId],
        position: &[usize],
        source: &Graph,
        target: &Graph,
        candidates: &[Vec<VertexId>],
        assignment: &mut Vec<Option<VertexId>>,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        if k == order.len() {
            out.push(assignment.iter().map(|a| a.unwrap()).collect());
            return;
        }
        let v = order[k];
        for &c in &candidates[v.index()] {
            let ok = source.neighbors(v).iter().all(|&u| {
                position[u.index()] >= k || {
                    let w = assignment[u.index()].unwrap();
                    w == c || target.adjacent(w, c)
                }
            });
            if ok {
                assignment[v.index()] = Some(c);
                go(
                    k + 1,
                    order,
                    position,
                    source,
                    target,
                    candidates,
                    assignment,
                    out,
                );
                assignment[v.index()] = None;
            }
        }
    }

    go(
        0,
        &order,
        &position,
        source,
        target,
        candidates,
        &mut assignment,
        &mut out,
    );
    out.sort();
    out
}

/// Homomorphisms one step away from `f`, in lexicographic order.
fn one_step_neighbors(f: &GraphHom, based: bool) -> Vec<Vec<VertexId>> {
    let source = f.source();
    let target = f.target();
    let candidates: Vec<Vec<VertexId>> = source
        .vertices()
        .map(|v| {
            let image = f.apply(v);
            if based && Some(v) == source.base() {
                vec![image]
            } else {
                let mut c: Vec<VertexId> = target.neighbors(image).to_vec();
                c.push(image);
                c.sort();
                c
            }
        })
        .collect();
    constrained_homs(source, target, &candidates)
}

/// Breadth-first exploration of the one-step relation from `start`.
///
/// Returns the visited maps in discovery order with their parents, stopping
/// early as soon as `stop` accepts a map.
fn explore(
    start: &GraphHom,
    based: bool,
    mut stop: impl FnMut(&[VertexId]) -> bool,
) -> (Vec<Vec<VertexId>>, Vec<Option<usize>>, Option<usize>) {
    let mut states = vec![start.images().to_vec()];
    let mut parent = vec![None];
    if stop(&states[0]) {
        return (states, parent, Some(0));
    }
    let mut index: HashMap<Vec<VertexId>, usize> = HashMap::from([(states[0].clone(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(cur) = queue.pop_front() {
        let frame = GraphHom::new(
            start.source().clone(),
            start.target().clone(),
            states[cur].clone(),
            false,
        )
        .expect("explored maps are homomorphisms");
        for next in one_step_neighbors(&frame, based) {
            if index.contains_key(&next) {
                continue;
            }
            let id = states.len();
            index.insert(next.clone(), id);
            let hit = stop(&next);
            states.push(next);
            parent.push(Some(cur));
            if hit {
                return (states, parent, Some(id));
            }
            queue.push_back(id);
        }
    }
    (states, parent, None)
}

fn chain_to(
    start: &GraphHom,
    states: &[Vec<VertexId>],
    parent: &[Option<usize>],
    goal: usize,
    based: bool,
) -> MapHomotopyChain {
    let mut lineage = vec![goal];
    while let Some(p) = parent[*lineage.last().unwrap()] {
        lineage.push(p);
    }
    lineage.reverse();
    let frames = lineage
        .into_iter()
        .map(|i| {
            GraphHom::new(
                start.source().clone(),
                start.target().clone(),
                states[i].clone(),
                based,
            )
            .expect("explored maps are homomorphisms")
        })
        .collect();
    MapHomotopyChain { frames, based }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapSearchOutcome {
    Found(MapHomotopyChain),
    /// The whole one-step component of the first map was explored without
    /// meeting the second map.
    Impossible {
        explored: usize,
    },
}

/// Decides whether `f ≃ g`, returning a witness chain. Based exactly when
/// both maps are based.
pub fn search_map_homotopy(f: &GraphHom, g: &GraphHom) -> Result<MapSearchOutcome> {
    check_same_ends(f, g)?;
    let based = f.is_based() && g.is_based();
    let (states, parent, hit) = explore(f, based, |m| m == g.images());
    Ok(match hit {
        Some(goal) => MapSearchOutcome::Found(chain_to(f, &states, &parent, goal, based)),
        None => MapSearchOutcome::Impossible {
            explored: states.len(),
        },
    })
}

/// The full one-step component of `f`, in discovery order.
pub fn homotopy_component(f: &GraphHom, based: bool) -> Vec<GraphHom> {
    let (states, _, _) = explore(f, based, |_| false);
    states
        .into_iter()
        .map(|m| GraphHom::new(f.source().clone(), f.target().clone(), m, based).unwrap())
        .collect()
}

/// Which homotopy relation a contractibility decision used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractionMode {
    /// Frames may move every vertex.
    Unbased,
    /// Every frame fixes the given vertex.
    Based(VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionReport {
    pub contractible: bool,
    /// Homotopy from the identity to a constant map, when one exists.
    pub chain: Option<MapHomotopyChain>,
    /// Vertex the witness chain contracts onto.
    pub target: Option<VertexId>,
    pub mode: ContractionMode,
    /// Number of endomorphisms visited.
    pub explored: usize,
    /// True when a negative answer came from exploring the identity's whole
    /// component.
    pub exhaustive: bool,
}

/// Decides whether the identity of `g` is homotopic to a constant map.
pub fn is_contractible(g: &Arc<Graph>, mode: ContractionMode) -> Result<ContractionReport> {
    if !is_connected(g) {
        return Err(Error::validation(
            "contractibility is only defined for connected graphs",
        ));
    }
    let (graph, based) = match mode {
        ContractionMode::Unbased => (g.clone(), false),
        ContractionMode::Based(v) => (Arc::new(g.with_base(Some(v))?), true),
    };
    let identity = GraphHom::identity(graph.clone());
    let (states, parent, hit) = explore(&identity, based, |m| m.windows(2).all(|w| w[0] == w[1]));
    let explored = states.len();
    Ok(match hit {
        Some(goal) => {
            let target = states[goal][0];
            let chain = chain_to(&identity, &states, &parent, goal, based);
            ContractionReport {
                contractible: true,
                chain: Some(chain),
                target: Some(target),
                mode,
                explored,
                exhaustive: false,
            }
        }
        None => ContractionReport {
            contractible: false,
            chain: None,
            target: None,
            mode,
            explored,
            exhaustive: true,
        },
    })
}
