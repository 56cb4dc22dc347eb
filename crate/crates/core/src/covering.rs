//! Covering graphs and lifting.
//!
//! A covering map is a surjective homomorphism that restricts to a bijection
//! `N[w] → N[p(w)]` on every closed neighbourhood. Two kinds are supported:
//! explicit finite covers ([`FiniteCover`]) and the symbolic cover of a
//! cycle by the integer line ([`CyclicCover`]), which is never
//! materialised.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{
    build_cycle, closed_neighborhood, cycle_label, has_short_cycle, is_connected, same_graph,
    Graph, GraphHom, VertexId,
};
use crate::homotopy::StableSquare;
use crate::path::{RawPath, StablePath};
use crate::space::{IntegerLine, Space};

/// A covering map `p: total → base`.
pub trait Cover {
    type Total: Space;

    fn total(&self) -> &Self::Total;

    fn base_graph(&self) -> &Graph;

    fn project(&self, w: &Lifted<Self>) -> VertexId;

    /// `(p|N_w)^{-1}(target)`: the unique vertex of `N[w]` over `target`.
    fn local_inverse(&self, w: &Lifted<Self>, target: VertexId) -> Result<Lifted<Self>>;
}

/// Vertex type of the total space of a cover.
pub type Lifted<C> = <<C as Cover>::Total as Space>::Vertex;

/// Whether `p` is onto and bijective on every closed neighbourhood.
pub fn check_local_isomorphism(p: &GraphHom) -> bool {
    if !p.is_onto() {
        return false;
    }
    let total = p.source();
    let base = p.target();
    total.vertices().all(|w| {
        let upstairs = closed_neighborhood(total, w).expect("vertex of total graph");
        let downstairs = closed_neighborhood(base, p.apply(w)).expect("vertex of base graph");
        let images: std::collections::BTreeSet<VertexId> =
            upstairs.iter().map(|&u| p.apply(u)).collect();
        images.len() == upstairs.len() && images == downstairs
    })
}

/// An explicit covering map between finite graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCover {
    p: GraphHom,
}

impl FiniteCover {
    pub fn new(p: GraphHom) -> Result<FiniteCover> {
        if !check_local_isomorphism(&p) {
            return Err(Error::validation("map is not a local isomorphism"));
        }
        Ok(FiniteCover { p })
    }

    /// `C_n → C_k`, `[i] ↦ [i mod k]`, for `k ≥ 3` dividing `n`.
    pub fn modular(n: i64, k: i64) -> Result<FiniteCover> {
        if k < 3 || n < k || n % k != 0 {
            return Err(Error::validation(format!(
                "C_{n} does not cover C_{k} by reduction mod {k}"
            )));
        }
        let total = Arc::new(build_cycle(n)?);
        let base = Arc::new(build_cycle(k)?);
        let mut map = vec![VertexId::from_index(0); total.vertex_count()];
        for i in 0..n as u64 {
            map[total.require_vertex(&cycle_label(i))?.index()] =
                base.require_vertex(&cycle_label(i % k as u64))?;
        }
        FiniteCover::new(GraphHom::new(total, base, map, true)?)
    }

    pub fn map(&self) -> &GraphHom {
        &self.p
    }

    pub fn total_graph(&self) -> &Arc<Graph> {
        self.p.source()
    }

    pub fn base_arc(&self) -> &Arc<Graph> {
        self.p.target()
    }
}

impl Cover for FiniteCover {
    type Total = Graph;

    fn total(&self) -> &Graph {
        self.p.source()
    }

    fn base_graph(&self) -> &Graph {
        self.p.target()
    }

    fn project(&self, w: &VertexId) -> VertexId {
        self.p.apply(*w)
    }

    fn local_inverse(&self, w: &VertexId, target: VertexId) -> Result<VertexId> {
        let total = self.total();
        total.check_vertex(*w)?;
        let below = self.p.apply(*w);
        let base = self.base_graph();
        if !base.equal_or_adjacent(&below, &target) {
            return Err(Error::validation(format!(
                "{} is not in the closed neighbourhood of {}",
                base.label(target),
                base.label(below)
            )));
        }
        std::iter::once(*w)
            .chain(total.neighbors(*w).iter().copied())
            .find(|&u| self.p.apply(u) == target)
            .ok_or_else(|| Error::validation("no preimage in the neighbourhood"))
    }
}

/// `p_k: I_∞ → C_k`, `i ↦ [i mod k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCover {
    k: i64,
    cycle: Graph,
    by_residue: Vec<VertexId>,
    residue_of: Vec<i64>,
}

impl CyclicCover {
    pub fn new(k: i64) -> Result<CyclicCover> {
        let cycle = build_cycle(k)?;
        let by_residue: Vec<VertexId> = (0..k as u64)
            .map(|i| cycle.vertex(&cycle_label(i)).unwrap())
            .collect();
        let mut residue_of = vec![0; k as usize];
        for (r, v) in by_residue.iter().enumerate() {
            residue_of[v.index()] = r as i64;
        }
        Ok(CyclicCover {
            k,
            cycle,
            by_residue,
            residue_of,
        })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn cycle(&self) -> &Graph {
        &self.cycle
    }

    /// The vertex `[r mod k]`.
    pub fn vertex_of_residue(&self, r: i64) -> VertexId {
        self.by_residue[r.rem_euclid(self.k) as usize]
    }

    pub fn residue(&self, v: VertexId) -> i64 {
        self.residue_of[v.index()]
    }
}

impl Cover for CyclicCover {
    type Total = IntegerLine;

    fn total(&self) -> &IntegerLine {
        &IntegerLine
    }

    fn base_graph(&self) -> &Graph {
        &self.cycle
    }

    fn project(&self, w: &i64) -> VertexId {
        self.vertex_of_residue(*w)
    }

    fn local_inverse(&self, w: &i64, target: VertexId) -> Result<i64> {
        self.cycle.check_vertex(target)?;
        let r = self.residue(target);
        [*w, w + 1, w - 1]
            .into_iter()
            .find(|u| u.rem_euclid(self.k) == r)
            .ok_or_else(|| {
                Error::validation(format!(
                    "{} is not in the closed neighbourhood of {}",
                    self.cycle.label(target),
                    self.cycle.label(self.project(w))
                ))
            })
    }
}

/// Either kind of cover, as selected on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverSpec {
    Finite(FiniteCover),
    Cyclic(CyclicCover),
}

impl CoverSpec {
    pub fn base_graph(&self) -> &Graph {
        match self {
            CoverSpec::Finite(c) => c.base_graph(),
            CoverSpec::Cyclic(c) => c.base_graph(),
        }
    }
}

fn lift_sequence<C: Cover + ?Sized>(
    cover: &C,
    seq: &[VertexId],
    start: Lifted<C>,
) -> Result<Vec<Lifted<C>>> {
    let mut out = Vec::with_capacity(seq.len());
    let mut cur = start;
    out.push(cur.clone());
    for &v in &seq[1..] {
        cur = cover.local_inverse(&cur, v)?;
        out.push(cur.clone());
    }
    Ok(out)
}

/// The unique lift of `f` starting at `start`, with `f`'s offsets.
pub fn lift_path<C: Cover>(
    cover: &C,
    f: &StablePath<VertexId>,
    start: Lifted<C>,
) -> Result<StablePath<Lifted<C>>> {
    let base = cover.base_graph();
    RawPath::new(base, f.offset(), f.seq().to_vec())?;
    if !cover.total().contains(&start) {
        return Err(Error::validation(format!(
            "start {start:?} is not a vertex of the cover"
        )));
    }
    if cover.project(&start) != *f.start() {
        return Err(Error::validation(format!(
            "start {} lies over {}, not over the path's start {}",
            cover.total().label_of(&start),
            base.label(cover.project(&start)),
            base.label(*f.start())
        )));
    }
    let seq = lift_sequence(cover, f.seq(), start)?;
    Ok(RawPath::from_parts(f.offset(), seq).normalize())
}

/// Lifts a homotopy square through a cover of a graph without 3- or
/// 4-cycles, given a lift of its bottom face.
pub fn lift_homotopy<C: Cover>(
    cover: &C,
    h: &StableSquare<VertexId>,
    lifted_bottom: &StablePath<Lifted<C>>,
) -> Result<StableSquare<Lifted<C>>> {
    let base = cover.base_graph();
    if has_short_cycle(base) {
        return Err(Error::GirthViolation("the base graph".into()));
    }
    lift_homotopy_unguarded(cover, h, lifted_bottom)
}

/// [`lift_homotopy`] without the girth precondition. Column lifts always
/// exist; when the base has short cycles the assembled grid may fail the
/// horizontal adjacency check, reported as
/// [`Error::InternalInconsistency`].
#[doc(hidden)]
pub fn lift_homotopy_unguarded<C: Cover>(
    cover: &C,
    h: &StableSquare<VertexId>,
    lifted_bottom: &StablePath<Lifted<C>>,
) -> Result<StableSquare<Lifted<C>>> {
    let base = cover.base_graph();
    let total = cover.total();
    let h = StableSquare::new(base, h.offset1(), h.offset2(), h.grid().to_vec())?;
    let lo = h.offset1().min(lifted_bottom.offset());
    let hi = (h.offset1() + h.width() as i64 - 1).max(lifted_bottom.m_plus());
    if let Some(i) =
        (lo..=hi).find(|&i| cover.project(lifted_bottom.evaluate(i)) != *h.evaluate(i, h.offset2()))
    {
        return Err(Error::validation(format!(
            "the given bottom row is not a lift of the square's bottom face at column {i}"
        )));
    }

    let width = h.width();
    let columns: Vec<Vec<Lifted<C>>> = (0..width)
        .map(|c| {
            let i = h.offset1() + c as i64;
            let column: Vec<VertexId> = h.grid().iter().map(|row| row[c]).collect();
            lift_sequence(cover, &column, lifted_bottom.evaluate(i).clone())
        })
        .collect::<Result<_>>()?;
    let grid: Vec<Vec<Lifted<C>>> = (0..h.height())
        .map(|r| columns.iter().map(|col| col[r].clone()).collect())
        .collect();

    for (r, row) in grid.iter().enumerate() {
        for c in 0..width.saturating_sub(1) {
            if !total.equal_or_adjacent(&row[c], &row[c + 1]) {
                return Err(Error::InternalInconsistency(format!(
                    "lifted columns {} and {} are not adjacent at row {}: {} vs {}",
                    h.offset1() + c as i64,
                    h.offset1() + c as i64 + 1,
                    h.offset2() + r as i64,
                    total.label_of(&row[c]),
                    total.label_of(&row[c + 1])
                )));
            }
        }
    }
    let lifted = StableSquare::new(total, h.offset1(), h.offset2(), grid)?;
    let reprojected = lifted.map(|w| cover.project(w));
    if reprojected != h {
        return Err(Error::InternalInconsistency(
            "lifted square does not project back onto the input".into(),
        ));
    }
    Ok(lifted)
}

fn compose_path(f: &GraphHom, gamma: &StablePath<VertexId>) -> Result<StablePath<VertexId>> {
    RawPath::new(f.source().as_ref(), gamma.offset(), gamma.seq().to_vec())?;
    Ok(gamma.map(|&v| f.apply(v)))
}

/// `f_*(γ) = f ∘ γ` for a loop `γ` at the source base; the result is a loop
/// at the target base.
pub fn induced_map_on_loop(
    f: &GraphHom,
    gamma: &StablePath<VertexId>,
) -> Result<StablePath<VertexId>> {
    let y0 = f.source().require_base()?;
    let x0 = f.target().require_base()?;
    if f.apply(y0) != x0 {
        return Err(Error::validation("map does not send base to base"));
    }
    if *gamma.start() != y0 || *gamma.end() != y0 {
        return Err(Error::validation("path is not a loop at the source base"));
    }
    compose_path(f, gamma)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomLiftOutcome {
    Lift(GraphHom),
    /// Lifting along the spanning tree disagrees across `edge`; `witness` is
    /// the loop at the base of `K` that runs out along the tree, across the
    /// edge and back, and whose image has an open lift.
    NoLift {
        edge: (VertexId, VertexId),
        witness: StablePath<VertexId>,
    },
}

/// Lifts `f: (K, y₀) → (G, x₀)` through `cover` with `f̃(y₀) = start`, or
/// reports a loop of `K` whose image does not lift to a loop.
pub fn lift_hom_through_cover(
    cover: &FiniteCover,
    f: &GraphHom,
    start: VertexId,
) -> Result<HomLiftOutcome> {
    if !same_graph(f.target(), cover.base_arc()) {
        return Err(Error::validation(
            "map does not land in the cover's base graph",
        ));
    }
    let base = cover.base_graph();
    if has_short_cycle(base) {
        return Err(Error::GirthViolation("the base graph".into()));
    }
    let k = f.source();
    if !is_connected(base) || !is_connected(k) {
        return Err(Error::validation("lifting needs connected graphs"));
    }
    let y0 = k.require_base()?;
    let total = cover.total_graph();
    total.check_vertex(start)?;
    if cover.project(&start) != f.apply(y0) {
        return Err(Error::validation(
            "start does not lie over the image of the base",
        ));
    }

    let mut lifted: Vec<Option<VertexId>> = vec![None; k.vertex_count()];
    let mut tree_parent: Vec<Option<VertexId>> = vec![None; k.vertex_count()];
    lifted[y0.index()] = Some(start);
    let mut queue = VecDeque::from([y0]);
    while let Some(u) = queue.pop_front() {
        let here = lifted[u.index()].unwrap();
        for &w in k.neighbors(u) {
            if lifted[w.index()].is_none() {
                lifted[w.index()] = Some(cover.local_inverse(&here, f.apply(w))?);
                tree_parent[w.index()] = Some(u);
                queue.push_back(w);
            }
        }
    }
    let lifted: Vec<VertexId> = lifted.into_iter().map(Option::unwrap).collect();

    for (u, w) in k.edges() {
        let (a, b) = (lifted[u.index()], lifted[w.index()]);
        if !(a == b || total.adjacent(a, b)) {
            let to_root = |mut v: VertexId| {
                let mut walk = vec![v];
                while let Some(p) = tree_parent[v.index()] {
                    walk.push(p);
                    v = p;
                }
                walk
            };
            let mut walk = to_root(u);
            walk.reverse();
            walk.extend(to_root(w));
            let witness = StablePath::new(k.as_ref(), 0, walk)?;
            return Ok(HomLiftOutcome::NoLift {
                edge: (u, w),
                witness,
            });
        }
    }

    let based = total.base() == Some(start) && k.base().is_some();
    let lift = GraphHom::new(k.clone(), total.clone(), lifted, based)?;
    if k.vertices()
        .any(|v| cover.project(&lift.apply(v)) != f.apply(v))
    {
        return Err(Error::InternalInconsistency(
            "lift does not project onto the map".into(),
        ));
    }
    Ok(HomLiftOutcome::Lift(lift))
}

/// Checks `p_* ∘ f̃_* = f_*` on sample loops at the base of `K`.
pub fn verify_functoriality(
    cover: &FiniteCover,
    f: &GraphHom,
    f_tilde: &GraphHom,
    loops: &[StablePath<VertexId>],
) -> Result<bool> {
    let k = f.source();
    if !same_graph(k, f_tilde.source()) || !same_graph(f_tilde.target(), cover.total_graph()) {
        return Err(Error::validation("maps do not form a lifting triangle"));
    }
    if k.vertices()
        .any(|v| cover.project(&f_tilde.apply(v)) != f.apply(v))
    {
        return Ok(false);
    }
    for gamma in loops {
        let y0 = k.require_base()?;
        if *gamma.start() != y0 || *gamma.end() != y0 {
            return Err(Error::validation("sample path is not a loop at the base"));
        }
        let upstairs = compose_path(f_tilde, gamma)?;
        let there = compose_path(cover.map(), &upstairs)?;
        let direct = compose_path(f, gamma)?;
        if there != direct {
            return Ok(false);
        }
    }
    Ok(true)
}
