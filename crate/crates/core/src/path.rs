//! Stable maps `I_∞ → G`.
//!
//! A stable path is stored as a finite window `seq` starting at integer
//! `offset`; outside the window it repeats its first or last entry. The
//! canonical [`StablePath`] keeps the window exactly as wide as the active
//! region, so `offset` is the negative stabilization point `m₀(f, −1)` and
//! [`StablePath::m_plus`] the positive one. A constant map is stored as a
//! single entry at offset 0.
//!
//! [`RawPath`] is the same window without the minimality requirement. It is
//! what padding produces and what certificate rows are assembled from.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::space::Space;

/// Direction along an axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    Neg,
    Pos,
}

impl Dir {
    pub fn opposite(self) -> Dir {
        match self {
            Dir::Neg => Dir::Pos,
            Dir::Pos => Dir::Neg,
        }
    }

    pub fn from_sign(sign: i64) -> Result<Dir> {
        match sign {
            -1 => Ok(Dir::Neg),
            1 => Ok(Dir::Pos),
            other => Err(Error::validation(format!(
                "direction must be -1 or +1, got {other}"
            ))),
        }
    }
}

fn check_window<S: Space>(space: &S, seq: &[S::Vertex]) -> Result<()> {
    if seq.is_empty() {
        return Err(Error::validation("path window must be non-empty"));
    }
    if let Some(v) = seq.iter().find(|v| !space.contains(v)) {
        return Err(Error::validation(format!(
            "vertex {v:?} is not in the graph"
        )));
    }
    if let Some(i) = seq
        .windows(2)
        .position(|w| !space.equal_or_adjacent(&w[0], &w[1]))
    {
        return Err(Error::validation(format!(
            "consecutive entries {} and {} at positions {i} and {} are neither equal nor adjacent",
            space.label_of(&seq[i]),
            space.label_of(&seq[i + 1]),
            i + 1
        )));
    }
    Ok(())
}

/// An un-normalized window of a stable path.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RawPath<V> {
    offset: i64,
    seq: Vec<V>,
}

impl<V: Clone + Eq> RawPath<V> {
    pub fn new<S: Space<Vertex = V>>(space: &S, offset: i64, seq: Vec<V>) -> Result<Self> {
        check_window(space, &seq)?;
        Ok(RawPath { offset, seq })
    }

    pub(crate) fn from_parts(offset: i64, seq: Vec<V>) -> Self {
        debug_assert!(!seq.is_empty());
        RawPath { offset, seq }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn seq(&self) -> &[V] {
        &self.seq
    }

    /// Last index of the window.
    pub fn last_index(&self) -> i64 {
        self.offset + self.seq.len() as i64 - 1
    }

    pub fn evaluate(&self, i: i64) -> &V {
        let j = (i - self.offset).clamp(0, self.seq.len() as i64 - 1);
        &self.seq[j as usize]
    }

    /// Values on the closed integer range `lo..=hi`.
    pub fn sample(&self, lo: i64, hi: i64) -> Vec<V> {
        (lo..=hi).map(|i| self.evaluate(i).clone()).collect()
    }

    /// Pointwise image under a vertex map.
    pub fn map<W: Clone + Eq>(&self, f: impl FnMut(&V) -> W) -> RawPath<W> {
        RawPath {
            offset: self.offset,
            seq: self.seq.iter().map(f).collect(),
        }
    }

    pub fn shifted(&self, n: i64) -> RawPath<V> {
        RawPath {
            offset: self.offset + n,
            seq: self.seq.clone(),
        }
    }

    /// Trims the window to the active region.
    pub fn normalize(&self) -> StablePath<V> {
        let mut lo = 0;
        while lo + 1 < self.seq.len() && self.seq[lo] == self.seq[lo + 1] {
            lo += 1;
        }
        let mut hi = self.seq.len() - 1;
        while hi > lo && self.seq[hi] == self.seq[hi - 1] {
            hi -= 1;
        }
        if lo == hi {
            return StablePath::constant(self.seq[lo].clone());
        }
        StablePath {
            offset: self.offset + lo as i64,
            seq: self.seq[lo..=hi].to_vec(),
        }
    }
}

/// A stable path in canonical (minimal) form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StablePath<V> {
    offset: i64,
    seq: Vec<V>,
}

impl<V: Clone + Eq> StablePath<V> {
    /// Validates a raw window and returns its canonical representative.
    pub fn new<S: Space<Vertex = V>>(space: &S, offset: i64, raw: Vec<V>) -> Result<Self> {
        Ok(RawPath::new(space, offset, raw)?.normalize())
    }

    pub fn constant(v: V) -> Self {
        StablePath {
            offset: 0,
            seq: vec![v],
        }
    }

    /// `m₀(f, −1)`.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// `m₀(f, +1)`.
    pub fn m_plus(&self) -> i64 {
        self.offset + self.seq.len() as i64 - 1
    }

    pub fn seq(&self) -> &[V] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_constant(&self) -> bool {
        self.seq.len() == 1
    }

    pub fn start(&self) -> &V {
        &self.seq[0]
    }

    pub fn end(&self) -> &V {
        &self.seq[self.seq.len() - 1]
    }

    pub fn evaluate(&self, i: i64) -> &V {
        let j = (i - self.offset).clamp(0, self.seq.len() as i64 - 1);
        &self.seq[j as usize]
    }

    pub fn face(&self, dir: Dir) -> &V {
        match dir {
            Dir::Neg => self.start(),
            Dir::Pos => self.end(),
        }
    }

    pub fn to_raw(&self) -> RawPath<V> {
        RawPath {
            offset: self.offset,
            seq: self.seq.clone(),
        }
    }

    /// `f_n(i) = f(i − n)`. Constant maps keep offset 0.
    pub fn shift(&self, n: i64) -> StablePath<V> {
        if self.is_constant() {
            return self.clone();
        }
        StablePath {
            offset: self.offset + n,
            seq: self.seq.clone(),
        }
    }

    /// `f̄(i) = f(−i)`.
    pub fn reverse(&self) -> StablePath<V> {
        if self.is_constant() {
            return self.clone();
        }
        let mut seq = self.seq.clone();
        seq.reverse();
        StablePath {
            offset: -self.m_plus(),
            seq,
        }
    }

    /// Same shape, moved so that it starts at `offset` (constants stay at 0).
    pub fn placed_at(&self, offset: i64) -> StablePath<V> {
        self.shift(offset - self.offset)
    }

    /// Inserts `left + right` extra copies of `f(b)` at `b`: values left of
    /// `b − left` are pulled in from the left tail, values right of
    /// `b + right` from the right tail. Requires `m₀(f,−1) < b < m₀(f,+1)`.
    pub fn pad(&self, b: i64, left: u32, right: u32) -> Result<RawPath<V>> {
        if !(self.offset < b && b < self.m_plus()) {
            return Err(Error::validation(format!(
                "padding point {b} is outside the open active range ({}, {})",
                self.offset,
                self.m_plus()
            )));
        }
        let at = (b - self.offset) as usize;
        let mut seq = Vec::with_capacity(self.seq.len() + (left + right) as usize);
        seq.extend_from_slice(&self.seq[..at]);
        seq.extend(std::iter::repeat_n(self.seq[at].clone(), (left + right + 1) as usize));
        seq.extend_from_slice(&self.seq[at + 1..]);
        Ok(RawPath {
            offset: self.offset - left as i64,
            seq,
        })
    }

    /// Pointwise image under a vertex map, re-normalized.
    pub fn map<W: Clone + Eq>(&self, f: impl FnMut(&V) -> W) -> StablePath<W> {
        self.to_raw().map(f).normalize()
    }
}

/// The constant path at `v` (the degeneracy `C₀ → C₁`).
pub fn degeneracy_vertex<S: Space>(space: &S, v: S::Vertex) -> Result<StablePath<S::Vertex>> {
    if !space.contains(&v) {
        return Err(Error::validation(format!(
            "vertex {v:?} is not in the graph"
        )));
    }
    Ok(StablePath::constant(v))
}

/// Result of concatenating two stable paths, with the stabilization points
/// given by the closed-form formulas before normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Concatenation<V> {
    pub path: StablePath<V>,
    /// `m₀(f, +1) − m₀(f, −1)`.
    pub raw_m_plus: i64,
    /// `m₀(g, −1) − m₀(g, +1)`.
    pub raw_m_minus: i64,
}

/// `f · g`: `g` on the non-positive half-axis ending at 0, then `f`
/// starting at 0. Requires `f` to start where `g` ends.
pub fn concat<V: Clone + Eq + std::fmt::Debug>(
    f: &StablePath<V>,
    g: &StablePath<V>,
) -> Result<Concatenation<V>> {
    if f.start() != g.end() {
        return Err(Error::validation(format!(
            "cannot concatenate: first path starts at {:?} but second ends at {:?}",
            f.start(),
            g.end()
        )));
    }
    let raw_m_plus = f.m_plus() - f.offset();
    let raw_m_minus = g.offset() - g.m_plus();
    let mut seq = g.seq().to_vec();
    seq.extend_from_slice(&f.seq()[1..]);
    let path = RawPath::from_parts(raw_m_minus, seq).normalize();
    Ok(Concatenation {
        path,
        raw_m_plus,
        raw_m_minus,
    })
}

/// A stable path equal to the base vertex outside a finite region.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LoopPath<V>(StablePath<V>);

impl<V: Clone + Eq + std::fmt::Debug> LoopPath<V> {
    pub fn new(path: StablePath<V>, base: &V) -> Result<Self> {
        if path.start() != base || path.end() != base {
            return Err(Error::validation(format!(
                "path from {:?} to {:?} is not a loop at {base:?}",
                path.start(),
                path.end()
            )));
        }
        Ok(LoopPath(path))
    }

    pub fn into_path(self) -> StablePath<V> {
        self.0
    }
}

impl<V> Deref for LoopPath<V> {
    type Target = StablePath<V>;

    fn deref(&self) -> &StablePath<V> {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_cycle, Graph, VertexId};

    fn c5() -> Graph {
        build_cycle(5).unwrap()
    }

    fn vs(g: &Graph, idx: &[u64]) -> Vec<VertexId> {
        idx.iter()
            .map(|i| g.vertex(&format!("[{i}]")).unwrap())
            .collect()
    }

    fn path(g: &Graph, offset: i64, idx: &[u64]) -> StablePath<VertexId> {
        StablePath::new(g, offset, vs(g, idx)).unwrap()
    }

    #[test]
    fn normalization() {
        let g = c5();
        let p = path(&g, 0, &[0, 0, 1, 1]);
        assert_eq!(p.offset(), 1);
        assert_eq!(p.seq(), vs(&g, &[0, 1]).as_slice());
        assert_eq!(p.m_plus(), 2);

        let k = path(&g, 7, &[2]);
        assert_eq!((k.offset(), k.len()), (0, 1));
        let k = path(&g, 7, &[2, 2, 2]);
        assert_eq!((k.offset(), k.len()), (0, 1));

        assert!(StablePath::new(&g, 0, vs(&g, &[0, 2])).is_err());
        assert!(StablePath::new(&g, 0, vec![]).is_err());
    }

    #[test]
    fn evaluation_and_faces() {
        let g = c5();
        let gamma1 = path(&g, 0, &[0, 1, 2, 3, 4, 0]);
        assert_eq!(gamma1.evaluate(100), &vs(&g, &[0])[0]);
        assert_eq!(gamma1.evaluate(3), &vs(&g, &[3])[0]);
        assert_eq!(gamma1.evaluate(-3), &vs(&g, &[0])[0]);
        let k = path(&g, 0, &[2]);
        assert_eq!(k.evaluate(-50), &vs(&g, &[2])[0]);

        assert_eq!(path(&g, 0, &[3]).face(Dir::Neg), &vs(&g, &[3])[0]);
        assert_eq!(path(&g, 0, &[1, 2]).face(Dir::Neg), &vs(&g, &[1])[0]);
        assert_eq!(path(&g, 0, &[1, 2]).face(Dir::Pos), &vs(&g, &[2])[0]);

        let d = degeneracy_vertex(&g, vs(&g, &[0])[0]).unwrap();
        assert!(d.is_constant());
        assert_eq!(d.face(Dir::Neg), d.face(Dir::Pos));
        assert!(degeneracy_vertex(&g, VertexId::clone(&d.seq()[0])).is_ok());
    }

    #[test]
    fn concatenation_formulas() {
        let g = c5();
        // (m-, m+) = (0, 3) and (-2, 1), f starts where g ends
        let f = path(&g, 0, &[1, 2, 3, 4]);
        let g2 = path(&g, -2, &[4, 3, 2, 1]);
        assert_eq!((g2.offset(), g2.m_plus()), (-2, 1));
        let c = concat(&f, &g2).unwrap();
        assert_eq!((c.raw_m_plus, c.raw_m_minus), (3, -3));
        assert_eq!((c.path.offset(), c.path.m_plus()), (-3, 3));

        let gamma1 = path(&g, 0, &[0, 1, 2, 3, 4, 0]);
        let twice = concat(&gamma1, &gamma1).unwrap().path;
        assert_eq!(
            twice.seq(),
            vs(&g, &[0, 1, 2, 3, 4, 0, 1, 2, 3, 4, 0]).as_slice()
        );

        let at_start = StablePath::constant(*f.start());
        let c = concat(&f, &at_start).unwrap().path;
        assert_eq!(c.seq(), f.seq());

        assert!(concat(&f, &gamma1).is_err());
    }

    #[test]
    fn reversal_and_shift() {
        let g = c5();
        let gamma1 = path(&g, 0, &[0, 1, 2, 3, 4, 0]);
        let gamma_neg1 = path(&g, 0, &[0, 4, 3, 2, 1, 0]);
        assert_eq!(gamma1.reverse(), gamma_neg1.shift(-5));
        assert_eq!(gamma1.reverse().reverse(), gamma1);
        let k = path(&g, 0, &[4]);
        assert_eq!(k.reverse(), k);
        assert_eq!(gamma1.shift(0), gamma1);
        let s = gamma1.shift(3);
        for i in -10..15 {
            assert_eq!(s.evaluate(i), gamma1.evaluate(i - 3));
        }
    }

    #[test]
    fn padding() {
        let g = c5();
        let gamma1 = path(&g, 0, &[0, 1, 2, 3, 4, 0]);
        assert_eq!(gamma1.pad(2, 0, 0).unwrap(), gamma1.to_raw());
        let padded = gamma1.pad(2, 1, 1).unwrap();
        assert_eq!(padded.seq(), vs(&g, &[0, 1, 2, 2, 2, 3, 4, 0]).as_slice());
        assert_eq!(padded.offset(), -1);
        // three-case formula, evaluated pointwise
        for i in -10..15 {
            let expected = if i >= 3 {
                gamma1.evaluate(i - 1)
            } else if i >= 1 {
                gamma1.evaluate(2)
            } else {
                gamma1.evaluate(i + 1)
            };
            assert_eq!(padded.evaluate(i), expected, "i = {i}");
        }
        assert!(path(&g, 0, &[1]).pad(0, 1, 1).is_err());
        assert!(gamma1.pad(0, 1, 1).is_err());
        assert!(gamma1.pad(5, 1, 1).is_err());
        assert!(RawPath::new(&g, padded.offset(), padded.seq().to_vec()).is_ok());
    }

    #[test]
    fn loops() {
        let g = c5();
        let base = g.base().unwrap();
        assert!(LoopPath::new(path(&g, 0, &[0, 1, 0]), &base).is_ok());
        assert!(LoopPath::new(path(&g, 0, &[0, 1]), &base).is_err());
    }
}
