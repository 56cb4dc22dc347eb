//! Bounded certificate search between stable paths.
//!
//! States are path shapes (canonical windows, offset forgotten). Two shapes
//! are one step apart when some translation makes them pointwise equal or
//! adjacent, which is exactly a two-row square. A successful search stacks
//! the translated rows into a [`StableSquare`] and re-checks it with
//! [`is_homotopy`] before returning it.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::homotopy::square::{is_homotopy, StableSquare};
use crate::path::{RawPath, StablePath};
use crate::space::Space;

/// Translation `t` such that `g` shifted by `t` is pointwise equal or
/// adjacent to `f`, preferring the smallest `|t|` (negative first).
///
/// Only the faces of the two paths and the pointwise condition matter, so
/// every relative placement is tried.
pub fn aligning_shift<S: Space>(
    space: &S,
    f: &StablePath<S::Vertex>,
    g: &StablePath<S::Vertex>,
) -> Option<i64> {
    if f.start() != g.start() || f.end() != g.end() {
        return None;
    }
    // Placements of g beyond this range all look alike against f.
    let lo = f.offset() - g.len() as i64 - 1 - g.offset();
    let hi = f.m_plus() + 1 - g.offset();
    let mut candidates: Vec<i64> = (lo..=hi).collect();
    candidates.sort_by_key(|t| (t.abs(), *t));
    candidates.into_iter().find(|&t| {
        let h = g.shift(t);
        let a = f.offset().min(h.offset());
        let b = f.m_plus().max(h.m_plus());
        (a..=b).all(|i| space.equal_or_adjacent(f.evaluate(i), h.evaluate(i)))
    })
}

/// Whether `f` and `g` have the same faces and can be placed side by side
/// with every pair of corresponding entries equal or adjacent.
pub fn one_step_related<S: Space>(
    space: &S,
    f: &StablePath<S::Vertex>,
    g: &StablePath<S::Vertex>,
) -> bool {
    aligning_shift(space, f, g).is_some()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest window any intermediate row may have.
    pub max_len: usize,
    /// Largest number of rows in a certificate.
    pub max_rows: usize,
}

/// A stacked homotopy together with the rows it was assembled from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCertificate {
    pub rows: Vec<RawPath<VertexId>>,
    pub square: StableSquare<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathSearchOutcome {
    Found(PathCertificate),
    /// The two paths do not share both endpoints, so no homotopy exists.
    FacesDiffer,
    /// Every shape reachable within the bounds was explored. This is not a
    /// proof that the paths are not homotopic.
    NotFoundWithinBounds {
        explored: usize,
    },
}

/// Breadth-first search for a homotopy certificate from `f` to `h`.
pub fn find_path_homotopy(
    graph: &Graph,
    f: &StablePath<VertexId>,
    h: &StablePath<VertexId>,
    bounds: SearchBounds,
) -> Result<PathSearchOutcome> {
    for p in [f, h] {
        RawPath::new(graph, p.offset(), p.seq().to_vec())?;
    }
    if bounds.max_rows == 0 {
        return Err(Error::validation("max_rows must be at least 1"));
    }
    let longest = f.len().max(h.len());
    if bounds.max_len < longest {
        return Err(Error::validation(format!(
            "max_len {} is smaller than the input window {longest}",
            bounds.max_len
        )));
    }
    if f.start() != h.start() || f.end() != h.end() {
        return Ok(PathSearchOutcome::FacesDiffer);
    }

    let dist_to_end: Vec<usize> = graph
        .distances_from(*f.end())
        .into_iter()
        .map(|d| d.unwrap_or(usize::MAX))
        .collect();

    let mut shapes: Vec<Vec<VertexId>> = vec![f.seq().to_vec()];
    let mut parent: Vec<Option<(usize, i64)>> = vec![None];
    let mut depth: Vec<usize> = vec![0];
    let mut index: FxHashMap<Vec<VertexId>, usize> = FxHashMap::default();
    index.insert(f.seq().to_vec(), 0);
    let mut queue = VecDeque::from([0usize]);

    let goal = if f.seq() == h.seq() { Some(0) } else { None };
    let goal = match goal {
        Some(g) => Some(g),
        None => 'search: {
            while let Some(cur) = queue.pop_front() {
                if depth[cur] + 1 >= bounds.max_rows {
                    continue;
                }
                let mut next = Vec::new();
                neighbor_shapes(
                    graph,
                    &shapes[cur],
                    bounds.max_len,
                    &dist_to_end,
                    &mut |seq, s| {
                        if !index.contains_key(seq) {
                            next.push((seq.to_vec(), s));
                        }
                    },
                );
                next.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
                for (shape, shift) in next {
                    let id = shapes.len();
                    index.insert(shape.clone(), id);
                    let reached_goal = shape.as_slice() == h.seq();
                    shapes.push(shape);
                    parent.push(Some((cur, shift)));
                    depth.push(depth[cur] + 1);
                    if reached_goal {
                        break 'search Some(id);
                    }
                    queue.push_back(id);
                }
            }
            None
        }
    };

    let Some(goal) = goal else {
        return Ok(PathSearchOutcome::NotFoundWithinBounds {
            explored: shapes.len(),
        });
    };

    let mut lineage = vec![goal];
    let mut shifts = Vec::new();
    while let Some((p, shift)) = parent[*lineage.last().unwrap()] {
        shifts.push(shift);
        lineage.push(p);
    }
    lineage.reverse();
    shifts.reverse();
    let mut rows = Vec::with_capacity(lineage.len());
    let mut offset = f.offset();
    for (k, &state) in lineage.iter().enumerate() {
        if k > 0 {
            offset += shifts[k - 1];
        }
        rows.push(RawPath::from_parts(offset, shapes[state].clone()));
    }
    let square = StableSquare::from_rows(graph, &rows)?;
    if !is_homotopy(graph, &square, f, h)? {
        return Err(Error::InternalInconsistency(
            "assembled certificate fails the homotopy check".into(),
        ));
    }
    Ok(PathSearchOutcome::Found(PathCertificate { rows, square }))
}

/// All shapes `B` with window at most `max_len`, the same endpoints as `a`,
/// and a placement (relative to `a` placed at 0) pointwise equal or
/// adjacent to `a`. Each is visited once, with its leftmost valid placement.
///
/// Candidate sequences are enumerated once, carrying the set of placements
/// still consistent with the prefix built so far as a bit set.
fn neighbor_shapes(
    graph: &Graph,
    a: &[VertexId],
    max_len: usize,
    dist_to_end: &[usize],
    visit: &mut dyn FnMut(&[VertexId], i64),
) {
    let n = a.len() as i64;
    let start = a[0];
    let end = a[a.len() - 1];
    let ext = |i: i64| a[i.clamp(0, n - 1) as usize];
    let close = |x: VertexId, y: VertexId| x == y || graph.adjacent(x, y);
    if dist_to_end[start.index()] > max_len - 1 {
        return;
    }
    let vcount = graph.vertex_count();
    // Placement s in lo_s..=n is bit s - lo_s.
    let lo_s = -(max_len as i64);
    let placements = (n - lo_s + 1) as usize;
    let words = placements.div_ceil(64);
    let set = |bits: &mut [u64], bit: usize| bits[bit / 64] |= 1 << (bit % 64);

    // suffix_ok[i - lo_s]: every column right of i is close to `end`.
    let last_col = n + max_len as i64;
    let mut suffix_ok = vec![true; (last_col - lo_s + 2) as usize];
    for i in (lo_s..last_col).rev() {
        let k = (i - lo_s) as usize;
        suffix_ok[k] = suffix_ok[k + 1] && close(ext(i + 1), end);
    }

    // viable[bit][j][v]: with this placement, entry j of B equal to v is
    // close to its column and can still be completed to a valid B.
    let closed: Vec<Vec<VertexId>> = (0..vcount)
        .map(|v| {
            let v = VertexId::from_index(v);
            let mut c = graph.neighbors(v).to_vec();
            c.push(v);
            c.sort();
            c
        })
        .collect();
    let at = |bit: usize, j: usize, v: usize| (bit * max_len + j) * vcount + v;
    let mut viable = vec![false; placements * max_len * vcount];
    for bit in 0..placements {
        let s = lo_s + bit as i64;
        for j in (0..max_len).rev() {
            let col = s + j as i64;
            for v in 0..vcount {
                let vid = VertexId::from_index(v);
                if !close(vid, ext(col)) {
                    continue;
                }
                let here = vid == end && suffix_ok[(col - lo_s) as usize];
                let onward =
                    j + 1 < max_len && closed[v].iter().any(|c| viable[at(bit, j + 1, c.index())]);
                viable[at(bit, j, v)] = here || onward;
            }
        }
    }
    // allowed[(j * V + v) * words ..]: placements where entry j may be v.
    let mut allowed = vec![0u64; max_len * vcount * words];
    for bit in 0..placements {
        for j in 0..max_len {
            for v in 0..vcount {
                if viable[at(bit, j, v)] {
                    set(&mut allowed[(j * vcount + v) * words..][..words], bit);
                }
            }
        }
    }
    // ends[j * words ..]: placements whose columns right of entry j are
    // close to `end`.
    let mut ends = vec![0u64; max_len * words];
    for bit in 0..placements {
        for j in 0..max_len {
            if suffix_ok[bit + j] {
                set(&mut ends[j * words..][..words], bit);
            }
        }
    }
    // Placements whose columns left of B are all close to `start`.
    let mut live = vec![0u64; (max_len + 1) * words];
    let mut prefix = true;
    for (bit, s) in (lo_s..=n).enumerate() {
        if prefix {
            set(&mut live[..words], bit);
        }
        prefix = prefix && close(ext(s - 1), start);
    }
    let mut any = false;
    for w in 0..words {
        live[w] &= allowed[start.index() * words + w];
        any |= live[w] != 0;
    }
    if !any {
        return;
    }

    struct Ctx<'a> {
        closed: &'a [Vec<VertexId>],
        allowed: &'a [u64],
        ends: &'a [u64],
        dist_to_end: &'a [usize],
        start: VertexId,
        end: VertexId,
        max_len: usize,
        vcount: usize,
        words: usize,
        lo_s: i64,
    }

    fn extend(
        ctx: &Ctx<'_>,
        seq: &mut Vec<VertexId>,
        live: &mut [u64],
        out: &mut dyn FnMut(&[VertexId], i64),
    ) {
        let words = ctx.words;
        let len = seq.len();
        let cur = seq[len - 1];
        if cur == ctx.end && (len == 1 || seq[len - 2] != ctx.end) {
            let ends = &ctx.ends[(len - 1) * words..][..words];
            if let Some(w) = (0..words).find(|&w| live[w] & ends[w] != 0) {
                let bit = w * 64 + (live[w] & ends[w]).trailing_zeros() as usize;
                out(seq, ctx.lo_s + bit as i64);
            }
        }
        if len >= ctx.max_len {
            return;
        }
        let remaining = ctx.max_len - (len + 1);
        let (here, rest) = live.split_at_mut(words);
        for &c in &ctx.closed[cur.index()] {
            if len == 1 && c == ctx.start {
                continue;
            }
            if ctx.dist_to_end[c.index()] > remaining {
                continue;
            }
            let mask = &ctx.allowed[(len * ctx.vcount + c.index()) * words..][..words];
            let mut any = false;
            for w in 0..words {
                rest[w] = here[w] & mask[w];
                any |= rest[w] != 0;
            }
            if !any {
                continue;
            }
            seq.push(c);
            extend(ctx, seq, rest, out);
            seq.pop();
        }
    }

    let ctx = Ctx {
        closed: &closed,
        allowed: &allowed,
        ends: &ends,
        dist_to_end,
        start,
        end,
        max_len,
        vcount,
        words,
        lo_s,
    };
    let mut seq = Vec::with_capacity(max_len);
    seq.push(start);
    extend(&ctx, &mut seq, &mut live, visit);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_cycle;

    fn vs(g: &Graph, idx: &[u64]) -> Vec<VertexId> {
        idx.iter()
            .map(|i| g.vertex(&format!("[{i}]")).unwrap())
            .collect()
    }

    fn path(g: &Graph, idx: &[u64]) -> StablePath<VertexId> {
        StablePath::new(g, 0, vs(g, idx)).unwrap()
    }

    #[test]
    fn one_step_relation() {
        let g = build_cycle(5).unwrap();
        let gamma1 = path(&g, &[0, 1, 2, 3, 4, 0]);
        assert!(one_step_related(&g, &gamma1, &gamma1));
        let other = path(&g, &[0, 1, 1, 2]);
        assert!(!one_step_related(&g, &gamma1, &other));
        let padded = gamma1.pad(2, 1, 1).unwrap().normalize();
        assert!(one_step_related(&g, &gamma1, &padded));
        assert!(one_step_related(&g, &padded, &gamma1));
        assert!(one_step_related(&g, &gamma1, &gamma1.shift(9)));
    }

    #[test]
    fn reflexive_certificate() {
        let g = build_cycle(5).unwrap();
        let gamma1 = path(&g, &[0, 1, 2, 3, 4, 0]);
        let bounds = SearchBounds {
            max_len: 8,
            max_rows: 3,
        };
        match find_path_homotopy(&g, &gamma1, &gamma1, bounds).unwrap() {
            PathSearchOutcome::Found(cert) => assert_eq!(cert.rows.len(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn padding_certificate() {
        let g = build_cycle(5).unwrap();
        let gamma1 = path(&g, &[0, 1, 2, 3, 4, 0]);
        let target = gamma1.pad(2, 1, 1).unwrap().normalize().shift(3);
        let bounds = SearchBounds {
            max_len: 10,
            max_rows: 3,
        };
        match find_path_homotopy(&g, &gamma1, &target, bounds).unwrap() {
            PathSearchOutcome::Found(cert) => {
                assert!(cert.rows.len() <= 3);
                assert!(is_homotopy(&g, &cert.square, &gamma1, &target).unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn spike_certificate() {
        let g = build_cycle(5).unwrap();
        let f = path(&g, &[0, 1, 2]);
        let h = path(&g, &[0, 1, 2, 3, 2]);
        let bounds = SearchBounds {
            max_len: 6,
            max_rows: 4,
        };
        let PathSearchOutcome::Found(cert) = find_path_homotopy(&g, &f, &h, bounds).unwrap() else {
            panic!("expected a certificate");
        };
        for w in cert.rows.windows(2) {
            let (x, y) = (w[0].normalize(), w[1].normalize());
            assert!(one_step_related(&g, &x, &y));
        }
    }

    #[test]
    fn faces_and_bounds() {
        let g = build_cycle(5).unwrap();
        let a = path(&g, &[0, 1]);
        let b = path(&g, &[0, 4]);
        let bounds = SearchBounds {
            max_len: 4,
            max_rows: 4,
        };
        assert_eq!(
            find_path_homotopy(&g, &a, &b, bounds).unwrap(),
            PathSearchOutcome::FacesDiffer
        );
        let long = path(&g, &[0, 1, 2, 3, 4, 0]);
        assert!(find_path_homotopy(&g, &long, &long, bounds).is_err());
        let zero_rows = SearchBounds {
            max_len: 8,
            max_rows: 0,
        };
        assert!(find_path_homotopy(&g, &long, &long, zero_rows).is_err());
    }

    #[test]
    fn winding_obstruction_exhausts_small_bounds() {
        let g = build_cycle(5).unwrap();
        let gamma0 = StablePath::constant(g.base().unwrap());
        let gamma1 = path(&g, &[0, 1, 2, 3, 4, 0]);
        let bounds = SearchBounds {
            max_len: 8,
            max_rows: 8,
        };
        assert!(matches!(
            find_path_homotopy(&g, &gamma0, &gamma1, bounds).unwrap(),
            PathSearchOutcome::NotFoundWithinBounds { .. }
        ));
    }
}
