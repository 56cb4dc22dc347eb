#![allow(dead_code)]

use ahtk_core::graph::{build_cycle, cycle_label};
use ahtk_core::{Graph, StablePath, VertexId};
use proptest::prelude::*;

pub fn cycle_vertex(g: &Graph, r: i64, k: i64) -> VertexId {
    g.vertex(&cycle_label(r.rem_euclid(k) as u64)).unwrap()
}

pub fn walk_from(start: i64, steps: &[i64]) -> Vec<i64> {
    let mut walk = vec![start];
    for s in steps {
        walk.push(walk.last().unwrap() + s);
    }
    walk
}

/// Stable path in `C_k` following a lazy walk of at most `max_steps` steps.
pub fn cycle_path(k: i64, max_steps: usize) -> impl Strategy<Value = StablePath<VertexId>> {
    (
        -8i64..=8,
        0..k,
        prop::collection::vec(-1i64..=1, 0..=max_steps),
    )
        .prop_map(move |(offset, start, steps)| {
            let g = build_cycle(k).unwrap();
            let seq = walk_from(start, &steps)
                .into_iter()
                .map(|r| cycle_vertex(&g, r, k))
                .collect();
            StablePath::new(&g, offset, seq).unwrap()
        })
}

/// Loop at `[0]` in `C_k`: a lazy walk closed up by walking back to 0 the
/// short way round.
pub fn cycle_loop(k: i64, max_steps: usize) -> impl Strategy<Value = StablePath<VertexId>> {
    (-8i64..=8, prop::collection::vec(-1i64..=1, 0..=max_steps)).prop_map(move |(offset, steps)| {
        let g = build_cycle(k).unwrap();
        let mut walk = walk_from(0, &steps);
        let mut at = *walk.last().unwrap();
        while at.rem_euclid(k) != 0 {
            at += if at.rem_euclid(k) <= k / 2 { -1 } else { 1 };
            walk.push(at);
        }
        let seq = walk.into_iter().map(|r| cycle_vertex(&g, r, k)).collect();
        StablePath::new(&g, offset, seq).unwrap()
    })
}

/// Graph on `v0 .. v{n-1}` with the edges picked by `mask`.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let mut bit = 0;
    for a in 0..n {
        for b in a + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((labels[a].clone(), labels[b].clone()));
            }
            bit += 1;
        }
    }
    Graph::new(labels.clone(), edges, None).unwrap()
}

pub fn small_graph(max_vertices: usize) -> impl Strategy<Value = Graph> {
    (1..=max_vertices, any::<u64>()).prop_map(|(n, mask)| graph_from_mask(n, mask))
}

/// One random edit: `(kind, position, left, right, shift)`.
pub type Edit = (u8, prop::sample::Index, u32, u32, i64);

pub fn edits(max: usize) -> impl Strategy<Value = Vec<Edit>> {
    prop::collection::vec(
        (
            0u8..3,
            any::<prop::sample::Index>(),
            0u32..3,
            0u32..3,
            -4i64..=4,
        ),
        0..=max,
    )
}

/// Applies a pad, a shift, or an excursion to a neighbour and back. Each
/// of these is a homotopy rel endpoints.
pub fn apply_edit(g: &Graph, f: &StablePath<VertexId>, edit: &Edit) -> StablePath<VertexId> {
    let (kind, pos, left, right, shift) = edit;
    match kind {
        0 if f.len() >= 3 => {
            let b = f.offset() + 1 + pos.index(f.len() - 2) as i64;
            f.pad(b, *left, *right).unwrap().normalize()
        }
        1 => f.shift(*shift),
        _ => {
            let at = pos.index(f.len());
            let v = f.seq()[at];
            let nbrs = g.neighbors(v);
            let u = nbrs[*left as usize % nbrs.len()];
            let mut seq = f.seq().to_vec();
            seq.splice(at..=at, [v, u, v]);
            StablePath::new(g, f.offset(), seq).unwrap()
        }
    }
}
