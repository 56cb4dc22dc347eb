//! Winding numbers and homotopy certificates for loops in cycles `C_k`.
//!
//! Loops are lifted to the integer line through [`CyclicCover`], where a
//! lifted path is straightened to a monotone staircase by spike collapses
//! and padding removal. Projecting those rows back down gives explicit
//! homotopies between loops of equal winding number.

use std::ops::RangeInclusive;

use crate::covering::{lift_path, CyclicCover};
use crate::error::{Error, Result};
use crate::graph::{build_cycle, cycle_label, VertexId};
use crate::homotopy::{is_homotopy, one_step_related, StableSquare};
use crate::path::{concat, RawPath, StablePath};
use crate::space::IntegerLine;

/// A stable path in the integer line.
pub type IntPath = StablePath<i64>;

/// The homotopy class of a loop at `[0]` in `C_k`, named by its winding
/// number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LoopClass {
    pub k: i64,
    pub winding: i64,
}

impl LoopClass {
    pub fn of(k: i64, loop_path: &StablePath<VertexId>) -> Result<LoopClass> {
        if k < 5 {
            return Err(Error::GirthViolation(format!("C_{k}")));
        }
        Ok(LoopClass {
            k,
            winding: winding_number(k, loop_path)?,
        })
    }

    /// The representative `γ_n`.
    pub fn representative(&self) -> Result<StablePath<VertexId>> {
        gamma_n(self.k, self.winding)
    }
}

/// `γ_n` in `C_k`: goes `n` times around the cycle through increasing
/// labels, or `|n|` times through decreasing labels when `n < 0`.
pub fn gamma_n(k: i64, n: i64) -> Result<StablePath<VertexId>> {
    let cycle = build_cycle(k)?;
    let steps = (k * n).unsigned_abs();
    let sign = if n < 0 { -1 } else { 1 };
    let seq = (0..=steps as i64)
        .map(|i| {
            cycle
                .vertex(&cycle_label((sign * i).rem_euclid(k) as u64))
                .unwrap()
        })
        .collect();
    StablePath::new(&cycle, 0, seq)
}

/// End point, divided by `k`, of the lift of a loop at `[0]` starting at 0.
pub fn winding_number(k: i64, loop_path: &StablePath<VertexId>) -> Result<i64> {
    let cover = CyclicCover::new(k)?;
    let zero = cover.vertex_of_residue(0);
    if *loop_path.start() != zero || *loop_path.end() != zero {
        return Err(Error::validation("path is not a loop at [0]"));
    }
    let lift = lift_path(&cover, loop_path, 0)?;
    Ok(lift.end() / k)
}

fn leftmost_repeat(seq: &[i64]) -> Option<usize> {
    seq.windows(2).position(|w| w[0] == w[1])
}

fn leftmost_spike(seq: &[i64]) -> Option<usize> {
    seq.windows(3).position(|w| w[0] == w[2]).map(|s| s + 1)
}

/// Chain of rows from `f` to the monotone path with the same end points.
///
/// Each step either removes one repeated entry or flattens the leftmost
/// spike `a, b, a` to `a, a, a`; both keep rows pointwise equal or
/// adjacent at their given offsets. The first row is `f` itself.
pub fn straighten_in_tree(f: &IntPath) -> Result<Vec<RawPath<i64>>> {
    if *f.start() != 0 {
        return Err(Error::validation("path must start at 0"));
    }
    let mut rows = vec![f.to_raw()];
    let mut offset = f.offset();
    let mut seq = f.seq().to_vec();
    loop {
        if let Some(s) = leftmost_repeat(&seq) {
            seq.remove(s + 1);
        } else if let Some(s) = leftmost_spike(&seq) {
            seq[s] = seq[s - 1];
        } else {
            break;
        }
        let row = RawPath::from_parts(offset, seq.clone()).normalize();
        offset = row.offset();
        seq = row.seq().to_vec();
        let prev = rows.last().unwrap().normalize();
        if !one_step_related(&IntegerLine, &prev, &row) {
            return Err(Error::InternalInconsistency(format!(
                "straightening step is not a one-step homotopy: {:?} to {:?}",
                prev.seq(),
                row.seq()
            )));
        }
        rows.push(row.to_raw());
    }
    Ok(rows)
}

/// Rows of a homotopy between two loops together with the stacked square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopCertificate {
    pub rows: Vec<RawPath<VertexId>>,
    pub square: StableSquare<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WindingOutcome {
    Homotopic(LoopCertificate),
    /// The loops wind a different number of times, so they are not
    /// homotopic.
    WindingMismatch {
        f: i64,
        g: i64,
    },
}

/// Builds a homotopy between two loops at `[0]` in `C_k`, `k ≥ 5`, or
/// reports that their winding numbers differ.
pub fn equal_winding_certificate(
    k: i64,
    f: &StablePath<VertexId>,
    g: &StablePath<VertexId>,
) -> Result<WindingOutcome> {
    if k < 5 {
        return Err(Error::GirthViolation(format!("C_{k}")));
    }
    let (wf, wg) = (winding_number(k, f)?, winding_number(k, g)?);
    if wf != wg {
        return Ok(WindingOutcome::WindingMismatch { f: wf, g: wg });
    }
    let cover = CyclicCover::new(k)?;
    let chain_f = straighten_in_tree(&lift_path(&cover, f, 0)?)?;
    let chain_g = straighten_in_tree(&lift_path(&cover, g, 0)?)?;
    let end_f = chain_f.last().unwrap();
    let end_g = chain_g.last().unwrap();
    if end_f.seq() != end_g.seq() {
        return Err(Error::InternalInconsistency(
            "straightened lifts of loops with equal winding differ".into(),
        ));
    }
    let t = end_f.offset() - end_g.offset();

    let mut lifted: Vec<RawPath<i64>> = chain_f;
    lifted.extend(chain_g.iter().rev().skip(1).map(|r| r.shifted(t)));
    let mut rows: Vec<RawPath<VertexId>> = Vec::with_capacity(lifted.len());
    for row in &lifted {
        let down = row.map(|&i| cover.vertex_of_residue(i));
        if rows.last().map(|r| r.normalize()) != Some(down.normalize()) {
            rows.push(down);
        }
    }
    let square = StableSquare::from_rows(cover.cycle(), &rows)?;
    let g_placed = g.shift(t);
    if !is_homotopy(cover.cycle(), &square, f, &g_placed)? {
        return Err(Error::InternalInconsistency(
            "projected straightening chain is not a homotopy".into(),
        ));
    }
    Ok(WindingOutcome::Homotopic(LoopCertificate { rows, square }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConcatWinding {
    pub n: i64,
    pub m: i64,
    pub winding: i64,
    pub matches: bool,
}

/// Winding number of `γ_n · γ_m` for every `n, m` in `range`.
pub fn concat_winding_report(k: i64, range: RangeInclusive<i64>) -> Result<Vec<ConcatWinding>> {
    if k < 5 {
        return Err(Error::validation(format!("k must be at least 5, got {k}")));
    }
    let gammas: Vec<(i64, StablePath<VertexId>)> = range
        .clone()
        .map(|n| Ok((n, gamma_n(k, n)?)))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(gammas.len() * gammas.len());
    for (n, gn) in &gammas {
        for (m, gm) in &gammas {
            let winding = winding_number(k, &concat(gn, gm)?.path)?;
            out.push(ConcatWinding {
                n: *n,
                m: *m,
                winding,
                matches: winding == n + m,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn labels(g: &Graph, p: &StablePath<VertexId>) -> Vec<String> {
        p.seq().iter().map(|&v| g.label(v).to_string()).collect()
    }

    fn c5_path(idx: &[u64]) -> StablePath<VertexId> {
        let g = build_cycle(5).unwrap();
        StablePath::new(
            &g,
            0,
            idx.iter()
                .map(|&i| g.vertex(&cycle_label(i)).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn generators() {
        let g = build_cycle(5).unwrap();
        assert!(gamma_n(5, 0).unwrap().is_constant());
        assert_eq!(
            labels(&g, &gamma_n(5, 1).unwrap()),
            ["[0]", "[1]", "[2]", "[3]", "[4]", "[0]"]
        );
        assert_eq!(
            labels(&g, &gamma_n(5, -1).unwrap()),
            ["[0]", "[4]", "[3]", "[2]", "[1]", "[0]"]
        );
        assert_eq!(gamma_n(7, 3).unwrap().len(), 22);
        assert!(gamma_n(2, 1).is_err());
    }

    #[test]
    fn windings() {
        assert_eq!(winding_number(5, &gamma_n(5, 3).unwrap()).unwrap(), 3);
        assert_eq!(winding_number(5, &gamma_n(5, 0).unwrap()).unwrap(), 0);
        assert_eq!(winding_number(5, &c5_path(&[0, 1, 0, 4, 0])).unwrap(), 0);
        assert_eq!(winding_number(6, &gamma_n(6, -2).unwrap()).unwrap(), -2);
        assert!(winding_number(5, &c5_path(&[0, 1])).is_err());
    }

    #[test]
    fn straightening() {
        let mono = StablePath::new(&IntegerLine, 0, vec![0, 1, 2]).unwrap();
        assert_eq!(straighten_in_tree(&mono).unwrap().len(), 1);

        let p = StablePath::new(&IntegerLine, 0, vec![0, 1, 0, 1, 2, 3, 4, 5]).unwrap();
        let chain = straighten_in_tree(&p).unwrap();
        assert_eq!(chain.last().unwrap().seq(), &[0, 1, 2, 3, 4, 5]);

        let p = StablePath::new(&IntegerLine, 0, vec![0, 1, 0]).unwrap();
        let chain = straighten_in_tree(&p).unwrap();
        assert!(chain.last().unwrap().normalize().is_constant());
        assert_eq!(*chain.last().unwrap().normalize().start(), 0);

        let p = StablePath::new(
            &IntegerLine,
            -3,
            vec![0, -1, -1, -2, -1, -2, -3, -2, -1, 0, -1],
        )
        .unwrap();
        let chain = straighten_in_tree(&p).unwrap();
        let last = chain.last().unwrap().normalize();
        assert_eq!(last.seq(), &[0, -1]);
        for w in chain.windows(2) {
            assert!(one_step_related(
                &IntegerLine,
                &w[0].normalize(),
                &w[1].normalize()
            ));
        }
        assert!(
            straighten_in_tree(&StablePath::new(&IntegerLine, 0, vec![1, 2]).unwrap()).is_err()
        );
    }

    #[test]
    fn certificates() {
        let g = build_cycle(5).unwrap();
        let g2 = gamma_n(5, 2).unwrap();
        let WindingOutcome::Homotopic(cert) = equal_winding_certificate(5, &g2, &g2).unwrap()
        else {
            panic!()
        };
        assert_eq!(cert.rows.len(), 1);

        let g1 = gamma_n(5, 1).unwrap();
        let perturbed = g1.pad(2, 1, 1).unwrap().normalize().shift(3);
        let WindingOutcome::Homotopic(cert) =
            equal_winding_certificate(5, &g1, &perturbed).unwrap()
        else {
            panic!()
        };
        assert!(is_homotopy(&g, &cert.square, &g1, &perturbed).unwrap());

        let wiggle = c5_path(&[0, 1, 2, 1, 2, 3, 4, 0, 4, 0]);
        let WindingOutcome::Homotopic(cert) = equal_winding_certificate(5, &wiggle, &g1).unwrap()
        else {
            panic!()
        };
        assert!(is_homotopy(&g, &cert.square, &wiggle, &g1).unwrap());

        assert_eq!(
            equal_winding_certificate(5, &g1, &g2).unwrap(),
            WindingOutcome::WindingMismatch { f: 1, g: 2 }
        );
        let c4 = gamma_n(4, 1).unwrap();
        assert!(matches!(
            equal_winding_certificate(4, &c4, &c4),
            Err(Error::GirthViolation(_))
        ));
    }

    #[test]
    fn concat_report() {
        let report = concat_winding_report(5, -1..=3).unwrap();
        assert_eq!(report.len(), 25);
        assert!(report.iter().all(|r| r.matches));
        let cell = |n, m| {
            report
                .iter()
                .find(|r| r.n == n && r.m == m)
                .unwrap()
                .winding
        };
        assert_eq!(cell(0, 0), 0);
        assert_eq!(cell(2, 3), 5);
        assert_eq!(
            concat_winding_report(5, -3..=2)
                .unwrap()
                .iter()
                .find(|r| r.n == 2 && r.m == -3)
                .unwrap()
                .winding,
            -1
        );
        assert!(concat_winding_report(4, 0..=1).is_err());
    }
}
