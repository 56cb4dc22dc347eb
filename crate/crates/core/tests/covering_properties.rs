mod common;

use std::sync::Arc;

use ahtk_core::covering::{
    lift_hom_through_cover, lift_homotopy, lift_path, Cover, CyclicCover, FiniteCover,
    HomLiftOutcome,
};
use ahtk_core::graph::{build_cycle, is_connected, is_graph_hom};
use ahtk_core::homotopy::{
    enumerate_homs, find_path_homotopy, is_homotopy, Axis, PathSearchOutcome, SearchBounds,
};
use ahtk_core::path::Dir;
use ahtk_core::{IntegerLine, Space};
use common::{apply_edit, cycle_path, edits, small_graph};
use proptest::prelude::*;

proptest! {
    #[test]
    fn lifts_project_back(f in cycle_path(7, 30), sheet in -3i64..=3) {
        let cover = CyclicCover::new(7).unwrap();
        let start = cover.residue(*f.start()) + 7 * sheet;
        let lift = lift_path(&cover, &f, start).unwrap();
        prop_assert_eq!(lift.offset(), f.offset());
        for i in f.offset() - 2..=f.m_plus() + 2 {
            prop_assert_eq!(cover.project(lift.evaluate(i)), *f.evaluate(i));
        }
        for w in lift.seq().windows(2) {
            prop_assert!(IntegerLine.equal_or_adjacent(&w[0], &w[1]));
        }
    }

    #[test]
    fn finite_and_symbolic_lifts_agree(f in cycle_path(5, 30)) {
        let fin = FiniteCover::modular(15, 5).unwrap();
        let cyc = CyclicCover::new(5).unwrap();
        let r = cyc.residue(*f.start());
        let total = fin.total_graph().clone();
        let start = total.vertex(&format!("[{r}]")).unwrap();
        let a = lift_path(&fin, &f, start).unwrap();
        let b = lift_path(&cyc, &f, r).unwrap();
        prop_assert_eq!(a.offset(), b.offset());
        for (x, y) in a.seq().iter().zip(b.seq()) {
            prop_assert_eq!(total.label(*x), format!("[{}]", y.rem_euclid(15)));
        }
    }

    #[test]
    fn short_cycles_do_not_block_path_lifting(f in cycle_path(3, 30)) {
        let cover = FiniteCover::modular(6, 3).unwrap();
        let total = cover.total_graph().clone();
        for start in total.vertices().filter(|&w| cover.project(&w) == *f.start()) {
            let lift = lift_path(&cover, &f, start).unwrap();
            prop_assert_eq!(lift.map(|w| cover.project(w)), f.clone());
        }
    }

    #[test]
    fn homotopy_lifts_are_column_lifts(f in cycle_path(5, 6), moves in edits(2), sheet in -2i64..=2) {
        let g = build_cycle(5).unwrap();
        let cover = CyclicCover::new(5).unwrap();
        let h = moves.iter().fold(f.clone(), |p, e| apply_edit(&g, &p, e));
        let bounds = SearchBounds { max_len: f.len().max(h.len()) + 1, max_rows: 4 };
        let PathSearchOutcome::Found(cert) = find_path_homotopy(&g, &f, &h, bounds).unwrap() else {
            return Ok(());
        };
        let sq = cert.square;
        let bottom = sq.face(Axis::Two, Dir::Neg);
        let lifted_bottom = lift_path(&cover, &bottom, cover.residue(*bottom.start()) + 5 * sheet).unwrap();
        let lifted = lift_homotopy(&cover, &sq, &lifted_bottom).unwrap();
        let top = lifted.face(Axis::Two, Dir::Pos);
        prop_assert!(is_homotopy(&IntegerLine, &lifted, &lifted_bottom, &top).unwrap());
        prop_assert_eq!(top.map(|w| cover.project(w)), sq.face(Axis::Two, Dir::Pos));
        for c in 0..sq.width() {
            let column = sq.column(c).normalize();
            let i = sq.offset1() + c as i64;
            let expected = lift_path(&cover, &column, *lifted_bottom.evaluate(i)).unwrap();
            prop_assert_eq!(lifted.column(c).normalize(), expected);
        }
    }

    #[test]
    fn hom_lifts_are_homs_over_the_map(k in small_graph(5), pick in any::<prop::sample::Index>()) {
        prop_assume!(is_connected(&k));
        let k = Arc::new(k.with_base(k.vertices().next()).unwrap());
        let cover = FiniteCover::modular(10, 5).unwrap();
        let homs = enumerate_homs(&k, cover.base_arc(), true).unwrap();
        let f = &homs[pick.index(homs.len())];
        let start = cover.total_graph().base().unwrap();
        match lift_hom_through_cover(&cover, f, start).unwrap() {
            HomLiftOutcome::Lift(lift) => {
                prop_assert!(is_graph_hom(&lift.to_label_map(), &k, cover.total_graph(), false).unwrap());
                for v in k.vertices() {
                    prop_assert_eq!(cover.project(&lift.apply(v)), f.apply(v));
                }
            }
            HomLiftOutcome::NoLift { witness, .. } => {
                let image = witness.map(|v| f.apply(*v));
                let lifted = lift_path(&CyclicCover::new(5).unwrap(), &image, 0).unwrap();
                prop_assert!(lifted.end().rem_euclid(10) != 0);
            }
        }
    }
}
