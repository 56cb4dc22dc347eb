mod common;

use std::sync::Arc;

use ahtk_core::graph::{build_cycle, is_graph_hom};
use ahtk_core::homotopy::{
    enumerate_homs, find_path_homotopy, homotopy_component, is_homotopy, one_step_related,
    search_map_homotopy, MapSearchOutcome, PathSearchOutcome, SearchBounds,
};
use ahtk_core::{Graph, GraphHom};
use common::{apply_edit, cycle_path, edits};
use proptest::prelude::*;

fn chain_between(f: &GraphHom, g: &GraphHom) -> ahtk_core::homotopy::MapHomotopyChain {
    match search_map_homotopy(f, g).unwrap() {
        MapSearchOutcome::Found(chain) => chain,
        other => panic!("{other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn found_certificates_check(f in cycle_path(5, 6), moves in edits(2)) {
        let g = build_cycle(5).unwrap();
        let h = moves.iter().fold(f.clone(), |p, e| apply_edit(&g, &p, e));
        let bounds = SearchBounds { max_len: f.len().max(h.len()) + 1, max_rows: 4 };
        match find_path_homotopy(&g, &f, &h, bounds).unwrap() {
            PathSearchOutcome::Found(cert) => {
                prop_assert!(is_homotopy(&g, &cert.square, &f, &h).unwrap());
                prop_assert!(cert.rows.len() <= bounds.max_rows);
                for w in cert.rows.windows(2) {
                    prop_assert!(one_step_related(&g, &w[0].normalize(), &w[1].normalize()));
                }
            }
            PathSearchOutcome::NotFoundWithinBounds { .. } => {}
            PathSearchOutcome::FacesDiffer => prop_assert!(false, "edits keep the faces"),
        }
    }

    #[test]
    fn one_step_is_reflexive_and_symmetric(f in cycle_path(6, 10), moves in edits(1)) {
        let g = build_cycle(6).unwrap();
        prop_assert!(one_step_related(&g, &f, &f));
        let h = moves.iter().fold(f.clone(), |p, e| apply_edit(&g, &p, e));
        prop_assert_eq!(one_step_related(&g, &f, &h), one_step_related(&g, &h, &f));
    }
}

fn check_equivalence_on(k: i64, third_limit: usize) {
    let c = Arc::new(build_cycle(k).unwrap());
    let homs = enumerate_homs(&c, &c, false).unwrap();
    for f in &homs {
        let refl = chain_between(f, f);
        assert_eq!(refl.frames.len(), 1);
        for g in &homs {
            let fg = chain_between(f, g);
            assert!(fg.validate().unwrap());
            assert!(fg.reversed().validate().unwrap());
            for frame in &fg.frames {
                assert!(is_graph_hom(&frame.to_label_map(), &c, &c, false).unwrap());
            }
            for h in homs.iter().take(third_limit) {
                let gh = chain_between(g, h);
                let fh = fg.then(&gh).unwrap();
                assert!(fh.validate().unwrap());
                assert_eq!(fh.first(), f);
                assert_eq!(fh.last(), h);
            }
        }
    }
}

#[test]
fn map_homotopy_is_an_equivalence_on_c3() {
    check_equivalence_on(3, usize::MAX);
}

#[test]
fn map_homotopy_is_an_equivalence_on_c4() {
    check_equivalence_on(4, 4);
}

#[test]
fn identity_component_of_c5_is_automorphisms() {
    let c5: Arc<Graph> = Arc::new(build_cycle(5).unwrap());
    let component = homotopy_component(&GraphHom::identity(c5), false);
    assert_eq!(component.len(), 5);
    assert!(component.iter().all(|f| f.image_size() == 5));
}
