mod common;

use ahtk_core::graph::build_cycle;
use ahtk_core::homotopy::{degeneracy_square, Axis};
use ahtk_core::io::{
    parse_graph, parse_path, parse_raw_path, parse_square, write_graph, write_path, write_raw_path,
    write_square,
};
use ahtk_core::IntegerLine;
use common::{cycle_path, small_graph};
use proptest::prelude::*;

proptest! {
    #[test]
    fn graph_text_round_trips(g in small_graph(8)) {
        let text = write_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(write_graph(&back), text);
    }

    #[test]
    fn path_text_round_trips(f in cycle_path(5, 20)) {
        let g = build_cycle(5).unwrap();
        let text = write_path(&g, &f);
        prop_assert_eq!(parse_path(&g, &text).unwrap(), f.clone());
        let raw = f.to_raw();
        prop_assert_eq!(write_raw_path(&g, &parse_raw_path(&g, &write_raw_path(&g, &raw)).unwrap()), write_raw_path(&g, &raw));
        let sq = degeneracy_square(&f, Axis::One);
        let text = write_square(&g, &sq);
        prop_assert_eq!(parse_square(&g, &text).unwrap(), sq);
    }

    #[test]
    fn integer_paths_round_trip(offset in -50i64..50, steps in prop::collection::vec(-1i64..=1, 0..20)) {
        let f = ahtk_core::StablePath::new(&IntegerLine, offset, common::walk_from(3, &steps)).unwrap();
        prop_assert_eq!(parse_path(&IntegerLine, &write_path(&IntegerLine, &f)).unwrap(), f);
    }
}
