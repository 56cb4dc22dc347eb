//! Homotopies of stable paths and of graph homomorphisms.

pub mod maps;
pub mod search;
pub mod square;

pub use maps::{
    enumerate_homs, homotopy_component, is_contractible, map_one_step, search_map_homotopy,
    ContractionMode, ContractionReport, MapHomotopyChain, MapSearchOutcome,
};
pub use search::{
    aligning_shift, find_path_homotopy, one_step_related, PathCertificate, PathSearchOutcome,
    SearchBounds,
};
pub use square::{
    degeneracy_square, faces_of_square, is_homotopy, is_homotopy_chain, is_homotopy_exact, Axis,
    StableSquare,
};
