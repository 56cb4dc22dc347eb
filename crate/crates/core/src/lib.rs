//! Discrete (A-)homotopy theory for finite simple graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: finite graphs, homomorphisms, products and structural guards.
//! * [`space`]: the adjacency abstraction shared by finite graphs and the
//!   infinite integer line.
//! * [`path`]: stable maps from the infinite path (`C_1`), with the
//!   stabilization bookkeeping, faces, degeneracies, concatenation,
//!   reversal, shifting and padding.
//! * [`homotopy`]: stable squares (`C_2`), certificate checking, bounded
//!   certificate search, and homotopies between graph homomorphisms.
//! * [`covering`]: covering graphs and the path, homotopy and
//!   homomorphism lifting algorithms.
//! * [`pi1`]: winding numbers and constructive certificates for loops in
//!   cycles of length at least five.
//! * [`io`]: the line-oriented text formats used by the command line tool.

pub mod covering;
pub mod error;
pub mod graph;
pub mod homotopy;
pub mod io;
pub mod path;
pub mod pi1;
pub mod space;

pub use error::{Error, Result};
pub use graph::{Graph, GraphHom, VertexId};
pub use path::{RawPath, StablePath};
pub use space::{IntegerLine, Space};
