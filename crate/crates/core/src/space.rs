use std::fmt::Debug;
use std::hash::Hash;

/// Anything stable maps can land in: a vertex set with a symmetric,
/// irreflexive adjacency relation.
///
/// Finite graphs implement this with [`crate::VertexId`] vertices. The
/// infinite path is [`IntegerLine`], whose vertices are the integers.
pub trait Space {
    type Vertex: Clone + Eq + Ord + Hash + Debug;

    fn contains(&self, v: &Self::Vertex) -> bool;

    fn is_adjacent(&self, a: &Self::Vertex, b: &Self::Vertex) -> bool;

    /// The graph-homomorphism edge condition for a pair of images.
    fn equal_or_adjacent(&self, a: &Self::Vertex, b: &Self::Vertex) -> bool {
        a == b || self.is_adjacent(a, b)
    }

    /// Printable token for `v`, as used in the text formats.
    fn label_of(&self, v: &Self::Vertex) -> String;

    /// Resolve a printable token back into a vertex.
    fn parse_vertex(&self, token: &str) -> Option<Self::Vertex>;
}

/// The infinite path `I_∞`: vertices are the integers, `i ~ i + 1`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntegerLine;

impl Space for IntegerLine {
    type Vertex = i64;

    fn contains(&self, _v: &i64) -> bool {
        true
    }

    fn is_adjacent(&self, a: &i64, b: &i64) -> bool {
        a.abs_diff(*b) == 1
    }

    fn label_of(&self, v: &i64) -> String {
        v.to_string()
    }

    fn parse_vertex(&self, token: &str) -> Option<i64> {
        token.parse().ok()
    }
}
