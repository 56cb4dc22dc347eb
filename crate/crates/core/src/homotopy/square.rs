use crate::error::{Error, Result};
use crate::path::{Dir, RawPath, StablePath};
use crate::space::Space;

/// Coordinate axis of the infinite grid `I_∞²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    /// Horizontal: along a row.
    One,
    /// Vertical: across rows.
    Two,
}

impl Axis {
    pub fn from_index(i: u8) -> Result<Axis> {
        match i {
            1 => Ok(Axis::One),
            2 => Ok(Axis::Two),
            other => Err(Error::validation(format!(
                "axis must be 1 or 2, got {other}"
            ))),
        }
    }
}

/// A stable map `I_∞² → G` in canonical form.
///
/// `grid[r][c]` is the value at `(offset1 + c, offset2 + r)`; outside the
/// grid the map repeats its border. The grid is trimmed to the active
/// region in all four directions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StableSquare<V> {
    offset1: i64,
    offset2: i64,
    grid: Vec<Vec<V>>,
}

fn check_grid<S: Space>(space: &S, grid: &[Vec<S::Vertex>]) -> Result<()> {
    let width = grid.first().map(Vec::len).unwrap_or(0);
    if width == 0 {
        return Err(Error::validation("square grid must be non-empty"));
    }
    if let Some(r) = grid.iter().position(|row| row.len() != width) {
        return Err(Error::validation(format!(
            "square grid is not rectangular: row {r} has {} entries, expected {width}",
            grid[r].len()
        )));
    }
    for (r, row) in grid.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if !space.contains(v) {
                return Err(Error::validation(format!(
                    "grid entry ({r},{c}) is not a vertex"
                )));
            }
            if c + 1 < width && !space.equal_or_adjacent(v, &row[c + 1]) {
                return Err(Error::validation(format!(
                    "grid entries ({r},{c}) and ({r},{}) are neither equal nor adjacent",
                    c + 1
                )));
            }
            if r + 1 < grid.len() && !space.equal_or_adjacent(v, &grid[r + 1][c]) {
                return Err(Error::validation(format!(
                    "grid entries ({r},{c}) and ({},{c}) are neither equal nor adjacent",
                    r + 1
                )));
            }
        }
    }
    Ok(())
}

impl<V: Clone + Eq> StableSquare<V> {
    /// Validates a raw grid and returns its canonical representative.
    pub fn new<S: Space<Vertex = V>>(
        space: &S,
        offset1: i64,
        offset2: i64,
        grid: Vec<Vec<V>>,
    ) -> Result<Self> {
        check_grid(space, &grid)?;
        Ok(Self::normalized(offset1, offset2, grid))
    }

    /// Stacks rows at consecutive axis-2 coordinates `0, 1, ...`, each row
    /// keeping its own axis-1 placement.
    pub fn from_rows<S: Space<Vertex = V>>(space: &S, rows: &[RawPath<V>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::validation("a square needs at least one row"));
        }
        let lo = rows.iter().map(RawPath::offset).min().unwrap();
        let hi = rows.iter().map(RawPath::last_index).max().unwrap();
        let grid = rows.iter().map(|r| r.sample(lo, hi)).collect();
        Self::new(space, lo, 0, grid)
    }

    pub(crate) fn normalized(mut offset1: i64, mut offset2: i64, mut grid: Vec<Vec<V>>) -> Self {
        while grid.len() > 1 && grid[0] == grid[1] {
            grid.remove(0);
            offset2 += 1;
        }
        while grid.len() > 1 && grid[grid.len() - 1] == grid[grid.len() - 2] {
            grid.pop();
        }
        if grid.len() == 1 {
            offset2 = 0;
        }
        let column_eq = |g: &Vec<Vec<V>>, a: usize, b: usize| g.iter().all(|row| row[a] == row[b]);
        let mut lo = 0;
        let width = grid[0].len();
        while lo + 1 < width && column_eq(&grid, lo, lo + 1) {
            lo += 1;
        }
        let mut hi = width - 1;
        while hi > lo && column_eq(&grid, hi, hi - 1) {
            hi -= 1;
        }
        if lo == hi {
            offset1 = 0;
        } else {
            offset1 += lo as i64;
        }
        for row in grid.iter_mut() {
            row.truncate(hi + 1);
            row.drain(..lo);
        }
        StableSquare {
            offset1,
            offset2,
            grid,
        }
    }

    /// `m₀(H, −1)`.
    pub fn offset1(&self) -> i64 {
        self.offset1
    }

    /// `m₀(H, −2)`.
    pub fn offset2(&self) -> i64 {
        self.offset2
    }

    pub fn grid(&self) -> &[Vec<V>] {
        &self.grid
    }

    pub fn width(&self) -> usize {
        self.grid[0].len()
    }

    pub fn height(&self) -> usize {
        self.grid.len()
    }

    pub fn evaluate(&self, i: i64, j: i64) -> &V {
        let c = (i - self.offset1).clamp(0, self.width() as i64 - 1) as usize;
        let r = (j - self.offset2).clamp(0, self.height() as i64 - 1) as usize;
        &self.grid[r][c]
    }

    /// Row `r` of the grid (axis-2 coordinate `offset2 + r`).
    pub fn row(&self, r: usize) -> RawPath<V> {
        RawPath::from_parts(self.offset1, self.grid[r].clone())
    }

    /// Column `c` of the grid, read along axis 2.
    pub fn column(&self, c: usize) -> RawPath<V> {
        RawPath::from_parts(
            self.offset2,
            self.grid.iter().map(|row| row[c].clone()).collect(),
        )
    }

    /// `α²_{εi}(H)`.
    pub fn face(&self, axis: Axis, dir: Dir) -> StablePath<V> {
        match (axis, dir) {
            (Axis::Two, Dir::Neg) => self.row(0).normalize(),
            (Axis::Two, Dir::Pos) => self.row(self.height() - 1).normalize(),
            (Axis::One, Dir::Neg) => self.column(0).normalize(),
            (Axis::One, Dir::Pos) => self.column(self.width() - 1).normalize(),
        }
    }

    /// Pointwise image, re-normalized. The caller guarantees that `f` is a
    /// graph homomorphism.
    pub fn map<W: Clone + Eq>(&self, mut f: impl FnMut(&V) -> W) -> StableSquare<W> {
        let grid = self
            .grid
            .iter()
            .map(|row| row.iter().map(&mut f).collect())
            .collect();
        StableSquare::normalized(self.offset1, self.offset2, grid)
    }
}

/// `α²_{εi}`.
pub fn faces_of_square<V: Clone + Eq>(h: &StableSquare<V>, axis: Axis, dir: Dir) -> StablePath<V> {
    h.face(axis, dir)
}

/// `β²_i`: repeats `f` along the given axis.
pub fn degeneracy_square<V: Clone + Eq>(f: &StablePath<V>, axis: Axis) -> StableSquare<V> {
    match axis {
        Axis::Two => StableSquare {
            offset1: f.offset(),
            offset2: 0,
            grid: vec![f.seq().to_vec()],
        },
        Axis::One => StableSquare {
            offset1: 0,
            offset2: f.offset(),
            grid: f.seq().iter().map(|v| vec![v.clone()]).collect(),
        },
    }
}

/// Checks the homotopy conditions for `h` as a homotopy from `f` to `g`:
///
/// * (a) `f` and `g` start at the same vertex and end at the same vertex;
/// * (b) the left and right boundary columns of `h` are constant at those
///   shared endpoints;
/// * (c) the bottom row of `h` is `f` and the top row is `g`.
///
/// Rows are compared up to translation along axis 1: a row placed at a
/// different offset is a shift of the same path, and shifts are homotopic
/// to the identity. Use [`is_homotopy_exact`] to also require matching
/// offsets.
///
/// Errors when `h`, `f` or `g` does not live in `space`.
pub fn is_homotopy<S: Space>(
    space: &S,
    h: &StableSquare<S::Vertex>,
    f: &StablePath<S::Vertex>,
    g: &StablePath<S::Vertex>,
) -> Result<bool> {
    check_conditions(space, h, f, g, false)
}

/// [`is_homotopy`] with row offsets required to match.
pub fn is_homotopy_exact<S: Space>(
    space: &S,
    h: &StableSquare<S::Vertex>,
    f: &StablePath<S::Vertex>,
    g: &StablePath<S::Vertex>,
) -> Result<bool> {
    check_conditions(space, h, f, g, true)
}

/// Checks a chain of squares, each a homotopy from the top row of the
/// previous one, running from `f` to `g`. Rows are compared up to
/// translation as in [`is_homotopy`].
pub fn is_homotopy_chain<S: Space>(
    space: &S,
    chain: &[StableSquare<S::Vertex>],
    f: &StablePath<S::Vertex>,
    g: &StablePath<S::Vertex>,
) -> Result<bool> {
    if chain.is_empty() {
        return Err(Error::validation("empty certificate chain"));
    }
    let mut current = f.clone();
    for h in chain {
        let top = h.face(Axis::Two, Dir::Pos);
        if !check_conditions(space, h, &current, &top, false)? {
            return Ok(false);
        }
        current = top;
    }
    RawPath::new(space, g.offset(), g.seq().to_vec())?;
    Ok(current.seq() == g.seq())
}

fn check_conditions<S: Space>(
    space: &S,
    h: &StableSquare<S::Vertex>,
    f: &StablePath<S::Vertex>,
    g: &StablePath<S::Vertex>,
    exact: bool,
) -> Result<bool> {
    check_grid(space, &h.grid)?;
    for p in [f, g] {
        RawPath::new(space, p.offset(), p.seq().to_vec())?;
    }
    let faces_agree = f.start() == g.start() && f.end() == g.end();
    let left = h.face(Axis::One, Dir::Neg);
    let right = h.face(Axis::One, Dir::Pos);
    let columns_degenerate = left.is_constant()
        && right.is_constant()
        && left.start() == f.start()
        && right.start() == f.end();
    let bottom = h.face(Axis::Two, Dir::Neg);
    let top = h.face(Axis::Two, Dir::Pos);
    let rows_match = if exact {
        &bottom == f && &top == g
    } else {
        bottom.seq() == f.seq() && top.seq() == g.seq()
    };
    Ok(faces_agree && columns_degenerate && rows_match)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_cycle, Graph, VertexId};

    fn vs(g: &Graph, idx: &[u64]) -> Vec<VertexId> {
        idx.iter()
            .map(|i| g.vertex(&format!("[{i}]")).unwrap())
            .collect()
    }

    #[test]
    fn degeneracies_and_faces() {
        let g = build_cycle(5).unwrap();
        let gamma1 = StablePath::new(&g, 0, vs(&g, &[0, 1, 2, 3, 4, 0])).unwrap();
        let sq = degeneracy_square(&gamma1, Axis::Two);
        assert_eq!(sq.height(), 1);
        assert_eq!(sq.grid()[0], vs(&g, &[0, 1, 2, 3, 4, 0]));
        assert_eq!(faces_of_square(&sq, Axis::Two, Dir::Neg), gamma1);
        assert_eq!(faces_of_square(&sq, Axis::Two, Dir::Pos), gamma1);

        let sq1 = degeneracy_square(&gamma1, Axis::One);
        assert_eq!(sq1.face(Axis::One, Dir::Neg), gamma1);
        assert_eq!(sq1.face(Axis::One, Dir::Pos), gamma1);

        let k = StablePath::constant(vs(&g, &[3])[0]);
        let dk = degeneracy_square(&k, Axis::Two);
        assert_eq!((dk.width(), dk.height()), (1, 1));
        assert!(dk.face(Axis::One, Dir::Pos).is_constant());

        assert!(is_homotopy(&g, &sq, &gamma1, &gamma1).unwrap());
        assert!(is_homotopy_exact(&g, &sq, &gamma1, &gamma1).unwrap());
        assert!(is_homotopy_chain(&g, &[sq.clone(), sq.clone()], &gamma1, &gamma1).unwrap());
        assert!(!is_homotopy_chain(&g, std::slice::from_ref(&sq), &gamma1, &gamma1.reverse()).unwrap());
        assert!(is_homotopy_chain(&g, &[], &gamma1, &gamma1).is_err());
    }

    #[test]
    fn padding_square() {
        let g = build_cycle(5).unwrap();
        let f = StablePath::new(&g, 0, vs(&g, &[0, 1, 2, 3, 4, 0])).unwrap();
        let padded = StablePath::new(&g, 0, vs(&g, &[0, 1, 2, 2, 3, 4, 0])).unwrap();
        let grid = vec![
            vs(&g, &[0, 1, 2, 3, 4, 0, 0]),
            vs(&g, &[0, 1, 2, 2, 3, 4, 0]),
        ];
        let h = StableSquare::new(&g, 0, 0, grid).unwrap();
        assert!(is_homotopy(&g, &h, &f, &padded).unwrap());
        assert!(is_homotopy_exact(&g, &h, &f, &padded).unwrap());
        // top row ends at [1] while the target ends at [0]
        let wrong = StablePath::new(&g, 0, vs(&g, &[0, 1, 2, 2, 3, 4, 0, 1])).unwrap();
        assert!(!is_homotopy(&g, &h, &f, &wrong).unwrap());
        assert!(!is_homotopy(&g, &h, &padded, &f).unwrap());
    }

    #[test]
    fn shifted_rows_match_up_to_translation() {
        let g = build_cycle(5).unwrap();
        let f = StablePath::new(&g, 0, vs(&g, &[0, 1, 2])).unwrap();
        let sq = degeneracy_square(&f, Axis::Two);
        assert!(is_homotopy(&g, &sq, &f, &f.shift(4)).unwrap());
        assert!(!is_homotopy_exact(&g, &sq, &f, &f.shift(4)).unwrap());
    }

    #[test]
    fn grid_validation() {
        let g = build_cycle(5).unwrap();
        assert!(StableSquare::new(&g, 0, 0, vec![vs(&g, &[0, 2])]).is_err());
        assert!(StableSquare::new(&g, 0, 0, vec![vs(&g, &[0]), vs(&g, &[2])]).is_err());
        assert!(StableSquare::new(&g, 0, 0, vec![vs(&g, &[0, 1]), vs(&g, &[0])]).is_err());
        assert!(StableSquare::<VertexId>::new(&g, 0, 0, vec![]).is_err());
    }

    #[test]
    fn normalization_trims_all_four_sides() {
        let g = build_cycle(5).unwrap();
        let grid = vec![
            vs(&g, &[0, 0, 1, 1]),
            vs(&g, &[0, 0, 1, 1]),
            vs(&g, &[0, 0, 0, 1]),
            vs(&g, &[0, 0, 0, 1]),
        ];
        let h = StableSquare::new(&g, 10, 20, grid).unwrap();
        assert_eq!((h.offset1(), h.offset2()), (11, 21));
        assert_eq!(h.grid(), &[vs(&g, &[0, 1, 1]), vs(&g, &[0, 0, 1])]);
        assert_eq!(h.evaluate(-100, -100), &vs(&g, &[0])[0]);
        assert_eq!(h.evaluate(100, 100), &vs(&g, &[1])[0]);
    }
}
