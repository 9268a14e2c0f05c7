//! Uniform Cartesian mesh and storage for the four families of degrees of
//! freedom: cell averages, x-face values, y-face values and node values.
//!
//! All arrays use signed indices. Interior entries of a family with extents
//! `(nx, ny)` are `0..nx` by `0..ny`; every family carries [`GHOST`] extra
//! layers on each side. A point located on the vertical grid line `x_i`
//! (x-faces, nodes) has x-index `i`; a point at a cell center in x (cell
//! averages, y-faces) has x-index of its cell. Same for y.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::State;

/// Ghost width on every side of every DoF family.
pub const GHOST: usize = 2;

/// Uniform Cartesian grid on `[x0, x1] x [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub n1: usize,
    pub n2: usize,
    pub dx: f64,
    pub dy: f64,
    pub ghost: usize,
}

impl Grid {
    /// Builds the grid with `n1 x n2` cells.
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64, n1: usize, n2: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::Config(format!("cell counts must be positive, got {n1}x{n2}")));
        }
        if !(x1 - x0 > 0.0) || !(y1 - y0 > 0.0) {
            return Err(Error::Config(format!(
                "domain extents must be positive, got [{x0}, {x1}] x [{y0}, {y1}]"
            )));
        }
        Ok(Grid {
            x0,
            x1,
            y0,
            y1,
            n1,
            n2,
            dx: (x1 - x0) / n1 as f64,
            dy: (y1 - y0) / n2 as f64,
            ghost: GHOST,
        })
    }

    /// Coordinate of grid line `i` (may lie in the ghost region).
    #[inline]
    pub fn x_line(&self, i: isize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    #[inline]
    pub fn y_line(&self, j: isize) -> f64 {
        self.y0 + j as f64 * self.dy
    }

    #[inline]
    pub fn x_center(&self, i: isize) -> f64 {
        self.x0 + (i as f64 + 0.5) * self.dx
    }

    #[inline]
    pub fn y_center(&self, j: isize) -> f64 {
        self.y0 + (j as f64 + 0.5) * self.dy
    }

    /// Physical location of entry `(i, j)` of `family`.
    pub fn location(&self, family: Family, i: isize, j: isize) -> (f64, f64) {
        let x = if family.on_x_lines() { self.x_line(i) } else { self.x_center(i) };
        let y = if family.on_y_lines() { self.y_line(j) } else { self.y_center(j) };
        (x, y)
    }

    /// Interior extents of `family`.
    pub fn extents(&self, family: Family) -> (usize, usize) {
        let nx = self.n1 + family.on_x_lines() as usize;
        let ny = self.n2 + family.on_y_lines() as usize;
        (nx, ny)
    }

    pub fn cell_area(&self) -> f64 {
        self.dx * self.dy
    }
}

/// The four kinds of degrees of freedom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Avg,
    FaceX,
    FaceY,
    Node,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Avg, Family::FaceX, Family::FaceY, Family::Node];
    pub const POINTS: [Family; 3] = [Family::FaceX, Family::FaceY, Family::Node];

    /// Whether entries sit on vertical grid lines.
    pub fn on_x_lines(self) -> bool {
        matches!(self, Family::FaceX | Family::Node)
    }

    /// Whether entries sit on horizontal grid lines.
    pub fn on_y_lines(self) -> bool {
        matches!(self, Family::FaceY | Family::Node)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Avg => "avg",
            Family::FaceX => "facex",
            Family::FaceY => "facey",
            Family::Node => "node",
        }
    }
}

/// Row-major 2D array with a ghost frame, indexed by signed `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Array2<T> {
    nx: usize,
    ny: usize,
    g: usize,
    stride: usize,
    data: Vec<T>,
}

impl<T: Copy + Send + Sync> Array2<T> {
    pub fn new(nx: usize, ny: usize, g: usize, fill: T) -> Self {
        let stride = nx + 2 * g;
        Array2 {
            nx,
            ny,
            g,
            stride,
            data: vec![fill; stride * (ny + 2 * g)],
        }
    }

    /// Interior extents.
    #[inline]
    pub fn extents(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    #[inline]
    pub fn ghost(&self) -> usize {
        self.g
    }

    #[inline(always)]
    fn offset(&self, i: isize, j: isize) -> usize {
        let g = self.g as isize;
        if cfg!(debug_assertions) && !(i >= -g && i < self.nx as isize + g && j >= -g && j < self.ny as isize + g) {
            out_of_bounds(i, j, self.nx, self.ny, self.g);
        }
        (j + g) as usize * self.stride + (i + g) as usize
    }

    #[inline(always)]
    pub fn get(&self, i: isize, j: isize) -> T {
        self.data[self.offset(i, j)]
    }

    #[inline(always)]
    pub fn get_ref(&self, i: isize, j: isize) -> &T {
        &self.data[self.offset(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: isize, j: isize, v: T) {
        let o = self.offset(i, j);
        self.data[o] = v;
    }

    /// Interior entries in row-major order.
    pub fn interior(&self) -> impl Iterator<Item = (isize, isize, T)> + '_ {
        let (nx, g, stride) = (self.nx, self.g, self.stride);
        (0..self.ny).flat_map(move |j| {
            let row = &self.data[(j + g) * stride + g..(j + g) * stride + g + nx];
            row.iter().enumerate().map(move |(i, v)| (i as isize, j as isize, *v))
        })
    }

    /// Interior rows as slices.
    pub fn rows(&self) -> impl Iterator<Item = &[T]> + '_ {
        let (nx, g, stride) = (self.nx, self.g, self.stride);
        (0..self.ny).map(move |j| &self.data[(j + g) * stride + g..(j + g) * stride + g + nx])
    }

    /// Fills rows `j` in `rows` (ghost indices allowed), columns `cols`, with
    /// `f(i, j)`. Rows are processed in parallel.
    pub fn fill_with<F>(&mut self, cols: std::ops::Range<isize>, rows: std::ops::Range<isize>, f: F)
    where
        F: Fn(isize, isize) -> T + Sync,
    {
        let g = self.g as isize;
        let stride = self.stride;
        let row_lo = (rows.start + g) as usize;
        let row_hi = (rows.end + g) as usize;
        debug_assert!(cols.start >= -g && cols.end <= self.nx as isize + g);
        self.data[row_lo * stride..row_hi * stride]
            .par_chunks_mut(stride)
            .enumerate()
            .for_each(|(r, row)| {
                let j = rows.start + r as isize;
                for i in cols.clone() {
                    row[(i + g) as usize] = f(i, j);
                }
            });
    }

    /// Raw storage including ghosts.
    pub fn raw(&self) -> &[T] {
        &self.data
    }

    pub fn raw_mut(&mut self) -> &mut [T] {
        &mut self.data
    }
}

#[cold]
#[inline(never)]
fn out_of_bounds(i: isize, j: isize, nx: usize, ny: usize, g: usize) -> ! {
    panic!("index ({i}, {j}) outside {nx}x{ny} with ghost {g}")
}

/// The active flux unknowns: cell averages plus point values on x-faces,
/// y-faces and nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct DofField<const M: usize> {
    pub avg: Array2<State<M>>,
    pub facex: Array2<State<M>>,
    pub facey: Array2<State<M>>,
    pub node: Array2<State<M>>,
}

impl<const M: usize> DofField<M> {
    /// Zero-initialized storage for `grid`.
    pub fn new(grid: &Grid) -> Self {
        let mk = |f: Family| {
            let (nx, ny) = grid.extents(f);
            Array2::new(nx, ny, grid.ghost, State::zero())
        };
        DofField {
            avg: mk(Family::Avg),
            facex: mk(Family::FaceX),
            facey: mk(Family::FaceY),
            node: mk(Family::Node),
        }
    }

    pub fn family(&self, f: Family) -> &Array2<State<M>> {
        match f {
            Family::Avg => &self.avg,
            Family::FaceX => &self.facex,
            Family::FaceY => &self.facey,
            Family::Node => &self.node,
        }
    }

    pub fn family_mut(&mut self, f: Family) -> &mut Array2<State<M>> {
        match f {
            Family::Avg => &mut self.avg,
            Family::FaceX => &mut self.facex,
            Family::FaceY => &mut self.facey,
            Family::Node => &mut self.node,
        }
    }

    /// `self <- a*self + b*other` on all storage (ghosts included).
    pub fn blend(&mut self, a: f64, other: &DofField<M>, b: f64) {
        for f in Family::ALL {
            let dst = self.family_mut(f).raw_mut();
            let src = other.family(f).raw();
            dst.par_iter_mut().zip(src.par_iter()).for_each(|(d, s)| {
                *d = d.lincomb(a, *s, b);
            });
        }
    }

    /// Number of interior DoFs per component, over all families.
    pub fn interior_len(&self) -> usize {
        Family::ALL
            .iter()
            .map(|&f| {
                let (nx, ny) = self.family(f).extents();
                nx * ny
            })
            .sum()
    }

    /// Componentwise minimum and maximum over the interior of `family`.
    pub fn range(&self, family: Family) -> (State<M>, State<M>) {
        let mut lo = State::splat(f64::INFINITY);
        let mut hi = State::splat(f64::NEG_INFINITY);
        for (_, _, u) in self.family(family).interior() {
            lo = lo.zip_map(u, f64::min);
            hi = hi.zip_map(u, f64::max);
        }
        (lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_rejects_degenerate_input() {
        assert!(Grid::new(0.0, 1.0, 0.0, 1.0, 0, 4).is_err());
        assert!(Grid::new(1.0, 1.0, 0.0, 1.0, 4, 4).is_err());
        assert!(Grid::new(0.0, 1.0, 0.0, f64::NAN, 4, 4).is_err());
    }

    #[test]
    fn locations_follow_the_staggering() {
        let g = Grid::new(-1.0, 1.0, 0.0, 3.0, 4, 3).unwrap();
        assert_eq!((g.dx, g.dy), (0.5, 1.0));
        assert_eq!(g.location(Family::Avg, 0, 0), (-0.75, 0.5));
        assert_eq!(g.location(Family::FaceX, 4, 2), (1.0, 2.5));
        assert_eq!(g.location(Family::FaceY, 1, 3), (-0.25, 3.0));
        assert_eq!(g.location(Family::Node, -1, -2), (-1.5, -2.0));
        assert_eq!(g.extents(Family::Avg), (4, 3));
        assert_eq!(g.extents(Family::FaceX), (5, 3));
        assert_eq!(g.extents(Family::FaceY), (4, 4));
        assert_eq!(g.extents(Family::Node), (5, 4));
        assert_eq!(g.cell_area(), 0.5);
    }

    #[test]
    fn ghost_indices_address_distinct_storage() {
        let mut a = Array2::new(3, 2, 2, 0usize);
        let mut k = 0;
        for j in -2..4 {
            for i in -2..5 {
                a.set(i, j, k);
                k += 1;
            }
        }
        assert_eq!(a.raw(), (0..k).collect::<Vec<_>>().as_slice());
        assert_eq!(a.get(0, 0), 2 * 7 + 2);
        let interior: Vec<_> = a.interior().map(|(i, j, _)| (i, j)).collect();
        assert_eq!(interior, [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)]);
        let rows: Vec<Vec<usize>> = a.rows().map(|r| r.to_vec()).collect();
        assert_eq!(rows, [vec![16, 17, 18], vec![23, 24, 25]]);
    }

    #[test]
    #[should_panic(expected = "outside")]
    fn out_of_frame_access_panics() {
        Array2::new(3, 2, 2, 0.0).get(5, 0);
    }

    #[test]
    fn fill_with_covers_requested_rows_only() {
        let mut a = Array2::new(4, 4, 2, 0.0);
        a.fill_with(-2..6, -1..1, |i, j| (i + 10 * j) as f64);
        assert_eq!(a.get(-2, -1), -12.0);
        assert_eq!(a.get(5, 0), 5.0);
        assert_eq!(a.get(0, 1), 0.0);
        assert_eq!(a.get(0, -2), 0.0);
    }

    #[test]
    fn field_blend_and_range() {
        let g = Grid::new(0.0, 1.0, 0.0, 1.0, 2, 2).unwrap();
        let mut a = DofField::<2>::new(&g);
        let mut b = DofField::<2>::new(&g);
        a.avg.set(0, 0, State([1.0, 2.0]));
        b.avg.set(0, 0, State([3.0, -2.0]));
        b.node.set(2, 2, State([4.0, 4.0]));
        a.blend(0.5, &b, 0.5);
        assert_eq!(a.avg.get(0, 0), State([2.0, 0.0]));
        assert_eq!(a.node.get(2, 2), State([2.0, 2.0]));
        assert_eq!(a.range(Family::Avg), (State([0.0, 0.0]), State([2.0, 0.0])));
        assert_eq!(a.interior_len(), 4 + 6 + 6 + 9);
    }
}
