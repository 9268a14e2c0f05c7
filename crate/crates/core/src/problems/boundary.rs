//! Ghost-layer fills for the four DoF families.
//!
//! Sides are filled in two passes: left and right over interior rows, then
//! bottom and top over every column including the ghost columns, so corner
//! ghosts see already-filled side values. A DoF family either lives on the
//! grid lines normal to a side (nodes and x-faces for the left/right sides)
//! or between them (cell averages and y-faces); mirroring and wrapping differ
//! by half a cell between the two.

use std::fmt;
use std::sync::Arc;

use crate::equations::Equation;
use crate::error::{Error, Result};
use crate::mesh::{Array2, DofField, Family, Grid};
use crate::state::{Axis, State};

/// State prescribed as a function of `(x, y, t)`.
pub type FieldFn<const M: usize> = Arc<dyn Fn(f64, f64, f64) -> State<M> + Send + Sync>;

#[derive(Clone)]
pub enum Boundary<const M: usize> {
    Periodic,
    /// Zeroth-order extrapolation of the outermost interior value.
    Outflow,
    /// Mirror image with negated normal momentum.
    Reflective,
    Dirichlet(State<M>),
    /// Ghost values evaluated at their own location and the stage time.
    Prescribed(FieldFn<M>),
    /// `before` below coordinate `at` along the side, `after` above it.
    Split {
        at: f64,
        before: Box<Boundary<M>>,
        after: Box<Boundary<M>>,
    },
}

impl<const M: usize> fmt::Debug for Boundary<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Periodic => f.write_str("periodic"),
            Boundary::Outflow => f.write_str("outflow"),
            Boundary::Reflective => f.write_str("reflective"),
            Boundary::Dirichlet(s) => write!(f, "dirichlet{:?}", s.0),
            Boundary::Prescribed(_) => f.write_str("prescribed"),
            Boundary::Split { at, before, after } => write!(f, "split({before:?} | {at} | {after:?})"),
        }
    }
}

impl<const M: usize> Boundary<M> {
    fn contains_periodic(&self) -> bool {
        match self {
            Boundary::Periodic => true,
            Boundary::Split { before, after, .. } => before.contains_periodic() || after.contains_periodic(),
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Left, Side::Right, Side::Bottom, Side::Top];

    pub fn axis(self) -> Axis {
        match self {
            Side::Left | Side::Right => Axis::X,
            Side::Bottom | Side::Top => Axis::Y,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Boundaries<const M: usize> {
    pub left: Boundary<M>,
    pub right: Boundary<M>,
    pub bottom: Boundary<M>,
    pub top: Boundary<M>,
}

impl<const M: usize> Boundaries<M> {
    pub fn periodic() -> Self {
        Self::uniform(Boundary::Periodic)
    }

    pub fn uniform(b: Boundary<M>) -> Self {
        Boundaries {
            left: b.clone(),
            right: b.clone(),
            bottom: b.clone(),
            top: b,
        }
    }

    pub fn side(&self, side: Side) -> &Boundary<M> {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
            Side::Bottom => &self.bottom,
            Side::Top => &self.top,
        }
    }

    /// Periodicity must be paired and cannot be mixed with other kinds.
    pub fn validate(&self) -> Result<()> {
        for (a, b, name) in [(&self.left, &self.right, "x"), (&self.bottom, &self.top, "y")] {
            let pa = matches!(a, Boundary::Periodic);
            let pb = matches!(b, Boundary::Periodic);
            if pa != pb || (!pa && (a.contains_periodic() || b.contains_periodic())) {
                return Err(Error::Config(format!(
                    "periodic boundaries in {name} must be set on both sides ({a:?} / {b:?})"
                )));
            }
        }
        Ok(())
    }

    pub fn is_periodic(&self, axis: Axis) -> bool {
        match axis {
            Axis::X => matches!(self.left, Boundary::Periodic),
            Axis::Y => matches!(self.bottom, Boundary::Periodic),
        }
    }
}

/// Fills the ghost layers of every family at time `t`.
pub fn fill_ghosts<E: Equation<M>, const M: usize>(
    eq: &E,
    grid: &Grid,
    bc: &Boundaries<M>,
    dofs: &mut DofField<M>,
    t: f64,
) {
    for family in Family::ALL {
        fill_family(eq, grid, bc, family, dofs.family_mut(family), t);
    }
}

/// Fills the ghost layers of a single family.
pub fn fill_family<E: Equation<M>, const M: usize>(
    eq: &E,
    grid: &Grid,
    bc: &Boundaries<M>,
    family: Family,
    a: &mut Array2<State<M>>,
    t: f64,
) {
    let (nx, ny) = grid.extents(family);
    let g = a.ghost() as isize;
    let (nx, ny) = (nx as isize, ny as isize);

    for side in [Side::Left, Side::Right] {
        for j in 0..ny {
            fill_line(eq, grid, bc.side(side), side, family, a, j, t, g);
        }
    }
    for side in [Side::Bottom, Side::Top] {
        for i in -g..nx + g {
            fill_line(eq, grid, bc.side(side), side, family, a, i, t, g);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn fill_line<E: Equation<M>, const M: usize>(
    eq: &E,
    grid: &Grid,
    b: &Boundary<M>,
    side: Side,
    family: Family,
    a: &mut Array2<State<M>>,
    line: isize,
    t: f64,
    g: isize,
) {
    let axis = side.axis();
    let (nx, ny) = a.extents();
    let n = match axis {
        Axis::X => nx as isize,
        Axis::Y => ny as isize,
    };
    // Families with a DoF on the boundary itself.
    let on_line = match axis {
        Axis::X => family.on_x_lines(),
        Axis::Y => family.on_y_lines(),
    };
    let lower = matches!(side, Side::Left | Side::Bottom);
    let at = |normal: isize| match axis {
        Axis::X => (normal, line),
        Axis::Y => (line, normal),
    };
    // Boundary DoF (on-line families) or first interior DoF.
    let edge = if lower { 0 } else { n - 1 };
    let ghost = |k: isize| if lower { -k } else { n - 1 + k };
    let mirror = |k: isize| {
        let d = if on_line { k } else { k - 1 };
        if lower {
            d
        } else {
            n - 1 - d
        }
    };

    if let Boundary::Periodic = b {
        if on_line {
            // Index n-1 is the image of 0 on the upper side.
            if lower {
                let (i0, j0) = at(0);
                let (i1, j1) = at(n - 1);
                a.set(i1, j1, a.get(i0, j0));
                for k in 1..=g {
                    let (gi, gj) = at(-k);
                    let (si, sj) = at(n - 1 - k);
                    a.set(gi, gj, a.get(si, sj));
                }
            } else {
                for k in 1..=g {
                    let (gi, gj) = at(n - 1 + k);
                    let (si, sj) = at(k);
                    a.set(gi, gj, a.get(si, sj));
                }
            }
        } else {
            for k in 1..=g {
                let (gi, gj, si, sj) = if lower {
                    let (gi, gj) = at(-k);
                    let (si, sj) = at(n - k);
                    (gi, gj, si, sj)
                } else {
                    let (gi, gj) = at(n - 1 + k);
                    let (si, sj) = at(k - 1);
                    (gi, gj, si, sj)
                };
                a.set(gi, gj, a.get(si, sj));
            }
        }
        return;
    }

    for k in 1..=g {
        let (gi, gj) = at(ghost(k));
        let value = ghost_value(eq, grid, b, axis, family, a, at(edge), at(mirror(k)), (gi, gj), t);
        a.set(gi, gj, value);
    }
}

#[allow(clippy::too_many_arguments)]
fn ghost_value<E: Equation<M>, const M: usize>(
    eq: &E,
    grid: &Grid,
    b: &Boundary<M>,
    axis: Axis,
    family: Family,
    a: &Array2<State<M>>,
    edge: (isize, isize),
    mirror: (isize, isize),
    ghost: (isize, isize),
    t: f64,
) -> State<M> {
    match b {
        Boundary::Outflow => a.get(edge.0, edge.1),
        Boundary::Reflective => eq.reflect(a.get_ref(mirror.0, mirror.1), axis),
        Boundary::Dirichlet(s) => *s,
        Boundary::Prescribed(f) => {
            let (x, y) = grid.location(family, ghost.0, ghost.1);
            f(x, y, t)
        }
        Boundary::Split { at, before, after } => {
            let (x, y) = grid.location(family, ghost.0, ghost.1);
            let along = match axis {
                Axis::X => y,
                Axis::Y => x,
            };
            let b = if along < *at { before } else { after };
            ghost_value(eq, grid, b, axis, family, a, edge, mirror, ghost, t)
        }
        Boundary::Periodic => unreachable!("periodic sides are wrapped, not split"),
    }
}
