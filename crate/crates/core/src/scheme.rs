//! Semi-discrete active flux operators.
//!
//! Cell averages evolve by the finite-volume update with Simpson quadrature
//! of the face fluxes over the face point values. Point values evolve by
//! upwind-biased finite differences of split fluxes,
//!
//! ```text
//! dU/dt = -Σ_ℓ [ D_ℓ⁺ F_ℓ⁺ + D_ℓ⁻ F_ℓ⁻ ],
//! D⁺F⁺ = ( F⁺(s-1) - 4 F⁺(s-½) + 3 F⁺(s) ) / h,
//! D⁻F⁻ = ( -3 F⁻(s) + 4 F⁻(s+½) - F⁻(s+1) ) / h,
//! ```
//!
//! where `s±½` are half-cell neighbours (a face value or the reconstructed
//! cell-center value) and `h` is the cell size. Face values use a central
//! difference of node fluxes in the tangential direction.

use crate::equations::{Equation, ScalarBounds, Splitting};
use crate::error::{Error, Result};
use crate::mesh::{Array2, DofField, Family, Grid};
use crate::state::{Axis, State};

/// Flux data of one point value along one axis.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FluxPoint<const M: usize> {
    pub u: State<M>,
    pub f: State<M>,
    /// `F⁺`; unused (zero) for LLF, whose split depends on the stencil.
    pub plus: State<M>,
    pub minus: State<M>,
    /// Spectral radius of the flux Jacobian.
    pub speed: f64,
}

impl<const M: usize> FluxPoint<M> {
    #[inline]
    pub fn new<E: Equation<M>>(eq: &E, kind: Splitting, u: &State<M>, axis: Axis) -> Self {
        let f = eq.flux(u, axis);
        let speed = eq.spectral_radius(u, axis);
        let (plus, minus) = match kind {
            Splitting::Llf => (State::zero(), State::zero()),
            _ => eq.split(kind, u, axis, 0.0),
        };
        FluxPoint {
            u: *u,
            f,
            plus,
            minus,
            speed,
        }
    }
}

/// Simpson's rule `(lo + 4 mid + hi) / 6`.
#[inline]
pub fn simpson_flux<const M: usize>(lo: &State<M>, mid: &State<M>, hi: &State<M>) -> State<M> {
    (1.0 / 6.0) * (*lo + 4.0 * *mid + *hi)
}

/// Point value at the center of cell `(i, j)` from the parabolic
/// reconstruction of the cell's nine DoFs.
#[inline]
pub fn cell_center_reconstruct<const M: usize>(dofs: &DofField<M>, i: isize, j: isize) -> State<M> {
    let faces = dofs.facex.get(i, j) + dofs.facex.get(i + 1, j) + dofs.facey.get(i, j) + dofs.facey.get(i, j + 1);
    let nodes = dofs.node.get(i, j) + dofs.node.get(i + 1, j) + dofs.node.get(i, j + 1) + dofs.node.get(i + 1, j + 1);
    (1.0 / 16.0) * (36.0 * dofs.avg.get(i, j) - 4.0 * faces - nodes)
}

/// `D⁺F⁺ + D⁻F⁻` over the five-point stencil `s` ordered from upstream
/// (`s[0]`) to downstream, with `s[2]` the point itself.
#[inline]
pub fn upwind_derivative<const M: usize>(kind: Splitting, s: [&FluxPoint<M>; 5], h: f64) -> State<M> {
    match kind {
        Splitting::Llf => {
            let alpha = s.iter().fold(0.0_f64, |a, p| a.max(p.speed));
            let central = s[0].f - 4.0 * s[1].f + 4.0 * s[3].f - s[4].f;
            let diss = s[0].u - 4.0 * s[1].u + 6.0 * s[2].u - 4.0 * s[3].u + s[4].u;
            (0.5 / h) * (central + alpha * diss)
        }
        _ => {
            let plus = s[0].plus - 4.0 * s[1].plus + 3.0 * s[2].plus;
            let minus = -3.0 * s[2].minus + 4.0 * s[3].minus - s[4].minus;
            (1.0 / h) * (plus + minus)
        }
    }
}

/// A point DoF.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointLoc {
    Node(isize, isize),
    FaceX(isize, isize),
    FaceY(isize, isize),
}

/// The five states of the upwind stencil of `loc` along `axis`, or `None`
/// where the point is updated by a central difference (tangential direction
/// of a face value).
pub fn stencil_states<const M: usize>(dofs: &DofField<M>, loc: PointLoc, axis: Axis) -> Option<[State<M>; 5]> {
    let c = |i, j| cell_center_reconstruct(dofs, i, j);
    Some(match (loc, axis) {
        (PointLoc::Node(i, j), Axis::X) => [
            dofs.node.get(i - 1, j),
            dofs.facey.get(i - 1, j),
            dofs.node.get(i, j),
            dofs.facey.get(i, j),
            dofs.node.get(i + 1, j),
        ],
        (PointLoc::Node(i, j), Axis::Y) => [
            dofs.node.get(i, j - 1),
            dofs.facex.get(i, j - 1),
            dofs.node.get(i, j),
            dofs.facex.get(i, j),
            dofs.node.get(i, j + 1),
        ],
        (PointLoc::FaceX(i, j), Axis::X) => [
            dofs.facex.get(i - 1, j),
            c(i - 1, j),
            dofs.facex.get(i, j),
            c(i, j),
            dofs.facex.get(i + 1, j),
        ],
        (PointLoc::FaceY(i, j), Axis::Y) => [
            dofs.facey.get(i, j - 1),
            c(i, j - 1),
            dofs.facey.get(i, j),
            c(i, j),
            dofs.facey.get(i, j + 1),
        ],
        _ => return None,
    })
}

/// LLF splitting coefficient: largest spectral radius over the upwind
/// stencil of `loc` along `axis`.
pub fn stencil_alpha<E: Equation<M>, const M: usize>(
    eq: &E,
    dofs: &DofField<M>,
    loc: PointLoc,
    axis: Axis,
) -> Result<f64> {
    let states = stencil_states(dofs, loc, axis)
        .ok_or_else(|| Error::Unsupported(format!("{loc:?} has no upwind stencil along {axis:?}")))?;
    states.iter().try_fold(0.0_f64, |a, u| {
        crate::equations::spectral_radius(eq, u, axis).map(|s| a.max(s))
    })
}

fn checked_points<E: Equation<M>, const M: usize>(
    eq: &E,
    kind: Splitting,
    states: [State<M>; 5],
    axis: Axis,
) -> Result<[FluxPoint<M>; 5]> {
    for u in &states {
        if !crate::equations::is_admissible(eq, u, 0.0) {
            return Err(Error::NumericalState(format!(
                "inadmissible stencil state ({})",
                eq.describe(u)
            )));
        }
    }
    Ok(states.map(|u| FluxPoint::new(eq, kind, &u, axis)))
}

fn upwind_at<E: Equation<M>, const M: usize>(
    eq: &E,
    kind: Splitting,
    dofs: &DofField<M>,
    loc: PointLoc,
    axis: Axis,
    h: f64,
) -> Result<State<M>> {
    let states = stencil_states(dofs, loc, axis).expect("upwind stencil exists");
    let p = checked_points(eq, kind, states, axis)?;
    Ok(upwind_derivative(kind, [&p[0], &p[1], &p[2], &p[3], &p[4]], h))
}

/// Time derivative of node value `(i, j)`. Ghosts must be filled.
pub fn node_residual<E: Equation<M>, const M: usize>(
    eq: &E,
    kind: Splitting,
    dofs: &DofField<M>,
    grid: &Grid,
    i: isize,
    j: isize,
) -> Result<State<M>> {
    let loc = PointLoc::Node(i, j);
    let dx = upwind_at(eq, kind, dofs, loc, Axis::X, grid.dx)?;
    let dy = upwind_at(eq, kind, dofs, loc, Axis::Y, grid.dy)?;
    Ok(-(dx + dy))
}

/// Time derivative of the x-face value `(i, j)`.
pub fn facex_residual<E: Equation<M>, const M: usize>(
    eq: &E,
    kind: Splitting,
    dofs: &DofField<M>,
    grid: &Grid,
    i: isize,
    j: isize,
) -> Result<State<M>> {
    let normal = upwind_at(eq, kind, dofs, PointLoc::FaceX(i, j), Axis::X, grid.dx)?;
    let top = crate::equations::physical_flux(eq, &dofs.node.get(i, j + 1), Axis::Y)?;
    let bottom = crate::equations::physical_flux(eq, &dofs.node.get(i, j), Axis::Y)?;
    Ok(-normal - (1.0 / grid.dy) * (top - bottom))
}

/// Time derivative of the y-face value `(i, j)`.
pub fn facey_residual<E: Equation<M>, const M: usize>(
    eq: &E,
    kind: Splitting,
    dofs: &DofField<M>,
    grid: &Grid,
    i: isize,
    j: isize,
) -> Result<State<M>> {
    let normal = upwind_at(eq, kind, dofs, PointLoc::FaceY(i, j), Axis::Y, grid.dy)?;
    let right = crate::equations::physical_flux(eq, &dofs.node.get(i + 1, j), Axis::X)?;
    let left = crate::equations::physical_flux(eq, &dofs.node.get(i, j), Axis::X)?;
    Ok(-normal - (1.0 / grid.dx) * (right - left))
}

/// Time derivative of every interior cell average with Simpson face fluxes.
pub fn average_residual<E: Equation<M>, const M: usize>(
    eq: &E,
    dofs: &DofField<M>,
    grid: &Grid,
) -> Array2<State<M>> {
    let fx = |i: isize, j: isize| {
        simpson_flux(
            &eq.flux(&dofs.node.get(i, j), Axis::X),
            &eq.flux(&dofs.facex.get(i, j), Axis::X),
            &eq.flux(&dofs.node.get(i, j + 1), Axis::X),
        )
    };
    let fy = |i: isize, j: isize| {
        simpson_flux(
            &eq.flux(&dofs.node.get(i, j), Axis::Y),
            &eq.flux(&dofs.facey.get(i, j), Axis::Y),
            &eq.flux(&dofs.node.get(i + 1, j), Axis::Y),
        )
    };
    let mut out = Array2::new(grid.n1, grid.n2, grid.ghost, State::zero());
    out.fill_with(0..grid.n1 as isize, 0..grid.n2 as isize, |i, j| {
        -(1.0 / grid.dx) * (fx(i + 1, j) - fx(i, j)) - (1.0 / grid.dy) * (fy(i, j + 1) - fy(i, j))
    });
    out
}

/// How inadmissible reconstructed cell-center states are handled.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CenterPolicy {
    /// Report them as errors.
    Strict,
    /// Scale them towards the cell average until they are admissible with
    /// the given floor.
    Repair { eps: f64 },
}

/// Bulk evaluation of the semi-discrete operator on a whole field, with
/// flux tables shared between overlapping stencils.
#[derive(Clone, Debug)]
pub struct Operator<const M: usize> {
    /// Reconstructed cell-center point values on cells `[-1, n1] x [-1, n2]`.
    pub centers: Array2<State<M>>,
    /// Flux tables `[family][axis]`; `Family::Avg` stands for cell centers.
    tables: [[Array2<FluxPoint<M>>; 2]; 4],
    /// Time derivatives of the point values.
    pub rhs_facex: Array2<State<M>>,
    pub rhs_facey: Array2<State<M>>,
    pub rhs_node: Array2<State<M>>,
    /// High-order Simpson fluxes on x-faces (facex-shaped).
    pub flux_x: Array2<State<M>>,
    /// High-order Simpson fluxes on y-faces (facey-shaped).
    pub flux_y: Array2<State<M>>,
}

fn family_index(f: Family) -> usize {
    match f {
        Family::Avg => 0,
        Family::FaceX => 1,
        Family::FaceY => 2,
        Family::Node => 3,
    }
}

fn axis_index(a: Axis) -> usize {
    match a {
        Axis::X => 0,
        Axis::Y => 1,
    }
}

impl<const M: usize> Operator<M> {
    pub fn new(grid: &Grid) -> Self {
        let mk_state = |f: Family| {
            let (nx, ny) = grid.extents(f);
            Array2::new(nx, ny, grid.ghost, State::zero())
        };
        let mk_table = |f: Family| {
            let (nx, ny) = grid.extents(f);
            Array2::new(nx, ny, grid.ghost, FluxPoint::default())
        };
        let pair = |f: Family| [mk_table(f), mk_table(f)];
        Operator {
            centers: mk_state(Family::Avg),
            tables: [pair(Family::Avg), pair(Family::FaceX), pair(Family::FaceY), pair(Family::Node)],
            rhs_facex: mk_state(Family::FaceX),
            rhs_facey: mk_state(Family::FaceY),
            rhs_node: mk_state(Family::Node),
            flux_x: mk_state(Family::FaceX),
            flux_y: mk_state(Family::FaceY),
        }
    }

    /// Flux table of `family` (cell centers for `Family::Avg`) along `axis`.
    #[inline]
    pub fn table(&self, family: Family, axis: Axis) -> &Array2<FluxPoint<M>> {
        &self.tables[family_index(family)][axis_index(axis)]
    }

    /// Reconstructs cell centers and handles inadmissible ones per `policy`.
    pub fn reconstruct_centers<E: Equation<M>>(
        &mut self,
        eq: &E,
        dofs: &DofField<M>,
        grid: &Grid,
        policy: CenterPolicy,
    ) -> Result<()> {
        let (n1, n2) = (grid.n1 as isize, grid.n2 as isize);
        let any = ScalarBounds::new(f64::NEG_INFINITY, f64::INFINITY);
        self.centers.fill_with(-1..n1 + 1, -1..n2 + 1, |i, j| {
            let c = cell_center_reconstruct(dofs, i, j);
            match policy {
                CenterPolicy::Repair { eps } if !eq.admissible(&c, eps) => eq
                    .limit_point(&c, dofs.avg.get_ref(i, j), any, eps)
                    .map(|(u, _)| u)
                    .unwrap_or(c),
                _ => c,
            }
        });
        for j in -1..n2 + 1 {
            for i in -1..n1 + 1 {
                let c = self.centers.get_ref(i, j);
                if !c.is_finite() || !eq.admissible(c, 0.0) {
                    return Err(Error::Inadmissible {
                        family: "center",
                        index: (i, j),
                        time: f64::NAN,
                        detail: eq.describe(c),
                    });
                }
            }
        }
        Ok(())
    }

    fn build_tables<E: Equation<M>>(&mut self, eq: &E, kind: Splitting, dofs: &DofField<M>, grid: &Grid) {
        let (n1, n2) = (grid.n1 as isize, grid.n2 as isize);
        let g = grid.ghost as isize;
        for family in Family::ALL {
            let (src, cols, rows) = match family {
                Family::Avg => (&self.centers, -1..n1 + 1, -1..n2 + 1),
                f => {
                    let (nx, ny) = grid.extents(f);
                    (dofs.family(f), -g..nx as isize + g, -g..ny as isize + g)
                }
            };
            let [tx, ty] = &mut self.tables[family_index(family)];
            tx.fill_with(cols.clone(), rows.clone(), |i, j| FluxPoint::new(eq, kind, src.get_ref(i, j), Axis::X));
            ty.fill_with(cols, rows, |i, j| FluxPoint::new(eq, kind, src.get_ref(i, j), Axis::Y));
        }
    }

    /// Evaluates point-value residuals and high-order face fluxes for the
    /// ghost-filled field `dofs`.
    pub fn evaluate<E: Equation<M>>(
        &mut self,
        eq: &E,
        kind: Splitting,
        dofs: &DofField<M>,
        grid: &Grid,
        policy: CenterPolicy,
    ) -> Result<()> {
        self.reconstruct_centers(eq, dofs, grid, policy)?;
        self.build_tables(eq, kind, dofs, grid);

        let (n1, n2) = (grid.n1 as isize, grid.n2 as isize);
        let (dx, dy) = (grid.dx, grid.dy);
        let [cx, cy] = &self.tables[0];
        let [fxx, fxy] = &self.tables[1];
        let [fyx, fyy] = &self.tables[2];
        let [nx, ny] = &self.tables[3];

        self.rhs_node.fill_with(0..n1 + 1, 0..n2 + 1, |i, j| {
            let sx = [nx.get_ref(i - 1, j), fyx.get_ref(i - 1, j), nx.get_ref(i, j), fyx.get_ref(i, j), nx.get_ref(i + 1, j)];
            let sy = [ny.get_ref(i, j - 1), fxy.get_ref(i, j - 1), ny.get_ref(i, j), fxy.get_ref(i, j), ny.get_ref(i, j + 1)];
            -(upwind_derivative(kind, sx, dx) + upwind_derivative(kind, sy, dy))
        });
        self.rhs_facex.fill_with(0..n1 + 1, 0..n2, |i, j| {
            let sx = [fxx.get_ref(i - 1, j), cx.get_ref(i - 1, j), fxx.get_ref(i, j), cx.get_ref(i, j), fxx.get_ref(i + 1, j)];
            -upwind_derivative(kind, sx, dx) - (1.0 / dy) * (ny.get_ref(i, j + 1).f - ny.get_ref(i, j).f)
        });
        self.rhs_facey.fill_with(0..n1, 0..n2 + 1, |i, j| {
            let sy = [fyy.get_ref(i, j - 1), cy.get_ref(i, j - 1), fyy.get_ref(i, j), cy.get_ref(i, j), fyy.get_ref(i, j + 1)];
            -upwind_derivative(kind, sy, dy) - (1.0 / dx) * (nx.get_ref(i + 1, j).f - nx.get_ref(i, j).f)
        });
        self.flux_x.fill_with(0..n1 + 1, 0..n2, |i, j| {
            simpson_flux(&nx.get_ref(i, j).f, &fxx.get_ref(i, j).f, &nx.get_ref(i, j + 1).f)
        });
        self.flux_y.fill_with(0..n1, 0..n2 + 1, |i, j| {
            simpson_flux(&ny.get_ref(i, j).f, &fyy.get_ref(i, j).f, &ny.get_ref(i + 1, j).f)
        });
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::{Euler, ScalarLaw};
    use crate::problems::gauss_average;
    use proptest::prelude::*;

    /// Every DoF (ghosts included) sampled from `f`; averages are exact
    /// cell means for polynomials up to degree 9.
    fn sample<const M: usize>(grid: &Grid, f: impl Fn(f64, f64) -> State<M>) -> DofField<M> {
        let mut d = DofField::new(grid);
        let g = grid.ghost as isize;
        for fam in Family::ALL {
            let (nx, ny) = grid.extents(fam);
            for j in -g..ny as isize + g {
                for i in -g..nx as isize + g {
                    let v = if fam == Family::Avg {
                        gauss_average(grid, i, j, &f)
                    } else {
                        let (x, y) = grid.location(fam, i, j);
                        f(x, y)
                    };
                    d.family_mut(fam).set(i, j, v);
                }
            }
        }
        d
    }

    fn grid() -> Grid {
        Grid::new(-0.3, 0.9, 0.1, 0.9, 6, 4).unwrap()
    }

    fn all_points(grid: &Grid) -> Vec<(Family, isize, isize)> {
        Family::POINTS
            .iter()
            .flat_map(|&f| {
                let (nx, ny) = grid.extents(f);
                (0..ny as isize).flat_map(move |j| (0..nx as isize).map(move |i| (f, i, j)))
            })
            .collect()
    }

    fn residual<E: Equation<M>, const M: usize>(
        eq: &E,
        kind: Splitting,
        d: &DofField<M>,
        g: &Grid,
        (f, i, j): (Family, isize, isize),
    ) -> State<M> {
        match f {
            Family::Node => node_residual(eq, kind, d, g, i, j),
            Family::FaceX => facex_residual(eq, kind, d, g, i, j),
            Family::FaceY => facey_residual(eq, kind, d, g, i, j),
            Family::Avg => unreachable!(),
        }
        .unwrap()
    }

    #[test]
    fn linear_data_has_unit_residual() {
        let g = grid();
        let eq = ScalarLaw::advection();
        let d = sample(&g, |x, _| State([x]));
        for kind in [Splitting::Llf, Splitting::Sw] {
            for p in all_points(&g) {
                let r = residual(&eq, kind, &d, &g, p);
                assert!((r.0[0] + 1.0).abs() < 1e-12, "{kind:?} {p:?}: {r:?}");
            }
        }
        let avg = average_residual(&eq, &d, &g);
        assert!(avg.interior().all(|(_, _, r)| (r.0[0] + 1.0).abs() < 1e-12));
    }

    #[test]
    fn quadratic_data_is_differentiated_exactly() {
        let g = grid();
        let eq = ScalarLaw::Advection { velocity: [0.7, -1.3] };
        let u = |x: f64, y: f64| State([1.0 + x - 2.0 * y + x * x + 3.0 * x * y - y * y]);
        let dudt = |x: f64, y: f64| State([-(0.7 * (1.0 + 2.0 * x + 3.0 * y) - 1.3 * (-2.0 + 3.0 * x - 2.0 * y))]);
        let d = sample(&g, u);
        for kind in [Splitting::Llf, Splitting::Sw] {
            for p in all_points(&g) {
                let (x, y) = g.location(p.0, p.1, p.2);
                let r = residual(&eq, kind, &d, &g, p);
                assert!((r - dudt(x, y)).norm_inf() < 1e-11, "{kind:?} {p:?}");
            }
        }
    }

    #[test]
    fn average_update_is_exact_for_cubic_fluxes() {
        let g = grid();
        let eq = ScalarLaw::Advection { velocity: [2.0, 0.5] };
        let u = |x: f64, y: f64| State([x * x * x - x * y * y + 0.5 * y * y * y]);
        let dudt = |x: f64, y: f64| State([-(2.0 * (3.0 * x * x - y * y) + 0.5 * (-2.0 * x * y + 1.5 * y * y))]);
        let d = sample(&g, u);
        for (i, j, r) in average_residual(&eq, &d, &g).interior() {
            assert!((r - gauss_average(&g, i, j, dudt)).norm_inf() < 1e-12);
        }
    }

    #[test]
    fn llf_and_steger_warming_agree_for_linear_advection() {
        let g = grid();
        let eq = ScalarLaw::Advection { velocity: [1.0, -0.5] };
        let d = sample(&g, |x, y| State([(3.0 * x).sin() * (2.0 * y).cos()]));
        for p in all_points(&g) {
            let a = residual(&eq, Splitting::Llf, &d, &g, p);
            let b = residual(&eq, Splitting::Sw, &d, &g, p);
            assert!((a - b).norm_inf() < 1e-12, "{p:?}");
        }
    }

    #[test]
    fn tangential_face_stencil_is_not_upwind() {
        let g = grid();
        let d = sample(&g, |x, _| State([x]));
        let e = stencil_alpha(&ScalarLaw::Burgers, &d, PointLoc::FaceX(1, 1), Axis::Y).unwrap_err();
        assert!(matches!(e, Error::Unsupported(_)));
        let a = stencil_alpha(&ScalarLaw::Burgers, &d, PointLoc::Node(2, 2), Axis::X).unwrap();
        let (x, _) = g.location(Family::Node, 3, 2);
        assert!((a - x.abs()).abs() < 1e-15);
    }

    #[test]
    fn bulk_operator_matches_pointwise_residuals() {
        let g = grid();
        let eq = Euler::default();
        let d = sample(&g, |x, y| eq.state(1.0 + 0.3 * (2.0 * x).sin() * y.cos(), 0.4 + x * y, -0.2 + 0.3 * x, 1.0 + 0.2 * (x + y).cos()));
        for kind in Splitting::ALL {
            let mut op = Operator::new(&g);
            op.evaluate(&eq, kind, &d, &g, CenterPolicy::Strict).unwrap();
            for p in all_points(&g) {
                let bulk = match p.0 {
                    Family::Node => op.rhs_node.get(p.1, p.2),
                    Family::FaceX => op.rhs_facex.get(p.1, p.2),
                    _ => op.rhs_facey.get(p.1, p.2),
                };
                let single = residual(&eq, kind, &d, &g, p);
                assert!((bulk - single).norm_inf() <= 1e-13 * (1.0 + single.norm_inf()), "{kind:?} {p:?}");
            }
            let avg = average_residual(&eq, &d, &g);
            for (i, j, r) in avg.interior() {
                let from_fluxes = -(1.0 / g.dx) * (op.flux_x.get(i + 1, j) - op.flux_x.get(i, j))
                    - (1.0 / g.dy) * (op.flux_y.get(i, j + 1) - op.flux_y.get(i, j));
                assert!((r - from_fluxes).norm_inf() < 1e-12);
            }
        }
    }

    #[test]
    fn center_policies() {
        let g = grid();
        let eq = Euler::default();
        let mut d = sample(&g, |_, _| eq.state(1.0, 0.0, 0.0, 1.0));
        // nodes with low energy drive the reconstructed center of cell (2, 1)
        // below zero pressure while its average stays admissible
        d.avg.set(2, 1, eq.state(1.0, 0.0, 0.0, 0.05));
        let mut op = Operator::<4>::new(&g);
        match op.reconstruct_centers(&eq, &d, &g, CenterPolicy::Strict) {
            Err(Error::Inadmissible { family: "center", index, .. }) => assert_eq!(index, (2, 1)),
            other => panic!("expected an inadmissible center, got {other:?}"),
        }
        op.reconstruct_centers(&eq, &d, &g, CenterPolicy::Repair { eps: 1e-13 }).unwrap();
        assert!(eq.pressure(&op.centers.get(2, 1)) > 0.0);
    }

    proptest! {
        #[test]
        fn center_reconstruction_is_exact_for_biquadratics(c in prop::array::uniform9(-2.0..2.0f64)) {
            let g = grid();
            let f = |x: f64, y: f64| {
                let (px, py) = ([1.0, x, x * x], [1.0, y, y * y]);
                let mut v = 0.0;
                for a in 0..3 {
                    for b in 0..3 {
                        v += c[3 * a + b] * px[a] * py[b];
                    }
                }
                State([v])
            };
            let d = sample(&g, f);
            for i in 0..6 {
                for j in 0..4 {
                    let (x, y) = g.location(Family::Avg, i, j);
                    prop_assert!((cell_center_reconstruct(&d, i, j) - f(x, y)).norm_inf() < 1e-12);
                }
            }
        }

        #[test]
        fn simpson_is_exact_for_cubics(c in prop::array::uniform4(-3.0..3.0f64), a in -2.0..2.0f64, h in 0.01..2.0f64) {
            let p = |x: f64| c[0] + c[1] * x + c[2] * x * x + c[3] * x * x * x;
            let exact = (c[0] * h + c[1] * ((a + h).powi(2) - a * a) / 2.0 + c[2] * ((a + h).powi(3) - a.powi(3)) / 3.0
                + c[3] * ((a + h).powi(4) - a.powi(4)) / 4.0) / h;
            let s = simpson_flux(&State([p(a)]), &State([p(a + h / 2.0)]), &State([p(a + h)]));
            prop_assert!((s.0[0] - exact).abs() < 1e-11 * (1.0 + exact.abs()));
        }
    }
}
