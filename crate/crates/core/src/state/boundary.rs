//! Ghost-layer filling for periodic, outflow, inflow and reflecting walls.

use serde::{Deserialize, Serialize};

use crate::error::{AfError, Result};

use super::grid::{Field, GridState, SiteKind};
use super::vars::{Axis, ConsState, PrimState, POSITIVITY_FLOOR};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BoundaryKind {
    Periodic,
    /// Piecewise-constant extrapolation.
    Outflow,
    /// Constant prescribed state in all ghost DOFs.
    Inflow(PrimState),
    /// Reflecting wall; the normal axis follows from the side.
    Wall,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundarySpec {
    pub left: BoundaryKind,
    pub right: BoundaryKind,
    pub bottom: BoundaryKind,
    pub top: BoundaryKind,
}

impl BoundarySpec {
    pub const fn uniform(kind: BoundaryKind) -> Self {
        Self {
            left: kind,
            right: kind,
            bottom: kind,
            top: kind,
        }
    }

    pub const fn periodic() -> Self {
        Self::uniform(BoundaryKind::Periodic)
    }

    pub const fn outflow() -> Self {
        Self::uniform(BoundaryKind::Outflow)
    }

    /// Outflow in x, periodic in y: the setting of the quasi-1D problems.
    pub const fn outflow_x_periodic_y() -> Self {
        Self {
            left: BoundaryKind::Outflow,
            right: BoundaryKind::Outflow,
            bottom: BoundaryKind::Periodic,
            top: BoundaryKind::Periodic,
        }
    }

    pub fn periodic_x(&self) -> bool {
        self.left == BoundaryKind::Periodic
    }

    pub fn periodic_y(&self) -> bool {
        self.bottom == BoundaryKind::Periodic
    }

    pub fn validate(&self) -> Result<()> {
        let px = (
            self.left == BoundaryKind::Periodic,
            self.right == BoundaryKind::Periodic,
        );
        let py = (
            self.bottom == BoundaryKind::Periodic,
            self.top == BoundaryKind::Periodic,
        );
        if px.0 != px.1 || py.0 != py.1 {
            return Err(AfError::InconsistentPeriodicity);
        }
        for side in [self.left, self.right, self.bottom, self.top] {
            if let BoundaryKind::Inflow(w) = side {
                if !w.is_finite() || !w.is_admissible(POSITIVITY_FLOOR) {
                    return Err(AfError::InadmissibleInflow);
                }
            }
        }
        Ok(())
    }

    /// Whether a point-value site on the physical boundary is a wall site,
    /// and if so the wall normal.
    pub fn wall_normal(&self, grid: &super::grid::Grid, site: super::grid::Site) -> Option<Axis> {
        let (i, j) = (site.i, site.j);
        let on_x = matches!(site.kind, SiteKind::Vertex | SiteKind::XEdge);
        let on_y = matches!(site.kind, SiteKind::Vertex | SiteKind::YEdge);
        if on_x
            && ((i == 0 && self.left == BoundaryKind::Wall) || (i == grid.nxi() && self.right == BoundaryKind::Wall))
        {
            return Some(Axis::X);
        }
        if on_y
            && ((j == 0 && self.bottom == BoundaryKind::Wall) || (j == grid.nyi() && self.top == BoundaryKind::Wall))
        {
            return Some(Axis::Y);
        }
        None
    }
}

/// Placement of a DOF family along one axis: on grid lines (`Node`) or at
/// cell centres (`Center`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stagger {
    Node,
    Center,
}

/// Which family a field belongs to, used to pick the boundary trace for
/// outflow extrapolation of centre-staggered point values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Average,
    Points(SiteKind),
}

fn stagger(family: Family, axis: Axis) -> Stagger {
    match (family, axis) {
        (Family::Average, _) => Stagger::Center,
        (Family::Points(SiteKind::Vertex), _) => Stagger::Node,
        (Family::Points(SiteKind::XEdge), Axis::X) => Stagger::Node,
        (Family::Points(SiteKind::XEdge), Axis::Y) => Stagger::Center,
        (Family::Points(SiteKind::YEdge), Axis::X) => Stagger::Center,
        (Family::Points(SiteKind::YEdge), Axis::Y) => Stagger::Node,
    }
}

/// Fills all ghost DOFs of `s` in place. The x sides are filled for interior
/// rows first; the y sides are then filled for every column, which
/// completes the corners (wall–wall corners end up reflected across both axes).
pub fn fill_ghosts(s: &mut GridState, bc: &BoundarySpec) -> Result<()> {
    bc.validate()?;
    let grid = s.grid;
    let n = (grid.nxi(), grid.nyi());
    let g = grid.g();

    // Outflow traces for centre-staggered point values are read from the
    // vertex field, so vertices are processed first along each axis.
    for axis in [Axis::X, Axis::Y] {
        pass(&mut s.pv_vertex, Family::Points(SiteKind::Vertex), axis, bc, n, g, None);
        let trace = Some(&s.pv_vertex);
        pass(&mut s.pv_xedge, Family::Points(SiteKind::XEdge), axis, bc, n, g, trace);
        pass(&mut s.pv_yedge, Family::Points(SiteKind::YEdge), axis, bc, n, g, trace);
        pass(&mut s.avg, Family::Average, axis, bc, n, g, None);
    }
    Ok(())
}

/// One axis pass over a field.
#[allow(clippy::too_many_arguments)]
fn pass(
    f: &mut Field<ConsState>,
    family: Family,
    axis: Axis,
    bc: &BoundarySpec,
    n: (isize, isize),
    g: isize,
    trace: Option<&Field<ConsState>>,
) {
    let st = stagger(family, axis);
    let (lo_side, hi_side, len) = match axis {
        Axis::X => (bc.left, bc.right, n.0),
        Axis::Y => (bc.bottom, bc.top, n.1),
    };
    // Transverse index range: the x pass covers only interior rows, the
    // y pass covers everything.
    let transverse: Vec<isize> = match axis {
        Axis::X => {
            let other = stagger(family, Axis::Y);
            let hi = if other == Stagger::Node { n.1 + 1 } else { n.1 };
            (0..hi).collect()
        }
        Axis::Y => f.i_range().collect(),
    };
    let top = if st == Stagger::Node { len } else { len - 1 };

    let read = |f: &Field<ConsState>, k: isize, t: isize| -> ConsState {
        match axis {
            Axis::X => *f.get(k, t),
            Axis::Y => *f.get(t, k),
        }
    };
    let write = |f: &mut Field<ConsState>, k: isize, t: isize, q: ConsState| match axis {
        Axis::X => f.set(k, t, q),
        Axis::Y => f.set(t, k, q),
    };

    for &t in &transverse {
        // Periodic duplicates on the node line k = len mirror k = 0.
        if lo_side == BoundaryKind::Periodic && st == Stagger::Node {
            let q = read(f, 0, t);
            write(f, len, t, q);
        }
        for d in 1..=g {
            // Lower side: ghost index kg.
            let kg = -d;
            let q = match lo_side {
                BoundaryKind::Periodic => read(f, kg.rem_euclid(len), t),
                BoundaryKind::Inflow(w) => w.to_cons(),
                BoundaryKind::Wall => {
                    let src = if st == Stagger::Node { d } else { d - 1 };
                    read(f, src, t).reflect(axis)
                }
                BoundaryKind::Outflow => outflow_value(f, family, axis, st, 0, t, trace, &read),
            };
            write(f, kg, t, q);

            // Upper side.
            let kg = top + d;
            let q = match hi_side {
                BoundaryKind::Periodic => read(f, kg.rem_euclid(len), t),
                BoundaryKind::Inflow(w) => w.to_cons(),
                BoundaryKind::Wall => read(f, len - d, t).reflect(axis),
                BoundaryKind::Outflow => outflow_value(f, family, axis, st, len, t, trace, &read),
            };
            write(f, kg, t, q);
        }
    }
}

/// Piecewise-constant extrapolation across the side whose boundary line has
/// index `edge` (0 or len). Node-staggered values and averages copy the
/// outermost interior entry; centre-staggered point values copy the boundary
/// trace, which lives in the vertex field.
#[allow(clippy::too_many_arguments)]
fn outflow_value(
    f: &Field<ConsState>,
    family: Family,
    axis: Axis,
    st: Stagger,
    edge: isize,
    t: isize,
    trace: Option<&Field<ConsState>>,
    read: &impl Fn(&Field<ConsState>, isize, isize) -> ConsState,
) -> ConsState {
    match (family, st) {
        (Family::Average, _) => read(f, if edge == 0 { 0 } else { edge - 1 }, t),
        (_, Stagger::Node) => read(f, edge, t),
        (Family::Points(_), Stagger::Center) => {
            let v = trace.expect("vertex trace available for edge families");
            match axis {
                Axis::X => *v.get(edge, t),
                Axis::Y => *v.get(t, edge),
            }
        }
    }
}
