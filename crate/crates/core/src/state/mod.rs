//! Grid, degrees of freedom, fluid-state conversions and ghost filling.

mod boundary;
mod grid;
mod simpson;
mod vars;

pub use boundary::{fill_ghosts, BoundaryKind, BoundarySpec};
pub use grid::{Field, Grid, GridState, Site, SiteCells, SiteFields, SiteKind, NGHOST};
pub use simpson::{
    average_from_nodes, cell_nodes, center_from_average, primitive_average, primitive_averages, CenterPolicy,
    SIMPSON_WEIGHTS_36,
};
pub use vars::{cons_to_prim, flux_x, flux_y, prim_to_cons, Axis, ConsState, PrimState, GAMMA, POSITIVITY_FLOOR};

/// Primitive view of every stored point value, ghosts included.
pub fn primitive_points(s: &GridState) -> crate::error::Result<SiteFields<PrimState>> {
    let conv = |f: &Field<ConsState>| -> crate::error::Result<Field<PrimState>> {
        let data = f
            .values()
            .iter()
            .map(|q| q.to_prim())
            .collect::<crate::error::Result<Vec<_>>>()?;
        Field::from_parts(f.bounds(), data)
    };
    Ok(SiteFields {
        vertex: conv(&s.pv_vertex)?,
        xedge: conv(&s.pv_xedge)?,
        yedge: conv(&s.pv_yedge)?,
    })
}

/// Evolved point-value sites of one kind. On periodic axes the duplicate
/// line at index `n` is excluded; it is restored by [`sync_periodic`].
pub fn domain_sites(grid: &Grid, bc: &BoundarySpec, kind: SiteKind) -> Vec<Site> {
    let (nx, ny) = (grid.nxi(), grid.nyi());
    let node_x = matches!(kind, SiteKind::Vertex | SiteKind::XEdge);
    let node_y = matches!(kind, SiteKind::Vertex | SiteKind::YEdge);
    let ihi = if node_x && !bc.periodic_x() { nx + 1 } else { nx };
    let jhi = if node_y && !bc.periodic_y() { ny + 1 } else { ny };
    let mut out = Vec::with_capacity((ihi * jhi) as usize);
    for j in 0..jhi {
        for i in 0..ihi {
            out.push(Site::new(kind, i, j));
        }
    }
    out
}

/// Copies point values on the first grid line to the duplicate last line of
/// each periodic axis.
pub fn sync_periodic<T: Clone>(fields: &mut SiteFields<T>, grid: &Grid, bc: &BoundarySpec) {
    let (nx, ny) = (grid.nxi(), grid.nyi());
    for kind in SiteKind::ALL {
        let f = fields.field_mut(kind);
        let node_x = matches!(kind, SiteKind::Vertex | SiteKind::XEdge);
        let node_y = matches!(kind, SiteKind::Vertex | SiteKind::YEdge);
        if bc.periodic_x() && node_x {
            for j in f.j_range() {
                let v = f.get(0, j).clone();
                f.set(nx, j, v);
            }
        }
        if bc.periodic_y() && node_y {
            for i in f.i_range() {
                let v = f.get(i, 0).clone();
                f.set(i, ny, v);
            }
        }
    }
}
