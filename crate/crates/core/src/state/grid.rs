//! Cartesian grid geometry, ghost-extended storage and point-value sites.

use serde::{Deserialize, Serialize};

use crate::error::{AfError, Result};

use super::vars::ConsState;

/// Uniform Cartesian grid. Cell `(i, j)` covers
/// `[x0 + i·dx, x0 + (i+1)·dx] × [y0 + j·dy, y0 + (j+1)·dy]`; interior cells
/// have `0 ≤ i < nx`, `0 ≤ j < ny`, and `nghost` layers surround them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
    pub x0: f64,
    pub y0: f64,
    pub nghost: usize,
}

pub const NGHOST: usize = 2;

impl Grid {
    pub fn new(nx: usize, ny: usize, x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        if nx == 0 || ny == 0 || !(x1 > x0) || !(y1 > y0) {
            return Err(AfError::Config(format!(
                "invalid grid {nx}x{ny} on [{x0}, {x1}] x [{y0}, {y1}]"
            )));
        }
        Ok(Self {
            nx,
            ny,
            dx: (x1 - x0) / nx as f64,
            dy: (y1 - y0) / ny as f64,
            x0,
            y0,
            nghost: NGHOST,
        })
    }

    pub fn g(&self) -> isize {
        self.nghost as isize
    }

    pub fn nxi(&self) -> isize {
        self.nx as isize
    }

    pub fn nyi(&self) -> isize {
        self.ny as isize
    }

    /// x coordinate of the vertical grid line with index `i` (the left face of cell `i`).
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

    pub fn x1(&self) -> f64 {
        self.x_line(self.nxi())
    }

    pub fn y1(&self) -> f64 {
        self.y_line(self.nyi())
    }

    pub fn cell_area(&self) -> f64 {
        self.dx * self.dy
    }

    pub fn h(&self) -> f64 {
        self.dx.min(self.dy)
    }

    /// Extent covered by the ghost-extended cell array.
    pub fn extended_bounds(&self) -> (f64, f64, f64, f64) {
        let g = self.g();
        (
            self.x_line(-g),
            self.x_line(self.nxi() + g),
            self.y_line(-g),
            self.y_line(self.nyi() + g),
        )
    }

    pub fn cell_field<T: Clone>(&self, fill: T) -> Field<T> {
        let g = self.g();
        Field::new(-g, self.nxi() + g, -g, self.nyi() + g, fill)
    }

    pub fn vertex_field<T: Clone>(&self, fill: T) -> Field<T> {
        let g = self.g();
        Field::new(-g, self.nxi() + g + 1, -g, self.nyi() + g + 1, fill)
    }

    pub fn xedge_field<T: Clone>(&self, fill: T) -> Field<T> {
        let g = self.g();
        Field::new(-g, self.nxi() + g + 1, -g, self.nyi() + g, fill)
    }

    pub fn yedge_field<T: Clone>(&self, fill: T) -> Field<T> {
        let g = self.g();
        Field::new(-g, self.nxi() + g, -g, self.nyi() + g + 1, fill)
    }

    pub fn site_field<T: Clone>(&self, kind: SiteKind, fill: T) -> Field<T> {
        match kind {
            SiteKind::Vertex => self.vertex_field(fill),
            SiteKind::XEdge => self.xedge_field(fill),
            SiteKind::YEdge => self.yedge_field(fill),
        }
    }

    pub fn site_coords(&self, site: Site) -> (f64, f64) {
        match site.kind {
            SiteKind::Vertex => (self.x_line(site.i), self.y_line(site.j)),
            SiteKind::XEdge => (self.x_line(site.i), self.y_center(site.j)),
            SiteKind::YEdge => (self.x_center(site.i), self.y_line(site.j)),
        }
    }

    /// Cells sharing a point-value site: four at a vertex, two at an edge midpoint.
    pub fn site_cells(&self, site: Site) -> SiteCells {
        let (i, j) = (site.i, site.j);
        match site.kind {
            SiteKind::Vertex => SiteCells::Four([(i - 1, j - 1), (i, j - 1), (i - 1, j), (i, j)]),
            SiteKind::XEdge => SiteCells::Two([(i - 1, j), (i, j)]),
            SiteKind::YEdge => SiteCells::Two([(i, j - 1), (i, j)]),
        }
    }

    /// True when `other` has exactly the same domain and a resolution that is
    /// `fx` (resp. `fy`) times finer.
    pub fn is_refinement(&self, other: &Grid, fx: usize, fy: usize) -> bool {
        other.nx == self.nx * fx
            && other.ny == self.ny * fy
            && (other.x0 - self.x0).abs() <= 1e-12 * self.dx
            && (other.y0 - self.y0).abs() <= 1e-12 * self.dy
            && (other.x1() - self.x1()).abs() <= 1e-12 * self.dx
            && (other.y1() - self.y1()).abs() <= 1e-12 * self.dy
    }
}

#[derive(Debug, Clone, Copy)]
pub enum SiteCells {
    Two([(isize, isize); 2]),
    Four([(isize, isize); 4]),
}

impl SiteCells {
    pub fn as_slice(&self) -> &[(isize, isize)] {
        match self {
            SiteCells::Two(c) => c,
            SiteCells::Four(c) => c,
        }
    }
}

/// Kind of a point-value location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SiteKind {
    /// Cell corner `(x_line(i), y_line(j))`.
    Vertex,
    /// Midpoint of a vertical edge, `(x_line(i), y_center(j))`.
    XEdge,
    /// Midpoint of a horizontal edge, `(x_center(i), y_line(j))`.
    YEdge,
}

impl SiteKind {
    pub const ALL: [SiteKind; 3] = [SiteKind::Vertex, SiteKind::XEdge, SiteKind::YEdge];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Site {
    pub kind: SiteKind,
    pub i: isize,
    pub j: isize,
}

impl Site {
    pub const fn new(kind: SiteKind, i: isize, j: isize) -> Self {
        Self { kind, i, j }
    }

    pub const fn vertex(i: isize, j: isize) -> Self {
        Self::new(SiteKind::Vertex, i, j)
    }

    pub const fn xedge(i: isize, j: isize) -> Self {
        Self::new(SiteKind::XEdge, i, j)
    }

    pub const fn yedge(i: isize, j: isize) -> Self {
        Self::new(SiteKind::YEdge, i, j)
    }
}

/// Dense 2D array indexed by signed `(i, j)` over `[ilo, ihi) × [jlo, jhi)`,
/// stored row-major with `i` fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Field<T> {
    ilo: isize,
    ihi: isize,
    jlo: isize,
    jhi: isize,
    data: Vec<T>,
}

impl<T: Clone> Field<T> {
    pub fn new(ilo: isize, ihi: isize, jlo: isize, jhi: isize, fill: T) -> Self {
        let n = ((ihi - ilo) * (jhi - jlo)) as usize;
        Self {
            ilo,
            ihi,
            jlo,
            jhi,
            data: vec![fill; n],
        }
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Field<U> {
        Field {
            ilo: self.ilo,
            ihi: self.ihi,
            jlo: self.jlo,
            jhi: self.jhi,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T> Field<T> {
    #[inline]
    fn offset(&self, i: isize, j: isize) -> usize {
        debug_assert!(self.contains(i, j), "index ({i}, {j}) out of field bounds");
        ((i - self.ilo) + (self.ihi - self.ilo) * (j - self.jlo)) as usize
    }

    #[inline]
    pub fn contains(&self, i: isize, j: isize) -> bool {
        i >= self.ilo && i < self.ihi && j >= self.jlo && j < self.jhi
    }

    #[inline]
    pub fn get(&self, i: isize, j: isize) -> &T {
        let k = self.offset(i, j);
        &self.data[k]
    }

    #[inline]
    pub fn get_mut(&mut self, i: isize, j: isize) -> &mut T {
        let k = self.offset(i, j);
        &mut self.data[k]
    }

    #[inline]
    pub fn set(&mut self, i: isize, j: isize, value: T) {
        let k = self.offset(i, j);
        self.data[k] = value;
    }

    pub fn i_range(&self) -> std::ops::Range<isize> {
        self.ilo..self.ihi
    }

    pub fn j_range(&self) -> std::ops::Range<isize> {
        self.jlo..self.jhi
    }

    pub fn values(&self) -> &[T] {
        &self.data
    }

    pub fn bounds(&self) -> (isize, isize, isize, isize) {
        (self.ilo, self.ihi, self.jlo, self.jhi)
    }

    /// Rebuilds a field from raw parts, checking the length.
    pub fn from_parts(bounds: (isize, isize, isize, isize), data: Vec<T>) -> Result<Self> {
        let (ilo, ihi, jlo, jhi) = bounds;
        if ihi < ilo || jhi < jlo || data.len() != ((ihi - ilo) * (jhi - jlo)) as usize {
            return Err(AfError::GridMismatch("field length does not match bounds".into()));
        }
        Ok(Self {
            ilo,
            ihi,
            jlo,
            jhi,
            data,
        })
    }
}

/// Per-kind storage for values located at point-value sites.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteFields<T> {
    pub vertex: Field<T>,
    pub xedge: Field<T>,
    pub yedge: Field<T>,
}

impl<T: Clone> SiteFields<T> {
    pub fn new(grid: &Grid, fill: T) -> Self {
        Self {
            vertex: grid.vertex_field(fill.clone()),
            xedge: grid.xedge_field(fill.clone()),
            yedge: grid.yedge_field(fill),
        }
    }
}

impl<T> SiteFields<T> {
    #[inline]
    pub fn field(&self, kind: SiteKind) -> &Field<T> {
        match kind {
            SiteKind::Vertex => &self.vertex,
            SiteKind::XEdge => &self.xedge,
            SiteKind::YEdge => &self.yedge,
        }
    }

    #[inline]
    pub fn field_mut(&mut self, kind: SiteKind) -> &mut Field<T> {
        match kind {
            SiteKind::Vertex => &mut self.vertex,
            SiteKind::XEdge => &mut self.xedge,
            SiteKind::YEdge => &mut self.yedge,
        }
    }

    #[inline]
    pub fn at(&self, site: Site) -> &T {
        self.field(site.kind).get(site.i, site.j)
    }

    #[inline]
    pub fn set(&mut self, site: Site, value: T) {
        self.field_mut(site.kind).set(site.i, site.j, value)
    }
}

/// All degrees of freedom at one time level: conservative cell averages and
/// conservative point values, each stored once per geometric location.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridState {
    pub grid: Grid,
    pub t: f64,
    pub avg: Field<ConsState>,
    pub pv_vertex: Field<ConsState>,
    pub pv_xedge: Field<ConsState>,
    pub pv_yedge: Field<ConsState>,
}

impl GridState {
    pub fn uniform(grid: Grid, q: ConsState) -> Self {
        Self {
            grid,
            t: 0.0,
            avg: grid.cell_field(q),
            pv_vertex: grid.vertex_field(q),
            pv_xedge: grid.xedge_field(q),
            pv_yedge: grid.yedge_field(q),
        }
    }

    /// Point values sampled from `f` at every site and cell averages from the
    /// Simpson rule over the stored boundary point values and `f` at the
    /// cell centre, ghosts included.
    pub fn sample(grid: Grid, f: impl Fn(f64, f64) -> super::vars::PrimState) -> Self {
        let mut s = Self::uniform(grid, ConsState::ZERO);
        for kind in SiteKind::ALL {
            let fld = s.points_mut(kind);
            for j in fld.j_range() {
                for i in fld.i_range() {
                    let (x, y) = grid.site_coords(Site::new(kind, i, j));
                    fld.set(i, j, f(x, y).to_cons());
                }
            }
        }
        for j in s.avg.j_range() {
            for i in s.avg.i_range() {
                let b = s.cell_boundary(i, j);
                let c = f(grid.x_center(i), grid.y_center(j)).to_cons();
                let nodes = [b[0], b[1], b[2], b[3], c, b[4], b[5], b[6], b[7]];
                s.avg.set(i, j, super::simpson::average_from_nodes(&nodes));
            }
        }
        s
    }

    #[inline]
    pub fn points(&self, kind: SiteKind) -> &Field<ConsState> {
        match kind {
            SiteKind::Vertex => &self.pv_vertex,
            SiteKind::XEdge => &self.pv_xedge,
            SiteKind::YEdge => &self.pv_yedge,
        }
    }

    #[inline]
    pub fn points_mut(&mut self, kind: SiteKind) -> &mut Field<ConsState> {
        match kind {
            SiteKind::Vertex => &mut self.pv_vertex,
            SiteKind::XEdge => &mut self.pv_xedge,
            SiteKind::YEdge => &mut self.pv_yedge,
        }
    }

    #[inline]
    pub fn point(&self, site: Site) -> ConsState {
        *self.points(site.kind).get(site.i, site.j)
    }

    /// The eight boundary point values of cell `(i, j)` in the order
    /// SW, S, SE, W, E, NW, N, NE.
    pub fn cell_boundary(&self, i: isize, j: isize) -> [ConsState; 8] {
        [
            *self.pv_vertex.get(i, j),
            *self.pv_yedge.get(i, j),
            *self.pv_vertex.get(i + 1, j),
            *self.pv_xedge.get(i, j),
            *self.pv_xedge.get(i + 1, j),
            *self.pv_vertex.get(i, j + 1),
            *self.pv_yedge.get(i, j + 1),
            *self.pv_vertex.get(i + 1, j + 1),
        ]
    }

    /// Sum of `Q̄·ΔxΔy` over the interior cells, in row-major order.
    pub fn totals(&self) -> ConsState {
        let g = &self.grid;
        let mut sum = ConsState::ZERO;
        for j in 0..g.nyi() {
            for i in 0..g.nxi() {
                sum += *self.avg.get(i, j);
            }
        }
        sum * g.cell_area()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_are_reproducible_from_indices() {
        let g = Grid::new(10, 5, -1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(g.x_line(0), -1.0);
        assert!((g.x_line(10) - 1.0).abs() < 1e-15);
        assert_eq!(g.x_line(3), -1.0 + 3.0 * g.dx);
        assert_eq!(g.site_coords(Site::xedge(2, 1)), (g.x_line(2), g.y_center(1)));
    }

    #[test]
    fn field_extents_include_ghosts() {
        let g = Grid::new(4, 3, 0.0, 1.0, 0.0, 1.0).unwrap();
        let v = g.vertex_field(0u8);
        assert_eq!(v.i_range(), -2..7);
        assert_eq!(v.j_range(), -2..6);
        let c = g.cell_field(0u8);
        assert_eq!(c.values().len(), 8 * 7);
    }

    #[test]
    fn invalid_grid_is_rejected() {
        assert!(Grid::new(0, 4, 0.0, 1.0, 0.0, 1.0).is_err());
        assert!(Grid::new(4, 4, 1.0, 1.0, 0.0, 1.0).is_err());
    }
}
