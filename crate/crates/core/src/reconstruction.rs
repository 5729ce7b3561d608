//! Continuous piecewise-quadratic (cpq) and piecewise-constant (pc)
//! reconstructions in primitive variables.

use crate::error::{AfError, Result};
use crate::state::{cell_nodes, CenterPolicy, Field, Grid, GridState, PrimState, POSITIVITY_FLOOR, SIMPSON_WEIGHTS_36};

/// Biquadratic patch of one cell, given by its primitive values at the 3×3
/// Simpson nodes (row-major from the lower-left corner).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellPatch {
    pub nodes: [PrimState; 9],
}

#[inline]
fn lagrange3(t: f64) -> [f64; 3] {
    [2.0 * (t - 0.5) * (t - 1.0), -4.0 * t * (t - 1.0), 2.0 * t * (t - 0.5)]
}

impl CellPatch {
    /// Evaluates at local coordinates `(xi, eta) ∈ [0, 1]²`.
    #[inline]
    pub fn eval_local(&self, xi: f64, eta: f64) -> PrimState {
        let lx = lagrange3(xi);
        let ly = lagrange3(eta);
        let mut acc = PrimState::ZERO;
        for (b, wy) in ly.iter().enumerate() {
            let row = lx[0] * self.nodes[3 * b] + lx[1] * self.nodes[3 * b + 1] + lx[2] * self.nodes[3 * b + 2];
            acc += *wy * row;
        }
        acc
    }

    /// Exact mean of the biquadratic over the cell.
    pub fn mean(&self) -> PrimState {
        let mut acc = PrimState::ZERO;
        for (k, w) in SIMPSON_WEIGHTS_36.iter().enumerate() {
            acc += *w * self.nodes[k];
        }
        acc * (1.0 / 36.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecKind {
    Cpq,
    Pc,
}

#[derive(Debug, Clone)]
enum RecData {
    Cpq(Field<CellPatch>),
    Pc(Field<PrimState>),
}

/// A reconstruction over the ghost-extended grid.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    grid: Grid,
    data: RecData,
}

impl Reconstruction {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn kind(&self) -> RecKind {
        match self.data {
            RecData::Cpq(_) => RecKind::Cpq,
            RecData::Pc(_) => RecKind::Pc,
        }
    }

    /// Value of the reconstruction restricted to cell `(i, j)` at `(x, y)`.
    /// For cpq the patch polynomial is evaluated even slightly outside the cell.
    #[inline]
    pub fn eval_in_cell(&self, i: isize, j: isize, x: f64, y: f64) -> PrimState {
        match &self.data {
            RecData::Cpq(p) => {
                let xi = (x - self.grid.x_line(i)) / self.grid.dx;
                let eta = (y - self.grid.y_line(j)) / self.grid.dy;
                p.get(i, j).eval_local(xi, eta)
            }
            RecData::Pc(a) => *a.get(i, j),
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<PrimState> {
        let (i, j) = locate_cell(&self.grid, x, y)?;
        Ok(self.eval_in_cell(i, j, x, y))
    }

    /// Like [`eval`](Self::eval), but a point lying on a face or vertex (up to a
    /// relative tolerance) receives the mean over all touching cells.
    /// Identical to `eval` for cpq away from round-off.
    pub fn eval_symmetric(&self, x: f64, y: f64) -> Result<PrimState> {
        if self.kind() == RecKind::Cpq {
            return self.eval(x, y);
        }
        let (i, j) = locate_cell(&self.grid, x, y)?;
        let ci = face_candidates(x, self.grid.x0, self.grid.dx, i, self.grid.nxi(), self.grid.g());
        let cj = face_candidates(y, self.grid.y0, self.grid.dy, j, self.grid.nyi(), self.grid.g());
        let mut acc = PrimState::ZERO;
        let mut n = 0.0;
        for &a in ci.iter().flatten() {
            for &b in cj.iter().flatten() {
                acc += self.eval_in_cell(a, b, x, y);
                n += 1.0;
            }
        }
        Ok(acc * (1.0 / n))
    }

    pub fn patch(&self, i: isize, j: isize) -> Option<&CellPatch> {
        match &self.data {
            RecData::Cpq(p) => Some(p.get(i, j)),
            RecData::Pc(_) => None,
        }
    }
}

const FACE_TOL: f64 = 1e-10;

fn face_candidates(x: f64, x0: f64, h: f64, i: isize, n: isize, g: isize) -> [Option<isize>; 2] {
    let t = (x - x0) / h;
    let k = t.round();
    if (t - k).abs() <= FACE_TOL * t.abs().max(1.0) {
        let k = k as isize;
        let lo = (k - 1 >= -g).then_some(k - 1);
        let hi = (k < n + g).then_some(k);
        [lo, hi]
    } else {
        [Some(i), None]
    }
}

/// Cell containing `(x, y)`; points on a face belong to the lower-index cell.
pub fn locate_cell(grid: &Grid, x: f64, y: f64) -> Result<(isize, isize)> {
    let (xa, xb, ya, yb) = grid.extended_bounds();
    if !(x >= xa && x <= xb && y >= ya && y <= yb) {
        return Err(AfError::OutOfDomain { x, y });
    }
    let g = grid.g();
    let i = (((x - grid.x0) / grid.dx).ceil() as isize - 1).clamp(-g, grid.nxi() + g - 1);
    let j = (((y - grid.y0) / grid.dy).ceil() as isize - 1).clamp(-g, grid.nyi() + g - 1);
    Ok((i, j))
}

/// Builds the cpq reconstruction. The boundary nodes are the shared point
/// values; the centre node inverts Simpson's rule in conservative variables.
/// Under [`CenterPolicy::FallbackToAverage`] a cell whose conservative centre
/// is inadmissible gets its centre from Simpson inversion of the primitive
/// conversion of the cell average instead.
pub fn build_cpq(s: &GridState, policy: CenterPolicy) -> Result<Reconstruction> {
    let grid = s.grid;
    let dummy = CellPatch {
        nodes: [PrimState::ZERO; 9],
    };
    let mut patches = grid.cell_field(dummy);
    for j in patches.j_range() {
        for i in patches.i_range() {
            let q = cell_nodes(s, i, j);
            let mut nodes = [PrimState::ZERO; 9];
            for k in 0..9 {
                if k == 4 {
                    continue;
                }
                let w = q[k].to_prim()?;
                w.check_admissible(POSITIVITY_FLOOR, || format!("cell ({i}, {j}) node {k}"))?;
                nodes[k] = w;
            }
            let centre = q[4].to_prim().and_then(|w| {
                w.check_admissible(POSITIVITY_FLOOR, || format!("cell ({i}, {j}) centre"))
                    .map(|_| w)
            });
            nodes[4] = match (centre, policy) {
                (Ok(w), _) => w,
                (Err(e), CenterPolicy::Strict) => return Err(e),
                (Err(_), CenterPolicy::FallbackToAverage) => {
                    let wbar = s.avg.get(i, j).to_prim()?;
                    let mut acc = 36.0 * wbar;
                    for k in (0..9).filter(|&k| k != 4) {
                        acc = acc - SIMPSON_WEIGHTS_36[k] * nodes[k];
                    }
                    acc * (1.0 / 16.0)
                }
            };
            patches.set(i, j, CellPatch { nodes });
        }
    }
    Ok(Reconstruction {
        grid,
        data: RecData::Cpq(patches),
    })
}

/// Piecewise-constant reconstruction from primitive cell averages.
pub fn build_pc(grid: Grid, averages: Field<PrimState>) -> Reconstruction {
    Reconstruction {
        grid,
        data: RecData::Pc(averages),
    }
}
