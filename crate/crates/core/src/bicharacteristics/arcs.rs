//! Splitting the sonic circle into arcs that each lie in one grid cell.

use std::f64::consts::TAU;

use crate::error::{AfError, Result};
use crate::reconstruction::locate_cell;
use crate::state::Grid;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub start: f64,
    pub end: f64,
    pub cell: (isize, isize),
}

impl Arc {
    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.start + self.end)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArcDecomposition {
    pub center: (f64, f64),
    pub radius: f64,
    pub arcs: Vec<Arc>,
}

impl ArcDecomposition {
    pub fn point(&self, theta: f64) -> (f64, f64) {
        (
            self.center.0 + self.radius * theta.cos(),
            self.center.1 + self.radius * theta.sin(),
        )
    }
}

const DEDUP_TOL: f64 = 1e-12 * TAU;

/// Splits the circle of given centre and radius at its crossings with the
/// grid lines. Arcs are ordered by angle and cover `[0, 2π)`.
pub fn decompose_circle(grid: &Grid, center: (f64, f64), radius: f64) -> Result<ArcDecomposition> {
    let (cx, cy) = center;
    if !(radius >= 0.0) || !cx.is_finite() || !cy.is_finite() || !radius.is_finite() {
        return Err(AfError::OutOfDomain { x: cx, y: cy });
    }
    let (xa, xb, ya, yb) = grid.extended_bounds();
    if cx - radius < xa || cx + radius > xb || cy - radius < ya || cy + radius > yb {
        return Err(AfError::OutOfDomain { x: cx, y: cy });
    }
    if radius == 0.0 {
        let cell = locate_cell(grid, cx, cy)?;
        return Ok(ArcDecomposition {
            center,
            radius,
            arcs: vec![Arc {
                start: 0.0,
                end: TAU,
                cell,
            }],
        });
    }

    let mut cuts = vec![0.0, TAU];
    let wrap = |t: f64| if t < 0.0 { t + TAU } else { t };
    let klo = ((cx - radius - grid.x0) / grid.dx).ceil() as isize;
    let khi = ((cx + radius - grid.x0) / grid.dx).floor() as isize;
    for k in klo..=khi {
        let d = (grid.x_line(k) - cx) / radius;
        if d.abs() < 1.0 {
            let a = d.acos();
            cuts.push(a);
            cuts.push(TAU - a);
        }
    }
    let llo = ((cy - radius - grid.y0) / grid.dy).ceil() as isize;
    let lhi = ((cy + radius - grid.y0) / grid.dy).floor() as isize;
    for l in llo..=lhi {
        let d = (grid.y_line(l) - cy) / radius;
        if d.abs() < 1.0 {
            let a = d.asin();
            cuts.push(wrap(a));
            cuts.push(std::f64::consts::PI - a);
        }
    }
    cuts.sort_by(f64::total_cmp);
    let mut uniq: Vec<f64> = Vec::with_capacity(cuts.len());
    for t in cuts {
        match uniq.last() {
            Some(&last) if t - last <= DEDUP_TOL => {}
            _ => uniq.push(t),
        }
    }
    // Keep the exact endpoint 2π.
    if let Some(last) = uniq.last_mut() {
        if TAU - *last <= DEDUP_TOL {
            *last = TAU;
        }
    }

    let mut arcs = Vec::with_capacity(uniq.len());
    for w in uniq.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let (x, y) = (cx + radius * mid.cos(), cy + radius * mid.sin());
        arcs.push(Arc {
            start: w[0],
            end: w[1],
            cell: locate_cell(grid, x, y)?,
        });
    }
    if arcs.is_empty() {
        return Err(AfError::QuadratureDegenerate);
    }
    Ok(ArcDecomposition { center, radius, arcs })
}
