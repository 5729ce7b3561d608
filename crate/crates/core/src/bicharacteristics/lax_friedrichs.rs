//! First-order Lax–Friedrichs update of a single point value.

use crate::error::Result;
use crate::state::{flux_x, flux_y, ConsState, Grid, GridState, PrimState, Site};

fn lf_flux(f: fn(&ConsState) -> ConsState, left: &ConsState, right: &ConsState, alpha: f64) -> ConsState {
    0.5 * (f(left) + f(right)) - (0.5 * alpha) * (*right - *left)
}

/// Lax–Friedrichs evolution of the point value at `site` over `tau`, using
/// its four same-kind neighbours at distance Δx and Δy. Interface fluxes sit
/// halfway to each neighbour; the dissipation speeds are the maxima of
/// `|u| + c` and `|v| + c` over the five-point stencil.
pub fn lf_point_update(s: &GridState, site: Site, tau: f64) -> Result<PrimState> {
    let field = s.points(site.kind);
    let (i, j) = (site.i, site.j);
    let q = [
        *field.get(i, j),
        *field.get(i - 1, j),
        *field.get(i + 1, j),
        *field.get(i, j - 1),
        *field.get(i, j + 1),
    ];
    let (mut ax, mut ay) = (0.0f64, 0.0f64);
    for qk in &q {
        let w = qk.to_prim()?;
        let c = w.sound_speed();
        ax = ax.max(w.u.abs() + c);
        ay = ay.max(w.v.abs() + c);
    }
    lf_cons_update(&s.grid, &q, ax, ay, tau).to_prim()
}

/// `q` ordered centre, west, east, south, north.
pub(crate) fn lf_cons_update(grid: &Grid, q: &[ConsState; 5], ax: f64, ay: f64, tau: f64) -> ConsState {
    let [c, w, e, s, n] = q;
    let fe = lf_flux(flux_x, c, e, ax);
    let fw = lf_flux(flux_x, w, c, ax);
    let gn = lf_flux(flux_y, c, n, ay);
    let gs = lf_flux(flux_y, s, c, ay);
    *c - (tau / grid.dx) * (fe - fw) - (tau / grid.dy) * (gn - gs)
}
