//! Second-order correction of the local linearisation error.

use crate::state::{Grid, PrimState, Site, SiteFields, SiteKind, GAMMA};

/// First spatial derivatives of the primitive variables at a point.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CorrectionInputs {
    pub rho_x: f64,
    pub rho_y: f64,
    pub u_x: f64,
    pub u_y: f64,
    pub v_x: f64,
    pub v_y: f64,
    pub p_x: f64,
    pub p_y: f64,
}

impl CorrectionInputs {
    pub fn from_gradients(dx: PrimState, dy: PrimState) -> Self {
        Self {
            rho_x: dx.rho,
            rho_y: dy.rho,
            u_x: dx.u,
            u_y: dy.u,
            v_x: dx.v,
            v_y: dy.v,
            p_x: dx.p,
            p_y: dy.p,
        }
    }

    pub fn is_finite(&self) -> bool {
        [
            self.rho_x, self.rho_y, self.u_x, self.u_y, self.v_x, self.v_y, self.p_x, self.p_y,
        ]
        .iter()
        .all(|d| d.is_finite())
    }
}

/// Increment `½τ²·K(w, ∇w)` that lifts the linearised evolution to third
/// order for the nonlinear system; `w` is the state at the evaluation point
/// at the old time level.
pub fn correction_term(d: &CorrectionInputs, w: PrimState, tau: f64) -> PrimState {
    let PrimState { rho, u, v, p } = w;
    let CorrectionInputs {
        rho_x,
        rho_y,
        u_x,
        u_y,
        v_x,
        v_y,
        p_x,
        p_y,
    } = *d;
    let div = u_x + v_y;
    let f1 = u_x * u_x + u_y * v_x;
    let f2 = u_y * v_x + v_y * v_y;
    let g1 = p_x * (GAMMA * div + u_x) + p_y * v_x;
    let g2 = p_y * (GAMMA * div + v_y) + p_x * u_y;
    let h1 = (rho_x * p_x + rho_y * p_y) / rho;
    let h2 = (rho_x * u + rho_y * v) / (rho * rho);

    let k = PrimState::new(
        rho * (f1 + f2) + u * (rho_x * (2.0 * u_x + v_y) + rho_y * v_x) + v * (rho_x * u_y + rho_y * (u_x + 2.0 * v_y))
            - h1,
        u * f1 + v * u_y * div + g1 / rho - p_x * h2,
        v * f2 + u * v_x * div + g2 / rho - p_y * h2,
        u * g1 + v * g2 + GAMMA * p * (f1 + f2 - h1 / rho),
    );
    (0.5 * tau * tau) * k
}

/// Centred differences of primitive point values around a site. Vertices
/// use the four adjacent edge midpoints; edge midpoints use their two
/// endpoint vertices along the edge and the neighbouring same-kind
/// midpoints across it.
pub fn derivatives_at(points: &SiteFields<PrimState>, grid: &Grid, site: Site) -> CorrectionInputs {
    let (i, j) = (site.i, site.j);
    let (dx, dy) = (grid.dx, grid.dy);
    let vert = points.field(SiteKind::Vertex);
    let xe = points.field(SiteKind::XEdge);
    let ye = points.field(SiteKind::YEdge);
    let (gx, gy) = match site.kind {
        SiteKind::Vertex => (
            (*ye.get(i, j) - *ye.get(i - 1, j)) * (1.0 / dx),
            (*xe.get(i, j) - *xe.get(i, j - 1)) * (1.0 / dy),
        ),
        SiteKind::XEdge => (
            (*xe.get(i + 1, j) - *xe.get(i - 1, j)) * (0.5 / dx),
            (*vert.get(i, j + 1) - *vert.get(i, j)) * (1.0 / dy),
        ),
        SiteKind::YEdge => (
            (*vert.get(i + 1, j) - *vert.get(i, j)) * (1.0 / dx),
            (*ye.get(i, j + 1) - *ye.get(i, j - 1)) * (0.5 / dy),
        ),
    };
    CorrectionInputs::from_gradients(gx, gy)
}
