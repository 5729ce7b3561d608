//! Bicharacteristic evolution operators for the locally linearised Euler
//! equations, the linearisation correction and the Lax–Friedrichs point update.

mod arcs;
mod correction;
mod lax_friedrichs;
mod quadrature;

use std::f64::consts::{FRAC_PI_2, PI};

pub use arcs::{decompose_circle, Arc, ArcDecomposition};
pub use correction::{correction_term, derivatives_at, CorrectionInputs};
pub use lax_friedrichs::lf_point_update;
pub use quadrature::{GaussLegendre, DEFAULT_ORDER};

use crate::error::{AfError, Result};
use crate::reconstruction::Reconstruction;
use crate::state::{PrimState, POSITIVITY_FLOOR};

/// Constant state of the local linearisation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Linearisation {
    state: PrimState,
    c: f64,
}

impl Linearisation {
    pub fn new(state: PrimState) -> Result<Self> {
        state.check_admissible(POSITIVITY_FLOOR, || "linearisation state".into())?;
        Ok(Self {
            state,
            c: state.sound_speed(),
        })
    }

    pub fn state(&self) -> PrimState {
        self.state
    }

    pub fn sound_speed(&self) -> f64 {
        self.c
    }

    /// Foot point `P′` of the cone axis and the sonic circle radius.
    pub fn cone_base(&self, x: f64, y: f64, tau: f64) -> ((f64, f64), f64) {
        ((x - self.state.u * tau, y - self.state.v * tau), self.c * tau)
    }
}

/// Integrals over `θ ∈ [0, 2π)` of the reconstruction on the sonic circle
/// weighted by the trigonometric factors both operators need.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CircleMoments {
    pub p: f64,
    pub p_cos: f64,
    pub p_sin: f64,
    pub u: f64,
    pub u_cos: f64,
    pub u_cos2: f64,
    pub u_sincos: f64,
    pub v: f64,
    pub v_sin: f64,
    pub v_sin2: f64,
    pub v_sincos: f64,
}

impl CircleMoments {
    /// Accumulates the moments over every arc, each split into pieces of at
    /// most π/2 and integrated with `quad`.
    pub fn compute(rec: &Reconstruction, arcs: &ArcDecomposition, quad: &GaussLegendre) -> Self {
        let mut m = Self::default();
        for arc in &arcs.arcs {
            let pieces = (arc.len() / FRAC_PI_2).ceil().max(1.0) as usize;
            let step = arc.len() / pieces as f64;
            for k in 0..pieces {
                let a = arc.start + k as f64 * step;
                let b = if k + 1 == pieces { arc.end } else { a + step };
                for (theta, w) in quad.mapped(a, b) {
                    let (s, c) = theta.sin_cos();
                    let x = arcs.center.0 + arcs.radius * c;
                    let y = arcs.center.1 + arcs.radius * s;
                    let q = rec.eval_in_cell(arc.cell.0, arc.cell.1, x, y);
                    m.p += w * q.p;
                    m.p_cos += w * q.p * c;
                    m.p_sin += w * q.p * s;
                    m.u += w * q.u;
                    m.u_cos += w * q.u * c;
                    m.u_cos2 += w * q.u * c * c;
                    m.u_sincos += w * q.u * s * c;
                    m.v += w * q.v;
                    m.v_sin += w * q.v * s;
                    m.v_sin2 += w * q.v * s * s;
                    m.v_sincos += w * q.v * s * c;
                }
            }
        }
        m
    }
}

/// Reconstruction value at `P′` together with the circle moments.
fn cone_data(
    rec: &Reconstruction,
    lin: &Linearisation,
    x: f64,
    y: f64,
    tau: f64,
    quad: &GaussLegendre,
) -> Result<(PrimState, CircleMoments)> {
    let (foot, radius) = lin.cone_base(x, y, tau);
    let arcs = decompose_circle(rec.grid(), foot, radius)?;
    if arcs.arcs.is_empty() {
        return Err(AfError::QuadratureDegenerate);
    }
    let at_foot = rec.eval_symmetric(foot.0, foot.1)?;
    Ok((at_foot, CircleMoments::compute(rec, &arcs, quad)))
}

/// Third-order bicharacteristic evolution of the linearised system to
/// `(x, y, t_n + tau)`.
pub fn eg2_point(
    rec: &Reconstruction,
    lin: &Linearisation,
    x: f64,
    y: f64,
    tau: f64,
    quad: &GaussLegendre,
) -> Result<PrimState> {
    if tau == 0.0 {
        return rec.eval_symmetric(x, y);
    }
    let (w, m) = cone_data(rec, lin, x, y, tau, quad)?;
    let PrimState { rho: r0, .. } = lin.state();
    let c = lin.sound_speed();
    let inv_pi = 1.0 / PI;
    let normal = m.u_cos + m.v_sin;
    Ok(PrimState::new(
        w.rho - 2.0 * w.p / (c * c) + inv_pi * (m.p / (c * c) - r0 / c * normal),
        inv_pi * (-m.p_cos / (r0 * c) + 2.0 * m.u_cos2 - 0.5 * m.u + 2.0 * m.v_sincos),
        inv_pi * (-m.p_sin / (r0 * c) + 2.0 * m.u_sincos + 2.0 * m.v_sin2 - 0.5 * m.v),
        -w.p + inv_pi * (m.p - r0 * c * normal),
    ))
}

/// First-order bicharacteristic evolution, used on piecewise-constant data.
pub fn eg1_point(
    rec: &Reconstruction,
    lin: &Linearisation,
    x: f64,
    y: f64,
    tau: f64,
    quad: &GaussLegendre,
) -> Result<PrimState> {
    if tau == 0.0 {
        return rec.eval_symmetric(x, y);
    }
    let (w, m) = cone_data(rec, lin, x, y, tau, quad)?;
    let r0 = lin.state().rho;
    let c = lin.sound_speed();
    let k = 0.5 / PI;
    let normal = m.u_cos + m.v_sin;
    Ok(PrimState::new(
        w.rho - w.p / (c * c) + k * (m.p / (c * c) - 2.0 * r0 / c * normal),
        0.5 * w.u + k * (-2.0 * m.p_cos / (r0 * c) + 3.0 * m.u_cos2 - m.u + 3.0 * m.v_sincos),
        0.5 * w.v + k * (-2.0 * m.p_sin / (r0 * c) + 3.0 * m.u_sincos + 3.0 * m.v_sin2 - m.v),
        k * (m.p - 2.0 * r0 * c * normal),
    ))
}
