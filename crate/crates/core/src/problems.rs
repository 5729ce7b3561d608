//! Catalog of test problems: domains, initial data, boundary conditions and
//! the error measures used in convergence studies.

use serde::Serialize;

use crate::error::{AfError, Result};
use crate::state::{BoundaryKind, BoundarySpec, ConsState, Grid, GridState, PrimState, GAMMA};

/// How a problem's numerical error is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceKind {
    /// The exact solution equals the initial data at integer times.
    SelfAtIntegerTimes,
    /// Compared against a run on a grid twice as fine.
    FineGridReference,
    None,
}

pub type InitialField = fn(f64, f64) -> PrimState;

#[derive(Debug, Clone, Copy)]
pub struct ProblemSpec {
    pub name: &'static str,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub initial: InitialField,
    pub bc: BoundarySpec,
    pub t_end: f64,
    pub reference: ReferenceKind,
    /// Initial data has jumps on grid lines.
    pub discontinuous: bool,
    /// Independent of y; run with [`ONE_D_NY`] cells in y.
    pub one_dimensional: bool,
}

/// Cells in y for x-only problems.
pub const ONE_D_NY: usize = 8;

pub const PROBLEM_NAMES: [&str; 13] = [
    "ex1",
    "vortex",
    "transonic_rarefaction",
    "double_rarefaction",
    "rp_f",
    "rp_e",
    "rp_j",
    "rp_3",
    "rp_4",
    "kelvin_helmholtz",
    "shock_reflection",
    "transonic_shock",
    "constant",
];

/// Distance below which a point counts as lying on an interface.
const INTERFACE_TOL: f64 = 1e-10;

impl ProblemSpec {
    /// Grid with `nx` cells in x; `ny` defaults to [`ONE_D_NY`] for x-only
    /// problems and to `nx` scaled by the aspect ratio otherwise.
    pub fn grid(&self, nx: usize, ny: Option<usize>) -> Result<Grid> {
        let ny = ny.unwrap_or_else(|| {
            if self.one_dimensional {
                ONE_D_NY
            } else {
                let aspect = (self.y_range.1 - self.y_range.0) / (self.x_range.1 - self.x_range.0);
                ((nx as f64 * aspect).round() as usize).max(1)
            }
        });
        Grid::new(nx, ny, self.x_range.0, self.x_range.1, self.y_range.0, self.y_range.1)
    }
}

pub fn make_problem(name: &str) -> Result<ProblemSpec> {
    let periodic = BoundarySpec::periodic();
    let one_d_outflow = BoundarySpec::outflow_x_periodic_y();
    let unit = (0.0, 1.0);
    let spec = |name, x_range, y_range, initial, bc, t_end, reference, discontinuous, one_dimensional| ProblemSpec {
        name,
        x_range,
        y_range,
        initial,
        bc,
        t_end,
        reference,
        discontinuous,
        one_dimensional,
    };
    use ReferenceKind::*;
    Ok(match name {
        "ex1" => spec(
            "ex1",
            unit,
            unit,
            gaussian_pulse as InitialField,
            periodic,
            0.25,
            FineGridReference,
            false,
            true,
        ),
        "vortex" => spec(
            "vortex",
            unit,
            unit,
            vortex,
            periodic,
            1.0,
            SelfAtIntegerTimes,
            false,
            false,
        ),
        "transonic_rarefaction" => spec(
            "transonic_rarefaction",
            (-1.5, 0.5),
            unit,
            transonic_rarefaction,
            one_d_outflow,
            0.4,
            FineGridReference,
            true,
            true,
        ),
        "double_rarefaction" => spec(
            "double_rarefaction",
            unit,
            unit,
            double_rarefaction,
            one_d_outflow,
            0.3,
            None,
            true,
            true,
        ),
        "rp_f" => spec(
            "rp_f",
            unit,
            unit,
            riemann_f,
            BoundarySpec::outflow(),
            0.21,
            None,
            true,
            false,
        ),
        "rp_e" => spec(
            "rp_e",
            unit,
            unit,
            riemann_e,
            BoundarySpec::outflow(),
            0.3,
            None,
            true,
            false,
        ),
        "rp_j" => spec(
            "rp_j",
            unit,
            unit,
            riemann_j,
            BoundarySpec::outflow(),
            0.3,
            None,
            true,
            false,
        ),
        "rp_3" => spec(
            "rp_3",
            unit,
            unit,
            riemann_3,
            BoundarySpec::outflow(),
            0.8,
            None,
            true,
            false,
        ),
        "rp_4" => spec(
            "rp_4",
            unit,
            unit,
            riemann_4,
            BoundarySpec::outflow(),
            0.21,
            None,
            true,
            false,
        ),
        "kelvin_helmholtz" => spec(
            "kelvin_helmholtz",
            (-0.5, 0.5),
            (-0.5, 0.5),
            kelvin_helmholtz,
            periodic,
            1.0,
            None,
            true,
            false,
        ),
        "shock_reflection" => spec(
            "shock_reflection",
            (0.0, 4.0),
            unit,
            shock_reflection,
            BoundarySpec {
                left: BoundaryKind::Inflow(REFLECTION_PRE),
                right: BoundaryKind::Outflow,
                bottom: BoundaryKind::Wall,
                top: BoundaryKind::Inflow(REFLECTION_POST),
            },
            6.0,
            None,
            true,
            false,
        ),
        "transonic_shock" => spec(
            "transonic_shock",
            unit,
            unit,
            transonic_shock,
            one_d_outflow,
            0.4,
            None,
            true,
            true,
        ),
        "constant" => spec(
            "constant",
            unit,
            unit,
            constant,
            periodic,
            0.1,
            SelfAtIntegerTimes,
            false,
            false,
        ),
        other => return Err(AfError::UnknownProblem(other.to_string())),
    })
}

pub fn gaussian_pulse(x: f64, _y: f64) -> PrimState {
    let r = 1.0 + 0.5 * (-80.0 * (x - 0.5).powi(2)).exp();
    PrimState::new(r, 0.0, 0.0, r)
}

pub fn constant(_x: f64, _y: f64) -> PrimState {
    PrimState::new(1.0, 0.3, -0.2, 1.0 / GAMMA)
}

pub const VORTEX_BACKGROUND: PrimState = PrimState::new(0.5, 1.0, 1.0, 0.1);
pub const VORTEX_CENTER: (f64, f64) = (0.5, 0.5);
pub const VORTEX_RADIUS: f64 = 0.4;

/// `(numerator, denominator, power)` of the vortex pressure polynomial,
/// to be scaled by `1024²`.
const VORTEX_PRESSURE_TERMS: [(f64, f64, i32); 25] = [
    (1.0, 72.0, 36),
    (-6.0, 35.0, 35),
    (15.0, 17.0, 34),
    (-74.0, 33.0, 33),
    (57.0, 32.0, 32),
    (174.0, 31.0, 31),
    (-269.0, 15.0, 30),
    (450.0, 29.0, 29),
    (153.0, 8.0, 28),
    (-1564.0, 27.0, 27),
    (510.0, 13.0, 26),
    (204.0, 5.0, 25),
    (-1473.0, 16.0, 24),
    (1014.0, 23.0, 23),
    (1053.0, 22.0, 22),
    (-558.0, 7.0, 21),
    (783.0, 20.0, 20),
    (54.0, 19.0, 19),
    (-38.0, 9.0, 18),
    (-222.0, 17.0, 17),
    (609.0, 32.0, 16),
    (-184.0, 15.0, 15),
    (9.0, 2.0, 14),
    (-12.0, 13.0, 13),
    (1.0, 12.0, 12),
];

/// Vortex pressure polynomial in the scaled radius.
pub fn vortex_pressure_polynomial(r: f64) -> f64 {
    let sum: f64 = VORTEX_PRESSURE_TERMS
        .iter()
        .map(|&(num, den, k)| num / den * r.powi(k))
        .sum();
    1024.0 * 1024.0 * sum
}

/// Smooth travelling vortex; returns to its initial position at integer times.
pub fn vortex(x: f64, y: f64) -> PrimState {
    let bg = VORTEX_BACKGROUND;
    let dx = x - VORTEX_CENTER.0;
    let dy = y - VORTEX_CENTER.1;
    let r = (dx * dx + dy * dy).sqrt() / VORTEX_RADIUS;
    if r >= 1.0 {
        return bg;
    }
    let swirl = if r > 0.0 {
        1024.0 * (1.0 - r).powi(6) * r.powi(6) / (r * VORTEX_RADIUS)
    } else {
        0.0
    };
    // sinθ = dy/(rR), cosθ = dx/(rR)
    PrimState::new(
        bg.rho + 0.5 * (1.0 - r * r).powi(6),
        bg.u - swirl * dy,
        bg.v + swirl * dx,
        bg.p + (vortex_pressure_polynomial(r) - vortex_pressure_polynomial(1.0)),
    )
}

fn split_x(x: f64, x0: f64, left: PrimState, mid: PrimState, right: PrimState) -> PrimState {
    if (x - x0).abs() <= INTERFACE_TOL {
        mid
    } else if x < x0 {
        left
    } else {
        right
    }
}

pub fn transonic_rarefaction(x: f64, _y: f64) -> PrimState {
    split_x(
        x,
        0.0,
        PrimState::new(0.1, -2.0, 0.0, 0.1),
        PrimState::new(0.55, -1.5, 0.0, 0.55),
        PrimState::new(1.0, -1.0, 0.0, 1.0),
    )
}

pub fn double_rarefaction(x: f64, _y: f64) -> PrimState {
    split_x(
        x,
        0.5,
        PrimState::new(7.0, -1.0, 0.0, 0.2),
        PrimState::new(7.0, 0.0, 0.0, 0.2),
        PrimState::new(7.0, 1.0, 0.0, 0.2),
    )
}

/// Mach 1.5 normal shock seen from a frame moving right at 0.35. The
/// pre-shock side has `u − c > 0` and the post-shock side `u − c < 0`, so
/// the shock is transonic and travels left at speed 0.35.
pub fn transonic_shock(x: f64, _y: f64) -> PrimState {
    let (left, right) = transonic_shock_states();
    if x <= 0.5 + INTERFACE_TOL {
        left
    } else {
        right
    }
}

pub const TRANSONIC_SHOCK_SPEED: f64 = -0.35;

/// Pre- and post-shock states of [`transonic_shock`] from the normal-shock
/// relations.
pub fn transonic_shock_states() -> (PrimState, PrimState) {
    let mach: f64 = 1.5;
    let (rho1, p1) = (1.0, 1.0);
    let c1 = (GAMMA * p1 / rho1).sqrt();
    let u1 = mach * c1;
    let m2 = mach * mach;
    let density_ratio = (GAMMA + 1.0) * m2 / ((GAMMA - 1.0) * m2 + 2.0);
    let pressure_ratio = 1.0 + 2.0 * GAMMA / (GAMMA + 1.0) * (m2 - 1.0);
    let frame = -TRANSONIC_SHOCK_SPEED;
    (
        PrimState::new(rho1, u1 - frame, 0.0, p1),
        PrimState::new(
            rho1 * density_ratio,
            u1 / density_ratio - frame,
            0.0,
            p1 * pressure_ratio,
        ),
    )
}

/// Quadrant states `[upper right, upper left, lower left, lower right]` and
/// the split point.
pub struct RiemannConfig {
    pub states: [PrimState; 4],
    pub split: (f64, f64),
}

const fn w(rho: f64, u: f64, v: f64, p: f64) -> PrimState {
    PrimState::new(rho, u, v, p)
}

// Quadrant states of the Lax–Liu catalogue of two-dimensional Riemann
// problems (configurations 12, 13, 17, 3 and 4). Points on an interface
// take the lower-index side.
pub const RIEMANN_F: RiemannConfig = RiemannConfig {
    states: [
        w(0.5313, 0.0, 0.0, 0.4),
        w(1.0, 0.7276, 0.0, 1.0),
        w(0.8, 0.0, 0.0, 1.0),
        w(1.0, 0.0, 0.7276, 1.0),
    ],
    split: (0.5, 0.5),
};
pub const RIEMANN_E: RiemannConfig = RiemannConfig {
    states: [
        w(1.0, 0.0, -0.3, 1.0),
        w(2.0, 0.0, 0.3, 1.0),
        w(1.0625, 0.0, 0.8145, 0.4),
        w(0.5313, 0.0, 0.4276, 0.4),
    ],
    split: (0.5, 0.5),
};
pub const RIEMANN_J: RiemannConfig = RiemannConfig {
    states: [
        w(1.0, 0.0, -0.4, 1.0),
        w(2.0, 0.0, -0.3, 1.0),
        w(1.0625, 0.0, 0.2145, 0.4),
        w(0.5197, 0.0, -1.1259, 0.4),
    ],
    split: (0.5, 0.5),
};
pub const RIEMANN_3: RiemannConfig = RiemannConfig {
    states: [
        w(1.5, 0.0, 0.0, 1.5),
        w(0.5323, 1.206, 0.0, 0.3),
        w(0.138, 1.206, 1.206, 0.029),
        w(0.5323, 0.0, 1.206, 0.3),
    ],
    split: (0.8, 0.8),
};
pub const RIEMANN_4: RiemannConfig = RiemannConfig {
    states: [
        w(1.1, 0.0, 0.0, 1.1),
        w(0.5065, 0.8939, 0.0, 0.35),
        w(1.1, 0.8939, 0.8939, 1.1),
        w(0.5065, 0.0, 0.8939, 0.35),
    ],
    split: (0.5, 0.5),
};

impl RiemannConfig {
    pub fn eval(&self, x: f64, y: f64) -> PrimState {
        let right = x > self.split.0 + INTERFACE_TOL;
        let top = y > self.split.1 + INTERFACE_TOL;
        self.states[match (right, top) {
            (true, true) => 0,
            (false, true) => 1,
            (false, false) => 2,
            (true, false) => 3,
        }]
    }
}

pub fn riemann_f(x: f64, y: f64) -> PrimState {
    RIEMANN_F.eval(x, y)
}
pub fn riemann_e(x: f64, y: f64) -> PrimState {
    RIEMANN_E.eval(x, y)
}
pub fn riemann_j(x: f64, y: f64) -> PrimState {
    RIEMANN_J.eval(x, y)
}
pub fn riemann_3(x: f64, y: f64) -> PrimState {
    RIEMANN_3.eval(x, y)
}
pub fn riemann_4(x: f64, y: f64) -> PrimState {
    RIEMANN_4.eval(x, y)
}

pub fn kelvin_helmholtz(x: f64, y: f64) -> PrimState {
    let v = 1e-2 * (2.0 * std::f64::consts::PI * x).sin();
    if y > 0.25 + INTERFACE_TOL || y < -0.25 - INTERFACE_TOL {
        PrimState::new(1.0, 0.5, v, 2.5)
    } else {
        PrimState::new(2.0, -0.5, v, 2.5)
    }
}

pub const REFLECTION_PRE: PrimState = PrimState::new(1.0, 2.9, 0.0, 1.0 / GAMMA);
pub const REFLECTION_POST: PrimState = PrimState::new(1.69997, 2.61934, -0.50632, 1.52819);

pub fn shock_reflection(_x: f64, y: f64) -> PrimState {
    if (y - 1.0).abs() <= INTERFACE_TOL {
        REFLECTION_POST
    } else {
        REFLECTION_PRE
    }
}

/// Discrete initial state: point values sampled at every site and cell
/// averages from the Simpson rule over those point values and the sampled
/// cell centre, so the centre node recovered from the average is the sampled
/// one even for discontinuous data.
pub fn initialize(spec: &ProblemSpec, grid: Grid) -> GridState {
    GridState::sample(grid, spec.initial)
}

/// L1 norms of the cell-average differences, per conservative component.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ErrorNorms {
    pub rho: f64,
    pub mx: f64,
    pub my: f64,
    pub e: f64,
}

fn l1_norms(grid: &Grid, diff: impl Fn(isize, isize) -> ConsState) -> ErrorNorms {
    let mut acc = [0.0; 4];
    for j in 0..grid.nyi() {
        for i in 0..grid.nxi() {
            for (a, d) in acc.iter_mut().zip(diff(i, j).as_array()) {
                *a += d.abs();
            }
        }
    }
    let area = grid.cell_area();
    ErrorNorms {
        rho: acc[0] * area,
        mx: acc[1] * area,
        my: acc[2] * area,
        e: acc[3] * area,
    }
}

/// L1 difference between `coarse` and the restriction of `fine`. The fine
/// grid must have twice the cells in x and either twice or the same number
/// in y (x-only problems keep their rows fixed).
pub fn reference_error(coarse: &GridState, fine: &GridState) -> Result<ErrorNorms> {
    let (cg, fg) = (&coarse.grid, &fine.grid);
    let fy = if fg.ny == cg.ny { 1 } else { 2 };
    if !cg.is_refinement(fg, 2, fy) {
        return Err(AfError::GridMismatch(format!(
            "{}x{} is not a 2x refinement of {}x{}",
            fg.nx, fg.ny, cg.nx, cg.ny
        )));
    }
    let fy = fy as isize;
    Ok(l1_norms(cg, |i, j| {
        let mut restricted = ConsState::ZERO;
        for b in 0..fy {
            for a in 0..2 {
                restricted += *fine.avg.get(2 * i + a, fy * j + b);
            }
        }
        *coarse.avg.get(i, j) - restricted * (1.0 / (2 * fy) as f64)
    }))
}

/// L1 difference between `s` and the initial data on the same grid.
pub fn error_vs_initial(s: &GridState, spec: &ProblemSpec) -> ErrorNorms {
    let exact = initialize(spec, s.grid);
    l1_norms(&s.grid, |i, j| *s.avg.get(i, j) - *exact.avg.get(i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{primitive_points, Site, SiteKind};

    #[test]
    fn catalog_values() {
        let ex1 = make_problem("ex1").unwrap();
        assert_eq!((ex1.initial)(0.5, 0.3), PrimState::new(1.5, 0.0, 0.0, 1.5));
        let vortex = make_problem("vortex").unwrap();
        assert_eq!((vortex.initial)(0.95, 0.5), VORTEX_BACKGROUND);
        assert_eq!((vortex.initial)(0.0, 0.0), PrimState::new(0.5, 1.0, 1.0, 0.1));
        let dr = make_problem("double_rarefaction").unwrap();
        assert_eq!((dr.initial)(0.5, 0.1), PrimState::new(7.0, 0.0, 0.0, 0.2));
        assert_eq!((dr.initial)(0.2, 0.1).u, -1.0);
        assert_eq!((dr.initial)(0.7, 0.1).u, 1.0);
        let tr = make_problem("transonic_rarefaction").unwrap();
        assert_eq!((tr.initial)(0.0, 0.0), PrimState::new(0.55, -1.5, 0.0, 0.55));
        assert!(matches!(make_problem("nope"), Err(AfError::UnknownProblem(_))));
    }

    #[test]
    fn every_problem_is_admissible_on_a_dense_scan() {
        for name in PROBLEM_NAMES {
            let spec = make_problem(name).unwrap();
            let n = 1000;
            for a in 0..=n {
                for b in 0..=n {
                    let x = spec.x_range.0 + (spec.x_range.1 - spec.x_range.0) * a as f64 / n as f64;
                    let y = spec.y_range.0 + (spec.y_range.1 - spec.y_range.0) * b as f64 / n as f64;
                    let w = (spec.initial)(x, y);
                    assert!(w.is_finite() && w.is_admissible(0.0), "{name} at ({x}, {y}): {w:?}");
                }
            }
        }
    }

    #[test]
    fn riemann_quadrants_are_admissible() {
        for cfg in [RIEMANN_F, RIEMANN_E, RIEMANN_J, RIEMANN_3, RIEMANN_4] {
            assert!(cfg.states.iter().all(|w| w.is_admissible(0.0)));
        }
        assert_eq!(RIEMANN_F.eval(0.75, 0.75), RIEMANN_F.states[0]);
        assert_eq!(RIEMANN_F.eval(0.25, 0.75), RIEMANN_F.states[1]);
        assert_eq!(RIEMANN_F.eval(0.25, 0.25), RIEMANN_F.states[2]);
        assert_eq!(RIEMANN_F.eval(0.75, 0.25), RIEMANN_F.states[3]);
        // interface points take the lower-index side
        assert_eq!(RIEMANN_F.eval(0.5, 0.5), RIEMANN_F.states[2]);
    }

    #[test]
    fn vortex_is_continuous_at_its_edge() {
        let bg = VORTEX_BACKGROUND;
        for k in 0..16 {
            let a = k as f64 * std::f64::consts::PI / 8.0;
            let r = VORTEX_RADIUS * (1.0 - 1e-9);
            let w = vortex(0.5 + r * a.cos(), 0.5 + r * a.sin());
            // the polynomial cancels terms of size ~1e8, so roundoff is ~1e-8
            assert!(w.max_abs_diff(&bg) < 1e-7, "{w:?}");
        }
    }

    /// The pressure polynomial balances the centrifugal force of the swirl:
    /// `p'(r) = ρ(r) u_θ(r)² / r` in scaled radius.
    #[test]
    fn vortex_pressure_is_in_radial_equilibrium() {
        for k in 1..40 {
            let r = k as f64 / 40.0;
            let dp: f64 = 1024.0
                * 1024.0
                * VORTEX_PRESSURE_TERMS
                    .iter()
                    .map(|&(num, den, k)| num / den * k as f64 * r.powi(k - 1))
                    .sum::<f64>();
            let rho = VORTEX_BACKGROUND.rho + 0.5 * (1.0 - r * r).powi(6);
            let swirl = 1024.0 * (1.0 - r).powi(6) * r.powi(6);
            let want = rho * swirl * swirl / r;
            assert!((dp - want).abs() <= 1e-6 + 1e-9 * want.abs(), "r = {r}: {dp} vs {want}");
        }
    }

    #[test]
    fn initialized_averages_are_simpson_of_the_closed_form() {
        let spec = make_problem("vortex").unwrap();
        let grid = spec.grid(64, None).unwrap();
        let s = initialize(&spec, grid);
        for j in 0..64 {
            for i in 0..64 {
                let mut acc = [0.0; 4];
                let w = [1.0, 4.0, 1.0];
                for b in 0..3 {
                    for a in 0..3 {
                        let x = grid.x_line(i) + 0.5 * a as f64 * grid.dx;
                        let y = grid.y_line(j) + 0.5 * b as f64 * grid.dy;
                        let q = vortex(x, y).to_cons().as_array();
                        for m in 0..4 {
                            acc[m] += w[a] * w[b] * q[m] / 36.0;
                        }
                    }
                }
                let got = s.avg.get(i, j).as_array();
                for m in 0..4 {
                    assert!((got[m] - acc[m]).abs() <= 1e-14 * acc[m].abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn interface_point_takes_middle_state() {
        let spec = make_problem("transonic_rarefaction").unwrap();
        let grid = spec.grid(256, None).unwrap();
        let s = initialize(&spec, grid);
        let pts = primitive_points(&s).unwrap();
        let i0 = 192;
        assert!(grid.x_line(i0).abs() < 1e-12);
        let mid = PrimState::new(0.55, -1.5, 0.0, 0.55);
        for kind in [SiteKind::Vertex, SiteKind::XEdge] {
            assert!(pts.at(Site::new(kind, i0, 3)).max_abs_diff(&mid) < 1e-14);
        }
        // One face column (weights 1 + 4 + 1 of 36) carries the middle state.
        let qm = mid.to_cons();
        let ql = PrimState::new(0.1, -2.0, 0.0, 0.1).to_cons();
        let qr = PrimState::new(1.0, -1.0, 0.0, 1.0).to_cons();
        let want_left = (30.0 / 36.0) * ql + (6.0 / 36.0) * qm;
        let want_right = (30.0 / 36.0) * qr + (6.0 / 36.0) * qm;
        assert!(s.avg.get(i0 - 1, 2).max_abs_diff(&want_left) < 1e-14);
        assert!(s.avg.get(i0, 2).max_abs_diff(&want_right) < 1e-14);
        assert!(s.avg.get(i0 - 2, 2).max_abs_diff(&ql) < 1e-14);
    }

    #[test]
    fn transonic_shock_satisfies_jump_conditions() {
        let (l, r) = transonic_shock_states();
        assert!(l.u - l.sound_speed() > 0.0 && r.u - r.sound_speed() < 0.0);
        let s = TRANSONIC_SHOCK_SPEED;
        let (ql, qr) = (l.to_cons(), r.to_cons());
        let jump = (crate::state::flux_x(&qr) - crate::state::flux_x(&ql)) - s * (qr - ql);
        assert!(jump.as_array().iter().all(|d| d.abs() < 1e-12), "{jump:?}");
    }

    #[test]
    fn reference_error_cases() {
        let coarse_grid = Grid::new(4, 4, 0.0, 1.0, 0.0, 1.0).unwrap();
        let fine_grid = Grid::new(8, 8, 0.0, 1.0, 0.0, 1.0).unwrap();
        let q = PrimState::new(1.0, 0.2, 0.1, 1.0).to_cons();
        let coarse = GridState::uniform(coarse_grid, q);
        let fine = GridState::uniform(fine_grid, q);
        assert_eq!(reference_error(&coarse, &fine).unwrap(), ErrorNorms::default());
        let delta = 1e-3;
        let shifted = GridState::uniform(fine_grid, q + ConsState::new(delta, 0.0, 0.0, 0.0));
        let e = reference_error(&coarse, &shifted).unwrap();
        assert!((e.rho - delta).abs() < 1e-15);
        assert!(matches!(
            reference_error(&coarse, &coarse),
            Err(AfError::GridMismatch(_))
        ));
        let wide = GridState::uniform(Grid::new(8, 4, 0.0, 1.0, 0.0, 1.0).unwrap(), q);
        assert_eq!(reference_error(&coarse, &wide).unwrap(), ErrorNorms::default());
        let odd = GridState::uniform(Grid::new(8, 12, 0.0, 1.0, 0.0, 1.0).unwrap(), q);
        assert!(reference_error(&coarse, &odd).is_err());
    }

    #[test]
    fn one_dimensional_problems_use_eight_rows() {
        let g = make_problem("ex1").unwrap().grid(64, None).unwrap();
        assert_eq!((g.nx, g.ny), (64, 8));
        let g = make_problem("shock_reflection").unwrap().grid(120, None).unwrap();
        assert_eq!((g.nx, g.ny), (120, 30));
    }
}
