//! Transonic-shock detection, shock-indicator blending and the
//! bound-preserving cascade for evolved point values.

use serde::{Deserialize, Serialize};

use crate::error::{AfError, Result};
use crate::state::{Field, Grid, PrimState, Site, SiteFields, SiteKind, POSITIVITY_FLOOR};

/// Order in which blending and the admissibility cascade are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Composition {
    #[default]
    BlendThenBound,
    BoundThenBlend,
}

impl std::str::FromStr for Composition {
    type Err = AfError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "blend_then_bound" => Ok(Self::BlendThenBound),
            "bound_then_blend" => Ok(Self::BoundThenBlend),
            other => Err(AfError::Config(format!("unknown limiter composition '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimiterConfig {
    pub bound_preserving: bool,
    pub shock_indicator: bool,
    pub composition: Composition,
    pub positivity_floor: f64,
}

impl Default for LimiterConfig {
    fn default() -> Self {
        Self::off()
    }
}

impl LimiterConfig {
    pub const fn off() -> Self {
        Self {
            bound_preserving: false,
            shock_indicator: false,
            composition: Composition::BlendThenBound,
            positivity_floor: POSITIVITY_FLOOR,
        }
    }

    pub const fn bound() -> Self {
        Self {
            bound_preserving: true,
            ..Self::off()
        }
    }

    pub const fn bound_and_shock() -> Self {
        Self {
            bound_preserving: true,
            shock_indicator: true,
            ..Self::off()
        }
    }
}

/// Per-vertex transonic-shock indicator.
#[derive(Debug, Clone, PartialEq)]
pub struct TransonicFlags {
    vertex: Field<bool>,
}

impl TransonicFlags {
    pub fn none(grid: &Grid) -> Self {
        Self {
            vertex: grid.vertex_field(false),
        }
    }

    pub fn vertex(&self, i: isize, j: isize) -> bool {
        *self.vertex.get(i, j)
    }

    /// A site is flagged when it is a flagged vertex, or an edge midpoint
    /// with a flagged endpoint.
    pub fn site(&self, site: Site) -> bool {
        let (i, j) = (site.i, site.j);
        match site.kind {
            SiteKind::Vertex => self.vertex(i, j),
            SiteKind::XEdge => self.vertex(i, j) || self.vertex(i, j + 1),
            SiteKind::YEdge => self.vertex(i, j) || self.vertex(i + 1, j),
        }
    }

    pub fn count(&self) -> usize {
        self.vertex.values().iter().filter(|&&f| f).count()
    }
}

/// `a ± c > 0` on the upstream cell and `b ± c < 0` on the downstream cell
/// for either choice of sign.
fn compressive(up: f64, c_up: f64, down: f64, c_down: f64) -> bool {
    (up + c_up > 0.0 && down + c_down < 0.0) || (up - c_up > 0.0 && down - c_down < 0.0)
}

/// Flags every domain vertex next to a transonic shock, from the primitive
/// cell averages at the old time level.
pub fn detect_transonic(grid: &Grid, avgs: &Field<PrimState>) -> TransonicFlags {
    let mut flags = TransonicFlags::none(grid);
    let cs = avgs.map(|w| w.sound_speed());
    for b in 0..=grid.nyi() {
        for a in 0..=grid.nxi() {
            let w = |i: isize, j: isize| (*avgs.get(i, j), *cs.get(i, j));
            let (sw, csw) = w(a - 1, b - 1);
            let (se, cse) = w(a, b - 1);
            let (nw, cnw) = w(a - 1, b);
            let (ne, cne) = w(a, b);
            let hit = compressive(nw.u, cnw, ne.u, cne)
                || compressive(sw.u, csw, se.u, cse)
                || compressive(sw.v, csw, nw.v, cnw)
                || compressive(se.v, cse, ne.v, cne);
            flags.vertex.set(a, b, hit);
        }
    }
    flags
}

/// Shock-indicator weights at every point-value site. Sites outside the
/// computed range keep θ = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaField {
    pub values: SiteFields<f64>,
}

impl ThetaField {
    pub fn ones(grid: &Grid) -> Self {
        Self {
            values: SiteFields::new(grid, 1.0),
        }
    }

    pub fn at(&self, site: Site) -> f64 {
        *self.values.at(site)
    }
}

fn second_difference_ratio(a: f64, b: f64, c: f64) -> f64 {
    ((a - 2.0 * b + c) / (a + 2.0 * b + c)).abs()
}

/// `θ = exp(−φ₁·φ₂)` from pressure second differences and the local wave
/// speed; vertices take the minimum over their four edges.
pub fn shock_theta(grid: &Grid, avgs: &Field<PrimState>) -> ThetaField {
    let mut theta = ThetaField::ones(grid);
    let (nx, ny) = (grid.nxi(), grid.nyi());
    let p = |i: isize, j: isize| avgs.get(i, j).p;
    let speed_x = |i: isize, j: isize| {
        let w = avgs.get(i, j);
        w.u.abs() + w.sound_speed()
    };
    let speed_y = |i: isize, j: isize| {
        let w = avgs.get(i, j);
        w.v.abs() + w.sound_speed()
    };
    for j in -1..=ny {
        for i in 0..=nx {
            let phi1 = second_difference_ratio(p(i + 1, j), p(i, j), p(i - 1, j)).max(second_difference_ratio(
                p(i, j),
                p(i - 1, j),
                p(i - 2, j),
            ));
            let phi2 = 2f64.powf(speed_x(i, j).max(speed_x(i - 1, j)));
            theta.values.xedge.set(i, j, (-phi1 * phi2).exp());
        }
    }
    for j in 0..=ny {
        for i in -1..=nx {
            let phi1 = second_difference_ratio(p(i, j + 1), p(i, j), p(i, j - 1)).max(second_difference_ratio(
                p(i, j),
                p(i, j - 1),
                p(i, j - 2),
            ));
            let phi2 = 2f64.powf(speed_y(i, j).max(speed_y(i, j - 1)));
            theta.values.yedge.set(i, j, (-phi1 * phi2).exp());
        }
    }
    for j in 0..=ny {
        for i in 0..=nx {
            let t = theta
                .values
                .xedge
                .get(i, j)
                .min(*theta.values.xedge.get(i, j - 1))
                .min(*theta.values.yedge.get(i, j))
                .min(*theta.values.yedge.get(i - 1, j));
            theta.values.vertex.set(i, j, t);
        }
    }
    theta
}

/// Componentwise convex combination `θ·ho + (1 − θ)·lo`.
pub fn blend_point(ho: PrimState, lo: PrimState, theta: f64) -> PrimState {
    if theta >= 1.0 {
        return ho;
    }
    if theta <= 0.0 {
        return lo;
    }
    theta * ho + (1.0 - theta) * lo
}

/// Which stage supplied the final point value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    HighOrder,
    Blended,
    FirstOrder,
    LaxFriedrichs,
}

fn admissible(w: &PrimState, floor: f64) -> bool {
    w.is_finite() && w.is_admissible(floor)
}

/// Admissibility cascade: keep `candidate` if admissible, else the
/// first-order value, else the Lax–Friedrichs value.
pub fn evolve_point_bounded(
    candidate: PrimState,
    first_order: impl FnOnce() -> Result<PrimState>,
    lax_friedrichs: impl FnOnce() -> Result<PrimState>,
    floor: f64,
    site: Site,
    step: usize,
) -> Result<(PrimState, Stage)> {
    if admissible(&candidate, floor) {
        return Ok((candidate, Stage::HighOrder));
    }
    let lo = first_order()?;
    if admissible(&lo, floor) {
        return Ok((lo, Stage::FirstOrder));
    }
    match lax_friedrichs() {
        Ok(lf) if admissible(&lf, floor) => Ok((lf, Stage::LaxFriedrichs)),
        _ => Err(AfError::FatalInadmissible { site, step }),
    }
}

/// Inputs of the per-site limiting pipeline.
pub struct PointCandidates<Blend, Lo, Lf>
where
    Blend: FnOnce() -> Result<PrimState>,
    Lo: FnOnce() -> Result<PrimState>,
    Lf: FnOnce() -> Result<PrimState>,
{
    /// High-order value (EG2 plus correction).
    pub high_order: PrimState,
    /// θ at the site.
    pub theta: f64,
    /// First-order value for blending (linearised like the high-order value).
    pub blend_low: Blend,
    /// First-order value for the cascade (linearised around neighbour averages).
    pub cascade_low: Lo,
    pub lax_friedrichs: Lf,
}

/// Applies blending and bounding according to `cfg`.
pub fn limit_point<Blend, Lo, Lf>(
    cfg: &LimiterConfig,
    c: PointCandidates<Blend, Lo, Lf>,
    site: Site,
    step: usize,
) -> Result<(PrimState, Stage)>
where
    Blend: FnOnce() -> Result<PrimState>,
    Lo: FnOnce() -> Result<PrimState>,
    Lf: FnOnce() -> Result<PrimState>,
{
    let floor = cfg.positivity_floor;
    let blend_active = cfg.shock_indicator && c.theta < 1.0;
    match cfg.composition {
        Composition::BlendThenBound => {
            let (value, stage) = if blend_active {
                (blend_point(c.high_order, (c.blend_low)()?, c.theta), Stage::Blended)
            } else {
                (c.high_order, Stage::HighOrder)
            };
            if !cfg.bound_preserving {
                return finish_unbounded(value, stage, floor, site, step);
            }
            let (w, s) = evolve_point_bounded(value, c.cascade_low, c.lax_friedrichs, floor, site, step)?;
            Ok((w, if s == Stage::HighOrder { stage } else { s }))
        }
        Composition::BoundThenBlend => {
            let (bounded, stage) = if cfg.bound_preserving {
                evolve_point_bounded(c.high_order, c.cascade_low, c.lax_friedrichs, floor, site, step)?
            } else {
                (c.high_order, Stage::HighOrder)
            };
            if !blend_active {
                return finish_unbounded(bounded, stage, floor, site, step);
            }
            let blended = blend_point(bounded, (c.blend_low)()?, c.theta);
            if admissible(&blended, floor) || !cfg.bound_preserving {
                finish_unbounded(blended, Stage::Blended, floor, site, step)
            } else {
                Ok((bounded, stage))
            }
        }
    }
}

fn finish_unbounded(w: PrimState, stage: Stage, floor: f64, site: Site, step: usize) -> Result<(PrimState, Stage)> {
    if admissible(&w, floor) {
        Ok((w, stage))
    } else {
        Err(AfError::FatalInadmissible { site, step })
    }
}
