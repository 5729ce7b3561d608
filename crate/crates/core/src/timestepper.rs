//! One full step of the scheme: point values at the half and full time
//! levels, Simpson fluxes and the conservative update of the averages.

use std::collections::HashMap;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::bicharacteristics::{
    correction_term, derivatives_at, eg1_point, eg2_point, lf_point_update, GaussLegendre, Linearisation, DEFAULT_ORDER,
};
use crate::error::{AfError, Result};
use crate::limiting::{
    detect_transonic, limit_point, shock_theta, LimiterConfig, PointCandidates, Stage, ThetaField, TransonicFlags,
};
use crate::reconstruction::{build_cpq, build_pc, Reconstruction};
use crate::state::{
    domain_sites, fill_ghosts, flux_x, flux_y, primitive_averages, primitive_points, sync_periodic, BoundarySpec,
    CenterPolicy, ConsState, Field, Grid, GridState, PrimState, Site, SiteFields, SiteKind,
};

/// Largest CFL number for which the linearised operator is known to be stable.
pub const CFL_LIMIT: f64 = 0.279;

/// How the half-step linearisation state is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearisationStrategy {
    /// Quarter-step predictor linearised around the old point value.
    Nested,
    /// The old point value itself.
    Simplified,
    /// Mean of the primitive averages of the cells sharing the site.
    #[default]
    NeighborAvg,
}

impl std::str::FromStr for LinearisationStrategy {
    type Err = AfError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nested" => Ok(Self::Nested),
            "simplified" => Ok(Self::Simplified),
            "neighbor_avg" => Ok(Self::NeighborAvg),
            other => Err(AfError::Config(format!("unknown strategy '{other}'"))),
        }
    }
}

impl std::fmt::Display for LinearisationStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Nested => "nested",
            Self::Simplified => "simplified",
            Self::NeighborAvg => "neighbor_avg",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeConfig {
    pub cfl: f64,
    /// Accept CFL numbers above [`CFL_LIMIT`] (with a warning).
    pub allow_large_cfl: bool,
    pub strategy: LinearisationStrategy,
    pub correction: bool,
    /// Switch the full-step linearisation to neighbour averages near
    /// transonic shocks.
    pub transonic_fix: bool,
    pub limiter: LimiterConfig,
    pub quadrature_order: usize,
    /// Clip inadmissible averages to the floor instead of failing.
    pub clip_averages: bool,
    /// Fail on an inadmissible Simpson centre node instead of replacing it
    /// by the primitive conversion of the cell average.
    pub strict_centers: bool,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        Self {
            cfl: 0.27,
            allow_large_cfl: false,
            strategy: LinearisationStrategy::NeighborAvg,
            correction: true,
            transonic_fix: true,
            limiter: LimiterConfig::off(),
            quadrature_order: DEFAULT_ORDER,
            clip_averages: false,
            strict_centers: false,
        }
    }
}

impl SchemeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0) || !self.cfl.is_finite() {
            return Err(AfError::Config(format!("cfl must be positive, got {}", self.cfl)));
        }
        if self.cfl > CFL_LIMIT {
            if !self.allow_large_cfl {
                return Err(AfError::Config(format!(
                    "cfl {} exceeds {CFL_LIMIT}; set allow_large_cfl to override",
                    self.cfl
                )));
            }
            warn!("cfl {} exceeds the linear stability bound {CFL_LIMIT}", self.cfl);
        }
        if self.quadrature_order == 0 {
            return Err(AfError::Config("quadrature order must be at least 1".into()));
        }
        if !(self.limiter.positivity_floor >= 0.0) {
            return Err(AfError::Config("positivity floor must be non-negative".into()));
        }
        Ok(())
    }

    fn center_policy(&self) -> CenterPolicy {
        if self.strict_centers {
            CenterPolicy::Strict
        } else {
            CenterPolicy::FallbackToAverage
        }
    }
}

/// Largest stable step from the primitive averages of the interior cells.
pub fn stable_dt(grid: &Grid, avgs: &Field<PrimState>, cfl: f64) -> f64 {
    let mut smax = 0.0f64;
    for j in 0..grid.nyi() {
        for i in 0..grid.nxi() {
            let w = avgs.get(i, j);
            smax = smax.max(w.u.abs().max(w.v.abs()) + w.sound_speed());
        }
    }
    cfl * grid.h() / smax
}

/// Per-step counters.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StepStats {
    pub dt: f64,
    pub stages: HashMap<&'static str, usize>,
    pub transonic_vertices: usize,
    pub clipped_averages: usize,
}

impl StepStats {
    fn record(&mut self, stage: Stage) {
        let key = match stage {
            Stage::HighOrder => "high_order",
            Stage::Blended => "blended",
            Stage::FirstOrder => "first_order",
            Stage::LaxFriedrichs => "lax_friedrichs",
        };
        *self.stages.entry(key).or_insert(0) += 1;
    }
}

/// Everything derived from the old time level that the point updates read.
pub struct StepContext<'a> {
    pub cfg: &'a SchemeConfig,
    pub bc: &'a BoundarySpec,
    pub old: GridState,
    pub avgs: Field<PrimState>,
    pub cpq: Reconstruction,
    pub pc: Reconstruction,
    pub points: SiteFields<PrimState>,
    pub flags: TransonicFlags,
    pub theta: ThetaField,
    pub dt: f64,
    pub step: usize,
    quad: GaussLegendre,
}

impl<'a> StepContext<'a> {
    /// Fills ghosts and builds reconstructions, indicators and the step size.
    /// `t_end` clips the step to land on the target time.
    pub fn new(
        s: &GridState,
        cfg: &'a SchemeConfig,
        bc: &'a BoundarySpec,
        t_end: Option<f64>,
        step: usize,
    ) -> Result<Self> {
        let mut old = s.clone();
        fill_ghosts(&mut old, bc)?;
        let grid = old.grid;
        let policy = cfg.center_policy();
        let avgs = primitive_averages(&old, policy)?;
        let cpq = build_cpq(&old, policy)?;
        let pc = build_pc(grid, avgs.clone());
        let points = primitive_points(&old)?;
        let mut dt = stable_dt(&grid, &avgs, cfg.cfl);
        if let Some(t_end) = t_end {
            let left = t_end - old.t;
            if dt >= left * (1.0 - 1e-12) {
                dt = left;
            }
        }
        let flags = if cfg.transonic_fix {
            detect_transonic(&grid, &avgs)
        } else {
            TransonicFlags::none(&grid)
        };
        let theta = if cfg.limiter.shock_indicator {
            shock_theta(&grid, &avgs)
        } else {
            ThetaField::ones(&grid)
        };
        Ok(Self {
            cfg,
            bc,
            old,
            avgs,
            cpq,
            pc,
            points,
            flags,
            theta,
            dt,
            step,
            quad: GaussLegendre::new(cfg.quadrature_order),
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.old.grid
    }

    /// Mean primitive average over the cells sharing `site`.
    pub fn neighbor_average(&self, site: Site) -> PrimState {
        let cells = self.grid().site_cells(site);
        let cells = cells.as_slice();
        let mut acc = PrimState::ZERO;
        for &(i, j) in cells {
            acc += *self.avgs.get(i, j);
        }
        acc * (1.0 / cells.len() as f64)
    }

    fn correction(&self, site: Site, tau: f64) -> PrimState {
        if !self.cfg.correction {
            return PrimState::ZERO;
        }
        let d = derivatives_at(&self.points, self.grid(), site);
        correction_term(&d, *self.points.at(site), tau)
    }

    /// Evolves the point value at `site` over `tau` with linearisation state
    /// `lin_state`, then limits it.
    fn evolve(&self, site: Site, lin_state: PrimState, tau: f64, stats: &mut StepStats) -> Result<PrimState> {
        let (x, y) = self.grid().site_coords(site);
        let lin = Linearisation::new(lin_state)?;
        let high_order = eg2_point(&self.cpq, &lin, x, y, tau, &self.quad)? + self.correction(site, tau);
        let cands = PointCandidates {
            high_order,
            theta: self.theta.at(site),
            blend_low: || eg1_point(&self.pc, &lin, x, y, tau, &self.quad),
            cascade_low: || {
                let tilde = Linearisation::new(self.neighbor_average(site))?;
                eg1_point(&self.pc, &tilde, x, y, tau, &self.quad)
            },
            lax_friedrichs: || lf_point_update(&self.old, site, tau),
        };
        let (w, stage) = limit_point(&self.cfg.limiter, cands, site, self.step)?;
        stats.record(stage);
        Ok(w)
    }

    fn half_step_state(&self, site: Site) -> Result<PrimState> {
        let old = *self.points.at(site);
        if self.bc.wall_normal(self.grid(), site).is_some() {
            return Ok(old);
        }
        Ok(match self.cfg.strategy {
            LinearisationStrategy::Simplified => old,
            LinearisationStrategy::NeighborAvg => self.neighbor_average(site),
            LinearisationStrategy::Nested => {
                let (x, y) = self.grid().site_coords(site);
                let lin = Linearisation::new(old)?;
                let quarter = eg2_point(&self.cpq, &lin, x, y, 0.25 * self.dt, &self.quad)?;
                if quarter.is_finite() && quarter.is_admissible(self.cfg.limiter.positivity_floor) {
                    quarter
                } else {
                    self.neighbor_average(site)
                }
            }
        })
    }

    /// Point values at `t_n + Δt/2` on all evolved sites.
    pub fn half_step_points(&self, stats: &mut StepStats) -> Result<SiteFields<PrimState>> {
        let mut out = self.points.clone();
        for kind in SiteKind::ALL {
            for site in domain_sites(self.grid(), self.bc, kind) {
                let lin = self.half_step_state(site)?;
                out.set(site, self.evolve(site, lin, 0.5 * self.dt, stats)?);
            }
        }
        sync_periodic(&mut out, self.grid(), self.bc);
        Ok(out)
    }

    /// Point values at `t_n + Δt`, linearised around the half-step value at
    /// the same site or, near transonic shocks, around neighbour averages.
    pub fn full_step_points(
        &self,
        half: &SiteFields<PrimState>,
        stats: &mut StepStats,
    ) -> Result<SiteFields<PrimState>> {
        let mut out = self.points.clone();
        for kind in SiteKind::ALL {
            for site in domain_sites(self.grid(), self.bc, kind) {
                let lin = if self.flags.site(site) {
                    self.neighbor_average(site)
                } else {
                    *half.at(site)
                };
                out.set(site, self.evolve(site, lin, self.dt, stats)?);
            }
        }
        sync_periodic(&mut out, self.grid(), self.bc);
        Ok(out)
    }
}

const SIMPSON: [f64; 3] = [1.0, 4.0, 1.0];

/// Space–time Simpson rule of a flux over three nodes along an edge at
/// three time levels; `nodes[t][s]` is node `s` at level `t`.
pub fn simpson_flux(f: fn(&ConsState) -> ConsState, nodes: &[[ConsState; 3]; 3]) -> ConsState {
    let mut acc = ConsState::ZERO;
    for (wt, level) in SIMPSON.iter().zip(nodes) {
        for (ws, q) in SIMPSON.iter().zip(level) {
            acc += (wt * ws) * f(q);
        }
    }
    acc * (1.0 / 36.0)
}

/// Flux through the vertical edge with x-edge index `(i, j)`.
pub fn simpson_flux_x(levels: [&SiteFields<ConsState>; 3], i: isize, j: isize) -> ConsState {
    let nodes = levels.map(|l| [*l.vertex.get(i, j), *l.xedge.get(i, j), *l.vertex.get(i, j + 1)]);
    simpson_flux(flux_x, &nodes)
}

/// Flux through the horizontal edge with y-edge index `(i, j)`.
pub fn simpson_flux_y(levels: [&SiteFields<ConsState>; 3], i: isize, j: isize) -> ConsState {
    let nodes = levels.map(|l| [*l.vertex.get(i, j), *l.yedge.get(i, j), *l.vertex.get(i + 1, j)]);
    simpson_flux(flux_y, &nodes)
}

/// Edge fluxes of the interior cells: `fx` on x-edges `[0, nx] × [0, ny)`,
/// `fy` on y-edges `[0, nx) × [0, ny]`.
pub struct EdgeFluxes {
    pub fx: Field<ConsState>,
    pub fy: Field<ConsState>,
}

pub fn edge_fluxes(grid: &Grid, levels: [&SiteFields<ConsState>; 3]) -> EdgeFluxes {
    let (nx, ny) = (grid.nxi(), grid.nyi());
    let mut fx = Field::new(0, nx + 1, 0, ny, ConsState::ZERO);
    let mut fy = Field::new(0, nx, 0, ny + 1, ConsState::ZERO);
    for j in 0..ny {
        for i in 0..=nx {
            fx.set(i, j, simpson_flux_x(levels, i, j));
        }
    }
    for j in 0..=ny {
        for i in 0..nx {
            fy.set(i, j, simpson_flux_y(levels, i, j));
        }
    }
    EdgeFluxes { fx, fy }
}

/// Conservative update of the interior averages. Inadmissible results fail
/// unless `clip` is set, in which case density and pressure are raised to
/// the floor and the number of clipped cells is returned.
pub fn fv_update(
    s: &GridState,
    fluxes: &EdgeFluxes,
    dt: f64,
    step: usize,
    clip: Option<f64>,
) -> Result<(Field<ConsState>, usize)> {
    let grid = &s.grid;
    let (lx, ly) = (dt / grid.dx, dt / grid.dy);
    let mut avg = s.avg.clone();
    let mut clipped = 0;
    for j in 0..grid.nyi() {
        for i in 0..grid.nxi() {
            let q = *s.avg.get(i, j)
                - lx * (*fluxes.fx.get(i + 1, j) - *fluxes.fx.get(i, j))
                - ly * (*fluxes.fy.get(i, j + 1) - *fluxes.fy.get(i, j));
            let checked = q.to_prim().and_then(|w| {
                let floor = clip.unwrap_or(crate::state::POSITIVITY_FLOOR);
                w.check_admissible(floor, || format!("cell ({i}, {j})")).map(|_| w)
            });
            let q = match (checked, clip) {
                (Ok(_), _) => q,
                (Err(e), None) => {
                    return Err(AfError::InadmissibleAverage {
                        i,
                        j,
                        step,
                        detail: e.to_string(),
                    })
                }
                (Err(_), Some(floor)) => {
                    clipped += 1;
                    let rho = q.rho.max(floor);
                    let (u, v) = if q.rho > floor {
                        (q.mx / q.rho, q.my / q.rho)
                    } else {
                        (0.0, 0.0)
                    };
                    let p = q.pressure().max(floor);
                    PrimState::new(rho, u, v, p).to_cons()
                }
            };
            avg.set(i, j, q);
        }
    }
    Ok((avg, clipped))
}

fn to_cons(p: &SiteFields<PrimState>) -> SiteFields<ConsState> {
    SiteFields {
        vertex: p.vertex.map(PrimState::to_cons),
        xedge: p.xedge.map(PrimState::to_cons),
        yedge: p.yedge.map(PrimState::to_cons),
    }
}

/// Advances `s` by one step (clipped to `t_end` when given).
pub fn advance(
    s: &GridState,
    cfg: &SchemeConfig,
    bc: &BoundarySpec,
    t_end: Option<f64>,
    step: usize,
) -> Result<(GridState, StepStats)> {
    cfg.validate()?;
    let ctx = StepContext::new(s, cfg, bc, t_end, step)?;
    let mut stats = StepStats {
        dt: ctx.dt,
        transonic_vertices: ctx.flags.count(),
        ..Default::default()
    };
    let half = ctx.half_step_points(&mut stats)?;
    let full = ctx.full_step_points(&half, &mut stats)?;

    let level_n = SiteFields {
        vertex: ctx.old.pv_vertex.clone(),
        xedge: ctx.old.pv_xedge.clone(),
        yedge: ctx.old.pv_yedge.clone(),
    };
    let (half_c, full_c) = (to_cons(&half), to_cons(&full));
    let fluxes = edge_fluxes(ctx.grid(), [&level_n, &half_c, &full_c]);
    let clip = cfg.clip_averages.then_some(cfg.limiter.positivity_floor.max(1e-300));
    let (avg, clipped) = fv_update(&ctx.old, &fluxes, ctx.dt, step, clip)?;
    if clipped > 0 {
        warn!("step {step}: clipped {clipped} inadmissible averages");
    }
    stats.clipped_averages = clipped;

    let next = GridState {
        grid: ctx.old.grid,
        t: if t_end.is_some_and(|te| ctx.dt == te - ctx.old.t) {
            t_end.unwrap()
        } else {
            ctx.old.t + ctx.dt
        },
        avg,
        pv_vertex: full_c.vertex,
        pv_xedge: full_c.xedge,
        pv_yedge: full_c.yedge,
    };
    Ok((next, stats))
}

/// Advances until `t_end`, calling `observe` after every step. Returns the
/// final state and the number of steps taken.
pub fn run_until(
    s: &GridState,
    cfg: &SchemeConfig,
    bc: &BoundarySpec,
    t_end: f64,
    mut observe: impl FnMut(&GridState, &StepStats, usize) -> Result<()>,
) -> Result<(GridState, usize)> {
    let mut cur = s.clone();
    let mut step = 0;
    while cur.t < t_end {
        let (next, stats) = advance(&cur, cfg, bc, Some(t_end), step)?;
        step += 1;
        observe(&next, &stats, step)?;
        cur = next;
    }
    Ok((cur, step))
}

#[cfg(test)]
mod tests;
