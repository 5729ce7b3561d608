//! Single runs: time loop, field CSVs, run summary and checkpoints.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use log::info;
use serde::{Deserialize, Serialize};

use super::config::{limiter_name, RunConfig};
use crate::error::{AfError, Result};
use crate::problems::{initialize, make_problem, ProblemSpec};
use crate::state::{domain_sites, ConsState, GridState, SiteKind};
use crate::timestepper::{advance, StepStats};

/// Machine-readable record of one run. Wall time goes to `timing.json`
/// instead so that identical runs produce identical summaries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub problem: String,
    pub nx: usize,
    pub ny: usize,
    pub t_final: f64,
    pub steps: usize,
    /// Smallest density over averages and point values, all time levels.
    pub min_rho: f64,
    pub min_p: f64,
    /// `|Σ Q̄(t_final) − Σ Q̄(0)|` per conservative component, relative to
    /// `max(|Σ Q̄(0)|, 1)`.
    pub conservation_drift: [f64; 4],
    pub stage_counts: BTreeMap<String, usize>,
    pub transonic_vertex_steps: usize,
    pub clipped_averages: usize,
    pub strategy: String,
    pub limiter: String,
    pub correction: bool,
    pub transonic_fix: bool,
    pub cfl: f64,
}

pub struct RunOutcome {
    pub state: GridState,
    pub summary: RunSummary,
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub problem: String,
    pub step: usize,
    pub state: GridState,
}

pub fn save_checkpoint(path: &Path, problem: &str, step: usize, state: &GridState) -> Result<()> {
    let ck = Checkpoint {
        problem: problem.to_string(),
        step,
        state: state.clone(),
    };
    let text = serde_json::to_string(&ck).map_err(|e| AfError::Io(e.to_string()))?;
    fs::write(path, text).map_err(|e| AfError::Io(format!("{}: {e}", path.display())))
}

pub fn load_checkpoint(path: &Path) -> Result<Checkpoint> {
    let text = fs::read_to_string(path).map_err(|e| AfError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| AfError::Config(format!("{}: {e}", path.display())))
}

/// Smallest density and pressure over interior averages and evolved point values.
pub fn state_minima(s: &GridState, spec: &ProblemSpec) -> (f64, f64) {
    let mut rho = f64::INFINITY;
    let mut p = f64::INFINITY;
    let mut visit = |q: &ConsState| {
        rho = rho.min(q.rho);
        p = p.min(if q.rho > 0.0 { q.pressure() } else { f64::NEG_INFINITY });
    };
    for j in 0..s.grid.nyi() {
        for i in 0..s.grid.nxi() {
            visit(s.avg.get(i, j));
        }
    }
    for kind in SiteKind::ALL {
        for site in domain_sites(&s.grid, &spec.bc, kind) {
            visit(s.points(kind).get(site.i, site.j));
        }
    }
    (rho, p)
}

fn push_row(out: &mut String, x: f64, y: f64, q: &ConsState) {
    let (rho, u, v, p) = if q.rho > 0.0 {
        (q.rho, q.mx / q.rho, q.my / q.rho, q.pressure())
    } else {
        (q.rho, f64::NAN, f64::NAN, f64::NAN)
    };
    let _ = writeln!(out, "{x:.10e},{y:.10e},{rho:.12e},{u:.12e},{v:.12e},{p:.12e}");
}

/// Primitive cell averages at cell centres, `x,y,rho,u,v,p`.
pub fn cells_csv(s: &GridState) -> String {
    let g = &s.grid;
    let mut out = String::from("x,y,rho,u,v,p\n");
    for j in 0..g.nyi() {
        for i in 0..g.nxi() {
            push_row(&mut out, g.x_center(i), g.y_center(j), s.avg.get(i, j));
        }
    }
    out
}

/// Primitive point values at the vertices, `x,y,rho,u,v,p`.
pub fn vertices_csv(s: &GridState) -> String {
    let g = &s.grid;
    let mut out = String::from("x,y,rho,u,v,p\n");
    for j in 0..=g.nyi() {
        for i in 0..=g.nxi() {
            push_row(&mut out, g.x_line(i), g.y_line(j), s.pv_vertex.get(i, j));
        }
    }
    out
}

fn write_file(dir: &Path, name: &str, text: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, text).map_err(|e| AfError::Io(format!("{}: {e}", path.display())))
}

fn write_fields(dir: &Path, tag: &str, s: &GridState) -> Result<()> {
    write_file(dir, &format!("cells_{tag}.csv"), &cells_csv(s))?;
    write_file(dir, &format!("vertices_{tag}.csv"), &vertices_csv(s))
}

fn stage_key(stats: &StepStats, totals: &mut BTreeMap<String, usize>) {
    for (k, v) in &stats.stages {
        *totals.entry((*k).to_string()).or_insert(0) += v;
    }
}

pub fn run_case(cfg: &RunConfig) -> Result<RunOutcome> {
    run_case_with(cfg, |_, _, _| Ok(()))
}

/// Runs `cfg`, calling `observe(state, stats, step)` after every step.
pub fn run_case_with(
    cfg: &RunConfig,
    mut observe: impl FnMut(&GridState, &StepStats, usize) -> Result<()>,
) -> Result<RunOutcome> {
    let started = Instant::now();
    let spec = make_problem(&cfg.problem)?;
    let (mut state, mut step) = match &cfg.resume {
        Some(path) => {
            let ck = load_checkpoint(path)?;
            if ck.problem != cfg.problem {
                return Err(AfError::Config(format!(
                    "checkpoint is for '{}', not '{}'",
                    ck.problem, cfg.problem
                )));
            }
            (ck.state, ck.step)
        }
        None => (initialize(&spec, spec.grid(cfg.nx, cfg.ny)?), 0),
    };
    let grid = state.grid;
    let t_end = cfg.t_end.unwrap_or(spec.t_end);
    cfg.validate(grid.ny, t_end)?;
    if let Some(dir) = &cfg.output.dir {
        fs::create_dir_all(dir).map_err(|e| AfError::Io(format!("{}: {e}", dir.display())))?;
        write_fields(dir, &format!("{step:06}"), &state)?;
    }

    let totals0 = state.totals();
    let (mut min_rho, mut min_p) = state_minima(&state, &spec);
    let mut stages = BTreeMap::new();
    let mut transonic_vertex_steps = 0;
    let mut clipped_averages = 0;
    let mut taken = 0;
    while state.t < t_end && cfg.max_steps.is_none_or(|m| taken < m) {
        let (next, stats) = advance(&state, &cfg.scheme, &spec.bc, Some(t_end), step)?;
        step += 1;
        taken += 1;
        state = next;
        let (r, p) = state_minima(&state, &spec);
        min_rho = min_rho.min(r);
        min_p = min_p.min(p);
        stage_key(&stats, &mut stages);
        transonic_vertex_steps += stats.transonic_vertices;
        clipped_averages += stats.clipped_averages;
        observe(&state, &stats, step)?;
        if let Some(dir) = &cfg.output.dir {
            if cfg.output.every > 0 && step % cfg.output.every == 0 {
                write_fields(dir, &format!("{step:06}"), &state)?;
            }
        }
    }

    let totals = state.totals();
    let drift: Vec<f64> = totals
        .as_array()
        .iter()
        .zip(totals0.as_array())
        .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
        .collect();
    let summary = RunSummary {
        problem: cfg.problem.clone(),
        nx: grid.nx,
        ny: grid.ny,
        t_final: state.t,
        steps: step,
        min_rho,
        min_p,
        conservation_drift: [drift[0], drift[1], drift[2], drift[3]],
        stage_counts: stages,
        transonic_vertex_steps,
        clipped_averages,
        strategy: cfg.scheme.strategy.to_string(),
        limiter: limiter_name(&cfg.scheme.limiter).to_string(),
        correction: cfg.scheme.correction,
        transonic_fix: cfg.scheme.transonic_fix,
        cfl: cfg.scheme.cfl,
    };
    if let Some(dir) = &cfg.output.dir {
        write_fields(dir, "final", &state)?;
        let text = serde_json::to_string_pretty(&summary).map_err(|e| AfError::Io(e.to_string()))?;
        write_file(dir, "summary.json", &text)?;
        if cfg.output.checkpoint {
            save_checkpoint(&dir.join("checkpoint.json"), &cfg.problem, step, &state)?;
        }
    }
    let wall_seconds = started.elapsed().as_secs_f64();
    if let Some(dir) = &cfg.output.dir {
        write_file(
            dir,
            "timing.json",
            &format!("{{\n  \"wall_seconds\": {wall_seconds}\n}}\n"),
        )?;
    }
    info!(
        "{} {}x{}: {} steps to t = {} in {:.2} s",
        cfg.problem, grid.nx, grid.ny, step, state.t, wall_seconds
    );
    Ok(RunOutcome {
        state,
        summary,
        wall_seconds,
    })
}
