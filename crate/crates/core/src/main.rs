use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use active_flux::harness::{
    check_ladder, convergence_study, emit_table, parse_limiter, parse_run_config, parse_switch, run_case, RunConfig,
    Variant, DESK_SCALE_LIMIT,
};
use active_flux::timestepper::SchemeConfig;
use active_flux::{AfError, Result};

#[derive(Parser)]
#[command(
    name = "active-flux",
    version,
    about = "Third-order Active Flux solver for the 2D Euler equations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SchemeArgs {
    #[arg(long)]
    cfl: Option<f64>,
    /// Accept a CFL number above the linear stability bound.
    #[arg(long)]
    allow_large_cfl: bool,
    /// nested | simplified | neighbor_avg
    #[arg(long)]
    strategy: Option<String>,
    /// none | bound | bound+shock
    #[arg(long)]
    limiter: Option<String>,
    /// blend_then_bound | bound_then_blend
    #[arg(long)]
    composition: Option<String>,
    /// on | off
    #[arg(long)]
    correction: Option<String>,
    /// on | off
    #[arg(long)]
    transonic_fix: Option<String>,
    /// Clip inadmissible averages instead of stopping.
    #[arg(long)]
    clip_averages: bool,
    /// Allow more than 512 cells per direction.
    #[arg(long)]
    large: bool,
}

impl SchemeArgs {
    fn apply(&self, s: &mut SchemeConfig) -> Result<()> {
        if let Some(c) = self.cfl {
            s.cfl = c;
        }
        s.allow_large_cfl |= self.allow_large_cfl;
        if let Some(v) = &self.strategy {
            s.strategy = v.parse()?;
        }
        if let Some(v) = &self.limiter {
            let composition = s.limiter.composition;
            s.limiter = parse_limiter(v)?;
            s.limiter.composition = composition;
        }
        if let Some(v) = &self.composition {
            s.limiter.composition = v.parse()?;
        }
        if let Some(v) = &self.correction {
            s.correction = parse_switch(v)?;
        }
        if let Some(v) = &self.transonic_fix {
            s.transonic_fix = parse_switch(v)?;
        }
        s.clip_averages |= self.clip_averages;
        Ok(())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one problem to its end time.
    Run {
        /// Configuration file; command-line options override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        problem: Option<String>,
        #[arg(long)]
        nx: Option<usize>,
        #[arg(long)]
        ny: Option<usize>,
        #[arg(long)]
        tend: Option<f64>,
        #[arg(long)]
        max_steps: Option<usize>,
        /// Output directory for field CSVs and the summary.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write field CSVs every N steps.
        #[arg(long)]
        every: Option<usize>,
        #[arg(long)]
        checkpoint: bool,
        #[arg(long)]
        resume: Option<PathBuf>,
        #[command(flatten)]
        scheme: SchemeArgs,
    },
    /// Convergence study on a doubling ladder.
    Converge {
        #[arg(long)]
        problem: String,
        /// Comma-separated resolutions, e.g. 32,64,128.
        #[arg(long, value_delimiter = ',')]
        levels: Vec<usize>,
        /// Comma-separated: with_correction, without_correction, simplified.
        #[arg(long, value_delimiter = ',', default_value = "with_correction")]
        variants: Vec<String>,
        #[arg(long)]
        tend: Option<f64>,
        /// Write table.txt and table.csv here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        scheme: SchemeArgs,
    },
}

fn io_err(path: &std::path::Path, e: std::io::Error) -> AfError {
    AfError::Io(format!("{}: {e}", path.display()))
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run {
            config,
            problem,
            nx,
            ny,
            tend,
            max_steps,
            out,
            every,
            checkpoint,
            resume,
            scheme,
        } => {
            let mut cfg = match &config {
                Some(path) => parse_run_config(&std::fs::read_to_string(path).map_err(|e| io_err(path, e))?)?,
                None => {
                    let problem = problem
                        .clone()
                        .ok_or_else(|| AfError::Config("--problem is required".into()))?;
                    let nx = nx.ok_or_else(|| AfError::Config("--nx is required".into()))?;
                    RunConfig::new(&problem, nx)
                }
            };
            if let Some(p) = problem {
                cfg.problem = p;
            }
            if let Some(n) = nx {
                cfg.nx = n;
            }
            cfg.ny = ny.or(cfg.ny);
            cfg.t_end = tend.or(cfg.t_end);
            cfg.max_steps = max_steps.or(cfg.max_steps);
            cfg.output.dir = out.or(cfg.output.dir);
            cfg.output.every = every.unwrap_or(cfg.output.every);
            cfg.output.checkpoint |= checkpoint;
            cfg.resume = resume.or(cfg.resume);
            cfg.large |= scheme.large;
            scheme.apply(&mut cfg.scheme)?;
            let outcome = run_case(&cfg)?;
            let s = &outcome.summary;
            println!(
                "{} {}x{}: t = {} after {} steps, min rho = {:.6e}, min p = {:.6e}, {:.2} s",
                s.problem, s.nx, s.ny, s.t_final, s.steps, s.min_rho, s.min_p, outcome.wall_seconds
            );
            Ok(())
        }
        Command::Converge {
            problem,
            levels,
            variants,
            tend,
            out,
            scheme,
        } => {
            check_ladder(&levels)?;
            if levels.iter().any(|&n| n > DESK_SCALE_LIMIT) && !scheme.large {
                return Err(AfError::Config(format!("levels above {DESK_SCALE_LIMIT} need --large")));
            }
            let variants = variants.iter().map(|v| v.parse()).collect::<Result<Vec<Variant>>>()?;
            let mut base = SchemeConfig::default();
            scheme.apply(&mut base)?;
            let report = convergence_study(&problem, &levels, &variants, &base, tend)?;
            let (text, csv) = emit_table(&report);
            print!("{text}");
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
                std::fs::write(dir.join("table.txt"), &text).map_err(|e| io_err(&dir, e))?;
                std::fs::write(dir.join("table.csv"), &csv).map_err(|e| io_err(&dir, e))?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_solver_fatal() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
