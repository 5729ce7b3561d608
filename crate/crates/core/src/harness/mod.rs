//! Runs, convergence studies and their file outputs.

mod config;
mod convergence;
mod run;

pub use config::{
    limiter_name, parse_key_values, parse_limiter, parse_run_config, parse_switch, OutputConfig, RunConfig,
    DESK_SCALE_LIMIT,
};
pub use convergence::{
    check_ladder, convergence_study, emit_table, eoc, ladder_errors, parse_table_csv, run_to, ConvergenceReport,
    ConvergenceRow, Variant, VariantColumn,
};
pub use run::{
    cells_csv, load_checkpoint, run_case, run_case_with, save_checkpoint, state_minima, vertices_csv, Checkpoint,
    RunOutcome, RunSummary,
};
