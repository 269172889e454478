//! Command-line front end: configuration, dispatch and report files.

mod commands;
pub mod config;
pub mod report;
pub mod svg;

use std::fs;

pub use config::{parse_config, take_config_path, usage, CliError, Command, RunConfig};
pub use report::{ReportBundle, Summary};

/// Run one resolved command and write its files under `out`.
pub fn run(cfg: &RunConfig) -> Result<ReportBundle, CliError> {
    let out = match cfg.command {
        Command::Profile => commands::profile(cfg),
        Command::Umbilics => commands::umbilics(cfg),
        Command::LpCheck => commands::lp_check(cfg),
        Command::AxisLimit => commands::axis_limit(cfg),
        Command::TaylorAudit => commands::taylor_audit(cfg),
        Command::Kq => commands::kq(cfg),
        Command::Pompeiu => commands::pompeiu(cfg),
        Command::Order => commands::order(cfg),
        Command::Index => commands::index(cfg),
        Command::SurfaceSuite => commands::surface_suite(cfg),
        Command::Shoot => commands::shoot(cfg),
    }?;
    report::emit(cfg, out)
}

/// Resolve `argv` (without the program name), including `--config`, and run.
pub fn run_args(argv: &[String]) -> Result<ReportBundle, CliError> {
    let (rest, path) = take_config_path(argv)?;
    let text = match &path {
        Some(p) => Some(fs::read_to_string(p).map_err(|e| CliError::ConfigFile(format!("{p}: {e}")))?),
        None => None,
    };
    let cfg = parse_config(&rest, text.as_deref())?;
    run(&cfg)
}

/// Error report printed on stderr.
pub fn error_json(e: &CliError) -> String {
    serde_json::json!({ "error": { "kind": e.kind(), "message": e.to_string() } }).to_string()
}
