//! Convergence studies on doubling ladders and their tables.

use std::fmt::Write as _;

use serde::Serialize;

use super::config::limiter_name;
use crate::error::{AfError, Result};
use crate::problems::{error_vs_initial, initialize, make_problem, reference_error, ReferenceKind};
use crate::state::GridState;
use crate::timestepper::{run_until, LinearisationStrategy, SchemeConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    WithCorrection,
    WithoutCorrection,
    Simplified,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Self::WithCorrection, Self::WithoutCorrection, Self::Simplified];

    pub fn name(&self) -> &'static str {
        match self {
            Self::WithCorrection => "with_correction",
            Self::WithoutCorrection => "without_correction",
            Self::Simplified => "simplified",
        }
    }

    pub fn apply(&self, base: SchemeConfig) -> SchemeConfig {
        match self {
            Self::WithCorrection => SchemeConfig {
                correction: true,
                ..base
            },
            Self::WithoutCorrection => SchemeConfig {
                correction: false,
                ..base
            },
            Self::Simplified => SchemeConfig {
                correction: true,
                strategy: LinearisationStrategy::Simplified,
                ..base
            },
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = AfError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| AfError::Config(format!("unknown variant '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub resolution: usize,
    pub error_rho: f64,
    pub eoc: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariantColumn {
    pub variant: String,
    pub strategy: String,
    pub correction: bool,
    pub limiter: String,
    pub rows: Vec<ConvergenceRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub problem: String,
    pub columns: Vec<VariantColumn>,
}

/// `log2(E_{k−1}/E_k)` for every row after the first.
pub fn eoc(errors: &[f64]) -> Vec<Option<f64>> {
    let mut out = vec![None];
    out.extend(errors.windows(2).map(|w| Some((w[0] / w[1]).log2())));
    out.truncate(errors.len());
    out
}

pub fn check_ladder(levels: &[usize]) -> Result<()> {
    if levels.is_empty() {
        return Err(AfError::Config("empty resolution ladder".into()));
    }
    for w in levels.windows(2) {
        if w[1] != 2 * w[0] {
            return Err(AfError::Config(format!(
                "resolutions {} and {} are not a doubling ladder",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Runs `problem` at `nx` cells (natural aspect ratio) to `t_end`.
pub fn run_to(problem: &str, nx: usize, scheme: &SchemeConfig, t_end: f64) -> Result<GridState> {
    let spec = make_problem(problem)?;
    let s0 = initialize(&spec, spec.grid(nx, None)?);
    Ok(run_until(&s0, scheme, &spec.bc, t_end, |_, _, _| Ok(()))?.0)
}

/// L1(ρ) errors on a ladder: against the next finer run for fine-grid
/// references (the finest level then has no row), against the initial data
/// for problems that return to it.
pub fn ladder_errors(problem: &str, levels: &[usize], scheme: &SchemeConfig, t_end: f64) -> Result<Vec<(usize, f64)>> {
    check_ladder(levels)?;
    let spec = make_problem(problem)?;
    match spec.reference {
        ReferenceKind::FineGridReference => {
            if levels.len() < 2 {
                return Err(AfError::Config("fine-grid references need at least two levels".into()));
            }
            let states = levels
                .iter()
                .map(|&n| run_to(problem, n, scheme, t_end))
                .collect::<Result<Vec<_>>>()?;
            states
                .windows(2)
                .zip(levels)
                .map(|(w, &n)| Ok((n, reference_error(&w[0], &w[1])?.rho)))
                .collect()
        }
        ReferenceKind::SelfAtIntegerTimes => {
            if t_end.fract() != 0.0 {
                return Err(AfError::Config(format!("'{problem}' is exact only at integer times")));
            }
            levels
                .iter()
                .map(|&n| Ok((n, error_vs_initial(&run_to(problem, n, scheme, t_end)?, &spec).rho)))
                .collect()
        }
        ReferenceKind::None => Err(AfError::Config(format!("'{problem}' has no error reference"))),
    }
}

pub fn convergence_study(
    problem: &str,
    levels: &[usize],
    variants: &[Variant],
    base: &SchemeConfig,
    t_end: Option<f64>,
) -> Result<ConvergenceReport> {
    let t_end = t_end.unwrap_or(make_problem(problem)?.t_end);
    let mut columns = Vec::new();
    for v in variants {
        let scheme = v.apply(*base);
        let errs = ladder_errors(problem, levels, &scheme, t_end)?;
        let values: Vec<f64> = errs.iter().map(|e| e.1).collect();
        let rows = errs
            .iter()
            .zip(eoc(&values))
            .map(|(&(resolution, error_rho), eoc)| ConvergenceRow {
                resolution,
                error_rho,
                eoc,
            })
            .collect();
        columns.push(VariantColumn {
            variant: v.name().to_string(),
            strategy: scheme.strategy.to_string(),
            correction: scheme.correction,
            limiter: limiter_name(&scheme.limiter).to_string(),
            rows,
        });
    }
    Ok(ConvergenceReport {
        problem: problem.to_string(),
        columns,
    })
}

fn fmt_error(e: f64) -> String {
    format!("{e:.6e}")
}

fn fmt_eoc(e: Option<f64>) -> String {
    e.map(|v| format!("{v:.2}")).unwrap_or_default()
}

fn resolutions(report: &ConvergenceReport) -> Vec<usize> {
    let mut res: Vec<usize> = report
        .columns
        .iter()
        .flat_map(|c| c.rows.iter().map(|r| r.resolution))
        .collect();
    res.sort_unstable();
    res.dedup();
    res
}

fn cells(col: &VariantColumn, n: usize) -> (String, String) {
    col.rows
        .iter()
        .find(|r| r.resolution == n)
        .map(|r| (fmt_error(r.error_rho), fmt_eoc(r.eoc)))
        .unwrap_or_default()
}

/// Aligned text table and CSV. With one variant the CSV columns are
/// `resolution,error_rho,eoc`; with several, each pair is suffixed by the
/// variant name.
pub fn emit_table(report: &ConvergenceReport) -> (String, String) {
    let res = resolutions(report);
    let single = report.columns.len() == 1;

    let mut csv = String::from("resolution");
    for c in &report.columns {
        if single {
            csv.push_str(",error_rho,eoc");
        } else {
            let _ = write!(csv, ",error_rho_{0},eoc_{0}", c.variant);
        }
    }
    csv.push('\n');
    for &n in &res {
        csv.push_str(&n.to_string());
        for c in &report.columns {
            let (e, o) = cells(c, n);
            let _ = write!(csv, ",{e},{o}");
        }
        csv.push('\n');
    }

    let mut text = String::new();
    let group = 12 + 2 + 6;
    let _ = write!(text, "{:>10}", "");
    for c in &report.columns {
        let _ = write!(text, " | {:^group$}", c.variant);
    }
    text.push('\n');
    let _ = write!(text, "{:>10}", "cells");
    for _ in &report.columns {
        let _ = write!(text, " | {:>12}  {:>6}", "L1 error rho", "EOC");
    }
    text.push('\n');
    for &n in &res {
        let _ = write!(text, "{n:>10}");
        for c in &report.columns {
            let (e, o) = cells(c, n);
            let _ = write!(text, " | {e:>12}  {o:>6}");
        }
        text.push('\n');
    }
    (text, csv)
}

/// Parses a CSV written by [`emit_table`]. Metadata not stored in the CSV
/// is left empty.
pub fn parse_table_csv(csv: &str) -> Result<ConvergenceReport> {
    let bad = |m: &str| AfError::Config(format!("convergence csv: {m}"));
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().ok_or_else(|| bad("empty"))?.split(',').collect();
    if header.first() != Some(&"resolution") || header.len() % 2 != 1 || header.len() < 3 {
        return Err(bad("bad header"));
    }
    let mut columns: Vec<VariantColumn> = header[1..]
        .chunks(2)
        .map(|pair| {
            let name = pair[0].strip_prefix("error_rho").unwrap_or("");
            VariantColumn {
                variant: name.strip_prefix('_').unwrap_or(name).to_string(),
                strategy: String::new(),
                correction: false,
                limiter: String::new(),
                rows: Vec::new(),
            }
        })
        .collect();
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != header.len() {
            return Err(bad("ragged row"));
        }
        let resolution = f[0].parse().map_err(|_| bad("resolution"))?;
        for (c, pair) in columns.iter_mut().zip(f[1..].chunks(2)) {
            if pair[0].is_empty() {
                continue;
            }
            c.rows.push(ConvergenceRow {
                resolution,
                error_rho: pair[0].parse().map_err(|_| bad("error"))?,
                eoc: if pair[1].is_empty() {
                    None
                } else {
                    Some(pair[1].parse().map_err(|_| bad("eoc"))?)
                },
            });
        }
    }
    Ok(ConvergenceReport {
        problem: String::new(),
        columns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column(name: &str, rows: &[(usize, f64)]) -> VariantColumn {
        let errs: Vec<f64> = rows.iter().map(|r| r.1).collect();
        VariantColumn {
            variant: name.into(),
            strategy: String::new(),
            correction: false,
            limiter: String::new(),
            rows: rows
                .iter()
                .zip(eoc(&errs))
                .map(|(&(resolution, error_rho), eoc)| ConvergenceRow {
                    resolution,
                    error_rho,
                    eoc,
                })
                .collect(),
        }
    }

    #[test]
    fn eoc_definition() {
        let e = eoc(&[8e-3, 1e-3, 1.25e-4]);
        assert_eq!(e[0], None);
        assert!((e[1].unwrap() - 3.0).abs() < 1e-12);
        assert!((e[2].unwrap() - 3.0).abs() < 1e-12);
        assert!(eoc(&[]).is_empty());
    }

    #[test]
    fn ladder_must_double() {
        assert!(check_ladder(&[32, 64, 128]).is_ok());
        assert!(check_ladder(&[32, 32]).is_err());
        assert!(check_ladder(&[32, 96]).is_err());
        assert!(matches!(
            convergence_study(
                "ex1",
                &[16, 16],
                &[Variant::WithCorrection],
                &SchemeConfig::default(),
                None
            ),
            Err(AfError::Config(_))
        ));
    }

    #[test]
    fn single_row_has_empty_eoc() {
        let report = ConvergenceReport {
            problem: "x".into(),
            columns: vec![column("with_correction", &[(32, 3.1e-4)])],
        };
        let (text, csv) = emit_table(&report);
        assert_eq!(csv, "resolution,error_rho,eoc\n32,3.100000e-4,\n");
        assert!(text.contains("3.100000e-4"));
    }

    #[test]
    fn csv_round_trips_byte_identically() {
        let rows = [(32, 3.112504e-4), (64, 4.383598e-5), (128, 5.676151e-6)];
        for columns in [
            vec![column("with_correction", &rows)],
            vec![
                column("with_correction", &rows),
                column("without_correction", &rows[..2]),
                column("simplified", &rows),
            ],
        ] {
            let report = ConvergenceReport {
                problem: "ex1".into(),
                columns,
            };
            let csv = emit_table(&report).1;
            let again = emit_table(&parse_table_csv(&csv).unwrap()).1;
            assert_eq!(csv, again);
        }
    }

    #[test]
    fn three_variants_give_three_groups() {
        let rows = [(32, 1e-3), (64, 1.25e-4)];
        let report = ConvergenceReport {
            problem: "ex1".into(),
            columns: Variant::ALL.iter().map(|v| column(v.name(), &rows)).collect(),
        };
        let (text, csv) = emit_table(&report);
        assert_eq!(
            csv.lines().next().unwrap(),
            "resolution,error_rho_with_correction,eoc_with_correction,error_rho_without_correction,eoc_without_correction,error_rho_simplified,eoc_simplified"
        );
        for v in Variant::ALL {
            assert!(text.contains(v.name()));
        }
        assert!(csv.contains("64,1.250000e-4,3.00"));
    }

    #[test]
    fn variants_parse() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
        assert!("x".parse::<Variant>().is_err());
    }
}
