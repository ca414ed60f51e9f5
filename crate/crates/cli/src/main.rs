//! `nls` — non-local Schrödinger operator analyses from config files.
//!
//! Usage: `nls <analysis> --config <path> [--out <dir>] [--format json|csv|both]`
//!
//! Every run writes a JSON report embedding the resolved configuration, so
//! identical configs reproduce identical bytes. Exit codes: 0 when the
//! checked criterion holds (or the analysis has no verdict), 2 when a
//! verdict is `Fails` or `Inconclusive`, 1 on configuration or numeric
//! errors (with a structured error report).

mod config;

use clap::Parser;
use config::{Analysis, ConfigError, RunConfig};
use nls_core::{criteria, grid, resolvent};
use num_complex::Complex64;
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "nls", version, about = "Spectral criteria and grid validation for non-local Schrödinger operators")]
struct Cli {
    /// Analysis to run; must match the `analysis` key in the config file.
    analysis: String,
    /// Path to the TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides [output].dir; default "nls-out").
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format: json, csv or both (csv applies to sweep tables only).
    #[arg(long)]
    format: Option<String>,
}

#[derive(Debug, Serialize)]
struct Report<'a, T: Serialize> {
    schema_version: u32,
    artifact_version: &'static str,
    analysis: String,
    config: &'a RunConfig,
    result: T,
}

#[derive(Debug, Serialize)]
struct ErrorReport {
    schema_version: u32,
    artifact_version: &'static str,
    error_kind: String,
    message: String,
}

enum Outcome {
    /// Verdict-style result: exit 0 on Holds, 2 otherwise.
    Verdict(criteria::Status),
    /// Informational result: always exit 0.
    Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Verdict(criteria::Status::Holds)) | Ok(Outcome::Value) => ExitCode::from(0),
        Ok(Outcome::Verdict(_)) => ExitCode::from(2),
        Err(e) => {
            let (kind, message) = classify_error(&e);
            let report = ErrorReport {
                schema_version: SCHEMA_VERSION,
                artifact_version: env!("CARGO_PKG_VERSION"),
                error_kind: kind,
                message,
            };
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            ExitCode::from(1)
        }
    }
}

fn classify_error(e: &anyhow::Error) -> (String, String) {
    if e.downcast_ref::<ConfigError>().is_some() {
        ("config-parse".into(), e.to_string())
    } else {
        ("analysis".into(), format!("{e:#}"))
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let text = std::fs::read_to_string(&cli.config)
        .map_err(|e| ConfigError(format!("{}: {e}", cli.config.display())))?;
    let cfg = RunConfig::from_toml(&text)?;
    if cfg.analysis.to_string() != cli.analysis {
        return Err(ConfigError(format!(
            "analysis '{}' on the command line but '{}' in the config",
            cli.analysis, cfg.analysis
        ))
        .into());
    }

    let out_dir = cli
        .out
        .clone()
        .or_else(|| cfg.output.as_ref().and_then(|o| o.dir.clone()))
        .unwrap_or_else(|| PathBuf::from("nls-out"));
    let format = cli
        .format
        .clone()
        .or_else(|| cfg.output.as_ref().and_then(|o| o.format.clone()))
        .unwrap_or_else(|| "json".to_string());
    if !matches!(format.as_str(), "json" | "csv" | "both") {
        return Err(ConfigError(format!("unknown format '{format}'")).into());
    }
    if format != "json" && cfg.analysis != Analysis::Sweep {
        return Err(ConfigError("csv output is only available for the sweep analysis".into()).into());
    }
    std::fs::create_dir_all(&out_dir)?;

    let write_json = |result: serde_json::Value| -> anyhow::Result<()> {
        let report = Report {
            schema_version: SCHEMA_VERSION,
            artifact_version: env!("CARGO_PKG_VERSION"),
            analysis: cfg.analysis.to_string(),
            config: &cfg,
            result,
        };
        let text = serde_json::to_string_pretty(&report)?;
        std::fs::write(out_dir.join("report.json"), &text)?;
        println!("{text}");
        Ok(())
    };

    let verdict_outcome = |v: &criteria::CriterionVerdict| Outcome::Verdict(v.status);
    let report_outcome = |r: &criteria::ThresholdReport| match r.verdict {
        Some(s) => Outcome::Verdict(s),
        None => Outcome::Value,
    };

    match cfg.analysis {
        Analysis::CheckVirial => {
            let sym = cfg.build_symbol()?;
            let pot = cfg.build_potential()?;
            let g = cfg.build_radial_grid()?;
            let v = criteria::check_virial(&sym, &pot, &g)?;
            write_json(serde_json::to_value(&v)?)?;
            Ok(verdict_outcome(&v))
        }
        Analysis::CheckMourre => {
            let sym = cfg.build_symbol()?;
            let pot = cfg.build_potential()?;
            let g = cfg.build_radial_grid()?;
            let v = criteria::check_mourre_basic(&sym, &pot, &g)?;
            write_json(serde_json::to_value(&v)?)?;
            Ok(verdict_outcome(&v))
        }
        Analysis::CheckMourreComposite => {
            let sym = cfg.build_symbol()?;
            let pot = cfg.build_potential()?;
            let g = cfg.build_radial_grid()?;
            let (bound, eps_count) = cfg.build_composite_bound()?;
            let eps: Vec<f64> = (1..=eps_count)
                .map(|k| k as f64 / (eps_count + 1) as f64)
                .collect();
            let v = criteria::check_mourre_composite(&sym, &pot, bound, &g, &eps)?;
            write_json(serde_json::to_value(&v)?)?;
            Ok(verdict_outcome(&v))
        }
        Analysis::BsCompact => {
            let birman = cfg
                .birman
                .as_ref()
                .ok_or_else(|| ConfigError("a [birman] section is required".into()))?;
            let radius = birman
                .support_radius
                .ok_or_else(|| ConfigError("birman.support_radius required".into()))?;
            let alpha = cfg.symbol_alpha()?;
            let sup = match (&cfg.potential, birman.sup_norm) {
                (Some(_), None) => Some(cfg.build_potential()?.norms()?.sup),
                (None, explicit) => explicit,
                (Some(_), Some(_)) => {
                    return Err(ConfigError(
                        "give either a [potential] or birman.sup_norm, not both".into(),
                    )
                    .into())
                }
            };
            let r = criteria::bs_threshold_compact(birman.dimension, alpha, radius, sup)?;
            write_json(serde_json::to_value(&r)?)?;
            Ok(report_outcome(&r))
        }
        Analysis::BsGlobal => {
            let birman = cfg
                .birman
                .as_ref()
                .ok_or_else(|| ConfigError("a [birman] section is required".into()))?;
            let alpha = cfg.symbol_alpha()?;
            let (sup, l1) = match (&cfg.potential, birman.sup_norm, birman.l1_norm) {
                (Some(_), None, None) => {
                    let norms = cfg.build_potential()?.norms()?;
                    (norms.sup, norms.l1)
                }
                (None, Some(s), Some(l)) => (s, l),
                _ => {
                    return Err(ConfigError(
                        "give either a [potential] or both birman.sup_norm and birman.l1_norm"
                            .into(),
                    )
                    .into())
                }
            };
            let r = criteria::bs_check_global(birman.dimension, alpha, sup, l1)?;
            write_json(serde_json::to_value(&r)?)?;
            Ok(report_outcome(&r))
        }
        Analysis::DichoThreshold => {
            let alpha = cfg.symbol_alpha()?;
            let r = criteria::dicho_threshold(alpha)?;
            write_json(serde_json::to_value(&r)?)?;
            Ok(Outcome::Value)
        }
        Analysis::Thm5 => {
            let pot = cfg.build_potential()?;
            let params = cfg.build_resolvent_params()?;
            let r = resolvent::thm5_verdict(&pot, &params)?;
            write_json(serde_json::to_value(&r)?)?;
            Ok(report_outcome(&r))
        }
        Analysis::HsNorm => {
            let params = cfg.build_resolvent_params()?;
            let rz = cfg
                .resolvent
                .as_ref()
                .ok_or_else(|| ConfigError("a [resolvent] section is required".into()))?;
            let z = Complex64::new(
                rz.z_re
                    .ok_or_else(|| ConfigError("resolvent.z_re required".into()))?,
                rz.z_im
                    .ok_or_else(|| ConfigError("resolvent.z_im required".into()))?,
            );
            let value = resolvent::hs_norm(&params, z)?;
            write_json(serde_json::json!({
                "hs_norm": value,
                "z_re": z.re,
                "z_im": z.im,
                "note": "Hilbert–Schmidt norm of the weighted resolvent kernel; upper-bounds the operator norm",
            }))?;
            Ok(Outcome::Value)
        }
        Analysis::ZeroMode => {
            let zm = cfg
                .zero_mode
                .as_ref()
                .ok_or_else(|| ConfigError("a [zero_mode] section is required".into()))?;
            let alpha = cfg.symbol_alpha()?;
            let torus = cfg.build_torus()?;
            let single = grid::zero_mode_residual(zm.kappa, alpha, zm.degree, &torus)?;
            let study = match &zm.lengths {
                Some(ls) => Some(grid::zero_mode_l_study(
                    zm.kappa,
                    alpha,
                    zm.degree,
                    torus.dim,
                    torus.spacing(),
                    ls,
                )?),
                None => None,
            };
            write_json(serde_json::json!({
                "base": single,
                "l_study": study,
            }))?;
            Ok(Outcome::Value)
        }
        Analysis::Eigen => {
            let sym = cfg.build_symbol()?;
            let pot = match &cfg.potential {
                Some(_) => Some(cfg.build_potential()?),
                None => None,
            };
            let torus = cfg.build_torus()?;
            let solver = cfg
                .solver
                .as_ref()
                .ok_or_else(|| ConfigError("a [solver] section is required".into()))?;
            let report =
                grid::lowest_eigenvalues(solver.k, &sym, pot.as_ref(), &torus, solver.tol, solver.max_iter)?;
            write_json(serde_json::to_value(&report)?)?;
            Ok(Outcome::Value)
        }
        Analysis::Sweep => {
            let sym = cfg.build_symbol()?;
            let torus = cfg.build_torus()?;
            let solver = cfg
                .solver
                .as_ref()
                .ok_or_else(|| ConfigError("a [solver] section is required".into()))?;
            let sweep_cfg = cfg
                .sweep
                .as_ref()
                .ok_or_else(|| ConfigError("a [sweep] section is required".into()))?;
            let table = grid::coupling_sweep(
                &sym,
                sweep_cfg.beta,
                &sweep_cfg.couplings,
                &torus,
                solver.k,
                solver.tol,
                solver.max_iter,
            )?;
            if format != "csv" {
                write_json(serde_json::to_value(&table)?)?;
            }
            if format != "json" {
                let mut csv = String::new();
                csv.push_str("# coupling sweep: C, lambda_min, n_negative, residual\n");
                csv.push_str(&format!(
                    "# neg_tol = {:e}; Ritz values below -neg_tol count as negative\n",
                    table.neg_tol
                ));
                csv.push_str("C,lambda_min,n_negative,residual\n");
                for row in &table.rows {
                    csv.push_str(&format!(
                        "{},{},{},{}\n",
                        row.coupling, row.lambda_min, row.n_negative, row.max_residual
                    ));
                }
                std::fs::write(out_dir.join("sweep.csv"), csv)?;
            }
            Ok(Outcome::Value)
        }
    }
}
