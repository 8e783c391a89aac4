use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use nehari::cones::{normalize, sample_direction, sample_directions, MembershipReport};
use nehari::funcspace::{norm, GridFunction};
use nehari::manifold::{
    energy_profile, multiplicity_scan, nehari_solve, picard_oracle, scan_grid, AnnulusCheck, NehariSolveReport,
    SolveOptions,
};
use nehari::operators::{Annulus, Nonlinearity, OperatorKind, ProblemSpec};
use nehari::verify::{
    certify_kernel_intervals, check_H1, check_H2, check_H3, check_compression, check_h1, check_h2, check_scaling,
    CompressionMode, H2Input, HypothesisReport, ScalingMode, Verdict,
};
use nehari::NehariError;
use serde::Serialize;

use crate::config::{to_toml, RunConfig, StartKind};
use crate::error::{is_numerical, CliError, EXIT_HYPOTHESIS, EXIT_NUMERICAL};
use crate::output::{emit_csv, solution_csv, write_file, write_json};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Profile,
    Solve,
    Verify,
    Scan,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Profile => "profile",
            Command::Solve => "solve",
            Command::Verify => "verify",
            Command::Scan => "scan",
        }
    }
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub files: Vec<PathBuf>,
    /// One-line human summary.
    pub summary: String,
}

/// Runs one command, writing its outputs and the normalized configuration
/// (`config.toml`) into `out`.
pub fn run(cfg: &RunConfig, command: Command, out: &Path) -> Result<Outcome, CliError> {
    std::fs::create_dir_all(out).map_err(|source| CliError::Write {
        path: out.to_path_buf(),
        source,
    })?;
    if command == Command::Scan && cfg.run.annuli.is_empty() {
        return Err(CliError::Config {
            path: "run.annuli".into(),
            message: "scan needs at least one annulus".into(),
        });
    }
    let prob = cfg.problem_spec()?;
    let config_path = out.join("config.toml");
    write_file(&config_path, &to_toml(cfg)?)?;
    let mut outcome = match command {
        Command::Profile => profile(cfg, &prob, out)?,
        Command::Solve => solve(cfg, &prob, out)?,
        Command::Verify => verify(cfg, &prob, out)?,
        Command::Scan => scan(cfg, &prob, out)?,
    };
    outcome.files.insert(0, config_path);
    Ok(outcome)
}

fn profile(cfg: &RunConfig, prob: &ProblemSpec, out: &Path) -> Result<Outcome, CliError> {
    let [lo, hi] = cfg.run.t_range.unwrap_or([prob.annulus.inner, prob.effective_outer()]);
    let ts = scan_grid(lo, hi, cfg.run.t_samples);
    let dirs = sample_directions(&prob.cone(), prob.grid, cfg.run.profile_directions, cfg.run.seed)?;
    let mut files = Vec::new();
    let mut critical = 0;
    for (i, v) in dirs.iter().enumerate() {
        let prof = energy_profile(prob, v, &ts)?;
        critical += prof.census.len();
        files.extend(emit_csv(&prof, &out.join(format!("profile-{i:03}.csv")))?);
    }
    Ok(Outcome {
        exit_code: 0,
        files,
        summary: format!(
            "profiled {} direction(s) on {} samples in [{lo}, {hi}]; {critical} critical point(s)",
            dirs.len(),
            ts.len()
        ),
    })
}

fn start_direction(cfg: &RunConfig, prob: &ProblemSpec) -> Result<GridFunction, CliError> {
    let g = prob.grid;
    let raw = match cfg.run.start {
        StartKind::Tent => GridFunction::from_fn_with_derivative(
            g,
            |t| t.min(1.0 - t),
            |t| {
                if t < 0.5 {
                    1.0
                } else if t > 0.5 {
                    -1.0
                } else {
                    0.0
                }
            },
        )?,
        StartKind::Parabola => GridFunction::from_fn_with_derivative(g, |t| 4.0 * t * (1.0 - t), |t| 4.0 - 8.0 * t)?,
        StartKind::Sampled => sample_direction(&prob.cone(), g, cfg.run.seed, 1)?,
    };
    Ok(normalize(&raw, &prob.cone())?)
}

#[derive(Debug, Clone, Serialize)]
struct SolveSummary {
    t_v: f64,
    norm: f64,
    sup: f64,
    residual: f64,
    residual_sup: f64,
    residual_w1p: f64,
    manifold_defect: f64,
    iterations: usize,
    converged: bool,
    direction_change: f64,
    damping: f64,
    annulus: AnnulusCheck,
    membership: MembershipReport,
}

impl SolveSummary {
    fn new(prob: &ProblemSpec, rep: &NehariSolveReport) -> Self {
        SolveSummary {
            t_v: rep.t_v,
            norm: norm(&rep.u, prob.norm_kind()).unwrap_or(f64::NAN),
            sup: rep.u.sup(),
            residual: rep.residual,
            residual_sup: rep.residual_sup,
            residual_w1p: rep.residual_w1p,
            manifold_defect: rep.manifold_defect,
            iterations: rep.iterations,
            converged: rep.converged,
            direction_change: rep.direction_change,
            damping: rep.damping,
            annulus: rep.annulus,
            membership: rep.membership.clone(),
        }
    }

    fn success(&self) -> bool {
        self.converged && self.annulus.inside() && self.membership.member
    }
}

#[derive(Debug, Clone, Serialize)]
struct PicardSummary {
    converged: bool,
    diverged: bool,
    iterations: usize,
    last_change: f64,
    sup: f64,
    /// Sup distance to the manifold solution.
    distance: f64,
}

#[derive(Debug, Clone, Serialize)]
struct SolveFile {
    command: &'static str,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solution: Option<SolveSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    picard: Option<PicardSummary>,
}

fn status_of(e: &NehariError) -> &'static str {
    match e {
        NehariError::BoundaryMaximum { .. } => "boundary-maximum",
        NehariError::AmbiguousMaximum { .. } => "ambiguous-maximum",
        _ => "error",
    }
}

fn solve(cfg: &RunConfig, prob: &ProblemSpec, out: &Path) -> Result<Outcome, CliError> {
    let v0 = start_direction(cfg, prob)?;
    let opts = SolveOptions {
        damping: cfg.run.damping,
        max_iters: cfg.run.max_iters,
    };
    let report_path = out.join("report.json");
    let rep = match nehari_solve(prob, &v0, &opts) {
        Ok(rep) => rep,
        Err(e) if is_numerical(&e) => {
            let file = SolveFile {
                command: "solve",
                status: status_of(&e).into(),
                error: Some(e.to_string()),
                solution: None,
                picard: None,
            };
            write_json(&report_path, &file)?;
            return Ok(Outcome {
                exit_code: EXIT_NUMERICAL,
                files: vec![report_path],
                summary: format!("no fixed point located: {e}"),
            });
        }
        Err(e) => return Err(e.into()),
    };
    let summary = SolveSummary::new(prob, &rep);
    let picard = if cfg.run.picard {
        let res = picard_oracle(prob, &GridFunction::zeros(prob.grid), 1e-12, 1000)?;
        Some(PicardSummary {
            converged: res.converged,
            diverged: res.diverged,
            iterations: res.iterations,
            last_change: res.last_change,
            sup: res.u.sup(),
            distance: res.u.sub(&rep.u)?.sup(),
        })
    } else {
        None
    };
    let ok = summary.success();
    let status = if !summary.converged {
        "not-converged"
    } else if !summary.annulus.inside() {
        "outside-annulus"
    } else if !summary.membership.member {
        "outside-cone"
    } else {
        "converged"
    };
    let line = format!(
        "{status}: t_v = {}, residual = {:e}, {} iteration(s)",
        summary.t_v, summary.residual, summary.iterations
    );
    let file = SolveFile {
        command: "solve",
        status: status.into(),
        error: None,
        solution: Some(summary),
        picard,
    };
    write_json(&report_path, &file)?;
    let csv_path = out.join("solution.csv");
    write_file(&csv_path, &solution_csv(&rep.u, &rep.direction))?;
    Ok(Outcome {
        exit_code: if ok { 0 } else { EXIT_NUMERICAL },
        files: vec![report_path, csv_path],
        summary: line,
    })
}

#[derive(Debug, Clone, Serialize)]
struct VerifyFile {
    command: &'static str,
    reports: Vec<HypothesisReport>,
    /// Which sufficient sets of conditions hold on the samples.
    branches: BTreeMap<String, bool>,
    conditions_hold: bool,
}

fn failed_report(condition: &str, e: impl ToString) -> HypothesisReport {
    HypothesisReport {
        condition: condition.into(),
        verdict: Verdict::Fail,
        witnesses: BTreeMap::new(),
        detail: e.to_string(),
        samples: 0,
        seed: None,
    }
}

fn is_kernel_example(f: &Nonlinearity) -> bool {
    matches!(f, Nonlinearity::Quadratic { a2, a1, a0 } if *a2 == 1e-2 && *a1 == 2.5e-3 && *a0 == 1.0)
}

fn verify(cfg: &RunConfig, prob: &ProblemSpec, out: &Path) -> Result<Outcome, CliError> {
    let run = &cfg.run;
    let (seed, count) = (run.seed, run.directions);
    let (r, r_eff) = (prob.annulus.inner, prob.effective_outer());
    let mut reports = Vec::new();
    let mut structural_ok = true;
    if let OperatorKind::PlaplacianBvp { p, beta } = prob.operator {
        let f = &prob.nonlinearity;
        let structural = vec![
            check_H1(f, r_eff, r_eff, run.samples, seed),
            check_H2(
                f,
                &H2Input {
                    p,
                    r,
                    big_r: prob.annulus.outer,
                    beta,
                    mode: run.h2_mode,
                    n: prob.grid.len(),
                },
            )
            .unwrap_or_else(|e| failed_report("H2", e)),
            check_H3(f, p, r_eff, run.samples, seed),
        ];
        structural_ok = structural.iter().all(|r| r.holds());
        reports.extend(structural);
    }
    let h1 = check_h1(prob, r, r_eff, count, seed);
    let h2 = check_h2(prob, count, seed);
    let h3 = check_scaling(prob, ScalingMode::H3, run.samples, seed);
    let h4 = check_scaling(prob, ScalingMode::H4, run.samples, seed);
    let h5 = check_scaling(prob, ScalingMode::H5, run.samples, seed);
    let h6 = check_compression(prob, CompressionMode::H6, count, seed);
    let h7 = check_compression(prob, CompressionMode::H7, count, seed);
    let mut branches = BTreeMap::new();
    branches.insert("h2+h3".to_string(), h2.holds() && h3.holds());
    branches.insert("h2+h4+h6".to_string(), h2.holds() && h4.holds() && h6.holds());
    branches.insert("h2+h5+h7".to_string(), h2.holds() && h5.holds() && h7.holds());
    let holds = structural_ok && h1.holds() && branches.values().any(|b| *b);
    let h1_detail = h1.detail.clone();
    reports.extend([h1, h2, h3, h4, h5, h6, h7]);
    if prob.operator == OperatorKind::HammersteinKernel && is_kernel_example(&prob.nonlinearity) {
        let cert = certify_kernel_intervals([1e-2, 2.5e-3, 1.0], count, seed, prob.grid.len())?;
        reports.push(cert.report);
    }
    let path = out.join("verify.json");
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.holds())
        .map(|r| r.condition.as_str())
        .collect();
    let summary = if holds {
        format!("conditions hold on the samples; failing optional checks: {failed:?}")
    } else if !h1_detail.is_empty() {
        format!("conditions fail: {failed:?}; h1: {h1_detail}")
    } else {
        format!("conditions fail: {failed:?}")
    };
    write_json(
        &path,
        &VerifyFile {
            command: "verify",
            reports,
            branches,
            conditions_hold: holds,
        },
    )?;
    Ok(Outcome {
        exit_code: if holds { 0 } else { EXIT_HYPOTHESIS },
        files: vec![path],
        summary,
    })
}

#[derive(Debug, Clone, Serialize)]
struct ScanRow {
    annulus: [f64; 2],
    success: bool,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solution: Option<SolveSummary>,
}

#[derive(Debug, Clone, Serialize)]
struct ScanFile {
    command: &'static str,
    annuli: Vec<ScanRow>,
    solutions: usize,
}

fn scan(cfg: &RunConfig, prob: &ProblemSpec, out: &Path) -> Result<Outcome, CliError> {
    let annuli = cfg
        .run
        .annuli
        .iter()
        .enumerate()
        .map(|(i, [a, b])| {
            Annulus::new(*a, *b).map_err(|e| CliError::Config {
                path: format!("run.annuli[{i}]"),
                message: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let v0 = start_direction(cfg, prob)?;
    let opts = SolveOptions {
        damping: cfg.run.damping,
        max_iters: cfg.run.max_iters,
    };
    let entries = multiplicity_scan(prob, &annuli, &v0, &opts)?;
    let mut rows = Vec::new();
    for e in &entries {
        let row = match &e.outcome {
            Ok(rep) => {
                let s = SolveSummary::new(prob, rep);
                ScanRow {
                    annulus: [e.annulus.inner, e.annulus.outer],
                    success: s.success(),
                    status: if s.success() { "converged" } else { "not-converged" }.into(),
                    error: None,
                    solution: Some(s),
                }
            }
            Err(err) => ScanRow {
                annulus: [e.annulus.inner, e.annulus.outer],
                success: false,
                status: status_of(err).into(),
                error: Some(err.to_string()),
                solution: None,
            },
        };
        rows.push(row);
    }
    let solutions = rows.iter().filter(|r| r.success).count();
    let total = rows.len();
    let path = out.join("scan.json");
    write_json(
        &path,
        &ScanFile {
            command: "scan",
            annuli: rows,
            solutions,
        },
    )?;
    Ok(Outcome {
        exit_code: if solutions == total { 0 } else { EXIT_NUMERICAL },
        files: vec![path],
        summary: format!("{solutions} of {total} annuli hold a located fixed point"),
    })
}
