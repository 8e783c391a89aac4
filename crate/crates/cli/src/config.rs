//! Run configuration: a TOML file with a `[problem]` table describing the
//! fixed-point problem and an optional `[run]` table with sampling and solver
//! settings. Unknown keys are rejected; every error names its key path.

use std::path::Path;

use nehari::cones::ConeSpec;
use nehari::funcspace::Grid;
use nehari::operators::{
    Annulus, ExtremumMode, Nonlinearity, OperatorKind, ProblemSpec, Table, Tolerances, DEFAULT_RADIUS_CAP,
};
use nehari::verify::H2Mode;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Schema summary shown by `--help`.
pub const CONFIG_HELP: &str = "\
CONFIG FILE (TOML)
  [problem]
    operator    \"hammerstein-kernel\" | \"plaplacian-bvp\"   (required)
    p           exponent > 1                                (plaplacian-bvp only, required)
    beta        growth-check parameter in (0, 1/2)          (plaplacian-bvp only, required)
    grid        odd node count >= 3                         (default 1025)
    annulus     [r, R], 0 <= r < R, R may be inf            (default [0, inf])
    radius_cap  replaces an infinite R in searches          (default 1e8)
    mode        \"maximum\" | \"minimum\"                      (default \"maximum\")
  [problem.f]
    kind = \"quadratic\"       a2, a1, a0                    (each default 0)
    kind = \"power-rational\"  coeff (1), exponent, base (1), rational (0):
                             coeff * x^exponent * (base + rational / (1 + |y|))
    kind = \"tabulated\"       x, y (increasing), values[i][j] = f(x[i], |y| = y[j])
  [problem.tolerances]
    residual (1e-8), tv_bracket (1e-10), census (1e-10), symmetry (1e-8),
    membership (1e-9), direction (1e-14)
  [run]
    seed (0), directions (50), samples (200), profile_directions (1),
    t_range ([r, R_eff]), t_samples (256), start (\"tent\" | \"parabola\" | \"sampled\"),
    damping (0.5), max_iters (500), picard (false), annuli ([]),
    h2_mode (\"standard\" | \"reversed\")";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub problem: ProblemConfig,
    #[serde(default)]
    pub run: RunSection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorName {
    HammersteinKernel,
    PlaplacianBvp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub operator: OperatorName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default = "default_grid")]
    pub grid: usize,
    #[serde(default = "default_annulus")]
    pub annulus: [f64; 2],
    #[serde(default = "default_radius_cap")]
    pub radius_cap: f64,
    #[serde(default)]
    pub mode: ExtremumMode,
    pub f: FunctionConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FunctionConfig {
    Quadratic {
        #[serde(default)]
        a2: f64,
        #[serde(default)]
        a1: f64,
        #[serde(default)]
        a0: f64,
    },
    PowerRational {
        #[serde(default = "one")]
        coeff: f64,
        exponent: f64,
        #[serde(default = "one")]
        base: f64,
        #[serde(default)]
        rational: f64,
    },
    Tabulated {
        x: Vec<f64>,
        y: Vec<f64>,
        values: Vec<Vec<f64>>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StartKind {
    /// `min(t, 1 - t)`.
    #[default]
    Tent,
    /// `4t(1 - t)`.
    Parabola,
    /// A seeded sample from the problem's cone.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    pub seed: u64,
    /// Cone directions sampled by the manifold checks.
    pub directions: usize,
    /// Points sampled by the nonlinearity and scaling checks.
    pub samples: usize,
    /// Directions written by `profile`.
    pub profile_directions: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_range: Option<[f64; 2]>,
    pub t_samples: usize,
    pub start: StartKind,
    pub damping: f64,
    pub max_iters: usize,
    /// Also run plain iteration from zero in `solve` and report its distance.
    pub picard: bool,
    pub annuli: Vec<[f64; 2]>,
    pub h2_mode: H2Mode,
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection {
            seed: 0,
            directions: 50,
            samples: 200,
            profile_directions: 1,
            t_range: None,
            t_samples: 256,
            start: StartKind::Tent,
            damping: 0.5,
            max_iters: 500,
            picard: false,
            annuli: Vec::new(),
            h2_mode: H2Mode::Standard,
        }
    }
}

fn default_grid() -> usize {
    1025
}

fn default_annulus() -> [f64; 2] {
    [0.0, f64::INFINITY]
}

fn default_radius_cap() -> f64 {
    DEFAULT_RADIUS_CAP
}

fn one() -> f64 {
    1.0
}

fn invalid(path: &str, message: impl Into<String>) -> CliError {
    CliError::Config {
        path: path.to_string(),
        message: message.into(),
    }
}

/// Reads, parses and validates a configuration file.
pub fn parse_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<RunConfig, CliError> {
    let de = toml::Deserializer::parse(text).map_err(|e| invalid("<syntax>", e.to_string().trim_end()))?;
    let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { "<root>".to_string() } else { path };
        invalid(&path, e.into_inner().to_string().trim_end())
    })?;
    cfg.validate()?;
    Ok(cfg)
}

/// Normalized TOML dump; parsing it back yields an equal configuration.
pub fn to_toml(cfg: &RunConfig) -> Result<String, CliError> {
    toml::to_string(cfg).map_err(|e| invalid("<root>", format!("cannot serialize configuration: {e}")))
}

fn positive_finite(path: &str, x: f64) -> Result<(), CliError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(invalid(path, format!("must be positive and finite, got {x}")))
    }
}

fn check_annulus(path: &str, [r, big_r]: [f64; 2]) -> Result<(), CliError> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(invalid(
            path,
            format!("inner radius must be finite and nonnegative, got {r}"),
        ));
    }
    if !(r < big_r) {
        return Err(invalid(path, format!("needs r < R, got r = {r}, R = {big_r}")));
    }
    Ok(())
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let pr = &self.problem;
        if pr.grid < 3 || pr.grid.is_multiple_of(2) {
            return Err(invalid(
                "problem.grid",
                format!("must be odd and at least 3, got {}", pr.grid),
            ));
        }
        check_annulus("problem.annulus", pr.annulus)?;
        positive_finite("problem.radius_cap", pr.radius_cap)?;
        if pr.radius_cap <= pr.annulus[0] {
            return Err(invalid("problem.radius_cap", "must exceed the inner radius"));
        }
        match pr.operator {
            OperatorName::PlaplacianBvp => {
                let p =
                    pr.p.ok_or_else(|| invalid("problem.p", "required for plaplacian-bvp"))?;
                if !(p > 1.0 && p.is_finite()) {
                    return Err(invalid("problem.p", format!("must be finite and > 1, got {p}")));
                }
                let beta = pr
                    .beta
                    .ok_or_else(|| invalid("problem.beta", "required for plaplacian-bvp"))?;
                if !(beta > 0.0 && beta < 0.5) {
                    return Err(invalid("problem.beta", format!("must lie in (0, 1/2), got {beta}")));
                }
            }
            OperatorName::HammersteinKernel => {
                if pr.p.is_some() {
                    return Err(invalid("problem.p", "only used by plaplacian-bvp"));
                }
                if pr.beta.is_some() {
                    return Err(invalid("problem.beta", "only used by plaplacian-bvp"));
                }
            }
        }
        match &pr.f {
            FunctionConfig::Quadratic { a2, a1, a0 } => {
                for (k, v) in [("a2", a2), ("a1", a1), ("a0", a0)] {
                    if !v.is_finite() {
                        return Err(invalid(&format!("problem.f.{k}"), "must be finite"));
                    }
                }
            }
            FunctionConfig::PowerRational {
                coeff,
                exponent,
                base,
                rational,
            } => {
                for (k, v) in [("coeff", coeff), ("base", base), ("rational", rational)] {
                    if !v.is_finite() {
                        return Err(invalid(&format!("problem.f.{k}"), "must be finite"));
                    }
                }
                if !(*exponent >= 0.0 && exponent.is_finite()) {
                    return Err(invalid(
                        "problem.f.exponent",
                        format!("must be finite and >= 0, got {exponent}"),
                    ));
                }
            }
            FunctionConfig::Tabulated { x, y, values } => {
                Table::new(x.clone(), y.clone(), values.clone()).map_err(|e| invalid("problem.f", e.to_string()))?;
            }
        }
        let t = &pr.tolerances;
        for (k, v) in [
            ("residual", t.residual),
            ("tv_bracket", t.tv_bracket),
            ("census", t.census),
            ("symmetry", t.symmetry),
            ("membership", t.membership),
            ("direction", t.direction),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(invalid(
                    &format!("problem.tolerances.{k}"),
                    format!("must be finite and >= 0, got {v}"),
                ));
            }
        }

        let run = &self.run;
        for (k, v) in [
            ("directions", run.directions),
            ("samples", run.samples),
            ("profile_directions", run.profile_directions),
            ("max_iters", run.max_iters),
        ] {
            if v == 0 {
                return Err(invalid(&format!("run.{k}"), "must be at least 1"));
            }
        }
        if run.t_samples < 3 {
            return Err(invalid("run.t_samples", "must be at least 3"));
        }
        if !(run.damping > 0.0 && run.damping <= 1.0) {
            return Err(invalid(
                "run.damping",
                format!("must lie in (0, 1], got {}", run.damping),
            ));
        }
        if let Some([a, b]) = run.t_range {
            if !(a >= 0.0 && a < b && b.is_finite()) {
                return Err(invalid(
                    "run.t_range",
                    format!("needs 0 <= a < b < inf, got [{a}, {b}]"),
                ));
            }
        }
        for (i, a) in run.annuli.iter().enumerate() {
            check_annulus(&format!("run.annuli[{i}]"), *a)?;
            if i > 0 && run.annuli[i - 1][1] > a[0] {
                return Err(invalid(
                    &format!("run.annuli[{i}]"),
                    "annuli must be ordered and disjoint up to touching",
                ));
            }
        }
        Ok(())
    }

    pub fn nonlinearity(&self) -> Result<Nonlinearity, CliError> {
        Ok(match &self.problem.f {
            FunctionConfig::Quadratic { a2, a1, a0 } => Nonlinearity::Quadratic {
                a2: *a2,
                a1: *a1,
                a0: *a0,
            },
            FunctionConfig::PowerRational {
                coeff,
                exponent,
                base,
                rational,
            } => Nonlinearity::PowerRational {
                coeff: *coeff,
                exponent: *exponent,
                base: *base,
                rational: *rational,
            },
            FunctionConfig::Tabulated { x, y, values } => Nonlinearity::Tabulated(
                Table::new(x.clone(), y.clone(), values.clone()).map_err(|e| invalid("problem.f", e.to_string()))?,
            ),
        })
    }

    pub fn problem_spec(&self) -> Result<ProblemSpec, CliError> {
        let pr = &self.problem;
        let operator = match pr.operator {
            OperatorName::HammersteinKernel => OperatorKind::HammersteinKernel,
            OperatorName::PlaplacianBvp => OperatorKind::PlaplacianBvp {
                p: pr.p.unwrap_or(2.0),
                beta: pr.beta.unwrap_or(0.25),
            },
        };
        let annulus =
            Annulus::new(pr.annulus[0], pr.annulus[1]).map_err(|e| invalid("problem.annulus", e.to_string()))?;
        let grid = Grid::new(pr.grid).map_err(|e| invalid("problem.grid", e.to_string()))?;
        let mut spec = ProblemSpec::new(operator, self.nonlinearity()?, annulus, grid)
            .map_err(|e| invalid("problem", e.to_string()))?;
        spec.mode = pr.mode;
        spec.radius_cap = pr.radius_cap;
        spec.tolerances = pr.tolerances;
        Ok(spec)
    }

    pub fn cone(&self) -> Result<ConeSpec, CliError> {
        Ok(self.problem_spec()?.cone())
    }
}
