use serde::{Deserialize, Serialize};

use crate::cones::{check_membership, normalize, MembershipReport};
use crate::error::{NehariError, Result};
use crate::funcspace::{norm, GridFunction, NormKind};
use crate::manifold::tv::find_tv;
use crate::operators::{apply_T, Annulus, F_eval, OperatorKind, ProblemSpec};
use crate::par::map_indices;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolveOptions {
    /// Initial relaxation weight of the direction update, in `(0, 1]`.
    pub damping: f64,
    pub max_iters: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            damping: 0.5,
            max_iters: 500,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnulusCheck {
    pub inner: f64,
    /// Outer radius actually searched (the cap when the annulus is unbounded).
    pub outer: f64,
    pub norm: f64,
    pub above_inner: bool,
    pub below_outer: bool,
    pub radius_capped: bool,
}

impl AnnulusCheck {
    pub fn inside(&self) -> bool {
        self.above_inner && self.below_outer
    }
}

/// Result of the search for a fixed point on the Nehari-type manifold.
#[derive(Debug, Clone, PartialEq)]
pub struct NehariSolveReport {
    /// `u = t_v · v`.
    pub u: GridFunction,
    pub direction: GridFunction,
    pub t_v: f64,
    /// `|T(u) - u|` in the problem's norm.
    pub residual: f64,
    pub residual_sup: f64,
    /// `|T(u) - u|` in `W^{1,p}` (`p = 2` for the kernel problem).
    pub residual_w1p: f64,
    /// `F(T(u), u, u/|u|)`, which vanishes on the manifold.
    pub manifold_defect: f64,
    pub annulus: AnnulusCheck,
    pub membership: MembershipReport,
    pub iterations: usize,
    pub converged: bool,
    /// Last change between successive directions.
    pub direction_change: f64,
    /// Damping in effect when the iteration stopped.
    pub damping: f64,
}

/// Damped direction iteration `v ← normalize(v + ω (normalize(T(t_v v)) - v))`.
///
/// Stops when the residual meets the problem's tolerance, when successive
/// directions stop moving, or after `max_iters` updates. Only the first
/// counts as convergence. `ω` is halved whenever the direction change grows
/// three times in a row.
pub fn nehari_solve(prob: &ProblemSpec, v0: &GridFunction, opts: &SolveOptions) -> Result<NehariSolveReport> {
    if !(opts.damping > 0.0 && opts.damping <= 1.0) {
        return Err(NehariError::Domain {
            name: "damping",
            value: opts.damping,
            domain: "(0, 1]",
        });
    }
    prob.validate()?;
    let cone = prob.cone();
    let kind = prob.norm_kind();
    let r = prob.annulus.inner;
    let r_eff = prob.effective_outer();
    let tol = prob.tolerances.residual;

    let mut v = normalize(v0, &cone)?;
    let mut omega = opts.damping;
    let mut iterations = 0;
    let mut change = f64::INFINITY;
    let mut growth = 0;
    loop {
        let t_v = find_tv(prob, &v, r, r_eff)?;
        let u = v.scale(t_v);
        let tu = apply_T(prob, &u)?;
        let diff = tu.sub(&u)?;
        let residual = norm(&diff, kind)?;
        let stalled = change <= prob.tolerances.direction;
        if residual <= tol || stalled || iterations >= opts.max_iters {
            return finish(prob, v, u, &tu, t_v, residual, iterations, change, omega);
        }
        let w = normalize(&tu, &cone)?;
        let next = normalize(&v.combine(1.0 - omega, &w, omega)?, &cone)?;
        let new_change = norm(&next.sub(&v)?, kind)?;
        if new_change > change {
            growth += 1;
            if growth >= 3 {
                omega *= 0.5;
                growth = 0;
            }
        } else {
            growth = 0;
        }
        change = new_change;
        v = next;
        iterations += 1;
    }
}

#[allow(clippy::too_many_arguments)]
fn finish(
    prob: &ProblemSpec,
    v: GridFunction,
    u: GridFunction,
    tu: &GridFunction,
    t_v: f64,
    residual: f64,
    iterations: usize,
    change: f64,
    damping: f64,
) -> Result<NehariSolveReport> {
    let diff = tu.sub(&u)?;
    let p = match prob.operator {
        OperatorKind::PlaplacianBvp { p, .. } => p,
        OperatorKind::HammersteinKernel => 2.0,
    };
    let size = norm(&u, prob.norm_kind())?;
    let manifold_defect = prob.mode.sign() * F_eval(prob, tu, &u, &v)?;
    let r_eff = prob.effective_outer();
    Ok(NehariSolveReport {
        residual_sup: diff.sup(),
        residual_w1p: norm(&diff, NormKind::W1p(p))?,
        manifold_defect,
        annulus: AnnulusCheck {
            inner: prob.annulus.inner,
            outer: r_eff,
            norm: size,
            above_inner: size > prob.annulus.inner,
            below_outer: size < r_eff,
            radius_capped: r_eff < prob.annulus.outer,
        },
        membership: check_membership(&u, &prob.cone()),
        converged: residual <= prob.tolerances.residual,
        u,
        direction: v,
        t_v,
        residual,
        iterations,
        direction_change: change,
        damping,
    })
}

/// One annulus of a multiplicity scan and what the solver made of it.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanEntry {
    pub annulus: Annulus,
    pub outcome: std::result::Result<NehariSolveReport, NehariError>,
}

impl ScanEntry {
    pub fn success(&self) -> bool {
        matches!(&self.outcome, Ok(rep) if rep.converged && rep.annulus.inside())
    }
}

/// Runs [`nehari_solve`] in each annulus from the same starting direction.
/// Failures are recorded per annulus; the scan always completes.
pub fn multiplicity_scan(
    prob: &ProblemSpec,
    annuli: &[Annulus],
    v0: &GridFunction,
    opts: &SolveOptions,
) -> Result<Vec<ScanEntry>> {
    for a in annuli {
        a.validate()?;
    }
    if annuli.windows(2).any(|w| w[0].outer > w[1].inner) {
        return Err(NehariError::InvalidProblem(
            "annuli must be ordered and disjoint up to touching".into(),
        ));
    }
    Ok(map_indices(annuli.len(), |i| ScanEntry {
        annulus: annuli[i],
        outcome: prob.with_annulus(annuli[i]).and_then(|p| nehari_solve(&p, v0, opts)),
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PicardResult {
    pub u: GridFunction,
    pub converged: bool,
    pub diverged: bool,
    pub iterations: usize,
    /// Sup norm of the last update.
    pub last_change: f64,
}

/// Plain iteration `u ← T(u)` until the sup change drops to `tol`.
pub fn picard_oracle(prob: &ProblemSpec, u0: &GridFunction, tol: f64, max_iters: usize) -> Result<PicardResult> {
    let limit = 10.0 * prob.radius_cap;
    let mut u = u0.clone();
    let mut last_change = f64::INFINITY;
    for k in 1..=max_iters {
        let next = match apply_T(prob, &u) {
            Ok(next) => next,
            Err(NehariError::NonFinite(_)) => {
                return Ok(PicardResult {
                    u,
                    converged: false,
                    diverged: true,
                    iterations: k,
                    last_change,
                })
            }
            Err(e) => return Err(e),
        };
        last_change = next.sub(&u)?.sup();
        u = next;
        if u.sup() > limit || !last_change.is_finite() {
            return Ok(PicardResult {
                u,
                converged: false,
                diverged: true,
                iterations: k,
                last_change,
            });
        }
        if last_change <= tol {
            return Ok(PicardResult {
                u,
                converged: true,
                diverged: false,
                iterations: k,
                last_change,
            });
        }
    }
    Ok(PicardResult {
        u,
        converged: false,
        diverged: false,
        iterations: max_iters,
        last_change,
    })
}
