use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cones::{sample_directions, sample_rng};
use crate::error::Result;
use crate::funcspace::{norm, GridFunction};
use crate::manifold::{census_from_samples, find_tv_search, CriticalKind};
use crate::operators::{apply_T, F_eval, ProblemSpec};
use crate::par::map_indices;
use crate::verify::{le_tie, HypothesisReport};

/// Smallest sampled `|T(u)|` on the manifold that still counts as positive.
pub const H2_THRESHOLD: f64 = 1e-6;

struct ManifoldSample {
    t_v: f64,
    u: GridFunction,
    tu: GridFunction,
    maxima: usize,
    minima: usize,
}

fn sample_manifold(
    prob: &ProblemSpec,
    r: f64,
    r_eff: f64,
    count: usize,
    seed: u64,
) -> Result<Vec<std::result::Result<ManifoldSample, String>>> {
    let dirs = sample_directions(&prob.cone(), prob.grid, count, seed)?;
    Ok(map_indices(dirs.len(), |i| {
        let v = &dirs[i];
        let search = find_tv_search(prob, v, r, r_eff).map_err(|e| e.to_string())?;
        let census = census_from_samples(prob, v, &search.scan_t, &search.scan_potential).map_err(|e| e.to_string())?;
        let u = v.scale(search.t);
        let tu = apply_T(prob, &u).map_err(|e| e.to_string())?;
        Ok(ManifoldSample {
            t_v: search.t,
            u,
            tu,
            maxima: census.iter().filter(|c| c.kind == CriticalKind::Max).count(),
            minima: census.iter().filter(|c| c.kind == CriticalKind::Min).count(),
        })
    }))
}

/// Each sampled direction must have an interior, unique global energy maximum
/// in `[r, r_eff]`. Reports the empirical `r₀ = min t_v`, `R₀ = max t_v` and
/// the census counts.
pub fn check_h1(prob: &ProblemSpec, r: f64, r_eff: f64, direction_count: usize, seed: u64) -> HypothesisReport {
    let mut rep = HypothesisReport::new("h1", direction_count, Some(seed));
    let samples = match sample_manifold(prob, r, r_eff, direction_count, seed) {
        Ok(s) => s,
        Err(e) => {
            rep.fail(format!("direction sampling failed: {e}"));
            return rep;
        }
    };
    let mut t_min = f64::INFINITY;
    let mut t_max = f64::NEG_INFINITY;
    let (mut min_crit, mut max_crit) = (usize::MAX, 0);
    let mut max_count_max = 0;
    let mut failures = 0;
    for (i, s) in samples.iter().enumerate() {
        match s {
            Ok(s) => {
                t_min = t_min.min(s.t_v);
                t_max = t_max.max(s.t_v);
                let total = s.maxima + s.minima;
                min_crit = min_crit.min(total);
                max_crit = max_crit.max(total);
                max_count_max = max_count_max.max(s.maxima);
            }
            Err(e) => {
                failures += 1;
                if rep.holds() {
                    rep.witness("failing_direction", i as f64);
                }
                rep.fail(format!("direction {i}: {e}"));
            }
        }
    }
    rep.witness("failures", failures as f64);
    if failures < samples.len() {
        rep.witness("r0", t_min)
            .witness("R0", t_max)
            .witness("min_critical_points", min_crit as f64)
            .witness("max_critical_points", max_crit as f64)
            .witness("max_local_maxima", max_count_max as f64);
    }
    rep.sampled();
    rep
}

/// `inf |T(u)|` over sampled manifold points must exceed [`H2_THRESHOLD`].
/// Also reports `min (|T(u)| - |u|)`.
pub fn check_h2(prob: &ProblemSpec, direction_count: usize, seed: u64) -> HypothesisReport {
    let mut rep = HypothesisReport::new("h2", direction_count, Some(seed));
    let samples = match sample_manifold(prob, prob.annulus.inner, prob.effective_outer(), direction_count, seed) {
        Ok(s) => s,
        Err(e) => {
            rep.fail(format!("direction sampling failed: {e}"));
            return rep;
        }
    };
    let kind = prob.norm_kind();
    let mut inf_t = f64::INFINITY;
    let mut min_u = f64::INFINITY;
    let mut min_gap = f64::INFINITY;
    for (i, s) in samples.iter().enumerate() {
        match s {
            Ok(s) => {
                let nt = norm(&s.tu, kind).unwrap_or(f64::NAN);
                let nu = norm(&s.u, kind).unwrap_or(f64::NAN);
                inf_t = inf_t.min(nt);
                min_u = min_u.min(nu);
                min_gap = min_gap.min(nt - nu);
            }
            Err(e) => {
                rep.fail(format!("no manifold point for direction {i}: {e}"));
            }
        }
    }
    rep.witness("inf_T_norm", inf_t)
        .witness("min_u_norm", min_u)
        .witness("min_T_minus_u", min_gap)
        .witness("threshold", H2_THRESHOLD);
    if rep.holds() && !(inf_t > H2_THRESHOLD) {
        rep.fail(format!("sampled infimum {inf_t} of |T(u)| is not above {H2_THRESHOLD}"));
    }
    rep.sampled();
    rep
}

/// The three variants of the scaling condition on `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalingMode {
    /// `F(tu, u, u/|u|) = 0` forces `t = 1`.
    H3,
    /// ... forces `t ≥ 1`.
    H4,
    /// ... forces `t ≤ 1`.
    H5,
}

impl ScalingMode {
    fn id(self) -> &'static str {
        match self {
            ScalingMode::H3 => "h3",
            ScalingMode::H4 => "h4",
            ScalingMode::H5 => "h5",
        }
    }
}

/// Solves `F(tu, u, u/|u|) = 0` for sampled `u = s·v` (`v` a cone direction,
/// `s` log-uniform in `[10⁻², 10²]`) by a scan of `t ∈ [10⁻³, 10³]` and
/// checks every root against the mode's conclusion.
pub fn check_scaling(prob: &ProblemSpec, mode: ScalingMode, samples: usize, seed: u64) -> HypothesisReport {
    let mut rep = HypothesisReport::new(mode.id(), samples, Some(seed));
    let dirs = match sample_directions(&prob.cone(), prob.grid, samples, seed) {
        Ok(d) => d,
        Err(e) => {
            rep.fail(format!("direction sampling failed: {e}"));
            return rep;
        }
    };
    let ts: Vec<f64> = (0..=240).map(|k| 10f64.powf(-3.0 + 6.0 * k as f64 / 240.0)).collect();
    let results: Vec<std::result::Result<Vec<f64>, String>> = map_indices(dirs.len(), |i| {
        let mut rng = sample_rng(seed ^ 0x5ca1_ab1e, i);
        let s = 10f64.powf(rng.random_range(-2.0..=2.0));
        let u = dirs[i].scale(s);
        let w = &dirs[i];
        let g = |t: f64| F_eval(prob, &u.scale(t), &u, w).map_err(|e| e.to_string());
        let vals = ts.iter().map(|&t| g(t)).collect::<std::result::Result<Vec<_>, _>>()?;
        let mut roots = Vec::new();
        for k in 0..ts.len() - 1 {
            if vals[k] == 0.0 {
                roots.push(ts[k]);
            } else if vals[k].signum() != vals[k + 1].signum() && vals[k + 1] != 0.0 {
                let root = crate::manifold::bracketed_root(
                    |t| g(t).map_err(crate::error::NehariError::InvalidProblem),
                    ts[k],
                    vals[k],
                    ts[k + 1],
                    vals[k + 1],
                    0.0,
                )
                .map_err(|e| e.to_string())?;
                roots.push(root);
            }
        }
        Ok(roots)
    });
    let mut max_dev = 0.0_f64;
    let mut root_count = 0;
    for (i, res) in results.iter().enumerate() {
        match res {
            Ok(roots) => {
                for &t in roots {
                    root_count += 1;
                    max_dev = max_dev.max((t - 1.0).abs());
                    let ok = match mode {
                        ScalingMode::H3 => (t - 1.0).abs() <= 1e-9,
                        ScalingMode::H4 => t >= 1.0 - 1e-9,
                        ScalingMode::H5 => t <= 1.0 + 1e-9,
                    };
                    if !ok && rep.holds() {
                        rep.witness("failing_sample", i as f64).witness("root", t);
                        rep.fail(format!("sample {i}: F(tu, u, u/|u|) = 0 at t = {t}"));
                    }
                }
            }
            Err(e) => {
                rep.fail(format!("sample {i}: {e}"));
            }
        }
    }
    rep.witness("roots_found", root_count as f64)
        .witness("max_root_deviation_from_one", max_dev);
    rep.sampled();
    rep
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CompressionMode {
    /// `|T(u)| ≤ |u|` on the manifold.
    H6,
    /// `|T(u)| ≥ |u|` on the manifold.
    H7,
}

/// Compares `|T(u)|` and `|u|` at sampled manifold points.
pub fn check_compression(
    prob: &ProblemSpec,
    mode: CompressionMode,
    direction_count: usize,
    seed: u64,
) -> HypothesisReport {
    let id = match mode {
        CompressionMode::H6 => "h6",
        CompressionMode::H7 => "h7",
    };
    let mut rep = HypothesisReport::new(id, direction_count, Some(seed));
    let samples = match sample_manifold(prob, prob.annulus.inner, prob.effective_outer(), direction_count, seed) {
        Ok(s) => s,
        Err(e) => {
            rep.fail(format!("direction sampling failed: {e}"));
            return rep;
        }
    };
    let kind = prob.norm_kind();
    let mut min_ratio = f64::INFINITY;
    let mut max_ratio = f64::NEG_INFINITY;
    for (i, s) in samples.iter().enumerate() {
        match s {
            Ok(s) => {
                let nt = norm(&s.tu, kind).unwrap_or(f64::NAN);
                let nu = norm(&s.u, kind).unwrap_or(f64::NAN);
                min_ratio = min_ratio.min(nt / nu);
                max_ratio = max_ratio.max(nt / nu);
                let ok = match mode {
                    CompressionMode::H6 => le_tie(nt, nu),
                    CompressionMode::H7 => le_tie(nu, nt),
                };
                if !ok && rep.holds() {
                    rep.witness("failing_direction", i as f64)
                        .witness("T_norm", nt)
                        .witness("u_norm", nu);
                    rep.fail(format!("direction {i}: |T(u)| = {nt}, |u| = {nu}"));
                }
            }
            Err(e) => {
                rep.fail(format!("no manifold point for direction {i}: {e}"));
            }
        }
    }
    rep.witness("min_norm_ratio", min_ratio)
        .witness("max_norm_ratio", max_ratio);
    rep.sampled();
    rep
}
