use serde::{Deserialize, Serialize};

use crate::error::{NehariError, Result};
use crate::funcspace::GridFunction;
use crate::operators::{apply_T, F_eval, ProblemSpec};
use crate::par::map_indices;

/// Type of a radial critical point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CriticalKind {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub t: f64,
    pub kind: CriticalKind,
}

/// Potential and energy sampled along the ray `t ↦ t v`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    pub direction: GridFunction,
    pub t: Vec<f64>,
    pub potential: Vec<f64>,
    /// `E(v)(t) = ∫_0^t potential`.
    pub energy: Vec<f64>,
    pub census: Vec<CriticalPoint>,
}

/// `F(T(tv), tv, v)`, the derivative of the radial energy; negated in minimum mode.
pub fn radial_potential(prob: &ProblemSpec, v: &GridFunction, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(NehariError::NonFinite("radial parameter"));
    }
    let u = v.scale(t);
    let tu = apply_T(prob, &u)?;
    let value = prob.mode.sign() * F_eval(prob, &tu, &u, v)?;
    if !value.is_finite() {
        return Err(NehariError::NonFinite("radial potential"));
    }
    Ok(value)
}

const GL5: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
    (0.906_179_845_938_664, 0.236_926_885_056_189_1),
];

/// Five-point Gauss–Legendre integral of the potential over `[a, b]`.
pub(crate) fn potential_integral(prob: &ProblemSpec, v: &GridFunction, a: f64, b: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for (x, w) in GL5 {
        sum += w * radial_potential(prob, v, mid + half * x)?;
    }
    Ok(half * sum)
}

/// Samples the potential at `t_grid` and integrates it from 0, then fills the census.
pub fn energy_profile(prob: &ProblemSpec, v: &GridFunction, t_grid: &[f64]) -> Result<RadialProfile> {
    if t_grid.is_empty() {
        return Err(NehariError::InvalidProblem("empty t grid".into()));
    }
    if t_grid.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) || t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(NehariError::InvalidProblem(
            "t grid must be finite, nonnegative and strictly increasing".into(),
        ));
    }
    let potential: Vec<f64> = map_indices(t_grid.len(), |i| radial_potential(prob, v, t_grid[i]))
        .into_iter()
        .collect::<Result<_>>()?;
    let pieces: Vec<f64> = map_indices(t_grid.len(), |i| {
        let a = if i == 0 { 0.0 } else { t_grid[i - 1] };
        potential_integral(prob, v, a, t_grid[i])
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let mut energy = Vec::with_capacity(pieces.len());
    let mut acc = 0.0;
    for piece in pieces {
        acc += piece;
        energy.push(acc);
    }
    let mut profile = RadialProfile {
        direction: v.clone(),
        t: t_grid.to_vec(),
        potential,
        energy,
        census: Vec::new(),
    };
    profile.census = critical_census(prob, &profile)?;
    Ok(profile)
}

/// Zeros of the potential between samples, refined to the census tolerance and
/// classified by the sign change across them.
pub fn critical_census(prob: &ProblemSpec, profile: &RadialProfile) -> Result<Vec<CriticalPoint>> {
    census_from_samples(prob, &profile.direction, &profile.t, &profile.potential)
}

pub(crate) fn census_from_samples(
    prob: &ProblemSpec,
    v: &GridFunction,
    t: &[f64],
    potential: &[f64],
) -> Result<Vec<CriticalPoint>> {
    // Indices of samples with nonzero potential; exact zeros sit between them.
    let nonzero: Vec<usize> = (0..t.len()).filter(|&i| potential[i] != 0.0).collect();
    let mut out = Vec::new();
    for pair in nonzero.windows(2) {
        let (i, j) = (pair[0], pair[1]);
        let (pi, pj) = (potential[i], potential[j]);
        if pi.signum() == pj.signum() {
            continue;
        }
        let kind = if pi > 0.0 { CriticalKind::Max } else { CriticalKind::Min };
        let root = if j > i + 1 {
            // A sampled exact zero.
            t[i + 1]
        } else {
            let rel = prob.tolerances.census;
            bracketed_root(|s| radial_potential(prob, v, s), t[i], pi, t[j], pj, rel)?
        };
        out.push(CriticalPoint { t: root, kind });
    }
    Ok(out)
}

/// Root of `f` in `[a, b]` with `f(a)`, `f(b)` of opposite signs, by the
/// Illinois variant of regula falsi with bisection safeguards. Stops when the
/// bracket is narrower than `rel · max(1, |t|)` or at floating-point resolution.
pub(crate) fn bracketed_root(
    f: impl Fn(f64) -> Result<f64>,
    mut a: f64,
    mut fa: f64,
    mut b: f64,
    mut fb: f64,
    rel: f64,
) -> Result<f64> {
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    let mut side = 0i8;
    let mut last_width = (b - a).abs();
    for iter in 0..400 {
        let width = (b - a).abs();
        let scale = a.abs().max(b.abs()).max(1.0);
        if width <= rel * scale || width <= 4.0 * f64::EPSILON * a.abs().max(b.abs()) {
            break;
        }
        let mut c = (fa * b - fb * a) / (fa - fb);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        // Bisect when false position stalls or leaves the bracket.
        if !(c > lo && c < hi) || (iter % 3 == 2 && width > 0.5 * last_width) {
            c = 0.5 * (a + b);
        }
        if iter % 3 == 2 {
            last_width = width;
        }
        let fc = f(c)?;
        if fc == 0.0 {
            return Ok(c);
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    Ok(if fa.abs() <= fb.abs() { a } else { b })
}
