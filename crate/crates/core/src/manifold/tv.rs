use serde::{Deserialize, Serialize};

use crate::error::{NehariError, Result};
use crate::funcspace::GridFunction;
use crate::manifold::radial::{bracketed_root, potential_integral, radial_potential};
use crate::operators::ProblemSpec;
use crate::par::map_indices;

/// Samples in the coarse scan of the energy.
pub const SCAN_SAMPLES: usize = 256;

/// Outcome of the per-direction maximizer search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TvSearch {
    /// The maximizer.
    pub t: f64,
    /// Golden-section estimate before the sign-change polish.
    pub golden: f64,
    /// Bracket from the coarse scan.
    pub bracket: (f64, f64),
    /// `E(v)(t) - E(v)(r)` at the maximizer.
    pub energy_gain: f64,
    /// Coarse scan abscissae and energies relative to the first sample.
    pub scan_t: Vec<f64>,
    pub scan_energy: Vec<f64>,
    pub scan_potential: Vec<f64>,
}

/// Abscissae of the coarse scan over `[r, r_eff]`.
pub fn scan_grid(r: f64, r_eff: f64, count: usize) -> Vec<f64> {
    let count = count.max(3);
    let log = |a: f64, b: f64, m: usize| -> Vec<f64> {
        let (la, lb) = (a.ln(), b.ln());
        (0..m)
            .map(|k| {
                if k + 1 == m {
                    b
                } else {
                    (la + (lb - la) * k as f64 / (m - 1) as f64).exp()
                }
            })
            .collect()
    };
    if r == 0.0 {
        let mut out = vec![0.0];
        out.extend(log(r_eff * 1e-12, r_eff, count - 1));
        out
    } else if r_eff / r > 100.0 {
        let mut out = log(r, r_eff, count);
        out[0] = r;
        out
    } else {
        (0..count)
            .map(|k| {
                if k + 1 == count {
                    r_eff
                } else {
                    r + (r_eff - r) * k as f64 / (count - 1) as f64
                }
            })
            .collect()
    }
}

/// The maximizer `t_v` of `t ↦ E(v)(t)` on `[r, r_eff]`.
pub fn find_tv(prob: &ProblemSpec, v: &GridFunction, r: f64, r_eff: f64) -> Result<f64> {
    find_tv_search(prob, v, r, r_eff).map(|s| s.t)
}

pub fn find_tv_search(prob: &ProblemSpec, v: &GridFunction, r: f64, r_eff: f64) -> Result<TvSearch> {
    if !(r >= 0.0) || !(r < r_eff) || !r_eff.is_finite() {
        return Err(NehariError::InvalidProblem(format!(
            "search interval needs 0 ≤ r < R < ∞, got [{r}, {r_eff}]"
        )));
    }
    let ts = scan_grid(r, r_eff, SCAN_SAMPLES);
    let m = ts.len();
    // Potentials at the samples (even slots) and at interval midpoints (odd slots).
    let evals: Vec<f64> = map_indices(2 * m - 1, |k| {
        let t = if k % 2 == 0 {
            ts[k / 2]
        } else {
            0.5 * (ts[k / 2] + ts[k / 2 + 1])
        };
        radial_potential(prob, v, t)
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let potential: Vec<f64> = evals.iter().step_by(2).copied().collect();
    let mut energy = vec![0.0; m];
    for k in 0..m - 1 {
        let dt = ts[k + 1] - ts[k];
        energy[k + 1] = energy[k] + dt / 6.0 * (evals[2 * k] + 4.0 * evals[2 * k + 1] + evals[2 * k + 2]);
    }

    let best = (0..m).fold(0, |b, k| if energy[k] > energy[b] { k } else { b });
    let e_best = energy[best];
    if best == 0 || best == m - 1 {
        return Err(NehariError::BoundaryMaximum {
            t: ts[best],
            lower: r,
            upper: r_eff,
        });
    }
    let tie = prob.tolerances.census * e_best.abs().max(1.0);
    for k in 0..m {
        if k + 1 >= best && k <= best + 1 {
            continue;
        }
        let left_ok = k == 0 || energy[k] >= energy[k - 1];
        let right_ok = k == m - 1 || energy[k] >= energy[k + 1];
        if left_ok && right_ok && (e_best - energy[k]).abs() <= tie {
            return Err(NehariError::AmbiguousMaximum {
                t1: ts[best],
                e1: e_best,
                t2: ts[k],
                e2: energy[k],
            });
        }
    }

    let (a, b) = (ts[best - 1], ts[best + 1]);
    let e_a = energy[best - 1];
    let energy_at = |t: f64| -> Result<f64> { Ok(e_a + potential_integral(prob, v, a, t)?) };
    let golden = golden_section_max(&energy_at, a, b, prob.tolerances.tv_bracket)?;

    // Polish on the sign change of the potential, which the energy flatness hides.
    let (pa, pb) = (potential[best - 1], potential[best + 1]);
    let mut t = golden;
    if pa > 0.0 && pb < 0.0 {
        let root = bracketed_root(|s| radial_potential(prob, v, s), a, pa, b, pb, 0.0)?;
        if (root - golden).abs() <= 1e-4 * golden.abs().max(1.0) {
            t = root;
        }
    }

    let margin = prob.tolerances.tv_bracket * t.abs().max(1.0);
    if t - r <= margin || r_eff - t <= margin {
        return Err(NehariError::BoundaryMaximum {
            t,
            lower: r,
            upper: r_eff,
        });
    }
    Ok(TvSearch {
        t,
        golden,
        bracket: (a, b),
        energy_gain: energy_at(t)?,
        scan_t: ts,
        scan_energy: energy,
        scan_potential: potential,
    })
}

fn golden_section_max(f: &impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, rel: f64) -> Result<f64> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    for _ in 0..200 {
        if (b - a).abs() <= rel * c.abs().max(1.0) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc >= fd { c } else { d })
}
