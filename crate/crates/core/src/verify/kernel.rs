use serde::{Deserialize, Serialize};

use crate::cones::{sample_directions, ConeSpec};
use crate::error::{NehariError, Result};
use crate::funcspace::{integrate, prefix_integral, simpson, Grid, GridFunction};
use crate::par::map_indices;
use crate::verify::HypothesisReport;

/// Bounds on `(a₂α_v(2), |v|²_{L²} - a₁α_v(1), a₀α_v(0))` valid for every unit
/// direction of the kernel cone when `(a₂, a₁, a₀) = (10⁻², 2.5·10⁻³, 1)`.
pub const KERNEL_INTERVALS: [(f64, f64); 3] = [(4.88e-6, 8.34e-4), (3e-2, 1.0), (7.81e-3, 8.34e-2)];

/// `α_v(k) = ∫∫ k(t, s) v(s)^k v(t) ds dt`, each row integral split at `s = t`.
pub fn alpha_moments(v: &GridFunction, k: u32) -> f64 {
    let grid = v.grid();
    let n = grid.len();
    let h = grid.spacing();
    let nodes = grid.nodes();
    let vals = v.values();
    let g: Vec<f64> = vals
        .iter()
        .map(|x| if k == 0 { 1.0 } else { x.powi(k as i32) })
        .collect();
    let left: Vec<f64> = nodes.iter().zip(&g).map(|(s, x)| s * x).collect();
    let right_rev: Vec<f64> = nodes.iter().zip(&g).rev().map(|(s, x)| (1.0 - s) * x).collect();
    let rows: Vec<f64> = (0..n)
        .map(|i| {
            if i == 0 || i == n - 1 {
                return 0.0;
            }
            let t = nodes[i];
            let row = (1.0 - t) * prefix_integral(&left, i, h) + t * prefix_integral(&right_rev, n - 1 - i, h);
            row * vals[i]
        })
        .collect();
    simpson(&rows, h)
}

/// Critical-point analysis of `g(t) = -b₂t³/3 + b₁t²/2 - b₀t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicReport {
    pub b2: f64,
    pub b1: f64,
    pub b0: f64,
    pub discriminant: f64,
    /// Both roots of `g'`, present when the discriminant is positive.
    pub t_minus: Option<f64>,
    pub t_plus: Option<f64>,
    pub g_minus: Option<f64>,
    pub g_plus: Option<f64>,
    pub two_roots: bool,
    /// `t₊` is the unique global maximizer of `g` on `(0, ∞)`.
    pub plus_is_global_max: bool,
}

impl CubicReport {
    pub fn g(&self, t: f64) -> f64 {
        ((-self.b2 * t / 3.0 + self.b1 / 2.0) * t - self.b0) * t
    }

    pub fn g_prime(&self, t: f64) -> f64 {
        (-self.b2 * t + self.b1) * t - self.b0
    }
}

pub fn cubic_analysis(b2: f64, b1: f64, b0: f64) -> Result<CubicReport> {
    if !(b2 > 0.0) || !b2.is_finite() {
        return Err(NehariError::Domain {
            name: "b2",
            value: b2,
            domain: "(0, ∞)",
        });
    }
    if !b1.is_finite() || !b0.is_finite() {
        return Err(NehariError::NonFinite("cubic coefficients"));
    }
    let discriminant = b1 * b1 - 4.0 * b2 * b0;
    let mut rep = CubicReport {
        b2,
        b1,
        b0,
        discriminant,
        t_minus: None,
        t_plus: None,
        g_minus: None,
        g_plus: None,
        two_roots: false,
        plus_is_global_max: false,
    };
    if !(discriminant > 0.0) {
        return Ok(rep);
    }
    let sq = discriminant.sqrt();
    // Roots of b₂t² - b₁t + b₀; the larger-magnitude one first, the other from
    // the product of roots to avoid cancellation.
    let (t_minus, t_plus) = if b1 >= 0.0 {
        let tp = (b1 + sq) / (2.0 * b2);
        (b0 / (b2 * tp), tp)
    } else {
        let tm = (b1 - sq) / (2.0 * b2);
        (tm, b0 / (b2 * tm))
    };
    let g_at = |t: f64| t * (b1 * t - 4.0 * b0) / 6.0;
    let (gm, gp) = (g_at(t_minus), g_at(t_plus));
    rep.t_minus = Some(t_minus);
    rep.t_plus = Some(t_plus);
    rep.g_minus = Some(gm);
    rep.g_plus = Some(gp);
    rep.two_roots = true;
    rep.plus_is_global_max = t_minus > 0.0 && gp > 0.0 && gm < 0.0;
    Ok(rep)
}

/// Coefficients of the radial potential along one sampled direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectionCertificate {
    pub index: usize,
    pub b2: f64,
    pub b1: f64,
    pub b0: f64,
    pub l2_squared: f64,
    pub cubic: CubicReport,
    /// Smallest distance of the triple to its interval ends (negative when outside).
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelCertificate {
    pub report: HypothesisReport,
    pub directions: Vec<DirectionCertificate>,
}

/// Checks, for sampled unit directions of the kernel cone, that the cubic
/// energy coefficients fall in [`KERNEL_INTERVALS`], that `|v|²_{L²} ≥ 1/32`,
/// that the discriminant exceeds `4·10⁻⁴`, and that `10 < t₊ < 10⁷`.
pub fn certify_kernel_intervals(
    coeffs: [f64; 3],
    direction_count: usize,
    seed: u64,
    n: usize,
) -> Result<KernelCertificate> {
    let [a2, a1, a0] = coeffs;
    let grid = Grid::new(n)?;
    let dirs = sample_directions(&ConeSpec::kernel(), grid, direction_count, seed)?;
    let certs: Vec<DirectionCertificate> = map_indices(dirs.len(), |i| {
        let v = &dirs[i];
        let l2 = integrate(&v.mul(v).expect("same grid"));
        let b2 = a2 * alpha_moments(v, 2);
        let b1 = l2 - a1 * alpha_moments(v, 1);
        let b0 = a0 * alpha_moments(v, 0);
        let slack = [b2, b1, b0]
            .iter()
            .zip(KERNEL_INTERVALS)
            .map(|(x, (lo, hi))| (x - lo).min(hi - x))
            .fold(f64::INFINITY, f64::min);
        let cubic = cubic_analysis(b2, b1, b0)?;
        Ok(DirectionCertificate {
            index: i,
            b2,
            b1,
            b0,
            l2_squared: l2,
            cubic,
            slack,
        })
    })
    .into_iter()
    .collect::<Result<_>>()?;

    let mut rep = HypothesisReport::new("kernel-intervals", direction_count, Some(seed));
    let fold = |f: &dyn Fn(&DirectionCertificate) -> f64, min: bool| {
        certs
            .iter()
            .map(f)
            .fold(if min { f64::INFINITY } else { f64::NEG_INFINITY }, |a, b| {
                if min {
                    a.min(b)
                } else {
                    a.max(b)
                }
            })
    };
    let min_slack = fold(&|c| c.slack, true);
    let min_l2 = fold(&|c| c.l2_squared, true);
    let min_disc = fold(&|c| c.cubic.discriminant, true);
    let min_tp = fold(&|c| c.cubic.t_plus.unwrap_or(f64::NAN), true);
    let max_tp = fold(&|c| c.cubic.t_plus.unwrap_or(f64::NAN), false);
    rep.witness("min_interval_slack", min_slack)
        .witness("min_l2_squared", min_l2)
        .witness("min_discriminant", min_disc)
        .witness("min_t_plus", min_tp)
        .witness("max_t_plus", max_tp);
    for c in &certs {
        let i = c.index;
        if c.slack < 0.0 {
            rep.fail(format!(
                "direction {i}: triple ({}, {}, {}) leaves the intervals",
                c.b2, c.b1, c.b0
            ));
        }
        if c.l2_squared < 1.0 / 32.0 {
            rep.fail(format!("direction {i}: |v|² = {} below 1/32", c.l2_squared));
        }
        if !(c.cubic.discriminant > 4e-4) {
            rep.fail(format!(
                "direction {i}: discriminant {} not above 4e-4",
                c.cubic.discriminant
            ));
        }
        match c.cubic.t_plus {
            Some(tp) if tp > 10.0 && tp < 1e7 && c.cubic.plus_is_global_max => {}
            _ => {
                rep.fail(format!(
                    "direction {i}: t₊ = {:?} not a global maximizer in (10, 10⁷)",
                    c.cubic.t_plus
                ));
            }
        }
    }
    rep.sampled();
    Ok(KernelCertificate {
        report: rep,
        directions: certs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_moment_is_one_twelfth() {
        let g = Grid::new(257).unwrap();
        let one = GridFunction::constant(g, 1.0).unwrap();
        for k in 0..4 {
            assert!((alpha_moments(&one, k) - 1.0 / 12.0).abs() < 1e-15);
        }
        assert_eq!(alpha_moments(&GridFunction::zeros(g), 0), 0.0);
    }

    #[test]
    fn cubic_reference_case() {
        let c = cubic_analysis(1e-4, 0.5, 0.04).unwrap();
        let disc: f64 = 0.25 - 1.6e-5;
        let tp = (0.5 + disc.sqrt()) / 2e-4;
        let tm = (0.5 - disc.sqrt()) / 2e-4;
        assert!((c.t_plus.unwrap() - tp).abs() < 1e-9 * tp);
        assert!((c.t_minus.unwrap() - tm).abs() < 1e-8 * tm);
        assert!((c.t_plus.unwrap() - 4999.92).abs() < 1e-2);
        assert!((c.t_minus.unwrap() - 0.0800013).abs() < 1e-7);
        assert!(c.g_minus.unwrap() < 0.0 && c.g_plus.unwrap() > 0.0);
        assert!(c.plus_is_global_max);
        for t in [c.t_plus.unwrap(), c.t_minus.unwrap()] {
            assert!((c.g(t) - t * (0.5 * t - 0.16) / 6.0).abs() < 1e-12 * c.g(t).abs().max(1.0));
        }
    }

    #[test]
    fn double_root_has_no_two_roots() {
        let c = cubic_analysis(1.0, 2.0, 1.0).unwrap();
        assert!(!c.two_roots && c.t_plus.is_none());
        assert!(cubic_analysis(0.0, 1.0, 1.0).is_err());
    }
}
