//! The two function cones, membership checks, normalization onto the unit
//! sphere, and a reproducible sampler of unit directions.
//!
//! * p-Laplacian cone: `u ≥ 0`, symmetric about 1/2, concave, and
//!   `u(t) ≥ φ(t) |u|_{1,p}` on `[0, 1/2]`; normalized in `W^{1,p}`.
//! * kernel cone: `u ≥ 0` and `min_{[1/4, 3/4]} u ≥ |u|_∞ / 4`; normalized in sup.
//!
//! Samples are images of cone-invariant base maps, so membership holds by
//! construction; each sample is still checked and a failure is reported as a
//! sampler error.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{NehariError, Result};
use crate::funcspace::{finite_difference, norm, Grid, GridFunction, NormKind};
use crate::operators::{green_apply, phi_weight, plaplace_inverse, symmetry_defect};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum ConeKind {
    Plaplacian { p: f64 },
    Kernel,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeSpec {
    pub kind: ConeKind,
    /// Membership slack relative to `|u|_∞`.
    pub tolerance: f64,
}

impl ConeSpec {
    pub fn new(kind: ConeKind, tolerance: f64) -> Self {
        ConeSpec {
            kind,
            tolerance: tolerance.max(0.0),
        }
    }

    pub fn plaplacian(p: f64) -> Self {
        Self::new(ConeKind::Plaplacian { p }, 1e-9)
    }

    pub fn kernel() -> Self {
        Self::new(ConeKind::Kernel, 1e-9)
    }

    pub fn norm_kind(&self) -> NormKind {
        match self.kind {
            ConeKind::Plaplacian { p } => NormKind::W1p(p),
            ConeKind::Kernel => NormKind::Sup,
        }
    }
}

/// Signed margins of each cone predicate; a predicate holds when its margin is
/// at least `-tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub member: bool,
    /// `min u`.
    pub nonnegativity: f64,
    /// `-max |u(t) - u(1 - t)|`; p-Laplacian cone only.
    pub symmetry: Option<f64>,
    /// `-max (u(t-h) - 2u(t) + u(t+h))`; p-Laplacian cone only.
    pub concavity: Option<f64>,
    /// `min_{t ≤ 1/2} (u(t) - φ(t)|u|_{1,p})`; p-Laplacian cone only.
    pub harnack: Option<f64>,
    /// `min_{[1/4,3/4]} u - |u|_∞/4`; kernel cone only.
    pub quarter: Option<f64>,
    /// Slack actually applied.
    pub tolerance: f64,
}

impl MembershipReport {
    fn margins(&self) -> impl Iterator<Item = f64> + '_ {
        [
            Some(self.nonnegativity),
            self.symmetry,
            self.concavity,
            self.harnack,
            self.quarter,
        ]
        .into_iter()
        .flatten()
    }

    /// Smallest margin over all predicates checked.
    pub fn worst_margin(&self) -> f64 {
        self.margins().fold(f64::INFINITY, f64::min)
    }
}

pub fn check_membership(u: &GridFunction, cone: &ConeSpec) -> MembershipReport {
    let v = u.values();
    let grid = u.grid();
    let sup = u.sup();
    let tol = cone.tolerance * sup;
    let nonnegativity = v.iter().copied().fold(f64::INFINITY, f64::min);

    let mut report = MembershipReport {
        member: false,
        nonnegativity,
        symmetry: None,
        concavity: None,
        harnack: None,
        quarter: None,
        tolerance: tol,
    };
    match cone.kind {
        ConeKind::Plaplacian { p } => {
            report.symmetry = Some(-symmetry_defect(v));
            let second = v
                .windows(3)
                .map(|w| w[0] - 2.0 * w[1] + w[2])
                .fold(f64::NEG_INFINITY, f64::max);
            report.concavity = Some(-second);
            let w1p = norm(u, NormKind::W1p(p)).unwrap_or(f64::NAN);
            let harnack = (0..=grid.mid())
                .map(|i| v[i] - phi_weight(grid.node(i).min(0.5), p).unwrap_or(f64::NAN) * w1p)
                .fold(f64::INFINITY, f64::min);
            report.harnack = Some(harnack);
        }
        ConeKind::Kernel => {
            let quarter_min = (0..grid.len())
                .filter(|&i| {
                    let t = grid.node(i);
                    (0.25..=0.75).contains(&t)
                })
                .map(|i| v[i])
                .fold(f64::INFINITY, f64::min);
            report.quarter = Some(quarter_min - sup / 4.0);
        }
    }
    let limit = -report.tolerance;
    let member = report.margins().all(|m| m >= limit);
    report.member = member;
    report
}

/// `u / |u|` in the cone's norm. A function without a stored derivative gets
/// its finite-difference derivative attached, so later W^{1,p} pairings see
/// consistent data.
pub fn normalize(u: &GridFunction, cone: &ConeSpec) -> Result<GridFunction> {
    let size = norm(u, cone.norm_kind())?;
    if !(size > 0.0) {
        return Err(NehariError::ZeroDirection);
    }
    if !size.is_finite() {
        return Err(NehariError::NonFinite("normalize"));
    }
    Ok(with_derivative(u).scale(1.0 / size))
}

pub(crate) fn with_derivative(u: &GridFunction) -> GridFunction {
    if u.stored_derivative().is_some() {
        return u.clone();
    }
    let du = finite_difference(u.values(), u.grid().spacing());
    GridFunction::with_derivative(u.grid(), u.values().to_vec(), du)
        .expect("finite difference of finite data is finite")
}

/// Generator for sample `index` of stream `seed`; independent of evaluation order.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// A nonnegative right-hand side, symmetric about 1/2 and nondecreasing on
/// `(0, 1/2)`. Index 0 is `h ≡ 1`.
pub fn admissible_rhs(grid: Grid, seed: u64, index: usize) -> GridFunction {
    if index == 0 {
        return GridFunction::constant(grid, 1.0).expect("finite constant");
    }
    let mut rng = sample_rng(seed, index);
    let c0: f64 = rng.random_range(0.0..1.0);
    let terms = rng.random_range(1..=4usize);
    let coeffs: Vec<(i32, f64)> = (0..terms)
        .map(|_| (rng.random_range(1..=6i32), rng.random_range(0.0..3.0)))
        .collect();
    // Optional plateau-shifted bump: zero near the ends, rising toward the middle.
    let shift: f64 = if rng.random_bool(0.5) {
        rng.random_range(0.0..0.9)
    } else {
        1.0
    };
    let shift_weight: f64 = rng.random_range(0.0..4.0);
    GridFunction::from_fn(grid, |t| {
        let s = 4.0 * t * (1.0 - t);
        let poly: f64 = coeffs.iter().map(|(k, c)| c * s.powi(*k)).sum();
        let bump = if shift < 1.0 {
            shift_weight * (s - shift).max(0.0).powi(2)
        } else {
            0.0
        };
        c0 + poly + bump
    })
    .expect("finite samples")
}

/// A unit member of the kernel cone. Index 0 is the parabola `4t(1 - t)`.
pub fn kernel_direction(grid: Grid, seed: u64, index: usize) -> GridFunction {
    let parabola = |q: f64| GridFunction::from_fn(grid, move |t| (4.0 * t * (1.0 - t)).powf(q)).expect("finite");
    if index == 0 {
        return parabola(1.0);
    }
    let mut rng = sample_rng(seed, index);
    let sup_unit = |u: GridFunction| {
        let s = u.sup();
        u.scale(1.0 / s)
    };
    let bumps = |rng: &mut ChaCha8Rng| {
        let count = rng.random_range(1..=4usize);
        let centers: Vec<(f64, f64, f64)> = (0..count)
            .map(|_| {
                (
                    rng.random_range(0.0..1.0),
                    rng.random_range(0.05..0.3),
                    rng.random_range(0.1..1.0),
                )
            })
            .collect();
        let src: Vec<f64> = grid
            .nodes()
            .iter()
            .map(|t| {
                centers
                    .iter()
                    .map(|(c, w, a)| a * (-(t - c) * (t - c) / (2.0 * w * w)).exp())
                    .sum()
            })
            .collect();
        sup_unit(GridFunction::new(grid, green_apply(grid, &src)).expect("finite"))
    };
    match rng.random_range(0..3u32) {
        0 => parabola(rng.random_range(1.0..4.0)),
        1 => bumps(&mut rng),
        _ => {
            let a = parabola(rng.random_range(1.0..4.0));
            let b = bumps(&mut rng);
            let w: f64 = rng.random_range(0.0..1.0);
            sup_unit(a.combine(w, &b, 1.0 - w).expect("same grid"))
        }
    }
}

/// `count` unit directions of the cone, reproducible for a given seed.
pub fn sample_directions(cone: &ConeSpec, grid: Grid, count: usize, seed: u64) -> Result<Vec<GridFunction>> {
    if count == 0 {
        return Err(NehariError::InvalidProblem("direction count must be at least 1".into()));
    }
    crate::par::map_indices(count, |index| sample_direction(cone, grid, seed, index))
        .into_iter()
        .collect()
}

/// Sample `index` of [`sample_directions`], generated on its own.
pub fn sample_direction(cone: &ConeSpec, grid: Grid, seed: u64, index: usize) -> Result<GridFunction> {
    let raw = match cone.kind {
        ConeKind::Plaplacian { p } => plaplace_inverse(&admissible_rhs(grid, seed, index), p, 1e-12)?,
        ConeKind::Kernel => kernel_direction(grid, seed, index),
    };
    let v = normalize(&raw, cone)?;
    let report = check_membership(&v, cone);
    if !report.member {
        return Err(NehariError::Sampler {
            index,
            reason: format!("worst margin {:e}", report.worst_margin()),
        });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::make_uniform_grid;

    #[test]
    fn parabola_in_plaplacian_cone() {
        let g = make_uniform_grid(1025).unwrap();
        let u = GridFunction::from_fn(g, |t| t * (1.0 - t) / 2.0).unwrap();
        let r = check_membership(&u, &ConeSpec::plaplacian(2.0));
        assert!(r.member, "{r:?}");
        assert!(r.harnack.unwrap() >= 0.0);
    }

    #[test]
    fn tent_in_kernel_cone() {
        let g = make_uniform_grid(1025).unwrap();
        let tent = GridFunction::from_fn(g, |t| 1.0 - (2.0 * t - 1.0).abs()).unwrap();
        let r = check_membership(&tent, &ConeSpec::kernel());
        assert!(r.member);
        assert!((r.quarter.unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn asymmetric_function_rejected() {
        let g = make_uniform_grid(65).unwrap();
        let u = GridFunction::from_fn(g, |t| t).unwrap();
        let r = check_membership(&u, &ConeSpec::plaplacian(2.0));
        assert!(!r.member);
        assert!((r.symmetry.unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn normalize_cases() {
        let g = make_uniform_grid(1025).unwrap();
        let cone = ConeSpec::plaplacian(2.0);
        let u = GridFunction::from_fn(g, |t| t * (1.0 - t) / 2.0).unwrap();
        let v = normalize(&u, &cone).unwrap();
        assert!((v.values()[g.mid()] / u.values()[g.mid()] - 12f64.sqrt()).abs() < 1e-12);
        let w = normalize(&v, &cone).unwrap();
        for (a, b) in v.values().iter().zip(w.values()) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(
            normalize(&GridFunction::zeros(g), &cone),
            Err(NehariError::ZeroDirection)
        );
    }

    #[test]
    fn sampler_contract() {
        let g = make_uniform_grid(257).unwrap();
        for cone in [ConeSpec::plaplacian(2.0), ConeSpec::plaplacian(3.5), ConeSpec::kernel()] {
            let a = sample_directions(&cone, g, 12, 7).unwrap();
            let b = sample_directions(&cone, g, 12, 7).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.len(), 12);
            for v in &a {
                assert!((norm(v, cone.norm_kind()).unwrap() - 1.0).abs() <= 1e-12);
            }
        }
        let first = sample_directions(&ConeSpec::plaplacian(2.0), g, 1, 3).unwrap();
        let base = GridFunction::from_fn(g, |t| t * (1.0 - t) / 2.0).unwrap();
        let expected = normalize(&base, &ConeSpec::plaplacian(2.0)).unwrap();
        for (x, y) in first[0].values().iter().zip(expected.values()) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
