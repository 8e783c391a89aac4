//! Inverse of the one-dimensional p-Laplacian `J u = -(|u'|^{p-2} u')'` with
//! homogeneous Dirichlet data, for right-hand sides symmetric about 1/2.
//!
//! For symmetric `h` the solution is
//!
//! ```text
//! u(t) = ∫_0^t φ⁻¹(μ(s)) ds,    μ(t) = ∫_t^{1/2} h(s) ds,    φ⁻¹(x) = sgn(x)|x|^{1/(p-1)}
//! ```
//!
//! `μ` is accumulated outward from the midpoint with the crate's Simpson
//! chain. Cell integrals of `φ⁻¹(μ)` use the cubic Hermite interpolant of `μ`
//! (its slope is `-h`) with three-point Gauss–Legendre. On the cell touching
//! the midpoint, where `u'` has a `|1/2 - t|^{1/(p-1)}` singularity for `p > 2`,
//! and wherever `μ` is linear, the integral is taken exactly for the linear
//! interpolant instead. The exact
//! nodal values `φ⁻¹(μ_i)` are stored as the derivative of the result.

use crate::error::{NehariError, Result};
use crate::funcspace::{cumulative, GridFunction};
use crate::operators::signed_power;

/// Largest `|h(t) - h(1 - t)|` over the grid.
pub fn symmetry_defect(values: &[f64]) -> f64 {
    let n = values.len();
    (0..n / 2).fold(0.0_f64, |m, i| m.max((values[i] - values[n - 1 - i]).abs()))
}

/// Solve `-(φ(u'))' = h`, `u(0) = u(1) = 0` for symmetric `h`.
///
/// `sym_tol` bounds the accepted symmetry defect relative to `sup |h|`.
pub fn plaplace_inverse(h: &GridFunction, p: f64, sym_tol: f64) -> Result<GridFunction> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(NehariError::InvalidExponent(p));
    }
    let grid = h.grid();
    let values = h.values();
    let defect = symmetry_defect(values);
    let tolerance = sym_tol * h.sup();
    if defect > tolerance {
        return Err(NehariError::AsymmetricInput { defect, tolerance });
    }

    let n = grid.len();
    let m = grid.mid();
    let dx = grid.spacing();
    let alpha = 1.0 / (p - 1.0);

    // μ at nodes m, m-1, ..., 0.
    let outward: Vec<f64> = values[..=m].iter().rev().copied().collect();
    let mu_out = cumulative(&outward, dx);
    let mut mu = vec![0.0; m + 1];
    for (j, v) in mu_out.iter().enumerate() {
        mu[m - j] = *v;
    }

    let mut u = vec![0.0; n];
    let mut du = vec![0.0; n];
    for i in 0..=m {
        du[i] = signed_power(mu[i], alpha);
    }
    for i in 0..m {
        let secant = (mu[i + 1] - mu[i]) / dx;
        let linear = [values[i], values[i + 1]]
            .iter()
            .all(|h| (h + secant).abs() <= 1e-12 * secant.abs());
        let cell = if linear || (i + 1 == m && alpha < 1.0) {
            linear_cell(mu[i], mu[i + 1], alpha, dx)
        } else {
            hermite_cell(mu[i], mu[i + 1], -values[i], -values[i + 1], alpha, dx)
        };
        u[i + 1] = u[i] + cell;
    }
    for i in 0..m {
        u[n - 1 - i] = u[i];
        du[n - 1 - i] = -du[i];
    }
    du[m] = 0.0;
    GridFunction::with_derivative(grid, u, du)
}

/// `∫` over one cell of `sgn(μ)|μ|^α` with `μ` the cubic Hermite interpolant of
/// values `a, b` and slopes `da, db`.
fn hermite_cell(a: f64, b: f64, da: f64, db: f64, alpha: f64, dx: f64) -> f64 {
    let r = 0.5 * (0.6_f64).sqrt();
    let mu = |s: f64| {
        let s2 = s * s;
        let s3 = s2 * s;
        (2.0 * s3 - 3.0 * s2 + 1.0) * a
            + (s3 - 2.0 * s2 + s) * dx * da
            + (-2.0 * s3 + 3.0 * s2) * b
            + (s3 - s2) * dx * db
    };
    dx * (5.0 * signed_power(mu(0.5 - r), alpha)
        + 8.0 * signed_power(mu(0.5), alpha)
        + 5.0 * signed_power(mu(0.5 + r), alpha))
        / 18.0
}

/// `∫` over one cell of `sgn(μ)|μ|^α` with `μ` linear from `a` to `b`.
fn linear_cell(a: f64, b: f64, alpha: f64, dx: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        return 0.0;
    }
    if (b - a).abs() > 1e-4 * scale {
        // d/dx |x|^{α+1}/(α+1) = sgn(x)|x|^α, valid across a sign change.
        let anti = |x: f64| x.abs().powf(alpha + 1.0) / (alpha + 1.0);
        dx * (anti(b) - anti(a)) / (b - a)
    } else {
        // No sign change is possible here; three-point Gauss–Legendre.
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let r = (0.6_f64).sqrt();
        dx * (5.0 * signed_power(mid - r * half, alpha)
            + 8.0 * signed_power(mid, alpha)
            + 5.0 * signed_power(mid + r * half, alpha))
            / 18.0
    }
}
