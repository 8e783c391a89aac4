//! The Green kernel of `-u''` on `(0, 1)` with Dirichlet data,
//! `k(t, s) = t(1 - s)` for `t ≤ s` and `s(1 - t)` for `s ≤ t`, and the
//! Hammerstein operator built on it.
//!
//! Row integrals are split at the diagonal: on each side the kernel factors
//! into a function of `t` times a function of `s`, so both pieces are plain
//! prefix integrals of smooth data. [`hammerstein`] evaluates all rows in
//! linear time from running integrals; [`green_row`] evaluates one row
//! directly with the same weights.

use crate::error::Result;
use crate::funcspace::{cumulative, prefix_integral, Grid, GridFunction};
use crate::operators::Nonlinearity;

pub fn green_kernel(t: f64, s: f64) -> f64 {
    if t <= s {
        t * (1.0 - s)
    } else {
        s * (1.0 - t)
    }
}

/// `(Kg)(t_i) = ∫_0^1 k(t_i, s) g(s) ds` at every node.
pub fn green_apply(grid: Grid, g: &[f64]) -> Vec<f64> {
    let n = grid.len();
    let dx = grid.spacing();
    let nodes = grid.nodes();
    let left: Vec<f64> = nodes.iter().zip(g).map(|(s, v)| s * v).collect();
    let right_rev: Vec<f64> = nodes.iter().zip(g).rev().map(|(s, v)| (1.0 - s) * v).collect();
    let cl = cumulative(&left, dx);
    let cr = cumulative(&right_rev, dx);
    let mut out: Vec<f64> = (0..n)
        .map(|i| (1.0 - nodes[i]) * cl[i] + nodes[i] * cr[n - 1 - i])
        .collect();
    out[0] = 0.0;
    out[n - 1] = 0.0;
    out
}

/// One row of [`green_apply`], evaluated directly rather than from running sums.
pub fn green_row(grid: Grid, g: &[f64], i: usize) -> f64 {
    let n = grid.len();
    if i == 0 || i == n - 1 {
        return 0.0;
    }
    let dx = grid.spacing();
    let nodes = grid.nodes();
    let t = nodes[i];
    let left: Vec<f64> = nodes.iter().zip(g).map(|(s, v)| s * v).collect();
    let right_rev: Vec<f64> = nodes.iter().zip(g).rev().map(|(s, v)| (1.0 - s) * v).collect();
    (1.0 - t) * prefix_integral(&left, i, dx) + t * prefix_integral(&right_rev, n - 1 - i, dx)
}

/// `T(u)(t) = ∫_0^1 k(t, s) f(u(s)) ds`, with `f(x) = f(x, 0)`.
pub fn hammerstein(f: &Nonlinearity, u: &GridFunction) -> Result<GridFunction> {
    let g: Vec<f64> = u.values().iter().map(|&x| f.f_zero(x)).collect();
    GridFunction::new(u.grid(), green_apply(u.grid(), &g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::make_uniform_grid;

    #[test]
    fn unit_source_gives_parabola() {
        for n in [3, 5, 7, 1025] {
            let g = make_uniform_grid(n).unwrap();
            let u = GridFunction::from_fn(g, |t| t.sin()).unwrap();
            let out = hammerstein(&Nonlinearity::constant(1.0), &u).unwrap();
            for (v, t) in out.values().iter().zip(g.nodes()) {
                assert!((v - t * (1.0 - t) / 2.0).abs() < 1e-15, "n={n}");
            }
            assert!(out.sup() <= 0.125 + 1e-15);
        }
        let g = make_uniform_grid(1025).unwrap();
        let out = hammerstein(&Nonlinearity::constant(1.0), &GridFunction::zeros(g)).unwrap();
        assert!((out.sup() - 0.125).abs() < 1e-15);
        let zero = hammerstein(&Nonlinearity::constant(0.0), &GridFunction::zeros(g)).unwrap();
        assert!(zero.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn rows_agree_with_running_sums() {
        let g = make_uniform_grid(41).unwrap();
        let src: Vec<f64> = g.nodes().iter().map(|t| (3.0 * t).exp() * (1.0 + t * t)).collect();
        let all = green_apply(g, &src);
        for (i, v) in all.iter().enumerate() {
            assert!((v - green_row(g, &src, i)).abs() < 1e-13);
        }
    }

    #[test]
    fn kernel_properties() {
        for &(t, s) in &[(0.2, 0.7), (0.7, 0.2), (0.5, 0.5), (0.0, 0.3)] {
            assert_eq!(green_kernel(t, s), green_kernel(s, t));
            assert!(green_kernel(t, s) <= s * (1.0 - s) + 1e-15);
        }
    }

    #[test]
    fn matches_second_order_solution() {
        // -u'' = 12 t², u(0) = u(1) = 0  ⇒  u = t(1 - t³).
        let g = make_uniform_grid(257).unwrap();
        let src: Vec<f64> = g.nodes().iter().map(|t| 12.0 * t * t).collect();
        for (v, t) in green_apply(g, &src).iter().zip(g.nodes()) {
            assert!((v - t * (1.0 - t.powi(3))).abs() < 5e-9);
        }
    }
}
