//! Browser bindings for three interactive views: the radial energy of the
//! Hammerstein problem along a sampled direction, a fixed-point solve, and the
//! p-Laplacian inverse against its Harnack lower bound.
//!
//! The plain functions are ordinary Rust and are tested natively; the
//! `#[wasm_bindgen]` types only repackage their results as typed arrays.

use nehari::cones::{normalize, sample_direction};
use nehari::funcspace::{norm, Grid, GridFunction, NormKind};
use nehari::manifold::{energy_profile, nehari_solve, scan_grid, CriticalKind, SolveOptions};
use nehari::operators::{phi_weight, plaplace_inverse, Annulus, Nonlinearity, OperatorKind, ProblemSpec};
use nehari::NehariError;
use wasm_bindgen::prelude::*;

/// Grid size used by every view; large enough for smooth plots, small enough to stay interactive.
pub const DEMO_GRID: usize = 257;

#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub t: Vec<f64>,
    pub potential: Vec<f64>,
    pub energy: Vec<f64>,
    /// Critical radii with `true` for a maximum.
    pub critical: Vec<(f64, bool)>,
}

/// Radial potential and energy of `u = ∫ k(t,s) (a2 u² + a1 u + a0) ds`
/// along the seeded kernel-cone direction, sampled on `samples` radii in `[0, t_max]`.
pub fn kernel_profile(
    a2: f64,
    a1: f64,
    a0: f64,
    seed: u64,
    t_max: f64,
    samples: usize,
) -> Result<Profile, NehariError> {
    let prob = kernel_problem(a2, a1, a0)?;
    let v = sample_direction(&prob.cone(), prob.grid, seed, 0)?;
    let ts = scan_grid(0.0, t_max, samples.max(3));
    let prof = energy_profile(&prob, &v, &ts)?;
    Ok(Profile {
        critical: prof.census.iter().map(|c| (c.t, c.kind == CriticalKind::Max)).collect(),
        t: prof.t,
        potential: prof.potential,
        energy: prof.energy,
    })
}

fn kernel_problem(a2: f64, a1: f64, a0: f64) -> Result<ProblemSpec, NehariError> {
    ProblemSpec::new(
        OperatorKind::HammersteinKernel,
        Nonlinearity::Quadratic { a2, a1, a0 },
        Annulus::new(0.0, f64::INFINITY)?,
        Grid::new(DEMO_GRID)?,
    )
}

fn plaplacian_problem(p: f64) -> Result<ProblemSpec, NehariError> {
    ProblemSpec::new(
        OperatorKind::PlaplacianBvp { p, beta: 0.25 },
        Nonlinearity::model_plaplacian(p),
        Annulus::new(0.1, 300.0)?,
        Grid::new(DEMO_GRID)?,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub t: Vec<f64>,
    pub u: Vec<f64>,
    pub radius: f64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Fixed point from a tent start. `p ≤ 1` selects the Hammerstein problem
/// with coefficients `(a2, a1, a0)`; otherwise the p-Laplacian model problem
/// `f(x, y) = x^p (1 + 1/(1 + |y|))` on the annulus `(0.1, 300)`.
pub fn solve(p: f64, a2: f64, a1: f64, a0: f64, damping: f64) -> Result<Solution, NehariError> {
    let prob = if p > 1.0 {
        plaplacian_problem(p)?
    } else {
        kernel_problem(a2, a1, a0)?
    };
    let tent = GridFunction::from_fn_with_derivative(
        prob.grid,
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
    )?;
    let v0 = normalize(&tent, &prob.cone())?;
    let rep = nehari_solve(
        &prob,
        &v0,
        &SolveOptions {
            damping,
            max_iters: 500,
        },
    )?;
    Ok(Solution {
        t: prob.grid.nodes(),
        u: rep.u.values().to_vec(),
        radius: rep.t_v,
        residual: rep.residual,
        iterations: rep.iterations,
        converged: rep.converged,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Inverse {
    pub t: Vec<f64>,
    pub u: Vec<f64>,
    /// `φ(t)·|u|_{1,p}` on `[0, 1/2]`, mirrored.
    pub bound: Vec<f64>,
}

/// Solves `-(|u'|^{p-2} u')' = 1 + c sin(πt)` with zero boundary values.
pub fn harnack(p: f64, bump: f64) -> Result<Inverse, NehariError> {
    let g = Grid::new(DEMO_GRID)?;
    let h = GridFunction::from_fn(g, |t| 1.0 + bump * (std::f64::consts::PI * t).sin())?;
    let u = plaplace_inverse(&h, p, 1e-8)?;
    let w = norm(&u, NormKind::W1p(p))?;
    let bound = g
        .nodes()
        .iter()
        .map(|&t| phi_weight(t.min(1.0 - t), p).map(|phi| phi * w))
        .collect::<Result<_, _>>()?;
    Ok(Inverse {
        t: g.nodes(),
        u: u.values().to_vec(),
        bound,
    })
}

fn js_error(e: NehariError) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub struct ProfileView(Profile);

#[wasm_bindgen]
impl ProfileView {
    pub fn t(&self) -> Vec<f64> {
        self.0.t.clone()
    }
    pub fn potential(&self) -> Vec<f64> {
        self.0.potential.clone()
    }
    pub fn energy(&self) -> Vec<f64> {
        self.0.energy.clone()
    }
    /// Critical radii, in increasing order.
    pub fn critical_t(&self) -> Vec<f64> {
        self.0.critical.iter().map(|c| c.0).collect()
    }
    /// 1 for a maximum, 0 for a minimum, aligned with `critical_t`.
    pub fn critical_is_max(&self) -> Vec<u8> {
        self.0.critical.iter().map(|c| c.1 as u8).collect()
    }
}

#[wasm_bindgen(js_name = kernelProfile)]
pub fn kernel_profile_js(
    a2: f64,
    a1: f64,
    a0: f64,
    seed: u32,
    t_max: f64,
    samples: usize,
) -> Result<ProfileView, JsError> {
    kernel_profile(a2, a1, a0, seed as u64, t_max, samples)
        .map(ProfileView)
        .map_err(js_error)
}

#[wasm_bindgen]
pub struct SolutionView(Solution);

#[wasm_bindgen]
impl SolutionView {
    pub fn t(&self) -> Vec<f64> {
        self.0.t.clone()
    }
    pub fn u(&self) -> Vec<f64> {
        self.0.u.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn radius(&self) -> f64 {
        self.0.radius
    }
    #[wasm_bindgen(getter)]
    pub fn residual(&self) -> f64 {
        self.0.residual
    }
    #[wasm_bindgen(getter)]
    pub fn iterations(&self) -> usize {
        self.0.iterations
    }
    #[wasm_bindgen(getter)]
    pub fn converged(&self) -> bool {
        self.0.converged
    }
}

#[wasm_bindgen(js_name = solve)]
pub fn solve_js(p: f64, a2: f64, a1: f64, a0: f64, damping: f64) -> Result<SolutionView, JsError> {
    solve(p, a2, a1, a0, damping).map(SolutionView).map_err(js_error)
}

#[wasm_bindgen]
pub struct InverseView(Inverse);

#[wasm_bindgen]
impl InverseView {
    pub fn t(&self) -> Vec<f64> {
        self.0.t.clone()
    }
    pub fn u(&self) -> Vec<f64> {
        self.0.u.clone()
    }
    pub fn bound(&self) -> Vec<f64> {
        self.0.bound.clone()
    }
}

#[wasm_bindgen(js_name = harnack)]
pub fn harnack_js(p: f64, bump: f64) -> Result<InverseView, JsError> {
    harnack(p, bump).map(InverseView).map_err(js_error)
}
