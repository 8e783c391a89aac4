use serde::{Deserialize, Serialize};

use crate::cones::{ConeKind, ConeSpec};
use crate::error::{NehariError, Result};
use crate::funcspace::{Grid, NormKind};
use crate::operators::Nonlinearity;

/// Which fixed-point operator `T` the problem uses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum OperatorKind {
    /// `T(u) = J⁻¹ f(u, u')` on `W^{1,p}_0(0,1)`; `beta ∈ (0, 1/2)` enters the
    /// growth condition at the outer radius.
    PlaplacianBvp { p: f64, beta: f64 },
    /// `T(u) = ∫ k(·, s) f(u(s)) ds` with the Dirichlet Green kernel, on `C[0,1]`.
    HammersteinKernel,
}

/// Conical annulus `r ≤ |u| ≤ R`; `outer` may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Annulus {
    pub inner: f64,
    pub outer: f64,
}

impl Annulus {
    pub fn new(inner: f64, outer: f64) -> Result<Self> {
        let a = Annulus { inner, outer };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.inner >= 0.0) || !self.inner.is_finite() || !(self.inner < self.outer) {
            return Err(NehariError::InvalidProblem(format!(
                "annulus needs 0 ≤ r < R, got r = {}, R = {}",
                self.inner, self.outer
            )));
        }
        Ok(())
    }
}

/// Whether `t_v` maximizes or minimizes the radial energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumMode {
    #[default]
    Maximum,
    Minimum,
}

impl ExtremumMode {
    pub fn sign(self) -> f64 {
        match self {
            ExtremumMode::Maximum => 1.0,
            ExtremumMode::Minimum => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Fixed-point residual `|T(u) - u|` in the cone's norm.
    pub residual: f64,
    /// Relative bracket width for the `t_v` search.
    pub tv_bracket: f64,
    /// Relative bracket width for critical points, and the energy tie threshold.
    pub census: f64,
    /// Accepted symmetry defect of p-Laplacian right-hand sides, relative to their sup.
    pub symmetry: f64,
    /// Cone membership slack, relative to the sup norm of the tested function.
    pub membership: f64,
    /// Stop the direction iteration once successive directions differ by less.
    pub direction: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual: 1e-8,
            tv_bracket: 1e-10,
            census: 1e-10,
            symmetry: 1e-8,
            membership: 1e-9,
            direction: 1e-14,
        }
    }
}

/// Complete description of one fixed-point problem `u = T(u)`.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub operator: OperatorKind,
    pub nonlinearity: Nonlinearity,
    pub annulus: Annulus,
    pub grid: Grid,
    pub mode: ExtremumMode,
    /// Replaces an infinite outer radius in every search.
    pub radius_cap: f64,
    pub tolerances: Tolerances,
}

/// Cap applied to an infinite outer radius unless the caller sets one.
pub const DEFAULT_RADIUS_CAP: f64 = 1e8;

impl ProblemSpec {
    pub fn new(operator: OperatorKind, nonlinearity: Nonlinearity, annulus: Annulus, grid: Grid) -> Result<Self> {
        let spec = ProblemSpec {
            operator,
            nonlinearity,
            annulus,
            grid,
            mode: ExtremumMode::Maximum,
            radius_cap: DEFAULT_RADIUS_CAP,
            tolerances: Tolerances::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The quadratic Hammerstein example: `f(x) = 10⁻² x² + 2.5·10⁻³ x + 1`
    /// on the whole cone.
    pub fn kernel_example(n: usize) -> Result<Self> {
        Self::new(
            OperatorKind::HammersteinKernel,
            Nonlinearity::Quadratic {
                a2: 1e-2,
                a1: 2.5e-3,
                a0: 1.0,
            },
            Annulus::new(0.0, f64::INFINITY)?,
            Grid::new(n)?,
        )
    }

    /// The p-Laplacian example with `p = 2`, `f(x, y) = x²(1 + 1/(1 + |y|))`,
    /// `r = 0.1`, `R = 300`, `β = 1/4`.
    pub fn plaplacian_example(n: usize) -> Result<Self> {
        Self::new(
            OperatorKind::PlaplacianBvp { p: 2.0, beta: 0.25 },
            Nonlinearity::model_plaplacian(2.0),
            Annulus::new(0.1, 300.0)?,
            Grid::new(n)?,
        )
    }

    pub fn validate(&self) -> Result<()> {
        self.annulus.validate()?;
        if let OperatorKind::PlaplacianBvp { p, beta } = self.operator {
            if !(p > 1.0) || !p.is_finite() {
                return Err(NehariError::InvalidExponent(p));
            }
            if !(beta > 0.0 && beta < 0.5) {
                return Err(NehariError::Domain {
                    name: "beta",
                    value: beta,
                    domain: "(0, 1/2)",
                });
            }
        }
        if !(self.radius_cap > self.annulus.inner) || !self.radius_cap.is_finite() {
            return Err(NehariError::InvalidProblem(format!(
                "radius cap {} must be finite and exceed the inner radius {}",
                self.radius_cap, self.annulus.inner
            )));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("residual", t.residual),
            ("tv_bracket", t.tv_bracket),
            ("census", t.census),
            ("symmetry", t.symmetry),
            ("membership", t.membership),
            ("direction", t.direction),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(NehariError::InvalidProblem(format!(
                    "tolerance {name} = {v} must be finite and nonnegative"
                )));
            }
        }
        Ok(())
    }

    pub fn with_annulus(&self, annulus: Annulus) -> Result<Self> {
        let mut s = self.clone();
        s.annulus = annulus;
        s.validate()?;
        Ok(s)
    }

    pub fn with_mode(mut self, mode: ExtremumMode) -> Self {
        self.mode = mode;
        self
    }

    /// Exponent of the p-Laplacian, `None` for the kernel operator.
    pub fn exponent(&self) -> Option<f64> {
        match self.operator {
            OperatorKind::PlaplacianBvp { p, .. } => Some(p),
            OperatorKind::HammersteinKernel => None,
        }
    }

    /// Outer search radius with `R = ∞` replaced by the cap.
    pub fn effective_outer(&self) -> f64 {
        self.annulus.outer.min(self.radius_cap)
    }

    pub fn norm_kind(&self) -> NormKind {
        match self.operator {
            OperatorKind::PlaplacianBvp { p, .. } => NormKind::W1p(p),
            OperatorKind::HammersteinKernel => NormKind::Sup,
        }
    }

    pub fn cone(&self) -> ConeSpec {
        let kind = match self.operator {
            OperatorKind::PlaplacianBvp { p, .. } => ConeKind::Plaplacian { p },
            OperatorKind::HammersteinKernel => ConeKind::Kernel,
        };
        ConeSpec::new(kind, self.tolerances.membership)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_validate() {
        let k = ProblemSpec::kernel_example(1025).unwrap();
        assert_eq!(k.effective_outer(), 1e8);
        assert_eq!(k.norm_kind(), NormKind::Sup);
        let p = ProblemSpec::plaplacian_example(257).unwrap();
        assert_eq!(p.effective_outer(), 300.0);
        assert_eq!(p.exponent(), Some(2.0));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Annulus::new(5.0, 2.0).is_err());
        assert!(Annulus::new(-1.0, 2.0).is_err());
        let g = Grid::new(33).unwrap();
        let a = Annulus::new(0.1, 1.0).unwrap();
        let f = Nonlinearity::constant(1.0);
        assert!(ProblemSpec::new(OperatorKind::PlaplacianBvp { p: 1.0, beta: 0.25 }, f.clone(), a, g).is_err());
        assert!(ProblemSpec::new(OperatorKind::PlaplacianBvp { p: 2.0, beta: 0.5 }, f, a, g).is_err());
    }
}
