use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{NehariError, Result};
use crate::operators::signed_power;

/// Stand-in for `y → ∞` when a nonlinearity has no closed-form limit.
pub const Y_BIG: f64 = 1e12;

/// Right-hand side `f(x, y)` of the fixed-point problems.
///
/// For the Hammerstein operator only `f(x, 0)` is used.
#[derive(Clone)]
pub enum Nonlinearity {
    /// `coeff * x^exponent * (base + rational / (1 + |y|))`, with `x^0 = 1`.
    PowerRational {
        coeff: f64,
        exponent: f64,
        base: f64,
        rational: f64,
    },
    /// `a2 x² + a1 x + a0`, independent of `y`.
    Quadratic { a2: f64, a1: f64, a0: f64 },
    /// Bilinear interpolation on a table indexed by `x` and `|y|`, clamped
    /// outside the tabulated box.
    Tabulated(Table),
    /// Arbitrary closure, for programmatic use.
    Custom {
        label: String,
        func: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// `values[i][j] = f(x[i], y[j])`.
    pub values: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(x: Vec<f64>, y: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self> {
        let increasing = |v: &[f64]| v.len() >= 2 && v.windows(2).all(|w| w[0] < w[1]);
        if !increasing(&x) || !increasing(&y) {
            return Err(NehariError::InvalidProblem(
                "tabulated nonlinearity needs at least two strictly increasing x and y nodes".into(),
            ));
        }
        if y[0] < 0.0 {
            return Err(NehariError::InvalidProblem(
                "tabulated y nodes index |y| and must be nonnegative".into(),
            ));
        }
        if values.len() != x.len() || values.iter().any(|row| row.len() != y.len()) {
            return Err(NehariError::InvalidProblem(format!(
                "tabulated values must be a {} x {} array",
                x.len(),
                y.len()
            )));
        }
        if values.iter().flatten().any(|v| !v.is_finite()) {
            return Err(NehariError::NonFinite("tabulated values"));
        }
        Ok(Table { x, y, values })
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        let (i, wx) = locate(&self.x, x);
        let (j, wy) = locate(&self.y, y.abs());
        let v = &self.values;
        let lo = v[i][j] * (1.0 - wy) + v[i][j + 1] * wy;
        let hi = v[i + 1][j] * (1.0 - wy) + v[i + 1][j + 1] * wy;
        lo * (1.0 - wx) + hi * wx
    }
}

fn locate(nodes: &[f64], x: f64) -> (usize, f64) {
    let last = nodes.len() - 1;
    if x <= nodes[0] {
        return (0, 0.0);
    }
    if x >= nodes[last] {
        return (last - 1, 1.0);
    }
    let k = nodes.partition_point(|&a| a <= x) - 1;
    (k, (x - nodes[k]) / (nodes[k + 1] - nodes[k]))
}

impl Nonlinearity {
    /// `x^p (1 + 1/(1 + |y|))`, the model right-hand side for the p-Laplacian problem.
    pub fn model_plaplacian(p: f64) -> Self {
        Nonlinearity::PowerRational {
            coeff: 1.0,
            exponent: p,
            base: 1.0,
            rational: 1.0,
        }
    }

    /// `coeff * x^exponent`, independent of `y`.
    pub fn power(coeff: f64, exponent: f64) -> Self {
        Nonlinearity::PowerRational {
            coeff,
            exponent,
            base: 1.0,
            rational: 0.0,
        }
    }

    pub fn constant(c: f64) -> Self {
        Nonlinearity::Quadratic {
            a2: 0.0,
            a1: 0.0,
            a0: c,
        }
    }

    pub fn custom(label: impl Into<String>, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Nonlinearity::Custom {
            label: label.into(),
            func: Arc::new(f),
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Nonlinearity::PowerRational {
                coeff,
                exponent,
                base,
                rational,
            } => coeff * x_power(x, *exponent) * (base + rational / (1.0 + y.abs())),
            Nonlinearity::Quadratic { a2, a1, a0 } => (a2 * x + a1) * x + a0,
            Nonlinearity::Tabulated(t) => t.eval(x, y),
            Nonlinearity::Custom { func, .. } => func(x, y),
        }
    }

    /// `f_0(x) = f(x, 0)`.
    pub fn f_zero(&self, x: f64) -> f64 {
        self.eval(x, 0.0)
    }

    /// `f_∞(x) = lim_{y→∞} f(x, y)`; exact for the closed forms, `f(x, Y_BIG)` otherwise.
    pub fn f_infinity(&self, x: f64) -> f64 {
        match self {
            Nonlinearity::PowerRational {
                coeff, exponent, base, ..
            } => coeff * x_power(x, *exponent) * base,
            Nonlinearity::Quadratic { .. } => self.eval(x, 0.0),
            _ => self.eval(x, Y_BIG),
        }
    }

    /// True when `f` does not depend on `y`.
    pub fn is_y_independent(&self) -> bool {
        match self {
            Nonlinearity::PowerRational { rational, .. } => *rational == 0.0,
            Nonlinearity::Quadratic { .. } => true,
            Nonlinearity::Tabulated(t) => t.values.iter().all(|row| row.iter().all(|v| *v == row[0])),
            Nonlinearity::Custom { .. } => false,
        }
    }
}

fn x_power(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else {
        signed_power(x, e)
    }
}

impl fmt::Debug for Nonlinearity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nonlinearity::PowerRational {
                coeff,
                exponent,
                base,
                rational,
            } => write!(f, "PowerRational({coeff} x^{exponent} ({base} + {rational}/(1+|y|)))"),
            Nonlinearity::Quadratic { a2, a1, a0 } => write!(f, "Quadratic({a2} x² + {a1} x + {a0})"),
            Nonlinearity::Tabulated(t) => write!(f, "Tabulated({}x{})", t.x.len(), t.y.len()),
            Nonlinearity::Custom { label, .. } => write!(f, "Custom({label})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_limits() {
        let f = Nonlinearity::model_plaplacian(2.0);
        assert_eq!(f.eval(1.0, 0.0), 2.0);
        assert_eq!(f.f_zero(0.1), 0.1 * 0.1 * 2.0);
        assert_eq!(f.f_infinity(56.25), 56.25 * 56.25);
        assert_eq!(f.eval(3.0, 2.0), f.eval(3.0, -2.0));
        assert!(!f.is_y_independent());
        assert!(Nonlinearity::power(1.0, 2.0).is_y_independent());
    }

    #[test]
    fn quadratic_and_constant() {
        let f = Nonlinearity::Quadratic {
            a2: 1e-2,
            a1: 2.5e-3,
            a0: 1.0,
        };
        assert!((f.eval(10.0, 5.0) - (1.0 + 0.025 + 1.0)).abs() < 1e-15);
        assert_eq!(Nonlinearity::constant(3.0).eval(7.0, 1.0), 3.0);
        assert_eq!(Nonlinearity::power(1.0, 0.0).eval(0.0, 0.0), 1.0);
    }

    #[test]
    fn tabulated_interpolates_and_clamps() {
        let t = Table::new(
            vec![0.0, 1.0, 2.0],
            vec![0.0, 1.0],
            vec![vec![0.0, 0.0], vec![2.0, 1.0], vec![8.0, 4.0]],
        )
        .unwrap();
        let f = Nonlinearity::Tabulated(t);
        assert_eq!(f.eval(1.0, 0.0), 2.0);
        assert_eq!(f.eval(1.5, 0.5), 0.5 * (1.5 + 6.0));
        assert_eq!(f.eval(1.0, -0.5), f.eval(1.0, 0.5));
        assert_eq!(f.f_infinity(2.0), 4.0);
        assert_eq!(f.eval(5.0, 0.0), 8.0);
        assert!(Table::new(vec![0.0, 0.0], vec![0.0, 1.0], vec![vec![0.0; 2]; 2]).is_err());
        assert!(Table::new(vec![0.0, 1.0], vec![0.0, 1.0], vec![vec![0.0; 3]; 2]).is_err());
    }
}
