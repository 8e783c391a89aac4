//! Uniform grids on `[0, 1]` and the real functions sampled on them.
//!
//! Every integral over `[0, 1]` in this crate goes through composite Simpson
//! on an odd number of nodes. Partial integrals use the same panels, with a
//! third-order start rule on the first interval for odd prefixes so that every
//! prefix integral is exact on quadratics.

use serde::{Deserialize, Serialize};

use crate::error::{NehariError, Result};

/// Uniform grid `t_i = i h`, `h = 1 / (n - 1)`, with an odd node count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    n: usize,
}

impl Grid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(NehariError::InvalidGrid(n));
        }
        Ok(Grid { n })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; a grid has at least three nodes.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        1.0 / (self.n - 1) as f64
    }

    /// Index of the node `t = 1/2`.
    #[inline]
    pub fn mid(&self) -> usize {
        (self.n - 1) / 2
    }

    #[inline]
    pub fn node(&self, i: usize) -> f64 {
        if i == self.n - 1 {
            1.0
        } else {
            i as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.node(i)).collect()
    }
}

/// Build the uniform grid with `n` nodes.
pub fn make_uniform_grid(n: usize) -> Result<Grid> {
    Grid::new(n)
}

/// Values of a real function at the nodes of a [`Grid`], optionally carrying
/// exact nodal derivative values.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
    derivative: Option<Vec<f64>>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        check_values(&grid, &values, "function values")?;
        Ok(GridFunction {
            grid,
            values,
            derivative: None,
        })
    }

    pub fn with_derivative(grid: Grid, values: Vec<f64>, derivative: Vec<f64>) -> Result<Self> {
        check_values(&grid, &values, "function values")?;
        check_values(&grid, &derivative, "derivative values")?;
        Ok(GridFunction {
            grid,
            values,
            derivative: Some(derivative),
        })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.nodes().into_iter().map(f).collect())
    }

    pub fn from_fn_with_derivative(grid: Grid, f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64) -> Result<Self> {
        let nodes = grid.nodes();
        Self::with_derivative(
            grid,
            nodes.iter().map(|&t| f(t)).collect(),
            nodes.iter().map(|&t| df(t)).collect(),
        )
    }

    pub fn constant(grid: Grid, c: f64) -> Result<Self> {
        Self::from_fn_with_derivative(grid, |_| c, |_| 0.0)
    }

    pub fn zeros(grid: Grid) -> Self {
        GridFunction {
            grid,
            values: vec![0.0; grid.len()],
            derivative: Some(vec![0.0; grid.len()]),
        }
    }

    #[inline]
    pub fn grid(&self) -> Grid {
        self.grid
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Stored exact derivative values, if this function carries them.
    #[inline]
    pub fn stored_derivative(&self) -> Option<&[f64]> {
        self.derivative.as_deref()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Drop stored derivative values, forcing finite differences downstream.
    pub fn without_derivative(&self) -> GridFunction {
        GridFunction {
            grid: self.grid,
            values: self.values.clone(),
            derivative: None,
        }
    }

    pub fn scale(&self, c: f64) -> GridFunction {
        GridFunction {
            grid: self.grid,
            values: self.values.iter().map(|v| c * v).collect(),
            derivative: self.derivative.as_ref().map(|d| d.iter().map(|v| c * v).collect()),
        }
    }

    /// `a * self + b * other`; derivatives are kept only when both operands carry them.
    pub fn combine(&self, a: f64, other: &GridFunction, b: f64) -> Result<GridFunction> {
        same_grid(self, other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| a * x + b * y)
            .collect();
        let derivative = match (&self.derivative, &other.derivative) {
            (Some(dx), Some(dy)) => Some(dx.iter().zip(dy).map(|(x, y)| a * x + b * y).collect()),
            _ => None,
        };
        Ok(GridFunction {
            grid: self.grid,
            values,
            derivative,
        })
    }

    pub fn sub(&self, other: &GridFunction) -> Result<GridFunction> {
        self.combine(1.0, other, -1.0)
    }

    /// Pointwise product of values; derivative is not carried.
    pub fn mul(&self, other: &GridFunction) -> Result<GridFunction> {
        same_grid(self, other)?;
        Ok(GridFunction {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(x, y)| x * y).collect(),
            derivative: None,
        })
    }

    /// Apply `f` to every value; derivative is not carried.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> GridFunction {
        GridFunction {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
            derivative: None,
        }
    }

    pub fn sup(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

fn check_values(grid: &Grid, values: &[f64], what: &'static str) -> Result<()> {
    if values.len() != grid.len() {
        return Err(NehariError::GridMismatch(grid.len(), values.len()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(NehariError::NonFinite(what));
    }
    Ok(())
}

pub(crate) fn same_grid(a: &GridFunction, b: &GridFunction) -> Result<()> {
    if a.grid != b.grid {
        return Err(NehariError::GridMismatch(a.grid.len(), b.grid.len()));
    }
    Ok(())
}

/// Composite Simpson over an odd-length slice of equally spaced samples.
pub(crate) fn simpson(values: &[f64], h: f64) -> f64 {
    debug_assert!(values.len() % 2 == 1);
    if values.len() < 3 {
        return 0.0;
    }
    let last = values.len() - 1;
    let mut odd = 0.0;
    let mut even = 0.0;
    for (i, v) in values.iter().enumerate().take(last).skip(1) {
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (values[0] + 4.0 * odd + 2.0 * even + values[last])
}

/// Integral over the first interval from three samples, exact on quadratics.
#[inline]
fn start_interval(f0: f64, f1: f64, f2: f64, h: f64) -> f64 {
    h / 12.0 * (5.0 * f0 + 8.0 * f1 - f2)
}

/// Integral from sample 0 to sample `end`, using the same rule as
/// [`cumulative`] so that prefix integrals agree with it to rounding.
pub(crate) fn prefix_integral(values: &[f64], end: usize, h: f64) -> f64 {
    match end {
        0 => 0.0,
        1 if values.len() < 3 => 0.5 * h * (values[0] + values[1]),
        _ if end.is_multiple_of(2) => simpson(&values[..=end], h),
        _ => start_interval(values[0], values[1], values[2], h) + simpson(&values[1..=end], h),
    }
}

/// Running integral `C[i] = ∫ from sample 0 to sample i`.
///
/// Even prefixes are plain composite Simpson; odd prefixes start with a
/// quadratic rule on the first interval and continue with Simpson panels.
pub fn cumulative(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    out[1] = if n >= 3 {
        start_interval(values[0], values[1], values[2], h)
    } else {
        0.5 * h * (values[0] + values[1])
    };
    for i in 2..n {
        out[i] = out[i - 2] + h / 3.0 * (values[i - 2] + 4.0 * values[i - 1] + values[i]);
    }
    out
}

/// Composite Simpson approximation of `∫_0^1 f`.
pub fn integrate(f: &GridFunction) -> f64 {
    simpson(f.values(), f.grid.spacing())
}

/// `∫_0^1 f g` by composite Simpson.
pub fn inner_product(f: &GridFunction, g: &GridFunction) -> Result<f64> {
    same_grid(f, g)?;
    let prod: Vec<f64> = f.values.iter().zip(&g.values).map(|(a, b)| a * b).collect();
    Ok(simpson(&prod, f.grid.spacing()))
}

/// Nodal derivative: the stored one when present, otherwise central
/// differences inside and second-order one-sided differences at the ends.
pub fn derivative(f: &GridFunction) -> GridFunction {
    let grid = f.grid;
    if let Some(d) = &f.derivative {
        return GridFunction {
            grid,
            values: d.clone(),
            derivative: None,
        };
    }
    GridFunction {
        grid,
        values: finite_difference(&f.values, grid.spacing()),
        derivative: None,
    }
}

pub(crate) fn finite_difference(v: &[f64], h: f64) -> Vec<f64> {
    let n = v.len();
    let mut d = vec![0.0; n];
    for i in 1..n - 1 {
        d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    }
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    d
}

/// Norms used on the two function spaces of the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "p")]
pub enum NormKind {
    Sup,
    Lp(f64),
    /// `|u|_{1,p}`: the `L^p` norm of the derivative.
    W1p(f64),
    L2,
}

pub fn norm(f: &GridFunction, kind: NormKind) -> Result<f64> {
    match kind {
        NormKind::Sup => Ok(f.sup()),
        NormKind::L2 => lp_norm(f.values(), 2.0, f.grid.spacing()),
        NormKind::Lp(p) => lp_norm(f.values(), p, f.grid.spacing()),
        NormKind::W1p(p) => {
            let d = derivative(f);
            lp_norm(d.values(), p, f.grid.spacing())
        }
    }
}

fn lp_norm(values: &[f64], p: f64, h: f64) -> Result<f64> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(NehariError::InvalidExponent(p));
    }
    let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Ok(0.0);
    }
    // Scaling by the sup keeps |v|^p in range for large p.
    let powered: Vec<f64> = values.iter().map(|v| (v.abs() / scale).powf(p)).collect();
    Ok(scale * simpson(&powered, h).max(0.0).powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn grid_rules() {
        let g = make_uniform_grid(3).unwrap();
        assert_eq!(g.nodes(), vec![0.0, 0.5, 1.0]);
        assert_eq!(make_uniform_grid(5).unwrap().spacing(), 0.25);
        assert_eq!(make_uniform_grid(4), Err(NehariError::InvalidGrid(4)));
        assert_eq!(make_uniform_grid(1), Err(NehariError::InvalidGrid(1)));
        let g = make_uniform_grid(1025).unwrap();
        assert_eq!(g.node(0), 0.0);
        assert_eq!(g.node(1024), 1.0);
        assert_eq!(g.node(g.mid()), 0.5);
    }

    #[test]
    fn simpson_exact_cases() {
        let g = make_uniform_grid(5).unwrap();
        let f = GridFunction::from_fn(g, |t| t * t).unwrap();
        assert_abs_diff_eq!(integrate(&f), 1.0 / 3.0, epsilon = 1e-15);
        let c = GridFunction::constant(g, 2.5).unwrap();
        assert_abs_diff_eq!(integrate(&c), 2.5, epsilon = 1e-15);
        let g = make_uniform_grid(1025).unwrap();
        let k = GridFunction::from_fn(g, |t| t * (1.0 - t) / 2.0).unwrap();
        assert_abs_diff_eq!(integrate(&k), 1.0 / 12.0, epsilon = 1e-15);
        let cubic = GridFunction::from_fn(g, |t| 4.0 * t * t * t - t).unwrap();
        assert_abs_diff_eq!(integrate(&cubic), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn cumulative_matches_prefix_and_is_exact_on_quadratics() {
        let g = make_uniform_grid(9).unwrap();
        let h = g.spacing();
        let v: Vec<f64> = g.nodes().iter().map(|t| 3.0 * t * t - t + 1.0).collect();
        let c = cumulative(&v, h);
        for (i, ci) in c.iter().enumerate() {
            let t = g.node(i);
            assert_abs_diff_eq!(*ci, t * t * t - t * t / 2.0 + t, epsilon = 1e-15);
            assert_abs_diff_eq!(*ci, prefix_integral(&v, i, h), epsilon = 1e-15);
        }
        assert_eq!(cumulative(&[1.0, 3.0], 0.5), vec![0.0, 1.0]);
    }

    #[test]
    fn derivative_cases() {
        let g = make_uniform_grid(11).unwrap();
        let f = GridFunction::from_fn(g, |t| t * t).unwrap();
        for (d, t) in derivative(&f).values().iter().zip(g.nodes()) {
            assert_abs_diff_eq!(*d, 2.0 * t, epsilon = 1e-12);
        }
        let c = GridFunction::new(g, vec![4.0; 11]).unwrap();
        assert!(derivative(&c).values().iter().all(|d| d.abs() < 1e-12));
        let k = GridFunction::from_fn(g, |t| t * (1.0 - t) / 2.0).unwrap();
        for (d, t) in derivative(&k).values().iter().zip(g.nodes()) {
            assert_abs_diff_eq!(*d, (1.0 - 2.0 * t) / 2.0, epsilon = 1e-12);
        }
        let stored = GridFunction::from_fn_with_derivative(g, |t| t, |_| 7.0).unwrap();
        assert!(derivative(&stored).values().iter().all(|&d| d == 7.0));
    }

    #[test]
    fn norm_cases() {
        let g = make_uniform_grid(1025).unwrap();
        let f = GridFunction::from_fn(g, |t| t * (1.0 - t)).unwrap();
        assert_abs_diff_eq!(norm(&f, NormKind::Sup).unwrap(), 0.25, epsilon = 1e-15);
        let k = f.scale(0.5);
        assert_abs_diff_eq!(
            norm(&k, NormKind::W1p(2.0)).unwrap(),
            1.0 / 12f64.sqrt(),
            epsilon = 1e-12
        );
        let one = GridFunction::constant(g, 1.0).unwrap();
        assert_abs_diff_eq!(norm(&one, NormKind::Lp(2.0)).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(norm(&one, NormKind::L2).unwrap(), 1.0, epsilon = 1e-14);
        assert_eq!(norm(&one, NormKind::Lp(1.0)), Err(NehariError::InvalidExponent(1.0)));
        assert_eq!(norm(&one, NormKind::W1p(0.5)), Err(NehariError::InvalidExponent(0.5)));
    }

    #[test]
    fn rejects_bad_values() {
        let g = make_uniform_grid(3).unwrap();
        assert!(GridFunction::new(g, vec![0.0, 1.0]).is_err());
        assert!(GridFunction::new(g, vec![0.0, f64::NAN, 1.0]).is_err());
        let h = make_uniform_grid(5).unwrap();
        let a = GridFunction::zeros(g);
        let b = GridFunction::zeros(h);
        assert_eq!(a.sub(&b), Err(NehariError::GridMismatch(3, 5)));
    }

    #[test]
    fn richardson_ratio_is_fourth_order() {
        let f = |t: f64| t.powi(5) + 1.0 / (1.0 + t);
        let exact = 1.0 / 6.0 + 2f64.ln();
        let err = |n: usize| {
            let g = make_uniform_grid(n).unwrap();
            (integrate(&GridFunction::from_fn(g, f).unwrap()) - exact).abs()
        };
        let ratio = err(33) / err(65);
        assert!((ratio - 16.0).abs() < 0.5, "ratio {ratio}");
    }
}
