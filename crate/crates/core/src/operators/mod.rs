//! Concrete operators: the weight `φ`, the duality map of `W^{1,p}_0` and its
//! inverse, the Nemytskii operator, the Green-kernel Hammerstein operator, the
//! dispatching `T`, and the three-slot functional `F`.

mod green;
mod nonlinearity;
mod plaplace;
mod problem;

pub use green::{green_apply, green_kernel, green_row, hammerstein};
pub use nonlinearity::{Nonlinearity, Table, Y_BIG};
pub use plaplace::{plaplace_inverse, symmetry_defect};
pub use problem::{Annulus, ExtremumMode, OperatorKind, ProblemSpec, Tolerances, DEFAULT_RADIUS_CAP};

use crate::error::{NehariError, Result};
use crate::funcspace::{derivative, inner_product, same_grid, simpson, GridFunction};

/// `φ(t) = ∫_0^t (1 - 2s)^{1/(p-1)} ds = (p-1)/(2p) · (1 - (1 - 2t)^{p/(p-1)})`.
pub fn phi_weight(t: f64, p: f64) -> Result<f64> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(NehariError::InvalidExponent(p));
    }
    if !(0.0..=0.5).contains(&t) {
        return Err(NehariError::Domain {
            name: "t",
            value: t,
            domain: "[0, 1/2]",
        });
    }
    Ok((p - 1.0) / (2.0 * p) * (1.0 - (1.0 - 2.0 * t).powf(p / (p - 1.0))))
}

/// `sgn(x) |x|^alpha`.
#[inline]
pub fn signed_power(x: f64, alpha: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else if alpha == 1.0 {
        x
    } else {
        x.signum() * x.abs().powf(alpha)
    }
}

/// Pointwise `f(u(t), du(t))`.
pub fn nemytskii(f: &Nonlinearity, u: &GridFunction, du: &GridFunction) -> Result<GridFunction> {
    same_grid(u, du)?;
    let values = u
        .values()
        .iter()
        .zip(du.values())
        .map(|(&x, &y)| f.eval(x, y))
        .collect();
    GridFunction::new(u.grid(), values)
}

/// The fixed-point operator of the problem.
#[allow(non_snake_case)]
pub fn apply_T(prob: &ProblemSpec, u: &GridFunction) -> Result<GridFunction> {
    if u.grid() != prob.grid {
        return Err(NehariError::GridMismatch(prob.grid.len(), u.grid().len()));
    }
    match prob.operator {
        OperatorKind::PlaplacianBvp { p, .. } => {
            let du = derivative(u);
            let h = nemytskii(&prob.nonlinearity, u, &du)?;
            plaplace_inverse(&h, p, prob.tolerances.symmetry)
        }
        OperatorKind::HammersteinKernel => hammerstein(&prob.nonlinearity, u),
    }
}

/// `⟨J u, w⟩ = ∫_0^1 |u'|^{p-2} u' w'`.
pub fn duality_pairing(u: &GridFunction, w: &GridFunction, p: f64) -> Result<f64> {
    same_grid(u, w)?;
    if !(p > 1.0) || !p.is_finite() {
        return Err(NehariError::InvalidExponent(p));
    }
    let du = derivative(u);
    let dw = derivative(w);
    let integrand: Vec<f64> = du
        .values()
        .iter()
        .zip(dw.values())
        .map(|(a, b)| signed_power(*a, p - 1.0) * b)
        .collect();
    Ok(simpson(&integrand, u.grid().spacing()))
}

/// `F(u, v, w)`: `⟨Jv - Ju, w⟩` for the p-Laplacian, `∫vw - ∫uw` for the kernel problem.
#[allow(non_snake_case)]
pub fn F_eval(prob: &ProblemSpec, u: &GridFunction, v: &GridFunction, w: &GridFunction) -> Result<f64> {
    match prob.operator {
        OperatorKind::PlaplacianBvp { p, .. } => Ok(duality_pairing(v, w, p)? - duality_pairing(u, w, p)?),
        OperatorKind::HammersteinKernel => Ok(inner_product(v, w)? - inner_product(u, w)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::{integrate, make_uniform_grid, norm, NormKind};

    /// Direct composite-Simpson quadrature of the defining integral of φ.
    fn phi_by_quadrature(t: f64, p: f64) -> f64 {
        let m = 20_000;
        let h = t / m as f64;
        let vals: Vec<f64> = (0..=m)
            .map(|i| (1.0 - 2.0 * (i as f64 * h)).max(0.0).powf(1.0 / (p - 1.0)))
            .collect();
        simpson(&vals, h)
    }

    #[test]
    fn phi_closed_form_matches_quadrature() {
        for &p in &[1.5, 2.0, 3.0, 4.5] {
            for &t in &[0.0, 0.1, 0.25, 0.4] {
                let diff = (phi_weight(t, p).unwrap() - phi_by_quadrature(t, p)).abs();
                assert!(diff < 1e-12, "p={p} t={t} diff={diff}");
            }
        }
        // (1 - 2s)^{1/(p-1)} has a root singularity at 1/2 for p = 3; Simpson
        // converges slower there.
        assert!((phi_weight(0.5, 3.0).unwrap() - phi_by_quadrature(0.5, 3.0)).abs() < 1e-6);
        assert!((phi_weight(0.5, 2.0).unwrap() - phi_by_quadrature(0.5, 2.0)).abs() < 1e-13);
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi_weight(0.0, 3.0).unwrap(), 0.0);
        assert!((phi_weight(0.5, 2.0).unwrap() - 0.25).abs() < 1e-15);
        assert!((phi_weight(0.25, 2.0).unwrap() - 3.0 / 16.0).abs() < 1e-15);
        assert!(phi_weight(0.6, 2.0).is_err());
        assert!(phi_weight(-0.1, 2.0).is_err());
    }

    #[test]
    fn signed_power_cases() {
        assert_eq!(signed_power(-3.0, 2.0), -9.0);
        assert_eq!(signed_power(0.0, 0.5), 0.0);
        for &x in &[-2.0, 0.0, 5.0] {
            for &a in &[0.5, 2.0, 3.0] {
                assert!((signed_power(signed_power(x, a), 1.0 / a) - x).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn nemytskii_cases() {
        let g = make_uniform_grid(9).unwrap();
        let f = Nonlinearity::model_plaplacian(2.0);
        let one = GridFunction::constant(g, 1.0).unwrap();
        let zero = GridFunction::zeros(g);
        let out = nemytskii(&f, &one, &zero).unwrap();
        assert!(out.values().iter().all(|v| *v == 2.0));
        let u = GridFunction::from_fn(g, |t| t * (1.0 - t)).unwrap();
        let du = derivative(&u);
        let a = nemytskii(&f, &u, &du).unwrap();
        let b = nemytskii(&f, &u, &du.scale(-1.0)).unwrap();
        assert_eq!(a.values(), b.values());
        let c = nemytskii(&Nonlinearity::constant(0.7), &u, &du).unwrap();
        assert!(c.values().iter().all(|v| *v == 0.7));
    }

    #[test]
    fn apply_t_branches() {
        let g = make_uniform_grid(257).unwrap();
        let k = ProblemSpec::kernel_example(257).unwrap();
        let out = apply_T(&k, &GridFunction::zeros(g)).unwrap();
        for (v, t) in out.values().iter().zip(g.nodes()) {
            assert!((v - t * (1.0 - t) / 2.0).abs() < 1e-15);
        }
        let mut p = ProblemSpec::plaplacian_example(257).unwrap();
        p.nonlinearity = Nonlinearity::constant(1.0);
        let u = GridFunction::from_fn(g, |t| (std::f64::consts::PI * t).sin()).unwrap();
        let out = apply_T(&p, &u).unwrap();
        for (v, t) in out.values().iter().zip(g.nodes()) {
            assert!((v - t * (1.0 - t) / 2.0).abs() < 1e-14);
        }
        p.nonlinearity = Nonlinearity::model_plaplacian(2.0);
        let skew = GridFunction::from_fn(g, |t| t * t * (1.0 - t)).unwrap();
        assert!(matches!(apply_T(&p, &skew), Err(NehariError::AsymmetricInput { .. })));
    }

    #[test]
    fn pairing_and_functional() {
        let g = make_uniform_grid(1025).unwrap();
        let u = GridFunction::from_fn(g, |t| t * (1.0 - t)).unwrap();
        let w1 = GridFunction::from_fn(g, |t| t.sin() * (1.0 - t)).unwrap();
        let w2 = GridFunction::from_fn(g, |t| t * t).unwrap();
        assert!((duality_pairing(&u, &u, 2.0).unwrap() - 1.0 / 3.0).abs() < 1e-14);
        let n = norm(&u, NormKind::W1p(3.0)).unwrap();
        assert!((duality_pairing(&u, &u, 3.0).unwrap() - n.powi(3)).abs() < 1e-13);
        assert_eq!(duality_pairing(&GridFunction::zeros(g), &w1, 2.5).unwrap(), 0.0);
        let mix = w1.combine(2.0, &w2, -3.0).unwrap();
        let lhs = duality_pairing(&u, &mix, 2.5).unwrap();
        let rhs = 2.0 * duality_pairing(&u, &w1, 2.5).unwrap() - 3.0 * duality_pairing(&u, &w2, 2.5).unwrap();
        assert!((lhs - rhs).abs() < 1e-13);

        let p = ProblemSpec::plaplacian_example(1025).unwrap();
        let k = ProblemSpec::kernel_example(1025).unwrap();
        assert_eq!(F_eval(&p, &u, &u, &w1).unwrap(), 0.0);
        assert_eq!(F_eval(&k, &u, &u, &w1).unwrap(), 0.0);
        let zero = GridFunction::zeros(g);
        assert!((F_eval(&p, &zero, &u, &u).unwrap() - 1.0 / 3.0).abs() < 1e-14);
        let l2 = integrate(&u.mul(&u).unwrap());
        assert!((F_eval(&k, &zero, &u, &u).unwrap() - l2).abs() < 1e-15);
    }
}
