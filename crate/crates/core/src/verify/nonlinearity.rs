use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cones::sample_rng;
use crate::error::{NehariError, Result};
use crate::operators::{phi_weight, Nonlinearity};
use crate::verify::{compute_Phi, estimate_cp, le_tie, HypothesisReport, TIE};

/// Sampled monotonicity and evenness of `f` on `[0, x_max] × [-y_max, y_max]`:
/// `f(·, y)` nondecreasing, `f(x, ·)` nonincreasing on `y ≥ 0`, `f(x, y) = f(x, -y)`,
/// and `f ≥ 0`.
#[allow(non_snake_case)]
pub fn check_H1(f: &Nonlinearity, x_max: f64, y_max: f64, samples: usize, seed: u64) -> HypothesisReport {
    let mut rep = HypothesisReport::new("H1", samples, Some(seed));
    if !(x_max > 0.0 && y_max > 0.0) {
        rep.fail(format!("sampling box must be positive, got ({x_max}, {y_max})"));
        return rep;
    }
    let mut worst_x = f64::INFINITY;
    let mut worst_y = f64::INFINITY;
    let mut worst_even = 0.0_f64;
    let mut min_value = f64::INFINITY;
    for i in 0..samples {
        let mut rng = sample_rng(seed, i);
        let mut x1 = rng.random_range(0.0..=x_max);
        let mut x2 = rng.random_range(0.0..=x_max);
        if x1 > x2 {
            std::mem::swap(&mut x1, &mut x2);
        }
        let y = rng.random_range(-y_max..=y_max);
        let mut y1 = rng.random_range(0.0..=y_max);
        let mut y2 = rng.random_range(0.0..=y_max);
        if y1 > y2 {
            std::mem::swap(&mut y1, &mut y2);
        }
        let x = rng.random_range(0.0..=x_max);

        let (a, b) = (f.eval(x1, y), f.eval(x2, y));
        worst_x = worst_x.min(b - a);
        if rep.holds() && !le_tie(a, b) {
            rep.fail(format!("f(·, y) decreases: f({x1}, {y}) = {a} > f({x2}, {y}) = {b}"));
            rep.witness("x1", x1).witness("x2", x2).witness("y", y);
        }
        let (c, d) = (f.eval(x, y1), f.eval(x, y2));
        worst_y = worst_y.min(c - d);
        if rep.holds() && !le_tie(d, c) {
            rep.fail(format!(
                "f(x, ·) increases on y ≥ 0: f({x}, {y1}) = {c} < f({x}, {y2}) = {d}"
            ));
            rep.witness("x", x).witness("y1", y1).witness("y2", y2);
        }
        let (e, g) = (f.eval(x, y), f.eval(x, -y));
        let gap = (e - g).abs();
        worst_even = worst_even.max(gap);
        if rep.holds() && gap > TIE * e.abs().max(g.abs()).max(1.0) {
            rep.fail(format!("not even in y: f({x}, {y}) = {e} but f({x}, {}) = {g}", -y));
            rep.witness("x", x).witness("y", y).witness("even_gap", gap);
        }
        min_value = min_value.min(e).min(g);
        if rep.holds() && e.min(g) < 0.0 {
            rep.fail(format!("negative value f({x}, ±{y}) = {}", e.min(g)));
            rep.witness("x", x).witness("y", y);
        }
    }
    rep.witness("min_x_increment", worst_x)
        .witness("min_y_decrement", worst_y)
        .witness("max_evenness_gap", worst_even)
        .witness("min_value", min_value);
    rep.sampled();
    rep
}

/// Which pair of endpoint inequalities to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum H2Mode {
    /// Potential positive at `r`, negative at `R`: the energy has an interior maximum.
    #[default]
    Standard,
    /// Potential negative at `r`, positive at `R`: an interior minimum.
    Reversed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct H2Input {
    pub p: f64,
    pub r: f64,
    pub big_r: f64,
    pub beta: f64,
    pub mode: H2Mode,
    /// Grid used to estimate `c_p`.
    pub n: usize,
}

/// Endpoint growth conditions on `f_0` and `f_∞`.
///
/// Standard: `f_0(r) < r^{p-1}/c_p` and `f_∞(Rφ(β)) > R^{p-1}/(2Φ)`.
/// Reversed: `f_∞(rφ(β))/(rφ(β))^{p-1} > 1/(2Φφ(β)^{p-1})` and `f_0(R)/R^{p-1} < 1/c_p`.
/// Both modes also check on a grid that `f_∞` is nondecreasing where the
/// bound at the larger radius uses it.
#[allow(non_snake_case)]
pub fn check_H2(f: &Nonlinearity, input: &H2Input) -> Result<HypothesisReport> {
    let H2Input {
        p,
        r,
        big_r,
        beta,
        mode,
        n,
    } = *input;
    if !(r > 0.0 && r < big_r && big_r.is_finite()) {
        return Err(NehariError::InvalidProblem(format!(
            "growth check needs 0 < r < R < ∞, got r = {r}, R = {big_r}"
        )));
    }
    let cp = estimate_cp(p, n)?.value;
    let phi_beta = phi_weight(beta, p)?;
    let big_phi = compute_Phi(beta, p)?;
    let mut rep = HypothesisReport::new("H2", 0, None);
    rep.witness("c_p", cp)
        .witness("phi_beta", phi_beta)
        .witness("Phi", big_phi);

    let (lower_lhs, lower_rhs, upper_lhs, upper_rhs, mono_from, mono_to) = match mode {
        H2Mode::Standard => {
            let x = big_r * phi_beta;
            (
                f.f_zero(r),
                r.powf(p - 1.0) / cp,
                f.f_infinity(x),
                big_r.powf(p - 1.0) / (2.0 * big_phi),
                x,
                big_r,
            )
        }
        H2Mode::Reversed => {
            let x = r * phi_beta;
            (
                f.f_zero(big_r) / big_r.powf(p - 1.0),
                1.0 / cp,
                f.f_infinity(x) / x.powf(p - 1.0),
                1.0 / (2.0 * big_phi * phi_beta.powf(p - 1.0)),
                x,
                r,
            )
        }
    };
    rep.witness("small_side_value", lower_lhs)
        .witness("small_side_bound", lower_rhs)
        .witness("small_side_margin", lower_rhs - lower_lhs)
        .witness("large_side_value", upper_lhs)
        .witness("large_side_bound", upper_rhs)
        .witness("large_side_margin", upper_lhs - upper_rhs);
    if !(lower_lhs < lower_rhs) {
        rep.fail(format!("f_0 bound fails: {lower_lhs} ≥ {lower_rhs}"));
    }
    if !(upper_lhs > upper_rhs) {
        rep.fail(format!("f_∞ bound fails: {upper_lhs} ≤ {upper_rhs}"));
    }

    let m = 200;
    let mut prev = f.f_infinity(mono_from);
    let mut worst = f64::INFINITY;
    for k in 1..=m {
        let x = mono_from + (mono_to - mono_from) * k as f64 / m as f64;
        let cur = f.f_infinity(x);
        worst = worst.min(cur - prev);
        if rep.holds() && !le_tie(prev, cur) {
            rep.fail(format!("f_∞ decreases near x = {x}"));
            rep.witness("f_inf_drop_at", x);
        }
        prev = cur;
    }
    rep.witness("f_inf_min_increment", worst);
    Ok(rep)
}

/// Sampled strict increase of `t ↦ f(tx, ty)/t^{p-1}` on `(0, R]`, for
/// `x ∈ (0, 1]`, `|y| ≤ 4` and 64 log-spaced `t` in `[10⁻⁶R, R]`.
#[allow(non_snake_case)]
pub fn check_H3(f: &Nonlinearity, p: f64, big_r: f64, samples: usize, seed: u64) -> HypothesisReport {
    let mut rep = HypothesisReport::new("H3", samples, Some(seed));
    if !(big_r > 0.0 && big_r.is_finite()) || !(p > 1.0) {
        rep.fail(format!("needs finite R > 0 and p > 1, got R = {big_r}, p = {p}"));
        return rep;
    }
    let steps = 64;
    let ts: Vec<f64> = (0..steps)
        .map(|k| big_r * 10f64.powf(-6.0 + 6.0 * k as f64 / (steps - 1) as f64))
        .collect();
    let mut worst = f64::INFINITY;
    for i in 0..samples {
        let mut rng = sample_rng(seed, i);
        let x = rng.random_range(f64::MIN_POSITIVE..=1.0);
        let y = rng.random_range(-4.0..=4.0);
        let ratio = |t: f64| f.eval(t * x, t * y) / t.powf(p - 1.0);
        let mut prev = ratio(ts[0]);
        for &t in &ts[1..] {
            let cur = ratio(t);
            let inc = cur - prev;
            let scaled = inc / cur.abs().max(prev.abs()).max(f64::MIN_POSITIVE);
            worst = worst.min(scaled);
            if rep.holds() && !(inc > TIE * cur.abs().max(prev.abs())) {
                rep.fail(format!(
                    "ratio not strictly increasing at x = {x}, y = {y}, t = {t}: {prev} → {cur}"
                ));
                rep.witness("x", x).witness("y", y).witness("t", t);
            }
            prev = cur;
        }
    }
    rep.witness("min_relative_increment", worst);
    rep.sampled();
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_nonlinearity_passes() {
        let f = Nonlinearity::model_plaplacian(2.0);
        assert!(check_H1(&f, 300.0, 300.0, 200, 1).holds());
        assert!(check_H3(&f, 2.0, 300.0, 200, 1).holds());
    }

    #[test]
    fn counterexamples_fail() {
        let f = Nonlinearity::custom("x - y", |x, y| x - y);
        let rep = check_H1(&f, 10.0, 10.0, 200, 1);
        assert!(!rep.holds());
        assert!(rep.detail.contains("even"), "{}", rep.detail);
        assert!(check_H1(&Nonlinearity::constant(2.0), 1.0, 1.0, 50, 3).holds());
        let flat = Nonlinearity::power(1.0, 1.0);
        assert!(!check_H3(&flat, 2.0, 10.0, 20, 1).holds());
        assert!(check_H3(&Nonlinearity::power(1.0, 3.0), 3.0, 10.0, 20, 1).holds());
    }
}
