//! Direct evaluation of `Z_f(w, s) = Γ(w)^{-1} ∫_0^∞ f(e^t) e^{-st} t^{w-1} dt`.
//!
//! `f` is factored over `{u^k - 1}` so that near `t = 0`
//! `f(e^t) = A t^{-μ} exp(φ(t))` with `φ(0) = 0`, where `μ = -Σ e_k` and
//! `A = C Π k^{e_k} R(1)`. The leading term `A t^{w-1-μ}` is integrated
//! analytically on `(0, 1]`; the remainder and the range `[1, ∞)` go to
//! double-exponential quadrature, the latter on doubling intervals until an
//! exponential tail bound is negligible.

use num_complex::Complex64;
use quadrature::double_exponential::integrate;

use super::special::recip_gamma;
use super::NumericValue;
use crate::error::{Error, Result};
use crate::poly::{factor_unit_basis, Polynomial, RationalFunction};
use crate::rational;

const PIECE_TOLERANCE: f64 = 1e-13;
const MAX_BISECTIONS: u32 = 14;
const MAX_LOG2_T: i32 = 24;

/// `ln |p(e^t)|` and the sign of `p(e^t)` for `t ≥ 0`, evaluated as
/// `d t + ln |Σ c_i e^{-(d - i) t}|` to stay finite for large `t`.
struct ExpPoly {
    degree: f64,
    reversed: Vec<f64>,
}

impl ExpPoly {
    fn new(p: &Polynomial) -> Self {
        let coeffs: Vec<f64> = p.coeffs().iter().map(rational::to_f64).collect();
        Self {
            degree: coeffs.len().saturating_sub(1) as f64,
            reversed: coeffs.into_iter().rev().collect(),
        }
    }

    fn log_abs(&self, t: f64) -> (f64, f64) {
        let y = (-t).exp();
        let q = self.reversed.iter().rev().fold(0.0, |acc, &c| acc * y + c);
        (self.degree * t + q.abs().ln(), q.signum())
    }
}

/// `f(e^t) = A t^{-μ} · sign(t) · exp(φ(t))`.
struct Integrand {
    factors: Vec<(f64, f64)>,
    num: ExpPoly,
    den: ExpPoly,
    lead: f64,
    mu: f64,
    degree: f64,
    log_r1: f64,
    sign_r1: f64,
}

impl Integrand {
    fn new(f: &RationalFunction) -> Self {
        let kmax = f
            .numerator()
            .degree()
            .unwrap_or(0)
            .max(f.denominator().degree().unwrap_or(0))
            .max(1);
        let form = factor_unit_basis(f, kmax);
        let num = ExpPoly::new(&form.residual_numerator);
        let den = ExpPoly::new(&form.residual_denominator);
        let factors: Vec<(f64, f64)> = form
            .factors
            .iter()
            .map(|(&k, &e)| (k as f64, e as f64))
            .collect();
        let mu = -factors.iter().map(|&(_, e)| e).sum::<f64>();
        let degree = factors.iter().map(|&(k, e)| k * e).sum::<f64>() + num.degree - den.degree;
        let (ln_n, sn) = num.log_abs(0.0);
        let (ln_d, sd) = den.log_abs(0.0);
        let log_r1 = ln_n - ln_d;
        let sign_r1 = sn * sd;
        let lead = rational::to_f64(&form.constant)
            * factors.iter().map(|&(k, e)| k.powf(e)).product::<f64>()
            * sign_r1
            * log_r1.exp();
        Self {
            factors,
            num,
            den,
            lead,
            mu,
            degree,
            log_r1,
            sign_r1,
        }
    }

    /// `(φ(t), sign)` with `f(e^t) = A t^{-μ} sign e^{φ(t)}`.
    fn phi(&self, t: f64) -> (f64, f64) {
        let mut phi = 0.0;
        for &(k, e) in &self.factors {
            let x = k * t;
            let ratio = if x < 30.0 {
                (x.exp_m1() / x).ln()
            } else {
                x + (-(-x).exp()).ln_1p() - x.ln()
            };
            phi += e * ratio;
        }
        let (ln_n, sn) = self.num.log_abs(t);
        let (ln_d, sd) = self.den.log_abs(t);
        (phi + ln_n - ln_d - self.log_r1, sn * sd * self.sign_r1)
    }

    /// `f(e^t) e^{-st} t^{w-1}`.
    fn full(&self, t: f64, w: Complex64, s: Complex64) -> Complex64 {
        let (phi, sign) = self.phi(t);
        let expo = phi - s * t + (w - 1.0 - self.mu) * t.ln();
        self.lead * sign * expo.exp()
    }

    /// `f(e^t) e^{-st} t^{w-1} - A t^{w-1-μ}`.
    fn subtracted(&self, t: f64, w: Complex64, s: Complex64) -> Complex64 {
        let (phi, sign) = self.phi(t);
        let rho = phi - s * t;
        let bracket = if sign > 0.0 && rho.norm() < 1e-3 {
            rho * (1.0 + rho * (0.5 + rho * (1.0 / 6.0 + rho / 24.0)))
        } else {
            sign * rho.exp() - 1.0
        };
        self.lead * ((w - 1.0 - self.mu) * t.ln()).exp() * bracket
    }
}

/// Integrates a complex function on `[a, b]`, bisecting while the error
/// estimate exceeds the tolerance. Returns `(integral, error estimate)`.
fn integrate_complex<F>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> (Complex64, f64)
where
    F: Fn(f64) -> Complex64,
{
    let re = integrate(|t| f(t).re, a, b, tol);
    let im = integrate(|t| f(t).im, a, b, tol);
    let err = re.error_estimate + im.error_estimate;
    if err <= tol || depth >= MAX_BISECTIONS {
        return (Complex64::new(re.integral, im.integral), err);
    }
    let mid = 0.5 * (a + b);
    let (l, el) = integrate_complex(f, a, mid, tol / 2.0, depth + 1);
    let (r, er) = integrate_complex(f, mid, b, tol / 2.0, depth + 1);
    (l + r, el + er)
}

/// Order `μ` of the pole of `f(e^t)` at `t = 0` and the growth rate
/// `deg f` of `f(e^t)` as `t → ∞`.
pub fn mellin_exponents(f: &RationalFunction) -> (f64, f64) {
    let g = Integrand::new(f);
    (g.mu, g.degree)
}

/// `Z_f(w, s)` by quadrature with an absolute error estimate.
///
/// Requires `Re w > μ` for integrability at `0` and `Re s > deg f` for decay
/// at infinity.
pub fn mellin_z(f: &RationalFunction, w: Complex64, s: Complex64) -> Result<NumericValue> {
    if f.is_zero() {
        return Ok(NumericValue::exact(Complex64::new(0.0, 0.0)));
    }
    let g = Integrand::new(f);
    if w.re <= g.mu {
        return Err(Error::Convergence(format!(
            "Re w = {} must exceed the pole order {} at t = 0",
            w.re, g.mu
        )));
    }
    let rate = s.re - g.degree;
    if rate <= 0.0 {
        return Err(Error::Convergence(format!(
            "Re s = {} must exceed deg f = {}",
            s.re, g.degree
        )));
    }
    let head = g.lead / (w - g.mu);
    let (near, mut err) =
        integrate_complex(&|t| g.subtracted(t, w, s), 0.0, 1.0, PIECE_TOLERANCE, 0);
    let mut total = head + near;
    let mut lo = 1.0;
    let mut converged = false;
    for _ in 0..MAX_LOG2_T {
        let hi = 2.0 * lo;
        let (piece, e) = integrate_complex(&|t| g.full(t, w, s), lo, hi, PIECE_TOLERANCE, 0);
        total += piece;
        err += e;
        lo = hi;
        // |integrand| ≲ |g(T)| e^{-rate' (t - T)} beyond T once the power is dominated
        let slope = rate - (w.re - 1.0).max(0.0) / lo;
        if slope > 0.0 {
            let tail = g.full(lo, w, s).norm() / slope;
            if tail < PIECE_TOLERANCE * total.norm().max(1.0) {
                err += tail;
                converged = true;
                break;
            }
        }
    }
    if !converged || !total.is_finite() {
        return Err(Error::Convergence(format!(
            "integral did not settle by t = {lo}"
        )));
    }
    let scale = recip_gamma(w);
    Ok(NumericValue {
        value: total * scale,
        abs_err: err * scale.norm(),
    })
}
