//! Multiple Hurwitz zeta, multiple gamma and multiple sine functions for
//! positive integer periods.
//!
//! The lattice sum `Σ_{n ≥ 0} (n·ω + x)^{-w}` is regrouped by the value
//! `y = n·ω`: with `c(y)` the number of representations and `L = lcm(ω)`,
//! `k ↦ c(ρ + kL)` is a polynomial of degree below `r` for each residue `ρ`.
//! Re-expanding it in powers of `k + (x + ρ)/L` turns the sum into a finite
//! combination of Hurwitz zeta values.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::special::{hurwitz_error_scale, hurwitz_zeta, hurwitz_zeta_with_ds, log_real};
use super::NumericValue;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{self, Rational};

const ROUNDING: f64 = 16.0 * f64::EPSILON;

/// Counting polynomials `Q_ρ(k) = c(ρ + kL)` for one sorted period vector.
#[derive(Debug)]
pub struct QuasiPolynomial {
    pub period: u64,
    pub classes: Vec<Polynomial>,
}

impl QuasiPolynomial {
    fn build(omega: &[u64]) -> Self {
        let r = omega.len();
        let period = omega.iter().fold(1u64, |acc, &w| acc.lcm(&w));
        let top = period as usize * r;
        // coin-change counts c(0..top)
        let mut counts = vec![BigInt::zero(); top];
        counts[0] = BigInt::one();
        for &w in omega {
            let w = w as usize;
            for y in w..top {
                let prev = counts[y - w].clone();
                counts[y] += prev;
            }
        }
        let classes = (0..period as usize)
            .map(|rho| {
                let values: Vec<Rational> = (0..r)
                    .map(|k| Rational::from_integer(counts[rho + k * period as usize].clone()))
                    .collect();
                interpolate(&values)
            })
            .collect();
        Self { period, classes }
    }

    /// Number of representations of `y` as a non-negative combination.
    pub fn count(&self, y: u64) -> Rational {
        let rho = (y % self.period) as usize;
        let k = rational::int((y / self.period) as i64);
        self.classes[rho].eval(&k)
    }
}

/// Newton interpolation through `(k, values[k])`, `k = 0..len`.
fn interpolate(values: &[Rational]) -> Polynomial {
    let n = values.len();
    let mut diffs = values.to_vec();
    let mut result = Polynomial::zero();
    let mut basis = Polynomial::one();
    for j in 0..n {
        result = &result + &basis.scale(&diffs[j]);
        for i in (j + 1..n).rev() {
            diffs[i] = (&diffs[i] - &diffs[i - 1]) / rational::int(j as i64 + 1);
        }
        basis = &basis * &Polynomial::new(vec![rational::int(-(j as i64)), Rational::one()]);
    }
    result
}

fn quasi_polynomial(omega: &[u64]) -> Arc<QuasiPolynomial> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<u64>, Arc<QuasiPolynomial>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = omega.to_vec();
    if let Some(q) = cache.lock().expect("cache poisoned").get(&key) {
        return q.clone();
    }
    let q = Arc::new(QuasiPolynomial::build(omega));
    cache.lock().expect("cache poisoned").insert(key, q.clone());
    q
}

fn validate(omega: &[u64]) -> Result<Vec<u64>> {
    if omega.is_empty() || omega.contains(&0) {
        return Err(Error::Domain("periods must be positive integers".into()));
    }
    let mut sorted = omega.to_vec();
    sorted.sort_unstable();
    Ok(sorted)
}

fn order_zero_log(x: f64) -> Result<Complex64> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("x = {x}")));
    }
    Ok(log_real(x))
}

/// Hurwitz term `(γ, i, a)`.
type HurwitzTerm = (f64, usize, f64);

/// Period `L` and terms with `ζ_r(w, x, ω) = L^{-w} Σ γ ζ_H(w - i, a)`.
fn reduction(x: f64, omega: &[u64]) -> Result<(f64, Vec<HurwitzTerm>)> {
    let sorted = validate(omega)?;
    if !x.is_finite() {
        return Err(Error::Domain(format!("x = {x}")));
    }
    let q = quasi_polynomial(&sorted);
    let l = q.period as f64;
    let x_exact = Rational::from_float(x).expect("finite");
    let lr = rational::int(q.period as i64);
    let mut terms = Vec::new();
    for (rho, poly) in q.classes.iter().enumerate() {
        if poly.is_zero() {
            continue;
        }
        let a_exact = (&x_exact + rational::int(rho as i64)) / &lr;
        // Q(k) as a polynomial in z = k + a
        let shifted = poly.taylor_shift(&-&a_exact);
        let a = rational::to_f64(&a_exact);
        for (i, g) in shifted.coeffs().iter().enumerate() {
            if !g.is_zero() {
                terms.push((rational::to_f64(g), i, a));
            }
        }
    }
    Ok((l, terms))
}

/// `ζ_r(w, x, ω) = Σ_{n ≥ 0} (n·ω + x)^{-w}`, analytically continued in `w`.
///
/// An empty `ω` gives `ζ_0(w, x) = x^{-w}`.
pub fn multiple_hurwitz_zeta(w: Complex64, x: f64, omega: &[u64]) -> Result<Complex64> {
    multiple_hurwitz_zeta_estimate(w, x, omega).map(|v| v.value)
}

/// [`multiple_hurwitz_zeta`] with an absolute rounding-error estimate.
pub fn multiple_hurwitz_zeta_estimate(w: Complex64, x: f64, omega: &[u64]) -> Result<NumericValue> {
    let r = omega.len();
    if r == 0 {
        return Ok(NumericValue::exact((-w * order_zero_log(x)?).exp()));
    }
    if w.im == 0.0 && w.re.fract() == 0.0 && w.re >= 1.0 && w.re <= r as f64 {
        return Err(Error::Pole(w.re));
    }
    let (l, terms) = reduction(x, omega)?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for (g, i, a) in terms {
        let s = w - i as f64;
        let v = hurwitz_zeta(s, a)?;
        sum += g * v;
        err += g.abs() * (hurwitz_error_scale(s, a) + ROUNDING * v.norm());
    }
    let scale = (-w * l.ln()).exp();
    Ok(NumericValue::new(
        sum * scale,
        (err + ROUNDING * sum.norm()) * scale.norm(),
    ))
}

/// `∂ζ_r(w, x, ω)/∂w` at `w = 0`, i.e. `log Γ_r(x, ω)`.
///
/// The value is complex: for `x` below some lattice points the principal
/// branch contributes `-iπ` per point, so the imaginary part is a multiple of
/// `π` and `exp` of the result carries the correct sign.
pub fn log_multiple_gamma(x: f64, omega: &[u64]) -> Result<Complex64> {
    log_multiple_gamma_estimate(x, omega).map(|v| v.value)
}

/// [`log_multiple_gamma`] with an absolute rounding-error estimate.
pub fn log_multiple_gamma_estimate(x: f64, omega: &[u64]) -> Result<NumericValue> {
    if omega.is_empty() {
        return Ok(NumericValue::exact(-order_zero_log(x)?));
    }
    let (l, terms) = reduction(x, omega)?;
    let ll = l.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for (g, i, a) in terms {
        let s = Complex64::new(-(i as f64), 0.0);
        let (v, d) = hurwitz_zeta_with_ds(s, a)?;
        let term = d - ll * v;
        sum += g * term;
        err += g.abs() * ((1.0 + ll) * hurwitz_error_scale(s, a) + ROUNDING * term.norm());
    }
    Ok(NumericValue::new(sum, err + ROUNDING * sum.norm()))
}

/// `Γ_r(x, ω) = exp(∂_w ζ_r(w, x, ω)|_{w=0})`.
pub fn multiple_gamma(x: f64, omega: &[u64]) -> Result<f64> {
    Ok(log_multiple_gamma(x, omega)?.exp().re)
}

/// `log S_r(x, ω)` with `S_r(x, ω) = Γ_r(x, ω)^{-1} Γ_r(|ω| - x, ω)^{(-1)^r}`.
pub fn log_multiple_sine(x: f64, omega: &[u64]) -> Result<Complex64> {
    log_multiple_sine_estimate(x, omega).map(|v| v.value)
}

/// [`log_multiple_sine`] with an absolute rounding-error estimate.
pub fn log_multiple_sine_estimate(x: f64, omega: &[u64]) -> Result<NumericValue> {
    let total: u64 = omega.iter().sum();
    let sign = if omega.len().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let a = log_multiple_gamma_estimate(x, omega)?;
    let b = log_multiple_gamma_estimate(total as f64 - x, omega)?;
    Ok(NumericValue::new(
        -a.value + sign * b.value,
        a.abs_err + b.abs_err,
    ))
}

pub fn multiple_sine(x: f64, omega: &[u64]) -> Result<f64> {
    Ok(log_multiple_sine(x, omega)?.exp().re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Direct double sum over the lattice. Each row and the sum of rows are
    /// cut at 400 terms and completed by Euler-Maclaurin tails.
    fn double_sum(w: f64, x: f64, o1: u64, o2: u64) -> f64 {
        let (o1, o2) = (o1 as f64, o2 as f64);
        let cut = 400;
        let row = |b: f64| {
            let mut sum = 0.0;
            for n2 in 0..cut {
                sum += (b + n2 as f64 * o2).powf(-w);
            }
            let e = b + cut as f64 * o2;
            sum + e.powf(1.0 - w) / ((w - 1.0) * o2)
                + e.powf(-w) / 2.0
                + w * o2 * e.powf(-w - 1.0) / 12.0
        };
        let mut sum = 0.0;
        for n1 in 0..cut {
            sum += row(x + n1 as f64 * o1);
        }
        // rows beyond the cut, using the asymptotic row value
        let b = x + cut as f64 * o1;
        let integral = b.powf(2.0 - w) / ((w - 1.0) * (w - 2.0) * o1 * o2)
            + b.powf(1.0 - w) / (2.0 * (w - 1.0) * o1)
            + o2 * b.powf(-w) / (12.0 * o1);
        let at_cut = b.powf(1.0 - w) / ((w - 1.0) * o2) + b.powf(-w) / 2.0;
        sum + integral + at_cut / 2.0 + o1 * b.powf(-w) / (12.0 * o2)
    }

    #[test]
    fn counts_match_brute_force() {
        let omega = [2u64, 3, 3];
        let q = quasi_polynomial(&omega);
        for y in 0..60u64 {
            let mut brute = 0;
            for a in 0..=y / 2 {
                for b in 0..=y / 3 {
                    for cc in 0..=y / 3 {
                        if 2 * a + 3 * b + 3 * cc == y {
                            brute += 1;
                        }
                    }
                }
            }
            assert_eq!(q.count(y), rational::int(brute), "y={y}");
        }
    }

    #[test]
    fn double_sum_example() {
        // Σ (k+1)(k+2)^{-3} = ζ(2) - ζ(3)
        let v = multiple_hurwitz_zeta(c(3.0), 2.0, &[1, 1]).unwrap();
        let zeta3 = 1.202_056_903_159_594_3;
        assert!((v.re - (PI * PI / 6.0 - zeta3)).abs() < 1e-12);
        assert!((v.re - double_sum(3.0, 2.0, 1, 1)).abs() < 1e-8);
    }

    #[test]
    fn error_estimates_cover_known_values() {
        let zeta3 = 1.202_056_903_159_594_3;
        let v = multiple_hurwitz_zeta_estimate(c(3.0), 2.0, &[1, 1]).unwrap();
        let exact = PI * PI / 6.0 - zeta3;
        assert!((v.value.re - exact).abs() <= v.abs_err);
        assert!(v.abs_err < 1e-12);
        // Γ_1(x, (1)) = Γ(x) / sqrt(2π), S_1(1/2, (1)) = 2
        let g = log_multiple_gamma_estimate(0.5, &[1]).unwrap();
        assert!((g.value.re - (PI.sqrt() / (2.0 * PI).sqrt()).ln()).abs() <= g.abs_err);
        let s = log_multiple_sine_estimate(0.5, &[1]).unwrap();
        assert!((s.value.re - 2f64.ln()).abs() <= s.abs_err.max(1e-15));
        assert!(s.abs_err < 1e-10);
    }

    #[test]
    fn equal_periods_identity() {
        let (w, x, n) = (3.5, 2.0, 2.0);
        let v = multiple_hurwitz_zeta(c(w), x, &[2, 2]).unwrap().re;
        let a = x / n;
        let h1 = hurwitz_zeta(c(w - 1.0), a).unwrap().re;
        let h0 = hurwitz_zeta(c(w), a).unwrap().re;
        let expect = n.powf(-w) * (h1 + (1.0 - a) * h0);
        assert!((v - expect).abs() < 1e-12 * expect.abs());
        assert!((v - double_sum(w, x, 2, 2)).abs() < 1e-8);
    }

    #[test]
    fn order_one_is_hurwitz() {
        let v = multiple_hurwitz_zeta(c(2.0), 3.0, &[1]).unwrap();
        let h = hurwitz_zeta(c(2.0), 3.0).unwrap();
        assert!((v - h).norm() < 1e-14);
    }

    #[test]
    fn poles_rejected() {
        assert_eq!(
            multiple_hurwitz_zeta(c(2.0), 1.0, &[1, 2]),
            Err(Error::Pole(2.0))
        );
        assert!(multiple_hurwitz_zeta(c(3.0), 1.0, &[1, 2]).is_ok());
        assert!(multiple_hurwitz_zeta(c(3.0), 1.0, &[0, 1]).is_err());
    }

    #[test]
    fn order_zero() {
        let v = multiple_hurwitz_zeta(c(2.0), 4.0, &[]).unwrap();
        assert!((v.re - 1.0 / 16.0).abs() < 1e-15);
        let g = multiple_gamma(-2.0, &[]).unwrap();
        assert!((g + 0.5).abs() < 1e-15);
    }

    #[test]
    fn gamma_one_is_lerch() {
        for x in [0.5, 1.0, 2.0, 3.0] {
            let g = multiple_gamma(x, &[1]).unwrap();
            let oracle = statrs::function::gamma::gamma(x) / (2.0 * PI).sqrt();
            assert!((g / oracle - 1.0).abs() < 1e-10, "x={x}");
        }
    }

    #[test]
    fn gamma_at_negative_argument_keeps_sign() {
        // Γ_1(x) = Γ(x)/√(2π) also below zero
        for x in [-0.5, -1.5, -2.25] {
            let g = multiple_gamma(x, &[1]).unwrap();
            let oracle = statrs::function::gamma::gamma(x) / (2.0 * PI).sqrt();
            assert!((g / oracle - 1.0).abs() < 1e-9, "x={x}: {g} vs {oracle}");
        }
    }

    #[test]
    fn gamma_two_by_finite_difference() {
        let h = 1e-4;
        let fd = (multiple_hurwitz_zeta(c(h), 6.0, &[2, 2]).unwrap()
            - multiple_hurwitz_zeta(c(-h), 6.0, &[2, 2]).unwrap())
            / (2.0 * h);
        let lg = log_multiple_gamma(6.0, &[2, 2]).unwrap();
        assert!((fd - lg).norm() < 1e-6 * lg.norm().max(1.0));
        let g = multiple_gamma(6.0, &[2, 2]).unwrap();
        assert!((g / fd.re.exp() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn sine_order_one() {
        let s = multiple_sine(0.5, &[1]).unwrap();
        assert!((s - 2.0).abs() < 1e-10);
        let s = multiple_sine(0.25, &[1]).unwrap();
        assert!((s - 2.0f64.sqrt()).abs() < 1e-10);
        let s2 = multiple_sine(1.0, &[1, 1]).unwrap();
        assert!(s2.is_finite() && s2 > 0.0);
    }

    fn omega_vec(r: usize) -> impl Strategy<Value = Vec<u64>> {
        proptest::collection::vec(1u64..=4, r)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn ladder(omega in (1usize..=3).prop_flat_map(omega_vec), w in 4.2f64..9.0, x in 0.2f64..8.0) {
            let r = omega.len();
            let full = multiple_hurwitz_zeta(c(w), x, &omega).unwrap();
            let shifted = multiple_hurwitz_zeta(c(w), x + omega[r - 1] as f64, &omega).unwrap();
            let lower = if r == 1 {
                c(x.powf(-w))
            } else {
                multiple_hurwitz_zeta(c(w), x, &omega[..r - 1]).unwrap()
            };
            prop_assert!((full - shifted - lower).norm() < 1e-9 * full.norm().max(1.0));
        }

        #[test]
        fn scaling(omega in (1usize..=3).prop_flat_map(omega_vec), w in 4.2f64..9.0, x in 0.2f64..8.0, k in 2u64..4) {
            let scaled: Vec<u64> = omega.iter().map(|o| o * k).collect();
            let lhs = multiple_hurwitz_zeta(c(w), k as f64 * x, &scaled).unwrap();
            let rhs = multiple_hurwitz_zeta(c(w), x, &omega).unwrap() * (k as f64).powf(-w);
            prop_assert!((lhs - rhs).norm() < 1e-9 * rhs.norm().max(1e-300));
        }

        #[test]
        fn permutation_invariant(omega in (2usize..=4).prop_flat_map(omega_vec), w in -2.5f64..7.5, x in 0.3f64..6.0) {
            let mut rev = omega.clone();
            rev.reverse();
            let a = multiple_hurwitz_zeta(c(w), x, &omega);
            let b = multiple_hurwitz_zeta(c(w), x, &rev);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn log_gamma_is_w_derivative(omega in (1usize..=3).prop_flat_map(omega_vec), x in 0.3f64..6.0) {
            let h = 1e-4;
            let fd = (multiple_hurwitz_zeta(c(h), x, &omega).unwrap()
                - multiple_hurwitz_zeta(c(-h), x, &omega).unwrap()) / (2.0 * h);
            let lg = log_multiple_gamma(x, &omega).unwrap();
            prop_assert!((fd - lg).norm() < 1e-6 * lg.norm().max(1.0));
        }
    }
}
