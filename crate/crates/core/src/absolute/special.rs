//! Scalar special functions: Bernoulli numbers, Hurwitz zeta and its
//! s-derivative, complex log-gamma.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Number of Bernoulli correction terms in the Euler–Maclaurin tail.
pub const EM_TERMS: usize = 8;
/// Direct summation continues until `a + N >= EM_SHIFT + |s|`.
pub const EM_SHIFT: f64 = 15.0;

const BERNOULLI_MAX: usize = 64;

fn bernoulli_table() -> &'static [Rational] {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // sum_{k=0}^{n} C(n+1, k) B_k = 0
        let mut b: Vec<Rational> = vec![Rational::one()];
        for n in 1..=BERNOULLI_MAX {
            let mut binom = BigInt::one();
            let mut acc = Rational::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += bk * Rational::from_integer(binom.clone());
                binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
            }
            b.push(-acc / Rational::from_integer(BigInt::from(n + 1)));
        }
        b
    })
}

/// Exact Bernoulli number `B_n` (with `B_1 = -1/2`), `n <= 64`.
pub fn bernoulli(n: usize) -> Rational {
    bernoulli_table()[n].clone()
}

/// `B_{2j} / (2j)!` as floats for `j = 0..`.
fn em_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut fact = BigInt::one();
        let mut out = Vec::new();
        for j in 0..=BERNOULLI_MAX / 2 {
            if j > 0 {
                fact *= BigInt::from((2 * j - 1) * (2 * j));
            }
            out.push(rational::to_f64(
                &(bernoulli(2 * j) / Rational::from_integer(fact.clone())),
            ));
        }
        out
    })
}

/// Principal logarithm of a nonzero real number.
pub fn log_real(y: f64) -> Complex64 {
    if y > 0.0 {
        Complex64::new(y.ln(), 0.0)
    } else {
        Complex64::new((-y).ln(), PI)
    }
}

const ROUNDING_ULPS: f64 = 64.0;

/// Absolute rounding-error scale of [`hurwitz_zeta_with_ds`] at `(s, a)`;
/// the derivative carries an extra logarithmic factor.
pub fn hurwitz_error_scale(s: Complex64, a: f64) -> f64 {
    let top = EM_SHIFT + s.norm() + a.abs();
    ROUNDING_ULPS * f64::EPSILON * top.powf((1.0 - s.re).max(0.0)).max(1.0) * (1.0 + top.ln())
}

/// `ζ(s, a)` and `∂ζ(s, a)/∂s`.
///
/// `a` may be any real number that is not a non-positive integer; terms with
/// `a + k < 0` use the principal branch of `log`. For `Re s < 1` the absolute
/// rounding error grows like `(a + N)^{1 - Re s}` times machine epsilon.
pub fn hurwitz_zeta_with_ds(s: Complex64, a: f64) -> Result<(Complex64, Complex64)> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::PoleAt1);
    }
    if !a.is_finite() || (a <= 0.0 && a.fract() == 0.0) {
        return Err(Error::Domain(format!("Hurwitz zeta parameter a = {a}")));
    }
    let n = (EM_SHIFT + s.norm() - a).ceil().max(0.0) as usize;
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let y = a + k as f64;
        if y == 0.0 {
            return Err(Error::Domain(format!("Hurwitz zeta parameter a = {a}")));
        }
        let ly = log_real(y);
        let term = (-s * ly).exp();
        value += term;
        deriv -= ly * term;
    }
    let x = a + n as f64;
    let lx = x.ln();
    let xs = (-s * lx).exp();
    let sm1 = s - 1.0;
    value += x * xs / sm1;
    deriv += x * xs * (-lx / sm1 - 1.0 / (sm1 * sm1));
    value += xs * 0.5;
    deriv -= xs * (0.5 * lx);
    let coeffs = em_coefficients();
    let mut p = s;
    let mut dp = Complex64::new(1.0, 0.0);
    let mut pow = xs / x;
    for (j, &c) in coeffs.iter().enumerate().skip(1).take(EM_TERMS) {
        value += p * pow * c;
        deriv += (dp - p * lx) * pow * c;
        let f1 = s + (2 * j - 1) as f64;
        let f2 = s + (2 * j) as f64;
        let f = f1 * f2;
        dp = dp * f + p * (f1 + f2);
        p *= f;
        pow /= x * x;
    }
    Ok((value, deriv))
}

/// Hurwitz zeta `ζ(s, a) = Σ_{k≥0} (k + a)^{-s}`, analytically continued.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    hurwitz_zeta_with_ds(s, a).map(|(v, _)| v)
}

/// `∂ζ(s, a)/∂s`.
pub fn hurwitz_zeta_ds(s: Complex64, a: f64) -> Result<Complex64> {
    hurwitz_zeta_with_ds(s, a).map(|(_, d)| d)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `log Γ(z)` for complex `z` (Lanczos, with reflection for `Re z < 1/2`).
/// The imaginary part is determined up to a multiple of `2π`.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        return pi.ln() - (pi * z).sin().ln() - ln_gamma(1.0 - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// `1/Γ(z)`, zero at the poles of `Γ`.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    (-ln_gamma(z)).exp()
}
