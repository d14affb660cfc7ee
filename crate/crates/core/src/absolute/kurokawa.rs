//! Cyclotomic forms and their absolute zeta decomposition.
//!
//! For `f(x) = C x^{ℓ/2} Π_i (x^{m_i} - 1) / Π_j (x^{n_j} - 1)` expanding the
//! numerator over subsets `I` and the denominator as a geometric lattice sum
//! gives
//!
//! ```text
//! Z_f(w, s) = C Σ_I (-1)^{|I|} ζ_b(w, s - deg f + m(I), n)
//! ζ_f(s)    = Π_I Γ_b(s - deg f + m(I), n)^{C (-1)^{|I|}}
//! ```
//!
//! with `m(I) = Σ_{i ∈ I} m_i`. Pairing `I` with its complement and using
//! `Γ_b(|n| - x)^{(-1)^b} = S_b(x) Γ_b(x)` yields the functional equation
//! `ζ_f(deg f + ℓ/2 - s)^{(-1)^{a+b}} = ε(s) ζ_f(s)` with
//! `ε(s) = Π_I S_b(s - deg f + m(I), n)^{C (-1)^{|I|}}`.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::multiple::{
    log_multiple_gamma, log_multiple_sine, multiple_hurwitz_zeta, multiple_hurwitz_zeta_estimate,
};
use super::NumericValue;
use crate::error::{Error, Result};
use crate::poly::{factor_unit_basis, Polynomial, RationalFunction, UnitFactoredForm};
use crate::rational::{self, Rational};

/// `C x^{ℓ/2} Π (x^{m_i} - 1) / Π (x^{n_j} - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicForm {
    pub sign: i8,
    pub half_exponent: i64,
    pub m_list: Vec<u64>,
    pub n_list: Vec<u64>,
}

impl CyclotomicForm {
    pub fn new(
        sign: i8,
        half_exponent: i64,
        mut m_list: Vec<u64>,
        mut n_list: Vec<u64>,
    ) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::Validation(format!("sign must be ±1, got {sign}")));
        }
        if m_list.contains(&0) || n_list.contains(&0) {
            return Err(Error::Validation("exponents must be positive".into()));
        }
        m_list.sort_unstable();
        n_list.sort_unstable();
        Ok(Self {
            sign,
            half_exponent,
            m_list,
            n_list,
        })
    }

    /// Builds the form from a unit-basis factorisation whose constant is
    /// `±1` and whose residual is a power of `u`.
    pub fn from_unit_form(form: &UnitFactoredForm) -> Result<Self> {
        let residual = residual_text(form);
        let not_representable = || Error::NotRepresentable {
            residual: residual.clone(),
        };
        let power = form.residual_u_power().ok_or_else(not_representable)?;
        let c = &form.constant;
        let sign = if c.is_one() {
            1
        } else if *c == -Rational::one() {
            -1
        } else {
            return Err(not_representable());
        };
        let mut m_list = Vec::new();
        let mut n_list = Vec::new();
        for (&k, &e) in &form.factors {
            let target = if e > 0 { &mut m_list } else { &mut n_list };
            target.extend(std::iter::repeat_n(k as u64, e.unsigned_abs() as usize));
        }
        Self::new(sign, 2 * power, m_list, n_list)
    }

    pub fn a(&self) -> usize {
        self.m_list.len()
    }

    pub fn b(&self) -> usize {
        self.n_list.len()
    }

    /// `deg f = ℓ/2 + Σ m_i - Σ n_j`.
    pub fn degree(&self) -> Rational {
        let m: u64 = self.m_list.iter().sum();
        let n: u64 = self.n_list.iter().sum();
        rational::rat(self.half_exponent, 2) + rational::int(m as i64 - n as i64)
    }

    /// The rational function the form describes.
    pub fn to_rational_function(&self) -> Result<RationalFunction> {
        if self.half_exponent % 2 != 0 {
            return Err(Error::Domain(
                "odd half exponent has no rational function".into(),
            ));
        }
        let power = self.half_exponent / 2;
        let mut num = Polynomial::constant(rational::int(self.sign as i64));
        let mut den = Polynomial::one();
        for &m in &self.m_list {
            num = &num * &Polynomial::unit_binomial(m as usize);
        }
        for &n in &self.n_list {
            den = &den * &Polynomial::unit_binomial(n as usize);
        }
        if power >= 0 {
            num = num.shift_up(power as usize);
        } else {
            den = den.shift_up(power.unsigned_abs() as usize);
        }
        RationalFunction::new(&num, &den)
    }
}

impl fmt::Display for CyclotomicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "C={} l={} m={:?} n={:?}",
            self.sign, self.half_exponent, self.m_list, self.n_list
        )
    }
}

/// Residual as square-free factors, e.g. `1/(u^2 + 2/3 u + 1)^3`.
fn residual_text(form: &UnitFactoredForm) -> String {
    let parts = |p: &Polynomial| -> Vec<String> {
        p.square_free_decomposition()
            .into_iter()
            .filter(|(q, _)| !q.is_one())
            .map(|(q, e)| {
                if e == 1 {
                    format!("({q})")
                } else {
                    format!("({q})^{e}")
                }
            })
            .collect()
    };
    let num = parts(&form.residual_numerator);
    let den = parts(&form.residual_denominator);
    let c = &form.constant;
    let mut out = String::new();
    if c.is_negative() {
        out.push('-');
    }
    if num.is_empty() || !c.abs().is_one() {
        out.push_str(&rational::format(&c.abs()));
    }
    out.push_str(&num.join("*"));
    if !den.is_empty() {
        out.push('/');
        out.push_str(&den.join("*"));
    }
    out
}

/// Writes `f` as a cyclotomic form, or reports the residual that is not a
/// signed power of `u`.
pub fn to_cyclotomic_form(f: &RationalFunction) -> Result<CyclotomicForm> {
    if f.is_zero() {
        return Err(Error::Validation(
            "the zero function has no cyclotomic form".into(),
        ));
    }
    let kmax = f
        .numerator()
        .degree()
        .unwrap_or(0)
        .max(f.denominator().degree().unwrap_or(0))
        .max(1);
    CyclotomicForm::from_unit_form(&factor_unit_basis(f, kmax))
}

mod serde_shift {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        if r.is_integer() {
            let v: i64 = r
                .to_integer()
                .try_into()
                .map_err(serde::ser::Error::custom)?;
            s.serialize_i64(v)
        } else {
            s.serialize_str(&rational::format(r))
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(i64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(rational::int(v)),
            Raw::Text(t) => rational::parse(&t).map_err(serde::de::Error::custom),
        }
    }
}

/// One term `ζ_b(w, s + shift, ω)` with multiplicity `exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsoluteZetaTerm {
    pub order: usize,
    #[serde(with = "serde_shift")]
    pub shift: Rational,
    pub omega: Vec<u64>,
    pub exponent: i64,
}

/// Signed sum of multiple Hurwitz zeta terms equal to `Z_f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsoluteZetaExpression {
    pub sign: i8,
    #[serde(with = "serde_shift")]
    pub degree: Rational,
    pub half_exponent: i64,
    pub a: usize,
    pub terms: Vec<AbsoluteZetaTerm>,
}

/// Expands all `2^a` subsets of the numerator factors.
pub fn kurokawa_decompose(cf: &CyclotomicForm) -> AbsoluteZetaExpression {
    let a = cf.a();
    let deg = cf.degree();
    let terms = (0..1u64 << a)
        .map(|mask| {
            let mut m_sum = 0u64;
            for (i, &m) in cf.m_list.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    m_sum += m;
                }
            }
            let parity = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            AbsoluteZetaTerm {
                order: cf.b(),
                shift: -&deg + rational::int(m_sum as i64),
                omega: cf.n_list.clone(),
                exponent: cf.sign as i64 * parity,
            }
        })
        .collect();
    AbsoluteZetaExpression {
        sign: cf.sign,
        degree: deg,
        half_exponent: cf.half_exponent,
        a,
        terms,
    }
}

impl AbsoluteZetaExpression {
    /// Merges terms with equal shift, dropping those that cancel.
    pub fn collected(&self) -> Vec<AbsoluteZetaTerm> {
        let mut out: Vec<AbsoluteZetaTerm> = Vec::new();
        for t in &self.terms {
            match out.iter_mut().find(|o| o.shift == t.shift) {
                Some(o) => o.exponent += t.exponent,
                None => out.push(t.clone()),
            }
        }
        out.retain(|t| t.exponent != 0);
        out.sort_by(|x, y| x.shift.cmp(&y.shift));
        out
    }

    fn order(&self) -> usize {
        self.terms.first().map_or(0, |t| t.order)
    }

    fn sum_terms<F>(&self, s: f64, mut eval: F) -> Result<Complex64>
    where
        F: FnMut(f64, &[u64]) -> Result<Complex64>,
    {
        let mut sum = Complex64::zero();
        for t in self.collected() {
            sum += t.exponent as f64 * eval(s + rational::to_f64(&t.shift), &t.omega)?;
        }
        Ok(sum)
    }

    /// `Z_f(w, s)`.
    pub fn hurwitz(&self, w: Complex64, s: f64) -> Result<Complex64> {
        self.sum_terms(s, |x, omega| multiple_hurwitz_zeta(w, x, omega))
    }

    /// [`Self::hurwitz`] with an absolute rounding-error estimate.
    pub fn hurwitz_estimate(&self, w: Complex64, s: f64) -> Result<NumericValue> {
        let mut sum = NumericValue::exact(Complex64::zero());
        for t in self.collected() {
            let v = multiple_hurwitz_zeta_estimate(w, s + rational::to_f64(&t.shift), &t.omega)?;
            let e = t.exponent as f64;
            sum.value += e * v.value;
            sum.abs_err += e.abs() * v.abs_err;
        }
        Ok(sum)
    }

    /// `log ζ_f(s)`; the imaginary part is only meaningful modulo `2π`.
    pub fn log_zeta(&self, s: f64) -> Result<Complex64> {
        self.sum_terms(s, log_multiple_gamma)
    }

    pub fn zeta(&self, s: f64) -> Result<f64> {
        Ok(self.log_zeta(s)?.exp().re)
    }

    /// `log ε(s)` for the functional equation.
    pub fn log_epsilon(&self, s: f64) -> Result<Complex64> {
        self.sum_terms(s, log_multiple_sine)
    }

    /// Reflection point `deg f + ℓ/2` and exponent `(-1)^{a+b}`.
    pub fn reflection(&self) -> (f64, i32) {
        let point = rational::to_f64(&self.degree) + self.half_exponent as f64 / 2.0;
        let parity = if (self.a + self.order()).is_multiple_of(2) {
            1
        } else {
            -1
        };
        (point, parity)
    }

    /// Formats `ζ_f(s)` as a product of multiple gamma factors.
    pub fn gamma_product_text(&self) -> String {
        let parts: Vec<String> = self
            .collected()
            .iter()
            .map(|t| {
                let shift = if t.shift.is_negative() {
                    format!("s - {}", rational::format(&-&t.shift))
                } else {
                    format!("s + {}", rational::format(&t.shift))
                };
                let exp = if t.exponent == 1 {
                    String::new()
                } else {
                    format!("^{}", t.exponent)
                };
                format!("Γ_{}({}, {:?}){}", t.order, shift, t.omega, exp)
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" · ")
        }
    }
}

/// Relative residual `|1 - RHS/LHS|` of
/// `ζ_f(deg f + ℓ/2 - s)^{(-1)^{a+b}} = ε(s) ζ_f(s)`.
pub fn functional_equation_check(expr: &AbsoluteZetaExpression, s: f64) -> Result<f64> {
    let (point, parity) = expr.reflection();
    let lhs = parity as f64 * expr.log_zeta(point - s)?;
    let rhs = expr.log_epsilon(s)? + expr.log_zeta(s)?;
    let ratio = (rhs - lhs).exp();
    if !ratio.is_finite() {
        return Err(Error::Domain(format!("s = {s} is singular")));
    }
    Ok((Complex64::new(1.0, 0.0) - ratio).norm())
}
