use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Polynomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Reduced quotient `constant * numerator / denominator` of polynomials.
///
/// Numerator and denominator are monic and coprime; the zero function has
/// constant zero and both polynomials equal to one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalFunction {
    #[serde(with = "crate::rational::serde_rational")]
    constant: Rational,
    numerator: Polynomial,
    denominator: Polynomial,
}

/// Builds the reduced form of `num / den`.
pub fn rf_normalize(num: &Polynomial, den: &Polynomial) -> Result<RationalFunction> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(RationalFunction::zero());
    }
    let g = num.gcd(den);
    let n = num.exact_div(&g).expect("gcd divides numerator");
    let d = den.exact_div(&g).expect("gcd divides denominator");
    let constant = n.leading() / d.leading();
    Ok(RationalFunction {
        constant,
        numerator: n.monic(),
        denominator: d.monic(),
    })
}

impl RationalFunction {
    pub fn new(num: &Polynomial, den: &Polynomial) -> Result<Self> {
        rf_normalize(num, den)
    }

    pub fn zero() -> Self {
        Self {
            constant: Rational::zero(),
            numerator: Polynomial::one(),
            denominator: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(&Polynomial::one())
    }

    pub fn from_poly(p: &Polynomial) -> Self {
        rf_normalize(p, &Polynomial::one()).expect("unit denominator")
    }

    /// `1 / p`.
    pub fn reciprocal_of(p: &Polynomial) -> Result<Self> {
        rf_normalize(&Polynomial::one(), p)
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    /// Monic numerator.
    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    /// Monic denominator.
    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    /// Numerator with the constant folded in.
    pub fn full_numerator(&self) -> Polynomial {
        self.numerator.scale(&self.constant)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self {
            constant: self.constant.recip(),
            numerator: self.denominator.clone(),
            denominator: self.numerator.clone(),
        })
    }

    pub fn mul(&self, other: &RationalFunction) -> Self {
        let num = &self.full_numerator() * &other.full_numerator();
        let den = &self.denominator * &other.denominator;
        rf_normalize(&num, &den).expect("product of nonzero denominators")
    }

    pub fn div(&self, other: &RationalFunction) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn add(&self, other: &RationalFunction) -> Self {
        let num = &(&self.full_numerator() * &other.denominator)
            + &(&other.full_numerator() * &self.denominator);
        let den = &self.denominator * &other.denominator;
        rf_normalize(&num, &den).expect("product of nonzero denominators")
    }

    pub fn powi(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(Self {
            constant: num_traits::pow(base.constant.clone(), k as usize),
            numerator: base.numerator.pow(k),
            denominator: base.denominator.pow(k),
        })
    }

    /// `f(1/u)`, by coefficient reversal.
    pub fn at_reciprocal(&self) -> Self {
        let dn = self.numerator.degree().unwrap_or(0);
        let dd = self.denominator.degree().unwrap_or(0);
        let mut num = self.numerator.reversed().scale(&self.constant);
        let mut den = self.denominator.reversed();
        if dd >= dn {
            num = num.shift_up(dd - dn);
        } else {
            den = den.shift_up(dn - dd);
        }
        rf_normalize(&num, &den).expect("reversal keeps a nonzero denominator")
    }

    /// `Some(k)` when `self == c u^k` for a constant `c`.
    pub fn as_monomial(&self) -> Option<(Rational, i64)> {
        let n = &self.numerator;
        let d = &self.denominator;
        let is_mono = |p: &Polynomial| p.valuation() == p.degree().unwrap_or(0);
        if self.is_zero() || !is_mono(n) || !is_mono(d) {
            return None;
        }
        let k = n.degree().unwrap_or(0) as i64 - d.degree().unwrap_or(0) as i64;
        Some((self.constant.clone(), k))
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.denominator.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(&self.constant * self.numerator.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        crate::rational::to_f64(&self.constant) * self.numerator.eval_f64(x)
            / self.denominator.eval_f64(x)
    }

    /// Taylor coefficients at `u = 0` up to `u^{len-1}`; `None` for a pole at 0.
    pub fn series(&self, len: usize) -> Option<Vec<Rational>> {
        if self.denominator.coeff(0).is_zero() {
            return None;
        }
        Some(self.full_numerator().series_div(&self.denominator, len))
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_one()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.full_numerator();
        if self.denominator.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/({})", self.denominator)
        }
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::one()
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(&p)
    }
}

impl RationalFunction {
    pub fn is_one(&self) -> bool {
        self.constant.is_one() && self.numerator.is_one() && self.denominator.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    #[test]
    fn common_factor_cancels() {
        let f = rf_normalize(&p(&[1, 0, -1]), &p(&[1, 0, 0, 0, -1])).unwrap();
        assert_eq!(f.numerator(), &Polynomial::one());
        assert_eq!(f.denominator(), &p(&[1, 0, 1]));
        assert_eq!(f.constant(), &int(1));
    }

    #[test]
    fn constant_extracted() {
        let f = rf_normalize(&p(&[0, 2]), &p(&[4])).unwrap();
        assert_eq!(f.constant(), &rat(1, 2));
        assert_eq!(f.numerator(), &p(&[0, 1]));
        assert!(f.denominator().is_one());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            rf_normalize(&p(&[1]), &Polynomial::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn reciprocal_of_cube() {
        let d = p(&[1, 0, 0, -1]).pow(2);
        let f = RationalFunction::reciprocal_of(&d).unwrap();
        assert_eq!(f.denominator(), &p(&[-1, 0, 0, 1]).pow(2));
        assert_eq!(f.recip().unwrap().full_numerator(), d);
    }

    #[test]
    fn reciprocal_argument() {
        // f(u) = (u + 2) / (u^3 - 1); f(1/u) = u^2 (1 + 2u) / (1 - u^3)
        let f = rf_normalize(&p(&[2, 1]), &p(&[-1, 0, 0, 1])).unwrap();
        let g = f.at_reciprocal();
        let expect = rf_normalize(&p(&[0, 0, 1, 2]), &p(&[1, 0, 0, -1])).unwrap();
        assert_eq!(g, expect);
        assert_eq!(g.at_reciprocal(), f);
    }

    #[test]
    fn monomial_detection() {
        let f = rf_normalize(&p(&[0, 0, -3]), &p(&[0, 1])).unwrap();
        assert_eq!(f.as_monomial(), Some((int(-3), 1)));
        assert_eq!(RationalFunction::from_poly(&p(&[1, 1])).as_monomial(), None);
    }

    #[test]
    fn arithmetic() {
        let a = rf_normalize(&p(&[1]), &p(&[1, -1])).unwrap();
        let b = rf_normalize(&p(&[1]), &p(&[1, 1])).unwrap();
        // 1/(1-u) + 1/(1+u) = 2/(1-u^2)
        assert_eq!(a.add(&b), rf_normalize(&p(&[2]), &p(&[1, 0, -1])).unwrap());
        assert_eq!(
            a.mul(&b).powi(-1).unwrap(),
            RationalFunction::from_poly(&p(&[1, 0, -1]))
        );
        assert_eq!(a.series(4).unwrap(), vec![int(1); 4]);
    }
}
