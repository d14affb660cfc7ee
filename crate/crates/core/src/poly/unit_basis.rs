//! Factoring rational functions over the basis `{u^k - 1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{Polynomial, RationalFunction};
use crate::rational::{self, Rational};

/// `constant * prod_k (u^k - 1)^{e_k} * residual_numerator / residual_denominator`.
///
/// The residual polynomials are monic and have no root at a root of unity of
/// order at most the search bound used to build the form. Powers of `u` stay
/// in the residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitFactoredForm {
    #[serde(with = "crate::rational::serde_rational")]
    pub constant: Rational,
    pub factors: BTreeMap<usize, i64>,
    pub residual_numerator: Polynomial,
    pub residual_denominator: Polynomial,
}

/// Cyclotomic polynomial `Phi_d`, cached.
pub fn cyclotomic(d: usize) -> Polynomial {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Polynomial>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(p) = cache.lock().expect("cache poisoned").get(&d) {
        return p.clone();
    }
    let mut p = Polynomial::unit_binomial(d);
    for e in 1..d {
        if d.is_multiple_of(e) {
            p = p.exact_div(&cyclotomic(e)).expect("Phi_e divides u^d - 1");
        }
    }
    cache.lock().expect("cache poisoned").insert(d, p.clone());
    p
}

/// Möbius function.
pub fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Euler's totient.
pub fn totient(mut n: usize) -> usize {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Factors `f` as a signed product of powers of `u^k - 1`, `k <= kmax`, times a
/// residual ratio.
///
/// Each cyclotomic factor `Phi_d` (`d <= kmax`) is divided out of numerator and
/// denominator to get its net multiplicity `c_d`; the exponents follow by
/// Möbius inversion over multiples, `e_k = sum_{k | j <= kmax} mu(j/k) c_j`,
/// since `u^k - 1 = prod_{d | k} Phi_d`. This also recovers forms whose
/// binomial factors share cyclotomic parts that cancelled during reduction,
/// such as `-(u^2-1)/(u^4-1)^2`.
pub fn factor_unit_basis(f: &RationalFunction, kmax: usize) -> UnitFactoredForm {
    let kmax = kmax.max(1);
    let mut num = f.numerator().clone();
    let mut den = f.denominator().clone();
    let mut c = vec![0i64; kmax + 1];
    for (d, cd) in c.iter_mut().enumerate().skip(1) {
        let phi = cyclotomic(d);
        let (a, rest) = num.divide_out(&phi);
        num = rest;
        let (b, rest) = den.divide_out(&phi);
        den = rest;
        *cd = a as i64 - b as i64;
    }
    let mut factors = BTreeMap::new();
    for k in 1..=kmax {
        let e: i64 = (k..=kmax).step_by(k).map(|j| mobius(j / k) * c[j]).sum();
        if e != 0 {
            factors.insert(k, e);
        }
    }
    UnitFactoredForm {
        constant: f.constant().clone(),
        factors,
        residual_numerator: num.monic(),
        residual_denominator: den.monic(),
    }
}

impl UnitFactoredForm {
    /// Rebuilds the rational function.
    pub fn reconstruct(&self) -> RationalFunction {
        let mut num = self.residual_numerator.scale(&self.constant);
        let mut den = self.residual_denominator.clone();
        for (&k, &e) in &self.factors {
            let b = Polynomial::unit_binomial(k).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num = &num * &b;
            } else {
                den = &den * &b;
            }
        }
        RationalFunction::new(&num, &den).expect("nonzero denominator")
    }

    pub fn residual_is_trivial(&self) -> bool {
        self.residual_numerator.is_one() && self.residual_denominator.is_one()
    }

    /// `Some(k)` when both residuals are pure powers of `u`, giving `u^k`.
    pub fn residual_u_power(&self) -> Option<i64> {
        let mono = |p: &Polynomial| p.valuation() == p.degree().unwrap_or(0);
        if !mono(&self.residual_numerator) || !mono(&self.residual_denominator) {
            return None;
        }
        Some(
            self.residual_numerator.degree().unwrap_or(0) as i64
                - self.residual_denominator.degree().unwrap_or(0) as i64,
        )
    }
}

fn binomial_text(k: usize) -> String {
    if k == 1 {
        "u-1".into()
    } else {
        format!("u^{k}-1")
    }
}

fn power_text(base: &str, e: u64) -> String {
    if e == 1 {
        format!("({base})")
    } else {
        format!("({base})^{e}")
    }
}

impl fmt::Display for UnitFactoredForm {
    /// Compact form such as `1/(u^5-1)^2` or `-(u^2-1)^2/(u^4-1)^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num_parts = Vec::new();
        let mut den_parts = Vec::new();
        for (&k, &e) in &self.factors {
            let part = power_text(&binomial_text(k), e.unsigned_abs());
            if e > 0 {
                num_parts.push(part);
            } else {
                den_parts.push(part);
            }
        }
        if !self.residual_numerator.is_one() {
            num_parts.push(format!("({})", self.residual_numerator));
        }
        if !self.residual_denominator.is_one() {
            den_parts.push(format!("({})", self.residual_denominator));
        }
        let c = &self.constant;
        let mut out = String::new();
        if c.is_negative() {
            out.push('-');
        }
        let abs = c.abs();
        let num = num_parts.join("*");
        if !abs.is_one() {
            out.push_str(&rational::format(&abs));
            if !num.is_empty() {
                out.push('*');
            }
        } else if num.is_empty() {
            out.push('1');
        }
        out.push_str(&num);
        if !den_parts.is_empty() {
            out.push('/');
            let den = den_parts.join("*");
            if den_parts.len() > 1 {
                out.push_str(&format!("({den})"));
            } else {
                out.push_str(&den);
            }
        }
        f.write_str(&out)
    }
}
