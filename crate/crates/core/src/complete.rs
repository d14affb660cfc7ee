//! The complete graph `K_n`, whose Grover zeta has the non-cyclotomic factor
//! `(1 + 2u/(n-1) + u^2)^{n-1}`.
//!
//! With `L = n(n-3)/2` and `2m = n(n-1)`,
//!
//! ```text
//! ζ(e^t) = (-1)^L e^{-2mt} (Σ e^{-kt})^2 (Σ e^{-2kt})^L (Σ P_k e^{-kt})^{n-1}
//! ```
//!
//! where `Σ P_l u^l = (1 + 2u/(n-1) + u^2)^{-1}`. The Mellin transform is
//! therefore `(-1)^L Σ_t c_t (t + 2m + s)^{-w}` with `c_t` the coefficients of
//! the generating product, which converges for `Re w > L + 2`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::binomial;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::absolute::multiple::multiple_hurwitz_zeta;
use crate::absolute::NumericValue;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Parameters of the `K_n` series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompleteGraphParams {
    pub n: usize,
    /// `L = n(n-3)/2`, the multiplicity of the `(1 - u^2)` factor.
    pub l: usize,
    /// `M = (n^2 - n + 2)/2`, the number of summation indices.
    pub index_count: usize,
    /// `Re α = -1/(n-1)` for the conjugate roots `α, β = 1/α` of
    /// `u^2 + 2u/(n-1) + 1`.
    #[serde(with = "crate::rational::serde_rational")]
    pub alpha_re: Rational,
    /// `(Im α)^2 = n(n-2)/(n-1)^2`.
    #[serde(with = "crate::rational::serde_rational")]
    pub alpha_im_sq: Rational,
}

impl CompleteGraphParams {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::Validation(format!(
                "the complete-graph series needs n >= 4, got {n}"
            )));
        }
        let ni = n as i64;
        Ok(Self {
            n,
            l: n * (n - 3) / 2,
            index_count: (n * n - n + 2) / 2,
            alpha_re: rational::rat(-1, ni - 1),
            alpha_im_sq: rational::rat(ni * (ni - 2), (ni - 1) * (ni - 1)),
        })
    }

    /// `2m = n(n-1)`, the constant offset of every base.
    pub fn offset(&self) -> u64 {
        (self.n * (self.n - 1)) as u64
    }

    /// `|α|^2`, which is exactly one.
    pub fn alpha_norm_sq(&self) -> Rational {
        &self.alpha_re * &self.alpha_re + &self.alpha_im_sq
    }

    /// `α + β = 2 Re α`.
    pub fn alpha_sum(&self) -> Rational {
        &self.alpha_re * rational::int(2)
    }

    /// `(-1)^L`.
    pub fn sign(&self) -> i8 {
        if self.l.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `(n-1)/√(n(n-2))`, the bound on `|P_l|`.
    pub fn p_bound(&self) -> f64 {
        let n = self.n as f64;
        (n - 1.0) / (n * (n - 2.0)).sqrt()
    }
}

/// Coefficients `P_0..P_lmax` of `(1 + 2u/(n-1) + u^2)^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PSeries {
    pub n: usize,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub coeffs: Vec<Rational>,
}

impl PSeries {
    pub fn get(&self, l: usize) -> Option<&Rational> {
        self.coeffs.get(l)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|p| rational::to_f64(p).abs())
            .fold(0.0, f64::max)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::Validation(format!("P_l needs n >= 3, got {n}")));
    }
    Ok(())
}

/// `P_l = Σ_{i ≤ l/2} (-1)^{l-i} C(l-i, i) (2/(n-1))^{l-2i}`.
///
/// Each sum is taken over the integers as `(n-1)^l P_l`.
pub fn p_closed_form(n: usize, lmax: usize) -> Result<PSeries> {
    check_n(n)?;
    let q = BigInt::from(n - 1);
    let powers = |base: BigInt| {
        let mut v = vec![BigInt::one()];
        for i in 1..=lmax {
            let next = &v[i - 1] * &base;
            v.push(next);
        }
        v
    };
    let two = powers(BigInt::from(2));
    let q_pow = powers(q.clone());
    let q2_pow = powers(&q * &q);
    let coeffs = (0..=lmax)
        .map(|l| {
            let mut sum = BigInt::zero();
            // C(l - i, i), stepped by C(l-i-1, i+1) = C(l-i, i)(l-2i)(l-2i-1)/((i+1)(l-i))
            let mut c = BigInt::one();
            for i in 0..=l / 2 {
                let term = &c * &two[l - 2 * i] * &q2_pow[i];
                if (l - i) % 2 == 1 {
                    sum -= term;
                } else {
                    sum += term;
                }
                if 2 * i + 2 <= l {
                    c = c * BigInt::from((l - 2 * i) * (l - 2 * i - 1))
                        / BigInt::from((i + 1) * (l - i));
                }
            }
            Rational::new(sum, q_pow[l].clone())
        })
        .collect();
    Ok(PSeries { n, coeffs })
}

/// `P_l = -(2/(n-1)) P_{l-1} - P_{l-2}` with `P_0 = 1`, `P_1 = -2/(n-1)`.
pub fn p_recurrence(n: usize, lmax: usize) -> Result<PSeries> {
    check_n(n)?;
    let q = rational::rat(2, n as i64 - 1);
    let mut coeffs: Vec<Rational> = Vec::with_capacity(lmax + 1);
    for l in 0..=lmax {
        let p = match l {
            0 => Rational::one(),
            1 => -q.clone(),
            _ => -(&q * &coeffs[l - 1]) - &coeffs[l - 2],
        };
        coeffs.push(p);
    }
    Ok(PSeries { n, coeffs })
}

/// `P_0..P_lmax`, computed by the closed sum and checked against the
/// recurrence.
pub fn p_coefficients(n: usize, lmax: usize) -> Result<PSeries> {
    let closed = p_closed_form(n, lmax)?;
    let rec = p_recurrence(n, lmax)?;
    if closed != rec {
        return Err(Error::Validation(format!(
            "P_l routes disagree for n = {n}"
        )));
    }
    Ok(closed)
}

/// Exact `c_0..c_K` of `(Σ u^k)^2 (Σ u^{2k})^L (Σ P_k u^k)^{n-1}`.
///
/// Works with `d_t = (n-1)^t c_t`, which are integers: `(n-1)^k P_k` obeys
/// `Q_k = -2 Q_{k-1} - (n-1)^2 Q_{k-2}`.
pub fn series_coefficients(n: usize, k: usize) -> Result<Vec<Rational>> {
    let params = CompleteGraphParams::new(n)?;
    let q = BigInt::from(n - 1);
    let q2 = &q * &q;
    let len = k + 1;
    let mut base = vec![BigInt::zero(); len];
    for t in 0..len {
        base[t] = match t {
            0 => BigInt::one(),
            1 => BigInt::from(-2),
            _ => -BigInt::from(2) * &base[t - 1] - &q2 * &base[t - 2],
        };
    }
    let mut d = base.clone();
    for _ in 1..n - 1 {
        let mut next = vec![BigInt::zero(); len];
        for (i, a) in d.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in base.iter().take(len - i).enumerate() {
                next[i + j] += a * b;
            }
        }
        d = next;
    }
    // 1/(1 - u) twice, scaled
    for _ in 0..2 {
        for t in 1..len {
            let prev = &q * &d[t - 1];
            d[t] += prev;
        }
    }
    // 1/(1 - u^2), L times, scaled
    for _ in 0..params.l {
        for t in 2..len {
            let prev = &q2 * &d[t - 2];
            d[t] += prev;
        }
    }
    let mut scale = BigInt::one();
    Ok(d.into_iter()
        .map(|dt| {
            let c = Rational::new(dt, scale.clone());
            scale *= &q;
            c
        })
        .collect())
}

/// Truncated value of the `K_n` series with its tail.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncatedSeries {
    pub n: usize,
    pub terms: usize,
    pub value: NumericValue,
    /// Tail estimate from the growth of the computed coefficients.
    pub tail_estimate: f64,
    /// Rigorous tail bound from `|P_l| ≤ (n-1)/√(n(n-2))`; absent when
    /// `Re w ≤ L + n + 1`, where that bound does not sum.
    pub tail_bound: Option<f64>,
}

fn ln_factorial(k: usize) -> f64 {
    (1..=k).map(|i| (i as f64).ln()).sum()
}

/// `Z(w, s) = (-1)^L Σ_{t ≤ K} c_t (t + n(n-1) + s)^{-w}` with a tail.
///
/// `n = 3` is the cycle `C_3`, evaluated as `ζ_2(w, s + 6, (3, 3))`.
pub fn truncated_z_kn(n: usize, w: Complex64, s: Complex64, k: usize) -> Result<TruncatedSeries> {
    if n == 3 {
        if w.re <= 2.0 {
            return Err(Error::Convergence(format!("Re w = {} must exceed 2", w.re)));
        }
        if s.im != 0.0 {
            return Err(Error::Domain("the cycle route takes real s".into()));
        }
        let v = multiple_hurwitz_zeta(w, s.re + 6.0, &[3, 3])?;
        return Ok(TruncatedSeries {
            n,
            terms: 0,
            value: NumericValue::new(v, 1e-12 * v.norm()),
            tail_estimate: 0.0,
            tail_bound: Some(0.0),
        });
    }
    let params = CompleteGraphParams::new(n)?;
    let l = params.l;
    let poles = (l + 2) as f64;
    if w.re <= poles {
        return Err(Error::Convergence(format!(
            "Re w = {} must exceed L + 2 = {poles} for K_{n}",
            w.re
        )));
    }
    let offset = params.offset() as f64;
    if s.re + offset <= 0.0 {
        return Err(Error::Convergence(format!(
            "Re s = {} must exceed -{offset}",
            s.re
        )));
    }
    let coeffs = series_coefficients(n, k)?;
    let mut sum = Complex64::zero();
    let mut growth: f64 = 0.0;
    for (t, c) in coeffs.iter().enumerate() {
        let cf = rational::to_f64(c);
        let base = Complex64::new(t as f64 + offset, 0.0) + s;
        sum += cf * (-w * base.ln()).exp();
        let shape = binomial(BigInt::from(t + l + 1), BigInt::from(l + 1))
            .to_f64()
            .unwrap_or(f64::INFINITY);
        growth = growth.max(cf.abs() / shape);
    }
    sum *= params.sign() as f64;
    // Σ_{t > K} C(t+L+1, L+1) (t + 2m + Re s)^{-Re w} with 2m + Re s ≥ L + 1
    let x = (k + l + 1) as f64;
    let log_tail = (l as f64 + 2.0 - w.re) * x.ln() - ln_factorial(l + 1) - (w.re - poles).ln();
    let base_ok = offset + s.re >= (l + 1) as f64;
    let tail_estimate = if base_ok {
        growth * log_tail.exp()
    } else {
        f64::INFINITY
    };
    let free = (l + n) as f64;
    let tail_bound = (base_ok && w.re > free + 1.0).then(|| {
        let log_b = (n - 1) as f64 * params.p_bound().ln();
        let x = (k + l + n) as f64;
        (log_b + (free - w.re + 1.0) * x.ln() - ln_factorial(l + n) - (w.re - free - 1.0).ln())
            .exp()
    });
    Ok(TruncatedSeries {
        n,
        terms: k + 1,
        value: NumericValue::new(sum, tail_estimate),
        tail_estimate,
        tail_bound,
    })
}

/// One group of summation indices in the formal product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexGroup {
    pub role: String,
    pub count: usize,
    /// Each index `k` contributes `coefficient·k + constant` to the base.
    pub coefficient: u64,
    pub constant: u64,
    pub weighted: bool,
}

/// Symbolic form of the regularised product
/// `Π_k (Σ contributions + s)^{(-1)^L Π P_{k_N}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalProduct {
    pub n: usize,
    pub l: usize,
    pub index_count: usize,
    pub groups: Vec<IndexGroup>,
    pub base: String,
    pub exponent: String,
    pub sign: i8,
    pub p_weights: PSeries,
    pub regularized: bool,
    pub status: String,
}

const P_WEIGHT_PREVIEW: usize = 8;

/// Index and exponent structure of the product formula for `ζ_{ζ_{U_{K_n}}}`.
pub fn formal_product_kn(n: usize) -> Result<FormalProduct> {
    let params = CompleteGraphParams::new(n)?;
    let l = params.l;
    let m = params.index_count;
    let groups = vec![
        IndexGroup {
            role: "free".into(),
            count: 2,
            coefficient: 1,
            constant: 1,
            weighted: false,
        },
        IndexGroup {
            role: "doubled".into(),
            count: l,
            coefficient: 2,
            constant: 2,
            weighted: false,
        },
        IndexGroup {
            role: "weighted".into(),
            count: n - 1,
            coefficient: 1,
            constant: 2,
            weighted: true,
        },
    ];
    Ok(FormalProduct {
        n,
        l,
        index_count: m,
        groups,
        base: format!(
            "(k_1+k_2+2) + Σ_{{j=3}}^{{{}}} (2k_j+2) + Σ_{{N={}}}^{{{m}}} (k_N+2) + s",
            l + 2,
            l + 3
        ),
        exponent: format!("({})^{l} Π_{{N={}}}^{{{m}}} P_{{k_N}}", -1, l + 3),
        sign: params.sign(),
        p_weights: p_coefficients(n, P_WEIGHT_PREVIEW)?,
        regularized: true,
        status: "regularized product; the w-series diverges and is not evaluated numerically"
            .into(),
    })
}

impl FormalProduct {
    /// Integer part of the base at index vector `k` (the base is this plus `s`).
    pub fn base_offset(&self, k: &[usize]) -> Result<u64> {
        self.check(k)?;
        let mut total = 0u64;
        let mut idx = 0;
        for g in &self.groups {
            for &ki in &k[idx..idx + g.count] {
                total += g.coefficient * ki as u64 + g.constant;
            }
            idx += g.count;
        }
        Ok(total)
    }

    /// `(-1)^L Π P_{k_N}` at index vector `k`.
    pub fn exponent_at(&self, k: &[usize], p: &PSeries) -> Result<Rational> {
        self.check(k)?;
        let mut e = rational::int(self.sign as i64);
        for &ki in &k[self.index_count - (self.n - 1)..] {
            let pk = p
                .get(ki)
                .ok_or_else(|| Error::Validation(format!("P_{ki} not tabulated")))?;
            e *= pk;
        }
        Ok(e)
    }

    fn check(&self, k: &[usize]) -> Result<()> {
        if k.len() != self.index_count {
            return Err(Error::Validation(format!(
                "expected {} indices, got {}",
                self.index_count,
                k.len()
            )));
        }
        Ok(())
    }
}

impl TruncatedSeries {
    /// Whether the estimate is finite and the value is usable.
    pub fn is_finite(&self) -> bool {
        self.value.value.is_finite() && self.tail_estimate.is_finite()
    }

    /// Absolute error including the rigorous bound when it is available.
    pub fn abs_err(&self) -> f64 {
        match self.tail_bound {
            Some(b) if b < self.tail_estimate => b,
            _ => self.tail_estimate,
        }
    }
}

/// Sum of exponents over index vectors with base offset `offset`, which
/// equals `(-1)^L c_{offset - 2m}`.
pub fn exponent_mass(fp: &FormalProduct, offset: u64, p: &PSeries) -> Result<Rational> {
    let mut coefficients = Vec::new();
    for g in &fp.groups {
        coefficients.extend(std::iter::repeat_n((g.coefficient, g.weighted), g.count));
    }
    let fixed: u64 = fp.groups.iter().map(|g| g.count as u64 * g.constant).sum();
    if offset < fixed {
        return Ok(Rational::zero());
    }
    let weight = |k: usize| {
        p.get(k)
            .cloned()
            .ok_or_else(|| Error::Validation(format!("P_{k} not tabulated")))
    };
    // dp[r] = Σ over prefixes with variable part r of the product of weights
    let budget = (offset - fixed) as usize;
    let mut dp = vec![Rational::zero(); budget + 1];
    dp[0] = Rational::one();
    for &(coef, weighted) in &coefficients {
        let mut next = vec![Rational::zero(); budget + 1];
        for (r, v) in dp.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let mut k = 0;
            while r + coef as usize * k <= budget {
                let w = if weighted {
                    weight(k)?
                } else {
                    Rational::one()
                };
                next[r + coef as usize * k] += v * w;
                k += 1;
            }
        }
        dp = next;
    }
    Ok(&dp[budget] * rational::int(fp.sign as i64))
}

impl std::fmt::Display for FormalProduct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "K_{}: L = {}, M = {}", self.n, self.l, self.index_count)?;
        writeln!(
            f,
            "Π over k_1..k_{} ≥ 0 of [{}]^[{}]",
            self.index_count, self.base, self.exponent
        )?;
        for g in &self.groups {
            writeln!(
                f,
                "  {} indices: {} (coefficient {})",
                g.role, g.count, g.coefficient
            )?;
        }
        write!(f, "{}", self.status)
    }
}
