//! Exact Grover spectra from the spectrum of the random-walk matrix.
//!
//! Every eigenvalue `cos θ` of `P` yields `e^{±iθ}`. The values `cos θ` are
//! found exactly by splitting the characteristic polynomial of `P` into
//! minimal polynomials of `cos(2π/q)`, rational roots and quadratic factors.
//! Anything left over is reported as unsupported together with the
//! characteristic polynomial.

use std::f64::consts::TAU;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::transition_matrix;
use crate::poly::{charpoly_integer, cyclotomic, totient, Polynomial};
use crate::rational::{self, Rational};

/// `a + b √d` with `d` square-free; `b = 0` forces `d = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadSurd {
    #[serde(with = "crate::rational::serde_rational")]
    pub a: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub b: Rational,
    pub d: i64,
}

impl QuadSurd {
    pub fn rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
            d: 1,
        }
    }

    /// Canonical `a + b √d`; `None` if `d` cannot be factored quickly.
    pub fn new(a: Rational, b: Rational, d: &BigInt) -> Option<Self> {
        if b.is_zero() || d.is_zero() {
            return Some(Self::rational(a));
        }
        let (k, d) = rational::square_free_split(d)?;
        let b = b * Rational::from_integer(k);
        if d.is_one() {
            return Some(Self::rational(a + b));
        }
        Some(Self {
            a,
            b,
            d: d.to_i64()?,
        })
    }

    /// `√r` for a rational `r ≥ 0`.
    pub fn sqrt_of(r: &Rational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        let pq = r.numer() * r.denom();
        Self::new(
            Rational::zero(),
            Rational::new(BigInt::one(), r.denom().clone()),
            &pq,
        )
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.a) + rational::to_f64(&self.b) * (self.d as f64).sqrt()
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = format!("√{}", self.d);
        let babs = self.b.abs();
        let term = if babs.is_one() {
            root
        } else if babs.is_integer() {
            format!("{babs}{root}")
        } else {
            format!("({babs}){root}")
        };
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{term}"),
            (true, true) => write!(f, "-{term}"),
            (false, false) => write!(f, "{} + {term}", self.a),
            (false, true) => write!(f, "{} - {term}", self.a),
        }
    }
}

/// An eigenvalue `cos θ` of the transition matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CosValue {
    /// A rational or quadratic irrational.
    Surd(QuadSurd),
    /// `cos(2πk/q)` with `gcd(k, q) = 1`, `0 < k < q/2`, of degree at least three.
    Cyclotomic { k: u64, q: u64 },
}

impl CosValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            CosValue::Surd(s) => s.to_f64(),
            CosValue::Cyclotomic { k, q } => (TAU * *k as f64 / *q as f64).cos(),
        }
    }

    fn is_unit(&self, sign: i64) -> bool {
        matches!(self, CosValue::Surd(s) if s.is_rational() && s.a == rational::int(sign))
    }
}

impl fmt::Display for CosValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CosValue::Surd(s) => write!(f, "{s}"),
            CosValue::Cyclotomic { k, q } => write!(f, "cos(2π·{k}/{q})"),
        }
    }
}

/// A Grover eigenvalue `cos θ + i sign · sin|θ|` on the unit circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroverEigenvalue {
    pub cos: CosValue,
    /// -1, 0 or 1; zero exactly for the eigenvalues ±1.
    pub im_sign: i8,
}

impl GroverEigenvalue {
    pub fn real(r: i64) -> Self {
        Self {
            cos: CosValue::Surd(QuadSurd::rational(rational::int(r))),
            im_sign: 0,
        }
    }

    pub fn from_cos(cos: QuadSurd, im_sign: i8) -> Self {
        Self {
            cos: CosValue::Surd(cos),
            im_sign,
        }
    }

    /// `e^{2πik/q}` in canonical form.
    pub fn root_of_unity(k: u64, q: u64) -> Self {
        let g = k.gcd(&q).max(1);
        let (k, q) = ((k % q) / g, q / g);
        let (k, q) = if k == 0 { (0, 1) } else { (k, q) };
        let im_sign = if k == 0 || 2 * k == q {
            0
        } else if 2 * k < q {
            1
        } else {
            -1
        };
        let kk = k.min(q - k);
        if totient(q as usize) <= 4 {
            let target = (TAU * kk as f64 / q as f64).cos();
            let cos = small_roots(&cos_min_poly(q as usize))
                .expect("low-degree minimal polynomial")
                .into_iter()
                .min_by(|a, b| {
                    (a.to_f64() - target)
                        .abs()
                        .total_cmp(&(b.to_f64() - target).abs())
                })
                .expect("at least one root");
            Self::from_cos(cos, im_sign)
        } else {
            Self {
                cos: CosValue::Cyclotomic { k: kk, q },
                im_sign,
            }
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            cos: self.cos.clone(),
            im_sign: -self.im_sign,
        }
    }

    pub fn is_one(&self) -> bool {
        self.cos.is_unit(1)
    }

    pub fn is_minus_one(&self) -> bool {
        self.cos.is_unit(-1)
    }

    pub fn to_complex(&self) -> Complex64 {
        let c = self.cos.to_f64();
        let s = (1.0 - c * c).max(0.0).sqrt();
        Complex64::new(c, self.im_sign as f64 * s)
    }

    /// Argument in `[0, 2π)`.
    pub fn angle(&self) -> f64 {
        let z = self.to_complex();
        let a = z.im.atan2(z.re);
        if a < 0.0 {
            a + TAU
        } else {
            a
        }
    }

    pub fn re_text(&self) -> String {
        self.cos.to_string()
    }

    pub fn im_text(&self) -> String {
        if self.im_sign == 0 {
            return "0".into();
        }
        let sign = if self.im_sign < 0 { "-" } else { "" };
        let body = match &self.cos {
            CosValue::Surd(s) if s.is_rational() => {
                let r = Rational::one() - &s.a * &s.a;
                match QuadSurd::sqrt_of(&r) {
                    Some(v) => v.to_string(),
                    None => format!("sqrt({r})"),
                }
            }
            CosValue::Surd(s) => format!("sqrt(1 - ({s})^2)"),
            CosValue::Cyclotomic { k, q } => format!("sin(2π·{k}/{q})"),
        };
        format!("{sign}{body}")
    }
}

impl fmt::Display for GroverEigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im_sign == 0 {
            return write!(f, "{}", self.re_text());
        }
        let im = self.im_text();
        let (neg, abs) = match im.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, im),
        };
        let im_part = if abs == "1" {
            "i".to_string()
        } else {
            format!("{abs} i")
        };
        let re = self.re_text();
        if re == "0" {
            write!(f, "{}{im_part}", if neg { "-" } else { "" })
        } else {
            write!(f, "{re} {} {im_part}", if neg { "-" } else { "+" })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpectrumPart {
    #[serde(rename = "RW")]
    Rw,
    #[serde(rename = "RW^c")]
    RwComplement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub eigenvalue: GroverEigenvalue,
    pub multiplicity: usize,
    pub part: SpectrumPart,
}

/// Spectrum of the Grover matrix, split into its random-walk part and the
/// complementary `±1` part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumMultiset {
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Eigenvalues of `P` with multiplicities.
    pub transition: Vec<(CosValue, usize)>,
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumMultiset {
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Eigenvalues with multiplicities, both parts combined, sorted by argument.
    pub fn merged(&self) -> Vec<(GroverEigenvalue, usize)> {
        merge(
            self.entries
                .iter()
                .map(|e| (e.eigenvalue.clone(), e.multiplicity)),
        )
    }

    /// The product of all eigenvalues; each conjugate pair contributes one.
    pub fn product_sign(&self) -> i8 {
        let minus: usize = self
            .entries
            .iter()
            .filter(|e| e.eigenvalue.is_minus_one())
            .map(|e| e.multiplicity)
            .sum();
        if minus.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_conjugate_closed(&self) -> bool {
        let merged = self.merged();
        merged.iter().all(|(ev, m)| {
            let c = ev.conj();
            merged.iter().any(|(other, mm)| *other == c && mm == m)
        })
    }

    /// Largest relative deviation of `prod (1 - uλ)^mult` from `det` at a few
    /// points inside the unit disc.
    pub fn numeric_residual(&self, det: &Polynomial) -> f64 {
        let points = [
            Complex64::new(0.3, 0.1),
            Complex64::new(-0.2, 0.45),
            Complex64::new(0.55, -0.3),
        ];
        points
            .iter()
            .map(|&u| {
                let mut lhs = Complex64::new(0.0, 0.0);
                for (k, c) in det.coeffs().iter().enumerate() {
                    lhs += u.powu(k as u32) * rational::to_f64(c);
                }
                let mut rhs = Complex64::new(1.0, 0.0);
                for e in &self.entries {
                    rhs *= (Complex64::new(1.0, 0.0) - u * e.eigenvalue.to_complex())
                        .powu(e.multiplicity as u32);
                }
                (lhs - rhs).norm() / rhs.norm().max(1e-300)
            })
            .fold(0.0, f64::max)
    }
}

/// Combines equal eigenvalues and sorts by argument.
pub fn merge(
    items: impl IntoIterator<Item = (GroverEigenvalue, usize)>,
) -> Vec<(GroverEigenvalue, usize)> {
    let mut out: Vec<(GroverEigenvalue, usize)> = Vec::new();
    for (ev, m) in items {
        match out.iter_mut().find(|(e, _)| *e == ev) {
            Some(slot) => slot.1 += m,
            None => out.push((ev, m)),
        }
    }
    out.retain(|(_, m)| *m > 0);
    out.sort_by(|a, b| a.0.angle().total_cmp(&b.0.angle()));
    out
}

/// Monic minimal polynomial of `cos(2π/q)`.
pub fn cos_min_poly(q: usize) -> Polynomial {
    match q {
        1 => Polynomial::from_i64(&[-1, 1]),
        2 => Polynomial::from_i64(&[1, 1]),
        _ => {
            // Φ_q(z) = z^d R(z + 1/z) and z^j + z^-j = 2 T_j(cos θ)
            let phi = cyclotomic(q);
            let d = phi.degree().expect("nonzero") / 2;
            let mut result = Polynomial::constant(phi.coeff(d));
            let x = Polynomial::from_i64(&[0, 1]);
            let two_x = Polynomial::from_i64(&[0, 2]);
            let mut t_prev = Polynomial::one();
            let mut t = x.clone();
            for j in 1..=d {
                let two_a = phi.coeff(d + j) * rational::int(2);
                result = &result + &t.scale(&two_a);
                let next = &(&two_x * &t) - &t_prev;
                t_prev = t;
                t = next;
            }
            result.monic()
        }
    }
}

/// Exact roots of a polynomial of degree one or two, when real.
fn small_roots(p: &Polynomial) -> Option<Vec<QuadSurd>> {
    let p = p.monic();
    match p.degree()? {
        1 => Some(vec![QuadSurd::rational(-p.coeff(0))]),
        2 => {
            let b = p.coeff(1);
            let c = p.coeff(0);
            let disc = &b * &b - &c * rational::int(4);
            if disc.is_negative() {
                return None;
            }
            let half = rational::rat(1, 2);
            let root = QuadSurd::sqrt_of(&disc)?;
            let a = -&b * &half;
            if root.is_rational() {
                let r = &root.a * &half;
                return Some(vec![
                    QuadSurd::rational(&a + &r),
                    QuadSurd::rational(&a - &r),
                ]);
            }
            let d = BigInt::from(root.d);
            let plus = QuadSurd::new(a.clone(), &root.b * &half, &d)?;
            let minus = QuadSurd::new(a, -(&root.b * &half), &d)?;
            Some(vec![plus, minus])
        }
        _ => None,
    }
}

/// Numerical eigenvalues of `P` via the symmetric matrix `D^{-1/2} A D^{-1/2}`.
fn approximate_eigenvalues(g: &Graph) -> Vec<f64> {
    let n = g.vertex_count();
    let mut s = DMatrix::<f64>::zeros(n, n);
    for &(u, v) in g.edges() {
        let w = 1.0 / ((g.degree(u) * g.degree(v)) as f64).sqrt();
        s[(u - 1, v - 1)] = w;
        s[(v - 1, u - 1)] = w;
    }
    let mut values: Vec<f64> = SymmetricEigen::new(s).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    values
}

/// Characteristic polynomial `det(xI - P)` of the transition matrix.
pub fn transition_charpoly(g: &Graph) -> (Polynomial, BigInt) {
    let p = transition_matrix(g);
    let (l, ints) = p.integer_scaled();
    let a = Polynomial::from_bigints(&charpoly_integer(&ints));
    let lr = Rational::from_integer(l.clone());
    (a.scale_variable(&lr).monic(), l)
}

/// Exact eigenvalues of `P` with multiplicities.
pub fn transition_spectrum(g: &Graph) -> Result<Vec<(CosValue, usize)>> {
    let (chi, l) = transition_charpoly(g);
    let lf = l.to_f64().unwrap_or(f64::INFINITY);
    let approx = approximate_eigenvalues(g);
    let mut out: Vec<(CosValue, usize)> = Vec::new();
    for (factor, mult) in chi.square_free_decomposition() {
        let mult = mult as usize;
        let mut rest = factor;
        let deg = rest.degree().unwrap_or(0);
        let mut q = 1;
        while rest.degree().unwrap_or(0) > 0 && q <= 8 * deg * deg + 2 {
            let dq = if q <= 2 { 1 } else { totient(q) / 2 };
            if dq <= rest.degree().unwrap_or(0) {
                let psi = cos_min_poly(q);
                if let Some(quot) = rest.exact_div(&psi) {
                    rest = quot;
                    if dq <= 2 {
                        for r in small_roots(&psi).expect("real roots") {
                            out.push((CosValue::Surd(r), mult));
                        }
                    } else {
                        for k in
                            (1..q as u64).filter(|&k| 2 * k < q as u64 && k.gcd(&(q as u64)) == 1)
                        {
                            out.push((CosValue::Cyclotomic { k, q: q as u64 }, mult));
                        }
                    }
                }
            }
            q += 1;
        }
        for &r in &approx {
            if rest.degree().unwrap_or(0) == 0 {
                break;
            }
            let k = BigInt::from((r * lf).round() as i64);
            let root = Rational::new(k, l.clone());
            let lin = Polynomial::new(vec![-root.clone(), Rational::one()]);
            if let Some(quot) = rest.exact_div(&lin) {
                rest = quot;
                out.push((CosValue::Surd(QuadSurd::rational(root)), mult));
            }
        }
        'pairs: for (i, &r1) in approx.iter().enumerate() {
            for &r2 in &approx[i + 1..] {
                if rest.degree().unwrap_or(0) < 2 {
                    break 'pairs;
                }
                let sigma = Rational::new(BigInt::from(((r1 + r2) * lf).round() as i64), l.clone());
                let pi = Rational::new(BigInt::from((r1 * r2 * lf * lf).round() as i64), &l * &l);
                let quad = Polynomial::new(vec![pi, -sigma, Rational::one()]);
                if let Some(quot) = rest.exact_div(&quad) {
                    if let Some(roots) = small_roots(&quad) {
                        rest = quot;
                        out.extend(roots.into_iter().map(|r| (CosValue::Surd(r), mult)));
                    }
                }
            }
        }
        if rest.degree().unwrap_or(0) > 0 {
            return Err(Error::UnsupportedSpectrum {
                charpoly: chi.display_in("x"),
            });
        }
    }
    out.sort_by(|a, b| b.0.to_f64().total_cmp(&a.0.to_f64()));
    Ok(out)
}

/// Grover spectrum by the spectral mapping, with the `±1` correction for
/// `m ≠ n`.
pub fn grover_spectrum(g: &Graph) -> Result<SpectrumMultiset> {
    let transition = transition_spectrum(g)?;
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut rw: Vec<(GroverEigenvalue, usize)> = Vec::new();
    for (c, l) in &transition {
        match c {
            CosValue::Surd(s) if s.is_rational() && rational::is_unit(&s.a) => {
                rw.push((
                    GroverEigenvalue {
                        cos: c.clone(),
                        im_sign: 0,
                    },
                    2 * l,
                ));
            }
            _ => {
                rw.push((
                    GroverEigenvalue {
                        cos: c.clone(),
                        im_sign: 1,
                    },
                    *l,
                ));
                rw.push((
                    GroverEigenvalue {
                        cos: c.clone(),
                        im_sign: -1,
                    },
                    *l,
                ));
            }
        }
    }
    let mut rw = merge(rw);
    let mut complement = Vec::new();
    if m > n {
        complement.push((GroverEigenvalue::real(1), m - n));
        complement.push((GroverEigenvalue::real(-1), m - n));
    } else if m < n {
        for target in [GroverEigenvalue::real(1), GroverEigenvalue::real(-1)] {
            let slot = rw
                .iter_mut()
                .find(|(e, _)| *e == target)
                .filter(|(_, mult)| *mult >= n - m)
                .ok_or_else(|| {
                    Error::Domain(format!(
                        "eigenvalue {target} missing from the random-walk part"
                    ))
                })?;
            slot.1 -= n - m;
        }
        rw.retain(|(_, mult)| *mult > 0);
    }
    let entries = rw
        .into_iter()
        .map(|(eigenvalue, multiplicity)| SpectrumEntry {
            eigenvalue,
            multiplicity,
            part: SpectrumPart::Rw,
        })
        .chain(
            complement
                .into_iter()
                .map(|(eigenvalue, multiplicity)| SpectrumEntry {
                    eigenvalue,
                    multiplicity,
                    part: SpectrumPart::RwComplement,
                }),
        )
        .collect();
    Ok(SpectrumMultiset {
        vertex_count: n,
        edge_count: m,
        transition,
        entries,
    })
}
