//! Absolute Hurwitz zeta and absolute zeta functions.
//!
//! [`kurokawa`] writes a cyclotomic-form function as signed multiple Hurwitz
//! zeta and multiple gamma terms, [`multiple`] evaluates those by reduction to
//! the Hurwitz zeta in [`special`], and [`mellin`] computes the defining
//! integral directly as an independent route.

pub mod kurokawa;
pub mod mellin;
pub mod multiple;
pub mod special;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A numeric value with an absolute error estimate, serialised as
/// `{"re", "im", "abs_err"}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "NumericJson", into = "NumericJson")]
pub struct NumericValue {
    pub value: Complex64,
    pub abs_err: f64,
}

impl NumericValue {
    pub fn new(value: Complex64, abs_err: f64) -> Self {
        Self { value, abs_err }
    }

    pub fn exact(value: Complex64) -> Self {
        Self {
            value,
            abs_err: 0.0,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct NumericJson {
    re: f64,
    im: f64,
    abs_err: f64,
}

impl From<NumericValue> for NumericJson {
    fn from(v: NumericValue) -> Self {
        Self {
            re: v.value.re,
            im: v.value.im,
            abs_err: v.abs_err,
        }
    }
}

impl From<NumericJson> for NumericValue {
    fn from(v: NumericJson) -> Self {
        Self {
            value: Complex64::new(v.re, v.im),
            abs_err: v.abs_err,
        }
    }
}
