//! Exact zeta functions of Grover walks on graphs.
//!
//! The crate builds the Grover matrix of a simple connected graph over the
//! rationals, computes `det(I - uU)` exactly, checks the Ihara, U-to-P determinant and
//! automorphy identities, and turns the resulting rational functions into
//! absolute zeta functions expressed with multiple Hurwitz zeta, multiple gamma
//! and multiple sine functions.
//!
//! Module map:
//! - [`graph`]: graphs, families, the symmetric digraph of arcs
//! - [`matrix`]: Grover, transition, adjacency and degree matrices
//! - [`poly`]: exact polynomials, rational functions, determinants, unit-basis factoring
//! - [`zeta`]: Grover and Ihara zetas, the U-to-P determinant identity, automorphic weight
//! - [`spectrum`]: exact Grover spectra via the spectral mapping
//! - [`absolute`]: absolute Hurwitz/absolute zeta machinery and special functions
//! - [`complete`]: the complete-graph series route

pub mod absolute;
pub mod complete;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod spectrum;
pub mod zeta;

pub use absolute::kurokawa::{AbsoluteZetaExpression, CyclotomicForm};
pub use absolute::NumericValue;
pub use complete::{CompleteGraphParams, PSeries};
pub use error::{Error, Result};
pub use graph::{ArcTable, Graph, GraphFamily};
pub use matrix::{BinaryMatrix, RationalMatrix};
pub use poly::{Polynomial, RationalFunction, UnitFactoredForm};
pub use rational::Rational;
pub use spectrum::{GroverEigenvalue, SpectrumMultiset};
