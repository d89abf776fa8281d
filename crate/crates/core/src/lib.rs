//! Generalized inverses of square matrices over a ring with involution.

pub mod classical;
pub mod demo;
pub mod error;
pub mod float;
pub mod generator;
pub mod json;
pub mod linalg;
pub mod matrix;
pub mod pseudo_core;
pub mod scalar;
pub mod solve;
pub mod suite;

pub use classical::{equation_inverse, InverseKind, InverseResult};
pub use error::{Error, Result};
pub use float::{Method, Tolerance};
pub use json::{parse_matrix, AnyMatrix};
pub use matrix::{arith, ArithOp, Matrix};
pub use pseudo_core::{dual_pseudo_core_inverse, pseudo_core_inverse, Law, LawReport, Outcome, PseudoCoreResult};
pub use scalar::{
    gaussian, gaussian_ratio, ExactReal, ExactScalar, FloatReal, GaussianRational, Involution, RealScalar, RingContext,
    Scalar, ScalarMode,
};
pub use solve::{solve_linear_system, LinearConstraint, Term};
pub use suite::{run_suite, SuiteConfig, SuiteReport};

/// Exact matrices over the Gaussian rationals.
pub type ExactMatrix = Matrix<GaussianRational>;
/// Double-precision complex matrices.
pub type FloatMatrix = Matrix<num_complex::Complex64>;
/// Single-precision complex matrices.
pub type FloatMatrix32 = Matrix<num_complex::Complex32>;
