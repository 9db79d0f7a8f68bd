//! Continuum AAA rational approximation.
//!
//! The engine builds barycentric rational approximants on the unit interval,
//! the unit circle (or disk) and the imaginary axis (or right half-plane),
//! regenerating its sample grid from the current support points at every
//! step. Returned approximants are free of poles in the approximation domain.

pub mod barycentric;
mod cmath;
pub mod domain;
pub mod engine;
pub mod error;
pub mod funcspec;
pub mod kernels;
pub mod lawson;
pub mod report;

pub use barycentric::{prz, reval, BarycentricRational, PoleZeroReport};
pub use domain::{bad_pole, mobius_maps, xs, Domain, DomainKind, MOBIUS_SCALE};
pub use engine::{aaa_step, loewner, run, AaaOptions, AaaResult, ConvergenceRecord, Status};
pub use error::{Error, Result};
pub use funcspec::{parse, Expr, FunctionSpec};
pub use kernels::{arrowhead_pencil_eigenvalues, min_singular_vector, DenseMatrix};
pub use lawson::{lawson_refine, winding_number, ErrorCurve, LawsonOutcome, LawsonStatus};
pub use report::{error_curve_csv, history_csv, Model};
pub use num_complex::Complex64;
