//! Exact symbolic tensor calculus on coordinate charts, with verification
//! suites for realizations of the Poincaré algebra by vector fields, Jacobi
//! brackets on the mass shell, and Lagrangian brackets on the tangent bundle.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod error;
pub mod expr;
pub mod geom;
pub mod report;
pub mod sample;
pub mod suites;

pub use error::{Error, Result};
pub use algebra::{LieAlgebraSpec, Realization};
pub use expr::{Atom, Chart, Expr, Point, Q};
pub use geom::{DifferentialForm, MultivectorField, Tensor11, VectorField};
pub use report::{Check, Report, Status};
pub use suites::{run_suite, Options};
