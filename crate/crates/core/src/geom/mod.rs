//! Coordinate tensor calculus over a [`Chart`](crate::expr::Chart).

mod field;
mod graded;
pub mod linalg;
mod restrict;
mod schouten;
mod tangent;
mod tensor;
#[cfg(test)]
mod tests;

pub use field::{lie_bracket, VectorField};
pub use graded::{
    contract, exterior_derivative, interior, lie_derivative, wedge, Contravariant, Covariant,
    DifferentialForm, Graded, LieDerivative, MultivectorField, Variance,
};
pub use linalg::{rank_q, solve_span, two_form_rank};
pub use restrict::LevelSet;
pub use schouten::schouten_bracket;
pub use tangent::{tangent_structure, TangentStructure};
pub use tensor::Tensor11;
