//! Exact computer algebra for the A-classical Yang-Baxter equation over
//! finite-dimensional metric algebras.

pub mod algebra;
pub mod bialgebra;
pub mod cybe;
pub mod dnalg;
pub mod error;
pub mod json;
pub mod linalg;
pub mod scalar;
pub mod series;
pub mod stolin;
pub mod tensor;

pub use algebra::{Algebra, CategoryReport, MetricAlgebra};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use scalar::{primitive_root, Scalar};
pub use series::{bernoulli_expansion, Coefficient, Laurent, Series, Series1, Series2, Series3};
pub use tensor::{Element, Tensor, Tensor2, Tensor3};
