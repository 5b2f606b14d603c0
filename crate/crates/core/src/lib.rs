//! Exact symbolic kernel for free supercommutative polynomial algebras, their
//! Lie superalgebras of super derivations, and certificates showing that any
//! nonzero vector field generates the whole algebra of vector fields as a Lie
//! ideal.

pub mod certify;
pub mod cli;
pub mod error;
pub mod fields;
pub mod gen;
pub mod kernel;
pub mod oracle;
pub mod textio;

pub use error::{Error, Result};
pub use fields::{GradedField, VectorField};
pub use kernel::{Coordinate, Parity, Point, Rational, Signature, SuperPolynomial};
