//! Free supercommutative polynomial algebra `k[t_1..t_r | θ_1..θ_s]` over ℚ.
//!
//! Odd variables anticommute and square to zero. Monomials keep their odd
//! factors in increasing index order and every sign is settled at
//! construction, so two equal elements always have identical term maps.
//! Odd derivatives are left derivatives throughout the crate.

mod monomial;
mod poly;
mod signature;

pub use monomial::Monomial;
pub use poly::{Point, SuperPolynomial};
pub use signature::{CoordKind, Coordinate, Parity, Signature, MAX_ODD};

pub(crate) use signature::same_signature;

pub type Rational = num_rational::BigRational;

/// Integer as an exact rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
