//! Exact computations with Bell–Rogalski algebras.
//!
//! A Bell–Rogalski datum `(R, t, σ, p, H, J)` over a commutative polynomial or
//! Laurent ring `R` determines the `Z^n`-graded algebra
//! `B = ⊕ I^(α) t^α` inside the iterated skew Laurent ring `R_p[t^±; σ]`.
//! This crate provides:
//!
//! - [`poly`]: sparse multivariate (Laurent) polynomials, Gröbner bases and ideals
//! - [`aut`]: scaled affine-monomial automorphisms of `R`
//! - [`brd`]: data, canonical ideals `I^(α)` and graded multiplication
//! - [`weight`]: breaks, `G_m` and the classification of simple weight modules
//! - [`structure`]: TGWA conversion, induced morphisms, fixed rings,
//!   twisted tensor products and GK dimension
//! - [`simplicity`]: simplicity verdicts with certificate trails
//!
//! The algebraic kernel (`poly`, `aut`, `brd`) is generic over the coefficient
//! [`Field`]; everything that needs integer factorization works over
//! [`Rational`].

pub mod arith;
pub mod aut;
pub mod brd;
mod error;
mod field;
pub mod report;
pub mod poly;
pub mod simplicity;
pub mod structure;
pub mod weight;

pub use error::{Error, Result};
pub use field::Field;
pub use report::{Check, Report};

/// Arbitrary-precision rationals, the default coefficient field.
pub type Rational = num_rational::BigRational;

pub type RingSpec = poly::RingSpec;
pub type Poly = poly::Polynomial<Rational>;
pub type RIdeal = poly::Ideal<Rational>;
pub type Aut = aut::Automorphism<Rational>;
pub type Datum = brd::BellRogalskiDatum<Rational>;
pub type Element = brd::GradedElement<Rational>;
pub type SkewElem = brd::SkewElement<Rational>;

/// Shorthand for an exact rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
