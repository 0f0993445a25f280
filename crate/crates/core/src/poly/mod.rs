//! Sparse multivariate polynomials and Laurent polynomials with exact
//! coefficients, Gröbner bases and ideal arithmetic.

mod groebner;
mod ideal;
mod monomial;
mod parse;
mod polynomial;
mod ring;
pub mod univariate;
pub mod variety;

pub use groebner::{groebner_basis, reduce};
pub use ideal::{maximal_ideal, Ideal};
pub use monomial::{Monomial, TermOrder};
pub use parse::{parse_polynomial, Parser};
pub use polynomial::Polynomial;
pub use ring::{MonomialOrder, Ring, RingSpec};
