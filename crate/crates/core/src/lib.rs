//! Exact computational algebra for Milnor algebras of projective
//! hypersurfaces: Gröbner bases, Hilbert data, minimal resolutions of
//! Jacobian ideals, mixed multiplicities and polar degrees, and hyperplane
//! arrangement lattices.
//!
//! All algebra is generic over the coefficient [`Field`]. The aliases below
//! name the instantiations used in practice.

pub mod arrangements;
pub mod atlas;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod linalg;
pub mod polar;
pub mod polycore;
pub mod report;
pub mod resolution;

pub use error::{Error, Result};
pub use field::{CoefficientField, Field, Fp};
pub use polycore::{parse_polynomial, Monomial, MonomialOrder, Polynomial, Ring};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
/// Default prime field.
pub type F32003 = Fp<32003>;
pub type F65537 = Fp<65537>;
pub type F1000003 = Fp<1000003>;

pub type RatPoly = Polynomial<Rational>;
pub type ModPoly = Polynomial<F32003>;
