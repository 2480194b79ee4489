//! Exact arithmetic toolkit for genus-zero Landau-Ginzburg mirror symmetry of
//! invertible polynomials.
//!
//! The A-side computes FJRW four-point correlators of `W` from orbifold line
//! bundle data; the B-side computes Saito-Givental correlators of `W^T` from
//! the Brieskorn lattice and a perturbative primitive form. Both sides work in
//! exact rational arithmetic.

pub mod amodel;
pub mod arith;
pub mod bmodel;
pub mod error;
pub mod jacobi;
pub mod linalg;
pub mod mirror;
pub mod monomial;
pub mod oracle;
pub mod poly;
pub mod selection;
pub mod symmetry;
pub mod verify;
pub mod wdvv;

pub use error::{LgError, Result};
pub use jacobi::{JacobiRing, RingElement};
pub use monomial::{Monomial, Polynomial};
pub use poly::{parse, AtomicKind, AtomicSummand, InvertiblePolynomial};
pub use symmetry::GroupElement;

/// Arbitrary-precision rational; the only scalar used by domain code.
pub type Rational = num_rational::BigRational;

/// Dense rational matrix.
pub type RatMatrix = linalg::Matrix<Rational>;
