//! Exact workbench for Kontsevich's obstruction scheme on tropical abelian
//! fourfolds of Weil type.
//!
//! Everything is exact: integers are [`BigInt`], rationals are
//! [`BigRational`]. No floating point is used anywhere.
//!
//! Module map:
//! - [`linalg`]: integer/rational matrices, Hermite and Smith forms,
//!   Diophantine solving with certificates, lattices.
//! - [`multilinear`]: index conventions for the lattices Γ2, Γp, ∧²Γ2,
//!   the symmetric squares and the target `T`, plus polarization.
//! - [`poly`]: polynomials in the parameters a, b, c, e.
//! - [`weil`]: the polarization matrix `Q`, the Γ1 embedding, complex
//!   multiplication and the classes θ, w1, w2.
//! - [`hodge`]: the eigenwave map and the Hodge kernel.
//! - [`chains`]: triangle/parallelogram chains, `vol`, the flag map α and
//!   polygon subdivision.
//! - [`obstruction`]: the λ-ansatz linear system, its solvers and scans.
#![no_std]

extern crate alloc;

pub mod chains;
pub mod hodge;
pub mod linalg;
pub mod multilinear;
pub mod obstruction;
pub mod poly;
pub mod weil;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Convenience: a rational from an `i64`.
pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Convenience: the rational `n/d`.
pub fn qq(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience: an integer from an `i64`.
pub fn z(n: i64) -> BigInt {
    BigInt::from(n)
}
