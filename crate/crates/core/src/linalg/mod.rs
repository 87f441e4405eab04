//! Exact integer and rational linear algebra.
//!
//! Conventions used throughout the crate:
//! - Hermite normal form is column style: `H = A·U` with `U` unimodular,
//!   `H` lower echelon, pivots positive, and entries to the left of a pivot
//!   reduced into `[0, pivot)`.
//! - Smith form is `A = U·S·V`; the decomposition also keeps the inverse
//!   transforms `P = U⁻¹`, `Q = V⁻¹` so that `P·A·Q = S`.
//! - Pivot choice is deterministic: smallest absolute value, ties broken by
//!   the smallest `(row, col)` pair.

mod factor;
mod hnf;
mod lattice;
mod matrix;
mod rat;
mod snf;
mod solve;

pub use factor::{IntFactorization, PlusObstruction, PlusStage, RowValue};
pub use hnf::{hnf, hnf_full, Hnf};
pub use lattice::{canonical_coset_rep, LatticeError, LatticeSpec, Reducer};
pub use matrix::{IntMatrix, SPARSE_THRESHOLD};
pub use rat::RatMatrix;
pub use snf::{snf, SmithDecomposition};
pub use solve::{solve_integer, Infeasibility, IntSolution};

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Floor of a rational number.
pub fn floor_rat(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Least common multiple of the denominators of `v` (1 for an empty slice).
pub fn common_denominator(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector by `den` and returns the integer vector.
/// Panics if the result is not integral.
pub fn scale_to_int(v: &[BigRational], den: &BigInt) -> Vec<BigInt> {
    v.iter()
        .map(|x| {
            let y = x * BigRational::from_integer(den.clone());
            assert!(y.is_integer(), "scale_to_int: not integral");
            y.to_integer()
        })
        .collect()
}

/// Integer vector to rational vector.
pub fn to_rat(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

/// Exact dot product of rational vectors.
pub fn dot_rat(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Content (gcd of entries, non-negative) of an integer vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Divides an integer vector by its content and makes the first nonzero
/// entry positive. Returns `None` for the zero vector.
pub fn primitive_int(v: &[BigInt]) -> Option<Vec<BigInt>> {
    let g = content(v);
    if g.is_zero() {
        return None;
    }
    let first_neg = v.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false);
    let g = if first_neg { -g } else { g };
    Some(v.iter().map(|x| x / &g).collect())
}

/// Primitive integral representative of the line through a nonzero rational
/// vector (first nonzero coordinate positive).
pub fn primitive_rat(v: &[BigRational]) -> Option<Vec<BigInt>> {
    let den = common_denominator(v);
    primitive_int(&scale_to_int(v, &den))
}

/// The distinct prime divisors of `|n|` (empty for 0 and ±1), ascending.
pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2u32);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            out.push(p.clone());
            while (&n % &p).is_zero() {
                n /= &p;
            }
        }
        p += 1u32;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}
