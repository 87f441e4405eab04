use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{dot_rat, to_rat, IntFactorization, IntMatrix, LatticeSpec};

/// Certificate that `A·x = b` has no integer solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Infeasibility {
    /// `yᵀA = 0` and `yᵀb ≠ 0`: no rational solution either.
    Rational { y: Vec<BigRational> },
    /// `yᵀA` integral and `yᵀb` not integral; `y` has denominator `modulus`.
    Divisibility { y: Vec<BigRational>, modulus: BigInt },
}

impl Infeasibility {
    pub fn y(&self) -> &[BigRational] {
        match self {
            Infeasibility::Rational { y } | Infeasibility::Divisibility { y, .. } => y,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Infeasibility::Rational { .. })
    }

    /// Re-checks the defining identities from scratch (plain dot products).
    pub fn verify(&self, a: &IntMatrix, b: &[BigInt]) -> bool {
        let y = self.y();
        if y.len() != a.rows() || b.len() != a.rows() {
            return false;
        }
        let ya = a.left_mul_rat(y);
        let yb = dot_rat(y, &to_rat(b));
        match self {
            Infeasibility::Rational { .. } => ya.iter().all(|v| v.is_zero()) && !yb.is_zero(),
            Infeasibility::Divisibility { .. } => ya.iter().all(|v| v.is_integer()) && !yb.is_integer(),
        }
    }
}

/// Outcome of [`solve_integer`].
#[derive(Clone, Debug)]
pub enum IntSolution {
    Feasible { x: Vec<BigInt>, kernel: LatticeSpec },
    Infeasible(Infeasibility),
}

impl IntSolution {
    pub fn is_feasible(&self) -> bool {
        matches!(self, IntSolution::Feasible { .. })
    }
}

/// Solves `A·x = b` over ℤ: a particular solution plus a kernel basis, or an
/// infeasibility certificate. Sparse-stored matrices go through unit-pivot
/// elimination first; dense ones straight to the Smith form.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> IntSolution {
    assert_eq!(b.len(), a.rows(), "dimension mismatch");
    let f = IntFactorization::new(a, a.is_sparse());
    match f.solve(b) {
        Ok(x) => {
            let gens = f.kernel_basis().into_iter().map(|v| to_rat(&v)).collect();
            IntSolution::Feasible { x, kernel: LatticeSpec::new(a.cols(), gens) }
        }
        Err(c) => IntSolution::Infeasible(c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn identity_returns_b() {
        let a = IntMatrix::identity(3);
        let b = vec![BigInt::from(4), BigInt::from(-1), BigInt::from(7)];
        match solve_integer(&a, &b) {
            IntSolution::Feasible { x, kernel } => {
                assert_eq!(x, b);
                assert_eq!(kernel.rank(), 0);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn parity_witness() {
        let a = IntMatrix::from_i64(&[&[2]]);
        match solve_integer(&a, &[BigInt::from(3)]) {
            IntSolution::Infeasible(c) => {
                assert!(matches!(c, Infeasibility::Divisibility { .. }));
                assert!(c.verify(&a, &[BigInt::from(3)]));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn rational_witness() {
        let a = IntMatrix::from_i64(&[&[1, 1], &[2, 2]]);
        let b = [BigInt::from(1), BigInt::from(3)];
        match solve_integer(&a, &b) {
            IntSolution::Infeasible(c) => {
                assert!(c.is_rational());
                assert!(c.verify(&a, &b));
            }
            _ => panic!(),
        }
    }
}
