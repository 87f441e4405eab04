use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Column Hermite normal form `H = A·U`.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Pivot row of each nonzero column of `h`, strictly increasing.
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero columns of `H` (a basis of the column lattice).
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        (0..self.rank()).map(|j| self.h.column(j)).collect()
    }
}

fn col_axpy(cols: &mut [Vec<BigInt>], dst: usize, q: &BigInt, src: usize) {
    // cols[dst] -= q * cols[src]
    let (a, b) = if dst < src {
        let (lo, hi) = cols.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = cols.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// Column-style HNF with unimodular transform, see [`Hnf`].
pub fn hnf_full(a: &IntMatrix) -> Hnf {
    let m = a.rows();
    let n = a.cols();
    let mut ca: Vec<Vec<BigInt>> = (0..n).map(|j| a.column(j)).collect();
    let mut cu: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut v = alloc::vec![BigInt::zero(); n];
            v[j] = 1.into();
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut c = 0;
    for r in 0..m {
        if c == n {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for k in c..n {
                let v = &ca[k][r];
                if v.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(k),
                    Some(b) if v.abs() < ca[b][r].abs() => best = Some(k),
                    _ => {}
                }
            }
            let Some(b) = best else { break };
            ca.swap(c, b);
            cu.swap(c, b);
            let mut done = true;
            for k in c + 1..n {
                if ca[k][r].is_zero() {
                    continue;
                }
                let q = ca[k][r].div_floor(&ca[c][r]);
                col_axpy(&mut ca, k, &q, c);
                col_axpy(&mut cu, k, &q, c);
                if !ca[k][r].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if ca.get(c).is_some_and(|col| !col[r].is_zero()) {
            if ca[c][r].is_negative() {
                for x in ca[c].iter_mut() {
                    *x = -core::mem::take(x);
                }
                for x in cu[c].iter_mut() {
                    *x = -core::mem::take(x);
                }
            }
            for j in 0..c {
                let q = ca[j][r].div_floor(&ca[c][r]);
                if !q.is_zero() {
                    col_axpy(&mut ca, j, &q, c);
                    col_axpy(&mut cu, j, &q, c);
                }
            }
            pivots.push(r);
            c += 1;
        }
    }
    Hnf { h: IntMatrix::from_columns(&ca, m), u: IntMatrix::from_columns(&cu, n), pivots }
}

/// Column HNF: returns `(H, U)` with `H = A·U`.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let r = hnf_full(a);
    (r.h, r.u)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RatMatrix;

    fn check(a: &IntMatrix) -> Hnf {
        let r = hnf_full(a);
        assert_eq!(a.mul(&r.u), r.h);
        assert!(r.u.determinant().abs() == BigInt::from(1));
        for (j, &p) in r.pivots.iter().enumerate() {
            assert!(r.h.get(p, j).is_positive());
            for i in 0..p {
                assert!(r.h.get(i, j).is_zero());
            }
            for jj in 0..j {
                let v = r.h.get(p, jj);
                assert!(!v.is_negative() && v < r.h.get(p, j));
            }
        }
        for j in r.rank()..a.cols() {
            assert!(r.h.column(j).iter().all(|x| x.is_zero()));
        }
        r
    }

    #[test]
    fn identity_is_fixed() {
        let r = check(&IntMatrix::identity(4));
        assert_eq!(r.h, IntMatrix::identity(4));
        assert_eq!(r.u, IntMatrix::identity(4));
    }

    #[test]
    fn swap_reduces_to_identity() {
        let r = check(&IntMatrix::from_i64(&[&[0, 1], &[1, 0]]));
        assert_eq!(r.h, IntMatrix::identity(2));
    }

    #[test]
    fn rank_matches_rational_rank() {
        let a = IntMatrix::from_i64(&[&[2, 4, 6, 1], &[3, 6, 9, 0], &[1, 2, 3, 5]]);
        let r = check(&a);
        assert_eq!(r.rank(), RatMatrix::from_int(&a).rank());
    }
}
