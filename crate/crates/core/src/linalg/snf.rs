use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `A = U·S·V` with `U`, `V` unimodular and `S` diagonal, `d₁ | d₂ | …`.
///
/// `left = U⁻¹` and `right = V⁻¹` are kept as well, so `left·A·right = S`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// Diagonal of `S` (length `min(rows, cols)`), zeros included.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// The nonzero invariant factors.
    pub fn nonzero_factors(&self) -> Vec<BigInt> {
        self.invariant_factors().into_iter().take(self.rank).collect()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    p: Vec<Vec<BigInt>>,
    pinv: Vec<Vec<BigInt>>,
    q: Vec<Vec<BigInt>>,
    qinv: Vec<Vec<BigInt>>,
}

fn ident(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::one();
            r
        })
        .collect()
}

fn row_sub(m: &mut [Vec<BigInt>], dst: usize, f: &BigInt, src: usize) {
    let (d, s) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= f * y;
        }
    }
}

fn col_sub(m: &mut [Vec<BigInt>], dst: usize, f: &BigInt, src: usize) {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let v = f * &row[src];
            row[dst] -= v;
        }
    }
}

fn col_swap(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

impl Work {
    // row_i -= f·row_t
    fn row_op(&mut self, i: usize, f: &BigInt, t: usize) {
        row_sub(&mut self.a, i, f, t);
        row_sub(&mut self.p, i, f, t);
        col_sub(&mut self.pinv, t, &-f, i);
    }

    // col_j -= f·col_t
    fn col_op(&mut self, j: usize, f: &BigInt, t: usize) {
        col_sub(&mut self.a, j, f, t);
        col_sub(&mut self.q, j, f, t);
        row_sub(&mut self.qinv, t, &-f, j);
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.p.swap(i, j);
            col_swap(&mut self.pinv, i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            col_swap(&mut self.a, i, j);
            col_swap(&mut self.q, i, j);
            self.qinv.swap(i, j);
        }
    }

    fn negate_row(&mut self, t: usize) {
        for x in self.a[t].iter_mut().chain(self.p[t].iter_mut()) {
            *x = -core::mem::take(x);
        }
        for row in self.pinv.iter_mut() {
            row[t] = -core::mem::take(&mut row[t]);
        }
    }
}

fn min_abs_in(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if v.abs() >= a[bi][bj].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form with transforms; deterministic pivoting.
pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let m = a.rows();
    let n = a.cols();
    let mut w = Work { a: a.to_dense_rows(), p: ident(m), pinv: ident(m), q: ident(n), qinv: ident(n) };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_in(&w.a, t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !w.a[i][t].is_zero() {
                    let f = w.a[i][t].div_floor(&w.a[t][t]);
                    w.row_op(i, &f, t);
                    clean &= w.a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !w.a[t][j].is_zero() {
                    let f = w.a[t][j].div_floor(&w.a[t][t]);
                    w.col_op(j, &f, t);
                    clean &= w.a[t][j].is_zero();
                }
            }
            if !clean {
                // bring the smallest remaining entry of row/column t to the corner
                let mut best = (t, t);
                for i in t + 1..m {
                    if !w.a[i][t].is_zero() && w.a[i][t].abs() < w.a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !w.a[t][j].is_zero() && w.a[t][j].abs() < w.a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            let piv = w.a[t][t].clone();
            let bad = (t + 1..m).find_map(|i| {
                (t + 1..n).find(|&j| !(&w.a[i][j] % &piv).is_zero()).map(|_| i)
            });
            match bad {
                Some(i) => {
                    // row_t += row_i, then re-run the elimination
                    w.row_op(t, &-BigInt::one(), i);
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let rank = t;
    let mut s = IntMatrix::zeros(m, n);
    for i in 0..rank {
        s.set(i, i, w.a[i][i].clone());
    }
    SmithDecomposition {
        u: IntMatrix::from_rows(w.pinv, m),
        s,
        v: IntMatrix::from_rows(w.qinv, n),
        left: IntMatrix::from_rows(w.p, m),
        right: IntMatrix::from_rows(w.q, n),
        rank,
    }
}
