//! Sparse exact factorization: unit-pivot elimination followed by a dense
//! Smith form of the (small) remainder.
//!
//! After the unit phase the rows split into pivot rows (each owning one
//! column with a ±1 entry that no later row touches), rows that became zero,
//! and remainder rows supported on the remainder columns. The Smith form of
//! the whole matrix is `1^{#pivots} ⊕ SNF(remainder)`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{snf, IntMatrix, Infeasibility, SmithDecomposition};

/// Values that can ride along row operations (`self -= f·other`).
pub trait RowValue: Clone {
    fn sub_scaled(&mut self, f: &BigInt, other: &Self);
    fn zero_like(&self) -> Self;
    fn is_zero_value(&self) -> bool;
}

impl RowValue for BigInt {
    fn sub_scaled(&mut self, f: &BigInt, other: &Self) {
        if !other.is_zero() {
            *self -= f * other;
        }
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl RowValue for BigRational {
    fn sub_scaled(&mut self, f: &BigInt, other: &Self) {
        if !other.is_zero() {
            *self -= BigRational::from_integer(f.clone()) * other;
        }
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl<T: RowValue> RowValue for Vec<T> {
    fn sub_scaled(&mut self, f: &BigInt, other: &Self) {
        for (a, b) in self.iter_mut().zip(other) {
            a.sub_scaled(f, b);
        }
    }
    fn zero_like(&self) -> Self {
        self.iter().map(|x| x.zero_like()).collect()
    }
    fn is_zero_value(&self) -> bool {
        self.iter().all(|x| x.is_zero_value())
    }
}

/// Where [`IntFactorization::solve_plus`] failed: the transformed value
/// `value` is not a multiple of `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlusObstruction {
    pub stage: PlusStage,
    pub modulus: BigInt,
    pub value: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlusStage {
    /// A row that became zero in the unit phase.
    ZeroRow(usize),
    /// A row of the remainder's Smith form.
    Remainder(usize),
}

#[derive(Clone, Debug)]
struct Pivot {
    row: usize,
    col: usize,
    /// ±1
    value: BigInt,
    entries: Vec<(usize, BigInt)>,
}

/// Reusable factorization of an integer matrix, see the module docs.
#[derive(Clone, Debug)]
pub struct IntFactorization {
    nrows: usize,
    ncols: usize,
    /// `(target, source, f)`: row_target -= f·row_source, in order.
    ops: Vec<(u32, u32, BigInt)>,
    pivots: Vec<Pivot>,
    zero_rows: Vec<usize>,
    rem_rows: Vec<usize>,
    rem_cols: Vec<usize>,
    rem: SmithDecomposition,
    free_cols: Vec<usize>,
}

fn axpy_sparse(
    target: &[(usize, BigInt)],
    f: &BigInt,
    src: &[(usize, BigInt)],
    mut on_add: impl FnMut(usize),
    mut on_remove: impl FnMut(usize),
) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < src.len() {
        let ci = target.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = src.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push(target[i].clone());
            i += 1;
        } else if cj < ci {
            let v = -(f * &src[j].1);
            if !v.is_zero() {
                on_add(cj);
                out.push((cj, v));
            }
            j += 1;
        } else {
            let v = &target[i].1 - f * &src[j].1;
            if v.is_zero() {
                on_remove(ci);
            } else {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl IntFactorization {
    /// Factorizes `a`. With `unit_phase = false` the whole matrix goes to
    /// the dense Smith form (useful as an independent cross-check).
    pub fn new(a: &IntMatrix, unit_phase: bool) -> Self {
        Self::from_rows(a.to_sparse_rows(), a.cols(), unit_phase)
    }

    pub fn from_rows(rows: Vec<Vec<(usize, BigInt)>>, ncols: usize, unit_phase: bool) -> Self {
        let nrows = rows.len();
        let mut rows = rows;
        for r in rows.iter_mut() {
            r.sort_by_key(|e| e.0);
            r.retain(|e| !e.1.is_zero());
        }
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
        for (i, r) in rows.iter().enumerate() {
            for (c, _) in r {
                col_rows[*c].insert(i);
            }
        }
        let mut alive = vec![true; nrows];
        let mut ops = Vec::new();
        let mut pivots = Vec::new();
        if unit_phase {
            loop {
                let mut best: Option<(usize, usize, usize)> = None;
                'scan: for (i, r) in rows.iter().enumerate() {
                    if !alive[i] || r.is_empty() {
                        continue;
                    }
                    for (c, v) in r {
                        if !v.is_one() && !(-v).is_one() {
                            continue;
                        }
                        let cost = (r.len() - 1) * (col_rows[*c].len() - 1);
                        if best.is_none_or(|b| cost < b.0) {
                            best = Some((cost, i, *c));
                            if cost == 0 {
                                break 'scan;
                            }
                        }
                    }
                }
                let Some((_, i, c)) = best else { break };
                let prow = core::mem::take(&mut rows[i]);
                let pv = prow.iter().find(|e| e.0 == c).unwrap().1.clone();
                let others: Vec<usize> = col_rows[c].iter().copied().filter(|&j| j != i).collect();
                for j in others {
                    let a_jc = rows[j].iter().find(|e| e.0 == c).unwrap().1.clone();
                    let f = &a_jc * &pv;
                    let mut added = Vec::new();
                    let mut removed = Vec::new();
                    let new = axpy_sparse(&rows[j], &f, &prow, |cc| added.push(cc), |cc| removed.push(cc));
                    for cc in added {
                        col_rows[cc].insert(j);
                    }
                    for cc in removed {
                        col_rows[cc].remove(&j);
                    }
                    rows[j] = new;
                    ops.push((j as u32, i as u32, f));
                }
                for (cc, _) in &prow {
                    col_rows[*cc].remove(&i);
                }
                alive[i] = false;
                pivots.push(Pivot { row: i, col: c, value: pv, entries: prow });
            }
        }
        let mut zero_rows = Vec::new();
        let mut rem_rows = Vec::new();
        for i in 0..nrows {
            if !alive[i] {
                continue;
            }
            if rows[i].is_empty() {
                zero_rows.push(i);
            } else {
                rem_rows.push(i);
            }
        }
        let mut colset = BTreeSet::new();
        for &i in &rem_rows {
            for (c, _) in &rows[i] {
                colset.insert(*c);
            }
        }
        let rem_cols: Vec<usize> = colset.into_iter().collect();
        let pos: alloc::collections::BTreeMap<usize, usize> =
            rem_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut dense = IntMatrix::dense_zeros(rem_rows.len(), rem_cols.len());
        for (k, &i) in rem_rows.iter().enumerate() {
            for (c, v) in &rows[i] {
                dense.set(k, pos[c], v.clone());
            }
        }
        let rem = snf(&dense);
        let mut is_piv = vec![false; ncols];
        for p in &pivots {
            is_piv[p.col] = true;
        }
        for &c in &rem_cols {
            is_piv[c] = true;
        }
        let free_cols = (0..ncols).filter(|&c| !is_piv[c]).collect();
        IntFactorization { nrows, ncols, ops, pivots, zero_rows, rem_rows, rem_cols, rem, free_cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn unit_pivots(&self) -> usize {
        self.pivots.len()
    }

    pub fn remainder_shape(&self) -> (usize, usize) {
        (self.rem_rows.len(), self.rem_cols.len())
    }

    pub fn rank(&self) -> usize {
        self.pivots.len() + self.rem.rank
    }

    /// Nonzero invariant factors of the whole matrix, ascending.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut f = vec![BigInt::one(); self.pivots.len()];
        f.extend(self.rem.nonzero_factors());
        f
    }

    /// Dimension of the left kernel.
    pub fn corank(&self) -> usize {
        self.nrows - self.rank()
    }

    /// Applies the recorded unit-phase row operations to a column of values.
    pub fn apply_ops<V: RowValue>(&self, r: &mut [V]) {
        assert_eq!(r.len(), self.nrows);
        for (t, s, f) in &self.ops {
            let (t, s) = (*t as usize, *s as usize);
            if t < s {
                let (lo, hi) = r.split_at_mut(s);
                lo[t].sub_scaled(f, &hi[0]);
            } else {
                let (lo, hi) = r.split_at_mut(t);
                hi[0].sub_scaled(f, &lo[s]);
            }
        }
    }

    /// Pulls back a row functional on the post-elimination rows to the
    /// original rows: returns `y'` with `y'·A = y·(P₁A)`.
    pub fn pull_back(&self, y: &mut [BigRational]) {
        assert_eq!(y.len(), self.nrows);
        for (t, s, f) in self.ops.iter().rev() {
            let (t, s) = (*t as usize, *s as usize);
            if !y[t].is_zero() {
                let v = BigRational::from_integer(f.clone()) * &y[t];
                y[s] -= v;
            }
        }
    }

    /// Obstruction values of a right-hand side after the row ops: one value
    /// per left-kernel basis vector. All zero iff `A·x = b` is solvable
    /// over ℚ. Works for any value type (scalars, vectors, …).
    pub fn obstructions<V: RowValue>(&self, transformed: &[V]) -> Vec<V> {
        let mut out: Vec<V> = self.zero_rows.iter().map(|&i| transformed[i].clone()).collect();
        for i in self.rem.rank..self.rem_rows.len() {
            out.push(self.rem_combination(i, transformed));
        }
        out
    }

    /// Row `i` of the remainder's left transform applied to the
    /// transformed right-hand side.
    pub fn rem_combination<V: RowValue>(&self, i: usize, transformed: &[V]) -> V {
        let mut acc = transformed[0].zero_like();
        for (k, &row) in self.rem_rows.iter().enumerate() {
            let c = self.rem.left.get(i, k);
            if !c.is_zero() {
                acc.sub_scaled(&-c, &transformed[row]);
            }
        }
        acc
    }

    /// Nonzero invariant factors of the remainder block (those > 1 are the
    /// only non-unit invariant factors of the matrix).
    pub fn remainder_factors(&self) -> Vec<BigInt> {
        self.rem.nonzero_factors()
    }

    /// Rank of the remainder block.
    pub fn remainder_rank(&self) -> usize {
        self.rem.rank
    }

    /// Left-kernel basis vectors (over the original rows), in the same order
    /// as [`obstructions`](Self::obstructions). Each is integral.
    pub fn left_kernel_vector(&self, k: usize) -> Vec<BigRational> {
        let mut y = vec![BigRational::zero(); self.nrows];
        if k < self.zero_rows.len() {
            y[self.zero_rows[k]] = BigRational::one();
        } else {
            let i = self.rem.rank + (k - self.zero_rows.len());
            for (kk, &row) in self.rem_rows.iter().enumerate() {
                y[row] = BigRational::from_integer(self.rem.left.get(i, kk).clone());
            }
        }
        self.pull_back(&mut y);
        y
    }

    fn back_substitute(&self, r: &[BigInt], x: &mut [BigInt]) {
        for p in self.pivots.iter().rev() {
            let mut acc = r[p.row].clone();
            for (c, v) in &p.entries {
                if *c != p.col && !x[*c].is_zero() {
                    acc -= v * &x[*c];
                }
            }
            x[p.col] = acc * &p.value;
        }
    }

    /// Solves `A·x = b` over ℤ, or returns a certificate of infeasibility.
    pub fn solve(&self, b: &[BigInt]) -> Result<Vec<BigInt>, Infeasibility> {
        let mut r = b.to_vec();
        self.apply_ops(&mut r);
        for (k, &z) in self.zero_rows.iter().enumerate() {
            if !r[z].is_zero() {
                return Err(Infeasibility::Rational { y: self.left_kernel_vector(k) });
            }
        }
        let nrem = self.rem_rows.len();
        let mut zvals = Vec::with_capacity(nrem);
        for i in 0..nrem {
            let mut acc = BigInt::zero();
            for (k, &row) in self.rem_rows.iter().enumerate() {
                let c = self.rem.left.get(i, k);
                if !c.is_zero() {
                    acc += c * &r[row];
                }
            }
            zvals.push(acc);
        }
        for (i, zi) in zvals.iter().enumerate().skip(self.rem.rank) {
            if !zi.is_zero() {
                let k = self.zero_rows.len() + (i - self.rem.rank);
                return Err(Infeasibility::Rational { y: self.left_kernel_vector(k) });
            }
        }
        let mut w = vec![BigInt::zero(); self.rem_cols.len()];
        for i in 0..self.rem.rank {
            let s = self.rem.s.get(i, i);
            let (qt, rm) = zvals[i].div_rem(s);
            if !rm.is_zero() {
                let mut y = vec![BigRational::zero(); self.nrows];
                for (k, &row) in self.rem_rows.iter().enumerate() {
                    y[row] = BigRational::new(self.rem.left.get(i, k).clone(), s.clone());
                }
                self.pull_back(&mut y);
                return Err(Infeasibility::Divisibility { y, modulus: s.clone() });
            }
            w[i] = qt;
        }
        let mut x = vec![BigInt::zero(); self.ncols];
        for (j, &c) in self.rem_cols.iter().enumerate() {
            let mut acc = BigInt::zero();
            for (i, wi) in w.iter().enumerate().take(self.rem.rank) {
                let q = self.rem.right.get(j, i);
                if !q.is_zero() && !wi.is_zero() {
                    acc += q * wi;
                }
            }
            x[c] = acc;
        }
        self.back_substitute(&r, &mut x);
        Ok(x)
    }

    /// Inverse of [`apply_ops`](Self::apply_ops).
    pub fn unapply_ops<V: RowValue>(&self, r: &mut [V]) {
        assert_eq!(r.len(), self.nrows);
        for (t, s, f) in self.ops.iter().rev() {
            let (t, s) = (*t as usize, *s as usize);
            let nf = -f;
            if t < s {
                let (lo, hi) = r.split_at_mut(s);
                lo[t].sub_scaled(&nf, &hi[0]);
            } else {
                let (lo, hi) = r.split_at_mut(t);
                hi[0].sub_scaled(&nf, &lo[s]);
            }
        }
    }

    /// Solves `A·x + δ·k = b` over ℤ (`k` free on every row), i.e. decides
    /// `b ∈ im A + δℤⁿ`. With `δ = 0` this is plain integer solving.
    pub fn solve_plus(&self, b: &[BigInt], delta: &BigInt) -> Result<(Vec<BigInt>, Vec<BigInt>), PlusObstruction> {
        assert_eq!(b.len(), self.nrows);
        let mut r = b.to_vec();
        self.apply_ops(&mut r);
        let mut kappa = vec![BigInt::zero(); self.nrows];
        let split = |v: &BigInt, m: &BigInt| -> Option<BigInt> {
            if m.is_zero() {
                v.is_zero().then(BigInt::zero)
            } else {
                let (q, rem) = v.div_rem(m);
                rem.is_zero().then_some(q)
            }
        };
        for &z in &self.zero_rows {
            match split(&r[z], delta) {
                Some(k) => kappa[z] = k,
                None => {
                    return Err(PlusObstruction { stage: PlusStage::ZeroRow(z), modulus: delta.clone(), value: r[z].clone() })
                }
            }
        }
        let nrem = self.rem_rows.len();
        let mut a = vec![BigInt::zero(); self.rem_cols.len()];
        let mut c = vec![BigInt::zero(); nrem];
        for i in 0..nrem {
            let mut w = BigInt::zero();
            for (k, &row) in self.rem_rows.iter().enumerate() {
                let l = self.rem.left.get(i, k);
                if !l.is_zero() {
                    w += l * &r[row];
                }
            }
            if i < self.rem.rank {
                let s = self.rem.s.get(i, i);
                let eg = s.extended_gcd(delta);
                let g = eg.gcd;
                let Some(m) = split(&w, &g) else {
                    return Err(PlusObstruction { stage: PlusStage::Remainder(i), modulus: g, value: w });
                };
                a[i] = &m * &eg.x;
                c[i] = &m * &eg.y;
            } else {
                match split(&w, delta) {
                    Some(k) => c[i] = k,
                    None => {
                        return Err(PlusObstruction { stage: PlusStage::Remainder(i), modulus: delta.clone(), value: w })
                    }
                }
            }
        }
        let mut x = vec![BigInt::zero(); self.ncols];
        for (j, &col) in self.rem_cols.iter().enumerate() {
            let mut acc = BigInt::zero();
            for (i, ai) in a.iter().enumerate().take(self.rem.rank) {
                let q = self.rem.right.get(j, i);
                if !q.is_zero() && !ai.is_zero() {
                    acc += q * ai;
                }
            }
            x[col] = acc;
        }
        // κ on remainder rows: r_rem − Rem·x_rem = δ·U·c
        for (k, &row) in self.rem_rows.iter().enumerate() {
            let mut acc = BigInt::zero();
            for (i, ci) in c.iter().enumerate() {
                let u = self.rem.u.get(k, i);
                if !u.is_zero() && !ci.is_zero() {
                    acc += u * ci;
                }
            }
            kappa[row] = acc;
        }
        let shifted: Vec<BigInt> = r.iter().zip(&kappa).map(|(ri, ki)| ri - delta * ki).collect();
        self.back_substitute(&shifted, &mut x);
        self.unapply_ops(&mut kappa);
        Ok((x, kappa))
    }

    /// Certificate for a [`PlusObstruction`]: a rational `y` over the
    /// original rows with `yᵀA` integral, `δ·y` integral and `yᵀb` not
    /// integral.
    pub fn plus_certificate(&self, ob: &PlusObstruction) -> Vec<BigRational> {
        assert!(!ob.modulus.is_zero(), "zero modulus means a rational obstruction");
        let mut y = vec![BigRational::zero(); self.nrows];
        match ob.stage {
            PlusStage::ZeroRow(z) => y[z] = BigRational::new(BigInt::one(), ob.modulus.clone()),
            PlusStage::Remainder(i) => {
                for (k, &row) in self.rem_rows.iter().enumerate() {
                    y[row] = BigRational::new(self.rem.left.get(i, k).clone(), ob.modulus.clone());
                }
            }
        }
        self.pull_back(&mut y);
        y
    }

    /// A ℤ-basis of the integer kernel `{x : A·x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let zero_rhs = vec![BigInt::zero(); self.nrows];
        let mut out = Vec::new();
        for &c in &self.free_cols {
            let mut x = vec![BigInt::zero(); self.ncols];
            x[c] = BigInt::one();
            self.back_substitute(&zero_rhs, &mut x);
            out.push(x);
        }
        for i in self.rem.rank..self.rem_cols.len() {
            let mut x = vec![BigInt::zero(); self.ncols];
            for (j, &c) in self.rem_cols.iter().enumerate() {
                x[c] = self.rem.right.get(j, i).clone();
            }
            self.back_substitute(&zero_rhs, &mut x);
            out.push(x);
        }
        out
    }

    /// Number of kernel basis vectors, without building them.
    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RatMatrix;

    #[test]
    fn agrees_with_dense_on_small_systems() {
        let a = IntMatrix::from_i64(&[&[1, 2, 0, 3], &[0, 1, 1, 1], &[2, 5, 1, 7], &[0, 0, 2, 4]]);
        for unit in [false, true] {
            let f = IntFactorization::new(&a, unit);
            assert_eq!(f.rank(), RatMatrix::from_int(&a).rank());
            let b = a.mul_vec(&[3.into(), (-1).into(), 2.into(), 5.into()]);
            let x = f.solve(&b).unwrap();
            assert_eq!(a.mul_vec(&x), b);
            for k in f.kernel_basis() {
                assert!(a.mul_vec(&k).iter().all(|v| v.is_zero()));
            }
            assert_eq!(f.kernel_basis().len(), f.nullity());
        }
    }

    #[test]
    fn solve_plus_modular() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3], &[1, 1], &[4, 6]]);
        let f = IntFactorization::new(&a, true);
        let check = |b: &[i64], delta: i64| -> bool {
            let b: Vec<BigInt> = b.iter().map(|&v| BigInt::from(v)).collect();
            let dl = BigInt::from(delta);
            match f.solve_plus(&b, &dl) {
                Ok((x, k)) => {
                    let ax = a.mul_vec(&x);
                    for i in 0..4 {
                        assert_eq!(&ax[i] + &dl * &k[i], b[i]);
                    }
                    true
                }
                Err(ob) if ob.modulus.is_zero() => {
                    // rational obstruction: only possible without δ
                    assert_eq!(delta, 0);
                    let ar = crate::linalg::RatMatrix::from_int(&a);
                    let br: Vec<BigRational> = b.iter().map(|v| BigRational::from_integer(v.clone())).collect();
                    assert!(ar.solve(&br).is_none());
                    false
                }
                Err(ob) => {
                    let y = f.plus_certificate(&ob);
                    let ya = a.left_mul_rat(&y);
                    assert!(ya.iter().all(|v| v.is_integer()));
                    if delta != 0 {
                        assert!(y.iter().all(|v| (v * BigRational::from_integer(dl.clone())).is_integer()));
                    }
                    let yb: BigRational = y.iter().zip(&b).map(|(u, v)| u * BigRational::from_integer(v.clone())).sum();
                    assert!(!yb.is_integer());
                    false
                }
            }
        };
        // brute force oracle over small x and residues
        for delta in [0i64, 2, 3, 5] {
            for b0 in -3..=3 {
                for b1 in -3..=3 {
                    let b = [b0, b1, 1, 2];
                    let mut expect = false;
                    for x0 in -12i64..=12 {
                        for x1 in -12i64..=12 {
                            let ax = [2 * x0, 3 * x1, x0 + x1, 4 * x0 + 6 * x1];
                            let ok = (0..4).all(|i| {
                                let diff = b[i] - ax[i];
                                if delta == 0 { diff == 0 } else { diff % delta == 0 }
                            });
                            expect |= ok;
                        }
                    }
                    assert_eq!(check(&b, delta), expect, "b={b:?} delta={delta}");
                }
            }
        }
    }

    #[test]
    fn parity_obstruction() {
        let a = IntMatrix::from_i64(&[&[2]]);
        let f = IntFactorization::new(&a, true);
        match f.solve(&[3.into()]) {
            Err(Infeasibility::Divisibility { y, modulus }) => {
                assert_eq!(modulus, BigInt::from(2));
                assert_eq!(y, vec![BigRational::new(1.into(), 2.into())]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
