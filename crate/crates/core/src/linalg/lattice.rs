use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{common_denominator, floor_rat, hnf_full, scale_to_int, snf, to_rat, IntMatrix, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeError {
    DimensionMismatch { expected: usize, found: usize },
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
        }
    }
}

/// A lattice in ℚⁿ given by (possibly dependent) rational generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    dim: usize,
    gens: Vec<Vec<BigRational>>,
}

/// HNF data of `D·L` where `D` clears all denominators.
struct Integral {
    den: BigInt,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

/// Reduction modulo a fixed lattice.
#[derive(Clone, Debug)]
pub struct Reducer {
    dim: usize,
    den: BigRational,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Reducer {
    pub fn reduce(&self, x: &[BigRational]) -> Result<Vec<BigRational>, LatticeError> {
        if x.len() != self.dim {
            return Err(LatticeError::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        let mut y: Vec<BigRational> = x.iter().map(|v| v * &self.den).collect();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let piv = BigRational::from_integer(b[p].clone());
            let q = floor_rat(&(&y[p] / &piv));
            if !q.is_zero() {
                for (yi, bi) in y.iter_mut().zip(b) {
                    if !bi.is_zero() {
                        *yi -= BigRational::from_integer(&q * bi);
                    }
                }
            }
        }
        Ok(y.into_iter().map(|v| v / &self.den).collect())
    }
}

impl LatticeSpec {
    pub fn new(dim: usize, gens: Vec<Vec<BigRational>>) -> Self {
        for g in &gens {
            assert_eq!(g.len(), dim, "generator of wrong length");
        }
        LatticeSpec { dim, gens }
    }

    pub fn try_new(dim: usize, gens: Vec<Vec<BigRational>>) -> Result<Self, LatticeError> {
        if let Some(g) = gens.iter().find(|g| g.len() != dim) {
            return Err(LatticeError::DimensionMismatch { expected: dim, found: g.len() });
        }
        Ok(LatticeSpec { dim, gens })
    }

    pub fn from_int(dim: usize, gens: &[Vec<BigInt>]) -> Self {
        Self::new(dim, gens.iter().map(|g| to_rat(g)).collect())
    }

    /// The full lattice ℤⁿ.
    pub fn standard(dim: usize) -> Self {
        let gens = (0..dim)
            .map(|i| {
                let mut v = vec![BigRational::zero(); dim];
                v[i] = BigRational::one();
                v
            })
            .collect();
        LatticeSpec { dim, gens }
    }

    pub fn zero(dim: usize) -> Self {
        LatticeSpec { dim, gens: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<BigRational>] {
        &self.gens
    }

    fn integral(&self) -> Integral {
        let den = self.gens.iter().fold(BigInt::one(), |acc, g| {
            let d = common_denominator(g);
            num_integer::Integer::lcm(&acc, &d)
        });
        if self.gens.is_empty() {
            return Integral { den, basis: Vec::new(), pivots: Vec::new() };
        }
        let cols: Vec<Vec<BigInt>> = self.gens.iter().map(|g| scale_to_int(g, &den)).collect();
        let h = hnf_full(&IntMatrix::from_columns(&cols, self.dim));
        Integral { den, basis: h.basis(), pivots: h.pivots }
    }

    fn check_dim(&self, n: usize) -> Result<(), LatticeError> {
        if n == self.dim {
            Ok(())
        } else {
            Err(LatticeError::DimensionMismatch { expected: self.dim, found: n })
        }
    }

    pub fn rank(&self) -> usize {
        self.integral().basis.len()
    }

    /// Canonical HNF basis (columns), independent of the generating set.
    pub fn basis(&self) -> Vec<Vec<BigRational>> {
        let it = self.integral();
        let d = BigRational::from_integer(it.den);
        it.basis.iter().map(|b| b.iter().map(|x| BigRational::from_integer(x.clone()) / &d).collect()).collect()
    }

    /// Canonical representative of `x + L`: two vectors get the same
    /// representative iff they differ by a lattice element.
    pub fn reduce(&self, x: &[BigRational]) -> Result<Vec<BigRational>, LatticeError> {
        self.reducer().reduce(x)
    }

    /// Precomputed HNF data for repeated calls to [`Reducer::reduce`].
    pub fn reducer(&self) -> Reducer {
        let it = self.integral();
        Reducer { dim: self.dim, den: BigRational::from_integer(it.den), basis: it.basis, pivots: it.pivots }
    }

    pub fn contains(&self, v: &[BigRational]) -> Result<bool, LatticeError> {
        Ok(self.reduce(v)?.iter().all(|x| x.is_zero()))
    }

    pub fn contains_lattice(&self, other: &LatticeSpec) -> Result<bool, LatticeError> {
        self.check_dim(other.dim)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `span_ℚ(L) ∩ ℤⁿ`: the largest lattice of the same rank and rational span.
    pub fn saturation(&self) -> LatticeSpec {
        let it = self.integral();
        if it.basis.is_empty() {
            return LatticeSpec::zero(self.dim);
        }
        let m = IntMatrix::from_columns(&it.basis, self.dim);
        let s = snf(&m);
        let gens = (0..s.rank).map(|j| to_rat(&s.u.column(j))).collect();
        LatticeSpec::new(self.dim, gens).canonical()
    }

    /// Nonzero invariant factors of `L` inside ℤⁿ (rational if `L` has
    /// denominators).
    pub fn invariant_factors(&self) -> Vec<BigRational> {
        let it = self.integral();
        if it.basis.is_empty() {
            return Vec::new();
        }
        let s = snf(&IntMatrix::from_columns(&it.basis, self.dim));
        s.nonzero_factors().into_iter().map(|f| BigRational::new(f, it.den.clone())).collect()
    }

    pub fn sum(&self, other: &LatticeSpec) -> Result<LatticeSpec, LatticeError> {
        self.check_dim(other.dim)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(LatticeSpec::new(self.dim, gens))
    }

    pub fn intersection(&self, other: &LatticeSpec) -> Result<LatticeSpec, LatticeError> {
        self.check_dim(other.dim)?;
        let a = self.basis();
        let b = other.basis();
        if a.is_empty() || b.is_empty() {
            return Ok(LatticeSpec::zero(self.dim));
        }
        let mut cols = a.clone();
        cols.extend(b.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
        let (m, _) = RatMatrix::from_columns(&cols, self.dim).clear_denominators();
        let f = super::IntFactorization::new(&m, false);
        let gens = f
            .kernel_basis()
            .into_iter()
            .map(|k| {
                let mut v = vec![BigRational::zero(); self.dim];
                for (c, col) in k.iter().zip(&a) {
                    if !c.is_zero() {
                        for (vi, ai) in v.iter_mut().zip(col) {
                            *vi += BigRational::from_integer(c.clone()) * ai;
                        }
                    }
                }
                v
            })
            .collect();
        Ok(LatticeSpec::new(self.dim, gens).canonical())
    }

    /// Same lattice with its canonical basis as generators.
    pub fn canonical(&self) -> LatticeSpec {
        LatticeSpec::new(self.dim, self.basis())
    }

    /// Coordinates of `v` in the canonical basis, if `v` is in the rational span.
    pub fn coordinates(&self, v: &[BigRational]) -> Result<Option<Vec<BigRational>>, LatticeError> {
        self.check_dim(v.len())?;
        let b = self.basis();
        if b.is_empty() {
            return Ok(if v.iter().all(|x| x.is_zero()) { Some(Vec::new()) } else { None });
        }
        Ok(RatMatrix::from_columns(&b, self.dim).solve(v))
    }

    /// Index `[other : self]` when `self ⊆ other` have equal rank.
    pub fn index_in(&self, other: &LatticeSpec) -> Result<Option<BigInt>, LatticeError> {
        self.check_dim(other.dim)?;
        if !other.contains_lattice(self)? {
            return Ok(None);
        }
        let mine = self.basis();
        let r = other.rank();
        if mine.len() != r {
            return Ok(None);
        }
        if r == 0 {
            return Ok(Some(BigInt::one()));
        }
        let mut coords = Vec::new();
        for v in &mine {
            coords.push(other.coordinates(v)?.expect("contained vector has coordinates"));
        }
        let (m, den) = RatMatrix::from_columns(&coords, r).clear_denominators();
        assert!(den.is_one(), "coordinates of sublattice vectors are integral");
        Ok(Some(m.determinant().abs()))
    }

    /// `self ⊊ other`.
    pub fn is_proper_sublattice_of(&self, other: &LatticeSpec) -> Result<bool, LatticeError> {
        if !other.contains_lattice(self)? {
            return Ok(false);
        }
        Ok(match self.index_in(other)? {
            Some(i) => !i.is_one(),
            None => true,
        })
    }
}

/// Canonical coset representative of an integer vector modulo `L`.
pub fn canonical_coset_rep(x: &[BigInt], l: &LatticeSpec) -> Result<Vec<BigInt>, LatticeError> {
    let r = l.reduce(&to_rat(x))?;
    Ok(r.into_iter()
        .map(|v| {
            assert!(v.is_integer(), "integral lattice and vector give integral representative");
            v.to_integer()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qq};

    fn lat(gens: &[&[i64]]) -> LatticeSpec {
        let n = gens[0].len();
        LatticeSpec::new(n, gens.iter().map(|g| g.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn membership_of_combination() {
        let l = lat(&[&[1, 2, 0], &[0, 1, 3]]);
        let v: Vec<BigRational> = vec![q(2), q(3), q(-3)];
        assert!(l.contains(&v).unwrap());
        assert!(!l.contains(&[q(1), q(0), q(0)]).unwrap());
        assert!(l.contains(&[qq(1, 2), q(0), q(0)]).is_ok());
    }

    #[test]
    fn saturation_of_even_lattice() {
        let l = lat(&[&[2, 0], &[0, 2]]);
        let s = l.saturation();
        assert_eq!(s.basis(), LatticeSpec::standard(2).basis());
        assert_eq!(s.saturation(), s);
        assert_eq!(l.invariant_factors(), vec![q(2), q(2)]);
    }

    #[test]
    fn intersection_and_index() {
        let a = lat(&[&[2, 0], &[0, 1]]);
        let b = lat(&[&[1, 0], &[0, 3]]);
        let i = a.intersection(&b).unwrap();
        assert_eq!(i.basis(), lat(&[&[2, 0], &[0, 3]]).basis());
        assert_eq!(i.index_in(&LatticeSpec::standard(2)).unwrap(), Some(BigInt::from(6)));
        assert!(i.is_proper_sublattice_of(&a).unwrap());
        assert!(!a.is_proper_sublattice_of(&a).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = lat(&[&[1, 0]]);
        let b = lat(&[&[1, 0, 0]]);
        assert!(a.sum(&b).is_err());
        assert!(a.contains(&[q(1)]).is_err());
    }

    #[test]
    fn coset_rep_is_invariant() {
        let l = lat(&[&[3, 1, 0], &[0, 2, 5]]);
        let x = [BigInt::from(7), BigInt::from(-4), BigInt::from(2)];
        let shifted: Vec<BigInt> = x.iter().zip([6, 2 - 4, -10]).map(|(a, b)| a + BigInt::from(b)).collect();
        assert_eq!(canonical_coset_rep(&x, &l).unwrap(), canonical_coset_rep(&shifted, &l).unwrap());
        let g = [BigInt::from(3), BigInt::from(1), BigInt::from(0)];
        assert!(canonical_coset_rep(&g, &l).unwrap().iter().all(|v| v.is_zero()));
    }
}
