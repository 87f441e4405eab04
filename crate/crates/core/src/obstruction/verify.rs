//! Checking a candidate λ against concrete chains: `Φ∘α − vol ∈ L`.
//!
//! Only λ-differences are needed: each cell's flag sum collapses to the
//! λ-terms produced by [`derive`](super::derive), instantiated at the cell's
//! data and evaluated on `F = weight·(u∧v)`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_rational::BigRational;
use num_traits::Zero;

use super::assemble::{lambda1_slot, LAMBDA1_SLOTS};
use super::derive::{derive_reduced_equations, CellShape, DerivationReport, LambdaTerm};
use super::solve::{ModLSolution, RatT};
use super::SublatticeSpec;
use crate::chains::{vol_cell, Cell, Chain};
use crate::multilinear::{gp_rat, wedge2, T_DIM};

/// λ1 values by slot (λ0 never contributes).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lambda {
    pub d: i64,
    pub values: BTreeMap<usize, RatT>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaError {
    SlotOutOfRange(usize),
    CoordinateOutOfRange { slot: usize, coordinate: usize },
    Malformed(String),
}

impl fmt::Display for LambdaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaError::SlotOutOfRange(s) => write!(f, "lambda slot {s} out of range (< {LAMBDA1_SLOTS})"),
            LambdaError::CoordinateOutOfRange { slot, coordinate } => {
                write!(f, "T coordinate {coordinate} out of range at slot {slot}")
            }
            LambdaError::Malformed(m) => write!(f, "malformed lambda file: {m}"),
        }
    }
}

impl Lambda {
    pub fn new(d: i64, values: BTreeMap<usize, RatT>) -> Result<Self, LambdaError> {
        for (&s, v) in &values {
            if s >= LAMBDA1_SLOTS {
                return Err(LambdaError::SlotOutOfRange(s));
            }
            if let Some((&c, _)) = v.iter().find(|(&c, _)| c >= T_DIM) {
                return Err(LambdaError::CoordinateOutOfRange { slot: s, coordinate: c });
            }
        }
        Ok(Lambda { d, values })
    }

    pub fn from_solution(d: i64, s: &ModLSolution) -> Self {
        Lambda { d, values: s.lambda.clone() }
    }

    /// `Σ_slot c[slot]·λ[slot]`.
    pub fn contract(&self, coeffs: &[BigRational]) -> RatT {
        let mut acc = RatT::new();
        for (s, v) in &self.values {
            let c = &coeffs[*s];
            if c.is_zero() {
                continue;
            }
            for (&k, x) in v {
                let e = acc.entry(k).or_insert_with(BigRational::zero);
                *e += c * x;
                if e.is_zero() {
                    acc.remove(&k);
                }
            }
        }
        acc
    }
}

/// Adds the slot coefficients of `coef·λ1(X; s; u)(F)` into `out`.
fn accumulate(out: &mut [BigRational], coef: &BigRational, x: &[BigRational], s: &[BigRational; 4], u: &[BigRational; 4], f: &[BigRational; 6]) {
    for (xi, xv) in x.iter().enumerate() {
        if xv.is_zero() {
            continue;
        }
        let a = coef * xv;
        for (qi, sv) in s.iter().enumerate() {
            if sv.is_zero() {
                continue;
            }
            let b = &a * sv;
            for (mi, uv) in u.iter().enumerate() {
                if uv.is_zero() {
                    continue;
                }
                let c = &b * uv;
                for (wi, fv) in f.iter().enumerate() {
                    if !fv.is_zero() {
                        out[lambda1_slot(xi, qi, mi, wi)] += &c * fv;
                    }
                }
            }
        }
    }
}

fn instantiate(term: &LambdaTerm, x: &[BigRational], p: [&[BigRational; 4]; 2], g: [&[BigRational; 4]; 2], f: &[BigRational; 6], out: &mut [BigRational]) {
    let mut xx: Vec<BigRational> = x.to_vec();
    for (pi, pv) in p.iter().enumerate() {
        for (gi, gv) in g.iter().enumerate() {
            let c = &term.base[pi][gi];
            if c.is_zero() {
                continue;
            }
            for a in 0..4 {
                for k in 0..4 {
                    xx[4 * a + k] += c * &pv[a] * &gv[k];
                }
            }
        }
    }
    let s: [BigRational; 4] = core::array::from_fn(|a| &term.s[0] * &p[0][a] + &term.s[1] * &p[1][a]);
    let u: [BigRational; 4] = core::array::from_fn(|k| &term.dir[0] * &g[0][k] + &term.dir[1] * &g[1][k]);
    accumulate(out, &term.coef, &xx, &s, &u, f);
}

/// Slot coefficients of `Φ∘α(cell)` under the ansatz.
pub fn cell_coefficients(report: &DerivationReport, cell: &Cell) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); LAMBDA1_SLOTS];
    let (u, v) = cell.uv();
    let f = wedge2(u, v).scale(cell.weight()).0;
    let zero = [BigRational::zero(), BigRational::zero(), BigRational::zero(), BigRational::zero()];
    match cell {
        Cell::Triangle(c) => {
            let s = gp_rat(&c.s);
            for t in report.terms(CellShape::Triangle) {
                instantiate(t, &c.x, [&s, &zero], [&c.u, &c.v], &f, &mut out);
            }
        }
        Cell::Parallelogram(c) => {
            let s = gp_rat(&c.s);
            let t = gp_rat(&c.t);
            for term in report.terms(CellShape::Parallelogram) {
                instantiate(term, &c.x, [&s, &t], [&c.u, &c.v], &f, &mut out);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVerdict {
    /// `Φ∘α − vol`.
    pub defect: RatT,
    pub in_l: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiReport {
    pub verdicts: Vec<ChainVerdict>,
}

impl PhiReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.in_l)
    }

    pub fn failures(&self) -> usize {
        self.verdicts.iter().filter(|v| !v.in_l).count()
    }
}

/// Per chain: `Φ∘α − vol` and whether it lies in `L`.
pub fn verify_candidate_phi(lambda: &Lambda, l: &SublatticeSpec, chains: &[Chain]) -> PhiReport {
    let report = derive_reduced_equations();
    let reducer = l.t_lattice(lambda.d).reducer();
    let verdicts = chains
        .iter()
        .map(|ch| {
            let mut coeffs = vec![BigRational::zero(); LAMBDA1_SLOTS];
            let mut vol = vec![BigRational::zero(); T_DIM];
            for cell in &ch.cells {
                for (a, b) in coeffs.iter_mut().zip(cell_coefficients(&report, cell)) {
                    if !b.is_zero() {
                        *a += b;
                    }
                }
                for (a, b) in vol.iter_mut().zip(&vol_cell(cell).0) {
                    *a += b;
                }
            }
            let mut defect = lambda.contract(&coeffs);
            for (k, x) in vol.into_iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let e = defect.entry(k).or_insert_with(BigRational::zero);
                *e -= x;
                if e.is_zero() {
                    defect.remove(&k);
                }
            }
            let mut dense = vec![BigRational::zero(); T_DIM];
            for (&k, x) in &defect {
                dense[k] = x.clone();
            }
            let in_l = reducer.reduce(&dense).expect("T-sized vector").iter().all(|x| x.is_zero());
            ChainVerdict { defect, in_l }
        })
        .collect();
    PhiReport { verdicts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::{g2, gp};
    use crate::q;

    #[test]
    fn empty_chain_passes() {
        let lam = Lambda::default();
        let r = verify_candidate_phi(&Lambda { d: 1, ..lam }, &SublatticeSpec::zero(), &[Chain::new(1)]);
        assert!(r.all_pass());
    }

    #[test]
    fn zero_lambda_gives_minus_vol() {
        let cell = Cell::triangle(vec![q(0); 16], gp([1, 0, 0, 0]), g2([1, 0, 0, 0]), g2([0, 1, 0, 0]), q(1));
        let mut ch = Chain::new(1);
        ch.push(cell.clone());
        let r = verify_candidate_phi(&Lambda { d: 1, values: BTreeMap::new() }, &SublatticeSpec::zero(), &[ch]);
        assert!(!r.all_pass());
        let vol = vol_cell(&cell);
        for (k, x) in &r.verdicts[0].defect {
            assert_eq!(-x, vol.0[*k]);
        }
    }

    #[test]
    fn slot_range_checked() {
        let mut m = BTreeMap::new();
        m.insert(LAMBDA1_SLOTS, RatT::new());
        assert_eq!(Lambda::new(1, m), Err(LambdaError::SlotOutOfRange(LAMBDA1_SLOTS)));
    }
}
