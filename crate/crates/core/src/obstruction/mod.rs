//! The λ-ansatz linear system, its exact and modular solvers, the
//! proper-sublattice scan and candidate verification.
//!
//! Values of λ live in `T = Sym²Γp ⊗ Sym²(∧²Γ2)` (210 coordinates). The
//! coefficient matrix acts slot-wise, so the system is `A ⊗ 1_T` with `A`
//! an integer matrix over the 1536 λ1 slots.

pub mod assemble;
pub mod derive;
pub mod scan;
pub mod solve;
pub mod verify;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::linalg::{LatticeSpec, RatMatrix, RowValue};
use crate::multilinear::{ClassT, T_DIM};
use crate::weil::{expand_class_to_T, standard_classes};

pub use assemble::{assemble_system, AssembleOptions, EquationSystem, RowKind, SystemRow};
pub use derive::{derive_reduced_equations, DerivationReport};
pub use scan::{proper_sublattice_scan, ScanReport};
pub use solve::{
    solvable_mod_sublattice, solve_exact_infeasibility, solve_mod_w, ExactWitness, ModLOutcome, ModLSolution,
    ObstructionContext, RationalWitness, UnexpectedlyFeasible,
};
pub use verify::{verify_candidate_phi, Lambda, LambdaError, PhiReport};

/// A sparse integer vector in `T`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseT(pub BTreeMap<usize, BigInt>);

impl SparseT {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_scaled(&mut self, c: &BigInt, other: &SparseT) {
        if c.is_zero() {
            return;
        }
        for (&k, v) in &other.0 {
            let e = self.0.entry(k).or_insert_with(BigInt::zero);
            *e += c * v;
            if e.is_zero() {
                self.0.remove(&k);
            }
        }
    }

    pub fn to_dense(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); T_DIM];
        for (&k, v) in &self.0 {
            out[k] = BigRational::from_integer(v.clone());
        }
        out
    }

    pub fn from_class(c: &ClassT) -> Option<SparseT> {
        let mut out = SparseT::default();
        for (i, v) in c.0.iter().enumerate() {
            if !v.is_zero() {
                if !v.is_integer() {
                    return None;
                }
                out.0.insert(i, v.to_integer());
            }
        }
        Some(out)
    }
}

impl RowValue for SparseT {
    fn sub_scaled(&mut self, f: &BigInt, other: &Self) {
        self.add_scaled(&-f, other);
    }
    fn zero_like(&self) -> Self {
        SparseT::default()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

/// θ, w1, w2 expanded into `T`.
pub fn w_vectors(d: i64) -> [Vec<BigRational>; 3] {
    let (t, w1, w2) = standard_classes(d);
    [expand_class_to_T(&t, d).0, expand_class_to_T(&w1, d).0, expand_class_to_T(&w2, d).0]
}

/// `W = ℤ⟨θ, w1, w2⟩ ⊂ T⊗ℚ`.
pub fn w_lattice(d: i64) -> LatticeSpec {
    LatticeSpec::new(T_DIM, w_vectors(d).to_vec())
}

/// Coordinates of `v ∈ T⊗ℚ` in the basis (θ, w1, w2), if `v ∈ W⊗ℚ`.
pub fn w_coordinates(d: i64, v: &[BigRational]) -> Option<[BigRational; 3]> {
    let m = RatMatrix::from_columns(&w_vectors(d), T_DIM);
    m.solve(v).map(|x| [x[0].clone(), x[1].clone(), x[2].clone()])
}

/// A sublattice of `W⊗ℚ`, given by generators in (θ, w1, w2)-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublatticeSpec {
    pub gens: Vec<[BigRational; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotInW;

impl fmt::Display for NotInW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "generator is not an integer combination of theta, w1, w2")
    }
}

impl SublatticeSpec {
    pub fn new(gens: Vec<[BigRational; 3]>) -> Self {
        SublatticeSpec { gens }
    }

    pub fn from_i64(gens: &[[i64; 3]]) -> Self {
        SublatticeSpec { gens: gens.iter().map(|g| g.map(crate::q)).collect() }
    }

    pub fn zero() -> Self {
        SublatticeSpec { gens: Vec::new() }
    }

    pub fn w() -> Self {
        Self::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn theta() -> Self {
        Self::from_i64(&[[1, 0, 0]])
    }

    /// The lattice in (θ, w1, w2)-coordinates.
    pub fn coordinate_lattice(&self) -> LatticeSpec {
        LatticeSpec::new(3, self.gens.iter().map(|g| g.to_vec()).collect())
    }

    /// Generators pushed into `T⊗ℚ`.
    pub fn t_generators(&self, d: i64) -> Vec<Vec<BigRational>> {
        let w = w_vectors(d);
        self.gens
            .iter()
            .map(|g| {
                let mut v = vec![BigRational::zero(); T_DIM];
                for (c, wv) in g.iter().zip(&w) {
                    if !c.is_zero() {
                        for (vi, wi) in v.iter_mut().zip(wv) {
                            *vi += c * wi;
                        }
                    }
                }
                v
            })
            .collect()
    }

    pub fn t_lattice(&self, d: i64) -> LatticeSpec {
        LatticeSpec::new(T_DIM, self.t_generators(d))
    }

    /// `L ⊆ W` (generators integral in the (θ, w1, w2) basis).
    pub fn check_in_w(&self) -> Result<(), NotInW> {
        if self.gens.iter().all(|g| g.iter().all(|c| c.is_integer())) {
            Ok(())
        } else {
            Err(NotInW)
        }
    }

    /// `L ⊊ W`.
    pub fn is_proper(&self) -> bool {
        self.check_in_w().is_ok()
            && self.coordinate_lattice().is_proper_sublattice_of(&LatticeSpec::standard(3)).unwrap_or(false)
    }

    /// `ker(f mod p) ⊂ W` for a functional `f` over `F_p`.
    pub fn kernel_mod_p(f: &[i64; 3], p: i64) -> Self {
        let i = f.iter().position(|&c| c.rem_euclid(p) != 0).expect("nonzero functional");
        let inv = mod_inverse(f[i].rem_euclid(p), p);
        let mut gens = Vec::new();
        let mut pe = [0i64; 3];
        pe[i] = p;
        gens.push(pe);
        for j in 0..3 {
            if j != i {
                let mut g = [0i64; 3];
                g[j] = 1;
                // e_j − (f_j/f_i)·e_i
                g[i] = (-(f[j] * inv)).rem_euclid(p);
                gens.push(g);
            }
        }
        Self::from_i64(&gens)
    }
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    (1..p).find(|x| (a * x).rem_euclid(p) == 1).expect("p prime and a invertible")
}

/// The `p²+p+1` projective functionals on `F_p³`, first nonzero entry 1.
pub fn projective_functionals(p: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for i in 0..3 {
        let free = 2 - i;
        let n = p.pow(free as u32);
        for k in 0..n {
            let mut f = [0i64; 3];
            f[i] = 1;
            let mut r = k;
            for slot in f.iter_mut().skip(i + 1) {
                *slot = r % p;
                r /= p;
            }
            out.push(f);
        }
    }
    out
}
