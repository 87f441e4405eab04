//! The proper-sublattice scan.
//!
//! A proper sublattice of `W` either has rank < 3 (then it sits in the
//! kernel of a rational functional `f`) or finite index (then it sits in
//! `ker(f mod p)` for some prime `p`). Solvability is monotone in `L`, so
//! it suffices to decide these maximal cases.
//!
//! If the system is not solvable modulo `W` itself, every `L ⊆ W` fails and
//! the mod-W certificate covers both scans. Otherwise let `J ⊂ ℚ³` be the
//! (θ, w1, w2)-coordinates of the obstruction values `y·R`. Scan (i) is
//! non-empty iff `rank J < 3`. At a prime `p` dividing none of the
//! recorded invariant factors, `ker(f mod p)` works iff `f(J) ≡ 0 mod p`;
//! the finitely many remaining (bad) primes are scanned explicitly.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::solve::{solvable_mod_sublattice, solve_mod_w, ModLOutcome, ObstructionContext};
use super::{projective_functionals, w_vectors, SublatticeSpec};
use crate::linalg::{prime_divisors, LatticeSpec, RatMatrix};
use crate::multilinear::T_DIM;

/// Solves for (θ, w1, w2)-coordinates through three pivot coordinates.
pub struct WCoords {
    w: [Vec<BigRational>; 3],
    pivots: [usize; 3],
    inv: RatMatrix,
}

impl WCoords {
    pub fn new(d: i64) -> Self {
        let w = w_vectors(d);
        let rows = RatMatrix::from_rows(w.to_vec(), T_DIM);
        let pv = rows.rref().pivots;
        assert_eq!(pv.len(), 3, "theta, w1, w2 are independent");
        let pivots = [pv[0], pv[1], pv[2]];
        let mut sub = RatMatrix::zeros(3, 3);
        for (i, &p) in pivots.iter().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                sub.set(i, j, wj[p].clone());
            }
        }
        let inv = sub.inverse().expect("pivot minor is invertible");
        WCoords { w, pivots, inv }
    }

    pub fn coords(&self, v: &[BigRational]) -> Option<[BigRational; 3]> {
        let b: Vec<BigRational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let c = self.inv.mul_vec(&b);
        for (k, vk) in v.iter().enumerate() {
            let r: BigRational = (0..3).map(|j| &c[j] * &self.w[j][k]).sum();
            if &r != vk {
                return None;
            }
        }
        Some([c[0].clone(), c[1].clone(), c[2].clone()])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModWStatus {
    /// Solvable; carries the rank of the residual coordinate lattice `J`.
    Solvable,
    /// Not even rationally solvable modulo `W`.
    RationallyObstructed,
    /// Rationally solvable, integrally obstructed.
    IntegrallyObstructed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeScan {
    pub p: i64,
    pub tested: usize,
    /// Functionals whose kernel admits a solution.
    pub solvable: Vec<[i64; 3]>,
    /// Every outcome re-verified.
    pub certificates_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub d: i64,
    pub mod_w: ModWStatus,
    pub mod_w_certificate_ok: bool,
    /// Generators of `J` in (θ, w1, w2)-coordinates (empty unless mod-W
    /// solvable).
    pub j_generators: Vec<[BigRational; 3]>,
    pub j_rank: usize,
    /// Scan (i): a basis of the rational functionals vanishing on `J`.
    pub rational_functionals: Vec<[BigRational; 3]>,
    pub bad_primes: Vec<i64>,
    /// Scan (ii) at the bad primes.
    pub prime_scans: Vec<PrimeScan>,
    /// Whether some `ker(f mod p)` works at every good prime.
    pub good_primes_nonempty: bool,
}

impl ScanReport {
    pub fn rational_scan_empty(&self) -> bool {
        self.rational_functionals.is_empty()
    }

    pub fn prime_scans_empty(&self) -> bool {
        self.prime_scans.iter().all(|s| s.solvable.is_empty()) && !self.good_primes_nonempty
    }

    /// "No proper sublattice of W works."
    pub fn no_proper_sublattice(&self) -> bool {
        self.rational_scan_empty() && self.prime_scans_empty()
    }
}

/// `J`: (θ, w1, w2)-coordinates of all obstruction values (assumes they lie
/// in `W⊗ℚ`).
pub fn residual_coordinates(ctx: &ObstructionContext) -> Option<Vec<[BigRational; 3]>> {
    let wc = WCoords::new(ctx.d());
    ctx.obstructions.iter().map(|(_, v)| wc.coords(&v.to_dense())).collect()
}

/// Predicted solvability at a good prime: `f(J) ≡ 0 mod p`.
pub fn predicted_at_good_prime(j: &[[BigRational; 3]], f: &[i64; 3], p: i64) -> bool {
    let pb = BigInt::from(p);
    j.iter().all(|g| {
        let v: BigRational = g.iter().zip(f).map(|(a, b)| a * BigRational::from_integer(BigInt::from(*b))).sum();
        assert!(!(v.denom() % &pb).is_zero(), "p divides a denominator of J; p is bad");
        (v.numer() % &pb).is_zero()
    })
}

fn small_primes(n: &BigInt, out: &mut Vec<i64>) {
    for p in prime_divisors(n) {
        let p = p.to_i64().expect("bad prime fits in i64");
        if !out.contains(&p) {
            out.push(p);
        }
    }
}

/// Runs both scans and returns the report. Every solvability verdict it
/// relies on is re-verified through [`ModLOutcome::verify`].
pub fn proper_sublattice_scan(ctx: &ObstructionContext) -> ScanReport {
    let d = ctx.d();
    let w = SublatticeSpec::w();
    let out_w = solve_mod_w(ctx);
    let mod_w_certificate_ok = out_w.verify(ctx, &w);
    let mod_w = match &out_w {
        ModLOutcome::Solvable(_) => ModWStatus::Solvable,
        ModLOutcome::Rational(_) => ModWStatus::RationallyObstructed,
        ModLOutcome::Integer(_) => ModWStatus::IntegrallyObstructed,
    };

    let mut bad: Vec<i64> = Vec::new();
    for f in ctx.factor.remainder_factors() {
        small_primes(&f, &mut bad);
    }
    for dl in &ctx.adapted(&w).delta {
        if !dl.is_zero() {
            small_primes(dl, &mut bad);
        }
    }

    let mut j_generators = Vec::new();
    let mut rational_functionals = Vec::new();
    let mut j_rank = 0;
    let mut good_primes_nonempty = false;
    if mod_w == ModWStatus::Solvable {
        j_generators = residual_coordinates(ctx).expect("solvable mod W implies J inside W");
        let lat = LatticeSpec::new(3, j_generators.iter().map(|g| g.to_vec()).collect());
        j_rank = lat.rank();
        for f in lat.invariant_factors() {
            small_primes(f.numer(), &mut bad);
            small_primes(f.denom(), &mut bad);
        }
        for g in &j_generators {
            for c in g {
                small_primes(c.denom(), &mut bad);
            }
        }
        if j_rank < 3 {
            let m = RatMatrix::from_rows(
                if j_generators.is_empty() { Vec::new() } else { j_generators.iter().map(|g| g.to_vec()).collect() },
                3,
            );
            let ker = if j_generators.is_empty() {
                (0..3)
                    .map(|i| {
                        let mut v = alloc::vec![BigRational::zero(); 3];
                        v[i] = BigRational::one();
                        v
                    })
                    .collect()
            } else {
                m.kernel()
            };
            rational_functionals = ker.into_iter().map(|v| [v[0].clone(), v[1].clone(), v[2].clone()]).collect();
            // a rational functional killing J reduces to one mod every good p
            good_primes_nonempty = true;
        }
    }
    bad.sort();

    let prime_scans = bad
        .iter()
        .map(|&p| {
            let fs = projective_functionals(p);
            let mut solvable = Vec::new();
            let mut ok = true;
            for f in &fs {
                let l = SublatticeSpec::kernel_mod_p(f, p);
                let out = solvable_mod_sublattice(ctx, &l);
                ok &= out.verify(ctx, &l);
                if out.is_solvable() {
                    solvable.push(*f);
                }
            }
            PrimeScan { p, tested: fs.len(), solvable, certificates_ok: ok }
        })
        .collect();

    ScanReport {
        d,
        mod_w,
        mod_w_certificate_ok,
        j_generators,
        j_rank,
        rational_functionals,
        bad_primes: bad,
        prime_scans,
        good_primes_nonempty,
    }
}

/// Smallest prime not in `bad`.
pub fn first_good_prime(bad: &[i64]) -> i64 {
    let mut p = 2i64;
    loop {
        let is_prime = (2..p).take_while(|q| q * q <= p).all(|q| p % q != 0);
        if is_prime && !bad.contains(&p) {
            return p;
        }
        p += 1;
    }
}
