//! Exact and modular solving of `A·λ + r = R`.
//!
//! Rational side: `y·A = 0` forces `y·R = y·r`, so with residuals in `L` the
//! system is solvable over ℚ iff every obstruction value `y·R` lies in
//! `L⊗ℚ` (exact rows are homogeneous, so `y·R` only sees residual rows).
//!
//! Integer side: λ takes values in `T_amb = ℤ^210 + W`. In a basis `b` of
//! `T_amb` adapted to `L` (`L = ⊕ δ_j ℤ b_j`) the problem splits into one
//! scalar problem per coordinate `j`:
//! `A_X μ = 0`, `A_S μ + δ_j κ = ρ_j` (`X` exact rows, `S` residual rows).
//! With `K` a ℤ-basis of `ker A_X` this is `G ν + δ_j κ = ρ_j`, `G = A_S K`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::OnceCell;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::assemble::EquationSystem;
use super::{w_vectors, SparseT, SublatticeSpec};
use crate::linalg::{snf, IntFactorization, IntMatrix, LatticeSpec, RatMatrix};
use crate::multilinear::T_DIM;

/// A sparse rational vector in `T`.
pub type RatT = BTreeMap<usize, BigRational>;

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn sparse_to_rat(v: &SparseT) -> RatT {
    v.0.iter().map(|(&k, x)| (k, rat(x))).collect()
}

fn add_scaled_rat(acc: &mut RatT, c: &BigRational, v: &RatT) {
    if c.is_zero() {
        return;
    }
    for (&k, x) in v {
        let e = acc.entry(k).or_insert_with(BigRational::zero);
        *e += c * x;
        if e.is_zero() {
            acc.remove(&k);
        }
    }
}

fn dense(v: &RatT) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); T_DIM];
    for (&k, x) in v {
        out[k] = x.clone();
    }
    out
}

fn dot_dense_sparse(g: &[BigRational], v: &RatT) -> BigRational {
    v.iter().map(|(&k, x)| &g[k] * x).sum()
}

/// Rational row space in echelon form (for span membership).
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, RatT)>,
}

impl Echelon {
    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, v: &RatT) -> RatT {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            if let Some(c) = v.get(p).cloned() {
                add_scaled_rat(&mut v, &-c, row);
            }
        }
        v
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &RatT) -> bool {
        let r = self.reduce(v);
        let Some((&p, c)) = r.iter().next() else { return false };
        let inv = c.recip();
        let r: RatT = r.iter().map(|(&k, x)| (k, x * &inv)).collect();
        for (_, row) in self.rows.iter_mut() {
            if let Some(c) = row.get(&p).cloned() {
                add_scaled_rat(row, &-c, &r);
            }
        }
        self.rows.push((p, r));
        self.rows.sort_by_key(|e| e.0);
        true
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<Vec<BigRational>> {
        self.rows.iter().map(|(_, r)| dense(r)).collect()
    }

    pub fn contains(&self, v: &RatT) -> bool {
        self.reduce(v).is_empty()
    }
}

/// `y·R` for every left-kernel basis vector `y` of `A` (zero values kept).
pub fn obstruction_values(factor: &IntFactorization, rhs: &[SparseT]) -> Vec<SparseT> {
    let mut t = rhs.to_vec();
    factor.apply_ops(&mut t);
    factor.obstructions(&t)
}

/// Homogeneous-row solving data shared by all sublattices.
struct Decoupled {
    slack_rows: Vec<usize>,
    /// ℤ-basis of `ker A_X`, stored slot-major: `kernel_by_slot[slot]`
    /// lists `(basis index, value)`.
    kernel: Vec<Vec<BigInt>>,
    g: IntFactorization,
}

/// `T_amb = ℤ^210 + W` as lower-echelon sparse columns.
struct Ambient {
    cols: Vec<Vec<(usize, BigRational)>>,
}

impl Ambient {
    fn new(d: i64) -> Self {
        let mut gens: Vec<Vec<BigRational>> = (0..T_DIM)
            .map(|i| {
                let mut v = vec![BigRational::zero(); T_DIM];
                v[i] = BigRational::one();
                v
            })
            .collect();
        gens.extend(w_vectors(d));
        let lat = LatticeSpec::new(T_DIM, gens);
        let basis = lat.basis();
        assert_eq!(basis.len(), T_DIM);
        let cols: Vec<Vec<(usize, BigRational)>> = basis
            .iter()
            .map(|b| b.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect())
            .collect();
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c[0].0, j, "ambient basis is not square lower echelon");
        }
        Ambient { cols }
    }

    /// `B⁻¹·t` by forward substitution.
    fn coords(&self, t: &RatT) -> RatT {
        let mut t = t.clone();
        let mut out = RatT::new();
        while let Some((&r, v)) = t.iter().next() {
            let v = v.clone();
            let col = &self.cols[r];
            let c = &v / &col[0].1;
            for (i, x) in col {
                let e = t.entry(*i).or_insert_with(BigRational::zero);
                *e -= &c * x;
                if e.is_zero() {
                    t.remove(i);
                }
            }
            out.insert(r, c);
        }
        out
    }

    fn column(&self, j: usize) -> RatT {
        self.cols[j].iter().cloned().collect()
    }
}

/// A basis of `T_amb` adapted to `L`: `L = ⊕ δ_j ℤ b_j`.
pub struct Adapted {
    /// Column `k` of the coordinate map `M` (integer on `T_amb`).
    m_cols: Vec<BTreeMap<usize, BigInt>>,
    pub basis: Vec<RatT>,
    pub delta: Vec<BigInt>,
}

impl Adapted {
    fn new(amb: &Ambient, l_gens: &[Vec<BigRational>]) -> Self {
        let lb: Vec<RatT> = l_gens
            .iter()
            .map(|g| amb.coords(&g.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()))
            .collect();
        let mut support: Vec<usize> = lb.iter().flat_map(|c| c.keys().copied()).collect();
        support.sort();
        support.dedup();
        let pos: BTreeMap<usize, usize> = support.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let n = support.len();
        let mut left = IntMatrix::identity(n);
        let mut u = IntMatrix::identity(n);
        let mut delta = vec![BigInt::zero(); T_DIM];
        if n > 0 {
            let mut m = IntMatrix::dense_zeros(n, lb.len());
            for (j, c) in lb.iter().enumerate() {
                for (r, x) in c {
                    assert!(x.is_integer(), "L is not inside the ambient lattice");
                    m.set(pos[r], j, x.to_integer());
                }
            }
            let s = snf(&m);
            for i in 0..s.rank {
                delta[support[i]] = s.s.get(i, i).clone();
            }
            left = s.left;
            u = s.u;
        }
        // M = left'·B⁻¹, columns
        let mut m_cols = Vec::with_capacity(T_DIM);
        for k in 0..T_DIM {
            let mut e = RatT::new();
            e.insert(k, BigRational::one());
            let c = amb.coords(&e);
            let mut col = BTreeMap::new();
            let mut push = |i: usize, v: BigRational| {
                assert!(v.is_integer(), "coordinate map is not integral");
                if !v.is_zero() {
                    let e = col.entry(i).or_insert_with(BigInt::zero);
                    *e += v.to_integer();
                }
            };
            for (r, x) in &c {
                match pos.get(r) {
                    None => push(*r, x.clone()),
                    Some(&pr) => {
                        for (i, &si) in support.iter().enumerate() {
                            let l = left.get(i, pr);
                            if !l.is_zero() {
                                push(si, rat(l) * x);
                            }
                        }
                    }
                }
            }
            col.retain(|_, v| !v.is_zero());
            m_cols.push(col);
        }
        let basis = (0..T_DIM)
            .map(|j| match pos.get(&j) {
                None => amb.column(j),
                Some(&pj) => {
                    let mut acc = RatT::new();
                    for (i, &si) in support.iter().enumerate() {
                        let c = u.get(i, pj);
                        if !c.is_zero() {
                            add_scaled_rat(&mut acc, &rat(c), &amb.column(si));
                        }
                    }
                    acc
                }
            })
            .collect();
        Adapted { m_cols, basis, delta }
    }

    /// Coordinates of an integer vector in the adapted basis.
    pub fn coords(&self, t: &SparseT) -> BTreeMap<usize, BigInt> {
        let mut out: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (&k, x) in &t.0 {
            for (&j, m) in &self.m_cols[k] {
                let e = out.entry(j).or_insert_with(BigInt::zero);
                *e += x * m;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// The coordinate functional `j` as a dense rational row on `T`.
    pub fn functional(&self, j: usize) -> Vec<BigRational> {
        (0..T_DIM).map(|k| self.m_cols[k].get(&j).map(rat).unwrap_or_else(BigRational::zero)).collect()
    }
}

/// Everything derived from the assembled system that does not depend on
/// the target sublattice.
pub struct ObstructionContext {
    pub system: EquationSystem,
    pub factor: IntFactorization,
    /// `(k, y_k·R)` for the left-kernel basis vectors with nonzero value.
    pub obstructions: Vec<(usize, SparseT)>,
    pub image: Echelon,
    decoupled: OnceCell<Decoupled>,
    ambient: OnceCell<Ambient>,
}

impl fmt::Debug for ObstructionContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObstructionContext")
            .field("d", &self.system.d)
            .field("rows", &self.system.nrows())
            .field("rank", &self.factor.rank())
            .field("image_dim", &self.image.dim())
            .finish()
    }
}

impl ObstructionContext {
    pub fn new(system: EquationSystem) -> Self {
        let factor = IntFactorization::from_rows(system.sparse_rows(), system.nslots, true);
        let values = obstruction_values(&factor, &system.rhs());
        let mut image = Echelon::default();
        let mut obstructions = Vec::new();
        for (k, v) in values.into_iter().enumerate() {
            if !v.is_zero() {
                image.insert(&sparse_to_rat(&v));
                obstructions.push((k, v));
            }
        }
        ObstructionContext { system, factor, obstructions, image, decoupled: OnceCell::new(), ambient: OnceCell::new() }
    }

    pub fn d(&self) -> i64 {
        self.system.d
    }

    pub fn rank(&self) -> usize {
        self.factor.rank()
    }

    /// `dim_ℚ span{y·R : y·A = 0}`.
    pub fn image_dim(&self) -> usize {
        self.image.dim()
    }

    fn integral_y(&self, k: usize) -> Vec<(usize, BigInt)> {
        self.factor
            .left_kernel_vector(k)
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| {
                assert!(v.is_integer(), "left-kernel vector is not integral");
                (i, v.to_integer())
            })
            .collect()
    }

    fn ambient(&self) -> &Ambient {
        self.ambient.get_or_init(|| Ambient::new(self.system.d))
    }

    fn decoupled(&self) -> &Decoupled {
        self.decoupled.get_or_init(|| {
            let sys = &self.system;
            let exact_rows = sys.rows_of(|r| !r.residual);
            let slack_rows = sys.rows_of(|r| r.residual);
            for &i in &exact_rows {
                assert!(sys.rows[i].rhs.is_zero(), "exact rows must be homogeneous");
            }
            let fx = IntFactorization::from_rows(
                exact_rows.iter().map(|&i| sys.rows[i].entries.clone()).collect(),
                sys.nslots,
                true,
            );
            let kernel = fx.kernel_basis();
            let mut by_slot: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); sys.nslots];
            for (j, k) in kernel.iter().enumerate() {
                for (s, v) in k.iter().enumerate() {
                    if !v.is_zero() {
                        by_slot[s].push((j, v.clone()));
                    }
                }
            }
            let g_rows: Vec<Vec<(usize, BigInt)>> = slack_rows
                .iter()
                .map(|&i| {
                    let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                    for (s, c) in &sys.rows[i].entries {
                        for (j, v) in &by_slot[*s] {
                            *acc.entry(*j).or_insert_with(BigInt::zero) += c * v;
                        }
                    }
                    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
                })
                .collect();
            let g = IntFactorization::from_rows(g_rows, kernel.len(), true);
            Decoupled { slack_rows, kernel, g }
        })
    }

    /// A ℤ-basis of the integer kernel of the exact rows.
    pub fn exact_kernel(&self) -> &[Vec<BigInt>] {
        &self.decoupled().kernel
    }

    /// The coordinate system adapted to `L`.
    pub fn adapted(&self, l: &SublatticeSpec) -> Adapted {
        Adapted::new(self.ambient(), &l.t_generators(self.system.d))
    }

    /// Membership test for `T_amb = ℤ^210 + W`.
    pub fn ambient_lattice(&self) -> LatticeSpec {
        let mut gens: Vec<Vec<BigRational>> = (0..T_DIM)
            .map(|i| {
                let mut v = vec![BigRational::zero(); T_DIM];
                v[i] = BigRational::one();
                v
            })
            .collect();
        gens.extend(w_vectors(self.system.d));
        LatticeSpec::new(T_DIM, gens)
    }
}

/// Certificate that `A·λ = R` has no rational solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactWitness {
    pub y: Vec<(usize, BigInt)>,
    pub value: SparseT,
}

impl ExactWitness {
    /// Recomputes `y·A` and `y·R` from the rows.
    pub fn verify(&self, sys: &EquationSystem) -> bool {
        let mut ya: BTreeMap<usize, BigInt> = BTreeMap::new();
        let mut yr = SparseT::default();
        for (i, c) in &self.y {
            let Some(row) = sys.rows.get(*i) else { return false };
            for (s, v) in &row.entries {
                *ya.entry(*s).or_insert_with(BigInt::zero) += c * v;
            }
            yr.add_scaled(c, &row.rhs);
        }
        ya.values().all(|v| v.is_zero()) && !yr.is_zero() && yr == self.value
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnexpectedlyFeasible;

impl fmt::Display for UnexpectedlyFeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "the system is solvable on the nose over Q")
    }
}

pub fn solve_exact_infeasibility(ctx: &ObstructionContext) -> Result<ExactWitness, UnexpectedlyFeasible> {
    let (k, value) = ctx.obstructions.first().ok_or(UnexpectedlyFeasible)?;
    Ok(ExactWitness { y: ctx.integral_y(*k), value: value.clone() })
}

/// `y·A = 0`, `g` kills `L`, `g(y·R) ≠ 0`: no rational solution modulo `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalWitness {
    pub y: Vec<(usize, BigInt)>,
    pub g: Vec<BigRational>,
    pub value: BigRational,
}

impl RationalWitness {
    pub fn verify(&self, sys: &EquationSystem, l_gens: &[Vec<BigRational>]) -> bool {
        let mut ya: BTreeMap<usize, BigInt> = BTreeMap::new();
        let mut yr = SparseT::default();
        for (i, c) in &self.y {
            let Some(row) = sys.rows.get(*i) else { return false };
            for (s, v) in &row.entries {
                *ya.entry(*s).or_insert_with(BigInt::zero) += c * v;
            }
            yr.add_scaled(c, &row.rhs);
        }
        if self.g.len() != T_DIM || !ya.values().all(|v| v.is_zero()) {
            return false;
        }
        let kills = l_gens.iter().all(|l| l.iter().zip(&self.g).map(|(a, b)| a * b).sum::<BigRational>().is_zero());
        let val = dot_dense_sparse(&self.g, &sparse_to_rat(&yr));
        kills && !val.is_zero() && val == self.value
    }
}

/// Integer obstruction in coordinate `coordinate` of the adapted basis.
///
/// `functional` is integral on `T_amb` and maps `L` into `δℤ`; `y` lives on
/// residual rows with `δ·y` integral, `y·A_S·k` integral for every `k` in
/// the exact kernel, and `y·functional(R)` not integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerWitness {
    pub coordinate: usize,
    pub functional: Vec<BigRational>,
    pub delta: BigInt,
    pub y: Vec<(usize, BigRational)>,
}

impl IntegerWitness {
    pub fn verify(&self, ctx: &ObstructionContext, l_gens: &[Vec<BigRational>]) -> bool {
        let sys = &ctx.system;
        let phi = &self.functional;
        if phi.len() != T_DIM || !phi.iter().all(|x| x.is_integer()) {
            return false;
        }
        for w in w_vectors(sys.d) {
            let v: BigRational = w.iter().zip(phi).map(|(a, b)| a * b).sum();
            if !v.is_integer() {
                return false;
            }
        }
        let dl = rat(&self.delta);
        for l in l_gens {
            let v: BigRational = l.iter().zip(phi).map(|(a, b)| a * b).sum();
            let ok = if self.delta.is_zero() { v.is_zero() } else { (v / &dl).is_integer() };
            if !ok {
                return false;
            }
        }
        let mut ya: BTreeMap<usize, BigRational> = BTreeMap::new();
        let mut yr = BigRational::zero();
        for (i, c) in &self.y {
            let Some(row) = sys.rows.get(*i) else { return false };
            if !row.residual {
                return false;
            }
            if !(c * &dl).is_integer() {
                return false;
            }
            for (s, v) in &row.entries {
                *ya.entry(*s).or_insert_with(BigRational::zero) += c * rat(v);
            }
            let pr: BigRational = row.rhs.0.iter().map(|(&k, x)| &phi[k] * rat(x)).sum();
            yr += c * pr;
        }
        let exact = sys.rows_of(|r| !r.residual);
        for k in ctx.exact_kernel() {
            for &i in &exact {
                let v: BigInt = sys.rows[i].entries.iter().map(|(s, c)| c * &k[*s]).sum();
                if !v.is_zero() {
                    return false;
                }
            }
            let v: BigRational = ya.iter().map(|(s, c)| c * rat(&k[*s])).sum();
            if !v.is_integer() {
                return false;
            }
        }
        !yr.is_integer()
    }
}

/// λ1 values and residuals of a solution modulo `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModLSolution {
    pub lambda: BTreeMap<usize, RatT>,
    /// Nonzero residuals, by row.
    pub residuals: BTreeMap<usize, RatT>,
}

impl ModLSolution {
    /// Independent re-check: every row holds with its residual, residuals
    /// lie in `L`, exact rows have none, λ takes values in `ambient`.
    pub fn verify(&self, sys: &EquationSystem, l: &LatticeSpec, ambient: &LatticeSpec) -> bool {
        let lr = l.reducer();
        let ar = ambient.reducer();
        for v in self.lambda.values() {
            if !ar.reduce(&dense(v)).map(|x| x.iter().all(|c| c.is_zero())).unwrap_or(false) {
                return false;
            }
        }
        for (i, row) in sys.rows.iter().enumerate() {
            let mut acc = sparse_to_rat(&row.rhs);
            for (s, c) in &row.entries {
                if let Some(v) = self.lambda.get(s) {
                    add_scaled_rat(&mut acc, &-rat(c), v);
                }
            }
            let stored = self.residuals.get(&i).cloned().unwrap_or_default();
            if acc != stored {
                return false;
            }
            if !acc.is_empty() {
                if !row.residual {
                    return false;
                }
                if !lr.reduce(&dense(&acc)).map(|x| x.iter().all(|c| c.is_zero())).unwrap_or(false) {
                    return false;
                }
            }
        }
        true
    }

    /// Residual (θ, w1, w2)-coordinates, per row.
    pub fn residual_triples(&self, d: i64) -> BTreeMap<usize, [BigRational; 3]> {
        self.residuals
            .iter()
            .map(|(&i, r)| (i, super::w_coordinates(d, &dense(r)).expect("residuals lie in W")))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModLOutcome {
    Solvable(ModLSolution),
    Rational(RationalWitness),
    Integer(IntegerWitness),
}

impl ModLOutcome {
    pub fn is_solvable(&self) -> bool {
        matches!(self, ModLOutcome::Solvable(_))
    }

    /// Re-verifies whichever certificate is carried.
    pub fn verify(&self, ctx: &ObstructionContext, l: &SublatticeSpec) -> bool {
        let gens = l.t_generators(ctx.d());
        match self {
            ModLOutcome::Solvable(s) => s.verify(&ctx.system, &l.t_lattice(ctx.d()), &ctx.ambient_lattice()),
            ModLOutcome::Rational(w) => w.verify(&ctx.system, &gens),
            ModLOutcome::Integer(w) => w.verify(ctx, &gens),
        }
    }
}

/// Rational feasibility modulo `L`: `None` if every obstruction value lies
/// in `L⊗ℚ`, otherwise a witness.
pub fn rational_check(ctx: &ObstructionContext, l_gens: &[Vec<BigRational>]) -> Option<RationalWitness> {
    let mut span = Echelon::default();
    for g in l_gens {
        span.insert(&g.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect());
    }
    let (k, v) = ctx.obstructions.iter().find(|(_, v)| !span.contains(&sparse_to_rat(v)))?;
    let v = dense(&sparse_to_rat(v));
    // g = v minus its Gram projection onto L⊗ℚ
    let basis = span.basis();
    let g = if basis.is_empty() {
        v.clone()
    } else {
        let n = basis.len();
        let mut gram = RatMatrix::zeros(n, n);
        let dot = |a: &[BigRational], b: &[BigRational]| -> BigRational { a.iter().zip(b).map(|(x, y)| x * y).sum() };
        for i in 0..n {
            for j in 0..n {
                gram.set(i, j, dot(&basis[i], &basis[j]));
            }
        }
        let rhs: Vec<BigRational> = basis.iter().map(|b| dot(b, &v)).collect();
        let c = gram.solve(&rhs).expect("Gram matrix of a basis is invertible");
        let mut g = v.clone();
        for (ci, b) in c.iter().zip(&basis) {
            for (gi, bi) in g.iter_mut().zip(b) {
                *gi -= ci * bi;
            }
        }
        g
    };
    let value = g.iter().zip(&v).map(|(a, b)| a * b).sum();
    Some(RationalWitness { y: ctx.integral_y(*k), g, value })
}

/// Decides whether `A·λ + r = R` has a solution with `λ` in `T_amb` and
/// residuals `r ∈ L` on residual rows.
pub fn solvable_mod_sublattice(ctx: &ObstructionContext, l: &SublatticeSpec) -> ModLOutcome {
    let gens = l.t_generators(ctx.d());
    if let Some(w) = rational_check(ctx, &gens) {
        return ModLOutcome::Rational(w);
    }
    let dec = ctx.decoupled();
    let ad = ctx.adapted(l);
    let sys = &ctx.system;
    let coords: Vec<BTreeMap<usize, BigInt>> = dec.slack_rows.iter().map(|&i| ad.coords(&sys.rows[i].rhs)).collect();
    let mut active: Vec<usize> = coords.iter().flat_map(|c| c.keys().copied()).collect();
    active.sort();
    active.dedup();
    let mut lambda: BTreeMap<usize, RatT> = BTreeMap::new();
    let mut residuals: BTreeMap<usize, RatT> = BTreeMap::new();
    for j in active {
        let rho: Vec<BigInt> = coords.iter().map(|c| c.get(&j).cloned().unwrap_or_else(BigInt::zero)).collect();
        let delta = &ad.delta[j];
        match dec.g.solve_plus(&rho, delta) {
            Ok((nu, kappa)) => {
                let bj = &ad.basis[j];
                let mut mu = vec![BigInt::zero(); sys.nslots];
                for (c, k) in nu.iter().zip(&dec.kernel) {
                    if !c.is_zero() {
                        for (m, kv) in mu.iter_mut().zip(k) {
                            if !kv.is_zero() {
                                *m += c * kv;
                            }
                        }
                    }
                }
                for (s, m) in mu.iter().enumerate() {
                    if !m.is_zero() {
                        add_scaled_rat(lambda.entry(s).or_default(), &rat(m), bj);
                    }
                }
                for (pos, k) in kappa.iter().enumerate() {
                    if !k.is_zero() {
                        add_scaled_rat(residuals.entry(dec.slack_rows[pos]).or_default(), &rat(&(delta * k)), bj);
                    }
                }
            }
            Err(ob) => {
                let y = dec.g.plus_certificate(&ob);
                let y = y
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(pos, v)| (dec.slack_rows[pos], v))
                    .collect();
                return ModLOutcome::Integer(IntegerWitness {
                    coordinate: j,
                    functional: ad.functional(j),
                    delta: delta.clone(),
                    y,
                });
            }
        }
    }
    lambda.retain(|_, v| !v.is_empty());
    residuals.retain(|_, v| !v.is_empty());
    ModLOutcome::Solvable(ModLSolution { lambda, residuals })
}

pub fn solve_mod_w(ctx: &ObstructionContext) -> ModLOutcome {
    solvable_mod_sublattice(ctx, &SublatticeSpec::w())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruction::assemble::{assemble_system, AssembleOptions};
    use crate::q;

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::default();
        let v = |xs: &[(usize, i64)]| -> RatT { xs.iter().map(|&(i, x)| (i, q(x))).collect() };
        assert!(e.insert(&v(&[(0, 2), (3, 1)])));
        assert!(e.insert(&v(&[(3, 1), (5, -1)])));
        assert!(!e.insert(&v(&[(0, 4), (3, 4), (5, -2)])));
        assert!(e.contains(&v(&[(0, 2), (5, 1)])));
        assert!(!e.contains(&v(&[(5, 1)])));
        assert_eq!(e.dim(), 2);
    }

    #[test]
    fn adapted_basis_is_consistent() {
        let ctx_amb = Ambient::new(2);
        let l = SublatticeSpec::from_i64(&[[2, 0, 0], [0, 1, 1]]);
        let ad = Adapted::new(&ctx_amb, &l.t_generators(2));
        // M·b_j = e_j
        for j in [0usize, 7, 100, 209] {
            let b = &ad.basis[j];
            let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
            for (k, x) in b {
                for (i, m) in &ad.m_cols[*k] {
                    *acc.entry(*i).or_insert_with(BigRational::zero) += x * rat(m);
                }
            }
            acc.retain(|_, v| !v.is_zero());
            assert_eq!(acc, [(j, q(1))].into_iter().collect());
        }
        let nz: Vec<&BigInt> = ad.delta.iter().filter(|x| !x.is_zero()).collect();
        assert_eq!(nz.len(), 2);
        // L generators have coordinates divisible by δ
        for g in l.t_generators(2) {
            let t: RatT = g.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
            let c = ctx_amb.coords(&t);
            assert!(c.values().all(|x| x.is_integer()));
        }
    }

    #[test]
    fn without_descent_solvable_on_the_nose() {
        let sys = assemble_system(1, AssembleOptions { omit_descent: true, ..Default::default() });
        let ctx = ObstructionContext::new(sys);
        assert_eq!(ctx.image_dim(), 0);
        assert!(solve_exact_infeasibility(&ctx).is_err());
        let out = solvable_mod_sublattice(&ctx, &SublatticeSpec::zero());
        assert!(out.is_solvable());
        assert!(out.verify(&ctx, &SublatticeSpec::zero()));
    }
}
