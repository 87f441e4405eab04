//! Index conventions and exact multilinear operations.
//!
//! Orderings (exported by the CLI as index tables):
//! - Γ2 basis e1..e4 → 0..3; Γp basis a, b, c, e → 0..3.
//! - Γ2⊗Γp: `p ⊗ e_k` ↦ `4·p + k`.
//! - ∧²Γ2: e12, e13, e14, e23, e24, e34.
//! - ∧³Γ2: e123, e124, e134, e234.
//! - Sym² of an n-dimensional space: pairs `i ≤ j` in lexicographic order
//!   (10 for Γp, 21 for ∧²Γ2).
//! - T = Sym²Γp ⊗ Sym²(∧²Γ2): `p·21 + w`.
//!
//! Symmetric products follow the polynomial convention: `x·y` for `x ≠ y`
//! has coefficient 1 on the monomial `xy`, never ½.

mod polarize;

pub use polarize::{
    ArgExpr, Equation, Group, Kind, LhsTerm, LinExpr, PolarizeError, PolarizedSet, RhsTerm, Schema, UnknownDecl, Var,
};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::primitive_rat;
use crate::poly::PARAM_NAMES;

pub const WEDGE2_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
pub const WEDGE3_TRIPLES: [(usize, usize, usize); 4] = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
pub const T_DIM: usize = 210;
pub const SYM2_GP_DIM: usize = 10;
pub const SYM2_W_DIM: usize = 21;

/// A Γ2 vector with rational coordinates.
pub type G2Vector = [BigRational; 4];
/// A Γp vector (integer coordinates in a, b, c, e).
pub type GpVector = [BigInt; 4];

pub fn g2(v: [i64; 4]) -> G2Vector {
    v.map(crate::q)
}

pub fn gp(v: [i64; 4]) -> GpVector {
    v.map(BigInt::from)
}

pub fn gp_rat(v: &GpVector) -> [BigRational; 4] {
    core::array::from_fn(|i| BigRational::from_integer(v[i].clone()))
}

/// Index of `p ⊗ e_k` in Γ2⊗Γp.
pub fn x_index(p: usize, k: usize) -> usize {
    4 * p + k
}

/// `s ⊗ u ∈ Γ2⊗Γp` as a 16-vector.
pub fn tensor(s: &[BigRational; 4], u: &G2Vector) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); 16];
    for p in 0..4 {
        for k in 0..4 {
            out[x_index(p, k)] = &s[p] * &u[k];
        }
    }
    out
}

/// Index and sign of `e_k ∧ e_l` in the ∧² basis (`None` when `k = l`).
pub fn wedge2_index(k: usize, l: usize) -> Option<(usize, i32)> {
    if k == l {
        return None;
    }
    let (a, b, sign) = if k < l { (k, l, 1) } else { (l, k, -1) };
    let idx = WEDGE2_PAIRS.iter().position(|&p| p == (a, b)).unwrap();
    Some((idx, sign))
}

/// Index and sign of `e_i ∧ e_j ∧ e_k` in the ∧³ basis.
pub fn wedge3_index(i: usize, j: usize, k: usize) -> Option<(usize, i32)> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut v = [i, j, k];
    let mut sign = 1;
    for a in 0..3 {
        for b in 0..2 - a {
            if v[b] > v[b + 1] {
                v.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    let idx = WEDGE3_TRIPLES.iter().position(|&t| t == (v[0], v[1], v[2])).unwrap();
    Some((idx, sign))
}

/// Pairs `i ≤ j` of an `n`-dimensional space, lexicographic.
pub fn sym2_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            out.push((i, j));
        }
    }
    out
}

/// Index of the monomial `x_i x_j` in Sym² of an `n`-dimensional space.
pub fn sym2_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // rows before i contribute n + (n-1) + … + (n-i+1)
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

/// Index in T of `(Sym²Γp monomial, Sym²∧² monomial)`.
pub fn t_index(p: usize, w: usize) -> usize {
    p * SYM2_W_DIM + w
}

pub fn wedge2_label(i: usize) -> String {
    let (a, b) = WEDGE2_PAIRS[i];
    format!("e{}{}", a + 1, b + 1)
}

pub fn wedge3_label(i: usize) -> String {
    let (a, b, c) = WEDGE3_TRIPLES[i];
    format!("e{}{}{}", a + 1, b + 1, c + 1)
}

pub fn sym2_gp_label(i: usize) -> String {
    let (a, b) = sym2_pairs(4)[i];
    if a == b {
        format!("{}^2", PARAM_NAMES[a])
    } else {
        format!("{}*{}", PARAM_NAMES[a], PARAM_NAMES[b])
    }
}

pub fn sym2_w_label(i: usize) -> String {
    let (a, b) = sym2_pairs(6)[i];
    if a == b {
        format!("{}^2", wedge2_label(a))
    } else {
        format!("{}*{}", wedge2_label(a), wedge2_label(b))
    }
}

pub fn t_label(i: usize) -> String {
    format!("{}*{}", sym2_gp_label(i / SYM2_W_DIM), sym2_w_label(i % SYM2_W_DIM))
}

/// An element of ∧²Γ2 ⊗ ℚ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Wedge2(pub [BigRational; 6]);

impl Wedge2 {
    pub fn zero() -> Self {
        Wedge2(core::array::from_fn(|_| BigRational::zero()))
    }

    /// The basis element with index `i`.
    pub fn basis(i: usize) -> Self {
        let mut w = Self::zero();
        w.0[i] = BigRational::one();
        w
    }

    /// `e_k ∧ e_l` (possibly negative or zero).
    pub fn e(k: usize, l: usize) -> Self {
        let mut w = Self::zero();
        if let Some((i, s)) = wedge2_index(k, l) {
            w.0[i] = crate::q(s as i64);
        }
        w
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Wedge2(core::array::from_fn(|i| &self.0[i] * c))
    }

    /// `self = λ·other` for some λ; returns λ (other must be nonzero).
    pub fn ratio(&self, other: &Wedge2) -> Option<BigRational> {
        let k = other.0.iter().position(|x| !x.is_zero())?;
        let lam = &self.0[k] / &other.0[k];
        if (0..6).all(|i| self.0[i] == &lam * &other.0[i]) {
            Some(lam)
        } else {
            None
        }
    }
}

impl Add for &Wedge2 {
    type Output = Wedge2;
    fn add(self, o: &Wedge2) -> Wedge2 {
        Wedge2(core::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for &Wedge2 {
    type Output = Wedge2;
    fn sub(self, o: &Wedge2) -> Wedge2 {
        Wedge2(core::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl Neg for &Wedge2 {
    type Output = Wedge2;
    fn neg(self) -> Wedge2 {
        Wedge2(core::array::from_fn(|i| -self.0[i].clone()))
    }
}

impl fmt::Display for Wedge2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.0.iter().enumerate().map(|(i, c)| (c, wedge2_label(i))))
    }
}

fn fmt_terms<'a>(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (&'a BigRational, String)>) -> fmt::Result {
    let mut first = true;
    for (c, label) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        if a.is_one() {
            write!(f, "{label}")?;
        } else {
            write!(f, "{a}*{label}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// `u ∧ v`: coordinates are the minors `u_k v_l − u_l v_k`, `k < l`.
pub fn wedge2(u: &G2Vector, v: &G2Vector) -> Wedge2 {
    Wedge2(core::array::from_fn(|i| {
        let (k, l) = WEDGE2_PAIRS[i];
        &u[k] * &v[l] - &u[l] * &v[k]
    }))
}

/// Symmetric product in Sym² of an `n`-dimensional space, polynomial
/// convention.
pub fn sym2_product(p: &[BigRational], q: &[BigRational]) -> Vec<BigRational> {
    let n = p.len();
    assert_eq!(q.len(), n);
    sym2_pairs(n)
        .into_iter()
        .map(|(i, j)| if i == j { &p[i] * &q[i] } else { &p[i] * &q[j] + &p[j] * &q[i] })
        .collect()
}

/// `p·q ∈ Sym²(∧²Γ2)` (21 coordinates).
pub fn sym_square_embed(p: &Wedge2, q: &Wedge2) -> Vec<BigRational> {
    sym2_product(&p.0, &q.0)
}

/// `p·q ∈ Sym²Γp` (10 coordinates).
pub fn sym2_gp(p: &[BigRational; 4], q: &[BigRational; 4]) -> Vec<BigRational> {
    sym2_product(p, q)
}

/// An element of T = Sym²Γp ⊗ Sym²(∧²Γ2), 210 rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassT(pub Vec<BigRational>);

impl ClassT {
    pub fn zero() -> Self {
        ClassT(vec![BigRational::zero(); T_DIM])
    }

    /// `P ⊗ W` for `P ∈ Sym²Γp`, `W ∈ Sym²(∧²Γ2)`.
    pub fn product(p: &[BigRational], w: &[BigRational]) -> Self {
        assert_eq!(p.len(), SYM2_GP_DIM);
        assert_eq!(w.len(), SYM2_W_DIM);
        let mut t = Self::zero();
        for (i, a) in p.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in w.iter().enumerate() {
                if !b.is_zero() {
                    t.0[t_index(i, j)] = a * b;
                }
            }
        }
        t
    }

    pub fn basis(i: usize) -> Self {
        let mut t = Self::zero();
        t.0[i] = BigRational::one();
        t
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        ClassT(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add_assign_scaled(&mut self, c: &BigRational, other: &ClassT) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }

    /// Coefficient at (Sym²Γp pair, Sym²∧² pair).
    pub fn coeff(&self, p: (usize, usize), w: (usize, usize)) -> &BigRational {
        &self.0[t_index(sym2_index(4, p.0, p.1), sym2_index(6, w.0, w.1))]
    }

    /// The Sym²Γp component multiplying a given Sym²∧² monomial.
    pub fn gp_part(&self, w: usize) -> Vec<BigRational> {
        (0..SYM2_GP_DIM).map(|p| self.0[t_index(p, w)].clone()).collect()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..T_DIM).filter(|&i| !self.0[i].is_zero()).collect()
    }
}

impl Add for &ClassT {
    type Output = ClassT;
    fn add(self, o: &ClassT) -> ClassT {
        ClassT(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ClassT {
    type Output = ClassT;
    fn sub(self, o: &ClassT) -> ClassT {
        ClassT(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ClassT {
    type Output = ClassT;
    fn neg(self) -> ClassT {
        ClassT(self.0.iter().map(|a| -a.clone()).collect())
    }
}

impl fmt::Display for ClassT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.0.iter().enumerate().map(|(i, c)| (c, t_label(i))))
    }
}

impl fmt::Debug for ClassT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sym²Γp ⊗ ∧²Γ2 element: for each wedge pair, a Sym²Γp vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymWedge(pub [Vec<BigRational>; 6]);

impl SymWedge {
    pub fn zero() -> Self {
        SymWedge(core::array::from_fn(|_| vec![BigRational::zero(); SYM2_GP_DIM]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|v| v.iter().all(|x| x.is_zero()))
    }

    pub fn neg(&self) -> Self {
        SymWedge(core::array::from_fn(|i| self.0[i].iter().map(|x| -x.clone()).collect()))
    }

    /// Multiplies the ∧²Γ2 slot symmetrically with `w`, giving an element of T.
    pub fn times_wedge(&self, w: &Wedge2) -> ClassT {
        let mut t = ClassT::zero();
        for (k, p) in self.0.iter().enumerate() {
            let sq = sym_square_embed(&Wedge2::basis(k), w);
            let prod = ClassT::product(p, &sq);
            t.add_assign_scaled(&BigRational::one(), &prod);
        }
        t
    }
}

/// Sym²Γp⊗∧²Γ2 part of `g₁ ∧ g₂` for `g₁, g₂ ∈ Γ2⊗Γp` given as four
/// Γp-entries (one per e_k): the e_kl coefficient is the 2×2 minor
/// `g₁[k]·g₂[l] − g₁[l]·g₂[k]` taken in Sym²Γp.
pub fn gamma_wedge_sym_part(g1: &[[BigRational; 4]; 4], g2: &[[BigRational; 4]; 4]) -> SymWedge {
    SymWedge(core::array::from_fn(|i| {
        let (k, l) = WEDGE2_PAIRS[i];
        let a = sym2_gp(&g1[k], &g2[l]);
        let b = sym2_gp(&g1[l], &g2[k]);
        a.iter().zip(&b).map(|(x, y)| x - y).collect()
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroVector;

impl fmt::Display for ZeroVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zero vector has no direction")
    }
}

/// Canonical primitive integer representative of the line through `u`:
/// content removed, first nonzero coordinate positive.
pub fn primitive_direction(u: &[BigRational]) -> Result<Vec<BigInt>, ZeroVector> {
    primitive_rat(u).ok_or(ZeroVector)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn sym2_index_is_position() {
        for n in [4, 6] {
            for (k, (i, j)) in sym2_pairs(n).into_iter().enumerate() {
                assert_eq!(sym2_index(n, i, j), k);
                assert_eq!(sym2_index(n, j, i), k);
            }
        }
    }

    #[test]
    fn wedge_examples() {
        let e1 = g2([1, 0, 0, 0]);
        let e2 = g2([0, 1, 0, 0]);
        assert_eq!(wedge2(&e1, &e2), Wedge2::basis(0));
        assert_eq!(wedge2(&g2([1, 1, 0, 0]), &e2), Wedge2::basis(0));
        assert_eq!(wedge2(&e2, &e1), -&Wedge2::basis(0));
    }

    #[test]
    fn sym_square_examples() {
        let e12 = Wedge2::basis(0);
        let e34 = Wedge2::basis(5);
        let sq = sym_square_embed(&e12, &e12);
        assert_eq!(sq[sym2_index(6, 0, 0)], q(1));
        let mixed = sym_square_embed(&e12, &e34);
        assert_eq!(mixed[sym2_index(6, 0, 5)], q(1));
        assert_eq!(mixed, sym_square_embed(&e34, &e12));
        let s = &e12 + &e34;
        let sq = sym_square_embed(&s, &s);
        assert_eq!(sq[sym2_index(6, 0, 0)], q(1));
        assert_eq!(sq[sym2_index(6, 0, 5)], q(2));
        assert_eq!(sq[sym2_index(6, 5, 5)], q(1));
    }

    #[test]
    fn primitive_direction_examples() {
        assert_eq!(
            primitive_direction(&g2([0, -2, 0, 4])).unwrap(),
            [0, 1, 0, -2].map(BigInt::from).to_vec()
        );
        assert_eq!(primitive_direction(&g2([3, 0, 0, 0])).unwrap(), [1, 0, 0, 0].map(BigInt::from).to_vec());
        assert!(primitive_direction(&g2([0, 0, 0, 0])).is_err());
    }

    #[test]
    fn wedge3_signs() {
        assert_eq!(wedge3_index(0, 1, 2), Some((0, 1)));
        assert_eq!(wedge3_index(2, 0, 1), Some((0, 1)));
        assert_eq!(wedge3_index(1, 0, 2), Some((0, -1)));
        assert_eq!(wedge3_index(3, 1, 3), None);
    }

    #[test]
    fn labels() {
        assert_eq!(t_label(0), "a^2*e12^2");
        assert_eq!(sym2_gp_label(2), "a*c");
        assert_eq!(sym2_w_label(5), "e12*e34");
    }
}
