//! Formal coefficient extraction for universally quantified multilinear
//! identities.
//!
//! A [`Schema`] declares vector variables (each in a [`Group`] of fixed
//! total degree), multilinear unknowns, a left-hand side made of unknowns
//! applied to polynomial argument expressions, and a T-valued right-hand
//! side. [`Schema::polarize`] expands both sides in the basis coordinates of
//! the variables and returns one linear equation per monomial of the
//! declared multidegree.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{sym2_product, wedge2_index, ClassT, WEDGE2_PAIRS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Γp, basis a, b, c, e.
    Gp,
    /// Γ2, basis e1..e4.
    G2,
    /// ∧²Γ2.
    W2,
    /// Γ2⊗Γp.
    X,
}

impl Kind {
    pub fn dim(self) -> usize {
        match self {
            Kind::Gp | Kind::G2 => 4,
            Kind::W2 => 6,
            Kind::X => 16,
        }
    }
}

/// Index of a variable in [`Schema::vars`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub usize);

/// Affine expression `constant + Σ cᵢ·varᵢ` in one kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinExpr {
    pub kind: Kind,
    pub constant: Vec<BigRational>,
    pub terms: Vec<(Var, BigRational)>,
}

impl LinExpr {
    pub fn zero(kind: Kind) -> Self {
        LinExpr { kind, constant: vec![BigRational::zero(); kind.dim()], terms: Vec::new() }
    }

    pub fn var(kind: Kind, v: Var) -> Self {
        Self::zero(kind).plus(v, BigRational::one())
    }

    pub fn constant(kind: Kind, c: Vec<BigRational>) -> Self {
        assert_eq!(c.len(), kind.dim());
        LinExpr { kind, constant: c, terms: Vec::new() }
    }

    pub fn plus(mut self, v: Var, c: BigRational) -> Self {
        self.terms.push((v, c));
        self
    }
}

/// Argument of an unknown (or factor of the right-hand side).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArgExpr {
    Lin(LinExpr),
    /// `Σ pᵢ⊗gᵢ ∈ Γ2⊗Γp` with `pᵢ` of kind Gp and `gᵢ` of kind G2.
    Tensor(Vec<(LinExpr, LinExpr)>),
    /// `g ∧ h ∈ ∧²Γ2`.
    Wedge(LinExpr, LinExpr),
    /// A fixed vector of the given kind.
    Const(Kind, Vec<BigRational>),
}

impl ArgExpr {
    pub fn kind(&self) -> Kind {
        match self {
            ArgExpr::Lin(l) => l.kind,
            ArgExpr::Tensor(_) => Kind::X,
            ArgExpr::Wedge(..) => Kind::W2,
            ArgExpr::Const(k, _) => *k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub vars: Vec<Var>,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownDecl {
    pub name: String,
    pub args: Vec<Kind>,
}

impl UnknownDecl {
    pub fn slots(&self) -> usize {
        self.args.iter().map(|k| k.dim()).product()
    }
}

/// `coef · unknown(args…)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LhsTerm {
    pub coef: BigRational,
    pub unknown: usize,
    pub args: Vec<ArgExpr>,
}

/// `coef · (p₁·p₂) ⊗ (w₁·w₂) ∈ T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhsTerm {
    pub coef: BigRational,
    pub p: (ArgExpr, ArgExpr),
    pub w: (ArgExpr, ArgExpr),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Schema {
    pub vars: Vec<(String, Kind)>,
    pub groups: Vec<Group>,
    pub unknowns: Vec<UnknownDecl>,
    pub lhs: Vec<LhsTerm>,
    pub rhs: Vec<RhsTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolarizeError {
    /// A term has the wrong degree in some group.
    DegreeMismatch { term: String, group: usize, expected: u32, found: u32 },
    KindMismatch { term: String },
    UngroupedVariable(Var),
    ArgCount { term: String },
}

impl fmt::Display for PolarizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolarizeError::DegreeMismatch { term, group, expected, found } => {
                write!(f, "degree mismatch in {term}: group {group} declared {expected}, found {found}")
            }
            PolarizeError::KindMismatch { term } => write!(f, "kind mismatch in {term}"),
            PolarizeError::UngroupedVariable(v) => write!(f, "variable {} belongs to no group (or to two)", v.0),
            PolarizeError::ArgCount { term } => write!(f, "wrong number of arguments in {term}"),
        }
    }
}

/// One coefficient equation: `Σ lhs[slot]·λ[slot] = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    /// Exponents over the flattened variable coordinates.
    pub monomial: Vec<u8>,
    pub lhs: BTreeMap<usize, BigRational>,
    pub rhs: ClassT,
}

impl Equation {
    pub fn is_trivial(&self) -> bool {
        self.lhs.is_empty() && self.rhs.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct PolarizedSet {
    pub equations: Vec<Equation>,
    /// First flattened coordinate of each variable.
    pub var_offsets: Vec<usize>,
    /// First global slot of each unknown.
    pub slot_offsets: Vec<usize>,
    pub nslots: usize,
}

impl PolarizedSet {
    pub fn nontrivial(&self) -> impl Iterator<Item = &Equation> {
        self.equations.iter().filter(|e| !e.is_trivial())
    }

    fn monomial_value(&self, m: &[u8], point: &[Vec<BigRational>]) -> BigRational {
        let flat: Vec<&BigRational> = point.iter().flat_map(|v| v.iter()).collect();
        let mut acc = BigRational::one();
        for (i, &e) in m.iter().enumerate() {
            for _ in 0..e {
                acc *= flat[i];
            }
        }
        acc
    }

    /// `Σ_m x^m · (row_m · λ)` for a scalar-valued λ.
    pub fn evaluate_lhs(&self, point: &[Vec<BigRational>], lambda: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for eq in &self.equations {
            let row: BigRational = eq.lhs.iter().map(|(&k, c)| c * &lambda[k]).sum();
            if !row.is_zero() {
                acc += row * self.monomial_value(&eq.monomial, point);
            }
        }
        acc
    }

    /// `Σ_m x^m · rhs_m`.
    pub fn evaluate_rhs(&self, point: &[Vec<BigRational>]) -> ClassT {
        let mut acc = ClassT::zero();
        for eq in &self.equations {
            if !eq.rhs.is_zero() {
                acc.add_assign_scaled(&self.monomial_value(&eq.monomial, point), &eq.rhs);
            }
        }
        acc
    }
}

type Mono = Vec<u8>;

#[derive(Clone, Debug, Default)]
struct Poly(BTreeMap<Mono, BigRational>);

impl Poly {
    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(m.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&m);
        }
    }

    fn add(&mut self, other: &Poly, c: &BigRational) {
        for (m, v) in &other.0 {
            self.add_term(m.clone(), v * c);
        }
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                let m: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

impl Schema {
    pub fn add_var(&mut self, name: &str, kind: Kind) -> Var {
        self.vars.push((String::from(name), kind));
        Var(self.vars.len() - 1)
    }

    pub fn add_group(&mut self, vars: &[Var], degree: u32) {
        self.groups.push(Group { vars: vars.to_vec(), degree });
    }

    pub fn add_unknown(&mut self, name: &str, args: &[Kind]) -> usize {
        self.unknowns.push(UnknownDecl { name: String::from(name), args: args.to_vec() });
        self.unknowns.len() - 1
    }

    fn var_offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.vars.len());
        let mut acc = 0;
        for (_, k) in &self.vars {
            out.push(acc);
            acc += k.dim();
        }
        out
    }

    fn nflat(&self) -> usize {
        self.vars.iter().map(|(_, k)| k.dim()).sum()
    }

    fn slot_offsets(&self) -> (Vec<usize>, usize) {
        let mut out = Vec::new();
        let mut acc = 0;
        for u in &self.unknowns {
            out.push(acc);
            acc += u.slots();
        }
        (out, acc)
    }

    fn lin_polys(&self, l: &LinExpr, offs: &[usize], term: &str) -> Result<Vec<Poly>, PolarizeError> {
        let n = self.nflat();
        let dim = l.kind.dim();
        if l.constant.len() != dim {
            return Err(PolarizeError::KindMismatch { term: String::from(term) });
        }
        let mut out = vec![Poly::default(); dim];
        for (i, c) in l.constant.iter().enumerate() {
            out[i].add_term(vec![0; n], c.clone());
        }
        for (v, c) in &l.terms {
            if v.0 >= self.vars.len() || self.vars[v.0].1 != l.kind {
                return Err(PolarizeError::KindMismatch { term: String::from(term) });
            }
            for (i, p) in out.iter_mut().enumerate() {
                let mut m = vec![0u8; n];
                m[offs[v.0] + i] = 1;
                p.add_term(m, c.clone());
            }
        }
        Ok(out)
    }

    fn arg_polys(&self, a: &ArgExpr, offs: &[usize], term: &str) -> Result<Vec<Poly>, PolarizeError> {
        let mismatch = || PolarizeError::KindMismatch { term: String::from(term) };
        match a {
            ArgExpr::Lin(l) => self.lin_polys(l, offs, term),
            ArgExpr::Const(k, c) => {
                if c.len() != k.dim() {
                    return Err(mismatch());
                }
                let n = self.nflat();
                Ok(c.iter()
                    .map(|x| {
                        let mut p = Poly::default();
                        p.add_term(vec![0; n], x.clone());
                        p
                    })
                    .collect())
            }
            ArgExpr::Tensor(parts) => {
                let mut out = vec![Poly::default(); 16];
                for (p, g) in parts {
                    if p.kind != Kind::Gp || g.kind != Kind::G2 {
                        return Err(mismatch());
                    }
                    let pp = self.lin_polys(p, offs, term)?;
                    let gg = self.lin_polys(g, offs, term)?;
                    for i in 0..4 {
                        for k in 0..4 {
                            out[super::x_index(i, k)].add(&pp[i].mul(&gg[k]), &BigRational::one());
                        }
                    }
                }
                Ok(out)
            }
            ArgExpr::Wedge(g, h) => {
                if g.kind != Kind::G2 || h.kind != Kind::G2 {
                    return Err(mismatch());
                }
                let gg = self.lin_polys(g, offs, term)?;
                let hh = self.lin_polys(h, offs, term)?;
                Ok(WEDGE2_PAIRS
                    .iter()
                    .map(|&(k, l)| {
                        let mut p = gg[k].mul(&hh[l]);
                        p.add(&gg[l].mul(&hh[k]), &-BigRational::one());
                        p
                    })
                    .collect())
            }
        }
    }

    /// Group of each flattened coordinate.
    fn coord_groups(&self) -> Result<Vec<usize>, PolarizeError> {
        let offs = self.var_offsets();
        let mut owner = vec![None; self.vars.len()];
        for (gi, g) in self.groups.iter().enumerate() {
            for v in &g.vars {
                if v.0 >= self.vars.len() || owner[v.0].is_some() {
                    return Err(PolarizeError::UngroupedVariable(*v));
                }
                owner[v.0] = Some(gi);
            }
        }
        let mut out = vec![0; self.nflat()];
        for (vi, (_, k)) in self.vars.iter().enumerate() {
            let g = owner[vi].ok_or(PolarizeError::UngroupedVariable(Var(vi)))?;
            for i in 0..k.dim() {
                out[offs[vi] + i] = g;
            }
        }
        Ok(out)
    }

    fn check_degrees(&self, p: &Poly, groups: &[usize], term: &str) -> Result<(), PolarizeError> {
        for m in p.0.keys() {
            let mut deg = vec![0u32; self.groups.len()];
            for (i, &e) in m.iter().enumerate() {
                deg[groups[i]] += e as u32;
            }
            for (gi, g) in self.groups.iter().enumerate() {
                if deg[gi] != g.degree {
                    return Err(PolarizeError::DegreeMismatch {
                        term: String::from(term),
                        group: gi,
                        expected: g.degree,
                        found: deg[gi],
                    });
                }
            }
        }
        Ok(())
    }

    /// All monomials of the declared multidegree, group by group,
    /// lexicographically descending within each group.
    fn monomials(&self) -> Vec<Mono> {
        let offs = self.var_offsets();
        let n = self.nflat();
        let mut out: Vec<Mono> = vec![vec![0; n]];
        for g in &self.groups {
            let offs = &offs;
            let coords: Vec<usize> =
                g.vars.iter().flat_map(|v| (0..self.vars[v.0].1.dim()).map(move |i| offs[v.0] + i)).collect();
            let parts = compositions(g.degree, coords.len());
            let mut next = Vec::with_capacity(out.len() * parts.len());
            for m in &out {
                for p in &parts {
                    let mut m = m.clone();
                    for (j, &e) in p.iter().enumerate() {
                        m[coords[j]] = e;
                    }
                    next.push(m);
                }
            }
            out = next;
        }
        out
    }

    /// Expands both sides and returns one equation per monomial of the
    /// declared multidegree (trivial ones included).
    pub fn polarize(&self) -> Result<PolarizedSet, PolarizeError> {
        let offs = self.var_offsets();
        let groups = self.coord_groups()?;
        let (slot_offsets, nslots) = self.slot_offsets();
        let mut lhs: BTreeMap<Mono, BTreeMap<usize, BigRational>> = BTreeMap::new();
        for (ti, t) in self.lhs.iter().enumerate() {
            let name = format!("lhs term {ti}");
            let u = self.unknowns.get(t.unknown).ok_or(PolarizeError::ArgCount { term: name.clone() })?;
            if u.args.len() != t.args.len() {
                return Err(PolarizeError::ArgCount { term: name });
            }
            let mut polys = Vec::with_capacity(t.args.len());
            for (a, k) in t.args.iter().zip(&u.args) {
                if a.kind() != *k {
                    return Err(PolarizeError::KindMismatch { term: name });
                }
                polys.push(self.arg_polys(a, &offs, &name)?);
            }
            // walk all slot index tuples with a nonzero product
            let mut stack: Vec<(usize, usize, Poly)> = Vec::new();
            let mut one = Poly::default();
            one.add_term(vec![0; self.nflat()], t.coef.clone());
            stack.push((0, 0, one));
            while let Some((depth, idx, p)) = stack.pop() {
                if depth == polys.len() {
                    self.check_degrees(&p, &groups, &name)?;
                    let slot = slot_offsets[t.unknown] + idx;
                    for (m, c) in p.0 {
                        let row = lhs.entry(m).or_default();
                        let e = row.entry(slot).or_insert_with(BigRational::zero);
                        *e += c;
                        if e.is_zero() {
                            row.remove(&slot);
                        }
                    }
                    continue;
                }
                let dim = polys[depth].len();
                for (i, q) in polys[depth].iter().enumerate().rev() {
                    if q.0.is_empty() {
                        continue;
                    }
                    stack.push((depth + 1, idx * dim + i, p.mul(q)));
                }
            }
        }
        let mut rhs: BTreeMap<Mono, ClassT> = BTreeMap::new();
        for (ti, t) in self.rhs.iter().enumerate() {
            let name = format!("rhs term {ti}");
            let kinds = [t.p.0.kind(), t.p.1.kind(), t.w.0.kind(), t.w.1.kind()];
            if kinds != [Kind::Gp, Kind::Gp, Kind::W2, Kind::W2] {
                return Err(PolarizeError::KindMismatch { term: name });
            }
            let p1 = self.arg_polys(&t.p.0, &offs, &name)?;
            let p2 = self.arg_polys(&t.p.1, &offs, &name)?;
            let w1 = self.arg_polys(&t.w.0, &offs, &name)?;
            let w2 = self.arg_polys(&t.w.1, &offs, &name)?;
            let ps = sym2_poly(&p1, &p2);
            let ws = sym2_poly(&w1, &w2);
            for (i, pp) in ps.iter().enumerate() {
                if pp.0.is_empty() {
                    continue;
                }
                for (j, wp) in ws.iter().enumerate() {
                    if wp.0.is_empty() {
                        continue;
                    }
                    let prod = pp.mul(wp);
                    self.check_degrees(&prod, &groups, &name)?;
                    for (m, c) in prod.0 {
                        let cell = rhs.entry(m).or_insert_with(ClassT::zero);
                        cell.0[super::t_index(i, j)] += &t.coef * c;
                    }
                }
            }
        }
        let equations = self
            .monomials()
            .into_iter()
            .map(|m| {
                let l = lhs.remove(&m).unwrap_or_default();
                let r = rhs.remove(&m).unwrap_or_else(ClassT::zero);
                Equation { monomial: m, lhs: l, rhs: r }
            })
            .collect();
        Ok(PolarizedSet { equations, var_offsets: offs, slot_offsets, nslots })
    }

    fn eval_lin(&self, l: &LinExpr, point: &[Vec<BigRational>]) -> Vec<BigRational> {
        let mut out = l.constant.clone();
        for (v, c) in &l.terms {
            for (o, x) in out.iter_mut().zip(&point[v.0]) {
                *o += c * x;
            }
        }
        out
    }

    fn eval_arg(&self, a: &ArgExpr, point: &[Vec<BigRational>]) -> Vec<BigRational> {
        match a {
            ArgExpr::Lin(l) => self.eval_lin(l, point),
            ArgExpr::Const(_, c) => c.clone(),
            ArgExpr::Tensor(parts) => {
                let mut out = vec![BigRational::zero(); 16];
                for (p, g) in parts {
                    let pv = self.eval_lin(p, point);
                    let gv = self.eval_lin(g, point);
                    for i in 0..4 {
                        for k in 0..4 {
                            out[4 * i + k] += &pv[i] * &gv[k];
                        }
                    }
                }
                out
            }
            ArgExpr::Wedge(g, h) => {
                let gv = self.eval_lin(g, point);
                let hv = self.eval_lin(h, point);
                let mut out = vec![BigRational::zero(); 6];
                for k in 0..4 {
                    for l in 0..4 {
                        if let Some((i, s)) = wedge2_index(k, l) {
                            // each unordered pair is visited twice
                            let v = &gv[k] * &hv[l] * BigRational::new(s.into(), 2.into());
                            out[i] += v;
                        }
                    }
                }
                out
            }
        }
    }

    /// Direct evaluation of the left-hand side at a point for a scalar λ.
    pub fn evaluate_lhs(&self, point: &[Vec<BigRational>], lambda: &[BigRational]) -> BigRational {
        let (slot_offsets, _) = self.slot_offsets();
        let mut acc = BigRational::zero();
        for t in &self.lhs {
            let vals: Vec<Vec<BigRational>> = t.args.iter().map(|a| self.eval_arg(a, point)).collect();
            let total: usize = vals.iter().map(|v| v.len()).product();
            for flat in 0..total {
                let mut rem = flat;
                let mut prod = t.coef.clone();
                for v in vals.iter().rev() {
                    prod *= &v[rem % v.len()];
                    rem /= v.len();
                }
                if !prod.is_zero() {
                    acc += prod * &lambda[slot_offsets[t.unknown] + flat];
                }
            }
        }
        acc
    }

    /// Direct evaluation of the right-hand side at a point.
    pub fn evaluate_rhs(&self, point: &[Vec<BigRational>]) -> ClassT {
        let mut acc = ClassT::zero();
        for t in &self.rhs {
            let p = sym2_product(&self.eval_arg(&t.p.0, point), &self.eval_arg(&t.p.1, point));
            let w = sym2_product(&self.eval_arg(&t.w.0, point), &self.eval_arg(&t.w.1, point));
            acc.add_assign_scaled(&t.coef, &ClassT::product(&p, &w));
        }
        acc
    }
}

fn sym2_poly(p: &[Poly], q: &[Poly]) -> Vec<Poly> {
    let n = p.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut r = p[i].mul(&q[j]);
            if i != j {
                r.add(&p[j].mul(&q[i]), &BigRational::one());
            }
            out.push(r);
        }
    }
    out
}

/// Exponent vectors of length `n` with sum `deg`, lexicographically
/// descending.
fn compositions(deg: u32, n: usize) -> Vec<Vec<u8>> {
    if n == 0 {
        return if deg == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in compositions(deg - first, n - 1) {
            rest.insert(0, first as u8);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::Wedge2;
    use crate::q;

    fn unit_wedge(i: usize) -> ArgExpr {
        ArgExpr::Const(Kind::W2, Wedge2::basis(i).0.to_vec())
    }

    fn square_schema() -> Schema {
        let mut sc = Schema::default();
        let s = sc.add_var("s", Kind::Gp);
        sc.add_group(&[s], 2);
        let f = sc.add_unknown("f", &[Kind::Gp, Kind::Gp]);
        let sl = || ArgExpr::Lin(LinExpr::var(Kind::Gp, s));
        sc.lhs.push(LhsTerm { coef: q(1), unknown: f, args: vec![sl(), sl()] });
        sc.rhs.push(RhsTerm { coef: q(1), p: (sl(), sl()), w: (unit_wedge(0), unit_wedge(0)) });
        sc
    }

    #[test]
    fn square_gives_ten() {
        let set = square_schema().polarize().unwrap();
        assert_eq!(set.equations.len(), 10);
        assert_eq!(set.nontrivial().count(), 10);
        // the s_a s_b equation couples f(a,b) and f(b,a)
        let eq = set.equations.iter().find(|e| e.monomial == [1, 1, 0, 0]).unwrap();
        assert_eq!(eq.lhs.len(), 2);
        assert_eq!(eq.rhs.0[crate::multilinear::t_index(1, 0)], q(2));
    }

    #[test]
    fn degree_mismatch_detected() {
        let mut sc = square_schema();
        sc.groups[0].degree = 3;
        assert!(matches!(sc.polarize(), Err(PolarizeError::DegreeMismatch { .. })));
    }

    #[test]
    fn ungrouped_variable_detected() {
        let mut sc = square_schema();
        sc.add_var("u", Kind::G2);
        assert!(matches!(sc.polarize(), Err(PolarizeError::UngroupedVariable(Var(1)))));
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(2, 4).len(), 10);
        assert_eq!(compositions(4, 8).len(), 330);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn round_trip_at_points() {
        let sc = square_schema();
        let set = sc.polarize().unwrap();
        let lambda: Vec<BigRational> = (0..16).map(|i| q(i * 3 - 7)).collect();
        for k in 0..5i64 {
            let pt = vec![vec![q(k), q(1 - k), q(2), q(k * k - 3)]];
            assert_eq!(set.evaluate_lhs(&pt, &lambda), sc.evaluate_lhs(&pt, &lambda));
            assert_eq!(set.evaluate_rhs(&pt), sc.evaluate_rhs(&pt));
        }
    }
}
