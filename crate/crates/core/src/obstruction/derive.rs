//! Symbolic reduction of the cell equations under the ansatz
//! `Φ_{P+s'ν, ν} − Φ_{P, ν} = λ_{P,s',ν} = λ0(s',ν) + λ1(P; s',ν)`.
//!
//! Vertices are formal `x + Σ c[p][g]·p⊗g` with `p ∈ {s, t}` and
//! `g ∈ {u, v}`; directions are formal `Σ c_g·g`. Everything is evaluated on
//! the same face `u∧v`, which is therefore left implicit.
//!
//! For a flag with direction `ν`, pick the complement `κ = u` if `ν ∥ v`
//! and `κ = v` otherwise, write the vertex as `x + B + s'⊗ν` with `B` in the
//! `κ`-part, and replace `Φ_{x+B+s'ν, ν}` by `Φ_{x+B, ν} + λ_{x+B, s', ν}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::q;

/// Names of the formal Γp symbols.
pub const P_SYMS: [&str; 2] = ["s", "t"];
/// Names of the formal Γ2 symbols.
pub const G_SYMS: [&str; 2] = ["u", "v"];

/// `Σ c[p][g]·p⊗g` (the `x` part is implicit).
pub type FormalPoint = [[BigRational; 2]; 2];
/// `Σ c_p·p` or `Σ c_g·g`.
pub type Formal2 = [BigRational; 2];

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Atom {
    Phi { vertex: FormalPoint, dir: Formal2 },
    /// `λ0(p; g)`.
    L0 { s: usize, u: usize },
    /// `λ1(x; p; g)`.
    L1x { s: usize, u: usize },
    /// `λ1(xp⊗xg; p; g)`.
    L1 { xp: usize, xg: usize, s: usize, u: usize },
}

fn fmt_point(f: &mut fmt::Formatter<'_>, c: &FormalPoint) -> fmt::Result {
    write!(f, "x")?;
    for (p, row) in c.iter().enumerate() {
        for (g, v) in row.iter().enumerate() {
            if !v.is_zero() {
                write!(f, "{}{}{}{}", if v.is_negative() { "-" } else { "+" }, coef_str(v), P_SYMS[p], G_SYMS[g])?;
            }
        }
    }
    Ok(())
}

fn coef_str(v: &BigRational) -> String {
    let a = v.abs();
    if a.is_one() {
        String::new()
    } else {
        format!("{a}")
    }
}

fn fmt_lin(f: &mut fmt::Formatter<'_>, c: &Formal2, names: &[&str; 2]) -> fmt::Result {
    let mut first = true;
    for (i, v) in c.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        if v.is_negative() {
            write!(f, "-")?;
        } else if !first {
            write!(f, "+")?;
        }
        write!(f, "{}{}", coef_str(v), names[i])?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Phi { vertex, dir } => {
                write!(f, "Phi[")?;
                fmt_point(f, vertex)?;
                write!(f, ", ")?;
                fmt_lin(f, dir, &G_SYMS)?;
                write!(f, "]")
            }
            Atom::L0 { s, u } => write!(f, "lambda0({}; {})", P_SYMS[*s], G_SYMS[*u]),
            Atom::L1x { s, u } => write!(f, "lambda1(x; {}; {})", P_SYMS[*s], G_SYMS[*u]),
            Atom::L1 { xp, xg, s, u } => {
                write!(f, "lambda1({}{}; {}; {})", P_SYMS[*xp], G_SYMS[*xg], P_SYMS[*s], G_SYMS[*u])
            }
        }
    }
}

/// A formal ℚ-linear combination of atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum(pub BTreeMap<Atom, BigRational>);

impl FormalSum {
    pub fn add(&mut self, a: Atom, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(a.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&a);
        }
    }

    pub fn merge(&mut self, o: &FormalSum, c: &BigRational) {
        for (a, v) in &o.0 {
            self.add(a.clone(), &(v * c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// The part made of atoms accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&Atom) -> bool) -> FormalSum {
        FormalSum(self.0.iter().filter(|(a, _)| keep(a)).map(|(a, v)| (a.clone(), v.clone())).collect())
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.0.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            write!(f, "{}{}{}{}", if i > 0 { " " } else { "" }, sign, coef_str(c), a)?;
        }
        Ok(())
    }
}

/// `coef·λ_{x+base, s, dir}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaTerm {
    pub coef: BigRational,
    pub base: FormalPoint,
    pub s: Formal2,
    pub dir: Formal2,
}

/// A signed flag `coef·Φ_{x+vertex, dir}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalFlag {
    pub coef: BigRational,
    pub vertex: FormalPoint,
    pub dir: Formal2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellShape {
    Triangle,
    Parallelogram,
}

fn zero2() -> Formal2 {
    [BigRational::zero(), BigRational::zero()]
}

fn zpt() -> FormalPoint {
    [zero2(), zero2()]
}

fn pt(entries: &[(usize, usize, i64)]) -> FormalPoint {
    let mut c = zpt();
    for &(p, g, v) in entries {
        c[p][g] += q(v);
    }
    c
}

fn dir(u: i64, v: i64) -> Formal2 {
    [q(u), q(v)]
}

/// Boundary flags in the traversal order of the chain cells: `+` on the
/// outgoing edge, `−` on the incoming edge of every vertex.
pub fn cell_flags(shape: CellShape) -> Vec<FormalFlag> {
    // (vertex, displacement to the next vertex) as formal data
    let (verts, edges): (Vec<FormalPoint>, Vec<Formal2>) = match shape {
        CellShape::Triangle => (
            vec![zpt(), pt(&[(0, 0, 1)]), pt(&[(0, 1, 1)])],
            vec![dir(1, 0), dir(-1, 1), dir(0, -1)],
        ),
        CellShape::Parallelogram => (
            vec![zpt(), pt(&[(0, 0, 1)]), pt(&[(0, 0, 1), (1, 1, 1)]), pt(&[(1, 1, 1)])],
            vec![dir(1, 0), dir(0, 1), dir(-1, 0), dir(0, -1)],
        ),
    };
    let n = verts.len();
    let mut out = Vec::new();
    for i in 0..n {
        out.push(FormalFlag { coef: q(1), vertex: verts[i].clone(), dir: edges[i].clone() });
        out.push(FormalFlag { coef: q(-1), vertex: verts[(i + 1) % n].clone(), dir: edges[i].clone() });
    }
    out
}

fn normalize_dir(d: &Formal2) -> Formal2 {
    let neg = d.iter().find(|c| !c.is_zero()).map(|c| c.is_negative()).unwrap_or(false);
    if neg {
        [-d[0].clone(), -d[1].clone()]
    } else {
        d.clone()
    }
}

/// Rewrites each flag as base value plus λ-term. Returns the λ-terms (those
/// with `s' = 0` dropped) and the formal sum of base values.
pub fn reduce_flags(flags: &[FormalFlag]) -> (Vec<LambdaTerm>, FormalSum) {
    let mut terms = Vec::new();
    let mut base = FormalSum::default();
    for fl in flags {
        let nu = normalize_dir(&fl.dir);
        let kappa = if nu[0].is_zero() { dir(1, 0) } else { dir(0, 1) };
        let det = &nu[0] * &kappa[1] - &nu[1] * &kappa[0];
        let mut b = zpt();
        let mut s = zero2();
        for p in 0..2 {
            let (cu, cv) = (&fl.vertex[p][0], &fl.vertex[p][1]);
            let alpha = (cu * &kappa[1] - cv * &kappa[0]) / &det;
            let beta = (&nu[0] * cv - &nu[1] * cu) / &det;
            b[p][0] = &beta * &kappa[0];
            b[p][1] = &beta * &kappa[1];
            s[p] = alpha;
        }
        base.add(Atom::Phi { vertex: b.clone(), dir: nu.clone() }, &fl.coef);
        if s.iter().any(|c| !c.is_zero()) {
            terms.push(LambdaTerm { coef: fl.coef.clone(), base: b, s, dir: nu });
        }
    }
    (terms, base)
}

/// Multilinear expansion of λ-terms into `L0`, `L1x` and `L1` atoms.
pub fn expand_terms(terms: &[LambdaTerm]) -> FormalSum {
    let mut out = FormalSum::default();
    for t in terms {
        for p in 0..2 {
            for g in 0..2 {
                let c = &t.coef * &t.s[p] * &t.dir[g];
                if c.is_zero() {
                    continue;
                }
                out.add(Atom::L0 { s: p, u: g }, &c);
                out.add(Atom::L1x { s: p, u: g }, &c);
                for xp in 0..2 {
                    for xg in 0..2 {
                        out.add(Atom::L1 { xp, xg, s: p, u: g }, &(&c * &t.base[xp][xg]));
                    }
                }
            }
        }
    }
    out
}

/// The reduced left-hand side expected for each shape:
/// `λ1(s⊗v; s; u−v)` and `λ1(t⊗v; s; u) − λ1(s⊗u; t; v)`.
pub fn expected_reduced(shape: CellShape) -> FormalSum {
    let mut e = FormalSum::default();
    match shape {
        CellShape::Triangle => {
            e.add(Atom::L1 { xp: 0, xg: 1, s: 0, u: 0 }, &q(1));
            e.add(Atom::L1 { xp: 0, xg: 1, s: 0, u: 1 }, &q(-1));
        }
        CellShape::Parallelogram => {
            e.add(Atom::L1 { xp: 1, xg: 1, s: 0, u: 0 }, &q(1));
            e.add(Atom::L1 { xp: 0, xg: 0, s: 1, u: 1 }, &q(-1));
        }
    }
    e
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct DerivationReport {
    pub checks: Vec<IdentityCheck>,
    pub triangle_terms: Vec<LambdaTerm>,
    pub parallelogram_terms: Vec<LambdaTerm>,
}

impl DerivationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn log(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| format!("[{}] {}: {}", if c.holds { "ok" } else { "FAILED" }, c.name, c.detail))
            .collect()
    }

    pub fn terms(&self, shape: CellShape) -> &[LambdaTerm] {
        match shape {
            CellShape::Triangle => &self.triangle_terms,
            CellShape::Parallelogram => &self.parallelogram_terms,
        }
    }
}

fn check(name: &str, holds: bool, detail: String) -> IdentityCheck {
    IdentityCheck { name: name.into(), holds, detail }
}

fn shape_checks(shape: CellShape, tag: &str, out: &mut Vec<IdentityCheck>) -> Vec<LambdaTerm> {
    let (terms, base) = reduce_flags(&cell_flags(shape));
    out.push(check(&format!("{tag}: base values cancel"), base.is_zero(), format!("sum of Phi base values = {base}")));
    let full = expand_terms(&terms);
    let l0 = full.filter(|a| matches!(a, Atom::L0 { .. }));
    out.push(check(&format!("{tag}: lambda0 cancels"), l0.is_zero(), format!("lambda0 part = {l0}")));
    let lx = full.filter(|a| matches!(a, Atom::L1x { .. }));
    out.push(check(&format!("{tag}: x-terms cancel"), lx.is_zero(), format!("lambda1(x; .) part = {lx}")));
    let rest = full.filter(|a| matches!(a, Atom::L1 { .. }));
    let expect = expected_reduced(shape);
    let name = match shape {
        CellShape::Triangle => "reduces to E1': lambda1(sv; s; u-v)(u^v) = s^2 (u^v)^2",
        CellShape::Parallelogram => "reduces to E2': [lambda1(tv; s; u) - lambda1(su; t; v)](u^v) = 2st (u^v)^2",
    };
    out.push(check(&format!("{tag}: {name}"), rest == expect, format!("reduced = {rest}")));
    terms
}

/// Machine-checks the reduction of both cell equations. Panics if any
/// identity fails: that would mean the ansatz algebra is wrong.
pub fn derive_reduced_equations() -> DerivationReport {
    let mut checks = Vec::new();
    let triangle_terms = shape_checks(CellShape::Triangle, "triangle", &mut checks);
    let parallelogram_terms = shape_checks(CellShape::Parallelogram, "parallelogram", &mut checks);

    // grouping: Φ_{x+su,u−v} − Φ_{x+sv,u−v} = λ_{x+sv, s, u−v}
    let flags = [
        FormalFlag { coef: q(1), vertex: pt(&[(0, 0, 1)]), dir: dir(1, -1) },
        FormalFlag { coef: q(-1), vertex: pt(&[(0, 1, 1)]), dir: dir(1, -1) },
    ];
    let (terms, base) = reduce_flags(&flags);
    let want = [LambdaTerm { coef: q(1), base: pt(&[(0, 1, 1)]), s: dir(1, 0), dir: dir(1, -1) }];
    checks.push(check(
        "grouping: Phi[x+su,u-v] - Phi[x+sv,u-v] = lambda[x+sv, s, u-v]",
        base.is_zero() && terms == want,
        format!("{} lambda-term(s), base part = {base}", terms.len()),
    ));

    // linearity: −λ1(x;s,u) + λ1(x;s,v) + λ1(x;s,u−v) = 0
    let lin = [
        LambdaTerm { coef: q(-1), base: zpt(), s: dir(1, 0), dir: dir(1, 0) },
        LambdaTerm { coef: q(1), base: zpt(), s: dir(1, 0), dir: dir(0, 1) },
        LambdaTerm { coef: q(1), base: zpt(), s: dir(1, 0), dir: dir(1, -1) },
    ];
    let lx = expand_terms(&lin).filter(|a| matches!(a, Atom::L1x { .. }));
    checks.push(check(
        "linearity: -lambda1(x;s,u) + lambda1(x;s,v) + lambda1(x;s,u-v) = 0",
        lx.is_zero(),
        format!("= {lx}"),
    ));

    let report = DerivationReport { checks, triangle_terms, parallelogram_terms };
    assert!(report.all_hold(), "ansatz reduction failed: {:?}", report.log());
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_identities_hold() {
        let r = derive_reduced_equations();
        assert!(r.all_hold());
        assert_eq!(r.checks.len(), 10);
        assert_eq!(cell_flags(CellShape::Triangle).len(), 6);
        assert_eq!(cell_flags(CellShape::Parallelogram).len(), 8);
    }

    #[test]
    fn triangle_terms_match_hand_reduction() {
        // −λ_{x,s,u} + λ_{x,s,v} + λ_{x+sv,s,u−v}
        let r = derive_reduced_equations();
        let mut got = FormalSum::default();
        for t in &r.triangle_terms {
            got.merge(&expand_terms(core::slice::from_ref(t)), &q(1));
        }
        let hand = [
            LambdaTerm { coef: q(-1), base: zpt(), s: dir(1, 0), dir: dir(1, 0) },
            LambdaTerm { coef: q(1), base: zpt(), s: dir(1, 0), dir: dir(0, 1) },
            LambdaTerm { coef: q(1), base: pt(&[(0, 1, 1)]), s: dir(1, 0), dir: dir(1, -1) },
        ];
        assert_eq!(got, expand_terms(&hand));
    }

    #[test]
    fn wrong_orientation_is_caught() {
        // reversing one edge's sign breaks base cancellation
        let mut flags = cell_flags(CellShape::Triangle);
        flags[0].coef = q(-1);
        let (_, base) = reduce_flags(&flags);
        assert!(!base.is_zero());
    }
}
