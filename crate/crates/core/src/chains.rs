//! Polygonal chains on the torus (Γ2⊗Γp)/Γ1: triangle and parallelogram
//! cells, the area map `vol`, the flag map α, balancing and subdivision.
//!
//! Points of Γ2⊗Γp⊗ℚ are 16-vectors (index `4·p + k`). Vertices are
//! compared through their canonical representative modulo Γ1.
//!
//! Boundary orientation: triangle `x → x+su → x+sv → x`, parallelogram
//! `x → x+su → x+su+tv → x+tv → x`. At every vertex α adds `+F` on the
//! outgoing direction and `−F` on the incoming one, `F = weight·(u∧v)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::{primitive_rat, LatticeSpec, Reducer};
use crate::multilinear::{gp_rat, sym2_gp, sym_square_embed, tensor, wedge2, ClassT, G2Vector, GpVector, Wedge2};
use crate::weil::gamma1_lattice;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleCell {
    pub x: Vec<BigRational>,
    pub s: GpVector,
    pub u: G2Vector,
    pub v: G2Vector,
    pub weight: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelogramCell {
    pub x: Vec<BigRational>,
    pub s: GpVector,
    pub t: GpVector,
    pub u: G2Vector,
    pub v: G2Vector,
    pub weight: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Triangle(TriangleCell),
    Parallelogram(ParallelogramCell),
}

/// One oriented boundary edge `from → to` with displacement `σ⊗δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: Vec<BigRational>,
    pub to: Vec<BigRational>,
    pub sigma: GpVector,
    pub delta: G2Vector,
}

fn add_vec(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg2(u: &G2Vector) -> G2Vector {
    core::array::from_fn(|i| -u[i].clone())
}

fn sub2(u: &G2Vector, v: &G2Vector) -> G2Vector {
    core::array::from_fn(|i| &u[i] - &v[i])
}

impl Cell {
    pub fn triangle(x: Vec<BigRational>, s: GpVector, u: G2Vector, v: G2Vector, weight: BigRational) -> Self {
        Cell::Triangle(TriangleCell { x, s, u, v, weight })
    }

    pub fn parallelogram(
        x: Vec<BigRational>,
        s: GpVector,
        t: GpVector,
        u: G2Vector,
        v: G2Vector,
        weight: BigRational,
    ) -> Self {
        Cell::Parallelogram(ParallelogramCell { x, s, t, u, v, weight })
    }

    pub fn x(&self) -> &[BigRational] {
        match self {
            Cell::Triangle(c) => &c.x,
            Cell::Parallelogram(c) => &c.x,
        }
    }

    pub fn weight(&self) -> &BigRational {
        match self {
            Cell::Triangle(c) => &c.weight,
            Cell::Parallelogram(c) => &c.weight,
        }
    }

    pub fn uv(&self) -> (&G2Vector, &G2Vector) {
        match self {
            Cell::Triangle(c) => (&c.u, &c.v),
            Cell::Parallelogram(c) => (&c.u, &c.v),
        }
    }

    pub fn with_weight(&self, w: BigRational) -> Cell {
        let mut c = self.clone();
        match &mut c {
            Cell::Triangle(t) => t.weight = w,
            Cell::Parallelogram(p) => p.weight = w,
        }
        c
    }

    /// The same cell with its lift translated by `g`.
    pub fn translated(&self, g: &[BigRational]) -> Cell {
        let mut c = self.clone();
        match &mut c {
            Cell::Triangle(t) => t.x = add_vec(&t.x, g),
            Cell::Parallelogram(p) => p.x = add_vec(&p.x, g),
        }
        c
    }

    /// `F₂ = weight·(u∧v)`.
    pub fn face(&self) -> Wedge2 {
        let (u, v) = self.uv();
        wedge2(u, v).scale(self.weight())
    }

    /// Boundary edges in traversal order.
    pub fn edges(&self) -> Vec<Edge> {
        match self {
            Cell::Triangle(c) => {
                let s = gp_rat(&c.s);
                let p0 = c.x.clone();
                let p1 = add_vec(&p0, &tensor(&s, &c.u));
                let p2 = add_vec(&p0, &tensor(&s, &c.v));
                vec![
                    Edge { from: p0.clone(), to: p1.clone(), sigma: c.s.clone(), delta: c.u.clone() },
                    Edge { from: p1, to: p2.clone(), sigma: c.s.clone(), delta: sub2(&c.v, &c.u) },
                    Edge { from: p2, to: p0, sigma: c.s.clone(), delta: neg2(&c.v) },
                ]
            }
            Cell::Parallelogram(c) => {
                let s = gp_rat(&c.s);
                let t = gp_rat(&c.t);
                let p0 = c.x.clone();
                let p1 = add_vec(&p0, &tensor(&s, &c.u));
                let p2 = add_vec(&p1, &tensor(&t, &c.v));
                let p3 = add_vec(&p0, &tensor(&t, &c.v));
                vec![
                    Edge { from: p0.clone(), to: p1.clone(), sigma: c.s.clone(), delta: c.u.clone() },
                    Edge { from: p1, to: p2.clone(), sigma: c.t.clone(), delta: c.v.clone() },
                    Edge { from: p2, to: p3.clone(), sigma: c.s.clone(), delta: neg2(&c.u) },
                    Edge { from: p3, to: p0, sigma: c.t.clone(), delta: neg2(&c.v) },
                ]
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellError {
    /// `u ∥ v`, a zero scale, or zero weight.
    DegenerateCell(&'static str),
    MalformedCell(&'static str),
}

impl fmt::Display for CellError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellError::DegenerateCell(why) => write!(f, "degenerate cell: {why}"),
            CellError::MalformedCell(why) => write!(f, "malformed cell: {why}"),
        }
    }
}

pub fn validate_cell(cell: &Cell) -> Result<(), CellError> {
    if cell.x().len() != 16 {
        return Err(CellError::MalformedCell("lift must have 16 coordinates"));
    }
    let zero_gp = |s: &GpVector| s.iter().all(|x| x.is_zero());
    match cell {
        Cell::Triangle(c) if zero_gp(&c.s) => return Err(CellError::DegenerateCell("s = 0")),
        Cell::Parallelogram(c) if zero_gp(&c.s) => return Err(CellError::DegenerateCell("s = 0")),
        Cell::Parallelogram(c) if zero_gp(&c.t) => return Err(CellError::DegenerateCell("t = 0")),
        _ => {}
    }
    let (u, v) = cell.uv();
    if wedge2(u, v).is_zero() {
        return Err(CellError::DegenerateCell("u and v are parallel"));
    }
    if cell.weight().is_zero() {
        return Err(CellError::DegenerateCell("weight 0"));
    }
    // every edge displacement is σ⊗δ by construction; check closure
    let edges = cell.edges();
    for w in edges.windows(2) {
        if w[0].to != w[1].from {
            return Err(CellError::MalformedCell("boundary does not chain"));
        }
    }
    if edges.last().map(|e| &e.to) != edges.first().map(|e| &e.from) {
        return Err(CellError::MalformedCell("boundary does not close"));
    }
    Ok(())
}

/// A weighted list of cells in the family with parameter `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub d: i64,
    pub cells: Vec<Cell>,
}

impl Chain {
    pub fn new(d: i64) -> Self {
        Chain { d, cells: Vec::new() }
    }

    pub fn push(&mut self, c: Cell) {
        self.cells.push(c);
    }

    /// The chain followed by `other`.
    pub fn concat(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.cells.extend(other.cells.iter().cloned());
        c
    }

    /// Every cell with its weight negated.
    pub fn negated(&self) -> Chain {
        Chain { d: self.d, cells: self.cells.iter().map(|c| c.with_weight(-c.weight().clone())).collect() }
    }

    /// Denominators (> 1) appearing in lifts, edge vectors and weights.
    pub fn denominators(&self) -> BTreeSet<BigInt> {
        let mut out = BTreeSet::new();
        let mut note = |x: &BigRational| {
            if !x.denom().is_one() {
                out.insert(x.denom().clone());
            }
        };
        for c in &self.cells {
            c.x().iter().for_each(&mut note);
            let (u, v) = c.uv();
            u.iter().chain(v.iter()).for_each(&mut note);
            note(c.weight());
        }
        out
    }
}

/// Reduction of lifts modulo Γ1.
#[derive(Clone, Debug)]
pub struct Torus {
    pub d: i64,
    gamma1: LatticeSpec,
    reducer: Reducer,
}

impl Torus {
    pub fn new(d: i64) -> Self {
        let gamma1 = gamma1_lattice(d).canonical();
        let reducer = gamma1.reducer();
        Torus { d, gamma1, reducer }
    }

    pub fn gamma1(&self) -> &LatticeSpec {
        &self.gamma1
    }

    /// Canonical representative of `x + Γ1`.
    pub fn key(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.reducer.reduce(x).expect("lift has 16 coordinates")
    }
}

/// Key of a flag: vertex class and primitive edge direction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FlagKey {
    pub vertex: Vec<BigRational>,
    pub direction: Vec<BigInt>,
}

/// Finitely supported map (vertex, direction) → ∧²Γ2⊗ℚ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlagSum {
    pub flags: BTreeMap<FlagKey, Wedge2>,
}

impl FlagSum {
    pub fn add(&mut self, key: FlagKey, w: &Wedge2) {
        if w.is_zero() {
            return;
        }
        let e = self.flags.entry(key.clone()).or_insert_with(Wedge2::zero);
        *e = &*e + w;
        if e.is_zero() {
            self.flags.remove(&key);
        }
    }

    pub fn merge(&mut self, other: &FlagSum) {
        for (k, w) in &other.flags {
            self.add(k.clone(), w);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }
}

fn direction(delta: &G2Vector) -> Vec<BigInt> {
    primitive_rat(delta).expect("edge displacement is nonzero")
}

/// Signed flags of one closed edge loop, all carrying `face`.
fn loop_flags(torus: &Torus, edges: &[Edge], face: &Wedge2, out: &mut FlagSum) {
    let neg = -face;
    for e in edges {
        if e.delta.iter().all(|x| x.is_zero()) {
            continue;
        }
        let dir = direction(&e.delta);
        out.add(FlagKey { vertex: torus.key(&e.from), direction: dir.clone() }, face);
        out.add(FlagKey { vertex: torus.key(&e.to), direction: dir }, &neg);
    }
}

pub fn alpha_cell(torus: &Torus, cell: &Cell) -> FlagSum {
    let mut out = FlagSum::default();
    let face = cell.face();
    if !face.is_zero() {
        loop_flags(torus, &cell.edges(), &face, &mut out);
    }
    out
}

pub fn alpha_chain(c: &Chain) -> FlagSum {
    let torus = Torus::new(c.d);
    let mut out = FlagSum::default();
    for cell in &c.cells {
        out.merge(&alpha_cell(&torus, cell));
    }
    out
}

pub fn vol_cell(cell: &Cell) -> ClassT {
    let (u, v) = cell.uv();
    let w = wedge2(u, v);
    let ww = sym_square_embed(&w, &w);
    match cell {
        Cell::Triangle(c) => {
            let s = gp_rat(&c.s);
            ClassT::product(&sym2_gp(&s, &s), &ww).scale(&c.weight)
        }
        Cell::Parallelogram(c) => {
            let p = sym2_gp(&gp_rat(&c.s), &gp_rat(&c.t));
            ClassT::product(&p, &ww).scale(&(&c.weight * BigRational::from_integer(2.into())))
        }
    }
}

pub fn vol_chain(c: &Chain) -> ClassT {
    let mut out = ClassT::zero();
    for cell in &c.cells {
        out.add_assign_scaled(&BigRational::one(), &vol_cell(cell));
    }
    out
}

pub fn is_balanced(c: &Chain) -> bool {
    alpha_chain(c).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubdivideError {
    /// The loop does not close.
    NotClosed,
    /// Edge `edge` (from vertex `edge` to `edge + 1`) does not fit the
    /// triangle/parallelogram taxonomy.
    NotSubdividable { edge: usize, reason: &'static str },
}

impl fmt::Display for SubdivideError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubdivideError::NotClosed => write!(f, "loop vertices must be 16-vectors"),
            SubdivideError::NotSubdividable { edge, reason } => write!(f, "edge {edge} not subdividable: {reason}"),
        }
    }
}

/// `δ = σ⊗a` with `σ` primitive integral (first nonzero entry positive).
pub fn rank_one_split(delta: &[BigRational]) -> Option<(GpVector, G2Vector)> {
    let row = |p: usize| -> [BigRational; 4] { core::array::from_fn(|k| delta[4 * p + k].clone()) };
    let p0 = (0..4).find(|&p| (0..4).any(|k| !delta[4 * p + k].is_zero()))?;
    let r = row(p0);
    let k0 = (0..4).find(|&k| !r[k].is_zero())?;
    let sigma_rat: [BigRational; 4] = core::array::from_fn(|p| &delta[4 * p + k0] / &r[k0]);
    for p in 0..4 {
        for k in 0..4 {
            if delta[4 * p + k] != &sigma_rat[p] * &r[k] {
                return None;
            }
        }
    }
    let sigma = primitive_rat(&sigma_rat).expect("nonzero");
    // σ_rat = λ·σ with λ = sigma_rat[p0] / sigma[p0]
    let lam = &sigma_rat[p0] / BigRational::from_integer(sigma[p0].clone());
    let a: G2Vector = core::array::from_fn(|k| &r[k] * &lam);
    Some((core::array::from_fn(|p| sigma[p].clone()), a))
}

/// The flags of a closed loop with face value `face` (`+face` outgoing,
/// `−face` incoming at each vertex).
pub fn polygon_flags(d: i64, vertices: &[Vec<BigRational>], face: &Wedge2) -> FlagSum {
    let torus = Torus::new(d);
    let n = vertices.len();
    let mut edges = Vec::new();
    for i in 0..n {
        let from = vertices[i].clone();
        let to = vertices[(i + 1) % n].clone();
        let delta: Vec<BigRational> = to.iter().zip(&from).map(|(a, b)| a - b).collect();
        if let Some((sigma, a)) = rank_one_split(&delta) {
            edges.push(Edge { from, to, sigma, delta: a });
        }
    }
    let mut out = FlagSum::default();
    loop_flags(&torus, &edges, face, &mut out);
    out
}

/// Result of [`subdivide_polygon`]: the chain and the face value `F` that
/// every cell carries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub chain: Chain,
    pub face: Wedge2,
}

/// Subdivides a closed loop with rank-1 edges into triangles and
/// parallelograms that all carry the bivector `F` of the first
/// non-degenerate corner, so that interior flags cancel.
pub fn subdivide_polygon(d: i64, vertices: &[Vec<BigRational>]) -> Result<Subdivision, SubdivideError> {
    if vertices.iter().any(|v| v.len() != 16) {
        return Err(SubdivideError::NotClosed);
    }
    let n = vertices.len();
    let mut parts: Vec<(usize, GpVector, G2Vector)> = Vec::new();
    for i in 0..n {
        let delta: Vec<BigRational> = vertices[(i + 1) % n].iter().zip(&vertices[i]).map(|(a, b)| a - b).collect();
        if delta.iter().all(|x| x.is_zero()) {
            continue;
        }
        match rank_one_split(&delta) {
            Some((s, a)) => parts.push((i, s, a)),
            None => return Err(SubdivideError::NotSubdividable { edge: i, reason: "displacement is not rank 1" }),
        }
    }
    let empty = || Ok(Subdivision { chain: Chain::new(d), face: Wedge2::zero() });
    let m = parts.len();
    // face of the first corner with non-parallel incoming/outgoing parts
    let face = (0..m).map(|i| wedge2(&parts[i].2, &neg2(&parts[(i + m - 1) % m].2))).find(|w| !w.is_zero());
    let Some(face) = face else {
        return empty();
    };
    let mut sigmas: Vec<GpVector> = Vec::new();
    for (_, s, _) in &parts {
        if !sigmas.contains(s) {
            sigmas.push(s.clone());
        }
    }
    let p0 = vertices[parts[0].0].clone();
    match sigmas.len() {
        1 => subdivide_fan(d, &p0, &sigmas[0], &parts, face),
        2 => subdivide_grid(d, &p0, &sigmas, &parts, face),
        _ => Err(SubdivideError::NotSubdividable {
            edge: parts.iter().find(|(_, s, _)| *s != sigmas[0] && *s != sigmas[1]).unwrap().0,
            reason: "more than two Γp scales",
        }),
    }
}

fn in_plane(face: &Wedge2, a: &G2Vector) -> bool {
    // a ∈ plane(F) iff F ∧ a = 0 in ∧³; test via the four 3-minors
    let f = &face.0;
    // (e_ij ∧ e_k) coefficients on e_123, e_124, e_134, e_234
    let c123 = &f[0] * &a[2] - &f[1] * &a[1] + &f[3] * &a[0];
    let c124 = &f[0] * &a[3] - &f[2] * &a[1] + &f[4] * &a[0];
    let c134 = &f[1] * &a[3] - &f[2] * &a[2] + &f[5] * &a[0];
    let c234 = &f[3] * &a[3] - &f[4] * &a[2] + &f[5] * &a[1];
    c123.is_zero() && c124.is_zero() && c134.is_zero() && c234.is_zero()
}

/// Single scale `s`: fan triangles from the first vertex. A flat fan
/// triangle has zero α and zero vol, so it is dropped.
fn subdivide_fan(
    d: i64,
    p0: &[BigRational],
    s: &GpVector,
    parts: &[(usize, GpVector, G2Vector)],
    face: Wedge2,
) -> Result<Subdivision, SubdivideError> {
    for (i, _, a) in parts {
        if !in_plane(&face, a) {
            return Err(SubdivideError::NotSubdividable { edge: *i, reason: "edge leaves the polygon plane" });
        }
    }
    let mut corners: Vec<G2Vector> = vec![core::array::from_fn(|_| BigRational::zero())];
    for (_, _, a) in parts {
        let last = corners.last().unwrap();
        corners.push(core::array::from_fn(|k| &last[k] + &a[k]));
    }
    corners.pop();
    let mut chain = Chain::new(d);
    for i in 1..corners.len().saturating_sub(1) {
        let (u, v) = (corners[i].clone(), corners[i + 1].clone());
        let w = wedge2(&u, &v);
        if w.is_zero() {
            continue;
        }
        let weight = face.ratio(&w).expect("coplanar triangles have parallel faces");
        chain.push(Cell::triangle(p0.to_vec(), s.clone(), u, v, weight));
    }
    Ok(Subdivision { chain, face })
}

/// Two scales `s, t`: the loop lives in `x + s⊗ℚû + t⊗ℚv̂`; grid cells
/// weighted by winding number.
fn subdivide_grid(
    d: i64,
    p0: &[BigRational],
    sigmas: &[GpVector],
    parts: &[(usize, GpVector, G2Vector)],
    face: Wedge2,
) -> Result<Subdivision, SubdivideError> {
    let first_dir = |sig: &GpVector| parts.iter().find(|(_, s, _)| s == sig).map(|p| p.2.clone()).unwrap();
    let uhat = first_dir(&sigmas[0]);
    let vhat = first_dir(&sigmas[1]);
    // X, Y coordinates of each vertex
    let mut xs = vec![BigRational::zero()];
    let mut ys = vec![BigRational::zero()];
    let mut vert_edges: Vec<(BigRational, BigRational, BigRational)> = Vec::new();
    for (i, s, a) in parts {
        let (dir, horizontal) = if *s == sigmas[0] { (&uhat, true) } else { (&vhat, false) };
        let Some(lam) = ratio4(a, dir) else {
            return Err(SubdivideError::NotSubdividable { edge: *i, reason: "edge direction breaks the (u, v) frame" });
        };
        let (x, y) = (xs.last().unwrap().clone(), ys.last().unwrap().clone());
        if horizontal {
            xs.push(&x + &lam);
            ys.push(y);
        } else {
            vert_edges.push((x.clone(), y.clone(), &y + &lam));
            xs.push(x);
            ys.push(&y + &lam);
        }
    }
    let mut gx: Vec<BigRational> = xs.clone();
    gx.sort();
    gx.dedup();
    let mut gy: Vec<BigRational> = ys.clone();
    gy.sort();
    gy.dedup();
    let two = BigRational::from_integer(2.into());
    let sr = gp_rat(&sigmas[0]);
    let tr = gp_rat(&sigmas[1]);
    let mut chain = Chain::new(d);
    for ix in 0..gx.len().saturating_sub(1) {
        for iy in 0..gy.len().saturating_sub(1) {
            let cx = (&gx[ix] + &gx[ix + 1]) / &two;
            let cy = (&gy[iy] + &gy[iy + 1]) / &two;
            let mut wind = 0i64;
            for (ex, y0, y1) in &vert_edges {
                if *ex > cx {
                    if y0 < &cy && &cy < y1 {
                        wind += 1;
                    } else if y1 < &cy && &cy < y0 {
                        wind -= 1;
                    }
                }
            }
            if wind == 0 {
                continue;
            }
            let u: G2Vector = core::array::from_fn(|k| &uhat[k] * (&gx[ix + 1] - &gx[ix]));
            let v: G2Vector = core::array::from_fn(|k| &vhat[k] * (&gy[iy + 1] - &gy[iy]));
            let x = add_vec(&add_vec(p0, &tensor(&sr, &uhat.clone().map(|c| c * &gx[ix]))), &tensor(&tr, &vhat.clone().map(|c| c * &gy[iy])));
            let w = wedge2(&u, &v);
            let weight = face.ratio(&w).expect("grid cells are parallel to the face") * BigRational::from_integer(wind.into());
            chain.push(Cell::parallelogram(x, sigmas[0].clone(), sigmas[1].clone(), u, v, weight));
        }
    }
    Ok(Subdivision { chain, face })
}

/// `λ` with `a = λ·b`.
fn ratio4(a: &G2Vector, b: &G2Vector) -> Option<BigRational> {
    let k = b.iter().position(|x| !x.is_zero())?;
    let lam = &a[k] / &b[k];
    if (0..4).all(|i| a[i] == &lam * &b[i]) {
        Some(lam)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::{g2, gp, sym2_index, t_index};
    use crate::q;

    fn origin() -> Vec<BigRational> {
        vec![BigRational::zero(); 16]
    }

    #[test]
    fn validate_examples() {
        let a = gp([1, 0, 0, 0]);
        let e1 = g2([1, 0, 0, 0]);
        let e2 = g2([0, 1, 0, 0]);
        assert!(validate_cell(&Cell::triangle(origin(), a.clone(), e1.clone(), e2.clone(), q(1))).is_ok());
        assert!(matches!(
            validate_cell(&Cell::triangle(origin(), a.clone(), e1.clone(), e1.clone(), q(1))),
            Err(CellError::DegenerateCell(_))
        ));
        assert!(matches!(
            validate_cell(&Cell::parallelogram(origin(), gp([0; 4]), a, e1.clone(), e2, q(1))),
            Err(CellError::DegenerateCell(_))
        ));
        assert!(matches!(
            validate_cell(&Cell::triangle(vec![q(0); 3], gp([1, 0, 0, 0]), e1, g2([0, 0, 1, 0]), q(1))),
            Err(CellError::MalformedCell(_))
        ));
    }

    #[test]
    fn unit_vol() {
        let a = gp([1, 0, 0, 0]);
        let b = gp([0, 1, 0, 0]);
        let e1 = g2([1, 0, 0, 0]);
        let e2 = g2([0, 1, 0, 0]);
        let tri = vol_cell(&Cell::triangle(origin(), a.clone(), e1.clone(), e2.clone(), q(1)));
        assert_eq!(tri, ClassT::basis(t_index(sym2_index(4, 0, 0), 0)));
        let par = vol_cell(&Cell::parallelogram(origin(), a, b, e1, e2, q(1)));
        assert_eq!(par, ClassT::basis(t_index(sym2_index(4, 0, 1), 0)).scale(&q(2)));
    }

    #[test]
    fn triangle_flags() {
        let torus = Torus::new(1);
        let s = gp([1, 0, 0, 0]);
        let u = g2([1, 0, 0, 0]);
        let v = g2([0, 1, 0, 0]);
        let x = origin();
        let cell = Cell::triangle(x.clone(), s.clone(), u.clone(), v.clone(), q(1));
        let f = alpha_cell(&torus, &cell);
        assert_eq!(f.len(), 6);
        let e12 = Wedge2::basis(0);
        let sr = gp_rat(&s);
        let xsu = add_vec(&x, &tensor(&sr, &u));
        let xsv = add_vec(&x, &tensor(&sr, &v));
        let key = |p: &[BigRational], dir: [i64; 4]| FlagKey { vertex: torus.key(p), direction: dir.map(BigInt::from).to_vec() };
        let expect = [
            (key(&x, [1, 0, 0, 0]), e12.clone()),
            (key(&x, [0, 1, 0, 0]), -&e12),
            (key(&xsu, [1, -1, 0, 0]), e12.clone()),
            (key(&xsu, [1, 0, 0, 0]), -&e12),
            (key(&xsv, [0, 1, 0, 0]), e12.clone()),
            (key(&xsv, [1, -1, 0, 0]), -&e12),
        ];
        for (k, w) in expect {
            assert_eq!(f.flags.get(&k), Some(&w));
        }
    }

    #[test]
    fn cancelling_pair_is_balanced() {
        let cell = Cell::triangle(origin(), gp([0, 1, 0, 0]), g2([1, 2, 0, 0]), g2([0, 0, 1, 0]), q(3));
        let mut c = Chain::new(2);
        c.push(cell.clone());
        assert!(!is_balanced(&c));
        c.push(cell.with_weight(q(-3)));
        assert!(is_balanced(&c));
    }

    #[test]
    fn subdivide_triangle_and_parallelogram_loops() {
        let s = gp([1, 0, 0, 0]);
        let t = gp([0, 0, 1, 0]);
        let u = g2([1, 0, 0, 0]);
        let v = g2([0, 1, 1, 0]);
        let x = origin();
        let sr = gp_rat(&s);
        let tr = gp_rat(&t);
        let tri = vec![x.clone(), add_vec(&x, &tensor(&sr, &u)), add_vec(&x, &tensor(&sr, &v))];
        let sub = subdivide_polygon(1, &tri).unwrap();
        assert_eq!(sub.chain.cells, vec![Cell::triangle(x.clone(), s.clone(), u.clone(), v.clone(), q(1))]);
        let p1 = add_vec(&x, &tensor(&sr, &u));
        let par = vec![x.clone(), p1.clone(), add_vec(&p1, &tensor(&tr, &v)), add_vec(&x, &tensor(&tr, &v))];
        let sub = subdivide_polygon(1, &par).unwrap();
        assert_eq!(sub.chain.cells, vec![Cell::parallelogram(x, s, t, u, v, q(1))]);
    }

    #[test]
    fn non_rank_one_edge_rejected() {
        let x = origin();
        let mut y = origin();
        y[0] = q(1);
        y[5] = q(1);
        let mut z = origin();
        z[1] = q(1);
        let err = subdivide_polygon(1, &[x, y, z]).unwrap_err();
        assert_eq!(err, SubdivideError::NotSubdividable { edge: 0, reason: "displacement is not rank 1" });
    }

    #[test]
    fn rank_one_split_roundtrip() {
        let s = [q(0), q(2), q(-4), q(0)];
        let u = g2([3, 0, -1, 5]);
        let delta = tensor(&s, &u);
        let (sig, a) = rank_one_split(&delta).unwrap();
        assert_eq!(sig, gp([0, 1, -2, 0]));
        assert_eq!(tensor(&gp_rat(&sig), &a), delta);
    }
}
