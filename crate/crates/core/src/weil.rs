//! The Weil family: polarization `Q`, positivity, the Γ1 embedding, complex
//! multiplication and the classes θ, w1, w2.
//!
//! `d` is always a concrete positive integer; symbolic work is over
//! ℚ[a, b, c, e] via [`ParamPoly`].
//!
//! `γ_i` is column `i` of `Q`: its `e_k`-component is the Γp-linear form
//! `Q[k][i]`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::{IntMatrix, LatticeSpec, RatMatrix};
use crate::multilinear::{
    gamma_wedge_sym_part, sym2_gp, sym2_index, sym_square_embed, t_label, wedge2_index, ClassT, Wedge2,
    SYM2_GP_DIM, SYM2_W_DIM, T_DIM, WEDGE2_PAIRS,
};
use crate::poly::ParamPoly;
use crate::{q, qq};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    /// Rational values of (a, b, c, e).
    Numeric([BigRational; 4]),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilParams {
    pub d: i64,
    pub mode: Mode,
}

impl WeilParams {
    pub fn symbolic(d: i64) -> Self {
        assert!(d >= 1, "d must be positive");
        WeilParams { d, mode: Mode::Symbolic }
    }

    pub fn numeric(d: i64, abce: [BigRational; 4]) -> Self {
        assert!(d >= 1, "d must be positive");
        WeilParams { d, mode: Mode::Numeric(abce) }
    }
}

/// Γp-linear coefficients (a, b, c, e) of the entries of `Q`.
pub fn q_linear(d: i64) -> [[[i64; 4]; 4]; 4] {
    let a = [1, 0, 0, 0];
    let b = [0, 1, 0, 0];
    let c = [0, 0, 1, 0];
    let e = [0, 0, 0, 1];
    let z = [0; 4];
    let neg = |v: [i64; 4]| v.map(|x| -x);
    let mul = |v: [i64; 4]| v.map(|x| d * x);
    [[a, b, z, e], [b, c, neg(e), z], [z, neg(e), mul(a), mul(b)], [e, z, mul(b), mul(c)]]
}

/// `Q` with [`ParamPoly`] entries.
pub fn build_polarization(d: i64) -> Vec<Vec<ParamPoly>> {
    q_linear(d)
        .iter()
        .map(|row| row.iter().map(|v| ParamPoly::linear(&v.map(q))).collect())
        .collect()
}

/// `Q` evaluated at numeric parameters.
pub fn build_polarization_numeric(d: i64, abce: &[BigRational; 4]) -> RatMatrix {
    let rows = build_polarization(d).iter().map(|r| r.iter().map(|p| p.eval(abce)).collect()).collect();
    RatMatrix::from_rows(rows, 4)
}

/// `D = d(ac − b²) − e²` as a polynomial.
pub fn d_poly(d: i64) -> ParamPoly {
    let v = ParamPoly::var;
    let acb = &(&v(0) * &v(2)) - &(&v(1) * &v(1));
    &acb.scale(&q(d)) - &(&v(3) * &v(3))
}

/// `D` in Sym²Γp coordinates: `d` on ac, `−d` on b², `−1` on e².
pub fn d_element(d: i64) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); SYM2_GP_DIM];
    out[sym2_index(4, 0, 2)] = q(d);
    out[sym2_index(4, 1, 1)] = q(-d);
    out[sym2_index(4, 3, 3)] = q(-1);
    out
}

/// Leading principal minors of `Q`, computed by Laplace expansion.
pub fn leading_minors(d: i64) -> [ParamPoly; 4] {
    let qm = build_polarization(d);
    core::array::from_fn(|k| {
        let sub: Vec<Vec<ParamPoly>> = qm[..=k].iter().map(|r| r[..=k].to_vec()).collect();
        ParamPoly::det(&sub)
    })
}

/// The expected closed forms `(a, ac − b², a·D, D²)`.
pub fn expected_minors(d: i64) -> [ParamPoly; 4] {
    let v = ParamPoly::var;
    let dd = d_poly(d);
    [v(0), &(&v(0) * &v(2)) - &(&v(1) * &v(1)), &v(0) * &dd, &dd * &dd]
}

/// `a > 0` and `D > 0`. Also asserts that these imply positive leading
/// minors of `Q` at the given point.
pub fn positivity_check(d: i64, abce: &[BigRational; 4]) -> bool {
    let a_pos = abce[0].is_positive();
    let dval = d_poly(d).eval(abce);
    let ok = a_pos && dval.is_positive();
    if ok {
        for m in leading_minors(d) {
            assert!(m.eval(abce).is_positive(), "positivity does not imply positive minors");
        }
    }
    ok
}

/// Exact positive-definiteness test: all leading minors of numeric `Q`
/// positive (Bareiss-free: direct rational elimination).
pub fn is_positive_definite(d: i64, abce: &[BigRational; 4]) -> bool {
    let m = build_polarization_numeric(d, abce);
    // Gaussian elimination without pivoting; the pivots are ratios of
    // consecutive leading minors
    let mut a: Vec<Vec<BigRational>> = (0..4).map(|i| m.row(i).to_vec()).collect();
    for k in 0..4 {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..4 {
            let f = &a[i][k] / &a[k][k];
            for j in k..4 {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    true
}

/// The 16×4 integer matrix whose column `i` is `γ_i ∈ Γ2⊗Γp`, row index
/// `4·p + k`.
pub fn gamma_embedding(d: i64) -> IntMatrix {
    let ql = q_linear(d);
    let mut m = IntMatrix::dense_zeros(16, 4);
    for i in 0..4 {
        for k in 0..4 {
            for p in 0..4 {
                if ql[k][i][p] != 0 {
                    m.set(4 * p + k, i, BigInt::from(ql[k][i][p]));
                }
            }
        }
    }
    m
}

/// Γ1 as a lattice in Γ2⊗Γp.
pub fn gamma1_lattice(d: i64) -> LatticeSpec {
    let g = gamma_embedding(d);
    LatticeSpec::from_int(16, &(0..4).map(|i| g.column(i)).collect::<Vec<_>>())
}

/// `γ_i` as four Γp-vectors (one per `e_k`).
pub fn gamma_column(d: i64, i: usize) -> [[BigRational; 4]; 4] {
    let ql = q_linear(d);
    core::array::from_fn(|k| ql[k][i].map(q))
}

/// The complex multiplication: `M` acts on Γ2 (column `i` is the image of
/// `e_i`), `N` on the γ-basis (column `i` is the image of `γ_i`).
pub fn cm_action(d: i64) -> (IntMatrix, IntMatrix) {
    let m = IntMatrix::from_i64(&[&[0, 0, -1, 0], &[0, 0, 0, -1], &[d, 0, 0, 0], &[0, d, 0, 0]]);
    let n = IntMatrix::from_i64(&[&[0, 0, -d, 0], &[0, 0, 0, -d], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
    (m, n)
}

/// `M` applied to the Γ2 side of `γ_i`.
pub fn cm_apply_gamma(d: i64, i: usize) -> [[BigRational; 4]; 4] {
    let (m, _) = cm_action(d);
    let g = gamma_column(d, i);
    core::array::from_fn(|k| {
        core::array::from_fn(|p| {
            (0..4).map(|l| BigRational::from_integer(m.get(k, l).clone()) * &g[l][p]).sum()
        })
    })
}

/// `PᵀQP` for an integer 4×4 `P`, symbolically.
pub fn congruence(d: i64, p: &IntMatrix) -> Vec<Vec<ParamPoly>> {
    let qm = build_polarization(d);
    let c = |x: &BigInt| ParamPoly::constant(BigRational::from_integer(x.clone()));
    (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    let mut acc = ParamPoly::zero();
                    for k in 0..4 {
                        for l in 0..4 {
                            let (pki, plj) = (p.get(k, i), p.get(l, j));
                            if pki.is_zero() || plj.is_zero() {
                                continue;
                            }
                            acc = &acc + &(&(&c(pki) * &qm[k][l]) * &c(plj));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Compatibility of the CM action with `Q`. `row` is the statement for
/// the matrix acting on coordinate rows (`M_row = Mᵀ`, so
/// `M_rowᵀ·Q·M_row = M·Q·Mᵀ`); `column` is the literal `MᵀQM` with `M` in
/// column convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmCompatibility {
    pub row: bool,
    pub column: bool,
}

pub fn cm_polarization_check(d: i64) -> CmCompatibility {
    let (m, _) = cm_action(d);
    let qm = build_polarization(d);
    let dq: Vec<Vec<ParamPoly>> = qm.iter().map(|r| r.iter().map(|x| x.scale(&q(d))).collect()).collect();
    CmCompatibility { row: congruence(d, &m.transpose()) == dq, column: congruence(d, &m) == dq }
}

/// A (2,2)-class in ∧²Γ1⊗∧²Γ2: 36 coordinates, index `6·(γ pair) + (e pair)`
/// with both pairs in [`WEDGE2_PAIRS`] order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClassH22(pub Vec<BigRational>);

impl ClassH22 {
    pub fn zero() -> Self {
        ClassH22(vec![BigRational::zero(); 36])
    }

    pub fn basis(idx: usize) -> Self {
        let mut c = Self::zero();
        c.0[idx] = BigRational::one();
        c
    }

    /// Adds `coef · γ_{ij}⊗e_{kl}`, 1-based subscripts in any order.
    pub fn add_term(&mut self, i: usize, j: usize, k: usize, l: usize, coef: BigRational) {
        let (gi, s1) = wedge2_index(i - 1, j - 1).expect("γ_ii");
        let (ek, s2) = wedge2_index(k - 1, l - 1).expect("e_kk");
        let c = if s1 * s2 < 0 { -coef } else { coef };
        self.0[6 * gi + ek] += c;
    }

    /// Coordinate of `γ_{ij}⊗e_{kl}` (1-based subscripts, signs applied).
    pub fn coeff(&self, i: usize, j: usize, k: usize, l: usize) -> BigRational {
        match (wedge2_index(i - 1, j - 1), wedge2_index(k - 1, l - 1)) {
            (Some((gi, s1)), Some((ek, s2))) => {
                let v = self.0[6 * gi + ek].clone();
                if s1 * s2 < 0 {
                    -v
                } else {
                    v
                }
            }
            _ => BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        ClassH22(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, o: &ClassH22) -> Self {
        ClassH22(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn label(idx: usize) -> String {
        let (i, j) = WEDGE2_PAIRS[idx / 6];
        let (k, l) = WEDGE2_PAIRS[idx % 6];
        alloc::format!("g{}{}*e{}{}", i + 1, j + 1, k + 1, l + 1)
    }
}

impl fmt::Debug for ClassH22 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{}", Self::label(i))?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Literal term list `(i, j, k, l, coef)` of `γ_{ij}⊗e_{kl}` for w1.
pub fn w1_terms(d: i64) -> Vec<(usize, usize, usize, usize, BigRational)> {
    vec![
        (1, 2, 1, 2, q(1)),
        (3, 4, 1, 2, qq(-1, d)),
        (1, 4, 1, 4, q(-1)),
        (1, 4, 3, 2, q(-1)),
        (3, 2, 1, 4, q(-1)),
        (3, 2, 3, 2, q(-1)),
        (1, 2, 3, 4, q(-d)),
        (3, 4, 3, 4, q(1)),
    ]
}

/// Literal term list for w2.
pub fn w2_terms(d: i64) -> Vec<(usize, usize, usize, usize, BigRational)> {
    vec![
        (1, 4, 1, 2, q(1)),
        (1, 4, 3, 4, q(-d)),
        (1, 2, 3, 2, q(d)),
        (3, 4, 3, 2, q(-1)),
        (1, 2, 1, 4, q(d)),
        (3, 4, 1, 4, q(-1)),
        (3, 2, 1, 2, q(1)),
        (3, 2, 3, 4, q(-d)),
    ]
}

fn from_terms(terms: Vec<(usize, usize, usize, usize, BigRational)>) -> ClassH22 {
    let mut c = ClassH22::zero();
    for (i, j, k, l, v) in terms {
        c.add_term(i, j, k, l, v);
    }
    c
}

/// `(θ, w1, w2)` in the γ_{ij}⊗e_{kl} basis.
pub fn standard_classes(d: i64) -> (ClassH22, ClassH22, ClassH22) {
    let mut theta = ClassH22::zero();
    for i in 0..6 {
        theta.0[6 * i + i] = q(1);
    }
    (theta, from_terms(w1_terms(d)), from_terms(w2_terms(d)))
}

/// Replaces each `γ_{ij}` by the Sym²Γp⊗∧²Γ2 part of `γ_i ∧ γ_j` and
/// multiplies with the `e_{kl}` factor in Sym²(∧²Γ2).
#[allow(non_snake_case)]
pub fn expand_class_to_T(c: &ClassH22, d: i64) -> ClassT {
    let mut out = ClassT::zero();
    for (gi, &(i, j)) in WEDGE2_PAIRS.iter().enumerate() {
        if (0..6).all(|k| c.0[6 * gi + k].is_zero()) {
            continue;
        }
        let part = gamma_wedge_sym_part(&gamma_column(d, i), &gamma_column(d, j));
        for ek in 0..6 {
            let coef = &c.0[6 * gi + ek];
            if coef.is_zero() {
                continue;
            }
            out.add_assign_scaled(coef, &part.times_wedge(&Wedge2::basis(ek)));
        }
    }
    out
}

/// `(Σ_w P_w ⊗ e_w)²` for a ∧²-vector of Γp-linear forms.
pub fn square_of(linear: &[[BigRational; 4]; 6]) -> ClassT {
    let mut out = ClassT::zero();
    for w in 0..6 {
        for w2 in 0..6 {
            let p = sym2_gp(&linear[w], &linear[w2]);
            let s = sym_square_embed(&Wedge2::basis(w), &Wedge2::basis(w2));
            out.add_assign_scaled(&BigRational::one(), &ClassT::product(&p, &s));
        }
    }
    out
}

/// `D ⊗ W` for `W ∈ Sym²(∧²Γ2)` given by `(w, w', coef)` monomials.
pub fn d_times(d: i64, monos: &[(usize, usize, BigRational)]) -> ClassT {
    let mut w = vec![BigRational::zero(); SYM2_W_DIM];
    for (a, b, c) in monos {
        w[sym2_index(6, *a, *b)] += c;
    }
    ClassT::product(&d_element(d), &w)
}

const E12: usize = 0;
const E13: usize = 1;
const E14: usize = 2;
const E23: usize = 3;
const E24: usize = 4;
const E34: usize = 5;

/// `D((1/d)e12² + 2e12e34 + d·e34²) − D(e14 − e23)²`, the displayed form
/// of expand(w1) with rational coefficients.
pub fn w1_display(d: i64) -> ClassT {
    d_times(
        d,
        &[
            (E12, E12, qq(1, d)),
            (E12, E34, q(2)),
            (E34, E34, q(d)),
            (E14, E14, q(-1)),
            (E14, E23, q(2)),
            (E23, E23, q(-1)),
        ],
    )
}

/// `2D(e12 − d·e34)(e14 − e23)`.
pub fn w2_display(d: i64) -> ClassT {
    d_times(d, &[(E12, E14, q(2)), (E12, E23, q(-2)), (E14, E34, q(-2 * d)), (E23, E34, q(2 * d))])
}

/// The displayed θ expansion, literally (`corrected = false`) or with the
/// two suspected typos fixed (`−2e13e24`, `+(1/d)e12²`).
pub fn theta_display(d: i64, corrected: bool) -> ClassT {
    let z = [0i64; 4];
    let mut lin: [[BigRational; 4]; 6] = core::array::from_fn(|_| z.map(q));
    // −(e/d)e12 + a e13 + b(e14 + e23) + c e24 − e e34
    lin[E12][3] = qq(-1, d);
    lin[E13][0] = q(1);
    lin[E14][1] = q(1);
    lin[E23][1] = q(1);
    lin[E24][2] = q(1);
    lin[E34][3] = q(-1);
    let mut out = square_of(&lin).scale(&q(d));
    let (e12_sq, cross) = if corrected { (qq(1, d), (E13, E24)) } else { (qq(-1, d), (E13, E14)) };
    let bracket = d_times(
        d,
        &[(E12, E12, e12_sq), (E14, E14, q(1)), (E23, E23, q(1)), (cross.0, cross.1, q(-2)), (E34, E34, q(d))],
    );
    out.add_assign_scaled(&BigRational::one(), &bracket);
    out
}

/// One T-coordinate where the literal θ display differs from the computed
/// expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypoLine {
    pub coordinate: String,
    pub displayed: BigRational,
    pub computed: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTypoReport {
    pub differences: Vec<TypoLine>,
    /// The display with `−2e13e14 → −2e13e24` and `−(1/d)e12² → +(1/d)e12²`
    /// equals the computed expansion.
    pub corrected_matches: bool,
}

pub fn theta_typo_report(d: i64) -> ThetaTypoReport {
    let (theta, _, _) = standard_classes(d);
    let computed = expand_class_to_T(&theta, d);
    let literal = theta_display(d, false);
    let differences = (0..T_DIM)
        .filter(|&i| literal.0[i] != computed.0[i])
        .map(|i| TypoLine { coordinate: t_label(i), displayed: literal.0[i].clone(), computed: computed.0[i].clone() })
        .collect();
    ThetaTypoReport { differences, corrected_matches: theta_display(d, true) == computed }
}

/// The CM action `∧²N ⊗ ∧²M` on a (2,2)-class.
pub fn cm_act_h22(c: &ClassH22, d: i64) -> ClassH22 {
    let (m, n) = cm_action(d);
    // image of a basis 2-vector under a 4×4 matrix, in wedge coordinates
    let wedge_image = |mat: &IntMatrix, idx: usize| -> Vec<BigRational> {
        let (i, j) = WEDGE2_PAIRS[idx];
        let ci: Vec<BigRational> = (0..4).map(|r| BigRational::from_integer(mat.get(r, i).clone())).collect();
        let cj: Vec<BigRational> = (0..4).map(|r| BigRational::from_integer(mat.get(r, j).clone())).collect();
        WEDGE2_PAIRS.iter().map(|&(k, l)| &ci[k] * &cj[l] - &ci[l] * &cj[k]).collect()
    };
    let mut out = ClassH22::zero();
    for gi in 0..6 {
        let gimg = wedge_image(&n, gi);
        for ek in 0..6 {
            let coef = &c.0[6 * gi + ek];
            if coef.is_zero() {
                continue;
            }
            let eimg = wedge_image(&m, ek);
            for a in 0..6 {
                for b in 0..6 {
                    let v = &gimg[a] * &eimg[b];
                    if !v.is_zero() {
                        out.0[6 * a + b] += coef * v;
                    }
                }
            }
        }
    }
    out
}

/// `λ` with `cm_act_h22(c) = λ·c`, if `c` is an eigenvector.
pub fn cm_scalar(c: &ClassH22, d: i64) -> Option<BigRational> {
    let img = cm_act_h22(c, d);
    let k = c.0.iter().position(|x| !x.is_zero())?;
    let lam = &img.0[k] / &c.0[k];
    if img == c.scale(&lam) {
        Some(lam)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::snf;
    use alloc::vec::Vec;

    fn params(v: [i64; 4]) -> [BigRational; 4] {
        v.map(q)
    }

    #[test]
    fn q_example_d1() {
        let m = build_polarization_numeric(1, &params([2, 0, 2, 1]));
        let expect = [[2, 0, 0, 1], [0, 2, -1, 0], [0, -1, 2, 0], [1, 0, 0, 2]];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(*m.get(i, j), q(expect[i][j]));
            }
        }
    }

    #[test]
    fn q_entry_da() {
        let qm = build_polarization(5);
        assert_eq!(qm[2][2], ParamPoly::var(0).scale(&q(5)));
    }

    #[test]
    fn positivity_examples() {
        assert!(positivity_check(1, &params([2, 0, 2, 1])));
        assert!(!positivity_check(1, &params([1, 0, 1, 1])));
        assert_eq!(d_poly(1).eval(&params([2, 0, 2, 1])), q(3));
    }

    #[test]
    fn minors_closed_form() {
        for d in 1..=3 {
            assert_eq!(leading_minors(d), expected_minors(d));
        }
    }

    #[test]
    fn d_element_coordinates() {
        let e = d_element(4);
        assert_eq!(e[sym2_index(4, 0, 2)], q(4));
        assert_eq!(e[sym2_index(4, 1, 1)], q(-4));
        assert_eq!(e[sym2_index(4, 3, 3)], q(-1));
        assert_eq!(e.iter().filter(|x| !x.is_zero()).count(), 3);
    }

    #[test]
    fn gamma_snf_trivial() {
        for d in 1..=5 {
            let f: Vec<BigInt> = snf(&gamma_embedding(d)).invariant_factors();
            assert_eq!(f, vec![BigInt::one(); 4]);
        }
    }

    #[test]
    fn cm_identities() {
        for d in 1..=5 {
            let (m, n) = cm_action(d);
            let md = IntMatrix::identity(4);
            let minus_d = IntMatrix::from_rows(
                (0..4).map(|i| (0..4).map(|j| if i == j { BigInt::from(-d) } else { md.get(i, j).clone() }).collect()).collect(),
                4,
            );
            assert_eq!(m.mul(&m), minus_d);
            assert_eq!(n.mul(&n), minus_d);
            for i in 0..4 {
                // M γ_i = Σ_j N[j][i] γ_j
                let lhs = cm_apply_gamma(d, i);
                let rhs: [[BigRational; 4]; 4] = core::array::from_fn(|k| {
                    core::array::from_fn(|p| {
                        (0..4)
                            .map(|j| BigRational::from_integer(n.get(j, i).clone()) * &gamma_column(d, j)[k][p])
                            .sum()
                    })
                });
                assert_eq!(lhs, rhs);
            }
            let c = cm_polarization_check(d);
            assert!(c.row);
            assert_eq!(c.column, d == 1);
        }
    }

    #[test]
    fn class_coordinates() {
        for d in 1..=3 {
            let (theta, w1, w2) = standard_classes(d);
            assert_eq!(theta.coeff(1, 3, 1, 3), q(1));
            assert_eq!(theta.coeff(1, 2, 3, 4), q(0));
            assert_eq!(w1.coeff(3, 4, 1, 2), qq(-1, d));
            assert_eq!(w1.coeff(2, 3, 2, 3), q(-1));
            assert_eq!(w2.coeff(2, 3, 1, 2), q(-1));
        }
    }

    #[test]
    fn w2_expansion_matches_display() {
        for d in 1..=5 {
            let (_, _, w2) = standard_classes(d);
            assert_eq!(expand_class_to_T(&w2, d), w2_display(d));
        }
    }

    #[test]
    fn theta_corrected_display_matches() {
        for d in 1..=5 {
            let r = theta_typo_report(d);
            assert!(r.corrected_matches);
            assert!(!r.differences.is_empty());
        }
    }

    #[test]
    fn cm_scalars_are_d_squared() {
        for d in 1..=4 {
            let (theta, w1, w2) = standard_classes(d);
            for c in [&theta, &w1, &w2] {
                assert_eq!(cm_scalar(c, d), Some(q(d * d)));
            }
        }
    }
}
