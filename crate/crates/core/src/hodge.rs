//! The eigenwave map φ: ∧²Γ1⊗∧²Γ2 → Γ1⊗∧³V for this family, and the
//! Hodge classes as its parameter-identical kernel.
//!
//! `φ(γ_ij⊗ω) = γ_i⊗(ḡ_j∧ω) − γ_j⊗(ḡ_i∧ω)` with `ḡ_k = Σ_m Q[m][k]·e_m`.

use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::linalg::{primitive_rat, LatticeSpec, RatMatrix};
use crate::multilinear::{wedge3_index, wedge3_label, WEDGE2_PAIRS};
use crate::poly::ParamPoly;
use crate::weil::{build_polarization, ClassH22};

/// Coordinates in Γ1⊗∧³V: `[γ index][e_klm triple]`.
#[derive(Clone, PartialEq, Eq)]
pub struct EigenwaveImage(pub [[ParamPoly; 4]; 4]);

impl EigenwaveImage {
    pub fn zero() -> Self {
        EigenwaveImage(core::array::from_fn(|_| core::array::from_fn(|_| ParamPoly::zero())))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|r| r.iter().all(|p| p.is_zero()))
    }
}

impl fmt::Debug for EigenwaveImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, row) in self.0.iter().enumerate() {
            for (t, p) in row.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "({p})*g{}*{}", g + 1, wedge3_label(t))?;
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `φ` of a single basis element `γ_{ij}⊗e_{kl}` (0-based), accumulated
/// into `out` with coefficient `c`.
fn apply_basis(qm: &[Vec<ParamPoly>], gi: usize, ek: usize, c: &BigRational, out: &mut EigenwaveImage) {
    let (i, j) = WEDGE2_PAIRS[gi];
    let (k, l) = WEDGE2_PAIRS[ek];
    // γ_i ⊗ (ḡ_j ∧ e_kl) − γ_j ⊗ (ḡ_i ∧ e_kl)
    for (target, other, sign) in [(i, j, 1i64), (j, i, -1)] {
        for m in 0..4 {
            if let Some((t, s)) = wedge3_index(m, k, l) {
                let coef = c * BigRational::from_integer(BigInt::from(sign * s as i64));
                let term = qm[m][other].scale(&coef);
                out.0[target][t] = &out.0[target][t] + &term;
            }
        }
    }
}

pub fn eigenwave_apply(c: &ClassH22, d: i64) -> EigenwaveImage {
    let qm = build_polarization(d);
    let mut out = EigenwaveImage::zero();
    for (idx, v) in c.0.iter().enumerate() {
        if !v.is_zero() {
            apply_basis(&qm, idx / 6, idx % 6, v, &mut out);
        }
    }
    out
}

pub fn is_hodge(c: &ClassH22, d: i64) -> bool {
    eigenwave_apply(c, d).is_zero()
}

/// The 64×36 matrix of linear conditions: row `16·γ + 4·triple + param`
/// is the coefficient of that parameter in that φ-coordinate.
pub fn condition_matrix(d: i64) -> RatMatrix {
    let qm = build_polarization(d);
    let mut m = RatMatrix::zeros(64, 36);
    for col in 0..36 {
        let mut img = EigenwaveImage::zero();
        apply_basis(&qm, col / 6, col % 6, &crate::q(1), &mut img);
        for g in 0..4 {
            for t in 0..4 {
                let lin = img.0[g][t].linear_coeffs();
                for (p, v) in lin.into_iter().enumerate() {
                    m.set(16 * g + 4 * t + p, col, v);
                }
            }
        }
    }
    m
}

/// Saturated lattice of integer classes killed by φ identically in the
/// parameters.
pub fn hodge_kernel(d: i64) -> LatticeSpec {
    let gens: Vec<Vec<BigRational>> = condition_matrix(d)
        .kernel()
        .into_iter()
        .map(|v| primitive_rat(&v).expect("kernel vectors are nonzero").into_iter().map(BigRational::from).collect())
        .collect();
    LatticeSpec::new(36, gens).saturation()
}

/// φ at numeric parameters, as a 16×36 rational matrix (rows `4·γ + triple`).
pub fn numeric_condition_matrix(d: i64, abce: &[BigRational; 4]) -> RatMatrix {
    let qm = build_polarization(d);
    let mut m = RatMatrix::zeros(16, 36);
    for col in 0..36 {
        let mut img = EigenwaveImage::zero();
        apply_basis(&qm, col / 6, col % 6, &crate::q(1), &mut img);
        for g in 0..4 {
            for t in 0..4 {
                m.set(4 * g + t, col, img.0[g][t].eval(abce));
            }
        }
    }
    m
}

/// Rational kernel of φ at a numeric parameter point (diagnostic; rational
/// points can have excess kernel).
pub fn numeric_kernel(d: i64, abce: &[BigRational; 4]) -> Vec<Vec<BigRational>> {
    numeric_condition_matrix(d, abce).kernel()
}

/// Rank of the kernel at a numeric point.
pub fn numeric_kernel_rank(d: i64, abce: &[BigRational; 4]) -> usize {
    36 - numeric_condition_matrix(d, abce).rank()
}

/// Intersection over ℚ of the numeric kernels at the given points.
pub fn intersect_numeric_kernels(d: i64, points: &[[BigRational; 4]]) -> Vec<Vec<BigRational>> {
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for p in points {
        let m = numeric_condition_matrix(d, p);
        for i in 0..m.rows() {
            rows.push(m.row(i).to_vec());
        }
    }
    if rows.is_empty() {
        return (0..36).map(|i| ClassH22::basis(i).0).collect();
    }
    RatMatrix::from_rows(rows, 36).kernel()
}

/// `true` iff `v` lies in the ℚ-span of `basis`.
pub fn in_span(basis: &[Vec<BigRational>], v: &[BigRational]) -> bool {
    if basis.is_empty() {
        return v.iter().all(|x| x.is_zero());
    }
    let m = RatMatrix::from_columns(basis, v.len());
    m.solve(v).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;
    use crate::weil::standard_classes;

    #[test]
    fn basis_example() {
        let mut c = ClassH22::zero();
        c.add_term(1, 2, 1, 2, q(1));
        let img = eigenwave_apply(&c, 1);
        let e = ParamPoly::var(3);
        let mut expect = EigenwaveImage::zero();
        expect.0[0][0] = -&e;
        expect.0[1][1] = -&e;
        assert_eq!(img, expect);
        assert!(!is_hodge(&c, 1));
    }

    #[test]
    fn standard_classes_are_hodge() {
        for d in 1..=3 {
            let (t, w1, w2) = standard_classes(d);
            assert!(is_hodge(&t, d));
            assert!(is_hodge(&w1, d));
            assert!(is_hodge(&w2, d));
            assert!(is_hodge(&w1.add(&w2), d));
            assert!(eigenwave_apply(&ClassH22::zero(), d).is_zero());
        }
    }

    #[test]
    fn kernel_rank_three() {
        for d in 1..=3 {
            let k = hodge_kernel(d);
            assert_eq!(k.rank(), 3);
            let (t, w1, w2) = standard_classes(d);
            assert!(k.contains(&t.0).unwrap());
            assert!(k.contains(&w1.scale(&q(d)).0).unwrap());
            assert!(k.contains(&w2.0).unwrap());
        }
    }
}
