//! Polynomials in the four polarization parameters a, b, c, e.
//!
//! `d` never appears as a symbol; it is folded into coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Names of the parameter symbols, in exponent order.
pub const PARAM_NAMES: [&str; 4] = ["a", "b", "c", "e"];

/// Exponent vector over (a, b, c, e).
pub type Monomial = [u8; 4];

/// A polynomial in ℚ[a, b, c, e] with a normalized (sorted, zero-free)
/// monomial map.
#[derive(Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term([0; 4], c);
        p
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The variable with index `i` (0 = a, 1 = b, 2 = c, 3 = e).
    pub fn var(i: usize) -> Self {
        let mut m = [0u8; 4];
        m[i] = 1;
        let mut p = Self::zero();
        p.add_term(m, BigRational::one());
        p
    }

    /// The linear form `Σ cᵢ·xᵢ`.
    pub fn linear(coeffs: &[BigRational]) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let mut m = [0u8; 4];
            m[i] = 1;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Linear coefficients (a, b, c, e) of a polynomial of degree ≤ 1.
    pub fn linear_coeffs(&self) -> [BigRational; 4] {
        core::array::from_fn(|i| {
            let mut m = [0u8; 4];
            m[i] = 1;
            self.coeff(&m)
        })
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().map(|&x| x as u32).sum()).max()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = Self::zero();
        for (m, v) in &self.terms {
            p.add_term(*m, v * c);
        }
        p
    }

    pub fn eval(&self, point: &[BigRational; 4]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// Determinant of a square matrix of polynomials (Laplace expansion).
    pub fn det(m: &[Vec<ParamPoly>]) -> ParamPoly {
        let n = m.len();
        if n == 0 {
            return Self::one();
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = Self::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<ParamPoly>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let t = &m[0][j] * &Self::det(&minor);
            acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(String::from(PARAM_NAMES[i])),
            _ => parts.push(format!("{}^{}", PARAM_NAMES[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first, then lexicographic
        let mut items: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        items.sort_by(|a, b| {
            let da: u32 = a.0.iter().map(|&x| x as u32).sum();
            let db: u32 = b.0.iter().map(|&x| x as u32).sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (k, (m, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = fmt_monomial(m);
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(*m, c.clone());
        }
        p
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(*m, -c.clone());
        }
        p
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut p = ParamPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3]];
                p.add_term(m, c1 * c2);
            }
        }
        p
    }
}
