//! Plain-text matrices: a `rows cols` header, then row-major entries
//! (decimal integers or `p/q`) separated by any whitespace.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::Zero;
use tropweil_core::linalg::{IntMatrix, RatMatrix};
use tropweil_core::{BigInt, BigRational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixTextError {
    MissingHeader,
    BadHeader(String),
    BadEntry { index: usize, token: String },
    ZeroDenominator { index: usize },
    WrongCount { expected: usize, found: usize },
    NotIntegral { index: usize },
}

impl std::fmt::Display for MatrixTextError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MatrixTextError::MissingHeader => write!(f, "matrix text is empty (expected a 'rows cols' header)"),
            MatrixTextError::BadHeader(h) => write!(f, "bad matrix header '{h}'"),
            MatrixTextError::BadEntry { index, token } => write!(f, "entry {index}: cannot parse '{token}'"),
            MatrixTextError::ZeroDenominator { index } => write!(f, "entry {index}: zero denominator"),
            MatrixTextError::WrongCount { expected, found } => {
                write!(f, "expected {expected} entries, found {found}")
            }
            MatrixTextError::NotIntegral { index } => write!(f, "entry {index} is not an integer"),
        }
    }
}

impl std::error::Error for MatrixTextError {}

/// Parses `n`, `-n` or `p/q`. Rejects a zero denominator instead of
/// panicking.
pub fn parse_rational(tok: &str) -> Option<BigRational> {
    match tok.split_once('/') {
        None => BigInt::from_str(tok).ok().map(BigRational::from_integer),
        Some((n, d)) => {
            let n = BigInt::from_str(n).ok()?;
            let d = BigInt::from_str(d).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
    }
}

/// Canonical spelling: `n` for integers, reduced `p/q` otherwise.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat_matrix(text: &str) -> Result<RatMatrix, MatrixTextError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or(MatrixTextError::MissingHeader)?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| MatrixTextError::BadHeader(header.to_string())))
        .collect::<Result<_, _>>()?;
    let [rows, cols] = dims[..] else {
        return Err(MatrixTextError::BadHeader(header.to_string()));
    };
    let mut entries = Vec::with_capacity(rows * cols);
    for (index, tok) in lines.flat_map(str::split_whitespace).enumerate() {
        if tok.split_once('/').is_some_and(|(_, d)| {
            let d = d.trim_start_matches(['+', '-']);
            !d.is_empty() && d.chars().all(|c| c == '0')
        }) {
            return Err(MatrixTextError::ZeroDenominator { index });
        }
        entries.push(parse_rational(tok).ok_or_else(|| MatrixTextError::BadEntry { index, token: tok.to_string() })?);
    }
    if entries.len() != rows * cols {
        return Err(MatrixTextError::WrongCount { expected: rows * cols, found: entries.len() });
    }
    let mut m = RatMatrix::zeros(rows, cols);
    for (k, v) in entries.into_iter().enumerate() {
        if !v.is_zero() {
            m.set(k / cols, k % cols, v);
        }
    }
    Ok(m)
}

pub fn parse_int_matrix(text: &str) -> Result<IntMatrix, MatrixTextError> {
    let m = parse_rat_matrix(text)?;
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for (j, x) in m.row(i).iter().enumerate() {
            if !x.is_integer() {
                return Err(MatrixTextError::NotIntegral { index: i * m.cols() + j });
            }
            row.push(x.to_integer());
        }
        rows.push(row);
    }
    Ok(IntMatrix::from_rows(rows, m.cols()))
}

fn write_rows<I>(rows: usize, cols: usize, entries: I) -> String
where
    I: Iterator<Item = Vec<String>>,
{
    let mut out = String::new();
    writeln!(out, "{rows} {cols}").unwrap();
    for row in entries.take(rows) {
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn write_rat_matrix(m: &RatMatrix) -> String {
    write_rows(m.rows(), m.cols(), (0..m.rows()).map(|i| m.row(i).iter().map(format_rational).collect()))
}

pub fn write_int_matrix(m: &IntMatrix) -> String {
    write_rows(m.rows(), m.cols(), m.to_dense_rows().into_iter().map(|r| r.iter().map(|x| x.to_string()).collect()))
}

/// A vector written as a `1 × n` matrix.
pub fn write_rat_vector(v: &[BigRational]) -> String {
    write_rows(1, v.len(), std::iter::once(v.iter().map(format_rational).collect()))
}

pub fn write_int_vector(v: &[BigInt]) -> String {
    write_rows(1, v.len(), std::iter::once(v.iter().map(|x| x.to_string()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tropweil_core::{q, qq};

    #[test]
    fn round_trip_small() {
        let text = "2 3\n1 -2/4 0\n  7/1 0 -3\n";
        let m = parse_rat_matrix(text).unwrap();
        assert_eq!(m.get(0, 1), &qq(-1, 2));
        assert_eq!(m.get(1, 0), &q(7));
        let out = write_rat_matrix(&m);
        assert_eq!(out, "2 3\n1 -1/2 0\n7 0 -3\n");
        assert_eq!(parse_rat_matrix(&out).unwrap(), m);
    }

    #[test]
    fn errors_are_reported() {
        assert_eq!(parse_rat_matrix(""), Err(MatrixTextError::MissingHeader));
        assert!(matches!(parse_rat_matrix("2\n1 2"), Err(MatrixTextError::BadHeader(_))));
        assert_eq!(parse_rat_matrix("1 2\n1"), Err(MatrixTextError::WrongCount { expected: 2, found: 1 }));
        assert_eq!(parse_rat_matrix("1 1\n1/0"), Err(MatrixTextError::ZeroDenominator { index: 0 }));
        assert!(matches!(parse_rat_matrix("1 1\nx"), Err(MatrixTextError::BadEntry { .. })));
        assert_eq!(parse_int_matrix("1 2\n1 1/2").unwrap_err(), MatrixTextError::NotIntegral { index: 1 });
    }

    #[test]
    fn empty_matrix() {
        let m = parse_rat_matrix("0 4\n").unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 4));
        assert_eq!(write_rat_matrix(&m), "0 4\n");
    }
}
