//! Fraction-free determinants and Sylvester matrices over exact rings.

use crate::ring::{ExactDiv, Ring};
use crate::{Error, Result};

/// Bareiss elimination. Each step divides by the previous pivot, which is
/// exact in any integral domain; a zero pivot is handled by a row swap.
pub fn bareiss_det<R: ExactDiv>(mut m: Vec<Vec<R>>) -> Result<R> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(R::one());
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(R::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.exact_div(&prev).ok_or_else(|| {
                    Error::Inexact(format!("inexact Bareiss division at step {k}"))
                })?;
            }
            m[i][k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// Sylvester matrix of `a` and `b`, coefficients listed from the leading
/// one down: `deg b` shifted rows of `a`, then `deg a` shifted rows of `b`.
pub fn sylvester_matrix<R: Ring>(a: &[R], b: &[R]) -> Vec<Vec<R>> {
    let m = a.len().saturating_sub(1);
    let n = b.len().saturating_sub(1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (coeffs, shifts) in [(a, n), (b, m)] {
        for shift in 0..shifts {
            let mut row = vec![R::zero(); size];
            for (j, c) in coeffs.iter().enumerate() {
                row[shift + j] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}
