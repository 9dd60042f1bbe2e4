//! Determinants of Sylvester matrices.
//!
//! Over `F_q` plain Gaussian elimination is used. Over the polynomial rings
//! `F_q[t]` and `F_q[a_0, ..., a_{n-1}]` the fraction-free Bareiss scheme is
//! used: every intermediate entry is a minor of the input, and each update
//! divides exactly by the previous pivot.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::field::{Field, FieldElem};

/// Integral domain operations needed by [`bareiss_det`].
pub trait ExactRing: Clone {
    fn is_zero(&self) -> bool;
    fn ring_mul(&self, other: &Self) -> Result<Self>;
    fn ring_sub(&self, other: &Self) -> Result<Self>;
    fn ring_neg(&self) -> Self;
    /// Exact quotient; fails with [`crate::Error::InexactDivision`] otherwise.
    fn ring_div_exact(&self, divisor: &Self) -> Result<Self>;
}

/// Sylvester matrix of `f` and `g`, given as coefficient slices (constant
/// term first) whose lengths fix the formal degrees `m = f.len() - 1` and
/// `k = g.len() - 1`. Leading entries may be zero.
pub fn sylvester<T: Clone>(f: &[T], g: &[T], zero: &T) -> Vec<Vec<T>> {
    assert!(!f.is_empty() && !g.is_empty(), "formal degree must be defined");
    let m = f.len() - 1;
    let k = g.len() - 1;
    let n = m + k;
    let mut rows = Vec::with_capacity(n);
    for i in 0..k {
        let mut row = vec![zero.clone(); n];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); n];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Determinant over `F_q` by Gaussian elimination.
pub fn det_field(field: &Field, mut m: Vec<Vec<FieldElem>>) -> FieldElem {
    let n = m.len();
    let mut det = FieldElem::ONE;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return FieldElem::ZERO;
        };
        if pivot != col {
            m.swap(pivot, col);
            det = field.neg(det);
        }
        let pv = m[col][col];
        det = field.mul(det, pv);
        let inv = field.inv(pv).expect("pivot is nonzero");
        for r in col + 1..n {
            let factor = field.mul(m[r][col], inv);
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let sub = field.mul(factor, m[col][c]);
                m[r][c] = field.sub(m[r][c], sub);
            }
        }
    }
    det
}

/// Fraction-free determinant over an integral domain. `one` is the ring's
/// identity (returned for the empty matrix).
pub fn bareiss_det<R: ExactRing>(mut m: Vec<Vec<R>>, one: R) -> Result<R> {
    let n = m.len();
    if n == 0 {
        return Ok(one);
    }
    let mut negate = false;
    let mut prev = one;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(pivot) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(m[k][k].clone());
            };
            m.swap(k, pivot);
            negate = !negate;
        }
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pkk = &pivot_row[k];
        for row in tail.iter_mut() {
            let rik = row[k].clone();
            for j in k + 1..n {
                let mut v = row[j].ring_mul(pkk)?;
                if !rik.is_zero() && !pivot_row[j].is_zero() {
                    v = v.ring_sub(&rik.ring_mul(&pivot_row[j])?)?;
                }
                row[j] = if v.is_zero() { v } else { v.ring_div_exact(&prev)? };
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { det.ring_neg() } else { det })
}

/// Laplace expansion along the first row. Exponential; used only to
/// cross-check [`bareiss_det`] on small matrices.
pub fn cofactor_det<R: ExactRing>(m: &[Vec<R>], one: &R) -> Result<R> {
    let n = m.len();
    if n == 0 {
        return Ok(one.clone());
    }
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc: Option<R> = None;
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<R>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let mut term = m[0][c].ring_mul(&cofactor_det(&minor, one)?)?;
        if c % 2 == 1 {
            term = term.ring_neg();
        }
        acc = Some(match acc {
            None => term,
            Some(a) => a.ring_sub(&term.ring_neg())?,
        });
    }
    match acc {
        Some(a) => Ok(a),
        // every entry in the first row is zero
        None => Ok(m[0][0].clone()),
    }
}
