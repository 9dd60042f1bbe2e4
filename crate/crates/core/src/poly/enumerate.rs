//! Enumeration of monic polynomials of fixed degree and of irreducibles.
//!
//! Index `i` in `[0, q^n)` maps to `t^n + c_{n-1} t^{n-1} + ... + c_0` where
//! `c_j` is the field element at position `d_j` of the field enumeration and
//! `i = d_0 + d_1 q + ... + d_{n-1} q^{n-1}`. Index 0 is `t^n`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use super::UniPoly;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// Largest monic search space sieved by [`irreducibles_up_to`].
pub const IRREDUCIBLE_SIEVE_LIMIT: u64 = 1 << 24;

/// `q^n`, the number of monic polynomials of degree `n`.
pub fn monic_count(field: &Field, n: usize) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total.checked_mul(field.q()).ok_or_else(|| {
            Error::Overflow(format!("q^n = {}^{n} does not fit a 64-bit index", field.q()))
        })?;
    }
    Ok(total)
}

pub fn monic_from_index(field: &Field, n: usize, mut index: u64) -> UniPoly {
    let q = field.q();
    let mut coeffs = vec![FieldElem::ZERO; n + 1];
    coeffs[n] = FieldElem::ONE;
    for c in coeffs.iter_mut().take(n) {
        *c = field.element(index % q).expect("digit below q");
        index /= q;
    }
    UniPoly::from_coeffs(field, coeffs)
}

/// Iterator over the monic polynomials with indices in a range.
#[derive(Clone)]
pub struct MonicIter {
    field: Field,
    n: usize,
    digits: Vec<u64>,
    next: u64,
    end: u64,
}

impl MonicIter {
    pub fn new(field: &Field, n: usize, range: Range<u64>) -> Result<Self> {
        let total = monic_count(field, n)?;
        if range.end > total || range.start > range.end {
            return Err(Error::InvalidArgument(format!(
                "index range {}..{} outside [0, {total})",
                range.start, range.end
            )));
        }
        let q = field.q();
        let mut digits = vec![0u64; n];
        let mut rest = range.start;
        for d in digits.iter_mut() {
            *d = rest % q;
            rest /= q;
        }
        Ok(Self {
            field: field.clone(),
            n,
            digits,
            next: range.start,
            end: range.end,
        })
    }

    /// Degree of the polynomials produced.
    pub fn degree(&self) -> usize {
        self.n
    }
}

impl Iterator for MonicIter {
    type Item = UniPoly;

    fn next(&mut self) -> Option<UniPoly> {
        if self.next >= self.end {
            return None;
        }
        let mut coeffs: Vec<FieldElem> = self
            .digits
            .iter()
            .map(|&d| self.field.element(d).expect("digit below q"))
            .collect();
        coeffs.push(FieldElem::ONE);
        let out = UniPoly::from_coeffs(&self.field, coeffs);
        self.next += 1;
        let q = self.field.q();
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for MonicIter {}

/// All `q^n` monic polynomials of degree `n` in index order.
pub fn enumerate_monic(field: &Field, n: usize) -> Result<MonicIter> {
    let total = monic_count(field, n)?;
    MonicIter::new(field, n, 0..total)
}

/// Number of monic irreducibles of degree `d`: `(1/d) sum_{e | d} mu(e) q^(d/e)`.
pub fn irreducible_count(q: u64, d: usize) -> Option<u64> {
    if d == 0 {
        return Some(0);
    }
    let mut total: i128 = 0;
    for e in 1..=d {
        if !d.is_multiple_of(e) {
            continue;
        }
        let mu = moebius(e);
        if mu == 0 {
            continue;
        }
        let pw = (q as i128).checked_pow((d / e) as u32)?;
        total += mu as i128 * pw;
    }
    u64::try_from(total / d as i128).ok()
}

fn moebius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// All monic irreducibles of degree `1..=max_degree`, by degree and then by
/// index order. Each monic candidate of degree `d` is kept when no
/// irreducible of degree at most `d/2` divides it.
pub fn irreducibles_up_to(field: &Field, max_degree: usize) -> Result<Vec<UniPoly>> {
    if max_degree == 0 {
        return Err(Error::InvalidArgument("maximum degree must be at least 1".into()));
    }
    let top = monic_count(field, max_degree)?;
    if top > IRREDUCIBLE_SIEVE_LIMIT {
        return Err(Error::Overflow(format!(
            "sieving degree {max_degree} over F_{} needs {top} candidates (limit {IRREDUCIBLE_SIEVE_LIMIT})",
            field.q()
        )));
    }
    let mut primes: Vec<UniPoly> = Vec::new();
    for d in 1..=max_degree {
        for cand in enumerate_monic(field, d)? {
            let mut irreducible = true;
            for p in &primes {
                let dp = p.degree().expect("nonzero");
                if 2 * dp > d {
                    break;
                }
                if p.divides(&cand)? {
                    irreducible = false;
                    break;
                }
            }
            if irreducible {
                primes.push(cand);
            }
        }
    }
    Ok(primes)
}
