//! Sparse multivariate polynomials over `F_q` in `a_0, ..., a_{n-1}`.
//!
//! Terms are kept sorted in descending graded-lex order (total degree
//! first, then exponents compared from `a_0` up) with no zero coefficients.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::bareiss::ExactRing;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// Most variables a [`Monomial`] can carry.
pub const MAX_VARS: usize = 7;
/// Default cap on the number of terms of any product.
pub const DEFAULT_TERM_CAP: usize = 10_000_000;

const FIELD_BITS: u32 = 16;
const FIELD_MASK: u128 = 0xFFFF;
const MAX_EXP: u32 = 0xFFFF;

/// Exponent vector packed into a `u128`: total degree in the top 16 bits,
/// then the exponent of `a_0`, `a_1`, ... in successive 16-bit fields. The
/// integer order of the packing is graded-lex.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    #[inline]
    fn shift(i: usize) -> u32 {
        112 - FIELD_BITS * (i as u32 + 1)
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                got: exps.len(),
                max: MAX_VARS,
            });
        }
        let total: u64 = exps.iter().map(|&e| e as u64).sum();
        if total > MAX_EXP as u64 {
            return Err(Error::ExponentOverflow);
        }
        let mut key = (total as u128) << 112;
        for (i, &e) in exps.iter().enumerate() {
            key |= (e as u128) << Self::shift(i);
        }
        Ok(Monomial(key))
    }

    /// The monomial `a_i`.
    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARS);
        Monomial((1u128 << 112) | (1u128 << Self::shift(i)))
    }

    #[inline]
    pub fn exponent(self, i: usize) -> u32 {
        ((self.0 >> Self::shift(i)) & FIELD_MASK) as u32
    }

    pub fn exponents(self, n_vars: usize) -> Vec<u32> {
        (0..n_vars).map(|i| self.exponent(i)).collect()
    }

    #[inline]
    pub fn total_degree(self) -> u32 {
        (self.0 >> 112) as u32
    }

    #[inline]
    fn checked_mul(self, other: Self) -> Result<Self> {
        if self.total_degree() + other.total_degree() > MAX_EXP {
            return Err(Error::ExponentOverflow);
        }
        // every field is bounded by the total, so no field carries
        Ok(Monomial(self.0 + other.0))
    }

    #[inline]
    fn divides(self, other: Self) -> bool {
        (0..MAX_VARS).all(|i| self.exponent(i) <= other.exponent(i))
    }

    #[inline]
    fn quotient(self, divisor: Self) -> Self {
        Monomial(self.0 - divisor.0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents(MAX_VARS))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    n_vars: usize,
    terms: Vec<(Monomial, FieldElem)>,
    term_cap: usize,
}

struct HeapEntry {
    mono: Monomial,
    i: usize,
    j: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mono
            .cmp(&other.mono)
            .then_with(|| other.i.cmp(&self.i))
    }
}

impl MultiPoly {
    pub fn zero(field: &Field, n_vars: usize) -> Result<Self> {
        if n_vars > MAX_VARS {
            return Err(Error::TooManyVariables {
                got: n_vars,
                max: MAX_VARS,
            });
        }
        Ok(Self {
            field: field.clone(),
            n_vars,
            terms: Vec::new(),
            term_cap: DEFAULT_TERM_CAP,
        })
    }

    pub fn constant(field: &Field, n_vars: usize, c: FieldElem) -> Result<Self> {
        let mut p = Self::zero(field, n_vars)?;
        if !c.is_zero() {
            p.terms.push((Monomial::ONE, c));
        }
        Ok(p)
    }

    pub fn one(field: &Field, n_vars: usize) -> Result<Self> {
        Self::constant(field, n_vars, FieldElem::ONE)
    }

    /// The variable `a_i`.
    pub fn var(field: &Field, n_vars: usize, i: usize) -> Result<Self> {
        if i >= n_vars {
            return Err(Error::InvalidArgument(format!("variable a_{i} out of range")));
        }
        let mut p = Self::zero(field, n_vars)?;
        p.terms.push((Monomial::var(i), FieldElem::ONE));
        Ok(p)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// monomials are summed.
    pub fn from_terms(
        field: &Field,
        n_vars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, FieldElem)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<Monomial, FieldElem> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != n_vars {
                return Err(Error::ArityMismatch);
            }
            let m = Monomial::from_exponents(&exps)?;
            let e = acc.entry(m).or_insert(FieldElem::ZERO);
            *e = field.add(*e, c);
        }
        let mut p = Self::zero(field, n_vars)?;
        p.terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Ok(p)
    }

    /// Replaces the cap on product sizes (propagated to results).
    pub fn with_term_cap(mut self, cap: usize) -> Self {
        self.term_cap = cap;
        self
    }

    pub fn term_cap(&self) -> usize {
        self.term_cap
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.total_degree())
    }

    /// The value when the polynomial is a constant (zero included).
    pub fn constant_value(&self) -> Option<FieldElem> {
        match self.terms.as_slice() {
            [] => Some(FieldElem::ZERO),
            [(m, c)] if *m == Monomial::ONE => Some(*c),
            _ => None,
        }
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coeff(&self, exps: &[u32]) -> Result<FieldElem> {
        if exps.len() != self.n_vars {
            return Err(Error::ArityMismatch);
        }
        let m = Monomial::from_exponents(exps)?;
        Ok(self
            .terms
            .binary_search_by(|(k, _)| m.cmp(k))
            .map_or(FieldElem::ZERO, |i| self.terms[i].1))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n_vars != other.n_vars {
            return Err(Error::ArityMismatch);
        }
        Ok(())
    }

    fn with_terms(&self, terms: Vec<(Monomial, FieldElem)>) -> Self {
        Self {
            field: self.field.clone(),
            n_vars: self.n_vars,
            terms,
            term_cap: self.term_cap,
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let f = &self.field;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let conv = |c: FieldElem| if negate_other { f.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, conv(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a[i].1, conv(b[j].1));
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, conv(c))));
        self.with_terms(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        self.with_terms(self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect())
    }

    pub fn scale(&self, c: FieldElem) -> Self {
        if c.is_zero() {
            return self.with_terms(Vec::new());
        }
        let f = &self.field;
        self.with_terms(self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect())
    }

    /// Product by heap merging of the rows `a_i * other`; fails when the
    /// result would exceed the term cap.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.with_terms(Vec::new()));
        }
        let (a, b) = if self.terms.len() <= other.terms.len() {
            (&self.terms, &other.terms)
        } else {
            (&other.terms, &self.terms)
        };
        let f = &self.field;
        let cap = self.term_cap.min(other.term_cap);
        let mut heap = BinaryHeap::with_capacity(a.len());
        for (i, &(m, _)) in a.iter().enumerate() {
            heap.push(HeapEntry {
                mono: m.checked_mul(b[0].0)?,
                i,
                j: 0,
            });
        }
        let mut out: Vec<(Monomial, FieldElem)> = Vec::new();
        while let Some(HeapEntry { mono, i, j }) = heap.pop() {
            let c = f.mul(a[i].1, b[j].1);
            match out.last_mut() {
                Some((m, acc)) if *m == mono => *acc = f.add(*acc, c),
                _ => {
                    if out.last().is_some_and(|(_, acc)| acc.is_zero()) {
                        out.pop();
                    }
                    if out.len() >= cap {
                        return Err(Error::TermCap { cap });
                    }
                    out.push((mono, c));
                }
            }
            if j + 1 < b.len() {
                heap.push(HeapEntry {
                    mono: a[i].0.checked_mul(b[j + 1].0)?,
                    i,
                    j: j + 1,
                });
            }
        }
        if out.last().is_some_and(|(_, acc)| acc.is_zero()) {
            out.pop();
        }
        let mut p = self.with_terms(out);
        p.term_cap = cap;
        Ok(p)
    }

    pub fn pow(&self, mut e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.field, self.n_vars)?.with_term_cap(self.term_cap);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check(divisor)?;
        let Some(&(lead_m, lead_c)) = divisor.terms.first() else {
            return Err(Error::DivisionByZero);
        };
        let f = &self.field;
        if let Some(c) = divisor.constant_value() {
            return Ok(self.scale(f.inv(c)?));
        }
        let lead_inv = f.inv(lead_c)?;
        let mut rem: BTreeMap<Monomial, FieldElem> = self.terms.iter().copied().collect();
        let mut quot: Vec<(Monomial, FieldElem)> = Vec::new();
        while let Some((&m, &c)) = rem.last_key_value() {
            if !lead_m.divides(m) {
                return Err(Error::InexactDivision);
            }
            let qm = m.quotient(lead_m);
            let qc = f.mul(c, lead_inv);
            quot.push((qm, qc));
            for &(dm, dc) in &divisor.terms {
                let key = qm.checked_mul(dm)?;
                let sub = f.mul(qc, dc);
                let entry = rem.entry(key).or_insert(FieldElem::ZERO);
                *entry = f.sub(*entry, sub);
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
        }
        Ok(self.with_terms(quot))
    }

    /// Value at a point of `F_q^n`.
    pub fn eval(&self, point: &[FieldElem]) -> Result<FieldElem> {
        if point.len() != self.n_vars {
            return Err(Error::ArityMismatch);
        }
        let f = &self.field;
        let mut acc = FieldElem::ZERO;
        for &(m, c) in &self.terms {
            let mut v = c;
            for (i, &x) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    v = f.mul(v, f.pow(x, e as u64));
                }
            }
            acc = f.add(acc, v);
        }
        Ok(acc)
    }

    /// Text form such as `a0^2 + 4*a1^2`.
    pub fn format(&self) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let f = &self.field;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let vars: Vec<String> = (0..self.n_vars)
                    .filter_map(|i| match m.exponent(i) {
                        0 => None,
                        1 => Some(format!("a{i}")),
                        e => Some(format!("a{i}^{e}")),
                    })
                    .collect();
                let coeff = crate::poly::format_coeff_factor(f, c);
                match (vars.is_empty(), c.is_one()) {
                    (true, _) => coeff,
                    (false, true) => vars.join("*"),
                    (false, false) => format!("{coeff}*{}", vars.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({} over {:?})", self.format(), self.field)
    }
}

impl ExactRing for MultiPoly {
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }

    fn ring_mul(&self, other: &Self) -> Result<Self> {
        self.mul(other)
    }

    fn ring_sub(&self, other: &Self) -> Result<Self> {
        self.sub(other)
    }

    fn ring_neg(&self) -> Self {
        self.neg()
    }

    fn ring_div_exact(&self, divisor: &Self) -> Result<Self> {
        self.exact_div(divisor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let f = f5();
        let a0 = MultiPoly::var(&f, 2, 0).unwrap();
        let a1 = MultiPoly::var(&f, 2, 1).unwrap();
        let p = a0.add(&a1).unwrap().mul(&a0.sub(&a1).unwrap()).unwrap();
        let expect =
            MultiPoly::from_terms(&f, 2, [(vec![2, 0], f.one()), (vec![0, 2], f.from_int(4))])
                .unwrap();
        assert_eq!(p, expect);
        assert_eq!(p.to_string(), "a0^2 + 4*a1^2");
    }

    #[test]
    fn specialization() {
        let f = f5();
        let p = MultiPoly::from_terms(&f, 2, [(vec![2, 1], f.one())]).unwrap();
        assert_eq!(p.eval(&[f.from_int(2), f.from_int(3)]).unwrap(), f.from_int(2));
        assert_eq!(p.eval(&[f.one()]), Err(Error::ArityMismatch));
    }

    #[test]
    fn zero_product() {
        let f = f5();
        let p = MultiPoly::var(&f, 3, 1).unwrap();
        let z = MultiPoly::zero(&f, 3).unwrap();
        let r = p.mul(&z).unwrap();
        assert!(r.is_zero() && r.terms().is_empty());
        assert_eq!(r.total_degree(), None);
    }

    #[test]
    fn arity_and_field_checks() {
        let f = f5();
        let a = MultiPoly::var(&f, 2, 0).unwrap();
        let b = MultiPoly::var(&f, 3, 0).unwrap();
        assert_eq!(a.add(&b), Err(Error::ArityMismatch));
        let c = MultiPoly::var(&Field::prime(3).unwrap(), 2, 0).unwrap();
        assert_eq!(a.mul(&c), Err(Error::FieldMismatch));
        assert!(matches!(MultiPoly::zero(&f, 8), Err(Error::TooManyVariables { .. })));
    }

    #[test]
    fn grlex_order() {
        let f = f5();
        let p = MultiPoly::from_terms(
            &f,
            3,
            [
                (vec![0, 0, 1], f.one()),
                (vec![1, 0, 0], f.one()),
                (vec![0, 2, 0], f.one()),
                (vec![1, 1, 0], f.one()),
                (vec![0, 0, 0], f.one()),
            ],
        )
        .unwrap();
        let exps: Vec<_> = p.terms().iter().map(|(m, _)| m.exponents(3)).collect();
        assert_eq!(
            exps,
            vec![vec![1, 1, 0], vec![0, 2, 0], vec![1, 0, 0], vec![0, 0, 1], vec![0, 0, 0]]
        );
    }

    #[test]
    fn exact_division_roundtrip() {
        let f = f5();
        let a0 = MultiPoly::var(&f, 2, 0).unwrap();
        let a1 = MultiPoly::var(&f, 2, 1).unwrap();
        let one = MultiPoly::one(&f, 2).unwrap();
        let p = a0.add(&a1).unwrap().add(&one).unwrap().pow(3).unwrap();
        let q = a0.mul(&a1).unwrap().sub(&one).unwrap();
        let prod = p.mul(&q).unwrap();
        assert_eq!(prod.exact_div(&q).unwrap(), p);
        assert_eq!(prod.exact_div(&p).unwrap(), q);
        assert_eq!(p.exact_div(&q), Err(Error::InexactDivision));
    }

    #[test]
    fn term_cap_is_enforced() {
        let f = f5();
        let a0 = MultiPoly::var(&f, 2, 0).unwrap();
        let a1 = MultiPoly::var(&f, 2, 1).unwrap();
        let s = a0.add(&a1).unwrap().add(&MultiPoly::one(&f, 2).unwrap()).unwrap();
        let capped = s.with_term_cap(10);
        assert_eq!(capped.pow(4), Err(Error::TermCap { cap: 10 }));
    }
}
