//! The polynomial ring `F_q[t]`.

mod enumerate;
mod residue;
mod resultant;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

pub use enumerate::{
    enumerate_monic, irreducible_count, irreducibles_up_to, monic_count, monic_from_index,
    MonicIter,
};
pub use residue::{enumerate_residues, Residue};
pub(crate) use resultant::disc_sign_is_negative;

/// Dense univariate polynomial over `F_q`; `coeffs[i]` is the coefficient of
/// `t^i`. The coefficient vector never ends in zero, so the zero polynomial
/// has no coefficients and [`UniPoly::degree`] returns `None` for it.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl UniPoly {
    pub fn zero(field: &Field) -> Self {
        Self {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, FieldElem::ONE)
    }

    pub fn constant(field: &Field, c: FieldElem) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// `c * t^i`.
    pub fn monomial(field: &Field, c: FieldElem, i: usize) -> Self {
        let mut coeffs = vec![FieldElem::ZERO; i + 1];
        coeffs[i] = c;
        Self::from_coeffs(field, coeffs)
    }

    /// The variable `t`.
    pub fn var(field: &Field) -> Self {
        Self::monomial(field, FieldElem::ONE, 1)
    }

    pub fn from_coeffs(field: &Field, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    /// Builds a polynomial from integer coefficients (constant term first),
    /// each reduced into the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }

    /// Coefficient of `t^i` (zero past the degree).
    #[inline]
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    /// `None` encodes the degree of the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for nonzero constants.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn assert_same_field(&self, other: &Self) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Self::from_coeffs(f, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Self::from_coeffs(f, coeffs)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::from_coeffs(f, out)
    }

    pub fn scale(&self, c: FieldElem) -> Self {
        let f = &self.field;
        Self::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FieldElem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient; the zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.lc()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.same_field(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lc_inv = f.inv(divisor.lc())?;
        let mut rem = self.coeffs.clone();
        let Some(dn) = self.degree() else {
            return Ok((Self::zero(f), Self::zero(f)));
        };
        if dn < dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![FieldElem::ZERO; dn - dd + 1];
        for top in (dd..=dn).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let qc = f.mul(c, lc_inv);
            quot[top - dd] = qc;
            for (j, &dj) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + j;
                rem[idx] = f.sub(rem[idx], f.mul(qc, dj));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(f, quot), Self::from_coeffs(f, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Whether `self` divides `other`; the zero polynomial divides only zero.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        if self.is_zero() {
            return Ok(other.is_zero());
        }
        Ok(other.rem(self)?.is_zero())
    }

    /// Quotient when the division is exact.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divrem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Formal derivative; `i * c_i` is computed with `i` reduced mod `p`.
    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_u64(i as u64), c))
            .collect();
        Self::from_coeffs(f, coeffs)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// True iff no square of a nonconstant polynomial divides `self`.
    ///
    /// A nonconstant polynomial with vanishing derivative is a `p`-th power
    /// over the perfect field `F_q`, hence not square-free.
    pub fn is_squarefree(&self) -> Result<bool> {
        let Some(d) = self.degree() else {
            return Err(Error::ZeroPolynomial);
        };
        if d == 0 {
            return Ok(true);
        }
        let df = self.derivative();
        if df.is_zero() {
            return Ok(false);
        }
        Ok(self.gcd(&df)?.degree() == Some(0))
    }

    /// Text form in the variable `var`, descending powers, e.g. `t^2 + 2*t + 1`.
    pub fn format_in(&self, var: &str) -> String {
        format_terms(&self.field, &self.coeffs, var, " + ")
    }

    /// Like [`UniPoly::format_in`] without spaces, e.g. `t^2+2*t+1`.
    pub fn format_compact(&self, var: &str) -> String {
        format_terms(&self.field, &self.coeffs, var, "+")
    }
}

pub(crate) fn format_coeff_factor(field: &Field, c: FieldElem) -> String {
    let s = field.format_elem(c);
    if field.is_compound(c) {
        alloc::format!("({s})")
    } else {
        s
    }
}

pub(crate) fn format_power(var: &str, i: usize) -> String {
    match i {
        0 => String::new(),
        1 => String::from(var),
        _ => alloc::format!("{var}^{i}"),
    }
}

fn format_terms(field: &Field, coeffs: &[FieldElem], var: &str, sep: &str) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = format_power(var, i);
        let term = if i == 0 {
            format_coeff_factor(field, c)
        } else if c.is_one() {
            mono
        } else {
            alloc::format!("{}*{mono}", format_coeff_factor(field, c))
        };
        parts.push(term);
    }
    if parts.is_empty() {
        String::from("0")
    } else {
        parts.join(sep)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("t"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({} over {:?})", self.format_in("t"), self.field)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: &UniPoly) -> UniPoly {
                UniPoly::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn fld(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn poly(field: &Field, c: &[i64]) -> UniPoly {
        UniPoly::from_ints(field, c)
    }

    #[test]
    fn product_in_f3() {
        let f = fld(3);
        let a = poly(&f, &[1, 1]);
        let b = poly(&f, &[2, 1]);
        assert_eq!(&a * &b, poly(&f, &[2, 0, 1]));
    }

    #[test]
    fn divrem_in_f2() {
        let f = fld(2);
        let (q, r) = poly(&f, &[0, 1, 0, 1]).divrem(&poly(&f, &[1, 1])).unwrap();
        assert_eq!(q, poly(&f, &[0, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(
            poly(&f, &[1]).divrem(&UniPoly::zero(&f)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn identities() {
        let f = fld(7);
        let a = poly(&f, &[3, 0, 5, 1]);
        assert_eq!(&a * &UniPoly::one(&f), a);
        assert_eq!(&a + &UniPoly::zero(&f), a);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = poly(&fld(3), &[1, 1]);
        let b = poly(&fld(5), &[1, 1]);
        assert_eq!(a.gcd(&b), Err(Error::FieldMismatch));
        assert_eq!(a.divrem(&b).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn derivatives() {
        let f3 = fld(3);
        assert_eq!(poly(&f3, &[0, 1, 0, 1]).derivative(), poly(&f3, &[1]));
        let f2 = fld(2);
        assert!(poly(&f2, &[1, 0, 1]).derivative().is_zero());
        let f5 = fld(5);
        assert_eq!(
            poly(&f5, &[0, 2, 0, 0, 1]).derivative(),
            poly(&f5, &[2, 0, 0, 4])
        );
        assert!(poly(&f5, &[4]).derivative().is_zero());
    }

    #[test]
    fn gcds() {
        let f2 = fld(2);
        assert_eq!(
            poly(&f2, &[1, 0, 1]).gcd(&poly(&f2, &[1, 1])).unwrap(),
            poly(&f2, &[1, 1])
        );
        let f3 = fld(3);
        assert_eq!(
            poly(&f3, &[2, 0, 1]).gcd(&poly(&f3, &[1, 1])).unwrap(),
            poly(&f3, &[1, 1])
        );
        let a = poly(&f3, &[2, 0, 2]);
        assert!(a.gcd(&UniPoly::one(&f3)).unwrap().is_one());
        assert_eq!(a.gcd(&UniPoly::zero(&f3)).unwrap(), a.monic());
        assert_eq!(
            UniPoly::zero(&f3).gcd(&UniPoly::zero(&f3)),
            Err(Error::BothZero)
        );
    }

    #[test]
    fn squarefree_examples() {
        let f2 = fld(2);
        assert!(!poly(&f2, &[1, 0, 1]).is_squarefree().unwrap());
        assert!(poly(&f2, &[0, 1, 1]).is_squarefree().unwrap());
        let f3 = fld(3);
        assert!(!poly(&f3, &[0, 0, 0, 1]).is_squarefree().unwrap());
        let f5 = fld(5);
        assert!(poly(&f5, &[1, 1, 1]).is_squarefree().unwrap());
        assert!(poly(&f5, &[3]).is_squarefree().unwrap());
        assert_eq!(
            UniPoly::zero(&f5).is_squarefree(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn squarefree_over_extension_field() {
        // (t + u)^2 over F_4 is not square-free; t^2 + t + u is.
        let f = Field::new(2, 2).unwrap();
        let u = f.generator().unwrap();
        let lin = UniPoly::from_coeffs(&f, vec![u, FieldElem::ONE]);
        assert!(!lin.pow(2).is_squarefree().unwrap());
        let g = UniPoly::from_coeffs(&f, vec![u, FieldElem::ONE, FieldElem::ONE]);
        assert!(g.is_squarefree().unwrap());
    }

    #[test]
    fn formatting() {
        let f = fld(5);
        assert_eq!(poly(&f, &[1, 2, 0, 1]).to_string(), "t^3 + 2*t + 1");
        assert_eq!(poly(&f, &[1, 1]).format_compact("t"), "t+1");
        assert_eq!(UniPoly::zero(&f).to_string(), "0");
        let f4 = Field::new(2, 2).unwrap();
        let u = f4.generator().unwrap();
        let c = f4.add(u, FieldElem::ONE);
        let g = UniPoly::from_coeffs(&f4, vec![c, c]);
        assert_eq!(g.to_string(), "(u+1)*t + (u+1)");
    }
}
