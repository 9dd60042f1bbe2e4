use alloc::vec::Vec;

use super::UniPoly;
use crate::bareiss::{det_field, sylvester, ExactRing};
use crate::error::{Error, Result};
use crate::field::FieldElem;

impl ExactRing for UniPoly {
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }

    fn ring_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.mul(other))
    }

    fn ring_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.sub(other))
    }

    fn ring_neg(&self) -> Self {
        self.neg()
    }

    fn ring_div_exact(&self, divisor: &Self) -> Result<Self> {
        self.exact_div(divisor)
    }
}

/// `(-1)^(m(m-1)/2)`, the sign in the discriminant of a degree-`m` polynomial.
pub(crate) fn disc_sign_is_negative(m: usize) -> bool {
    (m * (m.saturating_sub(1)) / 2) % 2 == 1
}

impl UniPoly {
    /// Resultant as the determinant of the Sylvester matrix of `self` and
    /// `other` at their actual degrees.
    pub fn resultant(&self, other: &Self) -> Result<FieldElem> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.sylvester_resultant(&self.coeffs, &other.coeffs))
    }

    fn sylvester_resultant(&self, f: &[FieldElem], g: &[FieldElem]) -> FieldElem {
        let m = sylvester(f, g, &FieldElem::ZERO);
        det_field(&self.field, m)
    }

    /// Resultant through the Euclidean remainder sequence. Independent of the
    /// Sylvester route and much faster for large degrees.
    pub fn resultant_euclid(&self, other: &Self) -> Result<FieldElem> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let field = &self.field;
        let mut acc = FieldElem::ONE;
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            let m = a.degree().expect("nonzero");
            let k = b.degree().expect("nonzero");
            if m == 0 {
                return Ok(field.mul(acc, field.pow(a.lc(), k as u64)));
            }
            if k == 0 {
                return Ok(field.mul(acc, field.pow(b.lc(), m as u64)));
            }
            let r = a.rem(&b)?;
            let Some(s) = r.degree() else {
                return Ok(FieldElem::ZERO);
            };
            if (m * k) % 2 == 1 {
                acc = field.neg(acc);
            }
            acc = field.mul(acc, field.pow(b.lc(), (m - s) as u64));
            a = b;
            b = r;
        }
    }

    /// Discriminant `(-1)^(m(m-1)/2) Res(f, f') / lc(f)` of a polynomial of
    /// degree `m >= 1`, where `f'` enters the Sylvester matrix at its formal
    /// degree `m - 1` (so a derivative that drops degree in characteristic
    /// `p` still gives the classical discriminant). Zero iff `f` has a
    /// repeated root in the algebraic closure.
    pub fn discriminant(&self) -> Result<FieldElem> {
        let m = match self.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::ConstantPolynomial),
            Some(m) => m,
        };
        let df = self.derivative();
        if df.is_zero() {
            return Ok(FieldElem::ZERO);
        }
        let field = &self.field;
        let mut padded: Vec<FieldElem> = df.coeffs.clone();
        padded.resize(m, FieldElem::ZERO);
        let res = self.sylvester_resultant(&self.coeffs, &padded);
        let mut d = field.div(res, self.lc())?;
        if disc_sign_is_negative(m) {
            d = field.neg(d);
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn resultant_examples() {
        let f3 = Field::prime(3).unwrap();
        let a = UniPoly::from_ints(&f3, &[1, 0, 1]);
        let b = UniPoly::from_ints(&f3, &[1, 1]);
        assert_eq!(a.resultant(&b).unwrap(), f3.from_int(2));
        assert_eq!(a.resultant_euclid(&b).unwrap(), f3.from_int(2));

        // Res(t - 3, g) = g(3)
        let f7 = Field::prime(7).unwrap();
        let lin = UniPoly::from_ints(&f7, &[-3, 1]);
        let g = UniPoly::from_ints(&f7, &[1, 5, 0, 2]);
        assert_eq!(lin.resultant(&g).unwrap(), g.eval(f7.from_int(3)));

        // shared root 1
        let h = UniPoly::from_ints(&f7, &[-1, 1]).mul(&UniPoly::from_ints(&f7, &[2, 1]));
        let k = UniPoly::from_ints(&f7, &[-1, 1]).mul(&UniPoly::from_ints(&f7, &[3, 0, 1]));
        assert!(h.resultant(&k).unwrap().is_zero());
        assert_eq!(
            h.resultant(&UniPoly::zero(&f7)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn discriminant_examples() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(
            UniPoly::from_ints(&f5, &[1, 1, 1]).discriminant().unwrap(),
            f5.from_int(2)
        );
        let f3 = Field::prime(3).unwrap();
        assert!(UniPoly::from_ints(&f3, &[1, 2, 1])
            .discriminant()
            .unwrap()
            .is_zero());
        let f2 = Field::prime(2).unwrap();
        assert!(UniPoly::from_ints(&f2, &[1, 0, 1])
            .discriminant()
            .unwrap()
            .is_zero());
        assert_eq!(
            UniPoly::from_ints(&f2, &[1]).discriminant(),
            Err(Error::ConstantPolynomial)
        );
        // linear polynomials have discriminant 1
        assert!(UniPoly::from_ints(&f5, &[2, 3]).discriminant().unwrap().is_one());
    }

    #[test]
    fn cubic_discriminant_matches_formula() {
        // disc(t^3 + p t + q) = -4p^3 - 27q^2
        let f = Field::prime(11).unwrap();
        for p in 0..11i64 {
            for q in 0..11i64 {
                let poly = UniPoly::from_ints(&f, &[q, p, 0, 1]);
                let expect = f.from_int(-4 * p * p * p - 27 * q * q);
                assert_eq!(poly.discriminant().unwrap(), expect, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn degree_dropping_derivative_in_char_3() {
        // t^3 + t^2 + 1 over F_3: f' = 2t has formal degree 2 with zero lead.
        // Classical discriminant of a t^3 + b t^2 + c t + d:
        // b^2c^2 - 4ac^3 - 4b^3d - 27a^2d^2 + 18abcd.
        let f = Field::prime(3).unwrap();
        let poly = UniPoly::from_ints(&f, &[1, 0, 1, 1]);
        let (a, b, c, d) = (1i64, 1i64, 0i64, 1i64);
        let expect = f.from_int(
            b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d
                + 18 * a * b * c * d,
        );
        assert_eq!(poly.discriminant().unwrap(), expect);
    }
}
