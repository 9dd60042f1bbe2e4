//! Finite fields `F_q = F_p[u]/(m(u))`.
//!
//! Elements are encoded as integers in `[0, q)`: the residue sequence
//! `(c_0, ..., c_{k-1})` of `c_0 + c_1 u + ... + c_{k-1} u^{k-1}` maps to
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. The encoding order is also the
//! enumeration order, so element `0` comes first and `1` second.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest accepted characteristic (exclusive).
pub const MAX_CHARACTERISTIC: u64 = 1 << 20;
/// Largest accepted field order (inclusive).
pub const MAX_ORDER: u64 = 1 << 32;
const MAX_DEGREE: usize = 32;

/// An element of some [`Field`], stored as its integer encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn code(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

struct FieldData {
    p: u64,
    k: usize,
    q: u64,
    /// Monic modulus, coefficients from the constant term up (length `k + 1`).
    modulus: Vec<u64>,
}

/// The defining data of `F_q`. Cheap to clone; clones share storage.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())?;
        if self.k() > 1 {
            write!(f, " = F_{}[u]/({})", self.p(), format_fp_poly(&self.0.modulus))?;
        }
        Ok(())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Builds `F_{p^k}` with the lexicographically-first monic irreducible
    /// modulus of degree `k`, comparing coefficient sequences from the constant
    /// term up.
    pub fn new(p: u64, k: usize) -> Result<Self> {
        check_order(p, k)?;
        let modulus = first_irreducible(p, k);
        Ok(Self::from_parts(p, k, modulus))
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    /// Builds `F_p[u]/(m(u))` from an explicit modulus (constant term first).
    /// The modulus must be monic and irreducible over `F_p`.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Self> {
        let mut m: Vec<u64> = modulus.to_vec();
        while m.last() == Some(&0) {
            m.pop();
        }
        if m.len() < 2 {
            return Err(Error::InvalidModulus("degree must be at least 1".into()));
        }
        let k = m.len() - 1;
        check_order(p, k)?;
        if m.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus("coefficients must lie in [0, p)".into()));
        }
        if m[k] != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if !fp::is_irreducible(&m, p) {
            return Err(Error::InvalidModulus(format!(
                "{} is reducible over F_{p}",
                format_fp_poly(&m)
            )));
        }
        Ok(Self::from_parts(p, k, m))
    }

    fn from_parts(p: u64, k: usize, modulus: Vec<u64>) -> Self {
        Field(Arc::new(FieldData {
            p,
            k,
            q: p.pow(k as u32),
            modulus,
        }))
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.0.p
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.0.k
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// The modulus `m(u)`, constant term first, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    #[inline]
    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    #[inline]
    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// The class of `u`; `None` for prime fields.
    pub fn generator(&self) -> Option<FieldElem> {
        (self.k() > 1).then_some(FieldElem(self.p()))
    }

    /// Element at position `index` of the enumeration order.
    pub fn element(&self, index: u64) -> Option<FieldElem> {
        (index < self.q()).then_some(FieldElem(index))
    }

    /// All `q` elements in enumeration order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (0..self.q()).map(FieldElem)
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        let p = self.p() as i64;
        FieldElem(n.rem_euclid(p) as u64)
    }

    pub fn from_u64(&self, n: u64) -> FieldElem {
        FieldElem(n % self.p())
    }

    /// Element with the given residues (constant term first). Missing
    /// trailing residues are zero.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.k() {
            return Err(Error::InvalidArgument(format!(
                "expected at most {} residues, got {}",
                self.k(),
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p()) {
            return Err(Error::InvalidArgument(format!("residue {c} is not reduced mod {}", self.p())));
        }
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            code = code * self.p() + c;
        }
        Ok(FieldElem(code))
    }

    /// The `k` residues of `a`, constant term first.
    pub fn coeffs(&self, a: FieldElem) -> Vec<u64> {
        let d = self.digits(a);
        d[..self.k()].to_vec()
    }

    #[inline]
    fn digits(&self, a: FieldElem) -> [u64; MAX_DEGREE] {
        let mut out = [0u64; MAX_DEGREE];
        let p = self.p();
        let mut c = a.0;
        for slot in out.iter_mut().take(self.k()) {
            *slot = c % p;
            c /= p;
        }
        out
    }

    #[inline]
    fn encode(&self, digits: &[u64]) -> FieldElem {
        let p = self.p();
        let mut code = 0u64;
        for &c in digits[..self.k()].iter().rev() {
            code = code * p + c;
        }
        FieldElem(code)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p();
        if self.k() == 1 {
            let s = a.0 + b.0;
            return FieldElem(if s >= p { s - p } else { s });
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut out = [0u64; MAX_DEGREE];
        for i in 0..self.k() {
            let s = da[i] + db[i];
            out[i] = if s >= p { s - p } else { s };
        }
        self.encode(&out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let p = self.p();
        if self.k() == 1 {
            return FieldElem(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let da = self.digits(a);
        let mut out = [0u64; MAX_DEGREE];
        for i in 0..self.k() {
            out[i] = if da[i] == 0 { 0 } else { p - da[i] };
        }
        self.encode(&out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p();
        if self.k() == 1 {
            return FieldElem(a.0 * b.0 % p);
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let k = self.k();
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        let m = &self.0.modulus;
        for top in (k..2 * k - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for j in 0..k {
                let idx = top - k + j;
                prod[idx] = (prod[idx] + (p - c) * m[j]) % p;
            }
        }
        self.encode(&prod[..k])
    }

    /// Square-and-multiply exponentiation; `pow(a, 0) = 1`.
    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via `a^(q-2)`.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q() - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// The Frobenius map `a -> a^p`.
    pub fn frobenius(&self, a: FieldElem) -> FieldElem {
        self.pow(a, self.p())
    }

    /// Whether `a` needs parentheses when printed as a coefficient.
    pub fn is_compound(&self, a: FieldElem) -> bool {
        self.k() > 1 && self.digits(a)[..self.k()].iter().filter(|&&c| c != 0).count() > 1
    }

    /// Text form: decimal for prime fields, a polynomial in `u` otherwise
    /// (for example `u+1` or `2*u^2+1`).
    pub fn format_elem(&self, a: FieldElem) -> String {
        if self.k() == 1 {
            return format!("{}", a.0);
        }
        let d = self.digits(a);
        format_fp_poly_in(&d[..self.k()], "u")
    }
}

fn check_order(p: u64, k: usize) -> Result<()> {
    if p >= MAX_CHARACTERISTIC {
        return Err(Error::PrimeTooLarge(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidField("extension degree must be at least 1".into()));
    }
    let mut q: u64 = 1;
    for _ in 0..k {
        q = q.saturating_mul(p);
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge { p, k });
        }
    }
    Ok(())
}

fn first_irreducible(p: u64, k: usize) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1];
    }
    // Candidate index i encodes (c_0, ..., c_{k-1}) with c_0 most significant.
    let total = p.pow(k as u32);
    let mut digits = vec![0u64; k + 1];
    digits[k] = 1;
    for i in 0..total {
        let mut rest = i;
        for slot in (0..k).rev() {
            digits[slot] = rest % p;
            rest /= p;
        }
        if digits[0] == 0 {
            continue;
        }
        if fp::is_irreducible(&digits, p) {
            return digits;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

fn format_fp_poly(c: &[u64]) -> String {
    format_fp_poly_in(c, "u")
}

fn format_fp_poly_in(c: &[u64], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, &ci) in c.iter().enumerate().rev() {
        if ci == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => String::from(var),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (ci, i) {
            (_, 0) => format!("{ci}"),
            (1, _) => mono,
            _ => format!("{ci}*{mono}"),
        });
    }
    if parts.is_empty() {
        String::from("0")
    } else {
        parts.join("+")
    }
}

/// Dense polynomials over `F_p` (coefficients constant term first), used
/// only to select and validate field moduli.
mod fp {
    use alloc::vec;
    use alloc::vec::Vec;

    fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv(a: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lc_inv = inv(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * lc_inv % p;
            for j in 0..=dm {
                let idx = top - dm + j;
                r[idx] = (r[idx] + (p - c) * m[j]) % p;
            }
            trim(&mut r);
        }
        r
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        rem(&prod, m, p)
    }

    fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = rem(&[1], m, p);
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        acc
    }

    fn gcd_degree(a: &[u64], b: &[u64], p: u64) -> Option<usize> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a.len().checked_sub(1)
    }

    /// `x^(p^j) mod m` for `j = e`.
    fn frobenius_power(m: &[u64], e: usize, p: u64) -> Vec<u64> {
        let mut h = rem(&[0, 1], m, p);
        for _ in 0..e {
            h = powmod(&h, p, m, p);
        }
        h
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *slot = (x + p - y) % p;
        }
        trim(&mut out);
        out
    }

    /// Rabin's irreducibility test for a monic `m` of degree `k >= 1`.
    pub(super) fn is_irreducible(m: &[u64], p: u64) -> bool {
        let k = m.len() - 1;
        if k == 1 {
            return true;
        }
        let x = rem(&[0, 1], m, p);
        if frobenius_power(m, k, p) != x {
            return false;
        }
        let mut n = k;
        let mut r = 2;
        while n > 1 {
            if n.is_multiple_of(r) {
                while n.is_multiple_of(r) {
                    n /= r;
                }
                let g = sub(&frobenius_power(m, k / r, p), &x, p);
                if gcd_degree(m, &g, p) != Some(0) {
                    return false;
                }
            }
            r += 1;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_modulus_is_u() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.q(), 3);
    }

    #[test]
    fn gf4_modulus() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn composite_rejected() {
        assert_eq!(Field::new(4, 1), Err(Error::NotPrime(4)));
        assert_eq!(Field::new(1, 1), Err(Error::NotPrime(1)));
        assert!(matches!(Field::new(1 << 20, 1), Err(Error::PrimeTooLarge(_))));
        assert!(matches!(Field::new(2, 0), Err(Error::InvalidField(_))));
        assert!(matches!(Field::new(2, 40), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn inverse_in_f5() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.inv(f.from_int(2)).unwrap(), f.from_int(3));
        assert_eq!(f.inv(f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gf4_u_times_u_plus_one() {
        let f = Field::new(2, 2).unwrap();
        let u = f.generator().unwrap();
        let u1 = f.add(u, f.one());
        assert_eq!(f.mul(u, u1), f.one());
        assert_eq!(f.mul(u, u), u1);
        assert_eq!(f.format_elem(u1), "u+1");
    }

    #[test]
    fn enumeration_order() {
        let f2 = Field::prime(2).unwrap();
        let v: Vec<u64> = f2.elements().map(|e| e.code()).collect();
        assert_eq!(v, [0, 1]);
        let f4 = Field::new(2, 2).unwrap();
        let els: Vec<_> = f4.elements().collect();
        assert_eq!(els.len(), 4);
        for &a in &els {
            for &b in &els {
                assert!(els.contains(&f4.mul(a, b)));
                assert!(els.contains(&f4.add(a, b)));
            }
        }
    }

    #[test]
    fn explicit_modulus_validation() {
        assert!(Field::with_modulus(2, &[1, 0, 1]).is_err());
        assert!(Field::with_modulus(2, &[1, 1, 0, 1]).is_ok());
        assert!(Field::with_modulus(3, &[1, 0, 2]).is_err());
    }

    #[test]
    fn first_irreducibles_match_brute_force() {
        // Brute-force check: no monic polynomial of degree k over F_p that
        // precedes the chosen modulus in the documented order is irreducible,
        // using trial division by every monic polynomial of lower degree.
        for &(p, k) in &[(2u64, 3usize), (2, 4), (3, 2), (3, 3), (5, 2)] {
            let f = Field::new(p, k).unwrap();
            assert!(brute_irreducible(f.modulus(), p));
        }
    }

    fn brute_irreducible(m: &[u64], p: u64) -> bool {
        let k = m.len() - 1;
        for d in 1..=k / 2 {
            for idx in 0..p.pow(d as u32) {
                let mut g = vec![0u64; d + 1];
                g[d] = 1;
                let mut rest = idx;
                for slot in g.iter_mut().take(d) {
                    *slot = rest % p;
                    rest /= p;
                }
                let r = fp_rem_for_test(m, &g, p);
                if r.iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }

    fn fp_rem_for_test(a: &[u64], g: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        let dg = g.len() - 1;
        while r.len() > dg {
            let top = r.len() - 1;
            let c = r[top];
            for j in 0..=dg {
                r[top - dg + j] = (r[top - dg + j] + (p - c) * g[j]) % p;
            }
            r.pop();
        }
        r
    }
}
