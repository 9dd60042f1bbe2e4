//! Polynomials `f(x, t) = gamma_0(t) + gamma_1(t) x + ... + gamma_l(t) x^l`
//! in `F_q[t][x]`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bareiss::{bareiss_det, sylvester};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::poly::{format_coeff_factor, format_power, UniPoly};

/// Largest `q` accepted by [`BiPoly::no_squarefree_example`] (its degree in
/// `x` is `q^2`).
pub const COUNTEREXAMPLE_MAX_Q: u64 = 32;

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    gammas: Vec<UniPoly>,
}

/// `f = content * primitive` with `content` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveDecomposition {
    pub content: UniPoly,
    pub primitive: BiPoly,
    pub content_squarefree: bool,
}

impl BiPoly {
    /// Trailing zero coefficients are dropped; an empty sequence is zero.
    pub fn from_gammas(field: &Field, mut gammas: Vec<UniPoly>) -> Self {
        while gammas.last().is_some_and(|g| g.is_zero()) {
            gammas.pop();
        }
        for g in &gammas {
            assert!(g.field() == field, "coefficient over a different field");
        }
        Self {
            field: field.clone(),
            gammas,
        }
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_gammas(field, Vec::new())
    }

    /// The polynomial `x`.
    pub fn x(field: &Field) -> Self {
        Self::from_gammas(field, vec![UniPoly::zero(field), UniPoly::one(field)])
    }

    /// `c(t)` viewed as a polynomial of degree 0 in `x`.
    pub fn from_unipoly(c: &UniPoly) -> Self {
        Self::from_gammas(c.field(), vec![c.clone()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn gammas(&self) -> &[UniPoly] {
        &self.gammas
    }

    /// Coefficient of `x^j`.
    pub fn gamma(&self, j: usize) -> UniPoly {
        self.gammas
            .get(j)
            .cloned()
            .unwrap_or_else(|| UniPoly::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.gammas.is_empty()
    }

    /// Degree in `x`.
    pub fn deg_x(&self) -> Result<usize> {
        self.gammas.len().checked_sub(1).ok_or(Error::ZeroPolynomial)
    }

    /// `Ht(f)`, the largest `t`-degree among the coefficients.
    pub fn height(&self) -> Result<usize> {
        self.gammas
            .iter()
            .filter_map(UniPoly::degree)
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.gammas.len().max(other.gammas.len());
        Self::from_gammas(&self.field, (0..n).map(|j| self.gamma(j).add(&other.gamma(j))).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![UniPoly::zero(&self.field); self.gammas.len() + other.gammas.len() - 1];
        for (i, a) in self.gammas.iter().enumerate() {
            for (j, b) in other.gammas.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_gammas(&self.field, out)
    }

    /// Multiplies every coefficient by `c(t)`.
    pub fn scale(&self, c: &UniPoly) -> Self {
        Self::from_gammas(&self.field, self.gammas.iter().map(|g| g.mul(c)).collect())
    }

    /// Monic gcd of the coefficients.
    pub fn content(&self) -> Result<UniPoly> {
        let mut acc: Option<UniPoly> = None;
        for g in self.gammas.iter().filter(|g| !g.is_zero()) {
            acc = Some(match acc {
                None => g.monic(),
                Some(a) => a.gcd(g)?,
            });
            if acc.as_ref().is_some_and(UniPoly::is_one) {
                break;
            }
        }
        acc.ok_or(Error::ZeroPolynomial)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.content()?.is_one())
    }

    pub fn primitive_decompose(&self) -> Result<PrimitiveDecomposition> {
        let content = self.content()?;
        let gammas = self
            .gammas
            .iter()
            .map(|g| g.exact_div(&content))
            .collect::<Result<Vec<_>>>()?;
        let content_squarefree = content.is_squarefree()?;
        Ok(PrimitiveDecomposition {
            primitive: Self::from_gammas(&self.field, gammas),
            content,
            content_squarefree,
        })
    }

    /// `df/dx`.
    pub fn derivative_x(&self) -> Self {
        let f = &self.field;
        let gammas = self
            .gammas
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, g)| g.scale(f.from_u64(j as u64)))
            .collect();
        Self::from_gammas(f, gammas)
    }

    /// `Delta_f(t)`, the discriminant in `x` over `F_q[t]`, with the same
    /// sign and leading-coefficient convention as [`UniPoly::discriminant`].
    /// Zero when `df/dx` vanishes identically.
    pub fn disc_x(&self) -> Result<UniPoly> {
        let l = self.deg_x()?;
        if l == 0 {
            return Err(Error::ConstantInX);
        }
        let zero = UniPoly::zero(&self.field);
        let dfx = self.derivative_x();
        if dfx.is_zero() {
            return Ok(zero);
        }
        let mut padded = dfx.gammas.clone();
        padded.resize(l, zero.clone());
        let matrix = sylvester(&self.gammas, &padded, &zero);
        let res = bareiss_det(matrix, UniPoly::one(&self.field))?;
        let mut d = res.exact_div(&self.gammas[l])?;
        if crate::poly::disc_sign_is_negative(l) {
            d = d.neg();
        }
        Ok(d)
    }

    /// Separable over `F_q(t)` iff `Delta_f != 0`.
    pub fn is_separable(&self) -> Result<bool> {
        Ok(!self.disc_x()?.is_zero())
    }

    /// `f(a(t), t)` by Horner's rule in `x`.
    pub fn evaluate(&self, a: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(&self.field);
        for g in self.gammas.iter().rev() {
            acc = acc.mul(a).add(g);
        }
        acc
    }

    /// `f(x, rho)` as a polynomial in `x`.
    pub fn specialize_t(&self, rho: FieldElem) -> UniPoly {
        UniPoly::from_coeffs(&self.field, self.gammas.iter().map(|g| g.eval(rho)).collect())
    }

    /// `prod_{alpha, beta in F_q} (x - alpha t - beta)`: primitive and
    /// separable, yet `(t^q - t)^2` divides every value `f(a)`.
    pub fn no_squarefree_example(field: &Field) -> Result<Self> {
        if field.q() > COUNTEREXAMPLE_MAX_Q {
            return Err(Error::Overflow(format!(
                "the family over F_{} has degree {} in x (q <= {COUNTEREXAMPLE_MAX_Q} supported)",
                field.q(),
                field.q() * field.q()
            )));
        }
        let mut acc = Self::from_unipoly(&UniPoly::one(field));
        for alpha in field.elements() {
            for beta in field.elements() {
                let root = UniPoly::from_coeffs(field, vec![beta, alpha]);
                let factor = Self::from_gammas(field, vec![root.neg(), UniPoly::one(field)]);
                acc = acc.mul(&factor);
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for BiPoly {
    /// Canonical form: descending powers of `x`, each coefficient in
    /// descending powers of `t`, e.g. `x^2 + (t+1)*x + t^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        for (j, g) in self.gammas.iter().enumerate().rev() {
            if g.is_zero() {
                continue;
            }
            if j == 0 {
                parts.push(g.format_in("t"));
                continue;
            }
            let xpow = format_power("x", j);
            let nonzero: Vec<(usize, FieldElem)> = g
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, &c)| (i, c))
                .collect();
            let coeff = if nonzero.len() > 1 {
                Some(format!("({})", g.format_compact("t")))
            } else {
                let (i, c) = nonzero[0];
                match (i, c.is_one()) {
                    (0, true) => None,
                    (0, false) => Some(format_coeff_factor(&self.field, c)),
                    (_, true) => Some(format_power("t", i)),
                    (_, false) => Some(format!(
                        "{}*{}",
                        format_coeff_factor(&self.field, c),
                        format_power("t", i)
                    )),
                }
            };
            parts.push(match coeff {
                Some(c) => format!("{c}*{xpow}"),
                None => xpow,
            });
        }
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({} over {:?})", self, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::parse::parse_bipoly;

    fn bp(text: &str, p: u64) -> BiPoly {
        parse_bipoly(text, &Field::prime(p).unwrap()).unwrap()
    }

    #[test]
    fn content_examples() {
        let f = bp("t^2*x", 5);
        assert_eq!(f.content().unwrap(), UniPoly::from_ints(f.field(), &[0, 0, 1]));
        let g = bp("x^4 + 2", 5);
        assert!(g.content().unwrap().is_one());
        let h = bp("t^2*x + t^3", 5);
        assert_eq!(h.content().unwrap(), UniPoly::from_ints(h.field(), &[0, 0, 1]));
        assert_eq!(BiPoly::zero(h.field()).content(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn primitive_decompositions() {
        let d = bp("t^2*x", 5).primitive_decompose().unwrap();
        assert_eq!(d.primitive, bp("x", 5));
        assert!(!d.content_squarefree);

        let d = bp("x^2 - t", 5).primitive_decompose().unwrap();
        assert!(d.content.is_one());
        assert_eq!(d.primitive, bp("x^2 - t", 5));
        assert!(d.content_squarefree);

        let d = bp("(t^2+t)*(x+1)", 2).primitive_decompose().unwrap();
        assert_eq!(d.content, UniPoly::from_ints(d.content.field(), &[0, 1, 1]));
        assert_eq!(d.primitive, bp("x + 1", 2));
        assert!(d.content_squarefree);

        // units move into the primitive part
        let d = bp("2*t*x + 2*t", 5).primitive_decompose().unwrap();
        assert!(d.content.is_monic());
        assert_eq!(d.primitive, bp("2*x + 2", 5));
    }

    #[test]
    fn heights_and_degrees() {
        let f = bp("x^4 + 2", 5);
        assert_eq!((f.height(), f.deg_x()), (Ok(0), Ok(4)));
        let f = bp("x^2 - t", 5);
        assert_eq!((f.height(), f.deg_x()), (Ok(1), Ok(2)));
        let f = bp("t^3*x + t", 5);
        assert_eq!((f.height(), f.deg_x()), (Ok(3), Ok(1)));
        assert_eq!(BiPoly::zero(f.field()).height(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn discriminants_in_x() {
        let f = bp("x^2 - t", 5);
        let fld = f.field().clone();
        assert_eq!(f.disc_x().unwrap(), UniPoly::from_ints(&fld, &[0, 4]));
        assert!(f.is_separable().unwrap());
        assert!(!bp("x^2 - 2*t*x + t^2", 5).is_separable().unwrap());
        assert!(!bp("x^2 + t", 2).is_separable().unwrap());
        assert_eq!(bp("t^2 + 1", 5).disc_x(), Err(Error::ConstantInX));
    }

    #[test]
    fn disc_x_matches_pointwise_discriminant() {
        // Delta_f(rho) = disc(f(x, rho)) whenever the leading coefficient
        // does not vanish at rho.
        let f = bp("(t+1)*x^3 + t*x^2 + 2*x + t^2", 7);
        let fld = f.field().clone();
        let delta = f.disc_x().unwrap();
        for rho in fld.elements() {
            let spec = f.specialize_t(rho);
            if spec.degree() == Some(3) {
                assert_eq!(delta.eval(rho), spec.discriminant().unwrap());
            }
        }
    }

    #[test]
    fn evaluation_examples() {
        let f = bp("x^2 - t", 5);
        let fld = f.field().clone();
        let a = UniPoly::from_ints(&fld, &[1, 1]);
        assert_eq!(f.evaluate(&a), UniPoly::from_ints(&fld, &[1, 1, 1]));
        assert_eq!(bp("x", 5).evaluate(&a), a);
        let g = bp("t^2*x", 5);
        let v = g.evaluate(&UniPoly::one(&fld));
        assert_eq!(v, UniPoly::from_ints(&fld, &[0, 0, 1]));
        assert!(!v.is_squarefree().unwrap());
    }

    #[test]
    fn specialization_examples() {
        let f = bp("x^2 - t", 5);
        let fld = f.field().clone();
        assert_eq!(f.specialize_t(fld.one()), UniPoly::from_ints(&fld, &[4, 0, 1]));
        assert!(bp("t^2*x", 5).specialize_t(fld.zero()).is_zero());
    }

    #[test]
    fn counterexample_over_f2() {
        let fld = Field::prime(2).unwrap();
        let f = BiPoly::no_squarefree_example(&fld).unwrap();
        assert_eq!(f, bp("x*(x+1)*(x+t)*(x+t+1)", 2));
        assert_eq!(f.deg_x(), Ok(4));
        let a = UniPoly::from_ints(&fld, &[0, 0, 1]);
        // f(t^2) = t^3 (t+1)^3 (t^2+t+1)
        let expect = UniPoly::var(&fld)
            .pow(3)
            .mul(&UniPoly::from_ints(&fld, &[1, 1]).pow(3))
            .mul(&UniPoly::from_ints(&fld, &[1, 1, 1]));
        assert_eq!(f.evaluate(&a), expect);
        let sq = UniPoly::from_ints(&fld, &[0, 1, 1]).pow(2);
        assert!(sq.divides(&f.evaluate(&a)).unwrap());
        assert!(BiPoly::no_squarefree_example(&Field::prime(37).unwrap()).is_err());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(bp("t^3 + x^2 + x + t*x", 5).to_string(), "x^2 + (t+1)*x + t^3");
        assert_eq!(bp("t^2*x", 5).to_string(), "t^2*x");
        assert_eq!(bp("x^2 - t", 5).to_string(), "x^2 + 4*t");
        assert_eq!(bp("3*x + 2*t^2*x^3 + 1", 5).to_string(), "2*t^2*x^3 + 3*x + 1");
        let f4 = Field::new(2, 2).unwrap();
        let f = parse_bipoly("(u+1)*x + u*t*x^2 + u", &f4).unwrap();
        assert_eq!(f.to_string(), "u*t*x^2 + (u+1)*x + u");
        assert_eq!(parse_bipoly(&f.to_string(), &f4).unwrap(), f);
    }
}
