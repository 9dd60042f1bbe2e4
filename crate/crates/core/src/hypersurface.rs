//! The bad set `{a : f(a) not square-free}` as an explicit hypersurface.
//!
//! For a generic monic `a(t) = a_0 + a_1 t + ... + a_{n-1} t^{n-1} + t^n`,
//! write `f = c * f_0` with `f_0` primitive. Then `f(a)` fails to be
//! square-free exactly when `disc_t f_0(a(t), t) * Res_t(c, f_0(a(t), t))`
//! vanishes, provided the `t`-degree of `f_0(a(t), t)` does not drop at `a`
//! (always the case when `n > Ht(f)`). Both factors are computed here as
//! polynomials in `a_0, ..., a_{n-1}`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::bareiss::{bareiss_det, sylvester};
use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::multipoly::{MultiPoly, DEFAULT_TERM_CAP, MAX_VARS};
use crate::poly::{monic_count, monic_from_index, UniPoly};

/// `F(a; t) = f(a(t), t)` as a polynomial in `t` with coefficients in
/// `F_q[a_0, ..., a_{n-1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericValue {
    pub n: usize,
    /// `tpoly[i]` is the coefficient of `t^i`; the last entry is nonzero.
    pub tpoly: Vec<MultiPoly>,
}

impl GenericValue {
    /// Formal degree in `t`.
    pub fn degree(&self) -> usize {
        self.tpoly.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &MultiPoly {
        self.tpoly.last().expect("nonzero generic value")
    }

    /// Substitutes a point for `(a_0, ..., a_{n-1})`.
    pub fn specialize(&self, field: &Field, point: &[FieldElem]) -> Result<UniPoly> {
        let coeffs = self
            .tpoly
            .iter()
            .map(|c| c.eval(point))
            .collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::from_coeffs(field, coeffs))
    }
}

fn tpoly_trim(mut v: Vec<MultiPoly>) -> Vec<MultiPoly> {
    while v.last().is_some_and(MultiPoly::is_zero) {
        v.pop();
    }
    v
}

fn tpoly_mul(a: &[MultiPoly], b: &[MultiPoly], zero: &MultiPoly) -> Result<Vec<MultiPoly>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![zero.clone(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y)?)?;
        }
    }
    Ok(tpoly_trim(out))
}

fn lift(c: &UniPoly, n: usize, cap: usize) -> Result<Vec<MultiPoly>> {
    c.coeffs()
        .iter()
        .map(|&e| Ok(MultiPoly::constant(c.field(), n, e)?.with_term_cap(cap)))
        .collect()
}

/// Expands `f(a(t), t)` for the generic monic `a` of degree `n` by Horner's
/// rule in `x`. Each `t`-coefficient has total degree at most `deg_x f`.
pub fn generic_evaluate(f: &BiPoly, n: usize, term_cap: usize) -> Result<GenericValue> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if n == 0 {
        return Err(Error::InvalidArgument("degree n must be at least 1".into()));
    }
    if n > MAX_VARS {
        return Err(Error::TooManyVariables {
            got: n,
            max: MAX_VARS,
        });
    }
    let field = f.field();
    let zero = MultiPoly::zero(field, n)?.with_term_cap(term_cap);
    let mut a: Vec<MultiPoly> = (0..n)
        .map(|i| Ok(MultiPoly::var(field, n, i)?.with_term_cap(term_cap)))
        .collect::<Result<_>>()?;
    a.push(MultiPoly::one(field, n)?.with_term_cap(term_cap));
    let mut acc: Vec<MultiPoly> = Vec::new();
    for g in f.gammas().iter().rev() {
        let mut next = tpoly_mul(&acc, &a, &zero)?;
        let lifted = lift(g, n, term_cap)?;
        if next.len() < lifted.len() {
            next.resize(lifted.len(), zero.clone());
        }
        for (slot, c) in next.iter_mut().zip(lifted.iter()) {
            *slot = slot.add(c)?;
        }
        acc = tpoly_trim(next);
    }
    Ok(GenericValue { n, tpoly: acc })
}

/// How to treat a formal leading coefficient in `t` that is not constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeadPolicy {
    /// Fail with [`Error::NonconstantLeadingCoefficient`].
    Strict,
    /// Return `(-1)^(m(m-1)/2) Res(F, dF/dt)` without dividing by the
    /// leading coefficient. Its zero set contains the discriminant's zero
    /// set and the zeros of the leading coefficient.
    Unnormalized,
}

/// Discriminant in `t` of `F(a; t)` at its formal degree `m`, with `dF/dt`
/// taken at formal degree `m - 1`. Zero if `dF/dt` vanishes identically.
pub fn symbolic_discriminant(gv: &GenericValue) -> Result<MultiPoly> {
    Ok(symbolic_discriminant_with(gv, LeadPolicy::Strict)?.0)
}

/// Like [`symbolic_discriminant`]; the flag reports whether the result was
/// normalized by a constant leading coefficient.
pub fn symbolic_discriminant_with(
    gv: &GenericValue,
    policy: LeadPolicy,
) -> Result<(MultiPoly, bool)> {
    let m = gv.degree();
    if gv.tpoly.is_empty() || m == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let lead = gv.leading();
    let field = lead.field().clone();
    let zero = MultiPoly::zero(&field, gv.n)?.with_term_cap(lead.term_cap());
    let lead_const = lead.constant_value();
    if lead_const.is_none() && policy == LeadPolicy::Strict {
        return Err(Error::NonconstantLeadingCoefficient);
    }
    let mut deriv: Vec<MultiPoly> = gv.tpoly[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| c.scale(field.from_u64(i as u64 + 1)))
        .collect();
    if deriv.iter().all(MultiPoly::is_zero) {
        return Ok((zero, lead_const.is_some()));
    }
    deriv.resize(m, zero.clone());
    let one = MultiPoly::one(&field, gv.n)?.with_term_cap(lead.term_cap());
    let res = bareiss_det(sylvester(&gv.tpoly, &deriv, &zero), one)?;
    let mut disc = match lead_const {
        Some(c) => res.scale(field.inv(c)?),
        None => res,
    };
    if crate::poly::disc_sign_is_negative(m) {
        disc = disc.neg();
    }
    Ok((disc, lead_const.is_some()))
}

/// `Res_t(c, F_0(a; t))` for a square-free content `c`; the constant `1`
/// when `c` is a unit. `c` is made monic first.
pub fn symbolic_resultant(c: &UniPoly, gv0: &GenericValue) -> Result<MultiPoly> {
    let Some(dc) = c.degree() else {
        return Err(Error::ZeroPolynomial);
    };
    let lead = gv0.tpoly.last().ok_or(Error::ZeroPolynomial)?;
    let cap = lead.term_cap();
    let one = MultiPoly::one(c.field(), gv0.n)?.with_term_cap(cap);
    if dc == 0 {
        return Ok(one);
    }
    if !c.is_squarefree()? {
        return Err(Error::ContentNotSquarefree);
    }
    let zero = MultiPoly::zero(c.field(), gv0.n)?.with_term_cap(cap);
    let lifted = lift(&c.monic(), gv0.n, cap)?;
    bareiss_det(sylvester(&lifted, &gv0.tpoly, &zero), one)
}

/// The certificate that `S_f(n)` is the complement of a proper hypersurface
/// of bounded degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceCertificate {
    /// Canonical text of `f`.
    pub f: String,
    pub n: usize,
    pub q: u64,
    pub deg_x: usize,
    pub height: usize,
    /// Discriminant of `f_0(a(t), t)`.
    pub disc_part: MultiPoly,
    /// `Res_t(c, f_0(a(t), t))`; the constant 1 for primitive `f`.
    pub res_part: MultiPoly,
    /// Whether `disc_part` was divided by a constant leading coefficient.
    pub normalized: bool,
    /// Total degree of `disc_part * res_part`.
    pub product_degree: u64,
    /// `2 (n deg_x f + Ht f) deg_x f`.
    pub bound: u64,
    pub nontrivial: bool,
    /// Zeros of the product in `F_q^n`, when counted.
    pub zero_count: Option<u64>,
    /// `product_degree * q^(n-1)`.
    pub schmidt_bound: u128,
}

impl HypersurfaceCertificate {
    pub fn degree_within_bound(&self) -> bool {
        self.product_degree <= self.bound
    }

    /// `None` when zeros were not counted.
    pub fn schmidt_holds(&self) -> Option<bool> {
        self.zero_count.map(|z| z as u128 <= self.schmidt_bound)
    }

    /// Whether `(disc_part * res_part)(a) = 0`.
    pub fn vanishes_at(&self, point: &[FieldElem]) -> Result<bool> {
        Ok(self.disc_part.eval(point)?.is_zero() || self.res_part.eval(point)?.is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub policy: LeadPolicy,
    /// Count zeros exhaustively when `q^n` is at most this.
    pub count_limit: Option<u64>,
    pub term_cap: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            policy: LeadPolicy::Strict,
            count_limit: Some(1_000_000),
            term_cap: DEFAULT_TERM_CAP,
        }
    }
}

/// `2 (n deg_x f + Ht f) deg_x f`.
pub fn degree_bound(n: usize, deg_x: usize, height: usize) -> u64 {
    2 * (n as u64 * deg_x as u64 + height as u64) * deg_x as u64
}

/// Checks the hypotheses (`f` separable with square-free content) and
/// returns the decomposition `f = c * f_0`.
pub fn check_hypotheses(f: &BiPoly) -> Result<crate::bipoly::PrimitiveDecomposition> {
    if !f.is_separable()? {
        return Err(Error::NotSeparable);
    }
    let dec = f.primitive_decompose()?;
    if !dec.content_squarefree {
        return Err(Error::ContentNotSquarefree);
    }
    Ok(dec)
}

/// Point of `F_q^n` with index `i` (base-`q` digits, `a_0` least
/// significant); the same order as [`monic_from_index`].
pub fn point_from_index(field: &Field, n: usize, mut index: u64) -> Vec<FieldElem> {
    let q = field.q();
    (0..n)
        .map(|_| {
            let e = field.element(index % q).expect("digit below q");
            index /= q;
            e
        })
        .collect()
}

pub fn certify(f: &BiPoly, n: usize, opts: &CertifyOptions) -> Result<HypersurfaceCertificate> {
    let dec = check_hypotheses(f)?;
    let deg_x = f.deg_x()?;
    let height = f.height()?;
    let gv0 = generic_evaluate(&dec.primitive, n, opts.term_cap)?;
    let (disc_part, normalized) = symbolic_discriminant_with(&gv0, opts.policy)?;
    let res_part = symbolic_resultant(&dec.content, &gv0)?;
    let nontrivial = !disc_part.is_zero() && !res_part.is_zero();
    let product = disc_part.mul(&res_part)?;
    let product_degree = product.total_degree().unwrap_or(0) as u64;
    let field = f.field();
    let q_pow = monic_count(field, n - 1).map_or(u128::MAX, |v| v as u128);
    let mut cert = HypersurfaceCertificate {
        f: f.to_string(),
        n,
        q: field.q(),
        deg_x,
        height,
        disc_part,
        res_part,
        normalized,
        product_degree,
        bound: degree_bound(n, deg_x, height),
        nontrivial,
        zero_count: None,
        schmidt_bound: (product_degree as u128).saturating_mul(q_pow),
    };
    if let Some(limit) = opts.count_limit {
        if let Ok(total) = monic_count(field, n) {
            if total <= limit {
                cert.zero_count = Some(count_zeros_range(&cert, field, 0..total)?);
            }
        }
    }
    Ok(cert)
}

/// Zeros of `disc_part * res_part` among the points with indices in `range`.
pub fn count_zeros_range(
    cert: &HypersurfaceCertificate,
    field: &Field,
    range: Range<u64>,
) -> Result<u64> {
    let mut count = 0;
    for idx in range {
        let point = point_from_index(field, cert.n, idx);
        if cert.vanishes_at(&point)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Outcome of comparing direct square-free tests against the certificate
/// on every `a` in `M_n(F_q)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub total: u64,
    /// `a` with `f(a)` not square-free (direct test).
    pub bad_direct: u64,
    /// `a` on the hypersurface.
    pub bad_predicted: u64,
    /// Indices where the two tests differ, in increasing order.
    pub disagreements: Vec<u64>,
    /// `a` where `f_0(a(t), t)` has smaller `t`-degree than the formal degree.
    pub degree_drop_points: u64,
    /// Exact agreement is guaranteed (`n > Ht f`).
    pub exact_expected: bool,
}

impl EquivalenceReport {
    pub fn agreement(&self) -> bool {
        self.disagreements.is_empty()
    }

    /// Combines reports for consecutive index ranges (`self` first).
    pub fn merge(mut self, other: EquivalenceReport) -> Self {
        self.total += other.total;
        self.bad_direct += other.bad_direct;
        self.bad_predicted += other.bad_predicted;
        self.disagreements.extend(other.disagreements);
        self.degree_drop_points += other.degree_drop_points;
        self.exact_expected &= other.exact_expected;
        self
    }
}

/// Whether `f(a)` is square-free; the zero polynomial is not.
pub fn value_is_squarefree(value: &UniPoly) -> bool {
    !value.is_zero() && value.is_squarefree().expect("nonzero")
}

pub fn verify_equivalence(
    f: &BiPoly,
    cert: &HypersurfaceCertificate,
    limit: u64,
) -> Result<EquivalenceReport> {
    let total = monic_count(f.field(), cert.n)?;
    if total > limit {
        return Err(Error::Overflow(format!(
            "q^n = {total} points exceed the exhaustive limit {limit}"
        )));
    }
    verify_equivalence_range(f, cert, 0..total)
}

/// [`verify_equivalence`] restricted to the indices in `range`.
pub fn verify_equivalence_range(
    f: &BiPoly,
    cert: &HypersurfaceCertificate,
    range: Range<u64>,
) -> Result<EquivalenceReport> {
    let field = f.field();
    let n = cert.n;
    let f0 = f.primitive_decompose()?.primitive;
    let formal_degree = generic_evaluate(&f0, n, cert.disc_part.term_cap())?.degree();
    let mut report = EquivalenceReport {
        exact_expected: n > f.height()?,
        ..Default::default()
    };
    for idx in range {
        let a = monic_from_index(field, n, idx);
        let point = point_from_index(field, n, idx);
        let direct_bad = !value_is_squarefree(&f.evaluate(&a));
        let predicted_bad = cert.vanishes_at(&point)?;
        let f0a = f0.evaluate(&a);
        if f0a.degree().is_none_or(|d| d < formal_degree) {
            report.degree_drop_points += 1;
        }
        report.total += 1;
        report.bad_direct += direct_bad as u64;
        report.bad_predicted += predicted_bad as u64;
        if direct_bad != predicted_bad {
            report.disagreements.push(idx);
        }
    }
    Ok(report)
}
