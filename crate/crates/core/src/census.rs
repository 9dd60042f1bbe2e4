//! Counting square-free values `f(a)` over `a` in `M_n(F_q)`, local
//! densities `rho_f(P^2)` and the truncated Euler product
//! `c_f = prod_P (1 - rho_f(P^2) / |P|^2)`.
//!
//! All counting entry points come in an index-range form so that callers
//! can split `[0, q^n)` across workers and sum the partial counts.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::hypersurface::{check_hypotheses, degree_bound, value_is_squarefree};
use crate::poly::{enumerate_residues, irreducibles_up_to, monic_count, monic_from_index, MonicIter, Residue, UniPoly};

/// Default bound on exhaustively enumerated points.
pub const DEFAULT_EXHAUSTIVE_LIMIT: u64 = 1_000_000;
/// Samples drawn from one ChaCha stream; stream `i` serves samples
/// `[i * SAMPLE_CHUNK, (i + 1) * SAMPLE_CHUNK)`.
pub const SAMPLE_CHUNK: u64 = 1024;
/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMode {
    Exhaustive,
    Sample,
}

impl CensusMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CensusMode::Exhaustive => "exhaustive",
            CensusMode::Sample => "sample",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusReport {
    /// Canonical text of `f`.
    pub f: String,
    pub q: u64,
    pub n: usize,
    pub mode: CensusMode,
    pub total: u64,
    pub squarefree: u64,
    /// `squarefree / total` in lowest terms.
    pub density_num: u64,
    pub density_den: u64,
    /// Degree bound `D` the exhaustive count was checked against.
    pub bound_d: Option<u64>,
    /// `(1 - density) q <= D`, exhaustive mode only.
    pub theorem2_check: Option<bool>,
    pub seed: Option<u64>,
    pub sample_count: Option<u64>,
    /// Half-width of the 95% normal-approximation interval, sample mode only.
    pub half_width: Option<f64>,
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn reduced(num: u64, den: u64) -> (u64, u64) {
    let g = gcd_u64(num, den).max(1);
    (num / g, den / g)
}

impl CensusReport {
    /// Report for a complete enumeration; `bound_d` enables the check
    /// `(total - squarefree) q <= D total`.
    pub fn exhaustive(f: &BiPoly, n: usize, total: u64, squarefree: u64, bound_d: Option<u64>) -> Self {
        let q = f.field().q();
        let (density_num, density_den) = reduced(squarefree, total);
        let theorem2_check = bound_d.map(|d| {
            ((total - squarefree) as u128) * q as u128 <= d as u128 * total as u128
        });
        Self {
            f: f.to_string(),
            q,
            n,
            mode: CensusMode::Exhaustive,
            total,
            squarefree,
            density_num,
            density_den,
            bound_d,
            theorem2_check,
            seed: None,
            sample_count: None,
            half_width: None,
        }
    }

    pub fn sampled(f: &BiPoly, n: usize, samples: u64, squarefree: u64, seed: u64) -> Self {
        let (density_num, density_den) = reduced(squarefree, samples);
        let p = squarefree as f64 / samples as f64;
        let half_width = Z95 * libm_sqrt(p * (1.0 - p) / samples as f64);
        Self {
            f: f.to_string(),
            q: f.field().q(),
            n,
            mode: CensusMode::Sample,
            total: samples,
            squarefree,
            density_num,
            density_den,
            bound_d: None,
            theorem2_check: None,
            seed: Some(seed),
            sample_count: Some(samples),
            half_width: Some(half_width),
        }
    }

    pub fn density(&self) -> f64 {
        self.density_num as f64 / self.density_den as f64
    }

    pub fn density_ratio(&self) -> BigRational {
        BigRational::new(self.density_num.into(), self.density_den.into())
    }

    /// Whether `value` lies in the sample's 95% interval.
    pub fn interval_contains(&self, value: f64) -> bool {
        match self.half_width {
            Some(h) => (self.density() - value).abs() <= h,
            None => self.density() == value,
        }
    }
}

fn libm_sqrt(x: f64) -> f64 {
    num_traits::Float::sqrt(x)
}

/// Square-free values among the monic `a` of degree `n` with indices in
/// `range`.
pub fn count_squarefree_range(f: &BiPoly, n: usize, range: Range<u64>) -> Result<u64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.deg_x()? == 0 {
        // f(a) = gamma_0 for every a
        let len = range.end - range.start;
        return Ok(if value_is_squarefree(&f.gamma(0)) { len } else { 0 });
    }
    let mut count = 0;
    for a in MonicIter::new(f.field(), n, range)? {
        if value_is_squarefree(&f.evaluate(&a)) {
            count += 1;
        }
    }
    Ok(count)
}

/// `q^n`, failing when it exceeds `limit`.
pub fn exhaustive_total(f: &BiPoly, n: usize, limit: u64) -> Result<u64> {
    let total = monic_count(f.field(), n)?;
    if total > limit {
        return Err(Error::Overflow(format!(
            "q^n = {}^{n} = {total} exceeds the exhaustive limit {limit}",
            f.field().q()
        )));
    }
    Ok(total)
}

pub fn count_exhaustive(f: &BiPoly, n: usize, limit: u64, bound_d: Option<u64>) -> Result<CensusReport> {
    let total = exhaustive_total(f, n, limit)?;
    let squarefree = count_squarefree_range(f, n, 0..total)?;
    Ok(CensusReport::exhaustive(f, n, total, squarefree, bound_d))
}

/// `2 (n deg_x f + Ht f) deg_x f` for `f`.
pub fn theorem_bound(f: &BiPoly, n: usize) -> Result<u64> {
    Ok(degree_bound(n, f.deg_x()?, f.height()?))
}

/// Number of sample chunks covering `samples` draws.
pub fn sample_chunks(samples: u64) -> u64 {
    samples.div_ceil(SAMPLE_CHUNK)
}

/// Square-free values among the draws of chunk `chunk` (of a run with
/// `samples` draws in total). Draws are uniform indices in `[0, q^n)` from
/// ChaCha8 seeded with `seed` on stream `chunk`.
pub fn sample_chunk(f: &BiPoly, n: usize, samples: u64, seed: u64, chunk: u64) -> Result<u64> {
    let total = monic_count(f.field(), n)?;
    let start = chunk * SAMPLE_CHUNK;
    let len = SAMPLE_CHUNK.min(samples.saturating_sub(start));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let mut count = 0;
    for _ in 0..len {
        let idx = rng.gen_range(0..total);
        let a = monic_from_index(f.field(), n, idx);
        if value_is_squarefree(&f.evaluate(&a)) {
            count += 1;
        }
    }
    Ok(count)
}

pub fn count_sample(f: &BiPoly, n: usize, samples: u64, seed: u64) -> Result<CensusReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut squarefree = 0;
    for chunk in 0..sample_chunks(samples) {
        squarefree += sample_chunk(f, n, samples, seed, chunk)?;
    }
    Ok(CensusReport::sampled(f, n, samples, squarefree, seed))
}

/// `rho_f(D) = #{C mod D : f(C) = 0 mod D}` by enumerating all residues.
pub fn rho(f: &BiPoly, d: &UniPoly, limit: u64) -> Result<u64> {
    let deg = match d.degree() {
        None | Some(0) => {
            return Err(Error::InvalidModulus("modulus must have degree at least 1".into()))
        }
        Some(deg) => deg,
    };
    let count = monic_count(f.field(), deg)?;
    if count > limit {
        return Err(Error::Overflow(format!(
            "q^deg D = {count} residues exceed the exhaustive limit {limit}"
        )));
    }
    let gammas = f
        .gammas()
        .iter()
        .map(|g| Residue::from_poly(g, d))
        .collect::<Result<Vec<_>>>()?;
    let zero = Residue::zero(d)?;
    let mut roots = 0;
    for c in enumerate_residues(d)? {
        let mut acc = zero.clone();
        for g in gammas.iter().rev() {
            acc = acc.mul(&c)?.add(g)?;
        }
        if acc.is_zero() {
            roots += 1;
        }
    }
    Ok(roots)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalFactor {
    pub prime: UniPoly,
    /// `rho_f(P^2)`.
    pub rho: u64,
    /// `1 - rho / |P|^2` with `|P| = q^deg P`.
    pub factor: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalDensity {
    pub n: usize,
    pub total: u64,
    pub squarefree: u64,
}

impl EmpiricalDensity {
    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.squarefree.into(), self.total.into())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RamsayReport {
    pub f: String,
    pub q: u64,
    /// Truncation degree: primes with `deg P <= max_degree` are included.
    pub max_degree: usize,
    pub primitive: bool,
    pub local_factors: Vec<LocalFactor>,
    pub c_f_truncated: BigRational,
    pub empirical: Vec<EmpiricalDensity>,
    /// Upper bound on `c_f_truncated - c_f` (which is never negative).
    pub tail_bound: BigRational,
    /// How `tail_bound` was obtained.
    pub tail_derivation: String,
}

impl RamsayReport {
    /// `|density(n) - c_f_truncated|` for each empirical entry.
    pub fn differences(&self) -> Vec<(usize, BigRational)> {
        self.empirical
            .iter()
            .map(|e| {
                let d = e.ratio() - &self.c_f_truncated;
                (e.n, if d < BigRational::zero() { -d } else { d })
            })
            .collect()
    }
}

fn big_pow(q: u64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(q), e)
}

/// Bound on `sum_{deg P > B} rho_f(P^2) / |P|^2`, which in turn bounds the
/// gap between the truncated and the full product.
///
/// Let `l = deg_x f` and `bad = c * Delta_f`. For `P` not dividing `bad`,
/// `f mod P` has only simple roots, each lifting uniquely mod `P^2`, so
/// `rho_f(P^2) <= l`; with at most `q^d / d` primes of degree `d` these
/// contribute at most `l / ((B+1) q^B (q-1))`. At most
/// `deg(bad) / (B+1)` primes of degree `> B` divide `bad`, each with
/// `rho_f(P^2) <= l |P|`, adding `l / q^(B+1)` apiece.
pub fn tail_bound(f: &BiPoly, max_degree: usize) -> Result<(BigRational, String)> {
    let dec = check_hypotheses(f)?;
    let l = f.deg_x()? as u64;
    let q = f.field().q();
    let b = max_degree;
    let delta_deg = if l == 0 { 0 } else { f.disc_x()?.degree().unwrap_or(0) };
    let bad_deg = delta_deg + dec.content.degree().unwrap_or(0);
    let bad_primes = (bad_deg / (b + 1)) as u64;
    let good = BigRational::new(
        BigInt::from(l),
        BigInt::from(b as u64 + 1) * big_pow(q, b) * BigInt::from(q - 1),
    );
    let bad = BigRational::new(BigInt::from(l * bad_primes), big_pow(q, b + 1));
    let text = format!(
        "l/((B+1) q^B (q-1)) + l*floor(deg(c*Delta_f)/(B+1))/q^(B+1) with l = {l}, B = {b}, q = {q}, deg(c*Delta_f) = {bad_deg}"
    );
    Ok((good + bad, text))
}

/// Product of `1 - rho_f(P^2)/|P|^2` over monic irreducible `P` with
/// `deg P <= max_degree`. Requires `f` separable with square-free content.
pub fn cf_truncated(f: &BiPoly, max_degree: usize, limit: u64) -> Result<RamsayReport> {
    let dec = check_hypotheses(f)?;
    let field = f.field();
    let q = field.q();
    let residues = monic_count(field, 2 * max_degree)?;
    if residues > limit {
        return Err(Error::Overflow(format!(
            "q^(2B) = {residues} residues exceed the exhaustive limit {limit}"
        )));
    }
    let mut local_factors = Vec::new();
    let mut product = BigRational::one();
    for prime in irreducibles_up_to(field, max_degree)? {
        let d = prime.degree().expect("nonzero");
        let rho_val = rho(f, &prime.pow(2), limit)?;
        let norm_sq = big_pow(q, 2 * d);
        let factor = BigRational::one() - BigRational::new(BigInt::from(rho_val), norm_sq);
        product *= &factor;
        local_factors.push(LocalFactor {
            prime,
            rho: rho_val,
            factor,
        });
    }
    let (tail, tail_derivation) = tail_bound(f, max_degree)?;
    Ok(RamsayReport {
        f: f.to_string(),
        q,
        max_degree,
        primitive: dec.content.is_one(),
        local_factors,
        c_f_truncated: product,
        empirical: Vec::new(),
        tail_bound: tail,
        tail_derivation,
    })
}

/// [`cf_truncated`] plus exhaustive densities for each `n` in `degrees`.
pub fn ramsay_compare(f: &BiPoly, max_degree: usize, degrees: &[usize], limit: u64) -> Result<RamsayReport> {
    let mut report = cf_truncated(f, max_degree, limit)?;
    for &n in degrees {
        let c = count_exhaustive(f, n, limit, None)?;
        report.empirical.push(EmpiricalDensity {
            n,
            total: c.total,
            squarefree: c.squarefree,
        });
    }
    Ok(report)
}

/// Floating value of a rational, for display.
pub fn approx(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parse::{parse_bipoly, parse_unipoly};

    fn bp(text: &str, p: u64) -> BiPoly {
        parse_bipoly(text, &Field::prime(p).unwrap()).unwrap()
    }

    #[test]
    fn linear_census_f3() {
        let f = bp("x", 3);
        let r = count_exhaustive(&f, 2, DEFAULT_EXHAUSTIVE_LIMIT, Some(4)).unwrap();
        assert_eq!((r.total, r.squarefree), (9, 6));
        assert_eq!((r.density_num, r.density_den), (2, 3));
        assert_eq!(r.theorem2_check, Some(true));
    }

    #[test]
    fn counterexample_census_is_zero() {
        let f = BiPoly::no_squarefree_example(&Field::prime(2).unwrap()).unwrap();
        for n in 1..=5 {
            let r = count_exhaustive(&f, n, DEFAULT_EXHAUSTIVE_LIMIT, None).unwrap();
            assert_eq!(r.squarefree, 0, "n = {n}");
        }
    }

    #[test]
    fn constant_in_x() {
        let f = bp("t^2 + 1", 3);
        assert_eq!(count_squarefree_range(&f, 2, 0..9).unwrap(), 9);
        let g = bp("t^2", 3);
        assert_eq!(count_squarefree_range(&g, 2, 0..9).unwrap(), 0);
    }

    #[test]
    fn exhaustive_limit() {
        let f = bp("x", 3);
        assert!(matches!(count_exhaustive(&f, 5, 100, None), Err(Error::Overflow(_))));
    }

    #[test]
    fn ranges_sum_to_total() {
        let f = bp("x^2 + t", 3);
        let whole = count_squarefree_range(&f, 3, 0..27).unwrap();
        let parts: u64 = [0..5, 5..19, 19..27]
            .into_iter()
            .map(|r| count_squarefree_range(&f, 3, r).unwrap())
            .sum();
        assert_eq!(whole, parts);
    }

    #[test]
    fn sampling_is_deterministic() {
        let f = bp("x", 3);
        let a = count_sample(&f, 6, 3000, 7).unwrap();
        let b = count_sample(&f, 6, 3000, 7).unwrap();
        assert_eq!(a, b);
        let c = count_sample(&f, 6, 3000, 8).unwrap();
        assert_eq!(c.total, 3000);
        assert!(a.half_width.unwrap() > 0.0);
    }

    #[test]
    fn rho_linear() {
        // f = x has one root mod every D
        let field = Field::prime(3).unwrap();
        let f = bp("x", 3);
        let d = parse_unipoly("t^2 + 1", &field).unwrap();
        assert_eq!(rho(&f, &d, 1000).unwrap(), 1);
    }

    #[test]
    fn rho_of_x2_minus_t() {
        let f3 = Field::prime(3).unwrap();
        let d = parse_unipoly("t^2", &f3).unwrap();
        assert_eq!(rho(&bp("x^2 - t", 3), &d, 1000).unwrap(), 0);
        let f5 = Field::prime(5).unwrap();
        let d = parse_unipoly("(t - 1)^2", &f5).unwrap();
        assert_eq!(rho(&bp("x^2 - t", 5), &d, 1000).unwrap(), 2);
    }

    #[test]
    fn rho_matches_brute_force() {
        let field = Field::prime(3).unwrap();
        let f = bp("x^2 + t", 3);
        let d = parse_unipoly("t^2", &field).unwrap();
        let mut count = 0;
        for idx in 0..9u64 {
            let c = UniPoly::from_coeffs(
                &field,
                alloc::vec![field.element(idx % 3).unwrap(), field.element(idx / 3).unwrap()],
            );
            if f.evaluate(&c).rem(&d).unwrap().is_zero() {
                count += 1;
            }
        }
        assert_eq!(rho(&f, &d, 1000).unwrap(), count);
    }

    #[test]
    fn linear_euler_product() {
        // rho_x(P^2) = 1, so each factor is 1 - q^(-2 deg P)
        let f = bp("x", 3);
        let r = cf_truncated(&f, 2, DEFAULT_EXHAUSTIVE_LIMIT).unwrap();
        assert_eq!(r.local_factors.len(), 3 + 3);
        assert!(r.local_factors.iter().all(|lf| lf.rho == 1));
        let expected = BigRational::new(8.into(), 9.into()).pow(3)
            * BigRational::new(80.into(), 81.into()).pow(3);
        assert_eq!(r.c_f_truncated, expected);
        assert!(r.tail_bound > BigRational::zero());
    }

    #[test]
    fn counterexample_over_f3() {
        let f = BiPoly::no_squarefree_example(&Field::prime(3).unwrap()).unwrap();
        assert_eq!(f.deg_x().unwrap(), 9);
        for n in 1..=2 {
            let r = count_exhaustive(&f, n, DEFAULT_EXHAUSTIVE_LIMIT, None).unwrap();
            assert_eq!(r.squarefree, 0);
        }
    }

    #[test]
    fn counterexample_factor_vanishes() {
        let f = BiPoly::no_squarefree_example(&Field::prime(2).unwrap()).unwrap();
        let r = cf_truncated(&f, 1, DEFAULT_EXHAUSTIVE_LIMIT).unwrap();
        assert!(r.local_factors.iter().any(|lf| lf.factor.is_zero()));
        assert!(r.c_f_truncated.is_zero());
        assert!(r
            .local_factors
            .iter()
            .all(|lf| lf.factor >= BigRational::zero() && lf.factor <= BigRational::one()));
    }
}
