//! Rayon drivers over the range entry points of the core crate. Index
//! ranges are fixed-size chunks and partial results are combined in chunk
//! order, so output never depends on the number of threads.

use std::ops::Range;

use ffsqfree_core::census::{self, CensusReport};
use ffsqfree_core::hypersurface::{self, EquivalenceReport, HypersurfaceCertificate};
use ffsqfree_core::{BiPoly, Field, Result};
use rayon::prelude::*;

const CHUNK: u64 = 4096;

fn chunks(total: u64) -> Vec<Range<u64>> {
    (0..total.div_ceil(CHUNK))
        .map(|i| i * CHUNK..((i + 1) * CHUNK).min(total))
        .collect()
}

pub fn count_squarefree(f: &BiPoly, n: usize, total: u64) -> Result<u64> {
    chunks(total)
        .into_par_iter()
        .map(|r| census::count_squarefree_range(f, n, r))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

pub fn count_exhaustive(f: &BiPoly, n: usize, limit: u64, bound_d: Option<u64>) -> Result<CensusReport> {
    let total = census::exhaustive_total(f, n, limit)?;
    let squarefree = count_squarefree(f, n, total)?;
    Ok(CensusReport::exhaustive(f, n, total, squarefree, bound_d))
}

/// Same draws as [`census::count_sample`]: each chunk has its own stream.
pub fn count_sample(f: &BiPoly, n: usize, samples: u64, seed: u64) -> Result<CensusReport> {
    if samples == 0 || f.is_zero() {
        return census::count_sample(f, n, samples, seed);
    }
    let squarefree = (0..census::sample_chunks(samples))
        .into_par_iter()
        .map(|c| census::sample_chunk(f, n, samples, seed, c))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(CensusReport::sampled(f, n, samples, squarefree, seed))
}

pub fn count_zeros(cert: &HypersurfaceCertificate, field: &Field, total: u64) -> Result<u64> {
    chunks(total)
        .into_par_iter()
        .map(|r| hypersurface::count_zeros_range(cert, field, r))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

pub fn verify(f: &BiPoly, cert: &HypersurfaceCertificate, total: u64) -> Result<EquivalenceReport> {
    let parts = chunks(total)
        .into_par_iter()
        .map(|r| hypersurface::verify_equivalence_range(f, cert, r))
        .collect::<Result<Vec<_>>>()?;
    let mut iter = parts.into_iter();
    let first = iter.next().unwrap_or_else(|| EquivalenceReport {
        exact_expected: true,
        ..Default::default()
    });
    Ok(iter.fold(first, EquivalenceReport::merge))
}
