//! Serializable report shapes and the JSON/CSV renderers.

use anyhow::Result;
use ffsqfree_core::census::approx;
use ffsqfree_core::{CensusReport, MultiPoly};
use num_rational::BigRational;
use serde::Serialize;

use crate::args::{Format, Mode, NRange};

/// Fully resolved run configuration, echoed at the top of every report.
#[derive(Debug, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub p: u64,
    pub k: usize,
    pub q: u64,
    pub f_input: String,
    pub f: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<NRange>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(rename = "B", skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub force: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub allow_degenerate: Option<bool>,
    pub limit: u64,
    pub format: Format,
    pub output: String,
}

impl RunConfig {
    pub fn new(command: &'static str, p: u64, k: usize, q: u64, f_input: &str, f: String) -> Self {
        Self {
            command,
            p,
            k,
            q,
            f_input: f_input.to_string(),
            f,
            n: None,
            mode: None,
            samples: None,
            seed: None,
            b: None,
            max_n: None,
            verify: None,
            force: None,
            allow_degenerate: None,
            limit: 0,
            format: Format::Json,
            output: String::new(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Rational {
    pub num: String,
    pub den: String,
    pub approx: f64,
}

impl From<&BigRational> for Rational {
    fn from(r: &BigRational) -> Self {
        Self {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            approx: approx(r),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CensusRow {
    pub f: String,
    pub q: u64,
    pub n: usize,
    pub mode: &'static str,
    pub total: u64,
    pub squarefree: u64,
    pub density_num: u64,
    pub density_den: u64,
    #[serde(rename = "bound_D")]
    pub bound_d: Option<u64>,
    pub check: Option<bool>,
}

impl From<&CensusReport> for CensusRow {
    fn from(r: &CensusReport) -> Self {
        Self {
            f: r.f.clone(),
            q: r.q,
            n: r.n,
            mode: r.mode.as_str(),
            total: r.total,
            squarefree: r.squarefree,
            density_num: r.density_num,
            density_den: r.density_den,
            bound_d: r.bound_d,
            check: r.theorem2_check,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CensusJson {
    #[serde(flatten)]
    pub row: CensusRow,
    pub density: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_width: Option<f64>,
}

impl From<&CensusReport> for CensusJson {
    fn from(r: &CensusReport) -> Self {
        Self {
            row: r.into(),
            density: r.density(),
            seed: r.seed,
            sample_count: r.sample_count,
            half_width: r.half_width,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Term {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Serialize)]
pub struct TermList {
    pub total_degree: Option<u32>,
    pub terms: Vec<Term>,
}

impl From<&MultiPoly> for TermList {
    fn from(m: &MultiPoly) -> Self {
        let n = m.n_vars();
        Self {
            total_degree: m.total_degree(),
            terms: m
                .terms()
                .iter()
                .map(|&(mono, c)| Term {
                    exponents: mono.exponents(n),
                    coeff: m.field().format_elem(c),
                })
                .collect(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// CSV with a leading `# config: {...}` comment line.
pub fn to_csv<T: Serialize>(config: &RunConfig, rows: &[T]) -> Result<Vec<u8>> {
    let mut bytes = format!("# config: {}\n", serde_json::to_string(config)?).into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut bytes);
        for row in rows {
            w.serialize(row)?;
        }
        w.flush()?;
    }
    Ok(bytes)
}
