use anyhow::anyhow;
use ffsqfree_core::census::{self, theorem_bound};
use ffsqfree_core::hypersurface::{certify, check_hypotheses, CertifyOptions, LeadPolicy};
use ffsqfree_core::parse::parse_bipoly;
use ffsqfree_core::poly::monic_count;
use ffsqfree_core::{BiPoly, Error, Field, UniPoly};
use serde::Serialize;

use crate::args::{CertifyArgs, CounterexampleArgs, DensityArgs, FieldArgs, Format, Mode, OutputArgs, RamsayArgs};
use crate::failure::Failure;
use crate::parallel;
use crate::report::{to_csv, to_json, CensusJson, CensusRow, Rational, RunConfig, TermList};

/// A rendered report and whether every check in it held.
pub struct Outcome {
    pub bytes: Vec<u8>,
    pub passed: bool,
}

const COUNTEREXAMPLE_MACRO: &str = "@counterexample";

fn field(args: &FieldArgs) -> Result<Field, Failure> {
    Ok(Field::new(args.p, args.k)?)
}

fn resolve_f(text: &str, field: &Field) -> Result<BiPoly, Failure> {
    let f = if text.trim() == COUNTEREXAMPLE_MACRO {
        BiPoly::no_squarefree_example(field)?
    } else {
        parse_bipoly(text, field)?
    };
    if f.is_zero() {
        return Err(Error::ZeroPolynomial.into());
    }
    Ok(f)
}

fn config(command: &'static str, fa: &FieldArgs, field: &Field, f_input: &str, f: &BiPoly, out: &OutputArgs) -> RunConfig {
    let mut c = RunConfig::new(command, fa.p, fa.k, field.q(), f_input, f.to_string());
    c.limit = out.limit;
    c.format = out.format;
    c.output = out.output.clone();
    c
}

fn is_gate_error(e: &Error) -> bool {
    matches!(e, Error::NotSeparable | Error::ContentNotSquarefree | Error::ConstantInX)
}

#[derive(Serialize)]
struct DensityJson {
    config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
    reports: Vec<CensusJson>,
}

pub fn density(args: &DensityArgs) -> Result<Outcome, Failure> {
    let field = field(&args.field)?;
    let f = resolve_f(&args.f, &field)?;
    let warning = match check_hypotheses(&f) {
        Ok(_) => None,
        Err(e) if args.allow_degenerate && is_gate_error(&e) => {
            Some(format!("hypotheses not met ({e}); no theorem bound applies"))
        }
        Err(e) => return Err(e.into()),
    };
    if args.mode == Mode::Sample && args.samples == 0 {
        return Err(anyhow!("--samples must be at least 1").into());
    }
    let mut cfg = config("density", &args.field, &field, &args.f, &f, &args.out);
    cfg.n = Some(args.n);
    cfg.mode = Some(args.mode);
    cfg.allow_degenerate = Some(args.allow_degenerate);
    if args.mode == Mode::Sample {
        cfg.samples = Some(args.samples);
        cfg.seed = Some(args.seed);
    }

    let mut reports = Vec::new();
    for n in args.n.iter() {
        let bound = match warning {
            None => Some(theorem_bound(&f, n)?),
            Some(_) => None,
        };
        let mut r = match args.mode {
            Mode::Exhaustive => parallel::count_exhaustive(&f, n, args.out.limit, bound)
                .map_err(|e| Failure::from(e).hint("--mode sample avoids the limit"))?,
            Mode::Sample => parallel::count_sample(&f, n, args.samples, args.seed)?,
        };
        r.bound_d = bound;
        reports.push(r);
    }
    let passed = reports.iter().all(|r| r.theorem2_check != Some(false));
    let bytes = match args.out.format {
        Format::Json => to_json(&DensityJson {
            config: cfg,
            warning,
            reports: reports.iter().map(CensusJson::from).collect(),
        })?,
        Format::Csv => {
            let rows: Vec<CensusRow> = reports.iter().map(CensusRow::from).collect();
            to_csv(&cfg, &rows)?
        }
    };
    Ok(Outcome { bytes, passed })
}

#[derive(Serialize)]
struct Verification {
    total: u64,
    bad_direct: u64,
    bad_predicted: u64,
    disagreement_count: usize,
    /// First disagreeing indices (enumeration order), at most 100.
    disagreements: Vec<u64>,
    degree_drop_points: u64,
    exact_expected: bool,
    agreement: bool,
}

#[derive(Serialize)]
struct Checks {
    nontrivial: bool,
    degree_within_bound: bool,
    schmidt: Option<bool>,
    agreement: Option<bool>,
}

#[derive(Serialize)]
struct CertificateJson {
    config: RunConfig,
    f: String,
    n: usize,
    q: u64,
    deg_x: usize,
    height: usize,
    normalized: bool,
    disc_part: TermList,
    res_part: TermList,
    product_degree: u64,
    bound: u64,
    nontrivial: bool,
    zero_count: Option<u64>,
    schmidt_bound: String,
    agreement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<Verification>,
    checks: Checks,
}

pub fn certify_cmd(args: &CertifyArgs) -> Result<Outcome, Failure> {
    if args.out.format != Format::Json {
        return Err(anyhow!("certify writes JSON only").into());
    }
    let field = field(&args.field)?;
    let f = resolve_f(&args.f, &field)?;
    check_hypotheses(&f)?;
    let n = match args.n {
        Some(0) => return Err(anyhow!("--n must be at least 1").into()),
        Some(n) => n,
        None => f.height()? + 1,
    };
    let mut cfg = config("certify", &args.field, &field, &args.f, &f, &args.out);
    cfg.n = Some(crate::args::NRange { start: n, end: n });
    cfg.verify = Some(args.verify);
    cfg.force = Some(args.force);

    let opts = CertifyOptions {
        policy: if args.force { LeadPolicy::Unnormalized } else { LeadPolicy::Strict },
        count_limit: None,
        ..Default::default()
    };
    let mut cert = certify(&f, n, &opts)?;
    let total = monic_count(&field, n).ok().filter(|&t| t <= args.out.limit);
    if let Some(total) = total {
        cert.zero_count = Some(parallel::count_zeros(&cert, &field, total)?);
    }
    let verification = if args.verify {
        let Some(total) = total else {
            return Err(Failure::Overflow(format!(
                "--verify needs q^n = {}^{n} points within the exhaustive limit {}",
                field.q(),
                args.out.limit
            )));
        };
        let r = parallel::verify(&f, &cert, total)?;
        Some(Verification {
            total: r.total,
            bad_direct: r.bad_direct,
            bad_predicted: r.bad_predicted,
            disagreement_count: r.disagreements.len(),
            disagreements: r.disagreements.iter().take(100).copied().collect(),
            degree_drop_points: r.degree_drop_points,
            exact_expected: r.exact_expected,
            agreement: r.agreement(),
        })
    } else {
        None
    };
    let agreement = verification.as_ref().map(|v| v.agreement);
    let checks = Checks {
        nontrivial: cert.nontrivial,
        degree_within_bound: cert.degree_within_bound(),
        schmidt: cert.schmidt_holds(),
        agreement,
    };
    let exact_failed = verification.as_ref().is_some_and(|v| v.exact_expected && !v.agreement);
    let passed = checks.nontrivial && checks.degree_within_bound && checks.schmidt != Some(false) && !exact_failed;
    let json = CertificateJson {
        config: cfg,
        f: cert.f.clone(),
        n,
        q: cert.q,
        deg_x: cert.deg_x,
        height: cert.height,
        normalized: cert.normalized,
        disc_part: (&cert.disc_part).into(),
        res_part: (&cert.res_part).into(),
        product_degree: cert.product_degree,
        bound: cert.bound,
        nontrivial: cert.nontrivial,
        zero_count: cert.zero_count,
        schmidt_bound: cert.schmidt_bound.to_string(),
        agreement,
        verification,
        checks,
    };
    Ok(Outcome {
        bytes: to_json(&json)?,
        passed,
    })
}

#[derive(Serialize)]
struct FactorJson {
    prime: String,
    degree: usize,
    rho: u64,
    factor: Rational,
}

#[derive(Serialize)]
struct EmpiricalJson {
    n: usize,
    total: u64,
    squarefree: u64,
    density: Rational,
    difference: Rational,
}

#[derive(Serialize)]
struct RamsayJson {
    config: RunConfig,
    f: String,
    q: u64,
    #[serde(rename = "B")]
    b: usize,
    primitive: bool,
    local_factors: Vec<FactorJson>,
    c_f_truncated: Rational,
    tail_bound: Rational,
    tail_derivation: String,
    empirical: Vec<EmpiricalJson>,
}

#[derive(Serialize)]
struct RamsayRow {
    kind: &'static str,
    label: String,
    rho: Option<u64>,
    num: String,
    den: String,
    value: f64,
}

impl RamsayRow {
    fn new(kind: &'static str, label: String, rho: Option<u64>, r: &Rational) -> Self {
        Self {
            kind,
            label,
            rho,
            num: r.num.clone(),
            den: r.den.clone(),
            value: r.approx,
        }
    }
}

pub fn ramsay(args: &RamsayArgs) -> Result<Outcome, Failure> {
    if args.b == 0 {
        return Err(anyhow!("--B must be at least 1").into());
    }
    let field = field(&args.field)?;
    let f = resolve_f(&args.f, &field)?;
    let mut cfg = config("ramsay", &args.field, &field, &args.f, &f, &args.out);
    cfg.b = Some(args.b);
    cfg.n = args.n;

    let mut report = census::cf_truncated(&f, args.b, args.out.limit)?;
    if let Some(range) = args.n {
        for n in range.iter() {
            let c = parallel::count_exhaustive(&f, n, args.out.limit, None)?;
            report.empirical.push(census::EmpiricalDensity {
                n,
                total: c.total,
                squarefree: c.squarefree,
            });
        }
    }
    let differences = report.differences();
    let json = RamsayJson {
        config: cfg,
        f: report.f.clone(),
        q: report.q,
        b: report.max_degree,
        primitive: report.primitive,
        local_factors: report
            .local_factors
            .iter()
            .map(|lf| FactorJson {
                prime: lf.prime.to_string(),
                degree: lf.prime.degree().unwrap_or(0),
                rho: lf.rho,
                factor: (&lf.factor).into(),
            })
            .collect(),
        c_f_truncated: (&report.c_f_truncated).into(),
        tail_bound: (&report.tail_bound).into(),
        tail_derivation: report.tail_derivation.clone(),
        empirical: report
            .empirical
            .iter()
            .zip(&differences)
            .map(|(e, (_, d))| EmpiricalJson {
                n: e.n,
                total: e.total,
                squarefree: e.squarefree,
                density: (&e.ratio()).into(),
                difference: d.into(),
            })
            .collect(),
    };
    let bytes = match args.out.format {
        Format::Json => to_json(&json)?,
        Format::Csv => {
            let mut rows = Vec::new();
            for lf in &json.local_factors {
                rows.push(RamsayRow::new("factor", lf.prime.clone(), Some(lf.rho), &lf.factor));
            }
            rows.push(RamsayRow::new("product", "c_f_truncated".into(), None, &json.c_f_truncated));
            rows.push(RamsayRow::new("tail_bound", "tail_bound".into(), None, &json.tail_bound));
            for e in &json.empirical {
                rows.push(RamsayRow::new("density", e.n.to_string(), None, &e.density));
                rows.push(RamsayRow::new("difference", e.n.to_string(), None, &e.difference));
            }
            to_csv(&json.config, &rows)?
        }
    };
    Ok(Outcome { bytes, passed: true })
}

#[derive(Serialize)]
struct DegreeRow {
    n: usize,
    total: u64,
    divisible: u64,
    squarefree: u64,
}

#[derive(Serialize)]
struct WitnessJson {
    prime: String,
    rho: u64,
    norm_sq: u64,
}

#[derive(Serialize)]
struct CounterexampleJson {
    config: RunConfig,
    f: String,
    q: u64,
    deg_x: usize,
    primitive: bool,
    separable: bool,
    divisor: String,
    per_degree: Vec<DegreeRow>,
    checked: u64,
    /// Residues `C` mod the divisor with `f(C) = 0`, out of `residue_count`.
    residue_roots: u64,
    residue_count: u64,
    witnesses: Vec<WitnessJson>,
    passed: bool,
}

pub fn counterexample(args: &CounterexampleArgs) -> Result<Outcome, Failure> {
    let field = field(&args.field)?;
    let q = field.q();
    if args.max_n == 0 {
        return Err(anyhow!("--max-n must be at least 1").into());
    }
    let f = BiPoly::no_squarefree_example(&field)?;
    let mut cfg = config("counterexample", &args.field, &field, COUNTEREXAMPLE_MACRO, &f, &args.out);
    cfg.max_n = Some(args.max_n);

    let tq_t = UniPoly::monomial(&field, field.one(), q as usize).sub(&UniPoly::var(&field));
    let divisor = tq_t.pow(2);
    // every residue mod (t^q - t)^2 being a root covers all a at once
    let residue_count = monic_count(&field, 2 * q as usize)?;
    if residue_count > args.out.limit {
        return Err(Failure::Overflow(format!(
            "checking all residues mod (t^q - t)^2 needs q^(2q) = {residue_count} evaluations, above the exhaustive limit {}",
            args.out.limit
        )));
    }
    let residue_roots = census::rho(&f, &divisor, args.out.limit)?;

    let mut per_degree = Vec::new();
    for n in 1..=args.max_n {
        let total = census::exhaustive_total(&f, n, args.out.limit)?;
        let mut divisible = 0;
        for a in ffsqfree_core::poly::enumerate_monic(&field, n)? {
            if divisor.divides(&f.evaluate(&a))? {
                divisible += 1;
            }
        }
        let squarefree = parallel::count_squarefree(&f, n, total)?;
        per_degree.push(DegreeRow {
            n,
            total,
            divisible,
            squarefree,
        });
    }
    let mut witnesses = Vec::new();
    for gamma in field.elements() {
        let prime = UniPoly::from_coeffs(&field, vec![field.neg(gamma), field.one()]);
        witnesses.push(WitnessJson {
            rho: census::rho(&f, &prime.pow(2), args.out.limit)?,
            prime: prime.to_string(),
            norm_sq: q * q,
        });
    }
    let primitive = f.is_primitive()?;
    let separable = f.is_separable()?;
    let passed = primitive
        && separable
        && residue_roots == residue_count
        && per_degree.iter().all(|r| r.divisible == r.total && r.squarefree == 0)
        && witnesses.iter().all(|w| w.rho == w.norm_sq);
    let json = CounterexampleJson {
        config: cfg,
        f: f.to_string(),
        q,
        deg_x: f.deg_x()?,
        primitive,
        separable,
        divisor: format!("({tq_t})^2"),
        checked: per_degree.iter().map(|r| r.total).sum(),
        per_degree,
        residue_roots,
        residue_count,
        witnesses,
        passed,
    };
    let bytes = match args.out.format {
        Format::Json => to_json(&json)?,
        Format::Csv => to_csv(&json.config, &json.per_degree)?,
    };
    Ok(Outcome { bytes, passed })
}
