use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Square-free values of polynomials over F_q[t]: censuses, hypersurface
/// certificates and local density products.
#[derive(Debug, Parser)]
#[command(name = "ffsqfree", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count a with f(a) square-free, exhaustively or by sampling.
    Density(DensityArgs),
    /// Build the hypersurface certificate for f at degree n (JSON only).
    Certify(CertifyArgs),
    /// Truncated Euler product c_f next to exhaustive densities.
    Ramsay(RamsayArgs),
    /// Check the primitive separable family with no square-free values.
    Counterexample(CounterexampleArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: u64,
    /// Extension degree, q = p^k.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; "-" writes to standard output.
    #[arg(long, default_value = "-")]
    pub output: String,
    /// Largest number of points enumerated exhaustively.
    #[arg(long, env = "FFSQFREE_LIMIT", default_value_t = 1_000_000)]
    pub limit: u64,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Polynomial in x and t, or @counterexample.
    #[arg(long)]
    pub f: String,
    /// Degree n, or an inclusive range a..b.
    #[arg(long)]
    pub n: NRange,
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    pub mode: Mode,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Run even when f is inseparable or has non-square-free content.
    #[arg(long)]
    pub allow_degenerate: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub f: String,
    /// Degree n; defaults to Ht(f) + 1, the smallest n without degree drops.
    #[arg(long)]
    pub n: Option<usize>,
    /// Compare the certificate with direct square-free tests on all of M_n.
    #[arg(long)]
    pub verify: bool,
    /// Accept a nonconstant leading coefficient (un-normalized resultant).
    #[arg(long)]
    pub force: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RamsayArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub f: String,
    /// Include primes of degree at most B.
    #[arg(long = "B", visible_alias = "max-prime-degree")]
    pub b: usize,
    /// Degrees for the empirical densities.
    #[arg(long)]
    pub n: Option<NRange>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CounterexampleArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sample,
}

/// `n` or the inclusive range `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: usize,
    pub end: usize,
}

impl NRange {
    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid degree {t:?}"))
        };
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b)?),
            None => {
                let n = num(s)?;
                (n, n)
            }
        };
        if start == 0 {
            return Err("degrees start at 1".into());
        }
        if start > end {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Self { start, end })
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}", self.start, self.end)
        }
    }
}

impl Serialize for NRange {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_range() {
        assert_eq!("3".parse::<NRange>().unwrap(), NRange { start: 3, end: 3 });
        assert_eq!("2..8".parse::<NRange>().unwrap(), NRange { start: 2, end: 8 });
        assert!("0".parse::<NRange>().is_err());
        assert!("5..2".parse::<NRange>().is_err());
        assert!("x".parse::<NRange>().is_err());
        assert_eq!("2..8".parse::<NRange>().unwrap().to_string(), "2..8");
    }

    #[test]
    fn clap_definition() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
