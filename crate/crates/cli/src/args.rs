//! Command-line argument definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::parse::{parse_complex, parse_int_list, parse_uint_list};

/// A whole list given as one argument, such as `2,3,5` or `1..=4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntList(pub Vec<i64>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UintList(pub Vec<u64>);

fn int_list(s: &str) -> Result<IntList, String> {
    parse_int_list(s).map(IntList)
}

fn uint_list(s: &str) -> Result<UintList, String> {
    parse_uint_list(s).map(UintList)
}

#[derive(Parser, Debug)]
#[command(name = "ffcovar", version, about = "Von Mangoldt statistics over F_q[T], characters mod T^m and unitary-group checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Factor a polynomial given as `c0,c1,...,cn@q`.
    Factor(FactorArgs),
    /// Λ_j of a polynomial, by the Möbius form and by the divisor recursion.
    Lambda(LambdaArgs),
    /// L-polynomials of characters mod T^m and the RH check on their zeros.
    Lfun(LfunArgs),
    /// Frobenius spectra of primitive characters, or their ensemble averages.
    Frobenius(FrobeniusArgs),
    /// Exhaustive identity suites over small fields.
    Identities(IdentitiesArgs),
    /// One covariance experiment per prime in --q.
    Covar(CovarArgs),
    /// Monte Carlo check of the ratio theorem on U(N).
    Ratio(RatioArgs),
    /// Monte Carlo checks of the form factor and the H_j covariances.
    #[command(name = "rmt-mc")]
    RmtMc(RmtMcArgs),
    /// Covariance experiment over a full parameter grid.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// key = value file read before the command line; flags win.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Write results here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Recorded in every output row; drives all randomness.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Budget on enumerated polynomials (and tabulated residues).
    #[arg(long, default_value_t = 10_000_000)]
    pub max_enum: u64,
    /// Record wall-clock time in report rows (breaks byte-identical reruns).
    #[arg(long)]
    pub timing: bool,
    /// Distance of an L-root from its critical circle [default: 1e-6].
    #[arg(long)]
    pub tol_root: Option<f64>,
    /// Character orthogonality residual [default: 1e-10].
    #[arg(long)]
    pub tol_orthogonality: Option<f64>,
    /// Spectrum to L-polynomial reconstruction error [default: 1e-6].
    #[arg(long)]
    pub tol_reconstruction: Option<f64>,
    /// L-polynomial coefficients below this count as zero [default: 1e-6].
    #[arg(long)]
    pub tol_coeff_zero: Option<f64>,
    /// Monte Carlo gate in standard errors [default: 5].
    #[arg(long)]
    pub mc_sigmas: Option<f64>,
}

#[derive(Args, Debug)]
pub struct FactorArgs {
    #[arg(long)]
    pub poly: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct LambdaArgs {
    #[arg(long)]
    pub poly: String,
    /// Orders j to evaluate.
    #[arg(long, value_parser = uint_list, default_value = "0..=4")]
    pub j: UintList,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct LfunArgs {
    #[arg(long)]
    pub q: u32,
    /// Modulus T^m.
    #[arg(long)]
    pub m: usize,
    /// A single character id (default: every nontrivial character).
    #[arg(long)]
    pub character: Option<u64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct FrobeniusArgs {
    #[arg(long, value_parser = uint_list, default_value = "5")]
    pub q: UintList,
    /// Modulus T^m for spectra.
    #[arg(long, default_value_t = 4)]
    pub m: usize,
    #[arg(long)]
    pub character: Option<u64>,
    /// Average H_j^(n) conj(H_k^(n)) over even primitive characters mod
    /// T^(M+1) for every q and compare with the U(M−1) value.
    #[arg(long)]
    pub ensemble: bool,
    #[arg(long = "M", default_value_t = 3)]
    pub big_m: usize,
    #[arg(long, default_value_t = 1)]
    pub j: u32,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct IdentitiesArgs {
    #[arg(long, value_parser = uint_list, default_value = "2,3")]
    pub q: UintList,
    #[arg(long, default_value_t = 6)]
    pub max_deg: usize,
    /// Random coprime pairs for the convolution identity.
    #[arg(long, default_value_t = 1000)]
    pub pairs: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct CovarArgs {
    /// 1, 2 or 3.
    #[arg(long)]
    pub experiment: u8,
    #[arg(long, value_parser = uint_list)]
    pub q: UintList,
    #[arg(long)]
    pub n: usize,
    /// Interval size parameter; −1 with experiment 3 selects experiment 2.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub h: i64,
    #[arg(long, default_value_t = 1)]
    pub j: u32,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct RatioArgs {
    #[arg(long = "A", value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Complex64,
    #[arg(long = "B", value_parser = parse_complex, allow_hyphen_values = true)]
    pub b: Complex64,
    #[arg(long = "C", value_parser = parse_complex, allow_hyphen_values = true)]
    pub c: Complex64,
    #[arg(long = "D", value_parser = parse_complex, allow_hyphen_values = true)]
    pub d: Complex64,
    #[arg(long = "N")]
    pub dim: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct RmtMcArgs {
    #[arg(long = "N")]
    pub dim: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Largest trace power n.
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
    /// Largest order j of H_j.
    #[arg(long, default_value_t = 2)]
    pub max_j: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub experiment: u8,
    /// Primes, e.g. `2,3,5` or empty for an empty report.
    #[arg(long, value_parser = uint_list)]
    pub q: UintList,
    #[arg(long, value_parser = uint_list)]
    pub n: UintList,
    #[arg(long, value_parser = int_list, default_value = "0", allow_hyphen_values = true)]
    pub h: IntList,
    #[arg(long, value_parser = uint_list, default_value = "1")]
    pub j: UintList,
    #[arg(long, value_parser = uint_list, default_value = "1")]
    pub k: UintList,
    #[command(flatten)]
    pub common: Common,
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Factor(a) => &a.common,
            Command::Lambda(a) => &a.common,
            Command::Lfun(a) => &a.common,
            Command::Frobenius(a) => &a.common,
            Command::Identities(a) => &a.common,
            Command::Covar(a) => &a.common,
            Command::Ratio(a) => &a.common,
            Command::RmtMc(a) => &a.common,
            Command::Sweep(a) => &a.common,
        }
    }
}
