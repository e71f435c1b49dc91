//! Command-line front end: transforms, inverse coefficients, norms, dual
//! membership, condition checks, mapping checks, and parameter factories,
//! all file-driven.
//!
//! Exit codes: 0 success (and holds-up-to-bound for check commands), 1
//! divergence suspected, 2 validation or usage error, 3 inconclusive.
//! Results go to stdout, diagnostics to stderr. Scalars print with 9
//! significant digits; sequence files carry full precision.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use seqspace::duals::{
    dual_membership, evaluate_condition, matrix_map_check, ConditionId, DualKind, EvalBounds,
    MapTarget, MatrixFile, SpaceKind, VerdictStatus,
};
use seqspace::io::{format_sequence, load_params, load_sequence, ParamsFile, SequenceFormat};
use seqspace::norms::{
    luxemburg_norm, modular, paranorm_h, paranorm_h_tilde, NormResult,
};
use seqspace::triangle::{
    forward_transform, inverse_coeffs, inverse_coeffs_via_det, inverse_transform,
};
use seqspace::{ExponentSequence, FiniteSequence, GeneralizedMeansParams};

#[derive(Parser)]
#[command(name = "seqspace", version, about = "Generalized-means sequence space toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the forward transform to a sequence file (or invert it).
    Transform(TransformArgs),
    /// Print the inverse coefficients D_0..D_{N-1}.
    Dcoeffs(DcoeffsArgs),
    /// Evaluate a norm or paranorm of a sequence.
    Norm(NormArgs),
    /// Test membership of a sequence in a dual space.
    Dual(DualArgs),
    /// Evaluate one condition from the bank against a matrix.
    CheckCond(CheckCondArgs),
    /// Check a matrix transformation between spaces.
    MapCheck(MapCheckArgs),
    /// Emit parameters for one of the classical special cases.
    Factory(FactoryArgs),
}

#[derive(Args)]
struct TransformArgs {
    /// Parameter file (JSON with keys r, s, t).
    #[arg(long)]
    params: PathBuf,
    /// Input sequence file (CSV or JSON by extension).
    #[arg(long = "in")]
    input: PathBuf,
    /// Apply the inverse transform instead.
    #[arg(long)]
    inverse: bool,
}

#[derive(Args)]
struct DcoeffsArgs {
    #[arg(long)]
    params: PathBuf,
    /// Number of coefficients.
    #[arg(short = 'n', long = "n")]
    n: usize,
    /// Use the literal determinant oracle (n <= 12).
    #[arg(long)]
    oracle: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormKind {
    Htilde,
    H,
    Modular,
    Luxemburg,
}

#[derive(Args)]
struct NormArgs {
    #[arg(long)]
    params: PathBuf,
    /// Exponent sequence file.
    #[arg(long)]
    p: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    kind: NormKind,
    /// Bisection tolerance (luxemburg only).
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum DualKindArg {
    Alpha,
    Beta,
    Gamma,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    L,
    C0,
    C,
    Linf,
}

impl From<SpaceArg> for SpaceKind {
    fn from(v: SpaceArg) -> Self {
        match v {
            SpaceArg::L => SpaceKind::L,
            SpaceArg::C0 => SpaceKind::C0,
            SpaceArg::C => SpaceKind::C,
            SpaceArg::Linf => SpaceKind::Linf,
        }
    }
}

#[derive(Args)]
struct DualArgs {
    #[arg(long)]
    params: PathBuf,
    #[arg(long)]
    p: PathBuf,
    /// Multiplier sequence file.
    #[arg(long)]
    a: PathBuf,
    #[arg(long, value_enum)]
    kind: DualKindArg,
    #[arg(long, value_enum)]
    space: SpaceArg,
    /// Row truncation of the largest diagnostic level.
    #[arg(long)]
    rows: Option<usize>,
    /// Cap for the existential scale search.
    #[arg(long)]
    lmax: Option<u64>,
}

#[derive(Args)]
struct CheckCondArgs {
    /// Condition label, e.g. 4.18.
    #[arg(long)]
    id: String,
    /// Matrix file (entries or generator).
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    p: PathBuf,
    /// Row exponent file (defaults to the constant 1).
    #[arg(long)]
    q: Option<PathBuf>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    lmax: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Linf,
    L1,
    C0q,
    Cq,
    Linfq,
}

impl From<TargetArg> for MapTarget {
    fn from(v: TargetArg) -> Self {
        match v {
            TargetArg::Linf => MapTarget::Linf,
            TargetArg::L1 => MapTarget::L1,
            TargetArg::C0q => MapTarget::C0q,
            TargetArg::Cq => MapTarget::Cq,
            TargetArg::Linfq => MapTarget::Linfq,
        }
    }
}

#[derive(Args)]
struct MapCheckArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    params: PathBuf,
    #[arg(long)]
    p: PathBuf,
    #[arg(long, value_enum)]
    target: TargetArg,
    #[arg(long)]
    q: Option<PathBuf>,
    /// Source space (defaults to l for linf/l1 targets, c0 otherwise).
    #[arg(long, value_enum)]
    source: Option<SpaceArg>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    lmax: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FactoryKind {
    Weighted,
    Cesaro,
    Euler,
    Aalpha,
}

#[derive(Args)]
struct FactoryArgs {
    #[arg(long, value_enum)]
    kind: FactoryKind,
    #[arg(long)]
    alpha: Option<f64>,
    /// Weight file for the weighted kind.
    #[arg(long)]
    u: Option<PathBuf>,
    /// Weight file for the weighted kind.
    #[arg(long)]
    v: Option<PathBuf>,
    #[arg(short = 'n', long = "n")]
    n: usize,
}

/// Scalar formatting: 9 significant digits.
fn sig9(v: f64) -> String {
    format!("{v:.8e}")
}

fn load_seq(path: &Path) -> Result<FiniteSequence, seqspace::Error> {
    load_sequence(path, SequenceFormat::from_path(path))
}

fn load_exponents(path: &Path) -> Result<ExponentSequence, seqspace::Error> {
    let seq = load_seq(path)?;
    ExponentSequence::new(seq.into_values())
}

fn load_validated_params(path: &Path) -> Result<GeneralizedMeansParams, seqspace::Error> {
    let (params, _) = load_params(path)?;
    Ok(params)
}

fn bounds_from(rows: Option<usize>, lmax: Option<u64>) -> EvalBounds {
    let mut b = EvalBounds::default();
    if let Some(r) = rows {
        b.rows = r;
        b.cols = r;
    }
    if let Some(l) = lmax {
        b.l_max = l;
    }
    b
}

fn run() -> Result<VerdictStatus, seqspace::Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Transform(args) => {
            let params = load_validated_params(&args.params)?;
            let format = SequenceFormat::from_path(&args.input);
            let x = load_seq(&args.input)?;
            let out = if args.inverse {
                let coeffs = inverse_coeffs(params.s(), x.len())?;
                eprintln!("conditioning: max |D_m| = {}", sig9(coeffs.max_abs()));
                inverse_transform(&params, &x)?
            } else {
                forward_transform(&params, &x)?
            };
            println!("{}", format_sequence(&out, format));
        }
        Command::Dcoeffs(args) => {
            let params = load_validated_params(&args.params)?;
            let coeffs = if args.oracle {
                inverse_coeffs_via_det(params.s(), args.n)?
            } else {
                inverse_coeffs(params.s(), args.n)?
            };
            eprintln!("conditioning: max |D_m| = {}", sig9(coeffs.max_abs()));
            let seq = FiniteSequence::new(coeffs.values().to_vec())?;
            println!("{}", format_sequence(&seq, SequenceFormat::Csv));
        }
        Command::Norm(args) => {
            let params = load_validated_params(&args.params)?;
            let p = load_exponents(&args.p)?;
            let x = load_seq(&args.input)?;
            match args.kind {
                NormKind::Htilde => println!("{}", sig9(paranorm_h_tilde(&params, &p, &x)?)),
                NormKind::H => println!("{}", sig9(paranorm_h(&params, &p, &x)?)),
                NormKind::Modular => println!("{}", sig9(modular(&params, &p, &x)?)),
                NormKind::Luxemburg => {
                    let NormResult {
                        value,
                        iterations,
                        residual,
                    } = luxemburg_norm(&params, &p, &x, args.tol)?;
                    println!("{}", sig9(value));
                    println!("residual {}", sig9(residual));
                    eprintln!("iterations: {iterations}");
                }
            }
        }
        Command::Dual(args) => {
            let params = load_validated_params(&args.params)?;
            let p = load_exponents(&args.p)?;
            let a = load_seq(&args.a)?;
            let kind = match args.kind {
                DualKindArg::Alpha => DualKind::Alpha,
                DualKindArg::Beta => DualKind::Beta,
                DualKindArg::Gamma => DualKind::Gamma,
            };
            let bounds = bounds_from(args.rows, args.lmax);
            let verdict = dual_membership(&a, &params, &p, kind, args.space.into(), &bounds)?;
            println!("{}", serde_json::to_string_pretty(&verdict).expect("json"));
            return Ok(verdict.status);
        }
        Command::CheckCond(args) => {
            let id = ConditionId::from_str(&args.id)?;
            let matrix = MatrixFile::load(&args.matrix)?;
            let p = load_exponents(&args.p)?;
            let q = match &args.q {
                Some(path) => Some(load_exponents(path)?),
                None => None,
            };
            let bounds = bounds_from(args.rows, args.lmax);
            let verdict = evaluate_condition(id, &matrix, &p, q.as_ref(), &bounds)?;
            println!("{}", serde_json::to_string_pretty(&verdict).expect("json"));
            return Ok(verdict.status);
        }
        Command::MapCheck(args) => {
            let matrix = MatrixFile::load(&args.matrix)?;
            let params = load_validated_params(&args.params)?;
            let p = load_exponents(&args.p)?;
            let q = match &args.q {
                Some(path) => Some(load_exponents(path)?),
                None => None,
            };
            let target: MapTarget = args.target.into();
            let source = match args.source {
                Some(s) => s.into(),
                None => match target {
                    MapTarget::Linf | MapTarget::L1 => SpaceKind::L,
                    _ => SpaceKind::C0,
                },
            };
            let bounds = bounds_from(args.rows, args.lmax);
            let report =
                matrix_map_check(&matrix, &params, &p, target, q.as_ref(), source, &bounds)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("json"));
            return Ok(report.status);
        }
        Command::Factory(args) => {
            let params = match args.kind {
                FactoryKind::Weighted => {
                    let u = args
                        .u
                        .as_ref()
                        .ok_or(seqspace::Error::EmptyPrefix { seq: "u" })?;
                    let v = args
                        .v
                        .as_ref()
                        .ok_or(seqspace::Error::EmptyPrefix { seq: "v" })?;
                    let u = load_seq(u)?;
                    let v = load_seq(v)?;
                    let params =
                        seqspace::factories::weighted_mean_params(u.values(), v.values())?;
                    if params.max_truncation() < args.n {
                        return Err(seqspace::Error::LengthMismatch {
                            needed: args.n,
                            available: params.max_truncation(),
                        });
                    }
                    params
                }
                FactoryKind::Cesaro => seqspace::factories::cesaro_params(args.n)?,
                FactoryKind::Euler => {
                    let alpha = args.alpha.ok_or(seqspace::Error::AlphaOutOfRange(f64::NAN))?;
                    seqspace::factories::euler_params(alpha, args.n)?
                }
                FactoryKind::Aalpha => {
                    let alpha = args.alpha.ok_or(seqspace::Error::AlphaOutOfRange(f64::NAN))?;
                    seqspace::factories::a_alpha_params(alpha, args.n)?
                }
            };
            let file = ParamsFile::from_params(&params);
            println!("{}", serde_json::to_string_pretty(&file).expect("json"));
        }
    }
    Ok(VerdictStatus::HoldsUpToBound)
}

fn main() -> ExitCode {
    match run() {
        Ok(status) => ExitCode::from(status.exit_code() as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
