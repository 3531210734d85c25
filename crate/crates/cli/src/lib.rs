//! Command-line front end for `epsarith`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use epsarith::io::{self, CoeffOrder, FieldSpec, MatrixFile, SignalFile};
use epsarith::quantize::{self, EpsilonConfig, Norm, Strategy};
use epsarith::signal::{self, VectorSignal};
use epsarith::{ArithOp, Error, FieldElement, NumberField, Rational};
use serde::Serialize;

pub mod demo;

#[derive(Debug, Parser)]
#[command(name = "epsarith", version, about = "Exact arithmetic on rational vectors as elements of Q(α)")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Field specification file (JSON)
    #[arg(long, global = true)]
    pub field: Option<PathBuf>,
    /// Quantization tolerance for real-valued inputs
    #[arg(long, global = true, default_value_t = EpsilonConfig::DEFAULT_EPSILON)]
    pub epsilon: f64,
    #[arg(long, global = true, value_enum, default_value_t = NormArg::Linf)]
    pub norm: NormArg,
    #[arg(long, global = true, value_enum, default_value_t = QuantizerArg::Dyadic)]
    pub quantizer: QuantizerArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Coefficient order of vectors on input and output
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Asc)]
    pub order: OrderArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    L2,
    Linf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantizerArg {
    Dyadic,
    Cf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Asc,
    Desc,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Arithmetic on single field elements
    Vec {
        #[arg(value_enum)]
        op: VecOp,
        /// Vectors as JSON arrays, e.g. "[1,1,-1,-1]"
        #[arg(required = true, num_args = 1..=2, allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Operations on signal files
    Signal {
        #[arg(value_enum)]
        op: SignalOp,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Solve A x = b from matrix files
    Solve {
        #[arg(value_enum)]
        method: SolveMethod,
        matrix: PathBuf,
        rhs: PathBuf,
    },
    /// Rational approximation of a real vector
    Quantize {
        #[arg(allow_hyphen_values = true)]
        vector: String,
    },
    /// Reproduce the worked examples and check them
    Demo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VecOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Conj,
    Inner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignalOp {
    Conv,
    Filter,
    Inner,
    Gram,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveMethod {
    Exact,
    Lsq,
}

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MATH: i32 = 3;
pub const EXIT_FIELD: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliError {
    #[serde(skip)]
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        Self { code: EXIT_PARSE, kind: "parse", message: message.into() }
    }

    /// `{"error": {"kind": ..., "message": ...}}`
    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self }).to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Singular => (EXIT_MATH, "singular"),
            Error::DivisionByZero => (EXIT_MATH, "division_by_zero"),
            Error::DegenerateInnerProduct
            | Error::ZeroGcd
            | Error::NoConvergence(_)
            | Error::MissingNumericRoot(_) => (EXIT_MATH, "math"),
            Error::NotMonic
            | Error::DegreeTooSmall(_)
            | Error::Reducible { .. }
            | Error::IrreducibilityUnverified
            | Error::InvalidConjugation(_) => (EXIT_FIELD, "field"),
            Error::FieldMismatch
            | Error::DimensionMismatch { .. }
            | Error::NonFinite
            | Error::NonPositiveEpsilon
            | Error::Parse(_)
            | Error::Format(_)
            | Error::Shape(_)
            | Error::Invalid(_) => (EXIT_PARSE, "parse"),
        };
        Self { code, kind, message: e.to_string() }
    }
}

impl GlobalOpts {
    pub fn coeff_order(&self) -> CoeffOrder {
        match self.order {
            OrderArg::Asc => CoeffOrder::Ascending,
            OrderArg::Desc => CoeffOrder::Descending,
        }
    }

    pub fn epsilon_config(&self) -> Result<EpsilonConfig, CliError> {
        let norm = match self.norm {
            NormArg::L2 => Norm::L2,
            NormArg::Linf => Norm::Linf,
        };
        let strategy = match self.quantizer {
            QuantizerArg::Dyadic => Strategy::Dyadic,
            QuantizerArg::Cf => Strategy::ContinuedFraction,
        };
        Ok(EpsilonConfig::new(self.epsilon, norm, strategy)?)
    }

    fn load_field(&self) -> Result<Arc<NumberField>, CliError> {
        let path = self.field.as_ref().ok_or_else(|| CliError::parse("--field is required"))?;
        load_field(path)
    }

    fn vector(&self, coeffs: &[Rational]) -> String {
        match self.format {
            Format::Table => io::format_table(coeffs, self.coeff_order()),
            Format::Json => io::format_json(coeffs, self.coeff_order()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

pub fn load_field(path: &Path) -> Result<Arc<NumberField>, CliError> {
    Ok(FieldSpec::parse(&read(path)?)?.build()?)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Runs a parsed command, writing its result to `out`. `Ok(code)` carries
/// the exit status of commands that report rather than fail.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = &cli.global;
    let text = match &cli.command {
        Command::Vec { op, args } => cmd_vec(g, *op, args)?,
        Command::Signal { op, files } => cmd_signal(g, *op, files)?,
        Command::Solve { method, matrix, rhs } => cmd_solve(g, *method, matrix, rhs)?,
        Command::Quantize { vector } => {
            let r = io::parse_real_vector(vector, g.coeff_order())?;
            g.vector(&quantize::quantize(&r, &g.epsilon_config()?))
        }
        Command::Demo => {
            let sqrt23 = match &g.field {
                Some(p) => load_field(p)?,
                None => NumberField::sqrt2_plus_sqrt3(),
            };
            let report = demo::run(&sqrt23);
            let text = match g.format {
                Format::Table => report.to_table(),
                Format::Json => report.to_json(),
            };
            write_out(out, &text)?;
            return Ok(if report.all_passed() { 0 } else { EXIT_MISMATCH });
        }
    };
    write_out(out, &text)?;
    Ok(0)
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    writeln!(out, "{}", text.trim_end_matches('\n'))
        .map_err(|e| CliError { code: EXIT_PARSE, kind: "io", message: e.to_string() })
}

fn cmd_vec(g: &GlobalOpts, op: VecOp, args: &[String]) -> Result<String, CliError> {
    let field = g.load_field()?;
    let cfg = g.epsilon_config()?;
    let vectors = args
        .iter()
        .map(|a| io::parse_real_vector(a, g.coeff_order()))
        .collect::<Result<Vec<_>, _>>()?;
    let binary = matches!(op, VecOp::Add | VecOp::Sub | VecOp::Mul | VecOp::Div | VecOp::Inner);
    let arity = if binary { 2 } else { 1 };
    if vectors.len() != arity {
        return Err(CliError::parse(format!("`vec` needs {arity} vector argument(s)")));
    }
    let lift = |i: usize| quantize::lift(&vectors[i], &field, &cfg);
    let result: FieldElement = match op {
        VecOp::Add => quantize::eps_arith(ArithOp::Add, &vectors[0], &vectors[1], &field, &cfg)?,
        VecOp::Sub => quantize::eps_arith(ArithOp::Sub, &vectors[0], &vectors[1], &field, &cfg)?,
        VecOp::Mul => quantize::eps_arith(ArithOp::Mul, &vectors[0], &vectors[1], &field, &cfg)?,
        VecOp::Div => quantize::eps_arith(ArithOp::Div, &vectors[0], &vectors[1], &field, &cfg)?,
        VecOp::Inv => {
            if quantize::in_zero_range(&vectors[0], &cfg) {
                return Err(Error::DivisionByZero.into());
            }
            lift(0)?.inverse()?
        }
        VecOp::Conj => lift(0)?.conjugate(),
        VecOp::Inner => lift(0)?.inner(&lift(1)?)?,
    };
    Ok(g.vector(result.coeffs()))
}

fn load_signal(g: &GlobalOpts, field: &Arc<NumberField>, path: &Path) -> Result<VectorSignal, CliError> {
    Ok(SignalFile::parse(&read(path)?)?.to_signal(field, g.coeff_order())?)
}

fn cmd_signal(g: &GlobalOpts, op: SignalOp, files: &[PathBuf]) -> Result<String, CliError> {
    let field = g.load_field()?;
    let signals = files
        .iter()
        .map(|p| load_signal(g, &field, p))
        .collect::<Result<Vec<_>, _>>()?;
    let pair = || -> Result<(&VectorSignal, &VectorSignal), CliError> {
        match signals.as_slice() {
            [a, b] => Ok((a, b)),
            _ => Err(CliError::parse("expected exactly two signal files")),
        }
    };
    let order = g.coeff_order();
    Ok(match op {
        SignalOp::Conv => {
            let (a, b) = pair()?;
            to_json(&SignalFile::from_signal(&a.convolve(b)?, order))
        }
        SignalOp::Filter => {
            let (h, s) = pair()?;
            to_json(&SignalFile::from_signal(&h.filter(s)?, order))
        }
        SignalOp::Inner => {
            let (a, b) = pair()?;
            g.vector(a.inner(b)?.coeffs())
        }
        SignalOp::Gram => {
            let out: Vec<SignalFile> = signal::gram_schmidt(&signals)?
                .iter()
                .map(|s| SignalFile::from_signal(s, order))
                .collect();
            to_json(&out)
        }
    })
}

fn cmd_solve(g: &GlobalOpts, method: SolveMethod, matrix: &Path, rhs: &Path) -> Result<String, CliError> {
    let field = g.load_field()?;
    let order = g.coeff_order();
    let a = MatrixFile::parse(&read(matrix)?)?.to_matrix(&field, order)?;
    let b = MatrixFile::parse(&read(rhs)?)?.to_matrix(&field, order)?;
    let x = match method {
        SolveMethod::Exact => a.solve(&b)?,
        SolveMethod::Lsq => a.least_squares(&b)?,
    };
    Ok(to_json(&MatrixFile::from_matrix(&x, order)))
}
