//! Command-line front end for `asphere-core`.
//!
//! [`run`] parses an argument vector, executes one subcommand and writes the
//! rendered result. Machine-readable output under `--json` follows
//! `schema/asphere-output.v1.schema.json`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use asphere_core::asphericity::KappaReason;
use asphere_core::cyclotomic::Cyclotomic;
use asphere_core::params::{
    cherednik_to_lambda_exact, h_coordinates_exact, lambda_to_cherednik_exact, parse_rational_list,
};
use asphere_core::roots::simple_roots_with_window;
use asphere_core::sweep::{GridAxis, DEFAULT_CAP};
use asphere_core::{
    certify, certify_with_window, find_aspherical_shift, is_totally_aspherical_type_a, simple_roots_of_subsystem,
    sweep, Certificate, CherednikParam, Convention, Error, HCoordinates, LambdaParam, QuiverShape, Rational,
    ShiftResult, SubsystemReport, SweepReport, SweepSpec, TypeAVerdict,
};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_CERTIFIED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "asphere", version, about = "Certify totally aspherical Cherednik parameters for G(l,1,n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Show a parameter in (κ, c), λ and h coordinates
    Convert(ConvertArgs),
    /// Simple roots of the integral affine subsystem of λ
    Subsystem(SubsystemArgs),
    /// Run the sufficient condition for total asphericity
    Check(CheckArgs),
    /// Find an integer shift of λ into the certified locus
    Shift(ShiftArgs),
    /// Exact total-asphericity test for the symmetric group S_n
    Typea(TypeaArgs),
    /// Certify every point of a λ-grid
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Number of vertices of the cyclic quiver; inferred from the parameter when omitted
    #[arg(long)]
    ell: Option<usize>,
    /// Quiver coordinates, e.g. "1/2,0"
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["kappa", "c"])]
    lambda: Option<String>,
    /// Value on the symmetric-group reflections
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<String>,
    /// Values c_1,…,c_{ℓ−1} on the cyclic reflection classes
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Use the k-independent exponent when converting (κ, c) to λ
    #[arg(long)]
    as_printed: bool,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    #[command(flatten)]
    param: ParamArgs,
    /// Rank; decides whether the symmetric-group hyperplane class is present
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SubsystemArgs {
    #[command(flatten)]
    param: ParamArgs,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// δ-level window to enumerate instead of 2·d′
    #[arg(long)]
    window: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    param: ParamArgs,
    #[arg(long)]
    n: usize,
    /// δ-level window to enumerate instead of 2·d′
    #[arg(long)]
    window: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ShiftArgs {
    #[command(flatten)]
    param: ParamArgs,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct TypeaArgs {
    #[arg(long)]
    n: usize,
    /// The single parameter value c
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    ell: usize,
    #[arg(long)]
    n: usize,
    /// One axis per λ-coordinate, "start:step:count" or a bare value, separated by commas
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u128,
    #[arg(long)]
    window: Option<u64>,
    /// Write the report here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

/// A parameter in all three coordinate systems. Coordinates that are not
/// rational are `null` in the rational fields and kept in the `_exact` ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvertOutput {
    pub ell: usize,
    pub n: usize,
    pub convention: Convention,
    pub kappa: Rational,
    pub c: Option<Vec<Rational>>,
    pub c_exact: Vec<Cyclotomic>,
    pub lambda: Option<LambdaParam>,
    pub lambda_exact: Vec<Cyclotomic>,
    pub h: HCoordinates,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorOutput {
    pub error: ErrorBody,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<asphere_core::ParseError> for CliError {
    fn from(e: asphere_core::ParseError) -> Self {
        CliError::Core(e.into())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn body(&self) -> ErrorBody {
        let (kind, message) = match self {
            CliError::Core(e) => (e.kind(), e.to_string()),
            CliError::Usage(m) => ("usage", m.clone()),
            CliError::Io(e) => ("io", e.to_string()),
        };
        ErrorBody { kind: kind.to_string(), message }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_internal() => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        }
    }
}

struct Rendered {
    text: String,
    json: String,
    code: i32,
}

fn rendered<T: Serialize>(value: &T, text: String, code: i32) -> Result<Rendered, CliError> {
    let json = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Rendered { text, json, code })
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let json = argv.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or_default();
            let failure = CliError::Usage(first.trim_start_matches("error: ").to_string());
            if json {
                report_error(&failure, true, out, err);
            } else {
                let _ = write!(err, "{}", e.render());
            }
            return EXIT_INPUT;
        }
    };
    let (json, output) = match &cli.command {
        Command::Convert(a) => (a.json, None),
        Command::Subsystem(a) => (a.json, None),
        Command::Check(a) => (a.json, None),
        Command::Shift(a) => (a.json, None),
        Command::Typea(a) => (a.json, None),
        Command::Sweep(a) => (a.json, a.output.clone()),
    };
    let result = execute(cli.command).and_then(|r| {
        let body = if json { r.json } else { r.text };
        match &output {
            Some(path) => std::fs::write(path, body + "\n")?,
            None => writeln!(out, "{body}")?,
        }
        Ok(r.code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            report_error(&e, json, out, err);
            e.exit_code()
        }
    }
}

fn report_error(e: &CliError, json: bool, out: &mut dyn Write, err: &mut dyn Write) {
    let body = e.body();
    if json {
        let doc = ErrorOutput { error: body };
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap_or_default());
    } else {
        let _ = writeln!(err, "error ({}): {}", body.kind, body.message);
    }
}

fn execute(command: Command) -> Result<Rendered, CliError> {
    match command {
        Command::Convert(a) => convert(a),
        Command::Subsystem(a) => subsystem(a),
        Command::Check(a) => check(a),
        Command::Shift(a) => shift(a),
        Command::Typea(a) => typea(a),
        Command::Sweep(a) => run_sweep(a),
    }
}

fn convention(p: &ParamArgs) -> Convention {
    if p.as_printed {
        Convention::AsPrinted
    } else {
        Convention::Standard
    }
}

fn check_ell(p: &ParamArgs, found: usize) -> Result<usize, CliError> {
    match p.ell {
        Some(ell) if ell != found => Err(Error::LengthMismatch { expected: ell, found }.into()),
        _ => Ok(found),
    }
}

fn cherednik_input(p: &ParamArgs) -> Result<CherednikParam, CliError> {
    let kappa: Rational =
        p.kappa.as_deref().ok_or_else(|| CliError::Usage("give --lambda or --kappa".into()))?.parse()?;
    let c = parse_rational_list(p.c.as_deref().unwrap_or(""))?;
    let ell = check_ell(p, c.len() + 1)?;
    Ok(CherednikParam::new(ell, kappa, c)?)
}

/// λ from either `--lambda` or `--kappa`/`--c`.
fn lambda_input(p: &ParamArgs) -> Result<LambdaParam, CliError> {
    match &p.lambda {
        Some(s) => {
            if p.as_printed {
                return Err(CliError::Usage("--as-printed applies only to (κ, c) input".into()));
            }
            let values = parse_rational_list(s)?;
            check_ell(p, values.len())?;
            Ok(LambdaParam::new(values)?)
        }
        None => {
            let param = cherednik_input(p)?;
            let exact = cherednik_to_lambda_exact(&param, convention(p))?;
            let values =
                exact.iter().map(Cyclotomic::to_rational).collect::<Option<Vec<_>>>().ok_or(Error::NonRational)?;
            Ok(LambdaParam::new(values)?)
        }
    }
}

fn rationals(v: &[Cyclotomic]) -> Option<Vec<Rational>> {
    v.iter().map(Cyclotomic::to_rational).collect()
}

fn show_cyclotomic(v: &[Cyclotomic]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn convert(a: ConvertArgs) -> Result<Rendered, CliError> {
    let conv = convention(&a.param);
    let output = match &a.param.lambda {
        Some(_) => {
            let lambda = lambda_input(&a.param)?;
            let ell = lambda.ell();
            let (kappa, c_exact) = lambda_to_cherednik_exact(&lambda)?;
            let h = h_coordinates_exact(ell, &kappa, &c_exact, a.n)?;
            let lambda_exact = lambda.values().iter().map(|v| Cyclotomic::from_rational(ell, v.clone())).collect();
            ConvertOutput {
                ell,
                n: a.n,
                convention: conv,
                kappa,
                c: rationals(&c_exact),
                c_exact,
                lambda: Some(lambda),
                lambda_exact,
                h,
            }
        }
        None => {
            let param = cherednik_input(&a.param)?;
            let ell = param.ell;
            let lambda_exact = cherednik_to_lambda_exact(&param, conv)?;
            let lambda = rationals(&lambda_exact).map(LambdaParam::new).transpose()?;
            let c_exact: Vec<Cyclotomic> = param.c.iter().map(|v| Cyclotomic::from_rational(ell, v.clone())).collect();
            let h = h_coordinates_exact(ell, &param.kappa, &c_exact, a.n)?;
            ConvertOutput {
                ell,
                n: a.n,
                convention: conv,
                kappa: param.kappa,
                c: Some(param.c),
                c_exact,
                lambda,
                lambda_exact,
                h,
            }
        }
    };
    let mut text = String::new();
    let _ = writeln!(text, "κ = {}", output.kappa);
    match &output.c {
        Some(c) => {
            let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(text, "c = ({})", parts.join(", "));
        }
        None => {
            let _ = writeln!(text, "c = ({}) (not rational)", show_cyclotomic(&output.c_exact));
        }
    }
    match &output.lambda {
        Some(l) => {
            let _ = writeln!(text, "λ = {l}");
        }
        None => {
            let _ = writeln!(text, "λ = ({}) (not rational)", show_cyclotomic(&output.lambda_exact));
        }
    }
    for class in &output.h.classes {
        let _ = writeln!(text, "h[{}] = ({})", class.name, show_cyclotomic(&class.values));
    }
    rendered(&output, text.trim_end().to_string(), EXIT_OK)
}

fn describe_subsystem(text: &mut String, report: &SubsystemReport) {
    let kind = serde_json::to_value(report.kind).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
    let _ = writeln!(
        text,
        "subsystem: {kind}, period {}, {} simple root(s), window {}",
        report.period,
        report.simple_roots.len(),
        report.window
    );
}

fn subsystem(a: SubsystemArgs) -> Result<Rendered, CliError> {
    let lambda = lambda_input(&a.param)?;
    let shape = QuiverShape::new(lambda.ell(), a.n)?;
    let report = match a.window {
        Some(w) => simple_roots_with_window(&shape, &lambda, w)?,
        None => simple_roots_of_subsystem(&shape, &lambda)?,
    };
    let mut text = String::new();
    describe_subsystem(&mut text, &report);
    for root in &report.simple_roots {
        let _ = writeln!(text, "  ({root})");
    }
    rendered(&report, text.trim_end().to_string(), EXIT_OK)
}

fn reason_text(r: Option<KappaReason>) -> &'static str {
    match r {
        Some(KappaReason::InOpenInterval) => "in (-1, 0)",
        Some(KappaReason::Integer) => "integer",
        Some(KappaReason::DenominatorExceedsN) => "denominator exceeds n",
        None => "fails",
    }
}

fn describe_certificate(text: &mut String, cert: &Certificate) {
    let _ = writeln!(text, "verdict: {}", cert.verdict);
    if !cert.is_certified() {
        let _ = writeln!(text, "  (the sufficient condition fails; total asphericity is not decided)");
    }
    let _ = writeln!(text, "λ = {}, κ = {}", cert.lambda, cert.condition2.kappa);
    describe_subsystem(text, &cert.subsystem);
    for c in &cert.condition1.checked_simple_roots {
        let status = if c.holds { "ok" } else { "fails" };
        let _ = writeln!(text, "  ({}): pairing {}, bound {}, {status}", c.root, c.pairing, c.bound);
    }
    if let Some(v) = &cert.condition1.violator {
        let _ = writeln!(text, "violator: ({v})");
    }
    let _ = writeln!(text, "κ condition: {}", reason_text(cert.condition2.reason));
}

fn verdict_code(certified: bool) -> i32 {
    if certified {
        EXIT_OK
    } else {
        EXIT_NOT_CERTIFIED
    }
}

fn describe_typea(v: &TypeAVerdict) -> String {
    if v.totally_aspherical {
        format!("totally aspherical (c = {}, n = {}: {})", v.c, v.n, reason_text(v.reason))
    } else {
        format!("not totally aspherical (c = {}, n = {})", v.c, v.n)
    }
}

fn check(a: CheckArgs) -> Result<Rendered, CliError> {
    if a.param.ell == Some(1) || (a.param.lambda.is_none() && a.param.c.as_deref().is_some_and(|c| c.trim().is_empty()))
    {
        let p = cherednik_input(&a.param)?;
        let verdict = is_totally_aspherical_type_a(&p.kappa, a.n)?;
        let code = verdict_code(verdict.totally_aspherical);
        return rendered(&verdict, describe_typea(&verdict), code);
    }
    let lambda = lambda_input(&a.param)?;
    let cert = match a.window {
        Some(w) => certify_with_window(&lambda, a.n, w)?,
        None => certify(&lambda, a.n)?,
    };
    let mut text = String::new();
    describe_certificate(&mut text, &cert);
    rendered(&cert, text.trim_end().to_string(), verdict_code(cert.is_certified()))
}

fn shift(a: ShiftArgs) -> Result<Rendered, CliError> {
    let lambda = lambda_input(&a.param)?;
    let result: ShiftResult = find_aspherical_shift(&lambda, a.n)?;
    let m: Vec<String> = result.m.iter().map(|v| v.to_string()).collect();
    let targets: Vec<String> = result.targets.iter().map(|v| v.to_string()).collect();
    let mut text = String::new();
    let _ = writeln!(text, "m = ({})", m.join(", "));
    let _ = writeln!(text, "λ′ = {}", result.lambda_prime);
    let _ = writeln!(text, "targets = ({})", targets.join(", "));
    let _ = writeln!(text, "verdict: {}", result.certificate.verdict);
    rendered(&result, text.trim_end().to_string(), verdict_code(result.certificate.is_certified()))
}

fn typea(a: TypeaArgs) -> Result<Rendered, CliError> {
    let c: Rational = a.c.parse()?;
    let verdict = is_totally_aspherical_type_a(&c, a.n)?;
    let code = verdict_code(verdict.totally_aspherical);
    rendered(&verdict, describe_typea(&verdict), code)
}

fn run_sweep(a: SweepArgs) -> Result<Rendered, CliError> {
    let axes = a.grid.split(',').map(str::parse).collect::<Result<Vec<GridAxis>, _>>()?;
    let mut spec = SweepSpec::new(a.ell, a.n, axes);
    spec.cap = a.cap;
    spec.window = a.window;
    let report: SweepReport = sweep(&spec)?;
    let s = &report.summary;
    let mut text = String::new();
    for r in &report.records {
        let kind = serde_json::to_value(r.subsystem.kind)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default();
        let _ = writeln!(text, "{}\t{}\tκ = {}\t{kind}", r.lambda, r.verdict, r.condition2.kappa);
    }
    let _ = writeln!(
        text,
        "{} points: {} certified, {} not certified; subsystems {} empty, {} finite, {} affine",
        s.total, s.certified, s.not_certified, s.empty, s.finite, s.affine
    );
    rendered(&report, text.trim_end().to_string(), EXIT_OK)
}
