//! Command-line front end: generate sequence families, verify them against
//! their bounds and study character sums.

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use ffprng::analysis::{exp_sum_elliptic, exp_sum_rational};
use ffprng::bounds::{verify_family, weil_bound, VerificationReport, VerifyConfig};
use ffprng::elliptic::{search_cyclic_curve, Curve, ECFunction};
use ffprng::galois::{Field, Poly};
use ffprng::ratfield::{RatFunction, RationalFunctionField};
use ffprng::seqgen::{Family, Policy, Sequence};

pub const REPORT_SCHEMA: &str = "ffprng-report/1";
pub const SEQUENCES_SCHEMA: &str = "ffprng-sequences/1";
pub const EXPSUM_SCHEMA: &str = "ffprng-expsum/1";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] ffprng::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(ffprng::Error::Precondition(_) | ffprng::Error::InvalidParameter(_) | ffprng::Error::NotPrime(_)) => EXIT_USAGE,
            _ => EXIT_RUNTIME,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionArg {
    Rational,
    Elliptic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// `exhaustive` or `sample:N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Mode {
    Exhaustive,
    Sample(usize),
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => f.write_str("exhaustive"),
            Mode::Sample(n) => write!(f, "sample:{n}"),
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Mode, String> {
        if s == "exhaustive" {
            return Ok(Mode::Exhaustive);
        }
        s.strip_prefix("sample:")
            .and_then(|n| n.parse().ok())
            .map(Mode::Sample)
            .ok_or_else(|| format!("mode must be `exhaustive` or `sample:N`, got `{s}`"))
    }
}

impl From<Mode> for String {
    fn from(m: Mode) -> String {
        m.to_string()
    }
}

impl TryFrom<String> for Mode {
    type Error = String;

    fn try_from(s: String) -> Result<Mode, String> {
        s.parse()
    }
}

/// Family parameters shared by `generate` and `verify`.
#[derive(Clone, Debug, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub construction: ConstructionArg,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub e: usize,
    /// Degree of the pole places.
    #[arg(long)]
    pub d: usize,
    /// Elliptic `t` with `N = q + 1 + t`.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<i64>,
    /// Elliptic pole order cap: functions come from `L(k Q)`.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value = "exhaustive")]
    pub mode: Mode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Degree for the nonlinear complexity check.
    #[arg(long)]
    pub m: Option<u32>,
    /// Pattern arities, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    pub r: Vec<u32>,
    /// Sequence pairs for correlation.
    #[arg(long, default_value_t = 100)]
    pub pairs: usize,
    /// Position vectors per sequence and arity.
    #[arg(long, default_value_t = 50)]
    pub patterns: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct ExpsumArgs {
    #[arg(long, value_enum, default_value_t = ConstructionArg::Rational)]
    pub construction: ConstructionArg,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub e: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<i64>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "command")]
pub enum Command {
    /// Write the sequences of a family.
    Generate(GenerateArgs),
    /// Check a family against its bounds.
    Verify(VerifyArgs),
    /// Compare character sums of random functions with the Weil bound.
    Expsum(ExpsumArgs),
}

/// Parsed command line; serializes to and from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Parser, Serialize, Deserialize)]
#[command(name = "ffprng", version, about = "p-ary sequence families from rational and elliptic function fields")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

/// Builds the family described by `args`.
pub fn build_family(args: &FamilyArgs) -> CliResult<Family> {
    let field = Field::new(args.p, args.e)?;
    let policy = match args.mode {
        Mode::Exhaustive => Policy::Exhaustive,
        Mode::Sample(count) => Policy::Sample { count, seed: args.seed },
    };
    match args.construction {
        ConstructionArg::Rational => {
            if args.t.is_some() {
                return Err(CliError::Usage("--t applies to the elliptic construction only".into()));
            }
            Ok(Family::rational(Arc::new(RationalFunctionField::new(field)), args.d, policy)?)
        }
        ConstructionArg::Elliptic => {
            let t = args.t.ok_or_else(|| CliError::Usage("the elliptic construction needs --t".into()))?;
            let curve = search_cyclic_curve(&field, t)?;
            Ok(Family::elliptic(Arc::new(curve), args.d, args.k, policy)?)
        }
    }
}

pub fn collect_sequences(family: &Family) -> CliResult<Vec<Sequence>> {
    Ok(family.iter().collect::<ffprng::Result<Vec<_>>>()?)
}

const PROVENANCE_COLUMNS: [&str; 11] = [
    "construction",
    "p",
    "e",
    "q",
    "curve",
    "orbit_id",
    "function",
    "pole_place",
    "pole_order",
    "reduced_pole_order",
    "pole_degree",
];

pub fn write_sequences_csv<W: Write>(seqs: &[Sequence], out: W) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    let n = seqs.first().map_or(0, Sequence::len);
    let mut header: Vec<String> = PROVENANCE_COLUMNS.iter().map(|s| s.to_string()).collect();
    header.extend((0..n).map(|j| format!("s{j}")));
    w.write_record(&header)?;
    for s in seqs {
        let pr = &s.provenance;
        let pole = pr.unique_pole();
        let mut row = vec![
            pr.construction.to_string(),
            pr.p.to_string(),
            pr.e.to_string(),
            pr.q.to_string(),
            pr.curve.clone().unwrap_or_default(),
            pr.orbit_id.clone(),
            pr.function.clone(),
            pole.map(|x| x.place.clone()).unwrap_or_default(),
            pole.map(|x| x.order.to_string()).unwrap_or_default(),
            pole.map(|x| x.reduced_order.to_string()).unwrap_or_default(),
            pole.map(|x| x.degree.to_string()).unwrap_or_default(),
        ];
        row.extend(s.digits.iter().map(u32::to_string));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SequencesDocument<'a> {
    schema: &'static str,
    params: &'a FamilyArgs,
    r: u128,
    n: usize,
    sequences: &'a [Sequence],
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    schema: &'static str,
    run: &'a VerifyArgs,
    #[serde(flatten)]
    report: &'a VerificationReport,
    all_pass: bool,
}

fn open_output<'a>(out: &Option<PathBuf>, stdout: &'a mut dyn Write) -> CliResult<Box<dyn Write + 'a>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(stdout),
    })
}

pub fn cmd_generate(args: &GenerateArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let family = build_family(&args.family)?;
    let seqs = collect_sequences(&family)?;
    let mut out = open_output(&args.output.out, stdout)?;
    match args.output.format {
        Format::Csv => write_sequences_csv(&seqs, &mut out)?,
        Format::Json => {
            let doc = SequencesDocument { schema: SEQUENCES_SCHEMA, params: &args.family, r: family.r, n: family.n(), sequences: &seqs };
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(EXIT_PASS)
}

pub fn verify_config(args: &VerifyArgs) -> VerifyConfig {
    VerifyConfig {
        seed: args.family.seed,
        correlation_pairs: args.pairs,
        pattern_arities: args.r.clone(),
        pattern_positions: args.patterns,
        nl_degree: args.m,
        ..VerifyConfig::default()
    }
}

pub fn run_verify(args: &VerifyArgs) -> CliResult<VerificationReport> {
    let family = build_family(&args.family)?;
    let seqs = collect_sequences(&family)?;
    Ok(verify_family(&seqs, &verify_config(args))?)
}

pub fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let report = run_verify(args)?;
    let mut out = open_output(&args.output.out, stdout)?;
    match args.output.format {
        Format::Json => {
            let doc = ReportDocument { schema: REPORT_SCHEMA, run: args, report: &report, all_pass: report.all_pass() };
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["id", "kind", "measured", "bound", "direction", "status", "pass", "flags"])?;
            for c in &report.checks {
                w.write_record([
                    c.id.clone(),
                    c.kind.clone(),
                    c.measured.to_string(),
                    c.bound.to_string(),
                    format!("{:?}", c.direction).to_lowercase(),
                    format!("{:?}", c.status).to_lowercase(),
                    c.pass.to_string(),
                    c.flags.join(";"),
                ])?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(if report.all_pass() { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

/// One sampled function of the character sum study.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpSumRow {
    pub function: String,
    pub places: usize,
    pub magnitude: f64,
    pub bound: f64,
    /// `|sum| / bound`, taken as 1 when both vanish.
    pub ratio: f64,
    pub holds: bool,
}

fn exp_sum_row(function: String, places: usize, magnitude: f64, bound: f64) -> ExpSumRow {
    let tol = ffprng::bounds::TOLERANCE;
    let ratio = if bound.abs() <= tol {
        if magnitude <= tol { 1.0 } else { f64::INFINITY }
    } else {
        magnitude / bound
    };
    ExpSumRow { function, places, magnitude, bound, ratio, holds: magnitude <= bound + tol }
}

fn random_poly<R: Rng>(f: &Field, deg: usize, monic: bool, rng: &mut R) -> Poly {
    let mut c: Vec<_> = (0..=deg).map(|_| f.random(rng)).collect();
    c[deg] = if monic { f.one() } else { loop {
        let a = f.random(rng);
        if !a.is_zero() {
            break a;
        }
    } };
    Poly::from_coeffs(c)
}

/// Random function with a unique pole, of order prime to `p`: a polynomial
/// of degree `k`, or `a / Q^k` with `deg a <= k deg Q` and `Q` not dividing `a`.
pub fn random_unique_pole_function<R: Rng>(rf: &RationalFunctionField, rng: &mut R) -> CliResult<RatFunction> {
    let f = rf.field();
    let p = f.characteristic() as usize;
    loop {
        let k = rng.gen_range(1..=3usize);
        if k % p == 0 {
            continue;
        }
        if rng.gen_ratio(1, 4) {
            return Ok(RatFunction::from_poly(random_poly(f, k, false, rng), f));
        }
        let q = rf.random_place(rng.gen_range(1..=2), rng)?;
        let q = q.poly().expect("finite place");
        let num = random_poly(f, rng.gen_range(0..=k * q.deg() as usize), false, rng);
        if q.divides(&num, f) {
            continue;
        }
        return Ok(RatFunction::new(num, q.pow(k as u32, f), f)?);
    }
}

/// `f = x` followed by `samples - 1` random functions with a unique pole of
/// order prime to `p`.
pub fn expsum_rational(field: &Field, samples: usize, seed: u64) -> CliResult<Vec<ExpSumRow>> {
    let rf = RationalFunctionField::new(field.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(samples);
    let mut first = Some(RatFunction::x(field));
    while rows.len() < samples {
        let z = match first.take() {
            Some(z) => z,
            None => random_unique_pole_function(&rf, &mut rng)?,
        };
        if !rf.is_nondegenerate(&z).nondegenerate {
            return Err(CliError::Core(ffprng::Error::Mismatch(format!("degenerate sample {}", z.label(field)))));
        }
        let poles: Vec<(u64, u64)> = rf
            .pole_divisor(&z)?
            .iter()
            .map(|(place, _)| Ok((rf.reduced_pole_order(&z, place)?, ffprng::divisor::Place::degree(place) as u64)))
            .collect::<ffprng::Result<_>>()?;
        let sum = exp_sum_rational(&z, field)?;
        rows.push(exp_sum_row(z.label(field), sum.places, sum.magnitude(), weil_bound(0, field.order(), &poles)));
    }
    Ok(rows)
}

/// Random non-degenerate functions `(u + v y)/w` on `curve`.
pub fn expsum_elliptic(curve: &Curve, samples: usize, seed: u64) -> CliResult<Vec<ExpSumRow>> {
    let field = curve.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(samples);
    while rows.len() < samples {
        let w = random_poly(&field, rng.gen_range(0..=2), true, &mut rng);
        let u = random_poly(&field, rng.gen_range(0..=3), false, &mut rng);
        let v = if rng.gen_bool(0.5) { random_poly(&field, rng.gen_range(0..=1), false, &mut rng) } else { Poly::zero() };
        let z = ECFunction::new(u, v, w, &field)?;
        if z.is_constant() {
            continue;
        }
        let pole_div = curve.pole_divisor(&z)?;
        let mut poles = Vec::new();
        let mut degenerate = false;
        for (place, _) in pole_div.iter() {
            let m = curve.reduced_pole_order(&z, place)?;
            degenerate |= m % field.characteristic() as u64 == 0;
            poles.push((m, ffprng::divisor::Place::degree(place) as u64));
        }
        if degenerate || poles.is_empty() {
            continue;
        }
        let sum = exp_sum_elliptic(&z, curve)?;
        rows.push(exp_sum_row(z.label(&field), sum.places, sum.magnitude(), weil_bound(1, field.order(), &poles)));
    }
    Ok(rows)
}

pub fn cmd_expsum(args: &ExpsumArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let field = Field::new(args.p, args.e)?;
    let rows = match args.construction {
        ConstructionArg::Rational => expsum_rational(&field, args.samples, args.seed)?,
        ConstructionArg::Elliptic => {
            let t = args.t.ok_or_else(|| CliError::Usage("the elliptic construction needs --t".into()))?;
            expsum_elliptic(&search_cyclic_curve(&field, t)?, args.samples, args.seed)?
        }
    };
    let mut out = open_output(&args.output.out, stdout)?;
    match args.output.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            for row in &rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                schema: &'static str,
                params: &'a ExpsumArgs,
                rows: &'a [ExpSumRow],
            }
            serde_json::to_writer_pretty(&mut out, &Doc { schema: EXPSUM_SCHEMA, params: args, rows: &rows })?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(if rows.iter().all(|r| r.holds) { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

pub fn execute(config: &RunConfig, stdout: &mut dyn Write) -> CliResult<i32> {
    match &config.command {
        Command::Generate(a) => cmd_generate(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Expsum(a) => cmd_expsum(a, stdout),
    }
}

/// Parses `argv` and runs it, returning the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match execute(&config, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
