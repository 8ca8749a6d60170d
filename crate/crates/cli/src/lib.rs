//! Command-line front end for the `glchain` engine.
//!
//! Exit codes: 0 when everything checked holds, 1 when a verification fails
//! (the report names the counterexample), 2 for usage, configuration or input
//! errors, 3 when a computation would exceed the budget and `--force` is off.

mod render;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use glchain::ideal::{
    BasisDump, Budget, Certificate, ComponentVerdict, DiskCache, IdealError, IdealSpec, MembershipEngine,
    DEFAULT_BUDGET_CELLS,
};
use glchain::ring::{Monomial, Multidegree, Polynomial, PolynomialJson, RingError};
use glchain::verify::{
    default_lemma_cofactors, dimension_stats, verify_all, verify_dkk, verify_lemma, verify_phi, verify_square,
    verify_stability, verify_tail, Context, VerificationReport, VerifyError, DEFAULT_SAMPLE, DEFAULT_SEED,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// JSON schema of verification reports.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Parser, Debug)]
#[command(name = "glchain", version, about = "Exact verifier for the GL-stable ideals I_n over F2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Refuse graded pieces whose echelon matrix needs more bit cells than this.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET_CELLS, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Ignore the budget.
    #[arg(long, global = true)]
    pub force: bool,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory for the on-disk graded-basis cache.
    #[arg(long, global = true, env = "GLCHAIN_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Decide membership of a polynomial given as JSON.
    Member(MemberArgs),
    /// Dimension table of graded pieces.
    Stats(StatsArgs),
    /// Write the reduced basis of one graded piece.
    DumpBasis(DumpArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// w_{n+1} lies outside I_n (rank oracle and cycle-sum replay) but inside I_{n+1}.
    Dkk,
    /// Generator images under all transvections and transpositions stay in I_n.
    Stability,
    /// w_{n+1} * x_{n+2,n+3} lies in I_n.
    Tail,
    /// Products of two generators of I_{n+1} lie in I_n.
    Square,
    /// The derivation identity on a trivalent vertex.
    Lemma,
    /// phi kills the Plucker elements and the cycles, and w_3 is not in I_2.
    Phi,
    /// Every suite for n = 2..=n_max.
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Cycle bound (dkk, stability, tail, square).
    #[arg(long)]
    pub n: Option<usize>,
    /// Upper cycle bound (all: default 4; phi: default 6).
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Vertex truncation N (defaults depend on the suite).
    #[arg(long)]
    pub vertices: Option<usize>,
    /// Seed for sampled suites.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Check all pairs up to this many, sample this many above it.
    #[arg(long, default_value_t = DEFAULT_SAMPLE, value_parser = parse_positive)]
    pub sample: usize,
    /// JSON list of cofactors for the lemma suite, each a list of edges.
    #[arg(long)]
    pub cofactors: Option<PathBuf>,
    /// Attach explicit certificates to positive membership anchors.
    #[arg(long)]
    pub certificate: bool,
}

#[derive(Args, Debug)]
pub struct MemberArgs {
    /// Cycle bound n of the ideal I_n.
    #[arg(long)]
    pub ideal: usize,
    /// Vertex truncation N (default: the polynomial's own N, at least max(4, n)).
    #[arg(long)]
    pub vertices: Option<usize>,
    /// Polynomial JSON file, `-` for stdin.
    #[arg(long)]
    pub poly: PathBuf,
    /// Also produce a cofactor certificate when the element is a member.
    #[arg(long)]
    pub certificate: bool,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    /// Cycle bounds, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Use n = 2..=n_max when --n is absent (default 4).
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Degrees such as `2,2,2,2`, `(2,2,1,1)` or `2^6`; repeatable.
    /// Defaults to (2^m) for m = 3..=7.
    #[arg(long, value_parser = parse_degree)]
    pub degree: Vec<Multidegree>,
}

#[derive(Args, Debug)]
pub struct DumpArgs {
    #[arg(long)]
    pub ideal: usize,
    #[arg(long)]
    pub vertices: Option<usize>,
    #[arg(long, value_parser = parse_degree)]
    pub degree: Multidegree,
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// Accepts `a,b,c`, `(a,b,c)` and the shorthand `v^k` or `(v^k)`.
pub fn parse_degree(s: &str) -> Result<Multidegree, String> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    if let Some((value, count)) = inner.split_once('^') {
        let value: u32 = value.trim().parse().map_err(|e| format!("bad degree {s:?}: {e}"))?;
        let count: usize = count.trim().parse().map_err(|e| format!("bad degree {s:?}: {e}"))?;
        return Ok(Multidegree::constant(value, count));
    }
    Multidegree::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("serialization failed: {0}")]
    Serialize(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        let budget = matches!(
            self,
            CliError::Ideal(IdealError::BudgetExceeded { .. }) | CliError::Verify(VerifyError::Ideal(IdealError::BudgetExceeded { .. }))
        );
        if budget {
            EXIT_BUDGET
        } else {
            EXIT_USAGE
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Rendered output and the exit code it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub code: i32,
}

/// Runs a parsed command, writes its output, and returns the exit code.
/// Errors are printed to stderr.
pub fn run(cli: &Cli) -> i32 {
    let result = match cli.common.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build() {
            Ok(pool) => pool.install(|| execute(cli)),
            Err(e) => Err(CliError::Usage(format!("cannot start {jobs} threads: {e}"))),
        },
        None => execute(cli),
    };
    let written = result.and_then(|out| {
        emit(&out.body, cli.common.out.as_deref())?;
        Ok(out.code)
    });
    match written {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(body: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(io_err(path)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(io_err(Path::new("<stdout>")))
        }
    }
}

/// Runs a parsed command and renders its output without writing it.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let ctx = context(&cli.common)?;
    let format = cli.common.format;
    match &cli.command {
        Command::Verify(args) => {
            let ctx = Context {
                seed: args.seed,
                sample: args.sample,
                certificates: args.certificate,
                ..ctx
            };
            let report = run_suite(&ctx, args)?;
            let code = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
            let body = match format {
                Format::Json => to_json(&report)?,
                Format::Text => render::report_text(&report),
                Format::Csv => return Err(CliError::Usage("csv output is only available for `stats`".into())),
            };
            Ok(Output { body, code })
        }
        Command::Member(args) => member(&ctx, args, format),
        Command::Stats(args) => stats(&ctx, args, format),
        Command::DumpBasis(args) => dump_basis(&ctx, args, format),
    }
}

fn context(common: &Common) -> Result<Context, CliError> {
    let disk = match &common.cache_dir {
        Some(dir) => Some(DiskCache::new(dir).map_err(io_err(dir))?),
        None => None,
    };
    Ok(Context {
        budget: Budget {
            max_cells: common.budget,
            force: common.force,
        },
        disk,
        ..Context::default()
    })
}

fn require_n(args: &VerifyArgs) -> Result<usize, CliError> {
    args.n
        .ok_or_else(|| CliError::Usage(format!("`verify {:?}` needs --n", args.suite).to_lowercase()))
}

fn run_suite(ctx: &Context, args: &VerifyArgs) -> Result<VerificationReport, CliError> {
    Ok(match args.suite {
        Suite::Dkk => verify_dkk(ctx, require_n(args)?, args.vertices)?,
        Suite::Stability => verify_stability(ctx, require_n(args)?, args.vertices)?,
        Suite::Tail => verify_tail(ctx, require_n(args)?, args.vertices)?,
        Suite::Square => verify_square(ctx, require_n(args)?, args.vertices)?,
        Suite::Lemma => {
            let cofactors = match &args.cofactors {
                Some(path) => read_cofactors(path)?,
                None => default_lemma_cofactors(),
            };
            verify_lemma(&cofactors)?
        }
        Suite::Phi => verify_phi(ctx, args.n_max.unwrap_or(6), args.vertices)?,
        Suite::All => {
            if args.vertices.is_some() {
                return Err(CliError::Usage("`verify all` uses each suite's default N; drop --vertices".into()));
            }
            verify_all(ctx, args.n_max.unwrap_or(4))?
        }
    })
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err(path))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io_err(path))
    }
}

fn read_cofactors(path: &Path) -> Result<Vec<Monomial>, CliError> {
    let text = read_input(path)?;
    let lists: Vec<Vec<[usize; 2]>> = serde_json::from_str(&text).map_err(|e| {
        CliError::Usage(format!(
            "{}: expected a list of edge lists at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    lists
        .iter()
        .map(|edges| {
            let pairs: Vec<(usize, usize)> = edges.iter().map(|&[a, b]| (a, b)).collect();
            Monomial::from_pairs(&pairs).map_err(CliError::from)
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct MemberReport {
    spec: IdealSpec,
    element: Polynomial,
    member: bool,
    certified: bool,
    components: Vec<ComponentVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate_checked: Option<bool>,
    elapsed_ms: u64,
}

fn member(ctx: &Context, args: &MemberArgs, format: Format) -> Result<Output, CliError> {
    let start = Instant::now();
    let text = read_input(&args.poly)?;
    let f = PolynomialJson::parse_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", args.poly.display())))?;
    let vertices = args
        .vertices
        .unwrap_or_else(|| f.universe().vertices().max(args.ideal).max(4));
    let spec = IdealSpec::new(args.ideal, vertices)?;
    let engine: MembershipEngine = ctx.engine(spec);
    let verdict = engine.member(&f)?;
    let certificate = if args.certificate && verdict.member {
        engine.certificate(&f)?
    } else {
        None
    };
    let certificate_checked = certificate.as_ref().map(|c| c.proves(&f));
    let report = MemberReport {
        spec,
        element: f,
        member: verdict.member,
        certified: verdict.certified,
        components: verdict.components,
        certificate,
        certificate_checked,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    let body = match format {
        Format::Json => to_json(&report)?,
        Format::Text => render::member_text(
            spec,
            &report.element,
            report.member,
            report.certified,
            &report.components,
            report.certificate.as_ref(),
        ),
        Format::Csv => return Err(CliError::Usage("csv output is only available for `stats`".into())),
    };
    let code = if certificate_checked == Some(false) { EXIT_FAIL } else { EXIT_PASS };
    Ok(Output { body, code })
}

fn stats(ctx: &Context, args: &StatsArgs, format: Format) -> Result<Output, CliError> {
    let ns: Vec<usize> = if args.n.is_empty() {
        (2..=args.n_max.unwrap_or(4)).collect()
    } else {
        args.n.clone()
    };
    if ns.is_empty() {
        return Err(CliError::Usage("no cycle bounds selected".into()));
    }
    let degrees: Vec<Multidegree> = if args.degree.is_empty() {
        (3..=7).map(|m| Multidegree::constant(2, m)).collect()
    } else {
        args.degree.clone()
    };
    let rows = dimension_stats(ctx, &ns, &degrees)?;
    let body = match format {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r).map_err(|e| CliError::Serialize(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Serialize(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Serialize(e.to_string()))?
        }
        Format::Text => render::stats_text(&rows),
    };
    Ok(Output { body, code: EXIT_PASS })
}

fn dump_basis(ctx: &Context, args: &DumpArgs, format: Format) -> Result<Output, CliError> {
    let vertices = args
        .vertices
        .unwrap_or_else(|| args.ideal.max(4).max(args.degree.max_vertex()));
    let spec = IdealSpec::new(args.ideal, vertices)?;
    let basis = ctx.engine(spec).basis(&args.degree)?;
    let dump = BasisDump::from_basis(&basis);
    let body = match format {
        Format::Json => to_json(&dump)?,
        Format::Text => render::dump_text(&dump),
        Format::Csv => return Err(CliError::Usage("csv output is only available for `stats`".into())),
    };
    Ok(Output { body, code: EXIT_PASS })
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Serialize(e.to_string()))?;
    s.push('\n');
    Ok(s)
}
