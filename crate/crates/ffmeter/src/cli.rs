use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ffmeter_core::bounds::SweepContext;
use ffmeter_core::measures::{
    additive_decompose, CarlitzOutcome, CarlitzTable, Measured, MAX_EXACT_ORDER,
};
use ffmeter_core::{Field, Func, MeasureOptions};

use crate::parse::{self, ParseError};
use crate::report::{
    self, CertificatesJson, DecomposeJson, FamilyJson, FieldInfoJson, MeasureJson, SweepReportJson,
};
use crate::runner::{self, RunError, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INAPPLICABLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ffmeter",
    version,
    about = "Complexity measures of self-maps of finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FieldArgs {
    /// Field as `p^n`.
    #[arg(long)]
    field: String,
    /// Defining polynomial, coefficients low to high (`c0,...,cn`).
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long)]
    json: bool,
}

impl OutputArgs {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// `all-funcs`, `all-perms`, `zero-fixing`, `zero-fixing-nonvanishing`,
    /// `zero-fixing-perms`, `sample:COUNT:SEED` or `sample-perms:COUNT:SEED`.
    #[arg(long)]
    space: String,
    #[arg(long, default_value_t = MAX_EXACT_ORDER)]
    exact_crk_max: u32,
    #[arg(long, env = "FFMETER_WORKERS")]
    workers: Option<usize>,
    /// Seed for the field-level random checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random samples per field-level randomised check.
    #[arg(long, default_value_t = 1000)]
    pairs: u32,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Field parameters: modulus, primitive element, basis generator.
    FieldInfo {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// All measures of one function.
    Measure {
        #[command(flatten)]
        field: FieldArgs,
        /// `table:...`, `coeffs:...` or `family:name[:params]`.
        #[arg(long)]
        func: String,
        #[arg(long, default_value_t = MAX_EXACT_ORDER)]
        exact_crk_max: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Additive decomposition `f = g(M(x)) + L(x)`.
    Decompose {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        func: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check bounds over a function space.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        /// `all`, or a comma-separated list of bound ids.
        #[arg(long, default_value = "all")]
        bounds: String,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Statistics and extremal tables over a function space.
    Sweep {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value = "none")]
        bounds: String,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Value table and interpolation polynomial of a named family member.
    Family {
        #[command(flatten)]
        field: FieldArgs,
        /// `name[:params]`, e.g. `carlitz:1,0,1,0` or `indicator:span=1`.
        spec: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Run(#[from] RunError),
    #[error(transparent)]
    Core(#[from] ffmeter_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("output: {0}")]
    Output(String),
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

/// Output document plus exit code.
pub struct Rendered {
    pub stdout: String,
    pub code: i32,
}

/// Parses `argv` (including the program name), runs the command and
/// writes its document to stdout. Diagnostics go to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match render(argv) {
        Ok(r) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(r.stdout.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return EXIT_USAGE;
            }
            r.code
        }
        Err((msg, code)) => {
            if code == EXIT_OK {
                print!("{msg}");
            } else {
                eprintln!("{}", msg.trim_end());
            }
            code
        }
    }
}

/// Like [`run`], but returns the document instead of printing it.
pub fn render<I, T>(argv: I) -> Result<Rendered, (String, i32)>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return Err((e.render().to_string(), code));
        }
    };
    dispatch(cli.command).map_err(|e| (format!("error: {e}"), EXIT_USAGE))
}

fn field_of(args: &FieldArgs) -> Result<Field, CliError> {
    Ok(parse::parse_field(&args.field, args.modulus.as_deref())?)
}

fn emit<T: Serialize>(doc: &T, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(doc)? + "\n"),
        Format::Human => Ok(human(&serde_json::to_value(doc)?)),
        Format::Csv => Err(CliError::Usage(
            "CSV output is only available for `sweep`".into(),
        )),
    }
}

/// `path: value` lines flattened from the JSON document.
fn human(value: &serde_json::Value) -> String {
    fn walk(prefix: &str, v: &serde_json::Value, out: &mut String) {
        use serde_json::Value;
        match v {
            Value::Object(map) => {
                for (k, child) in map {
                    let path = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&path, child, out);
                }
            }
            Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
                let parts: Vec<String> = items.iter().map(scalar).collect();
                out.push_str(&format!("{prefix}: [{}]\n", parts.join(", ")));
            }
            Value::Array(items) => {
                for (i, child) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), child, out);
                }
            }
            other => out.push_str(&format!("{prefix}: {}\n", scalar(other))),
        }
    }
    fn scalar(v: &serde_json::Value) -> String {
        match v {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    walk("", value, &mut out);
    out
}

fn ok(stdout: String) -> Rendered {
    Rendered {
        stdout,
        code: EXIT_OK,
    }
}

fn dispatch(command: Command) -> Result<Rendered, CliError> {
    match command {
        Command::FieldInfo { field, out } => {
            let f = field_of(&field)?;
            Ok(ok(emit(
                &FieldInfoJson { field: (&f).into() },
                out.format(),
            )?))
        }
        Command::Measure {
            field,
            func,
            exact_crk_max,
            out,
        } => {
            let f = field_of(&field)?;
            let g = parse::parse_func(&f, &func)?;
            Ok(ok(emit(&measure(&f, &g, exact_crk_max)?, out.format())?))
        }
        Command::Decompose { field, func, out } => {
            let f = field_of(&field)?;
            let g = parse::parse_func(&f, &func)?;
            let d = additive_decompose(&f, &g)?;
            Ok(ok(emit(&DecomposeJson::new(&f, &g, &d), out.format())?))
        }
        Command::Family { field, spec, out } => {
            let f = field_of(&field)?;
            let family = parse::parse_family(&f, &spec)?;
            let g = ffmeter_core::families::build(&f, &family)?;
            let doc = FamilyJson {
                field: (&f).into(),
                family: spec,
                poly: report::coeffs_spec(&ffmeter_core::poly::interpolate(&f, &g)),
                is_permutation: g.is_permutation(),
                table: g.table().iter().map(|e| e.0).collect(),
            };
            Ok(ok(emit(&doc, out.format())?))
        }
        Command::Verify {
            field,
            bounds,
            sweep,
            out,
        } => {
            if out.format() == Format::Csv {
                return Err(CliError::Usage(
                    "CSV output is only available for `sweep`".into(),
                ));
            }
            run_sweep(&field, &bounds, &sweep, out.format())
        }
        Command::Sweep {
            field,
            bounds,
            sweep,
            out,
        } => run_sweep(&field, &bounds, &sweep, out.format()),
    }
}

fn measure(field: &Field, g: &Func, exact_crk_max: u32) -> Result<MeasureJson, CliError> {
    let cap = exact_crk_max.min(MAX_EXACT_ORDER);
    let table = if g.is_permutation() && field.q() <= cap {
        Some(CarlitzTable::build(field, None)?)
    } else {
        None
    };
    let options = MeasureOptions {
        exact_crk_max: cap,
        carlitz_table: table.as_ref(),
    };
    let m = Measured::new(field, g, options);
    let report = m.report()?;
    let mut certs = CertificatesJson::default();
    if let Some(t) = &table {
        if let CarlitzOutcome::Certified(cert) = t.query(field, g)? {
            certs.carlitz = Some(report::carlitz_params(&cert));
        }
    }
    if g.is_permutation() {
        certs.mobius = Some(m.mobius().into());
    }
    certs.cyclotomic = m.cyclotomic().map(Into::into);
    Ok(MeasureJson::new(field, g, m.poly(), &report, certs))
}

fn run_sweep(
    field_args: &FieldArgs,
    bounds: &str,
    args: &SweepArgs,
    format: Format,
) -> Result<Rendered, CliError> {
    let field = field_of(field_args)?;
    let space = parse::parse_space(&args.space)?;
    let bounds = parse::parse_bounds(bounds)?;
    if args.workers == Some(0) {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    // fail fast on spaces that cannot be enumerated
    SweepContext::new(&field, space, Vec::new(), args.exact_crk_max)?.len()?;
    let cfg = VerifyConfig {
        space,
        bounds,
        exact_crk_max: args.exact_crk_max,
        workers: args.workers,
        seed: args.seed,
        pairs: args.pairs,
    };
    let outcome = runner::verify(&field, &cfg)?;
    let code = outcome.exit_code();
    let stdout = match format {
        Format::Csv => csv_table(&field, &outcome)?,
        other => emit(&SweepReportJson::new(&field, &space, &outcome), other)?,
    };
    Ok(Rendered { stdout, code })
}

/// One row per codimension class.
fn csv_table(field: &Field, outcome: &runner::VerifyOutcome) -> Result<String, CliError> {
    let extremal = SweepReportJson::extremal_rows(field, outcome);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "codim",
        "add_index",
        "functions",
        "min_deg_times_add_index",
        "count_at_min",
        "attains_q",
        "witness",
    ])?;
    for (&codim, &count) in &outcome.sweep.stats.codim_histogram {
        let add = (field.p() as u64).pow(codim).to_string();
        let row: Vec<String> = match extremal.iter().find(|e| e.codim == codim) {
            Some(e) => vec![
                codim.to_string(),
                add,
                count.to_string(),
                e.min_deg_times_add_index.to_string(),
                e.count_at_min.to_string(),
                e.attains_q.to_string(),
                format!(
                    "table:{}",
                    e.witness
                        .iter()
                        .map(u32::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                ),
            ],
            None => vec![
                codim.to_string(),
                add,
                count.to_string(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
            ],
        };
        w.write_record(&row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}
