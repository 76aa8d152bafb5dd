//! Command-line frontend: construct functions, classify their spectra,
//! run the normality search, evaluate counting bounds, and apply the
//! direct-sum extension.
//!
//! Function sources are given as one positional argument:
//!   fixture:<name>      a named function from the built-in registry
//!   spec:<p>/<n>/<c>:<e>[+<c>:<e>...]   a trace form sum of xi^c * x^e
//!   file:<path>         a truth-table file ("p n" header plus digits)
//!   zero:<p>,<n>        the zero function
//! A bare name is tried as a fixture name.
//!
//! Exit codes: 0 = success (verdict `normal` for the normality command),
//! 3 = verdict `not_normal`, 1 = usage error, 2 = internal inconsistency.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pbent::{
    check_witness, classify_regularity, cubic_density_bound, direct_sum_extend, fixture,
    fixture_names, nonnormal_existence, normality_cap, test_normality, CapKind, Error, ExtField,
    Mode, PAryFunction, SearchOptions, TraceSpec, TraceTerm, Verdict,
};

#[derive(Parser)]
#[command(name = "pbent", version, about = "Exact analysis of p-ary functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Resolve a function source and write its truth table.
    Construct {
        source: String,
        /// Output file; the table goes to standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide bentness, classify regularity, and report dual availability.
    Classify {
        source: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for k-dimensional flats on which the function is constant
    /// (mode `constant`) or affine (mode `affine`).
    Normality {
        source: String,
        /// Dimension of the flats searched for.
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "constant")]
        mode: Mode,
        /// Dimension at which the bottom-up search starts (1 = complete).
        #[arg(long, default_value_t = 1)]
        start_dim: usize,
        /// Worker threads; 0 or 1 forces sequential, default shares a pool.
        #[arg(long)]
        workers: Option<usize>,
        /// Maximum number of witnesses embedded in the report.
        #[arg(long, default_value_t = 64)]
        witness_cap: usize,
        /// Record wall time in the report (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the existence bound for not weakly k-normal functions,
    /// the normality cap, and the cubic density exponent.
    Bounds {
        p: u32,
        n: u64,
        k: u64,
        /// Regularity context for the cap: regular, weakly-regular-not-regular
        /// (wrnr), non-weakly-regular, or unknown.
        #[arg(long, default_value = "unknown")]
        kind: CapKind,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend a function by two variables: g(x, y, z) = f(x) + y*z.
    Extend {
        source: String,
        /// Output file; the table goes to standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_pair(s: &str) -> Result<(u32, usize), Error> {
    let (p, n) = s
        .split_once(',')
        .ok_or_else(|| Error::Format(format!("expected <p>,<n>, got {s:?}")))?;
    let p = p
        .parse::<u32>()
        .map_err(|_| Error::Format(format!("bad prime {p:?}")))?;
    let n = n
        .parse::<usize>()
        .map_err(|_| Error::Format(format!("bad dimension {n:?}")))?;
    Ok((p, n))
}

fn parse_trace_source(s: &str) -> Result<PAryFunction, Error> {
    let mut parts = s.splitn(3, '/');
    let p_tok = parts.next().unwrap_or_default();
    let p = p_tok
        .parse::<u32>()
        .map_err(|_| Error::Format(format!("bad prime {p_tok:?}")))?;
    let n_tok = parts
        .next()
        .ok_or_else(|| Error::Format(format!("spec {s:?} is missing the dimension")))?;
    let n = n_tok
        .parse::<usize>()
        .map_err(|_| Error::Format(format!("bad dimension {n_tok:?}")))?;
    let term_list = parts
        .next()
        .ok_or_else(|| Error::Format(format!("spec {s:?} is missing trace terms")))?;
    let mut terms = Vec::new();
    for tok in term_list.split('+') {
        let (c, e) = tok
            .split_once(':')
            .ok_or_else(|| Error::Format(format!("bad term {tok:?}, expected <c>:<e>")))?;
        terms.push(TraceTerm {
            coeff_exp: c
                .parse()
                .map_err(|_| Error::Format(format!("bad coefficient exponent {c:?}")))?,
            monomial_exp: e
                .parse()
                .map_err(|_| Error::Format(format!("bad monomial exponent {e:?}")))?,
        });
    }
    let field = ExtField::new(p, n)?;
    let spec = TraceSpec::new(&field, terms)?;
    Ok(PAryFunction::from_trace_spec(&spec))
}

fn resolve_source(src: &str) -> Result<PAryFunction, Error> {
    if let Some(name) = src.strip_prefix("fixture:") {
        return fixture(name);
    }
    if let Some(path) = src.strip_prefix("file:") {
        return PAryFunction::from_table_file(path);
    }
    if let Some(spec) = src.strip_prefix("spec:") {
        return parse_trace_source(spec);
    }
    if let Some(rest) = src.strip_prefix("zero:") {
        let (p, n) = parse_pair(rest)?;
        return PAryFunction::zero(p, n);
    }
    fixture(src).map_err(|_| {
        Error::Format(format!(
            "unknown source {src:?}; use fixture:, spec:, file:, zero:, or one of: {}",
            fixture_names().join(", ")
        ))
    })
}

/// Writes to stdout, treating a closed pipe as delivered: the verdict still
/// decides the exit code when the reader (e.g. `head`) stops early.
fn put(s: &str) -> Result<(), Error> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(s.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::from(e)),
        _ => Ok(()),
    }
}

fn write_table(f: &PAryFunction, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => f.to_table_file(path),
        None => put(&f.to_table_string()),
    }
}

fn emit(json: &serde_json::Value, text: &str, format: Format, out: Option<&PathBuf>) -> Result<(), Error> {
    let pretty = serde_json::to_string_pretty(json).expect("report serialization cannot fail");
    if let Some(path) = out {
        std::fs::write(path, pretty.clone() + "\n")?;
        // The machine format went to the file: summarize on stdout.
        return put(text);
    }
    match format {
        Format::Json => put(&(pretty + "\n")),
        Format::Text => put(text),
    }
}

fn cmd_classify(source: &str, format: Format, out: Option<&PathBuf>) -> Result<u8, Error> {
    let f = resolve_source(source)?;
    let verdict = classify_regularity(&f)?;
    let json = serde_json::json!({
        "p": f.p(),
        "n": f.n(),
        "bent": verdict.kind != pbent::RegularityKind::NotBent,
        "kind": verdict.kind.to_string(),
        "zeta": verdict.zeta.map(|z| z.to_string()),
        "bent_dual": verdict.dual.is_some(),
        "pointwise_dual": verdict.pointwise_dual.is_some(),
    });
    let mut text = format!(
        "p={} n={} bent={} kind={}\n",
        f.p(),
        f.n(),
        verdict.kind != pbent::RegularityKind::NotBent,
        verdict.kind
    );
    if let Some(z) = verdict.zeta {
        text.push_str(&format!("zeta={z}\n"));
    }
    text.push_str(&format!(
        "bent_dual={} pointwise_dual={}\n",
        verdict.dual.is_some(),
        verdict.pointwise_dual.is_some()
    ));
    emit(&json, &text, format, out)?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_normality(
    source: &str,
    k: usize,
    mode: Mode,
    start_dim: usize,
    workers: Option<usize>,
    witness_cap: usize,
    timings: bool,
    format: Format,
    out: Option<&PathBuf>,
) -> Result<u8, Error> {
    let f = resolve_source(source)?;
    let opts = SearchOptions {
        start_dim,
        witness_cap,
        workers,
        bent_shortcut: false,
        record_timing: timings,
    };
    let report = test_normality(&f, k, mode, &opts)?;
    // A `normal` verdict must never leave this process unverified.
    for witness in &report.witnesses {
        let flat = witness.to_flat(f.p(), f.n())?;
        if !check_witness(&f, &flat, mode) {
            return Err(Error::Internal(format!(
                "witness failed re-verification: {}",
                witness.to_text()
            )));
        }
    }
    let json = serde_json::to_value(&report).expect("report serialization cannot fail");
    emit(&json, &report.to_text(), format, out)?;
    Ok(match report.verdict {
        Verdict::Normal => 0,
        Verdict::NotNormal => 3,
    })
}

fn cmd_bounds(
    p: u32,
    n: u64,
    k: u64,
    kind: CapKind,
    format: Format,
    out: Option<&PathBuf>,
) -> Result<u8, Error> {
    let bound = nonnormal_existence(p, n, k)?;
    let cap = normality_cap(p, n as usize, kind)?;
    let cubic = cubic_density_bound(p, n, k)?;
    let json = serde_json::json!({
        "p": p,
        "n": n,
        "k": k,
        "exists_nonnormal": bound.exists,
        "exponent": bound.exponent.to_string(),
        "numerator": bound.numerator.to_string(),
        "denominator": bound.denominator.to_string(),
        "normality_cap": cap,
        "cubic_density_exponent": cubic.to_string(),
    });
    let text = format!(
        "p={p} n={n} k={k}\nexists_nonnormal={} (bound p^{} / {})\nnormality_cap={cap}\ncubic_density_exponent={cubic}\n",
        bound.exists, bound.exponent, bound.denominator,
    );
    emit(&json, &text, format, out)?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Construct { source, out } => {
            let f = resolve_source(&source)?;
            write_table(&f, out.as_ref())?;
            Ok(0)
        }
        Command::Classify { source, format, out } => cmd_classify(&source, format, out.as_ref()),
        Command::Normality {
            source,
            k,
            mode,
            start_dim,
            workers,
            witness_cap,
            timings,
            format,
            out,
        } => cmd_normality(
            &source,
            k,
            mode,
            start_dim,
            workers,
            witness_cap,
            timings,
            format,
            out.as_ref(),
        ),
        Command::Bounds { p, n, k, kind, format, out } => {
            cmd_bounds(p, n, k, kind, format, out.as_ref())
        }
        Command::Extend { source, out } => {
            let f = resolve_source(&source)?;
            let g = direct_sum_extend(&f)?;
            write_table(&g, out.as_ref())?;
            Ok(0)
        }
    }
}

/// Usage problems exit 1; verdict-independent internal failures exit 2.
fn error_exit_code(e: &Error) -> u8 {
    match e {
        Error::Internal(_) | Error::SpectrumInconsistency(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit_code(&e))
        }
    }
}
