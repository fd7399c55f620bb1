//! Command-line frontend: `verify` runs the named verification suite,
//! `integrate` evaluates one representation ad hoc, and `lerch` prints a
//! derived rational kernel.
//!
//! Exit codes: 0 = success / all cases passed, 1 = at least one case failed
//! or the engine errored, 2 = usage error. All data goes to stdout;
//! diagnostics go to stderr. Reports embed the engine parameters so any
//! reported number can be reproduced from the report alone; JSON output is
//! byte-identical across runs with the same flags and seed once the
//! timestamp is suppressed with `--no-timestamp`.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cdf::parse_spec;
use crate::constants::CATALAN;
use crate::lerch::{derive_closed_form, CoeffOrder};
use crate::quadrature::{QuadratureResult, MIN_TOL_1D, MIN_TOL_3D};
use crate::representations::registry::{run_registry, CaseReport};
use crate::representations::{
    double_integral, multi_integral, single_integral, EngineParams, RepresentationSpec,
};

#[derive(Parser, Debug)]
#[command(
    name = "catalankit",
    version,
    about = "Derives and numerically verifies integral representations of Catalan's constant"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct EngineFlags {
    /// Output format for reports and results.
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    format: Format,
    /// Base seed for randomized quasi-Monte Carlo runs.
    #[arg(long)]
    seed: Option<u64>,
    /// Absolute tolerance for 1- and 2-dimensional integration
    /// (3-dimensional runs use the same value clamped to its engine floor).
    #[arg(long)]
    tol: Option<f64>,
    /// Quasi-Monte Carlo points per randomization.
    #[arg(long)]
    samples: Option<u64>,
    /// Omit the generation timestamp so JSON output is byte-reproducible.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the built-in verification suite against the reference value.
    Verify {
        /// Glob pattern on case names (`*` any run, `?` one character).
        #[arg(long)]
        filter: Option<String>,
        #[command(flatten)]
        engine: EngineFlags,
    },
    /// Evaluate a single representation and compare it to the reference.
    Integrate {
        /// Which integral family to evaluate.
        #[arg(long, value_enum)]
        rep: RepChoice,
        /// CDF spec for --rep single, or repeated per-axis for --rep multi
        /// (one value replicates across all axes; default rademacher).
        #[arg(long = "cdf")]
        cdf: Vec<String>,
        /// First CDF for --rep double (default rademacher).
        #[arg(long)]
        cdf1: Option<String>,
        /// Second CDF for --rep double (default rademacher).
        #[arg(long)]
        cdf2: Option<String>,
        /// Box scale: one value for --rep double; repeated for the first
        /// r-1 half-widths of --rep multi (the last one is derived).
        #[arg(long = "a")]
        a: Vec<f64>,
        /// Dimension for --rep multi (1..=12).
        #[arg(long)]
        r: Option<usize>,
        #[command(flatten)]
        engine: EngineFlags,
    },
    /// Derive the closed rational kernel of a given order and print it.
    Lerch {
        /// Kernel order (0..=32).
        #[arg(long)]
        n: u32,
        /// Output style.
        #[arg(long, value_enum, default_value_t = Emit::Latex)]
        emit: Emit,
        /// Coefficient order for LaTeX output.
        #[arg(long, value_enum, default_value_t = Order::Ascending)]
        order: Order,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RepChoice {
    Single,
    Double,
    Multi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Latex,
    Json,
    Coeffs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Order {
    Ascending,
    Descending,
}

/// One row of a report, in the documented schema.
#[derive(Serialize, Debug, Clone)]
struct ReportRow {
    case: String,
    method: Option<String>,
    value: Option<f64>,
    expected: f64,
    abs_error: Option<f64>,
    error_estimate: Option<f64>,
    evaluations: Option<u64>,
    seed: Option<u64>,
    pass: bool,
}

#[derive(Serialize, Debug)]
struct Summary {
    total: usize,
    passed: usize,
    failed: usize,
}

/// The full verification report document.
#[derive(Serialize, Debug)]
struct ReportDocument {
    tool: String,
    version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_unix_ms: Option<u64>,
    reference_g: String,
    engine: EngineParams,
    cases: Vec<ReportRow>,
    summary: Summary,
}

fn reference_digits() -> String {
    CATALAN.value().sig_digits(30)
}

fn row_from_report(r: &CaseReport) -> ReportRow {
    match &r.result {
        Ok(q) => ReportRow {
            case: r.name.clone(),
            method: Some(q.method.to_string()),
            value: Some(q.value),
            expected: r.expected,
            abs_error: r.abs_error,
            error_estimate: Some(q.error_estimate),
            evaluations: Some(q.evaluations),
            seed: q.seed,
            pass: r.pass,
        },
        Err(_) => ReportRow {
            case: r.name.clone(),
            method: None,
            value: None,
            expected: r.expected,
            abs_error: None,
            error_estimate: None,
            evaluations: None,
            seed: None,
            pass: false,
        },
    }
}

fn build_document(
    reports: &[CaseReport],
    engine: &EngineParams,
    timestamp: Option<u64>,
) -> ReportDocument {
    let cases: Vec<ReportRow> = reports.iter().map(row_from_report).collect();
    let passed = cases.iter().filter(|c| c.pass).count();
    ReportDocument {
        tool: "catalankit".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        generated_unix_ms: timestamp,
        reference_g: reference_digits(),
        engine: engine.clone(),
        cases,
        summary: Summary {
            total: reports.len(),
            passed,
            failed: reports.len() - passed,
        },
    }
}

/// Full-precision decimal rendering: 17 significant digits round-trip f64.
fn full_digits(v: f64) -> String {
    format!("{v:.16e}")
}

fn engine_header(engine: &EngineParams) -> String {
    let threads = if engine.threads == 0 {
        "auto".to_string()
    } else {
        engine.threads.to_string()
    };
    format!(
        "engine: tol {:e} (1d), {:e} (2d), {:e} (3d); qmc {} samples x {} randomizations, seed {}, threads {}",
        engine.tol_single,
        engine.tol_double,
        engine.tol_triple,
        engine.qmc_samples,
        engine.qmc_randomizations,
        engine.seed,
        threads
    )
}

fn render_markdown(doc: &ReportDocument) -> String {
    let mut out = String::new();
    out.push_str("# catalankit verification report\n\n");
    if let Some(ts) = doc.generated_unix_ms {
        out.push_str(&format!("generated_unix_ms: {ts}\n"));
    }
    out.push_str(&format!("{}\n", engine_header(&doc.engine)));
    out.push_str(&format!("reference: {}\n\n", doc.reference_g));
    out.push_str(
        "| case | method | value | expected | abs_error | error_estimate | evaluations | seed | pass |\n",
    );
    out.push_str("|---|---|---|---|---|---|---|---|---|\n");
    for c in &doc.cases {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
            c.case,
            c.method.as_deref().unwrap_or("-"),
            c.value.map_or("-".into(), full_digits),
            full_digits(c.expected),
            c.abs_error.map_or("-".into(), |e| format!("{e:.3e}")),
            c.error_estimate.map_or("-".into(), |e| format!("{e:.3e}")),
            c.evaluations.map_or("-".into(), |e| e.to_string()),
            c.seed.map_or("-".into(), |s| s.to_string()),
            if c.pass { "yes" } else { "NO" },
        ));
    }
    out.push_str(&format!(
        "\npassed {}/{}\n",
        doc.summary.passed, doc.summary.total
    ));
    out
}

fn render_csv(doc: &ReportDocument) -> String {
    let mut out = String::new();
    if let Some(ts) = doc.generated_unix_ms {
        out.push_str(&format!("# generated_unix_ms: {ts}\n"));
    }
    out.push_str(&format!("# {}\n", engine_header(&doc.engine)));
    out.push_str(&format!("# reference: {}\n", doc.reference_g));
    out.push_str("case,method,value,expected,abs_error,error_estimate,evaluations,seed,pass\n");
    for c in &doc.cases {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            c.case,
            c.method.as_deref().unwrap_or(""),
            c.value.map_or(String::new(), full_digits),
            full_digits(c.expected),
            c.abs_error.map_or(String::new(), full_digits),
            c.error_estimate.map_or(String::new(), full_digits),
            c.evaluations.map_or(String::new(), |e| e.to_string()),
            c.seed.map_or(String::new(), |s| s.to_string()),
            c.pass,
        ));
    }
    out
}

fn render_json(doc: &ReportDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serialization cannot fail");
    s.push('\n');
    s
}

fn render(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => render_json(doc),
        Format::Csv => render_csv(doc),
        Format::Markdown => render_markdown(doc),
    }
}

fn now_ms() -> u64 {
    use std::time::{SystemTime, UNIX_EPOCH};
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

/// Applies flag overrides to the default engine parameters; rejects values
/// below the engine floors with a usage error.
fn resolve_engine(flags: &EngineFlags) -> Result<EngineParams, String> {
    let mut params = EngineParams::default();
    if let Some(tol) = flags.tol {
        if !(tol >= MIN_TOL_1D && tol.is_finite()) {
            return Err(format!(
                "--tol must be finite and at least {MIN_TOL_1D:e}, got {tol:e}"
            ));
        }
        params.tol_single = tol;
        params.tol_double = tol;
        params.tol_triple = tol.max(MIN_TOL_3D);
    }
    if let Some(seed) = flags.seed {
        params.seed = seed;
    }
    if let Some(samples) = flags.samples {
        if samples == 0 {
            return Err("--samples must be positive".into());
        }
        params.qmc_samples = samples;
    }
    Ok(params)
}

fn cmd_verify(filter: Option<&str>, engine: &EngineFlags) -> i32 {
    let params = match resolve_engine(engine) {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let reports = run_registry(filter, &params);
    if reports.is_empty() {
        if let Some(pat) = filter {
            eprintln!("warning: filter '{pat}' matched no cases");
        }
    }
    for r in &reports {
        if let Err(e) = &r.result {
            eprintln!("error: case {} did not produce a value: {e}", r.name);
        }
    }
    let timestamp = if engine.no_timestamp {
        None
    } else {
        Some(now_ms())
    };
    let doc = build_document(&reports, &params, timestamp);
    print!("{}", render(&doc, engine.format));
    exit_code_for(&reports)
}

/// 0 when every executed case passed (vacuously true for an empty report).
fn exit_code_for(reports: &[CaseReport]) -> i32 {
    if reports.iter().all(|r| r.pass) {
        0
    } else {
        1
    }
}

/// Ad-hoc integration output: one result compared against the reference.
#[derive(Serialize, Debug)]
struct IntegrateOutput {
    representation: String,
    method: String,
    value: f64,
    error_estimate: f64,
    abs_error_vs_reference: f64,
    evaluations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_integrate(
    rep: RepChoice,
    cdf: &[String],
    cdf1: Option<&str>,
    cdf2: Option<&str>,
    a: &[f64],
    r: Option<usize>,
    engine: &EngineFlags,
) -> i32 {
    let params = match resolve_engine(engine) {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let label;
    let outcome: Result<QuadratureResult, String> = match rep {
        RepChoice::Single => {
            if cdf.len() > 1 || cdf1.is_some() || cdf2.is_some() || !a.is_empty() || r.is_some() {
                eprintln!(
                    "error: --rep single takes a single optional --cdf and no --cdf1/--cdf2/--a/--r"
                );
                return 2;
            }
            let spec = cdf.first().map_or("rademacher", |s| s.as_str());
            label = format!("single({spec})");
            parse_spec(spec)
                .map_err(|e| e.to_string())
                .and_then(|g| single_integral(&g, params.tol_single).map_err(|e| e.to_string()))
        }
        RepChoice::Double => {
            if !cdf.is_empty() || r.is_some() || a.len() > 1 {
                eprintln!("error: --rep double takes --cdf1, --cdf2 and one --a (not --cdf/--r)");
                return 2;
            }
            let s1 = cdf1.unwrap_or("rademacher");
            let s2 = cdf2.unwrap_or("rademacher");
            let scale = a.first().copied().unwrap_or(1.0);
            label = format!("double({s1}, {s2}, a={scale})");
            let run = || -> Result<QuadratureResult, String> {
                let g1 = parse_spec(s1).map_err(|e| e.to_string())?;
                let g2 = parse_spec(s2).map_err(|e| e.to_string())?;
                double_integral(&g1, &g2, scale, params.tol_double).map_err(|e| e.to_string())
            };
            run()
        }
        RepChoice::Multi => {
            if cdf1.is_some() || cdf2.is_some() {
                eprintln!("error: --rep multi uses repeated --cdf values, not --cdf1/--cdf2");
                return 2;
            }
            let dim = match r.or(if cdf.len() > 1 { Some(cdf.len()) } else { None }) {
                Some(d) if d >= 1 => d,
                _ => {
                    eprintln!("error: --rep multi needs --r (or one --cdf per axis)");
                    return 2;
                }
            };
            let specs: Vec<String> = if cdf.is_empty() {
                vec!["rademacher".into(); dim]
            } else if cdf.len() == 1 {
                vec![cdf[0].clone(); dim]
            } else if cdf.len() == dim {
                cdf.to_vec()
            } else {
                eprintln!(
                    "error: --rep multi with --r {dim} takes 0, 1, or {dim} --cdf values, got {}",
                    cdf.len()
                );
                return 2;
            };
            if !(a.is_empty() || a.len() == dim - 1) {
                eprintln!(
                    "error: --rep multi with --r {dim} takes {} --a values (the last half-width is derived), got {}",
                    dim - 1,
                    a.len()
                );
                return 2;
            }
            let heads: Vec<f64> = if a.is_empty() {
                vec![1.0; dim - 1]
            } else {
                a.to_vec()
            };
            label = format!("multi(r={dim})");
            let run = || -> Result<QuadratureResult, String> {
                let parsed: Result<Vec<_>, _> = specs.iter().map(|s| parse_spec(s)).collect();
                let spec = RepresentationSpec::multi(parsed.map_err(|e| e.to_string())?, &heads)
                    .map_err(|e| e.to_string())?;
                multi_integral(&spec, &params).map_err(|e| e.to_string())
            };
            run()
        }
    };

    match outcome {
        Ok(result) => {
            let reference = CATALAN.to_f64();
            let out = IntegrateOutput {
                representation: label,
                method: result.method.to_string(),
                value: result.value,
                error_estimate: result.error_estimate,
                abs_error_vs_reference: (result.value - reference).abs(),
                evaluations: result.evaluations,
                seed: result.seed,
            };
            match engine.format {
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&out).expect("serialization cannot fail")
                    );
                }
                Format::Csv => {
                    println!(
                        "representation,method,value,error_estimate,abs_error_vs_reference,evaluations,seed"
                    );
                    println!(
                        "{},{},{},{},{},{},{}",
                        out.representation,
                        out.method,
                        full_digits(out.value),
                        full_digits(out.error_estimate),
                        full_digits(out.abs_error_vs_reference),
                        out.evaluations,
                        out.seed.map_or(String::new(), |s| s.to_string()),
                    );
                }
                Format::Markdown => {
                    println!("representation: {}", out.representation);
                    println!("method:         {}", out.method);
                    println!("value:          {}", full_digits(out.value));
                    println!("error_estimate: {:.3e}", out.error_estimate);
                    println!(
                        "abs_error_vs_reference: {:.3e}",
                        out.abs_error_vs_reference
                    );
                    println!("evaluations:    {}", out.evaluations);
                    if let Some(seed) = out.seed {
                        println!("seed:           {seed}");
                    }
                }
            }
            0
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn cmd_lerch(n: u32, emit: Emit, order: Order) -> i32 {
    if n > 32 {
        eprintln!("error: --n must be in 0..=32, got {n}");
        return 2;
    }
    let form = derive_closed_form(n);
    let text = match emit {
        Emit::Latex => {
            let ord = match order {
                Order::Ascending => CoeffOrder::Ascending,
                Order::Descending => CoeffOrder::Descending,
            };
            form.emit_latex(ord)
        }
        Emit::Json => {
            serde_json::to_string(&form.emit_json()).expect("kernel serialization cannot fail")
        }
        Emit::Coeffs => form.emit_coeffs(),
    };
    println!("{text}");
    0
}

/// Parses `args` (including the binary name) and runs the requested command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints --help/--version through the same path; preserve
            // its exit-code convention (0 for those, 2 for usage errors)
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Verify { filter, engine } => cmd_verify(filter.as_deref(), &engine),
        Command::Integrate {
            rep,
            cdf,
            cdf1,
            cdf2,
            a,
            r,
            engine,
        } => cmd_integrate(
            rep,
            &cdf,
            cdf1.as_deref(),
            cdf2.as_deref(),
            &a,
            r,
            &engine,
        ),
        Command::Lerch { n, emit, order } => cmd_lerch(n, emit, order),
    }
}
