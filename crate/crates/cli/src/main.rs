//! Command-line surface for the polebound library: coefficient tables,
//! envelope bound tables, verification sweeps, remainder crossover reports,
//! Bessel envelopes and shifted-center coefficient tables, in CSV or JSON.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polebound::{
    bessel_bounds, bessel_j_normalized, bound, build_even_zeta_cache, build_expansion,
    coeff_direct, crossover_report, linspace, reference_value, run_verification, shifted_direct,
    shifted_recursive, CoefficientTable, EnvelopeQuery, EnvelopeTables, FamilyKind,
    RemainderConstants, Side, VerifyConfig,
};

#[derive(Parser)]
#[command(
    name = "polebound",
    version,
    about = "Certified two-sided envelope bounds for tan, sec, cot, cosec and Bessel functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct OutputSpec {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write the table to a file instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Significant digits for serialized numbers (6..=17; 17 round-trips f64)
    #[arg(long, default_value_t = 17)]
    precision: usize,
}

#[derive(Copy, Clone, ValueEnum)]
enum FamilyArg {
    Tan,
    Sec,
    Cot,
    Cosec,
}

impl From<FamilyArg> for FamilyKind {
    fn from(f: FamilyArg) -> FamilyKind {
        match f {
            FamilyArg::Tan => FamilyKind::Tan,
            FamilyArg::Sec => FamilyKind::Sec,
            FamilyArg::Cot => FamilyKind::Cot,
            FamilyArg::Cosec => FamilyKind::Cosec,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum SideArg {
    Lower,
    Upper,
}

#[derive(Copy, Clone, ValueEnum)]
enum MethodArg {
    Closed,
    Direct,
    Both,
}

#[derive(Clone, Copy)]
struct OrderRange {
    lo: usize,
    hi: usize,
}

fn parse_order_range(s: &str) -> Result<OrderRange, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected inclusive range 'a..b', got '{s}'"))?;
    let lo: usize = a.parse().map_err(|_| format!("bad range start '{a}'"))?;
    let hi: usize = b.parse().map_err(|_| format!("bad range end '{b}'"))?;
    if lo > hi {
        return Err(format!("empty order range {lo}..{hi}"));
    }
    Ok(OrderRange { lo, hi })
}

#[derive(Subcommand)]
enum Command {
    /// Emit expansion coefficients for one family, by either or both routes
    Coeffs {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// How many coefficients (1..=20)
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value = "closed")]
        method: MethodArg,
        #[command(flatten)]
        output: OutputSpec,
    },
    /// Tabulate one envelope bound against the reference on a grid
    Table {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Truncation order m >= 0
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum)]
        side: SideArg,
        /// Use the sharpened H/J truncation constant where available
        #[arg(long)]
        sharpened: bool,
        #[arg(long, default_value_t = -0.9, allow_hyphen_values = true)]
        xmin: f64,
        #[arg(long, default_value_t = 0.9, allow_hyphen_values = true)]
        xmax: f64,
        #[arg(long, default_value_t = 19)]
        samples: usize,
        #[command(flatten)]
        output: OutputSpec,
    },
    /// Run the verification sweeps; exits 1 if any check fails
    Verify {
        /// Restrict to these families (comma separated); the default runs all
        /// families plus the crossover, shifted-recursion and Bessel suites
        #[arg(long, value_enum, value_delimiter = ',')]
        families: Option<Vec<FamilyArg>>,
        /// Inclusive envelope order range, e.g. 0..8
        #[arg(long, value_parser = parse_order_range, default_value = "0..8")]
        orders: OrderRange,
        /// Grid points per bracketing sweep
        #[arg(long, default_value_t = 10_001)]
        samples: usize,
        /// Negative control: corrupt one coefficient and expect failure
        #[arg(long, hide = true)]
        inject_corruption: bool,
        #[command(flatten)]
        output: OutputSpec,
    },
    /// Compare the pole-series and Taylor remainders at a truncation order
    Crossover {
        /// Truncation order m (both series keep terms k = 0..m)
        #[arg(long)]
        m: usize,
        /// Explicit grid points in (0, 1); may be repeated
        #[arg(long = "x", allow_hyphen_values = true)]
        xs: Vec<f64>,
        #[arg(long, allow_hyphen_values = true)]
        xmin: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        xmax: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        output: OutputSpec,
    },
    /// Tabulate the Bessel envelope lower/upper pair on a grid
    Bessel {
        /// Bessel order p >= 0
        #[arg(long)]
        p: f64,
        /// Expansion center r in (0, first zero of J_{p+1}]
        #[arg(long)]
        r: f64,
        /// Retained term count N
        #[arg(long)]
        order: usize,
        /// Explicit grid points; may be repeated (default: 21 points in [-r, r])
        #[arg(long = "x", allow_hyphen_values = true)]
        xs: Vec<f64>,
        #[arg(long, allow_hyphen_values = true)]
        xmin: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        xmax: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        output: OutputSpec,
    },
    /// Emit shifted-center coefficients, recursion vs defining sum
    Shifted {
        /// Expansion center r in (0, 1)
        #[arg(long)]
        r: f64,
        /// How many coefficients (1..=64)
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[command(flatten)]
        output: OutputSpec,
    },
}

// ---------------------------------------------------------------------------
// Table serialization: one header row, stable key order, deterministic bytes.
// ---------------------------------------------------------------------------

enum Cell {
    Num(f64),
    Int(i64),
    Str(String),
    Bool(bool),
    Null,
}

/// Significant-digit scientific formatting; 17 digits round-trips f64 exactly.
fn fmt_sig(v: f64, digits: usize) -> String {
    format!("{:.*e}", digits - 1, v)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn render(headers: &[&str], rows: &[Vec<Cell>], spec: &OutputSpec) -> String {
    let mut out = String::new();
    match spec.format {
        Format::Csv => {
            out.push_str(&headers.join(","));
            out.push('\n');
            for row in rows {
                let fields: Vec<String> = row
                    .iter()
                    .map(|c| match c {
                        Cell::Num(v) => fmt_sig(*v, spec.precision),
                        Cell::Int(i) => i.to_string(),
                        Cell::Str(s) => csv_field(s),
                        Cell::Bool(b) => b.to_string(),
                        Cell::Null => String::new(),
                    })
                    .collect();
                out.push_str(&fields.join(","));
                out.push('\n');
            }
        }
        Format::Json => {
            out.push_str("[\n");
            for (i, row) in rows.iter().enumerate() {
                out.push_str("  {");
                for (j, (h, c)) in headers.iter().zip(row).enumerate() {
                    if j > 0 {
                        out.push_str(", ");
                    }
                    let _ = write!(out, "{}: ", json_string(h));
                    match c {
                        Cell::Num(v) => out.push_str(&fmt_sig(*v, spec.precision)),
                        Cell::Int(i) => {
                            let _ = write!(out, "{i}");
                        }
                        Cell::Str(s) => out.push_str(&json_string(s)),
                        Cell::Bool(b) => {
                            let _ = write!(out, "{b}");
                        }
                        Cell::Null => out.push_str("null"),
                    }
                }
                out.push_str(if i + 1 == rows.len() { "}\n" } else { "},\n" });
            }
            out.push_str("]\n");
        }
    }
    out
}

// ---------------------------------------------------------------------------

/// CLI failure: message plus process exit code (2 = usage/domain error).
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

impl From<polebound::Error> for Failure {
    fn from(e: polebound::Error) -> Failure {
        usage(e.to_string())
    }
}

fn emit(headers: &[&str], rows: &[Vec<Cell>], spec: &OutputSpec) -> Result<(), Failure> {
    if !(6..=17).contains(&spec.precision) {
        return Err(usage(format!(
            "--precision must lie in 6..=17, got {}",
            spec.precision
        )));
    }
    let body = render(headers, rows, spec);
    match &spec.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{body}"),
    }
    Ok(())
}

fn grid_from(
    xs: &[f64],
    xmin: Option<f64>,
    xmax: Option<f64>,
    samples: Option<usize>,
    default_range: Option<(f64, f64, usize)>,
) -> Result<Vec<f64>, Failure> {
    if !xs.is_empty() {
        return Ok(xs.to_vec());
    }
    match (xmin, xmax, samples) {
        (Some(a), Some(b), Some(n)) => {
            if n < 1 {
                return Err(usage("--samples must be at least 1"));
            }
            Ok(linspace(a, b, n))
        }
        (None, None, None) => match default_range {
            Some((a, b, n)) => Ok(linspace(a, b, n)),
            None => Err(usage(
                "no grid given: pass --x values or --xmin/--xmax/--samples",
            )),
        },
        _ => Err(usage("--xmin, --xmax and --samples must be given together")),
    }
}

fn cmd_coeffs(
    family: FamilyKind,
    count: usize,
    method: MethodArg,
    output: &OutputSpec,
) -> Result<(), Failure> {
    if count == 0 || count > 20 {
        return Err(usage(format!("--count must lie in 1..=20, got {count}")));
    }
    let rows: Vec<Vec<Cell>> = match method {
        MethodArg::Closed => {
            let cache = build_even_zeta_cache((count / 2).max(1))?;
            let table = CoefficientTable::closed(family, count, &cache)?;
            (1..=count)
                .map(|p| vec![Cell::Int(p as i64), Cell::Num(table.value(p))])
                .collect()
        }
        MethodArg::Direct => (1..=count)
            .map(|p| {
                Ok(vec![
                    Cell::Int(p as i64),
                    Cell::Num(coeff_direct(family, p, 1e-13)?),
                ])
            })
            .collect::<Result<_, Failure>>()?,
        MethodArg::Both => {
            let cache = build_even_zeta_cache((count / 2).max(1))?;
            let table = CoefficientTable::closed(family, count, &cache)?;
            (1..=count)
                .map(|p| {
                    let direct = coeff_direct(family, p, 1e-13)?;
                    Ok(vec![
                        Cell::Int(p as i64),
                        Cell::Num(table.value(p)),
                        Cell::Num(direct),
                        Cell::Num((table.value(p) - direct).abs()),
                    ])
                })
                .collect::<Result<_, Failure>>()?
        }
    };
    let headers: &[&str] = match method {
        MethodArg::Both => &["p", "value", "value_direct", "abs_diff"],
        _ => &["p", "value"],
    };
    emit(headers, &rows, output)
}

#[allow(clippy::too_many_arguments)]
fn cmd_table(
    family: FamilyKind,
    order: usize,
    side: Side,
    sharpened: bool,
    xmin: f64,
    xmax: f64,
    samples: usize,
    output: &OutputSpec,
) -> Result<(), Failure> {
    if samples < 2 {
        return Err(usage("--samples must be at least 2"));
    }
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN inputs
    if !(xmin < xmax) {
        return Err(usage("--xmin must be strictly below --xmax"));
    }
    if !(xmin > -1.0 && xmax < 1.0) {
        return Err(usage(
            "the requested grid must lie inside the valid interval (-1, 1)",
        ));
    }
    if order > 20 {
        return Err(usage(format!("--order must lie in 0..=20, got {order}")));
    }
    let cache = build_even_zeta_cache(((order + 6) / 2).max(2))?;
    let table = CoefficientTable::closed(family, order + 6, &cache)?;
    let constants = family
        .has_sharpened_constants()
        .then(|| RemainderConstants::build(family, order + 2, &table))
        .transpose()?;
    let tables = EnvelopeTables {
        coeffs: &table,
        constants: constants.as_ref(),
    };
    let query = EnvelopeQuery {
        family,
        order,
        side,
        sharpened,
    };
    let mut rows = Vec::with_capacity(samples);
    for x in linspace(xmin, xmax, samples) {
        let b = bound(&query, x, &tables)?;
        let reference = reference_value(family, x)?;
        rows.push(vec![
            Cell::Num(x),
            Cell::Num(b.value),
            Cell::Num(reference),
            Cell::Num(b.value - reference),
        ]);
    }
    emit(&["x", "bound", "reference", "gap"], &rows, output)
}

fn cmd_verify(
    families: Option<Vec<FamilyArg>>,
    orders: OrderRange,
    samples: usize,
    inject_corruption: bool,
    output: &OutputSpec,
) -> Result<bool, Failure> {
    if samples < 3 {
        return Err(usage("--samples must be at least 3"));
    }
    if orders.hi > 16 {
        return Err(usage("--orders end must not exceed 16"));
    }
    let cfg = VerifyConfig {
        families: families.map(|fs| fs.into_iter().map(FamilyKind::from).collect()),
        order_min: orders.lo,
        order_max: orders.hi,
        samples,
        inject_corruption,
    };
    let report = run_verification(&cfg)?;
    let rows: Vec<Vec<Cell>> = report
        .checks
        .iter()
        .map(|c| {
            vec![
                Cell::Str(c.name.clone()),
                Cell::Str(
                    c.family
                        .map(|f| f.name().to_string())
                        .unwrap_or_else(|| "global".into()),
                ),
                Cell::Bool(c.passed),
                Cell::Num(c.worst),
                Cell::Str(c.detail.clone()),
            ]
        })
        .collect();
    emit(
        &["check", "family", "passed", "worst_margin", "detail"],
        &rows,
        output,
    )?;
    for (label, pass, fail) in report.summary() {
        eprintln!("{label}: {pass} passed, {fail} failed");
    }
    Ok(report.all_passed())
}

fn cmd_crossover(
    m: usize,
    xs: &[f64],
    xmin: Option<f64>,
    xmax: Option<f64>,
    samples: Option<usize>,
    output: &OutputSpec,
) -> Result<(), Failure> {
    if m > 50 {
        return Err(usage(format!("--m must lie in 0..=50, got {m}")));
    }
    let grid = grid_from(xs, xmin, xmax, samples, None)?;
    let cache = build_even_zeta_cache(polebound::special::MAX_EVEN_INDEX)?;
    let table = CoefficientTable::closed(FamilyKind::Tan, polebound::coeffs::MAX_ORDER, &cache)?;
    let rows: Vec<Vec<Cell>> = crossover_report(m, &grid, &table, &cache)?
        .into_iter()
        .map(|row| {
            vec![
                Cell::Num(row.x),
                Cell::Num(row.laurent_remainder),
                Cell::Num(row.taylor_remainder),
                Cell::Str(row.winner.name().into()),
            ]
        })
        .collect();
    emit(
        &["x", "laurent_remainder", "taylor_remainder", "winner"],
        &rows,
        output,
    )
}

#[allow(clippy::too_many_arguments)]
fn cmd_bessel(
    p: f64,
    r: f64,
    order: usize,
    xs: &[f64],
    xmin: Option<f64>,
    xmax: Option<f64>,
    samples: Option<usize>,
    output: &OutputSpec,
) -> Result<(), Failure> {
    let exp = build_expansion(p, r, order)?;
    let grid = grid_from(xs, xmin, xmax, samples, Some((-r, r, 21)))?;
    let mut rows = Vec::with_capacity(grid.len());
    for x in grid {
        let (lower, upper) = bessel_bounds(&exp, x)?;
        rows.push(vec![
            Cell::Num(x),
            Cell::Num(lower),
            Cell::Num(bessel_j_normalized(p, x)?),
            Cell::Num(upper),
        ]);
    }
    emit(&["x", "lower", "reference", "upper"], &rows, output)
}

fn cmd_shifted(r: f64, count: usize, output: &OutputSpec) -> Result<(), Failure> {
    if count == 0 || count > 64 {
        return Err(usage(format!("--count must lie in 1..=64, got {count}")));
    }
    let table = shifted_recursive(r, count)?;
    if let Some(diag) = table.diagnostic() {
        eprintln!("note: {diag}");
    }
    let mut rows = Vec::with_capacity(count);
    for p in 1..=count {
        let rec = (p <= table.order_max()).then(|| table.value(p));
        let direct = shifted_direct(
            r,
            p,
            rec.map(|v| (1e-12 * v.abs()).max(1e-14)).unwrap_or(1e-14),
        )?;
        rows.push(vec![
            Cell::Int(p as i64),
            rec.map(Cell::Num).unwrap_or(Cell::Null),
            Cell::Num(direct),
            rec.map(|v| Cell::Num((v - direct).abs()))
                .unwrap_or(Cell::Null),
            Cell::Bool(p <= table.validated_through()),
        ]);
    }
    emit(
        &["p", "recursive", "direct", "abs_diff", "validated"],
        &rows,
        output,
    )
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Coeffs {
            family,
            count,
            method,
            output,
        } => cmd_coeffs(family.into(), count, method, &output).map(|()| true),
        Command::Table {
            family,
            order,
            side,
            sharpened,
            xmin,
            xmax,
            samples,
            output,
        } => cmd_table(
            family.into(),
            order,
            match side {
                SideArg::Lower => Side::Lower,
                SideArg::Upper => Side::Upper,
            },
            sharpened,
            xmin,
            xmax,
            samples,
            &output,
        )
        .map(|()| true),
        Command::Verify {
            families,
            orders,
            samples,
            inject_corruption,
            output,
        } => cmd_verify(families, orders, samples, inject_corruption, &output),
        Command::Crossover {
            m,
            xs,
            xmin,
            xmax,
            samples,
            output,
        } => cmd_crossover(m, &xs, xmin, xmax, samples, &output).map(|()| true),
        Command::Bessel {
            p,
            r,
            order,
            xs,
            xmin,
            xmax,
            samples,
            output,
        } => cmd_bessel(p, r, order, &xs, xmin, xmax, samples, &output).map(|()| true),
        Command::Shifted { r, count, output } => cmd_shifted(r, count, &output).map(|()| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
