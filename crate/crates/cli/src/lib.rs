//! The `eaqecc` command line: parameter tables, single-code queries,
//! fast-vs-oracle verification, benchmarks and GV scans.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use hermitian_eaqecc::oracle::{c_oracle, delta_oracle};
use hermitian_eaqecc::{
    delta, eaqecc_params, gv_exceeding_range, params_sweep, phi_basis, reduction_bound, Algorithm,
    CurveCtx, DeltaTable, EaqeccParams, Error, PrimePower,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

/// Largest q the oracle handles by default, and with `--slow`.
const ORACLE_MAX_Q: u64 = 5;
const ORACLE_MAX_Q_SLOW: u64 = 8;

#[derive(Debug, Parser)]
#[command(
    name = "eaqecc",
    version,
    about = "Parameters of EAQECCs from one-point Hermitian codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BenchFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Baseline,
    Optimized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchAlgo {
    Baseline,
    Optimized,
    Oracle,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Baseline => Algorithm::Baseline,
            AlgoArg::Optimized => Algorithm::Optimized,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// One row of parameters per m.
    Table {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        #[arg(long)]
        min_m: Option<i64>,
        #[arg(long)]
        max_m: Option<i64>,
    },
    /// Parameters of the code from C(m).
    Params {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// Also print the triangular basis used for Delta(m).
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "optimized")]
        algo: AlgoArg,
    },
    /// Compare Delta and c against explicit linear algebra for every m.
    Verify {
        #[arg(long)]
        q: u64,
        /// Allow q up to 8.
        #[arg(long)]
        slow: bool,
    },
    /// Time a full sweep of Delta(m).
    Bench {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "optimized")]
        algo: BenchAlgo,
        #[arg(long, default_value_t = 1)]
        repeat: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: BenchFormat,
    },
    /// The range of entanglement on which every code exceeds the GV bound.
    GvScan {
        #[arg(long)]
        q: u64,
    },
}

/// A table row; field names are the CSV header and the JSON keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub q: u64,
    pub m: i64,
    pub n: u64,
    pub k_classical: u64,
    pub delta: u64,
    #[serde(rename = "K")]
    pub k: u64,
    pub c: u64,
    pub d_lb: u64,
    pub singleton_defect: i64,
    pub exceeds_gv: bool,
    /// Set flags joined by `;`.
    pub flags: String,
}

impl From<&EaqeccParams> for TableRow {
    fn from(p: &EaqeccParams) -> Self {
        Self {
            q: p.q,
            m: p.m,
            n: p.n,
            k_classical: p.k_classical,
            delta: p.delta,
            k: p.k_logical,
            c: p.c,
            d_lb: p.d_lb,
            singleton_defect: p.singleton_defect,
            exceeds_gv: p.exceeds_gv,
            flags: p.flags.names().join(";"),
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CmdResult = Result<i32, CliError>;

fn curve(q: u64) -> Result<CurveCtx, CliError> {
    let pp = PrimePower::from_q(q)?;
    Ok(CurveCtx::from_prime_power(pp)?)
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Table {
            q,
            format,
            out: path,
            min_m,
            max_m,
        } => cmd_table(q, format, path, min_m, max_m, out),
        Command::Params { q, m, trace, algo } => cmd_params(q, m, trace, algo, out),
        Command::Verify { q, slow } => cmd_verify(q, slow, out),
        Command::Bench {
            q,
            algo,
            repeat,
            format,
        } => cmd_bench(q, algo, repeat, format, out),
        Command::GvScan { q } => cmd_gv_scan(q, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn table_rows(
    ctx: &CurveCtx,
    min_m: i64,
    max_m: i64,
) -> hermitian_eaqecc::Result<Vec<TableRow>> {
    Ok(params_sweep(ctx, min_m, max_m)?
        .iter()
        .map(TableRow::from)
        .collect())
}

pub fn rows_to_csv(rows: &[TableRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("rows serialize to memory");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("CSV is UTF-8")
}

pub fn rows_to_json(rows: &[TableRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

fn cmd_table(
    q: u64,
    format: TableFormat,
    path: Option<std::path::PathBuf>,
    min_m: Option<i64>,
    max_m: Option<i64>,
    out: &mut dyn Write,
) -> CmdResult {
    let ctx = curve(q)?;
    let lo = min_m.unwrap_or(0);
    let hi = max_m.unwrap_or(ctx.max_m() as i64);
    if lo > hi {
        return Err(CliError::Usage(format!(
            "empty range: --min-m {lo} exceeds --max-m {hi}"
        )));
    }
    let rows = table_rows(&ctx, lo, hi)?;
    let text = match format {
        TableFormat::Csv => rows_to_csv(&rows),
        TableFormat::Json => rows_to_json(&rows),
    };
    match path {
        Some(p) => File::create(p)?.write_all(text.as_bytes())?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn cmd_params(q: u64, m: i64, trace: bool, algo: AlgoArg, out: &mut dyn Write) -> CmdResult {
    let ctx = curve(q)?;
    let p = eaqecc_params(&ctx, m)?;
    let d = delta(&ctx, m)?;
    writeln!(out, "{p}")?;
    writeln!(out, "m = {m}")?;
    writeln!(out, "k_classical = {}", p.k_classical)?;
    writeln!(out, "delta = {} ({})", p.delta, d.method.as_str())?;
    writeln!(out, "K = {}", p.k_logical)?;
    writeln!(out, "c = {}", p.c)?;
    writeln!(out, "d_lb = {}", p.d_lb)?;
    writeln!(out, "singleton_defect = {}", p.singleton_defect)?;
    writeln!(out, "exceeds_gv = {}", p.exceeds_gv)?;
    writeln!(out, "flags = {}", p.flags.names().join(";"))?;
    if trace {
        let mp = ctx.m_perp(m)?;
        let traced = m.min(mp);
        if traced < (q * q) as i64 - 1 {
            writeln!(out, "trace: Delta(m) = l({traced}), no reductions needed")?;
        } else {
            let basis = phi_basis(&ctx, traced, algo.into())?;
            let orders: Vec<String> = basis.orders().iter().map(u64::to_string).collect();
            writeln!(out, "trace: Phi({traced}), orders {}", orders.join(","))?;
            writeln!(
                out,
                "reductions = {}, materialized = {}",
                basis.reduction_count, basis.materialized_count
            )?;
            out.write_all(basis.render_table().as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(q: u64, slow: bool, out: &mut dyn Write) -> CmdResult {
    let ctx = curve(q)?;
    let limit = if slow {
        ORACLE_MAX_Q_SLOW
    } else {
        ORACLE_MAX_Q
    };
    if q > limit {
        return Err(CliError::Usage(format!(
            "oracle infeasible for q = {q} (limit {limit}{})",
            if slow { "" } else { ", or 8 with --slow" }
        )));
    }
    let n = ctx.n();
    let mut mismatches = Vec::new();
    let total = ctx.max_m() + 1;
    for m in 0..=ctx.max_m() as i64 {
        let p = eaqecc_params(&ctx, m)?;
        let d_oracle = delta_oracle(&ctx, m)? as u64;
        let c_lin = c_oracle(&ctx, m)? as u64;
        if d_oracle != p.delta || c_lin != n - p.k_classical - p.delta {
            mismatches.push(format!(
                "m={m}: delta {} vs oracle {d_oracle}, c {} vs oracle {c_lin}",
                p.delta, p.c
            ));
        }
    }
    if mismatches.is_empty() {
        writeln!(
            out,
            "q={q}: {total}/{total} values of m agree with the oracle"
        )?;
        Ok(EXIT_OK)
    } else {
        writeln!(
            out,
            "q={q}: {} of {total} values of m disagree",
            mismatches.len()
        )?;
        for line in mismatches {
            writeln!(out, "  {line}")?;
        }
        Ok(EXIT_MISMATCH)
    }
}

#[derive(Debug, Serialize)]
struct BenchReport {
    q: u64,
    algo: &'static str,
    repeat: u32,
    wall_seconds_min: f64,
    wall_seconds_mean: f64,
    reduction_count: usize,
    max_reduction_count_per_m: usize,
    reduction_bound: usize,
    materialized_count: usize,
    deltas: Vec<u64>,
}

fn cmd_bench(
    q: u64,
    algo: BenchAlgo,
    repeat: u32,
    format: BenchFormat,
    out: &mut dyn Write,
) -> CmdResult {
    let ctx = curve(q)?;
    if algo == BenchAlgo::Oracle && q > ORACLE_MAX_Q {
        return Err(CliError::Usage(format!(
            "oracle infeasible for q = {q} (limit {ORACLE_MAX_Q})"
        )));
    }
    let repeat = repeat.max(1);
    let mut times = Vec::with_capacity(repeat as usize);
    let mut report = None;
    for _ in 0..repeat {
        let start = Instant::now();
        let (deltas, reductions, max_per_m, materialized) = match algo {
            BenchAlgo::Oracle => {
                let deltas = (0..=ctx.max_m() as i64)
                    .map(|m| delta_oracle(&ctx, m).map(|d| d as u64))
                    .collect::<hermitian_eaqecc::Result<Vec<_>>>()?;
                (deltas, 0, 0, 0)
            }
            BenchAlgo::Baseline | BenchAlgo::Optimized => {
                let a = if algo == BenchAlgo::Baseline {
                    Algorithm::Baseline
                } else {
                    Algorithm::Optimized
                };
                let table = DeltaTable::with_algorithm(&ctx, a)?;
                let deltas = (0..=ctx.max_m() as i64)
                    .map(|m| table.delta(&ctx, m).map(|d| d.delta))
                    .collect::<hermitian_eaqecc::Result<Vec<_>>>()?;
                let max_per_m = ((q * q) as i64 - 1..=ctx.m_star() as i64)
                    .map(|m| table.reduction_count(&ctx, m))
                    .collect::<hermitian_eaqecc::Result<Vec<_>>>()?
                    .into_iter()
                    .max()
                    .unwrap_or(0);
                let b = table.basis();
                (deltas, b.reduction_count, max_per_m, b.materialized_count)
            }
        };
        times.push(start.elapsed().as_secs_f64());
        report = Some((deltas, reductions, max_per_m, materialized));
    }
    let (deltas, reduction_count, max_per_m, materialized_count) = report.expect("repeat >= 1");
    let r = BenchReport {
        q,
        algo: match algo {
            BenchAlgo::Baseline => "baseline",
            BenchAlgo::Optimized => "optimized",
            BenchAlgo::Oracle => "oracle",
        },
        repeat,
        wall_seconds_min: times.iter().cloned().fold(f64::INFINITY, f64::min),
        wall_seconds_mean: times.iter().sum::<f64>() / times.len() as f64,
        reduction_count,
        max_reduction_count_per_m: max_per_m,
        reduction_bound: reduction_bound(q),
        materialized_count,
        deltas,
    };
    match format {
        BenchFormat::Json => {
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&r).expect("report serializes")
            )?;
        }
        BenchFormat::Text => {
            let deltas: Vec<String> = r.deltas.iter().map(u64::to_string).collect();
            writeln!(out, "q = {}, algo = {}, repeat = {}", r.q, r.algo, r.repeat)?;
            writeln!(
                out,
                "wall time: min {:.6} s, mean {:.6} s",
                r.wall_seconds_min, r.wall_seconds_mean
            )?;
            writeln!(
                out,
                "reduction_count = {} (max per m {}, bound {})",
                r.reduction_count, r.max_reduction_count_per_m, r.reduction_bound
            )?;
            writeln!(out, "materialized_count = {}", r.materialized_count)?;
            writeln!(out, "deltas = {}", deltas.join(","))?;
        }
    }
    Ok(EXIT_OK)
}

/// The `q n c_min--c_max` line, or `q n none`.
pub fn gv_scan_line(ctx: &CurveCtx) -> hermitian_eaqecc::Result<String> {
    let codes = params_sweep(ctx, 0, ctx.max_m() as i64)?;
    Ok(match gv_exceeding_range(&codes) {
        Some((lo, hi)) => format!("{} {} {lo}--{hi}", ctx.q(), ctx.n()),
        None => format!("{} {} none", ctx.q(), ctx.n()),
    })
}

fn cmd_gv_scan(q: u64, out: &mut dyn Write) -> CmdResult {
    let ctx = curve(q)?;
    writeln!(out, "{}", gv_scan_line(&ctx)?)?;
    Ok(EXIT_OK)
}
