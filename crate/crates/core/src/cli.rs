//! Command-line front end.
//!
//! Exit status: 0 on success, 1 for precondition or resource errors (one
//! line `error: <kind>: <message>` on stderr), 2 for malformed arguments.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, CommandFactory, Parser, Subcommand};

use crate::asympt::{self, RhReport};
use crate::counts::{self, CountSet, GridQuery};
use crate::format::{render_all, OutputFormat, Records, Value};
use crate::oracle::{self, Guardrail};
use crate::totient::TotientTable;
use crate::{GridError, Result};

/// Environment variable capping the sieve limit a single run may build.
pub const SIEVE_LIMIT_ENV: &str = "GRIDCOUNT_SIEVE_LIMIT";

#[derive(Debug, Parser)]
#[command(name = "gridcount", version, about = "Count lines and segments through points of an n×n grid")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Sieve at least this far, even if the query needs less.
    #[arg(long, global = true)]
    limit: Option<usize>,
    /// Lift the oracle size guardrails.
    #[arg(long, global = true)]
    force: bool,
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print f_q(n).
    Fq {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        /// Evaluate the O(n²) definition instead of the totient formula.
        #[arg(long)]
        direct: bool,
    },
    /// Print f_q(n), s_{q+1}(n), l_{≥q}(n) and l_q(n).
    Counts {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
    },
    /// Residuals of f_q(n) against 6n⁴/(π²q²) over a range of n.
    Scan {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 128)]
        n_start: u64,
        #[arg(long, default_value_t = 8192)]
        n_end: u64,
        /// Double n from n-start up to n-end (the default grid).
        #[arg(long, conflicts_with = "step")]
        geometric: bool,
        /// Arithmetic grid with this step.
        #[arg(long)]
        step: Option<u64>,
        /// Append a log-log slope fit and its classification.
        #[arg(long)]
        fit: bool,
        /// Exponent e in the normalized column |r(n)| / n^e.
        #[arg(long, default_value_t = asympt::RH_EXPONENT)]
        exponent: f64,
    },
    /// Geometric line histogram and segment census by brute force.
    Oracle {
        #[arg(long)]
        n: u64,
        /// Also count separable dichotomies.
        #[arg(long)]
        threshold: bool,
    },
    /// Φ(m), E_Φ(m) and E_R(m).
    Errterms {
        #[arg(long)]
        m_max: usize,
        /// Emit every K-th m.
        #[arg(long, default_value_t = 1)]
        every: usize,
    },
    /// Print t(n) = f_1(n) + 2.
    Threshold {
        #[arg(long)]
        n: u64,
    },
}

/// Parse `argv` (program name first), run the command, and return the exit
/// status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let mut text = e.render().to_string();
            return if e.use_stderr() {
                if !text.contains("Usage:") {
                    text.push_str(&format!("\n{}\n", Cli::command().render_usage()));
                }
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    match execute(&cli) {
        Ok(text) => {
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            let line = e.to_string().replace('\n', " ");
            let _ = writeln!(err, "error: {line}");
            1
        }
    }
}

fn execute(cli: &Cli) -> Result<String> {
    match cli.global.threads {
        Some(0) => Err(GridError::InvalidArgument("--threads must be at least 1".into())),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| GridError::ResourceLimit(format!("cannot start thread pool: {e}")))?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

fn sieve_cap() -> Result<Option<usize>> {
    match std::env::var(SIEVE_LIMIT_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| GridError::InvalidArgument(format!("{SIEVE_LIMIT_ENV}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(None),
    }
}

fn build_table(opts: &GlobalOpts, needed: usize) -> Result<TotientTable> {
    let limit = needed.max(opts.limit.unwrap_or(0)).max(1);
    if let Some(cap) = sieve_cap()? {
        if limit > cap {
            return Err(GridError::ResourceLimit(format!(
                "sieve limit {limit} exceeds {SIEVE_LIMIT_ENV}={cap}"
            )));
        }
    }
    TotientTable::build(limit)
}

fn guard(opts: &GlobalOpts) -> Guardrail {
    if opts.force {
        Guardrail::Lift
    } else {
        Guardrail::Enforce
    }
}

/// Single-value commands print the bare value in table format.
fn scalar(records: Records, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let v = records.rows[0].last().map(Value::plain).unwrap_or_default();
            format!("{v}\n")
        }
        _ => records.render(format),
    }
}

fn dispatch(cli: &Cli) -> Result<String> {
    let opts = &cli.global;
    let format = opts.format;
    match cli.command {
        Command::Fq { n, q, direct } => {
            let query = GridQuery::new(n, q)?;
            let f = if direct {
                counts::f_direct(query)
            } else {
                counts::f_fast(query, &build_table(opts, query.required_limit())?)?
            };
            let mut r = Records::new(&["n", "q", "f"]);
            r.push(vec![n.into(), q.into(), f.into()]);
            Ok(scalar(r, format))
        }
        Command::Threshold { n } => {
            let query = GridQuery::new(n, 1)?;
            let t = counts::threshold_count(n, &build_table(opts, query.required_limit())?)?;
            let mut r = Records::new(&["n", "t"]);
            r.push(vec![n.into(), t.into()]);
            Ok(scalar(r, format))
        }
        Command::Counts { n, q } => {
            let query = GridQuery::new(n, q)?;
            let table = build_table(opts, counts::required_limit_for_counts(n, q))?;
            let c = CountSet::compute(query, &table)?;
            let mut r = Records::new(&["n", "q", "f", "segments", "lines_at_least", "lines_exactly"]);
            r.push(vec![
                c.n.into(),
                c.q.into(),
                c.f.into(),
                c.segments.into(),
                c.lines_at_least.into(),
                c.lines_exactly.into(),
            ]);
            Ok(r.render(format))
        }
        Command::Scan { q, n_start, n_end, geometric: _, step, fit, exponent } => {
            if q == 0 || n_start == 0 {
                return Err(GridError::InvalidArgument("q and n-start must be at least 1".into()));
            }
            let n_values: Vec<u64> = match step {
                Some(0) => return Err(GridError::InvalidArgument("--step must be at least 1".into())),
                Some(s) => (n_start..=n_end).step_by(s as usize).collect(),
                None => asympt::geometric_grid(n_start, n_end),
            };
            if n_values.is_empty() {
                return Err(GridError::InvalidArgument(format!("empty scan range {n_start}..={n_end}")));
            }
            let top = *n_values.last().expect("nonempty");
            GridQuery::new(top, q)?;
            let table = build_table(opts, ((top - 1) / q) as usize)?;
            let rows = asympt::scan_residuals(q, &n_values, &table, exponent)?;
            let mut r = Records::new(&["n", "q", "exact", "main", "residual", "normalized"]);
            for row in &rows {
                r.push(vec![
                    row.n.into(),
                    row.q.into(),
                    row.exact.into(),
                    row.main.into(),
                    row.residual.into(),
                    row.normalized.into(),
                ]);
            }
            let mut blocks = vec![r];
            if fit {
                let fitted = asympt::fit_log_exponent(&rows)?;
                let report = asympt::rh_report(&fitted);
                let mut f = Records::new(&["slope", "intercept", "points_used", "n_min", "n_max", "classification", "note"]);
                f.push(vec![
                    fitted.slope.into(),
                    fitted.intercept.into(),
                    fitted.points_used.into(),
                    fitted.n_range.0.into(),
                    fitted.n_range.1.into(),
                    report.class.label().into(),
                    RhReport::DISCLAIMER.into(),
                ]);
                blocks.push(f);
            }
            Ok(render_all(&blocks, format))
        }
        Command::Oracle { n, threshold } => {
            let g = guard(opts);
            let hist = oracle::oracle_line_histogram(n, g)?;
            let mut lines = Records::new(&["n", "p", "lines"]);
            for (&p, &c) in &hist.counts {
                lines.push(vec![n.into(), p.into(), c.into()]);
            }
            let mut segs = Records::new(&["n", "p", "segments"]);
            for p in 2..=n {
                segs.push(vec![n.into(), p.into(), oracle::oracle_segments(n, p, g)?.into()]);
            }
            let mut blocks = vec![lines, segs];
            if threshold {
                let mut t = Records::new(&["n", "threshold_functions"]);
                t.push(vec![n.into(), oracle::oracle_threshold_count(n, g)?.into()]);
                blocks.push(t);
            }
            Ok(render_all(&blocks, format))
        }
        Command::Errterms { m_max, every } => {
            if m_max == 0 || every == 0 {
                return Err(GridError::InvalidArgument("--m-max and --every must be at least 1".into()));
            }
            let table = build_table(opts, m_max)?;
            let mut r = Records::new(&["m", "phi_sum", "e_phi", "e_r"]);
            for m in (every..=m_max).step_by(every) {
                r.push(vec![
                    m.into(),
                    table.summatory_phi(m)?.into(),
                    table.e_phi(m)?.into(),
                    table.e_r(m)?.into(),
                ]);
            }
            Ok(r.render(format))
        }
    }
}
