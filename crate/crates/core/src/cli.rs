//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 on a
//! configuration error detected before computation.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bailey::{
    chain_reproduce, lattice_seed, unit_bilateral, unit_pair_x1, unit_pair_xq,
    verify_bilateral_pair, verify_pair, ChainParams, ChainTarget, SymMode,
};
use crate::binomial::{
    bino4_check, bino5_check, cor57_check, cor58_checks, divisibility_check,
    general_alt_sum_divisibility, BinomialReport, DivisibilityReport,
};
use crate::identity::{liu_counterexample, LiuForm, ParamGrid, Registry, Var, VerificationReport};
use crate::series::rat_to_string;
use crate::telescoping::{verify_quartic_identity, verify_sk_tk, verify_telescoping, Params};
use crate::{Error, Result};

pub const ARTIFACT_VERSION: &str = "1";
const DEFAULT_TRUNC: usize = 40;

#[derive(Parser, Debug)]
#[command(
    name = "qrr",
    version,
    about = "Exact q-series verification of finite Rogers-Ramanujan type identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Record wall-clock milliseconds per report (otherwise 0, keeping JSON
    /// output byte-identical across runs).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct TruncArg {
    /// Truncation order: series are compared through q^T.
    #[arg(long, env = "QRR_TRUNC", default_value_t = DEFAULT_TRUNC)]
    pub trunc: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List registered identities.
    List {
        /// Show parameters with their least values and default grids.
        #[arg(long)]
        grids: bool,
    },
    /// Verify one identity over a parameter grid.
    Verify {
        #[arg(long)]
        id: String,
        /// Comma-separated ranges such as `l=0..3,n=2`; unlisted parameters
        /// use the default grid.
        #[arg(long)]
        range: Option<String>,
        #[command(flatten)]
        trunc: TruncArg,
    },
    /// Verify every identity on its default grid.
    VerifyAll {
        #[command(flatten)]
        trunc: TruncArg,
    },
    /// Bailey pairs and the chains behind the five-parameter transformations.
    Bailey {
        /// Chain target; repeatable. Without one, every target runs.
        #[arg(long)]
        target: Vec<String>,
        /// Index `N` of the chain.
        #[arg(long, default_value_t = 2)]
        n: i64,
        /// Exponents of `b,c,d,e`.
        #[arg(long, default_value = "2,2,1,1")]
        exps: String,
        /// Largest index for the unit-pair checks.
        #[arg(long, default_value_t = 10)]
        n_max: i64,
        #[command(flatten)]
        trunc: TruncArg,
    },
    /// Telescoping certificate, the termwise companion check and the
    /// four-variable polynomial identity.
    Telescope {
        /// `l,m,n,u,v`.
        #[arg(long, conflicts_with = "range")]
        params: Option<String>,
        /// Grid over `l,m,n,u,v` in the `verify` syntax.
        #[arg(long)]
        range: Option<String>,
        #[command(flatten)]
        trunc: TruncArg,
    },
    /// Alternating binomial sums and their divisibility.
    Binomial {
        #[arg(long)]
        bino5: bool,
        #[arg(long)]
        bino4: bool,
        /// Five-binomial sum at `l,m,n,u,v`.
        #[arg(long)]
        cor57: Option<String>,
        /// Four-binomial sums at `l,m,n,u,v`.
        #[arg(long)]
        cor58: Option<String>,
        /// Divisibility of the central sum with this power (4 or 5).
        #[arg(long)]
        divisibility: Option<u32>,
        /// Cyclic sum over the comma-separated list.
        #[arg(long)]
        cyclic: Option<String>,
        #[arg(long, default_value_t = 10)]
        n: i64,
    },
    /// Demonstrate that the non-terminating forms fail.
    Counterexample {
        #[arg(long, default_value = "liu1")]
        which: String,
        #[arg(long, default_value_t = 2)]
        a_exp: i64,
        #[command(flatten)]
        trunc: TruncArg,
    },
}

/// Result of one command: JSON reports plus their text rendering.
struct Outcome {
    command: &'static str,
    config: Value,
    reports: Vec<Value>,
    lines: Vec<String>,
    passed: usize,
    failed: usize,
    /// Overrides the pass/fail exit status.
    exit: Option<i32>,
}

impl Outcome {
    fn new(command: &'static str, config: Value) -> Self {
        Outcome {
            command,
            config,
            reports: Vec::new(),
            lines: Vec::new(),
            passed: 0,
            failed: 0,
            exit: None,
        }
    }

    fn tally(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }

    fn push_verification(&mut self, mut r: VerificationReport, timing: bool, echo: bool) {
        if !timing {
            r.millis = 0;
        }
        self.tally(r.passed());
        if echo || !r.passed() {
            self.lines.push(r.to_string());
        }
        self.reports
            .push(serde_json::to_value(&r).expect("report serializes"));
    }

    fn push_binomial(&mut self, r: BinomialReport) {
        self.tally(r.holds);
        self.lines.push(r.to_string());
        self.reports
            .push(serde_json::to_value(&r).expect("report serializes"));
    }

    fn push_divisibility(&mut self, r: DivisibilityReport) {
        self.tally(r.holds());
        self.lines.push(r.to_string());
        self.reports
            .push(serde_json::to_value(&r).expect("report serializes"));
    }

    fn exit_code(&self) -> i32 {
        self.exit.unwrap_or(if self.failed == 0 { 0 } else { 1 })
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let doc = json!({
                    "artifact_version": ARTIFACT_VERSION,
                    "command": self.command,
                    "config": self.config,
                    "reports": self.reports,
                    "summary": {
                        "total": self.passed + self.failed,
                        "passed": self.passed,
                        "failed": self.failed,
                    },
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("json");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                for l in &self.lines {
                    s.push_str(l);
                    s.push('\n');
                }
                s.push_str(&format!(
                    "{}: {} checks, {} passed, {} failed\n",
                    self.command,
                    self.passed + self.failed,
                    self.passed,
                    self.failed
                ));
                s
            }
        }
    }
}

fn check_trunc(t: usize) -> Result<usize> {
    if t < 1 {
        return Err(Error::Inadmissible(
            "truncation order must be at least 1".into(),
        ));
    }
    Ok(t)
}

fn parse_ints(s: &str, len: Option<usize>) -> Result<Vec<i64>> {
    let xs: std::result::Result<Vec<i64>, _> =
        s.split(',').map(|x| x.trim().parse::<i64>()).collect();
    let xs = xs.map_err(|_| Error::Inadmissible(format!("expected integers, got `{s}`")))?;
    if let Some(n) = len {
        if xs.len() != n {
            return Err(Error::Inadmissible(format!(
                "expected {n} integers, got `{s}`"
            )));
        }
    }
    Ok(xs)
}

fn five(s: &str) -> Result<[i64; 5]> {
    let xs = parse_ints(s, Some(5))?;
    Ok([xs[0], xs[1], xs[2], xs[3], xs[4]])
}

fn cmd_list(reg: &Registry, grids: bool) -> Outcome {
    let mut out = Outcome::new("list", json!({ "grids": grids }));
    for r in reg.records() {
        let params: Vec<Value> = r
            .params
            .iter()
            .map(|p| json!({ "name": p.var.name(), "min": p.min, "grid": [p.grid.0, p.grid.1] }))
            .collect();
        let mut line = format!("{:<12} {}", r.id, r.citation);
        if grids {
            let g: Vec<String> = r
                .params
                .iter()
                .map(|p| format!("{}={}..{} (>= {})", p.var, p.grid.0, p.grid.1, p.min))
                .collect();
            line = format!("{:<12} {}", r.id, g.join(", "));
        }
        out.lines.push(line);
        out.reports
            .push(json!({ "id": r.id, "citation": r.citation, "params": params }));
    }
    out
}

fn cmd_verify(
    reg: &Registry,
    id: &str,
    range: Option<&str>,
    trunc: usize,
    timing: bool,
) -> Result<Outcome> {
    let trunc = check_trunc(trunc)?;
    let rec = reg.get(id)?;
    let mut grid = rec.default_grid(trunc);
    if let Some(r) = range {
        for (var, lo, hi) in ParamGrid::parse_ranges(r)? {
            grid = grid.with(var, lo, hi);
        }
    }
    let reports = rec.verify_grid_with(&grid, None)?;
    let ranges: serde_json::Map<String, Value> = grid
        .ranges
        .iter()
        .map(|(v, lo, hi)| (v.name().to_string(), json!([lo, hi])))
        .collect();
    let mut out = Outcome::new(
        "verify",
        json!({ "id": rec.id, "ranges": ranges, "trunc": trunc }),
    );
    for r in reports {
        out.push_verification(r, timing, true);
    }
    Ok(out)
}

fn cmd_verify_all(reg: &Registry, trunc: usize, timing: bool) -> Result<Outcome> {
    let trunc = check_trunc(trunc)?;
    let mut out = Outcome::new("verify-all", json!({ "trunc": trunc }));
    let mut table = Vec::new();
    for rec in reg.records() {
        let reports = rec.verify_grid_with(&rec.default_grid(trunc), None)?;
        let total = reports.len();
        let ok = reports.iter().filter(|r| r.passed()).count();
        let ms: u64 = reports.iter().map(|r| r.millis).sum();
        for r in reports {
            out.push_verification(r, timing, false);
        }
        table.push(if timing {
            format!(
                "{:<12} {:>6} {:>6} {:>6} {:>8}ms",
                rec.id,
                total,
                ok,
                total - ok,
                ms
            )
        } else {
            format!("{:<12} {:>6} {:>6} {:>6}", rec.id, total, ok, total - ok)
        });
    }
    let mut lines = vec![format!(
        "{:<12} {:>6} {:>6} {:>6}",
        "id", "points", "passed", "failed"
    )];
    lines.extend(table);
    lines.append(&mut out.lines);
    out.lines = lines;
    Ok(out)
}

fn cmd_bailey(
    targets: &[String],
    n: i64,
    exps: &str,
    n_max: i64,
    trunc: usize,
    timing: bool,
) -> Result<Outcome> {
    let trunc = check_trunc(trunc)?;
    let targets: Vec<ChainTarget> = if targets.is_empty() {
        vec![
            ChainTarget::Abcde1,
            ChainTarget::Abcde2,
            ChainTarget::Abcde3,
        ]
    } else {
        targets.iter().map(|t| t.parse()).collect::<Result<_>>()?
    };
    let e = parse_ints(exps, Some(4))?;
    if n < 0 || e.iter().any(|x| *x < 1) || n_max < 0 {
        return Err(Error::Inadmissible(
            "need N >= 0, n-max >= 0 and exponents >= 1".into(),
        ));
    }
    let cp = ChainParams {
        big_n: n,
        b: e[0],
        c: e[1],
        d: e[2],
        e: e[3],
    };
    let mut out = Outcome::new(
        "bailey",
        json!({ "targets": targets, "params": cp, "n_max": n_max, "trunc": trunc }),
    );
    for p in [unit_pair_x1(), unit_pair_xq(), lattice_seed()] {
        out.push_verification(verify_pair(&p, n_max, trunc), timing, true);
    }
    for mode in [SymMode::X1, SymMode::Xq] {
        out.push_verification(
            verify_bilateral_pair(&unit_bilateral(mode), n_max, trunc),
            timing,
            true,
        );
    }
    for t in targets {
        out.push_verification(chain_reproduce(t, &cp, trunc), timing, true);
    }
    Ok(out)
}

fn cmd_telescope(
    params: Option<&str>,
    range: Option<&str>,
    trunc: usize,
    timing: bool,
) -> Result<Outcome> {
    let trunc = check_trunc(trunc)?;
    let points: Vec<Params> = match range {
        Some(r) => {
            let mut grid = ParamGrid::new(trunc);
            for v in Var::ALL {
                grid = grid.with(v, 1, 1);
            }
            for (var, lo, hi) in ParamGrid::parse_ranges(r)? {
                grid = grid.with(var, lo, hi);
            }
            let span = |v: Var| grid.range(v).expect("all vars set");
            let mut pts = Vec::new();
            let (l, m, n, u, v) = (
                span(Var::L),
                span(Var::M),
                span(Var::N),
                span(Var::U),
                span(Var::V),
            );
            for a in l.0..=l.1 {
                for b in m.0..=m.1 {
                    for c in n.0..=n.1 {
                        for d in u.0..=u.1 {
                            for e in v.0..=v.1 {
                                pts.push(Params::new(a, b, c, d, e));
                            }
                        }
                    }
                }
            }
            pts
        }
        None => {
            let [l, m, n, u, v] = five(params.unwrap_or("1,1,1,1,1"))?;
            vec![Params::new(l, m, n, u, v)]
        }
    };
    // Reject inadmissible points before any computation.
    for p in &points {
        if p.l < 0 || p.m < 0 || p.n < 0 || p.u < 1 || p.v < 1 {
            return Err(Error::Inadmissible(format!(
                "need l,m,n >= 0 and u,v >= 1, got {}",
                p.assignment()
            )));
        }
    }
    let mut out = Outcome::new("telescope", json!({ "points": points, "trunc": trunc }));
    for p in &points {
        let start = std::time::Instant::now();
        let check = verify_telescoping(p, trunc)?;
        let mut verdict = check.verdict.clone();
        if verdict.is_equal() && !check.partial_sums_hold {
            verdict = crate::identity::Verdict::Error("partial sums do not telescope".into());
        }
        let r = VerificationReport {
            id: "telescope".into(),
            params: check.params.clone(),
            trunc,
            verdict,
            millis: start.elapsed().as_millis() as u64,
        };
        out.push_verification(r, timing, true);
        out.push_verification(verify_sk_tk(p, trunc), timing, true);
    }
    out.push_verification(verify_quartic_identity(), timing, true);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_binomial(
    bino5: bool,
    bino4: bool,
    cor57: Option<&str>,
    cor58: Option<&str>,
    divisibility: Option<u32>,
    cyclic: Option<&str>,
    n: i64,
) -> Result<Outcome> {
    if n < 0 {
        return Err(Error::Inadmissible(format!("n must be >= 0, got {n}")));
    }
    let cor57 = cor57.map(five).transpose()?;
    let cor58 = cor58.map(five).transpose()?;
    let cyclic = cyclic.map(|s| parse_ints(s, None)).transpose()?;
    for p in cor57.iter().chain(cor58.iter()) {
        if p.iter().any(|x| *x < 0) {
            return Err(Error::Inadmissible(format!(
                "parameters must be >= 0, got {p:?}"
            )));
        }
    }
    if let Some(p) = divisibility {
        if p != 4 && p != 5 {
            return Err(Error::Inadmissible(format!(
                "power must be 4 or 5, got {p}"
            )));
        }
    }
    let none = !bino5
        && !bino4
        && cor57.is_none()
        && cor58.is_none()
        && divisibility.is_none()
        && cyclic.is_none();
    let mut out = Outcome::new(
        "binomial",
        json!({
            "bino5": bino5 || none, "bino4": bino4 || none, "cor57": cor57, "cor58": cor58,
            "divisibility": divisibility, "cyclic": cyclic, "n": n,
        }),
    );
    if bino5 || none {
        out.push_binomial(bino5_check(n));
    }
    if bino4 || none {
        out.push_binomial(bino4_check(n));
    }
    if let Some([l, m, nn, u, v]) = cor57 {
        out.push_binomial(cor57_check(l, m, nn, u, v));
    }
    if let Some([l, m, nn, u, v]) = cor58 {
        for r in cor58_checks(l, m, nn, u, v) {
            out.push_binomial(r);
        }
    }
    let powers: Vec<u32> = match divisibility {
        Some(p) => vec![p],
        None if none => vec![4, 5],
        None => vec![],
    };
    for p in powers {
        out.push_divisibility(divisibility_check(n, p));
    }
    if let Some(ns) = cyclic {
        out.push_divisibility(general_alt_sum_divisibility(&ns)?);
    }
    Ok(out)
}

fn coeff_strings(s: &crate::TruncatedSeries) -> Vec<String> {
    s.coeffs().iter().map(rat_to_string).collect()
}

fn cmd_counterexample(which: &str, a_exp: i64, trunc: usize) -> Result<Outcome> {
    let trunc = check_trunc(trunc)?;
    let form: LiuForm = which.parse()?;
    let r = liu_counterexample(form, a_exp, trunc)?;
    let mut out = Outcome::new(
        "counterexample",
        json!({ "which": form, "a_exp": a_exp, "trunc": trunc }),
    );
    let reproduced = r.reproduced();
    out.lines.push(format!(
        "{} at a = q^{}, T = {}",
        which.to_ascii_uppercase(),
        a_exp,
        trunc
    ));
    out.lines.push(format!("LHS = {}", r.lhs));
    out.lines.push(format!("direct sum = {}", r.direct_sum));
    out.lines.push(format!("RHS = {}", r.rhs));
    out.lines.push(match r.mismatch_index {
        Some(i) => format!("mismatch at q^{i}: the non-terminating form fails"),
        None => "no mismatch: counterexample NOT reproduced".into(),
    });
    out.reports.push(json!({
        "id": which.to_ascii_uppercase(),
        "a_exp": a_exp,
        "trunc": trunc,
        "lhs": coeff_strings(&r.lhs),
        "direct_sum": coeff_strings(&r.direct_sum),
        "rhs": coeff_strings(&r.rhs),
        "difference": coeff_strings(&r.difference),
        "mismatch_index": r.mismatch_index,
        "reproduced": reproduced,
    }));
    out.tally(reproduced);
    Ok(out)
}

fn dispatch(cli: &Cli, reg: &Registry) -> Result<Outcome> {
    let timing = cli.timing;
    match &cli.command {
        Command::List { grids } => Ok(cmd_list(reg, *grids)),
        Command::Verify { id, range, trunc } => {
            cmd_verify(reg, id, range.as_deref(), trunc.trunc, timing)
        }
        Command::VerifyAll { trunc } => cmd_verify_all(reg, trunc.trunc, timing),
        Command::Bailey {
            target,
            n,
            exps,
            n_max,
            trunc,
        } => cmd_bailey(target, *n, exps, *n_max, trunc.trunc, timing),
        Command::Telescope {
            params,
            range,
            trunc,
        } => cmd_telescope(params.as_deref(), range.as_deref(), trunc.trunc, timing),
        Command::Binomial {
            bino5,
            bino4,
            cor57,
            cor58,
            divisibility,
            cyclic,
            n,
        } => cmd_binomial(
            *bino5,
            *bino4,
            cor57.as_deref(),
            cor58.as_deref(),
            *divisibility,
            cyclic.as_deref(),
            *n,
        ),
        Command::Counterexample {
            which,
            a_exp,
            trunc,
        } => cmd_counterexample(which, *a_exp, trunc.trunc),
    }
}

/// Parses `args` (including the program name), runs against `reg`, writes
/// the report to `--out` or `stdout`, diagnostics to `stderr`, and returns
/// the exit code.
pub fn run_with_registry<I, S>(
    args: I,
    reg: &Registry,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let outcome = match pool.install(|| dispatch(&cli, reg)) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let text = outcome.render(cli.format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text.as_bytes()).map_err(|e| e.to_string()),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write report: {e}");
        return 2;
    }
    outcome.exit_code()
}

/// Entry point for the binary.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with_registry(
        args,
        &Registry::standard(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    )
}
