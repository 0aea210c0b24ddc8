//! Command-line front end: `bound`, `verify` and `constants`.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on invalid
//! parameters. Output is assembled in full before anything is written, so an
//! error never leaves a partial table behind.

pub mod render;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{invalid, Error, Result};
use crate::inequality_constants::cw_constants;
use crate::lp::{
    classical_lp_bound, cw_bound, improved_bound, BoundOptions, BoundResult, DEFAULT_PIVOT_LIMIT,
};
use crate::polynomials::{krawtchouk, pk_minus, pk_plus, PolyParams};
use crate::rational::format_ratio;
use crate::report::VerificationReport;

pub use render::Format;
use render::{render_bounds, render_constants, render_kraw, render_report, ConstantsRow, KrawRow};
use suites::{OstergardConfig, SampleConfig, Suite};

/// Largest number of values a single range flag may expand to.
pub const MAX_RANGE_LEN: usize = 100_000;

#[derive(Debug, Parser)]
#[command(
    name = "codebounds",
    version,
    about = "Exact LP upper bounds and oracle checks for q-ary codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Upper bounds on code sizes, one row per parameter combination.
    Bound(BoundArgs),
    /// Run verification suites; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Constant-weight constants, or Krawtchouk tables with --kraw.
    Constants(ConstantsArgs),
}

#[derive(Debug, Clone, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Classical,
    Improved,
    Cw,
}

/// Ranges accept comma lists and inclusive spans, e.g. `2,3,5` or `1..4,7`.
#[derive(Debug, Args)]
struct BoundArgs {
    /// Alphabet sizes.
    #[arg(long)]
    q: String,
    /// Code lengths.
    #[arg(long)]
    n: String,
    /// Minimum distances.
    #[arg(long)]
    d: String,
    /// Codeword weight; required with `--method cw` and rejected otherwise.
    #[arg(long)]
    w: Option<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::Classical)]
    method: MethodArg,
    /// Simplex pivots allowed per LP solve.
    #[arg(long, default_value_t = DEFAULT_PIVOT_LIMIT)]
    pivot_limit: usize,
    /// Allow odd distances in binary constant-weight systems.
    #[arg(long)]
    no_binary_parity: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Alphabet sizes (prime) for the sampled suites, or for `ostergard`.
    #[arg(long)]
    q: Option<String>,
    /// Lengths for `ostergard`.
    #[arg(long)]
    n: Option<String>,
    /// Code sizes for `ostergard`.
    #[arg(long = "M")]
    m: Option<String>,
    /// Largest sampled code length [default: 7].
    #[arg(long)]
    n_max: Option<u64>,
    /// Largest sampled code size [default: 10].
    #[arg(long)]
    size_max: Option<u64>,
    /// Random codes per alphabet size [default: 500].
    #[arg(long)]
    samples: Option<u64>,
    /// Seed for the sampled suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Primes for `prop21`.
    #[arg(long)]
    p: Option<String>,
    /// Largest vector length for `prop21`.
    #[arg(long, default_value_t = 4)]
    j_max: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct ConstantsArgs {
    /// Print P_k(n;x) and its split halves instead.
    #[arg(long)]
    kraw: bool,
    #[arg(long)]
    q: String,
    #[arg(long)]
    n: String,
    /// Codeword weights; required without --kraw.
    #[arg(long)]
    w: Option<String>,
    /// Code sizes; required without --kraw.
    #[arg(long = "M")]
    m: Option<String>,
    /// Defaults to every k in 1..=n.
    #[arg(long)]
    k: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

/// Parses `2,3,5`, `2..7` or mixtures into a sorted, deduplicated list.
pub fn parse_range(text: &str) -> Result<Vec<u64>> {
    let mut values = Vec::new();
    for part in text.split(',').map(str::trim) {
        let num = |s: &str| {
            s.trim().parse::<u64>().map_err(|_| {
                invalid(format!(
                    "'{s}' in range '{text}' is not a nonnegative integer"
                ))
            })
        };
        match part.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo > hi {
                    return Err(invalid(format!("empty span '{part}'")));
                }
                if (hi - lo) as usize >= MAX_RANGE_LEN {
                    return Err(invalid(format!(
                        "span '{part}' exceeds {MAX_RANGE_LEN} values"
                    )));
                }
                values.extend(lo..=hi);
            }
            None => values.push(num(part)?),
        }
        if values.len() > MAX_RANGE_LEN {
            return Err(invalid(format!(
                "range '{text}' exceeds {MAX_RANGE_LEN} values"
            )));
        }
    }
    values.sort_unstable();
    values.dedup();
    Ok(values)
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Arithmetic(_) => 1,
        _ => 2,
    }
}

struct Outcome {
    text: String,
    code: i32,
    /// Printed to standard error after the output is written.
    warnings: Vec<String>,
}

fn run_bound(args: &BoundArgs) -> Result<Outcome> {
    let opts = BoundOptions {
        pivot_limit: args.pivot_limit,
        binary_parity: !args.no_binary_parity,
    };
    let (qs, ns, ds) = (
        parse_range(&args.q)?,
        parse_range(&args.n)?,
        parse_range(&args.d)?,
    );
    let ws = match (args.method, &args.w) {
        (MethodArg::Cw, Some(w)) => Some(parse_range(w)?),
        (MethodArg::Cw, None) => return Err(invalid("--method cw needs --w")),
        (_, Some(_)) => return Err(invalid("--w is only meaningful with --method cw")),
        (_, None) => None,
    };
    if let Some(&q) = qs.iter().find(|&&q| q < 2) {
        return Err(invalid(format!("q={q} must be at least 2")));
    }
    let mut results: Vec<BoundResult> = Vec::new();
    for &q in &qs {
        for &n in ns.iter().filter(|&&n| n >= 1) {
            for &d in ds.iter().filter(|&&d| (1..=n).contains(&d)) {
                match &ws {
                    None => results.push(match args.method {
                        MethodArg::Improved => improved_bound(q, n, d, &opts)?,
                        _ => classical_lp_bound(q, n, d, &opts)?,
                    }),
                    Some(ws) => {
                        for &w in ws.iter().filter(|&&w| (1..=n).contains(&w)) {
                            results.push(cw_bound(q, n, d, w, &opts)?);
                        }
                    }
                }
            }
        }
    }
    if results.is_empty() {
        return Err(invalid(
            "no parameter combination satisfies 1 <= d <= n (and 1 <= w <= n)",
        ));
    }
    let mut warnings: Vec<&str> = results
        .iter()
        .filter_map(|r| r.warning.as_deref())
        .collect();
    warnings.dedup();
    Ok(Outcome {
        text: render_bounds(&results, args.out.format),
        code: 0,
        warnings: warnings.into_iter().map(String::from).collect(),
    })
}

fn run_verify(args: &VerifyArgs) -> Result<Outcome> {
    let defaults = SampleConfig::default();
    let sample_cfg = SampleConfig {
        q: match &args.q {
            Some(q) => parse_range(q)?,
            None => defaults.q.clone(),
        },
        n_max: args.n_max.unwrap_or(defaults.n_max),
        size_max: args.size_max.unwrap_or(defaults.size_max),
        samples: args.samples.unwrap_or(defaults.samples),
        seed: args.seed,
    };
    let mut ost_cfg = OstergardConfig::default();
    if let Some(q) = &args.q {
        ost_cfg.q = parse_range(q)?;
    }
    if let Some(n) = &args.n {
        ost_cfg.n = parse_range(n)?;
    }
    if let Some(m) = &args.m {
        ost_cfg.m = parse_range(m)?;
    }
    if ost_cfg.q.iter().any(|&q| q < 2)
        || ost_cfg.n.iter().any(|&n| n < 1)
        || ost_cfg.m.iter().any(|&m| m < 1)
    {
        return Err(invalid("ostergard ranges need q >= 2, n >= 1 and M >= 1"));
    }
    let primes = match &args.p {
        Some(p) => parse_range(p)?,
        None => vec![2, 3, 5, 7],
    };
    let mut report = VerificationReport::new();
    let run = |suite: Suite, report: &mut VerificationReport| -> Result<()> {
        let part = match suite {
            Suite::Delsarte => suites::sampled_codes(&sample_cfg, false)?,
            Suite::Cw => suites::sampled_codes(&sample_cfg, true)?,
            Suite::Prop21 => suites::prop21(&primes, args.j_max)?,
            Suite::Balancing => suites::balancing()?,
            Suite::Ostergard => suites::ostergard(&ost_cfg)?,
            Suite::All => unreachable!("expanded by the caller"),
        };
        report.extend(part);
        Ok(())
    };
    match args.suite {
        Suite::All => {
            for s in [
                Suite::Delsarte,
                Suite::Cw,
                Suite::Prop21,
                Suite::Balancing,
                Suite::Ostergard,
            ] {
                run(s, &mut report)?;
            }
        }
        s => run(s, &mut report)?,
    }
    Ok(Outcome {
        text: render_report(&report, args.out.format),
        code: if report.all_pass() { 0 } else { 1 },
        warnings: Vec::new(),
    })
}

fn run_constants(args: &ConstantsArgs) -> Result<Outcome> {
    let (qs, ns) = (parse_range(&args.q)?, parse_range(&args.n)?);
    let ks = args.k.as_deref().map(parse_range).transpose()?;
    let k_values = |n: u64| -> Vec<u64> {
        match &ks {
            Some(ks) => ks
                .iter()
                .copied()
                .filter(|&k| (1..=n).contains(&k))
                .collect(),
            None => (1..=n).collect(),
        }
    };
    if args.kraw {
        if args.w.is_some() || args.m.is_some() {
            return Err(invalid("--kraw takes only --q, --n and --k"));
        }
        let mut rows = Vec::new();
        for &q in &qs {
            for &n in &ns {
                for k in k_values(n) {
                    for x in 0..=n {
                        let p = PolyParams::new(q, n, k, x)?;
                        rows.push(KrawRow {
                            q,
                            n,
                            k,
                            x,
                            krawtchouk: krawtchouk(&p).to_string(),
                            pk_minus: format_ratio(&pk_minus(&p)),
                            pk_plus: format_ratio(&pk_plus(&p)),
                        });
                    }
                }
            }
        }
        if rows.is_empty() {
            return Err(invalid("no (q, n, k) combination with 1 <= k <= n"));
        }
        return Ok(Outcome {
            text: render_kraw(&rows, args.out.format),
            code: 0,
            warnings: Vec::new(),
        });
    }
    let ws = parse_range(
        args.w
            .as_deref()
            .ok_or_else(|| invalid("constants needs --w (or --kraw)"))?,
    )?;
    let ms = parse_range(
        args.m
            .as_deref()
            .ok_or_else(|| invalid("constants needs --M (or --kraw)"))?,
    )?;
    let mut rows = Vec::new();
    for &q in &qs {
        for &n in &ns {
            for &w in ws.iter().filter(|&&w| w <= n) {
                for &m in &ms {
                    for k in k_values(n) {
                        rows.push(ConstantsRow::new(
                            q,
                            n,
                            w,
                            m,
                            k,
                            &cw_constants(q, n, w, m, k)?,
                        ));
                    }
                }
            }
        }
    }
    if rows.is_empty() {
        return Err(invalid(
            "no parameter combination with w <= n and 1 <= k <= n",
        ));
    }
    Ok(Outcome {
        text: render_constants(&rows, args.out.format),
        code: 0,
        warnings: Vec::new(),
    })
}

fn emit(text: &str, path: Option<&PathBuf>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let first = rendered
                .lines()
                .next()
                .unwrap_or("error: invalid arguments");
            eprintln!("{first}");
            return 2;
        }
    };
    let (outcome, out) = match &cli.command {
        Command::Bound(a) => (run_bound(a), &a.out),
        Command::Verify(a) => (run_verify(a), &a.out),
        Command::Constants(a) => (run_constants(a), &a.out),
    };
    match outcome {
        Ok(Outcome {
            text,
            code,
            warnings,
        }) => {
            if let Err(e) = emit(&text, out.output.as_ref()) {
                eprintln!("error: cannot write output: {e}");
                return 2;
            }
            for w in warnings {
                eprintln!("warning: {w}");
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
