//! The `macd` command line.
//!
//! Exit codes: 0 success, 1 some identity check failed, 2 invalid input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::identities::{run_grid, verify, Identity, Params};
use crate::macdonald::MacdonaldContext;
use crate::operators::pieri_expand;
use crate::par::Execution;
use crate::roota::{dominant_weights_up_to, Weight};

pub const CACHE_ENV: &str = "MACD_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".macd-cache";

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "macd",
    version,
    about = "Exact Macdonald polynomials for A_{n-1}"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Number of coordinates (rank + 1), at least 2.
    #[arg(long)]
    pub n: usize,
    /// Integer parameter k >= 1 (t = q^k).
    #[arg(long, allow_negative_numbers = true)]
    pub k: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Cache directory; falls back to $MACD_CACHE_DIR, then ./.macd-cache.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of P_lambda in the orbit-sum basis.
    Poly {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// P_lambda evaluated at q^(2(mu + k rho)).
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Checks one identity and prints the report.
    Verify {
        identity: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Checks identities for all dominant weights up to a size bound.
    Grid {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        max_size: i64,
        /// Restrict to these identities (repeatable); default is all.
        #[arg(long = "identity")]
        identities: Vec<String>,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Pieri coefficients of X_r P_mu.
    Table {
        #[command(flatten)]
        common: Common,
        /// Single mu; default is every dominant mu up to --max-size.
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        /// Single r; default is every r in 1..n-1.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 2)]
        max_size: i64,
    },
}

/// Input errors map to exit code 2.
struct Invalid(String);

impl From<Error> for Invalid {
    fn from(e: Error) -> Self {
        Invalid(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Invalid>;

fn cache_dir(flag: &Option<PathBuf>) -> PathBuf {
    flag.clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

struct Session {
    ctx: MacdonaldContext,
    cache_path: PathBuf,
    format: Format,
}

impl Session {
    fn open(common: &Common) -> CliResult<Self> {
        let ctx = MacdonaldContext::new(common.n, common.k)?;
        let cache_path =
            cache_dir(&common.cache_dir).join(format!("P_n{}_k{}.json", common.n, common.k));
        ctx.load_cache(&cache_path)
            .map_err(|e| Invalid(format!("{}: {e}", cache_path.display())))?;
        Ok(Self {
            ctx,
            cache_path,
            format: common.format,
        })
    }

    fn weight(&self, s: &str, what: &str) -> CliResult<Weight> {
        let w: Weight = s
            .parse()
            .map_err(|e: Error| Invalid(format!("--{what}: {e}")))?;
        self.ctx
            .check_dominant(&w)
            .map_err(|e| Invalid(format!("--{what}: {e}")))?;
        Ok(w)
    }

    /// Persisting the cache is best effort.
    fn save(&self, err: &mut dyn Write) {
        if let Err(e) = self.ctx.save_cache(&self.cache_path) {
            let _ = writeln!(
                err,
                "warning: could not write cache {}: {e}",
                self.cache_path.display()
            );
        }
    }
}

fn sorted(v: Value) -> String {
    // serde_json's default map is a BTreeMap, so keys come out sorted
    serde_json::to_string(&v).expect("json value serialises")
}

fn cmd_poly(
    common: &Common,
    lambda: &str,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let s = Session::open(common)?;
    let lam = s.weight(lambda, "lambda")?;
    let coeffs = s.ctx.macdonald_coeffs(&lam)?;
    s.ctx.macdonald_poly(&lam)?;
    match s.format {
        Format::Text => {
            for (mu, c) in &coeffs {
                let _ = writeln!(out, "m({mu}): {c}");
            }
        }
        Format::Json => {
            let items: Vec<Value> = coeffs
                .iter()
                .map(|(mu, c)| json!({"mu": mu.to_string(), "value": c.to_string()}))
                .collect();
            let v =
                json!({"n": common.n, "k": common.k, "lambda": lam.to_string(), "coeffs": items});
            let _ = writeln!(out, "{}", sorted(v));
        }
    }
    s.save(err);
    Ok(0)
}

fn cmd_eval(
    common: &Common,
    lambda: &str,
    mu: &str,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let s = Session::open(common)?;
    let lam = s.weight(lambda, "lambda")?;
    let mu = s.weight(mu, "mu")?;
    let value = s.ctx.eval_at_shifted(&lam, &mu)?;
    match s.format {
        Format::Text => {
            let _ = writeln!(out, "{value}");
        }
        Format::Json => {
            let v = json!({
                "n": common.n, "k": common.k,
                "lambda": lam.to_string(), "mu": mu.to_string(),
                "value": value.to_string(),
            });
            let _ = writeln!(out, "{}", sorted(v));
        }
    }
    s.save(err);
    Ok(0)
}

fn cmd_verify(
    identity: &str,
    common: &Common,
    lambda: &Option<String>,
    mu: &Option<String>,
    r: Option<usize>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let id: Identity = identity.parse()?;
    let s = Session::open(common)?;
    let mut params = Params::new(&s.ctx);
    if let Some(l) = lambda {
        params = params.lambda(s.weight(l, "lambda")?);
    }
    if let Some(m) = mu {
        params = params.mu(s.weight(m, "mu")?);
    }
    if let Some(r) = r {
        params = params.r(r);
    }
    let report = verify(id, &params, &s.ctx);
    match s.format {
        Format::Text => {
            let _ = write!(out, "{}", report.to_text());
        }
        Format::Json => {
            let _ = writeln!(out, "{}", report.to_json_line());
        }
    }
    s.save(err);
    if let Some(e) = &report.error {
        let _ = writeln!(err, "error: {e}");
        return Ok(2);
    }
    Ok(if report.equal { 0 } else { 1 })
}

fn cmd_grid(
    common: &Common,
    max_size: i64,
    names: &[String],
    sequential: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    if max_size < 0 {
        return Err(Invalid(format!("--max-size must be >= 0, got {max_size}")));
    }
    let ids: Vec<Identity> = if names.is_empty() {
        Identity::ALL.to_vec()
    } else {
        names.iter().map(|n| n.parse()).collect::<Result<_>>()?
    };
    let s = Session::open(common)?;
    let exec = if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let (reports, summary) = run_grid(&s.ctx, &ids, max_size, exec)?;
    let failures: Vec<_> = reports.iter().filter(|r| !r.equal).collect();
    match s.format {
        Format::Text => {
            for f in &failures {
                let p = &f.params;
                let mut line = format!("FAIL {}", f.identity);
                for (name, w) in [("lambda", &p.lambda), ("mu", &p.mu)] {
                    if let Some(w) = w {
                        line += &format!(" {name}={w}");
                    }
                }
                if let Some(r) = p.r {
                    line += &format!(" r={r}");
                }
                if let Some(e) = &f.error {
                    line += &format!(" error={e}");
                }
                let _ = writeln!(out, "{line}");
            }
            let _ = writeln!(
                out,
                "grid n={} k={} max_size={}",
                summary.n, summary.k, summary.max_size
            );
            for (id, t) in &summary.by_identity {
                let _ = writeln!(
                    out,
                    "  {:<24} checks={} passed={} failed={} errors={}",
                    id.name(),
                    t.checks,
                    t.passed,
                    t.failed,
                    t.errors
                );
            }
            let t = &summary.total;
            let _ = writeln!(
                out,
                "total checks={} passed={} failed={} errors={}",
                t.checks, t.passed, t.failed, t.errors
            );
        }
        Format::Json => {
            let v = json!({
                "summary": serde_json::to_value(&summary).expect("summary serialises"),
                "failures": serde_json::to_value(&failures).expect("reports serialise"),
            });
            let _ = writeln!(out, "{}", sorted(v));
        }
    }
    s.save(err);
    Ok(if summary.all_passed() { 0 } else { 1 })
}

fn cmd_table(
    common: &Common,
    mu: &Option<String>,
    r: Option<usize>,
    max_size: i64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let s = Session::open(common)?;
    let mus = match mu {
        Some(m) => vec![s.weight(m, "mu")?],
        None => dominant_weights_up_to(common.n, max_size),
    };
    let rs: Vec<usize> = match r {
        Some(r) => vec![r],
        None => (1..common.n).collect(),
    };
    let mut rows = Vec::new();
    for mu in &mus {
        for &r in &rs {
            for t in pieri_expand(mu, r, &s.ctx)? {
                rows.push((mu.clone(), r, t));
            }
        }
    }
    match s.format {
        Format::Text => {
            for (mu, r, t) in &rows {
                let _ = writeln!(out, "mu={mu} r={r} nu={}: {}", t.nu, t.coefficient);
            }
        }
        Format::Json => {
            for (mu, r, t) in &rows {
                let v = json!({
                    "n": common.n, "k": common.k, "mu": mu.to_string(), "r": r,
                    "nu": t.nu.to_string(), "coefficient": t.coefficient.to_string(),
                });
                let _ = writeln!(out, "{}", sorted(v));
            }
        }
    }
    s.save(err);
    Ok(0)
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    match &cli.command {
        Command::Poly { common, lambda } => cmd_poly(common, lambda, out, err),
        Command::Eval { common, lambda, mu } => cmd_eval(common, lambda, mu, out, err),
        Command::Verify {
            identity,
            common,
            lambda,
            mu,
            r,
        } => cmd_verify(identity, common, lambda, mu, *r, out, err),
        Command::Grid {
            common,
            max_size,
            identities,
            sequential,
        } => cmd_grid(common, *max_size, identities, *sequential, out, err),
        Command::Table {
            common,
            mu,
            r,
            max_size,
        } => cmd_table(common, mu, *r, *max_size, out, err),
    }
}

/// Runs the CLI on `argv` (program name first) with explicit streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

/// Runs the CLI against stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
