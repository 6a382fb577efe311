//! `klrcat`: tables of KLR and cyclotomic KLR algebras, the Shapovalov
//! form, and the verification suite, driven by a JSON configuration.
//!
//! Exit codes: 0 success, 1 a check failed or a comparison mismatched,
//! 2 bad usage or configuration, 3 a runtime error (I/O, computation).

pub mod cache;
pub mod commands;
pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use catcheck::{Settings, Store, CHECKS};
use clap::{Parser, Subcommand};

pub use cache::DiskCache;
pub use config::{emit_config, parse_config, ConfigError, ConfigFile, JobConfig, Output};

#[derive(Parser, Debug)]
#[command(name = "klrcat", version, about = "KLR algebras, cyclotomic quotients and their categorification checks")]
pub struct Cli {
    /// JSON job configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Emit JSON instead of TSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Directory of the content-addressed cache.
    #[arg(long, global = true, env = "KLRCAT_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Top degree for degree-capped tables and checks.
    #[arg(long, global = true)]
    pub degree_cap: Option<i64>,
    /// Worker threads; 1 runs sequentially, 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Degree-by-degree monomial basis of R(β).
    Basis,
    /// Graded dimensions of R^Λ(β) and all its idempotent truncations.
    Cyclotomic,
    /// Shapovalov form table and rank of each weight space.
    Gram,
    /// Truncation dimensions against the Shapovalov prediction.
    Compare,
    /// Run one verification check, or `all`.
    Check {
        name: Option<String>,
        #[arg(long = "check", value_name = "NAME")]
        check: Option<String>,
    },
    /// Inspect or empty the cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum CacheAction {
    Clear,
    Stat,
}

struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl ToString) -> Failure {
    Failure { code: 2, msg: msg.to_string() }
}

fn runtime(msg: impl ToString) -> Failure {
    Failure { code: 3, msg: msg.to_string() }
}

/// Parse `args` (program name first) and execute; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "klrcat: {}", f.msg);
            f.code
        }
    }
}

fn load(cli: &Cli) -> Result<Option<JobConfig>, Failure> {
    let Some(path) = &cli.config else { return Ok(None) };
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text).map(Some).map_err(usage)
}

fn cache_dir(cli: &Cli, cfg: Option<&JobConfig>) -> Option<PathBuf> {
    cli.cache_dir.clone().or_else(|| cfg.and_then(|c| c.file.cache_dir.as_ref().map(PathBuf::from)))
}

fn open_store(dir: Option<PathBuf>) -> Result<Option<Arc<dyn Store>>, Failure> {
    match dir {
        None => Ok(None),
        Some(d) => {
            let c = DiskCache::open(&d).map_err(|e| runtime(format!("cache directory {}: {e}", d.display())))?;
            Ok(Some(Arc::new(c)))
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = load(cli)?;
    let json = cli.json || cfg.as_ref().is_some_and(|c| c.file.output == Output::Json);
    let cap = cli.degree_cap.or(cfg.as_ref().and_then(|c| c.file.degree_cap));
    if cap.is_some_and(|c| c < 0) {
        return Err(usage("degree cap must be nonnegative"));
    }
    let need = |what: &str| cfg.as_ref().ok_or_else(|| usage(format!("`{what}` needs --config")));
    let outcome = match &cli.command {
        Command::Cache { action } => {
            let dir = cache_dir(cli, cfg.as_ref()).ok_or_else(|| usage("no cache directory: pass --cache-dir or set KLRCAT_CACHE_DIR"))?;
            let c = DiskCache::open(&dir).map_err(|e| runtime(format!("cache directory {}: {e}", dir.display())))?;
            let line = match action {
                CacheAction::Stat => {
                    let s = c.stat();
                    format!("{}\tentries={}\tbytes={}", dir.display(), s.entries, s.bytes)
                }
                CacheAction::Clear => format!("removed {} entries", c.clear().map_err(runtime)?),
            };
            writeln!(out, "{line}").map_err(runtime)?;
            return Ok(0);
        }
        Command::Basis => commands::basis(need("basis")?, cap.unwrap_or(commands::BASIS_CAP)),
        Command::Gram => commands::gram(need("gram")?).map_err(runtime)?,
        Command::Cyclotomic | Command::Compare => {
            let cfg = need(if matches!(cli.command, Command::Compare) { "compare" } else { "cyclotomic" })?;
            let case = commands::case_for(cfg, open_store(cache_dir(cli, Some(cfg)))?);
            let r = klr_engine::par::with_threads(cli.jobs, || match cli.command {
                Command::Compare => commands::compare(cfg, &case),
                _ => commands::cyclotomic(cfg, &case),
            });
            r.map_err(runtime)?
        }
        Command::Check { name, check } => {
            let pick = name.as_deref().or(check.as_deref()).unwrap_or("all");
            let only = match pick {
                "all" => None,
                c if CHECKS.contains(&c) => Some(c),
                c => return Err(usage(format!("unknown check {c:?}; expected `all` or one of {}", CHECKS.join(", ")))),
            };
            let mut settings = Settings::default();
            if let Some(c) = cap {
                settings.degree_cap = c;
            }
            let store = open_store(cache_dir(cli, cfg.as_ref()))?;
            commands::check(cfg.as_ref(), settings, only, cli.jobs, store)
        }
    };
    if json {
        let text = serde_json::to_string_pretty(&outcome.json).map_err(runtime)?;
        writeln!(out, "{text}").map_err(runtime)?;
    } else {
        for l in &outcome.tsv {
            writeln!(out, "{l}").map_err(runtime)?;
        }
    }
    Ok(outcome.code)
}
