//! Command-line front end: normal forms, the coaction, the canonical map,
//! the translation map with its persistent cache, and the verification
//! suites.

use clap::{Parser, Subcommand};
use qsphere::cache::{self, CacheLock};
use qsphere::cmod::ActionTable;
use qsphere::expr::{self, Context, ElementValue};
use qsphere::galois::{self, PCElement, PPElement, TauTable};
use qsphere::s7::{self, PMonomial};
use qsphere::verify::{self, SuiteId};
use qsphere::{cmod, suq2};
use std::path::PathBuf;
use std::process::ExitCode;

/// Environment variable naming the default tau cache file.
const CACHE_ENV: &str = "QSPHERE_TAU_CACHE";

#[derive(Parser)]
#[command(
    name = "qsphere",
    about = "Exact symbolic computations on the q-deformed 7-sphere fibration",
    version
)]
struct Cli {
    /// Abort computations whose inputs exceed this many generator letters.
    #[arg(long, default_value_t = s7::DEFAULT_DEGREE_CAP, global = true)]
    degree_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical normal form of an expression.
    Nf {
        /// Expression context: P, SU2 or C.
        #[arg(short, long)]
        context: Context,
        expr: String,
    },
    /// Apply the right coaction to an element of P.
    Deltar { expr: String },
    /// Apply the canonical map to a representative `p' | p` of P (x)_B P.
    Chi { expr: String },
    /// Compute the translation map on the basis element r[k,m,n].
    Tau {
        k: i64,
        m: u32,
        n: u32,
        /// Persistent cache file (defaults to $QSPHERE_TAU_CACHE if set).
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Check every entry against chi when computing or loading.
        #[arg(long)]
        verify: bool,
    },
    /// Run a verification suite (S1..S8).
    Verify {
        suite: String,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Inspect or clean a tau cache file.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Verify every entry of a cache file against chi.
    Check { file: PathBuf },
    /// Drop invalid entries and rewrite the file sorted and deduplicated.
    Gc { file: PathBuf },
}

fn check_input_degree(expr_degree: Option<usize>, cap: usize) -> Result<(), String> {
    match expr_degree {
        Some(d) if d > cap => Err(format!(
            "input degree {} exceeds the degree cap {} (raise with --degree-cap)",
            d, cap
        )),
        _ => Ok(()),
    }
}

fn cmd_nf(context: Context, src: &str, cap: usize) -> Result<String, String> {
    let value = expr::parse_element(src, context).map_err(|e| e.to_string())?;
    match value {
        ElementValue::P(p) => {
            check_input_degree(s7::degree(&p), cap)?;
            Ok(s7::render_element(&p))
        }
        ElementValue::Su2(x) => Ok(suq2::render_element(&x)),
        ElementValue::C(c) => Ok(cmod::render_element(&c)),
    }
}

fn cmd_deltar(src: &str, cap: usize) -> Result<String, String> {
    let p = expr::parse_p(src).map_err(|e| e.to_string())?;
    check_input_degree(s7::degree(&p), cap)?;
    let d = galois::delta_r(&p, &ActionTable::standard());
    Ok(render_pc_or_zero(&d))
}

fn cmd_chi(src: &str, cap: usize) -> Result<String, String> {
    let (left, right) = src
        .split_once('|')
        .ok_or_else(|| "expected `expr1 | expr2`".to_string())?;
    let p1 = expr::parse_p(left).map_err(|e| format!("left leg: {}", e))?;
    let p2 = expr::parse_p(right).map_err(|e| format!("right leg: {}", e))?;
    check_input_degree(s7::degree(&p1), cap)?;
    check_input_degree(s7::degree(&p2), cap)?;
    let mut rep = PPElement::zero();
    for (m1, c1) in p1.iter() {
        for (m2, c2) in p2.iter() {
            rep.add_term((*m1, *m2), c1 * c2);
        }
    }
    let image = galois::chi(&rep, &ActionTable::standard());
    Ok(render_pc_or_zero(&image))
}

fn render_pc_or_zero(x: &PCElement) -> String {
    if x.is_zero() {
        "0".to_string()
    } else {
        galois::render_pc(x)
    }
}

fn cmd_tau(
    k: i64,
    m: u32,
    n: u32,
    cache_path: Option<PathBuf>,
    verify_entries: bool,
    cap: usize,
) -> Result<String, String> {
    let cache_path = cache_path.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    let table = if verify_entries {
        TauTable::with_degree_cap(cap).with_verifier(ActionTable::standard())
    } else {
        TauTable::with_degree_cap(cap)
    };
    let _lock = match &cache_path {
        Some(path) => Some(CacheLock::acquire(path).map_err(|e| e.to_string())?),
        None => None,
    };
    if let Some(path) = &cache_path {
        if path.exists() {
            cache::load_into(&table, path).map_err(|e| e.to_string())?;
        }
    }
    let value = table.tau(k, m, n).map_err(|e| e.to_string())?;
    if let Some(path) = &cache_path {
        cache::save_from(&table, path).map_err(|e| e.to_string())?;
    }
    Ok(galois::render_pp(&value))
}

fn cmd_verify(suite: &str, max_degree: u32, seed: u64) -> Result<(String, bool), String> {
    let id: SuiteId = suite.parse()?;
    let report = verify::run_suite(id, max_degree, seed).map_err(|e| e.to_string())?;
    let ok = report.passed_all();
    Ok((report.to_text(), ok))
}

fn cmd_cache_check(file: &PathBuf) -> Result<(String, bool), String> {
    let text = std::fs::read_to_string(file).map_err(|e| e.to_string())?;
    let entries = cache::parse(&text).map_err(|e| e.to_string())?;
    let table = ActionTable::standard();
    let mut ok = 0usize;
    let mut bad = Vec::new();
    for (key, value) in &entries {
        let expected = PCElement::basis((PMonomial::unit(), key.c_index()));
        if galois::chi(value, &table) == expected {
            ok += 1;
        } else {
            bad.push(*key);
        }
    }
    let mut out = format!("entries: {}\nvalid: {}\ninvalid: {}\n", entries.len(), ok, bad.len());
    for key in &bad {
        out.push_str(&format!("bad: tau {} {} {}\n", key.k, key.m, key.n));
    }
    Ok((out, bad.is_empty()))
}

fn cmd_cache_gc(file: &PathBuf) -> Result<String, String> {
    let _lock = CacheLock::acquire(file).map_err(|e| e.to_string())?;
    let text = std::fs::read_to_string(file).map_err(|e| e.to_string())?;
    let entries = cache::parse(&text).map_err(|e| e.to_string())?;
    let total = entries.len();
    let table = ActionTable::standard();
    let keep = TauTable::new();
    let mut dropped = 0usize;
    for (key, value) in entries {
        let expected = PCElement::basis((PMonomial::unit(), key.c_index()));
        if galois::chi(&value, &table) == expected {
            keep.insert_entry(key, value).map_err(|e| e.to_string())?;
        } else {
            dropped += 1;
        }
    }
    cache::save_from(&keep, file).map_err(|e| e.to_string())?;
    Ok(format!(
        "entries: {}\nkept: {}\ndropped: {}\n",
        total,
        keep.len(),
        dropped
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = cli.degree_cap;
    let outcome: Result<(String, bool), String> = match &cli.command {
        Command::Nf { context, expr } => cmd_nf(*context, expr, cap).map(|s| (s, true)),
        Command::Deltar { expr } => cmd_deltar(expr, cap).map(|s| (s, true)),
        Command::Chi { expr } => cmd_chi(expr, cap).map(|s| (s, true)),
        Command::Tau {
            k,
            m,
            n,
            cache,
            verify,
        } => cmd_tau(*k, *m, *n, cache.clone(), *verify, cap).map(|s| (s, true)),
        Command::Verify {
            suite,
            max_degree,
            seed,
        } => cmd_verify(suite, *max_degree, *seed),
        Command::Cache { action } => match action {
            CacheAction::Check { file } => cmd_cache_check(file),
            CacheAction::Gc { file } => cmd_cache_gc(file).map(|s| (s, true)),
        },
    };
    match outcome {
        Ok((text, ok)) => {
            println!("{}", text.trim_end());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(message) => {
            eprintln!("error: {}", message);
            ExitCode::FAILURE
        }
    }
}
