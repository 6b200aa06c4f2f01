//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards process arguments and the standard streams to it.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use branchkit::branching::{format_rational, sl2_labels};
use branchkit::cartan::format_labels;
use branchkit::characters::character_identity_residual_with;
use branchkit::weyl::WeylEnumeration;
use branchkit::{
    branch, coset_offset, shifted_action, string_function, weight_space_character, AffineAlgebra, AlgebraId,
    BranchingQuery, BranchingResult, Context, DiskCache, Error, Method, QSeries, StringFunction, Weight,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "branchkit", version, about = "Exact branching functions of affine Kac-Moody algebras")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Directory holding cached multiplicity tables.
    #[arg(long, env = "BRANCHKIT_CACHE", global = true)]
    cache_dir: Option<PathBuf>,

    /// Neither read nor write cached tables.
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weyl group layer sizes and shifted orbits.
    Weyl(WeylArgs),
    /// Weight-space characters of one module.
    Char(CharArgs),
    /// One string function, normalized to start at degree 0.
    String(StringArgs),
    /// Branching function of one triple.
    Branch(BranchArgs),
    /// Cross-check every method on every dominant triple at given levels.
    Verify(VerifyArgs),
    /// Inspect or empty the table cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    List,
    Clear,
}

#[derive(Args, Debug)]
struct WeylArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    max_length: usize,
    /// Labels of a weight whose shifted orbit to print.
    #[arg(long, allow_hyphen_values = true)]
    orbit: Option<String>,
    /// d-value of the orbit weight.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    dval: i64,
    /// Orbit weight as sl2 coordinates `i,k,m`.
    #[arg(long, conflicts_with_all = ["orbit", "dval"], allow_hyphen_values = true)]
    orbit_ikm: Option<String>,
}

#[derive(Args, Debug)]
struct CharArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, conflicts_with = "lambda")]
    lambda_ikm: Option<String>,
    #[arg(long)]
    trunc: i64,
    /// `h'`-weights to report (repeatable); defaults to every dominant one.
    #[arg(long = "nu", allow_hyphen_values = true)]
    nus: Vec<String>,
    /// Also check the Weyl-Kac identity to the same order.
    #[arg(long)]
    check_identity: bool,
}

#[derive(Args, Debug)]
struct StringArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, conflicts_with = "lambda")]
    lambda_ikm: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, conflicts_with = "mu")]
    mu_ikm: Option<String>,
    #[arg(long)]
    trunc: i64,
}

#[derive(Args, Debug)]
struct BranchArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    lambda1: Option<String>,
    /// `lambda1` as sl2 coordinates `i,k`.
    #[arg(long, conflicts_with = "lambda1")]
    lambda1_ikm: Option<String>,
    #[arg(long)]
    lambda2: Option<String>,
    #[arg(long, conflicts_with = "lambda2")]
    lambda2_ikm: Option<String>,
    #[arg(long)]
    mu: Option<String>,
    #[arg(long, conflicts_with = "mu")]
    mu_ikm: Option<String>,
    #[arg(long)]
    trunc: i64,
    /// A method name, or `all`.
    #[arg(long, default_value = "oracle")]
    method: String,
    /// Attach the conformal-weight offset of the coset character.
    #[arg(long)]
    coset: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long, num_args = 2, value_names = ["K1", "K2"])]
    levels: Vec<i64>,
    #[arg(long)]
    trunc: i64,
    /// Comma-separated method names, or `all`.
    #[arg(long, default_value = "all")]
    methods: String,
}

/// A failure to report on one line, with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

fn arg_err(flag: &str) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure::usage(format!("--{flag}: {e}"))
}

type Outcome = Result<i32, Failure>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let (code, sink): (i32, &mut dyn Write) = if e.use_stderr() { (EXIT_USAGE, err) } else { (EXIT_OK, out) };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut buf = Vec::new();
    match dispatch(&cli, &mut buf) {
        Ok(code) => {
            let _ = out.write_all(&buf);
            code
        }
        Err(f) => {
            let _ = out.write_all(&buf);
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut Vec<u8>) -> Outcome {
    let cache = cache_of(cli);
    match &cli.command {
        Command::Weyl(a) => cmd_weyl(a, cli.format, out),
        Command::Char(a) => cmd_char(a, cli.format, cache, out),
        Command::String(a) => cmd_string(a, cli.format, cache, out),
        Command::Branch(a) => cmd_branch(a, cli.format, cache, out),
        Command::Verify(a) => cmd_verify(a, cli.format, cache, out),
        Command::Cache { action } => cmd_cache(action, cli.format, cache, out),
    }
}

fn cache_of(cli: &Cli) -> Option<DiskCache> {
    if cli.no_cache {
        return None;
    }
    cli.cache_dir.clone().map(DiskCache::new)
}

fn parse_algebra(s: &str) -> Result<AffineAlgebra, Failure> {
    let id: AlgebraId = s.parse().map_err(arg_err("algebra"))?;
    Ok(AffineAlgebra::from_id(id))
}

fn context(alg: &AffineAlgebra, cache: Option<DiskCache>) -> Context {
    match cache {
        Some(c) => Context::with_disk_cache(alg.clone(), c),
        None => Context::new(alg.clone()),
    }
}

fn parse_ints(flag: &str, s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Failure::usage(format!("--{flag}: {t:?} is not an integer")))
        })
        .collect()
}

/// Labels from either `--<flag> l0,l1,...` or `--<flag>-ikm i,k`.
fn weight_arg(alg: &AffineAlgebra, flag: &str, labels: &Option<String>, ikm: &Option<String>) -> Result<Vec<i64>, Failure> {
    let w = match (labels, ikm) {
        (Some(s), _) => parse_ints(flag, s)?,
        (None, Some(s)) => {
            let ikm_flag = format!("{flag}-ikm");
            if alg.rank() != 1 || alg.id().ty != branchkit::CartanType::A {
                return Err(Failure::usage(format!("--{ikm_flag}: sl2 coordinates need A1~1")));
            }
            match parse_ints(&ikm_flag, s)?[..] {
                [i, k] => sl2_labels(i, k),
                _ => return Err(Failure::usage(format!("--{ikm_flag}: expected i,k"))),
            }
        }
        (None, None) => return Err(Failure::usage(format!("--{flag} is required"))),
    };
    alg.check_arity(&w).map_err(arg_err(flag))?;
    Ok(w)
}

fn dominant_arg(alg: &AffineAlgebra, flag: &str, labels: &Option<String>, ikm: &Option<String>) -> Result<Vec<i64>, Failure> {
    let w = weight_arg(alg, flag, labels, ikm)?;
    alg.check_dominant(&w).map_err(arg_err(flag))?;
    Ok(w)
}

fn check_trunc(n: i64) -> Result<(), Failure> {
    if n < 0 {
        return Err(Failure::usage(format!("--trunc: {n} is negative")));
    }
    Ok(())
}

fn emit_json(out: &mut Vec<u8>, v: &impl Serialize) {
    serde_json::to_writer(&mut *out, v).expect("serializable");
    out.push(b'\n');
}

fn series_json(s: &QSeries) -> serde_json::Value {
    serde_json::to_value(s).expect("serializable")
}

fn cmd_weyl(a: &WeylArgs, fmt: Format, out: &mut Vec<u8>) -> Outcome {
    let alg = parse_algebra(&a.algebra)?;
    if a.max_length > branchkit::bounds::MAX_CERTIFIED_LENGTH {
        return Err(Failure::usage(format!(
            "--max-length: {} exceeds {}",
            a.max_length,
            branchkit::bounds::MAX_CERTIFIED_LENGTH
        )));
    }
    let orbit_of = match (&a.orbit, &a.orbit_ikm) {
        (Some(s), _) => {
            let labels = parse_ints("orbit", s)?;
            alg.check_arity(&labels).map_err(arg_err("orbit"))?;
            Some(Weight::new(labels, a.dval))
        }
        (None, Some(s)) => match parse_ints("orbit-ikm", s)?[..] {
            [i, k, m] if alg.n_nodes() == 2 => Some(branchkit::ikm_to_weight(i, k, m)),
            _ => return Err(Failure::usage("--orbit-ikm: expected i,k,m on A1~1")),
        },
        (None, None) => None,
    };
    let mut en = WeylEnumeration::new(&alg);
    en.ensure(a.max_length);
    let sizes = en.layer_sizes();
    let orbit: Vec<(usize, Vec<usize>, Weight)> = match &orbit_of {
        Some(w) => en.iter().map(|e| (e.length, e.word.clone(), shifted_action(&alg, e, w))).collect(),
        None => Vec::new(),
    };
    match fmt {
        Format::Json => {
            let mut v = json!({ "algebra": alg.id().to_string(), "layer_sizes": sizes });
            if orbit_of.is_some() {
                v["orbit"] = orbit
                    .iter()
                    .map(|(l, word, img)| json!({ "length": l, "word": word, "labels": img.labels, "dval": img.dval }))
                    .collect();
            }
            emit_json(out, &v);
        }
        Format::Text => {
            let _ = writeln!(out, "{} layer sizes: {:?}", alg.id(), sizes);
            for (l, word, img) in &orbit {
                let _ = writeln!(out, "{l:>3}  {word:?}  {img}");
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_char(a: &CharArgs, fmt: Format, cache: Option<DiskCache>, out: &mut Vec<u8>) -> Outcome {
    let alg = parse_algebra(&a.algebra)?;
    let lambda = dominant_arg(&alg, "lambda", &a.lambda, &a.lambda_ikm)?;
    check_trunc(a.trunc)?;
    let ctx = context(&alg, cache);
    let table = ctx.table(&lambda, a.trunc).map_err(arg_err("lambda"))?;
    let nus: Vec<Vec<i64>> = if a.nus.is_empty() {
        alg.dominant_weights(alg.level(&lambda)).into_iter().map(|w| w.labels).collect()
    } else {
        a.nus
            .iter()
            .map(|s| {
                let w = parse_ints("nu", s)?;
                alg.check_arity(&w).map_err(arg_err("nu"))?;
                Ok(w)
            })
            .collect::<Result<_, Failure>>()?
    };
    let mut rows = Vec::new();
    for nu in &nus {
        let ch = weight_space_character(&alg, &table, nu, a.trunc).map_err(arg_err("nu"))?;
        rows.push((nu.clone(), ch));
    }
    let residual = if a.check_identity {
        let t = table.slice(&alg, a.trunc);
        Some(character_identity_residual_with(&alg, &t).map_err(|e| Failure::usage(e.to_string()))?)
    } else {
        None
    };
    match fmt {
        Format::Json => {
            let mut v = json!({
                "algebra": alg.id().to_string(),
                "lambda": lambda,
                "trunc": a.trunc,
                "characters": rows.iter().map(|(nu, ch)| json!({ "nu": nu, "series": series_json(ch) })).collect::<Vec<_>>(),
            });
            if let Some(r) = &residual {
                v["identity"] = json!({
                    "holds": r.is_zero(),
                    "weyl_terms": r.weyl_terms,
                    "nonzero": r.nonzero.iter().map(|(b, c)| json!([b.0, c.to_string()])).collect::<Vec<_>>(),
                });
            }
            emit_json(out, &v);
        }
        Format::Text => {
            for (nu, ch) in &rows {
                let _ = writeln!(out, "ch L({})^({}) = {}", format_labels(&lambda), format_labels(nu), ch);
            }
            if let Some(r) = &residual {
                if r.is_zero() {
                    let _ = writeln!(out, "Weyl-Kac identity holds to q^{} ({} Weyl terms)", a.trunc, r.weyl_terms);
                } else {
                    let _ = writeln!(out, "Weyl-Kac identity FAILS at {} monomials", r.nonzero.len());
                    for (b, c) in &r.nonzero {
                        let _ = writeln!(out, "  beta {:?}: {}", b.0, c);
                    }
                }
            }
        }
    }
    Ok(match residual {
        Some(r) if !r.is_zero() => EXIT_DISAGREE,
        _ => EXIT_OK,
    })
}

fn cmd_string(a: &StringArgs, fmt: Format, cache: Option<DiskCache>, out: &mut Vec<u8>) -> Outcome {
    let alg = parse_algebra(&a.algebra)?;
    let lambda = dominant_arg(&alg, "lambda", &a.lambda, &a.lambda_ikm)?;
    let mu = weight_arg(&alg, "mu", &a.mu, &a.mu_ikm)?;
    check_trunc(a.trunc)?;
    let ctx = context(&alg, cache);
    let table = ctx.table(&lambda, a.trunc).map_err(arg_err("lambda"))?;
    let sf = string_function(&alg, &table, &mu, a.trunc).map_err(arg_err("mu"))?;
    match (fmt, &sf) {
        (Format::Json, StringFunction::Empty { trunc }) => {
            emit_json(out, &json!({ "lambda": lambda, "mu": mu, "empty": true, "trunc": trunc }))
        }
        (Format::Json, StringFunction::Series { offset, series }) => emit_json(
            out,
            &json!({ "lambda": lambda, "mu": mu, "empty": false, "offset": offset, "series": series_json(series) }),
        ),
        (Format::Text, StringFunction::Empty { trunc }) => {
            let _ = writeln!(out, "empty through q^{trunc}");
        }
        (Format::Text, StringFunction::Series { offset, series }) => {
            let _ = writeln!(out, "q^{offset} ({series})");
        }
    }
    Ok(EXIT_OK)
}

fn parse_methods(alg: &AffineAlgebra, flag: &str, s: &str) -> Result<Vec<Method>, Failure> {
    if s == "all" {
        return Ok(Method::all_for(alg));
    }
    s.split(',')
        .map(|t| {
            let m: Method = t.trim().parse().map_err(arg_err(flag))?;
            if !m.applies_to(alg) {
                return Err(Failure::usage(format!("--{flag}: {m} needs A1~1")));
            }
            Ok(m)
        })
        .collect()
}

fn query_from(alg: &AffineAlgebra, a: &BranchArgs) -> Result<BranchingQuery, Failure> {
    let l1 = dominant_arg(alg, "lambda1", &a.lambda1, &a.lambda1_ikm)?;
    let l2 = dominant_arg(alg, "lambda2", &a.lambda2, &a.lambda2_ikm)?;
    let mu = dominant_arg(alg, "mu", &a.mu, &a.mu_ikm)?;
    check_trunc(a.trunc)?;
    BranchingQuery::new(alg, l1, l2, mu, a.trunc).map_err(arg_err("mu"))
}

/// Outcome of one method: a result, or an error a theorem rules out.
enum Run {
    Done(BranchingResult),
    Broken(String),
}

fn run_method(ctx: &Context, q: &BranchingQuery, m: Method) -> Result<Run, Failure> {
    match branch(ctx, q, m) {
        Ok(r) => Ok(Run::Done(r)),
        Err(e @ Error::Inconsistency(_)) => Ok(Run::Broken(e.to_string())),
        Err(e) => Err(Failure::usage(format!("{m}: {e}"))),
    }
}

fn agree(runs: &[(Method, Run)]) -> bool {
    let mut first: Option<&QSeries> = None;
    for (_, r) in runs {
        match r {
            Run::Broken(_) => return false,
            Run::Done(res) => match first {
                None => first = Some(&res.series),
                Some(s) if *s != res.series => return false,
                _ => {}
            },
        }
    }
    true
}

fn cmd_branch(a: &BranchArgs, fmt: Format, cache: Option<DiskCache>, out: &mut Vec<u8>) -> Outcome {
    let alg = parse_algebra(&a.algebra)?;
    let q = query_from(&alg, a)?;
    let methods = parse_methods(&alg, "method", &a.method)?;
    let ctx = context(&alg, cache);
    let offset = if a.coset {
        Some(coset_offset(&alg, &q).map_err(arg_err("mu"))?)
    } else {
        None
    };
    let mut runs = Vec::new();
    for &m in &methods {
        let mut r = run_method(&ctx, &q, m)?;
        if let Run::Done(res) = &mut r {
            res.offset = offset;
        }
        runs.push((m, r));
    }
    let all = a.method == "all";
    let agreed = agree(&runs);
    match fmt {
        Format::Json => {
            let results: Vec<serde_json::Value> = runs
                .iter()
                .map(|(m, r)| match r {
                    Run::Done(res) => serde_json::to_value(res).expect("serializable"),
                    Run::Broken(msg) => json!({ "method": m.name(), "error": msg }),
                })
                .collect();
            if all {
                emit_json(out, &json!({ "results": results, "agree": agreed }));
            } else {
                emit_json(out, &results[0]);
            }
        }
        Format::Text => {
            if let Some(o) = offset {
                let _ = writeln!(out, "offset: {}", format_rational(o));
            }
            for (m, r) in &runs {
                match r {
                    Run::Done(res) => {
                        let _ = writeln!(out, "{:<14} {}", m.name(), res.series);
                    }
                    Run::Broken(msg) => {
                        let _ = writeln!(out, "{:<14} ERROR {msg}", m.name());
                    }
                }
            }
            if all {
                let _ = writeln!(out, "verdict: {}", if agreed { "agree" } else { "DISAGREE" });
            }
        }
    }
    Ok(if agreed { EXIT_OK } else { EXIT_DISAGREE })
}

struct TripleReport {
    query: BranchingQuery,
    runs: Vec<(Method, Run)>,
    agree: bool,
}

fn cmd_verify(a: &VerifyArgs, fmt: Format, cache: Option<DiskCache>, out: &mut Vec<u8>) -> Outcome {
    let alg = parse_algebra(&a.algebra)?;
    let (k1, k2) = (a.levels[0], a.levels[1]);
    if k1 < 0 || k2 < 0 {
        return Err(Failure::usage("--levels: levels must be nonnegative"));
    }
    check_trunc(a.trunc)?;
    let methods = parse_methods(&alg, "methods", &a.methods)?;
    let mut queries = Vec::new();
    for l1 in alg.dominant_weights(k1) {
        for l2 in alg.dominant_weights(k2) {
            for mu in alg.dominant_weights(k1 + k2) {
                let q = BranchingQuery::new(&alg, l1.labels.clone(), l2.labels.clone(), mu.labels, a.trunc)
                    .map_err(|e| Failure::usage(e.to_string()))?;
                queries.push(q);
            }
        }
    }
    let ctx = Arc::new(context(&alg, cache));
    // tables for the level-k1 and level-k2 weights first, so workers share them
    for w in alg.dominant_weights(k1).into_iter().chain(alg.dominant_weights(k2)) {
        ctx.table(&w.labels, a.trunc).map_err(|e| Failure::usage(e.to_string()))?;
    }
    let reports: Vec<TripleReport> = queries
        .into_par_iter()
        .map(|q| {
            let runs = methods
                .iter()
                .map(|&m| run_method(&ctx, &q, m).map(|r| (m, r)))
                .collect::<Result<Vec<_>, _>>()?;
            let agree = agree(&runs);
            Ok(TripleReport { query: q, runs, agree })
        })
        .collect::<Result<_, Failure>>()?;
    let all_agree = reports.iter().all(|r| r.agree);

    match fmt {
        Format::Json => {
            let triples: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| {
                    let series = r.runs.iter().find_map(|(_, run)| match run {
                        Run::Done(res) => Some(series_json(&res.series)),
                        Run::Broken(_) => None,
                    });
                    let mut v = json!({
                        "lambda1": r.query.lambda1,
                        "lambda2": r.query.lambda2,
                        "mu": r.query.mu,
                        "agree": r.agree,
                        "series": series,
                    });
                    if !r.agree {
                        v["results"] = r
                            .runs
                            .iter()
                            .map(|(m, run)| match run {
                                Run::Done(res) => serde_json::to_value(res).expect("serializable"),
                                Run::Broken(msg) => json!({ "method": m.name(), "error": msg }),
                            })
                            .collect();
                    }
                    v
                })
                .collect();
            emit_json(
                out,
                &json!({
                    "algebra": alg.id().to_string(),
                    "levels": [k1, k2],
                    "trunc": a.trunc,
                    "methods": methods.iter().map(|m| m.name()).collect::<Vec<_>>(),
                    "triples": triples,
                    "all_agree": all_agree,
                }),
            );
        }
        Format::Text => {
            let names: Vec<&str> = methods.iter().map(|m| m.name()).collect();
            let _ = writeln!(out, "{} levels {k1}+{k2} to q^{}: {}", alg.id(), a.trunc, names.join(", "));
            for r in &reports {
                let series = r.runs.iter().find_map(|(_, run)| match run {
                    Run::Done(res) => Some(res.series.to_string()),
                    Run::Broken(_) => None,
                });
                let _ = writeln!(
                    out,
                    "{:>10} x {:>10} -> {:>10}  {}  {}",
                    format_labels(&r.query.lambda1),
                    format_labels(&r.query.lambda2),
                    format_labels(&r.query.mu),
                    if r.agree { "OK  " } else { "DIFF" },
                    series.unwrap_or_default()
                );
                if !r.agree {
                    for (m, run) in &r.runs {
                        let shown = match run {
                            Run::Done(res) => res.series.to_string(),
                            Run::Broken(msg) => format!("ERROR {msg}"),
                        };
                        let _ = writeln!(out, "      {:<14} {shown}", m.name());
                    }
                }
            }
            let bad = reports.iter().filter(|r| !r.agree).count();
            let _ = writeln!(out, "{} triples, {} disagreeing", reports.len(), bad);
        }
    }
    Ok(if all_agree { EXIT_OK } else { EXIT_DISAGREE })
}

fn cmd_cache(action: &CacheAction, fmt: Format, cache: Option<DiskCache>, out: &mut Vec<u8>) -> Outcome {
    let cache = cache.ok_or_else(|| Failure::usage("--cache-dir: no cache directory (set it or BRANCHKIT_CACHE)"))?;
    let fail = |e: Error| Failure::usage(e.to_string());
    match action {
        CacheAction::List => {
            let entries = cache.list().map_err(fail)?;
            match fmt {
                Format::Json => emit_json(
                    out,
                    &entries
                        .iter()
                        .map(|e| {
                            json!({
                                "file": e.path.file_name().map(|s| s.to_string_lossy().into_owned()),
                                "algebra": e.header.algebra.to_string(),
                                "lambda": e.header.highest,
                                "trunc": e.header.trunc,
                                "entries": e.entries,
                            })
                        })
                        .collect::<Vec<_>>(),
                ),
                Format::Text => {
                    for e in &entries {
                        let _ = writeln!(
                            out,
                            "{} {} N={} ({} entries)",
                            e.header.algebra,
                            format_labels(&e.header.highest),
                            e.header.trunc,
                            e.entries
                        );
                    }
                }
            }
        }
        CacheAction::Clear => {
            let n = cache.clear().map_err(fail)?;
            match fmt {
                Format::Json => emit_json(out, &json!({ "removed": n })),
                Format::Text => {
                    let _ = writeln!(out, "removed {n} tables");
                }
            }
        }
    }
    Ok(EXIT_OK)
}
