//! Command-line front end. Results go to stdout as JSON, diagnostics to
//! stderr. Exit status: 0 success, 1 negative mathematical outcome, 2 usage
//! or input error.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::certify::{non_rs_certificate, Certificate};
use crate::code::{EvalCode, EvalSet, ExponentSet};
use crate::codec::{decode_erasures, ReceivedWord};
use crate::conditions::{check_esym, existence_bound, search_eval_set, BoundQuery, BoundVariant, ConditionSpec, SearchStrategy};
use crate::error::{Error, Result};
use crate::families::construct;
use crate::field::{make_field, FieldContext};
use crate::io::{element_from_value, elements_from_value, elements_to_value, optional_elements_from_value, parse_json, to_canonical_string, CodeFile};
use crate::limits::Limits;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "mdsforge", version, about = "Construct and certify non-Reed-Solomon MDS evaluation codes")]
struct Cli {
    /// Worker threads; results are identical for every value.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code from one of the explicit families.
    Construct(ConstructArgs),
    /// Certify a code file: MDS check, Schur square, verdict.
    Verify(VerifyArgs),
    /// Check the k-subset condition e_r(S) != delta.
    Check(CheckArgs),
    /// Search a field for an evaluation set satisfying the condition.
    Search(SearchArgs),
    /// Evaluate the counting bound for existence of a good n-set.
    Bound(BoundArgs),
    /// Encode a message with a code file.
    Encode(EncodeArgs),
    /// Recover a message from a word with erasures (null entries).
    Decode(DecodeArgs),
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// cor44, thm412, thm415, cor62, thm63, thm64, hamming-lift or cor411
    family: String,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
    /// Base field order for hamming-lift.
    #[arg(long = "base-q")]
    base_q: Option<u64>,
    /// Embed a certificate in the output.
    #[arg(long)]
    certify: bool,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    code: PathBuf,
    /// Also enumerate every codeword for the minimum distance.
    #[arg(long)]
    min_distance: bool,
    /// Rewrite the code file with the fresh certificate embedded.
    #[arg(long)]
    embed: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Code file whose points are checked.
    code: Option<PathBuf>,
    /// Field as p,m when no code file is given.
    #[arg(long, conflicts_with = "code", requires = "points")]
    field: Option<FieldArg>,
    /// JSON array of digit arrays.
    #[arg(long, requires = "field")]
    points: Option<String>,
    /// Subset size; defaults to the code dimension.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Forbidden value as a JSON digit array; zero by default.
    #[arg(long)]
    delta: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Random,
    Greedy,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    field: FieldArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
    strategy: StrategyArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "max-attempts", default_value_t = 10_000)]
    max_attempts: u64,
    /// Forbidden value as a JSON digit array; with a nonzero value the bare
    /// point set is printed instead of a code file.
    #[arg(long)]
    delta: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    General,
    Vieta,
}

#[derive(Args, Debug)]
struct BoundArgs {
    /// Field size (arbitrary precision).
    #[arg(long)]
    q: String,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: u64,
    /// Largest exponent of I.
    #[arg(long = "mI")]
    m_i: Option<u64>,
    #[arg(long, value_enum, default_value_t = VariantArg::General)]
    variant: VariantArg,
}

#[derive(Args, Debug)]
struct EncodeArgs {
    code: PathBuf,
    /// JSON array of k digit arrays.
    #[arg(long)]
    message: String,
}

#[derive(Args, Debug)]
struct DecodeArgs {
    code: PathBuf,
    /// JSON array of n digit arrays, null for erased positions.
    #[arg(long)]
    received: String,
}

#[derive(Clone, Copy, Debug)]
struct FieldArg {
    p: u64,
    m: usize,
}

impl FromStr for FieldArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (p, m) = s.split_once(',').ok_or_else(|| format!("expected p,m but got {s:?}"))?;
        let p = p.trim().parse().map_err(|e| format!("bad p: {e}"))?;
        let m = m.trim().parse().map_err(|e| format!("bad m: {e}"))?;
        Ok(FieldArg { p, m })
    }
}

/// Outcome of a subcommand: JSON for stdout and the exit status.
struct Outcome {
    value: Value,
    code: i32,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, code: EXIT_OK }
    }

    fn judged(value: Value, positive: bool) -> Self {
        Outcome { value, code: if positive { EXIT_OK } else { EXIT_NEGATIVE } }
    }
}

/// Runs the CLI with process stdout/stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI writing to the given streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let limits = Limits::from_env().with_jobs(cli.jobs);
    let result = match cli.command {
        Command::Construct(a) => cmd_construct(a, &limits, err),
        Command::Verify(a) => cmd_verify(a, &limits, err),
        Command::Check(a) => cmd_check(a, &limits),
        Command::Search(a) => cmd_search(a, &limits),
        Command::Bound(a) => cmd_bound(a),
        Command::Encode(a) => cmd_encode(a),
        Command::Decode(a) => cmd_decode(a),
    };
    match result {
        Ok(o) => {
            if !o.value.is_null() || o.code != EXIT_OK {
                let _ = writeln!(out, "{}", to_canonical_string(&o.value));
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Writes via a sibling temporary file and a rename, so readers never see
/// a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| Error::Format(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let io = |e: std::io::Error| Error::Format(format!("writing {}: {e}", path.display()));
    let write = || -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    };
    write().map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io(e)
    })
}

fn read_code(path: &Path) -> Result<CodeFile> {
    let text = fs::read_to_string(path).map_err(|e| Error::Format(format!("reading {}: {e}", path.display())))?;
    CodeFile::parse(&text)
}

fn parse_field(f: FieldArg) -> Result<FieldContext> {
    make_field(f.p, f.m)
}

fn parse_delta(ctx: &FieldContext, delta: &Option<String>) -> Result<crate::field::FieldElement> {
    match delta {
        None => Ok(ctx.zero()),
        Some(s) => element_from_value(ctx, &parse_json(s)?),
    }
}

fn cmd_construct(a: ConstructArgs, limits: &Limits, err: &mut dyn Write) -> Result<Outcome> {
    let mut params = BTreeMap::new();
    for (name, v) in [("p", a.p), ("m", a.m), ("k", a.k), ("n", a.n), ("r", a.r), ("q", a.base_q)] {
        if let Some(v) = v {
            params.insert(name.to_string(), v);
        }
    }
    let code = construct(&a.family, &params, limits)?;
    let mut file = CodeFile::new(code);
    if a.certify {
        file.certificate = Some(non_rs_certificate(&file.code, limits, false)?);
    }
    match a.output {
        Some(path) => {
            write_atomic(&path, &file.to_canonical_string())?;
            let _ = writeln!(err, "wrote [{}, {}] {} code to {}", file.code.n(), file.code.k(), file.code.family(), path.display());
            Ok(Outcome::ok(Value::Null))
        }
        None => Ok(Outcome::ok(file.to_value())),
    }
}

fn cmd_verify(a: VerifyArgs, limits: &Limits, err: &mut dyn Write) -> Result<Outcome> {
    let mut file = read_code(&a.code)?;
    let embedded = file.certificate.clone();
    let want_distance = a.min_distance || embedded.as_ref().is_some_and(|c| c.min_distance.is_some());
    let fresh = non_rs_certificate(&file.code, limits, want_distance)?;
    let mut positive = fresh.is_mds;
    if let Some(old) = &embedded {
        if !embedded_matches(old, &fresh) {
            let _ = writeln!(err, "embedded certificate does not match recomputation");
            positive = false;
        }
    }
    if a.embed {
        file.certificate = Some(fresh.clone());
        write_atomic(&a.code, &file.to_canonical_string())?;
    }
    let _ = writeln!(err, "[{}, {}] mds={} schur_dim={}", fresh.n, fresh.k, fresh.is_mds, fresh.schur_dim);
    Ok(Outcome::judged(crate::io::certificate_to_value(&fresh), positive))
}

/// An embedded certificate without distance data still matches a fresh one
/// that has it.
fn embedded_matches(old: &Certificate, fresh: &Certificate) -> bool {
    let mut f = fresh.clone();
    if old.min_distance.is_none() {
        f.min_distance = None;
        f.weight_distribution = None;
    }
    if old.weight_distribution.is_none() {
        f.weight_distribution = None;
    }
    *old == f
}

fn cmd_check(a: CheckArgs, limits: &Limits) -> Result<Outcome> {
    let (ctx, set, default_k) = match (&a.code, a.field, &a.points) {
        (Some(path), _, _) => {
            let file = read_code(path)?;
            let k = file.code.k();
            (file.code.ctx().clone(), file.code.points().clone(), Some(k))
        }
        (None, Some(f), Some(pts)) => {
            let ctx = parse_field(f)?;
            let points = elements_from_value(&ctx, &parse_json(pts)?)?;
            (ctx.clone(), EvalSet::new(&ctx, points)?, None)
        }
        _ => return Err(Error::InvalidParams("check needs a code file or --field with --points".into())),
    };
    let k = a.k.or(default_k).ok_or_else(|| Error::InvalidParams("--k is required with --points".into()))?;
    let spec = ConditionSpec::new(k, a.r, parse_delta(&ctx, &a.delta)?)?;
    let res = check_esym(&ctx, &set, &spec, limits)?;
    Ok(Outcome::judged(json!({ "holds": res.holds, "witness": res.witness }), res.holds))
}

fn cmd_search(a: SearchArgs, limits: &Limits) -> Result<Outcome> {
    let ctx = parse_field(a.field)?;
    let delta = parse_delta(&ctx, &a.delta)?;
    let spec = ConditionSpec::new(a.k, a.r, delta.clone())?;
    let (strategy, name) = match a.strategy {
        StrategyArg::Exhaustive => (SearchStrategy::Exhaustive, "exhaustive"),
        StrategyArg::Random => (SearchStrategy::Random { seed: a.seed, max_attempts: a.max_attempts }, "random"),
        StrategyArg::Greedy => (SearchStrategy::Greedy, "greedy"),
    };
    let Some(found) = search_eval_set(&ctx, a.n, &spec, strategy, limits)? else {
        return Ok(Outcome::judged(Value::Null, false));
    };
    if !delta.is_zero() {
        return Ok(Outcome::ok(json!({ "points": elements_to_value(found.set.points()), "index": found.index })));
    }
    let mut params: BTreeMap<String, Value> = BTreeMap::new();
    params.insert("k".into(), json!(a.k));
    params.insert("n".into(), json!(a.n));
    params.insert("r".into(), json!(a.r));
    params.insert("strategy".into(), json!(name));
    if let SearchStrategy::Random { .. } = strategy {
        params.insert("seed".into(), json!(a.seed));
    }
    if let Some(i) = found.index {
        params.insert("index".into(), json!(i));
    }
    let code = EvalCode::tagged(&ctx, found.set, ExponentSet::without_one(a.k, a.r)?, "search", params)?;
    Ok(Outcome::ok(CodeFile::new(code).to_value()))
}

fn cmd_bound(a: BoundArgs) -> Result<Outcome> {
    let q = BigUint::from_str(a.q.trim()).map_err(|_| Error::InvalidParams(format!("--q {:?} is not a non-negative integer", a.q)))?;
    let variant = match a.variant {
        VariantArg::General => BoundVariant::General,
        VariantArg::Vieta => BoundVariant::Vieta,
    };
    // Vieta fixes I = {0..k-2, k}
    let m_i = match (variant, a.m_i) {
        (_, Some(m)) => m,
        (BoundVariant::Vieta, None) => a.k,
        (BoundVariant::General, None) => return Err(Error::InvalidParams("--mI is required for the general variant".into())),
    };
    let res = existence_bound(&BoundQuery { q, n: a.n, k: a.k, m_i, variant })?;
    Ok(Outcome::judged(
        json!({ "holds": res.holds, "lhs": res.lhs.to_string(), "rhs": res.rhs.to_string() }),
        res.holds,
    ))
}

fn cmd_encode(a: EncodeArgs) -> Result<Outcome> {
    let file = read_code(&a.code)?;
    let msg = elements_from_value(file.code.ctx(), &parse_json(&a.message)?)?;
    Ok(Outcome::ok(elements_to_value(&file.code.encode(&msg)?)))
}

fn cmd_decode(a: DecodeArgs) -> Result<Outcome> {
    let file = read_code(&a.code)?;
    let word = ReceivedWord::new(optional_elements_from_value(file.code.ctx(), &parse_json(&a.received)?)?);
    match decode_erasures(&file.code, &word) {
        Ok(m) => Ok(Outcome::ok(elements_to_value(&m))),
        Err(e @ (Error::TooManyErasures { .. } | Error::Inconsistent { .. })) => {
            Ok(Outcome::judged(json!({ "error": e.to_string() }), false))
        }
        Err(e) => Err(e),
    }
}
