//! Command-line front end. [`run`] parses the arguments, writes reports to
//! `out` and diagnostics to `err`, and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::builder::{PossibleValuesParser, RangedU64ValueParser};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cayley;
use crate::eggbox::{eggbox_export, eggbox_shapes};
use crate::error::Error;
use crate::extension::{j0_ideal, quotient, ExtensionSemigroup};
use crate::green::green;
use crate::pinj::matrix_units;
use crate::semigroup::{FiniteSemigroup, Regularity};
use crate::verify::{literal_reading_counterexample, run_suite, CriterionResult, Instance, VerifyOptions, SUITES};
use crate::{zoo, SizeGuard};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// Semigroup extensions by rank-bounded symmetric inverse semigroups.
///
/// INPUT is a Cayley file path or `builtin:NAME`, where NAME is one of
/// trivial, Z2, min2, leftzero2, null2, T2, chain3, A2 or Bk (matrix units
/// on k points, e.g. B2).
#[derive(Debug, Parser)]
#[command(name = "semiext", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Largest number of elements any step may materialize [default: $SEMIEXT_SIZE_GUARD or 20000]
    #[arg(long, global = true, value_parser = RangedU64ValueParser::<usize>::new().range(1..))]
    pub size_guard: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized spot checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a table; report idempotents, regularity and Green classes
    Validate { input: String },
    /// Build the extension and compare counts and regularity flags
    Extend {
        input: String,
        #[arg(long, value_parser = positive())]
        lambda: usize,
        #[arg(long, value_parser = positive())]
        n: usize,
        /// Random associativity triples to check
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Run verification batteries
    Verify {
        #[arg(default_value = "all", value_parser = PossibleValuesParser::new(SUITES))]
        suite: String,
        /// Check that the per-pair zero-label reading fails to be a congruence
        #[arg(long)]
        literal_reading: bool,
        /// Restrict instance batteries to this base [default: builtin:min2]
        #[arg(long)]
        base: Option<String>,
        #[arg(long, value_parser = positive())]
        lambda: Option<usize>,
        #[arg(long, value_parser = positive())]
        n: Option<usize>,
        /// Exponent bound for the bicyclic witness search
        #[arg(long, default_value_t = 5)]
        bound: u64,
    },
    /// Write the eggbox diagram of a semigroup or of its extension
    Eggbox {
        input: String,
        #[arg(long, value_parser = positive(), requires = "n")]
        lambda: Option<usize>,
        #[arg(long, value_parser = positive(), requires = "lambda")]
        n: Option<usize>,
        /// Output file [default: stdout]
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn positive() -> RangedU64ValueParser<usize> {
    RangedU64ValueParser::<usize>::new().range(1..)
}

/// A failed command with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn invariant(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INVARIANT, message: message.into() }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeGuardExceeded { .. } => EXIT_GUARD,
        Error::NonAssociative(..)
        | Error::BadIdentity { .. }
        | Error::BadZero { .. }
        | Error::NotIdempotent(_)
        | Error::NotACongruence(_) => EXIT_INVARIANT,
        _ => EXIT_USAGE,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Loads a Cayley file or a `builtin:NAME`.
fn load(input: &str, guard: SizeGuard) -> std::result::Result<FiniteSemigroup, Failure> {
    if let Some(name) = input.strip_prefix("builtin:") {
        if let Some(s) = zoo::by_name(name) {
            return Ok(s);
        }
        let k = name
            .strip_prefix(['B', 'b'])
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|&k| k > 0)
            .ok_or_else(|| Failure::usage(format!("unknown builtin {name:?}")))?;
        return Ok(matrix_units(k, guard)?);
    }
    let text = std::fs::read_to_string(input).map_err(|e| Failure::usage(format!("cannot read {input}: {e}")))?;
    Ok(cayley::read_semigroup(&text)?)
}

fn classify(s: &FiniteSemigroup, r: &Regularity) -> String {
    let kind = if r.is_inverse {
        if s.is_monoid() {
            "inverse monoid"
        } else {
            "inverse semigroup"
        }
    } else if r.is_orthodox {
        "orthodox, not inverse"
    } else if r.is_regular {
        "regular, not orthodox"
    } else {
        "not regular"
    };
    let k = s.idempotents().len();
    format!("{kind}, {k} idempotent{}", if k == 1 { "" } else { "s" })
}

fn names_of(s: &FiniteSemigroup, set: impl IntoIterator<Item = usize>) -> Vec<String> {
    set.into_iter().map(|i| s.name(i)).collect()
}

fn emit_json(out: &mut dyn Write, v: &Value) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json values serialize"))
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::usage(format!("write failed: {e}"))
}

fn no_dot(cfg: &RunConfig) -> std::result::Result<(), Failure> {
    if cfg.format == Format::Dot {
        return Err(Failure::usage("--format dot is only available for eggbox"));
    }
    Ok(())
}

fn cmd_validate(cfg: &RunConfig, guard: SizeGuard, input: &str, out: &mut dyn Write) -> CmdResult {
    no_dot(cfg)?;
    let s = load(input, guard)?;
    let r = s.regularity();
    let g = green(&s);
    let [cr, cl, ch, cd, cj] = g.counts();
    let summary = classify(&s, &r);
    let idem = names_of(&s, s.idempotents());
    if cfg.format == Format::Json {
        let v = json!({
            "order": s.size(),
            "identity": s.identity(),
            "zero": s.zero(),
            "idempotents": idem,
            "regular": r.is_regular,
            "orthodox": r.is_orthodox,
            "inverse": r.is_inverse,
            "summary": summary,
            "green": { "R": cr, "L": cl, "H": ch, "D": cd, "J": cj },
        });
        emit_json(out, &v).map_err(io_failure)?;
    } else {
        let opt = |v: Option<usize>| v.map_or("none".to_string(), |i| s.name(i));
        let text = format!(
            "order: {}\nidentity: {}\nzero: {}\nidempotents: {}\nregular: {}  orthodox: {}  inverse: {}\n{summary}\nGreen classes: R={cr} L={cl} H={ch} D={cd} J={cj}\n",
            s.size(),
            opt(s.identity()),
            opt(s.zero()),
            idem.join(" "),
            r.is_regular,
            r.is_orthodox,
            r.is_inverse,
        );
        out.write_all(text.as_bytes()).map_err(io_failure)?;
    }
    Ok(EXIT_OK)
}

fn flag_row(r: &Regularity) -> [bool; 3] {
    [r.is_regular, r.is_orthodox, r.is_inverse]
}

fn cmd_extend(
    cfg: &RunConfig,
    guard: SizeGuard,
    input: &str,
    lambda: usize,
    n: usize,
    samples: usize,
    out: &mut dyn Write,
) -> CmdResult {
    no_dot(cfg)?;
    let base = load(input, guard)?;
    let e = ExtensionSemigroup::new(base.clone(), lambda, n)?;
    let closed = e.count();
    let m = e.materialize(guard)?;
    let enumerated = m.len() as u128;
    let j0 = match base.zero() {
        Some(_) => Some(j0_ideal(&e)?.len()),
        None => None,
    };
    let base_flags = flag_row(&base.regularity());
    let ext_flags = flag_row(&m.semigroup.regularity());
    let quot_flags = match base.zero() {
        Some(_) => Some(flag_row(&quotient(&e, guard)?.semigroup.regularity())),
        None => None,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut bad_triple = None;
    for _ in 0..samples {
        let (a, b, c) = (e.random_element(&mut rng), e.random_element(&mut rng), e.random_element(&mut rng));
        let left = e.product(&e.product(&a, &b)?, &c)?;
        let right = e.product(&a, &e.product(&b, &c)?)?;
        if left != right {
            bad_triple = Some(format!("({a} {b} {c})"));
            break;
        }
    }

    let counts_agree = closed == enumerated;
    let flags_agree = ext_flags == base_flags && quot_flags.is_none_or(|q| q == base_flags);
    let passed = counts_agree && flags_agree && bad_triple.is_none();
    let names = ["regular", "orthodox", "inverse"];

    if cfg.format == Format::Json {
        let table: Vec<Value> = (0..3)
            .map(|i| {
                json!({
                    "flag": names[i],
                    "base": base_flags[i],
                    "extension": ext_flags[i],
                    "quotient": quot_flags.map(|q| q[i]),
                })
            })
            .collect();
        let v = json!({
            "lambda": lambda,
            "n": n,
            "base_order": base.size(),
            "count_closed_form": closed.to_string(),
            "count_enumerated": enumerated.to_string(),
            "counts_agree": counts_agree,
            "j0_size": j0,
            "flags": table,
            "flags_agree": flags_agree,
            "seed": cfg.seed,
            "spot_checks": samples,
            "spot_check_failure": bad_triple,
            "passed": passed,
        });
        emit_json(out, &v).map_err(io_failure)?;
    } else {
        let mut text = format!("extension of an order-{} base, lambda={lambda}, n={n}\n", base.size());
        text += &format!(
            "elements: closed form {closed}, enumerated {enumerated} ({})\n",
            if counts_agree { "agree" } else { "DISAGREE" }
        );
        if let Some(j) = j0 {
            text += &format!("J0 size: {j}\n");
        }
        text += &format!("{:<10}{:<7}{:<11}{}\n", "flag", "base", "extension", "quotient");
        for i in 0..3 {
            let q = quot_flags.map_or("-".to_string(), |q| q[i].to_string());
            text += &format!("{:<10}{:<7}{:<11}{q}\n", names[i], base_flags[i], ext_flags[i]);
        }
        match &bad_triple {
            None => text += &format!("spot checks: {samples} random triples associative (seed {})\n", cfg.seed),
            Some(t) => text += &format!("spot checks: non-associative triple {t} (seed {})\n", cfg.seed),
        }
        out.write_all(text.as_bytes()).map_err(io_failure)?;
    }
    if passed {
        Ok(EXIT_OK)
    } else {
        Err(Failure::invariant("extension report disagrees with the base"))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    cfg: &RunConfig,
    guard: SizeGuard,
    suite: &str,
    literal_reading: bool,
    base: Option<&str>,
    lambda: Option<usize>,
    n: Option<usize>,
    bound: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    no_dot(cfg)?;
    let mut opts = VerifyOptions { guard, bound, instance: None };
    if base.is_some() || lambda.is_some() || n.is_some() {
        let input = base.unwrap_or("builtin:min2");
        let s = load(input, guard)?;
        let (lambda, n) = (lambda.unwrap_or(2), n.unwrap_or(1));
        ExtensionSemigroup::new(s.clone(), lambda, n)?;
        let name = input.strip_prefix("builtin:").unwrap_or(input);
        opts.instance = Some(Instance::new(name, s, lambda, n));
    }
    let results = if literal_reading {
        let outcome = literal_reading_counterexample(&opts);
        let r = match outcome {
            Ok(Ok(d)) => CriterionResult { id: 4, name: "literal reading".into(), passed: true, detail: d, error: None },
            Ok(Err(d)) => CriterionResult { id: 4, name: "literal reading".into(), passed: false, detail: d, error: None },
            Err(e) => CriterionResult {
                id: 4,
                name: "literal reading".into(),
                passed: false,
                detail: format!("error: {e}"),
                error: Some(e),
            },
        };
        vec![r]
    } else {
        run_suite(suite, &opts)?
    };
    if cfg.format == Format::Json {
        let v = serde_json::to_value(&results).expect("results serialize");
        emit_json(out, &json!({ "suite": suite, "results": v })).map_err(io_failure)?;
    } else {
        for r in &results {
            writeln!(out, "{}", r.line()).map_err(io_failure)?;
        }
    }
    match results.iter().find(|r| !r.passed) {
        None => Ok(EXIT_OK),
        Some(first) => {
            writeln!(err, "first failure: {}", first.line()).map_err(io_failure)?;
            let guard_hit = results
                .iter()
                .any(|r| matches!(r.error, Some(Error::SizeGuardExceeded { .. })));
            Ok(if guard_hit { EXIT_GUARD } else { EXIT_INVARIANT })
        }
    }
}

fn cmd_eggbox(
    cfg: &RunConfig,
    guard: SizeGuard,
    input: &str,
    params: Option<(usize, usize)>,
    path: Option<&PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let base = load(input, guard)?;
    let s = match params {
        Some((lambda, n)) => ExtensionSemigroup::new(base, lambda, n)?.materialize(guard)?.semigroup,
        None => base,
    };
    let g = green(&s);
    let names = names_of(&s, s.elements());
    let dot = eggbox_export(&g, &names);
    let shapes = eggbox_shapes(&g);
    if let Some(p) = path {
        std::fs::write(p, &dot).map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display())))?;
    }
    match (cfg.format, path) {
        (Format::Json, _) => {
            let v = json!({ "d_classes": shapes.len(), "shapes": shapes, "dot": dot });
            emit_json(out, &v).map_err(io_failure)?;
        }
        (_, Some(p)) => {
            writeln!(out, "wrote {} ({} D-classes)", p.display(), shapes.len()).map_err(io_failure)?;
        }
        (_, None) => out.write_all(dot.as_bytes()).map_err(io_failure)?,
    }
    Ok(EXIT_OK)
}

fn dispatch(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let guard = cfg.size_guard.map(SizeGuard::new).unwrap_or_else(SizeGuard::from_env);
    match &cfg.command {
        Command::Validate { input } => cmd_validate(cfg, guard, input, out),
        Command::Extend { input, lambda, n, samples } => cmd_extend(cfg, guard, input, *lambda, *n, *samples, out),
        Command::Verify { suite, literal_reading, base, lambda, n, bound } => {
            cmd_verify(cfg, guard, suite, *literal_reading, base.as_deref(), *lambda, *n, *bound, out, err)
        }
        Command::Eggbox { input, lambda, n, out: path } => {
            let params = lambda.zip(*n);
            cmd_eggbox(cfg, guard, input, params, path.as_ref(), out)
        }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{e}");
            return code;
        }
    };
    match dispatch(&cfg, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("semiext").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn validate_builtin() {
        let (code, out, _) = run_str(&["validate", "builtin:min2"]);
        assert_eq!(code, 0);
        assert!(out.contains("inverse monoid, 2 idempotents"), "{out}");
        let (_, out, _) = run_str(&["validate", "builtin:T2"]);
        assert!(out.contains("orthodox, not inverse"), "{out}");
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_str(&["extend", "builtin:min2", "--lambda", "1", "--n", "2"]).0, 1);
        assert_eq!(run_str(&["validate", "builtin:nothing"]).0, 1);
        assert_eq!(run_str(&["frobnicate"]).0, 1);
        assert_eq!(run_str(&["validate", "builtin:min2", "--format", "dot"]).0, 1);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn guard_exits_three() {
        let (code, _, err) = run_str(&["extend", "builtin:Z2", "--lambda", "3", "--n", "3", "--size-guard", "10"]);
        assert_eq!(code, 3, "{err}");
    }

    #[test]
    fn builtin_matrix_units() {
        let (code, out, _) = run_str(&["validate", "builtin:B3"]);
        assert_eq!(code, 0);
        assert!(out.contains("order: 10"), "{out}");
    }
}
