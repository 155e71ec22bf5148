//! The `schur-ed` command line.
//!
//! Exit codes: 0 pass, 1 verification failure or internal error, 2 usage
//! error, 3 resource bound exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chartab::{dixon_character_table, DixonOptions};
use crate::covers::{
    alt_cover_subgroup, full_cover, sylow2_alt_cover, sylow2_cover, verify_presentation, CoverGroup,
    CoverSpec, CoverVariant, Permutation, DEFAULT_SIZE_BOUND, PRESENTATION_MAX_N,
};
use crate::edcalc::{ed_report, table1, EdOptions, Which, TABLE1_MAX_N};
use crate::error::Error;
use crate::qforms::{brauer_index, dyadic_form, EtaleAlgebraQ, Poly, QuadFormQ};

pub const SIZE_BOUND_ENV: &str = "SCHUR_ED_SIZE_BOUND";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Parser, Debug)]
#[command(name = "schur-ed", version, about = "Double covers of symmetric and alternating groups")]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on group closures [env: SCHUR_ED_SIZE_BOUND, default 262144]
    #[arg(long, global = true)]
    size_bound: Option<usize>,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operations on a single cover.
    #[command(subcommand)]
    Cover(CoverCommand),
    /// Character degrees and central signs of a cover or one of its subgroups.
    Chartab(ChartabArgs),
    /// ed at 2 of a Sylow preimage: formula, computation and bounds.
    Ed2(Ed2Args),
    /// The table of ed(A_n), ed(~A_n; 2) and ed(~A_n).
    Table1(Table1Args),
    /// Invariants of a diagonal form given as "a1,a2,...".
    Qform(QformArgs),
    /// Trace form of Q[x]/(f).
    TraceForm(TraceFormArgs),
    /// Subform check on random trace forms.
    TraceCheck(TraceCheckArgs),
}

#[derive(Subcommand, Debug)]
enum CoverCommand {
    /// Check the presentation relations and the order 2·n!.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(short)]
    n: usize,
    #[arg(long, default_value = "plus")]
    variant: CoverVariant,
    /// Flip the cocycle on (s1, s1); the check must then fail.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Subgroup {
    /// Preimage of a Sylow 2-subgroup of S_n.
    Sylow2,
    /// Preimage of A_n.
    Alt,
    /// Preimage of a Sylow 2-subgroup of A_n.
    AltSylow2,
    Full,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpec {
    n: usize,
    variant: CoverVariant,
    #[serde(default = "default_subgroup")]
    subgroup: Subgroup,
}

fn default_subgroup() -> Subgroup {
    Subgroup::Sylow2
}

#[derive(Args, Debug)]
struct ChartabArgs {
    /// JSON group spec, e.g. '{"n": 8, "variant": "plus", "subgroup": "sylow2"}'.
    group: Option<String>,
    #[arg(short, conflicts_with = "group")]
    n: Option<usize>,
    #[arg(long, default_value = "plus")]
    variant: CoverVariant,
    #[arg(long, value_enum, default_value_t = Subgroup::Sylow2)]
    subgroup: Subgroup,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WhichArg {
    Sym,
    Alt,
}

#[derive(Args, Debug)]
struct Ed2Args {
    #[arg(short)]
    n: usize,
    #[arg(long, value_enum, default_value_t = WhichArg::Alt)]
    which: WhichArg,
    #[arg(long, default_value = "plus")]
    variant: CoverVariant,
    /// Only report the formula and bounds.
    #[arg(long)]
    no_compute: bool,
}

#[derive(Args, Debug)]
struct Table1Args {
    #[arg(long, default_value_t = TABLE1_MAX_N)]
    n_max: usize,
    /// Row-2 entries up to this n are recomputed from character degrees.
    #[arg(long, default_value_t = 14)]
    verify_up_to: usize,
}

#[derive(Args, Debug)]
struct QformArgs {
    form: String,
}

#[derive(Args, Debug)]
struct TraceFormArgs {
    /// "x^3 - 2" or leading-first coefficients "1,0,0,-2".
    poly: String,
}

#[derive(Args, Debug)]
struct TraceCheckArgs {
    #[arg(short)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

struct Config {
    seed: u64,
    size_bound: usize,
    workers: usize,
    format: Format,
}

impl Config {
    fn dixon(&self) -> DixonOptions {
        DixonOptions { seed: self.seed, workers: self.workers, ..DixonOptions::default() }
    }

    fn ed(&self) -> EdOptions {
        EdOptions { size_bound: self.size_bound, dixon: self.dixon() }
    }
}

/// Outcome of a command: output document and whether every check passed.
struct Outcome {
    doc: Value,
    tsv: Option<String>,
    passed: bool,
    note: Option<String>,
}

impl Outcome {
    fn ok(doc: Value) -> Self {
        Outcome { doc, tsv: None, passed: true, note: None }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        e if e.is_resource_bound() => EXIT_RESOURCE,
        Error::InvalidArgument(_)
        | Error::Precondition(_)
        | Error::Parse(_)
        | Error::NotSquarefree
        | Error::IndexOutOfRange(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn resolve_size_bound(flag: Option<usize>) -> Result<usize, String> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(SIZE_BOUND_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{SIZE_BOUND_ENV} must be a positive integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_SIZE_BOUND),
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let size_bound = match resolve_size_bound(cli.size_bound) {
        Ok(b) => b,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let cfg = Config { seed: cli.seed, size_bound, workers: cli.workers.max(1), format: cli.format };
    let result = panic::catch_unwind(AssertUnwindSafe(|| dispatch(&cli.command, &cfg)));
    match result {
        Ok(Ok(outcome)) => {
            let text = match (cfg.format, &outcome.tsv) {
                (Format::Tsv, Some(t)) => t.clone(),
                (Format::Tsv, None) => to_tsv(&outcome.doc),
                (Format::Json, _) => {
                    let mut s = serde_json::to_string_pretty(&outcome.doc).expect("serializable");
                    s.push('\n');
                    s
                }
            };
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_FAIL;
            }
            if let Some(note) = outcome.note {
                let _ = writeln!(err, "{note}");
            }
            if outcome.passed {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Ok(Err(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| payload.downcast_ref::<&str>().copied())
                .unwrap_or("panic");
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_FAIL
        }
    }
}

/// One `key<TAB>value` line per top-level field; nested values as compact JSON.
fn to_tsv(doc: &Value) -> String {
    let mut s = String::new();
    if let Value::Object(map) = doc {
        for (k, v) in map {
            let cell = match v {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            s += &format!("{k}\t{cell}\n");
        }
    } else {
        s += &doc.to_string();
        s.push('\n');
    }
    s
}

fn dispatch(cmd: &Command, cfg: &Config) -> crate::Result<Outcome> {
    match cmd {
        Command::Cover(CoverCommand::Verify(a)) => cover_verify(a, cfg),
        Command::Chartab(a) => chartab(a, cfg),
        Command::Ed2(a) => ed2(a, cfg),
        Command::Table1(a) => table(a, cfg),
        Command::Qform(a) => qform(a),
        Command::TraceForm(a) => trace_form(a),
        Command::TraceCheck(a) => trace_check(a, cfg),
    }
}

fn cover_verify(a: &VerifyArgs, cfg: &Config) -> crate::Result<Outcome> {
    if !(4..=PRESENTATION_MAX_N).contains(&a.n) {
        return Err(Error::InvalidArgument(format!("n must be in 4..={PRESENTATION_MAX_N}, got {}", a.n)));
    }
    let mut group = CoverGroup::new(CoverSpec::new(a.n, a.variant)?);
    if a.inject_fault {
        let s1 = Permutation::adjacent(a.n, 1)?;
        group = group.with_fault(s1.clone(), s1);
    }
    let report = verify_presentation(&group, PRESENTATION_MAX_N, cfg.size_bound)?;
    let failures: Vec<String> = report.failures().iter().map(|s| s.to_string()).collect();
    let note = if report.passed {
        None
    } else if failures.is_empty() {
        Some(format!("order mismatch: {} != {}", report.order, report.expected_order))
    } else {
        Some(format!("failing relations: {}", failures.join(", ")))
    };
    let passed = report.passed;
    let mut doc = serde_json::to_value(&report).expect("serializable");
    doc["failures"] = json!(failures);
    Ok(Outcome { doc, tsv: None, passed, note })
}

fn chartab(a: &ChartabArgs, cfg: &Config) -> crate::Result<Outcome> {
    let spec = match (&a.group, a.n) {
        (Some(s), _) => serde_json::from_str::<GroupSpec>(s).map_err(|e| Error::Parse(format!("group spec: {e}")))?,
        (None, Some(n)) => GroupSpec { n, variant: a.variant, subgroup: a.subgroup },
        (None, None) => return Err(Error::InvalidArgument("give a JSON group spec or -n".into())),
    };
    let group = CoverGroup::new(CoverSpec::new(spec.n, spec.variant)?);
    let table = match spec.subgroup {
        Subgroup::Sylow2 => sylow2_cover(&group, cfg.size_bound)?,
        Subgroup::AltSylow2 => sylow2_alt_cover(&group, cfg.size_bound)?,
        Subgroup::Alt => alt_cover_subgroup(&group, cfg.size_bound)?,
        Subgroup::Full => full_cover(&group, cfg.size_bound)?,
    };
    let ct = dixon_character_table(&table, &cfg.dixon())?;
    let z = table.index_of(&group.z()).expect("z lies in every preimage");
    let faithful: Option<u64> = ct.involution_position(z).and_then(|k| {
        ct.degrees.iter().zip(&ct.central_signs).filter(|(_, s)| s[k] < 0).map(|(d, _)| *d).min()
    });
    let mut doc = serde_json::to_value(&ct).expect("serializable");
    doc["n"] = json!(spec.n);
    doc["variant"] = json!(spec.variant);
    doc["subgroup"] = json!(spec.subgroup);
    doc["min_faithful_irrep_dim"] = json!(faithful);
    let mut tsv = String::from("class\tsize\n");
    for (l, s) in ct.class_labels.iter().zip(&ct.class_sizes) {
        tsv += &format!("{l}\t{s}\n");
    }
    tsv += "degree\tsigns\n";
    for (d, s) in ct.degrees.iter().zip(&ct.central_signs) {
        let signs: Vec<String> = s.iter().map(|x| if *x > 0 { "+".into() } else { "-".into() }).collect();
        tsv += &format!("{d}\t{}\n", signs.join(","));
    }
    Ok(Outcome { doc, tsv: Some(tsv), passed: true, note: None })
}

fn ed2(a: &Ed2Args, cfg: &Config) -> crate::Result<Outcome> {
    let which = match a.which {
        WhichArg::Sym => Which::Sym,
        WhichArg::Alt => Which::Alt,
    };
    let opts = cfg.ed();
    let compute = if a.no_compute { None } else { Some((a.variant, &opts)) };
    let report = ed_report(a.n, which, compute)?;
    let passed = report.ed2_computed.is_none_or(|c| c == report.ed2_formula);
    let note = (!passed).then(|| "computed value differs from the formula".to_string());
    let mut doc = serde_json::to_value(&report).expect("serializable");
    if !a.no_compute {
        doc["variant"] = json!(a.variant);
    }
    Ok(Outcome { doc, tsv: None, passed, note })
}

fn table(a: &Table1Args, cfg: &Config) -> crate::Result<Outcome> {
    let t = table1(a.n_max, a.verify_up_to, &cfg.ed())?;
    let tsv = t.to_tsv();
    let doc = serde_json::to_value(&t).expect("serializable");
    Ok(Outcome { doc, tsv: Some(tsv), passed: true, note: None })
}

fn form_doc(q: &QuadFormQ) -> crate::Result<Value> {
    let summary = q.summary()?;
    let w2 = q.hasse_invariant()?;
    let mut doc = serde_json::to_value(&summary).expect("serializable");
    doc["form"] = json!(q.entries().iter().map(ToString::to_string).collect::<Vec<_>>());
    doc["isotropic"] = json!(q.is_isotropic()?);
    doc["brauer_index"] = json!(brauer_index(&w2));
    Ok(doc)
}

fn qform(a: &QformArgs) -> crate::Result<Outcome> {
    let q = QuadFormQ::from_str(&a.form)?;
    Ok(Outcome::ok(form_doc(&q)?))
}

fn trace_form(a: &TraceFormArgs) -> crate::Result<Outcome> {
    let f = Poly::from_str(&a.poly)?;
    let e = EtaleAlgebraQ::from_polynomial(&f)?;
    let q = e.trace_form()?;
    let s = e.dimension().count_ones() as usize;
    let mut doc = form_doc(&q)?;
    let contains = q.contains_ones(s)?;
    let dyadic = q.contains_subform(&dyadic_form(e.dimension())?)?;
    let disc_agrees = crate::qforms::same_square_class(&q.determinant(), &e.discriminant_value());
    doc["polynomial"] = json!(e.defining_polynomial().to_string());
    doc["etale_disc"] = json!(e.discriminant()?.to_string());
    doc["s"] = json!(s);
    doc["contains_s_ones"] = json!(contains);
    doc["contains_dyadic"] = json!(dyadic);
    doc["disc_agrees"] = json!(disc_agrees);
    Ok(Outcome { doc, tsv: None, passed: contains && disc_agrees, note: None })
}

fn trace_check(a: &TraceCheckArgs, cfg: &Config) -> crate::Result<Outcome> {
    if a.n == 0 || a.n > crate::qforms::TRACE_FORM_MAX_DIM {
        return Err(Error::InvalidArgument(format!("n must be in 1..={}", crate::qforms::TRACE_FORM_MAX_DIM)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let s = a.n.count_ones() as usize;
    let dyadic_q = dyadic_form(a.n)?;
    let (mut contains, mut dyadic, mut disc) = (0usize, 0usize, 0usize);
    let mut failures = Vec::new();
    for _ in 0..a.trials {
        let e = EtaleAlgebraQ::random(a.n, &mut rng);
        let q = e.trace_form()?;
        let c = q.contains_ones(s)?;
        let d = crate::qforms::same_square_class(&q.determinant(), &e.discriminant_value());
        contains += c as usize;
        dyadic += q.contains_subform(&dyadic_q)? as usize;
        disc += d as usize;
        if !(c && d) {
            let fs: Vec<String> = e.factors().iter().map(ToString::to_string).collect();
            failures.push(fs.join(" * "));
        }
    }
    let passed = failures.is_empty();
    let doc = json!({
        "n": a.n,
        "s": s,
        "trials": a.trials,
        "seed": cfg.seed,
        "contains_s_ones": contains,
        "contains_dyadic": dyadic,
        "dyadic_form": dyadic_q.to_string(),
        "disc_agrees": disc,
        "failures": failures,
    });
    let note = Some(format!("{contains}/{} contain {s}<1>", a.trials));
    Ok(Outcome { doc, tsv: None, passed, note })
}
