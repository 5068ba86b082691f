use std::io::{ErrorKind, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qpartition::partition::{CEILING_ENV, DEFAULT_CEILING};
use qpartition::summation::SumRules;
use qpartition::verify::{Divergence, TheoremParams};
use qpartition::{
    BlockConjugationParams, ClassParams, ClassSpec, Enumerator, IdentityId, IdentityParams,
    Members, NestedSum, Partition, PartitionTheorem, SignedMonomial, SumVariant,
    VerificationReport,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "qpartition",
    version,
    about = "Check q-series identities and partition theorems exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify an identity or a partition theorem (or `all` of them).
    Verify(VerifyArgs),
    /// Number of members of a class at weight m.
    Count(ClassArgs),
    /// Members of a class at weight m, in descending lexicographic order.
    List(ClassArgs),
    /// Run the column bijection on one partition and show every stage.
    Conjugate(ConjugateArgs),
    /// Compare a nested sum, its telescoped form and the closed form.
    SumCheck(SumCheckArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity tag (QBINOMIAL, HHK, S33, …), theorem tag (LEMMA1, T2, RR1, …) or `all`.
    target: String,
    /// Truncation order for identities.
    #[arg(long, default_value_t = 60)]
    order: u32,
    /// Largest weight for partition theorems; defaults per theorem.
    #[arg(long)]
    m_max: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// Free parameter a, as a signed monomial such as `-q^2`.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<SignedMonomial>,
    /// Free parameter b, as a signed monomial.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<SignedMonomial>,
    /// Highest power of z kept for QBINOMIAL.
    #[arg(long)]
    z_order: Option<usize>,
    /// Sweep the tag's whole parameter grid.
    #[arg(long, conflicts_with_all = ["n", "r", "s", "k", "a", "b"])]
    grid: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ClassArgs {
    /// Class tag such as RR2_B, LEMMA1_A or RS33_C.
    class: String,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConjugateArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n: u32,
    /// Parts, comma separated, in any order.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    parts: Vec<u32>,
    /// Apply the inverse map instead.
    #[arg(long)]
    inverse: bool,
}

#[derive(Args)]
struct SumCheckArgs {
    /// Which nested sum: 1, 2 or 3.
    #[arg(long)]
    lemma: SumVariant,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u32,
    /// Sign of b: +1, -1 or 0 (b = 0).
    #[arg(long, allow_hyphen_values = true, default_value = "+1")]
    b_sign: String,
    /// Exponent t in b = ±q^t.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    b_exp: i64,
    /// Evaluate in the base q^d.
    #[arg(long, default_value_t = 1)]
    base: u32,
    #[arg(long, default_value_t = 30)]
    order: u32,
    /// Keep both copies of a factor shared by adjacent equal indices.
    #[arg(long)]
    no_dedup: bool,
    /// Keep the factor `1 + b` when the first index is zero.
    #[arg(long)]
    keep_leading: bool,
    #[arg(long)]
    json: bool,
}

/// Usage or parameter error, reported with exit code 2.
struct Usage(String);

impl<E: std::error::Error> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

type Outcome = Result<bool, Usage>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Count(a) => count(a),
        Command::List(a) => list(a),
        Command::Conjugate(a) => conjugate(a),
        Command::SumCheck(a) => sum_check(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn enumerator() -> Result<Enumerator, Usage> {
    match std::env::var(CEILING_ENV) {
        Err(_) => Ok(Enumerator::with_ceiling(DEFAULT_CEILING)),
        Ok(v) => v
            .trim()
            .parse()
            .map(Enumerator::with_ceiling)
            .map_err(|_| Usage(format!("{CEILING_ENV}={v} is not a non-negative integer"))),
    }
}

/// Writes one line to stdout; a closed pipe (`| head`) ends the process
/// quietly instead of panicking.
fn emit(line: &str) {
    if let Err(e) = writeln!(std::io::stdout().lock(), "{line}") {
        if e.kind() == ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

macro_rules! out {
    ($($t:tt)*) => { emit(&format!($($t)*)) };
}

fn print_json<T: Serialize>(value: &T) {
    out!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

/// A JSON object with one field per line, in the given order, and each
/// value kept on a single line.
fn print_record(fields: &[(&str, serde_json::Value)]) {
    let body: Vec<String> = fields
        .iter()
        .map(|(k, v)| format!("  {}: {}", to_json(k), to_json(v)))
        .collect();
    out!("{{\n{}\n}}", body.join(",\n"));
}

enum Job {
    Identity(IdentityId),
    Theorem(PartitionTheorem, Option<TheoremParams>),
}

impl Job {
    fn run(
        &self,
        order: u32,
        m_max: Option<u32>,
        en: &Enumerator,
    ) -> Result<VerificationReport, Usage> {
        Ok(match self {
            Job::Identity(id) => qpartition::verify_identity(id, order)?,
            Job::Theorem(t, p) => {
                let m = m_max.unwrap_or_else(|| t.default_m_max());
                let grid = p.map(|p| vec![p]);
                qpartition::verify_partition_theorem(*t, grid.as_deref(), m, en)?
            }
        })
    }
}

fn jobs_for(tag: &str, a: &VerifyArgs) -> Result<Vec<Job>, Usage> {
    let is_identity = IdentityId::tags()
        .iter()
        .any(|t| t.eq_ignore_ascii_case(tag));
    if is_identity {
        if a.grid {
            return Ok(IdentityId::grid(tag)?
                .into_iter()
                .map(Job::Identity)
                .collect());
        }
        let params = IdentityParams {
            r: a.r,
            s: a.s,
            k: a.k,
            a: a.a,
            b: a.b,
            z_order: a.z_order,
        };
        return Ok(vec![Job::Identity(IdentityId::from_tag(tag, params)?)]);
    }
    let theorem = PartitionTheorem::from_tag(tag)?;
    let given = TheoremParams {
        n: a.n,
        r: a.r,
        s: a.s,
        k: a.k,
    };
    let point = (given != TheoremParams::default()).then_some(given);
    Ok(vec![Job::Theorem(theorem, point)])
}

fn verify(a: VerifyArgs) -> Outcome {
    let en = enumerator()?;
    let jobs = if a.target.eq_ignore_ascii_case("all") {
        let mut jobs = Vec::new();
        for tag in IdentityId::tags() {
            if a.grid {
                jobs.extend(jobs_for(tag, &a)?);
            } else {
                jobs.push(Job::Identity(IdentityId::from_tag(
                    tag,
                    IdentityParams::default(),
                )?));
            }
        }
        jobs.extend(
            PartitionTheorem::all()
                .into_iter()
                .map(|t| Job::Theorem(t, None)),
        );
        jobs
    } else {
        jobs_for(&a.target, &a)?
    };
    let single = jobs.len() == 1 && !a.target.eq_ignore_ascii_case("all") && !a.grid;
    let mut reports = jobs
        .par_iter()
        .map(|j| j.run(a.order, a.m_max, &en))
        .collect::<Result<Vec<_>, _>>()?;
    if !single {
        reports.sort_by(|x, y| x.identity.cmp(&y.identity));
    }
    let passed = reports.iter().all(VerificationReport::passed);
    if a.json {
        if single {
            print_json(&reports[0]);
        } else {
            print_json(&reports);
        }
    } else {
        for r in &reports {
            out!("{r}");
            if let Some(Divergence::Count { members, .. }) = &r.first_divergence {
                for (class, list) in members {
                    out!("  {class}: {}", list.join(" "));
                }
            }
        }
        if !single {
            let ok = reports.iter().filter(|r| r.passed()).count();
            out!("{ok} of {} passed", reports.len());
        }
    }
    Ok(passed)
}

fn class_members(a: &ClassArgs) -> Result<Members, Usage> {
    let params = ClassParams {
        n: a.n,
        r: a.r,
        s: a.s,
        k: a.k,
    };
    let spec = ClassSpec::from_tag(&a.class, params)?;
    Ok(spec.members(a.m, &enumerator()?)?)
}

fn count(a: ClassArgs) -> Outcome {
    let n = class_members(&a)?.len();
    if a.json {
        out!(
            "{}",
            json!({ "class": a.class.to_ascii_uppercase(), "m": a.m, "count": n })
        );
    } else {
        out!("{n}");
    }
    Ok(true)
}

fn list(a: ClassArgs) -> Outcome {
    let members = class_members(&a)?;
    if a.json {
        // one member per line keeps golden files diffable
        let rows: Vec<String> = match &members {
            Members::Partitions(v) => v.iter().map(to_json).collect(),
            Members::Bipartitions(v) => v.iter().map(to_json).collect(),
        };
        if rows.is_empty() {
            out!("[]");
        } else {
            out!("[\n  {}\n]", rows.join(",\n  "));
        }
    } else {
        for line in members.render() {
            out!("{line}");
        }
    }
    Ok(true)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn conjugate(a: ConjugateArgs) -> Outcome {
    if a.k == 0 || a.r == 0 {
        return Err(Usage("--k and --r must be positive".into()));
    }
    let params = BlockConjugationParams::new(a.k, a.r, a.n);
    let input = Partition::new(a.parts);
    let header = json!({ "k": a.k, "r": a.r, "n": a.n });
    if a.inverse {
        let output = qpartition::lemma1_inverse(&input, params)?;
        print_record(&[
            ("params", header),
            ("input", json!(input)),
            ("output", json!(output)),
        ]);
    } else {
        let trace = qpartition::bijection::lemma1_forward_traced(&input, params)?;
        print_record(&[
            ("params", header),
            ("input", json!(trace.input)),
            ("residual", json!(trace.residual)),
            ("columns", json!(trace.columns)),
            ("dropped_columns", json!(trace.dropped_columns)),
            ("output", json!(trace.output)),
        ]);
    }
    Ok(true)
}

fn sum_check(a: SumCheckArgs) -> Outcome {
    let b = match a.b_sign.trim() {
        "0" => SignedMonomial::Zero,
        "+" | "1" | "+1" => SignedMonomial::q_pow(a.b_exp),
        "-" | "-1" => SignedMonomial::neg_q_pow(a.b_exp),
        other => {
            return Err(Usage(format!(
                "--b-sign must be +1, -1 or 0, not `{other}`"
            )))
        }
    };
    let rules = SumRules {
        dedup_adjacent: !a.no_dedup,
        drop_leading_constant: !a.keep_leading,
    };
    let sum = NestedSum::new(a.lemma, a.n, a.m, b)
        .with_base(a.base)
        .with_rules(rules);
    let direct = sum.eval(a.order)?;
    let telescoped = sum.telescoped(a.order)?;
    let closed = sum.rhs(a.order)?;
    let divergence = [&direct, &telescoped]
        .into_iter()
        .map(|s| s.first_divergence(&closed, a.order))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .min();
    let passed = divergence.is_none();
    let verdict = if passed { "PASS" } else { "FAIL" };
    if a.json {
        let mut fields = vec![
            ("lemma", json!(a.lemma.to_string())),
            ("n", json!(a.n)),
            ("m", json!(a.m)),
            ("b", json!(b.to_string())),
            ("base", json!(a.base)),
            ("order", json!(a.order)),
            ("direct", json!(direct.to_string())),
            ("telescoped", json!(telescoped.to_string())),
            ("closed_form", json!(closed.to_string())),
            ("verdict", json!(verdict)),
        ];
        if let Some(e) = divergence {
            fields.push(("first_divergence", json!({ "exponent": e })));
        }
        print_record(&fields);
    } else {
        out!(
            "{} n={} m={} b={b} base={} order={}",
            a.lemma,
            a.n,
            a.m,
            a.base,
            a.order
        );
        out!("direct:     {direct}");
        out!("telescoped: {telescoped}");
        out!("closed:     {closed}");
        match divergence {
            None => out!("{verdict}"),
            Some(e) => out!("{verdict}: first difference at q^{e}"),
        }
    }
    Ok(passed)
}
