//! Subcommand dispatch and report emission.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use gsb_core::census::{count_avoiders, count_normal_forms, oracle_check_irr, CensusError, DEFAULT_ORACLE_BUDGET};
use gsb_core::complete::{complete_basis, CompletionError, CompletionReport, CompletionStatus, DEFAULT_BUDGET};
use gsb_core::compose::{check_all, enumerate_ambiguities, CompositionResult};
use gsb_core::poly::Poly;
use gsb_core::rewrite::{irreducible_words, normal_form, Basis, ReductionTrace};
use gsb_core::symn::{
    build_s_rules, build_s_tilde, irr_enumerate, verify_lemma_membership, verify_theorem, SymnError, Verdict,
};
use gsb_core::words::Word;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::presentation::{parse_presentation, PresentationFile};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gsb", version, about = "Groebner-Shirshov basis workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Complete a rule set below a degree bound
    Complete(Common),
    /// Check that every composition of a rule set is trivial
    Verify {
        #[command(flatten)]
        common: Common,
        /// Check that every member of the five-family set lies in the ideal
        /// of the defining relations instead
        #[arg(long)]
        lemma: bool,
    },
    /// Normal form of a word
    Nf {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
    },
    /// List the normal-form words of one length
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        len: usize,
    },
    /// Count normal-form words of each length
    Count {
        #[command(flatten)]
        common: Common,
        #[arg(long = "max-len")]
        max_len: usize,
    },
    /// Brute-force congruence classes and check one normal form per class
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, conflicts_with = "max_len")]
        len: Option<usize>,
        #[arg(long = "max-len")]
        max_len: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Use the permutation-relation monoid on n generators
    #[arg(long, value_name = "N", conflicts_with = "file", required_unless_present = "file")]
    symn: Option<usize>,
    /// Read a presentation file
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
    #[arg(long = "degree-bound", value_name = "D")]
    degree_bound: Option<usize>,
    /// Rule budget for completion; word budget for the oracle
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads (0 = all cores)
    #[arg(long, env = "GSB_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Write the JSON report here
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Include reduction traces
    #[arg(long)]
    trace: bool,
}

enum Input {
    Symn(usize),
    File(PresentationFile),
}

impl Input {
    fn gens(&self) -> usize {
        match self {
            Input::Symn(n) => *n,
            Input::File(p) => p.gens,
        }
    }

    fn base_rules(&self) -> anyhow::Result<Vec<Poly>> {
        Ok(match self {
            Input::Symn(n) => build_s_rules(*n)?.into_iter().map(|r| r.poly).collect(),
            Input::File(p) => p.polys(),
        })
    }
}

/// A command's outcome before it is wrapped in the report envelope.
struct Outcome {
    code: i32,
    text: String,
    payload: serde_json::Value,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    engine_version: &'a str,
    command: &'a [String],
    input_digest: String,
    payload_digest: String,
    payload: &'a serde_json::Value,
    wall_time_ms: f64,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Runs one invocation. `args` excludes the program name. Human-readable
/// output goes to `out`, diagnostics to `err`.
pub fn run<O: Write, E: Write>(args: &[String], out: &mut O, err: &mut E) -> i32 {
    let argv = std::iter::once("gsb".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli, args, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> i32 {
    fn completion(c: &CompletionError) -> i32 {
        match c {
            CompletionError::BudgetTooSmall { .. } => EXIT_BUDGET,
            CompletionError::BoundTooSmall { .. } => EXIT_USAGE,
            _ => EXIT_FAILED,
        }
    }
    if e.downcast_ref::<UsageError>().is_some() {
        return EXIT_USAGE;
    }
    if let Some(c) = e.downcast_ref::<CompletionError>() {
        return completion(c);
    }
    if let Some(s) = e.downcast_ref::<SymnError>() {
        return match s {
            SymnError::NTooSmall { .. } | SymnError::NTooLarge(_) | SymnError::BoundTooSmall { .. } => EXIT_USAGE,
            SymnError::Completion(c) => completion(c),
            _ => EXIT_FAILED,
        };
    }
    match e.downcast_ref::<CensusError>() {
        Some(CensusError::BudgetExceeded { .. }) => EXIT_BUDGET,
        Some(CensusError::Symn(_)) => EXIT_USAGE,
        None => EXIT_FAILED,
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct UsageError(String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn execute<O: Write>(cli: Cli, args: &[String], out: &mut O) -> anyhow::Result<i32> {
    let common = match &cli.command {
        Command::Complete(c) => c,
        Command::Verify { common, .. }
        | Command::Nf { common, .. }
        | Command::Enumerate { common, .. }
        | Command::Count { common, .. }
        | Command::Oracle { common, .. } => common,
    };
    let (input, digest_source) = load_input(common)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common.jobs)
        .build()
        .context("building thread pool")?;

    let start = Instant::now();
    let outcome = pool.install(|| dispatch(&cli.command, common, &input))?;
    let elapsed = start.elapsed();

    out.write_all(outcome.text.as_bytes())?;
    if let Some(path) = &common.out {
        let payload_bytes = serde_json::to_vec(&outcome.payload)?;
        let env = Envelope {
            schema_version: SCHEMA_VERSION,
            engine_version: env!("CARGO_PKG_VERSION"),
            command: args,
            input_digest: sha256_hex(&digest_source),
            payload_digest: sha256_hex(&payload_bytes),
            payload: &outcome.payload,
            wall_time_ms: (elapsed.as_secs_f64() * 1e3 * 1e3).round() / 1e3,
        };
        let mut json = serde_json::to_string_pretty(&env)?;
        json.push('\n');
        std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(outcome.code)
}

fn load_input(common: &Common) -> anyhow::Result<(Input, Vec<u8>)> {
    match (&common.symn, &common.file) {
        (Some(n), None) => {
            if *n < 2 {
                return Err(usage(format!("--symn needs n >= 2, got {n}")));
            }
            Ok((Input::Symn(*n), format!("symn:{n}").into_bytes()))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("reading {}: {e}", path.display())))?;
            let pres = parse_presentation(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            Ok((Input::File(pres), text.into_bytes()))
        }
        _ => Err(usage("exactly one of --symn and --file is required")),
    }
}

fn dispatch(cmd: &Command, common: &Common, input: &Input) -> anyhow::Result<Outcome> {
    let n = input.gens();
    let default_bound = common.degree_bound.unwrap_or(n + 6);
    let rule_budget = common.budget.map(|b| b as usize).unwrap_or(DEFAULT_BUDGET);
    match cmd {
        Command::Complete(_) => {
            let rules = input.base_rules()?;
            let report = complete_for(input, &rules, default_bound, rule_budget, common.degree_bound.is_none())?;
            let code = completion_code(&report);
            let mut text = String::new();
            writeln!(text, "status: {}", status_name(report.status))?;
            writeln!(text, "rounds: {}", report.rounds)?;
            writeln!(text, "rules: {} ({} added)", report.basis.len(), report.added.len())?;
            writeln!(text, "skipped beyond bound: {}", report.skipped)?;
            for r in report.rules() {
                writeln!(text, "{}", r.poly)?;
            }
            Ok(Outcome {
                code,
                text,
                payload: serde_json::to_value(&report)?,
            })
        }
        Command::Verify { lemma: true, .. } => {
            let Input::Symn(n) = input else {
                return Err(usage("--lemma needs --symn"));
            };
            let report = verify_lemma_membership(*n, default_bound, rule_budget)?;
            let code = match report.verdict {
                Verdict::Pass => EXIT_OK,
                Verdict::Fail => EXIT_FAILED,
                Verdict::Inconclusive => EXIT_BUDGET,
            };
            let mut text = String::new();
            writeln!(text, "verdict: {}", verdict_name(report.verdict))?;
            writeln!(text, "completed rules: {}", report.completed_rules)?;
            writeln!(text, "members checked: {}", report.members_checked)?;
            writeln!(text, "failures: {}", report.failures.len())?;
            for f in &report.failures {
                writeln!(text, "  {} -> {}", f.rule.poly, f.remainder)?;
            }
            Ok(Outcome {
                code,
                text,
                payload: serde_json::to_value(&report)?,
            })
        }
        Command::Verify { .. } => match input {
            Input::Symn(n) => {
                let mut report = verify_theorem(*n, default_bound)?;
                if !common.trace {
                    strip_traces(&mut report.failures);
                }
                let mut text = String::new();
                writeln!(text, "verdict: {}", verdict_name(report.verdict))?;
                writeln!(text, "rules: {}", report.rules)?;
                writeln!(
                    text,
                    "ambiguities: {} checked, {} beyond bound",
                    report.checked, report.skipped_beyond_bound
                )?;
                writeln!(text, "nontrivial: {}", report.nontrivial)?;
                for (pair, s) in &report.pairs {
                    if s.checked > 0 {
                        writeln!(text, "  {pair}: {} checked, {} nontrivial", s.checked, s.nontrivial)?;
                    }
                }
                write_failures(&mut text, &report.failures)?;
                Ok(Outcome {
                    code: if report.passed() { EXIT_OK } else { EXIT_FAILED },
                    text,
                    payload: serde_json::to_value(&report)?,
                })
            }
            Input::File(p) => {
                let basis = Basis::with_alphabet(p.gens, &p.polys())?;
                let set = enumerate_ambiguities(&basis, default_bound);
                let mut results = check_all(&set.ambiguities, &basis)?;
                let failures: Vec<CompositionResult> = {
                    let mut f: Vec<CompositionResult> = results.drain(..).filter(|r| !r.trivial).collect();
                    if !common.trace {
                        strip_traces(&mut f);
                    }
                    f
                };
                let verdict = if failures.is_empty() {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                };
                let payload = GenericVerification {
                    degree_bound: default_bound,
                    rules: basis.rules(),
                    checked: set.ambiguities.len(),
                    skipped_beyond_bound: set.skipped,
                    nontrivial: failures.len(),
                    failures: &failures,
                    verdict,
                };
                let mut text = String::new();
                writeln!(text, "verdict: {}", verdict_name(verdict))?;
                writeln!(
                    text,
                    "ambiguities: {} checked, {} beyond bound",
                    payload.checked, payload.skipped_beyond_bound
                )?;
                writeln!(text, "nontrivial: {}", payload.nontrivial)?;
                write_failures(&mut text, &failures)?;
                Ok(Outcome {
                    code: if failures.is_empty() { EXIT_OK } else { EXIT_FAILED },
                    text,
                    payload: serde_json::to_value(&payload)?,
                })
            }
        },
        Command::Nf { word, .. } => {
            let w: Word = word.parse().map_err(|e| usage(format!("--word: {e}")))?;
            w.check_alphabet(n).map_err(|e| usage(format!("--word: {e}")))?;
            let bound = common.degree_bound.unwrap_or(0).max(w.degree()).max(n + 1);
            let (basis, budget_hit) = match input {
                Input::Symn(n) => (build_s_tilde(*n, bound)?.basis, false),
                Input::File(_) => {
                    let rules = input.base_rules()?;
                    let report = complete_for(input, &rules, bound, rule_budget, true)?;
                    let hit = report.status == CompletionStatus::BudgetExhausted;
                    (report.basis, hit)
                }
            };
            let (nf, trace) = normal_form(&Poly::word(w.clone()), &basis, common.trace);
            let mut text = String::new();
            writeln!(text, "{}", format_normal_form(&nf))?;
            if let Some(t) = &trace {
                for s in &t.steps {
                    let lead = &basis.rules()[s.rule].lead;
                    writeln!(
                        text,
                        "  {} @{} by {} -> {}",
                        s.word,
                        s.offset,
                        lead,
                        basis.rules()[s.rule].tail().neg()
                    )?;
                }
            }
            let payload = NfPayload {
                word: &w,
                degree_bound: bound,
                normal_form: &nf,
                trace: trace.as_ref(),
            };
            Ok(Outcome {
                code: if budget_hit { EXIT_BUDGET } else { EXIT_OK },
                text,
                payload: serde_json::to_value(&payload)?,
            })
        }
        Command::Enumerate { len, .. } => {
            let (words, code) = match input {
                Input::Symn(n) => (irr_enumerate(*n, *len)?, EXIT_OK),
                Input::File(_) => {
                    let rules = input.base_rules()?;
                    let bound = common.degree_bound.unwrap_or(n + 6).max(*len);
                    let report = complete_for(input, &rules, bound, rule_budget, true)?;
                    (irreducible_words(&report.basis, *len), completion_code(&report))
                }
            };
            let mut text = String::new();
            for w in &words {
                writeln!(text, "{w}")?;
            }
            let payload = EnumeratePayload {
                len: *len,
                count: words.len(),
                words: &words,
            };
            Ok(Outcome {
                code,
                text,
                payload: serde_json::to_value(&payload)?,
            })
        }
        Command::Count { max_len, .. } => match input {
            Input::Symn(n) => {
                let series = count_normal_forms(*n, *max_len)?;
                Ok(Outcome {
                    code: EXIT_OK,
                    text: series.table(),
                    payload: serde_json::to_value(&series)?,
                })
            }
            Input::File(_) => {
                let rules = input.base_rules()?;
                let bound = common.degree_bound.unwrap_or(n + 6).max(*max_len);
                let report = complete_for(input, &rules, bound, rule_budget, true)?;
                let counts = count_avoiders(report.basis.index(), *max_len);
                let rows: Vec<CountRow> = counts
                    .iter()
                    .enumerate()
                    .map(|(len, c)| CountRow {
                        len,
                        total: c.to_string(),
                    })
                    .collect();
                let text = rows.iter().map(|r| format!("{} {}\n", r.len, r.total)).collect();
                Ok(Outcome {
                    code: completion_code(&report),
                    text,
                    payload: serde_json::to_value(CountPayload { n, rows })?,
                })
            }
        },
        Command::Oracle { len, max_len, .. } => {
            let Input::Symn(n) = input else {
                return Err(usage("oracle needs --symn"));
            };
            let lens: Vec<usize> = match (len, max_len) {
                (Some(l), None) => vec![*l],
                (None, Some(m)) => (0..=*m).collect(),
                _ => return Err(usage("oracle needs --len or --max-len")),
            };
            let budget = common.budget.unwrap_or(DEFAULT_ORACLE_BUDGET);
            let mut reports = Vec::new();
            let mut text = String::new();
            for l in lens {
                match oracle_check_irr(*n, l, budget) {
                    Ok(r) => {
                        writeln!(
                            text,
                            "{} {} {} {}",
                            r.len,
                            r.classes,
                            r.irr_words,
                            if r.pass { "pass" } else { "FAIL" }
                        )?;
                        reports.push(r);
                    }
                    Err(CensusError::BudgetExceeded { .. }) => {
                        writeln!(text, "{l} refused: over the word budget of {budget}")?;
                        return Ok(Outcome {
                            code: EXIT_BUDGET,
                            text,
                            payload: serde_json::to_value(OraclePayload {
                                n: *n,
                                budget,
                                refused_at: Some(l),
                                lengths: &reports,
                            })?,
                        });
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            let pass = reports.iter().all(|r| r.pass);
            Ok(Outcome {
                code: if pass { EXIT_OK } else { EXIT_FAILED },
                text,
                payload: serde_json::to_value(OraclePayload {
                    n: *n,
                    budget,
                    refused_at: None,
                    lengths: &reports,
                })?,
            })
        }
    }
}

/// Completes `rules`. When the bound was not given explicitly it is raised to
/// the largest leading degree of the input.
fn complete_for(
    input: &Input,
    rules: &[Poly],
    bound: usize,
    budget: usize,
    raise_bound: bool,
) -> anyhow::Result<CompletionReport> {
    let basis = Basis::with_alphabet(input.gens(), rules)?;
    let bound = if raise_bound {
        bound.max(basis.max_lead_degree())
    } else {
        bound
    };
    Ok(complete_basis(basis, bound, budget)?)
}

fn completion_code(report: &CompletionReport) -> i32 {
    match report.status {
        CompletionStatus::ClosedBelowBound => EXIT_OK,
        CompletionStatus::BudgetExhausted => EXIT_BUDGET,
    }
}

fn strip_traces(results: &mut [CompositionResult]) {
    for r in results {
        r.trace = None;
    }
}

fn write_failures(text: &mut String, failures: &[CompositionResult]) -> std::fmt::Result {
    for f in failures.iter().take(20) {
        writeln!(
            text,
            "  nontrivial: rules {} and {} at {} -> {}",
            f.ambiguity.f, f.ambiguity.g, f.ambiguity.w, f.remainder
        )?;
    }
    if failures.len() > 20 {
        writeln!(text, "  ... {} more", failures.len() - 20)?;
    }
    Ok(())
}

/// A single word with coefficient 1 prints as the word itself.
fn format_normal_form(p: &Poly) -> String {
    match p.leading() {
        Ok((w, c)) if p.len() == 1 && is_one(c) => w.to_string(),
        _ => p.to_string(),
    }
}

fn is_one(c: &gsb_core::Scalar) -> bool {
    c.numer() == c.denom()
}

fn status_name(s: CompletionStatus) -> &'static str {
    match s {
        CompletionStatus::ClosedBelowBound => "closed_below_bound",
        CompletionStatus::BudgetExhausted => "budget_exhausted",
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Inconclusive => "inconclusive",
    }
}

#[derive(Serialize)]
struct GenericVerification<'a> {
    degree_bound: usize,
    rules: &'a [gsb_core::rewrite::Rule],
    checked: usize,
    skipped_beyond_bound: usize,
    nontrivial: usize,
    failures: &'a [CompositionResult],
    verdict: Verdict,
}

#[derive(Serialize)]
struct NfPayload<'a> {
    word: &'a Word,
    degree_bound: usize,
    normal_form: &'a Poly,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<&'a ReductionTrace>,
}

#[derive(Serialize)]
struct EnumeratePayload<'a> {
    len: usize,
    count: usize,
    words: &'a [Word],
}

#[derive(Serialize)]
struct CountRow {
    len: usize,
    total: String,
}

#[derive(Serialize)]
struct CountPayload {
    n: usize,
    rows: Vec<CountRow>,
}

#[derive(Serialize)]
struct OraclePayload<'a> {
    n: usize,
    budget: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    refused_at: Option<usize>,
    lengths: &'a [gsb_core::census::OracleReport],
}
