//! Command line front end.
//!
//! Exit codes: 0 when everything requested verified, 1 on a mismatch, 2 on an
//! exhausted search (or a word that gets stuck in `act`), 64 on usage errors.

use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ktheory::{evaluate_word_matrix, twist_matrix, LatticeMap};
use crate::sheaf::{cohomology, evaluate_word, DObject, Divisor, Evaluation, ParseError};
use crate::verifier::{
    applicable_families, central_defect_consistent, suite_relators, suite_verdict,
    verify_on_generators, verify_relation_suite, ReportRecord, Representation, SearchConfig, Step,
    SuiteError, SuiteVerdict, VerificationReport, DEFAULT_BUDGET,
};
use crate::words::{Family, Letter, Relator, Word, WordError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_EXHAUSTED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Suite(#[from] SuiteError),
    #[error("{0}")]
    Usage(String),
    #[error("could not build worker pool: {0}")]
    Pool(String),
    #[error("matrix entry {0} does not fit in 64 bits")]
    Overflow(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Json(_) | CliError::Pool(_) | CliError::Overflow(_) => 70,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum RepChoice {
    Ktheory,
    Sheaf,
    #[default]
    Both,
}

impl RepChoice {
    fn representations(self) -> Vec<Representation> {
        match self {
            RepChoice::Ktheory => vec![Representation::Ktheory],
            RepChoice::Sheaf => vec![Representation::Sheaf],
            RepChoice::Both => Representation::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "twistverify",
    version,
    about = "Verify twist relations on cycles of projective lines"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Number of components (and marked points).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma separated families, or `all`.
        #[arg(long, default_value = "all")]
        families: String,
        #[arg(long, value_enum, default_value_t = RepChoice::Both)]
        rep: RepChoice,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(usize))]
        budget: usize,
        /// Restrict the based G relators to this point.
        #[arg(long)]
        base: Option<usize>,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
        /// Check a single claim `lhs = rhs` instead of the relator families.
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
    },
    /// Print generator matrices, or the matrix of one word.
    Matrix {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: Option<String>,
    },
    /// Cohomology of a line bundle `O(D)`.
    Cohom {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Apply a word to an object.
    Act {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        object: String,
    },
    /// List relators.
    Relators {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "all")]
        families: String,
        #[arg(long)]
        base: Option<usize>,
    },
}

/// The single JSON document emitted by `verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteDocument {
    pub n: usize,
    pub verdict: SuiteVerdict,
    /// Sheaf central defects that disagree with the K-theory matrices.
    pub cross_check_violations: Vec<String>,
    pub records: Vec<ReportRecord>,
}

pub fn parse_families(spec: &str, n: usize) -> Result<Vec<Family>, CliError> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(applicable_families(n));
    }
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let f: Family = part.parse().map_err(CliError::Usage)?;
        if !out.contains(&f) {
            out.push(f);
        }
    }
    Ok(out)
}

/// A user claim `lhs = rhs` (a bare word means `w = 1`). It is checked
/// exactly, with the full move set.
pub fn parse_claim(text: &str, n: usize) -> Result<Relator, CliError> {
    let (lhs, rhs) = text.split_once('=').unwrap_or((text, ""));
    if rhs.contains('=') {
        return Err(CliError::Usage("claim has more than one '='".into()));
    }
    let rel = Relator::new("custom", Family::Commutativity, lhs.parse()?, rhs.parse()?);
    rel.check(n)?;
    Ok(rel)
}

fn filter_base(
    rels: Vec<Relator>,
    base: Option<usize>,
    n: usize,
) -> Result<Vec<Relator>, CliError> {
    let Some(b) = base else {
        return Ok(rels);
    };
    if b == 0 || b > n {
        return Err(CliError::Usage(format!("--base {b} out of range 1..={n}")));
    }
    let keep = format!("G~@{b}");
    Ok(rels
        .into_iter()
        .filter(|r| r.family != Family::LemmaG || r.name == keep)
        .collect())
}

/// Central defects recorded by the sheaf side must match `(-1)^m` in K-theory.
pub fn cross_check(reports: &[VerificationReport], rels: &[Relator], n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for report in reports
        .iter()
        .filter(|r| r.representation == Representation::Sheaf)
    {
        let Some(rel) = rels.iter().find(|r| r.name == report.relator) else {
            continue;
        };
        for o in &report.outcomes {
            if let Some(m) = o.central_defect_m.filter(|_| o.status.is_verified()) {
                if !central_defect_consistent(rel, m, n) {
                    let obj = o.generator_object.as_ref().map(ToString::to_string);
                    out.push(format!(
                        "{} on {}: t^{m}",
                        rel.name,
                        obj.unwrap_or_default()
                    ));
                }
            }
        }
    }
    out
}

fn verdict_exit(v: SuiteVerdict) -> i32 {
    match v {
        SuiteVerdict::Verified => EXIT_OK,
        SuiteVerdict::Mismatch => EXIT_MISMATCH,
        SuiteVerdict::Exhausted => EXIT_EXHAUSTED,
    }
}

fn matrix_json(m: &LatticeMap) -> Result<Vec<Vec<i64>>, CliError> {
    m.entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.to_i64().ok_or_else(|| CliError::Overflow(x.to_string())))
                .collect()
        })
        .collect()
}

fn render_step(step: &Step) -> String {
    match step {
        Step::Evaluate {
            side,
            letter,
            before,
            after,
        } => format!("{side:?}: {letter} sends {before} to {after}"),
        Step::BraidRewrite {
            side,
            position,
            from,
            to,
        } => format!("{side:?}: rewrite `{from}` -> `{to}` at {position}"),
        Step::Cancel { side, position } => format!("{side:?}: cancel at {position}"),
        Step::Transfer { from, letter } => format!("{from:?}: transfer {letter}"),
    }
}

fn render_suite(doc: &SuiteDocument) -> String {
    let mut s = String::new();
    for r in &doc.records {
        let obj = r
            .generator_object
            .as_ref()
            .map_or_else(|| "lattice".to_string(), ToString::to_string);
        let _ = write!(
            s,
            "{:<24} {:<8} {:<12} {}",
            r.relator, r.representation, obj, r.status
        );
        if let Some(m) = r.central_defect_m {
            let _ = write!(s, " m={m}");
        }
        if let Some(inv) = &r.involution {
            let _ = write!(s, " involution={inv}");
        }
        if r.representation == Representation::Sheaf {
            let _ = write!(s, " states={}", r.states_expanded);
        }
        s.push('\n');
        for step in &r.trace.steps {
            let _ = writeln!(s, "    {}", render_step(step));
        }
    }
    for v in &doc.cross_check_violations {
        let _ = writeln!(s, "cross-check violation: {v}");
    }
    let _ = writeln!(s, "verdict: {:?}", doc.verdict);
    s
}

fn worker_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        builder = builder.num_threads(j);
    }
    builder.build().map_err(|e| CliError::Pool(e.to_string()))
}

fn emit(
    out: &mut dyn Write,
    format: OutputFormat,
    json: &impl Serialize,
    text: &str,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(json)?)?,
        OutputFormat::Text => write!(out, "{text}")?,
    }
    Ok(())
}

/// Runs a parsed command, writing to `out`; returns the exit status.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Verify {
            common,
            families,
            rep,
            budget,
            base,
            jobs,
            word,
        } => {
            let n = common.n as usize;
            if budget == 0 {
                return Err(CliError::Usage("--budget must be positive".into()));
            }
            let config = SearchConfig {
                budget,
                ..SearchConfig::default()
            };
            let reps = rep.representations();
            let pool = worker_pool(jobs)?;
            let (rels, reports) = match word {
                Some(claim) => {
                    let rel = parse_claim(&claim, n)?;
                    let reports = pool.install(|| {
                        reps.iter()
                            .map(|&r| verify_on_generators(&rel, n, r, config))
                            .collect::<Vec<_>>()
                    });
                    (vec![rel], reports)
                }
                None => {
                    let fams = parse_families(&families, n)?;
                    let rels = filter_base(suite_relators(n, &fams)?, base, n)?;
                    let mut reports =
                        pool.install(|| verify_relation_suite(n, &fams, &reps, config))?;
                    reports.retain(|r| rels.iter().any(|x| x.name == r.relator));
                    (rels, reports)
                }
            };
            let violations = cross_check(&reports, &rels, n);
            let mut verdict = suite_verdict(&reports);
            if !violations.is_empty() {
                verdict = SuiteVerdict::Mismatch;
            }
            let doc = SuiteDocument {
                n,
                verdict,
                cross_check_violations: violations,
                records: reports
                    .iter()
                    .flat_map(VerificationReport::records)
                    .collect(),
            };
            emit(out, common.output, &doc, &render_suite(&doc))?;
            Ok(verdict_exit(verdict))
        }
        Command::Matrix { common, word } => {
            let n = common.n as usize;
            match word {
                Some(w) => {
                    let w: Word = w.parse()?;
                    w.check(n)?;
                    let m = evaluate_word_matrix(&w, n);
                    emit(out, common.output, &matrix_json(&m)?, &m.to_string())?;
                }
                None => {
                    let mut letters = vec![Letter::alpha()];
                    letters.extend((1..=n).map(Letter::beta));
                    letters.push(Letter::central());
                    let mut json = serde_json::Map::new();
                    let mut text = String::new();
                    for l in letters {
                        let m = twist_matrix(l, n);
                        json.insert(l.to_string(), serde_json::to_value(matrix_json(&m)?)?);
                        let _ = write!(text, "{l}:\n{m}");
                    }
                    emit(out, common.output, &json, &text)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Cohom { common, divisor } => {
            let n = common.n as usize;
            let d: Divisor = divisor.parse()?;
            if d.n() != n {
                return Err(CliError::Usage(format!(
                    "divisor has {} coefficients, expected {n}",
                    d.n()
                )));
            }
            let dims = cohomology(&d).map_err(|e| CliError::Usage(e.to_string()))?;
            let json = serde_json::json!({"h0": dims.h0, "h1": dims.h1, "deg": d.degree()});
            let text = format!("h0 = {}, h1 = {}, deg = {}\n", dims.h0, dims.h1, d.degree());
            match common.output {
                OutputFormat::Json => writeln!(out, "{json}")?,
                OutputFormat::Text => write!(out, "{text}")?,
            }
            Ok(EXIT_OK)
        }
        Command::Act {
            common,
            word,
            object,
        } => {
            let n = common.n as usize;
            let w: Word = word.parse()?;
            w.check(n)?;
            let obj: DObject = object.parse()?;
            obj.check(n).map_err(|e| CliError::Usage(e.to_string()))?;
            let (json, text, code) = match evaluate_word(&w, &obj, n) {
                Evaluation::Done(o) => (
                    serde_json::json!({"result": o.to_string()}),
                    format!("{o}\n"),
                    EXIT_OK,
                ),
                Evaluation::Stuck(st) => (
                    serde_json::json!({
                        "stuck": {
                            "remaining": st.remaining.to_string(),
                            "object": st.object.to_string(),
                            "reason": st.reason.to_string(),
                        }
                    }),
                    format!(
                        "stuck: `{}` left to apply to {}: {}\n",
                        st.remaining, st.object, st.reason
                    ),
                    EXIT_EXHAUSTED,
                ),
            };
            match common.output {
                OutputFormat::Json => writeln!(out, "{json}")?,
                OutputFormat::Text => write!(out, "{text}")?,
            }
            Ok(code)
        }
        Command::Relators {
            common,
            families,
            base,
        } => {
            let n = common.n as usize;
            let fams = parse_families(&families, n)?;
            let rels = filter_base(suite_relators(n, &fams)?, base, n)?;
            let mut text = String::new();
            for r in &rels {
                let _ = writeln!(
                    text,
                    "{:<24} {:<14} {} = {}",
                    r.name, r.family, r.lhs, r.rhs
                );
            }
            emit(out, common.output, &rels, &text)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs. Usage errors are
/// printed to stderr and mapped to exit 64; `--help` exits 0.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match run(cli, out) {
        Ok(code) => code,
        // downstream reader closed the pipe
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 141,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
