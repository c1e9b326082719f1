//! Command-line front end.
//!
//! Every command writes one report to stdout. The exit status is 0 on
//! success, 1 when a checked inequality fails and 2 when the input cannot be
//! parsed or is outside what the library accepts.

pub mod output;
pub mod rng;

use std::fmt;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{multinomial_ramsey_bound, representation_stability_bound, BigBound};
use crate::error::Error;
use crate::fourier::constants::ConstantsTable;
use crate::fourier::interval::{interval_lower_stability, interval_norm_quadrature, szego_series, szego_upper_bound};
use crate::fourier::{bg_norm, singer_norm_closed_form};
use crate::group::{coset_test, FiniteAbelianGroup, GroupSubset};
use crate::halfgraph::{closed_form_spectrum, theorem_check_from};
use crate::sidon::{is_perfect_difference_set, is_sidon, singer_difference_set};
use crate::stability::{stability_index, stability_index_up_to};
use output::{floats, join, opt, render, Tabular, F};
use rng::XorShift64Star;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Stability,
    Norm,
    Sidon,
    Singer,
    Halfgraph,
    Bounds,
    Interval,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

/// Largest group enumerated by `verify --exhaustive`.
pub const MAX_EXHAUSTIVE_ORDER: usize = 20;

/// Largest modulus for which `singer` also reports the stability index.
pub const SINGER_STABILITY_LIMIT: u64 = 200;

/// Quadrature and series values of the interval norm must agree this well.
pub const INTERVAL_AGREEMENT: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "stabring", version, about = "Stability indices and Fourier-algebra norms on finite abelian groups")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Group, e.g. `Z/12` or `Z/2xZ/4`.
    #[arg(long)]
    pub group: Option<String>,
    /// Subset literal, e.g. `1,2,4`, `{}` or `(0,1),(1,1)`.
    #[arg(long, conflicts_with = "set_file")]
    pub set: Option<String>,
    /// File with one subset literal per line.
    #[arg(long)]
    pub set_file: Option<PathBuf>,
    /// Largest order examined by `stability`.
    #[arg(long)]
    pub max_k: Option<usize>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random subsets per group for `verify`.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Groups for `verify`: `Z/a..Z/b` or a comma-separated list.
    #[arg(long)]
    pub groups: Option<String>,
    /// Enumerate every subset in `verify`.
    #[arg(long)]
    pub exhaustive: bool,
    /// Half-graph size, interval length, or `k` of a representation.
    #[arg(long)]
    pub k: Option<u64>,
    /// Named cosets per system of a representation.
    #[arg(long)]
    pub s: Option<u64>,
    /// Prime power for `singer`.
    #[arg(long)]
    pub q: Option<u64>,
    /// Clique sizes for the multinomial bound, e.g. `2,2,2`.
    #[arg(long)]
    pub ks: Option<String>,
    /// Add wall-clock runtime to the `verify` summary.
    #[arg(long)]
    pub timing: bool,
}

impl RunConfig {
    pub fn parse_args<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Self::try_parse_from(std::iter::once("stabring".into()).chain(args.into_iter().map(Into::into)))
    }

    /// Arguments that parse back to this configuration.
    pub fn to_args(&self) -> Vec<String> {
        let mut v = vec![self.command.to_string()];
        let mut push = |flag: &str, value: Option<String>| {
            if let Some(value) = value {
                v.push(format!("--{flag}"));
                v.push(value);
            }
        };
        push("group", self.group.clone());
        push("set", self.set.clone());
        push("set-file", self.set_file.as_ref().map(|p| p.display().to_string()));
        push("max-k", self.max_k.map(|x| x.to_string()));
        push("tol", Some(format!("{:e}", self.tol)));
        push("seed", Some(self.seed.to_string()));
        push("sample", self.sample.map(|x| x.to_string()));
        push("output", Some(self.output.to_string()));
        push("groups", self.groups.clone());
        push("k", self.k.map(|x| x.to_string()));
        push("s", self.s.map(|x| x.to_string()));
        push("q", self.q.map(|x| x.to_string()));
        push("ks", self.ks.clone());
        if self.exhaustive {
            v.push("--exhaustive".into());
        }
        if self.timing {
            v.push("--timing".into());
        }
        v
    }
}

/// What a run produced: the exit status and the text for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report(stdout: String, violations: bool) -> Self {
        Self { status: violations as i32, stdout, stderr: String::new() }
    }

    fn input_error(message: String, format: OutputFormat, expression: Option<String>) -> Self {
        let stdout = match (format, &expression) {
            (OutputFormat::Json, _) => {
                #[derive(Serialize)]
                struct ErrorDoc<'a> {
                    error: &'a str,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    expression: Option<&'a str>,
                }
                let doc = ErrorDoc { error: &message, expression: expression.as_deref() };
                let mut s = serde_json::to_string(&doc).expect("strings");
                s.push('\n');
                s
            }
            (_, Some(e)) => format!("expression={e}\n"),
            (_, None) => String::new(),
        };
        Self { status: 2, stdout, stderr: format!("error: {message}\n") }
    }
}

/// Input problems, reported with status 2.
#[derive(Debug)]
struct InputError {
    message: String,
    expression: Option<String>,
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        let expression = match &e {
            Error::GuardExceeded { expression } => Some(expression.clone()),
            _ => None,
        };
        Self { message: e.to_string(), expression }
    }
}

fn input(message: impl Into<String>) -> InputError {
    InputError { message: message.into(), expression: None }
}

type CmdResult = Result<(String, bool), InputError>;

/// Parses `args` (without the program name) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::parse_args(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if status == 0 {
                Outcome { status, stdout: text, stderr: String::new() }
            } else {
                Outcome { status, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    let result = match config.command {
        Command::Stability => cmd_stability(config),
        Command::Norm => cmd_norm(config),
        Command::Sidon => cmd_sidon(config),
        Command::Singer => cmd_singer(config),
        Command::Halfgraph => cmd_halfgraph(config),
        Command::Bounds => cmd_bounds(config),
        Command::Interval => cmd_interval(config),
        Command::Verify => cmd_verify(config),
    };
    match result {
        Ok((stdout, violations)) => Outcome::report(stdout, violations),
        Err(e) => Outcome::input_error(e.message, config.output, e.expression),
    }
}

/// Uses `STABRING_THREADS`, when set, as the size of the global thread pool.
pub fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("STABRING_THREADS") else {
        return Ok(());
    };
    let n: usize = value.trim().parse().map_err(|_| format!("STABRING_THREADS must be a positive integer, got {value:?}"))?;
    if n == 0 {
        return Err("STABRING_THREADS must be at least 1".into());
    }
    // Fails only if a pool already exists, which then stays in use.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn group_of(config: &RunConfig) -> Result<FiniteAbelianGroup, InputError> {
    let spec = config.group.as_deref().ok_or_else(|| input("--group is required"))?;
    Ok(FiniteAbelianGroup::parse(spec)?)
}

fn sets_of(config: &RunConfig, g: &FiniteAbelianGroup) -> Result<Vec<GroupSubset>, InputError> {
    match (&config.set, &config.set_file) {
        (Some(s), _) => Ok(vec![GroupSubset::parse(g, s)?]),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| GroupSubset::parse(g, l).map_err(InputError::from))
                .collect()
        }
        (None, None) => Err(input("--set or --set-file is required")),
    }
}

fn need<T: Copy>(value: Option<T>, flag: &str) -> Result<T, InputError> {
    value.ok_or_else(|| input(format!("--{flag} is required")))
}

#[derive(Serialize)]
struct NoExtra {}

// ---- stability

#[derive(Serialize)]
struct StabilityRecord {
    group: String,
    set: String,
    max_order: usize,
    stability_index: usize,
    /// Larger orders were not searched because of `--max-k`.
    truncated: bool,
    witness_a: Vec<String>,
    witness_b: Vec<String>,
}

impl Tabular for StabilityRecord {
    fn header() -> Vec<&'static str> {
        vec!["group", "set", "max_order", "stability_index", "truncated", "witness_a", "witness_b"]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.group.clone(),
            self.set.clone(),
            self.max_order.to_string(),
            self.stability_index.to_string(),
            self.truncated.to_string(),
            join(&self.witness_a),
            join(&self.witness_b),
        ]
    }
}

fn cmd_stability(config: &RunConfig) -> CmdResult {
    if config.max_k == Some(0) {
        return Err(input("--max-k must be at least 1"));
    }
    let g = group_of(config)?;
    let records: Vec<StabilityRecord> = sets_of(config, &g)?
        .iter()
        .map(|a| {
            let (r, truncated) = stability_index_up_to(a, config.max_k);
            let (wa, wb) = r.witness.as_ref().map_or((vec![], vec![]), |w| {
                (w.a.iter().map(ToString::to_string).collect(), w.b.iter().map(ToString::to_string).collect())
            });
            StabilityRecord {
                group: g.to_string(),
                set: a.to_string(),
                max_order: r.max_order,
                stability_index: r.stability_index,
                truncated,
                witness_a: wa,
                witness_b: wb,
            }
        })
        .collect();
    Ok((render(config.output, "stability", &records, NoExtra {}, &[]), false))
}

// ---- norm

#[derive(Serialize)]
struct NormRecord {
    group: String,
    set: String,
    size: usize,
    norm: F,
    size_ratio: Option<F>,
    is_coset: bool,
    per_character: Vec<F>,
}

impl Tabular for NormRecord {
    fn header() -> Vec<&'static str> {
        vec!["group", "set", "size", "norm", "size_ratio", "is_coset", "per_character"]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.group.clone(),
            self.set.clone(),
            self.size.to_string(),
            self.norm.render(),
            self.size_ratio.map_or_else(String::new, F::render),
            self.is_coset.to_string(),
            self.per_character.iter().map(|f| f.render()).collect::<Vec<_>>().join(";"),
        ]
    }
}

fn cmd_norm(config: &RunConfig) -> CmdResult {
    let g = group_of(config)?;
    let records: Vec<NormRecord> = sets_of(config, &g)?
        .iter()
        .map(|a| {
            let n = bg_norm(a);
            NormRecord {
                group: g.to_string(),
                set: a.to_string(),
                size: a.len(),
                norm: F(n.norm),
                size_ratio: n.size_ratio().map(F),
                is_coset: coset_test(a).is_some(),
                per_character: floats(&n.per_character),
            }
        })
        .collect();
    Ok((render(config.output, "norm", &records, NoExtra {}, &[]), false))
}

// ---- sidon

#[derive(Serialize)]
struct SidonRecord {
    group: String,
    set: String,
    is_sidon: bool,
    /// `x, y, z, w` with `x − y = z − w`, as element labels.
    violation: Option<[String; 4]>,
}

impl Tabular for SidonRecord {
    fn header() -> Vec<&'static str> {
        vec!["group", "set", "is_sidon", "violation"]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.group.clone(),
            self.set.clone(),
            self.is_sidon.to_string(),
            self.violation.as_ref().map_or_else(String::new, |v| join(v)),
        ]
    }
}

fn cmd_sidon(config: &RunConfig) -> CmdResult {
    let g = group_of(config)?;
    let records: Vec<SidonRecord> = sets_of(config, &g)?
        .iter()
        .map(|a| {
            let v = is_sidon(a);
            SidonRecord {
                group: g.to_string(),
                set: a.to_string(),
                is_sidon: v.is_sidon,
                violation: v.violation.map(|q| q.map(|i| g.element_at(i).to_string())),
            }
        })
        .collect();
    Ok((render(config.output, "sidon", &records, NoExtra {}, &[]), false))
}

// ---- singer

#[derive(Serialize)]
struct SingerRecord {
    q: u64,
    modulus: u64,
    set: Vec<u64>,
    perfect_difference_set: bool,
    is_sidon: bool,
    norm: F,
    closed_form: F,
    norm_matches: bool,
    /// Computed only for moduli up to [`SINGER_STABILITY_LIMIT`].
    stability_index: Option<usize>,
}

impl Tabular for SingerRecord {
    fn header() -> Vec<&'static str> {
        vec!["q", "modulus", "set", "perfect_difference_set", "is_sidon", "norm", "closed_form", "norm_matches", "stability_index"]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.q.to_string(),
            self.modulus.to_string(),
            join(&self.set),
            self.perfect_difference_set.to_string(),
            self.is_sidon.to_string(),
            self.norm.render(),
            self.closed_form.render(),
            self.norm_matches.to_string(),
            opt(&self.stability_index),
        ]
    }
}

fn cmd_singer(config: &RunConfig) -> CmdResult {
    let q = need(config.q, "q")?;
    let d = singer_difference_set(q)?;
    let g = FiniteAbelianGroup::cyclic(d.modulus as usize)?;
    let a = GroupSubset::new(&g, d.set.iter().map(|&x| x as usize))?;
    let norm = bg_norm(&a).norm;
    let closed = singer_norm_closed_form(q)?;
    let norm_matches = (norm - closed).abs() <= config.tol.max(1e-12) * closed.max(1.0);
    let sidon = is_sidon(&a).is_sidon;
    let index = (d.modulus <= SINGER_STABILITY_LIMIT).then(|| stability_index(&a).stability_index);
    let perfect = is_perfect_difference_set(&d.set, d.modulus);
    let ok = perfect && sidon && norm_matches && index.is_none_or(|i| i <= 3);
    let record = SingerRecord {
        q,
        modulus: d.modulus,
        set: d.set,
        perfect_difference_set: perfect,
        is_sidon: sidon,
        norm: F(norm),
        closed_form: F(closed),
        norm_matches,
        stability_index: index,
    };
    Ok((render(config.output, "singer", &[record], NoExtra {}, &[]), !ok))
}

// ---- halfgraph

#[derive(Serialize)]
struct HalfgraphRecord {
    k: usize,
    singular_values_closed: Vec<F>,
    singular_values_numeric: Vec<F>,
    max_deviation: F,
    trace_norm: F,
    lower_bound: F,
    lower_bound_ok: bool,
}

impl Tabular for HalfgraphRecord {
    fn header() -> Vec<&'static str> {
        vec!["k", "singular_values_closed", "singular_values_numeric", "max_deviation", "trace_norm", "lower_bound", "lower_bound_ok"]
    }
    fn row(&self) -> Vec<String> {
        let fs = |v: &[F]| v.iter().map(|f| f.render()).collect::<Vec<_>>().join(";");
        vec![
            self.k.to_string(),
            fs(&self.singular_values_closed),
            fs(&self.singular_values_numeric),
            self.max_deviation.render(),
            self.trace_norm.render(),
            self.lower_bound.render(),
            self.lower_bound_ok.to_string(),
        ]
    }
}

fn cmd_halfgraph(config: &RunConfig) -> CmdResult {
    let k = need(config.k, "k")? as usize;
    let s = closed_form_spectrum(k)?;
    let ok = s.trace_norm >= s.lower_bound;
    let record = HalfgraphRecord {
        k,
        max_deviation: F(s.max_deviation()),
        singular_values_closed: floats(&s.singular_values_closed),
        singular_values_numeric: floats(&s.singular_values_numeric),
        trace_norm: F(s.trace_norm),
        lower_bound: F(s.lower_bound),
        lower_bound_ok: ok,
    };
    Ok((render(config.output, "halfgraph", &[record], NoExtra {}, &[]), !ok))
}

// ---- bounds

#[derive(Serialize)]
struct BoundRecord {
    name: &'static str,
    #[serde(flatten)]
    bound: BigBound,
    bits: Option<u64>,
}

impl Tabular for BoundRecord {
    fn header() -> Vec<&'static str> {
        vec!["name", "value", "expression", "bits"]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.name.to_string(),
            self.bound.value.as_ref().map_or_else(String::new, ToString::to_string),
            self.bound.expression.clone(),
            opt(&self.bits),
        ]
    }
}

#[derive(Serialize)]
struct RepresentationExtra {
    k: u64,
    s: u64,
    chain_within_simplified: bool,
    flagged: bool,
}

fn parse_list(spec: &str) -> Result<Vec<u64>, InputError> {
    spec.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| input(format!("cannot parse {t:?} as a non-negative integer"))))
        .collect()
}

fn cmd_bounds(config: &RunConfig) -> CmdResult {
    let record = |name, bound: BigBound| BoundRecord { name, bits: bound.bits(), bound };
    if let Some(ks) = &config.ks {
        let b = multinomial_ramsey_bound(&parse_list(ks)?)?;
        return Ok((render(config.output, "bounds", &[record("multinomial", b)], NoExtra {}, &[]), false));
    }
    let (k, s) = (need(config.k, "k")?, need(config.s, "s")?);
    let r = representation_stability_bound(k, s)?;
    let extra = RepresentationExtra { k, s, chain_within_simplified: r.chain_within_simplified, flagged: r.flagged };
    let lines = [format!(
        "k={k} s={s} chain_within_simplified={} flagged={}",
        r.chain_within_simplified, r.flagged
    )];
    let records = [record("inner", r.inner), record("exact_chain", r.exact_chain), record("simplified", r.simplified)];
    // k = 1 is reported but not judged.
    let violation = !r.flagged && !r.chain_within_simplified;
    Ok((render(config.output, "bounds", &records, extra, &lines), violation))
}

// ---- interval

#[derive(Serialize)]
struct IntervalRecord {
    k: u64,
    quadrature: F,
    szego: F,
    szego_error_bound: F,
    agree: bool,
    szego_upper_bound: F,
    c1: F,
    c1_lower_stability: F,
    c1_inequality: bool,
}

impl Tabular for IntervalRecord {
    fn header() -> Vec<&'static str> {
        vec![
            "k",
            "quadrature",
            "szego",
            "szego_error_bound",
            "agree",
            "szego_upper_bound",
            "c1",
            "c1_lower_stability",
            "c1_inequality",
        ]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.k.to_string(),
            self.quadrature.render(),
            self.szego.render(),
            self.szego_error_bound.render(),
            self.agree.to_string(),
            self.szego_upper_bound.render(),
            self.c1.render(),
            self.c1_lower_stability.render(),
            self.c1_inequality.to_string(),
        ]
    }
}

pub(crate) fn interval_check(k: u64, tol: f64, constants: &ConstantsTable) -> Result<IntervalCheck, Error> {
    let quadrature = interval_norm_quadrature(k)?;
    let series = szego_series(k, tol)?;
    let lower = interval_lower_stability(quadrature, constants);
    Ok(IntervalCheck {
        k,
        quadrature,
        szego: series.value,
        szego_error_bound: series.error_bound,
        agree: (quadrature - series.value).abs() <= INTERVAL_AGREEMENT,
        szego_upper_bound: szego_upper_bound(k, constants),
        lower_stability: lower,
        inequality: (k + 1) as f64 >= lower,
    })
}

/// Both evaluations of the interval norm and the `c₁` inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalCheck {
    pub k: u64,
    pub quadrature: f64,
    pub szego: f64,
    pub szego_error_bound: f64,
    pub agree: bool,
    pub szego_upper_bound: f64,
    pub lower_stability: f64,
    pub inequality: bool,
}

fn cmd_interval(config: &RunConfig) -> CmdResult {
    let k = need(config.k, "k")?;
    let constants = ConstantsTable::compute();
    let c = interval_check(k, config.tol, &constants)?;
    let record = IntervalRecord {
        k,
        quadrature: F(c.quadrature),
        szego: F(c.szego),
        szego_error_bound: F(c.szego_error_bound),
        agree: c.agree,
        szego_upper_bound: F(c.szego_upper_bound),
        c1: F(constants.c1),
        c1_lower_stability: F(c.lower_stability),
        c1_inequality: c.inequality,
    };
    Ok((render(config.output, "interval", &[record], NoExtra {}, &[]), !(c.agree && c.inequality)))
}

// ---- verify

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRecord {
    pub group: String,
    pub set: String,
    pub norm: F,
    pub max_order: usize,
    pub stability_index: usize,
    /// `c₀e^{πM} + 1`.
    pub bound: F,
    pub theorem_ok: bool,
    pub trace_norm_ok: bool,
}

impl Tabular for VerifyRecord {
    fn header() -> Vec<&'static str> {
        vec!["group", "set", "norm", "max_order", "stability_index", "bound", "theorem_ok", "trace_norm_ok"]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.group.clone(),
            self.set.clone(),
            self.norm.render(),
            self.max_order.to_string(),
            self.stability_index.to_string(),
            self.bound.render(),
            self.theorem_ok.to_string(),
            self.trace_norm_ok.to_string(),
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySummary {
    pub total: usize,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_seconds: Option<F>,
}

#[derive(Serialize)]
struct VerifyExtra {
    summary: VerifySummary,
}

/// `Z/a..Z/b` or a comma-separated list of group specifications.
pub fn parse_groups(spec: &str) -> Result<Vec<FiniteAbelianGroup>, Error> {
    if let Some((lo, hi)) = spec.split_once("..") {
        let bound = |s: &str| {
            let t = s.trim();
            let digits = t.strip_prefix("Z/").or_else(|| t.strip_prefix("z/")).unwrap_or(t);
            digits.parse::<usize>().map_err(|_| Error::Parse(format!("bad group range endpoint {s:?}")))
        };
        let (lo, hi) = (bound(lo)?, bound(hi)?);
        if lo > hi {
            return Err(Error::Parse(format!("empty group range {spec:?}")));
        }
        return (lo..=hi).map(FiniteAbelianGroup::cyclic).collect();
    }
    spec.split(',').map(|s| FiniteAbelianGroup::parse(s.trim())).collect()
}

/// All sets `verify` visits, in report order: for each group its exhaustive
/// subsets by bit mask, then its random samples.
pub fn sweep_sets(
    groups: &[FiniteAbelianGroup],
    exhaustive: bool,
    sample: usize,
    seed: u64,
) -> Result<Vec<GroupSubset>, Error> {
    let mut rng = XorShift64Star::new(seed);
    let mut sets = Vec::new();
    for g in groups {
        if exhaustive {
            if g.order() > MAX_EXHAUSTIVE_ORDER {
                return Err(Error::Precondition(format!(
                    "exhaustive sweep limited to groups of order {MAX_EXHAUSTIVE_ORDER}, got {}",
                    g.order()
                )));
            }
            sets.extend((0..1u64 << g.order()).map(|bits| GroupSubset::from_bits(g, bits)));
        }
        sets.extend((0..sample).map(|_| rng.subset(g)));
    }
    Ok(sets)
}

pub fn verify_record(a: &GroupSubset) -> VerifyRecord {
    let norm = bg_norm(a).norm;
    let c = theorem_check_from(&stability_index(a), norm);
    VerifyRecord {
        group: a.group().to_string(),
        set: a.to_string(),
        norm: F(norm),
        max_order: c.max_order,
        stability_index: c.stability_index,
        bound: F(c.stability_bound),
        theorem_ok: c.theorem_ok,
        trace_norm_ok: c.trace_norm_ok,
    }
}

fn cmd_verify(config: &RunConfig) -> CmdResult {
    let start = Instant::now();
    let spec = config.groups.as_deref().or(config.group.as_deref()).ok_or_else(|| input("--groups is required"))?;
    let groups = parse_groups(spec)?;
    let sample = config.sample.unwrap_or(0);
    if !config.exhaustive && sample == 0 {
        return Err(input("verify needs --exhaustive or --sample"));
    }
    let sets = sweep_sets(&groups, config.exhaustive, sample, config.seed)?;
    let records: Vec<VerifyRecord> = sets.par_iter().map(verify_record).collect();
    let violations = records.iter().filter(|r| !(r.theorem_ok && r.trace_norm_ok)).count();
    let summary = VerifySummary {
        total: records.len(),
        violations,
        runtime_seconds: config.timing.then(|| F(start.elapsed().as_secs_f64())),
    };
    let mut line = format!("total={} violations={}", summary.total, summary.violations);
    if let Some(t) = summary.runtime_seconds {
        line.push_str(&format!(" runtime_seconds={}", t.render()));
    }
    Ok((render(config.output, "verify", &records, VerifyExtra { summary }, &[line]), violations > 0))
}
