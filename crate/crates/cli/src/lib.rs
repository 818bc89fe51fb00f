//! Library side of the `pshi` binary: document types and the `report`,
//! `verify` and `compute` commands, kept free of process exits so they can
//! be tested directly.

pub mod document;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use pshi_core::invariants::{c_k, e_k, invariant_report, mixed_multiplicity, weighted_lct};
use pshi_core::rational::{format_rational, parse_rational};
use pshi_core::verification::{
    check_concavity, check_masses, check_measure_rules, check_minimax, check_remark1, check_theorem1,
    check_theorem1_partial, check_theorem2_monomial, corpus, default_t_grid, monomial_exponents, CheckResult,
    CorpusConfig,
};
use pshi_core::{Error, MonomialIdeal, Rational};

pub use document::{to_json, CheckDocument, IdealDocument, ReportDocument, WitnessDocument};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed input or usage; exit code 2.
    Input(String),
    /// A check failed or a computation could not be carried out; exit code 1.
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Check(_) => 1,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Input(m) | CliError::Check(m) => m.clone(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message())
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::DimensionMismatch { .. } | Error::Parse(_) | Error::Empty(_) => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Check(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Reads `PSHI_THREADS`; unset or `0` means one worker per core.
pub fn threads_from_env() -> CliResult<usize> {
    match std::env::var("PSHI_THREADS") {
        Err(_) => Ok(0),
        Ok(v) => v.trim().parse().map_err(|_| CliError::Input(format!("PSHI_THREADS: not a thread count: {v:?}"))),
    }
}

/// Maps `f` over `items` on a pool of `threads` workers, keeping input order.
fn parallel_map<T, U, F>(items: &[T], threads: usize, f: F) -> CliResult<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> CliResult<U> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Check(format!("thread pool: {e}")))?;
    pool.install(|| items.par_iter().map(&f).collect())
}

/// A single file, or every `*.json` in a directory sorted by file name.
pub fn load_inputs(path: &Path) -> CliResult<Vec<(String, IdealDocument)>> {
    let files = if path.is_dir() {
        let mut files: Vec<_> = std::fs::read_dir(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
        if files.is_empty() {
            return Err(CliError::Input(format!("{}: no .json files", path.display())));
        }
        files
    } else {
        vec![path.to_path_buf()]
    };
    files
        .iter()
        .map(|f| {
            let name = f.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok((name, IdealDocument::read(f)?))
        })
        .collect()
}

/// The report of one ideal, with the checks that apply to it.
pub fn build_report(source: &str, doc: &IdealDocument) -> CliResult<ReportDocument> {
    let ideal = doc.ideal()?;
    let report = invariant_report(&ideal)?;
    let checks = if ideal.is_unit() {
        vec![]
    } else if ideal.is_m_primary() {
        vec![check_theorem1(&ideal)?, check_remark1(&ideal)?]
    } else {
        vec![check_theorem1_partial(&ideal)?]
    };
    Ok(ReportDocument::new(source.to_string(), doc.clone(), &report, &checks))
}

/// One JSON document per line, in input order. All inputs are parsed before
/// any computation starts.
pub fn run_report(path: &Path, pretty: bool, threads: usize) -> CliResult<String> {
    let inputs = load_inputs(path)?;
    let docs = parallel_map(&inputs, threads, |(name, doc)| build_report(name, doc))?;
    let mut out = String::new();
    for d in &docs {
        out.push_str(&to_json(d, pretty));
        out.push('\n');
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Theorem1,
    Remark1,
    Theorem2,
    Minimax,
    Masses,
    Measure,
    All,
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Ok(match s {
            "theorem1" => Suite::Theorem1,
            "remark1" => Suite::Remark1,
            "theorem2" => Suite::Theorem2,
            "minimax" => Suite::Minimax,
            "masses" => Suite::Masses,
            "measure" => Suite::Measure,
            "all" => Suite::All,
            other => {
                return Err(CliError::Input(format!(
                    "unknown suite {other:?}; expected one of theorem1, remark1, theorem2, minimax, masses, measure, all"
                )))
            }
        })
    }
}

impl Suite {
    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => {
                vec![Suite::Theorem1, Suite::Remark1, Suite::Theorem2, Suite::Minimax, Suite::Masses, Suite::Measure]
            }
            s => vec![s],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub suite: Suite,
    pub seed: u64,
    pub count: usize,
    pub n: usize,
    pub max_generators: u32,
    pub max_exponent: u32,
    /// Degree bound of the monomial enumeration; defaults by dimension.
    pub degree: Option<u32>,
}

impl VerifyOptions {
    fn corpus_config(&self, count: usize) -> CorpusConfig {
        CorpusConfig {
            seed: self.seed,
            n: self.n,
            max_generators: self.max_generators,
            max_exponent: self.max_exponent,
            require_primary: true,
            count,
        }
    }

    fn degree(&self) -> u32 {
        self.degree.unwrap_or(match self.n {
            1 | 2 => 8,
            3 => 6,
            _ => 4,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub checks: Vec<CheckDocument>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn jsonl(&self) -> String {
        self.checks.iter().map(|c| to_json(c, false) + "\n").collect()
    }

    pub fn summary(&self) -> String {
        format!("{} checks, {} passed, {} failed", self.checks.len(), self.checks.len() - self.failures(), self.failures())
    }

    /// The first failing check, trimmed to its first failing witness.
    pub fn first_failure(&self) -> Option<CheckDocument> {
        let c = self.checks.iter().find(|c| !c.passed)?;
        let w = c.witnesses.iter().find(|w| !witness_holds(w)).cloned();
        Some(CheckDocument { witnesses: w.into_iter().collect(), ..c.clone() })
    }
}

fn witness_holds(w: &WitnessDocument) -> bool {
    let r = parse_rational(&w.residual).expect("residuals are rationals");
    match w.relation.as_str() {
        "eq" => r == Rational::from_integer(0.into()),
        _ => r >= Rational::from_integer(0.into()),
    }
}

enum Job {
    Single(Suite, MonomialIdeal),
    Pair(MonomialIdeal, MonomialIdeal),
    Germ(pshi_core::ExponentVector),
}

pub fn run_verify(opts: &VerifyOptions, threads: usize) -> CliResult<VerifyOutcome> {
    if opts.n < 1 {
        return Err(CliError::Input("--n must be at least 1".into()));
    }
    let n = opts.n;
    let grid = default_t_grid(n);
    let negative: Vec<Rational> = grid.iter().filter(|t| **t < Rational::from_integer(0.into())).cloned().collect();

    let mut jobs = Vec::new();
    for suite in opts.suite.expand() {
        match suite {
            Suite::Theorem1 | Suite::Remark1 | Suite::Minimax | Suite::Masses => {
                for ideal in corpus(&opts.corpus_config(opts.count))? {
                    jobs.push(Job::Single(suite, ideal));
                }
            }
            Suite::Theorem2 => {
                jobs.extend(monomial_exponents(n, opts.degree()).into_iter().map(Job::Germ));
            }
            Suite::Measure => {
                let ideals = corpus(&opts.corpus_config(2 * opts.count))?;
                let (left, right) = ideals.split_at(opts.count);
                for (i, j) in left.iter().zip(right) {
                    jobs.push(Job::Pair(i.clone(), j.clone()));
                }
                for i in left {
                    jobs.push(Job::Single(Suite::Measure, i.clone()));
                }
            }
            Suite::All => unreachable!("expanded above"),
        }
    }

    let results: Vec<Vec<CheckResult>> = parallel_map(&jobs, threads, |job| {
        Ok(match job {
            Job::Single(Suite::Theorem1, i) => vec![check_theorem1(i)?],
            Job::Single(Suite::Remark1, i) => vec![check_remark1(i)?],
            Job::Single(Suite::Minimax, i) => vec![check_minimax(i, &negative)?],
            Job::Single(Suite::Masses, i) => vec![check_masses(i)?],
            Job::Single(_, i) => vec![check_concavity(i)?],
            Job::Pair(i, j) => grid.iter().map(|t| check_measure_rules(i, j, t)).collect::<Result<_, _>>()?,
            Job::Germ(alpha) => vec![check_theorem2_monomial(alpha, &grid)?],
        })
    })?;
    let checks = results.iter().flatten().map(CheckDocument::from).collect();
    Ok(VerifyOutcome { checks })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Lct(Rational),
    Ck(usize),
    Ek(usize),
    Mixed,
}

/// One value as `p/q` or `inf`.
pub fn run_compute(query: &Query, docs: &[IdealDocument]) -> CliResult<String> {
    let ideals = docs.iter().map(IdealDocument::ideal).collect::<CliResult<Vec<_>>>()?;
    if let Query::Mixed = query {
        let n = ideals.first().map(MonomialIdeal::dim).unwrap_or(0);
        if ideals.len() != n || ideals.iter().any(|i| i.dim() != n) {
            return Err(CliError::Input(format!("--mixed needs exactly n ideals of dimension n; got {}", ideals.len())));
        }
        if let Some(bad) = ideals.iter().find(|i| !i.is_m_primary()) {
            return Err(CliError::Check(format!(
                "{bad} is not m-primary, so its mixed multiplicities are undefined; truncate it with a power of the maximal ideal"
            )));
        }
        return Ok(format_rational(&mixed_multiplicity(&ideals)?));
    }
    let [ideal] = ideals.as_slice() else {
        return Err(CliError::Input(format!("expected one ideal, got {}", ideals.len())));
    };
    let value = match query {
        Query::Lct(t) => weighted_lct(ideal, t)?,
        Query::Ck(k) => c_k(ideal, *k)?,
        Query::Ek(k) => e_k(ideal, *k)?,
        Query::Mixed => unreachable!("handled above"),
    };
    Ok(value.render())
}
