//! Named checks of the results this crate reproduces, each producing a
//! [`Report`] with the expected and computed values side by side.
//!
//! A failing check never stops the others; [`run_suite`] collects every
//! report into one [`ReportFile`].

mod claims;
mod properties;

use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use claims::{
    b_x, check_constructions, check_conjecture7, check_conjecture8, check_counterexample,
    check_prop9, check_prop9_with_cap, check_search_oracle, check_theorem2,
};
pub use properties::{check_kruskal_katona, check_lemma_properties};

/// Seed used by the randomized suites when none is given.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The search stopped before finishing, so nothing was decided.
    Incomplete,
    /// A family beats the conjectured optimum; it is in the reproducer.
    RefutedWithWitness,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim_id: String,
    pub parameters: Value,
    pub expected: Value,
    pub computed: Value,
    pub status: Status,
    pub pass: bool,
    pub runtime_ms: f64,
    pub notes: Vec<String>,
    /// Input that reproduces a failure, when there is one.
    pub reproducer: Option<Value>,
}

impl Report {
    fn new(claim_id: &str, parameters: Value) -> Self {
        Report {
            claim_id: claim_id.to_string(),
            parameters,
            expected: Value::Null,
            computed: Value::Null,
            status: Status::Fail,
            pass: false,
            runtime_ms: 0.0,
            notes: Vec::new(),
            reproducer: None,
        }
    }

    fn set_status(&mut self, status: Status) {
        self.status = status;
        self.pass = status == Status::Pass;
    }

    fn verdict(&mut self, ok: bool) {
        self.set_status(if ok { Status::Pass } else { Status::Fail });
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

/// Runs `body` on a fresh report and records the elapsed time.
fn timed(claim_id: &str, parameters: Value, body: impl FnOnce(&mut Report)) -> Report {
    let start = Instant::now();
    let mut report = Report::new(claim_id, parameters);
    body(&mut report);
    report.runtime_ms = start.elapsed().as_secs_f64() * 1000.0;
    report
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunHeader {
    pub seed: u64,
    pub version: String,
    pub started_unix_ms: u128,
    pub wall_time_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub header: RunHeader,
    pub reports: Vec<Report>,
    pub passed: usize,
    pub failed: usize,
}

impl ReportFile {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Claims understood by [`run_claim`].
pub const CLAIM_IDS: &[&str] = &[
    "counterexample",
    "theorem2",
    "conj7",
    "conj8",
    "prop9",
    "lemmas",
    "kk",
    "constructions",
    "oracle",
];

/// Knobs shared by the checks; unset values take each check's default.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub workers: usize,
    pub n_max: Option<usize>,
    pub k: Option<u32>,
    pub t: Option<u32>,
    pub trials: Option<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: DEFAULT_SEED,
            workers: 1,
            n_max: None,
            k: None,
            t: None,
            trials: None,
        }
    }
}

/// Runs one claim by id (or `all`), returning `None` for an unknown id.
pub fn run_claim(claim_id: &str, options: &SuiteOptions) -> Option<Vec<Report>> {
    let o = options;
    let reports = match claim_id {
        "counterexample" => vec![check_counterexample()],
        "theorem2" => check_theorem2(o.n_max.unwrap_or(8), o.workers),
        "conj7" => vec![check_conjecture7(o.k.unwrap_or(3), o.t.unwrap_or(4), o.workers)],
        "conj8" => check_conjecture8(o.k.unwrap_or(3), o.n_max.unwrap_or(6), o.workers),
        "prop9" => match o.k {
            Some(k) => vec![check_prop9(k)],
            None => vec![check_prop9(2), check_prop9(3)],
        },
        "lemmas" => check_lemma_properties(o.trials.unwrap_or(1000), o.seed),
        "kk" => vec![check_kruskal_katona(o.trials.unwrap_or(2000), o.seed)],
        "constructions" => vec![check_constructions(o.t.unwrap_or(8), o.k.unwrap_or(4))],
        "oracle" => vec![check_search_oracle(o.k.unwrap_or(3), o.n_max.unwrap_or(5))],
        "all" => CLAIM_IDS
            .iter()
            .flat_map(|id| run_claim(id, options).expect("known id"))
            .collect(),
        _ => return None,
    };
    Some(reports)
}

/// Runs `claim_id` and wraps the reports with a run header.
pub fn run_suite(claim_id: &str, options: &SuiteOptions) -> Option<ReportFile> {
    let started = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_millis());
    let clock = Instant::now();
    let reports = run_claim(claim_id, options)?;
    let passed = reports.iter().filter(|r| r.pass).count();
    Some(ReportFile {
        header: RunHeader {
            seed: options.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            started_unix_ms: started,
            wall_time_ms: clock.elapsed().as_secs_f64() * 1000.0,
        },
        failed: reports.len() - passed,
        passed,
        reports,
    })
}
