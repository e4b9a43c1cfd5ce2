//! Named, parameterised checks of the perimeter-graded partition theorems.
//!
//! Every check returns a [`TheoremReport`]. A failing report carries the
//! smallest counterexample found: smallest grade first, then the
//! lexicographically smallest witness.

mod checks;
mod franklin;

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

use crate::partition::{ConstraintClass, Partition};

pub use checks::{
    scan_congruence, verify_andrews_identity, verify_congruences, verify_d_chain, verify_euler_analogue,
    verify_fibonacci_propositions, verify_franklin, verify_gf_coefficients, verify_pentagonal_analogue,
    verify_perimeter_count, verify_refined_identity, verify_refinements, verify_rogers_fine, Congruence,
    CongruenceKind, CONGRUENCES,
};
pub use franklin::{franklin, FranklinOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("partition {0} does not have distinct parts")]
    NotDistinct(Partition),
    #[error("d must be at least 1")]
    InvalidD,
    #[error("parameter {name} = {value} is outside {min}..={max}")]
    DepthOutOfRange {
        name: &'static str,
        value: u32,
        min: u32,
        max: u32,
    },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}

pub(crate) fn check_depth(name: &'static str, value: u32, min: u32, max: u32) -> Result<(), IdentityError> {
    if (min..=max).contains(&value) {
        Ok(())
    } else {
        Err(IdentityError::DepthOutOfRange { name, value, min, max })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// Inputs at which a claim broke, with the two values that disagreed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub claim: String,
    pub inputs: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub partitions: Vec<Partition>,
    pub left: String,
    pub right: String,
}

impl Counterexample {
    pub fn new(claim: impl Into<String>) -> Self {
        Counterexample {
            claim: claim.into(),
            inputs: BTreeMap::new(),
            partitions: Vec::new(),
            left: String::new(),
            right: String::new(),
        }
    }

    pub fn input(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(name.to_string(), value.into());
        self
    }

    pub fn witness(mut self, p: Partition) -> Self {
        self.partitions.push(p);
        self
    }

    pub fn values(mut self, left: impl fmt::Display, right: impl fmt::Display) -> Self {
        self.left = left.to_string();
        self.right = right.to_string();
        self
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.claim)?;
        for (k, v) in &self.inputs {
            write!(f, " {k}={v}")?;
        }
        for p in &self.partitions {
            write!(f, " [{p}]")?;
        }
        write!(f, ": {} vs {}", self.left, self.right)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub check_id: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(rename = "elapsed_ms", serialize_with = "millis")]
    pub elapsed: Duration,
}

fn millis<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Ordering used when several reports are printed together.
    pub fn sort_key(&self) -> (String, String) {
        (
            self.check_id.clone(),
            serde_json::to_string(&self.params).unwrap_or_default(),
        )
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.status, self.check_id)?;
        for (k, v) in &self.params {
            match v {
                Value::String(s) => write!(f, " {k}={s}")?,
                other => write!(f, " {k}={other}")?,
            }
        }
        if let Some(cx) = &self.counterexample {
            write!(f, "\n  counterexample: {cx}")?;
        }
        Ok(())
    }
}

/// Accumulates failures and keeps the one with the smallest key.
pub(crate) struct Probe {
    check_id: &'static str,
    params: BTreeMap<String, Value>,
    started: Instant,
    best: Option<(Vec<i64>, Counterexample)>,
}

impl Probe {
    pub(crate) fn start(check_id: &'static str) -> Self {
        Probe {
            check_id,
            params: BTreeMap::new(),
            started: Instant::now(),
            best: None,
        }
    }

    pub(crate) fn param(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.params.insert(name.to_string(), value.into());
        self
    }

    pub(crate) fn fail(&mut self, key: Vec<i64>, cx: impl FnOnce() -> Counterexample) {
        let better = match &self.best {
            None => true,
            Some((k, _)) => key < *k,
        };
        if better {
            self.best = Some((key, cx()));
        }
    }

    /// Records a failure when `left != right`.
    pub(crate) fn expect_eq<T: PartialEq + fmt::Display>(
        &mut self,
        key: Vec<i64>,
        left: T,
        right: T,
        cx: impl FnOnce() -> Counterexample,
    ) {
        if left != right {
            self.fail(key, || cx().values(&left, &right));
        }
    }

    pub(crate) fn finish(self) -> TheoremReport {
        let (status, counterexample) = match self.best {
            None => (Status::Pass, None),
            Some((_, cx)) => (Status::Fail, Some(cx)),
        };
        TheoremReport {
            check_id: self.check_id.to_string(),
            params: self.params,
            status,
            counterexample,
            elapsed: self.started.elapsed(),
        }
    }
}

/// Identifiers accepted by [`run_check`], in output order.
pub const CHECK_IDS: [&str; 12] = [
    "andrews-identity",
    "congruences",
    "d-chain",
    "euler-analogue",
    "fibonacci-propositions",
    "franklin",
    "gf-coefficients",
    "pentagonal-analogue",
    "perimeter-count",
    "refined-identity",
    "refinements",
    "rogers-fine",
];

/// Optional overrides of the default verification depths.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Depths {
    pub max_n: Option<u32>,
    pub qbound: Option<u32>,
    pub max_size: Option<u32>,
    pub d: Option<u32>,
    pub class: Option<ConstraintClass>,
}

type Job = Box<dyn FnOnce() -> Result<TheoremReport, IdentityError> + Send>;

fn jobs_for(id: &str, depths: &Depths) -> Result<Vec<Job>, IdentityError> {
    let Depths {
        max_n,
        qbound,
        max_size,
        d,
        class,
    } = *depths;
    let jobs: Vec<Job> = match id {
        "andrews-identity" => vec![Box::new(move || verify_andrews_identity(qbound.unwrap_or(15)))],
        "congruences" => vec![Box::new(move || verify_congruences(max_n.unwrap_or(60)))],
        "d-chain" => {
            let ds: Vec<u32> = match d {
                Some(d) => vec![d],
                None => (1..=5).collect(),
            };
            ds.into_iter()
                .map(|d| -> Job { Box::new(move || verify_d_chain(d, max_n.unwrap_or(18))) })
                .collect()
        }
        "euler-analogue" => vec![Box::new(move || verify_euler_analogue(max_n.unwrap_or(25)))],
        "fibonacci-propositions" => {
            vec![Box::new(move || verify_fibonacci_propositions(max_n.unwrap_or(30)))]
        }
        "franklin" => vec![Box::new(move || verify_franklin(max_size.unwrap_or(40)))],
        "gf-coefficients" => {
            let classes = match class {
                Some(c) => vec![c],
                None => ConstraintClass::all_with(1..=5),
            };
            classes
                .into_iter()
                .map(|c| -> Job { Box::new(move || verify_gf_coefficients(c, qbound.unwrap_or(12))) })
                .collect()
        }
        "pentagonal-analogue" => {
            vec![Box::new(move || verify_pentagonal_analogue(max_n.unwrap_or(30)))]
        }
        "perimeter-count" => vec![Box::new(move || verify_perimeter_count(max_n.unwrap_or(16)))],
        "refined-identity" => vec![Box::new(move || verify_refined_identity(qbound.unwrap_or(15)))],
        "refinements" => vec![Box::new(move || verify_refinements(max_n.unwrap_or(14)))],
        "rogers-fine" => vec![Box::new(move || verify_rogers_fine(qbound.unwrap_or(10)))],
        other => return Err(IdentityError::UnknownCheck(other.to_string())),
    };
    Ok(jobs)
}

/// Runs every job on its own thread and returns the reports sorted by
/// check id, then parameters.
fn run_jobs(jobs: Vec<Job>) -> Result<Vec<TheoremReport>, IdentityError> {
    let results: Vec<Result<TheoremReport, IdentityError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs.into_iter().map(|job| scope.spawn(job)).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });
    let mut reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    reports.sort_by_key(TheoremReport::sort_key);
    Ok(reports)
}

/// Runs one named check (which may expand to several parameterisations).
pub fn run_check(id: &str, depths: &Depths) -> Result<Vec<TheoremReport>, IdentityError> {
    run_jobs(jobs_for(id, depths)?)
}

/// Runs every check in [`CHECK_IDS`].
pub fn run_all(depths: &Depths) -> Result<Vec<TheoremReport>, IdentityError> {
    let mut jobs = Vec::new();
    for id in CHECK_IDS {
        jobs.extend(jobs_for(id, depths)?);
    }
    run_jobs(jobs)
}
