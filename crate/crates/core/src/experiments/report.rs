use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// Acceptance bound of a metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    /// value < t
    Below(f64),
    /// value > t
    Above(f64),
    /// value ≤ t
    AtMost(f64),
    /// value ≥ t
    AtLeast(f64),
}

impl Bound {
    pub fn admits(&self, value: f64) -> bool {
        match *self {
            Bound::Below(t) => value < t,
            Bound::Above(t) => value > t,
            Bound::AtMost(t) => value <= t,
            Bound::AtLeast(t) => value >= t,
        }
    }

    pub fn threshold(&self) -> f64 {
        match *self {
            Bound::Below(t) | Bound::Above(t) | Bound::AtMost(t) | Bound::AtLeast(t) => t,
        }
    }

    pub fn relation(&self) -> &'static str {
        match self {
            Bound::Below(_) => "<",
            Bound::Above(_) => ">",
            Bound::AtMost(_) => "<=",
            Bound::AtLeast(_) => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: Bound,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.bound.admits(self.value)
    }
}

/// Outcome of one claim. `status` is `Pass` exactly when every check passes,
/// unless the verifier declared the run inconclusive.
#[derive(Debug, Clone, PartialEq)]
pub struct PropositionReport {
    pub id: &'static str,
    pub status: Status,
    pub checks: Vec<Check>,
    /// Metrics reported but not judged.
    pub info: BTreeMap<String, f64>,
    pub samples: usize,
    pub notes: Vec<String>,
    forced: Option<Status>,
}

impl PropositionReport {
    pub(crate) fn new(id: &'static str) -> Self {
        PropositionReport {
            id,
            status: Status::Pass,
            checks: Vec::new(),
            info: BTreeMap::new(),
            samples: 0,
            notes: Vec::new(),
            forced: None,
        }
    }

    pub fn pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Value of a check or info metric.
    pub fn metric(&self, name: &str) -> Option<f64> {
        self.check(name)
            .map(|c| c.value)
            .or_else(|| self.info.get(name).copied())
    }

    pub(crate) fn push(&mut self, name: &str, value: f64, bound: Bound) {
        self.checks.push(Check {
            name: name.to_string(),
            value,
            bound,
        });
    }

    pub(crate) fn info(&mut self, name: &str, value: f64) {
        self.info.insert(name.to_string(), value);
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Sets `status` from the checks. An empty check list fails.
    pub(crate) fn finish(mut self) -> Self {
        self.status = match self.forced {
            Some(s) => s,
            None if !self.checks.is_empty() && self.checks.iter().all(Check::pass) => Status::Pass,
            None => Status::Fail,
        };
        self
    }

    pub(crate) fn inconclusive(&mut self, why: impl Into<String>) {
        self.note(why);
        self.forced = Some(Status::Inconclusive);
    }

    pub(crate) fn precondition_failed(&mut self, why: impl Into<String>) {
        self.note(format!("precondition failed: {}", why.into()));
        if self.forced.is_none() {
            self.forced = Some(Status::Fail);
        }
    }
}
