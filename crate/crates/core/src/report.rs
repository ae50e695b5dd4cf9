//! Outcome of a verifier: a named check with its failures and any levels at
//! which a truncated search could not decide.

use serde::Serialize;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub failures: Vec<String>,
    pub inconclusive: Vec<String>,
    pub details: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Report {
        Report {
            name: name.into(),
            ..Report::default()
        }
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    pub fn inconclusive(&mut self, msg: impl Into<String>) {
        self.inconclusive.push(msg.into());
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.details.push(msg.into());
    }

    /// Records a failure unless `cond` holds.
    pub fn check(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        if !cond {
            self.failures.push(msg());
        }
    }

    /// Folds another report into this one, prefixing its messages.
    pub fn absorb(&mut self, other: Report) {
        let prefix = other.name;
        self.failures
            .extend(other.failures.into_iter().map(|m| format!("{prefix}: {m}")));
        self.inconclusive
            .extend(other.inconclusive.into_iter().map(|m| format!("{prefix}: {m}")));
        self.details
            .extend(other.details.into_iter().map(|m| format!("{prefix}: {m}")));
    }

    pub fn status(&self) -> Status {
        if !self.failures.is_empty() {
            Status::Fail
        } else if !self.inconclusive.is_empty() {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_precedence() {
        let mut r = Report::new("x");
        assert_eq!(r.status(), Status::Pass);
        r.inconclusive("depth");
        assert_eq!(r.status(), Status::Inconclusive);
        r.fail("bad");
        assert_eq!(r.status(), Status::Fail);
        let mut outer = Report::new("outer");
        outer.absorb(r);
        assert_eq!(outer.failures, vec!["x: bad".to_string()]);
    }
}
