use std::fmt;
use std::time::Duration;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Agree,
    Disagree,
    /// Not decided: cost ceiling, unsupported instance, or an exhausted
    /// search budget (`inconclusive`).
    Skip { inconclusive: bool },
}

impl Outcome {
    pub fn token(self) -> &'static str {
        match self {
            Outcome::Agree => "AGREE",
            Outcome::Disagree => "DISAGREE",
            Outcome::Skip { .. } => "SKIP",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub id: String,
    pub oracle: String,
    pub subject: String,
    pub outcome: Outcome,
    /// Instance text, attached to disagreements.
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, oracle: impl fmt::Display, subject: impl fmt::Display, outcome: Outcome) -> Self {
        CheckRecord { id: id.into(), oracle: oracle.to_string(), subject: subject.to_string(), outcome, detail: None }
    }

    /// Attaches `text` when the record is a disagreement.
    pub fn with_detail(mut self, text: impl FnOnce() -> String) -> Self {
        if self.outcome == Outcome::Disagree {
            self.detail = Some(text());
        }
        self
    }

    /// AGREE when the two strings match.
    pub fn compare(id: impl Into<String>, oracle: impl fmt::Display, subject: impl fmt::Display) -> Self {
        let (oracle, subject) = (oracle.to_string(), subject.to_string());
        let outcome = if oracle == subject { Outcome::Agree } else { Outcome::Disagree };
        CheckRecord::new(id, oracle, subject, outcome)
    }

    pub fn skip(id: impl Into<String>, oracle: impl fmt::Display, reason: impl fmt::Display, inconclusive: bool) -> Self {
        CheckRecord::new(id, oracle, reason, Outcome::Skip { inconclusive })
    }

    /// `CHECK <suite> <id> <oracle> <subject> <status>`; fields never contain
    /// whitespace.
    pub fn line(&self, suite: &str) -> String {
        let field = |s: &str| if s.is_empty() { "-".to_string() } else { s.split_whitespace().collect::<Vec<_>>().join("_") };
        format!("CHECK {} {} {} {} {}", suite, field(&self.id), field(&self.oracle), field(&self.subject), self.outcome.token())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteStatus {
    Pass,
    PassWithSkips,
    Fail,
    Inconclusive,
}

impl fmt::Display for SuiteStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuiteStatus::Pass => "PASS",
            SuiteStatus::PassWithSkips => "PASS-WITH-SKIPS",
            SuiteStatus::Fail => "FAIL",
            SuiteStatus::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub suite: String,
    pub records: Vec<CheckRecord>,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>, records: Vec<CheckRecord>, elapsed: Duration) -> Self {
        CheckReport { suite: suite.into(), records, elapsed }
    }

    pub fn agree(&self) -> usize {
        self.count(|o| o == Outcome::Agree)
    }

    pub fn disagree(&self) -> usize {
        self.count(|o| o == Outcome::Disagree)
    }

    pub fn skipped(&self) -> usize {
        self.count(|o| matches!(o, Outcome::Skip { .. }))
    }

    /// Decided checks: `agree() + disagree()`.
    pub fn total(&self) -> usize {
        self.agree() + self.disagree()
    }

    fn count(&self, pred: impl Fn(Outcome) -> bool) -> usize {
        self.records.iter().filter(|r| pred(r.outcome)).count()
    }

    pub fn status(&self) -> SuiteStatus {
        if self.disagree() > 0 {
            SuiteStatus::Fail
        } else if self.records.iter().any(|r| r.outcome == Outcome::Skip { inconclusive: true }) {
            SuiteStatus::Inconclusive
        } else if self.skipped() > 0 {
            SuiteStatus::PassWithSkips
        } else {
            SuiteStatus::Pass
        }
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.outcome == Outcome::Disagree)
    }

    pub fn lines(&self) -> String {
        self.records.iter().map(|r| r.line(&self.suite) + "\n").collect()
    }

    /// One table row: suite, status and counts (no timing).
    pub fn summary(&self) -> String {
        format!(
            "{:<10} {:<16} agree {:>5}  disagree {:>3}  skip {:>4}",
            self.suite,
            self.status().to_string(),
            self.agree(),
            self.disagree(),
            self.skipped()
        )
    }

    pub fn merge(suite: impl Into<String>, parts: Vec<CheckReport>) -> CheckReport {
        let elapsed = parts.iter().map(|p| p.elapsed).sum();
        let records = parts.into_iter().flat_map(|p| p.records).collect();
        CheckReport::new(suite, records, elapsed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_precedence() {
        let ok = CheckRecord::compare("a", true, true);
        let bad = CheckRecord::compare("b", true, false);
        let skip = CheckRecord::skip("c", true, "cost", false);
        let stuck = CheckRecord::skip("d", true, "node limit", true);
        let r = |v: Vec<&CheckRecord>| CheckReport::new("t", v.into_iter().cloned().collect(), Duration::ZERO);
        assert_eq!(r(vec![&ok]).status(), SuiteStatus::Pass);
        assert_eq!(r(vec![&ok, &skip]).status(), SuiteStatus::PassWithSkips);
        assert_eq!(r(vec![&ok, &stuck, &skip]).status(), SuiteStatus::Inconclusive);
        assert_eq!(r(vec![&bad, &stuck]).status(), SuiteStatus::Fail);
        let all = r(vec![&ok, &bad, &skip]);
        assert_eq!(all.total(), 2);
        assert_eq!(all.agree() + all.disagree(), all.total());
    }

    #[test]
    fn line_format() {
        let r = CheckRecord::compare("HEX-s1-0001", true, true);
        assert_eq!(r.line("compile-hex"), "CHECK compile-hex HEX-s1-0001 true true AGREE");
        assert_eq!(r.line("x").split(' ').count(), 6);
    }
}
