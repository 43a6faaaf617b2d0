//! Verification records as key-value blocks.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        })
    }
}

/// One check: a name, ordered fields and a verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub name: String,
    pub fields: Vec<(String, String)>,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), fields: Vec::new(), verdict: Verdict::Pass }
    }

    pub fn field(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl fmt::Display) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    /// Records a named assertion; any failure makes the verdict `fail`.
    pub fn check(&mut self, key: &str, ok: bool) {
        self.push(key, if ok { "ok" } else { "FAILED" });
        if !ok {
            self.verdict = Verdict::Fail;
        }
    }

    pub fn skipped(name: impl Into<String>, why: impl fmt::Display) -> Self {
        Report { name: name.into(), fields: vec![("reason".into(), why.to_string())], verdict: Verdict::Skipped }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}]", self.name)?;
        for (k, v) in &self.fields {
            writeln!(f, "{k} = {v}")?;
        }
        writeln!(f, "verdict = {}", self.verdict)
    }
}

/// Exit status of a batch: failures dominate skips.
pub fn summarize(reports: &[Report]) -> Verdict {
    if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        Verdict::Fail
    } else if reports.iter().any(|r| r.verdict == Verdict::Skipped) {
        Verdict::Skipped
    } else {
        Verdict::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_and_verdicts() {
        let mut r = Report::new("demo").field("group", "SL2(Z/9)");
        r.check("degree", true);
        assert!(r.passed());
        r.check("irreducible", false);
        assert_eq!(r.verdict, Verdict::Fail);
        let text = r.to_string();
        assert!(text.starts_with("[demo]\ngroup = SL2(Z/9)\n"));
        assert!(text.ends_with("verdict = fail\n"));
        assert_eq!(summarize(&[Report::new("a"), Report::skipped("b", "budget")]), Verdict::Skipped);
        assert_eq!(summarize(&[r, Report::skipped("b", "budget")]), Verdict::Fail);
    }
}
