//! Verification reports shared by every checker.

use std::collections::BTreeMap;

use serde::Serialize;

/// Default number of recorded failing cases per report.
pub const FAILURE_LIMIT: usize = 32;

/// One checked case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub law: String,
    pub input: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
}

/// Counts every checked case and keeps the interesting ones.
///
/// Failures are recorded up to a limit. Passing cases are recorded only when
/// `record_passing` is set, which the CLI uses for small reports.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub title: String,
    laws: BTreeMap<String, Tally>,
    cases: Vec<Case>,
    failure_limit: usize,
    record_passing: bool,
    pub notes: Vec<String>,
    pub flags: Vec<String>,
    pub seed: Option<u64>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            failure_limit: FAILURE_LIMIT,
            ..Default::default()
        }
    }

    pub fn recording_passes(mut self) -> Self {
        self.record_passing = true;
        self
    }

    /// Records a case; the closure building the text runs only when needed.
    pub fn check<F>(&mut self, law: &str, pass: bool, describe: F)
    where
        F: FnOnce() -> (String, String, String),
    {
        let tally = self.laws.entry(law.to_string()).or_default();
        if pass {
            tally.passed += 1;
        } else {
            tally.failed += 1;
        }
        let keep = if pass {
            self.record_passing
        } else {
            self.cases.iter().filter(|c| !c.pass).count() < self.failure_limit
        };
        if keep {
            let (input, expected, got) = describe();
            self.cases.push(Case {
                law: law.to_string(),
                input,
                expected,
                got,
                pass,
            });
        }
    }

    /// Checks `expected == got`, rendering both with `Debug` on failure.
    pub fn check_eq<T: PartialEq + std::fmt::Debug>(&mut self, law: &str, input: impl FnOnce() -> String, expected: &T, got: &T) {
        let pass = expected == got;
        self.check(law, pass, || (input(), format!("{expected:?}"), format!("{got:?}")));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// A configuration problem that does not count as a failed case.
    pub fn flag(&mut self, text: impl Into<String>) {
        self.flags.push(text.into());
    }

    /// Appends another report's cases and tallies.
    pub fn absorb(&mut self, other: Report) {
        for (law, t) in other.laws {
            let e = self.laws.entry(law).or_default();
            e.passed += t.passed;
            e.failed += t.failed;
        }
        let mut room = self.failure_limit.saturating_sub(self.cases.iter().filter(|c| !c.pass).count());
        for c in other.cases {
            if c.pass {
                if self.record_passing {
                    self.cases.push(c);
                }
            } else if room > 0 {
                room -= 1;
                self.cases.push(c);
            }
        }
        self.notes.extend(other.notes);
        self.flags.extend(other.flags);
        if self.seed.is_none() {
            self.seed = other.seed;
        }
    }

    pub fn total(&self) -> usize {
        self.laws.values().map(|t| t.passed + t.failed).sum()
    }

    pub fn passed(&self) -> usize {
        self.laws.values().map(|t| t.passed).sum()
    }

    pub fn failed(&self) -> usize {
        self.laws.values().map(|t| t.failed).sum()
    }

    pub fn is_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn laws(&self) -> &BTreeMap<String, Tally> {
        &self.laws
    }

    pub fn tally(&self, law: &str) -> Tally {
        self.laws.get(law).copied().unwrap_or_default()
    }

    pub fn cases(&self) -> &[Case] {
        &self.cases
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }

    /// The recorded cases as a JSON array of `{law, input, expected, got, pass}`.
    pub fn cases_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.cases).expect("cases serialize")
    }

    /// One line per law: `law: passed/total`.
    pub fn summary_lines(&self) -> Vec<String> {
        self.laws
            .iter()
            .map(|(law, t)| format!("{law}: {}/{}", t.passed, t.passed + t.failed))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tallies_and_limits() {
        let mut r = Report::new("t");
        for i in 0..50 {
            r.check("even", i % 2 == 0, || (i.to_string(), "even".into(), "odd".into()));
        }
        assert_eq!(r.total(), 50);
        assert_eq!(r.passed(), 25);
        assert_eq!(r.failures().count(), 25);
        assert!(!r.is_pass());

        let mut many = Report::new("m");
        for i in 0..100 {
            many.check("never", false, || (i.to_string(), String::new(), String::new()));
        }
        assert_eq!(many.failures().count(), FAILURE_LIMIT);
        assert_eq!(many.failed(), 100);
    }

    #[test]
    fn passing_cases_recorded_on_request() {
        let mut r = Report::new("t").recording_passes();
        r.check_eq("eq", || "1+1".into(), &2, &2);
        assert_eq!(r.cases().len(), 1);
        assert_eq!(
            r.cases_json(),
            serde_json::json!([{"law": "eq", "input": "1+1", "expected": "2", "got": "2", "pass": true}])
        );
    }

    #[test]
    fn absorb_merges_tallies() {
        let mut a = Report::new("a");
        a.check("x", true, || unreachable!());
        let mut b = Report::new("b");
        b.check("x", false, || ("i".into(), "e".into(), "g".into()));
        b.flag("odd configuration");
        a.absorb(b);
        assert_eq!(a.tally("x"), Tally { passed: 1, failed: 1 });
        assert_eq!(a.flags.len(), 1);
    }
}
