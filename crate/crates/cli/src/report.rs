use serde::Serialize;
use twlab_core::Report;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliCase {
    pub name: String,
    pub inputs: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// The JSON document written by every command.
#[derive(Clone, Debug, Serialize)]
pub struct CliReport {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub cases: Vec<CliCase>,
    pub summary: Summary,
    pub notes: Vec<String>,
    /// Lines for the human summary only.
    #[serde(skip)]
    pub headline: Vec<String>,
}

impl CliReport {
    pub fn new(command: String, seed: u64) -> Self {
        CliReport {
            schema: SCHEMA,
            tool: "twlab",
            version: env!("CARGO_PKG_VERSION"),
            command,
            seed,
            cases: Vec::new(),
            summary: Summary { total: 0, passed: 0, failed: 0 },
            notes: Vec::new(),
            headline: Vec::new(),
        }
    }

    pub fn case(&mut self, name: impl Into<String>, inputs: impl Into<String>, expected: impl Into<String>, got: impl Into<String>, pass: bool) {
        self.cases.push(CliCase {
            name: name.into(),
            inputs: inputs.into(),
            expected: expected.into(),
            got: got.into(),
            pass,
        });
    }

    /// A case that passes when `expected == got`.
    pub fn compare(&mut self, name: impl Into<String>, inputs: impl Into<String>, expected: impl Into<String>, got: impl Into<String>) {
        let (expected, got) = (expected.into(), got.into());
        let pass = expected == got;
        self.case(name, inputs, expected, got, pass);
    }

    /// One case per law of a library report. Failing laws carry their
    /// first recorded counterexample.
    pub fn absorb(&mut self, prefix: &str, inputs: &str, rep: &Report) {
        for (law, tally) in rep.laws() {
            let total = tally.passed + tally.failed;
            let name = if prefix.is_empty() { law.clone() } else { format!("{prefix} {law}") };
            match rep.failures().find(|c| &c.law == law) {
                Some(c) if tally.failed > 0 => self.case(
                    name,
                    format!("{inputs}: {} ({} of {total} cases failed)", c.input, tally.failed),
                    c.expected.clone(),
                    c.got.clone(),
                    false,
                ),
                _ => self.case(
                    name,
                    inputs,
                    format!("{total}/{total} cases"),
                    format!("{}/{total} cases", tally.passed),
                    tally.failed == 0,
                ),
            }
        }
        self.notes.extend(rep.notes.iter().cloned());
        self.notes.extend(rep.flags.iter().map(|f| format!("flag: {f}")));
    }

    pub fn finish(&mut self) {
        let passed = self.cases.iter().filter(|c| c.pass).count();
        self.summary = Summary {
            total: self.cases.len(),
            passed,
            failed: self.cases.len() - passed,
        };
    }

    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for line in &self.headline {
            out.push_str(line);
            out.push('\n');
        }
        for c in &self.cases {
            if c.pass {
                out.push_str(&format!("PASS {}: {}\n", c.name, c.got));
            } else {
                out.push_str(&format!("FAIL {}: expected {}, got {} [{}]\n", c.name, c.expected, c.got, c.inputs));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out.push_str(&format!("{}/{} cases passed\n", self.summary.passed, self.summary.total));
        out
    }
}
