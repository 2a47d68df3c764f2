//! Check reports in text and JSON form.

use serde_json::{json, Value};

/// One condition tested on a subject.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub label: String,
    pub holds: bool,
    /// Offending components or reasons, empty when the condition holds.
    pub details: Vec<String>,
}

impl Line {
    pub fn new(label: &str, holds: bool, details: Vec<String>) -> Self {
        Line { label: label.to_string(), holds, details }
    }

    /// Holds iff `failures` is empty.
    pub fn from_failures(label: &str, failures: Vec<String>) -> Self {
        Line::new(label, failures.is_empty(), failures)
    }
}

/// Results for one object (or object group, or seeded suite).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub subject: String,
    pub lines: Vec<Line>,
    /// Observations that do not affect the verdict.
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub seed: Option<u64>,
    pub outcomes: Vec<Outcome>,
}

fn mark(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(Outcome::passed)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for o in &self.outcomes {
            s.push_str(&format!("{} {}: {}\n", self.check, o.subject, mark(o.passed())));
            for l in &o.lines {
                s.push_str(&format!("  [{}] {}\n", mark(l.holds), l.label));
                for d in &l.details {
                    s.push_str(&format!("         {d}\n"));
                }
            }
            for n in &o.notes {
                s.push_str(&format!("  note: {n}\n"));
            }
        }
        let passed = self.outcomes.iter().filter(|o| o.passed()).count();
        s.push_str(&format!(
            "summary: {} of {} passed: {}\n",
            passed,
            self.outcomes.len(),
            mark(self.passed())
        ));
        s
    }

    pub fn to_json(&self) -> Value {
        let outcomes: Vec<Value> = self
            .outcomes
            .iter()
            .map(|o| {
                let lines: Vec<Value> = o
                    .lines
                    .iter()
                    .map(|l| json!({"label": l.label, "holds": l.holds, "details": l.details}))
                    .collect();
                json!({"subject": o.subject, "passed": o.passed(), "checks": lines, "notes": o.notes})
            })
            .collect();
        json!({"check": self.check, "seed": self.seed, "passed": self.passed(), "outcomes": outcomes})
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report {
            check: "is-poisson".into(),
            seed: None,
            outcomes: vec![
                Outcome { subject: "a.toml:pi".into(), lines: vec![Line::new("[pi, pi] = 0", true, vec![])], notes: vec![] },
                Outcome {
                    subject: "b.toml:pi".into(),
                    lines: vec![Line::from_failures("[pi, pi] = 0", vec!["x,y,z: 1".into()])],
                    notes: vec!["bivector is not constant".into()],
                },
            ],
        }
    }

    #[test]
    fn text_lists_each_subject_and_a_summary() {
        let t = sample().to_text();
        assert!(t.contains("is-poisson a.toml:pi: PASS\n"));
        assert!(t.contains("is-poisson b.toml:pi: FAIL\n"));
        assert!(t.contains("x,y,z: 1"));
        assert!(t.ends_with("summary: 1 of 2 passed: FAIL\n"));
    }

    #[test]
    fn json_is_stable() {
        let r = sample();
        assert_eq!(r.to_json_text(), r.clone().to_json_text());
        let v = r.to_json();
        assert_eq!(v["passed"], false);
        assert_eq!(v["outcomes"][1]["checks"][0]["details"][0], "x,y,z: 1");
    }
}
