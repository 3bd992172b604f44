//! Versioned report documents.

use std::fmt::Write as _;
use std::time::Duration;

use liecoh_core::{Residual, Witness};
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

/// One checked identity.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub identity: String,
    /// `"zero"` or `"nonzero"`.
    pub verdict: &'static str,
    pub checked: usize,
    pub nonzero: usize,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn from_residual(identity: &str, r: &Residual) -> Self {
        Verdict {
            identity: identity.to_string(),
            verdict: if r.is_zero() { "zero" } else { "nonzero" },
            checked: r.checked,
            nonzero: r.nonzero,
            witness: r.witness.clone(),
        }
    }

    /// A failure reported by the library as an error with a located component.
    pub fn failed(identity: &str, index: Vec<usize>, value: String) -> Self {
        Verdict {
            identity: identity.to_string(),
            verdict: "nonzero",
            checked: 1,
            nonzero: 1,
            witness: Some(Witness { label: identity.to_string(), index, value }),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub command: String,
    pub config: Value,
    /// `"exact"` or `"modular (probabilistic)"`.
    pub provenance: String,
    pub verdicts: Vec<Verdict>,
    /// Evaluated conditions that the input is not claimed to satisfy; they
    /// never affect the exit code.
    pub observations: Vec<Verdict>,
    pub result: Value,
    pub passed: bool,
    /// Wall-clock phases; kept out of JSON so documents are reproducible.
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

impl Report {
    pub fn new(command: &str, config: Value) -> Self {
        Report {
            schema: SCHEMA,
            tool: format!("liecoh {}", env!("CARGO_PKG_VERSION")),
            command: command.to_string(),
            config,
            provenance: "exact".to_string(),
            verdicts: Vec::new(),
            observations: Vec::new(),
            result: Value::Null,
            passed: true,
            timings: Vec::new(),
        }
    }

    pub fn push(&mut self, v: Verdict) {
        self.passed &= v.is_zero();
        self.verdicts.push(v);
    }

    pub fn residual(&mut self, identity: &str, r: &Residual) {
        self.push(Verdict::from_residual(identity, r));
    }

    /// Records a condition as an observation instead of an identity.
    pub fn observe(&mut self, identity: &str, r: &Residual) {
        self.observations.push(Verdict::from_residual(identity, r));
    }

    /// An identity or an observation, depending on what the input claims.
    pub fn record(&mut self, claimed: bool, identity: &str, r: &Residual) {
        if claimed {
            self.residual(identity, r)
        } else {
            self.observe(identity, r)
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} ({})", self.tool, self.command, self.provenance);
        let tagged = self.verdicts.iter().map(|v| ("", v)).chain(self.observations.iter().map(|v| ("(observed) ", v)));
        for (tag, v) in tagged {
            match &v.witness {
                None => {
                    let _ = writeln!(s, "  {tag}{}: zero ({} components)", v.identity, v.checked);
                }
                Some(w) => {
                    let _ = writeln!(
                        s,
                        "  {tag}{}: NONZERO ({} of {}), {} at {:?} = {}",
                        v.identity, v.nonzero, v.checked, w.label, w.index, w.value
                    );
                }
            }
        }
        if let Value::Object(m) = &self.result {
            for (k, v) in m {
                let _ = writeln!(s, "  {k}: {}", compact(v));
            }
        }
        for (name, d) in &self.timings {
            let _ = writeln!(s, "  time {name}: {:.3}s", d.as_secs_f64());
        }
        let _ = writeln!(s, "{}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => {
            let t = other.to_string();
            if t.len() > 200 {
                format!("{}...", &t[..200])
            } else {
                t
            }
        }
    }
}
