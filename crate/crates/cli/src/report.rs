use std::time::Duration;

use lochar_core::monoidal::Verdict;
use serde_json::{json, Value};

use crate::commands::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub struct Report {
    command: &'static str,
    outcome: Outcome,
    seed: u64,
    elapsed: Duration,
}

impl Report {
    pub fn new(command: &'static str, outcome: Outcome, seed: u64, elapsed: Duration) -> Self {
        Self { command, outcome, seed, elapsed }
    }

    pub fn exit_code(&self) -> u8 {
        match self.outcome.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Indeterminate => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "verdict": self.outcome.verdict,
            "bounds": self.outcome.bounds,
            "seed": self.seed,
            "result": self.outcome.result,
            "timings": {"total_us": self.elapsed.as_micros() as u64},
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json().to_string(),
            Format::Text => {
                let mut out = format!("{}: {}\n", self.command, json!(self.outcome.verdict).as_str().unwrap_or("?"));
                if let Value::Object(m) = &self.outcome.result {
                    for (k, v) in m {
                        out.push_str(&format!("  {k}: {}\n", short(v)));
                    }
                }
                out.push_str(&format!("  bounds used: {}\n  seed: {}\n  time: {:.1} ms", self.outcome.bounds, self.seed, self.elapsed.as_secs_f64() * 1e3));
                out
            }
        }
    }
}

/// Compact JSON, cut off for the text view.
fn short(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        _ => v.to_string(),
    };
    if s.chars().count() > 160 {
        format!("{}... (use --format json)", s.chars().take(160).collect::<String>())
    } else {
        s
    }
}
