//! Timing tables over a suite of sessions and engine configurations.
//!
//! A suite is JSON:
//!
//! ```json
//! {
//!   "inputs": [{ "name": "cusp(2,3)", "session": "bsp x^2 - y^3;" }],
//!   "engines": [
//!     { "engine": "direct" },
//!     { "engine": "modular", "threads": 2 }
//!   ]
//! }
//! ```
//!
//! Every command of an input runs under every engine configuration; a row
//! reports the total wall time and the weakest status.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::document::digest;
use crate::run::{run_command, EngineChoice, RunFlags};
use crate::session::load_session;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteInput {
    pub name: String,
    pub session: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteEngine {
    pub engine: String,
    #[serde(default)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Suite {
    #[serde(default)]
    pub inputs: Vec<SuiteInput>,
    #[serde(default)]
    pub engines: Vec<SuiteEngine>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub input: String,
    pub engine: String,
    pub threads: usize,
    pub status: String,
    pub seconds: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

fn rank(status: &str) -> u8 {
    match status {
        "Direct" => 4,
        "VerifiedGraded" => 3,
        "ProbablyCorrect" => 2,
        "Lifting" => 1,
        _ => 0,
    }
}

/// Runs the suite. Failures are recorded per row and do not stop the run.
pub fn bench_report(suite: &Suite, base: &RunFlags) -> BenchReport {
    let mut rows = Vec::new();
    for input in &suite.inputs {
        for cfg in &suite.engines {
            let threads = cfg.threads.unwrap_or(base.threads).max(1);
            let mut row = BenchRow {
                input: input.name.clone(),
                engine: cfg.engine.clone(),
                threads,
                status: String::new(),
                seconds: 0.0,
                error: None,
            };
            let choice = match cfg.engine.parse::<EngineChoice>() {
                Ok(c) => c,
                Err(e) => {
                    row.status = "Failed".into();
                    row.error = Some(e);
                    rows.push(row);
                    continue;
                }
            };
            let flags = RunFlags {
                threads,
                engine: Some(choice),
                timings: false,
                ..base.clone()
            };
            let start = Instant::now();
            let result = load_session(&input.session)
                .map_err(|e| e.to_string())
                .and_then(|session| {
                    let d = digest(&input.session);
                    let mut status = "Direct".to_string();
                    for cmd in &session.commands {
                        let doc =
                            run_command(&session, &d, cmd, &flags).map_err(|e| e.to_string())?;
                        if rank(&doc.status) < rank(&status) {
                            status = doc.status;
                        }
                    }
                    Ok(status)
                });
            row.seconds = start.elapsed().as_secs_f64();
            match result {
                Ok(s) => row.status = s,
                Err(e) => {
                    row.status = "Failed".into();
                    row.error = Some(e);
                }
            }
            rows.push(row);
        }
    }
    BenchReport { rows }
}

impl BenchReport {
    pub fn to_text(&self) -> String {
        let header = ["input", "engine", "threads", "status", "seconds"];
        let cells: Vec<[String; 5]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.input.clone(),
                    r.engine.clone(),
                    r.threads.to_string(),
                    match &r.error {
                        Some(e) => format!("{} ({e})", r.status),
                        None => r.status.clone(),
                    },
                    format!("{:.3}", r.seconds),
                ]
            })
            .collect();
        let mut width = header.map(str::len);
        for row in &cells {
            for (w, c) in width.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let mut s = String::new();
        let line = |s: &mut String, row: &[&str]| {
            let parts: Vec<String> = row
                .iter()
                .zip(&width)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(s, "{}", parts.join("  ").trim_end());
        };
        line(&mut s, &header);
        for row in &cells {
            let r: Vec<&str> = row.iter().map(String::as_str).collect();
            line(&mut s, &r);
        }
        s
    }
}
