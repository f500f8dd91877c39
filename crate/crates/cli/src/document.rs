//! Machine-readable result documents.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use ncmodgb::arithmetic::{format_rational, parse_rational};
use ncmodgb::field::Rationals;
use ncmodgb::galgebra::GAlgebra;
use ncmodgb::poly::NcPoly;

/// One term of a basis element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coefficient: String,
    pub exponent: Vec<u32>,
}

/// The outcome of one command.
///
/// Wall times are recorded only on request so that documents of repeated
/// runs compare byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    /// SHA-256 of the session text, hex.
    pub input_digest: String,
    pub command: String,
    /// `direct` or `modular`.
    pub engine: String,
    pub ordering: String,
    pub variables: Vec<String>,
    pub side: String,
    pub basis: Vec<Vec<TermRecord>>,
    pub status: String,
    pub primes: Vec<u64>,
    pub seed: Option<u64>,
    /// Factored Bernstein–Sato polynomial, for `bsp`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bernstein_sato: Option<String>,
    /// Seconds per phase.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

pub fn digest(text: &str) -> String {
    let h = Sha256::digest(text.as_bytes());
    h.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub fn records(f: &NcPoly<Rationals>) -> Vec<TermRecord> {
    f.terms()
        .iter()
        .map(|(e, c)| TermRecord {
            coefficient: format_rational(c),
            exponent: e.to_vec(),
        })
        .collect()
}

/// Rebuilds a polynomial of `alg` from its records; `None` on malformed
/// coefficients or exponent lengths.
pub fn from_records(alg: &GAlgebra<Rationals>, terms: &[TermRecord]) -> Option<NcPoly<Rationals>> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exponent.len() != alg.nvars() {
            return None;
        }
        let c = parse_rational(&t.coefficient)?;
        out.push((t.exponent.iter().copied().collect(), c));
    }
    Some(alg.normalize(out))
}

/// Prints the terms in the session syntax.
pub fn format_terms(vars: &[String], terms: &[TermRecord]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        let (neg, abs) = match t.coefficient.strip_prefix('-') {
            Some(a) => (true, a),
            None => (false, t.coefficient.as_str()),
        };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono: Vec<String> = t
            .exponent
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| {
                let v = vars.get(i).map_or("?", String::as_str);
                if x == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{x}")
                }
            })
            .collect();
        if mono.is_empty() {
            out.push_str(abs);
        } else {
            if abs != "1" {
                out.push_str(abs);
                out.push('*');
            }
            out.push_str(&mono.join("*"));
        }
    }
    out
}

impl ResultDocument {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "engine: {}", self.engine);
        let _ = writeln!(s, "ordering: {}", self.ordering);
        let _ = writeln!(s, "variables: {}", self.variables.join(", "));
        let _ = writeln!(s, "status: {}", self.status);
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "seed: {seed}");
            let _ = writeln!(s, "primes: {}", self.primes.len());
        }
        if let Some(b) = &self.bernstein_sato {
            let _ = writeln!(s, "b(s) = {b}");
        }
        let _ = writeln!(
            s,
            "basis ({} elements, {} side):",
            self.basis.len(),
            self.side
        );
        for g in &self.basis {
            let _ = writeln!(s, "  {}", format_terms(&self.variables, g));
        }
        if let Some(t) = &self.timings {
            for (phase, secs) in t {
                let _ = writeln!(s, "time {phase}: {secs:.3}s");
            }
        }
        s
    }
}
