//! JSON-lines batch decisions, one record per nonblank input line.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::dominance::{decide_with, DecideOptions, Detail, Method};
use crate::sturm::Annulus;
use crate::parse_poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum BatchRecord {
    Verdict {
        line: usize,
        input: String,
        dominant: bool,
        method: Method,
        witness: Option<Annulus>,
        detail: Detail,
        elapsed_us: u64,
    },
    Failure {
        line: usize,
        input: String,
        error: String,
    },
}

impl BatchRecord {
    pub fn line(&self) -> usize {
        match self {
            BatchRecord::Verdict { line, .. } | BatchRecord::Failure { line, .. } => *line,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// Decides one line; `line` is 1-based and only used for reporting.
/// Returns `None` for blank lines and `#` comments.
pub fn batch_line(line: usize, text: &str, options: &DecideOptions) -> Option<BatchRecord> {
    let input = text.trim();
    if input.is_empty() || input.starts_with('#') {
        return None;
    }
    let failure = |error: String| BatchRecord::Failure {
        line,
        input: input.to_string(),
        error,
    };
    let f = match parse_poly(input) {
        Ok(f) => f,
        Err(e) => return Some(failure(e.to_string())),
    };
    let started = Instant::now();
    let record = match decide_with(&f, options) {
        Ok(v) => BatchRecord::Verdict {
            line,
            input: input.to_string(),
            dominant: v.dominant,
            method: v.method,
            witness: v.witness,
            detail: v.detail,
            elapsed_us: started.elapsed().as_micros() as u64,
        },
        Err(e) => failure(e.to_string()),
    };
    Some(record)
}

/// Decides every line of `text` in parallel, returning records in input order.
pub fn run_batch(text: &str, options: &DecideOptions) -> Vec<BatchRecord> {
    let lines: Vec<&str> = text.lines().collect();
    lines
        .par_iter()
        .enumerate()
        .filter_map(|(i, l)| batch_line(i + 1, l, options))
        .collect()
}
