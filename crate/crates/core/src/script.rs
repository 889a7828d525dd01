//! Operation-script format for replay tests against a `DynamicSequence`.
//!
//! One op per line:
//!
//! ```text
//! I x y w      insert; the point gets handle number 0, 1, ... in order
//! D k          delete the point created by the k-th insert
//! U k w        set the weight of the k-th inserted point
//! QG           global query
//! QR xlo xhi   range query
//! QS xlo xhi   range query through the sentinel route
//! ```
//!
//! A query line may end with `-> value` (or `→ value`) to pin the expected
//! answer.

use crate::dynseq::{DynamicSequence, Handle};
use crate::error::{Error, Result};
use crate::model::WeightedPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Insert { x: i64, y: i64, w: i64 },
    Delete { insert_ord: usize },
    UpdateWeight { insert_ord: usize, w: i64 },
    QueryGlobal { expected: Option<i64> },
    QueryRange { xlo: i64, xhi: i64, expected: Option<i64> },
    QuerySentinels { xlo: i64, xhi: i64, expected: Option<i64> },
}

pub fn parse_script(text: &str) -> Result<Vec<Op>> {
    let mut ops = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = idx + 1;
        let err = |msg: String| Error::Parse { line: lineno, msg };
        let (body, expected) = match line.split_once("->").or_else(|| line.split_once('→')) {
            Some((body, rest)) => {
                let value = rest
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| err(format!("bad expected value `{}`", rest.trim())))?;
                (body.trim(), Some(value))
            }
            None => (line, None),
        };
        let mut tokens = body.split_whitespace();
        let tag = tokens.next().ok_or_else(|| err("empty op".into()))?;
        let mut next_int = |what: &str| -> Result<i64> {
            tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: format!("expected {what}"),
                })
        };
        let op = match tag {
            "I" => Op::Insert {
                x: next_int("x")?,
                y: next_int("y")?,
                w: next_int("w")?,
            },
            "D" => Op::Delete { insert_ord: next_int("handle")? as usize },
            "U" => Op::UpdateWeight {
                insert_ord: next_int("handle")? as usize,
                w: next_int("w")?,
            },
            "QG" => Op::QueryGlobal { expected },
            "QR" => Op::QueryRange {
                xlo: next_int("xlo")?,
                xhi: next_int("xhi")?,
                expected,
            },
            "QS" => Op::QuerySentinels {
                xlo: next_int("xlo")?,
                xhi: next_int("xhi")?,
                expected,
            },
            other => return Err(err(format!("unknown op `{other}`"))),
        };
        if expected.is_some() && !matches!(op, Op::QueryGlobal { .. } | Op::QueryRange { .. } | Op::QuerySentinels { .. }) {
            return Err(err("expected value on a non-query op".into()));
        }
        ops.push(op);
    }
    Ok(ops)
}

/// Result of replaying a script: every query answer in order, plus the index
/// of the first query whose pinned expectation failed, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replay {
    pub answers: Vec<i64>,
    pub first_mismatch: Option<usize>,
}

pub fn replay(ops: &[Op], seq: &mut DynamicSequence) -> Result<Replay> {
    let mut handles: Vec<Option<Handle>> = Vec::new();
    let mut answers = Vec::new();
    let mut first_mismatch = None;
    let live = |handles: &[Option<Handle>], ord: usize| -> Result<Handle> {
        handles
            .get(ord)
            .copied()
            .flatten()
            .ok_or(Error::StaleHandle(ord as u64))
    };
    for &op in ops {
        let mut answer = None;
        match op {
            Op::Insert { x, y, w } => {
                handles.push(Some(seq.insert(WeightedPoint::new(x, y, w))?));
            }
            Op::Delete { insert_ord } => {
                seq.delete(live(&handles, insert_ord)?)?;
                handles[insert_ord] = None;
            }
            Op::UpdateWeight { insert_ord, w } => {
                seq.update_weight(live(&handles, insert_ord)?, w)?;
            }
            Op::QueryGlobal { expected } => {
                answer = Some((seq.query_global(), expected));
            }
            Op::QueryRange { xlo, xhi, expected } => {
                answer = Some((seq.query_range(xlo, xhi)?, expected));
            }
            Op::QuerySentinels { xlo, xhi, expected } => {
                answer = Some((seq.query_range_via_sentinels(xlo, xhi)?, expected));
            }
        }
        if let Some((value, expected)) = answer {
            if first_mismatch.is_none() && expected.is_some_and(|e| e != value) {
                first_mismatch = Some(answers.len());
            }
            answers.push(value);
        }
    }
    Ok(Replay { answers, first_mismatch })
}
