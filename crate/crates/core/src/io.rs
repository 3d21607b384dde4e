//! Line-oriented text format for instances.
//!
//! ```text
//! # comment
//! points: 1 2 3 4
//! normalized: true
//! interval: 1 2
//! interval: 3 4 7
//! ```
//!
//! Interval ids default to the order of the `interval:` lines; an optional
//! third token overrides it. The `normalized:` line is optional and
//! defaults to `false`.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{CoverError, Result};
use crate::model::{Instance, Interval};

fn parse_err(line: usize, reason: impl Into<String>) -> CoverError {
    CoverError::Parse {
        line,
        reason: reason.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(at) => &line[..at],
        None => line,
    }
    .trim()
}

fn parse_int<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut points: Option<Vec<i64>> = None;
    let mut normalized = false;
    let mut intervals: Vec<Interval> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| parse_err(lineno, format!("expected `key: values`, got `{line}`")))?;
        match key.trim() {
            "points" => {
                if points.is_some() {
                    return Err(parse_err(lineno, "duplicate `points:` line"));
                }
                if !intervals.is_empty() {
                    return Err(parse_err(lineno, "`points:` must precede intervals"));
                }
                let pts = rest
                    .split_whitespace()
                    .map(|t| parse_int(t, lineno, "point"))
                    .collect::<Result<Vec<i64>>>()?;
                points = Some(pts);
            }
            "normalized" => {
                normalized = match rest.trim() {
                    "true" => true,
                    "false" => false,
                    other => return Err(parse_err(lineno, format!("invalid flag `{other}`"))),
                };
            }
            "interval" => {
                if points.is_none() {
                    return Err(parse_err(lineno, "`interval:` before `points:`"));
                }
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 2 && toks.len() != 3 {
                    return Err(parse_err(lineno, "expected `interval: lo hi [id]`"));
                }
                let lo: i64 = parse_int(toks[0], lineno, "lo")?;
                let hi: i64 = parse_int(toks[1], lineno, "hi")?;
                let id = match toks.get(2) {
                    Some(t) => parse_int(t, lineno, "id")?,
                    None => intervals.len(),
                };
                if lo > hi {
                    return Err(parse_err(lineno, format!("hi {hi} < lo {lo}")));
                }
                if intervals.iter().any(|iv| iv.id == id) {
                    return Err(parse_err(lineno, format!("duplicate interval id {id}")));
                }
                intervals.push(Interval { id, lo, hi });
            }
            other => return Err(parse_err(lineno, format!("unknown key `{other}`"))),
        }
    }

    let points = points.ok_or_else(|| parse_err(1, "missing `points:` line"))?;
    let raw = Instance::from_raw(points, intervals)?;
    if normalized {
        let norm = raw.normalized();
        if norm.num_intervals() != raw.num_intervals() {
            return Err(parse_err(
                1,
                "declared normalized but an interval contains another",
            ));
        }
        return Ok(norm);
    }
    Ok(raw)
}

pub fn format_instance(instance: &Instance) -> String {
    let mut out = String::from("points:");
    for p in instance.points() {
        write!(out, " {p}").unwrap();
    }
    out.push('\n');
    if instance.is_normalized() {
        out.push_str("normalized: true\n");
    }
    let sequential = instance
        .intervals()
        .iter()
        .enumerate()
        .all(|(i, iv)| iv.id == i);
    for iv in instance.intervals() {
        if sequential {
            writeln!(out, "interval: {} {}", iv.lo, iv.hi).unwrap();
        } else {
            writeln!(out, "interval: {} {} {}", iv.lo, iv.hi, iv.id).unwrap();
        }
    }
    out
}

pub fn read_instance<R: BufRead>(mut reader: R) -> Result<Instance> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    parse_instance(&text)
}

pub fn write_instance<W: Write>(instance: &Instance, mut writer: W) -> Result<()> {
    writer.write_all(format_instance(instance).as_bytes())?;
    Ok(())
}

pub fn save(path: impl AsRef<Path>, instance: &Instance) -> Result<()> {
    std::fs::write(path, format_instance(instance))?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<Instance> {
    parse_instance(&std::fs::read_to_string(path)?)
}
