//! Line-oriented trace files.
//!
//! Parsing is strict (single spaces, canonical integers and reduced
//! fractions, LF after every line) so that serializing a parsed trace gives
//! back the same bytes.

use crate::promisekernels::Point;
use num_rational::Ratio;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Event {
    Insert(u32, u32),
    Delete(u32, u32),
    SetInsert(Vec<u32>),
    SetDelete(Vec<u32>),
    PointInsert(Point),
    PointDelete(Point),
    Query(usize),
    /// Text after the '#'.
    Comment(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TraceFile {
    /// None only for the empty trace.
    pub n: Option<usize>,
    pub events: Vec<Event>,
}

fn int<T: std::str::FromStr>(tok: &str) -> Result<T, String> {
    let digits = tok.strip_prefix('-').unwrap_or(tok);
    let canonical = !digits.is_empty()
        && digits.bytes().all(|b| b.is_ascii_digit())
        && (digits == "0" || !digits.starts_with('0'))
        && tok != "-0";
    if !canonical {
        return Err(format!("bad integer {tok:?}"));
    }
    tok.parse().map_err(|_| format!("integer out of range {tok:?}"))
}

fn rational(tok: &str) -> Result<Ratio<i64>, String> {
    let (p, q) = tok.split_once('/').ok_or_else(|| format!("expected p/q, got {tok:?}"))?;
    let (p, q): (i64, i64) = (int(p)?, int(q)?);
    if q <= 0 {
        return Err(format!("denominator must be positive in {tok:?}"));
    }
    let r = Ratio::new(p, q);
    if *r.numer() != p || *r.denom() != q {
        return Err(format!("fraction {tok:?} not in lowest terms"));
    }
    Ok(r)
}

fn vertex(tok: &str, n: usize) -> Result<u32, String> {
    let v: u32 = int(tok)?;
    if v as usize >= n {
        return Err(format!("id {v} out of range for n = {n}"));
    }
    Ok(v)
}

fn parse_event(line: &str, n: usize) -> Result<Event, String> {
    if let Some(rest) = line.strip_prefix('#') {
        return Ok(Event::Comment(rest.to_string()));
    }
    let toks: Vec<&str> = line.split(' ').collect();
    if toks.iter().any(|t| t.is_empty()) {
        return Err("fields must be separated by single spaces".into());
    }
    let args = &toks[1..];
    let want = |c: usize| if args.len() == c { Ok(()) } else { Err(format!("{} expects {c} fields", toks[0])) };
    Ok(match toks[0] {
        "+" | "-" => {
            want(2)?;
            let (u, v) = (vertex(args[0], n)?, vertex(args[1], n)?);
            if toks[0] == "+" {
                Event::Insert(u, v)
            } else {
                Event::Delete(u, v)
            }
        }
        "S+" | "S-" => {
            if args.is_empty() {
                return Err("empty set".into());
            }
            let s = args.iter().map(|t| vertex(t, n)).collect::<Result<Vec<u32>, String>>()?;
            if toks[0] == "S+" {
                Event::SetInsert(s)
            } else {
                Event::SetDelete(s)
            }
        }
        "P+" | "P-" => {
            want(2)?;
            let p = Point::new(rational(args[0])?, rational(args[1])?);
            if toks[0] == "P+" {
                Event::PointInsert(p)
            } else {
                Event::PointDelete(p)
            }
        }
        "?" => {
            want(1)?;
            Event::Query(int(args[0])?)
        }
        "n" => return Err("header repeated".into()),
        other => return Err(format!("unknown event {other:?}")),
    })
}

impl TraceFile {
    pub fn new(n: usize) -> Self {
        TraceFile { n: Some(n), events: Vec::new() }
    }

    pub fn parse(text: &str) -> Result<TraceFile, ParseError> {
        if text.is_empty() {
            return Ok(TraceFile::default());
        }
        let body = text.strip_suffix('\n').ok_or_else(|| ParseError {
            line: text.lines().count(),
            msg: "last line lacks a newline".into(),
        })?;
        let mut lines = body.split('\n');
        let header = lines.next().unwrap_or_default();
        let n = header
            .strip_prefix("n ")
            .ok_or_else(|| "trace must start with \"n <count>\"".to_string())
            .and_then(int::<usize>)
            .map_err(|msg| ParseError { line: 1, msg })?;
        let events = lines
            .enumerate()
            .map(|(i, l)| parse_event(l, n).map_err(|msg| ParseError { line: i + 2, msg }))
            .collect::<Result<Vec<Event>, ParseError>>()?;
        Ok(TraceFile { n: Some(n), events })
    }

    pub fn serialize(&self) -> String {
        let Some(n) = self.n else {
            return String::new();
        };
        let mut out = format!("n {n}\n");
        for e in &self.events {
            match e {
                Event::Insert(u, v) => writeln!(out, "+ {u} {v}"),
                Event::Delete(u, v) => writeln!(out, "- {u} {v}"),
                Event::SetInsert(s) | Event::SetDelete(s) => {
                    out.push_str(if matches!(e, Event::SetInsert(_)) { "S+" } else { "S-" });
                    for x in s {
                        write!(out, " {x}").expect("write to string");
                    }
                    writeln!(out)
                }
                Event::PointInsert(p) => writeln!(out, "P+ {p}"),
                Event::PointDelete(p) => writeln!(out, "P- {p}"),
                Event::Query(k) => writeln!(out, "? {k}"),
                Event::Comment(c) => writeln!(out, "#{c}"),
            }
            .expect("write to string");
        }
        out
    }

    /// Distinct parameters queried, ascending.
    pub fn query_ks(&self) -> Vec<usize> {
        let mut ks: Vec<usize> = self.events.iter().filter_map(|e| if let Event::Query(k) = e { Some(*k) } else { None }).collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }
}
