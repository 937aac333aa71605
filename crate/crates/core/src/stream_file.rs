//! Line-oriented stream files.
//!
//! ```text
//! # comment
//! n k
//! u v +1
//! u v -1
//! ```
//!
//! The first non-comment line declares the vertex count and target connectivity;
//! every later line is one update. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Delta, UpdateEvent};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamFile {
    pub n: usize,
    pub k: usize,
    pub events: Vec<UpdateEvent>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

impl StreamFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut header = None;
        let mut events = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            match header {
                None => {
                    let [n, k] = fields[..] else {
                        return Err(parse_err(line, "header must be `n k`"));
                    };
                    let n: usize = n.parse().map_err(|_| parse_err(line, format!("bad vertex count `{n}`")))?;
                    let k: usize = k.parse().map_err(|_| parse_err(line, format!("bad connectivity `{k}`")))?;
                    header = Some((n, k));
                }
                Some((n, _)) => {
                    let [u, v, d] = fields[..] else {
                        return Err(parse_err(line, "update must be `u v d`"));
                    };
                    let u: usize = u.parse().map_err(|_| parse_err(line, format!("bad vertex `{u}`")))?;
                    let v: usize = v.parse().map_err(|_| parse_err(line, format!("bad vertex `{v}`")))?;
                    let delta = match d {
                        "+1" | "1" => Delta::Insert,
                        "-1" => Delta::Delete,
                        _ => return Err(parse_err(line, format!("delta must be +1 or -1, got `{d}`"))),
                    };
                    let e = UpdateEvent::new(u, v, delta).map_err(|e| parse_err(line, e.to_string()))?;
                    e.check(n).map_err(|e| parse_err(line, e.to_string()))?;
                    events.push(e);
                }
            }
        }
        let (n, k) = header.ok_or_else(|| parse_err(0, "missing `n k` header"))?;
        Ok(Self { n, k, events })
    }

    pub fn render(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.k);
        for e in &self.events {
            let d = match e.delta {
                Delta::Insert => "+1",
                Delta::Delete => "-1",
            };
            writeln!(out, "{} {} {}", e.i, e.j, d).expect("writing to a String");
        }
        out
    }
}
