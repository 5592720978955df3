//! Line-oriented text format for automata.
//!
//! ```text
//! alphabet abc
//! states 3
//! initial 1
//! final 2 3
//! edge 1 2 ab
//! edge 2 2 b
//! ```
//!
//! `#` starts a comment only at the beginning of a line. The empty label is
//! written `""`. The `alphabet` line is optional; without it the alphabet is
//! the set of characters used by the edges, in byte order.

use std::fmt;
use std::str::FromStr;

use super::alphabet::{Alphabet, Label};
use super::gnfa::{Edge, Gnfa};
use crate::error::{Error, Result};

impl FromStr for Gnfa {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut alphabet: Option<Vec<u8>> = None;
        let mut states: Option<usize> = None;
        let mut initial: Option<(usize, usize)> = None;
        let mut finals: Vec<(usize, usize)> = Vec::new();
        let mut edges: Vec<(usize, usize, usize, Label)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            if raw.starts_with('#') {
                continue;
            }
            let mut tokens = raw.split_whitespace();
            let Some(keyword) = tokens.next() else { continue };
            let rest: Vec<&str> = tokens.collect();
            let number = |tok: &str| -> Result<usize> {
                tok.parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("expected a state number, got {tok:?}")))
            };
            match keyword {
                "alphabet" => {
                    if alphabet.is_some() {
                        return Err(Error::parse(line_no, "alphabet declared twice"));
                    }
                    alphabet = Some(rest.concat().into_bytes());
                }
                "states" => {
                    let [n] = rest[..] else {
                        return Err(Error::parse(line_no, "expected `states <n>`"));
                    };
                    states = Some(number(n)?);
                }
                "initial" => {
                    let [s] = rest[..] else {
                        return Err(Error::parse(line_no, "expected `initial <state>`"));
                    };
                    initial = Some((line_no, number(s)?));
                }
                "final" => {
                    for tok in rest {
                        finals.push((line_no, number(tok)?));
                    }
                }
                "edge" => {
                    let [src, dst, label] = rest[..] else {
                        return Err(Error::parse(line_no, "expected `edge <src> <dst> <label>`"));
                    };
                    let label = if label == "\"\"" { Label::epsilon() } else { Label::from(label) };
                    edges.push((line_no, number(src)?, number(dst)?, label));
                }
                other => return Err(Error::parse(line_no, format!("unknown keyword {other:?}"))),
            }
        }

        let n = states.ok_or_else(|| Error::parse(0, "missing `states` line"))?;
        let (init_line, init) = initial.ok_or_else(|| Error::parse(0, "missing `initial` line"))?;
        let alphabet = match alphabet {
            Some(chars) => Alphabet::new(&chars).map_err(|e| Error::parse(0, e.to_string()))?,
            None => Alphabet::from_chars_sorted(
                edges.iter().flat_map(|(_, _, _, l)| l.as_bytes().iter().copied()),
            )
            .map_err(|e| Error::parse(0, e.to_string()))?,
        };
        let to_id = |line: usize, s: usize| -> Result<usize> {
            if (1..=n).contains(&s) {
                Ok(s - 1)
            } else {
                Err(Error::parse(line, format!("state {s} outside 1..{n}")))
            }
        };
        let initial = to_id(init_line, init)?;
        let finals = finals.into_iter().map(|(l, f)| to_id(l, f)).collect::<Result<Vec<_>>>()?;
        let mut seen = std::collections::HashSet::new();
        let mut built = Vec::with_capacity(edges.len());
        for (line, src, dst, label) in edges {
            let edge = Edge { src: to_id(line, src)?, dst: to_id(line, dst)?, label };
            alphabet
                .check(edge.label.as_bytes())
                .map_err(|e| Error::parse(line, e.to_string()))?;
            if !seen.insert(edge.clone()) {
                return Err(Error::parse(line, "duplicate edge"));
            }
            built.push(edge);
        }
        Gnfa::new(alphabet, n, initial, finals, built)
    }
}

/// Canonical serialization: edges sorted by source, target, then co-lex label.
impl fmt::Display for Gnfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = self.alphabet();
        writeln!(f, "alphabet {}", String::from_utf8_lossy(alphabet.chars()))?;
        writeln!(f, "states {}", self.num_states())?;
        writeln!(f, "initial {}", self.initial() + 1)?;
        write!(f, "final")?;
        for u in self.finals() {
            write!(f, " {}", u + 1)?;
        }
        writeln!(f)?;
        let mut edges: Vec<&Edge> = self.edges().iter().collect();
        edges.sort_by(|a, b| {
            (a.src, a.dst)
                .cmp(&(b.src, b.dst))
                .then_with(|| alphabet.colex_cmp(a.label.as_bytes(), b.label.as_bytes()))
        });
        for e in edges {
            writeln!(f, "edge {} {} {}", e.src + 1, e.dst + 1, e.label)?;
        }
        Ok(())
    }
}

/// User-facing state name: `u` followed by the 1-based id.
pub fn state_name(u: usize) -> String {
    format!("u{}", u + 1)
}

/// Parses `u3` or `3` into the 0-based id 2.
pub fn parse_state_name(token: &str, n: usize) -> Result<usize> {
    let digits = token.strip_prefix('u').unwrap_or(token);
    match digits.parse::<usize>() {
        Ok(id) if (1..=n).contains(&id) => Ok(id - 1),
        _ => Err(Error::parse(0, format!("bad state name {token:?}"))),
    }
}
