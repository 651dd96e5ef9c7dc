//! Text formats: cycle notation for schemes and bracket notation for two-row IETs.
//!
//! A scheme is written as juxtaposed cycles, `(a.b b.b a.e b.e)` or
//! `(a.b)(a.e)`; the alphabet is inferred from the tokens. A two-row IET is
//! written as brackets `[a b / g d e]`, upper row first.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{IreError, Result};
use crate::scheme::{make_alphabet, Ext, Marker, Scheme};
use crate::two_row::TwoRowIet;

fn perr(position: usize, message: impl Into<String>) -> IreError {
    IreError::Parse {
        position,
        message: message.into(),
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Option<(usize, &'a str)> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '.' {
                self.pos += 1;
            } else {
                break;
            }
        }
        (self.pos > start).then(|| (start, &self.src[start..self.pos]))
    }
}

/// Parses cycle notation.
pub fn parse_scheme(input: &str) -> Result<Scheme> {
    let mut lx = Lexer::new(input);
    let mut cycles: Vec<Vec<(usize, String, Marker)>> = Vec::new();
    lx.skip_ws();
    if lx.peek().is_none() {
        return Err(perr(0, "empty scheme"));
    }
    while lx.peek().is_some() {
        let open = lx.pos;
        if !lx.eat('(') {
            return Err(perr(lx.pos, "expected '('"));
        }
        let mut cyc = Vec::new();
        loop {
            lx.skip_ws();
            if lx.eat(')') {
                break;
            }
            let Some((at, w)) = lx.word() else {
                return match lx.peek() {
                    None => Err(perr(lx.pos, "unterminated cycle")),
                    Some(c) => Err(perr(lx.pos, format!("unexpected character {c:?}"))),
                };
            };
            let (name, m) = w
                .rsplit_once('.')
                .ok_or_else(|| perr(at, format!("token {w:?} lacks a .b/.e marker")))?;
            let marker = match m {
                "b" => Marker::B,
                "e" => Marker::E,
                _ => return Err(perr(at, format!("unknown marker {m:?} in {w:?}"))),
            };
            if name.is_empty() || name.contains('.') {
                return Err(perr(at, format!("invalid label in {w:?}")));
            }
            cyc.push((at, name.to_string(), marker));
        }
        if cyc.is_empty() {
            return Err(perr(open, "empty cycle"));
        }
        cycles.push(cyc);
        lx.skip_ws();
    }

    let names: BTreeSet<&str> = cycles
        .iter()
        .flatten()
        .map(|(_, n, _)| n.as_str())
        .collect();
    let names: Vec<&str> = names.into_iter().collect();
    let alphabet = make_alphabet(&names)?;
    let mut seen: BTreeMap<Ext, usize> = BTreeMap::new();
    let mut ext_cycles = Vec::with_capacity(cycles.len());
    for cyc in &cycles {
        let mut out = Vec::with_capacity(cyc.len());
        for (at, name, marker) in cyc {
            let letter = names.binary_search(&name.as_str()).expect("collected");
            let e = Ext::new(letter, *marker);
            if seen.insert(e, *at).is_some() {
                return Err(perr(
                    *at,
                    format!("duplicate element {name}.{}", marker.as_char()),
                ));
            }
            out.push(e);
        }
        ext_cycles.push(out);
    }
    Scheme::from_cycles(alphabet, &ext_cycles)
}

/// Canonical cycle notation; identical to `Display`.
pub fn format_scheme(s: &Scheme) -> String {
    s.to_string()
}

/// Parses bracket notation such as `[a b / g d e] [c / c]`.
pub fn parse_two_row(input: &str) -> Result<TwoRowIet> {
    let mut lx = Lexer::new(input);
    let mut brackets = Vec::new();
    lx.skip_ws();
    while lx.peek().is_some() {
        if !lx.eat('[') {
            return Err(perr(lx.pos, "expected '['"));
        }
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        let mut in_lower = false;
        loop {
            lx.skip_ws();
            if lx.eat(']') {
                break;
            }
            if lx.eat('/') {
                if in_lower {
                    return Err(perr(lx.pos - 1, "second '/' in bracket"));
                }
                in_lower = true;
                continue;
            }
            let Some((at, w)) = lx.word() else {
                return Err(perr(lx.pos, "unterminated bracket or unexpected character"));
            };
            if w.contains('.') {
                return Err(perr(at, format!("two-row labels carry no marker: {w:?}")));
            }
            if in_lower {
                lower.push(w.to_string());
            } else {
                upper.push(w.to_string());
            }
        }
        if !in_lower {
            return Err(perr(lx.pos, "bracket lacks '/' separator"));
        }
        brackets.push((upper, lower));
        lx.skip_ws();
    }
    TwoRowIet::new(brackets)
}

pub fn format_two_row(t: &TwoRowIet) -> String {
    t.to_string()
}
