//! Bounded linear temporal logic over finite monitor traces, with
//! three-valued verdicts.
//!
//! Grammar (precedence `!`/`X`/`G`/`F` > `&` > `|` > `->`, implication
//! right-associative):
//!
//! ```text
//! f := atom | 'true' | 'false' | '!' f | f '&' f | f '|' f | f '->' f
//!    | 'X' f | 'G<=' k f | 'F<=' k f | '(' f ')'
//! ```
//!
//! Atoms are proposition names; the reserved atom `w` holds exactly on
//! mid-transition positions. Verdicts are three-valued: a bounded operator
//! whose window extends past the end of the trace answers `Unknown` unless
//! the visible prefix already decides it, and `X` at the last position is
//! `Unknown`. Boolean connectives follow strong Kleene logic.

use std::fmt;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::graph::FormatError;
use crate::monitor::MpeaTrace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Atom(String),
    True,
    False,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Always { bound: usize, inner: Box<Formula> },
    Eventually { bound: usize, inner: Box<Formula> },
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(name.to_string())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(fm: &Formula, f: &mut fmt::Formatter<'_>, parent: u8) -> fmt::Result {
            let prec = match fm {
                Formula::Atom(_) | Formula::True | Formula::False => 4,
                Formula::Not(_)
                | Formula::Next(_)
                | Formula::Always { .. }
                | Formula::Eventually { .. } => 3,
                Formula::And(..) => 2,
                Formula::Or(..) => 1,
                Formula::Implies(..) => 0,
            };
            if prec < parent {
                write!(f, "(")?;
            }
            match fm {
                Formula::Atom(a) => write!(f, "{a}")?,
                Formula::True => write!(f, "true")?,
                Formula::False => write!(f, "false")?,
                Formula::Not(x) => {
                    write!(f, "!")?;
                    go(x, f, 3)?;
                }
                Formula::Next(x) => {
                    write!(f, "X ")?;
                    go(x, f, 3)?;
                }
                Formula::Always { bound, inner } => {
                    write!(f, "G<={bound} ")?;
                    go(inner, f, 3)?;
                }
                Formula::Eventually { bound, inner } => {
                    write!(f, "F<={bound} ")?;
                    go(inner, f, 3)?;
                }
                Formula::And(a, b) => {
                    go(a, f, 2)?;
                    write!(f, " & ")?;
                    go(b, f, 3)?;
                }
                Formula::Or(a, b) => {
                    go(a, f, 1)?;
                    write!(f, " | ")?;
                    go(b, f, 2)?;
                }
                Formula::Implies(a, b) => {
                    go(a, f, 1)?;
                    write!(f, " -> ")?;
                    go(b, f, 0)?;
                }
            }
            if prec < parent {
                write!(f, ")")?;
            }
            Ok(())
        }
        go(self, f, 0)
    }
}

/// Outcome of evaluating a formula on a truncated trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl Verdict {
    pub fn not(self) -> Verdict {
        match self {
            Verdict::True => Verdict::False,
            Verdict::False => Verdict::True,
            Verdict::Unknown => Verdict::Unknown,
        }
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::True, Verdict::True) => Verdict::True,
            _ => Verdict::Unknown,
        }
    }

    pub fn or(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::True, _) | (_, Verdict::True) => Verdict::True,
            (Verdict::False, Verdict::False) => Verdict::False,
            _ => Verdict::Unknown,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::True => "TRUE",
            Verdict::False => "FALSE",
            Verdict::Unknown => "UNKNOWN",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Evaluates `f` on `trace` at position `i` (`0 <= i < trace.len()`).
pub fn evaluate(f: &Formula, trace: &MpeaTrace, i: usize) -> Verdict {
    let n = trace.len();
    assert!(i < n, "position {i} out of trace of length {n}");
    match f {
        Formula::Atom(a) => {
            if trace.steps[i].satisfies(a) {
                Verdict::True
            } else {
                Verdict::False
            }
        }
        Formula::True => Verdict::True,
        Formula::False => Verdict::False,
        Formula::Not(x) => evaluate(x, trace, i).not(),
        Formula::And(a, b) => evaluate(a, trace, i).and(evaluate(b, trace, i)),
        Formula::Or(a, b) => evaluate(a, trace, i).or(evaluate(b, trace, i)),
        Formula::Implies(a, b) => evaluate(a, trace, i).not().or(evaluate(b, trace, i)),
        Formula::Next(x) => {
            if i + 1 < n {
                evaluate(x, trace, i + 1)
            } else {
                Verdict::Unknown
            }
        }
        Formula::Always { bound, inner } => {
            let visible_end = (i + bound).min(n - 1);
            let mut all_true = true;
            for j in i..=visible_end {
                match evaluate(inner, trace, j) {
                    Verdict::False => return Verdict::False,
                    Verdict::True => {}
                    Verdict::Unknown => all_true = false,
                }
            }
            if all_true && i + bound <= n - 1 {
                Verdict::True
            } else {
                Verdict::Unknown
            }
        }
        Formula::Eventually { bound, inner } => {
            let visible_end = (i + bound).min(n - 1);
            let mut all_false = true;
            for j in i..=visible_end {
                match evaluate(inner, trace, j) {
                    Verdict::True => return Verdict::True,
                    Verdict::False => {}
                    Verdict::Unknown => all_false = false,
                }
            }
            if all_false && i + bound <= n - 1 {
                Verdict::False
            } else {
                Verdict::Unknown
            }
        }
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("syntax error at offset {offset}: {msg}")]
pub struct LtlParseError {
    pub offset: usize,
    pub msg: String,
}

pub fn parse_ltl(text: &str) -> Result<Formula, LtlParseError> {
    let mut p = LtlParser { text, pos: 0 };
    let f = p.parse_implies()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct LtlParser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> LtlParser<'a> {
    fn parse_implies(&mut self) -> Result<Formula, LtlParseError> {
        let lhs = self.parse_or()?;
        self.skip_ws();
        if self.eat("->") {
            let rhs = self.parse_implies()?;
            return Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn parse_or(&mut self) -> Result<Formula, LtlParseError> {
        let mut lhs = self.parse_and()?;
        loop {
            self.skip_ws();
            if self.eat("|") {
                let rhs = self.parse_and()?;
                lhs = Formula::Or(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn parse_and(&mut self) -> Result<Formula, LtlParseError> {
        let mut lhs = self.parse_unary()?;
        loop {
            self.skip_ws();
            if self.eat("&") {
                let rhs = self.parse_unary()?;
                lhs = Formula::And(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Formula, LtlParseError> {
        self.skip_ws();
        if self.eat("!") {
            return Ok(Formula::Not(Box::new(self.parse_unary()?)));
        }
        if self.eat_word("X") {
            return Ok(Formula::Next(Box::new(self.parse_unary()?)));
        }
        if self.eat_word("G") {
            let bound = self.parse_bound()?;
            return Ok(Formula::Always {
                bound,
                inner: Box::new(self.parse_unary()?),
            });
        }
        if self.eat_word("F") {
            let bound = self.parse_bound()?;
            return Ok(Formula::Eventually {
                bound,
                inner: Box::new(self.parse_unary()?),
            });
        }
        if self.eat("(") {
            let inner = self.parse_implies()?;
            self.skip_ws();
            if !self.eat(")") {
                return Err(self.error("expected `)`"));
            }
            return Ok(inner);
        }
        self.parse_atom()
    }

    fn parse_bound(&mut self) -> Result<usize, LtlParseError> {
        self.skip_ws();
        if !self.eat("<=") {
            return Err(self.error("expected `<=` after bounded operator"));
        }
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == start {
            return Err(self.error("expected bound"));
        }
        let bound: usize = self.text[start..end]
            .parse()
            .map_err(|_| self.error("bound out of range"))?;
        self.pos = end;
        Ok(bound)
    }

    fn parse_atom(&mut self) -> Result<Formula, LtlParseError> {
        self.skip_ws();
        let bytes = self.text.as_bytes();
        let start = self.pos;
        let mut end = start;
        while end < bytes.len()
            && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_')
        {
            end += 1;
        }
        if end == start {
            return Err(self.error("expected atom, `true`, `false`, `!`, `X`, `G`, `F` or `(`"));
        }
        let word = &self.text[start..end];
        self.pos = end;
        match word {
            "true" => Ok(Formula::True),
            "false" => Ok(Formula::False),
            "X" | "G" | "F" => Err(LtlParseError {
                offset: start,
                msg: format!("`{word}` is an operator, not an atom"),
            }),
            _ => Ok(Formula::Atom(word.to_string())),
        }
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    /// Consumes a single-letter operator only when it is a whole word.
    fn eat_word(&mut self, w: &str) -> bool {
        let rest = &self.text[self.pos..];
        if !rest.starts_with(w) {
            return false;
        }
        let after = &rest[w.len()..];
        if after
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return false;
        }
        self.pos += w.len();
        true
    }

    fn error(&self, msg: &str) -> LtlParseError {
        LtlParseError {
            offset: self.pos,
            msg: msg.to_string(),
        }
    }
}

/// Reads one formula per non-empty, non-comment line.
pub fn read_properties(reader: impl BufRead) -> Result<Vec<(String, Formula)>, FormatError> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f = parse_ltl(line)
            .map_err(|e| FormatError::at(lineno, e.to_string()))?;
        out.push((line.to_string(), f));
    }
    Ok(out)
}

/// Writes a verdict report as CSV `trace_id,property_id,verdict`.
pub fn write_verdicts(
    mut w: impl Write,
    rows: &[(String, String, Verdict)],
) -> io::Result<()> {
    writeln!(w, "trace_id,property_id,verdict")?;
    for (trace_id, property_id, verdict) in rows {
        writeln!(w, "{trace_id},{property_id},{verdict}")?;
    }
    Ok(())
}
