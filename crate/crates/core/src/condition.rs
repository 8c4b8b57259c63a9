//! Equilibrium conditions: boolean combinations of predicates over the
//! entropy value `H` and its discrete derivative `dH`.
//!
//! Grammar (precedence `not` > `and` > `or`):
//!
//! ```text
//! cond := pred | cond 'and' cond | cond 'or' cond | 'not' cond | '(' cond ')'
//! pred := ('H' | 'dH') op number        op in = != < <= > >=
//! ```
//!
//! Equality and inequality tests are performed within a tolerance carried by
//! the condition itself (`|lhs - c| <= eps`).

use std::fmt;

use thiserror::Error;

use crate::scalar::{real, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    /// Persistent entropy.
    H,
    /// First derivative of the persistent entropy.
    DH,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::H => write!(f, "H"),
            Var::DH => write!(f, "dH"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl fmt::Display for CmpOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CondExpr<F = f64> {
    Pred { var: Var, op: CmpOp, value: F },
    Not(Box<CondExpr<F>>),
    And(Box<CondExpr<F>>, Box<CondExpr<F>>),
    Or(Box<CondExpr<F>>, Box<CondExpr<F>>),
}

impl<F: Real> CondExpr<F> {
    pub fn pred(var: Var, op: CmpOp, value: F) -> Self {
        CondExpr::Pred { var, op, value }
    }

    fn eval(&self, h: F, hdot: F, eps: F) -> bool {
        match self {
            CondExpr::Pred { var, op, value } => {
                let lhs = match var {
                    Var::H => h,
                    Var::DH => hdot,
                };
                match op {
                    CmpOp::Eq => (lhs - *value).abs() <= eps,
                    CmpOp::Ne => (lhs - *value).abs() > eps,
                    CmpOp::Lt => lhs < *value,
                    CmpOp::Le => lhs <= *value,
                    CmpOp::Gt => lhs > *value,
                    CmpOp::Ge => lhs >= *value,
                }
            }
            CondExpr::Not(e) => !e.eval(h, hdot, eps),
            CondExpr::And(a, b) => a.eval(h, hdot, eps) && b.eval(h, hdot, eps),
            CondExpr::Or(a, b) => a.eval(h, hdot, eps) || b.eval(h, hdot, eps),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            CondExpr::Pred { .. } => 3,
            CondExpr::Not(_) => 2,
            CondExpr::And(..) => 1,
            CondExpr::Or(..) => 0,
        }
    }

    fn fmt_with_parens(&self, f: &mut fmt::Formatter<'_>, parent: u8) -> fmt::Result {
        let me = self.precedence();
        if me < parent {
            write!(f, "(")?;
        }
        match self {
            CondExpr::Pred { var, op, value } => {
                write!(f, "{var} {op} {}", value.to_f64().unwrap_or(f64::NAN))?
            }
            CondExpr::Not(e) => {
                write!(f, "not ")?;
                e.fmt_with_parens(f, 2)?;
            }
            CondExpr::And(a, b) => {
                a.fmt_with_parens(f, 1)?;
                write!(f, " and ")?;
                b.fmt_with_parens(f, 2)?;
            }
            CondExpr::Or(a, b) => {
                a.fmt_with_parens(f, 0)?;
                write!(f, " or ")?;
                b.fmt_with_parens(f, 1)?;
            }
        }
        if me < parent {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl<F: Real> fmt::Display for CondExpr<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with_parens(f, 0)
    }
}

/// An equilibrium condition: an expression tree plus the equality tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumCondition<F = f64> {
    expr: CondExpr<F>,
    eps: F,
}

/// Default tolerance for `=` and `!=` tests.
pub fn default_eps_eq<F: Real>() -> F {
    real(1e-6)
}

impl<F: Real> EquilibriumCondition<F> {
    pub fn new(expr: CondExpr<F>, eps: F) -> Self {
        Self { expr, eps }
    }

    /// Parses `text` with the default equality tolerance.
    pub fn parse(text: &str) -> Result<Self, CondParseError> {
        Self::parse_with_eps(text, default_eps_eq())
    }

    pub fn parse_with_eps(text: &str, eps: F) -> Result<Self, CondParseError> {
        let expr = Parser::new(text).parse()?;
        Ok(Self { expr, eps })
    }

    /// Evaluates the condition at `(h, hdot)`; equalities hold within the
    /// condition's tolerance.
    pub fn eval(&self, h: F, hdot: F) -> bool {
        self.expr.eval(h, hdot, self.eps)
    }

    pub fn expr(&self) -> &CondExpr<F> {
        &self.expr
    }

    pub fn eps(&self) -> F {
        self.eps
    }
}

impl<F: Real> fmt::Display for EquilibriumCondition<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expr.fmt(f)
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("syntax error at offset {offset}: {msg}")]
pub struct CondParseError {
    pub offset: usize,
    pub msg: String,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn parse<F: Real>(mut self) -> Result<CondExpr<F>, CondParseError> {
        let expr = self.parse_or()?;
        self.skip_ws();
        if self.pos < self.text.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(expr)
    }

    fn parse_or<F: Real>(&mut self) -> Result<CondExpr<F>, CondParseError> {
        let mut lhs = self.parse_and()?;
        while self.eat_keyword("or") {
            let rhs = self.parse_and()?;
            lhs = CondExpr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_and<F: Real>(&mut self) -> Result<CondExpr<F>, CondParseError> {
        let mut lhs = self.parse_unary()?;
        while self.eat_keyword("and") {
            let rhs = self.parse_unary()?;
            lhs = CondExpr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_unary<F: Real>(&mut self) -> Result<CondExpr<F>, CondParseError> {
        self.skip_ws();
        if self.eat_keyword("not") {
            return Ok(CondExpr::Not(Box::new(self.parse_unary()?)));
        }
        if self.eat_char('(') {
            let inner = self.parse_or()?;
            self.skip_ws();
            if !self.eat_char(')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(inner);
        }
        self.parse_pred()
    }

    fn parse_pred<F: Real>(&mut self) -> Result<CondExpr<F>, CondParseError> {
        self.skip_ws();
        let var = if self.eat_keyword("dH") {
            Var::DH
        } else if self.eat_keyword("H") {
            Var::H
        } else {
            return Err(self.error("expected `H`, `dH`, `not` or `(`"));
        };
        self.skip_ws();
        let op = if self.eat_str("!=") {
            CmpOp::Ne
        } else if self.eat_str("<=") {
            CmpOp::Le
        } else if self.eat_str(">=") {
            CmpOp::Ge
        } else if self.eat_str("<") {
            CmpOp::Lt
        } else if self.eat_str(">") {
            CmpOp::Gt
        } else if self.eat_str("=") {
            CmpOp::Eq
        } else {
            return Err(self.error("expected comparison operator"));
        };
        let value = self.parse_number()?;
        Ok(CondExpr::Pred { var, op, value })
    }

    fn parse_number<F: Real>(&mut self) -> Result<F, CondParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        let mut end = self.pos;
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        while end < bytes.len()
            && (bytes[end].is_ascii_digit()
                || bytes[end] == b'.'
                || bytes[end] == b'e'
                || bytes[end] == b'E'
                || (end > start
                    && (bytes[end - 1] == b'e' || bytes[end - 1] == b'E')
                    && (bytes[end] == b'-' || bytes[end] == b'+')))
        {
            end += 1;
        }
        let slice = &self.text[start..end];
        let parsed: f64 = slice
            .parse()
            .map_err(|_| self.error("expected number"))?;
        self.pos = end;
        F::from(parsed).ok_or_else(|| self.error("number out of range"))
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    /// Consumes `kw` only when it is not a prefix of a longer word.
    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        if !rest.starts_with(kw) {
            return false;
        }
        let after = &rest[kw.len()..];
        if after
            .chars()
            .next()
            .is_some_and(|c| c.is_alphanumeric() || c == '_')
        {
            return false;
        }
        self.pos += kw.len();
        true
    }

    fn eat_str(&mut self, s: &str) -> bool {
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn eat_char(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn error(&self, msg: &str) -> CondParseError {
        CondParseError {
            offset: self.pos,
            msg: msg.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> EquilibriumCondition {
        EquilibriumCondition::parse(s).unwrap()
    }

    #[test]
    fn virgin_and_memory_conditions() {
        let virgin = parse("H = 0 and dH = 0");
        assert!(virgin.eval(0.0, 0.0));
        assert!(!virgin.eval(0.5, 0.0));
        assert!(!virgin.eval(0.0, 0.5));

        let memory = parse("H > 0 and dH = 0");
        assert!(memory.eval(2.87, 0.0));
        assert!(!memory.eval(2.87, 0.4));
        assert!(!memory.eval(0.0, 0.0));
    }

    #[test]
    fn equality_tolerance() {
        let c = EquilibriumCondition::parse_with_eps("dH = 0", 0.9).unwrap();
        assert!(c.eval(0.0, 0.87));
        assert!(!c.eval(0.0, 0.91));
        let tight = parse("dH = 0");
        assert!(!tight.eval(0.0, 0.87));
        assert!(tight.eval(0.0, 5e-7));
    }

    #[test]
    fn precedence_and_parens() {
        // not binds tighter than and, and tighter than or
        let c = parse("not H > 1 and dH < 0 or H = 5");
        // ((not (H>1)) and (dH<0)) or (H=5)
        assert!(c.eval(0.5, -1.0));
        assert!(c.eval(5.0, 3.0));
        assert!(!c.eval(2.0, -1.0));

        let d = parse("not (H > 1 and dH < 0) or H = 5");
        assert!(d.eval(2.0, 1.0));
        assert!(!d.eval(2.0, -1.0));
    }

    #[test]
    fn syntax_error_positions() {
        let err = EquilibriumCondition::<f64>::parse("H >").unwrap_err();
        assert_eq!(err.offset, 3);

        let err = EquilibriumCondition::<f64>::parse("H = 1 and").unwrap_err();
        assert_eq!(err.offset, 9);

        let err = EquilibriumCondition::<f64>::parse("x = 1").unwrap_err();
        assert_eq!(err.offset, 0);

        assert!(EquilibriumCondition::<f64>::parse("H = 1 dH = 0").is_err());
    }

    #[test]
    fn negative_and_scientific_numbers() {
        let c = parse("dH >= -0.5 and dH <= 5e-1");
        assert!(c.eval(0.0, 0.25));
        assert!(c.eval(0.0, -0.5));
        assert!(!c.eval(0.0, 0.51));
    }

    #[test]
    fn display_roundtrip() {
        for s in [
            "H = 0 and dH = 0",
            "H > 0 and dH = 0",
            "not (H > 1 and dH < 0) or H = 5",
            "H >= 2.7265 and H <= 3.0135 and dH >= -0.001 and dH <= 0.001",
        ] {
            let c = parse(s);
            let printed = c.to_string();
            let reparsed = parse(&printed);
            assert_eq!(c.expr(), reparsed.expr(), "roundtrip failed for {s}");
        }
    }
}
