//! Group-ring style exponents: `u^{2a-1}`, `u^{(g+h)(-k)}`, ...
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor {factor}
//! factor := label ['^' k] | integer | '(' expr ')' ['^' k]
//! ```
//!
//! Semantics are left-to-right and non-distributive:
//! `u^{e1+e2} = u^{e1} u^{e2}`, `u^{-e} = (u^e)^-1`, `u^{e1 e2} = (u^{e1})^{e2}`,
//! `u^g = g^-1 u g` and `u^n` is the ordinary power. An integer may only
//! lead a monomial, so `2a` means `(u^2)^a`. A postfix `^k` (`k >= 1`) is
//! shorthand for `k` juxtaposed copies: `a^2` is `aa`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::group::{Elem, FiniteGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("empty exponent expression")]
    Empty,
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("integer {0} is not in leading position of its monomial")]
    IntegerNotLeading(u64),
    #[error("unexpected `{0}` at position {1}")]
    Unexpected(char, usize),
    #[error("integer at position {0} does not fit in 64 bits")]
    IntegerTooLarge(usize),
    #[error("bad repetition count after `^`")]
    BadRepeat,
    #[error("unbound label `{0}`")]
    UnboundLabel(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExponentExpr {
    /// Signed terms in written order.
    Sum(Vec<(Sign, ExponentExpr)>),
    /// Apply the left factor, then the right one.
    Product(Box<ExponentExpr>, Box<ExponentExpr>),
    Gen(String),
    Int(u64),
}

impl ExponentExpr {
    pub fn product(a: ExponentExpr, b: ExponentExpr) -> ExponentExpr {
        ExponentExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn gen(label: &str) -> ExponentExpr {
        ExponentExpr::Gen(label.to_string())
    }
}

pub fn parse_exponent(text: &str) -> Result<ExponentExpr, ExprError> {
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(ExprError::Empty);
    }
    let mut p = Parser { chars, pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(')') => Err(ExprError::Unbalanced),
        Some(c) => Err(ExprError::Unexpected(c, p.offset())),
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|&(i, _)| i).unwrap_or(usize::MAX)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn expr(&mut self) -> Result<ExponentExpr, ExprError> {
        let mut terms = Vec::new();
        let mut sign = Sign::Plus;
        let mut leading_minus = false;
        if self.peek() == Some('-') {
            self.bump();
            sign = Sign::Minus;
            leading_minus = true;
        }
        loop {
            terms.push((sign, self.term()?));
            match self.peek() {
                Some('+') => sign = Sign::Plus,
                Some('-') => sign = Sign::Minus,
                _ => break,
            }
            self.bump();
        }
        if terms.len() == 1 && !leading_minus {
            Ok(terms.pop().unwrap().1)
        } else {
            Ok(ExponentExpr::Sum(terms))
        }
    }

    fn term(&mut self) -> Result<ExponentExpr, ExprError> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            if !(c.is_ascii_alphanumeric() || c == '(') {
                break;
            }
            let f = self.factor()?;
            if let ExponentExpr::Int(n) = f {
                return Err(ExprError::IntegerNotLeading(n));
            }
            acc = ExponentExpr::product(acc, f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ExponentExpr, ExprError> {
        let base = match self.peek() {
            None => return Err(ExprError::Empty),
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.bump() != Some(')') {
                    return Err(ExprError::Unbalanced);
                }
                e
            }
            Some(')') => return Err(ExprError::Unbalanced),
            Some(c) if c.is_ascii_digit() => return Ok(ExponentExpr::Int(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                self.bump();
                let mut label = String::from(c);
                if self.peek() == Some('_')
                    && self.chars.get(self.pos + 1).is_some_and(|&(_, d)| d.is_ascii_digit())
                {
                    self.bump();
                    label.push('_');
                    while let Some(d) = self.peek().filter(char::is_ascii_digit) {
                        self.bump();
                        label.push(d);
                    }
                }
                ExponentExpr::Gen(label)
            }
            Some(c) => return Err(ExprError::Unexpected(c, self.offset())),
        };
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(ExprError::BadRepeat);
        }
        if let ExponentExpr::Int(n) = base {
            return Err(ExprError::IntegerNotLeading(n));
        }
        let k = self.integer()?;
        if k == 0 {
            return Err(ExprError::BadRepeat);
        }
        let mut acc = base.clone();
        for _ in 1..k {
            acc = ExponentExpr::product(acc, base.clone());
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<u64, ExprError> {
        let start = self.offset();
        let mut n: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            self.bump();
            n = n
                .checked_mul(10)
                .and_then(|n| n.checked_add(d as u64))
                .ok_or(ExprError::IntegerTooLarge(start))?;
        }
        Ok(n)
    }
}

impl fmt::Display for ExponentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentExpr::Int(n) => write!(f, "{n}"),
            ExponentExpr::Gen(l) => write!(f, "{l}"),
            ExponentExpr::Product(l, r) => {
                match **l {
                    ExponentExpr::Sum(_) => write!(f, "({l})")?,
                    _ => write!(f, "{l}")?,
                }
                match **r {
                    ExponentExpr::Sum(_) | ExponentExpr::Product(..) => write!(f, "({r})"),
                    _ => write!(f, "{r}"),
                }
            }
            ExponentExpr::Sum(terms) => {
                for (k, (sign, t)) in terms.iter().enumerate() {
                    match (k, sign) {
                        (_, Sign::Minus) => write!(f, "-")?,
                        (0, Sign::Plus) => {}
                        (_, Sign::Plus) => write!(f, "+")?,
                    }
                    match t {
                        ExponentExpr::Sum(_) => write!(f, "({t})")?,
                        _ => write!(f, "{t}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// `u^e` in `g`, with labels resolved through `env`.
pub fn eval_exponent(
    g: &FiniteGroup,
    u: Elem,
    e: &ExponentExpr,
    env: &HashMap<String, Elem>,
) -> Result<Elem, ExprError> {
    Ok(match e {
        ExponentExpr::Int(n) => g.pow(u, (*n % g.element_order(u) as u64) as i64),
        ExponentExpr::Gen(l) => {
            let h = *env.get(l).ok_or_else(|| ExprError::UnboundLabel(l.clone()))?;
            g.conj(u, h)
        }
        ExponentExpr::Product(a, b) => {
            let v = eval_exponent(g, u, a, env)?;
            eval_exponent(g, v, b, env)?
        }
        ExponentExpr::Sum(terms) => {
            let mut acc = Elem::IDENTITY;
            for (sign, t) in terms {
                let v = eval_exponent(g, u, t, env)?;
                acc = g.mul(acc, if *sign == Sign::Minus { g.inv(v) } else { v });
            }
            acc
        }
    })
}
