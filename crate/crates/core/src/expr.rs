//! Element expressions: sums of products of integers, divided powers,
//! weight projectors and block elements.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := int | X(k) | Y(k) | H(k) | mu(a) | mu(a, r)
//!         | B(bits; pairs) | E(pairs) | '(' expr ')'
//! ```

use std::fmt;

use thiserror::Error;

use crate::arith::Prime;
use crate::eps::EpsVec;
use crate::hyperalgebra::AlgebraElement;
use crate::idempotents::{mu, Idempotents, TupleAJ};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("parse error at position {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("at position {pos}: {message}")]
    Eval { pos: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementExpr {
    Int(i64),
    X(u32),
    Y(u32),
    H(u32),
    /// `mu(a, r)`; a missing level means level one.
    Mu { a: i64, r: u32 },
    B { eps: String, pairs: String, pos: usize },
    E { pairs: String, pos: usize },
    Sum(Vec<ElementExpr>),
    Product(Vec<ElementExpr>),
}

impl fmt::Display for ElementExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, items: &[ElementExpr], sep: &str| {
            for (i, e) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                match e {
                    ElementExpr::Sum(_) if sep == "*" => write!(f, "({e})")?,
                    _ => write!(f, "{e}")?,
                }
            }
            Ok(())
        };
        match self {
            ElementExpr::Int(v) => write!(f, "{v}"),
            ElementExpr::X(k) => write!(f, "X({k})"),
            ElementExpr::Y(k) => write!(f, "Y({k})"),
            ElementExpr::H(k) => write!(f, "H({k})"),
            ElementExpr::Mu { a, r } => write!(f, "mu({a}, {r})"),
            ElementExpr::B { eps, pairs, .. } => write!(f, "B({eps}; {pairs})"),
            ElementExpr::E { pairs, .. } => write!(f, "E({pairs})"),
            ElementExpr::Sum(items) => join(f, items, " + "),
            ElementExpr::Product(items) => join(f, items, "*"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, pos: usize, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Parse {
            pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |f| format!("{f:?}"));
            self.error(self.pos, format!("expected {c:?}, found {found}"))
        }
    }

    fn integer(&mut self) -> Result<i64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        match self.src[start..self.pos].parse() {
            Ok(v) => Ok(v),
            Err(_) if self.pos == start => self.error(start, "expected an integer"),
            Err(_) => self.error(start, "integer out of range"),
        }
    }

    fn index(&mut self) -> Result<u32, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let v = self.integer()?;
        u32::try_from(v).or_else(|_| self.error(start, "expected a non-negative index"))
    }

    /// Raw text up to (not including) `stop`, with its start position.
    fn raw_until(&mut self, stop: char) -> Result<(String, usize), ExprError> {
        self.skip_ws();
        let start = self.pos;
        match self.src[start..].find(stop) {
            Some(off) => {
                self.pos = start + off;
                Ok((self.src[start..self.pos].trim().to_string(), start))
            }
            None => self.error(self.src.len(), format!("expected {stop:?}")),
        }
    }

    fn expr(&mut self) -> Result<ElementExpr, ExprError> {
        let mut items = vec![self.term()?];
        while self.eat('+') {
            items.push(self.term()?);
        }
        Ok(if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            ElementExpr::Sum(items)
        })
    }

    fn term(&mut self) -> Result<ElementExpr, ExprError> {
        let mut items = vec![self.factor()?];
        while self.eat('*') {
            items.push(self.factor()?);
        }
        Ok(if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            ElementExpr::Product(items)
        })
    }

    fn factor(&mut self) -> Result<ElementExpr, ExprError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => self.error(start, "unexpected end of input"),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '-' => Ok(ElementExpr::Int(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                match name {
                    "X" | "Y" | "H" => {
                        self.expect('(')?;
                        let k = self.index()?;
                        self.expect(')')?;
                        Ok(match name {
                            "X" => ElementExpr::X(k),
                            "Y" => ElementExpr::Y(k),
                            _ => ElementExpr::H(k),
                        })
                    }
                    "mu" => {
                        self.expect('(')?;
                        let a = self.integer()?;
                        let r = if self.eat(',') {
                            self.skip_ws();
                            let at = self.pos;
                            let r = self.index()?;
                            if r == 0 {
                                return self.error(at, "level must be positive");
                            }
                            r
                        } else {
                            1
                        };
                        self.expect(')')?;
                        Ok(ElementExpr::Mu { a, r })
                    }
                    "B" => {
                        self.expect('(')?;
                        let (eps, pos) = self.raw_until(';')?;
                        self.pos += 1;
                        let (pairs, _) = self.raw_until(')')?;
                        self.pos += 1;
                        Ok(ElementExpr::B { eps, pairs, pos })
                    }
                    "E" => {
                        self.expect('(')?;
                        let (pairs, pos) = self.raw_until(')')?;
                        self.pos += 1;
                        Ok(ElementExpr::E { pairs, pos })
                    }
                    _ => self.error(start, format!("unknown symbol {name:?}")),
                }
            }
            Some(c) => self.error(start, format!("unexpected {c:?}")),
        }
    }
}

pub fn parse(src: &str) -> Result<ElementExpr, ExprError> {
    let mut parser = Parser { src, pos: 0 };
    let e = parser.expr()?;
    parser.skip_ws();
    if parser.pos != src.len() {
        return parser.error(parser.pos, "trailing input");
    }
    Ok(e)
}

impl ElementExpr {
    pub fn eval(&self, engine: &Idempotents) -> Result<AlgebraElement, ExprError> {
        let p: Prime = engine.prime();
        let eval_err = |pos: usize, e: &dyn fmt::Display| ExprError::Eval {
            pos,
            message: e.to_string(),
        };
        Ok(match self {
            ElementExpr::Int(v) => AlgebraElement::scalar(p, *v),
            ElementExpr::X(k) => AlgebraElement::x(p, *k),
            ElementExpr::Y(k) => AlgebraElement::y(p, *k),
            ElementExpr::H(k) => AlgebraElement::h(p, *k),
            ElementExpr::Mu { a, r } => mu(*a, *r, p),
            ElementExpr::B { eps, pairs, pos } => {
                let tuple = TupleAJ::parse(p, pairs).map_err(|e| eval_err(*pos, &e))?;
                let eps: EpsVec = eps.parse().map_err(|e| eval_err(*pos, &e))?;
                (*engine.b_element(eps, &tuple).map_err(|e| eval_err(*pos, &e))?).clone()
            }
            ElementExpr::E { pairs, pos } => {
                let tuple = TupleAJ::parse(p, pairs).map_err(|e| eval_err(*pos, &e))?;
                (*engine.e_element(&tuple)).clone()
            }
            ElementExpr::Sum(items) => {
                let mut acc = AlgebraElement::zero(p);
                for e in items {
                    acc = &acc + &e.eval(engine)?;
                }
                acc
            }
            ElementExpr::Product(items) => {
                let mut acc = AlgebraElement::one(p);
                for e in items {
                    acc = &acc * &e.eval(engine)?;
                }
                acc
            }
        })
    }
}

/// Parses and evaluates in one step.
pub fn evaluate(src: &str, engine: &Idempotents) -> Result<AlgebraElement, ExprError> {
    parse(src)?.eval(engine)
}
