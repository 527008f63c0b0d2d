//! Recursive-descent parser for the polynomial text grammar:
//!
//! ```text
//! input   := [ "arity" "=" int (";" | ",") ] expr
//! expr    := ["-" | "+"] term { ("+" | "-") term }
//! term    := factor { "*" factor }
//! factor  := atom [ "^" int ]
//! atom    := int | "x" int | "(" expr ")" | "-" factor
//! ```

use num_bigint::BigInt;

use super::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct ParseOptions {
    pub max_exponent: u32,
    pub max_variable: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { max_exponent: 64, max_variable: 4096 }
    }
}

pub fn parse_polynomial(text: &str) -> Result<Poly> {
    parse_polynomial_with(text, ParseOptions::default())
}

pub fn parse_polynomial_with(text: &str, opts: ParseOptions) -> Result<Poly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, opts, max_var: 0 };
    let declared = p.directive()?;
    // Parse once to learn the arity, then build over it.
    let tree = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    let arity = p.max_var.max(declared).max(1);
    Ok(tree.build(arity))
}

enum Node {
    Int(BigInt),
    Var(usize),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Pow(Box<Node>, u32),
}

impl Node {
    fn build(&self, arity: usize) -> Poly {
        match self {
            Node::Int(v) => Poly::constant(v.clone(), arity),
            Node::Var(i) => Poly::var(*i - 1, arity),
            Node::Neg(a) => a.build(arity).neg(),
            Node::Add(a, b) => a.build(arity).add(&b.build(arity)),
            Node::Sub(a, b) => a.build(arity).sub(&b.build(arity)),
            Node::Mul(a, b) => a.build(arity).mul(&b.build(arity)),
            Node::Pow(a, e) => a.build(arity).pow(*e),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    opts: ParseOptions,
    max_var: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::SyntaxError { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn directive(&mut self) -> Result<usize> {
        self.skip_ws();
        if !self.src[self.pos..].starts_with(b"arity") {
            return Ok(0);
        }
        self.pos += 5;
        if !self.eat(b'=') {
            return Err(self.err("expected '=' after arity"));
        }
        let n: usize = self
            .digits()?
            .parse()
            .map_err(|_| self.err("arity out of range"))?;
        if n > self.opts.max_variable {
            return Err(Error::ArityCapExceeded { arity: n, cap: self.opts.max_variable });
        }
        if !(self.eat(b';') || self.eat(b',')) {
            return Err(self.err("expected ';' after arity directive"));
        }
        Ok(n)
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = if self.eat(b'-') {
            Node::Neg(Box::new(self.term()?))
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.factor()?;
        while self.eat(b'*') {
            lhs = Node::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let cap = self.opts.max_exponent;
        let exp: u64 = self.digits()?.parse().unwrap_or(u64::MAX);
        if exp > cap as u64 {
            return Err(Error::ExponentOverflow { exp, cap });
        }
        Ok(Node::Pow(Box::new(base), exp as u32))
    }

    fn atom(&mut self) -> Result<Node> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(Node::Neg(Box::new(self.factor()?)))
            }
            Some(b'x') => {
                self.pos += 1;
                if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return Err(self.err("expected a variable index after 'x'"));
                }
                let idx: usize = self
                    .digits()?
                    .parse()
                    .map_err(|_| self.err("variable index out of range"))?;
                if idx == 0 {
                    return Err(self.err("variables are numbered from x1"));
                }
                if idx > self.opts.max_variable {
                    return Err(Error::ArityCapExceeded { arity: idx, cap: self.opts.max_variable });
                }
                self.max_var = self.max_var.max(idx);
                Ok(Node::Var(idx))
            }
            Some(c) if c.is_ascii_digit() => {
                let v: BigInt = self.digits()?.parse().expect("digits parse");
                Ok(Node::Int(v))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
