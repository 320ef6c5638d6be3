//! Formulas in `t` for `fracint`: numbers, `t`, `+`, `-`, `*`,
//! parentheses and `^` with a rational exponent such as `2`, `-1/2` or `(3/4)`.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Const(f64),
    Var,
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Pow(Box<Node>, f64),
}

impl Node {
    fn eval(&self, t: f64) -> f64 {
        match self {
            Node::Const(c) => *c,
            Node::Var => t,
            Node::Neg(a) => -a.eval(t),
            Node::Add(a, b) => a.eval(t) + b.eval(t),
            Node::Sub(a, b) => a.eval(t) - b.eval(t),
            Node::Mul(a, b) => a.eval(t) * b.eval(t),
            Node::Pow(a, r) => a.eval(t).powf(*r),
        }
    }
}

/// A parsed real function of `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExprFunction {
    source: String,
    root: Node,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub position: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.message, self.position)
    }
}

impl std::error::Error for ParseError {}

impl ExprFunction {
    pub fn parse(source: &str) -> Result<Self, ParseError> {
        let mut p = Parser {
            chars: source.chars().collect(),
            pos: 0,
        };
        let root = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
        }
        Ok(Self {
            source: source.to_string(),
            root,
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.root.eval(t)
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            message: message.into(),
            position: self.pos,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let r = self.exponent()?;
            return Ok(Node::Pow(Box::new(base), r));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        match self.peek() {
            Some('t') => {
                self.pos += 1;
                Ok(Node::Var)
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => Ok(Node::Const(self.number()?)),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    // [-] n [/ m], optionally parenthesized
    fn exponent(&mut self) -> Result<f64, ParseError> {
        let paren = self.eat('(');
        let sign = if self.eat('-') { -1.0 } else { 1.0 };
        if !self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
            return Err(self.error("expected a rational exponent"));
        }
        let mut r = self.number()?;
        if self.eat('/') {
            let den = self.number()?;
            if den == 0.0 {
                return Err(self.error("zero denominator in exponent"));
            }
            r /= den;
        }
        if paren && !self.eat(')') {
            return Err(self.error("expected `)`"));
        }
        Ok(sign * r)
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit() || *c == '.')
        {
            self.pos += 1;
        }
        if self
            .chars
            .get(self.pos)
            .is_some_and(|c| *c == 'e' || *c == 'E')
        {
            let save = self.pos;
            self.pos += 1;
            if self
                .chars
                .get(self.pos)
                .is_some_and(|c| *c == '-' || *c == '+')
            {
                self.pos += 1;
            }
            if !self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                self.pos = save;
            }
            while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| ParseError {
            message: format!("bad number `{text}`"),
            position: start,
        })
    }
}
