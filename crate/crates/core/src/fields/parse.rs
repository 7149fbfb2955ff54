//! Text syntax for fields and elements.
//!
//! Fields: `Q`, `Q[x]/(x^3+x^2+x-1)`, `Q(t)`, nested as `Q[i]/(i^2+1)(t)`.
//! Elements: rational expressions in the declared generators, with `+ - * / ^`,
//! parentheses, integer literals and implicit multiplication (`2t`).

use super::exact::{ExactElem, ExactField};
use super::poly;
use super::{Field, FieldError};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Op(char),
}

#[derive(Debug, Clone)]
enum Expr {
    Num(String),
    Var(String),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

fn err(msg: impl Into<String>) -> FieldError {
    FieldError::Parse(msg.into())
}

fn tokenize(s: &str) -> Result<Vec<Token>, FieldError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else if c == '−' {
            out.push(Token::Op('-'));
            i += 1;
        } else {
            return Err(err(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, FieldError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Bin('+', Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Bin('-', Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, FieldError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Bin('*', Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Bin('/', Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(
                self.peek(),
                Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::Op('('))
            ) {
                lhs = Expr::Bin('*', Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, FieldError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, FieldError> {
        let base = self.primary()?;
        if self.eat('^') {
            let negative = self.eat('-');
            let paren = self.eat('(');
            let negative = negative || (paren && self.eat('-'));
            let n = match self.peek().cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    n.parse::<i64>().map_err(|_| err("exponent too large"))?
                }
                _ => return Err(err("expected integer exponent")),
            };
            if paren && !self.eat(')') {
                return Err(err("expected ')' after exponent"));
            }
            return Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, FieldError> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(err("expected ')'"));
                }
                Ok(e)
            }
            other => Err(err(format!("unexpected token {other:?}"))),
        }
    }
}

fn parse_expr(s: &str) -> Result<Expr, FieldError> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(format!("trailing input in '{s}'")));
    }
    Ok(e)
}

fn literal<F: Field>(f: &F, digits: &str) -> F::Elem {
    let mut acc = f.zero();
    for chunk in digits.as_bytes().chunks(18) {
        let v: i64 = std::str::from_utf8(chunk).expect("ascii").parse().expect("digits");
        let scale = f.from_i64(10i64.pow(chunk.len() as u32));
        acc = f.add(&f.mul(&acc, &scale), &f.from_i64(v));
    }
    acc
}

fn eval<F: Field>(f: &F, names: &[(String, F::Elem)], e: &Expr) -> Result<F::Elem, FieldError> {
    Ok(match e {
        Expr::Num(n) => literal(f, n),
        Expr::Var(v) => names
            .iter()
            .find(|(n, _)| n == v)
            .map(|(_, x)| x.clone())
            .ok_or_else(|| err(format!("unknown name '{v}'")))?,
        Expr::Neg(a) => f.neg(&eval(f, names, a)?),
        Expr::Bin(op, a, b) => {
            let (x, y) = (eval(f, names, a)?, eval(f, names, b)?);
            match op {
                '+' => f.add(&x, &y),
                '-' => f.sub(&x, &y),
                '*' => f.mul(&x, &y),
                _ => f.div(&x, &y)?,
            }
        }
        Expr::Pow(a, n) => {
            let x = eval(f, names, a)?;
            let p = f.pow(&x, n.unsigned_abs());
            if *n < 0 {
                f.inv(&p)?
            } else {
                p
            }
        }
    })
}

/// Evaluates an expression as a polynomial in `var` over `base`.
fn eval_poly(
    base: &ExactField,
    var: &str,
    names: &[(String, ExactElem)],
    e: &Expr,
) -> Result<Vec<ExactElem>, FieldError> {
    Ok(match e {
        Expr::Num(n) => poly::constant(base, literal(base, n)),
        Expr::Var(v) if v == var => vec![base.zero(), base.one()],
        Expr::Var(_) => poly::constant(base, eval(base, names, e)?),
        Expr::Neg(a) => poly::neg(base, &eval_poly(base, var, names, a)?),
        Expr::Bin(op, a, b) => {
            let x = eval_poly(base, var, names, a)?;
            let y = eval_poly(base, var, names, b)?;
            match op {
                '+' => poly::add(base, &x, &y),
                '-' => poly::sub(base, &x, &y),
                '*' => poly::mul(base, &x, &y),
                _ => {
                    if y.len() != 1 {
                        return Err(err(format!(
                            "division by a non-constant polynomial in {var}"
                        )));
                    }
                    poly::scale(base, &x, &base.inv(&y[0])?)
                }
            }
        }
        Expr::Pow(a, n) => {
            if *n < 0 {
                return Err(err("negative power in a polynomial"));
            }
            poly::pow(base, &eval_poly(base, var, names, a)?, *n as u32)
        }
    })
}

/// Parses an element of any field, with `names` giving the values of identifiers.
pub fn parse_elem_with<F: Field>(
    f: &F,
    names: &[(String, F::Elem)],
    s: &str,
) -> Result<F::Elem, FieldError> {
    eval(f, names, &parse_expr(s)?)
}

/// Parses an element of an exact field in terms of the tower's generators.
pub fn parse_elem(field: &ExactField, s: &str) -> Result<ExactElem, FieldError> {
    parse_elem_with(field, &field.generators(), s)
}

fn take_balanced(chars: &[char], open_at: usize) -> Result<usize, FieldError> {
    let mut depth = 0;
    for (i, &c) in chars.iter().enumerate().skip(open_at) {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(i);
                }
            }
            _ => {}
        }
    }
    Err(err("unbalanced parentheses"))
}

/// Parses a field descriptor such as `Q[b]/(b^3+b^2+b-1)(t)`.
pub fn parse_field(s: &str) -> Result<ExactField, FieldError> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.first() != Some(&'Q') {
        return Err(err("field descriptor must start with Q"));
    }
    let mut field = ExactField::rationals();
    let mut i = 1;
    while i < chars.len() {
        match chars[i] {
            '[' => {
                let close = chars[i..]
                    .iter()
                    .position(|&c| c == ']')
                    .ok_or_else(|| err("missing ']'"))?
                    + i;
                let name: String = chars[i + 1..close].iter().collect();
                if chars.get(close + 1) != Some(&'/') || chars.get(close + 2) != Some(&'(') {
                    return Err(err("expected '/(' after generator"));
                }
                let end = take_balanced(&chars, close + 2)?;
                let body: String = chars[close + 3..end].iter().collect();
                let modulus = eval_poly(&field, &name, &field.generators(), &parse_expr(&body)?)?;
                field = ExactField::quotient(&field, modulus, &name)?;
                i = end + 1;
            }
            '(' => {
                let end = take_balanced(&chars, i)?;
                let name: String = chars[i + 1..end].iter().collect();
                if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return Err(err(format!("bad variable name '{name}'")));
                }
                field = ExactField::rational_functions(&field, &name);
                i = end + 1;
            }
            c => return Err(err(format!("unexpected '{c}' in field descriptor"))),
        }
    }
    Ok(field)
}
