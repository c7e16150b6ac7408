//! Series sources for `sum`.
//!
//! - `grandi`
//! - `alt-power:P` for 1^P − 2^P + 3^P − ⋯
//! - `expr:E` for a term formula in `n` (starting at n = 0)
//! - `file:PATH`, or a bare path ending in `.csv` or `.json`
//!
//! Expressions support `+ - * / ^`, parentheses, decimal literals and the
//! functions `abs sqrt exp ln sin cos`. They stay exact while only rational
//! operations and integer powers are involved.

use std::fs;
use std::path::Path;

use cesaro_core::numerics::{parse_rational, powi_exact, to_f64};
use cesaro_core::summability::Series;
use cesaro_core::Rational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::CliError;

pub fn load_series(source: &str, n: usize) -> Result<Series, CliError> {
    let bad = |msg: String| CliError::Source(format!("{source}: {msg}"));
    if source == "grandi" {
        return Ok(Series::grandi(n));
    }
    if let Some(p) = source.strip_prefix("alt-power:") {
        let p: u32 = p.parse().map_err(|_| bad("power must be a non-negative integer".into()))?;
        return Ok(Series::alternating_power(p, n));
    }
    if let Some(e) = source.strip_prefix("expr:") {
        let expr = Expr::parse(e).map_err(bad)?;
        return expr.series(n).map_err(bad);
    }
    let path = source.strip_prefix("file:").unwrap_or(source);
    let ext = Path::new(path).extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase);
    let terms = match ext.as_deref() {
        Some("csv") => read_csv(path),
        Some("json") => read_json(path),
        _ => return Err(bad("unknown series source".into())),
    }
    .map_err(bad)?;
    if terms.is_empty() {
        return Err(bad("no terms".into()));
    }
    Ok(Series::Exact(terms.into_iter().take(n).collect()))
}

/// The last field of each record; records that do not parse (headers) are skipped.
fn read_csv(path: &str) -> Result<Vec<Rational>, String> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_path(path).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| e.to_string())?;
        let Some(field) = rec.iter().last() else { continue };
        match parse_rational(field) {
            Some(v) => out.push(v),
            None if line == 0 => {}
            None => return Err(format!("line {}: cannot parse {field:?}", line + 1)),
        }
    }
    Ok(out)
}

/// A JSON array of numbers or `"p/q"` strings.
fn read_json(path: &str) -> Result<Vec<Rational>, String> {
    let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let items = value.as_array().ok_or("expected a JSON array")?;
    items
        .iter()
        .map(|v| {
            let s = match v {
                serde_json::Value::Number(x) => x.to_string(),
                serde_json::Value::String(s) => s.clone(),
                other => return Err(format!("not a number: {other}")),
            };
            parse_rational(&s).ok_or_else(|| format!("cannot parse {s:?}"))
        })
        .collect()
}

#[derive(Clone, Debug)]
enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    fn float(&self) -> f64 {
        match self {
            Value::Exact(r) => to_f64(r),
            Value::Float(x) => *x,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Expr {
    Index,
    Const(Rational),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Call(String, Box<Expr>),
}

const FUNCTIONS: [&str; 6] = ["abs", "sqrt", "exp", "ln", "sin", "cos"];

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, String> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(format!("unexpected input at offset {}", p.pos));
        }
        Ok(e)
    }

    fn eval(&self, n: &Rational) -> Result<Value, String> {
        use Value::*;
        Ok(match self {
            Expr::Index => Exact(n.clone()),
            Expr::Const(c) => Exact(c.clone()),
            Expr::Neg(a) => match a.eval(n)? {
                Exact(r) => Exact(-r),
                Float(x) => Float(-x),
            },
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(n)?, b.eval(n)?);
                match (op, a, b) {
                    ('+', Exact(x), Exact(y)) => Exact(x + y),
                    ('-', Exact(x), Exact(y)) => Exact(x - y),
                    ('*', Exact(x), Exact(y)) => Exact(x * y),
                    ('/', Exact(x), Exact(y)) => {
                        if y.is_zero() {
                            return Err(format!("division by zero at n = {n}"));
                        }
                        Exact(x / y)
                    }
                    ('^', Exact(x), Exact(y)) if y.is_integer() && y.abs() <= Rational::from_integer(4096.into()) => {
                        let e = y.to_integer().to_i64().unwrap_or(0);
                        if e < 0 && x.is_zero() {
                            return Err(format!("division by zero at n = {n}"));
                        }
                        let v = powi_exact(&x, e.unsigned_abs());
                        Exact(if e < 0 { v.recip() } else { v })
                    }
                    (op, a, b) => {
                        let (x, y) = (a.float(), b.float());
                        Float(match op {
                            '+' => x + y,
                            '-' => x - y,
                            '*' => x * y,
                            '/' => x / y,
                            _ => x.powf(y),
                        })
                    }
                }
            }
            Expr::Call(f, a) => {
                let a = a.eval(n)?;
                if let ("abs", Exact(r)) = (f.as_str(), &a) {
                    return Ok(Exact(r.abs()));
                }
                let x = a.float();
                Float(match f.as_str() {
                    "abs" => x.abs(),
                    "sqrt" => x.sqrt(),
                    "exp" => x.exp(),
                    "ln" => x.ln(),
                    "sin" => x.sin(),
                    _ => x.cos(),
                })
            }
        })
    }

    /// Terms for n = 0..len; exact if every term is.
    pub fn series(&self, len: usize) -> Result<Series, String> {
        let vals: Vec<Value> = (0..len).map(|k| self.eval(&Rational::from_integer(k.into()))).collect::<Result<_, _>>()?;
        if let Some(bad) = vals.iter().position(|v| matches!(v, Value::Float(x) if !x.is_finite())) {
            return Err(format!("term {bad} is not finite"));
        }
        if vals.iter().all(|v| matches!(v, Value::Exact(_))) {
            Ok(Series::Exact(vals.into_iter().map(|v| if let Value::Exact(r) = v { r } else { unreachable!() }).collect()))
        } else {
            Ok(Series::Float(vals.iter().map(Value::float).collect()))
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Expr, String> {
        let mut lhs = self.product()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            lhs = Expr::Bin(op as char, Box::new(lhs), Box::new(self.product()?));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr, String> {
        let mut lhs = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            lhs = Expr::Bin(op as char, Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, String> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            return Ok(Expr::Bin('^', Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'.') {
                    self.pos += 1;
                }
                let lit = std::str::from_utf8(&self.s[start..self.pos]).expect("ASCII");
                parse_rational(lit).map(Expr::Const).ok_or_else(|| format!("bad number {lit:?}"))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.s[start..self.pos]).expect("ASCII");
                if word == "n" {
                    return Ok(Expr::Index);
                }
                if !FUNCTIONS.contains(&word) {
                    return Err(format!("unknown name {word:?}"));
                }
                self.expect(b'(')?;
                let arg = self.sum()?;
                self.expect(b')')?;
                Ok(Expr::Call(word.into(), Box::new(arg)))
            }
            Some(c) => Err(format!("unexpected {:?} at offset {}", c as char, self.pos)),
            None => Err("unexpected end of expression".into()),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), String> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected {:?} at offset {}", c as char, self.pos))
        }
    }
}
