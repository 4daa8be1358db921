//! JSON geometry input.
//!
//! Documents look like `{"vertices": [[x, y], ...]}` or
//! `{"vertices3": [[x, y, z], ...]}`. Every coordinate may be a JSON number or
//! a string holding an arithmetic expression such as `"sqrt(3)/2"`
//! (integers, decimals, `sqrt`, `+ - * /` and parentheses).

use serde_json::Value;
use thiserror::Error;

use super::polygon::ConvexPolygon;
use super::solid::Tetrahedron;
use super::vec::{Vec2, Vec3};
use super::GeomError;

#[derive(Debug, Error, PartialEq)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("expected {expected} coordinates per vertex, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("cannot parse expression `{expr}`: {reason}")]
    Expression { expr: String, reason: String },
    #[error("coordinate must be a number or an expression string")]
    NotANumber,
    #[error("expected exactly four vertices, got {0}")]
    TetrahedronArity(usize),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

/// Evaluate an arithmetic expression with `sqrt`.
pub fn eval_expr(src: &str) -> Result<f64, InputError> {
    let mut p = ExprParser {
        src,
        bytes: src.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("trailing input"));
    }
    if !v.is_finite() {
        return Err(p.error("value is not finite"));
    }
    Ok(v)
}

struct ExprParser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, reason: &str) -> InputError {
        InputError::Expression {
            expr: self.src.to_string(),
            reason: format!("{reason} at offset {}", self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), InputError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<f64, InputError> {
        let mut v = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    v += self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    v -= self.term()?;
                }
                _ => return Ok(v),
            }
        }
    }

    fn term(&mut self) -> Result<f64, InputError> {
        let mut v = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    v *= self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    if d == 0.0 {
                        return Err(self.error("division by zero"));
                    }
                    v /= d;
                }
                _ => return Ok(v),
            }
        }
    }

    fn factor(&mut self) -> Result<f64, InputError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                if name != "sqrt" {
                    self.pos = start;
                    return Err(self.error(&format!("unknown function `{name}`")));
                }
                self.expect(b'(')?;
                let v = self.expr()?;
                self.expect(b')')?;
                if v < 0.0 {
                    return Err(self.error("sqrt of a negative number"));
                }
                Ok(v.sqrt())
            }
            _ => Err(self.error("expected a number")),
        }
    }

    fn number(&mut self) -> Result<f64, InputError> {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_digit() || self.bytes[self.pos] == b'.')
        {
            self.pos += 1;
        }
        // optional exponent
        if self.pos < self.bytes.len() && matches!(self.bytes[self.pos], b'e' | b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.pos < self.bytes.len() && matches!(self.bytes[self.pos], b'+' | b'-') {
                self.pos += 1;
            }
            let digits = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == digits {
                self.pos = save;
            }
        }
        self.src[start..self.pos]
            .parse::<f64>()
            .map_err(|_| self.error("malformed number"))
    }
}

fn coordinate(v: &Value) -> Result<f64, InputError> {
    match v {
        Value::Number(n) => n.as_f64().ok_or(InputError::NotANumber),
        Value::String(s) => eval_expr(s),
        _ => Err(InputError::NotANumber),
    }
}

fn rows(doc: &Value, field: &'static str, arity: usize) -> Result<Vec<Vec<f64>>, InputError> {
    let list = doc
        .get(field)
        .and_then(Value::as_array)
        .ok_or(InputError::MissingField(field))?;
    list.iter()
        .map(|row| {
            let row = row.as_array().ok_or(InputError::Arity {
                expected: arity,
                got: 0,
            })?;
            if row.len() != arity {
                return Err(InputError::Arity {
                    expected: arity,
                    got: row.len(),
                });
            }
            row.iter().map(coordinate).collect()
        })
        .collect()
}

/// Parse `{"vertices": [[x, y], ...]}` into a convex polygon.
pub fn parse_polygon(json: &str) -> Result<ConvexPolygon, InputError> {
    let doc: Value = serde_json::from_str(json).map_err(|e| InputError::Json(e.to_string()))?;
    let pts = rows(&doc, "vertices", 2)?
        .into_iter()
        .map(|r| Vec2::new(r[0], r[1]))
        .collect();
    Ok(ConvexPolygon::new(pts)?)
}

/// Parse `{"vertices3": [[x, y, z], ...]}` (four rows) into a tetrahedron.
pub fn parse_tetrahedron(json: &str) -> Result<Tetrahedron, InputError> {
    let doc: Value = serde_json::from_str(json).map_err(|e| InputError::Json(e.to_string()))?;
    let pts: Vec<Vec3> = rows(&doc, "vertices3", 3)?
        .into_iter()
        .map(|r| Vec3::new(r[0], r[1], r[2]))
        .collect();
    let arr: [Vec3; 4] = pts
        .try_into()
        .map_err(|v: Vec<Vec3>| InputError::TetrahedronArity(v.len()))?;
    Ok(Tetrahedron::new(arr)?)
}
