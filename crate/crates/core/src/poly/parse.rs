//! Text syntax for polynomials and tensors.
//!
//! Identifiers match `[A-Za-z][A-Za-z0-9_]*`, powers are written `X^3` (or
//! `F^-1` for Laurent variables), `*` between factors is optional, scalar
//! literals are integers or `p/q`, and tensor legs are separated by `(x)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::{Poly, Scalar, Tensor, VarTable};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    TensorSep,
}

fn tokenize(text: &str, tensor_mode: bool) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if tensor_mode && text[i..].starts_with("(x)") {
            out.push((i, Tok::TensorSep));
            i += 3;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(text[start..i].parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => return Err(Error::parse(i, format!("unexpected character {other:?}"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

/// Parsed expression tree, independent of any product.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Scalar),
    Var(String),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i32),
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let toks = tokenize(text, false)?;
        let mut p = Parser {
            toks: &toks,
            pos: 0,
            end: text.len(),
        };
        let e = p.sum()?;
        p.finish()?;
        Ok(e)
    }

    /// Evaluates with a caller-supplied multiplication and variable lookup.
    pub fn eval_with<L, M>(&self, nvars: usize, lookup: &mut L, mul: &mut M) -> Result<Poly>
    where
        L: FnMut(&str) -> Result<Poly>,
        M: FnMut(&Poly, &Poly) -> Result<Poly>,
    {
        Ok(match self {
            Expr::Num(c) => Poly::constant(c.clone(), nvars),
            Expr::Var(name) => lookup(name)?,
            Expr::Add(items) => {
                let mut acc = Poly::zero();
                for e in items {
                    acc += &e.eval_with(nvars, lookup, mul)?;
                }
                acc
            }
            Expr::Mul(items) => {
                let mut acc = Poly::one(nvars);
                for e in items {
                    let v = e.eval_with(nvars, lookup, mul)?;
                    acc = mul(&acc, &v)?;
                }
                acc
            }
            Expr::Neg(e) => -&e.eval_with(nvars, lookup, mul)?,
            Expr::Pow(e, k) => {
                let mut base = e.eval_with(nvars, lookup, mul)?;
                if *k < 0 {
                    base = base.invert_monomial_multiple()?;
                }
                let mut acc = Poly::one(nvars);
                for _ in 0..k.unsigned_abs() {
                    acc = mul(&acc, &base)?;
                }
                acc
            }
        })
    }

    /// Evaluates in the commutative coordinate algebra over `vars`.
    pub fn eval(&self, vars: &VarTable) -> Result<Poly> {
        let n = vars.len();
        let p = self.eval_with(
            n,
            &mut |name| Ok(Poly::var(n, vars.require(name)?)),
            &mut |a, b| Ok(a * b),
        )?;
        for (m, _) in p.terms() {
            vars.check_monomial(m)?;
        }
        Ok(p)
    }
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return Err(Error::parse(self.offset(), "trailing input"));
        }
        Ok(())
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut items = Vec::new();
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let t = self.product()?;
            items.push(if negate { Expr::Neg(Box::new(t)) } else { t });
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => break,
            }
            self.bump();
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Expr::Add(items)
        })
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen)
        )
    }

    fn product(&mut self) -> Result<Expr> {
        let mut items = vec![self.factor()?];
        loop {
            if let Some(Tok::Star) = self.peek() {
                self.bump();
                items.push(self.factor()?);
            } else if self.starts_factor() {
                items.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Expr::Mul(items)
        })
    }

    fn factor(&mut self) -> Result<Expr> {
        let atom = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let neg = if let Some(Tok::Minus) = self.peek() {
                self.bump();
                true
            } else {
                false
            };
            let off = self.offset();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let k: i32 = n
                        .try_into()
                        .map_err(|_| Error::parse(off, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(atom), if neg { -k } else { k }))
                }
                _ => Err(Error::parse(off, "expected integer exponent")),
            }
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let off = self.offset();
        match self.bump() {
            Some(Tok::Num(n)) => {
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let doff = self.offset();
                    match self.bump() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            Ok(Expr::Num(Scalar::new(n, d)))
                        }
                        _ => Err(Error::parse(doff, "expected nonzero denominator")),
                    }
                } else {
                    Ok(Expr::Num(Scalar::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => Ok(Expr::Var(name)),
            Some(Tok::LParen) => {
                let e = self.sum()?;
                let coff = self.offset();
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::parse(coff, "expected `)`")),
                }
            }
            Some(_) => Err(Error::parse(off, "expected a number, variable or `(`")),
            None => Err(Error::parse(off, "unexpected end of input")),
        }
    }
}

pub fn parse_poly(text: &str, vars: &VarTable) -> Result<Poly> {
    Expr::parse(text)?.eval(vars)
}

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    match Expr::parse(text)? {
        Expr::Num(c) => Ok(c),
        Expr::Neg(e) => match *e {
            Expr::Num(c) => Ok(-c),
            _ => Err(Error::parse(0, "expected a rational literal")),
        },
        _ => Err(Error::parse(0, "expected a rational literal")),
    }
}

/// Parses `Σ c · l_1 (x) … (x) l_k`. Every term must have the same number of
/// legs; each leg is a product of factors.
pub fn parse_tensor(text: &str, vars: &VarTable) -> Result<Tensor> {
    let toks = tokenize(text, true)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
    };
    let mut out: Option<Tensor> = None;
    let mut negate = match p.peek() {
        Some(Tok::Minus) => {
            p.bump();
            true
        }
        Some(Tok::Plus) => {
            p.bump();
            false
        }
        _ => false,
    };
    loop {
        let term_off = p.offset();
        let mut legs = vec![p.product()?];
        while let Some(Tok::TensorSep) = p.peek() {
            p.bump();
            legs.push(p.product()?);
        }
        let polys = legs
            .iter()
            .map(|e| e.eval(vars))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&Poly> = polys.iter().collect();
        let mut t = Tensor::pure(&refs);
        if negate {
            t = t.scale(&-Scalar::one());
        }
        match &mut out {
            None => out = Some(t),
            Some(acc) => {
                if acc.arity() != t.arity() {
                    return Err(Error::parse(term_off, "inconsistent number of tensor legs"));
                }
                acc.add_scaled(&t, &Scalar::one());
            }
        }
        match p.peek() {
            Some(Tok::Plus) => negate = false,
            Some(Tok::Minus) => negate = true,
            _ => break,
        }
        p.bump();
    }
    p.finish()?;
    let t = out.unwrap();
    if t.is_zero() && t.arity() == 1 {
        return Ok(Tensor::zero(2));
    }
    if t.arity() < 2 {
        return Err(Error::parse(0, "a tensor needs at least two legs"));
    }
    Ok(t)
}
