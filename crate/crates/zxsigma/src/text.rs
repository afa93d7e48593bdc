//! Text grammars and canonical printing.
//!
//! Every parser reports errors as `line:col` with 1-based positions.
//! Lines whose first non-blank character is `#` are comments.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::constants::FieldConst;
use crate::error::{Error, Result};
use crate::lattice::LatVec;
use crate::poly::IntPoly;

/// Character cursor over one line of input.
pub(crate) struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str, line: usize, col0: usize) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, line, col0, _src: src }
    }

    pub(crate) fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.line, col: self.col0 + self.pos + 1, msg: msg.into() })
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    /// Whether the input continues with `s` (after leading whitespace).
    pub(crate) fn peek_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        self.pos + n <= self.chars.len() && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars())
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn eat_str(&mut self, s: &str) -> bool {
        if self.peek_str(s) {
            self.pos += s.chars().count();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(d) => self.err(format!("expected '{c}', found '{d}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    pub(crate) fn line(&self) -> usize {
        self.line
    }

    /// 1-based column of the next unread character.
    pub(crate) fn col(&self) -> usize {
        self.col0 + self.pos + 1
    }

    pub(crate) fn expect_end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected '{c}'")),
        }
    }

    pub(crate) fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    pub(crate) fn small_uint(&mut self) -> Result<usize> {
        let n = self.uint()?;
        match usize::try_from(&n) {
            Ok(v) if v <= 1 << 20 => Ok(v),
            _ => self.err("number too large"),
        }
    }

    pub(crate) fn peek_digit(&mut self) -> bool {
        self.peek().is_some_and(|c| c.is_ascii_digit())
    }

    /// Parse a polynomial in `x`; stops at the first character that cannot continue it.
    pub(crate) fn poly(&mut self) -> Result<IntPoly> {
        let mut acc = IntPoly::zero();
        let mut first = true;
        loop {
            let neg = self.eat('-');
            if !neg && !self.eat('+') && !first {
                break;
            }
            first = false;
            let coeff = if self.peek_digit() {
                let c = self.uint()?;
                if self.eat('*') {
                    Some(c)
                } else {
                    let t = IntPoly::constant(c);
                    acc = if neg { &acc - &t } else { &acc + &t };
                    continue;
                }
            } else {
                None
            };
            if !self.eat('x') {
                return self.err("expected a term in x");
            }
            let k = if self.eat('^') { self.small_uint()? } else { 1 };
            let t = IntPoly::monomial(coeff.unwrap_or_else(BigInt::one), k);
            acc = if neg { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }
}

/// One term `c*y1^(e1)*...` of a binomial line; variable indices are 1-based.
#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub coeff: FieldConst,
    pub exps: BTreeMap<usize, IntPoly>,
    pub line: usize,
    pub col: usize,
}

impl Term {
    pub(crate) fn exponent(&self, n: usize) -> LatVec {
        let mut v = LatVec::zeros(n);
        for (&i, e) in &self.exps {
            v.set_entry(i - 1, e.clone());
        }
        v
    }

    pub(crate) fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.line, col: self.col, msg: msg.into() })
    }
}

impl Cursor<'_> {
    fn exponent(&mut self) -> Result<IntPoly> {
        if !self.eat('^') {
            return Ok(IntPoly::one());
        }
        if self.eat('(') {
            let e = self.poly()?;
            self.expect(')')?;
            return Ok(e);
        }
        let neg = self.eat('-');
        let k = IntPoly::constant(self.uint()?);
        Ok(if neg { -k } else { k })
    }

    fn term(&mut self, neg: bool) -> Result<Term> {
        self.skip_ws();
        let col = self.col();
        let mut coeff = if neg { FieldConst::minus_one() } else { FieldConst::one() };
        let mut exps: BTreeMap<usize, IntPoly> = BTreeMap::new();
        loop {
            if self.eat('y') {
                let i = self.small_uint()?;
                if i == 0 {
                    return self.err("variables are numbered from y1");
                }
                let e = self.exponent()?;
                let slot = exps.entry(i).or_insert_with(IntPoly::zero);
                *slot = &*slot + &e;
            } else {
                coeff = coeff.mul(&self.const_factor()?);
            }
            if !self.eat('*') {
                break;
            }
        }
        exps.retain(|_, e| !e.is_zero());
        Ok(Term { coeff, exps, line: self.line, col })
    }

    /// `term`, or `term + term`, or `term - term`, filling the whole line.
    pub(crate) fn binomial_terms(&mut self) -> Result<Vec<Term>> {
        let neg = self.eat('-');
        let mut out = vec![self.term(neg)?];
        if self.eat('+') {
            out.push(self.term(false)?);
        } else if self.eat('-') {
            out.push(self.term(true)?);
        }
        self.expect_end()?;
        Ok(out)
    }
}

/// Parse a system of binomial lines with an optional `dim n` line. Returns the
/// dimension (the explicit one, else the largest variable index) and the terms
/// of every line.
pub(crate) fn parse_terms(src: &str) -> Result<(usize, Vec<Vec<Term>>)> {
    let mut dim: Option<(usize, usize)> = None;
    let mut lines = Vec::new();
    for (ln, line) in content_lines(src) {
        let mut c = Cursor::new(line, ln, 0);
        if c.eat_str("dim") {
            if dim.is_some() {
                return c.err("duplicate dim line");
            }
            dim = Some((c.small_uint()?, ln));
            c.expect_end()?;
            continue;
        }
        lines.push(c.binomial_terms()?);
    }
    let used = lines.iter().flatten().flat_map(|t| t.exps.keys().copied()).max().unwrap_or(0);
    let n = match dim {
        Some((d, ln)) if d < used => {
            return Err(Error::Parse { line: ln, col: 1, msg: format!("y{used} used but dim is {d}") })
        }
        Some((d, _)) => d,
        None => used,
    };
    Ok((n, lines))
}

/// `y1^(x)*y2`, or `1` for the zero exponent.
pub(crate) fn print_monomial(v: &LatVec) -> String {
    let parts: Vec<String> = v
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, e)| if *e == IntPoly::one() { format!("y{}", i + 1) } else { format!("y{}^({e})", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Iterate over non-comment, non-blank lines as `(line number, text)`.
pub(crate) fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines().enumerate().filter_map(|(i, l)| {
        let t = l.trim_start();
        if t.is_empty() || t.starts_with('#') {
            None
        } else {
            Some((i + 1, l))
        }
    })
}

/// Parse a polynomial such as `3*x^2+4*x+1`.
pub fn parse_poly(src: &str) -> Result<IntPoly> {
    let mut c = Cursor::new(src, 1, 0);
    let p = c.poly()?;
    c.expect_end()?;
    Ok(p)
}

/// A matrix given as a list of columns, with an optional multiplier per column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub n: usize,
    pub columns: Vec<LatVec>,
    pub multipliers: Option<Vec<BigInt>>,
}

/// Parse a matrix: one column per line, `[p1, ..., pn]`, optionally followed by
/// `mult m`. A `dim n` line fixes the dimension when there are no columns.
pub fn parse_matrix(src: &str) -> Result<Matrix> {
    let mut n: Option<usize> = None;
    let mut columns = Vec::new();
    let mut mults: Vec<Option<BigInt>> = Vec::new();
    for (ln, line) in content_lines(src) {
        let mut c = Cursor::new(line, ln, 0);
        if c.eat_str("dim") {
            let d = c.small_uint()?;
            c.expect_end()?;
            if n.is_some_and(|m| m != d) {
                return c.err(format!("dimension {d} conflicts with {}", n.unwrap()));
            }
            n = Some(d);
            continue;
        }
        c.expect('[')?;
        let mut entries = Vec::new();
        if !c.eat(']') {
            loop {
                entries.push(c.poly()?);
                if c.eat(']') {
                    break;
                }
                c.expect(',')?;
            }
        }
        let m = if c.eat_str("mult") { Some(c.uint()?) } else { None };
        c.expect_end()?;
        match n {
            Some(d) if d != entries.len() => {
                return Err(Error::Parse { line: ln, col: 1, msg: format!("column has {} entries, expected {d}", entries.len()) })
            }
            _ => n = Some(entries.len()),
        }
        columns.push(LatVec::new(entries));
        mults.push(m);
    }
    let multipliers = if !mults.is_empty() && mults.iter().all(Option::is_some) {
        Some(mults.into_iter().map(Option::unwrap).collect())
    } else if mults.iter().any(Option::is_some) {
        return Err(Error::Parse { line: 1, col: 1, msg: "multipliers must be given for all columns or none".into() });
    } else {
        None
    };
    Ok(Matrix { n: n.unwrap_or(0), columns, multipliers })
}

/// Canonical matrix text; parse_matrix of the result gives back the same matrix.
pub fn print_matrix(m: &Matrix) -> String {
    let mut out = format!("dim {}\n", m.n);
    for (i, c) in m.columns.iter().enumerate() {
        out.push_str(&c.to_string());
        if let Some(ms) = &m.multipliers {
            out.push_str(&format!(" mult {}", ms[i]));
        }
        out.push('\n');
    }
    out
}
