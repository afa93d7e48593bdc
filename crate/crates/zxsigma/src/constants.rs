//! The constant group: positive rationals closed under all roots, times
//! all roots of unity.
//!
//! A constant is `∏ p^e_p · exp(2πi·turn)` with rational exponents `e_p`
//! over primes `p` and a rational `turn` in `[0, 1)`. Negative numbers have
//! turn 1/2.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::text::Cursor;

/// The automorphism acting on constants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SigmaConfig {
    /// σ(c) = c.
    #[default]
    Identity,
    /// Complex conjugation: fixes the radical part, inverts roots of unity.
    Conjugation,
}

impl SigmaConfig {
    /// The exponent `o_m` with `σ(ζ_m) = ζ_m^{o_m}`; 0 when `m = 1`.
    pub fn o_m(self, m: u64) -> u64 {
        assert!(m >= 1, "o_m needs m >= 1");
        match (m, self) {
            (1, _) => 0,
            (_, SigmaConfig::Identity) => 1,
            (_, SigmaConfig::Conjugation) => m - 1,
        }
    }
}

impl std::str::FromStr for SigmaConfig {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "id" | "identity" => Ok(SigmaConfig::Identity),
            "conj" | "conjugation" => Ok(SigmaConfig::Conjugation),
            _ => Err(format!("unknown sigma '{s}', expected 'id' or 'conj'")),
        }
    }
}

impl fmt::Display for SigmaConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SigmaConfig::Identity => "id",
            SigmaConfig::Conjugation => "conj",
        })
    }
}

/// A nonzero constant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldConst {
    radical: BTreeMap<u64, BigRational>,
    turn: BigRational,
}

fn frac_part(q: &BigRational) -> BigRational {
    q - q.floor()
}

impl Default for FieldConst {
    fn default() -> Self {
        Self::one()
    }
}

impl FieldConst {
    pub fn one() -> Self {
        FieldConst { radical: BTreeMap::new(), turn: BigRational::zero() }
    }

    /// `exp(2πi·turn)`.
    pub fn root_of_unity(turn: BigRational) -> Self {
        FieldConst { radical: BTreeMap::new(), turn: frac_part(&turn) }
    }

    /// The primitive root `ζ_m = exp(2πi/m)`.
    pub fn zeta(m: u64) -> Self {
        Self::root_of_unity(BigRational::new(BigInt::one(), BigInt::from(m)))
    }

    pub fn minus_one() -> Self {
        Self::zeta(2)
    }

    /// `p^e` for a prime `p`; the caller guarantees primality.
    pub fn prime_power(p: u64, e: BigRational) -> Self {
        let mut radical = BTreeMap::new();
        if !e.is_zero() {
            radical.insert(p, e);
        }
        FieldConst { radical, turn: BigRational::zero() }
    }

    /// A nonzero integer; fails for zero or when factoring is out of reach.
    pub fn from_int(n: &BigInt) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::DegenerateInput("zero is not a constant"));
        }
        let mut out = if n.is_negative() { Self::minus_one() } else { Self::one() };
        let m = n.abs().to_u64().ok_or(Error::DegenerateInput("integer too large to factor"))?;
        for (p, k) in factor(m)? {
            out = out.mul(&Self::prime_power(p, BigRational::from_integer(BigInt::from(k))));
        }
        Ok(out)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_int(&BigInt::from(n)).expect("small nonzero integer")
    }

    pub fn from_rational(q: &BigRational) -> Result<Self> {
        Ok(Self::from_int(q.numer())?.div(&Self::from_int(q.denom())?))
    }

    pub fn radical(&self) -> &BTreeMap<u64, BigRational> {
        &self.radical
    }

    pub fn turn(&self) -> &BigRational {
        &self.turn
    }

    pub fn is_one(&self) -> bool {
        self.radical.is_empty() && self.turn.is_zero()
    }

    pub fn mul(&self, o: &FieldConst) -> FieldConst {
        let mut radical = self.radical.clone();
        for (p, e) in &o.radical {
            let s = radical.remove(p).unwrap_or_else(BigRational::zero) + e;
            if !s.is_zero() {
                radical.insert(*p, s);
            }
        }
        FieldConst { radical, turn: frac_part(&(&self.turn + &o.turn)) }
    }

    pub fn inv(&self) -> FieldConst {
        FieldConst {
            radical: self.radical.iter().map(|(p, e)| (*p, -e)).collect(),
            turn: frac_part(&-&self.turn),
        }
    }

    pub fn div(&self, o: &FieldConst) -> FieldConst {
        self.mul(&o.inv())
    }

    pub fn neg(&self) -> FieldConst {
        self.mul(&Self::minus_one())
    }

    /// Raise to a rational power, taking the principal branch.
    fn pow_rat(&self, k: &BigRational) -> FieldConst {
        if k.is_zero() {
            return Self::one();
        }
        FieldConst {
            radical: self.radical.iter().map(|(p, e)| (*p, e * k)).collect(),
            turn: frac_part(&(&self.turn * k)),
        }
    }

    pub fn pow(&self, k: &BigInt) -> FieldConst {
        self.pow_rat(&BigRational::from_integer(k.clone()))
    }

    /// `σ(c)`.
    pub fn sigma(&self, s: SigmaConfig) -> FieldConst {
        match s {
            SigmaConfig::Identity => self.clone(),
            SigmaConfig::Conjugation => FieldConst { radical: self.radical.clone(), turn: frac_part(&-&self.turn) },
        }
    }

    /// `σ^{-k}(c)`.
    pub fn sigma_inv_pow(&self, k: u64, s: SigmaConfig) -> FieldConst {
        if k % 2 == 1 {
            self.sigma(s)
        } else {
            self.clone()
        }
    }

    /// `c^e = ∏ σ^j(c)^{a_j}` for `e = Σ a_j x^j`.
    pub fn pow_zx(&self, e: &IntPoly, s: SigmaConfig) -> FieldConst {
        let at = |v: i64| BigRational::from_integer(e.eval(&BigInt::from(v)));
        match s {
            SigmaConfig::Identity => self.pow_rat(&at(1)),
            SigmaConfig::Conjugation => {
                let r = FieldConst { radical: self.radical.clone(), turn: BigRational::zero() }.pow_rat(&at(1));
                let t = FieldConst::root_of_unity(self.turn.clone()).pow_rat(&at(-1));
                r.mul(&t)
            }
        }
    }

    /// The root obtained by dividing every exponent and the turn by `k`.
    pub fn principal_root(&self, k: u64) -> FieldConst {
        assert!(k >= 1, "root index must be positive");
        self.pow_rat(&BigRational::new(BigInt::one(), BigInt::from(k)))
    }

    /// All `k` distinct k-th roots: the principal root times powers of `ζ_k`.
    pub fn kth_roots(&self, k: u64) -> Vec<FieldConst> {
        let r = self.principal_root(k);
        (0..k).map(|l| r.mul(&Self::root_of_unity(BigRational::new(BigInt::from(l), BigInt::from(k))))).collect()
    }

    /// The root `kth_roots(k)[l]`, without building the others.
    pub fn kth_root(&self, k: u64, l: u64) -> FieldConst {
        assert!(l < k, "root index out of range");
        self.principal_root(k).mul(&Self::root_of_unity(BigRational::new(BigInt::from(l), BigInt::from(k))))
    }

    /// Sort key used to order outputs canonically.
    pub fn canonical_key(&self) -> String {
        self.to_string()
    }
}

/// Trial-division factorization; the cofactor left after removing all
/// primes below 10^6 must itself be below 10^12, hence prime.
fn factor(mut n: u64) -> Result<Vec<(u64, u32)>> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n && d < 1_000_000 {
        let mut k = 0;
        while n.is_multiple_of(d) {
            n /= d;
            k += 1;
        }
        if k > 0 {
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if n >= 1_000_000_000_000 && d * d <= n {
            return Err(Error::DegenerateInput("integer has a prime factor too large to find"));
        }
        out.push((n, 1));
    }
    Ok(out)
}

impl fmt::Display for FieldConst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut parts: Vec<String> = Vec::new();
        for (p, e) in &self.radical {
            if e.is_one() {
                parts.push(p.to_string());
            } else {
                parts.push(format!("{p}^({e})"));
            }
        }
        if !self.turn.is_zero() {
            let (a, m) = (self.turn.numer(), self.turn.denom());
            if a.is_one() {
                parts.push(format!("zeta({m})"));
            } else {
                parts.push(format!("zeta({m})^{a}"));
            }
        }
        f.write_str(&parts.join("*"))
    }
}

impl Cursor<'_> {
    fn signed_int(&mut self) -> Result<BigInt> {
        let neg = self.eat('-');
        let v = self.uint()?;
        Ok(if neg { -v } else { v })
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.signed_int()?;
        let den = if self.eat('/') { self.uint()? } else { BigInt::one() };
        if den.is_zero() {
            return self.err("zero denominator");
        }
        Ok(BigRational::new(num, den))
    }

    pub(crate) fn const_factor(&mut self) -> Result<FieldConst> {
        if self.eat_str("zeta") {
            self.expect('(')?;
            let m = self.uint()?;
            if m.is_zero() {
                return self.err("zeta needs a positive order");
            }
            self.expect(')')?;
            let k = if self.eat('^') { self.paren_or_int()? } else { BigRational::one() };
            if !k.is_integer() {
                return self.err("zeta takes an integer power");
            }
            return Ok(FieldConst::root_of_unity(k / BigRational::from_integer(m)));
        }
        self.skip_ws();
        let col = self.col();
        let start = self.uint()?;
        if self.eat('/') {
            let den = self.uint()?;
            if den.is_zero() {
                return self.err("zero denominator");
            }
            return self.wrap(col, FieldConst::from_rational(&BigRational::new(start, den)));
        }
        let base = self.wrap(col, FieldConst::from_int(&start))?;
        if self.eat('^') {
            let e = self.paren_or_int()?;
            Ok(base.pow_rat(&e))
        } else {
            Ok(base)
        }
    }

    fn paren_or_int(&mut self) -> Result<BigRational> {
        if self.eat('(') {
            let e = self.rational()?;
            self.expect(')')?;
            Ok(e)
        } else {
            Ok(BigRational::from_integer(self.signed_int()?))
        }
    }

    fn wrap<T>(&self, col: usize, r: Result<T>) -> Result<T> {
        match r {
            Err(Error::DegenerateInput(m)) => Err(Error::Parse { line: self.line(), col, msg: m.into() }),
            other => other,
        }
    }

    /// A constant: an optional `-`, then factors joined by `*`.
    pub(crate) fn constant(&mut self) -> Result<FieldConst> {
        let mut acc = if self.eat('-') { FieldConst::minus_one() } else { FieldConst::one() };
        loop {
            acc = acc.mul(&self.const_factor()?);
            if !self.eat('*') {
                return Ok(acc);
            }
        }
    }
}

/// Parse a constant such as `2^(1/2)*zeta(8)^3`, `-3` or `1/3`.
pub fn parse_const(src: &str) -> Result<FieldConst> {
    let mut c = Cursor::new(src, 1, 0);
    let v = c.constant()?;
    c.expect_end()?;
    Ok(v)
}

/// The exponent `x - o_m`; every m-th root of unity raised to it is 1.
pub fn x_minus_o(m: &BigInt, s: SigmaConfig) -> IntPoly {
    assert!(m.is_positive(), "o_m needs m >= 1");
    let o = match s {
        _ if m.is_one() => BigInt::zero(),
        SigmaConfig::Identity => BigInt::one(),
        SigmaConfig::Conjugation => m - 1,
    };
    IntPoly::from_coeffs(vec![-o, BigInt::one()])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> FieldConst {
        parse_const(s).unwrap()
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(c("-3").to_string(), "3*zeta(2)");
        assert_eq!(c("2^(1/2)*zeta(8)^3").to_string(), "2^(1/2)*zeta(8)^3");
        assert_eq!(c("12").to_string(), "2^(2)*3");
        assert_eq!(c("1/3").to_string(), "3^(-1)");
        assert_eq!(c("zeta(4)^2").to_string(), "zeta(2)");
        assert_eq!(c("zeta(3)^3").to_string(), "1");
        assert_eq!(c("1").to_string(), "1");
        for s in ["3*zeta(2)", "2^(2)*3", "3^(-1)", "2^(1/2)*zeta(8)^3", "1", "zeta(12)^5"] {
            assert_eq!(c(s).to_string(), s);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(parse_const("0").is_err());
        assert!(parse_const("zeta(0)").is_err());
        assert!(parse_const("2^").is_err());
        assert!(parse_const("1/0").is_err());
        assert!(matches!(parse_const("2*y"), Err(Error::Parse { col: 3, .. })));
    }

    #[test]
    fn group_laws() {
        assert_eq!(c("2^(1/2)").mul(&c("2^(1/2)")), c("2"));
        assert!(c("zeta(3)").div(&c("zeta(3)")).is_one());
        assert!(c("zeta(3)").pow(&BigInt::from(3)).is_one());
    }

    #[test]
    fn sigma_examples() {
        let x = IntPoly::x();
        assert_eq!(c("2").pow_zx(&IntPoly::from_i64s(&[1, 1]), SigmaConfig::Identity), c("4"));
        assert_eq!(c("zeta(3)").pow_zx(&x, SigmaConfig::Conjugation), c("zeta(3)^2"));
        let e = IntPoly::from_i64s(&[0, 2]);
        assert_eq!(c("3^(1/2)*zeta(8)").pow_zx(&e, SigmaConfig::Conjugation), c("3*zeta(4)^3"));
        assert_eq!(c("zeta(5)").sigma_inv_pow(1, SigmaConfig::Conjugation), c("zeta(5)^4"));
        assert_eq!(c("2").sigma_inv_pow(5, SigmaConfig::Identity), c("2"));
    }

    #[test]
    fn roots() {
        assert_eq!(c("1").kth_roots(2), vec![c("1"), c("-1")]);
        assert_eq!(c("4").kth_roots(2), vec![c("2"), c("-2")]);
        assert_eq!(SigmaConfig::Identity.o_m(3), 1);
        assert_eq!(SigmaConfig::Conjugation.o_m(3), 2);
        assert_eq!(SigmaConfig::Conjugation.o_m(2), 1);
        assert_eq!(SigmaConfig::Conjugation.o_m(1), 0);
    }

    #[test]
    fn large_factor() {
        assert_eq!(c("999983").to_string(), "999983");
        assert!(parse_const("18446744073709551557").is_err());
        assert!(parse_const("123456789012345678901234567890").is_err());
    }
}
