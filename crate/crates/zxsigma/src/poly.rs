//! Dense univariate polynomials over Z and over Z_p.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial in Z[x]; `coeffs[i]` is the coefficient of x^i, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The indeterminate x.
    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// c * x^k
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` plays the role of degree minus infinity.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Divide every coefficient by `d`, failing unless the division is exact.
    pub fn exact_div(&self, d: &BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DegenerateInput("exact division by zero"));
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(d);
            if !r.is_zero() {
                return Err(Error::ExactDivision(d.to_string()));
            }
            out.push(q);
        }
        Ok(IntPoly { coeffs: out })
    }

    /// Divide by x^k; the low coefficients must vanish.
    pub fn unshift(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::ExactDivision(format!("x^{k}")));
        }
        Ok(IntPoly { coeffs: self.coeffs.iter().skip(k).cloned().collect() })
    }

    pub fn eval(&self, at: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    /// Content-free check used by the N[x] exponent grammar.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Split into the positive and negative parts per degree: `self = pos - neg`.
    pub fn split_signs(&self) -> (IntPoly, IntPoly) {
        let pos = self.coeffs.iter().map(|c| if c.is_positive() { c.clone() } else { BigInt::zero() });
        let neg = self.coeffs.iter().map(|c| if c.is_negative() { -c } else { BigInt::zero() });
        (IntPoly::from_coeffs(pos.collect()), IntPoly::from_coeffs(neg.collect()))
    }

    pub fn add_ref(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        IntPoly::from_coeffs(out)
    }

    pub fn mul_ref(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    /// Subtract `c * x^k * other` in place.
    pub fn sub_scaled_shift(&mut self, c: &BigInt, k: usize, other: &IntPoly) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let need = other.coeffs.len() + k;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, BigInt::zero());
        }
        for (j, b) in other.coeffs.iter().enumerate() {
            self.coeffs[j + k] -= c * b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        self.add_ref(rhs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self.add_ref(&-rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        self.add_ref(&rhs)
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        self.mul_ref(&rhs)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

/// Prints by descending degree, e.g. `3*x^2+4*x+1`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Returns `(g, u, v)` with `g = gcd(a, b) > 0` and `g = u*a + v*b`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::DegenerateInput("gcd of zero and zero"));
    }
    let e = a.extended_gcd(b);
    let (g, u, v) = (e.gcd, e.x, e.y);
    if g.is_negative() {
        Ok((-g, -u, -v))
    } else {
        Ok((g, u, v))
    }
}

/// Euclidean division with remainder in `[0, |d|)`.
pub fn div_floor_pos(a: &BigInt, d: &BigInt) -> (BigInt, BigInt) {
    let (q, r) = a.div_mod_floor(d);
    if r.is_negative() {
        // only happens for negative d
        (q + 1, r - d)
    } else {
        (q, r)
    }
}

/// A polynomial in Z_p[x] with residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Modular inverse via Fermat; `p` is prime.
pub fn invmod(a: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

impl ModPoly {
    pub fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::from_residues(p, vec![1])
    }

    pub fn monomial(p: u64, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c % p;
        Self::from_residues(p, coeffs)
    }

    pub fn from_residues(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &ModPoly) -> ModPoly {
        let len = self.coeffs.len().max(o.coeffs.len());
        let out = (0..len).map(|i| (self.coeff(i) + o.coeff(i)) % self.p).collect();
        ModPoly::from_residues(self.p, out)
    }

    pub fn neg(&self) -> ModPoly {
        let out = self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect();
        ModPoly::from_residues(self.p, out)
    }

    pub fn sub(&self, o: &ModPoly) -> ModPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return ModPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        ModPoly::from_residues(self.p, out)
    }

    pub fn scale(&self, c: u64) -> ModPoly {
        let out = self.coeffs.iter().map(|&a| mulmod(a, c % self.p, self.p)).collect();
        ModPoly::from_residues(self.p, out)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invmod(self.lead(), self.p))
    }

    /// `a = q*b + r` with `deg r < deg b`.
    pub fn divrem(&self, b: &ModPoly) -> Result<(ModPoly, ModPoly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let p = self.p;
        let inv = invmod(b.lead(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len().saturating_sub(db)];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = mulmod(*r.last().unwrap(), inv, p);
            q[k] = c;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                r[j + k] = (r[j + k] + p - mulmod(c, bj, p)) % p;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        Ok((ModPoly::from_residues(p, q), ModPoly::from_residues(p, r)))
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", lift(self))
    }
}

/// Coefficientwise reduction into `[0, p)`.
pub fn mod_reduce(a: &IntPoly, p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    let out = a
        .coeffs
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pb);
            u64::try_from(&r).expect("residue fits in u64")
        })
        .collect();
    ModPoly::from_residues(p, out)
}

/// Lift with representatives in `[0, p)`.
pub fn lift(a: &ModPoly) -> IntPoly {
    IntPoly::from_coeffs(a.coeffs.iter().map(|&c| BigInt::from(c)).collect())
}
