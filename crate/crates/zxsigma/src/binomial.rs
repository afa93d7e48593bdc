//! Binomial σ-ideals in the ordinary (non-Laurent) ring: the split of a
//! Laurent binomial into `Y^{f+} - c Y^{f-}`, monomial elimination and the
//! decomposition into reflexive prime components.

use std::collections::BTreeSet;
use std::fmt;


use crate::constants::{FieldConst, SigmaConfig};
use crate::error::{Error, Result};
use crate::lattice::LatVec;
use crate::laurent::{charset, dec_laurent, member, LaurentBinomial};
use crate::poly::IntPoly;
use crate::text::{content_lines, parse_terms, print_monomial, Cursor, Term};

/// `Y^{fplus} - constant * Y^{fminus}` with exponents in N[x]^n and
/// `fplus - fminus` normal. The two sides may share a factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlainBinomial {
    pub fplus: LatVec,
    pub fminus: LatVec,
    pub constant: FieldConst,
}

/// An element of a binomial system: a σ-binomial or a σ-monomial `Y^e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Item {
    Monomial(LatVec),
    Binomial(PlainBinomial),
}

fn split(v: &LatVec) -> (LatVec, LatVec) {
    let (p, m): (Vec<IntPoly>, Vec<IntPoly>) = v.entries().iter().map(IntPoly::split_signs).unzip();
    (LatVec::new(p), LatVec::new(m))
}

impl PlainBinomial {
    /// The canonical form of `a Y^{a_exp} + b Y^{b_exp}` with exponents in N[x].
    pub fn from_terms(a: &FieldConst, a_exp: &LatVec, b: &FieldConst, b_exp: &LatVec) -> Result<Self> {
        if a_exp.dim() != b_exp.dim() {
            return Err(Error::Dimension { expected: a_exp.dim(), found: b_exp.dim() });
        }
        if a_exp.entries().iter().chain(b_exp.entries()).any(|e| !e.is_nonnegative()) {
            return Err(Error::DegenerateInput("exponents must have nonnegative coefficients"));
        }
        if a_exp == b_exp {
            return Err(Error::NotABinomial);
        }
        let l = LaurentBinomial::normalize(a, a_exp, b, b_exp)?;
        let (fplus, fminus) =
            if l.support == a_exp.sub(b_exp) { (a_exp.clone(), b_exp.clone()) } else { (b_exp.clone(), a_exp.clone()) };
        Ok(PlainBinomial { fplus, fminus, constant: l.constant })
    }

    pub fn dim(&self) -> usize {
        self.fplus.dim()
    }
}

/// `Y^f - c` becomes `Y^{f+} - c Y^{f-}` with the sides sharing no factor.
pub fn to_plain(b: &LaurentBinomial) -> PlainBinomial {
    let (fplus, fminus) = split(&b.support);
    PlainBinomial { fplus, fminus, constant: b.constant.clone() }
}

pub fn to_laurent(b: &PlainBinomial) -> LaurentBinomial {
    LaurentBinomial::new(b.fplus.sub(&b.fminus), b.constant.clone())
}

impl fmt::Display for PlainBinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - ", print_monomial(&self.fplus))?;
        match (self.fminus.is_zero(), self.constant.is_one()) {
            (true, _) => write!(f, "{}", self.constant),
            (false, true) => write!(f, "{}", print_monomial(&self.fminus)),
            (false, false) => write!(f, "{}*{}", self.constant, print_monomial(&self.fminus)),
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Monomial(e) => f.write_str(&print_monomial(e)),
            Item::Binomial(b) => b.fmt(f),
        }
    }
}

fn hits(e: &LatVec, zero: &BTreeSet<usize>) -> bool {
    zero.iter().any(|&i| !e.entry(i).is_zero())
}

fn vars(e: &LatVec) -> impl Iterator<Item = usize> + '_ {
    e.entries().iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(i, _)| i)
}

/// `(Y0, B, Y1)`: the zeros of `B` with the variables of `Y0` set to zero
/// and those of `Y1` nonzero. Variable indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoTriple {
    pub zero: BTreeSet<usize>,
    pub items: Vec<Item>,
    pub nonzero: BTreeSet<usize>,
}

/// Set the variables of `zero` to 0. `None` when a nonzero constant appears.
fn substitute(items: &[Item], zero: &BTreeSet<usize>) -> Option<Vec<Item>> {
    let mut out = Vec::new();
    for it in items {
        let survivor = match it {
            Item::Monomial(e) if hits(e, zero) => continue,
            Item::Monomial(e) => Item::Monomial(e.clone()),
            Item::Binomial(b) => match (hits(&b.fplus, zero), hits(&b.fminus, zero)) {
                (true, true) => continue,
                (true, false) => Item::Monomial(b.fminus.clone()),
                (false, true) => Item::Monomial(b.fplus.clone()),
                (false, false) => it.clone(),
            },
        };
        if matches!(&survivor, Item::Monomial(e) if e.is_zero()) {
            return None;
        }
        if !out.contains(&survivor) {
            out.push(survivor);
        }
    }
    Some(out)
}

/// Eliminate the monomials: a list of triples without monomials whose zero
/// sets cover that of `t`.
pub fn dec_mono(t: MonoTriple) -> Vec<MonoTriple> {
    let mut out = Vec::new();
    let mut work = vec![t];
    while let Some(c) = work.pop() {
        let Some(mut items) = substitute(&c.items, &c.zero) else { continue };
        let Some(k) = items.iter().position(|i| matches!(i, Item::Monomial(_))) else {
            out.push(MonoTriple { zero: c.zero, items, nonzero: c.nonzero });
            continue;
        };
        let Item::Monomial(m) = items.remove(k) else { unreachable!() };
        let fresh: Vec<usize> = vars(&m).filter(|v| !c.nonzero.contains(v)).collect();
        // Pushed in reverse so that branches are taken in variable order.
        for (i, &v) in fresh.iter().enumerate().rev() {
            let mut zero = c.zero.clone();
            zero.insert(v);
            let mut nonzero = c.nonzero.clone();
            nonzero.extend(&fresh[..i]);
            work.push(MonoTriple { zero, items: items.clone(), nonzero });
        }
    }
    out
}

/// A reflexive prime component `[y_i : i ∈ zero_vars] + sat(chain)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub n: usize,
    pub sigma: SigmaConfig,
    pub zero_vars: BTreeSet<usize>,
    pub chain: Vec<PlainBinomial>,
    pub nonzero_vars: BTreeSet<usize>,
}

impl Component {
    fn sort_key(&self) -> (Vec<usize>, Vec<String>, Vec<usize>) {
        (
            self.zero_vars.iter().copied().collect(),
            self.chain.iter().map(|b| b.to_string()).collect(),
            self.nonzero_vars.iter().copied().collect(),
        )
    }

    pub fn laurent_chain(&self) -> Vec<LaurentBinomial> {
        self.chain.iter().map(to_laurent).collect()
    }
}

fn check_dims(n: usize, items: &[Item]) -> Result<()> {
    for it in items {
        let d = match it {
            Item::Monomial(e) => e.dim(),
            Item::Binomial(b) => b.dim(),
        };
        if d != n {
            return Err(Error::Dimension { expected: n, found: d });
        }
    }
    Ok(())
}

/// Decompose the perfect σ-ideal generated by `items` into reflexive prime
/// components. Empty when that ideal is the unit ideal.
pub fn dec_binomial(n: usize, items: &[Item], s: SigmaConfig) -> Result<Vec<Component>> {
    check_dims(n, items)?;
    let mut out: Vec<Component> = Vec::new();
    let start = MonoTriple { zero: BTreeSet::new(), items: items.to_vec(), nonzero: BTreeSet::new() };
    let mut work = dec_mono(start);
    while let Some(t) = work.pop() {
        let bs: Vec<&PlainBinomial> = t
            .items
            .iter()
            .map(|i| match i {
                Item::Binomial(b) => b,
                Item::Monomial(_) => unreachable!("dec_mono removes monomials"),
            })
            .collect();
        if bs.is_empty() {
            out.push(Component { n, sigma: s, zero_vars: t.zero, chain: Vec::new(), nonzero_vars: t.nonzero });
            continue;
        }
        let laurent: Vec<LaurentBinomial> = bs.iter().map(|b| to_laurent(b)).collect();
        for rho in dec_laurent(n, &laurent, s)? {
            out.push(Component {
                n,
                sigma: s,
                zero_vars: t.zero.clone(),
                chain: rho.chain().iter().map(to_plain).collect(),
                nonzero_vars: t.nonzero.clone(),
            });
        }
        // Points of the binomials with some variable zero. Only variables
        // occurring in them matter: the others stay free in every component.
        let occurring: BTreeSet<usize> =
            bs.iter().flat_map(|b| vars(&b.fplus).chain(vars(&b.fminus)).collect::<Vec<_>>()).collect();
        let fresh: Vec<usize> = occurring.into_iter().filter(|v| !t.nonzero.contains(v)).collect();
        for (i, &v) in fresh.iter().enumerate() {
            let mut zero = t.zero.clone();
            zero.insert(v);
            let mut nonzero = t.nonzero.clone();
            nonzero.extend(&fresh[..i]);
            work.extend(dec_mono(MonoTriple { zero, items: t.items.clone(), nonzero }));
        }
    }
    out.sort_by_key(Component::sort_key);
    out.dedup();
    Ok(out)
}

/// Whether `b` lies in the component `[y_i : i ∈ zero_vars] + sat(chain)`.
pub fn member_sat(b: &Item, c: &Component) -> Result<bool> {
    check_dims(c.n, std::slice::from_ref(b))?;
    match b {
        Item::Monomial(e) => Ok(hits(e, &c.zero_vars)),
        Item::Binomial(p) => match (hits(&p.fplus, &c.zero_vars), hits(&p.fminus, &c.zero_vars)) {
            (true, true) => Ok(true),
            (true, false) | (false, true) => Ok(false),
            (false, false) => match charset(c.n, &c.laurent_chain(), c.sigma)?.proper() {
                Some(rho) => member(&to_laurent(p), &rho),
                None => Ok(true),
            },
        },
    }
}

/// A system of binomials and monomials with its dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialSystem {
    pub n: usize,
    pub items: Vec<Item>,
}

fn item_of(terms: &[Term], n: usize) -> Result<Item> {
    for t in terms {
        if t.exps.values().any(|e| !e.is_nonnegative()) {
            return t.err("exponents must have nonnegative coefficients");
        }
    }
    match terms {
        [a] => Ok(Item::Monomial(a.exponent(n))),
        [a, b] => match PlainBinomial::from_terms(&a.coeff, &a.exponent(n), &b.coeff, &b.exponent(n)) {
            Ok(x) => Ok(Item::Binomial(x)),
            Err(Error::NotABinomial) => a.err("both terms have the same monomial"),
            Err(Error::DegenerateInput(m)) => a.err(m),
            Err(e) => Err(e),
        },
        _ => unreachable!("one or two terms per line"),
    }
}

/// Parse binomials such as `y1*y3^(2) - y2^(x)` and monomials such as
/// `y1*y2`, one per line, with an optional `dim n` line.
pub fn parse_binomials(src: &str) -> Result<BinomialSystem> {
    let (n, lines) = parse_terms(src)?;
    let items = lines.iter().map(|t| item_of(t, n)).collect::<Result<_>>()?;
    Ok(BinomialSystem { n, items })
}

pub fn print_binomials(sys: &BinomialSystem) -> String {
    let mut out = format!("dim {}\n", sys.n);
    for it in &sys.items {
        out.push_str(&format!("{it}\n"));
    }
    out
}

fn var_list(vs: &BTreeSet<usize>) -> String {
    vs.iter().map(|v| format!(" y{}", v + 1)).collect()
}

/// Components as text: `dim n`, then per component a `component` line,
/// optional `zero ...` and `nonzero ...` lines, and the chain.
pub fn print_components(n: usize, comps: &[Component]) -> String {
    let mut out = format!("dim {n}\n");
    for c in comps {
        out.push_str("component\n");
        if !c.zero_vars.is_empty() {
            out.push_str(&format!("zero{}\n", var_list(&c.zero_vars)));
        }
        if !c.nonzero_vars.is_empty() {
            out.push_str(&format!("nonzero{}\n", var_list(&c.nonzero_vars)));
        }
        for b in &c.chain {
            out.push_str(&format!("{b}\n"));
        }
    }
    out
}

fn parse_vars(c: &mut Cursor<'_>, n: usize) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    while c.eat('y') {
        let i = c.small_uint()?;
        if i == 0 || i > n {
            return c.err(format!("variable y{i} out of range"));
        }
        out.insert(i - 1);
    }
    c.expect_end()?;
    Ok(out)
}

/// Inverse of [`print_components`]; the `dim` line is required.
pub fn parse_components(src: &str, s: SigmaConfig) -> Result<Vec<Component>> {
    let mut lines = content_lines(src);
    let n = match lines.next() {
        Some((ln, l)) => {
            let mut c = Cursor::new(l, ln, 0);
            if !c.eat_str("dim") {
                return c.err("expected 'dim n'");
            }
            let n = c.small_uint()?;
            c.expect_end()?;
            n
        }
        None => return Ok(Vec::new()),
    };
    let mut out: Vec<Component> = Vec::new();
    for (ln, l) in lines {
        let mut c = Cursor::new(l, ln, 0);
        if c.eat_str("component") {
            c.expect_end()?;
            out.push(Component { n, sigma: s, zero_vars: BTreeSet::new(), chain: Vec::new(), nonzero_vars: BTreeSet::new() });
            continue;
        }
        let Some(cur) = out.last_mut() else { return c.err("expected 'component'") };
        if c.eat_str("nonzero") {
            cur.nonzero_vars = parse_vars(&mut c, n)?;
        } else if c.eat_str("zero") {
            cur.zero_vars = parse_vars(&mut c, n)?;
        } else {
            let terms = c.binomial_terms()?;
            if let Some(i) = terms.iter().flat_map(|t| t.exps.keys()).find(|&&i| i > n) {
                return c.err(format!("variable y{i} out of range"));
            }
            match item_of(&terms, n)? {
                Item::Binomial(b) => cur.chain.push(b),
                Item::Monomial(_) => return terms[0].err("a component chain holds binomials only"),
            }
        }
    }
    Ok(out)
}
