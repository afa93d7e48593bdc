//! Laurent binomial σ-ideals, stored as partial characters: a GHNF lattice
//! basis together with the value `ρ(g)` of every basis column `g`.
//!
//! `ρ(x f) = σ(ρ(f))`, so `ρ(Σ q_j g_j) = ∏ pow_zx(ρ(g_j), q_j)`.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::constants::{x_minus_o, FieldConst, SigmaConfig};
use crate::error::{Error, Result};
use crate::lattice::{ghnf_tracked, grem_track, syzygy_basis, GhnfBasis, LatVec};
use crate::poly::{invmod, IntPoly};
use crate::saturation::{is_saturated, sat_z, xfactor, zfactor, SatKind, SatWitnessZ};
use crate::text::{content_lines, parse_terms, print_monomial};

/// `Y^support - constant` with a normal (or zero) support.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentBinomial {
    pub support: LatVec,
    pub constant: FieldConst,
}

impl LaurentBinomial {
    /// `Y^f - c`, rewritten as `Y^{-f} - c^{-1}` when `f` is not normal.
    pub fn new(support: LatVec, constant: FieldConst) -> Self {
        let (support, flipped) = support.normalized();
        let constant = if flipped { constant.inv() } else { constant };
        LaurentBinomial { support, constant }
    }

    /// The normal form of `a Y^{a_exp} + b Y^{b_exp}`.
    pub fn normalize(a: &FieldConst, a_exp: &LatVec, b: &FieldConst, b_exp: &LatVec) -> Result<Self> {
        if a_exp.dim() != b_exp.dim() {
            return Err(Error::Dimension { expected: a_exp.dim(), found: b_exp.dim() });
        }
        if a_exp == b_exp {
            return Err(Error::NotABinomial);
        }
        Ok(Self::new(a_exp.sub(b_exp), b.div(a).neg()))
    }

    pub fn dim(&self) -> usize {
        self.support.dim()
    }
}

impl fmt::Display for LaurentBinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", print_monomial(&self.support), self.constant)
    }
}

/// A lattice with a compatible constant for every basis column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialCharacter {
    pub n: usize,
    pub sigma: SigmaConfig,
    pub basis: GhnfBasis,
    pub constants: Vec<FieldConst>,
}

impl PartialCharacter {
    /// The generators `Y^{g_i} - ρ(g_i)`; a regular and coherent chain.
    pub fn chain(&self) -> Vec<LaurentBinomial> {
        self.basis
            .columns()
            .iter()
            .zip(&self.constants)
            .map(|(g, c)| LaurentBinomial { support: g.clone(), constant: c.clone() })
            .collect()
    }

    /// `ρ(v)`, or `None` when `v` is outside the lattice.
    pub fn value(&self, v: &LatVec) -> Result<Option<FieldConst>> {
        let (r, q) = grem_track(v, &self.basis)?;
        if !r.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.combine(&q)))
    }

    fn combine(&self, q: &[IntPoly]) -> FieldConst {
        eval_product(&self.constants, q, self.sigma)
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    fn sort_key(&self) -> (Vec<String>, Vec<String>) {
        (
            self.basis.columns().iter().map(|c| c.to_string()).collect(),
            self.constants.iter().map(FieldConst::canonical_key).collect(),
        )
    }
}

impl fmt::Display for PartialCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.n)?;
        for b in self.chain() {
            writeln!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Either the whole ring or a proper ideal given by its character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealResult {
    Unit,
    Proper(PartialCharacter),
}

impl IdealResult {
    pub fn proper(self) -> Option<PartialCharacter> {
        match self {
            IdealResult::Unit => None,
            IdealResult::Proper(c) => Some(c),
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, IdealResult::Unit)
    }
}

fn eval_product(cs: &[FieldConst], q: &[IntPoly], s: SigmaConfig) -> FieldConst {
    cs.iter().zip(q).filter(|(_, e)| !e.is_zero()).fold(FieldConst::one(), |acc, (c, e)| acc.mul(&c.pow_zx(e, s)))
}

fn check_dims(n: usize, bs: &[LaurentBinomial]) -> Result<()> {
    match bs.iter().find(|b| b.dim() != n) {
        Some(b) => Err(Error::Dimension { expected: n, found: b.dim() }),
        None => Ok(()),
    }
}

/// The character of `[binomials]`, or `Unit` when some syzygy of the
/// supports carries a constant other than 1.
///
/// The syzygies of the supports are generated by `e_i - q_i`, where `q_i`
/// expresses `f_i` over the GHNF basis, together with the basis syzygies
/// pulled back through the transformation. So it suffices that every input
/// evaluates to its own constant and every basis syzygy evaluates to 1.
pub fn make_character(n: usize, binomials: &[LaurentBinomial], s: SigmaConfig) -> Result<IdealResult> {
    check_dims(n, binomials)?;
    let supports: Vec<LatVec> = binomials.iter().map(|b| b.support.clone()).collect();
    let constants: Vec<FieldConst> = binomials.iter().map(|b| b.constant.clone()).collect();
    let (basis, t) = ghnf_tracked(n, &supports)?;
    let constants = t.iter().map(|row| eval_product(&constants, row, s)).collect();
    let rho = PartialCharacter { n, sigma: s, basis, constants };
    for x in syzygy_basis(&rho.basis) {
        if !rho.combine(&x).is_one() {
            return Ok(IdealResult::Unit);
        }
    }
    for b in binomials {
        if !member(b, &rho)? {
            return Ok(IdealResult::Unit);
        }
    }
    Ok(IdealResult::Proper(rho))
}

/// A characteristic set of `[binomials]`: the chain of [`make_character`].
pub fn charset(n: usize, binomials: &[LaurentBinomial], s: SigmaConfig) -> Result<IdealResult> {
    make_character(n, binomials, s)
}

/// Reduce `b` by the chain: support `grem(f)` and the constant carried along.
pub fn prem_binomial(b: &LaurentBinomial, rho: &PartialCharacter) -> Result<LaurentBinomial> {
    let (r, q) = grem_track(&b.support, &rho.basis)?;
    Ok(LaurentBinomial::new(r, b.constant.div(&rho.combine(&q))))
}

/// Whether `b` lies in the ideal of `rho`.
pub fn member(b: &LaurentBinomial, rho: &PartialCharacter) -> Result<bool> {
    let r = prem_binomial(b, rho)?;
    Ok(r.support.is_zero() && r.constant.is_one())
}

pub fn is_prime(rho: &PartialCharacter) -> bool {
    zfactor(&rho.basis).is_empty()
}

pub fn is_reflexive(rho: &PartialCharacter) -> bool {
    xfactor(&rho.basis).is_empty()
}

fn small(m: &BigInt) -> Result<u64> {
    u64::try_from(m).map_err(|_| Error::DegenerateInput("saturation multiplier does not fit in 64 bits"))
}

/// For every Z-saturation generator `g` with `m g ∈ L`, `m ≠ 1`: the
/// binomial `Y^{(x - o_m) g} - r^{x - o_m}` with `r` an m-th root of `ρ(m g)`.
/// `pick` selects which root.
fn m_rule_binomials(rho: &PartialCharacter, pick: u64) -> Result<Vec<LaurentBinomial>> {
    let tb = sat_z(rho.n, rho.basis.columns())?;
    let mut out = Vec::new();
    for (g, m) in tb.basis.columns().iter().zip(&tb.multipliers) {
        if m.is_one() {
            continue;
        }
        let c = rho.value(&g.scale_int(m))?.expect("multiple lies in the lattice");
        let k = small(m)?;
        let r = &c.kth_root(k, pick % k);
        let e = x_minus_o(m, rho.sigma);
        out.push(LaurentBinomial::new(g.scale(&e), r.pow_zx(&e, rho.sigma)));
    }
    Ok(out)
}

/// Constant compatibility of the M-rule on the generators, with principal roots.
fn m_compatible(rho: &PartialCharacter) -> Result<bool> {
    for b in m_rule_binomials(rho, 0)? {
        if !member(&b, rho)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_wellmixed(rho: &PartialCharacter) -> Result<bool> {
    Ok(is_saturated(&rho.basis, SatKind::M, rho.sigma)
        && m_compatible(rho)?
        && !wellmixed_closure(rho.n, &rho.chain(), rho.sigma)?.is_unit())
}

pub fn is_perfect(rho: &PartialCharacter) -> Result<bool> {
    Ok(is_saturated(&rho.basis, SatKind::P, rho.sigma) && !perfect_closure(rho.n, &rho.chain(), rho.sigma)?.is_unit())
}

/// The reflexive closure: adjoin `Y^h - σ^{-1}(∏ d_j^{e_j})` for every
/// x-factor witness `x h = Σ e_j g_j` until the lattice is x-saturated.
pub fn reflexive_closure(n: usize, binomials: &[LaurentBinomial], s: SigmaConfig) -> Result<IdealResult> {
    let mut cur = binomials.to_vec();
    loop {
        let Some(rho) = charset(n, &cur, s)?.proper() else { return Ok(IdealResult::Unit) };
        let w = xfactor(&rho.basis);
        if w.is_empty() {
            return Ok(IdealResult::Proper(rho));
        }
        cur = rho.chain();
        for x in w {
            let c = rho.constants.iter().zip(&x.e).fold(FieldConst::one(), |acc, (d, e)| acc.mul(&d.pow(e)));
            cur.push(LaurentBinomial::new(x.h, c.sigma_inv_pow(1, s)));
        }
    }
}

/// The well-mixed closure, using principal roots.
pub fn wellmixed_closure(n: usize, binomials: &[LaurentBinomial], s: SigmaConfig) -> Result<IdealResult> {
    wellmixed_closure_with_root(n, binomials, s, 0)
}

/// The well-mixed closure taking root number `pick` (mod m) among the m-th
/// roots at every step. The result does not depend on `pick`.
pub fn wellmixed_closure_with_root(
    n: usize,
    binomials: &[LaurentBinomial],
    s: SigmaConfig,
    pick: u64,
) -> Result<IdealResult> {
    let mut cur = binomials.to_vec();
    loop {
        let Some(rho) = charset(n, &cur, s)?.proper() else { return Ok(IdealResult::Unit) };
        let mut extra = Vec::new();
        for b in m_rule_binomials(&rho, pick)? {
            if !member(&b, &rho)? {
                extra.push(b);
            }
        }
        if extra.is_empty() {
            return Ok(IdealResult::Proper(rho));
        }
        cur = rho.chain();
        cur.extend(extra);
    }
}

/// Reflexive and well-mixed closures alternated until nothing changes.
pub fn perfect_closure(n: usize, binomials: &[LaurentBinomial], s: SigmaConfig) -> Result<IdealResult> {
    let Some(mut cur) = charset(n, binomials, s)?.proper() else { return Ok(IdealResult::Unit) };
    loop {
        let Some(r) = reflexive_closure(n, &cur.chain(), s)?.proper() else { return Ok(IdealResult::Unit) };
        let Some(w) = wellmixed_closure(n, &r.chain(), s)?.proper() else { return Ok(IdealResult::Unit) };
        if w == cur {
            return Ok(IdealResult::Proper(w));
        }
        cur = w;
    }
}

/// Decompose the perfect closure of `[binomials]` into reflexive prime
/// components. Empty when the perfect closure is the unit ideal.
pub fn dec_laurent(n: usize, binomials: &[LaurentBinomial], s: SigmaConfig) -> Result<Vec<PartialCharacter>> {
    let Some(start) = reflexive_closure(n, binomials, s)?.proper() else { return Ok(Vec::new()) };
    let mut work = VecDeque::from([start]);
    let mut out: Vec<PartialCharacter> = Vec::new();
    while let Some(rho) = work.pop_front() {
        let h = zfactor(&rho.basis);
        if h.is_empty() {
            if !out.contains(&rho) {
                out.push(rho);
            }
            continue;
        }
        work.extend(extend_by_roots(&rho, &h)?);
    }
    out.sort_by_key(PartialCharacter::sort_key);
    Ok(out)
}

/// All proper characters on `L + (h_1, ..., h_t)` that extend `rho` and give
/// each `Y^{h_i}` a p-th root of `ρ(p h_i)`.
///
/// Write the roots as `r_i ζ_p^{j_i}` with `r_i` principal. Every constant of
/// the extended character, and every consistency condition, is then a fixed
/// constant times `ζ_p` to a linear form in `j`, so the admissible tuples
/// are the solutions of a linear system over Z_p. This replaces trying all
/// `p^t` tuples.
fn extend_by_roots(rho: &PartialCharacter, wits: &[SatWitnessZ]) -> Result<Vec<PartialCharacter>> {
    let p = wits[0].k;
    debug_assert!(wits.iter().all(|w| w.k == p));
    let (n, sig) = (rho.n, rho.sigma);
    let eps = BigInt::from(match sig {
        SigmaConfig::Identity => 1,
        SigmaConfig::Conjugation => -1,
    });
    let modp = |a: &IntPoly| -> u64 {
        let v = a.eval(&eps) % BigInt::from(p);
        u64::try_from(if v < BigInt::zero() { v + p } else { v }).expect("residue")
    };
    let chain = rho.chain();
    let s0 = chain.len();
    let mut pool = chain;
    let mut signs = Vec::new();
    for w in wits {
        let r = rho.combine(&w.e).principal_root(p);
        let (h, flipped) = w.h.normalized();
        signs.push(if flipped { p - 1 } else { 1 });
        pool.push(LaurentBinomial { support: h, constant: if flipped { r.inv() } else { r } });
    }
    let t = wits.len();
    let supports: Vec<LatVec> = pool.iter().map(|b| b.support.clone()).collect();
    let pool_consts: Vec<FieldConst> = pool.iter().map(|b| b.constant.clone()).collect();
    let (basis, tr) = ghnf_tracked(n, &supports)?;
    let base: Vec<FieldConst> = tr.iter().map(|row| eval_product(&pool_consts, row, sig)).collect();
    // Exponent of ζ_p^{j_i} in the constant of each basis column.
    let wcol: Vec<Vec<u64>> =
        tr.iter().map(|row| (0..t).map(|i| modp(&row[s0 + i]) * signs[i] % p).collect()).collect();
    let fold_w = |q: &[IntPoly]| -> Vec<u64> {
        let mut w = vec![0u64; t];
        for (qc, wc) in q.iter().zip(&wcol) {
            let a = modp(qc);
            for (x, y) in w.iter_mut().zip(wc) {
                *x = ((*x as u128 + a as u128 * *y as u128) % p as u128) as u64;
            }
        }
        w
    };
    let mut conds: Vec<(FieldConst, Vec<u64>)> = Vec::new();
    for x in syzygy_basis(&basis) {
        conds.push((eval_product(&base, &x, sig), fold_w(&x)));
    }
    for (m, b) in pool.iter().enumerate() {
        let (r, q) = grem_track(&b.support, &basis)?;
        debug_assert!(r.is_zero());
        let mut w = fold_w(&q);
        if m >= s0 {
            w[m - s0] = (w[m - s0] + p - signs[m - s0]) % p;
        }
        conds.push((eval_product(&base, &q, sig).div(&b.constant), w));
    }
    // A ζ_p^{w·j} = 1 needs A = ζ_p^{-c}, then w·j ≡ c (mod p).
    let mut rows = Vec::new();
    for (a, w) in conds {
        let c = BigRational::from_integer(BigInt::from(p)) * a.turn();
        if !a.radical().is_empty() || !c.is_integer() {
            return Ok(Vec::new());
        }
        let c = (BigInt::from(p) - c.to_integer() % p) % p;
        rows.push((w, u64::try_from(c).expect("residue")));
    }
    let Some(sols) = solve_mod(p, t, rows) else { return Ok(Vec::new()) };
    Ok(sols
        .into_iter()
        .map(|j| {
            let constants = base
                .iter()
                .zip(&wcol)
                .map(|(b, wc)| {
                    let e = wc.iter().zip(&j).fold(0u128, |acc, (x, y)| (acc + *x as u128 * *y as u128) % p as u128);
                    b.mul(&FieldConst::root_of_unity(BigRational::new(BigInt::from(e), BigInt::from(p))))
                })
                .collect();
            PartialCharacter { n, sigma: sig, basis: basis.clone(), constants }
        })
        .collect())
}

/// All `j ∈ Z_p^t` with `w·j ≡ c` for every row `(w, c)`; `None` if there is none.
fn solve_mod(p: u64, t: usize, mut rows: Vec<(Vec<u64>, u64)>) -> Option<Vec<Vec<u64>>> {
    let mulm = |a: u64, b: u64| (a as u128 * b as u128 % p as u128) as u64;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..t {
        let Some(k) = (r..rows.len()).find(|&k| rows[k].0[col] != 0) else { continue };
        rows.swap(r, k);
        let inv = invmod(rows[r].0[col], p);
        let (w, c) = &mut rows[r];
        w.iter_mut().for_each(|x| *x = mulm(*x, inv));
        *c = mulm(*c, inv);
        let (pw, pc) = rows[r].clone();
        for (k, (w, c)) in rows.iter_mut().enumerate() {
            if k == r || w[col] == 0 {
                continue;
            }
            let f = w[col];
            for (x, y) in w.iter_mut().zip(&pw) {
                *x = (*x + p - mulm(f, *y)) % p;
            }
            *c = (*c + p - mulm(f, pc)) % p;
        }
        pivots.push((r, col));
        r += 1;
    }
    if rows[r..].iter().any(|(_, c)| *c != 0) {
        return None;
    }
    let free: Vec<usize> = (0..t).filter(|c| pivots.iter().all(|&(_, pc)| pc != *c)).collect();
    let total = (p as u128).checked_pow(free.len() as u32).expect("solution count overflow");
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut j = vec![0u64; t];
        for &f in &free {
            j[f] = (code % p as u128) as u64;
            code /= p as u128;
        }
        for &(row, col) in &pivots {
            let (w, c) = &rows[row];
            let rest = free.iter().fold(0u64, |acc, &f| (acc + mulm(w[f], j[f])) % p);
            j[col] = (*c + p - rest) % p;
        }
        out.push(j);
    }
    Some(out)
}

/// `n - rank` for a reflexive prime character.
pub fn dimension(rho: &PartialCharacter) -> Result<usize> {
    if !(is_reflexive(rho) && is_prime(rho)) {
        return Err(Error::NotReflexivePrime);
    }
    Ok(rho.n - rho.rank())
}

/// A system of Laurent binomials with its dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSystem {
    pub n: usize,
    pub binomials: Vec<LaurentBinomial>,
}

/// Parse Laurent binomials, one per line, such as `y1^(x)*y2^(-2) - 2`.
/// `dim n` fixes the number of variables; otherwise the largest index is used.
pub fn parse_laurent(src: &str) -> Result<LaurentSystem> {
    let (n, lines) = parse_terms(src)?;
    let mut binomials = Vec::new();
    for terms in lines {
        let [a, b] = terms.as_slice() else {
            return terms[0].err("a Laurent binomial needs two terms");
        };
        match LaurentBinomial::normalize(&a.coeff, &a.exponent(n), &b.coeff, &b.exponent(n)) {
            Ok(x) => binomials.push(x),
            Err(Error::NotABinomial) => return a.err("both terms have the same monomial"),
            Err(e) => return Err(e),
        }
    }
    Ok(LaurentSystem { n, binomials })
}

/// Canonical text; [`parse_laurent`] of it gives back the same system.
pub fn print_laurent(sys: &LaurentSystem) -> String {
    let mut out = format!("dim {}\n", sys.n);
    for b in &sys.binomials {
        out.push_str(&format!("{b}\n"));
    }
    out
}

/// Characters as text: `dim n`, then per character a `component` line and
/// its chain.
pub fn print_components(n: usize, comps: &[PartialCharacter]) -> String {
    let mut out = format!("dim {n}\n");
    for c in comps {
        out.push_str("component\n");
        for b in c.chain() {
            out.push_str(&format!("{b}\n"));
        }
    }
    out
}

/// Inverse of [`print_components`]; the `dim` line is required.
pub fn parse_components(src: &str, s: SigmaConfig) -> Result<Vec<PartialCharacter>> {
    let lines: Vec<(usize, &str)> = content_lines(src).collect();
    let Some(&(dim_line, first)) = lines.first() else { return Ok(Vec::new()) };
    if !first.trim_start().starts_with("dim") {
        return Err(Error::Parse { line: dim_line, col: 1, msg: "expected 'dim n'".into() });
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &(ln, l) in &lines[1..] {
        if l.trim() == "component" {
            blocks.push(Vec::new());
        } else if let Some(b) = blocks.last_mut() {
            b.push(ln);
        } else {
            return Err(Error::Parse { line: ln, col: 1, msg: "expected 'component'".into() });
        }
    }
    // Each block is parsed on a copy of the text with the other lines blanked,
    // so positions in errors stay those of the original input.
    let all: Vec<&str> = src.lines().collect();
    let mut out = Vec::new();
    for b in blocks {
        let masked: Vec<&str> =
            (1..=all.len()).map(|ln| if ln == dim_line || b.contains(&ln) { all[ln - 1] } else { "" }).collect();
        let sys = parse_laurent(&masked.join("\n"))?;
        match make_character(sys.n, &sys.binomials, s)? {
            IdealResult::Proper(rho) => out.push(rho),
            IdealResult::Unit => {
                let line = b.first().copied().unwrap_or(dim_line);
                return Err(Error::Parse { line, col: 1, msg: "component is the unit ideal".into() });
            }
        }
    }
    Ok(out)
}
