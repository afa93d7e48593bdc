//! Saturations of Z[x]-lattices by x, by integers, by the rule
//! `m g ∈ L ⟹ (x - o_m) g ∈ L`, and by x and that rule together.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::constants::{x_minus_o, SigmaConfig};
use crate::error::Result;
use crate::lattice::{c_minus, combine, ghnf, ghnf_tracked, grem, grem_track, GhnfBasis, LatVec};
use crate::pid::{hnf_modpoly, ker_int, ker_modpoly, scalar_kernel, IntMat, ModPolyMat};
use crate::poly::{lift, mod_reduce, IntPoly, ModPoly};

/// `x h = Σ e_l c_l` with integer `e` and `h` outside the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatWitnessX {
    pub h: LatVec,
    pub e: Vec<BigInt>,
}

/// `k h = Σ e_l c_l` with `h` outside the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatWitnessZ {
    pub h: LatVec,
    pub k: u64,
    pub e: Vec<IntPoly>,
}

/// A basis whose column `i` satisfies `multipliers[i] * column_i ∈ L0` for
/// the lattice `L0` the computation started from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedBasis {
    pub basis: GhnfBasis,
    pub multipliers: Vec<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SatKind {
    X,
    Z,
    M,
    P,
}

impl std::str::FromStr for SatKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "x" => Ok(SatKind::X),
            "z" => Ok(SatKind::Z),
            "m" => Ok(SatKind::M),
            "p" => Ok(SatKind::P),
            _ => Err(format!("unknown saturation kind '{s}', expected one of x, z, m, p")),
        }
    }
}

/// Witnesses that the lattice is not x-saturated; empty iff it is.
pub fn xfactor(basis: &GhnfBasis) -> Vec<SatWitnessX> {
    let cols = basis.columns();
    let f = IntMat::new(basis.dim(), cols.iter().map(LatVec::at_zero).collect());
    let mut out = Vec::new();
    for e in ker_int(&f) {
        let coeffs: Vec<IntPoly> = e.iter().map(|a| IntPoly::constant(a.clone())).collect();
        let h = combine(basis.dim(), &coeffs, cols).unshift(1).expect("constant terms cancel");
        if !basis.contains(&h) {
            out.push(SatWitnessX { h, e });
        }
    }
    out
}

/// The x-saturation of the lattice spanned by `gens`.
pub fn sat_x(n: usize, gens: &[LatVec]) -> Result<GhnfBasis> {
    let mut g = ghnf(n, gens)?;
    loop {
        let w = xfactor(&g);
        if w.is_empty() {
            return Ok(g);
        }
        let mut next = g.columns().to_vec();
        for x in w {
            next.push(grem(&x.h, &g)?);
        }
        g = ghnf(n, &next)?;
    }
}

fn to_mod(v: &LatVec, p: u64) -> Vec<ModPoly> {
    v.entries().iter().map(|e| mod_reduce(e, p)).collect()
}

fn prime_factors(mut q: BigInt) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= q {
        if (&q % d).is_zero() {
            out.push(d);
            while (&q % d).is_zero() {
                q /= d;
            }
        }
        d += 1;
    }
    if q > BigInt::one() {
        out.push(u64::try_from(&q).expect("leading coefficients fit in u64"));
    }
    out
}

/// Build a witness from `e` with `Σ e_l c_l ≡ 0 (mod p)`, shrinking `h`
/// modulo the lattice. `None` when `h` is a member.
fn witness_z(basis: &GhnfBasis, p: u64, mut e: Vec<IntPoly>) -> Option<SatWitnessZ> {
    let v = combine(basis.dim(), &e, basis.columns());
    let h = v.exact_div(&BigInt::from(p)).expect("combination divisible by p");
    let (h, q) = grem_track(&h, basis).expect("dimension");
    if h.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    for (a, b) in e.iter_mut().zip(q) {
        *a = &*a - &b.scale(&pb);
    }
    Some(SatWitnessZ { h, k: p, e })
}

/// Reduce `v` over Z_p[x] against a Hermite normal form with `rank`
/// leading nonzero columns; returns the residue and `a` with
/// `residue = v + Σ a_k b_k`.
fn grem_mod(v: &[ModPoly], b: &ModPolyMat, rank: usize) -> (Vec<ModPoly>, Vec<ModPoly>) {
    let p = b.p;
    let mut r = v.to_vec();
    let mut a = vec![ModPoly::zero(p); rank];
    for k in (0..rank).rev() {
        let row = b.columns[k].iter().rposition(|e| !e.is_zero()).expect("pivot");
        let (q, _) = r[row].divrem(&b.columns[k][row]).expect("nonzero pivot");
        if q.is_zero() {
            continue;
        }
        for (d, s) in r.iter_mut().zip(&b.columns[k]) {
            *d = d.sub(&q.mul(s));
        }
        a[k] = q.neg();
    }
    (r, a)
}

/// Witnesses for the smallest prime `p` for which the lattice is not
/// p-saturated; empty iff the lattice is Z-saturated.
pub fn zfactor(basis: &GhnfBasis) -> Vec<SatWitnessZ> {
    let q: BigInt = basis.blocks().iter().map(|b| b.leads[0].clone()).product();
    if q.is_one() {
        return Vec::new();
    }
    let s = basis.len();
    let ends: Vec<usize> = basis.blocks().iter().map(|b| b.end()).collect();
    for p in prime_factors(q) {
        let f = ModPolyMat::new(p, basis.dim(), ends.iter().map(|&j| to_mod(&basis.columns()[j], p)).collect());
        let g = ker_modpoly(&f);
        if !g.is_empty() {
            let out: Vec<_> = g
                .iter()
                .filter_map(|gv| {
                    let mut e = vec![IntPoly::zero(); s];
                    for (k, &j) in ends.iter().enumerate() {
                        e[j] = lift(&gv[k]);
                    }
                    witness_z(basis, p, e)
                })
                .collect();
            if !out.is_empty() {
                return out;
            }
            continue;
        }
        let (b, t) = hnf_modpoly(&f);
        let rank = ends.len();
        let mut residues = Vec::new();
        let mut exprs = Vec::new();
        for sc in c_minus(basis) {
            let (r, a) = grem_mod(&to_mod(&sc.vec, p), &b, rank);
            let mut e = vec![IntPoly::zero(); s];
            e[sc.column] = IntPoly::monomial(1, sc.shift);
            for (j, &col) in ends.iter().enumerate() {
                let mut acc = ModPoly::zero(p);
                for (k, ak) in a.iter().enumerate() {
                    acc = acc.add(&t.columns[k][j].mul(ak));
                }
                e[col] = &e[col] + &lift(&acc);
            }
            residues.push(r);
            exprs.push(e);
        }
        let zero_hits: Vec<_> = residues
            .iter()
            .zip(&exprs)
            .filter(|(r, _)| r.iter().all(ModPoly::is_zero))
            .filter_map(|(_, e)| witness_z(basis, p, e.clone()))
            .collect();
        if !zero_hits.is_empty() {
            return zero_hits;
        }
        let em = ModPolyMat::new(p, basis.dim(), residues);
        let out: Vec<_> = scalar_kernel(&em)
            .into_iter()
            .filter_map(|d| {
                let mut e = vec![IntPoly::zero(); s];
                for (bi, ei) in d.iter().zip(&exprs) {
                    if *bi == 0 {
                        continue;
                    }
                    let c = BigInt::from(*bi);
                    for (acc, x) in e.iter_mut().zip(ei) {
                        *acc = &*acc + &x.scale(&c);
                    }
                }
                witness_z(basis, p, e)
            })
            .collect();
        if !out.is_empty() {
            return out;
        }
    }
    Vec::new()
}

/// The Z-saturation with multipliers relative to the lattice of `gens`.
pub fn sat_z(n: usize, gens: &[LatVec]) -> Result<TrackedBasis> {
    let mut pool: Vec<(LatVec, BigInt)> = gens.iter().map(|g| (g.clone(), BigInt::one())).collect();
    loop {
        let vecs: Vec<LatVec> = pool.iter().map(|g| g.0.clone()).collect();
        let (basis, t) = ghnf_tracked(n, &vecs)?;
        let mults: Vec<BigInt> = t
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&pool)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(BigInt::one(), |acc, (_, g)| acc.lcm(&g.1))
            })
            .collect();
        let w = zfactor(&basis);
        if w.is_empty() {
            return Ok(TrackedBasis { basis, multipliers: mults });
        }
        let mut next: Vec<(LatVec, BigInt)> = basis.columns().iter().cloned().zip(mults.iter().cloned()).collect();
        for x in w {
            let m = x
                .e
                .iter()
                .zip(&mults)
                .filter(|(a, _)| !a.is_zero())
                .fold(BigInt::one(), |acc, (_, m)| acc.lcm(m));
            next.push((x.h, m * x.k));
        }
        pool = next;
    }
}

/// The vectors `(x - o_m) g` for the Z-saturation generators with `m ≠ 1`.
fn m_rule_vectors(tb: &TrackedBasis, s: SigmaConfig) -> Vec<LatVec> {
    tb.basis
        .columns()
        .iter()
        .zip(&tb.multipliers)
        .filter(|(_, m)| !m.is_one())
        .map(|(g, m)| g.scale(&x_minus_o(m, s)))
        .collect()
}

/// The M-saturation: adjoin `(x - o_m) g` for every Z-saturation
/// generator `g` with multiplier `m ≠ 1` until nothing new appears.
pub fn sat_m(n: usize, gens: &[LatVec], s: SigmaConfig) -> Result<GhnfBasis> {
    let mut cur = ghnf(n, gens)?;
    loop {
        let tb = sat_z(n, cur.columns())?;
        let extra: Vec<LatVec> = m_rule_vectors(&tb, s).into_iter().filter(|v| !cur.contains(v)).collect();
        if extra.is_empty() {
            return Ok(cur);
        }
        let mut next = cur.columns().to_vec();
        next.extend(extra);
        cur = ghnf(n, &next)?;
    }
}

/// The P-saturation: x- and M-saturation alternated to a joint fixed point.
pub fn sat_p(n: usize, gens: &[LatVec], s: SigmaConfig) -> Result<GhnfBasis> {
    let mut cur = ghnf(n, gens)?;
    loop {
        let next = sat_x(n, sat_m(n, cur.columns(), s)?.columns())?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

/// The full saturation `{f | a x^k f ∈ L for some a ≠ 0, k ≥ 0}`.
pub fn sat_full(n: usize, gens: &[LatVec]) -> Result<GhnfBasis> {
    let mut cur = ghnf(n, gens)?;
    loop {
        let next = sat_x(n, sat_z(n, cur.columns())?.basis.columns())?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

/// Decide saturation of the lattice of a GHNF basis.
pub fn is_saturated(basis: &GhnfBasis, kind: SatKind, s: SigmaConfig) -> bool {
    match kind {
        SatKind::X => xfactor(basis).is_empty(),
        SatKind::Z => zfactor(basis).is_empty(),
        SatKind::M => {
            let tb = sat_z(basis.dim(), basis.columns()).expect("dimension");
            m_rule_vectors(&tb, s).iter().all(|v| basis.contains(v))
        }
        SatKind::P => is_saturated(basis, SatKind::X, s) && is_saturated(basis, SatKind::M, s),
    }
}
