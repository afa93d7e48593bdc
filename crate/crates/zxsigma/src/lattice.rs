//! Z[x]-lattices: vectors in Z[x]^n, the position-over-term order,
//! reduction, Buchberger completion to the generalized Hermite normal
//! form, syzygies and kernels.
//!
//! Rows are indexed from 0 in code. A monomial `a x^k e_i` is larger
//! than `b x^s e_j` when `i > j`, then when `k > s`, then when `|a| > |b|`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{div_floor_pos, ext_gcd, IntPoly};

/// An element of Z[x]^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatVec {
    entries: Vec<IntPoly>,
}

/// A monomial `coeff * x^deg * e_row`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoTerm {
    pub coeff: BigInt,
    pub deg: usize,
    pub row: usize,
}

impl MonoTerm {
    pub fn cmp_order(&self, other: &MonoTerm) -> Ordering {
        self.row
            .cmp(&other.row)
            .then(self.deg.cmp(&other.deg))
            .then(self.coeff.abs().cmp(&other.coeff.abs()))
    }
}

impl LatVec {
    pub fn zeros(n: usize) -> Self {
        LatVec { entries: vec![IntPoly::zero(); n] }
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.entries[i] = IntPoly::one();
        v
    }

    pub fn new(entries: Vec<IntPoly>) -> Self {
        LatVec { entries }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        LatVec { entries: rows.iter().map(|r| IntPoly::from_i64s(r)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[IntPoly] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &IntPoly {
        &self.entries[i]
    }

    pub fn set_entry(&mut self, i: usize, p: IntPoly) {
        self.entries[i] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(IntPoly::is_zero)
    }

    /// Index of the last nonzero row.
    pub fn pivot_row(&self) -> Option<usize> {
        self.entries.iter().rposition(|e| !e.is_zero())
    }

    pub fn leading_term(&self) -> Result<MonoTerm> {
        let row = self.pivot_row().ok_or(Error::ZeroVector)?;
        let e = &self.entries[row];
        let deg = e.degree().expect("nonzero entry");
        Ok(MonoTerm { coeff: e.coeff(deg), deg, row })
    }

    /// Normal means the leading coefficient is positive.
    pub fn is_normal(&self) -> bool {
        self.leading_term().map(|t| t.coeff.is_positive()).unwrap_or(false)
    }

    /// `self` or `-self`, whichever is normal.
    pub fn normalized(&self) -> (LatVec, bool) {
        if self.is_normal() || self.is_zero() {
            (self.clone(), false)
        } else {
            (self.neg(), true)
        }
    }

    pub fn add(&self, o: &LatVec) -> LatVec {
        LatVec { entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &LatVec) -> LatVec {
        LatVec { entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> LatVec {
        LatVec { entries: self.entries.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, p: &IntPoly) -> LatVec {
        LatVec { entries: self.entries.iter().map(|a| a * p).collect() }
    }

    pub fn scale_int(&self, c: &BigInt) -> LatVec {
        LatVec { entries: self.entries.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn shift(&self, k: usize) -> LatVec {
        LatVec { entries: self.entries.iter().map(|a| a.shift(k)).collect() }
    }

    pub fn exact_div(&self, d: &BigInt) -> Result<LatVec> {
        let entries = self.entries.iter().map(|a| a.exact_div(d)).collect::<Result<_>>()?;
        Ok(LatVec { entries })
    }

    pub fn unshift(&self, k: usize) -> Result<LatVec> {
        let entries = self.entries.iter().map(|a| a.unshift(k)).collect::<Result<_>>()?;
        Ok(LatVec { entries })
    }

    /// Constant terms, i.e. the value at x = 0.
    pub fn at_zero(&self) -> Vec<BigInt> {
        self.entries.iter().map(|e| e.coeff(0)).collect()
    }

    fn sub_scaled_shift(&mut self, c: &BigInt, k: usize, o: &LatVec) {
        for (a, b) in self.entries.iter_mut().zip(&o.entries) {
            a.sub_scaled_shift(c, k, b);
        }
    }

    /// Total order used to sort columns: by leading term, then entrywise.
    pub fn cmp_order(&self, o: &LatVec) -> Ordering {
        match (self.leading_term(), o.leading_term()) {
            (Err(_), Err(_)) => Ordering::Equal,
            (Err(_), Ok(_)) => Ordering::Less,
            (Ok(_), Err(_)) => Ordering::Greater,
            (Ok(a), Ok(b)) => a.cmp_order(&b).then_with(|| self.cmp_entries(o)),
        }
    }

    fn cmp_entries(&self, o: &LatVec) -> Ordering {
        for (a, b) in self.entries.iter().zip(&o.entries).rev() {
            let c = a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.coeffs().iter().zip(b.coeffs()).rev() {
                    let o = x.cmp(y);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            });
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for LatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// Dot product of polynomial coefficients with vectors: `Σ q_j v_j`.
pub fn combine(n: usize, coeffs: &[IntPoly], vecs: &[LatVec]) -> LatVec {
    let mut acc = LatVec::zeros(n);
    for (q, v) in coeffs.iter().zip(vecs) {
        if !q.is_zero() {
            acc = acc.add(&v.scale(q));
        }
    }
    acc
}

/// One block of a GHNF: all columns sharing the pivot row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub row: usize,
    /// Index of the first column of the block.
    pub start: usize,
    pub degrees: Vec<usize>,
    pub leads: Vec<BigInt>,
}

impl Block {
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Column index of the block end (largest degree, smallest lead).
    pub fn end(&self) -> usize {
        self.start + self.len() - 1
    }

    /// Position inside the block of the column reducing degree `alpha`.
    fn reducer(&self, alpha: usize) -> Option<usize> {
        self.degrees.iter().rposition(|&d| d <= alpha)
    }
}

/// Columns of a reduced Gröbner basis, ascending, grouped into blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhnfBasis {
    n: usize,
    columns: Vec<LatVec>,
    blocks: Vec<Block>,
}

impl GhnfBasis {
    pub fn empty(n: usize) -> Self {
        GhnfBasis { n, columns: Vec::new(), blocks: Vec::new() }
    }

    /// Wrap columns that are already in block shape (sorted ascending, nonzero).
    /// No reduction is done; use [`verify_ghnf`] to check the result.
    pub fn from_columns(n: usize, mut columns: Vec<LatVec>) -> Result<Self> {
        for c in &columns {
            if c.dim() != n {
                return Err(Error::Dimension { expected: n, found: c.dim() });
            }
        }
        columns.retain(|c| !c.is_zero());
        columns.sort_by(|a, b| a.cmp_order(b));
        let blocks = blocks_of(&columns);
        Ok(GhnfBasis { n, columns, blocks })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[LatVec] {
        &self.columns
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.blocks.len()
    }


    pub fn contains(&self, v: &LatVec) -> bool {
        grem(v, self).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn lattice_equal(&self, other: &GhnfBasis) -> bool {
        self.n == other.n
            && self.columns.iter().all(|c| other.contains(c))
            && other.columns.iter().all(|c| self.contains(c))
    }
}

fn blocks_of(columns: &[LatVec]) -> Vec<Block> {
    let mut blocks: Vec<Block> = Vec::new();
    for (idx, c) in columns.iter().enumerate() {
        let lt = c.leading_term().expect("nonzero column");
        match blocks.last_mut() {
            Some(b) if b.row == lt.row => {
                b.degrees.push(lt.deg);
                b.leads.push(lt.coeff);
            }
            _ => blocks.push(Block { row: lt.row, start: idx, degrees: vec![lt.deg], leads: vec![lt.coeff] }),
        }
    }
    blocks
}

/// A vector together with its expression over the input generators.
#[derive(Clone, Debug)]
struct Tracked {
    v: LatVec,
    t: Vec<IntPoly>,
}

impl Tracked {
    fn sub_scaled_shift(&mut self, c: &BigInt, k: usize, o: &Tracked) {
        self.v.sub_scaled_shift(c, k, &o.v);
        for (a, b) in self.t.iter_mut().zip(&o.t) {
            a.sub_scaled_shift(c, k, b);
        }
    }

    fn neg(&self) -> Tracked {
        Tracked { v: self.v.neg(), t: self.t.iter().map(|a| -a).collect() }
    }

    /// `p*self + q*o` for polynomial multipliers.
    fn lin(p: &IntPoly, a: &Tracked, q: &IntPoly, b: &Tracked) -> Tracked {
        Tracked {
            v: a.v.scale(p).add(&b.v.scale(q)),
            t: a.t.iter().zip(&b.t).map(|(x, y)| &(x * p) + &(y * q)).collect(),
        }
    }

    fn lt(&self) -> MonoTerm {
        self.v.leading_term().expect("nonzero")
    }
}

/// Multipliers `(mf, mg)` with `S(f, g) = mf*f + mg*g`, following the three
/// divisibility cases; `None` when the pivot rows differ.
pub fn s_multipliers(f: &LatVec, g: &LatVec) -> Option<(IntPoly, IntPoly)> {
    let lf = f.leading_term().ok()?;
    let lg = g.leading_term().ok()?;
    if lf.row != lg.row {
        return None;
    }
    if lg.deg > lf.deg {
        let (a, b) = s_multipliers(g, f)?;
        return Some((b, a));
    }
    let (a, b, shift) = (&lf.coeff, &lg.coeff, lf.deg - lg.deg);
    if (a % b).is_zero() {
        Some((IntPoly::one(), -IntPoly::monomial(a / b, shift)))
    } else if (b % a).is_zero() {
        Some((IntPoly::constant(b / a), -IntPoly::monomial(BigInt::one(), shift)))
    } else {
        let (_, u, v) = ext_gcd(a, b).expect("nonzero");
        Some((IntPoly::constant(u), IntPoly::monomial(v, shift)))
    }
}

/// The S-vector of two nonzero vectors; zero when the pivot rows differ.
pub fn s_vector(f: &LatVec, g: &LatVec) -> LatVec {
    match s_multipliers(f, g) {
        None => LatVec::zeros(f.dim()),
        Some((p, q)) => f.scale(&p).add(&g.scale(&q)),
    }
}

/// Reduce row `r` of `h` against the (not necessarily reduced) set `g`.
/// Each term is replaced by its remainder modulo the smallest applicable lead.
fn reduce_row(h: &mut Tracked, r: usize, g: &[&Tracked]) {
    let mut alpha = match h.v.entries[r].degree() {
        Some(d) => d,
        None => return,
    };
    let lts: Vec<MonoTerm> = g.iter().map(|x| x.lt()).collect();
    loop {
        let a = h.v.entries[r].coeff(alpha);
        if !a.is_zero() {
            let best = lts
                .iter()
                .enumerate()
                .filter(|(_, lt)| lt.deg <= alpha)
                .min_by(|(_, p), (_, q)| p.coeff.abs().cmp(&q.coeff.abs()).then(q.deg.cmp(&p.deg)));
            if let Some((i, lt)) = best {
                let c = lt.coeff.abs();
                let (mut q, _) = div_floor_pos(&a, &c);
                if lt.coeff.is_negative() {
                    q = -q;
                }
                if !q.is_zero() {
                    h.sub_scaled_shift(&q, alpha - lt.deg, g[i]);
                }
            }
        }
        if alpha == 0 {
            break;
        }
        alpha -= 1;
    }
}

fn lcm_s_pair(f: &Tracked, g: &Tracked) -> Tracked {
    let (lf, lg) = (f.lt(), g.lt());
    let k = lf.deg.max(lg.deg);
    let l = lf.coeff.lcm(&lg.coeff);
    let p = IntPoly::monomial(&l / &lf.coeff, k - lf.deg);
    let q = -IntPoly::monomial(&l / &lg.coeff, k - lg.deg);
    Tracked::lin(&p, f, &q, g)
}

/// Replace `f` and `g` (leading terms in the same row, `g` of the larger
/// degree) by the gcd combination and the combination cancelling the lead.
/// The 2x2 transformation is unimodular, so the span is unchanged.
fn gcd_merge(f: &Tracked, g: &Tracked) -> (Tracked, Tracked) {
    let (lf, lg) = (f.lt(), g.lt());
    let k = lg.deg - lf.deg;
    let (d, u, v) = ext_gcd(&lf.coeff, &lg.coeff).expect("nonzero");
    let merged = Tracked::lin(&IntPoly::monomial(u, k), f, &IntPoly::constant(v), g);
    let kill = Tracked::lin(&IntPoly::monomial(&lg.coeff / &d, k), f, &IntPoly::constant(-(&lf.coeff / &d)), g);
    (merged, kill)
}

/// Size key used to process small candidates first.
fn size_key(h: &Tracked, r: usize) -> (usize, u64) {
    let e = &h.v.entries[r];
    (e.degree().unwrap_or(0), e.lead().map_or(0, |c| c.bits()))
}

/// Strong Gröbner basis of the row-`r` entries, with the full vectors carried along.
///
/// Keeps one element per leading degree and only checks pairs of neighbouring
/// degrees (the chain criterion covers the rest). Each candidate carries a flag
/// telling whether it is needed to keep the span: S-vectors are not, since the
/// syzygies lifted at the end generate everything they would contribute below
/// row `r`. Needed vectors whose row `r` vanishes are sent to `down`.
fn complete_row(r: usize, input: Vec<Tracked>, down: &mut Vec<Tracked>) -> Vec<Tracked> {
    let mut basis: BTreeMap<usize, (Tracked, bool)> = BTreeMap::new();
    let mut dirty: BTreeSet<usize> = BTreeSet::new();
    let mut queue: Vec<(Tracked, bool)> = input.into_iter().map(|t| (t, true)).collect();

    // `dirty` holds the upper degree of each neighbouring pair to check.
    let mark = |dirty: &mut BTreeSet<usize>, basis: &BTreeMap<usize, (Tracked, bool)>, d: usize| {
        dirty.insert(d);
        if let Some((&e, _)) = basis.range(d + 1..).next() {
            dirty.insert(e);
        }
    };

    loop {
        while !queue.is_empty() {
            let i = (0..queue.len()).min_by_key(|&i| size_key(&queue[i].0, r)).expect("nonempty");
            let (mut h, need) = queue.swap_remove(i);
            let refs: Vec<&Tracked> = basis.values().map(|(t, _)| t).collect();
            reduce_row(&mut h, r, &refs);
            if h.v.entries[r].is_zero() {
                if need && !h.v.is_zero() {
                    down.push(h);
                }
                continue;
            }
            if h.lt().coeff.is_negative() {
                h = h.neg();
            }
            let d = h.lt().deg;
            match basis.remove(&d) {
                Some((old, old_need)) => {
                    let (merged, kill) = gcd_merge(&h, &old);
                    basis.insert(d, (merged, need || old_need));
                    queue.push((kill, need || old_need));
                }
                None => {
                    basis.insert(d, (h, need));
                }
            }
            mark(&mut dirty, &basis, d);
        }
        // Close the leading coefficients under gcd before forming S-vectors.
        let divides = |hi: usize| match basis.range(..hi).next_back() {
            Some((_, (f, _))) => (&f.lt().coeff % &basis[&hi].0.lt().coeff).is_zero(),
            None => true,
        };
        dirty.retain(|&hi| basis.contains_key(&hi) && basis.range(..hi).next_back().is_some());
        let hi = match dirty.iter().rev().copied().find(|&hi| !divides(hi)) {
            Some(hi) => hi,
            None => match dirty.pop_first() {
                Some(hi) => hi,
                None => break,
            },
        };
        dirty.remove(&hi);
        let (&lo, _) = basis.range(..hi).next_back().expect("retained");
        let ((f, f_need), (g, g_need)) = (&basis[&lo], &basis[&hi]);
        let (cf, cg) = (f.lt().coeff, g.lt().coeff);
        if (&cf % &cg).is_zero() {
            let s = Tracked::lin(&IntPoly::monomial(BigInt::one(), hi - lo), f, &IntPoly::constant(-(&cf / &cg)), g);
            queue.push((s, false));
        } else {
            let need = *f_need || *g_need;
            let (merged, kill) = gcd_merge(f, g);
            basis.insert(hi, (merged, need));
            queue.push((kill, need));
            mark(&mut dirty, &basis, hi);
        }
    }

    // Minimize; leading coefficients are already positive and divide downwards.
    let mut kept: Vec<Tracked> = Vec::new();
    for (_, (g, need)) in basis {
        let redundant = kept.last().is_some_and(|m| m.lt().coeff == g.lt().coeff);
        if redundant {
            if need {
                let mut g = g;
                let refs: Vec<&Tracked> = kept.iter().collect();
                reduce_row(&mut g, r, &refs);
                debug_assert!(g.v.entries[r].is_zero());
                if !g.v.is_zero() {
                    down.push(g);
                }
            }
        } else {
            kept.push(g);
        }
    }
    // Syzygies of neighbouring pairs generate all of them.
    let refs: Vec<&Tracked> = kept.iter().collect();
    for w in kept.windows(2) {
        let mut s = lcm_s_pair(&w[0], &w[1]);
        reduce_row(&mut s, r, &refs);
        if !s.v.is_zero() {
            down.push(s);
        }
    }
    kept
}

/// Normal form of `h` with respect to a block-shaped basis; `skip` names one
/// position (row, degree) to leave untouched. Returns the quotients per column.
fn normal_form(h: &mut Tracked, basis_cols: &[Tracked], blocks: &[Block], skip: Option<(usize, usize)>) -> Vec<IntPoly> {
    let mut quot = vec![IntPoly::zero(); basis_cols.len()];
    for b in blocks.iter().rev() {
        let r = b.row;
        let top = match h.v.entries[r].degree() {
            Some(d) => d,
            None => continue,
        };
        for alpha in (0..=top).rev() {
            if skip == Some((r, alpha)) {
                continue;
            }
            let a = h.v.entries[r].coeff(alpha);
            if a.is_zero() {
                continue;
            }
            if let Some(pos) = b.reducer(alpha) {
                let c = &b.leads[pos];
                let (q, _) = div_floor_pos(&a, c);
                if !q.is_zero() {
                    let idx = b.start + pos;
                    let shift = alpha - b.degrees[pos];
                    h.sub_scaled_shift(&q, shift, &basis_cols[idx]);
                    quot[idx] = &quot[idx] + &IntPoly::monomial(q, shift);
                }
            }
        }
    }
    quot
}

/// Buchberger completion with transformation tracking: returns the basis and,
/// for each column, its expression over `gens`.
pub fn ghnf_tracked(n: usize, gens: &[LatVec]) -> Result<(GhnfBasis, Vec<Vec<IntPoly>>)> {
    check_dims(n, gens)?;
    let s = gens.len();
    let pool = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| {
            let mut t = vec![IntPoly::zero(); s];
            t[i] = IntPoly::one();
            Tracked { v: g.clone(), t }
        })
        .collect();
    Ok(complete(n, pool))
}

/// The canonical generalized Hermite normal form of the lattice spanned by `gens`.
pub fn ghnf(n: usize, gens: &[LatVec]) -> Result<GhnfBasis> {
    check_dims(n, gens)?;
    let pool = gens.iter().filter(|g| !g.is_zero()).map(|g| Tracked { v: g.clone(), t: Vec::new() }).collect();
    Ok(complete(n, pool).0)
}

fn check_dims(n: usize, gens: &[LatVec]) -> Result<()> {
    match gens.iter().find(|g| g.dim() != n) {
        Some(g) => Err(Error::Dimension { expected: n, found: g.dim() }),
        None => Ok(()),
    }
}

/// Row-by-row completion from the last row up, then tail reduction.
fn complete(n: usize, mut pool: Vec<Tracked>) -> (GhnfBasis, Vec<Vec<IntPoly>>) {
    let mut cols: Vec<Tracked> = Vec::new();
    for r in (0..n).rev() {
        let (here, rest): (Vec<_>, Vec<_>) = pool.into_iter().partition(|h| h.v.pivot_row() == Some(r));
        pool = rest;
        if here.is_empty() {
            continue;
        }
        let mut down = Vec::new();
        let kept = complete_row(r, here, &mut down);
        pool.extend(down.into_iter().filter(|d| !d.v.is_zero()));
        cols.extend(kept);
    }
    cols.sort_by(|a, b| a.lt().cmp_order(&b.lt()));
    let columns: Vec<LatVec> = cols.iter().map(|c| c.v.clone()).collect();
    let blocks = blocks_of(&columns);
    // Leading terms stay fixed, so one pass of tail reduction suffices.
    for i in 0..cols.len() {
        let lt = cols[i].lt();
        let mut h = cols[i].clone();
        normal_form(&mut h, &cols, &blocks, Some((lt.row, lt.deg)));
        cols[i] = h;
    }
    let columns = cols.iter().map(|c| c.v.clone()).collect();
    let transform = cols.into_iter().map(|c| c.t).collect();
    (GhnfBasis { n, columns, blocks }, transform)
}

fn as_tracked(basis: &GhnfBasis) -> Vec<Tracked> {
    basis.columns.iter().map(|c| Tracked { v: c.clone(), t: Vec::new() }).collect()
}

/// Reduce `v` to its canonical normal form modulo the lattice of `basis`.
pub fn grem(v: &LatVec, basis: &GhnfBasis) -> Result<LatVec> {
    grem_track(v, basis).map(|(r, _)| r)
}

/// Like [`grem`], also returning `q` with `v = r + Σ q_j column_j`.
pub fn grem_track(v: &LatVec, basis: &GhnfBasis) -> Result<(LatVec, Vec<IntPoly>)> {
    if v.dim() != basis.n {
        return Err(Error::Dimension { expected: basis.n, found: v.dim() });
    }
    let cols = as_tracked(basis);
    let mut h = Tracked { v: v.clone(), t: Vec::new() };
    let q = normal_form(&mut h, &cols, &basis.blocks, None);
    Ok((h.v, q))
}

/// Check the defining conditions of a GHNF; returns the list of violations.
///
/// Reducedness is tested leniently: a term `a x^α` counts as reducible by a
/// column with lead `c x^β` when `β <= α` and `|a| >= c`.
pub fn verify_ghnf(basis: &GhnfBasis) -> Vec<String> {
    let mut bad = Vec::new();
    let cols = &basis.columns;
    if cols.iter().any(LatVec::is_zero) {
        bad.push("zero column".to_string());
        return bad;
    }
    for w in cols.windows(2) {
        if w[0].cmp_order(&w[1]) != Ordering::Less {
            bad.push(format!("columns {} and {} not ascending", w[0], w[1]));
        }
    }
    let blocks = blocks_of(cols);
    for w in blocks.windows(2) {
        if w[0].row >= w[1].row {
            bad.push(format!("pivot rows {} and {} not increasing", w[0].row + 1, w[1].row + 1));
        }
    }
    for b in &blocks {
        for w in b.degrees.windows(2) {
            if w[0] >= w[1] {
                bad.push(format!("block of row {}: degrees not strictly increasing", b.row + 1));
            }
        }
        for c in &b.leads {
            if !c.is_positive() {
                bad.push(format!("block of row {}: leading coefficient {c} not positive", b.row + 1));
            }
        }
        for w in b.leads.windows(2) {
            if !w[1].is_zero() && !(&w[0] % &w[1]).is_zero() {
                bad.push(format!("block of row {}: {} does not divide {}", b.row + 1, w[1], w[0]));
            }
        }
    }
    if !bad.is_empty() {
        return bad;
    }
    let checked = GhnfBasis { n: basis.n, columns: cols.clone(), blocks: blocks.clone() };
    for b in &blocks {
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let s = s_vector(&cols[b.start + i], &cols[b.start + j]);
                if !grem(&s, &checked).map(|r| r.is_zero()).unwrap_or(false) {
                    bad.push(format!("S-vector of columns {} and {} does not reduce to zero", b.start + i + 1, b.start + j + 1));
                }
            }
        }
    }
    for (idx, c) in cols.iter().enumerate() {
        let own = c.leading_term().unwrap();
        for (row, e) in c.entries.iter().enumerate() {
            let Some(b) = blocks.iter().find(|b| b.row == row) else { continue };
            for (alpha, a) in e.coeffs().iter().enumerate() {
                if a.is_zero() || (row == own.row && alpha == own.deg) {
                    continue;
                }
                for pos in 0..b.len() {
                    if b.start + pos != idx && b.degrees[pos] <= alpha && a.abs() >= b.leads[pos] {
                        bad.push(format!("column {}: term {a}*x^{alpha} in row {} reducible by column {}", idx + 1, row + 1, b.start + pos + 1));
                    }
                }
            }
        }
    }
    bad
}

/// Generators of the syzygy module of the basis columns, one per pair of
/// columns sharing a pivot row.
pub fn syzygy_basis(basis: &GhnfBasis) -> Vec<Vec<IntPoly>> {
    let s = basis.columns.len();
    let mut out = Vec::new();
    for b in &basis.blocks {
        for i in b.start..=b.end() {
            for j in i + 1..=b.end() {
                let (p, q) = s_multipliers(&basis.columns[i], &basis.columns[j]).expect("same row");
                let sv = basis.columns[i].scale(&p).add(&basis.columns[j].scale(&q));
                let (r, c) = grem_track(&sv, basis).expect("dimension");
                debug_assert!(r.is_zero());
                let mut x: Vec<IntPoly> = c.into_iter().map(|a| -a).collect();
                x[i] = &x[i] + &p;
                x[j] = &x[j] + &q;
                debug_assert_eq!(x.len(), s);
                out.push(x);
            }
        }
    }
    out
}

/// Generators of `{X in Z[x]^s | Σ X_i m_i = 0}`, returned in canonical form.
pub fn gker(n: usize, m: &[LatVec]) -> Result<Vec<Vec<IntPoly>>> {
    let s = m.len();
    let (basis, t) = ghnf_tracked(n, m)?;
    let mut gens: Vec<LatVec> = Vec::new();
    for x in syzygy_basis(&basis) {
        gens.push(LatVec::new(lift_through(&x, &t, s)));
    }
    for (i, col) in m.iter().enumerate() {
        let (r, q) = grem_track(col, &basis)?;
        debug_assert!(r.is_zero());
        let mut rel: Vec<IntPoly> = lift_through(&q, &t, s).into_iter().map(|a| -a).collect();
        rel[i] = &rel[i] + &IntPoly::one();
        gens.push(LatVec::new(rel));
    }
    if s == 0 {
        return Ok(Vec::new());
    }
    let k = ghnf(s, &gens)?;
    Ok(k.columns.into_iter().map(|c| c.entries).collect())
}

/// `T * x` where `T` has one expression (length `s`) per column.
fn lift_through(x: &[IntPoly], t: &[Vec<IntPoly>], s: usize) -> Vec<IntPoly> {
    let mut out = vec![IntPoly::zero(); s];
    for (xj, tj) in x.iter().zip(t) {
        if xj.is_zero() {
            continue;
        }
        for (o, a) in out.iter_mut().zip(tj) {
            *o = &*o + &(xj * a);
        }
    }
    out
}

/// Apply a matrix (given by columns) to a polynomial vector.
pub fn apply(n: usize, m: &[LatVec], x: &[IntPoly]) -> LatVec {
    combine(n, x, m)
}

/// A member of the Z-basis `C_∞` tagged by its column and shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedColumn {
    pub column: usize,
    pub shift: usize,
    pub vec: LatVec,
}

/// The finite part `C_-`: within each block, every column is shifted
/// up to one below the degree of the next column.
pub fn c_minus(basis: &GhnfBasis) -> Vec<ShiftedColumn> {
    let mut out = Vec::new();
    for b in &basis.blocks {
        for k in 0..b.len().saturating_sub(1) {
            for j in 0..(b.degrees[k + 1] - b.degrees[k]) {
                let column = b.start + k;
                out.push(ShiftedColumn { column, shift: j, vec: basis.columns[column].shift(j) });
            }
        }
    }
    out
}

/// `C_-` and the members of `C_∞ = C_- ∪ C^+` whose block-end shift is at most `bound`.
pub fn enumerate_c(basis: &GhnfBasis, bound: usize) -> (Vec<LatVec>, Vec<LatVec>) {
    let minus = c_minus(basis);
    let mut inf: Vec<LatVec> = Vec::new();
    for b in &basis.blocks {
        for sc in minus.iter().filter(|sc| sc.column >= b.start && sc.column <= b.end()) {
            inf.push(sc.vec.clone());
        }
        for j in 0..=bound {
            inf.push(basis.columns[b.end()].shift(j));
        }
    }
    (minus.into_iter().map(|sc| sc.vec).collect(), inf)
}

impl fmt::Display for GhnfBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.columns {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
