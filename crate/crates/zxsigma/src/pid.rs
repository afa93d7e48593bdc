//! Hermite normal forms and kernels over the principal ideal domains Z and
//! Z_p[x], and the Z_p-linear kernel of a matrix over Z_p[x].
//!
//! Matrices are stored by columns, matching the lattice convention.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::poly::{invmod, ModPoly};

/// An integer matrix stored as a list of columns of length `rows`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub columns: Vec<Vec<BigInt>>,
}

impl IntMat {
    pub fn new(rows: usize, columns: Vec<Vec<BigInt>>) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows), "ragged integer matrix");
        IntMat { rows, columns }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let s = rows.first().map_or(0, |x| x.len());
        let columns = (0..s).map(|j| (0..r).map(|i| BigInt::from(rows[i][j])).collect()).collect();
        IntMat::new(r, columns)
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.rows];
        for (c, a) in self.columns.iter().zip(x) {
            for (o, e) in out.iter_mut().zip(c) {
                *o += e * a;
            }
        }
        out
    }
}

/// A matrix over Z_p[x] stored as a list of columns of length `rows`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPolyMat {
    pub p: u64,
    pub rows: usize,
    pub columns: Vec<Vec<ModPoly>>,
}

impl ModPolyMat {
    pub fn new(p: u64, rows: usize, columns: Vec<Vec<ModPoly>>) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows), "ragged matrix");
        assert!(columns.iter().flatten().all(|e| e.modulus() == p), "mixed moduli");
        ModPolyMat { p, rows, columns }
    }

    pub fn identity(p: u64, s: usize) -> Self {
        let columns = (0..s)
            .map(|j| (0..s).map(|i| if i == j { ModPoly::one(p) } else { ModPoly::zero(p) }).collect())
            .collect();
        ModPolyMat { p, rows: s, columns }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn mul_vec(&self, x: &[ModPoly]) -> Vec<ModPoly> {
        let mut out = vec![ModPoly::zero(self.p); self.rows];
        for (c, a) in self.columns.iter().zip(x) {
            for (o, e) in out.iter_mut().zip(c) {
                *o = o.add(&e.mul(a));
            }
        }
        out
    }

    pub fn mul(&self, other: &ModPolyMat) -> ModPolyMat {
        let columns = other.columns.iter().map(|c| self.mul_vec(c)).collect();
        ModPolyMat { p: self.p, rows: self.rows, columns }
    }
}

fn axpy_int(dst: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= q * s;
    }
}

/// Column echelon form over Z by Euclidean column operations, mirrored on
/// `track`. Rows are processed top down; returns the number of pivot columns,
/// which come first. Pivots are positive and the entries to the left of a
/// pivot in its row are reduced into `[0, pivot)`.
fn echelon_int(cols: &mut [Vec<BigInt>], track: &mut [Vec<BigInt>], rows: usize) -> usize {
    let mut k = 0;
    let mut pivots = Vec::new();
    for r in 0..rows {
        loop {
            let nz: Vec<usize> = (k..cols.len()).filter(|&j| !cols[j][r].is_zero()).collect();
            let Some(&m) = nz.iter().min_by_key(|&&j| cols[j][r].abs()) else { break };
            cols.swap(k, m);
            track.swap(k, m);
            if nz.len() == 1 {
                if cols[k][r].is_negative() {
                    cols[k].iter_mut().for_each(|e| *e = -&*e);
                    track[k].iter_mut().for_each(|e| *e = -&*e);
                }
                pivots.push((r, k));
                k += 1;
                break;
            }
            let (head, tail) = cols.split_at_mut(k + 1);
            let (thead, ttail) = track.split_at_mut(k + 1);
            for (c, t) in tail.iter_mut().zip(ttail.iter_mut()) {
                if c[r].is_zero() {
                    continue;
                }
                let q = c[r].div_floor(&head[k][r]);
                axpy_int(c, &q, &head[k]);
                axpy_int(t, &q, &thead[k]);
            }
        }
        if k == cols.len() {
            break;
        }
    }
    for &(r, j) in &pivots {
        for i in 0..j {
            let q = cols[i][r].div_floor(&cols[j][r]);
            if q.is_zero() {
                continue;
            }
            let (a, b) = cols.split_at_mut(j);
            axpy_int(&mut a[i], &q, &b[0]);
            let (a, b) = track.split_at_mut(j);
            axpy_int(&mut a[i], &q, &b[0]);
        }
    }
    k
}

/// Hermite normal form (by columns) of a list of integer vectors, zero
/// columns dropped.
pub fn hnf_int(rows: usize, vecs: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut cols = vecs.to_vec();
    let mut none: Vec<Vec<BigInt>> = vec![Vec::new(); cols.len()];
    let k = echelon_int(&mut cols, &mut none, rows);
    cols.truncate(k);
    cols
}

/// A Z-basis of `{X in Z^s | F X = 0}`, in Hermite normal form.
pub fn ker_int(f: &IntMat) -> Vec<Vec<BigInt>> {
    let s = f.cols();
    let mut cols = f.columns.clone();
    let mut track: Vec<Vec<BigInt>> =
        (0..s).map(|j| (0..s).map(|i| BigInt::from(u8::from(i == j))).collect()).collect();
    let k = echelon_int(&mut cols, &mut track, f.rows);
    hnf_int(s, &track[k..])
}

fn pivot_row(c: &[ModPoly]) -> Option<usize> {
    c.iter().rposition(|e| !e.is_zero())
}

fn axpy_mod(dst: &mut [ModPoly], q: &ModPoly, src: &[ModPoly]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = d.sub(&q.mul(s));
    }
}

fn scale_mod(v: &mut [ModPoly], c: u64) {
    for e in v.iter_mut() {
        *e = e.scale(c);
    }
}

/// Column Hermite normal form over Z_p[x]: returns `(B, T)` with `B = C T`
/// and `T` invertible. Nonzero columns of `B` come first, ordered by
/// increasing pivot row (the last nonzero row); pivots are monic and every
/// entry in a pivot row has smaller degree than the pivot. Zero columns
/// follow.
pub fn hnf_modpoly(c: &ModPolyMat) -> (ModPolyMat, ModPolyMat) {
    let p = c.p;
    let mut cols = c.columns.clone();
    let mut t = ModPolyMat::identity(p, c.cols()).columns;
    let mut active: Vec<usize> = (0..cols.len()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    for r in (0..c.rows).rev() {
        loop {
            let here: Vec<usize> = active.iter().copied().filter(|&j| !cols[j][r].is_zero()).collect();
            let Some(&m) = here.iter().min_by_key(|&&j| cols[j][r].degree()) else { break };
            if here.len() == 1 {
                let inv = invmod(cols[m][r].lead(), p);
                scale_mod(&mut cols[m], inv);
                scale_mod(&mut t[m], inv);
                active.retain(|&j| j != m);
                pivots.push(m);
                break;
            }
            for &j in here.iter().filter(|&&j| j != m) {
                let (q, _) = cols[j][r].divrem(&cols[m][r]).expect("nonzero pivot");
                let (src, ts) = (cols[m].clone(), t[m].clone());
                axpy_mod(&mut cols[j], &q, &src);
                axpy_mod(&mut t[j], &q, &ts);
            }
        }
    }
    pivots.reverse();
    let row_of: BTreeMap<usize, usize> = pivots.iter().map(|&j| (pivot_row(&cols[j]).unwrap(), j)).collect();
    for &j in &pivots {
        let pr = pivot_row(&cols[j]).unwrap();
        for (&r, &i) in row_of.range(..pr).rev() {
            let (q, _) = cols[j][r].divrem(&cols[i][r]).expect("nonzero pivot");
            if q.is_zero() {
                continue;
            }
            let (src, ts) = (cols[i].clone(), t[i].clone());
            axpy_mod(&mut cols[j], &q, &src);
            axpy_mod(&mut t[j], &q, &ts);
        }
    }
    let order: Vec<usize> = pivots.iter().copied().chain(active).collect();
    let b = order.iter().map(|&j| cols[j].clone()).collect();
    let t = order.iter().map(|&j| t[j].clone()).collect();
    (ModPolyMat { p, rows: c.rows, columns: b }, ModPolyMat { p, rows: c.cols(), columns: t })
}

/// A basis of `{X in Z_p[x]^s | F X = 0}`, in Hermite normal form.
pub fn ker_modpoly(f: &ModPolyMat) -> Vec<Vec<ModPoly>> {
    let (b, t) = hnf_modpoly(f);
    let rank = b.columns.iter().take_while(|c| pivot_row(c).is_some()).count();
    let kernel = ModPolyMat { p: f.p, rows: f.cols(), columns: t.columns[rank..].to_vec() };
    let (k, _) = hnf_modpoly(&kernel);
    k.columns.into_iter().take_while(|c| pivot_row(c).is_some()).collect()
}

/// Leading position `(row, degree)` and leading coefficient of a column.
fn lead_pos(c: &[ModPoly]) -> Option<((usize, usize), u64)> {
    let r = pivot_row(c)?;
    Some(((r, c[r].degree().unwrap()), c[r].lead()))
}

/// Standard form `S = E U` over Z_p with `U` an invertible scalar matrix
/// (columns of `U` returned as residue vectors).
///
/// Only column exchanges and Z_p-multiples of one column added to another
/// are used. Columns are consumed left to right and each is reduced against
/// the earlier columns until its leading position `(row, degree)` is new,
/// so among columns with the same leading position the leftmost survives.
/// Zero columns of `S` come first, then the others by pivot row and degree.
pub fn standard_form(e: &ModPolyMat) -> (ModPolyMat, Vec<Vec<u64>>) {
    let p = e.p;
    let l = e.cols();
    let mut cols = e.columns.clone();
    let mut u: Vec<Vec<u64>> = (0..l).map(|j| (0..l).map(|i| u64::from(i == j)).collect()).collect();
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for j in 0..l {
        while let Some((pos, lc)) = lead_pos(&cols[j]) {
            let Some(&i) = seen.get(&pos) else {
                seen.insert(pos, j);
                break;
            };
            let (_, li) = lead_pos(&cols[i]).unwrap();
            let a = (lc as u128 * invmod(li, p) as u128 % p as u128) as u64;
            let src = cols[i].clone();
            for (d, s) in cols[j].iter_mut().zip(&src) {
                *d = d.sub(&s.scale(a));
            }
            let us = u[i].clone();
            for (d, s) in u[j].iter_mut().zip(&us) {
                *d = (*d + p - (a as u128 * *s as u128 % p as u128) as u64) % p;
            }
        }
    }
    let mut order: Vec<usize> = (0..l).filter(|&j| lead_pos(&cols[j]).is_none()).collect();
    order.extend(seen.values().copied());
    let s = order.iter().map(|&j| cols[j].clone()).collect();
    let u = order.iter().map(|&j| u[j].clone()).collect();
    (ModPolyMat { p, rows: e.rows, columns: s }, u)
}

/// A basis of `{X in Z_p^l | E X = 0}` over Z_p: the columns of `U` over
/// the zero columns of the standard form.
pub fn scalar_kernel(e: &ModPolyMat) -> Vec<Vec<u64>> {
    let (s, u) = standard_form(e);
    s.columns.iter().zip(u).take_while(|(c, _)| pivot_row(c).is_none()).map(|(_, x)| x).collect()
}
