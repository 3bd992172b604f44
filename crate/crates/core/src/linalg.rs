//! Exact dense matrices and sparse Gaussian elimination over `Q(i)`, plus a
//! modular rank for systems too large to reduce exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::tensor_core::{Rational, Scalar};

/// A dense matrix over `Q(i)`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::ONE);
        }
        m
    }

    /// Matrix with a single unit entry at `(r, c)`.
    pub fn unit(n: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(r, c, Scalar::ONE);
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn conj_transpose(&self) -> Self {
        let mut t = self.transpose();
        for v in &mut t.data {
            *v = v.conj();
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    /// `self += s * o`.
    pub fn axpy(&mut self, s: &Scalar, o: &Self) {
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            a.add_mul(s, b);
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        out.data[r * o.cols + c].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::ZERO;
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    /// `Tr(self * o)` without forming the product.
    pub fn trace_of_product(&self, o: &Self) -> Scalar {
        let mut t = Scalar::ZERO;
        for r in 0..self.rows {
            for k in 0..self.cols {
                t.add_mul(self.get(r, k), o.get(k, r));
            }
        }
        t
    }

    pub fn is_scalar_multiple_of_identity(&self) -> Option<Scalar> {
        if !self.is_square() {
            return None;
        }
        let lambda = if self.rows == 0 { Scalar::ZERO } else { self.get(0, 0).clone() };
        let ok = (0..self.rows)
            .all(|r| (0..self.cols).all(|c| *self.get(r, c) == if r == c { lambda.clone() } else { Scalar::ZERO }));
        ok.then_some(lambda)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, Error> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or_else(|| Error::SingularForm(format!("no pivot in column {col}")))?;
            if piv != col {
                for c in 0..n {
                    a.data.swap(piv * n + c, col * n + c);
                    inv.data.swap(piv * n + c, col * n + c);
                }
            }
            let p = a.get(col, col).recip()?;
            for c in 0..n {
                let x = a.get(col, c) * &p;
                a.set(col, c, x);
                let y = inv.get(col, c) * &p;
                inv.set(col, c, y);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for c in 0..n {
                    let x = a.get(r, c) - &(&f * a.get(col, c));
                    a.set(r, c, x);
                    let y = inv.get(r, c) - &(&f * inv.get(col, c));
                    inv.set(r, c, y);
                }
            }
        }
        Ok(inv)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for r in 0..self.rows {
            e.insert(dense_to_sparse(self.row(r)));
        }
        e.rank()
    }
}

/// A sparse row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

pub fn dense_to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// `a - f * b` for sorted sparse rows.
fn sub_scaled(a: &SparseRow, f: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(f * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// An incrementally built row echelon form with unit pivots.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `row` against the current pivots; leading entries only.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut start = 0;
        while start < row.len() {
            let (lead, v) = (row[start].0, row[start].1.clone());
            match self.pivots.get(&lead) {
                Some(p) => {
                    let tail = row.split_off(start);
                    let reduced = sub_scaled(&tail, &v, p);
                    row.extend(reduced);
                }
                None => start += 1,
            }
        }
        row
    }

    /// Adds a row. Returns `true` if it was independent of earlier rows.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = row;
        loop {
            let Some((lead, v)) = row.first().cloned() else { return false };
            match self.pivots.get(&lead) {
                Some(p) => row = sub_scaled(&row, &v, p),
                None => {
                    let inv = v.recip().expect("nonzero pivot");
                    for e in &mut row {
                        e.1 = &e.1 * &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Whether `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Fully reduced pivot rows, keyed by pivot column.
    pub fn rref(&self) -> BTreeMap<usize, SparseRow> {
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&col, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            // clear entries in later pivot columns
            loop {
                let hit = r.iter().skip(1).find(|(c, _)| done.contains_key(c)).map(|(c, v)| (*c, v.clone()));
                match hit {
                    Some((c, v)) => r = sub_scaled(&r, &v, &done[&c]),
                    None => break,
                }
            }
            done.insert(col, r);
        }
        done
    }

    /// A basis of the solutions of `row . x = 0` for every inserted row.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let rref = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !rref.contains_key(c)) {
            let mut x = vec![Scalar::ZERO; self.cols];
            x[free] = Scalar::ONE;
            for (&p, row) in &rref {
                if let Some((_, v)) = row.iter().find(|(c, _)| *c == free) {
                    x[p] = -v;
                }
            }
            out.push(x);
        }
        out
    }
}

/// Solves `A x = b` exactly. Rows of `a` are sparse over `ncols` unknowns.
/// Returns one solution (free variables zero) or `None` if inconsistent.
pub fn solve(a: &[SparseRow], b: &[Scalar], ncols: usize) -> Option<Vec<Scalar>> {
    let mut e = Echelon::new(ncols + 1);
    for (row, rhs) in a.iter().zip(b) {
        let mut r = row.clone();
        if !rhs.is_zero() {
            r.push((ncols, rhs.clone()));
        }
        e.insert(r);
    }
    if e.pivots.contains_key(&ncols) {
        return None;
    }
    let rref = e.rref();
    let mut x = vec![Scalar::ZERO; ncols];
    for (&p, row) in &rref {
        if let Some((_, v)) = row.iter().find(|(c, _)| *c == ncols) {
            x[p] = v.clone();
        }
    }
    Some(x)
}

/// Expresses vectors in a fixed independent family by inverting a square
/// minor once; membership is then confirmed by an exact residual check.
#[derive(Clone, Debug)]
pub struct SpanDecomposer {
    basis: Vec<Vec<Scalar>>,
    rows: Vec<usize>,
    minor_inv: Matrix,
}

impl SpanDecomposer {
    pub fn new(basis: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let k = basis.len();
        let n = basis.first().map_or(0, Vec::len);
        let mut e = Echelon::new(k);
        let mut rows = Vec::new();
        for r in 0..n {
            let row: SparseRow =
                (0..k).filter(|&c| !basis[c][r].is_zero()).map(|c| (c, basis[c][r].clone())).collect();
            if e.insert(row) {
                rows.push(r);
                if rows.len() == k {
                    break;
                }
            }
        }
        if rows.len() < k {
            return Err(Error::Construction("basis vectors are linearly dependent".into()));
        }
        let minor = Matrix::from_rows(rows.iter().map(|&r| (0..k).map(|c| basis[c][r].clone()).collect()).collect())?;
        Ok(SpanDecomposer { minor_inv: minor.inverse()?, basis, rows })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `v`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let k = self.basis.len();
        let mut c = vec![Scalar::ZERO; k];
        for (i, ci) in c.iter_mut().enumerate() {
            for (j, &r) in self.rows.iter().enumerate() {
                ci.add_mul(self.minor_inv.get(i, j), &v[r]);
            }
        }
        for (r, vr) in v.iter().enumerate() {
            let mut acc = Scalar::ZERO;
            for (ci, b) in c.iter().zip(&self.basis) {
                acc.add_mul(ci, &b[r]);
            }
            if acc != *vr {
                return None;
            }
        }
        Some(c)
    }
}

/// How a rank was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum RankMethod {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "modular (probabilistic)")]
    Modular,
}

impl fmt::Display for RankMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankMethod::Exact => "exact",
            RankMethod::Modular => "modular (probabilistic)",
        })
    }
}

pub fn exact_rank(rows: &[SparseRow], ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r.clone());
    }
    e.rank()
}

/// A prime field `Z/p` with `p = 1 mod 4`, carrying a square root of `-1`
/// so that Gaussian rationals map into it.
#[derive(Clone, Copy, Debug)]
pub struct ModField {
    pub p: u64,
    pub i: u64,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

impl ModField {
    /// A 62-bit prime `= 1 mod 4` drawn from a fixed-seed generator, so runs
    /// are reproducible.
    pub fn random(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let cand = (rng.gen::<u64>() >> 2) | (1u64 << 61) | 1;
            let cand = cand - (cand % 4) + 1;
            if is_prime_u64(cand) {
                let i = (2..)
                    .map(|g| powmod(g, (cand - 1) / 4, cand))
                    .find(|&t| mulmod(t, t, cand) == cand - 1)
                    .expect("p = 1 mod 4 has a square root of -1");
                return ModField { p: cand, i };
            }
        }
    }

    fn big_mod(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let mut r = n % &p;
        if r.is_negative() {
            r += &p;
        }
        r.to_u64().expect("reduced below p")
    }

    fn rational(&self, q: &Rational) -> Result<u64, Error> {
        let (n, d) = match q {
            Rational::Small(n, d) => ((*n as i128).rem_euclid(self.p as i128) as u64, (*d as u64) % self.p),
            Rational::Big(_) => (self.big_mod(&q.numer()), self.big_mod(&q.denom())),
        };
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(mulmod(n, powmod(d, self.p - 2, self.p), self.p))
    }

    /// Image of `a + b i` under `i -> sqrt(-1) mod p`.
    pub fn reduce(&self, s: &Scalar) -> Result<u64, Error> {
        let re = self.rational(&s.re)?;
        let im = self.rational(&s.im)?;
        Ok((re as u128 + mulmod(im, self.i, self.p) as u128).rem_euclid(self.p as u128) as u64)
    }

    /// Rank over `Z/p`, a lower bound on the rank over `Q(i)` that is equal to
    /// it unless `p` divides one of a few determinants.
    pub fn rank(&self, rows: &[SparseRow], ncols: usize) -> Result<usize, Error> {
        let p = self.p;
        let mut pivots: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
        let _ = ncols;
        for row in rows {
            let mut r: Vec<(usize, u64)> = Vec::with_capacity(row.len());
            for (c, v) in row {
                let x = self.reduce(v)?;
                if x != 0 {
                    r.push((*c, x));
                }
            }
            loop {
                let Some(&(lead, v)) = r.first() else { break };
                match pivots.get(&lead) {
                    Some(prow) => {
                        let mut out = Vec::with_capacity(r.len() + prow.len());
                        let (mut i, mut j) = (0, 0);
                        while i < r.len() || j < prow.len() {
                            if j >= prow.len() || (i < r.len() && r[i].0 < prow[j].0) {
                                out.push(r[i]);
                                i += 1;
                            } else if i >= r.len() || prow[j].0 < r[i].0 {
                                out.push((prow[j].0, (p - mulmod(v, prow[j].1, p)) % p));
                                j += 1;
                            } else {
                                let x = (r[i].1 + p - mulmod(v, prow[j].1, p)) % p;
                                if x != 0 {
                                    out.push((r[i].0, x));
                                }
                                i += 1;
                                j += 1;
                            }
                        }
                        r = out;
                    }
                    None => {
                        let inv = powmod(v, p - 2, p);
                        for e in &mut r {
                            e.1 = mulmod(e.1, inv, p);
                        }
                        pivots.insert(lead, r);
                        break;
                    }
                }
            }
        }
        Ok(pivots.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows(vec![vec![s(2), s(1)], vec![s(1), Scalar::I]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let sing = Matrix::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]]).unwrap();
        assert!(sing.inverse().is_err());
        assert_eq!(sing.rank(), 1);
    }

    #[test]
    fn nullspace_and_solve() {
        let mut e = Echelon::new(3);
        e.insert(vec![(0, s(1)), (1, s(1))]);
        e.insert(vec![(1, s(1)), (2, s(-1))]);
        let ns = e.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![s(-1), s(1), s(1)]);
        let a = vec![vec![(0, s(1)), (1, s(1))], vec![(1, s(2))]];
        assert_eq!(solve(&a, &[s(3), s(4)], 2), Some(vec![s(1), s(2)]));
        let bad = vec![vec![(0, s(1))], vec![(0, s(2))]];
        assert_eq!(solve(&bad, &[s(1), s(1)], 1), None);
    }

    #[test]
    fn decomposer() {
        let d = SpanDecomposer::new(vec![vec![s(1), s(0), s(1)], vec![s(0), s(1), s(1)]]).unwrap();
        assert_eq!(d.coords(&[s(2), s(3), s(5)]), Some(vec![s(2), s(3)]));
        assert_eq!(d.coords(&[s(2), s(3), s(4)]), None);
    }

    #[test]
    fn modular_rank_matches_exact() {
        let f = ModField::random(7);
        assert!(is_prime_u64(f.p) && f.p % 4 == 1 && f.p >> 61 == 1);
        assert_eq!(mulmod(f.i, f.i, f.p), f.p - 1);
        let rows = vec![
            vec![(0, Scalar::I), (1, s(1))],
            vec![(0, s(-1)), (1, Scalar::I)],
            vec![(1, Scalar::frac(1, 3).unwrap()), (2, s(5))],
        ];
        assert_eq!(exact_rank(&rows, 3), 2);
        assert_eq!(f.rank(&rows, 3).unwrap(), 2);
    }
}
