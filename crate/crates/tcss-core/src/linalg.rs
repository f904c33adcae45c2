//! Dense linear algebra: row reduction over `F_p`, Smith normal forms
//! over `Z/p^N` and over `k[z]`.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{FieldCtx, FqElement};
use crate::num::{invmod, ipow, mulmod};

/// Dense matrix over `F_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatFp {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl MatFp {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> MatFp {
        MatFp { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> MatFp {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = MatFp::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: u64) {
        let idx = i * self.cols + j;
        self.data[idx] = (self.data[idx] + v % self.p) % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &MatFp) -> MatFp {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut r = MatFp::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        r.add_to(i, j, mulmod(a, b, self.p));
                    }
                }
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + mulmod(a, b, self.p)) % self.p)
            })
            .collect()
    }

    /// Columns side by side.
    pub fn hconcat(&self, other: &MatFp) -> MatFp {
        assert_eq!(self.rows, other.rows);
        let mut r = MatFp::zeros(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                r.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                r.set(i, self.cols + j, other.get(i, j));
            }
        }
        r
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if piv != row {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, row * cols + j);
                }
            }
            let inv = invmod(self.get(row, col), p).unwrap();
            for j in col..cols {
                let idx = row * cols + j;
                self.data[idx] = mulmod(self.data[idx], inv, p);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                let neg = p - factor;
                for j in col..cols {
                    let src = self.data[row * cols + j];
                    if src != 0 {
                        let idx = r * cols + j;
                        self.data[idx] = (self.data[idx] + mulmod(neg, src, p)) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate on the thinner orientation
        let mut m = if self.cols > self.rows { self.transpose() } else { self.clone() };
        m.rref().len()
    }

    pub fn transpose(&self) -> MatFp {
        let mut t = MatFp::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let p = self.p;
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m.get(r, free)) % p;
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `A x = b`.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = MatFp::zeros(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// Smith normal form over `Z/p^N`: exponents `v` of the nonzero
/// invariant factors `p^v` (`v < N`), plus the number of diagonal
/// entries that vanish mod `p^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithZpn {
    pub exponents: Vec<u32>,
    pub zero_pivots: usize,
}

pub fn smith_zpn(p: u64, n: u32, mat: &[Vec<u64>]) -> SmithZpn {
    let m = ipow(p, n);
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<u64>> = mat.iter().map(|r| r.iter().map(|&x| x % m).collect()).collect();
    let val = |x: u64| -> u32 {
        if x == 0 {
            return n;
        }
        let mut x = x;
        let mut v = 0;
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        v
    };
    let mut exponents = Vec::new();
    let mut zero_pivots = 0;
    let k = rows.min(cols);
    for t in 0..k {
        // minimal valuation entry in the lower-right block
        let mut best: Option<(u32, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = val(a[i][j]);
                if v < n && best.map_or(true, |b| v < b.0) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((v, bi, bj)) = best else {
            zero_pivots += k - t;
            break;
        };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let piv = a[t][t];
        let unit = piv / ipow(p, v);
        let uinv = invmod(unit % m, m).unwrap();
        let pv = ipow(p, v);
        for i in t + 1..rows {
            let x = a[i][t];
            if x == 0 {
                continue;
            }
            let q = mulmod(x / pv, uinv, m);
            for j in t..cols {
                let sub = mulmod(q, a[t][j], m);
                a[i][j] = (a[i][j] + m - sub) % m;
            }
        }
        for j in t + 1..cols {
            let x = a[t][j];
            if x == 0 {
                continue;
            }
            let q = mulmod(x / pv, uinv, m);
            for i in t..rows {
                let sub = mulmod(q, a[i][t], m);
                a[i][j] = (a[i][j] + m - sub) % m;
            }
        }
        exponents.push(v);
    }
    SmithZpn { exponents, zero_pivots }
}

// ---------------------------------------------------------------------------
// polynomials over k and their Smith form

/// Polynomial over `k`, coefficients low to high, no trailing zeros.
pub type KPoly = Vec<FqElement>;

pub fn kpoly_trim(a: &mut KPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub fn kpoly_deg(a: &KPoly) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn kpoly_add(k: &FieldCtx, a: &KPoly, b: &KPoly) -> KPoly {
    let n = a.len().max(b.len());
    let mut r: KPoly = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => k.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => k.zero(),
        })
        .collect();
    kpoly_trim(&mut r);
    r
}

pub fn kpoly_neg(k: &FieldCtx, a: &KPoly) -> KPoly {
    a.iter().map(|c| k.neg(c)).collect()
}

pub fn kpoly_sub(k: &FieldCtx, a: &KPoly, b: &KPoly) -> KPoly {
    kpoly_add(k, a, &kpoly_neg(k, b))
}

pub fn kpoly_mul(k: &FieldCtx, a: &KPoly, b: &KPoly) -> KPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] = k.add(&r[i + j], &k.mul(x, y));
        }
    }
    kpoly_trim(&mut r);
    r
}

/// Quotient and remainder by a nonzero divisor.
pub fn kpoly_divrem(k: &FieldCtx, a: &KPoly, b: &KPoly) -> (KPoly, KPoly) {
    let db = kpoly_deg(b).expect("division by zero polynomial");
    let inv = k.inv(&b[db]).unwrap();
    let mut r = a.clone();
    kpoly_trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![k.zero(); r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = k.mul(&r[top], &inv);
        let shift = top - db;
        for (t, bt) in b.iter().enumerate() {
            r[shift + t] = k.sub(&r[shift + t], &k.mul(&c, bt));
        }
        q[shift] = c;
        kpoly_trim(&mut r);
    }
    kpoly_trim(&mut q);
    (q, r)
}

fn kpoly_monic(k: &FieldCtx, a: &KPoly) -> KPoly {
    match a.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = k.inv(lead).unwrap();
            a.iter().map(|c| k.mul(c, &inv)).collect()
        }
    }
}

/// Invariant factors (monic, each dividing the next) of a matrix over
/// `k[z]`; zero diagonal entries are dropped, so the list length is the
/// rank.
pub fn smith_kpoly(k: &FieldCtx, mat: &[Vec<KPoly>]) -> Vec<KPoly> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<KPoly>> = mat
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let mut x = x.clone();
                    kpoly_trim(&mut x);
                    x
                })
                .collect()
        })
        .collect();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pick a nonzero entry of minimal degree
        let mut best: Option<(usize, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if let Some(d) = kpoly_deg(&a[i][j]) {
                    if best.map_or(true, |b| d < b.0) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        let Some((_, bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if a[i][t].is_empty() {
                continue;
            }
            let (q, _) = kpoly_divrem(k, &a[i][t], &a[t][t]);
            for j in t..cols {
                let sub = kpoly_mul(k, &q, &a[t][j]);
                a[i][j] = kpoly_sub(k, &a[i][j], &sub);
            }
            if !a[i][t].is_empty() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if a[t][j].is_empty() {
                continue;
            }
            let (q, _) = kpoly_divrem(k, &a[t][j], &a[t][t]);
            for i in t..rows {
                let sub = kpoly_mul(k, &q, &a[i][t]);
                a[i][j] = kpoly_sub(k, &a[i][j], &sub);
            }
            if !a[t][j].is_empty() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // the pivot must divide the remaining block
        let mut fixed = true;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !kpoly_divrem(k, &a[i][j], &a[t][t]).1.is_empty() {
                    for jj in t..cols {
                        a[t][jj] = kpoly_add(k, &a[t][jj], &a[i][jj].clone());
                    }
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        diag.push(kpoly_monic(k, &a[t][t]));
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::make_field;

    #[test]
    fn rank_and_kernel() {
        let m = MatFp::from_rows(3, &[vec![1, 2, 0], vec![2, 1, 0]]);
        assert_eq!(m.rank(), 1);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
        assert_eq!(m.solve(&[1, 2]).map(|x| m.mul_vec(&x)), Some(vec![1, 2]));
        assert_eq!(m.solve(&[1, 0]), None);
    }

    #[test]
    fn smith_over_z_mod_p_power() {
        // diag(2, 12) over Z/32 gives exponents 1, 2
        let s = smith_zpn(2, 5, &[vec![2, 0], vec![0, 12]]);
        assert_eq!(s.exponents, vec![1, 2]);
        let s = smith_zpn(3, 2, &[vec![9]]);
        assert_eq!(s.zero_pivots, 1);
    }

    #[test]
    fn smith_over_polynomials() {
        let k = make_field(2, 1, None).unwrap();
        let z = vec![k.zero(), k.one()];
        let z2 = kpoly_mul(&k, &z, &z);
        let d = smith_kpoly(&k, &[vec![z.clone(), Vec::new()], vec![Vec::new(), z2.clone()]]);
        assert_eq!(d, vec![z.clone(), z2]);
        // [[z, 0], [0, z+1]] → [1, z(z+1)]
        let z1 = vec![k.one(), k.one()];
        let d = smith_kpoly(&k, &[vec![z.clone(), Vec::new()], vec![Vec::new(), z1.clone()]]);
        assert_eq!(d, vec![vec![k.one()], kpoly_mul(&k, &z, &z1)]);
    }
}
