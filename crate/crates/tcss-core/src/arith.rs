//! Finite fields `k = F_{p^f}`, truncated Witt rings `W(k)/p^N`, their
//! Frobenius, the norm `k → F_p`, and the semilinear equation
//! `b·φ(x) − x = c` over `F_p`.
//!
//! `k` is modelled as `F_p[x]/(m)` and `W(k)/p^N` as `(Z/p^N)[x]/(m̃)`
//! where `m̃` has the same integer coefficients as `m`. The Witt
//! Frobenius evaluates at the root of `m̃` lifting `x^p` (found by
//! Newton iteration).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::MatFp;
use crate::num::{invmod, ipow, is_prime, mulmod, reduce_i64};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithError {
    NonPrime(u64),
    ReducibleModulus,
    /// Modulus not monic of degree `f`, or with entries out of range.
    BadModulus,
    ZeroCoefficient,
    NotDivisible,
    NotInvertible,
    ContextMismatch,
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::NonPrime(p) => write!(f, "{p} is not prime"),
            ArithError::ReducibleModulus => f.write_str("modulus is reducible over F_p"),
            ArithError::BadModulus => f.write_str("modulus must be monic of degree f"),
            ArithError::ZeroCoefficient => f.write_str("coefficient b must be nonzero"),
            ArithError::NotDivisible => f.write_str("element is not divisible by p"),
            ArithError::NotInvertible => f.write_str("element is not a unit"),
            ArithError::ContextMismatch => f.write_str("elements come from different contexts"),
        }
    }
}

// ---------------------------------------------------------------------------
// polynomials over Z/m, coefficient vectors low to high

fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_mul_mod(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + mulmod(x, y, m)) % m;
        }
    }
    r
}

/// Reduce `a` modulo a monic polynomial `md` (coefficients mod `m`).
fn poly_rem_monic(a: &mut Vec<u64>, md: &[u64], m: u64) {
    let f = md.len() - 1;
    while a.len() > f {
        let top = a.pop().unwrap();
        if top == 0 {
            continue;
        }
        let shift = a.len() - f;
        for t in 0..f {
            let sub = mulmod(top, md[t], m);
            a[shift + t] = (a[shift + t] + m - sub) % m;
        }
    }
}

/// Remainder of `a` by a nonzero `b` over the field `F_p`.
fn poly_rem_field(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    poly_trim(&mut a);
    let mut b = b.to_vec();
    poly_trim(&mut b);
    let db = b.len() - 1;
    let inv = invmod(b[db], p).unwrap();
    while a.len() > db {
        let top = a.pop().unwrap();
        if top == 0 {
            continue;
        }
        let c = mulmod(top, inv, p);
        let shift = a.len() - db;
        for t in 0..db {
            a[shift + t] = (a[shift + t] + p - mulmod(c, b[t], p)) % p;
        }
        poly_trim(&mut a);
    }
    poly_trim(&mut a);
    a
}

fn poly_gcd_field(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem_field(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility over `F_p` (Ben-Or): `gcd(x^{p^i} − x, m) = 1` for `i ≤ f/2`.
pub fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let f = modulus.len() - 1;
    if f == 1 {
        return true;
    }
    let ctx = FieldCtx { p, f, modulus: modulus.to_vec() };
    let x = ctx.gen();
    let mut xp = x.clone();
    for _ in 1..=f / 2 {
        xp = ctx.frobenius(&xp);
        let mut diff = ctx.sub(&xp, &x).coeffs;
        poly_trim(&mut diff);
        if diff.is_empty() {
            return false;
        }
        let g = poly_gcd_field(modulus, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// residue field

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    f: usize,
    modulus: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElement {
    pub coeffs: Vec<u64>,
}

impl FqElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// The default modulus: first monic irreducible when tuples
/// `(c_0, …, c_{f−1})` are scanned in ascending order with `c_0` most
/// significant.
fn default_modulus(p: u64, f: usize) -> Vec<u64> {
    let total = ipow(p, f as u32);
    for idx in 0..total {
        let mut m = vec![0u64; f + 1];
        let mut t = idx;
        for i in (0..f).rev() {
            m[i] = t % p;
            t /= p;
        }
        m[f] = 1;
        if f > 1 && m[0] == 0 {
            continue;
        }
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Build `F_{p^f}`, scanning for a modulus when none is given.
pub fn make_field(p: u64, f: usize, modulus: Option<&[u64]>) -> Result<FieldCtx, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NonPrime(p));
    }
    if f == 0 {
        return Err(ArithError::BadModulus);
    }
    let modulus = match modulus {
        Some(m) => {
            if m.len() != f + 1 || m[f] != 1 || m.iter().any(|&c| c >= p) {
                return Err(ArithError::BadModulus);
            }
            if !is_irreducible(m, p) {
                return Err(ArithError::ReducibleModulus);
            }
            m.to_vec()
        }
        None => default_modulus(p, f),
    };
    Ok(FieldCtx { p, f, modulus })
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `q = p^f`.
    pub fn order(&self) -> u64 {
        ipow(self.p, self.f as u32)
    }

    pub fn zero(&self) -> FqElement {
        FqElement { coeffs: vec![0; self.f] }
    }

    pub fn one(&self) -> FqElement {
        self.from_int(1)
    }

    pub fn from_int(&self, a: i64) -> FqElement {
        let mut c = vec![0; self.f];
        c[0] = reduce_i64(a, self.p);
        FqElement { coeffs: c }
    }

    /// Class of the polynomial generator `x`.
    pub fn gen(&self) -> FqElement {
        let mut c = vec![0; self.f];
        if self.f == 1 {
            c[0] = (self.p - self.modulus[0]) % self.p;
        } else {
            c[1] = 1;
        }
        FqElement { coeffs: c }
    }

    /// Reduce an arbitrary integer coefficient list.
    pub fn element(&self, coeffs: &[i64]) -> FqElement {
        let mut c: Vec<u64> = coeffs.iter().map(|&a| reduce_i64(a, self.p)).collect();
        poly_rem_monic(&mut c, &self.modulus, self.p);
        c.resize(self.f, 0);
        FqElement { coeffs: c }
    }

    pub fn add(&self, a: &FqElement, b: &FqElement) -> FqElement {
        let c = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + y) % self.p).collect();
        FqElement { coeffs: c }
    }

    pub fn sub(&self, a: &FqElement, b: &FqElement) -> FqElement {
        let c = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + self.p - y) % self.p).collect();
        FqElement { coeffs: c }
    }

    pub fn neg(&self, a: &FqElement) -> FqElement {
        let c = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FqElement { coeffs: c }
    }

    pub fn scale(&self, s: u64, a: &FqElement) -> FqElement {
        let s = s % self.p;
        let c = a.coeffs.iter().map(|&x| mulmod(x, s, self.p)).collect();
        FqElement { coeffs: c }
    }

    pub fn mul(&self, a: &FqElement, b: &FqElement) -> FqElement {
        if self.f == 1 {
            return FqElement { coeffs: vec![mulmod(a.coeffs[0], b.coeffs[0], self.p)] };
        }
        let mut r = poly_mul_mod(&a.coeffs, &b.coeffs, self.p);
        poly_rem_monic(&mut r, &self.modulus, self.p);
        r.resize(self.f, 0);
        FqElement { coeffs: r }
    }

    pub fn pow(&self, a: &FqElement, mut e: u128) -> FqElement {
        let mut base = a.clone();
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        r
    }

    /// Signed power; `None` for a negative power of zero.
    pub fn zpow(&self, a: &FqElement, e: i64) -> Option<FqElement> {
        if e >= 0 {
            Some(self.pow(a, e as u128))
        } else {
            self.inv(a).map(|i| self.pow(&i, e.unsigned_abs() as u128))
        }
    }

    pub fn inv(&self, a: &FqElement) -> Option<FqElement> {
        if a.is_zero() {
            return None;
        }
        Some(self.pow(a, (self.order() - 2) as u128))
    }

    pub fn frobenius(&self, a: &FqElement) -> FqElement {
        self.pow(a, self.p as u128)
    }

    pub fn frobenius_iter(&self, a: &FqElement, k: usize) -> FqElement {
        let mut r = a.clone();
        for _ in 0..(k % self.f) {
            r = self.frobenius(&r);
        }
        r
    }

    /// `∏_{i<f} φ^i(a)`, an element of the prime field.
    pub fn norm(&self, a: &FqElement) -> FqElement {
        let mut r = self.one();
        let mut c = a.clone();
        for _ in 0..self.f {
            r = self.mul(&r, &c);
            c = self.frobenius(&c);
        }
        r
    }

    /// The prime-field value of `a`, if `a ∈ F_p`.
    pub fn to_prime(&self, a: &FqElement) -> Option<u64> {
        if a.coeffs[1..].iter().all(|&c| c == 0) {
            Some(a.coeffs[0])
        } else {
            None
        }
    }

    /// Enumeration index of `a` (base-p digits, `c_0` least significant).
    pub fn index_of(&self, a: &FqElement) -> u64 {
        a.coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.p + c)
    }

    pub fn from_index(&self, mut idx: u64) -> FqElement {
        let mut c = vec![0; self.f];
        for slot in c.iter_mut() {
            *slot = idx % self.p;
            idx /= self.p;
        }
        FqElement { coeffs: c }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FqElement> + '_ {
        (0..self.order()).map(move |i| self.from_index(i))
    }

    /// Basis vector `x^i`.
    pub fn basis(&self, i: usize) -> FqElement {
        let mut c = vec![0; self.f];
        c[i] = 1;
        FqElement { coeffs: c }
    }

    /// Matrix over `F_p` of the `F_p`-linear map `y ↦ a·y`, in the basis
    /// `1, x, …, x^{f−1}` (column `i` is the image of `x^i`).
    pub fn mul_matrix(&self, a: &FqElement) -> MatFp {
        let mut m = MatFp::zeros(self.p, self.f, self.f);
        for i in 0..self.f {
            let col = self.mul(a, &self.basis(i));
            for (r, &v) in col.coeffs.iter().enumerate() {
                m.set(r, i, v);
            }
        }
        m
    }
}

// ---------------------------------------------------------------------------
// b·φ(x) − x = c

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    /// `N(b) ≠ 1`: the map is bijective.
    Unique(FqElement),
    /// `N(b) = 1`: one-dimensional kernel and cokernel.
    Degenerate { kernel: FqElement, particular: Option<FqElement> },
}

impl SolveResult {
    pub fn kernel_dim(&self) -> usize {
        match self {
            SolveResult::Unique(_) => 0,
            SolveResult::Degenerate { .. } => 1,
        }
    }

    pub fn coker_dim(&self) -> usize {
        self.kernel_dim()
    }

    pub fn solvable(&self) -> bool {
        match self {
            SolveResult::Unique(_) => true,
            SolveResult::Degenerate { particular, .. } => particular.is_some(),
        }
    }
}

/// `F_p`-matrix of `x ↦ b·φ(x) − x`.
pub fn semilinear_matrix(ctx: &FieldCtx, b: &FqElement) -> MatFp {
    let mut m = MatFp::zeros(ctx.p, ctx.f, ctx.f);
    for i in 0..ctx.f {
        let xi = ctx.basis(i);
        let img = ctx.sub(&ctx.mul(b, &ctx.frobenius(&xi)), &xi);
        for (r, &v) in img.coeffs.iter().enumerate() {
            m.set(r, i, v);
        }
    }
    m
}

/// Solve `b·φ(x) − x = c` by linear algebra over `F_p`.
pub fn h90_solve(ctx: &FieldCtx, b: &FqElement, c: &FqElement) -> Result<SolveResult, ArithError> {
    if b.is_zero() {
        return Err(ArithError::ZeroCoefficient);
    }
    let m = semilinear_matrix(ctx, b);
    let kernel = m.kernel();
    let sol = m.solve(&c.coeffs).map(|v| FqElement { coeffs: v });
    match kernel.len() {
        0 => Ok(SolveResult::Unique(sol.expect("bijective map is onto"))),
        1 => Ok(SolveResult::Degenerate { kernel: FqElement { coeffs: kernel[0].clone() }, particular: sol }),
        k => unreachable!("kernel of b·φ − 1 has dimension {k} > 1"),
    }
}

// ---------------------------------------------------------------------------
// truncated Witt vectors

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittCtx {
    field: FieldCtx,
    n: u32,
    pn: u64,
    root: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittElement {
    pub coeffs: Vec<u64>,
    pub prec: u32,
}

impl WittCtx {
    pub fn new(field: &FieldCtx, n: u32) -> WittCtx {
        assert!(n >= 1, "Witt precision must be at least 1");
        let pn = ipow(field.p, n);
        let mut ctx = WittCtx { field: field.clone(), n, pn, root: vec![0; field.f] };
        ctx.root = ctx.hensel_frobenius_root();
        ctx
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p
    }

    pub fn f(&self) -> usize {
        self.field.f
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    /// `p^N`.
    pub fn modulus_int(&self) -> u64 {
        self.pn
    }

    pub fn frobenius_root(&self) -> WittElement {
        WittElement { coeffs: self.root.clone(), prec: self.n }
    }

    pub(crate) fn raw_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if self.field.f == 1 {
            return vec![mulmod(a[0], b[0], self.pn)];
        }
        let mut r = poly_mul_mod(a, b, self.pn);
        poly_rem_monic(&mut r, &self.field.modulus, self.pn);
        r.resize(self.field.f, 0);
        r
    }

    fn raw_pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut r = vec![0; self.field.f];
        r[0] = 1 % self.pn;
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = self.raw_mul(&r, &base);
            }
            base = self.raw_mul(&base, &base);
            e >>= 1;
        }
        r
    }

    /// Evaluate an integer polynomial (coefficients mod `p^N`) at `r`.
    fn raw_eval(&self, poly: &[u64], r: &[u64]) -> Vec<u64> {
        let f = self.field.f;
        let mut acc = vec![0u64; f];
        for &c in poly.iter().rev() {
            acc = self.raw_mul(&acc, r);
            acc[0] = (acc[0] + c % self.pn) % self.pn;
        }
        acc
    }

    fn raw_inv(&self, a: &[u64]) -> Option<Vec<u64>> {
        let p = self.field.p;
        let red = FqElement { coeffs: a.iter().map(|&c| c % p).collect() };
        let y0 = self.field.inv(&red)?;
        let mut y = y0.coeffs;
        // y ← y(2 − a y), doubling the precision each step
        let mut prec = 1;
        while prec < self.n {
            let ay = self.raw_mul(a, &y);
            let mut two_minus = ay.iter().map(|&c| (self.pn - c) % self.pn).collect::<Vec<_>>();
            two_minus[0] = (two_minus[0] + 2) % self.pn;
            y = self.raw_mul(&y, &two_minus);
            prec *= 2;
        }
        Some(y)
    }

    /// Root of `m̃` congruent to `x^p` mod `p`, by Newton iteration.
    pub fn hensel_frobenius_root(&self) -> Vec<u64> {
        let f = self.field.f;
        let p = self.field.p;
        let x = self.field.gen();
        let mut r = self.field.frobenius(&x).coeffs;
        if f == 1 {
            // m̃ = x + c_0, root −c_0 exactly
            return vec![(self.pn - self.field.modulus[0] % self.pn) % self.pn];
        }
        let m: Vec<u64> = self.field.modulus.clone();
        let dm: Vec<u64> = (1..m.len()).map(|i| mulmod(m[i], i as u64, self.pn)).collect();
        let mut prec = 1;
        while prec < self.n {
            let val = self.raw_eval(&m, &r);
            let der = self.raw_eval(&dm, &r);
            let inv = self.raw_inv(&der).expect("separable modulus has unit derivative at the root");
            let corr = self.raw_mul(&val, &inv);
            r = r.iter().zip(&corr).map(|(&a, &b)| (a + self.pn - b) % self.pn).collect();
            prec *= 2;
        }
        debug_assert!(self.raw_eval(&m, &r).iter().all(|&c| c == 0));
        debug_assert!(r.iter().zip(&self.field.frobenius(&x).coeffs).all(|(&a, &b)| a % p == b));
        r
    }

    pub fn zero(&self) -> WittElement {
        WittElement { coeffs: vec![0; self.field.f], prec: self.n }
    }

    pub fn one(&self) -> WittElement {
        self.from_int(1)
    }

    pub fn from_int(&self, a: i64) -> WittElement {
        let mut c = vec![0; self.field.f];
        c[0] = reduce_i64(a, self.pn);
        WittElement { coeffs: c, prec: self.n }
    }

    pub fn from_u64(&self, a: u64) -> WittElement {
        let mut c = vec![0; self.field.f];
        c[0] = a % self.pn;
        WittElement { coeffs: c, prec: self.n }
    }

    /// Element with the given integer coefficients in the Witt generator.
    pub fn element(&self, coeffs: &[i64]) -> WittElement {
        let mut c: Vec<u64> = coeffs.iter().map(|&a| reduce_i64(a, self.pn)).collect();
        poly_rem_monic(&mut c, &self.field.modulus, self.pn);
        c.resize(self.field.f, 0);
        WittElement { coeffs: c, prec: self.n }
    }

    /// Teichmüller-free lift: same digits as the residue element.
    pub fn lift(&self, a: &FqElement) -> WittElement {
        WittElement { coeffs: a.coeffs.clone(), prec: self.n }
    }

    pub fn reduce(&self, a: &WittElement) -> FqElement {
        FqElement { coeffs: a.coeffs.iter().map(|&c| c % self.field.p).collect() }
    }

    fn trunc(&self, mut c: Vec<u64>, prec: u32) -> WittElement {
        let m = ipow(self.field.p, prec);
        for x in c.iter_mut() {
            *x %= m;
        }
        WittElement { coeffs: c, prec }
    }

    pub fn add(&self, a: &WittElement, b: &WittElement) -> WittElement {
        let c = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + y) % self.pn).collect();
        self.trunc(c, a.prec.min(b.prec))
    }

    pub fn sub(&self, a: &WittElement, b: &WittElement) -> WittElement {
        let c = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + self.pn - y) % self.pn).collect();
        self.trunc(c, a.prec.min(b.prec))
    }

    pub fn neg(&self, a: &WittElement) -> WittElement {
        let c = a.coeffs.iter().map(|&x| (self.pn - x) % self.pn).collect();
        self.trunc(c, a.prec)
    }

    pub fn mul(&self, a: &WittElement, b: &WittElement) -> WittElement {
        let c = self.raw_mul(&a.coeffs, &b.coeffs);
        self.trunc(c, a.prec.min(b.prec))
    }

    pub fn scale(&self, s: u64, a: &WittElement) -> WittElement {
        let c = a.coeffs.iter().map(|&x| mulmod(x, s % self.pn, self.pn)).collect();
        self.trunc(c, a.prec)
    }

    pub fn pow(&self, a: &WittElement, e: u64) -> WittElement {
        let c = self.raw_pow(&a.coeffs, e);
        self.trunc(c, a.prec)
    }

    pub fn inv(&self, a: &WittElement) -> Result<WittElement, ArithError> {
        let c = self.raw_inv(&a.coeffs).ok_or(ArithError::NotInvertible)?;
        Ok(self.trunc(c, a.prec))
    }

    pub fn is_zero(&self, a: &WittElement) -> bool {
        let m = ipow(self.field.p, a.prec);
        a.coeffs.iter().all(|&c| c % m == 0)
    }

    pub fn is_unit(&self, a: &WittElement) -> bool {
        a.prec > 0 && !self.reduce(a).is_zero()
    }

    /// Minimal `v_p` over coordinates; `None` when zero at its precision.
    pub fn valuation(&self, a: &WittElement) -> Option<u32> {
        if self.is_zero(a) {
            return None;
        }
        let p = self.field.p;
        a.coeffs
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| {
                let mut c = c;
                let mut v = 0;
                while c % p == 0 {
                    c /= p;
                    v += 1;
                }
                v
            })
            .min()
    }

    /// Exact division by `p`; tracked precision drops by one.
    pub fn div_p(&self, a: &WittElement) -> Result<WittElement, ArithError> {
        let p = self.field.p;
        if a.prec == 0 {
            return Ok(a.clone());
        }
        let m = ipow(p, a.prec);
        let mut c = Vec::with_capacity(a.coeffs.len());
        for &x in &a.coeffs {
            let x = x % m;
            if x % p != 0 {
                return Err(ArithError::NotDivisible);
            }
            c.push(x / p);
        }
        Ok(WittElement { coeffs: c, prec: a.prec - 1 })
    }

    /// Multiplication by `p`.
    pub fn mul_p(&self, a: &WittElement) -> WittElement {
        self.scale(self.field.p, a)
    }

    pub fn with_prec(&self, a: &WittElement, prec: u32) -> WittElement {
        self.trunc(a.coeffs.clone(), prec.min(a.prec))
    }

    /// Witt Frobenius: evaluate at the Hensel root of `m̃`.
    pub fn frobenius(&self, a: &WittElement) -> WittElement {
        if self.field.f == 1 {
            return a.clone();
        }
        let c = self.raw_eval(&a.coeffs, &self.root);
        self.trunc(c, a.prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(make_field(2, 1, None).unwrap().modulus(), &[0, 1]);
        assert_eq!(make_field(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(make_field(2, 2, None).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(2, 3, None).unwrap().modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn modulus_validation() {
        assert_eq!(make_field(4, 1, None), Err(ArithError::NonPrime(4)));
        assert_eq!(make_field(3, 2, Some(&[2, 0, 1])), Err(ArithError::ReducibleModulus));
        assert!(make_field(3, 2, Some(&[1, 0, 1])).is_ok());
        assert_eq!(make_field(3, 2, Some(&[1, 0, 2])), Err(ArithError::BadModulus));
    }

    #[test]
    fn frobenius_of_generator_in_f9() {
        let k = make_field(3, 2, Some(&[1, 0, 1])).unwrap();
        let x = k.gen();
        assert_eq!(k.frobenius(&x), k.neg(&x));
        assert_eq!(k.norm(&x), k.one());
        assert_eq!(k.norm(&k.zero()), k.zero());
    }

    #[test]
    fn hensel_root_for_f9_mod_9() {
        let k = make_field(3, 2, Some(&[1, 0, 1])).unwrap();
        let w = WittCtx::new(&k, 2);
        // x^2 + 1 = 0 has roots ±x in (Z/9)[x]/(x^2+1); the one ≡ x^3 = −x is −x
        assert_eq!(w.frobenius_root().coeffs, vec![0, 8]);
        let x = w.element(&[0, 1]);
        assert_eq!(w.frobenius(&x), w.frobenius_root());
    }

    #[test]
    fn h90_over_f2() {
        let k = make_field(2, 1, None).unwrap();
        let r = h90_solve(&k, &k.one(), &k.one()).unwrap();
        assert_eq!(r, SolveResult::Degenerate { kernel: k.one(), particular: None });
        assert_eq!(h90_solve(&k, &k.zero(), &k.one()), Err(ArithError::ZeroCoefficient));
    }

    #[test]
    fn witt_division_by_p() {
        let k = make_field(3, 1, None).unwrap();
        let w = WittCtx::new(&k, 3);
        let a = w.from_int(6);
        let b = w.div_p(&a).unwrap();
        assert_eq!(b.prec, 2);
        assert_eq!(b.coeffs, vec![2]);
        assert_eq!(w.div_p(&w.from_int(2)), Err(ArithError::NotDivisible));
    }
}
