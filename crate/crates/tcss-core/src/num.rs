//! Integer helpers: modular arithmetic, p-adic valuations, binomials,
//! and the rational/extended-rational types used for filtrations.

use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};

/// Exact rational number used for filtrations and valuations.
pub type Rat = num_rational::Ratio<i64>;

/// `num/den` rendering, always with an explicit denominator.
pub fn fmt_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A rational valuation or `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Val {
    Fin(Rat),
    Inf,
}

impl Val {
    pub fn int(n: i64) -> Val {
        Val::Fin(Rat::from_integer(n))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Val::Inf)
    }

    /// `"num/den"` or `"inf"`.
    pub fn render(&self) -> String {
        match self {
            Val::Fin(r) => fmt_rat(r),
            Val::Inf => String::from("inf"),
        }
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val::Inf, Val::Inf) => Ordering::Equal,
            (Val::Inf, _) => Ordering::Greater,
            (_, Val::Inf) => Ordering::Less,
            (Val::Fin(a), Val::Fin(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u128, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Reduce a signed integer into `[0, m)`.
pub fn reduce_i64(a: i64, m: u64) -> u64 {
    let r = (a as i128).rem_euclid(m as i128);
    r as u64
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn invmod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        let t = old_r - q * r;
        old_r = r;
        r = t;
        let t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// `p`-adic valuation of a nonzero integer; `None` for zero.
pub fn vp(p: u64, n: i128) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut n = n.unsigned_abs();
    let p = p as u128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Some(v)
}

/// `v_p(n!)` by Legendre's formula.
pub fn vp_factorial(p: u64, n: u64) -> u64 {
    let mut v = 0;
    let mut q = n / p;
    while q > 0 {
        v += q;
        q /= p;
    }
    v
}

pub fn ipow(b: u64, e: u32) -> u64 {
    let mut r: u64 = 1;
    for _ in 0..e {
        r = r.checked_mul(b).expect("integer power overflow");
    }
    r
}

/// `binom(n, k) mod m` through Pascal's triangle rows kept in a table.
#[derive(Clone, Debug)]
pub struct BinomTable {
    m: u64,
    rows: alloc::vec::Vec<alloc::vec::Vec<u64>>,
}

impl BinomTable {
    pub fn new(max_n: usize, m: u64) -> Self {
        let mut rows: alloc::vec::Vec<alloc::vec::Vec<u64>> = alloc::vec::Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row = alloc::vec![0u64; n + 1];
            row[0] = 1 % m;
            row[n] = 1 % m;
            for k in 1..n {
                row[k] = (rows[n - 1][k - 1] + rows[n - 1][k]) % m;
            }
            rows.push(row);
        }
        BinomTable { m, rows }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    #[inline]
    pub fn get(&self, n: usize, k: usize) -> u64 {
        if k > n {
            0
        } else {
            self.rows[n][k]
        }
    }
}

/// Exact binomial coefficient as `i128`.
pub fn binom_exact(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

/// `p^i / i!` modulo `p^n` (a p-adic integer since `v_p(i!) < i`).
pub fn p_pow_over_factorial(p: u64, i: u64, n: u32) -> u64 {
    let m = ipow(p, n);
    let v = i - vp_factorial(p, i);
    if v >= n as u64 {
        return 0;
    }
    let mut unit = 1u64;
    for t in 1..=i {
        let mut t = t;
        while t % p == 0 {
            t /= p;
        }
        unit = mulmod(unit, t % m, m);
    }
    let inv = invmod(unit, m).expect("unit part of a factorial is invertible");
    mulmod(ipow(p, v as u32), inv, m)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub fn rat_is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn rat_ceil(r: &Rat) -> i64 {
    r.ceil().to_integer()
}

pub fn rat_nonneg(r: &Rat) -> bool {
    !(*r < Rat::zero())
}
