//! Truncated model of the divided power envelope `D` of `W(k)[z_0, z_1]`
//! along `(E(z_0), s)`, `s = z_0 − z_1`, with Frobenius, `δ`, the elements
//! `h` and `f^{(k)}`, and a congruence verifier.
//!
//! Basis: `z_0^a γ_i(E) γ_j(s)` with `a < e`; refined weight `a/e + i + j`.
//! Monomials with `i + j > Wcap` are dropped, which is an ideal since
//! products never lower `i + j`. Coefficients live in `W_N(k)` and each
//! element records the `p`-adic precision to which it is known.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{WittCtx, WittElement};
use crate::localfield::{FieldError, LocalField};
use crate::num::{binom_exact, ipow, p_pow_over_factorial, rat, rat_ceil, BinomTable, Rat, Val};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PDMonomial {
    pub a: u32,
    pub i: u32,
    pub j: u32,
}

impl PDMonomial {
    pub fn weight(&self, e: usize) -> Rat {
        rat(self.a as i64, e as i64) + Rat::from_integer((self.i + self.j) as i64)
    }
}

impl fmt::Display for PDMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z0^{}·γ{}(E)·γ{}(s)", self.a, self.i, self.j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PdError {
    ContextMismatch,
    PrecisionTooLow { needed: u32, got: u32 },
    NotDivisible,
    WcapTooSmall { needed: u32, got: u32 },
    NotInvertible,
    /// The truncation would not fit the fixed-width representation.
    TooLarge { wcap: u32, n: u32 },
    Field(FieldError),
}

impl fmt::Display for PdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdError::ContextMismatch => write!(f, "elements come from different truncations"),
            PdError::PrecisionTooLow { needed, got } => write!(f, "precision {got} is too low, need {needed}"),
            PdError::NotDivisible => write!(f, "element is not divisible by p"),
            PdError::WcapTooSmall { needed, got } => write!(f, "weight cap {got} is too small, need {needed}"),
            PdError::NotInvertible => write!(f, "element is not a unit"),
            PdError::TooLarge { wcap, n } => write!(f, "truncation Wcap={wcap}, N={n} exceeds the supported size"),
            PdError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl From<FieldError> for PdError {
    fn from(e: FieldError) -> Self {
        PdError::Field(e)
    }
}

/// Element of the truncated envelope. Coefficients are stored reduced
/// modulo `p^prec`, `f` digits per monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PDElement {
    coeffs: Vec<u64>,
    prec: u32,
    wcap: u32,
}

impl PDElement {
    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn wcap(&self) -> u32 {
        self.wcap
    }
}

/// Largest supported weight cap.
pub const MAX_WCAP: u32 = 2048;

/// `z_0^m = Σ κ·z_0^a·E^q` for `m < 2e − 1`.
type Z0Expansion = Vec<(u32, u32, Vec<u64>)>;

#[derive(Clone, Debug)]
pub struct PdCtx {
    p: u64,
    e: usize,
    f: usize,
    wcap: u32,
    n: u32,
    pn: u64,
    w: WittCtx,
    mono: Vec<PDMonomial>,
    binom: BinomTable,
    fact: Vec<u64>,
    z0_red: Vec<Z0Expansion>,
    mu: WittElement,
    delta_e_z0: PDElement,
    u_e: PDElement,
    phi_s: Vec<PDElement>,
    /// `φ(z_0^a)·φ(γ_i(E))`, `None` when zero.
    phi_ae: Vec<Vec<Option<PDElement>>>,
}

impl PdCtx {
    /// Truncation at weight cap `wcap` and precision `n`.
    pub fn new(lf: &LocalField, wcap: u32, n: u32) -> Result<PdCtx, PdError> {
        let p = lf.p();
        if (wcap as u64) < p {
            return Err(PdError::WcapTooSmall { needed: p as u32, got: wcap });
        }
        if n < 2 {
            return Err(PdError::PrecisionTooLow { needed: 2, got: n });
        }
        // products of two residues must fit in a u64
        let pn = match p.checked_pow(n) {
            Some(pn) if pn < (1 << 31) && wcap <= MAX_WCAP => pn,
            _ => return Err(PdError::TooLarge { wcap, n }),
        };
        let e = lf.e();
        let f = lf.f();
        let w = WittCtx::new(lf.residue_field(), n);
        let mut mono = Vec::new();
        for d in 0..=wcap {
            for j in 0..=d {
                for a in 0..e as u32 {
                    mono.push(PDMonomial { a, i: d - j, j });
                }
            }
        }
        let binom = BinomTable::new(wcap as usize + 1, pn);
        let mut fact = vec![1 % pn];
        for q in 1..=(wcap as u64 + 1) {
            let prev = *fact.last().unwrap();
            fact.push(prev * (q % pn) % pn);
        }
        let coeffs = lf.coeffs_in(&w);
        let mu = coeffs[e].clone();
        let mu_inv = w.inv(&mu).map_err(|_| PdError::NotInvertible)?;
        // z_0^e = μ^{-1}(E − Σ_{t<e} c_t z_0^t)
        let mut z0_red: Vec<Z0Expansion> = Vec::new();
        for m in 0..(2 * e).saturating_sub(1).max(e) {
            let mut terms: Z0Expansion = Vec::new();
            if m < e {
                let mut one = vec![0u64; f];
                one[0] = 1 % pn;
                terms.push((m as u32, 0, one));
            } else {
                let add = |terms: &mut Z0Expansion, a: u32, q: u32, k: Vec<u64>| {
                    if let Some(slot) = terms.iter_mut().find(|x| x.0 == a && x.1 == q) {
                        for (s, v) in slot.2.iter_mut().zip(&k) {
                            *s = (*s + v) % pn;
                        }
                    } else {
                        terms.push((a, q, k));
                    }
                };
                add(&mut terms, (m - e) as u32, 1, mu_inv.coeffs.clone());
                for (t, ct) in coeffs.iter().enumerate().take(e) {
                    let scale = w.neg(&w.mul(&mu_inv, ct));
                    for (a, q, k) in z0_red[m - e + t].clone() {
                        let prod = w.mul(&scale, &WittElement { coeffs: k, prec: n });
                        add(&mut terms, a, q, prod.coeffs);
                    }
                }
            }
            z0_red.push(terms);
        }
        let zero_el = PDElement { coeffs: vec![0; mono.len() * f], prec: n, wcap };
        let mut ctx = PdCtx {
            p,
            e,
            f,
            wcap,
            n,
            pn,
            w,
            mono,
            binom,
            fact,
            z0_red,
            mu,
            delta_e_z0: zero_el.clone(),
            u_e: zero_el,
            phi_s: Vec::new(),
            phi_ae: Vec::new(),
        };
        // δE(z_0) and u_E = δE(z_0) + (p−1)!γ_p(E)
        let de = lf.delta_e(n);
        let z0 = ctx.z0();
        let mut zp = ctx.one();
        let mut delta_e_z0 = ctx.zero();
        for c in &de {
            delta_e_z0 = ctx.add(&delta_e_z0, &ctx.scale(c, &zp));
            zp = ctx.mul(&zp, &z0)?;
        }
        let gp = ctx.monomial(PDMonomial { a: 0, i: p as u32, j: 0 }, &ctx.w.from_u64(ctx.fact[p as usize - 1]));
        ctx.u_e = ctx.add(&delta_e_z0, &gp);
        ctx.delta_e_z0 = delta_e_z0;
        // φ(γ_j(s)) = W^j γ_j(s)
        let wpoly = ctx.w_poly()?;
        let mut wpow = ctx.one();
        let mut phi_s = Vec::with_capacity(wcap as usize + 1);
        for j in 0..=wcap {
            let g = ctx.monomial(PDMonomial { a: 0, i: 0, j }, &ctx.w.one());
            phi_s.push(ctx.mul(&wpow, &g)?);
            if j < wcap {
                wpow = ctx.mul(&wpow, &wpoly)?;
            }
        }
        ctx.phi_s = phi_s;
        // φ(z_0^a) = z_0^{pa}; φ(γ_i(E)) = (p^i/i!)·u_E^i
        let zpp = ctx.pow(&z0, p)?;
        let mut phi_z0 = vec![ctx.one()];
        for a in 1..e {
            let next = ctx.mul(&phi_z0[a - 1], &zpp)?;
            phi_z0.push(next);
        }
        let mut upow = ctx.one();
        let mut phi_ge: Vec<Option<PDElement>> = Vec::new();
        for i in 0..=wcap as u64 {
            let c = p_pow_over_factorial(p, i, n);
            phi_ge.push((c != 0).then(|| ctx.scale(&ctx.w.from_u64(c), &upow)));
            if i < wcap as u64 {
                upow = ctx.mul(&upow, &ctx.u_e)?;
            }
        }
        let mut phi_ae = Vec::with_capacity(e);
        for pz in &phi_z0 {
            let mut row = Vec::with_capacity(phi_ge.len());
            for g in &phi_ge {
                row.push(match g {
                    Some(g) => Some(ctx.mul(pz, g)?),
                    None => None,
                });
            }
            phi_ae.push(row);
        }
        ctx.phi_ae = phi_ae;
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn wcap(&self) -> u32 {
        self.wcap
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn witt(&self) -> &WittCtx {
        &self.w
    }

    /// `μ = c_e` at the model precision.
    pub fn mu(&self) -> &WittElement {
        &self.mu
    }

    /// `δ(E)(z_0)`.
    pub fn delta_e_z0(&self) -> &PDElement {
        &self.delta_e_z0
    }

    /// `u_E = δ(E)(z_0) + (p−1)!·γ_p(E)`, so that `φ(E) = p·u_E`.
    pub fn u_e(&self) -> &PDElement {
        &self.u_e
    }

    pub fn len(&self) -> usize {
        self.mono.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mono.is_empty()
    }

    fn index(&self, m: PDMonomial) -> Option<usize> {
        let d = m.i + m.j;
        if d > self.wcap || m.a as usize >= self.e {
            return None;
        }
        let t = (d as usize * (d as usize + 1)) / 2 + m.j as usize;
        Some(t * self.e + m.a as usize)
    }

    fn modulus(&self, prec: u32) -> u64 {
        ipow(self.p, prec)
    }

    fn check(&self, x: &PDElement) -> Result<(), PdError> {
        if x.wcap != self.wcap || x.coeffs.len() != self.mono.len() * self.f {
            return Err(PdError::ContextMismatch);
        }
        Ok(())
    }

    pub fn zero(&self) -> PDElement {
        PDElement { coeffs: vec![0; self.mono.len() * self.f], prec: self.n, wcap: self.wcap }
    }

    pub fn one(&self) -> PDElement {
        self.monomial(PDMonomial { a: 0, i: 0, j: 0 }, &self.w.one())
    }

    pub fn from_witt(&self, c: &WittElement) -> PDElement {
        self.monomial(PDMonomial { a: 0, i: 0, j: 0 }, c)
    }

    pub fn from_int(&self, c: i64) -> PDElement {
        self.from_witt(&self.w.from_int(c))
    }

    /// `c·m`; zero if `m` lies above the weight cap.
    pub fn monomial(&self, m: PDMonomial, c: &WittElement) -> PDElement {
        let mut x = self.zero();
        if let Some(idx) = self.index(m) {
            let md = self.modulus(self.n);
            for (t, v) in c.coeffs.iter().enumerate() {
                x.coeffs[idx * self.f + t] = v % md;
            }
        }
        x
    }

    pub fn z0(&self) -> PDElement {
        if self.e == 1 {
            // z_0 = μ^{-1}(E − p)
            let mu_inv = self.w.inv(&self.mu).expect("μ is a unit");
            let e1 = self.monomial(PDMonomial { a: 0, i: 1, j: 0 }, &mu_inv);
            let c0 = self.from_witt(&self.w.neg(&self.w.mul(&mu_inv, &self.w.from_u64(self.p))));
            return self.add(&e1, &c0);
        }
        self.monomial(PDMonomial { a: 1, i: 0, j: 0 }, &self.w.one())
    }

    /// `s = z_0 − z_1 = γ_1(s)`.
    pub fn s(&self) -> PDElement {
        self.monomial(PDMonomial { a: 0, i: 0, j: 1 }, &self.w.one())
    }

    /// `z_1 = z_0 − s`.
    pub fn z1(&self) -> PDElement {
        self.sub(&self.z0(), &self.s())
    }

    /// `E(z_0) = γ_1(E)`.
    pub fn e_elem(&self) -> PDElement {
        self.monomial(PDMonomial { a: 0, i: 1, j: 0 }, &self.w.one())
    }

    pub fn gamma_e(&self, i: u32) -> PDElement {
        self.monomial(PDMonomial { a: 0, i, j: 0 }, &self.w.one())
    }

    pub fn gamma_s(&self, j: u32) -> PDElement {
        self.monomial(PDMonomial { a: 0, i: 0, j }, &self.w.one())
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, x: &PDElement, m: PDMonomial) -> WittElement {
        match self.index(m) {
            Some(idx) => WittElement { coeffs: x.coeffs[idx * self.f..(idx + 1) * self.f].to_vec(), prec: x.prec },
            None => WittElement { coeffs: vec![0; self.f], prec: x.prec },
        }
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self, x: &PDElement) -> Vec<(PDMonomial, WittElement)> {
        self.mono
            .iter()
            .enumerate()
            .filter_map(|(idx, m)| {
                let c = &x.coeffs[idx * self.f..(idx + 1) * self.f];
                c.iter().any(|&v| v != 0).then(|| (*m, WittElement { coeffs: c.to_vec(), prec: x.prec }))
            })
            .collect()
    }

    fn reduce(&self, mut coeffs: Vec<u64>, prec: u32) -> PDElement {
        let md = self.modulus(prec);
        for c in coeffs.iter_mut() {
            *c %= md;
        }
        PDElement { coeffs, prec, wcap: self.wcap }
    }

    pub fn add(&self, x: &PDElement, y: &PDElement) -> PDElement {
        let prec = x.prec.min(y.prec);
        let c = x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| (a + b) % self.pn).collect();
        self.reduce(c, prec)
    }

    pub fn sub(&self, x: &PDElement, y: &PDElement) -> PDElement {
        let prec = x.prec.min(y.prec);
        let c = x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| (a + self.pn - b) % self.pn).collect();
        self.reduce(c, prec)
    }

    pub fn neg(&self, x: &PDElement) -> PDElement {
        let c = x.coeffs.iter().map(|a| (self.pn - a) % self.pn).collect();
        self.reduce(c, x.prec)
    }

    /// Multiplication by a Witt scalar.
    pub fn scale(&self, c: &WittElement, x: &PDElement) -> PDElement {
        let prec = x.prec.min(c.prec);
        let mut out = vec![0u64; x.coeffs.len()];
        if self.f == 1 {
            let s = c.coeffs[0] % self.pn;
            for (o, v) in out.iter_mut().zip(&x.coeffs) {
                *o = v * s % self.pn;
            }
        } else {
            for (idx, chunk) in x.coeffs.chunks(self.f).enumerate() {
                if chunk.iter().all(|&v| v == 0) {
                    continue;
                }
                let prod = self.w.raw_mul(&c.coeffs, chunk);
                out[idx * self.f..(idx + 1) * self.f].copy_from_slice(&prod);
            }
        }
        self.reduce(out, prec)
    }

    /// `p·x`; known to one more digit, up to the model precision.
    pub fn mul_p(&self, x: &PDElement) -> PDElement {
        let c = x.coeffs.iter().map(|v| v * self.p % self.pn).collect();
        self.reduce(c, (x.prec + 1).min(self.n))
    }

    /// Exact division by `p`.
    pub fn div_p(&self, x: &PDElement) -> Result<PDElement, PdError> {
        if x.prec == 0 {
            return Err(PdError::PrecisionTooLow { needed: 1, got: 0 });
        }
        if x.coeffs.iter().any(|v| v % self.p != 0) {
            return Err(PdError::NotDivisible);
        }
        Ok(self.reduce(x.coeffs.iter().map(|v| v / self.p).collect(), x.prec - 1))
    }

    pub fn with_prec(&self, x: &PDElement, prec: u32) -> PDElement {
        self.reduce(x.coeffs.clone(), prec.min(x.prec))
    }

    pub fn is_zero(&self, x: &PDElement) -> bool {
        x.coeffs.iter().all(|&v| v == 0)
    }

    fn nonzero(&self, x: &PDElement) -> Vec<(PDMonomial, usize)> {
        let mut v: Vec<(PDMonomial, usize)> = (0..self.mono.len())
            .filter(|&idx| x.coeffs[idx * self.f..(idx + 1) * self.f].iter().any(|&c| c != 0))
            .map(|idx| (self.mono[idx], idx))
            .collect();
        v.sort_by_key(|(m, _)| m.i + m.j);
        v
    }

    fn cmul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if self.f == 1 {
            vec![a[0] * b[0] % self.pn]
        } else {
            self.w.raw_mul(a, b)
        }
    }

    pub fn mul(&self, x: &PDElement, y: &PDElement) -> Result<PDElement, PdError> {
        self.check(x)?;
        self.check(y)?;
        let prec = x.prec.min(y.prec);
        let pn = self.pn;
        let f = self.f;
        let e = self.e as u32;
        let xs = self.nonzero(x);
        let ys = self.nonzero(y);
        let mut out = vec![0u64; self.mono.len() * f];
        let mut acc = |idx: usize, c: &[u64], scal: u64| {
            for t in 0..f {
                let o = &mut out[idx * f + t];
                *o = (*o + c[t] * scal) % pn;
            }
        };
        for &(mx, ix) in &xs {
            let cx = &x.coeffs[ix * f..(ix + 1) * f];
            let dx = mx.i + mx.j;
            for &(my, iy) in &ys {
                if dx + my.i + my.j > self.wcap {
                    break;
                }
                let cy = &y.coeffs[iy * f..(iy + 1) * f];
                let big_i = mx.i + my.i;
                let big_j = mx.j + my.j;
                let comb = self.binom.get(big_i as usize, mx.i as usize) * self.binom.get(big_j as usize, mx.j as usize) % pn;
                if comb == 0 {
                    continue;
                }
                let c = self.cmul(cx, cy);
                let m = mx.a + my.a;
                if m < e {
                    let idx = self.index(PDMonomial { a: m, i: big_i, j: big_j }).unwrap();
                    acc(idx, &c, comb);
                } else {
                    for (a, q, k) in &self.z0_red[m as usize] {
                        let i3 = big_i + q;
                        if i3 + big_j > self.wcap {
                            continue;
                        }
                        // E^q·γ_I(E) = q!·C(I+q, q)·γ_{I+q}(E)
                        let sc = comb * self.fact[*q as usize] % pn * self.binom.get(i3 as usize, *q as usize) % pn;
                        if sc == 0 {
                            continue;
                        }
                        let ck = self.cmul(&c, k);
                        let idx = self.index(PDMonomial { a: *a, i: i3, j: big_j }).unwrap();
                        acc(idx, &ck, sc);
                    }
                }
            }
        }
        Ok(self.reduce(out, prec))
    }

    pub fn pow(&self, x: &PDElement, mut k: u64) -> Result<PDElement, PdError> {
        let mut base = x.clone();
        let mut acc = self.with_prec(&self.one(), x.prec);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Inverse of an element with unit constant term, by the product
    /// `1/(1−t) = (1+t)(1+t²)(1+t⁴)⋯`, which terminates because `t` is
    /// nilpotent in the truncation.
    pub fn inv(&self, x: &PDElement) -> Result<PDElement, PdError> {
        let c0 = self.coeff(x, PDMonomial { a: 0, i: 0, j: 0 });
        if !self.w.is_unit(&c0) {
            return Err(PdError::NotInvertible);
        }
        let c0_inv = self.w.inv(&WittElement { coeffs: c0.coeffs.clone(), prec: self.n }).map_err(|_| PdError::NotInvertible)?;
        let y = self.scale(&c0_inv, x);
        let mut t = self.sub(&self.with_prec(&self.one(), y.prec), &y);
        let mut acc = self.with_prec(&self.one(), y.prec);
        for _ in 0..64 {
            if self.is_zero(&t) {
                return Ok(self.scale(&c0_inv, &acc));
            }
            acc = self.mul(&acc, &self.add(&self.one(), &t))?;
            t = self.mul(&t, &t)?;
        }
        Err(PdError::NotInvertible)
    }

    /// `W = Σ_{b=1}^{p} C(p,b)(−1)^{b+1} z_0^{p−b} s^{b−1}`, so `φ(s) = s·W`.
    fn w_poly(&self) -> Result<PDElement, PdError> {
        let p = self.p;
        let z0 = self.z0();
        let mut out = self.zero();
        for b in 1..=p {
            let sign = if b % 2 == 1 { 1 } else { -1 };
            let c = binom_exact(p, b) as i64 * sign * self.fact[b as usize - 1] as i64;
            let term = self.mul(&self.pow(&z0, p - b)?, &self.gamma_s(b as u32 - 1))?;
            out = self.add(&out, &self.scale(&self.w.from_int(c), &term));
        }
        Ok(out)
    }

    /// Refined valuation: least weight of a monomial whose coefficient is
    /// nonzero (mod `p` when `mod_p`, else at the element's precision).
    pub fn refined_val(&self, x: &PDElement, mod_p: bool) -> Val {
        let mut best: Option<Rat> = None;
        for (idx, m) in self.mono.iter().enumerate() {
            let c = &x.coeffs[idx * self.f..(idx + 1) * self.f];
            let nz = if mod_p { c.iter().any(|&v| v % self.p != 0) } else { c.iter().any(|&v| v != 0) };
            if nz {
                let wgt = m.weight(self.e);
                if best.map_or(true, |b| wgt < b) {
                    best = Some(wgt);
                }
            }
        }
        best.map_or(Val::Inf, Val::Fin)
    }
}

pub fn pd_mul(ctx: &PdCtx, x: &PDElement, y: &PDElement) -> Result<PDElement, PdError> {
    ctx.mul(x, y)
}

/// Frobenius: `φ(z_0) = z_0^p`, `φ(γ_i(E)) = (p^i/i!)·u_E^i`,
/// `φ(γ_j(s)) = W^j·γ_j(s)`, Witt Frobenius on coefficients.
pub fn pd_frobenius(ctx: &PdCtx, x: &PDElement) -> Result<PDElement, PdError> {
    ctx.check(x)?;
    let f = ctx.f;
    let mut out = ctx.with_prec(&ctx.zero(), x.prec);
    for a in 0..ctx.e as u32 {
        for i in 0..=ctx.wcap {
            let Some(q) = &ctx.phi_ae[a as usize][i as usize] else { continue };
            let mut inner: Option<PDElement> = None;
            for j in 0..=(ctx.wcap - i) {
                let idx = ctx.index(PDMonomial { a, i, j }).unwrap();
                let c = &x.coeffs[idx * f..(idx + 1) * f];
                if c.iter().all(|&v| v == 0) {
                    continue;
                }
                let fc = ctx.w.frobenius(&WittElement { coeffs: c.to_vec(), prec: x.prec });
                let term = ctx.scale(&fc, &ctx.phi_s[j as usize]);
                inner = Some(match inner {
                    Some(acc) => ctx.add(&acc, &term),
                    None => term,
                });
            }
            if let Some(inner) = inner {
                out = ctx.add(&out, &ctx.mul(q, &inner)?);
            }
        }
    }
    Ok(ctx.with_prec(&out, x.prec))
}

/// `δ(x) = (φ(x) − x^p)/p`.
pub fn pd_delta(ctx: &PdCtx, x: &PDElement) -> Result<PDElement, PdError> {
    if x.prec < 2 {
        return Err(PdError::PrecisionTooLow { needed: 2, got: x.prec });
    }
    let num = ctx.sub(&pd_frobenius(ctx, x)?, &ctx.pow(x, ctx.p)?);
    ctx.div_p(&num)
}

/// `h = (φ(s)/p)·u_E^{-1}`, checked against `h·φ(E) = φ(s)`.
pub fn pd_h(ctx: &PdCtx) -> Result<PDElement, PdError> {
    let phi_s = pd_frobenius(ctx, &ctx.s())?;
    let h = ctx.mul(&ctx.div_p(&phi_s)?, &ctx.inv(&ctx.u_e)?)?;
    let back = ctx.mul(&ctx.mul_p(&h), &ctx.u_e)?;
    debug_assert!(ctx.is_zero(&ctx.sub(&back, &phi_s)), "h·φ(E) must equal φ(s)");
    Ok(h)
}

#[derive(Clone, Debug)]
pub struct FSeq {
    /// `f^{(0)}, …, f^{(kmax)}`.
    pub f: Vec<PDElement>,
    /// `h, δ(h), …, δ^{kmax}(h)`.
    pub delta_h: Vec<PDElement>,
}

/// `f^{(0)} = s`, `f^{(k+1)} = (−(f^{(k)})^p + δ^k(h)·E^{p^{k+1}})/p`.
pub fn pd_f_seq(ctx: &PdCtx, kmax: u32) -> Result<FSeq, PdError> {
    let p = ctx.p;
    if ctx.n < kmax + 2 {
        return Err(PdError::PrecisionTooLow { needed: kmax + 2, got: ctx.n });
    }
    if (ctx.wcap as u64) < ipow(p, kmax) {
        return Err(PdError::WcapTooSmall { needed: ipow(p, kmax) as u32, got: ctx.wcap });
    }
    let mut delta_h = vec![pd_h(ctx)?];
    for k in 0..kmax {
        let prev = &delta_h[k as usize];
        if prev.prec < 2 {
            break;
        }
        delta_h.push(pd_delta(ctx, prev)?);
    }
    let mut f = vec![ctx.s()];
    for k in 0..kmax {
        let fk = &f[k as usize];
        let q = ipow(p, k + 1);
        // E^{p^{k+1}} = (p^{k+1})!·γ_{p^{k+1}}(E); the factorial is taken mod p^N
        let mut fac = 1 % ctx.pn;
        for t in 1..=q {
            fac = fac * (t % ctx.pn) % ctx.pn;
        }
        let epow = ctx.monomial(PDMonomial { a: 0, i: q as u32, j: 0 }, &ctx.w.from_u64(fac));
        let num = ctx.add(&ctx.neg(&ctx.pow(fk, p)?), &ctx.mul(&delta_h[k as usize], &epow)?);
        f.push(ctx.div_p(&num)?);
    }
    Ok(FSeq { f, delta_h })
}

pub fn pd_refined_val(ctx: &PdCtx, x: &PDElement, mod_p: bool) -> Val {
    ctx.refined_val(x, mod_p)
}

// ---------------------------------------------------------------------------
// congruence verification

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceEntry {
    pub name: String,
    pub required: Val,
    pub measured: Val,
    pub pass: bool,
    /// `false` when the hypotheses of the congruence do not hold.
    pub applicable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub p: u64,
    pub e: usize,
    pub kmax: u32,
    pub wcap: u32,
    pub precision: u32,
    pub entries: Vec<CongruenceEntry>,
}

impl CongruenceReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass || !e.applicable)
    }
}

fn at_least(name: String, required: Rat, measured: Val) -> CongruenceEntry {
    let pass = measured >= Val::Fin(required);
    CongruenceEntry { name, required: Val::Fin(required), measured, pass, applicable: true }
}

fn exact(name: String, measured: Val) -> CongruenceEntry {
    CongruenceEntry { name, required: Val::Inf, pass: measured.is_inf(), measured, applicable: true }
}

fn equal(name: String, required: Val, measured: Val) -> CongruenceEntry {
    CongruenceEntry { name, pass: measured == required, required, measured, applicable: true }
}

fn not_applicable(name: String, required: Val) -> CongruenceEntry {
    CongruenceEntry { name, required, measured: Val::Inf, pass: true, applicable: false }
}

/// Required weights of the `φ^l(s)` congruences for `l ≤ kmax`.
fn iterate_requirements(p: u64, e: usize, kmax: u32) -> Vec<(u32, Rat)> {
    let e = e as i64;
    (1..=kmax)
        .map(|l| {
            let pl = ipow(p, l) as i64;
            let r = if p == 2 {
                Rat::from_integer(2 * pl) + rat(pl, e) - rat(2, e)
            } else {
                Rat::from_integer(pl) + rat(pl, p as i64 - 1) + rat(pl, e)
            };
            (l, r)
        })
        .collect()
}

fn h_requirement(p: u64, e: usize) -> Rat {
    let p = p as i64;
    let e = e as i64;
    let a = Rat::from_integer(p);
    let b = rat(2 * p - 1, e) + Rat::from_integer(1);
    let c = rat(p - 2, e) + Rat::from_integer(2);
    a.min(b).min(c)
}

/// Default truncation: `Wcap = p^{kmax+1}` raised to cover every required
/// weight, and precision `kmax + 3`.
pub fn default_truncation(p: u64, e: usize, kmax: u32) -> (u32, u32) {
    let mut wcap = ipow(p, kmax + 1) as i64;
    wcap = wcap.max(2 * p as i64);
    for (_, r) in iterate_requirements(p, e, kmax) {
        wcap = wcap.max(rat_ceil(&r));
    }
    (wcap as u32, kmax + 3)
}

pub fn verify_section3(lf: &LocalField, kmax: u32) -> Result<CongruenceReport, PdError> {
    let (wcap, n) = default_truncation(lf.p(), lf.e(), kmax);
    verify_section3_with(lf, kmax, wcap, n)
}

pub fn verify_section3_with(lf: &LocalField, kmax: u32, wcap: u32, n: u32) -> Result<CongruenceReport, PdError> {
    let ctx = PdCtx::new(lf, wcap, n)?;
    let p = ctx.p;
    let e = ctx.e;
    let w = &ctx.w;
    let mut entries = Vec::new();
    let s = ctx.s();
    let z0 = ctx.z0();
    let z0_pm1 = ctx.pow(&z0, p - 1)?;

    // ξ_0 = −δ(s)/s from the explicit expansion of z_0^p − (z_0 − s)^p
    let mut xi0 = ctx.zero();
    for b in 1..p {
        let sign = if b % 2 == 1 { 1 } else { -1 };
        let c = (binom_exact(p, b) / p as i128) as i64 * sign * ctx.fact[b as usize - 1] as i64;
        let term = ctx.mul(&ctx.pow(&z0, p - b)?, &ctx.gamma_s(b as u32 - 1))?;
        xi0 = ctx.sub(&xi0, &ctx.scale(&w.from_int(c), &term));
    }
    if p == 2 {
        xi0 = ctx.add(&xi0, &s);
    }
    entries.push(at_least(
        String::from("xi0 ≡ −z0^(p−1)"),
        rat(p as i64 - 2, e as i64) + Rat::from_integer(1),
        ctx.refined_val(&ctx.add(&xi0, &z0_pm1), true),
    ));
    let delta_s = pd_delta(&ctx, &s)?;
    let lhs = ctx.add(&delta_s, &ctx.mul(&xi0, &s)?);
    entries.push(exact(String::from("δ(s) + xi0·s = 0"), ctx.refined_val(&lhs, false)));

    let seq = pd_f_seq(&ctx, kmax)?;
    let h = &seq.delta_h[0];
    let phi_s = pd_frobenius(&ctx, &s)?;
    let phi_e = ctx.mul_p(&ctx.u_e);
    entries.push(exact(String::from("h·φ(E) = φ(s)"), ctx.refined_val(&ctx.sub(&ctx.mul(h, &phi_e)?, &phi_s), false)));

    let h_name = String::from("h ≡ +z0^(p−1)·s");
    if e > 1 {
        let diff = ctx.sub(h, &ctx.mul(&z0_pm1, &s)?);
        entries.push(at_least(h_name, h_requirement(p, e), ctx.refined_val(&diff, true)));
    } else {
        entries.push(not_applicable(h_name, Val::Fin(h_requirement(p, e))));
    }
    for (k, dh) in seq.delta_h.iter().enumerate() {
        entries.push(at_least(format!("ε(δ^{k}(h)) = 0"), Rat::from_integer(1), ctx.refined_val(dh, false)));
    }
    for (k, fk) in seq.f.iter().enumerate() {
        let k = k as u32;
        let pk = ipow(p, k);
        let lhs = pd_frobenius(&ctx, fk)?;
        let rhs = ctx.mul(&seq.delta_h[k as usize], &ctx.pow(&phi_e, pk)?)?;
        entries.push(exact(format!("φ(f^({k})) = δ^{k}(h)·φ(E)^(p^{k})"), ctx.refined_val(&ctx.sub(&lhs, &rhs), false)));
        entries.push(equal(format!("ν(f^({k})) = p^{k}"), Val::int(pk as i64), ctx.refined_val(fk, false)));
        let c = ctx.coeff(fk, PDMonomial { a: 0, i: 0, j: pk as u32 });
        let v = w.valuation(&c).map_or(Val::Inf, |v| Val::int(v as i64));
        entries.push(equal(format!("γ_(p^{k})(s)-coefficient of f^({k}) is a unit"), Val::int(0), v));
    }
    if kmax >= 1 {
        let delta_e = pd_delta(&ctx, &ctx.e_elem())?;
        let rhs = ctx.sub(&delta_s, &ctx.mul(h, &delta_e)?);
        entries.push(exact(String::from("f^(1) = δ(s) − h·δ(E)"), ctx.refined_val(&ctx.sub(&seq.f[1], &rhs), false)));
    }

    // μ̃ = −μ^p/δ(E)(z_0)
    let mu_p = w.pow(&ctx.mu, p);
    let mutilde = ctx.neg(&ctx.scale(&mu_p, &ctx.inv(&ctx.delta_e_z0)?));
    let neg_mutilde = ctx.neg(&mutilde);
    let pe = p * e as u64;
    let rhs = ctx.mul(&ctx.mul(&neg_mutilde, &ctx.pow(&z0, pe + p - 1)?)?, &s)?;
    entries.push(at_least(
        String::from("φ(s) ≡ −μ̃·z0^(pe+p−1)·s"),
        Rat::from_integer(2 * p as i64),
        ctx.refined_val(&ctx.sub(&phi_s, &rhs), true),
    ));

    let odd_ok = p > 2 && e > 1;
    let even_ok = p == 2 && e > 3;
    let mut phi_l = s.clone();
    for (l, req) in iterate_requirements(p, e, kmax) {
        let name = format!("φ^{l}(s) congruence");
        let applicable = if p == 2 { even_ok } else { odd_ok };
        if !applicable {
            entries.push(not_applicable(name, Val::Fin(req)));
            continue;
        }
        phi_l = pd_frobenius(&ctx, &phi_l)?;
        let geo = (ipow(p, l) - 1) / (p - 1);
        let (scalar, zexp) = if p == 2 { (&mutilde, geo * (2 * e as u64 + 1)) } else { (&neg_mutilde, geo * (pe + p - 1)) };
        let rhs = ctx.mul(&ctx.mul(&ctx.pow(scalar, geo)?, &ctx.pow(&z0, zexp)?)?, &s)?;
        entries.push(at_least(name, req, ctx.refined_val(&ctx.sub(&phi_l, &rhs), true)));
    }
    Ok(CongruenceReport { p, e, kmax, wcap, precision: n, entries })
}
