//! Hopf algebroids `(B, B⟨t⟩)` with `B = A[y]`, their normalized cobar
//! complexes, and cohomology by linear algebra.
//!
//! Three flavors share one implementation. `A` is a quotient ring
//! `W_N(k)[z]/(rel)`, `y` is a polynomial generator and the right unit is
//! `η_R(y) = y − c·t` for a fixed `c ∈ A`; `A` itself is central.
//!
//! * THH mod `p`: `A = k[z]/(z^e)`, `y = u_0`, `c = e·μ̄·z^{e−1}`.
//! * refined graded: `A = k`, `y = z_0`, `c = 1` if `e = 1`, else `0`.
//! * THH integral: `A = W_N(k)[z]/(E)`, `y = u_0`, `c = E′(ϖ)`.
//!
//! Cochains of degree `n` are `A`-combinations of
//! `y^m t^{[j_1]} | … | t^{[j_n]}` with every `j_i ≥ 1`, stored under the
//! key `[m, j_1, …, j_n]`. The weight of a key is `m + Σ j_i`; THH internal
//! degree is twice the weight.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{make_field, ArithError, FieldCtx, WittCtx, WittElement};
use crate::linalg::{kpoly_deg, smith_kpoly, smith_zpn, KPoly, MatFp};
use crate::localfield::{FieldError, LocalField};
use crate::num::{ipow, mulmod, vp};

// ---------------------------------------------------------------------------
// coefficient rings

/// `W_N(k)[z]/(z^e − Σ rel_i z^i)`; `N = 1` gives a `k`-algebra.
#[derive(Clone, Debug)]
pub struct QuotRing {
    w: WittCtx,
    e: usize,
    rel: Vec<WittElement>,
}

pub type QElem = Vec<WittElement>;

impl QuotRing {
    /// `k[z]/(z^e)`.
    pub fn mod_p(k: &FieldCtx, e: usize) -> QuotRing {
        let w = WittCtx::new(k, 1);
        let rel = vec![w.zero(); e];
        QuotRing { w, e, rel }
    }

    /// `O_K/p^n = W_n(k)[z]/(E)`.
    pub fn integral(lf: &LocalField, n: u32) -> Result<QuotRing, FieldError> {
        let w = WittCtx::new(lf.residue_field(), n);
        let c = lf.coeffs_in(&w);
        let e = lf.e();
        let mu_inv = w.inv(&c[e])?;
        let rel = c[..e].iter().map(|ci| w.neg(&w.mul(&mu_inv, ci))).collect();
        Ok(QuotRing { w, e, rel })
    }

    pub fn witt(&self) -> &WittCtx {
        &self.w
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn zero(&self) -> QElem {
        vec![self.w.zero(); self.e]
    }

    pub fn one(&self) -> QElem {
        self.from_witt(&self.w.one())
    }

    pub fn from_witt(&self, a: &WittElement) -> QElem {
        let mut v = self.zero();
        v[0] = a.clone();
        v
    }

    pub fn from_int(&self, a: i64) -> QElem {
        self.from_witt(&self.w.from_int(a))
    }

    /// `z^l`, reduced.
    pub fn z_pow(&self, l: usize) -> QElem {
        let mut acc = self.one();
        let mut z = self.zero();
        if self.e > 1 {
            z[1] = self.w.one();
        } else {
            z[0] = self.rel[0].clone();
        }
        for _ in 0..l {
            acc = self.mul(&acc, &z);
        }
        acc
    }

    pub fn add(&self, a: &QElem, b: &QElem) -> QElem {
        a.iter().zip(b).map(|(x, y)| self.w.add(x, y)).collect()
    }

    pub fn sub(&self, a: &QElem, b: &QElem) -> QElem {
        a.iter().zip(b).map(|(x, y)| self.w.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &QElem) -> QElem {
        a.iter().map(|x| self.w.neg(x)).collect()
    }

    pub fn scale(&self, s: u64, a: &QElem) -> QElem {
        a.iter().map(|x| self.w.scale(s, x)).collect()
    }

    pub fn mul(&self, a: &QElem, b: &QElem) -> QElem {
        let w = &self.w;
        let e = self.e;
        let mut prod = vec![w.zero(); 2 * e - 1];
        for (i, x) in a.iter().enumerate() {
            if w.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = w.add(&prod[i + j], &w.mul(x, y));
            }
        }
        for d in (e..prod.len()).rev() {
            let top = core::mem::replace(&mut prod[d], w.zero());
            if w.is_zero(&top) {
                continue;
            }
            for (i, r) in self.rel.iter().enumerate() {
                prod[d - e + i] = w.add(&prod[d - e + i], &w.mul(&top, r));
            }
        }
        prod.truncate(e);
        prod
    }

    pub fn is_zero(&self, a: &QElem) -> bool {
        a.iter().all(|x| self.w.is_zero(x))
    }

    /// Rank of `A` over `Z/p^N`.
    pub fn rank(&self) -> usize {
        self.e * self.w.f()
    }

    /// Coordinates over `Z/p^N` in the basis `z^l·x^i`.
    pub fn coords(&self, a: &QElem) -> Vec<u64> {
        let m = self.w.modulus_int();
        a.iter().flat_map(|x| x.coeffs.iter().map(move |&c| c % m)).collect()
    }

    /// Basis element `z^l·x^i` with index `l·f + i`.
    pub fn basis(&self, idx: usize) -> QElem {
        let f = self.w.f();
        let mut v = self.zero();
        let mut digits = vec![0i64; f];
        digits[idx % f] = 1;
        v[idx / f] = self.w.element(&digits);
        v
    }

    /// Matrix (rows = output coordinates) of multiplication by `a`.
    pub fn mul_matrix(&self, a: &QElem) -> Vec<Vec<u64>> {
        let r = self.rank();
        let cols: Vec<Vec<u64>> = (0..r).map(|i| self.coords(&self.mul(a, &self.basis(i)))).collect();
        (0..r).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
    }
}

// ---------------------------------------------------------------------------
// Hopf algebroids

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    ThhModP,
    GrRefined,
    ThhIntegral,
}

#[derive(Clone, Debug)]
pub struct HopfSpec {
    pub flavor: Flavor,
    ring: QuotRing,
    c: QElem,
}

impl HopfSpec {
    pub fn thh_mod_p(lf: &LocalField) -> HopfSpec {
        let ring = QuotRing::mod_p(lf.residue_field(), lf.e());
        let c = lf.eprime_bar().iter().map(|x| ring.w.lift(x)).collect();
        HopfSpec { flavor: Flavor::ThhModP, ring, c }
    }

    pub fn gr_refined(k: &FieldCtx, e: usize) -> HopfSpec {
        let ring = QuotRing::mod_p(k, 1);
        let c = ring.from_int(if e == 1 { 1 } else { 0 });
        HopfSpec { flavor: Flavor::GrRefined, ring, c }
    }

    /// Integral flavor at precision `n`, with `c = E′(ϖ)`.
    pub fn thh_integral(lf: &LocalField, n: u32) -> Result<HopfSpec, FieldError> {
        let ring = QuotRing::integral(lf, n)?;
        let coeffs = lf.coeffs_in(ring.witt());
        let mut c = ring.zero();
        for (i, ci) in coeffs.iter().enumerate().skip(1) {
            let term = ring.mul(&ring.from_witt(&ring.w.scale(i as u64, ci)), &ring.z_pow(i - 1));
            c = ring.add(&c, &term);
        }
        Ok(HopfSpec { flavor: Flavor::ThhIntegral, ring, c })
    }

    pub fn ring(&self) -> &QuotRing {
        &self.ring
    }

    pub fn c(&self) -> &QElem {
        &self.c
    }

    fn y_name(&self) -> &'static str {
        match self.flavor {
            Flavor::GrRefined => "z_0",
            _ => "u_0",
        }
    }

    /// Powers `(−c)^k` for `k ≤ max`.
    fn neg_c_powers(&self, max: usize) -> Vec<QElem> {
        let r = &self.ring;
        let neg_c = r.neg(&self.c);
        let mut out = vec![r.one()];
        for k in 1..=max {
            out.push(r.mul(&out[k - 1], &neg_c));
        }
        out
    }
}

/// `m·(m−1)⋯(m−k+1)` mod `modulus`.
fn falling(m: u64, k: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    for i in 0..k {
        acc = mulmod(acc, (m - i) % modulus, modulus);
    }
    acc
}

pub type Cochain = BTreeMap<Vec<u32>, QElem>;

fn add_term(ring: &QuotRing, out: &mut Cochain, key: Vec<u32>, val: QElem) {
    if ring.is_zero(&val) {
        return;
    }
    let slot = out.entry(key).or_insert_with(|| ring.zero());
    *slot = ring.add(slot, &val);
}

fn is_degenerate(key: &[u32]) -> bool {
    key[1..].contains(&0)
}

/// Unnormalized cobar differential; keys may contain `j_i = 0`.
pub fn cobar_d_full(h: &HopfSpec, x: &Cochain) -> Cochain {
    let r = &h.ring;
    let modulus = r.w.modulus_int();
    let max_m = x.keys().map(|k| k[0] as usize).max().unwrap_or(0);
    let pows = h.neg_c_powers(max_m);
    let mut out = Cochain::new();
    for (key, a) in x {
        let n = key.len() - 1;
        let m = key[0];
        // face 0: the left coefficient passes through η_R
        for k in 0..=m {
            let coef = falling(m as u64, k as u64, modulus);
            let val = r.scale(coef, &r.mul(a, &pows[k as usize]));
            let mut nk = vec![m - k, k];
            nk.extend_from_slice(&key[1..]);
            add_term(r, &mut out, nk, val);
        }
        // faces 1..=n: coproduct on slot i
        for i in 1..=n {
            let val = if i % 2 == 1 { r.neg(a) } else { a.clone() };
            let ji = key[i];
            for s in 0..=ji {
                let mut nk = key[..i].to_vec();
                nk.push(s);
                nk.push(ji - s);
                nk.extend_from_slice(&key[i + 1..]);
                add_term(r, &mut out, nk, val.clone());
            }
        }
        // face n+1: append the unit
        let val = if (n + 1) % 2 == 1 { r.neg(a) } else { a.clone() };
        let mut nk = key.clone();
        nk.push(0);
        add_term(r, &mut out, nk, val);
    }
    out.retain(|_, v| !r.is_zero(v));
    out
}

/// Normalized cobar differential.
pub fn cobar_d(h: &HopfSpec, x: &Cochain) -> Cochain {
    let mut out = cobar_d_full(h, x);
    debug_assert!(out.keys().all(|k| !is_degenerate(k)), "degenerate terms must cancel");
    out.retain(|k, _| !is_degenerate(k));
    out
}

/// Normalized keys of cobar degree `n` and weight `w`, in a fixed order.
pub fn cobar_keys(n: usize, w: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n + 1 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if cur.is_empty() {
            for m in (0..=left).rev() {
                cur.push(m);
                rec(n, left - m, cur, out);
                cur.pop();
            }
        } else {
            for j in 1..=left {
                cur.push(j);
                rec(n, left - j, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, w, &mut Vec::new(), &mut out);
    out
}

fn flatten(r: &QuotRing, keys: &[Vec<u32>], x: &Cochain) -> Vec<u64> {
    let rank = r.rank();
    let mut v = vec![0u64; keys.len() * rank];
    for (key, a) in x {
        let idx = keys.iter().position(|k| k == key).expect("term outside the listed basis");
        v[idx * rank..(idx + 1) * rank].copy_from_slice(&r.coords(a));
    }
    v
}

/// Matrix over `Z/p^N` of `d: C^n → C^{n+1}` in weight `w` (rows = target).
pub fn cobar_matrix(h: &HopfSpec, n: usize, w: u32) -> Vec<Vec<u64>> {
    let r = &h.ring;
    let src = cobar_keys(n, w);
    let tgt = cobar_keys(n + 1, w);
    let rank = r.rank();
    let cols: Vec<Vec<u64>> = src
        .iter()
        .flat_map(|key| (0..rank).map(move |b| (key.clone(), b)))
        .map(|(key, b)| {
            let mut x = Cochain::new();
            x.insert(key, r.basis(b));
            flatten(r, &tgt, &cobar_d(h, &x))
        })
        .collect();
    let rows = tgt.len() * rank;
    (0..rows).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

fn to_matfp(p: u64, rows: &[Vec<u64>], cols: usize) -> MatFp {
    if rows.is_empty() {
        return MatFp::zeros(p, 0, cols);
    }
    MatFp::from_rows(p, rows)
}

/// `d∘d = 0` on every basis cochain of degrees 0 and 1 up to weight `cap`.
pub fn d_squared_vanishes(h: &HopfSpec, cap: u32) -> bool {
    let r = &h.ring;
    (0..=cap).all(|w| {
        (0..2).all(|n| {
            cobar_keys(n, w).into_iter().all(|key| {
                (0..r.rank()).all(|b| {
                    let mut x = Cochain::new();
                    x.insert(key.clone(), r.basis(b));
                    cobar_d(h, &cobar_d(h, &x)).is_empty()
                })
            })
        })
    })
}

/// `u^{(w)} = Σ_j (w−1)!/(w−j)! (−c)^{j−1} y^{w−j} t^{[j]}`, the formal
/// quotient `(y_0^w − y_1^w)/(w·c)`.
pub fn u_cycle(h: &HopfSpec, w: u32) -> Cochain {
    let r = &h.ring;
    let modulus = r.w.modulus_int();
    let pows = h.neg_c_powers(w as usize);
    let mut out = Cochain::new();
    for j in 1..=w {
        let coef = falling(w as u64 - 1, j as u64 - 1, modulus);
        add_term(r, &mut out, vec![w - j, j], r.scale(coef, &pows[j as usize - 1]));
    }
    out
}

fn times(r: &QuotRing, a: &QElem, x: &Cochain) -> Cochain {
    let mut out = Cochain::new();
    for (k, v) in x {
        add_term(r, &mut out, k.clone(), r.mul(a, v));
    }
    out
}

// ---------------------------------------------------------------------------
// cohomology tables

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobarDegree {
    /// Weight `m + Σ j_i` (the power of `u` or of `z`).
    pub weight: u32,
    pub internal_degree: u32,
    /// `k`-dimensions of `H^0, H^1, H^2`.
    pub h: [usize; 3],
    /// Closed-form `k`-dimensions of `H^0, H^1`.
    pub closed: [usize; 2],
    pub witnesses: Vec<String>,
    /// Witnesses are cocycles, independent modulo coboundaries.
    pub witnesses_ok: bool,
}

impl CobarDegree {
    pub fn matches(&self) -> bool {
        self.h[0] == self.closed[0] && self.h[1] == self.closed[1] && self.h[2] == 0 && self.witnesses_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobarTable {
    pub degrees: Vec<CobarDegree>,
    pub d_squared_zero: bool,
}

impl CobarTable {
    pub fn passed(&self) -> bool {
        self.d_squared_zero && self.degrees.iter().all(|d| d.matches())
    }
}

struct Witness {
    label: String,
    cochain: Cochain,
}

fn cohomology_table(
    h: &HopfSpec,
    cap: u32,
    internal: impl Fn(u32) -> u32,
    closed: impl Fn(u32) -> [usize; 2],
    witnesses: impl Fn(u32) -> Vec<Witness>,
) -> CobarTable {
    let r = &h.ring;
    assert_eq!(r.w.precision(), 1, "cohomology tables are computed mod p");
    let p = r.w.p();
    let f = r.w.f();
    let rank = r.rank();
    let mut degrees = Vec::new();
    for w in 0..=cap {
        let dims: Vec<usize> = (0..4).map(|n| cobar_keys(n, w).len() * rank).collect();
        let mats: Vec<MatFp> = (0..3).map(|n| to_matfp(p, &cobar_matrix(h, n, w), dims[n])).collect();
        let ranks: Vec<usize> = mats.iter().map(|m| m.rank()).collect();
        let hp = [dims[0] - ranks[0], dims[1] - ranks[1] - ranks[0], dims[2] - ranks[2] - ranks[1]];
        debug_assert!(hp.iter().all(|x| x % f == 0));
        let wit = witnesses(w);
        let keys1 = cobar_keys(1, w);
        let mut ok = true;
        // coboundaries as rows, followed by the witnesses
        let image = mats[0].transpose();
        let mut rows: Vec<Vec<u64>> = (0..image.rows()).map(|i| (0..image.cols()).map(|j| image.get(i, j)).collect()).collect();
        for x in &wit {
            let v = flatten(r, &keys1, &x.cochain);
            ok &= mats[1].mul_vec(&v).iter().all(|&c| c == 0);
            rows.push(v);
        }
        if !rows.is_empty() {
            ok &= MatFp::from_rows(p, &rows).rank() == ranks[0] + wit.len();
        }
        degrees.push(CobarDegree {
            weight: w,
            internal_degree: internal(w),
            h: [hp[0] / f, hp[1] / f, hp[2] / f],
            closed: closed(w),
            witnesses: wit.into_iter().map(|x| x.label).collect(),
            witnesses_ok: ok,
        });
    }
    CobarTable { degrees, d_squared_zero: d_squared_vanishes(h, cap.min(8)) }
}

/// Closed-form `E²` counts and representatives for `THH(O_K; F_p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThhClosedRow {
    pub n: u32,
    pub row0: Vec<String>,
    pub row1: Vec<String>,
    /// Powers `l` of the row −1 representatives `z^l u^{(n)}`.
    pub row1_l: Vec<usize>,
}

pub fn thh_e2_closed_form(lf: &LocalField, degree_cap: u32) -> Vec<ThhClosedRow> {
    let p = lf.p();
    let e = lf.e();
    (0..=degree_cap)
        .map(|n| {
            let divisible = (e as u64 * n as u64) % p == 0;
            let (row0_l, row1_l): (Vec<usize>, Vec<usize>) = if e > 1 {
                let r0 = (0..e).filter(|&l| l >= 1 || divisible).collect();
                let r1 = if n == 0 { Vec::new() } else { (0..e).filter(|&l| l + 2 <= e || divisible).collect() };
                (r0, r1)
            } else {
                let r0 = if divisible { vec![0] } else { Vec::new() };
                let r1 = if divisible && n > 0 { vec![0] } else { Vec::new() };
                (r0, r1)
            };
            ThhClosedRow {
                n,
                row0: row0_l.iter().map(|&l| format!("z^{l}u^{n}")).collect(),
                row1: row1_l.iter().map(|&l| format!("z^{l}u^({n})")).collect(),
                row1_l,
            }
        })
        .collect()
}

/// Cobar cohomology of the THH mod `p` Hopf algebroid for weights
/// `≤ degree_cap` (internal degrees `≤ 2·degree_cap`), compared with the
/// closed form; the closed-form row −1 representatives are checked to be
/// independent cocycles.
pub fn thh_cobar_e2(lf: &LocalField, degree_cap: u32) -> CobarTable {
    let h = HopfSpec::thh_mod_p(lf);
    let closed = thh_e2_closed_form(lf, degree_cap);
    let r = h.ring.clone();
    cohomology_table(
        &h,
        degree_cap,
        |w| 2 * w,
        |w| {
            let row = &closed[w as usize];
            [row.row0.len(), row.row1.len()]
        },
        |w| {
            let row = &closed[w as usize];
            let base = u_cycle(&h, w);
            row.row1_l
                .iter()
                .zip(&row.row1)
                .map(|(&l, label)| Witness { label: label.clone(), cochain: times(&r, &r.z_pow(l), &base) })
                .collect()
        },
    )
}

/// Cobar cohomology of the graded Hopf algebroid `(k[z], k[z_0]⟨t⟩)`.
pub fn gr_cobar_e2(degree_cap: u32, e: usize, p: u64, f: usize) -> Result<CobarTable, ArithError> {
    let k = make_field(p, f, None)?;
    let h = HopfSpec::gr_refined(&k, e);
    let col0 = |w: u32| e > 1 || w as u64 % p == 0;
    let col1 = |w: u32| w > 0 && col0(w);
    Ok(cohomology_table(
        &h,
        degree_cap,
        |w| w,
        |w| [col0(w) as usize, col1(w) as usize],
        |w| {
            if col1(w) {
                let label = if e > 1 { format!("z_0^{}dz", w - 1) } else { format!("r_{w}") };
                vec![Witness { label, cochain: u_cycle(&h, w) }]
            } else {
                Vec::new()
            }
        },
    ))
}

// ---------------------------------------------------------------------------
// Hopf algebroid axioms

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub counit: bool,
    pub coassociative: bool,
    pub counit_of_units: bool,
    pub coproduct_of_right_unit: bool,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.counit && self.coassociative && self.counit_of_units && self.coproduct_of_right_unit
    }
}

/// `Δ(y^m t^{[i]}) = Σ y^m t^{[a]} ⊗ t^{[i−a]}`.
fn coproduct(i: u32) -> Vec<(u32, u32)> {
    (0..=i).map(|a| (a, i - a)).collect()
}

/// `(Δ ⊗ id)∘Δ` and `(id ⊗ Δ)∘Δ` on `t^{[i]}`, as sorted key lists.
fn triple_coproducts(i: u32) -> (Vec<[u32; 3]>, Vec<[u32; 3]>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (a, b) in coproduct(i) {
        for (a1, a2) in coproduct(a) {
            left.push([a1, a2, b]);
        }
        for (b1, b2) in coproduct(b) {
            right.push([a, b1, b2]);
        }
    }
    left.sort_unstable();
    right.sort_unstable();
    (left, right)
}

/// `η_R(y^m) = (y − c·t)^m ∈ B⟨t⟩`, keyed by `[m′, k]`.
fn right_unit_power(h: &HopfSpec, m: u32) -> Cochain {
    let r = &h.ring;
    let mut x = Cochain::new();
    x.insert(vec![m, 0], r.one());
    cobar_d_full(h, &x).into_iter().filter(|(k, _)| k.len() == 3 && k[2] == 0).map(|(k, v)| (vec![k[0], k[1]], v)).collect()
}

pub fn hopf_axioms_check(h: &HopfSpec, degree_cap: u32) -> AxiomReport {
    let r = &h.ring;
    let cap = degree_cap.max(2);
    let mut counit = true;
    let mut coassociative = true;
    let mut counit_of_units = true;
    let mut coproduct_of_right_unit = true;
    for i in 0..=cap {
        // (ε ⊗ id)Δ and (id ⊗ ε)Δ, with ε(t^{[a]}) = [a = 0]
        let d = coproduct(i);
        let left: Vec<u32> = d.iter().filter(|x| x.0 == 0).map(|x| x.1).collect();
        let right: Vec<u32> = d.iter().filter(|x| x.1 == 0).map(|x| x.0).collect();
        counit &= left == [i] && right == [i];
        let (a, b) = triple_coproducts(i);
        coassociative &= a == b;
    }
    for m in 0..=cap {
        // ε(η_R(y^m)) = y^m
        let eta = right_unit_power(h, m);
        let eps: Vec<_> = eta.iter().filter(|(k, _)| k[1] == 0).collect();
        counit_of_units &= eps.len() == 1 && eps[0].0[0] == m && r.sub(eps[0].1, &r.one()).iter().all(|x| r.w.is_zero(x));
        // Δ(η_R(y^m)) = (y − c(t_1 + t_2))^m, expanded by repeated multiplication
        let mut lhs: BTreeMap<[u32; 3], QElem> = BTreeMap::new();
        for (k, v) in &eta {
            for (a, b) in coproduct(k[1]) {
                let slot = lhs.entry([k[0], a, b]).or_insert_with(|| r.zero());
                *slot = r.add(slot, v);
            }
        }
        let mut rhs: BTreeMap<[u32; 3], QElem> = BTreeMap::new();
        rhs.insert([0, 0, 0], r.one());
        let neg_c = r.neg(&h.c);
        for _ in 0..m {
            let mut next: BTreeMap<[u32; 3], QElem> = BTreeMap::new();
            for (k, v) in &rhs {
                let terms = [
                    ([k[0] + 1, k[1], k[2]], v.clone()),
                    ([k[0], k[1] + 1, k[2]], r.scale(k[1] as u64 + 1, &r.mul(&neg_c, v))),
                    ([k[0], k[1], k[2] + 1], r.scale(k[2] as u64 + 1, &r.mul(&neg_c, v))),
                ];
                for (nk, nv) in terms {
                    let slot = next.entry(nk).or_insert_with(|| r.zero());
                    *slot = r.add(slot, &nv);
                }
            }
            rhs = next;
        }
        lhs.retain(|_, v| !r.is_zero(v));
        rhs.retain(|_, v| !r.is_zero(v));
        coproduct_of_right_unit &= lhs == rhs;
    }
    AxiomReport { counit, coassociative, counit_of_units, coproduct_of_right_unit }
}

// ---------------------------------------------------------------------------
// integral Ext

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralExt {
    pub n: u64,
    /// Exponents `v` of the cyclic factors `Z/p^v` of `O_K/(n·E′(ϖ))`.
    pub exponents: Vec<u32>,
    /// Length over `k`, i.e. `v_ϖ(n·E′(ϖ))`.
    pub k_length: u64,
}

/// Matrix of multiplication by `n·E′(ϖ)` on `O_K/p^N`.
pub fn integral_ext_matrix(lf: &LocalField, n: u64, precision: u32) -> Result<Vec<Vec<u64>>, FieldError> {
    let h = HopfSpec::thh_integral(lf, precision)?;
    let r = &h.ring;
    Ok(r.mul_matrix(&r.scale(n, &h.c)))
}

/// `Ext^{1,2n} = O_K/(n·E′(ϖ))` for `n` in the range, via the Smith form
/// over `Z/p^N` of `u^n ↦ −n·E′(ϖ)·u^{n−1}dz`.
pub fn integral_ext(lf: &LocalField, n_range: (u64, u64), precision: u32) -> Result<Vec<IntegralExt>, FieldError> {
    let p = lf.p();
    let f = lf.f() as u64;
    let mut out = Vec::new();
    for n in n_range.0.max(1)..=n_range.1 {
        let mat = integral_ext_matrix(lf, n, precision)?;
        let pn = ipow(p, precision);
        let neg: Vec<Vec<u64>> = mat.iter().map(|row| row.iter().map(|&x| (pn - x) % pn).collect()).collect();
        let s = smith_zpn(p, precision, &neg);
        if s.zero_pivots > 0 {
            return Err(FieldError::PrecisionTooLow { needed: precision + 1, got: precision });
        }
        let total: u64 = s.exponents.iter().map(|&v| v as u64).sum();
        let exponents = s.exponents.into_iter().filter(|&v| v > 0).collect();
        out.push(IntegralExt { n, exponents, k_length: total / f });
    }
    Ok(out)
}

/// `v_ϖ(n·E′(ϖ)) = e·v_p(n) + min_i (e·v_p(i·c_i) + i − 1)`.
pub fn eprime_valuation(lf: &LocalField, n: u64) -> u64 {
    let e = lf.e() as u64;
    let w = lf.witt();
    let diff = lf
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .filter_map(|(i, c)| {
            let vi = vp(lf.p(), i as i128).unwrap_or(0) as u64;
            w.valuation(c).map(|vc| e * (vi + vc as u64) + i as u64 - 1)
        })
        .min()
        .expect("μ is a unit");
    e * vp(lf.p(), n as i128).unwrap_or(0) as u64 + diff
}

// ---------------------------------------------------------------------------
// Hochschild homology of k[z]/(z^e) over k[z]

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HhRow {
    pub degree: u32,
    /// `None` when the homology has a free `k[z]`-summand.
    pub k_dim: Option<usize>,
    /// Number of nonzero cyclic `k[z]`-summands.
    pub a_rank: usize,
}

/// Generator `x^{ε_0} ⊗ x̄^{⊗k}` of the normalized Hochschild complex of
/// `D = R[x]/(x²)`, `|x| = 1`, `dx = μ̄z^e`; total degree `ε_0 + 2k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct HhGen {
    eps0: u32,
    k: u32,
}

/// Product in `D` of basis monomials `x^a·x^b`, `None` when zero.
fn d_mul(a: u32, b: u32) -> Option<u32> {
    (a + b <= 1).then_some(a + b)
}

/// Total differential `d_int + b` of a generator, as `(target, coefficient)`.
fn hh_differential(k: &FieldCtx, e: usize, g: HhGen) -> Vec<(HhGen, KPoly)> {
    let mut out: Vec<(HhGen, KPoly)> = Vec::new();
    let mut push = |t: HhGen, c: KPoly| {
        if let Some(slot) = out.iter_mut().find(|x| x.0 == t) {
            slot.1 = crate::linalg::kpoly_add(k, &slot.1, &c);
        } else {
            out.push((t, c));
        }
    };
    // internal: d(x) = μ̄z^e on the first factor; d vanishes on D̄
    if g.eps0 == 1 {
        let mut c = vec![k.zero(); e + 1];
        c[e] = k.one();
        push(HhGen { eps0: 0, k: g.k }, c);
    }
    // Hochschild b; bar entries are all x̄ of degree 1
    if g.k >= 1 {
        let entries: Vec<u32> = core::iter::once(g.eps0).chain(core::iter::repeat(1).take(g.k as usize)).collect();
        for i in 0..g.k as usize {
            // interior products x̄·x̄ vanish in D̄; only i = 0 can survive
            let prod = if i == 0 { d_mul(entries[0], entries[1]) } else { None };
            if let Some(a0) = prod {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                push(HhGen { eps0: a0, k: g.k - 1 }, vec![k.from_int(sign)]);
            }
        }
        let last = entries[g.k as usize];
        if let Some(a0) = d_mul(last, entries[0]) {
            let moved: u32 = entries[..g.k as usize].iter().sum();
            let koszul = (last * moved) % 2;
            let sign = if (g.k + koszul) % 2 == 0 { 1 } else { -1 };
            push(HhGen { eps0: a0, k: g.k - 1 }, vec![k.from_int(sign)]);
        }
    }
    out.retain(|x| kpoly_deg(&x.1).is_some());
    out
}

fn hh_gens(m: u32) -> Vec<HhGen> {
    [0, 1].into_iter().filter(|&eps0| eps0 <= m && (m - eps0) % 2 == 0).map(|eps0| HhGen { eps0, k: (m - eps0) / 2 }).collect()
}

/// `HH_*(k[z]/(z^e) / k[z])` in degrees `0..=2·degree_cap`.
pub fn hh_bar_appendix(p: u64, f: usize, e: usize, degree_cap: u32) -> Result<Vec<HhRow>, ArithError> {
    let k = make_field(p, f, None)?;
    let top = 2 * degree_cap;
    let matrix = |m: u32| -> Vec<Vec<KPoly>> {
        let src = hh_gens(m);
        let tgt = if m == 0 { Vec::new() } else { hh_gens(m - 1) };
        tgt.iter()
            .map(|t| {
                src.iter()
                    .map(|s| hh_differential(&k, e, *s).into_iter().find(|x| x.0 == *t).map_or(Vec::new(), |x| x.1))
                    .collect()
            })
            .collect()
    };
    let mut rows = Vec::new();
    for m in 0..=top {
        let rank_out = if m == 0 { 0 } else { smith_kpoly(&k, &matrix(m)).len() };
        let inv_in = smith_kpoly(&k, &matrix(m + 1));
        let free = hh_gens(m).len() - rank_out - inv_in.len();
        let torsion: Vec<usize> = inv_in.iter().filter_map(kpoly_deg).filter(|&d| d > 0).collect();
        rows.push(HhRow {
            degree: m,
            k_dim: (free == 0).then(|| torsion.iter().sum()),
            a_rank: free + torsion.len(),
        });
    }
    Ok(rows)
}

/// Display form of a cochain key, e.g. `u_0^2|t^[1]`.
pub fn monomial_string(h: &HopfSpec, key: &[u32]) -> String {
    let mut s = format!("{}^{}", h.y_name(), key[0]);
    for j in &key[1..] {
        s.push_str(&format!("|t^[{j}]"));
    }
    s
}
