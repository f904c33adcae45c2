//! A p-adic field `K` described by an Eisenstein polynomial
//! `E(z) = Σ c_i z^i` over `W(k)`, normalised by `c_0 = p`, together with
//! the invariants the rest of the crate needs: `μ̄`, the period `d`,
//! `δ(E)` mod `p`, the scalar `μ̃̄` and `Ē′(ϖ̄)`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{make_field, ArithError, FieldCtx, FqElement, WittCtx, WittElement};
use crate::num::{binom_exact, powmod};

/// Raw description of a field, as read from a spec file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub f: usize,
    pub modulus: Option<Vec<u64>>,
    pub e: usize,
    pub precision: u32,
    /// Coefficients of `c_1, …, c_{e−1}` in the Witt generator.
    pub eisenstein_mid: Vec<Vec<i64>>,
    /// Coefficients of `c_e`.
    pub mu: Vec<i64>,
}

pub const DEFAULT_PRECISION: u32 = 4;

impl FieldSpec {
    /// `E = μ·z^e + p` with an integer `μ`.
    pub fn standard(p: u64, e: usize, f: usize, mu: i64) -> FieldSpec {
        FieldSpec {
            p,
            f,
            modulus: None,
            e,
            precision: DEFAULT_PRECISION,
            eisenstein_mid: vec![vec![0]; e.saturating_sub(1)],
            mu: vec![mu],
        }
    }

    /// `K = Q_p(ζ_p)` with `E = ((1+z)^p − 1)/z`.
    pub fn cyclotomic(p: u64) -> FieldSpec {
        let e = (p - 1) as usize;
        let mid = (2..p).map(|i| vec![binom_exact(p, i) as i64]).collect();
        FieldSpec { p, f: 1, modulus: None, e, precision: DEFAULT_PRECISION, eisenstein_mid: mid, mu: vec![1] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    Arith(ArithError),
    NotEisenstein { index: usize },
    BadConstant,
    NonUnitLeading,
    PrecisionTooLow { needed: u32, got: u32 },
    Malformed(String),
}

impl From<ArithError> for FieldError {
    fn from(e: ArithError) -> Self {
        FieldError::Arith(e)
    }
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::Arith(e) => write!(f, "{e}"),
            FieldError::NotEisenstein { index } => write!(f, "coefficient c_{index} is not divisible by p"),
            FieldError::BadConstant => f.write_str("constant coefficient must equal p"),
            FieldError::NonUnitLeading => f.write_str("leading coefficient must be a unit"),
            FieldError::PrecisionTooLow { needed, got } => write!(f, "precision {got} too low, need at least {needed}"),
            FieldError::Malformed(s) => write!(f, "malformed field spec: {s}"),
        }
    }
}

/// Validated local field with derived invariants.
#[derive(Clone, Debug)]
pub struct LocalField {
    spec: FieldSpec,
    k: FieldCtx,
    witt: WittCtx,
    /// Integer coefficient lists of `c_0, …, c_e`.
    raw: Vec<Vec<i64>>,
    coeffs: Vec<WittElement>,
    mu_bar: FqElement,
    d: u64,
    delta_e_modp: Vec<FqElement>,
    mutilde_bar: FqElement,
    eprime_bar: Vec<FqElement>,
}

/// Validate a spec and compute the derived invariants.
pub fn parse_field(spec: &FieldSpec) -> Result<LocalField, FieldError> {
    if spec.e == 0 {
        return Err(FieldError::Malformed("e must be at least 1".into()));
    }
    if spec.eisenstein_mid.len() != spec.e - 1 {
        return Err(FieldError::Malformed(alloc::format!(
            "expected {} middle coefficients, got {}",
            spec.e - 1,
            spec.eisenstein_mid.len()
        )));
    }
    let mut raw = Vec::with_capacity(spec.e + 1);
    raw.push(vec![spec.p as i64]);
    raw.extend(spec.eisenstein_mid.iter().cloned());
    raw.push(spec.mu.clone());
    LocalField::from_coefficients(spec, raw)
}

impl LocalField {
    /// Build from explicit `c_0, …, c_e` (the spec's own `c_0` is ignored).
    pub fn from_coefficients(spec: &FieldSpec, raw: Vec<Vec<i64>>) -> Result<LocalField, FieldError> {
        let k = make_field(spec.p, spec.f, spec.modulus.as_deref())?;
        if spec.precision < 2 {
            return Err(FieldError::PrecisionTooLow { needed: 2, got: spec.precision });
        }
        let e = raw.len().checked_sub(1).filter(|&e| e >= 1).ok_or_else(|| FieldError::Malformed("need e ≥ 1".into()))?;
        for c in &raw {
            if c.is_empty() || c.len() > spec.f {
                return Err(FieldError::Malformed(alloc::format!("coefficient lists must have length 1..={}", spec.f)));
            }
        }
        let witt = WittCtx::new(&k, spec.precision);
        let coeffs: Vec<WittElement> = raw.iter().map(|c| witt.element(c)).collect();
        if coeffs[0] != witt.from_int(spec.p as i64) {
            return Err(FieldError::BadConstant);
        }
        for (i, c) in coeffs.iter().enumerate().take(e).skip(1) {
            if !witt.reduce(c).is_zero() {
                return Err(FieldError::NotEisenstein { index: i });
            }
        }
        if !witt.is_unit(&coeffs[e]) {
            return Err(FieldError::NonUnitLeading);
        }
        let mu_bar = witt.reduce(&coeffs[e]);
        let mut spec = spec.clone();
        spec.e = e;
        let mut lf = LocalField {
            spec,
            k: k.clone(),
            witt,
            raw,
            coeffs,
            mu_bar,
            d: 0,
            delta_e_modp: Vec::new(),
            mutilde_bar: k.zero(),
            eprime_bar: Vec::new(),
        };
        lf.d = lf.scan_d();
        let de = lf.delta_e(lf.spec.precision);
        lf.delta_e_modp = de.iter().map(|c| lf.witt.reduce(c)).collect();
        let inv_const = k.inv(&lf.delta_e_modp[0]).expect("δ(E)(0) ≡ 1 mod p");
        lf.mutilde_bar = k.neg(&k.mul(&k.pow(&lf.mu_bar, lf.spec.p as u128), &inv_const));
        let mut ep = vec![k.zero(); e];
        ep[e - 1] = k.scale(e as u64, &lf.mu_bar);
        lf.eprime_bar = ep;
        Ok(lf)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn e(&self) -> usize {
        self.spec.e
    }

    pub fn f(&self) -> usize {
        self.spec.f
    }

    pub fn precision(&self) -> u32 {
        self.spec.precision
    }

    pub fn residue_field(&self) -> &FieldCtx {
        &self.k
    }

    pub fn witt(&self) -> &WittCtx {
        &self.witt
    }

    /// `c_0, …, c_e` at the spec precision.
    pub fn coeffs(&self) -> &[WittElement] {
        &self.coeffs
    }

    pub fn raw_coeffs(&self) -> &[Vec<i64>] {
        &self.raw
    }

    /// `c_0, …, c_e` in another Witt context over the same residue field.
    pub fn coeffs_in(&self, w: &WittCtx) -> Vec<WittElement> {
        self.raw.iter().map(|c| w.element(c)).collect()
    }

    /// `μ = c_e`.
    pub fn mu(&self) -> &WittElement {
        &self.coeffs[self.spec.e]
    }

    pub fn mu_bar(&self) -> &FqElement {
        &self.mu_bar
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn delta_e_modp(&self) -> &[FqElement] {
        &self.delta_e_modp
    }

    pub fn mutilde_bar(&self) -> &FqElement {
        &self.mutilde_bar
    }

    /// `ē·μ̄·z^{e−1}` in `k[z]/(z^e)`.
    pub fn eprime_bar(&self) -> &[FqElement] {
        &self.eprime_bar
    }

    fn scan_d(&self) -> u64 {
        let p = self.spec.p;
        let e = self.spec.e as u64;
        let nm = self.k.to_prime(&self.k.norm(&self.mu_bar)).expect("norm lies in F_p");
        let bound = (p - 1) * (self.k.order() - 1);
        (1..=bound)
            .find(|&d| (e * d) % (p - 1) == 0 && powmod(nm, d as u128, p) == 1)
            .expect("a period exists below (p−1)(p^f−1)")
    }

    /// `δ(E)(z) = (E^φ(z^p) − E(z)^p)/p` with coefficients at precision `n`,
    /// computed exactly at precision `n + 1` before dividing.
    pub fn delta_e(&self, n: u32) -> Vec<WittElement> {
        let p = self.spec.p as usize;
        let e = self.spec.e;
        let w = WittCtx::new(&self.k, n + 1);
        let c = self.coeffs_in(&w);
        let deg = p * e;
        let mut phi_part = vec![w.zero(); deg + 1];
        for (i, ci) in c.iter().enumerate() {
            phi_part[p * i] = w.frobenius(ci);
        }
        // E(z)^p by repeated multiplication
        let mut pow = vec![w.one()];
        for _ in 0..p {
            let mut next = vec![w.zero(); pow.len() + e];
            for (a, x) in pow.iter().enumerate() {
                for (b, y) in c.iter().enumerate() {
                    next[a + b] = w.add(&next[a + b], &w.mul(x, y));
                }
            }
            pow = next;
        }
        let target = WittCtx::new(&self.k, n);
        phi_part
            .iter()
            .zip(&pow)
            .map(|(a, b)| {
                let q = w.div_p(&w.sub(a, b)).expect("E^φ(z^p) ≡ E(z)^p mod p");
                WittElement { coeffs: q.coeffs.iter().map(|&x| x % target.modulus_int()).collect(), prec: n }
            })
            .collect()
    }
}

/// `d` for a field (see [`LocalField::d`]).
pub fn compute_d(lf: &LocalField) -> u64 {
    lf.d()
}

/// `δ(E)` mod `p` as a polynomial over `k` of degree `≤ pe`.
pub fn delta_e_mod_p(lf: &LocalField) -> Vec<FqElement> {
    lf.delta_e_modp().to_vec()
}

pub fn mutilde_bar(lf: &LocalField) -> FqElement {
    lf.mutilde_bar().clone()
}
