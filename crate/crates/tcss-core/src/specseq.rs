//! The refined Tate spectral sequence for `TP(O_K; F_p)` and its
//! homotopy fixed point truncation for `TC⁻`.
//!
//! Each σ-weight `j` is a two-column complex. Column 0 holds `z^n σ^j`,
//! column 1 holds `z_0^{n−1} σ^j dz` (indexed by `n ≥ 1`). Every
//! differential comes from one closed formula: with
//! `M = n(p−1) − p·e·j` and `l = v_p(M)`, the class `z^n σ^j` supports
//! `d^r` with `r = (p^{l+1}−1)/(p−1) − 1/e`, hitting
//! `z_0^{pe(p^l−1)/(p−1) + n − 1} σ^j dz` with coefficient
//! `n′·μ̃̄^{(p^l−1)/(p−1)}`, where `n′ = (M/p^l)/(p−1) mod p`. `M = 0`
//! means a permanent cycle.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::arith::FqElement;
use crate::localfield::LocalField;
use crate::num::{invmod, ipow, reduce_i64, vp, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    TP,
    TCminus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSClass {
    pub column: u8,
    pub j: i64,
    pub n: u64,
    pub coeff: FqElement,
    pub filtration: Rat,
}

impl SSClass {
    /// Exponent of `z` (column 0) or of `z_0` (column 1).
    pub fn exponent(&self) -> u64 {
        if self.column == 0 {
            self.n
        } else {
            self.n - 1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Differential {
    pub l: u32,
    pub page: Rat,
    /// Index `n` of the target `z_0^{n−1} σ^j dz`.
    pub target_n: u64,
    pub coeff: FqElement,
}

impl Differential {
    pub fn target_exponent(&self) -> u64 {
        self.target_n - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub j: i64,
    pub source_n: u64,
    pub target_n: u64,
    pub page: Rat,
    pub l: u32,
    pub coeff: FqElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SsError {
    /// A target was already removed by an earlier differential.
    ConsistencyViolation { j: i64, target_n: u64 },
    /// `l` recomputed from the target differs from the source's `l`.
    PairingViolation { j: i64, source_n: u64 },
}

impl fmt::Display for SsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SsError::ConsistencyViolation { j, target_n } => {
                write!(f, "class z_0^{} σ^{j} dz is hit twice", target_n - 1)
            }
            SsError::PairingViolation { j, source_n } => {
                write!(f, "pairing check failed for z^{source_n} σ^{j}")
            }
        }
    }
}

/// Filtration of `z^n σ^j` (column 0) or `z_0^{n−1} σ^j dz` (column 1).
pub fn filtration(e: usize, column: u8, n: u64) -> Rat {
    let e = e as i64;
    if column == 0 {
        Rat::new(n as i64, e)
    } else {
        Rat::new(n as i64 - 1, e) + Rat::from_integer(1)
    }
}

/// The differential supported by `z^n σ^j`, or `None` for a permanent cycle.
pub fn differential_of(lf: &LocalField, n: u64, j: i64) -> Option<Differential> {
    let p = lf.p();
    let e = lf.e() as i64;
    let m = n as i128 * (p as i128 - 1) - (p as i128) * (e as i128) * (j as i128);
    let l = vp(p, m)?;
    let pl = ipow(p, l) as i128;
    let geo = (ipow(p, l) - 1) / (p - 1);
    let page = Rat::from_integer(((ipow(p, l + 1) - 1) / (p - 1)) as i64) - Rat::new(1, e);
    let target_n = p * e as u64 * geo + n;
    let unit = reduce_i64(((m / pl) % p as i128) as i64, p);
    let n_prime = (unit * invmod(p - 1, p).unwrap()) % p;
    let k = lf.residue_field();
    let coeff = k.scale(n_prime, &k.pow(lf.mutilde_bar(), geo as u128));
    Some(Differential { l, page, target_n, coeff })
}

/// `v_p(n(p−1) − p·e·(j−1))`, the `l` read back from a column-1 index.
pub fn target_l(p: u64, e: usize, j: i64, n: u64) -> Option<u32> {
    vp(p, n as i128 * (p as i128 - 1) - p as i128 * e as i128 * (j as i128 - 1))
}

#[derive(Clone, Debug)]
pub struct PageState {
    pub p: u64,
    pub e: usize,
    pub variant: Variant,
    pub n_cap: u64,
    pub j_range: (i64, i64),
    /// Set once every differential has been applied.
    pub at_infinity: bool,
    live: BTreeMap<(u8, i64, u64), SSClass>,
    killed: BTreeSet<(u8, i64, u64)>,
    indeterminate: BTreeSet<(i64, u64)>,
    pub ledger: Vec<LedgerEntry>,
}

impl PageState {
    pub fn classes(&self) -> impl Iterator<Item = &SSClass> {
        self.live.values()
    }

    pub fn is_indeterminate(&self, j: i64, n: u64) -> bool {
        self.indeterminate.contains(&(j, n))
    }

    pub fn indeterminate(&self) -> impl Iterator<Item = &(i64, u64)> {
        self.indeterminate.iter()
    }
}

fn in_truncation(variant: Variant, e: usize, column: u8, j: i64, n: u64) -> bool {
    if variant == Variant::TP {
        return true;
    }
    let e = e as i64;
    if column == 0 {
        n as i64 >= e * j
    } else {
        n as i64 - 1 >= e * (j - 1)
    }
}

/// First page: column 0 and column 1 seeds per σ-weight.
pub fn seed_page(lf: &LocalField, j_range: (i64, i64), n_cap: u64, variant: Variant) -> PageState {
    let p = lf.p();
    let e = lf.e();
    let k = lf.residue_field();
    let mut live = BTreeMap::new();
    for j in j_range.0..=j_range.1 {
        for n in 0..=n_cap {
            let admissible = e > 1 || n % p == 0;
            if !admissible {
                continue;
            }
            for column in [0u8, 1u8] {
                if column == 1 && n == 0 {
                    continue;
                }
                if !in_truncation(variant, e, column, j, n) {
                    continue;
                }
                let class = SSClass { column, j, n, coeff: k.one(), filtration: filtration(e, column, n) };
                live.insert((column, j, n), class);
            }
        }
    }
    PageState {
        p,
        e,
        variant,
        n_cap,
        j_range,
        at_infinity: false,
        live,
        killed: BTreeSet::new(),
        indeterminate: BTreeSet::new(),
        ledger: Vec::new(),
    }
}

/// Apply every differential in increasing page order.
pub fn run_to_infinity(lf: &LocalField, mut state: PageState) -> Result<PageState, SsError> {
    let mut work: Vec<(Rat, i64, u64, Differential)> = state
        .live
        .values()
        .filter(|c| c.column == 0)
        .filter_map(|c| differential_of(lf, c.n, c.j).map(|d| (d.page, c.j, c.n, d)))
        .collect();
    work.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
    for (page, j, n, d) in work {
        if state.e == 1 && d.l == 0 {
            continue;
        }
        if target_l(state.p, state.e, j, d.target_n) != Some(d.l) {
            return Err(SsError::PairingViolation { j, source_n: n });
        }
        debug_assert_eq!(filtration(state.e, 1, d.target_n) - filtration(state.e, 0, n), page);
        if d.target_n > state.n_cap {
            state.indeterminate.insert((j, n));
            continue;
        }
        let tkey = (1u8, j, d.target_n);
        if state.killed.contains(&tkey) {
            return Err(SsError::ConsistencyViolation { j, target_n: d.target_n });
        }
        if !in_truncation(state.variant, state.e, 1, j, d.target_n) {
            continue;
        }
        if !state.live.contains_key(&tkey) {
            // the target was never seeded; nothing to cancel against
            continue;
        }
        state.live.remove(&tkey);
        state.live.remove(&(0, j, n));
        state.killed.insert(tkey);
        state.killed.insert((0, j, n));
        state.ledger.push(LedgerEntry { j, source_n: n, target_n: d.target_n, page, l: d.l, coeff: d.coeff });
    }
    state.at_infinity = true;
    Ok(state)
}

/// Determinate survivors in one column and weight, sorted by filtration.
pub fn einf_extract(state: &PageState, column: u8, j: i64) -> Vec<SSClass> {
    let mut out: Vec<SSClass> = state
        .live
        .values()
        .filter(|c| c.column == column && c.j == j)
        .filter(|c| column == 1 || !state.indeterminate.contains(&(j, c.n)))
        .cloned()
        .collect();
    out.sort_by(|a, b| a.filtration.cmp(&b.filtration).then(a.n.cmp(&b.n)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::{parse_field, FieldSpec};

    fn field(p: u64, e: usize) -> LocalField {
        parse_field(&FieldSpec::standard(p, e, 1, 1)).unwrap()
    }

    #[test]
    fn first_differential_is_z_to_dz() {
        let lf = field(3, 2);
        let d = differential_of(&lf, 1, 0).unwrap();
        assert_eq!((d.l, d.page, d.target_exponent()), (0, Rat::new(1, 2), 0));
        assert_eq!(d.coeff, lf.residue_field().one());
    }

    #[test]
    fn longer_differential_carries_mutilde() {
        let lf = field(3, 2);
        let d = differential_of(&lf, 3, 0).unwrap();
        assert_eq!((d.l, d.page, d.target_exponent()), (1, Rat::new(7, 2), 8));
        assert_eq!(d.coeff, lf.residue_field().from_int(-1));
        assert!(differential_of(&lf, 3, 1).is_none());
    }

    #[test]
    fn weight_zero_leaves_only_the_unit() {
        let lf = field(3, 2);
        let st = run_to_infinity(&lf, seed_page(&lf, (0, 0), 9, Variant::TP)).unwrap();
        let col0: Vec<u64> = einf_extract(&st, 0, 0).iter().map(|c| c.n).collect();
        assert_eq!(col0, [0]);
    }

    #[test]
    fn p2_square_pairs_with_z0_cubed() {
        let lf = field(2, 1);
        let d = differential_of(&lf, 2, 0).unwrap();
        assert_eq!((d.l, d.target_exponent()), (1, 3));
        let st = run_to_infinity(&lf, seed_page(&lf, (0, 0), 40, Variant::TP)).unwrap();
        assert_eq!(einf_extract(&st, 0, 0).iter().map(|c| c.n).collect::<Vec<_>>(), [0]);
    }

    #[test]
    fn e1_seeds_are_p_divisible() {
        let lf = field(3, 1);
        let st = seed_page(&lf, (0, 0), 9, Variant::TP);
        let col0: Vec<u64> = st.classes().filter(|c| c.column == 0).map(|c| c.n).collect();
        assert_eq!(col0, [0, 3, 6, 9]);
    }

    #[test]
    fn tcminus_truncation() {
        let lf = field(2, 1);
        let st = seed_page(&lf, (2, 2), 12, Variant::TCminus);
        let min1 = st.classes().filter(|c| c.column == 1).map(|c| c.exponent()).min();
        assert_eq!(min1, Some(1));
        let lf2 = field(3, 2);
        let st = seed_page(&lf2, (2, 2), 12, Variant::TCminus);
        let min1 = st.classes().filter(|c| c.column == 1).map(|c| c.exponent()).min();
        assert_eq!(min1, Some(2));
    }

    #[test]
    fn z_cubed_sigma_survives() {
        let lf = field(3, 2);
        let st = run_to_infinity(&lf, seed_page(&lf, (1, 1), 60, Variant::TP)).unwrap();
        assert_eq!(einf_extract(&st, 0, 1).iter().map(|c| c.n).collect::<Vec<_>>(), [3]);
    }
}
