//! Closed-form `E²` terms for `TP`, `TC⁻` and `TC` mod `p`, the
//! Frobenius and canonical maps on leading terms, and the resulting
//! homotopy groups `TC_*(O_K; F_p)`.
//!
//! Row `−1` classes are `z_0^{n−1} σ^j dz` with
//! `n = (p·e·(j−1) + b·p^l)/(p−1)` for an admissible pair `(b, l)`.
//! All windows are compared with integer cross-multiplication.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{h90_solve, FqElement, SolveResult};
use crate::localfield::LocalField;
use crate::num::{ipow, vp};
use crate::specseq::{einf_extract, run_to_infinity, seed_page, SsError, Variant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BLPair {
    pub b: i64,
    pub l: u32,
    pub j: i64,
    pub n: u64,
}

/// A leading term in row 0 (`z^n σ^j`) or row −1 (`z_0^{n−1} σ^j dz`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leading {
    pub row: i8,
    pub j: i64,
    pub n: u64,
    pub coeff: FqElement,
}

pub fn leading_string(row: i8, j: i64, n: u64) -> String {
    if row == 0 {
        format!("z^{n}σ^{j}")
    } else {
        format!("z_0^{}σ^{j}dz", n - 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowBases {
    /// Exponents `n` of row 0 classes `z^n σ^j`.
    pub row0: Vec<u64>,
    /// Row −1 classes; `None` marks the extra class on the critical line.
    pub row1: Vec<(u64, Option<BLPair>)>,
}

impl RowBases {
    pub fn row1_ns(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.row1.iter().map(|x| x.0).collect();
        v.sort_unstable();
        v
    }
}

fn pow_i(p: u64, l: u32) -> i128 {
    ipow(p, l) as i128
}

/// `n` of a pair, if integral and positive.
fn pair_n(p: u64, e: i64, j: i64, b: i64, l: u32) -> Option<u64> {
    let num = p as i128 * e as i128 * (j as i128 - 1) + b as i128 * pow_i(p, l);
    let den = p as i128 - 1;
    if num <= 0 || num % den != 0 {
        return None;
    }
    Some((num / den) as u64)
}

fn admissible_b(p: u64, e: i64, j: i64, b: i64) -> bool {
    let pm1 = p as i64 - 1;
    b.rem_euclid(p as i64) != 0 && (b + e * (j - 1)).rem_euclid(pm1) == 0
}

/// Pairs with `−e(j−1)/p^s < b < pe − ej/p^s`, where `s = l − shift`.
fn window_pairs(lf: &LocalField, j: i64, n_cap: u64, l_min: u32, shift: u32) -> Vec<BLPair> {
    let p = lf.p();
    let e = lf.e() as i64;
    let mut out = Vec::new();
    let bound = (n_cap as i128 + 1) * (p as i128 - 1) + (p as i128) * (e as i128) * ((j - 1).unsigned_abs() as i128 + 1);
    let mut l = l_min;
    loop {
        let s = l - shift;
        let ps = pow_i(p, s);
        let pl = pow_i(p, l);
        if pl > bound && l > l_min + 1 {
            break;
        }
        // b·p^s > −e(j−1)  and  b·p^s < pe·p^s − ej
        let lo = -(e as i128) * (j as i128 - 1);
        let hi = p as i128 * e as i128 * ps - e as i128 * j as i128;
        let b_lo = lo.div_euclid(ps) - 1;
        let b_hi = hi.div_euclid(ps) + 1;
        for b in b_lo..=b_hi {
            let bp = b * ps;
            if !(bp > lo && bp < hi) {
                continue;
            }
            let b = b as i64;
            if !admissible_b(p, e, j, b) {
                continue;
            }
            if let Some(n) = pair_n(p, e, j, b, l) {
                if n <= n_cap {
                    out.push(BLPair { b, l, j, n });
                }
            }
        }
        l += 1;
    }
    out.sort_by_key(|x| (x.n, x.b));
    out
}

fn extra_class(lf: &LocalField, j: i64, n_cap: u64) -> Option<u64> {
    let p = lf.p() as i64;
    let e = lf.e() as i64;
    if j > 1 && (e * (j - 1)) % (p - 1) == 0 {
        let n = (p * e * (j - 1) / (p - 1)) as u64;
        (n <= n_cap).then_some(n)
    } else {
        None
    }
}

/// Row 0 of `E²(TP)`: `z^{pej/(p−1)} σ^j` when `j ≥ 0` and `(p−1) | ej`.
pub fn row0_exponent(lf: &LocalField, j: i64) -> Option<u64> {
    let p = lf.p() as i64;
    let e = lf.e() as i64;
    (j >= 0 && (e * j) % (p - 1) == 0).then(|| (p * e * j / (p - 1)) as u64)
}

pub fn e2_tp_bases(lf: &LocalField, j: i64, n_cap: u64) -> RowBases {
    let row0 = row0_exponent(lf, j).filter(|&n| n <= n_cap).into_iter().collect();
    let mut row1: Vec<(u64, Option<BLPair>)> = window_pairs(lf, j, n_cap, 1, 1).into_iter().map(|x| (x.n, Some(x))).collect();
    if let Some(n) = extra_class(lf, j, n_cap) {
        row1.push((n, None));
    }
    row1.sort_by_key(|x| x.0);
    RowBases { row0, row1 }
}

pub fn e2_tcminus_bases(lf: &LocalField, j: i64, n_cap: u64) -> RowBases {
    if j <= 0 {
        return e2_tp_bases(lf, j, n_cap);
    }
    let row0 = row0_exponent(lf, j).filter(|&n| n <= n_cap).into_iter().collect();
    let mut row1: Vec<(u64, Option<BLPair>)> = window_pairs(lf, j, n_cap, 0, 0).into_iter().map(|x| (x.n, Some(x))).collect();
    if let Some(n) = extra_class(lf, j, n_cap) {
        row1.push((n, None));
    }
    row1.sort_by_key(|x| x.0);
    RowBases { row0, row1 }
}

/// Basis of `ker(can)` in row −1 of weight `j ≥ 1`, ordered by `b`.
pub fn ker_can_basis(lf: &LocalField, j: i64) -> Vec<BLPair> {
    assert!(j >= 1, "ker(can) is only considered for j ≥ 1");
    let p = lf.p() as i64;
    let e = lf.e() as i64;
    let mut out = Vec::new();
    for b in p * e * (1 - j)..p * e {
        if !admissible_b(p as u64, e, j, b) {
            continue;
        }
        // least l ≥ 0 with e·j < (pe − b)·p^l; then p^{l−1}(pe − b) ≤ e·j
        let gap = (p * e - b) as i128;
        let mut l = 0u32;
        while (e * j) as i128 >= gap * pow_i(p as u64, l) {
            l += 1;
        }
        let lower_ok = if l == 0 { gap <= (p * e * j) as i128 } else { gap * pow_i(p as u64, l - 1) <= (e * j) as i128 };
        if !lower_ok {
            continue;
        }
        if let Some(n) = pair_n(p as u64, e, j, b, l) {
            out.push(BLPair { b, l, j, n });
        }
    }
    debug_assert_eq!(out.len() as i64, e * j);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescentError {
    /// Row 0 input with `n < e·j`, or row −1 input below the truncation.
    DomainViolation { row: i8, j: i64, n: u64 },
}

impl fmt::Display for DescentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DescentError::DomainViolation { row, j, n } => {
                write!(f, "{} is outside the TC⁻ truncation", leading_string(*row, *j, *n))
            }
        }
    }
}

/// Frobenius `TC⁻ → TP` on leading terms.
///
/// Row 0: `c·z^n σ^j ↦ μ̄^{−pj} φ(c) z^{p(n−ej)} σ^j`.
/// Row −1: `c·z_0^{n−1} σ^j dz ↦ μ̄^{−p(j−1)} φ(c) z_0^{p(n−e(j−1))−1} σ^j dz`.
/// The row −1 sign is `+`: it is inherited from `h ≡ +z_0^{p−1}(z_0 − z_1)`.
pub fn frobenius_leading(lf: &LocalField, class: &Leading) -> Result<Leading, DescentError> {
    let k = lf.residue_field();
    let p = lf.p() as i64;
    let e = lf.e() as i64;
    let (shift, twist) = if class.row == 0 { (e * class.j, class.j) } else { (e * (class.j - 1), class.j - 1) };
    let base = class.n as i64 - shift;
    if base < 0 || (class.row != 0 && base < 1) {
        return Err(DescentError::DomainViolation { row: class.row, j: class.j, n: class.n });
    }
    let scal = k.zpow(lf.mu_bar(), -p * twist).expect("μ̄ is a unit");
    let coeff = k.mul(&scal, &k.frobenius(&class.coeff));
    Ok(Leading { row: class.row, j: class.j, n: (p * base) as u64, coeff })
}

/// Scalar `b` with `(can − φ)(c·x) = (c − b·φ(c))·x` on a fixed leading term.
fn fixed_line_twist(lf: &LocalField, twist: i64) -> FqElement {
    lf.residue_field().zpow(lf.mu_bar(), -(lf.p() as i64) * twist).unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelClass {
    /// `None` for the class on the critical line.
    pub pair: Option<BLPair>,
    /// Index `i` (by increasing `b`) and basis index `l` of `k` for α classes.
    pub alpha_index: Option<(usize, usize)>,
    pub leading: Leading,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanPhi {
    pub j: i64,
    pub kernel: Vec<KernelClass>,
    /// Cokernel classes on the critical line, by a representative leading term.
    pub coker: Vec<Leading>,
}

impl CanPhi {
    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    pub fn coker_dim(&self) -> usize {
        self.coker.len()
    }
}

/// Kernel and cokernel of `can − φ` on row −1 of weight `j`, over `F_p`.
pub fn can_phi_analysis(lf: &LocalField, j: i64) -> CanPhi {
    let mut out = CanPhi { j, kernel: Vec::new(), coker: Vec::new() };
    if j <= 0 {
        return out;
    }
    let k = lf.residue_field();
    let p = lf.p() as i64;
    let e = lf.e() as i64;
    if j >= 2 && (e * (j - 1)) % (p - 1) == 0 {
        let n = (p * e * (j - 1) / (p - 1)) as u64;
        let b = fixed_line_twist(lf, j - 1);
        if let SolveResult::Degenerate { kernel, .. } = h90_solve(k, &b, &k.zero()).unwrap() {
            out.kernel.push(KernelClass { pair: None, alpha_index: None, leading: Leading { row: -1, j, n, coeff: kernel } });
            let rep = (0..k.f())
                .map(|i| k.basis(i))
                .find(|c| !h90_solve(k, &b, c).unwrap().solvable())
                .expect("a one-dimensional cokernel has a basis representative");
            out.coker.push(Leading { row: -1, j, n, coeff: rep });
        }
    }
    let above: Vec<BLPair> = ker_can_basis(lf, j).into_iter().filter(|x| x.b > 0).collect();
    debug_assert_eq!(above.len() as i64, e);
    for (i, pair) in above.iter().enumerate() {
        for l in 0..k.f() {
            out.kernel.push(KernelClass {
                pair: Some(*pair),
                alpha_index: Some((i + 1, l + 1)),
                leading: Leading { row: -1, j, n: pair.n, coeff: k.basis(l) },
            });
        }
    }
    out
}

/// Kernel and cokernel dimensions of `can − φ` on row 0 of weight `j`.
pub fn row0_can_phi(lf: &LocalField, j: i64) -> (usize, usize) {
    match row0_exponent(lf, j) {
        None => (0, 0),
        Some(_) => {
            let k = lf.residue_field();
            let r = h90_solve(k, &fixed_line_twist(lf, j), &k.zero()).unwrap();
            (r.kernel_dim(), r.coker_dim())
        }
    }
}

/// Smallest-index `c ∈ k^×` with `c^{p−1} = μ̄^{pd}`.
pub fn beta_coefficient(lf: &LocalField) -> Option<FqElement> {
    let k = lf.residue_field();
    let target = k.pow(lf.mu_bar(), (lf.p() * lf.d()) as u128);
    k.elements().skip(1).find(|c| k.pow(c, (lf.p() - 1) as u128) == target)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Column `0`, `−1` or `−2`.
    pub column: i8,
    pub weight: i64,
    pub leading: Option<String>,
}

impl Generator {
    /// Bidegree `(column, 2·weight)`.
    pub fn bidegree(&self) -> (i64, i64) {
        (self.column as i64, 2 * self.weight)
    }

    pub fn degree(&self) -> i64 {
        2 * self.weight + self.column as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnSummary {
    pub column: i8,
    /// `F_p`-dimension per weight `0..=max_weight`.
    pub dims: Vec<usize>,
    pub rank: usize,
    /// Whether `dim_j = dim_{j−d}` holds across the last period of the window.
    pub stable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyGroup {
    pub degree: i64,
    pub orders: Vec<u64>,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TCReport {
    pub p: u64,
    pub e: usize,
    pub f: usize,
    pub d: u64,
    pub beta: Option<FqElement>,
    pub generators: Vec<Generator>,
    pub columns: Vec<ColumnSummary>,
    pub homotopy: Vec<HomotopyGroup>,
}

fn coeff_string(lf: &LocalField, c: &FqElement) -> String {
    let k = lf.residue_field();
    if let Some(v) = k.to_prime(c) {
        return format!("{v}");
    }
    let terms: Vec<String> = c
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| match i {
            0 => format!("{x}"),
            1 => format!("{x}x"),
            _ => format!("{x}x^{i}"),
        })
        .collect();
    format!("({})", terms.join("+"))
}

/// Generators and `F_p[β]`-ranks of `E²(TC)` per column.
pub fn tc_e2_inventory(lf: &LocalField, degree_cap: i64) -> TCReport {
    let d = lf.d() as i64;
    let f = lf.f();
    let max_w = (degree_cap / 2 + 2).max(3 * d + 2);
    let weights = 0..=max_w;
    let mut col0 = vec![0usize; (max_w + 1) as usize];
    let mut col1 = vec![0usize; (max_w + 1) as usize];
    let mut col2 = vec![0usize; (max_w + 1) as usize];
    // per-source dimension tables for naming
    let mut src: Vec<[usize; 5]> = vec![[0; 5]; (max_w + 1) as usize];
    let mut analyses = Vec::new();
    for j in weights.clone() {
        let (k0, c0) = row0_can_phi(lf, j);
        let cp = can_phi_analysis(lf, j);
        let crit_k = cp.kernel.iter().filter(|x| x.pair.is_none()).count();
        let alpha_k = cp.kernel.len() - crit_k;
        let u = j as usize;
        col0[u] = k0;
        col1[u] = c0 + cp.kernel.len();
        col2[u] = cp.coker.len();
        src[u] = [k0, c0, crit_k, alpha_k, cp.coker.len()];
        analyses.push(cp);
    }
    let mut generators = Vec::new();
    let names = ["1", "λ", "γ", "α", "λγ"];
    let columns_of = [0i8, -1, -1, -1, -2];
    for j in weights.clone() {
        let u = j as usize;
        for s in 0..5 {
            let prev = if j >= d { src[u - d as usize][s] } else { 0 };
            let cur = src[u][s];
            if cur <= prev {
                continue;
            }
            let fresh = cur - prev;
            if s == 3 {
                let cp = &analyses[u];
                for kc in cp.kernel.iter().filter(|x| x.pair.is_some()).take(fresh) {
                    let (i, l) = kc.alpha_index.unwrap();
                    generators.push(Generator {
                        name: format!("α^({j})_{{{i},{l}}}"),
                        column: -1,
                        weight: j,
                        leading: Some(format!("{}·{}", coeff_string(lf, &kc.leading.coeff), leading_string(-1, j, kc.leading.n))),
                    });
                }
                continue;
            }
            for _ in 0..fresh {
                let leading = match s {
                    2 => analyses[u]
                        .kernel
                        .iter()
                        .find(|x| x.pair.is_none())
                        .map(|kc| format!("{}·{}", coeff_string(lf, &kc.leading.coeff), leading_string(-1, j, kc.leading.n))),
                    0 if j == 0 => Some(String::from("1")),
                    1 if j == 0 => Some(String::from("1")),
                    _ => None,
                };
                generators.push(Generator { name: String::from(names[s]), column: columns_of[s], weight: j, leading });
            }
        }
    }
    let summarize = |column: i8, dims: Vec<usize>| {
        let mut rank = 0;
        let mut stable = true;
        for j in 0..dims.len() {
            let prev = if j as i64 >= d { dims[j - d as usize] } else { 0 };
            if dims[j] >= prev {
                rank += dims[j] - prev;
            } else {
                stable = false;
            }
            if j as i64 > max_w - d && dims[j] != prev {
                stable = false;
            }
        }
        ColumnSummary { column, dims, rank, stable }
    };
    let beta = beta_coefficient(lf);
    let mut report = TCReport {
        p: lf.p(),
        e: lf.e(),
        f,
        d: lf.d(),
        beta,
        generators,
        columns: vec![summarize(0, col0), summarize(-1, col1), summarize(-2, col2)],
        homotopy: Vec::new(),
    };
    report.generators.sort_by(|a, b| (a.column != 0, -a.column, a.weight).cmp(&(b.column != 0, -b.column, b.weight)).then(a.name.cmp(&b.name)));
    report
}

/// `TC_m(O_K; F_p)` for `m` in the window, as lists of cyclic orders.
pub fn tc_homotopy_groups(lf: &LocalField, window: (i64, i64)) -> TCReport {
    let (lo, hi) = window;
    let mut report = tc_e2_inventory(lf, hi.max(2) + 2);
    let p = lf.p();
    let d = lf.d() as i64;
    let hidden_z4 = p == 2 && lf.e() % 2 == 1 && lf.f() % 2 == 1;
    let mut groups = Vec::new();
    for m in lo..=hi {
        let mut names: Vec<String> = Vec::new();
        for g in &report.generators {
            let base = g.degree();
            if m < base || (m - base) % (2 * d) != 0 {
                continue;
            }
            let k = (m - base) / (2 * d);
            let name = match (k, g.name.as_str()) {
                (0, _) => g.name.clone(),
                (_, "1") if k == 1 => String::from("β"),
                (_, "1") => format!("β^{k}"),
                (1, _) => format!("β{}", g.name),
                _ => format!("β^{k}{}", g.name),
            };
            names.push(name);
        }
        let mut orders = vec![p; names.len()];
        if hidden_z4 && m > 0 && m % 2 == 0 && (m / 2) % 2 == 1 {
            // β^{m/2} and β^{m/2−1}λγ merge into one Z/4
            let k = m / 2;
            let beta_name = if k == 1 { String::from("β") } else { format!("β^{k}") };
            let lg_name = match k - 1 {
                0 => String::from("λγ"),
                1 => String::from("βλγ"),
                t => format!("β^{t}λγ"),
            };
            if let (Some(bi), Some(li)) = (names.iter().position(|x| *x == beta_name), names.iter().position(|x| *x == lg_name)) {
                names.remove(li);
                orders.pop();
                let bi = if li < bi { bi - 1 } else { bi };
                orders[bi] = 4;
            }
        }
        let mut pairs: Vec<(u64, String)> = orders.into_iter().zip(names).collect();
        pairs.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        groups.push(HomotopyGroup {
            degree: m,
            orders: pairs.iter().map(|x| x.0).collect(),
            generators: pairs.into_iter().map(|x| x.1).collect(),
        });
    }
    report.homotopy = groups;
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckEntry {
    pub variant: Variant,
    pub column: u8,
    pub j: i64,
    pub closed_form: Vec<u64>,
    pub engine: Vec<u64>,
}

impl CrosscheckEntry {
    pub fn matches(&self) -> bool {
        self.closed_form == self.engine
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub entries: Vec<CrosscheckEntry>,
    pub engine_error: Option<SsError>,
    pub ledger_len: usize,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.engine_error.is_none() && self.entries.iter().all(|e| e.matches())
    }
}

/// Compare the closed-form bases with the spectral sequence survivors.
pub fn crosscheck_with_specseq(lf: &LocalField, j_range: (i64, i64), n_cap: u64) -> CrosscheckReport {
    let mut entries = Vec::new();
    let mut ledger_len = 0;
    for variant in [Variant::TP, Variant::TCminus] {
        let state = match run_to_infinity(lf, seed_page(lf, j_range, n_cap, variant)) {
            Ok(s) => s,
            Err(err) => return CrosscheckReport { entries, engine_error: Some(err), ledger_len },
        };
        ledger_len += state.ledger.len();
        for j in j_range.0..=j_range.1 {
            let closed = match variant {
                Variant::TP => e2_tp_bases(lf, j, n_cap),
                Variant::TCminus => e2_tcminus_bases(lf, j, n_cap),
            };
            for column in [0u8, 1u8] {
                let engine: Vec<u64> = einf_extract(&state, column, j).iter().map(|c| c.n).collect();
                let mut closed_form = if column == 0 { closed.row0.clone() } else { closed.row1_ns() };
                closed_form.sort_unstable();
                let mut engine = engine;
                engine.sort_unstable();
                entries.push(CrosscheckEntry { variant, column, j, closed_form, engine });
            }
        }
    }
    CrosscheckReport { entries, engine_error: None, ledger_len }
}

/// `l` recomputed from a pair's `n`.
pub fn pair_l(p: u64, e: usize, pair: &BLPair) -> Option<u32> {
    vp(p, pair.n as i128 * (p as i128 - 1) - p as i128 * e as i128 * (pair.j as i128 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::{parse_field, FieldSpec};

    fn field(p: u64, e: usize, f: usize) -> LocalField {
        parse_field(&FieldSpec::standard(p, e, f, 1)).unwrap()
    }

    #[test]
    fn tp_row_minus_one_for_q3_weight_one() {
        let lf = field(3, 1, 1);
        let bases = e2_tp_bases(&lf, 1, 100);
        let got: Vec<(i64, u32, u64)> = bases.row1.iter().map(|(n, x)| (x.unwrap().b, x.unwrap().l, *n - 1)).collect();
        assert_eq!(got, [(2, 2, 8), (2, 3, 26), (2, 4, 80)]);
    }

    #[test]
    fn tp_row_zero() {
        assert_eq!(e2_tp_bases(&field(3, 2, 1), 1, 50).row0, [3]);
        assert!(e2_tp_bases(&field(3, 2, 1), -1, 50).row0.is_empty());
    }

    #[test]
    fn tcminus_examples() {
        let b = e2_tcminus_bases(&field(3, 1, 1), 1, 10);
        assert_eq!(b.row1[0], (3, Some(BLPair { b: 2, l: 1, j: 1, n: 3 })));
        let b = e2_tcminus_bases(&field(2, 1, 1), 2, 12);
        assert_eq!(b.row1_ns(), [2, 6, 10]);
        assert!(b.row1.iter().any(|x| x.1 == Some(BLPair { b: 1, l: 2, j: 2, n: 6 })));
    }

    #[test]
    fn ker_can_examples() {
        let k = ker_can_basis(&field(3, 1, 1), 1);
        assert_eq!(k.iter().map(|x| (x.b, x.l)).collect::<Vec<_>>(), [(2, 1)]);
        let k = ker_can_basis(&field(2, 1, 1), 2);
        let mut bl: Vec<(i64, u32)> = k.iter().map(|x| (x.b, x.l)).collect();
        bl.sort();
        assert_eq!(bl, [(-1, 0), (1, 2)]);
    }

    #[test]
    fn frobenius_on_row_zero() {
        let lf = field(3, 2, 1);
        let k = lf.residue_field();
        let x = Leading { row: 0, j: 1, n: 2, coeff: k.one() };
        let y = frobenius_leading(&lf, &x).unwrap();
        assert_eq!((y.n, y.coeff), (0, k.one()));
        let bad = Leading { row: 0, j: 1, n: 1, coeff: k.one() };
        assert!(frobenius_leading(&lf, &bad).is_err());
    }

    #[test]
    fn gamma_class_at_d_plus_one() {
        let lf = field(3, 1, 1);
        assert_eq!(lf.d(), 2);
        let cp = can_phi_analysis(&lf, 3);
        assert_eq!(cp.coker.len(), 1);
        assert_eq!(cp.coker[0].n, 3);
        let crit: Vec<_> = cp.kernel.iter().filter(|x| x.pair.is_none()).collect();
        assert_eq!(crit.len(), 1);
        assert!(can_phi_analysis(&lf, 0).kernel.is_empty());
    }

    #[test]
    fn q3_homotopy_low_degrees() {
        let r = tc_homotopy_groups(&field(3, 1, 1), (-1, 4));
        let orders: Vec<(i64, Vec<u64>)> = r.homotopy.iter().map(|g| (g.degree, g.orders.clone())).collect();
        assert_eq!(orders[0], (-1, vec![3]));
        assert_eq!(orders[2], (1, vec![3]));
        assert_eq!(orders[4], (3, vec![3, 3]));
    }

    #[test]
    fn closed_forms_match_engine_on_grid() {
        for (p, e, f) in [(2, 1, 1), (2, 3, 1), (2, 5, 1), (3, 1, 1), (3, 2, 1), (3, 2, 2), (5, 4, 1)] {
            let r = crosscheck_with_specseq(&field(p, e, f), (-3, 6), 200);
            for x in r.entries.iter().filter(|x| !x.matches()) {
                panic!("({p},{e},{f}) {:?} col {} j {}: {:?} vs {:?}", x.variant, x.column, x.j, x.closed_form, x.engine);
            }
            assert!(r.passed(), "({p},{e},{f}): {:?}", r.engine_error);
        }
    }

    #[test]
    fn positive_kernel_pairs_lie_in_tcminus_not_tp() {
        for (p, e) in [(2, 1), (2, 3), (3, 1), (3, 2), (5, 4)] {
            let lf = field(p, e, 1);
            for j in 1..6 {
                let cap = 4000;
                let tcm = e2_tcminus_bases(&lf, j, cap).row1_ns();
                let tp = e2_tp_bases(&lf, j, cap).row1_ns();
                for x in ker_can_basis(&lf, j).into_iter().filter(|x| x.b > 0) {
                    assert!(tcm.contains(&x.n) && !tp.contains(&x.n), "({p},{e}) j={j} {x:?}");
                }
            }
        }
    }
}
