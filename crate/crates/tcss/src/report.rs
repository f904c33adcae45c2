//! Serializable reports (schema `tcss/1`) and their plain-text tables.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use tcss_core::arith::{FieldCtx, FqElement};
use tcss_core::cobar::{CobarTable, HhRow, ThhClosedRow};
use tcss_core::descent::{beta_coefficient, TCReport};
use tcss_core::localfield::LocalField;
use tcss_core::num::fmt_rat;
use tcss_core::pdmodel::CongruenceReport;
use tcss_core::specseq::{PageState, Variant};

use crate::spec::FieldFile;

pub const SCHEMA: &str = "tcss/1";

/// `F_p` elements print as integers, others as polynomials in `x`.
pub fn fq_string(k: &FieldCtx, c: &FqElement) -> String {
    if let Some(v) = k.to_prime(c) {
        return v.to_string();
    }
    let terms: Vec<String> = c
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| match (i, v) {
            (0, _) => v.to_string(),
            (1, 1) => String::from("x"),
            (1, _) => format!("{v}x"),
            (_, 1) => format!("x^{i}"),
            _ => format!("{v}x^{i}"),
        })
        .collect();
    terms.join("+")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSummary {
    pub p: u64,
    pub e: usize,
    pub f: usize,
    pub d: u64,
}

impl FieldSummary {
    pub fn of(lf: &LocalField) -> FieldSummary {
        FieldSummary { p: lf.p(), e: lf.e(), f: lf.f(), d: lf.d() }
    }

    fn label(&self) -> String {
        format!("p={} e={} f={} d={}", self.p, self.e, self.f, self.d)
    }
}

// ---------------------------------------------------------------------------
// field

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldReport {
    pub schema: String,
    pub field: FieldSummary,
    pub spec: FieldFile,
    pub residue_modulus: Vec<u64>,
    pub mu_bar: String,
    pub mutilde_bar: String,
    /// `δ(E) mod p`, coefficients of `z^0, z^1, …`.
    pub delta_e_mod_p: Vec<String>,
    pub beta: Option<String>,
}

impl FieldReport {
    pub fn new(lf: &LocalField) -> FieldReport {
        let k = lf.residue_field();
        FieldReport {
            schema: SCHEMA.into(),
            field: FieldSummary::of(lf),
            spec: FieldFile::from_spec(lf.spec()),
            residue_modulus: k.modulus().to_vec(),
            mu_bar: fq_string(k, lf.mu_bar()),
            mutilde_bar: fq_string(k, lf.mutilde_bar()),
            delta_e_mod_p: lf.delta_e_modp().iter().map(|c| fq_string(k, c)).collect(),
            beta: beta_coefficient(lf).map(|b| fq_string(k, &b)),
        }
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "field       {}", self.field.label());
        let _ = writeln!(s, "k modulus   {:?}", self.residue_modulus);
        let _ = writeln!(s, "mu_bar      {}", self.mu_bar);
        let _ = writeln!(s, "mutilde_bar {}", self.mutilde_bar);
        let _ = writeln!(s, "dE mod p    [{}]", self.delta_e_mod_p.join(", "));
        let _ = writeln!(s, "beta coeff  {}", self.beta.as_deref().unwrap_or("-"));
        s
    }
}

// ---------------------------------------------------------------------------
// thh-e2

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormRow {
    pub weight: u32,
    pub row0: Vec<String>,
    pub row1: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CobarEntry {
    pub degree: u32,
    pub column: i8,
    pub dim: usize,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRow {
    pub weight: u32,
    pub degree: u32,
    pub cobar: [usize; 3],
    pub closed_form: [usize; 2],
    pub witnesses_ok: bool,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThhReport {
    pub schema: String,
    pub field: FieldSummary,
    pub degree_cap: u32,
    pub closed_form: Vec<ClosedFormRow>,
    pub cobar: Vec<CobarEntry>,
    pub oracle: Vec<OracleRow>,
    pub d_squared_zero: bool,
    pub passed: bool,
}

impl ThhReport {
    pub fn new(lf: &LocalField, degree_cap: u32, closed: &[ThhClosedRow], table: &CobarTable) -> ThhReport {
        let mut cobar = Vec::new();
        for d in &table.degrees {
            for (i, &dim) in d.h.iter().enumerate() {
                let witnesses = if i == 1 { d.witnesses.clone() } else { Vec::new() };
                cobar.push(CobarEntry { degree: d.internal_degree, column: -(i as i8), dim, witnesses });
            }
        }
        let oracle: Vec<OracleRow> = table
            .degrees
            .iter()
            .map(|d| OracleRow {
                weight: d.weight,
                degree: d.internal_degree,
                cobar: d.h,
                closed_form: d.closed,
                witnesses_ok: d.witnesses_ok,
                matches: d.matches(),
            })
            .collect();
        let passed = table.d_squared_zero && oracle.iter().all(|r| r.matches);
        ThhReport {
            schema: SCHEMA.into(),
            field: FieldSummary::of(lf),
            degree_cap,
            closed_form: closed.iter().map(|r| ClosedFormRow { weight: r.n, row0: r.row0.clone(), row1: r.row1.clone() }).collect(),
            cobar,
            oracle,
            d_squared_zero: table.d_squared_zero,
            passed,
        }
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "THH E2, {}", self.field.label());
        let _ = writeln!(s, "{:>6} {:>6} {:>12} {:>10} {:>6}  representatives", "weight", "degree", "cobar H0/1/2", "closed 0/1", "match");
        for (o, c) in self.oracle.iter().zip(&self.closed_form) {
            let reps: Vec<String> = c.row0.iter().chain(&c.row1).cloned().collect();
            let _ = writeln!(
                s,
                "{:>6} {:>6} {:>12} {:>10} {:>6}  {}",
                o.weight,
                o.degree,
                format!("{}/{}/{}", o.cobar[0], o.cobar[1], o.cobar[2]),
                format!("{}/{}", o.closed_form[0], o.closed_form[1]),
                if o.matches { "yes" } else { "NO" },
                reps.join(", ")
            );
        }
        let _ = writeln!(s, "d∘d = 0: {}", self.d_squared_zero);
        s
    }
}

// ---------------------------------------------------------------------------
// ss

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub column: u8,
    pub j: i64,
    pub n: u64,
    pub coeff: String,
    pub filtration: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRow {
    pub j: i64,
    pub source_n: u64,
    pub target_n: u64,
    pub page: String,
    pub l: u32,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageDump {
    /// `num/den`, or `inf` for the limit page.
    pub page: String,
    pub classes: Vec<ClassEntry>,
    pub ledger: Vec<LedgerRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsVariant {
    pub variant: String,
    pub j_min: i64,
    pub j_max: i64,
    pub n_cap: u64,
    pub pages: Vec<PageDump>,
    /// Column 0 classes whose differential leaves the cap.
    pub indeterminate: Vec<(i64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsReport {
    pub schema: String,
    pub field: FieldSummary,
    pub variants: Vec<SsVariant>,
}

impl SsVariant {
    /// `E_r` for every page `r` carrying a differential, then `E_∞`.
    /// A class lives on `E_r` when it survives or dies on a page `≥ r`.
    pub fn new(lf: &LocalField, state: &PageState) -> SsVariant {
        let k = lf.residue_field();
        let e = lf.e();
        let ledger: Vec<LedgerRow> = state
            .ledger
            .iter()
            .map(|x| LedgerRow {
                j: x.j,
                source_n: x.source_n,
                target_n: x.target_n,
                page: fmt_rat(&x.page),
                l: x.l,
                coeff: fq_string(k, &x.coeff),
            })
            .collect();
        let survivors: Vec<ClassEntry> = state
            .classes()
            .map(|c| ClassEntry { column: c.column, j: c.j, n: c.n, coeff: fq_string(k, &c.coeff), filtration: fmt_rat(&c.filtration) })
            .collect();
        let pages: BTreeSet<_> = state.ledger.iter().map(|x| x.page).collect();
        let mut dumps = Vec::new();
        for r in pages {
            let mut classes = survivors.clone();
            let mut rows = Vec::new();
            for (x, row) in state.ledger.iter().zip(&ledger) {
                if x.page < r {
                    continue;
                }
                for (column, n) in [(0u8, x.source_n), (1u8, x.target_n)] {
                    let filtration = fmt_rat(&tcss_core::specseq::filtration(e, column, n));
                    classes.push(ClassEntry { column, j: x.j, n, coeff: String::from("1"), filtration });
                }
                if x.page == r {
                    rows.push(row.clone());
                }
            }
            classes.sort_by(|a, b| (a.j, a.column, a.n).cmp(&(b.j, b.column, b.n)));
            dumps.push(PageDump { page: fmt_rat(&r), classes, ledger: rows });
        }
        let mut classes = survivors;
        classes.sort_by(|a, b| (a.j, a.column, a.n).cmp(&(b.j, b.column, b.n)));
        dumps.push(PageDump { page: String::from("inf"), classes, ledger });
        SsVariant {
            variant: String::from(match state.variant {
                Variant::TP => "TP",
                Variant::TCminus => "TC-",
            }),
            j_min: state.j_range.0,
            j_max: state.j_range.1,
            n_cap: state.n_cap,
            pages: dumps,
            indeterminate: state.indeterminate().copied().collect(),
        }
    }
}

impl SsReport {
    pub fn table(&self) -> String {
        let mut s = String::new();
        for v in &self.variants {
            let _ = writeln!(s, "{} spectral sequence, {}, j in [{}, {}], n <= {}", v.variant, self.field.label(), v.j_min, v.j_max, v.n_cap);
            let last = v.pages.last().expect("limit page is always present");
            let _ = writeln!(s, "  differentials:");
            for x in &last.ledger {
                let _ = writeln!(s, "    page {:>8}  j={:<3} z^{}σ^{} -> z0^{}σ^{}dz  coeff {}", x.page, x.j, x.source_n, x.j, x.target_n - 1, x.j, x.coeff);
            }
            let _ = writeln!(s, "  survivors:");
            for j in v.j_min..=v.j_max {
                let row0: Vec<String> = last.classes.iter().filter(|c| c.j == j && c.column == 0).map(|c| c.n.to_string()).collect();
                let row1: Vec<String> = last.classes.iter().filter(|c| c.j == j && c.column == 1).map(|c| (c.n - 1).to_string()).collect();
                let _ = writeln!(s, "    j={j:<3} z^n: [{}]  z0^m dz: [{}]", row0.join(","), row1.join(","));
            }
        }
        s
    }
}

// ---------------------------------------------------------------------------
// tc-e2 / tc

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnJson {
    pub column: i8,
    pub rank: usize,
    pub dims: Vec<usize>,
    pub stable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    pub column: i8,
    pub weight: i64,
    pub degree: i64,
    pub leading: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Json {
    pub columns: Vec<ColumnJson>,
    pub generators: Vec<GeneratorJson>,
    pub beta: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyJson {
    pub degree: i64,
    pub orders: Vec<u64>,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TcReportJson {
    pub schema: String,
    pub field: FieldSummary,
    pub e2: E2Json,
    pub homotopy: Vec<HomotopyJson>,
}

impl TcReportJson {
    pub fn new(lf: &LocalField, r: &TCReport) -> TcReportJson {
        let k = lf.residue_field();
        TcReportJson {
            schema: SCHEMA.into(),
            field: FieldSummary { p: r.p, e: r.e, f: r.f, d: r.d },
            e2: E2Json {
                columns: r.columns.iter().map(|c| ColumnJson { column: c.column, rank: c.rank, dims: c.dims.clone(), stable: c.stable }).collect(),
                generators: r
                    .generators
                    .iter()
                    .map(|g| GeneratorJson { name: g.name.clone(), column: g.column, weight: g.weight, degree: g.degree(), leading: g.leading.clone() })
                    .collect(),
                beta: r.beta.as_ref().map(|b| fq_string(k, b)),
            },
            homotopy: r.homotopy.iter().map(|h| HomotopyJson { degree: h.degree, orders: h.orders.clone(), generators: h.generators.clone() }).collect(),
        }
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "TC, {}", self.field.label());
        if self.homotopy.is_empty() {
            let _ = writeln!(s, "{:>7} {:>6} {:>7}  leading term", "column", "weight", "degree");
            for g in &self.e2.generators {
                let _ = writeln!(s, "{:>7} {:>6} {:>7}  {:<18} {}", g.column, g.weight, g.degree, g.name, g.leading.as_deref().unwrap_or(""));
            }
            for c in &self.e2.columns {
                let _ = writeln!(s, "column {:>2}: rank {} over F_p[β]", c.column, c.rank);
            }
        } else {
            let _ = writeln!(s, "{:>6}  {:<20} generators", "degree", "group");
            for h in &self.homotopy {
                let group = if h.orders.is_empty() {
                    String::from("0")
                } else {
                    h.orders.iter().map(|o| format!("Z/{o}")).collect::<Vec<_>>().join(" + ")
                };
                let _ = writeln!(s, "{:>6}  {:<20} {}", h.degree, group, h.generators.join(", "));
            }
        }
        s
    }
}

// ---------------------------------------------------------------------------
// verify

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceJson {
    pub lemma: String,
    pub required_valuation: String,
    pub measured_valuation: String,
    pub pass: bool,
    pub applicable: bool,
}

pub fn congruences_json(r: &CongruenceReport) -> Vec<CongruenceJson> {
    r.entries
        .iter()
        .map(|x| CongruenceJson {
            lemma: x.name.clone(),
            required_valuation: x.required.render(),
            measured_valuation: x.measured.render(),
            pass: x.pass,
            applicable: x.applicable,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyField {
    pub field: FieldSummary,
    pub kmax: u32,
    pub wcap: u32,
    pub precision: u32,
    pub congruences: Vec<CongruenceJson>,
    pub thh_oracle: bool,
    pub hopf_axioms: bool,
    pub crosscheck: bool,
    pub errors: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub fields: Vec<VerifyField>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn table(&self) -> String {
        let mut s = String::new();
        for f in &self.fields {
            let _ = writeln!(s, "{}  kmax={} Wcap={} N={}", f.field.label(), f.kmax, f.wcap, f.precision);
            for c in &f.congruences {
                let status = match (c.applicable, c.pass) {
                    (false, _) => "n/a",
                    (true, true) => "pass",
                    (true, false) => "FAIL",
                };
                let _ = writeln!(s, "  {:<4} {:<48} need {:>6} got {:>6}", status, c.lemma, c.required_valuation, c.measured_valuation);
            }
            let mark = |b: bool| if b { "pass" } else { "FAIL" };
            let _ = writeln!(s, "  {:<4} THH cobar vs closed form", mark(f.thh_oracle));
            let _ = writeln!(s, "  {:<4} Hopf algebroid axioms", mark(f.hopf_axioms));
            let _ = writeln!(s, "  {:<4} spectral sequence vs closed form", mark(f.crosscheck));
            for e in &f.errors {
                let _ = writeln!(s, "  error: {e}");
            }
        }
        let _ = writeln!(s, "overall: {}", if self.passed { "pass" } else { "FAIL" });
        s
    }
}

// ---------------------------------------------------------------------------
// hh-appendix

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HhRowJson {
    pub degree: u32,
    pub k_dim: Option<usize>,
    pub a_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HhRun {
    pub p: u64,
    pub f: usize,
    pub e: usize,
    pub rows: Vec<HhRowJson>,
    /// Rank 1 in even degrees and 0 in odd degrees.
    pub passed: bool,
}

impl HhRun {
    pub fn new(p: u64, f: usize, e: usize, rows: &[HhRow]) -> HhRun {
        let passed = rows.iter().all(|r| r.a_rank == usize::from(r.degree % 2 == 0));
        HhRun { p, f, e, rows: rows.iter().map(|r| HhRowJson { degree: r.degree, k_dim: r.k_dim, a_rank: r.a_rank }).collect(), passed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HhReport {
    pub schema: String,
    pub runs: Vec<HhRun>,
    pub passed: bool,
}

impl HhReport {
    pub fn table(&self) -> String {
        let mut s = String::new();
        for r in &self.runs {
            let _ = writeln!(s, "HH of k[z]/z^e over k[z], p={} f={} e={}: {}", r.p, r.f, r.e, if r.passed { "pass" } else { "FAIL" });
            for row in &r.rows {
                let dim = row.k_dim.map_or(String::from("free"), |d| d.to_string());
                let _ = writeln!(s, "  degree {:>2}: rank {} over k[z], k-dim {}", row.degree, row.a_rank, dim);
            }
        }
        s
    }
}
