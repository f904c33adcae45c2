//! Command-line interface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tcss_core::cobar::{hh_bar_appendix, hopf_axioms_check, thh_cobar_e2, thh_e2_closed_form, HopfSpec};
use tcss_core::descent::{crosscheck_with_specseq, tc_e2_inventory, tc_homotopy_groups};
use tcss_core::localfield::{parse_field, LocalField};
use tcss_core::pdmodel::{default_truncation, verify_section3_with};
use tcss_core::specseq::{run_to_infinity, seed_page, Variant};

use crate::error::Error;
use crate::report::*;
use crate::spec::{default_grid, load_field};

#[derive(Debug, Parser)]
#[command(name = "tcss", version, about = "Mod p topological cyclic homology of p-adic integer rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    #[default]
    Table,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Field spec file (JSON or TOML).
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Witt vector precision; overrides the spec file.
    #[arg(long)]
    pub precision: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants of the field: μ̄, d, μ̃̄, δ(E) mod p.
    Field {
        #[command(flatten)]
        common: Common,
    },
    /// THH E² bases and the cobar comparison.
    ThhE2 {
        #[command(flatten)]
        common: Common,
        /// Weight cap; internal degrees up to twice this.
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
        degree_cap: u32,
    },
    /// Spectral sequence pages and differential ledger for TP and TC⁻.
    Ss {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        j_min: i64,
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        j_max: i64,
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
        n_cap: u64,
    },
    /// Generators of E²(TC) and their F_p[β]-ranks.
    TcE2 {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(i64).range(1..))]
        degree_cap: i64,
    },
    /// TC_m(O_K; F_p) for m in [--j-min, --j-max].
    Tc {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
        j_min: i64,
        #[arg(long, default_value_t = 8, allow_negative_numbers = true)]
        j_max: i64,
    },
    /// Congruence suite, cobar and spectral sequence cross-checks.
    /// Runs on the default grid unless --input is given.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        kmax: u32,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
        degree_cap: u32,
        #[arg(long, default_value_t = -3, allow_negative_numbers = true)]
        j_min: i64,
        #[arg(long, default_value_t = 6, allow_negative_numbers = true)]
        j_max: i64,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        n_cap: u64,
    },
    /// Hochschild homology of k[z]/(z^e) over k[z].
    /// Runs e ∈ {1,2,3}, p ∈ {2,3} unless --input is given.
    HhAppendix {
        #[command(flatten)]
        common: Common,
        /// Degrees up to twice this.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        degree_cap: u32,
    },
}

/// Outcome of a subcommand: text for stdout and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

fn render<T: Serialize>(format: Format, report: &T, table: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
        Format::Table => table(report),
    }
}

fn require_field(common: &Common) -> Result<LocalField, Error> {
    let path = common.input.as_ref().ok_or_else(|| Error::Spec(String::from("--input is required")))?;
    load_field(path, common.precision)
}

fn check_range(lo: i64, hi: i64) -> Result<(), Error> {
    if lo > hi {
        return Err(Error::Spec(format!("empty range [{lo}, {hi}]")));
    }
    Ok(())
}

pub fn run(cmd: &Command) -> Result<Outcome, Error> {
    let ok = |output| Ok(Outcome { output, code: 0 });
    match cmd {
        Command::Field { common } => {
            let lf = require_field(common)?;
            ok(render(common.format, &FieldReport::new(&lf), FieldReport::table))
        }
        Command::ThhE2 { common, degree_cap } => {
            let lf = require_field(common)?;
            let closed = thh_e2_closed_form(&lf, *degree_cap);
            let table = thh_cobar_e2(&lf, *degree_cap);
            ok(render(common.format, &ThhReport::new(&lf, *degree_cap, &closed, &table), ThhReport::table))
        }
        Command::Ss { common, j_min, j_max, n_cap } => {
            check_range(*j_min, *j_max)?;
            let lf = require_field(common)?;
            let mut variants = Vec::new();
            for v in [Variant::TP, Variant::TCminus] {
                let state = run_to_infinity(&lf, seed_page(&lf, (*j_min, *j_max), *n_cap, v)).map_err(|e| Error::Compute(e.to_string()))?;
                variants.push(SsVariant::new(&lf, &state));
            }
            let report = SsReport { schema: SCHEMA.into(), field: FieldSummary::of(&lf), variants };
            ok(render(common.format, &report, SsReport::table))
        }
        Command::TcE2 { common, degree_cap } => {
            let lf = require_field(common)?;
            let r = tc_e2_inventory(&lf, *degree_cap);
            ok(render(common.format, &TcReportJson::new(&lf, &r), TcReportJson::table))
        }
        Command::Tc { common, j_min, j_max } => {
            check_range(*j_min, *j_max)?;
            let lf = require_field(common)?;
            let r = tc_homotopy_groups(&lf, (*j_min, *j_max));
            ok(render(common.format, &TcReportJson::new(&lf, &r), TcReportJson::table))
        }
        Command::Verify { common, kmax, degree_cap, j_min, j_max, n_cap } => {
            check_range(*j_min, *j_max)?;
            let fields = match &common.input {
                Some(_) => vec![require_field(common)?],
                None => default_grid().iter().map(parse_field).collect::<Result<Vec<_>, _>>()?,
            };
            let fields: Vec<VerifyField> =
                fields.iter().map(|lf| verify_field(lf, *kmax, *degree_cap, (*j_min, *j_max), *n_cap)).collect();
            let passed = fields.iter().all(|f| f.passed);
            let report = VerifyReport { schema: SCHEMA.into(), fields, passed };
            Ok(Outcome { output: render(common.format, &report, VerifyReport::table), code: if passed { 0 } else { 3 } })
        }
        Command::HhAppendix { common, degree_cap } => {
            let params: Vec<(u64, usize, usize)> = match &common.input {
                Some(_) => {
                    let lf = require_field(common)?;
                    vec![(lf.p(), lf.f(), lf.e())]
                }
                None => [2u64, 3].into_iter().flat_map(|p| (1..=3).map(move |e| (p, 1, e))).collect(),
            };
            let mut runs = Vec::new();
            for (p, f, e) in params {
                let rows = hh_bar_appendix(p, f, e, *degree_cap).map_err(|e| Error::Compute(e.to_string()))?;
                runs.push(HhRun::new(p, f, e, &rows));
            }
            let passed = runs.iter().all(|r| r.passed);
            let report = HhReport { schema: SCHEMA.into(), runs, passed };
            Ok(Outcome { output: render(common.format, &report, HhReport::table), code: if passed { 0 } else { 3 } })
        }
    }
}

/// Every check `verify` runs on one field.
pub fn verify_field(lf: &LocalField, kmax: u32, degree_cap: u32, j_range: (i64, i64), n_cap: u64) -> VerifyField {
    let (wcap, precision) = default_truncation(lf.p(), lf.e(), kmax);
    let mut errors = Vec::new();
    let congruences = match verify_section3_with(lf, kmax, wcap, precision) {
        Ok(r) => congruences_json(&r),
        Err(e) => {
            errors.push(format!("congruence suite: {e}"));
            Vec::new()
        }
    };
    let table = thh_cobar_e2(lf, degree_cap);
    let thh_oracle = table.passed();
    let axiom_cap = degree_cap.min(12);
    let mut hopf_axioms = hopf_axioms_check(&HopfSpec::thh_mod_p(lf), axiom_cap).passed()
        && hopf_axioms_check(&HopfSpec::gr_refined(lf.residue_field(), lf.e()), axiom_cap).passed();
    match HopfSpec::thh_integral(lf, lf.precision()) {
        Ok(h) => hopf_axioms &= hopf_axioms_check(&h, axiom_cap).passed(),
        Err(e) => errors.push(format!("integral Hopf algebroid: {e}")),
    }
    let cross = crosscheck_with_specseq(lf, j_range, n_cap);
    if let Some(e) = &cross.engine_error {
        errors.push(format!("spectral sequence: {e}"));
    }
    let crosscheck = cross.passed();
    let congruences_ok = !congruences.is_empty() && congruences.iter().all(|c| c.pass || !c.applicable);
    let passed = congruences_ok && thh_oracle && hopf_axioms && crosscheck && errors.is_empty();
    VerifyField {
        field: FieldSummary::of(lf),
        kmax,
        wcap,
        precision,
        congruences,
        thh_oracle,
        hopf_axioms,
        crosscheck,
        errors,
        passed,
    }
}
