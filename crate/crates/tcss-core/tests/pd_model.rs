use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;
use tcss_core::localfield::{parse_field, FieldSpec, LocalField};
use tcss_core::num::Val;
use tcss_core::pdmodel::*;

fn field(p: u64, e: usize, f: usize) -> LocalField {
    parse_field(&FieldSpec::standard(p, e, f, 1)).unwrap()
}

/// `E = z^2 + 3z + 3` over `Z_3`, so the middle coefficient is live.
fn field_mid() -> LocalField {
    let mut spec = FieldSpec::standard(3, 2, 1, 1);
    spec.eisenstein_mid = vec![vec![3]];
    parse_field(&spec).unwrap()
}

#[test]
fn acceptance_configurations_pass() {
    for (p, e, k) in [(3u64, 2usize, 2u32), (5, 2, 1), (2, 5, 2)] {
        let r = verify_section3(&field(p, e, 1), k).unwrap();
        for x in &r.entries {
            assert!(x.pass || !x.applicable, "({p},{e},{k}) {x:?}");
        }
    }
}

#[test]
fn truncation_is_raised_for_required_weights() {
    assert_eq!(default_truncation(2, 5, 2), (9, 5));
    assert_eq!(default_truncation(3, 2, 2), (27, 5));
    assert_eq!(default_truncation(5, 2, 1), (25, 4));
}

#[test]
fn other_fields_pass() {
    for lf in [field(2, 1, 1), field(3, 1, 2), field(2, 2, 2), field_mid(), field(2, 4, 1), field(7, 2, 1)] {
        let r = verify_section3(&lf, 1).unwrap();
        for x in &r.entries {
            assert!(x.pass || !x.applicable, "{x:?}");
        }
    }
}

#[test]
fn hypotheses_gate_iterate_congruences() {
    let unram = verify_section3(&field(3, 1, 1), 1).unwrap();
    assert!(unram.entries.iter().filter(|x| x.name.starts_with("φ^")).all(|x| !x.applicable));
    let small_e = verify_section3(&field(2, 3, 1), 1).unwrap();
    assert!(small_e.entries.iter().filter(|x| x.name.starts_with("φ^")).all(|x| !x.applicable));
    let big_e = verify_section3(&field(2, 4, 1), 1).unwrap();
    assert!(big_e.entries.iter().filter(|x| x.name.starts_with("φ^")).all(|x| x.applicable));
}

fn low_terms(ctx: &PdCtx, x: &PDElement, cap: u32, modulus: u64) -> BTreeMap<PDMonomial, Vec<u64>> {
    ctx.terms(x)
        .into_iter()
        .filter(|(m, _)| m.i + m.j <= cap)
        .map(|(m, c)| (m, c.coeffs.iter().map(|v| v % modulus).collect::<Vec<_>>()))
        .filter(|(_, c)| c.iter().any(|&v| v != 0))
        .collect()
}

/// `φ(γ_i(E))` needs `γ_{i+p}(E)` terms the truncation drops; the loss is
/// divisible by `p`, so reductions mod `p` do not depend on the cap.
#[test]
fn truncation_is_stable_mod_p() {
    for (p, e) in [(3u64, 2usize), (2, 3), (5, 1)] {
        let lf = field(p, e, 1);
        let small = PdCtx::new(&lf, 2 * p as u32, 4).unwrap();
        let large = PdCtx::new(&lf, 3 * p as u32, 4).unwrap();
        let cap = 2 * p as u32;
        let hs = pd_h(&small).unwrap();
        let hl = pd_h(&large).unwrap();
        assert_eq!(low_terms(&small, &hs, cap, p), low_terms(&large, &hl, cap, p));
        let fs = pd_f_seq(&small, 1).unwrap();
        let fl = pd_f_seq(&large, 1).unwrap();
        assert_eq!(low_terms(&small, &fs.f[1], cap, p), low_terms(&large, &fl.f[1], cap, p));
        // φ(s) is a polynomial in z_0 and s: no loss at all
        let ps = pd_frobenius(&small, &small.s()).unwrap();
        let pl = pd_frobenius(&large, &large.s()).unwrap();
        let full = small.witt().modulus_int();
        assert_eq!(low_terms(&small, &ps, cap, full), low_terms(&large, &pl, cap, full));
    }
}

/// `Z_2`, `E = z + 2`: `φ(s)/2 = z_0 s − γ_2(s)` by hand, and `h·u_E = φ(s)/2`.
#[test]
fn h_for_two_adic_integers() {
    let lf = field(2, 1, 1);
    let ctx = PdCtx::new(&lf, 6, 5).unwrap();
    let h = pd_h(&ctx).unwrap();
    let target = ctx.div_p(&pd_frobenius(&ctx, &ctx.s()).unwrap()).unwrap();
    assert_eq!(ctx.mul(&h, ctx.u_e()).unwrap(), target);
    let one = ctx.from_int(1);
    let inv = ctx.inv(ctx.u_e()).unwrap();
    assert_eq!(ctx.mul(&inv, ctx.u_e()).unwrap(), ctx.with_prec(&one, inv.prec()));
    // φ(s)/2 = z_0 s − γ_2(s) with z_0 = E − 2
    let z0 = ctx.z0();
    let expect = ctx.sub(&ctx.mul(&z0, &ctx.s()).unwrap(), &ctx.gamma_s(2));
    assert_eq!(target, ctx.with_prec(&expect, target.prec()));
}

#[test]
fn frozen_h_leading_terms() {
    // (3,2): h − z_0^2 s first differs at weight (p−2)/e + 2 = 5/2
    let lf = field(3, 2, 1);
    let ctx = PdCtx::new(&lf, 9, 4).unwrap();
    let h = pd_h(&ctx).unwrap();
    let lead = ctx.mul(&ctx.pow(&ctx.z0(), 2).unwrap(), &ctx.s()).unwrap();
    let diff = ctx.sub(&h, &lead);
    assert_eq!(pd_refined_val(&ctx, &diff, true), Val::Fin(tcss_core::num::rat(5, 2)));
}

#[test]
fn errors() {
    let lf = field(3, 2, 1);
    assert!(matches!(PdCtx::new(&lf, 2, 4), Err(PdError::WcapTooSmall { .. })));
    assert!(matches!(PdCtx::new(&lf, 6, 1), Err(PdError::PrecisionTooLow { .. })));
    let ctx = PdCtx::new(&lf, 6, 3).unwrap();
    assert!(matches!(ctx.div_p(&ctx.s()), Err(PdError::NotDivisible)));
    let other = PdCtx::new(&lf, 9, 3).unwrap();
    assert!(matches!(pd_mul(&ctx, &ctx.s(), &other.s()), Err(PdError::ContextMismatch)));
    let low = ctx.with_prec(&ctx.s(), 1);
    assert!(matches!(pd_delta(&ctx, &low), Err(PdError::PrecisionTooLow { .. })));
    assert!(matches!(pd_f_seq(&ctx, 2), Err(PdError::PrecisionTooLow { .. })));
}

fn ctx_32() -> &'static PdCtx {
    static C: OnceLock<PdCtx> = OnceLock::new();
    C.get_or_init(|| PdCtx::new(&field(3, 2, 1), 12, 4).unwrap())
}

fn ctx_22() -> &'static PdCtx {
    static C: OnceLock<PdCtx> = OnceLock::new();
    C.get_or_init(|| PdCtx::new(&field(2, 2, 2), 10, 4).unwrap())
}

fn build(ctx: &PdCtx, terms: &[(u32, u32, u32, i64)]) -> PDElement {
    let mut x = ctx.zero();
    for &(a, i, j, c) in terms {
        let m = PDMonomial { a: a % ctx.e() as u32, i, j };
        x = ctx.add(&x, &ctx.monomial(m, &ctx.witt().from_int(c)));
    }
    x
}

fn elem() -> impl Strategy<Value = Vec<(u32, u32, u32, i64)>> {
    prop::collection::vec((0u32..2, 0u32..2, 0u32..2, -4i64..5), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frobenius_is_ring_map(x in elem(), y in elem()) {
        for ctx in [ctx_32(), ctx_22()] {
            let (x, y) = (build(ctx, &x), build(ctx, &y));
            let lhs = pd_frobenius(ctx, &ctx.mul(&x, &y).unwrap()).unwrap();
            let rhs = ctx.mul(&pd_frobenius(ctx, &x).unwrap(), &pd_frobenius(ctx, &y).unwrap()).unwrap();
            // the truncation loss is divisible by p
            prop_assert_eq!(pd_refined_val(ctx, &ctx.sub(&lhs, &rhs), true), Val::Inf);
            let sum = pd_frobenius(ctx, &ctx.add(&x, &y)).unwrap();
            let sum2 = ctx.add(&pd_frobenius(ctx, &x).unwrap(), &pd_frobenius(ctx, &y).unwrap());
            prop_assert_eq!(sum, sum2);
        }
    }

    #[test]
    fn delta_product_rule(x in elem(), y in elem()) {
        let ctx = ctx_32();
        let p = ctx.p();
        let (x, y) = (build(ctx, &x), build(ctx, &y));
        let dx = pd_delta(ctx, &x).unwrap();
        let dy = pd_delta(ctx, &y).unwrap();
        let lhs = pd_delta(ctx, &ctx.mul(&x, &y).unwrap()).unwrap();
        let mut rhs = ctx.mul(&ctx.pow(&x, p).unwrap(), &dy).unwrap();
        rhs = ctx.add(&rhs, &ctx.mul(&ctx.pow(&y, p).unwrap(), &dx).unwrap());
        rhs = ctx.add(&rhs, &ctx.mul_p(&ctx.mul(&dx, &dy).unwrap()));
        prop_assert_eq!(pd_refined_val(ctx, &ctx.sub(&lhs, &rhs), true), Val::Inf);
    }

    #[test]
    fn multiplication_is_commutative_and_associative(x in elem(), y in elem(), z in elem()) {
        let ctx = ctx_22();
        let (x, y, z) = (build(ctx, &x), build(ctx, &y), build(ctx, &z));
        prop_assert_eq!(ctx.mul(&x, &y).unwrap(), ctx.mul(&y, &x).unwrap());
        let l = ctx.mul(&ctx.mul(&x, &y).unwrap(), &z).unwrap();
        let r = ctx.mul(&x, &ctx.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }
}
