use tcss_core::cobar::{eprime_valuation, gr_cobar_e2, hh_bar_appendix, hopf_axioms_check, integral_ext, thh_cobar_e2, HopfSpec};
use tcss_core::localfield::{parse_field, FieldSpec, LocalField};

const GRID: [(u64, usize, usize, i64); 8] =
    [(2, 1, 1, 1), (2, 3, 1, 1), (2, 5, 1, 1), (3, 1, 1, 1), (3, 2, 1, 1), (3, 2, 2, 1), (5, 4, 1, 1), (5, 4, 1, 2)];

fn field(p: u64, e: usize, f: usize, mu: i64) -> LocalField {
    parse_field(&FieldSpec::standard(p, e, f, mu)).unwrap()
}

#[test]
fn thh_cobar_matches_closed_form_on_grid() {
    for (p, e, f, mu) in GRID {
        let t = thh_cobar_e2(&field(p, e, f, mu), 12);
        for d in t.degrees.iter().filter(|d| !d.matches()) {
            panic!("({p},{e},{f},{mu}) weight {}: {:?} vs {:?} witnesses_ok {}", d.weight, d.h, d.closed, d.witnesses_ok);
        }
        assert!(t.d_squared_zero);
    }
}

#[test]
fn gr_cobar_matches_closed_form() {
    for p in [2, 3, 5] {
        for e in [1, 2, 3] {
            let t = gr_cobar_e2(12, e, p, 1).unwrap();
            assert!(t.passed(), "p={p} e={e}: {t:?}");
            let col0: Vec<u32> = t.degrees.iter().filter(|d| d.h[0] == 1).map(|d| d.weight).collect();
            if e == 1 {
                assert_eq!(col0, (0..=12).filter(|w| w % p as u32 == 0).collect::<Vec<_>>());
            } else {
                assert_eq!(col0, (0..=12).collect::<Vec<_>>());
            }
        }
    }
}

#[test]
fn hopf_axioms_every_flavor() {
    for (p, e, f, mu) in GRID {
        let lf = field(p, e, f, mu);
        assert!(hopf_axioms_check(&HopfSpec::thh_mod_p(&lf), 6).passed());
        assert!(hopf_axioms_check(&HopfSpec::thh_integral(&lf, 3).unwrap(), 6).passed());
        let k = lf.residue_field();
        assert!(hopf_axioms_check(&HopfSpec::gr_refined(k, e), 6).passed());
    }
}

#[test]
fn integral_ext_length_is_valuation_of_n_eprime() {
    for (p, e, f, mu) in GRID {
        let lf = field(p, e, f, mu);
        let ext = integral_ext(&lf, (1, 2 * p), 8).unwrap();
        for x in ext {
            assert_eq!(x.k_length, eprime_valuation(&lf, x.n), "({p},{e},{f}) n={}", x.n);
        }
    }
}

#[test]
fn hochschild_homology_is_divided_powers() {
    for (p, e) in [(2, 1), (2, 3), (3, 2), (5, 4)] {
        for row in hh_bar_appendix(p, 1, e, 6).unwrap() {
            let expected = if row.degree % 2 == 0 { (Some(e), 1) } else { (Some(0), 0) };
            assert_eq!((row.k_dim, row.a_rank), expected, "p={p} e={e} degree {}", row.degree);
        }
    }
}
