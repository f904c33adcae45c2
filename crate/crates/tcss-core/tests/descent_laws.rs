use std::collections::BTreeSet;

use tcss_core::descent::*;
use tcss_core::localfield::{compute_d, parse_field, FieldSpec, LocalField};
use tcss_core::specseq::{run_to_infinity, seed_page, Variant};

const GRID: [(u64, usize, usize, i64); 8] =
    [(2, 1, 1, 1), (2, 3, 1, 1), (2, 5, 1, 1), (3, 1, 1, 1), (3, 2, 1, 1), (3, 2, 2, 1), (5, 4, 1, 1), (5, 4, 1, 2)];

fn field(p: u64, e: usize, f: usize, mu: i64) -> LocalField {
    parse_field(&FieldSpec::standard(p, e, f, mu)).unwrap()
}

fn grid() -> impl Iterator<Item = LocalField> {
    GRID.into_iter().map(|(p, e, f, mu)| field(p, e, f, mu))
}

#[test]
fn ker_can_has_e_j_elements() {
    for lf in grid() {
        for j in 1..=6 {
            assert_eq!(ker_can_basis(&lf, j).len(), lf.e() * j as usize, "p={} e={} j={j}", lf.p(), lf.e());
        }
    }
}

#[test]
fn period_d() {
    for p in [2, 3, 5, 7] {
        assert_eq!(compute_d(&field(p, 1, 1, 1)), p - 1);
    }
    for p in [3, 5] {
        assert_eq!(compute_d(&parse_field(&FieldSpec::cyclotomic(p)).unwrap()), 1);
    }
    // d is the least d with (p−1) | e·d and N(μ̄)^d = 1
    for lf in grid() {
        let k = lf.residue_field();
        let norm = k.norm(lf.mu_bar());
        let d = (1..)
            .find(|&d| (lf.e() as u64 * d) % (lf.p() - 1) == 0 && k.pow(&norm, d as u128) == k.one())
            .unwrap();
        assert_eq!(compute_d(&lf), d);
        assert!(beta_coefficient(&lf).is_some());
    }
}

#[test]
fn alpha_count_per_weight() {
    for lf in grid() {
        for j in 1..=lf.d() as i64 {
            let pairs = can_phi_analysis(&lf, j).kernel.iter().filter(|x| x.pair.is_some()).count();
            assert_eq!(pairs, lf.e() * lf.f());
        }
    }
}

#[test]
fn tc_column_ranks() {
    for lf in grid() {
        let r = tc_e2_inventory(&lf, 40);
        let (e, d, f) = (lf.e(), lf.d() as usize, lf.f());
        let ranks: Vec<usize> = r.columns.iter().map(|c| c.rank).collect();
        assert_eq!(ranks, vec![1, 2 + e * d * f, 1], "p={} e={e} f={f}", lf.p());
        assert!(r.columns.iter().all(|c| c.stable));
        for g in &r.generators {
            assert!([0, -1, -2].contains(&g.column));
            if g.column != -1 {
                assert_eq!(g.degree() % 2, 0, "{g:?}");
            }
        }
    }
}

#[test]
fn two_adic_extensions() {
    let degree_two = |p, e, f| tc_homotopy_groups(&field(p, e, f, 1), (2, 2)).homotopy[0].orders.clone();
    assert_eq!(degree_two(2, 1, 1), vec![4]);
    assert_eq!(degree_two(2, 3, 1), vec![4]);
    assert_eq!(degree_two(2, 1, 2), vec![2, 2]);
    assert_eq!(degree_two(2, 2, 1), vec![2, 2]);
    let q2 = tc_homotopy_groups(&field(2, 1, 1, 1), (4, 4));
    assert_eq!(q2.homotopy[0].orders, vec![2, 2]);
}

#[test]
fn q3_low_degrees() {
    let r = tc_homotopy_groups(&field(3, 1, 1, 1), (-1, 3));
    let orders: Vec<Vec<u64>> = r.homotopy.iter().map(|g| g.orders.clone()).collect();
    // degrees −1, 0, 1, 2, 3
    assert_eq!(orders, vec![vec![3], vec![3], vec![3], vec![], vec![3, 3]]);
}

/// φ sends the `TC⁻` row −1 classes of weight `j` with `l ≥ 1` to distinct
/// `TP` row −1 classes of the same weight.
#[test]
fn frobenius_leading_is_injective_into_tp() {
    for lf in grid() {
        let k = lf.residue_field();
        for j in 1..=4 {
            let tp: BTreeSet<u64> = e2_tp_bases(&lf, j, 4000).row1_ns().into_iter().collect();
            let mut seen = BTreeSet::new();
            for (n, pair) in e2_tcminus_bases(&lf, j, 4000).row1 {
                let Some(pair) = pair else { continue };
                if pair.l == 0 {
                    continue;
                }
                let img = frobenius_leading(&lf, &Leading { row: -1, j, n, coeff: k.one() }).unwrap();
                if img.n > 4000 {
                    continue;
                }
                assert!(tp.contains(&img.n), "p={} e={} j={j} n={n} → {}", lf.p(), lf.e(), img.n);
                assert!(seen.insert(img.n));
            }
        }
    }
}

#[test]
fn pairing_check_never_trips_on_grid() {
    for lf in grid() {
        for variant in [Variant::TP, Variant::TCminus] {
            run_to_infinity(&lf, seed_page(&lf, (-3, 6), 200, variant)).unwrap();
        }
    }
}

#[test]
fn crosscheck_on_grid() {
    for lf in grid() {
        let r = crosscheck_with_specseq(&lf, (-3, 6), 200);
        assert!(r.passed(), "p={} e={}: {:?}", lf.p(), lf.e(), r.entries.iter().find(|x| !x.matches()));
    }
}
