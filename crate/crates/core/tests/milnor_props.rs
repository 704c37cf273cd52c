mod common;

use common::checks;
use common::oracle::product_via_coproduct;
use emchi::milnor::{self, basis, chi, chi_recursive, product, Ideal, MilnorSeq, SteenrodSum};
use proptest::prelude::*;

fn all_basis_up_to(d: usize) -> Vec<MilnorSeq> {
    (0..=d).flat_map(basis).collect()
}

#[test]
fn product_examples_match_oracle() {
    let two = MilnorSeq::sq(2);
    let one = MilnorSeq::sq(1);
    assert_eq!(product_via_coproduct(&two, &one), product(&two, &one));
    assert_eq!(product_via_coproduct(&two, &two), product(&two, &two));
    assert!(product_via_coproduct(&one, &one).is_zero());
}

#[test]
fn product_agrees_with_coproduct_oracle_through_degree_16() {
    let all = all_basis_up_to(16);
    let mut checked = 0;
    for r in &all {
        for s in &all {
            if r.degree() + s.degree() > 16 {
                continue;
            }
            assert_eq!(product(r, s), product_via_coproduct(r, s), "{r} * {s}");
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn product_is_homogeneous() {
    let all = all_basis_up_to(12);
    for r in &all {
        for s in &all {
            let p = product(r, s);
            let d = r.degree() + s.degree();
            assert!(p.terms().all(|t| t.degree() == d));
        }
    }
}

#[test]
fn product_is_associative_through_degree_14() {
    let all = all_basis_up_to(14);
    for a in &all {
        for b in &all {
            if a.degree() + b.degree() > 14 {
                continue;
            }
            let ab = product(a, b);
            for c in &all {
                if a.degree() + b.degree() + c.degree() > 14 {
                    continue;
                }
                let left = ab.mul(&SteenrodSum::from(c.clone()));
                let right = SteenrodSum::from(a.clone()).mul(&product(b, c));
                assert_eq!(left, right, "({a} {b}) {c}");
            }
        }
    }
}

#[test]
fn antipode_identity_through_degree_24() {
    for d in 1..=24 {
        let mut total = SteenrodSum::zero();
        for i in 0..=d {
            total.add_assign_sum(&SteenrodSum::from(MilnorSeq::sq(i as u32)).mul(&chi(d - i)));
        }
        assert!(total.is_zero(), "degree {d}: {total}");
    }
}

#[test]
fn chi_matches_recursion_through_degree_24() {
    for d in 0..=24 {
        assert_eq!(chi(d), chi_recursive(d), "degree {d}");
    }
}

#[test]
fn sq12_criterion_matches_linear_algebra_through_degree_20() {
    for d in 0..=20 {
        assert!(checks::criterion_span(d, Ideal::Sq12), "degree {d}");
    }
}

#[test]
fn sq1_criterion_matches_linear_algebra_through_degree_20() {
    for d in 0..=20 {
        assert!(checks::criterion_span(d, Ideal::Sq1), "degree {d}");
    }
}

fn arb_seq(max_len: usize, max_entry: u32) -> impl Strategy<Value = MilnorSeq> {
    proptest::collection::vec(0..=max_entry, 0..=max_len).prop_map(MilnorSeq::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn display_parse_round_trip(r in arb_seq(5, 40)) {
        let text = r.to_string();
        prop_assert_eq!(text.parse::<MilnorSeq>().unwrap(), r);
    }

    #[test]
    fn product_degree_is_additive(r in arb_seq(3, 6), s in arb_seq(3, 6)) {
        let d = milnor::degree(&r) + milnor::degree(&s);
        prop_assert!(product(&r, &s).terms().all(|t| t.degree() == d));
    }
}
