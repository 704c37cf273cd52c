use super::*;

fn seq(v: &[u32]) -> MilnorSeq {
    MilnorSeq::new(v.to_vec())
}

fn named(km: &Km, name: &str) -> KPoly {
    km.names().unwrap().class(km, name).unwrap()
}

#[test]
fn generator_degrees() {
    let k1 = Km::new(1).unwrap();
    let g = k1.generators(10);
    assert_eq!(g.len(), 1);
    assert!(g[0].seq.is_unit());

    let k2 = Km::new(2).unwrap();
    let d: Vec<usize> = k2.generators(33).iter().map(KmGenerator::degree).collect();
    assert_eq!(d, vec![2, 3, 5, 9, 17, 33]);

    let k3 = Km::new(3).unwrap();
    let d: Vec<usize> = k3.generators(7).iter().map(KmGenerator::degree).collect();
    assert_eq!(d, vec![3, 4, 5, 6, 7]);
    let d: Vec<usize> = k3.generators(21).iter().map(KmGenerator::degree).collect();
    assert_eq!(d, vec![3, 4, 5, 6, 7, 9, 10, 11, 13, 17, 18, 19, 21]);
}

#[test]
fn zero_k_is_rejected() {
    assert!(Km::new(0).is_err());
}

#[test]
fn monomial_basis_examples() {
    let k2 = Km::new(2).unwrap();
    let b4 = k2.monomial_basis(4);
    assert_eq!(b4.len(), 1);
    assert_eq!(k2.display(&KPoly::from(b4[0].clone())), "u2^2");
    let b5: Vec<String> = k2
        .monomial_basis(5)
        .iter()
        .map(|m| k2.display(&KPoly::from(m.clone())))
        .collect();
    assert_eq!(b5.len(), 2);
    assert!(b5.contains(&"u5".to_string()) && b5.contains(&"u2 u3".to_string()));
    let k1 = Km::new(1).unwrap();
    let b8 = k1.monomial_basis(8);
    assert_eq!(b8.len(), 1);
    assert_eq!(b8[0].factors(), &[(0, 8)]);
    assert_eq!(k2.monomial_basis(1).len(), 0);
    assert_eq!(k2.monomial_basis(0).len(), 1);
}

#[test]
fn reduce_examples() {
    let k1 = Km::new(1).unwrap();
    assert_eq!(k1.reduce(&seq(&[1])), k1.iota().square());
    let k2 = Km::new(2).unwrap();
    assert!(k2.reduce(&seq(&[2, 1])).is_zero());
    assert_eq!(k2.reduce(&seq(&[0, 2])), k2.iota().pow(4));
    assert_eq!(k2.reduce(&seq(&[1, 1])), named(&k2, "u3").square());
}

#[test]
fn sq_action_examples() {
    let k2 = Km::new(2).unwrap();
    assert_eq!(k2.sq_action(1, &k2.iota()), named(&k2, "u3"));
    let k3 = Km::new(3).unwrap();
    assert_eq!(k3.sq_action(2, &named(&k3, "g5")), named(&k3, "g7"));
    let p = named(&k3, "g5").mul(&named(&k3, "g4"));
    assert_eq!(k3.sq_action(0, &p), p);
}

#[test]
fn q_action_examples() {
    let k2 = Km::new(2).unwrap();
    assert_eq!(k2.q_action(1, &named(&k2, "u2")), named(&k2, "u5"));
    assert_eq!(k2.q_action(0, &named(&k2, "u9")), named(&k2, "u5").square());
    assert!(k2.q_action(0, &KPoly::one()).is_zero());
    assert!(k2.q_action(1, &KPoly::one()).is_zero());
}

#[test]
fn admissible_class_examples() {
    let k3 = Km::new(3).unwrap();
    let g4 = k3.admissible_class(&[1]).unwrap();
    assert_eq!(g4.degree(), Some(4));
    assert_eq!(k3.display(&g4), "g4");
    assert_eq!(k3.display(&k3.admissible_class(&[4, 2, 1]).unwrap()), "g10");
    let k2 = Km::new(2).unwrap();
    let u5 = k2.admissible_class(&[2, 1]).unwrap();
    assert_eq!(u5, KPoly::from(k2.gen_monomial(k2.gen_id(&seq(&[0, 1])).unwrap())));
    assert!(k2.admissible_class(&[]).is_err());
}

#[test]
fn chi_class_examples() {
    let k2 = Km::new(2).unwrap();
    assert_eq!(k2.display(&k2.chi_class(8).unwrap()), "u2^4");
    assert_eq!(k2.display(&k2.chi_class(9).unwrap()), "u9");
    for k in 2..6 {
        let km = Km::new(k).unwrap();
        let g = km.gen_id(&seq(&[1])).unwrap();
        assert_eq!(km.chi_class(k as usize + 1).unwrap(), KPoly::from(km.gen_monomial(g)));
    }
    assert_eq!(k2.chi_class(2).unwrap(), k2.iota());
    assert!(k2.chi_class(1).is_err());
}

#[test]
fn in_image_examples() {
    let k2 = Km::new(2).unwrap();
    let c = k2.chi_class(9).unwrap();
    assert!(!k2.in_image(&c, 9, &[1, 2]).unwrap().in_image);

    let k1 = Km::new(1).unwrap();
    let c = k1.chi_class(8).unwrap();
    let m = k1.in_image(&c, 8, &[1, 2]).unwrap();
    assert!(m.in_image);
    let mut sum = KPoly::zero();
    for (i, src) in &m.witness {
        sum.add_assign(&k1.sq_monomial(*i, src));
    }
    assert_eq!(sum, c);

    let z = k2.in_image(&KPoly::zero(), 12, &[1]).unwrap();
    assert!(z.in_image && z.witness.is_empty());
}

#[test]
fn in_image_respects_column_cap() {
    let k3 = Km::with_column_cap(3, 10).unwrap();
    let c = k3.chi_class(30).unwrap();
    assert!(matches!(
        k3.in_image(&c, 30, &[1, 2]),
        Err(Error::CapExceeded { .. })
    ));
}

#[test]
fn in_image_rejects_inhomogeneous_target() {
    let k2 = Km::new(2).unwrap();
    let p = k2.iota().add(&named(&k2, "u3"));
    assert!(k2.in_image(&p, 3, &[1]).is_err());
}

#[test]
fn display_in_named_basis() {
    let k3 = Km::new(3).unwrap();
    // Q1 g3 = g6 + g3^2
    let q = k3.q_action(1, &k3.iota());
    assert_eq!(k3.display(&q), "g3^2 + g6");
    let k5 = Km::new(5).unwrap();
    assert_eq!(k5.display(&k5.iota().square()), "[]^2");
    assert_eq!(k5.display(&KPoly::zero()), "0");
}

#[test]
fn monomial_order_is_by_degree_then_exponents() {
    let k2 = Km::new(2).unwrap();
    let b = k2.monomial_basis(12);
    assert!(b.windows(2).all(|w| w[0] < w[1]));
    // u2^6 has the largest exponent on the first generator.
    assert_eq!(b[0].factors(), &[(0, 6)]);
}
