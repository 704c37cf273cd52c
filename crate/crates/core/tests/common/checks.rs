//! Exhaustive checks shared by the property suites and the acceptance run.
//! Each returns the number of cases checked, or a description of the first
//! failure.

use std::collections::HashMap;

use emchi::f2la::{F2Vector, RowEchelon};
use emchi::milnor::{basis, chi, chi_recursive, ideal_criterion, product, Ideal, MilnorSeq, SteenrodSum};
use emchi::{KPoly, Km};

use super::oracle::product_via_coproduct;

pub type Outcome = Result<usize, String>;

fn all_basis_up_to(d: usize) -> Vec<MilnorSeq> {
    (0..=d).flat_map(basis).collect()
}

pub fn antipode(max_d: usize) -> Outcome {
    for d in 1..=max_d {
        let mut total = SteenrodSum::zero();
        for i in 0..=d {
            total.add_assign_sum(&SteenrodSum::from(MilnorSeq::sq(i as u32)).mul(&chi(d - i)));
        }
        if !total.is_zero() {
            return Err(format!("sum Sq^i chi(Sq^(d-i)) = {total} in degree {d}"));
        }
        if chi(d) != chi_recursive(d) {
            return Err(format!("chi({d}) disagrees with the recursion"));
        }
    }
    Ok(max_d)
}

pub fn associativity(max_d: usize) -> Outcome {
    let all = all_basis_up_to(max_d);
    let mut n = 0;
    for a in &all {
        for b in &all {
            if a.degree() + b.degree() > max_d {
                continue;
            }
            let ab = product(a, b);
            for c in &all {
                if a.degree() + b.degree() + c.degree() > max_d {
                    continue;
                }
                let left = ab.mul(&SteenrodSum::from(c.clone()));
                let right = SteenrodSum::from(a.clone()).mul(&product(b, c));
                if left != right {
                    return Err(format!("({a} {b}) {c} != {a} ({b} {c})"));
                }
                n += 1;
            }
        }
    }
    Ok(n)
}

pub fn oracle_agreement(max_d: usize) -> Outcome {
    let all = all_basis_up_to(max_d);
    let mut n = 0;
    for r in &all {
        for s in &all {
            if r.degree() + s.degree() > max_d {
                continue;
            }
            if product(r, s) != product_via_coproduct(r, s) {
                return Err(format!("{r} * {s} disagrees with the coproduct oracle"));
            }
            n += 1;
        }
    }
    Ok(n)
}

fn coords(s: &SteenrodSum, index: &HashMap<MilnorSeq, usize>, n: usize) -> F2Vector {
    F2Vector::from_indices(n, s.terms().map(|t| index[t]))
}

/// The image of the ideal's operations in degree `d` equals the span of the
/// basis elements the closed criterion puts inside it.
pub fn criterion_span(d: usize, ideal: Ideal) -> bool {
    let b = basis(d);
    let index: HashMap<_, _> = b.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let mut image = RowEchelon::new(b.len());
    for &op in ideal.operations() {
        if (op as usize) > d {
            continue;
        }
        for a in basis(d - op as usize) {
            image
                .insert(&coords(&product(&MilnorSeq::sq(op), &a), &index, b.len()))
                .unwrap();
        }
    }
    let mut inside = RowEchelon::new(b.len());
    for (i, r) in b.iter().enumerate() {
        if !ideal_criterion(r, ideal) {
            inside.insert(&F2Vector::unit(b.len(), i)).unwrap();
        }
    }
    image.rank() == inside.rank() && inside.basis().iter().all(|v| image.contains(v))
}

/// Cartan formula for `Sq^i` and the derivation rule for `Q_0, Q_1` on all
/// pairs of monomials with total degree (after acting) at most `max_d`.
pub fn cartan_and_derivation(k: u32, max_d: usize) -> Outcome {
    let km = Km::new(k).map_err(|e| e.to_string())?;
    let monos: Vec<_> = (0..=max_d).flat_map(|n| km.monomial_basis(n).as_ref().clone()).collect();
    let mut n = 0;
    for (ix, x) in monos.iter().enumerate() {
        for y in &monos[ix..] {
            let d = x.degree() + y.degree();
            if d > max_d || x.is_one() || y.is_one() {
                continue;
            }
            let (px, py) = (KPoly::from(x.clone()), KPoly::from(y.clone()));
            let xy = px.mul(&py);
            for i in 1..=(max_d - d) as u32 {
                let mut expected = KPoly::zero();
                for a in 0..=i {
                    expected.add_assign(&km.sq_action(a, &px).mul(&km.sq_action(i - a, &py)));
                }
                if km.sq_action(i, &xy) != expected {
                    return Err(format!("Cartan fails for Sq{i} on {} * {}", km.display(&px), km.display(&py)));
                }
                n += 1;
            }
            for j in 0..=1usize {
                if d + (1 << (j + 1)) - 1 > max_d {
                    continue;
                }
                let mut expected = km.q_action(j, &px).mul(&py);
                expected.add_assign(&px.mul(&km.q_action(j, &py)));
                if km.q_action(j, &xy) != expected {
                    return Err(format!("Q{j} is not a derivation on {} * {}", km.display(&px), km.display(&py)));
                }
                n += 1;
            }
        }
    }
    Ok(n)
}
