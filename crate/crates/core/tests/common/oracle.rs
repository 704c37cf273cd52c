//! Milnor products recomputed from the dual Hopf algebra.
//!
//! The coefficient of `Sq(T)` in `Sq(R) Sq(S)` is the coefficient of
//! `xi^R (x) xi^S` in the coproduct `psi(xi^T)`, where
//! `psi(xi_n) = sum_{i=0}^{n} xi_{n-i}^{2^i} (x) xi_i`. This shares nothing
//! with the matrix formula beyond the basis enumeration.

use std::collections::HashSet;

use emchi::milnor::{self, MilnorSeq, SteenrodSum};

type Mono = (Vec<u32>, Vec<u32>);

fn padded(v: &[u32], n: usize) -> Vec<u32> {
    let mut out = v.to_vec();
    out.resize(n, 0);
    out
}

fn fits(m: &Mono, r: &[u32], s: &[u32]) -> bool {
    m.0.iter().zip(r).all(|(a, b)| a <= b) && m.1.iter().zip(s).all(|(a, b)| a <= b)
}

fn toggle(set: &mut HashSet<Mono>, m: Mono) {
    if !set.remove(&m) {
        set.insert(m);
    }
}

/// Coefficient of `xi^R (x) xi^S` in `psi(xi^T)`.
pub fn coproduct_coefficient(t: &MilnorSeq, r: &MilnorSeq, s: &MilnorSeq) -> bool {
    let width = t.len().max(r.len()).max(s.len()).max(1);
    let r = padded(r.entries(), width);
    let s = padded(s.entries(), width);
    let mut acc: HashSet<Mono> = HashSet::new();
    acc.insert((vec![0; width], vec![0; width]));
    for (n_minus_1, &tn) in t.entries().iter().enumerate() {
        let n = n_minus_1 + 1;
        // psi(xi_n) as a list of monomials.
        let mut psi_n: Vec<Mono> = Vec::new();
        for i in 0..=n {
            let mut left = vec![0u32; width];
            let mut right = vec![0u32; width];
            if n - i > 0 {
                left[n - i - 1] = 1 << i;
            }
            if i > 0 {
                right[i - 1] = 1;
            }
            psi_n.push((left, right));
        }
        for _ in 0..tn {
            let mut next: HashSet<Mono> = HashSet::new();
            for m in &acc {
                for p in &psi_n {
                    let prod: Mono = (
                        m.0.iter().zip(&p.0).map(|(a, b)| a + b).collect(),
                        m.1.iter().zip(&p.1).map(|(a, b)| a + b).collect(),
                    );
                    if fits(&prod, &r, &s) {
                        toggle(&mut next, prod);
                    }
                }
            }
            acc = next;
        }
    }
    acc.contains(&(r, s))
}

/// `Sq(R) Sq(S)` computed through the coproduct pairing.
pub fn product_via_coproduct(r: &MilnorSeq, s: &MilnorSeq) -> SteenrodSum {
    let d = r.degree() + s.degree();
    milnor::basis(d)
        .into_iter()
        .filter(|t| coproduct_coefficient(t, r, s))
        .collect()
}
