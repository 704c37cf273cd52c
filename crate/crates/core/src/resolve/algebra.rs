//! The finite subalgebras `A(1)` and `E(1)` of the Steenrod algebra.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::f2la::{F2Vector, RowEchelon};
use crate::milnor::{self, MilnorSeq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraName {
    A1,
    E1,
}

impl fmt::Display for AlgebraName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraName::A1 => "A1",
            AlgebraName::E1 => "E1",
        })
    }
}

impl FromStr for AlgebraName {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a1" => Ok(AlgebraName::A1),
            "e1" => Ok(AlgebraName::E1),
            _ => Err(ParseError::new(s, "expected A1 or E1")),
        }
    }
}

/// A multiplicative generator of the algebra, acting on modules by a
/// stored matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraGenerator {
    pub symbol: &'static str,
    pub element: usize,
    pub degree: usize,
}

/// A word in the generators, leftmost letter first (it acts last).
pub type Word = Vec<usize>;

/// A linear relation among generator words of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordRelation {
    pub degree: usize,
    pub words: Vec<Word>,
}

/// Finite sub-Hopf algebra of the Steenrod algebra given by a profile on the
/// Milnor basis. Structure constants come from [`milnor::product`].
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    name: AlgebraName,
    basis: Vec<MilnorSeq>,
    index: HashMap<MilnorSeq, usize>,
    mult: Vec<Vec<Vec<usize>>>,
    generators: Vec<AlgebraGenerator>,
    decompositions: Vec<Vec<Word>>,
}

impl FiniteAlgebra {
    pub fn new(name: AlgebraName) -> Self {
        let (profile, gens): (&[u32], &[(&'static str, MilnorSeq)]) = match name {
            AlgebraName::A1 => (&[3, 1], &[("Sq1", MilnorSeq::sq(1)), ("Sq2", MilnorSeq::sq(2))]),
            AlgebraName::E1 => (&[1, 1], &[("Q0", MilnorSeq::q(0)), ("Q1", MilnorSeq::q(1))]),
        };
        let mut basis = Vec::new();
        for r2 in 0..=profile[1] {
            for r1 in 0..=profile[0] {
                basis.push(MilnorSeq::new(vec![r1, r2]));
            }
        }
        basis.sort();
        let index: HashMap<_, _> = basis.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let mult = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| {
                        let mut out: Vec<usize> = milnor::product(a, b)
                            .terms()
                            .map(|t| *index.get(t).unwrap_or_else(|| panic!("{a} * {b} leaves {name}")))
                            .collect();
                        out.sort_unstable();
                        out
                    })
                    .collect()
            })
            .collect();
        let generators = gens
            .iter()
            .map(|(symbol, seq)| AlgebraGenerator {
                symbol,
                element: index[seq],
                degree: seq.degree(),
            })
            .collect();
        let mut alg = FiniteAlgebra {
            name,
            basis,
            index,
            mult,
            generators,
            decompositions: Vec::new(),
        };
        alg.decompositions = alg.decompose_basis();
        alg
    }

    pub fn name(&self) -> AlgebraName {
        self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MilnorSeq] {
        &self.basis
    }

    pub fn element(&self, r: &MilnorSeq) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn degree(&self, a: usize) -> usize {
        self.basis[a].degree()
    }

    /// Degree of the top class.
    pub fn top_degree(&self) -> usize {
        self.basis.iter().map(MilnorSeq::degree).max().unwrap_or(0)
    }

    /// Basis indices of `a * b`.
    pub fn mul(&self, a: usize, b: usize) -> &[usize] {
        &self.mult[a][b]
    }

    pub fn generators(&self) -> &[AlgebraGenerator] {
        &self.generators
    }

    pub fn generator_by_symbol(&self, symbol: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.symbol == symbol)
    }

    /// Words whose sum is basis element `a`.
    pub fn decomposition(&self, a: usize) -> &[Word] {
        &self.decompositions[a]
    }

    pub fn word_degree(&self, w: &[usize]) -> usize {
        w.iter().map(|&g| self.generators[g].degree).sum()
    }

    pub fn word_name(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&g| self.generators[g].symbol)
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Product of a word as a vector over the basis.
    pub fn word_value(&self, w: &[usize]) -> F2Vector {
        let mut acc = F2Vector::unit(self.dim(), 0);
        for &g in w.iter().rev() {
            let e = self.generators[g].element;
            let mut next = F2Vector::zeros(self.dim());
            for b in acc.ones() {
                for &c in self.mul(e, b) {
                    next.flip(c);
                }
            }
            acc = next;
        }
        acc
    }

    /// All words of total degree `d`, in shortlex order of letters.
    pub fn words_of_degree(&self, d: usize) -> Vec<Word> {
        fn go(alg: &FiniteAlgebra, rest: usize, cur: &mut Word, out: &mut Vec<Word>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            for (g, gen) in alg.generators.iter().enumerate() {
                if gen.degree <= rest {
                    cur.push(g);
                    go(alg, rest - gen.degree, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, d, &mut Vec::new(), &mut out);
        out.sort_by_key(|w| w.len());
        out
    }

    fn decompose_basis(&self) -> Vec<Vec<Word>> {
        (0..self.dim())
            .map(|a| {
                let d = self.degree(a);
                let words = self.words_of_degree(d);
                let mut ech = RowEchelon::with_witnesses(self.dim(), words.len());
                for w in &words {
                    ech.insert(&self.word_value(w)).expect("fixed width");
                }
                let (rem, combo) = ech.reduce(&F2Vector::unit(self.dim(), a));
                assert!(rem.is_zero(), "{} is not generated in {}", self.basis[a], self.name);
                combo.expect("tracking").ones().map(|i| words[i].clone()).collect()
            })
            .collect()
    }

    /// The defining relations, written the usual way.
    pub fn named_relations(&self) -> Vec<WordRelation> {
        let w = |s: &[&str]| -> Word { s.iter().map(|x| self.generator_by_symbol(x).unwrap()).collect() };
        let rel = |words: Vec<Word>| WordRelation {
            degree: self.word_degree(&words[0]),
            words,
        };
        match self.name {
            AlgebraName::A1 => vec![
                rel(vec![w(&["Sq1", "Sq1"])]),
                rel(vec![w(&["Sq2", "Sq2"]), w(&["Sq1", "Sq2", "Sq1"])]),
            ],
            AlgebraName::E1 => vec![
                rel(vec![w(&["Q0", "Q0"])]),
                rel(vec![w(&["Q1", "Q1"])]),
                rel(vec![w(&["Q0", "Q1"]), w(&["Q1", "Q0"])]),
            ],
        }
    }

    /// A spanning set of all relations among words: every linear dependency
    /// in degrees up to the top, and every word just above the top. A module
    /// structure on the generators extends to the algebra iff all of these
    /// act as zero.
    pub fn all_relations(&self) -> Vec<WordRelation> {
        let top = self.top_degree();
        let max_gen = self.generators.iter().map(|g| g.degree).max().unwrap_or(1);
        let mut out = Vec::new();
        for d in 1..=top + max_gen {
            let words = self.words_of_degree(d);
            if d > top {
                // Any longer word has a suffix in this band.
                out.extend(words.into_iter().map(|w| WordRelation { degree: d, words: vec![w] }));
                continue;
            }
            let mut ech = RowEchelon::with_witnesses(self.dim(), words.len());
            for w in &words {
                if let Some(dep) = ech.insert(&self.word_value(w)).expect("fixed width") {
                    out.push(WordRelation {
                        degree: d,
                        words: dep.ones().map(|i| words[i].clone()).collect(),
                    });
                }
            }
        }
        out
    }

    pub fn relation_name(&self, r: &WordRelation) -> String {
        let mut parts = r.words.iter().map(|w| self.word_name(w));
        let first = parts.next().unwrap_or_default();
        let rest: Vec<_> = parts.collect();
        if rest.is_empty() {
            format!("{first} = 0")
        } else {
            format!("{first} = {}", rest.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_degrees() {
        let a1 = FiniteAlgebra::new(AlgebraName::A1);
        assert_eq!(a1.dim(), 8);
        assert_eq!(a1.top_degree(), 6);
        let degs: Vec<_> = (0..8).map(|a| a1.degree(a)).collect();
        assert_eq!(degs, vec![0, 1, 2, 3, 3, 4, 5, 6]);
        let e1 = FiniteAlgebra::new(AlgebraName::E1);
        assert_eq!(e1.dim(), 4);
        assert_eq!(e1.top_degree(), 4);
    }

    #[test]
    fn structure_constants_restrict_the_milnor_product() {
        for name in [AlgebraName::A1, AlgebraName::E1] {
            let alg = FiniteAlgebra::new(name);
            for (a, ra) in alg.basis().iter().enumerate() {
                for (b, rb) in alg.basis().iter().enumerate() {
                    let expected: Vec<usize> = milnor::product(ra, rb)
                        .terms()
                        .map(|t| alg.element(t).unwrap())
                        .collect::<std::collections::BTreeSet<_>>()
                        .into_iter()
                        .collect();
                    assert_eq!(alg.mul(a, b), expected.as_slice());
                }
            }
        }
    }

    #[test]
    fn augmentation_ideal_is_nilpotent() {
        for name in [AlgebraName::A1, AlgebraName::E1] {
            let alg = FiniteAlgebra::new(name);
            let n = alg.dim();
            // Span of products of `p` positive-degree elements.
            let mut span: Vec<usize> = (1..n).collect();
            let mut steps = 0;
            while !span.is_empty() {
                let mut next = std::collections::BTreeSet::new();
                for &a in &span {
                    for b in 1..n {
                        next.extend(alg.mul(a, b).iter().copied());
                    }
                }
                span = next.into_iter().collect();
                steps += 1;
                assert!(steps <= alg.top_degree());
            }
        }
    }

    #[test]
    fn decompositions_multiply_back() {
        for name in [AlgebraName::A1, AlgebraName::E1] {
            let alg = FiniteAlgebra::new(name);
            for a in 0..alg.dim() {
                let mut v = F2Vector::zeros(alg.dim());
                for w in alg.decomposition(a) {
                    v.xor_assign(&alg.word_value(w));
                }
                assert_eq!(v, F2Vector::unit(alg.dim(), a));
            }
        }
    }

    #[test]
    fn q1_in_a1() {
        let a1 = FiniteAlgebra::new(AlgebraName::A1);
        let q1 = a1.element(&MilnorSeq::q(1)).unwrap();
        let sq3 = a1.element(&MilnorSeq::sq(3)).unwrap();
        let v = |s: &[&str]| a1.word_value(&s.iter().map(|x| a1.generator_by_symbol(x).unwrap()).collect::<Vec<_>>());
        let mut sum = v(&["Sq1", "Sq2"]);
        sum.xor_assign(&v(&["Sq2", "Sq1"]));
        assert_eq!(sum, F2Vector::unit(8, q1));
        assert_eq!(v(&["Sq1", "Sq2"]), F2Vector::unit(8, sq3));
    }

    #[test]
    fn named_relations_hold_and_are_among_all() {
        for name in [AlgebraName::A1, AlgebraName::E1] {
            let alg = FiniteAlgebra::new(name);
            for r in alg.named_relations() {
                let mut v = F2Vector::zeros(alg.dim());
                for w in &r.words {
                    v.xor_assign(&alg.word_value(w));
                }
                assert!(v.is_zero(), "{}", alg.relation_name(&r));
            }
            assert!(!alg.all_relations().is_empty());
        }
    }
}
