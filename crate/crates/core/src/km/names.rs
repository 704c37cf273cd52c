//! Named generators for `k = 2` and `k = 3`.
//!
//! For these `k` there is exactly one polynomial generator in each occupied
//! degree, so classes are named by degree: `u2, u3, u5, u9, ...` for `k = 2`
//! and `g3, g4, g5, ...` for `k = 3`. Where a conventional admissible word is
//! known the named class is `Sq^{i_1} ... Sq^{i_m} ι`, which equals the Milnor
//! generator plus decomposables; elsewhere the named class is the Milnor
//! generator itself.
//!
//! | k | name | word |
//! |---|------|------|
//! | 2 | u2, u3, u5, u9, u17, u33 | ι, 1, 2 1, 4 2 1, 8 4 2 1, 16 8 4 2 1 |
//! | 3 | g3, g4, g5, g6, g7 | ι, 1, 2, 2 1, 3 1 |
//! | 3 | g9, g10, g11, g13 | 4 2, 4 2 1, 5 2 1, 6 3 1 |
//! | 3 | g17, g18, g19, g21 | 8 4 2, 8 4 2 1, 9 4 2 1, 10 5 2 1 |

use std::collections::HashMap;
use std::sync::Mutex;

use super::{GenId, KMonomial, KPoly, Km};

const K2_WORDS: &[(usize, &[u32])] = &[
    (2, &[]),
    (3, &[1]),
    (5, &[2, 1]),
    (9, &[4, 2, 1]),
    (17, &[8, 4, 2, 1]),
    (33, &[16, 8, 4, 2, 1]),
];

const K3_WORDS: &[(usize, &[u32])] = &[
    (3, &[]),
    (4, &[1]),
    (5, &[2]),
    (6, &[2, 1]),
    (7, &[3, 1]),
    (9, &[4, 2]),
    (10, &[4, 2, 1]),
    (11, &[5, 2, 1]),
    (13, &[6, 3, 1]),
    (17, &[8, 4, 2]),
    (18, &[8, 4, 2, 1]),
    (19, &[9, 4, 2, 1]),
    (21, &[10, 5, 2, 1]),
];

/// Degree-indexed names and the change of basis to the named classes.
pub struct NameTable {
    prefix: char,
    /// Named class for each worded degree, as a polynomial in Milnor generators.
    classes: HashMap<usize, KPoly>,
    /// Each Milnor generator rewritten in terms of named classes.
    inverse: Mutex<HashMap<GenId, KPoly>>,
}

impl std::fmt::Debug for NameTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NameTable").field("prefix", &self.prefix).finish()
    }
}

impl NameTable {
    pub(super) fn for_k(km: &Km) -> Option<NameTable> {
        let (prefix, words) = match km.k() {
            2 => ('u', K2_WORDS),
            3 => ('g', K3_WORDS),
            _ => return None,
        };
        let mut classes = HashMap::new();
        for &(d, word) in words {
            let class = if word.is_empty() {
                km.iota()
            } else {
                km.admissible_class(word).expect("nonempty word")
            };
            debug_assert_eq!(class.degree(), Some(d));
            classes.insert(d, class);
        }
        Some(NameTable {
            prefix,
            classes,
            inverse: Mutex::new(HashMap::new()),
        })
    }

    /// Name of the class in degree `d` (whether or not a generator lives there).
    pub fn name_for_degree(&self, d: usize) -> String {
        format!("{}{}", self.prefix, d)
    }

    /// The named class with the given name, e.g. `"g10"`.
    pub fn class(&self, km: &Km, name: &str) -> Option<KPoly> {
        let d: usize = name.strip_prefix(self.prefix)?.parse().ok()?;
        if let Some(c) = self.classes.get(&d) {
            return Some(c.clone());
        }
        let g = km
            .generator_ids(d)
            .into_iter()
            .find(|&g| km.gen_degree(g) == d)?;
        Some(KPoly::from(km.gen_monomial(g)))
    }

    fn generator_in_names(&self, km: &Km, g: GenId) -> KPoly {
        if let Some(p) = self.inverse.lock().unwrap().get(&g) {
            return p.clone();
        }
        let d = km.gen_degree(g);
        let gm = km.gen_monomial(g);
        let p = match self.classes.get(&d) {
            None => KPoly::from(gm),
            Some(class) => {
                // class = g + (decomposables of lower generators), so
                // g = [class] + rewrite(class - g).
                assert!(class.contains(&gm), "named class in degree {d} lacks its generator");
                let mut rest = class.clone();
                rest.toggle(gm.clone());
                let mut out = self.rewrite(km, &rest);
                out.toggle(gm);
                out
            }
        };
        self.inverse.lock().unwrap().insert(g, p.clone());
        p
    }

    /// Expresses `p` as a polynomial in the named classes. The result reuses
    /// generator ids as symbols: id `g` stands for the named class of degree
    /// `deg(g)`.
    pub fn rewrite(&self, km: &Km, p: &KPoly) -> KPoly {
        let mut out = KPoly::zero();
        for m in p.terms() {
            let mut acc = KPoly::one();
            for &(g, e) in m.factors() {
                acc = acc.mul(&self.generator_in_names(km, g).pow(e));
            }
            out.add_assign(&acc);
        }
        out
    }

    pub fn display(&self, km: &Km, p: &KPoly) -> String {
        let r = self.rewrite(km, p);
        if r.is_zero() {
            return "0".into();
        }
        r.terms()
            .map(|m| self.monomial_name(km, m))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn monomial_name(&self, km: &Km, m: &KMonomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        m.factors()
            .iter()
            .map(|&(g, e)| {
                let n = self.name_for_degree(km.gen_degree(g));
                if e == 1 {
                    n
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}
