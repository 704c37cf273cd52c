//! Finite graded modules over `A(1)` or `E(1)`, stored as generator action
//! matrices between degrees.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::algebra::{AlgebraName, FiniteAlgebra, WordRelation};
use crate::error::{Error, Result};
use crate::f2la::{F2Vector, RowEchelon};
use crate::km::Km;

/// Shared instance of each algebra.
pub fn algebra(name: AlgebraName) -> &'static FiniteAlgebra {
    static A1: OnceLock<FiniteAlgebra> = OnceLock::new();
    static E1: OnceLock<FiniteAlgebra> = OnceLock::new();
    match name {
        AlgebraName::A1 => A1.get_or_init(|| FiniteAlgebra::new(AlgebraName::A1)),
        AlgebraName::E1 => E1.get_or_init(|| FiniteAlgebra::new(AlgebraName::E1)),
    }
}

/// Images of the basis of one degree, one vector per source basis element.
pub type Block = Vec<F2Vector>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    name: String,
    algebra: AlgebraName,
    /// Basis ids per degree; degrees of dimension zero are absent.
    basis: BTreeMap<i32, Vec<String>>,
    /// `actions[g][d]`: images of the degree-`d` basis under generator `g`.
    /// Missing blocks act as zero.
    actions: Vec<BTreeMap<i32, Block>>,
    truncated_above: Option<i32>,
}

/// Module description document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub name: String,
    pub algebra: AlgebraName,
    pub basis: Vec<BasisEntry>,
    pub actions: BTreeMap<String, Vec<ActionEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncated_above: Option<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub id: String,
    pub degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionEntry {
    pub from: String,
    pub to: Vec<String>,
}

impl GradedModule {
    /// Assembles a module from blocks and checks every relation of the
    /// algebra.
    pub fn new(
        name: impl Into<String>,
        algebra_name: AlgebraName,
        basis: BTreeMap<i32, Vec<String>>,
        actions: Vec<BTreeMap<i32, Block>>,
        truncated_above: Option<i32>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(name, algebra_name, basis, actions, truncated_above)?;
        m.check_relations()?;
        Ok(m)
    }

    /// Like [`GradedModule::new`] but only checks shapes.
    pub fn new_unchecked(
        name: impl Into<String>,
        algebra_name: AlgebraName,
        mut basis: BTreeMap<i32, Vec<String>>,
        actions: Vec<BTreeMap<i32, Block>>,
        truncated_above: Option<i32>,
    ) -> Result<Self> {
        basis.retain(|_, ids| !ids.is_empty());
        let alg = algebra(algebra_name);
        if actions.len() != alg.generators().len() {
            return Err(Error::Schema(format!(
                "{algebra_name} has {} generators, got {} action tables",
                alg.generators().len(),
                actions.len()
            )));
        }
        if let (Some(top), Some((&d, _))) = (truncated_above, basis.last_key_value()) {
            if d > top {
                return Err(Error::Schema(format!("basis in degree {d} above truncation {top}")));
            }
        }
        let dim = |d: i32| basis.get(&d).map_or(0, Vec::len);
        for (g, table) in actions.iter().enumerate() {
            let shift = alg.generators()[g].degree as i32;
            for (&d, block) in table {
                if block.len() != dim(d) {
                    return Err(Error::DimensionMismatch {
                        expected: dim(d),
                        actual: block.len(),
                    });
                }
                for v in block {
                    if v.len() != dim(d + shift) {
                        return Err(Error::DimensionMismatch {
                            expected: dim(d + shift),
                            actual: v.len(),
                        });
                    }
                }
            }
        }
        Ok(GradedModule {
            name: name.into(),
            algebra: algebra_name,
            basis,
            actions,
            truncated_above,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra_name(&self) -> AlgebraName {
        self.algebra
    }

    pub fn algebra(&self) -> &'static FiniteAlgebra {
        algebra(self.algebra)
    }

    pub fn truncated_above(&self) -> Option<i32> {
        self.truncated_above
    }

    pub fn dim(&self, d: i32) -> usize {
        self.basis.get(&d).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Occupied degrees in increasing order.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.basis.keys().copied()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.basis.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.basis.keys().next_back().copied()
    }

    pub fn basis_ids(&self, d: i32) -> &[String] {
        self.basis.get(&d).map_or(&[], Vec::as_slice)
    }

    /// Basis ids appearing in `v`, joined by `" + "`.
    pub fn describe(&self, d: i32, v: &F2Vector) -> String {
        let ids = self.basis_ids(d);
        let parts: Vec<&str> = v.ones().map(|i| ids[i].as_str()).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn apply_generator(&self, g: usize, d: i32, v: &F2Vector) -> F2Vector {
        let target = d + self.algebra().generators()[g].degree as i32;
        let mut out = F2Vector::zeros(self.dim(target));
        if let Some(block) = self.actions[g].get(&d) {
            for i in v.ones() {
                out.xor_assign(&block[i]);
            }
        }
        out
    }

    pub fn apply_word(&self, w: &[usize], d: i32, v: &F2Vector) -> F2Vector {
        let mut cur = v.clone();
        let mut deg = d;
        for &g in w.iter().rev() {
            cur = self.apply_generator(g, deg, &cur);
            deg += self.algebra().generators()[g].degree as i32;
        }
        cur
    }

    /// Action of algebra basis element `a` on `v` in degree `d`.
    pub fn apply_element(&self, a: usize, d: i32, v: &F2Vector) -> F2Vector {
        let alg = self.algebra();
        let mut out = F2Vector::zeros(self.dim(d + alg.degree(a) as i32));
        for w in alg.decomposition(a) {
            out.xor_assign(&self.apply_word(w, d, v));
        }
        out
    }

    /// Images of the degree-`d` basis under algebra element `a`.
    pub fn element_block(&self, a: usize, d: i32) -> Block {
        (0..self.dim(d))
            .map(|i| self.apply_element(a, d, &F2Vector::unit(self.dim(d), i)))
            .collect()
    }

    fn relation_value(&self, r: &WordRelation, d: i32, v: &F2Vector) -> F2Vector {
        let mut out = F2Vector::zeros(self.dim(d + r.degree as i32));
        for w in &r.words {
            out.xor_assign(&self.apply_word(w, d, v));
        }
        out
    }

    /// Checks the defining relations, then the complete relation set.
    pub fn check_relations(&self) -> Result<()> {
        let alg = self.algebra();
        for rels in [alg.named_relations(), alg.all_relations()] {
            for r in &rels {
                for (&d, ids) in &self.basis {
                    for (i, id) in ids.iter().enumerate() {
                        let v = F2Vector::unit(ids.len(), i);
                        if !self.relation_value(r, d, &v).is_zero() {
                            return Err(Error::Relation {
                                identity: alg.relation_name(r),
                                element: id.clone(),
                                degree: d as i64,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_doc(&self) -> ModuleDoc {
        let alg = self.algebra();
        let basis = self
            .basis
            .iter()
            .flat_map(|(&d, ids)| ids.iter().map(move |id| BasisEntry { id: id.clone(), degree: d }))
            .collect();
        let mut actions = BTreeMap::new();
        for (g, gen) in alg.generators().iter().enumerate() {
            let mut entries = Vec::new();
            for (&d, ids) in &self.basis {
                let target = self.basis_ids(d + gen.degree as i32);
                if let Some(block) = self.actions[g].get(&d) {
                    for (i, v) in block.iter().enumerate() {
                        if !v.is_zero() {
                            entries.push(ActionEntry {
                                from: ids[i].clone(),
                                to: v.ones().map(|j| target[j].clone()).collect(),
                            });
                        }
                    }
                }
            }
            actions.insert(gen.symbol.to_string(), entries);
        }
        ModuleDoc {
            name: self.name.clone(),
            algebra: self.algebra,
            basis,
            actions,
            truncated_above: self.truncated_above,
        }
    }

    /// Builds and validates a module from its document.
    pub fn from_doc(doc: &ModuleDoc) -> Result<Self> {
        let alg = algebra(doc.algebra);
        let mut basis: BTreeMap<i32, Vec<String>> = BTreeMap::new();
        let mut where_is: HashMap<&str, (i32, usize)> = HashMap::new();
        for e in &doc.basis {
            if e.id.is_empty() {
                return Err(Error::Schema("empty basis id".into()));
            }
            let ids = basis.entry(e.degree).or_default();
            if where_is.insert(&e.id, (e.degree, ids.len())).is_some() {
                return Err(Error::Schema(format!("duplicate basis id {:?}", e.id)));
            }
            ids.push(e.id.clone());
        }
        let dim = |d: i32| basis.get(&d).map_or(0, Vec::len);
        let mut actions = vec![BTreeMap::new(); alg.generators().len()];
        for (symbol, entries) in &doc.actions {
            let g = alg.generator_by_symbol(symbol).ok_or_else(|| {
                let known: Vec<_> = alg.generators().iter().map(|g| g.symbol).collect();
                Error::Schema(format!("unknown action {symbol:?} for {}; expected one of {known:?}", doc.algebra))
            })?;
            let shift = alg.generators()[g].degree as i32;
            let mut seen = HashSet::new();
            for e in entries {
                let &(d, i) = where_is
                    .get(e.from.as_str())
                    .ok_or_else(|| Error::Schema(format!("{symbol}: unknown id {:?}", e.from)))?;
                if !seen.insert(e.from.as_str()) {
                    return Err(Error::Schema(format!("{symbol}: {:?} listed twice", e.from)));
                }
                let block: &mut Block = actions[g]
                    .entry(d)
                    .or_insert_with(|| vec![F2Vector::zeros(dim(d + shift)); dim(d)]);
                for to in &e.to {
                    let &(td, j) = where_is
                        .get(to.as_str())
                        .ok_or_else(|| Error::Schema(format!("{symbol}: unknown id {to:?}")))?;
                    if td != d + shift {
                        return Err(Error::Schema(format!(
                            "{symbol} {:?}: target {to:?} has degree {td}, expected {}",
                            e.from,
                            d + shift
                        )));
                    }
                    if block[i].get(j) {
                        return Err(Error::Schema(format!("{symbol} {:?}: target {to:?} repeated", e.from)));
                    }
                    block[i].set(j, true);
                }
            }
        }
        Self::new(doc.name.clone(), doc.algebra, basis, actions, doc.truncated_above)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ModuleDoc = serde_json::from_str(text)?;
        Self::from_doc(&doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_doc()).expect("plain data");
        s.push('\n');
        s
    }

    /// Reduced echelon bases, per degree, of the submodule generated by the
    /// elements `(degree, vector)`.
    pub fn span_closure(&self, gens: &[(i32, F2Vector)]) -> Result<BTreeMap<i32, RowEchelon>> {
        let alg = self.algebra();
        for (d, v) in gens {
            if v.len() != self.dim(*d) || self.dim(*d) == 0 {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(*d),
                    actual: v.len(),
                });
            }
        }
        let mut spans: BTreeMap<i32, RowEchelon> = BTreeMap::new();
        for d in self.degrees() {
            let mut ech = RowEchelon::new(self.dim(d));
            for (gd, v) in gens {
                if *gd == d {
                    ech.insert(v)?;
                }
            }
            for (g, gen) in alg.generators().iter().enumerate() {
                let src = d - gen.degree as i32;
                if let Some(below) = spans.get(&src) {
                    let images: Vec<F2Vector> =
                        below.basis().iter().map(|v| self.apply_generator(g, src, v)).collect();
                    for w in images {
                        ech.insert(&w)?;
                    }
                }
            }
            if ech.rank() > 0 {
                spans.insert(d, ech);
            }
        }
        Ok(spans)
    }

    /// The submodule generated by the given elements `(degree, vector)`.
    /// Basis elements are the rows of a reduced echelon form and are named by
    /// their expansion in the ambient basis.
    pub fn submodule(&self, name: impl Into<String>, gens: &[(i32, F2Vector)]) -> Result<GradedModule> {
        let alg = self.algebra();
        let spans = self.span_closure(gens)?;
        let basis: BTreeMap<i32, Vec<String>> = spans
            .iter()
            .map(|(&d, e)| (d, e.basis().iter().map(|v| self.describe(d, v)).collect()))
            .collect();
        let mut actions = vec![BTreeMap::new(); alg.generators().len()];
        for (g, gen) in alg.generators().iter().enumerate() {
            for (&d, e) in &spans {
                let td = d + gen.degree as i32;
                let target = spans.get(&td);
                let block: Block = e
                    .basis()
                    .iter()
                    .map(|v| {
                        let w = self.apply_generator(g, d, v);
                        match target {
                            None => F2Vector::zeros(0),
                            Some(t) => F2Vector::from_indices(
                                t.rank(),
                                t.pivots().iter().enumerate().filter(|(_, &p)| w.get(p)).map(|(r, _)| r),
                            ),
                        }
                    })
                    .collect();
                actions[g].insert(d, block);
            }
        }
        GradedModule::new_unchecked(name, self.algebra, basis, actions, self.truncated_above)
    }

    /// Coordinates of the vector `v` of degree `d` in the listed ids.
    pub fn vector_from_ids(&self, d: i32, ids: &[&str]) -> Result<F2Vector> {
        let basis = self.basis_ids(d);
        let mut v = F2Vector::zeros(basis.len());
        for id in ids {
            let i = basis
                .iter()
                .position(|b| b == id)
                .ok_or_else(|| Error::Domain(format!("no basis element {id:?} in degree {d}")))?;
            v.flip(i);
        }
        Ok(v)
    }
}

/// The truncation to degrees `<= max_degree` of `H*(K(Z/2,k))` as a module
/// over `algebra`, on the monomial basis. `reduced` drops the unit.
pub fn module_from_km(km: &Km, algebra_name: AlgebraName, max_degree: usize, reduced: bool) -> Result<GradedModule> {
    let alg = algebra(algebra_name);
    let lo = usize::from(reduced);
    let mut bases = BTreeMap::new();
    for n in lo..=max_degree {
        let b = km.monomial_basis(n);
        if b.len() > km.column_cap() {
            return Err(Error::CapExceeded {
                degree: n,
                columns: b.len(),
                cap: km.column_cap(),
            });
        }
        if !b.is_empty() {
            bases.insert(n, b);
        }
    }
    let index: BTreeMap<usize, HashMap<_, usize>> = bases
        .iter()
        .map(|(&n, b)| (n, b.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()))
        .collect();
    let degrees: Vec<usize> = bases.keys().copied().collect();
    let mut actions = vec![BTreeMap::new(); alg.generators().len()];
    for (g, gen) in alg.generators().iter().enumerate() {
        let blocks: Vec<(i32, Block)> = degrees
            .par_iter()
            .filter_map(|&n| {
                let t = n + gen.degree;
                let tindex = index.get(&t)?;
                let block = bases[&n]
                    .iter()
                    .map(|m| {
                        let p = match (algebra_name, gen.symbol) {
                            (AlgebraName::A1, "Sq1") => km.sq_monomial(1, m),
                            (AlgebraName::A1, "Sq2") => km.sq_monomial(2, m),
                            (AlgebraName::E1, "Q0") => km.q_monomial(0, m),
                            (AlgebraName::E1, "Q1") => km.q_monomial(1, m),
                            other => unreachable!("generator {other:?}"),
                        };
                        F2Vector::from_indices(tindex.len(), p.terms().map(|x| tindex[x]))
                    })
                    .collect();
                Some((n as i32, block))
            })
            .collect();
        actions[g].extend(blocks);
    }
    let basis = bases
        .iter()
        .map(|(&n, b)| (n as i32, b.iter().map(|m| km.monomial_id(m)).collect()))
        .collect();
    let name = format!("H*(K(Z/2,{})){}", km.k(), if reduced { " reduced" } else { "" });
    GradedModule::new_unchecked(name, algebra_name, basis, actions, Some(max_degree as i32))
}

/// The trivial module `F_2` in degree 0.
pub fn trivial_module(algebra_name: AlgebraName) -> GradedModule {
    let basis = BTreeMap::from([(0, vec!["1".to_string()])]);
    let actions = vec![BTreeMap::new(); algebra(algebra_name).generators().len()];
    GradedModule::new(format!("F2 over {algebra_name}"), algebra_name, basis, actions, None).expect("trivial module")
}

/// The algebra as a free module on one generator in degree `d`.
pub fn free_module(algebra_name: AlgebraName, d: i32) -> GradedModule {
    let alg = algebra(algebra_name);
    let mut basis: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    let mut pos = Vec::new();
    for (a, r) in alg.basis().iter().enumerate() {
        let deg = d + alg.degree(a) as i32;
        let ids = basis.entry(deg).or_default();
        pos.push((deg, ids.len()));
        ids.push(r.to_string());
    }
    let dim = |deg: i32| basis.get(&deg).map_or(0, Vec::len);
    let mut actions = vec![BTreeMap::new(); alg.generators().len()];
    for (g, gen) in alg.generators().iter().enumerate() {
        for (a, &(deg, i)) in pos.iter().enumerate() {
            let block: &mut Block = actions[g]
                .entry(deg)
                .or_insert_with(|| vec![F2Vector::zeros(dim(deg + gen.degree as i32)); dim(deg)]);
            for &c in alg.mul(gen.element, a) {
                block[i].flip(pos[c].1);
            }
        }
    }
    GradedModule::new(format!("{algebra_name} free on degree {d}"), algebra_name, basis, actions, None)
        .expect("free module")
}
