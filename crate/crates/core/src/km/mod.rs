//! The cohomology ring `H*(K(Z/2, k); Z/2)`.
//!
//! It is polynomial on the classes `Sq(R) ι_k` with `exc(R) < k`. A
//! generator is identified by its Milnor sequence `R`; generators of a fixed
//! `k` are numbered in (degree, Milnor order) order, so a [`GenId`] is a
//! canonical index that does not depend on how far the catalog has been
//! extended. Monomials and polynomials store only these indices and are
//! interpreted relative to a [`Km`] handle for the same `k`.
//!
//! Steenrod squares act on generators through the Milnor product followed by
//! [`Km::reduce`], and on monomials through the Cartan formula. The Milnor
//! primitives `Q_j` act as derivations.

mod names;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, RwLock};

use crate::error::{Error, Result};
use crate::f2la::{F2Vector, RowEchelon};
use crate::milnor::{self, MilnorSeq};

pub use names::NameTable;

/// Default bound on the number of monomials in the target degree of an
/// image-membership test.
pub const DEFAULT_COLUMN_CAP: usize = 200_000;

/// Index of a generator in the canonical generator order for a fixed `k`.
pub type GenId = u32;

/// A polynomial generator `Sq(R) ι_k` with `exc(R) < k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KmGenerator {
    pub k: u32,
    pub seq: MilnorSeq,
}

impl KmGenerator {
    pub fn degree(&self) -> usize {
        self.k as usize + self.seq.degree()
    }
}

/// A monomial: generator ids with strictly positive exponents, sorted by id.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct KMonomial {
    degree: usize,
    factors: Vec<(GenId, u32)>,
}

impl KMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn factors(&self) -> &[(GenId, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, g: GenId) -> u32 {
        self.factors
            .binary_search_by_key(&g, |&(h, _)| h)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &KMonomial) -> KMonomial {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, b) = (self.factors[i], other.factors[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    factors.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    factors.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    factors.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        KMonomial {
            degree: self.degree + other.degree,
            factors,
        }
    }

    /// Raises every exponent by the factor `2^t`.
    pub fn frobenius(&self, t: u32) -> KMonomial {
        KMonomial {
            degree: self.degree << t,
            factors: self.factors.iter().map(|&(g, e)| (g, e << t)).collect(),
        }
    }

    fn with_exponent(&self, g: GenId, gen_degree: usize, e: u32) -> KMonomial {
        let mut factors = self.factors.clone();
        let old = match factors.binary_search_by_key(&g, |&(h, _)| h) {
            Ok(i) => {
                let old = factors[i].1;
                if e == 0 {
                    factors.remove(i);
                } else {
                    factors[i].1 = e;
                }
                old
            }
            Err(i) => {
                if e > 0 {
                    factors.insert(i, (g, e));
                }
                0
            }
        };
        KMonomial {
            degree: self.degree + gen_degree * e as usize - gen_degree * old as usize,
            factors,
        }
    }
}

/// Graded lexicographic: by degree, then the dense exponent vectors compared
/// in generator order with the larger exponent first.
impl Ord for KMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let (a, b) = (&self.factors, &other.factors);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(&(ga, ea)), Some(&(gb, eb))) => match ga.cmp(&gb) {
                        Ordering::Less => return Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal => {
                            if ea != eb {
                                return eb.cmp(&ea);
                            }
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for KMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A GF(2) sum of monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct KPoly {
    terms: BTreeSet<KMonomial>,
}

impl KPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from(KMonomial::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &KMonomial> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &KMonomial) -> bool {
        self.terms.contains(m)
    }

    pub fn toggle(&mut self, m: KMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    /// The common degree of all terms, or `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.iter().map(KMonomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, other: &KPoly) -> KPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &KPoly) {
        for m in &other.terms {
            self.toggle(m.clone());
        }
    }

    pub fn mul(&self, other: &KPoly) -> KPoly {
        let mut out = KPoly::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &KMonomial) -> KPoly {
        self.terms.iter().map(|a| a.mul(m)).collect()
    }

    /// `p^(2^t)`, computed term by term (Frobenius).
    pub fn frobenius(&self, t: u32) -> KPoly {
        // Distinct monomials stay distinct after raising exponents.
        KPoly {
            terms: self.terms.iter().map(|m| m.frobenius(t)).collect(),
        }
    }

    pub fn square(&self) -> KPoly {
        self.frobenius(1)
    }

    pub fn pow(&self, mut e: u32) -> KPoly {
        let mut base = self.clone();
        let mut acc = KPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }
}

impl From<KMonomial> for KPoly {
    fn from(m: KMonomial) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        KPoly { terms }
    }
}

impl FromIterator<KMonomial> for KPoly {
    fn from_iter<I: IntoIterator<Item = KMonomial>>(iter: I) -> Self {
        let mut p = KPoly::zero();
        for m in iter {
            p.toggle(m);
        }
        p
    }
}

impl fmt::Debug for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.terms.iter().map(|m| &m.factors)).finish()
    }
}

/// Result of an image-membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub in_image: bool,
    /// When `in_image`, pairs `(i, m)` with `target = sum Sq^i(m)`.
    pub witness: Vec<(u32, KMonomial)>,
    pub rows: usize,
    pub columns: usize,
}

#[derive(Default)]
struct Catalog {
    max_degree: usize,
    gens: Vec<MilnorSeq>,
    degrees: Vec<usize>,
    index: HashMap<MilnorSeq, GenId>,
}

type PolyCache<K> = Mutex<HashMap<K, KPoly>>;

type ColumnIndex = (Arc<Vec<KMonomial>>, HashMap<KMonomial, usize>);

struct KmInner {
    k: u32,
    column_cap: usize,
    catalog: RwLock<Catalog>,
    sq_gen: PolyCache<(u32, GenId)>,
    sq_mono: PolyCache<(u32, KMonomial)>,
    q_gen: PolyCache<(usize, GenId)>,
    bases: Mutex<HashMap<usize, Arc<Vec<KMonomial>>>>,
    names: Option<NameTable>,
}

/// Handle on `H*(K(Z/2, k))` with its generator catalog and memo tables.
///
/// Cloning is cheap and shares the caches. Caches are guarded by mutexes and
/// never change results.
#[derive(Clone)]
pub struct Km {
    inner: Arc<KmInner>,
}

impl fmt::Debug for Km {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Km").field("k", &self.inner.k).finish()
    }
}

impl Km {
    pub fn new(k: u32) -> Result<Self> {
        Self::with_column_cap(k, DEFAULT_COLUMN_CAP)
    }

    pub fn with_column_cap(k: u32, column_cap: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("k must be at least 1".into()));
        }
        let mut km = Km {
            inner: Arc::new(KmInner {
                k,
                column_cap,
                catalog: RwLock::new(Catalog::default()),
                sq_gen: Mutex::default(),
                sq_mono: Mutex::default(),
                q_gen: Mutex::default(),
                bases: Mutex::default(),
                names: None,
            }),
        };
        km.ensure_catalog(k as usize + 16);
        if let Some(table) = NameTable::for_k(&km) {
            Arc::get_mut(&mut km.inner)
                .expect("fresh handle is unshared")
                .names = Some(table);
        }
        Ok(km)
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    pub fn column_cap(&self) -> usize {
        self.inner.column_cap
    }

    pub fn names(&self) -> Option<&NameTable> {
        self.inner.names.as_ref()
    }

    fn ensure_catalog(&self, degree: usize) {
        if self.inner.catalog.read().unwrap().max_degree >= degree {
            return;
        }
        let mut cat = self.inner.catalog.write().unwrap();
        if cat.max_degree >= degree {
            return;
        }
        let k = self.inner.k as usize;
        let target = degree.max(2 * cat.max_degree);
        for d in (cat.max_degree + 1).max(k)..=target {
            for seq in milnor::basis_with_max_excess(d - k, k - 1) {
                let id = cat.gens.len() as GenId;
                cat.index.insert(seq.clone(), id);
                cat.gens.push(seq);
                cat.degrees.push(d);
            }
        }
        cat.max_degree = target;
    }

    /// Id of the generator `Sq(R) ι_k`; `None` if `exc(R) >= k`.
    pub fn gen_id(&self, seq: &MilnorSeq) -> Option<GenId> {
        if seq.excess() >= self.inner.k as usize {
            return None;
        }
        self.ensure_catalog(self.inner.k as usize + seq.degree());
        self.inner.catalog.read().unwrap().index.get(seq).copied()
    }

    pub fn generator(&self, id: GenId) -> KmGenerator {
        let cat = self.inner.catalog.read().unwrap();
        KmGenerator {
            k: self.inner.k,
            seq: cat.gens[id as usize].clone(),
        }
    }

    pub fn gen_degree(&self, id: GenId) -> usize {
        self.inner.catalog.read().unwrap().degrees[id as usize]
    }

    /// The monomial consisting of one generator.
    pub fn gen_monomial(&self, id: GenId) -> KMonomial {
        KMonomial {
            degree: self.gen_degree(id),
            factors: vec![(id, 1)],
        }
    }

    /// `ι_k` as a polynomial.
    pub fn iota(&self) -> KPoly {
        KPoly::from(self.gen_monomial(0))
    }

    /// Generators of degree at most `max_deg`, ordered by degree then Milnor order.
    pub fn generators(&self, max_deg: usize) -> Vec<KmGenerator> {
        self.generator_ids(max_deg)
            .into_iter()
            .map(|g| self.generator(g))
            .collect()
    }

    pub fn generator_ids(&self, max_deg: usize) -> Vec<GenId> {
        self.ensure_catalog(max_deg);
        let cat = self.inner.catalog.read().unwrap();
        (0..cat.gens.len() as GenId)
            .take_while(|&g| cat.degrees[g as usize] <= max_deg)
            .collect()
    }

    /// Builds a monomial from `(generator, exponent)` pairs.
    pub fn monomial(&self, factors: &[(GenId, u32)]) -> KMonomial {
        factors.iter().fold(KMonomial::one(), |m, &(g, e)| {
            let cur = m.exponent(g);
            m.with_exponent(g, self.gen_degree(g), cur + e)
        })
    }

    /// All degree-`n` monomials, in monomial order.
    pub fn monomial_basis(&self, n: usize) -> Arc<Vec<KMonomial>> {
        if let Some(b) = self.inner.bases.lock().unwrap().get(&n) {
            return Arc::clone(b);
        }
        let ids = self.generator_ids(n);
        let degs: Vec<usize> = ids.iter().map(|&g| self.gen_degree(g)).collect();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fill_monomials(n, &ids, &degs, ids.len(), &mut cur, &mut out);
        let mut out: Vec<KMonomial> = out
            .into_iter()
            .map(|mut f: Vec<(GenId, u32)>| {
                f.reverse();
                KMonomial { degree: n, factors: f }
            })
            .collect();
        out.sort();
        let out = Arc::new(out);
        self.inner
            .bases
            .lock()
            .unwrap()
            .insert(n, Arc::clone(&out));
        out
    }

    /// The class `Sq(R) ι_k` in the monomial basis.
    ///
    /// Zero if `exc(R) > k`; the generator if `exc(R) < k`; and if
    /// `exc(R) = k` with first nonzero entry `r_t`, the power
    /// `(Sq(r_{t+1}, ...) ι_k)^(2^t)`.
    pub fn reduce(&self, r: &MilnorSeq) -> KPoly {
        let k = self.inner.k as usize;
        let e = r.excess();
        match e.cmp(&k) {
            Ordering::Greater => KPoly::zero(),
            Ordering::Less => {
                let g = self.gen_id(r).expect("excess below k");
                KPoly::from(self.gen_monomial(g))
            }
            Ordering::Equal => {
                let entries = r.entries();
                let t = entries.iter().position(|&x| x != 0).expect("excess k >= 1") + 1;
                let rest = MilnorSeq::new(entries[t..].to_vec());
                let g = self.gen_id(&rest).expect("excess of the tail is below k");
                KPoly::from(self.gen_monomial(g).frobenius(t as u32))
            }
        }
    }

    /// Image of an element of the Steenrod algebra applied to `ι_k`.
    pub fn apply_to_iota(&self, a: &milnor::SteenrodSum) -> KPoly {
        let mut out = KPoly::zero();
        for r in a.terms() {
            out.add_assign(&self.reduce(r));
        }
        out
    }

    fn sq_generator(&self, i: u32, g: GenId) -> KPoly {
        if let Some(p) = self.inner.sq_gen.lock().unwrap().get(&(i, g)) {
            return p.clone();
        }
        let seq = self.generator(g).seq;
        let p = self.apply_to_iota(&milnor::product(&MilnorSeq::sq(i), &seq));
        self.inner.sq_gen.lock().unwrap().insert((i, g), p.clone());
        p
    }

    /// `Sq^i` of a monomial, by the Cartan formula.
    pub fn sq_monomial(&self, i: u32, m: &KMonomial) -> KPoly {
        if i == 0 {
            return KPoly::from(m.clone());
        }
        if i as usize > m.degree {
            return KPoly::zero();
        }
        if i as usize == m.degree {
            return KPoly::from(m.frobenius(1));
        }
        let key = (i, m.clone());
        if let Some(p) = self.inner.sq_mono.lock().unwrap().get(&key) {
            return p.clone();
        }
        let p = self.sq_monomial_uncached(i, m);
        self.inner.sq_mono.lock().unwrap().insert(key, p.clone());
        p
    }

    fn sq_monomial_uncached(&self, i: u32, m: &KMonomial) -> KPoly {
        let (g, e) = m.factors[0];
        if m.factors.len() == 1 {
            if e == 1 {
                return self.sq_generator(i, g);
            }
            if e % 2 == 0 {
                if i % 2 == 1 {
                    return KPoly::zero();
                }
                let half = KMonomial {
                    degree: m.degree / 2,
                    factors: vec![(g, e / 2)],
                };
                return self.sq_monomial(i / 2, &half).square();
            }
            let x = self.gen_monomial(g);
            let y = m.with_exponent(g, x.degree, e - 1);
            return self.cartan(i, &x, &y);
        }
        let x = KMonomial {
            degree: self.gen_degree(g) * e as usize,
            factors: vec![(g, e)],
        };
        let y = KMonomial {
            degree: m.degree - x.degree,
            factors: m.factors[1..].to_vec(),
        };
        self.cartan(i, &x, &y)
    }

    fn cartan(&self, i: u32, x: &KMonomial, y: &KMonomial) -> KPoly {
        let mut out = KPoly::zero();
        let lo = (i as usize).saturating_sub(y.degree) as u32;
        let hi = (i as usize).min(x.degree) as u32;
        for a in lo..=hi {
            let sx = self.sq_monomial(a, x);
            if sx.is_zero() {
                continue;
            }
            let sy = self.sq_monomial(i - a, y);
            out.add_assign(&sx.mul(&sy));
        }
        out
    }

    /// `Sq^i(p)`.
    pub fn sq_action(&self, i: u32, p: &KPoly) -> KPoly {
        let mut out = KPoly::zero();
        for m in p.terms() {
            out.add_assign(&self.sq_monomial(i, m));
        }
        out
    }

    /// An arbitrary element of the Steenrod algebra acting on `p`. Each
    /// Milnor basis element is pushed through products with the Milnor
    /// coproduct, independently of the `Sq^i` recursion in [`Km::sq_action`].
    pub fn steenrod_action(&self, a: &milnor::SteenrodSum, p: &KPoly) -> KPoly {
        let mut out = KPoly::zero();
        for r in a.terms() {
            for m in p.terms() {
                out.add_assign(&self.milnor_on_monomial(r, m));
            }
        }
        out
    }

    // Sq(R) on a monomial via the Milnor coproduct
    // psi(Sq(R)) = sum_{R' + R'' = R} Sq(R') (x) Sq(R'').
    fn milnor_on_monomial(&self, r: &MilnorSeq, m: &KMonomial) -> KPoly {
        if r.is_unit() {
            return KPoly::from(m.clone());
        }
        if m.is_one() {
            return KPoly::zero();
        }
        let (g, e) = m.factors[0];
        if m.factors.len() == 1 && e == 1 {
            let seq = self.generator(g).seq;
            return self.apply_to_iota(&milnor::product(r, &seq));
        }
        let (x, y) = if e > 1 {
            let x = self.gen_monomial(g);
            let y = m.with_exponent(g, x.degree, e - 1);
            (x, y)
        } else {
            let x = self.gen_monomial(g);
            let y = KMonomial {
                degree: m.degree - x.degree,
                factors: m.factors[1..].to_vec(),
            };
            (x, y)
        };
        let mut out = KPoly::zero();
        for_each_split(r.entries(), &mut |a, b| {
            let sx = self.milnor_on_monomial(&MilnorSeq::new(a.to_vec()), &x);
            if !sx.is_zero() {
                let sy = self.milnor_on_monomial(&MilnorSeq::new(b.to_vec()), &y);
                out.add_assign(&sx.mul(&sy));
            }
        });
        out
    }

    fn q_generator(&self, j: usize, g: GenId) -> KPoly {
        if let Some(p) = self.inner.q_gen.lock().unwrap().get(&(j, g)) {
            return p.clone();
        }
        let seq = self.generator(g).seq;
        let p = self.apply_to_iota(&milnor::product(&MilnorSeq::q(j), &seq));
        self.inner.q_gen.lock().unwrap().insert((j, g), p.clone());
        p
    }

    /// `Q_j(m)` using the derivation rule.
    pub fn q_monomial(&self, j: usize, m: &KMonomial) -> KPoly {
        let mut out = KPoly::zero();
        for &(g, e) in &m.factors {
            if e % 2 == 0 {
                continue;
            }
            let rest = m.with_exponent(g, self.gen_degree(g), e - 1);
            out.add_assign(&self.q_generator(j, g).mul_monomial(&rest));
        }
        out
    }

    /// `Q_j(p)`.
    pub fn q_action(&self, j: usize, p: &KPoly) -> KPoly {
        let mut out = KPoly::zero();
        for m in p.terms() {
            out.add_assign(&self.q_monomial(j, m));
        }
        out
    }

    /// `Sq^{i_1} Sq^{i_2} ... Sq^{i_m} ι_k`.
    pub fn admissible_class(&self, word: &[u32]) -> Result<KPoly> {
        if word.is_empty() {
            return Err(Error::Domain("admissible word must be nonempty".into()));
        }
        Ok(word
            .iter()
            .rev()
            .fold(self.iota(), |p, &i| self.sq_action(i, &p)))
    }

    /// `chi(Sq^{n-k}) ι_k` in `H^n`. Only Milnor terms of excess at most `k`
    /// contribute, so the enumeration is restricted to those.
    pub fn chi_class(&self, n: usize) -> Result<KPoly> {
        let k = self.inner.k as usize;
        if n < k {
            return Err(Error::Domain(format!("chi class needs n >= k (n={n}, k={k})")));
        }
        let mut out = KPoly::zero();
        for r in milnor::basis_with_max_excess(n - k, k) {
            out.add_assign(&self.reduce(&r));
        }
        Ok(out)
    }

    /// Column index of each degree-`n` monomial.
    fn column_index(&self, n: usize) -> Result<ColumnIndex> {
        let basis = self.monomial_basis(n);
        if basis.len() > self.inner.column_cap {
            return Err(Error::CapExceeded {
                degree: n,
                columns: basis.len(),
                cap: self.inner.column_cap,
            });
        }
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok((basis, index))
    }

    /// Coordinates of a homogeneous degree-`n` polynomial.
    pub fn to_vector(&self, p: &KPoly, n: usize) -> Result<F2Vector> {
        let (basis, index) = self.column_index(n)?;
        poly_to_vector(p, n, basis.len(), &index)
    }

    /// Decides whether `target` (homogeneous of degree `n`) lies in
    /// `sum_{i in ops} Sq^i H^{n-i}`.
    pub fn in_image(&self, target: &KPoly, n: usize, ops: &[u32]) -> Result<Membership> {
        let (basis, index) = self.column_index(n)?;
        let cols = basis.len();
        let v = poly_to_vector(target, n, cols, &index)?;
        let mut sources = Vec::new();
        for &i in ops {
            if i as usize > n {
                continue;
            }
            for m in self.monomial_basis(n - i as usize).iter() {
                sources.push((i, m.clone()));
            }
        }
        let mut ech = RowEchelon::with_witnesses(cols, sources.len());
        for (i, m) in &sources {
            let row = poly_to_vector(&self.sq_monomial(*i, m), n, cols, &index)?;
            ech.insert(&row)?;
        }
        let (rem, combo) = ech.reduce(&v);
        let in_image = rem.is_zero();
        let witness = if in_image {
            combo
                .expect("tracking")
                .ones()
                .map(|r| sources[r].clone())
                .collect()
        } else {
            Vec::new()
        };
        Ok(Membership {
            in_image,
            witness,
            rows: sources.len(),
            columns: cols,
        })
    }

    /// Renders `p` in the named basis when a name table exists (`k = 2, 3`),
    /// otherwise with generic `[R]ι_k` generator names.
    pub fn display(&self, p: &KPoly) -> String {
        match self.names() {
            Some(t) => t.display(self, p),
            None => self.display_generic(p),
        }
    }

    /// Generic rendering: generators as `[r1,r2,...]`, `ι_k` as `[]`.
    pub fn display_generic(&self, p: &KPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        p.terms()
            .map(|m| self.monomial_id(m))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Unambiguous label for a monomial in generic notation; used as module ids.
    pub fn monomial_id(&self, m: &KMonomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        m.factors
            .iter()
            .map(|&(g, e)| {
                let seq = self.generator(g).seq;
                let body = seq
                    .entries()
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(",");
                if e == 1 {
                    format!("[{body}]")
                } else {
                    format!("[{body}]^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

// Enumerates exponent vectors over `ids[..upto]` (highest id first).
fn fill_monomials(
    remaining: usize,
    ids: &[GenId],
    degs: &[usize],
    upto: usize,
    cur: &mut Vec<(GenId, u32)>,
    out: &mut Vec<Vec<(GenId, u32)>>,
) {
    if remaining == 0 {
        out.push(cur.clone());
        return;
    }
    for idx in (0..upto).rev() {
        let d = degs[idx];
        if d > remaining {
            continue;
        }
        let mut e = 1u32;
        while d * e as usize <= remaining {
            cur.push((ids[idx], e));
            fill_monomials(remaining - d * e as usize, ids, degs, idx, cur, out);
            cur.pop();
            e += 1;
        }
    }
}

// Every entrywise splitting R = A + B.
fn for_each_split(r: &[u32], f: &mut dyn FnMut(&[u32], &[u32])) {
    let mut a = vec![0u32; r.len()];
    let mut b = r.to_vec();
    loop {
        f(&a, &b);
        let mut i = 0;
        loop {
            if i == r.len() {
                return;
            }
            if a[i] < r[i] {
                a[i] += 1;
                b[i] -= 1;
                break;
            }
            a[i] = 0;
            b[i] = r[i];
            i += 1;
        }
    }
}

fn poly_to_vector(
    p: &KPoly,
    n: usize,
    cols: usize,
    index: &HashMap<KMonomial, usize>,
) -> Result<F2Vector> {
    let mut v = F2Vector::zeros(cols);
    for m in p.terms() {
        if m.degree() != n {
            return Err(Error::Domain(format!(
                "polynomial is not homogeneous of degree {n} (term of degree {})",
                m.degree()
            )));
        }
        v.flip(index[m]);
    }
    Ok(v)
}

/// Convenience: generators of `H*(K(Z/2,k))` up to `max_deg`.
pub fn generators(k: u32, max_deg: usize) -> Result<Vec<KmGenerator>> {
    Ok(Km::new(k)?.generators(max_deg))
}

#[cfg(test)]
mod tests;
