//! Minimal free resolutions, built stage by stage.
//!
//! Stage `s` needs the kernel of `d_{s-1}` in every internal degree; those
//! eliminations are independent and run on the rayon pool (sized by the
//! `EMCHI_THREADS` environment variable when set). Generators are then chosen
//! degree by degree in a fixed order, so results do not depend on scheduling.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::algebra::{AlgebraName, FiniteAlgebra};
use super::chart::{ExtCell, ExtChart};
use super::module::{Block, GradedModule};
use crate::error::{Error, Result};
use crate::f2la::{left_kernel_basis, F2Matrix, F2Vector, RowEchelon};

pub const THREADS_ENV: &str = "EMCHI_THREADS";

/// Runs `f` on a pool sized by `EMCHI_THREADS`, or on the global pool.
pub fn with_configured_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    match threads.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGenerator {
    pub degree: i32,
    /// `d(g)` in the previous stage (or the module), in degree `degree`.
    pub image: F2Vector,
}

/// A free module given by generator degrees; basis `a * g` ordered by
/// generator, then algebra element.
#[derive(Clone, Debug, Default)]
pub struct FreeStage {
    gens: Vec<FreeGenerator>,
    basis: BTreeMap<i32, Vec<(usize, usize)>>,
    index: HashMap<(usize, usize), usize>,
}

impl FreeStage {
    pub fn generators(&self) -> &[FreeGenerator] {
        &self.gens
    }

    pub fn dim(&self, t: i32) -> usize {
        self.basis.get(&t).map_or(0, Vec::len)
    }

    /// Pairs `(generator, algebra element)` spanning degree `t`.
    pub fn basis(&self, t: i32) -> &[(usize, usize)] {
        self.basis.get(&t).map_or(&[], Vec::as_slice)
    }

    fn add_generator(&mut self, alg: &FiniteAlgebra, degree: i32, image: F2Vector) {
        let g = self.gens.len();
        self.gens.push(FreeGenerator { degree, image });
        for a in 0..alg.dim() {
            let ids = self.basis.entry(degree + alg.degree(a) as i32).or_default();
            self.index.insert((g, a), ids.len());
            ids.push((g, a));
        }
    }

    fn act(&self, alg: &FiniteAlgebra, a: usize, t: i32, x: &F2Vector) -> F2Vector {
        let mut out = F2Vector::zeros(self.dim(t + alg.degree(a) as i32));
        let here = self.basis(t);
        for p in x.ones() {
            let (g, b) = here[p];
            for &c in alg.mul(a, b) {
                out.flip(self.index[&(g, c)]);
            }
        }
        out
    }
}

/// The module's algebra action, tabulated.
struct ModuleTable<'a> {
    module: &'a GradedModule,
    blocks: HashMap<(usize, i32), Block>,
}

impl<'a> ModuleTable<'a> {
    fn new(module: &'a GradedModule, max_t: i32) -> Self {
        let alg = module.algebra();
        let keys: Vec<(usize, i32)> = module
            .degrees()
            .filter(|&d| d <= max_t)
            .flat_map(|d| (0..alg.dim()).map(move |a| (a, d)))
            .collect();
        let blocks = keys
            .into_par_iter()
            .map(|(a, d)| ((a, d), module.element_block(a, d)))
            .collect();
        ModuleTable { module, blocks }
    }

    fn act(&self, alg: &FiniteAlgebra, a: usize, t: i32, x: &F2Vector) -> F2Vector {
        let mut out = F2Vector::zeros(self.module.dim(t + alg.degree(a) as i32));
        if let Some(block) = self.blocks.get(&(a, t)) {
            for p in x.ones() {
                out.xor_assign(&block[p]);
            }
        }
        out
    }
}

#[derive(Clone, Copy)]
enum Target<'a, 'm> {
    Module(&'a ModuleTable<'m>),
    Free(&'a FreeStage),
}

impl Target<'_, '_> {
    fn dim(&self, t: i32) -> usize {
        match self {
            Target::Module(m) => m.module.dim(t),
            Target::Free(f) => f.dim(t),
        }
    }

    fn act(&self, alg: &FiniteAlgebra, a: usize, t: i32, x: &F2Vector) -> F2Vector {
        match self {
            Target::Module(m) => m.act(alg, a, t, x),
            Target::Free(f) => f.act(alg, a, t, x),
        }
    }
}

/// `d(a * g)` for each basis element of `stage` in degree `t`.
fn differential_rows(alg: &FiniteAlgebra, stage: &FreeStage, target: Target, t: i32) -> Vec<F2Vector> {
    stage
        .basis(t)
        .iter()
        .map(|&(g, a)| {
            let gen = &stage.gens[g];
            target.act(alg, a, gen.degree, &gen.image)
        })
        .collect()
}

/// A minimal free resolution `... -> F_1 -> F_0 -> M` through internal
/// degree `t_max` and homological degree `max_s`.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: GradedModule,
    stages: Vec<FreeStage>,
    max_s: usize,
    min_t: i32,
    requested_max_t: i32,
    t_max: i32,
}

pub fn valid_t_max(m: &GradedModule, max_t: i32) -> i32 {
    match m.truncated_above() {
        Some(d) => max_t.min(d - m.algebra().top_degree() as i32),
        None => max_t,
    }
}

/// Resolves `m` through `max_s` and the smaller of `max_t` and the module's
/// valid window.
pub fn minimal_resolution(m: &GradedModule, max_s: usize, max_t: i32) -> Result<Resolution> {
    with_configured_pool(|| resolve_inner(m, max_s, max_t))
}

fn resolve_inner(m: &GradedModule, max_s: usize, max_t: i32) -> Result<Resolution> {
    let alg = m.algebra();
    let min_t = m.min_degree().unwrap_or(0);
    let t_max = valid_t_max(m, max_t);
    let table = ModuleTable::new(m, t_max);
    let ts: Vec<i32> = (min_t..=t_max).collect();
    let mut stages: Vec<FreeStage> = Vec::with_capacity(max_s + 1);
    for s in 0..=max_s {
        let kernels: Vec<Vec<F2Vector>> = if s == 0 {
            ts.iter()
                .map(|&t| (0..m.dim(t)).map(|i| F2Vector::unit(m.dim(t), i)).collect())
                .collect()
        } else {
            let prev = &stages[s - 1];
            let prev_target = if s == 1 { Target::Module(&table) } else { Target::Free(&stages[s - 2]) };
            ts.par_iter()
                .map(|&t| {
                    let rows = differential_rows(alg, prev, prev_target, t);
                    let mat = F2Matrix::from_rows(prev_target.dim(t), rows)?;
                    Ok(left_kernel_basis(&mat))
                })
                .collect::<Result<_>>()?
        };
        let target = if s == 0 { Target::Module(&table) } else { Target::Free(&stages[s - 1]) };
        let mut stage = FreeStage::default();
        for (&t, kernel) in ts.iter().zip(&kernels) {
            let mut image = RowEchelon::new(target.dim(t));
            for row in differential_rows(alg, &stage, target, t) {
                image.insert(&row)?;
            }
            for k in kernel {
                if image.insert(k)?.is_none() {
                    stage.add_generator(alg, t, k.clone());
                }
            }
        }
        stages.push(stage);
    }
    Ok(Resolution {
        module: m.clone(),
        stages,
        max_s,
        min_t,
        requested_max_t: max_t,
        t_max,
    })
}

impl Resolution {
    pub fn algebra_name(&self) -> AlgebraName {
        self.module.algebra_name()
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn max_s(&self) -> usize {
        self.max_s
    }

    /// Largest internal degree resolved.
    pub fn t_max(&self) -> i32 {
        self.t_max
    }

    pub fn stage(&self, s: usize) -> &FreeStage {
        &self.stages[s]
    }

    /// Number of generators of `F_s` in degree `t`.
    pub fn rank(&self, s: usize, t: i32) -> usize {
        self.stages
            .get(s)
            .map_or(0, |st| st.gens.iter().filter(|g| g.degree == t).count())
    }

    fn table(&self) -> ModuleTable<'_> {
        ModuleTable::new(&self.module, self.t_max)
    }

    /// `d_{s-1} d_s = 0` on every generator.
    pub fn check_d_squared(&self) -> Result<()> {
        let alg = self.module.algebra();
        let table = self.table();
        for s in 1..self.stages.len() {
            let prev = &self.stages[s - 1];
            let prev_target = if s == 1 { Target::Module(&table) } else { Target::Free(&self.stages[s - 2]) };
            for (i, g) in self.stages[s].gens.iter().enumerate() {
                let mut dd = F2Vector::zeros(prev_target.dim(g.degree));
                for p in g.image.ones() {
                    let (h, b) = prev.basis(g.degree)[p];
                    let hg = &prev.gens[h];
                    dd.xor_assign(&prev_target.act(alg, b, hg.degree, &hg.image));
                }
                if !dd.is_zero() {
                    return Err(Error::Relation {
                        identity: "d d = 0".into(),
                        element: format!("generator {i} of F_{s}"),
                        degree: g.degree as i64,
                    });
                }
            }
        }
        Ok(())
    }

    /// No differential has a component on a generator itself.
    pub fn check_minimal(&self) -> Result<()> {
        for s in 1..self.stages.len() {
            let prev = &self.stages[s - 1];
            for (i, g) in self.stages[s].gens.iter().enumerate() {
                if g.image.ones().any(|p| prev.basis(g.degree)[p].1 == 0) {
                    return Err(Error::Relation {
                        identity: "minimality".into(),
                        element: format!("generator {i} of F_{s}"),
                        degree: g.degree as i64,
                    });
                }
            }
        }
        Ok(())
    }

    /// Degrees where `sum_s (-1)^s dim F_s(t) = dim M_t` must hold because
    /// `F_{max_s + 1}` vanishes there.
    pub fn euler_degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.min_t..=self.t_max.min(self.min_t + self.max_s as i32)
    }

    /// Alternating sum of free module dimensions minus `dim M_t`.
    pub fn euler_defect(&self, t: i32) -> i64 {
        let mut sum = 0i64;
        for (s, st) in self.stages.iter().enumerate() {
            let d = st.dim(t) as i64;
            sum += if s % 2 == 0 { d } else { -d };
        }
        sum - self.module.dim(t) as i64
    }

    pub fn check_euler(&self) -> Result<()> {
        for t in self.euler_degrees() {
            let defect = self.euler_defect(t);
            if defect != 0 {
                return Err(Error::Relation {
                    identity: "Euler characteristic".into(),
                    element: format!("defect {defect}"),
                    degree: t as i64,
                });
            }
        }
        Ok(())
    }

    pub fn chart(&self) -> ExtChart {
        let mut ranks = Vec::new();
        for (s, st) in self.stages.iter().enumerate() {
            let mut by_t: BTreeMap<i32, usize> = BTreeMap::new();
            for g in &st.gens {
                *by_t.entry(g.degree).or_default() += 1;
            }
            ranks.extend(by_t.into_iter().map(|(t, rank)| ExtCell { s, t, rank }));
        }
        ExtChart {
            algebra: self.algebra_name(),
            source: self.module.name().to_string(),
            truncated_above: self.module.truncated_above(),
            min_t: self.min_t,
            max_s: self.max_s,
            max_t: self.requested_max_t,
            valid_t_max: self.t_max,
            ranks,
        }
    }
}
