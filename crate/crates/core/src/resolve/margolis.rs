//! Homology of a module with respect to `Q_0` or `Q_1`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::module::GradedModule;
use crate::error::{Error, Result};
use crate::f2la::{left_kernel_basis, F2Matrix, F2Vector, RowEchelon};
use crate::milnor::MilnorSeq;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MargolisDegree {
    pub degree: i32,
    pub module_dim: usize,
    pub kernel: usize,
    pub image: usize,
    pub dim: usize,
    /// Representatives of a basis of the homology, in module basis ids.
    pub representatives: Vec<String>,
    #[serde(skip)]
    pub vectors: Vec<F2Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MargolisHomology {
    pub module: String,
    pub j: usize,
    pub q_degree: usize,
    /// Largest degree whose homology is reported.
    pub valid_through: Option<i32>,
    pub degrees: Vec<MargolisDegree>,
}

impl MargolisHomology {
    pub fn dim(&self, d: i32) -> usize {
        self.degrees.iter().find(|x| x.degree == d).map_or(0, |x| x.dim)
    }

    /// Nonzero homology dimensions.
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.degrees
            .iter()
            .filter(|x| x.dim > 0)
            .map(|x| (x.degree, x.dim))
            .collect()
    }
}

/// `ker Q_j / im Q_j` in each degree up to `max_degree` and up to
/// `D - |Q_j|` for a module truncated above `D`.
pub fn margolis_homology(m: &GradedModule, j: usize, max_degree: Option<i32>) -> Result<MargolisHomology> {
    if j > 1 {
        return Err(Error::Domain(format!("Q_{j} is not in A(1) or E(1)")));
    }
    let alg = m.algebra();
    let q = alg.element(&MilnorSeq::q(j)).expect("Q_0 and Q_1 lie in both algebras");
    let qd = alg.degree(q) as i32;
    let limit = [m.truncated_above().map(|d| d - qd), max_degree]
        .into_iter()
        .flatten()
        .min();
    let mut degrees = Vec::new();
    for d in m.degrees() {
        if limit.is_some_and(|l| d > l) {
            break;
        }
        let n = m.dim(d);
        let out = F2Matrix::from_rows(m.dim(d + qd), m.element_block(q, d))?;
        let kernel = left_kernel_basis(&out);
        let mut image = RowEchelon::new(n);
        for v in &m.element_block(q, d - qd) {
            image.insert(v)?;
        }
        let boundaries = image.rank();
        let mut vectors = Vec::new();
        for k in &kernel {
            if image.insert(k)?.is_none() {
                vectors.push(k.clone());
            }
        }
        degrees.push(MargolisDegree {
            degree: d,
            module_dim: n,
            kernel: kernel.len(),
            image: boundaries,
            dim: vectors.len(),
            representatives: vectors.iter().map(|v| m.describe(d, v)).collect(),
            vectors,
        });
    }
    let valid_through = limit.or(m.max_degree());
    Ok(MargolisHomology {
        module: m.name().to_string(),
        j,
        q_degree: qd as usize,
        valid_through,
        degrees,
    })
}
