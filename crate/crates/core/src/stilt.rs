//! Support tilting modules over the rationals realizing preclusters, and
//! the order on them by inclusion of generated subcategories.
//!
//! This is the field-level oracle for the cluster order: `M_S` is the sum of
//! exceptional modules `M_alpha` for the roots of `S` (negative simples
//! contribute the zero module), and `N <= M` when every summand of `N` is a
//! quotient of a sum of copies of `M`.

use std::collections::BTreeMap;

use crate::cluster::{ClusterEngine, ClusterVariable, Precluster};
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::quiver::{DimVec, Quiver};
use crate::rep::{ext_dim, hom_dim, is_generated_by, sample_exceptional, DEFAULT_PROBE_BUDGET};
use crate::RationalRep;

/// Labelled summands of `M_S`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleList {
    pub entries: Vec<(ClusterVariable, RationalRep)>,
}

impl ModuleList {
    pub fn reps(&self) -> impl Iterator<Item = &RationalRep> {
        self.entries.iter().map(|(_, r)| r)
    }

    pub fn nonzero(&self) -> Vec<&RationalRep> {
        self.reps().filter(|r| !r.is_zero()).collect()
    }
}

/// Fixed choice `alpha -> M_alpha` so that a root is realized by the same
/// module in every cluster.
pub struct Realizer<'q> {
    quiver: &'q Quiver,
    seed: u64,
    budget: u32,
    cache: BTreeMap<DimVec, RationalRep>,
}

impl<'q> Realizer<'q> {
    pub fn new(quiver: &'q Quiver, seed: u64) -> Self {
        Self::with_budget(quiver, seed, DEFAULT_PROBE_BUDGET)
    }

    pub fn with_budget(quiver: &'q Quiver, seed: u64, budget: u32) -> Self {
        Realizer {
            quiver,
            seed,
            budget,
            cache: BTreeMap::new(),
        }
    }

    pub fn module(&mut self, alpha: &DimVec) -> Result<RationalRep> {
        if let Some(m) = self.cache.get(alpha) {
            return Ok(m.clone());
        }
        let m = sample_exceptional(self.quiver, alpha, self.seed, self.budget)?;
        self.cache.insert(alpha.clone(), m.clone());
        Ok(m)
    }

    /// `M_S` for a precluster, checking that all Ext groups between the
    /// summands vanish as the precluster conditions predict.
    pub fn realize(&mut self, s: &Precluster) -> Result<ModuleList> {
        let mut entries = Vec::with_capacity(s.len());
        for v in s.vars() {
            let rep = match v {
                ClusterVariable::PosRoot { dim } => self.module(dim)?,
                ClusterVariable::NegSimple { .. } => RationalRep::zero(self.quiver),
            };
            entries.push((v.clone(), rep));
        }
        let list = ModuleList { entries };
        for a in list.nonzero() {
            for b in list.nonzero() {
                let e = ext_dim(self.quiver, a, b)?;
                if e != 0 {
                    return Err(Error::Internal(format!(
                        "realization of precluster {{{s}}} has Ext({},{}) of dimension {e}",
                        a.dims(),
                        b.dims()
                    )));
                }
            }
        }
        Ok(list)
    }
}

/// `M_S` for a precluster, sampling each exceptional module from `seed`.
pub fn realize_cluster(quiver: &Quiver, s: &Precluster, seed: u64) -> Result<ModuleList> {
    Realizer::new(quiver, seed).realize(s)
}

/// Whether `list` is a support tilting module for the cluster `s`: rigid,
/// supported on the vertices not negated in `s`, with as many
/// indecomposable summands as that support quiver has vertices.
pub fn is_support_tilting(quiver: &Quiver, s: &Precluster, list: &ModuleList) -> Result<bool> {
    let n = quiver.vertex_count();
    let mut in_support = vec![true; n + 1];
    for i in s.negative() {
        in_support[i] = false;
    }
    let support_size = (1..=n).filter(|&i| in_support[i]).count();
    let summands = list.nonzero();
    for m in &summands {
        if m.dims().support().iter().any(|&i| !in_support[i]) {
            return Ok(false);
        }
        if hom_dim(quiver, m, m)? != 1 {
            return Ok(false);
        }
    }
    for a in &summands {
        for b in &summands {
            if ext_dim(quiver, a, b)? != 0 {
                return Ok(false);
            }
        }
    }
    let mut distinct: Vec<&DimVec> = summands.iter().map(|m| m.dims()).collect();
    distinct.sort();
    distinct.dedup();
    Ok(distinct.len() == support_size)
}

/// `gen N ⊆ gen M`, tested summand by summand.
pub fn gen_leq(quiver: &Quiver, lower: &ModuleList, upper: &ModuleList) -> Result<bool> {
    let generators = upper.nonzero();
    for x in lower.nonzero() {
        if !is_generated_by(quiver, &generators, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Realized clusters ordered by `gen`.
pub struct StiltPoset {
    pub labels: Vec<Precluster>,
    pub modules: Vec<ModuleList>,
    pub order: FinitePoset,
}

/// The support tilting modules `M_S` for every cluster `S` of a Dynkin
/// quiver, in the same order as [`ClusterEngine::enumerate_clusters`], with
/// the relation computed by [`gen_leq`].
pub fn stilt_poset(engine: &ClusterEngine, seed: u64) -> Result<StiltPoset> {
    let quiver = engine.quiver();
    if !quiver.is_dynkin() {
        return Err(Error::NotDynkin);
    }
    let clusters = engine.enumerate_clusters().clusters;
    let mut realizer = Realizer::new(quiver, seed);
    let modules: Vec<ModuleList> = clusters
        .iter()
        .map(|c| realizer.realize(c))
        .collect::<Result<_>>()?;
    // generated[c][r]: the module of root r lies in gen M_c
    let roots = &engine.schur_roots().roots;
    let root_modules: Vec<RationalRep> = roots
        .iter()
        .map(|a| realizer.module(a))
        .collect::<Result<_>>()?;
    let mut generated = vec![vec![false; roots.len()]; clusters.len()];
    for (c, list) in modules.iter().enumerate() {
        let gens = list.nonzero();
        for (r, x) in root_modules.iter().enumerate() {
            generated[c][r] = is_generated_by(quiver, &gens, x)?;
        }
    }
    let root_index: BTreeMap<&DimVec, usize> =
        roots.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let leq = |i: usize, j: usize| clusters[i].positive().all(|a| generated[j][root_index[a]]);
    let order =
        FinitePoset::from_relation(clusters.len(), leq).map_err(|e| Error::NotAPartialOrder {
            reason: format!("gen order on support tilting modules: {e}"),
        })?;
    Ok(StiltPoset {
        labels: clusters
            .into_iter()
            .map(|c| c.precluster().clone())
            .collect(),
        modules,
        order,
    })
}
