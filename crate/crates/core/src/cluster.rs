//! Cluster variables, preclusters, clusters and the order on clusters.
//!
//! A precluster is a set of cluster variables (real Schur roots and negative
//! simple roots) such that `E` vanishes between any two of its roots, in
//! both orders, and no negative simple `-e_i` meets the support of one of
//! its roots. Clusters are the maximal preclusters; they are exactly the
//! preclusters with one element per vertex, which is what the enumeration
//! searches for.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::einv::EInvariant;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::quiver::{DimVec, Quiver};
use crate::rep::DEFAULT_PROBE_BUDGET;
use crate::roots::RootSet;
use crate::schur::real_schur_roots;

/// An element of `Cv(Q)`: a real Schur root or a negative simple root.
///
/// The derived order (negative simples first, by vertex, then roots in
/// canonical order) is the canonical order of every sorted output.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum ClusterVariable {
    #[serde(rename = "neg_simple")]
    NegSimple { vertex: usize },
    #[serde(rename = "root")]
    PosRoot { dim: DimVec },
}

impl ClusterVariable {
    pub fn root(dim: impl Into<DimVec>) -> Self {
        ClusterVariable::PosRoot { dim: dim.into() }
    }

    pub fn neg(vertex: usize) -> Self {
        ClusterVariable::NegSimple { vertex }
    }

    pub fn as_root(&self) -> Option<&DimVec> {
        match self {
            ClusterVariable::PosRoot { dim } => Some(dim),
            ClusterVariable::NegSimple { .. } => None,
        }
    }

    pub fn as_neg(&self) -> Option<usize> {
        match self {
            ClusterVariable::NegSimple { vertex } => Some(*vertex),
            ClusterVariable::PosRoot { .. } => None,
        }
    }
}

impl fmt::Display for ClusterVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClusterVariable::PosRoot { dim } => write!(f, "{dim}"),
            ClusterVariable::NegSimple { vertex } => write!(f, "-e{vertex}"),
        }
    }
}

impl fmt::Debug for ClusterVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Why a set of variables fails to be a precluster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `E(alpha, beta) != 0`.
    Ext {
        alpha: DimVec,
        beta: DimVec,
        value: u64,
    },
    /// `-e_vertex` together with a root supported at `vertex`.
    Support { alpha: DimVec, vertex: usize },
    /// A variable that does not belong to this quiver.
    Invalid { variable: String, reason: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Ext { alpha, beta, value } => write!(f, "E({alpha},{beta})={value}"),
            Violation::Support { alpha, vertex } => {
                write!(f, "{vertex} in Supp{alpha} while -e{vertex} is present")
            }
            Violation::Invalid { variable, reason } => write!(f, "{variable}: {reason}"),
        }
    }
}

/// Checks the precluster conditions directly from the E-invariant.
pub fn check_precluster(einv: &EInvariant, vars: &[ClusterVariable]) -> Result<(), Violation> {
    let n = einv.quiver().vertex_count();
    let mut roots = Vec::new();
    let mut negs = Vec::new();
    for v in vars {
        match v {
            ClusterVariable::PosRoot { dim } => {
                if dim.len() != n || !dim.is_positive() {
                    return Err(Violation::Invalid {
                        variable: v.to_string(),
                        reason: "not a positive vector for this quiver".into(),
                    });
                }
                roots.push(dim);
            }
            ClusterVariable::NegSimple { vertex } => {
                if *vertex == 0 || *vertex > n {
                    return Err(Violation::Invalid {
                        variable: v.to_string(),
                        reason: format!("vertex out of range 1..={n}"),
                    });
                }
                negs.push(*vertex);
            }
        }
    }
    for alpha in &roots {
        for beta in &roots {
            let value = einv.e(alpha, beta).map_err(|e| Violation::Invalid {
                variable: alpha.to_string(),
                reason: e.to_string(),
            })?;
            if value != 0 {
                return Err(Violation::Ext {
                    alpha: (*alpha).clone(),
                    beta: (*beta).clone(),
                    value,
                });
            }
        }
    }
    for alpha in &roots {
        for &vertex in &negs {
            if alpha.at(vertex) != 0 {
                return Err(Violation::Support {
                    alpha: (*alpha).clone(),
                    vertex,
                });
            }
        }
    }
    Ok(())
}

/// A canonically sorted precluster.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(transparent)]
pub struct Precluster {
    vars: Vec<ClusterVariable>,
}

impl Precluster {
    /// Validates `vars` (duplicates are merged).
    pub fn new(einv: &EInvariant, mut vars: Vec<ClusterVariable>) -> Result<Self> {
        vars.sort();
        vars.dedup();
        check_precluster(einv, &vars).map_err(|v| Error::NotPrecluster {
            violation: v.to_string(),
        })?;
        Ok(Precluster { vars })
    }

    pub(crate) fn from_sorted_unchecked(vars: Vec<ClusterVariable>) -> Self {
        Precluster { vars }
    }

    pub fn empty() -> Self {
        Precluster { vars: Vec::new() }
    }

    pub fn vars(&self) -> &[ClusterVariable] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    /// The root part `S+`.
    pub fn positive(&self) -> impl Iterator<Item = &DimVec> {
        self.vars.iter().filter_map(ClusterVariable::as_root)
    }

    /// The vertices of the negative part `S-`.
    pub fn negative(&self) -> impl Iterator<Item = usize> + '_ {
        self.vars.iter().filter_map(ClusterVariable::as_neg)
    }

    pub fn is_positive(&self) -> bool {
        self.negative().next().is_none()
    }

    pub fn contains(&self, v: &ClusterVariable) -> bool {
        self.vars.binary_search(v).is_ok()
    }
}

impl fmt::Display for Precluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vars.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// A precluster with one variable per vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(transparent)]
pub struct Cluster(Precluster);

impl Cluster {
    pub fn new(einv: &EInvariant, vars: Vec<ClusterVariable>) -> Result<Self> {
        let p = Precluster::new(einv, vars)?;
        Self::from_precluster(einv.quiver(), p)
    }

    pub fn from_precluster(quiver: &Quiver, p: Precluster) -> Result<Self> {
        if p.len() != quiver.vertex_count() {
            return Err(Error::NotPrecluster {
                violation: format!(
                    "{} variables, a cluster needs {}",
                    p.len(),
                    quiver.vertex_count()
                ),
            });
        }
        Ok(Cluster(p))
    }

    pub fn precluster(&self) -> &Precluster {
        &self.0
    }

    pub fn vars(&self) -> &[ClusterVariable] {
        self.0.vars()
    }
}

impl std::ops::Deref for Cluster {
    type Target = Precluster;

    fn deref(&self) -> &Precluster {
        &self.0
    }
}

impl fmt::Display for Cluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    /// Height bound on roots; required for non-Dynkin quivers.
    pub bound: Option<u64>,
    pub seed: u64,
    pub probe_budget: u32,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            bound: None,
            seed: 0,
            probe_budget: DEFAULT_PROBE_BUDGET,
        }
    }
}

impl EngineOptions {
    pub fn bounded(bound: u64) -> Self {
        EngineOptions {
            bound: Some(bound),
            ..Self::default()
        }
    }
}

/// The clusters of a quiver and the order `S' <= S`.
#[derive(Debug, Clone)]
pub struct ClusterPoset {
    pub clusters: Vec<Cluster>,
    pub order: FinitePoset,
    pub hasse: Vec<(usize, usize)>,
    pub top: Option<usize>,
    pub bottom: Option<usize>,
    pub complete: bool,
}

#[derive(Debug, Clone)]
pub struct ClusterList {
    pub clusters: Vec<Cluster>,
    pub complete: bool,
}

/// Cluster variables of one quiver together with their compatibility graph.
pub struct ClusterEngine {
    einv: EInvariant,
    schur: RootSet,
    variables: Vec<ClusterVariable>,
    index: HashMap<ClusterVariable, usize>,
    compatible: Vec<FixedBitSet>,
}

impl ClusterEngine {
    pub fn new(quiver: &Quiver, options: &EngineOptions) -> Result<Self> {
        let einv = EInvariant::new(quiver);
        let schur = real_schur_roots(&einv, options.bound, options.seed, options.probe_budget)?;
        let n = quiver.vertex_count();
        let mut variables: Vec<ClusterVariable> = (1..=n).map(ClusterVariable::neg).collect();
        variables.extend(schur.roots.iter().cloned().map(ClusterVariable::root));
        variables.sort();
        let index = variables
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let m = variables.len();
        let rows: Vec<FixedBitSet> = (0..m)
            .into_par_iter()
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(m);
                for j in 0..m {
                    if i != j
                        && check_precluster(&einv, &[variables[i].clone(), variables[j].clone()])
                            .is_ok()
                    {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Ok(ClusterEngine {
            einv,
            schur,
            variables,
            index,
            compatible: rows,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        self.einv.quiver()
    }

    pub fn einv(&self) -> &EInvariant {
        &self.einv
    }

    /// The real Schur roots the variables were built from.
    pub fn schur_roots(&self) -> &RootSet {
        &self.schur
    }

    /// `Cv(Q)` in canonical order (within the height bound, if any).
    pub fn variables(&self) -> &[ClusterVariable] {
        &self.variables
    }

    /// Whether the variable set is all of `Cv(Q)`.
    pub fn is_complete(&self) -> bool {
        self.schur.complete
    }

    pub fn check_precluster(&self, vars: &[ClusterVariable]) -> Result<(), Violation> {
        check_precluster(&self.einv, vars)
    }

    pub fn is_precluster(&self, vars: &[ClusterVariable]) -> bool {
        self.check_precluster(vars).is_ok()
    }

    pub fn is_positive_precluster(&self, vars: &[ClusterVariable]) -> bool {
        vars.iter().all(|v| v.as_root().is_some()) && self.is_precluster(vars)
    }

    fn to_precluster(&self, mut idx: Vec<usize>) -> Precluster {
        idx.sort_unstable();
        Precluster::from_sorted_unchecked(
            idx.into_iter().map(|i| self.variables[i].clone()).collect(),
        )
    }

    /// All clusters, via clique search in the compatibility graph.
    pub fn enumerate_clusters(&self) -> ClusterList {
        let n = self.quiver().vertex_count();
        let m = self.variables.len();
        let mut found: Vec<Vec<usize>> = (0..m)
            .into_par_iter()
            .flat_map_iter(|v| {
                // cliques whose smallest vertex is v
                let mut candidates = self.compatible[v].clone();
                candidates.set_range(..v + 1, false);
                let mut out = Vec::new();
                let mut current = vec![v];
                self.extend_cliques(
                    &mut current,
                    candidates,
                    FixedBitSet::with_capacity(m),
                    n,
                    &mut out,
                );
                out
            })
            .collect();
        if n == 0 {
            // the empty quiver has exactly one cluster, the empty set
            found.push(Vec::new());
        }
        let mut clusters: Vec<Cluster> = found
            .into_iter()
            .map(|idx| Cluster(self.to_precluster(idx)))
            .collect();
        clusters.sort();
        ClusterList {
            clusters,
            complete: self.is_complete(),
        }
    }

    // Bron-Kerbosch with pivoting, restricted to cliques of size `target`.
    // `excluded` is tracked for maximality; any `target`-clique is maximal
    // since preclusters never exceed one element per vertex.
    fn extend_cliques(
        &self,
        current: &mut Vec<usize>,
        candidates: FixedBitSet,
        excluded: FixedBitSet,
        target: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == target {
            out.push(current.clone());
            return;
        }
        if current.len() + candidates.count_ones(..) < target {
            return;
        }
        let pivot = candidates
            .ones()
            .chain(excluded.ones())
            .max_by_key(|&u| self.compatible[u].intersection(&candidates).count())
            .expect("candidates are nonempty here");
        let mut candidates = candidates;
        let mut excluded = excluded;
        let branch: Vec<usize> = candidates
            .ones()
            .filter(|&u| !self.compatible[pivot].contains(u))
            .collect();
        for u in branch {
            let mut next_c = candidates.clone();
            next_c.intersect_with(&self.compatible[u]);
            let mut next_x = excluded.clone();
            next_x.intersect_with(&self.compatible[u]);
            current.push(u);
            self.extend_cliques(current, next_c, next_x, target, out);
            current.pop();
            candidates.set(u, false);
            excluded.insert(u);
        }
    }

    /// All clusters by checking every `n`-subset of the variables directly.
    /// Exponential; meant as a cross-check for small quivers.
    pub fn enumerate_clusters_brute_force(&self) -> Vec<Cluster> {
        let n = self.quiver().vertex_count();
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(n);
        fn walk(
            engine: &ClusterEngine,
            start: usize,
            n: usize,
            chosen: &mut Vec<ClusterVariable>,
            out: &mut Vec<Cluster>,
        ) {
            if chosen.len() == n {
                if engine.is_precluster(chosen) {
                    out.push(Cluster(Precluster::from_sorted_unchecked(chosen.clone())));
                }
                return;
            }
            let need = n - chosen.len();
            for i in start..engine.variables.len() {
                if engine.variables.len() - i < need {
                    break;
                }
                chosen.push(engine.variables[i].clone());
                walk(engine, i + 1, n, chosen, out);
                chosen.pop();
            }
        }
        walk(self, 0, n, &mut chosen, &mut out);
        out.sort();
        out
    }

    /// All preclusters (or only the positive ones), including the empty set,
    /// sorted by size and then canonically.
    pub fn enumerate_preclusters(&self, positive_only: bool) -> Vec<Precluster> {
        let m = self.variables.len();
        let allowed: Vec<usize> = (0..m)
            .filter(|&i| !positive_only || self.variables[i].as_root().is_some())
            .collect();
        let mut out = vec![Vec::new()];
        let mut current = Vec::new();
        fn grow(
            engine: &ClusterEngine,
            allowed: &[usize],
            from: usize,
            current: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            for k in from..allowed.len() {
                let u = allowed[k];
                if current.iter().all(|&w| engine.compatible[w].contains(u)) {
                    current.push(u);
                    out.push(current.clone());
                    grow(engine, allowed, k + 1, current, out);
                    current.pop();
                }
            }
        }
        grow(self, &allowed, 0, &mut current, &mut out);
        let mut pre: Vec<Precluster> = out.into_iter().map(|idx| self.to_precluster(idx)).collect();
        pre.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        pre
    }

    /// Extends a precluster to a cluster by adding the lexicographically
    /// least compatible variables.
    pub fn complete_to_cluster(&self, s: &Precluster) -> Result<Cluster> {
        let n = self.quiver().vertex_count();
        let mut base = Vec::with_capacity(s.len());
        for v in s.vars() {
            match self.index.get(v) {
                Some(&i) => base.push(i),
                None => {
                    return Err(Error::NotPrecluster {
                        violation: format!("{v} is not a cluster variable in range"),
                    })
                }
            }
        }
        if let Err(v) = self.check_precluster(s.vars()) {
            return Err(Error::NotPrecluster {
                violation: v.to_string(),
            });
        }
        let mut candidates = FixedBitSet::with_capacity(self.variables.len());
        candidates.insert_range(..);
        for &b in &base {
            candidates.set(b, false);
            candidates.intersect_with(&self.compatible[b]);
        }
        let mut current = base;
        if self.first_extension(&mut current, &candidates, 0, n) {
            Ok(Cluster(self.to_precluster(current)))
        } else {
            Err(Error::CompletionNotFound)
        }
    }

    fn first_extension(
        &self,
        current: &mut Vec<usize>,
        candidates: &FixedBitSet,
        from: usize,
        target: usize,
    ) -> bool {
        if current.len() == target {
            return true;
        }
        let options: Vec<usize> = candidates.ones().filter(|&u| u >= from).collect();
        for u in options {
            let mut next = candidates.clone();
            next.intersect_with(&self.compatible[u]);
            current.push(u);
            if self.first_extension(current, &next, u + 1, target) {
                return true;
            }
            current.pop();
        }
        false
    }

    /// Whether `lower <= upper`: `E(alpha, alpha') = 0` for every root
    /// `alpha` of `upper` and `alpha'` of `lower`, and `upper- ⊆ lower-`.
    pub fn cluster_leq(&self, upper: &Precluster, lower: &Precluster) -> bool {
        let negs_contained = upper.negative().all(|i| lower.negative().any(|j| j == i));
        negs_contained
            && upper.positive().all(|a| {
                lower
                    .positive()
                    .all(|b| self.einv.e(a, b).map(|v| v == 0).unwrap_or(false))
            })
    }

    /// The clusters ordered by [`ClusterEngine::cluster_leq`], with Hasse
    /// diagram and extremal elements.
    pub fn cluster_poset(&self) -> Result<ClusterPoset> {
        let ClusterList { clusters, complete } = self.enumerate_clusters();
        let k = clusters.len();
        let rows: Vec<Vec<bool>> = (0..k)
            .into_par_iter()
            .map(|i| {
                (0..k)
                    .map(|j| self.cluster_leq(&clusters[j], &clusters[i]))
                    .collect()
            })
            .collect();
        let order = FinitePoset::from_relation(k, |i, j| rows[i][j]).map_err(|e| {
            Error::NotAPartialOrder {
                reason: format!("{e}; {}", diagnose(&clusters, &e)),
            }
        })?;
        let hasse = order.hasse();
        Ok(ClusterPoset {
            top: order.top(),
            bottom: order.bottom(),
            hasse,
            order,
            clusters,
            complete,
        })
    }
}

fn diagnose(clusters: &[Cluster], e: &Error) -> String {
    let name = |i: &usize| {
        clusters
            .get(*i)
            .map(|c| format!("{{{c}}}"))
            .unwrap_or_default()
    };
    match e {
        Error::NotReflexive { element } => format!("at {}", name(element)),
        Error::NotAntisymmetric { a, b } => format!("between {} and {}", name(a), name(b)),
        Error::NotTransitive { a, b, c } => {
            format!("chain {} <= {} <= {}", name(a), name(b), name(c))
        }
        _ => String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::standard::*;

    fn r(x: &[i64]) -> ClusterVariable {
        ClusterVariable::root(x.to_vec())
    }

    fn neg(i: usize) -> ClusterVariable {
        ClusterVariable::neg(i)
    }

    fn engine(q: &Quiver) -> ClusterEngine {
        ClusterEngine::new(q, &EngineOptions::default()).unwrap()
    }

    #[test]
    fn precluster_examples_on_a2() {
        let e = engine(&linear_a(2));
        assert!(e.is_precluster(&[r(&[1, 0]), r(&[1, 1])]));
        assert_eq!(
            e.check_precluster(&[r(&[1, 0]), r(&[0, 1])]),
            Err(Violation::Ext {
                alpha: DimVec::from([1, 0]),
                beta: DimVec::from([0, 1]),
                value: 1
            })
        );
        assert_eq!(
            e.check_precluster(&[r(&[1, 1]), neg(1)]),
            Err(Violation::Support {
                alpha: DimVec::from([1, 1]),
                vertex: 1
            })
        );
        assert!(e.is_precluster(&[]));
        assert!(matches!(
            e.check_precluster(&[neg(3)]),
            Err(Violation::Invalid { .. })
        ));
    }

    #[test]
    fn positive_precluster_examples() {
        let e = engine(&linear_a(2));
        assert!(e.is_positive_precluster(&[r(&[1, 1])]));
        assert!(!e.is_positive_precluster(&[neg(1)]));
        assert!(e.is_positive_precluster(&[]));
    }

    #[test]
    fn a2_clusters() {
        let e = engine(&linear_a(2));
        let list = e.enumerate_clusters();
        assert!(list.complete);
        let mut expected: Vec<Cluster> = [
            vec![r(&[1, 0]), r(&[1, 1])],
            vec![r(&[1, 1]), r(&[0, 1])],
            vec![r(&[0, 1]), neg(1)],
            vec![neg(1), neg(2)],
            vec![neg(2), r(&[1, 0])],
        ]
        .into_iter()
        .map(|vs| Cluster::new(e.einv(), vs).unwrap())
        .collect();
        expected.sort();
        assert_eq!(list.clusters, expected);
        assert_eq!(e.enumerate_clusters_brute_force(), expected);
    }

    #[test]
    fn a2_preclusters() {
        let e = engine(&linear_a(2));
        let all = e.enumerate_preclusters(false);
        // empty set, five singletons, five clusters
        assert_eq!(all.len(), 11);
        assert!(all[0].is_empty());
        let pos = e.enumerate_preclusters(true);
        assert_eq!(pos.len(), 6);
        assert!(pos.iter().all(|p| p.is_positive()));
    }

    #[test]
    fn completion() {
        let e = engine(&linear_a(2));
        let s = Precluster::new(e.einv(), vec![r(&[1, 1])]).unwrap();
        let c = e.complete_to_cluster(&s).unwrap();
        assert_eq!(c.vars(), &[r(&[0, 1]), r(&[1, 1])]);
        let s = Precluster::new(e.einv(), vec![neg(1), neg(2)]).unwrap();
        assert_eq!(e.complete_to_cluster(&s).unwrap().vars(), s.vars());
        let c = e.complete_to_cluster(&Precluster::empty()).unwrap();
        assert_eq!(&c, e.enumerate_clusters().clusters.iter().min().unwrap());
        let c = e.complete_to_cluster(&Precluster::empty()).unwrap();
        assert_eq!(c.vars(), &[neg(1), neg(2)]);
    }

    #[test]
    fn order_examples_on_a2() {
        let e = engine(&linear_a(2));
        let c = |vs: Vec<ClusterVariable>| Cluster::new(e.einv(), vs).unwrap();
        let proj = c(vec![r(&[0, 1]), r(&[1, 1])]);
        let other = c(vec![r(&[1, 0]), r(&[1, 1])]);
        let bottom = c(vec![neg(1), neg(2)]);
        assert!(e.cluster_leq(&proj, &other));
        assert!(!e.cluster_leq(&other, &proj));
        for s in e.enumerate_clusters().clusters {
            assert!(e.cluster_leq(&s, &s));
            assert!(e.cluster_leq(&s, &bottom));
        }
    }

    #[test]
    fn a2_pentagon() {
        let e = engine(&linear_a(2));
        let p = e.cluster_poset().unwrap();
        assert_eq!(p.clusters.len(), 5);
        assert_eq!(p.order.relation_size(), 13);
        assert_eq!(p.hasse.len(), 5);
        assert_eq!(p.clusters[p.bottom.unwrap()].vars(), &[neg(1), neg(2)]);
        assert_eq!(p.clusters[p.top.unwrap()].vars(), &[r(&[0, 1]), r(&[1, 1])]);
    }

    #[test]
    fn a1_chain() {
        let e = engine(&linear_a(1));
        let p = e.cluster_poset().unwrap();
        assert_eq!(p.clusters.len(), 2);
        assert_eq!(p.clusters[p.bottom.unwrap()].vars(), &[neg(1)]);
        assert_eq!(p.clusters[p.top.unwrap()].vars(), &[r(&[1])]);
    }

    #[test]
    fn a3_and_d4_counts() {
        assert_eq!(engine(&linear_a(3)).enumerate_clusters().clusters.len(), 14);
        let e = engine(&d(4));
        let list = e.enumerate_clusters();
        assert_eq!(list.clusters.len(), 50);
        assert_eq!(list.clusters, e.enumerate_clusters_brute_force());
    }

    #[test]
    fn kronecker_requires_bound() {
        assert!(matches!(
            ClusterEngine::new(&kronecker(), &EngineOptions::default()),
            Err(Error::BoundRequired)
        ));
        let e = ClusterEngine::new(&kronecker(), &EngineOptions::bounded(7)).unwrap();
        let list = e.enumerate_clusters();
        assert!(!list.complete);
        assert!(list.clusters.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn rejects_non_preclusters() {
        let e = engine(&linear_a(2));
        assert!(matches!(
            Precluster::new(e.einv(), vec![r(&[1, 0]), r(&[0, 1])]),
            Err(Error::NotPrecluster { .. })
        ));
        assert!(matches!(
            Cluster::new(e.einv(), vec![r(&[1, 1])]),
            Err(Error::NotPrecluster { .. })
        ));
    }

    #[test]
    fn serde_shape() {
        let json = serde_json::to_string(&vec![r(&[1, 1]), neg(2)]).unwrap();
        assert_eq!(
            json,
            r#"[{"type":"root","dim":[1,1]},{"type":"neg_simple","vertex":2}]"#
        );
        let back: Vec<ClusterVariable> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![r(&[1, 1]), neg(2)]);
    }
}
