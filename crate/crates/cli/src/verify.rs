//! The `verify` command: recomputes the main invariants of one quiver by
//! two independent routes and reports agreement check by check.

use rayon::prelude::*;
use serde::Serialize;

use schur_clusters::cluster::{ClusterEngine, EngineOptions};
use schur_clusters::error::Result;
use schur_clusters::poset::compare_posets;
use schur_clusters::quiver::{DimVec, Quiver};
use schur_clusters::rep::{ext_dim, sample_exceptional};
use schur_clusters::roots::positive_real_roots;
use schur_clusters::stilt::stilt_poset;
use schur_clusters::RationalRep;

/// Work limits above which the expensive oracles are skipped.
const BRUTE_FORCE_SUBSETS: u128 = 2_000_000;
const STILT_CLUSTERS: usize = 120;
const EXT_PAIRS: usize = 2_500;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub skipped: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            pass,
            skipped: false,
            detail: detail.into(),
        }
    }

    fn skip(name: &'static str, detail: impl Into<String>) -> Self {
        Check {
            name,
            pass: true,
            skipped: true,
            detail: detail.into(),
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Runs every check that applies to `quiver`. Errors are returned only for
/// bad input; a disagreement is a failed [`Check`].
pub fn run_checks(quiver: &Quiver, opts: &EngineOptions, box_size: i64) -> Result<Vec<Check>> {
    let n = quiver.vertex_count();
    let dynkin = quiver.is_dynkin();
    // fails early on missing bounds and the like
    let engine = ClusterEngine::new(quiver, opts)?;
    let einv = engine.einv();
    let mut checks = Vec::new();

    let corner = DimVec::new(vec![box_size.max(0); n]);
    let vectors: Vec<DimVec> = corner.sub_vectors().collect();
    let mismatches: Vec<String> = vectors
        .par_iter()
        .flat_map_iter(|x| vectors.iter().map(move |y| (x, y)))
        .filter_map(|(x, y)| {
            let e = einv.e(x, y).ok()?;
            let (by_y, by_x) = einv.e_alt(x, y).ok()?;
            (e != by_y || e != by_x).then(|| format!("E{x}{y}={e} vs {by_y}/{by_x}"))
        })
        .collect();
    checks.push(Check::new(
        "e-formula-equivalence",
        mismatches.is_empty(),
        match mismatches.first() {
            None => format!("{} pairs in box {box_size}", vectors.len() * vectors.len()),
            Some(m) => format!("{} mismatches, first {m}", mismatches.len()),
        },
    ));

    let zero = DimVec::zeros(n);
    let base_ok = vectors
        .iter()
        .all(|x| einv.e(x, &zero).ok() == Some(0) && einv.e(&zero, x).ok() == Some(0));
    checks.push(Check::new("e-vanishes-at-zero", base_ok, ""));

    let roots = &engine.schur_roots().roots;
    let mut modules: Vec<RationalRep> = Vec::with_capacity(roots.len());
    let mut missing = Vec::new();
    for a in roots {
        match sample_exceptional(quiver, a, opts.seed, opts.probe_budget) {
            Ok(m) => modules.push(m),
            Err(_) => missing.push(a.to_string()),
        }
    }
    let rigid = roots.iter().all(|a| einv.e(a, a).ok() == Some(0));
    let mut detail = format!("{} roots", roots.len());
    if dynkin {
        let all = positive_real_roots(quiver, None)?;
        let same = all.roots == *roots;
        detail.push_str(if same {
            ", equal to the positive roots"
        } else {
            ", differ from the positive roots"
        });
        checks.push(Check::new(
            "schur-roots",
            same && rigid && missing.is_empty(),
            detail,
        ));
    } else {
        let unresolved = engine.schur_roots().unresolved.len();
        detail.push_str(&format!(" confirmed, {unresolved} unresolved"));
        checks.push(Check::new(
            "schur-roots",
            rigid && missing.is_empty(),
            detail,
        ));
    }

    if missing.is_empty() {
        let k = modules.len();
        if k * k > EXT_PAIRS {
            checks.push(Check::skip(
                "e-equals-ext",
                format!("{} pairs > {EXT_PAIRS}", k * k),
            ));
        } else {
            let bad: Vec<String> = (0..k * k)
                .into_par_iter()
                .filter_map(|ij| {
                    let (i, j) = (ij / k, ij % k);
                    let e = einv.e(&roots[i], &roots[j]).ok()?;
                    let ext = ext_dim(quiver, &modules[i], &modules[j]).ok()?;
                    (e as usize != ext).then(|| format!("E{}{}={e}, ext={ext}", roots[i], roots[j]))
                })
                .collect();
            checks.push(Check::new(
                "e-equals-ext",
                bad.is_empty(),
                match bad.first() {
                    None => format!("{} pairs", k * k),
                    Some(b) => format!("{} mismatches, first {b}", bad.len()),
                },
            ));
        }
    } else {
        checks.push(Check::new(
            "e-equals-ext",
            false,
            format!("no exceptional sample for {}", missing.join(" ")),
        ));
    }

    let list = engine.enumerate_clusters();
    let sized = list.clusters.iter().all(|c| c.len() == n);
    checks.push(Check::new(
        "cluster-size",
        sized,
        format!(
            "{} clusters{}",
            list.clusters.len(),
            if list.complete { "" } else { " (bounded)" }
        ),
    ));

    let m = engine.variables().len() as u128;
    let subsets = binomial(m, n as u128);
    if subsets > BRUTE_FORCE_SUBSETS {
        checks.push(Check::skip(
            "clique-vs-brute-force",
            format!("{subsets} subsets"),
        ));
    } else {
        let brute = engine.enumerate_clusters_brute_force();
        checks.push(Check::new(
            "clique-vs-brute-force",
            brute == list.clusters,
            format!("{} vs {}", list.clusters.len(), brute.len()),
        ));
    }

    if dynkin {
        let pre = engine.enumerate_preclusters(false);
        let stuck: Vec<String> = pre
            .par_iter()
            .filter(|p| {
                engine
                    .complete_to_cluster(p)
                    .map(|c| !p.vars().iter().all(|v| c.contains(v)))
                    .unwrap_or(true)
            })
            .map(|p| format!("{{{p}}}"))
            .collect();
        checks.push(Check::new(
            "precluster-completion",
            stuck.is_empty(),
            match stuck.first() {
                None => format!("{} preclusters", pre.len()),
                Some(s) => format!("{} fail, first {s}", stuck.len()),
            },
        ));
    }

    match engine.cluster_poset() {
        Err(e) => checks.push(Check::new("cluster-order", false, e.to_string())),
        Ok(poset) => {
            if dynkin {
                let mut projectives = quiver.projective_dims();
                projectives.sort();
                let top_ok = poset.top.is_some_and(|t| {
                    let mut dims: Vec<DimVec> = poset.clusters[t].positive().cloned().collect();
                    dims.sort();
                    dims == projectives
                });
                let bottom_ok = poset
                    .bottom
                    .is_some_and(|b| poset.clusters[b].negative().count() == n);
                checks.push(Check::new(
                    "cluster-order",
                    top_ok && bottom_ok,
                    format!(
                        "{} relations, {} covers, top {}, bottom {}",
                        poset.order.relation_size(),
                        poset.hasse.len(),
                        if top_ok { "projective" } else { "wrong" },
                        if bottom_ok {
                            "negative simples"
                        } else {
                            "wrong"
                        },
                    ),
                ));
                if poset.clusters.len() > STILT_CLUSTERS {
                    checks.push(Check::skip(
                        "stilt-isomorphism",
                        format!("{} clusters > {STILT_CLUSTERS}", poset.clusters.len()),
                    ));
                } else {
                    let check = stilt_poset(&engine, opts.seed).and_then(|sp| {
                        let ident: Vec<usize> = (0..poset.clusters.len()).collect();
                        compare_posets(&poset.order, &sp.order, &ident)
                    });
                    checks.push(match check {
                        Ok(c) => {
                            Check::new("stilt-isomorphism", c.is_isomorphic(), format!("{c:?}"))
                        }
                        Err(e) => Check::new("stilt-isomorphism", false, e.to_string()),
                    });
                }
            } else {
                checks.push(Check::new(
                    "cluster-order",
                    true,
                    format!(
                        "{} relations on {} bounded clusters",
                        poset.order.relation_size(),
                        poset.clusters.len()
                    ),
                ));
            }
        }
    }
    Ok(checks)
}
