//! Order-preserving maps between finite posets.
//!
//! Torsion classes over a Dynkin path algebra with coefficients in a ring
//! whose prime spectrum is a finite poset `P` correspond to order-preserving
//! maps from `P` to the cluster poset; [`torsion_class_count`] counts them.
//! For a genuine, infinite spectrum the count over a finite `P` is only an
//! approximation.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::cluster::{ClusterEngine, EngineOptions};
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::quiver::Quiver;

/// `assignment[x]` is the image of domain element `x`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonotoneMap {
    pub assignment: Vec<usize>,
}

pub fn is_monotone(assignment: &[usize], domain: &FinitePoset, target: &FinitePoset) -> bool {
    assignment.len() == domain.size()
        && assignment.iter().all(|&v| v < target.size())
        && (0..domain.size()).all(|x| {
            (0..domain.size())
                .all(|y| !domain.leq(x, y) || target.leq(assignment[x], assignment[y]))
        })
}

/// `lower <= upper` pointwise in `target`.
pub fn map_poset_leq(lower: &MonotoneMap, upper: &MonotoneMap, target: &FinitePoset) -> bool {
    lower
        .assignment
        .iter()
        .zip(&upper.assignment)
        .all(|(&g, &f)| target.leq(g, f))
}

/// Number of order-preserving maps `domain -> target`.
///
/// Dynamic programming along a linear extension of the domain. The state
/// after placing a prefix is the image of the prefix's frontier: the
/// elements that still have an upper cover outside the prefix, since those
/// are the only values later constraints look at.
pub fn count_monotone_maps(domain: &FinitePoset, target: &FinitePoset) -> BigUint {
    let n = domain.size();
    if n == 0 {
        return BigUint::one();
    }
    let order = domain.linear_extension();
    let mut position = vec![0; n];
    for (k, &x) in order.iter().enumerate() {
        position[x] = k;
    }
    let lower = domain.lower_covers();
    // last_use[x]: the last step at which x's value is consulted
    let mut last_use = vec![0usize; n];
    for (y, covers) in lower.iter().enumerate() {
        for &x in covers {
            last_use[x] = last_use[x].max(position[y]);
        }
    }
    // frontier[k]: elements placed before step k whose value is still needed
    // at step k or later, in increasing element order
    let frontier: Vec<Vec<usize>> = (0..=n)
        .map(|k| {
            let mut f: Vec<usize> = order[..k]
                .iter()
                .copied()
                .filter(|&x| last_use[x] >= k)
                .collect();
            f.sort_unstable();
            f
        })
        .collect();

    struct Dp<'a> {
        order: &'a [usize],
        lower: &'a [Vec<usize>],
        frontier: &'a [Vec<usize>],
        target: &'a FinitePoset,
        memo: HashMap<(usize, Vec<usize>), BigUint>,
    }

    impl Dp<'_> {
        // `values` aligns with frontier[k]
        fn count(&mut self, k: usize, values: Vec<usize>) -> BigUint {
            if k == self.order.len() {
                return BigUint::one();
            }
            let key = (k, values);
            if let Some(c) = self.memo.get(&key) {
                return c.clone();
            }
            let values = &key.1;
            let x = self.order[k];
            let value_of = |e: usize| {
                let pos = self.frontier[k]
                    .binary_search(&e)
                    .expect("cover lies on the frontier");
                values[pos]
            };
            let below: Vec<usize> = self.lower[x].iter().map(|&c| value_of(c)).collect();
            let mut total = BigUint::zero();
            for v in 0..self.target.size() {
                if !below.iter().all(|&b| self.target.leq(b, v)) {
                    continue;
                }
                let next: Vec<usize> = self.frontier[k + 1]
                    .iter()
                    .map(|&e| if e == x { v } else { value_of(e) })
                    .collect();
                total += self.count(k + 1, next);
            }
            self.memo.insert(key, total.clone());
            total
        }
    }

    let mut dp = Dp {
        order: &order,
        lower: &lower,
        frontier: &frontier,
        target,
        memo: HashMap::new(),
    };
    dp.count(0, Vec::new())
}

/// Plain backtracking count, for cross-checking [`count_monotone_maps`].
pub fn count_monotone_maps_backtracking(domain: &FinitePoset, target: &FinitePoset) -> BigUint {
    let order = domain.linear_extension();
    let lower = domain.lower_covers();
    let mut values = vec![usize::MAX; domain.size()];
    fn walk(
        k: usize,
        order: &[usize],
        lower: &[Vec<usize>],
        target: &FinitePoset,
        values: &mut [usize],
    ) -> u128 {
        if k == order.len() {
            return 1;
        }
        let x = order[k];
        let mut total = 0;
        for v in 0..target.size() {
            if lower[x].iter().all(|&c| target.leq(values[c], v)) {
                values[x] = v;
                total += walk(k + 1, order, lower, target, values);
            }
        }
        total
    }
    BigUint::from(walk(0, &order, &lower, target, &mut values))
}

/// All order-preserving maps in lexicographic order of their assignments.
pub fn enumerate_monotone_maps(
    domain: &FinitePoset,
    target: &FinitePoset,
    limit: usize,
) -> Result<Vec<MonotoneMap>> {
    let n = domain.size();
    let mut out = Vec::new();
    let mut values = Vec::with_capacity(n);
    fn walk(
        domain: &FinitePoset,
        target: &FinitePoset,
        values: &mut Vec<usize>,
        out: &mut Vec<MonotoneMap>,
        limit: usize,
    ) -> Result<()> {
        let x = values.len();
        if x == domain.size() {
            if out.len() == limit {
                return Err(Error::LimitExceeded { limit });
            }
            out.push(MonotoneMap {
                assignment: values.clone(),
            });
            return Ok(());
        }
        for v in 0..target.size() {
            let ok = (0..x).all(|y| {
                (!domain.leq(y, x) || target.leq(values[y], v))
                    && (!domain.leq(x, y) || target.leq(v, values[y]))
            });
            if ok {
                values.push(v);
                walk(domain, target, values, out, limit)?;
                values.pop();
            }
        }
        Ok(())
    }
    walk(domain, target, &mut values, &mut out, limit)?;
    Ok(out)
}

/// Order-preserving maps from `domain` into the cluster poset of a Dynkin
/// quiver.
pub fn torsion_class_count(quiver: &Quiver, domain: &FinitePoset) -> Result<BigUint> {
    if !quiver.is_dynkin() {
        return Err(Error::NotDynkin);
    }
    let engine = ClusterEngine::new(quiver, &EngineOptions::default())?;
    let poset = engine.cluster_poset()?;
    Ok(count_monotone_maps(domain, &poset.order))
}
