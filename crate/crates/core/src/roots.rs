//! Positive real roots by breadth-first closure under simple reflections.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{DimVec, Quiver};

/// A canonically sorted set of positive roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSet {
    pub roots: Vec<DimVec>,
    pub height_bound: Option<u64>,
    /// True when the list provably contains every root of its kind.
    pub complete: bool,
    /// Candidates the Schur probe could neither confirm nor refute.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub unresolved: Vec<DimVec>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, x: &DimVec) -> bool {
        self.roots.binary_search(x).is_ok()
    }
}

/// Positive real roots of `quiver`, i.e. the positive part of the Weyl group
/// orbit of the simple roots.
///
/// Every positive real root is reachable from a simple root through a
/// chain of simple reflections that stays positive and strictly increases
/// height, so the search only ever keeps positive vectors and a height
/// bound cuts it off exactly. Non-Dynkin quivers have infinitely many real
/// roots and need `bound`.
pub fn positive_real_roots(quiver: &Quiver, bound: Option<u64>) -> Result<RootSet> {
    let dynkin = quiver.is_dynkin();
    if !dynkin && bound.is_none() {
        return Err(Error::BoundRequired);
    }
    let n = quiver.vertex_count();
    let within = |x: &DimVec| bound.is_none_or(|b| x.height() as u64 <= b);
    let mut seen: BTreeSet<DimVec> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let mut truncated = false;
    for i in 1..=n {
        let e = DimVec::simple(n, i);
        if within(&e) {
            seen.insert(e.clone());
            queue.push_back(e);
        } else {
            truncated = true;
        }
    }
    while let Some(x) = queue.pop_front() {
        for j in 1..=n {
            let y = quiver.reflect(j, &x)?;
            if !y.is_positive() || seen.contains(&y) {
                continue;
            }
            if !within(&y) {
                truncated = true;
                continue;
            }
            seen.insert(y.clone());
            queue.push_back(y);
        }
    }
    Ok(RootSet {
        roots: seen.into_iter().collect(),
        height_bound: bound,
        complete: dynkin && !truncated,
        unresolved: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::standard::*;
    use std::collections::HashSet;

    fn vs(xs: &[&[i64]]) -> Vec<DimVec> {
        let mut out: Vec<DimVec> = xs.iter().map(|x| DimVec::new(x.to_vec())).collect();
        out.sort();
        out
    }

    /// Naive closure: saturate a set of vectors (of either sign) inside a
    /// box under all reflections, then keep the positive ones.
    fn naive_positive_roots(q: &Quiver, max_entry: i64) -> Vec<DimVec> {
        let n = q.vertex_count();
        let mut set: HashSet<DimVec> = (1..=n).map(|i| DimVec::simple(n, i)).collect();
        loop {
            let mut added = false;
            let current: Vec<DimVec> = set.iter().cloned().collect();
            for x in current {
                for j in 1..=n {
                    let y = q.reflect(j, &x).unwrap();
                    if y.as_slice().iter().all(|v| v.abs() <= max_entry) && set.insert(y) {
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        let mut out: Vec<DimVec> = set.into_iter().filter(|x| x.is_positive()).collect();
        out.sort();
        out
    }

    #[test]
    fn a2_roots() {
        let r = positive_real_roots(&linear_a(2), None).unwrap();
        assert!(r.complete);
        assert_eq!(r.roots, vs(&[&[1, 0], &[0, 1], &[1, 1]]));
    }

    #[test]
    fn a3_has_six_roots() {
        let r = positive_real_roots(&linear_a(3), None).unwrap();
        assert_eq!(r.len(), 6);
        assert!(r.complete);
    }

    #[test]
    fn kronecker_bounded() {
        let r = positive_real_roots(&kronecker(), Some(7)).unwrap();
        assert!(!r.complete);
        assert_eq!(
            r.roots,
            vs(&[
                &[1, 0],
                &[0, 1],
                &[1, 2],
                &[2, 1],
                &[2, 3],
                &[3, 2],
                &[3, 4],
                &[4, 3]
            ])
        );
        assert_eq!(
            positive_real_roots(&kronecker(), None),
            Err(Error::BoundRequired)
        );
    }

    #[test]
    fn roots_have_tits_form_one() {
        for q in [linear_a(4), d(4), d(5), e(6), e(7), e(8)] {
            let r = positive_real_roots(&q, None).unwrap();
            for x in &r.roots {
                assert_eq!(q.tits_form(x).unwrap(), 1, "{x}");
            }
        }
        let r = positive_real_roots(&wild3(), Some(12)).unwrap();
        for x in &r.roots {
            assert_eq!(wild3().tits_form(x).unwrap(), 1);
        }
    }

    #[test]
    fn counts_match_naive_closure_and_type() {
        for q in [
            linear_a(1),
            linear_a(2),
            linear_a(3),
            linear_a(5),
            d(4),
            d(5),
            e(6),
        ] {
            let r = positive_real_roots(&q, None).unwrap();
            let ty = q.dynkin_type().unwrap();
            assert_eq!(r.len(), ty[0].positive_root_count());
            assert_eq!(r.roots, naive_positive_roots(&q, 3));
        }
        assert_eq!(positive_real_roots(&e(8), None).unwrap().len(), 120);
    }

    #[test]
    fn bounded_search_matches_naive_closure() {
        let q = kronecker();
        let bounded = positive_real_roots(&q, Some(9)).unwrap();
        let naive: Vec<DimVec> = naive_positive_roots(&q, 12)
            .into_iter()
            .filter(|x| x.height() <= 9)
            .collect();
        assert_eq!(bounded.roots, naive);
    }

    #[test]
    fn orientation_independent() {
        let a = positive_real_roots(&linear_a(3), None).unwrap();
        let other = Quiver::new(3, [(2, 1), (2, 3)]).unwrap();
        let b = positive_real_roots(&other, None).unwrap();
        assert_eq!(a.roots, b.roots);
        let c = positive_real_roots(&linear_a(3).opposite(), None).unwrap();
        assert_eq!(a.roots, c.roots);
    }
}
