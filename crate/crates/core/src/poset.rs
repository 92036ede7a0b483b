//! Finite posets stored as dense relation bitsets.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A finite partially ordered set on `0..size`. `leq(i, j)` means `i <= j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    up: Vec<FixedBitSet>,
    names: Option<Vec<String>>,
}

impl FinitePoset {
    /// Builds a poset from a full relation, checking the order axioms.
    pub fn from_relation<R>(size: usize, rel: R) -> Result<Self>
    where
        R: Fn(usize, usize) -> bool,
    {
        let mut up = vec![FixedBitSet::with_capacity(size); size];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..size {
                if rel(i, j) {
                    row.insert(j);
                }
            }
        }
        let poset = FinitePoset { up, names: None };
        poset.check_axioms()?;
        Ok(poset)
    }

    /// Builds a poset from cover pairs `(lower, upper)` by reflexive
    /// transitive closure.
    pub fn from_covers(size: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut up = vec![FixedBitSet::with_capacity(size); size];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for &(a, b) in covers {
            if a >= size || b >= size {
                return Err(Error::BadIndex {
                    index: a.max(b) + 1,
                    n: size,
                });
            }
            up[a].insert(b);
        }
        // Warshall
        for k in 0..size {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        let poset = FinitePoset { up, names: None };
        poset.check_antisymmetric()?;
        Ok(poset)
    }

    pub fn chain(k: usize) -> Self {
        Self::from_relation(k, |i, j| i <= j).unwrap()
    }

    pub fn antichain(k: usize) -> Self {
        Self::from_relation(k, |i, j| i == j).unwrap()
    }

    pub fn point() -> Self {
        Self::chain(1)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.size());
        self.names = Some(names);
        self
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Disjoint union, with `other`'s elements shifted after `self`'s.
    pub fn disjoint_union(&self, other: &FinitePoset) -> FinitePoset {
        let (a, b) = (self.size(), other.size());
        Self::from_relation(a + b, |i, j| match (i < a, j < a) {
            (true, true) => self.leq(i, j),
            (false, false) => other.leq(i - a, j - a),
            _ => false,
        })
        .expect("disjoint union of posets is a poset")
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.size();
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(Error::NotReflexive { element: i });
            }
        }
        self.check_antisymmetric()?;
        for a in 0..n {
            for b in self.up[a].ones() {
                if !self.up[b].is_subset(&self.up[a]) {
                    let c = self.up[b]
                        .ones()
                        .find(|&c| !self.up[a].contains(c))
                        .unwrap();
                    return Err(Error::NotTransitive { a, b, c });
                }
            }
        }
        Ok(())
    }

    fn check_antisymmetric(&self) -> Result<()> {
        for a in 0..self.size() {
            for b in self.up[a].ones() {
                if a != b && self.up[b].contains(a) {
                    return Err(Error::NotAntisymmetric {
                        a: a.min(b),
                        b: a.max(b),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.up.len()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// Number of pairs `(i, j)` with `i <= j`.
    pub fn relation_size(&self) -> usize {
        self.up.iter().map(|r| r.count_ones(..)).sum()
    }

    /// Cover relations `(lower, upper)`, sorted: the transitive reduction.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let strict: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut s = self.up[i].clone();
                s.set(i, false);
                s
            })
            .collect();
        let mut out = Vec::new();
        for i in 0..n {
            let mut reachable_in_two = FixedBitSet::with_capacity(n);
            for k in strict[i].ones() {
                reachable_in_two.union_with(&strict[k]);
            }
            for j in strict[i].ones() {
                if !reachable_in_two.contains(j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn lower_covers(&self) -> Vec<Vec<usize>> {
        let mut lower = vec![Vec::new(); self.size()];
        for (a, b) in self.hasse() {
            lower[b].push(a);
        }
        lower
    }

    /// Elements below nothing but themselves.
    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&j| (0..self.size()).all(|i| !self.lt(i, j)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&i| (0..self.size()).all(|j| !self.lt(i, j)))
            .collect()
    }

    /// The least element, if there is one.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.size()).find(|&b| self.up[b].count_ones(..) == self.size())
    }

    /// The greatest element, if there is one.
    pub fn top(&self) -> Option<usize> {
        (0..self.size()).find(|&t| (0..self.size()).all(|i| self.leq(i, t)))
    }

    /// A linear extension, choosing the smallest available index first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.size();
        let mut remaining_below: Vec<usize> = (0..n)
            .map(|j| (0..n).filter(|&i| self.lt(i, j)).count())
            .collect();
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&j| remaining_below[j] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(i) = ready.pop_first() {
            order.push(i);
            for j in self.up[i].ones() {
                if j != i {
                    remaining_below[j] -= 1;
                    if remaining_below[j] == 0 {
                        ready.insert(j);
                    }
                }
            }
        }
        order
    }

    /// An order isomorphism `self -> other` as an index map, found by
    /// backtracking with degree pruning.
    pub fn find_isomorphism(&self, other: &FinitePoset) -> Option<Vec<usize>> {
        let n = self.size();
        if n != other.size() || self.relation_size() != other.relation_size() {
            return None;
        }
        let signature = |p: &FinitePoset, i: usize| {
            let above = p.up[i].count_ones(..);
            let below = (0..p.size()).filter(|&j| p.leq(j, i)).count();
            (above, below)
        };
        let sig_a: Vec<_> = (0..n).map(|i| signature(self, i)).collect();
        let sig_b: Vec<_> = (0..n).map(|i| signature(other, i)).collect();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn extend(
            i: usize,
            a: &FinitePoset,
            b: &FinitePoset,
            sig_a: &[(usize, usize)],
            sig_b: &[(usize, usize)],
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if i == map.len() {
                return true;
            }
            for cand in 0..map.len() {
                if used[cand] || sig_a[i] != sig_b[cand] {
                    continue;
                }
                let consistent = (0..i).all(|k| {
                    a.leq(k, i) == b.leq(map[k], cand) && a.leq(i, k) == b.leq(cand, map[k])
                });
                if !consistent {
                    continue;
                }
                map[i] = cand;
                used[cand] = true;
                if extend(i + 1, a, b, sig_a, sig_b, map, used) {
                    return true;
                }
                used[cand] = false;
            }
            map[i] = usize::MAX;
            false
        }
        extend(0, self, other, &sig_a, &sig_b, &mut map, &mut used).then_some(map)
    }
}

/// Result of comparing two posets along a fixed bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    Isomorphic,
    /// First pair `(i, j)` where `i <= j` holds on one side only, with the
    /// truth value on the left poset.
    Mismatch {
        i: usize,
        j: usize,
        left: bool,
    },
}

impl Comparison {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Comparison::Isomorphic)
    }
}

/// Checks that `i -> bijection[i]` carries the order of `left` exactly onto
/// the order of `right`.
pub fn compare_posets(
    left: &FinitePoset,
    right: &FinitePoset,
    bijection: &[usize],
) -> Result<Comparison> {
    if left.size() != right.size() {
        return Err(Error::SizeMismatch {
            left: left.size(),
            right: right.size(),
        });
    }
    if bijection.len() != left.size() {
        return Err(Error::SizeMismatch {
            left: left.size(),
            right: bijection.len(),
        });
    }
    let mut seen = vec![false; right.size()];
    for &b in bijection {
        if b >= right.size() || std::mem::replace(&mut seen[b], true) {
            return Err(Error::Internal("label map is not a bijection".into()));
        }
    }
    for i in 0..left.size() {
        for j in 0..left.size() {
            let l = left.leq(i, j);
            if l != right.leq(bijection[i], bijection[j]) {
                return Ok(Comparison::Mismatch { i, j, left: l });
            }
        }
    }
    Ok(Comparison::Isomorphic)
}
