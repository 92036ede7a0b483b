//! Finite acyclic quivers, dimension vectors and the bilinear forms on them.
//!
//! Vertices are numbered `1..=n` in every public interface. All outputs are
//! equivariant under renumbering of the vertices.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer vector indexed by the vertices of a quiver.
///
/// The `Ord` instance is the canonical order used for every sorted output:
/// first by height (sum of entries), then lexicographically. The
/// componentwise partial order is available through [`DimVec::le`] and
/// [`DimVec::lt`].
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVec(Vec<i64>);

impl DimVec {
    pub fn new(entries: Vec<i64>) -> Self {
        DimVec(entries)
    }

    pub fn zeros(n: usize) -> Self {
        DimVec(vec![0; n])
    }

    /// The simple root at vertex `i` (1-based).
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i - 1] = 1;
        DimVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }

    /// Entry at vertex `i` (1-based).
    pub fn at(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&v| v >= 0)
    }

    /// `0 < self` in the componentwise order.
    pub fn is_positive(&self) -> bool {
        self.is_nonnegative() && !self.is_zero()
    }

    /// Vertices (1-based) where the entry is nonzero.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn le(&self, other: &DimVec) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lt(&self, other: &DimVec) -> bool {
        self.le(other) && self != other
    }

    pub fn checked_add(&self, other: &DimVec) -> Option<DimVec> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVec)
    }

    pub fn checked_sub(&self, other: &DimVec) -> Option<DimVec> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVec)
    }

    /// Every `x` with `0 <= x <= self`, in mixed-radix order (first vertex
    /// varies fastest). `self` must be nonnegative.
    pub fn sub_vectors(&self) -> SubVectors<'_> {
        SubVectors {
            bound: self,
            next: Some(vec![0; self.len()]),
        }
    }

    /// Number of vectors yielded by [`DimVec::sub_vectors`].
    pub fn box_size(&self) -> u128 {
        self.0.iter().map(|&v| v.max(0) as u128 + 1).product()
    }
}

pub struct SubVectors<'a> {
    bound: &'a DimVec,
    next: Option<Vec<i64>>,
}

impl Iterator for SubVectors<'_> {
    type Item = DimVec;

    fn next(&mut self) -> Option<DimVec> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carried = true;
        for (slot, &max) in succ.iter_mut().zip(&self.bound.0) {
            if *slot < max {
                *slot += 1;
                carried = false;
                break;
            }
            *slot = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(DimVec(current))
    }
}

impl Ord for DimVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for DimVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Vec<i64>> for DimVec {
    fn from(v: Vec<i64>) -> Self {
        DimVec(v)
    }
}

impl<const N: usize> From<[i64; N]> for DimVec {
    fn from(v: [i64; N]) -> Self {
        DimVec(v.to_vec())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
}

/// A finite acyclic quiver on vertices `1..=n`. Multiple arrows are allowed.
#[derive(Debug, Clone)]
pub struct Quiver {
    n: usize,
    arrows: Vec<Arrow>,
    topo: Vec<usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    /// Validates a vertex count and an arrow list.
    pub fn new<I>(n: usize, arrows: I) -> Result<Quiver>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let arrows: Vec<Arrow> = arrows
            .into_iter()
            .map(|(source, target)| Arrow { source, target })
            .collect();
        for a in &arrows {
            for index in [a.source, a.target] {
                if index == 0 || index > n {
                    return Err(Error::BadIndex { index, n });
                }
            }
        }
        let topo = topological_order(n, &arrows)?;
        Ok(Quiver { n, arrows, topo })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Vertices in an order where every arrow points forward.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// The same underlying graph with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver::new(self.n, self.arrows.iter().map(|a| (a.target, a.source)))
            .expect("reversing an acyclic quiver keeps it acyclic")
    }

    pub fn check_dim(&self, x: &DimVec) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(())
    }

    fn check_vertex(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::BadIndex {
                index: i,
                n: self.n,
            });
        }
        Ok(())
    }

    /// The Euler form `<x,y> = sum_i x_i y_i - sum_{a} x_{s(a)} y_{t(a)}`.
    pub fn euler_form(&self, x: &DimVec, y: &DimVec) -> Result<i64> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let overflow = || Error::Overflow { what: "Euler form" };
        let mut acc: i128 = 0;
        for (a, b) in x.as_slice().iter().zip(y.as_slice()) {
            acc = acc
                .checked_add(*a as i128 * *b as i128)
                .ok_or_else(overflow)?;
        }
        for arrow in &self.arrows {
            let p = x.at(arrow.source) as i128 * y.at(arrow.target) as i128;
            acc = acc.checked_sub(p).ok_or_else(overflow)?;
        }
        i64::try_from(acc).map_err(|_| overflow())
    }

    /// Euler form without overflow checks, for callers that bounded the
    /// entries beforehand.
    pub(crate) fn euler_small(&self, x: &[i64], y: &[i64]) -> i64 {
        let diag: i64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|a| x[a.source - 1] * y[a.target - 1])
            .sum();
        diag - off
    }

    /// The symmetrized form `(x,y) = <x,y> + <y,x>`.
    pub fn sym_form(&self, x: &DimVec, y: &DimVec) -> Result<i64> {
        self.euler_form(x, y)?
            .checked_add(self.euler_form(y, x)?)
            .ok_or(Error::Overflow {
                what: "symmetric form",
            })
    }

    /// The Tits form `q(x) = <x,x>`.
    pub fn tits_form(&self, x: &DimVec) -> Result<i64> {
        self.euler_form(x, x)
    }

    /// The simple reflection `s_i(x) = x - (x, e_i) e_i`.
    pub fn reflect(&self, i: usize, x: &DimVec) -> Result<DimVec> {
        self.check_vertex(i)?;
        self.check_dim(x)?;
        let coeff = self.sym_form(x, &DimVec::simple(self.n, i))?;
        let mut out = x.clone().into_inner();
        out[i - 1] = out[i - 1]
            .checked_sub(coeff)
            .ok_or(Error::Overflow { what: "reflection" })?;
        Ok(DimVec(out))
    }

    /// Number of paths from `i` to `j` for every pair, as rows indexed by
    /// the start vertex. Row `i` is the dimension vector of the
    /// indecomposable projective at `i`.
    pub fn path_counts(&self) -> Vec<DimVec> {
        let mut rows = Vec::with_capacity(self.n);
        for start in 1..=self.n {
            let mut count = vec![0i64; self.n];
            count[start - 1] = 1;
            for &v in &self.topo {
                let cv = count[v - 1];
                if cv == 0 {
                    continue;
                }
                for a in self.arrows.iter().filter(|a| a.source == v) {
                    count[a.target - 1] += cv;
                }
            }
            rows.push(DimVec(count));
        }
        rows
    }

    /// Dimension vectors of the indecomposable projective representations.
    pub fn projective_dims(&self) -> Vec<DimVec> {
        self.path_counts()
    }

    /// Dynkin type of each connected component, or `None` if some
    /// component is not a simply-laced Dynkin diagram.
    pub fn dynkin_type(&self) -> Option<Vec<DynkinType>> {
        let mut adjacency = vec![Vec::new(); self.n];
        let mut edge_seen = std::collections::HashSet::new();
        for a in &self.arrows {
            let key = (a.source.min(a.target), a.source.max(a.target));
            if !edge_seen.insert(key) {
                return None;
            }
            adjacency[a.source - 1].push(a.target - 1);
            adjacency[a.target - 1].push(a.source - 1);
        }
        let mut component_of = vec![usize::MAX; self.n];
        let mut types = Vec::new();
        for root in 0..self.n {
            if component_of[root] != usize::MAX {
                continue;
            }
            let mut members = Vec::new();
            let mut queue = VecDeque::from([root]);
            component_of[root] = root;
            while let Some(v) = queue.pop_front() {
                members.push(v);
                for &w in &adjacency[v] {
                    if component_of[w] == usize::MAX {
                        component_of[w] = root;
                        queue.push_back(w);
                    }
                }
            }
            let edges: usize = members.iter().map(|&v| adjacency[v].len()).sum::<usize>() / 2;
            if edges + 1 != members.len() {
                return None;
            }
            types.push(classify_tree(&members, &adjacency)?);
        }
        Some(types)
    }

    pub fn is_dynkin(&self) -> bool {
        self.dynkin_type().is_some()
    }
}

/// Simply-laced Dynkin types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn positive_root_count(self) -> usize {
        match self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E(6) => 36,
            DynkinType::E(7) => 63,
            DynkinType::E(8) => 120,
            DynkinType::E(_) => unreachable!("only E6, E7, E8 exist"),
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

fn classify_tree(members: &[usize], adjacency: &[Vec<usize>]) -> Option<DynkinType> {
    let n = members.len();
    let branch: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&v| adjacency[v].len() >= 3)
        .collect();
    match branch.as_slice() {
        [] => Some(DynkinType::A(n)),
        [center] if adjacency[*center].len() == 3 => {
            let mut arms: Vec<usize> = adjacency[*center]
                .iter()
                .map(|&start| arm_length(*center, start, adjacency))
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(DynkinType::D(n)),
                [1, 2, 2] => Some(DynkinType::E(6)),
                [1, 2, 3] => Some(DynkinType::E(7)),
                [1, 2, 4] => Some(DynkinType::E(8)),
                _ => None,
            }
        }
        _ => None,
    }
}

// Length of the path hanging off `center` through `start`; in a tree with a
// single branch vertex every arm is a path.
fn arm_length(center: usize, start: usize, adjacency: &[Vec<usize>]) -> usize {
    let (mut prev, mut cur, mut len) = (center, start, 1);
    loop {
        let next = adjacency[cur].iter().copied().find(|&w| w != prev);
        match next {
            Some(w) => {
                prev = cur;
                cur = w;
                len += 1;
            }
            None => return len,
        }
    }
}

fn topological_order(n: usize, arrows: &[Arrow]) -> Result<Vec<usize>> {
    let mut indegree = vec![0usize; n + 1];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for a in arrows {
        indegree[a.target] += 1;
        out[a.source].push(a.target);
    }
    let mut ready: std::collections::BTreeSet<usize> =
        (1..=n).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &w in &out[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.insert(w);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    Err(Error::CycleDetected {
        cycle: find_cycle(n, &out),
    })
}

fn find_cycle(n: usize, out: &[Vec<usize>]) -> Vec<usize> {
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n + 1];
    let mut stack: Vec<usize> = Vec::new();
    fn dfs(
        v: usize,
        out: &[Vec<usize>],
        state: &mut [u8],
        stack: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        state[v] = 1;
        stack.push(v);
        for &w in &out[v] {
            if state[w] == 1 {
                let pos = stack.iter().position(|&u| u == w).unwrap();
                return Some(stack[pos..].to_vec());
            }
            if state[w] == 0 {
                if let Some(c) = dfs(w, out, state, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }
    for v in 1..=n {
        if state[v] == 0 {
            if let Some(c) = dfs(v, out, &mut state, &mut stack) {
                return c;
            }
        }
    }
    Vec::new()
}

/// Frequently used quivers.
pub mod standard {
    use super::Quiver;

    /// `A_n` with arrows `i -> i+1`.
    pub fn linear_a(n: usize) -> Quiver {
        Quiver::new(n, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    /// `D_n` (n >= 4): a path `1 -> 2 -> ... -> n-2` with two extra arrows
    /// `n-2 -> n-1` and `n-2 -> n`.
    pub fn d(n: usize) -> Quiver {
        assert!(n >= 4);
        let mut arrows: Vec<(usize, usize)> = (1..n - 2).map(|i| (i, i + 1)).collect();
        arrows.push((n - 2, n - 1));
        arrows.push((n - 2, n));
        Quiver::new(n, arrows).unwrap()
    }

    /// `E_n` for n in 6..=8: path `1 -> ... -> n-1` with vertex `n` attached to
    /// vertex 3.
    pub fn e(n: usize) -> Quiver {
        assert!((6..=8).contains(&n));
        let mut arrows: Vec<(usize, usize)> = (1..n - 1).map(|i| (i, i + 1)).collect();
        arrows.push((3, n));
        Quiver::new(n, arrows).unwrap()
    }

    /// Two arrows `1 -> 2`.
    pub fn kronecker() -> Quiver {
        Quiver::new(2, [(1, 2), (1, 2)]).unwrap()
    }

    /// A wild quiver on three vertices: a double arrow `1 -> 2` and arrows
    /// `2 -> 3`, `1 -> 3`.
    pub fn wild3() -> Quiver {
        Quiver::new(3, [(1, 2), (1, 2), (2, 3), (1, 3)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;

    fn v(x: &[i64]) -> DimVec {
        DimVec::new(x.to_vec())
    }

    #[test]
    fn validation_examples() {
        assert!(Quiver::new(2, [(1, 2)]).is_ok());
        assert!(matches!(
            Quiver::new(2, [(1, 2), (2, 1)]),
            Err(Error::CycleDetected { .. })
        ));
        let k = Quiver::new(2, [(1, 2), (1, 2)]).unwrap();
        assert_eq!(k.arrows().len(), 2);
        assert_eq!(
            Quiver::new(2, [(1, 3)]),
            Err(Error::BadIndex { index: 3, n: 2 })
        );
        assert_eq!(
            Quiver::new(2, [(0, 1)]),
            Err(Error::BadIndex { index: 0, n: 2 })
        );
        assert!(matches!(
            Quiver::new(1, [(1, 1)]),
            Err(Error::CycleDetected { .. })
        ));
    }

    #[test]
    fn cycle_is_reported() {
        let err = Quiver::new(4, [(1, 2), (2, 3), (3, 1), (3, 4)]).unwrap_err();
        match err {
            Error::CycleDetected { mut cycle } => {
                cycle.sort();
                assert_eq!(cycle, vec![1, 2, 3]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn forms_on_a2() {
        let q = linear_a(2);
        let (e1, e2) = (v(&[1, 0]), v(&[0, 1]));
        assert_eq!(q.euler_form(&e1, &e1).unwrap(), 1);
        assert_eq!(q.euler_form(&e1, &e2).unwrap(), -1);
        assert_eq!(q.euler_form(&e2, &e1).unwrap(), 0);
        assert_eq!(q.sym_form(&e1, &e2).unwrap(), -1);
        assert_eq!(q.sym_form(&e1, &e1).unwrap(), 2);
        assert_eq!(
            q.euler_form(&e1, &v(&[1, 0, 0])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn reflections_on_a2() {
        let q = linear_a(2);
        assert_eq!(q.reflect(1, &v(&[1, 0])).unwrap(), v(&[-1, 0]));
        assert_eq!(q.reflect(1, &v(&[0, 1])).unwrap(), v(&[1, 1]));
        assert_eq!(
            q.reflect(3, &v(&[0, 1])),
            Err(Error::BadIndex { index: 3, n: 2 })
        );
    }

    #[test]
    fn euler_form_overflow_is_reported() {
        let q = linear_a(2);
        let big = v(&[i64::MAX, i64::MAX]);
        assert!(matches!(
            q.euler_form(&big, &big),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn dynkin_recognition() {
        assert_eq!(linear_a(2).dynkin_type(), Some(vec![DynkinType::A(2)]));
        assert!(!kronecker().is_dynkin());
        let star = Quiver::new(5, [(2, 1), (3, 1), (4, 1), (5, 1)]).unwrap();
        assert!(!star.is_dynkin());
        assert_eq!(d(4).dynkin_type(), Some(vec![DynkinType::D(4)]));
        assert_eq!(d(6).dynkin_type(), Some(vec![DynkinType::D(6)]));
        for n in 6..=8 {
            assert_eq!(e(n).dynkin_type(), Some(vec![DynkinType::E(n)]));
        }
        // E~6 arms (2,2,2)
        let e6t = Quiver::new(7, [(1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (6, 7)]).unwrap();
        assert!(!e6t.is_dynkin());
        // A~2 triangle: acyclic orientation but a cycle in the diagram
        let tri = Quiver::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(!tri.is_dynkin());
        let disjoint = Quiver::new(3, [(1, 2)]).unwrap();
        assert_eq!(
            disjoint.dynkin_type(),
            Some(vec![DynkinType::A(2), DynkinType::A(1)])
        );
    }

    #[test]
    fn projectives_of_a3() {
        let q = linear_a(3);
        assert_eq!(
            q.projective_dims(),
            vec![v(&[1, 1, 1]), v(&[0, 1, 1]), v(&[0, 0, 1])]
        );
        assert_eq!(kronecker().projective_dims()[0], v(&[1, 2]));
    }

    #[test]
    fn canonical_order_and_sub_vectors() {
        let mut xs = vec![v(&[1, 1]), v(&[1, 0]), v(&[0, 1]), v(&[0, 0])];
        xs.sort();
        assert_eq!(xs, vec![v(&[0, 0]), v(&[0, 1]), v(&[1, 0]), v(&[1, 1])]);
        let subs: Vec<DimVec> = v(&[1, 2]).sub_vectors().collect();
        assert_eq!(subs.len(), 6);
        assert!(subs.iter().all(|s| s.le(&v(&[1, 2]))));
        assert_eq!(v(&[0, 0]).sub_vectors().count(), 1);
        assert_eq!(v(&[2, 0, 3]).box_size(), 12);
    }

    use proptest::prelude::*;

    fn small_vec(n: usize) -> impl Strategy<Value = DimVec> {
        proptest::collection::vec(-6i64..=6, n).prop_map(DimVec::new)
    }

    proptest! {
        #[test]
        fn sym_form_is_symmetric(x in small_vec(3), y in small_vec(3)) {
            let q = wild3();
            prop_assert_eq!(q.sym_form(&x, &y).unwrap(), q.sym_form(&y, &x).unwrap());
            prop_assert_eq!(q.sym_form(&x, &x).unwrap(), 2 * q.euler_form(&x, &x).unwrap());
        }

        #[test]
        fn reflection_is_an_involution(x in small_vec(4), i in 1usize..=4) {
            let q = d(4);
            let once = q.reflect(i, &x).unwrap();
            prop_assert_eq!(q.reflect(i, &once).unwrap(), x.clone());
            // reflections preserve the Tits form
            prop_assert_eq!(q.tits_form(&once).unwrap(), q.tits_form(&x).unwrap());
        }
    }
}
