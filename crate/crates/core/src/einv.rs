//! The E-invariant: generic dimension of `Ext^1` between representations of
//! given dimension vectors, via its recursive characterization.
//!
//! `E(x, 0) = E(0, y) = 0`, and otherwise `E(x, y)` is the maximum of
//! `-<x', y - y'>` over all `x' <= x`, `y' <= y` that are generic
//! subdimension vectors, i.e. `E(x', x - x') = 0 = E(y', y - y')`. Those
//! side conditions have total height `|x|` and `|y|`, both below
//! `|x| + |y|` once the zero cases are peeled off, so the recursion is
//! well founded.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use dashmap::DashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{DimVec, Quiver};

/// Largest entry accepted by the E-invariant. The recursion enumerates the
/// whole box below its arguments, so anything near this is already far out
/// of reach; the cap keeps the internal arithmetic overflow-free.
pub const MAX_ENTRY: i64 = 1 << 16;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EStats {
    pub entries: usize,
    pub summand_entries: usize,
    pub hits: u64,
    pub misses: u64,
}

/// Memoized E-invariant for one quiver. Safe to share between threads;
/// concurrent inserts of the same key store the same value.
pub struct EInvariant {
    quiver: Quiver,
    values: DashMap<(DimVec, DimVec), u64>,
    summands: DashMap<DimVec, Arc<Vec<DimVec>>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl EInvariant {
    pub fn new(quiver: &Quiver) -> Self {
        EInvariant {
            quiver: quiver.clone(),
            values: DashMap::new(),
            summands: DashMap::new(),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn stats(&self) -> EStats {
        EStats {
            entries: self.values.len(),
            summand_entries: self.summands.len(),
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    /// Drops every cached value.
    pub fn clear(&self) {
        self.values.clear();
        self.summands.clear();
        self.hits.store(0, Ordering::Relaxed);
        self.misses.store(0, Ordering::Relaxed);
    }

    fn check(&self, x: &DimVec) -> Result<()> {
        self.quiver.check_dim(x)?;
        if !x.is_nonnegative() {
            return Err(Error::NegativeEntry {
                vector: x.to_string(),
            });
        }
        if x.as_slice().iter().any(|&v| v > MAX_ENTRY) {
            return Err(Error::EntryTooLarge {
                vector: x.to_string(),
                max: MAX_ENTRY,
            });
        }
        Ok(())
    }

    /// `{ x' : 0 <= x' <= x, E(x', x - x') = 0 }`, canonically sorted.
    pub fn generic_summands(&self, x: &DimVec) -> Result<Arc<Vec<DimVec>>> {
        self.check(x)?;
        self.summands_of(x)
    }

    /// The two-sided recursion.
    pub fn e(&self, x: &DimVec, y: &DimVec) -> Result<u64> {
        self.check(x)?;
        self.check(y)?;
        self.value(x, y)
    }

    /// The two one-sided formulas
    /// `max { -<x, y - y'> : y' generic in y }` and
    /// `max { -<x', y> : x' generic in x }`.
    ///
    /// The second ranges over the generic subrepresentations `x'` of `x`
    /// themselves; pairing the quotient `x - x'` with `y` instead already
    /// fails on D4 (see the `quotient_variant_is_wrong` test).
    pub fn e_alt(&self, x: &DimVec, y: &DimVec) -> Result<(u64, u64)> {
        self.check(x)?;
        self.check(y)?;
        let q = &self.quiver;
        let gy = self.summands_of(y)?;
        let gx = self.summands_of(x)?;
        let by_y = gy
            .iter()
            .map(|yp| -q.euler_small(x.as_slice(), &diff(y, yp)))
            .max();
        let by_x = gx
            .iter()
            .map(|xp| -q.euler_small(xp.as_slice(), y.as_slice()))
            .max();
        Ok((to_value(by_y)?, to_value(by_x)?))
    }

    fn value(&self, x: &DimVec, y: &DimVec) -> Result<u64> {
        if x.is_zero() || y.is_zero() {
            return Ok(0);
        }
        let key = (x.clone(), y.clone());
        if let Some(v) = self.values.get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(*v);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let gx = self.summands_of(x)?;
        let gy = self.summands_of(y)?;
        let rests: Vec<Vec<i64>> = gy.iter().map(|yp| diff(y, yp)).collect();
        let best = gx
            .iter()
            .flat_map(|xp| {
                rests
                    .iter()
                    .map(move |rest| -self.quiver.euler_small(xp.as_slice(), rest))
            })
            .max();
        let v = to_value(best)?;
        self.values.insert(key, v);
        Ok(v)
    }

    fn summands_of(&self, x: &DimVec) -> Result<Arc<Vec<DimVec>>> {
        if let Some(s) = self.summands.get(x) {
            return Ok(Arc::clone(&s));
        }
        let mut out = Vec::new();
        for xp in x.sub_vectors() {
            let rest = DimVec::new(diff(x, &xp));
            if self.value(&xp, &rest)? == 0 {
                out.push(xp);
            }
        }
        out.sort();
        let out = Arc::new(out);
        self.summands.insert(x.clone(), Arc::clone(&out));
        Ok(out)
    }
}

fn diff(x: &DimVec, y: &DimVec) -> Vec<i64> {
    x.as_slice()
        .iter()
        .zip(y.as_slice())
        .map(|(a, b)| a - b)
        .collect()
}

fn to_value(best: Option<i64>) -> Result<u64> {
    match best {
        None => Err(Error::Internal("empty maximum in the E recursion".into())),
        Some(v) if v < 0 => Err(Error::Internal(format!(
            "negative maximum {v} in the E recursion"
        ))),
        Some(v) => Ok(v as u64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::standard::*;

    fn v(x: &[i64]) -> DimVec {
        DimVec::new(x.to_vec())
    }

    #[test]
    fn a2_values() {
        let e = EInvariant::new(&linear_a(2));
        assert_eq!(e.e(&v(&[1, 0]), &v(&[0, 1])).unwrap(), 1);
        assert_eq!(e.e(&v(&[0, 1]), &v(&[1, 0])).unwrap(), 0);
        assert_eq!(e.e(&v(&[1, 1]), &v(&[1, 0])).unwrap(), 0);
        assert_eq!(e.e(&v(&[1, 0]), &v(&[1, 1])).unwrap(), 0);
        for x in v(&[3, 3]).sub_vectors() {
            assert_eq!(e.e(&x, &v(&[0, 0])).unwrap(), 0);
            assert_eq!(e.e(&v(&[0, 0]), &x).unwrap(), 0);
        }
    }

    #[test]
    fn a2_generic_summands() {
        let e = EInvariant::new(&linear_a(2));
        assert_eq!(*e.generic_summands(&v(&[0, 0])).unwrap(), vec![v(&[0, 0])]);
        assert_eq!(
            *e.generic_summands(&v(&[1, 1])).unwrap(),
            vec![v(&[0, 0]), v(&[0, 1]), v(&[1, 1])]
        );
        assert_eq!(
            *e.generic_summands(&v(&[1, 0])).unwrap(),
            vec![v(&[0, 0]), v(&[1, 0])]
        );
    }

    #[test]
    fn a2_one_sided() {
        let e = EInvariant::new(&linear_a(2));
        assert_eq!(e.e_alt(&v(&[1, 0]), &v(&[0, 1])).unwrap(), (1, 1));
        assert_eq!(e.e_alt(&v(&[0, 1]), &v(&[1, 0])).unwrap(), (0, 0));
        assert_eq!(e.e_alt(&v(&[2, 1]), &v(&[0, 0])).unwrap(), (0, 0));
        assert_eq!(e.e_alt(&v(&[1, 1]), &v(&[0, 1])).unwrap(), (0, 0));
    }

    #[test]
    fn one_sided_formulas_agree_in_a_box() {
        for q in [linear_a(2), linear_a(2).opposite(), linear_a(3), d(4)] {
            let e = EInvariant::new(&q);
            let corner = DimVec::new(vec![2; q.vertex_count()]);
            for x in corner.sub_vectors() {
                for y in corner.sub_vectors() {
                    let value = e.e(&x, &y).unwrap();
                    assert_eq!(e.e_alt(&x, &y).unwrap(), (value, value), "{x} {y}");
                }
            }
        }
    }

    #[test]
    fn quotient_variant_is_wrong() {
        use crate::rep::{ext_dim, sample_exceptional};
        use crate::RationalRep;
        // D4 with centre 3; x is the indecomposable on the arrow 1 -> 3
        let q = Quiver::new(4, [(1, 3), (2, 3), (3, 4)]).unwrap();
        let e = EInvariant::new(&q);
        let (x, y) = (v(&[1, 0, 1, 0]), v(&[0, 0, 1, 0]));
        let mx: RationalRep = sample_exceptional(&q, &x, 0, 8).unwrap();
        let my: RationalRep = sample_exceptional(&q, &y, 0, 8).unwrap();
        assert_eq!(ext_dim(&q, &mx, &my).unwrap(), 0);
        assert_eq!(e.e(&x, &y).unwrap(), 0);
        assert_eq!(e.e_alt(&x, &y).unwrap(), (0, 0));
        let quotient_variant = e
            .generic_summands(&x)
            .unwrap()
            .iter()
            .map(|xp| -q.euler_form(&x.checked_sub(xp).unwrap(), &y).unwrap())
            .max()
            .unwrap();
        assert_eq!(quotient_variant, 1);
    }

    #[test]
    fn simple_roots_count_arrows() {
        // E(e_i, e_j) for i != j is the number of arrows i -> j.
        let q = wild3();
        let e = EInvariant::new(&q);
        for i in 1..=3 {
            for j in 1..=3 {
                if i == j {
                    continue;
                }
                let arrows = q
                    .arrows()
                    .iter()
                    .filter(|a| a.source == i && a.target == j)
                    .count() as u64;
                assert_eq!(
                    e.e(&DimVec::simple(3, i), &DimVec::simple(3, j)).unwrap(),
                    arrows
                );
            }
        }
    }

    #[test]
    fn input_errors() {
        let e = EInvariant::new(&linear_a(2));
        assert!(matches!(
            e.e(&v(&[-1, 0]), &v(&[0, 1])),
            Err(Error::NegativeEntry { .. })
        ));
        assert!(matches!(
            e.e(&v(&[1, 0, 0]), &v(&[0, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            e.generic_summands(&v(&[0, -2])),
            Err(Error::NegativeEntry { .. })
        ));
        assert!(matches!(
            e.e(&v(&[MAX_ENTRY + 1, 0]), &v(&[0, 1])),
            Err(Error::EntryTooLarge { .. })
        ));
    }

    #[test]
    fn cold_and_warm_cache_agree() {
        let q = d(4);
        let e = EInvariant::new(&q);
        let ys: Vec<DimVec> = v(&[1, 1, 1, 1]).sub_vectors().collect();
        let pairs: Vec<(DimVec, DimVec)> = v(&[1, 2, 1, 1])
            .sub_vectors()
            .flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone())))
            .collect();
        let warm: Vec<u64> = pairs.iter().map(|(x, y)| e.e(x, y).unwrap()).collect();
        let again: Vec<u64> = pairs.iter().map(|(x, y)| e.e(x, y).unwrap()).collect();
        assert_eq!(warm, again);
        assert!(e.stats().hits > 0);
        e.clear();
        assert_eq!(e.stats().entries, 0);
        let cold: Vec<u64> = pairs.iter().map(|(x, y)| e.e(x, y).unwrap()).collect();
        assert_eq!(warm, cold);
    }

    #[test]
    fn concurrent_evaluation_is_schedule_independent() {
        use rayon::prelude::*;
        let q = linear_a(3);
        let serial = EInvariant::new(&q);
        let shared = EInvariant::new(&q);
        let xs: Vec<DimVec> = v(&[2, 2, 2]).sub_vectors().collect();
        let expected: Vec<u64> = xs
            .iter()
            .flat_map(|x| xs.iter().map(|y| serial.e(x, y).unwrap()))
            .collect();
        let got: Vec<u64> = xs
            .par_iter()
            .flat_map_iter(|x| {
                xs.iter()
                    .map(|y| shared.e(x, y).unwrap())
                    .collect::<Vec<_>>()
            })
            .collect();
        assert_eq!(expected, got);
    }
}
