//! Dense linear algebra over a generic field: row reduction, rank and
//! kernels.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, Zero};

/// Scalars the representation oracle can compute with.
///
/// Exact fields decide zero-ness exactly. Floating point types treat values
/// below [`Field::TOLERANCE`] as zero, which makes ranks approximate.
pub trait Field:
    Num + Neg<Output = Self> + FromPrimitive + Clone + Debug + PartialEq + Send + Sync + 'static
{
    const EXACT: bool;
    const TOLERANCE: f64 = 0.0;

    fn is_negligible(&self) -> bool;

    /// Pivoting weight; only consulted for inexact fields.
    fn magnitude(&self) -> f64;

    /// Text form used in serialized matrices.
    fn render(&self) -> String;
}

impl Field for BigRational {
    const EXACT: bool = true;

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn magnitude(&self) -> f64 {
        0.0
    }

    fn render(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

macro_rules! impl_float_field {
    ($($t:ty),*) => {$(
        impl Field for $t {
            const EXACT: bool = false;
            const TOLERANCE: f64 = 1e-9;

            fn is_negligible(&self) -> bool {
                (*self as f64).abs() < Self::TOLERANCE
            }

            fn magnitude(&self) -> f64 {
                (*self as f64).abs()
            }

            fn render(&self) -> String {
                format!("{}", self)
            }
        }
    )*};
}

impl_float_field!(f32, f64);

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    let r = BigRational::new(p, q);
    Some(if r.denom().is_negative() { -r } else { r })
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Option<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n = rows.len();
        Some(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&v| F::from_i64(v).unwrap()).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = Matrix::<F>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_negligible() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(F::is_negligible)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let candidate = if F::EXACT {
                (lead..self.rows).find(|&r| !self.get(r, c).is_negligible())
            } else {
                (lead..self.rows)
                    .filter(|&r| !self.get(r, c).is_negligible())
                    .max_by(|&a, &b| {
                        self.get(a, c)
                            .magnitude()
                            .total_cmp(&self.get(b, c).magnitude())
                    })
            };
            let Some(p) = candidate else { continue };
            self.swap_rows(lead, p);
            let inv = F::one() / self.get(lead, c).clone();
            for j in c..self.cols {
                let v = self.get(lead, j).clone() * inv.clone();
                self.set(lead, j, v);
            }
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let factor = self.get(r, c).clone();
                if factor.is_negligible() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self.get(r, j).clone() - factor.clone() * self.get(lead, j).clone();
                    self.set(r, j, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{ v : self * v = 0 }`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -m.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// Rank of a set of vectors of common length `len`.
pub fn span_rank<F: Field>(vectors: &[Vec<F>], len: usize) -> usize {
    if vectors.is_empty() || len == 0 {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec(), len)
        .expect("vectors of equal length")
        .rank()
}
