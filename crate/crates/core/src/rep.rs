//! Representations of a quiver over a field, with Hom and Ext dimensions
//! computed by exact linear algebra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{span_rank, Field, Matrix};
use crate::quiver::{DimVec, Quiver};

pub const DEFAULT_PROBE_BUDGET: u32 = 8;

/// Sampled matrix entries are drawn from `-SAMPLE_RANGE..=SAMPLE_RANGE`.
const SAMPLE_RANGE: i64 = 3;

/// A representation: one vector space per vertex and one matrix per arrow.
/// The matrix of arrow `a` has shape `dims[t(a)] x dims[s(a)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<F> {
    dims: DimVec,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> Representation<F> {
    pub fn new(quiver: &Quiver, dims: DimVec, maps: Vec<Matrix<F>>) -> Result<Self> {
        quiver.check_dim(&dims)?;
        if !dims.is_nonnegative() {
            return Err(Error::NegativeEntry {
                vector: dims.to_string(),
            });
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::DimensionMismatch {
                expected: quiver.arrows().len(),
                found: maps.len(),
            });
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            let (rows, cols) = (dims.at(a.target) as usize, dims.at(a.source) as usize);
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::DimensionMismatch {
                    expected: rows * cols,
                    found: m.rows() * m.cols(),
                });
            }
        }
        Ok(Representation { dims, maps })
    }

    pub fn zero(quiver: &Quiver) -> Self {
        Self::with_zero_maps(quiver, DimVec::zeros(quiver.vertex_count()))
    }

    /// The simple representation at vertex `i` (1-based).
    pub fn simple(quiver: &Quiver, i: usize) -> Self {
        Self::with_zero_maps(quiver, DimVec::simple(quiver.vertex_count(), i))
    }

    fn with_zero_maps(quiver: &Quiver, dims: DimVec) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims.at(a.target) as usize, dims.at(a.source) as usize))
            .collect();
        Representation { dims, maps }
    }

    pub fn dims(&self) -> &DimVec {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    fn dim_at(&self, i: usize) -> usize {
        self.dims.at(i) as usize
    }
}

/// A module homomorphism: one `N_i x M_i` matrix per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism<F> {
    pub components: Vec<Matrix<F>>,
}

fn check_pair<F: Field>(
    quiver: &Quiver,
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<()> {
    for r in [m, n] {
        quiver.check_dim(r.dims())?;
        if r.maps.len() != quiver.arrows().len() {
            return Err(Error::DimensionMismatch {
                expected: quiver.arrows().len(),
                found: r.maps.len(),
            });
        }
    }
    Ok(())
}

/// A basis of `Hom(M, N)`: the solutions of `phi_t M_a = N_a phi_s` for
/// every arrow `a: s -> t`.
pub fn hom_basis<F: Field>(
    quiver: &Quiver,
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<Vec<Morphism<F>>> {
    check_pair(quiver, m, n)?;
    let verts = quiver.vertex_count();
    let mut offset = vec![0usize; verts + 2];
    for i in 1..=verts {
        offset[i + 1] = offset[i] + n.dim_at(i) * m.dim_at(i);
    }
    let unknowns = offset[verts + 1];
    // unknown for phi_i[r][c]
    let var = |i: usize, r: usize, c: usize| offset[i] + r * m.dim_at(i) + c;

    let mut rows: Vec<Vec<F>> = Vec::new();
    for (arrow, (ma, na)) in quiver.arrows().iter().zip(m.maps.iter().zip(&n.maps)) {
        let (s, t) = (arrow.source, arrow.target);
        for r in 0..n.dim_at(t) {
            for c in 0..m.dim_at(s) {
                let mut eq = vec![F::zero(); unknowns];
                for k in 0..m.dim_at(t) {
                    let idx = var(t, r, k);
                    eq[idx] = eq[idx].clone() + ma.get(k, c).clone();
                }
                for k in 0..n.dim_at(s) {
                    let idx = var(s, k, c);
                    eq[idx] = eq[idx].clone() - na.get(r, k).clone();
                }
                rows.push(eq);
            }
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::<F>::zeros(0, unknowns).kernel()
    } else {
        Matrix::from_rows(rows, unknowns)
            .expect("equal-length equations")
            .kernel()
    };
    Ok(kernel
        .into_iter()
        .map(|sol| {
            let components = (1..=verts)
                .map(|i| {
                    let (rr, cc) = (n.dim_at(i), m.dim_at(i));
                    let mut mat = Matrix::zeros(rr, cc);
                    for r in 0..rr {
                        for c in 0..cc {
                            mat.set(r, c, sol[var(i, r, c)].clone());
                        }
                    }
                    mat
                })
                .collect();
            Morphism { components }
        })
        .collect())
}

pub fn hom_dim<F: Field>(
    quiver: &Quiver,
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<usize> {
    Ok(hom_basis(quiver, m, n)?.len())
}

/// `dim Ext^1(M, N) = dim Hom(M, N) - <dim M, dim N>`, valid because path
/// algebras of acyclic quivers are hereditary.
pub fn ext_dim<F: Field>(
    quiver: &Quiver,
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<usize> {
    let hom = hom_dim(quiver, m, n)? as i64;
    let value = hom - quiver.euler_form(m.dims(), n.dims())?;
    if value < 0 {
        return Err(Error::NegativeExt { value });
    }
    Ok(value as usize)
}

/// `End(M)` is one-dimensional and `Ext^1(M, M) = 0`.
pub fn is_exceptional<F: Field>(quiver: &Quiver, m: &Representation<F>) -> Result<bool> {
    Ok(!m.is_zero() && hom_dim(quiver, m, m)? == 1 && ext_dim(quiver, m, m)? == 0)
}

/// Dimension vector of the trace of `generators` in `x`: the sum of the
/// images of all homomorphisms from a generator to `x`.
pub fn trace_dims<F: Field>(
    quiver: &Quiver,
    generators: &[&Representation<F>],
    x: &Representation<F>,
) -> Result<DimVec> {
    let verts = quiver.vertex_count();
    let mut images: Vec<Vec<Vec<F>>> = vec![Vec::new(); verts];
    for g in generators {
        if g.is_zero() {
            continue;
        }
        for phi in hom_basis(quiver, g, x)? {
            for (i, comp) in phi.components.iter().enumerate() {
                for c in 0..comp.cols() {
                    images[i].push(comp.column(c));
                }
            }
        }
    }
    Ok(DimVec::new(
        images
            .iter()
            .enumerate()
            .map(|(i, vs)| span_rank(vs, x.dim_at(i + 1)) as i64)
            .collect(),
    ))
}

/// Whether `x` is a quotient of a finite direct sum of `generators`.
pub fn is_generated_by<F: Field>(
    quiver: &Quiver,
    generators: &[&Representation<F>],
    x: &Representation<F>,
) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    Ok(&trace_dims(quiver, generators, x)? == x.dims())
}

/// Seed for the `attempt`-th sample of dimension `alpha`, mixing the quiver
/// shape so different quivers draw different matrices.
pub fn derive_seed(quiver: &Quiver, alpha: &DimVec, seed: u64, attempt: u32) -> u64 {
    fn mix(h: u64, v: u64) -> u64 {
        // splitmix64 finalizer
        let mut z = h ^ v.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    let mut h = mix(0, quiver.vertex_count() as u64);
    for a in quiver.arrows() {
        h = mix(h, ((a.source as u64) << 32) | a.target as u64);
    }
    for &x in alpha.as_slice() {
        h = mix(h, x as u64);
    }
    h = mix(h, seed);
    mix(h, attempt as u64)
}

/// Draws random small-integer representations of dimension `alpha` until
/// one is exceptional. Deterministic in `(quiver, alpha, seed)`.
pub fn sample_exceptional<F: Field>(
    quiver: &Quiver,
    alpha: &DimVec,
    seed: u64,
    budget: u32,
) -> Result<Representation<F>> {
    quiver.check_dim(alpha)?;
    let exhausted = |seeds_tried: u32, reason: String| Error::ProbeExhausted {
        alpha: alpha.to_string(),
        budget,
        seeds_tried,
        reason,
    };
    if !alpha.is_positive() {
        return Err(exhausted(0, "dimension vector is not positive".into()));
    }
    let q = quiver.tits_form(alpha)?;
    if q != 1 {
        return Err(exhausted(0, format!("Tits form is {q}, not 1")));
    }
    for attempt in 0..budget {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(quiver, alpha, seed, attempt));
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| {
                let (rows, cols) = (alpha.at(a.target) as usize, alpha.at(a.source) as usize);
                let entries: Vec<i64> = (0..rows * cols)
                    .map(|_| rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE))
                    .collect();
                Matrix::from_i64(rows, cols, &entries)
            })
            .collect();
        let rep = Representation::new(quiver, alpha.clone(), maps)?;
        if is_exceptional(quiver, &rep)? {
            return Ok(rep);
        }
    }
    Err(exhausted(budget, "no sample was exceptional".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::standard::*;
    use num_rational::BigRational;

    type Rep = Representation<BigRational>;

    fn v(x: &[i64]) -> DimVec {
        DimVec::new(x.to_vec())
    }

    fn a2_indecomposable() -> Rep {
        let q = linear_a(2);
        Rep::new(&q, v(&[1, 1]), vec![Matrix::from_i64(1, 1, &[1])]).unwrap()
    }

    #[test]
    fn hom_dims_on_a2() {
        let q = linear_a(2);
        let m = a2_indecomposable();
        let s1 = Rep::simple(&q, 1);
        let s2 = Rep::simple(&q, 2);
        assert_eq!(hom_dim(&q, &m, &s1).unwrap(), 1);
        assert_eq!(hom_dim(&q, &s1, &s2).unwrap(), 0);
        assert_eq!(hom_dim(&q, &m, &m).unwrap(), 1);
        assert_eq!(hom_dim(&q, &s2, &m).unwrap(), 1);
        assert_eq!(hom_dim(&q, &s1, &m).unwrap(), 0);
    }

    #[test]
    fn ext_dims_on_a2() {
        let q = linear_a(2);
        let m = a2_indecomposable();
        let s1 = Rep::simple(&q, 1);
        let s2 = Rep::simple(&q, 2);
        assert_eq!(ext_dim(&q, &s1, &s2).unwrap(), 1);
        assert_eq!(ext_dim(&q, &m, &m).unwrap(), 0);
        assert_eq!(ext_dim(&q, &s2, &s1).unwrap(), 0);
    }

    #[test]
    fn decomposable_is_not_exceptional() {
        let q = linear_a(2);
        let split = Rep::new(&q, v(&[1, 1]), vec![Matrix::from_i64(1, 1, &[0])]).unwrap();
        assert_eq!(hom_dim(&q, &split, &split).unwrap(), 2);
        assert!(!is_exceptional(&q, &split).unwrap());
    }

    #[test]
    fn shape_errors() {
        let q = linear_a(2);
        assert!(Rep::new(&q, v(&[1, 1]), vec![Matrix::from_i64(1, 2, &[1, 1])]).is_err());
        assert!(Rep::new(&q, v(&[1, 1]), vec![]).is_err());
        let other = Rep::simple(&linear_a(3), 1);
        assert!(matches!(
            hom_dim(&q, &other, &Rep::simple(&q, 1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sampling_examples() {
        let q = linear_a(2);
        let s: Rep = sample_exceptional(&q, &v(&[1, 0]), 0, DEFAULT_PROBE_BUDGET).unwrap();
        assert_eq!(s, Rep::simple(&q, 1));
        let m: Rep = sample_exceptional(&q, &v(&[1, 1]), 0, DEFAULT_PROBE_BUDGET).unwrap();
        assert!(!m.maps()[0].is_zero_matrix());
        assert_eq!(hom_dim(&q, &m, &m).unwrap(), 1);
        let err = sample_exceptional::<BigRational>(&q, &v(&[2, 1]), 0, DEFAULT_PROBE_BUDGET)
            .unwrap_err();
        assert!(matches!(err, Error::ProbeExhausted { seeds_tried: 0, .. }));
        // deterministic
        let again: Rep = sample_exceptional(&q, &v(&[1, 1]), 0, DEFAULT_PROBE_BUDGET).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn kronecker_preprojective_is_exceptional() {
        let q = kronecker();
        for alpha in [v(&[1, 2]), v(&[2, 3]), v(&[3, 2])] {
            let m: Rep = sample_exceptional(&q, &alpha, 0, DEFAULT_PROBE_BUDGET).unwrap();
            assert!(is_exceptional(&q, &m).unwrap());
        }
        // (1,1) is an imaginary root: filtered
        assert!(sample_exceptional::<BigRational>(&q, &v(&[1, 1]), 0, 8).is_err());
    }

    #[test]
    fn trace_on_a2() {
        let q = linear_a(2);
        let m = a2_indecomposable();
        let s1 = Rep::simple(&q, 1);
        let s2 = Rep::simple(&q, 2);
        assert!(is_generated_by(&q, &[&m], &s1).unwrap());
        assert!(!is_generated_by(&q, &[&m], &s2).unwrap());
        assert!(is_generated_by(&q, &[&s2], &s2).unwrap());
        assert_eq!(trace_dims(&q, &[&s2], &m).unwrap(), v(&[0, 1]));
        assert!(is_generated_by(&q, &[&s1], &Rep::zero(&q)).unwrap());
    }

    #[test]
    fn float_field_matches_exact_hom_dims() {
        let q = d(4);
        let alpha = v(&[1, 2, 1, 1]);
        let exact: Rep = sample_exceptional(&q, &alpha, 3, 8).unwrap();
        let float: Representation<f64> = sample_exceptional(&q, &alpha, 3, 8).unwrap();
        assert_eq!(
            hom_dim(&q, &float, &float).unwrap(),
            hom_dim(&q, &exact, &exact).unwrap()
        );
    }

    #[test]
    fn euler_identity_on_samples() {
        let q = linear_a(3);
        let roots = crate::roots::positive_real_roots(&q, None).unwrap();
        let reps: Vec<Rep> = roots
            .roots
            .iter()
            .map(|a| sample_exceptional(&q, a, 7, 8).unwrap())
            .collect();
        for m in &reps {
            for n in &reps {
                let h = hom_dim(&q, m, n).unwrap() as i64;
                let e = ext_dim(&q, m, n).unwrap() as i64;
                assert_eq!(h - e, q.euler_form(m.dims(), n.dims()).unwrap());
            }
        }
    }
}
