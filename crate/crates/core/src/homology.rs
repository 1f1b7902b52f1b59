//! Exact reduced and relative simplicial homology over a field.
//!
//! Betti numbers come from ranks of boundary matrices. Ranks are computed
//! from the top degree down so that the pivot rows found in `∂_{k+1}` can be
//! dropped from `∂_k` before reducing it (those columns are known to be
//! dependent on earlier ones).
//!
//! Relative homology is **unreduced**: the quotient complex has no
//! augmentation and its degree −1 entry is always 0. Everything else in this
//! module is reduced.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{ComplexError, Simplex, SimplicialComplex};
use crate::field::{with_field, Field, FieldSpec, PrimeField};
use crate::sparse::{MatrixError, SparseMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("entry {value} has no image in {field}")]
    NotReducible { value: String, field: FieldSpec },
}

/// Reduced Betti numbers indexed by degree, starting at degree −1.
///
/// Equality ignores trailing zeros, so vectors of complexes of different
/// dimensions compare by their homology alone.
#[derive(Debug, Clone, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    /// `values[0]` is degree −1.
    values: Vec<usize>,
}

impl BettiVector {
    /// `values[0]` is degree −1.
    pub fn from_values(values: Vec<usize>) -> Self {
        let mut values = values;
        if values.is_empty() {
            values.push(0);
        }
        Self { values }
    }

    /// Reduced Betti numbers of degrees 0, 1, … of a nonempty complex.
    pub fn nonempty(degrees: &[usize]) -> Self {
        let mut values = vec![0];
        values.extend_from_slice(degrees);
        Self { values }
    }

    /// The n-sphere: a single 1 in degree n. `sphere(-1)` is the empty complex.
    pub fn sphere(n: isize) -> Self {
        let mut values = vec![0; (n + 2).max(1) as usize];
        values[(n + 1) as usize] = 1;
        Self { values }
    }

    /// All reduced Betti numbers zero (a nonempty acyclic complex).
    pub fn acyclic() -> Self {
        Self { values: vec![0] }
    }

    pub fn get(&self, degree: isize) -> usize {
        if degree < -1 {
            return 0;
        }
        self.values.get((degree + 1) as usize).copied().unwrap_or(0)
    }

    /// Values from degree −1 upward.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Highest degree stored.
    pub fn top_degree(&self) -> isize {
        self.values.len() as isize - 2
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&b| b == 0)
    }

    /// Σ_{k≥0} (−1)^k β̃_k.
    pub fn reduced_euler(&self) -> i64 {
        self.values
            .iter()
            .skip(1)
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    fn trimmed(&self) -> &[usize] {
        let end = self.values.iter().rposition(|&b| b != 0).map_or(0, |i| i + 1);
        &self.values[..end]
    }
}

impl PartialEq for BettiVector {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl fmt::Display for BettiVector {
    /// `(β̃₀, β̃₁, …)`; the empty complex prints as `empty (β̃₋₁ = 1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values[0] != 0 {
            return write!(f, "empty (b-1 = {})", self.values[0]);
        }
        let rest: Vec<String> = self.values[1..].iter().map(ToString::to_string).collect();
        write!(f, "({})", rest.join(", "))
    }
}

/// Boundary operators of an (augmented or relative) chain complex.
#[derive(Debug, Clone)]
pub struct ChainComplexMatrices<F: Field> {
    pub field: F,
    /// Chain group dimensions from degree −1 upward.
    pub dims: Vec<usize>,
    /// `boundaries[k]` is `∂_k : C_k → C_{k−1}` for k = 0..=n.
    pub boundaries: Vec<SparseMatrix<F::Elem>>,
}

impl<F: Field> ChainComplexMatrices<F> {
    pub fn boundary(&self, k: usize) -> &SparseMatrix<F::Elem> {
        &self.boundaries[k]
    }

    /// Whether `∂_k ∘ ∂_{k+1} = 0` for every k.
    pub fn composes_to_zero(&self) -> bool {
        self.boundaries.windows(2).all(|w| {
            w[0].mul(&self.field, &w[1]).map(|p| p.is_zero()).unwrap_or(false)
        })
    }

    pub fn betti(&self) -> BettiVector {
        let n = self.boundaries.len();
        let mut ranks = vec![0usize; n + 1];
        let mut skip: Option<Vec<bool>> = None;
        for k in (0..n).rev() {
            let m = &self.boundaries[k];
            let red = self.field.reduce(m, skip.as_deref());
            ranks[k] = red.rank;
            let mut mask = vec![false; m.rows()];
            for r in red.pivot_rows {
                mask[r] = true;
            }
            skip = Some(mask);
        }
        // degree k sits at dims[k + 1]; ∂_k has index k, ∂_{-1} is zero
        let values = (0..self.dims.len())
            .map(|i| {
                let rank_out = if i == 0 { 0 } else { ranks[i - 1] };
                let rank_in = ranks.get(i).copied().unwrap_or(0);
                self.dims[i] - rank_out - rank_in
            })
            .collect();
        BettiVector::from_values(values)
    }
}

/// `∂_k` restricted to the given columns and rows (faces absent from `rows`
/// are dropped, which is the quotient boundary when `rows` omits a
/// subcomplex).
fn boundary_block<F: Field>(field: &F, cols: &[Simplex], rows: &[Simplex]) -> SparseMatrix<F::Elem> {
    let plus = field.one();
    let minus = field.neg(&plus);
    let columns = cols
        .iter()
        .map(|s| {
            s.boundary_faces()
                .enumerate()
                .filter_map(|(i, face)| {
                    let r = rows.binary_search(&face).ok()?;
                    let sign = if i % 2 == 0 { plus.clone() } else { minus.clone() };
                    (!field.is_zero(&sign)).then_some((r, sign))
                })
                .collect::<Vec<_>>()
        })
        .map(|mut col| {
            col.sort_by_key(|(r, _)| *r);
            col
        })
        .collect();
    SparseMatrix::from_sorted_columns(rows.len(), columns)
}

/// Augmented boundary matrices of `k` over a concrete field.
pub fn boundary_matrices_with<F: Field>(k: &SimplicialComplex, field: &F) -> ChainComplexMatrices<F> {
    let dim = k.dim();
    let mut dims = vec![1];
    let mut boundaries = Vec::new();
    if dim < 0 {
        return ChainComplexMatrices { field: field.clone(), dims, boundaries };
    }
    for d in 0..=dim {
        let cols = k.faces(d).expect("degree in range");
        let rows = k.faces(d - 1).expect("degree in range");
        dims.push(cols.len());
        boundaries.push(boundary_block(field, cols, rows));
    }
    ChainComplexMatrices { field: field.clone(), dims, boundaries }
}

pub fn reduced_betti_with<F: Field>(k: &SimplicialComplex, field: &F) -> BettiVector {
    boundary_matrices_with(k, field).betti()
}

/// Reduced Betti numbers of `k` over `field`.
pub fn reduced_betti(k: &SimplicialComplex, field: FieldSpec) -> BettiVector {
    with_field!(field, |f| reduced_betti_with(k, &f))
}

/// β̃_degree(K) alone, touching only `∂_degree` and `∂_{degree+1}`.
pub fn reduced_betti_degree(k: &SimplicialComplex, field: FieldSpec, degree: isize) -> usize {
    with_field!(field, |f| betti_degree_with(k, &f, degree))
}

fn betti_degree_with<F: Field>(k: &SimplicialComplex, field: &F, degree: isize) -> usize {
    let dim = k.dim();
    if degree < -1 || degree > dim {
        return 0;
    }
    if degree == -1 {
        return usize::from(k.is_empty());
    }
    let cols = k.faces(degree).expect("degree in range");
    let (rank_in, skip) = if degree < dim {
        let upper = boundary_block(field, k.faces(degree + 1).expect("degree in range"), cols);
        let red = field.reduce(&upper, None);
        let mut mask = vec![false; cols.len()];
        for r in &red.pivot_rows {
            mask[*r] = true;
        }
        (red.rank, Some(mask))
    } else {
        (0, None)
    };
    let lower = boundary_block(field, cols, k.faces(degree - 1).expect("degree in range"));
    let rank_out = field.reduce(&lower, skip.as_deref()).rank;
    cols.len() - rank_out - rank_in
}

/// Nonempty with every reduced Betti number zero.
pub fn is_acyclic(k: &SimplicialComplex, field: FieldSpec) -> bool {
    !k.is_empty() && reduced_betti(k, field).is_zero()
}

/// Boundary matrices of the quotient chain complex C(K)/C(L).
pub fn relative_matrices_with<F: Field>(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    field: &F,
) -> Result<ChainComplexMatrices<F>, HomologyError> {
    let l = l.rebased_onto(k)?;
    if let Some(bad) = l.facets().iter().find(|f| !k.contains_face(f)) {
        return Err(ComplexError::NotSubcomplex(format!("{:?}", l.labels_of(bad))).into());
    }
    let dim = k.dim();
    let mut dims = vec![0];
    let mut boundaries = Vec::new();
    let mut prev: Vec<Simplex> = Vec::new();
    for d in 0..=dim {
        let faces: Vec<Simplex> = k
            .faces(d)
            .expect("degree in range")
            .iter()
            .filter(|s| !l.contains_face(s))
            .cloned()
            .collect();
        dims.push(faces.len());
        let m = if d == 0 {
            SparseMatrix::zeros(0, faces.len())
        } else {
            boundary_block(field, &faces, &prev)
        };
        boundaries.push(m);
        prev = faces;
    }
    Ok(ChainComplexMatrices { field: field.clone(), dims, boundaries })
}

/// Betti numbers of the pair (K, L). Unreduced: (K, ∅) gives the ordinary
/// Betti numbers of K, and the degree −1 entry is 0.
pub fn relative_betti(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    field: FieldSpec,
) -> Result<BettiVector, HomologyError> {
    with_field!(field, |f| Ok(relative_matrices_with(k, l, &f)?.betti()))
}

/// Rank of a rational matrix after mapping it into `field`.
pub fn field_rank(m: &SparseMatrix<BigRational>, field: FieldSpec) -> Result<usize, HomologyError> {
    match field {
        FieldSpec::Rationals => Ok(crate::field::Rationals.rank(m)),
        FieldSpec::Prime(p) => {
            let f = PrimeField::new(p as u64).expect("checked prime");
            let modulus = BigInt::from(p);
            let mut entries = Vec::new();
            for (r, c, v) in m.entries() {
                let den = v.denom().mod_floor(&modulus);
                if den.is_zero() {
                    return Err(HomologyError::NotReducible { value: v.to_string(), field });
                }
                let num = v.numer().mod_floor(&modulus).to_i64().expect("reduced mod p");
                let den = den.to_u32().expect("reduced mod p");
                let x = f.mul(&f.from_i64(num), &f.inv(&den).expect("nonzero"));
                if x != 0 {
                    entries.push((r, c, x));
                }
            }
            let reduced = SparseMatrix::from_entries(&f, m.rows(), m.cols(), entries)?;
            Ok(f.rank(&reduced))
        }
    }
}
