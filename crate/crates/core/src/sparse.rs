//! Column-major sparse matrices and exact rank computation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("entry ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    OutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("duplicate entry at ({row}, {col})")]
    Duplicate { row: usize, col: usize },
    #[error("explicit zero at ({row}, {col})")]
    ExplicitZero { row: usize, col: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Sparse matrix stored by columns; each column is sorted by row index and
/// holds no explicit zeros.
#[derive(Clone, PartialEq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, T)>>,
}

impl<T: Clone + fmt::Debug> fmt::Debug for SparseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SparseMatrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("entries", &self.entries().collect::<Vec<_>>())
            .finish()
    }
}

impl<T: Clone> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Builds a matrix from `(row, col, value)` triplets, rejecting
    /// out-of-range indices, repeated positions and explicit zeros.
    pub fn from_entries<F>(
        field: &F,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Result<Self, MatrixError>
    where
        F: Field<Elem = T>,
    {
        let mut columns: Vec<Vec<(usize, T)>> = vec![Vec::new(); cols];
        for (row, col, value) in entries {
            if row >= rows || col >= cols {
                return Err(MatrixError::OutOfRange { row, col, rows, cols });
            }
            if field.is_zero(&value) {
                return Err(MatrixError::ExplicitZero { row, col });
            }
            columns[col].push((row, value));
        }
        for (col, column) in columns.iter_mut().enumerate() {
            column.sort_by_key(|(r, _)| *r);
            if let Some(w) = column.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(MatrixError::Duplicate { row: w[0].0, col });
            }
        }
        Ok(Self { rows, cols, columns })
    }

    /// Builds a matrix from already-sorted, zero-free columns.
    pub(crate) fn from_sorted_columns(rows: usize, columns: Vec<Vec<(usize, T)>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(columns.iter().all(|c| c.iter().all(|(r, _)| *r < rows)));
        Self { rows, cols: columns.len(), columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn column(&self, col: usize) -> &[(usize, T)] {
        &self.columns[col]
    }

    /// Entries in canonical order: by column, then by row.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&T> {
        let column = &self.columns[col];
        column
            .binary_search_by_key(&row, |(r, _)| *r)
            .ok()
            .map(|i| &column[i].1)
    }

    pub fn transpose(&self) -> Self {
        let mut columns: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                columns[*r].push((c, v.clone()));
            }
        }
        Self { rows: self.cols, cols: self.rows, columns }
    }

    /// `self * rhs` over `field`.
    pub fn mul<F: Field<Elem = T>>(&self, field: &F, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut columns = Vec::with_capacity(rhs.cols);
        let mut acc: Vec<Option<T>> = vec![None; self.rows];
        let mut touched = Vec::new();
        for rcol in &rhs.columns {
            for (k, b) in rcol {
                for (i, a) in &self.columns[*k] {
                    let term = field.mul(a, b);
                    match &mut acc[*i] {
                        Some(x) => *x = field.add(x, &term),
                        slot @ None => {
                            *slot = Some(term);
                            touched.push(*i);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::new();
            for &i in &touched {
                if let Some(x) = acc[i].take() {
                    if !field.is_zero(&x) {
                        out.push((i, x));
                    }
                }
            }
            touched.clear();
            columns.push(out);
        }
        Ok(Self { rows: self.rows, cols: rhs.cols, columns })
    }

    /// Dense row-major copy.
    pub fn to_dense(&self, zero: T) -> Vec<Vec<T>> {
        let mut dense = vec![vec![zero; self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            dense[r][c] = v.clone();
        }
        dense
    }
}

/// Outcome of a column reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub rank: usize,
    /// Lowest row index of every nonzero reduced column, in column order.
    pub pivot_rows: Vec<usize>,
}

fn skipped(skip: Option<&[bool]>, col: usize) -> bool {
    skip.is_some_and(|s| s.get(col).copied().unwrap_or(false))
}

/// `a - factor * b` on sorted sparse columns.
fn axpy<F: Field>(
    field: &F,
    a: &[(usize, F::Elem)],
    factor: &F::Elem,
    b: &[(usize, F::Elem)],
) -> Vec<(usize, F::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, field.neg(&field.mul(factor, &b[j].1))));
            j += 1;
        } else {
            let v = field.sub(&a[i].1, &field.mul(factor, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Standard low-pivot column reduction over a field.
pub fn reduce_over_field<F: Field>(
    field: &F,
    m: &SparseMatrix<F::Elem>,
    skip: Option<&[bool]>,
) -> Reduction {
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; m.rows];
    let mut reduced: Vec<Vec<(usize, F::Elem)>> = Vec::new();
    let mut pivot_rows = Vec::new();
    for c in 0..m.cols {
        if skipped(skip, c) {
            continue;
        }
        let mut col = m.columns[c].clone();
        while let Some((low, value)) = col.last().cloned() {
            match pivot_of_row[low] {
                Some(p) => col = axpy(field, &col, &value, &reduced[p]),
                None => {
                    let inv = field.inv(&value).expect("nonzero pivot");
                    for entry in &mut col {
                        entry.1 = field.mul(&entry.1, &inv);
                    }
                    pivot_of_row[low] = Some(reduced.len());
                    reduced.push(col);
                    pivot_rows.push(low);
                    break;
                }
            }
        }
    }
    Reduction { rank: pivot_rows.len(), pivot_rows }
}

/// Integer scalars usable by the fraction-free reduction. Machine integers
/// report overflow through the checked operations; `BigInt` never does.
pub trait ExactInt: Clone + Integer + Signed + CheckedMul + CheckedSub + fmt::Debug {}

impl<T: Clone + Integer + Signed + CheckedMul + CheckedSub + fmt::Debug> ExactInt for T {}

fn content<T: ExactInt>(col: &[(usize, T)]) -> T {
    col.iter().fold(T::zero(), |g, (_, v)| g.gcd(v))
}

fn make_primitive<T: ExactInt>(col: &mut [(usize, T)]) {
    let g = content(col);
    if !g.is_zero() && !g.is_one() {
        for entry in col.iter_mut() {
            entry.1 = entry.1.div_floor(&g);
        }
    }
}

/// `lead_b * a - lead_a * b`, or `None` on overflow.
fn cross_combine<T: ExactInt>(
    a: &[(usize, T)],
    lead_a: &T,
    b: &[(usize, T)],
    lead_b: &T,
) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push((a[i].0, lead_b.checked_mul(&a[i].1)?));
            i += 1;
        } else if take_b {
            out.push((b[j].0, T::zero().checked_sub(&lead_a.checked_mul(&b[j].1)?)?));
            j += 1;
        } else {
            let v = lead_b.checked_mul(&a[i].1)?.checked_sub(&lead_a.checked_mul(&b[j].1)?)?;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Fraction-free low-pivot column reduction over an integral domain.
///
/// A column is cleared against a stored pivot column by cross-multiplying
/// with the two leading entries; every column is kept primitive (content 1)
/// so entries stay small. Returns `None` if a checked operation overflows.
pub fn reduce_fraction_free<T: ExactInt>(
    rows: usize,
    columns: &[Vec<(usize, T)>],
    skip: Option<&[bool]>,
) -> Option<Reduction> {
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; rows];
    let mut reduced: Vec<Vec<(usize, T)>> = Vec::new();
    let mut pivot_rows = Vec::new();
    for (c, column) in columns.iter().enumerate() {
        if skipped(skip, c) {
            continue;
        }
        let mut col = column.clone();
        make_primitive(&mut col);
        while let Some((low, lead)) = col.last().cloned() {
            match pivot_of_row[low] {
                Some(p) => {
                    let pivot = &reduced[p];
                    let pivot_lead = &pivot.last().expect("stored pivots are nonzero").1;
                    let g = lead.gcd(pivot_lead);
                    let (a, b) = (lead.div_floor(&g), pivot_lead.div_floor(&g));
                    col = cross_combine(&col, &a, pivot, &b)?;
                    make_primitive(&mut col);
                }
                None => {
                    pivot_of_row[low] = Some(reduced.len());
                    reduced.push(col);
                    pivot_rows.push(low);
                    break;
                }
            }
        }
    }
    Some(Reduction { rank: pivot_rows.len(), pivot_rows })
}

/// Scales every column by the lcm of its denominators.
fn clear_denominators(m: &SparseMatrix<BigRational>) -> Vec<Vec<(usize, BigInt)>> {
    m.columns
        .iter()
        .map(|col| {
            let lcm = col.iter().fold(BigInt::one(), |l, (_, v)| l.lcm(v.denom()));
            col.iter()
                .map(|(r, v)| (*r, v.numer() * (&lcm / v.denom())))
                .collect()
        })
        .collect()
}

/// Exact rank over ℚ. Tries 64-bit arithmetic first and falls back to
/// big integers if any intermediate value overflows.
pub fn reduce_rational_fraction_free(
    m: &SparseMatrix<BigRational>,
    skip: Option<&[bool]>,
) -> Reduction {
    let big = clear_denominators(m);
    let small: Option<Vec<Vec<(usize, i64)>>> = big
        .iter()
        .map(|col| {
            col.iter()
                .map(|(r, v)| i64::try_from(v).ok().map(|x| (*r, x)))
                .collect()
        })
        .collect();
    if let Some(small) = small {
        if let Some(red) = reduce_fraction_free(m.rows, &small, skip) {
            return red;
        }
    }
    reduce_fraction_free(m.rows, &big, skip).expect("big integers do not overflow")
}

/// Rank of a dense integer matrix by Bareiss fraction-free elimination.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{NumField, PrimeField, Rationals};
    use num_rational::Ratio;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn identity_over_gf2_has_rank_two() {
        let f = PrimeField::new(2).unwrap();
        let m = SparseMatrix::from_entries(&f, 2, 2, [(0, 0, 1), (1, 1, 1)]).unwrap();
        assert_eq!(f.rank(&m), 2);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let m: SparseMatrix<BigRational> = SparseMatrix::zeros(3, 4);
        assert_eq!(Rationals.rank(&m), 0);
        assert_eq!(PrimeField::new(3).unwrap().rank(&SparseMatrix::<u32>::zeros(2, 0)), 0);
    }

    #[test]
    fn three_cycle_boundary_rank_two() {
        // edges 01, 02, 12 against vertices 0, 1, 2
        let entries = [
            (0, 0, q(-1)),
            (1, 0, q(1)),
            (0, 1, q(-1)),
            (2, 1, q(1)),
            (1, 2, q(-1)),
            (2, 2, q(1)),
        ];
        let m = SparseMatrix::from_entries(&Rationals, 3, 3, entries).unwrap();
        assert_eq!(Rationals.rank(&m), 2);
        assert_eq!(bareiss_rank(m.to_dense(q(0)).into_iter().map(|r| r.into_iter().map(|x| x.to_integer()).collect()).collect()), 2);
    }

    #[test]
    fn rejects_malformed_entries() {
        let f = PrimeField::new(5).unwrap();
        assert!(matches!(
            SparseMatrix::from_entries(&f, 2, 2, [(2, 0, 1)]),
            Err(MatrixError::OutOfRange { .. })
        ));
        assert!(matches!(
            SparseMatrix::from_entries(&f, 2, 2, [(0, 0, 1), (0, 0, 2)]),
            Err(MatrixError::Duplicate { row: 0, col: 0 })
        ));
        assert!(matches!(
            SparseMatrix::from_entries(&f, 2, 2, [(0, 1, 0)]),
            Err(MatrixError::ExplicitZero { .. })
        ));
    }

    #[test]
    fn characteristic_matters() {
        // [[1,1],[1,-1]] has determinant -2: singular mod 2, regular otherwise
        let entries = |f: &dyn Fn(i64) -> u32| vec![(0, 0, f(1)), (1, 0, f(1)), (0, 1, f(1)), (1, 1, f(-1))];
        let gf2 = PrimeField::new(2).unwrap();
        let gf3 = PrimeField::new(3).unwrap();
        let m2 = SparseMatrix::from_entries(&gf2, 2, 2, entries(&|x| gf2.from_i64(x))).unwrap();
        let m3 = SparseMatrix::from_entries(&gf3, 2, 2, entries(&|x| gf3.from_i64(x))).unwrap();
        assert_eq!(gf2.rank(&m2), 1);
        assert_eq!(gf3.rank(&m3), 2);
    }

    #[test]
    fn fraction_free_overflow_falls_back() {
        let big = i64::MAX / 2;
        let cols = vec![vec![(0usize, big), (1, 3)], vec![(0, 7), (1, big - 1)]];
        assert_eq!(reduce_fraction_free::<i64>(2, &cols, None), None);
        let bigcols: Vec<Vec<(usize, BigInt)>> = cols
            .iter()
            .map(|c| c.iter().map(|(r, v)| (*r, BigInt::from(*v))).collect())
            .collect();
        assert_eq!(reduce_fraction_free(2, &bigcols, None).unwrap().rank, 2);
    }

    #[test]
    fn non_integer_rationals_are_cleared() {
        let half = BigRational::new(1.into(), 2.into());
        let third = BigRational::new(1.into(), 3.into());
        let m = SparseMatrix::from_entries(
            &Rationals,
            2,
            2,
            [(0, 0, half.clone()), (1, 0, third.clone()), (0, 1, q(3)), (1, 1, q(2))],
        )
        .unwrap();
        // columns (1/2, 1/3) and (3, 2) are proportional
        assert_eq!(Rationals.rank(&m), 1);
        let nf = NumField::<Ratio<i64>>::new();
        let m2 = SparseMatrix::from_entries(
            &nf,
            2,
            2,
            [
                (0, 0, Ratio::new(1, 2)),
                (1, 0, Ratio::new(1, 3)),
                (0, 1, Ratio::from_integer(3)),
                (1, 1, Ratio::from_integer(2)),
            ],
        )
        .unwrap();
        assert_eq!(nf.rank(&m2), 1);
    }

    #[test]
    fn transpose_and_product_shapes() {
        let f = PrimeField::new(5).unwrap();
        let m = SparseMatrix::from_entries(&f, 2, 3, [(0, 0, 1), (1, 2, 4), (0, 1, 2)]).unwrap();
        let t = m.transpose();
        assert_eq!((t.rows(), t.cols()), (3, 2));
        assert_eq!(t.get(2, 1), Some(&4));
        let p = m.mul(&f, &t).unwrap();
        // row0·row0 = 1 + 4 = 5 = 0 mod 5
        assert_eq!(p.get(0, 0), None);
        assert_eq!(p.get(1, 1), Some(&1));
        assert!(m.mul(&f, &m).is_err());
        let order: Vec<_> = m.entries().map(|(r, c, _)| (c, r)).collect();
        let mut sorted = order.clone();
        sorted.sort();
        assert_eq!(order, sorted);
    }
}
