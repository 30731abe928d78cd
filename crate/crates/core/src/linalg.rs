//! Dense linear algebra over exact rationals.
//!
//! Everything here is decided without tolerances: rank, row-basis selection
//! and coordinates are computed with arbitrary-precision fractions, so the
//! rank identities used by the decomposition code are exact.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Row-major dense matrix of [`Rational`] entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows. All rows must share the same length;
    /// `cols` fixes the width when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Self {
            rows: n,
            cols,
            data,
        })
    }

    /// Convenience constructor from integer rows; panics on ragged input.
    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| int(v)).collect())
            .collect();
        Self::from_rows(rows, cols).expect("ragged integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix made of the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Self {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Matrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Entries as `i64` when every entry is an integer that fits.
    pub fn to_int_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|v| {
                        if v.is_integer() {
                            v.to_integer().to_i64()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "\n  [{}]", row.join(", "))?;
        }
        write!(f, "\n]")
    }
}

/// Reduced row-echelon form of `m` and its pivot columns.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..a.cols {
        if lead == a.rows {
            break;
        }
        let Some(p) = (lead..a.rows).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        swap_rows(&mut a, lead, p);
        let inv = a[(lead, col)].recip();
        for j in col..a.cols {
            let v = &a[(lead, j)] * &inv;
            a[(lead, j)] = v;
        }
        for i in 0..a.rows {
            if i == lead || a[(i, col)].is_zero() {
                continue;
            }
            let factor = a[(i, col)].clone();
            for j in col..a.cols {
                let delta = &factor * &a[(lead, j)];
                a[(i, j)] -= delta;
            }
        }
        pivots.push(col);
        lead += 1;
    }
    (a, pivots)
}

fn swap_rows(a: &mut RationalMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols {
        a.data.swap(i * a.cols + c, j * a.cols + c);
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    rref(m).1.len()
}

/// A maximal linearly independent set of rows, chosen greedily in row order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisSelection {
    basis_rows: Vec<usize>,
}

impl BasisSelection {
    /// Validates a hand-picked basis: the rows must be distinct, strictly
    /// increasing, linearly independent and span the row space of `m`.
    pub fn from_rows(m: &RationalMatrix, rows: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = rows.iter().find(|&&i| i >= m.rows()) {
            return Err(Error::InvalidBasis(format!("row {bad} out of range")));
        }
        if rows.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidBasis(
                "rows must be strictly increasing".into(),
            ));
        }
        let sub = rank(&m.select_rows(&rows));
        if sub != rows.len() {
            return Err(Error::DependentBasis);
        }
        let full = rank(m);
        if sub != full {
            return Err(Error::InvalidBasis(format!(
                "{sub} rows do not span a row space of dimension {full}"
            )));
        }
        Ok(Self { basis_rows: rows })
    }

    pub fn basis_rows(&self) -> &[usize] {
        &self.basis_rows
    }

    pub fn rank(&self) -> usize {
        self.basis_rows.len()
    }

    pub fn contains(&self, row: usize) -> bool {
        self.basis_rows.binary_search(&row).is_ok()
    }
}

/// Greedy scan: a row joins the basis iff it is not in the span of the rows
/// already selected.
pub fn select_basis_rows(m: &RationalMatrix) -> BasisSelection {
    // Reduced rows kept in echelon form, each with its pivot column.
    let mut echelon: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut basis_rows = Vec::new();
    for i in 0..m.rows() {
        let mut v = m.row(i).to_vec();
        for (pivot, e) in &echelon {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, y) in v.iter_mut().zip(e) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        if let Some(pivot) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[pivot].recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            // Keep earlier rows reduced against the new pivot.
            for (_, e) in echelon.iter_mut() {
                if e[pivot].is_zero() {
                    continue;
                }
                let factor = e[pivot].clone();
                for (x, y) in e.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= &factor * y;
                    }
                }
            }
            echelon.push((pivot, v));
            basis_rows.push(i);
        }
    }
    BasisSelection { basis_rows }
}

/// Coefficients `a` with `v = Σ a_j · basis_j`.
///
/// The basis vectors must be linearly independent, which makes the
/// coefficients unique.
pub fn coordinates(v: &[Rational], basis: &[&[Rational]]) -> Result<Vec<Rational>> {
    let dim = v.len();
    if let Some(b) = basis.iter().find(|b| b.len() != dim) {
        return Err(Error::Dimension(format!(
            "basis vector has length {}, expected {dim}",
            b.len()
        )));
    }
    let p = basis.len();
    // Augmented system [B^T | v], one equation per coordinate of v.
    let mut aug = RationalMatrix::zeros(dim, p + 1);
    for (j, b) in basis.iter().enumerate() {
        for (i, x) in b.iter().enumerate() {
            aug[(i, j)] = x.clone();
        }
    }
    for (i, x) in v.iter().enumerate() {
        aug[(i, p)] = x.clone();
    }
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&p) {
        return Err(Error::NotInSpan);
    }
    if pivots.len() != p {
        return Err(Error::DependentBasis);
    }
    Ok((0..p).map(|k| r[(k, p)].clone()).collect())
}

/// Renders a rational compactly: integers as integers, fractions as `a/b`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `Σ coeffs_j · vectors_j`, used to check recompositions exactly.
pub fn combine(coeffs: &[Rational], vectors: &[&[Rational]]) -> Vec<Rational> {
    let dim = vectors.first().map_or(0, |v| v.len());
    let mut out = vec![Rational::zero(); dim];
    for (a, v) in coeffs.iter().zip(vectors) {
        if a.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v.iter()) {
            *o += a * x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let id = RationalMatrix::identity(3);
        let (r, pivots) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_of_proportional_rows() {
        let m = RationalMatrix::from_int_rows(&[[1, 2], [2, 4]]);
        let (r, pivots) = rref(&m);
        assert_eq!(r, RationalMatrix::from_int_rows(&[[1, 2], [0, 0]]));
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn rref_produces_fractions() {
        let m = RationalMatrix::from_int_rows(&[[2, 1], [4, 3]]);
        let (r, _) = rref(&m);
        assert_eq!(r, RationalMatrix::identity(2));
        let m = RationalMatrix::from_int_rows(&[[3, 1]]);
        let (r, _) = rref(&m);
        assert_eq!(r[(0, 1)], q(1, 3));
    }

    #[test]
    fn rank_of_degenerate_shapes() {
        assert_eq!(rank(&RationalMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&RationalMatrix::zeros(0, 4)), 0);
        assert_eq!(rank(&RationalMatrix::zeros(4, 0)), 0);
    }

    #[test]
    fn basis_of_multiples_keeps_first_row() {
        let m = RationalMatrix::from_int_rows(&[[1, -1, 2], [2, -2, 4]]);
        assert_eq!(select_basis_rows(&m).basis_rows(), &[0]);
    }

    #[test]
    fn basis_skips_zero_rows() {
        let m = RationalMatrix::from_int_rows(&[[0, 0], [0, 1], [0, 3], [1, 1]]);
        assert_eq!(select_basis_rows(&m).basis_rows(), &[1, 3]);
    }

    #[test]
    fn coordinates_not_in_span() {
        let b0 = vec![int(1), int(0), int(0)];
        let b1 = vec![int(0), int(1), int(0)];
        let v = vec![int(1), int(1), int(1)];
        assert_eq!(coordinates(&v, &[&b0, &b1]), Err(Error::NotInSpan));
    }

    #[test]
    fn coordinates_with_fractions() {
        let b0 = vec![int(2), int(0)];
        let b1 = vec![int(1), int(3)];
        let v = vec![int(1), int(1)];
        let a = coordinates(&v, &[&b0, &b1]).unwrap();
        assert_eq!(a, vec![q(1, 3), q(1, 3)]);
        assert_eq!(combine(&a, &[&b0, &b1]), v);
    }

    #[test]
    fn coordinates_rejects_dependent_basis() {
        let b0 = vec![int(1), int(1)];
        let b1 = vec![int(2), int(2)];
        let v = vec![int(3), int(3)];
        assert_eq!(coordinates(&v, &[&b0, &b1]), Err(Error::DependentBasis));
    }

    #[test]
    fn from_rows_validation() {
        let m = RationalMatrix::from_int_rows(&[[1, 0], [0, 1], [1, 1]]);
        assert!(BasisSelection::from_rows(&m, vec![0, 2]).is_ok());
        assert_eq!(
            BasisSelection::from_rows(&m, vec![0]).unwrap_err(),
            Error::InvalidBasis("1 rows do not span a row space of dimension 2".into())
        );
        assert!(matches!(
            BasisSelection::from_rows(&m, vec![2, 0]),
            Err(Error::InvalidBasis(_))
        ));
        assert!(matches!(
            BasisSelection::from_rows(&m, vec![0, 5]),
            Err(Error::InvalidBasis(_))
        ));
        let dep = RationalMatrix::from_int_rows(&[[1, 1], [2, 2], [0, 1]]);
        assert_eq!(
            BasisSelection::from_rows(&dep, vec![0, 1]),
            Err(Error::DependentBasis)
        );
    }

    #[test]
    fn product_and_transpose() {
        let a = RationalMatrix::from_int_rows(&[[1, 2], [3, 4]]);
        let b = RationalMatrix::from_int_rows(&[[0, 1], [1, 0]]);
        assert_eq!(&a * &b, RationalMatrix::from_int_rows(&[[2, 1], [4, 3]]));
        assert_eq!(
            a.transpose(),
            RationalMatrix::from_int_rows(&[[1, 3], [2, 4]])
        );
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&int(-3)), "-3");
        assert_eq!(format_rational(&q(-2, 4)), "-1/2");
    }
}
