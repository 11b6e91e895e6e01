//! Exact integer matrices: determinants, Smith invariant factors and the
//! lattice spanning test.
//!
//! Everything here is generic over [`LatticeScalar`]. Use `BigInt` (the
//! crate-level [`IntMatrix`](crate::IntMatrix) alias) when entries can grow;
//! `i64`/`i128` are fine for small matrices and are much faster.

use std::fmt::{self, Debug, Display};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Exact signed integer type usable as a matrix entry.
pub trait LatticeScalar:
    Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + FromStr + Send + Sync
{
}

impl<T> LatticeScalar for T where
    T: Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + FromStr + Send + Sync
{
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: LatticeScalar> ZMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// A matrix with `cols` columns from a list of rows. An empty list gives a
    /// `0 x cols` matrix.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Ragged { row: i + 1, expected: cols, found: row.len() });
            }
            data.extend(row);
        }
        Ok(ZMatrix { rows: n, cols, data })
    }

    /// Convenience constructor from small literals; the column count is
    /// taken from the first row.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| T::from_i64(x).expect("i64 fits")).collect())
            .collect();
        Self::from_rows(cols, rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// The submatrix made of the listed rows, in the given order.
    pub fn select_rows(&self, rows: impl IntoIterator<Item = usize>) -> Self {
        let mut data = Vec::new();
        let mut n = 0;
        for i in rows {
            data.extend_from_slice(self.row(i));
            n += 1;
        }
        ZMatrix { rows: n, cols: self.cols, data }
    }

    /// The submatrix made of the listed columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        ZMatrix { rows: self.rows, cols: cols.len(), data }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Converts entries to another scalar type.
    pub fn convert<U: LatticeScalar>(&self) -> Option<ZMatrix<U>> {
        let data = self
            .data
            .iter()
            .map(|x| x.to_i128().and_then(U::from_i128))
            .collect::<Option<Vec<U>>>()?;
        Some(ZMatrix { rows: self.rows, cols: self.cols, data })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl<T: LatticeScalar> Display for ZMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det_exact<T: LatticeScalar>(m: &ZMatrix<T>) -> Result<T> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let value = (a.get(i, j).clone() * pivot.clone() - a.get(i, k).clone() * a.get(k, j).clone()) / prev.clone();
                a.set(i, j, value);
            }
        }
        prev = pivot;
    }
    let det = a.get(n - 1, n - 1).clone();
    Ok(if negate { -det } else { det })
}

/// Smith invariant factors `d_1 | d_2 | ...`, nonnegative, zeros last. The
/// list has `min(rows, cols)` entries.
///
/// Pivot rule: smallest nonzero absolute value in the active block, ties
/// broken by row-major position.
pub fn smith_invariant_factors<T: LatticeScalar>(m: &ZMatrix<T>) -> Vec<T> {
    let (r, c) = (m.rows, m.cols);
    let n = r.min(c);
    let mut a = m.clone();
    let mut factors = Vec::with_capacity(n);
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        let p = a.get(t, t).clone();

        let mut clean = true;
        for i in t + 1..r {
            let q = a.get(i, t).div_floor(&p);
            if !q.is_zero() {
                for j in t..c {
                    let v = a.get(i, j).clone() - q.clone() * a.get(t, j).clone();
                    a.set(i, j, v);
                }
            }
            clean &= a.get(i, t).is_zero();
        }
        for j in t + 1..c {
            let q = a.get(t, j).div_floor(&p);
            if !q.is_zero() {
                for i in t..r {
                    let v = a.get(i, j).clone() - q.clone() * a.get(i, t).clone();
                    a.set(i, j, v);
                }
            }
            clean &= a.get(t, j).is_zero();
        }
        if !clean {
            // A nonzero remainder smaller than |p| is now in the block.
            continue;
        }
        let offender = (t + 1..r)
            .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
            .find(|&(i, j)| !a.get(i, j).is_multiple_of(&p));
        if let Some((i, _)) = offender {
            for j in t..c {
                let v = a.get(t, j).clone() + a.get(i, j).clone();
                a.set(t, j, v);
            }
            continue;
        }
        factors.push(p.abs());
        t += 1;
    }
    factors.resize(n, T::zero());
    factors
}

fn smallest_nonzero<T: LatticeScalar>(a: &ZMatrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|b| abs < b.2) {
                best = Some((i, j, abs));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// True iff the rows generate the whole lattice `Z^k`, `k` the column count:
/// rank `k` and every invariant factor equal to one.
pub fn rows_span_lattice<T: LatticeScalar>(rows: &ZMatrix<T>) -> bool {
    let k = rows.cols;
    if rows.rows < k {
        return false;
    }
    smith_invariant_factors(rows).iter().all(|d| d.is_one())
}

/// The `n x n` 0/1 matrix whose entry `(i, j)` is bit `i * n + j` of `code`.
pub fn zero_one_matrix<T: LatticeScalar>(n: usize, code: u64) -> ZMatrix<T> {
    let mut m = ZMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if code >> (i * n + j) & 1 == 1 {
                m.set(i, j, T::one());
            }
        }
    }
    m
}

/// Scans every `n x n` 0/1 matrix in order of its bit code and returns the
/// first one whose determinant is odd but not `±1`.
pub fn lemma_r23_scan<T: LatticeScalar>(n: usize) -> Result<Option<ZMatrix<T>>> {
    if !(1..=4).contains(&n) {
        return Err(Error::DimensionOutOfRange { value: n, min: 1, max: 4 });
    }
    for code in 0..1u64 << (n * n) {
        let m = zero_one_matrix::<T>(n, code);
        let d = det_exact(&m)?;
        if d.is_odd() && !d.abs().is_one() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// 0/1 matrices with odd determinant other than `±1`: for even `k` the matrix
/// with zero diagonal and ones elsewhere, for odd `k` the block matrix
/// `diag(1, A_{k-1})`.
pub fn counterexample_matrix<T: LatticeScalar>(k: usize) -> Result<ZMatrix<T>> {
    if k < 4 {
        return Err(Error::DimensionOutOfRange { value: k, min: 4, max: usize::MAX });
    }
    let mut m = ZMatrix::zeros(k, k);
    let offset = k % 2;
    if offset == 1 {
        m.set(0, 0, T::one());
    }
    for i in offset..k {
        for j in offset..k {
            if i != j {
                m.set(i, j, T::one());
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type M = ZMatrix<BigInt>;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn determinant_examples() {
        let a = M::from_i64(&[&[1, 1, 0], &[1, 0, 1], &[1, 1, 1]]).unwrap();
        assert_eq!(det_exact(&a).unwrap(), big(-1));
        assert_eq!(det_exact(&M::identity(3)).unwrap(), big(1));
        let a4: M = counterexample_matrix(4).unwrap();
        assert_eq!(det_exact(&a4).unwrap(), big(-3));
        assert!(matches!(det_exact(&M::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn determinant_needs_row_swap() {
        let a = ZMatrix::<i64>::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(det_exact(&a).unwrap(), -1);
        let a = ZMatrix::<i64>::from_i64(&[&[0, 0], &[1, 0]]).unwrap();
        assert_eq!(det_exact(&a).unwrap(), 0);
    }

    #[test]
    fn smith_examples() {
        let d = M::from_i64(&[&[2, 0], &[0, 3]]).unwrap();
        assert_eq!(smith_invariant_factors(&d), vec![big(1), big(6)]);
        assert_eq!(smith_invariant_factors(&M::identity(2)), vec![big(1), big(1)]);
        let d = M::from_i64(&[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(smith_invariant_factors(&d), vec![big(2), big(2)]);
        let d = M::from_i64(&[&[0, 0], &[0, 0]]).unwrap();
        assert_eq!(smith_invariant_factors(&d), vec![big(0), big(0)]);
        let d = ZMatrix::<i128>::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]).unwrap();
        assert_eq!(smith_invariant_factors(&d), vec![2, 6, 12]);
    }

    #[test]
    fn spanning_examples() {
        assert!(rows_span_lattice(&M::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]).unwrap()));
        assert!(!rows_span_lattice(&M::from_i64(&[&[2, 0], &[0, 1]]).unwrap()));
        assert!(rows_span_lattice(&M::from_i64(&[&[1, 2], &[1, 3]]).unwrap()));
        assert!(!rows_span_lattice(&M::from_i64(&[&[1, 1]]).unwrap()));
        assert!(rows_span_lattice(&M::zeros(0, 0)));
    }

    #[test]
    fn counterexample_determinants() {
        for (k, expected) in [(4, -3), (5, -3), (6, -5), (8, -7)] {
            let a: ZMatrix<i64> = counterexample_matrix(k).unwrap();
            assert_eq!(det_exact(&a).unwrap(), expected, "k = {k}");
        }
        assert!(counterexample_matrix::<i64>(3).is_err());
    }

    #[test]
    fn small_scans() {
        assert!(lemma_r23_scan::<i64>(2).unwrap().is_none());
        assert!(lemma_r23_scan::<i64>(3).unwrap().is_none());
        assert!(lemma_r23_scan::<i64>(5).is_err());
    }
}
