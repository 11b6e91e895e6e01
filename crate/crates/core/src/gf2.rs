//! Linear algebra over the two-element field on bitmask rows.
//!
//! A vector of `Z_2^k` is a `u64` whose bit `j` is coordinate `j + 1`, so the
//! tuple `(1,0)` is `0b01` and `(0,1)` is `0b10`. Canonical order of vectors
//! is numeric order of these masks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest dimension for which odd circuits are enumerated. The number of
/// size-`k+1` circuits grows like `|GL(k,2)| / (k+1)!`, which is out of reach
/// from `k = 7` on.
pub const MAX_CIRCUIT_DIM: usize = 6;

/// An element of `Z_2^k`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Gf2Vector(pub u64);

impl Gf2Vector {
    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Coordinate `j` (0-based).
    pub fn get(self, j: usize) -> bool {
        self.0 >> j & 1 == 1
    }

    /// The standard inner product `<a, b>` in `Z_2`.
    pub fn dot(self, other: Gf2Vector) -> bool {
        (self.0 & other.0).count_ones() & 1 == 1
    }

    /// Tuple notation, first coordinate first: `(1,1,0)` prints as `110`.
    pub fn to_tuple_string(self, k: usize) -> String {
        (0..k).map(|j| if self.get(j) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}", self.0)
    }
}

/// Dense matrix over `Z_2`, one bitmask per row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn new(cols: usize, rows: Vec<Gf2Vector>) -> Result<Self> {
        if cols > 64 {
            return Err(Error::DimensionOutOfRange { value: cols, min: 0, max: 64 });
        }
        let mask = low_mask(cols);
        if let Some(i) = rows.iter().position(|r| r.0 & !mask != 0) {
            return Err(Error::Ragged { row: i + 1, expected: cols, found: 64 - rows[i].0.leading_zeros() as usize });
        }
        Ok(Gf2Matrix { cols, rows })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix::new(cols, vec![Gf2Vector(0); rows]).expect("cols <= 64")
    }

    /// From rows written as 0/1 entries.
    pub fn from_entries(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Ragged { row: i + 1, expected: cols, found: row.len() });
            }
            let mut bits = 0u64;
            for (j, &e) in row.iter().enumerate() {
                match e {
                    0 => {}
                    1 => bits |= 1 << j,
                    _ => return Err(Error::InvalidParameter(format!("entry {e} is not 0 or 1"))),
                }
            }
            out.push(Gf2Vector(bits));
        }
        Gf2Matrix::new(cols, out)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> Gf2Vector {
        self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    /// Column `j` as a vector of length `nrows`.
    pub fn column(&self, j: usize) -> Gf2Vector {
        let mut bits = 0u64;
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(j) {
                bits |= 1 << i;
            }
        }
        Gf2Vector(bits)
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let rows = (0..self.cols).map(|j| self.column(j)).collect();
        Gf2Matrix::new(self.rows.len(), rows).expect("at most 64 rows when transposing")
    }

    pub fn entries(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|r| (0..self.cols).map(|j| r.get(j) as u8).collect())
            .collect()
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let line: Vec<&str> = (0..self.cols).map(|j| if r.get(j) { "1" } else { "0" }).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Rank of a set of row vectors, by reduction against an echelon basis.
pub fn rank_of(rows: impl IntoIterator<Item = Gf2Vector>) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for r in rows {
        let mut v = r.0;
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                rank += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    rank
}

pub fn rank(m: &Gf2Matrix) -> usize {
    rank_of(m.rows.iter().copied())
}

/// True iff the vectors span all of `Z_2^k`.
pub fn spans_full(rows: impl IntoIterator<Item = Gf2Vector>, k: usize) -> bool {
    rank_of(rows) == k
}

/// Solves `<a, x> = 1` for every `a` in `constraints`.
///
/// Returns the solution with the smallest numeric mask (free variables set to
/// zero after reducing on the lowest coordinates first), or `None` when the
/// system is inconsistent.
pub fn solve_all_ones(constraints: &[Gf2Vector], k: usize) -> Option<Gf2Vector> {
    let mask = low_mask(k);
    // Fully reduced rows: (pivot column, coefficients, right-hand side).
    let mut pivots: Vec<(u32, u64, bool)> = Vec::new();
    for a in constraints {
        let mut coeffs = a.0 & mask;
        let mut rhs = true;
        for &(col, p, b) in &pivots {
            if coeffs >> col & 1 == 1 {
                coeffs ^= p;
                rhs ^= b;
            }
        }
        if coeffs == 0 {
            if rhs {
                return None;
            }
            continue;
        }
        let col = coeffs.trailing_zeros();
        for p in pivots.iter_mut() {
            if p.1 >> col & 1 == 1 {
                p.1 ^= coeffs;
                p.2 ^= rhs;
            }
        }
        pivots.push((col, coeffs, rhs));
    }
    let x = pivots
        .iter()
        .filter(|p| p.2)
        .fold(0u64, |acc, p| acc | 1u64 << p.0);
    Some(Gf2Vector(x))
}

/// A minimal linear dependence of odd size: the members sum to zero and every
/// proper subset is independent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddCircuit {
    members: Vec<Gf2Vector>,
}

impl OddCircuit {
    /// Members in increasing order.
    pub fn members(&self) -> &[Gf2Vector] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Every odd circuit of `Z_2^k` with at least three members, ordered by size
/// and then lexicographically by member list.
///
/// A circuit of size `t` is `t - 1` independent vectors plus their sum. Each
/// circuit is produced once by taking the sum as its largest member.
pub fn odd_circuits(k: usize) -> Result<Vec<OddCircuit>> {
    if !(1..=MAX_CIRCUIT_DIM).contains(&k) {
        return Err(Error::DimensionOutOfRange { value: k, min: 1, max: MAX_CIRCUIT_DIM });
    }
    let mut out = Vec::new();
    let mut t = 3;
    while t <= k + 1 {
        let mut chosen = Vec::with_capacity(t);
        extend_independent(k, t - 1, 1, 0, &mut [0u64; 64], &mut chosen, &mut out);
        t += 2;
    }
    out.sort();
    Ok(out)
}

fn extend_independent(
    k: usize,
    want: usize,
    start: u64,
    sum: u64,
    basis: &mut [u64; 64],
    chosen: &mut Vec<Gf2Vector>,
    out: &mut Vec<OddCircuit>,
) {
    if chosen.len() == want {
        let last = chosen.last().map_or(0, |v| v.0);
        if sum > last {
            let mut members = chosen.clone();
            members.push(Gf2Vector(sum));
            out.push(OddCircuit { members });
        }
        return;
    }
    let limit = 1u64 << k;
    for v in start..limit {
        // Reduce v against the current basis; zero means dependent.
        let mut r = v;
        while r != 0 {
            let top = 63 - r.leading_zeros() as usize;
            if basis[top] == 0 {
                break;
            }
            r ^= basis[top];
        }
        if r == 0 {
            continue;
        }
        let top = 63 - r.leading_zeros() as usize;
        basis[top] = r;
        chosen.push(Gf2Vector(v));
        extend_independent(k, want, v + 1, sum ^ v, basis, chosen, out);
        chosen.pop();
        basis[top] = 0;
    }
}

/// Inverse of a square matrix given by its rows, or `None` if singular.
pub fn inverse(m: &Gf2Matrix) -> Option<Gf2Matrix> {
    let n = m.nrows();
    if n != m.ncols() {
        return None;
    }
    let mut left: Vec<u64> = m.rows.iter().map(|r| r.0).collect();
    let mut right: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| left[i] >> col & 1 == 1)?;
        left.swap(col, pivot);
        right.swap(col, pivot);
        for i in 0..n {
            if i != col && left[i] >> col & 1 == 1 {
                left[i] ^= left[col];
                right[i] ^= right[col];
            }
        }
    }
    Gf2Matrix::new(n, right.into_iter().map(Gf2Vector).collect()).ok()
}
