//! Matrix characterizations of free subgroup actions.
//!
//! `S` is an `m x k` matrix, one row per vertex. It describes a free action
//! when, for every maximal simplex `σ`, the rows outside `σ` span the whole
//! lattice (`Z^k` or `Z_2^k`). `Λ` is the dual `(m - k) x m` description: the
//! columns indexed by each maximal simplex must extend to a basis.


use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};
use crate::gf2::{self, Gf2Matrix, Gf2Vector};
use crate::zlattice::{rows_span_lattice, smith_invariant_factors, LatticeScalar, ZMatrix};
use crate::IntMatrix;

/// Coefficient ring of a matrix witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Gf2,
    Integers,
}

/// A matrix over one of the two rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixWitness {
    Gf2(Gf2Matrix),
    Integers(IntMatrix),
}

impl MatrixWitness {
    pub fn ring(&self) -> Ring {
        match self {
            MatrixWitness::Gf2(_) => Ring::Gf2,
            MatrixWitness::Integers(_) => Ring::Integers,
        }
    }
}

/// Largest `k` for which the mod-2 non-simplex condition enumerates `Z_2^k`.
const MAX_GF2_ENUM_DIM: usize = 24;
/// Largest number of vectors enumerated per prime in the integer condition.
const MAX_PRIME_ENUM: u128 = 1 << 22;

fn check_rows(k: &SimplicialComplex, rows: usize) -> Result<()> {
    if rows != k.vertex_count() {
        return Err(Error::RowCount { expected: k.vertex_count(), found: rows });
    }
    Ok(())
}

fn outside(k: &SimplicialComplex, sigma: VertexSet) -> impl Iterator<Item = usize> {
    VertexSet::full(k.vertex_count())
        .difference(sigma)
        .vertices()
        .map(|v| v as usize - 1)
}

/// The first maximal simplex whose complementary rows fail to span `Z_2^k`.
pub fn s_violation_gf2(k: &SimplicialComplex, s: &Gf2Matrix) -> Result<Option<VertexSet>> {
    check_rows(k, s.nrows())?;
    Ok(k.maximal_simplices().iter().copied().find(|&sigma| {
        !gf2::spans_full(outside(k, sigma).map(|i| s.row(i)), s.ncols())
    }))
}

pub fn verify_s_gf2(k: &SimplicialComplex, s: &Gf2Matrix) -> Result<bool> {
    Ok(s_violation_gf2(k, s)?.is_none())
}

/// The first maximal simplex whose complementary rows fail to span `Z^k`.
pub fn s_violation_integer<T: LatticeScalar>(
    k: &SimplicialComplex,
    s: &ZMatrix<T>,
) -> Result<Option<VertexSet>> {
    check_rows(k, s.nrows())?;
    Ok(k.maximal_simplices()
        .iter()
        .copied()
        .find(|&sigma| !rows_span_lattice(&s.select_rows(outside(k, sigma)))))
}

pub fn verify_s_integer<T: LatticeScalar>(k: &SimplicialComplex, s: &ZMatrix<T>) -> Result<bool> {
    Ok(s_violation_integer(k, s)?.is_none())
}

/// The first maximal simplex whose columns of `Λ` are dependent over `Z_2`.
pub fn lambda_violation_gf2(k: &SimplicialComplex, lambda: &Gf2Matrix) -> Result<Option<VertexSet>> {
    if lambda.ncols() != k.vertex_count() {
        return Err(Error::ColumnCount { expected: k.vertex_count(), found: lambda.ncols() });
    }
    Ok(k.maximal_simplices().iter().copied().find(|&sigma| {
        let cols = sigma.vertices().map(|v| lambda.column(v as usize - 1));
        gf2::rank_of(cols) != sigma.len()
    }))
}

pub fn verify_lambda_gf2(k: &SimplicialComplex, lambda: &Gf2Matrix) -> Result<bool> {
    Ok(lambda_violation_gf2(k, lambda)?.is_none())
}

/// The first maximal simplex `σ` for which the rows of `Λ_σ` fail to span `Z^|σ|`.
pub fn lambda_violation_integer<T: LatticeScalar>(
    k: &SimplicialComplex,
    lambda: &ZMatrix<T>,
) -> Result<Option<VertexSet>> {
    if lambda.ncols() != k.vertex_count() {
        return Err(Error::ColumnCount { expected: k.vertex_count(), found: lambda.ncols() });
    }
    Ok(k.maximal_simplices().iter().copied().find(|&sigma| {
        let cols: Vec<usize> = sigma.vertices().map(|v| v as usize - 1).collect();
        !rows_span_lattice(&lambda.select_cols(&cols))
    }))
}

pub fn verify_lambda_integer<T: LatticeScalar>(k: &SimplicialComplex, lambda: &ZMatrix<T>) -> Result<bool> {
    Ok(lambda_violation_integer(k, lambda)?.is_none())
}

pub fn verify_s(k: &SimplicialComplex, s: &MatrixWitness) -> Result<bool> {
    match s {
        MatrixWitness::Gf2(s) => verify_s_gf2(k, s),
        MatrixWitness::Integers(s) => verify_s_integer(k, s),
    }
}

pub fn verify_lambda(k: &SimplicialComplex, lambda: &MatrixWitness) -> Result<bool> {
    match lambda {
        MatrixWitness::Gf2(l) => verify_lambda_gf2(k, l),
        MatrixWitness::Integers(l) => verify_lambda_integer(k, l),
    }
}

fn some_nonsimplex_inside(nonsimplices: &[VertexSet], served: VertexSet) -> bool {
    nonsimplices.iter().any(|w| w.is_subset(served))
}

/// Mod-2 non-simplex condition: every nonzero `a ∈ Z_2^k` has some
/// `ω ∈ N(K)` with `<a, S^i> = 1` for all `i ∈ ω`.
pub fn verify_nonsimplex_condition_gf2(k: &SimplicialComplex, s: &Gf2Matrix) -> Result<bool> {
    check_rows(k, s.nrows())?;
    let dim = s.ncols();
    if dim > MAX_GF2_ENUM_DIM {
        return Err(Error::SearchGuard(format!("2^{dim} vectors to enumerate")));
    }
    let n = k.minimal_nonsimplices();
    for a in 1..1u64 << dim {
        let a = Gf2Vector(a);
        let served = s
            .rows()
            .iter()
            .enumerate()
            .filter(|(_, row)| a.dot(**row))
            .fold(VertexSet::EMPTY, |acc, (i, _)| acc.with(i as u32 + 1));
        if !some_nonsimplex_inside(n, served) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn prime_factors(mut n: u64, out: &mut Vec<u64>) {
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
}

/// The primes at which the integer non-simplex condition can fail: every
/// prime dividing a nonzero invariant factor of some `S^{σ̂}`, and `2`.
///
/// At any other prime every `S^{σ̂}` stays surjective mod `p`, so the
/// condition holds there automatically.
pub fn nonsimplex_prime_set<T: LatticeScalar>(k: &SimplicialComplex, s: &ZMatrix<T>) -> Result<Vec<u64>> {
    check_rows(k, s.nrows())?;
    let mut primes = vec![2];
    for &sigma in k.maximal_simplices() {
        let sub = s.select_rows(outside(k, sigma));
        for d in smith_invariant_factors(&sub) {
            if d.is_zero() || d.is_one() {
                continue;
            }
            let d = d
                .to_u64()
                .ok_or_else(|| Error::SearchGuard(format!("invariant factor {d} too large to factor")))?;
            prime_factors(d, &mut primes);
        }
    }
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

/// Integer non-simplex condition: for every prime `p` and every nonzero
/// `a ∈ Z_p^k` there is `ω ∈ N(K)` with `<a, S^i> ≠ 0 mod p` for all
/// `i ∈ ω`. Primes are restricted to [`nonsimplex_prime_set`] and vectors to
/// one representative per line (first nonzero coordinate equal to one).
pub fn verify_nonsimplex_condition_integer<T: LatticeScalar>(k: &SimplicialComplex, s: &ZMatrix<T>) -> Result<bool> {
    let primes = nonsimplex_prime_set(k, s)?;
    let dim = s.ncols();
    let n = k.minimal_nonsimplices();
    for p in primes {
        let count = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if count > MAX_PRIME_ENUM {
            return Err(Error::SearchGuard(format!("{p}^{dim} vectors to enumerate")));
        }
        let modulus = T::from_u64(p).expect("small prime fits");
        let residues: Vec<Vec<u64>> = (0..s.nrows())
            .map(|i| {
                s.row(i)
                    .iter()
                    .map(|x| x.mod_floor(&modulus).to_u64().expect("residue fits"))
                    .collect()
            })
            .collect();
        let mut a = vec![0u64; dim];
        for lead in 0..dim {
            a.iter_mut().for_each(|x| *x = 0);
            a[lead] = 1;
            loop {
                let served = residues
                    .iter()
                    .enumerate()
                    .filter(|(_, row)| row.iter().zip(&a).map(|(x, y)| x * y % p).sum::<u64>() % p != 0)
                    .fold(VertexSet::EMPTY, |acc, (i, _)| acc.with(i as u32 + 1));
                if !some_nonsimplex_inside(n, served) {
                    return Ok(false);
                }
                // Next vector with the same leading coordinate.
                let mut j = dim;
                loop {
                    j -= 1;
                    if j == lead {
                        break;
                    }
                    a[j] += 1;
                    if a[j] < p {
                        break;
                    }
                    a[j] = 0;
                }
                if j == lead {
                    break;
                }
            }
        }
    }
    Ok(true)
}

/// Reads a 0/1 matrix over the integers.
pub fn lift_to_integers<T: LatticeScalar>(s: &Gf2Matrix) -> ZMatrix<T> {
    let rows = s
        .rows()
        .iter()
        .map(|r| (0..s.ncols()).map(|j| if r.get(j) { T::one() } else { T::zero() }).collect())
        .collect();
    ZMatrix::from_rows(s.ncols(), rows).expect("rectangular")
}

/// A dual matrix `Λ` for `S`: complete the columns of `S` to a basis of
/// `Z_2^m` with unit vectors, invert, and keep the last `m - k` rows. Then
/// `Λ S = 0` and `Λ` has full rank. `None` if `S` has dependent columns.
pub fn complete_to_lambda(s: &Gf2Matrix) -> Option<Gf2Matrix> {
    let m = s.nrows();
    let k = s.ncols();
    let mut basis: Vec<Gf2Vector> = (0..k).map(|j| s.column(j)).collect();
    if gf2::rank_of(basis.iter().copied()) != k {
        return None;
    }
    for i in 0..m {
        if basis.len() == m {
            break;
        }
        let candidate = Gf2Vector(1 << i);
        if gf2::rank_of(basis.iter().copied().chain([candidate])) > basis.len() {
            basis.push(candidate);
        }
    }
    // Basis vectors are the columns of B; build its rows.
    let rows = (0..m)
        .map(|i| {
            Gf2Vector(
                basis
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| b.get(i))
                    .fold(0u64, |acc, (j, _)| acc | 1 << j),
            )
        })
        .collect();
    let b = Gf2Matrix::new(m, rows).ok()?;
    let inv = gf2::inverse(&b)?;
    Gf2Matrix::new(m, inv.rows()[k..].to_vec()).ok()
}
