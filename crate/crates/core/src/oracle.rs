//! Brute-force matrix searches, independent of ξ-mappings, used to
//! cross-check the main algorithms.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::gf2::{low_mask, spans_full, Gf2Matrix, Gf2Vector};

/// Largest `m·k` accepted by [`matrix_scan_gf2`].
pub const MAX_SCAN_BITS: usize = 24;
/// Largest `k·(m - k)` accepted by [`matrix_scan_canonical`].
pub const MAX_CANONICAL_BITS: usize = 36;

/// Row masks of the complements `[m] \ σ` of the maximal simplices.
fn complements(k: &SimplicialComplex) -> Vec<u64> {
    let full = crate::complex::VertexSet::full(k.vertex_count());
    k.maximal_simplices().iter().map(|f| full.difference(*f).bits()).collect()
}

fn passes(rows: &[Gf2Vector], complements: &[u64], rank: usize) -> bool {
    complements.iter().all(|&c| {
        let mut bits = c;
        let selected = std::iter::from_fn(|| {
            (bits != 0).then(|| {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                rows[i]
            })
        });
        spans_full(selected, rank)
    })
}

/// First `m × k` matrix over GF(2), in order of the code `Σ S[i][j]·2^(ik+j)`,
/// whose rows outside every maximal simplex span `Z_2^k`.
pub fn matrix_scan_gf2(k: &SimplicialComplex, rank: usize) -> Result<Option<Gf2Matrix>> {
    let m = k.vertex_count();
    if m * rank > MAX_SCAN_BITS {
        return Err(Error::SearchGuard(format!(
            "matrix scan over 2^{} matrices exceeds the limit 2^{MAX_SCAN_BITS}",
            m * rank
        )));
    }
    let comps = complements(k);
    let mask = low_mask(rank);
    let mut rows = vec![Gf2Vector(0); m];
    for code in 0..1u64 << (m * rank) {
        for (i, r) in rows.iter_mut().enumerate() {
            *r = Gf2Vector((code >> (i * rank)) & mask);
        }
        if passes(&rows, &comps, rank) {
            return Gf2Matrix::new(rank, rows).map(Some);
        }
    }
    Ok(None)
}

/// Exhaustive scan over matrices in column-reduced form.
///
/// Right multiplication by an invertible `k × k` matrix preserves the
/// condition, and every matrix of rank `k` is equivalent to exactly one whose
/// `j`-th independent row (scanning top to bottom) is `e_j`. Only those are
/// enumerated, checking each maximal simplex as soon as its complement rows
/// are fixed.
pub fn matrix_scan_canonical(k: &SimplicialComplex, rank: usize) -> Result<Option<Gf2Matrix>> {
    let m = k.vertex_count();
    if rank > m {
        return Ok(None);
    }
    if rank * (m - rank) > MAX_CANONICAL_BITS || rank > 64 {
        return Err(Error::SearchGuard(format!(
            "canonical matrix scan with k(m - k) = {} exceeds the limit {MAX_CANONICAL_BITS}",
            rank * (m - rank)
        )));
    }
    if rank == 0 {
        return Gf2Matrix::new(0, vec![Gf2Vector(0); m]).map(Some);
    }
    // Complements grouped by their highest row.
    let mut due = vec![Vec::new(); m];
    for c in complements(k) {
        match c.checked_ilog2() {
            Some(top) => due[top as usize].push(c),
            // σ = [m]: no rows at all can span.
            None => return Ok(None),
        }
    }
    let mut scan = CanonicalScan { m, rank, due, rows: vec![Gf2Vector(0); m] };
    Ok(scan.extend(0, 0).then(|| Gf2Matrix::new(rank, scan.rows).expect("rank <= 64")))
}

struct CanonicalScan {
    m: usize,
    rank: usize,
    due: Vec<Vec<u64>>,
    rows: Vec<Gf2Vector>,
}

impl CanonicalScan {
    /// Rows `0..i` are fixed and span the first `d` coordinates.
    fn extend(&mut self, i: usize, d: usize) -> bool {
        if i == self.m {
            return d == self.rank;
        }
        if self.rank - d > self.m - i {
            return false;
        }
        let mut candidates: Vec<u64> = (0..1u64 << d).collect();
        if d < self.rank {
            candidates.push(1 << d);
        }
        for v in candidates {
            self.rows[i] = Gf2Vector(v);
            let ok = self.due[i].iter().all(|&c| {
                let mut bits = c;
                let rows = &self.rows;
                spans_full(
                    std::iter::from_fn(|| {
                        (bits != 0).then(|| {
                            let r = bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            rows[r]
                        })
                    }),
                    self.rank,
                )
            });
            let next = if v == 1 << d { d + 1 } else { d };
            if ok && self.extend(i + 1, next) {
                return true;
            }
        }
        false
    }
}

/// `s_ℝ(K)` by canonical matrix scan: the largest `k ≤ m - dim K - 1` with a
/// passing matrix.
pub fn s_real_by_matrix_scan(k: &SimplicialComplex) -> Result<usize> {
    let upper = (k.vertex_count() as i64 - k.dimension() - 1) as usize;
    let mut best = 0;
    for rank in 1..=upper {
        match matrix_scan_canonical(k, rank)? {
            Some(_) => best = rank,
            None => break,
        }
    }
    Ok(best)
}
