use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, VertexSet};
use crate::gf2::Gf2Matrix;
use crate::invariant::bounds::{ayzenberg_s, chromatic_number, cover_lower_bound, CoverBound};
use crate::invariant::conditions::complete_to_lambda;
use crate::invariant::criteria::{check_criteria, CriteriaResult};
use crate::gf2::MAX_CIRCUIT_DIM;
use crate::invariant::xi::{xi_from_matrix, xi_search, xi_to_matrix, SearchOptions, XiWitness};
use crate::oracle::{matrix_scan_canonical, MAX_CANONICAL_BITS};
use crate::error::{Error, Result};

/// The real invariant, exact or bracketed when the search guard was hit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SRealResult {
    /// Largest `k` with a verified ξ-witness.
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    /// `k` at which the search stopped because of `max_k`, if any.
    pub guard_tripped_at: Option<usize>,
    pub xi_witness: Option<XiWitness>,
    pub matrix_witness: Option<Gf2Matrix>,
    pub lambda_witness: Option<Gf2Matrix>,
}

impl SRealResult {
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.lower)
    }
}

/// `m - dim K - 1`, an upper bound for `s_ℝ(K)` (equal to `m` for `{∅}`).
pub fn upper_bound(k: &SimplicialComplex) -> usize {
    (k.vertex_count() as i64 - k.dimension() - 1) as usize
}

/// A rank-`k` ξ-mapping, searched for in whichever space is smaller: ξ-maps
/// (about `|N(K)|^(2^k - 1)`) or matrices in column-reduced form (about
/// `2^(k(m - k))`). Matrix hits are converted with [`xi_from_matrix`].
pub fn rank_witness(k: &SimplicialComplex, rank: usize, options: &SearchOptions) -> Result<Option<XiWitness>> {
    if rank > options.max_k || rank > MAX_CIRCUIT_DIM {
        return Err(Error::SearchGuard(format!(
            "search at k = {rank} exceeds max-k {}",
            options.max_k.min(MAX_CIRCUIT_DIM)
        )));
    }
    let m = k.vertex_count();
    let n = k.minimal_nonsimplices().len();
    if rank == 0 || n == 0 {
        return xi_search(k, rank, options);
    }
    if rank > m {
        return Ok(None);
    }
    let matrix_bits = rank * (m - rank);
    let xi_bits = ((1usize << rank) - 1) as f64 * (n as f64).log2();
    if matrix_bits <= MAX_CANONICAL_BITS && (matrix_bits as f64) <= xi_bits {
        match matrix_scan_canonical(k, rank)? {
            Some(s) => xi_from_matrix(k, &s),
            None => Ok(None),
        }
    } else {
        xi_search(k, rank, options)
    }
}

/// Computes `s_ℝ(K)` by [`rank_witness`] at `k = 1, 2, ...` until the first failure
/// or the upper bound `m - dim K - 1`.
///
/// Witnesses are those of the last successful `k`: the ξ-mapping, the matrix
/// built from it, and a dual `Λ`.
pub fn s_real(k: &SimplicialComplex, options: &SearchOptions) -> SRealResult {
    let upper = upper_bound(k);
    let mut reached = 0;
    let mut witness = None;
    let mut guard = None;
    while reached < upper {
        match rank_witness(k, reached + 1, options) {
            Ok(Some(w)) => {
                reached += 1;
                witness = Some(w);
            }
            Ok(None) => break,
            Err(_) => {
                guard = Some(reached + 1);
                break;
            }
        }
    }
    let exact = guard.is_none();
    let (matrix, lambda) = match &witness {
        Some(w) if w.k() > 0 => {
            let s = xi_to_matrix(k, w).expect("search returns valid witnesses");
            let lambda = complete_to_lambda(&s);
            (Some(s), lambda)
        }
        _ => (None, None),
    };
    SRealResult {
        lower: reached,
        upper: if exact { reached } else { upper },
        exact,
        guard_tripped_at: guard,
        xi_witness: witness,
        matrix_witness: matrix,
        lambda_witness: lambda,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Treat `K` as `∂P*` of a simple polytope and report `m - γ(P)`.
    pub polytopal: bool,
    pub search: SearchOptions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SInterval {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub m: usize,
    pub dim: i64,
    /// `|N(K)|`, which equals the sum of the bigraded Betti numbers `β^{-1,2j}`.
    pub num_nonsimplices: usize,
    pub nonsimplices: Vec<VertexSet>,
    pub is_flag: bool,
    pub ghost_vertices: Vec<u32>,
    pub warnings: Vec<String>,
    pub upper_bound: usize,
    pub criteria: CriteriaResult,
    pub s_real: SRealResult,
    pub cover_bound: CoverBound,
    pub chromatic_bound: Option<i64>,
    pub ayzenberg_value: Option<usize>,
    pub s_interval: SInterval,
}

/// Runs every computation and combines the bounds into an interval for `s(K)`.
///
/// `s = s_ℝ` whenever `s_ℝ ≤ 3`; for graphs the closed formula is exact.
/// Otherwise `s` is bracketed between the best lower bound and `s_ℝ`.
pub fn analyze(k: &SimplicialComplex, options: &AnalyzeOptions) -> InvariantReport {
    let m = k.vertex_count();
    let dim = k.dimension();
    let nonsimplices = k.minimal_nonsimplices().to_vec();
    let ghosts = k.ghost_vertices();
    let mut warnings = Vec::new();
    if !ghosts.is_empty() {
        warnings.push(format!(
            "ghost vertices {ghosts:?} are not faces of K; each is a one-element minimal non-simplex"
        ));
    }
    let upper = upper_bound(k);
    let criteria = check_criteria(k);
    let real = s_real(k, &options.search);
    if let Some(at) = real.guard_tripped_at {
        warnings.push(format!("ξ-search stopped at k = {at} (raise --max-k to continue)"));
    }
    let cover = cover_lower_bound(k);
    if cover.heuristic {
        warnings.push("cover bound search budget exhausted; value may not be optimal".into());
    }
    let chromatic_bound = options.polytopal.then(|| {
        let gamma = chromatic_number(&k.one_skeleton()).expect("1-skeleton is a graph");
        m as i64 - gamma as i64
    });
    let ayzenberg_value = (dim <= 1).then(|| ayzenberg_s(k).ok()).flatten();

    let mut lower = criteria.level as i64;
    if cover.coverable {
        lower = lower.max(cover.value);
    }
    if let Some(c) = chromatic_bound {
        lower = lower.max(c);
    }
    let mut lower = lower.max(0) as usize;
    let mut s_upper = real.upper;
    if let Some(a) = ayzenberg_value {
        lower = a;
        s_upper = a;
    } else if real.exact && real.lower <= 3 {
        lower = real.lower;
    }
    let lower = lower.min(s_upper);
    InvariantReport {
        m,
        dim,
        num_nonsimplices: nonsimplices.len(),
        nonsimplices,
        is_flag: k.is_flag(),
        ghost_vertices: ghosts,
        warnings,
        upper_bound: upper,
        criteria,
        s_real: real,
        cover_bound: cover,
        chromatic_bound,
        ayzenberg_value,
        s_interval: SInterval { lower, upper: s_upper, exact: lower == s_upper },
    }
}

fn list(sets: &[VertexSet]) -> String {
    sets.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m = {}", self.m)?;
        writeln!(f, "dim K = {}", self.dim)?;
        writeln!(f, "|N(K)| = {}", self.num_nonsimplices)?;
        writeln!(f, "N(K) = {}", list(&self.nonsimplices))?;
        writeln!(f, "flag = {}", self.is_flag)?;
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        writeln!(f, "upper bound m - dim K - 1 = {}", self.upper_bound)?;
        match &self.criteria.witness {
            Some(w) if self.criteria.level > 0 => writeln!(
                f,
                "criteria level = {} (S{} case {}: {})",
                self.criteria.level,
                w.level,
                w.configuration,
                list(&w.sets)
            )?,
            _ => writeln!(f, "criteria level = {}", self.criteria.level)?,
        }
        let real = &self.s_real;
        if real.exact {
            writeln!(f, "s_R(K) = {}", real.lower)?;
        } else {
            writeln!(f, "s_R(K) in [{}, {}]", real.lower, real.upper)?;
        }
        if let Some(w) = &real.xi_witness {
            for (i, image) in w.images().iter().enumerate() {
                let a = crate::gf2::Gf2Vector(i as u64 + 1);
                writeln!(f, "  xi({}) = {}", a.to_tuple_string(w.k()), image)?;
            }
        }
        if let Some(s) = &real.matrix_witness {
            writeln!(f, "  S =")?;
            for line in s.to_string().lines() {
                writeln!(f, "    {line}")?;
            }
        }
        if let Some(l) = &real.lambda_witness {
            writeln!(f, "  Lambda =")?;
            for line in l.to_string().lines() {
                writeln!(f, "    {line}")?;
            }
        }
        if self.cover_bound.coverable {
            writeln!(
                f,
                "cover bound = {} (cover: {}){}",
                self.cover_bound.value,
                list(&self.cover_bound.cover),
                if self.cover_bound.heuristic { " [heuristic]" } else { "" }
            )?;
        } else {
            writeln!(f, "cover bound = {} (N(K) does not cover [m])", self.cover_bound.value)?;
        }
        if let Some(c) = self.chromatic_bound {
            writeln!(f, "chromatic bound m - gamma = {c}")?;
        }
        if let Some(a) = self.ayzenberg_value {
            writeln!(f, "graph formula m - ceil(log2(gamma + 1)) = {a}")?;
        }
        let s = &self.s_interval;
        if s.exact {
            write!(f, "s(K) = {} (exact)", s.lower)
        } else {
            write!(f, "s(K) in [{}, {}]", s.lower, s.upper)
        }
    }
}
