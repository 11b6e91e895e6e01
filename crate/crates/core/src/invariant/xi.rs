//! ξ-mappings: assignments of a minimal non-simplex to every nonzero vector of
//! `Z_2^k` such that the images of every odd circuit have empty common
//! intersection. Such a mapping exists exactly when `s_ℝ(K) ≥ k`.
//!
//! The search is a depth-first scan over vectors in numeric order, each trying
//! the elements of `N(K)` in canonical order. It relies on the equivalent
//! form of the condition: for each vertex `i`, the vectors whose image
//! contains `i` admit `x` with `<a, x> = 1` for all of them. Tracking that
//! affine system per vertex rejects inconsistent choices at once and prunes
//! the candidates of every later vector. The first witness found is the
//! lexicographically least one, independent of worker count.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};
use crate::gf2::{self, Gf2Matrix, Gf2Vector, MAX_CIRCUIT_DIM};

/// Default ceiling on `k` for ξ-search.
pub const DEFAULT_MAX_K: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest `k` searched without an explicit override.
    pub max_k: usize,
    /// Worker threads; `0` picks the available parallelism.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_k: DEFAULT_MAX_K, threads: 1 }
    }
}

impl SearchOptions {
    pub(crate) fn worker_count(&self) -> usize {
        match self.threads {
            0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
            n => n,
        }
    }
}

/// A mapping `Z_2^k \ {0} → N(K)`; `assignment[v - 1]` is the image of the
/// vector with mask `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "XiRepr", try_from = "XiRepr")]
pub struct XiWitness {
    k: usize,
    assignment: Vec<VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct XiRepr {
    k: usize,
    assignment: BTreeMap<u64, VertexSet>,
}

impl From<XiWitness> for XiRepr {
    fn from(w: XiWitness) -> Self {
        XiRepr {
            k: w.k,
            assignment: w.assignment.into_iter().enumerate().map(|(i, s)| (i as u64 + 1, s)).collect(),
        }
    }
}

impl TryFrom<XiRepr> for XiWitness {
    type Error = Error;

    fn try_from(r: XiRepr) -> Result<Self> {
        let count = (1u64 << r.k) - 1;
        let keys: Vec<u64> = r.assignment.keys().copied().collect();
        if keys != (1..=count).collect::<Vec<_>>() {
            return Err(Error::InvalidWitness(format!("expected images for vectors 1..={count}")));
        }
        XiWitness::new(r.k, r.assignment.into_values().collect())
    }
}

impl XiWitness {
    pub fn new(k: usize, assignment: Vec<VertexSet>) -> Result<Self> {
        if k > MAX_CIRCUIT_DIM {
            return Err(Error::DimensionOutOfRange { value: k, min: 0, max: MAX_CIRCUIT_DIM });
        }
        if assignment.len() != (1 << k) - 1 {
            return Err(Error::InvalidWitness(format!(
                "{} images given for {} nonzero vectors",
                assignment.len(),
                (1 << k) - 1
            )));
        }
        Ok(XiWitness { k, assignment })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn image(&self, a: Gf2Vector) -> VertexSet {
        self.assignment[a.0 as usize - 1]
    }

    /// Images in vector order `1, 2, ..., 2^k - 1`.
    pub fn images(&self) -> &[VertexSet] {
        &self.assignment
    }

    /// Checks that every image lies in `N(K)` and every odd circuit has empty
    /// common intersection of images.
    pub fn validate(&self, k: &SimplicialComplex) -> Result<()> {
        let n = k.minimal_nonsimplices();
        if let Some(bad) = self.assignment.iter().find(|w| n.binary_search(w).is_err()) {
            return Err(Error::InvalidWitness(format!("{bad} is not a minimal non-simplex")));
        }
        if self.k == 0 {
            return Ok(());
        }
        for c in gf2::odd_circuits(self.k)? {
            let common = c
                .members()
                .iter()
                .fold(VertexSet::full(64), |acc, a| acc.intersection(self.image(*a)));
            if !common.is_empty() {
                return Err(Error::InvalidWitness(format!(
                    "circuit {:?} has common vertices {common}",
                    c.members()
                )));
            }
        }
        Ok(())
    }
}

type Bitset = Vec<u64>;

/// Sets of vectors of `Z_2^k` (`k ≤ 6`) as masks over their 64 possible values.
type VectorMask = u64;

/// Translates every vector of `set` by `b`.
fn translate(set: VectorMask, b: usize) -> VectorMask {
    let mut bits = set;
    let mut out = 0;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        out |= 1 << (v ^ b);
    }
    out
}

struct XiProblem<'a> {
    sets: &'a [VertexSet],
    vectors: usize,
    words: usize,
    /// `vertex_hits[i]`: candidates (as a bitset over `sets`) containing vertex `i + 1`.
    vertex_hits: Vec<Bitset>,
}

/// Search state. For each vertex `i`, the vectors assigned a set containing
/// `i` must admit `x` with `<a, x> = 1` for all of them. `odd[i]` and
/// `even[i]` split their span by the parity that `<·, x>` is forced to take;
/// a vector in `even[i]` can no longer be mapped to a set containing `i`.
struct State {
    even: Vec<VectorMask>,
    odd: Vec<VectorMask>,
    /// `blocked[b]`: vertices `i` with `b ∈ even[i]`.
    blocked: Vec<u64>,
    assign: Vec<usize>,
    /// Undo records: (vertex, previous even, previous odd).
    trail: Vec<(usize, VectorMask, VectorMask)>,
}

impl<'a> XiProblem<'a> {
    fn new(k: usize, m: usize, sets: &'a [VertexSet]) -> Self {
        let vectors = (1usize << k) - 1;
        let words = sets.len().div_ceil(64).max(1);
        let mut vertex_hits = vec![vec![0u64; words]; m];
        for (c, w) in sets.iter().enumerate() {
            for v in w.vertices() {
                vertex_hits[v as usize - 1][c / 64] |= 1 << (c % 64);
            }
        }
        XiProblem { sets, vectors, words, vertex_hits }
    }

    /// Candidates for vector `b`: sets avoiding every blocked vertex.
    fn domain(&self, state: &State, b: usize) -> Bitset {
        let mut d = vec![0u64; self.words];
        for c in 0..self.sets.len() {
            d[c / 64] |= 1 << (c % 64);
        }
        let mut blocked = state.blocked[b];
        while blocked != 0 {
            let i = blocked.trailing_zeros() as usize;
            blocked &= blocked - 1;
            for (w, h) in d.iter_mut().zip(&self.vertex_hits[i]) {
                *w &= !h;
            }
        }
        d
    }

    /// Maps vector `b` to `sets[c]`, updating the spans. Returns false when
    /// some later vector is left without candidates.
    fn assign(&self, state: &mut State, b: usize, c: usize) -> bool {
        state.assign[b - 1] = c;
        let mut touched: VectorMask = 0;
        for v in self.sets[c].vertices() {
            let i = v as usize - 1;
            let (even, odd) = (state.even[i], state.odd[i]);
            if odd >> b & 1 == 1 {
                continue;
            }
            let new_even = even | translate(odd, b);
            let new_odd = odd | translate(even, b);
            state.trail.push((i, even, odd));
            state.even[i] = new_even;
            state.odd[i] = new_odd;
            let mut added = new_even & !even;
            touched |= added;
            while added != 0 {
                let a = added.trailing_zeros() as usize;
                added &= added - 1;
                state.blocked[a] |= 1 << i;
            }
        }
        // Only later vectors can lose candidates.
        touched &= u64::MAX.checked_shl(b as u32 + 1).unwrap_or(0);
        while touched != 0 {
            let a = touched.trailing_zeros() as usize;
            touched &= touched - 1;
            if self.domain(state, a).iter().all(|&w| w == 0) {
                return false;
            }
        }
        true
    }

    fn undo(&self, state: &mut State, mark: usize) {
        while state.trail.len() > mark {
            let (i, even, odd) = state.trail.pop().expect("non-empty");
            let mut added = state.even[i] & !even;
            while added != 0 {
                let a = added.trailing_zeros() as usize;
                added &= added - 1;
                state.blocked[a] &= !(1 << i);
            }
            state.even[i] = even;
            state.odd[i] = odd;
        }
    }

    /// Searches the subtree where vector 1 maps to `sets[first]`.
    fn solve_branch(&self, first: usize, cancel: &dyn Fn() -> bool) -> Option<Vec<usize>> {
        let m = self.vertex_hits.len();
        let mut state = State {
            even: vec![1; m],
            odd: vec![0; m],
            blocked: vec![0; self.vectors + 1],
            assign: vec![usize::MAX; self.vectors],
            trail: Vec::new(),
        };
        if !self.assign(&mut state, 1, first) {
            return None;
        }
        self.dfs(2, &mut state, cancel).then_some(state.assign)
    }

    fn dfs(&self, b: usize, state: &mut State, cancel: &dyn Fn() -> bool) -> bool {
        if b > self.vectors {
            return true;
        }
        if cancel() {
            return false;
        }
        let candidates = self.domain(state, b);
        for (wi, &word) in candidates.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let c = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let mark = state.trail.len();
                if self.assign(state, b, c) && self.dfs(b + 1, state, cancel) {
                    return true;
                }
                self.undo(state, mark);
            }
        }
        state.assign[b - 1] = usize::MAX;
        false
    }

    fn solve(&self, workers: usize) -> Option<Vec<usize>> {
        let branches = self.sets.len();
        if workers <= 1 || branches <= 1 {
            return (0..branches).find_map(|b| self.solve_branch(b, &|| false));
        }
        let next = AtomicUsize::new(0);
        let best = AtomicUsize::new(usize::MAX);
        let found: Mutex<BTreeMap<usize, Vec<usize>>> = Mutex::new(BTreeMap::new());
        std::thread::scope(|scope| {
            for _ in 0..workers.min(branches) {
                scope.spawn(|| loop {
                    let b = next.fetch_add(1, Ordering::SeqCst);
                    if b >= branches || b > best.load(Ordering::SeqCst) {
                        break;
                    }
                    let cancel = || best.load(Ordering::Relaxed) < b;
                    if let Some(assign) = self.solve_branch(b, &cancel) {
                        best.fetch_min(b, Ordering::SeqCst);
                        found.lock().expect("no poisoned workers").insert(b, assign);
                        break;
                    }
                });
            }
        });
        found.into_inner().expect("no poisoned workers").into_iter().next().map(|(_, a)| a)
    }
}

/// Searches for a ξ-mapping of rank `k`; returns the lexicographically first
/// one or `None` when none exists.
///
/// Fails with [`Error::SearchGuard`] when `k` exceeds `options.max_k` or the
/// circuit enumeration limit.
pub fn xi_search(k: &SimplicialComplex, rank: usize, options: &SearchOptions) -> Result<Option<XiWitness>> {
    if rank > options.max_k {
        return Err(Error::SearchGuard(format!("ξ-search at k = {rank} exceeds max-k {}", options.max_k)));
    }
    if rank > MAX_CIRCUIT_DIM {
        return Err(Error::SearchGuard(format!(
            "ξ-search at k = {rank} exceeds the circuit enumeration limit {MAX_CIRCUIT_DIM}"
        )));
    }
    if rank == 0 {
        return Ok(Some(XiWitness { k: 0, assignment: Vec::new() }));
    }
    let sets = k.minimal_nonsimplices();
    if sets.is_empty() {
        return Ok(None);
    }
    let problem = XiProblem::new(rank, k.vertex_count(), sets);
    let workers = if rank >= 3 { options.worker_count() } else { 1 };
    Ok(problem.solve(workers).map(|assign| XiWitness {
        k: rank,
        assignment: assign.into_iter().map(|c| sets[c]).collect(),
    }))
}

/// The ξ-mapping induced by a matrix `S`: each nonzero `a` goes to the first
/// minimal non-simplex inside `{i : <a, S^i> = 1}`. Returns `None` when some
/// `a` has no such set, which happens exactly when `S` fails the condition.
pub fn xi_from_matrix(k: &SimplicialComplex, s: &Gf2Matrix) -> Result<Option<XiWitness>> {
    if s.nrows() != k.vertex_count() {
        return Err(Error::RowCount { expected: k.vertex_count(), found: s.nrows() });
    }
    let rank = s.ncols();
    if rank > MAX_CIRCUIT_DIM {
        return Err(Error::DimensionOutOfRange { value: rank, min: 0, max: MAX_CIRCUIT_DIM });
    }
    let n = k.minimal_nonsimplices();
    let mut assignment = Vec::with_capacity((1 << rank) - 1);
    for a in 1..1u64 << rank {
        let support = (0..k.vertex_count())
            .filter(|&i| s.row(i).dot(Gf2Vector(a)))
            .fold(VertexSet::EMPTY, |acc, i| acc.with(i as u32 + 1));
        match n.iter().find(|w| w.is_subset(support)) {
            Some(&w) => assignment.push(w),
            None => return Ok(None),
        }
    }
    Ok(Some(XiWitness { k: rank, assignment }))
}

/// Builds a matrix `S` from a ξ-mapping: row `i` is the least solution of
/// `<a, x> = 1` over all `a` whose image contains vertex `i`.
pub fn xi_to_matrix(k: &SimplicialComplex, w: &XiWitness) -> Result<Gf2Matrix> {
    w.validate(k)?;
    let mut rows = Vec::with_capacity(k.vertex_count());
    for i in 1..=k.vertex_count() as u32 {
        let constraints: Vec<Gf2Vector> = (1..=w.assignment.len() as u64)
            .map(Gf2Vector)
            .filter(|a| w.image(*a).contains(i))
            .collect();
        let row = gf2::solve_all_ones(&constraints, w.k).ok_or_else(|| {
            Error::InvalidWitness(format!("the equations for vertex {i} are inconsistent"))
        })?;
        rows.push(row);
    }
    Gf2Matrix::new(w.k, rows)
}
