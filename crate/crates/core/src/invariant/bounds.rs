//! Lower bounds on `s(K)`: covers of `[m]` by minimal non-simplices, the
//! chromatic estimate for simple polytopes, and the exact graph formula.

use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};

/// Node budget for the cover branch-and-bound before falling back to the best
/// cover found so far.
const COVER_NODE_BUDGET: u64 = 2_000_000;
/// Above this many minimal non-simplices only the greedy cover is computed.
const COVER_SET_GUARD: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverBound {
    /// `m - Σ|ω_i| + l` for the chosen cover; `0` when `N(K)` does not cover `[m]`.
    pub value: i64,
    pub cover: Vec<VertexSet>,
    pub coverable: bool,
    /// Set when the search budget ran out and `value` may not be optimal.
    pub heuristic: bool,
}

/// Best bound `s(K) ≥ m - Σ|ω_i| + l` over covers `[m] = ω_1 ∪ ... ∪ ω_l`
/// by minimal non-simplices.
///
/// Minimises `Σ(|ω_i| - 1)` by branch-and-bound, always branching on the
/// lowest uncovered vertex.
pub fn cover_lower_bound(k: &SimplicialComplex) -> CoverBound {
    let m = k.vertex_count();
    let full = VertexSet::full(m);
    let sets = k.minimal_nonsimplices();
    let union = sets.iter().fold(VertexSet::EMPTY, |a, s| a.union(*s));
    if union != full {
        return CoverBound { value: 0, cover: Vec::new(), coverable: false, heuristic: false };
    }
    let greedy = greedy_cover(full, sets);
    let greedy_cost = cost(&greedy);
    if sets.len() > COVER_SET_GUARD {
        return CoverBound { value: m as i64 - greedy_cost, cover: greedy, coverable: true, heuristic: true };
    }
    let by_vertex: Vec<Vec<VertexSet>> = (1..=m as u32)
        .map(|v| sets.iter().copied().filter(|s| s.contains(v)).collect())
        .collect();
    let mut search = CoverSearch {
        full,
        by_vertex,
        best: greedy,
        best_cost: greedy_cost,
        nodes: 0,
        exhausted: false,
    };
    search.branch(VertexSet::EMPTY, &mut Vec::new(), 0);
    let mut cover = search.best;
    cover.sort();
    CoverBound { value: m as i64 - search.best_cost, cover, coverable: true, heuristic: search.exhausted }
}

fn cost(cover: &[VertexSet]) -> i64 {
    cover.iter().map(|s| s.len() as i64 - 1).sum()
}

fn greedy_cover(full: VertexSet, sets: &[VertexSet]) -> Vec<VertexSet> {
    let mut covered = VertexSet::EMPTY;
    let mut out = Vec::new();
    while covered != full {
        let lowest = full.difference(covered).vertices().next().expect("uncovered vertex");
        // Most new vertices per unit of cost, among sets containing the lowest
        // uncovered vertex; first in canonical order on ties.
        let best = sets
            .iter()
            .filter(|s| s.contains(lowest))
            .max_by(|a, b| {
                let ga = a.difference(covered).len() as i64 * (b.len() as i64).max(1);
                let gb = b.difference(covered).len() as i64 * (a.len() as i64).max(1);
                ga.cmp(&gb).then(b.cmp(a))
            })
            .copied()
            .expect("coverable");
        covered = covered.union(best);
        out.push(best);
    }
    out
}

struct CoverSearch {
    full: VertexSet,
    by_vertex: Vec<Vec<VertexSet>>,
    best: Vec<VertexSet>,
    best_cost: i64,
    nodes: u64,
    exhausted: bool,
}

impl CoverSearch {
    fn branch(&mut self, covered: VertexSet, chosen: &mut Vec<VertexSet>, cost: i64) {
        self.nodes += 1;
        if self.nodes > COVER_NODE_BUDGET {
            self.exhausted = true;
            return;
        }
        let Some(v) = self.full.difference(covered).vertices().next() else {
            if cost < self.best_cost {
                self.best_cost = cost;
                self.best = chosen.clone();
            }
            return;
        };
        for i in 0..self.by_vertex[v as usize - 1].len() {
            let s = self.by_vertex[v as usize - 1][i];
            let next = cost + s.len() as i64 - 1;
            if next >= self.best_cost {
                continue;
            }
            chosen.push(s);
            self.branch(covered.union(s), chosen, next);
            chosen.pop();
        }
    }
}

fn check_graph(g: &SimplicialComplex) -> Result<()> {
    if g.dimension() > 1 {
        return Err(Error::NotAGraph(g.dimension()));
    }
    Ok(())
}

/// Exact chromatic number of a complex of dimension at most one, over its
/// present vertices.
///
/// Backtracking colours vertices in order of decreasing degree (ties by
/// label), each new vertex using at most one colour beyond those in use.
pub fn chromatic_number(g: &SimplicialComplex) -> Result<usize> {
    check_graph(g)?;
    let m = g.vertex_count();
    let ghosts = g.ghost_vertices();
    let mut adjacency = vec![VertexSet::EMPTY; m];
    for e in g.edges() {
        let mut it = e.vertices();
        let (a, b) = (it.next().expect("edge"), it.next().expect("edge"));
        adjacency[a as usize - 1] = adjacency[a as usize - 1].with(b);
        adjacency[b as usize - 1] = adjacency[b as usize - 1].with(a);
    }
    let mut order: Vec<u32> = (1..=m as u32).filter(|v| !ghosts.contains(v)).collect();
    if order.is_empty() {
        return Ok(0);
    }
    order.sort_by_key(|&v| (std::cmp::Reverse(adjacency[v as usize - 1].len()), v));
    let lower = if adjacency.iter().any(|a| !a.is_empty()) { 2 } else { 1 };
    let mut colours = vec![usize::MAX; m];
    for target in lower..=order.len() {
        if colourable(&order, &adjacency, target, 0, 0, &mut colours) {
            return Ok(target);
        }
    }
    unreachable!("every graph is colourable with one colour per vertex")
}

fn colourable(
    order: &[u32],
    adjacency: &[VertexSet],
    target: usize,
    pos: usize,
    used: usize,
    colours: &mut [usize],
) -> bool {
    let Some(&v) = order.get(pos) else { return true };
    let v = v as usize - 1;
    for c in 0..target.min(used + 1) {
        if adjacency[v].vertices().any(|u| colours[u as usize - 1] == c) {
            continue;
        }
        colours[v] = c;
        if colourable(order, adjacency, target, pos + 1, used.max(c + 1), colours) {
            colours[v] = usize::MAX;
            return true;
        }
    }
    colours[v] = usize::MAX;
    false
}

/// `⌈log2 x⌉` for `x ≥ 1`.
pub(crate) fn ceil_log2(x: usize) -> usize {
    x.next_power_of_two().trailing_zeros() as usize
}

/// The exact graph value `m - ⌈log2(γ + 1)⌉`. Edgeless graphs use `γ = 1`.
pub fn ayzenberg_s(g: &SimplicialComplex) -> Result<usize> {
    check_graph(g)?;
    let ghosts = g.ghost_vertices();
    if !ghosts.is_empty() {
        return Err(Error::GhostVertices(ghosts));
    }
    let gamma = chromatic_number(g)?;
    Ok(g.vertex_count() - ceil_log2(gamma + 1))
}
