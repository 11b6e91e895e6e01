//! Standard families of complexes, seeded random complexes, and exhaustive
//! small corpora.
//!
//! Random complexes use ChaCha8 seeded from a `u64`: each potential edge
//! `{i, j}` (lexicographic order) is drawn as `next_u64() % den < num`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// Upper limit on the number of subsets a generator enumerates.
const SUBSET_GUARD: u64 = 5_000_000;
pub const MAX_RANDOM_VERTICES: usize = 16;
pub const MAX_CENSUS_VERTICES: usize = 5;
pub const MAX_GRAPH_VERTICES: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RandomMode {
    /// Flag complex of a random graph.
    Flag,
    /// Random graph plus random higher faces, usually not flag.
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// `Δⁿ` on `n + 1` vertices.
    Simplex { n: usize },
    /// `∂Δⁿ` on `n + 1` vertices.
    Boundary { n: usize },
    /// The `k`-skeleton of `Δⁿ`.
    Skeleton { n: usize, k: usize },
    Cycle { m: usize },
    Points { m: usize },
    CompleteGraph { m: usize },
    /// `∂Cⁿ(m)`, the boundary of the cyclic `n`-polytope with `m` vertices.
    Cyclic { n: usize, m: usize },
    Join { left: Box<GeneratorSpec>, right: Box<GeneratorSpec> },
    Random { m: usize, seed: u64, p_num: u64, p_den: u64, mode: RandomMode },
}

fn invalid(message: impl Into<String>) -> Error {
    Error::InvalidParameter(message.into())
}

fn vertex_range(m: usize) -> Result<()> {
    if m == 0 || m > MAX_VERTICES {
        return Err(Error::VertexCount(m));
    }
    Ok(())
}

pub fn generate(spec: &GeneratorSpec) -> Result<SimplicialComplex> {
    match *spec {
        GeneratorSpec::Simplex { n } => {
            vertex_range(n + 1)?;
            SimplicialComplex::from_facets(n + 1, [VertexSet::full(n + 1)])
        }
        GeneratorSpec::Boundary { n } => {
            vertex_range(n + 1)?;
            SimplicialComplex::from_min_nonsimplices(n + 1, [VertexSet::full(n + 1)])
        }
        GeneratorSpec::Skeleton { n, k } => {
            vertex_range(n + 1)?;
            if k > n {
                return Err(invalid(format!("skeleton needs k <= n, got k = {k}, n = {n}")));
            }
            SimplicialComplex::from_facets(n + 1, subsets_of_size(n + 1, k + 1)?)
        }
        GeneratorSpec::Cycle { m } => {
            if m < 3 {
                return Err(invalid(format!("cycle needs m >= 3, got {m}")));
            }
            vertex_range(m)?;
            let m32 = m as u32;
            SimplicialComplex::from_facets(
                m,
                (1..=m32).map(|i| VertexSet::singleton(i).with(i % m32 + 1)),
            )
        }
        GeneratorSpec::Points { m } => {
            vertex_range(m)?;
            SimplicialComplex::from_facets(m, (1..=m as u32).map(VertexSet::singleton))
        }
        GeneratorSpec::CompleteGraph { m } => {
            vertex_range(m)?;
            SimplicialComplex::from_facets(m, subsets_of_size(m, m.min(2))?)
        }
        GeneratorSpec::Cyclic { n, m } => cyclic_polytope_boundary(n, m),
        GeneratorSpec::Join { ref left, ref right } => join(&generate(left)?, &generate(right)?),
        GeneratorSpec::Random { m, seed, p_num, p_den, mode } => random_complex(m, seed, p_num, p_den, mode),
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// All `size`-subsets of `[m]` in colexicographic (numeric bitmask) order.
fn subsets_of_size(m: usize, size: usize) -> Result<Vec<VertexSet>> {
    if size > m {
        return Ok(Vec::new());
    }
    if binomial(m as u64, size as u64) > SUBSET_GUARD {
        return Err(Error::SearchGuard(format!(
            "C({m}, {size}) subsets exceed the limit of {SUBSET_GUARD}"
        )));
    }
    let mut out = Vec::new();
    combinations(m as u32, size, 1, VertexSet::EMPTY, &mut out);
    out.sort();
    Ok(out)
}

fn combinations(m: u32, size: usize, from: u32, acc: VertexSet, out: &mut Vec<VertexSet>) {
    if acc.len() == size {
        out.push(acc);
        return;
    }
    for v in from..=m {
        combinations(m, size, v + 1, acc.with(v), out);
    }
}

/// Gale evenness: an `n`-subset `σ` is a facet when every two elements of
/// `[m] \ σ` are separated by an even number of elements of `σ`.
fn gale_evenness(sigma: VertexSet, m: usize) -> bool {
    let mut between = 0u32;
    let mut seen_gap = false;
    for v in 1..=m as u32 {
        if sigma.contains(v) {
            between += 1;
        } else {
            if seen_gap && between % 2 == 1 {
                return false;
            }
            seen_gap = true;
            between = 0;
        }
    }
    true
}

fn cyclic_polytope_boundary(n: usize, m: usize) -> Result<SimplicialComplex> {
    if n < 2 || n >= m {
        return Err(invalid(format!("cyclic polytope needs 2 <= n < m, got n = {n}, m = {m}")));
    }
    vertex_range(m)?;
    let facets: Vec<VertexSet> = subsets_of_size(m, n)?
        .into_iter()
        .filter(|&s| gale_evenness(s, m))
        .collect();
    SimplicialComplex::from_facets(m, facets)
}

/// The join `K1 * K2`, with the vertices of `K2` relabelled `m1 + 1, ..., m1 + m2`.
pub fn join(k1: &SimplicialComplex, k2: &SimplicialComplex) -> Result<SimplicialComplex> {
    let (m1, m2) = (k1.vertex_count(), k2.vertex_count());
    if m1 + m2 > MAX_VERTICES {
        return Err(Error::VertexCount(m1 + m2));
    }
    let mut facets = Vec::new();
    for &f1 in k1.maximal_simplices() {
        for &f2 in k2.maximal_simplices() {
            facets.push(f1.union(f2.shifted(m1)));
        }
    }
    SimplicialComplex::from_facets(m1 + m2, facets)
}

fn random_complex(m: usize, seed: u64, p_num: u64, p_den: u64, mode: RandomMode) -> Result<SimplicialComplex> {
    if m == 0 || m > MAX_RANDOM_VERTICES {
        return Err(invalid(format!("random complexes need 1 <= m <= {MAX_RANDOM_VERTICES}, got {m}")));
    }
    if p_den == 0 || p_num > p_den {
        return Err(invalid(format!("edge probability {p_num}/{p_den} is not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| rng.next_u64() % p_den < p_num;
    let m32 = m as u32;
    let mut edges = Vec::new();
    let mut non_edges = Vec::new();
    for i in 1..=m32 {
        for j in i + 1..=m32 {
            let e = VertexSet::singleton(i).with(j);
            if draw(&mut rng) {
                edges.push(e);
            } else {
                non_edges.push(e);
            }
        }
    }
    match mode {
        RandomMode::Flag => SimplicialComplex::from_min_nonsimplices(m, non_edges),
        RandomMode::Mixed => {
            let mut facets: Vec<VertexSet> = (1..=m32).map(VertexSet::singleton).collect();
            facets.extend(edges);
            for _ in 0..m {
                let face = (1..=m32)
                    .filter(|_| draw(&mut rng))
                    .fold(VertexSet::EMPTY, VertexSet::with);
                if face.len() >= 3 {
                    facets.push(face);
                }
            }
            SimplicialComplex::from_facets(m, facets)
        }
    }
}

/// Every complex on `[m]` (ghost vertices allowed), one per antichain of
/// maximal faces, in a fixed order.
pub fn census(m: usize) -> Result<Vec<SimplicialComplex>> {
    if m == 0 || m > MAX_CENSUS_VERTICES {
        return Err(invalid(format!("census needs 1 <= m <= {MAX_CENSUS_VERTICES}, got {m}")));
    }
    let subsets: Vec<VertexSet> = (0..1u64 << m).map(VertexSet::from_bits).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    antichains(&subsets, 0, &mut chosen, &mut |facets| {
        if !facets.is_empty() {
            out.push(SimplicialComplex::from_facets(m, facets.iter().copied()).expect("in range"));
        }
    });
    Ok(out)
}

fn antichains(subsets: &[VertexSet], from: usize, chosen: &mut Vec<VertexSet>, emit: &mut impl FnMut(&[VertexSet])) {
    emit(chosen);
    for i in from..subsets.len() {
        let s = subsets[i];
        if chosen.iter().any(|c| c.is_subset(s) || s.is_subset(*c)) {
            continue;
        }
        chosen.push(s);
        antichains(subsets, i + 1, chosen, emit);
        chosen.pop();
    }
}

/// All graphs on `[m]` up to isomorphism, as complexes of dimension at most
/// one with every vertex present. The representative of each class is the
/// edge set with the smallest code.
pub fn graphs(m: usize) -> Result<Vec<SimplicialComplex>> {
    if m == 0 || m > MAX_GRAPH_VERTICES {
        return Err(invalid(format!("graph enumeration needs 1 <= m <= {MAX_GRAPH_VERTICES}, got {m}")));
    }
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let mut index = vec![vec![0usize; m]; m];
    for (e, &(i, j)) in pairs.iter().enumerate() {
        index[i][j] = e;
        index[j][i] = e;
    }
    let perms = permutations(m);
    // Image of each edge bit under each permutation.
    let maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(i, j)| index[p[i]][p[j]]).collect())
        .collect();
    let mut classes = BTreeSet::new();
    for code in 0..1u64 << pairs.len() {
        let canonical = maps
            .iter()
            .map(|map| {
                let mut bits = code;
                let mut image = 0u64;
                while bits != 0 {
                    let e = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    image |= 1 << map[e];
                }
                image
            })
            .min()
            .expect("identity permutation");
        if canonical == code {
            classes.insert(code);
        }
    }
    Ok(classes
        .into_iter()
        .map(|code| {
            let mut facets: Vec<VertexSet> = (1..=m as u32).map(VertexSet::singleton).collect();
            facets.extend(pairs.iter().enumerate().filter(|(e, _)| code >> e & 1 == 1).map(|(_, &(i, j))| {
                VertexSet::singleton(i as u32 + 1).with(j as u32 + 1)
            }));
            SimplicialComplex::from_facets(m, facets).expect("in range")
        })
        .collect())
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Simplex { n } => write!(f, "simplex {n}"),
            GeneratorSpec::Boundary { n } => write!(f, "boundary {n}"),
            GeneratorSpec::Skeleton { n, k } => write!(f, "skeleton {n} {k}"),
            GeneratorSpec::Cycle { m } => write!(f, "cycle {m}"),
            GeneratorSpec::Points { m } => write!(f, "points {m}"),
            GeneratorSpec::CompleteGraph { m } => write!(f, "complete_graph {m}"),
            GeneratorSpec::Cyclic { n, m } => write!(f, "cyclic {n} {m}"),
            GeneratorSpec::Join { left, right } => write!(f, "join {left} {right}"),
            GeneratorSpec::Random { m, seed, p_num, p_den, mode } => {
                let mode = match mode {
                    RandomMode::Flag => "flag",
                    RandomMode::Mixed => "mixed",
                };
                write!(f, "random {m} seed={seed} p={p_num}/{p_den} mode={mode}")
            }
        }
    }
}

impl GeneratorSpec {
    /// Parses a whitespace-separated prefix expression such as
    /// `join cycle 4 points 2` or `random 8 seed=3 p=1/3 mode=mixed`.
    ///
    /// Random kinds without `seed=` take `default_seed`.
    pub fn parse_tokens(tokens: &[&str], default_seed: u64) -> Result<Self> {
        let mut pos = 0;
        let spec = parse_spec(tokens, &mut pos, default_seed)?;
        if pos != tokens.len() {
            return Err(invalid(format!("unexpected trailing arguments: {}", tokens[pos..].join(" "))));
        }
        Ok(spec)
    }
}

fn parse_spec(tokens: &[&str], pos: &mut usize, default_seed: u64) -> Result<GeneratorSpec> {
    let kind = *tokens.get(*pos).ok_or_else(|| invalid("missing generator kind"))?;
    *pos += 1;
    let mut int = |name: &str| -> Result<usize> {
        let t = tokens
            .get(*pos)
            .ok_or_else(|| invalid(format!("{kind}: missing parameter {name}")))?;
        *pos += 1;
        t.parse().map_err(|_| invalid(format!("{kind}: {name} must be a non-negative integer, got {t:?}")))
    };
    Ok(match kind {
        "simplex" => GeneratorSpec::Simplex { n: int("n")? },
        "boundary" => GeneratorSpec::Boundary { n: int("n")? },
        "skeleton" => GeneratorSpec::Skeleton { n: int("n")?, k: int("k")? },
        "cycle" => GeneratorSpec::Cycle { m: int("m")? },
        "points" => GeneratorSpec::Points { m: int("m")? },
        "complete_graph" | "complete" => GeneratorSpec::CompleteGraph { m: int("m")? },
        "cyclic" => GeneratorSpec::Cyclic { n: int("n")?, m: int("m")? },
        "random" => {
            let m = int("m")?;
            let (mut seed, mut p_num, mut p_den, mut mode) = (default_seed, 1, 3, RandomMode::Flag);
            while let Some((key, value)) = tokens.get(*pos).and_then(|t| t.split_once('=')) {
                *pos += 1;
                let bad = || invalid(format!("random: bad value for {key}: {value:?}"));
                match key {
                    "seed" => seed = value.parse().map_err(|_| bad())?,
                    "p" => {
                        let (a, b) = value.split_once('/').ok_or_else(bad)?;
                        p_num = a.parse().map_err(|_| bad())?;
                        p_den = b.parse().map_err(|_| bad())?;
                    }
                    "mode" => {
                        mode = match value {
                            "flag" => RandomMode::Flag,
                            "mixed" => RandomMode::Mixed,
                            _ => return Err(bad()),
                        }
                    }
                    _ => return Err(invalid(format!("random: unknown option {key}"))),
                }
            }
            GeneratorSpec::Random { m, seed, p_num, p_den, mode }
        }
        "join" => {
            let left = parse_spec(tokens, pos, default_seed)?;
            let right = parse_spec(tokens, pos, default_seed)?;
            GeneratorSpec::Join { left: Box::new(left), right: Box::new(right) }
        }
        other => return Err(invalid(format!("unknown generator kind {other:?}"))),
    })
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneratorSpec::parse_tokens(&s.split_whitespace().collect::<Vec<_>>(), 0)
    }
}
