//! Intersection-pattern criteria on `N(K)` for `s(K) ≥ 1, 2, 3`.
//!
//! * level 1: `N(K)` is nonempty;
//! * level 2: two disjoint sets, or three sets with empty common intersection;
//! * level 3: one of five configurations of three to seven sets.
//!
//! Each configuration is a list of index groups whose intersection must be
//! empty. Every configuration also comes with the ξ-mapping it induces, so a
//! matched configuration converts directly into a ξ-witness.

use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::Result;
use crate::invariant::xi::XiWitness;

/// A configuration of `size` distinct minimal non-simplices `τ_1, ...`.
pub struct Configuration {
    pub level: u8,
    pub case: u8,
    pub size: usize,
    /// Groups of 0-based τ indices with empty common intersection.
    pub empty: &'static [&'static [usize]],
    /// Image of vector `v` (mask order `1, 2, ...`) under the induced ξ, as a τ index.
    pub xi: &'static [usize],
}

pub const S1: Configuration = Configuration { level: 1, case: 1, size: 1, empty: &[], xi: &[0] };

/// Level-2 configurations, in scan order (pairs before triples).
pub const S2: [Configuration; 2] = [
    Configuration { level: 2, case: 2, size: 2, empty: &[&[0, 1]], xi: &[0, 0, 1] },
    Configuration { level: 2, case: 1, size: 3, empty: &[&[0, 1, 2]], xi: &[0, 1, 2] },
];

/// Level-3 configurations, in scan order (smallest tuples first).
///
/// The ξ tables use vector masks `1..=7`; in tuple notation these are
/// `100, 010, 110, 001, 101, 011, 111`.
pub const S3: [Configuration; 5] = [
    Configuration {
        level: 3,
        case: 5,
        size: 3,
        empty: &[&[0, 1], &[0, 2], &[1, 2]],
        xi: &[0, 0, 1, 0, 1, 2, 1],
    },
    Configuration {
        level: 3,
        case: 4,
        size: 4,
        empty: &[&[0, 1], &[0, 2], &[0, 3], &[1, 2, 3]],
        xi: &[1, 1, 0, 2, 3, 3, 2],
    },
    Configuration {
        level: 3,
        case: 3,
        size: 5,
        empty: &[&[0, 1], &[0, 4], &[0, 2, 3], &[1, 2, 4], &[1, 3, 4]],
        xi: &[4, 4, 0, 0, 3, 2, 1],
    },
    Configuration {
        level: 3,
        case: 2,
        size: 6,
        empty: &[
            &[0, 2],
            &[0, 1, 3],
            &[0, 1, 4],
            &[0, 3, 5],
            &[0, 4, 5],
            &[1, 2, 5],
            &[2, 3, 4],
        ],
        xi: &[0, 0, 2, 1, 3, 4, 5],
    },
    Configuration {
        level: 3,
        case: 1,
        size: 7,
        empty: &[
            &[0, 1, 3],
            &[0, 2, 4],
            &[0, 5, 6],
            &[1, 2, 5],
            &[1, 4, 6],
            &[2, 3, 6],
            &[3, 4, 5],
        ],
        xi: &[0, 1, 3, 2, 4, 5, 6],
    },
];

/// A matched configuration: the level, the case number, and `τ_1, τ_2, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionWitness {
    pub level: u8,
    pub configuration: u8,
    pub sets: Vec<VertexSet>,
}

impl CriterionWitness {
    fn configuration(&self) -> &'static Configuration {
        match self.level {
            1 => &S1,
            2 => S2.iter().find(|c| c.case == self.configuration).expect("known case"),
            _ => S3.iter().find(|c| c.case == self.configuration).expect("known case"),
        }
    }

    /// True when the stored sets satisfy every emptiness condition of the case.
    pub fn holds(&self) -> bool {
        let config = self.configuration();
        self.sets.len() == config.size
            && config.empty.iter().all(|group| {
                group
                    .iter()
                    .fold(VertexSet::full(64), |acc, &i| acc.intersection(self.sets[i]))
                    .is_empty()
            })
    }

    /// The ξ-mapping of rank `level` induced by this configuration.
    pub fn to_xi(&self) -> Result<XiWitness> {
        let config = self.configuration();
        XiWitness::new(self.level as usize, config.xi.iter().map(|&i| self.sets[i]).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaResult {
    pub level: u8,
    pub witness: Option<CriterionWitness>,
}

/// Finds the first tuple of distinct elements of `sets` (in canonical index
/// order) satisfying `config`.
pub fn match_configuration(sets: &[VertexSet], config: &Configuration) -> Option<Vec<VertexSet>> {
    if sets.len() < config.size {
        return None;
    }
    let m = sets.iter().filter_map(|s| s.max_vertex()).max().unwrap_or(0) as usize;
    let words = sets.len().div_ceil(64);
    let mut vertex_hits = vec![vec![0u64; words]; m];
    for (c, w) in sets.iter().enumerate() {
        for v in w.vertices() {
            vertex_hits[v as usize - 1][c / 64] |= 1 << (c % 64);
        }
    }
    // Constraints grouped by their last position.
    let mut ending: Vec<Vec<&[usize]>> = vec![Vec::new(); config.size];
    for group in config.empty {
        let last = *group.iter().max().expect("non-empty group");
        ending[last].push(group);
    }
    let mut chosen = vec![usize::MAX; config.size];
    let search = Matcher { sets, words, vertex_hits: &vertex_hits, ending: &ending };
    search
        .extend(0, &mut chosen)
        .then(|| chosen.iter().map(|&c| sets[c]).collect())
}

struct Matcher<'a> {
    sets: &'a [VertexSet],
    words: usize,
    vertex_hits: &'a [Vec<u64>],
    ending: &'a [Vec<&'a [usize]>],
}

impl Matcher<'_> {
    fn extend(&self, pos: usize, chosen: &mut [usize]) -> bool {
        if pos == chosen.len() {
            return true;
        }
        let mut allowed = vec![u64::MAX; self.words];
        let tail = self.sets.len() % 64;
        if tail != 0 {
            allowed[self.words - 1] = (1u64 << tail) - 1;
        }
        for &c in &chosen[..pos] {
            allowed[c / 64] &= !(1 << (c % 64));
        }
        for group in &self.ending[pos] {
            let common = group
                .iter()
                .filter(|&&i| i != pos)
                .fold(VertexSet::full(64), |acc, &i| acc.intersection(self.sets[chosen[i]]));
            for v in common.vertices() {
                for (a, h) in allowed.iter_mut().zip(&self.vertex_hits[v as usize - 1]) {
                    *a &= !h;
                }
            }
        }
        for (wi, &word) in allowed.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let c = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                chosen[pos] = c;
                if self.extend(pos + 1, chosen) {
                    return true;
                }
            }
        }
        chosen[pos] = usize::MAX;
        false
    }
}

fn first_match(k: &SimplicialComplex, configs: &[Configuration]) -> Option<CriterionWitness> {
    let n = k.minimal_nonsimplices();
    configs.iter().find_map(|c| {
        match_configuration(n, c).map(|sets| CriterionWitness { level: c.level, configuration: c.case, sets })
    })
}

/// Condition S1, with `τ_1` the first minimal non-simplex.
pub fn condition_s1(k: &SimplicialComplex) -> Option<CriterionWitness> {
    first_match(k, std::slice::from_ref(&S1))
}

/// Condition S2, scanning disjoint pairs before triples.
pub fn condition_s2(k: &SimplicialComplex) -> Option<CriterionWitness> {
    first_match(k, &S2)
}

/// Condition S3, scanning configurations 5, 4, 3, 2, 1.
pub fn condition_s3(k: &SimplicialComplex) -> Option<CriterionWitness> {
    first_match(k, &S3)
}

/// Condition `S_level` evaluated by direct configuration search.
pub fn condition(k: &SimplicialComplex, level: u8) -> Option<CriterionWitness> {
    match level {
        0 => Some(CriterionWitness { level: 0, configuration: 0, sets: Vec::new() }),
        1 => condition_s1(k),
        2 => condition_s2(k),
        3 => condition_s3(k),
        _ => None,
    }
}

/// The largest `r ≤ 3` for which `S_r` holds, with the matched configuration.
///
/// Levels above `m - dim K - 1` are not searched: the real invariant never
/// exceeds that bound, so the corresponding condition cannot hold.
pub fn check_criteria(k: &SimplicialComplex) -> CriteriaResult {
    let upper = k.vertex_count() as i64 - k.dimension() - 1;
    let mut result = CriteriaResult { level: 0, witness: None };
    for level in 1..=3u8 {
        if level as i64 > upper {
            break;
        }
        match condition(k, level) {
            Some(w) => {
                result = CriteriaResult { level, witness: Some(w) };
            }
            None => break,
        }
    }
    result
}
