#![allow(dead_code)]

use buchstaber::generators::{census, generate, GeneratorSpec, RandomMode};
use buchstaber::SimplicialComplex;

/// Every complex on at most four vertices.
pub fn census_corpus() -> Vec<SimplicialComplex> {
    (1..=4).flat_map(|m| census(m).unwrap()).collect()
}

/// Fixed seeded corpus: 520 complexes with 5 to 8 vertices, mostly flag
/// complexes of sparse and medium-density graphs.
pub fn random_corpus() -> Vec<SimplicialComplex> {
    const PROBABILITIES: [(u64, u64); 4] = [(1, 4), (1, 3), (1, 2), (2, 3)];
    (0..520u64)
        .map(|i| {
            let (p_num, p_den) = PROBABILITIES[(i / 4 % 4) as usize];
            let spec = GeneratorSpec::Random {
                m: 5 + (i % 4) as usize,
                seed: 1000 + i,
                p_num,
                p_den,
                mode: if i % 3 == 0 { RandomMode::Mixed } else { RandomMode::Flag },
            };
            generate(&spec).unwrap()
        })
        .collect()
}
