//! Simplicial complexes on at most 64 labelled vertices.
//!
//! A complex is stored by its maximal faces. Vertices are 1-based in every
//! external representation; vertex `i` is bit `i - 1` of a [`VertexSet`].
//! The minimal non-simplices `N(K)` are computed lazily and cached.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported vertex count; every vertex set fits in one word.
pub const MAX_VERTICES: usize = 64;

/// Vertex counts up to this use the subset scan for `N(K)`, larger ones use
/// minimal transversals.
const SCAN_LIMIT: usize = 20;

/// A subset of `{1, ..., m}` as a bitmask. Ordering is by numeric mask value.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{1, ..., m}`.
    pub fn full(m: usize) -> Self {
        if m >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << m) - 1)
        }
    }

    pub fn singleton(vertex: u32) -> Self {
        debug_assert!((1..=64).contains(&vertex));
        VertexSet(1u64 << (vertex - 1))
    }

    /// Builds a set from 1-based vertex labels, rejecting anything outside `1..=m`.
    pub fn from_vertices<I>(m: usize, vertices: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<u64>,
    {
        let mut bits = 0u64;
        for v in vertices {
            let v = v.into();
            if v == 0 || v > m as u64 || v > 64 {
                return Err(Error::VertexOutOfRange { vertex: v, m });
            }
            bits |= 1u64 << (v - 1);
        }
        Ok(VertexSet(bits))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, vertex: u32) -> bool {
        vertex >= 1 && vertex <= 64 && self.0 >> (vertex - 1) & 1 == 1
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: VertexSet) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn with(self, vertex: u32) -> Self {
        self.union(VertexSet::singleton(vertex))
    }

    pub fn without(self, vertex: u32) -> Self {
        self.difference(VertexSet::singleton(vertex))
    }

    /// Largest vertex label, if any.
    pub fn max_vertex(self) -> Option<u32> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    /// 1-based vertex labels in increasing order.
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    /// Shifts every vertex label up by `offset`.
    pub fn shifted(self, offset: usize) -> Self {
        VertexSet(self.0 << offset)
    }
}

pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(v + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.vertices())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let vertices = Vec::<u64>::deserialize(deserializer)?;
        VertexSet::from_vertices(MAX_VERTICES, vertices).map_err(serde::de::Error::custom)
    }
}

/// Keeps only the inclusion-maximal sets, sorted by numeric value.
pub(crate) fn maximal_elements(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// Keeps only the inclusion-minimal sets, sorted by numeric value.
pub(crate) fn minimal_elements(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// Minimal transversals (hitting sets) of a hypergraph, by Berge's
/// incremental algorithm. An empty edge admits no transversal.
pub fn minimal_transversals(edges: &[VertexSet]) -> Vec<VertexSet> {
    let mut current = vec![VertexSet::EMPTY];
    for &edge in edges {
        if edge.is_empty() {
            return Vec::new();
        }
        let mut next = Vec::with_capacity(current.len() * 2);
        for h in current {
            if h.intersects(edge) {
                next.push(h);
            } else {
                next.extend(edge.vertices().map(|v| h.with(v)));
            }
        }
        current = minimal_elements(next);
    }
    current.sort();
    current
}

/// A finite abstract simplicial complex on the vertex set `{1, ..., m}`.
///
/// Immutable once built; the `N(K)` cache is filled at most once and the type
/// is `Sync`, so a complex can be shared freely between search workers.
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<VertexSet>,
    nonsimplices: OnceLock<Vec<VertexSet>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex {
            m: self.m,
            facets: self.facets.clone(),
            nonsimplices: self.nonsimplices.clone(),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("m", &self.m)
            .field("facets", &self.facets)
            .finish()
    }
}

fn check_vertex_count(m: usize) -> Result<()> {
    if m == 0 || m > MAX_VERTICES {
        return Err(Error::VertexCount(m));
    }
    Ok(())
}

fn check_in_range(m: usize, set: VertexSet) -> Result<()> {
    match set.difference(VertexSet::full(m)).max_vertex() {
        Some(v) => Err(Error::VertexOutOfRange { vertex: v as u64, m }),
        None => Ok(()),
    }
}

impl SimplicialComplex {
    /// The complex generated by `facets`. Dominated faces are dropped; an
    /// empty list yields the empty complex `{∅}`.
    pub fn from_facets(m: usize, facets: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        check_vertex_count(m)?;
        let mut list = Vec::new();
        for f in facets {
            check_in_range(m, f)?;
            list.push(f);
        }
        if list.is_empty() {
            list.push(VertexSet::EMPTY);
        }
        Ok(SimplicialComplex {
            m,
            facets: maximal_elements(list),
            nonsimplices: OnceLock::new(),
        })
    }

    /// The unique complex whose minimal non-simplices are exactly `nonsimplices`.
    ///
    /// Its maximal faces are the complements of the minimal transversals of
    /// `nonsimplices`.
    pub fn from_min_nonsimplices(
        m: usize,
        nonsimplices: impl IntoIterator<Item = VertexSet>,
    ) -> Result<Self> {
        check_vertex_count(m)?;
        let mut list: Vec<VertexSet> = Vec::new();
        for w in nonsimplices {
            check_in_range(m, w)?;
            if w.is_empty() {
                return Err(Error::EmptyNonsimplex);
            }
            if let Some(other) = list.iter().find(|o| o.is_subset(w) || w.is_subset(**o)) {
                return Err(Error::NotAntichain(other.to_string(), w.to_string()));
            }
            list.push(w);
        }
        list.sort();
        let full = VertexSet::full(m);
        let facets = minimal_transversals(&list)
            .into_iter()
            .map(|t| full.difference(t))
            .collect();
        let complex = SimplicialComplex {
            m,
            facets: maximal_elements(facets),
            nonsimplices: OnceLock::new(),
        };
        let _ = complex.nonsimplices.set(list);
        Ok(complex)
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    /// The maximal faces, in canonical (numeric) order.
    pub fn maximal_simplices(&self) -> &[VertexSet] {
        &self.facets
    }

    /// `max |F| - 1` over the maximal faces; `-1` for `{∅}`.
    pub fn dimension(&self) -> i64 {
        self.facets.iter().map(|f| f.len() as i64).max().unwrap_or(0) - 1
    }

    pub fn contains_face(&self, sigma: VertexSet) -> bool {
        self.facets.iter().any(|f| sigma.is_subset(*f))
    }

    /// Vertices `i` with `{i} ∉ K`.
    pub fn ghost_vertices(&self) -> Vec<u32> {
        let present = self.facets.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f));
        VertexSet::full(self.m).difference(present).vertices().collect()
    }

    /// The minimal non-simplices `N(K)`, canonically ordered.
    pub fn minimal_nonsimplices(&self) -> &[VertexSet] {
        self.nonsimplices.get_or_init(|| {
            if self.m <= SCAN_LIMIT {
                self.minimal_nonsimplices_by_scan()
            } else {
                self.minimal_nonsimplices_by_transversals()
            }
        })
    }

    /// `N(K)` by scanning every subset of `[m]` against a face table.
    /// Only feasible for small `m`.
    pub fn minimal_nonsimplices_by_scan(&self) -> Vec<VertexSet> {
        assert!(self.m <= 26, "subset scan needs m <= 26");
        let size = 1usize << self.m;
        let mut is_face = vec![false; size];
        for f in &self.facets {
            is_face[f.bits() as usize] = true;
        }
        for mask in (0..size).rev() {
            if is_face[mask] {
                let mut rest = mask;
                while rest != 0 {
                    let low = rest & rest.wrapping_neg();
                    is_face[mask ^ low] = true;
                    rest ^= low;
                }
            }
        }
        let mut out = Vec::new();
        for mask in 1..size {
            if is_face[mask] {
                continue;
            }
            let mut rest = mask;
            let mut minimal = true;
            while rest != 0 {
                let low = rest & rest.wrapping_neg();
                if !is_face[mask ^ low] {
                    minimal = false;
                    break;
                }
                rest ^= low;
            }
            if minimal {
                out.push(VertexSet::from_bits(mask as u64));
            }
        }
        out
    }

    /// `N(K)` as the minimal transversals of the facet complements: a set is a
    /// non-face exactly when it meets every `[m] \ F`.
    pub fn minimal_nonsimplices_by_transversals(&self) -> Vec<VertexSet> {
        let full = VertexSet::full(self.m);
        let complements: Vec<VertexSet> = self.facets.iter().map(|f| full.difference(*f)).collect();
        minimal_transversals(&complements)
    }

    /// True when every minimal non-simplex has exactly two vertices.
    pub fn is_flag(&self) -> bool {
        self.minimal_nonsimplices().iter().all(|w| w.len() == 2)
    }

    pub fn is_simplex(&self) -> bool {
        self.minimal_nonsimplices().is_empty()
    }

    /// All faces with at most two vertices.
    pub fn one_skeleton(&self) -> SimplicialComplex {
        let mut faces = Vec::new();
        for f in &self.facets {
            let verts: Vec<u32> = f.vertices().collect();
            if verts.len() == 1 {
                faces.push(*f);
            }
            for (i, &a) in verts.iter().enumerate() {
                for &b in &verts[i + 1..] {
                    faces.push(VertexSet::singleton(a).with(b));
                }
            }
        }
        SimplicialComplex::from_facets(self.m, faces).expect("faces of a valid complex")
    }

    /// Edges of the 1-skeleton.
    pub fn edges(&self) -> Vec<VertexSet> {
        self.one_skeleton()
            .facets
            .into_iter()
            .filter(|f| f.len() == 2)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[u32]) -> VertexSet {
        VertexSet::from_vertices(64, v.iter().map(|&x| x as u64)).unwrap()
    }

    fn square() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, [vs(&[1, 2]), vs(&[2, 3]), vs(&[3, 4]), vs(&[1, 4])]).unwrap()
    }

    #[test]
    fn facets_are_canonical() {
        let k = SimplicialComplex::from_facets(3, [vs(&[1, 2]), vs(&[2, 3]), vs(&[1, 3])]).unwrap();
        assert_eq!(k.maximal_simplices(), &[vs(&[1, 2]), vs(&[1, 3]), vs(&[2, 3])]);

        let k = SimplicialComplex::from_facets(3, [vs(&[1, 2, 3]), vs(&[1, 2])]).unwrap();
        assert_eq!(k.maximal_simplices(), &[vs(&[1, 2, 3])]);
        assert_eq!(k.dimension(), 2);

        assert_eq!(square().maximal_simplices().len(), 4);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(SimplicialComplex::from_facets(0, []), Err(Error::VertexCount(0))));
        assert!(matches!(SimplicialComplex::from_facets(65, []), Err(Error::VertexCount(65))));
        assert!(matches!(
            SimplicialComplex::from_facets(3, [vs(&[1, 4])]),
            Err(Error::VertexOutOfRange { vertex: 4, m: 3 })
        ));
        assert!(matches!(
            SimplicialComplex::from_min_nonsimplices(3, [vs(&[1, 2]), vs(&[1, 2, 3])]),
            Err(Error::NotAntichain(..))
        ));
        assert!(matches!(
            SimplicialComplex::from_min_nonsimplices(3, [VertexSet::EMPTY]),
            Err(Error::EmptyNonsimplex)
        ));
        assert!(VertexSet::from_vertices(3, [0u64]).is_err());
    }

    #[test]
    fn nonsimplices_of_small_complexes() {
        assert_eq!(square().minimal_nonsimplices(), &[vs(&[1, 3]), vs(&[2, 4])]);

        let points = SimplicialComplex::from_facets(3, [vs(&[1]), vs(&[2]), vs(&[3])]).unwrap();
        assert_eq!(points.minimal_nonsimplices(), &[vs(&[1, 2]), vs(&[1, 3]), vs(&[2, 3])]);

        let simplex = SimplicialComplex::from_facets(5, [VertexSet::full(5)]).unwrap();
        assert!(simplex.minimal_nonsimplices().is_empty());
        assert!(simplex.is_simplex());
    }

    #[test]
    fn from_nonsimplices() {
        let k = SimplicialComplex::from_min_nonsimplices(4, [vs(&[1, 3]), vs(&[2, 4])]).unwrap();
        assert_eq!(k, square());

        let boundary = SimplicialComplex::from_min_nonsimplices(3, [vs(&[1, 2, 3])]).unwrap();
        assert_eq!(boundary.maximal_simplices(), &[vs(&[1, 2]), vs(&[1, 3]), vs(&[2, 3])]);

        let full = SimplicialComplex::from_min_nonsimplices(3, []).unwrap();
        assert_eq!(full.maximal_simplices(), &[vs(&[1, 2, 3])]);
    }

    #[test]
    fn empty_complex_conventions() {
        let empty = SimplicialComplex::from_facets(3, [VertexSet::EMPTY]).unwrap();
        assert_eq!(empty.maximal_simplices(), &[VertexSet::EMPTY]);
        assert_eq!(empty.dimension(), -1);
        assert_eq!(empty.ghost_vertices(), vec![1, 2, 3]);
        assert_eq!(empty.minimal_nonsimplices(), &[vs(&[1]), vs(&[2]), vs(&[3])]);
        assert!(empty.contains_face(VertexSet::EMPTY));
        assert_eq!(SimplicialComplex::from_facets(3, []).unwrap(), empty);
    }

    #[test]
    fn flagness_and_skeleton() {
        assert!(square().is_flag());
        let boundary = SimplicialComplex::from_min_nonsimplices(3, [vs(&[1, 2, 3])]).unwrap();
        assert!(!boundary.is_flag());
        let triangle = SimplicialComplex::from_facets(3, [vs(&[1, 2, 3])]).unwrap();
        assert!(triangle.is_flag());

        let tetra = SimplicialComplex::from_facets(4, [vs(&[1, 2, 3, 4])]).unwrap();
        let k4 = tetra.one_skeleton();
        assert_eq!(k4.maximal_simplices().len(), 6);
        assert_eq!(k4.dimension(), 1);
        assert_eq!(square().one_skeleton(), square());
        let points = SimplicialComplex::from_facets(3, [vs(&[1]), vs(&[2]), vs(&[3])]).unwrap();
        assert_eq!(points.one_skeleton(), points);
    }

    #[test]
    fn face_membership() {
        let k = square();
        assert!(!k.contains_face(vs(&[1, 3])));
        assert!(k.contains_face(vs(&[1, 2])));
        assert!(k.contains_face(VertexSet::EMPTY));
    }

    #[test]
    fn transversal_route_matches_scan() {
        let k = square();
        assert_eq!(k.minimal_nonsimplices_by_scan(), k.minimal_nonsimplices_by_transversals());
        let empty = SimplicialComplex::from_facets(2, []).unwrap();
        assert_eq!(empty.minimal_nonsimplices_by_scan(), empty.minimal_nonsimplices_by_transversals());
    }

    #[test]
    fn vertex_set_display_and_json() {
        let s = vs(&[1, 3, 64]);
        assert_eq!(s.to_string(), "{1,3,64}");
        assert_eq!(s.max_vertex(), Some(64));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[1,3,64]");
        assert_eq!(serde_json::from_str::<VertexSet>(&json).unwrap(), s);
    }
}
