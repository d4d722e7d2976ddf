//! Simplicial complexes on `[n]` and the index data of the arrangement they
//! define.
//!
//! A complex `K` determines the arrangement `Z_K`, the union of the coordinate
//! planes `{z_i = 0, i ∈ σ}` over the non-faces `σ`, and the open cover of its
//! complement by `U_σ = {z_i ≠ 0 for i ∉ σ}`, one open set per face. Since
//! `U_σ ∩ U_τ = U_{σ∩τ}`, every intersection of cover elements is again a
//! cover element, indexed by the intersection of the faces.

mod face;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use face::{FaceSet, MAX_VERTICES};

/// A downward-closed family of subsets of `[n]`, always containing `∅`.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    /// Sorted by the cover-index total order.
    faces: Vec<FaceSet>,
    membership: Vec<u64>,
    facets: Vec<FaceSet>,
    minimal_non_faces: Vec<FaceSet>,
    warnings: Vec<String>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("n", &self.n)
            .field("facets", &self.facets)
            .finish()
    }
}

impl SimplicialComplex {
    /// Downward closure of the given faces.
    pub fn from_facets(n: usize, facets: &[FaceSet]) -> Result<Self> {
        check_n(n)?;
        let full = FaceSet::full(n);
        let mut membership = vec![0u64; bitset_words(n)];
        set_bit(&mut membership, 0);
        for &facet in facets {
            if !facet.is_subset(full) {
                return Err(Error::InvalidComplex(format!(
                    "face {facet} uses vertices outside 1..={n}"
                )));
            }
            if get_bit(&membership, facet.bits()) {
                continue;
            }
            for sub in facet.subsets() {
                set_bit(&mut membership, sub.bits());
            }
        }
        Ok(Self::from_membership(n, membership))
    }

    /// The complex whose faces are the subsets of `[n]` containing none of
    /// `missing`. The minimal elements of `missing` become the minimal non-faces.
    pub fn from_missing_faces(n: usize, missing: &[FaceSet]) -> Result<Self> {
        check_n(n)?;
        let full = FaceSet::full(n);
        for &m in missing {
            if !m.is_subset(full) {
                return Err(Error::InvalidComplex(format!(
                    "missing face {m} uses vertices outside 1..={n}"
                )));
            }
        }
        let mut membership = vec![0u64; bitset_words(n)];
        let allowed = |s: FaceSet| missing.iter().all(|&m| !m.is_subset(s));
        if !allowed(FaceSet::EMPTY) {
            return Err(Error::InvalidComplex(
                "the empty set cannot be a missing face".into(),
            ));
        }
        // Faces are grown from ∅ by adding vertices above the current maximum,
        // so each face is visited once.
        let mut stack = vec![FaceSet::EMPTY];
        while let Some(face) = stack.pop() {
            set_bit(&mut membership, face.bits());
            let start = 32 - face.bits().leading_zeros() as usize + 1;
            for v in start..=n {
                let next = face.with(v);
                if allowed(next) {
                    stack.push(next);
                }
            }
        }
        Ok(Self::from_membership(n, membership))
    }

    /// Complex from an arbitrary membership predicate, which must be downward
    /// closed and hold on `∅`.
    pub fn from_predicate(n: usize, is_face: impl Fn(FaceSet) -> bool) -> Result<Self> {
        check_n(n)?;
        let mut membership = vec![0u64; bitset_words(n)];
        for bits in 0..(1u32 << n) {
            if is_face(FaceSet::from_bits(bits)) {
                set_bit(&mut membership, bits);
            }
        }
        let complex = Self::from_membership(n, membership);
        if !complex.contains(FaceSet::EMPTY) {
            return Err(Error::InvalidComplex("∅ must be a face".into()));
        }
        for &f in &complex.faces {
            if f.iter().any(|v| !complex.contains(f.without(v))) {
                return Err(Error::InvalidComplex(format!(
                    "face family is not downward closed at {f}"
                )));
            }
        }
        Ok(complex)
    }

    fn from_membership(n: usize, membership: Vec<u64>) -> Self {
        let mut faces = Vec::new();
        for bits in 0..(1u32 << n) {
            if get_bit(&membership, bits) {
                faces.push(FaceSet::from_bits(bits));
            }
        }
        faces.sort();

        let is_face = |s: FaceSet| get_bit(&membership, s.bits());
        let facets: Vec<FaceSet> = faces
            .iter()
            .copied()
            .filter(|&f| (1..=n).all(|v| f.contains(v) || !is_face(f.with(v))))
            .collect();

        let mut minimal_non_faces = Vec::new();
        for &f in &faces {
            for v in 1..=n {
                if f.contains(v) {
                    continue;
                }
                let candidate = f.with(v);
                if !is_face(candidate) && candidate.iter().all(|w| is_face(candidate.without(w))) {
                    minimal_non_faces.push(candidate);
                }
            }
        }
        minimal_non_faces.sort();
        minimal_non_faces.dedup();

        let warnings = (1..=n)
            .filter(|&v| !is_face(FaceSet::singleton(v)))
            .map(|v| {
                format!(
                    "vertex {v} is not a face: the arrangement contains the hyperplane z_{v} = 0"
                )
            })
            .collect();

        SimplicialComplex {
            n,
            faces,
            membership,
            facets,
            minimal_non_faces,
            warnings,
        }
    }

    /// The full simplex on `[n]`.
    pub fn simplex(n: usize) -> Result<Self> {
        Self::from_facets(n, &[FaceSet::full(n)])
    }

    /// The boundary of the simplex on `[n]`.
    pub fn simplex_boundary(n: usize) -> Result<Self> {
        Self::from_missing_faces(n, &[FaceSet::full(n)])
    }

    /// `n` isolated points.
    pub fn points(n: usize) -> Result<Self> {
        let facets: Vec<_> = (1..=n).map(FaceSet::singleton).collect();
        Self::from_facets(n, &facets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, s: FaceSet) -> bool {
        s.is_subset(FaceSet::full(self.n)) && get_bit(&self.membership, s.bits())
    }

    /// All faces including `∅`, sorted by cardinality then mask.
    pub fn faces(&self) -> &[FaceSet] {
        &self.faces
    }

    pub fn facets(&self) -> &[FaceSet] {
        &self.facets
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Number of faces with `k` vertices, for `k = 0..=n`.
    pub fn face_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n + 1];
        for f in &self.faces {
            counts[f.len()] += 1;
        }
        counts
    }

    /// Index of each face in [`faces`](Self::faces).
    pub fn face_index(&self) -> HashMap<FaceSet, usize> {
        self.faces.iter().enumerate().map(|(i, &f)| (f, i)).collect()
    }

    /// Full subcomplex on the vertex set `vertices`.
    pub fn restrict(&self, vertices: FaceSet) -> Vec<FaceSet> {
        self.faces
            .iter()
            .copied()
            .filter(|f| f.is_subset(vertices))
            .collect()
    }
}

/// Inclusion-minimal subsets of `[n]` that are not faces. These generate the
/// Stanley–Reisner ideal and index the maximal planes of the arrangement.
pub fn minimal_non_faces(k: &SimplicialComplex) -> Vec<FaceSet> {
    k.minimal_non_faces.clone()
}

/// Index set of the cover `{U_σ}`: every face, `∅` included.
pub fn cover_elements(k: &SimplicialComplex) -> Vec<FaceSet> {
    k.faces.clone()
}

/// `U_a ∩ U_b = U_{a∩b}`.
pub fn cover_intersection(a: FaceSet, b: FaceSet) -> FaceSet {
    a.intersection(b)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidComplex("n must be at least 1".into()));
    }
    if n > MAX_VERTICES {
        return Err(Error::InvalidComplex(format!(
            "n = {n} exceeds the limit of {MAX_VERTICES} vertices"
        )));
    }
    Ok(())
}

fn bitset_words(n: usize) -> usize {
    (1usize << n).div_ceil(64)
}

fn set_bit(words: &mut [u64], bits: u32) {
    words[bits as usize / 64] |= 1 << (bits % 64);
}

fn get_bit(words: &[u64], bits: u32) -> bool {
    words[bits as usize / 64] & (1 << (bits % 64)) != 0
}

/// Input document: `{"n": .., "facets": [[..], ..]}` or
/// `{"n": .., "missing_faces": [[..], ..]}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDocument {
    n: Option<i64>,
    facets: Option<Vec<Vec<i64>>>,
    missing_faces: Option<Vec<Vec<i64>>>,
}

/// Parses the JSON complex description.
pub fn parse_complex(document: &str) -> Result<SimplicialComplex> {
    let doc: ComplexDocument =
        serde_json::from_str(document).map_err(|e| Error::Parse(e.to_string()))?;
    let n = match doc.n {
        None => return Err(Error::Parse("missing field `n`".into())),
        Some(n) if n < 1 => {
            return Err(Error::InvalidComplex(format!("n must be at least 1, got {n}")))
        }
        Some(n) => n as usize,
    };
    check_n(n)?;
    let to_faces = |lists: Vec<Vec<i64>>| -> Result<Vec<FaceSet>> {
        lists
            .into_iter()
            .map(|list| {
                let mut vs = Vec::with_capacity(list.len());
                for v in list {
                    if v < 1 || v as usize > n {
                        return Err(Error::InvalidComplex(format!(
                            "vertex {v} out of range 1..={n}"
                        )));
                    }
                    vs.push(v as usize);
                }
                FaceSet::from_vertices(&vs, n)
            })
            .collect()
    };
    match (doc.facets, doc.missing_faces) {
        (Some(facets), None) => SimplicialComplex::from_facets(n, &to_faces(facets)?),
        (None, Some(missing)) => SimplicialComplex::from_missing_faces(n, &to_faces(missing)?),
        (Some(_), Some(_)) => Err(Error::Parse(
            "give either `facets` or `missing_faces`, not both".into(),
        )),
        (None, None) => Err(Error::Parse(
            "one of `facets` or `missing_faces` is required".into(),
        )),
    }
}

/// JSON summary emitted by the CLI.
#[derive(Debug, Serialize)]
pub struct ComplexSummary {
    pub n: usize,
    pub facets: Vec<FaceSet>,
    pub missing_faces: Vec<FaceSet>,
    /// `face_counts[k]` is the number of faces with `k` vertices (dimension `k - 1`).
    pub face_counts: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl From<&SimplicialComplex> for ComplexSummary {
    fn from(k: &SimplicialComplex) -> Self {
        ComplexSummary {
            n: k.n,
            facets: k.facets.clone(),
            missing_faces: k.minimal_non_faces.clone(),
            face_counts: k.face_counts(),
            warnings: k.warnings.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(v: &[usize]) -> FaceSet {
        FaceSet::from_vertices(v, MAX_VERTICES).unwrap()
    }

    #[test]
    fn two_points_closure() {
        let k = parse_complex(r#"{"n":2,"facets":[[1],[2]]}"#).unwrap();
        assert_eq!(k.faces(), &[fs(&[]), fs(&[1]), fs(&[2])]);
        assert_eq!(minimal_non_faces(&k), vec![fs(&[1, 2])]);
    }

    #[test]
    fn boundary_of_triangle_from_missing_face() {
        let k = parse_complex(r#"{"n":3,"missing_faces":[[1,2,3]]}"#).unwrap();
        assert_eq!(k.faces().len(), 7);
        assert_eq!(k.facets().len(), 3);
        assert_eq!(minimal_non_faces(&k), vec![fs(&[1, 2, 3])]);
    }

    #[test]
    fn three_points_have_three_missing_edges() {
        let k = parse_complex(r#"{"n":3,"facets":[[1],[2],[3]]}"#).unwrap();
        assert_eq!(
            minimal_non_faces(&k),
            vec![fs(&[1, 2]), fs(&[1, 3]), fs(&[2, 3])]
        );
    }

    #[test]
    fn full_simplex_has_no_non_faces() {
        let k = SimplicialComplex::simplex(3).unwrap();
        assert!(minimal_non_faces(&k).is_empty());
        assert_eq!(cover_elements(&SimplicialComplex::simplex(2).unwrap()).len(), 4);
    }

    #[test]
    fn cover_of_two_points() {
        let k = SimplicialComplex::simplex_boundary(2).unwrap();
        assert_eq!(cover_elements(&k), vec![fs(&[]), fs(&[1]), fs(&[2])]);
        assert_eq!(cover_intersection(fs(&[1]), fs(&[2])), FaceSet::EMPTY);
        assert_eq!(cover_elements(&SimplicialComplex::simplex_boundary(3).unwrap()).len(), 7);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_complex(r#"{"n":2,"facets":[[3]]}"#).is_err());
        assert!(parse_complex(r#"{"n":25,"facets":[[1]]}"#).is_err());
        assert!(parse_complex(r#"{"facets":[[1]]}"#).is_err());
        assert!(parse_complex(r#"{"n":0,"facets":[]}"#).is_err());
        assert!(parse_complex(r#"{"n":2}"#).is_err());
        assert!(parse_complex("not json").is_err());
    }

    #[test]
    fn ghost_vertex_warns() {
        let k = parse_complex(r#"{"n":3,"facets":[[1,2]]}"#).unwrap();
        assert_eq!(k.warnings().len(), 1);
        assert_eq!(minimal_non_faces(&k), vec![fs(&[3])]);
    }

    #[test]
    fn non_maximal_listed_facets_are_dropped() {
        let k = parse_complex(r#"{"n":3,"facets":[[1],[1,2],[3]]}"#).unwrap();
        assert_eq!(k.facets(), &[fs(&[3]), fs(&[1, 2])]);
    }
}
