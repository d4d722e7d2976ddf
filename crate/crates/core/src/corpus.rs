//! The test corpus: every complex on at most four vertices, a fixed sample of
//! random complexes on five and six vertices, and the six-vertex real
//! projective plane.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{FaceSet, SimplicialComplex};

pub const RANDOM_SEED: u64 = 0x5eed_2024;
pub const RANDOM_COUNT: usize = 200;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub complex: SimplicialComplex,
}

/// All downward-closed families containing `∅` on `[n]`, `1 ≤ n ≤ max_n`.
/// Vertices need not be faces.
pub fn small_complexes(max_n: usize) -> Vec<CorpusEntry> {
    assert!(max_n <= 4, "exhaustive enumeration is only meant for n <= 4");
    let mut out = Vec::new();
    for n in 1..=max_n {
        let nonempty = (1u32 << n) - 1;
        for family in 0u32..(1u32 << nonempty) {
            // bit b-1 of `family` says whether the subset with bits b is a face
            let is_face = |f: FaceSet| f.is_empty() || family >> (f.bits() - 1) & 1 == 1;
            let closed = (1..=nonempty).all(|b| {
                let f = FaceSet::from_bits(b);
                !is_face(f) || f.iter().all(|v| is_face(f.without(v)))
            });
            if !closed {
                continue;
            }
            let k = SimplicialComplex::from_predicate(n, is_face).expect("closed family");
            out.push(CorpusEntry {
                name: format!("small/n{n}/{family:#x}"),
                complex: k,
            });
        }
    }
    out
}

/// `count` complexes on 5 or 6 vertices with one to six facets, mostly of
/// size 2 to 4.
pub fn random_complexes(count: usize, seed: u64) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|idx| {
            let n = rng.gen_range(5..=6);
            let facets: Vec<FaceSet> = (0..rng.gen_range(1..=6))
                .map(|_| {
                    let size = match rng.gen_range(0..10) {
                        0 => 1,
                        9 => 5,
                        _ => rng.gen_range(2..=4),
                    };
                    let mut verts: Vec<usize> = (1..=n).collect();
                    for i in 0..size {
                        let j = rng.gen_range(i..n);
                        verts.swap(i, j);
                    }
                    FaceSet::from_vertices(&verts[..size], n).expect("vertices in range")
                })
                .collect();
            CorpusEntry {
                name: format!("random/{idx}"),
                complex: SimplicialComplex::from_facets(n, &facets).expect("valid facets"),
            }
        })
        .collect()
}

/// Six-vertex triangulation of `ℝP²`.
pub fn projective_plane() -> SimplicialComplex {
    let facets: Vec<FaceSet> = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 6, 2],
        [2, 3, 5],
        [3, 4, 6],
        [4, 5, 2],
        [5, 6, 3],
        [6, 2, 4],
    ]
    .iter()
    .map(|f| FaceSet::from_vertices(f, 6).unwrap())
    .collect();
    SimplicialComplex::from_facets(6, &facets).unwrap()
}

/// The full corpus in a fixed order.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = small_complexes(4);
    out.extend(random_complexes(RANDOM_COUNT, RANDOM_SEED));
    out.push(CorpusEntry {
        name: "rp2".into(),
        complex: projective_plane(),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_of_small_complexes() {
        // Dedekind numbers 3, 6, 20, 168 minus the empty family.
        let counts: Vec<usize> = (1..=4)
            .map(|n| small_complexes(4).iter().filter(|e| e.complex.n() == n).count())
            .collect();
        assert_eq!(counts, vec![2, 5, 19, 167]);
    }

    #[test]
    fn random_sample_is_reproducible() {
        let a = random_complexes(20, 7);
        let b = random_complexes(20, 7);
        assert!(a.iter().zip(&b).all(|(x, y)| x.complex == y.complex));
        assert!(a.iter().all(|e| (5..=6).contains(&e.complex.n())));
    }

    #[test]
    fn projective_plane_shape() {
        let k = projective_plane();
        assert_eq!(k.face_counts(), vec![1, 6, 15, 10, 0, 0, 0]);
    }
}
