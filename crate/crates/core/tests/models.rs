//! Cross-model tables against an independent oracle: `h^{p,q}` is the sum
//! over `|J| = p` of `dim H̃^{q−1}(K_J)`, the reduced cohomology of the full
//! subcomplex on `J` (with `H̃^{-1}(∅) = 1`). The oracle builds the simplicial
//! cochain complex directly and takes ranks modulo a large prime.

use std::collections::BTreeMap;

use mac_hodge::cech::{cohomology_cech_with, hodge_table, CechNerve};
use mac_hodge::cellular::cohomology_cells;
use mac_hodge::corpus::{projective_plane, small_complexes};
use mac_hodge::rk::cohomology_rk;
use mac_hodge::{BigradedTable, Coefficients, FaceSet, SimplicialComplex};
use num_bigint::BigInt;

const PRIME: i64 = 1_000_000_007;

fn rank_mod_p(mut m: Vec<Vec<i64>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] % PRIME != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c].rem_euclid(PRIME), PRIME - 2);
        for r in 0..rows {
            if r != rank && m[r][c] % PRIME != 0 {
                let f = m[r][c].rem_euclid(PRIME) * inv % PRIME;
                for j in 0..cols {
                    m[r][j] = (m[r][j] - f * m[rank][j]).rem_euclid(PRIME);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    r
}

/// Dimensions of `H̃^d(K_J)` for `d = -1, 0, 1, …`, index `d + 1`.
fn reduced_cohomology(k: &SimplicialComplex, j: FaceSet) -> Vec<usize> {
    let faces: Vec<FaceSet> = k.faces().iter().copied().filter(|f| f.is_subset(j)).collect();
    let top = faces.iter().map(|f| f.len()).max().unwrap_or(0);
    let by_size: Vec<Vec<FaceSet>> = (0..=top)
        .map(|s| faces.iter().copied().filter(|f| f.len() == s).collect())
        .collect();
    // coboundary from faces of size s to size s+1
    let ranks: Vec<usize> = (0..=top)
        .map(|s| {
            if s == top {
                return 0;
            }
            let m: Vec<Vec<i64>> = by_size[s + 1]
                .iter()
                .map(|big| {
                    by_size[s]
                        .iter()
                        .map(|small| {
                            if !small.is_subset(*big) {
                                return 0;
                            }
                            let v = big.difference(*small).iter().next().unwrap();
                            let pos = big.iter().position(|x| x == v).unwrap();
                            if pos % 2 == 0 { 1 } else { -1 }
                        })
                        .collect()
                })
                .collect();
            rank_mod_p(m)
        })
        .collect();
    (0..=top)
        .map(|s| by_size[s].len() - ranks[s] - if s == 0 { 0 } else { ranks[s - 1] })
        .collect()
}

fn oracle(k: &SimplicialComplex) -> BTreeMap<(usize, usize), usize> {
    let mut h = BTreeMap::new();
    for j in FaceSet::full(k.n()).subsets() {
        for (idx, d) in reduced_cohomology(k, j).into_iter().enumerate() {
            if d > 0 {
                // H̃^{q-1} sits at index q
                *h.entry((j.len(), idx)).or_insert(0) += d;
            }
        }
    }
    h
}

fn ranks(t: &BigradedTable) -> BTreeMap<(usize, usize), usize> {
    t.nonzero()
        .filter(|(_, b)| b.free_rank > 0)
        .map(|(k, b)| (*k, b.free_rank))
        .collect()
}

fn complex(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
    let f: Vec<FaceSet> = facets
        .iter()
        .map(|v| FaceSet::from_vertices(v, n).unwrap())
        .collect();
    SimplicialComplex::from_facets(n, &f).unwrap()
}

#[test]
fn named_tables() {
    let cases: Vec<(SimplicialComplex, Vec<((usize, usize), usize)>)> = vec![
        (complex(2, &[&[1], &[2]]), vec![((0, 0), 1), ((2, 1), 1)]),
        (complex(3, &[&[1, 2], &[1, 3], &[2, 3]]), vec![((0, 0), 1), ((3, 2), 1)]),
        (complex(3, &[&[1], &[2], &[3]]), vec![((0, 0), 1), ((2, 1), 3), ((3, 1), 2)]),
        (complex(1, &[&[1]]), vec![((0, 0), 1)]),
        (complex(4, &[&[1, 2, 3, 4]]), vec![((0, 0), 1)]),
    ];
    for (k, expected) in cases {
        let expected: BTreeMap<_, _> = expected.into_iter().collect();
        assert_eq!(oracle(&k), expected);
        for coeff in [Coefficients::Integers, Coefficients::Rationals] {
            assert_eq!(ranks(&cohomology_rk(&k, coeff).unwrap()), expected);
            assert_eq!(ranks(&cohomology_cells(&k, coeff).unwrap()), expected);
        }
        assert_eq!(ranks(&cohomology_cech_with(&k, CechNerve::Flags).unwrap()), expected);
        if k.faces().len() <= 14 {
            assert_eq!(ranks(&cohomology_cech_with(&k, CechNerve::Full).unwrap()), expected);
        }
    }
}

#[test]
fn every_small_complex_matches_the_oracle() {
    for e in small_complexes(4) {
        let expected = oracle(&e.complex);
        assert_eq!(ranks(&cohomology_rk(&e.complex, Coefficients::Rationals).unwrap()), expected, "{}", e.name);
        assert_eq!(ranks(&cohomology_cells(&e.complex, Coefficients::Rationals).unwrap()), expected, "{}", e.name);
        assert_eq!(
            ranks(&cohomology_cech_with(&e.complex, CechNerve::Flags).unwrap()),
            expected,
            "{}",
            e.name
        );
    }
}

#[test]
fn full_nerve_agrees_on_small_complexes() {
    for e in small_complexes(3) {
        assert_eq!(
            cohomology_cech_with(&e.complex, CechNerve::Full).unwrap(),
            cohomology_cech_with(&e.complex, CechNerve::Flags).unwrap(),
            "{}",
            e.name
        );
    }
}

#[test]
fn projective_plane_has_two_torsion() {
    let k = projective_plane();
    let rk = cohomology_rk(&k, Coefficients::Integers).unwrap();
    let cells = cohomology_cells(&k, Coefficients::Integers).unwrap();
    assert_eq!(rk, cells);
    let top = rk.get(6, 3);
    assert_eq!(top.free_rank, 0);
    assert_eq!(top.torsion, vec![BigInt::from(2)]);
    // the free part is what the prime-field oracle sees
    assert_eq!(ranks(&cohomology_rk(&k, Coefficients::Rationals).unwrap()), oracle(&k));
    assert_eq!(rk.nonzero().filter(|(_, b)| !b.torsion.is_empty()).count(), 1);
}

#[test]
fn hodge_filtration_examples() {
    let circle = complex(2, &[&[1], &[2]]);
    let h = hodge_table(&circle).unwrap();
    assert_eq!(h.filtration(2, 3), 1);
    assert_eq!(h.filtration(3, 3), 0);
    assert_eq!(h.betti(3), 1);
    let sphere = complex(3, &[&[1, 2], &[1, 3], &[2, 3]]);
    let h = hodge_table(&sphere).unwrap();
    assert_eq!(h.filtration(3, 5), 1);
    assert_eq!(h.filtration(4, 5), 0);
    let points = complex(3, &[&[1], &[2], &[3]]);
    let h = hodge_table(&points).unwrap();
    assert_eq!(h.filtration(2, 3), 3);
    assert_eq!(h.filtration(3, 3), 0);
    assert_eq!(h.filtration(3, 4), 2);
}
