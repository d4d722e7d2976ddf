use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use mac_hodge::cech::{CechComplex, CechNerve, LogCochain, LogForm, Nerve};
use mac_hodge::cellular::{cells_of_bidegree, homology_cells, CellChain, CellIndex};
use mac_hodge::checks;
use mac_hodge::kernel::{build_kernel, evaluate_representation, PolyFunction, QuadratureSpec};
use mac_hodge::linalg::{rank_rational, smith_normal_form, ExactMatrix};
use mac_hodge::resolvent::{build_resolvent, pair, pair_resolvent, UChain};
use mac_hodge::rk::{basis, differential_of, multiply, FaultInjection, RkElement};
use mac_hodge::{Coefficients, FaceSet, SimplicialComplex};

fn arb_complex(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1u32..(1 << n), 0..5).prop_map(move |bits| {
            let facets: Vec<FaceSet> = bits.into_iter().map(FaceSet::from_bits).collect();
            SimplicialComplex::from_facets(n, &facets).unwrap()
        })
    })
}

fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-4i64..=4, c), r)
    })
}

/// Product of elementary integer matrices of size `k`, each one of: add a
/// multiple of one row to another, swap two rows, negate a row.
fn unimodular(k: usize, ops: &[(u8, usize, usize, i64)]) -> ExactMatrix {
    let mut m: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect();
    for &(kind, a, b, c) in ops {
        let (a, b) = (a % k, b % k);
        match kind % 3 {
            0 if a != b => {
                for j in 0..k {
                    m[a][j] += c * m[b][j];
                }
            }
            1 => m.swap(a, b),
            _ => m[a].iter_mut().for_each(|x| *x = -*x),
        }
    }
    ExactMatrix::from_rows(&m)
}

fn arb_ops() -> impl Strategy<Value = Vec<(u8, usize, usize, i64)>> {
    prop::collection::vec((0u8..3, 0usize..6, 0usize..6, -2i64..=2), 0..8)
}

fn int(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

fn rk_element(k: &SimplicialComplex, p: usize, q: usize, coeffs: &[i64]) -> RkElement {
    let mut a = RkElement::zero();
    for (b, &c) in basis(k, p, q).into_iter().zip(coeffs.iter().cycle()) {
        a.add_term(b, BigInt::from(c));
    }
    a
}

/// Random admissible cochain on the flag nerve: one monomial per tuple.
fn random_cochain(k: &SimplicialComplex, nerve: &Nerve, p: usize, t: usize, seed: &[u32]) -> LogCochain {
    let mut w = LogCochain::zero(p, t);
    let full = FaceSet::full(k.n());
    for (idx, tuple) in nerve.tuples(t).iter().enumerate() {
        let s = seed[idx % seed.len()];
        let free = full.difference(tuple.iter().fold(full, |acc, f| acc.intersection(*f)));
        let choices: Vec<FaceSet> = free.subsets_of_size(p).collect();
        if choices.is_empty() || s % 3 == 0 {
            continue;
        }
        let i = choices[s as usize % choices.len()];
        w.add(tuple, &LogForm::monomial(i, int(s as i64 % 7 - 3))).unwrap();
    }
    w
}

/// Random chain of tori `S¹_γ`, `|γ| = p`, on tuples of degree `t`.
fn random_torus_chain(k: &SimplicialComplex, nerve: &Nerve, p: usize, t: usize, seed: &[u32]) -> UChain {
    let mut g = UChain::zero(t, p);
    let tori: Vec<FaceSet> = FaceSet::full(k.n()).subsets_of_size(p).collect();
    for (idx, tuple) in nerve.tuples(t).iter().enumerate() {
        let s = seed[(idx + 1) % seed.len()];
        if tori.is_empty() || s % 2 == 0 {
            continue;
        }
        let mut c = CellChain::zero();
        c.add_term(CellIndex::torus(tori[s as usize % tori.len()]), BigInt::from(s as i64 % 5 - 2));
        g.add(tuple, &c).unwrap();
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_is_invariant_under_unimodular_changes(
        rows in arb_matrix(),
        left in arb_ops(),
        right in arb_ops(),
    ) {
        let m = ExactMatrix::from_rows(&rows);
        let u = unimodular(m.rows(), &left);
        let v = unimodular(m.cols(), &right);
        let changed = u.mul(&m).unwrap().mul(&v).unwrap();
        prop_assert_eq!(smith_normal_form(&m).unwrap(), smith_normal_form(&changed).unwrap());
    }

    #[test]
    fn rational_rank_counts_invariant_factors(rows in arb_matrix()) {
        let m = ExactMatrix::from_rows(&rows);
        let snf = smith_normal_form(&m).unwrap();
        prop_assert_eq!(rank_rational(&m), snf.rank);
        prop_assert_eq!(rank_rational(&m.transpose()), snf.rank);
        let divides = snf.diag.windows(2).all(|w| {
            w[1] == BigInt::from(0) || (&w[1] % &w[0]) == BigInt::from(0)
        });
        prop_assert!(divides);
    }

    #[test]
    fn differentials_square_to_zero(k in arb_complex(5)) {
        prop_assert_eq!(checks::rk_square_zero(&k, FaultInjection::None), Ok(()));
        prop_assert_eq!(checks::cell_square_zero(&k), Ok(()));
        prop_assert_eq!(checks::cech_square_zero(&k, CechNerve::Flags), Ok(()));
        prop_assert_eq!(checks::phi_commutes(&k), Ok(()));
    }

    #[test]
    fn product_is_graded_commutative_and_leibniz(
        k in arb_complex(5),
        (pa, qa, pb, qb) in (0usize..4, 0usize..3, 0usize..4, 0usize..3),
        ca in prop::collection::vec(-3i64..=3, 1..6),
        cb in prop::collection::vec(-3i64..=3, 1..6),
    ) {
        let a = rk_element(&k, pa, qa.min(pa), &ca);
        let b = rk_element(&k, pb, qb.min(pb), &cb);
        let deg_a = pa + qa.min(pa);
        let deg_b = pb + qb.min(pb);
        let ab = multiply(&k, &a, &b);
        let ba = multiply(&k, &b, &a);
        let sign = if deg_a * deg_b % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(&ab, &ba.scale(&BigInt::from(sign)));
        let lhs = differential_of(&k, &ab);
        let sign_a = BigInt::from(if deg_a % 2 == 0 { 1 } else { -1 });
        let rhs = multiply(&k, &differential_of(&k, &a), &b)
            .add(&multiply(&k, &a, &differential_of(&k, &b)).scale(&sign_a));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_is_adjoint(
        k in arb_complex(4),
        p in 0usize..4,
        t in 0usize..3,
        seed in prop::collection::vec(0u32..1000, 1..12),
    ) {
        let nerve = Nerve::new(&k, CechNerve::Flags).unwrap();
        let p = p.min(k.n());
        let w = random_cochain(&k, &nerve, p, t, &seed);
        let g = random_torus_chain(&k, &nerve, p, t + 1, &seed);
        let lhs = pair(&w.coboundary(&k, &nerve), &g).unwrap();
        let rhs = pair(&w, &g.delta_prime().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_sees_classes_only(
        k in arb_complex(4),
        seed in prop::collection::vec(-3i64..=3, 1..20),
    ) {
        let cech = CechComplex::new(&k, CechNerve::Flags).unwrap();
        let h = homology_cells(&k, Coefficients::Rationals).unwrap();
        for (&(p, q), cycles) in &h.cycles {
            let z = &cycles[0];
            // shift the cycle by a boundary
            let mut c = CellChain::zero();
            for (cell, &x) in cells_of_bidegree(&k, p, q + 1).into_iter().zip(seed.iter().cycle()) {
                c.add_term(cell, BigInt::from(x));
            }
            let shifted = z.add(&c.boundary());
            let cocycles = cech.cocycles(p, q).unwrap();
            let r = build_resolvent(&k, z).unwrap();
            if shifted.is_zero() {
                continue;
            }
            let r2 = build_resolvent(&k, &shifted).unwrap();
            for w in &cocycles {
                prop_assert_eq!(pair_resolvent(w, &r).unwrap(), pair_resolvent(w, &r2).unwrap());
                // shift the cocycle by a coboundary
                if q > 0 {
                    let u: Vec<u32> = seed.iter().map(|x| (x + 3) as u32 * 7 + 1).collect();
                    let eta = random_cochain(&k, cech.nerve(), p, q - 1, &u);
                    let w2 = add_cochains(w, &eta.coboundary(&k, cech.nerve()));
                    prop_assert_eq!(pair_resolvent(w, &r).unwrap(), pair_resolvent(&w2, &r).unwrap());
                }
            }
        }
    }

    #[test]
    fn kernel_is_linear_and_normalized(
        a in prop::collection::vec((0u32..4, 0u32..4, -2.0f64..2.0), 1..4),
        zr in prop::collection::vec(-0.4f64..0.4, 4),
    ) {
        let k = SimplicialComplex::simplex_boundary(2).unwrap();
        let kd = build_kernel(&k, 3).unwrap();
        let spec = QuadratureSpec::new(64).unwrap();
        let zeta = [Complex64::new(zr[0], zr[1]), Complex64::new(zr[2], zr[3])];
        let mut total = PolyFunction::zero(2);
        let mut sum = Complex64::default();
        for (e1, e2, c) in a {
            let f = PolyFunction::monomial(2, vec![e1, e2], Complex64::new(c, 0.0));
            sum += evaluate_representation(&kd, &f, &zeta, spec).unwrap();
            total = total.add(&f);
        }
        let whole = evaluate_representation(&kd, &total, &zeta, spec).unwrap();
        prop_assert!((whole - sum).norm() < 1e-13);
        prop_assert!((whole - total.eval(&zeta)).norm() < 1e-12);
        let one = PolyFunction::constant(2, Complex64::new(1.0, 0.0));
        let v = evaluate_representation(&kd, &one, &zeta, spec).unwrap();
        prop_assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }
}

fn add_cochains(a: &LogCochain, b: &LogCochain) -> LogCochain {
    let mut out = a.clone();
    for (t, f) in b.values() {
        out.add(t, f).unwrap();
    }
    out
}
