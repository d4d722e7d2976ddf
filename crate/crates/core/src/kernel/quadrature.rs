//! Trapezoid rule on the unit torus.
//!
//! With nodes `w_k = e^{2πik/N}` and `dz = iz dθ`,
//! `(2πi)^{-1} ∮ g(z) dz ≈ N^{-1} Σ_k g(w_k) w_k`, which is spectrally
//! accurate for `g` analytic near the circle. Sums use a fixed pairwise tree
//! so results do not depend on scheduling.

use num_complex::Complex64;

use crate::complex::FaceSet;
use crate::error::{Error, Result};

/// Leaves of the summation tree are at most this long.
const LEAF: usize = 16;
/// Ranges at least this long are split across threads.
const PARALLEL_MIN: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureSpec {
    nodes: usize,
}

impl QuadratureSpec {
    /// `nodes` per circle; a power of two, at least 4.
    pub fn new(nodes: usize) -> Result<Self> {
        if nodes < 4 || !nodes.is_power_of_two() {
            return Err(Error::Precondition(format!(
                "nodes per circle must be a power of two >= 4, got {nodes}"
            )));
        }
        Ok(QuadratureSpec { nodes })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn radius(&self) -> f64 {
        1.0
    }

    /// The `N`-th roots of unity.
    pub fn circle(&self) -> Vec<Complex64> {
        (0..self.nodes)
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / self.nodes as f64))
            .collect()
    }
}

/// `Σ_{k∈lo..hi} term(k)` by a fixed binary tree.
pub fn pairwise_sum<F>(lo: usize, hi: usize, term: &F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let len = hi - lo;
    if len <= LEAF {
        return (lo..hi).map(term).fold(Complex64::default(), |a, b| a + b);
    }
    let mid = lo + len / 2;
    if len >= PARALLEL_MIN {
        let (a, b) = rayon::join(|| pairwise_sum(lo, mid, term), || pairwise_sum(mid, hi, term));
        a + b
    } else {
        pairwise_sum(lo, mid, term) + pairwise_sum(mid, hi, term)
    }
}

/// `(2πi)^{-|γ|} ∮_{S¹_γ} g(z) Π_{j∈γ} dz_j` on the unit torus in the
/// coordinates of `γ`, with the other coordinates of `z ∈ ℂⁿ` at the origin.
pub fn torus_quadrature<G>(g: G, gamma: FaceSet, n: usize, spec: QuadratureSpec) -> Complex64
where
    G: Fn(&[Complex64]) -> Complex64 + Sync,
{
    let circle = spec.circle();
    let dirs = gamma.to_vec();
    let big_n = spec.nodes();
    let total = big_n.pow(dirs.len() as u32);
    let term = |mut idx: usize| {
        let mut z = vec![Complex64::default(); n];
        let mut jac = Complex64::new(1.0, 0.0);
        for &j in &dirs {
            let w = circle[idx % big_n];
            idx /= big_n;
            z[j - 1] = w;
            jac *= w;
        }
        g(&z) * jac
    };
    pairwise_sum(0, total, &term) / total as f64
}

/// `N^{-1} Σ_k w_k^{m+1} / (w_k − ζ)`, the one-variable Cauchy sum for `z^m`.
pub fn cauchy_sum(m: u32, zeta: Complex64, circle: &[Complex64]) -> Complex64 {
    let term = |k: usize| {
        let w = circle[k];
        w.powu(m + 1) / (w - zeta)
    };
    pairwise_sum(0, circle.len(), &term) / circle.len() as f64
}
