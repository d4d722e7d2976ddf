//! The differential bigraded algebra `R_K = Λ[u_1..u_n] ⊗ ℤ[K] / J`.
//!
//! `J` is generated by `v_i²` and `u_i v_i`, so a basis is given by the
//! monomials `u_γ v_σ` with `σ ∈ K` and `γ ∩ σ = ∅`. Bidegrees are
//! `v_i = (1,1)`, `u_i = (1,0)`, hence `u_γ v_σ` sits in
//! `(|γ| + |σ|, |σ|)`. The differential is `δ u_i = v_i`, `δ v_i = 0`,
//! extended as a derivation acting on `u_{i_1} ∧ … ∧ u_{i_k}` with sign
//! `(−1)^{j−1}` at position `j`; the `v_i` have even degree and are central.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::{FaceSet, SimplicialComplex};
use crate::error::Result;
use crate::linalg::{cohomology_block, Coefficients, ExactMatrix, Int};
use crate::table::BigradedTable;

/// The monomial `u_γ v_σ`. Ordered by `σ`, then `γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RkBasisElement {
    pub sigma: FaceSet,
    pub gamma: FaceSet,
}

impl RkBasisElement {
    pub fn new(gamma: FaceSet, sigma: FaceSet) -> Self {
        RkBasisElement { sigma, gamma }
    }

    /// `(p, q) = (|γ| + |σ|, |σ|)`.
    pub fn bidegree(&self) -> (usize, usize) {
        (self.gamma.len() + self.sigma.len(), self.sigma.len())
    }

    /// Total degree `p + q`.
    pub fn degree(&self) -> usize {
        self.gamma.len() + 2 * self.sigma.len()
    }

    /// Nonzero in `R_K`.
    pub fn is_admissible(&self, k: &SimplicialComplex) -> bool {
        self.gamma.is_disjoint(self.sigma) && k.contains(self.sigma)
    }
}

impl std::fmt::Display for RkBasisElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.gamma.is_empty() && self.sigma.is_empty() {
            return write!(f, "1");
        }
        for i in self.gamma.iter() {
            write!(f, "u{i}")?;
        }
        for i in self.sigma.iter() {
            write!(f, "v{i}")?;
        }
        Ok(())
    }
}

/// Integer combination of basis monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RkElement {
    terms: BTreeMap<RkBasisElement, BigInt>,
}

impl RkElement {
    pub fn zero() -> Self {
        RkElement::default()
    }

    pub fn one() -> Self {
        Self::monomial(FaceSet::EMPTY, FaceSet::EMPTY)
    }

    pub fn u(i: usize) -> Self {
        Self::monomial(FaceSet::singleton(i), FaceSet::EMPTY)
    }

    pub fn v(i: usize) -> Self {
        Self::monomial(FaceSet::EMPTY, FaceSet::singleton(i))
    }

    /// `u_γ v_σ` with coefficient one. Not reduced modulo `K`.
    pub fn monomial(gamma: FaceSet, sigma: FaceSet) -> Self {
        let mut e = RkElement::zero();
        e.add_term(RkBasisElement::new(gamma, sigma), BigInt::one());
        e
    }

    pub fn add_term(&mut self, b: RkBasisElement, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(b).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RkBasisElement, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: &RkBasisElement) -> BigInt {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Drops terms that vanish in `R_K`.
    pub fn reduce(&self, k: &SimplicialComplex) -> RkElement {
        RkElement {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.is_admissible(k))
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &RkElement) -> RkElement {
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(*b, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> RkElement {
        let mut out = RkElement::zero();
        for (b, v) in self.terms() {
            out.add_term(*b, v * c);
        }
        out
    }

    /// The bidegree shared by all terms, or `None` if empty or mixed.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(RkBasisElement::bidegree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

/// All `u_γ v_σ` of bidegree `(p, q)`, ordered by `σ` then `γ`.
pub fn basis(k: &SimplicialComplex, p: usize, q: usize) -> Vec<RkBasisElement> {
    if q > p || p > k.n() {
        return Vec::new();
    }
    let all = FaceSet::full(k.n());
    k.faces()
        .iter()
        .filter(|s| s.len() == q)
        .flat_map(|&sigma| {
            all.difference(sigma)
                .subsets_of_size(p - q)
                .map(move |gamma| RkBasisElement::new(gamma, sigma))
        })
        .collect()
}

/// `δ(u_γ v_σ)`, reduced modulo `K`.
pub fn apply_differential(k: &SimplicialComplex, b: &RkBasisElement) -> RkElement {
    let mut out = RkElement::zero();
    for (j, i) in b.gamma.iter().enumerate() {
        let sigma = b.sigma.with(i);
        if !k.contains(sigma) {
            continue;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        out.add_term(RkBasisElement::new(b.gamma.without(i), sigma), BigInt::from(sign));
    }
    out
}

/// `δ` on an arbitrary element.
pub fn differential_of(k: &SimplicialComplex, a: &RkElement) -> RkElement {
    let mut out = RkElement::zero();
    for (b, c) in a.reduce(k).terms() {
        out = out.add(&apply_differential(k, b).scale(c));
    }
    out
}

/// Matrix of `δ: R^{p,q} → R^{p,q+1}` in the [`basis`] order.
pub fn differential(k: &SimplicialComplex, p: usize, q: usize) -> ExactMatrix {
    let source = basis(k, p, q);
    let target = basis(k, p, q + 1);
    let index: std::collections::HashMap<_, _> =
        target.iter().enumerate().map(|(r, b)| (*b, r)).collect();
    let mut m = ExactMatrix::zeros(target.len(), source.len());
    for (c, b) in source.iter().enumerate() {
        for (t, v) in apply_differential(k, b).terms() {
            m.add(index[t], c, Int::from(v.clone()));
        }
    }
    m
}

/// Product in `R_K`.
pub fn multiply(k: &SimplicialComplex, a: &RkElement, b: &RkElement) -> RkElement {
    let mut out = RkElement::zero();
    for (x, cx) in a.terms() {
        for (y, cy) in b.terms() {
            if let Some(sign) = monomial_product_sign(k, x, y) {
                let m = RkBasisElement::new(x.gamma.union(y.gamma), x.sigma.union(y.sigma));
                let c = cx * cy;
                out.add_term(m, if sign < 0 { -c } else { c });
            }
        }
    }
    out
}

/// Sign of `u_γ v_σ · u_γ' v_σ' = ± u_{γ∪γ'} v_{σ∪σ'}`, or `None` if the
/// product vanishes.
fn monomial_product_sign(
    k: &SimplicialComplex,
    x: &RkBasisElement,
    y: &RkBasisElement,
) -> Option<i32> {
    let gamma = x.gamma.union(y.gamma);
    let sigma = x.sigma.union(y.sigma);
    if !x.gamma.is_disjoint(y.gamma)
        || !x.sigma.is_disjoint(y.sigma)
        || !gamma.is_disjoint(sigma)
        || !k.contains(sigma)
    {
        return None;
    }
    // inversions between the two u-words
    let inversions: usize = y
        .gamma
        .iter()
        .map(|j| x.gamma.iter().filter(|&i| i > j).count())
        .sum();
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Which differential block, if any, gets a deliberately wrong sign.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FaultInjection {
    #[default]
    None,
    /// Negates the first stored entry of the first nonzero block, scanning
    /// `p` downward and `q` upward.
    FlipFirstSign,
}

/// All differential blocks of the stripe `p`: `d_q : R^{p,q} → R^{p,q+1}`,
/// `q = 0..=p`.
fn stripe(k: &SimplicialComplex, p: usize) -> Vec<ExactMatrix> {
    (0..=p).map(|q| differential(k, p, q)).collect()
}

/// Every differential block, indexed by `(p, q)`, with the fault applied.
pub fn differential_blocks(
    k: &SimplicialComplex,
    fault: FaultInjection,
) -> BTreeMap<(usize, usize), ExactMatrix> {
    let mut blocks = BTreeMap::new();
    for p in 0..=k.n() {
        for (q, d) in stripe(k, p).into_iter().enumerate() {
            blocks.insert((p, q), d);
        }
    }
    if fault == FaultInjection::FlipFirstSign {
        let target = (0..=k.n())
            .rev()
            .flat_map(|p| (0..=p).map(move |q| (p, q)))
            .find(|key| !blocks[key].is_zero());
        if let Some(key) = target {
            let d = blocks.get_mut(&key).unwrap();
            let ((r, c), v) = d.entries().into_iter().next().unwrap();
            let v = Int::from(v.to_integer());
            d.add(r, c, &(-&v) - &v);
        }
    }
    blocks
}

/// `H^{p,q}(R_K)` for all bidegrees.
pub fn cohomology_rk(k: &SimplicialComplex, coeff: Coefficients) -> Result<BigradedTable> {
    cohomology_rk_with(k, coeff, FaultInjection::None)
}

pub fn cohomology_rk_with(
    k: &SimplicialComplex,
    coeff: Coefficients,
    fault: FaultInjection,
) -> Result<BigradedTable> {
    let blocks = differential_blocks(k, fault);
    let mut table = BigradedTable::new(k.n(), coeff);
    for p in 0..=k.n() {
        for q in 0..=p {
            let dim = basis(k, p, q).len();
            let d_in = match q {
                0 => ExactMatrix::zeros(dim, 0),
                _ => blocks[&(p, q - 1)].clone(),
            };
            table.set(p, q, cohomology_block(&d_in, &blocks[&(p, q)], coeff)?);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(v: &[usize]) -> FaceSet {
        FaceSet::from_vertices(v, 6).unwrap()
    }

    #[test]
    fn basis_of_circle_boundary() {
        let k = SimplicialComplex::simplex_boundary(2).unwrap();
        let b = basis(&k, 2, 1);
        assert_eq!(
            b,
            vec![
                RkBasisElement::new(fs(&[2]), fs(&[1])),
                RkBasisElement::new(fs(&[1]), fs(&[2]))
            ]
        );
        assert!(basis(&k, 2, 2).is_empty());
        assert_eq!(basis(&k, 0, 0), vec![RkBasisElement::new(FaceSet::EMPTY, FaceSet::EMPTY)]);
    }

    #[test]
    fn differential_of_u1u2() {
        let k = SimplicialComplex::simplex_boundary(2).unwrap();
        let d = apply_differential(&k, &RkBasisElement::new(fs(&[1, 2]), FaceSet::EMPTY));
        assert_eq!(d.coefficient(&RkBasisElement::new(fs(&[2]), fs(&[1]))), BigInt::from(1));
        assert_eq!(d.coefficient(&RkBasisElement::new(fs(&[1]), fs(&[2]))), BigInt::from(-1));
        assert!(apply_differential(&k, &RkBasisElement::new(fs(&[2]), fs(&[1]))).is_zero());
        assert!(differential_of(&k, &RkElement::one()).is_zero());
    }

    #[test]
    fn products_that_vanish() {
        let k = SimplicialComplex::simplex(3).unwrap();
        assert!(multiply(&k, &RkElement::u(1), &RkElement::u(1)).is_zero());
        assert!(multiply(&k, &RkElement::u(1), &RkElement::v(1)).is_zero());
        let a = RkElement::monomial(fs(&[2]), fs(&[1]));
        let b = RkElement::monomial(fs(&[1]), fs(&[2]));
        assert!(multiply(&k, &a, &b).is_zero());
        let uv = multiply(&k, &RkElement::u(2), &RkElement::u(1));
        assert_eq!(uv.coefficient(&RkBasisElement::new(fs(&[1, 2]), FaceSet::EMPTY)), BigInt::from(-1));
    }

    #[test]
    fn named_tables() {
        let k = SimplicialComplex::simplex_boundary(2).unwrap();
        let t = cohomology_rk(&k, Coefficients::Integers).unwrap();
        assert_eq!(t.nonzero().map(|(k, b)| (*k, b.free_rank)).collect::<Vec<_>>(), vec![((0, 0), 1), ((2, 1), 1)]);

        let k = SimplicialComplex::points(3).unwrap();
        let t = cohomology_rk(&k, Coefficients::Integers).unwrap();
        assert_eq!(
            t.nonzero().map(|(k, b)| (*k, b.free_rank)).collect::<Vec<_>>(),
            vec![((0, 0), 1), ((2, 1), 3), ((3, 1), 2)]
        );

        let k = SimplicialComplex::simplex(4).unwrap();
        let t = cohomology_rk(&k, Coefficients::Integers).unwrap();
        assert_eq!(t.nonzero().count(), 1);
        assert_eq!(t.rank(0, 0), 1);
    }

    #[test]
    fn fault_breaks_full_simplex_on_two() {
        let k = SimplicialComplex::simplex(2).unwrap();
        let r = cohomology_rk_with(&k, Coefficients::Integers, FaultInjection::FlipFirstSign);
        assert!(matches!(r, Err(crate::Error::NonzeroComposition(_))));
    }
}
