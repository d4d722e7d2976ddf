//! Chains subordinate to the cover, resolvents of cellular cycles, and the
//! exact pairing with logarithmic Čech cochains.
//!
//! A `𝒰`-chain of degree `t` and dimension `s` assigns a cellular chain to
//! each `(t+1)`-tuple of cover indices, alternating in the tuple. The atom
//! `D²_σ' × S¹_γ` lies in `U_{σ_0} ∩ … ∩ U_{σ_t}` iff `σ' ⊆ σ_0 ∩ … ∩ σ_t`.
//!
//! `(δ'Γ)_{i_0…i_{t−1}} = (−1)^s Σ_i Γ_{i, i_0…i_{t−1}}`, `∂` acts
//! componentwise and `ε'Γ = Σ_i Γ_i` on degree zero. A resolvent of a cycle
//! `Γ` is a sequence `Γ⁰, …, Γ^k` with `ε'Γ⁰ = Γ` and `∂Γ^j = −δ'Γ^{j+1}`.
//!
//! For a cycle `Σ C_{σγ} D²_σ × S¹_γ` with `|σ| = q` the construction peels
//! one disk direction per step: `Γ⁰` puts the `σ`-part of the cycle at the
//! index `σ`, and `Γ^{k+1}` at the chain `(σ_k∖i, σ_k, …, σ_0)` is
//! `(−1)^{p+q−k}` times the `i`-th boundary term of `Γ^k` at
//! `(σ_k, …, σ_0)`. After `q` steps only tori `S¹_I` remain.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::cech::{normalize_tuple, tuple_intersection, CechComplex, CechNerve, LogCochain, Tuple};
use crate::cellular::{homology_cells, CellChain, CellIndex};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{rank_rational, Coefficients, ExactMatrix};

/// Exact value `coeff · (2πi)^tau_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingScalar {
    coeff: BigRational,
    tau_power: i32,
}

impl PairingScalar {
    pub fn new(coeff: BigRational, tau_power: i32) -> Self {
        if coeff.is_zero() {
            PairingScalar::zero()
        } else {
            PairingScalar { coeff, tau_power }
        }
    }

    pub fn zero() -> Self {
        PairingScalar {
            coeff: BigRational::zero(),
            tau_power: 0,
        }
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn tau_power(&self) -> i32 {
        self.tau_power
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Sum of two scalars; both must carry the same power of `2πi` unless
    /// one of them is zero.
    pub fn add(&self, other: &PairingScalar) -> Result<PairingScalar> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.tau_power != other.tau_power {
            return Err(Error::Precondition(format!(
                "cannot add multiples of (2πi)^{} and (2πi)^{}",
                self.tau_power, other.tau_power
            )));
        }
        Ok(PairingScalar::new(&self.coeff + &other.coeff, self.tau_power))
    }

    pub fn mul(&self, other: &PairingScalar) -> PairingScalar {
        PairingScalar::new(&self.coeff * &other.coeff, self.tau_power + other.tau_power)
    }

    pub fn recip(&self) -> Result<PairingScalar> {
        if self.is_zero() {
            return Err(Error::Precondition("cannot invert a zero pairing".into()));
        }
        Ok(PairingScalar::new(self.coeff.recip(), -self.tau_power))
    }

    /// `{"num": "..", "den": "..", "tau_power": k}` with a positive denominator.
    pub fn to_json(&self) -> Value {
        json!({
            "num": self.coeff.numer().to_string(),
            "den": self.coeff.denom().to_string(),
            "tau_power": self.tau_power,
        })
    }
}

impl fmt::Display for PairingScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tau_power {
            _ if self.is_zero() => write!(f, "0"),
            0 => write!(f, "{}", self.coeff),
            k => write!(f, "{}·(2πi)^{k}", self.coeff),
        }
    }
}

/// `∫_{D²_σ×S¹_γ} dz_I/z_I`: a holomorphic form has no `dz̄` part, so any disk
/// factor kills the integral, and on a torus only the matching monomial
/// survives.
pub fn atom_integral(cell: &CellIndex, i: crate::complex::FaceSet) -> PairingScalar {
    if cell.sigma.is_empty() && cell.gamma == i {
        PairingScalar::new(BigRational::one(), cell.gamma.len() as i32)
    } else {
        PairingScalar::zero()
    }
}

/// An alternating chain-valued function on tuples of cover indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UChain {
    pub degree: usize,
    pub dim: usize,
    values: BTreeMap<Tuple, CellChain>,
}

impl UChain {
    pub fn zero(degree: usize, dim: usize) -> Self {
        UChain {
            degree,
            dim,
            values: BTreeMap::new(),
        }
    }

    /// Adds `chain` at `tuple`, which may be in any order.
    pub fn add(&mut self, tuple: &[crate::complex::FaceSet], chain: &CellChain) -> Result<()> {
        if tuple.len() != self.degree + 1 {
            return Err(Error::Dimension(format!(
                "tuple of length {} in a degree-{} chain",
                tuple.len(),
                self.degree
            )));
        }
        if let Some((c, _)) = chain.terms().find(|(c, _)| c.dimension() != self.dim) {
            return Err(Error::Dimension(format!(
                "cell {c} of dimension {} in a {}-dimensional chain",
                c.dimension(),
                self.dim
            )));
        }
        let Some((t, sign)) = normalize_tuple(tuple) else {
            return Ok(());
        };
        let chain = if sign < 0 { chain.negated() } else { chain.clone() };
        self.add_normalized(t, &chain);
        Ok(())
    }

    fn add_normalized(&mut self, t: Tuple, chain: &CellChain) {
        let entry = self.values.entry(t.clone()).or_default();
        *entry = entry.add(chain);
        if entry.is_zero() {
            self.values.remove(&t);
        }
    }

    /// Value on an arbitrary tuple, with the alternation sign applied.
    pub fn value(&self, tuple: &[crate::complex::FaceSet]) -> CellChain {
        match normalize_tuple(tuple) {
            None => CellChain::zero(),
            Some((t, sign)) => {
                let v = self.values.get(&t).cloned().unwrap_or_default();
                if sign < 0 {
                    v.negated()
                } else {
                    v
                }
            }
        }
    }

    pub fn values(&self) -> impl Iterator<Item = (&Tuple, &CellChain)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn negated(&self) -> UChain {
        UChain {
            degree: self.degree,
            dim: self.dim,
            values: self
                .values
                .iter()
                .map(|(t, c)| (t.clone(), c.negated()))
                .collect(),
        }
    }

    /// Every atom lies in the intersection of its tuple's cover elements.
    pub fn support_violation(&self) -> Option<(Tuple, CellIndex)> {
        for (t, c) in &self.values {
            let tau = tuple_intersection(t);
            if let Some((cell, _)) = c.terms().find(|(cell, _)| !cell.sigma.is_subset(tau)) {
                return Some((t.clone(), *cell));
            }
        }
        None
    }

    /// Componentwise cellular boundary.
    pub fn boundary(&self) -> UChain {
        let mut out = UChain::zero(self.degree, self.dim.saturating_sub(1));
        for (t, c) in &self.values {
            let b = c.boundary();
            if !b.is_zero() {
                out.values.insert(t.clone(), b);
            }
        }
        out
    }

    /// `(δ'Γ)_{β} = (−1)^s Σ_i Γ_{i,β}`.
    pub fn delta_prime(&self) -> Result<UChain> {
        if self.degree == 0 {
            return Err(Error::Precondition("δ' is not defined on degree-0 chains".into()));
        }
        let mut out = UChain::zero(self.degree - 1, self.dim);
        for (alpha, c) in &self.values {
            for j in 0..alpha.len() {
                let mut beta = alpha.clone();
                beta.remove(j);
                // moving α_j to the front takes j transpositions
                let negative = (self.dim + j) % 2 == 1;
                out.add_normalized(beta, &if negative { c.negated() } else { c.clone() });
            }
        }
        Ok(out)
    }

    /// `ε'Γ = Σ_i Γ_i`.
    pub fn epsilon_prime(&self) -> Result<CellChain> {
        if self.degree != 0 {
            return Err(Error::Precondition(format!(
                "ε' is only defined on degree-0 chains, got degree {}",
                self.degree
            )));
        }
        Ok(self
            .values
            .values()
            .fold(CellChain::zero(), |acc, c| acc.add(c)))
    }

    /// `[{"tuple": [[..], ..], "atoms": [{"sigma", "gamma", "coeff"}]}]`
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.values
                .iter()
                .map(|(t, c)| {
                    json!({
                        "tuple": t.iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
                        "atoms": c.to_json(),
                    })
                })
                .collect(),
        )
    }
}

/// A cycle together with its resolvent pieces `Γ⁰, …, Γ^q`.
#[derive(Clone, Debug)]
pub struct Resolvent {
    pub source: CellChain,
    pub p: usize,
    pub q: usize,
    pub pieces: Vec<UChain>,
}

impl Resolvent {
    /// The last piece, made of tori only.
    pub fn top(&self) -> &UChain {
        self.pieces.last().expect("a resolvent has at least one piece")
    }

    pub fn piece(&self, k: usize) -> Option<&UChain> {
        self.pieces.get(k)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "q": self.q,
            "cycle": self.source.to_json(),
            "pieces": self.pieces.iter().map(UChain::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Builds the resolvent of a closed chain of type `Γ_{p,q}` and validates it.
pub fn build_resolvent(k: &SimplicialComplex, cycle: &CellChain) -> Result<Resolvent> {
    let (p, q) = cycle.bidegree().ok_or_else(|| {
        Error::Precondition(if cycle.is_zero() {
            "the cycle is zero".into()
        } else {
            "the cycle is not homogeneous in (p, q)".into()
        })
    })?;
    if let Some((c, _)) = cycle.terms().find(|(c, _)| !k.contains(c.sigma)) {
        return Err(Error::Precondition(format!("{c} is not a cell of the complex")));
    }
    if !cycle.boundary().is_zero() {
        return Err(Error::Precondition("the chain is not closed".into()));
    }
    let s = p + q;
    let mut g0 = UChain::zero(0, s);
    for (c, v) in cycle.terms() {
        let mut part = CellChain::zero();
        part.add_term(*c, v.clone());
        g0.add_normalized(vec![c.sigma], &part);
    }
    let mut pieces = vec![g0];
    for step in 0..q {
        let prev = &pieces[step];
        let mut next = UChain::zero(step + 1, s - step - 1);
        let outer_negative = (s - step) % 2 == 1;
        for (alpha, chain) in prev.values() {
            let sigma = alpha[0];
            for i in sigma.iter() {
                let mut tuple = Vec::with_capacity(alpha.len() + 1);
                tuple.push(sigma.without(i));
                tuple.extend_from_slice(alpha);
                let mut value = CellChain::zero();
                for (cell, c) in chain.terms() {
                    let negative = outer_negative ^ (cell.gamma.position_of(i) % 2 == 1);
                    value.add_term(
                        CellIndex::new(sigma.without(i), cell.gamma.with(i)),
                        if negative { -c } else { c.clone() },
                    );
                }
                next.add_normalized(tuple, &value);
            }
        }
        pieces.push(next);
    }
    let r = Resolvent {
        source: cycle.clone(),
        p,
        q,
        pieces,
    };
    check_resolvent(&r)?;
    Ok(r)
}

/// Verifies `ε'Γ⁰ = Γ`, `∂Γ^k = −δ'Γ^{k+1}`, `∂Γ^{last} = 0` and the support
/// condition.
pub fn check_resolvent(r: &Resolvent) -> Result<()> {
    let first = r
        .pieces
        .first()
        .ok_or_else(|| Error::Resolvent("no pieces".into()))?;
    if first.epsilon_prime()? != r.source {
        return Err(Error::Resolvent("ε'Γ⁰ differs from the cycle".into()));
    }
    for (k, w) in r.pieces.windows(2).enumerate() {
        if w[0].boundary() != w[1].delta_prime()?.negated() {
            return Err(Error::Resolvent(format!("∂Γ^{k} ≠ −δ'Γ^{}", k + 1)));
        }
    }
    if !r.top().boundary().is_zero() {
        return Err(Error::Resolvent("the last piece is not closed".into()));
    }
    for (k, g) in r.pieces.iter().enumerate() {
        if let Some((t, cell)) = g.support_violation() {
            return Err(Error::Resolvent(format!(
                "piece {k}: {cell} does not lie over the tuple {t:?}"
            )));
        }
    }
    Ok(())
}

/// `⟨ω, Γ⟩ = Σ_{increasing tuples α} ∫_{Γ_α} ω_α`.
pub fn pair(w: &LogCochain, g: &UChain) -> Result<PairingScalar> {
    if w.t != g.degree {
        return Err(Error::DegreeMismatch {
            cochain: w.t,
            chain: g.degree,
        });
    }
    let mut total = BigRational::zero();
    for (alpha, chain) in g.values() {
        let form = w.value(alpha);
        if form.is_zero() {
            continue;
        }
        for (cell, c) in chain.terms() {
            if !cell.sigma.is_empty() || cell.gamma.len() != w.p {
                continue;
            }
            let a = form.coefficient(cell.gamma);
            if !a.is_zero() {
                total += a * BigRational::from_integer(c.clone());
            }
        }
    }
    Ok(PairingScalar::new(total, w.p as i32))
}

/// Pairs `ω` with the piece of the resolvent in its Čech degree (zero if the
/// resolvent is shorter).
pub fn pair_resolvent(w: &LogCochain, r: &Resolvent) -> Result<PairingScalar> {
    match r.piece(w.t) {
        Some(g) => pair(w, g),
        None => Ok(PairingScalar::zero()),
    }
}

/// Pairings `⟨ω_b, Γ_a⟩` of a cocycle basis of bidegree `(p', q')` against
/// the resolvents of a cycle basis of type `(p, q)`.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub cocycle_bidegree: (usize, usize),
    pub cycle_bidegree: (usize, usize),
    /// Rows indexed by cocycles, columns by cycles.
    pub entries: Vec<Vec<PairingScalar>>,
}

impl GramMatrix {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(PairingScalar::is_zero)
    }

    /// Square, with every entry in `ℚ·(2πi)^p`, and invertible after the
    /// common power is factored out.
    pub fn is_invertible(&self) -> bool {
        let n = self.entries.len();
        if self.entries.iter().any(|r| r.len() != n) {
            return false;
        }
        if n == 0 {
            return true;
        }
        let p = self.cocycle_bidegree.0 as i32;
        if self
            .entries
            .iter()
            .flatten()
            .any(|x| !x.is_zero() && x.tau_power() != p)
        {
            return false;
        }
        let rows: Vec<Vec<BigRational>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.coeff().clone()).collect())
            .collect();
        rank_rational(&ExactMatrix::from_rational_rows(&rows)) == n
    }
}

/// Gram matrix of the flag-nerve cocycle basis in bidegree `cocycle` against
/// the rational cellular cycle basis in bidegree `cycle`.
pub fn gram_matrix(
    k: &SimplicialComplex,
    cocycle: (usize, usize),
    cycle: (usize, usize),
) -> Result<GramMatrix> {
    let cech = CechComplex::new(k, CechNerve::Flags)?;
    let homology = homology_cells(k, Coefficients::Rationals)?;
    gram_from_parts(k, &cech.cocycles(cocycle.0, cocycle.1)?, homology.cycles(cycle.0, cycle.1))
        .map(|entries| GramMatrix {
            cocycle_bidegree: cocycle,
            cycle_bidegree: cycle,
            entries,
        })
}

/// `⟨ω_b, Γ(z_a)⟩` for given cocycles and cycles.
pub fn gram_from_parts(
    k: &SimplicialComplex,
    cocycles: &[LogCochain],
    cycles: &[CellChain],
) -> Result<Vec<Vec<PairingScalar>>> {
    let resolvents = cycles
        .iter()
        .map(|z| build_resolvent(k, z))
        .collect::<Result<Vec<_>>>()?;
    cocycles
        .iter()
        .map(|w| resolvents.iter().map(|r| pair_resolvent(w, r)).collect())
        .collect()
}

/// `|coeff|`, for reporting.
pub fn magnitude(x: &PairingScalar) -> BigRational {
    x.coeff.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::{representative_cocycle, CechNerve, LogForm};
    use crate::complex::FaceSet;
    use num_bigint::BigInt;

    fn fs(v: &[usize]) -> FaceSet {
        FaceSet::from_vertices(v, 6).unwrap()
    }

    fn integer(c: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(c))
    }

    fn circle_cycle() -> CellChain {
        CellChain::cell(CellIndex::new(fs(&[1]), fs(&[2])))
            .add(&CellChain::cell(CellIndex::new(fs(&[2]), fs(&[1]))))
    }

    #[test]
    fn circle_resolvent_by_hand() {
        let k = SimplicialComplex::simplex_boundary(2).unwrap();
        let r = build_resolvent(&k, &circle_cycle()).unwrap();
        assert_eq!(r.pieces.len(), 2);
        let g0 = &r.pieces[0];
        assert_eq!(g0.values().count(), 2);
        let g1 = &r.pieces[1];
        let s12 = CellIndex::torus(fs(&[1, 2]));
        assert_eq!(g1.value(&[FaceSet::EMPTY, fs(&[1])]).coefficient(&s12), BigInt::from(1));
        assert_eq!(g1.value(&[FaceSet::EMPTY, fs(&[2])]).coefficient(&s12), BigInt::from(-1));
        assert_eq!(g1.delta_prime().unwrap(), g0.boundary().negated());
        assert!(g0.delta_prime().is_err());
        assert!(g1.epsilon_prime().is_err());
    }

    #[test]
    fn torus_cycle_has_length_zero() {
        let k = SimplicialComplex::simplex_boundary(3).unwrap();
        let z = CellChain::cell(CellIndex::torus(fs(&[1, 3])));
        let r = build_resolvent(&k, &z).unwrap();
        assert_eq!(r.pieces.len(), 1);
        assert_eq!(r.pieces[0].value(&[FaceSet::EMPTY]), z);
    }

    #[test]
    fn rejects_open_or_mixed_chains() {
        let k = SimplicialComplex::simplex_boundary(2).unwrap();
        let open = CellChain::cell(CellIndex::new(fs(&[1]), fs(&[2])));
        assert!(build_resolvent(&k, &open).is_err());
        let mixed = circle_cycle().add(&CellChain::cell(CellIndex::torus(fs(&[1]))));
        assert!(build_resolvent(&k, &mixed).is_err());
        assert!(build_resolvent(&k, &CellChain::zero()).is_err());
    }

    #[test]
    fn boundary_cycles_resolve() {
        let k = SimplicialComplex::simplex(2).unwrap();
        let z = CellChain::cell(CellIndex::new(fs(&[1, 2]), FaceSet::EMPTY)).boundary();
        assert!(!z.is_zero());
        build_resolvent(&k, &z).unwrap();
    }

    #[test]
    fn torus_period() {
        let mut w = LogCochain::zero(2, 0);
        w.add(&[FaceSet::EMPTY], &LogForm::monomial(fs(&[1, 2]), integer(1))).unwrap();
        let mut g = UChain::zero(0, 2);
        g.add(&[FaceSet::EMPTY], &CellChain::cell(CellIndex::torus(fs(&[1, 2])))).unwrap();
        assert_eq!(pair(&w, &g).unwrap(), PairingScalar::new(integer(1), 2));
        let mut disk = UChain::zero(0, 2);
        disk.add(&[fs(&[1])], &CellChain::cell(CellIndex::new(fs(&[1]), FaceSet::EMPTY))).unwrap();
        assert!(pair(&w, &disk).unwrap().is_zero());
        assert!(matches!(pair(&w, &UChain::zero(1, 2)), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn circle_pairing_is_a_unit_period() {
        let k = SimplicialComplex::simplex_boundary(2).unwrap();
        let r = build_resolvent(&k, &circle_cycle()).unwrap();
        let w = representative_cocycle(&k, 2, 1, 0, CechNerve::Flags).unwrap();
        let v = pair_resolvent(&w, &r).unwrap();
        assert_eq!(v.tau_power(), 2);
        assert_eq!(magnitude(&v), integer(1));
    }

    #[test]
    fn gram_matrices_of_circle() {
        let k = SimplicialComplex::simplex_boundary(2).unwrap();
        let g = gram_matrix(&k, (2, 1), (2, 1)).unwrap();
        assert_eq!(g.entries.len(), 1);
        assert!(g.is_invertible());
        assert!(gram_matrix(&k, (0, 0), (2, 1)).unwrap().is_zero());
        assert!(gram_matrix(&k, (2, 1), (0, 0)).unwrap().is_zero());
        assert!(gram_matrix(&k, (0, 0), (0, 0)).unwrap().is_invertible());
    }
}
