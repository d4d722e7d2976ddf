//! The cell decomposition of the moment-angle complex `𝒵_K`.
//!
//! Cells are products `D²_σ × S¹_γ` with `σ ∈ K` and `γ ∩ σ = ∅`; the
//! remaining coordinates sit at the centre `z_i = 0` (for `i ∉ σ ∪ γ`).
//! With `p = |σ| + |γ|` and `q = |σ|`,
//!
//! `∂(D²_σ × S¹_γ) = Σ_{i∈σ} (−1)^{pos(i, γ∪i)} D²_{σ∖i} × S¹_{γ∪i}`,
//!
//! which preserves `p` and lowers `q`. The closure of a circle cell meets its
//! endpoint twice with opposite orientation, so no terms drop a `γ` index.
//!
//! The cochain differential is `δ_cell = −∂ᵀ`. With this sign the relabeling
//! `φ(u_γ v_σ) = E'_{σγ}` commutes with the differential of `R_K` on the nose.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::complex::{FaceSet, SimplicialComplex};
use crate::error::Result;
use crate::linalg::{cohomology_block, quotient_basis, Coefficients, ExactMatrix, Int, SparseVec};
use crate::rk::RkElement;
use crate::table::{bigint_json, BigradedTable};

/// The cell `D²_σ × S¹_γ`. Ordered by `σ`, then `γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellIndex {
    pub sigma: FaceSet,
    pub gamma: FaceSet,
}

impl CellIndex {
    pub fn new(sigma: FaceSet, gamma: FaceSet) -> Self {
        CellIndex { sigma, gamma }
    }

    /// The torus `S¹_γ`.
    pub fn torus(gamma: FaceSet) -> Self {
        CellIndex::new(FaceSet::EMPTY, gamma)
    }

    pub fn dimension(&self) -> usize {
        2 * self.sigma.len() + self.gamma.len()
    }

    /// `(p, q) = (|σ| + |γ|, |σ|)`.
    pub fn bidegree(&self) -> (usize, usize) {
        (self.sigma.len() + self.gamma.len(), self.sigma.len())
    }

    /// `σ ∪ γ`, the multidegree preserved by all differentials.
    pub fn support(&self) -> FaceSet {
        self.sigma.union(self.gamma)
    }

    /// Boundary as `(sign, cell)` pairs.
    pub fn boundary_terms(&self) -> impl Iterator<Item = (i32, CellIndex)> + '_ {
        self.sigma.iter().map(move |i| {
            let sign = if self.gamma.position_of(i) % 2 == 0 { 1 } else { -1 };
            (sign, CellIndex::new(self.sigma.without(i), self.gamma.with(i)))
        })
    }
}

impl std::fmt::Display for CellIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "D2_{}xS1_{}", self.sigma, self.gamma)
    }
}

/// Integer combination of cells.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CellChain {
    terms: BTreeMap<CellIndex, BigInt>,
}

/// Integer functional on cells, in the dual basis `E'_{σγ}`.
pub type CellCochain = CellChain;

impl CellChain {
    pub fn zero() -> Self {
        CellChain::default()
    }

    pub fn cell(c: CellIndex) -> Self {
        let mut out = CellChain::zero();
        out.add_term(c, BigInt::one());
        out
    }

    pub fn add_term(&mut self, c: CellIndex, v: BigInt) {
        if v.is_zero() {
            return;
        }
        let e = self.terms.entry(c).or_insert_with(BigInt::zero);
        *e += v;
        if e.is_zero() {
            self.terms.remove(&c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CellIndex, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, c: &CellIndex) -> BigInt {
        self.terms.get(c).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &CellChain) -> CellChain {
        let mut out = self.clone();
        for (c, v) in other.terms() {
            out.add_term(*c, v.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> CellChain {
        let mut out = CellChain::zero();
        for (c, v) in self.terms() {
            out.add_term(*c, v * k);
        }
        out
    }

    pub fn negated(&self) -> CellChain {
        self.scale(&BigInt::from(-1))
    }

    /// Cellular boundary.
    pub fn boundary(&self) -> CellChain {
        let mut out = CellChain::zero();
        for (c, v) in self.terms() {
            for (sign, face) in c.boundary_terms() {
                out.add_term(face, if sign < 0 { -v } else { v.clone() });
            }
        }
        out
    }

    /// `δ_cell = −∂ᵀ`, for a cochain on the cells of `K`.
    pub fn coboundary(&self, k: &SimplicialComplex) -> CellCochain {
        let mut out = CellChain::zero();
        for (c, v) in self.terms() {
            // cells whose boundary contains c: add i ∈ γ to σ
            for i in c.gamma.iter() {
                let sigma = c.sigma.with(i);
                if !k.contains(sigma) {
                    continue;
                }
                let coface = CellIndex::new(sigma, c.gamma.without(i));
                let sign = if c.gamma.position_of(i) % 2 == 0 { 1 } else { -1 };
                out.add_term(coface, if sign < 0 { v.clone() } else { -v });
            }
        }
        out
    }

    /// The bidegree shared by all terms, or `None` if empty or mixed.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(CellIndex::bidegree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Kronecker pairing of a cochain with a chain.
    pub fn evaluate(&self, chain: &CellChain) -> BigInt {
        self.terms()
            .map(|(c, v)| v * chain.coefficient(c))
            .sum()
    }

    /// `[{"sigma": [..], "gamma": [..], "coeff": c}, ..]`
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|(c, v)| {
                    json!({
                        "sigma": c.sigma.to_vec(),
                        "gamma": c.gamma.to_vec(),
                        "coeff": bigint_json(v),
                    })
                })
                .collect(),
        )
    }
}

impl std::fmt::Display for CellChain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (c, v)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v}) {c}")?;
        }
        Ok(())
    }
}

/// Every cell of `𝒵_K`.
pub fn cells(k: &SimplicialComplex) -> Vec<CellIndex> {
    let all = FaceSet::full(k.n());
    let mut out: Vec<_> = k
        .faces()
        .iter()
        .flat_map(|&sigma| {
            all.difference(sigma)
                .subsets()
                .map(move |gamma| CellIndex::new(sigma, gamma))
        })
        .collect();
    out.sort();
    out
}

/// Cells of bidegree `(p, q)`, sorted. Enumerated through the support
/// `I = σ ∪ γ`.
pub fn cells_of_bidegree(k: &SimplicialComplex, p: usize, q: usize) -> Vec<CellIndex> {
    if q > p || p > k.n() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for support in FaceSet::full(k.n()).subsets_of_size(p) {
        for sigma in support.subsets_of_size(q) {
            if k.contains(sigma) {
                out.push(CellIndex::new(sigma, support.difference(sigma)));
            }
        }
    }
    out.sort();
    out
}

/// `∂ : C_{p,q} → C_{p,q−1}`; zero-width for `q = 0`.
pub fn boundary_matrix(k: &SimplicialComplex, p: usize, q: usize) -> ExactMatrix {
    let source = cells_of_bidegree(k, p, q);
    let target = if q == 0 {
        Vec::new()
    } else {
        cells_of_bidegree(k, p, q - 1)
    };
    let index: HashMap<_, _> = target.iter().enumerate().map(|(r, c)| (*c, r)).collect();
    let mut m = ExactMatrix::zeros(target.len(), source.len());
    for (j, c) in source.iter().enumerate() {
        for (sign, face) in c.boundary_terms() {
            m.add(index[&face], j, Int::from(sign as i64));
        }
    }
    m
}

/// `δ_cell : C^{p,q} → C^{p,q+1}`, i.e. `−∂ᵀ`.
pub fn coboundary_matrix(k: &SimplicialComplex, p: usize, q: usize) -> ExactMatrix {
    boundary_matrix(k, p, q + 1).transpose().negated()
}

/// Cellular homology with explicit cycle representatives.
#[derive(Clone, Debug)]
pub struct CellHomology {
    pub table: BigradedTable,
    /// A ℚ-basis of `H_{p,q}` per bidegree: primitive integer cycles reduced
    /// against the boundaries.
    pub cycles: BTreeMap<(usize, usize), Vec<CellChain>>,
}

impl CellHomology {
    pub fn cycles(&self, p: usize, q: usize) -> &[CellChain] {
        self.cycles.get(&(p, q)).map_or(&[], Vec::as_slice)
    }
}

pub fn homology_cells(k: &SimplicialComplex, coeff: Coefficients) -> Result<CellHomology> {
    let mut table = BigradedTable::new(k.n(), coeff);
    let mut cycles = BTreeMap::new();
    for p in 0..=k.n() {
        let bases: Vec<_> = (0..=p).map(|q| cells_of_bidegree(k, p, q)).collect();
        let d: Vec<_> = (0..=p + 1).map(|q| boundary_matrix(k, p, q)).collect();
        for q in 0..=p {
            let d_in = if q < p {
                d[q + 1].clone()
            } else {
                ExactMatrix::zeros(bases[q].len(), 0)
            };
            let d_out = &d[q];
            table.set(p, q, cohomology_block(&d_in, d_out, coeff)?);
            let reps = quotient_basis(&d_in, d_out)?;
            if !reps.is_empty() {
                cycles.insert((p, q), reps.iter().map(|v| to_chain(v, &bases[q])).collect());
            }
        }
    }
    Ok(CellHomology { table, cycles })
}

/// Cellular cohomology via `δ_cell`.
pub fn cohomology_cells(k: &SimplicialComplex, coeff: Coefficients) -> Result<BigradedTable> {
    let mut table = BigradedTable::new(k.n(), coeff);
    for p in 0..=k.n() {
        let dims: Vec<_> = (0..=p).map(|q| cells_of_bidegree(k, p, q).len()).collect();
        let delta: Vec<_> = (0..=p).map(|q| coboundary_matrix(k, p, q)).collect();
        for q in 0..=p {
            let d_in = match q {
                0 => ExactMatrix::zeros(dims[0], 0),
                _ => delta[q - 1].clone(),
            };
            table.set(p, q, cohomology_block(&d_in, &delta[q], coeff)?);
        }
    }
    Ok(table)
}

/// Cocycle representatives of a ℚ-basis of `H^{p,q}` of the cell complex.
pub fn cocycles_cells(k: &SimplicialComplex, p: usize, q: usize) -> Result<Vec<CellCochain>> {
    let basis = cells_of_bidegree(k, p, q);
    let d_in = match q {
        0 => ExactMatrix::zeros(basis.len(), 0),
        _ => coboundary_matrix(k, p, q - 1),
    };
    let d_out = coboundary_matrix(k, p, q);
    Ok(quotient_basis(&d_in, &d_out)?
        .iter()
        .map(|v| to_chain(v, &basis))
        .collect())
}

fn to_chain(v: &SparseVec, basis: &[CellIndex]) -> CellChain {
    let mut c = CellChain::zero();
    for (i, x) in v.entries() {
        c.add_term(basis[*i], x.to_bigint());
    }
    c
}

/// `φ(u_γ v_σ) = E'_{σγ}`, extended linearly.
pub fn phi(a: &RkElement) -> CellCochain {
    let mut out = CellChain::zero();
    for (b, c) in a.terms() {
        out.add_term(CellIndex::new(b.sigma, b.gamma), c.clone());
    }
    out
}
