//! The Čech complex of the cover `{U_σ}_{σ∈K}` with values in constant
//! coefficient logarithmic forms `Σ c_I dz_I/z_I`.
//!
//! `dz_I/z_I` is holomorphic on `U_τ` exactly when `I ∩ τ = ∅`, and the
//! intersection of `U_{σ_0}, …, U_{σ_t}` is `U_{σ_0∩…∩σ_t}`, so a cochain
//! value on a tuple may only use admissible `I`. Restriction never kills an
//! admissible term, and `d` vanishes on these forms, so the total differential
//! is the Čech one:
//!
//! `(δω)_{α_0…α_{t+1}} = (−1)^p Σ_j (−1)^j ω_{α_0…α̂_j…α_{t+1}}`.
//!
//! Bidegree `(p, q)` is (form degree, Čech degree). The complex splits as a
//! direct sum over `I`, and every computation here is done block by block.
//!
//! Two nerves are available. [`CechNerve::Full`] uses every strictly
//! increasing tuple of faces and is only feasible for small complexes.
//! [`CechNerve::Flags`] keeps the tuples that are chains `σ_0 ⊊ … ⊊ σ_t`;
//! the intersection of a chain is its first element. For each `I` both give
//! the cochains of the face poset relative to the faces meeting `I`, which is
//! why they have the same cohomology. The resolvents built elsewhere in the
//! crate live on chains, so pairings agree with either model.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::complex::{FaceSet, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{
    quotient_basis, rank_rational, CohomologyBlock, Coefficients, ExactMatrix, Int, SparseVec,
};
use crate::table::BigradedTable;

/// Cover indices `(σ_0, …, σ_t)`, strictly increasing in the face order.
pub type Tuple = Vec<FaceSet>;

/// Largest face count for which the full nerve is built (`2^limit` tuples).
pub const FULL_NERVE_MAX_FACES: usize = 14;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CechNerve {
    #[default]
    Flags,
    Full,
}

/// `σ_0 ∩ … ∩ σ_t`.
pub fn tuple_intersection(t: &[FaceSet]) -> FaceSet {
    t.iter()
        .copied()
        .reduce(FaceSet::intersection)
        .unwrap_or(FaceSet::EMPTY)
}

/// Sorts `tuple` into increasing order and returns the permutation sign, or
/// `None` if an index repeats (alternating values vanish there).
pub fn normalize_tuple(tuple: &[FaceSet]) -> Option<(Tuple, i32)> {
    let mut v = tuple.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// The tuples of a nerve, grouped by Čech degree.
#[derive(Clone, Debug)]
pub struct Nerve {
    kind: CechNerve,
    tuples: Vec<Vec<Tuple>>,
}

impl Nerve {
    pub fn new(k: &SimplicialComplex, kind: CechNerve) -> Result<Self> {
        let faces = k.faces();
        let mut tuples: Vec<Vec<Tuple>> = Vec::new();
        match kind {
            CechNerve::Flags => {
                let mut stack: Vec<Tuple> = faces.iter().rev().map(|&f| vec![f]).collect();
                while let Some(t) = stack.pop() {
                    let last = *t.last().unwrap();
                    for &f in faces.iter().rev() {
                        if f != last && last.is_subset(f) {
                            let mut next = t.clone();
                            next.push(f);
                            stack.push(next);
                        }
                    }
                    push_tuple(&mut tuples, t);
                }
            }
            CechNerve::Full => {
                if faces.len() > FULL_NERVE_MAX_FACES {
                    return Err(Error::Precondition(format!(
                        "the full nerve is limited to {FULL_NERVE_MAX_FACES} faces, this complex has {}",
                        faces.len()
                    )));
                }
                for mask in 1u32..(1 << faces.len()) {
                    let t: Tuple = (0..faces.len())
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| faces[i])
                        .collect();
                    push_tuple(&mut tuples, t);
                }
            }
        }
        for level in &mut tuples {
            level.sort();
        }
        Ok(Nerve { kind, tuples })
    }

    pub fn kind(&self) -> CechNerve {
        self.kind
    }

    /// Tuples of Čech degree `t` (length `t + 1`).
    pub fn tuples(&self, t: usize) -> &[Tuple] {
        self.tuples.get(t).map_or(&[], Vec::as_slice)
    }

    /// Largest Čech degree with a nonempty tuple set.
    pub fn max_degree(&self) -> usize {
        self.tuples.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.tuples.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether an increasing tuple belongs to this nerve.
    pub fn contains(&self, k: &SimplicialComplex, t: &[FaceSet]) -> bool {
        if t.is_empty() || !t.iter().all(|&f| k.contains(f)) || t.windows(2).any(|w| w[0] >= w[1])
        {
            return false;
        }
        match self.kind {
            CechNerve::Full => true,
            CechNerve::Flags => t.windows(2).all(|w| w[0].is_subset(w[1])),
        }
    }
}

fn push_tuple(tuples: &mut Vec<Vec<Tuple>>, t: Tuple) {
    let d = t.len() - 1;
    if tuples.len() <= d {
        tuples.resize(d + 1, Vec::new());
    }
    tuples[d].push(t);
}

/// `Σ_I c_I dz_I/z_I`, all `I` of the same size.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogForm {
    terms: BTreeMap<FaceSet, BigRational>,
}

impl LogForm {
    pub fn zero() -> Self {
        LogForm::default()
    }

    pub fn monomial(i: FaceSet, c: BigRational) -> Self {
        let mut f = LogForm::zero();
        f.add_term(i, c);
        f
    }

    pub fn add_term(&mut self, i: FaceSet, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(i).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FaceSet, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: FaceSet) -> BigRational {
        self.terms.get(&i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every term is holomorphic on `U_τ`.
    pub fn is_admissible_on(&self, tau: FaceSet) -> bool {
        self.terms.keys().all(|i| i.is_disjoint(tau))
    }

    pub fn scale(&self, c: &BigRational) -> LogForm {
        let mut out = LogForm::zero();
        for (i, v) in self.terms() {
            out.add_term(*i, v * c);
        }
        out
    }

    fn add_scaled(&mut self, other: &LogForm, c: &BigRational) {
        for (i, v) in other.terms() {
            self.add_term(*i, v * c);
        }
    }
}

/// An alternating Čech cochain of form degree `p` and Čech degree `t`,
/// stored on increasing tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogCochain {
    pub p: usize,
    pub t: usize,
    values: BTreeMap<Tuple, LogForm>,
}

impl LogCochain {
    pub fn zero(p: usize, t: usize) -> Self {
        LogCochain {
            p,
            t,
            values: BTreeMap::new(),
        }
    }

    /// Adds `form` at `tuple`, which may be in any order.
    pub fn add(&mut self, tuple: &[FaceSet], form: &LogForm) -> Result<()> {
        if tuple.len() != self.t + 1 {
            return Err(Error::Dimension(format!(
                "tuple of length {} in a degree-{} cochain",
                tuple.len(),
                self.t
            )));
        }
        if let Some(i) = form.terms.keys().find(|i| i.len() != self.p) {
            return Err(Error::Dimension(format!(
                "form term dz_{i}/z_{i} in a cochain of form degree {}",
                self.p
            )));
        }
        let Some((t, sign)) = normalize_tuple(tuple) else {
            return Ok(());
        };
        let entry = self.values.entry(t.clone()).or_default();
        entry.add_scaled(form, &BigRational::from_integer(sign.into()));
        if entry.is_zero() {
            self.values.remove(&t);
        }
        Ok(())
    }

    /// Value on an arbitrary tuple, with the alternation sign applied.
    pub fn value(&self, tuple: &[FaceSet]) -> LogForm {
        match normalize_tuple(tuple) {
            None => LogForm::zero(),
            Some((t, sign)) => self
                .values
                .get(&t)
                .map_or_else(LogForm::zero, |f| f.scale(&BigRational::from_integer(sign.into()))),
        }
    }

    pub fn values(&self) -> impl Iterator<Item = (&Tuple, &LogForm)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> LogCochain {
        let mut out = LogCochain::zero(self.p, self.t);
        for (t, f) in self.values() {
            let v = f.scale(c);
            if !v.is_zero() {
                out.values.insert(t.clone(), v);
            }
        }
        out
    }

    /// Every value is holomorphic on the intersection of its tuple.
    pub fn is_admissible(&self) -> bool {
        self.values
            .iter()
            .all(|(t, f)| f.is_admissible_on(tuple_intersection(t)))
    }

    /// Čech coboundary on `nerve`, computed from the defining formula.
    pub fn coboundary(&self, k: &SimplicialComplex, nerve: &Nerve) -> LogCochain {
        let mut out = LogCochain::zero(self.p, self.t + 1);
        let sign_p = if self.p % 2 == 0 { 1 } else { -1 };
        for alpha in nerve.tuples(self.t + 1) {
            debug_assert!(nerve.contains(k, alpha));
            let mut acc = LogForm::zero();
            for j in 0..alpha.len() {
                let mut beta = alpha.clone();
                beta.remove(j);
                if let Some(f) = self.values.get(&beta) {
                    let s = if j % 2 == 0 { sign_p } else { -sign_p };
                    acc.add_scaled(f, &BigRational::from_integer(s.into()));
                }
            }
            if !acc.is_zero() {
                out.values.insert(alpha.clone(), acc);
            }
        }
        out
    }

    /// `[{"tuple": [[..], ..], "forms": [{"I": [..], "coeff": "a/b"}]}]`
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.values
                .iter()
                .map(|(t, f)| {
                    json!({
                        "tuple": t.iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
                        "forms": f.terms().map(|(i, c)| json!({
                            "I": i.to_vec(),
                            "coeff": c.to_string(),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

/// The log-Čech complex of one complex on one nerve.
#[derive(Clone, Debug)]
pub struct CechComplex {
    k: SimplicialComplex,
    nerve: Nerve,
}

impl CechComplex {
    pub fn new(k: &SimplicialComplex, kind: CechNerve) -> Result<Self> {
        Ok(CechComplex {
            k: k.clone(),
            nerve: Nerve::new(k, kind)?,
        })
    }

    pub fn nerve(&self) -> &Nerve {
        &self.nerve
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.k
    }

    /// Tuples of degree `t` on which `dz_I/z_I` is admissible.
    pub fn admissible(&self, i: FaceSet, t: usize) -> Vec<&Tuple> {
        self.nerve
            .tuples(t)
            .iter()
            .filter(|a| tuple_intersection(a).is_disjoint(i))
            .collect()
    }

    /// `δ : C^t_I → C^{t+1}_I` in the [`admissible`](Self::admissible) order.
    pub fn block(&self, i: FaceSet, t: usize) -> ExactMatrix {
        let cols = self.admissible(i, t);
        let rows = self.admissible(i, t + 1);
        self.block_between(i, &rows, &cols)
    }

    fn block_between(&self, i: FaceSet, rows: &[&Tuple], cols: &[&Tuple]) -> ExactMatrix {
        let index: HashMap<&Tuple, usize> = cols.iter().enumerate().map(|(c, t)| (*t, c)).collect();
        let mut m = ExactMatrix::zeros(rows.len(), cols.len());
        let sign_p: i64 = if i.len() % 2 == 0 { 1 } else { -1 };
        let mut beta = Vec::new();
        for (r, alpha) in rows.iter().enumerate() {
            for j in 0..alpha.len() {
                beta.clear();
                beta.extend(alpha.iter().enumerate().filter(|(m, _)| *m != j).map(|(_, f)| *f));
                // a face of an admissible tuple need not be admissible
                if let Some(&c) = index.get(&beta) {
                    m.add(r, c, Int::from(if j % 2 == 0 { sign_p } else { -sign_p }));
                }
            }
        }
        m
    }

    /// Basis of `C^{p,t}`: pairs `(tuple, I)`, grouped by `I` ascending.
    pub fn log_basis(&self, p: usize, t: usize) -> Vec<(Tuple, FaceSet)> {
        FaceSet::full(self.k.n())
            .subsets_of_size(p)
            .flat_map(|i| {
                self.admissible(i, t)
                    .into_iter()
                    .map(move |a| (a.clone(), i))
            })
            .collect()
    }

    /// `δ : C^{p,t} → C^{p,t+1}` in the [`log_basis`](Self::log_basis) order.
    pub fn differential(&self, p: usize, t: usize) -> ExactMatrix {
        let blocks: Vec<_> = FaceSet::full(self.k.n())
            .subsets_of_size(p)
            .map(|i| self.block(i, t))
            .collect();
        ExactMatrix::direct_sum(&blocks)
    }

    /// Dimensions of `C^t_I` and ranks of `δ : C^t_I → C^{t+1}_I`.
    fn block_ranks(&self, i: FaceSet) -> (Vec<usize>, Vec<usize>) {
        let top = self.nerve.max_degree();
        let levels: Vec<Vec<&Tuple>> = (0..=top + 1).map(|t| self.admissible(i, t)).collect();
        let dims = levels.iter().map(Vec::len).collect();
        let ranks = (0..=top)
            .map(|t| {
                if levels[t].is_empty() || levels[t + 1].is_empty() {
                    0
                } else {
                    rank_rational(&self.block_between(i, &levels[t + 1], &levels[t]))
                }
            })
            .collect();
        (dims, ranks)
    }

    /// `H^{p,q}` over ℚ.
    pub fn cohomology(&self) -> BigradedTable {
        let n = self.k.n();
        let supports: Vec<FaceSet> = FaceSet::full(n).subsets().collect();
        let per_support: Vec<(usize, Vec<usize>)> = supports
            .par_iter()
            .map(|&i| {
                let (dims, ranks) = self.block_ranks(i);
                let h = (0..dims.len())
                    .map(|t| {
                        let r_out = ranks.get(t).copied().unwrap_or(0);
                        let r_in = if t == 0 { 0 } else { ranks[t - 1] };
                        dims[t] - r_out - r_in
                    })
                    .collect();
                (i.len(), h)
            })
            .collect();
        let mut acc: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (p, h) in per_support {
            for (q, r) in h.into_iter().enumerate() {
                if r > 0 {
                    *acc.entry((p, q)).or_default() += r;
                }
            }
        }
        let mut table = BigradedTable::new(n, Coefficients::Rationals);
        for ((p, q), r) in acc {
            table.set(
                p,
                q,
                CohomologyBlock {
                    free_rank: r,
                    torsion: Vec::new(),
                },
            );
        }
        table
    }

    /// Cocycles whose classes form a ℚ-basis of `H^{p,q}`, grouped by `I`.
    pub fn cocycles(&self, p: usize, q: usize) -> Result<Vec<LogCochain>> {
        let mut out = Vec::new();
        for i in FaceSet::full(self.k.n()).subsets_of_size(p) {
            let here = self.admissible(i, q);
            if here.is_empty() {
                continue;
            }
            let next = self.admissible(i, q + 1);
            let d_out = self.block_between(i, &next, &here);
            let d_in = if q == 0 {
                ExactMatrix::zeros(here.len(), 0)
            } else {
                let prev = self.admissible(i, q - 1);
                self.block_between(i, &here, &prev)
            };
            for v in quotient_basis(&d_in, &d_out)? {
                out.push(self.to_cochain(p, q, i, &here, &v));
            }
        }
        Ok(out)
    }

    fn to_cochain(&self, p: usize, q: usize, i: FaceSet, basis: &[&Tuple], v: &SparseVec) -> LogCochain {
        let mut c = LogCochain::zero(p, q);
        for (idx, x) in v.entries() {
            c.values.insert(
                basis[*idx].clone(),
                LogForm::monomial(i, BigRational::from_integer(x.to_bigint())),
            );
        }
        c
    }

    /// Matrix of a cochain in the [`log_basis`](Self::log_basis) coordinates.
    pub fn coordinates(&self, w: &LogCochain) -> Result<Vec<BigRational>> {
        let basis = self.log_basis(w.p, w.t);
        let index: HashMap<(&Tuple, FaceSet), usize> =
            basis.iter().enumerate().map(|(k, (t, i))| ((t, *i), k)).collect();
        let mut out = vec![BigRational::zero(); basis.len()];
        for (t, f) in w.values() {
            for (i, c) in f.terms() {
                let k = index.get(&(t, *i)).ok_or_else(|| {
                    Error::Precondition(format!("term dz_{i}/z_{i} at {t:?} is not in the complex"))
                })?;
                out[*k] = c.clone();
            }
        }
        Ok(out)
    }
}

/// Basis of `C^{p,t}` on the given nerve.
pub fn log_basis(
    k: &SimplicialComplex,
    p: usize,
    t: usize,
    nerve: CechNerve,
) -> Result<Vec<(Tuple, FaceSet)>> {
    Ok(CechComplex::new(k, nerve)?.log_basis(p, t))
}

/// `δ : C^{p,t} → C^{p,t+1}` on the given nerve.
pub fn cech_differential(
    k: &SimplicialComplex,
    p: usize,
    t: usize,
    nerve: CechNerve,
) -> Result<ExactMatrix> {
    Ok(CechComplex::new(k, nerve)?.differential(p, t))
}

/// `H^{p,q}` of the log-Čech complex over ℚ, on the chain nerve.
pub fn cohomology_cech(k: &SimplicialComplex) -> Result<BigradedTable> {
    cohomology_cech_with(k, CechNerve::Flags)
}

pub fn cohomology_cech_with(k: &SimplicialComplex, nerve: CechNerve) -> Result<BigradedTable> {
    Ok(CechComplex::new(k, nerve)?.cohomology())
}

/// A closed cochain representing basis class `index` of `H^{p,q}`.
pub fn representative_cocycle(
    k: &SimplicialComplex,
    p: usize,
    q: usize,
    index: usize,
    nerve: CechNerve,
) -> Result<LogCochain> {
    let mut all = CechComplex::new(k, nerve)?.cocycles(p, q)?;
    if index >= all.len() {
        return Err(Error::ClassIndex {
            p,
            q,
            index,
            rank: all.len(),
        });
    }
    Ok(all.swap_remove(index))
}

/// Hodge numbers and the filtration `F(k, s) = dim F^k H^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeTable {
    pub n: usize,
    pub h: BTreeMap<(usize, usize), usize>,
    pub f: BTreeMap<(usize, usize), usize>,
}

impl HodgeTable {
    /// `F(k, s) = Σ_{p≥k} h(p, s−p)` for `0 ≤ k ≤ n + 1`, `0 ≤ s ≤ 2n`.
    pub fn from_table(table: &BigradedTable) -> Self {
        let n = table.n;
        let h: BTreeMap<_, _> = table
            .nonzero()
            .filter(|(_, b)| b.free_rank > 0)
            .map(|(&k, b)| (k, b.free_rank))
            .collect();
        let mut f = BTreeMap::new();
        for s in 0..=2 * n {
            for k in 0..=n + 1 {
                let v: usize = (k..=s.min(n))
                    .map(|p| h.get(&(p, s - p)).copied().unwrap_or(0))
                    .sum();
                f.insert((k, s), v);
            }
        }
        HodgeTable { n, h, f }
    }

    pub fn h(&self, p: usize, q: usize) -> usize {
        self.h.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn filtration(&self, k: usize, s: usize) -> usize {
        self.f.get(&(k, s)).copied().unwrap_or(0)
    }

    /// Total Betti number `b_s = F(0, s)`.
    pub fn betti(&self, s: usize) -> usize {
        self.filtration(0, s)
    }

    /// `{"h": {"p,q": r}, "F": {"k,s": r}, "filtration": ..}` with zeros omitted.
    pub fn to_json(&self) -> Value {
        let mut h = Map::new();
        for ((p, q), r) in &self.h {
            h.insert(format!("{p},{q}"), json!(r));
        }
        let mut f = Map::new();
        for ((k, s), r) in &self.f {
            if *r > 0 {
                f.insert(format!("{k},{s}"), json!(r));
            }
        }
        json!({
            "h": h,
            "F": f,
            "filtration": "stupid filtration by holomorphic form degree >= k",
        })
    }
}

impl std::fmt::Display for HodgeTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "h^(p,q):")?;
        for ((p, q), r) in &self.h {
            writeln!(f, "  h^({p},{q}) = {r}")?;
        }
        writeln!(f, "F^k H^s (nonzero):")?;
        for ((k, s), r) in &self.f {
            if *r > 0 {
                writeln!(f, "  F({k},{s}) = {r}")?;
            }
        }
        Ok(())
    }
}

/// Hodge table read off the log-Čech cohomology.
pub fn hodge_table(k: &SimplicialComplex) -> Result<HodgeTable> {
    Ok(HodgeTable::from_table(&cohomology_cech(k)?))
}

/// `F(k, s)` as the cohomology of the subcomplex of the total log complex
/// spanned by form degree `≥ k`. Each truncation is a direct summand (the
/// differential preserves form degree), so its cohomology injects into `H^s`
/// and its dimension is `dim F^k H^s`. Ranks are taken on the assembled
/// matrices `C^{p,t} → C^{p,t+1}`, not block by block in `I`; the truncated
/// total differential is their direct sum, so its rank is the sum.
pub fn filtration_by_rank(k: &SimplicialComplex, nerve: CechNerve) -> Result<BTreeMap<(usize, usize), usize>> {
    let c = CechComplex::new(k, nerve)?;
    let n = k.n();
    let top = c.nerve.max_degree();
    let mut dims = BTreeMap::new();
    let mut ranks = BTreeMap::new();
    for p in 0..=n {
        for t in 0..=top + 1 {
            dims.insert((p, t), c.log_basis(p, t).len());
            ranks.insert((p, t), rank_rational(&c.differential(p, t)));
        }
    }
    let sum_over = |map: &BTreeMap<(usize, usize), usize>, kk: usize, s: usize| -> usize {
        (kk..=n.min(s))
            .filter_map(|p| map.get(&(p, s - p)))
            .sum()
    };
    let mut out = BTreeMap::new();
    for kk in 0..=n + 1 {
        for s in 0..=2 * n {
            let r_in = if s == 0 { 0 } else { sum_over(&ranks, kk, s - 1) };
            out.insert((kk, s), sum_over(&dims, kk, s) - sum_over(&ranks, kk, s) - r_in);
        }
    }
    Ok(out)
}

/// Cohomology of the log-Čech complex for every `I` separately, as a check
/// that nothing is lost when the blocks are split.
pub fn support_dimensions(k: &SimplicialComplex, nerve: CechNerve) -> Result<BTreeMap<FaceSet, Vec<usize>>> {
    let c = CechComplex::new(k, nerve)?;
    Ok(FaceSet::full(k.n())
        .subsets()
        .map(|i| (i, c.block_ranks(i).0))
        .collect())
}

#[cfg(test)]
fn one() -> BigRational {
    <BigRational as num_traits::One>::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(v: &[usize]) -> FaceSet {
        FaceSet::from_vertices(v, 6).unwrap()
    }

    fn ranks(t: &BigradedTable) -> Vec<((usize, usize), usize)> {
        t.nonzero().map(|(k, b)| (*k, b.free_rank)).collect()
    }

    #[test]
    fn admissibility_examples() {
        let k = SimplicialComplex::simplex_boundary(2).unwrap();
        let b = log_basis(&k, 2, 1, CechNerve::Full).unwrap();
        assert!(b.contains(&(vec![fs(&[1]), fs(&[2])], fs(&[1, 2]))));
        assert!(b.contains(&(vec![FaceSet::EMPTY, fs(&[1])], fs(&[1, 2]))));
        let k = SimplicialComplex::simplex(2).unwrap();
        let b = log_basis(&k, 2, 0, CechNerve::Full).unwrap();
        assert!(!b.contains(&(vec![fs(&[1, 2])], fs(&[1, 2]))));
    }

    #[test]
    fn constant_cochain_is_closed() {
        let k = SimplicialComplex::simplex(2).unwrap();
        let nerve = Nerve::new(&k, CechNerve::Full).unwrap();
        let mut w = LogCochain::zero(0, 0);
        for &f in k.faces() {
            w.add(&[f], &LogForm::monomial(FaceSet::EMPTY, one())).unwrap();
        }
        assert!(w.coboundary(&k, &nerve).is_zero());
    }

    #[test]
    fn circle_cocycle_on_full_nerve() {
        let k = SimplicialComplex::simplex_boundary(2).unwrap();
        let nerve = Nerve::new(&k, CechNerve::Full).unwrap();
        let mut w = LogCochain::zero(2, 1);
        w.add(&[fs(&[1]), fs(&[2])], &LogForm::monomial(fs(&[1, 2]), one())).unwrap();
        assert!(w.is_admissible());
        // ∅ is a cover index too, so the triple (∅, {1}, {2}) has to be balanced
        assert!(!w.coboundary(&k, &nerve).is_zero());
        w.add(&[FaceSet::EMPTY, fs(&[2])], &LogForm::monomial(fs(&[1, 2]), one())).unwrap();
        assert!(w.coboundary(&k, &nerve).is_zero());
        assert_eq!(
            w.value(&[fs(&[2]), fs(&[1])]).coefficient(fs(&[1, 2])),
            -one()
        );
        // not exact: the only degree-0 cochain with I = {1,2} lives on (∅)
        let c = CechComplex::new(&k, CechNerve::Full).unwrap();
        let t = c.cohomology();
        assert_eq!(t.rank(2, 1), 1);
        let reps = c.cocycles(2, 1).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(reps[0].coboundary(&k, &nerve).is_zero());
    }

    #[test]
    fn named_tables_both_nerves() {
        let cases = [
            (SimplicialComplex::simplex_boundary(2).unwrap(), vec![((0, 0), 1), ((2, 1), 1)]),
            (SimplicialComplex::simplex_boundary(3).unwrap(), vec![((0, 0), 1), ((3, 2), 1)]),
            (SimplicialComplex::points(3).unwrap(), vec![((0, 0), 1), ((2, 1), 3), ((3, 1), 2)]),
            (SimplicialComplex::simplex(3).unwrap(), vec![((0, 0), 1)]),
        ];
        for (k, expected) in cases {
            assert_eq!(ranks(&cohomology_cech(&k).unwrap()), expected);
            assert_eq!(ranks(&cohomology_cech_with(&k, CechNerve::Full).unwrap()), expected);
        }
    }

    #[test]
    fn unit_class_in_degree_zero() {
        let k = SimplicialComplex::simplex_boundary(2).unwrap();
        let w = representative_cocycle(&k, 0, 0, 0, CechNerve::Flags).unwrap();
        assert_eq!(w.values().count(), k.faces().len());
        assert!(w.values().all(|(t, f)| t.len() == 1 && f.coefficient(FaceSet::EMPTY) == one()));
        assert!(matches!(
            representative_cocycle(&k, 2, 2, 0, CechNerve::Flags),
            Err(Error::ClassIndex { .. })
        ));
    }

    #[test]
    fn hodge_examples() {
        let k = SimplicialComplex::simplex_boundary(2).unwrap();
        let h = hodge_table(&k).unwrap();
        assert_eq!(h.filtration(2, 3), 1);
        assert_eq!(h.filtration(3, 3), 0);
        let k = SimplicialComplex::points(3).unwrap();
        let h = hodge_table(&k).unwrap();
        assert_eq!((h.filtration(2, 3), h.filtration(3, 4), h.filtration(3, 3)), (3, 2, 0));
        let k = SimplicialComplex::simplex(3).unwrap();
        let h = hodge_table(&k).unwrap();
        assert_eq!(h.filtration(0, 0), 1);
        assert_eq!(h.filtration(1, 0), 0);
    }

    #[test]
    fn filtration_routes_agree() {
        for k in [
            SimplicialComplex::simplex_boundary(2).unwrap(),
            SimplicialComplex::points(3).unwrap(),
            SimplicialComplex::simplex_boundary(3).unwrap(),
        ] {
            assert_eq!(filtration_by_rank(&k, CechNerve::Flags).unwrap(), hodge_table(&k).unwrap().f);
        }
    }

    #[test]
    fn differential_squares_to_zero() {
        let k = SimplicialComplex::points(3).unwrap();
        let c = CechComplex::new(&k, CechNerve::Full).unwrap();
        for p in 0..=3 {
            for t in 0..c.nerve().max_degree() {
                let d1 = c.differential(p, t);
                let d2 = c.differential(p, t + 1);
                assert!(d2.mul(&d1).unwrap().is_zero());
            }
        }
    }
}
