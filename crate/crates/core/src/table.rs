//! Bigraded (co)homology tables.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::linalg::{Coefficients, CohomologyBlock};

/// `(p, q) ↦ H^{p,q}`; absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedTable {
    pub n: usize,
    pub coeff: Coefficients,
    entries: BTreeMap<(usize, usize), CohomologyBlock>,
}

impl BigradedTable {
    pub fn new(n: usize, coeff: Coefficients) -> Self {
        BigradedTable {
            n,
            coeff,
            entries: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, p: usize, q: usize, block: CohomologyBlock) {
        if block.is_zero() {
            self.entries.remove(&(p, q));
        } else {
            self.entries.insert((p, q), block);
        }
    }

    pub fn get(&self, p: usize, q: usize) -> CohomologyBlock {
        self.entries.get(&(p, q)).cloned().unwrap_or_default()
    }

    /// Free rank of `H^{p,q}`.
    pub fn rank(&self, p: usize, q: usize) -> usize {
        self.entries.get(&(p, q)).map_or(0, |b| b.free_rank)
    }

    /// Nonzero entries in `(p, q)` order.
    pub fn nonzero(&self) -> impl Iterator<Item = (&(usize, usize), &CohomologyBlock)> {
        self.entries.iter()
    }

    /// `b_s = Σ_{p+q=s} rank H^{p,q}`.
    pub fn total_betti(&self, s: usize) -> usize {
        self.entries
            .iter()
            .filter(|((p, q), _)| p + q == s)
            .map(|(_, b)| b.free_rank)
            .sum()
    }

    /// The same table with torsion dropped, as seen over ℚ.
    pub fn rational(&self) -> BigradedTable {
        let mut t = BigradedTable::new(self.n, Coefficients::Rationals);
        for (&(p, q), b) in &self.entries {
            t.set(
                p,
                q,
                CohomologyBlock {
                    free_rank: b.free_rank,
                    torsion: Vec::new(),
                },
            );
        }
        t
    }

    /// Human-readable differences against `other`; empty iff the groups agree.
    pub fn diff(&self, other: &BigradedTable) -> Vec<String> {
        let keys: std::collections::BTreeSet<_> =
            self.entries.keys().chain(other.entries.keys()).collect();
        keys.into_iter()
            .filter_map(|&(p, q)| {
                let (a, b) = (self.get(p, q), other.get(p, q));
                (a != b).then(|| format!("H^{{{p},{q}}}: {} vs {}", describe(&a), describe(&b)))
            })
            .collect()
    }

    /// `{"h": {"p,q": {"rank": r, "torsion": [..]}}}`
    pub fn to_json(&self) -> Value {
        let mut h = Map::new();
        for (&(p, q), b) in &self.entries {
            h.insert(
                format!("{p},{q}"),
                json!({
                    "rank": b.free_rank,
                    "torsion": b.torsion.iter().map(bigint_json).collect::<Vec<_>>(),
                }),
            );
        }
        json!({ "h": h })
    }
}

/// `ℤ^r ⊕ ℤ/d…` style description.
pub fn describe(b: &CohomologyBlock) -> String {
    let mut parts = Vec::new();
    if b.free_rank > 0 {
        parts.push(if b.free_rank == 1 {
            "Z".to_string()
        } else {
            format!("Z^{}", b.free_rank)
        });
    }
    for t in &b.torsion {
        parts.push(format!("Z/{t}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub(crate) fn bigint_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

impl std::fmt::Display for BigradedTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "(all groups zero)");
        }
        for (&(p, q), b) in &self.entries {
            writeln!(f, "H^{{{p},{q}}} = {}", describe(b))?;
        }
        Ok(())
    }
}
