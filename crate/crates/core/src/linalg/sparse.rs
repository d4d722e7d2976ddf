//! Sparse integer vectors and fraction-free echelon reduction.

use std::collections::HashMap;

use super::int::Int;

/// Sparse vector of integers, sorted by index, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, Int)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    /// From unsorted `(index, value)` pairs; duplicates are summed.
    pub fn from_pairs(mut pairs: Vec<(usize, Int)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Int)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = &*acc + &v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Int::ONE)],
        }
    }

    pub fn entries(&self) -> &[(usize, Int)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Int)> {
        self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn lead(&self) -> Option<(usize, &Int)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: usize) -> Option<&Int> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// `a·x + b·y`.
    pub fn combine(a: &Int, x: &SparseVec, b: &Int, y: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(x.entries.len() + y.entries.len());
        let (mut i, mut j) = (0, 0);
        let (xs, ys) = (&x.entries, &y.entries);
        while i < xs.len() || j < ys.len() {
            let take_x = j >= ys.len() || (i < xs.len() && xs[i].0 < ys[j].0);
            let take_y = i >= xs.len() || (j < ys.len() && ys[j].0 < xs[i].0);
            if take_x {
                out.push((xs[i].0, a * &xs[i].1));
                i += 1;
            } else if take_y {
                out.push((ys[j].0, b * &ys[j].1));
                j += 1;
            } else {
                let v = &(a * &xs[i].1) + &(b * &ys[j].1);
                if !v.is_zero() {
                    out.push((xs[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn scale(&self, a: &Int) -> SparseVec {
        if a.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, a * v)).collect(),
        }
    }

    /// gcd of all entries (0 for the empty vector).
    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, v) in &self.entries {
            g = g.gcd(v);
            if g.is_unit() {
                break;
            }
        }
        g
    }

    pub fn div_exact(&self, d: &Int) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, v.div_exact(d)))
                .collect(),
        }
    }

    /// Divides by the content and makes the leading entry positive.
    pub fn primitive(&self) -> SparseVec {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        let g = match self.lead() {
            Some((_, v)) if v.is_negative() => -g,
            _ => g,
        };
        if g == Int::ONE {
            self.clone()
        } else {
            self.div_exact(&g)
        }
    }
}

/// Row-echelon collection keyed by leading index, with optional tracking of
/// how each stored vector was combined from the inputs.
#[derive(Debug, Default)]
pub struct Echelon {
    pivots: HashMap<usize, (SparseVec, SparseVec)>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces the leading entry of `v` until it hits a fresh index or `v`
    /// vanishes. `track` receives the same row operations.
    pub fn reduce_lead(&self, mut v: SparseVec, mut track: SparseVec) -> (SparseVec, SparseVec) {
        while let Some((i, a)) = v.lead() {
            let Some((p, pt)) = self.pivots.get(&i) else {
                break;
            };
            let a = a.clone();
            (v, track) = eliminate(&v, &track, &a, p, pt);
        }
        (v, track)
    }

    /// Reduces every entry of `v` that sits at a pivot index.
    pub fn reduce_full(&self, mut v: SparseVec, mut track: SparseVec) -> (SparseVec, SparseVec) {
        let mut cursor = 0;
        loop {
            let next = v
                .entries()
                .iter()
                .find(|(i, _)| *i >= cursor && self.pivots.contains_key(i))
                .map(|(i, a)| (*i, a.clone()));
            let Some((i, a)) = next else { break };
            let (p, pt) = &self.pivots[&i];
            (v, track) = eliminate(&v, &track, &a, p, pt);
            cursor = i + 1;
        }
        (v, track)
    }

    /// Inserts a vector already reduced by [`reduce_lead`](Self::reduce_lead).
    pub fn insert(&mut self, v: SparseVec, track: SparseVec) {
        let (i, _) = v.lead().expect("cannot insert a zero vector");
        debug_assert!(!self.pivots.contains_key(&i));
        self.pivots.insert(i, (v, track));
    }

    /// Reduces and inserts; returns whether `v` was independent.
    pub fn push(&mut self, v: SparseVec) -> bool {
        let (v, t) = self.reduce_lead(v, SparseVec::new());
        if v.is_empty() {
            false
        } else {
            self.insert(v, t);
            true
        }
    }
}

/// Clears the entry `a` of `v` at the lead index of `p` by a fraction-free
/// combination, then divides out the joint content of `(v, track)`.
fn eliminate(
    v: &SparseVec,
    track: &SparseVec,
    a: &Int,
    p: &SparseVec,
    pt: &SparseVec,
) -> (SparseVec, SparseVec) {
    let (_, b) = p.lead().unwrap();
    let g = a.gcd(b);
    let mut alpha = b.div_exact(&g);
    let mut beta = -a.div_exact(&g);
    if alpha.is_negative() {
        alpha = -alpha;
        beta = -beta;
    }
    let nv = SparseVec::combine(&alpha, v, &beta, p);
    let nt = if track.is_empty() && pt.is_empty() {
        SparseVec::new()
    } else {
        SparseVec::combine(&alpha, track, &beta, pt)
    };
    if alpha.is_unit() {
        return (nv, nt);
    }
    let c = nv.content().gcd(&nt.content());
    if c.is_zero() || c.is_unit() {
        (nv, nt)
    } else {
        (nv.div_exact(&c), nt.div_exact(&c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(pairs: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_pairs(pairs.iter().map(|&(i, v)| (i, Int::from(v))).collect())
    }

    #[test]
    fn combine_cancels() {
        let x = sv(&[(0, 1), (2, 3)]);
        let y = sv(&[(0, 2), (1, 1)]);
        let z = SparseVec::combine(&Int::from(2), &x, &Int::from(-1), &y);
        assert_eq!(z, sv(&[(1, -1), (2, 6)]));
    }

    #[test]
    fn echelon_detects_dependence() {
        let mut e = Echelon::new();
        assert!(e.push(sv(&[(0, 2), (1, 4)])));
        assert!(e.push(sv(&[(0, 3), (2, 1)])));
        assert!(!e.push(sv(&[(0, 1), (1, 2)])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn primitive_normalizes_sign_and_content() {
        assert_eq!(sv(&[(1, -4), (3, 6)]).primitive(), sv(&[(1, 2), (3, -3)]));
    }
}
