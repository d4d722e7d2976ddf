use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported vertex count; vertex `k` occupies bit `k - 1`.
pub const MAX_VERTICES: usize = 24;

/// A subset of `{1, …, n}` stored as a bitmask.
///
/// Ordering is by cardinality first, then by the raw mask. This is the total
/// order used for cover indices, so a strictly increasing chain of faces is
/// also strictly increasing in this order.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct FaceSet(u32);

impl FaceSet {
    pub const EMPTY: FaceSet = FaceSet(0);

    pub fn from_bits(bits: u32) -> Self {
        FaceSet(bits)
    }

    /// Builds a set from 1-based vertex labels, rejecting labels outside `1..=n`.
    pub fn from_vertices(vertices: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u32;
        for &v in vertices {
            if v == 0 || v > n {
                return Err(Error::InvalidComplex(format!(
                    "vertex {v} out of range 1..={n}"
                )));
            }
            bits |= 1 << (v - 1);
        }
        Ok(FaceSet(bits))
    }

    /// The full vertex set `[n]`.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            FaceSet(u32::MAX)
        } else {
            FaceSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v >= 1 && v <= MAX_VERTICES);
        FaceSet(1 << (v - 1))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v >= 1 && v <= 32 && self.0 & (1 << (v - 1)) != 0
    }

    pub fn union(self, other: FaceSet) -> FaceSet {
        FaceSet(self.0 | other.0)
    }

    pub fn intersection(self, other: FaceSet) -> FaceSet {
        FaceSet(self.0 & other.0)
    }

    pub fn difference(self, other: FaceSet) -> FaceSet {
        FaceSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: FaceSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: FaceSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn with(self, v: usize) -> FaceSet {
        FaceSet(self.0 | (1 << (v - 1)))
    }

    pub fn without(self, v: usize) -> FaceSet {
        FaceSet(self.0 & !(1 << (v - 1)))
    }

    /// 1-based position of `v` in the naturally ordered set `self ∪ {v}`.
    pub fn position_of(self, v: usize) -> usize {
        let below = self.0 & ((1u32 << (v - 1)) - 1);
        below.count_ones() as usize + 1
    }

    /// Vertices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let tz = bits.trailing_zeros();
                bits &= bits - 1;
                Some(tz as usize + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = FaceSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(FaceSet(cur))
        })
    }
}

impl FaceSet {
    /// Subsets of `self` with exactly `k` elements, in the cover-index order.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = FaceSet> {
        self.subsets().filter(move |s| s.len() == k)
    }
}

impl Ord for FaceSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for FaceSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for FaceSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for FaceSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let vertices = Vec::<usize>::deserialize(deserializer)?;
        FaceSet::from_vertices(&vertices, MAX_VERTICES).map_err(serde::de::Error::custom)
    }
}
