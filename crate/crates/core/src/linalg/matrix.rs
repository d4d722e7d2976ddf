use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::int::Int;
use super::sparse::SparseVec;
use crate::error::{Error, Result};

/// Sparse exact matrix. Entries are integers unless a non-integral rational
/// was inserted, in which case the matrix is flagged rational.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Entries,
}

#[derive(Clone, PartialEq, Eq)]
enum Entries {
    Integer(BTreeMap<(usize, usize), Int>),
    Rational(BTreeMap<(usize, usize), BigRational>),
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: Entries::Integer(BTreeMap::new()),
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.add(i, i, Int::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.add(i, j, Int::from(v));
            }
        }
        m
    }

    pub fn from_rational_rows(rows: &[Vec<BigRational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.add_rational(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        match &self.data {
            Entries::Integer(m) => m.len(),
            Entries::Rational(m) => m.len(),
        }
    }

    pub fn is_integral(&self) -> bool {
        matches!(self.data, Entries::Integer(_))
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    /// Adds `v` to entry `(r, c)`.
    pub fn add(&mut self, r: usize, c: usize, v: Int) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of bounds");
        if v.is_zero() {
            return;
        }
        match &mut self.data {
            Entries::Integer(m) => {
                let e = m.entry((r, c)).or_insert(Int::ZERO);
                *e = &*e + &v;
                if e.is_zero() {
                    m.remove(&(r, c));
                }
            }
            Entries::Rational(m) => {
                let e = m.entry((r, c)).or_insert_with(BigRational::zero);
                *e += BigRational::from_integer(v.to_bigint());
                if e.is_zero() {
                    m.remove(&(r, c));
                }
            }
        }
    }

    pub fn add_rational(&mut self, r: usize, c: usize, v: BigRational) {
        if v.is_integer() {
            return self.add(r, c, Int::from(v.to_integer()));
        }
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of bounds");
        self.promote();
        if let Entries::Rational(m) = &mut self.data {
            let e = m.entry((r, c)).or_insert_with(BigRational::zero);
            *e += v;
            if e.is_zero() {
                m.remove(&(r, c));
            }
        }
    }

    fn promote(&mut self) {
        if let Entries::Integer(m) = &self.data {
            let converted = m
                .iter()
                .map(|(&k, v)| (k, BigRational::from_integer(v.to_bigint())))
                .collect();
            self.data = Entries::Rational(converted);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        match &self.data {
            Entries::Integer(m) => m
                .get(&(r, c))
                .map_or_else(BigRational::zero, |v| BigRational::from_integer(v.to_bigint())),
            Entries::Rational(m) => m.get(&(r, c)).cloned().unwrap_or_else(BigRational::zero),
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> Vec<((usize, usize), BigRational)> {
        match &self.data {
            Entries::Integer(m) => m
                .iter()
                .map(|(&k, v)| (k, BigRational::from_integer(v.to_bigint())))
                .collect(),
            Entries::Rational(m) => m.iter().map(|(&k, v)| (k, v.clone())).collect(),
        }
    }

    pub fn transpose(&self) -> ExactMatrix {
        let data = match &self.data {
            Entries::Integer(m) => {
                Entries::Integer(m.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect())
            }
            Entries::Rational(m) => {
                Entries::Rational(m.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect())
            }
        };
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn negated(&self) -> ExactMatrix {
        let data = match &self.data {
            Entries::Integer(m) => Entries::Integer(m.iter().map(|(&k, v)| (k, -v)).collect()),
            Entries::Rational(m) => Entries::Rational(m.iter().map(|(&k, v)| (k, -v)).collect()),
        };
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `self · other`.
    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if let (Some(a), Some(b)) = (self.int_rows(), other.int_rows()) {
            let mut out = ExactMatrix::zeros(self.rows, other.cols);
            for (i, row) in a.iter().enumerate() {
                let mut acc = SparseVec::new();
                for (k, v) in row.entries() {
                    acc = SparseVec::combine(&Int::ONE, &acc, v, &b[*k]);
                }
                for (j, v) in acc.into_entries() {
                    out.add(i, j, v);
                }
            }
            return Ok(out);
        }
        let mut by_row: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); other.rows];
        for ((r, c), v) in other.entries() {
            by_row[r].push((c, v));
        }
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for ((i, k), a) in self.entries() {
            for (j, b) in &by_row[k] {
                out.add_rational(i, *j, &a * b);
            }
        }
        Ok(out)
    }

    /// Rows as integer vectors, or `None` for a rational matrix.
    pub fn int_rows(&self) -> Option<Vec<SparseVec>> {
        let Entries::Integer(m) = &self.data else {
            return None;
        };
        let mut rows: Vec<Vec<(usize, Int)>> = vec![Vec::new(); self.rows];
        for (&(r, c), v) in m {
            rows[r].push((c, v.clone()));
        }
        Some(rows.into_iter().map(SparseVec::from_pairs).collect())
    }

    /// Rows cleared of denominators: each row is multiplied by the lcm of its
    /// denominators. Preserves rank and row space over ℚ.
    pub fn scaled_int_rows(&self) -> Vec<SparseVec> {
        if let Some(rows) = self.int_rows() {
            return rows;
        }
        let mut rows: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); self.rows];
        for ((r, c), v) in self.entries() {
            rows[r].push((c, v));
        }
        rows.into_iter()
            .map(|row| {
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
                SparseVec::from_pairs(
                    row.into_iter()
                        .map(|(c, v)| (c, Int::from((v * BigRational::from_integer(lcm.clone())).to_integer())))
                        .collect(),
                )
            })
            .collect()
    }

    /// Columns as integer vectors, or `None` for a rational matrix.
    pub fn int_cols(&self) -> Option<Vec<SparseVec>> {
        self.transpose().int_rows()
    }

    /// Dense integer copy. Panics on rational matrices.
    pub fn to_dense_int(&self) -> Vec<Vec<Int>> {
        let Entries::Integer(m) = &self.data else {
            panic!("to_dense_int on a rational matrix");
        };
        let mut d = vec![vec![Int::ZERO; self.cols]; self.rows];
        for (&(r, c), v) in m {
            d[r][c] = v.clone();
        }
        d
    }

    /// Matrix from integer column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.entries() {
                m.add(*i, j, v.clone());
            }
        }
        m
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[ExactMatrix]) -> ExactMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = ExactMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for ((r, c), v) in b.entries() {
                out.add_rational(r0 + r, c0 + c, v);
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for ((r, c), v) in self.entries() {
            writeln!(f, "  ({r},{c}) = {v}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_entries_flag_the_matrix() {
        let mut m = ExactMatrix::zeros(2, 2);
        m.add(0, 0, Int::from(3));
        assert!(m.is_integral());
        m.add_rational(1, 1, BigRational::new(1.into(), 2.into()));
        assert!(!m.is_integral());
        assert_eq!(m.get(0, 0), BigRational::from_integer(3.into()));
        let rows = m.scaled_int_rows();
        assert_eq!(rows[1].entries(), &[(1, Int::ONE)]);
    }

    #[test]
    fn product_and_cancellation() {
        let a = ExactMatrix::from_rows(&[vec![1, -1]]);
        let b = ExactMatrix::from_rows(&[vec![1], vec![1]]);
        assert!(a.mul(&b).unwrap().is_zero());
        assert!(b.mul(&b).is_err());
    }
}
