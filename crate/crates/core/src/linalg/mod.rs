//! Exact integer and rational linear algebra: Smith normal form, ranks,
//! kernels and the cohomology of a pair of composable maps.

mod int;
mod matrix;
mod snf;
mod sparse;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use int::Int;
pub use matrix::ExactMatrix;
pub use snf::{smith_normal_form, SnfResult};
pub use sparse::{Echelon, SparseVec};

/// Coefficient ring for (co)homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Integers,
    Rationals,
}

/// One (co)homology group: free rank plus torsion invariant factors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologyBlock {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl CohomologyBlock {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Rank over ℚ, by fraction-free echelon on the columns in index order.
/// Coboundary matrices have much sparser columns than rows, which keeps the
/// fill-in down.
pub fn rank_rational(m: &ExactMatrix) -> usize {
    let mut e = Echelon::new();
    for row in m.transpose().scaled_int_rows() {
        e.push(row);
    }
    e.rank()
}

/// Primitive integer basis of the kernel of `m` over ℚ.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<SparseVec> {
    let cols = m.transpose().scaled_int_rows();
    let mut e = Echelon::new();
    let mut kernel = Vec::new();
    for (j, col) in cols.into_iter().enumerate() {
        let (v, t) = e.reduce_lead(col, SparseVec::unit(j));
        if v.is_empty() {
            kernel.push(t.primitive());
        } else {
            e.insert(v, t);
        }
    }
    kernel
}

/// Representatives of a ℚ-basis of `ker(d_out) / im(d_in)`, each fully
/// reduced against the boundaries and the earlier representatives, then made
/// primitive. Deterministic for fixed inputs.
pub fn quotient_basis(d_in: &ExactMatrix, d_out: &ExactMatrix) -> Result<Vec<SparseVec>> {
    check_composable(d_in, d_out)?;
    let mut boundaries = Echelon::new();
    for col in d_in.transpose().scaled_int_rows() {
        boundaries.push(col);
    }
    let mut reps = Vec::new();
    for z in kernel_basis(d_out) {
        let (v, _) = boundaries.reduce_lead(z, SparseVec::new());
        if v.is_empty() {
            continue;
        }
        let (v, _) = boundaries.reduce_full(v, SparseVec::new());
        let v = v.primitive();
        boundaries.insert(v.clone(), SparseVec::new());
        reps.push(v);
    }
    Ok(reps)
}

fn check_composable(d_in: &ExactMatrix, d_out: &ExactMatrix) -> Result<()> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::Dimension(format!(
            "d_in is {}x{} but d_out is {}x{}",
            d_in.rows(),
            d_in.cols(),
            d_out.rows(),
            d_out.cols()
        )));
    }
    Ok(())
}

/// Cohomology at the middle of `C^{k-1} --d_in--> C^k --d_out--> C^{k+1}`.
///
/// Rejects inputs with `d_out ∘ d_in ≠ 0`.
pub fn cohomology_block(
    d_in: &ExactMatrix,
    d_out: &ExactMatrix,
    coeff: Coefficients,
) -> Result<CohomologyBlock> {
    check_composable(d_in, d_out)?;
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::NonzeroComposition(format!(
            "{}x{} after {}x{}",
            d_out.rows(),
            d_out.cols(),
            d_in.rows(),
            d_in.cols()
        )));
    }
    cohomology_block_unchecked(d_in, d_out, coeff)
}

/// As [`cohomology_block`] without the composition check.
pub fn cohomology_block_unchecked(
    d_in: &ExactMatrix,
    d_out: &ExactMatrix,
    coeff: Coefficients,
) -> Result<CohomologyBlock> {
    check_composable(d_in, d_out)?;
    let dim = d_in.rows();
    let rank_out = rank_rational(d_out);
    match coeff {
        Coefficients::Rationals => Ok(CohomologyBlock {
            free_rank: dim - rank_out - rank_rational(d_in),
            torsion: Vec::new(),
        }),
        Coefficients::Integers => {
            let snf = smith_normal_form(d_in)?;
            Ok(CohomologyBlock {
                free_rank: dim - rank_out - snf.rank,
                torsion: snf.torsion(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_maps_give_full_rank() {
        let b = cohomology_block(
            &ExactMatrix::zeros(3, 0),
            &ExactMatrix::zeros(0, 3),
            Coefficients::Integers,
        )
        .unwrap();
        assert_eq!(b.free_rank, 3);
    }

    #[test]
    fn multiplication_by_two_is_z2() {
        let b = cohomology_block(
            &ExactMatrix::from_rows(&[vec![2]]),
            &ExactMatrix::zeros(0, 1),
            Coefficients::Integers,
        )
        .unwrap();
        assert_eq!(b.free_rank, 0);
        assert_eq!(b.torsion, vec![BigInt::from(2)]);
        let q = cohomology_block(
            &ExactMatrix::from_rows(&[vec![2]]),
            &ExactMatrix::zeros(0, 1),
            Coefficients::Rationals,
        )
        .unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn nonzero_composition_rejected() {
        let d = ExactMatrix::from_rows(&[vec![1]]);
        assert!(matches!(
            cohomology_block(&d, &d, Coefficients::Rationals),
            Err(Error::NonzeroComposition(_))
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_rational(&ExactMatrix::identity(4)), 4);
        assert_eq!(rank_rational(&ExactMatrix::from_rows(&[vec![1, -1], vec![-1, 1]])), 1);
    }

    #[test]
    fn kernel_of_difference() {
        let m = ExactMatrix::from_rows(&[vec![1, -1, 0], vec![0, 1, -1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(
            k[0].entries(),
            &[(0, Int::ONE), (1, Int::ONE), (2, Int::ONE)]
        );
    }

    #[test]
    fn quotient_of_circle() {
        // C^0 = Z^2 -> C^1 = Z^2 with d = [[-1,1],[-1,1]]: H^1 = Z
        let d0 = ExactMatrix::from_rows(&[vec![-1, 1], vec![-1, 1]]);
        let d1 = ExactMatrix::zeros(0, 2);
        let reps = quotient_basis(&d0, &d1).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(!reps[0].is_empty());
    }
}
