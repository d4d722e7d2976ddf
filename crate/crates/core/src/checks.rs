//! Consistency checks run over a complex: `d² = 0` in each model, `φ`
//! commuting with the differentials, agreement of the three models,
//! resolvent identities, pairing duality and the two Hodge computations.
//!
//! Every check returns `Ok(())` or a description of the first failure.

use std::collections::BTreeMap;

use crate::cech::{filtration_by_rank, hodge_table, CechComplex, CechNerve, LogCochain};
use crate::cellular::{boundary_matrix, cohomology_cells, homology_cells, phi};
use crate::complex::{FaceSet, SimplicialComplex};
use crate::error::Result;
use crate::linalg::{Coefficients, ExactMatrix};
use crate::resolvent::{build_resolvent, pair_resolvent, GramMatrix, Resolvent};
use crate::rk::{apply_differential, basis, cohomology_rk_with, differential_blocks, FaultInjection, RkElement};
use crate::table::BigradedTable;

pub type Check = std::result::Result<(), String>;

fn composes_to_zero(after: &ExactMatrix, before: &ExactMatrix, what: &str) -> Check {
    let prod = after.mul(before).map_err(|e| format!("{what}: {e}"))?;
    if prod.is_zero() {
        Ok(())
    } else {
        Err(format!("{what}: composite has {} nonzero entries", prod.nnz()))
    }
}

/// `δ_R ∘ δ_R = 0` on every stripe.
pub fn rk_square_zero(k: &SimplicialComplex, fault: FaultInjection) -> Check {
    let blocks = differential_blocks(k, fault);
    for p in 0..=k.n() {
        for q in 0..p {
            composes_to_zero(&blocks[&(p, q + 1)], &blocks[&(p, q)], &format!("δ_R at ({p},{q})"))?;
        }
    }
    Ok(())
}

/// `∂ ∘ ∂ = 0` on every stripe.
pub fn cell_square_zero(k: &SimplicialComplex) -> Check {
    for p in 0..=k.n() {
        for q in 2..=p {
            composes_to_zero(
                &boundary_matrix(k, p, q - 1),
                &boundary_matrix(k, p, q),
                &format!("∂ at ({p},{q})"),
            )?;
        }
    }
    Ok(())
}

/// `δ ∘ δ = 0` on every block `C^t_I` of the log-Čech complex.
pub fn cech_square_zero(k: &SimplicialComplex, nerve: CechNerve) -> Check {
    let c = CechComplex::new(k, nerve).map_err(|e| e.to_string())?;
    let top = c.nerve().max_degree();
    for i in FaceSet::full(k.n()).subsets() {
        for t in 0..top {
            composes_to_zero(&c.block(i, t + 1), &c.block(i, t), &format!("δ_Čech at I={i}, t={t}"))?;
        }
    }
    Ok(())
}

/// `φ(δ_R b) = δ_cell φ(b)` for every basis element `b` of `R_K`.
pub fn phi_commutes(k: &SimplicialComplex) -> Check {
    for p in 0..=k.n() {
        for q in 0..=p {
            for b in basis(k, p, q) {
                let lhs = phi(&apply_differential(k, &b));
                let rhs = phi(&RkElement::monomial(b.gamma, b.sigma)).coboundary(k);
                if lhs != rhs {
                    return Err(format!("φδ ≠ δφ on {b}: {lhs} vs {rhs}"));
                }
            }
        }
    }
    Ok(())
}

/// Tables computed by each model.
#[derive(Clone, Debug)]
pub struct ModelTables {
    pub rk_q: BigradedTable,
    pub cell_q: BigradedTable,
    pub cech_q: BigradedTable,
    pub rk_z: BigradedTable,
    pub cell_z: BigradedTable,
}

impl ModelTables {
    pub fn compute(k: &SimplicialComplex, fault: FaultInjection) -> Result<Self> {
        Ok(ModelTables {
            rk_q: cohomology_rk_with(k, Coefficients::Rationals, fault)?,
            cell_q: cohomology_cells(k, Coefficients::Rationals)?,
            cech_q: CechComplex::new(k, CechNerve::Flags)?.cohomology(),
            rk_z: cohomology_rk_with(k, Coefficients::Integers, fault)?,
            cell_z: cohomology_cells(k, Coefficients::Integers)?,
        })
    }

    /// Human-readable differences; empty when all models agree.
    pub fn disagreements(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, other) in [("cell", &self.cell_q), ("cech", &self.cech_q)] {
            out.extend(self.rk_q.diff(other).into_iter().map(|d| format!("Q rk vs {name}: {d}")));
        }
        out.extend(self.rk_z.diff(&self.cell_z).into_iter().map(|d| format!("Z rk vs cell: {d}")));
        out
    }
}

/// Three-model agreement over ℚ and rk/cell agreement over ℤ.
pub fn models_agree(k: &SimplicialComplex) -> Check {
    models_agree_with(k, FaultInjection::None)
}

pub fn models_agree_with(k: &SimplicialComplex, fault: FaultInjection) -> Check {
    let tables = ModelTables::compute(k, fault).map_err(|e| e.to_string())?;
    let diffs = tables.disagreements();
    if diffs.is_empty() {
        Ok(())
    } else {
        Err(diffs.join("; "))
    }
}

/// Resolvents of a ℚ-basis of every `H_{p,q}`.
pub fn all_resolvents(k: &SimplicialComplex) -> Result<BTreeMap<(usize, usize), Vec<Resolvent>>> {
    let h = homology_cells(k, Coefficients::Rationals)?;
    let mut out = BTreeMap::new();
    for (key, cycles) in &h.cycles {
        let rs = cycles
            .iter()
            .map(|z| build_resolvent(k, z))
            .collect::<Result<Vec<_>>>()?;
        out.insert(*key, rs);
    }
    Ok(out)
}

/// Builds the resolvent of every homology generator; construction already
/// verifies `ε'Γ⁰ = Γ`, `∂Γ^k = −δ'Γ^{k+1}` and the support condition.
/// Returns the number of generators.
pub fn resolvent_identities(k: &SimplicialComplex) -> std::result::Result<usize, String> {
    all_resolvents(k)
        .map(|m| m.values().map(Vec::len).sum())
        .map_err(|e| e.to_string())
}

/// Every Gram matrix between cocycle bases and resolvents of cycle bases
/// of equal total degree.
pub fn gram_matrices(k: &SimplicialComplex) -> Result<Vec<GramMatrix>> {
    let cech = CechComplex::new(k, CechNerve::Flags)?;
    let resolvents = all_resolvents(k)?;
    let mut cocycles: BTreeMap<(usize, usize), Vec<LogCochain>> = BTreeMap::new();
    for p in 0..=k.n() {
        for q in 0..=p {
            let w = cech.cocycles(p, q)?;
            if !w.is_empty() {
                cocycles.insert((p, q), w);
            }
        }
    }
    let mut keys: Vec<(usize, usize)> = cocycles.keys().chain(resolvents.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    let mut out = Vec::new();
    for &a in &keys {
        for &b in keys.iter().filter(|b| b.0 + b.1 == a.0 + a.1) {
            let ws = cocycles.get(&a).map_or(&[][..], Vec::as_slice);
            let rs = resolvents.get(&b).map_or(&[][..], Vec::as_slice);
            let entries = ws
                .iter()
                .map(|w| rs.iter().map(|r| pair_resolvent(w, r)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            out.push(GramMatrix {
                cocycle_bidegree: a,
                cycle_bidegree: b,
                entries,
            });
        }
    }
    Ok(out)
}

/// Mixed bidegrees pair to zero; equal bidegrees give invertible Gram
/// matrices.
pub fn pairing_duality(k: &SimplicialComplex) -> Check {
    for g in gram_matrices(k).map_err(|e| e.to_string())? {
        if g.cocycle_bidegree != g.cycle_bidegree {
            if !g.is_zero() {
                return Err(format!(
                    "cocycles of bidegree {:?} pair nontrivially with cycles of type {:?}",
                    g.cocycle_bidegree, g.cycle_bidegree
                ));
            }
        } else if !g.is_invertible() {
            return Err(format!("Gram matrix in bidegree {:?} is singular", g.cocycle_bidegree));
        }
    }
    Ok(())
}

/// `F(k, s)` from the `h`-table equals the rank computation on the truncated
/// total log complex.
pub fn hodge_two_ways(k: &SimplicialComplex) -> Check {
    let h = hodge_table(k).map_err(|e| e.to_string())?;
    let by_rank = filtration_by_rank(k, CechNerve::Flags).map_err(|e| e.to_string())?;
    for (&(kk, s), &r) in &by_rank {
        let f = h.filtration(kk, s);
        if f != r {
            return Err(format!("F({kk},{s}): {f} from h-table, {r} from ranks"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_on_circle() {
        let k = SimplicialComplex::simplex_boundary(2).unwrap();
        assert_eq!(rk_square_zero(&k, FaultInjection::None), Ok(()));
        assert_eq!(cell_square_zero(&k), Ok(()));
        assert_eq!(cech_square_zero(&k, CechNerve::Flags), Ok(()));
        assert_eq!(cech_square_zero(&k, CechNerve::Full), Ok(()));
        assert_eq!(phi_commutes(&k), Ok(()));
        assert_eq!(models_agree(&k), Ok(()));
        assert_eq!(resolvent_identities(&k), Ok(2));
        assert_eq!(pairing_duality(&k), Ok(()));
        assert_eq!(hodge_two_ways(&k), Ok(()));
    }

    #[test]
    fn fault_is_detected() {
        let k = SimplicialComplex::simplex(2).unwrap();
        assert!(rk_square_zero(&k, FaultInjection::FlipFirstSign).is_err());
    }
}
