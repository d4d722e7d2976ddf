//! Cauchy-type integral representations on the unit polydisc.
//!
//! For a class in `F^n H^s` with `q = s − n`, pick a cocycle `ω` of bidegree
//! `(n, q)` and a cycle `Γ` of type `(n, q)` with `⟨ω, Γ^q⟩ ≠ 0`, where `Γ^q`
//! is the top piece of the resolvent. Every value of `ω` is a multiple of
//! `dz_{[n]}/z_{[n]}` and every atom of `Γ^q` is the torus `S¹_{[n]}`, so for
//! `f` holomorphic near the closed polydisc and `ζ` inside it
//!
//! `f(ζ) = c · Σ_α B_α C'_α ∫_{S¹_{[n]}} f(z) Π dz_j / (z_j − ζ_j)`
//!
//! with `c = ⟨ω, Γ^q⟩^{-1}`. The cycle stays put and only the kernel is
//! shifted by `ζ`, which is harmless since `Γ − ζ` and `Γ` are homologous.

mod poly;
mod quadrature;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cech::{CechComplex, CechNerve, LogCochain};
use crate::cellular::{homology_cells, CellChain, CellIndex};
use crate::complex::{FaceSet, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::Coefficients;
use crate::resolvent::{build_resolvent, pair, PairingScalar, UChain};

pub use poly::{parse_complex_literal, parse_point, PolyFunction};
pub use quadrature::{cauchy_sum, pairwise_sum, torus_quadrature, QuadratureSpec};

/// Everything needed to evaluate the representation formula.
#[derive(Clone, Debug)]
pub struct KernelData {
    pub n: usize,
    pub s: usize,
    /// Representative of bidegree `(n, s − n)`, integer coefficients.
    pub cocycle: LogCochain,
    /// The cycle whose resolvent supplies the top piece.
    pub cycle: CellChain,
    /// `Γ^{s−n}`: tori `S¹_{[n]}` only.
    pub top_piece: UChain,
    /// `⟨cocycle, top_piece⟩`.
    pub raw: PairingScalar,
    /// `raw^{-1}`, so that `⟨scale · cocycle, top_piece⟩ = 1`.
    pub scale: PairingScalar,
    /// Which basis cocycle and cycle were used.
    pub cocycle_index: usize,
    pub cycle_index: usize,
}

impl KernelData {
    /// `Σ_α B_α C'_α`: the exact weight multiplying the single torus
    /// integral, before scaling.
    pub fn weight(&self) -> BigRational {
        let full = FaceSet::full(self.n);
        let torus = CellIndex::torus(full);
        self.top_piece
            .values()
            .map(|(alpha, chain)| {
                self.cocycle.value(alpha).coefficient(full)
                    * BigRational::from_integer(chain.coefficient(&torus))
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// `scale · weight · (2πi)^n`. Exactly one by construction; the factor
    /// that multiplies the normalized quadrature `N^{-n} Σ f(z) Π z_j/(z_j−ζ_j)`.
    pub fn normalization(&self) -> PairingScalar {
        self.scale
            .mul(&PairingScalar::new(self.weight(), self.n as i32))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "s": self.s,
            "cocycle": self.cocycle.to_json(),
            "top_piece": self.top_piece.to_json(),
            "scale": self.scale.to_json(),
        })
    }
}

/// Builds kernel data for `F^n H^s`.
pub fn build_kernel(k: &SimplicialComplex, s: usize) -> Result<KernelData> {
    let n = k.n();
    let row = |k: &SimplicialComplex| -> Result<String> {
        let t = crate::cech::cohomology_cech(k)?;
        let parts: Vec<String> = (0..=n.min(s))
            .filter(|&p| s - p <= p)
            .map(|p| format!("h^({p},{}) = {}", s - p, t.rank(p, s - p)))
            .collect();
        Ok(if parts.is_empty() {
            format!("H^{s} = 0")
        } else {
            parts.join(", ")
        })
    };
    if s < n || s - n > n {
        return Err(Error::NoKernel(format!(
            "F^{n} H^{s} = 0 for degree reasons ({})",
            row(k)?
        )));
    }
    let q = s - n;
    let cocycles = CechComplex::new(k, CechNerve::Flags)?.cocycles(n, q)?;
    if cocycles.is_empty() {
        return Err(Error::NoKernel(format!("F^{n} H^{s} = 0 ({})", row(k)?)));
    }
    let homology = homology_cells(k, Coefficients::Rationals)?;
    let cycles = homology.cycles(n, q);
    for (b, w) in cocycles.iter().enumerate() {
        for (a, z) in cycles.iter().enumerate() {
            let r = build_resolvent(k, z)?;
            let top = r.top().clone();
            let raw = pair(w, &top)?;
            if raw.is_zero() {
                continue;
            }
            return Ok(KernelData {
                n,
                s,
                cocycle: w.clone(),
                cycle: z.clone(),
                top_piece: top,
                scale: raw.recip()?,
                raw,
                cocycle_index: b,
                cycle_index: a,
            });
        }
    }
    Err(Error::NoKernel(format!(
        "no cocycle of bidegree ({n},{q}) pairs nontrivially with a cycle"
    )))
}

fn check_point(kernel: &KernelData, zeta: &[Complex64]) -> Result<()> {
    if zeta.len() != kernel.n {
        return Err(Error::Precondition(format!(
            "zeta has {} coordinates, expected {}",
            zeta.len(),
            kernel.n
        )));
    }
    if let Some((j, z)) = zeta.iter().enumerate().find(|(_, z)| !(z.norm() < 1.0)) {
        return Err(Error::Precondition(format!(
            "|zeta_{}| = {} is not inside the unit disc; the kernel has a pole on the torus",
            j + 1,
            z.norm()
        )));
    }
    Ok(())
}

fn normalization_f64(kernel: &KernelData) -> Result<f64> {
    let c = kernel.normalization();
    if c.tau_power() != 0 {
        return Err(Error::Precondition(format!(
            "normalization {c} still carries powers of 2πi"
        )));
    }
    c.coeff()
        .to_f64()
        .ok_or_else(|| Error::Precondition("normalization is not representable".into()))
}

/// `⟨Γ^{s−n}, f · ω(z − ζ)⟩` by the trapezoid rule on `N` nodes per circle.
///
/// Each monomial `z^a` separates into one-variable Cauchy sums, so the cost
/// is `O(terms · n · N)` rather than `O(N^n)`.
pub fn evaluate_representation(
    kernel: &KernelData,
    f: &PolyFunction,
    zeta: &[Complex64],
    spec: QuadratureSpec,
) -> Result<Complex64> {
    check_point(kernel, zeta)?;
    if f.n() != kernel.n {
        return Err(Error::Precondition(format!(
            "f has {} variables, expected {}",
            f.n(),
            kernel.n
        )));
    }
    let c = normalization_f64(kernel)?;
    let circle = spec.circle();
    let q: Complex64 = f
        .terms()
        .map(|(a, coef)| {
            a.iter()
                .zip(zeta)
                .fold(*coef, |acc, (&m, &z)| acc * cauchy_sum(m, z, &circle))
        })
        .sum();
    Ok(q * c)
}

/// Same value as [`evaluate_representation`] from the full tensor grid.
pub fn evaluate_on_grid(
    kernel: &KernelData,
    f: &PolyFunction,
    zeta: &[Complex64],
    spec: QuadratureSpec,
) -> Result<Complex64> {
    check_point(kernel, zeta)?;
    let c = normalization_f64(kernel)?;
    let g = |z: &[Complex64]| {
        z.iter()
            .zip(zeta)
            .fold(f.eval(z), |acc, (zj, w)| acc / (zj - w))
    };
    Ok(torus_quadrature(g, FaceSet::full(kernel.n), kernel.n, spec) * c)
}

/// The shifted kernel integrated against the top piece, divided by
/// `(2πi)^n`: should be one for every interior `ζ`.
pub fn shifted_period(kernel: &KernelData, zeta: &[Complex64], spec: QuadratureSpec) -> Result<Complex64> {
    evaluate_representation(kernel, &PolyFunction::constant(kernel.n, Complex64::new(1.0, 0.0)), zeta, spec)
}

/// One line of a validation report.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationRecord {
    pub zeta: Vec<[f64; 2]>,
    pub expected: [f64; 2],
    pub computed: [f64; 2],
    pub abs_error: f64,
    #[serde(rename = "N")]
    pub nodes: usize,
}

/// Evaluates the representation of `f` at `ζ` and compares with `f(ζ)`.
pub fn validate(
    kernel: &KernelData,
    f: &PolyFunction,
    zeta: &[Complex64],
    spec: QuadratureSpec,
) -> Result<ValidationRecord> {
    let computed = evaluate_representation(kernel, f, zeta, spec)?;
    let expected = f.eval(zeta);
    Ok(ValidationRecord {
        zeta: zeta.iter().map(|z| [z.re, z.im]).collect(),
        expected: [expected.re, expected.im],
        computed: [computed.re, computed.im],
        abs_error: (computed - expected).norm(),
        nodes: spec.nodes(),
    })
}
