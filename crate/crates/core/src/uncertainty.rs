//! Entropic uncertainty with quantum memory.
//!
//! Alice measures `P` or `Q` on qubit A of `ρ_AB`; Bob holds B. The measured
//! uncertainty `S(P|B) + S(Q|B)` is bounded below by Berta's
//! `-2 log₂ c + S(A|B)` and by Pati's tighter `+ max(0, D_A - J_A)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{hermitian_eig, C64, kron, pauli, ComplexMatrix, Subsystem};
use crate::measures::{
    classical_correlation_ja, conditional_entropy, mutual_information, negative_eigenvalue_mass,
    von_neumann_entropy,
};
use crate::states::{chi_state, DensityMatrix};

/// Minimum eigenvalue gap for an observable to define a measurement basis.
pub const DEGENERACY_GAP: f64 = 1e-10;

/// Eigenvectors of a qubit observable, after checking the spectrum is split.
fn eigenbasis(obs: &ComplexMatrix) -> Result<[Vec<C64>; 2]> {
    if obs.dim() != 2 {
        return Err(Error::BadDim {
            expected: 2,
            got: obs.dim(),
        });
    }
    let eig = hermitian_eig(obs)?;
    let gap = eig.eigenvalues[1] - eig.eigenvalues[0];
    if gap <= DEGENERACY_GAP {
        return Err(Error::DegenerateObservable(gap));
    }
    Ok([eig.eigenvectors.column(0), eig.eigenvectors.column(1)])
}

/// Two qubit observables with non-degenerate spectra.
#[derive(Debug, Clone)]
pub struct ObservablePair {
    p: ComplexMatrix,
    q: ComplexMatrix,
}

impl ObservablePair {
    pub fn new(p: ComplexMatrix, q: ComplexMatrix) -> Result<Self> {
        eigenbasis(&p)?;
        eigenbasis(&q)?;
        Ok(Self { p, q })
    }

    /// `(σ_x, σ_z)`.
    pub fn sigma_x_z() -> Self {
        Self {
            p: pauli(1).expect("σ_x"),
            q: pauli(3).expect("σ_z"),
        }
    }

    pub fn p(&self) -> &ComplexMatrix {
        &self.p
    }

    pub fn q(&self) -> &ComplexMatrix {
        &self.q
    }
}

/// `S(ρ_PB) - S(ρ_B)` where `ρ_PB` is `ρ` after measuring `obs` on A.
pub fn measured_conditional_entropy(rho: &DensityMatrix, obs: &ComplexMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::BadDim {
            expected: 4,
            got: rho.dim(),
        });
    }
    let basis = eigenbasis(obs)?;
    let id = ComplexMatrix::identity(2);
    let mut post = ComplexMatrix::zeros(4);
    for v in &basis {
        let proj = kron(&ComplexMatrix::outer(v), &id);
        post = &post + &(&(&proj * rho.matrix()) * &proj);
    }
    let post = DensityMatrix::new(post.hermitian_part())?;
    Ok(von_neumann_entropy(&post) - von_neumann_entropy(&rho.marginal(Subsystem::B)))
}

/// `max_ij |⟨p_i|q_j⟩|` over the eigenbases.
pub fn complementarity(p: &ComplexMatrix, q: &ComplexMatrix) -> Result<f64> {
    let bp = eigenbasis(p)?;
    let bq = eigenbasis(q)?;
    let mut best: f64 = 0.0;
    for u in &bp {
        for v in &bq {
            let overlap: C64 = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
            best = best.max(overlap.norm());
        }
    }
    Ok(best.min(1.0))
}

/// `-2 log₂ c(P,Q) + S(A|B)`.
pub fn berta_bound(rho: &DensityMatrix, pair: &ObservablePair) -> f64 {
    let c = complementarity(&pair.p, &pair.q).expect("validated pair");
    -2.0 * c.log2() + conditional_entropy(rho)
}

fn pati_excess(rho: &DensityMatrix) -> f64 {
    let j = classical_correlation_ja(rho);
    let d = mutual_information(rho) - j;
    (d - j).max(0.0)
}

/// Berta's bound plus `max(0, D_A - J_A)`.
pub fn pati_bound(rho: &DensityMatrix, pair: &ObservablePair) -> f64 {
    berta_bound(rho, pair) + pati_excess(rho)
}

/// Measured uncertainty, both bounds and the gap, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub s_pb: f64,
    pub s_qb: f64,
    pub c: f64,
    pub berta_bound: f64,
    pub pati_bound: f64,
    pub gap: f64,
}

impl UncertaintyReport {
    pub fn measured_sum(&self) -> f64 {
        self.s_pb + self.s_qb
    }
}

pub fn uncertainty_gap(rho: &DensityMatrix, pair: &ObservablePair) -> Result<UncertaintyReport> {
    let s_pb = measured_conditional_entropy(rho, &pair.p)?;
    let s_qb = measured_conditional_entropy(rho, &pair.q)?;
    let c = complementarity(&pair.p, &pair.q)?;
    let berta = -2.0 * c.log2() + conditional_entropy(rho);
    let pati = berta + pati_excess(rho);
    Ok(UncertaintyReport {
        s_pb,
        s_qb,
        c,
        berta_bound: berta,
        pati_bound: pati,
        gap: s_pb + s_qb - pati,
    })
}

/// `Δ(χ(ε)) - N(χ(ε))`, with `N = (‖ρ^{T_B}‖₁ - 1)/2` the total negative
/// partial-transpose weight (the Vidal–Werner scale, where Bell states give ½).
pub fn chi_gap_minus_negativity(eps: f64) -> Result<f64> {
    let rho = chi_state(eps)?;
    let gap = uncertainty_gap(&rho, &ObservablePair::sigma_x_z())?.gap;
    Ok(gap - negative_eigenvalue_mass(&rho))
}

/// Bisection for the `ε` where the χ-family gap meets its negativity.
///
/// Requires a sign change on `[lo, hi]`; returns the midpoint of the final
/// bracket once its width is below `tol`.
pub fn chi_crossing(lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = chi_gap_minus_negativity(lo)?;
    let f_hi = chi_gap_minus_negativity(hi)?;
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::InvalidParams(format!(
            "no sign change of gap - negativity on [{lo}, {hi}]"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = chi_gap_minus_negativity(mid)?;
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::shannon_entropy;
    use crate::states::{bell_state, random_density, rho_star, seeded_rng, werner, BellKind};
    use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

    fn h(p: &[f64]) -> f64 {
        shannon_entropy(p).unwrap()
    }

    #[test]
    fn complementarity_examples() {
        let (x, z) = (pauli(1).unwrap(), pauli(3).unwrap());
        assert!((complementarity(&x, &z).unwrap() - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((complementarity(&z, &z).unwrap() - 1.0).abs() < 1e-12);
        let d = (&x + &z).scale(FRAC_1_SQRT_2);
        assert!((complementarity(&z, &d).unwrap() - (PI / 8.0).cos()).abs() < 1e-12);
    }

    #[test]
    fn degenerate_observable_rejected() {
        let id = ComplexMatrix::identity(2);
        assert!(matches!(
            complementarity(&id, &pauli(3).unwrap()),
            Err(Error::DegenerateObservable(_))
        ));
        assert!(measured_conditional_entropy(&rho_star(), &id).is_err());
        assert!(ObservablePair::new(id, pauli(1).unwrap()).is_err());
    }

    #[test]
    fn bell_measured_entropy_is_zero() {
        let bell = bell_state(BellKind::PhiPlus);
        let s = measured_conditional_entropy(&bell, &pauli(3).unwrap()).unwrap();
        assert!(s.abs() < 1e-12);
    }

    #[test]
    fn chi_closed_forms() {
        for i in 0..=10 {
            let e = i as f64 / 10.0;
            let rho = chi_state(e).unwrap();
            let (m, p) = ((2.0 - SQRT_2) * e / 8.0, (2.0 + SQRT_2) * e / 8.0);
            let s_x = h(&[m, m, (4.0 - (2.0 - SQRT_2) * e) / 8.0, (4.0 - (2.0 - SQRT_2) * e) / 8.0]) - 1.0;
            let s_z = h(&[m, p, (4.0 - (2.0 + SQRT_2) * e) / 8.0, (4.0 - (2.0 - SQRT_2) * e) / 8.0]) - 1.0;
            let got_x = measured_conditional_entropy(&rho, &pauli(1).unwrap()).unwrap();
            let got_z = measured_conditional_entropy(&rho, &pauli(3).unwrap()).unwrap();
            assert!((got_x - s_x).abs() < 1e-9, "eps={e}");
            assert!((got_z - s_z).abs() < 1e-9, "eps={e}");
        }
    }

    #[test]
    fn berta_examples() {
        let pair = ObservablePair::sigma_x_z();
        assert!(berta_bound(&bell_state(BellKind::PhiPlus), &pair).abs() < 1e-12);
        assert!((berta_bound(&DensityMatrix::maximally_mixed(4), &pair) - 2.0).abs() < 1e-12);
        let star = rho_star();
        let s_b = von_neumann_entropy(&star.marginal(Subsystem::B));
        assert!((berta_bound(&star, &pair) - (2.0 - s_b)).abs() < 1e-12);
    }

    #[test]
    fn pati_examples() {
        let pair = ObservablePair::sigma_x_z();
        let bell = bell_state(BellKind::PhiPlus);
        assert!((pati_bound(&bell, &pair) - berta_bound(&bell, &pair)).abs() < 1e-8);
        let prod = DensityMatrix::maximally_mixed(4);
        assert_eq!(pati_bound(&prod, &pair), berta_bound(&prod, &pair));
        let w = werner(0.8).unwrap();
        let j = classical_correlation_ja(&w);
        let d = mutual_information(&w) - j;
        let excess = pati_bound(&w, &pair) - berta_bound(&w, &pair);
        assert_eq!(excess > 1e-12, d > j + 1e-12);
    }

    #[test]
    fn bell_gap_is_zero() {
        let r = uncertainty_gap(&bell_state(BellKind::PhiPlus), &ObservablePair::sigma_x_z()).unwrap();
        assert!(r.gap.abs() < 1e-8);
    }

    #[test]
    fn random_states_respect_bounds() {
        let pair = ObservablePair::sigma_x_z();
        let mut rng = seeded_rng(3);
        for _ in 0..40 {
            let rho = random_density(&mut rng, 4, 4);
            let r = uncertainty_gap(&rho, &pair).unwrap();
            assert!(r.pati_bound >= r.berta_bound - 1e-12);
            assert!(r.gap >= -1e-8);
        }
    }

    #[test]
    fn crossing_near_0714() {
        let eps = chi_crossing(0.5, 0.9, 1e-4).unwrap();
        assert!((eps - 0.714).abs() < 0.01, "eps*={eps}");
        assert!(chi_crossing(0.0, 0.1, 1e-4).is_err());
    }
}
