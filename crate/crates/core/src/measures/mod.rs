//! Scalar quantumness and correlation measures of two-qubit states.
//!
//! Local quantum uncertainty is computed from the 3×3 matrix
//! `W_ij = tr(√ρ (σ_i⊗I) √ρ (σ_j⊗I))` as `1 - λ_max(W)`. For a local
//! observable `K = (n·σ)⊗I` with unit `n` the skew information is
//! `1 - nᵀ W n`, so the minimum over directions is attained on the top
//! eigenvector of `W`.

pub(crate) mod discord;
mod entanglement;
mod entropy;
mod report;
pub(crate) mod xstate;

pub use discord::{
    classical_correlation_ja, classical_correlation_ja_with, dissonance_rank2,
    dissonance_rank2_parts, geometric_discord, measured_correlation, quantum_discord_da,
    DissonanceParts, MeasurementSearch,
};
pub use entanglement::{concurrence, eof, eof_from_concurrence, negative_eigenvalue_mass, negativity};
pub use entropy::{
    binary_entropy, conditional_entropy, mutual_information, shannon_entropy,
    von_neumann_entropy,
};
pub use report::{measure_report, MeasureReport, ReportTolerances};
pub use xstate::{lqu_xstate_closed_form, xstate_sqrt_alphas, xstate_w_diagonal, XStateW};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{
    kron, matrix_sqrt_psd, paulis, spin_along, symmetric_eig3, ComplexMatrix, HERMITIAN_TOL,
};
use crate::states::DensityMatrix;

/// Eigenvalues of `W` within this distance of the largest one are treated
/// as degenerate when choosing the optimal observable.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Wigner–Yanase skew information `-½ tr([√ρ, K]²)`.
pub fn skew_information(rho: &DensityMatrix, k: &ComplexMatrix) -> Result<f64> {
    if rho.dim() != k.dim() {
        return Err(Error::DimMismatch(rho.dim(), k.dim()));
    }
    let herm = k.hermiticity_error();
    if herm > HERMITIAN_TOL {
        return Err(Error::NonHermitianInput(herm));
    }
    let s = matrix_sqrt_psd(rho.matrix())?;
    let c = s.commutator(k);
    Ok(-0.5 * c.trace_product(&c).re)
}

/// `(n·σ) ⊗ I`.
pub fn local_observable(n: [f64; 3]) -> ComplexMatrix {
    kron(&spin_along(n), &ComplexMatrix::identity(2))
}

/// The real symmetric 3×3 matrix whose top eigenvalue fixes the LQU.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WMatrix {
    pub w: [[f64; 3]; 3],
}

impl WMatrix {
    pub fn eigen(&self) -> (Vec<f64>, [[f64; 3]; 3]) {
        symmetric_eig3(&self.w).expect("W is symmetric")
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigen().0[2]
    }

    pub fn diagonal(&self) -> [f64; 3] {
        [self.w[0][0], self.w[1][1], self.w[2][2]]
    }

    pub fn max_off_diagonal(&self) -> f64 {
        let w = &self.w;
        [w[0][1], w[0][2], w[1][2]]
            .iter()
            .map(|x| x.abs())
            .fold(0.0, f64::max)
    }

    /// `nᵀ W n`.
    pub fn quadratic_form(&self, n: [f64; 3]) -> f64 {
        let mut acc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                acc += n[i] * self.w[i][j] * n[j];
            }
        }
        acc
    }
}

pub fn w_matrix(rho: &DensityMatrix) -> WMatrix {
    assert_eq!(rho.dim(), 4, "W matrix needs a two-qubit state");
    let s = matrix_sqrt_psd(rho.matrix()).expect("density matrices are PSD");
    let id = ComplexMatrix::identity(2);
    let sigma: Vec<ComplexMatrix> = paulis().iter().map(|p| kron(p, &id)).collect();
    let half: Vec<ComplexMatrix> = sigma.iter().map(|k| &s * k).collect();
    let mut w = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let v = half[i].trace_product(&half[j]).re;
            w[i][j] = v;
            w[j][i] = v;
        }
    }
    WMatrix { w }
}

/// Local quantum uncertainty with respect to measurements on qubit A.
pub fn lqu(rho: &DensityMatrix) -> f64 {
    1.0 - w_matrix(rho).max_eigenvalue()
}

/// Unit Bloch direction `n` of the local observable `(n·σ)⊗I` achieving the
/// LQU. Within a degenerate top eigenspace of `W` the result is the
/// normalized projection of the first of `e3, e1, e2` with a non-negligible
/// component, with the first nonzero coordinate made positive.
pub fn optimal_local_observable(rho: &DensityMatrix) -> [f64; 3] {
    let (vals, vecs) = w_matrix(rho).eigen();
    let top = vals[2];
    let cols: Vec<[f64; 3]> = (0..3)
        .filter(|&k| top - vals[k] <= DEGENERACY_TOL)
        .map(|k| [vecs[0][k], vecs[1][k], vecs[2][k]])
        .collect();
    for axis in [2usize, 0, 1] {
        let mut p = [0.0; 3];
        for v in &cols {
            for i in 0..3 {
                p[i] += v[axis] * v[i];
            }
        }
        let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            let mut n = p.map(|x| x / norm);
            if let Some(first) = n.iter().copied().find(|x| x.abs() > 1e-12) {
                if first < 0.0 {
                    n = n.map(|x| -x);
                }
            }
            return n;
        }
    }
    unreachable!("a nonempty eigenspace has a nonzero projection of some axis")
}

/// Squared Hellinger distance `½ tr((√ρ - √(KρK))²)` for `K = (n·σ)⊗I`.
pub fn hellinger_check(rho: &DensityMatrix, n: [f64; 3]) -> Result<f64> {
    let norm = n.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParams(format!(
            "observable direction must be a unit vector (|n| = {norm})"
        )));
    }
    let k = local_observable(n);
    let moved = rho.conjugate_by(&k);
    let a = matrix_sqrt_psd(rho.matrix())?;
    let b = matrix_sqrt_psd(moved.matrix())?;
    let d = &a - &b;
    Ok(0.5 * d.trace_product(&d).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{C64, ONE, ZERO};
    use crate::states::{
        bell_diagonal, bell_state, rho_star, werner, BellDiagonalParams, BellKind,
    };

    fn ket00() -> DensityMatrix {
        DensityMatrix::pure(&[ONE, ZERO, ZERO, ZERO]).unwrap()
    }

    #[test]
    fn skew_information_examples() {
        let z = local_observable([0.0, 0.0, 1.0]);
        assert!(skew_information(&ket00(), &z).unwrap().abs() < 1e-14);
        let bell = bell_state(BellKind::PhiPlus);
        assert!((skew_information(&bell, &z).unwrap() - 1.0).abs() < 1e-12);
        let mixed = DensityMatrix::maximally_mixed(4);
        let k = local_observable([0.6, 0.0, 0.8]);
        assert!(skew_information(&mixed, &k).unwrap().abs() < 1e-14);
    }

    #[test]
    fn skew_information_errors() {
        let mixed = DensityMatrix::maximally_mixed(4);
        assert!(matches!(
            skew_information(&mixed, &ComplexMatrix::identity(2)),
            Err(Error::DimMismatch(4, 2))
        ));
        let mut k = ComplexMatrix::identity(4);
        k[(0, 1)] = C64::new(1.0, 0.0);
        assert!(matches!(
            skew_information(&mixed, &k),
            Err(Error::NonHermitianInput(_))
        ));
    }

    #[test]
    fn w_of_maximally_mixed_is_identity() {
        let w = w_matrix(&DensityMatrix::maximally_mixed(4));
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((w.w[i][j] - e).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn bell_states_have_unit_lqu() {
        for kind in BellKind::ALL {
            let rho = bell_state(kind);
            assert!(w_matrix(&rho).max_eigenvalue().abs() < 1e-8);
            assert!((lqu(&rho) - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn rho_star_w_and_lqu() {
        let w = w_matrix(&rho_star());
        let d = w.diagonal();
        assert!((d[0] - 0.5).abs() < 1e-8 && (d[2] - 0.5).abs() < 1e-8);
        assert!(d[1].abs() < 1e-7);
        assert!(w.max_off_diagonal() < 1e-8);
        assert!((lqu(&rho_star()) - 0.5).abs() < 1e-8);
    }

    #[test]
    fn singlet_has_unit_lqu() {
        assert!((lqu(&werner(1.0).unwrap()) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn product_state_has_zero_lqu() {
        assert!(lqu(&ket00()).abs() < 1e-12);
        let mixed = DensityMatrix::maximally_mixed(4);
        assert!(lqu(&mixed).abs() < 1e-12);
    }

    #[test]
    fn optimal_observable_examples() {
        let n = optimal_local_observable(&ket00());
        assert_eq!(n, [0.0, 0.0, 1.0]);
        let k = local_observable(n);
        assert!(skew_information(&ket00(), &k).unwrap().abs() < 1e-12);

        let n = optimal_local_observable(&bell_state(BellKind::PhiPlus));
        assert!((n[2] - 1.0).abs() < 1e-12);

        let star = rho_star();
        let n = optimal_local_observable(&star);
        assert!((n[2] - 1.0).abs() < 1e-6, "{n:?}");
        let si = skew_information(&star, &local_observable(n)).unwrap();
        assert!((si - lqu(&star)).abs() < 1e-8);
    }

    #[test]
    fn optimal_observable_attains_lqu_generically() {
        let t = BellDiagonalParams::new(0.1, -0.3, 0.2);
        let rho = bell_diagonal(&t).unwrap();
        let n = optimal_local_observable(&rho);
        let si = skew_information(&rho, &local_observable(n)).unwrap();
        assert!((si - lqu(&rho)).abs() < 1e-8);
    }

    #[test]
    fn hellinger_examples() {
        let mixed = DensityMatrix::maximally_mixed(4);
        assert!(hellinger_check(&mixed, [1.0, 0.0, 0.0]).unwrap().abs() < 1e-14);
        let bell = bell_state(BellKind::PhiPlus);
        assert!((hellinger_check(&bell, [0.0, 0.0, 1.0]).unwrap() - 1.0).abs() < 1e-9);
        let star = rho_star();
        let n = optimal_local_observable(&star);
        assert!((hellinger_check(&star, n).unwrap() - 0.5).abs() < 1e-8);
        assert!(hellinger_check(&star, [1.0, 1.0, 0.0]).is_err());
    }
}
