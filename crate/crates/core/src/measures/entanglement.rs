use super::entropy::binary_entropy;
use crate::matcore::{eigvalsh, kron, matrix_sqrt_psd, partial_transpose, pauli, Subsystem};
use crate::states::DensityMatrix;

fn pt_spectrum(rho: &DensityMatrix) -> Vec<f64> {
    let pt = partial_transpose(rho.matrix(), Subsystem::B).expect("two-qubit state");
    eigvalsh(&pt).expect("partial transpose is Hermitian")
}

/// `‖ρ^{T_B}‖₁ - 1`, so maximally entangled states score 1.
///
/// Evaluated as twice the negative eigenvalue weight, which is the same for
/// unit-trace input and exactly zero when no eigenvalue is negative.
pub fn negativity(rho: &DensityMatrix) -> f64 {
    2.0 * negative_eigenvalue_mass(rho)
}

/// Total weight of the negative partial-transpose eigenvalues,
/// `(‖ρ^{T_B}‖₁ - 1) / 2`; maximally entangled states score ½.
pub fn negative_eigenvalue_mass(rho: &DensityMatrix) -> f64 {
    pt_spectrum(rho).iter().map(|l| (-l).max(0.0)).sum()
}

/// Wootters concurrence from the spectrum of `√ρ ρ̃ √ρ`,
/// `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
pub fn concurrence(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let yy = kron(&pauli(2).expect("σ_y"), &pauli(2).expect("σ_y"));
    let flipped = &(&yy * &m.conj()) * &yy;
    let s = matrix_sqrt_psd(m).expect("density matrices are PSD");
    let r = (&(&s * &flipped) * &s).hermitian_part();
    let mut l: Vec<f64> = eigvalsh(&r)
        .expect("Hermitian by construction")
        .into_iter()
        .map(|x| x.max(0.0).sqrt())
        .collect();
    l.sort_by(|a, b| b.total_cmp(a));
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    binary_entropy(0.5 * (1.0 + (1.0 - c * c).sqrt()))
}

/// Entanglement of formation in bits.
pub fn eof(rho: &DensityMatrix) -> f64 {
    eof_from_concurrence(concurrence(rho))
}
