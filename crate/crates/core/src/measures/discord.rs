//! Geometric discord, classical correlation, quantum discord and dissonance.
//!
//! Projective measurements on qubit A are parameterized by a Bloch direction
//! `n`. With `ρ = ¼(I + x·σ⊗I + I⊗y·σ + Σ T_ij σ_i⊗σ_j)` the outcome `±`
//! occurs with probability `(1 ± n·x)/2` and leaves B with Bloch vector
//! `(y ± Tᵀn)/(1 ± n·x)`, so each evaluation needs only two qubit entropies.

use serde::Serialize;

use super::entanglement::eof;
use super::entropy::{binary_entropy, mutual_information, von_neumann_entropy};
use crate::error::Result;
use crate::matcore::{symmetric_eig3, Subsystem};
use crate::nelder_mead::{self, NelderMeadOptions};
use crate::states::{purify_rank2, to_bloch, BlochForm, DensityMatrix};

/// Hilbert–Schmidt geometric discord `¼(‖x‖² + ‖T‖² - k_max)`, with `k_max`
/// the top eigenvalue of `x xᵀ + T Tᵀ`.
pub fn geometric_discord(rho: &DensityMatrix) -> f64 {
    geometric_discord_from_bloch(&to_bloch(rho))
}

pub(crate) fn geometric_discord_from_bloch(b: &BlochForm) -> f64 {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = b.x[i] * b.x[j] + (0..3).map(|k| b.t[i][k] * b.t[j][k]).sum::<f64>();
        }
    }
    let trace = m[0][0] + m[1][1] + m[2][2];
    let (vals, _) = symmetric_eig3(&m).expect("symmetric");
    (0.25 * (trace - vals[2])).max(0.0)
}

fn qubit_entropy(bloch_len: f64) -> f64 {
    binary_entropy(0.5 * (1.0 + bloch_len.min(1.0)))
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// `S(ρ_B) - Σ_± p_± S(ρ_B|±)` for the projective measurement on A along `n`.
pub fn measured_correlation(bloch: &BlochForm, n: [f64; 3]) -> f64 {
    let s_b = qubit_entropy(norm3(bloch.y));
    let nx: f64 = (0..3).map(|i| n[i] * bloch.x[i]).sum();
    let tn: [f64; 3] = std::array::from_fn(|j| (0..3).map(|i| bloch.t[i][j] * n[i]).sum());
    let mut cond = 0.0;
    for sign in [1.0, -1.0] {
        let weight = 1.0 + sign * nx;
        let p = 0.5 * weight;
        if p < 1e-14 {
            continue;
        }
        let v: [f64; 3] = std::array::from_fn(|j| (bloch.y[j] + sign * tn[j]) / weight);
        cond += p * qubit_entropy(norm3(v));
    }
    s_b - cond
}

fn direction(theta: f64, phi: f64) -> [f64; 3] {
    [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ]
}

/// Search settings for the measurement-direction optimization.
#[derive(Debug, Clone)]
pub struct MeasurementSearch {
    pub azimuth_steps: usize,
    pub polar_steps: usize,
    /// Number of best grid points refined with Nelder–Mead.
    pub refine_from: usize,
    pub diameter_tol: f64,
}

impl Default for MeasurementSearch {
    fn default() -> Self {
        Self {
            azimuth_steps: 72,
            polar_steps: 36,
            refine_from: 3,
            diameter_tol: 1e-9,
        }
    }
}

/// Classical correlation `J_A` with the default grid + refine search.
pub fn classical_correlation_ja(rho: &DensityMatrix) -> f64 {
    classical_correlation_ja_with(rho, &MeasurementSearch::default())
}

pub fn classical_correlation_ja_with(rho: &DensityMatrix, search: &MeasurementSearch) -> f64 {
    let bloch = to_bloch(rho);
    let objective = |theta: f64, phi: f64| measured_correlation(&bloch, direction(theta, phi));

    let mut grid: Vec<(f64, f64, f64)> = Vec::with_capacity(search.azimuth_steps * search.polar_steps);
    let polar_den = (search.polar_steps.max(2) - 1) as f64;
    for i in 0..search.polar_steps {
        let theta = std::f64::consts::PI * i as f64 / polar_den;
        for k in 0..search.azimuth_steps {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / search.azimuth_steps as f64;
            grid.push((objective(theta, phi), theta, phi));
        }
    }
    grid.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best = grid.first().map(|g| g.0).unwrap_or(0.0);

    let opts = NelderMeadOptions {
        diameter_tol: search.diameter_tol,
        step: std::f64::consts::PI / search.polar_steps.max(2) as f64,
        max_iter: 2000,
        ..Default::default()
    };
    for &(_, theta, phi) in grid.iter().take(search.refine_from) {
        let r = nelder_mead::minimize(|x| -objective(x[0], x[1]), &[theta, phi], &opts);
        best = best.max(-r.value);
    }
    best.max(0.0)
}

/// Quantum discord `D_A = I(A:B) - J_A`.
pub fn quantum_discord_da(rho: &DensityMatrix) -> f64 {
    mutual_information(rho) - classical_correlation_ja(rho)
}

/// Terms of the purified Koashi–Winter expression for a rank ≤ 2 state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DissonanceParts {
    pub entropy_a: f64,
    pub entropy_ab: f64,
    pub eof_bc: f64,
    pub value: f64,
}

/// `S(ρ_A) - S(ρ_AB) + E_F(ρ_BC)` through a qubit-ancilla purification.
pub fn dissonance_rank2_parts(rho: &DensityMatrix) -> Result<DissonanceParts> {
    let purification = purify_rank2(rho)?;
    let entropy_a = von_neumann_entropy(&rho.marginal(Subsystem::A));
    let entropy_ab = von_neumann_entropy(rho);
    let eof_bc = eof(&purification.reduced_bc());
    Ok(DissonanceParts {
        entropy_a,
        entropy_ab,
        eof_bc,
        value: entropy_a - entropy_ab + eof_bc,
    })
}

pub fn dissonance_rank2(rho: &DensityMatrix) -> Result<f64> {
    dissonance_rank2_parts(rho).map(|p| p.value)
}
