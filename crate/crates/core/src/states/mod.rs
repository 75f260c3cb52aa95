//! Two-qubit state families: X-states, Bell-diagonal states, the maximally
//! uncertain separable X-state and its mixtures, Bloch decomposition,
//! purification of rank-2 states and random separable sampling.

mod builtin;
mod io;
mod random;

pub use builtin::{builtin, FIXED_NAMES};
pub use io::{parse_state_json, to_state_json, LoadedState, LocalPhases};
pub use random::{
    random_density, random_product_state, random_qubit_state, random_qubit_unitary,
    random_separable, random_separable_with, seeded_rng, StateRng,
};

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{
    eigvalsh, hermitian_eig, kron, kron_vec, partial_trace_dims, partial_transpose, paulis,
    ComplexMatrix, Subsystem, C64, HERMITIAN_TOL, ONE, PSD_CLIP, ZERO,
};

/// Trace tolerance for accepting a density matrix.
pub const TRACE_TOL: f64 = 1e-10;
/// Normalization / positivity tolerance for X-state parameters.
pub const PARAM_TOL: f64 = 1e-12;

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Validates and wraps. Supported dimensions are 2, 4 and 8.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if ![2, 4, 8].contains(&mat.dim()) {
            return Err(Error::InvalidState(format!(
                "dimension {} is not one of 2, 4, 8",
                mat.dim()
            )));
        }
        let herm = mat.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (max |rho - rho^dagger| = {herm:e})"
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "trace is {} + {}i, expected 1",
                tr.re, tr.im
            )));
        }
        let min = eigvalsh(&mat)?[0];
        if min < -PSD_CLIP {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite (minimum eigenvalue {min:e})"
            )));
        }
        Ok(Self(mat.hermitian_part()))
    }

    /// Wraps a matrix known to be a state by construction.
    pub(crate) fn from_trusted(mat: ComplexMatrix) -> Self {
        debug_assert!(mat.is_hermitian(1e-9));
        Self(mat)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvalsh(&self.0).expect("density matrices are Hermitian")
    }

    /// Reduced state of one qubit of a two-qubit state.
    pub fn marginal(&self, keep: Subsystem) -> DensityMatrix {
        assert_eq!(self.dim(), 4, "marginal needs a two-qubit state");
        Self(partial_trace_dims(&self.0, 2, 2, keep).expect("dimension checked"))
    }

    /// Convex combination `w·self + (1-w)·other`.
    pub fn mix(&self, other: &DensityMatrix, w: f64) -> DensityMatrix {
        Self(&self.0.scale(w) + &other.0.scale(1.0 - w))
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> DensityMatrix {
        Self((&(u * &self.0) * &u.adjoint()).hermitian_part())
    }

    pub fn maximally_mixed(dim: usize) -> DensityMatrix {
        Self(ComplexMatrix::identity(dim).scale(1.0 / dim as f64))
    }

    pub fn pure(psi: &[C64]) -> Result<DensityMatrix> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let v: Vec<C64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&v))
    }
}

/// The six real parameters of a two-qubit X-state after local phase removal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XStateParams {
    pub a11: f64,
    pub a22: f64,
    pub a33: f64,
    pub a44: f64,
    pub a14: f64,
    pub a23: f64,
}

impl XStateParams {
    pub fn new(a11: f64, a22: f64, a33: f64, a44: f64, a14: f64, a23: f64) -> Result<Self> {
        let p = Self {
            a11,
            a22,
            a33,
            a44,
            a14,
            a23,
        };
        p.validate()?;
        Ok(p)
    }

    /// Checks normalization, non-negativity and positivity of both blocks.
    pub fn validate(&self) -> Result<()> {
        let all = [self.a11, self.a22, self.a33, self.a44, self.a14, self.a23];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams("non-finite parameter".into()));
        }
        if let Some(x) = all.iter().find(|&&x| x < 0.0) {
            return Err(Error::InvalidParams(format!("negative parameter {x}")));
        }
        let sum = self.a11 + self.a22 + self.a33 + self.a44;
        if (sum - 1.0).abs() > PARAM_TOL {
            return Err(Error::InvalidParams(format!(
                "diagonal sums to {sum}, expected 1"
            )));
        }
        if self.a11 * self.a44 < self.a14 * self.a14 - PARAM_TOL {
            return Err(Error::InvalidParams(
                "positivity a11*a44 >= a14^2 violated".into(),
            ));
        }
        if self.a22 * self.a33 < self.a23 * self.a23 - PARAM_TOL {
            return Err(Error::InvalidParams(
                "positivity a22*a33 >= a23^2 violated".into(),
            ));
        }
        Ok(())
    }

    /// Largest violation of the PPT inequalities `a11 a44 >= a23²` and
    /// `a22 a33 >= a14²` (zero when both hold).
    pub fn ppt_violation(&self) -> f64 {
        let v1 = self.a23 * self.a23 - self.a11 * self.a44;
        let v2 = self.a14 * self.a14 - self.a22 * self.a33;
        v1.max(v2).max(0.0)
    }

    /// Largest violation over positivity, PPT, sign and normalization.
    pub fn max_violation(&self) -> f64 {
        let pos1 = self.a14 * self.a14 - self.a11 * self.a44;
        let pos2 = self.a23 * self.a23 - self.a22 * self.a33;
        let neg = [self.a11, self.a22, self.a33, self.a44, self.a14, self.a23]
            .iter()
            .map(|&x| -x)
            .fold(0.0, f64::max);
        let norm = (self.a11 + self.a22 + self.a33 + self.a44 - 1.0).abs();
        [pos1, pos2, neg, norm, self.ppt_violation()]
            .into_iter()
            .fold(0.0, f64::max)
    }

    /// Separability of the X-state from the closed-form PPT inequalities.
    pub fn is_separable(&self) -> bool {
        self.ppt_violation() <= PARAM_TOL
    }

    /// Image under the local unitary `σ_x ⊗ σ_x`, which swaps `a11 <-> a44`
    /// and `a22 <-> a33`.
    pub fn flipped(&self) -> Self {
        Self {
            a11: self.a44,
            a22: self.a33,
            a33: self.a22,
            a44: self.a11,
            ..*self
        }
    }

    /// Representative with `a11 >= a44` under the `σ_x ⊗ σ_x` relabeling.
    pub fn canonical(&self) -> Self {
        if self.a11 < self.a44 {
            self.flipped()
        } else {
            *self
        }
    }

    /// Max absolute coordinate difference.
    pub fn distance(&self, other: &Self) -> f64 {
        [
            self.a11 - other.a11,
            self.a22 - other.a22,
            self.a33 - other.a33,
            self.a44 - other.a44,
            self.a14 - other.a14,
            self.a23 - other.a23,
        ]
        .iter()
        .map(|d| d.abs())
        .fold(0.0, f64::max)
    }

    /// Parameters of `rho_star`.
    pub fn rho_star() -> Self {
        let hi = (2.0 + SQRT_2) / 8.0;
        let lo = (2.0 - SQRT_2) / 8.0;
        let c = 1.0 / (4.0 * SQRT_2);
        Self {
            a11: hi,
            a22: hi,
            a33: lo,
            a44: lo,
            a14: c,
            a23: c,
        }
    }

    /// Reads the parameters back from an X-shaped two-qubit state.
    /// Complex coherences are reduced to their moduli, which is the local
    /// phase rotation returned alongside.
    pub fn from_state(rho: &DensityMatrix) -> Result<(Self, LocalPhases)> {
        if rho.dim() != 4 {
            return Err(Error::BadDim {
                expected: 4,
                got: rho.dim(),
            });
        }
        let m = rho.matrix();
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 && m[(i, j)].norm() > 1e-12 {
                    return Err(Error::InvalidParams(format!(
                        "entry ({i}, {j}) breaks the X pattern"
                    )));
                }
            }
        }
        let c14 = m[(0, 3)];
        let c23 = m[(1, 2)];
        let phases = LocalPhases::removing(c14, c23);
        let p = Self {
            a11: m[(0, 0)].re,
            a22: m[(1, 1)].re,
            a33: m[(2, 2)].re,
            a44: m[(3, 3)].re,
            a14: c14.norm(),
            a23: c23.norm(),
        };
        Ok((p, phases))
    }
}

/// Builds the X-state density matrix from its parameters.
pub fn x_state(params: &XStateParams) -> Result<DensityMatrix> {
    params.validate()?;
    Ok(x_state_unchecked(params))
}

pub(crate) fn x_state_unchecked(p: &XStateParams) -> DensityMatrix {
    let mut m = ComplexMatrix::zeros(4);
    m[(0, 0)] = C64::new(p.a11, 0.0);
    m[(1, 1)] = C64::new(p.a22, 0.0);
    m[(2, 2)] = C64::new(p.a33, 0.0);
    m[(3, 3)] = C64::new(p.a44, 0.0);
    m[(0, 3)] = C64::new(p.a14, 0.0);
    m[(3, 0)] = C64::new(p.a14, 0.0);
    m[(1, 2)] = C64::new(p.a23, 0.0);
    m[(2, 1)] = C64::new(p.a23, 0.0);
    DensityMatrix::from_trusted(m)
}

/// PPT test: the partial transpose on B has no eigenvalue below `-1e-10`.
pub fn is_separable(rho: &DensityMatrix) -> bool {
    min_partial_transpose_eigenvalue(rho) >= -PSD_CLIP
}

pub(crate) fn min_partial_transpose_eigenvalue(rho: &DensityMatrix) -> f64 {
    let pt = partial_transpose(rho.matrix(), Subsystem::B).expect("two-qubit state");
    eigvalsh(&pt).expect("partial transpose is Hermitian")[0]
}

/// The rank-2 separable X-state with the largest local quantum uncertainty.
pub fn rho_star() -> DensityMatrix {
    x_state_unchecked(&XStateParams::rho_star())
}

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange { name, value });
    }
    Ok(())
}

/// `ε ρ* + (1 - ε) |φ+><φ+|`.
pub fn chi_state(eps: f64) -> Result<DensityMatrix> {
    check_unit("eps", eps)?;
    Ok(rho_star().mix(&bell_state(BellKind::PhiPlus), eps))
}

/// `p ρ* + (1 - p) I/4`.
pub fn noisy_star(p: f64) -> Result<DensityMatrix> {
    check_unit("p", p)?;
    Ok(rho_star().mix(&DensityMatrix::maximally_mixed(4), p))
}

/// Werner state `p |ψ-><ψ-| + (1 - p) I/4`, i.e. Bell-diagonal with `T = -p I`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    check_unit("p", p)?;
    Ok(bell_state(BellKind::PsiMinus).mix(&DensityMatrix::maximally_mixed(4), p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [
        BellKind::PhiPlus,
        BellKind::PhiMinus,
        BellKind::PsiPlus,
        BellKind::PsiMinus,
    ];

    pub fn vector(self) -> [C64; 4] {
        let h = C64::new(1.0 / SQRT_2, 0.0);
        match self {
            BellKind::PhiPlus => [h, ZERO, ZERO, h],
            BellKind::PhiMinus => [h, ZERO, ZERO, -h],
            BellKind::PsiPlus => [ZERO, h, h, ZERO],
            BellKind::PsiMinus => [ZERO, h, -h, ZERO],
        }
    }
}

pub fn bell_state(kind: BellKind) -> DensityMatrix {
    DensityMatrix::from_trusted(ComplexMatrix::outer(&kind.vector()))
}

/// Diagonal correlation components of a Bell-diagonal state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellDiagonalParams {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
}

impl BellDiagonalParams {
    pub fn new(t1: f64, t2: f64, t3: f64) -> Self {
        Self { t1, t2, t3 }
    }

    pub fn isotropic(t: f64) -> Self {
        Self::new(t, t, t)
    }

    /// From Bell weights `p_I φ+ + p_x φ- + p_y ψ+ + p_z ψ-`.
    pub fn from_weights(p_i: f64, p_x: f64, p_y: f64, p_z: f64) -> Self {
        Self {
            t1: p_i - p_x + p_y - p_z,
            t2: -p_i + p_x + p_y - p_z,
            t3: p_i + p_x - p_y - p_z,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.t1, self.t2, self.t3]
    }
}

pub(crate) fn bell_diagonal_matrix(params: &BellDiagonalParams) -> ComplexMatrix {
    let s = paulis();
    let t = params.as_array();
    let mut m = ComplexMatrix::identity(4);
    for k in 0..3 {
        m = &m + &kron(&s[k], &s[k]).scale(t[k]);
    }
    m.scale(0.25)
}

/// `¼ (I ⊗ I + Σ t_i σ_i ⊗ σ_i)`, rejected if not positive semidefinite.
pub fn bell_diagonal(params: &BellDiagonalParams) -> Result<DensityMatrix> {
    let m = bell_diagonal_matrix(params);
    let min = eigvalsh(&m)?[0];
    if min < -PSD_CLIP {
        return Err(Error::Unphysical(min));
    }
    Ok(DensityMatrix::from_trusted(m))
}

/// Local Bloch vectors and the full correlation matrix of a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochForm {
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub t: [[f64; 3]; 3],
}

/// `x_i = tr(ρ σ_i⊗I)`, `y_i = tr(ρ I⊗σ_i)`, `T_ij = tr(ρ σ_i⊗σ_j)`.
pub fn to_bloch(rho: &DensityMatrix) -> BlochForm {
    assert_eq!(rho.dim(), 4, "Bloch form needs a two-qubit state");
    let s = paulis();
    let id = ComplexMatrix::identity(2);
    let m = rho.matrix();
    let mut out = BlochForm {
        x: [0.0; 3],
        y: [0.0; 3],
        t: [[0.0; 3]; 3],
    };
    for i in 0..3 {
        out.x[i] = m.trace_product(&kron(&s[i], &id)).re;
        out.y[i] = m.trace_product(&kron(&id, &s[i])).re;
        for j in 0..3 {
            out.t[i][j] = m.trace_product(&kron(&s[i], &s[j])).re;
        }
    }
    out
}

/// Purification of a rank ≤ 2 two-qubit state on A ⊗ B ⊗ C with a qubit
/// ancilla C. Amplitudes are indexed `4a + 2b + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Purification {
    pub amplitudes: Vec<C64>,
}

impl Purification {
    fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes)
    }

    /// `tr_C |Ψ><Ψ|`.
    pub fn reduced_ab(&self) -> DensityMatrix {
        DensityMatrix::from_trusted(
            partial_trace_dims(&self.projector(), 4, 2, Subsystem::A).expect("dim 8"),
        )
    }

    /// `tr_A |Ψ><Ψ|`.
    pub fn reduced_bc(&self) -> DensityMatrix {
        DensityMatrix::from_trusted(
            partial_trace_dims(&self.projector(), 2, 4, Subsystem::B).expect("dim 8"),
        )
    }

    /// `tr_BC |Ψ><Ψ|`.
    pub fn reduced_a(&self) -> DensityMatrix {
        DensityMatrix::from_trusted(
            partial_trace_dims(&self.projector(), 2, 4, Subsystem::A).expect("dim 8"),
        )
    }
}

/// Largest eigenvalue allowed in the third slot for a state to count as rank 2.
pub const RANK2_TOL: f64 = 1e-8;

/// `|Ψ> = Σ_k √λ_k |v_k> ⊗ |k>_C` over the two largest eigenpairs.
pub fn purify_rank2(rho: &DensityMatrix) -> Result<Purification> {
    if rho.dim() != 4 {
        return Err(Error::BadDim {
            expected: 4,
            got: rho.dim(),
        });
    }
    let eig = hermitian_eig(rho.matrix())?;
    let third = eig.eigenvalues[1];
    if third > RANK2_TOL {
        return Err(Error::RankTooHigh(third));
    }
    let mut amplitudes = vec![ZERO; 8];
    for (slot, k) in [3usize, 2].into_iter().enumerate() {
        let weight = eig.eigenvalues[k].max(0.0).sqrt();
        let mut ancilla = [ZERO; 2];
        ancilla[slot] = ONE;
        let term = kron_vec(&eig.eigenvectors.column(k), &ancilla);
        for (a, t) in amplitudes.iter_mut().zip(term) {
            *a += t * weight;
        }
    }
    Ok(Purification { amplitudes })
}
