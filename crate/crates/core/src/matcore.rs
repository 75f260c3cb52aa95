//! Dense complex matrix kernel for the small operators used throughout the
//! crate (qubit, two-qubit and three-qubit dimensions).
//!
//! Everything here is a pure function of immutable inputs. The Hermitian
//! eigensolver is a cyclic complex Jacobi iteration, which at these sizes is
//! both accurate to roundoff and free of external linear-algebra dependencies.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Tolerance used to accept a matrix as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues in `[-PSD_CLIP, 0)` are treated as roundoff and clipped to zero.
pub const PSD_CLIP: f64 = 1e-10;
/// Jacobi stops once the off-diagonal Frobenius mass drops below this.
pub const JACOBI_OFF_TOL: f64 = 1e-14;
/// Eigenvalues below this are zeroed before taking square roots, so
/// rank-deficient inputs do not pick up `√(roundoff)` ~ 1e-8 errors.
pub const SQRT_ZERO: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting wrong sizes and
    /// non-finite values.
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::BadShape {
                expected: dim * dim,
                got: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(k / dim, k % dim));
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_real(dim: usize, values: &[f64]) -> Result<Self> {
        Self::new(dim, values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_fn(n, |i, j| if i == j { C64::new(values[i], 0.0) } else { ZERO })
    }

    /// Projector `|v><v|` (not normalized).
    pub fn outer(v: &[C64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_c(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max entrywise deviation from Hermiticity.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `tr(A B)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> C64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut acc = ZERO;
        for i in 0..n {
            for k in 0..n {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    /// Forces exact Hermiticity by averaging with the adjoint.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Eigenvalues in ascending order with matching orthonormal eigenvector
/// columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V f(Λ) V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.dim();
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * v[(j, k)].conj() * fl[k])
                .sum()
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|l| l)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    let err = h.hermiticity_error();
    if err > HERMITIAN_TOL {
        return Err(Error::NonHermitianInput(err));
    }
    let n = h.dim();
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius().max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < JACOBI_OFF_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(h: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eig(h).map(|e| e.eigenvalues)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation annihilating `a[p][q]`: `A <- U† A U`, `V <- V U`
/// with `U_pp = U_qq = c`, `U_pq = s e^{iφ}`, `U_qp = -s e^{-iφ}`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g < f64::MIN_POSITIVE {
        return;
    }
    let phase = apq / g;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    if t == 0.0 {
        return;
    }
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = a.dim();
    let upq = phase * s;
    let uqp = -phase.conj() * s;

    for r in 0..n {
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        a[(r, p)] = arp * c + arq * uqp;
        a[(r, q)] = arp * upq + arq * c;
    }
    for r in 0..n {
        let apr = a[(p, r)];
        let aqr = a[(q, r)];
        a[(p, r)] = apr * c + aqr * uqp.conj();
        a[(q, r)] = apr * upq.conj() + aqr * c;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = vrp * c + vrq * uqp;
        v[(r, q)] = vrp * upq + vrq * c;
    }
}

/// Principal square root of a Hermitian PSD matrix.
pub fn matrix_sqrt_psd(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    let min = eig.eigenvalues[0];
    if min < -PSD_CLIP {
        return Err(Error::NotPsd(min));
    }
    Ok(eig.map_spectrum(|l| if l < SQRT_ZERO { 0.0 } else { l.sqrt() }))
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (m, n) = (a.dim(), b.dim());
    ComplexMatrix::from_fn(m * n, |i, j| a[(i / n, j / n)] * b[(i % n, j % n)])
}

/// Kronecker product of two state vectors.
pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// Which tensor factor of a bipartite operator to keep (or act on).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Partial trace of a two-qubit operator.
pub fn partial_trace(rho: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    if rho.dim() != 4 {
        return Err(Error::BadDim {
            expected: 4,
            got: rho.dim(),
        });
    }
    partial_trace_dims(rho, 2, 2, keep)
}

/// Partial trace of an operator on `C^{da} ⊗ C^{db}`.
pub fn partial_trace_dims(
    rho: &ComplexMatrix,
    da: usize,
    db: usize,
    keep: Subsystem,
) -> Result<ComplexMatrix> {
    if rho.dim() != da * db {
        return Err(Error::BadDim {
            expected: da * db,
            got: rho.dim(),
        });
    }
    Ok(match keep {
        Subsystem::A => ComplexMatrix::from_fn(da, |i, k| {
            (0..db).map(|j| rho[(i * db + j, k * db + j)]).sum()
        }),
        Subsystem::B => ComplexMatrix::from_fn(db, |j, l| {
            (0..da).map(|i| rho[(i * db + j, i * db + l)]).sum()
        }),
    })
}

/// Partial transpose of a two-qubit operator on the given factor.
pub fn partial_transpose(rho: &ComplexMatrix, on: Subsystem) -> Result<ComplexMatrix> {
    if rho.dim() != 4 {
        return Err(Error::BadDim {
            expected: 4,
            got: rho.dim(),
        });
    }
    Ok(ComplexMatrix::from_fn(4, |r, c| {
        let (i, j) = (r / 2, r % 2);
        let (k, l) = (c / 2, c % 2);
        match on {
            Subsystem::A => rho[(k * 2 + j, i * 2 + l)],
            Subsystem::B => rho[(i * 2 + l, k * 2 + j)],
        }
    }))
}

/// Pauli matrix `σ_1 = σ_x`, `σ_2 = σ_y`, `σ_3 = σ_z`.
pub fn pauli(index: usize) -> Result<ComplexMatrix> {
    let data = match index {
        1 => vec![ZERO, ONE, ONE, ZERO],
        2 => vec![ZERO, -I, I, ZERO],
        3 => vec![ONE, ZERO, ZERO, -ONE],
        other => return Err(Error::BadIndex(other)),
    };
    Ok(ComplexMatrix { dim: 2, data })
}

/// The three Pauli matrices in order.
pub fn paulis() -> [ComplexMatrix; 3] {
    [1, 2, 3].map(|i| pauli(i).expect("valid Pauli index"))
}

/// `n · σ` for a real 3-vector `n`.
pub fn spin_along(n: [f64; 3]) -> ComplexMatrix {
    let s = paulis();
    let mut out = ComplexMatrix::zeros(2);
    for (k, sk) in s.iter().enumerate() {
        out = &out + &sk.scale(n[k]);
    }
    out
}

/// Eigen-decomposition of a real symmetric 3×3 matrix, ascending.
pub fn symmetric_eig3(m: &[[f64; 3]; 3]) -> Result<(Vec<f64>, [[f64; 3]; 3])> {
    let flat: Vec<f64> = m.iter().flatten().copied().collect();
    let eig = hermitian_eig(&ComplexMatrix::from_real(3, &flat)?)?;
    let mut vecs = [[0.0; 3]; 3];
    for j in 0..3 {
        // Jacobi on a real input keeps eigenvectors real up to a global phase
        // per column; rotate the phase away before dropping imaginary parts.
        let col = eig.eigenvectors.column(j);
        let pivot = col
            .iter()
            .copied()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .unwrap_or(ONE);
        let ph = if pivot.norm() > 0.0 { pivot.conj() / pivot.norm() } else { ONE };
        for i in 0..3 {
            vecs[i][j] = (col[i] * ph).re;
        }
    }
    Ok((eig.eigenvalues, vecs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let m = ComplexMatrix::from_fn(n, |_, _| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        (&m + &m.adjoint()).scale(0.5)
    }

    #[test]
    fn diagonal_input_is_already_solved() {
        let eig = hermitian_eig(&ComplexMatrix::diag(&[1.0, 2.0, 3.0, 4.0])).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(eig.eigenvectors, ComplexMatrix::identity(4));
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let eig = hermitian_eig(&ComplexMatrix::diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 2.0, 3.0]);
        assert!(eig.reconstruct().max_abs_diff(&ComplexMatrix::diag(&[3.0, 1.0, 2.0])) < 1e-15);
    }

    #[test]
    fn pauli_x_spectrum() {
        let eig = hermitian_eig(&pauli(1).unwrap()).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rank_two_outer_block() {
        // {a11, a44, a14} block of the maximal-LQU separable X-state
        let s2 = 2f64.sqrt();
        let a11 = (2.0 + s2) / 8.0;
        let a44 = (2.0 - s2) / 8.0;
        let a14 = 1.0 / (4.0 * s2);
        let block = ComplexMatrix::from_real(2, &[a11, a14, a14, a44]).unwrap();
        let ev = eigvalsh(&block).unwrap();
        assert!(ev[0].abs() < 1e-15);
        assert!((ev[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(Error::NonHermitianInput(_))));
    }

    #[test]
    fn new_validates_shape_and_finiteness() {
        assert!(matches!(
            ComplexMatrix::new(2, vec![ZERO; 3]),
            Err(Error::BadShape { .. })
        ));
        let mut d = vec![ZERO; 4];
        d[3] = C64::new(f64::NAN, 0.0);
        assert_eq!(ComplexMatrix::new(2, d), Err(Error::NonFinite(1, 1)));
    }

    #[test]
    fn random_hermitian_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [2, 3, 4, 8] {
            for _ in 0..50 {
                let h = random_hermitian(&mut rng, n);
                let eig = hermitian_eig(&h).unwrap();
                assert!(eig.reconstruct().max_abs_diff(&h) < 1e-10);
                let v = &eig.eigenvectors;
                assert!((&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(n)) < 1e-10);
                let hv = &h * v;
                let vl = v * &ComplexMatrix::diag(&eig.eigenvalues);
                assert!(hv.max_abs_diff(&vl) < 1e-10);
                assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn degenerate_spectrum_gives_orthonormal_basis() {
        let mut h = ComplexMatrix::identity(4);
        h[(0, 1)] = C64::new(0.0, 1.0);
        h[(1, 0)] = C64::new(0.0, -1.0);
        let eig = hermitian_eig(&h).unwrap();
        let v = &eig.eigenvectors;
        assert!((&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
        assert!(eig.reconstruct().max_abs_diff(&h) < 1e-12);
    }

    #[test]
    fn sqrt_of_identity_and_projector() {
        let id = ComplexMatrix::identity(4);
        assert!(matrix_sqrt_psd(&id).unwrap().max_abs_diff(&id) < 1e-14);
        let v = [C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
        let p = ComplexMatrix::outer(&v);
        assert!(matrix_sqrt_psd(&p).unwrap().max_abs_diff(&p) < 1e-12);
    }

    #[test]
    fn sqrt_squares_back_on_random_psd() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let m = random_hermitian(&mut rng, 4);
            let psd = &m * &m.adjoint();
            let r = matrix_sqrt_psd(&psd).unwrap();
            assert!(r.is_hermitian(1e-12));
            assert!((&r * &r).max_abs_diff(&psd) < 1e-8);
            assert!(eigvalsh(&r).unwrap()[0] >= -1e-12);
        }
    }

    #[test]
    fn sqrt_rejects_negative_definite() {
        let m = ComplexMatrix::diag(&[1.0, -1e-3]);
        assert!(matches!(matrix_sqrt_psd(&m), Err(Error::NotPsd(_))));
        let tiny = ComplexMatrix::diag(&[1.0, -1e-12]);
        let r = matrix_sqrt_psd(&tiny).unwrap();
        assert_eq!(r[(1, 1)], ZERO);
    }

    #[test]
    fn kron_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        let z = kron(&pauli(3).unwrap(), &i2);
        assert_eq!(z, ComplexMatrix::diag(&[1.0, 1.0, -1.0, -1.0]));
        let xx = kron(&pauli(1).unwrap(), &pauli(1).unwrap());
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i + j == 3 { ONE } else { ZERO };
                assert_eq!(xx[(i, j)], expect);
            }
        }
    }

    #[test]
    fn partial_trace_examples() {
        let mut p00 = ComplexMatrix::zeros(4);
        p00[(0, 0)] = ONE;
        let a = partial_trace(&p00, Subsystem::A).unwrap();
        assert_eq!(a, ComplexMatrix::diag(&[1.0, 0.0]));

        let h = 0.5;
        let bell = ComplexMatrix::from_real(
            4,
            &[h, 0., 0., h, 0., 0., 0., 0., 0., 0., 0., 0., h, 0., 0., h],
        )
        .unwrap();
        for keep in [Subsystem::A, Subsystem::B] {
            let r = partial_trace(&bell, keep).unwrap();
            assert!(r.max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-15);
        }
        assert!(matches!(
            partial_trace(&ComplexMatrix::identity(2), Subsystem::A),
            Err(Error::BadDim { .. })
        ));
    }

    #[test]
    fn partial_trace_of_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = ComplexMatrix::from_fn(2, |_, _| C64::new(rng.gen(), rng.gen()));
            let b = ComplexMatrix::from_fn(2, |_, _| C64::new(rng.gen(), rng.gen()));
            let ab = kron(&a, &b);
            let ta = partial_trace(&ab, Subsystem::A).unwrap();
            assert!(ta.max_abs_diff(&a.scale_c(b.trace())) < 1e-14);
            let tb = partial_trace(&ab, Subsystem::B).unwrap();
            assert!(tb.max_abs_diff(&b.scale_c(a.trace())) < 1e-14);
        }
    }

    #[test]
    fn partial_transpose_is_involution_and_witnesses_bell() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = random_hermitian(&mut rng, 4);
        for on in [Subsystem::A, Subsystem::B] {
            let twice = partial_transpose(&partial_transpose(&m, on).unwrap(), on).unwrap();
            assert_eq!(twice, m);
            assert!(partial_transpose(&m, on).unwrap().is_hermitian(1e-14));
        }
        let h = 0.5;
        let bell = ComplexMatrix::from_real(
            4,
            &[h, 0., 0., h, 0., 0., 0., 0., 0., 0., 0., 0., h, 0., 0., h],
        )
        .unwrap();
        let ev = eigvalsh(&partial_transpose(&bell, Subsystem::B).unwrap()).unwrap();
        assert!((ev[0] + 0.5).abs() < 1e-14);
        // both partial transposes are full transposes of each other
        let ta = partial_transpose(&m, Subsystem::A).unwrap();
        let tb = partial_transpose(&m, Subsystem::B).unwrap();
        let tbt = ComplexMatrix::from_fn(4, |i, j| tb[(j, i)]);
        assert_eq!(ta, tbt);
    }

    #[test]
    fn pauli_algebra() {
        let [x, y, z] = paulis();
        let id = ComplexMatrix::identity(2);
        for s in [&x, &y, &z] {
            assert_eq!(s * s, id);
            assert_eq!(s.trace(), ZERO);
        }
        assert_eq!(&x * &y, z.scale_c(I));
        assert!(matches!(pauli(0), Err(Error::BadIndex(0))));
        assert!(matches!(pauli(4), Err(Error::BadIndex(4))));
    }

    #[test]
    fn symmetric_eig3_real_vectors() {
        let m = [[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 5.0]];
        let (vals, vecs) = symmetric_eig3(&m).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-14);
        assert!((vals[2] - 5.0).abs() < 1e-14);
        for j in 0..3 {
            for i in 0..3 {
                let mv: f64 = (0..3).map(|k| m[i][k] * vecs[k][j]).sum();
                assert!((mv - vals[j] * vecs[i][j]).abs() < 1e-12);
            }
        }
    }
}
