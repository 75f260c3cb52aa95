use crate::error::{Error, Result};
use crate::matcore::Subsystem;
use crate::states::DensityMatrix;

fn xlog2x(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.log2()
    }
}

/// Binary entropy `h(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    -xlog2x(p) - xlog2x(1.0 - p)
}

/// Shannon entropy in bits. Entries down to `-1e-12` are read as zero.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    if let Some(x) = p.iter().find(|&&x| x < -1e-12 || !x.is_finite()) {
        return Err(Error::NotADistribution(format!("entry {x}")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::NotADistribution(format!("sums to {total}")));
    }
    Ok(p.iter().map(|&x| -xlog2x(x)).sum::<f64>().max(0.0))
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues().into_iter().map(|l| -xlog2x(l)).sum::<f64>().max(0.0)
}

/// `S(A) + S(B) - S(AB)`.
pub fn mutual_information(rho: &DensityMatrix) -> f64 {
    von_neumann_entropy(&rho.marginal(Subsystem::A))
        + von_neumann_entropy(&rho.marginal(Subsystem::B))
        - von_neumann_entropy(rho)
}

/// `S(A|B) = S(AB) - S(B)`.
pub fn conditional_entropy(rho: &DensityMatrix) -> f64 {
    von_neumann_entropy(rho) - von_neumann_entropy(&rho.marginal(Subsystem::B))
}
