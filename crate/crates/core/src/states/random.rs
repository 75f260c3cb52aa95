//! Seeded random states.
//!
//! The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`, so a
//! given seed produces the same stream on every platform. Qubit pure states
//! take two independent standard normals per complex amplitude and are then
//! normalized (Haar-distributed on the Bloch sphere). Mixture weights are
//! normalized unit exponentials, i.e. a flat Dirichlet draw on the simplex.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::matcore::{kron_vec, ComplexMatrix, C64};

pub type StateRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> StateRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_qubit_state<R: Rng + ?Sized>(rng: &mut R) -> [C64; 2] {
    loop {
        let v = [normal_c64(rng), normal_c64(rng)];
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        if n > 1e-12 {
            return [v[0] / n, v[1] / n];
        }
    }
}

/// `|a><a| ⊗ |b><b|` for independent random qubit states.
pub fn random_product_state<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let a = random_qubit_state(rng);
    let b = random_qubit_state(rng);
    DensityMatrix::from_trusted(ComplexMatrix::outer(&kron_vec(&a, &b)))
}

/// Convex mixture of `k` random product states with flat-simplex weights.
pub fn random_separable_with<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Result<DensityMatrix> {
    if k == 0 {
        return Err(Error::InvalidParams("mixture size must be at least 1".into()));
    }
    let weights: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = weights.iter().sum();
    let mut acc = ComplexMatrix::zeros(4);
    for w in weights {
        let term = random_product_state(rng);
        acc = &acc + &term.matrix().scale(w / total);
    }
    Ok(DensityMatrix::from_trusted(acc))
}

pub fn random_separable(seed: u64, k: usize) -> Result<DensityMatrix> {
    random_separable_with(&mut seeded_rng(seed), k)
}

/// Ginibre-ensemble state `G G† / tr(G G†)` with `G` of shape `dim × rank`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> DensityMatrix {
    assert!(rank >= 1 && rank <= dim);
    let g: Vec<C64> = (0..dim * rank).map(|_| normal_c64(rng)).collect();
    let m = ComplexMatrix::from_fn(dim, |i, j| {
        (0..rank).map(|k| g[i * rank + k] * g[j * rank + k].conj()).sum()
    });
    let tr = m.trace().re;
    DensityMatrix::from_trusted(m.scale(1.0 / tr).hermitian_part())
}

/// Haar-random element of SU(2) from a uniformly random unit quaternion.
pub fn random_qubit_unitary<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    let mut q = [0.0f64; 4];
    loop {
        for x in q.iter_mut() {
            *x = rng.sample(StandardNormal);
        }
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            q.iter_mut().for_each(|x| *x /= n);
            break;
        }
    }
    let [a, b, c, d] = q;
    ComplexMatrix::new(
        2,
        vec![
            C64::new(a, b),
            C64::new(c, d),
            C64::new(-c, d),
            C64::new(a, -b),
        ],
    )
    .expect("finite entries")
}
