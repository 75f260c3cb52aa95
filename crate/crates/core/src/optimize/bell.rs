//! LQU over separable Bell-diagonal states.
//!
//! Feasibility (PSD and PPT) is tested numerically on the 4×4 matrix. The
//! search runs a cube grid over `(t1, t2, t3)` and then refines the best grid
//! points in radial coordinates `(θ, φ, s)`, where `s ∈ [0, 1]` scales the
//! direction up to the feasible boundary found by bisection. Working in `s`
//! lets Nelder–Mead sit exactly on the boundary, where LQU has a square-root
//! cusp.

use std::f64::consts::PI;

use rand::Rng;

use super::{BestParams, OptimizationResult, FEASIBILITY_TOL, TIE_TOL};
use crate::error::{Error, Result};
use crate::matcore::{eigvalsh, partial_transpose, Subsystem};
use crate::measures::lqu;
use crate::nelder_mead::{self, NelderMeadOptions};
use crate::parallel::{par_map, Execution};
use crate::states::{bell_diagonal_matrix, seeded_rng, BellDiagonalParams, DensityMatrix};

/// Eigenvalue slack for a Bell-diagonal point to count as feasible.
pub const BELL_FEASIBILITY_TOL: f64 = 1e-12;

const REFINE_FROM_GRID: usize = 4;
const RANDOM_RESTARTS: usize = 4;

/// Largest violation of `ρ ≥ 0` and `ρ^{T_B} ≥ 0` (zero when both hold).
pub fn bell_diagonal_feasibility(t: &BellDiagonalParams) -> f64 {
    let m = bell_diagonal_matrix(t);
    let min_rho = eigvalsh(&m).expect("Hermitian")[0];
    let pt = partial_transpose(&m, Subsystem::B).expect("4×4");
    let min_pt = eigvalsh(&pt).expect("Hermitian")[0];
    (-min_rho).max(-min_pt).max(0.0)
}

fn feasible(t: &BellDiagonalParams) -> bool {
    bell_diagonal_feasibility(t) <= BELL_FEASIBILITY_TOL
}

fn lqu_at(t: &BellDiagonalParams) -> f64 {
    lqu(&DensityMatrix::from_trusted(bell_diagonal_matrix(t)))
}

fn direction(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

fn scaled(d: [f64; 3], r: f64) -> BellDiagonalParams {
    BellDiagonalParams::new(r * d[0], r * d[1], r * d[2])
}

/// Distance from the origin to the feasible boundary along unit `d`.
fn boundary_radius(d: [f64; 3]) -> f64 {
    // every unit direction leaves the octahedron |t|₁ <= 1 before √3
    let (mut lo, mut hi) = (0.0, 3f64.sqrt());
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        // strict test, so s = 1 lands on the inside of the boundary
        if bell_diagonal_feasibility(&scaled(d, mid)) == 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn from_radial(x: &[f64]) -> BellDiagonalParams {
    let d = direction(x[0], x[1]);
    scaled(d, x[2] * boundary_radius(d))
}

fn to_radial(t: &BellDiagonalParams) -> [f64; 3] {
    let [a, b, c] = t.as_array();
    let r = (a * a + b * b + c * c).sqrt();
    if r == 0.0 {
        return [0.5 * PI, 0.0, 0.0];
    }
    let theta = (c / r).clamp(-1.0, 1.0).acos();
    let phi = b.atan2(a);
    let rmax = boundary_radius(direction(theta, phi));
    [theta, phi, if rmax > 0.0 { (r / rmax).min(1.0) } else { 0.0 }]
}

/// Largest LQU over Bell-diagonal states that pass the numerical PSD and PPT
/// tests. `grid` is the number of points per axis of the initial cube scan.
pub fn maximize_lqu_bell_diagonal_separable(grid: usize, seed: u64) -> Result<OptimizationResult> {
    maximize_lqu_bell_diagonal_separable_with(grid, seed, Execution::available())
}

pub fn maximize_lqu_bell_diagonal_separable_with(
    grid: usize,
    seed: u64,
    exec: Execution,
) -> Result<OptimizationResult> {
    if grid < 11 {
        return Err(Error::InvalidParams(format!("grid must be at least 11, got {grid}")));
    }
    let axis: Vec<f64> = (0..grid)
        .map(|i| -1.0 + 2.0 * i as f64 / (grid - 1) as f64)
        .collect();
    let points: Vec<BellDiagonalParams> = axis
        .iter()
        .flat_map(|&a| {
            let axis = &axis;
            axis.iter()
                .flat_map(move |&b| axis.iter().map(move |&c| BellDiagonalParams::new(a, b, c)))
        })
        .collect();
    let scored = par_map(exec, points, |t| {
        if feasible(&t) {
            Some((lqu_at(&t), t))
        } else {
            None
        }
    });
    let mut ranked: Vec<(f64, BellDiagonalParams)> = scored.into_iter().flatten().collect();
    // stable sort keeps grid order among equal values
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut starts: Vec<[f64; 3]> = ranked
        .iter()
        .take(REFINE_FROM_GRID)
        .map(|(_, t)| to_radial(t))
        .collect();
    let mut rng = seeded_rng(seed);
    for _ in 0..RANDOM_RESTARTS {
        let z: f64 = rng.gen_range(-1.0..1.0);
        starts.push([z.acos(), rng.gen_range(-PI..PI), rng.gen::<f64>()]);
    }

    let opts = NelderMeadOptions {
        max_iter: 2000,
        diameter_tol: 1e-10,
        step: 0.1,
        bounds: Some(vec![(0.0, PI), (-PI, PI), (0.0, 1.0)]),
        record_trace: true,
    };
    let runs = par_map(exec, starts, |x0| {
        let r = nelder_mead::minimize(|x| -lqu_at(&from_radial(x)), &x0, &opts);
        let t = from_radial(&r.x);
        let trace: Vec<(usize, f64)> = r.trace.into_iter().map(|(k, v)| (k, -v)).collect();
        (lqu_at(&t), t, trace)
    });
    let mut best = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.0 > runs[best].0 + TIE_TOL {
            best = i;
        }
    }
    let (value, t, trace) = runs.into_iter().nth(best).expect("at least one start");
    let violation = bell_diagonal_feasibility(&t);
    Ok(OptimizationResult {
        objective: "lqu",
        best_params: BestParams::BellDiagonal(t),
        best_value: value,
        feasible: violation <= FEASIBILITY_TOL,
        max_violation: violation,
        n_starts: REFINE_FROM_GRID + RANDOM_RESTARTS,
        seed,
        best_start: best,
        active_w_entry: None,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::bell_diagonal;

    fn line_formula(t: f64) -> f64 {
        1.0 - 0.5 * (1.0 + t).sqrt() * ((1.0 + t).sqrt() + (1.0 - 3.0 * t).max(0.0).sqrt())
    }

    #[test]
    fn isotropic_line_matches_formula() {
        for i in 0..=40 {
            let t = -1.0 / 3.0 + (2.0 / 3.0) * i as f64 / 40.0;
            let rho = bell_diagonal(&BellDiagonalParams::isotropic(t)).unwrap();
            assert!((lqu(&rho) - line_formula(t)).abs() < 1e-8, "t={t}");
        }
        assert_eq!(lqu_at(&BellDiagonalParams::isotropic(0.0)), 0.0);
    }

    #[test]
    fn feasibility_examples() {
        assert_eq!(bell_diagonal_feasibility(&BellDiagonalParams::isotropic(0.0)), 0.0);
        assert!(feasible(&BellDiagonalParams::isotropic(1.0 / 3.0)));
        assert!(!feasible(&BellDiagonalParams::isotropic(0.34)));
        assert!(!feasible(&BellDiagonalParams::new(1.0, 1.0, -1.0)));
        // the octahedron vertex is separable
        assert!(feasible(&BellDiagonalParams::new(1.0, 0.0, 0.0)));
    }

    #[test]
    fn boundary_radius_along_diagonal() {
        let d = [1.0 / 3f64.sqrt(); 3];
        assert!((boundary_radius(d) - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        let e = [1.0, 0.0, 0.0];
        assert!((boundary_radius(e) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn maximum_is_one_third() {
        let r = maximize_lqu_bell_diagonal_separable(21, 5).unwrap();
        assert!(r.feasible);
        assert!((r.best_value - 1.0 / 3.0).abs() < 1e-5, "{}", r.best_value);
        let t = r.best_params.as_bell().unwrap().as_array();
        for x in t {
            assert!((x.abs() - 1.0 / 3.0).abs() < 1e-3, "{t:?}");
        }
    }

    #[test]
    fn rejects_small_grid() {
        assert!(maximize_lqu_bell_diagonal_separable(5, 0).is_err());
    }
}
