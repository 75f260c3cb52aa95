//! Constrained maximization over separable two-qubit families.
//!
//! Separable X-states are searched in feasible-by-construction coordinates
//! `(z1, z2, z3, z4, f1, f2) ∈ [0, 1]⁶`: the diagonal is `z / Σz` and each
//! coherence is `f · min(√(a11 a44), √(a22 a33))`, which satisfies positivity
//! and the PPT inequalities at once. Coherences are taken non-negative; their
//! phases are local unitaries and change none of the measures here.

mod bell;
mod probe;
mod sweep;

pub use bell::{bell_diagonal_feasibility, maximize_lqu_bell_diagonal_separable, BELL_FEASIBILITY_TOL};
pub use probe::{conjecture_probe, conjecture_probe_with, ProbeSummary};
pub use sweep::{
    chi_sweep, chi_sweep_with, noisy_sweep, noisy_sweep_with, region_sweep, SweepTable,
    UNCERTAINTY_COLUMNS,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::discord::geometric_discord_from_bloch;
use crate::measures::xstate::w_diag_unchecked;
use crate::nelder_mead::{self, NelderMeadOptions};
use crate::numfmt::round_json;
use crate::parallel::{par_map, Execution};
use crate::states::{
    seeded_rng, to_bloch, x_state_unchecked, BellDiagonalParams, StateRng, XStateParams,
};
use rand::Rng;
use rand_distr::Exp1;

/// Constraint slack accepted when reporting a result as feasible.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Two values closer than this count as a tie; the earlier start wins.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum BestParams {
    XState(XStateParams),
    BellDiagonal(BellDiagonalParams),
}

impl BestParams {
    pub fn as_x(&self) -> Option<&XStateParams> {
        match self {
            BestParams::XState(p) => Some(p),
            BestParams::BellDiagonal(_) => None,
        }
    }

    pub fn as_bell(&self) -> Option<&BellDiagonalParams> {
        match self {
            BestParams::BellDiagonal(p) => Some(p),
            BestParams::XState(_) => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizationResult {
    pub objective: &'static str,
    pub best_params: BestParams,
    pub best_value: f64,
    pub feasible: bool,
    pub max_violation: f64,
    pub n_starts: usize,
    pub seed: u64,
    /// Index into the start list (analytic starts first) of the winner.
    pub best_start: usize,
    /// Largest diagonal entry of `W` at the optimum (1, 2 or 3), for LQU runs
    /// over X-states.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub active_w_entry: Option<u8>,
    /// `(iteration, objective value)` of the winning local search.
    pub trace: Vec<(usize, f64)>,
}

impl OptimizationResult {
    /// Pretty JSON with every number rounded to 9 significant digits.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("result serializes");
        serde_json::to_string_pretty(&round_json(v)).expect("value serializes")
    }
}

/// Settings for a multi-start search over separable X-states.
#[derive(Debug, Clone)]
pub struct MultiStart {
    /// Number of random starts.
    pub n_starts: usize,
    pub seed: u64,
    /// Prepend `ρ*` and its `σ_x ⊗ σ_x` image as deterministic starts.
    pub inject_analytic: bool,
    /// Additional fixed starts, placed after the analytic ones.
    pub fixed_starts: Vec<XStateParams>,
    pub exec: Execution,
}

impl MultiStart {
    pub fn new(n_starts: usize, seed: u64) -> Self {
        Self {
            n_starts,
            seed,
            inject_analytic: true,
            fixed_starts: Vec::new(),
            exec: Execution::available(),
        }
    }

    fn starts(&self) -> Result<Vec<[f64; 6]>> {
        let mut out = Vec::new();
        if self.inject_analytic {
            let star = XStateParams::rho_star();
            out.push(to_coords(&star));
            out.push(to_coords(&star.flipped()));
        }
        for p in &self.fixed_starts {
            p.validate()?;
            if !p.is_separable() {
                return Err(Error::InvalidParams("fixed start is not separable".into()));
            }
            out.push(to_coords(p));
        }
        for i in 0..self.n_starts {
            let mut rng = seeded_rng(self.seed ^ i as u64);
            out.push(random_coords(&mut rng));
        }
        if out.is_empty() {
            return Err(Error::InvalidParams("at least one start is required".into()));
        }
        Ok(out)
    }
}

fn coherence_cap(a: &[f64; 4]) -> f64 {
    (a[0] * a[3]).sqrt().min((a[1] * a[2]).sqrt())
}

/// Search coordinates to parameters; `None` on the all-zero diagonal.
pub fn from_coords(c: &[f64]) -> Option<XStateParams> {
    let total: f64 = c[..4].iter().sum();
    if total.is_nan() || total <= 0.0 {
        return None;
    }
    let a = [c[0] / total, c[1] / total, c[2] / total, c[3] / total];
    let cap = coherence_cap(&a);
    Some(XStateParams {
        a11: a[0],
        a22: a[1],
        a33: a[2],
        a44: a[3],
        a14: c[4] * cap,
        a23: c[5] * cap,
    })
}

/// Inverse of [`from_coords`] for separable parameters with non-negative
/// coherences.
pub fn to_coords(p: &XStateParams) -> [f64; 6] {
    let a = [p.a11, p.a22, p.a33, p.a44];
    let cap = coherence_cap(&a);
    let frac = |x: f64| if cap > 0.0 { (x.abs() / cap).min(1.0) } else { 0.0 };
    [a[0], a[1], a[2], a[3], frac(p.a14), frac(p.a23)]
}

fn random_coords(rng: &mut StateRng) -> [f64; 6] {
    let e: [f64; 4] = std::array::from_fn(|_| rng.sample::<f64, _>(Exp1));
    let total: f64 = e.iter().sum();
    [
        e[0] / total,
        e[1] / total,
        e[2] / total,
        e[3] / total,
        rng.gen::<f64>(),
        rng.gen::<f64>(),
    ]
}

fn nm_options() -> NelderMeadOptions {
    NelderMeadOptions {
        max_iter: 2000,
        diameter_tol: 1e-10,
        step: 0.1,
        bounds: Some(vec![(0.0, 1.0); 6]),
        record_trace: true,
    }
}

struct LocalRun {
    params: XStateParams,
    value: f64,
    trace: Vec<(usize, f64)>,
}

/// Maximizes `objective` from every start and keeps the best; ties within
/// [`TIE_TOL`] go to the earliest start.
fn multistart_x<F>(cfg: &MultiStart, objective: F) -> Result<(usize, LocalRun)>
where
    F: Fn(&XStateParams) -> f64 + Send + Sync,
{
    let starts = cfg.starts()?;
    let opts = nm_options();
    let runs = par_map(cfg.exec, starts, |x0| {
        let neg = |c: &[f64]| from_coords(c).map_or(f64::INFINITY, |p| -objective(&p));
        let r = nelder_mead::minimize(neg, &x0, &opts);
        let start_params = from_coords(&x0).expect("starts have positive diagonal");
        let start_value = objective(&start_params);
        let (params, value) = match from_coords(&r.x) {
            Some(p) if objective(&p) >= start_value => (p, objective(&p)),
            _ => (start_params, start_value),
        };
        let trace = r.trace.into_iter().map(|(k, v)| (k, -v)).collect();
        LocalRun { params, value, trace }
    });
    let mut best = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.value > runs[best].value + TIE_TOL {
            best = i;
        }
    }
    let run = runs.into_iter().nth(best).expect("non-empty");
    Ok((best, run))
}

fn x_result(
    objective: &'static str,
    cfg: &MultiStart,
    best_start: usize,
    run: LocalRun,
    active: Option<u8>,
) -> OptimizationResult {
    let violation = run.params.max_violation();
    OptimizationResult {
        objective,
        best_params: BestParams::XState(run.params),
        best_value: run.value,
        feasible: violation <= FEASIBILITY_TOL,
        max_violation: violation,
        n_starts: cfg.n_starts,
        seed: cfg.seed,
        best_start,
        active_w_entry: active,
        trace: run.trace,
    }
}

fn lqu_x(p: &XStateParams) -> f64 {
    w_diag_unchecked(p).lqu()
}

fn gd_x(p: &XStateParams) -> f64 {
    geometric_discord_from_bloch(&to_bloch(&x_state_unchecked(p)))
}

/// Largest LQU over separable X-states from `n_starts` random starts plus
/// the two analytic ones.
pub fn maximize_lqu_separable_x(n_starts: usize, seed: u64) -> Result<OptimizationResult> {
    maximize_lqu_separable_x_with(&MultiStart::new(n_starts, seed))
}

pub fn maximize_lqu_separable_x_with(cfg: &MultiStart) -> Result<OptimizationResult> {
    let (best, run) = multistart_x(cfg, lqu_x)?;
    let active = w_diag_unchecked(&run.params).active();
    Ok(x_result("lqu", cfg, best, run, Some(active)))
}

/// Largest geometric discord over separable X-states.
pub fn maximize_gd_separable_x(n_starts: usize, seed: u64) -> Result<OptimizationResult> {
    maximize_gd_separable_x_with(&MultiStart::new(n_starts, seed))
}

pub fn maximize_gd_separable_x_with(cfg: &MultiStart) -> Result<OptimizationResult> {
    let (best, run) = multistart_x(cfg, gd_x)?;
    Ok(x_result("gd", cfg, best, run, None))
}

/// The family `a11 = a22`, `a33 = a44 = ½ - a11`, `a14 = a23 = √(a11 a33)`
/// has `w11 = 16 a11 a33` and `w33 = 4(a11 - a33)²`; the larger is smallest
/// where they meet, at `a11 = (√2 + 1)/(4√2)`, with `λ_max = ½`.
pub fn solve_reduced_family() -> (XStateParams, f64) {
    let s2 = std::f64::consts::SQRT_2;
    let a11 = (s2 + 1.0) / (4.0 * s2);
    let a33 = (s2 - 1.0) / (4.0 * s2);
    let c = (a11 * a33).sqrt();
    let p = XStateParams {
        a11,
        a22: a11,
        a33,
        a44: a33,
        a14: c,
        a23: c,
    };
    (p, w_diag_unchecked(&p).lqu())
}

/// Reduced-family parameters at `a11`, with `a33 = ½ - a11`.
pub fn reduced_family(a11: f64) -> Result<XStateParams> {
    if !(0.0..=0.5).contains(&a11) {
        return Err(Error::OutOfRange { name: "a11", value: a11 });
    }
    let a33 = 0.5 - a11;
    let c = (a11 * a33).sqrt();
    XStateParams::new(a11, a11, a33, a33, c, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{geometric_discord, lqu, lqu_xstate_closed_form};
    use crate::states::x_state;
    use std::f64::consts::SQRT_2;

    #[test]
    fn coords_round_trip() {
        let star = XStateParams::rho_star();
        let back = from_coords(&to_coords(&star)).unwrap();
        assert!(back.distance(&star) < 1e-15);
        assert!(from_coords(&[0.0; 6]).is_none());
    }

    #[test]
    fn random_coords_are_feasible() {
        let mut rng = seeded_rng(9);
        for _ in 0..500 {
            let p = from_coords(&random_coords(&mut rng)).unwrap();
            assert!(p.max_violation() < 1e-15);
        }
    }

    #[test]
    fn reduced_family_solution() {
        let (p, value) = solve_reduced_family();
        assert_eq!(p.a11, (SQRT_2 + 1.0) / (4.0 * SQRT_2));
        assert!((p.a11 - 0.426777).abs() < 1e-6);
        assert!((p.a33 - 0.073223).abs() < 1e-6);
        assert!((value - 0.5).abs() < 1e-14);
        let w = w_diag_unchecked(&p);
        assert!((w.w11 - 16.0 * p.a11 * p.a33).abs() < 1e-14);
        assert!((w.w33 - 4.0 * (p.a11 - p.a33).powi(2)).abs() < 1e-14);
        assert!(p.distance(&XStateParams::rho_star()) < 1e-15);
    }

    #[test]
    fn lqu_search_finds_one_half() {
        let r = maximize_lqu_separable_x(16, 7).unwrap();
        assert!(r.feasible);
        assert!(r.best_value <= 0.5 + 1e-6);
        assert!(r.best_value >= 0.5 - 1e-4);
        let p = r.best_params.as_x().unwrap();
        assert!(p.canonical().distance(&XStateParams::rho_star()) < 1e-3);
        let numeric = lqu(&x_state(p).unwrap());
        assert!((numeric - r.best_value).abs() < 1e-9);
        assert!(r.trace.last().is_some());
    }

    #[test]
    fn search_escapes_the_center() {
        let cfg = MultiStart {
            n_starts: 0,
            seed: 1,
            inject_analytic: false,
            fixed_starts: vec![XStateParams::new(0.25, 0.25, 0.25, 0.25, 0.0, 0.0).unwrap()],
            exec: Execution::Sequential,
        };
        let r = maximize_lqu_separable_x_with(&cfg).unwrap();
        assert!(r.best_value > 0.0);
        assert!(r.feasible);
    }

    #[test]
    fn random_only_search_stays_below_half() {
        let cfg = MultiStart {
            inject_analytic: false,
            ..MultiStart::new(24, 3)
        };
        let r = maximize_lqu_separable_x_with(&cfg).unwrap();
        assert!(r.best_value <= 0.5 + 1e-6);
        assert!(r.best_value > 0.45);
    }

    #[test]
    fn deterministic_and_schedule_independent() {
        let mut cfg = MultiStart::new(8, 11);
        cfg.exec = Execution::Sequential;
        let a = maximize_lqu_separable_x_with(&cfg).unwrap();
        cfg.exec = Execution::Parallel;
        let b = maximize_lqu_separable_x_with(&cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.best_value.to_bits(), b.best_value.to_bits());
    }

    #[test]
    fn gd_search() {
        let r = maximize_gd_separable_x(16, 7).unwrap();
        assert!(r.feasible);
        assert!((r.best_value - 0.125).abs() < 1e-5);
        let p = r.best_params.as_x().unwrap();
        assert!((geometric_discord(&x_state(p).unwrap()) - r.best_value).abs() < 1e-9);
        assert!(p.canonical().distance(&XStateParams::rho_star()) < 1e-3);
    }

    #[test]
    fn gd_at_center_is_zero() {
        let p = XStateParams::new(0.25, 0.25, 0.25, 0.25, 0.0, 0.0).unwrap();
        assert!(gd_x(&p).abs() < 1e-15);
    }

    #[test]
    fn reduced_family_matches_closed_form() {
        for i in 0..=20 {
            let a = 0.5 * i as f64 / 20.0;
            let p = reduced_family(a).unwrap();
            let w = xstate_w(&p);
            let lam = w.0.max(w.1);
            assert!((1.0 - lam - lqu_xstate_closed_form(&p).unwrap()).abs() < 1e-12);
        }
        assert!(reduced_family(0.6).is_err());
    }

    fn xstate_w(p: &XStateParams) -> (f64, f64) {
        let w = w_diag_unchecked(p);
        (w.w11, w.w33)
    }

    #[test]
    fn json_is_rounded() {
        let r = maximize_lqu_separable_x(2, 1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["best_params"]["family"], "x-state");
        assert_eq!(v["objective"], "lqu");
        let a11 = v["best_params"]["a11"].as_f64().unwrap();
        assert_eq!(a11, crate::numfmt::round_sig(a11, 9));
    }
}
