//! Reproduction checklist: each claim recomputes one headline number and
//! compares it against its expected value.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{dissonance_rank2_parts, geometric_discord, lqu, von_neumann_entropy};
use crate::optimize::{
    chi_sweep, conjecture_probe, maximize_gd_separable_x, maximize_lqu_bell_diagonal_separable,
    maximize_lqu_separable_x, noisy_sweep, solve_reduced_family, SweepTable,
};
use crate::matcore::Subsystem;
use crate::states::{bell_state, rho_star, BellKind, XStateParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Check {
    /// `|computed - expected| <= tol`.
    Near { expected: f64, tol: f64 },
    /// `computed < bound`.
    Below { bound: f64 },
}

impl Check {
    fn passes(&self, x: f64) -> bool {
        match *self {
            Check::Near { expected, tol } => (x - expected).abs() <= tol,
            Check::Below { bound } => x < bound,
        }
    }

    fn with_tolerance(self, tol: Option<f64>) -> Self {
        match (self, tol) {
            (Check::Near { expected, .. }, Some(tol)) => Check::Near { expected, tol },
            (c, _) => c,
        }
    }
}

pub struct Claim {
    pub id: &'static str,
    pub description: &'static str,
    pub check: Check,
    compute: fn() -> Result<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimOutcome {
    pub id: &'static str,
    pub description: &'static str,
    pub computed: f64,
    pub check: Check,
    pub passed: bool,
}

impl ClaimOutcome {
    /// One line: status, id, computed vs expected.
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let target = match self.check {
            Check::Near { expected, tol } => format!("expected {expected:.9} ± {tol:e}"),
            Check::Below { bound } => format!("expected < {bound}"),
        };
        format!("{status} {:<18} computed {:.9}  {target}  ({})", self.id, self.computed, self.description)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub outcomes: Vec<ClaimOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn first_failure(&self) -> Option<&ClaimOutcome> {
        self.outcomes.iter().find(|o| !o.passed)
    }
}

fn worst_bell_lqu() -> Result<f64> {
    Ok(BellKind::ALL
        .iter()
        .map(|&k| lqu(&bell_state(k)))
        .fold(1.0, |worst, v| if (v - 1.0).abs() > (worst - 1.0).abs() { v } else { worst }))
}

fn argmax_of(table: &SweepTable, col: &str) -> f64 {
    let param = table.column(table.columns[0]).expect("parameter column");
    let values = table.column(col).expect("column");
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v >= values[best] {
            best = i;
        }
    }
    param[best]
}

fn lqu_argmax_distance() -> Result<f64> {
    let r = maximize_lqu_separable_x(64, 7)?;
    let p = r.best_params.as_x().expect("X-state result");
    Ok(p.canonical().distance(&XStateParams::rho_star()))
}

fn gd_argmax_distance() -> Result<f64> {
    let gd = maximize_gd_separable_x(64, 7)?;
    let lq = maximize_lqu_separable_x(64, 7)?;
    let a = gd.best_params.as_x().expect("X-state result").canonical();
    let b = lq.best_params.as_x().expect("X-state result").canonical();
    Ok(a.distance(&b))
}

/// Every claim, in reporting order.
pub fn claims() -> Vec<Claim> {
    vec![
        Claim {
            id: "bell_lqu",
            description: "LQU of the four Bell states (worst case)",
            check: Check::Near { expected: 1.0, tol: 1e-8 },
            compute: worst_bell_lqu,
        },
        Claim {
            id: "rho_star_lqu",
            description: "LQU of rho*",
            check: Check::Near { expected: 0.5, tol: 1e-8 },
            compute: || Ok(lqu(&rho_star())),
        },
        Claim {
            id: "separable_x_max",
            description: "max LQU over separable X-states, 64 starts, seed 7",
            check: Check::Near { expected: 0.5, tol: 1e-4 },
            compute: || Ok(maximize_lqu_separable_x(64, 7)?.best_value),
        },
        Claim {
            id: "separable_x_argmax",
            description: "distance of the LQU argmax from rho* parameters",
            check: Check::Near { expected: 0.0, tol: 1e-3 },
            compute: lqu_argmax_distance,
        },
        Claim {
            id: "reduced_family",
            description: "reduced-family a11 = (sqrt2 + 1)/(4 sqrt2)",
            check: Check::Near {
                expected: (std::f64::consts::SQRT_2 + 1.0) / (4.0 * std::f64::consts::SQRT_2),
                tol: 1e-15,
            },
            compute: || Ok(solve_reduced_family().0.a11),
        },
        Claim {
            id: "bell_diagonal_max",
            description: "max LQU over separable Bell-diagonal states, grid 41",
            check: Check::Near { expected: 1.0 / 3.0, tol: 1e-5 },
            compute: || Ok(maximize_lqu_bell_diagonal_separable(41, 7)?.best_value),
        },
        Claim {
            id: "dissonance",
            description: "dissonance of rho*",
            check: Check::Near { expected: 0.20175, tol: 5e-4 },
            compute: || Ok(dissonance_rank2_parts(&rho_star())?.value),
        },
        Claim {
            id: "entropy_a",
            description: "S(rho*_A)",
            check: Check::Near { expected: 0.60088, tol: 1e-4 },
            compute: || Ok(von_neumann_entropy(&rho_star().marginal(Subsystem::A))),
        },
        Claim {
            id: "gd_rho_star",
            description: "geometric discord of rho*",
            check: Check::Near { expected: 0.125, tol: 1e-6 },
            compute: || Ok(geometric_discord(&rho_star())),
        },
        Claim {
            id: "gd_argmax",
            description: "distance between GD and LQU argmax (canonical parameters)",
            check: Check::Near { expected: 0.0, tol: 1e-3 },
            compute: gd_argmax_distance,
        },
        Claim {
            id: "chi_crossing",
            description: "eps where the chi-family gap meets the negativity",
            check: Check::Near { expected: 0.714, tol: 0.01 },
            compute: || chi_sweep(101)?.crossing.ok_or_else(|| Error::InvalidParams("no crossing".into())),
        },
        Claim {
            id: "chi_gap_argmax",
            description: "eps maximizing the chi-family gap",
            check: Check::Near { expected: 1.0, tol: 0.0 },
            compute: || Ok(argmax_of(&chi_sweep(101)?, "gap")),
        },
        Claim {
            id: "noisy_gap_argmax",
            description: "p maximizing the noisy-family gap",
            check: Check::Near { expected: 1.0, tol: 0.0 },
            compute: || Ok(argmax_of(&noisy_sweep(101)?, "gap")),
        },
        Claim {
            id: "conjecture",
            description: "max LQU over 10^4 random separable mixtures (k <= 4)",
            check: Check::Below { bound: 0.5 },
            compute: || Ok(conjecture_probe(10_000, 4, 7)?.max_lqu),
        },
    ]
}

pub fn claim_ids() -> Vec<&'static str> {
    claims().iter().map(|c| c.id).collect()
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Run a single claim by id.
    pub only: Option<String>,
    /// Replace the tolerance of every closeness claim.
    pub tolerance: Option<f64>,
}

/// Runs the selected claims; a computation error counts as a failure with a
/// NaN value.
pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    let selected: Vec<Claim> = match &opts.only {
        None => claims(),
        Some(id) => {
            let picked: Vec<Claim> = claims().into_iter().filter(|c| c.id == id.as_str()).collect();
            if picked.is_empty() {
                return Err(Error::InvalidParams(format!(
                    "unknown claim '{id}'; known: {}",
                    claim_ids().join(", ")
                )));
            }
            picked
        }
    };
    let outcomes = selected
        .into_iter()
        .map(|c| {
            let check = c.check.with_tolerance(opts.tolerance);
            let computed = (c.compute)().unwrap_or(f64::NAN);
            ClaimOutcome {
                id: c.id,
                description: c.description,
                computed,
                check,
                passed: check.passes(computed),
            }
        })
        .collect();
    Ok(VerifyReport { outcomes })
}
