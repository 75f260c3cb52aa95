//! Parameter sweeps behind the figures: the reduced-family `λ_max` curve
//! and the uncertainty-gap curves of the χ and noisy families.

use serde::Serialize;

use super::reduced_family;
use crate::error::{Error, Result};
use crate::measures::{negative_eigenvalue_mass, negativity, xstate_w_diagonal};
use crate::numfmt::{csv_cell, round_json};
use crate::parallel::{par_map, Execution};
use crate::states::{chi_state, noisy_star, DensityMatrix};
use crate::uncertainty::{chi_crossing, uncertainty_gap, ObservablePair};

/// Columns after the parameter column in the uncertainty sweeps.
/// `negativity` is `‖ρ^{T_B}‖₁ - 1`; `negativity_vw` is half of it, the
/// scale on which the χ-family crossing is located.
pub const UNCERTAINTY_COLUMNS: [&str; 8] =
    ["s_pb", "s_qb", "c", "berta", "pati", "gap", "negativity", "negativity_vw"];

/// Bracket and tolerance for the gap/negativity crossing of the χ family.
pub const CROSSING_BRACKET: (f64, f64) = (0.5, 0.9);
pub const CROSSING_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Serialize)]
pub struct SweepTable {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    /// Parameter where the uncertainty gap meets the negativity, if computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crossing: Option<f64>,
}

impl SweepTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Header line plus one line per row, 6 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| csv_cell(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("table serializes");
        serde_json::to_string_pretty(&round_json(v)).expect("value serializes")
    }
}

fn unit_grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

/// `λ_max = max(w11, w33)` over the reduced family, `a11` on `[0, ½]`.
///
/// The grid is uniform except that the two points nearest the exact
/// crossings `a11 = (√2 ± 1)/(4√2)` are moved onto them, so the minimum of
/// the curve is sampled exactly. The moves are under half a step, so the
/// grid stays strictly increasing.
pub fn region_sweep(n: usize) -> Result<SweepTable> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("sweep needs n >= 3, got {n}")));
    }
    let mut grid: Vec<f64> = unit_grid(n).into_iter().map(|x| 0.5 * x).collect();
    let s2 = std::f64::consts::SQRT_2;
    let step = 0.5 / (n - 1) as f64;
    for crossing in [(s2 - 1.0) / (4.0 * s2), (s2 + 1.0) / (4.0 * s2)] {
        let k = (crossing / step).round() as usize;
        let interior = k > 0 && k < n - 1;
        if interior && (grid[k] - crossing).abs() < 0.5 * step {
            grid[k] = crossing;
        }
    }
    let mut rows = Vec::with_capacity(n);
    for a11 in grid {
        let w = xstate_w_diagonal(&reduced_family(a11)?)?;
        rows.push(vec![a11, w.w11, w.w33, w.w11.max(w.w33)]);
    }
    Ok(SweepTable {
        name: "region",
        columns: vec!["a11", "w11", "w33", "lambda_max"],
        rows,
        crossing: None,
    })
}

fn uncertainty_rows(
    exec: Execution,
    grid: Vec<f64>,
    family: fn(f64) -> Result<DensityMatrix>,
) -> Result<Vec<Vec<f64>>> {
    let pair = ObservablePair::sigma_x_z();
    par_map(exec, grid, |x| {
        let rho = family(x)?;
        let r = uncertainty_gap(&rho, &pair)?;
        Ok(vec![
            x,
            r.s_pb,
            r.s_qb,
            r.c,
            r.berta_bound,
            r.pati_bound,
            r.gap,
            negativity(&rho),
            negative_eigenvalue_mass(&rho),
        ])
    })
    .into_iter()
    .collect()
}

fn uncertainty_sweep(
    name: &'static str,
    param: &'static str,
    n: usize,
    exec: Execution,
    family: fn(f64) -> Result<DensityMatrix>,
) -> Result<SweepTable> {
    if n < 11 {
        return Err(Error::InvalidParams(format!("sweep needs n >= 11, got {n}")));
    }
    let mut columns = vec![param];
    columns.extend(UNCERTAINTY_COLUMNS);
    Ok(SweepTable {
        name,
        columns,
        rows: uncertainty_rows(exec, unit_grid(n), family)?,
        crossing: None,
    })
}

/// Uncertainty gap and negativity of `χ(ε) = ε ρ* + (1-ε) φ+` on an
/// `n`-point grid of `[0, 1]`, plus the bisected crossing point.
pub fn chi_sweep(n: usize) -> Result<SweepTable> {
    chi_sweep_with(n, Execution::available())
}

pub fn chi_sweep_with(n: usize, exec: Execution) -> Result<SweepTable> {
    let mut table = uncertainty_sweep("chi", "eps", n, exec, chi_state)?;
    table.crossing = Some(chi_crossing(CROSSING_BRACKET.0, CROSSING_BRACKET.1, CROSSING_TOL)?);
    Ok(table)
}

/// The same columns for `p ρ* + (1-p) I/4`.
pub fn noisy_sweep(n: usize) -> Result<SweepTable> {
    noisy_sweep_with(n, Execution::available())
}

pub fn noisy_sweep_with(n: usize, exec: Execution) -> Result<SweepTable> {
    uncertainty_sweep("noisy", "p", n, exec, noisy_star)
}
