//! Closed-form LQU of X-states.
//!
//! An X-state is the direct sum of the blocks `[[a11, a14], [a14, a44]]`
//! (outer) and `[[a22, a23], [a23, a33]]` (inner). Each block has eigenpairs
//! `λ± = (p + q ± d)/2`, `d = √((p - q)² + 4c²)`, with unnormalized
//! eigenvectors `(ω±, 1)` where `ω± = (p - q ± d) / 2c`. Summing
//! `√λ (ω, 1)(ω, 1)ᵀ / (ω² + 1)` over both eigenpairs gives the square root
//! in the X pattern
//!
//! ```text
//! √ρ = [[α1, 0, 0, α5], [0, α2, α6, 0], [0, α6, α3, 0], [α5, 0, 0, α4]]
//! ```
//!
//! and then `W = diag(2(α1α3 + α2α4 + 2α5α6), 2(α1α3 + α2α4 - 2α5α6),
//! Σα² - 3α5² - 3α6²)`. Each anti-diagonal pair of `√ρ` meets its partner
//! twice in `tr(√ρ K √ρ K)`, hence the factor 2 on `α5α6`.

use serde::Serialize;

use crate::error::Result;
use crate::matcore::SQRT_ZERO;
use crate::states::XStateParams;

/// `(ω²/(ω²+1), 1/(ω²+1), ω/(ω²+1))` without overflow for large `|ω|`.
fn eigvec_weights(omega: f64) -> (f64, f64, f64) {
    if omega.abs() <= 1.0 {
        let den = omega * omega + 1.0;
        (omega * omega / den, 1.0 / den, omega / den)
    } else {
        let u = 1.0 / omega;
        let den = u * u + 1.0;
        (1.0 / den, u * u / den, u / den)
    }
}

/// Square root of `[[p, c], [c, q]]` with `c >= 0`, returned as
/// `(top-left, bottom-right, off-diagonal)`.
fn block_sqrt(p: f64, q: f64, c: f64) -> (f64, f64, f64) {
    if c == 0.0 {
        return (p.max(0.0).sqrt(), q.max(0.0).sqrt(), 0.0);
    }
    let d = ((p - q) * (p - q) + 4.0 * c * c).sqrt();
    let lam_hi = 0.5 * (p + q + d);
    // det / λ_hi avoids the cancellation in (p + q - d)/2
    let lam_lo = (p * q - c * c) / lam_hi;
    let lam_lo = if lam_lo < SQRT_ZERO { 0.0 } else { lam_lo };
    // Both ω's are evaluated in whichever algebraically equivalent form
    // avoids cancellation; their product is exactly -1.
    let omega_hi = if p >= q {
        (p - q + d) / (2.0 * c)
    } else {
        2.0 * c / (q - p + d)
    };
    let omega_lo = if p <= q {
        (p - q - d) / (2.0 * c)
    } else {
        -2.0 * c / (p - q + d)
    };
    let (hi_top, hi_bot, hi_off) = eigvec_weights(omega_hi);
    let (lo_top, lo_bot, lo_off) = eigvec_weights(omega_lo);
    let (r_hi, r_lo) = (lam_hi.sqrt(), lam_lo.sqrt());
    (
        r_hi * hi_top + r_lo * lo_top,
        r_hi * hi_bot + r_lo * lo_bot,
        r_hi * hi_off + r_lo * lo_off,
    )
}

/// `[α1, ..., α6]` of the X-shaped square root.
pub fn xstate_sqrt_alphas(params: &XStateParams) -> Result<[f64; 6]> {
    params.validate()?;
    Ok(alphas_unchecked(params))
}

fn alphas_unchecked(p: &XStateParams) -> [f64; 6] {
    let (a1, a4, a5) = block_sqrt(p.a11, p.a44, p.a14);
    let (a2, a3, a6) = block_sqrt(p.a22, p.a33, p.a23);
    [a1, a2, a3, a4, a5, a6]
}

/// Diagonal of `W` for an X-state and which entry is largest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XStateW {
    pub w11: f64,
    pub w22: f64,
    pub w33: f64,
}

impl XStateW {
    pub fn max(&self) -> f64 {
        self.w11.max(self.w22).max(self.w33)
    }

    /// 1, 2 or 3 for the largest diagonal entry (first wins on ties).
    pub fn active(&self) -> u8 {
        let m = self.max();
        if self.w11 == m {
            1
        } else if self.w22 == m {
            2
        } else {
            3
        }
    }

    pub fn lqu(&self) -> f64 {
        1.0 - self.max()
    }
}

pub fn xstate_w_diagonal(params: &XStateParams) -> Result<XStateW> {
    params.validate()?;
    Ok(w_diag_unchecked(params))
}

pub(crate) fn w_diag_unchecked(p: &XStateParams) -> XStateW {
    let [a1, a2, a3, a4, a5, a6] = alphas_unchecked(p);
    let cross = a1 * a3 + a2 * a4;
    let squares = a1 * a1 + a2 * a2 + a3 * a3 + a4 * a4 + a5 * a5 + a6 * a6;
    XStateW {
        w11: 2.0 * (cross + 2.0 * a5 * a6),
        w22: 2.0 * (cross - 2.0 * a5 * a6),
        w33: squares - 3.0 * a5 * a5 - 3.0 * a6 * a6,
    }
}

/// LQU of an X-state from the closed-form square root.
pub fn lqu_xstate_closed_form(params: &XStateParams) -> Result<f64> {
    Ok(xstate_w_diagonal(params)?.lqu())
}
