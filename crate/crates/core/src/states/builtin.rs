use super::{
    bell_diagonal, bell_state, chi_state, noisy_star, rho_star, werner, BellDiagonalParams,
    BellKind, DensityMatrix,
};
use crate::error::{Error, Result};

/// Names accepted without parameters.
pub const FIXED_NAMES: [&str; 6] = [
    "rho_star",
    "bell_phi_plus",
    "bell_phi_minus",
    "bell_psi_plus",
    "bell_psi_minus",
    "maximally_mixed",
];

/// Resolves a builtin state name. A leading `builtin:` is optional.
/// Parameterized forms: `werner:p`, `chi:eps`, `noisy:p`, `bell_diag:t1,t2,t3`.
pub fn builtin(name: &str) -> Result<DensityMatrix> {
    let name = name.strip_prefix("builtin:").unwrap_or(name);
    let unknown = || Error::UnknownBuiltin(name.to_string());
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    let number = |s: &str| s.trim().parse::<f64>().map_err(|_| unknown());
    match (head, arg) {
        ("rho_star", None) => Ok(rho_star()),
        ("bell_phi_plus", None) => Ok(bell_state(BellKind::PhiPlus)),
        ("bell_phi_minus", None) => Ok(bell_state(BellKind::PhiMinus)),
        ("bell_psi_plus", None) => Ok(bell_state(BellKind::PsiPlus)),
        ("bell_psi_minus", None) => Ok(bell_state(BellKind::PsiMinus)),
        ("maximally_mixed", None) => Ok(DensityMatrix::maximally_mixed(4)),
        ("werner", Some(a)) => werner(number(a)?),
        ("chi", Some(a)) => chi_state(number(a)?),
        ("noisy", Some(a)) => noisy_star(number(a)?),
        ("bell_diag", Some(a)) => {
            let t: Vec<f64> = a.split(',').map(number).collect::<Result<_>>()?;
            if t.len() != 3 {
                return Err(unknown());
            }
            bell_diagonal(&BellDiagonalParams::new(t[0], t[1], t[2]))
        }
        _ => Err(unknown()),
    }
}
