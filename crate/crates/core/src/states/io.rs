//! JSON state files.
//!
//! Two layouts are accepted:
//!
//! ```json
//! {"dim": 4, "re": [[...], ...], "im": [[...], ...]}
//! {"x_params": {"a11": 0.25, "a22": 0.25, "a33": 0.25, "a44": 0.25, "a14": 0.0, "a23": 0.0}}
//! ```
//!
//! In the X-state shorthand a coherence may also be given as
//! `{"re": .., "im": ..}`; it is rotated to a nonnegative real by a local
//! diagonal unitary, and the phases used are reported in [`LocalPhases`].

use serde::{Deserialize, Serialize};

use super::{x_state, DensityMatrix, XStateParams};
use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, C64};

#[derive(Debug, Serialize, Deserialize)]
struct DenseFile {
    dim: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Coherence {
    Real(f64),
    Complex { re: f64, im: f64 },
}

impl Coherence {
    fn value(&self) -> C64 {
        match *self {
            Coherence::Real(x) => C64::new(x, 0.0),
            Coherence::Complex { re, im } => C64::new(re, im),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct XParamsInput {
    a11: f64,
    a22: f64,
    a33: f64,
    a44: f64,
    a14: Coherence,
    a23: Coherence,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct XFile {
    x_params: XParamsInput,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum StateFile {
    Dense(DenseFile),
    X(XFile),
}

/// Local phase rotation `diag(1, e^{iα}) ⊗ diag(1, e^{iβ})` that was applied
/// to make X-state coherences real and nonnegative.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct LocalPhases {
    pub alpha: f64,
    pub beta: f64,
}

impl LocalPhases {
    /// Phases that rotate `a14` and `a23` onto the nonnegative real axis.
    pub fn removing(a14: C64, a23: C64) -> Self {
        let arg = |z: C64| if z.norm() > 0.0 { z.arg() } else { 0.0 };
        let (t1, t2) = (arg(a14), arg(a23));
        Self {
            alpha: 0.5 * (t1 + t2),
            beta: 0.5 * (t1 - t2),
        }
    }

    pub fn unitary(&self) -> ComplexMatrix {
        let d = [
            C64::new(1.0, 0.0),
            C64::from_polar(1.0, self.beta),
            C64::from_polar(1.0, self.alpha),
            C64::from_polar(1.0, self.alpha + self.beta),
        ];
        ComplexMatrix::from_fn(4, |i, j| if i == j { d[i] } else { C64::new(0.0, 0.0) })
    }
}

/// A parsed state file.
#[derive(Debug, Clone)]
pub struct LoadedState {
    pub state: DensityMatrix,
    /// Present when the file used the X-state shorthand.
    pub x_params: Option<XStateParams>,
    pub phases: Option<LocalPhases>,
}

pub fn parse_state_json(text: &str) -> Result<LoadedState> {
    let file: StateFile = serde_json::from_str(text)?;
    match file {
        StateFile::Dense(d) => {
            let mat = dense_to_matrix(&d)?;
            Ok(LoadedState {
                state: DensityMatrix::new(mat)?,
                x_params: None,
                phases: None,
            })
        }
        StateFile::X(x) => {
            let p = x.x_params;
            let (c14, c23) = (p.a14.value(), p.a23.value());
            let phases = LocalPhases::removing(c14, c23);
            let params = XStateParams::new(p.a11, p.a22, p.a33, p.a44, c14.norm(), c23.norm())?;
            Ok(LoadedState {
                state: x_state(&params)?,
                x_params: Some(params),
                phases: Some(phases),
            })
        }
    }
}

fn dense_to_matrix(d: &DenseFile) -> Result<ComplexMatrix> {
    if d.dim != 4 {
        return Err(Error::BadDim {
            expected: 4,
            got: d.dim,
        });
    }
    let rows_ok = |m: &Vec<Vec<f64>>| m.len() == d.dim && m.iter().all(|r| r.len() == d.dim);
    if !rows_ok(&d.re) || !rows_ok(&d.im) {
        return Err(Error::InvalidState(format!(
            "`re` and `im` must both be {0}x{0} arrays",
            d.dim
        )));
    }
    let data = d
        .re
        .iter()
        .flatten()
        .zip(d.im.iter().flatten())
        .map(|(&r, &i)| C64::new(r, i))
        .collect();
    ComplexMatrix::new(d.dim, data)
}

/// Serializes to the dense layout. The output is canonical: identical
/// matrices give identical strings.
pub fn to_state_json(rho: &DensityMatrix) -> String {
    let m = rho.matrix();
    let n = m.dim();
    let file = DenseFile {
        dim: n,
        re: (0..n).map(|i| (0..n).map(|j| m[(i, j)].re).collect()).collect(),
        im: (0..n).map(|i| (0..n).map(|j| m[(i, j)].im).collect()).collect(),
    };
    serde_json::to_string(&file).expect("plain numeric arrays serialize")
}
