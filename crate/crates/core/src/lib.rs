//! Local quantum uncertainty, discord-type correlations and entropic
//! uncertainty gaps for two-qubit states, plus constrained searches over
//! separable state families.
//!
//! The crate is organized bottom-up:
//!
//! - [`matcore`]: small dense complex matrices, Jacobi eigensolver, PSD square
//!   root, tensor products, partial trace/transpose and Pauli matrices.
//! - [`states`]: state families, Bloch form, purification, JSON state files.
//! - [`measures`]: skew information, LQU (numeric and X-state closed form),
//!   geometric discord, negativity, concurrence, entropies, discord.
//! - [`uncertainty`]: measured conditional entropies, Berta and Pati bounds
//!   and the uncertainty gap.
//! - [`optimize`]: multi-start searches over separable families and the
//!   sweep tables behind the figures.
//! - [`verify`]: the reproduction checklist run by `ulab verify`.

pub mod error;
pub mod matcore;
pub mod measures;
pub mod nelder_mead;
pub mod numfmt;
pub mod optimize;
pub mod parallel;
pub mod states;
pub mod uncertainty;
pub mod verify;

pub use error::{Error, Result};
pub use states::DensityMatrix;
