//! Mach-Zehnder interferometry with translational-internal entangled (TIE)
//! two-level atoms.
//!
//! - [`states`]: TIE inputs, arm states and which-way measurement bases.
//! - [`interferometry`]: port probabilities for monochromatic, polychromatic
//!   and TIE inputs, joint (port, internal outcome) laws and the field-free
//!   variant.
//! - [`complementarity`]: D, V, purity, sensitivity and the duality
//!   inequalities.
//! - [`montecarlo`]: seeded atom-by-atom experiments.
//! - [`cli`]: the `tiemzi` command-line front end.

pub mod cli;
pub mod complementarity;
pub mod error;
pub mod interferometry;
pub mod montecarlo;
pub mod rng;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64;
