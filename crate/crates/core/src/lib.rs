//! Chromatic derivatives and chromatic expansions.
//!
//! The numerics are organised bottom-up:
//!
//! - [`opoly`]: orthonormal polynomial families given by their recursion
//!   coefficients, moments and Christoffel–Darboux sums.
//! - [`chromdiff`]: operator tables converting between Taylor and chromatic jets.
//! - [`mkernel`]: the kernel `m(t)` and `K^n[m](t)`, plus the Bessel functions they need.
//! - [`expand`]: chromatic, Shannon and Taylor approximation, error envelopes,
//!   local inner products.
//! - [`filterbank`]: transversal FIR filters estimating chromatic derivatives
//!   from oversampled data.
//! - [`cesaro`]: Cesàro-averaged inner products of harmonics.
//! - [`selftest`]: the acceptance checks with their tolerances.
//!
//! Data-parallel loops go through [`exec`]; build without the default
//! `parallel` feature to get the sequential fallback everywhere.

pub mod cesaro;
pub mod chromdiff;
pub mod dd;
pub mod error;
pub mod exec;
pub mod expand;
pub mod filterbank;
pub mod mkernel;
pub mod opoly;
pub mod selftest;

pub use chromdiff::{InverseResiduals, Jet, JetKind, OperatorTable, TableKind};
pub use error::{Error, Result};
pub use exec::Execution;
pub use opoly::{FamilySpec, KernelKind, MomentSeq, WeakBounds};

/// Library version, recorded in CLI output metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Default cap on table and kernel orders.
pub const DEFAULT_MAX_ORDER: usize = 48;

/// Environment variable overriding [`DEFAULT_MAX_ORDER`].
pub const MAX_ORDER_ENV: &str = "CHROMAKIT_MAX_ORDER";

/// The order cap in effect: `CHROMAKIT_MAX_ORDER` if set to an integer,
/// otherwise [`DEFAULT_MAX_ORDER`].
pub fn max_order() -> usize {
    std::env::var(MAX_ORDER_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}
