//! Temperature estimation with a single dissipative bosonic mode.
//!
//! The crate evolves Fock, coherent, squeezed-vacuum and thermal probes
//! under the thermal Lindblad master equation on a truncated Fock space,
//! differentiates the evolved state with respect to the bath temperature,
//! and evaluates the classical (photon-counting) and quantum (SLD) Fisher
//! information. Closed-form short-time expressions live in [`bounds`] and
//! serve as independent references for the numerics.

pub mod bath;
pub mod bounds;
pub mod dynamics;
pub mod error;
pub mod fisher;
pub mod fockspace;
pub mod probes;
pub mod sweep;

pub use bath::{BathParams, RateModel, Rates};
pub use error::{Error, Result};
pub use fockspace::{DensityMatrix, FockDim};
pub use probes::ProbeSpec;
