//! Submodular maximization when every value query is multiplied by a
//! persistent random factor.
//!
//! The main entry point is [`meta::meta_solve`]: it smooths the noisy oracle
//! into a surrogate, hands that to an exact-oracle algorithm from
//! [`solvers`], and maps the answer back.

pub mod analysis;
pub mod checks;
pub mod combinatorics;
pub mod error;
pub mod extension;
pub mod generators;
pub mod harness;
pub mod instance;
pub mod matroid;
pub mod meta;
pub mod noise;
pub mod set;
pub mod setfn;
pub mod solvers;
pub mod surrogate;

pub use error::{Error, Result};
pub use extension::{Estimator, FractionalPoint};
pub use matroid::Matroid;
pub use meta::{meta_solve, MetaConfig};
pub use noise::{NoiseSpec, PersistentNoisyOracle};
pub use set::{ElementSet, GroundSet};
pub use setfn::{SetFunctionSpec, ValueOracle};
pub use solvers::Algorithm;
