//! Walk-type zeta functions of coined walks on tori, their closed forms, and
//! the arc determinant identity for generalized Grover walks on regular graphs.
//!
//! ```
//! use walkzeta::{coin_models::simple_random_walk, numerics::re, zeta_engine::zeta_inv_limit};
//!
//! let z = zeta_inv_limit(&simple_random_walk(), re(0.6), 4096).unwrap();
//! assert!((z.re - 0.9).abs() < 1e-9);
//! ```

pub mod closed_forms;
pub mod coin_models;
pub mod error;
pub mod graph_zeta;
pub mod numerics;
pub mod walk_operator;
pub mod zeta_engine;

pub use coin_models::{ShiftType, WalkModel};
pub use error::{Error, Result};
pub use numerics::{Complex, ComplexMatrix};
pub use walk_operator::TorusSpec;
