//! Cyclic quiver representations and their invariants.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod exact;
pub mod invariants;
pub mod linalg;
pub mod normal_form;
pub mod quiver;
pub mod rng;
pub mod tolerance;
pub mod wreath;

pub use error::{Error, Result};
pub use tolerance::Tolerances;
