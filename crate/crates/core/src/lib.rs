//! Two-weight linear codes built from trace-of-norm defining sets.
//!
//! The crate is layered bottom-up:
//!
//! - [`gf`]: the tower `F_p ⊆ F_q ⊆ F_(q^m1), F_(q^m2) ⊆ F_(q^m)` inside one
//!   table-backed field, with trace and norm maps.
//! - [`char_sums`]: additive and multiplicative characters, Gauss sums, and the
//!   two exponential sums that govern codeword weights, each available as a
//!   direct sum and as a closed form.
//! - [`code`]: defining sets, codewords, exhaustive weight enumeration, and
//!   the predicted enumerators.
//! - [`analysis`]: Griesmer bound, projectivity, minimal codewords, and
//!   strongly regular Cayley graphs.
//! - [`verify`]: parameter sweeps and fixture checks tying the layers together.

pub mod analysis;
pub mod arith;
pub mod char_sums;
pub mod code;
mod error;
pub mod gf;
pub mod verify;

pub use error::{Error, Result};
pub use gf::{BigField, FieldElement, TowerSpec};
