//! Finite field tower realized inside a single table-backed field `F_(q^m)`.

mod field;
mod poly;
mod tower;

pub use field::{BigField, FieldElement};
pub use tower::{TowerSpec, DEFAULT_TABLE_CAP};
