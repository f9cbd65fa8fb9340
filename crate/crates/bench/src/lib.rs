//! Inputs shared by the benchmarks in `benches/`.

use twoweight_core::{code::defining_set, code::LinearCode, BigField, TowerSpec};

/// Field for the tower `(p, t, m1, m2, m)`.
pub fn field(p: u32, t: u32, m1: u32, m2: u32, m: u32) -> BigField {
    BigField::new(TowerSpec::new(p, t, m1, m2, m).expect("valid tower")).expect("field fits")
}

/// Fresh code with offset `a`; its weight cache starts empty.
pub fn code(field: &BigField, a: u32) -> LinearCode<'_> {
    LinearCode::new(field, defining_set(field, a).expect("defining set")).expect("nonempty set")
}
